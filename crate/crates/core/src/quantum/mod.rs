//! Complex linear algebra and qubit / two-qubit state primitives.
//!
//! Basis conventions used throughout the crate:
//!
//! * single qubit: `|H⟩ = |0⟩`, `|V⟩ = |1⟩`;
//! * clone pair: `|c1⟩⊗|c2⟩` ordered `HH, HV, VH, VV`;
//! * cloning maps: `|in⟩⊗|c1⟩⊗|c2⟩` ordered `HHH, HHV, …, VVV`.

mod cloning_map;
mod density;
mod qubit;

pub use cloning_map::{apply_cloning_map, lift, swap_operator, trace_out, CloningMap, Matrix8};
pub use density::{fidelity, partial_trace, CloneIndex, DensityMatrix};
pub use qubit::PolarizationQubit;

/// Absolute eigenvalue slack for positive-semidefiniteness checks.
pub const PSD_TOLERANCE: f64 = 1e-10;
/// Slack for Hermiticity and unit trace of density matrices.
pub const STATE_TOLERANCE: f64 = 1e-12;
