//! Optimal symmetric 1→2 qubit cloning.
//!
//! The crate covers the whole chain from theory to (simulated) experiment:
//!
//! * [`quantum`]: qubit states, density matrices and 8×8 cloning maps.
//! * [`theory`]: input distributions, the fidelity operator `R`, the
//!   mirror phase-covariant map `χ(Λ)` with its optimality certificate, and
//!   the equivalent Pauli channel.
//! * [`optimizer`]: an independent projected-gradient search over all
//!   CPTP cloning maps.
//! * [`optics`]: the two-photon linear-optical cloner (PDBS interference,
//!   filtering, coincidence post-selection).
//! * [`tomography`]: 36-setting polarization analysis and maximum-likelihood
//!   reconstruction.
//!
//! Grids of independent evaluations go through [`exec::Execution`], which is
//! backed by rayon when the `parallel` feature is on.

pub mod error;
pub mod exec;
pub mod optics;
pub mod optimizer;
pub mod quadrature;
pub mod quantum;
pub mod theory;
pub mod tomography;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
