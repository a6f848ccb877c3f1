//! Optimal mirror phase-covariant cloning: fidelity operator, closed-form
//! map, optimality certificate and the equivalent Pauli channel.

mod certificate;
mod distribution;
mod fidelity_operator;
mod mpcc;
mod pauli;
mod weak_mpcc;

pub use certificate::{verify_optimality, OptimalityReport, EIGENVALUE_TOLERANCE, RESIDUAL_TOLERANCE};
pub use distribution::{moments, MomentSet, QubitDistribution, WeightedSample, PHASE_NODES, UNIFORM_THETA_NODES};
pub use fidelity_operator::{build_r, FidelityOperator};
pub use mpcc::{
    build_chi, clone_fidelity_pointwise, fidelity_of, fidelity_theory, lambda_opt, pcc_fidelity,
    uc_theta,
    UC_LAMBDA_SQ,
};
pub(crate) use mpcc::trace_product;
pub use pauli::{pauli_channel, PauliChannel};
pub use weak_mpcc::{check_weak_mpcc, WeakMpccCheck, WEAK_MPCC_TOLERANCE};
