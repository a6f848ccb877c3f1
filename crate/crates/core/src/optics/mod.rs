//! Linear-optical cloner: a photon pair interferes on a polarization
//! dependent beam splitter, each output is filtered, and only
//! coincidences (one photon per output) are kept.

mod cloner;
mod filters;
mod monte_carlo;
mod pdbs;
mod state;

pub use cloner::{run_cloner, run_with_settings, Hemisphere, Regime, SimOutcome};
pub use filters::{
    axisym_filter_settings, effective_lambda, make_filter_settings, FilterSettings, Polarization,
};
pub use monte_carlo::{MeasuredRates, RateExperiment};
pub(crate) use monte_carlo::poisson_count;
pub use pdbs::{
    calibration_probability, compensation, filter_tau, measure_success_probability,
    pcc_success_probability, success_probability_theory, Compensation, PdbsParams,
};
pub use state::{TwoPhotonState, MODES};
