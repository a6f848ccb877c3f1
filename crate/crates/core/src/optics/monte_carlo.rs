use rand::Rng;
use rand_distr::{Binomial, Distribution, Poisson};
use serde::{Deserialize, Serialize};

use super::cloner::{run_with_settings, Regime};
use super::filters::FilterSettings;
use super::pdbs::{calibration_probability, measure_success_probability, PdbsParams};
use crate::quantum::PolarizationQubit;
use crate::{Error, Result};

/// Counting experiment behind a success-probability measurement: `pairs`
/// photon pairs sent through the cloner and, separately, through the
/// calibration configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateExperiment {
    pub pairs: u64,
    /// Detection and coupling efficiency common to both runs.
    pub tau_tech: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasuredRates {
    pub clon_counts: u64,
    pub calib_counts: u64,
    pub success_prob: f64,
    /// Poisson standard error of `success_prob`.
    pub std_error: f64,
}

impl RateExperiment {
    pub fn new(pairs: u64) -> Self {
        Self { pairs, tau_tech: 1.0 }
    }

    pub fn run<R: Rng + ?Sized>(
        &self,
        input: &PolarizationQubit,
        regime: &Regime,
        pdbs: &PdbsParams,
        rng: &mut R,
    ) -> Result<MeasuredRates> {
        self.run_branches(input, &regime.branches(pdbs)?, pdbs, rng)
    }

    /// As [`RateExperiment::run`] for explicit weighted filter settings.
    pub fn run_branches<R: Rng + ?Sized>(
        &self,
        input: &PolarizationQubit,
        branches: &[(FilterSettings, f64)],
        pdbs: &PdbsParams,
        rng: &mut R,
    ) -> Result<MeasuredRates> {
        if self.pairs == 0 {
            return Err(Error::NoCounts);
        }
        let outcome = run_with_settings(input, branches, pdbs);

        // Split the pairs among ancilla branches.
        let mut left = self.pairs;
        let mut weight_left = 1.0;
        let mut expected = 0.0;
        for (i, ((_, w), p)) in branches.iter().zip(&outcome.branch_probs).enumerate() {
            let n = if i + 1 == branches.len() {
                left
            } else {
                let frac = (w / weight_left).clamp(0.0, 1.0);
                Binomial::new(left, frac).expect("valid binomial").sample(rng)
            };
            left -= n;
            weight_left -= w;
            expected += n as f64 * p;
        }

        let clon_counts = poisson_count(expected * self.tau_tech, rng);
        let calib_mean = self.pairs as f64 * calibration_probability(pdbs) * self.tau_tech;
        let calib_counts = poisson_count(calib_mean, rng);
        let success_prob =
            measure_success_probability(clon_counts as f64, calib_counts as f64, pdbs.mu)?;
        let rel = (1.0 / clon_counts.max(1) as f64 + 1.0 / calib_counts as f64).sqrt();
        Ok(MeasuredRates {
            clon_counts,
            calib_counts,
            success_prob,
            std_error: success_prob.max(1.0 / calib_counts as f64) * rel,
        })
    }
}

pub(crate) fn poisson_count<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> u64 {
    if mean <= 0.0 {
        0
    } else {
        Poisson::new(mean).expect("positive mean").sample(rng) as u64
    }
}
