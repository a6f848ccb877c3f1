use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, Vector2};
use serde::{Deserialize, Serialize};

use super::filters::{make_filter_settings, FilterSettings, Polarization};
use super::pdbs::PdbsParams;
use super::state::TwoPhotonState;
use crate::quantum::{fidelity, partial_trace, CloneIndex, DensityMatrix, PolarizationQubit};
use crate::theory::uc_theta;
use crate::{Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hemisphere {
    North,
    South,
}

impl Hemisphere {
    /// Hemisphere of a polar angle; the equator counts as north.
    pub fn of(theta: f64) -> Self {
        if theta <= FRAC_PI_2 {
            Self::North
        } else {
            Self::South
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "regime", rename_all = "lowercase")]
pub enum Regime {
    /// Universal cloner: MPCC settings at `cos²θ = 1/3`.
    Uc,
    /// Generalized PCC: equatorial MPCC settings, ancilla H (north) or V
    /// (south).
    Pcc { hemisphere: Hemisphere },
    /// Mirror phase-covariant cloner tuned to `theta`.
    Mpcc { theta: f64 },
}

impl Regime {
    /// Filter settings with the weight of each ancilla branch.
    pub fn branches(&self, pdbs: &PdbsParams) -> Result<Vec<(FilterSettings, f64)>> {
        let random = |theta: f64| -> Result<Vec<(FilterSettings, f64)>> {
            Ok(vec![
                (make_filter_settings(theta, Polarization::H, pdbs)?, 0.5),
                (make_filter_settings(theta, Polarization::V, pdbs)?, 0.5),
            ])
        };
        match *self {
            Self::Uc => random(uc_theta()),
            Self::Mpcc { theta } => random(theta),
            Self::Pcc { hemisphere } => {
                let s = match hemisphere {
                    Hemisphere::North => Polarization::H,
                    Hemisphere::South => Polarization::V,
                };
                Ok(vec![(make_filter_settings(FRAC_PI_2, s, pdbs)?, 1.0)])
            }
        }
    }
}

/// Post-selected output of the optical cloner.
#[derive(Debug, Clone, PartialEq)]
pub struct SimOutcome {
    /// Two-clone state conditioned on a coincidence; `None` when no
    /// coincidence can occur.
    pub rho_pair: Option<DensityMatrix>,
    /// Coincidence probability, averaged over ancilla branches.
    pub success_prob: f64,
    /// Total norm² after filtering, bunched terms included.
    pub raw_norm: f64,
    /// Coincidence probability of each branch, in the order of the settings.
    pub branch_probs: Vec<f64>,
}

impl SimOutcome {
    /// Fidelities of clone 1 and clone 2 with respect to `psi`.
    pub fn clone_fidelities(&self, psi: &PolarizationQubit) -> Option<(f64, f64)> {
        let rho = self.rho_pair.as_ref()?;
        let f = |k| {
            partial_trace(rho, k)
                .and_then(|r| fidelity(&r, psi))
                .expect("4-dim state")
        };
        Some((f(CloneIndex::First), f(CloneIndex::Second)))
    }
}

pub fn run_cloner(
    input: &PolarizationQubit,
    regime: &Regime,
    pdbs: &PdbsParams,
) -> Result<SimOutcome> {
    Ok(run_with_settings(input, &regime.branches(pdbs)?, pdbs))
}

/// Propagates `|ψ⟩₁|s⟩₂` through PDBS and filters for each weighted branch
/// and mixes the coincidence-projected outputs.
pub fn run_with_settings(
    input: &PolarizationQubit,
    branches: &[(FilterSettings, f64)],
    pdbs: &PdbsParams,
) -> SimOutcome {
    let ket = input.ket();
    let mut rho = DMatrix::<C64>::zeros(4, 4);
    let mut success_prob = 0.0;
    let mut raw_norm = 0.0;
    let mut branch_probs = Vec::with_capacity(branches.len());
    for (settings, w) in branches {
        let ancilla = match settings.ancilla {
            Polarization::H => Vector2::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
            Polarization::V => Vector2::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0)),
        };
        let out = TwoPhotonState::product(&ket, &ancilla)
            .through_pdbs(pdbs)
            .through_filters(settings);
        let c = nalgebra::DVector::from_column_slice(&out.coincidence_amplitudes());
        let p = c.norm_squared();
        rho += &c * c.adjoint() * C64::new(*w, 0.0);
        success_prob += w * p;
        raw_norm += w * out.norm_sqr();
        branch_probs.push(p);
    }
    let rho_pair = (success_prob > 0.0).then(|| DensityMatrix::from_unnormalized(rho));
    SimOutcome {
        rho_pair,
        success_prob,
        raw_norm,
        branch_probs,
    }
}
