use serde::{Deserialize, Serialize};

use crate::theory::lambda_opt;
use crate::{Error, Result};

const FILTER_SLACK: f64 = 1e-12;

/// Polarization-dependent beam splitter with intensity transmittances
/// `mu` (H) and `nu` (V).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PdbsParams {
    pub mu: f64,
    pub nu: f64,
}

/// Ratios that let an imperfect PDBS emulate the ideal one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Compensation {
    /// Mode-2 to mode-1 transmittance ratio of the conditional filters.
    pub omega: f64,
    /// `τ_V / τ_H` of the unconditional filter.
    pub kappa: f64,
    /// Unconditional `(τ_H, τ_V)`, the larger of the two set to 1.
    pub unconditional: (f64, f64),
}

impl PdbsParams {
    pub fn new(mu: f64, nu: f64) -> Result<Self> {
        for (name, v) in [("mu", mu), ("nu", nu)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::OutOfRange {
                    name,
                    value: v,
                    range: "[0, 1]",
                });
            }
        }
        Ok(Self { mu, nu })
    }

    /// `μ + ν = 1`, `μ − ν = 1/√3`.
    pub fn ideal() -> Self {
        let d = 1.0 / 3f64.sqrt();
        Self {
            mu: (1.0 + d) / 2.0,
            nu: (1.0 - d) / 2.0,
        }
    }

    /// Transmittances of the splitter used in the experiment.
    pub fn measured() -> Self {
        Self { mu: 0.76, nu: 0.18 }
    }

    pub fn compensation(&self) -> Result<Compensation> {
        compensation(self)
    }
}

pub fn compensation(pdbs: &PdbsParams) -> Result<Compensation> {
    let PdbsParams { mu, nu } = *pdbs;
    let degenerate = |reason| Error::DegenerateSplitter { mu, nu, reason };
    if mu == 1.0 || nu == 1.0 {
        return Err(degenerate("omega undefined for unit transmittance"));
    }
    if nu == 0.5 {
        return Err(degenerate("kappa undefined for nu = 1/2"));
    }
    let omega = mu * nu / ((1.0 - mu) * (1.0 - nu));
    let kappa = (2.0 * mu - 1.0) / (1.0 - 2.0 * nu);
    if !(kappa > 0.0) {
        return Err(degenerate("kappa must be positive"));
    }
    let unconditional = if kappa <= 1.0 { (1.0, kappa) } else { (1.0 / kappa, 1.0) };
    Ok(Compensation {
        omega,
        kappa,
        unconditional,
    })
}

/// Conditional attenuation `τ = (1 − Λ²)(1 − 2μ)² / (2μνΛ²)` for the
/// optimal `Λ` at polar angle `theta`.
pub fn filter_tau(theta: f64, pdbs: &PdbsParams) -> Result<f64> {
    let PdbsParams { mu, nu } = *pdbs;
    if mu * nu == 0.0 {
        return Err(Error::DegenerateSplitter {
            mu,
            nu,
            reason: "mu * nu = 0",
        });
    }
    let l2 = lambda_opt(theta.cos().powi(2)).powi(2);
    let tau = (1.0 - l2) * (1.0 - 2.0 * mu).powi(2) / (2.0 * mu * nu * l2);
    check_transmittance(tau)
}

pub(crate) fn check_transmittance(tau: f64) -> Result<f64> {
    if !(tau >= 0.0) || tau > 1.0 + FILTER_SLACK {
        Err(Error::UnphysicalFilter { tau })
    } else {
        Ok(tau.min(1.0))
    }
}

/// Coincidence probability of the MPCC averaged over both ancillae.
///
/// For `κ ≤ 1` this is `(1 − 2μ)²/2 + μντκ`. For `κ > 1` the unconditional
/// filter attenuates H instead and the terms scale accordingly.
pub fn success_probability_theory(pdbs: &PdbsParams, theta: f64) -> Result<f64> {
    let comp = compensation(pdbs)?;
    let tau = filter_tau(theta, pdbs)?;
    let (uh, uv) = comp.unconditional;
    let PdbsParams { mu, nu } = *pdbs;
    Ok(uh * uh * (1.0 - 2.0 * mu).powi(2) / 2.0 + mu * nu * tau * uh * uv)
}

/// Coincidence probability of the generalized PCC (MPCC settings tuned to
/// the equator, ancilla fixed by the hemisphere) for an input at `theta`.
pub fn pcc_success_probability(
    pdbs: &PdbsParams,
    theta: f64,
    hemisphere: super::Hemisphere,
) -> Result<f64> {
    let comp = compensation(pdbs)?;
    let tau = filter_tau(std::f64::consts::FRAC_PI_2, pdbs)?;
    let (uh, uv) = comp.unconditional;
    let PdbsParams { mu, nu } = *pdbs;
    let same = uh * uh * (2.0 * mu - 1.0).powi(2);
    let crossed = 2.0 * mu * nu * tau * uh * uv;
    let (c2, s2) = ((theta / 2.0).cos().powi(2), (theta / 2.0).sin().powi(2));
    Ok(match hemisphere {
        super::Hemisphere::North => same * c2 + crossed * s2,
        super::Hemisphere::South => same * s2 + crossed * c2,
    })
}

/// Coincidence probability of the calibration run with `|H₁H₂⟩` and the
/// reflected beam decoupled.
pub fn calibration_probability(pdbs: &PdbsParams) -> f64 {
    pdbs.mu * pdbs.mu
}

/// `P_ex = μ² C_clon / C_calib`.
pub fn measure_success_probability(clon_rate: f64, calib_rate: f64, mu: f64) -> Result<f64> {
    if !(calib_rate > 0.0) {
        return Err(Error::ZeroCalibration);
    }
    Ok(mu * mu * clon_rate / calib_rate)
}
