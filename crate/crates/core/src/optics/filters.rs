use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::pdbs::{check_transmittance, compensation, filter_tau, PdbsParams};
use crate::theory::lambda_opt;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarization {
    H,
    V,
}

/// Intensity transmittances and H–V phases applied after the PDBS.
///
/// Mode 1 is the spatial mode the input photon enters, mode 2 the ancilla's.
/// The phase multiplies the V amplitude of the respective mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilterSettings {
    pub tau_1h: f64,
    pub tau_1v: f64,
    pub tau_2h: f64,
    pub tau_2v: f64,
    pub phase_1: f64,
    pub phase_2: f64,
    pub ancilla: Polarization,
}

impl FilterSettings {
    /// No attenuation, no phases.
    pub fn transparent(ancilla: Polarization) -> Self {
        Self {
            tau_1h: 1.0,
            tau_1v: 1.0,
            tau_2h: 1.0,
            tau_2v: 1.0,
            phase_1: 0.0,
            phase_2: 0.0,
            ancilla,
        }
    }

    fn validate(self) -> Result<Self> {
        Ok(Self {
            tau_1h: check_transmittance(self.tau_1h)?,
            tau_1v: check_transmittance(self.tau_1v)?,
            tau_2h: check_transmittance(self.tau_2h)?,
            tau_2v: check_transmittance(self.tau_2v)?,
            ..self
        })
    }
}

/// The π phase sits on V in the mode that carries the conditional
/// attenuation of the other polarization.
fn branch_phases(ancilla: Polarization) -> (f64, f64) {
    match ancilla {
        Polarization::H => (0.0, PI),
        Polarization::V => (PI, 0.0),
    }
}

/// MPCC filters for polar angle `theta` and the given ancilla.
pub fn make_filter_settings(
    theta: f64,
    ancilla: Polarization,
    pdbs: &PdbsParams,
) -> Result<FilterSettings> {
    let tau = filter_tau(theta, pdbs)?;
    let comp = compensation(pdbs)?;
    let (uh, uv) = comp.unconditional;
    let tau2 = comp.omega * tau;
    let (phase_1, phase_2) = branch_phases(ancilla);
    let (t1, t2) = match ancilla {
        Polarization::H => ((uh, uv * tau), (uh, uv * tau2)),
        Polarization::V => ((uh * tau, uv), (uh * tau2, uv)),
    };
    FilterSettings {
        tau_1h: t1.0,
        tau_1v: t1.1,
        tau_2h: t2.0,
        tau_2v: t2.1,
        phase_1,
        phase_2,
        ancilla,
    }
    .validate()
}

/// Filters for an axisymmetric cloner with parameters `α±`.
///
/// Only the ratios `τ_H/τ_V` per mode are prescribed; the larger
/// transmittance of each mode is set to 1. A ratio of the form `x/0`
/// blocks V entirely, `0/0` is rejected.
pub fn axisym_filter_settings(
    alpha_plus: f64,
    alpha_minus: f64,
    ancilla: Polarization,
    pdbs: &PdbsParams,
) -> Result<FilterSettings> {
    let PdbsParams { mu, nu } = *pdbs;
    let bal = (1.0 - 2.0 * mu).powi(2);
    if bal == 0.0 || mu * nu == 0.0 || mu == 1.0 || nu == 1.0 {
        return Err(Error::DegenerateSplitter {
            mu,
            nu,
            reason: "axisymmetric filter ratios undefined",
        });
    }
    let (num, den, r1, r2, label) = match ancilla {
        Polarization::H => (
            alpha_plus.cos(),
            alpha_minus.sin(),
            2.0 * (1.0 - mu) * (1.0 - nu) / bal,
            2.0 * mu * nu / bal,
            "cos(alpha_plus) / sin(alpha_minus)",
        ),
        Polarization::V => (
            alpha_plus.sin(),
            alpha_minus.cos(),
            (2.0 * nu - 1.0).powi(2) / (2.0 * (1.0 - mu) * (1.0 - nu)),
            (2.0 * nu - 1.0).powi(2) / (2.0 * mu * nu),
            "sin(alpha_plus) / cos(alpha_minus)",
        ),
    };
    const ZERO: f64 = 1e-12;
    let (num, den) = (num * num, den * den);
    let split = |r: f64| -> Result<(f64, f64)> {
        match (num < ZERO, den < ZERO) {
            (true, true) => Err(Error::SingularFilterRatio(label)),
            (false, true) => Ok((1.0, 0.0)),
            (true, false) => Ok((0.0, 1.0)),
            (false, false) => {
                let ratio = num / den * r;
                Ok(if ratio >= 1.0 { (1.0, 1.0 / ratio) } else { (ratio, 1.0) })
            }
        }
    };
    let (tau_1h, tau_1v) = split(r1)?;
    let (tau_2h, tau_2v) = split(r2)?;
    let (phase_1, phase_2) = branch_phases(ancilla);
    FilterSettings {
        tau_1h,
        tau_1v,
        tau_2h,
        tau_2v,
        phase_1,
        phase_2,
        ancilla,
    }
    .validate()
}

/// `Λ'` actually realized by the compensated filters at polar angle `theta`.
///
/// The unconditional filter rescales the V-conditioned branch by κ, so
/// `Λ̄'²/Λ'² = κ·Λ̄²/Λ²`. Equals `lambda_opt` for `κ = 1`.
pub fn effective_lambda(theta: f64, pdbs: &PdbsParams) -> Result<f64> {
    let kappa = compensation(pdbs)?.kappa;
    let l2 = lambda_opt(theta.cos().powi(2)).powi(2);
    let ratio = kappa * (1.0 - l2) / l2;
    Ok((1.0 / (1.0 + ratio)).sqrt())
}
