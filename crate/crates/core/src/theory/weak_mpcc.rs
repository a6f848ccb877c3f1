use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::distribution::{PhaseProfile, Ring, PHASE_NODES};
use super::QubitDistribution;
use crate::quadrature::periodic_trapezoid;
use crate::Result;

pub const WEAK_MPCC_TOLERANCE: f64 = 1e-6;
const SAME_LATITUDE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeakMpccCheck {
    pub holds: bool,
    /// `arccos(√⟨cos²θ⟩)` in `[0, π/2]`.
    pub theta_eff: f64,
    /// Largest `|∫[g(θ,φ) + g(π−θ,φ)] e^{inφ} dφ|` over latitudes, `n = 1, 2`.
    pub phase_residual: f64,
    /// Largest `|∫g(θ,φ)dφ − ∫g(π−θ,φ)dφ|` over latitudes.
    pub balance_residual: f64,
}

/// Tests whether `g` satisfies the relaxed conditions under which the
/// MPCC for `θ_eff` stays optimal.
///
/// Phase-uniform latitudes are integrated with a periodic trapezoid rule,
/// point masses by direct summation. Latitudes at the poles carry no phase
/// and are exempt from the phase condition.
pub fn check_weak_mpcc(g: &QubitDistribution) -> Result<WeakMpccCheck> {
    let rings = g.rings()?;
    let c1_2 = g.moments()?.c1_2;
    let theta_eff = c1_2.clamp(0.0, 1.0).sqrt().acos();
    let trapezoid = periodic_trapezoid(PHASE_NODES);

    let mut phase_residual = 0.0f64;
    let mut balance_residual = 0.0f64;
    for ring in &rings {
        let mirror = PI - ring.theta;
        let at = |t: f64| rings.iter().filter(move |r| (r.theta - t).abs() < SAME_LATITUDE);
        let mass = |t: f64| at(t).map(|r| r.weight).sum::<f64>();
        balance_residual = balance_residual.max((mass(ring.theta) - mass(mirror)).abs());

        if ring.theta.sin() < SAME_LATITUDE {
            continue;
        }
        let mut members: Vec<&Ring> = at(ring.theta).collect();
        if (mirror - ring.theta).abs() >= SAME_LATITUDE {
            members.extend(at(mirror));
        }
        for n in [1.0, 2.0] {
            let (mut re, mut im) = (0.0, 0.0);
            for r in &members {
                let (c, s) = harmonic(&r.phase, n, &trapezoid);
                re += r.weight * c;
                im += r.weight * s;
            }
            phase_residual = phase_residual.max(re.hypot(im));
        }
    }
    Ok(WeakMpccCheck {
        holds: phase_residual < WEAK_MPCC_TOLERANCE && balance_residual < WEAK_MPCC_TOLERANCE,
        theta_eff,
        phase_residual,
        balance_residual,
    })
}

/// `⟨cos nφ⟩, ⟨sin nφ⟩` over one latitude's phase profile.
fn harmonic(profile: &PhaseProfile, n: f64, trapezoid: &[(f64, f64)]) -> (f64, f64) {
    let nodes: &[(f64, f64)] = match profile {
        PhaseProfile::Uniform => trapezoid,
        PhaseProfile::Discrete(v) => v,
    };
    nodes.iter().fold((0.0, 0.0), |(c, s), &(phi, w)| {
        let (sn, cs) = (n * phi).sin_cos();
        (c + w * cs, s + w * sn)
    })
}
