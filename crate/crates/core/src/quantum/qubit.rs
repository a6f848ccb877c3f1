use std::f64::consts::PI;

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

use super::DensityMatrix;
use crate::C64;

/// Pure polarization state `cos(θ/2)|H⟩ + sin(θ/2)e^{iφ}|V⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarizationQubit {
    theta: f64,
    phi: f64,
}

impl PolarizationQubit {
    /// Builds the state for arbitrary real angles.
    ///
    /// `phi` is reduced into `[0, 2π)`. A polar angle outside `[0, π]` is
    /// folded back onto the sphere, which only changes the global phase.
    pub fn new(theta: f64, phi: f64) -> Self {
        let mut theta = theta.rem_euclid(2.0 * PI);
        let mut phi = phi;
        if theta > PI {
            theta = 2.0 * PI - theta;
            phi += PI;
        }
        Self {
            theta,
            phi: phi.rem_euclid(2.0 * PI),
        }
    }

    pub fn horizontal() -> Self {
        Self::new(0.0, 0.0)
    }

    pub fn vertical() -> Self {
        Self::new(PI, 0.0)
    }

    pub fn diagonal() -> Self {
        Self::new(PI / 2.0, 0.0)
    }

    pub fn antidiagonal() -> Self {
        Self::new(PI / 2.0, PI)
    }

    pub fn right_circular() -> Self {
        Self::new(PI / 2.0, PI / 2.0)
    }

    pub fn left_circular() -> Self {
        Self::new(PI / 2.0, 3.0 * PI / 2.0)
    }

    /// The six tomography / universal-cloning test states with their labels.
    pub fn cardinal_states() -> [(&'static str, Self); 6] {
        [
            ("H", Self::horizontal()),
            ("V", Self::vertical()),
            ("D", Self::diagonal()),
            ("A", Self::antidiagonal()),
            ("R", Self::right_circular()),
            ("L", Self::left_circular()),
        ]
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn ket(&self) -> Vector2<C64> {
        let (s, c) = (self.theta / 2.0).sin_cos();
        Vector2::new(C64::new(c, 0.0), C64::from_polar(s, self.phi))
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_ket(self.ket().as_slice())
    }

    /// Bloch vector `(sinθ cosφ, sinθ sinφ, cosθ)`.
    pub fn bloch(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}
