use std::f64::consts::SQRT_2;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::mpcc::check_unit;
use crate::quantum::DensityMatrix;
use crate::{Error, Result, C64};

/// Single-clone channel `ρ ↦ α₊ρ + p_x XρX + p_y YρY + α₋ ZρZ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliChannel {
    pub alpha_plus: f64,
    pub alpha_minus: f64,
    pub p_x: f64,
    pub p_y: f64,
    pub lambda: f64,
    pub lambda_bar: f64,
}

pub fn pauli_channel(lambda: f64) -> Result<PauliChannel> {
    PauliChannel::new(lambda)
}

impl PauliChannel {
    pub fn new(lambda: f64) -> Result<Self> {
        check_unit("lambda", lambda)?;
        let l2 = lambda * lambda;
        let lambda_bar = (1.0 - l2).max(0.0).sqrt();
        let cross = 2.0 * SQRT_2 * lambda * lambda_bar;
        let p = lambda_bar * lambda_bar / 4.0;
        Ok(Self {
            // Rounding can push α₋ a few ulps below zero near Λ² = 1/3.
            alpha_plus: (1.0 + l2 + cross) / 4.0,
            alpha_minus: ((1.0 + l2 - cross) / 4.0).max(0.0),
            p_x: p,
            p_y: p,
            lambda,
            lambda_bar,
        })
    }

    /// `[α₊, p_x, p_y, α₋]` for `I, X, Y, Z`.
    pub fn probabilities(&self) -> [f64; 4] {
        [self.alpha_plus, self.p_x, self.p_y, self.alpha_minus]
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: rho.dim(),
            });
        }
        let z = C64::new(0.0, 0.0);
        let o = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let paulis = [
            DMatrix::from_row_slice(2, 2, &[o, z, z, o]),
            DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
            DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
            DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
        ];
        let m = rho.matrix();
        let out = paulis
            .iter()
            .zip(self.probabilities())
            .fold(DMatrix::<C64>::zeros(2, 2), |acc, (s, p)| {
                acc + s * m * s * C64::new(p, 0.0)
            });
        Ok(DensityMatrix::from_unnormalized(out))
    }
}
