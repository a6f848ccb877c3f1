use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::{PolarizationQubit, PSD_TOLERANCE, STATE_TOLERANCE};
use crate::{Error, Result, C64};

/// Which clone of a pair to keep in a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CloneIndex {
    First,
    Second,
}

/// Density operator of one qubit (`dim = 2`) or a qubit pair (`dim = 4`).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: DMatrix<C64>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        let n = m.nrows();
        if m.ncols() != n || !(n == 2 || n == 4) {
            return Err(Error::InvalidDensityMatrix(format!(
                "shape {}x{} (expected 2x2 or 4x4)",
                m.nrows(),
                m.ncols()
            )));
        }
        let herm = (&m - m.adjoint()).camax();
        if herm > STATE_TOLERANCE {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (max deviation {herm:e})"
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > STATE_TOLERANCE || tr.im.abs() > STATE_TOLERANCE {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr}")));
        }
        let min = min_eigenvalue(&m);
        if min < -PSD_TOLERANCE {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(Self { m })
    }

    /// Hermitizes and renormalizes a matrix that is PSD by construction.
    pub(crate) fn from_unnormalized(m: DMatrix<C64>) -> Self {
        let h = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        let tr = h.trace().re;
        Self {
            m: h / C64::new(tr, 0.0),
        }
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) amplitude vector.
    pub fn from_ket(ket: &[C64]) -> Self {
        let v = DVector::from_column_slice(ket);
        Self::from_unnormalized(&v * v.adjoint())
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let m = DMatrix::<C64>::identity(dim, dim) / C64::new(dim as f64, 0.0);
        Self { m }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.m
    }

    /// `⟨ψ|ρ|ψ⟩` for an amplitude vector of matching length.
    pub fn expectation(&self, ket: &[C64]) -> Result<f64> {
        if ket.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: ket.len(),
            });
        }
        let v = DVector::from_column_slice(ket);
        Ok((v.adjoint() * &self.m * &v)[(0, 0)].re)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.m.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// `½‖ρ − σ‖₁`.
    pub fn trace_distance(&self, other: &DensityMatrix) -> f64 {
        trace_norm(&(&self.m - &other.m)) / 2.0
    }

    /// Trace of `ρ²`.
    pub fn purity(&self) -> f64 {
        (&self.m * &self.m).trace().re
    }
}

/// Single-copy fidelity `⟨ψ|ρ|ψ⟩` of a one-qubit state against a pure target.
pub fn fidelity(rho: &DensityMatrix, psi: &PolarizationQubit) -> Result<f64> {
    rho.expectation(psi.ket().as_slice())
}

/// Reduced state of one clone from a two-qubit state.
pub fn partial_trace(rho_pair: &DensityMatrix, keep: CloneIndex) -> Result<DensityMatrix> {
    if rho_pair.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho_pair.dim(),
        });
    }
    let m = rho_pair.matrix();
    let mut out = DMatrix::<C64>::zeros(2, 2);
    for a in 0..2 {
        for b in 0..2 {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..2 {
                acc += match keep {
                    CloneIndex::First => m[(2 * a + k, 2 * b + k)],
                    CloneIndex::Second => m[(2 * k + a, 2 * k + b)],
                };
            }
            out[(a, b)] = acc;
        }
    }
    Ok(DensityMatrix::from_unnormalized(out))
}

pub(crate) fn min_eigenvalue(m: &DMatrix<C64>) -> f64 {
    SymmetricEigen::new((m + m.adjoint()) * C64::new(0.5, 0.0))
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

pub(crate) fn trace_norm(m: &DMatrix<C64>) -> f64 {
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    SymmetricEigen::new(h).eigenvalues.iter().map(|e| e.abs()).sum()
}
