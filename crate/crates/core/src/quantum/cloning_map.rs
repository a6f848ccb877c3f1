use nalgebra::{DMatrix, Matrix2, SMatrix, SymmetricEigen};
use rand::Rng;
use rand_distr::StandardNormal;

use super::{DensityMatrix, PSD_TOLERANCE};
use crate::{Error, Result, C64};

pub type Matrix8 = SMatrix<f64, 8, 8>;

/// Choi-type operator of a 1→2 qubit cloning channel.
///
/// Rows and columns are indexed by `|in⟩⊗|c1⟩⊗|c2⟩`, i.e. index
/// `4·in + 2·c1 + c2`. The channel acts as
/// `ρ_clones = Tr_in[(ρ_inᵀ ⊗ I₄) χ]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CloningMap {
    chi: Matrix8,
}

impl CloningMap {
    /// Checks symmetry, positivity and trace preservation at 1e-10.
    pub fn new(chi: Matrix8) -> Result<Self> {
        Self::with_tolerance(chi, PSD_TOLERANCE)
    }

    pub fn with_tolerance(chi: Matrix8, tol: f64) -> Result<Self> {
        if !chi.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidCloningMap("non-finite entry".into()));
        }
        let asym = (chi - chi.transpose()).amax();
        if asym > tol {
            return Err(Error::InvalidCloningMap(format!(
                "not symmetric (max deviation {asym:e})"
            )));
        }
        let min = SymmetricEigen::new(symmetrize(&chi)).eigenvalues.min();
        if min < -tol {
            return Err(Error::InvalidCloningMap(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        let tp = (trace_out(&chi) - Matrix2::identity()).amax();
        if tp > tol {
            return Err(Error::InvalidCloningMap(format!(
                "Tr_out χ deviates from identity by {tp:e}"
            )));
        }
        Ok(Self { chi })
    }

    pub fn matrix(&self) -> &Matrix8 {
        &self.chi
    }

    pub fn apply(&self, rho_in: &DensityMatrix) -> Result<DensityMatrix> {
        if rho_in.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: rho_in.dim(),
            });
        }
        let rho = rho_in.matrix();
        let mut out = DMatrix::<C64>::zeros(4, 4);
        for a in 0..4 {
            for b in 0..4 {
                let mut acc = C64::new(0.0, 0.0);
                for j in 0..2 {
                    for i in 0..2 {
                        acc += rho[(j, i)] * self.chi[(4 * j + a, 4 * i + b)];
                    }
                }
                out[(a, b)] = acc;
            }
        }
        Ok(DensityMatrix::from_unnormalized(out))
    }

    /// Random map `(T^{-1/2} ⊗ I) GGᵀ (T^{-1/2} ⊗ I)` with Gaussian `G` and
    /// `T = Tr_out(GGᵀ)`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let g = Matrix8::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
        let chi0 = g * g.transpose();
        let eig = SymmetricEigen::new(trace_out(&chi0));
        let inv_sqrt = eig.eigenvectors
            * Matrix2::from_diagonal(&eig.eigenvalues.map(|e| 1.0 / e.sqrt()))
            * eig.eigenvectors.transpose();
        let m = lift(&inv_sqrt);
        let chi = m * chi0 * m;
        Self {
            chi: symmetrize(&chi),
        }
    }

    /// Whether χ commutes with `I ⊗ SWAP` (both clones equally good).
    pub fn is_swap_symmetric(&self, tol: f64) -> bool {
        let s = swap_operator();
        (s * self.chi - self.chi * s).amax() <= tol
    }
}

/// Applies a cloning map to a single-qubit input state.
pub fn apply_cloning_map(chi: &CloningMap, rho_in: &DensityMatrix) -> Result<DensityMatrix> {
    chi.apply(rho_in)
}

/// Partial trace over both clone subsystems.
pub fn trace_out(m: &Matrix8) -> Matrix2<f64> {
    let mut out = Matrix2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = (0..4).map(|k| m[(4 * i + k, 4 * j + k)]).sum();
        }
    }
    out
}

/// Permutation matrix of `I_in ⊗ SWAP_{c1,c2}`.
pub fn swap_operator() -> Matrix8 {
    let mut s = Matrix8::zeros();
    for i in 0..2 {
        for c1 in 0..2 {
            for c2 in 0..2 {
                s[(4 * i + 2 * c2 + c1, 4 * i + 2 * c1 + c2)] = 1.0;
            }
        }
    }
    s
}

/// `m ⊗ I₄`.
pub fn lift(m: &Matrix2<f64>) -> Matrix8 {
    let mut a = Matrix8::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..4 {
                a[(4 * i + k, 4 * j + k)] = m[(i, j)];
            }
        }
    }
    a
}

pub(crate) fn symmetrize(m: &Matrix8) -> Matrix8 {
    (m + m.transpose()) * 0.5
}
