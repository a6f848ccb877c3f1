//! Projected-gradient maximization of `Tr(Rχ)` over CPTP cloning maps.
//!
//! The feasible set is the intersection of the PSD cone with the affine
//! space `Tr_out χ = I`. Each step moves along `R` and projects back with
//! Dykstra's alternating scheme, which converges to the exact Euclidean
//! projection rather than just some feasible point.

use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};

use crate::quantum::{lift, swap_operator, trace_out, CloningMap, Matrix8};
use crate::theory::{trace_product, verify_optimality, FidelityOperator, OptimalityReport};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerOptions {
    pub max_iterations: usize,
    /// Stall threshold on successive changes of `F`.
    pub tolerance: f64,
    /// Consecutive stalled iterations required for convergence.
    pub patience: usize,
    pub projection_iterations: usize,
    pub projection_tolerance: f64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            max_iterations: 100_000,
            tolerance: 1e-10,
            patience: 50,
            projection_iterations: 1_000,
            projection_tolerance: 1e-13,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub chi_star: CloningMap,
    pub f_star: f64,
    pub iterations: usize,
    pub converged: bool,
    /// `|Tr λ(χ*) − F*|`.
    pub duality_gap: f64,
}

pub fn optimize_cloner(r: &FidelityOperator, symmetrize: bool) -> Result<OptimizationResult> {
    optimize_cloner_with(r, symmetrize, &OptimizerOptions::default())
}

pub fn optimize_cloner_with(
    r: &FidelityOperator,
    symmetrize: bool,
    opts: &OptimizerOptions,
) -> Result<OptimizationResult> {
    let rm = *r.matrix();
    if !rm.iter().all(|x| x.is_finite()) {
        return Err(Error::InvalidOperator("non-finite entry".into()));
    }
    if (rm - rm.transpose()).amax() > 1e-12 {
        return Err(Error::InvalidOperator("not symmetric".into()));
    }
    let norm = SymmetricEigen::new(rm).eigenvalues.amax();
    if norm == 0.0 {
        return Err(Error::InvalidOperator("zero operator".into()));
    }
    let step = rm / norm;

    let mut chi = Matrix8::identity() / 4.0;
    let mut f = trace_product(&rm, &chi);
    let mut stalled = 0;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iterations {
        iterations += 1;
        chi = project_feasible(&(chi + step), symmetrize, opts);
        let f_new = trace_product(&rm, &chi);
        stalled = if (f_new - f).abs() < opts.tolerance { stalled + 1 } else { 0 };
        f = f_new;
        if stalled >= opts.patience {
            converged = true;
            break;
        }
    }

    let chi_star = CloningMap::with_tolerance(chi, 1e-8)?;
    let f_star = trace_product(&rm, &chi);
    let duality_gap = (trace_out(&(rm * chi)).trace() - f_star).abs();
    Ok(OptimizationResult {
        chi_star,
        f_star,
        iterations,
        converged,
        duality_gap,
    })
}

/// Euclidean projection onto `{χ ⪰ 0, Tr_out χ = I}`, optionally restricted
/// to maps commuting with `I ⊗ SWAP`.
pub fn project_feasible(x: &Matrix8, symmetrize: bool, opts: &OptimizerOptions) -> Matrix8 {
    let affine = |m: &Matrix8| {
        let m = if symmetrize { swap_symmetrize(m) } else { *m };
        let m = (m + m.transpose()) * 0.5;
        m + lift(&(nalgebra::Matrix2::identity() - trace_out(&m))) / 4.0
    };
    let mut cur = *x;
    let mut p = Matrix8::zeros();
    let mut q = Matrix8::zeros();
    for _ in 0..opts.projection_iterations {
        let y = affine(&(cur + p));
        p += cur - y;
        let next = project_psd(&(y + q));
        q = y + q - next;
        let change = (next - cur).amax();
        cur = next;
        if change < opts.projection_tolerance {
            break;
        }
    }
    cur
}

/// Certificate for a converged optimizer run.
pub fn certify(result: &OptimizationResult, r: &FidelityOperator) -> Result<OptimalityReport> {
    if !result.converged {
        return Err(Error::NotConverged {
            iterations: result.iterations,
        });
    }
    Ok(verify_optimality(r, &result.chi_star))
}

fn project_psd(m: &Matrix8) -> Matrix8 {
    let eig = SymmetricEigen::new((m + m.transpose()) * 0.5);
    let clipped = eig.eigenvalues.map(|e| e.max(0.0));
    let v = eig.eigenvectors;
    v * Matrix8::from_diagonal(&clipped) * v.transpose()
}

fn swap_symmetrize(m: &Matrix8) -> Matrix8 {
    let s = swap_operator();
    (m + s * m * s) * 0.5
}
