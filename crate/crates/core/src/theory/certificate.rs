use nalgebra::{Matrix2, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::FidelityOperator;
use crate::quantum::{lift, trace_out, CloningMap};

/// Residual threshold for `(A − R)χ = 0`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;
/// Lower bound for the spectrum of `A − R`.
pub const EIGENVALUE_TOLERANCE: f64 = 1e-10;
const DEGENERACY_TOLERANCE: f64 = 1e-8;

/// Outcome of checking the sufficient optimality conditions
/// `(A − R)χ = 0` and `A − R ⪰ 0` with `A = Tr_out(Rχ) ⊗ I`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimalityReport {
    pub fidelity: f64,
    pub lambda: [[f64; 2]; 2],
    pub lambda_trace: f64,
    /// `Tr λ − F`.
    pub trace_gap: f64,
    /// `δ₁..δ₄` from the closed form for mirror-symmetric `R`.
    pub delta_eigenvalues: [f64; 4],
    /// Eigenvalues of `A − R`, ascending.
    pub spectrum: [f64; 8],
    /// Spectrum splits into four coincident pairs.
    pub doubly_degenerate: bool,
    /// Spectrum equals `{δ₁, δ₁, …, δ₄, δ₄}`.
    pub matches_closed_form: bool,
    pub condition1_residual: f64,
    pub condition2_min_eig: f64,
    pub optimal: bool,
}

pub fn verify_optimality(r: &FidelityOperator, chi: &CloningMap) -> OptimalityReport {
    let rm = r.matrix();
    let x = chi.matrix();
    let lambda: Matrix2<f64> = trace_out(&(rm * x));
    let lambda = (lambda + lambda.transpose()) * 0.5;
    let a = lift(&lambda);
    let delta = a - rm;
    let fidelity = (rm * x).trace();

    let mut spectrum: [f64; 8] = SymmetricEigen::new(delta)
        .eigenvalues
        .as_slice()
        .try_into()
        .expect("8 eigenvalues");
    spectrum.sort_by(f64::total_cmp);

    let c1_2 = 1.0 - 8.0 * r.r16();
    let r_sum = r.r11() + r.r22();
    let r_bar = r.r_bar();
    let delta_eigenvalues = [
        (fidelity - 0.5) / 2.0,
        (fidelity - (1.0 - c1_2) / 2.0) / 2.0,
        (fidelity - r_sum + r_bar) / 2.0,
        (fidelity - r_sum - r_bar) / 2.0,
    ];
    let mut doubled: Vec<f64> = delta_eigenvalues.iter().flat_map(|&d| [d, d]).collect();
    doubled.sort_by(f64::total_cmp);

    let doubly_degenerate = spectrum
        .chunks(2)
        .all(|p| (p[1] - p[0]).abs() < DEGENERACY_TOLERANCE);
    let matches_closed_form = spectrum
        .iter()
        .zip(&doubled)
        .all(|(a, b)| (a - b).abs() < DEGENERACY_TOLERANCE);

    let condition1_residual = (delta * x).norm();
    let condition2_min_eig = spectrum[0];
    let lambda_trace = lambda.trace();
    OptimalityReport {
        fidelity,
        lambda: [[lambda[(0, 0)], lambda[(0, 1)]], [lambda[(1, 0)], lambda[(1, 1)]]],
        lambda_trace,
        trace_gap: lambda_trace - fidelity,
        delta_eigenvalues,
        spectrum,
        doubly_degenerate,
        matches_closed_form,
        condition1_residual,
        condition2_min_eig,
        optimal: condition1_residual < RESIDUAL_TOLERANCE
            && condition2_min_eig > -EIGENVALUE_TOLERANCE,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::{build_chi, build_r, lambda_opt, MomentSet, QubitDistribution, UC_LAMBDA_SQ};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn equator() -> FidelityOperator {
        build_r(&QubitDistribution::MirrorPair { theta: FRAC_PI_2 }.moments().unwrap())
    }

    #[test]
    fn equator_optimum() {
        let rep = verify_optimality(&equator(), &build_chi(lambda_opt(0.0), 0.0).unwrap());
        assert!(rep.optimal);
        assert!(rep.doubly_degenerate && rep.matches_closed_form);
        assert_abs_diff_eq!(rep.delta_eigenvalues[3], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.delta_eigenvalues[0], 0.1768, epsilon = 1e-4);
        // δ₃ = F − (2 + c₁²)/4
        assert_abs_diff_eq!(rep.delta_eigenvalues[2], rep.fidelity - 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.delta_eigenvalues[2], 0.3536, epsilon = 1e-4);
        assert!(rep.trace_gap.abs() < 1e-10);
    }

    #[test]
    fn suboptimal_lambda_fails() {
        let rep = verify_optimality(&equator(), &build_chi(1.0, 0.0).unwrap());
        assert!(!rep.optimal);
        assert!(rep.condition1_residual > 1e-3);
    }

    #[test]
    fn universal_cloner_is_certified() {
        let r = build_r(&QubitDistribution::UniformSphere.moments().unwrap());
        let rep = verify_optimality(&r, &build_chi(UC_LAMBDA_SQ.sqrt(), 0.0).unwrap());
        assert!(rep.optimal);
        assert_abs_diff_eq!(rep.fidelity, 5.0 / 6.0, epsilon = 1e-12);
    }

    #[test]
    fn certificate_over_mirror_family() {
        for k in 0..100 {
            let c = k as f64 / 99.0;
            let r = build_r(&MomentSet::mirror_symmetric(c));
            let rep = verify_optimality(&r, &build_chi(lambda_opt(c), 0.0).unwrap());
            assert!(rep.optimal, "c1_2 = {c}: {rep:?}");
            assert!(rep.delta_eigenvalues[3].abs() < 1e-10);
            assert!(rep.delta_eigenvalues.iter().all(|&d| d >= -1e-10));
            assert!(rep.doubly_degenerate && rep.matches_closed_form, "c1_2 = {c}");
            assert!(rep.trace_gap.abs() < 1e-10);
        }
    }
}
