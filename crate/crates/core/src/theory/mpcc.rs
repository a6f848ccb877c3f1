use std::f64::consts::SQRT_2;

use nalgebra::SVector;

use super::{build_r, FidelityOperator, MomentSet};
use crate::quantum::{CloningMap, Matrix8};
use crate::{Error, Result};

/// `Λ²` at which the cloner turns into the universal (depolarizing) one.
pub const UC_LAMBDA_SQ: f64 = 2.0 / 3.0;

/// Latitude with `cos²θ = 1/3`, where the MPCC reaches universal fidelity.
pub fn uc_theta() -> f64 {
    (1.0 / 3.0f64).sqrt().acos()
}

/// Optimal `Λ` for a mirror-symmetric ensemble with `⟨cos²θ⟩ = c1_2`.
///
/// Inputs outside `[0, 1]` are clamped.
pub fn lambda_opt(c1_2: f64) -> f64 {
    let c = c1_2.clamp(0.0, 1.0);
    let p = 2.0 - 4.0 * c + 3.0 * c * c;
    (0.5 + c / (2.0 * p.sqrt())).sqrt()
}

/// `(1 − p)·χ_Λ + p·(|011⟩⟨011| + |100⟩⟨100|)`.
///
/// `χ_Λ` has Kraus operators `Λ|HH⟩⟨H| + Λ̄|Ψ⁺⟩⟨V|` and
/// `Λ̄|Ψ⁺⟩⟨H| + Λ|VV⟩⟨V|`.
pub fn build_chi(lambda: f64, p: f64) -> Result<CloningMap> {
    check_unit("lambda", lambda)?;
    check_unit("p", p)?;
    let lb = (1.0 - lambda * lambda).max(0.0).sqrt();
    let h = lb / SQRT_2;
    let k1 = SVector::<f64, 8>::from([lambda, 0.0, 0.0, 0.0, 0.0, h, h, 0.0]);
    let k2 = SVector::<f64, 8>::from([0.0, h, h, 0.0, 0.0, 0.0, 0.0, lambda]);
    let mut chi = (k1 * k1.transpose() + k2 * k2.transpose()) * (1.0 - p);
    chi[(3, 3)] += p;
    chi[(4, 4)] += p;
    CloningMap::with_tolerance(chi, 1e-12)
}

/// `Tr(Rχ)`.
pub fn fidelity_of(chi: &CloningMap, r: &FidelityOperator) -> f64 {
    trace_product(chi.matrix(), r.matrix())
}

pub(crate) fn trace_product(a: &Matrix8, b: &Matrix8) -> f64 {
    a.tr_mul(b).trace()
}

/// Closed-form optimum `R₁₁ + R₂₂ + R̄` for mirror-symmetric moments.
pub fn fidelity_theory(m: &MomentSet) -> f64 {
    let r = build_r(m);
    r.r11() + r.r22() + r.r_bar()
}

/// Single-clone fidelity of `χ(Λ, 0)` for an input at polar angle θ.
pub fn clone_fidelity_pointwise(theta: f64, lambda: f64) -> f64 {
    let lb2 = 1.0 - lambda * lambda;
    let cross = 2.0 * SQRT_2 * lambda * lb2.max(0.0).sqrt();
    let alpha_plus = (1.0 + lambda * lambda + cross) / 4.0;
    let alpha_minus = (1.0 + lambda * lambda - cross) / 4.0;
    let (s, c) = theta.sin_cos();
    alpha_plus + lb2 / 4.0 * s * s + alpha_minus * c * c
}

/// Fidelity of the isometric phase-covariant cloner for a known latitude
/// θ (and hemisphere): `a(a + b/2) + b²/2 + √2·ab` with `a`, `b` the
/// larger and smaller of `cos²(θ/2)`, `sin²(θ/2)`.
pub fn pcc_fidelity(theta: f64) -> f64 {
    let (s, c) = (theta / 2.0).sin_cos();
    let (c2, s2) = (c * c, s * s);
    let (a, b) = if c2 >= s2 { (c2, s2) } else { (s2, c2) };
    a * (a + b / 2.0) + b * b / 2.0 + SQRT_2 * a * b
}

pub(crate) fn check_unit(name: &'static str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value: v,
            range: "[0, 1]",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{fidelity, partial_trace, CloneIndex, PolarizationQubit};
    use crate::theory::QubitDistribution;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn mirror(theta: f64) -> MomentSet {
        QubitDistribution::MirrorPair { theta }.moments().unwrap()
    }

    #[test]
    fn lambda_opt_examples() {
        assert_abs_diff_eq!(lambda_opt(0.0).powi(2), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(lambda_opt(1.0).powi(2), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(lambda_opt(1.0 / 3.0).powi(2), UC_LAMBDA_SQ, epsilon = 1e-15);
    }

    #[test]
    fn chi_at_unit_lambda() {
        let chi = build_chi(1.0, 0.0).unwrap();
        let m = chi.matrix();
        assert_eq!(m[(0, 0)], 1.0);
        assert_eq!(m[(7, 7)], 1.0);
        for (i, j) in [(5, 5), (5, 6), (6, 5), (6, 6), (1, 1), (1, 2)] {
            assert_eq!(m[(i, j)], 0.0, "({i},{j})");
        }
        assert_eq!(m[(0, 5)], 0.0);
    }

    #[test]
    fn chi_entries_by_hand() {
        let (l, lb) = (0.8f64, 0.6f64);
        let m = *build_chi(l, 0.0).unwrap().matrix();
        assert_abs_diff_eq!(m[(0, 0)], l * l, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(1, 2)], lb * lb / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(6, 6)], lb * lb / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(7, 1)], l * lb / SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(0, 6)], l * lb / SQRT_2, epsilon = 1e-15);
        assert_eq!(m[(3, 3)], 0.0);
    }

    #[test]
    fn chi_rejects_out_of_range() {
        assert!(build_chi(1.1, 0.0).is_err());
        assert!(build_chi(0.5, -0.1).is_err());
        assert!(build_chi(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn pure_mixture_term_gives_half_s1() {
        for theta in [0.3, FRAC_PI_2, 2.0] {
            let r = build_r(&mirror(theta));
            let f = fidelity_of(&build_chi(0.9, 1.0).unwrap(), &r);
            assert_abs_diff_eq!(f, mirror(theta).s1_2 / 2.0, epsilon = 1e-15);

            // F = (1 − p)F_Λ + p·s₁²/2
            let p = 0.3;
            let f_l = fidelity_of(&build_chi(0.9, 0.0).unwrap(), &r);
            let f_p = fidelity_of(&build_chi(0.9, p).unwrap(), &r);
            assert_abs_diff_eq!(f_p, (1.0 - p) * f_l + p * mirror(theta).s1_2 / 2.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn universal_point() {
        let chi = build_chi(UC_LAMBDA_SQ.sqrt(), 0.0).unwrap();
        let r = build_r(&QubitDistribution::UniformSphere.moments().unwrap());
        assert_abs_diff_eq!(fidelity_of(&chi, &r), 5.0 / 6.0, epsilon = 1e-12);
    }

    #[test]
    fn fidelity_of_equator_and_diagonal() {
        let f = fidelity_of(&build_chi(lambda_opt(0.0), 0.0).unwrap(), &build_r(&mirror(FRAC_PI_2)));
        assert_abs_diff_eq!(f, 0.5 + 1.0 / 8f64.sqrt(), epsilon = 1e-12);
        assert!((f - 0.854).abs() < 5e-4);

        let c = FRAC_PI_4.cos().powi(2);
        let l = lambda_opt(c);
        let f = fidelity_of(&build_chi(l, 0.0).unwrap(), &build_r(&mirror(FRAC_PI_4)));
        let pointwise =
            (clone_fidelity_pointwise(FRAC_PI_4, l) + clone_fidelity_pointwise(PI - FRAC_PI_4, l)) / 2.0;
        assert_abs_diff_eq!(f, pointwise, epsilon = 1e-14);
        assert_abs_diff_eq!(f, 0.84151, epsilon = 1e-5);
    }

    #[test]
    fn fidelity_theory_examples() {
        assert_abs_diff_eq!(fidelity_theory(&mirror(0.0)), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(fidelity_theory(&mirror(uc_theta())), 5.0 / 6.0, epsilon = 1e-12);
        assert!((fidelity_theory(&mirror(3.0 * PI / 8.0)) - 0.840).abs() < 1e-3);
    }

    #[test]
    fn pointwise_examples() {
        assert_abs_diff_eq!(clone_fidelity_pointwise(0.0, 1.0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            clone_fidelity_pointwise(FRAC_PI_2, 0.5f64.sqrt()),
            fidelity_theory(&mirror(FRAC_PI_2)),
            epsilon = 1e-14
        );
        for t in [0.0, 0.4, 1.9, PI] {
            assert_abs_diff_eq!(clone_fidelity_pointwise(t, UC_LAMBDA_SQ.sqrt()), 5.0 / 6.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn pcc_fidelity_examples() {
        assert_abs_diff_eq!(pcc_fidelity(0.0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(pcc_fidelity(PI), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(pcc_fidelity(PI / 2.0), 0.5 + SQRT_2 / 4.0, epsilon = 1e-15);
        for (theta, f) in [(PI / 12.0, 0.998), (PI / 5.0, 0.988), (PI / 3.0, 0.953), (3.0 * PI / 8.0, 0.934)] {
            assert_abs_diff_eq!(pcc_fidelity(theta), f, epsilon = 5e-4);
            assert_abs_diff_eq!(pcc_fidelity(PI - theta), pcc_fidelity(theta), epsilon = 1e-15);
        }
    }

    #[test]
    fn mirror_invariance() {
        for t in [0.1, 0.5, 1.0, 1.4] {
            assert_abs_diff_eq!(
                fidelity_theory(&mirror(t)),
                fidelity_theory(&mirror(PI - t)),
                epsilon = 1e-15
            );
        }
    }

    proptest! {
        #[test]
        fn closed_form_matches_trace(c in 0.0f64..=1.0) {
            let m = MomentSet::mirror_symmetric(c);
            let f = fidelity_of(&build_chi(lambda_opt(c), 0.0).unwrap(), &build_r(&m));
            prop_assert!((f - fidelity_theory(&m)).abs() < 1e-12);
            prop_assert!(f > 0.75);
        }

        #[test]
        fn lambda_opt_range(c in 0.0f64..=1.0) {
            let l = lambda_opt(c);
            prop_assert!(l >= 0.5f64.sqrt() - 1e-15 && l <= 1.0 + 1e-15);
        }

        #[test]
        fn chi_is_cptp(l in 0.0f64..=1.0, p in 0.0f64..=1.0) {
            let chi = build_chi(l, p).unwrap();
            prop_assert!(chi.is_swap_symmetric(1e-15));
        }

        #[test]
        fn pointwise_matches_channel(theta in 0.0f64..PI, phi in 0.0f64..(2.0 * PI), l in 0.0f64..=1.0) {
            let psi = PolarizationQubit::new(theta, phi);
            let out = build_chi(l, 0.0).unwrap().apply(&psi.density()).unwrap();
            let expect = clone_fidelity_pointwise(theta, l);
            for k in [CloneIndex::First, CloneIndex::Second] {
                let f = fidelity(&partial_trace(&out, k).unwrap(), &psi).unwrap();
                prop_assert!((f - expect).abs() < 1e-10);
            }
        }

        #[test]
        fn phase_covariance(theta in 0.0f64..PI, phi in 0.0f64..(2.0 * PI), l in 0.0f64..=1.0) {
            let chi = build_chi(l, 0.0).unwrap();
            let f = |phi: f64| {
                let psi = PolarizationQubit::new(theta, phi);
                let out = chi.apply(&psi.density()).unwrap();
                fidelity(&partial_trace(&out, CloneIndex::First).unwrap(), &psi).unwrap()
            };
            prop_assert!((f(phi) - f(0.0)).abs() < 1e-12);
        }
    }
}
