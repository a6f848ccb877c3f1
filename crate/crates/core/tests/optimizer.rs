use std::f64::consts::{FRAC_PI_2, PI};

use qclone::optimizer::{certify, optimize_cloner, project_feasible, OptimizerOptions};
use qclone::quantum::CloningMap;
use qclone::theory::{build_r, fidelity_of, fidelity_theory, FidelityOperator, QubitDistribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn r_of(g: QubitDistribution) -> FidelityOperator {
    build_r(&g.moments().unwrap())
}

/// Phase-covariant cloner for a known latitude (isometric form).
fn pcc_fidelity(theta: f64) -> f64 {
    let c2 = (theta / 2.0).cos().powi(2);
    let s2 = 1.0 - c2;
    if theta <= FRAC_PI_2 {
        c2 * (c2 + s2 / 2.0) + s2 * s2 / 2.0 + 2f64.sqrt() * c2 * s2
    } else {
        s2 * (s2 + c2 / 2.0) + c2 * c2 / 2.0 + 2f64.sqrt() * c2 * s2
    }
}

#[test]
fn universal_optimum() {
    let r = r_of(QubitDistribution::UniformSphere);
    let res = optimize_cloner(&r, false).unwrap();
    assert!(res.converged);
    assert!((res.f_star - 5.0 / 6.0).abs() < 1e-8, "{}", res.f_star);
    assert!(certify(&res, &r).unwrap().optimal);
}

#[test]
fn known_latitude_matches_isometric_cloner() {
    for theta in [PI / 3.0, 0.2, 2.5] {
        let r = r_of(QubitDistribution::Latitude { theta, hemisphere_known: true });
        let res = optimize_cloner(&r, true).unwrap();
        assert!(res.converged);
        assert!((res.f_star - pcc_fidelity(theta)).abs() < 1e-7, "θ = {theta}: {}", res.f_star);
    }
    let r = r_of(QubitDistribution::Latitude { theta: PI / 3.0, hemisphere_known: true });
    let f = optimize_cloner(&r, true).unwrap().f_star;
    assert!((f - 0.953).abs() < 5e-4);
}

#[test]
fn mirror_pair_pi_over_five() {
    let g = QubitDistribution::MirrorPair { theta: PI / 5.0 };
    let res = optimize_cloner(&r_of(g.clone()), false).unwrap();
    let closed = fidelity_theory(&g.moments().unwrap());
    assert!((res.f_star - closed).abs() < 1e-7);
    assert!((res.f_star - 0.867819).abs() < 1e-6, "{}", res.f_star);
}

#[test]
fn equator_certificate_has_zero_delta4() {
    let r = r_of(QubitDistribution::MirrorPair { theta: FRAC_PI_2 });
    let rep = certify(&optimize_cloner(&r, false).unwrap(), &r).unwrap();
    assert!(rep.optimal);
    assert!(rep.delta_eigenvalues[3].abs() < 1e-8);
}

#[test]
fn perturbed_optimum_fails_certificate() {
    let r = r_of(QubitDistribution::UniformSphere);
    let mut res = optimize_cloner(&r, false).unwrap();
    let mut m = *res.chi_star.matrix();
    m[(0, 0)] += 0.01;
    let m = project_feasible(&m, false, &OptimizerOptions::default());
    res.chi_star = CloningMap::with_tolerance(m, 1e-8).unwrap();
    assert!(!certify(&res, &r).unwrap().optimal);
}

#[test]
fn closed_form_equivalence_on_grid() {
    for k in 0..50 {
        let theta = PI * k as f64 / 49.0;
        let g = QubitDistribution::MirrorPair { theta };
        let r = r_of(g.clone());
        let res = optimize_cloner(&r, false).unwrap();
        assert!(res.converged);
        let closed = fidelity_theory(&g.moments().unwrap());
        assert!((res.f_star - closed).abs() < 1e-6, "θ = {theta}");
        let sym = optimize_cloner(&r, true).unwrap();
        assert!((sym.f_star - res.f_star).abs() < 1e-6);
    }
}

#[test]
fn optimum_dominates_random_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let r = r_of(QubitDistribution::MirrorPair { theta: 0.8 });
    let f_star = optimize_cloner(&r, false).unwrap().f_star;
    for _ in 0..100 {
        let chi = CloningMap::random(&mut rng);
        assert!(f_star >= fidelity_of(&chi, &r) - 1e-8);
    }
}
