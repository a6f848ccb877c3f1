use std::f64::consts::FRAC_PI_2;

use nalgebra::SymmetricEigen;
use qclone::optics::{run_cloner, PdbsParams, Regime};
use qclone::quantum::{fidelity, partial_trace, CloneIndex, DensityMatrix, PolarizationQubit};
use qclone::tomography::{
    expected_counts, ml_reconstruct, ml_reconstruct_observed, projection_probabilities,
    simulate_counts, MlOptions,
};
use qclone::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn random_pure(rng: &mut ChaCha8Rng) -> DensityMatrix {
    let v: Vec<C64> = (0..4)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    DensityMatrix::from_ket(&v)
}

fn mpcc_equator_pair() -> (PolarizationQubit, DensityMatrix) {
    let q = PolarizationQubit::new(FRAC_PI_2, 0.3);
    let out = run_cloner(&q, &Regime::Mpcc { theta: FRAC_PI_2 }, &PdbsParams::ideal()).unwrap();
    (q, out.rho_pair.unwrap())
}

#[test]
fn noiseless_pure_states_are_recovered() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..5 {
        let rho = random_pure(&mut rng);
        let rec = expected_counts(&projection_probabilities(&rho).unwrap(), 10_000);
        let ml = ml_reconstruct(&rec).unwrap();
        let td = ml.rho.trace_distance(&rho);
        assert!(td < 1e-6, "trace distance {td:e} after {} iterations", ml.iterations);
    }
}

#[test]
fn iterates_stay_physical_and_likelihood_is_monotone() {
    let (_, rho) = mpcc_equator_pair();
    let rec = simulate_counts(&projection_probabilities(&rho).unwrap(), 10_000, 1);
    let mut worst_eig = f64::INFINITY;
    let mut worst_trace = 0.0f64;
    let ml = ml_reconstruct_observed(&rec, &MlOptions::default(), |_, r| {
        let h = (r + r.adjoint()) * C64::new(0.5, 0.0);
        worst_eig = worst_eig.min(SymmetricEigen::new(h).eigenvalues.min());
        worst_trace = worst_trace.max((r.trace().re - 1.0).abs());
    })
    .unwrap();
    assert!(worst_eig > -1e-10 && worst_trace < 1e-12);
    assert!(ml.log_likelihood.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn reconstruction_is_self_consistent() {
    let (_, rho) = mpcc_equator_pair();
    let first = ml_reconstruct(&simulate_counts(&projection_probabilities(&rho).unwrap(), 10_000, 4)).unwrap();
    let again = ml_reconstruct(&expected_counts(&projection_probabilities(&first.rho).unwrap(), 10_000)).unwrap();
    assert!(again.rho.trace_distance(&first.rho) < 1e-6);
}

#[test]
fn pipeline_fidelity_at_equator() {
    let (q, rho) = mpcc_equator_pair();
    let rec = simulate_counts(&projection_probabilities(&rho).unwrap(), 10_000, 1);
    let ml = ml_reconstruct(&rec).unwrap();
    for k in [CloneIndex::First, CloneIndex::Second] {
        let f = fidelity(&partial_trace(&ml.rho, k).unwrap(), &q).unwrap();
        assert!((f - 0.8536).abs() < 0.01, "{f}");
    }
}

#[test]
fn mixed_state_counts_are_within_four_sigma() {
    let rec = projection_probabilities(&DensityMatrix::maximally_mixed(4)).unwrap();
    let mut inside = 0;
    let mut total = 0;
    for seed in 0..100 {
        for c in simulate_counts(&rec, 10_000, seed).counts {
            total += 1;
            if (c - 2500.0).abs() <= 4.0 * 50.0 {
                inside += 1;
            }
        }
    }
    assert!(inside as f64 / total as f64 >= 0.99);
}
