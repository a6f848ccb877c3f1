//! Two-photon polarization tomography: 36 product projections, Poisson
//! counting and maximum-likelihood reconstruction.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{DMatrix, Matrix4, Vector2, Vector4};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::quantum::DensityMatrix;
use crate::{Error, Result, C64};

const PROB_FLOOR: f64 = 1e-12;
const MIN_DILUTION: f64 = 1e-14;
const MOMENTUM_HALVINGS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Projector {
    H,
    V,
    D,
    A,
    R,
    L,
}

impl Projector {
    pub const ALL: [Projector; 6] = [Self::H, Self::V, Self::D, Self::A, Self::R, Self::L];

    pub fn ket(self) -> Vector2<C64> {
        let s = FRAC_1_SQRT_2;
        let (a, b) = match self {
            Self::H => (C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
            Self::V => (C64::new(0.0, 0.0), C64::new(1.0, 0.0)),
            Self::D => (C64::new(s, 0.0), C64::new(s, 0.0)),
            Self::A => (C64::new(s, 0.0), C64::new(-s, 0.0)),
            Self::R => (C64::new(s, 0.0), C64::new(0.0, s)),
            Self::L => (C64::new(s, 0.0), C64::new(0.0, -s)),
        };
        Vector2::new(a, b)
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::H => "H",
            Self::V => "V",
            Self::D => "D",
            Self::A => "A",
            Self::R => "R",
            Self::L => "L",
        }
    }
}

/// All 36 settings in row-major order (clone 1 outer).
pub fn settings() -> Vec<(Projector, Projector)> {
    Projector::ALL
        .iter()
        .flat_map(|&a| Projector::ALL.iter().map(move |&b| (a, b)))
        .collect()
}

fn pair_ket(a: Projector, b: Projector) -> Vector4<C64> {
    let (x, y) = (a.ket(), b.ket());
    Vector4::new(x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1])
}

fn pair_projector(a: Projector, b: Projector) -> Matrix4<C64> {
    let k = pair_ket(a, b);
    k * k.adjoint()
}

/// Expected probabilities and (possibly simulated) counts.
///
/// Counts are stored as reals so that noiseless data `N·p_j` can be
/// represented exactly; sampled counts are whole numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TomographyRecord {
    pub settings: Vec<(Projector, Projector)>,
    pub probabilities: Vec<f64>,
    pub counts: Vec<f64>,
    pub total_pairs: u64,
}

pub fn projection_probabilities(rho_pair: &DensityMatrix) -> Result<TomographyRecord> {
    if rho_pair.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho_pair.dim(),
        });
    }
    let settings = settings();
    let probabilities = settings
        .iter()
        .map(|&(a, b)| {
            rho_pair
                .expectation(pair_ket(a, b).as_slice())
                .expect("dimension checked")
                .max(0.0)
        })
        .collect();
    Ok(TomographyRecord {
        settings,
        probabilities,
        counts: Vec::new(),
        total_pairs: 0,
    })
}

/// Independent Poisson counts with means `n_per_setting·p_j`.
pub fn simulate_counts(record: &TomographyRecord, n_per_setting: u64, seed: u64) -> TomographyRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let counts = record
        .probabilities
        .iter()
        .map(|&p| crate::optics::poisson_count(n_per_setting as f64 * p, &mut rng) as f64)
        .collect();
    TomographyRecord {
        counts,
        total_pairs: n_per_setting,
        ..record.clone()
    }
}

/// Noise-free data `counts = n_per_setting·p_j`.
pub fn expected_counts(record: &TomographyRecord, n_per_setting: u64) -> TomographyRecord {
    TomographyRecord {
        counts: record
            .probabilities
            .iter()
            .map(|p| p * n_per_setting as f64)
            .collect(),
        total_pairs: n_per_setting,
        ..record.clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MlOptions {
    pub max_iterations: usize,
    /// Stop once successive iterates are this close in trace distance.
    pub tolerance: f64,
}

impl Default for MlOptions {
    fn default() -> Self {
        Self {
            max_iterations: 10_000,
            tolerance: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MlReconstruction {
    pub rho: DensityMatrix,
    pub iterations: usize,
    pub converged: bool,
    /// `Σ f_j ln p_j(ρ)` of the starting point and after every iteration.
    pub log_likelihood: Vec<f64>,
}

pub fn ml_reconstruct(record: &TomographyRecord) -> Result<MlReconstruction> {
    ml_reconstruct_with(record, &MlOptions::default())
}

/// Fixed-point `ρ ← N[R(ρ) ρ R(ρ)]` starting from `I/4`.
///
/// The plain step converges like `1/k` towards rank-deficient estimates, so
/// each update `y` is extrapolated along `y − ρ_prev` with Nesterov weight
/// `(k−1)/(k+2)`, clipped to its positive part. The extrapolation is kept
/// only if it does not lower the likelihood; otherwise the weight is halved
/// and the momentum streak shortened. A plain step that would lower the
/// likelihood is replaced by the diluted update `N[(I + εR̂) ρ (I + εR̂)]`
/// with `R̂ = R/Tr(Rρ)`, so the trace is monotone.
pub fn ml_reconstruct_with(record: &TomographyRecord, opts: &MlOptions) -> Result<MlReconstruction> {
    ml_reconstruct_observed(record, opts, |_, _| {})
}

/// As [`ml_reconstruct_with`], calling `observe(k, ρ_k)` on every iterate.
pub fn ml_reconstruct_observed<F: FnMut(usize, &Matrix4<C64>)>(
    record: &TomographyRecord,
    opts: &MlOptions,
    mut observe: F,
) -> Result<MlReconstruction> {
    if record.counts.len() != record.settings.len() {
        return Err(Error::DimensionMismatch {
            expected: record.settings.len(),
            found: record.counts.len(),
        });
    }
    if record.counts.iter().any(|c| !(c.is_finite() && *c >= 0.0)) || record.counts.iter().sum::<f64>() <= 0.0 {
        return Err(Error::NoCounts);
    }
    let data: Vec<(Matrix4<C64>, f64)> = record
        .settings
        .iter()
        .zip(&record.counts)
        .map(|(&(a, b), &f)| (pair_projector(a, b), f))
        .collect();

    let mut rho = Matrix4::<C64>::identity() / C64::new(4.0, 0.0);
    let mut prev = rho;
    let mut ll = log_likelihood(&data, &rho);
    let mut trace = vec![ll];
    let mut converged = false;
    let mut iterations = 0;
    let mut streak = 1usize;
    while iterations < opts.max_iterations {
        iterations += 1;
        let r = data.iter().fold(Matrix4::zeros(), |acc, (pi, f)| {
            acc + pi * C64::new(f / prob(pi, &rho).max(PROB_FLOOR), 0.0)
        });
        let mut y = normalize(&(r * rho * r));
        let mut y_gain = likelihood_gain(&data, &rho, &y);
        if y_gain < 0.0 {
            let r_hat = r / (r * rho).trace();
            let mut eps = 1.0;
            while y_gain < 0.0 && eps >= MIN_DILUTION {
                eps /= 2.0;
                let g = Matrix4::identity() + r_hat * C64::new(eps, 0.0);
                y = normalize(&(g * rho * g));
                y_gain = likelihood_gain(&data, &rho, &y);
            }
            if y_gain < 0.0 {
                // No ascent direction left at working precision.
                converged = true;
                trace.push(ll);
                break;
            }
            streak = (streak / 2).max(1);
        }

        let (mut next, mut gain) = (y, y_gain);
        let mut beta = (streak as f64 - 1.0) / (streak as f64 + 2.0);
        let mut accepted = false;
        if beta > 0.0 {
            for _ in 0..MOMENTUM_HALVINGS {
                let z = psd_part(&(y + (y - prev) * C64::new(beta, 0.0)));
                let z_gain = likelihood_gain(&data, &y, &z);
                if z_gain >= 0.0 {
                    (next, gain) = (z, y_gain + z_gain);
                    accepted = true;
                    break;
                }
                beta /= 2.0;
            }
        }
        streak = if accepted || beta == 0.0 { streak + 1 } else { (streak / 2).max(1) };

        let step = trace_distance(&next, &rho);
        prev = rho;
        rho = next;
        observe(iterations, &rho);
        ll += gain;
        trace.push(ll);
        // After a rejected extrapolation the plain step is short without the
        // iterate being settled, so only momentum steps count towards the stop.
        if step < opts.tolerance && accepted {
            converged = true;
            break;
        }
    }
    let m = DMatrix::from_fn(4, 4, |i, j| rho[(i, j)]);
    Ok(MlReconstruction {
        rho: DensityMatrix::new(m).map_err(|e| Error::InvalidDensityMatrix(e.to_string()))?,
        iterations,
        converged,
        log_likelihood: trace,
    })
}

/// Positive part of a Hermitian matrix, renormalized to unit trace.
fn psd_part(m: &Matrix4<C64>) -> Matrix4<C64> {
    let eig = nalgebra::SymmetricEigen::new((m + m.adjoint()) * C64::new(0.5, 0.0));
    let d = Matrix4::from_diagonal(&eig.eigenvalues.map(|v| C64::new(v.max(0.0), 0.0)));
    normalize(&(eig.eigenvectors * d * eig.eigenvectors.adjoint()))
}

fn prob(pi: &Matrix4<C64>, rho: &Matrix4<C64>) -> f64 {
    (pi * rho).trace().re
}

fn log_likelihood(data: &[(Matrix4<C64>, f64)], rho: &Matrix4<C64>) -> f64 {
    data.iter()
        .filter(|(_, f)| *f > 0.0)
        .map(|(pi, f)| f * prob(pi, rho).max(f64::MIN_POSITIVE).ln())
        .sum()
}

/// `L(b) − L(a)` summed term by term, accurate where `L` itself has
/// cancelled to rounding.
fn likelihood_gain(data: &[(Matrix4<C64>, f64)], a: &Matrix4<C64>, b: &Matrix4<C64>) -> f64 {
    data.iter()
        .filter(|(_, f)| *f > 0.0)
        .map(|(pi, f)| {
            let pa = prob(pi, a).max(f64::MIN_POSITIVE);
            let pb = prob(pi, b).max(f64::MIN_POSITIVE);
            f * ((pb - pa) / pa).ln_1p()
        })
        .sum()
}

fn normalize(m: &Matrix4<C64>) -> Matrix4<C64> {
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let tr = h.trace().re;
    h / C64::new(tr, 0.0)
}

fn trace_distance(a: &Matrix4<C64>, b: &Matrix4<C64>) -> f64 {
    let d = a - b;
    let h = (d + d.adjoint()) * C64::new(0.5, 0.0);
    nalgebra::SymmetricEigen::new(h).eigenvalues.iter().map(|e| e.abs()).sum::<f64>() / 2.0
}
