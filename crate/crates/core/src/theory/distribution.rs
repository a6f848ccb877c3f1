use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::quadrature::{gauss_legendre, periodic_trapezoid};
use crate::quantum::PolarizationQubit;
use crate::{Error, Result};

/// Number of polar nodes used to discretize the uniform sphere.
pub const UNIFORM_THETA_NODES: usize = 128;
/// Number of azimuthal nodes used for phase-uniform rings.
pub const PHASE_NODES: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedSample {
    pub theta: f64,
    pub phi: f64,
    pub weight: f64,
}

/// A priori distribution `g(θ, φ)` of the states fed to the cloner.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum QubitDistribution {
    /// A single known state.
    Point { theta: f64, phi: f64 },
    /// Latitudes `θ` and `π − θ` with weight ½ each and uniform phase.
    MirrorPair { theta: f64 },
    /// One latitude with uniform phase. `hemisphere_known` only matters to
    /// the optical implementation, which then picks the ancilla
    /// deterministically.
    Latitude { theta: f64, hemisphere_known: bool },
    UniformSphere,
    /// Explicit weighted list, normalized on construction.
    WeightedSamples { samples: Vec<WeightedSample> },
}

/// Distribution averages `s_i^j = ⟨sin^j(θ/i)⟩`, `c_i^j = ⟨cos^j(θ/i)⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSet {
    pub s1_2: f64,
    pub c1_2: f64,
    pub c2_2: f64,
    pub c2_4: f64,
    pub s2_2: f64,
    pub s2_4: f64,
}

impl MomentSet {
    /// Moments of a single latitude.
    pub fn at(theta: f64) -> Self {
        let (s1, c1) = theta.sin_cos();
        let (s2, c2) = (theta / 2.0).sin_cos();
        Self {
            s1_2: s1 * s1,
            c1_2: c1 * c1,
            c2_2: c2 * c2,
            c2_4: c2.powi(4),
            s2_2: s2 * s2,
            s2_4: s2.powi(4),
        }
    }

    /// Weighted average of latitude moments; weights must sum to one.
    pub fn average<I: IntoIterator<Item = (f64, f64)>>(thetas: I) -> Self {
        thetas.into_iter().fold(Self::zero(), |acc, (theta, w)| {
            let m = Self::at(theta);
            Self {
                s1_2: acc.s1_2 + w * m.s1_2,
                c1_2: acc.c1_2 + w * m.c1_2,
                c2_2: acc.c2_2 + w * m.c2_2,
                c2_4: acc.c2_4 + w * m.c2_4,
                s2_2: acc.s2_2 + w * m.s2_2,
                s2_4: acc.s2_4 + w * m.s2_4,
            }
        })
    }

    fn zero() -> Self {
        Self {
            s1_2: 0.0,
            c1_2: 0.0,
            c2_2: 0.0,
            c2_4: 0.0,
            s2_2: 0.0,
            s2_4: 0.0,
        }
    }

    /// Moments of the mirror-symmetric family with `⟨cos²θ⟩ = c1_2`.
    ///
    /// Uses `cos⁴(θ/2) + sin⁴(θ/2) = (1 + cos²θ)/2`, so the result depends
    /// on θ only through `cos²θ`.
    pub fn mirror_symmetric(c1_2: f64) -> Self {
        let c2_4 = (1.0 + c1_2) / 4.0;
        Self {
            s1_2: 1.0 - c1_2,
            c1_2,
            c2_2: 0.5,
            c2_4,
            s2_2: 0.5,
            s2_4: c2_4,
        }
    }
}

/// One ring of constant θ with its share of the total weight.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Ring {
    pub theta: f64,
    pub weight: f64,
    pub phase: PhaseProfile,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum PhaseProfile {
    Uniform,
    /// `(φ, w)` with weights summing to one.
    Discrete(Vec<(f64, f64)>),
}

impl QubitDistribution {
    /// Validates a sample list and normalizes its weights.
    pub fn weighted_samples(samples: Vec<WeightedSample>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidDistribution("empty sample list".into()));
        }
        let mut total = 0.0;
        for s in &samples {
            if !(s.weight >= 0.0) || !s.weight.is_finite() {
                return Err(Error::InvalidDistribution(format!(
                    "weight {} is not a nonnegative number",
                    s.weight
                )));
            }
            check_theta(s.theta)?;
            total += s.weight;
        }
        if total <= 0.0 {
            return Err(Error::InvalidDistribution("weights sum to zero".into()));
        }
        let samples = samples
            .into_iter()
            .map(|s| WeightedSample {
                weight: s.weight / total,
                ..s
            })
            .collect();
        Ok(Self::WeightedSamples { samples })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Point { theta, .. }
            | Self::MirrorPair { theta }
            | Self::Latitude { theta, .. } => check_theta(*theta),
            Self::UniformSphere => Ok(()),
            Self::WeightedSamples { samples } => {
                if samples.is_empty() {
                    return Err(Error::InvalidDistribution("empty sample list".into()));
                }
                let total: f64 = samples.iter().map(|s| s.weight).sum();
                if (total - 1.0).abs() > 1e-12 || samples.iter().any(|s| s.weight < 0.0) {
                    return Err(Error::InvalidDistribution(
                        "weights must be nonnegative and sum to one".into(),
                    ));
                }
                samples.iter().try_for_each(|s| check_theta(s.theta))
            }
        }
    }

    /// Whether the distribution is invariant under rotations about the
    /// z axis, which is what the moment form of `R` assumes.
    pub fn is_phase_covariant(&self) -> bool {
        match self {
            Self::Point { theta, .. } => theta.sin().abs() < 1e-12,
            Self::WeightedSamples { .. } => false,
            _ => true,
        }
    }

    pub fn moments(&self) -> Result<MomentSet> {
        self.validate()?;
        Ok(match self {
            Self::Point { theta, .. } | Self::Latitude { theta, .. } => MomentSet::at(*theta),
            Self::MirrorPair { theta } => {
                let c = theta.cos();
                MomentSet::mirror_symmetric(c * c)
            }
            Self::UniformSphere => MomentSet {
                s1_2: 2.0 / 3.0,
                c1_2: 1.0 / 3.0,
                c2_2: 0.5,
                c2_4: 1.0 / 3.0,
                s2_2: 0.5,
                s2_4: 1.0 / 3.0,
            },
            Self::WeightedSamples { samples } => {
                MomentSet::average(samples.iter().map(|s| (s.theta, s.weight)))
            }
        })
    }

    pub(crate) fn rings(&self) -> Result<Vec<Ring>> {
        self.validate()?;
        Ok(match self {
            Self::Point { theta, phi } => vec![Ring {
                theta: *theta,
                weight: 1.0,
                phase: PhaseProfile::Discrete(vec![(*phi, 1.0)]),
            }],
            Self::MirrorPair { theta } => vec![
                Ring {
                    theta: *theta,
                    weight: 0.5,
                    phase: PhaseProfile::Uniform,
                },
                Ring {
                    theta: PI - theta,
                    weight: 0.5,
                    phase: PhaseProfile::Uniform,
                },
            ],
            Self::Latitude { theta, .. } => vec![Ring {
                theta: *theta,
                weight: 1.0,
                phase: PhaseProfile::Uniform,
            }],
            Self::UniformSphere => gauss_legendre(UNIFORM_THETA_NODES)
                .into_iter()
                .map(|(u, w)| Ring {
                    theta: u.acos(),
                    weight: w / 2.0,
                    phase: PhaseProfile::Uniform,
                })
                .collect(),
            Self::WeightedSamples { samples } => {
                let mut rings: Vec<Ring> = Vec::new();
                for s in samples {
                    match rings.iter_mut().find(|r| (r.theta - s.theta).abs() < 1e-9) {
                        Some(r) => {
                            r.weight += s.weight;
                            if let PhaseProfile::Discrete(v) = &mut r.phase {
                                v.push((s.phi, s.weight));
                            }
                        }
                        None => rings.push(Ring {
                            theta: s.theta,
                            weight: s.weight,
                            phase: PhaseProfile::Discrete(vec![(s.phi, s.weight)]),
                        }),
                    }
                }
                for r in &mut rings {
                    let w = r.weight;
                    if let PhaseProfile::Discrete(v) = &mut r.phase {
                        if w > 0.0 {
                            v.iter_mut().for_each(|p| p.1 /= w);
                        }
                    }
                }
                rings
            }
        })
    }

    /// Discrete nodes `(state, weight)` reproducing distribution averages.
    ///
    /// Phase-uniform rings get `n_phi` equally spaced phases, which is exact
    /// for trigonometric polynomials of degree below `n_phi`. The uniform
    /// sphere uses Gauss–Legendre nodes in `cos θ`.
    pub fn nodes(&self, n_phi: usize) -> Result<Vec<(PolarizationQubit, f64)>> {
        let phases = periodic_trapezoid(n_phi.max(1));
        let mut out = Vec::new();
        for ring in self.rings()? {
            match &ring.phase {
                PhaseProfile::Uniform => {
                    for (phi, w) in &phases {
                        out.push((PolarizationQubit::new(ring.theta, *phi), ring.weight * w));
                    }
                }
                PhaseProfile::Discrete(v) => {
                    for (phi, w) in v {
                        out.push((PolarizationQubit::new(ring.theta, *phi), ring.weight * w));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Moments of a distribution.
pub fn moments(g: &QubitDistribution) -> Result<MomentSet> {
    g.moments()
}

fn check_theta(theta: f64) -> Result<()> {
    if (0.0..=PI).contains(&theta) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "theta",
            value: theta,
            range: "[0, π]",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn check_invariants(m: &MomentSet) {
        assert_abs_diff_eq!(m.c2_2 + m.s2_2, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.s1_2 + m.c1_2, 1.0, epsilon = 1e-12);
        for v in [m.s1_2, m.c1_2, m.c2_2, m.c2_4, m.s2_2, m.s2_4] {
            assert!((0.0..=1.0 + 1e-15).contains(&v));
        }
    }

    #[test]
    fn mirror_pair_at_equator() {
        let m = QubitDistribution::MirrorPair { theta: PI / 2.0 }.moments().unwrap();
        assert_abs_diff_eq!(m.s1_2, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.c1_2, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.c2_4, 0.25, epsilon = 1e-15);
        check_invariants(&m);
    }

    #[test]
    fn uniform_sphere_matches_quadrature() {
        let m = QubitDistribution::UniformSphere.moments().unwrap();
        assert_abs_diff_eq!(m.c1_2, 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.c2_4, 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.c2_2, 0.5, epsilon = 1e-15);
        check_invariants(&m);

        // Independent route: ∫ f(θ) sinθ/2 dθ by composite Simpson.
        let n = 2000;
        let h = PI / n as f64;
        let simpson = |f: &dyn Fn(f64) -> f64| {
            let mut acc = f(0.0) + f(PI);
            for k in 1..n {
                let x = k as f64 * h;
                acc += if k % 2 == 1 { 4.0 } else { 2.0 } * f(x);
            }
            acc * h / 3.0
        };
        let c12 = simpson(&|t: f64| t.cos().powi(2) * t.sin() / 2.0);
        let c24 = simpson(&|t: f64| (t / 2.0).cos().powi(4) * t.sin() / 2.0);
        assert_abs_diff_eq!(c12, m.c1_2, epsilon = 1e-10);
        assert_abs_diff_eq!(c24, m.c2_4, epsilon = 1e-10);

        // The discretized rings reproduce the same averages.
        let rings = QubitDistribution::UniformSphere.rings().unwrap();
        let avg = MomentSet::average(rings.iter().map(|r| (r.theta, r.weight)));
        assert_abs_diff_eq!(avg.c2_4, m.c2_4, epsilon = 1e-14);
        assert_abs_diff_eq!(avg.s1_2, m.s1_2, epsilon = 1e-14);
    }

    #[test]
    fn pole_point() {
        let m = QubitDistribution::Point { theta: 0.0, phi: 0.0 }.moments().unwrap();
        assert_eq!(m.c2_4, 1.0);
        assert_eq!(m.s1_2, 0.0);
    }

    #[test]
    fn mirror_pair_equals_explicit_average() {
        for &t in &[0.1, 0.7, 1.3, 2.9] {
            let m = QubitDistribution::MirrorPair { theta: t }.moments().unwrap();
            let direct = MomentSet::average([(t, 0.5), (PI - t, 0.5)]);
            assert_abs_diff_eq!(m.c2_4, direct.c2_4, epsilon = 1e-15);
            assert_abs_diff_eq!(m.s2_4, direct.s2_4, epsilon = 1e-15);
            assert_abs_diff_eq!(m.c1_2, direct.c1_2, epsilon = 1e-15);
            assert_abs_diff_eq!(m.c2_2, direct.c2_2, epsilon = 1e-15);
        }
    }

    #[test]
    fn weighted_samples_are_normalized() {
        let g = QubitDistribution::weighted_samples(vec![
            WeightedSample { theta: 0.0, phi: 0.0, weight: 3.0 },
            WeightedSample { theta: PI, phi: 0.0, weight: 1.0 },
        ])
        .unwrap();
        let m = g.moments().unwrap();
        assert_abs_diff_eq!(m.c2_2, 0.75, epsilon = 1e-15);
        check_invariants(&m);
    }

    #[test]
    fn weighted_samples_errors() {
        assert!(QubitDistribution::weighted_samples(vec![]).is_err());
        let neg = WeightedSample { theta: 0.3, phi: 0.0, weight: -1.0 };
        assert!(QubitDistribution::weighted_samples(vec![neg]).is_err());
        let zero = WeightedSample { theta: 0.3, phi: 0.0, weight: 0.0 };
        assert!(QubitDistribution::weighted_samples(vec![zero]).is_err());
        let off = WeightedSample { theta: 4.0, phi: 0.0, weight: 1.0 };
        assert!(QubitDistribution::weighted_samples(vec![off]).is_err());
    }

    #[test]
    fn node_weights_sum_to_one() {
        for g in [
            QubitDistribution::UniformSphere,
            QubitDistribution::MirrorPair { theta: 0.4 },
            QubitDistribution::Latitude { theta: 0.4, hemisphere_known: true },
            QubitDistribution::Point { theta: 0.4, phi: 1.0 },
        ] {
            let total: f64 = g.nodes(8).unwrap().iter().map(|n| n.1).sum();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
        }
    }
}
