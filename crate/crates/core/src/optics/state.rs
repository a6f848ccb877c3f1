use nalgebra::{Matrix4, Vector2, Vector4};

use super::filters::FilterSettings;
use super::pdbs::PdbsParams;
use crate::C64;

/// Mode labels: spatial mode a (clone 1) and b (clone 2), each H or V.
pub const MODES: [&str; 4] = ["aH", "aV", "bH", "bV"];

/// Two photons in four modes, stored as the symmetric matrix `A` of
/// `Σ A_ij a†_i a†_j |0⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPhotonState {
    a: Matrix4<C64>,
}

impl TwoPhotonState {
    /// One photon with polarization `first` in mode a, one with `second` in b.
    pub fn product(first: &Vector2<C64>, second: &Vector2<C64>) -> Self {
        let zero = C64::new(0.0, 0.0);
        let u = Vector4::new(first[0], first[1], zero, zero);
        let v = Vector4::new(zero, zero, second[0], second[1]);
        let half = C64::new(0.5, 0.0);
        Self {
            a: (u * v.transpose() + v * u.transpose()) * half,
        }
    }

    /// Applies a single-photon mode transformation `a†_i → Σ_j M_ji a†_j`.
    pub fn transform(&self, m: &Matrix4<C64>) -> Self {
        Self {
            a: m * self.a * m.transpose(),
        }
    }

    /// Interference on the PDBS: transmission `√T`, reflection `i√(1 − T)`
    /// per polarization.
    pub fn through_pdbs(&self, pdbs: &PdbsParams) -> Self {
        self.transform(&pdbs_unitary(pdbs))
    }

    /// Amplitude filters `√τ` and V phases of both output modes.
    pub fn through_filters(&self, f: &FilterSettings) -> Self {
        let d = Matrix4::from_diagonal(&Vector4::new(
            C64::new(f.tau_1h.sqrt(), 0.0),
            C64::from_polar(f.tau_1v.sqrt(), f.phase_1),
            C64::new(f.tau_2h.sqrt(), 0.0),
            C64::from_polar(f.tau_2v.sqrt(), f.phase_2),
        ));
        self.transform(&d)
    }

    /// Amplitudes over `|2_0⟩, |1_0 1_1⟩, |1_0 1_2⟩, …, |2_3⟩` (pairs `i ≤ j`).
    pub fn fock_amplitudes(&self) -> [C64; 10] {
        let mut out = [C64::new(0.0, 0.0); 10];
        let mut k = 0;
        for i in 0..4 {
            for j in i..4 {
                out[k] = if i == j {
                    self.a[(i, i)] * std::f64::consts::SQRT_2
                } else {
                    self.a[(i, j)] * 2.0
                };
                k += 1;
            }
        }
        out
    }

    pub fn norm_sqr(&self) -> f64 {
        self.fock_amplitudes().iter().map(|c| c.norm_sqr()).sum()
    }

    /// Amplitudes with one photon in each spatial mode, ordered
    /// `HH, HV, VH, VV` (clone 1 ⊗ clone 2).
    pub fn coincidence_amplitudes(&self) -> [C64; 4] {
        let a = &self.a;
        [a[(0, 2)], a[(0, 3)], a[(1, 2)], a[(1, 3)]].map(|x| x * 2.0)
    }
}

pub(crate) fn pdbs_unitary(pdbs: &PdbsParams) -> Matrix4<C64> {
    let mut u = Matrix4::<C64>::zeros();
    for (pol, t) in [(0, pdbs.mu), (1, pdbs.nu)] {
        let (a, b) = (pol, 2 + pol);
        let tr = C64::new(t.sqrt(), 0.0);
        let rf = C64::new(0.0, (1.0 - t).sqrt());
        u[(a, a)] = tr;
        u[(b, b)] = tr;
        u[(a, b)] = rf;
        u[(b, a)] = rf;
    }
    u
}
