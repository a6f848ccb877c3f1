use super::MomentSet;
use crate::quantum::Matrix8;

/// Operator `R` with `F = Tr(Rχ)` for phase-covariant input ensembles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityOperator {
    r: Matrix8,
}

impl FidelityOperator {
    /// Wraps an arbitrary real symmetric 8×8 operator.
    pub fn from_matrix(r: Matrix8) -> Self {
        Self { r }
    }

    pub fn matrix(&self) -> &Matrix8 {
        &self.r
    }

    pub fn r11(&self) -> f64 {
        self.r[(0, 0)]
    }

    pub fn r22(&self) -> f64 {
        self.r[(1, 1)]
    }

    pub fn r16(&self) -> f64 {
        self.r[(0, 5)]
    }

    /// `R̄ = sqrt((R₁₁ − R₂₂)² + 8R₁₆²)`.
    pub fn r_bar(&self) -> f64 {
        let d = self.r11() - self.r22();
        (d * d + 8.0 * self.r16() * self.r16()).sqrt()
    }
}

pub fn build_r(m: &MomentSet) -> FidelityOperator {
    let diag = [
        8.0 * m.c2_4,
        4.0 * m.c2_2,
        4.0 * m.c2_2,
        2.0 * m.s1_2,
        2.0 * m.s1_2,
        4.0 * m.s2_2,
        4.0 * m.s2_2,
        8.0 * m.s2_4,
    ];
    let mut r = Matrix8::from_diagonal(&diag.into());
    for (i, j) in [(0, 5), (0, 6), (1, 7), (2, 7)] {
        r[(i, j)] = m.s1_2;
        r[(j, i)] = m.s1_2;
    }
    FidelityOperator { r: r / 8.0 }
}
