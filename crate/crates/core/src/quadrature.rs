//! Small quadrature rules used for distribution averages.

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on [-1, 1].
///
/// Exact for polynomials of degree `2n - 1`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n > 0, "need at least one node");
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Chebyshev initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Equally spaced nodes on [0, 2π) with equal weights (periodic trapezoid).
pub fn periodic_trapezoid(n: usize) -> Vec<(f64, f64)> {
    let w = 1.0 / n as f64;
    (0..n).map(|k| (2.0 * PI * k as f64 / n as f64, w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let rule = gauss_legendre(5);
        let total: f64 = rule.iter().map(|(_, w)| w).sum();
        assert!((total - 2.0).abs() < 1e-14);
        // ∫ x^8 dx over [-1,1] = 2/9
        let x8: f64 = rule.iter().map(|(x, w)| w * x.powi(8)).sum();
        assert!((x8 - 2.0 / 9.0).abs() < 1e-14);
        let odd: f64 = rule.iter().map(|(x, w)| w * x.powi(7)).sum();
        assert!(odd.abs() < 1e-14);
    }

    #[test]
    fn trapezoid_kills_low_harmonics() {
        let rule = periodic_trapezoid(256);
        for n in 1..=4 {
            let s: f64 = rule.iter().map(|(p, w)| w * (n as f64 * p).cos()).sum();
            assert!(s.abs() < 1e-14);
        }
    }
}
