//! Floating-point root approximation. Only used to propose candidates; every
//! root the crate reports is confirmed by exact evaluation.

use alloc::vec::Vec;

use num_complex::Complex64;

const MAX_ITERATIONS: usize = 500;

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of a monic polynomial (ascending coefficients) by the
/// Aberth–Ehrlich simultaneous iteration.
pub(crate) fn approximate_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return alloc::vec![Complex64::new(-coeffs[0] / coeffs[1], 0.0)];
    }
    // Fujiwara-style radius for the starting circle
    let radius = (0..n)
        .map(|k| libm::pow(libm::fabs(coeffs[k] / coeffs[n]), 1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * core::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();

    for _ in 0..MAX_ITERATIONS {
        let mut largest_step = 0.0f64;
        for k in 0..n {
            let (p, dp) = horner(coeffs, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let newton = if dp.norm() == 0.0 { Complex64::new(1e-8, 1e-8) } else { p / dp };
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d.norm() == 0.0 { Complex64::new(0.0, 0.0) } else { d.inv() }
                })
                .sum();
            let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            z[k] -= step;
            largest_step = largest_step.max(step.norm() / (1.0 + z[k].norm()));
        }
        if largest_step < 1e-15 {
            break;
        }
    }
    z
}
