//! Simultaneous complex root finding (Aberth–Ehrlich iteration).

use num_complex::Complex64;

/// Horner evaluation of `p` and `p'` at `z`; coefficients ascending.
pub fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// `|p(z)| / sum |a_i| |z|^i`.
pub fn relative_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let (p, _) = eval_with_derivative(coeffs, z);
    let r = z.norm();
    let scale = coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm());
    if scale == 0.0 {
        0.0
    } else {
        p.norm() / scale
    }
}

#[derive(Clone, Debug)]
pub struct AberthOutcome {
    pub roots: Vec<Complex64>,
    pub converged: Vec<bool>,
    pub iterations: usize,
}

/// All roots of a polynomial of degree >= 1 given by ascending coefficients.
/// Initial guesses lie on a circle whose radius is the geometric mean of the
/// root moduli.
pub fn aberth(coeffs: &[Complex64], max_iterations: usize, tolerance: f64) -> AberthOutcome {
    let n = coeffs.len() - 1;
    assert!(n >= 1 && coeffs[n].norm() > 0.0, "nonconstant polynomial expected");
    let lead = coeffs[n];
    let radius = if coeffs[0].norm() > 0.0 { (coeffs[0] / lead).norm().powf(1.0 / n as f64) } else { 1.0 };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();
    let mut converged = vec![false; n];
    let mut iterations = 0;
    while iterations < max_iterations && converged.iter().any(|c| !c) {
        iterations += 1;
        for k in 0..n {
            if converged[k] {
                continue;
            }
            let (p, dp) = eval_with_derivative(coeffs, z[k]);
            if p.norm() == 0.0 {
                converged[k] = true;
                continue;
            }
            let w = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = w / (Complex64::new(1.0, 0.0) - w * s);
            if !step.is_finite() {
                continue;
            }
            z[k] -= step;
            if step.norm() <= tolerance * z[k].norm().max(1.0) {
                converged[k] = true;
            }
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval_with_derivative(coeffs, *zk);
            let step = p / dp;
            if step.is_finite() {
                *zk -= step;
            }
        }
    }
    AberthOutcome { roots: z, converged, iterations }
}
