//! Gegenbauer polynomials `C_n^(λ)` and the S³ angular eigenvalue check.

use crate::error::{Error, Result};

/// `C_n^(λ)(x)` by the three-term recurrence.
pub fn gegenbauer(n: u32, lambda: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * lambda * x;
    for k in 1..n {
        let k = f64::from(k);
        let next = (2.0 * x * (k + lambda) * cur - (k + 2.0 * lambda - 1.0) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Monomial coefficients of `C_n^(λ)`, lowest power first.
pub fn gegenbauer_coefficients(n: u32, lambda: f64) -> Vec<f64> {
    let mut prev = vec![1.0];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 2.0 * lambda];
    for k in 1..n {
        let k = f64::from(k);
        let mut next = vec![0.0; cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] += 2.0 * (k + lambda) * c / (k + 1.0);
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= (k + 2.0 * lambda - 1.0) * c / (k + 1.0);
        }
        prev = cur;
        cur = next;
    }
    cur
}

fn derivative(n: u32, lambda: f64, x: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        2.0 * lambda * gegenbauer(n - 1, lambda + 1.0, x)
    }
}

fn second_derivative(n: u32, lambda: f64, x: f64) -> f64 {
    if n < 2 {
        0.0
    } else {
        4.0 * lambda * (lambda + 1.0) * gegenbauer(n - 2, lambda + 2.0, x)
    }
}

/// Maximum residual of `F = C_n^(l+1)` in
/// `(1−x²)F'' − (2l+3)xF' + [I − l(l+2)]F = 0`, `I = (n+l+1)² − 1`,
/// over Chebyshev points, relative to the largest coefficient of `F`.
pub fn gegenbauer_residual(n: u32, l: u32, sample_count: usize) -> Result<f64> {
    if n > 30 || l > 30 {
        return Err(Error::domain(format!("n = {n}, l = {l} must both be <= 30")));
    }
    if sample_count < 10 {
        return Err(Error::domain("at least 10 sample points are required"));
    }
    let lambda = f64::from(l + 1);
    let l = f64::from(l);
    let eigenvalue = (f64::from(n) + l + 1.0).powi(2) - 1.0;
    let shift = eigenvalue - l * (l + 2.0);
    let scale = gegenbauer_coefficients(n, lambda)
        .iter()
        .fold(0.0_f64, |m, c| m.max(c.abs()));

    let count = sample_count as f64;
    let max_residual = (0..sample_count)
        .map(|k| {
            let x = (std::f64::consts::PI * (2.0 * k as f64 + 1.0) / (2.0 * count)).cos();
            let f = gegenbauer(n, lambda, x);
            let df = derivative(n, lambda, x);
            let d2f = second_derivative(n, lambda, x);
            ((1.0 - x * x) * d2f - (2.0 * l + 3.0) * x * df + shift * f).abs()
        })
        .fold(0.0_f64, f64::max);
    Ok(max_residual / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn horner(coefs: &[f64], x: f64) -> f64 {
        coefs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Applies the ODE operator to a monomial expansion, coefficient by
    /// coefficient, for an arbitrary linear coefficient `b·x` on `F'`.
    fn operator_on_coefficients(coefs: &[f64], b: f64, shift: f64) -> Vec<f64> {
        let mut out = vec![0.0; coefs.len()];
        for (k, &c) in coefs.iter().enumerate() {
            let kf = k as f64;
            // (1 − x²)·k(k−1)x^(k−2)
            if k >= 2 {
                out[k - 2] += c * kf * (kf - 1.0);
            }
            out[k] -= c * kf * (kf - 1.0);
            // −b·x·k·x^(k−1)
            out[k] -= b * c * kf;
            out[k] += shift * c;
        }
        out
    }

    #[test]
    fn low_order_closed_forms() {
        assert_eq!(gegenbauer(0, 2.5, 0.3), 1.0);
        assert_eq!(gegenbauer(1, 1.0, 0.3), 0.6);
        // C_2^(λ)(x) = 2λ(λ+1)x² − λ
        let (lambda, x) = (1.5, -0.4);
        assert_relative_eq!(
            gegenbauer(2, lambda, x),
            2.0 * lambda * (lambda + 1.0) * x * x - lambda,
            epsilon = 1e-15
        );
        // C_n^(1/2) are Legendre polynomials: P_3(x) = (5x³ − 3x)/2
        let x: f64 = 0.7;
        assert_relative_eq!(gegenbauer(3, 0.5, x), (5.0 * x.powi(3) - 3.0 * x) / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn coefficients_match_recurrence() {
        for n in 0..12 {
            for l in 0..6 {
                let lambda = f64::from(l + 1);
                let coefs = gegenbauer_coefficients(n, lambda);
                assert_eq!(coefs.len(), n as usize + 1);
                for x in [-0.9, -0.2, 0.0, 0.5, 0.99] {
                    assert_relative_eq!(
                        horner(&coefs, x),
                        gegenbauer(n, lambda, x),
                        max_relative = 1e-10,
                        epsilon = 1e-9
                    );
                }
            }
        }
    }

    #[test]
    fn residual_examples() {
        assert_eq!(gegenbauer_residual(0, 0, 16).unwrap(), 0.0);
        // F = 2x: −3x·2 + 3·2x = 0
        assert!(gegenbauer_residual(1, 0, 16).unwrap() < 1e-15);
        for n in 0..=10 {
            for l in 0..=10 {
                assert!(gegenbauer_residual(n, l, 64).unwrap() <= 1e-10, "n={n} l={l}");
            }
        }
        assert!(gegenbauer_residual(31, 0, 16).is_err());
        assert!(gegenbauer_residual(3, 3, 9).is_err());
    }

    #[test]
    fn eigenvalue_is_exact_on_coefficients() {
        // independent route: apply the operator to the monomial expansion
        for n in 0..=8u32 {
            for l in 0..=5u32 {
                let lambda = f64::from(l + 1);
                let lf = f64::from(l);
                let shift = (f64::from(n) + lf + 1.0).powi(2) - 1.0 - lf * (lf + 2.0);
                let coefs = gegenbauer_coefficients(n, lambda);
                let scale = coefs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
                let image = operator_on_coefficients(&coefs, 2.0 * lf + 3.0, shift);
                for c in image {
                    assert!(c.abs() / scale < 1e-12);
                }
            }
        }
    }

    #[test]
    fn printed_first_derivative_coefficient_is_not_the_gegenbauer_operator() {
        // with (2x+1)x in front of F' the n=1, l=0 residual is −4x² + 4x
        let coefs = gegenbauer_coefficients(1, 1.0);
        let x = 0.5;
        let f = horner(&coefs, x);
        let df = 2.0;
        let residual = -(2.0 * x + 1.0) * x * df + 3.0 * f;
        assert_relative_eq!(residual, -4.0 * x * x + 4.0 * x);
        assert!(residual.abs() > 0.5);
    }
}
