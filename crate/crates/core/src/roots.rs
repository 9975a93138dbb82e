//! Roots of complex polynomials via companion-matrix eigenvalues, Newton-polished.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use crate::oracle::horner;

/// Drops trailing coefficients at or below `floor`.
pub fn trim(coeffs: &[Complex64], floor: f64) -> Vec<Complex64> {
    let mut out = coeffs.to_vec();
    while out.len() > 1 && out.last().map_or(false, |c| c.norm() <= floor) {
        out.pop();
    }
    out
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs.iter().enumerate().skip(1).map(|(j, &c)| c * j as f64).collect()
}

/// All roots of `Σ c_j z^j` (ascending coefficients). The leading coefficient must be
/// non-zero; an empty vector is returned for constants.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len().saturating_sub(1);
    if d == 0 {
        return Vec::new();
    }
    let lead = coeffs[d];
    let roots: Vec<Complex64> = if d == 1 {
        vec![-coeffs[0] / lead]
    } else {
        let mut companion = DMatrix::<Complex64>::zeros(d, d);
        for i in 1..d {
            companion[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        for i in 0..d {
            companion[(i, d - 1)] = -coeffs[i] / lead;
        }
        match Schur::new(companion).eigenvalues() {
            Some(ev) => ev.iter().copied().collect(),
            None => return Vec::new(),
        }
    };
    let dp = derivative(coeffs);
    roots
        .into_iter()
        .map(|mut z| {
            for _ in 0..8 {
                let p = horner(coeffs, z);
                let q = horner(&dp, z);
                if q.norm() == 0.0 {
                    break;
                }
                let step = p / q;
                if !step.is_finite() {
                    break;
                }
                let candidate = z - step;
                if horner(coeffs, candidate).norm() > p.norm() {
                    break;
                }
                z = candidate;
            }
            z
        })
        .collect()
}

/// Backward-error style residual `|p(z)| / Σ |c_j| |z|^j`.
pub fn relative_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let scale: f64 = coeffs.iter().rev().fold(0.0, |acc, c| acc * z.norm() + c.norm());
    if scale == 0.0 {
        return 0.0;
    }
    horner(coeffs, z).norm() / scale
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn linear_root() {
        let r = polynomial_roots(&[c(2.0, 0.0), c(0.1, 0.0)]);
        assert_eq!(r.len(), 1);
        assert!((r[0] - c(-20.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn known_cubic() {
        // (z - 1)(z + 2)(z - 3i) expanded.
        let roots = [c(1.0, 0.0), c(-2.0, 0.0), c(0.0, 3.0)];
        let mut coeffs = vec![c(1.0, 0.0)];
        for r in roots {
            let mut next = vec![c(0.0, 0.0); coeffs.len() + 1];
            for (j, &a) in coeffs.iter().enumerate() {
                next[j + 1] += a;
                next[j] -= a * r;
            }
            coeffs = next;
        }
        let found = polynomial_roots(&coeffs);
        for r in roots {
            assert!(found.iter().any(|z| (z - r).norm() < 1e-10), "missing root {r}");
        }
        for z in found {
            assert!(relative_residual(&coeffs, z) < 1e-12);
        }
    }

    #[test]
    fn trim_drops_noise() {
        let t = trim(&[c(1.0, 0.0), c(0.5, 0.0), c(1e-20, 0.0)], 1e-14);
        assert_eq!(t.len(), 2);
        assert!(polynomial_roots(&[c(3.0, 0.0)]).is_empty());
    }
}
