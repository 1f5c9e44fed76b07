//! φ-functions of exponential integrators and their divided differences.
//!
//! `φ_0(z) = e^z`, `φ_k(z) = (φ_{k-1}(z) - 1/(k-1)!) / z`, i.e.
//! `φ_k(z) = Σ_j z^j / (j+k)!`. The divided differences
//! `φ_k[a, b] = (φ_k(a) - φ_k(b)) / (a - b)` are what a 2×2 system with
//! eigenvalues `a`, `b` needs; they are evaluated without the cancellation
//! of the naive quotient.

use num_complex::Complex64;

const SERIES_RADIUS: f64 = 1.0;
const SERIES_TERMS: usize = 30;
/// Below this separation the exponential divided difference switches to its
/// Taylor expansion in the half-separation.
pub const SEPARATION_FALLBACK: f64 = 1e-6;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// `φ_k(z)`.
pub fn phi(k: usize, z: Complex64) -> Complex64 {
    if k == 0 {
        return z.exp();
    }
    if z.norm() < SERIES_RADIUS {
        let mut term = Complex64::new(1.0 / factorial(k), 0.0);
        let mut acc = term;
        for j in 1..SERIES_TERMS {
            term *= z / (j + k) as f64;
            acc += term;
        }
        acc
    } else {
        let mut acc = z.exp();
        for m in 1..=k {
            acc = (acc - 1.0 / factorial(m - 1)) / z;
        }
        acc
    }
}

/// `φ_k'(z) = φ_k(z) - k φ_{k+1}(z)`.
pub fn phi_derivative(k: usize, z: Complex64) -> Complex64 {
    phi(k, z) - phi(k + 1, z) * k as f64
}

/// `sinh(d) / d`.
fn sinhc(d: Complex64) -> Complex64 {
    if d.norm() < SEPARATION_FALLBACK {
        let d2 = d * d;
        Complex64::new(1.0, 0.0) + d2 / 6.0 + d2 * d2 / 120.0
    } else {
        d.sinh() / d
    }
}

/// Divided difference `φ_k[a, b]`, equal to `φ_k'(a)` when `a = b`.
pub fn phi_divided_difference(k: usize, a: Complex64, b: Complex64) -> Complex64 {
    if k == 0 {
        let mid = (a + b) * 0.5;
        let half = (a - b) * 0.5;
        return mid.exp() * sinhc(half);
    }
    if a.norm().max(b.norm()) < SERIES_RADIUS {
        // Σ_{j>=1} h_{j-1}(a, b) / (j+k)!, h the complete homogeneous polynomial.
        let mut h = Complex64::new(1.0, 0.0);
        let mut b_pow = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut inv_fact = 1.0 / factorial(k + 1);
        for j in 1..SERIES_TERMS {
            acc += h * inv_fact;
            b_pow *= b;
            h = a * h + b_pow;
            inv_fact /= (j + k + 1) as f64;
        }
        return acc;
    }
    let (big, small) = if a.norm() >= b.norm() { (a, b) } else { (b, a) };
    (phi_divided_difference(k - 1, big, small) - phi(k, small)) / big
}
