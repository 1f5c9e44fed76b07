//! Slow reference implementations used to cross-check the fast paths.
//!
//! Nothing here is on a hot path. Products go through
//! [`naive_convolution`], the ℋ-commutator through its Fourier kernel
//! `-i(sgn k - sgn(k-n))`, the ∂ₓ²-commutator through its unexpanded form,
//! and 2×2 matrix exponentials through Taylor scaling-and-squaring.

use num_complex::Complex64;

use crate::error::Result;
use crate::linear::Mat2;
use crate::models::BiState;
use crate::params::ModelParams;
use crate::spectral::{dx, dxx, hilbert, lambda, lambda_pow, naive_convolution, sgn, SpectralField};

/// `[ℋ, a] b` from `Σ_n -i(sgn k - sgn(k-n)) â(n) b̂(k-n)`.
pub fn commutator_h_kernel(a: &SpectralField, b: &SpectralField) -> Result<SpectralField> {
    a.grid().check_same(b.grid())?;
    let grid = a.grid();
    let k_max = grid.k_max();
    let mut out = SpectralField::zeros(grid);
    for k in -k_max..=k_max {
        let mut acc = Complex64::new(0.0, 0.0);
        for n in -k_max..=k_max {
            let m = k - n;
            if m.abs() > k_max {
                continue;
            }
            let kernel = sgn(k) - sgn(m);
            if kernel != 0.0 {
                acc += Complex64::new(0.0, -kernel) * a.coeff(n) * b.coeff(m);
            }
        }
        out.set_coeff(k, acc);
    }
    Ok(out)
}

/// `[∂ₓ², a] b = ∂ₓ²(a b) - a ∂ₓ²b` from direct convolutions.
pub fn commutator_dxx_direct(a: &SpectralField, b: &SpectralField) -> Result<SpectralField> {
    Ok(&dxx(&naive_convolution(a, b)?) - &naive_convolution(a, &dxx(b))?)
}

/// The eight bidirectional forcing terms without the `ε` factor:
/// `F₁ … F₆` followed by the two `δ²` terms of the cubic model.
pub fn bi_terms_naive(state: &BiState, p: &ModelParams) -> Result<[SpectralField; 8]> {
    let (f, ft) = (&state.f, &state.ft);
    let (d, b) = (p.delta, p.beta);
    let h_ft = hilbert(ft);
    let fxx = dxx(f);
    let h_fxx = hilbert(&fxx);
    Ok([
        lambda(&naive_convolution(&h_ft, &h_ft)?).scale(-1.0),
        dx(&commutator_h_kernel(f, &lambda(f))?),
        dx(&commutator_h_kernel(f, &lambda_pow(f, 3.0)?)?).scale(b),
        dx(&commutator_h_kernel(&h_ft, &h_fxx)?).scale(d),
        lambda(&naive_convolution(&h_ft, &h_fxx)?).scale(d),
        dx(&commutator_dxx_direct(f, &h_ft)?).scale(-d),
        dx(&commutator_dxx_direct(f, &lambda(&dx(f)))?).scale(d * d),
        dx(&commutator_h_kernel(&fxx, &fxx)?).scale(-d * d),
    ])
}

/// The six terms inside the braces of the unidirectional nonlinearity.
pub fn uni_brace_terms_naive(u: &SpectralField, p: &ModelParams) -> Result<[SpectralField; 6]> {
    let (d, b) = (p.delta, p.beta);
    let inv = lambda_pow(u, -1.0)?;
    let ux = dx(u);
    let u_ux = naive_convolution(u, &ux)?;
    Ok([
        u_ux.scale(2.0),
        lambda(&commutator_h_kernel(&inv, u)?),
        lambda(&commutator_h_kernel(&inv, &lambda_pow(u, 2.0)?)?).scale(b),
        lambda(&commutator_h_kernel(u, &ux)?).scale(-d),
        dx(&u_ux).scale(d),
        lambda(&commutator_dxx_direct(&inv, u)?).scale(d),
    ])
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// `e^A` for a real 2×2 matrix by Taylor series and repeated squaring.
pub fn expm2(a: &Mat2) -> Mat2 {
    let norm = (a[0][0].abs() + a[0][1].abs()).max(a[1][0].abs() + a[1][1].abs());
    let squarings = if norm > 0.125 {
        (norm / 0.125).log2().ceil() as i32
    } else {
        0
    };
    let scale = 0.5f64.powi(squarings);
    let b = [[a[0][0] * scale, a[0][1] * scale], [a[1][0] * scale, a[1][1] * scale]];
    let mut sum = [[1.0, 0.0], [0.0, 1.0]];
    let mut term = sum;
    for j in 1..=24 {
        term = mat_mul(&term, &b);
        for row in term.iter_mut() {
            for v in row.iter_mut() {
                *v /= j as f64;
            }
        }
        for i in 0..2 {
            for k in 0..2 {
                sum[i][k] += term[i][k];
            }
        }
    }
    for _ in 0..squarings {
        sum = mat_mul(&sum, &sum);
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{commutator_dxx, commutator_h, Grid};

    #[test]
    fn expm_of_rotation_and_diagonal() {
        let t = 1.3f64;
        let r = expm2(&[[0.0, -t], [t, 0.0]]);
        assert!((r[0][0] - t.cos()).abs() < 1e-14);
        assert!((r[1][0] - t.sin()).abs() < 1e-14);
        let d = expm2(&[[-3.0, 0.0], [0.0, 2.0]]);
        assert!((d[0][0] - (-3.0f64).exp()).abs() < 1e-15);
        assert!((d[1][1] - 2.0f64.exp()).abs() < 1e-13);
        assert_eq!(d[0][1], 0.0);
    }

    #[test]
    fn kernel_commutator_matches_fast_path() {
        let g = Grid::new(16).unwrap();
        let a = SpectralField::from_fn_positive(&g, |k| Complex64::new(1.0 / k as f64, 0.3) / (k * k) as f64);
        let b = SpectralField::from_fn_positive(&g, |k| Complex64::new(-0.5, 1.0 / (1 + k) as f64));
        let fast = commutator_h(&a, &b).unwrap();
        assert!(fast.max_diff(&commutator_h_kernel(&a, &b).unwrap()) < 1e-14);
        let fast = commutator_dxx(&a, &b).unwrap();
        assert!(fast.max_diff(&commutator_dxx_direct(&a, &b).unwrap()) < 1e-12);
    }
}
