//! Pointwise products and the commutators built from them.

use num_complex::Complex64;

use super::field::SpectralField;
use super::multiplier::{dx, dxx, hilbert};
use crate::error::Result;

/// Fourier coefficients of `f·g`, free of aliasing on every retained mode.
///
/// Both factors are zero-padded to `3N/2` points (the 2/3 rule), multiplied
/// in physical space and truncated back. Modes `|k| <= N/2 - 1` of the result
/// equal the exact truncated convolution; the Nyquist slot of the inputs is
/// ignored and that of the output is zero.
pub fn dealiased_product(f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    f.grid().check_same(g.grid())?;
    Ok(product(f, g))
}

pub(crate) fn product(f: &SpectralField, g: &SpectralField) -> SpectralField {
    debug_assert_eq!(f.grid(), g.grid());
    let grid = f.grid();
    let plans = grid.plans();
    let m = plans.padded_len;
    let k_max = grid.k_max();

    // Separate transforms: packing f + ig into one would leak rounding of
    // order eps(|f|² + |g|²) into a product of size |f||g|.
    let to_padded_real = |x: &SpectralField| {
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        for k in -k_max..=k_max {
            buf[k.rem_euclid(m as i64) as usize] = x.coeff(k);
        }
        plans.padded_inverse.process(&mut buf);
        buf
    };
    let fx = to_padded_real(f);
    let gx = to_padded_real(g);
    let mut buf: Vec<Complex64> = fx
        .iter()
        .zip(&gx)
        .map(|(a, b)| Complex64::new(a.re * b.re, 0.0))
        .collect();
    plans.padded_forward.process(&mut buf);

    let inv_m = 1.0 / m as f64;
    let mut out = SpectralField::zeros(grid);
    out.set_pair(0, buf[0] * inv_m);
    for k in 1..=k_max {
        out.set_pair(k, buf[k as usize] * inv_m);
    }
    out
}

/// Direct `O(N²)` convolution `ĥ(k) = Σ_n f̂(n) ĝ(k-n)` over retained modes.
///
/// Reference implementation for [`dealiased_product`] and the commutators.
pub fn naive_convolution(f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    f.grid().check_same(g.grid())?;
    let grid = f.grid();
    let k_max = grid.k_max();
    let mut out = SpectralField::zeros(grid);
    for k in -k_max..=k_max {
        let mut acc = Complex64::new(0.0, 0.0);
        for n in -k_max..=k_max {
            let m = k - n;
            if m.abs() <= k_max {
                acc += f.coeff(n) * g.coeff(m);
            }
        }
        out.set_coeff(k, acc);
    }
    Ok(out)
}

/// `[ℋ, a] b = ℋ(a b) - a ℋb`.
///
/// The result may carry a nonzero mean; every use in the models applies Λ
/// or ∂ₓ afterwards.
pub fn commutator_h(a: &SpectralField, b: &SpectralField) -> Result<SpectralField> {
    a.grid().check_same(b.grid())?;
    Ok(comm_h(a, b))
}

pub(crate) fn comm_h(a: &SpectralField, b: &SpectralField) -> SpectralField {
    &hilbert(&product(a, b)) - &product(a, &hilbert(b))
}

/// `[∂ₓ², a] b = ∂ₓ²(a b) - a ∂ₓ²b`, evaluated as `a'' b + 2 a' b'`.
pub fn commutator_dxx(a: &SpectralField, b: &SpectralField) -> Result<SpectralField> {
    a.grid().check_same(b.grid())?;
    Ok(comm_dxx(a, b))
}

pub(crate) fn comm_dxx(a: &SpectralField, b: &SpectralField) -> SpectralField {
    product(&dxx(a), b).add_scaled(2.0, &product(&dx(a), &dx(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::CoreError;
    use crate::spectral::{to_spectral, Grid};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cos_k(g: &Grid, k: i64, a: f64) -> SpectralField {
        SpectralField::from_positive_modes(g, [(k, c(a / 2.0, 0.0))]).unwrap()
    }

    fn sin_k(g: &Grid, k: i64, a: f64) -> SpectralField {
        SpectralField::from_positive_modes(g, [(k, c(0.0, -a / 2.0))]).unwrap()
    }

    fn half_plus_half_cos2(g: &Grid) -> SpectralField {
        let mut h = cos_k(g, 2, 0.5);
        h.set_pair(0, c(0.5, 0.0));
        h
    }

    #[test]
    fn cos_squared() {
        let g = Grid::new(16).unwrap();
        let cos1 = cos_k(&g, 1, 1.0);
        let want = half_plus_half_cos2(&g);
        assert!(dealiased_product(&cos1, &cos1).unwrap().max_diff(&want) < 1e-15);
        assert!(naive_convolution(&cos1, &cos1).unwrap().max_diff(&want) < 1e-15);
    }

    #[test]
    fn product_with_zero() {
        let g = Grid::new(16).unwrap();
        let cos1 = cos_k(&g, 3, 1.0);
        let zero = SpectralField::zeros(&g);
        assert_eq!(dealiased_product(&cos1, &zero).unwrap().max_abs(), 0.0);
        assert_eq!(naive_convolution(&cos1, &zero).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn single_mode_convolution() {
        let g = Grid::new(16).unwrap();
        let mut a = SpectralField::zeros(&g);
        a.set_coeff(3, c(0.5, 0.25));
        let mut b = SpectralField::zeros(&g);
        b.set_coeff(-1, c(-2.0, 1.0));
        let h = naive_convolution(&a, &b).unwrap();
        for (k, v) in h.modes() {
            let want = if k == 2 { c(0.5, 0.25) * c(-2.0, 1.0) } else { c(0.0, 0.0) };
            assert_eq!(v, want, "k={k}");
        }
    }

    #[test]
    fn grid_mismatch() {
        let a = SpectralField::zeros(&Grid::new(8).unwrap());
        let b = SpectralField::zeros(&Grid::new(16).unwrap());
        assert!(matches!(dealiased_product(&a, &b), Err(CoreError::GridMismatch { .. })));
        assert!(matches!(naive_convolution(&a, &b), Err(CoreError::GridMismatch { .. })));
        assert!(commutator_h(&a, &b).is_err());
        assert!(commutator_dxx(&a, &b).is_err());
    }

    #[test]
    fn product_matches_physical_space_for_low_modes() {
        let g = Grid::new(32).unwrap();
        let xs = g.points();
        let fs: Vec<f64> = xs.iter().map(|x| (2.0 * x).sin() + 0.5 * (3.0 * x).cos()).collect();
        let gs: Vec<f64> = xs.iter().map(|x| x.cos() - 0.25 * (4.0 * x).sin()).collect();
        let prod: Vec<f64> = fs.iter().zip(&gs).map(|(a, b)| a * b).collect();
        let f = to_spectral(&fs, &g).unwrap();
        let gg = to_spectral(&gs, &g).unwrap();
        let want = to_spectral(&prod, &g).unwrap();
        assert!(dealiased_product(&f, &gg).unwrap().max_diff(&want) < 1e-15);
    }

    #[test]
    fn commutator_h_examples() {
        let g = Grid::new(16).unwrap();
        let cos1 = cos_k(&g, 1, 1.0);
        let sin1 = sin_k(&g, 1, 1.0);
        assert!(commutator_h(&cos1, &cos1).unwrap().max_abs() < 1e-15);
        assert_eq!(commutator_h(&cos1, &SpectralField::zeros(&g)).unwrap().max_abs(), 0.0);
        let mut half = SpectralField::zeros(&g);
        half.set_pair(0, c(0.5, 0.0));
        assert!(commutator_h(&cos1, &sin1).unwrap().max_diff(&half) < 1e-15);
    }

    #[test]
    fn commutator_dxx_examples() {
        let g = Grid::new(16).unwrap();
        let cos1 = cos_k(&g, 1, 1.0);
        let mut want = cos_k(&g, 2, -1.5);
        want.set_pair(0, c(0.5, 0.0));
        assert!(commutator_dxx(&cos1, &cos1).unwrap().max_diff(&want) < 1e-15);

        let mut constant = SpectralField::zeros(&g);
        constant.set_pair(0, c(1.7, 0.0));
        assert_eq!(commutator_dxx(&constant, &cos1).unwrap().max_abs(), 0.0);
    }
}
