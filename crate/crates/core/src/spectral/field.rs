use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use super::grid::Grid;
use crate::error::{CoreError, Result};

/// Fourier coefficients of a real function on the periodic circle.
///
/// Convention: `f(x) = Σ_k f̂(k) e^{ikx}` with `f̂(k) = (1/2π) ∫ f e^{-ikx} dx`.
/// The full complex spectrum is stored (FFT ordering) so that violations of
/// `f̂(-k) = conj(f̂(k))` are observable rather than impossible.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: Grid,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(grid: &Grid) -> Self {
        Self {
            grid: grid.clone(),
            coeffs: vec![Complex64::new(0.0, 0.0); grid.n_modes()],
        }
    }

    /// Wraps raw coefficients given in FFT storage order.
    pub fn from_coeffs(grid: &Grid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.n_modes() {
            return Err(CoreError::Config(format!(
                "expected {} coefficients, got {}",
                grid.n_modes(),
                coeffs.len()
            )));
        }
        Ok(Self {
            grid: grid.clone(),
            coeffs,
        })
    }

    /// Builds a field from `(k, f̂(k))` pairs with `k >= 0`; negative modes are
    /// filled in by conjugation.
    pub fn from_positive_modes<I>(grid: &Grid, modes: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        let mut field = Self::zeros(grid);
        for (k, c) in modes {
            if k < 0 || k > grid.k_max() {
                return Err(CoreError::Config(format!(
                    "mode {k} outside 0..={} for {} modes",
                    grid.k_max(),
                    grid.n_modes()
                )));
            }
            field.set_pair(k, c);
        }
        Ok(field)
    }

    /// Builds a field by evaluating `value(k)` for `1 <= k <= k_max` and
    /// mirroring. The mean and Nyquist slots are zero.
    #[cfg(test)]
    pub(crate) fn from_fn_positive(grid: &Grid, mut value: impl FnMut(i64) -> Complex64) -> Self {
        let mut field = Self::zeros(grid);
        for k in 1..=grid.k_max() {
            field.set_pair(k, value(k));
        }
        field
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        self.coeffs[self.grid.index(k)]
    }

    /// Sets `f̂(k)` alone; the caller is responsible for Hermitian symmetry.
    pub fn set_coeff(&mut self, k: i64, c: Complex64) {
        let idx = self.grid.index(k);
        self.coeffs[idx] = c;
    }

    /// Sets `f̂(k) = c` and `f̂(-k) = conj(c)`. For `k = 0` only the real part is kept.
    pub fn set_pair(&mut self, k: i64, c: Complex64) {
        if k == 0 {
            self.set_coeff(0, Complex64::new(c.re, 0.0));
        } else {
            self.set_coeff(k, c);
            self.set_coeff(-k, c.conj());
        }
    }

    /// `(k, f̂(k))` over the grid in storage order.
    pub fn modes(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.grid.wavenumber(i), *c))
    }

    pub fn mean(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn is_zero_mean(&self) -> bool {
        self.coeffs[0] == Complex64::new(0.0, 0.0)
    }

    /// `max_k |f̂(-k) - conj(f̂(k))|`, including the imaginary part of the
    /// mean and Nyquist slots.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = self.coeffs[0].im.abs();
        worst = worst.max(self.coeff(self.grid.nyquist()).im.abs());
        for k in 1..=self.grid.k_max() {
            let d = (self.coeff(-k) - self.coeff(k).conj()).norm();
            worst = worst.max(d);
        }
        worst
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            grid: self.grid.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: f64, other: &Self) -> Self {
        debug_assert_eq!(self.grid, other.grid);
        Self {
            grid: self.grid.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b * s)
                .collect(),
        }
    }

    /// Maximum modewise distance to `other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.grid, other.grid);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Re-expresses the field on another grid: modes shared by both grids are
    /// copied, the rest are dropped (truncation) or zero (padding).
    pub fn resample(&self, grid: &Grid) -> Self {
        let mut out = Self::zeros(grid);
        let k_max = self.grid.k_max().min(grid.k_max());
        for k in -k_max..=k_max {
            out.set_coeff(k, self.coeff(k));
        }
        out
    }

    /// Samples at the collocation points `x_j = 2πj/N`.
    pub fn to_real(&self) -> Vec<f64> {
        let mut buf = self.coeffs.clone();
        self.grid.plans().inverse.process(&mut buf);
        buf.into_iter().map(|c| c.re).collect()
    }
}

/// Fourier coefficients of real samples taken at `x_j = 2πj/N`.
pub fn to_spectral(samples: &[f64], grid: &Grid) -> Result<SpectralField> {
    let n = grid.n_modes();
    if samples.len() != n {
        return Err(CoreError::Config(format!(
            "expected {n} samples, got {}",
            samples.len()
        )));
    }
    let mut buf: Vec<Complex64> = samples.iter().map(|&s| Complex64::new(s, 0.0)).collect();
    grid.plans().forward.process(&mut buf);
    let inv_n = 1.0 / n as f64;
    let mut field = SpectralField::zeros(grid);
    // Mirror from the non-negative half so the spectrum is exactly Hermitian.
    field.set_pair(0, buf[0] * inv_n);
    for k in 1..=grid.k_max() {
        field.set_pair(k, buf[k as usize] * inv_n);
    }
    let nyq = grid.nyquist();
    field.set_coeff(nyq, Complex64::new(buf[nyq as usize].re * inv_n, 0.0));
    Ok(field)
}

impl Add for &SpectralField {
    type Output = SpectralField;

    fn add(self, rhs: Self) -> SpectralField {
        self.add_scaled(1.0, rhs)
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;

    fn sub(self, rhs: Self) -> SpectralField {
        self.add_scaled(-1.0, rhs)
    }
}

impl Neg for &SpectralField {
    type Output = SpectralField;

    fn neg(self) -> SpectralField {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;

    fn mul(self, rhs: f64) -> SpectralField {
        self.scale(rhs)
    }
}

impl AddAssign<&SpectralField> for SpectralField {
    fn add_assign(&mut self, rhs: &SpectralField) {
        debug_assert_eq!(self.grid, rhs.grid);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid(n: usize) -> Grid {
        Grid::new(n).unwrap()
    }

    #[test]
    fn cosine_has_half_amplitudes() {
        for n in [4, 8, 16, 64] {
            let g = grid(n);
            let samples: Vec<f64> = g.points().iter().map(|x| x.cos()).collect();
            let f = to_spectral(&samples, &g).unwrap();
            for (k, c) in f.modes() {
                let expect = if k.abs() == 1 { 0.5 } else { 0.0 };
                assert!((c - Complex64::new(expect, 0.0)).norm() < 1e-15, "n={n} k={k} c={c}");
            }
        }
    }

    #[test]
    fn zero_samples_give_zero_field() {
        let g = grid(16);
        let f = to_spectral(&[0.0; 16], &g).unwrap();
        assert_eq!(f, SpectralField::zeros(&g));
    }

    #[test]
    fn length_mismatch_is_config_error() {
        let g = grid(16);
        assert!(matches!(to_spectral(&[0.0; 15], &g), Err(CoreError::Config(_))));
    }

    #[test]
    fn parseval_with_two_pi_measure() {
        let g = grid(32);
        let xs = g.points();
        let samples: Vec<f64> = xs
            .iter()
            .map(|&x| (x.sin() * 2.0).exp() - 1.0 + 0.3 * (5.0 * x).cos())
            .collect();
        let f = to_spectral(&samples, &g).unwrap();
        // Trapezoidal rule is spectrally exact for the band-limited interpolant.
        let l2_sq: f64 = samples.iter().map(|s| s * s).sum::<f64>() * 2.0 * PI / 32.0;
        let spec_sq: f64 = 2.0 * PI * f.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>();
        assert!((l2_sq - spec_sq).abs() < 1e-12 * l2_sq);
    }

    #[test]
    fn resample_pads_and_truncates() {
        let g8 = grid(8);
        let g16 = grid(16);
        let f = SpectralField::from_positive_modes(&g8, [(1, Complex64::new(0.5, 0.0)), (3, Complex64::new(0.0, 0.1))]).unwrap();
        let up = f.resample(&g16);
        assert_eq!(up.coeff(3), Complex64::new(0.0, 0.1));
        assert_eq!(up.resample(&g8), f);
    }
}
