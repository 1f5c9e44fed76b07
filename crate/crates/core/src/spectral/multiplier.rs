//! Fourier multipliers: ℋ, Λ^s, ∂ₓ^m, 𝒩 and 𝒫.

use num_complex::Complex64;

use super::field::SpectralField;
use crate::error::{CoreError, Result};
use crate::params::ModelParams;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `sgn(k)` with `sgn(0) = 0`.
pub fn sgn(k: i64) -> f64 {
    k.signum() as f64
}

/// Symbol of the Hilbert transform, `-i sgn(k)`.
pub fn hilbert_symbol(k: i64) -> Complex64 {
    Complex64::new(0.0, -sgn(k))
}

/// Symbol of 𝒩 = (1 - δ²∂ₓ²)⁻¹(1 - δ∂ₓ): `(1 - iδk) / (1 + δ²k²)`.
pub fn n_symbol(k: i64, delta: f64) -> Complex64 {
    let kf = k as f64;
    let d = 1.0 + delta * delta * kf * kf;
    Complex64::new(1.0 / d, -delta * kf / d)
}

/// Symbol of 𝒫 = (1 - δ²∂ₓ²)⁻¹: `1 / (1 + δ²k²)`.
pub fn p_symbol(k: i64, delta: f64) -> f64 {
    let kf = k as f64;
    1.0 / (1.0 + delta * delta * kf * kf)
}

/// `|k|^s`, exact for small integer orders.
pub(crate) fn abs_pow(k: i64, s: f64) -> f64 {
    let a = k.unsigned_abs() as f64;
    if s.fract() == 0.0 && s.abs() <= 64.0 {
        a.powi(s as i32)
    } else {
        a.powf(s)
    }
}

/// Multiplies every coefficient by `m(k)`.
///
/// The Nyquist slot holds a real cosine amplitude, so it receives
/// `(m(N/2) + m(-N/2)) / 2`, the action of the symbol on `cos(Nx/2)` as seen
/// on the grid. Hermitian symmetry is preserved whenever `m(-k) = conj(m(k))`.
pub fn apply_multiplier(f: &SpectralField, m: impl Fn(i64) -> Complex64) -> SpectralField {
    let grid = f.grid().clone();
    let nyq = grid.nyquist();
    let mut out = f.clone();
    for (i, c) in out.coeffs_mut().iter_mut().enumerate() {
        let k = grid.wavenumber(i);
        let sym = if k == nyq {
            (m(nyq) + m(-nyq)) * 0.5
        } else {
            m(k)
        };
        *c *= sym;
    }
    out
}

/// Real-symbol fast path of [`apply_multiplier`].
pub(crate) fn apply_real_multiplier(f: &SpectralField, m: impl Fn(i64) -> f64) -> SpectralField {
    let grid = f.grid().clone();
    let nyq = grid.nyquist();
    let mut out = f.clone();
    for (i, c) in out.coeffs_mut().iter_mut().enumerate() {
        let k = grid.wavenumber(i);
        let sym = if k == nyq { 0.5 * (m(nyq) + m(-nyq)) } else { m(k) };
        *c *= sym;
    }
    out
}

/// ℋf, with `ĝ(k) = -i sgn(k) f̂(k)`.
pub fn hilbert(f: &SpectralField) -> SpectralField {
    apply_multiplier(f, hilbert_symbol)
}

/// Λ^s f with `ĝ(k) = |k|^s f̂(k)` and `ĝ(0) = 0`.
///
/// Negative orders require a zero-mean field.
pub fn lambda_pow(f: &SpectralField, s: f64) -> Result<SpectralField> {
    if !s.is_finite() {
        return Err(CoreError::Domain(format!("Λ^s with non-finite order {s}")));
    }
    if s < 0.0 && !f.is_zero_mean() {
        return Err(CoreError::Domain(format!(
            "Λ^{s} is undefined on a field with nonzero mean {}",
            f.mean()
        )));
    }
    Ok(lambda_pow_unchecked(f, s))
}

pub(crate) fn lambda_pow_unchecked(f: &SpectralField, s: f64) -> SpectralField {
    apply_real_multiplier(f, |k| if k == 0 { 0.0 } else { abs_pow(k, s) })
}

/// Λf = ℋ∂ₓf.
pub fn lambda(f: &SpectralField) -> SpectralField {
    apply_real_multiplier(f, |k| k.unsigned_abs() as f64)
}

/// ∂ₓf.
pub fn dx(f: &SpectralField) -> SpectralField {
    apply_multiplier(f, |k| Complex64::new(0.0, k as f64))
}

/// ∂ₓ²f.
pub fn dxx(f: &SpectralField) -> SpectralField {
    apply_real_multiplier(f, |k| -((k * k) as f64))
}

/// ∂ₓ^m f for any order `m`.
pub fn dx_pow(f: &SpectralField, order: u32) -> SpectralField {
    apply_multiplier(f, |k| (I * k as f64).powu(order))
}

/// 𝒩f.
pub fn op_n(f: &SpectralField, p: &ModelParams) -> SpectralField {
    apply_multiplier(f, |k| n_symbol(k, p.delta))
}

/// 𝒫f.
pub fn op_p(f: &SpectralField, p: &ModelParams) -> SpectralField {
    apply_real_multiplier(f, |k| p_symbol(k, p.delta))
}
