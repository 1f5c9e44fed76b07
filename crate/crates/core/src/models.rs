//! Right-hand sides of the three models.
//!
//! Bidirectional (quadratic and cubic), for the pair `(f, f_t)`:
//!
//! ```text
//! f_tt + 2δΛ²f_t + Λf + βΛ³f + δ²Λ⁴f = ε (F₁ + … + F₆ [+ C₁ + C₂])
//! F₁ = -Λ((ℋf_t)²)            F₂ = ∂ₓ[ℋ,f]Λf
//! F₃ = β∂ₓ[ℋ,f]Λ³f            F₄ = δ∂ₓ[ℋ,ℋf_t]ℋ∂ₓ²f
//! F₅ = δΛ(ℋf_t ℋ∂ₓ²f)         F₆ = -δ∂ₓ[∂ₓ²,f]ℋf_t
//! C₁ = δ²∂ₓ[∂ₓ²,f]Λ∂ₓf        C₂ = -δ²∂ₓ[ℋ,∂ₓ²f]∂ₓ²f      (cubic model only)
//! ```
//!
//! Unidirectional, for `u`:
//!
//! ```text
//! 2ε u_t = 𝒩uₓ + 2δ𝒩uₓₓ + 𝒩ℋu - β𝒫ℋ∂ₓ²u + βδ𝒫Λ∂ₓ²u + δ²𝒫∂ₓ³u - δ³𝒫∂ₓ⁴u
//!          - ε𝒩{ 2uuₓ + Λ[ℋ,Λ⁻¹u]u + βΛ[ℋ,Λ⁻¹u]Λ²u
//!                - δΛ[ℋ,u]uₓ + δ∂ₓ(uuₓ) + δΛ[∂ₓ²,Λ⁻¹u]u }
//! ```

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::params::ModelParams;
use crate::spectral::{
    apply_multiplier, comm_dxx, comm_h, dx, dxx, hilbert, lambda, lambda_pow, lambda_pow_unchecked,
    n_symbol, op_n, p_symbol, product, sgn, Grid, SpectralField,
};

/// Which equation is being solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    BiQuadratic,
    BiCubic,
    Unidirectional,
}

impl ModelKind {
    pub fn is_bidirectional(self) -> bool {
        !matches!(self, ModelKind::Unidirectional)
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::BiQuadratic => "bi_quadratic",
            ModelKind::BiCubic => "bi_cubic",
            ModelKind::Unidirectional => "unidirectional",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bi_quadratic" => Ok(ModelKind::BiQuadratic),
            "bi_cubic" => Ok(ModelKind::BiCubic),
            "unidirectional" => Ok(ModelKind::Unidirectional),
            other => Err(CoreError::Config(format!("unknown model '{other}'"))),
        }
    }
}

/// Rejects fields whose highest retained modes are not negligible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResolutionGuard {
    Off,
    /// Largest allowed `|f̂(k)|` over the top tenth of the retained band.
    Threshold(f64),
}

impl Default for ResolutionGuard {
    fn default() -> Self {
        ResolutionGuard::Threshold(1e-10)
    }
}

impl ResolutionGuard {
    pub fn check(&self, f: &SpectralField) -> Result<()> {
        let ResolutionGuard::Threshold(threshold) = *self else {
            return Ok(());
        };
        let k_max = f.grid().k_max();
        let first = ((0.9 * k_max as f64).ceil() as i64).clamp(1, k_max);
        for k in first..=k_max {
            let magnitude = f.coeff(k).norm().max(f.coeff(-k).norm());
            if magnitude >= threshold || !magnitude.is_finite() {
                return Err(CoreError::UnderResolved {
                    k,
                    magnitude,
                    threshold,
                });
            }
        }
        Ok(())
    }
}

/// State `(f, f_t)` of the bidirectional models.
#[derive(Debug, Clone, PartialEq)]
pub struct BiState {
    pub f: SpectralField,
    pub ft: SpectralField,
}

impl BiState {
    pub fn new(f: SpectralField, ft: SpectralField) -> Result<Self> {
        f.grid().check_same(ft.grid())?;
        for (name, x) in [("f", &f), ("f_t", &ft)] {
            if !x.is_zero_mean() {
                return Err(CoreError::Domain(format!("{name} has nonzero mean {}", x.mean())));
            }
            let defect = x.hermitian_defect();
            if defect > 1e-12 * x.max_abs().max(1.0) {
                return Err(CoreError::Domain(format!(
                    "{name} is not the spectrum of a real field (asymmetry {defect:.2e})"
                )));
            }
        }
        Ok(Self { f, ft })
    }

    pub fn zeros(grid: &Grid) -> Self {
        Self {
            f: SpectralField::zeros(grid),
            ft: SpectralField::zeros(grid),
        }
    }

    pub fn grid(&self) -> &Grid {
        self.f.grid()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            f: self.f.scale(s),
            ft: self.ft.scale(s),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.f.is_finite() && self.ft.is_finite()
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        self.f.max_diff(&other.f).max(self.ft.max_diff(&other.ft))
    }
}

/// The eight bidirectional forcing terms without `ε`: `F₁ … F₆, C₁, C₂`.
pub fn bi_terms(state: &BiState, p: &ModelParams) -> [SpectralField; 8] {
    let (f, ft) = (&state.f, &state.ft);
    let (d, b) = (p.delta, p.beta);
    let grid = f.grid();
    let zero = || SpectralField::zeros(grid);

    let h_ft = hilbert(ft);
    let fxx = dxx(f);
    let h_fxx = hilbert(&fxx);
    let ft_fxx = product(&h_ft, &h_fxx);

    let f1 = lambda(&product(&h_ft, &h_ft)).scale(-1.0);
    let f2 = dx(&comm_h(f, &lambda(f)));
    let f3 = if b == 0.0 {
        zero()
    } else {
        dx(&comm_h(f, &lambda_pow_unchecked(f, 3.0))).scale(b)
    };
    // [ℋ, ℋf_t]ℋ∂ₓ²f = ℋ(ℋf_t ℋ∂ₓ²f) + ℋf_t ∂ₓ²f, using ℋ² = -1 on zero-mean fields.
    let f4 = dx(&(&hilbert(&ft_fxx) + &product(&h_ft, &fxx))).scale(d);
    let f5 = lambda(&ft_fxx).scale(d);
    let f6 = dx(&comm_dxx(f, &h_ft)).scale(-d);
    let c1 = dx(&comm_dxx(f, &lambda(&dx(f)))).scale(d * d);
    let c2 = dx(&comm_h(&fxx, &fxx)).scale(-d * d);
    [f1, f2, f3, f4, f5, f6, c1, c2]
}

/// Nonlinear forcing `ε(F₁ + … + F₆)`, plus the two `δ²` terms for the cubic model.
pub fn bi_forcing(
    state: &BiState,
    p: &ModelParams,
    kind: ModelKind,
    guard: ResolutionGuard,
) -> Result<SpectralField> {
    let n_terms = match kind {
        ModelKind::BiQuadratic => 6,
        ModelKind::BiCubic => 8,
        ModelKind::Unidirectional => {
            return Err(CoreError::Config(
                "bi_forcing called for the unidirectional model".into(),
            ))
        }
    };
    guard.check(&state.f)?;
    guard.check(&state.ft)?;
    let terms = bi_terms(state, p);
    let mut total = SpectralField::zeros(state.grid());
    for t in &terms[..n_terms] {
        total += t;
    }
    Ok(total.scale(p.epsilon))
}

/// The six terms inside the braces of the unidirectional nonlinearity.
pub fn uni_brace_terms(u: &SpectralField, p: &ModelParams) -> Result<[SpectralField; 6]> {
    let (d, b) = (p.delta, p.beta);
    let inv = lambda_pow(u, -1.0)?;
    let ux = dx(u);
    let u_sq = product(u, u);
    let b3 = if b == 0.0 {
        SpectralField::zeros(u.grid())
    } else {
        lambda(&comm_h(&inv, &lambda_pow_unchecked(u, 2.0))).scale(b)
    };
    Ok([
        // 2uuₓ = ∂ₓ(u²) keeps the mean exactly zero.
        dx(&u_sq),
        lambda(&comm_h(&inv, u)),
        b3,
        lambda(&comm_h(u, &ux)).scale(-d),
        dxx(&u_sq).scale(0.5 * d),
        lambda(&comm_dxx(&inv, u)).scale(d),
    ])
}

/// Nonlinear part `-ε𝒩{…}` of the unidirectional equation.
pub fn uni_rhs_nonlinear(
    u: &SpectralField,
    p: &ModelParams,
    guard: ResolutionGuard,
) -> Result<SpectralField> {
    if !u.is_zero_mean() {
        return Err(CoreError::Domain(format!(
            "unidirectional state has nonzero mean {}",
            u.mean()
        )));
    }
    guard.check(u)?;
    let terms = uni_brace_terms(u, p)?;
    let mut brace = SpectralField::zeros(u.grid());
    for t in &terms {
        brace += t;
    }
    Ok(op_n(&brace, p).scale(-p.epsilon))
}

/// Linear part of the unidirectional equation in its split form
/// `𝒩uₓ + 2δ𝒩uₓₓ + 𝒩ℋu - β𝒫ℋ∂ₓ²u + βδ𝒫Λ∂ₓ²u + δ²𝒫∂ₓ³u - δ³𝒫∂ₓ⁴u`.
///
/// Modewise this is `-λ(k) û(k)`.
pub fn uni_split_linear(u: &SpectralField, p: &ModelParams) -> Result<SpectralField> {
    if !u.is_zero_mean() {
        return Err(CoreError::Domain(format!(
            "unidirectional state has nonzero mean {}",
            u.mean()
        )));
    }
    let (d, b) = (p.delta, p.beta);
    let i = Complex64::new(0.0, 1.0);
    Ok(apply_multiplier(u, |k| {
        let kf = k as f64;
        let nk = n_symbol(k, d);
        let pk = p_symbol(k, d);
        let hk = Complex64::new(0.0, -sgn(k));
        let ik = i * kf;
        let k2 = kf * kf;
        nk * ik + nk * (2.0 * d * -k2) + nk * hk - hk * (b * -k2 * pk)
            + Complex64::new(b * d * kf.abs() * -k2 * pk, 0.0)
            + ik.powu(3) * (d * d * pk)
            - Complex64::new(d.powi(3) * k2 * k2 * pk, 0.0)
    }))
}

/// One Fourier mode of an explicit initial condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeSpec {
    pub k: i64,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

/// Initial-data presets. All produce zero-mean real fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialPreset {
    /// Identically zero.
    Zero,
    /// `amplitude · cos(kx)`.
    SingleMode { k: i64, amplitude: f64 },
    /// `a1 cos(k1 x) + a2 cos(k2 x)`.
    TwoMode { k1: i64, a1: f64, k2: i64, a2: f64 },
    /// Random phases, modulus `amplitude · r · e^{-decay·k}` with `r ∈ [0.5, 1)`.
    RandomSmooth { amplitude: f64, decay: f64, seed: u64 },
    /// Explicit `f̂(k)`; entries with `k < 0` must be conjugates of their `k > 0` partners.
    Modes { modes: Vec<ModeSpec> },
}

/// Builds initial data on `grid` from a preset.
pub fn make_initial(preset: &InitialPreset, grid: &Grid) -> Result<SpectralField> {
    let check_k = |k: i64| -> Result<()> {
        if k == 0 {
            return Err(CoreError::Config(
                "initial data must have zero mean (mode k = 0 requested)".into(),
            ));
        }
        if k.abs() > grid.k_max() {
            return Err(CoreError::Config(format!(
                "mode {k} outside the resolved band |k| <= {} of a {}-point grid",
                grid.k_max(),
                grid.n_modes()
            )));
        }
        Ok(())
    };
    let cos_mode = |field: &mut SpectralField, k: i64, a: f64| {
        let k = k.abs();
        let c = field.coeff(k) + Complex64::new(a / 2.0, 0.0);
        field.set_pair(k, c);
    };
    let mut field = SpectralField::zeros(grid);
    match preset {
        InitialPreset::Zero => {}
        InitialPreset::SingleMode { k, amplitude } => {
            check_k(*k)?;
            cos_mode(&mut field, *k, *amplitude);
        }
        InitialPreset::TwoMode { k1, a1, k2, a2 } => {
            check_k(*k1)?;
            check_k(*k2)?;
            cos_mode(&mut field, *k1, *a1);
            cos_mode(&mut field, *k2, *a2);
        }
        InitialPreset::RandomSmooth {
            amplitude,
            decay,
            seed,
        } => {
            if !(decay.is_finite() && *decay >= 0.0) {
                return Err(CoreError::Config(format!("decay must be >= 0, got {decay}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for k in 1..=grid.k_max() {
                let r: f64 = rng.gen_range(0.5..1.0);
                let theta: f64 = rng.gen_range(0.0..2.0 * PI);
                let modulus = amplitude * r * (-decay * k as f64).exp();
                field.set_pair(k, Complex64::from_polar(modulus, theta));
            }
        }
        InitialPreset::Modes { modes } => {
            for m in modes {
                if m.k == 0 && (m.re != 0.0 || m.im != 0.0) {
                    return Err(CoreError::Config(
                        "initial data must have zero mean (nonzero k = 0 coefficient)".into(),
                    ));
                }
                if m.k == 0 {
                    continue;
                }
                check_k(m.k)?;
            }
            for m in modes.iter().filter(|m| m.k > 0) {
                field.set_pair(m.k, Complex64::new(m.re, m.im));
            }
            for m in modes.iter().filter(|m| m.k < 0) {
                let given = Complex64::new(m.re, m.im);
                let partner = modes.iter().find(|q| q.k == -m.k);
                match partner {
                    Some(q) if Complex64::new(q.re, -q.im) != given => {
                        return Err(CoreError::Config(format!(
                            "modes {} and {} are not complex conjugates",
                            q.k, m.k
                        )))
                    }
                    Some(_) => {}
                    None => field.set_pair(-m.k, given.conj()),
                }
            }
        }
    }
    if !field.is_finite() {
        return Err(CoreError::Config("initial data is not finite".into()));
    }
    Ok(field)
}
