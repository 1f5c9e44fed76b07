//! Norms, the high-order energy balance of the bidirectional models, and
//! decay-rate fitting.
//!
//! Sobolev norms are homogeneous, `‖f‖_{H^s} = ‖Λ^s f‖_{L²}`, with Parseval
//! in the form `‖f‖²_{L²} = 2π Σ|f̂(k)|²`. The energy identity is
//!
//! ```text
//! ½ dE/dt + D = ⟨εF, Λ⁸f_t⟩
//! E = ‖f_t‖²_{H⁴} + β‖f‖²_{H^{5.5}} + δ²‖f‖²_{H⁶} + ‖f‖²_{H^{4.5}}
//! D = 2δ‖f_t‖²_{H⁵}
//! ```
//!
//! and `I_i = ⟨εF_i, Λ⁸f_t⟩` splits the right-hand side term by term.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::models::{bi_terms, BiState, ModelKind};
use crate::params::ModelParams;
use crate::spectral::{abs_pow, lambda_pow_unchecked, SpectralField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormFamily {
    /// `Σ_k |k|^s |f̂(k)|`.
    Wiener,
    /// `sqrt(2π Σ_k |k|^{2s} |f̂(k)|²)`.
    Sobolev,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormSpec {
    pub family: NormFamily,
    pub s: f64,
}

impl NormSpec {
    pub fn wiener(s: f64) -> Self {
        Self { family: NormFamily::Wiener, s }
    }

    pub fn sobolev(s: f64) -> Self {
        Self { family: NormFamily::Sobolev, s }
    }
}

pub fn norm(f: &SpectralField, spec: NormSpec) -> Result<f64> {
    if !spec.s.is_finite() {
        return Err(CoreError::Config(format!("norm order must be finite, got {}", spec.s)));
    }
    if spec.s < 0.0 && !f.is_zero_mean() {
        return Err(CoreError::Domain(format!(
            "negative-order norm of a field with mean {}",
            f.mean()
        )));
    }
    Ok(match spec.family {
        NormFamily::Wiener => wiener(f, spec.s),
        NormFamily::Sobolev => sobolev(f, spec.s),
    })
}

/// `‖f‖_{A^s}`. The mean counts only at `s = 0`.
pub fn wiener(f: &SpectralField, s: f64) -> f64 {
    f.modes()
        .filter(|&(k, _)| k != 0 || s == 0.0)
        .map(|(k, c)| abs_pow(k, s) * c.norm())
        .sum()
}

/// Homogeneous `‖f‖_{H^s}`; the mean never contributes.
pub fn sobolev(f: &SpectralField, s: f64) -> f64 {
    sobolev_sq(f, s).sqrt()
}

fn sobolev_sq(f: &SpectralField, s: f64) -> f64 {
    2.0 * PI
        * f.modes()
            .filter(|&(k, _)| k != 0)
            .map(|(k, c)| abs_pow(k, 2.0 * s) * c.norm_sqr())
            .sum::<f64>()
}

/// `⟨g, h⟩ = ∫ g h dx = 2π Σ_k Re(ĝ(k) conj(ĥ(k)))` for real fields.
pub fn pairing(g: &SpectralField, h: &SpectralField) -> Result<f64> {
    g.grid().check_same(h.grid())?;
    Ok(pairing_unchecked(g, h))
}

fn pairing_unchecked(g: &SpectralField, h: &SpectralField) -> f64 {
    2.0 * PI
        * g.coeffs()
            .iter()
            .zip(h.coeffs())
            .map(|(a, b)| (a * b.conj()).re)
            .sum::<f64>()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Energy {
    pub energy: f64,
    pub dissipation: f64,
}

pub fn energy_bi(state: &BiState, p: &ModelParams) -> Energy {
    let (f, ft) = (&state.f, &state.ft);
    Energy {
        energy: sobolev_sq(ft, 4.0)
            + p.beta * sobolev_sq(f, 5.5)
            + p.delta * p.delta * sobolev_sq(f, 6.0)
            + sobolev_sq(f, 4.5),
        dissipation: 2.0 * p.delta * sobolev_sq(ft, 5.0),
    }
}

/// Energy, dissipation and the forcing pairings at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub energy: f64,
    pub dissipation: f64,
    /// `I₁ … I₆`.
    pub interactions: [f64; 6],
    /// `⟨εF, Λ⁸f_t⟩` for the full forcing of the model (equals `ΣI_i` for
    /// the quadratic model; includes the two `δ²` terms for the cubic one).
    pub forcing_pairing: f64,
}

/// `I_i = ⟨εF_i, Λ⁸f_t⟩` for `i = 1 … 6`.
pub fn energy_terms_i(state: &BiState, p: &ModelParams) -> [f64; 6] {
    energy_report(state, p, ModelKind::BiQuadratic).interactions
}

pub fn energy_report(state: &BiState, p: &ModelParams, kind: ModelKind) -> EnergyReport {
    let Energy { energy, dissipation } = energy_bi(state, p);
    let weight = lambda_pow_unchecked(&state.ft, 8.0);
    let terms = bi_terms(state, p);
    let pairs: Vec<f64> = terms
        .iter()
        .map(|t| p.epsilon * pairing_unchecked(t, &weight))
        .collect();
    let mut interactions = [0.0; 6];
    interactions.copy_from_slice(&pairs[..6]);
    let mut forcing_pairing: f64 = interactions.iter().sum();
    if kind == ModelKind::BiCubic {
        forcing_pairing += pairs[6] + pairs[7];
    }
    EnergyReport {
        energy,
        dissipation,
        interactions,
        forcing_pairing,
    }
}

/// One observation feeding [`balance_residual`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalanceSample {
    pub t: f64,
    pub energy: f64,
    pub dissipation: f64,
    pub forcing_pairing: f64,
}

/// `|½E' + D - ⟨εF, Λ⁸f_t⟩|` at every interior sample, with `E'` from the
/// three-point (second-order, non-uniform) centered difference. The first
/// and last entries are NaN.
pub fn balance_residual(samples: &[BalanceSample]) -> Result<Vec<f64>> {
    if samples.len() < 3 {
        return Err(CoreError::InsufficientData(format!(
            "balance residual needs at least 3 rows, got {}",
            samples.len()
        )));
    }
    let mut out = vec![f64::NAN; samples.len()];
    for j in 1..samples.len() - 1 {
        let (a, b, c) = (&samples[j - 1], &samples[j], &samples[j + 1]);
        let h1 = b.t - a.t;
        let h2 = c.t - b.t;
        if !(h1 > 0.0 && h2 > 0.0) {
            return Err(CoreError::InsufficientData(
                "balance residual needs strictly increasing times".into(),
            ));
        }
        let de = (h1 * h1 * c.energy - h2 * h2 * a.energy + (h2 * h2 - h1 * h1) * b.energy)
            / (h1 * h2 * (h1 + h2));
        out[j] = (0.5 * de + b.dissipation - b.forcing_pairing).abs();
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitMode {
    /// Regression over every sample in the window.
    AllSamples,
    /// Regression over the local maxima only, for oscillating decay.
    EnvelopeMaxima,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    /// `-slope` of `log(value)` against `t`.
    pub rate: f64,
    pub r_squared: f64,
    pub samples: usize,
    pub t_start: f64,
    pub t_end: f64,
    /// The window was cut short at the first nonpositive or non-finite value.
    pub truncated: bool,
}

const MIN_FIT_SAMPLES: usize = 10;

/// Least-squares exponential rate of `series` over `t0 <= t <= t1`.
pub fn fit_decay_rate(series: &[(f64, f64)], window: (f64, f64), mode: FitMode) -> Result<DecayFit> {
    let (t0, t1) = window;
    let mut truncated = false;
    let mut kept = Vec::new();
    for &(t, v) in series.iter().filter(|(t, _)| *t >= t0 && *t <= t1) {
        if !(v > 0.0 && v.is_finite()) {
            truncated = true;
            break;
        }
        kept.push((t, v));
    }
    if kept.len() < MIN_FIT_SAMPLES {
        return Err(CoreError::InsufficientData(format!(
            "decay fit needs at least {MIN_FIT_SAMPLES} positive samples in [{t0}, {t1}], found {}",
            kept.len()
        )));
    }
    let points: Vec<(f64, f64)> = match mode {
        FitMode::AllSamples => kept,
        FitMode::EnvelopeMaxima => {
            let peaks: Vec<(f64, f64)> = kept
                .windows(3)
                .filter(|w| w[1].1 >= w[0].1 && w[1].1 > w[2].1)
                .map(|w| w[1])
                .collect();
            if peaks.len() < 3 {
                return Err(CoreError::InsufficientData(format!(
                    "envelope fit needs at least 3 local maxima, found {}",
                    peaks.len()
                )));
            }
            peaks
        }
    };
    let n = points.len() as f64;
    let mean_t = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1.ln()).sum::<f64>() / n;
    let (mut stt, mut sty, mut syy) = (0.0, 0.0, 0.0);
    for &(t, v) in &points {
        let (dt, dy) = (t - mean_t, v.ln() - mean_y);
        stt += dt * dt;
        sty += dt * dy;
        syy += dy * dy;
    }
    if stt == 0.0 {
        return Err(CoreError::InsufficientData("all fit samples share one time".into()));
    }
    let slope = sty / stt;
    let ss_res = (syy - slope * sty).max(0.0);
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    Ok(DecayFit {
        rate: -slope,
        r_squared,
        samples: points.len(),
        t_start: points[0].0,
        t_end: points[points.len() - 1].0,
        truncated,
    })
}
