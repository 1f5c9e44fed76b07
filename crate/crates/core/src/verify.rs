//! Quantitative verification suites.
//!
//! Each criterion returns a list of [`Check`]s with the measured value and
//! the threshold it is held to. The CLI `verify` command and the
//! `acceptance` test target both run these.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagnostics::{energy_report, fit_decay_rate, pairing, sobolev, wiener, FitMode};
use crate::error::{CoreError, Result};
use crate::integrator::{evolve, ObserveConfig, Scheme, State, StepConfig};
use crate::linear::{apply, ratio_bound_sweep, uni_lambda, BiModeSymbol};
use crate::models::{
    bi_forcing, bi_terms, make_initial, uni_brace_terms, BiState, InitialPreset, ModelKind,
    ResolutionGuard,
};
use crate::oracle::{bi_terms_naive, expm2, uni_brace_terms_naive};
use crate::params::ModelParams;
use crate::record::{RunRecord, RunStatus};
use crate::spectral::{dealiased_product, lambda_pow, naive_convolution, Grid, SpectralField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Passes when `measured < threshold`.
    Below,
    /// Passes when `measured >= threshold`.
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub id: String,
    pub description: String,
    pub measured: f64,
    pub threshold: f64,
    pub comparison: Comparison,
    pub passed: bool,
}

impl Check {
    fn new(criterion: u8, id: &str, description: impl Into<String>, measured: f64, threshold: f64, comparison: Comparison) -> Self {
        let passed = match comparison {
            Comparison::Below => measured < threshold,
            Comparison::AtLeast => measured >= threshold,
        };
        Self {
            criterion,
            id: id.to_string(),
            description: description.into(),
            measured,
            threshold,
            comparison,
            passed,
        }
    }

    fn below(criterion: u8, id: &str, description: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self::new(criterion, id, description, measured, threshold, Comparison::Below)
    }

    fn at_least(criterion: u8, id: &str, description: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self::new(criterion, id, description, measured, threshold, Comparison::AtLeast)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.comparison {
            Comparison::Below => "<",
            Comparison::AtLeast => ">=",
        };
        write!(
            f,
            "{} [{}] {}: measured {:.6e}, required {} {:.6e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.description,
            self.measured,
            op,
            self.threshold
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Operators,
    Semigroup,
    Inequality,
    DecayBi,
    DecayUni,
    EnergyBalance,
    Convergence,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Operators,
        Suite::Semigroup,
        Suite::Inequality,
        Suite::DecayBi,
        Suite::DecayUni,
        Suite::EnergyBalance,
        Suite::Convergence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Operators => "operators",
            Suite::Semigroup => "semigroup",
            Suite::Inequality => "inequality",
            Suite::DecayBi => "decay_bi",
            Suite::DecayUni => "decay_uni",
            Suite::EnergyBalance => "energy_balance",
            Suite::Convergence => "convergence",
        }
    }

    /// Acceptance criteria covered by the suite.
    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::Operators => &[1],
            Suite::Semigroup => &[2],
            Suite::Inequality => &[3, 4],
            Suite::DecayBi => &[5, 7],
            Suite::DecayUni => &[6],
            Suite::EnergyBalance => &[8],
            Suite::Convergence => &[9, 10],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                CoreError::Config(format!("unknown suite '{s}'; expected one of {}", names.join(", ")))
            })
    }
}

pub fn run_suite(suite: Suite) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &c in suite.criteria() {
        out.extend(criterion(c)?);
    }
    Ok(out)
}

/// Runs acceptance criterion `n` (1 to 10).
pub fn criterion(n: u8) -> Result<Vec<Check>> {
    match n {
        1 => operator_oracles(),
        2 => semigroup_exactness(),
        3 => Ok(ratio_inequality()),
        4 => Ok(uni_symbol_positivity()),
        5 => decay_bi(),
        6 => decay_uni(),
        7 => boundedness(),
        8 => energy_balance(),
        9 => convergence(),
        10 => conservation(),
        _ => Err(CoreError::Config(format!("no acceptance criterion {n}"))),
    }
}

const DELTAS_LINEAR: [f64; 3] = [0.1, 0.5, 1.0];
const BETAS_LINEAR: [f64; 2] = [0.0, 1.0];
const DELTAS_SWEEP: [f64; 4] = [0.1, 0.5, 1.0, 2.0];
const BETAS_SWEEP: [f64; 3] = [0.0, 0.5, 1.0];

/// Random real field with modes `1 <= |k| <= N/3`.
fn band_limited(grid: &Grid, rng: &mut ChaCha8Rng) -> SpectralField {
    let band = grid.n_modes() as i64 / 3;
    let modes: Vec<(i64, Complex64)> = (1..=band)
        .map(|k| (k, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
        .collect();
    SpectralField::from_positive_modes(grid, modes).expect("band fits the grid")
}

fn relative_gap(fast: &SpectralField, slow: &SpectralField) -> f64 {
    fast.max_diff(slow) / slow.max_abs().max(1.0)
}

fn operator_oracles() -> Result<Vec<Check>> {
    let grid = Grid::new(16)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut worst_bi, mut worst_uni, mut worst_prod) = (0.0f64, 0.0f64, 0.0f64);
    for trial in 0..20 {
        let delta = [0.1, 0.5, 1.0, 2.0][trial % 4];
        let beta = [0.0, 0.5, 1.0][trial % 3];
        let p = ModelParams::new(delta, beta, 1.0)?;
        let state = BiState::new(band_limited(&grid, &mut rng), band_limited(&grid, &mut rng))?;
        for (a, b) in bi_terms(&state, &p).iter().zip(&bi_terms_naive(&state, &p)?) {
            worst_bi = worst_bi.max(relative_gap(a, b));
        }
        let u = band_limited(&grid, &mut rng);
        for (a, b) in uni_brace_terms(&u, &p)?.iter().zip(&uni_brace_terms_naive(&u, &p)?) {
            worst_uni = worst_uni.max(relative_gap(a, b));
        }
        let prod = dealiased_product(&state.f, &state.ft)?;
        worst_prod = worst_prod.max(relative_gap(&prod, &naive_convolution(&state.f, &state.ft)?));
    }
    Ok(vec![
        Check::below(1, "1a", "F1..F6 and cubic terms vs convolution oracle (N=16, 20 states)", worst_bi, 1e-11),
        Check::below(1, "1b", "unidirectional brace terms vs convolution oracle (N=16, 20 states)", worst_uni, 1e-11),
        Check::below(1, "1c", "dealiased product vs direct convolution (N=16)", worst_prod, 1e-12),
    ])
}

fn semigroup_exactness() -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut worst_exp, mut worst_comp) = (0.0f64, 0.0f64);
    for &delta in &DELTAS_LINEAR {
        for &beta in &BETAS_LINEAR {
            let p = ModelParams::new(delta, beta, 1.0)?;
            for n in (-64..=64).filter(|&n| n != 0) {
                let sym = BiModeSymbol::new(n, &p)?;
                let l = sym.companion();
                for t in [0.1, 1.0] {
                    let got = sym.propagator(t);
                    let want = expm2(&[[-l[0][0] * t, -l[0][1] * t], [-l[1][0] * t, -l[1][1] * t]]);
                    for i in 0..2 {
                        for j in 0..2 {
                            worst_exp = worst_exp.max((got[i][j] - want[i][j]).abs());
                        }
                    }
                }
                let (s, t) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
                let pair = [
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                ];
                let two = sym.propagate(sym.propagate(pair, s), t);
                let one = apply(&sym.propagator(s + t), pair);
                worst_comp = worst_comp.max((two[0] - one[0]).norm().max((two[1] - one[1]).norm()));
            }
        }
    }
    Ok(vec![
        Check::below(2, "2a", "propagator vs matrix-exponential oracle, |n|<=64, t in {0.1,1}", worst_exp, 1e-11),
        Check::below(2, "2b", "semigroup composition P(t)P(s) = P(t+s)", worst_comp, 1e-12),
    ])
}

fn ratio_inequality() -> Vec<Check> {
    let mut out = Vec::new();
    for &delta in &DELTAS_SWEEP {
        for &beta in &BETAS_SWEEP {
            let p = ModelParams::unchecked(delta, beta, 1.0);
            let report = ratio_bound_sweep(1024, &p).expect("n_max >= 1");
            let note = match report.first_violation {
                Some(n) => format!(", {} violations, first at n={n}", report.violations),
                None => String::new(),
            };
            out.push(Check::at_least(
                3,
                "3",
                format!("eigenvalue ratio bound slack, delta={delta} beta={beta}, n<=1024{note}"),
                report.worst_slack,
                0.0,
            ));
        }
    }
    out
}

fn uni_symbol_positivity() -> Vec<Check> {
    let mut out = Vec::new();
    for &delta in &DELTAS_SWEEP {
        for &beta in &BETAS_SWEEP {
            let p = ModelParams::unchecked(delta, beta, 1.0);
            let margin = (1..=1024i64)
                .flat_map(|k| [k, -k])
                .map(|k| uni_lambda(k, &p).re - delta)
                .fold(f64::INFINITY, f64::min);
            out.push(Check::at_least(
                4,
                "4",
                format!("min Re lambda(k) - delta, delta={delta} beta={beta}, 1<=|k|<=1024"),
                margin,
                0.0,
            ));
        }
    }
    out
}

const DECAY_DELTA: f64 = 0.5;
const DECAY_T: f64 = 20.0;
const DECAY_DT: f64 = 0.01;
const DECAY_CADENCE: usize = 10;

fn small_single_mode(grid: &Grid, amplitude: f64) -> Result<SpectralField> {
    make_initial(&InitialPreset::SingleMode { k: 1, amplitude }, grid)
}

/// The small-data bidirectional run shared by criteria 5 and 7.
pub fn small_data_bi_run() -> Result<RunRecord> {
    let grid = Grid::new(64)?;
    let f0 = small_single_mode(&grid, 1e-3)?;
    let state = BiState::new(f0.clone(), f0)?;
    let p = ModelParams::new(DECAY_DELTA, 0.0, 1.0)?;
    let obs = ObserveConfig {
        cadence: DECAY_CADENCE,
        snapshot_every: None,
        energy: true,
    };
    evolve(&State::Bi(state), &p, ModelKind::BiQuadratic, &StepConfig::new(DECAY_DT, Scheme::EtdRk2, DECAY_T), &obs)
}

/// The small-data unidirectional run shared by criteria 6 and 7.
pub fn small_data_uni_run() -> Result<RunRecord> {
    let grid = Grid::new(64)?;
    let u0 = small_single_mode(&grid, 1e-3)?;
    let p = ModelParams::new(DECAY_DELTA, 0.0, 1.0)?;
    let obs = ObserveConfig {
        cadence: DECAY_CADENCE,
        snapshot_every: Some(DECAY_CADENCE),
        energy: true,
    };
    evolve(&State::Uni(u0), &p, ModelKind::Unidirectional, &StepConfig::new(DECAY_DT, Scheme::EtdRk2, DECAY_T), &obs)
}

fn completed(criterion: u8, id: &str, what: &str, rec: &RunRecord) -> Check {
    Check::at_least(
        criterion,
        id,
        format!("{what} run status ({})", rec.status.name()),
        if rec.status.is_completed() { 1.0 } else { 0.0 },
        1.0,
    )
}

fn decay_bi() -> Result<Vec<Check>> {
    let rec = small_data_bi_run()?;
    let series = rec.a0_series();
    let fit = fit_decay_rate(&series, (DECAY_T / 2.0, DECAY_T), FitMode::AllSamples)?;
    let a0 = series[0].1;
    let envelope = series
        .iter()
        .map(|&(t, v)| (DECAY_DELTA * t).exp() * v / a0)
        .fold(0.0, f64::max);
    Ok(vec![
        completed(5, "5a", "bidirectional small-data", &rec),
        Check::at_least(
            5,
            "5b",
            format!("fitted tail rate of |f|_A0+|f_t|_A0 over [10,20] (R2={:.4})", fit.r_squared),
            fit.rate,
            0.9 * DECAY_DELTA,
        ),
        Check::below(
            5,
            "5c",
            "max_t e^{delta t}(|f|_A0+|f_t|_A0) / initial value (must be <= 2)",
            envelope,
            2.0 + f64::EPSILON,
        ),
    ])
}

fn decay_uni() -> Result<Vec<Check>> {
    let rec = small_data_uni_run()?;
    let fit = fit_decay_rate(&rec.a0_series(), (DECAY_T / 2.0, DECAY_T), FitMode::AllSamples)?;
    let mut out = vec![
        completed(6, "6a", "unidirectional small-data", &rec),
        Check::at_least(
            6,
            "6b",
            format!("fitted tail rate of |u|_A0 over [10,20] (R2={:.4})", fit.r_squared),
            fit.rate,
            0.9 * DECAY_DELTA / 2.0,
        ),
    ];
    for r in [0.0, 1.0] {
        let series: Vec<(f64, f64)> = rec
            .snapshots
            .iter()
            .map(|s| (s.t, sobolev(s.state.as_uni().expect("unidirectional run"), r)))
            .collect();
        let fit = fit_decay_rate(&series, (DECAY_T / 2.0, DECAY_T), FitMode::AllSamples)?;
        out.push(Check::at_least(
            6,
            if r == 0.0 { "6c" } else { "6d" },
            format!("fitted tail rate of |u|_H{r} is positive"),
            fit.rate,
            f64::MIN_POSITIVE,
        ));
    }
    Ok(out)
}

fn energy_growth(rec: &RunRecord) -> f64 {
    let e0 = rec.rows[0].energy;
    rec.rows.iter().map(|r| r.energy / e0).fold(0.0, f64::max)
}

/// Large-data bidirectional run with the resolution guard off.
pub fn large_data_run() -> Result<RunRecord> {
    let grid = Grid::new(64)?;
    let f0 = small_single_mode(&grid, 10.0)?;
    let p = ModelParams::new(DECAY_DELTA, 0.0, 1.0)?;
    let cfg = StepConfig {
        guard: false,
        ..StepConfig::new(DECAY_DT, Scheme::EtdRk2, 5.0)
    };
    let obs = ObserveConfig {
        cadence: DECAY_CADENCE,
        snapshot_every: None,
        energy: false,
    };
    evolve(&State::Bi(BiState::new(f0.clone(), f0)?), &p, ModelKind::BiQuadratic, &cfg, &obs)
}

fn boundedness() -> Result<Vec<Check>> {
    let bi = small_data_bi_run()?;
    let uni = small_data_uni_run()?;
    let large = large_data_run()?;
    let rows_finite = large.rows.iter().all(|r| r.a0_total().is_finite());
    let state_finite = match &large.final_state {
        State::Bi(s) => s.is_finite(),
        State::Uni(u) => u.is_finite(),
    };
    let loud = match large.status {
        RunStatus::Completed | RunStatus::BlowUp { .. } => rows_finite && state_finite,
        RunStatus::GuardTripped { .. } => false,
    };
    Ok(vec![
        Check::below(7, "7a", "sup_t E(t) / E(0), bidirectional small data (must be <= 2)", energy_growth(&bi), 2.0 + f64::EPSILON),
        Check::below(7, "7b", "sup_t |u|_H2^2(t) / |u|_H2^2(0), unidirectional small data (must be <= 2)", energy_growth(&uni), 2.0 + f64::EPSILON),
        Check::at_least(
            7,
            "7c",
            format!("large-data run (amplitude 10) finite or flagged: status {}", large.status.name()),
            if loud { 1.0 } else { 0.0 },
            1.0,
        ),
    ])
}

fn balance_run(dt: f64) -> Result<f64> {
    let grid = Grid::new(32)?;
    let f0 = small_single_mode(&grid, 1e-2)?;
    let p = ModelParams::new(DECAY_DELTA, 0.0, 1.0)?;
    let rec = evolve(
        &State::Bi(BiState::new(f0.clone(), f0)?),
        &p,
        ModelKind::BiQuadratic,
        &StepConfig::new(dt, Scheme::EtdRk2, 2.0),
        &ObserveConfig { cadence: 1, snapshot_every: None, energy: true },
    )?;
    if !rec.status.is_completed() {
        return Err(CoreError::Invariant(format!("balance run ended with {}", rec.status.name())));
    }
    Ok(rec.rows.iter().map(|r| r.residual).filter(|r| !r.is_nan()).fold(0.0, f64::max))
}

fn energy_balance() -> Result<Vec<Check>> {
    let residuals: Vec<f64> = [0.02, 0.01, 0.005].iter().map(|&dt| balance_run(dt)).collect::<Result<_>>()?;
    let order = (residuals[0] / residuals[1]).log2().min((residuals[1] / residuals[2]).log2());

    let grid = Grid::new(16)?;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst = 0.0f64;
    for trial in 0..10 {
        let p = ModelParams::new([0.1, 0.5, 1.0, 2.0][trial % 4], [0.0, 0.5, 1.0][trial % 3], 1.0)?;
        let state = BiState::new(band_limited(&grid, &mut rng).scale(0.05), band_limited(&grid, &mut rng).scale(0.05))?;
        let report = energy_report(&state, &p, ModelKind::BiQuadratic);
        let forcing = bi_forcing(&state, &p, ModelKind::BiQuadratic, ResolutionGuard::Off)?;
        let direct = pairing(&forcing, &lambda_pow(&state.ft, 8.0)?)?;
        let sum: f64 = report.interactions.iter().sum();
        worst = worst.max((sum - direct).abs() / direct.abs().max(1.0));
    }
    Ok(vec![
        Check::at_least(
            8,
            "8a",
            format!(
                "observed order of max |E'/2 + D - sum I| under dt halving (residuals {:.3e}, {:.3e}, {:.3e})",
                residuals[0], residuals[1], residuals[2]
            ),
            order,
            1.9,
        ),
        Check::below(8, "8b", "pairing identity |sum I - <F, Lambda^8 f_t>| (N=16, 10 states)", worst, 1e-10),
    ])
}

fn final_of(rec: RunRecord) -> Result<State> {
    if !rec.status.is_completed() {
        return Err(CoreError::Invariant(format!("convergence run ended with {}", rec.status.name())));
    }
    Ok(rec.final_state)
}

fn state_gap(a: &State, b: &State) -> f64 {
    match (a, b) {
        (State::Bi(x), State::Bi(y)) => x.max_diff(y),
        (State::Uni(x), State::Uni(y)) => x.max_diff(y),
        _ => f64::NAN,
    }
}

fn a0_gap(a: &State, b: &State) -> f64 {
    match (a, b) {
        (State::Bi(x), State::Bi(y)) => wiener(&(&x.f - &y.f), 0.0) + wiener(&(&x.ft - &y.ft), 0.0),
        (State::Uni(x), State::Uni(y)) => wiener(&(x - y), 0.0),
        _ => f64::NAN,
    }
}

fn initial_for(kind: ModelKind, f0: SpectralField) -> Result<State> {
    Ok(if kind.is_bidirectional() {
        State::Bi(BiState::new(f0.clone(), f0)?)
    } else {
        State::Uni(f0)
    })
}

fn quiet() -> ObserveConfig {
    ObserveConfig { cadence: usize::MAX, snapshot_every: None, energy: false }
}

fn convergence() -> Result<Vec<Check>> {
    let p = ModelParams::new(DECAY_DELTA, 0.0, 1.0)?;
    let mut out = Vec::new();
    for (kind, id_t, id_x) in [(ModelKind::BiQuadratic, "9a", "9c"), (ModelKind::Unidirectional, "9b", "9d")] {
        let grid = Grid::new(32)?;
        let initial = initial_for(kind, small_single_mode(&grid, 1e-2)?)?;
        let finals: Vec<State> = [1e-2, 5e-3, 2.5e-3]
            .iter()
            .map(|&dt| final_of(evolve(&initial, &p, kind, &StepConfig::new(dt, Scheme::EtdRk2, 1.0), &quiet())?))
            .collect::<Result<_>>()?;
        let (e1, e2) = (state_gap(&finals[0], &finals[1]), state_gap(&finals[1], &finals[2]));
        out.push(Check::at_least(
            9,
            id_t,
            format!("ETD-RK2 self-convergence order, {kind}, dt in {{1e-2,5e-3,2.5e-3}} (gaps {e1:.3e}, {e2:.3e})"),
            (e1 / e2).log2(),
            1.9,
        ));

        let coarse = Grid::new(32)?;
        let fine = Grid::new(64)?;
        let f0 = make_initial(&InitialPreset::RandomSmooth { amplitude: 1e-3, decay: 1.5, seed: 2024 }, &coarse)?;
        let cfg = StepConfig::new(1e-2, Scheme::EtdRk2, 1.0);
        let a = final_of(evolve(&initial_for(kind, f0.clone())?, &p, kind, &cfg, &quiet())?)?;
        let b = final_of(evolve(&initial_for(kind, f0.resample(&fine))?, &p, kind, &cfg, &quiet())?)?;
        let a_fine = match a {
            State::Bi(s) => State::Bi(BiState { f: s.f.resample(&fine), ft: s.ft.resample(&fine) }),
            State::Uni(u) => State::Uni(u.resample(&fine)),
        };
        out.push(Check::below(
            9,
            id_x,
            format!("A0 difference between N=32 and N=64 at T=1, {kind}"),
            a0_gap(&a_fine, &b),
            1e-8,
        ));
    }
    Ok(out)
}

fn conservation() -> Result<Vec<Check>> {
    let p = ModelParams::new(DECAY_DELTA, 0.5, 1.0)?;
    let grid = Grid::new(32)?;
    let f0 = make_initial(&InitialPreset::RandomSmooth { amplitude: 1e-2, decay: 2.0, seed: 31 }, &grid)?;
    let mut out = Vec::new();
    for (kind, id) in [(ModelKind::BiQuadratic, "10a"), (ModelKind::Unidirectional, "10b")] {
        let obs = ObserveConfig { cadence: usize::MAX, snapshot_every: Some(500), energy: false };
        let rec = evolve(&initial_for(kind, f0.clone())?, &p, kind, &StepConfig::new(0.01, Scheme::EtdRk2, 100.0), &obs)?;
        let (mut mean, mut defect) = (0.0f64, 0.0f64);
        for snap in &rec.snapshots {
            for (_, field) in snap.components() {
                mean = mean.max(field.mean().norm());
                defect = defect.max(field.hermitian_defect());
            }
        }
        out.push(completed(10, id, &format!("{kind} 10^4-step"), &rec));
        out.push(Check::below(10, id, format!("max |mean| over {} steps, {kind}", rec.steps_taken), mean, 1e-14));
        out.push(Check::below(10, id, format!("max Hermitian defect over {} steps, {kind}", rec.steps_taken), defect, 1e-12));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!(matches!("bogus".parse::<Suite>(), Err(CoreError::Config(_))));
        assert!(criterion(0).is_err());
        assert!(criterion(11).is_err());
    }

    #[test]
    fn check_comparisons() {
        assert!(Check::below(1, "x", "", 0.5, 1.0).passed);
        assert!(!Check::below(1, "x", "", 1.0, 1.0).passed);
        assert!(Check::at_least(1, "x", "", 1.0, 1.0).passed);
        assert!(!Check::at_least(1, "x", "", f64::NAN, 1.0).passed);
        assert!(Check::below(1, "x", "d", 0.5, 1.0).to_string().starts_with("PASS [x] d"));
    }

    #[test]
    fn ratio_checks_report_violations() {
        let checks = ratio_inequality();
        assert_eq!(checks.len(), 12);
        let d05 = checks.iter().find(|c| c.description.contains("delta=0.5 beta=0,")).unwrap();
        assert!(!d05.passed);
        assert!(d05.description.contains("first at n=2"));
    }

    #[test]
    fn operator_suite_passes() {
        assert!(criterion(1).unwrap().iter().all(|c| c.passed));
        assert!(criterion(4).unwrap().iter().all(|c| c.passed));
    }
}
