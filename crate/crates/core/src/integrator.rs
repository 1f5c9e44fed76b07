//! Exponential time differencing on the exact linear semigroup.
//!
//! Each retained mode obeys `y' = -L y + N(y)` with `L` the mode's linear
//! operator (a real 2×2 companion matrix for the bidirectional models, the
//! scalar `λ(k)/(2ε)` for the unidirectional one). With `E = e^{-hL}`:
//!
//! ```text
//! ETD1:    y₁ = E y₀ + h φ₁(-hL) N(y₀)
//! ETD-RK2: a  = E y₀ + h φ₁(-hL) N(y₀)
//!          y₁ = a + h φ₂(-hL) (N(a) - N(y₀))
//! ```
//!
//! The linear part is exact for every `h`. Only modes `1 <= k <= N/2 - 1`
//! are advanced; negative modes are written as conjugates, so the mean stays
//! exactly zero and real fields stay exactly real.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::diagnostics::{balance_residual, energy_report, sobolev, wiener, BalanceSample};
use crate::error::{CoreError, Result};
use crate::linear::{BiModeSymbol, Mat2, UniModeSymbol};
use crate::models::{bi_forcing, uni_rhs_nonlinear, BiState, ModelKind, ResolutionGuard};
use crate::params::ModelParams;
use crate::record::{DiagnosticRow, RunRecord, RunStatus, Snapshot};
use crate::spectral::{Grid, SpectralField};

type C = Complex64;

/// Growth of `‖·‖_{A⁰}` over its initial value treated as blow-up.
pub const BLOW_UP_FACTOR: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Etd1,
    EtdRk2,
}

impl Scheme {
    pub fn order(self) -> u32 {
        match self {
            Scheme::Etd1 => 1,
            Scheme::EtdRk2 => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepConfig {
    pub dt: f64,
    pub scheme: Scheme,
    pub t_final: f64,
    /// Enables the resolution guard on every forcing evaluation.
    #[serde(default = "default_true")]
    pub guard: bool,
    /// Drops the nonlinear forcing entirely.
    #[serde(default)]
    pub linear_only: bool,
}

fn default_true() -> bool {
    true
}

impl StepConfig {
    pub fn new(dt: f64, scheme: Scheme, t_final: f64) -> Self {
        Self {
            dt,
            scheme,
            t_final,
            guard: true,
            linear_only: false,
        }
    }

    /// `0.25 min(1, 1/(δ k_max²))`. The scheme is linearly stable for any
    /// step; this only aims at nonlinear accuracy.
    pub fn default_dt(p: &ModelParams, grid: &Grid) -> f64 {
        let k = grid.k_max() as f64;
        0.25 * (1.0f64).min(1.0 / (p.delta * k * k))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(CoreError::Config(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_final.is_finite() && self.t_final >= 0.0) {
            return Err(CoreError::Config(format!(
                "t_final must be >= 0, got {}",
                self.t_final
            )));
        }
        Ok(())
    }

    /// Number of steps and the step that lands exactly on `t_final`.
    pub fn schedule(&self) -> (usize, f64) {
        if self.t_final == 0.0 {
            return (0, self.dt);
        }
        let steps = (self.t_final / self.dt - 1e-9).ceil().max(1.0) as usize;
        (steps, self.t_final / steps as f64)
    }

    fn resolution_guard(&self) -> ResolutionGuard {
        if self.guard {
            ResolutionGuard::default()
        } else {
            ResolutionGuard::Off
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct BiCoeffs {
    prop: Mat2,
    phi1: [f64; 2],
    phi2: [f64; 2],
}

fn apply_mode(m: &Mat2, y: [C; 2]) -> [C; 2] {
    crate::linear::apply(m, y)
}

fn blow_up(t: f64, h: f64, reason: &str) -> CoreError {
    CoreError::BlowUp {
        t: t + h,
        last_good_t: t,
        reason: reason.to_string(),
    }
}

/// Bidirectional stepper with per-mode coefficients computed once.
#[derive(Debug, Clone)]
pub struct BiStepper {
    params: ModelParams,
    kind: ModelKind,
    scheme: Scheme,
    h: f64,
    guard: ResolutionGuard,
    linear_only: bool,
    grid: Grid,
    modes: Vec<BiCoeffs>,
}

impl BiStepper {
    pub fn new(grid: &Grid, p: &ModelParams, kind: ModelKind, scheme: Scheme, h: f64) -> Result<Self> {
        p.validate()?;
        if !kind.is_bidirectional() {
            return Err(CoreError::Config("BiStepper needs a bidirectional model".into()));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(CoreError::Config(format!("dt must be positive, got {h}")));
        }
        let modes = (1..=grid.k_max())
            .map(|k| {
                let sym = BiModeSymbol::new(k, p)?;
                Ok(BiCoeffs {
                    prop: sym.propagator(h),
                    phi1: sym.phi_column(1, h),
                    phi2: sym.phi_column(2, h),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            params: *p,
            kind,
            scheme,
            h,
            guard: ResolutionGuard::default(),
            linear_only: false,
            grid: grid.clone(),
            modes,
        })
    }

    pub fn from_config(grid: &Grid, p: &ModelParams, kind: ModelKind, cfg: &StepConfig) -> Result<Self> {
        cfg.validate()?;
        let mut s = Self::new(grid, p, kind, cfg.scheme, cfg.dt)?;
        s.guard = cfg.resolution_guard();
        s.linear_only = cfg.linear_only;
        Ok(s)
    }

    pub fn with_guard(mut self, guard: ResolutionGuard) -> Self {
        self.guard = guard;
        self
    }

    pub fn linear_only(mut self, on: bool) -> Self {
        self.linear_only = on;
        self
    }

    pub fn dt(&self) -> f64 {
        self.h
    }

    fn forcing(&self, s: &BiState) -> Result<SpectralField> {
        if self.linear_only {
            return Ok(SpectralField::zeros(&self.grid));
        }
        bi_forcing(s, &self.params, self.kind, self.guard)
    }

    /// One step from time `t`.
    pub fn step(&self, state: &BiState, t: f64) -> Result<BiState> {
        self.step_with(state, t, |s| self.forcing(s))
    }

    /// One step with a caller-supplied forcing in place of the model's.
    pub fn step_with(
        &self,
        state: &BiState,
        t: f64,
        forcing: impl Fn(&BiState) -> Result<SpectralField>,
    ) -> Result<BiState> {
        state.grid().check_same(&self.grid)?;
        let n0 = forcing(state)?;
        let mut a = BiState::zeros(&self.grid);
        for (i, m) in self.modes.iter().enumerate() {
            let k = i as i64 + 1;
            let y = apply_mode(&m.prop, [state.f.coeff(k), state.ft.coeff(k)]);
            let nk = n0.coeff(k);
            a.f.set_pair(k, y[0] + nk * m.phi1[0]);
            a.ft.set_pair(k, y[1] + nk * m.phi1[1]);
        }
        let out = match self.scheme {
            Scheme::Etd1 => a,
            Scheme::EtdRk2 => {
                if !a.is_finite() {
                    return Err(blow_up(t, self.h, "non-finite coefficient in the predictor"));
                }
                let n1 = forcing(&a)?;
                let mut out = a.clone();
                for (i, m) in self.modes.iter().enumerate() {
                    let k = i as i64 + 1;
                    let dn = n1.coeff(k) - n0.coeff(k);
                    out.f.set_pair(k, a.f.coeff(k) + dn * m.phi2[0]);
                    out.ft.set_pair(k, a.ft.coeff(k) + dn * m.phi2[1]);
                }
                out
            }
        };
        if !out.is_finite() {
            return Err(blow_up(t, self.h, "non-finite coefficient"));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy)]
struct UniCoeffs {
    prop: C,
    phi1: C,
    phi2: C,
}

/// Unidirectional stepper for `u_t = -λ(k)u/(2ε) + G(u)/(2ε)`.
#[derive(Debug, Clone)]
pub struct UniStepper {
    params: ModelParams,
    scheme: Scheme,
    h: f64,
    guard: ResolutionGuard,
    linear_only: bool,
    grid: Grid,
    modes: Vec<UniCoeffs>,
}

impl UniStepper {
    pub fn new(grid: &Grid, p: &ModelParams, scheme: Scheme, h: f64) -> Result<Self> {
        p.validate()?;
        if !(h.is_finite() && h > 0.0) {
            return Err(CoreError::Config(format!("dt must be positive, got {h}")));
        }
        let modes = (1..=grid.k_max())
            .map(|k| {
                let sym = UniModeSymbol::new(k, p)?;
                Ok(UniCoeffs {
                    prop: sym.propagate(C::new(1.0, 0.0), h),
                    phi1: sym.phi_weight(1, h),
                    phi2: sym.phi_weight(2, h),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            params: *p,
            scheme,
            h,
            guard: ResolutionGuard::default(),
            linear_only: false,
            grid: grid.clone(),
            modes,
        })
    }

    pub fn from_config(grid: &Grid, p: &ModelParams, cfg: &StepConfig) -> Result<Self> {
        cfg.validate()?;
        let mut s = Self::new(grid, p, cfg.scheme, cfg.dt)?;
        s.guard = cfg.resolution_guard();
        s.linear_only = cfg.linear_only;
        Ok(s)
    }

    pub fn with_guard(mut self, guard: ResolutionGuard) -> Self {
        self.guard = guard;
        self
    }

    pub fn linear_only(mut self, on: bool) -> Self {
        self.linear_only = on;
        self
    }

    pub fn dt(&self) -> f64 {
        self.h
    }

    /// `G(u)/(2ε)`, the nonlinear part of `u_t`.
    fn forcing(&self, u: &SpectralField) -> Result<SpectralField> {
        if self.linear_only {
            return Ok(SpectralField::zeros(&self.grid));
        }
        Ok(uni_rhs_nonlinear(u, &self.params, self.guard)?.scale(0.5 / self.params.epsilon))
    }

    pub fn step(&self, u: &SpectralField, t: f64) -> Result<SpectralField> {
        self.step_with(u, t, |v| self.forcing(v))
    }

    /// One step with a caller-supplied nonlinear part of `u_t`.
    pub fn step_with(
        &self,
        u: &SpectralField,
        t: f64,
        forcing: impl Fn(&SpectralField) -> Result<SpectralField>,
    ) -> Result<SpectralField> {
        u.grid().check_same(&self.grid)?;
        if !u.is_zero_mean() {
            return Err(CoreError::Domain(format!(
                "unidirectional state has nonzero mean {}",
                u.mean()
            )));
        }
        let n0 = forcing(u)?;
        let mut a = SpectralField::zeros(&self.grid);
        for (i, m) in self.modes.iter().enumerate() {
            let k = i as i64 + 1;
            a.set_pair(k, m.prop * u.coeff(k) + m.phi1 * n0.coeff(k));
        }
        let out = match self.scheme {
            Scheme::Etd1 => a,
            Scheme::EtdRk2 => {
                if !a.is_finite() {
                    return Err(blow_up(t, self.h, "non-finite coefficient in the predictor"));
                }
                let n1 = forcing(&a)?;
                let mut out = a.clone();
                for (i, m) in self.modes.iter().enumerate() {
                    let k = i as i64 + 1;
                    out.set_pair(k, a.coeff(k) + m.phi2 * (n1.coeff(k) - n0.coeff(k)));
                }
                out
            }
        };
        if !out.is_finite() {
            return Err(blow_up(t, self.h, "non-finite coefficient"));
        }
        Ok(out)
    }
}

/// One bidirectional step of size `cfg.dt` from `t = 0`.
pub fn step_bi(state: &BiState, p: &ModelParams, kind: ModelKind, cfg: &StepConfig) -> Result<BiState> {
    BiStepper::from_config(state.grid(), p, kind, cfg)?.step(state, 0.0)
}

/// One unidirectional step of size `cfg.dt` from `t = 0`.
pub fn step_uni(u: &SpectralField, p: &ModelParams, cfg: &StepConfig) -> Result<SpectralField> {
    UniStepper::from_config(u.grid(), p, cfg)?.step(u, 0.0)
}

/// State of either model family.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Bi(BiState),
    Uni(SpectralField),
}

impl State {
    pub fn grid(&self) -> &Grid {
        match self {
            State::Bi(s) => s.grid(),
            State::Uni(u) => u.grid(),
        }
    }

    /// `‖f‖_{A⁰} + ‖f_t‖_{A⁰}` or `‖u‖_{A⁰}`.
    pub fn a0(&self) -> f64 {
        match self {
            State::Bi(s) => wiener(&s.f, 0.0) + wiener(&s.ft, 0.0),
            State::Uni(u) => wiener(u, 0.0),
        }
    }

    pub fn as_bi(&self) -> Option<&BiState> {
        match self {
            State::Bi(s) => Some(s),
            State::Uni(_) => None,
        }
    }

    pub fn as_uni(&self) -> Option<&SpectralField> {
        match self {
            State::Bi(_) => None,
            State::Uni(u) => Some(u),
        }
    }
}

/// When to record diagnostics and snapshots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObserveConfig {
    /// Diagnostics every `cadence` steps, plus the first and last state.
    pub cadence: usize,
    /// Snapshots every this many steps, plus the first and last state.
    #[serde(default)]
    pub snapshot_every: Option<usize>,
    /// Computes the energy columns (`E, D, I_i`, residual) for bidirectional runs.
    #[serde(default = "default_true")]
    pub energy: bool,
}

impl Default for ObserveConfig {
    fn default() -> Self {
        Self {
            cadence: 1,
            snapshot_every: None,
            energy: true,
        }
    }
}

fn observe(state: &State, t: f64, p: &ModelParams, kind: ModelKind, energy: bool) -> DiagnosticRow {
    let nan = f64::NAN;
    match state {
        State::Bi(s) => {
            let (e, d, i, fp) = if energy {
                let r = energy_report(s, p, kind);
                (r.energy, r.dissipation, r.interactions, r.forcing_pairing)
            } else {
                (nan, nan, [nan; 6], nan)
            };
            DiagnosticRow {
                t,
                a0_f: wiener(&s.f, 0.0),
                a0_ft: wiener(&s.ft, 0.0),
                h2: sobolev(&s.f, 2.0),
                h4: sobolev(&s.f, 4.0),
                h6: sobolev(&s.f, 6.0),
                energy: e,
                dissipation: d,
                interactions: i,
                residual: nan,
                forcing_pairing: fp,
            }
        }
        State::Uni(u) => {
            let h2 = sobolev(u, 2.0);
            DiagnosticRow {
                t,
                a0_f: wiener(u, 0.0),
                a0_ft: nan,
                h2,
                h4: sobolev(u, 4.0),
                h6: sobolev(u, 6.0),
                energy: h2 * h2,
                dissipation: nan,
                interactions: [nan; 6],
                residual: nan,
                forcing_pairing: nan,
            }
        }
    }
}

enum Stepper {
    Bi(BiStepper),
    Uni(UniStepper),
}

impl Stepper {
    fn step(&self, state: &State, t: f64) -> Result<State> {
        match (self, state) {
            (Stepper::Bi(s), State::Bi(x)) => s.step(x, t).map(State::Bi),
            (Stepper::Uni(s), State::Uni(x)) => s.step(x, t).map(State::Uni),
            _ => Err(CoreError::Config("state does not match the model".into())),
        }
    }
}

/// Runs `initial` to `cfg.t_final`.
///
/// Configuration problems are returned as errors. Anything that goes wrong
/// during time stepping ends the run early with a non-completed
/// [`RunStatus`]; the record then holds everything up to the last good state.
pub fn evolve(
    initial: &State,
    p: &ModelParams,
    kind: ModelKind,
    cfg: &StepConfig,
    obs: &ObserveConfig,
) -> Result<RunRecord> {
    cfg.validate()?;
    p.validate()?;
    if obs.cadence == 0 {
        return Err(CoreError::Config("cadence must be >= 1".into()));
    }
    if obs.snapshot_every == Some(0) {
        return Err(CoreError::Config("snapshot_every must be >= 1".into()));
    }
    let grid = initial.grid().clone();
    let (steps, h) = cfg.schedule();
    let stepped = StepConfig { dt: h, ..*cfg };
    let stepper = match (initial, kind.is_bidirectional()) {
        (State::Bi(s), true) => {
            BiState::new(s.f.clone(), s.ft.clone())?;
            Stepper::Bi(BiStepper::from_config(&grid, p, kind, &stepped)?)
        }
        (State::Uni(u), false) => {
            if !u.is_zero_mean() {
                return Err(CoreError::Domain(format!("initial u has nonzero mean {}", u.mean())));
            }
            Stepper::Uni(UniStepper::from_config(&grid, p, &stepped)?)
        }
        _ => {
            return Err(CoreError::Config(format!(
                "initial state does not match model {kind}"
            )))
        }
    };

    let a0_initial = initial.a0();
    let mut state = initial.clone();
    let mut rows = vec![observe(&state, 0.0, p, kind, obs.energy)];
    let mut snapshots = vec![Snapshot { t: 0.0, step: 0, state: state.clone() }];
    let mut status = RunStatus::Completed;
    let mut taken = 0;

    for n in 1..=steps {
        let t_prev = (n - 1) as f64 * h;
        let t = n as f64 * h;
        let next = stepper.step(&state, t_prev).and_then(|s| {
            let a0 = s.a0();
            if a0_initial > 0.0 && a0 > BLOW_UP_FACTOR * a0_initial {
                Err(CoreError::BlowUp {
                    t,
                    last_good_t: t_prev,
                    reason: format!("A0 norm {a0:.3e} exceeds {BLOW_UP_FACTOR:e} x initial {a0_initial:.3e}"),
                })
            } else {
                Ok(s)
            }
        });
        match next {
            Ok(s) => state = s,
            Err(CoreError::BlowUp { t, last_good_t, reason }) => {
                status = RunStatus::BlowUp { t, last_good_t, reason };
                break;
            }
            Err(CoreError::UnderResolved { k, magnitude, .. }) => {
                status = RunStatus::GuardTripped { t: t_prev, k, magnitude };
                break;
            }
            Err(e) => return Err(e),
        }
        taken = n;
        if n % obs.cadence == 0 || n == steps {
            rows.push(observe(&state, t, p, kind, obs.energy));
        }
        if obs.snapshot_every.is_some_and(|m| n % m == 0) {
            snapshots.push(Snapshot { t, step: n, state: state.clone() });
        }
    }

    let t_last = taken as f64 * h;
    if rows.last().map(|r| r.t) != Some(t_last) {
        rows.push(observe(&state, t_last, p, kind, obs.energy));
    }
    if snapshots.last().map(|s| s.step) != Some(taken) {
        snapshots.push(Snapshot { t: t_last, step: taken, state: state.clone() });
    }

    if kind.is_bidirectional() && obs.energy && rows.len() >= 3 {
        let samples: Vec<BalanceSample> = rows
            .iter()
            .map(|r| BalanceSample {
                t: r.t,
                energy: r.energy,
                dissipation: r.dissipation,
                forcing_pairing: r.forcing_pairing,
            })
            .collect();
        for (row, res) in rows.iter_mut().zip(balance_residual(&samples)?) {
            row.residual = res;
        }
    }

    Ok(RunRecord {
        kind,
        params: *p,
        n_modes: grid.n_modes(),
        scheme: cfg.scheme,
        dt: h,
        steps_taken: taken,
        status,
        rows,
        snapshots,
        final_state: state,
    })
}
