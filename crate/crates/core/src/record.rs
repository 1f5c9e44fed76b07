//! Time series and snapshots produced by a run.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::integrator::{Scheme, State};
use crate::models::ModelKind;
use crate::params::ModelParams;
use crate::spectral::SpectralField;

/// Version of the on-disk layout of diagnostics tables and snapshots.
pub const FORMAT_VERSION: u32 = 1;

/// CSV columns for the bidirectional models.
pub const BI_COLUMNS: [&str; 15] = [
    "t", "A0_f", "A0_ft", "H2", "H4", "H6", "E", "D", "I1", "I2", "I3", "I4", "I5", "I6",
    "residual",
];

/// CSV columns for the unidirectional model.
pub const UNI_COLUMNS: [&str; 14] = [
    "t", "A0_u", "H2", "H4", "H6", "E", "D", "I1", "I2", "I3", "I4", "I5", "I6", "residual",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RunStatus {
    Completed,
    BlowUp { t: f64, last_good_t: f64, reason: String },
    GuardTripped { t: f64, k: i64, magnitude: f64 },
}

impl RunStatus {
    pub fn name(&self) -> &'static str {
        match self {
            RunStatus::Completed => "completed",
            RunStatus::BlowUp { .. } => "blow_up",
            RunStatus::GuardTripped { .. } => "guard_tripped",
        }
    }

    pub fn is_completed(&self) -> bool {
        matches!(self, RunStatus::Completed)
    }
}

/// One observation. Columns that do not apply to the model hold NaN.
///
/// `a0_f`/`h*` refer to `f` for the bidirectional models and to `u` for the
/// unidirectional one. For the unidirectional model `E = ‖u‖²_{H²}` and the
/// balance columns are NaN.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticRow {
    pub t: f64,
    pub a0_f: f64,
    pub a0_ft: f64,
    pub h2: f64,
    pub h4: f64,
    pub h6: f64,
    pub energy: f64,
    pub dissipation: f64,
    pub interactions: [f64; 6],
    pub residual: f64,
    /// `⟨εF, Λ⁸f_t⟩`; not written to CSV.
    pub forcing_pairing: f64,
}

impl DiagnosticRow {
    /// `‖f‖_{A⁰} + ‖f_t‖_{A⁰}`, or `‖u‖_{A⁰}`.
    pub fn a0_total(&self) -> f64 {
        if self.a0_ft.is_nan() {
            self.a0_f
        } else {
            self.a0_f + self.a0_ft
        }
    }

    pub fn values(&self, kind: ModelKind) -> Vec<f64> {
        let mut v = vec![self.t, self.a0_f];
        if kind.is_bidirectional() {
            v.push(self.a0_ft);
        }
        v.extend([self.h2, self.h4, self.h6, self.energy, self.dissipation]);
        v.extend(self.interactions);
        v.push(self.residual);
        v
    }
}

pub fn columns(kind: ModelKind) -> &'static [&'static str] {
    if kind.is_bidirectional() {
        &BI_COLUMNS
    } else {
        &UNI_COLUMNS
    }
}

/// Full spectrum at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub step: usize,
    pub state: State,
}

impl Snapshot {
    /// Named components: `[("f", ..), ("ft", ..)]` or `[("u", ..)]`.
    pub fn components(&self) -> Vec<(&'static str, &SpectralField)> {
        match &self.state {
            State::Bi(s) => vec![("f", &s.f), ("ft", &s.ft)],
            State::Uni(u) => vec![("u", u)],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub kind: ModelKind,
    pub params: ModelParams,
    pub n_modes: usize,
    pub scheme: Scheme,
    /// Step actually used: `t_final` divided into a whole number of steps.
    pub dt: f64,
    pub steps_taken: usize,
    pub status: RunStatus,
    pub rows: Vec<DiagnosticRow>,
    pub snapshots: Vec<Snapshot>,
    /// Last state that passed every check.
    pub final_state: State,
}

impl RunRecord {
    /// `(t, ‖f‖_{A⁰} + ‖f_t‖_{A⁰})` or `(t, ‖u‖_{A⁰})`.
    pub fn a0_series(&self) -> Vec<(f64, f64)> {
        self.rows.iter().map(|r| (r.t, r.a0_total())).collect()
    }

    pub fn energy_series(&self) -> Vec<(f64, f64)> {
        self.rows.iter().map(|r| (r.t, r.energy)).collect()
    }

    /// Rows as CSV, header line first. Floats use the shortest round-trip form.
    pub fn csv(&self) -> String {
        let mut out = columns(self.kind).join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.values(self.kind).iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }
}
