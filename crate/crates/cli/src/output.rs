//! Files written for one run: diagnostics CSV, spectral snapshots and a
//! JSON summary.

use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};

use dampwave_core::diagnostics::{fit_decay_rate, sobolev, wiener, DecayFit, FitMode};
use dampwave_core::integrator::{Scheme, State};
use dampwave_core::models::ModelKind;
use dampwave_core::record::{RunRecord, RunStatus, Snapshot, FORMAT_VERSION};
use dampwave_core::ModelParams;
use serde::Serialize;

use crate::config::{Format, Prepared};

pub const DIAGNOSTICS_FILE: &str = "diagnostics.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const SNAPSHOT_DIR: &str = "snapshots";

/// Bytes per binary snapshot record: `i64 k, f64 re, f64 im`, little-endian.
pub const RECORD_BYTES: usize = 24;

/// CSV with a `#` comment block carrying the format version, model, final
/// status and the config that produced it.
pub fn diagnostics_csv(record: &RunRecord, config_source: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("# dampwave diagnostics, format_version = {FORMAT_VERSION}\n"));
    out.push_str(&format!("# model = {}\n", record.kind));
    out.push_str(&format!("# status = {}\n", record.status.name()));
    out.push_str("# config:\n");
    for line in config_source.lines() {
        out.push_str("#   ");
        out.push_str(line);
        out.push('\n');
    }
    out.push_str(&record.csv());
    out
}

pub fn encode_binary(field: &dampwave_core::SpectralField) -> Vec<u8> {
    let mut bytes = Vec::with_capacity(field.coeffs().len() * RECORD_BYTES);
    for (k, c) in field.modes() {
        bytes.extend_from_slice(&k.to_le_bytes());
        bytes.extend_from_slice(&c.re.to_le_bytes());
        bytes.extend_from_slice(&c.im.to_le_bytes());
    }
    bytes
}

/// Inverse of [`encode_binary`]: `(k, re, im)` triples.
#[cfg(test)]
fn decode_binary(bytes: &[u8]) -> Option<Vec<(i64, f64, f64)>> {
    if bytes.len() % RECORD_BYTES != 0 {
        return None;
    }
    let word = |b: &[u8]| <[u8; 8]>::try_from(b).ok();
    bytes
        .chunks_exact(RECORD_BYTES)
        .map(|r| {
            Some((
                i64::from_le_bytes(word(&r[0..8])?),
                f64::from_le_bytes(word(&r[8..16])?),
                f64::from_le_bytes(word(&r[16..24])?),
            ))
        })
        .collect()
}

fn text_dump(snapshot: &Snapshot) -> String {
    let mut out = format!("# t = {}\n# step = {}\n", snapshot.t, snapshot.step);
    for (name, field) in snapshot.components() {
        out.push_str(&format!("# component {name}: k re im\n"));
        for (k, c) in field.modes() {
            out.push_str(&format!("{k} {:e} {:e}\n", c.re, c.im));
        }
    }
    out
}

#[derive(Debug, Serialize)]
struct SidecarComponent {
    name: &'static str,
    file: String,
    records: usize,
}

#[derive(Debug, Serialize)]
struct Sidecar<'a> {
    format_version: u32,
    model: ModelKind,
    n_modes: usize,
    t: f64,
    step: usize,
    layout: &'a str,
    components: Vec<SidecarComponent>,
}

fn write_snapshot(dir: &Path, index: usize, kind: ModelKind, snap: &Snapshot, formats: &[Format]) -> io::Result<()> {
    let stem = format!("snap_{index:04}");
    if formats.contains(&Format::Binary) {
        let mut components = Vec::new();
        for (name, field) in snap.components() {
            let file = format!("{stem}_{name}.bin");
            fs::write(dir.join(&file), encode_binary(field))?;
            components.push(SidecarComponent {
                name,
                file,
                records: field.coeffs().len(),
            });
        }
        let sidecar = Sidecar {
            format_version: FORMAT_VERSION,
            model: kind,
            n_modes: snap.state.grid().n_modes(),
            t: snap.t,
            step: snap.step,
            layout: "little-endian records of (i64 k, f64 re, f64 im) in FFT storage order",
            components,
        };
        write_json(&dir.join(format!("{stem}.json")), &sidecar)?;
    }
    if formats.contains(&Format::Text) {
        fs::write(dir.join(format!("{stem}.txt")), text_dump(snap))?;
    }
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(io::Error::other)?;
    text.push('\n');
    fs::write(path, text)
}

#[derive(Debug, Serialize)]
pub struct FinalNorms {
    pub a0: f64,
    pub h2: f64,
    pub h4: f64,
    pub h6: f64,
}

#[derive(Debug, Serialize)]
pub struct DecaySummary {
    pub window: (f64, f64),
    /// Lower bound on the rate: `δ` for the bidirectional models, `δ/2` for
    /// the unidirectional one.
    pub target_rate: f64,
    pub fit: Option<DecayFit>,
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub format_version: u32,
    pub model: ModelKind,
    pub params: ModelParams,
    pub n_modes: usize,
    pub scheme: Scheme,
    pub dt: f64,
    pub steps_taken: usize,
    pub t_final: f64,
    pub status: RunStatus,
    pub final_norms: FinalNorms,
    pub a0_decay: DecaySummary,
}

pub fn summary(record: &RunRecord, t_final: f64) -> Summary {
    let (f, g) = match &record.final_state {
        State::Bi(s) => (&s.f, Some(&s.ft)),
        State::Uni(u) => (u, None),
    };
    let final_norms = FinalNorms {
        a0: wiener(f, 0.0) + g.map_or(0.0, |g| wiener(g, 0.0)),
        h2: sobolev(f, 2.0),
        h4: sobolev(f, 4.0),
        h6: sobolev(f, 6.0),
    };
    let target_rate = if record.kind.is_bidirectional() {
        record.params.delta
    } else {
        record.params.delta / 2.0
    };
    let window = (t_final / 2.0, t_final);
    let (fit, error) = match fit_decay_rate(&record.a0_series(), window, FitMode::AllSamples) {
        Ok(fit) => (Some(fit), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Summary {
        format_version: FORMAT_VERSION,
        model: record.kind,
        params: record.params,
        n_modes: record.n_modes,
        scheme: record.scheme,
        dt: record.dt,
        steps_taken: record.steps_taken,
        t_final,
        status: record.status.clone(),
        final_norms,
        a0_decay: DecaySummary {
            window,
            target_rate,
            fit,
            error,
        },
    }
}

/// Writes every requested output into `prepared.directory` and returns the
/// files created, summary last.
pub fn write_run(prepared: &Prepared, record: &RunRecord) -> io::Result<Vec<PathBuf>> {
    let dir = &prepared.directory;
    fs::create_dir_all(dir)?;
    let formats = &prepared.config.output.formats;
    let mut written = Vec::new();

    if formats.contains(&Format::Csv) {
        let path = dir.join(DIAGNOSTICS_FILE);
        let mut file = fs::File::create(&path)?;
        file.write_all(diagnostics_csv(record, &prepared.source).as_bytes())?;
        written.push(path);
    }
    if formats.iter().any(|f| matches!(f, Format::Binary | Format::Text)) {
        let snap_dir = dir.join(SNAPSHOT_DIR);
        fs::create_dir_all(&snap_dir)?;
        for (i, snap) in record.snapshots.iter().enumerate() {
            write_snapshot(&snap_dir, i, record.kind, snap, formats)?;
        }
        written.push(snap_dir);
    }
    let path = dir.join(SUMMARY_FILE);
    write_json(&path, &summary(record, prepared.step.t_final))?;
    written.push(path);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dampwave_core::models::{make_initial, InitialPreset};
    use dampwave_core::Grid;

    #[test]
    fn binary_round_trip() {
        let grid = Grid::new(16).unwrap();
        let preset = InitialPreset::RandomSmooth {
            amplitude: 0.1,
            decay: 0.5,
            seed: 3,
        };
        let field = make_initial(&preset, &grid).unwrap();
        let bytes = encode_binary(&field);
        assert_eq!(bytes.len(), 16 * RECORD_BYTES);
        let decoded = decode_binary(&bytes).unwrap();
        for ((k, c), (dk, re, im)) in field.modes().zip(decoded) {
            assert_eq!((k, c.re.to_bits(), c.im.to_bits()), (dk, re.to_bits(), im.to_bits()));
        }
        assert!(decode_binary(&bytes[..23]).is_none());
    }
}
