//! Ground-state energy `E(Z) = E_TF(Z) + (½ + s(γ)) Z²` and its comparison
//! with tabulated atomic energies.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hydrogenic::Coupling;
use crate::report::{format_optional, format_sig};
use crate::shift::{schwinger_coefficient, shift};
use crate::thomas_fermi::{tf_energy, TfSolution};

/// CSV header of an empirical energy table.
pub const ENERGY_HEADER: &str = "Z,E_total_Ha";
/// CSV header of a reference (e.g. Dirac-Fock) energy table.
pub const REFERENCE_HEADER: &str = "Z,E_ref_Ha";
pub const COMPARISON_HEADER: &str = "Z,gamma,empirical_q,model_q,schwinger_q,reference_q";

/// Total electronic energy of the neutral atom with nuclear charge `z`, in
/// Hartree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NistRecord {
    pub z: u32,
    pub e_total: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    alpha: f64,
}

impl PhysicalConstants {
    pub const DEFAULT_ALPHA: f64 = 7.297_352_569_3e-3;

    /// Requires `0 < alpha < 0.01`.
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha < 0.01 {
            Ok(Self { alpha })
        } else {
            Err(Error::OutOfRange {
                what: "fine-structure constant",
                value: alpha,
                min: 0.0,
                max: 0.01,
            })
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            alpha: Self::DEFAULT_ALPHA,
        }
    }
}

/// One element of the comparison. `model_q` is absent when `γ = αZ ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    #[serde(rename = "Z")]
    pub z: u32,
    pub gamma: f64,
    pub empirical_q: f64,
    pub model_q: Option<f64>,
    pub schwinger_q: f64,
    pub reference_q: Option<f64>,
}

impl ComparisonRow {
    /// Set when the coupling leaves the domain of the model.
    pub fn flagged(&self) -> bool {
        self.model_q.is_none()
    }
}

/// `E_TF(1) Z^{7/3} + (½ + s(γ)) Z²`.
pub fn predict_energy(z: f64, g: Coupling, tf: &TfSolution, tol: f64) -> Result<f64> {
    let thomas_fermi = tf_energy(z, tf)?;
    let s = shift(g, tol)?;
    Ok(thomas_fermi + (0.5 + s.value) * z * z)
}

fn parse_error(line: u64, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parse a two-column energy table. The header must be `Z,E_total_Ha` or
/// `Z,E_ref_Ha`; lines starting with `#` are ignored. Output is sorted by Z.
pub fn ingest_energy_table(source: &str) -> Result<Vec<NistRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .has_headers(false)
        .flexible(true)
        .from_reader(source.as_bytes());
    let mut records: Vec<(NistRecord, u64)> = Vec::new();
    let mut header_seen = false;
    for row in reader.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        if row.iter().all(str::is_empty) {
            continue;
        }
        if !header_seen {
            let header: Vec<&str> = row.iter().collect();
            let expected: Vec<Vec<&str>> = [ENERGY_HEADER, REFERENCE_HEADER]
                .iter()
                .map(|h| h.split(',').collect())
                .collect();
            if !expected.contains(&header) {
                return Err(parse_error(
                    line,
                    format!("expected header `{ENERGY_HEADER}` or `{REFERENCE_HEADER}`"),
                ));
            }
            header_seen = true;
            continue;
        }
        if row.len() != 2 {
            return Err(parse_error(
                line,
                format!("expected 2 fields, found {}", row.len()),
            ));
        }
        let z: u32 = row[0]
            .parse()
            .map_err(|_| parse_error(line, format!("invalid nuclear charge `{}`", &row[0])))?;
        if z == 0 {
            return Err(parse_error(line, "nuclear charge must be at least 1"));
        }
        let e_total: f64 = row[1]
            .parse()
            .map_err(|_| parse_error(line, format!("invalid energy `{}`", &row[1])))?;
        if !e_total.is_finite() {
            return Err(parse_error(
                line,
                format!("energy must be finite, got {e_total}"),
            ));
        }
        if e_total >= 0.0 {
            return Err(parse_error(
                line,
                format!("energy must be negative, got {e_total}"),
            ));
        }
        if let Some((_, first)) = records.iter().find(|(r, _)| r.z == z) {
            return Err(parse_error(
                line,
                format!("duplicate Z = {z} (first on line {first})"),
            ));
        }
        records.push((NistRecord { z, e_total }, line));
    }
    if !header_seen {
        return Err(parse_error(1, format!("missing header `{ENERGY_HEADER}`")));
    }
    let mut records: Vec<NistRecord> = records.into_iter().map(|(r, _)| r).collect();
    records.sort_by_key(|r| r.z);
    Ok(records)
}

/// [`ingest_energy_table`] on a file.
pub fn read_energy_table(path: &Path) -> Result<Vec<NistRecord>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    ingest_energy_table(&text)
}

/// Emit records under `header` with round-trip float formatting.
pub fn emit_energy_table(records: &[NistRecord], header: &str) -> String {
    let mut out = String::with_capacity(16 * (records.len() + 1));
    out.push_str(header);
    out.push('\n');
    for r in records {
        out.push_str(&format!("{},{:?}\n", r.z, r.e_total));
    }
    out
}

/// One row per record, ascending in Z. `γ = αZ`; `model_q = ½ + s(γ)` only
/// for `γ < 1`.
pub fn comparison_table(
    records: &[NistRecord],
    reference: Option<&[NistRecord]>,
    constants: PhysicalConstants,
    tf: &TfSolution,
    tol: f64,
) -> Result<Vec<ComparisonRow>> {
    let mut sorted = records.to_vec();
    sorted.sort_by_key(|r| r.z);
    let schwinger = schwinger_coefficient();
    sorted
        .par_iter()
        .map(|rec| {
            let z = f64::from(rec.z);
            let z2 = z * z;
            let gamma = constants.alpha * z;
            let e_tf = tf_energy(z, tf)?;
            let model_q = match Coupling::new(gamma) {
                Ok(g) => Some(0.5 + shift(g, tol)?.value),
                Err(_) => None,
            };
            let reference_q = reference
                .and_then(|refs| refs.iter().find(|r| r.z == rec.z))
                .map(|r| (r.e_total - e_tf) / z2);
            Ok(ComparisonRow {
                z: rec.z,
                gamma,
                empirical_q: (rec.e_total - e_tf) / z2,
                model_q,
                schwinger_q: 0.5 + schwinger * gamma * gamma,
                reference_q,
            })
        })
        .collect()
}

/// CSV with header [`COMPARISON_HEADER`]; absent values are empty fields.
pub fn write_comparison_csv<W: Write>(rows: &[ComparisonRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{COMPARISON_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.z,
            format_sig(r.gamma),
            format_sig(r.empirical_q),
            format_optional(r.model_q),
            format_sig(r.schwinger_q),
            format_optional(r.reference_q),
        )?;
    }
    Ok(())
}

/// JSON array of row objects keyed like the CSV header; absent values are
/// `null`.
pub fn comparison_json(rows: &[ComparisonRow]) -> Result<String> {
    Ok(serde_json::to_string_pretty(rows)?)
}
