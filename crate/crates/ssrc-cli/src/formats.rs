//! File formats: state JSON, operator matrix JSON, CSV writers.
//!
//! Numbers are serialized with 17 significant digits so every f64
//! round-trips exactly; CSV uses '.' decimals and ',' separators with one
//! header row, preceded by the `#`-prefixed manifest line. Writes go
//! through a temp file and an atomic rename.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use ssrc_core::fock::SSRCState;
use ssrc_core::numerics::OperatorMatrix;

use crate::error::CliError;
use crate::manifest::RunManifest;

/// 17-significant-digit decimal form; round-trips any finite f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// State file: {N, coeffs: [[re, im], …], basis: label}.
#[derive(Debug, Serialize, Deserialize)]
pub struct StateFile {
    #[serde(rename = "N")]
    pub n_total: usize,
    pub coeffs: Vec<[f64; 2]>,
    pub basis: String,
    pub manifest: Option<RunManifest>,
}

impl StateFile {
    pub fn from_state(state: &SSRCState, basis: &str, manifest: RunManifest) -> Self {
        StateFile {
            n_total: state.n_total(),
            coeffs: state.coeffs().iter().map(|c| [c.re, c.im]).collect(),
            basis: basis.to_string(),
            manifest: Some(manifest),
        }
    }

    /// Validates the normalization invariant on load.
    pub fn into_state(self) -> Result<SSRCState, CliError> {
        let coeffs: Vec<C64> = self.coeffs.iter().map(|&[re, im]| C64::new(re, im)).collect();
        SSRCState::new(self.n_total, coeffs).map_err(CliError::BadInput)
    }
}

pub fn write_state(path: &Path, state: &SSRCState, basis: &str, manifest: RunManifest) -> Result<(), CliError> {
    let file = StateFile::from_state(state, basis, manifest);
    write_json(path, &file)
}

pub fn read_state(path: &Path) -> Result<SSRCState, CliError> {
    let raw = fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    let file: StateFile =
        serde_json::from_str(&raw).map_err(|e| CliError::Parse(path.display().to_string(), e))?;
    file.into_state()
}

/// Dense matrix file: {dim, entries: [[re, im], …]} row-major.
#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn into_matrix(self) -> Result<OperatorMatrix, CliError> {
        if self.entries.len() != self.dim * self.dim {
            return Err(CliError::Malformed(format!(
                "matrix file: expected {} entries, got {}",
                self.dim * self.dim,
                self.entries.len()
            )));
        }
        let mut m = OperatorMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let [re, im] = self.entries[i * self.dim + j];
                m[(i, j)] = C64::new(re, im);
            }
        }
        Ok(m)
    }
}

pub fn read_matrix(path: &Path) -> Result<OperatorMatrix, CliError> {
    let raw = fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    let file: MatrixFile =
        serde_json::from_str(&raw).map_err(|e| CliError::Parse(path.display().to_string(), e))?;
    file.into_matrix()
}

/// Atomic write: temp file in the same directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    {
        let mut f =
            fs::File::create(&tmp).map_err(|e| CliError::Io(tmp.display().to_string(), e))?;
        f.write_all(contents.as_bytes())
            .map_err(|e| CliError::Io(tmp.display().to_string(), e))?;
        f.sync_all()
            .map_err(|e| CliError::Io(tmp.display().to_string(), e))?;
    }
    fs::rename(&tmp, path).map_err(|e| CliError::Io(path.display().to_string(), e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let body = serde_json::to_string_pretty(value).expect("serializable value");
    write_atomic(path, &(body + "\n"))
}

/// CSV with the manifest header line, optional geometry header lines, a
/// column-name row, and 17-digit decimal cells.
pub fn write_csv(
    path: &Path,
    manifest: &RunManifest,
    extra_headers: &[String],
    columns: &[&str],
    rows: impl Iterator<Item = Vec<String>>,
) -> Result<(), CliError> {
    let mut out = String::new();
    out.push_str(&manifest.header_line());
    out.push('\n');
    for header in extra_headers {
        out.push_str("# ");
        out.push_str(header);
        out.push('\n');
    }
    out.push_str(&columns.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    write_atomic(path, &out)
}
