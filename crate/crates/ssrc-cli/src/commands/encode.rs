//! `ssrc encode`: build an encoding from named presets or matrix files and
//! write its report (HW defect, 𝒦 class, phase bookkeeping, basis file).

use std::path::{Path, PathBuf};

use clap::Args;
use serde::Serialize;

use ssrc_core::encoding::{build_encoding, TransformPreset};
use ssrc_core::numerics::OperatorMatrix;

use crate::error::CliError;
use crate::formats::{read_matrix, write_json};
use crate::manifest::{Conventions, RunManifest};

#[derive(Args)]
pub struct EncodeArgs {
    /// Total photon number; the code dimension is d = N+1.
    #[arg(long = "N")]
    n_total: usize,

    /// Physical-frame transform: identity | rot_pi_y | theta_z_half | @matrix.json
    #[arg(long = "K", default_value = "identity")]
    k: String,

    /// Code transform: identity | rot_pi_y | theta_z_half | @matrix.json
    #[arg(long = "U", default_value = "identity")]
    u: String,

    /// Report JSON path.
    #[arg(long)]
    out: PathBuf,

    /// Basis file path; defaults to the report path with a .basis.json
    /// extension.
    #[arg(long = "basis-out")]
    basis_out: Option<PathBuf>,
}

fn resolve_transform(spec: &str, n_total: usize) -> Result<OperatorMatrix, CliError> {
    if let Some(path) = spec.strip_prefix('@') {
        return read_matrix(Path::new(path));
    }
    let preset = match spec {
        "identity" => TransformPreset::Identity,
        "rot_pi_y" => TransformPreset::RotPiY,
        "theta_z_half" => TransformPreset::ThetaZHalf,
        other => {
            return Err(CliError::Malformed(format!(
                "unknown transform preset {other}; use identity, rot_pi_y, theta_z_half, or @file"
            )))
        }
    };
    preset.matrix(n_total).map_err(CliError::BadInput)
}

#[derive(Serialize)]
struct PhaseBookkeeping {
    /// Global phase ω^{N/2} carried by X under the logical relabeling.
    logical_phase: [f64; 2],
    /// X^d = Z^d = this scalar (±1 by N parity).
    order_phase: [f64; 2],
    relabeling: String,
    odd_n_caveat: bool,
}

#[derive(Serialize)]
struct EncodeReport {
    #[serde(rename = "N")]
    n_total: usize,
    d: usize,
    hw_defect: f64,
    kappa_class: String,
    phase_bookkeeping: PhaseBookkeeping,
    basis_path: String,
    /// Index of the largest-modulus coefficient of each computational
    /// basis state; shows where the encoded vacuum and its partners sit.
    basis_peaks: Vec<usize>,
    /// Index n of the peak of K|0⟩_a|N⟩_b: where the transformed frame
    /// puts its vacuum.
    new_vacuum_peak: usize,
    manifest: RunManifest,
}

#[derive(Serialize)]
struct BasisFile {
    #[serde(rename = "N")]
    n_total: usize,
    states: Vec<Vec<[f64; 2]>>,
}

pub fn run(args: EncodeArgs, conv: Conventions) -> Result<(), CliError> {
    let n = args.n_total;
    let k = resolve_transform(&args.k, n)?;
    let u = resolve_transform(&args.u, n)?;
    let enc = build_encoding(n, k, u).map_err(CliError::from_core)?;

    let basis_path = args
        .basis_out
        .clone()
        .unwrap_or_else(|| args.out.with_extension("basis.json"));
    let basis_file = BasisFile {
        n_total: n,
        states: enc
            .basis()
            .iter()
            .map(|s| s.coeffs().iter().map(|c| [c.re, c.im]).collect())
            .collect(),
    };
    write_json(&basis_path, &basis_file)?;

    let basis_peaks = enc
        .basis()
        .iter()
        .map(|s| {
            s.coeffs()
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
                .map(|(i, _)| i)
                .unwrap_or(0)
        })
        .collect();

    let new_vacuum = enc.k_transform().column(0);
    let new_vacuum_peak = new_vacuum
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
        .map(|(i, _)| i)
        .unwrap_or(0);

    let mut manifest = RunManifest::new(format!(
        "encode --N {n} --K {} --U {}",
        args.k, args.u
    ))
    .with_output(args.out.display().to_string());
    manifest.conventions = conv;

    let report = EncodeReport {
        n_total: n,
        d: n + 1,
        hw_defect: enc.hw_residual(),
        kappa_class: enc.kappa_class().name().to_string(),
        phase_bookkeeping: PhaseBookkeeping {
            logical_phase: [enc.logical_phase().re, enc.logical_phase().im],
            order_phase: [enc.order_phase().re, enc.order_phase().im],
            relabeling: "j = (N/2 - n) mod d".into(),
            odd_n_caveat: enc.odd_n(),
        },
        basis_path: basis_path.display().to_string(),
        basis_peaks,
        new_vacuum_peak,
        manifest,
    };
    write_json(&args.out, &report)
}
