//! `ssrc sweep`: convergence sweeps from a JSON config onto a record CSV.
//!
//! Failed points become rows with a failure column and leave the exit code
//! at 0; only a malformed config is an error (exit 2).

use std::fs;
use std::path::PathBuf;

use clap::Args;
use num_complex::Complex64 as C64;
use serde::Deserialize;

use ssrc_core::cvlimit::{run_sweep, Experiment, ParamPoint, StateFamily, SweepGrid};

use crate::error::CliError;
use crate::formats::{fmt_f64, write_csv};
use crate::manifest::{Conventions, RunManifest};

#[derive(Args)]
pub struct SweepArgs {
    /// Sweep config JSON.
    #[arg(long)]
    config: PathBuf,

    /// Output CSV.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Deserialize)]
struct SweepConfig {
    /// coherent-limit | rotation-displacement | xx-displacement | pegg-barnett
    experiment: String,
    #[serde(rename = "N_list")]
    n_list: Vec<usize>,
    #[serde(default)]
    alphas: Vec<[f64; 2]>,
    #[serde(default)]
    qs: Vec<f64>,
    #[serde(default)]
    families: Vec<FamilySpec>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum FamilySpec {
    Named(String),
    Coherent { coherent: [f64; 2] },
}

impl FamilySpec {
    fn into_family(self) -> Result<StateFamily, CliError> {
        match self {
            FamilySpec::Named(name) if name == "vacuum" => Ok(StateFamily::Vacuum),
            FamilySpec::Named(other) => {
                Err(CliError::Malformed(format!("unknown family {other}")))
            }
            FamilySpec::Coherent { coherent: [re, im] } => Ok(StateFamily::Coherent {
                alpha: C64::new(re, im),
            }),
        }
    }
}

fn parse_experiment(name: &str) -> Result<Experiment, CliError> {
    match name {
        "coherent-limit" => Ok(Experiment::CoherentLimit),
        "rotation-displacement" => Ok(Experiment::RotationDisplacement),
        "xx-displacement" => Ok(Experiment::XxDisplacement),
        "pegg-barnett" => Ok(Experiment::PeggBarnett),
        other => Err(CliError::Malformed(format!("unknown experiment {other}"))),
    }
}

pub fn run(args: SweepArgs, conv: Conventions) -> Result<(), CliError> {
    let raw = fs::read_to_string(&args.config)
        .map_err(|e| CliError::Io(args.config.display().to_string(), e))?;
    let config: SweepConfig = serde_json::from_str(&raw)
        .map_err(|e| CliError::Parse(args.config.display().to_string(), e))?;
    let experiment = parse_experiment(&config.experiment)?;

    let mut families = Vec::new();
    for f in config.families {
        families.push(f.into_family()?);
    }
    if families.is_empty() {
        families.push(StateFamily::Vacuum);
    }
    let grid = SweepGrid {
        alphas: config
            .alphas
            .iter()
            .map(|&[re, im]| C64::new(re, im))
            .collect(),
        qs: config.qs.clone(),
        families,
    };

    let records = run_sweep(experiment, &config.n_list, &grid);

    let mut manifest = RunManifest::new(format!("sweep {}", config.experiment))
        .with_input(args.config.display().to_string())
        .with_output(args.out.display().to_string());
    manifest.conventions = conv;

    let rows = records.iter().map(|rec| {
        let (alpha_re, alpha_im, q, family) = match rec.param {
            ParamPoint::Alpha(a) => (fmt_f64(a.re), fmt_f64(a.im), String::new(), String::new()),
            ParamPoint::Displacement { q, family } => (
                String::new(),
                String::new(),
                fmt_f64(q),
                family.name().to_string(),
            ),
            ParamPoint::State(family) => (
                String::new(),
                String::new(),
                String::new(),
                family.name().to_string(),
            ),
        };
        vec![
            rec.experiment.name().to_string(),
            rec.n_total.to_string(),
            alpha_re,
            alpha_im,
            q,
            family,
            rec.error.map(fmt_f64).unwrap_or_default(),
            rec.metric.name().to_string(),
            rec.monotone
                .map(|m| m.to_string())
                .unwrap_or_default(),
            rec.failure
                .as_ref()
                .map(|e| format!("\"{e}\""))
                .unwrap_or_default(),
        ]
    });
    write_csv(
        &args.out,
        &manifest,
        &[],
        &[
            "experiment",
            "N",
            "alpha_re",
            "alpha_im",
            "q",
            "family",
            "error",
            "metric",
            "monotone_flag",
            "failure",
        ],
        rows,
    )
}
