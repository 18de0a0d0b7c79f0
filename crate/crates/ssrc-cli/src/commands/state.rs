//! `ssrc state`: construct a normalized state file.

use std::path::PathBuf;

use clap::Args;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};

use ssrc_core::fock::{spin_coherent, SSRCState};
use ssrc_core::plane::TruncatedModeState;

use crate::error::CliError;
use crate::formats::write_state;
use crate::manifest::{Conventions, RunManifest};

#[derive(Args)]
pub struct StateArgs {
    /// fock | spin-coherent | coherent-truncated | qudit-basis | random-pure
    #[arg(long)]
    family: String,

    /// Total photon number (the state has N+1 coefficients).
    #[arg(long = "N")]
    n_total: usize,

    /// Basis index for fock / qudit-basis.
    #[arg(long)]
    n: Option<usize>,

    /// Polar angle for spin-coherent.
    #[arg(long)]
    theta: Option<f64>,

    /// Azimuth for spin-coherent.
    #[arg(long, default_value_t = 0.0)]
    phi: f64,

    /// Coherent amplitude, real part.
    #[arg(long = "alpha-re", default_value_t = 1.0)]
    alpha_re: f64,

    /// Coherent amplitude, imaginary part.
    #[arg(long = "alpha-im", default_value_t = 0.0)]
    alpha_im: f64,

    /// Seed for random-pure.
    #[arg(long)]
    seed: Option<u64>,

    #[arg(long)]
    out: PathBuf,
}

pub fn run(args: StateArgs, conv: Conventions) -> Result<(), CliError> {
    let n_total = args.n_total;
    let state = match args.family.as_str() {
        "fock" | "qudit-basis" => {
            let idx = args
                .n
                .ok_or_else(|| CliError::Malformed("--n required for this family".into()))?;
            SSRCState::fock(n_total, idx).map_err(CliError::BadInput)?
        }
        "spin-coherent" => {
            let theta = args
                .theta
                .ok_or_else(|| CliError::Malformed("--theta required for spin-coherent".into()))?;
            spin_coherent(n_total, theta, args.phi)
        }
        "coherent-truncated" => {
            let alpha = C64::new(args.alpha_re, args.alpha_im);
            if alpha.norm_sqr() >= n_total as f64 {
                return Err(CliError::Malformed(format!(
                    "|α|² = {} too large for N = {n_total}",
                    alpha.norm_sqr()
                )));
            }
            let truncated = TruncatedModeState::coherent(n_total, alpha);
            SSRCState::new(n_total, truncated.coeffs().to_vec()).map_err(CliError::BadInput)?
        }
        "random-pure" => {
            let seed = args
                .seed
                .ok_or_else(|| CliError::Malformed("--seed required for random-pure".into()))?;
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            let mut coeffs: Vec<C64> = (0..=n_total)
                .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let norm: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            for c in &mut coeffs {
                *c /= norm;
            }
            SSRCState::new(n_total, coeffs).map_err(CliError::BadInput)?
        }
        other => {
            return Err(CliError::Malformed(format!("unknown state family {other}")));
        }
    };

    let mut manifest = RunManifest::new(format!("state --family {} --N {}", args.family, n_total))
        .with_output(args.out.display().to_string());
    manifest.conventions = conv;
    if let Some(seed) = args.seed {
        manifest = manifest.with_seed(seed);
    }
    write_state(&args.out, &state, "z", manifest)
}
