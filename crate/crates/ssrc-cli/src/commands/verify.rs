//! `ssrc verify`: named property suites with per-check residual reports.
//! Exit 0 iff every check passes.

use std::path::PathBuf;

use clap::Args;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use ssrc_core::cvlimit::{run_sweep, Experiment, StateFamily, SweepGrid};
use ssrc_core::discrete::{
    clifford_positivity_scan, weyl_operators, wigner_discrete, CliffordGate, QuditState,
    WeylConvention,
};
use ssrc_core::encoding::{build_encoding, TransformPreset};
use ssrc_core::fock::{relative_phase_x, relative_phase_z, spin_coherent};
use ssrc_core::numerics::OperatorMatrix;
use ssrc_core::plane::{
    plane_negativity, squeezed_vacuum, wigner_plane, PlaneGridSpec, TruncatedModeState, Z_W,
};
use ssrc_core::sphere::{build_kernel, evaluate_field, wigner_sphere, SphereResolution};

use crate::error::CliError;
use crate::formats::write_json;
use crate::manifest::{Conventions, RunManifest};

#[derive(Args)]
pub struct VerifyArgs {
    /// sw-axioms | hw-relations | hudson | appendices
    suite: String,

    /// Photon number for sw-axioms (default 8).
    #[arg(long = "N", default_value_t = 8)]
    n_total: usize,

    /// Comma-separated odd dimensions for hw-relations / hudson.
    #[arg(long, default_value = "3,5,7")]
    d: String,

    /// Smaller grids for the appendix sweeps.
    #[arg(long)]
    quick: bool,

    /// Optional report path; the report also prints to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Check {
    name: String,
    residual: f64,
    threshold: f64,
    pass: bool,
}

#[derive(Serialize)]
struct Report {
    suite: String,
    checks: Vec<Check>,
    pass: bool,
    manifest: RunManifest,
}

fn check(name: impl Into<String>, residual: f64, threshold: f64) -> Check {
    Check {
        name: name.into(),
        residual,
        threshold,
        pass: residual <= threshold,
    }
}

/// Monotone sweeps get a boolean verdict encoded as residual 0/1.
fn check_flag(name: impl Into<String>, ok: bool) -> Check {
    Check {
        name: name.into(),
        residual: if ok { 0.0 } else { 1.0 },
        threshold: 0.5,
        pass: ok,
    }
}

pub fn run(args: VerifyArgs, conv: Conventions) -> Result<(), CliError> {
    let checks = match args.suite.as_str() {
        "sw-axioms" => sw_axioms(args.n_total),
        "hw-relations" => hw_relations(&parse_dims(&args.d)?),
        "hudson" => hudson(&parse_dims(&args.d)?),
        "appendices" => appendices(args.quick),
        other => return Err(CliError::Malformed(format!("unknown suite {other}"))),
    };
    let pass = checks.iter().all(|c| c.pass);
    let mut manifest = RunManifest::new(format!("verify {}", args.suite));
    manifest.conventions = conv;
    if let Some(out) = &args.out {
        manifest.output = out.display().to_string();
    }
    let report = Report {
        suite: args.suite.clone(),
        checks,
        pass,
        manifest,
    };
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    if let Some(out) = &args.out {
        write_json(out, &report)?;
    }
    if pass {
        Ok(())
    } else {
        Err(CliError::VerificationFailed(format!(
            "suite {} has failing checks",
            args.suite
        )))
    }
}

fn parse_dims(spec: &str) -> Result<Vec<usize>, CliError> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Malformed(format!("bad dimension {s}")))
        })
        .collect()
}

fn sw_axioms(n: usize) -> Vec<Check> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
    let set = build_kernel(n).unwrap();
    let res = SphereResolution::default_for(n);
    let mut checks = Vec::new();

    checks.push(check(
        format!("kernel trace = 1 at N={n}"),
        (set.delta0().trace().re - 1.0).abs(),
        1e-8,
    ));
    checks.push(check(
        format!("kernel Hermitian at N={n}"),
        set.delta0().hermiticity_defect(),
        1e-10,
    ));

    let state = spin_coherent(n, 0.9, 1.4);
    let grid = wigner_sphere(&state.density(), &set, res).unwrap();
    checks.push(check(
        format!("normalization at N={n}"),
        (grid.integral() - 1.0).abs(),
        1e-6,
    ));

    let d = n + 1;
    let mut rand_herm = || {
        let mut m = OperatorMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            }
        }
        m.add(&m.adjoint()).scale(C64::new(0.5, 0.0))
    };
    let a = rand_herm();
    let b = rand_herm();
    let fa = evaluate_field(&set, &a, res).unwrap();
    let fb = evaluate_field(&set, &b, res).unwrap();
    let nphi = fa.phis.len();
    let mut overlap = 0.0;
    for (i, &wt) in fa.theta_weights.iter().enumerate() {
        for j in 0..nphi {
            overlap += wt * fa.values[i * nphi + j] * fb.values[i * nphi + j];
        }
    }
    overlap *= fa.phi_weight * fa.measure_factor;
    let expect = a.mul(&b).trace().re;
    checks.push(check(
        format!("traciality at N={n}"),
        (overlap - expect).abs() / expect.abs().max(1.0),
        1e-6,
    ));
    checks
}

fn hw_relations(dims: &[usize]) -> Vec<Check> {
    let mut checks = Vec::new();
    let presets = [
        TransformPreset::Identity,
        TransformPreset::RotPiY,
        TransformPreset::ThetaZHalf,
    ];
    for &d in dims {
        if d % 2 == 0 || d < 3 {
            checks.push(check_flag(format!("d={d} must be odd ≥ 3"), false));
            continue;
        }
        let n = d - 1;
        let plain = ssrc_core::encoding::heisenberg_weyl_residual(
            &relative_phase_x(n),
            &relative_phase_z(n),
        );
        checks.push(check(format!("plain HW residual d={d}"), plain, 1e-9));
        for kp in presets {
            for up in presets {
                match build_encoding(n, kp.matrix(n).unwrap(), up.matrix(n).unwrap()) {
                    Ok(enc) => checks.push(check(
                        format!("HW residual d={d} K={} U={}", kp.name(), up.name()),
                        enc.hw_residual(),
                        1e-9,
                    )),
                    Err(_) => checks.push(check_flag(
                        format!("encoding d={d} K={} U={}", kp.name(), up.name()),
                        false,
                    )),
                }
            }
        }
    }
    checks
}

fn hudson(dims: &[usize]) -> Vec<Check> {
    use CliffordGate::*;
    let mut checks = Vec::new();
    for &d in dims {
        match clifford_positivity_scan(d, &[X, Z, F, QuadraticPhase], 4, WeylConvention::SymmetricHalf)
        {
            Ok(scan) => {
                checks.push(check(
                    format!("Clifford-orbit negativity d={d} ({} states)", scan.states_checked),
                    scan.max_negativity,
                    1e-10,
                ));
                let amps: Vec<C64> = (0..d)
                    .map(|j| {
                        C64::from_polar(
                            1.0 / (d as f64).sqrt(),
                            core::f64::consts::PI / (2 * j + 7) as f64 * (j * j + 1) as f64,
                        )
                    })
                    .collect();
                let pps = weyl_operators(d, WeylConvention::SymmetricHalf).unwrap();
                let neg = wigner_discrete(&QuditState::new(d, amps).unwrap(), &pps)
                    .unwrap()
                    .negativity();
                checks.push(check_flag(
                    format!("non-stabilizer witness d={d} (negativity {neg:.3e} > 1e-3)"),
                    neg > 1e-3,
                ));
            }
            Err(e) => checks.push(check_flag(format!("scan d={d}: {e}"), false)),
        }
    }
    checks
}

fn appendices(quick: bool) -> Vec<Check> {
    // N must keep the α = 1 family inside the ⟨n_a⟩ ≤ 0.1√N regime, so the
    // quick grid starts at 100 and saves time by skipping 1600.
    let ns: Vec<usize> = if quick {
        vec![100, 225, 400]
    } else {
        vec![100, 400, 1600]
    };
    let mut checks = Vec::new();
    let grid = SweepGrid {
        alphas: vec![C64::new(1.0, 0.0)],
        qs: vec![0.5],
        families: vec![StateFamily::Vacuum, StateFamily::Coherent { alpha: C64::new(1.0, 0.0) }],
    };
    for experiment in [
        Experiment::CoherentLimit,
        Experiment::RotationDisplacement,
        Experiment::XxDisplacement,
        Experiment::PeggBarnett,
    ] {
        let records = run_sweep(experiment, &ns, &grid);
        let all_ok = records.iter().all(|r| r.failure.is_none());
        let monotone = records
            .iter()
            .filter(|r| r.error.is_some())
            .all(|r| r.monotone == Some(true));
        checks.push(check_flag(
            format!("{} sweep completed", experiment.name()),
            all_ok,
        ));
        checks.push(check_flag(
            format!("{} monotone over {:?}", experiment.name(), ns),
            monotone,
        ));
    }

    // planar Hudson sanity rides along with the appendix suite
    let vac = TruncatedModeState::vacuum(20);
    let sq = squeezed_vacuum(60, 0.25);
    for (name, st) in [("vacuum", &vac), ("squeezed", &sq)] {
        let spec = PlaneGridSpec::with_points(st.n_max(), 81);
        let neg = plane_negativity(&wigner_plane(st, &spec).unwrap());
        checks.push(check(format!("planar {name} negativity"), neg, 1e-6));
    }
    let fock1 = TruncatedModeState::fock(16, 1).unwrap();
    let neg1 = plane_negativity(
        &wigner_plane(&fock1, &PlaneGridSpec::with_points(16, 81)).unwrap(),
    );
    checks.push(check_flag(
        format!("planar |1⟩ negativity {neg1:.4} > 0.01·Z_W"),
        neg1 > 0.01 * Z_W,
    ));
    checks
}
