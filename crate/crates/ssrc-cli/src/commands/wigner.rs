//! `ssrc wigner`: evaluate a representation of a state onto a grid CSV and
//! a summary JSON (normalization check, negativity, maximum, argmax).

use std::path::{Path, PathBuf};

use clap::Args;
use num_complex::Complex64 as C64;
use serde::Serialize;

use ssrc_core::discrete::{weyl_operators, wigner_discrete, QuditState, WeylConvention};
use ssrc_core::plane::{
    wigner_plane_point, DisplacementEngine, PlaneGrid, PlaneGridSpec, TruncatedModeState, Z_W,
};
use ssrc_core::sphere::{
    build_kernel_with, wigner_sphere, KernelPrefactor, KernelRotation, SphereResolution,
};
use ssrc_core::Error as CoreError;

use crate::error::CliError;
use crate::formats::{fmt_f64, read_state, write_csv, write_json};
use crate::manifest::{Conventions, RunManifest};

#[derive(Args)]
pub struct WignerArgs {
    /// sphere | plane | torus
    geometry: String,

    /// Input state JSON.
    #[arg(long)]
    state: PathBuf,

    /// Output CSV.
    #[arg(long)]
    out: PathBuf,

    /// Summary JSON path; defaults to the CSV path with a .summary.json
    /// extension.
    #[arg(long)]
    summary: Option<PathBuf>,

    /// Polar node count (sphere); default 2N+2.
    #[arg(long = "n-theta")]
    n_theta: Option<usize>,

    /// Azimuthal node count (sphere); default 4N+4.
    #[arg(long = "n-phi")]
    n_phi: Option<usize>,

    /// Grid points per axis (plane); default 201.
    #[arg(long, default_value_t = 201)]
    points: usize,
}

#[derive(Serialize)]
struct Summary {
    geometry: String,
    normalization_check: f64,
    negativity: f64,
    max: f64,
    argmax: Vec<f64>,
    convention_note: String,
    odd_n_caveat: bool,
    manifest: RunManifest,
}

fn summary_path(out: &Path, explicit: &Option<PathBuf>) -> PathBuf {
    explicit
        .clone()
        .unwrap_or_else(|| out.with_extension("summary.json"))
}

/// Geometry incompatibilities surface as the dimension-mismatch exit code.
fn geometry_error(err: CoreError) -> CliError {
    match err {
        CoreError::DimensionMismatch { .. } | CoreError::EvenDimension { .. } => {
            CliError::DimensionMismatch(err)
        }
        other => CliError::from_core(other),
    }
}

pub fn run(args: WignerArgs, conv: Conventions) -> Result<(), CliError> {
    let state = read_state(&args.state)?;
    let mut manifest = RunManifest::new(format!("wigner {}", args.geometry))
        .with_input(args.state.display().to_string())
        .with_output(args.out.display().to_string());
    manifest.conventions = conv.clone();

    match args.geometry.as_str() {
        "sphere" => run_sphere(&args, state, manifest, &conv),
        "plane" => run_plane(&args, state, manifest),
        "torus" => run_torus(&args, state, manifest, &conv),
        other => Err(CliError::Malformed(format!("unknown geometry {other}"))),
    }
}

fn run_sphere(
    args: &WignerArgs,
    state: ssrc_core::fock::SSRCState,
    manifest: RunManifest,
    conv: &Conventions,
) -> Result<(), CliError> {
    let n = state.n_total();
    let prefactor = if conv.kernel_prefactor == "l+1" {
        KernelPrefactor::LPlusOne
    } else {
        KernelPrefactor::TwoLPlusOne
    };
    let rotation = if conv.kernel_rotation == "matched-y" {
        KernelRotation::MatchedYAxis
    } else {
        KernelRotation::XAxis
    };
    let set = build_kernel_with(n, prefactor, rotation).map_err(CliError::from_core)?;
    let mut res = SphereResolution::default_for(n);
    if let Some(nt) = args.n_theta {
        res.n_theta = nt;
    }
    if let Some(np) = args.n_phi {
        res.n_phi = np;
    }
    let grid = wigner_sphere(&state.density(), &set, res).map_err(geometry_error)?;

    let nphi = grid.phis.len();
    let rows = (0..grid.thetas.len()).flat_map(|i| {
        let grid = &grid;
        (0..nphi).map(move |j| {
            vec![
                fmt_f64(grid.thetas[i]),
                fmt_f64(grid.phis[j]),
                fmt_f64(grid.theta_weights[i] * grid.phi_weight),
                fmt_f64(grid.value(i, j)),
            ]
        })
    });
    let geometry_header = serde_json::json!({
        "N": n,
        "measure_factor": set.measure_factor(),
        "prefactor": conv.kernel_prefactor,
        "axis": conv.kernel_rotation,
        "sw_verified": set.sw_verified(),
    })
    .to_string();
    write_csv(
        &args.out,
        &manifest,
        &[geometry_header],
        &["theta", "phi", "weight", "value"],
        rows,
    )?;

    let (tmax, pmax, vmax) = grid.argmax();
    let summary = Summary {
        geometry: "sphere".into(),
        normalization_check: grid.integral(),
        negativity: grid.negativity(),
        max: vmax,
        argmax: vec![tmax, pmax],
        convention_note: format!(
            "measure factor (N+1)/4π = {}, sw_verified = {}",
            set.measure_factor(),
            set.sw_verified()
        ),
        odd_n_caveat: ssrc_core::fock::odd_n_caveat(n),
        manifest,
    };
    write_json(&summary_path(&args.out, &args.summary), &summary)
}

fn run_plane(
    args: &WignerArgs,
    state: ssrc_core::fock::SSRCState,
    manifest: RunManifest,
) -> Result<(), CliError> {
    // reinterpret the two-mode coefficients as a truncated single-mode state
    let truncated = TruncatedModeState::new(state.n_total(), state.coeffs().to_vec(), 1e-9)
        .map_err(geometry_error)?;
    let spec = PlaneGridSpec::with_points(truncated.n_max(), args.points);

    let threads = crate::threads_from_env();
    let grid = if threads <= 1 {
        ssrc_core::plane::wigner_plane(&truncated, &spec).map_err(geometry_error)?
    } else {
        parallel_plane(&truncated, &spec, threads).map_err(geometry_error)?
    };

    let np = grid.ps.len();
    let rows = (0..grid.xs.len()).flat_map(|i| {
        let grid = &grid;
        (0..np).map(move |j| {
            vec![
                fmt_f64(grid.xs[i]),
                fmt_f64(grid.ps[j]),
                fmt_f64(grid.value(i, j)),
            ]
        })
    });
    let geometry_header = serde_json::json!({
        "n_max": grid.working_n_max,
        "Z_W": Z_W,
        "quadrature": "x = (a+a_dagger)/2",
    })
    .to_string();
    write_csv(
        &args.out,
        &manifest,
        &[geometry_header],
        &["x", "p", "value"],
        rows,
    )?;

    let (xm, pm, vm) = grid.max_value();
    let summary = Summary {
        geometry: "plane".into(),
        normalization_check: grid.integral() / Z_W,
        negativity: grid.negativity(),
        max: vm,
        argmax: vec![xm, pm],
        convention_note: format!(
            "x = (a+a†)/2 quadrature units; field integral normalized by Z_W = {Z_W}; working cutoff {}",
            grid.working_n_max
        ),
        odd_n_caveat: false,
        manifest,
    };
    write_json(&summary_path(&args.out, &args.summary), &summary)
}

/// Same field as `wigner_plane`, rows split across worker threads; values
/// land by index so the output is identical for any thread count.
fn parallel_plane(
    state: &TruncatedModeState,
    spec: &PlaneGridSpec,
    threads: usize,
) -> ssrc_core::Result<PlaneGrid> {
    let r_max = spec.max_radius();
    let working = ((4.0 * r_max * r_max) as usize + 8).max(state.n_max());
    let psi = state.resized(working)?;
    let engine = DisplacementEngine::new(working);
    let np = spec.ps.len();
    let nx = spec.xs.len();
    let mut values = vec![0.0f64; nx * np];

    let chunk = nx.div_ceil(threads);
    std::thread::scope(|scope| {
        for (t, slab) in values.chunks_mut(chunk * np).enumerate() {
            let engine = &engine;
            let psi = psi.coeffs();
            let xs = &spec.xs;
            let ps = &spec.ps;
            scope.spawn(move || {
                for (local_i, row) in slab.chunks_mut(np).enumerate() {
                    let x = xs[t * chunk + local_i];
                    for (j, cell) in row.iter_mut().enumerate() {
                        *cell = wigner_plane_point(engine, psi, C64::new(x, ps[j]));
                    }
                }
            });
        }
    });

    Ok(PlaneGrid {
        xs: spec.xs.clone(),
        ps: spec.ps.clone(),
        cell_area: spec.cell_area(),
        values,
        working_n_max: working,
    })
}

fn run_torus(
    args: &WignerArgs,
    state: ssrc_core::fock::SSRCState,
    manifest: RunManifest,
    conv: &Conventions,
) -> Result<(), CliError> {
    let d = state.dim();
    let convention = if conv.weyl == "paper-literal" {
        WeylConvention::PaperLiteral
    } else {
        WeylConvention::SymmetricHalf
    };
    let pps = weyl_operators(d, convention).map_err(geometry_error)?;
    let qudit = QuditState::new(d, state.coeffs().to_vec()).map_err(geometry_error)?;
    let lattice = wigner_discrete(&qudit, &pps).map_err(geometry_error)?;

    let rows = (0..d).flat_map(|n| {
        let lattice = &lattice;
        (0..d).map(move |m| {
            vec![
                n.to_string(),
                m.to_string(),
                fmt_f64(lattice.value(n, m)),
            ]
        })
    });
    let geometry_header = serde_json::json!({
        "d": d,
        "convention": conv.weyl,
    })
    .to_string();
    write_csv(
        &args.out,
        &manifest,
        &[geometry_header],
        &["n", "m", "value"],
        rows,
    )?;

    let mut max = f64::NEG_INFINITY;
    let mut arg = (0usize, 0usize);
    for n in 0..d {
        for m in 0..d {
            if lattice.value(n, m) > max {
                max = lattice.value(n, m);
                arg = (n, m);
            }
        }
    }
    let summary = Summary {
        geometry: "torus".into(),
        normalization_check: lattice.sum(),
        negativity: lattice.negativity(),
        max,
        argmax: vec![arg.0 as f64, arg.1 as f64],
        convention_note: format!(
            "weyl = {}, max imaginary residue {}",
            conv.weyl, lattice.max_imag_residue
        ),
        odd_n_caveat: ssrc_core::fock::odd_n_caveat(state.n_total()),
        manifest,
    };
    write_json(&summary_path(&args.out, &args.summary), &summary)
}
