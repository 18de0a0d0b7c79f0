//! Continuous-variable limit experiments.
//!
//! Each operation compares an exact two-mode computation against its
//! single-mode contraction and reports the residual as a convergence
//! record: rotated Fock states against coherent states, J_x rotations
//! against quadrature displacements, the x-basis phase ladder against an
//! infinitesimal momentum displacement, and the relative-phase ladder
//! against its truncated (non-unitary) restriction.
//!
//! All error metrics are projective: 2-norms are taken after optimal
//! global phase alignment, and fidelity-based errors use moduli, so every
//! experiment is invariant under a global phase of the input state.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::fock::{
    cv_limit_indicator, jx_eigenbasis, phase_ladder, schwinger_operators, spin_coherent,
    SSRCState, DEFAULT_CV_KAPPA,
};
use crate::math;
use crate::numerics::eig::hermitian_eig;
use crate::numerics::matrix::{phase_aligned_distance, vec_inner, OperatorMatrix};
use crate::plane::{momentum_operator, position_operator, TruncatedModeState};
use crate::{Error, Result};

/// Which limit a record probes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    CoherentLimit,
    RotationDisplacement,
    XxDisplacement,
    PeggBarnett,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::CoherentLimit => "coherent-limit",
            Experiment::RotationDisplacement => "rotation-displacement",
            Experiment::XxDisplacement => "xx-displacement",
            Experiment::PeggBarnett => "pegg-barnett",
        }
    }
}

/// Error metric attached to a record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// 2-norm of the difference after optimal phase alignment.
    NormDeficit,
    /// 1 − |⟨·|·⟩|².
    OneMinusFidelity,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::NormDeficit => "norm-deficit",
            Metric::OneMinusFidelity => "one-minus-fidelity",
        }
    }
}

/// Input state families for the displacement-type experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateFamily {
    Vacuum,
    Coherent { alpha: C64 },
}

impl StateFamily {
    pub fn name(self) -> &'static str {
        match self {
            StateFamily::Vacuum => "vacuum",
            StateFamily::Coherent { .. } => "coherent",
        }
    }

    /// Truncated single-mode representative, with enough headroom that the
    /// declared tail is below 1e−10.
    pub fn build(self, n_max: usize) -> TruncatedModeState {
        match self {
            StateFamily::Vacuum => TruncatedModeState::vacuum(n_max),
            StateFamily::Coherent { alpha } => TruncatedModeState::coherent(n_max, alpha),
        }
    }
}

/// Parameter point of one record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamPoint {
    Alpha(C64),
    Displacement { q: f64, family: StateFamily },
    State(StateFamily),
}

/// One row of a convergence experiment.
#[derive(Debug, Clone)]
pub struct ConvergenceRecord {
    pub experiment: Experiment,
    pub n_total: usize,
    pub param: ParamPoint,
    pub metric: Metric,
    /// The measured error; absent when the point failed its preconditions.
    pub error: Option<f64>,
    pub failure: Option<Error>,
    /// Strictly-decreasing verdict along the sweep's N axis, attached by
    /// [`run_sweep`].
    pub monotone: Option<bool>,
}

impl ConvergenceRecord {
    fn ok(experiment: Experiment, n_total: usize, param: ParamPoint, metric: Metric, error: f64) -> Self {
        ConvergenceRecord {
            experiment,
            n_total,
            param,
            metric,
            error: Some(error),
            failure: None,
            monotone: None,
        }
    }
}

/// Zero-pad a single-mode state into the two-mode space: Σ c_n |n⟩_a|N−n⟩_b.
pub fn embed_single_mode(state: &TruncatedModeState, n_total: usize) -> Result<SSRCState> {
    if state.n_max() > n_total {
        return Err(Error::DimensionMismatch {
            expected: n_total,
            got: state.n_max(),
        });
    }
    let mut coeffs = vec![C64::new(0.0, 0.0); n_total + 1];
    coeffs[..=state.n_max()].copy_from_slice(state.coeffs());
    SSRCState::new(n_total, coeffs)
}

/// 1 − |⟨coherent, truncated to k ≤ N | spin-coherent at θ(α,N)⟩|², with
/// θ(α, N) = 2 arccos √(1 − |α|²/N) and azimuth arg α.
pub fn coherent_limit_error(n_total: usize, alpha: C64) -> Result<ConvergenceRecord> {
    let a2 = alpha.norm_sqr();
    if a2 >= n_total as f64 {
        return Err(Error::AlphaTooLarge {
            alpha_sq: a2,
            n: n_total,
        });
    }
    let theta = 2.0 * math::acos(math::sqrt(1.0 - a2 / n_total as f64));
    let rotated = spin_coherent(n_total, theta, alpha.arg());
    let coherent = TruncatedModeState::coherent(n_total, alpha);
    let overlap = vec_inner(coherent.coeffs(), rotated.coeffs()).norm();
    let error = 1.0 - overlap * overlap;
    Ok(ConvergenceRecord::ok(
        Experiment::CoherentLimit,
        n_total,
        ParamPoint::Alpha(alpha),
        Metric::OneMinusFidelity,
        error,
    ))
}

/// Single-mode working cutoff for a displacement-type comparison.
fn single_mode_cutoff(state: &TruncatedModeState, n_total: usize) -> usize {
    (state.n_max() + 48).min(n_total)
}

/// ‖e^{iJ_x q/√N} ψ_emb − embed(e^{iq(â+â†)/2} ψ)‖ after phase alignment.
///
/// The embedding keeps the second-mode bookkeeping exact; the approximation
/// under test is only the contraction of the rotation to a displacement.
pub fn rotation_displacement_error(
    n_total: usize,
    q: f64,
    state: &TruncatedModeState,
) -> Result<ConvergenceRecord> {
    if state.tail_bound() > 1e-10 {
        return Err(Error::OutOfRange {
            what: "state tail bound must be ≤ 1e−10",
        });
    }
    let sqrt_n = math::sqrt(n_total as f64);
    if q > 0.1 * sqrt_n {
        return Err(Error::OutsideCvRegime {
            mean_na: q,
            bound: 0.1 * sqrt_n,
        });
    }
    let psi_emb = embed_single_mode(state, n_total)?;
    let (jx, _, _) = schwinger_operators(n_total);
    let lhs = hermitian_eig(&jx)?.expi_apply(q / sqrt_n, psi_emb.coeffs());

    let cutoff = single_mode_cutoff(state, n_total);
    let single = state.resized(cutoff)?;
    let x_op = position_operator(cutoff);
    let displaced = hermitian_eig(&x_op)?.expi_apply(q, single.coeffs());
    let mut rhs = vec![C64::new(0.0, 0.0); n_total + 1];
    rhs[..=cutoff].copy_from_slice(&displaced);

    let error = phase_aligned_distance(&lhs, &rhs);
    Ok(ConvergenceRecord::ok(
        Experiment::RotationDisplacement,
        n_total,
        ParamPoint::Displacement {
            q,
            family: family_of(state),
        },
        Metric::NormDeficit,
        error,
    ))
}

/// Best-effort family label for reporting; the experiments only use the
/// coefficients.
fn family_of(state: &TruncatedModeState) -> StateFamily {
    if state
        .coeffs()
        .iter()
        .skip(1)
        .all(|c| c.norm() == 0.0)
    {
        StateFamily::Vacuum
    } else {
        StateFamily::Coherent {
            alpha: C64::new(f64::NAN, f64::NAN),
        }
    }
}

/// ‖X_x ψ_emb − embed(e^{i√(2/N) p̂} ψ)‖ after phase alignment, where X_x
/// is the cyclic index ladder conjugated into the J_x eigenbasis.
pub fn xx_displacement_error(
    n_total: usize,
    state: &TruncatedModeState,
) -> Result<ConvergenceRecord> {
    let psi_emb = embed_single_mode(state, n_total)?;
    let (mean, ok) = cv_limit_indicator(&psi_emb, DEFAULT_CV_KAPPA);
    if !ok {
        return Err(Error::OutsideCvRegime {
            mean_na: mean,
            bound: DEFAULT_CV_KAPPA * math::sqrt(n_total as f64),
        });
    }
    let v = jx_eigenbasis(n_total);
    let ladder = phase_ladder(n_total);
    // X_x ψ = V S (V† ψ)
    let in_x = v.adjoint_matvec(psi_emb.coeffs());
    let shifted = ladder.matvec(&in_x);
    let lhs = v.matvec(&shifted);

    let cutoff = single_mode_cutoff(state, n_total);
    let single = state.resized(cutoff)?;
    let p_op = momentum_operator(cutoff);
    let kicked = hermitian_eig(&p_op)?.expi_apply(math::sqrt(2.0 / n_total as f64), single.coeffs());
    let mut rhs = vec![C64::new(0.0, 0.0); n_total + 1];
    rhs[..=cutoff].copy_from_slice(&kicked);

    let error = phase_aligned_distance(&lhs, &rhs);
    Ok(ConvergenceRecord::ok(
        Experiment::XxDisplacement,
        n_total,
        ParamPoint::State(family_of(state)),
        Metric::NormDeficit,
        error,
    ))
}

/// The truncated phase ladder Σ_{n=0}^{⌊√N⌋} |n+1⟩⟨n|, the non-unitary
/// restriction of the relative-phase ladder to the CV patch.
#[derive(Debug, Clone)]
pub struct PeggBarnettOperator {
    n_total: usize,
    cutoff: usize,
    matrix: OperatorMatrix,
}

impl PeggBarnettOperator {
    pub fn new(n_total: usize) -> Self {
        let cutoff = math::floor(math::sqrt(n_total as f64)) as usize;
        let d = n_total + 1;
        let mut matrix = OperatorMatrix::zeros(d);
        for n in 0..=cutoff.min(n_total - 1) {
            matrix[(n + 1, n)] = C64::new(1.0, 0.0);
        }
        PeggBarnettOperator {
            n_total,
            cutoff,
            matrix,
        }
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.matrix
    }

    /// 𝒫†𝒫 is exactly the projector onto n ≤ cutoff.
    pub fn support_projector(&self) -> OperatorMatrix {
        self.matrix.adjoint().mul(&self.matrix)
    }

    /// Multiplicity of the zero eigenvalue of 𝒫†𝒫: N − ⌊√N⌋.
    pub fn kernel_dimension(&self) -> usize {
        self.n_total - self.cutoff
    }
}

/// ‖X ψ_emb − embed(𝒫 ψ)‖ after phase alignment, X the unitary ladder and
/// 𝒫 its truncation. Below the cutoff the two agree exactly, so the error
/// equals √(mass of ψ beyond the cutoff).
pub fn pegg_barnett_compare(
    n_total: usize,
    state: &TruncatedModeState,
) -> Result<ConvergenceRecord> {
    let psi_emb = embed_single_mode(state, n_total)?;
    let (mean, ok) = cv_limit_indicator(&psi_emb, DEFAULT_CV_KAPPA);
    if !ok {
        return Err(Error::OutsideCvRegime {
            mean_na: mean,
            bound: DEFAULT_CV_KAPPA * math::sqrt(n_total as f64),
        });
    }
    let ladder = phase_ladder(n_total);
    let lhs = ladder.matvec(psi_emb.coeffs());
    let pb = PeggBarnettOperator::new(n_total);
    let rhs = pb.matrix().matvec(psi_emb.coeffs());
    let error = phase_aligned_distance(&lhs, &rhs);
    Ok(ConvergenceRecord::ok(
        Experiment::PeggBarnett,
        n_total,
        ParamPoint::State(family_of(state)),
        Metric::NormDeficit,
        error,
    ))
}

/// Parameter grid for a sweep; the lists that apply depend on the
/// experiment.
#[derive(Debug, Clone)]
pub struct SweepGrid {
    /// Coherent amplitudes (coherent-limit).
    pub alphas: Vec<C64>,
    /// Displacement amplitudes (rotation-displacement).
    pub qs: Vec<f64>,
    /// Input families (rotation-displacement, xx-displacement,
    /// pegg-barnett).
    pub families: Vec<StateFamily>,
}

impl SweepGrid {
    pub fn param_points(&self, experiment: Experiment) -> Vec<ParamPoint> {
        match experiment {
            Experiment::CoherentLimit => {
                self.alphas.iter().map(|&a| ParamPoint::Alpha(a)).collect()
            }
            Experiment::RotationDisplacement => {
                let mut out = Vec::new();
                for &q in &self.qs {
                    for &family in &self.families {
                        out.push(ParamPoint::Displacement { q, family });
                    }
                }
                out
            }
            Experiment::XxDisplacement | Experiment::PeggBarnett => self
                .families
                .iter()
                .map(|&f| ParamPoint::State(f))
                .collect(),
        }
    }
}

/// Default single-mode cutoff for building family states within an
/// N-photon sweep point.
fn family_cutoff(n_total: usize) -> usize {
    n_total.min((math::sqrt(n_total as f64) as usize).max(24))
}

fn run_point(experiment: Experiment, n_total: usize, param: ParamPoint) -> Result<ConvergenceRecord> {
    match (experiment, param) {
        (Experiment::CoherentLimit, ParamPoint::Alpha(alpha)) => {
            coherent_limit_error(n_total, alpha)
        }
        (Experiment::RotationDisplacement, ParamPoint::Displacement { q, family }) => {
            let state = family.build(family_cutoff(n_total));
            let mut rec = rotation_displacement_error(n_total, q, &state)?;
            rec.param = ParamPoint::Displacement { q, family };
            Ok(rec)
        }
        (Experiment::XxDisplacement, ParamPoint::State(family)) => {
            let state = family.build(family_cutoff(n_total));
            let mut rec = xx_displacement_error(n_total, &state)?;
            rec.param = ParamPoint::State(family);
            Ok(rec)
        }
        (Experiment::PeggBarnett, ParamPoint::State(family)) => {
            let state = family.build(family_cutoff(n_total));
            let mut rec = pegg_barnett_compare(n_total, &state)?;
            rec.param = ParamPoint::State(family);
            Ok(rec)
        }
        _ => Err(Error::OutOfRange {
            what: "parameter point does not belong to the experiment",
        }),
    }
}

/// Cartesian product of the grid with N_list; per-point failures become
/// failed records, never abort the sweep. Records come back grouped by
/// parameter point with N ascending, each group carrying a strict-decrease
/// verdict.
pub fn run_sweep(
    experiment: Experiment,
    n_list: &[usize],
    grid: &SweepGrid,
) -> Vec<ConvergenceRecord> {
    let mut ns: Vec<usize> = n_list.to_vec();
    ns.sort_unstable();
    let mut out = Vec::new();
    for param in grid.param_points(experiment) {
        let mut group: Vec<ConvergenceRecord> = Vec::new();
        for &n in &ns {
            match run_point(experiment, n, param) {
                Ok(rec) => group.push(rec),
                Err(err) => group.push(ConvergenceRecord {
                    experiment,
                    n_total: n,
                    param,
                    metric: Metric::NormDeficit,
                    error: None,
                    failure: Some(err),
                    monotone: None,
                }),
            }
        }
        let errors: Vec<f64> = group.iter().filter_map(|r| r.error).collect();
        // strict decrease; consecutive exact zeros count as the attained
        // limit (the vacuum hits some contractions exactly)
        let monotone = errors.len() >= 2
            && errors
                .windows(2)
                .all(|w| w[1] < w[0] || (w[0] == 0.0 && w[1] == 0.0));
        for rec in &mut group {
            if rec.error.is_some() {
                rec.monotone = Some(monotone);
            }
        }
        out.extend(group);
    }
    out
}
