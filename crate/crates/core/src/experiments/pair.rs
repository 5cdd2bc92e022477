//! Experiments on parametrically coupled pairs: the physical iSWAP and the
//! encoded logical gates.

use std::f64::consts::{FRAC_PI_2, PI};

use serde_json::json;

use super::single::loop_angles;
use super::spec::{req, ExperimentId, ExperimentSpec, GateChoice, PairModelKind};
use super::{axis, grid_points, par_map, RunOptions, SweepResult, TrajectoryResult};
use crate::device::units::{khz, mhz};
use crate::device::{pair_collapse_operators, ErrorModel, PairParams, Subspace};
use crate::dfs::{active_pair_reduction, EncodingKind, LogicalEncoding, LogicalFamily};
use crate::dynamics::{Channel, PairHamiltonian, PairModel, PropagationConfig, States, Trajectory};
use crate::error::{Error, Result};
use crate::gates::{
    dynamic_comparison_gate, ideal_logical_cp, ideal_logical_single, ideal_two_qubit,
    matched_dynamic_pair, CompositeOrder, DynamicKind,
};
use crate::linalg::{Operator, StateVector};
use crate::metrics::{averaged_gate_fidelity_1q, averaged_gate_fidelity_2q};
use crate::schedule::{
    make_cp_schedule, make_logical_single_schedule, make_two_qubit_schedule, repeat_composite,
    GeometricSchedule,
};

/// Pair-space indices of |00⟩, |01⟩, |10⟩, |11⟩.
fn computational_embedding(levels: usize) -> Vec<usize> {
    vec![
        PairParams::index(levels, 0, 0),
        PairParams::index(levels, 0, 1),
        PairParams::index(levels, 1, 0),
        PairParams::index(levels, 1, 1),
    ]
}

/// The iSWAP as an exchange loop with ξ split over `order` repetitions.
fn geometric_iswap(order: CompositeOrder, g_eff: f64) -> Result<(GeometricSchedule, Operator)> {
    let n = order.repetitions();
    let one = make_two_qubit_schedule(FRAC_PI_2, 0.0, FRAC_PI_2 / n as f64, g_eff)?;
    Ok((
        repeat_composite(&one, n)?,
        ideal_two_qubit(FRAC_PI_2, 0.0, FRAC_PI_2),
    ))
}

/// Everything needed to simulate one pair gate.
struct PairRun<'a> {
    pair: PairParams,
    schedule: &'a GeometricSchedule,
    errors: ErrorModel,
    levels: usize,
    kind: PairHamiltonian,
    dt: f64,
}

impl PairRun<'_> {
    fn channels(&self, basis: &[usize], stride: usize) -> Result<Vec<(f64, Channel)>> {
        let model = PairModel::new(
            self.pair,
            self.schedule,
            self.errors,
            self.levels,
            self.kind,
        )?;
        let collapse = pair_collapse_operators(&self.pair, self.levels)?;
        let cfg = PropagationConfig::new(self.dt).with_stride(stride);
        Channel::lindblad_recorded(&model, &collapse, basis, &cfg)
    }

    fn channel(&self, basis: &[usize]) -> Result<Channel> {
        Ok(self.channels(basis, 0)?.pop().expect("final snapshot").1)
    }

    fn fidelity_2q(&self, ideal: &Operator, embedding: &[usize], grid: usize) -> Result<f64> {
        let ch = self.channel(embedding)?;
        Ok(averaged_gate_fidelity_2q(|psi| ch.apply(psi), ideal, embedding, grid)?.value)
    }
}

fn hamiltonian_kind(spec: &ExperimentSpec, subspace: Subspace) -> Result<PairHamiltonian> {
    Ok(match req(spec.device.model, "device.model")? {
        PairModelKind::Full => PairHamiltonian::Full,
        PairModelKind::Effective => PairHamiltonian::Effective(subspace),
    })
}

fn pair_errors(spec: &ExperimentSpec, extra_drift_mhz: f64, eta: Option<f64>) -> ErrorModel {
    ErrorModel {
        drift_detuning: mhz(spec.errors.drift_mhz.unwrap_or(0.0) + extra_drift_mhz),
        sys_eta: eta.unwrap_or_else(|| spec.errors.eta.unwrap_or(0.0)),
        ..ErrorModel::none()
    }
}

/// iSWAP averaged gate fidelity over a grid of the two anharmonicities.
pub fn run_fig5a_sweep(spec: &ExperimentSpec, opts: &RunOptions) -> Result<SweepResult> {
    let axes = vec![axis(spec, "alphaA_MHz")?, axis(spec, "alphaB_MHz")?];
    let (levels, dt, kappa) = (spec.levels()?, spec.dt()?, spec.kappa());
    let grid = req(spec.sweep.grid, "sweep.grid")?;
    let kind = hamiltonian_kind(spec, Subspace::SingleExcitation)?;
    let errors = pair_errors(spec, 0.0, None);
    let embedding = computational_embedding(levels);
    let points = grid_points(&axes);
    let values = par_map(points.len(), opts.workers, |k| {
        let pair = spec.pair(Some((points[k][0], points[k][1])), kappa)?;
        let (schedule, ideal) = geometric_iswap(
            CompositeOrder::T1,
            pair.effective_coupling(Subspace::SingleExcitation),
        )?;
        let run = PairRun {
            pair,
            schedule: &schedule,
            errors,
            levels,
            kind,
            dt,
        };
        Ok(vec![run.fidelity_2q(&ideal, &embedding, grid)?])
    })?;
    let metadata = json!({
        "gate": "iswap",
        "metric": "averaged_gate_fidelity",
        "grid": grid,
        "model": spec.device.model,
    });
    SweepResult::new(spec.experiment, axes, &["fidelity"], values, metadata)
}

/// Gate to run in a pair trajectory: schedule, ideal, input embedding, and
/// whether the gate acts on one (logical) qubit.
struct PairGate {
    schedule: GeometricSchedule,
    ideal: Operator,
    embedding: Vec<usize>,
    single: bool,
    subspace: Subspace,
    label: &'static str,
    encoding: Option<LogicalEncoding>,
}

fn pair_gate(spec: &ExperimentSpec, pair: &PairParams, levels: usize) -> Result<PairGate> {
    match spec.experiment {
        ExperimentId::Fig5b => {
            let (schedule, ideal) = geometric_iswap(
                CompositeOrder::T1,
                pair.effective_coupling(Subspace::SingleExcitation),
            )?;
            Ok(PairGate {
                schedule,
                ideal,
                embedding: computational_embedding(levels),
                single: false,
                subspace: Subspace::SingleExcitation,
                label: "iswap",
                encoding: None,
            })
        }
        ExperimentId::Fig7a => {
            let gate = req(spec.pulse.gate, "pulse.gate")?;
            let (theta, phi, gamma) = loop_angles(gate);
            let enc = LogicalEncoding::new(EncodingKind::SingleLogical, 3)?;
            let reduced = active_pair_reduction(&enc, LogicalFamily::SingleQubit)?;
            let g_eff = pair.effective_coupling(Subspace::SingleExcitation);
            Ok(PairGate {
                schedule: make_logical_single_schedule(theta, phi, gamma, g_eff)?,
                ideal: ideal_logical_single(theta, phi, gamma),
                embedding: reduced.initial_map,
                single: true,
                subspace: Subspace::SingleExcitation,
                label: match gate {
                    GateChoice::Not => "logical_not",
                    GateChoice::Hadamard => "logical_hadamard",
                },
                encoding: Some(enc),
            })
        }
        ExperimentId::Fig7b => {
            let xi = req(spec.pulse.xi, "pulse.xi")?;
            let enc = LogicalEncoding::new(EncodingKind::TwoLogical, 3)?;
            let reduced = active_pair_reduction(&enc, LogicalFamily::ControlPhase)?;
            let g_eff = pair.effective_coupling(Subspace::TwoExcitation);
            Ok(PairGate {
                schedule: make_cp_schedule(xi, g_eff)?,
                ideal: ideal_logical_cp(xi),
                embedding: reduced.initial_map,
                single: false,
                subspace: Subspace::TwoExcitation,
                label: "logical_control_phase",
                encoding: Some(enc),
            })
        }
        id => Err(Error::config(format!(
            "{id} is not a pair trajectory experiment"
        ))),
    }
}

/// Averaged gate fidelity against the final ideal gate at every recorded time.
///
/// Populations and states follow the first input basis state.
pub fn run_pair_trajectory(spec: &ExperimentSpec) -> Result<TrajectoryResult> {
    let levels = spec.levels()?;
    if spec.experiment != ExperimentId::Fig5b && levels != 3 {
        return Err(Error::config(
            "logical-gate experiments need device.levels = 3",
        ));
    }
    let pair = spec.pair(None, spec.kappa())?;
    let gate = pair_gate(spec, &pair, levels)?;
    let run = PairRun {
        pair,
        schedule: &gate.schedule,
        errors: pair_errors(spec, 0.0, None),
        levels,
        kind: hamiltonian_kind(spec, gate.subspace)?,
        dt: spec.dt()?,
    };
    let snaps = run.channels(&gate.embedding, spec.record_stride())?;
    let first = StateVector::basis(gate.embedding.len(), 0);
    let mut times = Vec::with_capacity(snaps.len());
    let mut states = Vec::with_capacity(snaps.len());
    let mut pops = Vec::with_capacity(snaps.len());
    let mut fids = Vec::with_capacity(snaps.len());
    let (samples, grid) = (spec.sweep.samples, spec.sweep.grid);
    for (t, ch) in &snaps {
        let f = if gate.single {
            averaged_gate_fidelity_1q(
                |psi| ch.apply(psi),
                &gate.ideal,
                &gate.embedding,
                req(samples, "sweep.samples")?,
            )?
        } else {
            averaged_gate_fidelity_2q(
                |psi| ch.apply(psi),
                &gate.ideal,
                &gate.embedding,
                req(grid, "sweep.grid")?,
            )?
        };
        let rho = ch.apply(&first)?;
        times.push(*t);
        pops.push(rho.populations());
        states.push(rho);
        fids.push(f.value);
    }
    let metadata = json!({
        "gate": gate.label,
        "metric": "averaged_gate_fidelity",
        "duration_s": gate.schedule.total_time(),
        "final_gate_fidelity": fids.last(),
        "effective_coupling_rad_s": gate.schedule.omega0,
        "modulation_frequency_rad_s": pair.drive_nu,
        "encoding": gate.encoding,
        "input_embedding": gate.embedding,
        "schedule": gate.schedule.to_record(),
    });
    Ok(TrajectoryResult {
        id: spec.experiment,
        trajectory: Trajectory {
            times,
            states: States::Mixed(states),
            populations: pops,
            fidelity_series: Some(fids),
        },
        metadata,
    })
}

/// Geometric versus dynamic iSWAP against a drift of the detuning.
pub(crate) fn run_fig5c(spec: &ExperimentSpec, opts: &RunOptions) -> Result<SweepResult> {
    let axes = vec![axis(spec, "drift_MHz")?];
    let (levels, dt) = (spec.levels()?, spec.dt()?);
    let grid = req(spec.sweep.grid, "sweep.grid")?;
    let kind = hamiltonian_kind(spec, Subspace::SingleExcitation)?;
    let pair = spec.pair(None, spec.kappa())?;
    let (geo, ideal) = geometric_iswap(
        CompositeOrder::T1,
        pair.effective_coupling(Subspace::SingleExcitation),
    )?;
    let (dynamic, dyn_ideal) = dynamic_comparison_gate(DynamicKind::Iswap, geo.total_time(), None)?;
    let dyn_pair = matched_dynamic_pair(&pair, dynamic.omega0)?;
    let embedding = computational_embedding(levels);
    let drifts = axes[0].values.clone();
    let values = par_map(drifts.len(), opts.workers, |k| {
        let errors = pair_errors(spec, drifts[k], None);
        let mut row = Vec::with_capacity(2);
        for (p, schedule, target) in [(pair, &geo, &ideal), (dyn_pair, &dynamic, &dyn_ideal)] {
            let run = PairRun {
                pair: p,
                schedule,
                errors,
                levels,
                kind,
                dt,
            };
            row.push(run.fidelity_2q(target, &embedding, grid)?);
        }
        Ok(row)
    })?;
    let metadata = json!({
        "metric": "averaged_gate_fidelity",
        "duration_s": geo.total_time(),
        "dynamic_beta": dyn_pair.beta(),
    });
    SweepResult::new(
        spec.experiment,
        axes,
        &["geometric", "dynamic"],
        values,
        metadata,
    )
}

/// Dynamic or composite iSWAP under coupling error η and decoherence κ.
pub(crate) fn run_fig6(spec: &ExperimentSpec, opts: &RunOptions) -> Result<SweepResult> {
    let axes = vec![axis(spec, "eta")?, axis(spec, "kappa_kHz")?];
    let (levels, dt) = (spec.levels()?, spec.dt()?);
    let grid = req(spec.sweep.grid, "sweep.grid")?;
    let kind = hamiltonian_kind(spec, Subspace::SingleExcitation)?;
    let base = spec.pair(None, 0.0)?;
    let g_eff = base.effective_coupling(Subspace::SingleExcitation);
    let one_loop = geometric_iswap(CompositeOrder::T1, g_eff)?.0.total_time();
    let (pair, (schedule, ideal)) = match spec.experiment {
        ExperimentId::Fig6a => {
            let gate = dynamic_comparison_gate(DynamicKind::Iswap, one_loop, None)?;
            (matched_dynamic_pair(&base, gate.0.omega0)?, gate)
        }
        ExperimentId::Fig6b => (base, geometric_iswap(CompositeOrder::T1, g_eff)?),
        ExperimentId::Fig6c => (base, geometric_iswap(CompositeOrder::T2, g_eff)?),
        _ => (base, geometric_iswap(CompositeOrder::T3, g_eff)?),
    };
    let embedding = computational_embedding(levels);
    let points = grid_points(&axes);
    let values = par_map(points.len(), opts.workers, |k| {
        let (eta, kappa) = (points[k][0], khz(points[k][1]));
        let mut p = pair;
        for q in [&mut p.qubit_a, &mut p.qubit_b] {
            q.kappa_relax = [kappa, 2.0 * kappa];
            q.kappa_dephase = [kappa, 2.0 * kappa];
        }
        let run = PairRun {
            pair: p,
            schedule: &schedule,
            errors: pair_errors(spec, 0.0, Some(eta)),
            levels,
            kind,
            dt,
        };
        Ok(vec![run.fidelity_2q(&ideal, &embedding, grid)?])
    })?;
    let metadata = json!({
        "metric": "averaged_gate_fidelity",
        "model": spec.device.model,
        "duration_s": schedule.total_time(),
        "loop_time_s": one_loop,
        "composite_phase_per_loop": PI / 2.0 / schedule.composite_n as f64,
    });
    SweepResult::new(spec.experiment, axes, &["fidelity"], values, metadata)
}
