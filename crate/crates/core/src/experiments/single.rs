//! Single-transmon experiments: parameter maps, trajectories, drift,
//! composite contests and the leakage comparison.

use std::f64::consts::{FRAC_PI_2, PI};

use serde_json::{json, Value};

use super::spec::{req, ExperimentId, ExperimentSpec, GateChoice};
use super::{axis, grid_points, par_map, Axis, RunOptions, SweepResult, TrajectoryResult};
use crate::device::units::mhz;
use crate::device::{collapse_operators, ErrorModel, TransmonParams};
use crate::dynamics::{propagate_lindblad, Channel, PropagationConfig, SingleQubitModel};
use crate::error::Result;
use crate::gates::{dynamic_comparison_gate, ideal_single, CompositeOrder, DynamicKind};
use crate::linalg::{DensityMatrix, Operator, StateVector, C64};
use crate::metrics::averaged_gate_fidelity_1q;
use crate::schedule::{make_single_qubit_schedule, repeat_composite, GeometricSchedule, Sin2Shape};

/// Loop parameters (θ, φ, γ) of the geometric NOT and Hadamard gates.
pub(crate) fn loop_angles(gate: GateChoice) -> (f64, f64, f64) {
    match gate {
        GateChoice::Not => (FRAC_PI_2, 0.0, FRAC_PI_2),
        GateChoice::Hadamard => (PI / 4.0, 0.0, FRAC_PI_2),
    }
}

fn dynamic_kind(gate: GateChoice) -> DynamicKind {
    match gate {
        GateChoice::Not => DynamicKind::Not,
        GateChoice::Hadamard => DynamicKind::Hadamard,
    }
}

/// Geometric schedule and its ideal unitary, repeated `order` times with the
/// loop phase split evenly.
fn geometric_gate(
    gate: GateChoice,
    order: CompositeOrder,
    omega0: f64,
    drag_alpha: Option<f64>,
    shape: Sin2Shape,
) -> Result<(GeometricSchedule, Operator)> {
    let (theta, phi, gamma) = loop_angles(gate);
    let n = order.repetitions();
    let one = make_single_qubit_schedule(theta, phi, gamma / n as f64, omega0, drag_alpha, shape)?;
    Ok((repeat_composite(&one, n)?, ideal_single(theta, phi, gamma)))
}

/// Everything needed to simulate one transmon gate.
struct SingleRun<'a> {
    params: TransmonParams,
    schedule: &'a GeometricSchedule,
    errors: ErrorModel,
    levels: usize,
    dt: f64,
}

impl SingleRun<'_> {
    fn channel(&self) -> Result<Channel> {
        let model = SingleQubitModel::new(self.params, self.schedule, self.errors, self.levels)?;
        let collapse = collapse_operators(&self.params, self.levels)?;
        Channel::lindblad(&model, &collapse, &[0, 1], &PropagationConfig::new(self.dt))
    }

    fn gate_fidelity(&self, ideal: &Operator, samples: usize) -> Result<f64> {
        let ch = self.channel()?;
        Ok(averaged_gate_fidelity_1q(|psi| ch.apply(psi), ideal, &[0, 1], samples)?.value)
    }
}

fn shape(spec: &ExperimentSpec) -> Sin2Shape {
    spec.pulse.shape.unwrap_or(Sin2Shape::PerSegment)
}

fn drag_alpha(spec: &ExperimentSpec, alpha: f64) -> Option<f64> {
    spec.pulse.drag.unwrap_or(false).then_some(alpha)
}

fn gate_for(id: ExperimentId) -> GateChoice {
    match id {
        ExperimentId::Fig2c | ExperimentId::Fig2d => GateChoice::Hadamard,
        _ => GateChoice::Not,
    }
}

/// Averaged gate fidelity over a grid of (Ω0, α) with decoherence.
pub fn run_fig2_sweep(spec: &ExperimentSpec, opts: &RunOptions) -> Result<SweepResult> {
    let gate = gate_for(spec.experiment);
    let axes = vec![axis(spec, "omega0_MHz")?, axis(spec, "alpha_MHz")?];
    let (levels, dt, kappa) = (spec.levels()?, spec.dt()?, spec.kappa());
    let samples = req(spec.sweep.samples, "sweep.samples")?;
    let errors = single_errors(spec, 0.0)?;
    let points = grid_points(&axes);
    let values = par_map(points.len(), opts.workers, |k| {
        let (omega0, alpha) = (mhz(points[k][0]), points[k][1]);
        let params = ExperimentSpec::transmon(alpha, kappa)?;
        let (schedule, ideal) = geometric_gate(
            gate,
            CompositeOrder::T1,
            omega0,
            drag_alpha(spec, params.alpha),
            shape(spec),
        )?;
        let run = SingleRun {
            params,
            schedule: &schedule,
            errors,
            levels,
            dt,
        };
        Ok(vec![run.gate_fidelity(&ideal, samples)?])
    })?;
    let metadata = json!({
        "gate": gate,
        "metric": "averaged_gate_fidelity",
        "samples": samples,
        "levels": levels,
    });
    SweepResult::new(spec.experiment, axes, &["fidelity"], values, metadata)
}

/// Fixed-point error model of a single-qubit experiment, with drift δ = `drift` rad/s
/// added to any configured drift.
fn single_errors(spec: &ExperimentSpec, drift: f64) -> Result<ErrorModel> {
    Ok(ErrorModel {
        drift_delta: mhz(spec.errors.drift_mhz.unwrap_or(0.0)) + drift,
        sys_eps: spec.errors.eps.unwrap_or(0.0),
        ..ErrorModel::none()
    })
}

/// Populations and state fidelity from |0⟩ under the geometric gate.
pub fn run_single_trajectory(spec: &ExperimentSpec) -> Result<TrajectoryResult> {
    let gate = gate_for(spec.experiment);
    let levels = spec.levels()?;
    let alpha = req(spec.device.alpha_mhz, "device.alpha_MHz")?;
    let params = ExperimentSpec::transmon(alpha, spec.kappa())?;
    let omega0 = mhz(req(spec.pulse.omega0_mhz, "pulse.omega0_MHz")?);
    let (schedule, ideal) = geometric_gate(
        gate,
        CompositeOrder::T1,
        omega0,
        drag_alpha(spec, params.alpha),
        shape(spec),
    )?;
    let errors = single_errors(spec, 0.0)?;
    let model = SingleQubitModel::new(params, &schedule, errors, levels)?;
    let collapse = collapse_operators(&params, levels)?;
    let cfg = PropagationConfig::new(spec.dt()?).with_stride(spec.record_stride());
    let psi0 = StateVector::basis(levels, 0);
    let target2 = ideal.apply(&StateVector::basis(2, 0));
    let mut amps = vec![C64::new(0.0, 0.0); levels];
    amps[..2].copy_from_slice(target2.amplitudes());
    let target = StateVector::new(amps)?;
    let traj = propagate_lindblad(&model, &collapse, &DensityMatrix::from_pure(&psi0), &cfg)?
        .with_state_fidelity(&target);
    let run = SingleRun {
        params,
        schedule: &schedule,
        errors,
        levels,
        dt: spec.dt()?,
    };
    let gate_fid = run.gate_fidelity(&ideal, req(spec.sweep.samples, "sweep.samples")?)?;
    let state_fid = *traj
        .fidelity_series
        .as_ref()
        .and_then(|f| f.last())
        .expect("fidelity attached");
    let metadata = json!({
        "gate": gate,
        "duration_s": schedule.total_time(),
        "final_state_fidelity": state_fid,
        "gate_fidelity": gate_fid,
        "schedule": schedule.to_record(),
    });
    Ok(TrajectoryResult {
        id: spec.experiment,
        trajectory: traj,
        metadata,
    })
}

/// Geometric and dynamic NOT and Hadamard versus drift δ = frac·Ω0.
pub(crate) fn run_fig3(spec: &ExperimentSpec, opts: &RunOptions) -> Result<SweepResult> {
    let axes = vec![axis(spec, "drift_frac")?];
    let (levels, dt) = (spec.levels()?, spec.dt()?);
    let samples = req(spec.sweep.samples, "sweep.samples")?;
    let alpha = req(spec.device.alpha_mhz, "device.alpha_MHz")?;
    let params = ExperimentSpec::transmon(alpha, spec.kappa())?;
    let drag = drag_alpha(spec, params.alpha);
    let mut gates = Vec::new();
    for (gate, key, value) in [
        (
            GateChoice::Not,
            "pulse.omega0_not_MHz",
            spec.pulse.omega0_not_mhz,
        ),
        (
            GateChoice::Hadamard,
            "pulse.omega0_hadamard_MHz",
            spec.pulse.omega0_hadamard_mhz,
        ),
    ] {
        let omega0 = mhz(req(value, key)?);
        let (geo, ideal) = geometric_gate(gate, CompositeOrder::T1, omega0, drag, shape(spec))?;
        let (dynamic, dyn_ideal) =
            dynamic_comparison_gate(dynamic_kind(gate), geo.total_time(), drag)?;
        gates.push((omega0, geo, ideal, dynamic, dyn_ideal));
    }
    let fracs = axes[0].values.clone();
    let values = par_map(fracs.len(), opts.workers, |k| {
        let mut row = Vec::with_capacity(4);
        for (omega0, geo, ideal, dynamic, dyn_ideal) in &gates {
            let errors = single_errors(spec, fracs[k] * omega0)?;
            for (schedule, target) in [(geo, ideal), (dynamic, dyn_ideal)] {
                let run = SingleRun {
                    params,
                    schedule,
                    errors,
                    levels,
                    dt,
                };
                row.push(run.gate_fidelity(target, samples)?);
            }
        }
        Ok(row)
    })?;
    let metadata = json!({
        "metric": "averaged_gate_fidelity",
        "drift_axis": "fraction of each gate's own omega0",
        "durations_s": {"not": gates[0].1.total_time(), "hadamard": gates[1].1.total_time()},
    });
    SweepResult::new(
        spec.experiment,
        axes,
        &[
            "geometric_not",
            "dynamic_not",
            "geometric_hadamard",
            "dynamic_hadamard",
        ],
        values,
        metadata,
    )
}

/// Composite NOT gates and the dynamic NOT under amplitude error, without
/// (panel a) or with (panels b–e) decoherence.
pub(crate) fn run_fig4(spec: &ExperimentSpec, opts: &RunOptions) -> Result<SweepResult> {
    use ExperimentId::*;
    let (levels, dt) = (spec.levels()?, spec.dt()?);
    let samples = req(spec.sweep.samples, "sweep.samples")?;
    let alpha = req(spec.device.alpha_mhz, "device.alpha_MHz")?;
    let omega0 = mhz(req(spec.pulse.omega0_mhz, "pulse.omega0_MHz")?);
    let drag = drag_alpha(spec, mhz(alpha));
    let t1 = geometric_gate(
        GateChoice::Not,
        CompositeOrder::T1,
        omega0,
        drag,
        shape(spec),
    )?;
    let dynamic = dynamic_comparison_gate(DynamicKind::Not, t1.0.total_time(), drag)?;
    let variant = |order| geometric_gate(GateChoice::Not, order, omega0, drag, shape(spec));
    let (variants, columns, axes): (Vec<(GeometricSchedule, Operator)>, Vec<&str>, Vec<Axis>) =
        match spec.experiment {
            Fig4a => (
                vec![
                    dynamic,
                    t1,
                    variant(CompositeOrder::T2)?,
                    variant(CompositeOrder::T3)?,
                ],
                vec!["dynamic", "u_t", "u_2t", "u_3t"],
                vec![axis(spec, "eps")?],
            ),
            id => {
                let v = match id {
                    Fig4b => dynamic,
                    Fig4c => t1,
                    Fig4d => variant(CompositeOrder::T2)?,
                    _ => variant(CompositeOrder::T3)?,
                };
                (
                    vec![v],
                    vec!["fidelity"],
                    vec![axis(spec, "eps")?, axis(spec, "kappa_kHz")?],
                )
            }
        };
    let points = grid_points(&axes);
    let fixed_kappa = spec.kappa();
    let values = par_map(points.len(), opts.workers, |k| {
        let eps = points[k][0];
        let kappa = points[k]
            .get(1)
            .map_or(fixed_kappa, |&khz| crate::device::units::khz(khz));
        let params = ExperimentSpec::transmon(alpha, kappa)?;
        let errors = ErrorModel {
            sys_eps: eps,
            ..single_errors(spec, 0.0)?
        };
        variants
            .iter()
            .map(|(schedule, ideal)| {
                SingleRun {
                    params,
                    schedule,
                    errors,
                    levels,
                    dt,
                }
                .gate_fidelity(ideal, samples)
            })
            .collect()
    })?;
    let durations: Vec<f64> = variants.iter().map(|(s, _)| s.total_time()).collect();
    let metadata = json!({
        "metric": "averaged_gate_fidelity",
        "levels": levels,
        "columns": columns,
        "durations_s": durations,
    });
    SweepResult::new(spec.experiment, axes, &columns, values, metadata)
}

/// NOT-gate fidelity versus Ω0 for a two-level transmon, and for three
/// levels without and with DRAG.
pub fn run_fig8_leakage(spec: &ExperimentSpec, opts: &RunOptions) -> Result<SweepResult> {
    let axes = vec![axis(spec, "omega0_MHz")?];
    let dt = spec.dt()?;
    let samples = req(spec.sweep.samples, "sweep.samples")?;
    let alpha = req(spec.device.alpha_mhz, "device.alpha_MHz")?;
    let params = ExperimentSpec::transmon(alpha, spec.kappa())?;
    let errors = single_errors(spec, 0.0)?;
    let omegas = axes[0].values.clone();
    let values = par_map(omegas.len(), opts.workers, |k| {
        let omega0 = mhz(omegas[k]);
        let cases = [(2, None), (3, None), (3, Some(params.alpha))];
        cases
            .iter()
            .map(|&(levels, drag)| {
                let (schedule, ideal) = geometric_gate(
                    GateChoice::Not,
                    CompositeOrder::T1,
                    omega0,
                    drag,
                    shape(spec),
                )?;
                SingleRun {
                    params,
                    schedule: &schedule,
                    errors,
                    levels,
                    dt,
                }
                .gate_fidelity(&ideal, samples)
            })
            .collect()
    })?;
    let metadata: Value = json!({"metric": "averaged_gate_fidelity", "gate": GateChoice::Not});
    SweepResult::new(
        spec.experiment,
        axes,
        &["fidelity_two_level", "fidelity_no_drag", "fidelity_drag"],
        values,
        metadata,
    )
}
