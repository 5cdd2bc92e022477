//! Declarative experiment runners, one per figure family.
//!
//! An [`ExperimentSpec`] names the experiment and carries every parameter in
//! configuration units. [`run_experiment`] dispatches it to a runner, which
//! evaluates independent grid points on a worker pool and assembles the
//! result in grid order, so output never depends on the worker count.

mod pair;
mod single;
pub mod spec;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::output::Table;

pub use pair::{run_fig5a_sweep, run_pair_trajectory};
pub use single::{run_fig2_sweep, run_fig8_leakage, run_single_trajectory};
pub use spec::{AxisRange, ExperimentId, ExperimentSpec, GateChoice, PairModelKind};

/// Tool name recorded in manifests.
pub const TOOL_NAME: &str = "geomgate";

/// Worker-pool settings for a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Threads evaluating grid points; 0 uses all available cores.
    pub workers: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { workers: 1 }
    }
}

/// One named sweep axis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

/// Values of one or more quantities over a Cartesian grid.
///
/// `values[k]` holds the quantities at flat grid index `k`, with the first
/// axis varying slowest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub id: ExperimentId,
    pub axes: Vec<Axis>,
    pub columns: Vec<String>,
    pub values: Vec<Vec<f64>>,
    pub metadata: Value,
}

impl SweepResult {
    pub fn new(
        id: ExperimentId,
        axes: Vec<Axis>,
        columns: &[&str],
        values: Vec<Vec<f64>>,
        metadata: Value,
    ) -> Result<Self> {
        let points: usize = axes.iter().map(|a| a.values.len()).product();
        if values.len() != points || values.iter().any(|v| v.len() != columns.len()) {
            return Err(Error::ContractViolation(format!(
                "sweep produced {} rows for a grid of {points} points",
                values.len()
            )));
        }
        Ok(Self {
            id,
            axes,
            columns: columns.iter().map(|s| s.to_string()).collect(),
            values,
            metadata,
        })
    }

    /// Axis coordinates of flat grid index `k`.
    pub fn coordinates(&self, k: usize) -> Vec<f64> {
        grid_coordinates(&self.axes, k)
    }

    /// All values of quantity `name`, in grid order.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let c = self.columns.iter().position(|n| n == name)?;
        Some(self.values.iter().map(|v| v[c]).collect())
    }

    /// One row per grid point: axis coordinates followed by the quantities.
    pub fn to_table(&self) -> Table {
        let mut header: Vec<String> = self.axes.iter().map(|a| a.name.clone()).collect();
        header.extend(self.columns.iter().cloned());
        let rows = (0..self.values.len())
            .map(|k| {
                let mut row = self.coordinates(k);
                row.extend(&self.values[k]);
                row
            })
            .collect();
        Table { header, rows }
    }
}

fn grid_coordinates(axes: &[Axis], mut k: usize) -> Vec<f64> {
    let mut out = vec![0.0; axes.len()];
    for (i, a) in axes.iter().enumerate().rev() {
        let n = a.values.len();
        out[i] = a.values[k % n];
        k /= n;
    }
    out
}

/// A recorded time series with run metadata.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryResult {
    pub id: ExperimentId,
    pub trajectory: Trajectory,
    pub metadata: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ExperimentOutput {
    Sweep(SweepResult),
    Trajectory(TrajectoryResult),
}

impl ExperimentOutput {
    pub fn to_table(&self) -> Table {
        match self {
            Self::Sweep(s) => s.to_table(),
            Self::Trajectory(t) => t.trajectory.to_table(),
        }
    }

    pub fn metadata(&self) -> &Value {
        match self {
            Self::Sweep(s) => &s.metadata,
            Self::Trajectory(t) => &t.metadata,
        }
    }
}

/// Runs the experiment named by `spec.experiment`.
pub fn run_experiment(spec: &ExperimentSpec, opts: &RunOptions) -> Result<ExperimentOutput> {
    use ExperimentId::*;
    spec.validate()?;
    Ok(match spec.experiment {
        Fig2a | Fig2c => ExperimentOutput::Sweep(run_fig2_sweep(spec, opts)?),
        Fig2b | Fig2d => ExperimentOutput::Trajectory(run_single_trajectory(spec)?),
        Fig5b | Fig7a | Fig7b => ExperimentOutput::Trajectory(run_pair_trajectory(spec)?),
        Fig3 | Fig5c => ExperimentOutput::Sweep(run_drift_robustness(spec, opts)?),
        Fig4a | Fig4b | Fig4c | Fig4d | Fig4e | Fig6a | Fig6b | Fig6c | Fig6d => {
            ExperimentOutput::Sweep(run_systematic_contest(spec, opts)?)
        }
        Fig5a => ExperimentOutput::Sweep(run_fig5a_sweep(spec, opts)?),
        Fig8 => ExperimentOutput::Sweep(run_fig8_leakage(spec, opts)?),
    })
}

/// Trajectory runner for any trajectory experiment.
pub fn run_trajectory(spec: &ExperimentSpec) -> Result<TrajectoryResult> {
    use ExperimentId::*;
    spec.validate()?;
    match spec.experiment {
        Fig2b | Fig2d => run_single_trajectory(spec),
        Fig5b | Fig7a | Fig7b => run_pair_trajectory(spec),
        id => Err(Error::config(format!(
            "{id} is not a trajectory experiment"
        ))),
    }
}

/// Geometric versus dynamic fidelity against frequency drift.
pub fn run_drift_robustness(spec: &ExperimentSpec, opts: &RunOptions) -> Result<SweepResult> {
    spec.validate()?;
    match spec.experiment {
        ExperimentId::Fig3 => single::run_fig3(spec, opts),
        ExperimentId::Fig5c => pair::run_fig5c(spec, opts),
        id => Err(Error::config(format!("{id} is not a drift experiment"))),
    }
}

/// Composite and dynamic gates under systematic error (and decoherence).
pub fn run_systematic_contest(spec: &ExperimentSpec, opts: &RunOptions) -> Result<SweepResult> {
    use ExperimentId::*;
    spec.validate()?;
    match spec.experiment {
        Fig4a | Fig4b | Fig4c | Fig4d | Fig4e => single::run_fig4(spec, opts),
        Fig6a | Fig6b | Fig6c | Fig6d => pair::run_fig6(spec, opts),
        id => Err(Error::config(format!(
            "{id} is not a systematic-error experiment"
        ))),
    }
}

/// Manifest describing a finished run; its `config` entry reproduces the run.
pub fn manifest(spec: &ExperimentSpec, output: &ExperimentOutput) -> Result<Value> {
    Ok(json!({
        "tool": TOOL_NAME,
        "version": env!("CARGO_PKG_VERSION"),
        "experiment": spec.experiment,
        "config": serde_json::to_value(spec)?,
        "dt_s": spec.dt()?,
        "columns": output.to_table().header,
        "metadata": output.metadata(),
    }))
}

/// Evaluates `f(0..n)` on a pool of `workers` threads, returning results in index order.
pub(crate) fn par_map<T, F>(n: usize, workers: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::config(format!("cannot start worker pool: {e}")))?;
    pool.install(|| (0..n).into_par_iter().map(&f).collect())
}

/// Flat list of grid points over `axes`, first axis slowest.
pub(crate) fn grid_points(axes: &[Axis]) -> Vec<Vec<f64>> {
    let n: usize = axes.iter().map(|a| a.values.len()).product();
    (0..n).map(|k| grid_coordinates(axes, k)).collect()
}

pub(crate) fn axis(spec: &ExperimentSpec, name: &str) -> Result<Axis> {
    let range = spec
        .axes()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, r)| r)
        .ok_or_else(|| {
            Error::config(format!(
                "{} needs the sweep axis `sweep.{name}`",
                spec.experiment
            ))
        })?;
    Ok(Axis {
        name: name.to_string(),
        values: range.values(),
    })
}
