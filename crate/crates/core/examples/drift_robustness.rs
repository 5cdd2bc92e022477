//! Geometric versus dynamical gates under a qubit-frequency drift.

use geomgate::experiments::{
    run_drift_robustness, AxisRange, ExperimentId, ExperimentSpec, RunOptions,
};

fn main() -> geomgate::Result<()> {
    let mut spec = ExperimentSpec::defaults(ExperimentId::Fig3);
    spec.sweep.drift_frac = Some(AxisRange::new(-0.1, 0.1, 9));
    spec.sweep.samples = Some(101);
    let result = run_drift_robustness(&spec, &RunOptions { workers: 0 })?;
    print!("{}", result.to_table().to_csv());
    Ok(())
}
