//! Geometric NOT gate on a three-level transmon with DRAG and decoherence.
//!
//! Prints level populations along the pulse and the final fidelities.

use geomgate::experiments::{run_trajectory, ExperimentId, ExperimentSpec};

fn main() -> geomgate::Result<()> {
    let spec = ExperimentSpec::defaults(ExperimentId::Fig2b);
    let run = run_trajectory(&spec)?;
    let tr = &run.trajectory;
    println!("{:>9} {:>10} {:>10} {:>10}", "t (ns)", "p0", "p1", "p2");
    let every = (tr.times.len() / 10).max(1);
    for k in (0..tr.times.len())
        .step_by(every)
        .chain([tr.times.len() - 1])
    {
        let p = &tr.populations[k];
        println!(
            "{:>9.2} {:>10.6} {:>10.6} {:>10.3e}",
            tr.times[k] * 1e9,
            p[0],
            p[1],
            p[2]
        );
    }
    println!(
        "state fidelity from |0>: {}",
        run.metadata["final_state_fidelity"]
    );
    println!("averaged gate fidelity:  {}", run.metadata["gate_fidelity"]);
    Ok(())
}
