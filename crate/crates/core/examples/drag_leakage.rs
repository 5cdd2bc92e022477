//! Leakage to the second excited level with and without DRAG.
//!
//! Builds the NOT loop by hand for several peak amplitudes, propagates the
//! Lindblad channel on the qubit subspace and averages the gate fidelity.

use std::f64::consts::FRAC_PI_2;

use geomgate::device::units::{khz, mhz};
use geomgate::device::{collapse_operators, ErrorModel, TransmonParams};
use geomgate::dynamics::{Channel, PropagationConfig, SingleQubitModel};
use geomgate::gates::ideal_single;
use geomgate::metrics::averaged_gate_fidelity_1q;
use geomgate::schedule::{make_single_qubit_schedule, Sin2Shape};

fn fidelity(omega0_mhz: f64, drag: bool) -> geomgate::Result<f64> {
    let qubit = TransmonParams::with_uniform_kappa(0.0, mhz(220.0), khz(4.0))?;
    let alpha = drag.then_some(qubit.alpha);
    let schedule = make_single_qubit_schedule(
        FRAC_PI_2,
        0.0,
        FRAC_PI_2,
        mhz(omega0_mhz),
        alpha,
        Sin2Shape::PerSegment,
    )?;
    let model = SingleQubitModel::new(qubit, &schedule, ErrorModel::none(), 3)?;
    let channel = Channel::lindblad(
        &model,
        &collapse_operators(&qubit, 3)?,
        &[0, 1],
        &PropagationConfig::new(1e-12),
    )?;
    let ideal = ideal_single(FRAC_PI_2, 0.0, FRAC_PI_2);
    Ok(averaged_gate_fidelity_1q(|psi| channel.apply(psi), &ideal, &[0, 1], 201)?.value)
}

fn main() -> geomgate::Result<()> {
    println!("{:>10} {:>12} {:>12}", "Ω0 (MHz)", "no DRAG", "DRAG");
    for omega0 in [10.0, 20.0, 30.0, 40.0, 60.0] {
        println!(
            "{omega0:>10} {:>12.6} {:>12.6}",
            fidelity(omega0, false)?,
            fidelity(omega0, true)?
        );
    }
    Ok(())
}
