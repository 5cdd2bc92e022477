//! Composite loops against a systematic amplitude error.
//!
//! Compares the exact process overlap of U(T), U(2T) and U(3T) with the
//! second-order expansion in ε.

use std::f64::consts::FRAC_PI_2;

use geomgate::device::units::mhz;
use geomgate::dynamics::ideal_two_level_propagator;
use geomgate::gates::{analytic_error_fidelity, ideal_single, CompositeOrder};
use geomgate::metrics::process_overlap;
use geomgate::schedule::{make_single_qubit_schedule, repeat_composite, Sin2Shape};

fn main() -> geomgate::Result<()> {
    let ideal = ideal_single(FRAC_PI_2, 0.0, FRAC_PI_2);
    let orders = [CompositeOrder::T1, CompositeOrder::T2, CompositeOrder::T3];
    println!(
        "{:>6} {:>22} {:>22} {:>22}",
        "ε", "U(T) exact/approx", "U(2T) exact/approx", "U(3T) exact/approx"
    );
    for eps in [0.0, 0.02, 0.05, 0.1, 0.2] {
        print!("{eps:>6}");
        for order in orders {
            let one = make_single_qubit_schedule(
                FRAC_PI_2,
                0.0,
                order.loop_phase(),
                mhz(40.0),
                None,
                Sin2Shape::PerSegment,
            )?;
            let u = ideal_two_level_propagator(&repeat_composite(&one, order.repetitions())?, eps)?;
            let exact = process_overlap(&ideal, &u)?;
            print!(
                " {exact:>10.6}/{:<11.6}",
                analytic_error_fidelity(order, FRAC_PI_2, eps)
            );
        }
        println!();
    }
    Ok(())
}
