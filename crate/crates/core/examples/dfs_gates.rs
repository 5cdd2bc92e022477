//! Logical qubits in a decoherence-free subspace.
//!
//! Encodes a logical superposition, lets collective dephasing act on it,
//! and runs the logical NOT on the physical pair it reduces to.

use std::f64::consts::FRAC_PI_2;

use geomgate::device::units::mhz;
use geomgate::device::{ErrorModel, ModulatedQubit, PairParams, Subspace, TransmonParams};
use geomgate::dfs::{
    active_pair_reduction, collective_dephasing, decode_amplitudes, encode, logical_state_fidelity,
    EncodingKind, LogicalEncoding, LogicalFamily,
};
use geomgate::dynamics::{
    propagate_lindblad, propagate_schrodinger, ConstantHamiltonian, PairHamiltonian, PairModel,
    PropagationConfig,
};
use geomgate::gates::ideal_logical_single;
use geomgate::linalg::{DensityMatrix, Operator, StateVector};
use geomgate::schedule::make_logical_single_schedule;

fn main() -> geomgate::Result<()> {
    let enc = LogicalEncoding::new(EncodingKind::SingleLogical, 3)?;
    let logical = StateVector::from_real(&[0.6, 0.8])?;
    let physical = encode(&logical, &enc)?;

    let idle = ConstantHamiltonian {
        h: Operator::zeros(enc.physical_dim()),
        duration: 1e-6,
    };
    let noise = collective_dephasing(&enc, 1e6)?;
    let tr = propagate_lindblad(
        &idle,
        &[noise],
        &DensityMatrix::from_pure(&physical),
        &PropagationConfig::new(1e-9),
    )?;
    let f = logical_state_fidelity(&tr.final_density(), &logical, &enc)?;
    println!("after 1 µs of collective dephasing: fidelity {f:.12}");

    let active = active_pair_reduction(&enc, LogicalFamily::SingleQubit)?;
    println!(
        "logical gates drive pair {:?} on states {:?}",
        active.labels, active.initial_map
    );
    let pair = PairParams {
        qubit_a: TransmonParams::new(mhz(165.0), mhz(220.0))?,
        qubit_b: TransmonParams::new(0.0, mhz(245.0))?,
        g: mhz(20.0),
        drive_eps: 0.0,
        drive_nu: 0.0,
        drive_phase: 0.0,
        modulated: ModulatedQubit::Second,
    }
    .tune(Subspace::SingleExcitation, 2.2);
    let schedule = make_logical_single_schedule(
        FRAC_PI_2,
        0.0,
        FRAC_PI_2,
        pair.effective_coupling(Subspace::SingleExcitation),
    )?;
    let model = PairModel::new(
        pair,
        &schedule,
        ErrorModel::none(),
        3,
        PairHamiltonian::Full,
    )?;
    let out = propagate_schrodinger(&model, &physical, &PropagationConfig::new(1e-12))?;
    let final_state = out.final_pure().expect("pure run");
    let amps = decode_amplitudes(final_state, &enc)?;
    println!(
        "logical NOT maps (0.6, 0.8) to |amplitudes| ({:.4}, {:.4})",
        amps[0].norm(),
        amps[1].norm()
    );
    let target = encode(
        &ideal_logical_single(FRAC_PI_2, 0.0, FRAC_PI_2).apply(&logical),
        &enc,
    )?;
    println!(
        "overlap with the ideal logical output: {:.6}",
        target.inner(final_state).norm_sqr()
    );
    Ok(())
}
