//! Reference table: one test and one PASS/FAIL line per criterion.
//!
//! Failing criteria are reported as failing tests; the printed lines give the
//! measured value, target and tolerance of every contributing check.

use geomgate::experiments::RunOptions;
use geomgate::verify::{self, Check};

const OPTS: RunOptions = RunOptions { workers: 1 };

fn report(criterion: &str, checks: &[Check]) {
    let pass = checks.iter().all(|c| c.pass);
    println!("{} {criterion}", if pass { "PASS" } else { "FAIL" });
    for c in checks {
        println!("    {c}");
    }
    assert!(pass, "criterion `{criterion}` failed");
}

#[test]
fn not_gate_state_fidelity() {
    let checks = verify::reference_state_checks(&OPTS).unwrap();
    report("NOT state fidelity 0.9993 within 5 s", &checks[..1]);
}

#[test]
fn hadamard_state_fidelity() {
    let checks = verify::reference_state_checks(&OPTS).unwrap();
    report("Hadamard state fidelity 0.9989 within 5 s", &checks[1..]);
}

#[test]
fn no_drag_leakage_ceiling() {
    report(
        "no-DRAG fidelity ceiling 0.9974",
        &[verify::leakage_ceiling_check(&OPTS).unwrap()],
    );
}

#[test]
fn geometric_iswap_fidelity() {
    report(
        "geometric iSWAP fidelity 0.9961 (full model)",
        &[verify::iswap_check(&OPTS).unwrap()],
    );
}

#[test]
fn logical_gate_fidelities() {
    report(
        "logical NOT, Hadamard and control-phase fidelities",
        &verify::logical_checks(&OPTS).unwrap(),
    );
}

#[test]
fn composite_error_expansion() {
    report(
        "composite ε² coefficients and gains",
        &verify::composite_checks(),
    );
}

#[test]
fn property_suite() {
    let mut checks = verify::ideal_checks().unwrap();
    checks.extend(verify::effective_checks().unwrap());
    report("holonomy, integrator and model-overlap properties", &checks);
}

#[test]
fn robustness_orderings() {
    report(
        "drift and systematic-error orderings",
        &verify::robustness_checks(&OPTS).unwrap(),
    );
}

#[test]
fn sweep_peak_fidelities() {
    report(
        "NOT and Hadamard sweep peaks 0.9995 / 0.9994",
        &verify::sweep_peak_checks(&OPTS).unwrap(),
    );
}
