//! State, averaged-gate and process-overlap fidelities.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, Operator, StateVector, C64, ZERO};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FidelityKind {
    State,
    AveragedGate,
    ProcessOverlap,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub value: f64,
    pub kind: FidelityKind,
    pub sample_count: usize,
}

/// Tolerated excursion of a fidelity outside [0, 1].
pub const FIDELITY_SLACK: f64 = 1e-9;

impl FidelityReport {
    fn checked(value: f64, kind: FidelityKind, sample_count: usize) -> Result<Self> {
        if !(-FIDELITY_SLACK..=1.0 + FIDELITY_SLACK).contains(&value) {
            return Err(Error::ContractViolation(format!(
                "{kind:?} fidelity {value} outside [0, 1]"
            )));
        }
        Ok(Self {
            value,
            kind,
            sample_count,
        })
    }
}

/// `⟨target|ρ|target⟩`.
pub fn state_fidelity(rho: &DensityMatrix, target: &StateVector) -> Result<f64> {
    if rho.dim() != target.dim() {
        return Err(Error::domain(format!(
            "state of dimension {} compared with target of dimension {}",
            rho.dim(),
            target.dim()
        )));
    }
    let f = rho.expectation(target);
    if f.im.abs() > 1e-10 {
        return Err(Error::ContractViolation(format!(
            "state fidelity has imaginary part {:.3e}",
            f.im
        )));
    }
    Ok(f.re)
}

/// Pairwise (cascade) summation.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// `n` evenly spaced angles `2πk/n` on the circle.
///
/// The fidelity integrands are trigonometric polynomials of low degree in
/// the input angle, so this rule is exact once `n` exceeds that degree;
/// repeating the endpoint 2π would add an O(1/n) bias.
pub fn angle_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| TAU * k as f64 / n as f64).collect()
}

/// Places `amplitudes` at `embedding` positions of a `dim`-dimensional vector.
fn embed(amplitudes: &[C64], embedding: &[usize], dim: usize) -> StateVector {
    let mut v = vec![ZERO; dim];
    for (&k, &a) in embedding.iter().zip(amplitudes) {
        v[k] = a;
    }
    StateVector::new(v).expect("embedded target has unit norm")
}

fn check_embedding(ideal: &Operator, embedding: &[usize]) -> Result<()> {
    if embedding.len() != ideal.dim() {
        return Err(Error::domain(format!(
            "embedding lists {} states for a {}-dimensional gate",
            embedding.len(),
            ideal.dim()
        )));
    }
    Ok(())
}

/// Mean of `⟨ψ_f|ρ|ψ_f⟩` over inputs `cos θ₁|0⟩ + sin θ₁|1⟩`.
///
/// `simulate` receives the input on the 2-dimensional computational space
/// and returns the final state on the full space; `embedding` says where the
/// computational states sit in that space, and `ψ_f = ideal·ψ₁`.
pub fn averaged_gate_fidelity_1q<F>(
    simulate: F,
    ideal: &Operator,
    embedding: &[usize],
    samples: usize,
) -> Result<FidelityReport>
where
    F: Fn(&StateVector) -> Result<DensityMatrix>,
{
    if samples < 2 {
        return Err(Error::domain("averaged fidelity needs at least 2 samples"));
    }
    check_embedding(ideal, embedding)?;
    let mut vals = Vec::with_capacity(samples);
    for th in angle_grid(samples) {
        let psi = StateVector::from_real(&[th.cos(), th.sin()])?;
        let rho = simulate(&psi)?;
        let target = embed(ideal.apply(&psi).amplitudes(), embedding, rho.dim());
        vals.push(state_fidelity(&rho, &target)?);
    }
    FidelityReport::checked(
        pairwise_sum(&vals) / samples as f64,
        FidelityKind::AveragedGate,
        samples,
    )
}

/// Mean over an `n × n` grid of product inputs
/// `(cos ϑ₁|0⟩ + sin ϑ₁|1⟩) ⊗ (cos ϑ₂|0⟩ + sin ϑ₂|1⟩)`.
pub fn averaged_gate_fidelity_2q<F>(
    simulate: F,
    ideal: &Operator,
    embedding: &[usize],
    n: usize,
) -> Result<FidelityReport>
where
    F: Fn(&StateVector) -> Result<DensityMatrix>,
{
    if n < 2 {
        return Err(Error::domain(
            "averaged fidelity needs at least 2 samples per axis",
        ));
    }
    check_embedding(ideal, embedding)?;
    let grid = angle_grid(n);
    let mut vals = Vec::with_capacity(n * n);
    for &a in &grid {
        for &b in &grid {
            let (ca, sa, cb, sb) = (a.cos(), a.sin(), b.cos(), b.sin());
            let psi = StateVector::from_real(&[ca * cb, ca * sb, sa * cb, sa * sb])?;
            let rho = simulate(&psi)?;
            let target = embed(ideal.apply(&psi).amplitudes(), embedding, rho.dim());
            vals.push(state_fidelity(&rho, &target)?);
        }
    }
    FidelityReport::checked(
        pairwise_sum(&vals) / (n * n) as f64,
        FidelityKind::AveragedGate,
        n * n,
    )
}

/// `|Tr(U†V)| / Tr(U†U)`.
pub fn process_overlap(u_ideal: &Operator, u_actual: &Operator) -> Result<f64> {
    if u_ideal.dim() != u_actual.dim() {
        return Err(Error::domain(
            "process overlap of operators with different dimensions",
        ));
    }
    let num = (&u_ideal.dagger() * u_actual).trace().norm();
    let den = (&u_ideal.dagger() * u_ideal).trace().re;
    if den == 0.0 {
        return Err(Error::domain(
            "process overlap with a zero reference operator",
        ));
    }
    Ok(num / den)
}

/// `simulate` closure for an exact unitary acting on an embedded subspace.
pub fn unitary_map<'a>(
    u: &'a Operator,
    embedding: &'a [usize],
) -> impl Fn(&StateVector) -> Result<DensityMatrix> + 'a {
    move |psi: &StateVector| {
        let full = embed(psi.amplitudes(), embedding, u.dim());
        Ok(DensityMatrix::from_pure(&u.apply(&full)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{ideal_single, ideal_two_qubit};
    use crate::linalg::{I, ONE};
    use proptest::prelude::*;

    #[test]
    fn state_fidelity_examples() {
        let psi = StateVector::from_real(&[0.6, 0.8]).unwrap();
        let rho = DensityMatrix::from_pure(&psi);
        assert!((state_fidelity(&rho, &psi).unwrap() - 1.0).abs() < 1e-15);
        let mixed = DensityMatrix::maximally_mixed(2);
        assert!((state_fidelity(&mixed, &psi).unwrap() - 0.5).abs() < 1e-15);
        let orth = StateVector::from_real(&[0.8, -0.6]).unwrap();
        assert!(state_fidelity(&rho, &orth).unwrap().abs() < 1e-15);
        assert!(state_fidelity(&rho, &StateVector::basis(3, 0)).is_err());
    }

    #[test]
    fn exact_gates_score_one() {
        let u = ideal_single(0.9, 0.3, 1.1);
        let f = averaged_gate_fidelity_1q(unitary_map(&u, &[0, 1]), &u, &[0, 1], 1001).unwrap();
        assert!((f.value - 1.0).abs() < 1e-10);
        // same gate embedded in a 3-level space
        let u3 = u.embed(3, &[0, 1]);
        let mut u3 = u3;
        u3[(2, 2)] = ONE;
        let f = averaged_gate_fidelity_1q(unitary_map(&u3, &[0, 1]), &u, &[0, 1], 101).unwrap();
        assert!((f.value - 1.0).abs() < 1e-10);

        let v = ideal_two_qubit(1.0, 0.2, 0.7);
        let f = averaged_gate_fidelity_2q(unitary_map(&v, &[0, 1, 2, 3]), &v, &[0, 1, 2, 3], 21)
            .unwrap();
        assert!((f.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn process_overlap_examples() {
        let u = ideal_single(0.4, 0.5, 0.6);
        assert!((process_overlap(&u, &u).unwrap() - 1.0).abs() < 1e-15);
        let phased = u.scale(C64::from_polar(1.0, 0.77));
        assert!((process_overlap(&u, &phased).unwrap() - 1.0).abs() < 1e-15);
        let sx = Operator::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]).unwrap();
        assert_eq!(process_overlap(&sx, &Operator::identity(2)).unwrap(), 0.0);
    }

    #[test]
    fn quadrature_converges() {
        let u = ideal_single(0.9, 0.3, 1.1);
        let actual = ideal_single(0.95, 0.25, 1.0);
        let f1 =
            averaged_gate_fidelity_1q(unitary_map(&actual, &[0, 1]), &u, &[0, 1], 1001).unwrap();
        let f2 =
            averaged_gate_fidelity_1q(unitary_map(&actual, &[0, 1]), &u, &[0, 1], 2001).unwrap();
        assert!((f1.value - f2.value).abs() < 1e-6);
        assert!(f1.value < 1.0);
    }

    #[test]
    fn two_qubit_grid_converges() {
        let u = ideal_two_qubit(1.0, 0.2, 0.7);
        let actual = ideal_two_qubit(1.05, 0.1, 0.75);
        let emb = [0, 1, 2, 3];
        let f101 = averaged_gate_fidelity_2q(unitary_map(&actual, &emb), &u, &emb, 101).unwrap();
        let f201 = averaged_gate_fidelity_2q(unitary_map(&actual, &emb), &u, &emb, 201).unwrap();
        assert!((f101.value - f201.value).abs() < 1e-5);
    }

    #[test]
    fn pairwise_sum_matches_naive() {
        let xs: Vec<f64> = (0..1001).map(|k| (k as f64).sin()).collect();
        assert!((pairwise_sum(&xs) - xs.iter().sum::<f64>()).abs() < 1e-10);
    }

    proptest! {
        #[test]
        fn global_phase_of_ideal_is_irrelevant(theta in 0.0..3.1f64, chi in -3.0..3.0f64) {
            let u = ideal_single(theta, 0.2, 0.9);
            let actual = ideal_single(theta + 0.05, 0.2, 0.85);
            let f = averaged_gate_fidelity_1q(unitary_map(&actual, &[0, 1]), &u, &[0, 1], 201).unwrap();
            let g = averaged_gate_fidelity_1q(unitary_map(&actual, &[0, 1]), &u.scale(C64::from_polar(1.0, chi)), &[0, 1], 201).unwrap();
            prop_assert!((f.value - g.value).abs() < 1e-12);
            let _ = I;
        }
    }
}
