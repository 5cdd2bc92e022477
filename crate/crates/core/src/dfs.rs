//! Decoherence-free logical encodings on pairs of physical transmons.
//!
//! A single logical qubit lives on physical qubits (A, C) as
//! `|0⟩_L = |10⟩`, `|1⟩_L = |01⟩`. Two logical qubits use (A, C, B, D) with
//! `|00⟩_L = |1010⟩`, `|01⟩_L = |1001⟩`, `|10⟩_L = |0110⟩`, `|11⟩_L = |0101⟩`.
//! Every encoded state carries exactly one excitation per logical pair, so a
//! dephasing field acting equally on both members only adds a global phase.

use serde::{Deserialize, Serialize};

use crate::device::PairParams;
use crate::error::{Error, Result};
use crate::linalg::{kron, projector, DensityMatrix, Operator, StateVector, C64, ZERO};
use crate::metrics::state_fidelity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EncodingKind {
    /// One logical qubit on (A, C).
    SingleLogical,
    /// Two logical qubits on (A, C, B, D).
    TwoLogical,
}

/// Logical basis table over a product of physical transmons.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogicalEncoding {
    pub kind: EncodingKind,
    /// Physical qubit labels in tensor-product order.
    pub physical_map: Vec<String>,
    /// `basis_table[k]` lists the occupation of each physical qubit for logical state k.
    pub basis_table: Vec<Vec<usize>>,
    /// Levels kept per physical transmon (2 or 3).
    pub levels: usize,
}

impl LogicalEncoding {
    pub fn new(kind: EncodingKind, levels: usize) -> Result<Self> {
        if levels != 2 && levels != 3 {
            return Err(Error::domain(format!(
                "transmon truncation must be 2 or 3 levels, got {levels}"
            )));
        }
        let (labels, table): (&[&str], Vec<Vec<usize>>) = match kind {
            EncodingKind::SingleLogical => (&["A", "C"], vec![vec![1, 0], vec![0, 1]]),
            EncodingKind::TwoLogical => (
                &["A", "C", "B", "D"],
                vec![
                    vec![1, 0, 1, 0],
                    vec![1, 0, 0, 1],
                    vec![0, 1, 1, 0],
                    vec![0, 1, 0, 1],
                ],
            ),
        };
        Ok(Self {
            kind,
            physical_map: labels.iter().map(|s| s.to_string()).collect(),
            basis_table: table,
            levels,
        })
    }

    pub fn logical_dim(&self) -> usize {
        self.basis_table.len()
    }

    pub fn physical_dim(&self) -> usize {
        self.levels.pow(self.physical_map.len() as u32)
    }

    /// Index of logical basis state `k` in the physical product basis.
    pub fn physical_index(&self, k: usize) -> usize {
        self.basis_table[k]
            .iter()
            .fold(0, |acc, &n| acc * self.levels + n)
    }

    /// Physical indices of all logical basis states, in logical order.
    pub fn physical_indices(&self) -> Vec<usize> {
        (0..self.logical_dim())
            .map(|k| self.physical_index(k))
            .collect()
    }
}

/// Maps logical amplitudes onto the physical basis states of `enc`.
pub fn encode(logical: &StateVector, enc: &LogicalEncoding) -> Result<StateVector> {
    if logical.dim() != enc.logical_dim() {
        return Err(Error::domain(format!(
            "logical state has dimension {}, encoding expects {}",
            logical.dim(),
            enc.logical_dim()
        )));
    }
    let mut amps = vec![ZERO; enc.physical_dim()];
    for (k, a) in logical.amplitudes().iter().enumerate() {
        amps[enc.physical_index(k)] = *a;
    }
    StateVector::new(amps)
}

/// Gate families that act on encoded qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LogicalFamily {
    SingleQubit,
    ControlPhase,
}

/// The physical pair a logical gate drives and where logical inputs land in
/// its 3-level pair space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ActivePair {
    pub labels: (String, String),
    /// `initial_map[k]` is the pair-space index standing in for logical state k.
    /// Spectator qubits outside the pair are tracked by the logical label only.
    pub initial_map: Vec<usize>,
    /// Pair state the gate visits outside the encoded space, if any.
    pub auxiliary: Option<usize>,
}

/// Reduces a logical gate to the physical pair it drives.
///
/// Single-qubit gates act on (A, C). The control-phase gate acts on (C, D),
/// where logical `|11⟩_L` becomes `|11⟩_CD` and the loop passes through `|02⟩_CD`.
pub fn active_pair_reduction(enc: &LogicalEncoding, family: LogicalFamily) -> Result<ActivePair> {
    let idx = |m, n| PairParams::index(3, m, n);
    match (enc.kind, family) {
        (EncodingKind::SingleLogical, LogicalFamily::SingleQubit) => Ok(ActivePair {
            labels: ("A".into(), "C".into()),
            initial_map: vec![idx(1, 0), idx(0, 1)],
            auxiliary: None,
        }),
        (EncodingKind::TwoLogical, LogicalFamily::ControlPhase) => {
            // occupations of C and D are positions 1 and 3 of the (A, C, B, D) table
            let initial_map = enc
                .basis_table
                .iter()
                .map(|occ| idx(occ[1], occ[3]))
                .collect();
            Ok(ActivePair {
                labels: ("C".into(), "D".into()),
                initial_map,
                auxiliary: Some(idx(0, 2)),
            })
        }
        (kind, family) => Err(Error::domain(format!(
            "{family:?} gates are not defined on a {kind:?} encoding"
        ))),
    }
}

/// Fidelity of a physical density matrix with an encoded logical target.
pub fn logical_state_fidelity(
    rho: &DensityMatrix,
    logical_target: &StateVector,
    enc: &LogicalEncoding,
) -> Result<f64> {
    state_fidelity(rho, &encode(logical_target, enc)?)
}

/// Collective dephasing on the physical qubits of `enc`: one collapse
/// operator `Σ_q |1⟩⟨1|_q` with the given rate.
pub fn collective_dephasing(enc: &LogicalEncoding, rate: f64) -> Result<(Operator, f64)> {
    let d = enc.levels;
    let n = enc.physical_map.len();
    let p1 = projector(d, 1)?;
    let mut total = Operator::zeros(enc.physical_dim());
    for q in 0..n {
        let mut term = Operator::identity(1);
        for k in 0..n {
            let factor = if k == q {
                p1.clone()
            } else {
                Operator::identity(d)
            };
            term = kron(&term, &factor);
        }
        total = &total + &term;
    }
    Ok((total, rate))
}

/// Logical coefficients read back from a physical pure state (no renormalisation).
pub fn decode_amplitudes(physical: &StateVector, enc: &LogicalEncoding) -> Result<Vec<C64>> {
    if physical.dim() != enc.physical_dim() {
        return Err(Error::domain(
            "physical state dimension does not match the encoding",
        ));
    }
    Ok(enc
        .physical_indices()
        .iter()
        .map(|&i| physical.amplitudes()[i])
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::device::{units::mhz, ErrorModel, ModulatedQubit, Subspace, TransmonParams};
    use crate::dynamics::{
        propagate_lindblad, propagate_schrodinger, ConstantHamiltonian, PairHamiltonian, PairModel,
        PropagationConfig,
    };
    use crate::schedule::{make_cp_schedule, make_logical_single_schedule};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn encode_examples() {
        let s1 = LogicalEncoding::new(EncodingKind::SingleLogical, 2).unwrap();
        let zero = encode(&StateVector::basis(2, 0), &s1).unwrap();
        assert_eq!(zero.amplitudes()[0b10], c(1.0, 0.0));
        let s2 = LogicalEncoding::new(EncodingKind::TwoLogical, 2).unwrap();
        let eleven = encode(&StateVector::basis(4, 3), &s2).unwrap();
        assert_eq!(eleven.amplitudes()[0b0101], c(1.0, 0.0));
        let plus = encode(&StateVector::from_real(&[1.0, 1.0]).unwrap(), &s1).unwrap();
        assert!((plus.amplitudes()[0b10].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((plus.amplitudes()[0b01].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(encode(&StateVector::basis(4, 0), &s1).is_err());
    }

    #[test]
    fn three_level_indices() {
        let s2 = LogicalEncoding::new(EncodingKind::TwoLogical, 3).unwrap();
        // |1010⟩ = 1·27 + 0·9 + 1·3 + 0
        assert_eq!(s2.physical_index(0), 30);
        assert_eq!(s2.physical_dim(), 81);
        assert!(LogicalEncoding::new(EncodingKind::TwoLogical, 4).is_err());
    }

    #[test]
    fn active_pairs() {
        let s1 = LogicalEncoding::new(EncodingKind::SingleLogical, 3).unwrap();
        let p = active_pair_reduction(&s1, LogicalFamily::SingleQubit).unwrap();
        assert_eq!(p.labels, ("A".to_string(), "C".to_string()));
        assert_eq!(p.initial_map, vec![3, 1]);
        let s2 = LogicalEncoding::new(EncodingKind::TwoLogical, 3).unwrap();
        let p = active_pair_reduction(&s2, LogicalFamily::ControlPhase).unwrap();
        assert_eq!(p.labels, ("C".to_string(), "D".to_string()));
        assert_eq!(p.initial_map, vec![0, 1, 3, 4]);
        assert_eq!(p.auxiliary, Some(2));
        assert!(active_pair_reduction(&s1, LogicalFamily::ControlPhase).is_err());
    }

    #[test]
    fn logical_fidelity_examples() {
        let s1 = LogicalEncoding::new(EncodingKind::SingleLogical, 3).unwrap();
        let t = StateVector::from_real(&[0.6, 0.8]).unwrap();
        let rho = DensityMatrix::from_pure(&encode(&t, &s1).unwrap());
        assert!((logical_state_fidelity(&rho, &t, &s1).unwrap() - 1.0).abs() < 1e-14);
        let mixed = DensityMatrix::maximally_mixed(9);
        assert!((logical_state_fidelity(&mixed, &t, &s1).unwrap() - 1.0 / 9.0).abs() < 1e-14);
        let orth = StateVector::from_real(&[0.8, -0.6]).unwrap();
        assert!(logical_state_fidelity(&rho, &orth, &s1).unwrap().abs() < 1e-14);
    }

    fn logical_state() -> impl Strategy<Value = Vec<C64>> {
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 4)
            .prop_filter("nonzero", |v| {
                v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3
            })
            .prop_map(|v| v.into_iter().map(|(a, b)| c(a, b)).collect())
    }

    proptest! {
        #[test]
        fn encode_is_isometry(a in logical_state(), b in logical_state(), levels in 2usize..4) {
            let enc = LogicalEncoding::new(EncodingKind::TwoLogical, levels).unwrap();
            let (a, b) = (StateVector::new(a).unwrap(), StateVector::new(b).unwrap());
            let (ea, eb) = (encode(&a, &enc).unwrap(), encode(&b, &enc).unwrap());
            prop_assert!((ea.inner(&eb) - a.inner(&b)).norm() < 1e-14);
            prop_assert!((ea.norm() - 1.0).abs() < 1e-14);
            let back = decode_amplitudes(&ea, &enc).unwrap();
            for (x, y) in back.iter().zip(a.amplitudes()) {
                prop_assert!((x - y).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn collective_dephasing_leaves_encoded_states_unchanged() {
        let enc = LogicalEncoding::new(EncodingKind::SingleLogical, 3).unwrap();
        let noise = collective_dephasing(&enc, 2.0 * PI * 1e6).unwrap();
        let target = StateVector::new(vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        let rho0 = DensityMatrix::from_pure(&encode(&target, &enc).unwrap());
        let idle = ConstantHamiltonian {
            h: Operator::zeros(9),
            duration: 2e-6,
        };
        let cfg = PropagationConfig::new(1e-9).with_stride(100);
        let traj = propagate_lindblad(&idle, &[noise], &rho0, &cfg).unwrap();
        let crate::dynamics::States::Mixed(states) = &traj.states else {
            panic!("expected mixed states")
        };
        for rho in states {
            assert!((logical_state_fidelity(rho, &target, &enc).unwrap() - 1.0).abs() < 1e-6);
        }
        // dephasing only one member does destroy the coherence
        let local = (
            crate::linalg::kron(&projector(3, 1).unwrap(), &Operator::identity(3)),
            2.0 * PI * 1e6,
        );
        let traj = propagate_lindblad(&idle, &[local], &rho0, &cfg).unwrap();
        let f = logical_state_fidelity(&traj.final_density(), &target, &enc).unwrap();
        assert!(f < 0.99);
    }

    fn transmon(omega_mhz: f64, alpha_mhz: f64) -> TransmonParams {
        TransmonParams::new(mhz(omega_mhz), mhz(alpha_mhz)).unwrap()
    }

    #[test]
    fn logical_gate_stays_in_single_excitation_subspace() {
        let pair = PairParams {
            qubit_a: transmon(5000.0, 220.0),
            qubit_b: transmon(4835.0, 245.0),
            g: mhz(20.0),
            drive_eps: 0.0,
            drive_nu: 0.0,
            drive_phase: 0.0,
            modulated: ModulatedQubit::Second,
        }
        .tune(Subspace::SingleExcitation, 2.2);
        let g_eff = pair.effective_coupling(Subspace::SingleExcitation);
        let sched = make_logical_single_schedule(FRAC_PI_2, 0.0, FRAC_PI_2, g_eff).unwrap();
        let model =
            PairModel::new(pair, &sched, ErrorModel::none(), 3, PairHamiltonian::Full).unwrap();
        let enc = LogicalEncoding::new(EncodingKind::SingleLogical, 3).unwrap();
        let psi0 = encode(&StateVector::basis(2, 0), &enc).unwrap();
        let traj = propagate_schrodinger(
            &model,
            &psi0,
            &PropagationConfig::new(1e-12).with_stride(500),
        )
        .unwrap();
        for pops in &traj.populations {
            let outside: f64 = pops
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != 1 && *i != 3)
                .map(|(_, p)| p)
                .sum();
            assert!(outside < 1e-7, "leaked population {outside}");
        }
    }

    #[test]
    fn ground_pair_idles_under_control_phase() {
        let pair = PairParams {
            qubit_a: transmon(4700.0, 230.0),
            qubit_b: transmon(4800.0, 240.0),
            g: mhz(15.0),
            drive_eps: 0.0,
            drive_nu: 0.0,
            drive_phase: 0.0,
            modulated: ModulatedQubit::First,
        }
        .tune(Subspace::TwoExcitation, 1.5);
        let g_eff = pair.effective_coupling(Subspace::TwoExcitation);
        let sched = make_cp_schedule(FRAC_PI_2, g_eff).unwrap();
        let model =
            PairModel::new(pair, &sched, ErrorModel::none(), 3, PairHamiltonian::Full).unwrap();
        let traj = propagate_schrodinger(
            &model,
            &StateVector::basis(9, 0),
            &PropagationConfig::new(1e-12),
        )
        .unwrap();
        let fin = traj.final_pure().unwrap();
        assert!((fin.amplitudes()[0] - c(1.0, 0.0)).norm() < 1e-12);
    }
}
