//! Ideal target unitaries and dynamical comparison gates.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::device::{inverse_bessel_j1, PairParams};
use crate::error::{Error, Result};
use crate::linalg::{Operator, StateVector, C64, I, ONE, ZERO};
use crate::schedule::{EnvelopeKind, GeometricSchedule, ScheduleFamily, Sin2Shape};

/// A gate together with the parameters that select it from its family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GateSpec {
    SingleGeometric {
        theta: f64,
        phi: f64,
        gamma: f64,
    },
    SingleComposite {
        theta: f64,
        phi: f64,
        gamma: f64,
        n: u32,
    },
    SingleDynamic {
        kind: DynamicKind,
    },
    TwoQubitGeometric {
        vartheta: f64,
        varphi: f64,
        xi: f64,
    },
    TwoQubitDynamicIswap,
    LogicalSingle {
        theta: f64,
        phi: f64,
        gamma: f64,
    },
    LogicalCp {
        xi: f64,
    },
}

impl GateSpec {
    pub fn validate(&self) -> Result<()> {
        let polar = match *self {
            GateSpec::SingleGeometric { theta, .. }
            | GateSpec::SingleComposite { theta, .. }
            | GateSpec::LogicalSingle { theta, .. } => Some(theta),
            GateSpec::TwoQubitGeometric { vartheta, .. } => Some(vartheta),
            _ => None,
        };
        if let Some(a) = polar {
            if !(0.0..=PI).contains(&a) {
                return Err(Error::domain(format!("polar angle {a} outside [0, π]")));
            }
        }
        if let GateSpec::SingleComposite { n: 0, .. } = self {
            return Err(Error::domain(
                "composite repetition count must be at least 1",
            ));
        }
        Ok(())
    }

    /// Ideal unitary on the computational (or logical) subspace.
    pub fn ideal(&self) -> Result<Operator> {
        self.validate()?;
        Ok(match *self {
            GateSpec::SingleGeometric { theta, phi, gamma } => ideal_single(theta, phi, gamma),
            GateSpec::SingleComposite {
                theta,
                phi,
                gamma,
                n,
            } => ideal_composite(theta, phi, gamma, n),
            GateSpec::SingleDynamic { kind } => dynamic_ideal(kind),
            GateSpec::TwoQubitGeometric {
                vartheta,
                varphi,
                xi,
            } => ideal_two_qubit(vartheta, varphi, xi),
            GateSpec::TwoQubitDynamicIswap => dynamic_ideal(DynamicKind::Iswap),
            GateSpec::LogicalSingle { theta, phi, gamma } => {
                ideal_logical_single(theta, phi, gamma)
            }
            GateSpec::LogicalCp { xi } => ideal_logical_cp(xi),
        })
    }
}

/// `cos γ + i sin γ n·σ` with `n = (sin θ cos φ, sin θ sin φ, cos θ)`.
pub fn ideal_single(theta: f64, phi: f64, gamma: f64) -> Operator {
    let (c, s) = (gamma.cos(), gamma.sin());
    let (st, ct) = (theta.sin(), theta.cos());
    Operator::from_rows(&[
        vec![C64::new(c, s * ct), I * C64::from_polar(s * st, -phi)],
        vec![I * C64::from_polar(s * st, phi), C64::new(c, -s * ct)],
    ])
    .expect("2x2")
}

/// Eigenstates `|ψ±⟩` of `n·σ` with eigenvalues ±1; the loop maps them to `e^{±iγ}|ψ±⟩`.
pub fn dressed_states(theta: f64, phi: f64) -> (StateVector, StateVector) {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let plus =
        StateVector::new(vec![C64::new(c, 0.0), C64::from_polar(s, phi)]).expect("unit norm");
    let minus =
        StateVector::new(vec![-C64::from_polar(s, -phi), C64::new(c, 0.0)]).expect("unit norm");
    (plus, minus)
}

/// n repetitions of the loop with phase γ: the single loop with phase nγ.
pub fn ideal_composite(theta: f64, phi: f64, gamma: f64, n: u32) -> Operator {
    ideal_single(theta, phi, n as f64 * gamma)
}

/// Exchange-loop unitary on {|00⟩, |01⟩, |10⟩, |11⟩}.
///
/// Acts as identity on |00⟩ and |11⟩ and as
/// `[[cos ξ − i sin ξ cos ϑ, i sin ξ sin ϑ e^{iφ}], [i sin ξ sin ϑ e^{−iφ}, cos ξ + i sin ξ cos ϑ]]`
/// on (|01⟩, |10⟩).
pub fn ideal_two_qubit(vartheta: f64, varphi: f64, xi: f64) -> Operator {
    let (c, s) = (xi.cos(), xi.sin());
    let mut u = Operator::identity(4);
    u[(1, 1)] = C64::new(c, -s * vartheta.cos());
    u[(1, 2)] = I * C64::from_polar(s * vartheta.sin(), varphi);
    u[(2, 1)] = I * C64::from_polar(s * vartheta.sin(), -varphi);
    u[(2, 2)] = C64::new(c, s * vartheta.cos());
    u
}

/// Logical loop unitary on {|0⟩_L, |1⟩_L}; same form as [`ideal_single`].
pub fn ideal_logical_single(theta: f64, phi: f64, gamma: f64) -> Operator {
    ideal_single(theta, phi, gamma)
}

/// `diag(1, 1, 1, e^{−iξ})` on the two-logical-qubit basis.
pub fn ideal_logical_cp(xi: f64) -> Operator {
    Operator::from_diag(&[ONE, ONE, ONE, C64::from_polar(1.0, -xi)])
}

/// Dynamical gates used as comparison baselines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DynamicKind {
    Not,
    Hadamard,
    Iswap,
}

fn dynamic_ideal(kind: DynamicKind) -> Operator {
    let h = FRAC_1_SQRT_2;
    match kind {
        DynamicKind::Not => Operator::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]).expect("2x2"),
        DynamicKind::Hadamard => {
            let (p, m) = (C64::new(h, 0.0), C64::new(-h, 0.0));
            Operator::from_rows(&[vec![p, p], vec![p, m]]).expect("2x2")
        }
        DynamicKind::Iswap => ideal_two_qubit(PI / 2.0, 0.0, PI / 2.0),
    }
}

/// Schedule and ideal unitary of a dynamical gate lasting `duration`.
///
/// NOT is a single resonant π pulse. Hadamard is a π pulse followed by a π/2
/// pulse whose phase is lowered by π/2. Both use one sin² lobe per segment
/// with the peak chosen so the gate lasts `duration`. The iSWAP is a constant
/// exchange of area π/2 with the coupling g′ = π/(2·duration).
pub fn dynamic_comparison_gate(
    kind: DynamicKind,
    duration: f64,
    drag_alpha: Option<f64>,
) -> Result<(GeometricSchedule, Operator)> {
    if !(duration > 0.0) {
        return Err(Error::domain("dynamic gate duration must be positive"));
    }
    let schedule = match kind {
        DynamicKind::Not => GeometricSchedule::from_areas(
            ScheduleFamily::DynamicSingle,
            EnvelopeKind::Sin2(Sin2Shape::PerSegment),
            2.0 * PI / duration,
            drag_alpha,
            &[(PI, 0.0)],
        )?,
        DynamicKind::Hadamard => GeometricSchedule::from_areas(
            ScheduleFamily::DynamicSingle,
            EnvelopeKind::Sin2(Sin2Shape::PerSegment),
            3.0 * PI / duration,
            drag_alpha,
            &[(PI, 0.0), (PI / 2.0, -PI / 2.0)],
        )?,
        DynamicKind::Iswap => GeometricSchedule::from_areas(
            ScheduleFamily::DynamicTwoQubit,
            EnvelopeKind::Constant,
            PI / (2.0 * duration),
            None,
            &[(PI / 2.0, -PI / 2.0)],
        )?,
    };
    Ok((schedule, dynamic_ideal(kind)))
}

/// Pair settings for the dynamical iSWAP: same coupling and detuning, with
/// the modulation index lowered until J₁(β)·g equals `g_eff`.
pub fn matched_dynamic_pair(pair: &PairParams, g_eff: f64) -> Result<PairParams> {
    let beta = inverse_bessel_j1(g_eff / pair.g)?;
    Ok(PairParams {
        drive_eps: beta * pair.drive_nu,
        ..*pair
    })
}

/// Composite order: one, two or three repetitions of the elementary loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompositeOrder {
    T1,
    T2,
    T3,
}

impl CompositeOrder {
    pub fn repetitions(self) -> u32 {
        match self {
            CompositeOrder::T1 => 1,
            CompositeOrder::T2 => 2,
            CompositeOrder::T3 => 3,
        }
    }

    /// Loop phase per repetition so that every order implements γ = π/2.
    pub fn loop_phase(self) -> f64 {
        PI / (2.0 * self.repetitions() as f64)
    }

    /// Coefficient of `−ε²π²` specific to this order.
    fn order_coefficient(self) -> f64 {
        match self {
            CompositeOrder::T1 => 0.25,
            CompositeOrder::T2 => 0.5 - 1.0 / (2.0 * SQRT_2),
            CompositeOrder::T3 => 1.0 - 3f64.sqrt() / 2.0,
        }
    }
}

/// Second-order expansion of the normalized trace overlap under amplitude error.
///
/// `1 + ε²πθ/2 − ε²θ²/2 − c ε²π²` with c = 1/4, 1/2 − 1/(2√2), 1 − √3/2 for
/// one, two and three repetitions.
pub fn analytic_error_fidelity(order: CompositeOrder, theta: f64, eps: f64) -> f64 {
    let e2 = eps * eps;
    1.0 + 0.5 * e2 * PI * theta
        - 0.5 * e2 * theta * theta
        - order.order_coefficient() * e2 * PI * PI
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::ideal_two_level_propagator;
    use crate::metrics::process_overlap;
    use crate::schedule::{make_single_qubit_schedule, repeat_composite};
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    fn sx() -> Operator {
        Operator::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]).unwrap()
    }

    #[test]
    fn single_qubit_examples() {
        assert!(ideal_single(FRAC_PI_2, 0.0, FRAC_PI_2).max_abs_diff(&sx().scale(I)) < 1e-15);
        let h = Operator::from_rows(&[
            vec![C64::new(FRAC_1_SQRT_2, 0.0), C64::new(FRAC_1_SQRT_2, 0.0)],
            vec![C64::new(FRAC_1_SQRT_2, 0.0), C64::new(-FRAC_1_SQRT_2, 0.0)],
        ])
        .unwrap();
        assert!(ideal_single(PI / 4.0, 0.0, FRAC_PI_2).max_abs_diff(&h.scale(I)) < 1e-15);
        assert!(ideal_single(0.4, 1.0, 0.0).max_abs_diff(&Operator::identity(2)) < 1e-15);
    }

    #[test]
    fn composite_examples() {
        let not = sx().scale(I);
        assert!(ideal_composite(FRAC_PI_2, 0.0, PI / 4.0, 2).max_abs_diff(&not) < 1e-15);
        assert!(ideal_composite(FRAC_PI_2, 0.0, PI / 6.0, 3).max_abs_diff(&not) < 1e-15);
        assert_eq!(
            ideal_composite(0.3, 0.2, 0.1, 1),
            ideal_single(0.3, 0.2, 0.1)
        );
        // the repeated schedule realises the same gate
        let s =
            make_single_qubit_schedule(FRAC_PI_2, 0.0, PI / 6.0, 1e8, None, Sin2Shape::PerSegment)
                .unwrap();
        let u = ideal_two_level_propagator(&repeat_composite(&s, 3).unwrap(), 0.0).unwrap();
        assert!(u.max_abs_diff(&not) < 1e-14);
    }

    #[test]
    fn two_qubit_examples() {
        let u = ideal_two_qubit(FRAC_PI_2, 0.0, FRAC_PI_2);
        let mut iswap = Operator::zeros(4);
        iswap[(0, 0)] = ONE;
        iswap[(3, 3)] = ONE;
        iswap[(1, 2)] = I;
        iswap[(2, 1)] = I;
        assert!(u.max_abs_diff(&iswap) < 1e-15);
        assert!(ideal_two_qubit(0.7, 0.2, 0.0).max_abs_diff(&Operator::identity(4)) < 1e-15);
        let plus = StateVector::from_real(&[1.0, 1.0, 1.0, 1.0]).unwrap();
        let out = u.apply(&plus);
        let want = StateVector::new(vec![ONE, I, I, ONE]).unwrap();
        assert!(out.max_diff(&want) < 1e-15);
    }

    #[test]
    fn logical_examples() {
        assert!(
            ideal_logical_cp(FRAC_PI_2).max_abs_diff(&Operator::from_diag(&[ONE, ONE, ONE, -I]))
                < 1e-15
        );
        assert!(ideal_logical_cp(0.0).max_abs_diff(&Operator::identity(4)) < 1e-15);
        assert!(ideal_logical_cp(2.0 * PI).max_abs_diff(&Operator::identity(4)) < 1e-14);
        assert_eq!(
            ideal_logical_single(0.3, 0.1, 0.9),
            ideal_single(0.3, 0.1, 0.9)
        );
    }

    #[test]
    fn dynamic_gates() {
        let t = 50e-9;
        for kind in [DynamicKind::Not, DynamicKind::Hadamard] {
            let (s, ideal) = dynamic_comparison_gate(kind, t, None).unwrap();
            assert!((s.total_time() - t).abs() < 1e-20);
            let u = ideal_two_level_propagator(&s, 0.0).unwrap();
            assert!(
                (process_overlap(&ideal, &u).unwrap() - 1.0).abs() < 1e-14,
                "{kind:?}"
            );
        }
        let (s, ideal) = dynamic_comparison_gate(DynamicKind::Iswap, 110e-9, None).unwrap();
        assert!((s.total_time() - 110e-9).abs() < 1e-20);
        assert_eq!(ideal, ideal_two_qubit(FRAC_PI_2, 0.0, FRAC_PI_2));
    }

    #[test]
    fn analytic_expansion_examples() {
        for order in [CompositeOrder::T1, CompositeOrder::T2, CompositeOrder::T3] {
            assert_eq!(analytic_error_fidelity(order, 0.7, 0.0), 1.0);
        }
        let eps = 0.03;
        let d2 = analytic_error_fidelity(CompositeOrder::T2, 1.0, eps)
            - analytic_error_fidelity(CompositeOrder::T1, 1.0, eps);
        let d3 = analytic_error_fidelity(CompositeOrder::T3, 1.0, eps)
            - analytic_error_fidelity(CompositeOrder::T1, 1.0, eps);
        assert!((d2 / (eps * eps) - (0.25 - 0.5 + 1.0 / (2.0 * SQRT_2)) * PI * PI).abs() < 1e-9);
        assert!((d3 / (eps * eps) - (0.25 - 1.0 + 3f64.sqrt() / 2.0) * PI * PI).abs() < 1e-9);
    }

    fn overlap_at(order: CompositeOrder, theta: f64, eps: f64) -> f64 {
        let s = make_single_qubit_schedule(
            theta,
            0.0,
            order.loop_phase(),
            1e8,
            None,
            Sin2Shape::PerSegment,
        )
        .unwrap();
        let s = repeat_composite(&s, order.repetitions()).unwrap();
        let ideal = ideal_single(theta, 0.0, FRAC_PI_2);
        process_overlap(&ideal, &ideal_two_level_propagator(&s, eps).unwrap()).unwrap()
    }

    proptest! {
        #[test]
        fn ideal_gates_are_unitary(theta in 0.0..PI, phi in -PI..PI, gamma in -PI..PI, n in 1u32..5) {
            prop_assert!(ideal_single(theta, phi, gamma).unitarity_error() < 1e-14);
            prop_assert!(ideal_two_qubit(theta, phi, gamma).unitarity_error() < 1e-14);
            prop_assert!(ideal_logical_cp(gamma).unitarity_error() < 1e-14);
            prop_assert!(ideal_composite(theta, phi, gamma, n).max_abs_diff(&ideal_single(theta, phi, n as f64 * gamma)) < 1e-14);
        }

        #[test]
        fn expansion_tracks_overlap(theta in 0.0..PI, eps in -0.1f64..0.1) {
            for order in [CompositeOrder::T1, CompositeOrder::T2, CompositeOrder::T3] {
                let diff = (overlap_at(order, theta, eps) - analytic_error_fidelity(order, theta, eps)).abs();
                prop_assert!(diff < 10.0 * eps.abs().powi(3) + 1e-13, "{:?} θ={} ε={} diff={}", order, theta, eps, diff);
            }
        }
    }
}
