//! Transmon and coupled-pair Hamiltonians, collapse operators and Bessel helpers.
//!
//! Single transmons are simulated in the frame rotating at the drive
//! frequency. Coupled pairs are simulated in the interaction picture of the
//! static transmon Hamiltonians, where the parametric flux modulation of one
//! qubit appears as the phase factor `exp(iβ cos(νt + φ))` on every exchange
//! term.

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kron, lowering, projector, Operator, C64, ZERO};

/// Conversions from ordinary frequencies to angular frequencies.
pub mod units {
    use std::f64::consts::TAU;

    /// `2π × f × 1e9` for `f` in GHz.
    pub fn ghz(f: f64) -> f64 {
        TAU * f * 1e9
    }

    /// `2π × f × 1e6` for `f` in MHz.
    pub fn mhz(f: f64) -> f64 {
        TAU * f * 1e6
    }

    /// `2π × f × 1e3` for `f` in kHz.
    pub fn khz(f: f64) -> f64 {
        TAU * f * 1e3
    }

    /// Inverse of [`mhz`].
    pub fn to_mhz(omega: f64) -> f64 {
        omega / (TAU * 1e6)
    }

    pub fn ns(t: f64) -> f64 {
        t * 1e-9
    }
}

/// One transmon: frequency, anharmonicity and per-level decoherence rates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransmonParams {
    /// Qubit transition frequency ω (rad/s).
    pub omega: f64,
    /// Anharmonicity α > 0 (rad/s); level 2 sits at 2ω − α.
    pub alpha: f64,
    /// Relaxation rates κ₋¹ (|1⟩→|0⟩) and κ₋² (|2⟩→|1⟩).
    pub kappa_relax: [f64; 2],
    /// Dephasing rates κ_z¹ and κ_z² of levels 1 and 2.
    pub kappa_dephase: [f64; 2],
}

impl TransmonParams {
    /// Noise-free transmon.
    pub fn new(omega: f64, alpha: f64) -> Result<Self> {
        let p = Self {
            omega,
            alpha,
            kappa_relax: [0.0; 2],
            kappa_dephase: [0.0; 2],
        };
        p.validate()?;
        Ok(p)
    }

    /// Rates κ₋¹ = κ_z¹ = κ and κ₋² = κ_z² = 2κ.
    pub fn with_uniform_kappa(omega: f64, alpha: f64, kappa: f64) -> Result<Self> {
        let p = Self {
            omega,
            alpha,
            kappa_relax: [kappa, 2.0 * kappa],
            kappa_dephase: [kappa, 2.0 * kappa],
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            return Err(Error::domain(format!(
                "anharmonicity must be positive, got {}",
                self.alpha
            )));
        }
        if !self.omega.is_finite() {
            return Err(Error::domain("qubit frequency must be finite"));
        }
        let rates = self.kappa_relax.iter().chain(&self.kappa_dephase);
        if rates.clone().any(|&k| !(k >= 0.0) || !k.is_finite()) {
            return Err(Error::domain(
                "decoherence rates must be finite and non-negative",
            ));
        }
        Ok(())
    }

    /// Copy with all decoherence rates set to zero.
    pub fn noiseless(&self) -> Self {
        Self {
            kappa_relax: [0.0; 2],
            kappa_dephase: [0.0; 2],
            ..*self
        }
    }
}

/// Which member of a pair carries the parametric flux modulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModulatedQubit {
    /// The second qubit is modulated; the detuning is ω_first − ω_second.
    Second,
    /// The first qubit is modulated; the detuning is ω_second − ω_first.
    First,
}

/// Which pair of levels an effective exchange Hamiltonian acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subspace {
    /// |10⟩ ↔ |01⟩ (labelled unmodulated, modulated), resonant when Δ = ν.
    SingleExcitation,
    /// |11⟩ ↔ |20⟩ (unmodulated doubly excited), resonant when ν = α_unmod − Δ.
    TwoExcitation,
}

/// Two capacitively coupled transmons with one parametrically modulated.
///
/// Qubit order in tensor products is always (`qubit_a`, `qubit_b`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairParams {
    pub qubit_a: TransmonParams,
    pub qubit_b: TransmonParams,
    /// Bare exchange coupling g (rad/s).
    pub g: f64,
    /// Modulation amplitude ε (rad/s).
    pub drive_eps: f64,
    /// Modulation frequency ν (rad/s).
    pub drive_nu: f64,
    /// Constant offset added to every segment phase (rad).
    pub drive_phase: f64,
    pub modulated: ModulatedQubit,
}

impl PairParams {
    pub fn validate(&self) -> Result<()> {
        self.qubit_a.validate()?;
        self.qubit_b.validate()?;
        if self.drive_eps != 0.0 && self.drive_nu == 0.0 {
            return Err(Error::domain(
                "modulation frequency must be nonzero when modulation is active",
            ));
        }
        Ok(())
    }

    /// Modulation index β = ε/ν (0 when unmodulated).
    pub fn beta(&self) -> f64 {
        if self.drive_nu == 0.0 {
            0.0
        } else {
            self.drive_eps / self.drive_nu
        }
    }

    /// Detuning Δ = ω_unmodulated − ω_modulated.
    pub fn detuning(&self) -> f64 {
        let (u, m) = self.unmodulated_modulated();
        u.omega - m.omega
    }

    /// (unmodulated, modulated) qubit parameters.
    pub fn unmodulated_modulated(&self) -> (&TransmonParams, &TransmonParams) {
        match self.modulated {
            ModulatedQubit::Second => (&self.qubit_a, &self.qubit_b),
            ModulatedQubit::First => (&self.qubit_b, &self.qubit_a),
        }
    }

    /// Effective coupling strength on `subspace` at the current β.
    pub fn effective_coupling(&self, subspace: Subspace) -> f64 {
        let j1 = bessel_j(1, self.beta()) * self.g;
        match subspace {
            Subspace::SingleExcitation => j1,
            Subspace::TwoExcitation => SQRT_2 * j1,
        }
    }

    /// Modulation frequency that makes `subspace` resonant at the current detuning.
    pub fn resonant_nu(&self, subspace: Subspace) -> f64 {
        let (u, _) = self.unmodulated_modulated();
        match subspace {
            Subspace::SingleExcitation => self.detuning(),
            Subspace::TwoExcitation => u.alpha - self.detuning(),
        }
    }

    /// Sets ν to the resonant value for `subspace` and ε = β·ν.
    pub fn tune(mut self, subspace: Subspace, beta: f64) -> Self {
        self.drive_nu = self.resonant_nu(subspace);
        self.drive_eps = beta * self.drive_nu;
        self
    }

    pub fn noiseless(&self) -> Self {
        Self {
            qubit_a: self.qubit_a.noiseless(),
            qubit_b: self.qubit_b.noiseless(),
            ..*self
        }
    }

    /// Index of the two-transmon basis state |m n⟩ in a `levels`-per-qubit space.
    pub fn index(levels: usize, m: usize, n: usize) -> usize {
        m * levels + n
    }

    /// The two basis states coupled by `subspace`, as (upper, lower) indices of
    /// the 3-level pair space: the effective Hamiltonian has `⟨upper|H|lower⟩ =
    /// g′·e^{-i(φ∓π/2)}`.
    pub fn subspace_states(&self, subspace: Subspace) -> (usize, usize) {
        let idx = |u: usize, m: usize| match self.modulated {
            ModulatedQubit::Second => Self::index(3, u, m),
            ModulatedQubit::First => Self::index(3, m, u),
        };
        match subspace {
            Subspace::SingleExcitation => (idx(1, 0), idx(0, 1)),
            Subspace::TwoExcitation => (idx(1, 1), idx(2, 0)),
        }
    }
}

/// Frequency drift and fractional miscalibration errors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ErrorModel {
    /// Single-qubit frequency drift δ (rad/s).
    pub drift_delta: f64,
    /// Drift of the pair detuning Δ (rad/s).
    pub drift_detuning: f64,
    /// Fractional drive-amplitude error ε.
    pub sys_eps: f64,
    /// Fractional coupling error η.
    pub sys_eta: f64,
}

impl ErrorModel {
    pub fn none() -> Self {
        Self::default()
    }
}

/// Rotating-frame Hamiltonian of one driven transmon.
///
/// `drive` is the complex amplitude `Ω_D(t)·e^{-iφ}` with any systematic
/// scaling already applied. `levels` is 2 or 3; the two-level model drops
/// the |1⟩↔|2⟩ transition and the anharmonic shift.
pub fn single_qubit_rotating_hamiltonian(
    p: &TransmonParams,
    drive: C64,
    err: &ErrorModel,
    levels: usize,
) -> Result<Operator> {
    let mut h = Operator::zeros(levels);
    match levels {
        2 => {
            h[(1, 1)] = C64::new(err.drift_delta, 0.0);
            h[(0, 1)] = drive * 0.5;
            h[(1, 0)] = drive.conj() * 0.5;
        }
        3 => {
            h[(1, 1)] = C64::new(err.drift_delta, 0.0);
            h[(2, 2)] = C64::new(-p.alpha + 2.0 * err.drift_delta, 0.0);
            h[(0, 1)] = drive * 0.5;
            h[(1, 0)] = drive.conj() * 0.5;
            h[(1, 2)] = drive * (0.5 * SQRT_2);
            h[(2, 1)] = drive.conj() * (0.5 * SQRT_2);
        }
        _ => {
            return Err(Error::domain(format!(
                "transmon truncation must be 2 or 3 levels, got {levels}"
            )))
        }
    }
    Ok(h)
}

/// Interaction-picture Hamiltonian of a modulated pair at time `t`.
///
/// With U the unmodulated and M the modulated qubit, Δ = ω_U − ω_M (plus any
/// drift) and f = exp(iβ cos(νt + φ)):
///
/// `H = g(1+η)·f·[ |1_U 0_M⟩⟨0_U 1_M| e^{iΔt} + √2 |1_U 1_M⟩⟨0_U 2_M| e^{i(Δ+α_M)t}
///      + √2 |2_U 0_M⟩⟨1_U 1_M| e^{i(Δ−α_U)t} ] + h.c.`
///
/// `levels` = 2 keeps only the single-excitation exchange.
pub fn pair_interaction_hamiltonian(
    p: &PairParams,
    t: f64,
    phase: f64,
    err: &ErrorModel,
    levels: usize,
) -> Result<Operator> {
    if levels != 2 && levels != 3 {
        return Err(Error::domain(format!(
            "transmon truncation must be 2 or 3 levels, got {levels}"
        )));
    }
    let mut h = Operator::zeros(levels * levels);
    for (ket, bra, c) in pair_terms(p, t, phase, err, levels) {
        h[(ket, bra)] += c;
        h[(bra, ket)] += c.conj();
    }
    Ok(h)
}

/// Exchange terms as (ket, bra, coefficient); the Hermitian conjugate is implied.
pub(crate) fn pair_terms(
    p: &PairParams,
    t: f64,
    phase: f64,
    err: &ErrorModel,
    levels: usize,
) -> Vec<(usize, usize, C64)> {
    let (u, m) = p.unmodulated_modulated();
    let delta = p.detuning() + err.drift_detuning;
    let g = p.g * (1.0 + err.sys_eta);
    let f = C64::from_polar(
        1.0,
        p.beta() * (p.drive_nu * t + phase + p.drive_phase).cos(),
    );
    let idx = |nu: usize, nm: usize| match p.modulated {
        ModulatedQubit::Second => nu * levels + nm,
        ModulatedQubit::First => nm * levels + nu,
    };
    let mut terms = vec![(idx(1, 0), idx(0, 1), f * C64::from_polar(g, delta * t))];
    if levels == 3 {
        terms.push((
            idx(1, 1),
            idx(0, 2),
            f * C64::from_polar(SQRT_2 * g, (delta + m.alpha) * t),
        ));
        terms.push((
            idx(2, 0),
            idx(1, 1),
            f * C64::from_polar(SQRT_2 * g, (delta - u.alpha) * t),
        ));
    }
    terms
}

/// Resonant two-level Hamiltonian left after dropping all oscillating terms.
///
/// Returned in the basis (upper, lower) of [`PairParams::subspace_states`]:
/// single excitation gives `g′ e^{-i(φ−π/2)}` above the diagonal, two
/// excitation gives `g′ e^{-i(φ+π/2)}`.
pub fn effective_pair_hamiltonian(
    p: &PairParams,
    phase: f64,
    subspace: Subspace,
) -> Result<Operator> {
    let want = p.resonant_nu(subspace);
    let scale = want.abs().max(p.drive_nu.abs()).max(1.0);
    if (p.drive_nu - want).abs() > 1e-9 * scale {
        return Err(Error::Precondition(format!(
            "modulation frequency {:.6e} rad/s is off resonance (expected {:.6e})",
            p.drive_nu, want
        )));
    }
    let g_eff = p.effective_coupling(subspace);
    let shift = match subspace {
        Subspace::SingleExcitation => -PI / 2.0,
        Subspace::TwoExcitation => PI / 2.0,
    };
    let c = C64::from_polar(g_eff, -(phase + p.drive_phase + shift));
    Operator::from_rows(&[vec![ZERO, c], vec![c.conj(), ZERO]])
}

/// The effective Hamiltonian embedded in the 9-dimensional pair space.
pub fn effective_pair_hamiltonian_full(
    p: &PairParams,
    phase: f64,
    subspace: Subspace,
) -> Result<Operator> {
    let h2 = effective_pair_hamiltonian(p, phase, subspace)?;
    let (upper, lower) = p.subspace_states(subspace);
    Ok(h2.embed(9, &[upper, lower]))
}

/// Lindblad operators of one transmon with their rates.
///
/// The dissipator convention is `rate·(2AρA† − A†Aρ − ρA†A)`, so the rates are
/// half the physical decay constants.
pub fn collapse_operators(p: &TransmonParams, space_dim: usize) -> Result<Vec<(Operator, f64)>> {
    match space_dim {
        2 => Ok(vec![
            (lowering(2, 1)?, p.kappa_relax[0] / 2.0),
            (projector(2, 1)?, p.kappa_dephase[0] / 2.0),
        ]),
        3 => Ok(vec![
            (lowering(3, 1)?, p.kappa_relax[0] / 2.0),
            (lowering(3, 2)?, p.kappa_relax[1] / 2.0),
            (projector(3, 1)?, p.kappa_dephase[0] / 2.0),
            (projector(3, 2)?, p.kappa_dephase[1] / 2.0),
        ]),
        _ => Err(Error::domain(format!(
            "transmon truncation must be 2 or 3 levels, got {space_dim}"
        ))),
    }
}

/// Collapse operators of both pair members embedded in the product space.
pub fn pair_collapse_operators(p: &PairParams, levels: usize) -> Result<Vec<(Operator, f64)>> {
    let id = Operator::identity(levels);
    let mut out = Vec::new();
    for (a, r) in collapse_operators(&p.qubit_a, levels)? {
        out.push((kron(&a, &id), r));
    }
    for (b, r) in collapse_operators(&p.qubit_b, levels)? {
        out.push((kron(&id, &b), r));
    }
    Ok(out)
}

/// Bessel function of the first kind J_n(x) for integer n.
///
/// Evaluated with the trapezoid rule on `(1/2π)∫₀^{2π} cos(nτ − x sin τ) dτ`,
/// which converges geometrically for a periodic analytic integrand.
pub fn bessel_j(n: i32, x: f64) -> f64 {
    let nodes = 64 + 4 * (x.abs().ceil() as usize + n.unsigned_abs() as usize);
    let h = 2.0 * PI / nodes as f64;
    let sum: f64 = (0..nodes)
        .map(|k| {
            let tau = k as f64 * h;
            (n as f64 * tau - x * tau.sin()).cos()
        })
        .sum();
    sum / nodes as f64
}

/// Location of the first maximum of J₁.
pub const J1_FIRST_MAX: f64 = 1.841_183_781_340_659;

/// Smallest β ≥ 0 with J₁(β) = `target`; `target` must lie in [0, max J₁].
pub fn inverse_bessel_j1(target: f64) -> Result<f64> {
    let jmax = bessel_j(1, J1_FIRST_MAX);
    if !(0.0..=jmax).contains(&target) {
        return Err(Error::domain(format!(
            "J1 target {target} outside [0, {jmax:.6}]"
        )));
    }
    let (mut lo, mut hi) = (0.0, J1_FIRST_MAX);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if bessel_j(1, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{StateVector, I};
    use units::{khz, mhz};

    /// Power series for J_n with `terms` terms.
    fn bessel_series(n: u32, x: f64, terms: usize) -> f64 {
        let mut sum = 0.0;
        let mut term = (x / 2.0).powi(n as i32) / (1..=n).map(f64::from).product::<f64>();
        for k in 0..terms {
            sum += term;
            let k = k as f64;
            term *= -(x * x / 4.0) / ((k + 1.0) * (k + 1.0 + n as f64));
        }
        sum
    }

    fn transmon() -> TransmonParams {
        TransmonParams::with_uniform_kappa(mhz(5000.0), mhz(220.0), khz(4.0)).unwrap()
    }

    fn iswap_pair() -> PairParams {
        PairParams {
            qubit_a: TransmonParams::new(mhz(5146.0), mhz(220.0)).unwrap(),
            qubit_b: TransmonParams::new(mhz(5000.0), mhz(255.0)).unwrap(),
            g: mhz(8.0),
            drive_eps: 0.0,
            drive_nu: 0.0,
            drive_phase: 0.0,
            modulated: ModulatedQubit::Second,
        }
        .tune(Subspace::SingleExcitation, 2.1)
    }

    #[test]
    fn bessel_matches_series() {
        for n in 0..4 {
            for &x in &[0.0, 0.3, 1.0, 2.1, 2.2, 3.7, 7.5] {
                let want = bessel_series(n, x, 40);
                assert!((bessel_j(n as i32, x) - want).abs() < 1e-13, "J{n}({x})");
            }
        }
        assert!((bessel_j(1, 2.1) - 0.568_292).abs() < 1e-6);
        assert!((bessel_j(-1, 2.1) + bessel_j(1, 2.1)).abs() < 1e-14);
    }

    #[test]
    fn inverse_bessel_round_trip() {
        for &t in &[0.0, 0.1, 0.28, 0.5, 0.58] {
            let b = inverse_bessel_j1(t).unwrap();
            assert!((bessel_j(1, b) - t).abs() < 1e-12);
        }
        assert!(inverse_bessel_j1(0.6).is_err());
    }

    #[test]
    fn undriven_transmon_is_diagonal() {
        let h =
            single_qubit_rotating_hamiltonian(&transmon(), ZERO, &ErrorModel::none(), 3).unwrap();
        assert_eq!(h, Operator::from_real_diag(&[0.0, 0.0, -mhz(220.0)]));
    }

    #[test]
    fn qubit_block_matches_rabi_form() {
        let (om, phi) = (mhz(40.0), 0.7);
        let drive = C64::from_polar(om, -phi);
        let h =
            single_qubit_rotating_hamiltonian(&transmon(), drive, &ErrorModel::none(), 3).unwrap();
        let block = h.submatrix(&[0, 1]);
        let want = Operator::from_rows(&[
            vec![ZERO, C64::from_polar(om / 2.0, -phi)],
            vec![C64::from_polar(om / 2.0, phi), ZERO],
        ])
        .unwrap();
        assert!(block.max_abs_diff(&want) < 1e-6);
        assert!(h.is_hermitian(1e-12 * h.max_abs()));
    }

    #[test]
    fn drift_enters_diagonal() {
        let err = ErrorModel {
            drift_delta: mhz(1.0),
            ..ErrorModel::none()
        };
        let h = single_qubit_rotating_hamiltonian(&transmon(), ZERO, &err, 3).unwrap();
        let want = Operator::from_real_diag(&[0.0, mhz(1.0), -mhz(220.0) + mhz(2.0)]);
        assert!(h.max_abs_diff(&want) < 1e-3);
    }

    #[test]
    fn zero_coupling_gives_zero_hamiltonian() {
        let p = PairParams {
            g: 0.0,
            ..iswap_pair()
        };
        let h = pair_interaction_hamiltonian(&p, 3e-9, 0.4, &ErrorModel::none(), 3).unwrap();
        assert_eq!(h.max_abs(), 0.0);
    }

    #[test]
    fn unmodulated_magnitudes_at_t0() {
        let mut p = iswap_pair();
        p.drive_eps = 0.0;
        let h = pair_interaction_hamiltonian(&p, 0.0, 0.0, &ErrorModel::none(), 3).unwrap();
        let g = p.g;
        assert!((h[(3, 1)].norm() - g).abs() < 1e-6);
        assert!((h[(4, 2)].norm() - SQRT_2 * g).abs() < 1e-6);
        assert!((h[(6, 4)].norm() - SQRT_2 * g).abs() < 1e-6);
        assert!(h.is_hermitian(0.0));
    }

    #[test]
    fn first_modulated_transitions() {
        // first qubit modulated: exchange terms |01⟩⟨10|, |02⟩⟨11|, |11⟩⟨20|
        let mut p = iswap_pair();
        p.modulated = ModulatedQubit::First;
        p.drive_eps = 0.0;
        let h = pair_interaction_hamiltonian(&p, 0.0, 0.0, &ErrorModel::none(), 3).unwrap();
        assert!((h[(1, 3)].norm() - p.g).abs() < 1e-6);
        assert!((h[(2, 4)].norm() - SQRT_2 * p.g).abs() < 1e-6);
        assert!((h[(4, 6)].norm() - SQRT_2 * p.g).abs() < 1e-6);
        assert_eq!(p.subspace_states(Subspace::TwoExcitation), (4, 2));
    }

    #[test]
    fn period_average_gives_bessel_coupling() {
        let p = iswap_pair();
        let period = 2.0 * PI / p.drive_nu;
        let n = 20_000;
        let mut acc = ZERO;
        for k in 0..n {
            let t = (k as f64 + 0.5) * period / n as f64;
            let h = pair_interaction_hamiltonian(&p, t, 0.0, &ErrorModel::none(), 3).unwrap();
            acc += h[(3, 1)];
        }
        acc /= n as f64;
        let want = I * bessel_series(1, 2.1, 40) * p.g;
        assert!((acc - want).norm() < 1e-9 * p.g, "{acc} vs {want}");
    }

    #[test]
    fn effective_strengths() {
        let p = iswap_pair();
        let h = effective_pair_hamiltonian(&p, 0.0, Subspace::SingleExcitation).unwrap();
        let g_eff = h[(0, 1)].norm();
        assert!((g_eff - bessel_series(1, 2.1, 40) * mhz(8.0)).abs() < 1e-10 * g_eff);
        assert!((units::to_mhz(g_eff) - 4.546).abs() < 5e-3);

        let h = effective_pair_hamiltonian(&p, PI / 2.0, Subspace::SingleExcitation).unwrap();
        assert!(h[(0, 1)].im.abs() < 1e-9 * g_eff && h[(0, 1)].re > 0.0);

        let mut cd = iswap_pair();
        cd.g = mhz(10.0);
        let cd = cd.tune(Subspace::TwoExcitation, 2.1);
        let h = effective_pair_hamiltonian(&cd, 0.0, Subspace::TwoExcitation).unwrap();
        let want = SQRT_2 * bessel_series(1, 2.1, 40) * mhz(10.0);
        assert!((h[(0, 1)].norm() - want).abs() < 1e-10 * want);
    }

    #[test]
    fn effective_rejects_detuned_drive() {
        let mut p = iswap_pair();
        p.drive_nu *= 1.001;
        assert!(matches!(
            effective_pair_hamiltonian(&p, 0.0, Subspace::SingleExcitation),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn collapse_rates_follow_uniform_pattern() {
        let k = khz(4.0);
        let ops = collapse_operators(&transmon(), 3).unwrap();
        let rates: Vec<f64> = ops.iter().map(|(_, r)| *r).collect();
        assert_eq!(rates, vec![k / 2.0, k, k / 2.0, k]);
        let quiet = collapse_operators(&transmon().noiseless(), 3).unwrap();
        assert!(quiet.iter().all(|(_, r)| *r == 0.0));
        assert_eq!(pair_collapse_operators(&iswap_pair(), 3).unwrap().len(), 8);
    }

    #[test]
    fn static_exchange_rabi_transfer() {
        let mut p = iswap_pair();
        p.drive_eps = 0.0;
        p.qubit_a.omega = p.qubit_b.omega;
        let h = pair_interaction_hamiltonian(&p, 0.0, 0.0, &ErrorModel::none(), 3).unwrap();
        // exact propagator via eigendecomposition
        let (vals, vecs) = crate::linalg::eig_hermitian(&h).unwrap();
        let t = PI / (2.0 * p.g);
        let psi = StateVector::basis(9, 3);
        let mut out = vec![ZERO; 9];
        for (l, v) in vals.iter().zip(&vecs) {
            let c = v.inner(&psi) * C64::from_polar(1.0, -l * t);
            for (o, a) in out.iter_mut().zip(v.amplitudes()) {
                *o += c * a;
            }
        }
        assert!((out[1].norm_sqr() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn rejects_bad_truncation() {
        assert!(
            single_qubit_rotating_hamiltonian(&transmon(), ZERO, &ErrorModel::none(), 4).is_err()
        );
        assert!(collapse_operators(&transmon(), 1).is_err());
        assert!(TransmonParams::new(1.0, 0.0).is_err());
    }
}
