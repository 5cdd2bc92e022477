//! Resolved experiment descriptions in configuration units.
//!
//! Values are stored exactly as they appear in configuration documents
//! (frequencies in MHz or kHz, angles in radians, times in picoseconds) so a
//! resolved experiment serializes back to a document that reproduces the run.
//! Conversion to angular SI units happens in the accessors.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::device::units::{khz, mhz};
use crate::device::{ModulatedQubit, PairParams, TransmonParams};
use crate::error::{Error, Result};
use crate::schedule::Sin2Shape;

/// Figure panel an experiment reproduces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentId {
    Fig2a,
    Fig2b,
    Fig2c,
    Fig2d,
    Fig3,
    Fig4a,
    Fig4b,
    Fig4c,
    Fig4d,
    Fig4e,
    Fig5a,
    Fig5b,
    Fig5c,
    Fig6a,
    Fig6b,
    Fig6c,
    Fig6d,
    Fig7a,
    Fig7b,
    Fig8,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 20] = [
        Self::Fig2a,
        Self::Fig2b,
        Self::Fig2c,
        Self::Fig2d,
        Self::Fig3,
        Self::Fig4a,
        Self::Fig4b,
        Self::Fig4c,
        Self::Fig4d,
        Self::Fig4e,
        Self::Fig5a,
        Self::Fig5b,
        Self::Fig5c,
        Self::Fig6a,
        Self::Fig6b,
        Self::Fig6c,
        Self::Fig6d,
        Self::Fig7a,
        Self::Fig7b,
        Self::Fig8,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Fig2a => "fig2a",
            Self::Fig2b => "fig2b",
            Self::Fig2c => "fig2c",
            Self::Fig2d => "fig2d",
            Self::Fig3 => "fig3",
            Self::Fig4a => "fig4a",
            Self::Fig4b => "fig4b",
            Self::Fig4c => "fig4c",
            Self::Fig4d => "fig4d",
            Self::Fig4e => "fig4e",
            Self::Fig5a => "fig5a",
            Self::Fig5b => "fig5b",
            Self::Fig5c => "fig5c",
            Self::Fig6a => "fig6a",
            Self::Fig6b => "fig6b",
            Self::Fig6c => "fig6c",
            Self::Fig6d => "fig6d",
            Self::Fig7a => "fig7a",
            Self::Fig7b => "fig7b",
            Self::Fig8 => "fig8",
        }
    }

    /// True for experiments producing a time series rather than a sweep.
    pub fn is_trajectory(self) -> bool {
        matches!(
            self,
            Self::Fig2b | Self::Fig2d | Self::Fig5b | Self::Fig7a | Self::Fig7b
        )
    }

    /// True for experiments on a parametrically coupled pair.
    pub fn is_pair(self) -> bool {
        matches!(
            self,
            Self::Fig5a
                | Self::Fig5b
                | Self::Fig5c
                | Self::Fig6a
                | Self::Fig6b
                | Self::Fig6c
                | Self::Fig6d
                | Self::Fig7a
                | Self::Fig7b
        )
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Self::ALL.iter().map(|id| id.as_str()).collect();
                Error::config(format!(
                    "unknown experiment `{s}`; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// Which Hamiltonian drives pair simulations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairModelKind {
    /// Every exchange term with its full modulation.
    Full,
    /// Only the resonant effective coupling.
    Effective,
}

/// Gate selector for experiments that accept either single-qubit target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateChoice {
    Not,
    Hadamard,
}

/// Evenly spaced sweep axis including both ends.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisRange {
    pub from: f64,
    pub to: f64,
    pub points: usize,
}

impl AxisRange {
    pub fn new(from: f64, to: f64, points: usize) -> Self {
        Self { from, to, points }
    }

    pub fn validate(&self, name: &str) -> Result<()> {
        if self.points == 0 {
            return Err(Error::config(format!(
                "sweep axis `{name}` needs at least one point"
            )));
        }
        if !self.from.is_finite() || !self.to.is_finite() {
            return Err(Error::config(format!(
                "sweep axis `{name}` has a non-finite bound"
            )));
        }
        if self.points > 1 && self.from == self.to {
            return Err(Error::config(format!(
                "sweep axis `{name}` is empty: from equals to"
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.from];
        }
        let step = (self.to - self.from) / (self.points - 1) as f64;
        (0..self.points)
            .map(|k| {
                if k + 1 == self.points {
                    self.to
                } else {
                    self.from + k as f64 * step
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceConfig {
    /// Levels per transmon (2 or 3).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
    #[serde(rename = "alpha_MHz", skip_serializing_if = "Option::is_none")]
    pub alpha_mhz: Option<f64>,
    #[serde(rename = "alphaA_MHz", skip_serializing_if = "Option::is_none")]
    pub alpha_a_mhz: Option<f64>,
    #[serde(rename = "alphaB_MHz", skip_serializing_if = "Option::is_none")]
    pub alpha_b_mhz: Option<f64>,
    #[serde(rename = "alphaC_MHz", skip_serializing_if = "Option::is_none")]
    pub alpha_c_mhz: Option<f64>,
    #[serde(rename = "alphaD_MHz", skip_serializing_if = "Option::is_none")]
    pub alpha_d_mhz: Option<f64>,
    /// Bare exchange coupling.
    #[serde(rename = "g_MHz", skip_serializing_if = "Option::is_none")]
    pub g_mhz: Option<f64>,
    /// Detuning Δ between the unmodulated and modulated qubit.
    #[serde(rename = "detuning_MHz", skip_serializing_if = "Option::is_none")]
    pub detuning_mhz: Option<f64>,
    /// Modulation index β = ε/ν.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<PairModelKind>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseConfig {
    #[serde(rename = "omega0_MHz", skip_serializing_if = "Option::is_none")]
    pub omega0_mhz: Option<f64>,
    #[serde(rename = "omega0_not_MHz", skip_serializing_if = "Option::is_none")]
    pub omega0_not_mhz: Option<f64>,
    #[serde(
        rename = "omega0_hadamard_MHz",
        skip_serializing_if = "Option::is_none"
    )]
    pub omega0_hadamard_mhz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub drag: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<Sin2Shape>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gate: Option<GateChoice>,
    /// Control-phase angle ξ_L (rad).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseConfig {
    /// Uniform decoherence rate κ (κ₋¹ = κ_z¹ = κ, level-2 rates 2κ).
    #[serde(rename = "kappa_kHz", skip_serializing_if = "Option::is_none")]
    pub kappa_khz: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorsConfig {
    /// Qubit-frequency drift δ, or the detuning drift for pair experiments.
    #[serde(rename = "drift_MHz", skip_serializing_if = "Option::is_none")]
    pub drift_mhz: Option<f64>,
    /// Fractional drive-amplitude error ε.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    /// Fractional coupling error η.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(rename = "omega0_MHz", skip_serializing_if = "Option::is_none")]
    pub omega0_mhz: Option<AxisRange>,
    #[serde(rename = "alpha_MHz", skip_serializing_if = "Option::is_none")]
    pub alpha_mhz: Option<AxisRange>,
    #[serde(rename = "alphaA_MHz", skip_serializing_if = "Option::is_none")]
    pub alpha_a_mhz: Option<AxisRange>,
    #[serde(rename = "alphaB_MHz", skip_serializing_if = "Option::is_none")]
    pub alpha_b_mhz: Option<AxisRange>,
    /// Drift as a fraction of each gate's own Ω0.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub drift_frac: Option<AxisRange>,
    #[serde(rename = "drift_MHz", skip_serializing_if = "Option::is_none")]
    pub drift_mhz: Option<AxisRange>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<AxisRange>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<AxisRange>,
    #[serde(rename = "kappa_kHz", skip_serializing_if = "Option::is_none")]
    pub kappa_khz: Option<AxisRange>,
    /// Input states for single-qubit averaged fidelities.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Input states per axis for two-qubit averaged fidelities.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Keep every k-th integration step in trajectories.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub record_stride: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorConfig {
    #[serde(rename = "dt_ps", skip_serializing_if = "Option::is_none")]
    pub dt_ps: Option<f64>,
}

/// A fully resolved experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub experiment: ExperimentId,
    pub device: DeviceConfig,
    pub pulse: PulseConfig,
    pub noise: NoiseConfig,
    pub errors: ErrorsConfig,
    pub sweep: SweepConfig,
    pub output: OutputConfig,
    pub integrator: IntegratorConfig,
}

/// Unwraps a resolved field, naming it when absent.
pub(crate) fn req<T: Copy>(v: Option<T>, key: &str) -> Result<T> {
    v.ok_or_else(|| Error::config(format!("missing required key `{key}`")))
}

const SINGLE_ALPHA_MHZ: f64 = 220.0;
const KAPPA_KHZ: f64 = 4.0;

impl ExperimentSpec {
    /// Parameter set used for `id` when a document leaves a key out.
    pub fn defaults(id: ExperimentId) -> Self {
        use ExperimentId::*;
        let mut s = Self {
            experiment: id,
            device: DeviceConfig {
                levels: Some(3),
                ..Default::default()
            },
            pulse: PulseConfig::default(),
            noise: NoiseConfig {
                kappa_khz: Some(KAPPA_KHZ),
            },
            errors: ErrorsConfig::default(),
            sweep: SweepConfig::default(),
            output: OutputConfig::default(),
            integrator: IntegratorConfig { dt_ps: Some(1.0) },
        };
        let single_pulse = |omega0: Option<f64>| PulseConfig {
            omega0_mhz: omega0,
            drag: Some(true),
            shape: Some(Sin2Shape::PerSegment),
            ..Default::default()
        };
        if !id.is_pair() {
            s.errors = ErrorsConfig {
                drift_mhz: Some(0.0),
                eps: Some(0.0),
                eta: None,
            };
            s.sweep.samples = Some(1001);
        } else {
            s.errors = ErrorsConfig {
                drift_mhz: Some(0.0),
                eps: None,
                eta: Some(0.0),
            };
            s.sweep.grid = Some(101);
            s.device.model = Some(PairModelKind::Full);
        }
        match id {
            Fig2a | Fig2c => {
                s.pulse = single_pulse(None);
                s.sweep.omega0_mhz = Some(AxisRange::new(10.0, 70.0, 21));
                s.sweep.alpha_mhz = Some(AxisRange::new(150.0, 350.0, 21));
            }
            Fig2b | Fig2d => {
                s.device.alpha_mhz = Some(SINGLE_ALPHA_MHZ);
                s.pulse = single_pulse(Some(if id == Fig2b { 40.0 } else { 30.0 }));
                s.output.record_stride = Some(100);
            }
            Fig3 => {
                s.device.alpha_mhz = Some(SINGLE_ALPHA_MHZ);
                s.pulse = PulseConfig {
                    omega0_not_mhz: Some(40.0),
                    omega0_hadamard_mhz: Some(30.0),
                    ..single_pulse(None)
                };
                s.errors.drift_mhz = None;
                s.sweep.drift_frac = Some(AxisRange::new(-0.1, 0.1, 41));
            }
            Fig4a | Fig4b | Fig4c | Fig4d | Fig4e => {
                s.device.levels = Some(2);
                s.device.alpha_mhz = Some(SINGLE_ALPHA_MHZ);
                s.pulse = single_pulse(Some(40.0));
                s.errors.eps = None;
                s.sweep.eps = Some(AxisRange::new(-0.1, 0.1, if id == Fig4a { 41 } else { 21 }));
                if id == Fig4a {
                    s.noise.kappa_khz = Some(0.0);
                } else {
                    s.noise.kappa_khz = None;
                    s.sweep.kappa_khz = Some(AxisRange::new(0.0, 10.0, 21));
                }
            }
            Fig8 => {
                s.device.alpha_mhz = Some(SINGLE_ALPHA_MHZ);
                s.pulse = PulseConfig {
                    shape: Some(Sin2Shape::PerSegment),
                    ..Default::default()
                };
                s.sweep.omega0_mhz = Some(AxisRange::new(10.0, 70.0, 41));
            }
            Fig5a | Fig5b | Fig5c | Fig6a | Fig6b | Fig6c | Fig6d => {
                s.device.g_mhz = Some(8.0);
                s.device.detuning_mhz = Some(146.0);
                s.device.beta = Some(2.1);
                if id != Fig5a {
                    s.device.alpha_a_mhz = Some(220.0);
                    s.device.alpha_b_mhz = Some(255.0);
                }
                match id {
                    Fig5a => {
                        s.sweep.alpha_a_mhz = Some(AxisRange::new(150.0, 350.0, 21));
                        s.sweep.alpha_b_mhz = Some(AxisRange::new(150.0, 350.0, 21));
                    }
                    Fig5b => s.output.record_stride = Some(1000),
                    Fig5c => {
                        s.errors.drift_mhz = None;
                        s.sweep.drift_mhz = Some(AxisRange::new(-14.6, 14.6, 41));
                        s.device.model = Some(PairModelKind::Effective);
                        s.integrator.dt_ps = Some(10.0);
                    }
                    _ => {
                        s.device.model = Some(PairModelKind::Effective);
                        s.errors.eta = None;
                        s.noise.kappa_khz = None;
                        s.sweep.eta = Some(AxisRange::new(-0.1, 0.1, 21));
                        s.sweep.kappa_khz = Some(AxisRange::new(0.0, 10.0, 21));
                        s.integrator.dt_ps = Some(100.0);
                    }
                }
            }
            Fig7a => {
                s.device.alpha_a_mhz = Some(220.0);
                s.device.alpha_c_mhz = Some(245.0);
                s.device.g_mhz = Some(20.0);
                s.device.detuning_mhz = Some(165.0);
                s.device.beta = Some(2.2);
                s.pulse.gate = Some(GateChoice::Not);
                s.sweep.grid = None;
                s.sweep.samples = Some(1001);
                s.output.record_stride = Some(1000);
            }
            Fig7b => {
                s.device.alpha_c_mhz = Some(245.0);
                s.device.alpha_d_mhz = Some(200.0);
                s.device.g_mhz = Some(10.0);
                s.device.detuning_mhz = Some(130.0);
                s.device.beta = Some(2.1);
                s.pulse.xi = Some(FRAC_PI_2);
                s.output.record_stride = Some(1000);
            }
        }
        s
    }

    /// Checks value ranges that serde cannot express.
    pub fn validate(&self) -> Result<()> {
        if let Some(l) = self.device.levels {
            if l != 2 && l != 3 {
                return Err(Error::config(format!(
                    "device.levels must be 2 or 3, got {l}"
                )));
            }
        }
        let positive = [
            ("device.alpha_MHz", self.device.alpha_mhz),
            ("device.alphaA_MHz", self.device.alpha_a_mhz),
            ("device.alphaB_MHz", self.device.alpha_b_mhz),
            ("device.alphaC_MHz", self.device.alpha_c_mhz),
            ("device.alphaD_MHz", self.device.alpha_d_mhz),
            ("device.g_MHz", self.device.g_mhz),
            ("pulse.omega0_MHz", self.pulse.omega0_mhz),
            ("pulse.omega0_not_MHz", self.pulse.omega0_not_mhz),
            ("pulse.omega0_hadamard_MHz", self.pulse.omega0_hadamard_mhz),
            ("integrator.dt_ps", self.integrator.dt_ps),
        ];
        for (key, v) in positive {
            if let Some(x) = v {
                if !(x > 0.0) || !x.is_finite() {
                    return Err(Error::config(format!("`{key}` must be positive, got {x}")));
                }
            }
        }
        if let Some(k) = self.noise.kappa_khz {
            if !(k >= 0.0) || !k.is_finite() {
                return Err(Error::config(format!(
                    "`noise.kappa_kHz` must be non-negative, got {k}"
                )));
            }
        }
        if let Some(b) = self.device.beta {
            if !(b > 0.0) || !b.is_finite() {
                return Err(Error::config(format!(
                    "`device.beta` must be positive, got {b}"
                )));
            }
        }
        if self.sweep.samples.is_some_and(|n| n < 2) || self.sweep.grid.is_some_and(|n| n < 2) {
            return Err(Error::config(
                "fidelity input grids need at least 2 samples",
            ));
        }
        for (name, axis) in self.axes() {
            axis.validate(name)?;
        }
        Ok(())
    }

    /// Sweep axes present in this experiment, in declaration order.
    pub fn axes(&self) -> Vec<(&'static str, AxisRange)> {
        let s = &self.sweep;
        [
            ("omega0_MHz", s.omega0_mhz),
            ("alpha_MHz", s.alpha_mhz),
            ("alphaA_MHz", s.alpha_a_mhz),
            ("alphaB_MHz", s.alpha_b_mhz),
            ("drift_frac", s.drift_frac),
            ("drift_MHz", s.drift_mhz),
            ("eps", s.eps),
            ("eta", s.eta),
            ("kappa_kHz", s.kappa_khz),
        ]
        .into_iter()
        .filter_map(|(n, a)| a.map(|a| (n, a)))
        .collect()
    }

    /// Integration step in seconds.
    pub fn dt(&self) -> Result<f64> {
        Ok(req(self.integrator.dt_ps, "integrator.dt_ps")? * 1e-12)
    }

    pub fn levels(&self) -> Result<usize> {
        req(self.device.levels, "device.levels")
    }

    /// Uniform decoherence rate κ in rad/s (0 when unset).
    pub fn kappa(&self) -> f64 {
        self.noise.kappa_khz.map_or(0.0, khz)
    }

    pub fn record_stride(&self) -> usize {
        self.output.record_stride.unwrap_or(0)
    }

    /// Single transmon with anharmonicity `alpha_mhz` and uniform rate `kappa`.
    pub fn transmon(alpha_mhz: f64, kappa: f64) -> Result<TransmonParams> {
        TransmonParams::with_uniform_kappa(0.0, mhz(alpha_mhz), kappa)
    }

    /// Active pair of a pair experiment, tuned to resonance on its subspace.
    ///
    /// Anharmonicities `(first, second)` override the device values when given.
    pub fn pair(&self, alphas: Option<(f64, f64)>, kappa: f64) -> Result<PairParams> {
        use ExperimentId::*;
        let d = &self.device;
        let (first, second, modulated, subspace) = match self.experiment {
            Fig7a => (
                req(d.alpha_a_mhz, "device.alphaA_MHz")?,
                req(d.alpha_c_mhz, "device.alphaC_MHz")?,
                ModulatedQubit::Second,
                crate::device::Subspace::SingleExcitation,
            ),
            Fig7b => (
                req(d.alpha_c_mhz, "device.alphaC_MHz")?,
                req(d.alpha_d_mhz, "device.alphaD_MHz")?,
                ModulatedQubit::First,
                crate::device::Subspace::TwoExcitation,
            ),
            id if id.is_pair() => {
                let (a, b) = match alphas {
                    Some(ab) => ab,
                    None => (
                        req(d.alpha_a_mhz, "device.alphaA_MHz")?,
                        req(d.alpha_b_mhz, "device.alphaB_MHz")?,
                    ),
                };
                (
                    a,
                    b,
                    ModulatedQubit::Second,
                    crate::device::Subspace::SingleExcitation,
                )
            }
            id => return Err(Error::config(format!("{id} is not a pair experiment"))),
        };
        let (first, second) = alphas.unwrap_or((first, second));
        let detuning = mhz(req(d.detuning_mhz, "device.detuning_MHz")?);
        // only the detuning enters the rotating frame; place the modulated qubit at 0
        let (omega_first, omega_second) = match modulated {
            ModulatedQubit::Second => (detuning, 0.0),
            ModulatedQubit::First => (0.0, detuning),
        };
        let pair = PairParams {
            qubit_a: TransmonParams::with_uniform_kappa(omega_first, mhz(first), kappa)?,
            qubit_b: TransmonParams::with_uniform_kappa(omega_second, mhz(second), kappa)?,
            g: mhz(req(d.g_mhz, "device.g_MHz")?),
            drive_eps: 0.0,
            drive_nu: 0.0,
            drive_phase: 0.0,
            modulated,
        };
        Ok(pair.tune(subspace, req(d.beta, "device.beta")?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::device::Subspace;

    #[test]
    fn every_default_validates_and_round_trips() {
        for id in ExperimentId::ALL {
            let s = ExperimentSpec::defaults(id);
            s.validate().unwrap();
            let text = serde_json::to_string(&s).unwrap();
            let back: ExperimentSpec = serde_json::from_str(&text).unwrap();
            assert_eq!(back, s, "{id}");
            assert_eq!(id.as_str().parse::<ExperimentId>().unwrap(), id);
        }
        assert!("fig9".parse::<ExperimentId>().is_err());
    }

    #[test]
    fn axis_values_hit_both_ends() {
        let v = AxisRange::new(-0.1, 0.1, 41).values();
        assert_eq!(v.len(), 41);
        assert_eq!(v[0], -0.1);
        assert_eq!(v[40], 0.1);
        assert!(v[20].abs() < 1e-17);
        assert!(AxisRange::new(1.0, 1.0, 3).validate("x").is_err());
        assert!(AxisRange::new(0.0, 1.0, 0).validate("x").is_err());
    }

    #[test]
    fn pair_tuning_matches_resonances() {
        let s = ExperimentSpec::defaults(ExperimentId::Fig5b);
        let p = s.pair(None, 0.0).unwrap();
        assert!((p.detuning() - mhz(146.0)).abs() < 1e-3);
        assert!((p.drive_nu - mhz(146.0)).abs() < 1e-3);
        assert!((p.beta() - 2.1).abs() < 1e-12);
        let s = ExperimentSpec::defaults(ExperimentId::Fig7b);
        let p = s.pair(None, 0.0).unwrap();
        // ν = α_D − Δ = 200 − 130 MHz
        assert!((p.drive_nu - mhz(70.0)).abs() < 1e-3);
        assert_eq!(p.subspace_states(Subspace::TwoExcitation), (4, 2));
    }
}
