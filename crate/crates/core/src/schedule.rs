//! Orange-slice pulse schedules.
//!
//! A schedule is an ordered list of segments, each with a target pulse area
//! and a drive phase, laid out in time by an envelope. Single-qubit schedules
//! are microwave drives with a sin² envelope (optionally DRAG-corrected);
//! two-qubit and logical schedules describe a parametric modulation whose
//! effective coupling is constant, so only segment durations and phases
//! matter.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::output::fmt_sig;

/// How a sin² envelope is laid over the segments of one loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sin2Shape {
    /// One lobe per segment, all with the same peak. The phase jumps then
    /// happen where the amplitude vanishes.
    PerSegment,
    /// One lobe spanning the whole loop; segment boundaries are found by
    /// solving the cumulative-area equations.
    Global,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvelopeKind {
    Sin2(Sin2Shape),
    Constant,
}

/// Gate family a schedule belongs to; decides how phases are interpreted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleFamily {
    /// Microwave drive; segment phase is the drive phase φ in `Ω e^{-iφ}`.
    SingleQubit,
    /// Resonant microwave drive without a closed loop.
    DynamicSingle,
    /// Parametric exchange on the single-excitation subspace of a pair.
    TwoQubit,
    /// Same exchange, read in the logical basis of a DFS-encoded qubit.
    LogicalSingle,
    /// Parametric exchange on the two-excitation subspace.
    ControlPhase,
    /// Exchange of fixed phase used as a dynamical comparison gate.
    DynamicTwoQubit,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    /// Target pulse area (rad): ∫Ω dt for microwave drives, g′τ for exchange.
    pub target_area: f64,
    pub phase: f64,
    pub start: f64,
    pub duration: f64,
}

impl Segment {
    pub fn end(&self) -> f64 {
        self.start + self.duration
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometricSchedule {
    pub family: ScheduleFamily,
    pub envelope: EnvelopeKind,
    /// Peak drive amplitude Ω0 or effective coupling g′ (rad/s).
    pub omega0: f64,
    /// Anharmonicity used for the DRAG quadrature, if enabled.
    pub drag_alpha: Option<f64>,
    pub composite_n: u32,
    /// Duration of one loop.
    pub loop_time: f64,
    /// All segments of all repetitions, in time order.
    pub segments: Vec<Segment>,
}

/// Cumulative area of a sin² lobe of peak `peak` and length `len` at time `t`.
fn sin2_area(peak: f64, len: f64, t: f64) -> f64 {
    peak * (t / 2.0 - len / (4.0 * PI) * (2.0 * PI * t / len).sin())
}

/// Solves `sin2_area(t) = target` on [0, len] by bisection.
fn sin2_time_for_area(peak: f64, len: f64, target: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, len);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if sin2_area(peak, len, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * len {
            break;
        }
    }
    0.5 * (lo + hi)
}

fn check_polar(name: &str, angle: f64) -> Result<()> {
    if !(0.0..=PI).contains(&angle) {
        return Err(Error::domain(format!("{name} = {angle} outside [0, π]")));
    }
    Ok(())
}

fn check_rate(name: &str, value: f64) -> Result<()> {
    if !(value > 0.0) || !value.is_finite() {
        return Err(Error::domain(format!(
            "{name} must be positive, got {value}"
        )));
    }
    Ok(())
}

impl GeometricSchedule {
    /// Lays out one loop of `(area, phase)` pairs and wraps it in a schedule.
    pub fn from_areas(
        family: ScheduleFamily,
        envelope: EnvelopeKind,
        omega0: f64,
        drag_alpha: Option<f64>,
        areas_phases: &[(f64, f64)],
    ) -> Result<Self> {
        check_rate("peak amplitude", omega0)?;
        if areas_phases.iter().any(|&(a, _)| !(a >= 0.0)) {
            return Err(Error::domain("segment areas must be non-negative"));
        }
        if let Some(alpha) = drag_alpha {
            if alpha == 0.0 || !alpha.is_finite() {
                return Err(Error::domain(
                    "DRAG requires a finite nonzero anharmonicity",
                ));
            }
        }
        let total: f64 = areas_phases.iter().map(|&(a, _)| a).sum();
        let mut segments = Vec::with_capacity(areas_phases.len());
        match envelope {
            EnvelopeKind::Constant | EnvelopeKind::Sin2(Sin2Shape::PerSegment) => {
                // a sin² lobe has mean value Ω0/2
                let per_area = match envelope {
                    EnvelopeKind::Constant => 1.0 / omega0,
                    _ => 2.0 / omega0,
                };
                let mut start = 0.0;
                for &(area, phase) in areas_phases {
                    let duration = area * per_area;
                    segments.push(Segment {
                        target_area: area,
                        phase,
                        start,
                        duration,
                    });
                    start += duration;
                }
            }
            EnvelopeKind::Sin2(Sin2Shape::Global) => {
                let len = 2.0 * total / omega0;
                let mut cum = 0.0;
                let mut start = 0.0;
                for (k, &(area, phase)) in areas_phases.iter().enumerate() {
                    cum += area;
                    let end = if k + 1 == areas_phases.len() || cum >= total {
                        len
                    } else {
                        sin2_time_for_area(omega0, len, cum)
                    };
                    segments.push(Segment {
                        target_area: area,
                        phase,
                        start,
                        duration: end - start,
                    });
                    start = end;
                }
            }
        }
        let loop_time = segments.last().map_or(0.0, Segment::end);
        Ok(Self {
            family,
            envelope,
            omega0,
            drag_alpha,
            composite_n: 1,
            loop_time,
            segments,
        })
    }

    pub fn total_time(&self) -> f64 {
        self.segments.last().map_or(0.0, Segment::end)
    }

    /// Segment boundary times including 0 and the final time.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out = vec![0.0];
        out.extend(self.segments.iter().map(Segment::end));
        out
    }

    /// Index of the segment containing `t` (the later one at a boundary).
    pub fn segment_at(&self, t: f64) -> usize {
        let k = self.segments.partition_point(|s| s.end() <= t);
        k.min(self.segments.len().saturating_sub(1))
    }

    fn segments_per_loop(&self) -> usize {
        self.segments.len() / self.composite_n as usize
    }

    /// Real envelope Ω(t) and its derivative, evaluated inside segment `seg`.
    pub fn envelope_at(&self, seg: usize, t: f64) -> (f64, f64) {
        let s = &self.segments[seg];
        let (t0, len) = match self.envelope {
            EnvelopeKind::Constant => return (self.omega0, 0.0),
            EnvelopeKind::Sin2(Sin2Shape::PerSegment) => (s.start, s.duration),
            EnvelopeKind::Sin2(Sin2Shape::Global) => {
                let rep = seg / self.segments_per_loop();
                (rep as f64 * self.loop_time, self.loop_time)
            }
        };
        if len == 0.0 {
            return (0.0, 0.0);
        }
        let x = PI * (t - t0) / len;
        let val = self.omega0 * x.sin().powi(2);
        let der = self.omega0 * (PI / len) * (2.0 * x).sin();
        (val, der)
    }

    /// DRAG-corrected envelope `Ω(t) − iΩ̇(t)/(2α)` before the phase factor.
    ///
    /// The quadrature sign is the one that cancels |1⟩→|2⟩ leakage when the
    /// drive enters as `Ω e^{-iφ}|0⟩⟨1|` and level 2 sits at −α.
    pub fn drag_envelope(&self, t: f64) -> Result<C64> {
        let alpha = self
            .drag_alpha
            .ok_or_else(|| Error::domain("schedule has no DRAG anharmonicity"))?;
        let (val, der) = self.envelope_at(self.segment_at(t), t);
        Ok(C64::new(val, -der / (2.0 * alpha)))
    }

    /// Complex drive `Ω_D(t)e^{-iφ}` inside segment `seg`, scaled by `1+eps`.
    pub fn drive(&self, seg: usize, t: f64, eps: f64) -> C64 {
        let (val, der) = self.envelope_at(seg, t);
        let amp = match self.drag_alpha {
            Some(alpha) => C64::new(val, -der / (2.0 * alpha)),
            None => C64::new(val, 0.0),
        };
        amp * C64::from_polar(1.0 + eps, -self.segments[seg].phase)
    }

    /// Area of segment `seg` by composite Simpson quadrature with `n` panels.
    pub fn segment_area_numeric(&self, seg: usize, n: usize) -> f64 {
        let s = &self.segments[seg];
        if s.duration == 0.0 {
            return 0.0;
        }
        let n = n + n % 2;
        let h = s.duration / n as f64;
        let f = |k: usize| self.envelope_at(seg, s.start + k as f64 * h).0;
        let inner: f64 = (1..n)
            .map(|k| if k % 2 == 1 { 4.0 } else { 2.0 } * f(k))
            .sum();
        (f(0) + inner + f(n)) * h / 3.0
    }

    /// Text record listing envelope, peak, DRAG setting and segment table.
    pub fn to_record(&self) -> String {
        let env = match self.envelope {
            EnvelopeKind::Sin2(Sin2Shape::PerSegment) => "sin2_per_segment",
            EnvelopeKind::Sin2(Sin2Shape::Global) => "sin2_global",
            EnvelopeKind::Constant => "constant",
        };
        let mut out = String::new();
        let _ = writeln!(out, "family,{:?}", self.family);
        let _ = writeln!(out, "envelope,{env}");
        let _ = writeln!(out, "omega0_rad_per_s,{}", fmt_sig(self.omega0));
        let drag = self.drag_alpha.map_or_else(|| "none".to_string(), fmt_sig);
        let _ = writeln!(out, "drag_alpha_rad_per_s,{drag}");
        let _ = writeln!(out, "composite_n,{}", self.composite_n);
        let _ = writeln!(out, "start_s,end_s,area_rad,phase_rad");
        for s in &self.segments {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                fmt_sig(s.start),
                fmt_sig(s.end()),
                fmt_sig(s.target_area),
                fmt_sig(s.phase)
            );
        }
        out
    }
}

/// Single-qubit loop with areas (θ, π, π−θ) and phases (φ−π/2, φ+γ+π/2, φ−π/2).
///
/// Total time is 4π/Ω0 for either sin² shape.
pub fn make_single_qubit_schedule(
    theta: f64,
    phi: f64,
    gamma: f64,
    omega0: f64,
    drag_alpha: Option<f64>,
    shape: Sin2Shape,
) -> Result<GeometricSchedule> {
    check_polar("theta", theta)?;
    GeometricSchedule::from_areas(
        ScheduleFamily::SingleQubit,
        EnvelopeKind::Sin2(shape),
        omega0,
        drag_alpha,
        &[
            (theta, phi - PI / 2.0),
            (PI, phi + gamma + PI / 2.0),
            (PI - theta, phi - PI / 2.0),
        ],
    )
}

/// Two-qubit exchange loop with areas g′τ = (ϑ/2, π/2, π/2−ϑ/2) and phases (φ, φ+ξ+π, φ).
pub fn make_two_qubit_schedule(
    vartheta: f64,
    varphi: f64,
    xi: f64,
    g_eff: f64,
) -> Result<GeometricSchedule> {
    exchange_loop(ScheduleFamily::TwoQubit, vartheta, varphi, xi, g_eff)
}

/// Logical single-qubit loop; same layout as [`make_two_qubit_schedule`].
pub fn make_logical_single_schedule(
    theta_l: f64,
    phi_l: f64,
    gamma_l: f64,
    g_eff: f64,
) -> Result<GeometricSchedule> {
    exchange_loop(
        ScheduleFamily::LogicalSingle,
        theta_l,
        phi_l,
        gamma_l,
        g_eff,
    )
}

fn exchange_loop(
    family: ScheduleFamily,
    polar: f64,
    phase: f64,
    loop_phase: f64,
    g_eff: f64,
) -> Result<GeometricSchedule> {
    check_polar("polar angle", polar)?;
    check_rate("effective coupling", g_eff)?;
    GeometricSchedule::from_areas(
        family,
        EnvelopeKind::Constant,
        g_eff,
        None,
        &[
            (polar / 2.0, phase),
            (PI / 2.0, phase + loop_phase + PI),
            (PI / 2.0 - polar / 2.0, phase),
        ],
    )
}

/// Control-phase loop: two segments of area π/2 with phases (π, ξ_L).
pub fn make_cp_schedule(xi_l: f64, g_eff: f64) -> Result<GeometricSchedule> {
    check_rate("effective coupling", g_eff)?;
    GeometricSchedule::from_areas(
        ScheduleFamily::ControlPhase,
        EnvelopeKind::Constant,
        g_eff,
        None,
        &[(PI / 2.0, PI), (PI / 2.0, xi_l)],
    )
}

/// Concatenates `n` copies of `schedule` back to back.
pub fn repeat_composite(schedule: &GeometricSchedule, n: u32) -> Result<GeometricSchedule> {
    if n == 0 {
        return Err(Error::domain(
            "composite repetition count must be at least 1",
        ));
    }
    let total = schedule.total_time();
    let mut segments = Vec::with_capacity(schedule.segments.len() * n as usize);
    for rep in 0..n {
        let shift = rep as f64 * total;
        segments.extend(schedule.segments.iter().map(|s| Segment {
            start: s.start + shift,
            ..*s
        }));
    }
    Ok(GeometricSchedule {
        composite_n: schedule.composite_n * n,
        segments,
        ..schedule.clone()
    })
}
