//! Fixed-step fourth-order Runge–Kutta propagation.
//!
//! Hamiltonians are piecewise smooth: the drive phase jumps at segment
//! boundaries. A [`Generator`] exposes those boundaries as breakpoints, the
//! step grid is aligned to them, and every stage of a step samples the
//! Hamiltonian of the piece that owns the step.

use serde::{Deserialize, Serialize};

use crate::device::{
    effective_pair_hamiltonian_full, pair_terms, single_qubit_rotating_hamiltonian, ErrorModel,
    PairParams, Subspace, TransmonParams,
};
use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, DensityMatrix, Operator, SparseOp, StateVector, C64, I, ONE, ZERO,
};
use crate::output::Table;
use crate::schedule::{GeometricSchedule, ScheduleFamily};

/// Largest allowed `dt · max|eigenvalue(H)|`.
pub const MAX_PHASE_PER_STEP: f64 = 0.05;

/// Drift in norm or trace that aborts a run.
pub const DRIFT_LIMIT: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Rk4,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropagationConfig {
    /// Requested step (s); each piece uses the largest step not exceeding it.
    pub dt: f64,
    /// Store every k-th step; 0 stores only the initial and final states.
    pub record_stride: usize,
    pub method: Method,
}

impl PropagationConfig {
    pub fn new(dt: f64) -> Self {
        Self {
            dt,
            record_stride: 0,
            method: Method::Rk4,
        }
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.record_stride = stride;
        self
    }
}

/// A time-dependent Hamiltonian that is smooth between breakpoints.
pub trait Generator: Sync {
    fn dim(&self) -> usize;
    /// Ascending times; the run covers `[first, last]`.
    fn breakpoints(&self) -> Vec<f64>;
    /// Hamiltonian at `t` on piece `piece` (between breakpoints `piece` and `piece + 1`).
    fn hamiltonian(&self, piece: usize, t: f64) -> Operator;
}

/// Generator from a closure.
pub struct PiecewiseHamiltonian<F> {
    dim: usize,
    breakpoints: Vec<f64>,
    f: F,
}

impl<F: Fn(usize, f64) -> Operator + Sync> PiecewiseHamiltonian<F> {
    pub fn new(dim: usize, breakpoints: Vec<f64>, f: F) -> Self {
        Self {
            dim,
            breakpoints,
            f,
        }
    }
}

impl<F: Fn(usize, f64) -> Operator + Sync> Generator for PiecewiseHamiltonian<F> {
    fn dim(&self) -> usize {
        self.dim
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.breakpoints.clone()
    }
    fn hamiltonian(&self, piece: usize, t: f64) -> Operator {
        (self.f)(piece, t)
    }
}

/// Time-independent Hamiltonian applied for `duration`.
pub struct ConstantHamiltonian {
    pub h: Operator,
    pub duration: f64,
}

impl Generator for ConstantHamiltonian {
    fn dim(&self) -> usize {
        self.h.dim()
    }
    fn breakpoints(&self) -> Vec<f64> {
        vec![0.0, self.duration]
    }
    fn hamiltonian(&self, _piece: usize, _t: f64) -> Operator {
        self.h.clone()
    }
}

/// One driven transmon following a microwave schedule.
pub struct SingleQubitModel<'a> {
    pub params: TransmonParams,
    pub schedule: &'a GeometricSchedule,
    pub errors: ErrorModel,
    /// 2 or 3. The two-level model ignores the DRAG quadrature.
    pub levels: usize,
}

impl Generator for SingleQubitModel<'_> {
    fn dim(&self) -> usize {
        self.levels
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.schedule.breakpoints()
    }
    fn hamiltonian(&self, piece: usize, t: f64) -> Operator {
        let drive = if self.levels == 2 {
            let (val, _) = self.schedule.envelope_at(piece, t);
            C64::from_polar(
                val * (1.0 + self.errors.sys_eps),
                -self.schedule.segments[piece].phase,
            )
        } else {
            self.schedule.drive(piece, t, self.errors.sys_eps)
        };
        single_qubit_rotating_hamiltonian(&self.params, drive, &self.errors, self.levels)
            .expect("levels validated at construction")
    }
}

impl<'a> SingleQubitModel<'a> {
    pub fn new(
        params: TransmonParams,
        schedule: &'a GeometricSchedule,
        errors: ErrorModel,
        levels: usize,
    ) -> Result<Self> {
        if levels != 2 && levels != 3 {
            return Err(Error::domain(format!(
                "transmon truncation must be 2 or 3 levels, got {levels}"
            )));
        }
        Ok(Self {
            params,
            schedule,
            errors,
            levels,
        })
    }
}

/// Which Hamiltonian drives a pair simulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairHamiltonian {
    /// All exchange terms with their full time dependence.
    Full,
    /// Only the resonant term on the given subspace.
    Effective(Subspace),
}

/// A modulated pair following an exchange schedule.
pub struct PairModel<'a> {
    pub params: PairParams,
    pub schedule: &'a GeometricSchedule,
    pub errors: ErrorModel,
    pub levels: usize,
    pub kind: PairHamiltonian,
}

impl<'a> PairModel<'a> {
    pub fn new(
        params: PairParams,
        schedule: &'a GeometricSchedule,
        errors: ErrorModel,
        levels: usize,
        kind: PairHamiltonian,
    ) -> Result<Self> {
        params.validate()?;
        if levels != 2 && levels != 3 {
            return Err(Error::domain(format!(
                "transmon truncation must be 2 or 3 levels, got {levels}"
            )));
        }
        if let PairHamiltonian::Effective(sub) = kind {
            if levels != 3 {
                return Err(Error::domain(
                    "effective pair model is defined on the 3-level pair space",
                ));
            }
            effective_pair_hamiltonian_full(&params, 0.0, sub)?;
        }
        Ok(Self {
            params,
            schedule,
            errors,
            levels,
            kind,
        })
    }
}

impl Generator for PairModel<'_> {
    fn dim(&self) -> usize {
        self.levels * self.levels
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.schedule.breakpoints()
    }
    fn hamiltonian(&self, piece: usize, t: f64) -> Operator {
        let phase = self.schedule.segments[piece].phase;
        match self.kind {
            PairHamiltonian::Full => {
                let mut h = Operator::zeros(self.dim());
                for (ket, bra, c) in pair_terms(&self.params, t, phase, &self.errors, self.levels) {
                    h[(ket, bra)] += c;
                    h[(bra, ket)] += c.conj();
                }
                h
            }
            PairHamiltonian::Effective(sub) => {
                let mut h = effective_pair_hamiltonian_full(&self.params, phase, sub)
                    .expect("resonance validated at construction")
                    .scale(C64::new(1.0 + self.errors.sys_eta, 0.0));
                // a detuning drift d leaves the resonant term rotating at e^{±idt}
                let d = self.errors.drift_detuning;
                if d != 0.0 {
                    let (upper, lower) = self.params.subspace_states(sub);
                    let sign = match sub {
                        Subspace::SingleExcitation => 1.0,
                        Subspace::TwoExcitation => -1.0,
                    };
                    h[(upper, lower)] *= C64::from_polar(1.0, sign * d * t);
                    h[(lower, upper)] = h[(upper, lower)].conj();
                }
                h
            }
        }
    }
}

/// Stored states of a trajectory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum States {
    Pure(Vec<StateVector>),
    Mixed(Vec<DensityMatrix>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: States,
    /// `populations[k][level]` at `times[k]`.
    pub populations: Vec<Vec<f64>>,
    pub fidelity_series: Option<Vec<f64>>,
}

impl Trajectory {
    pub fn final_time(&self) -> f64 {
        *self
            .times
            .last()
            .expect("trajectory has at least one sample")
    }

    pub fn final_pure(&self) -> Option<&StateVector> {
        match &self.states {
            States::Pure(v) => v.last(),
            States::Mixed(_) => None,
        }
    }

    pub fn final_mixed(&self) -> Option<&DensityMatrix> {
        match &self.states {
            States::Mixed(v) => v.last(),
            States::Pure(_) => None,
        }
    }

    /// Final state as a density matrix regardless of how it was stored.
    pub fn final_density(&self) -> DensityMatrix {
        match &self.states {
            States::Pure(v) => DensityMatrix::from_pure(v.last().expect("nonempty")),
            States::Mixed(v) => v.last().expect("nonempty").clone(),
        }
    }

    /// Attaches `⟨target|ρ(t)|target⟩` at every stored time.
    pub fn with_state_fidelity(mut self, target: &StateVector) -> Self {
        let series = match &self.states {
            States::Pure(v) => v.iter().map(|s| target.inner(s).norm_sqr()).collect(),
            States::Mixed(v) => v.iter().map(|r| r.expectation(target).re).collect(),
        };
        self.fidelity_series = Some(series);
        self
    }

    /// Columns `time_s, p0, p1, ...` and `fidelity` when present.
    pub fn to_table(&self) -> Table {
        let levels = self.populations.first().map_or(0, Vec::len);
        let mut header: Vec<String> = vec!["time_s".into()];
        header.extend((0..levels).map(|k| format!("p{k}")));
        if self.fidelity_series.is_some() {
            header.push("fidelity".into());
        }
        let mut table = Table {
            header,
            rows: Vec::new(),
        };
        for (k, &t) in self.times.iter().enumerate() {
            let mut row = vec![t];
            row.extend(&self.populations[k]);
            if let Some(f) = &self.fidelity_series {
                row.push(f[k]);
            }
            table.rows.push(row);
        }
        table
    }
}

/// Rejects step sizes whose phase per step exceeds [`MAX_PHASE_PER_STEP`].
///
/// Samples the Hamiltonian at 1000 evenly spaced times.
pub fn check_step_size(gen: &dyn Generator, dt: f64) -> Result<()> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::domain(format!("dt must be positive, got {dt}")));
    }
    let bp = gen.breakpoints();
    let (t0, t1) = (bp[0], *bp.last().expect("breakpoints nonempty"));
    let samples = 1000;
    for k in 0..samples {
        let t = t0 + (t1 - t0) * (k as f64 + 0.5) / samples as f64;
        let piece = bp
            .partition_point(|&b| b <= t)
            .saturating_sub(1)
            .min(bp.len().saturating_sub(2));
        let h = gen.hamiltonian(piece, t);
        let frob = h.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if frob * dt < MAX_PHASE_PER_STEP {
            continue;
        }
        let (vals, _) = eig_hermitian(&h)?;
        let radius = vals.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if radius * dt >= MAX_PHASE_PER_STEP {
            return Err(Error::Integration(format!(
                "dt = {dt:.3e} s gives phase {:.3e} rad per step at t = {t:.3e} s; reduce dt below {:.3e} s",
                radius * dt,
                MAX_PHASE_PER_STEP / radius
            )));
        }
    }
    Ok(())
}

/// Right-hand side evaluated with the Hamiltonian of the current stage.
trait Rhs {
    fn eval(&self, h: &Operator, y: &[C64], out: &mut [C64]);
}

struct SchrodingerRhs;

impl Rhs for SchrodingerRhs {
    fn eval(&self, h: &Operator, y: &[C64], out: &mut [C64]) {
        out.fill(ZERO);
        let mut mh = SparseOp::from_dense(h);
        mh.entries.iter_mut().for_each(|e| e.2 *= -I);
        let n = h.dim();
        // y holds one or more column vectors stored as rows of length n
        for (src, dst) in y.chunks(n).zip(out.chunks_mut(n)) {
            mh.mul_vec_acc(src, dst);
        }
    }
}

/// `dU/dt = −iHU` with U stored row-major.
struct UnitaryRhs;

impl Rhs for UnitaryRhs {
    fn eval(&self, h: &Operator, y: &[C64], out: &mut [C64]) {
        out.fill(ZERO);
        let mut mh = SparseOp::from_dense(h);
        mh.entries.iter_mut().for_each(|e| e.2 *= -I);
        mh.mul_left_acc(y, out);
    }
}

/// Lindblad right-hand side for a batch of matrices:
/// `ρ' = Kρ + ρK† + Σ 2r AρA†` with `K = −iH − Σ r A†A`.
struct LindbladRhs {
    dim: usize,
    damping: Operator,
    jumps: Vec<(SparseOp, f64)>,
}

impl LindbladRhs {
    fn new(dim: usize, collapse: &[(Operator, f64)]) -> Result<Self> {
        let mut damping = Operator::zeros(dim);
        let mut jumps = Vec::new();
        for (a, rate) in collapse {
            if a.dim() != dim {
                return Err(Error::domain("collapse operator dimension mismatch"));
            }
            if !(*rate >= 0.0) {
                return Err(Error::domain(format!(
                    "collapse rate must be non-negative, got {rate}"
                )));
            }
            if *rate == 0.0 {
                continue;
            }
            damping = &damping + &(&a.dagger() * a).scale(C64::new(*rate, 0.0));
            jumps.push((SparseOp::from_dense(a), 2.0 * rate));
        }
        Ok(Self {
            dim,
            damping,
            jumps,
        })
    }
}

impl Rhs for LindbladRhs {
    fn eval(&self, h: &Operator, y: &[C64], out: &mut [C64]) {
        out.fill(ZERO);
        let k = &h.scale(-I) - &self.damping;
        let k = SparseOp::from_dense(&k);
        let block = self.dim * self.dim;
        for (src, dst) in y.chunks(block).zip(out.chunks_mut(block)) {
            k.mul_left_acc(src, dst);
            k.mul_right_dagger_acc(src, dst);
            for (a, w) in &self.jumps {
                a.sandwich_acc(src, *w, dst);
            }
        }
    }
}

/// Integrates `y' = rhs(H(t), y)` over all pieces, calling `record` after
/// every step with the global step index.
fn run_rk4(
    gen: &dyn Generator,
    cfg: &PropagationConfig,
    rhs: &dyn Rhs,
    y: &mut [C64],
    record: &mut dyn FnMut(usize, f64, &[C64]) -> Result<()>,
) -> Result<()> {
    check_step_size(gen, cfg.dt)?;
    let bp = gen.breakpoints();
    let n = y.len();
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) = (
        vec![ZERO; n],
        vec![ZERO; n],
        vec![ZERO; n],
        vec![ZERO; n],
        vec![ZERO; n],
    );
    let mut step = 0usize;
    record(0, bp[0], y)?;
    for piece in 0..bp.len() - 1 {
        let (a, b) = (bp[piece], bp[piece + 1]);
        if b <= a {
            continue;
        }
        let steps = steps_for(b - a, cfg.dt);
        let h = (b - a) / steps as f64;
        let mut h_start = gen.hamiltonian(piece, a);
        for s in 0..steps {
            let t = a + s as f64 * h;
            let t_end = if s + 1 == steps {
                b
            } else {
                a + (s + 1) as f64 * h
            };
            let h_mid = gen.hamiltonian(piece, t + 0.5 * h);
            let h_end = gen.hamiltonian(piece, t_end);
            rhs.eval(&h_start, y, &mut k1);
            for i in 0..n {
                tmp[i] = y[i] + k1[i] * (0.5 * h);
            }
            rhs.eval(&h_mid, &tmp, &mut k2);
            for i in 0..n {
                tmp[i] = y[i] + k2[i] * (0.5 * h);
            }
            rhs.eval(&h_mid, &tmp, &mut k3);
            for i in 0..n {
                tmp[i] = y[i] + k3[i] * h;
            }
            rhs.eval(&h_end, &tmp, &mut k4);
            let c = h / 6.0;
            for i in 0..n {
                y[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * c;
            }
            h_start = h_end;
            step += 1;
            record(step, t_end, y)?;
        }
    }
    Ok(())
}

/// Number of equal steps of at most `dt` covering `len`, ignoring rounding fuzz.
fn steps_for(len: f64, dt: f64) -> usize {
    ((len / dt) * (1.0 - 1e-12)).ceil().max(1.0) as usize
}

fn wants_record(cfg: &PropagationConfig, step: usize, last: usize) -> bool {
    step == 0 || step == last || (cfg.record_stride > 0 && step % cfg.record_stride == 0)
}

fn total_steps(gen: &dyn Generator, dt: f64) -> usize {
    let bp = gen.breakpoints();
    bp.windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| steps_for(w[1] - w[0], dt))
        .sum()
}

/// Propagates a pure state under `i dψ/dt = H(t)ψ`.
pub fn propagate_schrodinger(
    gen: &dyn Generator,
    psi0: &StateVector,
    cfg: &PropagationConfig,
) -> Result<Trajectory> {
    if psi0.dim() != gen.dim() {
        return Err(Error::domain(
            "initial state dimension does not match the Hamiltonian",
        ));
    }
    let last = total_steps(gen, cfg.dt);
    let mut y = psi0.amplitudes().to_vec();
    let mut times = Vec::new();
    let mut states = Vec::new();
    let mut pops = Vec::new();
    let norm0 = psi0.norm();
    run_rk4(gen, cfg, &SchrodingerRhs, &mut y, &mut |step, t, y| {
        let every = 1000;
        if wants_record(cfg, step, last) || step % every == 0 {
            let psi = StateVector::from_raw(y.to_vec());
            let drift = (psi.norm() - norm0).abs();
            if drift > DRIFT_LIMIT {
                return Err(Error::Integration(format!(
                    "norm drifted by {drift:.3e} at t = {t:.3e} s; reduce dt"
                )));
            }
            if wants_record(cfg, step, last) {
                times.push(t);
                pops.push(psi.populations());
                states.push(psi);
            }
        }
        Ok(())
    })?;
    Ok(Trajectory {
        times,
        states: States::Pure(states),
        populations: pops,
        fidelity_series: None,
    })
}

/// Propagator `U(T)` accumulated from the identity.
pub fn propagate_unitary(gen: &dyn Generator, cfg: &PropagationConfig) -> Result<Operator> {
    let d = gen.dim();
    let mut y = Operator::identity(d).entries().to_vec();
    run_rk4(gen, cfg, &UnitaryRhs, &mut y, &mut |_, _, _| Ok(()))?;
    let rows: Vec<Vec<C64>> = y.chunks(d).map(<[C64]>::to_vec).collect();
    let u = Operator::from_rows(&rows)?;
    let err = u.unitarity_error();
    if err > DRIFT_LIMIT {
        return Err(Error::Integration(format!(
            "propagator lost unitarity by {err:.3e}; reduce dt"
        )));
    }
    Ok(u)
}

/// Propagates a density matrix under the Lindblad master equation.
pub fn propagate_lindblad(
    gen: &dyn Generator,
    collapse: &[(Operator, f64)],
    rho0: &DensityMatrix,
    cfg: &PropagationConfig,
) -> Result<Trajectory> {
    let d = gen.dim();
    if rho0.dim() != d {
        return Err(Error::domain(
            "initial state dimension does not match the Hamiltonian",
        ));
    }
    let rhs = LindbladRhs::new(d, collapse)?;
    let last = total_steps(gen, cfg.dt);
    let mut y = rho0.as_operator().entries().to_vec();
    let mut times = Vec::new();
    let mut states = Vec::new();
    let mut pops = Vec::new();
    run_rk4(gen, cfg, &rhs, &mut y, &mut |step, t, y| {
        if !wants_record(cfg, step, last) && step % 1000 != 0 {
            return Ok(());
        }
        let rho = to_operator(d, y);
        let tr = rho.trace();
        let drift = (tr - ONE).norm();
        if drift > DRIFT_LIMIT {
            return Err(Error::Integration(format!(
                "trace drifted by {drift:.3e} at t = {t:.3e} s; reduce dt"
            )));
        }
        if wants_record(cfg, step, last) {
            let dm = DensityMatrix::from_operator_unchecked(rho);
            times.push(t);
            pops.push(dm.populations());
            states.push(dm);
        }
        Ok(())
    })?;
    Ok(Trajectory {
        times,
        states: States::Mixed(states),
        populations: pops,
        fidelity_series: None,
    })
}

fn to_operator(d: usize, y: &[C64]) -> Operator {
    let rows: Vec<Vec<C64>> = y.chunks(d).map(<[C64]>::to_vec).collect();
    Operator::from_rows(&rows).expect("square buffer")
}

/// Dynamical map restricted to inputs supported on a set of basis states.
///
/// Built by propagating the matrix units `|a⟩⟨b|` of the input subspace; any
/// input state on that subspace is then mapped by linearity.
#[derive(Clone, Debug)]
pub struct Channel {
    dim: usize,
    basis: Vec<usize>,
    /// `images[a][b]` is the image of `|basis[a]⟩⟨basis[b]|`.
    images: Vec<Vec<Operator>>,
}

impl Channel {
    /// Propagates the matrix units on `basis` under the Lindblad equation.
    pub fn lindblad(
        gen: &dyn Generator,
        collapse: &[(Operator, f64)],
        basis: &[usize],
        cfg: &PropagationConfig,
    ) -> Result<Self> {
        let cfg = PropagationConfig {
            record_stride: 0,
            ..*cfg
        };
        let mut snaps = Self::lindblad_recorded(gen, collapse, basis, &cfg)?;
        Ok(snaps.pop().expect("final snapshot").1)
    }

    /// Like [`Channel::lindblad`], also keeping the channel at every recorded
    /// step (per `cfg.record_stride`) as `(time, channel)` pairs.
    pub fn lindblad_recorded(
        gen: &dyn Generator,
        collapse: &[(Operator, f64)],
        basis: &[usize],
        cfg: &PropagationConfig,
    ) -> Result<Vec<(f64, Self)>> {
        let d = gen.dim();
        if basis.iter().any(|&b| b >= d) {
            return Err(Error::domain(
                "channel basis index outside the Hilbert space",
            ));
        }
        let m = basis.len();
        // the map preserves Hermiticity, so only a ≤ b is propagated
        let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a..m).map(move |b| (a, b))).collect();
        let block = d * d;
        let mut y = vec![ZERO; pairs.len() * block];
        for (k, &(a, b)) in pairs.iter().enumerate() {
            y[k * block + basis[a] * d + basis[b]] = ONE;
        }
        let rhs = LindbladRhs::new(d, collapse)?;
        let last = total_steps(gen, cfg.dt);
        let mut snaps = Vec::new();
        run_rk4(gen, cfg, &rhs, &mut y, &mut |step, t, y| {
            let keep = wants_record(cfg, step, last);
            if !keep && step % 1000 != 0 {
                return Ok(());
            }
            for (k, &(a, b)) in pairs.iter().enumerate() {
                let tr: C64 = (0..d).map(|i| y[k * block + i * d + i]).sum();
                let want = if a == b { ONE } else { ZERO };
                let drift = (tr - want).norm();
                if drift > DRIFT_LIMIT {
                    return Err(Error::Integration(format!(
                        "trace drifted by {drift:.3e} at t = {t:.3e} s; reduce dt"
                    )));
                }
            }
            if keep {
                let mut images = vec![vec![Operator::zeros(d); m]; m];
                for (k, &(a, b)) in pairs.iter().enumerate() {
                    let op = to_operator(d, &y[k * block..(k + 1) * block]);
                    images[b][a] = op.dagger();
                    images[a][b] = op;
                }
                snaps.push((
                    t,
                    Self {
                        dim: d,
                        basis: basis.to_vec(),
                        images,
                    },
                ));
            }
            Ok(())
        })?;
        Ok(snaps)
    }

    /// Channel of a unitary `U` restricted to `basis`.
    pub fn from_unitary(u: &Operator, basis: &[usize]) -> Self {
        let d = u.dim();
        let cols: Vec<StateVector> = basis
            .iter()
            .map(|&b| u.apply(&StateVector::basis(d, b)))
            .collect();
        let images = cols
            .iter()
            .map(|ca| cols.iter().map(|cb| ca.outer(cb)).collect())
            .collect();
        Self {
            dim: d,
            basis: basis.to_vec(),
            images,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// Image of `|ψ⟩⟨ψ|` for `ψ = Σ c_a |basis[a]⟩`.
    pub fn apply(&self, coeffs: &StateVector) -> Result<DensityMatrix> {
        if coeffs.dim() != self.basis.len() {
            return Err(Error::domain(
                "input coefficients do not match the channel basis",
            ));
        }
        let c = coeffs.amplitudes();
        let mut out = vec![ZERO; self.dim * self.dim];
        for (a, ca) in c.iter().enumerate() {
            for (b, cb) in c.iter().enumerate() {
                let w = ca * cb.conj();
                if w == ZERO {
                    continue;
                }
                for (o, x) in out.iter_mut().zip(self.images[a][b].entries()) {
                    *o += w * x;
                }
            }
        }
        Ok(DensityMatrix::from_operator_unchecked(to_operator(
            self.dim, &out,
        )))
    }

    /// `⟨target|E(|ψ⟩⟨ψ|)|target⟩` without materialising the output matrix.
    pub fn overlap(&self, coeffs: &[C64], target: &[C64]) -> f64 {
        let d = self.dim;
        let mut acc = ZERO;
        for (a, ca) in coeffs.iter().enumerate() {
            for (b, cb) in coeffs.iter().enumerate() {
                let w = ca * cb.conj();
                if w == ZERO {
                    continue;
                }
                let e = self.images[a][b].entries();
                let mut s = ZERO;
                for i in 0..d {
                    if target[i] == ZERO {
                        continue;
                    }
                    let row = &e[i * d..(i + 1) * d];
                    let inner: C64 = row.iter().zip(target).map(|(x, t)| x * t).sum();
                    s += target[i].conj() * inner;
                }
                acc += w * s;
            }
        }
        acc.re
    }
}

/// `(t, |⟨ψ(t)|H(t)|ψ(t)⟩|)` at every step of a Schrödinger run from `psi0`.
///
/// This is the instantaneous dynamical-phase rate; it vanishes along a
/// parallel-transported path.
pub fn dynamical_phase_rates(
    gen: &dyn Generator,
    psi0: &StateVector,
    cfg: &PropagationConfig,
) -> Result<Vec<(f64, f64)>> {
    let traj = propagate_schrodinger(gen, psi0, &cfg.with_stride(1))?;
    let bp = gen.breakpoints();
    let States::Pure(states) = &traj.states else {
        unreachable!("Schrödinger runs store pure states")
    };
    Ok(traj
        .times
        .iter()
        .zip(states)
        .map(|(&t, psi)| {
            let piece = bp
                .partition_point(|&b| b <= t)
                .saturating_sub(1)
                .min(bp.len() - 2);
            let h = gen.hamiltonian(piece, t);
            (t, psi.inner(&h.apply(psi)).norm())
        })
        .collect())
}

/// Closed-form two-level propagator of a microwave schedule.
///
/// Each segment is the rotation `exp(−i A(1+ε)/2 (cos p σx + sin p σy))` with
/// area A and drive phase p; the product is taken in time order.
pub fn ideal_two_level_propagator(schedule: &GeometricSchedule, eps: f64) -> Result<Operator> {
    match schedule.family {
        ScheduleFamily::SingleQubit | ScheduleFamily::DynamicSingle => {}
        other => {
            return Err(Error::domain(format!(
                "closed-form rotation product needs a microwave schedule, got {other:?}"
            )))
        }
    }
    let mut u = Operator::identity(2);
    for s in &schedule.segments {
        u = &segment_rotation(s.target_area * (1.0 + eps), s.phase) * &u;
    }
    Ok(u)
}

/// `exp(−i area/2 (cos p σx + sin p σy))`.
pub fn segment_rotation(area: f64, phase: f64) -> Operator {
    let (c, s) = ((area / 2.0).cos(), (area / 2.0).sin());
    let off = -I * s;
    Operator::from_rows(&[
        vec![C64::new(c, 0.0), off * C64::from_polar(1.0, -phase)],
        vec![off * C64::from_polar(1.0, phase), C64::new(c, 0.0)],
    ])
    .expect("2x2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::device::{collapse_operators, units::mhz};
    use crate::schedule::{make_single_qubit_schedule, Sin2Shape};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn sx() -> Operator {
        Operator::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]).unwrap()
    }

    /// Direct construction of cos γ + i sin γ n·σ.
    fn loop_oracle(theta: f64, phi: f64, gamma: f64) -> Operator {
        let (n1, n2, n3) = (
            theta.sin() * phi.cos(),
            theta.sin() * phi.sin(),
            theta.cos(),
        );
        let (c, s) = (gamma.cos(), gamma.sin());
        Operator::from_rows(&[
            vec![C64::new(c, s * n3), I * s * C64::new(n1, -n2)],
            vec![I * s * C64::new(n1, n2), C64::new(c, -s * n3)],
        ])
        .unwrap()
    }

    #[test]
    fn dressed_states_are_parallel_transported_and_cyclic() {
        let params = TransmonParams::new(0.0, mhz(220.0)).unwrap();
        for shape in [Sin2Shape::PerSegment, Sin2Shape::Global] {
            let (theta, phi, gamma) = (1.1, 0.4, 0.7);
            let omega0 = mhz(40.0);
            let sched = make_single_qubit_schedule(theta, phi, gamma, omega0, None, shape).unwrap();
            let model = SingleQubitModel::new(params, &sched, ErrorModel::none(), 2).unwrap();
            let cfg = PropagationConfig::new(1e-12);
            let (plus, minus) = crate::gates::dressed_states(theta, phi);
            for psi in [&plus, &minus] {
                let rates = dynamical_phase_rates(&model, psi, &cfg).unwrap();
                let worst = rates.iter().fold(0.0_f64, |m, &(_, r)| m.max(r / omega0));
                assert!(worst < 1e-10, "{shape:?}: dynamical phase rate {worst:.3e}");
            }
            let u = propagate_unitary(&model, &cfg).unwrap();
            let gp = plus.inner(&u.apply(&plus));
            let gm = minus.inner(&u.apply(&minus));
            assert!((gp - C64::from_polar(1.0, gamma)).norm() < 1e-8);
            assert!((gm - C64::from_polar(1.0, -gamma)).norm() < 1e-8);
        }
    }

    #[test]
    fn zero_hamiltonian_keeps_state() {
        let gen = ConstantHamiltonian {
            h: Operator::zeros(3),
            duration: 1e-8,
        };
        let psi = StateVector::from_real(&[0.6, 0.8, 0.0]).unwrap();
        let tr = propagate_schrodinger(&gen, &psi, &PropagationConfig::new(1e-11)).unwrap();
        assert!(tr.final_pure().unwrap().max_diff(&psi) < 1e-15);
    }

    #[test]
    fn resonant_rabi_pi_pulse() {
        let om = mhz(20.0);
        let gen = ConstantHamiltonian {
            h: sx().scale(C64::new(om / 2.0, 0.0)),
            duration: PI / om,
        };
        let tr = propagate_schrodinger(
            &gen,
            &StateVector::basis(2, 0),
            &PropagationConfig::new(1e-12),
        )
        .unwrap();
        assert!((tr.populations.last().unwrap()[1] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn ideal_propagator_closed_forms() {
        let s = make_single_qubit_schedule(
            FRAC_PI_2,
            0.0,
            FRAC_PI_2,
            mhz(40.0),
            None,
            Sin2Shape::Global,
        )
        .unwrap();
        let u = ideal_two_level_propagator(&s, 0.0).unwrap();
        assert!(u.max_abs_diff(&sx().scale(I)) < 1e-14);
        let id =
            make_single_qubit_schedule(0.7, 0.3, 0.0, mhz(40.0), None, Sin2Shape::Global).unwrap();
        assert!(
            ideal_two_level_propagator(&id, 0.0)
                .unwrap()
                .max_abs_diff(&Operator::identity(2))
                < 1e-14
        );
    }

    #[test]
    fn ideal_propagator_with_amplitude_error() {
        // direct product of the three rotations with μ = 1.05
        let mu = 1.05;
        let rot = |a: f64, p: f64| {
            let h = Operator::from_rows(&[
                vec![ZERO, C64::from_polar(0.5, -p)],
                vec![C64::from_polar(0.5, p), ZERO],
            ])
            .unwrap();
            let (vals, vecs) = eig_hermitian(&h).unwrap();
            let mut u = Operator::zeros(2);
            for (l, v) in vals.iter().zip(&vecs) {
                u = &u + &v.outer(v).scale(C64::from_polar(1.0, -l * a));
            }
            u
        };
        let want = &(&rot(mu * FRAC_PI_2, -FRAC_PI_2) * &rot(mu * PI, PI))
            * &rot(mu * FRAC_PI_2, -FRAC_PI_2);
        let s = make_single_qubit_schedule(
            FRAC_PI_2,
            0.0,
            FRAC_PI_2,
            mhz(40.0),
            None,
            Sin2Shape::Global,
        )
        .unwrap();
        let got = ideal_two_level_propagator(&s, 0.05).unwrap();
        assert!(got.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn schedule_reproduces_loop_unitary() {
        let p = TransmonParams::new(mhz(5000.0), mhz(220.0)).unwrap();
        for shape in [Sin2Shape::PerSegment, Sin2Shape::Global] {
            let s = make_single_qubit_schedule(1.1, -0.4, 0.8, mhz(40.0), None, shape).unwrap();
            let model = SingleQubitModel::new(p, &s, ErrorModel::none(), 2).unwrap();
            let u = propagate_unitary(&model, &PropagationConfig::new(1e-12)).unwrap();
            assert!(
                u.max_abs_diff(&loop_oracle(1.1, -0.4, 0.8)) < 1e-8,
                "{shape:?}"
            );
        }
    }

    #[test]
    fn lindblad_without_noise_matches_schrodinger() {
        let p = TransmonParams::new(mhz(5000.0), mhz(220.0)).unwrap();
        let s = make_single_qubit_schedule(
            FRAC_PI_2,
            0.0,
            FRAC_PI_2,
            mhz(40.0),
            Some(p.alpha),
            Sin2Shape::PerSegment,
        )
        .unwrap();
        let model = SingleQubitModel::new(p, &s, ErrorModel::none(), 3).unwrap();
        let psi = StateVector::from_real(&[0.8, 0.6, 0.0]).unwrap();
        let cfg = PropagationConfig::new(2e-12);
        let pure = propagate_schrodinger(&model, &psi, &cfg).unwrap();
        let mixed = propagate_lindblad(
            &model,
            &collapse_operators(&p, 3).unwrap(),
            &DensityMatrix::from_pure(&psi),
            &cfg,
        )
        .unwrap();
        let f = mixed
            .final_mixed()
            .unwrap()
            .expectation(pure.final_pure().unwrap())
            .re;
        assert!((f - 1.0).abs() < 1e-8);
    }

    fn relax_only(k: f64) -> TransmonParams {
        TransmonParams {
            kappa_relax: [k, 0.0],
            kappa_dephase: [0.0, 0.0],
            ..TransmonParams::new(mhz(5000.0), mhz(220.0)).unwrap()
        }
    }

    #[test]
    fn relaxation_decay_law() {
        let k = 2e6;
        let p = relax_only(k);
        let gen = ConstantHamiltonian {
            h: Operator::zeros(2),
            duration: 1e-6,
        };
        let rho0 = DensityMatrix::from_pure(&StateVector::basis(2, 1));
        let tr = propagate_lindblad(
            &gen,
            &collapse_operators(&p, 2).unwrap(),
            &rho0,
            &PropagationConfig::new(1e-9).with_stride(50),
        )
        .unwrap();
        for (t, pop) in tr.times.iter().zip(&tr.populations) {
            let want = (-k * t).exp();
            assert!((pop[1] - want).abs() < 1e-6 * want, "t={t}");
        }
    }

    #[test]
    fn dephasing_decay_law() {
        let kz = 3e6;
        let p = TransmonParams {
            kappa_relax: [0.0; 2],
            kappa_dephase: [kz, 0.0],
            ..TransmonParams::new(mhz(5000.0), mhz(220.0)).unwrap()
        };
        let gen = ConstantHamiltonian {
            h: Operator::zeros(2),
            duration: 5e-7,
        };
        let plus = StateVector::from_real(&[1.0, 1.0]).unwrap();
        let tr = propagate_lindblad(
            &gen,
            &collapse_operators(&p, 2).unwrap(),
            &DensityMatrix::from_pure(&plus),
            &PropagationConfig::new(1e-9).with_stride(25),
        )
        .unwrap();
        let States::Mixed(states) = &tr.states else {
            panic!()
        };
        for (t, rho) in tr.times.iter().zip(states) {
            let want = 0.5 * (-kz * t / 2.0).exp();
            assert!((rho.as_operator()[(0, 1)].norm() - want).abs() < 1e-6 * want);
        }
    }

    #[test]
    fn dephasing_fixed_point() {
        let p = TransmonParams {
            kappa_relax: [0.0; 2],
            kappa_dephase: [1e6, 2e6],
            ..TransmonParams::new(mhz(5000.0), mhz(220.0)).unwrap()
        };
        let rhs = LindbladRhs::new(3, &collapse_operators(&p, 3).unwrap()).unwrap();
        let rho = DensityMatrix::maximally_mixed(3);
        let mut out = vec![ZERO; 9];
        rhs.eval(&Operator::zeros(3), rho.as_operator().entries(), &mut out);
        assert!(out.iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn channel_matches_direct_propagation() {
        let p = TransmonParams::with_uniform_kappa(mhz(5000.0), mhz(220.0), 1e5).unwrap();
        let s = make_single_qubit_schedule(
            FRAC_PI_2,
            0.0,
            FRAC_PI_2,
            mhz(40.0),
            Some(p.alpha),
            Sin2Shape::PerSegment,
        )
        .unwrap();
        let model = SingleQubitModel::new(p, &s, ErrorModel::none(), 3).unwrap();
        let collapse = collapse_operators(&p, 3).unwrap();
        let cfg = PropagationConfig::new(2e-12);
        let ch = Channel::lindblad(&model, &collapse, &[0, 1], &cfg).unwrap();
        let c = StateVector::new(vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)]).unwrap();
        let psi = StateVector::new(vec![c.amplitudes()[0], c.amplitudes()[1], ZERO]).unwrap();
        let direct =
            propagate_lindblad(&model, &collapse, &DensityMatrix::from_pure(&psi), &cfg).unwrap();
        let via = ch.apply(&c).unwrap();
        assert!(
            via.as_operator()
                .max_abs_diff(direct.final_mixed().unwrap().as_operator())
                < 1e-12
        );
        let target = [ZERO, ONE, ZERO];
        let ov = ch.overlap(c.amplitudes(), &target);
        assert!((ov - via.populations()[1]).abs() < 1e-14);
    }

    #[test]
    fn rejects_coarse_step() {
        let gen = ConstantHamiltonian {
            h: Operator::from_real_diag(&[0.0, 1e12]),
            duration: 1e-9,
        };
        let r = propagate_schrodinger(
            &gen,
            &StateVector::basis(2, 0),
            &PropagationConfig::new(1e-12),
        );
        assert!(matches!(r, Err(Error::Integration(_))));
    }

    #[test]
    fn trajectory_table_columns() {
        let gen = ConstantHamiltonian {
            h: sx().scale(C64::new(1e8, 0.0)),
            duration: 1e-8,
        };
        let tr = propagate_schrodinger(
            &gen,
            &StateVector::basis(2, 0),
            &PropagationConfig::new(1e-11).with_stride(100),
        )
        .unwrap()
        .with_state_fidelity(&StateVector::basis(2, 1));
        let t = tr.to_table();
        assert_eq!(t.header, vec!["time_s", "p0", "p1", "fidelity"]);
        assert_eq!(t.rows.len(), 11);
    }
}
