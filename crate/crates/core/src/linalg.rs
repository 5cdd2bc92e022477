//! Dense complex linear algebra for small Hilbert spaces.
//!
//! Everything here is sized for at most two three-level transmons (dim 9),
//! so storage is a flat row-major `Vec` and products are plain triple loops.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// Square complex matrix acting on a truncated transmon space.
///
/// Used for Hamiltonians (entries in rad/s), collapse operators and gate
/// unitaries alike.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct Operator {
    dim: usize,
    entries: Vec<C64>,
}

impl Operator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut op = Self::zeros(dim);
        for k in 0..dim {
            op[(k, k)] = ONE;
        }
        op
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let mut op = Self::zeros(diag.len());
        for (k, &v) in diag.iter().enumerate() {
            op[(k, k)] = v;
        }
        op
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    /// Builds an operator from row slices; every row must have `rows.len()` entries.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::domain("operator dimension must be positive"));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::domain(format!(
                    "row {r} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        Ok(Self { dim, entries })
    }

    /// `|ket⟩⟨bra|` matrix unit.
    pub fn matrix_unit(dim: usize, ket: usize, bra: usize) -> Self {
        let mut op = Self::zeros(dim);
        op[(ket, bra)] = ONE;
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|k| self[(k, k)]).sum()
    }

    pub fn apply(&self, v: &StateVector) -> StateVector {
        assert_eq!(self.dim, v.dim(), "operator/state dimension mismatch");
        let n = self.dim;
        let amps = (0..n)
            .map(|i| (0..n).map(|j| self[(i, j)] * v.amplitudes()[j]).sum())
            .collect();
        StateVector::from_raw(amps)
    }

    /// Largest elementwise modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max elementwise deviation from Hermiticity.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    /// Max elementwise deviation of `U†U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        (&self.dagger() * self).max_abs_diff(&Operator::identity(self.dim))
    }

    /// Restriction to the rows/columns listed in `basis`, in that order.
    pub fn submatrix(&self, basis: &[usize]) -> Operator {
        let n = basis.len();
        let mut out = Operator::zeros(n);
        for (r, &i) in basis.iter().enumerate() {
            for (c, &j) in basis.iter().enumerate() {
                out[(r, c)] = self[(i, j)];
            }
        }
        out
    }

    /// Embeds `self` on the listed basis states of a `dim`-dimensional space.
    pub fn embed(&self, dim: usize, basis: &[usize]) -> Operator {
        assert_eq!(basis.len(), self.dim);
        let mut out = Operator::zeros(dim);
        for (r, &i) in basis.iter().enumerate() {
            for (c, &j) in basis.iter().enumerate() {
                out[(i, j)] = self[(r, c)];
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Operator {
        let mut out = Operator::identity(self.dim);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for Operator {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Operator {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.dim + j]
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch");
        let n = self.dim;
        let mut out = Operator::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch");
        Operator {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch");
        Operator {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Tensor product `a ⊗ b`; the first factor is the slow index.
pub fn kron(a: &Operator, b: &Operator) -> Operator {
    let (m, n) = (a.dim, b.dim);
    let mut out = Operator::zeros(m * n);
    for i in 0..m {
        for j in 0..m {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    out[(i * n + k, j * n + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// `|level⟩⟨level|` on a `space_dim`-level system.
pub fn projector(space_dim: usize, level: usize) -> Result<Operator> {
    if level >= space_dim {
        return Err(Error::domain(format!(
            "projector level {level} outside 0..{space_dim}"
        )));
    }
    Ok(Operator::matrix_unit(space_dim, level, level))
}

/// Ladder matrix unit `|j-1⟩⟨j|`.
pub fn lowering(space_dim: usize, j: usize) -> Result<Operator> {
    if j == 0 || j >= space_dim {
        return Err(Error::domain(format!(
            "lowering index {j} outside 1..{space_dim}"
        )));
    }
    Ok(Operator::matrix_unit(space_dim, j - 1, j))
}

/// Spectral decomposition of a Hermitian operator.
///
/// Eigenvalues come back ascending with matching orthonormal eigenvectors.
pub fn eig_hermitian(h: &Operator) -> Result<(Vec<f64>, Vec<StateVector>)> {
    let err = h.hermiticity_error();
    if err > 1e-10 * h.max_abs().max(1.0) {
        return Err(Error::ContractViolation(format!(
            "eig_hermitian on non-Hermitian input (deviation {err:.3e})"
        )));
    }
    let n = h.dim;
    let m = DMatrix::from_row_slice(n, n, &h.entries);
    let eig = m.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = order
        .iter()
        .map(|&k| StateVector::from_raw(eig.eigenvectors.column(k).iter().copied().collect()))
        .collect();
    Ok((values, vectors))
}

/// Pure state amplitudes.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// Normalizes the given amplitudes; rejects the zero vector.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::domain("state vector must have finite nonzero norm"));
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|z| z / norm).collect(),
        })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Wraps amplitudes without normalizing (used for propagated states).
    pub(crate) fn from_raw(amplitudes: Vec<C64>) -> Self {
        Self { amplitudes }
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[k] = ONE;
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        assert_eq!(self.dim(), other.dim(), "state dimension mismatch");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn outer(&self, other: &StateVector) -> Operator {
        let n = self.dim();
        let mut op = Operator::zeros(n);
        for i in 0..n {
            for j in 0..n {
                op[(i, j)] = self.amplitudes[i] * other.amplitudes[j].conj();
            }
        }
        op
    }

    pub fn kron(&self, other: &StateVector) -> StateVector {
        let amps = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        StateVector::from_raw(amps)
    }

    pub fn populations(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_diff(&self, other: &StateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, s: C64) -> StateVector {
        StateVector::from_raw(self.amplitudes.iter().map(|z| z * s).collect())
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .amplitudes
            .iter()
            .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
            .collect();
        write!(f, "StateVector[{}]", parts.join(", "))
    }
}

/// Mixed state.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrix {
    rho: Operator,
}

impl DensityMatrix {
    pub fn from_pure(psi: &StateVector) -> Self {
        Self {
            rho: psi.outer(psi),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            rho: Operator::identity(dim).scale(C64::new(1.0 / dim as f64, 0.0)),
        }
    }

    /// Validates Hermiticity (1e-10), unit trace (1e-8) and positivity (-1e-7).
    pub fn new(rho: Operator) -> Result<Self> {
        let dm = Self { rho };
        dm.validate()?;
        Ok(dm)
    }

    /// Wraps an operator without validation (integrator output).
    pub(crate) fn from_operator_unchecked(rho: Operator) -> Self {
        Self { rho }
    }

    pub fn validate(&self) -> Result<()> {
        let herm = self.rho.hermiticity_error();
        if herm > 1e-10 {
            return Err(Error::ContractViolation(format!(
                "density matrix not Hermitian (deviation {herm:.3e})"
            )));
        }
        let tr = self.rho.trace();
        if (tr.re - 1.0).abs() > 1e-8 || tr.im.abs() > 1e-8 {
            return Err(Error::ContractViolation(format!(
                "density matrix trace {tr} differs from 1"
            )));
        }
        let min = self.min_eigenvalue()?;
        if min < -1e-7 {
            return Err(Error::ContractViolation(format!(
                "density matrix has negative eigenvalue {min:.3e}"
            )));
        }
        Ok(())
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        // symmetrize first so integration noise does not trip the contract check
        let sym = (&self.rho + &self.rho.dagger()).scale(C64::new(0.5, 0.0));
        let (vals, _) = eig_hermitian(&sym)?;
        Ok(vals[0])
    }

    pub fn dim(&self) -> usize {
        self.rho.dim()
    }

    pub fn as_operator(&self) -> &Operator {
        &self.rho
    }

    pub fn into_operator(self) -> Operator {
        self.rho
    }

    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.rho[(k, k)].re).collect()
    }

    pub fn trace(&self) -> C64 {
        self.rho.trace()
    }

    /// `⟨psi|ρ|psi⟩` as a complex number.
    pub fn expectation(&self, psi: &StateVector) -> C64 {
        psi.inner(&self.rho.apply(psi))
    }
}

impl fmt::Debug for DensityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensityMatrix {:?}", self.rho)
    }
}

/// Nonzero entries of an operator, for cheap products inside the integrator.
#[derive(Clone, Debug)]
pub(crate) struct SparseOp {
    pub dim: usize,
    pub entries: Vec<(usize, usize, C64)>,
}

impl SparseOp {
    pub fn from_dense(op: &Operator) -> Self {
        let n = op.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let z = op[(i, j)];
                if z != ZERO {
                    entries.push((i, j, z));
                }
            }
        }
        Self { dim: n, entries }
    }

    /// `out += self · x` for a row-major `dim×dim` buffer.
    pub fn mul_left_acc(&self, x: &[C64], out: &mut [C64]) {
        let n = self.dim;
        for &(i, j, a) in &self.entries {
            let (src, dst) = (&x[j * n..(j + 1) * n], i * n);
            for c in 0..n {
                out[dst + c] += a * src[c];
            }
        }
    }

    /// `out += x · self†` for a row-major `dim×dim` buffer.
    pub fn mul_right_dagger_acc(&self, x: &[C64], out: &mut [C64]) {
        let n = self.dim;
        for &(i, j, a) in &self.entries {
            let ac = a.conj();
            for r in 0..n {
                out[r * n + i] += x[r * n + j] * ac;
            }
        }
    }

    /// `out += s · self · x · self†`.
    pub fn sandwich_acc(&self, x: &[C64], s: f64, out: &mut [C64]) {
        let n = self.dim;
        for &(i, j, a) in &self.entries {
            for &(k, l, b) in &self.entries {
                out[i * n + k] += a * x[j * n + l] * b.conj() * s;
            }
        }
    }

    /// `out += self · v` for a vector.
    pub fn mul_vec_acc(&self, v: &[C64], out: &mut [C64]) {
        for &(i, j, a) in &self.entries {
            out[i] += a * v[j];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sigma_x() -> Operator {
        Operator::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]).unwrap()
    }

    fn sigma_z() -> Operator {
        Operator::from_real_diag(&[1.0, -1.0])
    }

    #[test]
    fn kron_identity_and_projectors() {
        let i4 = kron(&Operator::identity(2), &Operator::identity(2));
        assert_eq!(i4, Operator::identity(4));
        let p = kron(
            &Operator::from_real_diag(&[1.0, 0.0]),
            &Operator::from_real_diag(&[0.0, 1.0]),
        );
        assert_eq!(p, Operator::from_real_diag(&[0.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn kron_bit_flip_both_factors() {
        let xx = kron(&sigma_x(), &sigma_x());
        let out = xx.apply(&StateVector::basis(4, 0));
        assert_eq!(out, StateVector::basis(4, 3));
    }

    #[test]
    fn projector_cases() {
        assert_eq!(
            projector(3, 2).unwrap(),
            Operator::from_real_diag(&[0.0, 0.0, 1.0])
        );
        let sum = (0..3).fold(Operator::zeros(3), |acc, k| {
            &acc + &projector(3, k).unwrap()
        });
        assert_eq!(sum, Operator::identity(3));
        assert_eq!(projector(3, 1).unwrap().trace(), ONE);
        assert!(matches!(projector(3, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn lowering_cases() {
        let s1 = lowering(3, 1).unwrap();
        assert_eq!(
            s1.apply(&StateVector::basis(3, 1)),
            StateVector::basis(3, 0)
        );
        let s2 = lowering(3, 2).unwrap();
        assert_eq!(
            s2.apply(&StateVector::basis(3, 2)),
            StateVector::basis(3, 1)
        );
        assert_eq!(s1.apply(&StateVector::basis(3, 0)).norm(), 0.0);
        assert!(lowering(3, 0).is_err());
        assert!(lowering(3, 3).is_err());
    }

    #[test]
    fn lowering_number_relation() {
        for j in 1..3 {
            let s = lowering(3, j).unwrap();
            assert_eq!(&s.dagger() * &s, projector(3, j).unwrap());
        }
    }

    #[test]
    fn eig_sigma_z_and_x() {
        let (vals, _) = eig_hermitian(&sigma_z()).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-14 && (vals[1] - 1.0).abs() < 1e-14);

        let (vals, vecs) = eig_hermitian(&sigma_x()).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let minus = StateVector::from_real(&[s, -s]).unwrap();
        let plus = StateVector::from_real(&[s, s]).unwrap();
        assert!((vecs[0].inner(&minus).norm() - 1.0).abs() < 1e-12);
        assert!((vecs[1].inner(&plus).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eig_matches_dressed_states() {
        // eigenvectors of n·σ are cos(θ/2)|0⟩ + sin(θ/2)e^{iφ}|1⟩ and its orthogonal partner
        let (theta, phi) = (1.1_f64, -0.7_f64);
        let n = [
            theta.sin() * phi.cos(),
            theta.sin() * phi.sin(),
            theta.cos(),
        ];
        let h = Operator::from_rows(&[
            vec![c(n[2], 0.0), c(n[0], -n[1])],
            vec![c(n[0], n[1]), c(-n[2], 0.0)],
        ])
        .unwrap();
        let (vals, vecs) = eig_hermitian(&h).unwrap();
        let plus = StateVector::new(vec![
            c((theta / 2.0).cos(), 0.0),
            C64::from_polar((theta / 2.0).sin(), phi),
        ])
        .unwrap();
        let minus = StateVector::new(vec![
            C64::from_polar((theta / 2.0).sin(), -phi),
            c(-(theta / 2.0).cos(), 0.0),
        ])
        .unwrap();
        assert!((vals[1] - 1.0).abs() < 1e-12);
        assert!((vecs[1].inner(&plus).norm() - 1.0).abs() < 1e-12);
        assert!((vecs[0].inner(&minus).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let a = Operator::matrix_unit(2, 0, 1);
        assert!(matches!(
            eig_hermitian(&a),
            Err(Error::ContractViolation(_))
        ));
    }

    #[test]
    fn density_matrix_contracts() {
        let psi = StateVector::from_real(&[1.0, 1.0, 0.0]).unwrap();
        let rho = DensityMatrix::from_pure(&psi);
        rho.validate().unwrap();
        assert!((rho.expectation(&psi).re - 1.0).abs() < 1e-14);
        let bad = Operator::from_real_diag(&[1.2, -0.2]);
        assert!(DensityMatrix::new(bad).is_err());
        assert!(DensityMatrix::new(Operator::from_real_diag(&[0.5, 0.6])).is_err());
    }

    fn arb_operator(dim: usize) -> impl Strategy<Value = Operator> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim).prop_map(move |v| {
            let rows: Vec<Vec<C64>> = v
                .chunks(dim)
                .map(|r| r.iter().map(|&(a, b)| c(a, b)).collect())
                .collect();
            Operator::from_rows(&rows).unwrap()
        })
    }

    fn hermitian(op: &Operator) -> Operator {
        (op + &op.dagger()).scale(c(0.5, 0.0))
    }

    proptest! {
        #[test]
        fn kron_is_associative(a in arb_operator(2), b in arb_operator(3), d in arb_operator(2)) {
            let left = kron(&kron(&a, &b), &d);
            let right = kron(&a, &kron(&b, &d));
            prop_assert!(left.max_abs_diff(&right) < 1e-14);
        }

        #[test]
        fn eig_reconstructs(raw in arb_operator(3), raw9 in arb_operator(9)) {
            for h in [hermitian(&raw), hermitian(&raw9)] {
                let (vals, vecs) = eig_hermitian(&h).unwrap();
                prop_assert!(vals.windows(2).all(|w| w[0] <= w[1]));
                let mut rebuilt = Operator::zeros(h.dim());
                for (l, v) in vals.iter().zip(&vecs) {
                    rebuilt = &rebuilt + &v.outer(v).scale(c(*l, 0.0));
                }
                prop_assert!(rebuilt.max_abs_diff(&h) < 1e-9);
                for (i, a) in vecs.iter().enumerate() {
                    for (j, b) in vecs.iter().enumerate() {
                        let expect = if i == j { 1.0 } else { 0.0 };
                        prop_assert!((a.inner(b) - c(expect, 0.0)).norm() < 1e-10);
                    }
                }
            }
        }
    }
}
