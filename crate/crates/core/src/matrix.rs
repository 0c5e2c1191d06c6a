//! Dense complex matrices and the numeric predicates shared by every module.
//!
//! Everything here is sized for tiny matrices (the toolkit never goes much past
//! 10x10 outside of Fock-space lifts), so the routines favour robustness over
//! speed. Eigen-decompositions of unitaries go through a complex Schur
//! factorization, and norms and ranks through the SVD.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Default tolerance used wherever a tolerance is optional.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Eigenvalues this close to -1 are reported as sitting on the branch cut.
const BRANCH_CUT_TOL: f64 = 1e-12;

/// Entries smaller than this are never used to fix the global phase.
const PHASE_PIVOT_FLOOR: f64 = 1e-3;
const SCHUR_MAX_ITER: usize = 10_000;

/// A non-negative comparison threshold.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Tolerance(f64);

impl Tolerance {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value >= 0.0 {
            Ok(Tolerance(value))
        } else {
            Err(Error::Parameter(format!("tolerance must be finite and >= 0, got {value}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(DEFAULT_TOL)
    }
}

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    /// Builds a matrix from row-major data. Rejects zero sizes and non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("matrix must be non-empty, got {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(k) = data.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite { row: k / cols, col: k % cols });
        }
        Ok(CMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        CMatrix::new(r, c, rows.iter().flatten().copied().collect())
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect()).collect();
        CMatrix::from_rows(&rows)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix must be non-empty");
        CMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![ONE; n])
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = CMatrix::zeros(n, n);
        for (k, &z) in entries.iter().enumerate() {
            m[(k, k)] = z;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major view of the entries.
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::Dimension(format!("expected a square matrix, got {}x{}", self.rows, self.cols)))
        }
    }

    fn ensure_same_shape(&self, other: &CMatrix) -> Result<()> {
        if self.rows == other.rows && self.cols == other.cols {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )))
        }
    }

    pub fn adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn conj(&self) -> CMatrix {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    pub fn scale(&self, s: C64) -> CMatrix {
        self.map(|z| z * s)
    }

    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &CMatrix) -> Result<CMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self.matmul_unchecked(rhs))
    }

    fn matmul_unchecked(&self, rhs: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let rrow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|k| self[(k, k)]).sum()
    }

    pub fn det(&self) -> Result<C64> {
        self.ensure_square()?;
        Ok(self.to_nalgebra().determinant())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_real(&self, tol: Tolerance) -> bool {
        self.max_imag() <= tol.value()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Spectral norm (largest singular value).
    pub fn operator_norm(&self) -> f64 {
        singular_values(self).first().copied().unwrap_or(0.0)
    }

    /// Frobenius inner product `tr(self^dagger other)`.
    pub fn inner(&self, other: &CMatrix) -> C64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    pub(crate) fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub(crate) fn from_nalgebra(m: &DMatrix<C64>) -> CMatrix {
        let (rows, cols) = m.shape();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(m[(i, j)]);
            }
        }
        CMatrix { rows, cols, data }
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    /// Panics on a shape mismatch; use [`CMatrix::matmul`] for a checked product.
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        self.matmul_unchecked(rhs)
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        self.ensure_same_shape(rhs).expect("shape mismatch in matrix sum");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        self.ensure_same_shape(rhs).expect("shape mismatch in matrix difference");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|z| format!("{:+.6}{:+.6}i", z.re, z.im)).collect();
            writeln!(f, "  {}", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let svd = m.to_nalgebra().svd(false, false);
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Max-entry magnitude of `M^dagger M - I`.
pub fn unitarity_defect(m: &CMatrix) -> Result<f64> {
    let n = m.ensure_square()?;
    let g = &m.adjoint() * m;
    Ok((&g - &CMatrix::identity(n)).max_abs())
}

pub fn is_unitary(m: &CMatrix, tol: Tolerance) -> Result<bool> {
    Ok(unitarity_defect(m)? <= tol.value())
}

/// Eigenvalues of a unitary matrix together with a unitary eigenbasis
/// (columns of the returned matrix).
///
/// The Schur form is taken of `M - cI` with `c` the mean eigenvalue: for
/// nearly scalar unitaries (the common case when comparing a matrix with its
/// reconstruction) the unshifted QR iteration stalls.
pub fn unitary_eigen(m: &CMatrix) -> Result<(CMatrix, Vec<C64>)> {
    let n = m.ensure_square()?;
    let shift = m.trace() / n as f64;
    let mut a = m.to_nalgebra();
    for k in 0..n {
        a[(k, k)] -= shift;
    }
    let attempt =
        nalgebra::linalg::Schur::try_new(a.clone(), f64::EPSILON, SCHUR_MAX_ITER).map(|s| s.unpack()).or_else(|| {
            // rotate the basis and retry once
            let f = fourier(n);
            let rotated = &f * a * f.adjoint();
            nalgebra::linalg::Schur::try_new(rotated, f64::EPSILON, SCHUR_MAX_ITER).map(|s| {
                let (q, t) = s.unpack();
                (f.adjoint() * q, t)
            })
        });
    let Some((q, t)) = attempt else {
        return Err(Error::InternalConsistency("Schur iteration did not converge".into()));
    };
    let eigenvalues = (0..n).map(|k| t[(k, k)] + shift).collect();
    Ok((CMatrix::from_nalgebra(&q), eigenvalues))
}

fn fourier(n: usize) -> nalgebra::DMatrix<C64> {
    let scale = 1.0 / (n as f64).sqrt();
    nalgebra::DMatrix::from_fn(n, n, |i, j| C64::from_polar(scale, 2.0 * PI * (i * j) as f64 / n as f64))
}

/// Eigenphases in (-pi, pi] of a unitary matrix.
pub fn eigenphases(m: &CMatrix) -> Result<Vec<f64>> {
    let (_, values) = unitary_eigen(m)?;
    Ok(values.iter().map(|z| principal_arg(*z)).collect())
}

fn principal_arg(z: C64) -> f64 {
    let a = z.arg();
    if a <= -PI {
        PI
    } else {
        a
    }
}

/// `min_{|phi| = 1} ||A - phi B||_2`.
///
/// For (numerically) unitary inputs this is computed exactly from the
/// eigenphases of `B^dagger A`: the optimal phase sits in the middle of the
/// smallest arc covering them. Other inputs fall back to a scan plus
/// golden-section refinement over the phase angle.
pub fn phase_distance(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    a.ensure_square()?;
    b.ensure_square()?;
    if a.rows() != b.rows() {
        return Err(Error::Dimension(format!(
            "phase_distance needs equal dimensions, got {} and {}",
            a.rows(),
            b.rows()
        )));
    }
    if unitarity_defect(a)? <= DEFAULT_TOL && unitarity_defect(b)? <= DEFAULT_TOL {
        let w = &b.adjoint() * a;
        Ok(unitary_phase_spread(&w)?)
    } else {
        Ok(phase_distance_scan(a, b))
    }
}

/// Operator-norm distance of a unitary `w` to the nearest scalar phase.
pub(crate) fn unitary_phase_spread(w: &CMatrix) -> Result<f64> {
    let mut phases = eigenphases(w)?;
    phases.sort_by(f64::total_cmp);
    let n = phases.len();
    let mut largest_gap = 2.0 * PI - (phases[n - 1] - phases[0]);
    for k in 1..n {
        largest_gap = largest_gap.max(phases[k] - phases[k - 1]);
    }
    let half_arc = ((2.0 * PI - largest_gap) / 2.0).clamp(0.0, PI);
    Ok(2.0 * (half_arc / 2.0).sin())
}

fn phase_distance_scan(a: &CMatrix, b: &CMatrix) -> f64 {
    let f = |phi: f64| (a - &b.scale(C64::from_polar(1.0, phi))).operator_norm();
    const STEPS: usize = 720;
    let h = 2.0 * PI / STEPS as f64;
    let samples: Vec<f64> = (0..STEPS).map(|k| f(k as f64 * h)).collect();
    let mut best = samples.iter().copied().fold(f64::INFINITY, f64::min);
    for k in 0..STEPS {
        let (prev, next) = (samples[(k + STEPS - 1) % STEPS], samples[(k + 1) % STEPS]);
        if samples[k] <= prev && samples[k] <= next {
            best = best.min(golden_section(&f, (k as f64 - 1.0) * h, (k as f64 + 1.0) * h));
        }
    }
    best
}

fn golden_section(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    f1.min(f2)
}

/// `min_phi ||A - phi B||_F` for unitaries; an upper bound on [`phase_distance`]
/// and at most `sqrt(d)` times it. Cheap, and a pseudometric.
pub fn frobenius_phase_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    let overlap = b.inner(a);
    let phi = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { ONE };
    a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| (x - phi * y).norm_sqr()).sum::<f64>().sqrt()
}

/// Principal logarithm of a unitary matrix.
#[derive(Debug, Clone)]
pub struct UnitaryLog {
    /// Skew-Hermitian `L` with `exp(L) = M`.
    pub generator: CMatrix,
    /// Set when an eigenvalue sat on -1 and its phase was pinned to +pi.
    pub branch_cut: bool,
}

pub fn principal_log_unitary(m: &CMatrix) -> Result<UnitaryLog> {
    let defect = unitarity_defect(m)?;
    if defect > DEFAULT_TOL {
        return Err(Error::Validation(format!("matrix is not unitary (defect {defect:.3e})")));
    }
    let (q, values) = unitary_eigen(m)?;
    let mut branch_cut = false;
    let logs: Vec<C64> = values
        .iter()
        .map(|&z| {
            if (z + ONE).norm() <= BRANCH_CUT_TOL {
                branch_cut = true;
                C64::new(0.0, PI)
            } else {
                C64::new(0.0, principal_arg(z))
            }
        })
        .collect();
    let l = &(&q * &CMatrix::diagonal(&logs)) * &q.adjoint();
    // Project onto the skew-Hermitian part to wash out Schur round-off.
    let generator = (&l - &l.adjoint()).scale(C64::new(0.5, 0.0));
    Ok(UnitaryLog { generator, branch_cut })
}

/// Number of singular values of the stacked vectors exceeding `tol` times the largest.
pub fn numeric_rank(vectors: &[CMatrix], tol: Tolerance) -> Result<usize> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    let len = first.as_slice().len();
    if vectors.iter().any(|v| v.as_slice().len() != len) {
        return Err(Error::Dimension("numeric_rank needs vectors of equal length".into()));
    }
    let data: Vec<C64> = vectors.iter().flat_map(|v| v.as_slice().iter().copied()).collect();
    let stacked = CMatrix::new(vectors.len(), len, data)?;
    Ok(matrix_rank(&stacked, tol))
}

/// Relative numeric rank of a matrix.
pub fn matrix_rank(m: &CMatrix, tol: Tolerance) -> usize {
    let sv = singular_values(m);
    let top = sv.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol.value() * top).count()
}

/// Copy of `m` multiplied by the global phase that makes its first sizeable
/// entry (row-major) real and positive.
pub fn canonical_phase(m: &CMatrix) -> CMatrix {
    let pivot = m.as_slice().iter().find(|z| z.norm() > PHASE_PIVOT_FLOOR);
    match pivot {
        Some(z) => m.scale(z.conj() / z.norm()),
        None => m.clone(),
    }
}

/// Hashable fingerprint of a matrix modulo global phase: entries of the
/// phase-fixed matrix rounded to multiples of `granularity`.
pub fn phase_fingerprint(m: &CMatrix, granularity: f64) -> Vec<i64> {
    let fixed = canonical_phase(m);
    fixed
        .as_slice()
        .iter()
        .flat_map(|z| [z.re, z.im])
        .map(|x| {
            let k = (x / granularity).round() as i64;
            // -0 and +0 map to the same key
            if k == 0 {
                0
            } else {
                k
            }
        })
        .collect()
}

/// True iff every entry has modulus 0 or 1 within `tol` (the monomial class P_m
/// once unitarity is known).
pub fn is_monomial(m: &CMatrix, tol: Tolerance) -> bool {
    m.as_slice().iter().all(|z| {
        let r = z.norm();
        r <= tol.value() || (r - 1.0).abs() <= tol.value()
    })
}
