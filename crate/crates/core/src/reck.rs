//! Triangular (Reck-style) decomposition of unitaries into beamsplitters and
//! phaseshifters.
//!
//! Sub-diagonal entries are nulled column by column, left to right, and within
//! a column from the bottom row upwards, each by one operation on the adjacent
//! row pair `(r - 1, r)`: a phaseshifter on mode `r - 1` followed by a
//! real-angle beamsplitter. What is left is a diagonal of phases. The emitted
//! circuit is the inverse sequence, so
//! `evaluate(circuit) * diag(e^{i residual_phases}) = U`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::matrix::{phase_distance, unitarity_defect, CMatrix, Tolerance, C64};
use crate::optics::{Beamsplitter, Circuit, PlacedGate};

/// Entries below this modulus are treated as already eliminated.
pub const SKIP_TOL: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Gates realizing `U * diag(e^{-i residual_phases})`.
    pub circuit: Circuit,
    /// Per-mode phases applied before the circuit.
    pub residual_phases: Vec<f64>,
    /// Phase distance between the reconstruction and the input.
    pub reconstruction_error: f64,
}

impl Decomposition {
    /// `evaluate(circuit) * diag(e^{i phases})`.
    pub fn reconstruct(&self) -> CMatrix {
        let d: Vec<C64> = self.residual_phases.iter().map(|&t| C64::from_polar(1.0, t)).collect();
        &self.circuit.evaluate() * &CMatrix::diagonal(&d)
    }

    /// Self-contained circuit: the non-zero residual phases as leading
    /// phaseshifters, then the elimination gates.
    pub fn full_circuit(&self) -> Circuit {
        let m = self.circuit.modes();
        let mut gates: Vec<PlacedGate> = self
            .residual_phases
            .iter()
            .enumerate()
            .filter(|(_, t)| **t != 0.0)
            .map(|(k, &t)| PlacedGate::phaseshifter(t, k))
            .collect();
        gates.extend(self.circuit.gates().iter().cloned());
        Circuit::with_gates(m, gates).expect("modes already validated")
    }
}

fn validate_unitary(u: &CMatrix, tol: Tolerance) -> Result<usize> {
    let m = u.ensure_square()?;
    let defect = unitarity_defect(u)?;
    if defect > tol.value() {
        return Err(Error::Validation(format!("input is not unitary (defect {defect:.3e})")));
    }
    Ok(m)
}

/// Rows `(i, j)` of `w` replaced by `g * [row_i; row_j]`.
fn rotate_rows(w: &mut CMatrix, g: &CMatrix, i: usize, j: usize) {
    for c in 0..w.cols() {
        let (x, y) = (w[(i, c)], w[(j, c)]);
        w[(i, c)] = g[(0, 0)] * x + g[(0, 1)] * y;
        w[(j, c)] = g[(1, 0)] * x + g[(1, 1)] * y;
    }
}

fn real_beamsplitter(cos: f64, sin: f64) -> Beamsplitter {
    let norm = cos.hypot(sin);
    Beamsplitter::new(C64::new(cos / norm, 0.0), C64::new(sin / norm, 0.0)).expect("normalized by construction")
}

pub fn decompose(u: &CMatrix, tol: Tolerance) -> Result<Decomposition> {
    let m = validate_unitary(u, tol)?;
    let mut w = u.clone();
    // (mode, phase, beamsplitter) in elimination order
    let mut steps: Vec<(usize, f64, Beamsplitter)> = Vec::new();

    for col in 0..m.saturating_sub(1) {
        for r in (col + 1..m).rev() {
            let (x, y) = (w[(r - 1, col)], w[(r, col)]);
            if y.norm() < SKIP_TOL {
                continue;
            }
            let theta = if x.norm() < SKIP_TOL { 0.0 } else { y.arg() - x.arg() };
            let rho = x.norm().hypot(y.norm());
            let bs = real_beamsplitter(x.norm() / rho, y.norm() / rho);
            let p = C64::from_polar(1.0, theta);
            for c in 0..m {
                w[(r - 1, c)] *= p;
            }
            rotate_rows(&mut w, &bs.matrix(), r - 1, r);
            w[(r, col)] = C64::new(0.0, 0.0);
            steps.push((r - 1, theta, bs));
        }
    }

    let residual_phases: Vec<f64> = (0..m).map(|k| w[(k, k)].arg()).collect();
    let mut circuit = Circuit::new(m)?;
    for &(mode, theta, bs) in steps.iter().rev() {
        circuit.push(PlacedGate::beamsplitter(bs, mode, mode + 1))?;
        if theta != 0.0 {
            circuit.push(PlacedGate::phaseshifter(-theta, mode))?;
        }
    }
    let mut out = Decomposition { circuit, residual_phases, reconstruction_error: 0.0 };
    out.reconstruction_error = phase_distance(&out.reconstruct(), u)?;
    Ok(out)
}

/// Decomposition of a real orthogonal matrix into real beamsplitters only.
///
/// Every elimination step is a real reflection `[[c, s], [s, -c]]`, which
/// leaves a positive diagonal except possibly for the last entry; a `-1` there
/// (the parity of the step count disagreeing with `det O`) is absorbed by one
/// trailing `diag(1, -1)` beamsplitter on the last two modes. Steps that would
/// be skipped on a negative diagonal entry are replaced by a single-row sign
/// flip, so the count stays within `m(m-1)/2 + 1`.
pub fn decompose_real(o: &CMatrix, tol: Tolerance) -> Result<Decomposition> {
    let m = validate_unitary(o, tol)?;
    if !o.is_real(tol) {
        return Err(Error::Validation(format!("input is not real (max imaginary part {:.3e})", o.max_imag())));
    }
    let mut w = o.map(|z| C64::new(z.re, 0.0));
    let mut steps: Vec<(usize, Beamsplitter)> = Vec::new();

    let flip_row = |w: &mut CMatrix, steps: &mut Vec<(usize, Beamsplitter)>, row: usize| {
        let (pair, bs) =
            if row == 0 { (0, real_beamsplitter(-1.0, 0.0)) } else { (row - 1, real_beamsplitter(1.0, 0.0)) };
        rotate_rows(w, &bs.matrix(), pair, pair + 1);
        steps.push((pair, bs));
    };

    for col in 0..m.saturating_sub(1) {
        for r in (col + 1..m).rev() {
            let (x, y) = (w[(r - 1, col)].re, w[(r, col)].re);
            if y.abs() < SKIP_TOL {
                if r - 1 == col && x < 0.0 {
                    flip_row(&mut w, &mut steps, col);
                }
                continue;
            }
            let bs = real_beamsplitter(x, y);
            rotate_rows(&mut w, &bs.matrix(), r - 1, r);
            w[(r, col)] = C64::new(0.0, 0.0);
            steps.push((r - 1, bs));
        }
    }

    let mut residual_phases = vec![0.0; m];
    if w[(m - 1, m - 1)].re < 0.0 {
        if m >= 2 {
            flip_row(&mut w, &mut steps, m - 1);
        } else {
            residual_phases[0] = PI;
        }
    }

    let mut circuit = Circuit::new(m)?;
    for &(mode, bs) in steps.iter().rev() {
        circuit.push(PlacedGate::beamsplitter(bs, mode, mode + 1))?;
    }
    let mut out = Decomposition { circuit, residual_phases, reconstruction_error: 0.0 };
    out.reconstruction_error = phase_distance(&out.reconstruct(), o)?;
    Ok(out)
}
