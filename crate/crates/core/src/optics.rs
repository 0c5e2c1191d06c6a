//! Gates, mode embeddings and circuits.
//!
//! Modes are 0-based everywhere: the placement usually written `b_12` is
//! `embed(b, 0, 1, m)`. The order of the mode pair matters, `embed(b, 2, 0, 3)`
//! is the reversed placement `b_31` with `-conj(alpha)` in the top-left corner.
//!
//! A circuit lists gates in application order, so [`Circuit::evaluate`]
//! returns `G_k ... G_2 G_1` for gates `[G_1, G_2, ..., G_k]`.

use crate::error::{Error, Result};
use crate::matrix::{is_unitary, CMatrix, Tolerance, C64, ONE};

/// Largest allowed deviation of `|alpha|^2 + |beta|^2` from 1.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Two-mode gate `[[alpha, conj(beta)], [beta, -conj(alpha)]]` with determinant -1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Beamsplitter {
    alpha: C64,
    beta: C64,
}

impl Beamsplitter {
    /// Validates `|alpha|^2 + |beta|^2 = 1` within [`NORMALIZATION_TOL`].
    pub fn new(alpha: C64, beta: C64) -> Result<Self> {
        let finite = [alpha.re, alpha.im, beta.re, beta.im].iter().all(|x| x.is_finite());
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if !finite || (norm - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Normalization(norm));
        }
        Ok(Beamsplitter { alpha, beta })
    }

    /// `alpha = cos(theta) e^{i phase_alpha}`, `beta = sin(theta) e^{i phase_beta}`.
    pub fn from_angles(theta: f64, phase_alpha: f64, phase_beta: f64) -> Self {
        Beamsplitter {
            alpha: C64::from_polar(theta.cos(), phase_alpha),
            beta: C64::from_polar(theta.sin(), phase_beta),
        }
    }

    /// Reads a determinant -1 unitary 2x2 matrix back as a beamsplitter.
    pub fn from_matrix(g: &CMatrix, tol: Tolerance) -> Result<Self> {
        if g.rows() != 2 || g.cols() != 2 {
            return Err(Error::Dimension("beamsplitter matrix must be 2x2".into()));
        }
        let b = Beamsplitter::new(g[(0, 0)], g[(1, 0)])?;
        if (&b.matrix() - g).max_abs() > tol.value() {
            return Err(Error::Validation("matrix is not of beamsplitter form".into()));
        }
        Ok(b)
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn beta(&self) -> C64 {
        self.beta
    }

    pub fn matrix(&self) -> CMatrix {
        CMatrix::new(2, 2, vec![self.alpha, self.beta.conj(), self.beta, -self.alpha.conj()])
            .expect("2x2 with finite entries")
    }

    /// Mixes modes: both amplitudes exceed `tol` in modulus.
    pub fn is_nontrivial(&self, tol: Tolerance) -> bool {
        self.alpha.norm() > tol.value() && self.beta.norm() > tol.value()
    }

    pub fn is_real(&self, tol: Tolerance) -> bool {
        self.alpha.im.abs() <= tol.value() && self.beta.im.abs() <= tol.value()
    }
}

/// Free function form of [`Beamsplitter::new`].
pub fn make_beamsplitter(alpha: C64, beta: C64) -> Result<Beamsplitter> {
    Beamsplitter::new(alpha, beta)
}

pub fn is_nontrivial(b: &Beamsplitter, tol: Tolerance) -> bool {
    b.is_nontrivial(tol)
}

/// One-mode gate multiplying the amplitude by `e^{i theta}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phaseshifter {
    pub theta: f64,
}

impl Phaseshifter {
    pub fn phase(&self) -> C64 {
        C64::from_polar(1.0, self.theta)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PlacedGate {
    Beamsplitter {
        gate: Beamsplitter,
        modes: (usize, usize),
    },
    Phaseshifter {
        gate: Phaseshifter,
        mode: usize,
    },
    /// Arbitrary 2x2 unitary, determinant unrestricted.
    General {
        matrix: CMatrix,
        modes: (usize, usize),
    },
}

impl PlacedGate {
    pub fn beamsplitter(gate: Beamsplitter, i: usize, j: usize) -> Self {
        PlacedGate::Beamsplitter { gate, modes: (i, j) }
    }

    pub fn phaseshifter(theta: f64, mode: usize) -> Self {
        PlacedGate::Phaseshifter { gate: Phaseshifter { theta }, mode }
    }

    fn check_modes(&self, m: usize) -> Result<()> {
        match *self {
            PlacedGate::Phaseshifter { mode, .. } if mode >= m => Err(Error::Mode { i: mode, j: mode, modes: m }),
            PlacedGate::Phaseshifter { .. } => Ok(()),
            PlacedGate::Beamsplitter { modes: (i, j), .. } | PlacedGate::General { modes: (i, j), .. } => {
                check_pair(i, j, m)
            }
        }
    }

    /// Left-multiplies `acc` by this gate's embedded matrix.
    fn apply(&self, acc: &mut CMatrix) {
        match self {
            PlacedGate::Phaseshifter { gate, mode } => {
                let p = gate.phase();
                for c in 0..acc.cols() {
                    acc[(*mode, c)] *= p;
                }
            }
            PlacedGate::Beamsplitter { gate, modes } => apply_two_mode(acc, &gate.matrix(), *modes),
            PlacedGate::General { matrix, modes } => apply_two_mode(acc, matrix, *modes),
        }
    }
}

fn check_pair(i: usize, j: usize, m: usize) -> Result<()> {
    if i == j || i >= m || j >= m {
        Err(Error::Mode { i, j, modes: m })
    } else {
        Ok(())
    }
}

fn apply_two_mode(acc: &mut CMatrix, g: &CMatrix, (i, j): (usize, usize)) {
    for c in 0..acc.cols() {
        let (x, y) = (acc[(i, c)], acc[(j, c)]);
        acc[(i, c)] = g[(0, 0)] * x + g[(0, 1)] * y;
        acc[(j, c)] = g[(1, 0)] * x + g[(1, 1)] * y;
    }
}

/// Embeds a 2x2 gate on the ordered mode pair `(i, j)` of an `m`-mode system:
/// `g11` lands at `(i, i)`, `g12` at `(i, j)`, `g21` at `(j, i)`, `g22` at `(j, j)`.
pub fn embed(g: &CMatrix, i: usize, j: usize, m: usize) -> Result<CMatrix> {
    if g.rows() != 2 || g.cols() != 2 {
        return Err(Error::Dimension(format!("embed needs a 2x2 gate, got {}x{}", g.rows(), g.cols())));
    }
    check_pair(i, j, m)?;
    let mut out = CMatrix::identity(m);
    out[(i, i)] = g[(0, 0)];
    out[(i, j)] = g[(0, 1)];
    out[(j, i)] = g[(1, 0)];
    out[(j, j)] = g[(1, 1)];
    Ok(out)
}

/// Ordered list of placed gates over a fixed number of modes.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    modes: usize,
    gates: Vec<PlacedGate>,
}

impl Circuit {
    pub fn new(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::Parameter("a circuit needs at least one mode".into()));
        }
        Ok(Circuit { modes, gates: Vec::new() })
    }

    pub fn with_gates(modes: usize, gates: Vec<PlacedGate>) -> Result<Self> {
        let mut c = Circuit::new(modes)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    /// Appends a gate (applied after every gate already present).
    pub fn push(&mut self, gate: PlacedGate) -> Result<()> {
        gate.check_modes(self.modes)?;
        if let PlacedGate::General { matrix, .. } = &gate {
            if matrix.rows() != 2 || matrix.cols() != 2 {
                return Err(Error::Dimension("general gate must be 2x2".into()));
            }
            if !is_unitary(matrix, Tolerance::default())? {
                return Err(Error::Validation("general gate is not unitary".into()));
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn gates(&self) -> &[PlacedGate] {
        &self.gates
    }

    pub fn beamsplitter_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, PlacedGate::Beamsplitter { .. })).count()
    }

    pub fn phaseshifter_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, PlacedGate::Phaseshifter { .. })).count()
    }

    /// The `m x m` unitary implemented by the circuit.
    pub fn evaluate(&self) -> CMatrix {
        let mut acc = CMatrix::identity(self.modes);
        for g in &self.gates {
            g.apply(&mut acc);
        }
        acc
    }
}

/// Free function form of [`Circuit::evaluate`].
pub fn evaluate(c: &Circuit) -> CMatrix {
    c.evaluate()
}

/// Single-mode phase gate as an `m x m` matrix.
pub fn phase_matrix(theta: f64, mode: usize, m: usize) -> Result<CMatrix> {
    if mode >= m {
        return Err(Error::Mode { i: mode, j: mode, modes: m });
    }
    let mut d = vec![ONE; m];
    d[mode] = C64::from_polar(1.0, theta);
    Ok(CMatrix::diagonal(&d))
}
