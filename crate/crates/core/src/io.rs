//! JSON forms shared by the library and the command line.
//!
//! Complex numbers are `[re, im]` pairs throughout; matrices are row-major
//! grids of them.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{is_unitary, CMatrix, Tolerance, C64};
use crate::optics::{Beamsplitter, Circuit, PlacedGate};

/// Norm deviation a decimal literal may carry before it is rejected instead
/// of rescaled. Five printed digits are off by up to about 1e-5.
pub const LITERAL_NORM_TOL: f64 = 1e-4;

impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<C64>>::deserialize(d)?;
        CMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}

/// `{"dim": d, "entries": [[[re, im], ...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UnitaryFile {
    pub dim: usize,
    pub entries: CMatrix,
}

impl UnitaryFile {
    pub fn new(m: &CMatrix) -> Result<Self> {
        let dim = m.ensure_square()?;
        Ok(UnitaryFile { dim, entries: m.clone() })
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixInput {
    File(UnitaryFile),
    Grid(CMatrix),
}

/// Reads a square matrix from either the `{"dim", "entries"}` object or a bare grid.
pub fn read_matrix(json: &str) -> Result<CMatrix> {
    let parsed: MatrixInput =
        serde_json::from_str(json).map_err(|e| Error::Validation(format!("bad matrix JSON: {e}")))?;
    let m = match parsed {
        MatrixInput::File(f) => {
            if f.entries.rows() != f.dim || f.entries.cols() != f.dim {
                return Err(Error::Validation(format!(
                    "dim is {} but entries are {}x{}",
                    f.dim,
                    f.entries.rows(),
                    f.entries.cols()
                )));
            }
            f.entries
        }
        MatrixInput::Grid(m) => m,
    };
    m.ensure_square()?;
    Ok(m)
}

/// Like [`read_matrix`] but also requires unitarity at `tol`.
pub fn read_unitary(json: &str, tol: Tolerance) -> Result<CMatrix> {
    let m = read_matrix(json)?;
    if !is_unitary(&m, tol)? {
        return Err(Error::Validation("matrix is not unitary".into()));
    }
    Ok(m)
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum GateJson {
    Bs { alpha: C64, beta: C64, modes: (usize, usize) },
    Ps { theta: f64, mode: usize },
    U2 { entries: CMatrix, modes: (usize, usize) },
}

#[derive(Serialize, Deserialize)]
struct CircuitJson {
    modes: usize,
    gates: Vec<GateJson>,
}

impl From<&PlacedGate> for GateJson {
    fn from(g: &PlacedGate) -> Self {
        match g {
            PlacedGate::Beamsplitter { gate, modes } => {
                GateJson::Bs { alpha: gate.alpha(), beta: gate.beta(), modes: *modes }
            }
            PlacedGate::Phaseshifter { gate, mode } => GateJson::Ps { theta: gate.theta, mode: *mode },
            PlacedGate::General { matrix, modes } => GateJson::U2 { entries: matrix.clone(), modes: *modes },
        }
    }
}

impl TryFrom<GateJson> for PlacedGate {
    type Error = Error;

    fn try_from(g: GateJson) -> Result<Self> {
        Ok(match g {
            GateJson::Bs { alpha, beta, modes: (i, j) } => {
                PlacedGate::beamsplitter(Beamsplitter::new(alpha, beta)?, i, j)
            }
            GateJson::Ps { theta, mode } => PlacedGate::phaseshifter(theta, mode),
            GateJson::U2 { entries, modes } => {
                if entries.rows() != 2 || entries.cols() != 2 || !is_unitary(&entries, Tolerance::default())? {
                    return Err(Error::Validation("u2 gate must be a 2x2 unitary".into()));
                }
                PlacedGate::General { matrix: entries, modes }
            }
        })
    }
}

impl Serialize for Circuit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CircuitJson { modes: self.modes(), gates: self.gates().iter().map(GateJson::from).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Circuit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CircuitJson::deserialize(d)?;
        let gates =
            raw.gates.into_iter().map(PlacedGate::try_from).collect::<Result<Vec<_>>>().map_err(D::Error::custom)?;
        Circuit::with_gates(raw.modes, gates).map_err(D::Error::custom)
    }
}

/// Parses `"re,im"` (period decimal separator, no whitespace).
pub fn parse_complex(s: &str) -> Result<C64> {
    let bad = || Error::Validation(format!("malformed complex literal {s:?}, expected re,im"));
    let (re, im) = s.split_once(',').ok_or_else(bad)?;
    let parse = |t: &str| -> Result<f64> {
        if t.is_empty() || t.chars().any(char::is_whitespace) {
            return Err(bad());
        }
        t.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(bad)
    };
    Ok(C64::new(parse(re)?, parse(im)?))
}

/// Builds a beamsplitter from truncated decimal literals, rescaling onto the
/// unit sphere when the norm is within [`LITERAL_NORM_TOL`] of 1.
pub fn beamsplitter_from_literals(alpha: C64, beta: C64) -> Result<Beamsplitter> {
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if !norm.is_finite() || (norm - 1.0).abs() > LITERAL_NORM_TOL {
        return Err(Error::Normalization(norm));
    }
    let k = norm.sqrt();
    Beamsplitter::new(alpha / k, beta / k)
}
