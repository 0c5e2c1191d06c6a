use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, C64};
use crate::optics::{embed, Beamsplitter};

/// Maximum allowed gap between the closed-form and the direct traces.
pub const TRACE_CONSISTENCY_TOL: f64 = 1e-10;

/// The three special-unitary products `R1 = b12 b13`, `R2 = b23 b13`,
/// `R3 = b12 b23` of a beamsplitter placed on three modes, with their traces.
#[derive(Debug, Clone)]
pub struct GeneratorTriple {
    pub beamsplitter: Beamsplitter,
    pub r1: CMatrix,
    pub r2: CMatrix,
    pub r3: CMatrix,
    pub t1: C64,
    pub t2: C64,
    pub t3: C64,
}

impl GeneratorTriple {
    pub fn matrices(&self) -> [&CMatrix; 3] {
        [&self.r1, &self.r2, &self.r3]
    }

    pub fn to_vec(&self) -> Vec<CMatrix> {
        vec![self.r1.clone(), self.r2.clone(), self.r3.clone()]
    }

    pub fn traces(&self) -> [C64; 3] {
        [self.t1, self.t2, self.t3]
    }
}

pub fn generator_triple(b: &Beamsplitter) -> GeneratorTriple {
    let g = b.matrix();
    let b12 = embed(&g, 0, 1, 3).expect("valid placement");
    let b13 = embed(&g, 0, 2, 3).expect("valid placement");
    let b23 = embed(&g, 1, 2, 3).expect("valid placement");
    let r1 = &b12 * &b13;
    let r2 = &b23 * &b13;
    let r3 = &b12 * &b23;
    GeneratorTriple { beamsplitter: *b, t1: r1.trace(), t2: r2.trace(), t3: r3.trace(), r1, r2, r3 }
}

/// Closed forms `alpha^2 - 2 conj(alpha)`, `conj(alpha)^2 + 2 alpha`,
/// `-|alpha|^2 + alpha - conj(alpha)`.
pub fn closed_form_traces(alpha: C64) -> [C64; 3] {
    let ac = alpha.conj();
    [alpha * alpha - 2.0 * ac, ac * ac + 2.0 * alpha, C64::new(-alpha.norm_sqr(), 0.0) + alpha - ac]
}

/// Traces of the triple, cross-checked against the closed forms.
pub fn traces(t: &GeneratorTriple) -> Result<(C64, C64, C64)> {
    let direct = t.traces();
    let closed = closed_form_traces(t.beamsplitter.alpha());
    for (k, (d, c)) in direct.iter().zip(closed.iter()).enumerate() {
        let gap = (d - c).norm();
        if gap > TRACE_CONSISTENCY_TOL {
            return Err(Error::InternalConsistency(format!(
                "trace T{} = {d} disagrees with closed form {c} by {gap:.3e}",
                k + 1
            )));
        }
    }
    Ok((direct[0], direct[1], direct[2]))
}

/// `Im tr(R1 R2 R3 R1)`. Zero for real beamsplitters; a real-valued
/// certificate that the generated group is not conjugate into SO(3) when beta
/// is non-real.
///
/// When alpha is real this equals `|beta|^4 * 2q(1 - p)` for `beta = p + iq`;
/// for complex alpha no such short form holds and only the direct product is
/// used.
pub fn complex_witness(t: &GeneratorTriple) -> f64 {
    let prod = &(&(&t.r1 * &t.r2) * &t.r3) * &t.r1;
    prod.trace().im
}

/// Traces of the pairwise products `(R1 R2, R1 R3, R2 R3)`.
pub fn pair_product_traces(t: &GeneratorTriple) -> [C64; 3] {
    [(&t.r1 * &t.r2).trace(), (&t.r1 * &t.r3).trace(), (&t.r2 * &t.r3).trace()]
}

#[derive(Debug, Clone, Serialize)]
pub struct TripleSummary {
    pub alpha: C64,
    pub beta: C64,
    pub traces: [C64; 3],
}

impl From<&GeneratorTriple> for TripleSummary {
    fn from(t: &GeneratorTriple) -> Self {
        TripleSummary { alpha: t.beamsplitter.alpha(), beta: t.beamsplitter.beta(), traces: t.traces() }
    }
}
