use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{is_unitary, phase_fingerprint, CMatrix, Tolerance};

pub const DEFAULT_CAP: usize = 3240;
pub const MAX_WORD_LENGTH: usize = 40;
pub const DEDUP_GRANULARITY: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome")]
pub enum ClosureOutcome {
    Finite { order: usize },
    CapExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    #[serde(flatten)]
    pub outcome: ClosureOutcome,
    pub elements_found: usize,
    pub max_word_length_reached: usize,
}

impl ClosureReport {
    pub fn is_finite(&self) -> bool {
        matches!(self.outcome, ClosureOutcome::Finite { .. })
    }

    pub fn order(&self) -> Option<usize> {
        match self.outcome {
            ClosureOutcome::Finite { order } => Some(order),
            ClosureOutcome::CapExceeded => None,
        }
    }
}

/// Breadth-first product closure of `gens` and their adjoints, identified
/// up to global phase.
pub fn finite_closure(gens: &[CMatrix], cap: usize, dedup_tol: Tolerance) -> Result<ClosureReport> {
    closure_elements(gens, cap, dedup_tol).map(|(r, _)| r)
}

/// [`finite_closure`] that also hands back the enumerated elements, in
/// discovery order.
pub fn closure_elements(gens: &[CMatrix], cap: usize, dedup_tol: Tolerance) -> Result<(ClosureReport, Vec<CMatrix>)> {
    if cap < 1 {
        return Err(Error::Parameter("closure cap must be at least 1".into()));
    }
    let granularity = dedup_tol.value();
    if granularity <= 0.0 {
        return Err(Error::Parameter("dedup tolerance must be positive".into()));
    }
    let dim = match gens.first() {
        Some(g) => g.ensure_square()?,
        None => 1,
    };
    for g in gens {
        if g.rows() != dim || g.cols() != dim {
            return Err(Error::Dimension("closure generators must share one square shape".into()));
        }
        if !is_unitary(g, Tolerance::default())? {
            return Err(Error::Validation("closure generators must be unitary".into()));
        }
    }

    let mut letters: Vec<CMatrix> = Vec::new();
    let mut letter_keys = HashSet::new();
    for g in gens.iter().cloned().chain(gens.iter().map(CMatrix::adjoint)) {
        if letter_keys.insert(phase_fingerprint(&g, granularity)) {
            letters.push(g);
        }
    }

    let identity = CMatrix::identity(dim);
    let mut seen = HashSet::new();
    seen.insert(phase_fingerprint(&identity, granularity));
    let mut elements = vec![identity];
    let mut frontier = vec![0usize];
    let mut depth = 0;
    let mut deepest = 0;

    let exceeded = |elements: &Vec<CMatrix>, deepest| ClosureReport {
        outcome: ClosureOutcome::CapExceeded,
        elements_found: elements.len(),
        max_word_length_reached: deepest,
    };

    while !frontier.is_empty() {
        depth += 1;
        if depth > MAX_WORD_LENGTH {
            return Ok((exceeded(&elements, deepest), elements));
        }
        let mut next = Vec::new();
        for &idx in &frontier {
            for g in &letters {
                let m = g * &elements[idx];
                if seen.insert(phase_fingerprint(&m, granularity)) {
                    elements.push(m);
                    next.push(elements.len() - 1);
                    deepest = depth;
                    if elements.len() > cap {
                        return Ok((exceeded(&elements, deepest), elements));
                    }
                }
            }
        }
        frontier = next;
    }
    let report = ClosureReport {
        outcome: ClosureOutcome::Finite { order: elements.len() },
        elements_found: elements.len(),
        max_word_length_reached: deepest,
    };
    Ok((report, elements))
}
