use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{is_unitary, numeric_rank, principal_log_unitary, CMatrix, Tolerance, C64};

/// Numeric dimension of the Lie algebra generated by the logs of short
/// generator words. A lower bound on the dimension of the closed group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LieClosure {
    pub dimension: usize,
    /// Some word had an eigenvalue at -1, so its log was skipped.
    pub branch_cut: bool,
    pub logs_used: usize,
}

pub const WORD_LENGTH: usize = 3;

pub fn lie_closure_dimension(gens: &[CMatrix], tol: Tolerance) -> Result<LieClosure> {
    let Some(first) = gens.first() else {
        return Err(Error::Parameter("lie closure needs at least one generator".into()));
    };
    let d = first.ensure_square()?;
    for g in gens {
        if g.rows() != d || g.cols() != d {
            return Err(Error::Dimension("generators must share one square shape".into()));
        }
        if !is_unitary(g, Tolerance::default())? {
            return Err(Error::Validation("lie closure generators must be unitary".into()));
        }
    }

    let mut words: Vec<CMatrix> = gens.to_vec();
    let mut layer = gens.to_vec();
    for _ in 1..WORD_LENGTH {
        layer = layer.iter().flat_map(|w| gens.iter().map(move |g| w * g)).collect();
        words.extend(layer.iter().cloned());
    }

    let mut branch_cut = false;
    let mut logs = Vec::new();
    for w in &words {
        let log = principal_log_unitary(w)?;
        if log.branch_cut {
            branch_cut = true;
            continue;
        }
        logs.push(traceless(&log.generator));
    }
    let logs_used = logs.len();

    let mut basis = real_span_basis(&logs, tol);
    for _ in 0..=2 * d * d {
        let mut candidates = basis.clone();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                candidates.push(&(&basis[i] * &basis[j]) - &(&basis[j] * &basis[i]));
            }
        }
        let next = real_span_basis(&candidates, tol);
        if next.len() == basis.len() {
            break;
        }
        basis = next;
    }
    let dimension = if basis.is_empty() { 0 } else { numeric_rank(&basis, tol)? };
    Ok(LieClosure { dimension, branch_cut, logs_used })
}

fn traceless(m: &CMatrix) -> CMatrix {
    let d = m.rows();
    let shift = m.trace() / d as f64;
    let mut out = m.clone();
    for k in 0..d {
        out[(k, k)] -= shift;
    }
    out
}

/// Orthonormal basis (under `Re tr(A† B)`) of the real span of `mats`, from
/// the right singular vectors of their stacked real coordinates.
fn real_span_basis(mats: &[CMatrix], tol: Tolerance) -> Vec<CMatrix> {
    let Some(first) = mats.first() else {
        return Vec::new();
    };
    let (r, c) = (first.rows(), first.cols());
    let n = r * c;
    let stacked = DMatrix::<f64>::from_fn(mats.len(), 2 * n, |i, k| {
        let z = mats[i].as_slice()[k % n];
        if k < n {
            z.re
        } else {
            z.im
        }
    });
    let svd = stacked.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let top = svd.singular_values.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return Vec::new();
    }
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > tol.value() * top)
        .map(|(i, _)| {
            let data = (0..n).map(|k| C64::new(v_t[(i, k)], v_t[(i, k + n)])).collect();
            CMatrix::new(r, c, data).expect("finite singular vectors")
        })
        .collect()
}
