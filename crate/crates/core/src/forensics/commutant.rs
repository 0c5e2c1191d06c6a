use crate::error::{Error, Result};
use crate::matrix::{matrix_rank, CMatrix, Tolerance};

/// Dimension of `{X : M X = X M for every M in mats}` for `dim x dim` matrices.
///
/// The conditions are stacked as one linear system on the `dim^2` entries of
/// `X` and the null space is sized by numeric rank; a result of 1 means only
/// scalars commute, i.e. the generated representation is irreducible.
pub fn commutant_dimension(dim: usize, mats: &[CMatrix], tol: Tolerance) -> Result<usize> {
    if dim == 0 {
        return Err(Error::Parameter("dimension must be positive".into()));
    }
    if let Some(m) = mats.iter().find(|m| m.rows() != dim || m.cols() != dim) {
        return Err(Error::Dimension(format!("expected {dim}x{dim} generators, got {}x{}", m.rows(), m.cols())));
    }
    let n = dim * dim;
    if mats.is_empty() {
        return Ok(n);
    }
    let mut system = CMatrix::zeros(mats.len() * n, n);
    for (g, m) in mats.iter().enumerate() {
        let base = g * n;
        for i in 0..dim {
            for j in 0..dim {
                let row = base + i * dim + j;
                for k in 0..dim {
                    // (M X)_ij = sum_k M_ik X_kj
                    system[(row, k * dim + j)] += m[(i, k)];
                    // (X M)_ij = sum_k X_ik M_kj
                    system[(row, i * dim + k)] -= m[(k, j)];
                }
            }
        }
    }
    let rank = matrix_rank(&system, tol);
    Ok(n - rank)
}
