//! Multi-photon action of a linear-optical unitary on Fock states.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{is_unitary, CMatrix, Tolerance, C64, ONE, ZERO};

/// Largest Fock basis the lift will build.
pub const BASIS_CAP: usize = 10_000;
/// Largest permanent evaluated (Ryser is exponential in this).
pub const PERMANENT_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FockState {
    occupations: Vec<usize>,
}

impl FockState {
    pub fn new(occupations: Vec<usize>) -> Result<Self> {
        if occupations.is_empty() {
            return Err(Error::Validation("a Fock state needs at least one mode".into()));
        }
        Ok(FockState { occupations })
    }

    pub fn occupations(&self) -> &[usize] {
        &self.occupations
    }

    pub fn modes(&self) -> usize {
        self.occupations.len()
    }

    pub fn photons(&self) -> usize {
        self.occupations.iter().sum()
    }

    /// Mode indices with multiplicity, e.g. (2,0,1) -> [0,0,2].
    fn mode_list(&self) -> Vec<usize> {
        self.occupations.iter().enumerate().flat_map(|(j, &s)| std::iter::repeat_n(j, s)).collect()
    }

    fn factorial_product(&self) -> f64 {
        self.occupations.iter().map(|&s| (1..=s).map(|k| k as f64).product::<f64>()).product()
    }
}

/// `C(n + m - 1, n)`, saturating.
pub fn basis_dimension(n: usize, m: usize) -> usize {
    if m == 0 {
        return 0;
    }
    let (top, k) = (n + m - 1, n.min(m - 1));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (top - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// All occupation vectors of `n` photons in `m` modes, lexicographically descending.
pub fn fock_basis(n: usize, m: usize) -> Result<Vec<FockState>> {
    if m == 0 {
        return Err(Error::Parameter("need at least one mode".into()));
    }
    let dim = basis_dimension(n, m);
    if dim > BASIS_CAP {
        return Err(Error::Capacity(format!("Fock basis for n={n}, m={m} has {dim} states (cap {BASIS_CAP})")));
    }
    let mut out = Vec::with_capacity(dim);
    let mut current = vec![0; m];
    fill(n, 0, &mut current, &mut out);
    Ok(out)
}

fn fill(left: usize, mode: usize, current: &mut Vec<usize>, out: &mut Vec<FockState>) {
    if mode + 1 == current.len() {
        current[mode] = left;
        out.push(FockState { occupations: current.clone() });
        return;
    }
    for k in (0..=left).rev() {
        current[mode] = k;
        fill(left - k, mode + 1, current, out);
    }
    current[mode] = 0;
}

/// Ryser's formula, visiting column subsets in Gray-code order.
pub fn permanent(m: &CMatrix) -> Result<C64> {
    let n = m.ensure_square()?;
    if n > PERMANENT_CAP {
        return Err(Error::Capacity(format!("permanent of a {n}x{n} matrix exceeds the cap of {PERMANENT_CAP}")));
    }
    let mut row_sums = vec![ZERO; n];
    let mut total = ZERO;
    let mut gray = 0usize;
    for k in 1usize..(1 << n) {
        let j = k.trailing_zeros() as usize;
        gray ^= 1 << j;
        let adding = gray & (1 << j) != 0;
        for (i, s) in row_sums.iter_mut().enumerate() {
            if adding {
                *s += m[(i, j)];
            } else {
                *s -= m[(i, j)];
            }
        }
        let prod = row_sums.iter().fold(ONE, |acc, s| acc * s);
        if gray.count_ones() % 2 == 1 {
            total -= prod;
        } else {
            total += prod;
        }
    }
    Ok(if n % 2 == 1 { -total } else { total })
}

/// `<t| lift(u) |s>`: the permanent of `u` with row `i` repeated `t_i` times
/// and column `j` repeated `s_j` times, over `sqrt(prod s_j! prod t_i!)`.
pub fn amplitude(u: &CMatrix, s: &FockState, t: &FockState) -> Result<C64> {
    let m = u.ensure_square()?;
    if s.modes() != m || t.modes() != m {
        return Err(Error::Validation(format!(
            "Fock states have {} and {} modes but the unitary has {m}",
            s.modes(),
            t.modes()
        )));
    }
    let n = s.photons();
    if t.photons() != n {
        return Err(Error::Validation(format!("photon numbers differ: {} in, {} out", n, t.photons())));
    }
    if n == 0 {
        return Ok(ONE);
    }
    let (rows, cols) = (t.mode_list(), s.mode_list());
    let data = rows.iter().flat_map(|&i| cols.iter().map(move |&j| u[(i, j)])).collect();
    let sub = CMatrix::new(n, n, data)?;
    Ok(permanent(&sub)? / (s.factorial_product() * t.factorial_product()).sqrt())
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftedUnitary {
    pub n: usize,
    pub basis: Vec<FockState>,
    pub matrix: CMatrix,
}

/// The `n`-photon representation of `u` on [`fock_basis`]`(n, m)`.
pub fn lift(u: &CMatrix, n: usize) -> Result<LiftedUnitary> {
    let m = u.ensure_square()?;
    if !is_unitary(u, Tolerance::default())? {
        return Err(Error::Validation("lift needs a unitary matrix".into()));
    }
    let basis = fock_basis(n, m)?;
    if n > PERMANENT_CAP {
        return Err(Error::Capacity(format!("{n} photons exceed the permanent cap of {PERMANENT_CAP}")));
    }
    let d = basis.len();
    let mut matrix = CMatrix::zeros(d, d);
    for (r, t) in basis.iter().enumerate() {
        for (c, s) in basis.iter().enumerate() {
            matrix[(r, c)] = amplitude(u, s, t)?;
        }
    }
    Ok(LiftedUnitary { n, basis, matrix })
}
