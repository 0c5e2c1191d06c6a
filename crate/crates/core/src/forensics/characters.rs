//! Allowed character values of the finite SU(3) subgroups with
//! three-dimensional irreps, and the Δ(3n²)/Δ(6n²) character formulas.

use std::f64::consts::PI;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::C64;

/// `e_n^k = exp(2 pi i k / n)`, with the exponent reduced mod n first so that
/// `k ≡ 0` gives exactly 1.
pub fn e(n: i64, k: i64) -> C64 {
    let k = k.rem_euclid(n);
    if k == 0 {
        return C64::new(1.0, 0.0);
    }
    C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupName {
    Sigma60,
    Sigma60Z3,
    Sigma168,
    Sigma168Z3,
    Sigma216,
    Sigma36x3,
    Sigma216x3,
    Sigma360x3,
    Octahedral,
    Tetrahedral,
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl GroupName {
    pub const ALL: [GroupName; 13] = [
        GroupName::Sigma60,
        GroupName::Sigma60Z3,
        GroupName::Sigma168,
        GroupName::Sigma168Z3,
        GroupName::Sigma216,
        GroupName::Sigma36x3,
        GroupName::Sigma216x3,
        GroupName::Sigma360x3,
        GroupName::Octahedral,
        GroupName::Tetrahedral,
        GroupName::BinaryTetrahedral,
        GroupName::BinaryOctahedral,
        GroupName::BinaryIcosahedral,
    ];

    pub fn label(self) -> &'static str {
        match self {
            GroupName::Sigma60 => "Sigma(60)",
            GroupName::Sigma60Z3 => "Sigma(60)xZ3",
            GroupName::Sigma168 => "Sigma(168)",
            GroupName::Sigma168Z3 => "Sigma(168)xZ3",
            GroupName::Sigma216 => "Sigma(216)",
            GroupName::Sigma36x3 => "Sigma(36x3)",
            GroupName::Sigma216x3 => "Sigma(216x3)",
            GroupName::Sigma360x3 => "Sigma(360x3)",
            GroupName::Octahedral => "octahedral",
            GroupName::Tetrahedral => "tetrahedral",
            GroupName::BinaryTetrahedral => "binary-tetrahedral",
            GroupName::BinaryOctahedral => "binary-octahedral",
            GroupName::BinaryIcosahedral => "binary-icosahedral",
        }
    }
}

impl std::fmt::Display for GroupName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for GroupName {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterTable {
    pub group_name: GroupName,
    pub allowed_characters: Vec<C64>,
}

impl CharacterTable {
    pub fn new(group_name: GroupName) -> Self {
        CharacterTable { group_name, allowed_characters: allowed(group_name) }
    }

    /// Closest allowed value and its distance.
    pub fn nearest(&self, z: C64) -> (C64, f64) {
        self.allowed_characters
            .iter()
            .map(|&c| (c, (z - c).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("tables are non-empty")
    }

    pub fn distance(&self, z: C64) -> f64 {
        self.nearest(z).1
    }

    pub fn contains(&self, z: C64, tol: f64) -> bool {
        self.distance(z) <= tol
    }
}

pub fn all_tables() -> Vec<CharacterTable> {
    GroupName::ALL.iter().map(|&g| CharacterTable::new(g)).collect()
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn with_signs(values: &[C64]) -> Vec<C64> {
    values.iter().flat_map(|&v| [v, -v]).collect()
}

fn times_cube_roots(values: &[C64]) -> Vec<C64> {
    (0..3).flat_map(|k| values.iter().map(move |&v| v * e(3, k))).collect()
}

fn dedup(mut values: Vec<C64>) -> Vec<C64> {
    let mut out: Vec<C64> = Vec::with_capacity(values.len());
    for v in values.drain(..) {
        if !out.iter().any(|w| (w - v).norm() < 1e-12) {
            out.push(v);
        }
    }
    out
}

fn sigma60() -> Vec<C64> {
    let s5 = 5f64.sqrt();
    vec![real(0.0), real(-1.0), real(3.0), real((1.0 + s5) / 2.0), real((1.0 - s5) / 2.0)]
}

fn sigma168() -> Vec<C64> {
    let s7 = 7f64.sqrt();
    vec![real(0.0), real(1.0), real(-1.0), real(3.0), C64::new(-0.5, s7 / 2.0), C64::new(-0.5, -s7 / 2.0)]
}

fn allowed(g: GroupName) -> Vec<C64> {
    let set = match g {
        GroupName::Sigma60 => sigma60(),
        GroupName::Sigma60Z3 => times_cube_roots(&sigma60()),
        GroupName::Sigma168 => sigma168(),
        GroupName::Sigma168Z3 => times_cube_roots(&sigma168()),
        GroupName::Sigma216 => vec![real(0.0), real(-1.0), real(3.0)],
        GroupName::Sigma36x3 => {
            let mut v = vec![real(0.0)];
            v.extend(with_signs(&[
                real(1.0),
                e(3, 1),
                e(3, 2),
                e(4, 1),
                e(12, 7),
                e(12, 11),
                real(3.0),
                3.0 * e(3, 1),
                3.0 * e(3, 2),
            ]));
            v
        }
        GroupName::Sigma216x3 => {
            let e9 = |k| e(9, k);
            let mut v = vec![real(0.0), real(3.0)];
            v.extend(with_signs(&[real(1.0), e(3, 1), e(3, 2)]));
            v.extend([-e9(2), -e9(4), -e9(5), -e9(7)]);
            v.extend([e9(2) + e9(5), -e9(2) + e9(5)]);
            v.extend([
                2.0 * e9(2) + e9(5),
                -e9(2) - 2.0 * e9(5),
                e9(4) + e9(7),
                e9(4) + 2.0 * e9(7),
                -2.0 * e9(4) - e9(7),
            ]);
            v
        }
        GroupName::Sigma360x3 => {
            let e15 = |k| e(15, k);
            // 3 is the identity character; the listed set omits it
            let mut v = vec![real(0.0), real(3.0)];
            v.extend(with_signs(&[real(1.0), e(3, 1), e(3, 2)]));
            v.extend([3.0 * e(3, 1), 3.0 * e(3, 2)]);
            v.extend([-e(5, 1) - e(5, 4), -e(5, 2) - e(5, 3)]);
            v.extend([-e15(1) - e15(4), -e15(7) - e15(13), -e15(11) - e15(14), -e15(2) - e15(8)]);
            v
        }
        GroupName::Octahedral | GroupName::Tetrahedral | GroupName::BinaryTetrahedral | GroupName::BinaryOctahedral => {
            vec![real(0.0), real(1.0), real(-1.0), real(3.0), real(-3.0)]
        }
        GroupName::BinaryIcosahedral => {
            // the icosahedral values (1±√5)/2 plus the literal (√5±1)/2
            let s5 = 5f64.sqrt();
            let mut v = sigma60();
            v.extend([real((s5 + 1.0) / 2.0), real((s5 - 1.0) / 2.0)]);
            v
        }
    };
    dedup(set)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DeltaSeries {
    #[serde(rename = "Delta(3n^2)")]
    Delta3n2,
    #[serde(rename = "Delta(6n^2)")]
    Delta6n2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClassType {
    A,
    B,
    C,
    D,
    E,
    F,
}

/// Character of class `class(p, q)` in the irrep `(m1, m2, t)` of
/// Δ(3n²) or Δ(6n²). Exponents are reduced as integers mod n before the
/// exponential is taken.
#[allow(clippy::too_many_arguments)]
pub fn delta_character(
    series: DeltaSeries,
    n: i64,
    m1: i64,
    m2: i64,
    t: u8,
    class: ClassType,
    p: i64,
    q: i64,
) -> Result<C64> {
    if n < 1 {
        return Err(Error::Parameter(format!("n must be positive, got {n}")));
    }
    if !(0..n).contains(&p) || !(0..n).contains(&q) {
        return Err(Error::Parameter(format!("p, q must lie in 0..{n}, got ({p}, {q})")));
    }
    if t > 1 {
        return Err(Error::Parameter(format!("t must be 0 or 1, got {t}")));
    }
    if series == DeltaSeries::Delta6n2 && !(m2 == 0 || m1 == 0 || m1 == m2) {
        return Err(Error::Parameter(format!(
            "Delta(6n^2) irreps need (m1, m2) of the form (m,0), (0,m) or (m,m), got ({m1}, {m2})"
        )));
    }
    let sign = if t == 1 { -1.0 } else { 1.0 };
    match (series, class) {
        (_, ClassType::C) | (_, ClassType::E) => Ok(C64::new(0.0, 0.0)),
        (_, ClassType::A) => Ok(e(n, m1 * p + m2 * q) + e(n, m1 * q - m2 * (p + q)) + e(n, -m1 * (p + q) + m2 * p)),
        (DeltaSeries::Delta3n2, _) => Err(Error::Parameter(format!("class {class:?} does not occur in Delta(3n^2)"))),
        (DeltaSeries::Delta6n2, ClassType::B) => Ok(sign * e(n, m1 * p + m2 * q)),
        (DeltaSeries::Delta6n2, ClassType::D | ClassType::F) => {
            if n % 2 != 0 {
                return Err(Error::Parameter(format!("class {class:?} needs even n, got {n}")));
            }
            let h = n / 2;
            let k = if class == ClassType::D { m1 * (h - p - q) + m2 * p } else { m1 * q + m2 * (h - p - q) };
            Ok(sign * e(n, k))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_of_unity_exact_at_zero() {
        assert_eq!(e(7, 0), C64::new(1.0, 0.0));
        assert_eq!(e(7, 14), C64::new(1.0, 0.0));
        assert!((e(4, 1) - C64::new(0.0, 1.0)).norm() < 1e-15);
        assert!((e(3, -1) - e(3, 2)).norm() < 1e-15);
    }

    #[test]
    fn tables_contain_identity_character() {
        for t in all_tables() {
            assert!(t.contains(C64::new(3.0, 0.0), 1e-12), "{}", t.group_name);
        }
    }

    #[test]
    fn golden_ratio_values() {
        let t = CharacterTable::new(GroupName::Sigma60);
        assert!(t.contains(C64::new(-0.6180339887498949, 0.0), 1e-12));
        assert!(t.contains(C64::new(1.618033988749895, 0.0), 1e-12));
        assert_eq!(t.allowed_characters.len(), 5);
    }

    #[test]
    fn z3_variants_are_three_copies() {
        assert_eq!(CharacterTable::new(GroupName::Sigma60Z3).allowed_characters.len(), 13);
        assert_eq!(CharacterTable::new(GroupName::Sigma168Z3).allowed_characters.len(), 16);
        let t = CharacterTable::new(GroupName::Sigma168Z3);
        assert!(t.contains(C64::new(-0.5, 7f64.sqrt() / 2.0) * e(3, 2), 1e-12));
    }

    #[test]
    fn all_characters_bounded_by_three() {
        for t in all_tables() {
            for c in &t.allowed_characters {
                assert!(c.norm() <= 3.0 + 1e-12, "{} has {c}", t.group_name);
            }
        }
    }

    #[test]
    fn class_a_identity_is_three() {
        for (m1, m2) in [(0, 0), (1, 2), (3, 3)] {
            let v = delta_character(DeltaSeries::Delta3n2, 5, m1, m2, 0, ClassType::A, 0, 0).unwrap();
            assert_eq!(v, C64::new(3.0, 0.0));
        }
    }

    #[test]
    fn traceless_classes() {
        for class in [ClassType::C, ClassType::E] {
            let v = delta_character(DeltaSeries::Delta6n2, 4, 1, 0, 1, class, 2, 3).unwrap();
            assert_eq!(v, C64::new(0.0, 0.0));
        }
    }

    #[test]
    fn class_b_origin_with_sign() {
        let v = delta_character(DeltaSeries::Delta6n2, 3, 1, 1, 1, ClassType::B, 0, 0).unwrap();
        assert_eq!(v, C64::new(-1.0, 0.0));
    }

    #[test]
    fn invalid_combinations() {
        assert!(delta_character(DeltaSeries::Delta3n2, 3, 1, 1, 0, ClassType::B, 0, 0).is_err());
        assert!(delta_character(DeltaSeries::Delta6n2, 3, 1, 0, 0, ClassType::D, 0, 0).is_err());
        assert!(delta_character(DeltaSeries::Delta6n2, 4, 1, 2, 0, ClassType::B, 0, 0).is_err());
        assert!(delta_character(DeltaSeries::Delta6n2, 4, 1, 0, 2, ClassType::B, 0, 0).is_err());
        assert!(delta_character(DeltaSeries::Delta3n2, 4, 1, 0, 0, ClassType::A, 4, 0).is_err());
    }

    /// Independent evaluation of the class-A sum with floating exponents.
    #[test]
    fn class_a_matches_float_sum() {
        let n = 7i64;
        let w = |x: f64| C64::from_polar(1.0, 2.0 * PI * x / n as f64);
        for m1 in 0..n {
            for m2 in 0..n {
                for p in 0..n {
                    for q in 0..n {
                        let (m1f, m2f, pf, qf) = (m1 as f64, m2 as f64, p as f64, q as f64);
                        let want =
                            w(m1f * pf + m2f * qf) + w(m1f * qf - m2f * (pf + qf)) + w(-m1f * (pf + qf) + m2f * pf);
                        let got = delta_character(DeltaSeries::Delta3n2, n, m1, m2, 0, ClassType::A, p, q).unwrap();
                        assert!((got - want).norm() < 1e-12);
                    }
                }
            }
        }
    }
}
