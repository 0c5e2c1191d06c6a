//! Word synthesis over the six placements of one beamsplitter on three modes.
//!
//! Search is meet-in-the-middle: breadth-first levels of distinct elements
//! (modulo global phase) hold the lexicographically first word reaching each
//! element, and a word of length `L` is split into a prefix from level
//! `ceil(L/2)` and a suffix from level `floor(L/2)`. Prefix candidates are
//! found with a vantage-point tree under the Frobenius phase distance, which
//! bounds the operator phase distance from above and by `sqrt(3)` times it
//! from below, so a range query at `sqrt(3) * epsilon` never misses a match.
//! Asymptotically better recursive schemes reach error `epsilon` with words of
//! length `O(log^c(1/epsilon))`; this direct search targets desk-scale
//! tolerances.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{
    canonical_phase, frobenius_phase_distance, is_unitary, phase_distance, phase_fingerprint, CMatrix, Tolerance,
    DEFAULT_TOL,
};
use crate::optics::{embed, Beamsplitter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Placement {
    B12,
    B13,
    B23,
    B21,
    B31,
    B32,
}

impl Placement {
    pub const ALL: [Placement; 6] =
        [Placement::B12, Placement::B13, Placement::B23, Placement::B21, Placement::B31, Placement::B32];
    pub const FORWARD: [Placement; 3] = [Placement::B12, Placement::B13, Placement::B23];

    /// Zero-based (first, second) modes; the gate's first row acts on `first`.
    pub fn modes(self) -> (usize, usize) {
        match self {
            Placement::B12 => (0, 1),
            Placement::B13 => (0, 2),
            Placement::B23 => (1, 2),
            Placement::B21 => (1, 0),
            Placement::B31 => (2, 0),
            Placement::B32 => (2, 1),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Placement::B12 => "b12",
            Placement::B13 => "b13",
            Placement::B23 => "b23",
            Placement::B21 => "b21",
            Placement::B31 => "b31",
            Placement::B32 => "b32",
        }
    }

    pub fn from_label(s: &str) -> Result<Placement> {
        Placement::ALL
            .into_iter()
            .find(|p| p.label() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown placement label {s:?}")))
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for Placement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for Placement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Placement::from_label(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub placement: Placement,
    pub adjoint: bool,
}

impl Letter {
    pub fn new(placement: Placement, adjoint: bool) -> Self {
        Letter { placement, adjoint }
    }

    pub fn matrix(&self, b: &Beamsplitter) -> CMatrix {
        let (i, j) = self.placement.modes();
        let m = embed(&b.matrix(), i, j, 3).expect("placements are valid on three modes");
        if self.adjoint {
            m.adjoint()
        } else {
            m
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.placement, if self.adjoint { "^+" } else { "" })
    }
}

/// Product of the letters in application order (the first letter acts first).
pub fn apply_word(b: &Beamsplitter, word: &[Letter]) -> CMatrix {
    word.iter().fold(CMatrix::identity(3), |acc, l| &l.matrix(b) * &acc)
}

/// Reads a JSON word; unknown labels are parameter errors.
pub fn parse_word(json: &str) -> Result<Vec<Letter>> {
    #[derive(Deserialize)]
    struct Raw {
        placement: String,
        adjoint: bool,
    }
    let raw: Vec<Raw> = serde_json::from_str(json)?;
    raw.into_iter().map(|r| Ok(Letter::new(Placement::from_label(&r.placement)?, r.adjoint))).collect()
}

#[derive(Debug, Clone)]
pub struct SynthConfig {
    pub placements: Vec<Placement>,
    /// Per-depth cap on stored elements. Once hit, deeper levels are partial
    /// and the shortest-word guarantee no longer holds.
    pub max_level_size: usize,
    /// Rounding granularity of the phase-fixed fingerprint that identifies
    /// repeated elements across levels.
    pub dedup_granularity: f64,
    /// Elements per level whose exact error is tracked for the best-found
    /// answer when nothing converges.
    pub tracked_per_level: usize,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            placements: Placement::ALL.to_vec(),
            max_level_size: 200_000,
            dedup_granularity: 1e-7,
            tracked_per_level: 8,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SynthesisResult {
    pub word: Vec<Letter>,
    pub achieved_error: f64,
    pub nodes_explored: usize,
    pub budget: usize,
    pub converged: bool,
    /// Some level hit `max_level_size`.
    pub truncated: bool,
}

pub fn synthesize(b: &Beamsplitter, target: &CMatrix, epsilon: f64, budget: usize) -> Result<SynthesisResult> {
    synthesize_with(b, target, epsilon, budget, &SynthConfig::default())
}

pub fn synthesize_with(
    b: &Beamsplitter,
    target: &CMatrix,
    epsilon: f64,
    budget: usize,
    cfg: &SynthConfig,
) -> Result<SynthesisResult> {
    let class_tol = Tolerance::new(crate::classify::CLASSIFIER_TOL)?;
    if !b.is_nontrivial(class_tol) {
        return Err(Error::Precondition("synthesis needs a mode-mixing beamsplitter".into()));
    }
    if target.rows() != 3 || target.cols() != 3 {
        return Err(Error::Dimension(format!("target must be 3x3, got {}x{}", target.rows(), target.cols())));
    }
    if !is_unitary(target, Tolerance::default())? {
        return Err(Error::Validation("target is not unitary".into()));
    }
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return Err(Error::Parameter(format!("epsilon must be finite and >= 0, got {epsilon}")));
    }
    if cfg.placements.is_empty() || cfg.max_level_size == 0 || cfg.dedup_granularity <= 0.0 {
        return Err(Error::Parameter("synthesis config needs placements, a level cap and a granularity".into()));
    }
    if b.is_real(class_tol) && canonical_phase(target).max_imag() > DEFAULT_TOL {
        return Err(Error::Unreachable(
            "a real beamsplitter only generates real orthogonal matrices; the target is not real up to phase".into(),
        ));
    }

    let mut search = Search::new(b, target, cfg);
    let mut best: Option<(f64, Vec<Letter>)> = None;
    let consider = |err: f64, word: Vec<Letter>, best: &mut Option<(f64, Vec<Letter>)>| {
        let better = match best {
            None => true,
            Some((e, w)) => err < *e || (err == *e && (word.len(), &word) < (w.len(), w)),
        };
        if better {
            *best = Some((err, word));
        }
    };

    for len in 0..=budget {
        let (a, bl) = (len.div_ceil(2), len / 2);
        search.ensure_level(a);
        if search.levels[a].is_empty() || search.levels[bl].is_empty() {
            continue;
        }
        for k in [a, bl] {
            for (err, word) in search.tracked(k) {
                if word.len() <= budget {
                    consider(err, word, &mut best);
                }
            }
        }
        search.ensure_tree(a);
        let tree = search.trees[a].as_ref().expect("built above");
        let radius = 3f64.sqrt() * epsilon + 1e-12;
        let mut hit: Option<(usize, usize, f64)> = None;
        for v in 0..search.levels[bl].len() {
            let mv = &search.levels[bl].mats[v];
            let query = &mv.adjoint() * target;
            let mut found = Vec::new();
            search.evaluations += tree.range(&search.levels[a].mats, &query, radius, &mut found);
            for u in found {
                let product = mv * &search.levels[a].mats[u];
                let err = phase_distance(&product, target)?;
                search.evaluations += 1;
                if err <= epsilon {
                    if hit.is_none_or(|(hu, hv, _)| (u, v) < (hu, hv)) {
                        hit = Some((u, v, err));
                    }
                } else {
                    let word = search.join(a, u, bl, v);
                    consider(err, word, &mut best);
                }
            }
        }
        if let Some((u, v, _)) = hit {
            let word = search.join(a, u, bl, v);
            let achieved_error = phase_distance(&apply_word(b, &word), target)?;
            return Ok(SynthesisResult {
                word,
                achieved_error,
                nodes_explored: search.nodes_explored(),
                budget,
                converged: true,
                truncated: search.truncated,
            });
        }
    }

    let (_, word) = best.unwrap_or((f64::INFINITY, Vec::new()));
    let achieved_error = phase_distance(&apply_word(b, &word), target)?;
    Ok(SynthesisResult {
        word,
        achieved_error,
        nodes_explored: search.nodes_explored(),
        budget,
        converged: achieved_error <= epsilon,
        truncated: search.truncated,
    })
}

#[derive(Default)]
struct Level {
    mats: Vec<CMatrix>,
    parent: Vec<usize>,
    letter: Vec<usize>,
}

impl Level {
    fn len(&self) -> usize {
        self.mats.len()
    }

    fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }
}

struct Search<'a> {
    target: &'a CMatrix,
    cfg: &'a SynthConfig,
    letters: Vec<(Letter, CMatrix)>,
    levels: Vec<Level>,
    trees: Vec<Option<VpTree>>,
    seen: HashSet<Vec<i64>>,
    evaluations: usize,
    truncated: bool,
}

impl<'a> Search<'a> {
    fn new(b: &Beamsplitter, target: &'a CMatrix, cfg: &'a SynthConfig) -> Self {
        let mut seen = HashSet::new();
        let identity = CMatrix::identity(3);
        seen.insert(phase_fingerprint(&identity, cfg.dedup_granularity));

        let mut placements = cfg.placements.clone();
        placements.sort();
        placements.dedup();
        let mut letters: Vec<(Letter, CMatrix)> = Vec::new();
        let mut letter_keys = HashSet::new();
        for p in placements {
            for adjoint in [false, true] {
                let l = Letter::new(p, adjoint);
                let m = l.matrix(b);
                // b^+ = b for real gates; keep only the first spelling
                if letter_keys.insert(phase_fingerprint(&m, cfg.dedup_granularity)) {
                    letters.push((l, m));
                }
            }
        }
        let root = Level { mats: vec![identity], parent: vec![0], letter: vec![usize::MAX] };
        Search { target, cfg, letters, levels: vec![root], trees: vec![None], seen, evaluations: 0, truncated: false }
    }

    fn ensure_level(&mut self, k: usize) {
        while self.levels.len() <= k {
            let prev = self.levels.last().expect("root level");
            let mut next = Level::default();
            'outer: for (pi, pm) in prev.mats.iter().enumerate() {
                for (li, (_, lm)) in self.letters.iter().enumerate() {
                    let m = lm * pm;
                    if self.seen.insert(phase_fingerprint(&m, self.cfg.dedup_granularity)) {
                        next.mats.push(m);
                        next.parent.push(pi);
                        next.letter.push(li);
                        if next.len() >= self.cfg.max_level_size {
                            self.truncated = true;
                            break 'outer;
                        }
                    }
                }
            }
            self.levels.push(next);
            self.trees.push(None);
        }
    }

    fn word(&self, level: usize, mut idx: usize) -> Vec<Letter> {
        let mut out = Vec::with_capacity(level);
        for k in (1..=level).rev() {
            let l = &self.levels[k];
            out.push(self.letters[l.letter[idx]].0);
            idx = l.parent[idx];
        }
        out.reverse();
        out
    }

    /// Prefix `u` from level `a` followed by suffix `v` from level `bl`.
    fn join(&self, a: usize, u: usize, bl: usize, v: usize) -> Vec<Letter> {
        let mut w = self.word(a, u);
        w.extend(self.word(bl, v));
        w
    }

    fn ensure_tree(&mut self, k: usize) {
        if self.trees[k].is_none() {
            let (tree, evals) = VpTree::build(&self.levels[k].mats);
            self.evaluations += evals;
            self.trees[k] = Some(tree);
        }
    }

    /// Exact errors of the elements of level `k` closest to the target.
    fn tracked(&mut self, k: usize) -> Vec<(f64, Vec<Letter>)> {
        let level = &self.levels[k];
        let mut order: Vec<(f64, usize)> =
            level.mats.iter().enumerate().map(|(i, m)| (frobenius_phase_distance(m, self.target), i)).collect();
        order.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
        order.truncate(self.cfg.tracked_per_level);
        self.evaluations += level.len();
        order
            .into_iter()
            .map(|(_, i)| {
                let err = phase_distance(&level.mats[i], self.target).unwrap_or(f64::INFINITY);
                (err, self.word(k, i))
            })
            .collect()
    }

    fn nodes_explored(&self) -> usize {
        self.levels.iter().map(Level::len).sum::<usize>() + self.evaluations
    }
}

/// Vantage-point tree over indices into a slice of matrices.
struct VpTree {
    nodes: Vec<VpNode>,
    root: Option<usize>,
}

struct VpNode {
    item: usize,
    /// Largest distance from the vantage point inside the near subtree.
    inner: f64,
    /// Smallest distance from the vantage point inside the far subtree.
    outer: f64,
    near: Option<usize>,
    far: Option<usize>,
}

impl VpTree {
    fn build(mats: &[CMatrix]) -> (VpTree, usize) {
        let mut tree = VpTree { nodes: Vec::with_capacity(mats.len()), root: None };
        let mut items: Vec<usize> = (0..mats.len()).collect();
        let mut evals = 0;
        tree.root = tree.build_rec(mats, &mut items, &mut evals);
        (tree, evals)
    }

    fn build_rec(&mut self, mats: &[CMatrix], items: &mut [usize], evals: &mut usize) -> Option<usize> {
        let (first, rest) = items.split_first_mut()?;
        let vantage = *first;
        let mut dist: Vec<(f64, usize)> =
            rest.iter().map(|&i| (frobenius_phase_distance(&mats[i], &mats[vantage]), i)).collect();
        *evals += dist.len();
        dist.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
        let half = dist.len() / 2;
        let inner = if half > 0 { dist[half - 1].0 } else { 0.0 };
        let outer = dist.get(half).map_or(f64::INFINITY, |d| d.0);
        for (slot, (_, i)) in rest.iter_mut().zip(&dist) {
            *slot = *i;
        }
        let id = self.nodes.len();
        self.nodes.push(VpNode { item: vantage, inner, outer, near: None, far: None });
        let (near_items, far_items) = rest.split_at_mut(half);
        let near = self.build_rec(mats, near_items, evals);
        let far = self.build_rec(mats, far_items, evals);
        self.nodes[id].near = near;
        self.nodes[id].far = far;
        Some(id)
    }

    /// Pushes every item within `r` of `q`; returns the number of distance evaluations.
    fn range(&self, mats: &[CMatrix], q: &CMatrix, r: f64, out: &mut Vec<usize>) -> usize {
        let mut evals = 0;
        let mut stack: Vec<usize> = self.root.into_iter().collect();
        while let Some(id) = stack.pop() {
            let node = &self.nodes[id];
            let d = frobenius_phase_distance(q, &mats[node.item]);
            evals += 1;
            if d <= r {
                out.push(node.item);
            }
            if let Some(n) = node.near {
                if d - r <= node.inner + 1e-12 {
                    stack.push(n);
                }
            }
            if let Some(f) = node.far {
                if d + r >= node.outer - 1e-12 {
                    stack.push(f);
                }
            }
        }
        evals
    }
}
