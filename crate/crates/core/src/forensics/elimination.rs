use serde::Serialize;

use super::characters::{all_tables, GroupName};
use super::triple::{pair_product_traces, GeneratorTriple};
use crate::error::{Error, Result};
use crate::matrix::{Tolerance, C64};

/// Mixing threshold below which a beamsplitter counts as trivial here.
pub const NONTRIVIAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupVerdict {
    Excluded,
    NotExcluded,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupElimination {
    pub group: GroupName,
    pub verdict: GroupVerdict,
    /// 1-based index of the trace furthest from the allowed set.
    pub failing_trace: usize,
    /// Distance of that trace from its nearest allowed character.
    pub distance: f64,
    pub nearest_character: C64,
    /// Distances of T1, T2, T3 from the allowed set.
    pub trace_distances: [f64; 3],
}

#[derive(Debug, Clone, Serialize)]
pub struct PairProduct {
    pub pair: (usize, usize),
    pub trace: C64,
    /// Both factors have unit-modulus traces, so the pair is tested.
    pub tested: bool,
    pub nonzero: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DihedralSection {
    pub traces_nonzero: [bool; 3],
    pub unit_norm_flags: [bool; 3],
    pub pair_product_traces: Vec<PairProduct>,
    pub verdict: GroupVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct EliminationReport {
    pub tolerance: f64,
    pub traces: [C64; 3],
    pub groups: Vec<GroupElimination>,
    pub dihedral: Option<DihedralSection>,
}

impl EliminationReport {
    pub fn group(&self, g: GroupName) -> Option<&GroupElimination> {
        self.groups.iter().find(|e| e.group == g)
    }

    /// Every tabled group and, when present, the dihedral-like families are excluded.
    pub fn all_excluded(&self) -> bool {
        self.groups.iter().all(|g| g.verdict == GroupVerdict::Excluded)
            && self.dihedral.as_ref().is_none_or(|d| d.verdict == GroupVerdict::Excluded)
    }
}

fn require_nontrivial(t: &GeneratorTriple) -> Result<()> {
    if !t.beamsplitter.is_nontrivial(Tolerance::new(NONTRIVIAL_TOL)?) {
        return Err(Error::Precondition(
            "elimination needs a mode-mixing beamsplitter; traces degenerate for trivial gates".into(),
        ));
    }
    Ok(())
}

/// Tests all three traces against each tabled character set. A group is
/// excluded when some trace lies further than `tol` from every allowed value.
pub fn character_elimination(t: &GeneratorTriple, tol: Tolerance) -> Result<EliminationReport> {
    require_nontrivial(t)?;
    let traces = t.traces();
    let groups = all_tables()
        .into_iter()
        .map(|table| {
            let nearest = traces.map(|z| table.nearest(z));
            let trace_distances = nearest.map(|(_, d)| d);
            let (k, _) = trace_distances.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).expect("three traces");
            let distance = trace_distances[k];
            GroupElimination {
                group: table.group_name,
                verdict: if distance > tol.value() { GroupVerdict::Excluded } else { GroupVerdict::NotExcluded },
                failing_trace: k + 1,
                distance,
                nearest_character: nearest[k].0,
                trace_distances,
            }
        })
        .collect();
    Ok(EliminationReport { tolerance: tol.value(), traces, groups, dihedral: None })
}

/// Trace-based exclusion of the dihedral-like families: no generator may be
/// traceless, and any two generators with unit-modulus traces must have a
/// product whose trace is nonzero.
pub fn dihedral_elimination(t: &GeneratorTriple, tol: Tolerance) -> Result<EliminationReport> {
    require_nontrivial(t)?;
    let traces = t.traces();
    let eps = tol.value();
    let traces_nonzero = traces.map(|z| z.norm() > eps);
    let unit_norm_flags = traces.map(|z| (z.norm() - 1.0).abs() <= eps);
    let products = pair_product_traces(t);
    let pairs = [(1, 2), (1, 3), (2, 3)];
    let pair_product_traces: Vec<PairProduct> = pairs
        .iter()
        .zip(products.iter())
        .map(|(&(i, j), &trace)| PairProduct {
            pair: (i, j),
            trace,
            tested: unit_norm_flags[i - 1] && unit_norm_flags[j - 1],
            nonzero: trace.norm() > eps,
        })
        .collect();
    let excluded =
        traces_nonzero.iter().all(|&b| b) && pair_product_traces.iter().filter(|p| p.tested).all(|p| p.nonzero);
    let dihedral = DihedralSection {
        traces_nonzero,
        unit_norm_flags,
        pair_product_traces,
        verdict: if excluded { GroupVerdict::Excluded } else { GroupVerdict::NotExcluded },
    };
    Ok(EliminationReport { tolerance: eps, traces, groups: Vec::new(), dihedral: Some(dihedral) })
}

/// Both eliminations in one report.
pub fn full_elimination(t: &GeneratorTriple, tol: Tolerance) -> Result<EliminationReport> {
    let mut report = character_elimination(t, tol)?;
    report.dihedral = dihedral_elimination(t, tol)?.dihedral;
    Ok(report)
}
