//! Universality verdicts for a single two-mode gate.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forensics::{
    commutant_dimension, complex_witness, finite_closure, full_elimination, generator_triple, lie_closure_dimension,
    ClosureReport, EliminationReport, LieClosure, DEDUP_GRANULARITY, DEFAULT_CAP,
};
use crate::matrix::{is_monomial, unitarity_defect, CMatrix, Tolerance, C64, DEFAULT_TOL};
use crate::optics::Beamsplitter;

/// Default triviality threshold on |alpha|, |beta| and their imaginary parts.
pub const CLASSIFIER_TOL: f64 = 1e-10;
/// Rotation angles within this many radians of a multiple of pi/2 are trivial.
pub const ANGLE_TOL: f64 = 1e-9;
/// A deciding quantity within this factor of the threshold sets `borderline`.
pub const BORDERLINE_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Trivial,
    UniversalOrthogonal,
    UniversalUnitary,
    /// Outside every covered case: a complex gate with det != -1 and no free phases.
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rationale {
    TrivialMixing,
    RealBeamsplitter,
    ComplexBeamsplitter,
    DetAdjustedByPhase,
    RealRotationAngle,
    OutOfTheoremScope,
}

#[derive(Debug, Clone, Serialize)]
pub struct Evidence {
    pub traces: [C64; 3],
    pub commutant_dimension: usize,
    pub closure: ClosureReport,
    /// Absent for trivial gates, where the traces are degenerate.
    pub elimination: Option<EliminationReport>,
    pub lie: LieClosure,
    pub complex_witness: f64,
    pub generators_monomial: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub rationale: Rationale,
    pub borderline: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<Evidence>,
}

impl Verdict {
    fn new(outcome: Outcome, rationale: Rationale, borderline: bool) -> Self {
        Verdict { outcome, rationale, borderline, evidence: None }
    }

    pub fn is_universal(&self) -> bool {
        matches!(self.outcome, Outcome::UniversalOrthogonal | Outcome::UniversalUnitary)
    }
}

/// Slack when reading a validated unitary back as a beamsplitter.
fn form_tol() -> Tolerance {
    Tolerance::new(1e-8).expect("positive")
}

fn near_threshold(q: f64, tol: f64) -> bool {
    q > tol / BORDERLINE_FACTOR && q <= tol * BORDERLINE_FACTOR
}

pub fn classify_beamsplitter(b: &Beamsplitter, tol: Tolerance) -> Verdict {
    let t = tol.value();
    let mixing = b.alpha().norm().min(b.beta().norm());
    if mixing <= t {
        return Verdict::new(Outcome::Trivial, Rationale::TrivialMixing, near_threshold(mixing, t));
    }
    let imag = b.alpha().im.abs().max(b.beta().im.abs());
    let borderline = near_threshold(mixing, t) || near_threshold(imag, t);
    if imag <= t {
        Verdict::new(Outcome::UniversalOrthogonal, Rationale::RealBeamsplitter, borderline)
    } else {
        Verdict::new(Outcome::UniversalUnitary, Rationale::ComplexBeamsplitter, borderline)
    }
}

fn check_two_mode_unitary(g: &CMatrix, tol: Tolerance) -> Result<()> {
    if g.rows() != 2 || g.cols() != 2 {
        return Err(Error::Dimension(format!("expected a 2x2 gate, got {}x{}", g.rows(), g.cols())));
    }
    let defect = unitarity_defect(g)?;
    if defect > tol.value().max(DEFAULT_TOL) {
        return Err(Error::Validation(format!("gate is not unitary (defect {defect:.3e})")));
    }
    Ok(())
}

/// The det -1 representative `e^{i(pi - theta)/2} g` of `g` up to phase.
fn det_adjusted(g: &CMatrix) -> Result<Beamsplitter> {
    let theta = g.det()?.arg();
    let g2 = g.scale(C64::from_polar(1.0, (PI - theta) / 2.0));
    Beamsplitter::from_matrix(&g2, form_tol())
}

/// Verdict for `g` together with every single-mode phaseshifter.
pub fn classify_two_mode_with_phases(g: &CMatrix, tol: Tolerance) -> Result<Verdict> {
    check_two_mode_unitary(g, tol)?;
    let b = det_adjusted(g)?;
    let base = classify_beamsplitter(&b, tol);
    Ok(match base.outcome {
        Outcome::Trivial => base,
        _ => Verdict::new(Outcome::UniversalUnitary, Rationale::DetAdjustedByPhase, base.borderline),
    })
}

pub fn classify_real_two_mode(g: &CMatrix, tol: Tolerance) -> Result<Verdict> {
    check_two_mode_unitary(g, tol)?;
    let imag = g.max_imag();
    if imag > tol.value().max(DEFAULT_TOL) {
        return Err(Error::Validation(format!("gate has complex entries (max |Im| = {imag:.3e})")));
    }
    let r = g.map(|z| C64::new(z.re, 0.0));
    let det = r.det()?.re;
    if det < 0.0 {
        let b = Beamsplitter::from_matrix(&r, form_tol())?;
        return Ok(classify_beamsplitter(&b, tol));
    }
    let theta = r[(1, 0)].re.atan2(r[(0, 0)].re);
    let quarter = PI / 2.0;
    let off = theta.rem_euclid(quarter);
    let off = off.min(quarter - off);
    if off <= ANGLE_TOL {
        Ok(Verdict::new(Outcome::Trivial, Rationale::TrivialMixing, near_threshold(off, ANGLE_TOL)))
    } else {
        Ok(Verdict::new(Outcome::UniversalOrthogonal, Rationale::RealRotationAngle, near_threshold(off, ANGLE_TOL)))
    }
}

/// Verdict for `g` alone (no phaseshifters). Complex gates whose determinant
/// is not -1 and which mix modes fall outside the covered cases.
pub fn classify_two_mode(g: &CMatrix, tol: Tolerance) -> Result<Verdict> {
    check_two_mode_unitary(g, tol)?;
    let det = g.det()?;
    let slack = tol.value().max(DEFAULT_TOL);
    if (det + C64::new(1.0, 0.0)).norm() <= slack {
        let b = Beamsplitter::from_matrix(g, form_tol())?;
        return Ok(classify_beamsplitter(&b, tol));
    }
    if g.max_imag() <= slack {
        return classify_real_two_mode(g, tol);
    }
    if is_monomial(g, Tolerance::new(slack)?) {
        return Ok(Verdict::new(Outcome::Trivial, Rationale::TrivialMixing, false));
    }
    Ok(Verdict::new(Outcome::Undetermined, Rationale::OutOfTheoremScope, false))
}

#[derive(Debug, Clone, Copy)]
pub struct CrossCheckConfig {
    pub classifier_tol: f64,
    pub closure_cap: usize,
    pub dedup_granularity: f64,
    pub commutant_tol: f64,
    pub elimination_tol: f64,
    pub lie_rank_tol: f64,
}

impl Default for CrossCheckConfig {
    fn default() -> Self {
        CrossCheckConfig {
            classifier_tol: CLASSIFIER_TOL,
            closure_cap: DEFAULT_CAP,
            dedup_granularity: DEDUP_GRANULARITY,
            commutant_tol: DEFAULT_TOL,
            elimination_tol: DEFAULT_TOL,
            lie_rank_tol: 1e-6,
        }
    }
}

pub fn verdict_cross_check(b: &Beamsplitter) -> Result<Verdict> {
    verdict_cross_check_with(b, &CrossCheckConfig::default())
}

/// Clause-based verdict plus the full forensic bundle, with an
/// [`Error::Inconsistency`] when the two disagree.
pub fn verdict_cross_check_with(b: &Beamsplitter, cfg: &CrossCheckConfig) -> Result<Verdict> {
    let mut verdict = classify_beamsplitter(b, Tolerance::new(cfg.classifier_tol)?);
    let triple = generator_triple(b);
    let gens = triple.to_vec();
    let evidence = Evidence {
        traces: triple.traces(),
        commutant_dimension: commutant_dimension(3, &gens, Tolerance::new(cfg.commutant_tol)?)?,
        closure: finite_closure(&gens, cfg.closure_cap, Tolerance::new(cfg.dedup_granularity)?)?,
        elimination: if verdict.outcome == Outcome::Trivial {
            None
        } else {
            Some(full_elimination(&triple, Tolerance::new(cfg.elimination_tol)?)?)
        },
        lie: lie_closure_dimension(&gens, Tolerance::new(cfg.lie_rank_tol)?)?,
        complex_witness: complex_witness(&triple),
        generators_monomial: gens.iter().all(|g| is_monomial(g, Tolerance::default())),
    };

    let mut problems = Vec::new();
    match verdict.outcome {
        Outcome::Trivial => {
            if !evidence.generators_monomial {
                problems.push("generators are not monomial".to_string());
            }
            // signed-permutation triples can act irreducibly and irrational
            // phases give infinite closures, so neither is checked here
        }
        Outcome::UniversalOrthogonal | Outcome::UniversalUnitary => {
            let want_lie = if verdict.outcome == Outcome::UniversalOrthogonal { 3 } else { 8 };
            if evidence.commutant_dimension != 1 {
                problems.push(format!("commutant dimension {}", evidence.commutant_dimension));
            }
            if let Some(order) = evidence.closure.order() {
                problems.push(format!("closure is finite of order {order}"));
            }
            if !evidence.elimination.as_ref().is_some_and(EliminationReport::all_excluded) {
                problems.push("some finite subgroup was not excluded".to_string());
            }
            if evidence.lie.dimension != want_lie {
                problems.push(format!("lie closure dimension {} (want {want_lie})", evidence.lie.dimension));
            }
            if verdict.outcome == Outcome::UniversalOrthogonal && evidence.complex_witness.abs() > DEFAULT_TOL {
                problems.push(format!("complex witness {:.3e} on a real gate", evidence.complex_witness));
            }
        }
        Outcome::Undetermined => unreachable!("beamsplitters are always covered"),
    }
    if !problems.is_empty() {
        return Err(Error::Inconsistency(format!("{:?} contradicted: {}", verdict.outcome, problems.join("; "))));
    }
    verdict.evidence = Some(evidence);
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{ONE, ZERO};
    use crate::random::random_beamsplitter;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn tol() -> Tolerance {
        Tolerance::new(CLASSIFIER_TOL).unwrap()
    }

    fn rotation(theta: f64) -> CMatrix {
        CMatrix::from_real_rows(&[vec![theta.cos(), -theta.sin()], vec![theta.sin(), theta.cos()]]).unwrap()
    }

    #[test]
    fn beamsplitter_examples() {
        let h = 1.0 / 2f64.sqrt();
        let v = classify_beamsplitter(&Beamsplitter::new(ONE, ZERO).unwrap(), tol());
        assert_eq!((v.outcome, v.rationale), (Outcome::Trivial, Rationale::TrivialMixing));
        let v = classify_beamsplitter(&Beamsplitter::new(c(h, 0.0), c(h, 0.0)).unwrap(), tol());
        assert_eq!((v.outcome, v.rationale), (Outcome::UniversalOrthogonal, Rationale::RealBeamsplitter));
        let v = classify_beamsplitter(&Beamsplitter::new(c(0.0, h), c(h, 0.0)).unwrap(), tol());
        assert_eq!(v.outcome, Outcome::UniversalUnitary);
        assert!(!v.borderline);
    }

    #[test]
    fn borderline_flag() {
        let eps: f64 = 5e-10;
        let b = Beamsplitter::new(c((1.0 - eps * eps).sqrt(), 0.0), c(eps, 0.0)).unwrap();
        let v = classify_beamsplitter(&b, tol());
        assert_eq!(v.outcome, Outcome::UniversalOrthogonal);
        assert!(v.borderline);
        let b = Beamsplitter::new(c(0.6, 0.0), c(0.8, 3e-10)).unwrap();
        let v = classify_beamsplitter(&b, tol());
        assert_eq!(v.outcome, Outcome::UniversalUnitary);
        assert!(v.borderline);
    }

    #[test]
    fn with_phases_examples() {
        let v = classify_two_mode_with_phases(&CMatrix::identity(2), tol()).unwrap();
        assert_eq!(v.outcome, Outcome::Trivial);
        let swap = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
        assert_eq!(classify_two_mode_with_phases(&swap, tol()).unwrap().outcome, Outcome::Trivial);
        let v = classify_two_mode_with_phases(&rotation(PI / 7.0), tol()).unwrap();
        assert_eq!((v.outcome, v.rationale), (Outcome::UniversalUnitary, Rationale::DetAdjustedByPhase));
        let bad = CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(classify_two_mode_with_phases(&bad, tol()), Err(Error::Validation(_))));
    }

    #[test]
    fn with_phases_ignores_global_phase() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let g = crate::random::haar_unitary(2, &mut rng);
            let phi = rng.random_range(0.0..2.0 * PI);
            let a = classify_two_mode_with_phases(&g, tol()).unwrap();
            let b = classify_two_mode_with_phases(&g.scale(C64::from_polar(1.0, phi)), tol()).unwrap();
            assert_eq!(a.outcome, b.outcome);
        }
    }

    #[test]
    fn real_two_mode_examples() {
        assert_eq!(classify_real_two_mode(&rotation(PI / 2.0), tol()).unwrap().outcome, Outcome::Trivial);
        let v = classify_real_two_mode(&rotation(PI / 5.0), tol()).unwrap();
        assert_eq!((v.outcome, v.rationale), (Outcome::UniversalOrthogonal, Rationale::RealRotationAngle));
        let refl = CMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        assert_eq!(classify_real_two_mode(&refl, tol()).unwrap().outcome, Outcome::Trivial);
        let complex = CMatrix::diagonal(&[C64::from_polar(1.0, 0.3), C64::from_polar(1.0, -0.3)]);
        assert!(matches!(classify_real_two_mode(&complex, tol()), Err(Error::Validation(_))));
    }

    #[test]
    fn rotation_verdict_has_quarter_turn_symmetry() {
        for k in 0..200 {
            let theta = -PI + k as f64 * 0.0317;
            let a = classify_real_two_mode(&rotation(theta), tol()).unwrap();
            let b = classify_real_two_mode(&rotation(theta + PI / 2.0), tol()).unwrap();
            assert_eq!(a.outcome, b.outcome, "theta {theta}");
        }
    }

    #[test]
    fn general_two_mode_scope() {
        let g = crate::random::haar_unitary(2, &mut rand_chacha::ChaCha8Rng::seed_from_u64(9));
        // scale away from det -1 and realness
        let g = g.scale(C64::from_polar(1.0, 0.37));
        let v = classify_two_mode(&g, tol()).unwrap();
        assert_eq!((v.outcome, v.rationale), (Outcome::Undetermined, Rationale::OutOfTheoremScope));
        let diag = CMatrix::diagonal(&[C64::from_polar(1.0, 0.3), C64::from_polar(1.0, 1.1)]);
        assert_eq!(classify_two_mode(&diag, tol()).unwrap().outcome, Outcome::Trivial);
        assert_eq!(classify_two_mode(&rotation(0.4), tol()).unwrap().outcome, Outcome::UniversalOrthogonal);
    }

    #[test]
    fn cross_check_examples() {
        let v = verdict_cross_check(&Beamsplitter::new(c(0.6, 0.0), c(0.8, 0.0)).unwrap()).unwrap();
        assert_eq!(v.outcome, Outcome::UniversalOrthogonal);
        let e = v.evidence.unwrap();
        assert_eq!(e.commutant_dimension, 1);
        assert!(!e.closure.is_finite());
        assert_eq!(e.lie.dimension, 3);

        let v = verdict_cross_check(&Beamsplitter::new(ONE, ZERO).unwrap()).unwrap();
        assert_eq!(v.outcome, Outcome::Trivial);
        assert_eq!(v.evidence.unwrap().closure.order(), Some(2));

        let h = 1.0 / 2f64.sqrt();
        let v = verdict_cross_check(&Beamsplitter::new(c(0.0, h), c(h, 0.0)).unwrap()).unwrap();
        assert_eq!(v.outcome, Outcome::UniversalUnitary);
        let e = v.evidence.unwrap();
        assert_eq!(e.lie.dimension, 8);
        // beta is real here; the witness still certifies non-realness through alpha
        assert!(e.complex_witness.abs() > 1e-6);
    }

    #[test]
    fn cross_check_agrees_on_random_gates() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        for _ in 0..10 {
            let v = verdict_cross_check(&random_beamsplitter(&mut rng)).unwrap();
            assert_eq!(v.outcome, Outcome::UniversalUnitary);
        }
    }

    #[test]
    fn verdict_json() {
        let v = classify_beamsplitter(&Beamsplitter::new(ONE, ZERO).unwrap(), tol());
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["outcome"], "Trivial");
        assert_eq!(j["rationale"], "trivial-mixing");
    }
}
