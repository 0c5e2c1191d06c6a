//! Group-theoretic evidence about the group generated by a beamsplitter on
//! three modes.

mod characters;
mod closure;
mod commutant;
mod elimination;
mod lie;
mod triple;

pub use characters::{all_tables, delta_character, e, CharacterTable, ClassType, DeltaSeries, GroupName};
pub use closure::{
    closure_elements, finite_closure, ClosureOutcome, ClosureReport, DEDUP_GRANULARITY, DEFAULT_CAP, MAX_WORD_LENGTH,
};
pub use commutant::commutant_dimension;
pub use elimination::{
    character_elimination, dihedral_elimination, full_elimination, DihedralSection, EliminationReport,
    GroupElimination, GroupVerdict, PairProduct, NONTRIVIAL_TOL,
};
pub use lie::{lie_closure_dimension, LieClosure};
pub use triple::{
    closed_form_traces, complex_witness, generator_triple, pair_product_traces, traces, GeneratorTriple, TripleSummary,
    TRACE_CONSISTENCY_TOL,
};
