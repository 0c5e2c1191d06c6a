//! Linear-optical beamsplitter toolkit: circuit model, mesh decomposition,
//! universality classification with group-theoretic evidence, word synthesis
//! and multi-photon lifting.

pub mod classify;
pub mod error;
pub mod fock;
pub mod forensics;
pub mod io;
pub mod matrix;
pub mod optics;
pub mod random;
pub mod reck;
pub mod synth;

pub use classify::{classify_beamsplitter, classify_two_mode, Outcome, Rationale, Verdict};
pub use error::{Error, Result};
pub use fock::{fock_basis, lift, permanent, FockState, LiftedUnitary};
pub use forensics::{ClosureReport, EliminationReport, GeneratorTriple};
pub use matrix::{CMatrix, Tolerance, C64};
pub use optics::{Beamsplitter, Circuit, Phaseshifter, PlacedGate};
pub use reck::Decomposition;
pub use synth::{synthesize, Letter, Placement, SynthesisResult};
