//! Seeded inputs shared by the criterion benchmarks in `benches/`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use splitter_core::random::{haar_unitary, random_beamsplitter};
use splitter_core::synth::{apply_word, Letter, Placement};
use splitter_core::{Beamsplitter, CMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unitary(n: usize, seed: u64) -> CMatrix {
    haar_unitary(n, &mut rng(seed))
}

pub fn beamsplitter(seed: u64) -> Beamsplitter {
    random_beamsplitter(&mut rng(seed))
}

/// A beamsplitter and the product of a fixed word of `len` letters over it.
pub fn planted(len: usize, seed: u64) -> (Beamsplitter, CMatrix) {
    let b = beamsplitter(seed);
    let word: Vec<Letter> =
        (0..len).map(|k| Letter { placement: Placement::ALL[(k * 5 + 1) % 6], adjoint: k % 3 == 0 }).collect();
    let target = apply_word(&b, &word);
    (b, target)
}
