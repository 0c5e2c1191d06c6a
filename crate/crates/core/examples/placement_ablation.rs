//! Compares synthesis with all six placements against the three forward ones
//! (b12, b13, b23) on random targets. Run with
//! `cargo run --release -p splitter-core --example placement_ablation`.

use rand::SeedableRng;
use splitter_core::random::{haar_special_orthogonal, haar_unitary, random_beamsplitter, random_real_beamsplitter};
use splitter_core::synth::{synthesize_with, Placement, SynthConfig};

const TRIALS: usize = 20;
const BUDGETS: [usize; 4] = [4, 6, 8, 10];

fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(500);
    let all = SynthConfig::default();
    let forward = SynthConfig { placements: Placement::FORWARD.to_vec(), ..SynthConfig::default() };
    println!("gate     budget  err(all)  err(fwd)  nodes(all)  nodes(fwd)");
    for real in [false, true] {
        let mut err = [[0.0; 2]; BUDGETS.len()];
        let mut nodes = [[0usize; 2]; BUDGETS.len()];
        for _ in 0..TRIALS {
            let (b, t) = if real {
                (random_real_beamsplitter(&mut rng), haar_special_orthogonal(3, &mut rng))
            } else {
                (random_beamsplitter(&mut rng), haar_unitary(3, &mut rng))
            };
            for (k, &budget) in BUDGETS.iter().enumerate() {
                for (slot, cfg) in [&all, &forward].into_iter().enumerate() {
                    let r = synthesize_with(&b, &t, 1e-12, budget, cfg).expect("valid inputs");
                    err[k][slot] += r.achieved_error / TRIALS as f64;
                    nodes[k][slot] += r.nodes_explored / TRIALS;
                }
            }
        }
        for (k, budget) in BUDGETS.iter().enumerate() {
            println!(
                "{:<8} {budget:>6}  {:>8.4}  {:>8.4}  {:>10}  {:>10}",
                if real { "real" } else { "complex" },
                err[k][0],
                err[k][1],
                nodes[k][0],
                nodes[k][1]
            );
        }
    }
}
