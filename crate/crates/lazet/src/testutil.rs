//! Shared fixtures for unit tests.

use alloc::vec::Vec;

use crate::commutation::CommutationGraph;

/// The bull graph: a triangle `{a, c, d}` with horns `b — a` and `e — d`.
///
/// Small enough for exhaustive sweeps, yet its commutation classes are all
/// distinct and it has a triangle, two degree-one letters, and letters of
/// every adjacency pattern in between.
pub(crate) fn bull() -> CommutationGraph {
    CommutationGraph::new(
        ["a", "b", "c", "d", "e"],
        &[("e", "d"), ("d", "a"), ("a", "b"), ("d", "c"), ("a", "c")],
    )
    .unwrap()
}

/// Deterministic pseudo-random graphs: for `seed`, a graph over
/// `letter_count ≤ 5` letters named `a, b, …` where each pair commutes with
/// probability ~1/2.
pub(crate) fn random_graph(seed: u64, letter_count: usize) -> CommutationGraph {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<&str> = ["a", "b", "c", "d", "e", "f"][..letter_count].to_vec();
    let mut pairs = Vec::new();
    for i in 0..letter_count {
        for j in i + 1..letter_count {
            if rng.gen_bool(0.5) {
                pairs.push((names[i], names[j]));
            }
        }
    }
    CommutationGraph::new(names.iter().copied(), &pairs).unwrap()
}
