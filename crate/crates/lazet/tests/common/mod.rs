//! Shared fixtures for the integration suites.
#![allow(dead_code)] // each test binary uses its own subset

use lazet::{CommutationGraph, Subalphabet, Word};
use rand::{Rng, SeedableRng};

/// The bull graph: a triangle `{a, c, d}` with horns `b — a` and `e — d`.
pub fn bull() -> CommutationGraph {
    CommutationGraph::new(
        ["a", "b", "c", "d", "e"],
        &[("e", "d"), ("d", "a"), ("a", "b"), ("d", "c"), ("a", "c")],
    )
    .unwrap()
}

/// Deterministic pseudo-random graph over `letter_count ≤ 6` letters named
/// `a, b, …`; each pair commutes with probability 1/2.
pub fn random_graph(seed: u64, letter_count: usize) -> CommutationGraph {
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

/// `count` deterministic graphs with 2 to `max_letters` letters.
pub fn graph_family(count: u64, max_letters: usize) -> Vec<CommutationGraph> {
    (0..count)
        .map(|seed| random_graph(seed, 2 + (seed as usize) % (max_letters - 1)))
        .collect()
}

/// A deterministic pseudo-random subalphabet of `g`.
pub fn random_subalphabet(seed: u64, g: &CommutationGraph) -> Subalphabet {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    Subalphabet::from_letters(g.letters().filter(|_| rng.gen_bool(0.5)))
}

/// Every subalphabet of `g`, the empty and full ones included.
pub fn all_subalphabets(g: &CommutationGraph) -> Vec<Subalphabet> {
    (0..1u64 << g.letter_count())
        .map(|mask| {
            Subalphabet::from_letters(g.letters().filter(|x| mask >> x.index() & 1 == 1))
        })
        .collect()
}

pub fn word(g: &CommutationGraph, s: &str) -> Word {
    lazet::trace::parse_word(g, s).unwrap()
}
