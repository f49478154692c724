//! Trace monoids, Lazard bisections, and the finite automata that
//! recognize them.
//!
//! A commutation graph `(Σ, ϑ)` presents a trace monoid: words over `Σ`
//! modulo swapping adjacent letters related by `ϑ`. Eliminating a
//! subalphabet `B` bisects the monoid as `M(Σ,ϑ) = L · M(B,ϑ_B)`, where `L`
//! is the left factor of traces whose terminal alphabet avoids `B`. This
//! crate builds the finite-state recognizers for the representative words
//! of `L` and of its generating set `G(L)`, together with the brute-force
//! and counting machinery needed to verify them independently:
//!
//! - [`commutation`] — alphabets, commutation relations, cliques;
//! - [`trace`] — words, congruence classes, normal forms, enumeration;
//! - [`automaton`] — complete DFAs: products, minimization, counting, DOT;
//! - [`lazard`] — the recognizers of `Rep(L)` and `Rep(G(L))` and their
//!   semantic oracles;
//! - [`series`] — length-graded counting and whole-bisection verification.
//!
//! Everything is deterministic: letter order is declaration order, and all
//! constructions, counts, and exports depend only on their inputs.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod automaton;
pub mod commutation;
pub mod lazard;
pub mod series;
pub mod trace;

#[cfg(test)]
pub(crate) mod testutil;

pub use automaton::{Dfa, StateLabel};
pub use commutation::{
    Clique, CliquePolynomial, CommutationGraph, GraphError, GraphParseError, Letter, Subalphabet,
    MAX_LETTERS,
};
pub use lazard::{tn_automaton, Bisection};
pub use series::{
    left_factor_count_series, normal_form_automaton, trace_count_series, verify_bisection,
    verify_bisection_bounded, CountSeries, SeriesError, VerifyCheck, VerifyReport,
};
pub use trace::{OracleLimit, Trace, Word, DEFAULT_ORACLE_BOUND};
