//! Lazard bisections `M(Σ,ϑ) = L · M(B,ϑ_B)` and the automata recognizing
//! the left factor `L` and its generating set `G(L)`.
//!
//! For a subalphabet `B`, the left factor `L` consists of the traces whose
//! terminal alphabet avoids `B`; every trace then factors uniquely as an
//! `L`-part times a trace over `B`. Three recognizers are built here:
//! the two-state single-letter machine ([`tn_automaton`]), the subset
//! machine for `Rep(L)` ([`Bisection::left_factor_automaton`]), and the
//! machine for `Rep(G(L))` ([`Bisection::generating_set_automaton`]).
//! Each has a brute-force semantic counterpart to test against.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::automaton::{Dfa, StateLabel};
use crate::commutation::{CommutationGraph, Letter, Subalphabet};
use crate::trace::{
    lex_normal_form, representatives_bounded, terminal_alphabet, OracleLimit, Trace,
    DEFAULT_ORACLE_BOUND,
};

/// The two-state machine recognizing the representative words of traces
/// whose terminal alphabet avoids `x`: state `∅` (initial, final) loops on
/// `Σ∖{x}` and moves to state `{x}` on `x`; state `{x}` loops on `Com(x)`
/// and returns on the rest.
///
/// Panics if `x` is not a letter of `g`.
pub fn tn_automaton<'g>(g: &'g CommutationGraph, x: Letter) -> Dfa<'g> {
    assert!(x.index() < g.letter_count(), "letter does not belong to the graph");
    let delta = alloc::vec![
        g.letters().map(|y| usize::from(y == x)).collect(),
        g.letters().map(|y| usize::from(g.commute(x, y))).collect(),
    ];
    Dfa::new(
        g,
        alloc::vec![
            StateLabel::Subset(Subalphabet::EMPTY),
            StateLabel::Subset(Subalphabet::singleton(x)),
        ],
        0,
        alloc::vec![true, false],
        delta,
    )
}

/// A bisection of the trace monoid along a subalphabet `B ⊆ Σ`:
/// `M(Σ,ϑ) = L · M(B,ϑ_B)` with `L = {t : TA(t) ∩ B = ∅}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Bisection<'g> {
    graph: &'g CommutationGraph,
    b: Subalphabet,
}

impl<'g> Bisection<'g> {
    /// Panics if `b` is not a subalphabet of `g`.
    pub fn new(graph: &'g CommutationGraph, b: Subalphabet) -> Bisection<'g> {
        assert!(graph.contains_set(b), "subalphabet does not belong to this graph");
        Bisection { graph, b }
    }

    pub fn graph(&self) -> &'g CommutationGraph {
        self.graph
    }

    /// The eliminated subalphabet `B`.
    pub fn b(&self) -> Subalphabet {
        self.b
    }

    /// The remaining letters `Z = Σ∖B`.
    pub fn z(&self) -> Subalphabet {
        self.graph.full_set().difference(self.b)
    }

    /// Letters of `B` in canonical order; bit `i` of a subset-state index
    /// stands for the `i`-th of these.
    fn b_letters(&self) -> Vec<Letter> {
        self.b.iter().collect()
    }

    fn subset_index(b_letters: &[Letter], set: Subalphabet) -> usize {
        b_letters
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &x)| acc | (usize::from(set.contains(x)) << i))
    }

    fn index_subset(b_letters: &[Letter], index: usize) -> Subalphabet {
        Subalphabet::from_letters(
            b_letters
                .iter()
                .enumerate()
                .filter(|&(i, _)| index >> i & 1 == 1)
                .map(|(_, &x)| x),
        )
    }

    /// One step of the subset recurrence: the part of `B` still terminal
    /// after reading `x` from a trace whose terminal part of `B` was `set`.
    fn subset_step(&self, set: Subalphabet, x: Letter) -> Subalphabet {
        set.with(x).intersection(self.graph.commuting_set(x)).intersection(self.b)
    }

    /// The subset machine recognizing `Rep(L)`: one state per subset of
    /// `B`, initial and final `∅`, transition
    /// `(B′, x) ↦ (B′ ∪ {x}) ∩ Com(x) ∩ B`. The state reached on `w` is
    /// always `TA(φ(w)) ∩ B`, whence acceptance of exactly `Rep(L)`.
    ///
    /// State count is `2^|B|`.
    pub fn left_factor_automaton(&self) -> Dfa<'g> {
        let b_letters = self.b_letters();
        let count = 1usize << b_letters.len();
        let mut labels = Vec::with_capacity(count);
        let mut delta = Vec::with_capacity(count);
        for i in 0..count {
            let set = Self::index_subset(&b_letters, i);
            labels.push(StateLabel::Subset(set));
            delta.push(
                self.graph
                    .letters()
                    .map(|x| Self::subset_index(&b_letters, self.subset_step(set, x)))
                    .collect(),
            );
        }
        let mut finals = alloc::vec![false; count];
        finals[0] = true;
        Dfa::new(self.graph, labels, 0, finals, delta)
    }

    /// `Rep(L)` as the minimized intersection of [`tn_automaton`] over all
    /// letters of `B`; the empty intersection (`B = ∅`, where `L` is the
    /// whole monoid) is the all-accepting automaton.
    pub fn left_factor_by_intersection(&self) -> Dfa<'g> {
        let mut acc: Option<Dfa<'g>> = None;
        for x in self.b.iter() {
            let tn = tn_automaton(self.graph, x);
            acc = Some(match acc {
                None => tn,
                Some(d) => d.intersect(&tn),
            });
        }
        acc.unwrap_or_else(|| Dfa::universal(self.graph)).minimize()
    }

    /// The machine recognizing `Rep(G(L))`, the generating set of `L`
    /// (nonempty traces of `L` that are not products of two nonempty
    /// `L`-traces): the subset states of [`Self::left_factor_automaton`]
    /// plus an accepting state `F` and a dead state `H`. Letters of `B`
    /// move between subsets as before; a letter `z ∉ B` moves from a subset
    /// state to `F` when the subset recurrence lands on `∅` and to `H`
    /// otherwise; `F` and `H` send every letter to `H`.
    pub fn generating_set_automaton(&self) -> Dfa<'g> {
        let b_letters = self.b_letters();
        let subsets = 1usize << b_letters.len();
        let (f, h) = (subsets, subsets + 1);
        let mut labels = Vec::with_capacity(subsets + 2);
        let mut delta = Vec::with_capacity(subsets + 2);
        for i in 0..subsets {
            let set = Self::index_subset(&b_letters, i);
            labels.push(StateLabel::Subset(set));
            delta.push(
                self.graph
                    .letters()
                    .map(|x| {
                        let target = self.subset_step(set, x);
                        if self.b.contains(x) {
                            Self::subset_index(&b_letters, target)
                        } else if target.is_empty() {
                            f
                        } else {
                            h
                        }
                    })
                    .collect(),
            );
        }
        labels.push(StateLabel::F);
        labels.push(StateLabel::H);
        delta.push(alloc::vec![h; self.graph.letter_count()]);
        delta.push(alloc::vec![h; self.graph.letter_count()]);
        let mut finals = alloc::vec![false; subsets + 2];
        finals[f] = true;
        Dfa::new(self.graph, labels, 0, finals, delta)
    }

    /// Semantic membership in `L`, independent of any automaton:
    /// `TA(φ(w)) ∩ B = ∅`.
    pub fn in_left_factor(&self, w: &[Letter]) -> bool {
        terminal_alphabet(self.graph, w).is_disjoint_from(self.b)
    }

    /// Brute-force membership in `G(L)`, with the default length bound.
    pub fn in_generating_set(&self, w: &[Letter]) -> Result<bool, OracleLimit> {
        self.in_generating_set_bounded(w, DEFAULT_ORACLE_BOUND)
    }

    /// Brute-force membership in `G(L)`: `φ(w)` must be a nonempty member
    /// of `L` and no representative may split into two nonempty words that
    /// are both in `L` (searched exhaustively over representatives × split
    /// points).
    pub fn in_generating_set_bounded(&self, w: &[Letter], bound: usize) -> Result<bool, OracleLimit> {
        if w.is_empty() || !self.in_left_factor(w) {
            // Splitting cannot help a word that is not in L⁺ to begin with,
            // but the length check still applies to keep answers uniform.
            if w.len() > bound {
                return Err(OracleLimit { length: w.len(), bound });
            }
            return Ok(false);
        }
        for rep in representatives_bounded(self.graph, w, bound)? {
            for split in 1..rep.len() {
                let (u, v) = rep.split_at(split);
                if self.in_left_factor(u) && self.in_left_factor(v) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The unique factorization `φ(w) = u · v` with `u ∈ L` and
    /// `v ∈ M(B,ϑ_B)`: letters of `B` are stripped from the terminal
    /// alphabet of the right end, least first, until none remains.
    pub fn factorize(&self, w: &[Letter]) -> (Trace, Trace) {
        let mut u = lex_normal_form(self.graph, w).into_letters();
        let mut v = VecDeque::new();
        loop {
            let terminal_b = terminal_alphabet(self.graph, &u).intersection(self.b);
            let Some(x) = terminal_b.least() else { break };
            // x is terminal: everything after its last occurrence commutes
            // with it, so removing that occurrence leaves a word whose trace
            // times x is φ(u).
            let pos = u.iter().rposition(|&y| y == x).unwrap();
            u.remove(pos);
            v.push_front(x);
        }
        let v: Vec<Letter> = v.into();
        (Trace::new(self.graph, &u), Trace::new(self.graph, &v))
    }
}
