//! Complete deterministic finite automata over a commutation graph's
//! alphabet.
//!
//! Everything here is boolean-language machinery: products, complement,
//! Moore minimization, language equivalence, the diamond ("complete
//! squares") saturation check, length-graded word counting, and DOT export.
//! All constructions are deterministic down to state numbering so that
//! DOT output is byte-stable.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::commutation::{CommutationGraph, Letter, Subalphabet};
use crate::series::{CountSeries, SeriesError};

/// Display label of a state. Labels carry no semantics for the language;
/// they echo the construction that produced the state.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StateLabel {
    /// A subalphabet, as in the subset constructions.
    Subset(Subalphabet),
    /// The accepting extra state of the generating-set construction.
    F,
    /// The dead extra state of the generating-set construction.
    H,
    /// A dead state added to complete a partial transition table.
    Sink,
    /// A product state.
    Pair(Box<StateLabel>, Box<StateLabel>),
}

impl StateLabel {
    /// Human-readable form, e.g. `∅`, `{a,b}`, `F`, `(∅,{b})`.
    pub fn display(&self, g: &CommutationGraph) -> String {
        match self {
            StateLabel::Subset(set) => g.format_subalphabet(*set),
            StateLabel::F => "F".to_owned(),
            StateLabel::H => "H".to_owned(),
            StateLabel::Sink => "sink".to_owned(),
            StateLabel::Pair(l, r) => format!("({},{})", l.display(g), r.display(g)),
        }
    }
}

/// A complete deterministic finite automaton over the alphabet of a
/// [`CommutationGraph`]. The transition table is total by invariant;
/// immutable once built.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dfa<'g> {
    graph: &'g CommutationGraph,
    labels: Vec<StateLabel>,
    initial: usize,
    finals: Vec<bool>,
    delta: Vec<Vec<usize>>,
}

impl<'g> Dfa<'g> {
    /// Builds an automaton from a complete transition table.
    ///
    /// Panics unless `labels`, `finals`, and `delta` all have one entry per
    /// state, every `delta` row has one target per letter, and every target
    /// and `initial` are valid state indices.
    pub fn new(
        graph: &'g CommutationGraph,
        labels: Vec<StateLabel>,
        initial: usize,
        finals: Vec<bool>,
        delta: Vec<Vec<usize>>,
    ) -> Dfa<'g> {
        let n = labels.len();
        assert!(n > 0, "an automaton needs at least one state");
        assert_eq!(finals.len(), n, "one finality flag per state");
        assert_eq!(delta.len(), n, "one transition row per state");
        assert!(initial < n, "initial state out of range");
        for row in &delta {
            assert_eq!(row.len(), graph.letter_count(), "one target per letter");
            assert!(row.iter().all(|&t| t < n), "transition target out of range");
        }
        Dfa { graph, labels, initial, finals, delta }
    }

    /// Builds an automaton from a partial transition table, completing it
    /// with a non-final [`StateLabel::Sink`] state if any entry is missing.
    pub fn from_partial(
        graph: &'g CommutationGraph,
        mut labels: Vec<StateLabel>,
        initial: usize,
        mut finals: Vec<bool>,
        delta: Vec<Vec<Option<usize>>>,
    ) -> Dfa<'g> {
        let missing = delta.iter().flatten().any(Option::is_none);
        let sink = labels.len();
        let mut delta: Vec<Vec<usize>> = delta
            .into_iter()
            .map(|row| row.into_iter().map(|t| t.unwrap_or(sink)).collect())
            .collect();
        if missing {
            labels.push(StateLabel::Sink);
            finals.push(false);
            delta.push(alloc::vec![sink; graph.letter_count()]);
        }
        Dfa::new(graph, labels, initial, finals, delta)
    }

    /// The one-state automaton accepting every word.
    pub fn universal(graph: &'g CommutationGraph) -> Dfa<'g> {
        Dfa::new(
            graph,
            alloc::vec![StateLabel::Subset(Subalphabet::EMPTY)],
            0,
            alloc::vec![true],
            alloc::vec![alloc::vec![0; graph.letter_count()]],
        )
    }

    pub fn graph(&self) -> &'g CommutationGraph {
        self.graph
    }

    pub fn state_count(&self) -> usize {
        self.labels.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn label(&self, state: usize) -> &StateLabel {
        &self.labels[state]
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals[state]
    }

    /// The transition target from `state` on `x`.
    pub fn next(&self, state: usize, x: Letter) -> usize {
        self.delta[state][x.index()]
    }

    /// State reached from the initial state by reading `w`.
    ///
    /// Panics if a letter of `w` is not in the automaton's alphabet.
    pub fn run(&self, w: &[Letter]) -> usize {
        w.iter().fold(self.initial, |s, &x| {
            assert!(x.index() < self.graph.letter_count(), "letter does not belong to the graph");
            self.delta[s][x.index()]
        })
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        self.finals[self.run(w)]
    }

    /// States reachable from the initial one, ascending.
    fn reachable(&self) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([self.initial]);
        let mut queue = VecDeque::from([self.initial]);
        while let Some(s) = queue.pop_front() {
            for &t in &self.delta[s] {
                if seen.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// Product automaton accepting the intersection of the two languages;
    /// only the part reachable from the initial pair is kept, in
    /// breadth-first discovery order, with [`StateLabel::Pair`] labels.
    ///
    /// Panics if the automata are over different graphs.
    pub fn intersect(&self, other: &Dfa<'g>) -> Dfa<'g> {
        assert!(self.graph == other.graph, "automata are over different graphs");
        let start = (self.initial, other.initial);
        let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::from([(start, 0)]);
        let mut order = alloc::vec![start];
        let mut queue = VecDeque::from([start]);
        let mut delta: Vec<Vec<usize>> = Vec::new();
        while let Some(pair) = queue.pop_front() {
            let mut row = Vec::with_capacity(self.graph.letter_count());
            for x in self.graph.letters() {
                let t = (self.next(pair.0, x), other.next(pair.1, x));
                let next_id = index.len();
                let id = *index.entry(t).or_insert_with(|| {
                    order.push(t);
                    queue.push_back(t);
                    next_id
                });
                row.push(id);
            }
            delta.push(row);
        }
        let labels = order
            .iter()
            .map(|&(s, t)| {
                StateLabel::Pair(Box::new(self.labels[s].clone()), Box::new(other.labels[t].clone()))
            })
            .collect();
        let finals = order.iter().map(|&(s, t)| self.finals[s] && other.finals[t]).collect();
        Dfa::new(self.graph, labels, 0, finals, delta)
    }

    /// Same states and transitions, finals toggled: accepts the complement
    /// language (the table is complete, so this is exact).
    pub fn complement(&self) -> Dfa<'g> {
        let mut d = self.clone();
        for f in &mut d.finals {
            *f = !*f;
        }
        d
    }

    /// The minimal complete automaton for the language: unreachable states
    /// dropped, then Moore partition refinement. State classes are numbered
    /// by the smallest original index they contain and keep that state's
    /// label, so the result is deterministic.
    pub fn minimize(&self) -> Dfa<'g> {
        let reachable: Vec<usize> = self.reachable().into_iter().collect();
        // class[s] = id of s's block, ids assigned by smallest member.
        let renumber = |key_of: &dyn Fn(usize) -> (usize, Vec<usize>)| -> BTreeMap<usize, usize> {
            let mut blocks: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
            let mut ids: Vec<(usize, usize)> = Vec::new(); // (min member, provisional id)
            let mut provisional: BTreeMap<usize, usize> = BTreeMap::new();
            for &s in &reachable {
                let next_id = blocks.len();
                let id = *blocks.entry(key_of(s)).or_insert_with(|| {
                    ids.push((s, next_id));
                    next_id
                });
                provisional.insert(s, id);
            }
            // Provisional ids are already in smallest-member order because
            // states are visited ascending.
            debug_assert!(ids.windows(2).all(|p| p[0].0 < p[1].0));
            provisional
        };
        let mut class = renumber(&|s| (usize::from(self.finals[s]), Vec::new()));
        loop {
            let next = renumber(&|s| {
                (class[&s], self.delta[s].iter().map(|t| class[t]).collect())
            });
            if next == class {
                break;
            }
            class = next;
        }
        let count = class.values().max().unwrap() + 1;
        // Representative of each block: its smallest original state.
        let mut rep = alloc::vec![usize::MAX; count];
        for &s in reachable.iter().rev() {
            rep[class[&s]] = s;
        }
        let labels = rep.iter().map(|&s| self.labels[s].clone()).collect();
        let finals = rep.iter().map(|&s| self.finals[s]).collect();
        let delta = rep
            .iter()
            .map(|&s| self.delta[s].iter().map(|t| class[t]).collect())
            .collect();
        Dfa::new(self.graph, labels, class[&self.initial], finals, delta)
    }

    /// Whether the two automata accept the same language, by synchronized
    /// product search for a pair of states that disagree on finality.
    ///
    /// Panics if the automata are over different graphs.
    pub fn equivalent_languages(&self, other: &Dfa<'g>) -> bool {
        assert!(self.graph == other.graph, "automata are over different graphs");
        let start = (self.initial, other.initial);
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some((s, t)) = queue.pop_front() {
            if self.finals[s] != other.finals[t] {
                return false;
            }
            for x in self.graph.letters() {
                let pair = (self.next(s, x), other.next(t, x));
                if seen.insert(pair) {
                    queue.push_back(pair);
                }
            }
        }
        true
    }

    /// Whether every reachable state closes the commuting squares: for each
    /// reachable `q` and each commuting pair `(x, y)`, reading `xy` and `yx`
    /// from `q` lands in the same state. This implies the accepted language
    /// is a union of congruence classes.
    pub fn is_diamond_closed(&self) -> bool {
        let letters: Vec<Letter> = self.graph.letters().collect();
        self.reachable().into_iter().all(|q| {
            letters.iter().enumerate().all(|(i, &x)| {
                letters[i + 1..].iter().all(|&y| {
                    !self.graph.commute(x, y)
                        || self.next(self.next(q, x), y) == self.next(self.next(q, y), x)
                })
            })
        })
    }

    /// Number of accepted words of each length `0..=max_length`, by the
    /// transfer-matrix recurrence on per-state word counts. Arithmetic is
    /// checked: growth past `u64` reports the offending length.
    pub fn count_by_length(&self, max_length: usize) -> Result<CountSeries, SeriesError> {
        let mut per_state = alloc::vec![0u64; self.state_count()];
        per_state[self.initial] = 1;
        let mut counts = Vec::with_capacity(max_length + 1);
        for n in 0.. {
            let accepted = self
                .finals
                .iter()
                .zip(&per_state)
                .filter(|(&f, _)| f)
                .try_fold(0u64, |acc, (_, &c)| acc.checked_add(c))
                .ok_or(SeriesError::CountOverflow { length: n })?;
            counts.push(accepted);
            if n == max_length {
                break;
            }
            let mut next = alloc::vec![0u64; self.state_count()];
            for (s, &c) in per_state.iter().enumerate() {
                for &t in &self.delta[s] {
                    next[t] = next[t]
                        .checked_add(c)
                        .ok_or(SeriesError::CountOverflow { length: n + 1 })?;
                }
            }
            per_state = next;
        }
        Ok(CountSeries::new(counts))
    }

    /// DOT digraph text: states in index order (`s0`, `s1`, …) labeled by
    /// their [`StateLabel`], the initial state marked by an arrow from a
    /// point node, finals double-circled, and parallel edges merged with
    /// comma-joined letter labels. Byte-stable for equal inputs.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n  start [shape=point];\n");
        for (s, label) in self.labels.iter().enumerate() {
            let shape = if self.finals[s] { ", shape=doublecircle" } else { "" };
            out.push_str(&format!("  s{s} [label=\"{}\"{shape}];\n", label.display(self.graph)));
        }
        out.push_str(&format!("  start -> s{};\n", self.initial));
        for s in 0..self.state_count() {
            // Group letters by target, groups ordered by their least letter.
            let mut groups: Vec<(usize, Vec<Letter>)> = Vec::new();
            for x in self.graph.letters() {
                let t = self.next(s, x);
                match groups.iter_mut().find(|(target, _)| *target == t) {
                    Some((_, letters)) => letters.push(x),
                    None => groups.push((t, alloc::vec![x])),
                }
            }
            for (t, letters) in groups {
                let label: Vec<&str> = letters.iter().map(|&x| self.graph.name(x)).collect();
                out.push_str(&format!("  s{s} -> s{t} [label=\"{}\"];\n", label.join(",")));
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{bull, random_graph};
    use crate::trace::{parse_word, representatives};

    fn w(g: &CommutationGraph, s: &str) -> crate::trace::Word {
        parse_word(g, s).unwrap()
    }

    /// The four-state diamond recognizing the congruence class {ab, ba}
    /// over two commuting letters, completed with a sink.
    fn diamond<'g>(g: &'g CommutationGraph) -> Dfa<'g> {
        let sub = |names: &str| StateLabel::Subset(g.parse_subalphabet(names).unwrap());
        Dfa::from_partial(
            g,
            alloc::vec![sub(""), sub("a"), sub("b"), sub("a,b")],
            0,
            alloc::vec![false, false, false, true],
            alloc::vec![
                alloc::vec![Some(1), Some(2)],
                alloc::vec![None, Some(3)],
                alloc::vec![Some(3), None],
                alloc::vec![None, None],
            ],
        )
    }

    fn two_commuting() -> CommutationGraph {
        CommutationGraph::new(["a", "b"], &[("a", "b")]).unwrap()
    }

    #[test]
    fn partial_table_gets_a_sink() {
        let g = two_commuting();
        let d = diamond(&g);
        assert_eq!(d.state_count(), 5);
        assert_eq!(d.label(4), &StateLabel::Sink);
        for x in g.letters() {
            assert_eq!(d.next(4, x), 4);
        }
    }

    #[test]
    fn diamond_accepts_exactly_the_class_of_ab() {
        let g = two_commuting();
        let d = diamond(&g);
        for (text, expect) in [("ab", true), ("ba", true), ("", false), ("a", false), ("aa", false), ("aba", false), ("bab", false), ("abb", false)] {
            let word = w(&g, text);
            assert_eq!(d.accepts(&word), expect, "word {text:?}");
        }
    }

    #[test]
    fn diamond_is_minimal_and_closed() {
        let g = two_commuting();
        let d = diamond(&g);
        let m = d.minimize();
        assert_eq!(m.state_count(), 5);
        assert!(d.equivalent_languages(&m));
        assert!(d.is_diamond_closed());
    }

    #[test]
    fn diamond_counts() {
        let g = two_commuting();
        let counts = diamond(&g).count_by_length(5).unwrap();
        assert_eq!(counts.counts(), &[0, 0, 2, 0, 0, 0]);
    }

    #[test]
    fn accepting_only_ab_is_not_closed() {
        let g = two_commuting();
        let d = Dfa::from_partial(
            &g,
            alloc::vec![StateLabel::Subset(Subalphabet::EMPTY); 3],
            0,
            alloc::vec![false, false, true],
            alloc::vec![
                alloc::vec![Some(1), None],
                alloc::vec![None, Some(2)],
                alloc::vec![None, None],
            ],
        );
        assert!(d.accepts(&w(&g, "ab")));
        assert!(!d.accepts(&w(&g, "ba")));
        assert!(!d.is_diamond_closed());
    }

    #[test]
    fn universal_counts_all_words() {
        let g = bull();
        let counts = Dfa::universal(&g).count_by_length(3).unwrap();
        assert_eq!(counts.counts(), &[1, 5, 25, 125]);
    }

    #[test]
    fn complement_involutes_and_flips() {
        let g = two_commuting();
        let d = diamond(&g);
        let c = d.complement();
        assert!(c.accepts(&w(&g, "a")));
        assert!(!c.accepts(&w(&g, "ab")));
        assert!(d.equivalent_languages(&c.complement()));
        assert!(!d.equivalent_languages(&c));

        let empty = Dfa::universal(&g).complement();
        assert_eq!(empty.count_by_length(4).unwrap().counts(), &[0, 0, 0, 0, 0]);
    }

    #[test]
    fn intersection_is_conjunction() {
        let g = bull();
        let d1 = {
            // words with an even number of a's
            let a = g.letter("a").unwrap().index();
            let mut rows = alloc::vec![alloc::vec![0; 5], alloc::vec![1; 5]];
            rows[0][a] = 1;
            rows[1][a] = 0;
            Dfa::new(
                &g,
                alloc::vec![StateLabel::Subset(Subalphabet::EMPTY); 2],
                0,
                alloc::vec![true, false],
                rows,
            )
        };
        let d2 = {
            // words of even length
            let rows = alloc::vec![alloc::vec![1; 5], alloc::vec![0; 5]];
            Dfa::new(
                &g,
                alloc::vec![StateLabel::Subset(Subalphabet::EMPTY); 2],
                0,
                alloc::vec![true, false],
                rows,
            )
        };
        let both = d1.intersect(&d2);
        for word in ["", "a", "aa", "ab", "ba", "bc", "aabb", "aba", "abab"] {
            let word = w(&g, word);
            assert_eq!(both.accepts(&word), d1.accepts(&word) && d2.accepts(&word));
        }
        assert!(d1.intersect(&d1).equivalent_languages(&d1));
    }

    #[test]
    fn intersection_with_empty_language_is_empty() {
        let g = bull();
        let d = Dfa::universal(&g);
        let empty = d.complement();
        assert!(d.intersect(&empty).equivalent_languages(&empty));
    }

    #[test]
    fn minimize_is_idempotent_and_language_preserving() {
        for seed in 0..5 {
            let g = random_graph(seed, 4);
            let d = crate::series::normal_form_automaton(&g);
            let m = d.minimize();
            assert!(m.state_count() <= d.state_count());
            assert_eq!(m.minimize().state_count(), m.state_count());
            assert!(d.equivalent_languages(&m));
            assert_eq!(
                d.count_by_length(6).unwrap(),
                m.count_by_length(6).unwrap()
            );
        }
    }

    #[test]
    fn minimize_merges_duplicate_states() {
        let g = two_commuting();
        // Two redundant copies of an all-accepting state.
        let d = Dfa::new(
            &g,
            alloc::vec![StateLabel::Subset(Subalphabet::EMPTY); 2],
            0,
            alloc::vec![true, true],
            alloc::vec![alloc::vec![1, 1], alloc::vec![0, 0]],
        );
        assert_eq!(d.minimize().state_count(), 1);
        assert!(d.equivalent_languages(&Dfa::universal(&g)));
    }

    #[test]
    fn diamond_closure_implies_saturation() {
        let g = bull();
        let d = crate::lazard::Bisection::new(&g, g.parse_subalphabet("a,b").unwrap())
            .left_factor_automaton();
        assert!(d.is_diamond_closed());
        for t in crate::trace::enumerate_traces(&g, 4).unwrap() {
            let expect = d.accepts(t.word());
            for rep in representatives(&g, t.word()).unwrap() {
                assert_eq!(d.accepts(&rep), expect);
            }
        }
    }

    #[test]
    fn dot_output_shape() {
        let g = two_commuting();
        let one = Dfa::new(
            &g,
            alloc::vec![StateLabel::Sink],
            0,
            alloc::vec![false],
            alloc::vec![alloc::vec![0, 0]],
        );
        assert_eq!(
            one.to_dot(),
            "digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n  start [shape=point];\n  s0 [label=\"sink\"];\n  start -> s0;\n  s0 -> s0 [label=\"a,b\"];\n}\n"
        );
        let d = diamond(&g);
        let dot = d.to_dot();
        assert_eq!(dot, d.to_dot());
        assert!(dot.contains("s3 [label=\"{a,b}\", shape=doublecircle];"));
        assert!(dot.contains("s1 -> s4 [label=\"a\"];"));
    }
}
