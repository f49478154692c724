//! Words, trace equivalence, and normal forms.
//!
//! A trace is a congruence class of words modulo swapping adjacent commuting
//! letters; every class is represented here by its lexicographically least
//! member. The brute-force routines ([`representatives`],
//! [`enumerate_traces`]) are intentionally naive — they are the independent
//! oracles the automaton constructions are validated against — and therefore
//! refuse inputs past a small length bound.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::commutation::{CommutationGraph, GraphError, Letter, Subalphabet};

/// Default length cap for the brute-force routines. Congruence classes can
/// grow factorially, so the closure computations stay at desk scale.
pub const DEFAULT_ORACLE_BOUND: usize = 12;

/// A word over some graph's alphabet. Ordering is lexicographic in the
/// canonical letter order (shorter prefixes first).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl AsRef<[Letter]> for Word {
    fn as_ref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Word {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

/// An element of the trace monoid, held as its lexicographic normal form.
///
/// Two traces are equal exactly when their normal forms are letter-identical,
/// so equality, ordering, and hashing all come from the stored word. The
/// owning graph is passed to the operations rather than stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Trace {
    word: Word,
}

impl Trace {
    /// The empty trace (monoid identity).
    pub fn empty() -> Trace {
        Trace::default()
    }

    /// The trace of `w`: normalizes and wraps.
    pub fn new(g: &CommutationGraph, w: &[Letter]) -> Trace {
        Trace { word: lex_normal_form(g, w) }
    }

    /// The stored normal form.
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

/// A brute-force routine was asked to process a word longer than its bound.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OracleLimit {
    pub length: usize,
    pub bound: usize,
}

impl fmt::Display for OracleLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "length {} exceeds the brute-force bound {}", self.length, self.bound)
    }
}

impl core::error::Error for OracleLimit {}

fn check_word(g: &CommutationGraph, w: &[Letter]) {
    for &x in w {
        assert!(x.index() < g.letter_count(), "letter does not belong to the graph");
    }
}

/// `TA(w)`: the terminal alphabet of the trace of `w` — the letters that can
/// end some representative. Computed by the left-to-right recurrence
/// `TA(ε) = ∅`, `TA(ux) = (TA(u) ∪ {x}) ∩ Com(x)`, which is invariant under
/// swapping adjacent commuting letters.
pub fn terminal_alphabet(g: &CommutationGraph, w: &[Letter]) -> Subalphabet {
    check_word(g, w);
    w.iter().fold(Subalphabet::EMPTY, |ta, &x| {
        ta.with(x).intersection(g.commuting_set(x))
    })
}

/// The lexicographically least representative of the trace of `w`.
///
/// Greedy front-extraction: repeatedly emit the least letter whose first
/// occurrence can be commuted to the front of what remains, i.e. is preceded
/// only by letters it commutes with.
pub fn lex_normal_form(g: &CommutationGraph, w: &[Letter]) -> Word {
    check_word(g, w);
    let mut rest = w.to_vec();
    let mut out = Vec::with_capacity(w.len());
    while !rest.is_empty() {
        let mut best: Option<(Letter, usize)> = None;
        let mut seen = Subalphabet::EMPTY;
        for (i, &x) in rest.iter().enumerate() {
            if !seen.contains(x)
                && seen.is_subset_of(g.commuting_set(x))
                && best.is_none_or(|(b, _)| x < b)
            {
                best = Some((x, i));
            }
            seen = seen.with(x);
        }
        // The leftmost letter is always movable, so `best` is set.
        let (x, i) = best.unwrap();
        out.push(x);
        rest.remove(i);
    }
    Word(out)
}

/// Whether `w1` and `w2` are congruent, i.e. denote the same trace.
pub fn equivalent(g: &CommutationGraph, w1: &[Letter], w2: &[Letter]) -> bool {
    lex_normal_form(g, w1) == lex_normal_form(g, w2)
}

/// The full congruence class of `w`, with the default length bound.
pub fn representatives(g: &CommutationGraph, w: &[Letter]) -> Result<BTreeSet<Word>, OracleLimit> {
    representatives_bounded(g, w, DEFAULT_ORACLE_BOUND)
}

/// The full congruence class of `w`: the closure of `w` under swapping
/// adjacent commuting letters, by breadth-first search.
pub fn representatives_bounded(
    g: &CommutationGraph,
    w: &[Letter],
    bound: usize,
) -> Result<BTreeSet<Word>, OracleLimit> {
    check_word(g, w);
    if w.len() > bound {
        return Err(OracleLimit { length: w.len(), bound });
    }
    let mut class = BTreeSet::new();
    class.insert(Word(w.to_vec()));
    let mut queue: VecDeque<Vec<Letter>> = VecDeque::new();
    queue.push_back(w.to_vec());
    while let Some(u) = queue.pop_front() {
        for i in 1..u.len() {
            let (x, y) = (u[i - 1], u[i]);
            if x != y && g.commute(x, y) {
                let mut v = u.clone();
                v.swap(i - 1, i);
                if class.insert(Word(v.clone())) {
                    queue.push_back(v);
                }
            }
        }
    }
    Ok(class)
}

/// Monoid product of two traces; the result is in normal form.
pub fn concat(g: &CommutationGraph, t1: &Trace, t2: &Trace) -> Trace {
    let mut w = t1.word().to_vec();
    w.extend_from_slice(t2.word());
    Trace::new(g, &w)
}

/// All traces of length exactly `n`, with the default length bound.
pub fn enumerate_traces(g: &CommutationGraph, n: usize) -> Result<Vec<Trace>, OracleLimit> {
    enumerate_traces_bounded(g, n, DEFAULT_ORACLE_BOUND)
}

/// Whether appending `x` to the normal form `w` yields another normal form.
///
/// Scanning right to left through the suffix of letters commuting with `x`,
/// none may exceed `x` — otherwise `x` could be commuted left past a larger
/// letter, producing a smaller representative. Since `w` itself is minimal,
/// only pairs ending at `x` need checking.
fn extends_normal_form(g: &CommutationGraph, w: &[Letter], x: Letter) -> bool {
    for &y in w.iter().rev() {
        if !g.commute(x, y) {
            return true;
        }
        if x < y {
            return false;
        }
    }
    true
}

/// All traces of length exactly `n`, one per congruence class, in
/// lexicographic order of normal forms.
///
/// Depth-first extension of normal forms: the language of normal forms is
/// prefix-closed, so a prefix that cannot stay minimal is pruned.
pub fn enumerate_traces_bounded(
    g: &CommutationGraph,
    n: usize,
    bound: usize,
) -> Result<Vec<Trace>, OracleLimit> {
    if n > bound {
        return Err(OracleLimit { length: n, bound });
    }
    fn extend(g: &CommutationGraph, prefix: &mut Vec<Letter>, n: usize, out: &mut Vec<Trace>) {
        if prefix.len() == n {
            out.push(Trace { word: Word(prefix.clone()) });
            return;
        }
        for x in g.letters() {
            if extends_normal_form(g, prefix, x) {
                prefix.push(x);
                extend(g, prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(g, &mut Vec::with_capacity(n), n, &mut out);
    Ok(out)
}

/// Parses a word from text. The empty string and `ε` denote the empty word.
/// When every letter name is a single character the names are concatenated
/// (`bdc`); otherwise, or whenever a comma appears, names are comma-separated.
pub fn parse_word(g: &CommutationGraph, s: &str) -> Result<Word, GraphError> {
    let s = s.trim();
    if s.is_empty() || s == "ε" {
        return Ok(Word::default());
    }
    let lookup = |name: &str| {
        g.letter(name)
            .ok_or_else(|| GraphError::UnknownLetter(name.into()))
    };
    if s.contains(',') {
        s.split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(lookup)
            .collect()
    } else if g.letters().all(|x| g.name(x).chars().count() == 1) {
        s.chars().map(|c| lookup(&c.to_string())).collect()
    } else {
        Ok(Word(alloc::vec![lookup(s)?]))
    }
}

/// Renders a word as text, inverse to [`parse_word`]. The empty word prints
/// as `ε`.
pub fn format_word(g: &CommutationGraph, w: &[Letter]) -> String {
    check_word(g, w);
    if w.is_empty() {
        return "ε".into();
    }
    let single = g.letters().all(|x| g.name(x).chars().count() == 1);
    let mut s = String::new();
    for (k, &x) in w.iter().enumerate() {
        if k > 0 && !single {
            s.push(',');
        }
        s.push_str(g.name(x));
    }
    s
}
