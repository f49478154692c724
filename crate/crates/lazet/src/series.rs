//! Length-graded counting and the cross-validation built on it.
//!
//! The number of traces per length satisfies the clique-polynomial
//! recurrence `Σ_j (−1)^j c_j · m(n−j) = [n = 0]`; independently, traces can
//! be counted by length through any automaton accepting one word per trace.
//! [`left_factor_count_series`] insists both routes agree, and
//! [`verify_bisection`] checks the bisection identity
//! `m(n) = Σ_k l(k) · m_B(n−k)` together with the uniqueness of the
//! factorization, trace by trace, against brute-force enumeration.
//! All arithmetic is exact and overflow-checked.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::automaton::{Dfa, StateLabel};
use crate::commutation::{CommutationGraph, Subalphabet};
use crate::lazard::Bisection;
use crate::trace::{
    enumerate_traces_bounded, format_word, lex_normal_form, representatives_bounded,
    OracleLimit, Word, DEFAULT_ORACLE_BOUND,
};

/// Counts per word length, entry `n` for length `n`. Prints as
/// space-separated integers (`1 5 20`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountSeries {
    counts: Vec<u64>,
}

impl CountSeries {
    pub fn new(counts: Vec<u64>) -> CountSeries {
        CountSeries { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Number of entries (maximum length + 1).
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

impl core::ops::Index<usize> for CountSeries {
    type Output = u64;

    fn index(&self, n: usize) -> &u64 {
        &self.counts[n]
    }
}

impl fmt::Display for CountSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.counts.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Error from the counting routines.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesError {
    /// An exact count no longer fits in `u64` at this length.
    CountOverflow { length: usize },
    /// The two independent ways of counting the left factor disagree,
    /// which means one of the constructions is wrong.
    MethodMismatch { length: usize, via_convolution: u64, via_automaton: u64 },
    /// A brute-force step was asked to exceed its length bound.
    Oracle(OracleLimit),
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::CountOverflow { length } => {
                write!(f, "count at length {length} does not fit in 64 bits")
            }
            SeriesError::MethodMismatch { length, via_convolution, via_automaton } => write!(
                f,
                "left-factor counts disagree at length {length}: {via_convolution} by deconvolution, {via_automaton} by automaton"
            ),
            SeriesError::Oracle(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for SeriesError {}

impl From<OracleLimit> for SeriesError {
    fn from(e: OracleLimit) -> SeriesError {
        SeriesError::Oracle(e)
    }
}

fn to_u64(value: i128, length: usize) -> Result<u64, SeriesError> {
    u64::try_from(value).map_err(|_| SeriesError::CountOverflow { length })
}

fn checked_dot(
    a: &[i128],
    b: &[i128],
    length: usize,
) -> Result<i128, SeriesError> {
    let overflow = SeriesError::CountOverflow { length };
    a.iter()
        .zip(b.iter().rev())
        .try_fold(0i128, |acc, (&x, &y)| {
            acc.checked_add(x.checked_mul(y)?)
        })
        .ok_or(overflow)
}

fn trace_counts_i128(g: &CommutationGraph, max_length: usize) -> Result<Vec<i128>, SeriesError> {
    let coefficients = g.clique_polynomial().coefficients().to_vec();
    let mut m: Vec<i128> = Vec::with_capacity(max_length + 1);
    m.push(1);
    for n in 1..=max_length {
        let overflow = SeriesError::CountOverflow { length: n };
        // m(n) = Σ_{j ≥ 1} (−1)^{j+1} c_j m(n−j)
        let mut total = 0i128;
        for (j, &c) in coefficients.iter().enumerate().skip(1).take(n) {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            let term = i128::from(c).checked_mul(m[n - j]).ok_or(overflow)?;
            total = total.checked_add(sign * term).ok_or(overflow)?;
        }
        m.push(total);
    }
    Ok(m)
}

/// Number of traces of each length `0..=max_length`, from the
/// clique-polynomial recurrence `Σ_j (−1)^j c_j · m(n−j) = [n = 0]`.
pub fn trace_count_series(g: &CommutationGraph, max_length: usize) -> Result<CountSeries, SeriesError> {
    let m = trace_counts_i128(g, max_length)?;
    let counts = m
        .into_iter()
        .enumerate()
        .map(|(n, c)| to_u64(c, n))
        .collect::<Result<_, _>>()?;
    Ok(CountSeries::new(counts))
}

/// The complete DFA accepting exactly the lexicographic normal forms, so
/// that its word count per length equals the trace count.
///
/// A state is the set of letters whose appearance would now contradict
/// minimality: after reading `x`, the letters smaller than `x` that commute
/// with it become forbidden (they could be commuted left past `x`), and
/// previously forbidden letters stay forbidden while they commute with `x`.
/// Only the reachable sets are materialized; reading a forbidden letter
/// dies, every live state accepts.
pub fn normal_form_automaton(g: &CommutationGraph) -> Dfa<'_> {
    let mut index: BTreeMap<u64, usize> = BTreeMap::from([(0, 0)]);
    let mut order = alloc::vec![Subalphabet::EMPTY];
    let mut queue = VecDeque::from([Subalphabet::EMPTY]);
    let mut delta: Vec<Vec<Option<usize>>> = Vec::new();
    while let Some(forbidden) = queue.pop_front() {
        let mut row = Vec::with_capacity(g.letter_count());
        for x in g.letters() {
            if forbidden.contains(x) {
                row.push(None);
                continue;
            }
            // x itself is in neither set, so the target never contains x.
            let smaller = Subalphabet::from_mask((1u64 << x.index()) - 1);
            let target = smaller.union(forbidden).intersection(g.commuting_set(x));
            let next_id = index.len();
            let id = *index.entry(target.mask()).or_insert_with(|| {
                order.push(target);
                queue.push_back(target);
                next_id
            });
            row.push(Some(id));
        }
        delta.push(row);
    }
    let labels = order.iter().map(|&s| StateLabel::Subset(s)).collect();
    let finals = alloc::vec![true; order.len()];
    Dfa::from_partial(g, labels, 0, finals, delta)
}

/// Number of left-factor traces of each length `0..=max_length`, computed
/// two independent ways that must agree: deconvolution
/// `l(n) = m(n) − Σ_{k<n} l(k) · m_B(n−k)` against counting the automaton
/// intersection `normal forms ∩ Rep(L)`. Disagreement is an error, not a
/// result.
pub fn left_factor_count_series(bi: &Bisection, max_length: usize) -> Result<CountSeries, SeriesError> {
    let g = bi.graph();
    let m = trace_counts_i128(g, max_length)?;
    let m_b = trace_counts_i128(&g.restrict(bi.b()), max_length)?;
    let mut l: Vec<i128> = Vec::with_capacity(max_length + 1);
    for n in 0..=max_length {
        let rest = checked_dot(&l, &m_b[1..=n], n)?;
        let value = m[n]
            .checked_sub(rest)
            .ok_or(SeriesError::CountOverflow { length: n })?;
        l.push(value);
    }
    let via_automaton = normal_form_automaton(g)
        .intersect(&bi.left_factor_automaton())
        .count_by_length(max_length)?;
    let counts = l
        .into_iter()
        .enumerate()
        .map(|(n, c)| to_u64(c, n))
        .collect::<Result<Vec<u64>, _>>()?;
    for (n, (&c, &a)) in counts.iter().zip(via_automaton.counts()).enumerate() {
        if c != a {
            return Err(SeriesError::MethodMismatch {
                length: n,
                via_convolution: c,
                via_automaton: a,
            });
        }
    }
    Ok(CountSeries::new(counts))
}

/// One verified assertion of a [`VerifyReport`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerifyCheck {
    pub passed: bool,
    /// Human-readable statement of what was checked, with the
    /// counterexample when it failed.
    pub line: String,
}

/// Outcome of [`verify_bisection`]: one check per verified assertion.
/// Failures are content, not errors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerifyReport {
    checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    pub fn checks(&self) -> &[VerifyCheck] {
        &self.checks
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            writeln!(f, "{:<4} {}", if check.passed { "ok" } else { "FAIL" }, check.line)?;
        }
        Ok(())
    }
}

/// Checks the bisection against brute force with the default length bound.
pub fn verify_bisection(bi: &Bisection, max_length: usize) -> Result<VerifyReport, SeriesError> {
    verify_bisection_bounded(bi, max_length, DEFAULT_ORACLE_BOUND)
}

/// Checks, for every length `n ≤ max_length`:
///
/// 1. the counting identity `m(n) = Σ_k l(k) · m_B(n−k)`, with `l` taken
///    from the automaton intersection (so the identity genuinely tests the
///    construction rather than restating a definition), and
/// 2. by exhaustive enumeration, that every trace of length `n` splits in
///    exactly one way into a left-factor trace times a trace over `B`, and
///    that [`Bisection::factorize`] returns that split.
///
/// Both the enumeration and the per-trace split search go through the
/// brute-force routines, which must fit under `bound`.
pub fn verify_bisection_bounded(
    bi: &Bisection,
    max_length: usize,
    bound: usize,
) -> Result<VerifyReport, SeriesError> {
    if max_length > bound {
        return Err(OracleLimit { length: max_length, bound }.into());
    }
    let g = bi.graph();
    let m = trace_count_series(g, max_length)?;
    let m_b = trace_count_series(&g.restrict(bi.b()), max_length)?;
    let l = normal_form_automaton(g)
        .intersect(&bi.left_factor_automaton())
        .count_by_length(max_length)?;
    let mut checks = Vec::new();
    for n in 0..=max_length {
        let overflow = SeriesError::CountOverflow { length: n };
        let convolution = (0..=n)
            .try_fold(0u64, |acc, k| {
                acc.checked_add(l[k].checked_mul(m_b[n - k])?)
            })
            .ok_or(overflow)?;
        checks.push(VerifyCheck {
            passed: convolution == m[n],
            line: format!(
                "length {n}: trace count {} vs Σ l(k)·m_B({n}−k) = {convolution}",
                m[n]
            ),
        });
    }
    for n in 0..=max_length {
        let traces = enumerate_traces_bounded(g, n, bound)?;
        let total = traces.len();
        let mut failures: Vec<String> = Vec::new();
        for t in &traces {
            let mut splits: BTreeSet<(Word, Word)> = BTreeSet::new();
            for rep in representatives_bounded(g, t.word(), bound)? {
                for i in 0..=rep.len() {
                    let (u, v) = rep.split_at(i);
                    if bi.in_left_factor(u) && v.iter().all(|&x| bi.b().contains(x)) {
                        splits.insert((lex_normal_form(g, u), lex_normal_form(g, v)));
                    }
                }
            }
            let (u, v) = bi.factorize(t.word());
            let stripped = (u.word().clone(), v.word().clone());
            if splits.len() != 1 {
                failures.push(format!(
                    "trace {} admits {} factorizations",
                    format_word(g, t.word()),
                    splits.len()
                ));
            } else if !splits.contains(&stripped) {
                failures.push(format!(
                    "stripping factorizes {} as {}·{}, the exhaustive split disagrees",
                    format_word(g, t.word()),
                    format_word(g, &stripped.0),
                    format_word(g, &stripped.1)
                ));
            }
        }
        checks.push(VerifyCheck {
            passed: failures.is_empty(),
            line: match failures.first() {
                None => format!("length {n}: all {total} traces factor uniquely through L·M(B)"),
                Some(first) => format!(
                    "length {n}: {} of {total} traces break unique factorization; first: {first}",
                    failures.len()
                ),
            },
        });
    }
    Ok(VerifyReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{bull, random_graph};
    use crate::trace::parse_word;

    fn bisect<'g>(g: &'g CommutationGraph, b: &str) -> Bisection<'g> {
        Bisection::new(g, g.parse_subalphabet(b).unwrap())
    }

    #[test]
    fn trace_counts_of_bull_start_as_expected() {
        let g = bull();
        let m = trace_count_series(&g, 2).unwrap();
        assert_eq!(m.counts(), &[1, 5, 20]);
        assert_eq!(format!("{m}"), "1 5 20");
    }

    #[test]
    fn trace_counts_match_enumeration() {
        let g = bull();
        let m = trace_count_series(&g, 5).unwrap();
        for n in 0..=5 {
            let listed = crate::trace::enumerate_traces(&g, n).unwrap().len() as u64;
            assert_eq!(m[n], listed, "length {n}");
        }
    }

    #[test]
    fn free_and_fully_commuting_counts() {
        let free = CommutationGraph::new(["a", "b"], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(trace_count_series(&free, 5).unwrap().counts(), &[1, 2, 4, 8, 16, 32]);
        let both = CommutationGraph::new(["a", "b"], &[("a", "b")]).unwrap();
        assert_eq!(trace_count_series(&both, 5).unwrap().counts(), &[1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn counting_overflow_is_reported() {
        let names: Vec<String> = (0..64).map(|i| format!("x{i}")).collect();
        let g = CommutationGraph::new(names, &[] as &[(&str, &str)]).unwrap();
        // 64^11 > 2^64
        assert_eq!(
            trace_count_series(&g, 11),
            Err(SeriesError::CountOverflow { length: 11 })
        );
        assert_eq!(
            Dfa::universal(&g).count_by_length(11),
            Err(SeriesError::CountOverflow { length: 11 })
        );
        assert!(trace_count_series(&g, 10).is_ok());
    }

    #[test]
    fn normal_form_automaton_accepts_exactly_normal_forms() {
        let g = CommutationGraph::new(["a", "b"], &[("a", "b")]).unwrap();
        let d = normal_form_automaton(&g);
        assert!(d.accepts(&parse_word(&g, "ab").unwrap()));
        assert!(!d.accepts(&parse_word(&g, "ba").unwrap()));

        let g = bull();
        let d = normal_form_automaton(&g);
        for n in 0..=4 {
            for t in crate::trace::enumerate_traces(&g, n).unwrap() {
                for rep in crate::trace::representatives(&g, t.word()).unwrap() {
                    assert_eq!(d.accepts(&rep), &rep == t.word());
                }
            }
        }
    }

    #[test]
    fn normal_form_automaton_counts_traces() {
        for seed in 0..4 {
            let g = random_graph(seed, 5);
            let d = normal_form_automaton(&g);
            assert_eq!(
                d.count_by_length(7).unwrap(),
                trace_count_series(&g, 7).unwrap()
            );
        }
        let free = CommutationGraph::new(["a", "b", "c"], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(normal_form_automaton(&free).state_count(), 1);
    }

    #[test]
    fn left_factor_counts_on_bull() {
        let g = bull();
        let bi = bisect(&g, "a,b");
        let l = left_factor_count_series(&bi, 4).unwrap();
        // Third, fully independent route: enumerate the length-2 traces and
        // keep those whose terminal alphabet avoids {a,b}.
        let brute = crate::trace::enumerate_traces(&g, 2)
            .unwrap()
            .iter()
            .filter(|t| bi.in_left_factor(t.word()))
            .count() as u64;
        assert_eq!(brute, 11);
        assert_eq!(l.counts()[..3], [1, 3, 11]);
        // The subset automaton alone counts accepted words, not traces:
        // the traces cd and de contribute two representatives each.
        assert_eq!(bi.left_factor_automaton().count_by_length(2).unwrap()[2], 13);
    }

    #[test]
    fn left_factor_count_edge_subalphabets() {
        let g = bull();
        let all = left_factor_count_series(&bisect(&g, "a,b,c,d,e"), 4).unwrap();
        assert_eq!(all.counts(), &[1, 0, 0, 0, 0]);
        let none = left_factor_count_series(&bisect(&g, ""), 4).unwrap();
        assert_eq!(none, trace_count_series(&g, 4).unwrap());
    }

    #[test]
    fn free_monoid_bisection_counts() {
        let g = CommutationGraph::new(["a", "b"], &[] as &[(&str, &str)]).unwrap();
        let l = left_factor_count_series(&bisect(&g, "b"), 5).unwrap();
        assert_eq!(l.counts(), &[1, 1, 2, 4, 8, 16]);
    }

    #[test]
    fn verify_passes_on_bull() {
        let g = bull();
        let report = verify_bisection(&bisect(&g, "a,b"), 4).unwrap();
        assert!(report.passed(), "{report}");
        // One convolution check and one factorization check per length.
        assert_eq!(report.checks().len(), 10);
        assert!(report.checks().iter().all(|c| !c.line.is_empty()));
    }

    #[test]
    fn verify_passes_on_edge_subalphabets_and_free_graphs() {
        let g = bull();
        for b in ["", "a,b,c,d,e", "d"] {
            let report = verify_bisection(&bisect(&g, b), 3).unwrap();
            assert!(report.passed(), "B = {{{b}}}\n{report}");
        }
        let free = CommutationGraph::new(["a", "b"], &[] as &[(&str, &str)]).unwrap();
        let report = verify_bisection(&bisect(&free, "b"), 5).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn verify_respects_the_bound() {
        let g = bull();
        assert_eq!(
            verify_bisection(&bisect(&g, "a,b"), 13),
            Err(SeriesError::Oracle(OracleLimit { length: 13, bound: 12 }))
        );
    }

    #[test]
    fn error_messages_name_the_failure() {
        assert_eq!(
            format!("{}", SeriesError::CountOverflow { length: 9 }),
            "count at length 9 does not fit in 64 bits"
        );
        let e = SeriesError::MethodMismatch { length: 3, via_convolution: 7, via_automaton: 8 };
        assert_eq!(
            format!("{e}"),
            "left-factor counts disagree at length 3: 7 by deconvolution, 8 by automaton"
        );
    }
}
