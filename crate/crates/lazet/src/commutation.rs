//! Independence alphabets: an ordered alphabet `Σ` together with a
//! reflexive, symmetric commutation relation `ϑ`.
//!
//! The declaration order of the letters is the canonical total order used
//! everywhere else in the crate (normal forms, automaton state labels, DOT
//! output, tie-breaking). Letter sets are bit masks over that order, which
//! caps the alphabet at [`MAX_LETTERS`] letters.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// Largest supported alphabet: one bit per letter in a [`Subalphabet`] mask.
pub const MAX_LETTERS: usize = 64;

/// A letter of a [`CommutationGraph`], identified by its position in the
/// canonical order. Letters compare in that order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(u8);

impl Letter {
    pub(crate) fn from_index(index: usize) -> Letter {
        debug_assert!(index < MAX_LETTERS);
        Letter(index as u8)
    }

    /// Position of the letter in the canonical order of its graph.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of letters of one graph, stored as a bit mask.
///
/// The empty set is the `Default`. Sets compare like their masks, so the
/// ordering is only meaningful between sets over the same graph.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subalphabet(u64);

impl Subalphabet {
    /// The empty set.
    pub const EMPTY: Subalphabet = Subalphabet(0);

    /// The set containing exactly `x`.
    pub fn singleton(x: Letter) -> Subalphabet {
        Subalphabet(1 << x.index())
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Subalphabet {
        letters
            .into_iter()
            .fold(Subalphabet::EMPTY, Subalphabet::with)
    }

    pub fn contains(self, x: Letter) -> bool {
        self.0 & (1 << x.index()) != 0
    }

    /// This set plus `x`.
    #[must_use]
    pub fn with(self, x: Letter) -> Subalphabet {
        Subalphabet(self.0 | (1 << x.index()))
    }

    /// This set minus `x`.
    #[must_use]
    pub fn without(self, x: Letter) -> Subalphabet {
        Subalphabet(self.0 & !(1 << x.index()))
    }

    #[must_use]
    pub fn union(self, other: Subalphabet) -> Subalphabet {
        Subalphabet(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: Subalphabet) -> Subalphabet {
        Subalphabet(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: Subalphabet) -> Subalphabet {
        Subalphabet(self.0 & !other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subalphabet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint_from(self, other: Subalphabet) -> bool {
        self.0 & other.0 == 0
    }

    /// Number of letters in the set.
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Letters of the set in canonical order.
    pub fn iter(self) -> impl Iterator<Item = Letter> {
        let mut rest = self.0;
        core::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(Letter::from_index(i))
            }
        })
    }

    /// Least letter of the set, if any.
    pub fn least(self) -> Option<Letter> {
        if self.0 == 0 {
            None
        } else {
            Some(Letter::from_index(self.0.trailing_zeros() as usize))
        }
    }

    pub(crate) fn mask(self) -> u64 {
        self.0
    }

    pub(crate) fn from_mask(mask: u64) -> Subalphabet {
        Subalphabet(mask)
    }
}

impl fmt::Debug for Subalphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subalphabet({:#b})", self.0)
    }
}

/// Error raised while building a [`CommutationGraph`] from parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GraphError {
    /// A letter name was declared twice.
    DuplicateLetter(String),
    /// A commuting pair names a letter that was never declared.
    UnknownLetter(String),
    /// A letter name is empty or contains a character the text formats
    /// reserve (whitespace, `,`, `#`, `"`).
    BadLetterName(String),
    /// More than [`MAX_LETTERS`] letters were declared.
    TooManyLetters(usize),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::DuplicateLetter(name) => write!(f, "duplicate letter `{name}`"),
            GraphError::UnknownLetter(name) => write!(f, "unknown letter `{name}`"),
            GraphError::BadLetterName(name) => write!(f, "invalid letter name `{name}`"),
            GraphError::TooManyLetters(n) => {
                write!(f, "alphabet has {n} letters, the maximum is {MAX_LETTERS}")
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// An alphabet `Σ` with a reflexive symmetric commutation relation `ϑ`.
///
/// The relation is stored as one commuting set per letter, so symmetry and
/// reflexivity hold by construction. Values are immutable once built.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommutationGraph {
    names: Vec<String>,
    com: Vec<Subalphabet>,
}

impl CommutationGraph {
    /// Builds a graph from letter names (in canonical order) and a list of
    /// unordered commuting pairs. The reflexive-symmetric closure of the
    /// pairs is taken automatically; duplicate pairs are idempotent.
    pub fn new<I, S, P>(letters: I, commuting_pairs: &[(P, P)]) -> Result<CommutationGraph, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        P: AsRef<str>,
    {
        let names: Vec<String> = letters.into_iter().map(Into::into).collect();
        if names.len() > MAX_LETTERS {
            return Err(GraphError::TooManyLetters(names.len()));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(|c| c.is_whitespace() || ",#\"".contains(c)) {
                return Err(GraphError::BadLetterName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(GraphError::DuplicateLetter(name.clone()));
            }
        }
        // Reflexive base relation.
        let mut com: Vec<Subalphabet> = (0..names.len())
            .map(|i| Subalphabet::singleton(Letter::from_index(i)))
            .collect();
        let index_of = |name: &str| -> Result<usize, GraphError> {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| GraphError::UnknownLetter(name.to_owned()))
        };
        for (x, y) in commuting_pairs {
            let i = index_of(x.as_ref())?;
            let j = index_of(y.as_ref())?;
            com[i] = com[i].with(Letter::from_index(j));
            com[j] = com[j].with(Letter::from_index(i));
        }
        Ok(CommutationGraph { names, com })
    }

    /// Number of letters.
    pub fn letter_count(&self) -> usize {
        self.names.len()
    }

    /// All letters, in canonical order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len()).map(Letter::from_index)
    }

    /// The full alphabet as a set.
    pub fn full_set(&self) -> Subalphabet {
        Subalphabet::from_letters(self.letters())
    }

    /// Looks a letter up by name.
    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name).map(Letter::from_index)
    }

    /// Name of a letter.
    ///
    /// Panics if `x` is not a letter of this graph.
    pub fn name(&self, x: Letter) -> &str {
        &self.names[x.index()]
    }

    /// Whether `(x, y) ∈ ϑ`. Always true for `x = y`.
    pub fn commute(&self, x: Letter, y: Letter) -> bool {
        self.com[x.index()].contains(y)
    }

    /// `Com(x)`: the set of letters commuting with `x`, including `x` itself.
    pub fn commuting_set(&self, x: Letter) -> Subalphabet {
        self.com[x.index()]
    }

    pub(crate) fn contains_set(&self, set: Subalphabet) -> bool {
        let full = if self.names.len() == MAX_LETTERS {
            u64::MAX
        } else {
            (1u64 << self.names.len()) - 1
        };
        set.mask() & !full == 0
    }

    /// The induced graph over the subalphabet `b`, letter order inherited.
    ///
    /// Letters of the result are renumbered; use names to map across.
    /// Panics if `b` is not a subalphabet of this graph.
    pub fn restrict(&self, b: Subalphabet) -> CommutationGraph {
        assert!(self.contains_set(b), "subalphabet does not belong to this graph");
        let kept: Vec<Letter> = b.iter().collect();
        let names: Vec<String> = kept.iter().map(|&x| self.names[x.index()].clone()).collect();
        let com = kept
            .iter()
            .map(|&x| {
                Subalphabet::from_letters(
                    kept.iter()
                        .enumerate()
                        .filter(|&(_, &y)| self.commute(x, y))
                        .map(|(new, _)| Letter::from_index(new)),
                )
            })
            .collect();
        CommutationGraph { names, com }
    }

    /// All cliques of the commutation graph: subalphabets whose members
    /// pairwise commute, including the empty one.
    ///
    /// Cliques are found by extending partial cliques in letter order, so
    /// the output is sorted by mask.
    pub fn enumerate_cliques(&self) -> Vec<Clique> {
        let mut out = Vec::new();
        // candidates = letters that commute with every member so far
        fn extend(
            g: &CommutationGraph,
            members: Subalphabet,
            from: usize,
            out: &mut Vec<Clique>,
        ) {
            out.push(Clique { members });
            for i in from..g.letter_count() {
                let x = Letter::from_index(i);
                if members.is_subset_of(g.commuting_set(x)) {
                    extend(g, members.with(x), i + 1, out);
                }
            }
        }
        extend(self, Subalphabet::EMPTY, 0, &mut out);
        out.sort_by_key(|c| c.members.mask());
        out
    }

    /// Coefficients of the clique polynomial: `c_j` = number of cliques of
    /// cardinality `j`. The signed polynomial is `Σ_j (−1)^j c_j t^j`.
    pub fn clique_polynomial(&self) -> CliquePolynomial {
        let cliques = self.enumerate_cliques();
        let degree = cliques.iter().map(|c| c.members.len()).max().unwrap_or(0);
        let mut coefficients = alloc::vec![0u64; degree + 1];
        for c in &cliques {
            coefficients[c.members.len()] += 1;
        }
        CliquePolynomial { coefficients }
    }

    /// Parses a comma-separated list of letter names into a set.
    /// The empty string denotes the empty set.
    pub fn parse_subalphabet(&self, s: &str) -> Result<Subalphabet, GraphError> {
        let mut set = Subalphabet::EMPTY;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let x = self
                .letter(part)
                .ok_or_else(|| GraphError::UnknownLetter(part.to_owned()))?;
            set = set.with(x);
        }
        Ok(set)
    }

    /// Renders a set as `∅` or `{a,b}`, names in canonical order.
    pub fn format_subalphabet(&self, set: Subalphabet) -> String {
        if set.is_empty() {
            return "∅".to_owned();
        }
        let mut s = String::from("{");
        for (k, x) in set.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            s.push_str(self.name(x));
        }
        s.push('}');
        s
    }
}

/// A commutative subalphabet: every pair of members commutes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Clique {
    members: Subalphabet,
}

impl Clique {
    pub fn members(&self) -> Subalphabet {
        self.members
    }
}

/// Unsigned coefficients `c_0..c_d` of the clique polynomial;
/// `c_j` counts the cliques of cardinality `j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CliquePolynomial {
    coefficients: Vec<u64>,
}

impl CliquePolynomial {
    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    /// Degree of the polynomial: the size of a maximum clique.
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }
}

/// Error raised while parsing the graph text format.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GraphParseError {
    /// The file has no header line (only blank lines and comments).
    MissingHeader,
    /// A pair line does not consist of exactly two names.
    PairSyntax { line: usize },
    /// A pair line references an undeclared letter.
    UnknownLetter { line: usize, name: String },
    /// The header is invalid (duplicate names, too many letters, ...).
    Header { line: usize, error: GraphError },
}

impl fmt::Display for GraphParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphParseError::MissingHeader => write!(f, "no letter line found"),
            GraphParseError::PairSyntax { line } => {
                write!(f, "line {line}: expected exactly two letter names")
            }
            GraphParseError::UnknownLetter { line, name } => {
                write!(f, "line {line}: unknown letter `{name}`")
            }
            GraphParseError::Header { line, error } => write!(f, "line {line}: {error}"),
        }
    }
}

impl core::error::Error for GraphParseError {}

/// The graph text format: the first non-blank, non-`#` line lists the
/// letter names in canonical order; every following such line holds two
/// names and declares one commuting pair. Reflexivity and symmetry are
/// implied, duplicate pairs are idempotent.
impl FromStr for CommutationGraph {
    type Err = GraphParseError;

    fn from_str(s: &str) -> Result<CommutationGraph, GraphParseError> {
        let mut content = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (header_line, header) = content.next().ok_or(GraphParseError::MissingHeader)?;
        let names: Vec<&str> = header.split_whitespace().collect();
        let mut graph = CommutationGraph::new(names.iter().copied(), &[] as &[(&str, &str)])
            .map_err(|error| GraphParseError::Header { line: header_line, error })?;
        for (line, text) in content {
            let mut parts = text.split_whitespace();
            let (Some(x), Some(y), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(GraphParseError::PairSyntax { line });
            };
            let lookup = |name: &str| {
                graph
                    .letter(name)
                    .ok_or_else(|| GraphParseError::UnknownLetter { line, name: name.to_owned() })
            };
            let (x, y) = (lookup(x)?, lookup(y)?);
            graph.com[x.index()] = graph.com[x.index()].with(y);
            graph.com[y.index()] = graph.com[y.index()].with(x);
        }
        Ok(graph)
    }
}
