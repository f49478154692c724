//! Command-line front end: load a commutation graph from a file, then build,
//! export, query, count, or verify the associated automata.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a counterexample,
//! 2 on usage or input errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lazet::trace::{format_word, parse_word};
use lazet::{
    left_factor_count_series, normal_form_automaton, tn_automaton, trace_count_series,
    verify_bisection_bounded, Bisection, CommutationGraph, Dfa, Letter, SeriesError,
    DEFAULT_ORACLE_BOUND,
};

#[derive(Parser)]
#[command(name = "lazet", version, about = "Trace monoids and their Lazard bisection automata")]
struct Cli {
    /// Commutation graph file: a line of letter names, then one commuting
    /// pair per line.
    #[arg(long, value_name = "PATH")]
    graph: PathBuf,
    #[command(subcommand)]
    command: Command,
}

/// Which automaton to build.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// Two-state automaton for one eliminated letter (requires --letter).
    Tnb,
    /// Left-factor automaton over the eliminated subalphabet (requires --sub).
    Left,
    /// Generating-set automaton over the eliminated subalphabet (requires --sub).
    Gen,
    /// Lexicographic normal-form automaton for the whole monoid.
    Nf,
}

#[derive(Subcommand)]
enum Command {
    /// Print the graph: letters, commuting pairs, cliques, clique polynomial.
    Show,
    /// Print an automaton's states and transitions.
    Automaton {
        kind: Kind,
        #[arg(long, value_name = "LETTERS")]
        sub: Option<String>,
        #[arg(long, value_name = "X")]
        letter: Option<String>,
    },
    /// Test whether an automaton accepts a word.
    Member {
        kind: Kind,
        #[arg(long, value_name = "LETTERS")]
        sub: Option<String>,
        #[arg(long, value_name = "X")]
        letter: Option<String>,
        #[arg(long, value_name = "W")]
        word: String,
    },
    /// Split a trace into its left-factor part and its part over --sub.
    Factorize {
        #[arg(long, value_name = "LETTERS")]
        sub: String,
        #[arg(long, value_name = "W")]
        word: String,
    },
    /// Count traces by length: all of them (nf), those of the left factor
    /// (left), of the generating set (gen), or those avoiding one terminal
    /// letter (tnb).
    Count {
        kind: Kind,
        #[arg(long, value_name = "LETTERS")]
        sub: Option<String>,
        #[arg(long, value_name = "X")]
        letter: Option<String>,
        #[arg(long, value_name = "N")]
        max_length: usize,
    },
    /// Check the bisection for --sub against brute-force oracles up to
    /// --max-length, printing one line per check.
    Verify {
        #[arg(long, value_name = "LETTERS")]
        sub: String,
        #[arg(long, value_name = "N")]
        max_length: usize,
        /// Refuse brute-force enumeration beyond this word length.
        #[arg(long, value_name = "N", default_value_t = DEFAULT_ORACLE_BOUND)]
        oracle_bound: usize,
    },
    /// Write an automaton in Graphviz DOT format.
    Dot {
        kind: Kind,
        #[arg(long, value_name = "LETTERS")]
        sub: Option<String>,
        #[arg(long, value_name = "X")]
        letter: Option<String>,
        /// Output file; stdout if omitted.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let g = load_graph(&cli.graph)?;
    match &cli.command {
        Command::Show => show(&g),
        Command::Automaton { kind, sub, letter } => {
            let d = build_automaton(&g, *kind, sub, letter)?;
            print_automaton(&g, &d);
        }
        Command::Member { kind, sub, letter, word } => {
            let d = build_automaton(&g, *kind, sub, letter)?;
            let w = parse_word(&g, word).map_err(|e| e.to_string())?;
            println!("{}", d.accepts(&w));
        }
        Command::Factorize { sub, word } => {
            let bi = bisection(&g, sub)?;
            let w = parse_word(&g, word).map_err(|e| e.to_string())?;
            let (u, v) = bi.factorize(&w);
            println!("{} {}", format_word(&g, u.word()), format_word(&g, v.word()));
        }
        Command::Count { kind, sub, letter, max_length } => {
            let series = match kind {
                Kind::Nf => {
                    reject_automaton_args(*kind, sub, letter)?;
                    trace_count_series(&g, *max_length)
                }
                Kind::Left => left_factor_count_series(&bisection(&g, need_sub(sub)?)?, *max_length),
                _ => {
                    let d = build_automaton(&g, *kind, sub, letter)?;
                    normal_form_automaton(&g).intersect(&d).count_by_length(*max_length)
                }
            }
            .map_err(|e| e.to_string())?;
            println!("{series}");
        }
        Command::Verify { sub, max_length, oracle_bound } => {
            let bi = bisection(&g, sub)?;
            return match verify_bisection_bounded(&bi, *max_length, *oracle_bound) {
                Ok(report) => {
                    print!("{report}");
                    if report.passed() {
                        println!("PASS");
                        Ok(ExitCode::SUCCESS)
                    } else {
                        println!("FAIL");
                        Ok(ExitCode::from(1))
                    }
                }
                // A method disagreement is itself a counterexample.
                Err(e @ SeriesError::MethodMismatch { .. }) => {
                    println!("FAIL {e}");
                    Ok(ExitCode::from(1))
                }
                Err(e) => Err(e.to_string()),
            };
        }
        Command::Dot { kind, sub, letter, out } => {
            let d = build_automaton(&g, *kind, sub, letter)?;
            let text = d.to_dot();
            match out {
                Some(path) => fs::write(path, text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => print!("{text}"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn load_graph(path: &PathBuf) -> Result<CommutationGraph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    text.parse().map_err(|e| format!("{}: {e}", path.display()))
}

fn bisection<'g>(g: &'g CommutationGraph, sub: &str) -> Result<Bisection<'g>, String> {
    let b = g.parse_subalphabet(sub).map_err(|e| e.to_string())?;
    Ok(Bisection::new(g, b))
}

fn need_sub(sub: &Option<String>) -> Result<&str, String> {
    sub.as_deref().ok_or_else(|| "this kind needs --sub".to_owned())
}

fn reject_automaton_args(kind: Kind, sub: &Option<String>, letter: &Option<String>) -> Result<(), String> {
    let name = |k| <Kind as ValueEnum>::to_possible_value(k).unwrap().get_name().to_owned();
    if sub.is_some() && kind != Kind::Left && kind != Kind::Gen {
        return Err(format!("--sub does not apply to kind '{}'", name(&kind)));
    }
    if letter.is_some() && kind != Kind::Tnb {
        return Err(format!("--letter does not apply to kind '{}'", name(&kind)));
    }
    Ok(())
}

fn build_automaton<'g>(
    g: &'g CommutationGraph,
    kind: Kind,
    sub: &Option<String>,
    letter: &Option<String>,
) -> Result<Dfa<'g>, String> {
    reject_automaton_args(kind, sub, letter)?;
    match kind {
        Kind::Tnb => {
            let name = letter.as_deref().ok_or("kind 'tnb' needs --letter")?;
            let x: Letter = g.letter(name).ok_or_else(|| format!("unknown letter '{name}'"))?;
            Ok(tn_automaton(g, x))
        }
        Kind::Left => Ok(bisection(g, need_sub(sub)?)?.left_factor_automaton()),
        Kind::Gen => Ok(bisection(g, need_sub(sub)?)?.generating_set_automaton()),
        Kind::Nf => Ok(normal_form_automaton(g)),
    }
}

fn show(g: &CommutationGraph) {
    let names: Vec<&str> = g.letters().map(|x| g.name(x)).collect();
    println!("letters: {}", names.join(" "));
    for x in g.letters() {
        for y in g.letters().filter(|&y| x < y && g.commute(x, y)) {
            println!("pair: {} {}", g.name(x), g.name(y));
        }
    }
    for clique in g.enumerate_cliques() {
        println!("clique: {}", g.format_subalphabet(clique.members()));
    }
    let coefficients: Vec<String> =
        g.clique_polynomial().coefficients().iter().map(u64::to_string).collect();
    println!("clique polynomial: {}", coefficients.join(" "));
}

fn print_automaton(g: &CommutationGraph, d: &Dfa) {
    println!("states: {}", d.state_count());
    println!("initial: {}", d.initial());
    let finals: Vec<String> =
        (0..d.state_count()).filter(|&q| d.is_final(q)).map(|q| q.to_string()).collect();
    println!("finals: {}", finals.join(" "));
    for q in 0..d.state_count() {
        print!("{q}: {}", d.label(q).display(g));
        for x in g.letters() {
            print!(" {}→{}", g.name(x), d.next(q, x));
        }
        println!();
    }
}
