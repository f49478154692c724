//! Byte-exact DOT output, frozen under `tests/golden/`.
//!
//! Run with `UPDATE_GOLDEN=1` to rewrite the files after an intentional
//! format change, then review the diff.

mod common;

use std::fs;
use std::path::PathBuf;

use common::*;
use lazet::Bisection;

fn assert_golden(name: &str, actual: &str) {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, actual).unwrap();
    }
    let expected = fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing {name}; regenerate with UPDATE_GOLDEN=1"));
    assert_eq!(actual, expected, "{name} is stale; regenerate with UPDATE_GOLDEN=1 and review");
}

#[test]
fn left_factor_dot_is_stable() {
    let g = bull();
    let bi = Bisection::new(&g, g.parse_subalphabet("a,b").unwrap());
    assert_golden("bull_left.dot", &bi.left_factor_automaton().to_dot());
}

#[test]
fn generating_set_dot_is_stable() {
    let g = bull();
    let bi = Bisection::new(&g, g.parse_subalphabet("a,b").unwrap());
    assert_golden("bull_gen.dot", &bi.generating_set_automaton().to_dot());
}
