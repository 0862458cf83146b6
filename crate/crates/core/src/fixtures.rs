//! Small named trees used throughout the test suites and CLI examples.

use crate::tree::Tree;

/// Three-vertex tree with edges a..f: u-(c,b,a), v-(c,d,e,f), w-(d).
/// Interior edges c (between u and v) and d (between v and w); legs in
/// order (f, b, e, a).
pub fn figure3() -> Tree {
    Tree::new(
        "abcdef".chars().map(|c| c.to_string()),
        [
            ("u".to_string(), vec!["c".into(), "b".into(), "a".into()]),
            ("v".to_string(), vec!["c".into(), "d".into(), "e".into(), "f".into()]),
            ("w".to_string(), vec!["d".into()]),
        ],
        ["f".into(), "b".into(), "e".into(), "a".into()],
    )
    .unwrap()
}

/// Two-vertex tree with four legs: u-(a, b, m), w-(m, c, d), legs (a, b, c, d).
/// Rooting it at each of its four legs gives four pairwise distinct rooted trees.
pub fn figure5() -> Tree {
    Tree::new(
        ["a", "b", "c", "d", "m"].map(String::from),
        [
            ("u".to_string(), vec!["a".into(), "b".into(), "m".into()]),
            ("w".to_string(), vec!["m".into(), "c".into(), "d".into()]),
        ],
        ["a".into(), "b".into(), "c".into(), "d".into()],
    )
    .unwrap()
}
