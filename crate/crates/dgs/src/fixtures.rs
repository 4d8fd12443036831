//! Graphs compiled into the binary.

use dgs_core::graph::SignedGraph;

use crate::format::parse_matrix;

pub const EXAMPLE1: &str = include_str!("../fixtures/example1.mat");
pub const EXAMPLE2: &str = include_str!("../fixtures/example2.mat");
pub const EXAMPLE3: &str = include_str!("../fixtures/example3.mat");
pub const K2: &str = include_str!("../fixtures/k2.mat");
pub const C4: &str = include_str!("../fixtures/c4.mat");

/// `(name, matrix text)` for every embedded fixture.
pub const ALL: [(&str, &str); 5] =
    [("example1", EXAMPLE1), ("example2", EXAMPLE2), ("example3", EXAMPLE3), ("k2", K2), ("c4", C4)];

/// Looks a fixture up by name, with or without the `.mat` suffix.
pub fn text(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".mat").unwrap_or(name);
    ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn graph(name: &str) -> Option<SignedGraph> {
    text(name).map(|t| parse_matrix(t).expect("embedded fixtures parse"))
}
