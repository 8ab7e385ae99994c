//! Fixture diagrams shared by the benchmarks.

pub use tied_core;

use tied_core::{parse_diagram, TiedDiagram};

/// Named fixtures, roughly ordered by tree size.
pub const FIXTURES: &[(&str, &str)] = &[
    ("hopf_2tied", "braid 2 1 1\ncolors 1 2\n"),
    ("trefoil", "braid 2 1 1 1\ncolors 1\n"),
    ("chain_3tied", "braid 3 1 1 2 2\ncolors 1 2 3\n"),
    ("braid3_2tied", "braid 3 1 1 -2 -2 1 1\ncolors 1 2 2\n"),
    ("braid4_3tied", "braid 4 1 1 2 -2 3 3 1 -1\ncolors 1 2 3 3\n"),
];

pub fn fixture(text: &str) -> TiedDiagram {
    parse_diagram(text).unwrap_or_else(|e| panic!("{text:?}: {e}")).1
}
