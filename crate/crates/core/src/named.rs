//! Small named cubic graphs shipped as edge-list fixtures.

use crate::graph::{parse_edgelist, Graph};

pub const K4: &str = include_str!("../fixtures/k4.txt");
pub const K33: &str = include_str!("../fixtures/k33.txt");
pub const CUBE: &str = include_str!("../fixtures/cube.txt");
pub const PETERSEN: &str = include_str!("../fixtures/petersen.txt");
pub const HEAWOOD: &str = include_str!("../fixtures/heawood.txt");
pub const PAPPUS: &str = include_str!("../fixtures/pappus.txt");

/// `(name, edge-list text)` for every fixture.
pub const ALL: [(&str, &str); 6] = [
    ("k4", K4),
    ("k33", K33),
    ("cube", CUBE),
    ("petersen", PETERSEN),
    ("heawood", HEAWOOD),
    ("pappus", PAPPUS),
];

pub fn load(name: &str) -> Option<Graph> {
    ALL.iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_edgelist(text).expect("fixture parses"))
}
