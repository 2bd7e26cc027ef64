//! The seven bundled example instances.

use crate::instance::{InstanceFile, Loaded};

pub const NAMES: [&str; 7] = ["ex4_1", "ex4_2", "ex4_3", "ex4_4", "ex4_5", "ex4_6", "ex4_7"];

const SOURCES: [&str; 7] = [
    include_str!("../fixtures/ex4_1.json"),
    include_str!("../fixtures/ex4_2.json"),
    include_str!("../fixtures/ex4_3.json"),
    include_str!("../fixtures/ex4_4.json"),
    include_str!("../fixtures/ex4_5.json"),
    include_str!("../fixtures/ex4_6.json"),
    include_str!("../fixtures/ex4_7.json"),
];

pub fn source(name: &str) -> Option<&'static str> {
    NAMES.iter().position(|n| *n == name).map(|i| SOURCES[i])
}

/// Parsed and validated fixture; panics on a broken bundle.
pub fn load(name: &str) -> Loaded {
    let text = source(name).unwrap_or_else(|| panic!("no fixture named {name}"));
    InstanceFile::from_json(text)
        .and_then(|f| f.validate())
        .unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

pub fn all() -> Vec<(&'static str, Loaded)> {
    NAMES.iter().map(|n| (*n, load(n))).collect()
}
