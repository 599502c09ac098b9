//! The shipped web corpus, embedded at compile time.

use crate::webs::Web;

const FILES: [(&str, &str); 8] = [
    ("unknot", include_str!("../../../corpus/unknot.json")),
    ("theta", include_str!("../../../corpus/theta.json")),
    ("handcuffs", include_str!("../../../corpus/handcuffs.json")),
    ("k4", include_str!("../../../corpus/k4.json")),
    ("cube", include_str!("../../../corpus/cube.json")),
    ("petersen", include_str!("../../../corpus/petersen.json")),
    ("dodecahedron", include_str!("../../../corpus/dodecahedron.json")),
    ("two_theta", include_str!("../../../corpus/two_theta.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Parses a shipped web; panics on unknown names.
pub fn web(name: &str) -> Web {
    let text = source(name).unwrap_or_else(|| panic!("no corpus web named `{name}`"));
    Web::from_json(text).unwrap_or_else(|e| panic!("corpus web `{name}`: {e}"))
}

pub fn webs() -> Vec<(&'static str, Web)> {
    names().map(|n| (n, web(n))).collect()
}
