//! Webs as abstract cubic multigraphs: regular edges, loops and free
//! circles. Every vertex has incidence exactly 3, a loop counting twice.

mod generate;
mod matchings;
mod tait;

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use generate::connected_cubic_multigraphs;
pub use matchings::{complement_cycles, enumerate_one_sets, is_even, CycleComponent, CycleDecomposition};
pub use tait::{abstract_planarity, count_tait_backtracking, count_tait_matching_formula, predict_planar_rank, PlanarPrediction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Regular(usize, usize),
    Loop(usize),
    Circle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WebError {
    #[error("malformed web JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` refers to unknown vertex `{vertex}`")]
    UnknownVertex { edge: String, vertex: String },
    #[error("edge `{edge}`: {message}")]
    EdgeShape { edge: String, message: String },
    #[error("trivalence violated: {}", format_violations(.0))]
    Trivalence(Vec<(String, usize)>),
    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),
    #[error("not a 1-set: vertex `{vertex}` meets {count} of its edges")]
    NotAOneSet { vertex: String, count: usize },
}

fn format_violations(v: &[(String, usize)]) -> String {
    v.iter()
        .map(|(name, k)| format!("vertex `{name}` has incidence {k}"))
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Web {
    name: String,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    planar: bool,
    /// Edge indices at each vertex, a loop listed twice.
    incidence: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WebFile {
    #[serde(default)]
    name: String,
    vertices: Vec<String>,
    edges: Vec<EdgeRecord>,
    #[serde(default)]
    planar: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRecord {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ends: Option<[String; 2]>,
    #[serde(default, rename = "loop", skip_serializing_if = "Option::is_none")]
    loop_at: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    circle: Option<bool>,
}

/// Raw edge description by vertex names, for [`Web::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeSpec {
    Ends(String, String),
    Loop(String),
    Circle,
}

impl Web {
    /// Builds and validates a web.
    pub fn new(name: &str, vertices: Vec<String>, edges: Vec<(String, EdgeSpec)>, planar: bool) -> Result<Self, WebError> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(WebError::DuplicateVertex(v.clone()));
            }
        }
        let lookup = |edge: &str, v: &str| {
            index.get(v).copied().ok_or_else(|| WebError::UnknownVertex {
                edge: edge.to_string(),
                vertex: v.to_string(),
            })
        };
        let mut ids = HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (id, spec) in edges {
            if !ids.insert(id.clone()) {
                return Err(WebError::DuplicateEdge(id));
            }
            let kind = match &spec {
                EdgeSpec::Ends(a, b) => {
                    let (a, b) = (lookup(&id, a)?, lookup(&id, b)?);
                    if a == b {
                        return Err(WebError::EdgeShape {
                            edge: id,
                            message: "both ends at the same vertex; use \"loop\"".into(),
                        });
                    }
                    EdgeKind::Regular(a, b)
                }
                EdgeSpec::Loop(v) => EdgeKind::Loop(lookup(&id, v)?),
                EdgeSpec::Circle => EdgeKind::Circle,
            };
            out.push(Edge { id, kind });
        }
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (k, e) in out.iter().enumerate() {
            match e.kind {
                EdgeKind::Regular(a, b) => {
                    incidence[a].push(k);
                    incidence[b].push(k);
                }
                EdgeKind::Loop(v) => {
                    incidence[v].push(k);
                    incidence[v].push(k);
                }
                EdgeKind::Circle => {}
            }
        }
        let bad: Vec<(String, usize)> = incidence
            .iter()
            .enumerate()
            .filter(|(_, inc)| inc.len() != 3)
            .map(|(v, inc)| (vertices[v].clone(), inc.len()))
            .collect();
        if !bad.is_empty() {
            return Err(WebError::Trivalence(bad));
        }
        Ok(Self {
            name: name.to_string(),
            vertices,
            edges: out,
            planar,
            incidence,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, WebError> {
        let file: WebFile = serde_json::from_str(text).map_err(|e| WebError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let mut edges = Vec::with_capacity(file.edges.len());
        for rec in file.edges {
            let spec = match (rec.ends, rec.loop_at, rec.circle) {
                (Some([a, b]), None, None) => EdgeSpec::Ends(a, b),
                (None, Some(v), None) => EdgeSpec::Loop(v),
                (None, None, Some(true)) => EdgeSpec::Circle,
                (None, None, Some(false)) => {
                    return Err(WebError::EdgeShape {
                        edge: rec.id,
                        message: "\"circle\" must be true".into(),
                    })
                }
                _ => {
                    return Err(WebError::EdgeShape {
                        edge: rec.id,
                        message: "needs exactly one of \"ends\", \"loop\", \"circle\"".into(),
                    })
                }
            };
            edges.push((rec.id, spec));
        }
        Self::new(&file.name, file.vertices, edges, file.planar)
    }

    pub fn to_json(&self) -> String {
        let file = WebFile {
            name: self.name.clone(),
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| {
                    let mut rec = EdgeRecord {
                        id: e.id.clone(),
                        ends: None,
                        loop_at: None,
                        circle: None,
                    };
                    match e.kind {
                        EdgeKind::Regular(a, b) => rec.ends = Some([self.vertices[a].clone(), self.vertices[b].clone()]),
                        EdgeKind::Loop(v) => rec.loop_at = Some(self.vertices[v].clone()),
                        EdgeKind::Circle => rec.circle = Some(true),
                    }
                    rec
                })
                .collect(),
            planar: self.planar,
        };
        serde_json::to_string_pretty(&file).expect("web serializes")
    }

    pub fn empty() -> Self {
        Self {
            name: String::new(),
            vertices: Vec::new(),
            edges: Vec::new(),
            planar: true,
            incidence: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Whether the caller declared the web planar (embedding trusted).
    pub fn declared_planar(&self) -> bool {
        self.planar
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_circles(&self) -> usize {
        self.edges.iter().filter(|e| e.kind == EdgeKind::Circle).count()
    }

    pub fn num_loops(&self) -> usize {
        self.edges.iter().filter(|e| matches!(e.kind, EdgeKind::Loop(_))).count()
    }

    /// Edge indices at vertex `v`, a loop listed twice.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn edge_index(&self, id: &str) -> Result<usize, WebError> {
        self.edges
            .iter()
            .position(|e| e.id == id)
            .ok_or_else(|| WebError::UnknownEdge(id.to_string()))
    }

    /// Subset from edge ids.
    pub fn subset(&self, ids: &[&str]) -> Result<EdgeSubset, WebError> {
        ids.iter()
            .map(|id| self.edge_index(id))
            .collect::<Result<Vec<_>, _>>()
            .map(EdgeSubset::new)
    }

    /// Number of members of `s` at vertex `v`, with multiplicity.
    fn hits(&self, s: &EdgeSubset, v: usize) -> usize {
        self.incidence[v].iter().filter(|&&e| s.contains(e)).count()
    }

    pub fn is_k_set(&self, s: &EdgeSubset, k: usize) -> bool {
        (0..self.num_vertices()).all(|v| self.hits(s, v) == k)
    }

    pub fn is_one_set(&self, s: &EdgeSubset) -> bool {
        self.is_k_set(s, 1)
    }

    pub fn is_two_set(&self, s: &EdgeSubset) -> bool {
        self.is_k_set(s, 2)
    }

    pub(crate) fn check_one_set(&self, s: &EdgeSubset) -> Result<(), WebError> {
        for v in 0..self.num_vertices() {
            let count = self.hits(s, v);
            if count != 1 {
                return Err(WebError::NotAOneSet {
                    vertex: self.vertices[v].clone(),
                    count,
                });
            }
        }
        Ok(())
    }

    /// Disjoint union, with the second web's names prefixed to stay unique.
    pub fn disjoint_union(&self, other: &Web) -> Web {
        let fresh = |names: &[String], taken: &HashSet<&String>| -> Vec<String> {
            names
                .iter()
                .map(|n| {
                    let mut m = n.clone();
                    while taken.contains(&m) {
                        m = format!("{m}'");
                    }
                    m
                })
                .collect()
        };
        let vnames = fresh(&other.vertices, &self.vertices.iter().collect());
        let self_ids: Vec<String> = self.edges.iter().map(|e| e.id.clone()).collect();
        let other_ids: Vec<String> = other.edges.iter().map(|e| e.id.clone()).collect();
        let enames = fresh(&other_ids, &self_ids.iter().collect());
        let n = self.num_vertices();
        let mut vertices = self.vertices.clone();
        vertices.extend(vnames);
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().zip(enames).map(|(e, id)| Edge {
            id,
            kind: match e.kind {
                EdgeKind::Regular(a, b) => EdgeKind::Regular(a + n, b + n),
                EdgeKind::Loop(v) => EdgeKind::Loop(v + n),
                EdgeKind::Circle => EdgeKind::Circle,
            },
        }));
        let mut incidence = self.incidence.clone();
        let m = self.num_edges();
        incidence.extend(other.incidence.iter().map(|inc| inc.iter().map(|e| e + m).collect()));
        let name = match (self.name.is_empty(), other.name.is_empty()) {
            (true, _) => other.name.clone(),
            (_, true) => self.name.clone(),
            _ => format!("{} + {}", self.name, other.name),
        };
        Web {
            name,
            vertices,
            edges,
            planar: self.planar && other.planar,
            incidence,
        }
    }
}

/// A set of edges of a web, as sorted edge indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EdgeSubset {
    members: Vec<usize>,
}

impl EdgeSubset {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    pub fn from_mask(mask: u64) -> Self {
        Self::new((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.members.binary_search(&e).is_ok()
    }

    pub fn ids<'a>(&self, web: &'a Web) -> Vec<&'a str> {
        self.members.iter().map(|&e| web.edges[e].id.as_str()).collect()
    }

    pub fn display<'a>(&'a self, web: &'a Web) -> impl fmt::Display + 'a {
        struct D<'a>(&'a EdgeSubset, &'a Web);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{{{}}}", self.0.ids(self.1).join(", "))
            }
        }
        D(self, web)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn corpus_validates() {
        for (name, web) in corpus::webs() {
            assert_eq!(web.name(), name);
            let back = Web::from_json(&web.to_json()).unwrap();
            assert_eq!(back, web);
        }
    }

    #[test]
    fn single_loop_vertex_is_rejected() {
        let text = r#"{"name": "bad", "vertices": ["x"], "edges": [{"id": "l", "loop": "x"}], "planar": true}"#;
        assert_eq!(Web::from_json(text), Err(WebError::Trivalence(vec![("x".into(), 2)])));
    }

    #[test]
    fn malformed_inputs() {
        let err = Web::from_json(r#"{"vertices": [], "edges": [{"id": "e"}]}"#).unwrap_err();
        assert!(matches!(err, WebError::EdgeShape { .. }), "{err}");
        let err = Web::from_json(r#"{"vertices": [], "edges": [{"id": "e", "circle": true, "loop": "x"}]}"#).unwrap_err();
        assert!(matches!(err, WebError::EdgeShape { .. }), "{err}");
        let err = Web::from_json(r#"{"vertices": [], "edges": [], "colour": 1}"#).unwrap_err();
        assert!(matches!(err, WebError::Json { line: 1, .. }), "{err}");
        let err = Web::from_json("{\n  \"vertices\": [\"a\", \"a\"], \"edges\": []}").unwrap_err();
        assert_eq!(err, WebError::DuplicateVertex("a".into()));
        let err = Web::from_json(r#"{"vertices": ["a"], "edges": [{"id": "e", "ends": ["a", "z"]}]}"#).unwrap_err();
        assert!(matches!(err, WebError::UnknownVertex { .. }));
        let err = Web::from_json(r#"{"vertices": [], "edges": [{"id": "e", "circle": true}, {"id": "e", "circle": true}]}"#).unwrap_err();
        assert_eq!(err, WebError::DuplicateEdge("e".into()));
    }

    #[test]
    fn union_relabels() {
        let theta = corpus::web("theta");
        let u = theta.disjoint_union(&theta);
        assert_eq!(u.num_vertices(), 4);
        assert_eq!(u.num_edges(), 6);
        let names: HashSet<_> = u.vertices().iter().collect();
        assert_eq!(names.len(), 4);
        assert_eq!(Web::empty().disjoint_union(&theta), theta);
    }

    #[test]
    fn k_sets() {
        let theta = corpus::web("theta");
        assert!(theta.is_one_set(&theta.subset(&["e1"]).unwrap()));
        assert!(theta.is_two_set(&theta.subset(&["e2", "e3"]).unwrap()));
        assert!(!theta.is_one_set(&theta.subset(&["e1", "e2"]).unwrap()));
        assert!(theta.subset(&["nope"]).is_err());
    }
}
