//! Tait colorings, counted directly and through even 1-sets.

use rustworkx_core::petgraph::graph::UnGraph;
use rustworkx_core::planar::is_planar;
use serde::Serialize;

use super::matchings::{complement_cycles, enumerate_one_sets, is_even};
use super::{EdgeKind, Web};

/// Number of 3-edge-colorings with distinct colors at every vertex.
///
/// Backtracks over the non-circle edges, always coloring next the edge
/// whose endpoints already exclude the most colors.
pub fn count_tait_backtracking(web: &Web) -> u128 {
    if web.num_loops() > 0 {
        return 0;
    }
    let ends: Vec<(usize, usize)> = web
        .edges()
        .iter()
        .filter_map(|e| match e.kind {
            EdgeKind::Regular(a, b) => Some((a, b)),
            _ => None,
        })
        .collect();
    let mut used = vec![0u8; web.num_vertices()];
    let mut done = vec![false; ends.len()];
    let count = color_rec(&ends, &mut used, &mut done, ends.len());
    count * 3u128.pow(web.num_circles() as u32)
}

fn color_rec(ends: &[(usize, usize)], used: &mut [u8], done: &mut [bool], left: usize) -> u128 {
    if left == 0 {
        return 1;
    }
    let (next, _) = (0..ends.len())
        .filter(|&e| !done[e])
        .map(|e| (e, (used[ends[e].0] | used[ends[e].1]).count_ones()))
        .max_by_key(|&(e, c)| (c, std::cmp::Reverse(e)))
        .expect("an uncolored edge remains");
    let (a, b) = ends[next];
    let free = !(used[a] | used[b]) & 0b111;
    if free == 0 {
        return 0;
    }
    done[next] = true;
    let mut total = 0;
    for c in 0..3 {
        let bit = 1 << c;
        if free & bit != 0 {
            used[a] |= bit;
            used[b] |= bit;
            total += color_rec(ends, used, done, left - 1);
            used[a] &= !bit;
            used[b] &= !bit;
        }
    }
    done[next] = false;
    total
}

/// `Σ 2^{n(s)}` over the even 1-sets `s`.
pub fn count_tait_matching_formula(web: &Web) -> u128 {
    enumerate_one_sets(web)
        .iter()
        .filter(|s| is_even(web, s).expect("enumerated sets are 1-sets"))
        .map(|s| 1u128 << complement_cycles(web, s).expect("enumerated sets are 1-sets").count())
        .sum()
}

/// Planarity of the underlying simple graph (loops and parallel edges do
/// not affect planarity).
pub fn abstract_planarity(web: &Web) -> bool {
    let mut g = UnGraph::<(), ()>::with_capacity(web.num_vertices(), web.num_edges());
    let nodes: Vec<_> = (0..web.num_vertices()).map(|_| g.add_node(())).collect();
    for e in web.edges() {
        if let EdgeKind::Regular(a, b) = e.kind {
            if g.find_edge(nodes[a], nodes[b]).is_none() {
                g.add_edge(nodes[a], nodes[b], ());
            }
        }
    }
    is_planar(&g)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanarPrediction {
    /// Predicted rank of the deformed instanton homology.
    pub rank: u128,
    pub declared_planar: bool,
    pub abstract_planar: bool,
    pub warnings: Vec<String>,
}

/// Rank prediction for a planar web: the even-1-set count.
pub fn predict_planar_rank(web: &Web) -> PlanarPrediction {
    let abstract_planar = abstract_planarity(web);
    let mut warnings = Vec::new();
    if !abstract_planar {
        warnings.push("the abstract graph is non-planar; the prediction is heuristic".to_string());
    } else if !web.declared_planar() {
        warnings.push("web not declared planar; the prediction assumes a planar embedding".to_string());
    }
    PlanarPrediction {
        rank: count_tait_matching_formula(web),
        declared_planar: web.declared_planar(),
        abstract_planar,
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::webs::connected_cubic_multigraphs;

    /// Oracle: all `3^E` colorings checked vertex by vertex.
    fn brute_colorings(web: &Web) -> u128 {
        let m = web.num_edges() as u32;
        let mut count = 0;
        for code in 0..3u64.pow(m) {
            let color = |e: usize| code / 3u64.pow(e as u32) % 3;
            let ok = (0..web.num_vertices()).all(|v| {
                let inc = web.incident(v);
                let (a, b, c) = (color(inc[0]), color(inc[1]), color(inc[2]));
                a != b && b != c && a != c
            });
            count += ok as u128;
        }
        count
    }

    #[test]
    fn small_values() {
        assert_eq!(count_tait_backtracking(&corpus::web("unknot")), 3);
        assert_eq!(count_tait_backtracking(&corpus::web("theta")), 6);
        assert_eq!(count_tait_backtracking(&corpus::web("petersen")), 0);
        assert_eq!(count_tait_backtracking(&corpus::web("handcuffs")), 0);
        assert_eq!(count_tait_matching_formula(&corpus::web("theta")), 6);
        assert_eq!(count_tait_matching_formula(&corpus::web("unknot")), 3);
        assert_eq!(count_tait_matching_formula(&corpus::web("dodecahedron")), 60);
        assert_eq!(count_tait_backtracking(&corpus::web("dodecahedron")), 60);
    }

    #[test]
    fn backtracking_matches_brute_force() {
        for (name, web) in corpus::webs() {
            if web.num_edges() <= 12 {
                assert_eq!(count_tait_backtracking(&web), brute_colorings(&web), "{name}");
            }
        }
        for n in [2, 4, 6] {
            for web in connected_cubic_multigraphs(n) {
                assert_eq!(count_tait_backtracking(&web), brute_colorings(&web));
            }
        }
    }

    #[test]
    fn predictions() {
        let theta = predict_planar_rank(&corpus::web("theta"));
        assert_eq!(theta.rank, 6);
        assert!(theta.warnings.is_empty());
        assert_eq!(predict_planar_rank(&corpus::web("handcuffs")).rank, 0);
        assert_eq!(predict_planar_rank(&corpus::web("dodecahedron")).rank, 60);
        let p = predict_planar_rank(&corpus::web("petersen"));
        assert!(!p.abstract_planar);
        assert_eq!(p.warnings.len(), 1);
        assert!(abstract_planarity(&corpus::web("cube")));
        assert!(abstract_planarity(&corpus::web("k4")));
    }

    #[test]
    fn union_is_multiplicative() {
        let u = corpus::web("unknot");
        let t = corpus::web("theta");
        assert_eq!(count_tait_matching_formula(&u.disjoint_union(&u)), 9);
        assert_eq!(count_tait_matching_formula(&t.disjoint_union(&u)), 18);
        assert_eq!(count_tait_backtracking(&t.disjoint_union(&u)), 18);
        let e = Web::empty();
        assert_eq!(count_tait_matching_formula(&e), 1);
        assert_eq!(count_tait_backtracking(&t.disjoint_union(&e)), 6);
    }
}
