//! 1-sets (perfect matchings, loops excluded) and the cycles of their
//! complementary 2-sets.

use super::{EdgeKind, EdgeSubset, Web, WebError};

/// Every 1-set of `web`: each vertex-level perfect matching, combined with
/// every subset of the free circles.
pub fn enumerate_one_sets(web: &Web) -> Vec<EdgeSubset> {
    let mut matchings = Vec::new();
    let mut covered = vec![false; web.num_vertices()];
    let mut chosen = Vec::new();
    match_rec(web, &mut covered, &mut chosen, &mut matchings);
    let circles: Vec<usize> = (0..web.num_edges()).filter(|&e| web.edges[e].kind == EdgeKind::Circle).collect();
    let mut out = Vec::with_capacity(matchings.len() << circles.len());
    for m in &matchings {
        for mask in 0u64..1 << circles.len() {
            let mut members = m.clone();
            members.extend((0..circles.len()).filter(|i| mask >> i & 1 == 1).map(|i| circles[i]));
            out.push(EdgeSubset::new(members));
        }
    }
    out.sort();
    out
}

fn candidates(web: &Web, covered: &[bool], v: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &e in web.incident(v) {
        if let EdgeKind::Regular(a, b) = web.edges[e].kind {
            let w = if a == v { b } else { a };
            if !covered[w] {
                out.push((e, w));
            }
        }
    }
    out
}

fn match_rec(web: &Web, covered: &mut [bool], chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    // branch on the uncovered vertex with fewest options
    let mut best: Option<(usize, Vec<(usize, usize)>)> = None;
    for v in (0..covered.len()).filter(|&v| !covered[v]) {
        let c = candidates(web, covered, v);
        if best.as_ref().is_none_or(|(_, b)| c.len() < b.len()) {
            let done = c.is_empty();
            best = Some((v, c));
            if done {
                break;
            }
        }
    }
    let Some((v, options)) = best else {
        out.push(chosen.clone());
        return;
    };
    covered[v] = true;
    for (e, w) in options {
        covered[w] = true;
        chosen.push(e);
        match_rec(web, covered, chosen, out);
        chosen.pop();
        covered[w] = false;
    }
    covered[v] = false;
}

/// One component of a complementary 2-set: a cycle through `vertices`
/// along `edges` (in order), or a free circle with no vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleComponent {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl CycleComponent {
    pub fn is_free_circle(&self) -> bool {
        self.vertices.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub components: Vec<CycleComponent>,
}

impl CycleDecomposition {
    /// `n(s)`.
    pub fn count(&self) -> usize {
        self.components.len()
    }
}

/// Traces the complement of the 1-set `s` into cycles.
pub fn complement_cycles(web: &Web, s: &EdgeSubset) -> Result<CycleDecomposition, WebError> {
    web.check_one_set(s)?;
    // two complement half-edges at every vertex
    let half: Vec<Vec<usize>> = (0..web.num_vertices())
        .map(|v| web.incident(v).iter().copied().filter(|&e| !s.contains(e)).collect())
        .collect();
    let mut seen = vec![false; web.num_vertices()];
    let mut components = Vec::new();
    for start in 0..web.num_vertices() {
        if seen[start] {
            continue;
        }
        let mut vertices = vec![start];
        let mut edges = Vec::new();
        seen[start] = true;
        let mut at = start;
        let mut via = half[start][0];
        loop {
            edges.push(via);
            let next = match web.edges[via].kind {
                EdgeKind::Regular(a, b) => {
                    if a == at {
                        b
                    } else {
                        a
                    }
                }
                EdgeKind::Loop(v) => v,
                EdgeKind::Circle => unreachable!("circles have no ends"),
            };
            if next == start {
                break;
            }
            seen[next] = true;
            vertices.push(next);
            // leave `next` by its other complement half-edge
            let h = &half[next];
            via = if h[0] == via { h[1] } else { h[0] };
            at = next;
        }
        components.push(CycleComponent { vertices, edges });
    }
    for (e, edge) in web.edges.iter().enumerate() {
        if edge.kind == EdgeKind::Circle && !s.contains(e) {
            components.push(CycleComponent {
                vertices: Vec::new(),
                edges: vec![e],
            });
        }
    }
    Ok(CycleDecomposition { components })
}

/// Whether each complementary component carries an even number of
/// endpoints of `s`-edges.
pub fn is_even(web: &Web, s: &EdgeSubset) -> Result<bool, WebError> {
    let cycles = complement_cycles(web, s)?;
    Ok(cycles.components.iter().all(|c| {
        let endpoints: usize = c
            .vertices
            .iter()
            .map(|&v| web.incident(v).iter().filter(|&&e| s.contains(e)).count())
            .sum();
        endpoints.is_multiple_of(2)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::webs::connected_cubic_multigraphs;

    /// Oracle: filter all `2^E` subsets by the 1-set condition.
    fn brute_one_sets(web: &Web) -> Vec<EdgeSubset> {
        let mut out: Vec<EdgeSubset> = (0u64..1 << web.num_edges())
            .map(EdgeSubset::from_mask)
            .filter(|s| web.is_one_set(s))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn unknot_theta_handcuffs() {
        let u = corpus::web("unknot");
        assert_eq!(enumerate_one_sets(&u), vec![EdgeSubset::new(vec![]), EdgeSubset::new(vec![0])]);
        let t = corpus::web("theta");
        let singles: Vec<_> = (0..3).map(|e| EdgeSubset::new(vec![e])).collect();
        assert_eq!(enumerate_one_sets(&t), singles);
        let h = corpus::web("handcuffs");
        assert_eq!(enumerate_one_sets(&h), vec![h.subset(&["bar"]).unwrap()]);
    }

    #[test]
    fn matches_brute_force() {
        for (name, web) in corpus::webs() {
            if web.num_edges() <= 18 {
                assert_eq!(enumerate_one_sets(&web), brute_one_sets(&web), "{name}");
            }
        }
        for n in [2, 4, 6] {
            for web in connected_cubic_multigraphs(n) {
                assert_eq!(enumerate_one_sets(&web), brute_one_sets(&web));
            }
        }
    }

    #[test]
    fn cycle_traces() {
        let t = corpus::web("theta");
        let c = complement_cycles(&t, &t.subset(&["e1"]).unwrap()).unwrap();
        assert_eq!(c.count(), 1);
        assert_eq!(c.components[0].vertices.len(), 2);
        assert!(is_even(&t, &t.subset(&["e1"]).unwrap()).unwrap());

        let u = corpus::web("unknot");
        assert_eq!(complement_cycles(&u, &EdgeSubset::default()).unwrap().count(), 1);
        assert_eq!(complement_cycles(&u, &EdgeSubset::new(vec![0])).unwrap().count(), 0);
        assert!(is_even(&u, &EdgeSubset::default()).unwrap());

        let h = corpus::web("handcuffs");
        let bar = h.subset(&["bar"]).unwrap();
        assert_eq!(complement_cycles(&h, &bar).unwrap().count(), 2);
        assert!(!is_even(&h, &bar).unwrap());
        assert!(complement_cycles(&h, &h.subset(&["la"]).unwrap()).is_err());
    }

    #[test]
    fn decomposition_invariants() {
        let mut webs: Vec<Web> = corpus::webs().into_iter().map(|(_, w)| w).collect();
        webs.extend((2..=8).step_by(2).flat_map(connected_cubic_multigraphs));
        for web in webs {
            for s in enumerate_one_sets(&web) {
                assert!(s.members().iter().all(|&e| !matches!(web.edges()[e].kind, EdgeKind::Loop(_))));
                let complement = EdgeSubset::new((0..web.num_edges()).filter(|&e| !s.contains(e)).collect());
                assert!(web.is_two_set(&complement));
                let c = complement_cycles(&web, &s).unwrap();
                let mut edges: Vec<usize> = c.components.iter().flat_map(|k| k.edges.clone()).collect();
                edges.sort_unstable();
                assert_eq!(edges, complement.members());
                let mut verts: Vec<usize> = c.components.iter().flat_map(|k| k.vertices.clone()).collect();
                verts.sort_unstable();
                assert_eq!(verts, (0..web.num_vertices()).collect::<Vec<_>>());
                let even_lengths = c.components.iter().all(|k| k.vertices.len() % 2 == 0);
                assert_eq!(is_even(&web, &s).unwrap(), even_lengths);
            }
        }
    }
}
