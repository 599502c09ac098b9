//! Exhaustive generation of connected cubic multigraphs (loops and
//! parallel edges allowed), one per isomorphism class.
//!
//! Graphs are built in BFS order: the lowest-labelled vertex with free
//! half-edges picks partners in nondecreasing label order, either itself
//! (a loop), a later existing vertex, or a brand-new vertex. Every BFS
//! labelling of every connected graph arises this way, so deduplicating by
//! the lexicographically least BFS code gives each class exactly once.

use std::cmp::Ordering;
use std::collections::HashSet;

use super::{EdgeSpec, Web};

#[derive(Clone)]
struct Multigraph {
    n: usize,
    /// `mult[i][j]` edges between `i != j`; `mult[i][i]` loops at `i`.
    mult: Vec<Vec<u8>>,
}

impl Multigraph {
    fn degree_left(&self, v: usize) -> u8 {
        let d: u8 = (0..self.n).map(|w| if w == v { 2 * self.mult[v][v] } else { self.mult[v][w] }).sum();
        3 - d
    }

    /// Partners of `v` with labels `>= v` under `label`, as the code
    /// segment for `v`.
    fn segment(&self, v: usize, label: &[usize]) -> Vec<u8> {
        let mut seg = Vec::new();
        for w in 0..self.n {
            if label[w] >= label[v] {
                let k = self.mult[v][w];
                seg.extend(std::iter::repeat_n(label[w] as u8, k as usize));
            }
        }
        seg.sort_unstable();
        seg.push(u8::MAX);
        seg
    }

    /// Least code over all BFS labellings.
    fn canonical_code(&self) -> Vec<u8> {
        let mut best: Option<Vec<u8>> = None;
        for root in 0..self.n {
            let mut label = vec![usize::MAX; self.n];
            label[root] = 0;
            let mut order = vec![root];
            let mut code = Vec::new();
            self.canon_rec(0, &mut label, &mut order, &mut code, &mut best, false);
        }
        best.unwrap_or_default()
    }

    fn canon_rec(
        &self,
        c: usize,
        label: &mut Vec<usize>,
        order: &mut Vec<usize>,
        code: &mut Vec<u8>,
        best: &mut Option<Vec<u8>>,
        ahead: bool,
    ) {
        if c == self.n {
            if best.as_ref().is_none_or(|b| *code < *b) {
                *best = Some(code.clone());
            }
            return;
        }
        let v = order[c];
        let fresh: Vec<usize> = (0..self.n).filter(|&w| w != v && self.mult[v][w] > 0 && label[w] == usize::MAX).collect();
        for perm in permutations(&fresh) {
            for (k, &w) in perm.iter().enumerate() {
                label[w] = order.len() + k;
            }
            order.extend(&perm);
            let seg = self.segment(v, label);
            let len = code.len();
            code.extend(&seg);
            let mut now_ahead = ahead;
            let keep = match (&*best, ahead) {
                (Some(b), false) => match code[..].cmp(&b[..code.len().min(b.len())]) {
                    Ordering::Greater => false,
                    Ordering::Less => {
                        now_ahead = true;
                        true
                    }
                    Ordering::Equal => true,
                },
                _ => true,
            };
            if keep {
                self.canon_rec(c + 1, label, order, code, best, now_ahead);
            }
            code.truncate(len);
            order.truncate(order.len() - perm.len());
            for &w in &perm {
                label[w] = usize::MAX;
            }
        }
    }

    fn to_web(&self) -> Web {
        let vertices: Vec<String> = (0..self.n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in i..self.n {
                for _ in 0..self.mult[i][j] {
                    let spec = if i == j {
                        EdgeSpec::Loop(vertices[i].clone())
                    } else {
                        EdgeSpec::Ends(vertices[i].clone(), vertices[j].clone())
                    };
                    edges.push((format!("e{}", edges.len()), spec));
                }
            }
        }
        let mut web = Web::new("", vertices, edges, false).expect("generated graphs are cubic");
        web.planar = super::abstract_planarity(&web);
        web
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

struct Generator {
    n: usize,
    seen: HashSet<Vec<u8>>,
    out: Vec<Multigraph>,
}

impl Generator {
    fn run(&mut self, g: &mut Multigraph, used: usize, c: usize, last: usize) {
        let mut c = c;
        let mut last = last;
        while c < used && g.degree_left(c) == 0 {
            c += 1;
            last = 0;
        }
        if c == used {
            if used == self.n && self.seen.insert(g.canonical_code()) {
                self.out.push(g.clone());
            }
            return;
        }
        let lo = last.max(c);
        let hi = if used < self.n { used } else { used - 1 };
        for p in lo..=hi {
            if p == c {
                if g.degree_left(c) < 2 {
                    continue;
                }
                g.mult[c][c] += 1;
                self.run(g, used, c, c);
                g.mult[c][c] -= 1;
            } else if p < used {
                if g.degree_left(p) == 0 {
                    continue;
                }
                g.mult[c][p] += 1;
                g.mult[p][c] += 1;
                self.run(g, used, c, p);
                g.mult[c][p] -= 1;
                g.mult[p][c] -= 1;
            } else {
                g.mult[c][p] += 1;
                g.mult[p][c] += 1;
                self.run(g, used + 1, c, p);
                g.mult[c][p] -= 1;
                g.mult[p][c] -= 1;
            }
        }
    }
}

/// All connected cubic multigraphs on `n` vertices up to isomorphism,
/// loops allowed. `n` must be even and at most 16.
pub fn connected_cubic_multigraphs(n: usize) -> Vec<Web> {
    assert!(n.is_multiple_of(2) && n <= 16, "cubic graphs need an even vertex count (at most 16 here)");
    if n == 0 {
        return Vec::new();
    }
    let mut gen = Generator {
        n,
        seen: HashSet::new(),
        out: Vec::new(),
    };
    let mut g = Multigraph { n, mult: vec![vec![0; n]; n] };
    gen.run(&mut g, 1, 0, 0);
    gen.out.iter().map(Multigraph::to_web).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::webs::EdgeKind;

    #[test]
    fn class_counts() {
        // connected cubic multigraphs with loops allowed, and without
        let all = [2, 5, 17, 71];
        let loopless = [1, 2, 6, 20];
        for (k, n) in [2, 4, 6, 8].into_iter().enumerate() {
            let graphs = connected_cubic_multigraphs(n);
            assert_eq!(graphs.len(), all[k], "n = {n}");
            assert_eq!(graphs.iter().filter(|w| w.num_loops() == 0).count(), loopless[k], "n = {n}");
        }
    }

    fn multiplicities(web: &Web, relabel: impl Fn(usize) -> usize) -> Multigraph {
        let n = web.num_vertices();
        let mut mult = vec![vec![0u8; n]; n];
        for e in web.edges() {
            match e.kind {
                EdgeKind::Regular(a, b) => {
                    mult[relabel(a)][relabel(b)] += 1;
                    mult[relabel(b)][relabel(a)] += 1;
                }
                EdgeKind::Loop(v) => mult[relabel(v)][relabel(v)] += 1,
                EdgeKind::Circle => unreachable!("generated graphs have no circles"),
            }
        }
        Multigraph { n, mult }
    }

    #[test]
    fn canonical_code_ignores_labels() {
        for web in connected_cubic_multigraphs(6) {
            let n = web.num_vertices();
            let reversed = multiplicities(&web, |v| n - 1 - v);
            let rotated = multiplicities(&web, |v| (v + 1) % n);
            let original = multiplicities(&web, |v| v);
            assert_eq!(reversed.canonical_code(), original.canonical_code());
            assert_eq!(rotated.canonical_code(), original.canonical_code());
        }
    }
}
