//! Free `R`-modules with edge operators for the unknot and the theta web,
//! relation checks, and the edge decomposition over `Frac(R)`.

use serde::Serialize;
use thiserror::Error;

use crate::foam::{self, THETA_BASIS};
use crate::laurent::LaurentPoly;
use crate::linalg::{self, Subspace};
use crate::matrix::Matrix;
use crate::rational::RationalFunction;
use crate::webs::{EdgeSubset, Web};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("pairing matrix is not invertible over R (determinant {0})")]
    NotUnimodular(String),
    #[error("operator u_{edge} has a non-polynomial entry {entry} at ({row}, {col})")]
    NotOverR { edge: String, row: usize, col: usize, entry: String },
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("edges {0:?} do not form a vertex of the module's web")]
    NotAVertex([String; 3]),
    #[error("summand ranks add up to {total}, not the module rank {rank}")]
    IncompleteDecomposition { total: usize, rank: usize },
}

pub type Operator = Matrix<LaurentPoly>;

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorModule {
    pub name: String,
    pub basis_labels: Vec<String>,
    /// Edge id and its operator, acting on column vectors.
    pub operators: Vec<(String, Operator)>,
    /// Triples of operator indices meeting at a vertex.
    pub vertices: Vec<[usize; 3]>,
}

impl OperatorModule {
    pub fn rank(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn edge_ids(&self) -> Vec<&str> {
        self.operators.iter().map(|(e, _)| e.as_str()).collect()
    }

    pub fn edge_index(&self, id: &str) -> Result<usize, OperatorError> {
        self.operators
            .iter()
            .position(|(e, _)| e == id)
            .ok_or_else(|| OperatorError::UnknownEdge(id.to_string()))
    }

    pub fn operator(&self, id: &str) -> Result<&Operator, OperatorError> {
        Ok(&self.operators[self.edge_index(id)?].1)
    }
}

fn unknot_matrix() -> Operator {
    let (o, i, p) = (LaurentPoly::zero(), LaurentPoly::one(), LaurentPoly::p());
    Matrix::from_rows(vec![
        vec![o.clone(), o.clone(), o.clone()],
        vec![i.clone(), o.clone(), p],
        vec![o.clone(), i, o],
    ])
}

/// Rank 3, basis `v0, v1, v2` (dots on the disk), one edge `e`.
pub fn unknot_module() -> OperatorModule {
    OperatorModule {
        name: "unknot".into(),
        basis_labels: (0..3).map(|k| format!("v{k}")).collect(),
        operators: vec![("e".into(), unknot_matrix())],
        vertices: Vec::new(),
    }
}

/// Solves `M U = N` with `M` invertible over `R`, failing if `U` has a
/// genuine denominator.
fn solve_over_r(m: &Operator, n: &Operator, edge: &str) -> Result<Operator, OperatorError> {
    let mf = m.map(|x| RationalFunction::from_poly(x.clone()));
    let inv = linalg::inverse(&mf).ok_or_else(|| OperatorError::NotUnimodular("0".into()))?;
    let u = inv.times(&n.map(|x| RationalFunction::from_poly(x.clone())));
    let mut out = Matrix::zeros(u.rows(), u.cols());
    for i in 0..u.rows() {
        for j in 0..u.cols() {
            out[(i, j)] = u[(i, j)].to_poly().ok_or_else(|| OperatorError::NotOverR {
                edge: edge.to_string(),
                row: i,
                col: j,
                entry: u[(i, j)].to_string(),
            })?;
        }
    }
    Ok(out)
}

/// Rank 6, basis `v(0,m,n)`, edges `e1, e2, e3`. Each `u_k` is recovered
/// from foam pairings: `M U_k = N_k` with `M_ij = <Θ(a_i + v_j)>` and
/// `(N_k)_ij = <Θ(a_i + v_j + e_k)>`.
pub fn theta_module() -> Result<OperatorModule, OperatorError> {
    let m = foam::pairing_matrix(&THETA_BASIS, &THETA_BASIS).expect("basis lies in the half-theta family");
    let det = m.leibniz_determinant();
    if !det.is_unit() {
        return Err(OperatorError::NotUnimodular(det.to_string()));
    }
    let mut operators = Vec::new();
    for k in 0..3 {
        let id = format!("e{}", k + 1);
        let n = foam::dotted_pairing_matrix(&THETA_BASIS, &THETA_BASIS, k).expect("basis lies in the half-theta family");
        let u = solve_over_r(&m, &n, &id)?;
        operators.push((id, u));
    }
    Ok(OperatorModule {
        name: "theta".into(),
        basis_labels: THETA_BASIS.iter().map(|d| format!("v({},{},{})", d[0], d[1], d[2])).collect(),
        operators,
        vertices: vec![[0, 1, 2]],
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checks: Vec<IdentityCheck>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn cubic_vanishes(u: &Operator) -> bool {
    let p = LaurentPoly::p();
    let u2 = u.times(u);
    u2.times(u).plus(&u.scale(&p)).is_zero()
}

/// The three vertex relations for edges meeting at a vertex, plus the
/// cubic relation for each. Refuses triples that are not vertices.
pub fn check_vertex_relations(module: &OperatorModule, edges: [&str; 3]) -> Result<RelationReport, OperatorError> {
    let idx = [module.edge_index(edges[0])?, module.edge_index(edges[1])?, module.edge_index(edges[2])?];
    let mut sorted = idx;
    sorted.sort_unstable();
    if !module.vertices.iter().any(|v| {
        let mut w = *v;
        w.sort_unstable();
        w == sorted
    }) {
        return Err(OperatorError::NotAVertex(edges.map(String::from)));
    }
    let [u1, u2, u3] = idx.map(|k| &module.operators[k].1);
    let n = module.rank();
    let p = LaurentPoly::p();
    let mut checks = vec![
        IdentityCheck {
            identity: "u1 + u2 + u3 = 0".into(),
            holds: u1.plus(u2).plus(u3).is_zero(),
        },
        IdentityCheck {
            identity: "u2 u3 + u3 u1 + u1 u2 = P".into(),
            holds: u2.times(u3).plus(&u3.times(u1)).plus(&u1.times(u2)) == Matrix::scalar(n, &p),
        },
        IdentityCheck {
            identity: "u1 u2 u3 = 0".into(),
            holds: u1.times(u2).times(u3).is_zero(),
        },
    ];
    checks.push(IdentityCheck {
        identity: "u^3 + P u = 0 for u1, u2, u3".into(),
        holds: [u1, u2, u3].iter().all(|u| cubic_vanishes(u)),
    });
    Ok(RelationReport { checks })
}

/// Module-wide invariants: pairwise commutation and the cubic relation.
pub fn check_module_invariants(module: &OperatorModule) -> RelationReport {
    let ops: Vec<&Operator> = module.operators.iter().map(|(_, u)| u).collect();
    let commute = ops
        .iter()
        .enumerate()
        .all(|(i, a)| ops[i + 1..].iter().all(|b| a.times(b) == b.times(a)));
    RelationReport {
        checks: vec![
            IdentityCheck {
                identity: "operators commute".into(),
                holds: commute,
            },
            IdentityCheck {
                identity: "u^3 + P u = 0 for every edge".into(),
                holds: ops.iter().all(|u| cubic_vanishes(u)),
            },
        ],
    }
}

#[derive(Debug, Clone)]
pub struct Summand {
    /// Indices of the edges in `s`.
    pub subset: Vec<usize>,
    pub space: Subspace<RationalFunction>,
}

impl Summand {
    pub fn rank(&self) -> usize {
        self.space.dim()
    }
}

/// `Q` matrices whose images are the summands, each with `Q^2 = P Q`, so
/// `Q / P` is the projection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionCheck {
    pub idempotent: bool,
    pub orthogonal: bool,
    pub sum_to_identity: bool,
    /// Rank of each projection, in the order of `labels`.
    pub ranks: Vec<usize>,
    pub labels: Vec<String>,
}

impl ProjectionCheck {
    pub fn holds(&self) -> bool {
        self.idempotent && self.orthogonal && self.sum_to_identity
    }
}

#[derive(Debug, Clone)]
pub struct EdgeDecomposition {
    pub edges: Vec<String>,
    /// One entry per subset of edges, ordered by bitmask.
    pub summands: Vec<Summand>,
    pub projections: ProjectionCheck,
}

impl EdgeDecomposition {
    pub fn rank_of(&self, subset: &[usize]) -> usize {
        let mut s = subset.to_vec();
        s.sort_unstable();
        self.summands.iter().find(|x| x.subset == s).map_or(0, Summand::rank)
    }

    pub fn total_rank(&self) -> usize {
        self.summands.iter().map(Summand::rank).sum()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &Summand> {
        self.summands.iter().filter(|s| s.rank() > 0)
    }

    /// Whether every subset with a nonzero summand is a 1-set of `web`,
    /// matching edges by id.
    pub fn supported_on_one_sets(&self, web: &Web) -> bool {
        self.nonzero().all(|s| {
            let ids: Vec<&str> = s.subset.iter().map(|&e| self.edges[e].as_str()).collect();
            web.subset(&ids).is_ok_and(|sub: EdgeSubset| web.is_one_set(&sub))
        })
    }
}

fn to_frac(m: &Operator) -> Matrix<RationalFunction> {
    m.map(|x| RationalFunction::from_poly(x.clone()))
}

fn projection_check(module: &OperatorModule) -> ProjectionCheck {
    let n = module.rank();
    let p = LaurentPoly::p();
    let (qs, labels): (Vec<Operator>, Vec<String>) = if let Some(&[i, j, k]) = module.vertices.first() {
        let op = |x: usize| &module.operators[x].1;
        (
            vec![op(j).times(op(k)), op(k).times(op(i)), op(i).times(op(j))],
            [i, j, k].iter().map(|&x| format!("{{{}}}", module.operators[x].0)).collect(),
        )
    } else {
        // a lone edge: image and kernel of u
        let (id, u) = &module.operators[0];
        let u2 = u.times(u);
        (
            vec![u2.clone(), u2.plus(&Matrix::scalar(n, &p))],
            vec!["{}".to_string(), format!("{{{id}}}")],
        )
    };
    let idempotent = qs.iter().all(|q| q.times(q) == q.scale(&p));
    let orthogonal = qs
        .iter()
        .enumerate()
        .all(|(a, x)| qs.iter().enumerate().all(|(b, y)| a == b || x.times(y).is_zero()));
    let sum = qs.iter().fold(Matrix::zeros(n, n), |acc, q| acc.plus(q));
    let sum_to_identity = sum == Matrix::scalar(n, &p);
    let ranks = qs.iter().map(|q| linalg::rank(&to_frac(q))).collect();
    ProjectionCheck {
        idempotent,
        orthogonal,
        sum_to_identity,
        ranks,
        labels,
    }
}

/// `V(s) = ∩_{e in s} ker u_e ∩ ∩_{e not in s} im u_e` over `Frac(R)`,
/// for every subset `s` of edges.
pub fn edge_decomposition(module: &OperatorModule) -> Result<EdgeDecomposition, OperatorError> {
    let n = module.rank();
    let ops: Vec<Matrix<RationalFunction>> = module.operators.iter().map(|(_, u)| to_frac(u)).collect();
    let kernels: Vec<_> = ops.iter().map(Subspace::kernel_of).collect();
    let images: Vec<_> = ops.iter().map(Subspace::span).collect();
    let mut summands = Vec::new();
    for mask in 0u32..1 << ops.len() {
        let mut space = Subspace::whole(n);
        let mut subset = Vec::new();
        for e in 0..ops.len() {
            if mask >> e & 1 == 1 {
                subset.push(e);
                space = space.intersect(&kernels[e]);
            } else {
                space = space.intersect(&images[e]);
            }
        }
        summands.push(Summand { subset, space });
    }
    let d = EdgeDecomposition {
        edges: module.operators.iter().map(|(e, _)| e.clone()).collect(),
        summands,
        projections: projection_check(module),
    };
    if d.total_rank() != n {
        return Err(OperatorError::IncompleteDecomposition { total: d.total_rank(), rank: n });
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::corpus;
    use crate::webs::enumerate_one_sets;

    fn frac(p: LaurentPoly) -> RationalFunction {
        RationalFunction::from_poly(p)
    }

    #[test]
    fn unknot_from_sphere_pairings() {
        // independent derivation: M_ij = <S(i + j)>, N_ij = <S(i + j + 1)>
        let m = Matrix::from_fn(3, 3, |i, j| foam::eval_sphere((i + j) as u32));
        let n = Matrix::from_fn(3, 3, |i, j| foam::eval_sphere((i + j + 1) as u32));
        assert_eq!(solve_over_r(&m, &n, "e").unwrap(), unknot_matrix());
    }

    #[test]
    fn unknot_kernel_and_image() {
        let u = unknot_module();
        let op = u.operator("e").unwrap();
        assert!(cubic_vanishes(op));
        let f = to_frac(op);
        let k = Subspace::kernel_of(&f);
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[frac(LaurentPoly::p()), RationalFunction::zero(), RationalFunction::one()]));
        assert_eq!(Subspace::span(&f).dim(), 2);
        let d = edge_decomposition(&u).unwrap();
        assert_eq!(d.rank_of(&[0]), 1);
        assert_eq!(d.rank_of(&[]), 2);
        assert!(d.projections.holds());
        assert_eq!(d.projections.ranks, vec![2, 1]);
        assert!(check_vertex_relations(&u, ["e", "e", "e"]).is_err());
    }

    #[test]
    fn theta_relations() {
        let t = theta_module().unwrap();
        let r = check_vertex_relations(&t, ["e1", "e2", "e3"]).unwrap();
        assert!(r.all_hold(), "{r:?}");
        assert!(check_module_invariants(&t).all_hold());
    }

    #[test]
    fn theta_shift_property() {
        let t = theta_module().unwrap();
        let u3 = t.operator("e3").unwrap();
        let p = LaurentPoly::p();
        for (j, d) in THETA_BASIS.iter().enumerate() {
            let col = u3.column(j);
            let mut expected = vec![LaurentPoly::zero(); 6];
            if d[2] < 2 {
                let k = THETA_BASIS.iter().position(|x| *x == [0, d[1], d[2] + 1]).unwrap();
                expected[k] = LaurentPoly::one();
            } else {
                let k = THETA_BASIS.iter().position(|x| *x == [0, d[1], 1]).unwrap();
                expected[k] = p.clone();
            }
            assert_eq!(col, expected, "u3 v{d:?}");
        }
    }

    #[test]
    fn theta_decomposition() {
        let t = theta_module().unwrap();
        let d = edge_decomposition(&t).unwrap();
        for mask in 0u32..8 {
            let s: Vec<usize> = (0..3).filter(|e| mask >> e & 1 == 1).collect();
            assert_eq!(d.rank_of(&s), if s.len() == 1 { 2 } else { 0 }, "{s:?}");
        }
        assert_eq!(d.rank_of(&[]), 0);
        assert!(d.projections.holds());
        assert_eq!(d.projections.ranks, vec![2, 2, 2]);
        let web = corpus::web("theta");
        assert!(d.supported_on_one_sets(&web));
        // every subset outside a 1-set carries nothing
        let one_sets = enumerate_one_sets(&web);
        for s in &d.summands {
            let contained = one_sets.iter().any(|o| s.subset.iter().all(|e| o.contains(*e)));
            if !contained {
                assert_eq!(s.rank(), 0);
            }
        }
        assert!(corpus::web("unknot").edges()[0].id == "e");
        assert!(edge_decomposition(&unknot_module()).unwrap().supported_on_one_sets(&corpus::web("unknot")));
    }

    #[test]
    fn corrupted_entry_is_caught() {
        let mut t = theta_module().unwrap();
        let u = &mut t.operators[1].1;
        u[(2, 3)] = &u[(2, 3)] + &LaurentPoly::one();
        let r = check_vertex_relations(&t, ["e1", "e2", "e3"]).unwrap();
        assert!(!r.all_hold());
        let mut m = unknot_module();
        m.operators[0].1[(0, 0)] = LaurentPoly::var(0);
        assert!(!check_module_invariants(&m).all_hold());
    }
}
