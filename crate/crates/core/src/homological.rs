//! Differential modules over `R`: homology rank over `Frac(R)`, dimension
//! after `T = (1,1,1)`, and torsion along the two lines through `(1,1,1)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{LaurentPoly, PolyParseError};
use crate::matrix::Matrix;
use crate::operators::unknot_module;
use crate::rank::{self, RankError, RankOptions, RankReport};
use crate::ring::Ring;
use crate::series::{substitute_line, substitute_symbolic, Direction, DEFAULT_TRUNCATION};
use crate::snf::local_valuations;
use crate::univariate::{F2Poly, UnivariateRational};

/// Largest rank [`random_complex`] will build.
pub const MAX_RANDOM_SIZE: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("differential is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("differential does not square to zero (entry ({row}, {col}) of d^2 is {entry})")]
    NotSquareZero { row: usize, col: usize, entry: String },
    #[error(transparent)]
    Rank(#[from] RankError),
    #[error("substitution along {direction} drops the rank of d from {frac} to {substituted}")]
    RankDrop { direction: Direction, frac: usize, substituted: usize },
    #[error("denominator of entry ({row}, {col}) vanishes at t = 0 along {direction}")]
    SingularSubstitution { direction: Direction, row: usize, col: usize },
    #[error("internal inconsistency: F2 dimension {f2} but r + 2l = {uct}")]
    UctMismatch { f2: usize, uct: usize },
    #[error("malformed complex JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("complex declares rank {rank} but row {row} has {len} entries")]
    Shape { rank: usize, row: usize, len: usize },
    #[error("complex declares rank {rank} but has {rows} rows")]
    RowCount { rank: usize, rows: usize },
    #[error("entry ({row}, {col}): {source}")]
    Entry { row: usize, col: usize, source: PolyParseError },
    #[error("random complexes are limited to rank {MAX_RANDOM_SIZE}, got {0}")]
    TooLarge(usize),
}

/// A free `R`-module with a square-zero endomorphism `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferentialModule {
    differential: Matrix<LaurentPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecializationReport {
    pub frac_rank: usize,
    pub f2_dim: usize,
    pub direction: Direction,
    pub r: usize,
    pub l: usize,
    pub torsion_exponents: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    rank: usize,
    differential: Vec<Vec<String>>,
}

impl DifferentialModule {
    pub fn new(d: Matrix<LaurentPoly>) -> Result<Self, HomologyError> {
        if !d.is_square() {
            return Err(HomologyError::NotSquare { rows: d.rows(), cols: d.cols() });
        }
        let sq = d.times(&d);
        for i in 0..sq.rows() {
            for j in 0..sq.cols() {
                if !sq[(i, j)].is_zero() {
                    return Err(HomologyError::NotSquareZero {
                        row: i,
                        col: j,
                        entry: sq[(i, j)].to_string(),
                    });
                }
            }
        }
        Ok(Self { differential: d })
    }

    /// Zero differential on `R^n`.
    pub fn zero(n: usize) -> Self {
        Self {
            differential: Matrix::zeros(n, n),
        }
    }

    /// Mapping cone of `a: R^p -> R^q` (a `q x p` matrix), as the
    /// differential `[[0, a], [0, 0]]` on `R^q ⊕ R^p`.
    pub fn cone(a: &Matrix<LaurentPoly>) -> Self {
        let (q, p) = (a.rows(), a.cols());
        let d = Matrix::block(&Matrix::zeros(q, q), a, &Matrix::zeros(p, q), &Matrix::zeros(p, p));
        Self { differential: d }
    }

    pub fn from_json(text: &str) -> Result<Self, HomologyError> {
        let file: ComplexFile = serde_json::from_str(text).map_err(|e| HomologyError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let n = file.rank;
        if file.differential.len() != n {
            return Err(HomologyError::RowCount {
                rank: n,
                rows: file.differential.len(),
            });
        }
        let mut rows = Vec::with_capacity(n);
        for (i, row) in file.differential.iter().enumerate() {
            if row.len() != n {
                return Err(HomologyError::Shape { rank: n, row: i, len: row.len() });
            }
            let parsed = row
                .iter()
                .enumerate()
                .map(|(j, s)| s.parse().map_err(|source| HomologyError::Entry { row: i, col: j, source }))
                .collect::<Result<Vec<LaurentPoly>, _>>()?;
            rows.push(parsed);
        }
        let d = if n == 0 { Matrix::zeros(0, 0) } else { Matrix::from_rows(rows) };
        Self::new(d)
    }

    pub fn to_json(&self) -> String {
        let file = ComplexFile {
            rank: self.rank(),
            differential: self.differential.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        };
        serde_json::to_string(&file).expect("complex serializes")
    }

    pub fn rank(&self) -> usize {
        self.differential.rows()
    }

    pub fn differential(&self) -> &Matrix<LaurentPoly> {
        &self.differential
    }

    /// Rank of `d` over `Frac(R)`, by randomized evaluation and, where it
    /// is affordable, exact elimination; the two must agree.
    pub fn differential_rank(&self, rng: &mut impl Rng) -> Result<RankReport, HomologyError> {
        Ok(rank::poly_rank_report(&self.differential, RankOptions::default(), rng)?)
    }

    pub fn homology_frac_rank(&self, rng: &mut impl Rng) -> Result<usize, HomologyError> {
        Ok(self.rank() - 2 * self.differential_rank(rng)?.rank())
    }

    pub fn homology_f2_dim(&self) -> usize {
        self.rank() - 2 * rank::rank_at_ones(&self.differential)
    }

    /// `d` after `T_i -> 1 + c_i t`, entries in `F2[t]_(t)`.
    pub fn substituted(&self, direction: Direction) -> Result<Matrix<UnivariateRational>, HomologyError> {
        let m = self.differential.map(|x| substitute_line(x, direction));
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if !m[(i, j)].denominator().constant_term() {
                    return Err(HomologyError::SingularSubstitution { direction, row: i, col: j });
                }
            }
        }
        Ok(m)
    }

    /// Free rank and torsion of the homology over the local ring at `t = 0`
    /// along `direction`, checked against the dimension at `T = (1,1,1)`.
    pub fn bockstein_analysis(&self, direction: Direction, rng: &mut impl Rng) -> Result<SpecializationReport, HomologyError> {
        let n = self.rank();
        let frac = self.differential_rank(rng)?.rank();
        let vals = local_valuations(&self.substituted(direction)?);
        if vals.len() != frac {
            return Err(HomologyError::RankDrop {
                direction,
                frac,
                substituted: vals.len(),
            });
        }
        let torsion_exponents: Vec<usize> = vals.into_iter().filter(|&v| v > 0).collect();
        let r = n - 2 * frac;
        let l = torsion_exponents.len();
        let f2_dim = self.homology_f2_dim();
        if f2_dim != r + 2 * l {
            return Err(HomologyError::UctMismatch { f2: f2_dim, uct: r + 2 * l });
        }
        Ok(SpecializationReport {
            frac_rank: r,
            f2_dim,
            direction,
            r,
            l,
            torsion_exponents,
        })
    }
}

/// The cone of `P` on `R^2`: two copies of `R/(P)`.
pub fn cone_of_p() -> DifferentialModule {
    DifferentialModule::cone(&Matrix::scalar(2, &LaurentPoly::p()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct HandcuffsModel {
    /// `u^2 + P` on the unknot module.
    pub map: Matrix<LaurentPoly>,
    pub complex: DifferentialModule,
    pub kernel_rank: usize,
    pub cokernel_rank: usize,
}

/// Two-term complex `R^3 -> R^3` given by `u^2 + P` for the unknot
/// operator `u`.
pub fn linked_handcuffs_model(rng: &mut impl Rng) -> Result<HandcuffsModel, HomologyError> {
    let module = unknot_module();
    let u = &module.operators[0].1;
    let map = u.times(u).plus(&Matrix::scalar(3, &LaurentPoly::p()));
    let rk = rank::poly_rank_report(&map, RankOptions::default(), rng)?.rank();
    Ok(HandcuffsModel {
        kernel_rank: map.cols() - rk,
        cokernel_rank: map.rows() - rk,
        complex: DifferentialModule::cone(&map),
        map,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub claim: String,
    pub value: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub facts: Vec<Fact>,
}

impl Certificate {
    pub fn all_hold(&self) -> bool {
        self.facts.iter().all(|f| f.holds)
    }
}

/// Computational proof that `P` vanishes to order exactly 4 at `(1,1,1)`.
pub fn order_four_certificate() -> Certificate {
    let p = LaurentPoly::p();
    let mut facts = Vec::new();
    let order = p.m_adic_order();
    facts.push(Fact {
        claim: "m-adic order of P is 4".into(),
        value: order.map_or("infinite".into(), |k| k.to_string()),
        holds: order == Some(4),
    });
    let expected: LaurentPoly = "T1^2*T2^2 + T1^2*T3^2 + T2^2*T3^2".parse().expect("valid polynomial");
    let symbolic = substitute_symbolic(&p, DEFAULT_TRUNCATION);
    let lead = symbolic.leading_term();
    facts.push(Fact {
        claim: "P(1 + z t) = (z1^2 z2^2 + z1^2 z3^2 + z2^2 z3^2) t^4 + O(t^5)".into(),
        value: match &lead {
            Ok((k, c)) => format!("({}) t^{k}", crate::series::format_z(c)),
            Err(e) => e.to_string(),
        },
        holds: matches!(lead, Ok((4, c)) if *c == expected),
    });
    for (direction, power) in [(Direction::Diagonal, 1), (Direction::Partial, 2)] {
        let s = substitute_line(&p, direction);
        let cleared = UnivariateRational::from_poly(F2Poly::one_plus_t().pow(power)).times(&s);
        facts.push(Fact {
            claim: format!("(1 + t)^{power} P along {direction} is t^4"),
            value: format!("valuation {}, P -> {s}", s.valuation().map_or("inf".into(), |v| v.to_string())),
            holds: s.valuation() == Some(4) && cleared == UnivariateRational::from_poly(F2Poly::monomial(4)),
        });
    }
    Certificate { facts }
}

fn random_monomial(rng: &mut impl Rng) -> LaurentPoly {
    LaurentPoly::monomial([0; 3].map(|_| rng.random_range(-1..=1)))
}

/// A small random element: a unit, or a sum of two monomials, times an
/// optional factor of `P`.
fn random_entry(rng: &mut impl Rng) -> LaurentPoly {
    let base = match rng.random_range(0..3) {
        0 => random_monomial(rng),
        _ => &random_monomial(rng) + &random_monomial(rng),
    };
    if rng.random_bool(0.3) {
        &base * &LaurentPoly::p()
    } else {
        base
    }
}

/// Random square-zero differential on `R^size`: a block map `N` with
/// `k <= size/2` nonzero entries from a set of rows into a disjoint set of
/// columns, conjugated by elementary matrices `I + c E_ij` (which are
/// their own inverses in characteristic 2). Each entry of `N` is redrawn
/// until it survives both line substitutions, so `rank d` is the same over
/// `Frac(R)` and after either substitution.
pub fn random_complex(seed: u64, size: usize) -> Result<DifferentialModule, HomologyError> {
    if size > MAX_RANDOM_SIZE {
        return Err(HomologyError::TooLarge(size));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = size;
    let mut d = Matrix::zeros(n, n);
    if n == 0 {
        return Ok(DifferentialModule { differential: d });
    }
    let k = rng.random_range(0..=n / 2);
    for i in 0..k {
        let entry = loop {
            let e = random_entry(&mut rng);
            if Direction::ALL.iter().all(|&dir| !substitute_line(&e, dir).is_zero()) {
                break e;
            }
        };
        d[(i, n - k + i)] = entry;
    }
    if n >= 2 {
        for _ in 0..n {
            let i = rng.random_range(0..n);
            let j = (i + rng.random_range(1..n)) % n;
            let c = random_monomial(&mut rng);
            // d <- E d E with E = I + c E_ij
            d.add_row_multiple(i, j, &c);
            d.add_col_multiple(j, i, &c);
        }
    }
    DifferentialModule::new(d)
}
