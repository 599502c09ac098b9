//! Rank over the fraction field `Frac(R)`.
//!
//! Two independent routes: fraction-free (Bareiss) elimination over `R`
//! with exact division, and evaluation at random points of `GF(2^16)^3`.
//! Evaluation can only lower the rank, so the randomized answer is a lower
//! bound that is exact with overwhelming probability.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gf16::{eval_laurent, Gf16};
use crate::laurent::LaurentPoly;
use crate::linalg;
use crate::matrix::Matrix;
use crate::rational::RationalFunction;
use crate::ring::{Field, Ring, F2};

/// Independent random evaluations per randomized rank.
pub const RANDOM_TRIALS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankError {
    #[error("exact rank {exact} and randomized rank {randomized} disagree")]
    Disagreement { exact: usize, randomized: usize },
    #[error("could not find an evaluation point avoiding every denominator")]
    NoEvaluationPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankOptions {
    /// Exact elimination runs only when both dimensions are at most this.
    pub exact_max_dim: usize,
    /// Exact elimination gives up once an entry exceeds this many terms.
    pub term_budget: usize,
    pub trials: usize,
}

impl Default for RankOptions {
    fn default() -> Self {
        Self {
            exact_max_dim: 12,
            term_budget: 20_000,
            trials: RANDOM_TRIALS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankReport {
    /// `None` when exact elimination was skipped or exceeded its budget.
    pub exact: Option<usize>,
    pub randomized: usize,
}

impl RankReport {
    pub fn rank(&self) -> usize {
        self.exact.unwrap_or(self.randomized)
    }
}

/// Rank of a matrix over `R` by Bareiss elimination with full pivoting.
/// Returns `None` if an intermediate entry exceeds `term_budget` terms.
pub fn bareiss_rank(m: &Matrix<LaurentPoly>, term_budget: usize) -> Option<usize> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut prev = LaurentPoly::one();
    let mut k = 0;
    while k < rows.min(cols) {
        let pivot = (k..rows)
            .flat_map(|i| (k..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[(i, j)].is_zero())
            .min_by_key(|&(i, j)| a[(i, j)].num_terms());
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(k, pi);
        a.swap_cols(k, pj);
        let p = a[(k, k)].clone();
        for i in k + 1..rows {
            let aik = a[(i, k)].clone();
            for j in k + 1..cols {
                let num = &(&p * &a[(i, j)]) + &(&aik * &a[(k, j)]);
                let v = num.div_exact(&prev).expect("Bareiss division is exact");
                if v.num_terms() > term_budget {
                    return None;
                }
                a[(i, j)] = v;
            }
            a[(i, k)] = LaurentPoly::zero();
        }
        prev = p;
        k += 1;
    }
    Some(k)
}

/// Multiplies each row by the product of its denominators, which does not
/// change the rank over `Frac(R)`.
pub fn clear_denominators(m: &Matrix<RationalFunction>) -> Matrix<LaurentPoly> {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        let row = m.row(i);
        for j in 0..m.cols() {
            let mut v = row[j].numerator().clone();
            for (k, other) in row.iter().enumerate() {
                if k != j && !other.denominator().is_one() {
                    v = &v * other.denominator();
                }
            }
            out[(i, j)] = v;
        }
    }
    out
}

/// The deterministic generator used for every seeded randomized check.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_point(rng: &mut impl Rng) -> [Gf16; 3] {
    [0; 3].map(|_| Gf16(rng.random_range(1..=u16::MAX)))
}

/// Randomized rank of a rational matrix: the maximum over `trials`
/// evaluations at random nonzero points avoiding all denominators.
pub fn randomized_rank(m: &Matrix<RationalFunction>, trials: usize, rng: &mut impl Rng) -> Result<usize, RankError> {
    let mut best = 0;
    for _ in 0..trials {
        let mut evaluated = None;
        for _ in 0..64 {
            let pt = random_point(rng);
            let dens: Option<Vec<Gf16>> = m
                .entries()
                .map(|x| {
                    let d = eval_laurent(x.denominator(), pt);
                    (!d.is_zero()).then_some(d)
                })
                .collect();
            if let Some(dens) = dens {
                let mut it = dens.into_iter();
                evaluated = Some(m.map(|x| {
                    let d = it.next().unwrap();
                    eval_laurent(x.numerator(), pt).times(&d.inverse().expect("nonzero denominator"))
                }));
                break;
            }
        }
        let e = evaluated.ok_or(RankError::NoEvaluationPoint)?;
        best = best.max(linalg::rank(&e));
    }
    Ok(best)
}

/// Randomized rank of a polynomial matrix.
pub fn randomized_rank_poly(m: &Matrix<LaurentPoly>, trials: usize, rng: &mut impl Rng) -> usize {
    (0..trials)
        .map(|_| {
            let pt = random_point(rng);
            linalg::rank(&m.map(|x| eval_laurent(x, pt)))
        })
        .max()
        .unwrap_or(0)
}

/// Rank over `Frac(R)` by both routes, failing if they disagree.
pub fn fraction_rank_report(
    m: &Matrix<RationalFunction>,
    opts: RankOptions,
    rng: &mut impl Rng,
) -> Result<RankReport, RankError> {
    let randomized = randomized_rank(m, opts.trials, rng)?;
    let exact = if m.rows() <= opts.exact_max_dim && m.cols() <= opts.exact_max_dim {
        bareiss_rank(&clear_denominators(m), opts.term_budget)
    } else {
        None
    };
    if let Some(exact) = exact {
        if exact != randomized {
            return Err(RankError::Disagreement { exact, randomized });
        }
    }
    Ok(RankReport { exact, randomized })
}

pub fn fraction_rank(m: &Matrix<RationalFunction>, rng: &mut impl Rng) -> Result<usize, RankError> {
    fraction_rank_report(m, RankOptions::default(), rng).map(|r| r.rank())
}

/// Rank over `Frac(R)` of a matrix with entries in `R`.
pub fn poly_rank_report(m: &Matrix<LaurentPoly>, opts: RankOptions, rng: &mut impl Rng) -> Result<RankReport, RankError> {
    let randomized = randomized_rank_poly(m, opts.trials, rng);
    let exact = if m.rows() <= opts.exact_max_dim && m.cols() <= opts.exact_max_dim {
        bareiss_rank(m, opts.term_budget)
    } else {
        None
    };
    if let Some(exact) = exact {
        if exact != randomized {
            return Err(RankError::Disagreement { exact, randomized });
        }
    }
    Ok(RankReport { exact, randomized })
}

/// Rank over F2 after setting every `T_i = 1`.
pub fn rank_at_ones(m: &Matrix<LaurentPoly>) -> usize {
    linalg::rank(&m.map(|x| -> F2 { x.eval_at_ones() }))
}
