//! Smith normal form over the Euclidean domain `F2[t]`, and torsion
//! exponents over its localization at `(t)`.

use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::univariate::{F2Poly, UnivariateRational};

/// Nonzero invariant factors `d1 | d2 | ... | dk` of `m`; `k` is the rank.
pub fn invariant_factors(m: &Matrix<F2Poly>) -> Vec<F2Poly> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[(i, j)].is_zero())
                .min_by_key(|&(i, j)| a[(i, j)].degree());
            let Some((pi, pj)) = pivot else {
                return diag;
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            let p = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if !a[(i, t)].is_zero() {
                    let q = a[(i, t)].div_rem(&p).0;
                    a.add_row_multiple(i, t, &q);
                    clean &= a[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[(t, j)].is_zero() {
                    let q = a[(t, j)].div_rem(&p).0;
                    a.add_col_multiple(j, t, &q);
                    clean &= a[(t, j)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the submatrix
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].div_rem(&p).1.is_zero());
            match offender {
                Some((i, _)) => a.add_row_multiple(t, i, &F2Poly::one()),
                None => break,
            }
        }
        diag.push(a[(t, t)].clone());
    }
    diag
}

/// Multiplies each row by the product of its denominators (units of the
/// local ring) to land in `F2[t]`.
pub fn clear_local_denominators(m: &Matrix<UnivariateRational>) -> Matrix<F2Poly> {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        let row = m.row(i);
        let common = row.iter().fold(F2Poly::one(), |acc, x| {
            if acc.div_exact(x.denominator()).is_some() {
                acc
            } else {
                acc.times(x.denominator())
            }
        });
        for j in 0..m.cols() {
            let scale = common.div_exact(row[j].denominator()).expect("denominator divides the row multiplier");
            out[(i, j)] = row[j].numerator().times(&scale);
        }
    }
    out
}

/// `t`-adic valuations of the invariant factors of a matrix over
/// `F2[t]_(t)`, in nondecreasing order. Zeros are units; positive values
/// are torsion exponents.
pub fn local_valuations(m: &Matrix<UnivariateRational>) -> Vec<usize> {
    let mut vals: Vec<usize> = invariant_factors(&clear_local_denominators(m))
        .iter()
        .map(|d| d.valuation().expect("invariant factors are nonzero"))
        .collect();
    vals.sort_unstable();
    vals
}
