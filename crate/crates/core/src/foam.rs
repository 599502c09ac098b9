//! Evaluations of closed dotted foams: the sphere `S(m)` and the theta
//! foam `Θ(m1, m2, m3)`, both with values in `R`.

use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::matrix::Matrix;

/// Largest dot count accepted from the command line.
pub const MAX_CLI_DOTS: u32 = 64;

/// Dot triples `(0, m, n)`, `m in {0,1}`, `n in {0,1,2}`, indexing the
/// standard basis of the theta web's module.
pub const THETA_BASIS: [[u32; 3]; 6] = [[0, 0, 0], [0, 0, 1], [0, 0, 2], [0, 1, 0], [0, 1, 1], [0, 1, 2]];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoamError {
    #[error("dot triple {0:?} is outside the half-theta family (0, m, n) with m <= 1, n <= 2")]
    OutsideBasisFamily([u32; 3]),
    #[error("{0} dots exceeds the limit of {MAX_CLI_DOTS}")]
    TooManyDots(u32),
}

/// `⟨S(m)⟩`: zero for `m < 2`, one for `m = 2`, and `P ⟨S(m-2)⟩` above.
pub fn eval_sphere(m: u32) -> LaurentPoly {
    if m < 2 {
        return LaurentPoly::zero();
    }
    // start from S(2) = 1 or S(1) = 0 and apply the recursion
    let (mut value, mut k) = if m.is_multiple_of(2) { (LaurentPoly::one(), 2) } else { (LaurentPoly::zero(), 1) };
    let p = LaurentPoly::p();
    while k < m {
        value = &value * &p;
        k += 2;
    }
    value
}

/// `⟨Θ(m1, m2, m3)⟩`, by canonical reduction.
///
/// Sort descending; the value vanishes if every entry is positive, or the
/// dot sum is even or below three; the triple `(2,1,0)` evaluates to 1;
/// otherwise the largest entry is at least 3 and is lowered by two at the
/// cost of a factor `P`.
pub fn eval_theta(dots: [u32; 3]) -> LaurentPoly {
    let mut d = dots;
    let mut p_power = 0u32;
    loop {
        d.sort_unstable_by(|a, b| b.cmp(a));
        let sum: u32 = d.iter().sum();
        if d[2] > 0 || sum.is_multiple_of(2) || sum < 3 {
            return LaurentPoly::zero();
        }
        if d == [2, 1, 0] {
            return LaurentPoly::p().pow(p_power);
        }
        debug_assert!(d[0] >= 3);
        d[0] -= 2;
        p_power += 1;
    }
}

fn add_dots(a: [u32; 3], b: [u32; 3]) -> [u32; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn check_family(d: [u32; 3]) -> Result<(), FoamError> {
    if d[0] == 0 && d[1] <= 1 && d[2] <= 2 {
        Ok(())
    } else {
        Err(FoamError::OutsideBasisFamily(d))
    }
}

/// Pairing between dotted half-thetas: entry `(i, j)` is
/// `⟨Θ(left[i] + right[j])⟩`.
pub fn pairing_matrix(left: &[[u32; 3]], right: &[[u32; 3]]) -> Result<Matrix<LaurentPoly>, FoamError> {
    for &d in left.iter().chain(right) {
        check_family(d)?;
    }
    Ok(Matrix::from_fn(left.len(), right.len(), |i, j| {
        eval_theta(add_dots(left[i], right[j]))
    }))
}

/// Pairing after one extra dot on disk `edge` (0, 1 or 2): entry `(i, j)`
/// is `⟨Θ(left[i] + right[j] + e_edge)⟩`. This is the pairing of `left`
/// against `u_edge` applied to `right`.
pub fn dotted_pairing_matrix(left: &[[u32; 3]], right: &[[u32; 3]], edge: usize) -> Result<Matrix<LaurentPoly>, FoamError> {
    for &d in left.iter().chain(right) {
        check_family(d)?;
    }
    let mut extra = [0; 3];
    extra[edge] = 1;
    Ok(Matrix::from_fn(left.len(), right.len(), |i, j| {
        eval_theta(add_dots(add_dots(left[i], right[j]), extra))
    }))
}

/// Rejects dot counts above [`MAX_CLI_DOTS`].
pub fn check_dot_limit(m: u32) -> Result<u32, FoamError> {
    if m > MAX_CLI_DOTS {
        Err(FoamError::TooManyDots(m))
    } else {
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Independent evaluator: applies the reduction `m_i -> m_i - 2` to
    /// every entry `>= 3` in every possible order, and the vanishing and
    /// base rules only to triples with all entries `<= 2`. Returns the set
    /// of values reached.
    fn all_reduction_orders(d: [u32; 3]) -> HashSet<LaurentPoly> {
        let big: Vec<usize> = (0..3).filter(|&i| d[i] >= 3).collect();
        if big.is_empty() {
            let sum: u32 = d.iter().sum();
            let v = if d.iter().all(|&x| x > 0) || sum.is_multiple_of(2) || sum < 3 {
                LaurentPoly::zero()
            } else {
                let mut s = d;
                s.sort_unstable();
                assert_eq!(s, [0, 1, 2]);
                LaurentPoly::one()
            };
            return HashSet::from([v]);
        }
        let p = LaurentPoly::p();
        let mut out = HashSet::new();
        for i in big {
            let mut e = d;
            e[i] -= 2;
            for v in all_reduction_orders(e) {
                out.insert(&p * &v);
            }
        }
        out
    }

    #[test]
    fn sphere_values() {
        assert!(eval_sphere(0).is_zero());
        assert!(eval_sphere(1).is_zero());
        assert!(eval_sphere(2).is_one());
        assert!(eval_sphere(5).is_zero());
        assert_eq!(eval_sphere(6), LaurentPoly::p().pow(2));
    }

    #[test]
    fn sphere_recursion_and_closed_form() {
        let p = LaurentPoly::p();
        for m in 1..40 {
            assert_eq!(eval_sphere(m + 2), &p * &eval_sphere(m), "m = {m}");
        }
        for k in 1..20 {
            assert_eq!(eval_sphere(2 * k), p.pow(k - 1));
            assert!(eval_sphere(2 * k + 1).is_zero());
        }
    }

    #[test]
    fn theta_values() {
        assert!(eval_theta([0, 1, 2]).is_one());
        assert!(eval_theta([1, 1, 1]).is_zero());
        assert_eq!(eval_theta([0, 3, 4]), LaurentPoly::p().pow(2));
    }

    #[test]
    fn theta_symmetric_and_confluent() {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for a in 0..=8 {
            for b in 0..=8 {
                for c in 0..=8 {
                    let d = [a, b, c];
                    let v = eval_theta(d);
                    for p in perms {
                        assert_eq!(eval_theta([d[p[0]], d[p[1]], d[p[2]]]), v);
                    }
                    let all = all_reduction_orders(d);
                    assert_eq!(all.len(), 1, "{d:?} is not confluent");
                    assert!(all.contains(&v));
                    if (a + b + c) % 2 == 0 {
                        assert!(v.is_zero());
                    }
                    if !v.is_zero() {
                        let k = (a + b + c - 3) / 2;
                        assert_eq!(v, LaurentPoly::p().pow(k));
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_entries() {
        let m = pairing_matrix(&THETA_BASIS, &THETA_BASIS).unwrap();
        assert!(m[(0, 5)].is_one());
        assert!(m[(5, 5)].is_zero());
        assert!(m.leibniz_determinant().is_one());
        assert!(pairing_matrix(&[[1, 0, 0]], &THETA_BASIS).is_err());
    }

    #[test]
    fn dot_limit() {
        assert_eq!(check_dot_limit(64), Ok(64));
        assert_eq!(check_dot_limit(65), Err(FoamError::TooManyDots(65)));
    }
}
