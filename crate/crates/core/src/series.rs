//! Substitutions of `R` along lines through the point `(1,1,1)`.
//!
//! The symbolic line `T_i -> 1 + z_i t` lands in power series in `t` whose
//! coefficients are polynomials in `z1, z2, z3`; these are truncated at a
//! fixed order. The two concrete lines `(1,1,1)` and `(1,1,0)` land in the
//! local ring `F2[t]_(t)` exactly.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::ring::Ring;
use crate::univariate::{F2Poly, UnivariateRational};

/// Default truncation order for symbolic substitution.
pub const DEFAULT_TRUNCATION: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series is zero through t^{order}; a higher truncation order is needed to find the leading term")]
    TruncationTooLow { order: usize },
    #[error("constant term is not 1, series is not invertible")]
    NotInvertible,
    #[error("unknown direction {0:?}; expected 1,1,1 or 1,1,0")]
    UnknownDirection(String),
}

/// A power series in `t` modulo `t^(order+1)`, with coefficients in
/// `F2[z1, z2, z3]` (stored as [`LaurentPoly`] with nonnegative exponents,
/// `T_i` standing for `z_i`).
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<LaurentPoly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![LaurentPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = LaurentPoly::one();
        s
    }

    /// `1 + z_i t`.
    pub fn line_coordinate(i: usize, order: usize) -> Self {
        let mut s = Self::one(order);
        if order >= 1 {
            s.coeffs[1] = LaurentPoly::var(i);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficient(&self, k: usize) -> &LaurentPoly {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_zero)
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order());
        Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn times(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order());
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += &(a * b);
                }
            }
        }
        out
    }

    /// Inverse of a series with constant term 1.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::NotInvertible);
        }
        let n = self.order();
        let mut inv = Self::zero(n);
        inv.coeffs[0] = LaurentPoly::one();
        // char 2: inv_k = sum_{j=1..k} c_j inv_{k-j}
        for k in 1..=n {
            let mut acc = LaurentPoly::zero();
            for j in 1..=k {
                acc += &(&self.coeffs[j] * &inv.coeffs[k - j]);
            }
            inv.coeffs[k] = acc;
        }
        Ok(inv)
    }

    pub fn pow(&self, k: i32) -> Result<Self, SeriesError> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.order());
        for _ in 0..k.unsigned_abs() {
            acc = acc.times(&base);
        }
        Ok(acc)
    }

    /// Lowest `k` with a nonzero coefficient of `t^k`, with that coefficient.
    pub fn leading_term(&self) -> Result<(usize, &LaurentPoly), SeriesError> {
        self.coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .ok_or(SeriesError::TruncationTooLow { order: self.order() })
    }
}

/// Renders a polynomial in `z1, z2, z3`.
pub fn format_z(p: &LaurentPoly) -> String {
    p.to_string().replace('T', "z")
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*t^{k}", format_z(c))?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({self})")
    }
}

/// Image of `p` under `T_i -> 1 + z_i t`, truncated at `t^order`.
pub fn substitute_symbolic(p: &LaurentPoly, order: usize) -> TruncatedSeries {
    let lines: Vec<TruncatedSeries> = (0..3).map(|i| TruncatedSeries::line_coordinate(i, order)).collect();
    let mut total = TruncatedSeries::zero(order);
    for e in p.terms() {
        let mut term = TruncatedSeries::one(order);
        for (i, line) in lines.iter().enumerate() {
            // 1 + z t always has constant term 1
            term = term.times(&line.pow(e[i]).expect("unit constant term"));
        }
        total = total.plus(&term);
    }
    total
}

/// A concrete line `T_i -> 1 + c_i t` through `(1,1,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    /// `(1,1,1)`: every `T_i -> 1 + t`.
    #[serde(rename = "1,1,1")]
    Diagonal,
    /// `(1,1,0)`: `T1, T2 -> 1 + t`, `T3 -> 1`.
    #[serde(rename = "1,1,0")]
    Partial,
}

impl Direction {
    pub const ALL: [Direction; 2] = [Direction::Diagonal, Direction::Partial];

    pub fn coefficients(self) -> [i32; 3] {
        match self {
            Direction::Diagonal => [1, 1, 1],
            Direction::Partial => [1, 1, 0],
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coefficients();
        write!(f, "{},{},{}", c[0], c[1], c[2])
    }
}

impl FromStr for Direction {
    type Err = SeriesError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.trim_matches(|c| c == '(' || c == ')') {
            "1,1,1" => Ok(Direction::Diagonal),
            "1,1,0" => Ok(Direction::Partial),
            _ => Err(SeriesError::UnknownDirection(s.to_string())),
        }
    }
}

/// Exact image of `p` in `F2[t]_(t)` along a concrete line.
///
/// A monomial `T^e` maps to `(1+t)^(c . e)`; the whole sum is brought over
/// a common denominator that is a power of `1 + t`.
pub fn substitute_line(p: &LaurentPoly, direction: Direction) -> UnivariateRational {
    let c = direction.coefficients();
    let powers: Vec<i32> = p.terms().map(|e| c[0] * e[0] + c[1] * e[1] + c[2] * e[2]).collect();
    let Some(&min) = powers.iter().min() else {
        return UnivariateRational::zero();
    };
    let base = F2Poly::one_plus_t();
    let num = powers
        .iter()
        .fold(F2Poly::zero(), |acc, &k| acc.plus(&base.pow((k - min) as u32)));
    if min >= 0 {
        UnivariateRational::from_poly(num.times(&base.pow(min as u32)))
    } else {
        UnivariateRational::new(num, base.pow((-min) as u32)).expect("(1+t)^k is a unit")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_symbolic_leading_form() {
        let s = substitute_symbolic(&LaurentPoly::p(), DEFAULT_TRUNCATION);
        let (k, lead) = s.leading_term().unwrap();
        assert_eq!(k, 4);
        let expected: LaurentPoly = "T1^2*T2^2 + T1^2*T3^2 + T2^2*T3^2".parse().unwrap();
        assert_eq!(lead, &expected);
    }

    #[test]
    fn low_truncation_is_rejected() {
        let s = substitute_symbolic(&LaurentPoly::p(), 3);
        assert_eq!(s.leading_term(), Err(SeriesError::TruncationTooLow { order: 3 }));
    }

    #[test]
    fn inverse_of_line_coordinate() {
        let x = TruncatedSeries::line_coordinate(1, 5);
        let inv = x.inverse().unwrap();
        assert_eq!(x.times(&inv), TruncatedSeries::one(5));
        assert_eq!(inv.coefficient(3), &LaurentPoly::var_pow(1, 3));
        let mut bad = TruncatedSeries::zero(2);
        assert_eq!(bad.inverse(), Err(SeriesError::NotInvertible));
        bad.coeffs[0] = LaurentPoly::var(0);
        assert_eq!(bad.inverse(), Err(SeriesError::NotInvertible));
    }

    #[test]
    fn p_on_concrete_lines() {
        let one_plus_t = F2Poly::one_plus_t();
        let d = substitute_line(&LaurentPoly::p(), Direction::Diagonal);
        assert_eq!(d.numerator(), &F2Poly::monomial(4));
        assert_eq!(d.denominator(), &one_plus_t);
        let p = substitute_line(&LaurentPoly::p(), Direction::Partial);
        assert_eq!(p.numerator(), &F2Poly::monomial(4));
        assert_eq!(p.denominator(), &one_plus_t.pow(2));
    }

    #[test]
    fn direction_parsing() {
        assert_eq!("1,1,1".parse::<Direction>().unwrap(), Direction::Diagonal);
        assert_eq!(" (1, 1, 0) ".parse::<Direction>().unwrap(), Direction::Partial);
        assert!("1,0,1".parse::<Direction>().is_err());
        assert_eq!(Direction::Partial.to_string(), "1,1,0");
    }
}
