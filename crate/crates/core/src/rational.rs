//! The fraction field `Frac(R)`.

use std::fmt;

use crate::laurent::LaurentPoly;
use crate::ring::{Field, Ring};

/// A quotient `num / den` of Laurent polynomials with `den != 0`.
///
/// Not kept in lowest terms; equality is decided by cross-multiplication.
/// Monomial denominators are units of `R` and are folded into the
/// numerator, and an exactly dividing denominator is cancelled.
#[derive(Clone)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    /// Returns `None` if `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::from_poly(LaurentPoly::zero());
        }
        if let Some(q) = num.div_exact(&den) {
            return Self::from_poly(q);
        }
        Self { num, den }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    /// The element as a member of `R`, if it lies there.
    pub fn to_poly(&self) -> Option<LaurentPoly> {
        self.num.div_exact(&self.den)
    }

    /// Whether the element lies in `R' = R[1/P]`: after cancelling, the
    /// denominator is a power of `P` times a unit.
    pub fn is_p_local(&self) -> bool {
        // num/den lies in R[1/P] iff den divides num * P^k for some k; P
        // spans two units in each variable, which bounds k.
        let (lo, hi) = self.den.exponent_bounds().expect("nonzero denominator");
        let k_max = (hi[0] - lo[0]) / 2 + 1;
        let p = LaurentPoly::p();
        let mut num = self.num.clone();
        for _ in 0..=k_max {
            if num.div_exact(&self.den).is_some() {
                return true;
            }
            num = &num * &p;
        }
        false
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl Ring for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::normalized(&self.num + &other.num, self.den.clone());
        }
        Self::normalized(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }
    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::normalized(&self.num * &other.num, &self.den * &other.den)
    }
    fn weight(&self) -> usize {
        self.num.num_terms() + self.den.num_terms()
    }
}

impl Field for RationalFunction {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}
