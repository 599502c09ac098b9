//! Minimal commutative-ring abstractions shared by the matrix code.
//!
//! Every ring in this crate has characteristic 2, so subtraction is
//! addition and there is no `neg`.

use std::fmt;

/// A commutative ring of characteristic 2.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Rough size of the element, used to pick cheap pivots.
    fn weight(&self) -> usize {
        0
    }
}

/// A field of characteristic 2.
pub trait Field: Ring {
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;
}

/// The prime field with two elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct F2(pub bool);

impl F2 {
    pub const ZERO: F2 = F2(false);
    pub const ONE: F2 = F2(true);
}

impl fmt::Debug for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl fmt::Display for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl Ring for F2 {
    fn zero() -> Self {
        F2(false)
    }
    fn one() -> Self {
        F2(true)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn plus(&self, other: &Self) -> Self {
        F2(self.0 ^ other.0)
    }
    fn times(&self, other: &Self) -> Self {
        F2(self.0 & other.0)
    }
}

impl Field for F2 {
    fn inverse(&self) -> Option<Self> {
        self.0.then_some(*self)
    }
}
