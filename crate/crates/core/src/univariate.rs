//! Univariate polynomials over F2 in a variable `t`, and the local ring
//! `F2[t]` localized at `(t)`.

use std::fmt;

use crate::ring::Ring;

/// A polynomial in `F2[t]`, bit `i` holding the coefficient of `t^i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct F2Poly {
    limbs: Vec<u64>,
}

impl F2Poly {
    pub fn zero() -> Self {
        Self { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { limbs: vec![1] }
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut limbs = vec![0; k / 64 + 1];
        limbs[k / 64] = 1 << (k % 64);
        Self { limbs }
    }

    /// `1 + t`.
    pub fn one_plus_t() -> Self {
        Self { limbs: vec![0b11] }
    }

    pub fn from_coefficients(bits: &[bool]) -> Self {
        let mut p = Self {
            limbs: vec![0; bits.len().div_ceil(64)],
        };
        for (i, &b) in bits.iter().enumerate() {
            if b {
                p.limbs[i / 64] |= 1 << (i % 64);
            }
        }
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        let last = *self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    /// `t`-adic valuation: the exponent of the lowest nonzero term.
    pub fn valuation(&self) -> Option<usize> {
        self.limbs
            .iter()
            .enumerate()
            .find(|(_, &l)| l != 0)
            .map(|(i, l)| i * 64 + l.trailing_zeros() as usize)
    }

    pub fn coefficient(&self, k: usize) -> bool {
        self.limbs.get(k / 64).is_some_and(|l| (l >> (k % 64)) & 1 == 1)
    }

    pub fn constant_term(&self) -> bool {
        self.coefficient(0)
    }

    fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (words, bits) = (k / 64, k % 64);
        let mut limbs = vec![0u64; self.limbs.len() + words + 1];
        for (i, &l) in self.limbs.iter().enumerate() {
            limbs[i + words] |= l << bits;
            if bits > 0 {
                limbs[i + words + 1] |= l >> (64 - bits);
            }
        }
        let mut p = Self { limbs };
        p.normalize();
        p
    }

    /// Divides out `t^k`; the low `k` coefficients must be zero.
    pub fn shr(&self, k: usize) -> Self {
        let (words, bits) = (k / 64, k % 64);
        if words >= self.limbs.len() {
            return Self::zero();
        }
        let src = &self.limbs[words..];
        let mut limbs = vec![0u64; src.len()];
        for i in 0..src.len() {
            limbs[i] = src[i] >> bits;
            if bits > 0 && i + 1 < src.len() {
                limbs[i] |= src[i + 1] << (64 - bits);
            }
        }
        let mut p = Self { limbs };
        p.normalize();
        p
    }

    fn xor_in_place(&mut self, other: &Self) {
        if other.limbs.len() > self.limbs.len() {
            self.limbs.resize(other.limbs.len(), 0);
        }
        for (a, b) in self.limbs.iter_mut().zip(&other.limbs) {
            *a ^= b;
        }
        self.normalize();
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.times(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            rem.xor_in_place(&d.shl(shift));
            quot.xor_in_place(&Self::monomial(shift));
        }
        (quot, rem)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }
}

impl Ring for F2Poly {
    fn zero() -> Self {
        F2Poly::zero()
    }
    fn one() -> Self {
        F2Poly::one()
    }
    fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut p = self.clone();
        p.xor_in_place(other);
        p
    }
    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut limbs = vec![0u64; self.limbs.len() + other.limbs.len()];
        for (i, &a) in self.limbs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.limbs.iter().enumerate() {
                let (lo, hi) = clmul(a, b);
                limbs[i + j] ^= lo;
                limbs[i + j + 1] ^= hi;
            }
        }
        let mut p = Self { limbs };
        p.normalize();
        p
    }
}

/// Carry-less 64x64 -> 128 multiplication.
fn clmul(a: u64, b: u64) -> (u64, u64) {
    let mut lo = 0u64;
    let mut hi = 0u64;
    let mut bb = b;
    while bb != 0 {
        let i = bb.trailing_zeros();
        lo ^= a << i;
        if i > 0 {
            hi ^= a >> (64 - i);
        }
        bb &= bb - 1;
    }
    (lo, hi)
}

impl fmt::Display for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(deg) = self.degree() else {
            return write!(f, "0");
        };
        let mut first = true;
        for k in (0..=deg).rev().filter(|&k| self.coefficient(k)) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "1")?,
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Poly({self})")
    }
}

/// An element `num / den` of `F2[t]` localized at `(t)`: the denominator
/// has constant term 1, so it is a unit of the local ring. Kept in lowest
/// terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnivariateRational {
    num: F2Poly,
    den: F2Poly,
}

impl UnivariateRational {
    /// Returns `None` if `den` vanishes at `t = 0`.
    pub fn new(num: F2Poly, den: F2Poly) -> Option<Self> {
        if !den.constant_term() {
            return None;
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_zero() || g == F2Poly::one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        if num.is_zero() {
            return Some(Self::zero());
        }
        Some(Self { num, den })
    }

    pub fn from_poly(p: F2Poly) -> Self {
        Self {
            num: p,
            den: F2Poly::one(),
        }
    }

    pub fn numerator(&self) -> &F2Poly {
        &self.num
    }

    pub fn denominator(&self) -> &F2Poly {
        &self.den
    }

    /// `t`-adic valuation; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.num.valuation()
    }

    /// Value at `t = 0` (the residue field is F2).
    pub fn residue(&self) -> bool {
        self.num.constant_term()
    }
}

impl Ring for UnivariateRational {
    fn zero() -> Self {
        Self::from_poly(F2Poly::zero())
    }
    fn one() -> Self {
        Self::from_poly(F2Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        let num = self.num.times(&other.den).plus(&other.num.times(&self.den));
        Self::new(num, self.den.times(&other.den)).unwrap()
    }
    fn times(&self, other: &Self) -> Self {
        Self::new(self.num.times(&other.num), self.den.times(&other.den)).unwrap()
    }
}

impl fmt::Display for UnivariateRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == F2Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for UnivariateRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnivariateRational({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_of_one_plus_t() {
        let x = F2Poly::one_plus_t();
        assert_eq!(x.pow(4), F2Poly::one().plus(&F2Poly::monomial(4)));
        assert_eq!(x.pow(4).to_string(), "t^4 + 1");
    }

    #[test]
    fn wide_multiplication() {
        let a = F2Poly::monomial(70).plus(&F2Poly::one());
        let b = F2Poly::monomial(63).plus(&F2Poly::monomial(1));
        let p = a.times(&b);
        assert_eq!(p.degree(), Some(133));
        assert_eq!(p.valuation(), Some(1));
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a));
        assert_eq!(p.shr(1).valuation(), Some(0));
    }

    #[test]
    fn gcd_and_rational_reduction() {
        let x = F2Poly::one_plus_t();
        let t4 = F2Poly::monomial(4);
        // ((1+t)^4 + 1) / (1+t) = t^4 / (1+t), already reduced
        let r = UnivariateRational::new(x.pow(4).plus(&F2Poly::one()), x.clone()).unwrap();
        assert_eq!(r.numerator(), &t4);
        assert_eq!(r.valuation(), Some(4));
        let s = UnivariateRational::new(t4.times(&x), x.pow(3)).unwrap();
        assert_eq!(s.denominator(), &x.pow(2));
        assert!(UnivariateRational::new(F2Poly::one(), F2Poly::monomial(1)).is_none());
    }

    #[test]
    fn div_rem_identity() {
        let a = F2Poly::from_coefficients(&[true, false, true, true, false, true, true]);
        let d = F2Poly::from_coefficients(&[true, true, true]);
        let (q, r) = a.div_rem(&d);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(q.times(&d).plus(&r), a);
    }
}
