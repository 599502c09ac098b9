//! Laurent polynomials in three variables over F2.
//!
//! This is the coefficient ring `R = F2[T1^±1, T2^±1, T3^±1]`. A polynomial
//! is a finite set of exponent triples; a triple is present exactly when its
//! coefficient is 1. Terms are kept sorted in descending lexicographic order
//! of the exponent triple, which is also the serialization order.
//!
//! Internally each exponent triple is packed into a `u64` (21 bits per
//! component, offset by 2^20) so that the packed order agrees with the
//! lexicographic order and packed addition is exponent addition.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign};
use std::str::FromStr;

use thiserror::Error;

use crate::ring::{Ring, F2};

/// Exponent vector `(e1, e2, e3)` of a monomial `T1^e1 T2^e2 T3^e3`.
pub type Exponent = [i32; 3];

/// Largest magnitude an exponent component may reach.
pub const MAX_EXPONENT: i32 = (1 << 20) - 1;

const FIELD_BITS: u32 = 21;
const OFFSET: i64 = 1 << 20;
const MASK: u64 = (1 << FIELD_BITS) - 1;
const ZERO_KEY: u64 = ((OFFSET as u64) << (2 * FIELD_BITS)) | ((OFFSET as u64) << FIELD_BITS) | OFFSET as u64;

fn in_range(e: i32) -> bool {
    (-MAX_EXPONENT..=MAX_EXPONENT).contains(&e)
}

fn pack(e: Exponent) -> u64 {
    assert!(
        e.iter().all(|&x| in_range(x)),
        "exponent {e:?} outside the supported range ±{MAX_EXPONENT}"
    );
    let f = |x: i32| (x as i64 + OFFSET) as u64;
    (f(e[0]) << (2 * FIELD_BITS)) | (f(e[1]) << FIELD_BITS) | f(e[2])
}

fn unpack(k: u64) -> Exponent {
    let f = |x: u64| ((x & MASK) as i64 - OFFSET) as i32;
    [f(k >> (2 * FIELD_BITS)), f(k >> FIELD_BITS), f(k)]
}

/// An element of `F2[T1^±1, T2^±1, T3^±1]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    // packed exponents, strictly descending
    terms: Vec<u64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial([0, 0, 0])
    }

    pub fn monomial(e: Exponent) -> Self {
        Self {
            terms: vec![pack(e)],
        }
    }

    /// The variable `T_{i+1}` for `i` in `0..3`.
    pub fn var(i: usize) -> Self {
        Self::var_pow(i, 1)
    }

    /// `T_{i+1}^k`.
    pub fn var_pow(i: usize, k: i32) -> Self {
        let mut e = [0; 3];
        e[i] = k;
        Self::monomial(e)
    }

    /// The distinguished element
    /// `P = T1 T2 T3 + T1 T2^-1 T3^-1 + T1^-1 T2 T3^-1 + T1^-1 T2^-1 T3`.
    pub fn p() -> Self {
        Self::from_exponents(instanton_exponents())
    }

    /// Builds a polynomial from a list of monomials. Repeated monomials
    /// cancel in pairs.
    pub fn from_exponents(exps: impl IntoIterator<Item = Exponent>) -> Self {
        Self::from_keys(exps.into_iter().map(pack).collect())
    }

    fn from_keys(mut keys: Vec<u64>) -> Self {
        keys.sort_unstable_by(|a, b| b.cmp(a));
        let mut terms = Vec::with_capacity(keys.len());
        let mut i = 0;
        while i < keys.len() {
            let mut j = i;
            while j < keys.len() && keys[j] == keys[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                terms.push(keys[i]);
            }
            i = j;
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == ZERO_KEY
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (descending lexicographic) order.
    pub fn terms(&self) -> impl ExactSizeIterator<Item = Exponent> + '_ {
        self.terms.iter().map(|&k| unpack(k))
    }

    /// The exponent if this is a single monomial (a unit of the ring).
    pub fn as_monomial(&self) -> Option<Exponent> {
        match self.terms.as_slice() {
            [k] => Some(unpack(*k)),
            _ => None,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    /// Componentwise minimum and maximum exponents.
    pub fn exponent_bounds(&self) -> Option<(Exponent, Exponent)> {
        let mut it = self.terms();
        let first = it.next()?;
        let (mut lo, mut hi) = (first, first);
        for e in it {
            for i in 0..3 {
                lo[i] = lo[i].min(e[i]);
                hi[i] = hi[i].max(e[i]);
            }
        }
        Some((lo, hi))
    }

    pub fn mul_monomial(&self, e: Exponent) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (lo, hi) = self.exponent_bounds().unwrap();
        for i in 0..3 {
            assert!(in_range(lo[i] + e[i]) && in_range(hi[i] + e[i]), "exponent overflow");
        }
        let shift = pack(e);
        Self {
            terms: self.terms.iter().map(|&k| k + shift - ZERO_KEY).collect(),
        }
    }

    /// Squaring is the Frobenius map: exponents double, cross terms cancel.
    pub fn square(&self) -> Self {
        let terms = self
            .terms()
            .map(|e| pack([2 * e[0], 2 * e[1], 2 * e[2]]))
            .collect();
        Self { terms }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        acc
    }

    fn check_product_range(&self, other: &Self) {
        if let (Some((alo, ahi)), Some((blo, bhi))) = (self.exponent_bounds(), other.exponent_bounds()) {
            for i in 0..3 {
                assert!(
                    in_range(alo[i] + blo[i]) && in_range(ahi[i] + bhi[i]),
                    "exponent overflow in LaurentPoly product"
                );
            }
        }
    }

    fn add_keys(a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        out
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        self.check_product_range(other);
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.terms.len() == 1 {
            let shift = small.terms[0];
            return Self {
                terms: large.terms.iter().map(|&k| k + shift - ZERO_KEY).collect(),
            };
        }
        let mut keys = Vec::with_capacity(small.terms.len() * large.terms.len());
        for &a in &small.terms {
            keys.extend(large.terms.iter().map(|&b| a + b - ZERO_KEY));
        }
        Self::from_keys(keys)
    }

    /// Exact quotient `self / d` in R, or `None` if `d` does not divide
    /// `self` (or `d` is zero).
    ///
    /// Every monomial is a unit, so leading-term division always proceeds;
    /// termination is forced by the per-variable exponent box that any
    /// quotient must lie in.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(e) = d.as_monomial() {
            return Some(self.mul_monomial([-e[0], -e[1], -e[2]]));
        }
        let (alo, ahi) = self.exponent_bounds()?;
        let (dlo, dhi) = d.exponent_bounds()?;
        let qlo = [alo[0] - dlo[0], alo[1] - dlo[1], alo[2] - dlo[2]];
        let qhi = [ahi[0] - dhi[0], ahi[1] - dhi[1], ahi[2] - dhi[2]];
        if (0..3).any(|i| qlo[i] > qhi[i]) {
            return None;
        }
        let lead_d = unpack(d.terms[0]);
        let mut rem = self.terms.clone();
        let mut quotient = Vec::new();
        while let Some(&lead) = rem.first() {
            let lead = unpack(lead);
            let q = [lead[0] - lead_d[0], lead[1] - lead_d[1], lead[2] - lead_d[2]];
            if (0..3).any(|i| q[i] < qlo[i] || q[i] > qhi[i]) {
                return None;
            }
            let shift = pack(q);
            let shifted: Vec<u64> = d.terms.iter().map(|&k| k + shift - ZERO_KEY).collect();
            rem = Self::add_keys(&rem, &shifted);
            quotient.push(shift);
        }
        Some(Self { terms: quotient })
    }

    /// Value at `T1 = T2 = T3 = 1`: the parity of the number of terms.
    pub fn eval_at_ones(&self) -> F2 {
        F2(self.terms.len() % 2 == 1)
    }

    /// Order of vanishing at the point `(1,1,1)`, i.e. the valuation with
    /// respect to the maximal ideal `(T1-1, T2-1, T3-1)`. `None` stands for
    /// +infinity (the zero polynomial).
    ///
    /// The polynomial is first multiplied by a monomial so that all
    /// exponents are nonnegative (a unit of the local ring, so the order is
    /// unchanged); then `T_i = 1 + eps_i` is expanded exactly using
    /// `(1+eps)^n = sum over bit-submasks k of n of eps^k` (Lucas).
    pub fn m_adic_order(&self) -> Option<u32> {
        let (lo, _) = self.exponent_bounds()?;
        let mut expanded: HashSet<[u32; 3]> = HashSet::new();
        for e in self.terms() {
            let shifted = [(e[0] - lo[0]) as u32, (e[1] - lo[1]) as u32, (e[2] - lo[2]) as u32];
            for a in submasks(shifted[0]) {
                for b in submasks(shifted[1]) {
                    for c in submasks(shifted[2]) {
                        let k = [a, b, c];
                        if !expanded.remove(&k) {
                            expanded.insert(k);
                        }
                    }
                }
            }
        }
        expanded.iter().map(|k| k[0] + k[1] + k[2]).min()
    }
}

fn submasks(n: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(n);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & n) };
        Some(cur)
    })
}

fn instanton_exponents() -> [Exponent; 4] {
    [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]
}

/// The four instanton monomials `T1T2T3, T1T2^-1T3^-1, T1^-1T2T3^-1,
/// T1^-1T2^-1T3`, whose sum is `P`. Returned in canonical term order; no
/// particular numbering is implied.
pub fn instanton_contributions() -> [LaurentPoly; 4] {
    instanton_exponents().map(LaurentPoly::monomial)
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn is_one(&self) -> bool {
        LaurentPoly::is_one(self)
    }
    fn plus(&self, other: &Self) -> Self {
        Self {
            terms: Self::add_keys(&self.terms, &other.terms),
        }
    }
    fn times(&self, other: &Self) -> Self {
        self.mul_impl(other)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.plus(rhs)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        self.plus(&rhs)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.plus(rhs);
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_impl(rhs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        self.mul_impl(&rhs)
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.mul_impl(rhs);
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, e) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if e == [0, 0, 0] {
                write!(f, "1")?;
                continue;
            }
            let mut first = true;
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "T{}", i + 1)?;
                if x != 1 {
                    write!(f, "^{x}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Syntax error in a polynomial string; `position` is a byte offset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at byte {position}: {message}")]
pub struct PolyParseError {
    pub position: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, PolyParseError> {
        Err(PolyParseError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<i32, PolyParseError> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if digits == self.pos {
            return self.err("expected an integer exponent");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match text.parse::<i32>() {
            Ok(v) if in_range(v) => Ok(v),
            _ => {
                self.pos = start;
                self.err(format!("exponent {text} out of range ±{MAX_EXPONENT}"))
            }
        }
    }

    // factor := "T" ("1"|"2"|"3") ("^" integer)? | "1"
    fn factor(&mut self, acc: &mut Exponent) -> Result<(), PolyParseError> {
        match self.peek() {
            Some(b'T') => {
                self.pos += 1;
                let var = match self.peek() {
                    Some(c @ b'1'..=b'3') => (c - b'1') as usize,
                    _ => return self.err("expected variable index 1, 2 or 3 after 'T'"),
                };
                self.pos += 1;
                self.skip_ws();
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    self.integer()?
                } else {
                    1
                };
                let total = acc[var] as i64 + exp as i64;
                if total.abs() > MAX_EXPONENT as i64 {
                    return self.err("exponent out of range");
                }
                acc[var] = total as i32;
                Ok(())
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err("expected a factor 'T1', 'T2', 'T3' or '1'"),
        }
    }

    fn term(&mut self) -> Result<Exponent, PolyParseError> {
        let mut e = [0; 3];
        self.skip_ws();
        self.factor(&mut e)?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                self.factor(&mut e)?;
            } else {
                return Ok(e);
            }
        }
    }

    fn poly(&mut self) -> Result<LaurentPoly, PolyParseError> {
        self.skip_ws();
        if self.peek() == Some(b'0') {
            self.pos += 1;
            self.skip_ws();
            if self.pos != self.src.len() {
                return self.err("unexpected input after '0'");
            }
            return Ok(LaurentPoly::zero());
        }
        let mut exps = vec![self.term()?];
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    exps.push(self.term()?);
                }
                Some(_) => return self.err("expected '+', '*' or end of input"),
            }
        }
        Ok(LaurentPoly::from_exponents(exps))
    }
}

impl FromStr for LaurentPoly {
    type Err = PolyParseError;

    /// Parses the text form produced by `Display`. Terms may appear in any
    /// order; repeated terms cancel in pairs.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
        .poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: usize) -> LaurentPoly {
        LaurentPoly::var(i)
    }

    #[test]
    fn p_prints_canonically() {
        assert_eq!(
            LaurentPoly::p().to_string(),
            "T1*T2*T3 + T1*T2^-1*T3^-1 + T1^-1*T2*T3^-1 + T1^-1*T2^-1*T3"
        );
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::one().to_string(), "1");
    }

    #[test]
    fn p_plus_p_is_zero() {
        let p = LaurentPoly::p();
        assert!((&p + &p).is_zero());
    }

    #[test]
    fn two_variables_sum() {
        let s = &t(0) + &t(1);
        assert_eq!(s.terms().collect::<Vec<_>>(), vec![[1, 0, 0], [0, 1, 0]]);
    }

    #[test]
    fn units() {
        let inv = LaurentPoly::var_pow(0, -1);
        assert!((&t(0) * &inv).is_one());
        assert_eq!(&LaurentPoly::p() * &LaurentPoly::one(), LaurentPoly::p());
    }

    #[test]
    fn instanton_monomials_sum_to_p() {
        let mons = instanton_contributions();
        let sum = mons.iter().fold(LaurentPoly::zero(), |acc, m| &acc + m);
        assert_eq!(sum, LaurentPoly::p());
        for m in &mons {
            let e = m.as_monomial().unwrap();
            assert!(e.iter().all(|x| x.abs() == 1));
        }
        let prod = mons.iter().fold(LaurentPoly::one(), |acc, m| &acc * m);
        assert!(prod.is_one());
    }

    #[test]
    fn eval_at_ones_examples() {
        assert_eq!(LaurentPoly::p().eval_at_ones(), F2::ZERO);
        assert_eq!(LaurentPoly::one().eval_at_ones(), F2::ONE);
        assert_eq!((&(&t(0) + &t(1)) + &t(2)).eval_at_ones(), F2::ONE);
    }

    #[test]
    fn m_adic_order_examples() {
        assert_eq!(LaurentPoly::p().m_adic_order(), Some(4));
        assert_eq!((&LaurentPoly::one() + &t(0)).m_adic_order(), Some(1));
        assert_eq!(LaurentPoly::zero().m_adic_order(), None);
        assert_eq!(LaurentPoly::var_pow(2, -7).m_adic_order(), Some(0));
    }

    #[test]
    fn exact_division() {
        let p = LaurentPoly::p();
        let q = &(&t(0) + &LaurentPoly::var_pow(1, -2)) + &LaurentPoly::one();
        let prod = &p * &q;
        assert_eq!(prod.div_exact(&p), Some(q.clone()));
        assert_eq!(prod.div_exact(&q), Some(p.clone()));
        assert_eq!(q.div_exact(&p), None);
        assert_eq!(p.div_exact(&LaurentPoly::zero()), None);
        // 1 + T1 does not divide 1 + T2
        let a = &LaurentPoly::one() + &t(0);
        let b = &LaurentPoly::one() + &t(1);
        assert_eq!(b.div_exact(&a), None);
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let p: LaurentPoly = LaurentPoly::p().to_string().parse().unwrap();
        assert_eq!(p, LaurentPoly::p());
        let q: LaurentPoly = "T3 + 1 + T1^2*T1^-1 + T3".parse().unwrap();
        assert_eq!(q, &LaurentPoly::one() + &t(0));
        assert_eq!("0".parse::<LaurentPoly>().unwrap(), LaurentPoly::zero());

        let err = "T1 + T4".parse::<LaurentPoly>().unwrap_err();
        assert_eq!(err.position, 6);
        let err = "T1^ + T2".parse::<LaurentPoly>().unwrap_err();
        assert_eq!(err.position, 4);
        assert!("T1 T2".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("T1^99999999".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let p = LaurentPoly::p();
        let mut acc = LaurentPoly::one();
        for k in 0..6 {
            assert_eq!(p.pow(k), acc);
            acc = &acc * &p;
        }
    }
}
