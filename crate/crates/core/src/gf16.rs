//! The finite field with 2^16 elements, used for randomized rank checks.

use std::fmt;
use std::sync::OnceLock;

use crate::laurent::LaurentPoly;
use crate::ring::{Field, Ring};

/// x^16 + x^12 + x^3 + x + 1, primitive over F2.
const MODULUS: u32 = 0x1100B;
const ORDER: u32 = 65535;

struct Tables {
    exp: Vec<u16>, // doubled so exp[a + b] needs no reduction
    log: Vec<u32>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut exp = vec![0u16; 2 * ORDER as usize];
        let mut log = vec![0u32; 1 << 16];
        let mut x: u32 = 1;
        for i in 0..ORDER {
            exp[i as usize] = x as u16;
            exp[(i + ORDER) as usize] = x as u16;
            log[x as usize] = i;
            x <<= 1;
            if x & 0x10000 != 0 {
                x ^= MODULUS;
            }
        }
        Tables { exp, log }
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf16(pub u16);

impl Gf16 {
    fn log(self) -> u32 {
        tables().log[self.0 as usize]
    }

    fn from_log(l: u64) -> Self {
        Gf16(tables().exp[(l % ORDER as u64) as usize])
    }

    /// `self^k` for any integer `k`; `self` must be nonzero when `k < 0`.
    pub fn pow(self, k: i64) -> Self {
        if self.0 == 0 {
            assert!(k >= 0, "negative power of zero");
            return if k == 0 { Gf16(1) } else { Gf16(0) };
        }
        let l = (self.log() as i64 * k).rem_euclid(ORDER as i64);
        Self::from_log(l as u64)
    }
}

impl fmt::Debug for Gf16 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf16({:#06x})", self.0)
    }
}

impl Ring for Gf16 {
    fn zero() -> Self {
        Gf16(0)
    }
    fn one() -> Self {
        Gf16(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn plus(&self, other: &Self) -> Self {
        Gf16(self.0 ^ other.0)
    }
    fn times(&self, other: &Self) -> Self {
        if self.0 == 0 || other.0 == 0 {
            return Gf16(0);
        }
        let t = tables();
        Gf16(t.exp[(t.log[self.0 as usize] + t.log[other.0 as usize]) as usize])
    }
}

impl Field for Gf16 {
    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(Self::from_log((ORDER - self.log()) as u64))
        }
    }
}

/// Evaluates `p` at a point with nonzero coordinates.
pub fn eval_laurent(p: &LaurentPoly, point: [Gf16; 3]) -> Gf16 {
    assert!(point.iter().all(|x| x.0 != 0), "Laurent evaluation needs nonzero coordinates");
    let logs = point.map(|x| x.log() as i64);
    p.terms().fold(Gf16(0), |acc, e| {
        let l = (0..3).map(|i| logs[i] * e[i] as i64).sum::<i64>();
        acc.plus(&Gf16::from_log(l.rem_euclid(ORDER as i64) as u64))
    })
}
