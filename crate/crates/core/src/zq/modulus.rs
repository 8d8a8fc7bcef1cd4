use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient ring `Z/q` for a prime power `q = p^s <= 2^16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Modulus {
    q: u32,
    p: u32,
    s: u32,
}

impl TryFrom<u32> for Modulus {
    type Error = Error;
    fn try_from(q: u32) -> Result<Self> {
        Modulus::new(q)
    }
}

impl From<Modulus> for u32 {
    fn from(m: Modulus) -> u32 {
        m.q
    }
}

impl Modulus {
    pub const MAX: u32 = 1 << 16;

    pub fn new(q: u32) -> Result<Self> {
        if !(2..=Self::MAX).contains(&q) {
            return Err(Error::InvalidModulus(q as u64));
        }
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
        let (mut rest, mut s) = (q, 0);
        while rest % p == 0 {
            rest /= p;
            s += 1;
        }
        if rest != 1 {
            return Err(Error::InvalidModulus(q as u64));
        }
        Ok(Modulus { q, p, s })
    }

    #[inline]
    pub fn q(self) -> u32 {
        self.q
    }
    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }
    #[inline]
    pub fn s(self) -> u32 {
        self.s
    }
    /// 2 when `p = 2`, otherwise 1.
    #[inline]
    pub fn delta(self) -> u32 {
        if self.p == 2 {
            2
        } else {
            1
        }
    }

    /// `p^k` as an integer, for `k <= s`.
    #[inline]
    pub fn p_pow(self, k: u32) -> u32 {
        self.p.pow(k)
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.q as i64) as u32
    }
    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }
    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }
    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }
    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    /// p-adic valuation of a residue; `s` for zero.
    pub fn valuation(self, a: u32) -> u32 {
        if a == 0 {
            return self.s;
        }
        let (mut a, mut k) = (a, 0);
        while a % self.p == 0 {
            a /= self.p;
            k += 1;
        }
        k
    }

    /// Inverse of a unit.
    pub fn unit_inverse(self, u: u32) -> Option<u32> {
        if u.is_multiple_of(self.p) {
            return None;
        }
        let (mut r0, mut r1) = (self.q as i64, u as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let quo = r0 / r1;
            (r0, r1) = (r1, r0 - quo * r1);
            (t0, t1) = (t1, t0 - quo * t1);
        }
        Some(self.reduce(t0))
    }

    /// Writes a nonzero residue as `unit * p^k`, returning `(unit, k)`.
    pub fn split(self, a: u32) -> (u32, u32) {
        let k = self.valuation(a);
        (a / self.p_pow(k), k)
    }

    /// Some `x` with `b * x = a`, if one exists.
    pub fn divide(self, a: u32, b: u32) -> Option<u32> {
        if a == 0 {
            return Some(0);
        }
        if b == 0 {
            return None;
        }
        let (u, k) = self.split(b);
        if self.valuation(a) < k {
            return None;
        }
        Some(self.mul(a / self.p_pow(k), self.unit_inverse(u).unwrap()))
    }

    /// Additive order of a residue.
    pub fn order_of(self, a: u32) -> u32 {
        self.q / self.p_pow(self.valuation(a).min(self.s))
    }

    pub fn scalar(self, value: i64) -> ZqScalar {
        ZqScalar {
            value: self.reduce(value),
            modulus: self,
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}", self.q)
    }
}

/// A residue together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZqScalar {
    value: u32,
    modulus: Modulus,
}

impl ZqScalar {
    pub fn new(value: i64, modulus: Modulus) -> Self {
        modulus.scalar(value)
    }
    pub fn value(self) -> u32 {
        self.value
    }
    pub fn modulus(self) -> Modulus {
        self.modulus
    }
    pub fn is_zero(self) -> bool {
        self.value == 0
    }
    pub fn inverse(self) -> Option<ZqScalar> {
        self.modulus.unit_inverse(self.value).map(|v| ZqScalar {
            value: v,
            modulus: self.modulus,
        })
    }
    fn check(self, other: ZqScalar) {
        assert_eq!(self.modulus, other.modulus, "scalars over different moduli");
    }
}

impl Add for ZqScalar {
    type Output = ZqScalar;
    fn add(self, rhs: ZqScalar) -> ZqScalar {
        self.check(rhs);
        ZqScalar {
            value: self.modulus.add(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Sub for ZqScalar {
    type Output = ZqScalar;
    fn sub(self, rhs: ZqScalar) -> ZqScalar {
        self.check(rhs);
        ZqScalar {
            value: self.modulus.sub(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Mul for ZqScalar {
    type Output = ZqScalar;
    fn mul(self, rhs: ZqScalar) -> ZqScalar {
        self.check(rhs);
        ZqScalar {
            value: self.modulus.mul(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Neg for ZqScalar {
    type Output = ZqScalar;
    fn neg(self) -> ZqScalar {
        ZqScalar {
            value: self.modulus.neg(self.value),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for ZqScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus.q)
    }
}
