//! Arithmetic and dense linear algebra over the prime field `F_p`.
//!
//! Elements are stored as least nonnegative residues. The modulus lives in a
//! [`PrimeField`] handle rather than in each element; matrices carry their
//! field and refuse to mix with a matrix over a different one.

mod matrix;

pub use matrix::{FpMatrix, Solution};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactnum::is_prime;

/// A residue in `[0, p)`. Only a [`PrimeField`] can build one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FpElem(u32);

impl FpElem {
    pub const ZERO: FpElem = FpElem(0);
    pub const ONE: FpElem = FpElem(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The prime field with `p` elements, `p < 2^31`. Primality is checked once
/// here; everything downstream trusts it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub const MAX_MODULUS: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self> {
        if p >= Self::MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer.
    #[inline]
    pub fn elem(self, v: i64) -> FpElem {
        FpElem(v.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn from_u64(self, v: u64) -> FpElem {
        FpElem((v % self.p as u64) as u32)
    }

    /// Accepts a residue only if it is already reduced.
    pub fn checked_elem(self, v: u64) -> Option<FpElem> {
        (v < self.p as u64).then_some(FpElem(v as u32))
    }

    /// The ring map `Z -> F_p`.
    pub fn from_bigint(self, v: &BigInt) -> FpElem {
        let r = v.mod_floor(&BigInt::from(self.p));
        FpElem(r.to_u32().expect("residue below p"))
    }

    #[inline]
    pub fn add(self, a: FpElem, b: FpElem) -> FpElem {
        let s = a.0 as u64 + b.0 as u64;
        FpElem((s % self.p as u64) as u32)
    }

    #[inline]
    pub fn sub(self, a: FpElem, b: FpElem) -> FpElem {
        let s = a.0 as u64 + self.p as u64 - b.0 as u64;
        FpElem((s % self.p as u64) as u32)
    }

    #[inline]
    pub fn neg(self, a: FpElem) -> FpElem {
        if a.0 == 0 {
            a
        } else {
            FpElem(self.p - a.0)
        }
    }

    #[inline]
    pub fn mul(self, a: FpElem, b: FpElem) -> FpElem {
        FpElem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    /// `a + b * c`
    #[inline]
    pub fn mul_add(self, a: FpElem, b: FpElem, c: FpElem) -> FpElem {
        FpElem(((a.0 as u64 + b.0 as u64 * c.0 as u64) % self.p as u64) as u32)
    }

    pub fn pow(self, a: FpElem, mut e: u64) -> FpElem {
        let mut base = a;
        let mut acc = FpElem(1 % self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self, a: FpElem) -> Option<FpElem> {
        if a.0 == 0 {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    /// `(-1)^e`
    #[inline]
    pub fn sign(self, e: u64) -> FpElem {
        if e.is_multiple_of(2) {
            FpElem::ONE
        } else {
            self.neg(FpElem::ONE)
        }
    }

    pub(crate) fn ensure_same(self, other: PrimeField) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.p, other.p))
        }
    }
}
