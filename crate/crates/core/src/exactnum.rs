//! Exact integers and rationals, plus the binomial services everything else
//! is built on: exact values, residues mod p (Lucas), p-adic valuations
//! (Kummer), and the binomial-matrix determinant `d_k` in both exact and
//! mod-p form.
//!
//! Binomials with the lower argument outside `[0, n]` are zero.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gfp::{FpElem, PrimeField};

/// Deterministic primality test for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // This base set is deterministic for all n < 3.3 * 10^24.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `C(n, k)` for `n >= 0`; zero when `k < 0` or `k > n`.
pub fn binom_exact(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc *= n - t;
        acc /= t + 1;
    }
    acc
}

/// `C(n, k)` as a polynomial in `n`: `n (n-1) ... (n-k+1) / k!` for `k >= 0`,
/// zero for `k < 0`. Agrees with [`binom_exact`] when `n >= 0`; for negative
/// `n` it gives e.g. `C(-1, k) = (-1)^k`.
pub fn binom_general(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 {
        return binom_exact(n as u64, k);
    }
    // C(n, k) = (-1)^k C(k - n - 1, k)
    let v = binom_exact((k - n - 1) as u64, k);
    if k % 2 == 0 {
        v
    } else {
        -v
    }
}

/// `C(n, k)` for `n < p`, by the multiplicative formula in `F_p`.
fn small_binom(field: PrimeField, n: u64, k: u64) -> FpElem {
    if k > n {
        return FpElem::ZERO;
    }
    let k = k.min(n - k);
    let mut num = FpElem::ONE;
    let mut den = FpElem::ONE;
    for t in 0..k {
        num = field.mul(num, field.from_u64(n - t));
        den = field.mul(den, field.from_u64(t + 1));
    }
    field.mul(num, field.inv(den).expect("t + 1 < p is a unit"))
}

/// `C(n, k) mod p` by Lucas's theorem, digit by digit in base p.
pub fn binom_mod_p(n: u64, k: i64, field: PrimeField) -> FpElem {
    if k < 0 || k as u64 > n {
        return FpElem::ZERO;
    }
    let p = field.modulus() as u64;
    let (mut n, mut k) = (n, k as u64);
    let mut acc = FpElem::ONE;
    while k > 0 {
        let c = small_binom(field, n % p, k % p);
        if c.is_zero() {
            return c;
        }
        acc = field.mul(acc, c);
        n /= p;
        k /= p;
    }
    acc
}

/// `v_p(C(n, k))`: the number of carries when adding `k` and `n - k` in base
/// p (Kummer).
pub fn vp_binom(n: u64, k: u64, field: PrimeField) -> Result<u32> {
    if k > n {
        return Err(Error::OutOfRange {
            what: "k",
            value: k as i64,
            lo: 0,
            hi: n as i64,
        });
    }
    let p = field.modulus() as u64;
    let (mut x, mut y) = (k, n - k);
    let mut carry = 0u64;
    let mut carries = 0u32;
    while x > 0 || y > 0 || carry > 0 {
        let s = x % p + y % p + carry;
        carry = u64::from(s >= p);
        carries += carry as u32;
        x /= p;
        y /= p;
    }
    Ok(carries)
}

/// Factorials of the base-p digits below `limit`, for the unit part of a
/// binomial mod p.
pub struct DigitFactorials {
    field: PrimeField,
    fact: Vec<FpElem>,
    inv_fact: Vec<FpElem>,
}

impl DigitFactorials {
    /// Tables cover digits up to `min(limit, p - 1)`.
    pub fn new(field: PrimeField, limit: u64) -> Self {
        let top = limit.min(field.modulus() as u64 - 1) as usize;
        let mut fact = Vec::with_capacity(top + 1);
        fact.push(FpElem::ONE);
        for t in 1..=top {
            let prev = fact[t - 1];
            fact.push(field.mul(prev, field.from_u64(t as u64)));
        }
        let mut inv_fact = vec![FpElem::ZERO; top + 1];
        inv_fact[top] = field.inv(fact[top]).expect("t! is a unit for t < p");
        for t in (1..=top).rev() {
            inv_fact[t - 1] = field.mul(inv_fact[t], field.from_u64(t as u64));
        }
        DigitFactorials {
            field,
            fact,
            inv_fact,
        }
    }

    /// `(v, u)` with `C(n, k) = p^v * w` and `u = w mod p`, via Anton's
    /// congruence `w ≡ (-1)^v ∏ n_j! / (k_j! r_j!)` over the base-p digits of
    /// `n`, `k` and `r = n - k`.
    pub fn binom_unit(&self, n: u64, k: u64) -> Result<(u32, FpElem)> {
        if k > n {
            return Err(Error::OutOfRange {
                what: "k",
                value: k as i64,
                lo: 0,
                hi: n as i64,
            });
        }
        let f = self.field;
        let p = f.modulus() as u64;
        let (mut nn, mut kk, mut rr) = (n, k, n - k);
        let mut unit = FpElem::ONE;
        while nn > 0 {
            let (nd, kd, rd) = (nn % p, kk % p, rr % p);
            let num = self.fact_digit(nd);
            let den = f.mul(self.inv_fact_digit(kd), self.inv_fact_digit(rd));
            unit = f.mul(unit, f.mul(num, den));
            nn /= p;
            kk /= p;
            rr /= p;
        }
        let v = vp_binom(n, k, f)?;
        Ok((v, f.mul(unit, f.sign(v as u64))))
    }

    fn fact_digit(&self, d: u64) -> FpElem {
        self.fact[d as usize]
    }

    fn inv_fact_digit(&self, d: u64) -> FpElem {
        self.inv_fact[d as usize]
    }
}

/// `d_k = ∏_{i<k} C(a+i, b) / C(b+i, b)`, the determinant of the `k x k`
/// matrix with entries `C(a, b + j - i)`. Evaluated over the rationals; the
/// result must be an integer.
pub fn roberts_dk(a: u64, b: u64, k: u64) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let mut acc = BigRational::one();
    for i in 0..k {
        let num = binom_exact(a + i, b as i64);
        let den = binom_exact(b + i, b as i64);
        acc *= BigRational::new(num, den);
    }
    if !acc.is_integer() {
        return Err(Error::IntegralityViolation(format!("d_{k} for a={a}, b={b}")));
    }
    Ok(acc.to_integer())
}

/// `d_k` reduced mod p without big integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DkModP {
    /// `v_p(d_k)`.
    pub valuation: u64,
    /// `d_k / p^valuation mod p`; never zero.
    pub unit: FpElem,
}

impl DkModP {
    /// `φ(d_k)`.
    pub fn residue(&self) -> FpElem {
        if self.valuation == 0 {
            self.unit
        } else {
            FpElem::ZERO
        }
    }
}

/// Mod-p form of [`roberts_dk`]: the valuation is the sum of the factor
/// valuations and the unit part is assembled from the factor unit parts.
pub fn roberts_dk_unit_mod_p(a: u64, b: u64, k: u64, field: PrimeField) -> Result<DkModP> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let table = DigitFactorials::new(field, a.max(b) + k);
    let mut valuation: i64 = 0;
    let mut num = FpElem::ONE;
    let mut den = FpElem::ONE;
    for i in 0..k {
        let top = if b <= a + i {
            table.binom_unit(a + i, b)?
        } else {
            // a zero factor: d_k = 0, which has no unit part
            return Err(Error::Precondition(format!(
                "d_{k} vanishes identically for a={a}, b={b}"
            )));
        };
        let bottom = table.binom_unit(b + i, b)?;
        valuation += top.0 as i64 - bottom.0 as i64;
        num = field.mul(num, top.1);
        den = field.mul(den, bottom.1);
    }
    if valuation < 0 {
        return Err(Error::IntegralityViolation(format!(
            "d_{k} for a={a}, b={b} has negative valuation"
        )));
    }
    let unit = field.mul(num, field.inv(den).expect("unit parts are nonzero"));
    Ok(DkModP {
        valuation: valuation as u64,
        unit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn field(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    // n! / (k! (n-k)!) with factorials written out
    fn factorial_oracle(n: u64, k: u64) -> BigInt {
        let fact = |x: u64| (1..=x).fold(BigInt::one(), |acc, t| acc * t);
        fact(n) / (fact(k) * fact(n - k))
    }

    fn valuation_oracle(v: &BigInt, p: u64) -> u32 {
        let mut v = v.clone();
        let mut e = 0;
        while (&v % p).is_zero() {
            v /= p;
            e += 1;
        }
        e
    }

    #[test]
    fn exact_examples() {
        assert_eq!(binom_exact(15, 7), factorial_oracle(15, 7));
        assert_eq!(binom_exact(15, 7), BigInt::from(6435));
        assert_eq!(binom_exact(0, 0), BigInt::one());
        assert_eq!(binom_exact(9, 0), BigInt::one());
        assert_eq!(binom_exact(5, -1), BigInt::zero());
        assert_eq!(binom_exact(5, 6), BigInt::zero());
    }

    #[test]
    fn general_binomial_negative_upper() {
        assert_eq!(binom_general(-1, 0), BigInt::one());
        assert_eq!(binom_general(-1, 3), BigInt::from(-1));
        assert_eq!(binom_general(-3, 2), BigInt::from(6));
        assert_eq!(binom_general(-2, -1), BigInt::zero());
        assert_eq!(binom_general(6, 2), BigInt::from(15));
    }

    #[test]
    fn mod_p_examples() {
        assert_eq!(binom_mod_p(15, 7, field(7)).value(), 2);
        assert_eq!(binom_mod_p(10, 5, field(3)).value(), 0);
        assert_eq!(binom_mod_p(123, 0, field(11)).value(), 1);
        assert_eq!(binom_mod_p(4, -2, field(11)).value(), 0);
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(vp_binom(15, 7, field(7)).unwrap(), 0);
        assert_eq!(vp_binom(15, 9, field(7)).unwrap(), 1);
        assert_eq!(vp_binom(40, 0, field(3)).unwrap(), 0);
        assert!(vp_binom(3, 4, field(3)).is_err());
    }

    #[test]
    fn lucas_and_kummer_agree_with_exact_values() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = field(p);
            let table = DigitFactorials::new(f, 200);
            for n in 0..=200u64 {
                for k in 0..=n {
                    let exact = binom_exact(n, k as i64);
                    assert_eq!(binom_mod_p(n, k as i64, f), f.from_bigint(&exact));
                    let v = vp_binom(n, k, f).unwrap();
                    assert_eq!(v, valuation_oracle(&exact, p), "v_{p} C({n},{k})");
                    assert_eq!(binom_mod_p(n, k as i64, f).is_zero(), v > 0);
                    let (tv, unit) = table.binom_unit(n, k).unwrap();
                    let w = exact / BigInt::from(p).pow(tv);
                    assert_eq!(unit, f.from_bigint(&w), "unit of C({n},{k}) mod {p}");
                }
            }
        }
    }

    #[test]
    fn pascal_rule() {
        for n in 1..=100u64 {
            for k in 1..=n as i64 {
                assert_eq!(
                    binom_exact(n, k),
                    binom_exact(n - 1, k - 1) + binom_exact(n - 1, k)
                );
            }
        }
    }

    #[test]
    fn alternating_convolution_is_kronecker_delta() {
        for s in 1..=12u64 {
            for i in 1..=12i64 {
                for j in i..=12i64 {
                    let mut sum = BigInt::zero();
                    for k in i..=j {
                        let term = binom_exact(s, k - i) * binom_exact(s - 1 + (j - k) as u64, s as i64 - 1);
                        if (j - k) % 2 == 0 {
                            sum += term;
                        } else {
                            sum -= term;
                        }
                    }
                    let expected = if i == j { BigInt::one() } else { BigInt::zero() };
                    assert_eq!(sum, expected, "s={s} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn dk_examples() {
        assert_eq!(roberts_dk(0, 0, 1).unwrap(), BigInt::one());
        // Values cross-checked against exact integer determinants.
        let d5 = roberts_dk(15, 7, 5).unwrap();
        assert_eq!(d5, BigInt::from(201_299_981_193_168u64));
        assert_eq!(field(7).from_bigint(&d5).value(), 4);
        let d11 = roberts_dk(3, 1, 11).unwrap();
        assert_eq!(d11, BigInt::from(78));
        assert_eq!(field(7).from_bigint(&d11).value(), 1);
        assert_eq!(roberts_dk(2, 1, 1).unwrap(), BigInt::from(2));
        assert!(roberts_dk(2, 1, 0).is_err());
    }

    #[test]
    fn dk_mod_p_examples() {
        let r = roberts_dk_unit_mod_p(15, 7, 5, field(7)).unwrap();
        assert_eq!((r.valuation, r.unit.value()), (0, 4));
        let r = roberts_dk_unit_mod_p(9, 0, 4, field(5)).unwrap();
        assert_eq!((r.valuation, r.unit.value()), (0, 1));
        let r = roberts_dk_unit_mod_p(2, 1, 1, field(2)).unwrap();
        assert_eq!(r.valuation, 1);
        assert_eq!(r.residue(), FpElem::ZERO);
    }

    #[test]
    fn dk_integral_and_consistent_mod_p() {
        for a in 0..=30u64 {
            for b in 0..=30u64 {
                for k in 1..=12u64 {
                    let d = roberts_dk(a, b, k).unwrap();
                    for p in [2u64, 3, 5, 7, 11, 13] {
                        let f = field(p);
                        match roberts_dk_unit_mod_p(a, b, k, f) {
                            Ok(r) => {
                                assert!(!d.is_zero());
                                let v = valuation_oracle(&d, p);
                                assert_eq!(r.valuation, v as u64, "a={a} b={b} k={k} p={p}");
                                let w = &d / BigInt::from(p).pow(v);
                                assert_eq!(r.unit, f.from_bigint(&w));
                                assert_eq!(r.residue(), f.from_bigint(&d));
                            }
                            Err(_) => assert!(d.is_zero() && b > a),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
        assert_eq!(binom_exact(60, 30).to_u64(), Some(118_264_581_564_861_424));
    }
}
