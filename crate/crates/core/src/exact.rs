//! Exact integer and rational arithmetic: binomials, Gaussian binomials with
//! an arbitrary integer base (including negative bases), and powers with
//! half-integral exponents.
//!
//! Nothing in this module touches floating point.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type BigRat = BigRational;

/// A half-integer `twice / 2`.
///
/// Used for the dual polar parameter `e`, which takes the values
/// 0, 1/2, 1, 3/2 and 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(v: i64) -> Self {
        HalfInt { twice: 2 * v }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// The integer value, if integral.
    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    pub fn to_rational(self) -> BigRat {
        BigRat::new(BigInt::from(self.twice), BigInt::from(2))
    }

    /// `k * self`.
    pub fn scale(self, k: i64) -> HalfInt {
        HalfInt::from_twice(self.twice * k)
    }

    /// `self + k`.
    pub fn add_int(self, k: i64) -> HalfInt {
        HalfInt::from_twice(self.twice + 2 * k)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `3`, `-1`, `3/2`, `1.5`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Usage(format!("not a half-integer: {s:?}"));
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            let den: i64 = den.trim().parse().map_err(|_| bad())?;
            return match den {
                1 => Ok(HalfInt::from_int(num)),
                2 => Ok(HalfInt::from_twice(num)),
                _ => Err(bad()),
            };
        }
        if let Some((int, frac)) = s.split_once('.') {
            let neg = int.starts_with('-');
            let whole: i64 = if int == "-" || int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let half = match frac.trim_end_matches('0') {
                "" => 0,
                "5" => 1,
                _ => return Err(bad()),
            };
            let twice = 2 * whole + if neg { -half } else { half };
            return Ok(HalfInt::from_twice(twice));
        }
        s.parse::<i64>().map(HalfInt::from_int).map_err(|_| bad())
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `base^exp` for a small integer base.
pub fn ipow(base: i64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `base^exp` for a big base.
pub fn bpow(base: &BigInt, exp: u32) -> BigInt {
    num_traits::pow(base.clone(), exp as usize)
}

/// `(-1)^k` as `1` or `-1`.
pub fn neg_one_pow(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `k choose 2` for any integer `k` (it is `k(k-1)/2`, also for negative k).
pub fn choose2(k: i64) -> i64 {
    k * (k - 1) / 2
}

fn exp_u32(e: i64, what: &str) -> Result<u32> {
    u32::try_from(e).map_err(|_| Error::Domain(format!("{what}: exponent {e} out of range")))
}

/// Ordinary binomial coefficient; zero when `k < 0` or `k > n`.
pub fn binom(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::Domain(format!(
            "binom({n}, {k}): negative upper index is not supported"
        )));
    }
    if k < 0 || k > n {
        return Ok(BigInt::zero());
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    Ok(acc)
}

/// Gaussian binomial coefficient `[n over m]_b`.
///
/// Zero for `m < 0`; the ordinary binomial for `b = 1`; otherwise the
/// product of `(b^{n-h} - 1)/(b^{m-h} - 1)` for `h = 0..m`, evaluated
/// as an exact rational and required to be integral.
pub fn gauss_binom(n: i64, m: i64, b: &BigInt) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::Domain(format!(
            "gauss_binom({n}, {m}, {b}): negative upper index is not supported"
        )));
    }
    if m < 0 {
        return Ok(BigInt::zero());
    }
    if b.is_one() {
        return binom(n, m);
    }
    if m >= 1 && (b.is_zero() || *b == BigInt::from(-1)) {
        return Err(Error::Domain(format!(
            "gauss_binom: base {b} is not allowed (b must differ from 0 and -1)"
        )));
    }
    if m > n {
        return Ok(BigInt::zero());
    }
    let mut acc = BigRat::one();
    for h in 0..m {
        let num = bpow(b, exp_u32(n - h, "gauss_binom")?) - 1;
        let den = bpow(b, exp_u32(m - h, "gauss_binom")?) - 1;
        acc *= BigRat::new(num, den);
    }
    if !acc.denom().is_one() {
        return Err(Error::Inconsistency(format!(
            "gauss_binom({n}, {m}, {b}) is not integral: {acc}"
        )));
    }
    Ok(acc.to_integer())
}

/// `q^e` for a half-integral `e >= 0`. Odd `2e` requires `q` to be a
/// perfect square.
pub fn pow_halfint(q: &BigInt, e: HalfInt) -> Result<BigInt> {
    if e.twice() < 0 {
        return Err(Error::Domain(format!("pow_halfint: negative exponent {e}")));
    }
    if q.is_negative() {
        return Err(Error::Domain(format!("pow_halfint: negative base {q}")));
    }
    let whole = bpow(q, exp_u32(e.twice() / 2, "pow_halfint")?);
    if e.is_integer() {
        return Ok(whole);
    }
    let root = q.sqrt();
    if &(&root * &root) != q {
        return Err(Error::Domain(format!(
            "q = {q} with half-integral e = {e}: the polar space needs q to be the square of a prime power"
        )));
    }
    Ok(whole * root)
}

/// Exact `q^t` where `t` may be half-integral or negative; the result is
/// rational.
pub fn pow_halfint_rat(q: &BigInt, e: HalfInt) -> Result<BigRat> {
    if e.twice() >= 0 {
        return pow_halfint(q, e).map(BigRat::from_integer);
    }
    let inv = pow_halfint(q, HalfInt::from_twice(-e.twice()))?;
    Ok(BigRat::new(BigInt::one(), inv))
}

/// Exact `b^e` for any integer exponent, as a rational.
pub fn rpow(b: &BigInt, e: i64) -> BigRat {
    if e >= 0 {
        BigRat::from_integer(bpow(b, e as u32))
    } else {
        BigRat::new(BigInt::one(), bpow(b, (-e) as u32))
    }
}

/// Table of Gaussian binomials `[n over m]_b` for `0 <= n <= n_max`,
/// filled by the b-Pascal rule `[n, m] = [n-1, m-1] + b^m [n-1, m]`.
///
/// This is the fast path used when building whole matrices; tests check it
/// against [`gauss_binom`].
#[derive(Debug, Clone)]
pub struct GaussTable {
    base: BigInt,
    rows: Vec<Vec<BigInt>>,
    zero: BigInt,
}

impl GaussTable {
    pub fn new(base: &BigInt, n_max: i64) -> Result<Self> {
        if base.is_zero() || *base == BigInt::from(-1) {
            return Err(Error::Domain(format!(
                "Gaussian table: base {base} is not allowed"
            )));
        }
        let n_max = usize::try_from(n_max.max(0)).unwrap_or(0);
        let mut powers = Vec::with_capacity(n_max + 1);
        let mut p = BigInt::one();
        for _ in 0..=n_max {
            powers.push(p.clone());
            p *= base;
        }
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            for m in 0..=n {
                let left = if m == 0 { BigInt::zero() } else { prev[m - 1].clone() };
                let right = if m < n { &powers[m] * &prev[m] } else { BigInt::zero() };
                row.push(left + right);
            }
            rows.push(row);
        }
        Ok(GaussTable {
            base: base.clone(),
            rows,
            zero: BigInt::zero(),
        })
    }

    pub fn base(&self) -> &BigInt {
        &self.base
    }

    pub fn n_max(&self) -> i64 {
        self.rows.len() as i64 - 1
    }

    /// `[n over m]`; zero when `m < 0` or `m > n`. Panics when `n` is
    /// negative or beyond the table.
    pub fn get(&self, n: i64, m: i64) -> &BigInt {
        assert!(
            (0..=self.n_max()).contains(&n),
            "GaussTable: n = {n} outside 0..={}",
            self.n_max()
        );
        if m < 0 || m > n {
            return &self.zero;
        }
        &self.rows[n as usize][m as usize]
    }
}

/// Sign of a big integer as -1, 0 or 1.
pub fn sign(x: &BigInt) -> i8 {
    match x.cmp(&BigInt::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Exact comparison `a/b` against `c/d` for positive denominators.
pub fn cmp_frac(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> Ordering {
    debug_assert!(b.is_positive() && d.is_positive());
    (a * d).cmp(&(c * b))
}

/// Best-effort conversion for display purposes only.
pub fn to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binom_values() {
        assert_eq!(binom(5, 2).unwrap(), b(10));
        assert_eq!(binom(5, -1).unwrap(), b(0));
        assert_eq!(binom(3, 5).unwrap(), b(0));
        assert_eq!(binom(0, 0).unwrap(), b(1));
        assert!(matches!(binom(-1, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn gauss_binom_examples() {
        for n in 0..=8 {
            for m in 0..=n {
                assert_eq!(gauss_binom(n, m, &b(1)).unwrap(), binom(n, m).unwrap());
            }
        }
        // (2^4-1)(2^3-1)/((2^2-1)(2-1)) = 15*7/3
        assert_eq!(gauss_binom(4, 2, &b(2)).unwrap(), b(35));
        // ((-2)^3-1)/((-2)-1) = -9/-3
        assert_eq!(gauss_binom(3, 1, &b(-2)).unwrap(), b(3));
        assert_eq!(gauss_binom(5, -1, &b(7)).unwrap(), b(0));
        assert_eq!(gauss_binom(2, 3, &b(3)).unwrap(), b(0));
    }

    #[test]
    fn gauss_binom_errors() {
        assert!(matches!(gauss_binom(-2, 1, &b(2)), Err(Error::Domain(_))));
        assert!(matches!(gauss_binom(3, 1, &b(0)), Err(Error::Domain(_))));
        assert!(matches!(gauss_binom(3, 2, &b(-1)), Err(Error::Domain(_))));
        assert_eq!(gauss_binom(3, 0, &b(-1)).unwrap(), b(1));
    }

    #[test]
    fn pow_halfint_examples() {
        assert_eq!(pow_halfint(&b(4), HalfInt::from_twice(1)).unwrap(), b(2));
        assert_eq!(pow_halfint(&b(9), HalfInt::from_twice(3)).unwrap(), b(27));
        assert_eq!(pow_halfint(&b(3), HalfInt::from_int(2)).unwrap(), b(9));
        let err = pow_halfint(&b(2), HalfInt::from_twice(1)).unwrap_err();
        assert!(matches!(err, Error::Domain(ref m) if m.contains("square")));
    }

    #[test]
    fn halfint_parse_and_display() {
        for (s, twice) in [("0", 0), ("1/2", 1), ("1", 2), ("3/2", 3), ("2", 4), ("1.5", 3), ("0.5", 1)] {
            let h: HalfInt = s.parse().unwrap();
            assert_eq!(h.twice(), twice, "{s}");
        }
        assert_eq!(HalfInt::from_twice(3).to_string(), "3/2");
        assert_eq!(HalfInt::from_int(2).to_string(), "2");
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("0.25".parse::<HalfInt>().is_err());
    }

    #[test]
    fn table_matches_product_formula() {
        for base in [2, 3, 4, -2, -3, 1, 5] {
            let t = GaussTable::new(&b(base), 10).unwrap();
            for n in 0..=10 {
                for m in -1..=n + 1 {
                    assert_eq!(
                        t.get(n, m),
                        &gauss_binom(n, m, &b(base)).unwrap(),
                        "base {base}, [{n} over {m}]"
                    );
                }
            }
        }
    }
}
