//! Scheme identifiers, classical parameters `(d, b, alpha, beta)`, their
//! intersection numbers and eigenvalues, and the generic recurrence that
//! builds the eigenmatrix `P` column by column.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{binom, bpow, choose2, gauss_binom, ipow, neg_one_pow, pow_halfint, BigRat, HalfInt};

/// The seven classical families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Hamming,
    Johnson,
    Grassmann,
    DualPolar,
    Bilinear,
    Alternating,
    Hermitian,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Hamming,
        Family::Johnson,
        Family::Grassmann,
        Family::DualPolar,
        Family::Bilinear,
        Family::Alternating,
        Family::Hermitian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Hamming => "hamming",
            Family::Johnson => "johnson",
            Family::Grassmann => "grassmann",
            Family::DualPolar => "dualpolar",
            Family::Bilinear => "bilinear",
            Family::Alternating => "alternating",
            Family::Hermitian => "hermitian",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::Usage(format!("unknown family {s:?}")))
    }
}

/// One scheme instance. Construct through the checked constructors or
/// [`FromStr`]; the fields are validated there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeId {
    Hamming { d: u32, q: u32 },
    Johnson { n: u32, d: u32 },
    Grassmann { q: u32, n: u32, d: u32 },
    DualPolar { q: u32, d: u32, e: HalfInt },
    Bilinear { q: u32, d: u32, e: u32 },
    Alternating { q: u32, n: u32 },
    Hermitian { q: u32, d: u32 },
}

pub(crate) fn is_prime_power(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    let mut m = q;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            return m == 1;
        }
        p += 1;
    }
    true
}

fn is_square(q: u32) -> bool {
    let r = (q as f64).sqrt().round() as u32;
    (r.saturating_sub(1)..=r + 1).any(|s| s * s == q)
}

fn need(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(msg()))
    }
}

impl SchemeId {
    pub fn hamming(d: u32, q: u32) -> Result<Self> {
        need(d >= 1 && q >= 2, || format!("hamming needs d >= 1, q >= 2 (got d={d}, q={q})"))?;
        Ok(SchemeId::Hamming { d, q })
    }

    pub fn johnson(n: u32, d: u32) -> Result<Self> {
        need(d >= 1 && n >= 2 * d, || format!("johnson needs d >= 1, n >= 2d (got n={n}, d={d})"))?;
        Ok(SchemeId::Johnson { n, d })
    }

    pub fn grassmann(q: u32, n: u32, d: u32) -> Result<Self> {
        need(is_prime_power(q), || format!("grassmann needs a prime power q (got {q})"))?;
        need(d >= 1 && n >= 2 * d, || format!("grassmann needs d >= 1, n >= 2d (got n={n}, d={d})"))?;
        Ok(SchemeId::Grassmann { q, n, d })
    }

    pub fn dual_polar(q: u32, d: u32, e: HalfInt) -> Result<Self> {
        need(is_prime_power(q), || format!("dualpolar needs a prime power q (got {q})"))?;
        need(d >= 1, || "dualpolar needs d >= 1".to_string())?;
        need((0..=4).contains(&e.twice()), || {
            format!("dualpolar e must be one of 0, 1/2, 1, 3/2, 2 (got {e})")
        })?;
        need(e.is_integer() || is_square(q), || {
            format!("dualpolar with e = {e} needs q to be the square of a prime power (got q={q})")
        })?;
        Ok(SchemeId::DualPolar { q, d, e })
    }

    pub fn bilinear(q: u32, d: u32, e: u32) -> Result<Self> {
        need(is_prime_power(q), || format!("bilinear needs a prime power q (got {q})"))?;
        need(d >= 1 && e >= d, || format!("bilinear needs 1 <= d <= e (got d={d}, e={e})"))?;
        Ok(SchemeId::Bilinear { q, d, e })
    }

    pub fn alternating(q: u32, n: u32) -> Result<Self> {
        need(is_prime_power(q), || format!("alternating needs a prime power q (got {q})"))?;
        need(n >= 2, || format!("alternating needs n >= 2 (got {n})"))?;
        Ok(SchemeId::Alternating { q, n })
    }

    pub fn hermitian(q: u32, d: u32) -> Result<Self> {
        need(is_prime_power(q), || format!("hermitian needs a prime power q (got {q})"))?;
        need(d >= 1, || "hermitian needs d >= 1".to_string())?;
        Ok(SchemeId::Hermitian { q, d })
    }

    /// Re-run the constructor checks.
    pub fn validate(self) -> Result<Self> {
        match self {
            SchemeId::Hamming { d, q } => SchemeId::hamming(d, q),
            SchemeId::Johnson { n, d } => SchemeId::johnson(n, d),
            SchemeId::Grassmann { q, n, d } => SchemeId::grassmann(q, n, d),
            SchemeId::DualPolar { q, d, e } => SchemeId::dual_polar(q, d, e),
            SchemeId::Bilinear { q, d, e } => SchemeId::bilinear(q, d, e),
            SchemeId::Alternating { q, n } => SchemeId::alternating(q, n),
            SchemeId::Hermitian { q, d } => SchemeId::hermitian(q, d),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            SchemeId::Hamming { .. } => Family::Hamming,
            SchemeId::Johnson { .. } => Family::Johnson,
            SchemeId::Grassmann { .. } => Family::Grassmann,
            SchemeId::DualPolar { .. } => Family::DualPolar,
            SchemeId::Bilinear { .. } => Family::Bilinear,
            SchemeId::Alternating { .. } => Family::Alternating,
            SchemeId::Hermitian { .. } => Family::Hermitian,
        }
    }

    pub fn diameter(&self) -> usize {
        match *self {
            SchemeId::Hamming { d, .. }
            | SchemeId::Johnson { d, .. }
            | SchemeId::Grassmann { d, .. }
            | SchemeId::DualPolar { d, .. }
            | SchemeId::Bilinear { d, .. }
            | SchemeId::Hermitian { d, .. } => d as usize,
            SchemeId::Alternating { n, .. } => (n / 2) as usize,
        }
    }

    /// Named parameters in canonical order, for reports.
    pub fn params(&self) -> Vec<(&'static str, String)> {
        match *self {
            SchemeId::Hamming { d, q } => vec![("d", d.to_string()), ("q", q.to_string())],
            SchemeId::Johnson { n, d } => vec![("n", n.to_string()), ("d", d.to_string())],
            SchemeId::Grassmann { q, n, d } => {
                vec![("q", q.to_string()), ("n", n.to_string()), ("d", d.to_string())]
            }
            SchemeId::DualPolar { q, d, e } => {
                vec![("q", q.to_string()), ("d", d.to_string()), ("e", e.to_string())]
            }
            SchemeId::Bilinear { q, d, e } => {
                vec![("q", q.to_string()), ("d", d.to_string()), ("e", e.to_string())]
            }
            SchemeId::Alternating { q, n } => vec![("q", q.to_string()), ("n", n.to_string())],
            SchemeId::Hermitian { q, d } => vec![("q", q.to_string()), ("d", d.to_string())],
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}:{}", self.family(), params.join(","))
    }
}

impl FromStr for SchemeId {
    type Err = Error;

    /// Parses `family:key=value,...`, e.g. `hamming:d=4,q=3` or
    /// `dualpolar:q=4,d=3,e=3/2`.
    fn from_str(s: &str) -> Result<Self> {
        let (fam, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Usage(format!("malformed scheme {s:?}: expected family:key=value,...")))?;
        let family: Family = fam.parse()?;
        let mut kv = std::collections::BTreeMap::new();
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("malformed scheme parameter {part:?}")))?;
            if kv.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(Error::Usage(format!("duplicate scheme parameter {k:?}")));
            }
        }
        let mut take = |key: &str| -> Result<String> {
            kv.remove(key)
                .ok_or_else(|| Error::Usage(format!("{family} scheme is missing parameter {key:?}")))
        };
        let int = |v: String, key: &str| -> Result<u32> {
            v.parse::<u32>()
                .map_err(|_| Error::Usage(format!("parameter {key}={v:?} is not a nonnegative integer")))
        };
        let scheme = match family {
            Family::Hamming => {
                let d = int(take("d")?, "d")?;
                let q = int(take("q")?, "q")?;
                SchemeId::hamming(d, q)
            }
            Family::Johnson => {
                let n = int(take("n")?, "n")?;
                let d = int(take("d")?, "d")?;
                SchemeId::johnson(n, d)
            }
            Family::Grassmann => {
                let q = int(take("q")?, "q")?;
                let n = int(take("n")?, "n")?;
                let d = int(take("d")?, "d")?;
                SchemeId::grassmann(q, n, d)
            }
            Family::DualPolar => {
                let q = int(take("q")?, "q")?;
                let d = int(take("d")?, "d")?;
                let e: HalfInt = take("e")?.parse()?;
                SchemeId::dual_polar(q, d, e)
            }
            Family::Bilinear => {
                let q = int(take("q")?, "q")?;
                let d = int(take("d")?, "d")?;
                let e = int(take("e")?, "e")?;
                SchemeId::bilinear(q, d, e)
            }
            Family::Alternating => {
                let q = int(take("q")?, "q")?;
                let n = int(take("n")?, "n")?;
                SchemeId::alternating(q, n)
            }
            Family::Hermitian => {
                let q = int(take("q")?, "q")?;
                let d = int(take("d")?, "d")?;
                SchemeId::hermitian(q, d)
            }
        };
        if let Some(extra) = kv.keys().next() {
            return Err(Error::Usage(format!("unexpected parameter {extra:?} for {family}")));
        }
        scheme.map_err(|e| match e {
            Error::Domain(m) => Error::Usage(m),
            other => other,
        })
    }
}

impl Serialize for SchemeId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SchemeId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Classical parameters `(d, b, alpha, beta)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalParams {
    pub d: u32,
    #[serde(with = "crate::report::bigint_str")]
    pub b: BigInt,
    #[serde(with = "crate::report::bigint_str")]
    pub alpha: BigInt,
    #[serde(with = "crate::report::bigint_str")]
    pub beta: BigInt,
}

impl ClassicalParams {
    pub fn new(d: u32, b: BigInt, alpha: BigInt, beta: BigInt) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidParameters("classical parameters need d >= 1".into()));
        }
        if b.is_zero() || b == BigInt::from(-1) {
            return Err(Error::InvalidParameters(format!(
                "classical parameters need b different from 0 and -1 (got {b})"
            )));
        }
        Ok(ClassicalParams { d, b, alpha, beta })
    }

    pub fn from_i64(d: u32, b: i64, alpha: i64, beta: i64) -> Result<Self> {
        ClassicalParams::new(d, b.into(), alpha.into(), beta.into())
    }

    /// `[n over 1]_b`.
    pub fn g1(&self, n: i64) -> BigInt {
        gauss_binom(n, 1, &self.b).expect("[n over 1] with n >= 0 and a valid base")
    }

    pub fn is_self_dual(&self) -> bool {
        self.alpha == &self.b - 1
    }

    fn di(&self) -> i64 {
        self.d as i64
    }
}

impl fmt::Display for ClassicalParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.d, self.b, self.alpha, self.beta)
    }
}

/// The row of the classical-parameters table for a scheme.
pub fn family_to_classical(scheme: &SchemeId) -> ClassicalParams {
    let mk = |d: u32, b: BigInt, alpha: BigInt, beta: BigInt| {
        ClassicalParams::new(d, b, alpha, beta).expect("table rows have a valid base")
    };
    match *scheme {
        SchemeId::Hamming { d, q } => mk(d, 1.into(), 0.into(), BigInt::from(q) - 1),
        SchemeId::Johnson { n, d } => mk(d, 1.into(), 1.into(), BigInt::from(n - d)),
        SchemeId::Grassmann { q, n, d } => {
            let qb = BigInt::from(q);
            let beta = &qb * gauss_binom((n - d) as i64, 1, &qb).expect("valid base");
            mk(d, qb.clone(), qb, beta)
        }
        SchemeId::DualPolar { q, d, e } => {
            let qb = BigInt::from(q);
            let beta = pow_halfint(&qb, e).expect("validated dual polar parameters");
            mk(d, qb, 0.into(), beta)
        }
        SchemeId::Bilinear { q, d, e } => {
            let qb = BigInt::from(q);
            mk(d, qb.clone(), &qb - 1, ipow(q as i64, e) - 1)
        }
        SchemeId::Alternating { q, n } => {
            let d = n / 2;
            let q2 = BigInt::from(q) * q;
            let m = 2 * n - 2 * d - 1;
            mk(d, q2.clone(), &q2 - 1, ipow(q as i64, m) - 1)
        }
        SchemeId::Hermitian { q, d } => {
            let mq = -(q as i64);
            mk(d, mq.into(), BigInt::from(mq - 1), -ipow(mq, d) - 1)
        }
    }
}

/// Intersection numbers `b_0..b_{d-1}`, `c_1..c_d`, `a_0..a_d`, valency `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionArray {
    #[serde(with = "crate::report::bigint_vec")]
    pub b_list: Vec<BigInt>,
    #[serde(with = "crate::report::bigint_vec")]
    pub c_list: Vec<BigInt>,
    #[serde(with = "crate::report::bigint_vec")]
    pub a_list: Vec<BigInt>,
    #[serde(with = "crate::report::bigint_str")]
    pub k: BigInt,
}

impl IntersectionArray {
    /// `b_i` for `0 <= i <= d` (with `b_d = 0`).
    pub fn b(&self, i: usize) -> BigInt {
        self.b_list.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// `c_i` for `0 <= i <= d` (with `c_0 = 0`).
    pub fn c(&self, i: usize) -> BigInt {
        if i == 0 {
            BigInt::zero()
        } else {
            self.c_list[i - 1].clone()
        }
    }

    pub fn a(&self, i: usize) -> &BigInt {
        &self.a_list[i]
    }
}

fn check_array(cp: &ClassicalParams, ia: &IntersectionArray) -> Result<()> {
    let d = cp.d as usize;
    for i in 0..=d {
        let (a, b, c) = (ia.a(i).clone(), ia.b(i), ia.c(i));
        if a.is_negative() || b.is_negative() || c.is_negative() {
            return Err(Error::InvalidParameters(format!(
                "{cp}: negative intersection number at i={i} (a={a}, b={b}, c={c})"
            )));
        }
        if &a + &b + &c != ia.k {
            return Err(Error::InvalidParameters(format!(
                "{cp}: a_{i} + b_{i} + c_{i} = {} differs from k = {}",
                &a + &b + &c,
                ia.k
            )));
        }
    }
    for i in 1..=d {
        if ia.c(i).is_zero() {
            return Err(Error::InvalidParameters(format!("{cp}: c_{i} = 0")));
        }
    }
    for i in 0..d {
        if ia.b(i).is_zero() {
            return Err(Error::InvalidParameters(format!("{cp}: b_{i} = 0")));
        }
    }
    Ok(())
}

/// Intersection numbers computed without the nonnegativity checks.
pub fn intersection_numbers_unchecked(cp: &ClassicalParams) -> IntersectionArray {
    let d = cp.di();
    let gd = cp.g1(d);
    let b_list = (0..d)
        .map(|i| (&gd - cp.g1(i)) * (&cp.beta - &cp.alpha * cp.g1(i)))
        .collect();
    let c_list = (1..=d)
        .map(|i| cp.g1(i) * (BigInt::one() + &cp.alpha * cp.g1(i - 1)))
        .collect();
    let a_list = (0..=d)
        .map(|i| {
            if i == 0 {
                BigInt::zero()
            } else {
                cp.g1(i) * (&cp.beta - 1 + &cp.alpha * (&gd - cp.g1(i) - cp.g1(i - 1)))
            }
        })
        .collect();
    IntersectionArray {
        b_list,
        c_list,
        a_list,
        k: &cp.beta * gd,
    }
}

/// Intersection numbers; errors when any is negative, when a row sum differs
/// from `k`, or when some `b_i` (`i < d`) or `c_i` (`i >= 1`) vanishes.
pub fn intersection_numbers(cp: &ClassicalParams) -> Result<IntersectionArray> {
    let ia = intersection_numbers_unchecked(cp);
    check_array(cp, &ia)?;
    Ok(ia)
}

/// Eigenvalues `theta_0..theta_d` in the natural (Q-polynomial) order.
pub fn eigenvalues_theta(cp: &ClassicalParams) -> Vec<BigInt> {
    let d = cp.di();
    (0..=d)
        .map(|i| cp.g1(d - i) * (&cp.beta - &cp.alpha * cp.g1(i)) - cp.g1(i))
        .collect()
}

/// The `(d+1) x (d+1)` eigenmatrix: row `i` is an eigenspace, column `j` a
/// distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenMatrix {
    d: usize,
    entries: Vec<BigInt>,
}

impl EigenMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameters("eigenmatrix must be square and nonempty".into()));
        }
        Ok(EigenMatrix {
            d: n - 1,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        EigenMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    /// Builds the matrix entry by entry.
    pub fn try_from_fn(d: usize, mut f: impl FnMut(usize, usize) -> Result<BigInt>) -> Result<Self> {
        let mut entries = Vec::with_capacity((d + 1) * (d + 1));
        for i in 0..=d {
            for j in 0..=d {
                entries.push(f(i, j)?);
            }
        }
        Ok(EigenMatrix { d, entries })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        assert!(i <= self.d && j <= self.d, "P[{i}][{j}] outside a {0}x{0} matrix", self.d + 1);
        &self.entries[i * (self.d + 1) + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        let w = self.d + 1;
        &self.entries[i * w..(i + 1) * w]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..=self.d).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..=self.d).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row 0: the valencies `k_j`.
    pub fn valencies(&self) -> Vec<BigInt> {
        self.row(0).to_vec()
    }

    /// First `(i, j)` where two matrices differ.
    pub fn first_difference(&self, other: &EigenMatrix) -> Option<(usize, usize)> {
        if self.d != other.d {
            return Some((0, 0));
        }
        (0..=self.d)
            .flat_map(|i| (0..=self.d).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != other.get(i, j))
    }
}

impl Serialize for EigenMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..=self.d)
            .map(|i| self.row(i).iter().map(|v| v.to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for EigenMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let rows = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|v| v.parse::<BigInt>().map_err(serde::de::Error::custom))
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        EigenMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Builds `P` from `P_{i0} = 1`, `P_{i1} = theta_i` and
/// `c_{j+1} P_{i,j+1} = (theta_i - a_j) P_{ij} - b_{j-1} P_{i,j-1}`.
///
/// Every division must be exact, and the recurrence continued one step past
/// `d` must vanish at each `theta_i`.
pub fn p_matrix_recurrence(cp: &ClassicalParams) -> Result<EigenMatrix> {
    let ia = intersection_numbers(cp)?;
    p_matrix_with(cp, &ia)
}

/// Like [`p_matrix_recurrence`] but without the nonnegativity checks on the
/// intersection numbers (used when sweeping `beta` through values that do not
/// belong to an actual graph).
pub fn p_matrix_recurrence_unchecked(cp: &ClassicalParams) -> Result<EigenMatrix> {
    let ia = intersection_numbers_unchecked(cp);
    for j in 1..=cp.d as usize {
        if ia.c(j).is_zero() {
            return Err(Error::InvalidParameters(format!("{cp}: c_{j} = 0")));
        }
    }
    p_matrix_with(cp, &ia)
}

fn p_matrix_with(cp: &ClassicalParams, ia: &IntersectionArray) -> Result<EigenMatrix> {
    let d = cp.d as usize;
    let theta = eigenvalues_theta(cp);
    let mut rows = Vec::with_capacity(d + 1);
    for (i, th) in theta.iter().enumerate() {
        let mut row: Vec<BigInt> = Vec::with_capacity(d + 1);
        row.push(BigInt::one());
        row.push(th.clone());
        for j in 1..=d {
            let num = (th - ia.a(j)) * &row[j] - ia.b(j - 1) * &row[j - 1];
            if j == d {
                if !num.is_zero() {
                    return Err(Error::InvalidParameters(format!(
                        "{cp}: theta_{i} = {th} is not a root of the recurrence (residual {num})"
                    )));
                }
                break;
            }
            let c = ia.c(j + 1);
            let (quot, rem) = num.div_rem(&c);
            if !rem.is_zero() {
                return Err(Error::InvalidParameters(format!(
                    "{cp}: inexact division computing P[{i}][{}] ({num} / {c})",
                    j + 1
                )));
            }
            row.push(quot);
        }
        row.truncate(d + 1);
        rows.push(row);
    }
    EigenMatrix::from_rows(rows)
}

/// Closed form of the last row: `P_{dj} = (-1)^j [d over j]_b b^{C(j,2)}`.
pub fn last_row(cp: &ClassicalParams) -> Vec<BigInt> {
    let d = cp.di();
    (0..=d)
        .map(|j| {
            let g = gauss_binom(d, j, &cp.b).expect("valid base");
            let p = bpow(&cp.b, choose2(j) as u32);
            g * p * neg_one_pow(j)
        })
        .collect()
}

/// Recurrence-built `P` for a scheme. Rows are in the natural order of the
/// family formulas (descending `theta` whenever `b > 0`).
pub fn scheme_p_matrix(scheme: &SchemeId) -> Result<EigenMatrix> {
    p_matrix_recurrence(&family_to_classical(scheme))
}

/// Number of vertices.
pub fn vertex_count(scheme: &SchemeId) -> BigInt {
    match *scheme {
        SchemeId::Hamming { d, q } => ipow(q as i64, d),
        SchemeId::Johnson { n, d } => binom(n as i64, d as i64).expect("n >= 0"),
        SchemeId::Grassmann { q, n, d } => {
            gauss_binom(n as i64, d as i64, &BigInt::from(q)).expect("valid base")
        }
        SchemeId::DualPolar { q, d, e } => {
            let qb = BigInt::from(q);
            (0..d as i64)
                .map(|i| pow_halfint(&qb, e.add_int(i)).expect("validated") + 1)
                .product()
        }
        SchemeId::Bilinear { q, d, e } => ipow(q as i64, d * e),
        SchemeId::Alternating { q, n } => ipow(q as i64, n * (n - 1) / 2),
        SchemeId::Hermitian { q, d } => ipow(q as i64, d * d),
    }
}

/// Multiplicities via orthogonality: `m_i = v / sum_j P_{ij}^2 / k_j`.
pub fn multiplicities_from(p: &EigenMatrix, v: &BigInt) -> Result<Vec<BigInt>> {
    let k = p.valencies();
    if k.iter().any(|kj| !kj.is_positive()) {
        return Err(Error::Inconsistency("nonpositive valency in row 0".into()));
    }
    (0..=p.d())
        .map(|i| {
            let s: BigRat = (0..=p.d())
                .map(|j| BigRat::new(p.get(i, j) * p.get(i, j), k[j].clone()))
                .sum();
            let m = BigRat::from_integer(v.clone()) / s;
            if !m.is_integer() || !m.is_positive() {
                return Err(Error::Inconsistency(format!(
                    "multiplicity m_{i} = {m} is not a positive integer"
                )));
            }
            Ok(m.to_integer())
        })
        .collect()
}

pub fn multiplicities(scheme: &SchemeId) -> Result<Vec<BigInt>> {
    let p = scheme_p_matrix(scheme)?;
    multiplicities_from(&p, &vertex_count(scheme))
}

/// Vertex count, valencies and multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumData {
    #[serde(with = "crate::report::bigint_str")]
    pub v: BigInt,
    #[serde(with = "crate::report::bigint_vec")]
    pub valencies: Vec<BigInt>,
    #[serde(with = "crate::report::bigint_vec")]
    pub multiplicities: Vec<BigInt>,
}

pub fn spectrum_data(scheme: &SchemeId) -> Result<SpectrumData> {
    let p = scheme_p_matrix(scheme)?;
    spectrum_data_from(scheme, &p)
}

pub fn spectrum_data_from(scheme: &SchemeId, p: &EigenMatrix) -> Result<SpectrumData> {
    let v = vertex_count(scheme);
    let valencies = p.valencies();
    let total: BigInt = valencies.iter().sum();
    if total != v {
        return Err(Error::Inconsistency(format!(
            "{scheme}: valencies sum to {total}, expected v = {v}"
        )));
    }
    let multiplicities = multiplicities_from(p, &v)?;
    Ok(SpectrumData {
        v,
        valencies,
        multiplicities,
    })
}

/// Number of sign changes in a sequence, skipping zeros.
pub fn sign_changes(values: &[BigInt]) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for v in values {
        let s = crate::exact::sign(v);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// The criterion for strictly descending `theta` when `b > 0`:
/// `alpha <= b - 1` or `beta > alpha [d-1 over 1] - b^{d-1}`.
pub fn theta_descending_criterion(cp: &ClassicalParams) -> bool {
    let d = cp.di();
    cp.alpha <= &cp.b - 1 || cp.beta > &cp.alpha * cp.g1(d - 1) - bpow(&cp.b, (d - 1) as u32)
}

/// The default verification grid of each family.
pub fn default_grid(family: Family) -> Vec<SchemeId> {
    let mut out = Vec::new();
    match family {
        Family::Hamming => {
            for q in 2..=5 {
                for d in 1..=8 {
                    out.push(SchemeId::Hamming { d, q });
                }
            }
        }
        Family::Johnson => {
            for n in 2..=16 {
                for d in 1..=n / 2 {
                    out.push(SchemeId::Johnson { n, d });
                }
            }
        }
        Family::Grassmann => {
            for q in [2, 3] {
                for n in 2..=8 {
                    for d in 1..=n / 2 {
                        out.push(SchemeId::Grassmann { q, n, d });
                    }
                }
            }
        }
        Family::DualPolar => {
            for q in [2, 3, 4] {
                for d in 1..=6 {
                    for twice in 0..=4 {
                        if let Ok(s) = SchemeId::dual_polar(q, d, HalfInt::from_twice(twice)) {
                            out.push(s);
                        }
                    }
                }
            }
        }
        Family::Bilinear => {
            for q in [2, 3, 4] {
                for d in 1..=6 {
                    for e in d..=6 {
                        out.push(SchemeId::Bilinear { q, d, e });
                    }
                }
            }
        }
        Family::Alternating => {
            for q in [2, 3] {
                for n in 2..=8 {
                    out.push(SchemeId::Alternating { q, n });
                }
            }
        }
        Family::Hermitian => {
            for q in [2, 3, 4] {
                for d in 1..=5 {
                    out.push(SchemeId::Hermitian { q, d });
                }
            }
        }
    }
    out
}
