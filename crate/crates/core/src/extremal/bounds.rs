//! Exact checkers for the estimates used in the proofs: both sides are
//! evaluated as big rationals and compared without rounding.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binom, choose2, gauss_binom, ipow, rpow, BigRat, GaussTable};
use crate::families::entry;
use crate::par;
use crate::schemes::SchemeId;

use super::params::ParamBox;
use super::theorems::herm_main_term;

/// Named integer parameters of one lemma instance, e.g. `q=3,d=5,j=4,i=2`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LemmaParams(pub BTreeMap<String, i64>);

impl LemmaParams {
    pub fn new(pairs: &[(&str, i64)]) -> Self {
        LemmaParams(pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect())
    }

    pub fn get(&self, key: &str) -> Result<i64> {
        self.0
            .get(key)
            .copied()
            .ok_or_else(|| Error::Usage(format!("missing lemma parameter {key}")))
    }

    fn with(&self, key: &str, v: i64) -> Self {
        let mut m = self.0.clone();
        m.insert(key.to_string(), v);
        LemmaParams(m)
    }
}

impl FromStr for LemmaParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut m = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("lemma parameter {part:?} is not key=value")))?;
            let v: i64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Usage(format!("lemma parameter {k}: {v:?} is not an integer")))?;
            m.insert(k.trim().to_ascii_lowercase(), v);
        }
        Ok(LemmaParams(m))
    }
}

impl fmt::Display for LemmaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}", s.join(","))
    }
}

/// One exact comparison `lhs relation rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    #[serde(with = "crate::report::bigrat_str")]
    pub lhs: BigRat,
    pub relation: String,
    #[serde(with = "crate::report::bigrat_str")]
    pub rhs: BigRat,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub lemma_id: String,
    pub params: LemmaParams,
    /// Sides of the first (principal) comparison.
    #[serde(with = "crate::report::bigrat_str")]
    pub lhs: BigRat,
    #[serde(with = "crate::report::bigrat_str")]
    pub rhs: BigRat,
    #[serde(with = "crate::report::bigint_opt")]
    pub main_term: Option<BigInt>,
    /// Auxiliary exponents and thresholds (`s`, `h0`, `j0`, ...), exact.
    pub aux: BTreeMap<String, String>,
    pub checks: Vec<BoundCheck>,
    pub holds: bool,
}

#[derive(Clone, Copy)]
enum Rel {
    Le,
    Lt,
    Ge,
    Eq,
}

struct Builder {
    checks: Vec<BoundCheck>,
    main_term: Option<BigInt>,
    aux: BTreeMap<String, String>,
}

impl Builder {
    fn new() -> Self {
        Builder { checks: Vec::new(), main_term: None, aux: BTreeMap::new() }
    }

    fn cmp(&mut self, name: &str, lhs: BigRat, rel: Rel, rhs: BigRat) {
        let (holds, r) = match rel {
            Rel::Le => (lhs <= rhs, "<="),
            Rel::Lt => (lhs < rhs, "<"),
            Rel::Ge => (lhs >= rhs, ">="),
            Rel::Eq => (lhs == rhs, "="),
        };
        self.checks.push(BoundCheck { name: name.into(), lhs, relation: r.into(), rhs, holds });
    }

    fn aux(&mut self, k: &str, v: impl ToString) {
        self.aux.insert(k.into(), v.to_string());
    }

    fn finish(self, id: &str, params: &LemmaParams) -> BoundReport {
        let first = self.checks.first().expect("at least one comparison");
        BoundReport {
            lemma_id: id.to_string(),
            params: params.clone(),
            lhs: first.lhs.clone(),
            rhs: first.rhs.clone(),
            main_term: self.main_term,
            aux: self.aux,
            holds: self.checks.iter().all(|c| c.holds),
            checks: self.checks,
        }
    }
}

fn r(x: BigInt) -> BigRat {
    BigRat::from_integer(x)
}

fn ri(x: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(x))
}

fn frac(a: i64, b: i64) -> BigRat {
    BigRat::new(a.into(), b.into())
}

fn hyp(ok: bool, id: &str, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{id}: hypothesis {what} fails")))
    }
}

fn u(x: i64, id: &str, name: &str) -> Result<u32> {
    u32::try_from(x).map_err(|_| Error::Precondition(format!("{id}: {name} = {x} is negative")))
}

fn idx(x: i64, lo: i64, hi: i64, id: &str, name: &str) -> Result<usize> {
    hyp((lo..=hi).contains(&x), id, &format!("{lo} <= {name} <= {hi}"))?;
    Ok(x as usize)
}

fn scheme_or_pre(s: Result<SchemeId>, id: &str) -> Result<SchemeId> {
    s.map_err(|e| Error::Precondition(format!("{id}: {e}")))
}

/// Registered lemma ids with their default sweep boxes.
pub fn bound_lemma_ids() -> &'static [(&'static str, &'static str)] {
    &[
        ("H-LEM-QPOW", "q=2..5,d=1..10"),
        ("H-LEM-3TERM", "q=2..8,d=1..30"),
        ("H-LEM-BD", "d=1..30"),
        ("J-LEM-INEQ", "n=2..40"),
        ("J-LEM-EJI", "n=2..80"),
        ("J-LEM-CHVATAL", "n=2..40"),
        ("G-LEM-BOUND", "q=2..4,d=1..8,x=0..4"),
        ("G-LEM-SP", "d=13..18"),
        ("B-LEM-MAIN", "q=4..5,d=1..8,e=1..8"),
        ("A-PROP-UP", "q=2..5,n=2..12"),
        ("A-PROP-DOWN", "q=2..5,n=2..12"),
        ("Q-PROP-EST", "q=4..5,d=2..8"),
        ("E-LEM-GAUSS", "b=2..5,n=0..12"),
    ]
}

/// Evaluates one lemma instance exactly. Parameters outside the lemma's
/// hypotheses give a precondition error naming the failed hypothesis.
pub fn check_bound_lemma(id: &str, p: &LemmaParams) -> Result<BoundReport> {
    let id = id.to_ascii_uppercase();
    let mut b = Builder::new();
    match id.as_str() {
        "H-LEM-QPOW" => {
            let (q, d) = (p.get("q")?, p.get("d")?);
            let s = scheme_or_pre(SchemeId::hamming(u(d, &id, "d")?, u(q, &id, "q")?), &id)?;
            let (j, i) = (idx(p.get("j")?, 0, d, &id, "j")?, idx(p.get("i")?, 0, d, &id, "i")?);
            let k = entry(&s, 1, j, i)?;
            let rhs = ipow(q - 1, (d - i as i64) as u32) * binom(d, j as i64)?;
            b.cmp("qpow", r(k.abs()), Rel::Le, r(rhs));
        }
        "H-LEM-3TERM" => {
            let (q, d) = (p.get("q")?, p.get("d")?);
            let s = scheme_or_pre(SchemeId::hamming(u(d, &id, "d")?, u(q, &id, "q")?), &id)?;
            let (j, i) = (p.get("j")?, p.get("i")?);
            hyp(1 < i && i < d, &id, "1 < i < d")?;
            hyp(q * j >= q * d - d + 1 && j <= d, &id, "d-(d-1)/q <= j <= d")?;
            hyp(q * j <= 2 * (q - 1) * (d - i), &id, "qj <= 2(q-1)(d-i)")?;
            let k = |i: i64| entry(&s, 1, j as usize, i as usize).map(|x| x.abs());
            let m = k(i - 1)?.max(k(i)?);
            b.cmp("3term", r(k(i + 1)?), Rel::Le, r(m));
        }
        "H-LEM-BD" => {
            let (d, j, i) = (p.get("d")?, p.get("j")?, p.get("i")?);
            hyp(j >= 0 && 2 * j < d, &id, "0 <= j < d/2")?;
            hyp(0 < i && i < d, &id, "0 < i < d")?;
            let c = |n: i64, k: i64| if k < 0 || k > n { BigInt::zero() } else { binom(n, k).expect("n >= 0") };
            let mut sum = BigInt::zero();
            for g in 0..=j / 2 {
                sum += c(i, 2 * g) * c(d - i, j - 2 * g);
            }
            b.cmp("lower", r(c(d - 1, j - 1)), Rel::Le, r(sum.clone()));
            b.cmp("upper", r(sum), Rel::Le, r(c(d - 1, j)));
        }
        "J-LEM-INEQ" => {
            let (n, d, j) = (p.get("n")?, p.get("d")?, p.get("j")?);
            let s = scheme_or_pre(SchemeId::johnson(u(n, &id, "n")?, u(d, &id, "d")?), &id)?;
            let e = n - d;
            hyp(1 <= j && j <= d, &id, "1 <= j <= d")?;
            hyp((j - 1) * (n + 1) >= d * e, &id, "(j-1)(n+1) >= de")?;
            let ev = |j: i64, i: usize| entry(&s, 1, j as usize, i);
            let lhs = ev(j, 0)? + ev(j - 1, 1)?.abs() + ev(j, 1)?.abs();
            b.cmp("ineq", r(lhs), Rel::Le, r(ev(j - 1, 0)?));
            b.aux("j0", frac(d * e, n));
        }
        "J-LEM-EJI" => {
            let (n, d, j, i) = (p.get("n")?, p.get("d")?, p.get("j")?, p.get("i")?);
            let s = scheme_or_pre(SchemeId::johnson(u(n, &id, "n")?, u(d, &id, "d")?), &id)?;
            let de = d * (n - d);
            hyp(j * n >= de && 2 * j * n < 2 * de + 3 * n, &id, "j0 <= j < j0 + 3/2")?;
            hyp(j * (n - 1) >= de && j < d, &id, "de/(n-1) <= j < d")?;
            hyp(3 <= i && i <= d, &id, "3 <= i <= d")?;
            let ev = |i: i64| entry(&s, 1, j as usize, i as usize).map(|x| x.abs());
            b.cmp("eji", r(ev(i)?), Rel::Le, r(ev(1)?));
            b.aux("j0", frac(de, n));
        }
        "J-LEM-CHVATAL" => {
            return chvatal_concentration_check(
                u(p.get("n")?, &id, "n")?,
                u(p.get("d")?, &id, "d")?,
            );
        }
        "G-LEM-BOUND" => {
            let (q, n, d) = (p.get("q")?, p.get("n")?, p.get("d")?);
            let s = scheme_or_pre(SchemeId::grassmann(u(q, &id, "q")?, u(n, &id, "n")?, u(d, &id, "d")?), &id)?;
            hyp(q >= 3 || n > 2 * d, &id, "q >= 3 or n > 2d")?;
            let (j, i) = (p.get("j")?, p.get("i")?);
            idx(j, 0, d, &id, "j")?;
            idx(i, 0, d, &id, "i")?;
            let t = GaussTable::new(&BigInt::from(q), n).expect("q >= 2");
            let (tm, s_aux) = if i + j <= d {
                (ipow(q, (j * j) as u32) * t.get(d - i, j) * t.get(n - d, n - d - j), 1)
            } else {
                let sx = i + j - d;
                let e = j * (d - i) + choose2(sx);
                let v = ipow(q, e as u32) * t.get(i, d - j) * t.get(n - i - j, n - d - j);
                (if sx % 2 == 1 { -v } else { v }, sx)
            };
            let g = entry(&s, 1, j as usize, i as usize)?;
            let dev = BigRat::new((&g - &tm).abs(), tm.abs());
            b.cmp("bound", dev.clone(), Rel::Lt, rpow(&q.into(), 2 * d + 1 - n) / ri((q - 1) * (q - 1)));
            if q == 2 && n > 2 * d && i >= d - j + 1 {
                let rhs = rpow(&q.into(), 2 * d + 2 - n) / ri((q - 1) * (q * q - 1));
                b.cmp("remark", dev, Rel::Lt, rhs);
            }
            b.main_term = Some(tm);
            b.aux("s", s_aux);
        }
        "G-LEM-SP" => {
            let d = p.get("d")?;
            let (j, i) = (p.get("j")?, p.get("i")?);
            if let Ok(q) = p.get("q") {
                hyp(q == 2, &id, "q = 2")?;
            }
            if let Ok(n) = p.get("n") {
                hyp(n == 2 * d, &id, "n = 2d")?;
            }
            hyp(d >= 13, &id, "d >= 13")?;
            hyp(5 <= j && j <= d - 5, &id, "5 <= j <= d-5")?;
            hyp(d - j <= i && i < d, &id, "d-j <= i < d")?;
            let s = scheme_or_pre(SchemeId::grassmann(2, u(2 * d, &id, "n")?, u(d, &id, "d")?), &id)?;
            let t = GaussTable::new(&BigInt::from(2), 2 * d).expect("base 2");
            let sx = i + j - d + 1;
            let mag = ipow(2, (j * (d - i - 1) + choose2(sx)) as u32)
                * t.get(i, d - j - 1)
                * t.get(j + 1, 1)
                * t.get(2 * d - i - j - 1, d - j);
            let tm = if sx % 2 == 1 { -mag } else { mag };
            let g = entry(&s, 1, j as usize, i as usize)?;
            let at = r(tm.abs());
            b.cmp("upper", r(g.abs()), Rel::Le, frac(3, 2) * at.clone());
            if i == d - j {
                b.cmp("negative", r(g.clone()), Rel::Lt, ri(0));
                b.cmp("lower", r(g.abs()), Rel::Ge, frac(5, 171) * at);
            }
            b.main_term = Some(tm);
            b.aux("s", sx);
        }
        "B-LEM-MAIN" => {
            let (q, d, e) = (p.get("q")?, p.get("d")?, p.get("e")?);
            let s = scheme_or_pre(SchemeId::bilinear(u(q, &id, "q")?, u(d, &id, "d")?, u(e, &id, "e")?), &id)?;
            hyp(q >= 4, &id, "q >= 4")?;
            let (j, i) = (p.get("j")?, p.get("i")?);
            idx(j, 0, d, &id, "j")?;
            idx(i, 0, d, &id, "i")?;
            let hmax = j.min(d - i);
            let sx = hmax * (d + e - i - hmax) + (d - j) * (j - hmax) + choose2(j - hmax);
            let bv = entry(&s, 1, j as usize, i as usize)?.abs();
            let qs = r(ipow(q, sx as u32));
            b.cmp("lower", frac(5, 9) * qs.clone(), Rel::Lt, r(bv.clone()));
            b.cmp("upper", r(bv), Rel::Lt, frac(13, 4) * qs);
            b.main_term = Some(ipow(q, sx as u32));
            b.aux("s", sx);
            b.aux("h0", frac(2 * (e - i) + 1, 2));
            b.aux("h_max", hmax);
        }
        "A-PROP-UP" | "A-PROP-DOWN" => {
            let (q, n) = (p.get("q")?, p.get("n")?);
            let s = scheme_or_pre(SchemeId::alternating(u(q, &id, "q")?, u(n, &id, "n")?), &id)?;
            let d = n / 2;
            let m = 2 * n - 2 * d - 1;
            let (j, i) = (p.get("j")?, p.get("i")?);
            idx(j, 0, d, &id, "j")?;
            idx(i, 0, d, &id, "i")?;
            let bb = BigInt::from(q * q);
            let t = GaussTable::new(&bb, d + 1).expect("q^2 >= 4");
            let a = r(entry(&s, 1, j as usize, i as usize)?);
            let qb = BigInt::from(q);
            if id == "A-PROP-UP" {
                hyp(i + j <= d, &id, "i+j <= d")?;
                let tm = ipow(q, (j * m) as u32) * t.get(d - i, j);
                let dev = ri(1) - a / r(tm.clone());
                b.cmp("nonneg", ri(0), Rel::Le, dev.clone());
                b.cmp("upper", dev, Rel::Lt, ri(2) / rpow(&qb, m + 2 - 2 * i - 2 * j));
                b.main_term = Some(tm);
            } else {
                let sx = i + j - d;
                hyp(sx >= 0, &id, "s = i+j-d >= 0")?;
                let mag = ipow(q, (sx * (sx - 1) + (d - i) * m) as u32) * t.get(i, d - j);
                let tm = if sx % 2 == 1 { -mag } else { mag };
                let dev = ri(1) - a / r(tm.clone());
                let mid = r(t.get(i + 1, d - j) * t.get(d - i, 1)) / (rpow(&qb, m - 2 * sx) * r(t.get(i, d - j).clone()));
                let q3 = r(ipow(q, 3)) / (r(ipow(q * q - 1, 2)) * rpow(&qb, 2 * n - 4 * d));
                b.cmp("nonneg", ri(0), Rel::Le, dev.clone());
                b.cmp("second-term", dev, Rel::Le, mid.clone());
                b.cmp("estimate", mid, Rel::Lt, q3.clone());
                b.cmp("below-one", q3, Rel::Lt, ri(1));
                b.main_term = Some(tm);
                b.aux("s", sx);
            }
            b.aux("m", m);
        }
        "Q-PROP-EST" => {
            let (q, d) = (p.get("q")?, p.get("d")?);
            let s = scheme_or_pre(SchemeId::hermitian(u(q, &id, "q")?, u(d, &id, "d")?), &id)?;
            hyp(d >= 2, &id, "d >= 2")?;
            hyp(q >= 4, &id, "q >= 4")?;
            let (j, i) = (p.get("j")?, p.get("i")?);
            idx(j, 1, d, &id, "j")?;
            idx(i, 0, d, &id, "i")?;
            let t = GaussTable::new(&BigInt::from(-q), d).expect("base -q");
            let sv = herm_main_term(&t, q, d, j, i);
            let signed = if j % 2 == 1 { -sv.clone() } else { sv.clone() };
            let qv = entry(&s, 1, j as usize, i as usize)?;
            b.cmp("estimate", r((&qv - &signed).abs()), Rel::Le, frac(11, 27) * r(sv.abs()));
            b.cmp("sign", ri(crate::exact::sign(&qv) as i64), Rel::Eq, ri(crate::exact::sign(&signed) as i64));
            b.main_term = Some(sv);
        }
        "E-LEM-GAUSS" => {
            let (base, n, k) = (p.get("b")?, p.get("n")?, p.get("k")?);
            hyp(base > 1, &id, "b > 1")?;
            hyp(n >= 0 && k >= 0, &id, "n, k >= 0")?;
            let bb = BigInt::from(base);
            let pw = |e: i64| r(ipow(base, e as u32));
            let mut any = false;
            if k >= 1 {
                let qt = BigRat::new(ipow(base, n as u32) - 1, ipow(base, k as u32) - 1);
                if n <= k {
                    b.cmp("i", qt.clone(), Rel::Le, rpow(&bb, n - k));
                }
                b.cmp("ii", qt, Rel::Lt, rpow(&bb, n - k + 1) / ri(base - 1));
                any = true;
            }
            if k <= n {
                let g = r(gauss_binom(n, k, &bb)?);
                let main = pw(k * (n - k));
                b.cmp("iii", g.clone(), Rel::Ge, main.clone());
                if 0 < k && k < n {
                    b.cmp("iv", g.clone(), Rel::Ge, (ri(1) + frac(1, base)) * main.clone());
                }
                if base >= 4 {
                    b.cmp("v", g, Rel::Lt, (ri(1) + frac(2, base)) * main);
                }
                any = true;
            }
            hyp(any, &id, "k >= 1 or k <= n")?;
        }
        _ => return Err(Error::Usage(format!("unknown lemma id {id:?}"))),
    }
    Ok(b.finish(&id, p))
}

/// Chvatal concentration: `11 * sum_{j in I} k_j >= 8 v` with
/// `j in I <=> (jn - de)^2 < d n^2`.
pub fn chvatal_concentration_check(n: u32, d: u32) -> Result<BoundReport> {
    let s = SchemeId::johnson(n, d).map_err(|e| Error::Precondition(format!("J-LEM-CHVATAL: {e}")))?;
    let (n, d) = (n as i64, d as i64);
    let e = n - d;
    let mut sum = BigInt::zero();
    let mut members = Vec::new();
    for j in 0..=d {
        let x = j * n - d * e;
        if BigInt::from(x) * x < BigInt::from(d) * n * n {
            sum += binom(d, j)? * binom(e, j)?;
            members.push(j.to_string());
        }
    }
    let v = crate::schemes::vertex_count(&s);
    let mut b = Builder::new();
    b.cmp("concentration", r(sum * 11), Rel::Ge, r(v * 8));
    b.aux("j0", frac(d * e, n));
    b.aux("I", members.join("|"));
    Ok(b.finish("J-LEM-CHVATAL", &LemmaParams::new(&[("n", n), ("d", d)])))
}

/// Sweep over every hypothesis-satisfying instance in a box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSweep {
    pub lemma_id: String,
    pub param_box: String,
    /// Instances on which the lemma was evaluated.
    pub checked: u64,
    /// Instances outside the hypotheses.
    pub skipped: u64,
    pub violation_count: u64,
    /// The first violations (at most 200).
    pub violations: Vec<BoundReport>,
    pub holds: bool,
}

/// Runs a lemma on every instance of the box; index parameters (`i`, `j`,
/// `k`) not fixed by the box range over all their values.
pub fn sweep_bound_lemma(id: &str, bx: &ParamBox) -> Result<BoundSweep> {
    let id = id.to_ascii_uppercase();
    if !bound_lemma_ids().iter().any(|(l, _)| *l == id) {
        return Err(Error::Usage(format!("unknown lemma id {id:?}")));
    }
    let get = |k: &str| bx.ints(k);
    let need = |k: &str| get(k)?.ok_or_else(|| Error::Usage(format!("{id} box needs key {k}")));
    let allowed: &[&str] = match id.as_str() {
        "H-LEM-QPOW" | "H-LEM-3TERM" => &["q", "d", "j", "i"],
        "H-LEM-BD" => &["d", "j", "i"],
        "J-LEM-INEQ" | "J-LEM-EJI" | "J-LEM-CHVATAL" => &["n", "d", "j", "i"],
        "G-LEM-BOUND" => &["q", "d", "n", "x", "j", "i"],
        "G-LEM-SP" => &["d", "j", "i"],
        "B-LEM-MAIN" => &["q", "d", "e", "j", "i"],
        "A-PROP-UP" | "A-PROP-DOWN" => &["q", "n", "j", "i"],
        "Q-PROP-EST" => &["q", "d", "j", "i"],
        _ => &["b", "n", "k"],
    };
    for k in bx.keys() {
        if !allowed.contains(&k) {
            return Err(Error::Usage(format!("box key {k:?} not valid for {id}")));
        }
    }
    // Base tuples (without the index parameters), each with its diameter.
    let mut base: Vec<(LemmaParams, i64)> = Vec::new();
    match id.as_str() {
        "H-LEM-QPOW" | "H-LEM-3TERM" | "B-LEM-MAIN" | "Q-PROP-EST" => {
            let es = if id == "B-LEM-MAIN" { need("e")? } else { vec![0] };
            for q in need("q")? {
                for d in need("d")? {
                    for &e in &es {
                        let mut lp = LemmaParams::new(&[("q", q), ("d", d)]);
                        if id == "B-LEM-MAIN" {
                            if e < d {
                                continue;
                            }
                            lp = lp.with("e", e);
                        }
                        base.push((lp, d));
                    }
                }
            }
        }
        "H-LEM-BD" | "G-LEM-SP" => {
            for d in need("d")? {
                base.push((LemmaParams::new(&[("d", d)]), d));
            }
        }
        "J-LEM-INEQ" | "J-LEM-EJI" | "J-LEM-CHVATAL" => {
            let ds = get("d")?;
            for n in need("n")? {
                for d in ds.clone().unwrap_or_else(|| (1..=n / 2).collect()) {
                    base.push((LemmaParams::new(&[("n", n), ("d", d)]), d));
                }
            }
        }
        "G-LEM-BOUND" => {
            let ns = get("n")?;
            let xs = get("x")?;
            for q in need("q")? {
                for d in need("d")? {
                    let ns: Vec<i64> = match (&ns, &xs) {
                        (Some(ns), None) => ns.clone(),
                        (None, Some(xs)) => xs.iter().map(|x| 2 * d + x).collect(),
                        _ => return Err(Error::Usage("G-LEM-BOUND box needs n or x".into())),
                    };
                    for n in ns {
                        base.push((LemmaParams::new(&[("q", q), ("n", n), ("d", d)]), d));
                    }
                }
            }
        }
        "A-PROP-UP" | "A-PROP-DOWN" => {
            for q in need("q")? {
                for n in need("n")? {
                    base.push((LemmaParams::new(&[("q", q), ("n", n)]), n / 2));
                }
            }
        }
        _ => {
            let ns = need("n")?;
            for b in need("b")? {
                for &n in &ns {
                    base.push((LemmaParams::new(&[("b", b), ("n", n)]), n));
                }
            }
        }
    }
    let js = get("j")?;
    let is = get("i")?;
    let ks = get("k")?;
    let per_base = |(lp, d): &(LemmaParams, i64)| -> Result<(u64, u64, Vec<BoundReport>)> {
        let mut tuples: Vec<LemmaParams> = Vec::new();
        match id.as_str() {
            "J-LEM-CHVATAL" => tuples.push(lp.clone()),
            "E-LEM-GAUSS" => {
                let n = lp.get("n")?;
                for k in ks.clone().unwrap_or_else(|| (0..=n + 1).collect()) {
                    tuples.push(lp.with("k", k));
                }
            }
            "J-LEM-INEQ" => {
                for j in js.clone().unwrap_or_else(|| (0..=*d).collect()) {
                    tuples.push(lp.with("j", j));
                }
            }
            _ => {
                for j in js.clone().unwrap_or_else(|| (0..=*d).collect()) {
                    for i in is.clone().unwrap_or_else(|| (0..=*d).collect()) {
                        tuples.push(lp.with("j", j).with("i", i));
                    }
                }
            }
        }
        let (mut checked, mut skipped, mut bad) = (0, 0, Vec::new());
        for t in tuples {
            match check_bound_lemma(&id, &t) {
                Ok(rep) => {
                    checked += 1;
                    if !rep.holds {
                        bad.push(rep);
                    }
                }
                Err(Error::Precondition(_)) => skipped += 1,
                Err(e) => return Err(e),
            }
        }
        Ok((checked, skipped, bad))
    };
    let results = par::map(&base, per_base);
    let mut sweep = BoundSweep {
        lemma_id: id.clone(),
        param_box: bx.to_string(),
        checked: 0,
        skipped: 0,
        violation_count: 0,
        violations: Vec::new(),
        holds: true,
    };
    for res in results {
        let (c, s, bad) = res?;
        sweep.checked += c;
        sweep.skipped += s;
        sweep.violation_count += bad.len() as u64;
        for rep in bad {
            if sweep.violations.len() < 200 {
                sweep.violations.push(rep);
            }
        }
    }
    sweep.holds = sweep.violation_count == 0;
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LemmaParams {
        s.parse().unwrap()
    }

    #[test]
    fn preconditions_are_named() {
        let e = check_bound_lemma("H-LEM-3TERM", &lp("q=3,d=5,j=1,i=2")).unwrap_err();
        assert!(matches!(e, Error::Precondition(ref m) if m.contains("d-(d-1)/q")), "{e}");
        let e = check_bound_lemma("G-LEM-SP", &lp("d=12,j=5,i=7")).unwrap_err();
        assert!(matches!(e, Error::Precondition(ref m) if m.contains("d >= 13")));
        assert!(matches!(check_bound_lemma("X-NOPE", &lp("q=2")), Err(Error::Usage(_))));
    }

    #[test]
    fn grassmann_special_case_example() {
        let rep = check_bound_lemma("G-LEM-SP", &lp("d=13,j=5,i=8")).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.checks.len(), 3);
        assert!(rep.main_term.unwrap().is_negative());
    }

    #[test]
    fn hermitian_estimate_example() {
        for j in 1..=5 {
            for i in 0..=5 {
                let rep = check_bound_lemma("Q-PROP-EST", &lp(&format!("q=4,d=5,j={j},i={i}"))).unwrap();
                assert!(rep.holds, "{rep:?}");
            }
        }
    }

    #[test]
    fn chvatal_examples() {
        assert!(chvatal_concentration_check(8, 3).unwrap().holds);
        assert!(chvatal_concentration_check(40, 20).unwrap().holds);
        for d in 1..=12 {
            assert!(chvatal_concentration_check(2 * d, d).unwrap().holds);
        }
    }

    #[test]
    fn qpow_sweep_small() {
        let s = sweep_bound_lemma("H-LEM-QPOW", &"q=2..5,d=1..10".parse().unwrap()).unwrap();
        assert!(s.holds);
        assert_eq!(s.checked, (2..=5).map(|_| (1..=10).map(|d: u64| (d + 1) * (d + 1)).sum::<u64>()).sum::<u64>());
    }
}
