//! Degenerate spectra: distinct-eigenvalue counts, coincidence explanations
//! for the Hamming scheme, component counts, strongly regular parameters and
//! the binary Krawtchouk zero scan.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::{hamming_matrix_fast, ParamBox};
use crate::par;
use crate::schemes::{multiplicities_from, scheme_p_matrix, vertex_count, EigenMatrix, Family, SchemeId};

/// Box used for the published coincidence table: binary up to `d = 19`,
/// and `3 <= q <= 10` up to `d = 12`.
pub const TABLE_BOXES: [&str; 2] = ["q=2,d=1..19", "q=3..10,d=1..12"];

fn distinct_of(col: &[BigInt]) -> usize {
    col.iter().collect::<BTreeSet<_>>().len()
}

/// Number of distinct values in column `j`.
pub fn distinct_count(scheme: &SchemeId, j: usize) -> Result<usize> {
    let p = scheme_p_matrix(scheme)?;
    if j > p.d() {
        return Err(Error::Domain(format!("j = {j} exceeds the diameter {}", p.d())));
    }
    Ok(distinct_of(&p.column(j)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Lemma {
    Coin2I,
    Coin2Ii,
    Coin2Iii,
    Coin2Iv,
    CoinqI,
    CoinqIi,
    CoinqIii,
    ZeroPair,
}

impl Lemma {
    const ORDER: [Lemma; 8] = [
        Lemma::Coin2I,
        Lemma::Coin2Ii,
        Lemma::Coin2Iii,
        Lemma::Coin2Iv,
        Lemma::CoinqI,
        Lemma::CoinqIi,
        Lemma::CoinqIii,
        Lemma::ZeroPair,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Lemma::Coin2I => "L-coin2-i",
            Lemma::Coin2Ii => "L-coin2-ii",
            Lemma::Coin2Iii => "L-coin2-iii",
            Lemma::Coin2Iv => "L-coin2-iv",
            Lemma::CoinqI => "L-coinq-i",
            Lemma::CoinqIi => "L-coinq-ii",
            Lemma::CoinqIii => "L-coinq-iii",
            Lemma::ZeroPair => "zero-pair",
        }
    }

    /// Index pairs the lemma forces to be equal in column `j` of `H(d,q)`.
    fn pairs(self, d: usize, q: usize, j: usize, col: &[BigInt]) -> Vec<(usize, usize)> {
        let all = |f: &dyn Fn(usize) -> bool| -> Vec<(usize, usize)> {
            let idx: Vec<usize> = (0..=d).filter(|&i| f(i)).collect();
            idx.windows(2).map(|w| (w[0], w[1])).collect()
        };
        match self {
            Lemma::Coin2I if q == 2 && j % 2 == 0 => (0..=d / 2).filter(|&i| i < d - i).map(|i| (i, d - i)).collect(),
            Lemma::Coin2Ii if q == 2 && d == 2 * j => all(&|i| i % 2 == 1),
            Lemma::Coin2Iii if q == 2 && d + 1 == 2 * j => (1..j).map(|h| (2 * h - 1, 2 * h)).collect(),
            Lemma::Coin2Iv if q == 2 && j == d => {
                let mut v = all(&|i| i % 2 == 0);
                v.extend(all(&|i| i % 2 == 1));
                v
            }
            Lemma::CoinqI if j == 0 => all(&|_| true),
            // q(h+i) = 2(d-1)(q-1) + q
            Lemma::CoinqIi if j == 2 => {
                let t = 2 * (d as i64 - 1) * (q as i64 - 1) + q as i64;
                if t % q as i64 != 0 {
                    return Vec::new();
                }
                let s = t / q as i64;
                (0..=d as i64)
                    .filter(|&h| h < s - h && s - h <= d as i64)
                    .map(|h| (h as usize, (s - h) as usize))
                    .collect()
            }
            Lemma::CoinqIii if q * j == (q - 1) * d + 1 && d >= 2 => vec![(1, 2)],
            // K_j(d-i) = (-1)^j K_j(i) only holds for q = 2.
            Lemma::ZeroPair if q == 2 => (0..=d / 2)
                .filter(|&i| i < d - i && col[i].is_zero())
                .map(|i| (i, d - i))
                .collect(),
            _ => Vec::new(),
        }
    }
}

/// One explanation of a coincidence in a column.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Explanation {
    Lemma(Lemma),
    /// `P_{a j} = P_{c j}` not accounted for by any lemma.
    Unexplained { a: usize, c: usize, j: usize },
}

impl fmt::Display for Explanation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Explanation::Lemma(l) => f.write_str(l.label()),
            Explanation::Unexplained { a, c, j } => write!(f, "unexplained(P_{{{a},{j}}}=P_{{{c},{j}}})"),
        }
    }
}

impl Serialize for Explanation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Explanation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if let Some(l) = Lemma::ORDER.iter().find(|l| l.label() == s) {
            return Ok(Explanation::Lemma(*l));
        }
        let bad = || serde::de::Error::custom(format!("bad explanation {s:?}"));
        let inner = s.strip_prefix("unexplained(P_{").and_then(|r| r.strip_suffix("})")).ok_or_else(bad)?;
        let (l, r) = inner.split_once("}=P_{").ok_or_else(bad)?;
        let parse = |x: &str| -> Option<(usize, usize)> {
            let (a, b) = x.split_once(',')?;
            Some((a.parse().ok()?, b.parse().ok()?))
        };
        let ((a, j), (c, j2)) = (parse(l).ok_or_else(bad)?, parse(r).ok_or_else(bad)?);
        if j != j2 {
            return Err(bad());
        }
        Ok(Explanation::Unexplained { a, c, j })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoincidenceRow {
    pub d: usize,
    pub q: usize,
    pub j: usize,
    pub distinct_count: usize,
    pub explanations: Vec<Explanation>,
}

impl CoincidenceRow {
    pub fn labels(&self) -> Vec<String> {
        self.explanations.iter().map(|e| e.to_string()).collect()
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.0[hi] = lo;
        true
    }
}

fn explain_column(d: usize, q: usize, j: usize, col: &[BigInt]) -> Result<CoincidenceRow> {
    let mut dsu = Dsu((0..=d).collect());
    let mut explanations = Vec::new();
    for lemma in Lemma::ORDER {
        let mut merged = false;
        for (a, c) in lemma.pairs(d, q, j, col) {
            if col[a] != col[c] {
                return Err(Error::Inconsistency(format!(
                    "{} predicts P[{a}][{j}] = P[{c}][{j}] in H({d},{q}) but {} != {}",
                    lemma.label(),
                    col[a],
                    col[c]
                )));
            }
            merged |= dsu.union(a, c);
        }
        if merged {
            explanations.push(Explanation::Lemma(lemma));
        }
    }
    // Remaining coincidences: join each leftover component to the first one
    // of its value class.
    let mut classes: BTreeMap<&BigInt, Vec<usize>> = BTreeMap::new();
    for (i, v) in col.iter().enumerate() {
        classes.entry(v).or_default().push(i);
    }
    let mut unexplained = Vec::new();
    for idx in classes.values() {
        let first = idx[0];
        for &i in &idx[1..] {
            if dsu.union(first, i) {
                unexplained.push(Explanation::Unexplained { a: first, c: i, j });
            }
        }
    }
    unexplained.sort_by_key(|e| match e {
        Explanation::Unexplained { a, c, .. } => (*a, *c),
        Explanation::Lemma(_) => (0, 0),
    });
    explanations.extend(unexplained);
    Ok(CoincidenceRow { d, q, j, distinct_count: distinct_of(col), explanations })
}

/// Tags every coincidence in column `j` of `H(d,q)` with the first lemma
/// that forces it; the rest are listed as unexplained equalities.
pub fn explain_coincidences(d: u32, q: u32, j: usize) -> Result<CoincidenceRow> {
    let p = hamming_matrix_fast(d, q)?;
    if j > p.d() {
        return Err(Error::Domain(format!("j = {j} exceeds d = {d}")));
    }
    explain_column(d as usize, q as usize, j, &p.column(j))
}

/// Number of connected components of the distance-`j` graph: the total
/// multiplicity of the eigenvalues equal to the valency.
pub fn connected_components(scheme: &SchemeId, j: usize) -> Result<BigInt> {
    let p = scheme_p_matrix(scheme)?;
    components_from(scheme, &p, j)
}

fn components_from(scheme: &SchemeId, p: &EigenMatrix, j: usize) -> Result<BigInt> {
    if j > p.d() {
        return Err(Error::Domain(format!("j = {j} exceeds the diameter {}", p.d())));
    }
    if j == 0 {
        return Ok(vertex_count(scheme));
    }
    let m = multiplicities_from(p, &vertex_count(scheme))?;
    let k = p.get(0, j);
    Ok((0..=p.d()).filter(|&i| p.get(i, j) == k).map(|i| m[i].clone()).sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgParams {
    #[serde(with = "crate::report::bigint_str")]
    pub v: BigInt,
    #[serde(with = "crate::report::bigint_str")]
    pub k: BigInt,
    #[serde(with = "crate::report::bigint_str")]
    pub lambda: BigInt,
    #[serde(with = "crate::report::bigint_str")]
    pub mu: BigInt,
}

impl SrgParams {
    pub fn identity_holds(&self) -> bool {
        &self.k * (&self.k - &self.lambda - 1) == (&self.v - &self.k - 1) * &self.mu
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

fn srg_from(v: BigInt, col: &[BigInt]) -> Option<SrgParams> {
    let vals: BTreeSet<&BigInt> = col.iter().collect();
    if vals.len() != 3 {
        return None;
    }
    let k = col[0].clone();
    let mut rest: Vec<&BigInt> = vals.into_iter().filter(|x| **x != k).collect();
    rest.sort();
    if rest.len() != 2 || rest[1] >= &k {
        return None;
    }
    let (s, r) = (rest[0], rest[1]);
    let mu = &k + r * s;
    let lambda = &mu + r + s;
    let p = SrgParams { v, k, lambda, mu };
    debug_assert!(p.identity_holds());
    p.identity_holds().then_some(p)
}

/// Parameters `(v,k,lambda,mu)` when the distance-`j` graph is connected
/// and has exactly three distinct eigenvalues.
pub fn srg_params(scheme: &SchemeId, j: usize) -> Result<Option<SrgParams>> {
    let p = scheme_p_matrix(scheme)?;
    if components_from(scheme, &p, j)? != BigInt::from(1) {
        return Ok(None);
    }
    Ok(srg_from(vertex_count(scheme), &p.column(j)))
}

/// For a disconnected graph whose components share the spectrum: the number
/// of components and the parameters of one component.
pub fn component_srg_params(scheme: &SchemeId, j: usize) -> Result<Option<(BigInt, SrgParams)>> {
    let p = scheme_p_matrix(scheme)?;
    let c = components_from(scheme, &p, j)?;
    let v = vertex_count(scheme);
    if c.is_zero() || !v.is_multiple_of(&c) {
        return Ok(None);
    }
    Ok(srg_from(&v / &c, &p.column(j)).map(|s| (c, s)))
}

/// Distinct-count window for [`scan_coincidences`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountWindow {
    pub min: usize,
    pub max: usize,
}

impl CountWindow {
    /// The four/five/six-eigenvalue blocks of the published table.
    pub const TABLE: CountWindow = CountWindow { min: 4, max: 6 };
    pub const THREE: CountWindow = CountWindow { min: 3, max: 3 };
    pub const ANY: CountWindow = CountWindow { min: 0, max: usize::MAX };
}

/// All `(d,q,j)` in the box, `1 <= j <= d`, whose column has fewer than
/// `d+1` distinct values and a distinct count inside `window`; sorted by
/// `(q,d,j)`.
pub fn scan_coincidences(family: Family, bx: &ParamBox, window: CountWindow) -> Result<Vec<CoincidenceRow>> {
    if family != Family::Hamming {
        return Err(Error::Usage(format!(
            "coincidence scans are implemented for the Hamming family only, not {}",
            family.name()
        )));
    }
    let schemes = bx.schemes(Family::Hamming)?.items;
    let rows = par::map(&schemes, |s| -> Result<Vec<CoincidenceRow>> {
        let SchemeId::Hamming { d, q } = *s else { unreachable!("hamming box") };
        let p = hamming_matrix_fast(d, q)?;
        let mut out = Vec::new();
        for j in 1..=d as usize {
            let col = p.column(j);
            let n = distinct_of(&col);
            if n <= d as usize && n >= window.min && n <= window.max {
                out.push(explain_column(d as usize, q as usize, j, &col)?);
            }
        }
        Ok(out)
    });
    let mut all = Vec::new();
    for r in rows {
        all.extend(r?);
    }
    all.sort_by_key(|r| (r.q, r.d, r.j));
    Ok(all)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroPartCheck {
    pub part: String,
    /// No mismatch once the trivial zeros are set aside.
    pub holds: bool,
    pub mismatches: Vec<String>,
    /// Mismatches against the statement read literally, trivial zeros
    /// included: `K_j(d/2) = 0` for odd `j`, and `K_j(i) = 0` with `i < j`,
    /// which is the dual zero `K_i(j) = 0` of a lower part.
    pub literal_mismatches: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroScan {
    pub d_max: u32,
    /// `(d, j, i)` with `K_j(i) = 0`, `1 <= i, j <= d/2`.
    pub zeros: Vec<(u32, u32, u32)>,
    /// Every listed zero has its partner `K_j(d-i) = 0`.
    pub symmetric: bool,
    pub parts: Vec<ZeroPartCheck>,
}

impl ZeroScan {
    pub fn all_hold(&self) -> bool {
        self.symmetric && self.parts.iter().all(|p| p.holds)
    }
}

/// Integral zeros of the binary Krawtchouk polynomials with `i, j <= d/2`,
/// checked against the four classification statements.
pub fn krawtchouk_zero_scan(q: u32, d_max: u32) -> Result<ZeroScan> {
    if q != 2 {
        return Err(Error::Usage(format!("the zero scan is for q = 2 only, got q = {q}")));
    }
    let ds: Vec<u32> = (1..=d_max).collect();
    let per_d = par::map(&ds, |&d| -> Result<(Vec<(u32, u32, u32)>, bool)> {
        let p = hamming_matrix_fast(d, 2)?;
        let mut z = Vec::new();
        let mut sym = true;
        for j in 1..=d / 2 {
            for i in 1..=d / 2 {
                if p.get(i as usize, j as usize).is_zero() {
                    z.push((d, j, i));
                    sym &= p.get((d - i) as usize, j as usize).is_zero();
                }
            }
        }
        Ok((z, sym))
    });
    let mut zeros = Vec::new();
    let mut symmetric = true;
    for r in per_d {
        let (z, s) = r?;
        zeros.extend(z);
        symmetric &= s;
    }
    let set: BTreeSet<(u32, u32, u32)> = zeros.iter().copied().collect();
    let dm = d_max as i64;
    let mut parts = Vec::new();

    let trivial = |z: &(u32, u32, u32)| (z.0 == 2 * z.2 && z.1 % 2 == 1) || z.2 < z.1;
    let mut biconditional = |name: &str, j: u32, predicted: BTreeSet<(u32, u32, u32)>| {
        let found: BTreeSet<_> = set.iter().filter(|z| z.1 == j).copied().collect();
        let (mut mm, mut lit) = (Vec::new(), Vec::new());
        for z in found.difference(&predicted) {
            let msg = format!("K_{}({}) = 0 at d = {} not predicted", z.1, z.2, z.0);
            if !trivial(z) {
                mm.push(msg.clone());
            }
            lit.push(msg);
        }
        for z in predicted.difference(&found) {
            let msg = format!("predicted K_{}({}) = 0 at d = {} but nonzero", z.1, z.2, z.0);
            mm.push(msg.clone());
            lit.push(msg);
        }
        parts.push(ZeroPartCheck { part: name.into(), holds: mm.is_empty(), mismatches: mm, literal_mismatches: lit });
    };
    let p1 = (1..=dm / 2).map(|i| ((2 * i) as u32, 1, i as u32)).collect();
    biconditional("i", 1, p1);
    let p2 = (3..).take_while(|h: &i64| h * h <= dm).map(|h| ((h * h) as u32, 2, (h * (h - 1) / 2) as u32)).collect();
    biconditional("ii", 2, p2);
    let mut p3 = BTreeSet::new();
    for h in 2..=dm {
        // d = 3h^2 + 3h + 3/2 + (h + 1/2) or 3h^2 + 3h + 3/2 - (h + 1/2)
        for (d, i) in [(3 * h * h + 4 * h + 2, h * (3 * h + 1) / 2), (3 * h * h + 2 * h + 1, h * (3 * h - 1) / 2)] {
            if d <= dm {
                p3.insert((d as u32, 3, i as u32));
            }
        }
    }
    biconditional("iii", 3, p3);
    let mut mm = Vec::new();
    for h in 1..=dm {
        let d = 8 * h + 1;
        if d > dm {
            break;
        }
        let z = (d as u32, (2 * h) as u32, (4 * h - 1) as u32);
        if !set.contains(&z) {
            mm.push(format!("K_{}({}) != 0 at d = {}", z.1, z.2, z.0));
        }
    }
    parts.push(ZeroPartCheck { part: "iv".into(), holds: mm.is_empty(), literal_mismatches: mm.clone(), mismatches: mm });
    Ok(ZeroScan { d_max, zeros, symmetric, parts })
}

/// Minimum distinct count over the connected distance-`j` graphs of `H(d,q)`.
pub fn min_distinct_connected(d: u32, q: u32) -> Result<Option<(usize, usize)>> {
    let s = SchemeId::hamming(d, q)?;
    let p = hamming_matrix_fast(d, q)?;
    let mut best: Option<(usize, usize)> = None;
    for j in 1..=d as usize {
        if components_from(&s, &p, j)? == BigInt::from(1) {
            let n = distinct_of(&p.column(j));
            if best.map_or(true, |(b, _)| n < b) {
                best = Some((n, j));
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(d: u32, q: u32) -> SchemeId {
        SchemeId::hamming(d, q).unwrap()
    }

    #[test]
    fn distinct_examples() {
        assert_eq!(distinct_count(&h(4, 3), 3).unwrap(), 3);
        assert_eq!(distinct_count(&h(5, 3), 3).unwrap(), 4);
        assert_eq!(distinct_count(&h(7, 3), 5).unwrap(), 5);
    }

    #[test]
    fn explanation_examples() {
        assert_eq!(explain_coincidences(5, 2, 3).unwrap().labels(), ["L-coin2-iii"]);
        assert_eq!(explain_coincidences(6, 2, 4).unwrap().labels(), ["L-coin2-i"]);
        assert_eq!(
            explain_coincidences(7, 3, 5).unwrap().labels(),
            ["L-coinq-iii", "unexplained(P_{3,5}=P_{6,5})", "unexplained(P_{5,5}=P_{7,5})"]
        );
        assert_eq!(
            explain_coincidences(5, 3, 3).unwrap().labels(),
            ["unexplained(P_{1,3}=P_{4,3})", "unexplained(P_{2,3}=P_{5,3})"]
        );
    }

    #[test]
    fn explanation_serde_roundtrip() {
        let r = explain_coincidences(10, 2, 4).unwrap();
        let js = serde_json::to_string(&r).unwrap();
        assert!(js.contains("unexplained(P_{2,4}=P_{3,4})"), "{js}");
        let back: CoincidenceRow = serde_json::from_str(&js).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn components_and_srg() {
        assert_eq!(connected_components(&h(7, 2), 4).unwrap(), BigInt::from(2));
        assert_eq!(connected_components(&h(4, 3), 3).unwrap(), BigInt::from(1));
        assert_eq!(connected_components(&h(4, 2), 2).unwrap(), BigInt::from(2));
        let s = srg_params(&h(4, 3), 3).unwrap().unwrap();
        assert_eq!(s.to_string(), "(81,32,13,12)");
        assert_eq!(srg_params(&h(3, 4), 2).unwrap().unwrap().to_string(), "(64,27,10,12)");
        assert_eq!(srg_params(&h(4, 3), 2).unwrap().unwrap().to_string(), "(81,24,9,6)");
        assert!(srg_params(&h(7, 2), 4).unwrap().is_none());
        let (c, s) = component_srg_params(&h(7, 2), 4).unwrap().unwrap();
        assert_eq!((c, s.to_string()), (BigInt::from(2), "(64,35,18,20)".to_string()));
    }

    #[test]
    fn zero_scan_examples() {
        let z = krawtchouk_zero_scan(2, 40).unwrap();
        assert!(z.zeros.contains(&(9, 2, 3)));
        assert!(z.zeros.contains(&(17, 4, 7)));
        assert!((1..=20).all(|i| z.zeros.contains(&(2 * i, 1, i))));
        assert!(z.symmetric);
        assert!(z.all_hold(), "{:?}", z.parts);
        // K_2(1) = 0 at d = 4 is the dual of K_1(2) = 0 and falls outside h >= 3.
        assert_eq!(z.parts[1].literal_mismatches, ["K_2(1) = 0 at d = 4 not predicted"]);
        assert!(krawtchouk_zero_scan(3, 10).is_err());
    }

    #[test]
    fn non_hamming_scan_rejected() {
        let bx: ParamBox = "n=4..8".parse().unwrap();
        assert!(matches!(scan_coincidences(Family::Johnson, &bx, CountWindow::ANY), Err(Error::Usage(_))));
    }
}
