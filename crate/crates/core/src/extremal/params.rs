//! Parameter boxes: `q=3..8,d=1..30`, single values, `|`-separated lists.
//!
//! Grassmann and Johnson boxes also accept `x = n - 2d`; a dual polar `e`
//! range enumerates every valid half-integer in it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::HalfInt;
use crate::schemes::{ClassicalParams, Family, SchemeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoxValues {
    Range(HalfInt, HalfInt),
    List(Vec<HalfInt>),
}

impl BoxValues {
    /// Values with step 1/2 when `halves`, else step 1 (endpoints must then
    /// be integers).
    fn values(&self, key: &str, halves: bool) -> Result<Vec<HalfInt>> {
        let out: Vec<HalfInt> = match self {
            BoxValues::List(v) => v.clone(),
            BoxValues::Range(lo, hi) => {
                if halves {
                    (lo.twice()..=hi.twice()).map(HalfInt::from_twice).collect()
                } else {
                    let (Some(a), Some(b)) = (lo.to_int(), hi.to_int()) else {
                        return Err(Error::Usage(format!("{key}: range endpoints must be integers")));
                    };
                    (a..=b).map(HalfInt::from_int).collect()
                }
            }
        };
        if !halves && out.iter().any(|v| !v.is_integer()) {
            return Err(Error::Usage(format!("{key}: expected integer values")));
        }
        Ok(out)
    }
}

impl fmt::Display for BoxValues {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoxValues::Range(a, b) if a == b => write!(f, "{a}"),
            BoxValues::Range(a, b) => write!(f, "{a}..{b}"),
            BoxValues::List(v) => {
                let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", s.join("|"))
            }
        }
    }
}

/// An explicit finite parameter box.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParamBox {
    entries: Vec<(String, BoxValues)>,
}

impl FromStr for ParamBox {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut entries: Vec<(String, BoxValues)> = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("box entry {part:?} is not key=value")))?;
            let key = k.trim().to_ascii_lowercase();
            if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Usage(format!("bad box key {k:?}")));
            }
            if entries.iter().any(|(e, _)| *e == key) {
                return Err(Error::Usage(format!("box key {key} given twice")));
            }
            let v = v.trim();
            let num = |t: &str| {
                t.trim()
                    .parse::<HalfInt>()
                    .map_err(|_| Error::Usage(format!("{key}: cannot parse {t:?}")))
            };
            let values = if let Some((a, b)) = v.split_once("..") {
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(Error::Usage(format!("{key}: empty range {v}")));
                }
                BoxValues::Range(a, b)
            } else if v.contains('|') {
                BoxValues::List(v.split('|').map(num).collect::<Result<_>>()?)
            } else {
                let x = num(v)?;
                BoxValues::Range(x, x)
            };
            entries.push((key, values));
        }
        if entries.is_empty() {
            return Err(Error::Usage("empty parameter box".into()));
        }
        Ok(ParamBox { entries })
    }
}

impl fmt::Display for ParamBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.entries.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}", s.join(","))
    }
}

impl Serialize for ParamBox {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ParamBox {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// What a box enumerates to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Instance {
    Scheme(SchemeId),
    Classical(ClassicalParams),
}

impl PartialOrd for ClassicalParams {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ClassicalParams {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.d, &self.b, &self.alpha, &self.beta).cmp(&(other.d, &other.b, &other.alpha, &other.beta))
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instance::Scheme(s) => write!(f, "{s}"),
            Instance::Classical(cp) => {
                write!(f, "classical:d={},b={},alpha={},beta={}", cp.d, cp.b, cp.alpha, cp.beta)
            }
        }
    }
}

/// Result of enumerating a box: valid instances in lexicographic order and
/// the number of raw tuples rejected by the family constraints.
#[derive(Debug, Clone)]
pub struct Enumerated<T> {
    pub items: Vec<T>,
    pub skipped: u64,
}

impl ParamBox {
    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(k, _)| k.as_str())
    }

    fn get(&self, key: &str) -> Option<&BoxValues> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    fn allow_only(&self, allowed: &[&str], what: &str) -> Result<()> {
        for k in self.keys() {
            if !allowed.contains(&k) {
                return Err(Error::Usage(format!(
                    "box key {k:?} not valid for {what} (allowed: {})",
                    allowed.join(", ")
                )));
            }
        }
        Ok(())
    }

    /// Integer values of `key`, if present. Negative values are rejected.
    pub fn ints(&self, key: &str) -> Result<Option<Vec<i64>>> {
        self.get(key)
            .map(|v| {
                v.values(key, false)
                    .map(|xs| xs.into_iter().map(|x| x.to_int().expect("checked")).collect())
            })
            .transpose()
    }

    fn uints(&self, key: &str) -> Result<Option<Vec<u32>>> {
        match self.ints(key)? {
            None => Ok(None),
            Some(v) => v
                .into_iter()
                .map(|x| u32::try_from(x).map_err(|_| Error::Usage(format!("{key}: negative value {x}"))))
                .collect::<Result<Vec<_>>>()
                .map(Some),
        }
    }

    fn need(&self, key: &str, what: &str) -> Result<Vec<u32>> {
        self.uints(key)?
            .ok_or_else(|| Error::Usage(format!("{what} box needs key {key}")))
    }

    /// Every valid scheme of `family` in the box.
    pub fn schemes(&self, family: Family) -> Result<Enumerated<SchemeId>> {
        let name = family.name();
        let mut raw: Vec<Result<SchemeId>> = Vec::new();
        match family {
            Family::Hamming => {
                self.allow_only(&["q", "d"], name)?;
                for d in self.need("d", name)? {
                    for &q in &self.need("q", name)? {
                        raw.push(SchemeId::hamming(d, q));
                    }
                }
            }
            Family::Johnson | Family::Grassmann => {
                let allowed: &[&str] = if family == Family::Johnson {
                    &["n", "d", "x"]
                } else {
                    &["q", "n", "d", "x"]
                };
                self.allow_only(allowed, name)?;
                let qs = if family == Family::Grassmann { self.need("q", name)? } else { vec![0] };
                let ns = self.uints("n")?;
                let xs = self.uints("x")?;
                let ds = self.uints("d")?;
                if ns.is_some() && xs.is_some() {
                    return Err(Error::Usage(format!("{name} box: give n or x, not both")));
                }
                for &q in &qs {
                    let mk = |n: u32, d: u32| {
                        if family == Family::Johnson {
                            SchemeId::johnson(n, d)
                        } else {
                            SchemeId::grassmann(q, n, d)
                        }
                    };
                    match (&ns, &xs, &ds) {
                        (Some(ns), None, Some(ds)) => {
                            for &n in ns {
                                for &d in ds {
                                    raw.push(mk(n, d));
                                }
                            }
                        }
                        (Some(ns), None, None) => {
                            for &n in ns {
                                for d in 1..=n / 2 {
                                    raw.push(mk(n, d));
                                }
                            }
                        }
                        (None, Some(xs), Some(ds)) => {
                            for &d in ds {
                                for &x in xs {
                                    raw.push(mk(2 * d + x, d));
                                }
                            }
                        }
                        (None, None, Some(ds)) => {
                            for &d in ds {
                                raw.push(mk(2 * d, d));
                            }
                        }
                        _ => return Err(Error::Usage(format!("{name} box needs n, or d (with optional x)"))),
                    }
                }
            }
            Family::DualPolar => {
                self.allow_only(&["q", "d", "e"], name)?;
                let es = match self.get("e") {
                    Some(v) => v.values("e", true)?,
                    None => (0..=4).map(HalfInt::from_twice).collect(),
                };
                for q in self.need("q", name)? {
                    for d in self.need("d", name)? {
                        for &e in &es {
                            raw.push(SchemeId::dual_polar(q, d, e));
                        }
                    }
                }
            }
            Family::Bilinear => {
                self.allow_only(&["q", "d", "e"], name)?;
                for q in self.need("q", name)? {
                    for d in self.need("d", name)? {
                        for e in self.need("e", name)? {
                            raw.push(SchemeId::bilinear(q, d, e));
                        }
                    }
                }
            }
            Family::Alternating => {
                self.allow_only(&["q", "n", "d", "x"], name)?;
                let ns: Vec<u32> = match (self.uints("n")?, self.uints("d")?) {
                    (Some(ns), None) if self.get("x").is_none() => ns,
                    (None, Some(ds)) => {
                        let xs = self.uints("x")?.unwrap_or_else(|| vec![0, 1]);
                        let mut v = Vec::new();
                        for &d in &ds {
                            for &x in &xs {
                                if x <= 1 {
                                    v.push(2 * d + x);
                                }
                            }
                        }
                        v
                    }
                    _ => return Err(Error::Usage("alternating box needs n, or d (with optional x)".into())),
                };
                for q in self.need("q", name)? {
                    for &n in &ns {
                        raw.push(SchemeId::alternating(q, n));
                    }
                }
            }
            Family::Hermitian => {
                self.allow_only(&["q", "d"], name)?;
                for q in self.need("q", name)? {
                    for d in self.need("d", name)? {
                        raw.push(SchemeId::hermitian(q, d));
                    }
                }
            }
        }
        let total = raw.len() as u64;
        let mut items: Vec<SchemeId> = raw.into_iter().filter_map(|r| r.ok()).collect();
        items.sort();
        items.dedup();
        Ok(Enumerated { skipped: total - items.len() as u64, items })
    }

    /// Classical parameter tuples `(d, b, alpha, beta)`.
    pub fn classical(&self) -> Result<Enumerated<ClassicalParams>> {
        self.allow_only(&["d", "b", "alpha", "beta"], "classical parameters")?;
        let need = |k: &str| {
            self.ints(k)?
                .ok_or_else(|| Error::Usage(format!("classical box needs key {k}")))
        };
        let (ds, bs, als, bes) = (need("d")?, need("b")?, need("alpha")?, need("beta")?);
        let mut items = Vec::new();
        let mut total = 0u64;
        for &d in &ds {
            for &b in &bs {
                for &a in &als {
                    for &be in &bes {
                        total += 1;
                        if let Ok(d) = u32::try_from(d) {
                            if let Ok(cp) = ClassicalParams::from_i64(d, b, a, be) {
                                items.push(cp);
                            }
                        }
                    }
                }
            }
        }
        items.sort();
        items.dedup();
        Ok(Enumerated { skipped: total - items.len() as u64, items })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bx(s: &str) -> ParamBox {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(bx("q=3..8, d=1..30").to_string(), "q=3..8,d=1..30");
        assert_eq!(bx("q=2|4").to_string(), "q=2|4");
        assert_eq!(bx("e=1/2..2").to_string(), "e=1/2..2");
        assert!("q".parse::<ParamBox>().is_err());
        assert!("q=5..3".parse::<ParamBox>().is_err());
        assert!("q=1,q=2".parse::<ParamBox>().is_err());
        assert!("".parse::<ParamBox>().is_err());
    }

    #[test]
    fn hamming_enumeration() {
        let e = bx("q=2..3,d=0..2").schemes(Family::Hamming).unwrap();
        assert_eq!(e.items.len(), 4);
        assert_eq!(e.skipped, 2);
        assert!(bx("q=2,n=3").schemes(Family::Hamming).is_err());
        assert!(bx("q=2..3").schemes(Family::Hamming).is_err());
    }

    #[test]
    fn grassmann_x_and_prime_powers() {
        let e = bx("q=2..6,d=1..2,x=0..1").schemes(Family::Grassmann).unwrap();
        // q = 6 is skipped
        assert_eq!(e.items.len(), 4 * 2 * 2);
        assert_eq!(e.skipped, 4);
        assert!(e.items.contains(&SchemeId::Grassmann { q: 4, n: 5, d: 2 }));
    }

    #[test]
    fn johnson_fills_d() {
        let e = bx("n=2..6").schemes(Family::Johnson).unwrap();
        assert_eq!(e.items.len(), 1 + 1 + 2 + 2 + 3);
    }

    #[test]
    fn dual_polar_halves() {
        let e = bx("q=4,d=2,e=0..2").schemes(Family::DualPolar).unwrap();
        assert_eq!(e.items.len(), 5);
        let e = bx("q=2,d=2,e=0..2").schemes(Family::DualPolar).unwrap();
        assert_eq!(e.items.len(), 3);
        assert_eq!(e.skipped, 2);
        assert!(bx("q=2,d=1..2,e=1/2").ints("e").is_err());
    }

    #[test]
    fn classical_box() {
        let e = bx("d=1..2,b=-1..1,alpha=0,beta=1").classical().unwrap();
        // b = 0 and b = -1 are rejected
        assert_eq!(e.items.len(), 2);
        assert_eq!(e.skipped, 4);
    }
}
