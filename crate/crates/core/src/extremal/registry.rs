//! The theorem registry and the exhaustive verifier.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::schemes::{p_matrix_recurrence, scheme_p_matrix, Family, SchemeId};

use super::params::ParamBox;
use super::theorems::{classical_check, large_pattern_holds, scheme_check, Outcome, Rec, View};

pub use super::theorems::Tuple;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Theorem,
    Proposition,
    Lemma,
    Corollary,
    Conjecture,
    Remark,
    Observation,
}

/// One registered statement.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremInfo {
    pub id: &'static str,
    /// `None` for statements about general classical parameters.
    pub family: Option<Family>,
    pub kind: Kind,
    pub hypothesis: &'static str,
    pub statement: &'static str,
    pub default_box: &'static str,
    /// Probes can only report "no counterexample in box".
    pub probe: bool,
}

macro_rules! th {
    ($id:literal, $fam:expr, $kind:ident, $hyp:literal, $stmt:literal, $bx:literal) => {
        TheoremInfo {
            id: $id,
            family: $fam,
            kind: Kind::$kind,
            hypothesis: $hyp,
            statement: $stmt,
            default_box: $bx,
            probe: matches!(Kind::$kind, Kind::Conjecture | Kind::Remark),
        }
    };
}

const H: Option<Family> = Some(Family::Hamming);
const J: Option<Family> = Some(Family::Johnson);
const G: Option<Family> = Some(Family::Grassmann);
const C: Option<Family> = Some(Family::DualPolar);
const B: Option<Family> = Some(Family::Bilinear);
const A: Option<Family> = Some(Family::Alternating);
const Q: Option<Family> = Some(Family::Hermitian);

static CATALOG: &[TheoremInfo] = &[
    th!("H-THM-BINARY", H, Theorem, "q = 2",
        "j != d/2: |K_j(i)| <= |K_j(1)| for 1 <= i <= d-1; j = d/2: K_j(1) = 0 and |K_j(i)| <= |K_j(2)|",
        "q=2,d=1..40"),
    th!("H-COR-BINARY", H, Corollary, "q = 2, j >= (d+1)/2",
        "K_j(1) <= K_j(i) for 0 <= i <= d-1; K_j(1) <= K_j(d) iff j even or j = d",
        "q=2,d=1..40"),
    th!("H-THM-NONBINARY", H, Theorem, "q >= 3, d-(d-1)/q <= j <= d",
        "K_j(1) <= K_j(i) for all i; |K_j(i)| <= |K_j(1)| for i >= 1 unless (q,d,i,j) = (3,4,3,3)",
        "q=3..8,d=1..30"),
    th!("H-PROP-12", H, Proposition, "0 <= j <= d",
        "K_j(1) < 0 iff j >= d-(d-1)/q; K_j(2) = K_j(1) iff j = 0 or j = d-(d-1)/q; K_j(2) > K_j(1) iff j > d-(d-1)/q; K_j(2) = -K_j(1)/(q-1) iff j = (d-1)(1-1/q) or j = d; |K_j(2)| <= |K_j(1)| for j >= d-(d-1)/q",
        "q=2..8,d=1..30"),
    th!("H-PROP-LARGE", H, Proposition, "q large; checked for q > d^2/4 + 1",
        "sign of K_j(i) is (-1)^max(0,i+j-d); K_j(d-j+1) is smallest for j > 0",
        "d=1..10,q=2..30"),
    th!("H-LEM-QBIG", H, Lemma, "q > d^2/4 + 1",
        "K_j(i) > 0 for i <= d-j; K_j(d-j+1) < 0; |K_j(i)| < |K_j(d-j+1)| for i > d-j+1",
        "d=1..10,q=2..30"),
    th!("H-CONJ-DISTINCT", H, Conjecture, "distance-j graph connected, j >= 1",
        "more than d/2 distinct eigenvalues",
        "q=2..10,d=1..12"),
    th!("J-PROP-NEG", J, Proposition, "1 <= j <= d, e = n-d",
        "E_j(1) = 0 iff jn = de; E_j(1) < 0 iff jn > de; E_j(1) = E_j(2) iff j(n-1) = de; E_j(1) < E_j(2) iff j(n-1) > de",
        "n=2..40"),
    th!("J-THM-SMALLEST", J, Theorem, "1 <= j <= d",
        "E_j(1) is smallest iff j(n-1) >= de, and then it is second largest in absolute value",
        "n=2..40"),
    th!("J-COR-KARLOFF", J, Corollary, "n = 2d, j > d/2",
        "E_j(1) is smallest and second largest in absolute value",
        "d=1..15,x=0"),
    th!("J-PROP-D", J, Proposition, "j = d",
        "E_d(1) is smallest and second largest in absolute value",
        "n=2..40"),
    th!("J-PROP-LARGE", J, Proposition, "n large; checked at the largest n of the box for each d",
        "sign of E_j(i) is (-1)^max(0,i+j-d); E_j(d-j+1) is smallest for j > 0",
        "d=1..6,n=2..120"),
    th!("J-EDGE-2D1", J, Observation, "n = 2d+1, d even, j = d/2",
        "(d-1) E_j(2) = -d E_j(1), so |E_j(2)| > |E_j(1)|",
        "d=2..20,x=1"),
    th!("J-REMARK-QUARTER", J, Remark, "|j - de/n| >= 1/4, j >= 1",
        "|E_j(1)| is largest among |E_j(i)|, i >= 1",
        "n=2..40"),
    th!("G-PROP-ABS", G, Proposition, "0 <= j <= d",
        "G_j(1) < 0 iff j = d, never 0; |G_j(i)| <= |G_j(1)|; 0 < G_{j-1}(i) < G_j(i) for i+j <= d unless q = 2, n = 2d, i+j = d; sign (-1)^max(0,i+j-d) unless (n,q) = (2d,2); G_d(1) smallest",
        "q=2..4,d=1..8,x=0..4"),
    th!("G-THM-SMALLEST-I", G, Theorem, "1 <= j <= d, q >= 3 or n >= 2d+1",
        "G_j(d-j+1) is smallest",
        "q=2..4,d=1..8,x=0..4"),
    th!("G-THM-SMALLEST-II", G, Theorem, "(n,q) = (2d,2), 7 <= j <= d-5",
        "G_j(d-j) is smallest",
        "q=2,d=12..16,x=0"),
    th!("G-CONJ-I", G, Conjecture, "(n,q) != (2d,2), j >= 1",
        "|G_j(i+1)| < |G_j(i)| for 0 <= i <= d-1",
        "q=2..4,d=1..8,x=0..4"),
    th!("G-CONJ-II", G, Conjecture, "(n,q) = (2d,2)",
        "G_j(d-j) < 0 for (d,j) = (5,3) and d >= 6, 2 <= j <= d-2; smallest for d >= 6, 3 <= j <= d-2",
        "q=2,d=2..16,x=0"),
    th!("C-PROP", C, Proposition, "1 <= j <= d",
        "C_j(1) < 0 iff j = d or (j,e) = (d-1,0); |C_j(2)| <= |C_j(1)| for d >= 3 unless (q,j,e) = (2,d-1,1); |C_j(i)| <= |C_j(d)| if i >= 2 or e <= 1; |C_j(1)| <= |C_j(d)| if e <= 1, equality only for (j,e) = (d,1)",
        "q=2..4,d=1..8"),
    th!("C-COR-SMALLEST", C, Corollary, "d >= 3, 1 <= j <= d",
        "|C_j(1)| is the maximum over i >= 1 if e > 1 or (j,e) = (d,1); |C_j(d)| is if e <= 1; C_j(d) is smallest if j < d is odd",
        "q=2..4,d=1..8"),
    th!("C-EDGE", C, Observation, "(q,e) = (2,1), d >= 2",
        "|C_{d-1}(2)| > |C_{d-1}(1)| = q^C(d-1,2); |C_{d-1}(i)| not unimodal for d >= 5",
        "q=2,d=2..10,e=1"),
    th!("C-CONJ-UNIMODAL", C, Conjecture, "1 <= j <= d",
        "|C_j(i)| unimodal unless (q,e) = (2,1) or (q,e,j) = (2,2,d-4), 8 <= d <= 12; minimum i0 = i1 = floor((d+e+1)/2) for e in {0,1/2,3/2}, |i0-i1| <= 1 for e in {1,2}, except i0 = i1-2 for (q,e,j,d) = (2,1,3,4), (2,2,3,7)",
        "q=2..4,d=1..14"),
    th!("C-CONJ-IMIN", C, Conjecture, "1 <= j <= d",
        "index of the smallest C_j(i) follows the case table, with the q = 2, e = 2 exceptions",
        "q=2..4,d=1..16"),
    th!("B-PROP-NEG", B, Proposition, "0 <= j <= d",
        "B_j(1) < 0 iff j = d, otherwise > 0; B_d(1) smallest and second largest in absolute value",
        "q=2..4,d=1..8,e=1..8"),
    th!("B-LEM-BDS", B, Lemma, "1 <= j <= d-1",
        "|B_j(2)| <= |B_j(1)| if j <= d-2 or q > 2 or e > d; ratio (2^(d-1)+1)/(2^(d-1)-1) for j = d-1, q = 2, e = d",
        "q=2..4,d=1..8,e=1..8"),
    th!("B-THM-Q4", B, Theorem, "q >= 4",
        "|B_j(1)| >= |B_j(i)| for 1 <= i <= d, 0 <= j <= d",
        "q=4..5,d=1..8,e=1..8"),
    th!("B-SIGN", B, Proposition, "q >= 4",
        "sign of B_j(i) is (-1)^max(0,i+j-d); B_j(d-j+1) is smallest",
        "q=4..5,d=1..8,e=1..8"),
    th!("B-CONJ", B, Conjecture, "q >= 3 or d != e, 1 <= j <= d",
        "B_j(d-j+1) is smallest",
        "q=2..4,d=1..8,e=1..8"),
    th!("A-THM", A, Theorem, "1 <= j <= d",
        "A_j(d-j+1) is smallest; |A_j(1)| largest for i >= 1; |A_j(i)| < |A_j(i+1)| iff (q,n,i) = (2,2d,d-1) and j < d, equal iff also j = d, otherwise >",
        "q=2..3,n=2..12"),
    th!("A-SIGN", A, Proposition, "all i, j",
        "sign of A_j(i) is (-1)^max(0,i+j-d)",
        "q=2..3,n=2..12"),
    th!("Q-THM", Q, Theorem, "q >= 4, j >= 1",
        "|Q_j(i+1)| < |Q_j(i)| for d >= 3; Q_j(1) smallest for j odd; Q_j(d-j+2) smallest for j even",
        "q=4..5,d=1..8"),
    th!("Q-SIGN", Q, Proposition, "q >= 4, d >= 2, j >= 1",
        "sign of Q_j(i) is the sign of (-1)^j S",
        "q=4..5,d=2..8"),
    th!("Q-CONJ-1", Q, Conjecture, "j >= 1",
        "Q_j(1) smallest for j odd; Q_j(d-j+2) smallest for j even",
        "q=2..5,d=1..8"),
    th!("Q-CONJ-2", Q, Conjecture, "d >= 3, j >= 1",
        "|Q_j(i)| < |Q_j(1)| for 2 <= i <= d",
        "q=2..5,d=1..8"),
    th!("CP-SIGNCHANGES", None, Proposition, "b > 0, valid classical parameters",
        "theta descending iff alpha <= b-1 or beta > alpha [d-1,1] - b^(d-1); then row i and column i have i sign changes",
        "d=1..6,b=1..4,alpha=0..4,beta=1..30"),
    th!("CP-SIGNPATTERN", None, Proposition, "row i and column i have i sign changes, P_ij > 0 for i+j <= d",
        "P_ij has sign (-1)^(i+j-d) for i+j >= d",
        "d=1..6,b=1..4,alpha=0..4,beta=1..30"),
    th!("CP-LARGEBETA", None, Theorem, "beta at or beyond the onset for (d,b,alpha)",
        "sign pattern; P_{d-j+1,j} smallest for j > 0; |P_{i+1,j}| < |P_ij| for j >= 1 when b >= 1",
        "d=5,b=1,alpha=1,beta=29..80"),
];

/// Every registered statement.
pub fn catalog() -> &'static [TheoremInfo] {
    CATALOG
}

pub fn theorem_info(id: &str) -> Result<&'static TheoremInfo> {
    CATALOG
        .iter()
        .find(|t| t.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::Usage(format!("unknown theorem id {id:?} (see verify --list)")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "pass-with-listed-exceptions")]
    PassWithListedExceptions,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "no-counterexample-in-box")]
    NoCounterexample,
    #[serde(rename = "counterexamples-found")]
    CounterexamplesFound,
}

impl Status {
    /// False exactly when something beyond the listed exceptions failed.
    pub fn is_ok(self) -> bool {
        !matches!(self, Status::Fail | Status::CounterexamplesFound)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::PassWithListedExceptions => "pass-with-listed-exceptions",
            Status::Fail => "fail",
            Status::NoCounterexample => "no-counterexample-in-box",
            Status::CounterexamplesFound => "counterexamples-found",
        }
    }
}

/// Counterexample lists are truncated to this many entries.
pub const MAX_LISTED: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem_id: String,
    pub kind: Kind,
    pub probe: bool,
    pub param_box: String,
    /// Parameter tuples examined (after family constraints).
    pub instances: u64,
    /// Raw box tuples rejected by the family constraints.
    pub skipped: u64,
    /// Individual assertions evaluated.
    pub checked: u64,
    pub status: Status,
    pub exceptions: Vec<Tuple>,
    pub counterexample_count: u64,
    pub counterexamples: Vec<Tuple>,
    pub observations: Vec<Tuple>,
    pub elapsed_ms: Option<u64>,
}

/// Verifies a statement on its default box.
pub fn verify_theorem_default(id: &str) -> Result<VerificationReport> {
    let info = theorem_info(id)?;
    verify_theorem(info.id, &info.default_box.parse()?)
}

/// Checks the statement on every tuple of the box.
pub fn verify_theorem(id: &str, bx: &ParamBox) -> Result<VerificationReport> {
    let info = theorem_info(id)?;
    let start = Instant::now();
    let (recs, instances, skipped) = match info.family {
        Some(fam) => {
            let en = bx.schemes(fam)?;
            let check = scheme_check(info.id).expect("registered check");
            let recs: Vec<Result<Rec>> = par::map(&en.items, |s| {
                let m = scheme_p_matrix(s)?;
                let mut r = Rec::new(s.to_string());
                check(s, &View::new(&m), &mut r);
                Ok(r)
            });
            let mut recs = recs.into_iter().collect::<Result<Vec<_>>>()?;
            if info.id == "J-PROP-LARGE" {
                recs = tail_semantics(&en.items, recs)?;
            }
            (recs, en.items.len() as u64, en.skipped)
        }
        None => {
            let en = bx.classical()?;
            let check = classical_check(info.id).expect("registered check");
            let recs: Vec<Option<Rec>> = par::map(&en.items, |cp| {
                // Parameters that do not give a well-defined P are outside
                // every hypothesis.
                let m = p_matrix_recurrence(cp).ok()?;
                let mut r = Rec::new(super::params::Instance::Classical(cp.clone()).to_string());
                check(cp, &View::new(&m), &mut r);
                Some(r)
            });
            let valid = recs.iter().filter(|r| r.is_some()).count() as u64;
            let skipped = en.skipped + en.items.len() as u64 - valid;
            (recs.into_iter().flatten().collect(), valid, skipped)
        }
    };
    let mut report = VerificationReport {
        theorem_id: info.id.to_string(),
        kind: info.kind,
        probe: info.probe,
        param_box: bx.to_string(),
        instances,
        skipped,
        checked: 0,
        status: Status::Pass,
        exceptions: Vec::new(),
        counterexample_count: 0,
        counterexamples: Vec::new(),
        observations: Vec::new(),
        elapsed_ms: None,
    };
    for r in recs {
        report.checked += r.checked;
        for (o, t) in r.found {
            match o {
                Outcome::Violation => {
                    report.counterexample_count += 1;
                    if report.counterexamples.len() < MAX_LISTED {
                        report.counterexamples.push(t);
                    }
                }
                Outcome::Listed => report.exceptions.push(t),
                Outcome::Observation => {
                    if report.observations.len() < MAX_LISTED {
                        report.observations.push(t);
                    }
                }
            }
        }
    }
    report.status = match (info.probe, report.counterexample_count > 0, report.exceptions.is_empty()) {
        (true, true, _) => Status::CounterexamplesFound,
        (true, false, _) => Status::NoCounterexample,
        (false, true, _) => Status::Fail,
        (false, false, true) => Status::Pass,
        (false, false, false) => Status::PassWithListedExceptions,
    };
    report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report)
}

/// "For n sufficiently large": only the largest n of the box for each d is
/// held to the statement; the onset within the box is reported.
fn tail_semantics(items: &[SchemeId], recs: Vec<Rec>) -> Result<Vec<Rec>> {
    let mut out = Vec::new();
    let mut ds: Vec<u32> = items.iter().map(|s| s.diameter() as u32).collect();
    ds.sort();
    ds.dedup();
    let mut recs: Vec<Option<Rec>> = recs.into_iter().map(Some).collect();
    for d in ds {
        let idx: Vec<usize> = (0..items.len()).filter(|&k| items[k].diameter() as u32 == d).collect();
        let mut holds = Vec::new();
        for &k in &idx {
            let m = scheme_p_matrix(&items[k])?;
            holds.push(large_pattern_holds(&View::new(&m)));
        }
        let last = *idx.iter().max_by_key(|&&k| items[k]).expect("nonempty group");
        let mut r = recs[last].take().expect("unused");
        let onset = (0..idx.len()).rev().take_while(|&t| holds[t]).last().map(|t| items[idx[t]]);
        let note = match onset {
            Some(s) => format!("holds for every n in the box from {s} on"),
            None => "does not hold at the largest n of the box".into(),
        };
        r.observe(None, None, "onset", note);
        out.push(r);
    }
    Ok(out)
}
