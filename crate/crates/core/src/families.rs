//! Explicit eigenvalue formulas for the seven families, in every printed
//! form, and the identity suites that tie them to each other and to the
//! generic recurrence.
//!
//! Index conventions: `j` is the distance (column), `i` the eigenspace
//! (row). Evaluators sum over the full printed index range; binomials that
//! fall outside their support contribute zero.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binom, choose2, ipow, neg_one_pow, pow_halfint, GaussTable, HalfInt};
use crate::schemes::{
    eigenvalues_theta, family_to_classical, intersection_numbers, last_row, multiplicities_from,
    p_matrix_recurrence, sign_changes, theta_descending_criterion, vertex_count, EigenMatrix, Family,
    SchemeId,
};

/// A family together with one of its printed forms (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormChoice {
    pub family: Family,
    pub index: u8,
}

impl FormChoice {
    pub fn new(family: Family, index: u8) -> Result<Self> {
        if index == 0 || index > form_count(family) {
            return Err(Error::Domain(format!(
                "{family} has {} printed form(s); form {index} does not exist",
                form_count(family)
            )));
        }
        Ok(FormChoice { family, index })
    }
}

/// Number of printed forms per family.
pub fn form_count(family: Family) -> u8 {
    match family {
        Family::Hamming | Family::Johnson => 3,
        Family::Grassmann => 2,
        _ => 1,
    }
}

fn c(n: i64, k: i64) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    binom(n, k).expect("nonnegative upper index")
}

fn pw(q: i64, e: i64) -> BigInt {
    assert!(e >= 0, "negative exponent {e} in an integral term");
    ipow(q, e as u32)
}

fn sgn(k: i64) -> BigInt {
    BigInt::from(neg_one_pow(k))
}

fn gb(t: &GaussTable, n: i64, m: i64) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    t.get(n, m).clone()
}

fn range_check(what: &str, d: i64, j: i64, i: i64) -> Result<()> {
    if !(0..=d).contains(&i) || !(0..=d).contains(&j) {
        return Err(Error::Domain(format!(
            "{what}: indices (j, i) = ({j}, {i}) outside 0..={d}"
        )));
    }
    Ok(())
}

fn form_check(family: Family, form: u8) -> Result<()> {
    FormChoice::new(family, form).map(|_| ())
}

// ---- raw evaluators (no range checks; j may exceed d and then gives 0) ----

pub(crate) fn kraw_raw(d: i64, q: i64, j: i64, i: i64, form: u8) -> BigInt {
    let mut s = BigInt::zero();
    for h in 0..=j {
        let t = match form {
            1 => sgn(h) * pw(q - 1, j - h) * c(i, h) * c(d - i, j - h),
            2 => pw(-q, h) * pw(q - 1, j - h) * c(i, h) * c(d - h, j - h),
            _ => sgn(h) * pw(q, j - h) * c(d - i, j - h) * c(d - j + h, h),
        };
        s += t;
    }
    s
}

pub(crate) fn eber_raw(n: i64, d: i64, j: i64, i: i64, form: u8) -> BigInt {
    let mut s = BigInt::zero();
    match form {
        1 => {
            for h in 0..=j {
                s += sgn(h) * c(i, h) * c(d - i, j - h) * c(n - d - i, j - h);
            }
        }
        2 => {
            for h in 0..=j {
                s += sgn(j - h) * c(d - i, h) * c(d - h, j - h) * c(n - d - i + h, h);
            }
        }
        _ => {
            for h in 0..=i {
                s += sgn(i - h) * c(i, h) * c(d - h, j) * c(n - d - i + h, n - d - j);
            }
        }
    }
    s
}

pub(crate) fn grass_raw(t: &GaussTable, n: i64, d: i64, j: i64, i: i64, form: u8) -> Result<BigInt> {
    let q = t.base().clone();
    let mut s = BigInt::zero();
    if form == 1 {
        for h in 0..=j {
            let g = gb(t, d - i, h) * gb(t, d - h, j - h) * gb(t, n - d - i + h, h);
            if g.is_zero() {
                continue;
            }
            let e = h * i + choose2(j - h);
            s += sgn(j - h) * num_traits::pow(q.clone(), e as usize) * g;
        }
    } else {
        for h in 0..=i {
            let g = gb(t, i, h) * gb(t, d - h, j) * gb(t, n - d - i + h, n - d - j);
            if g.is_zero() {
                continue;
            }
            let e = j * (j - i + h) + choose2(i - h);
            if e < 0 {
                return Err(Error::Inconsistency(format!(
                    "grassmann form 2: nonzero term with negative exponent at (n,d,j,i,h)=({n},{d},{j},{i},{h})"
                )));
            }
            s += sgn(i - h) * num_traits::pow(q.clone(), e as usize) * g;
        }
    }
    Ok(s)
}

pub(crate) fn dpolar_raw(t: &GaussTable, d: i64, e: HalfInt, j: i64, i: i64) -> BigInt {
    let q = t.base().clone();
    let lo = (i - j).max(0);
    let hi = (d - j).min(i);
    let mut s = BigInt::zero();
    for h in lo..=hi {
        let g = gb(t, d - i, d - j - h) * gb(t, i, h);
        if g.is_zero() {
            continue;
        }
        let k = j - i + h;
        let int_part = num_traits::pow(q.clone(), (choose2(i - h) + choose2(k)) as usize);
        let half_part = pow_halfint(&q, e.scale(k)).expect("validated dual polar parameters");
        s += sgn(i - h) * int_part * half_part * g;
    }
    s
}

pub(crate) fn bilin_raw(t: &GaussTable, d: i64, e: i64, j: i64, i: i64) -> BigInt {
    let q = t.base().clone();
    let mut s = BigInt::zero();
    for h in 0..=j {
        let g = gb(t, d - h, d - j) * gb(t, d - i, h);
        if g.is_zero() {
            continue;
        }
        s += sgn(j - h) * num_traits::pow(q.clone(), (e * h + choose2(j - h)) as usize) * g;
    }
    s
}

/// `t` has base `q^2`.
pub(crate) fn alt_raw(t: &GaussTable, q: i64, n: i64, j: i64, i: i64) -> BigInt {
    let d = n / 2;
    let m = 2 * n - 2 * d - 1;
    let mut s = BigInt::zero();
    for h in 0..=j {
        let g = gb(t, d - h, d - j) * gb(t, d - i, h);
        if g.is_zero() {
            continue;
        }
        s += sgn(j - h) * pw(q, (j - h) * (j - h - 1) + h * m) * g;
    }
    s
}

/// `t` has base `-q`.
pub(crate) fn herm_raw(t: &GaussTable, q: i64, d: i64, j: i64, i: i64) -> BigInt {
    let mut s = BigInt::zero();
    for h in 0..=j {
        let g = gb(t, d - h, d - j) * gb(t, d - i, h);
        if g.is_zero() {
            continue;
        }
        s += pw(-q, choose2(j - h) + h * d) * g;
    }
    s * sgn(j)
}

// ---- public evaluators ----

/// Krawtchouk `K_j(i)` for `H(d, q)`; `form` selects one of the three sums.
pub fn krawtchouk(d: u32, q: u32, j: u32, i: u32, form: u8) -> Result<BigInt> {
    form_check(Family::Hamming, form)?;
    if q < 2 {
        return Err(Error::Domain(format!("krawtchouk needs q >= 2 (got {q})")));
    }
    range_check("krawtchouk", d as i64, j as i64, i as i64)?;
    Ok(kraw_raw(d as i64, q as i64, j as i64, i as i64, form))
}

/// Eberlein `E_j(i)` for `J(n, d)`.
pub fn eberlein(n: u32, d: u32, j: u32, i: u32, form: u8) -> Result<BigInt> {
    form_check(Family::Johnson, form)?;
    if n < 2 * d {
        return Err(Error::Domain(format!("eberlein needs n >= 2d (got n={n}, d={d})")));
    }
    range_check("eberlein", d as i64, j as i64, i as i64)?;
    Ok(eber_raw(n as i64, d as i64, j as i64, i as i64, form))
}

/// Eigenvalues of the Kneser graph `K(n, d)`: `(-1)^i C(n-d-i, d-i)`.
pub fn kneser_eigen(n: u32, d: u32, i: u32) -> Result<BigInt> {
    if n < 2 * d {
        return Err(Error::Domain(format!("kneser needs n >= 2d (got n={n}, d={d})")));
    }
    range_check("kneser", d as i64, 0, i as i64)?;
    let (n, d, i) = (n as i64, d as i64, i as i64);
    Ok(sgn(i) * c(n - d - i, d - i))
}

fn table(base: i64, n_max: i64) -> GaussTable {
    GaussTable::new(&BigInt::from(base), n_max).expect("valid base")
}

/// Grassmann `G_j(i)` for `J_q(n, d)`; two printed forms.
pub fn grassmann_eigen(q: u32, n: u32, d: u32, j: u32, i: u32, form: u8) -> Result<BigInt> {
    form_check(Family::Grassmann, form)?;
    SchemeId::grassmann(q, n, d)?;
    range_check("grassmann", d as i64, j as i64, i as i64)?;
    let t = table(q as i64, n as i64);
    grass_raw(&t, n as i64, d as i64, j as i64, i as i64, form)
}

/// Dual polar `C_j(i)`; `e` may be half-integral.
pub fn dualpolar_eigen(q: u32, d: u32, e: HalfInt, j: u32, i: u32) -> Result<BigInt> {
    SchemeId::dual_polar(q, d, e)?;
    range_check("dualpolar", d as i64, j as i64, i as i64)?;
    let t = table(q as i64, d as i64);
    Ok(dpolar_raw(&t, d as i64, e, j as i64, i as i64))
}

/// Bilinear forms `B_j(i)` for `H_q(d, e)`, `d <= e`.
pub fn bilinear_eigen(q: u32, d: u32, e: u32, j: u32, i: u32) -> Result<BigInt> {
    SchemeId::bilinear(q, d, e)?;
    range_check("bilinear", d as i64, j as i64, i as i64)?;
    let t = table(q as i64, d as i64);
    Ok(bilin_raw(&t, d as i64, e as i64, j as i64, i as i64))
}

/// Alternating forms `A_j(i)` for `Alt(n, q)`, diameter `floor(n/2)`.
pub fn alternating_eigen(q: u32, n: u32, j: u32, i: u32) -> Result<BigInt> {
    SchemeId::alternating(q, n)?;
    let d = (n / 2) as i64;
    range_check("alternating", d, j as i64, i as i64)?;
    let t = table((q as i64) * (q as i64), d);
    Ok(alt_raw(&t, q as i64, n as i64, j as i64, i as i64))
}

/// Hermitian forms `Q_j(i)` for `Her(d, q^2)`.
pub fn hermitian_eigen(q: u32, d: u32, j: u32, i: u32) -> Result<BigInt> {
    SchemeId::hermitian(q, d)?;
    range_check("hermitian", d as i64, j as i64, i as i64)?;
    let t = table(-(q as i64), d as i64);
    Ok(herm_raw(&t, q as i64, d as i64, j as i64, i as i64))
}

/// Evaluates every entry of one scheme's matrix through the printed
/// formulas, sharing one Gaussian table.
struct FormulaEval {
    scheme: SchemeId,
    table: Option<GaussTable>,
}

impl FormulaEval {
    fn new(scheme: SchemeId) -> Self {
        let d = scheme.diameter() as i64;
        let table = match scheme {
            SchemeId::Hamming { .. } | SchemeId::Johnson { .. } => None,
            SchemeId::Grassmann { q, n, .. } => Some(table(q as i64, n as i64)),
            SchemeId::DualPolar { q, .. } | SchemeId::Bilinear { q, .. } => Some(table(q as i64, d)),
            SchemeId::Alternating { q, .. } => Some(table((q as i64) * (q as i64), d)),
            SchemeId::Hermitian { q, .. } => Some(table(-(q as i64), d)),
        };
        FormulaEval { scheme, table }
    }

    fn t(&self) -> &GaussTable {
        self.table.as_ref().expect("q-family has a table")
    }

    fn eval(&self, form: u8, j: i64, i: i64) -> Result<BigInt> {
        Ok(match self.scheme {
            SchemeId::Hamming { d, q } => kraw_raw(d as i64, q as i64, j, i, form),
            SchemeId::Johnson { n, d } => eber_raw(n as i64, d as i64, j, i, form),
            SchemeId::Grassmann { n, d, .. } => grass_raw(self.t(), n as i64, d as i64, j, i, form)?,
            SchemeId::DualPolar { d, e, .. } => dpolar_raw(self.t(), d as i64, e, j, i),
            SchemeId::Bilinear { d, e, .. } => bilin_raw(self.t(), d as i64, e as i64, j, i),
            SchemeId::Alternating { q, n } => alt_raw(self.t(), q as i64, n as i64, j, i),
            SchemeId::Hermitian { q, d } => herm_raw(self.t(), q as i64, d as i64, j, i),
        })
    }

    fn matrix(&self, form: u8) -> Result<EigenMatrix> {
        let d = self.scheme.diameter();
        EigenMatrix::try_from_fn(d, |i, j| self.eval(form, j as i64, i as i64))
    }
}

/// One entry `P_{ij}` from the printed formula `form`.
pub fn entry(scheme: &SchemeId, form: u8, j: usize, i: usize) -> Result<BigInt> {
    form_check(scheme.family(), form)?;
    let d = scheme.diameter() as i64;
    range_check(scheme.family().name(), d, j as i64, i as i64)?;
    FormulaEval::new(*scheme).eval(form, j as i64, i as i64)
}

/// `P` from the first printed form, without the recurrence cross-check.
pub fn formula_matrix(scheme: &SchemeId, form: u8) -> Result<EigenMatrix> {
    form_check(scheme.family(), form)?;
    FormulaEval::new(*scheme).matrix(form)
}

/// `P` built from the explicit formulas and checked entrywise against the
/// recurrence built from the classical parameters.
pub fn eigenmatrix(scheme: &SchemeId) -> Result<EigenMatrix> {
    let from_formula = formula_matrix(scheme, 1)?;
    let from_recurrence = p_matrix_recurrence(&family_to_classical(scheme))?;
    if let Some((i, j)) = from_formula.first_difference(&from_recurrence) {
        return Err(Error::Inconsistency(format!(
            "{scheme}: formula gives P[{i}][{j}] = {} but the recurrence gives {}",
            from_formula.get(i, j),
            from_recurrence.get(i, j)
        )));
    }
    Ok(from_formula)
}

// ---- identity suite ----

/// Outcome of one identity over all index tuples it was evaluated on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityResult {
    pub id: String,
    pub description: String,
    pub checked: u64,
    pub passed: bool,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub scheme: SchemeId,
    pub results: Vec<IdentityResult>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityResult> {
        self.results.iter().filter(|r| !r.passed)
    }
}

struct Tally {
    out: Vec<IdentityResult>,
}

impl Tally {
    fn start(&mut self, id: &str, description: &str) {
        self.out.push(IdentityResult {
            id: id.to_string(),
            description: description.to_string(),
            checked: 0,
            passed: true,
            first_failure: None,
        });
    }

    fn check(&mut self, ok: bool, at: impl FnOnce() -> String) {
        let r = self.out.last_mut().expect("start() first");
        r.checked += 1;
        if !ok && r.passed {
            r.passed = false;
            r.first_failure = Some(at());
        }
    }

    fn fail(&mut self, msg: String) {
        let r = self.out.last_mut().expect("start() first");
        r.passed = false;
        r.first_failure.get_or_insert(msg);
    }
}

fn bi(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Runs every identity that applies to the scheme's family over all
/// in-range indices. Failures are report content, not errors.
pub fn identity_suite(scheme: &SchemeId) -> IdentityReport {
    let mut tally = Tally { out: Vec::new() };
    generic_identities(scheme, &mut tally);
    match *scheme {
        SchemeId::Hamming { d, q } => hamming_identities(d as i64, q as i64, &mut tally),
        SchemeId::Johnson { n, d } => johnson_identities(n as i64, d as i64, &mut tally),
        SchemeId::Grassmann { q, n, d } => grassmann_identities(q as i64, n as i64, d as i64, &mut tally),
        SchemeId::DualPolar { q, d, e } => dual_polar_identities(q as i64, d as i64, e, &mut tally),
        SchemeId::Bilinear { q, d, e } => bilinear_identities(q as i64, d as i64, e as i64, &mut tally),
        SchemeId::Alternating { q, n } => alternating_identities(q as i64, n as i64, &mut tally),
        SchemeId::Hermitian { q, d } => hermitian_identities(q as i64, d as i64, &mut tally),
    }
    tally.out.sort_by(|a, b| a.id.cmp(&b.id));
    IdentityReport {
        scheme: *scheme,
        results: tally.out,
    }
}

fn generic_identities(scheme: &SchemeId, t: &mut Tally) {
    let d = scheme.diameter();
    let cp = family_to_classical(scheme);
    let ev = FormulaEval::new(*scheme);

    let forms: Vec<EigenMatrix> = match (1..=form_count(scheme.family()))
        .map(|f| ev.matrix(f))
        .collect::<Result<Vec<_>>>()
    {
        Ok(v) => v,
        Err(e) => {
            t.start("P-FORMULA", "explicit formula evaluates");
            t.fail(e.to_string());
            return;
        }
    };
    let p = &forms[0];

    if forms.len() > 1 {
        t.start("FORMS-AGREE", "all printed forms agree entrywise");
        for (f, m) in forms.iter().enumerate().skip(1) {
            for i in 0..=d {
                for j in 0..=d {
                    t.check(m.get(i, j) == p.get(i, j), || {
                        format!("form {} at (i,j)=({i},{j}): {} vs {}", f + 1, m.get(i, j), p.get(i, j))
                    });
                }
            }
        }
    }

    t.start("P-RECURRENCE", "explicit formula equals the classical-parameter recurrence");
    match p_matrix_recurrence(&cp) {
        Ok(r) => {
            for i in 0..=d {
                for j in 0..=d {
                    t.check(r.get(i, j) == p.get(i, j), || {
                        format!("(i,j)=({i},{j}): formula {} vs recurrence {}", p.get(i, j), r.get(i, j))
                    });
                }
            }
        }
        Err(e) => t.fail(e.to_string()),
    }

    t.start("P-LASTROW", "P_dj = (-1)^j [d over j]_b b^C(j,2)");
    for (j, v) in last_row(&cp).iter().enumerate() {
        t.check(p.get(d, j) == v, || format!("j={j}: {} vs {v}", p.get(d, j)));
    }

    t.start("P-COLUMN0", "column 0 is all ones");
    for i in 0..=d {
        t.check(p.get(i, 0).is_one(), || format!("i={i}: {}", p.get(i, 0)));
    }

    let v = vertex_count(scheme);
    let k = p.valencies();
    t.start("P-VALENCY-SUM", "valencies sum to the vertex count");
    let total: BigInt = k.iter().sum();
    t.check(total == v, || format!("sum {total} vs v {v}"));

    t.start("P-THETA", "column 1 equals theta_i");
    for (i, th) in eigenvalues_theta(&cp).iter().enumerate() {
        t.check(p.get(i, 1) == th, || format!("i={i}: {} vs theta {th}", p.get(i, 1)));
    }

    t.start("P-MULTIPLICITY", "orthogonality multiplicities are positive integers summing to v");
    let mult = match multiplicities_from(p, &v) {
        Ok(m) => {
            let s: BigInt = m.iter().sum();
            t.check(s == v && m[0].is_one(), || format!("sum {s} vs v {v}, m_0 = {}", m[0]));
            Some(m)
        }
        Err(e) => {
            t.fail(e.to_string());
            None
        }
    };

    if let Some(m) = &mult {
        t.start("P-TRACE", "v k_j = sum_i m_i P_ij^2");
        for j in 0..=d {
            let rhs: BigInt = (0..=d).map(|i| &m[i] * p.get(i, j) * p.get(i, j)).sum();
            let lhs = &v * &k[j];
            t.check(lhs == rhs, || format!("j={j}: {lhs} vs {rhs}"));
        }
        if let SchemeId::Johnson { n, .. } = *scheme {
            t.start("J-MULTIPLICITY", "m_i = C(n,i) - C(n,i-1)");
            for (i, mi) in m.iter().enumerate() {
                let closed = c(n as i64, i as i64) - if i == 0 { bi(0) } else { c(n as i64, i as i64 - 1) };
                t.check(*mi == closed, || format!("i={i}: {mi} vs {closed}"));
            }
        }
    }

    if cp.b.is_positive() && theta_descending_criterion(&cp) {
        t.start("P-SIGNCHANGES", "row i and column i have exactly i sign changes");
        for i in 0..=d {
            let rc = sign_changes(p.row(i));
            let cc = sign_changes(&p.column(i));
            t.check(rc == i && cc == i, || format!("i={i}: row {rc}, column {cc}"));
        }
    }

    if cp.is_self_dual() {
        t.start("P-SELFDUAL", "P_ij P_0i = P_ji P_0j");
        for i in 0..=d {
            for j in 0..=d {
                let ok = p.get(i, j) * p.get(0, i) == p.get(j, i) * p.get(0, j);
                t.check(ok, || format!("(i,j)=({i},{j})"));
            }
        }

        t.start("P-LASTCOL", "P_id = (1 - (beta+1) b^-i) P_{i+1,d}");
        for i in 0..d {
            // Multiply through by b^i to stay integral.
            let bi_pow = num_traits::pow(cp.b.clone(), i);
            let lhs = p.get(i, d) * &bi_pow;
            let rhs = (&bi_pow - (&cp.beta + 1)) * p.get(i + 1, d);
            t.check(lhs == rhs, || format!("i={i}: {lhs} vs {rhs}"));
        }

        t.start("P-DUALREC", "b_i P_{i+1,j} = (theta_j - a_i) P_ij - c_i P_{i-1,j}");
        match intersection_numbers(&cp) {
            Ok(ia) => {
                let theta = eigenvalues_theta(&cp);
                for i in 0..=d {
                    for j in 0..=d {
                        let lhs = if i < d { ia.b(i) * p.get(i + 1, j) } else { bi(0) };
                        let prev = if i > 0 { ia.c(i) * p.get(i - 1, j) } else { bi(0) };
                        let rhs = (&theta[j] - ia.a(i)) * p.get(i, j) - prev;
                        t.check(lhs == rhs, || format!("(i,j)=({i},{j}): {lhs} vs {rhs}"));
                    }
                }
            }
            Err(e) => t.fail(e.to_string()),
        }
    }
}

fn hamming_identities(d: i64, q: i64, t: &mut Tally) {
    let k = |j: i64, i: i64| kraw_raw(d, q, j, i, 1);
    let mat: Vec<Vec<BigInt>> = (0..=d).map(|j| (0..=d).map(|i| k(j, i)).collect()).collect();
    let kk = |j: i64, i: i64| -> &BigInt { &mat[j as usize][i as usize] };

    t.start("H-VALENCY", "K_j(0) = (q-1)^j C(d,j)");
    for j in 0..=d {
        let e = pw(q - 1, j) * c(d, j);
        t.check(*kk(j, 0) == e, || format!("j={j}"));
    }

    t.start("H-SYMMETRY", "K_j(i) C(d,i)(q-1)^i = K_i(j) C(d,j)(q-1)^j");
    for i in 0..=d {
        for j in 0..=d {
            let lhs = kk(j, i) * c(d, i) * pw(q - 1, i);
            let rhs = kk(i, j) * c(d, j) * pw(q - 1, j);
            t.check(lhs == rhs, || format!("(i,j)=({i},{j})"));
        }
    }

    t.start("H-SAMESIGN", "K_j(i) and K_i(j) have the same sign");
    for i in 0..=d {
        for j in 0..=d {
            t.check(kk(j, i).signum() == kk(i, j).signum(), || format!("(i,j)=({i},{j})"));
        }
    }

    t.start("H-REFLECT", "K_{d-j}(i) = (-1)^{i-j} (q-1)^{d-i-j} K_j(d-i)");
    for i in 0..=d {
        for j in 0..=d {
            let ex = d - i - j;
            let (lhs, rhs) = if ex >= 0 {
                (kk(d - j, i).clone(), sgn(i - j) * pw(q - 1, ex) * kk(j, d - i))
            } else {
                (kk(d - j, i) * pw(q - 1, -ex), sgn(i - j) * kk(j, d - i))
            };
            t.check(lhs == rhs, || format!("(i,j)=({i},{j})"));
        }
    }

    t.start(
        "H-3TERM",
        "(q-1)(d-i)K_j(i+1) - (i+(q-1)(d-i)-qj)K_j(i) + iK_j(i-1) = 0",
    );
    for j in 0..=d {
        for i in 0..=d {
            let up = if i < d { bi((q - 1) * (d - i)) * kk(j, i + 1) } else { bi(0) };
            let down = if i > 0 { bi(i) * kk(j, i - 1) } else { bi(0) };
            let mid = bi(i + (q - 1) * (d - i) - q * j) * kk(j, i);
            t.check((up - mid + down).is_zero(), || format!("(i,j)=({i},{j})"));
        }
    }

    if q == 2 {
        t.start("H-BINARY-SYM", "q = 2: K_j(d-i) = (-1)^j K_j(i)");
        for i in 0..=d {
            for j in 0..=d {
                t.check(*kk(j, d - i) == sgn(j) * kk(j, i), || format!("(i,j)=({i},{j})"));
            }
        }
    }
}

fn johnson_identities(n: i64, d: i64, t: &mut Tally) {
    let e = |n: i64, d: i64, j: i64, i: i64| {
        if j < 0 {
            bi(0)
        } else {
            eber_raw(n, d, j, i, 1)
        }
    };

    t.start("J-EBERIND", "E_j^{n+2,d+1}(i) = E_j^{n,d}(i-1) - E_{j-1}^{n,d}(i-1)");
    for i in 1..=d + 1 {
        for j in 0..=d + 1 {
            let lhs = e(n + 2, d + 1, j, i);
            let rhs = e(n, d, j, i - 1) - e(n, d, j - 1, i - 1);
            t.check(lhs == rhs, || format!("(i,j)=({i},{j})"));
        }
    }

    t.start("J-KNESER", "E_d(i) = (-1)^i C(n-d-i, d-i)");
    for i in 0..=d {
        let closed = sgn(i) * c(n - d - i, d - i);
        t.check(e(n, d, d, i) == closed, || format!("i={i}"));
    }

    if n == 2 * d {
        t.start("J-SYMMETRY", "n = 2d: E_{d-j}(i) = (-1)^i E_j(i)");
        for i in 0..=d {
            for j in 0..=d {
                t.check(e(n, d, d - j, i) == sgn(i) * e(n, d, j, i), || format!("(i,j)=({i},{j})"));
            }
        }
    }

    if n == 2 * d + 1 && d % 2 == 1 {
        let j = (d + 1) / 2;
        t.start("J-2D1-COINCIDENCE", "n = 2d+1, j = (d+1)/2: E_j(2t-1) = E_j(2t) = E_j^{n-1,d}(2t-1)");
        let mut tt = 1;
        while 2 * tt < d {
            let a = e(n, d, j, 2 * tt - 1);
            let b = e(n, d, j, 2 * tt);
            let c2 = e(n - 1, d, j, 2 * tt - 1);
            t.check(a == b && b == c2, || format!("t={tt}: {a}, {b}, {c2}"));
            tt += 1;
        }
    }
}

fn grassmann_identities(q: i64, n: i64, d: i64, t: &mut Tally) {
    let tab = table(q, n + 2);
    let g = |n: i64, d: i64, j: i64, i: i64| -> BigInt {
        if j < 0 {
            bi(0)
        } else {
            grass_raw(&tab, n, d, j, i, 1).expect("form 1 never errors")
        }
    };

    t.start(
        "G-GRASSIND",
        "G_j^{n+2,d+1}(i) = q^j G_j^{n,d}(i-1) - q^{j-1} G_{j-1}^{n,d}(i-1)",
    );
    for i in 1..=d + 1 {
        for j in 0..=d + 1 {
            // Multiply by q to keep q^{j-1} integral at j = 0.
            let lhs = g(n + 2, d + 1, j, i) * q;
            let rhs = pw(q, j + 1) * g(n, d, j, i - 1) - pw(q, j) * g(n, d, j - 1, i - 1);
            t.check(lhs == rhs, || format!("(i,j)=({i},{j})"));
        }
    }

    t.start("G-LASTCOL", "G_d(i) = (-1)^i q^{d(d-i)+C(i,2)} [n-d-i over d-i]");
    for i in 0..=d {
        let closed = sgn(i) * pw(q, d * (d - i) + choose2(i)) * gb(&tab, n - d - i, d - i);
        t.check(g(n, d, d, i) == closed, || format!("i={i}"));
    }
}

fn dual_polar_identities(q: i64, d: i64, e: HalfInt, t: &mut Tally) {
    let tab = table(q, d + 1);
    let qb = bi(q);
    let cc = |d: i64, j: i64, i: i64| -> BigInt {
        if j < 0 || i < 0 || i > d {
            bi(0)
        } else {
            dpolar_raw(&tab, d, e, j, i)
        }
    };
    let qe = |k: i64| pow_halfint(&qb, e.add_int(k)).expect("validated");

    t.start("C-REC-UP", "C_j^{d+1}(i) = q^{d+e-i} C_{j-1}^d(i) + C_j^d(i)");
    for i in 0..=d {
        for j in 0..=d + 1 {
            let lhs = cc(d + 1, j, i);
            let rhs = qe(d - i) * cc(d, j - 1, i) + cc(d, j, i);
            t.check(lhs == rhs, || format!("(i,j)=({i},{j})"));
        }
    }

    t.start("C-REC-DOWN", "C_j^{d+1}(i) = -q^{i-1} C_{j-1}^d(i-1) + C_j^d(i-1)");
    for i in 1..=d + 1 {
        for j in 0..=d + 1 {
            let lhs = cc(d + 1, j, i);
            let rhs = -pw(q, i - 1) * cc(d, j - 1, i - 1) + cc(d, j, i - 1);
            t.check(lhs == rhs, || format!("(i,j)=({i},{j})"));
        }
    }

    t.start(
        "C-REC-COMBINED",
        "C_j(i-1) = C_j(i) + q^{i-1} C_{j-1}(i-1) + q^{d+e-i} C_{j-1}(i)",
    );
    for i in 1..=d {
        for j in 1..=d {
            let lhs = cc(d, j, i - 1);
            let rhs = cc(d, j, i) + pw(q, i - 1) * cc(d, j - 1, i - 1) + qe(d - i) * cc(d, j - 1, i);
            t.check(lhs == rhs, || format!("(i,j)=({i},{j})"));
        }
    }

    t.start("C-FIRSTCOL", "C_1(i) = q^e [d-i over 1] - [i over 1]");
    for i in 0..=d {
        let closed = pow_halfint(&qb, e).expect("validated") * gb(&tab, d - i, 1) - gb(&tab, i, 1);
        t.check(cc(d, 1, i) == closed, || format!("i={i}"));
    }

    t.start("C-LASTCOL", "C_d(i) = (-1)^i q^{C(d,2)+(d-i)(e-i)}");
    for i in 0..=d {
        // (d-i)(e-i) = (d-i)e - (d-i)i; the exponent may be negative.
        let pos = pow_halfint(&qb, e.scale(d - i)).expect("validated") * pw(q, choose2(d));
        let neg = pw(q, (d - i) * i);
        let val = cc(d, d, i);
        t.check(&val * &neg == sgn(i) * pos, || format!("i={i}: {val}"));
    }

    if e.twice() == 0 {
        t.start("C-BIPARTITE", "e = 0: C_j(d-i) = (-1)^j C_j(i)");
        for i in 0..=d {
            for j in 0..=d {
                t.check(cc(d, j, d - i) == sgn(j) * cc(d, j, i), || format!("(i,j)=({i},{j})"));
            }
        }
    }

    if let Some(ei) = e.to_int() {
        t.start("C-LASTCOL-SYM", "integral e, e <= i <= d: |C_d(i)| = |C_d(d+e-i)|");
        for i in ei..=d {
            let a = cc(d, d, i).abs();
            let b = cc(d, d, d + ei - i).abs();
            t.check(a == b, || format!("i={i}"));
        }
    }
}

fn bilinear_identities(q: i64, d: i64, e: i64, t: &mut Tally) {
    let tab = table(q, e + 1);
    let b = |d: i64, e: i64, j: i64, i: i64| -> BigInt {
        if j < 0 || i < 0 || i > d {
            bi(0)
        } else {
            bilin_raw(&tab, d, e, j, i)
        }
    };
    let br = |n: i64| pw(q, n) - 1;

    t.start("B-THETA", "B_1(i) = (q^{d+e-i} - q^d - q^e + 1)/(q-1)");
    for i in 0..=d {
        let th = (pw(q, d + e - i) - pw(q, d) - pw(q, e) + 1) / (q - 1);
        t.check(b(d, e, 1, i) == th, || format!("i={i}"));
    }

    t.start("B-VALENCY", "B_j(0) = [d over j][e over j] prod_h (q^j - q^{j-h})");
    for j in 0..=d {
        let prod: BigInt = (1..=j).map(|h| pw(q, j) - pw(q, j - h)).product();
        let closed = gb(&tab, d, j) * gb(&tab, e, j) * prod;
        t.check(b(d, e, j, 0) == closed, || format!("j={j}"));
    }

    if d >= 1 {
        t.start(
            "B-DELSARTE",
            "B_j^{d,e}(i) - B_j^{d,e}(i+1) = q^{d+e-i-1} B_{j-1}^{d-1,e-1}(i)",
        );
        for i in 0..d {
            for j in 1..=d {
                let lhs = b(d, e, j, i) - b(d, e, j, i + 1);
                let rhs = pw(q, d + e - i - 1) * b(d - 1, e - 1, j - 1, i);
                t.check(lhs == rhs, || format!("(i,j)=({i},{j})"));
            }
        }
    }

    if e >= d + 1 {
        t.start(
            "B-STANTON-D",
            "(q^{d-j+1}-1) B_j^{d+1,e}(i) = (q^{d+1}-q^i) B_j^{d,e}(i) + (q^i-1) B_j^{d,e}(i-1)",
        );
        for i in 0..=d + 1 {
            for j in 0..=d {
                let lhs = br(d - j + 1) * b(d + 1, e, j, i);
                let rhs = (pw(q, d + 1) - pw(q, i)) * b(d, e, j, i) + br(i) * b(d, e, j, i - 1);
                t.check(lhs == rhs, || format!("(i,j)=({i},{j})"));
            }
        }
    }

    t.start(
        "B-STANTON-E",
        "(q^{e-j+1}-1) B_j^{d,e+1}(i) = (q^{e+1}-q^i) B_j^{d,e}(i) + (q^i-1) B_j^{d,e}(i-1)",
    );
    for i in 0..=d {
        for j in 0..=d {
            let lhs = br(e - j + 1) * b(d, e + 1, j, i);
            let rhs = (pw(q, e + 1) - pw(q, i)) * b(d, e, j, i) + br(i) * b(d, e, j, i - 1);
            t.check(lhs == rhs, || format!("(i,j)=({i},{j})"));
        }
    }

    t.start("B-DUALREC", "three-term recurrence in i with [n] = q^n - 1");
    for j in 0..=d {
        for i in 0..=d {
            // Multiplied through by q.
            let next = if i < d { b(d, e, j, i + 1) } else { bi(0) };
            let lhs = pw(q, 2 * i + 1) * br(d - i) * br(e - i) * next;
            let coef = pw(q, e + 1) * br(d - j)
                - bi(q) * br(d)
                - br(i) * (pw(q, e + 1) + pw(q, d + 1) - pw(q, i + 1) - pw(q, i) - bi(q));
            let rhs = coef * b(d, e, j, i) - pw(q, i) * br(i) * b(d, e, j, i - 1);
            t.check(lhs == rhs, || format!("(i,j)=({i},{j})"));
        }
    }
}

fn alternating_identities(q: i64, n: i64, t: &mut Tally) {
    let d = n / 2;
    let m = 2 * n - 2 * d - 1;
    let tab = table(q * q, d + 1);
    let a = |n: i64, j: i64, i: i64| -> BigInt {
        if j < 0 || i < 0 || i > n / 2 {
            bi(0)
        } else {
            alt_raw(&tab, q, n, j, i)
        }
    };

    t.start("A-THETA", "A_1(i) = (q^{2n-2i-1} - q^n - q^{n-1} + 1)/(q^2-1)");
    for i in 0..=d {
        let th = (pw(q, 2 * n - 2 * i - 1) - pw(q, n) - pw(q, n - 1) + 1) / (q * q - 1);
        t.check(a(n, 1, i) == th, || format!("i={i}"));
    }

    t.start("A-VALENCY", "A_j(0) = q^{j(j-1)} prod (q^{n-i}-1) / prod (q^{2i}-1)");
    for j in 0..=d {
        let num: BigInt = (0..2 * j).map(|i| pw(q, n - i) - 1).product();
        let den: BigInt = (1..=j).map(|i| pw(q, 2 * i) - 1).product();
        let closed = pw(q, j * (j - 1)) * num / den;
        t.check(a(n, j, 0) == closed, || format!("j={j}"));
    }

    if n >= 4 {
        t.start("A-REC", "A_j^n(i) = A_j^n(i-1) - q^{2n-2i-1} A_{j-1}^{n-2}(i-1)");
        for i in 1..=d {
            for j in 0..=d {
                let lhs = a(n, j, i);
                let rhs = a(n, j, i - 1) - pw(q, 2 * n - 2 * i - 1) * a(n - 2, j - 1, i - 1);
                t.check(lhs == rhs, || format!("(i,j)=({i},{j})"));
            }
        }
    }

    t.start("A-LASTCOL", "A_d(i) = -(q^{m-2i} - 1) A_d(i+1)");
    for i in 0..d {
        let rhs = (bi(1) - pw(q, m - 2 * i)) * a(n, d, i + 1);
        t.check(a(n, d, i) == rhs, || format!("i={i}"));
    }
}

fn hermitian_identities(q: i64, d: i64, t: &mut Tally) {
    let tab = table(-q, d);
    let h = |d: i64, j: i64, i: i64| -> BigInt {
        if j < 0 || i < 0 || i > d {
            bi(0)
        } else {
            herm_raw(&tab, q, d, j, i)
        }
    };

    t.start("Q-THETA", "Q_1(i) = ((-q)^{2d-i} - 1)/(q+1)");
    for i in 0..=d {
        let th = (pw(-q, 2 * d - i) - 1) / (q + 1);
        t.check(h(d, 1, i) == th, || format!("i={i}"));
    }

    if d >= 2 {
        t.start("Q-REC", "Q_j^d(i) = Q_j^d(i-1) + (-q)^{2d-i} Q_{j-1}^{d-1}(i-1)");
        for i in 1..=d {
            for j in 0..=d {
                let lhs = h(d, j, i);
                let rhs = h(d, j, i - 1) + pw(-q, 2 * d - i) * h(d - 1, j - 1, i - 1);
                t.check(lhs == rhs, || format!("(i,j)=({i},{j})"));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(m: &EigenMatrix) -> Vec<Vec<i64>> {
        m.rows()
            .into_iter()
            .map(|r| r.into_iter().map(|v| i64::try_from(v).unwrap()).collect())
            .collect()
    }

    #[test]
    fn krawtchouk_examples_all_forms() {
        for form in 1..=3 {
            assert_eq!(krawtchouk(4, 3, 3, 1, form).unwrap(), bi(-4));
            assert_eq!(krawtchouk(4, 3, 3, 3, form).unwrap(), bi(5));
            assert_eq!(krawtchouk(4, 3, 3, 0, form).unwrap(), bi(32));
            assert_eq!(krawtchouk(7, 2, 4, 1, form).unwrap(), bi(-5));
        }
        assert!(krawtchouk(4, 3, 5, 1, 1).is_err());
        assert!(krawtchouk(4, 3, 1, 1, 4).is_err());
    }

    #[test]
    fn eberlein_examples() {
        for form in 1..=3 {
            assert_eq!(eberlein(8, 3, 2, 1, form).unwrap(), bi(-2));
            assert_eq!(eberlein(8, 3, 3, 1, form).unwrap(), bi(-6));
            assert_eq!(eberlein(8, 3, 2, 2, form).unwrap(), bi(-5));
            assert_eq!(eberlein(27, 5, 5, 1, form).unwrap(), bi(-5985));
            assert_eq!(eberlein(27, 5, 0, 4, form).unwrap(), bi(1));
        }
        assert!(eberlein(5, 3, 1, 1, 1).is_err());
    }

    #[test]
    fn kneser_examples() {
        let k: Vec<BigInt> = (0..=2).map(|i| kneser_eigen(5, 2, i).unwrap()).collect();
        assert_eq!(k, vec![bi(3), bi(-2), bi(1)]);
        let k: Vec<BigInt> = (0..=3).map(|i| kneser_eigen(8, 3, i).unwrap()).collect();
        assert_eq!(k, vec![bi(10), bi(-6), bi(3), bi(-1)]);
    }

    #[test]
    fn grassmann_examples() {
        for form in 1..=2 {
            assert_eq!(grassmann_eigen(2, 4, 2, 1, 0, form).unwrap(), bi(18));
            assert_eq!(grassmann_eigen(2, 4, 2, 1, 2, form).unwrap(), bi(-3));
            assert_eq!(grassmann_eigen(2, 4, 2, 2, 1, form).unwrap(), bi(-4));
        }
    }

    #[test]
    fn dual_polar_examples() {
        let one = HalfInt::from_int(1);
        assert_eq!(dualpolar_eigen(2, 5, one, 1, 1).unwrap(), bi(29));
        assert_eq!(dualpolar_eigen(2, 5, one, 4, 1).unwrap(), bi(64));
        assert_eq!(dualpolar_eigen(2, 5, one, 5, 1).unwrap(), bi(-1024));
        assert_eq!(dualpolar_eigen(2, 5, one, 5, 2).unwrap(), bi(128));
        assert_eq!(dualpolar_eigen(2, 5, one, 1, 3).unwrap(), bi(-1));
        assert!(dualpolar_eigen(2, 5, HalfInt::from_twice(1), 1, 1).is_err());
    }

    #[test]
    fn forms_families_examples() {
        let b1: Vec<BigInt> = (0..=2).map(|i| bilinear_eigen(2, 2, 2, 1, i).unwrap()).collect();
        assert_eq!(b1, vec![bi(9), bi(1), bi(-3)]);
        assert_eq!(bilinear_eigen(2, 2, 2, 1, 2).unwrap(), bi(-3));
        assert_eq!(bilinear_eigen(2, 2, 2, 2, 2).unwrap(), bi(2));
        assert!(bilinear_eigen(2, 3, 2, 1, 1).is_err());

        assert_eq!(alternating_eigen(2, 4, 1, 1).unwrap(), bi(3));
        assert_eq!(alternating_eigen(2, 4, 2, 1).unwrap(), bi(-4));
        assert_eq!(alternating_eigen(2, 4, 1, 2).unwrap(), bi(-5));

        let q1: Vec<BigInt> = (0..=2).map(|i| hermitian_eigen(2, 2, 1, i).unwrap()).collect();
        assert_eq!(q1, vec![bi(5), bi(-3), bi(1)]);
        assert_eq!(hermitian_eigen(2, 2, 2, 2).unwrap(), bi(-2));
        assert!((0..=2).all(|i| hermitian_eigen(2, 2, 0, i).unwrap().is_one()));
    }

    #[test]
    fn eigenmatrix_h73() {
        let p = eigenmatrix(&SchemeId::hamming(7, 3).unwrap()).unwrap();
        assert_eq!(p.get(0, 7), &bi(128));
        assert_eq!(rows(&p)[7], vec![1, -7, 21, -35, 35, -21, 7, -1]);
    }

    #[test]
    fn identity_suites_small() {
        for s in [
            SchemeId::hamming(6, 3).unwrap(),
            SchemeId::johnson(11, 5).unwrap(),
            SchemeId::bilinear(3, 3, 4).unwrap(),
            SchemeId::grassmann(2, 7, 3).unwrap(),
            SchemeId::dual_polar(4, 3, HalfInt::from_twice(3)).unwrap(),
            SchemeId::dual_polar(3, 4, HalfInt::from_int(0)).unwrap(),
            SchemeId::alternating(2, 7).unwrap(),
            SchemeId::hermitian(3, 3).unwrap(),
        ] {
            let r = identity_suite(&s);
            let bad: Vec<_> = r.failures().collect();
            assert!(bad.is_empty(), "{s}: {bad:?}");
            assert!(r.results.windows(2).all(|w| w[0].id < w[1].id));
        }
    }

    #[test]
    fn identity_suite_reports_expected_ids() {
        let r = identity_suite(&SchemeId::johnson(11, 5).unwrap());
        let ids: Vec<&str> = r.results.iter().map(|x| x.id.as_str()).collect();
        for id in ["J-EBERIND", "J-KNESER", "J-2D1-COINCIDENCE", "FORMS-AGREE", "P-RECURRENCE"] {
            assert!(ids.contains(&id), "{id} missing from {ids:?}");
        }
        let r = identity_suite(&SchemeId::bilinear(3, 3, 4).unwrap());
        let ids: Vec<&str> = r.results.iter().map(|x| x.id.as_str()).collect();
        for id in ["B-DELSARTE", "B-STANTON-D", "B-STANTON-E", "B-DUALREC", "P-DUALREC"] {
            assert!(ids.contains(&id), "{id} missing from {ids:?}");
        }
    }
}
