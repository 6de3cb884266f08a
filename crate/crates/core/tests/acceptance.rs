//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout.
//! Criteria whose statements are contradicted by exact computation are
//! reported as FAIL; the process only exits nonzero when a result differs
//! from what has been established (a regression), not for those known
//! failures.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use scheme_spectra::extremal::{
    bound_lemma_ids, chvatal_concentration_check, largebeta_onset, q0_threshold, sweep_bound_lemma,
    verify_theorem, verify_theorem_default, catalog, Status, Tuple, VerificationReport,
};
use scheme_spectra::families::identity_suite;
use scheme_spectra::scanner::{
    component_srg_params, connected_components, scan_coincidences, srg_params, CountWindow, TABLE_BOXES,
};
use scheme_spectra::schemes::{default_grid, scheme_p_matrix};
use scheme_spectra::{EigenMatrix, Family, HalfInt, SchemeId};

struct Outcome {
    pass: bool,
    /// A failing criterion whose failure set is exactly the documented one.
    known: bool,
    note: String,
}

impl Outcome {
    fn pass(note: impl Into<String>) -> Self {
        Outcome { pass: true, known: false, note: note.into() }
    }
    fn fail(note: impl Into<String>) -> Self {
        Outcome { pass: false, known: false, note: note.into() }
    }
    fn known_fail(note: impl Into<String>) -> Self {
        Outcome { pass: false, known: true, note: note.into() }
    }
}

fn within(o: Outcome, elapsed: Duration, limit: Duration) -> Outcome {
    if o.pass && elapsed > limit {
        Outcome::fail(format!("{} (took {:.1?}, limit {:?})", o.note, elapsed, limit))
    } else {
        o
    }
}

fn m(rows: &[&[i64]]) -> EigenMatrix {
    EigenMatrix::from_i64_rows(rows).unwrap()
}

fn verify(id: &str, bx: &str) -> VerificationReport {
    verify_theorem(id, &bx.parse().unwrap()).unwrap_or_else(|e| panic!("{id} on {bx}: {e}"))
}

fn tuple_key(t: &Tuple) -> String {
    format!("{} j={:?} i={:?} part={}", t.instance, t.j, t.i, t.part)
}

// 1. Printed eigenmatrices, entry for entry.
fn golden() -> Outcome {
    let cases: Vec<(SchemeId, EigenMatrix)> = vec![
        (
            SchemeId::hamming(4, 3).unwrap(),
            m(&[
                &[1, 8, 24, 32, 16],
                &[1, 5, 6, -4, -8],
                &[1, 2, -3, -4, 4],
                &[1, -1, -3, 5, -2],
                &[1, -4, 6, -4, 1],
            ]),
        ),
        (
            SchemeId::hamming(7, 2).unwrap(),
            m(&[
                &[1, 7, 21, 35, 35, 21, 7, 1],
                &[1, 5, 9, 5, -5, -9, -5, -1],
                &[1, 3, 1, -5, -5, 1, 3, 1],
                &[1, 1, -3, -3, 3, 3, -1, -1],
                &[1, -1, -3, 3, 3, -3, -1, 1],
                &[1, -3, 1, 5, -5, -1, 3, -1],
                &[1, -5, 9, -5, -5, 9, -5, 1],
                &[1, -7, 21, -35, 35, -21, 7, -1],
            ]),
        ),
        (
            SchemeId::hamming(7, 3).unwrap(),
            m(&[
                &[1, 14, 84, 280, 560, 672, 448, 128],
                &[1, 11, 48, 100, 80, -48, -128, -64],
                &[1, 8, 21, 10, -40, -48, 16, 32],
                &[1, 5, 3, -17, -16, 24, 16, -16],
                &[1, 2, -6, -8, 17, 6, -20, 8],
                &[1, -1, -6, 10, 5, -21, 16, -4],
                &[1, -4, 3, 10, -25, 24, -11, 2],
                &[1, -7, 21, -35, 35, -21, 7, -1],
            ]),
        ),
        (
            SchemeId::johnson(8, 3).unwrap(),
            m(&[&[1, 15, 30, 10], &[1, 7, -2, -6], &[1, 1, -5, 3], &[1, -3, 3, -1]]),
        ),
        (
            SchemeId::johnson(27, 5).unwrap(),
            m(&[
                &[1, 110, 2310, 15400, 36575, 26334],
                &[1, 83, 1176, 4060, 665, -5985],
                &[1, 58, 451, 60, -1710, 1140],
                &[1, 35, 60, -400, 475, -171],
                &[1, 14, -66, 104, -71, 18],
                &[1, -5, 10, -10, 5, -1],
            ]),
        ),
        (
            SchemeId::dual_polar(2, 5, HalfInt::from_int(1)).unwrap(),
            m(&[
                &[1, 62, 1240, 9920, 31744, 32768],
                &[1, 29, 250, 680, 64, -1024],
                &[1, 11, 16, -76, -80, 128],
                &[1, -1, -20, 20, 64, -64],
                &[1, -13, 40, 20, -176, 128],
                &[1, -31, 310, -1240, 1984, -1024],
            ]),
        ),
        (SchemeId::alternating(2, 4).unwrap(), m(&[&[1, 35, 28], &[1, 3, -4], &[1, -5, 4]])),
    ];
    for (s, want) in &cases {
        let got = scheme_p_matrix(s).unwrap();
        if let Some((i, j)) = got.first_difference(want) {
            return Outcome::fail(format!("{s}: entry ({i},{j}) is {} not {}", got.get(i, j), want.get(i, j)));
        }
    }
    Outcome::pass(format!("{} matrices exact", cases.len()))
}

fn all_grid() -> Vec<SchemeId> {
    Family::ALL.iter().flat_map(|&f| default_grid(f)).collect()
}

// 2. Formula = recurrence, alternate forms agree, identity suite clean.
// 9. Trace identity, multiplicities, sign changes, self-duality.
fn identities(ids: &[&str]) -> Outcome {
    let grid = all_grid();
    let mut checked = 0u64;
    for s in &grid {
        let rep = identity_suite(s);
        for r in &rep.results {
            let wanted = ids.is_empty() || ids.contains(&r.id.as_str());
            if wanted && !r.passed {
                return Outcome::fail(format!("{s}: {} failed at {:?}", r.id, r.first_failure));
            }
            if wanted {
                checked += r.checked;
            }
        }
        if ids.is_empty() && !rep.all_passed() {
            return Outcome::fail(format!("{s}: identity suite failed"));
        }
    }
    if !ids.is_empty() {
        for id in ids {
            let seen = grid.iter().any(|s| identity_suite(s).results.iter().any(|r| r.id == *id && r.checked > 0));
            if !seen {
                return Outcome::fail(format!("identity {id} never evaluated"));
            }
        }
    }
    Outcome::pass(format!("{} schemes, {checked} checks", grid.len()))
}

// 3. Binary and non-binary Hamming.
fn van_dam_sotirov() -> Outcome {
    let bin = verify("H-THM-BINARY", "q=2,d=1..40");
    if bin.status != Status::Pass {
        return Outcome::fail(format!("H-THM-BINARY {}", bin.status.as_str()));
    }
    let nb = verify("H-THM-NONBINARY", "q=3..8,d=1..30");
    let ex: BTreeSet<String> = nb.exceptions.iter().map(tuple_key).collect();
    let want: BTreeSet<String> = ["hamming:d=4,q=3 j=Some(3) i=Some(3) part=ii".to_string()].into();
    if nb.status != Status::PassWithListedExceptions || nb.counterexample_count != 0 || ex != want {
        return Outcome::fail(format!("H-THM-NONBINARY {} exceptions {ex:?}", nb.status.as_str()));
    }
    Outcome::pass("binary d<=40 clean; non-binary exceptions = {(3,4,3,3)}")
}

// 4. Johnson smallest eigenvalue.
fn karloff() -> Outcome {
    for (id, bx) in [("J-COR-KARLOFF", "d=1..15,x=0"), ("J-THM-SMALLEST", "n=2..40")] {
        let r = verify(id, bx);
        if r.status != Status::Pass {
            return Outcome::fail(format!("{id} {}", r.status.as_str()));
        }
    }
    Outcome::pass("J-COR-KARLOFF d<=15, J-THM-SMALLEST n<=40 (both directions)")
}

// 5. Printed q0 table.
fn q0_table() -> Outcome {
    let printed: [(u32, u32); 19] = [
        (2, 2), (3, 3), (4, 4), (5, 5), (6, 7), (7, 9), (8, 12), (9, 15), (10, 18), (12, 26),
        (14, 35), (16, 45), (18, 57), (20, 70), (30, 156), (40, 277), (50, 433), (60, 623), (100, 1730),
    ];
    let t = Instant::now();
    for &(d, want) in &printed {
        let got = q0_threshold(d).unwrap();
        if got != want {
            return Outcome::fail(format!("d={d}: q0 = {got}, printed {want}"));
        }
        if d == 20 && t.elapsed() > Duration::from_secs(300) {
            return Outcome::fail(format!("d<=20 subset took {:.1?}", t.elapsed()));
        }
    }
    Outcome::pass("19/19 values")
}

// 6. Table of four/five/six-eigenvalue columns and the three-eigenvalue table.
fn coincidence_tables() -> Outcome {
    // (d, q, j, distinct, explanations). Row (6,10,3) is printed as P43 = P63;
    // the column is 14580,6480,1980,80,-220,80,-20, so the pair is P33 = P53.
    // Row (7,2,3) also needs P23 = P63 to have six values.
    let u = |a: usize, c: usize, j: usize| format!("unexplained(P_{{{a},{j}}}=P_{{{c},{j}}})");
    let c2 = |p: &[&str]| p.iter().map(|x| format!("L-coin2-{x}")).collect::<Vec<_>>();
    let cq = |p: &str| vec![format!("L-coinq-{p}")];
    let cat = |mut a: Vec<String>, b: Vec<String>| {
        a.extend(b);
        a
    };
    let table: Vec<(u32, u32, usize, usize, Vec<String>)> = vec![
        // four
        (5, 2, 3, 4, c2(&["iii"])),
        (6, 2, 2, 4, c2(&["i"])),
        (6, 2, 4, 4, c2(&["i"])),
        (7, 2, 2, 4, c2(&["i"])),
        (7, 2, 6, 4, c2(&["i"])),
        (8, 2, 4, 4, c2(&["i", "ii"])),
        (11, 2, 6, 4, c2(&["i", "iii"])),
        (5, 3, 3, 4, vec![u(1, 4, 3), u(2, 5, 3)]),
        (5, 4, 2, 4, cq("ii")),
        (4, 6, 2, 4, cq("ii")),
        // five
        (6, 2, 3, 5, c2(&["ii"])),
        (8, 2, 2, 5, c2(&["i"])),
        (8, 2, 6, 5, c2(&["i"])),
        (9, 2, 2, 5, c2(&["i"])),
        (9, 2, 4, 5, c2(&["i"])),
        (9, 2, 6, 5, c2(&["i"])),
        (9, 2, 8, 5, c2(&["i"])),
        (10, 2, 4, 5, cat(c2(&["i"]), vec![u(2, 3, 4)])),
        (10, 2, 8, 5, cat(c2(&["i"]), vec![u(3, 4, 8)])),
        (11, 2, 4, 5, cat(c2(&["i"]), vec![u(2, 4, 4)])),
        (11, 2, 8, 5, cat(c2(&["i"]), vec![u(3, 5, 8)])),
        (12, 2, 6, 5, c2(&["i", "ii"])),
        (15, 2, 8, 5, c2(&["i", "iii"])),
        (7, 3, 2, 5, cq("ii")),
        (7, 3, 5, 5, cat(cq("iii"), vec![u(3, 6, 5), u(5, 7, 5)])),
        (5, 4, 3, 5, vec![u(3, 5, 3)]),
        (5, 4, 4, 5, cq("iii")),
        (6, 5, 2, 5, cq("ii")),
        (5, 6, 3, 5, vec![u(2, 5, 3)]),
        (5, 8, 2, 5, cq("ii")),
        // six
        (7, 2, 3, 6, vec![u(1, 5, 3), u(2, 6, 3)]),
        (9, 2, 5, 6, c2(&["iii"])),
        (10, 2, 2, 6, c2(&["i"])),
        (10, 2, 6, 6, c2(&["i"])),
        (11, 2, 2, 6, c2(&["i"])),
        (11, 2, 10, 6, c2(&["i"])),
        (12, 2, 4, 6, cat(c2(&["i"]), vec![u(2, 6, 4)])),
        (12, 2, 8, 6, cat(c2(&["i"]), vec![u(2, 6, 8)])),
        (16, 2, 8, 6, c2(&["i", "ii"])),
        (19, 2, 10, 6, c2(&["i", "iii"])),
        (7, 3, 3, 6, vec![u(2, 5, 3), u(2, 6, 3)]),
        (7, 3, 6, 6, vec![u(2, 3, 6), u(2, 5, 6)]),
        (7, 4, 2, 6, cq("ii")),
        (7, 4, 4, 6, vec![u(2, 6, 4), u(5, 7, 4)]),
        (6, 5, 3, 6, vec![u(4, 6, 3)]),
        (6, 5, 5, 6, cq("iii")),
        (7, 6, 2, 6, cq("ii")),
        (6, 10, 2, 6, cq("ii")),
        (6, 10, 3, 6, vec![u(3, 5, 3)]),
    ];
    let scan = |w: CountWindow| {
        let mut rows = Vec::new();
        for bx in TABLE_BOXES {
            rows.extend(scan_coincidences(Family::Hamming, &bx.parse().unwrap(), w).unwrap());
        }
        rows
    };
    let got: BTreeSet<(u32, u32, usize, usize, Vec<String>)> =
        scan(CountWindow::TABLE).into_iter().map(|r| (r.d as u32, r.q as u32, r.j, r.distinct_count, r.labels())).collect();
    let want: BTreeSet<_> = table.into_iter().collect();
    if got != want {
        let missing: Vec<_> = want.difference(&got).collect();
        let extra: Vec<_> = got.difference(&want).collect();
        return Outcome::fail(format!("table mismatch: missing {missing:?}, extra {extra:?}"));
    }

    let three: BTreeSet<(u32, u32, usize)> = scan(CountWindow::THREE).into_iter().map(|r| (r.d as u32, r.q as u32, r.j)).collect();
    let three_want: BTreeSet<(u32, u32, usize)> =
        [(4, 2, 2), (5, 2, 2), (5, 2, 4), (7, 2, 4), (4, 3, 2), (4, 3, 3), (3, 4, 2)].into();
    if three != three_want {
        return Outcome::fail(format!("three-eigenvalue rows {three:?}"));
    }
    for (d, q, j, want) in [(4, 3, 2, "(81,24,9,6)"), (4, 3, 3, "(81,32,13,12)"), (3, 4, 2, "(64,27,10,12)")] {
        let s = SchemeId::hamming(d, q).unwrap();
        match srg_params(&s, j).unwrap() {
            Some(p) if p.to_string() == want && p.identity_holds() => {}
            other => return Outcome::fail(format!("H({d},{q},{j}): {other:?}, expected {want}")),
        }
    }
    for (d, j) in [(4, 2), (5, 2), (5, 4), (7, 4)] {
        let s = SchemeId::hamming(d, 2).unwrap();
        if connected_components(&s, j).unwrap() != BigInt::from(2) {
            return Outcome::fail(format!("H({d},2,{j}) is not two copies"));
        }
    }
    let (c, p) = component_srg_params(&SchemeId::hamming(7, 2).unwrap(), 4).unwrap().unwrap();
    if c != BigInt::from(2) || p.to_string() != "(64,35,18,20)" {
        return Outcome::fail(format!("H(7,2,4): {c} x {p}"));
    }
    Outcome::pass(format!("{} table rows exact, 7 three-value rows, SRG parameters and components", want.len()))
}

// 7. Grassmann, dual polar, bilinear, alternating and Hermitian theorems.
fn forms_theorems() -> Outcome {
    let plain = [
        ("G-PROP-ABS", "q=2..4,d=1..8,x=0..4"),
        ("G-THM-SMALLEST-I", "q=2..4,d=1..8,x=0..4"),
        ("G-THM-SMALLEST-II", "q=2,d=1..16,x=0"),
        ("C-COR-SMALLEST", "q=2..4,d=1..8"),
        ("B-THM-Q4", "q=4..5,d=1..8,e=1..8"),
        ("A-THM", "q=2..3,n=2..12"),
        ("Q-THM", "q=4..5,d=1..8"),
    ];
    for (id, bx) in plain {
        let r = verify(id, bx);
        if !r.status.is_ok() {
            return Outcome::fail(format!("{id} {}: {:?}", r.status.as_str(), r.counterexamples.first()));
        }
    }
    // The d-1 exception of part (ii) must be exactly (q,j,e) = (2,d-1,1).
    let r = verify("C-PROP", "q=2..4,d=1..8");
    for t in &r.exceptions {
        let s: SchemeId = t.instance.parse().unwrap();
        let ok = matches!(s, SchemeId::DualPolar { q: 2, d, e } if e == HalfInt::from_int(1) && t.j == Some(d as usize - 1));
        if !ok {
            return Outcome::fail(format!("C-PROP unexpected listed exception {}", tuple_key(t)));
        }
    }
    let want_ex: BTreeSet<u32> = (3..=8).collect();
    let got_ex: BTreeSet<u32> = r
        .exceptions
        .iter()
        .filter(|t| t.part == "ii")
        .map(|t| t.instance.parse::<SchemeId>().unwrap().diameter() as u32)
        .collect();
    if got_ex != want_ex {
        return Outcome::fail(format!("C-PROP (2,d-1,1) exception at d = {got_ex:?}"));
    }
    if r.status == Status::PassWithListedExceptions {
        return Outcome::pass("all forms-family theorems hold");
    }
    // Degenerate diameters: (i) gives C_1(1) = 0 at d = 2, e = 0; (iv) compares
    // C_1(1) with itself at d = 1.
    let ce: BTreeSet<String> = r.counterexamples.iter().map(tuple_key).collect();
    let known: BTreeSet<String> = [
        "dualpolar:q=2,d=1,e=0 j=Some(1) i=Some(1) part=iv",
        "dualpolar:q=3,d=1,e=0 j=Some(1) i=Some(1) part=iv",
        "dualpolar:q=4,d=1,e=0 j=Some(1) i=Some(1) part=iv",
        "dualpolar:q=4,d=1,e=1/2 j=Some(1) i=Some(1) part=iv",
        "dualpolar:q=2,d=2,e=0 j=Some(1) i=Some(1) part=i",
        "dualpolar:q=3,d=2,e=0 j=Some(1) i=Some(1) part=i",
        "dualpolar:q=4,d=2,e=0 j=Some(1) i=Some(1) part=i",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    if r.counterexample_count as usize == known.len() && ce == known {
        Outcome::known_fail("C-PROP fails at d <= 2 (C_1(1) = 0 for d=2,e=0; forced equality for d=1); everything else holds")
    } else {
        Outcome::fail(format!("C-PROP {}: {ce:?}", r.status.as_str()))
    }
}

// 8. Bound lemmas on their default boxes, plus Chvatal concentration.
fn bound_lemmas() -> Outcome {
    let mut checked = 0;
    for (id, bx) in bound_lemma_ids() {
        let s = sweep_bound_lemma(id, &bx.parse().unwrap()).unwrap();
        if !s.holds || s.violation_count != 0 || s.checked == 0 {
            return Outcome::fail(format!("{id}: {} violations of {}", s.violation_count, s.checked));
        }
        checked += s.checked;
    }
    for n in 2..=40u32 {
        for d in 1..=n / 2 {
            let r = chvatal_concentration_check(n, d).unwrap();
            if !r.holds {
                return Outcome::fail(format!("Chvatal concentration fails at n={n}, d={d}"));
            }
        }
    }
    Outcome::pass(format!("{} lemmas, {checked} instances, Chvatal n<=40", bound_lemma_ids().len()))
}

// 9 also covers the classical-parameter sign-change proposition.
fn structural() -> Outcome {
    let o = identities(&["P-TRACE", "P-MULTIPLICITY", "P-SIGNCHANGES", "P-SELFDUAL"]);
    if !o.pass {
        return o;
    }
    let r = verify_theorem_default("CP-SIGNCHANGES").unwrap();
    if r.status != Status::Pass {
        return Outcome::fail(format!("CP-SIGNCHANGES {}", r.status.as_str()));
    }
    Outcome::pass(format!("{}; CP-SIGNCHANGES on {} tuples", o.note, r.instances))
}

// 10. Johnson line d = 5: beta = n - 5.
fn large_beta() -> Outcome {
    let betas: Vec<i64> = (1..=80).collect();
    let r = largebeta_onset(5, 1, 1, &betas).unwrap();
    let n = |k: &str| r.onsets[k].map(|b| b + 5);
    if n("i") == Some(27) && n("iii") == Some(34) {
        Outcome::pass("sign pattern from n=27, decreasing |P| from n=34")
    } else {
        Outcome::fail(format!("onsets n: sign {:?}, monotone {:?}", n("i"), n("iii")))
    }
}

// 11. Conjecture and remark probes.
fn probes() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for info in catalog().iter().filter(|t| t.probe) {
        n += 1;
        let r = verify_theorem_default(info.id).unwrap();
        for t in &r.counterexamples {
            bad.push(format!("{}: {}", info.id, tuple_key(t)));
        }
        if r.counterexample_count as usize != r.counterexamples.len() {
            bad.push(format!("{}: {} counterexamples", info.id, r.counterexample_count));
        }
    }
    if bad.is_empty() {
        return Outcome::pass(format!("{n} probes, no counterexamples"));
    }
    let known: Vec<String> = vec![
        "J-REMARK-QUARTER: johnson:n=12,d=3 j=Some(2) i=Some(1) part=abs".into(),
        "C-CONJ-UNIMODAL: dualpolar:q=4,d=4,e=3/2 j=Some(2) i=None part=i0".into(),
    ];
    let mut sorted = bad.clone();
    sorted.sort();
    let mut known_sorted = known.clone();
    known_sorted.sort();
    if sorted == known_sorted {
        Outcome::known_fail(format!(
            "{n} probes; counterexamples J(12,3) j=2 (|j-de/n| = 1/4, |E_2(2)| = 13 > 12) and C_4(4,3/2) j=2 (i0 = 2, i1 = 3)"
        ))
    } else {
        Outcome::fail(format!("counterexamples: {bad:?}"))
    }
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome, Duration)> = vec![
        ("golden matrices", golden, Duration::from_secs(1)),
        ("formula/recurrence agreement", || identities(&[]), Duration::from_secs(120)),
        ("binary and non-binary Hamming", van_dam_sotirov, Duration::from_secs(60)),
        ("Johnson smallest eigenvalue", karloff, Duration::from_secs(60)),
        ("q0 table", q0_table, Duration::from_secs(3600)),
        ("coincidence tables", coincidence_tables, Duration::from_secs(600)),
        ("forms-family theorems", forms_theorems, Duration::from_secs(600)),
        ("bound lemmas", bound_lemmas, Duration::from_secs(600)),
        ("structural invariants", structural, Duration::from_secs(600)),
        ("large-parameter onsets", large_beta, Duration::from_secs(60)),
        ("conjecture probes", probes, Duration::from_secs(600)),
    ];
    let mut regressions = 0;
    for (k, (name, f, limit)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let o = within(f(), t.elapsed(), limit);
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} {name} [{:.2?}]: {}", k + 1, t.elapsed(), o.note);
        if !o.pass && !o.known {
            regressions += 1;
        }
    }
    if regressions > 0 {
        println!("{regressions} criteria failed unexpectedly");
        std::process::exit(1);
    }
}
