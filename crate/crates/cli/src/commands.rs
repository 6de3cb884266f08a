use std::collections::BTreeMap;
use std::fmt::Write as _;

use scheme_spectra::extremal::{
    analyze_column, bound_lemma_ids, catalog, check_bound_lemma, predict_extremal, q0_threshold,
    sweep_bound_lemma, theorem_info, verify_theorem, BoundReport, ColumnAnalysis, ParamBox, Prediction,
    VerificationReport,
};
use scheme_spectra::families::identity_suite;
use scheme_spectra::scanner::{krawtchouk_zero_scan, scan_coincidences, CountWindow, TABLE_BOXES};
use scheme_spectra::schemes::scheme_p_matrix;
use scheme_spectra::{Error, EigenMatrix, Family, SchemeId};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::Command;

/// Everything a command produced, before rendering.
pub struct Output {
    pub command: &'static str,
    pub parameters: BTreeMap<String, String>,
    pub results: Value,
    pub status: String,
    pub exit: i32,
    pub pretty: String,
    pub csv: Vec<Vec<String>>,
}

pub enum Failure {
    /// Bad input; exit code 2.
    Usage(String),
    /// Internal inconsistency; exit code 1.
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistency(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Res<T> = Result<T, Failure>;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn params(pairs: &[(&str, Option<String>)]) -> BTreeMap<String, String> {
    pairs.iter().filter_map(|(k, v)| v.clone().map(|v| (k.to_string(), v))).collect()
}

fn parse_scheme(s: &str) -> Res<SchemeId> {
    Ok(s.parse::<SchemeId>()?)
}

fn parse_box(s: &str) -> Res<ParamBox> {
    Ok(s.parse::<ParamBox>()?)
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".into(), T::to_string)
}

pub fn run(cmd: &Command, timing: bool) -> Res<Output> {
    match cmd {
        Command::Pmatrix(s) => pmatrix(&s.scheme),
        Command::Column { scheme, j } => column(scheme.scheme.as_str(), *j),
        Command::Analyze(s) => analyze(&s.scheme),
        Command::Verify { id, param_box, list } => {
            if *list {
                verify_list()
            } else {
                let id = id.as_deref().ok_or_else(|| Failure::Usage("verify needs a theorem id (or --list)".into()))?;
                verify(id, param_box.as_deref(), timing)
            }
        }
        Command::Scan { param_box, min, max } => scan(param_box.as_deref(), *min, *max),
        Command::Zeros { q, d_max } => zeros(*q, *d_max),
        Command::Q0 { d } => q0(*d),
        Command::Bounds { id, params, param_box, list } => {
            if *list {
                bounds_list()
            } else {
                let id = id.as_deref().ok_or_else(|| Failure::Usage("bounds needs a lemma id (or --list)".into()))?;
                bounds(id, params.as_deref(), param_box.as_deref())
            }
        }
        Command::Identities(s) => identities(&s.scheme),
    }
}

/// Right-aligned matrix, rows `i`, columns `j`.
pub fn render_matrix(m: &EigenMatrix) -> String {
    let rows = m.rows();
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    let d = m.d();
    let widths: Vec<usize> = (0..=d).map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(1)).collect();
    let mut out = String::new();
    for r in &cells {
        let line: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        writeln!(out, "{}", line.join("  ")).unwrap();
    }
    out
}

fn pmatrix(s: &str) -> Res<Output> {
    let scheme = parse_scheme(s)?;
    let m = scheme_p_matrix(&scheme)?;
    let d = m.d();
    let mut csv = vec![std::iter::once("i".to_string()).chain((0..=d).map(|j| format!("j{j}"))).collect()];
    for (i, r) in m.rows().iter().enumerate() {
        csv.push(std::iter::once(i.to_string()).chain(r.iter().map(|x| x.to_string())).collect());
    }
    Ok(Output {
        command: "pmatrix",
        parameters: params(&[("scheme", Some(scheme.to_string()))]),
        results: json!({ "scheme": scheme, "d": d, "matrix": m }),
        status: "ok".into(),
        exit: 0,
        pretty: format!("P for {scheme}\n{}", render_matrix(&m)),
        csv,
    })
}

fn column_pretty(a: &ColumnAnalysis, p: &Option<Prediction>) -> String {
    let mut s = String::new();
    writeln!(s, "{} column j={}", a.scheme, a.j).unwrap();
    writeln!(s, "  values:        {}", join(&a.values, " ")).unwrap();
    writeln!(s, "  min:           {} at i in {{{}}}", a.min_value, join(&a.argmin_set, ",")).unwrap();
    writeln!(s, "  max |P_ij|, i>=1: {} at i in {{{}}}", a.max_abs_tail, join(&a.argmax_abs_set, ",")).unwrap();
    writeln!(s, "  distinct:      {}", a.distinct_count).unwrap();
    if let Some(p) = p {
        writeln!(s, "  predicted argmin:     {} ({})", opt(&p.argmin), opt(&p.argmin_source)).unwrap();
        writeln!(s, "  predicted argmax|.|:  {} ({})", opt(&p.argmax_abs), opt(&p.argmax_abs_source)).unwrap();
    }
    s
}

/// Whether the prediction (if any) lands in the observed sets.
fn agrees(a: &ColumnAnalysis, p: &Option<Prediction>) -> bool {
    p.as_ref().map_or(true, |p| {
        p.argmin.map_or(true, |i| a.argmin_set.contains(&i))
            && p.argmax_abs.map_or(true, |i| a.argmax_abs_set.contains(&i))
    })
}

fn column(s: &str, j: usize) -> Res<Output> {
    let scheme = parse_scheme(s)?;
    let a = analyze_column(&scheme, j)?;
    let p = predict_extremal(&scheme, j);
    let ok = agrees(&a, &p);
    let mut csv = vec![vec!["i".to_string(), "value".into()]];
    for (i, v) in a.values.iter().enumerate() {
        csv.push(vec![i.to_string(), v.to_string()]);
    }
    Ok(Output {
        command: "column",
        parameters: params(&[("scheme", Some(scheme.to_string())), ("j", Some(j.to_string()))]),
        results: json!({ "analysis": a, "prediction": p }),
        status: if ok { "ok" } else { "prediction-mismatch" }.into(),
        exit: if ok { 0 } else { 1 },
        pretty: column_pretty(&a, &p),
        csv,
    })
}

fn analyze(s: &str) -> Res<Output> {
    let scheme = parse_scheme(s)?;
    let d = scheme.diameter();
    let mut results = Vec::new();
    let mut pretty = format!("{scheme}\n");
    let mut csv = vec![["j", "min", "argmin", "max_abs_tail", "argmax_abs", "distinct", "predicted_argmin", "argmin_source", "predicted_argmax_abs", "argmax_abs_source"]
        .map(String::from)
        .to_vec()];
    writeln!(pretty, "{:>3}  {:>12}  {:>10}  {:>12}  {:>10}  {:>8}  prediction", "j", "min", "argmin", "max|P|,i>=1", "argmax", "distinct").unwrap();
    let mut ok = true;
    for j in 1..=d {
        let a = analyze_column(&scheme, j)?;
        let p = predict_extremal(&scheme, j);
        ok &= agrees(&a, &p);
        let pred = p
            .as_ref()
            .map(|p| format!("min {} ({}), max {} ({})", opt(&p.argmin), opt(&p.argmin_source), opt(&p.argmax_abs), opt(&p.argmax_abs_source)))
            .unwrap_or_default();
        writeln!(
            pretty,
            "{j:>3}  {:>12}  {:>10}  {:>12}  {:>10}  {:>8}  {pred}",
            a.min_value.to_string(),
            join(&a.argmin_set, ","),
            a.max_abs_tail.to_string(),
            join(&a.argmax_abs_set, ","),
            a.distinct_count
        )
        .unwrap();
        let pp = p.clone();
        csv.push(vec![
            j.to_string(),
            a.min_value.to_string(),
            join(&a.argmin_set, ";"),
            a.max_abs_tail.to_string(),
            join(&a.argmax_abs_set, ";"),
            a.distinct_count.to_string(),
            pp.as_ref().map(|p| opt(&p.argmin)).unwrap_or_default(),
            pp.as_ref().map(|p| opt(&p.argmin_source)).unwrap_or_default(),
            pp.as_ref().map(|p| opt(&p.argmax_abs)).unwrap_or_default(),
            pp.as_ref().map(|p| opt(&p.argmax_abs_source)).unwrap_or_default(),
        ]);
        results.push(json!({ "analysis": a, "prediction": p }));
    }
    Ok(Output {
        command: "analyze",
        parameters: params(&[("scheme", Some(scheme.to_string()))]),
        results: Value::Array(results),
        status: if ok { "ok" } else { "prediction-mismatch" }.into(),
        exit: if ok { 0 } else { 1 },
        pretty,
        csv,
    })
}

fn verify_list() -> Res<Output> {
    let cat = catalog();
    let mut pretty = String::new();
    let mut csv = vec![["id", "family", "kind", "probe", "default_box"].map(String::from).to_vec()];
    for t in cat {
        let fam = t.family.map_or("classical", |f| f.name());
        writeln!(pretty, "{:<18} {:<11} {:<12} {}", t.id, fam, format!("{:?}", t.kind).to_lowercase(), t.default_box).unwrap();
        csv.push(vec![t.id.into(), fam.into(), format!("{:?}", t.kind).to_lowercase(), t.probe.to_string(), t.default_box.into()]);
    }
    Ok(Output {
        command: "verify",
        parameters: params(&[("list", Some("true".into()))]),
        results: to_value(&cat),
        status: "ok".into(),
        exit: 0,
        pretty,
        csv,
    })
}

fn verify_pretty(r: &VerificationReport) -> String {
    let mut s = String::new();
    writeln!(s, "{} ({:?}{}) over {}", r.theorem_id, r.kind, if r.probe { ", probe" } else { "" }, r.param_box).unwrap();
    writeln!(s, "  status:     {}", r.status.as_str()).unwrap();
    writeln!(s, "  instances:  {} ({} skipped), {} checks", r.instances, r.skipped, r.checked).unwrap();
    let mut list = |name: &str, xs: &[scheme_spectra::extremal::Tuple], total: Option<u64>| {
        if xs.is_empty() {
            return;
        }
        match total {
            Some(t) if t as usize > xs.len() => writeln!(s, "  {name} ({t}, first {} shown):", xs.len()).unwrap(),
            _ => writeln!(s, "  {name} ({}):", xs.len()).unwrap(),
        }
        for t in xs {
            writeln!(s, "    {} j={} i={} [{}] {}", t.instance, opt(&t.j), opt(&t.i), t.part, t.detail).unwrap();
        }
    };
    list("counterexamples", &r.counterexamples, Some(r.counterexample_count));
    list("listed exceptions", &r.exceptions, None);
    list("observations", &r.observations, None);
    s
}

fn verify(id: &str, bx: Option<&str>, timing: bool) -> Res<Output> {
    let info = theorem_info(id)?;
    let bx = parse_box(bx.unwrap_or(info.default_box))?;
    let mut r = verify_theorem(info.id, &bx)?;
    if !timing {
        r.elapsed_ms = None;
    }
    let mut csv = vec![["outcome", "instance", "j", "i", "part", "detail"].map(String::from).to_vec()];
    for (kind, xs) in [("counterexample", &r.counterexamples), ("listed-exception", &r.exceptions), ("observation", &r.observations)] {
        for t in xs {
            csv.push(vec![kind.into(), t.instance.clone(), opt(&t.j), opt(&t.i), t.part.clone(), t.detail.clone()]);
        }
    }
    Ok(Output {
        command: "verify",
        parameters: params(&[("id", Some(info.id.to_string())), ("box", Some(bx.to_string()))]),
        status: r.status.as_str().into(),
        exit: if r.status.is_ok() { 0 } else { 1 },
        pretty: verify_pretty(&r),
        results: to_value(&r),
        csv,
    })
}

fn scan(bx: Option<&str>, min: usize, max: Option<usize>) -> Res<Output> {
    let boxes: Vec<ParamBox> = match bx {
        Some(b) => vec![parse_box(b)?],
        None => TABLE_BOXES.iter().map(|b| parse_box(b)).collect::<Res<_>>()?,
    };
    let window = CountWindow { min, max: max.unwrap_or(usize::MAX) };
    let mut rows = Vec::new();
    for b in &boxes {
        rows.extend(scan_coincidences(Family::Hamming, b, window)?);
    }
    let mut pretty = format!("{:>3} {:>3} {:>3} {:>8}  explanations\n", "d", "q", "j", "distinct");
    let mut csv = vec![["d", "q", "j", "distinct_count", "explanations"].map(String::from).to_vec()];
    for r in &rows {
        writeln!(pretty, "{:>3} {:>3} {:>3} {:>8}  {}", r.d, r.q, r.j, r.distinct_count, r.labels().join(", ")).unwrap();
        csv.push(vec![r.d.to_string(), r.q.to_string(), r.j.to_string(), r.distinct_count.to_string(), r.labels().join(";")]);
    }
    Ok(Output {
        command: "scan",
        parameters: params(&[
            ("box", Some(join(&boxes, " + "))),
            ("min", Some(min.to_string())),
            ("max", max.map(|m| m.to_string())),
        ]),
        results: to_value(&rows),
        status: "ok".into(),
        exit: 0,
        pretty,
        csv,
    })
}

fn zeros(q: u32, d_max: u32) -> Res<Output> {
    let z = krawtchouk_zero_scan(q, d_max)?;
    let ok = z.all_hold();
    let mut pretty = format!("K_j(i) = 0 with 1 <= i, j <= d/2, d <= {d_max}: {} zeros\n", z.zeros.len());
    for (d, j, i) in &z.zeros {
        writeln!(pretty, "  d={d:<4} j={j:<4} i={i}").unwrap();
    }
    writeln!(pretty, "partner zeros K_j(d-i) = 0: {}", z.symmetric).unwrap();
    for p in &z.parts {
        writeln!(pretty, "part ({}): {}", p.part, if p.holds { "holds" } else { "FAILS" }).unwrap();
        for m in &p.mismatches {
            writeln!(pretty, "    {m}").unwrap();
        }
        let trivial = p.literal_mismatches.len() - p.mismatches.len();
        if trivial > 0 {
            writeln!(pretty, "    ({trivial} trivial zeros outside the literal statement)").unwrap();
        }
    }
    let mut csv = vec![["d", "j", "i"].map(String::from).to_vec()];
    csv.extend(z.zeros.iter().map(|(d, j, i)| vec![d.to_string(), j.to_string(), i.to_string()]));
    Ok(Output {
        command: "zeros",
        parameters: params(&[("q", Some(q.to_string())), ("d_max", Some(d_max.to_string()))]),
        results: to_value(&z),
        status: if ok { "ok" } else { "mismatch" }.into(),
        exit: if ok { 0 } else { 1 },
        pretty,
        csv,
    })
}

fn q0(d: u32) -> Res<Output> {
    let v = q0_threshold(d)?;
    Ok(Output {
        command: "q0",
        parameters: params(&[("d", Some(d.to_string()))]),
        results: json!({ "d": d, "q0": v }),
        status: "ok".into(),
        exit: 0,
        pretty: format!("q0({d}) = {v}\n"),
        csv: vec![vec!["d".into(), "q0".into()], vec![d.to_string(), v.to_string()]],
    })
}

fn bounds_list() -> Res<Output> {
    let ids = bound_lemma_ids();
    let mut pretty = String::new();
    let mut csv = vec![vec!["id".to_string(), "default_box".into()]];
    for (id, bx) in ids {
        writeln!(pretty, "{id:<14} {bx}").unwrap();
        csv.push(vec![id.to_string(), bx.to_string()]);
    }
    let results: Vec<Value> = ids.iter().map(|(id, bx)| json!({ "id": id, "default_box": bx })).collect();
    Ok(Output {
        command: "bounds",
        parameters: params(&[("list", Some("true".into()))]),
        results: Value::Array(results),
        status: "ok".into(),
        exit: 0,
        pretty,
        csv,
    })
}

fn check_rows(r: &BoundReport) -> Vec<Vec<String>> {
    r.checks
        .iter()
        .map(|c| vec![r.params.to_string(), c.name.clone(), c.lhs.to_string(), c.relation.clone(), c.rhs.to_string(), c.holds.to_string()])
        .collect()
}

fn bounds(id: &str, p: Option<&str>, bx: Option<&str>) -> Res<Output> {
    let header = ["params", "check", "lhs", "relation", "rhs", "holds"].map(String::from).to_vec();
    if let Some(p) = p {
        let lp = p.parse()?;
        let r = check_bound_lemma(id, &lp)?;
        let mut pretty = format!("{} at {}\n", r.lemma_id, r.params);
        if let Some(t) = &r.main_term {
            writeln!(pretty, "  main term: {t}").unwrap();
        }
        for (k, v) in &r.aux {
            writeln!(pretty, "  {k} = {v}").unwrap();
        }
        for c in &r.checks {
            writeln!(pretty, "  [{}] {} {} {}  {}", c.name, c.lhs, c.relation, c.rhs, if c.holds { "holds" } else { "FAILS" }).unwrap();
        }
        let mut csv = vec![header];
        csv.extend(check_rows(&r));
        return Ok(Output {
            command: "bounds",
            parameters: params(&[("id", Some(r.lemma_id.clone())), ("params", Some(r.params.to_string()))]),
            status: if r.holds { "holds" } else { "violated" }.into(),
            exit: if r.holds { 0 } else { 1 },
            results: to_value(&r),
            pretty,
            csv,
        });
    }
    let uid = id.to_ascii_uppercase();
    let default = bound_lemma_ids()
        .iter()
        .find(|(l, _)| *l == uid)
        .map(|(_, b)| *b)
        .ok_or_else(|| Failure::Usage(format!("unknown lemma id {id:?}")))?;
    let bx = parse_box(bx.unwrap_or(default))?;
    let s = sweep_bound_lemma(&uid, &bx)?;
    let mut pretty = format!("{} over {}\n", s.lemma_id, s.param_box);
    writeln!(pretty, "  {} instances checked, {} outside the hypotheses", s.checked, s.skipped).unwrap();
    writeln!(pretty, "  violations: {}", s.violation_count).unwrap();
    let mut csv = vec![header];
    for v in &s.violations {
        for c in v.checks.iter().filter(|c| !c.holds) {
            writeln!(pretty, "    {} [{}] {} {} {}", v.params, c.name, c.lhs, c.relation, c.rhs).unwrap();
        }
        csv.extend(check_rows(v).into_iter().filter(|r| r[5] == "false"));
    }
    Ok(Output {
        command: "bounds",
        parameters: params(&[("id", Some(s.lemma_id.clone())), ("box", Some(s.param_box.clone()))]),
        status: if s.holds { "holds" } else { "violated" }.into(),
        exit: if s.holds { 0 } else { 1 },
        results: to_value(&s),
        pretty,
        csv,
    })
}

fn identities(s: &str) -> Res<Output> {
    let scheme = parse_scheme(s)?;
    let r = identity_suite(&scheme);
    let ok = r.all_passed();
    let mut pretty = format!("identities for {scheme}\n");
    let mut csv = vec![["id", "checked", "passed", "first_failure"].map(String::from).to_vec()];
    for t in &r.results {
        writeln!(pretty, "  {:<14} {:>6} checks  {}  {}", t.id, t.checked, if t.passed { "ok  " } else { "FAIL" }, t.description).unwrap();
        if let Some(f) = &t.first_failure {
            writeln!(pretty, "      first failure: {f}").unwrap();
        }
        csv.push(vec![t.id.clone(), t.checked.to_string(), t.passed.to_string(), t.first_failure.clone().unwrap_or_default()]);
    }
    Ok(Output {
        command: "identities",
        parameters: params(&[("scheme", Some(scheme.to_string()))]),
        results: to_value(&r),
        status: if ok { "ok" } else { "failed" }.into(),
        exit: if ok { 0 } else { 1 },
        pretty,
        csv,
    })
}
