//! Scanner results checked against brute-force graphs on small Hamming schemes.

use std::collections::VecDeque;

use num_bigint::BigInt;
use scheme_spectra::extremal::ParamBox;
use scheme_spectra::scanner::{
    connected_components, krawtchouk_zero_scan, scan_coincidences, srg_params, CountWindow,
};
use scheme_spectra::{Family, SchemeId};

fn words(d: u32, q: u32) -> Vec<Vec<u32>> {
    let n = q.pow(d);
    (0..n)
        .map(|mut x| {
            (0..d)
                .map(|_| {
                    let r = x % q;
                    x /= q;
                    r
                })
                .collect()
        })
        .collect()
}

fn dist(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

fn brute_components(d: u32, q: u32, j: usize) -> usize {
    let w = words(d, q);
    let mut seen = vec![false; w.len()];
    let mut count = 0;
    for s in 0..w.len() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..w.len() {
                if !seen[v] && dist(&w[u], &w[v]) == j {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    count
}

#[test]
fn components_match_breadth_first_search() {
    for (d, q) in [(2, 2), (3, 2), (4, 2), (5, 2), (6, 2), (2, 3), (3, 3), (4, 3), (2, 4), (3, 4)] {
        let s = SchemeId::hamming(d, q).unwrap();
        for j in 1..=d as usize {
            assert_eq!(
                connected_components(&s, j).unwrap(),
                BigInt::from(brute_components(d, q, j)),
                "H({d},{q},{j})"
            );
        }
    }
}

// lambda and mu counted directly on the distance-j graph.
fn brute_srg(d: u32, q: u32, j: usize) -> (usize, usize, usize, usize) {
    let w = words(d, q);
    let adj = |a: usize, b: usize| dist(&w[a], &w[b]) == j;
    let k = (1..w.len()).filter(|&b| adj(0, b)).count();
    let (mut lambda, mut mu) = (None, None);
    for b in 1..w.len() {
        let common = (1..w.len()).filter(|&c| c != b && adj(0, c) && adj(b, c)).count();
        let slot = if adj(0, b) { &mut lambda } else { &mut mu };
        match *slot {
            None => *slot = Some(common),
            Some(x) => assert_eq!(x, common, "H({d},{q},{j}) is not strongly regular"),
        }
    }
    (w.len(), k, lambda.unwrap(), mu.unwrap())
}

#[test]
fn srg_parameters_match_counting() {
    for (d, q, j) in [(4, 3, 2), (4, 3, 3), (3, 4, 2)] {
        let (v, k, l, m) = brute_srg(d, q, j);
        let p = srg_params(&SchemeId::hamming(d, q).unwrap(), j).unwrap().unwrap();
        assert_eq!(p.to_string(), format!("({v},{k},{l},{m})"));
    }
}

#[test]
fn three_value_columns_in_small_box() {
    let bx: ParamBox = "q=2..4,d=1..7".parse().unwrap();
    let rows = scan_coincidences(Family::Hamming, &bx, CountWindow::THREE).unwrap();
    let got: Vec<(usize, usize, usize)> = rows.iter().map(|r| (r.d as usize, r.q as usize, r.j)).collect();
    // d = 2 columns have three values by definition; list the rest.
    let rest: Vec<_> = got.into_iter().filter(|&(d, _, _)| d > 2).collect();
    assert_eq!(rest, [(4, 2, 2), (5, 2, 2), (5, 2, 4), (7, 2, 4), (4, 3, 2), (4, 3, 3), (3, 4, 2)]);
}

#[test]
fn binary_zeros_match_direct_evaluation() {
    let scan = krawtchouk_zero_scan(2, 24).unwrap();
    let mut want = Vec::new();
    for d in 1..=24i64 {
        for j in 1..=d / 2 {
            for i in 0..=d / 2 {
                let v: i128 = (0..=j)
                    .map(|h| {
                        let s = if h % 2 == 0 { 1 } else { -1 };
                        s * binom(i, h) * binom(d - i, j - h)
                    })
                    .sum();
                if v == 0 {
                    want.push((d as u32, i as u32, j as u32));
                }
            }
        }
    }
    want.sort();
    let mut got = scan.zeros.clone();
    got.sort();
    assert_eq!(got, want);
}

fn binom(n: i64, k: i64) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, t| acc * (n - t) as i128 / (t + 1) as i128)
}
