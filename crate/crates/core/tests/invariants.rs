//! Property tests against oracles written independently of the library.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::sample::select;

use scheme_spectra::extremal::analyze_column;
use scheme_spectra::scanner::{distinct_count, explain_coincidences};
use scheme_spectra::schemes::{default_grid, multiplicities, scheme_p_matrix, vertex_count};
use scheme_spectra::{Family, SchemeId};

fn c(n: i64, k: i64) -> i128 {
    if k < 0 || k > n || n < 0 {
        return 0;
    }
    (0..k).fold(1i128, |acc, t| acc * (n - t) as i128 / (t + 1) as i128)
}

fn krawtchouk(d: i64, q: i64, j: i64, i: i64) -> i128 {
    (0..=j)
        .map(|h| {
            let s = if h % 2 == 0 { 1 } else { -1 };
            s * (q as i128 - 1).pow((j - h) as u32) * c(i, h) * c(d - i, j - h)
        })
        .sum()
}

fn eberlein(n: i64, d: i64, j: i64, i: i64) -> i128 {
    (0..=j)
        .map(|h| {
            let s = if h % 2 == 0 { 1 } else { -1 };
            s * c(i, h) * c(d - i, j - h) * c(n - d - i, j - h)
        })
        .sum()
}

fn any_scheme() -> impl Strategy<Value = SchemeId> {
    let all: Vec<SchemeId> = Family::ALL.iter().flat_map(|&f| default_grid(f)).collect();
    select(all)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hamming_matches_direct_sum(d in 1u32..=12, q in 2u32..=9) {
        let p = scheme_p_matrix(&SchemeId::hamming(d, q).unwrap()).unwrap();
        for i in 0..=d as usize {
            for j in 0..=d as usize {
                prop_assert_eq!(p.get(i, j), &BigInt::from(krawtchouk(d as i64, q as i64, j as i64, i as i64)));
            }
        }
    }

    #[test]
    fn binary_krawtchouk_is_a_character_sum(d in 1u32..=8, i in 0u32..=8) {
        prop_assume!(i <= d);
        let p = scheme_p_matrix(&SchemeId::hamming(d, 2).unwrap()).unwrap();
        let x: u32 = (1 << i) - 1;
        let mut sums = vec![0i64; d as usize + 1];
        for y in 0u32..(1 << d) {
            sums[y.count_ones() as usize] += if (x & y).count_ones() % 2 == 0 { 1 } else { -1 };
        }
        for (j, s) in sums.iter().enumerate() {
            prop_assert_eq!(p.get(i as usize, j), &BigInt::from(*s));
        }
    }

    #[test]
    fn johnson_matches_direct_sum(n in 2u32..=30, d in 1u32..=15) {
        prop_assume!(2 * d <= n);
        let p = scheme_p_matrix(&SchemeId::johnson(n, d).unwrap()).unwrap();
        for i in 0..=d as usize {
            for j in 0..=d as usize {
                prop_assert_eq!(p.get(i, j), &BigInt::from(eberlein(n as i64, d as i64, j as i64, i as i64)));
            }
        }
    }

    // sum_j P_ij P_kj / k_j = delta_ik v / m_i
    #[test]
    fn rows_are_orthogonal(s in any_scheme()) {
        let p = scheme_p_matrix(&s).unwrap();
        let v = vertex_count(&s);
        let m = multiplicities(&s).unwrap();
        let k = p.valencies();
        let d = p.d();
        for i in 0..=d {
            for l in 0..=d {
                let mut acc = BigRational::zero();
                for j in 0..=d {
                    acc += BigRational::new(p.get(i, j) * p.get(l, j), k[j].clone());
                }
                let want = if i == l { BigRational::new(v.clone(), m[i].clone()) } else { BigRational::zero() };
                prop_assert_eq!(acc, want, "{} rows {} {}", s, i, l);
            }
        }
    }

    #[test]
    fn column_zero_and_valencies(s in any_scheme()) {
        let p = scheme_p_matrix(&s).unwrap();
        prop_assert!((0..=p.d()).all(|i| p.get(i, 0).is_one()));
        prop_assert!(p.valencies().iter().all(|k| k.is_positive()));
        prop_assert_eq!(p.valencies().iter().sum::<BigInt>(), vertex_count(&s));
        // |P_ij| <= k_j, with equality at i = 0
        for j in 0..=p.d() {
            prop_assert!((0..=p.d()).all(|i| p.get(i, j).abs() <= p.get(0, j).clone()));
        }
    }

    #[test]
    fn analysis_matches_brute_force(s in any_scheme(), jj in 0usize..16) {
        let j = jj % (s.diameter() + 1);
        let p = scheme_p_matrix(&s).unwrap();
        let a = analyze_column(&s, j).unwrap();
        let col = p.column(j);
        let min = col.iter().min().unwrap();
        let argmin: Vec<usize> = (0..col.len()).filter(|&i| &col[i] == min).collect();
        prop_assert_eq!(&a.min_value, min);
        prop_assert_eq!(a.argmin_set, argmin);
        let mut sorted = col.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(a.distinct_count, sorted.len());
        prop_assert_eq!(distinct_count(&s, j).unwrap(), sorted.len());
        if col.len() > 1 {
            let max = col[1..].iter().map(|x| x.abs()).max().unwrap();
            prop_assert_eq!(a.max_abs_tail, max);
        }
    }

    // Each explanation merges at least one new class, so a column with
    // coincidences always gets explanations and a clean one none.
    #[test]
    fn explanations_iff_coincidence(d in 1u32..=10, q in 2u32..=7, jj in 0usize..11) {
        let j = jj % (d as usize + 1);
        let row = explain_coincidences(d, q, j).unwrap();
        prop_assert_eq!(row.explanations.is_empty(), row.distinct_count == d as usize + 1);
        prop_assert!(row.explanations.len() <= d as usize + 1 - row.distinct_count);
    }
}
