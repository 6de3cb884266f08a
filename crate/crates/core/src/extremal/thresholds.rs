//! Threshold searches: the Hamming `q0(d)` table and the onset of the
//! large-beta behaviour for classical parameters.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::schemes::{intersection_numbers, p_matrix_recurrence_unchecked, ClassicalParams, EigenMatrix};

use super::theorems::{largebeta_flags, View};

/// Hamming eigenmatrix from the three-term recurrence in `j`:
/// `(j+1) K_{j+1}(i) = ((q-1)(d-j) + j - q i) K_j(i) - (q-1)(d-j+1) K_{j-1}(i)`.
pub fn hamming_matrix_fast(d: u32, q: u32) -> Result<EigenMatrix> {
    if d < 1 || q < 2 {
        return Err(Error::Domain(format!("hamming needs d >= 1 and q >= 2, got d={d}, q={q}")));
    }
    let (d, q) = (d as i64, q as i64);
    let rows = (0..=d)
        .map(|i| {
            let mut row = Vec::with_capacity(d as usize + 1);
            row.push(BigInt::one());
            row.push(BigInt::from((q - 1) * d - q * i));
            for j in 1..d {
                let a = BigInt::from((q - 1) * (d - j) + j - q * i) * &row[j as usize];
                let b = BigInt::from((q - 1) * (d - j + 1)) * &row[j as usize - 1];
                row.push((a - b) / (j + 1));
            }
            row.truncate(d as usize + 1);
            row
        })
        .collect();
    EigenMatrix::from_rows(rows)
}

fn unique_min_at_pivot(m: &EigenMatrix) -> bool {
    let d = m.d();
    (1..=d).all(|j| {
        let k = d - j + 1;
        let v = m.get(k, j);
        (0..=d).all(|i| i == k || m.get(i, j) > v)
    })
}

/// Least `q0` such that for every `q >= q0` each column `j >= 1` of the
/// Hamming eigenmatrix has its unique minimum in row `d-j+1`.
///
/// Above `d^2/4 + 1` the pattern is proven, so the scan starts at
/// `floor(d^2/4) + 2` and walks down to the first failure.
pub fn q0_threshold(d: u32) -> Result<u32> {
    if !(2..=100).contains(&d) {
        return Err(Error::Usage(format!("q0 is tabulated for 2 <= d <= 100, got d={d}")));
    }
    let top = d * d / 4 + 2;
    let qs: Vec<u32> = (2..=top).rev().collect();
    for chunk in qs.chunks(32) {
        let ok = par::map(chunk, |&q| hamming_matrix_fast(d, q).map(|m| unique_min_at_pivot(&m)));
        for (q, ok) in chunk.iter().zip(ok) {
            if !ok? {
                return Ok(q + 1);
            }
        }
    }
    Ok(2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaRow {
    pub beta: i64,
    /// Intersection numbers are those of an actual graph.
    pub valid: bool,
    pub note: Option<String>,
    /// Sign pattern `(i)`.
    pub i: Option<bool>,
    /// Column minima in row `d-j+1`, `(ii)`.
    pub ii: Option<bool>,
    pub ii_unique: Option<bool>,
    /// Strict decrease of absolute values down each column, `(iii)`.
    pub iii: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LargeBetaReport {
    pub d: u32,
    pub b: i64,
    pub alpha: i64,
    pub rows: Vec<BetaRow>,
    /// Per conclusion, the least beta in the range from which it holds for
    /// every computed beta up to the end of the range.
    pub onsets: BTreeMap<String, Option<i64>>,
}

/// Evaluates the three large-beta conclusions for each beta in `betas`.
pub fn largebeta_onset(d: u32, b: i64, alpha: i64, betas: &[i64]) -> Result<LargeBetaReport> {
    let rows: Vec<Result<BetaRow>> = par::map(betas, |&beta| {
        let cp = ClassicalParams::from_i64(d, b, alpha, beta)?;
        let valid = intersection_numbers(&cp).is_ok();
        Ok(match p_matrix_recurrence_unchecked(&cp) {
            Ok(m) => {
                let (i, ii, iiu, iii) = largebeta_flags(&View::new(&m));
                BetaRow { beta, valid, note: None, i: Some(i), ii: Some(ii), ii_unique: Some(iiu), iii: Some(iii) }
            }
            Err(e) => BetaRow { beta, valid, note: Some(e.to_string()), i: None, ii: None, ii_unique: None, iii: None },
        })
    });
    let mut rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| r.beta);
    let mut onsets = BTreeMap::new();
    let pick: [(&str, fn(&BetaRow) -> Option<bool>); 4] = [
        ("i", |r| r.i),
        ("ii", |r| r.ii),
        ("ii_unique", |r| r.ii_unique),
        ("iii", |r| r.iii),
    ];
    for (name, f) in pick {
        let mut onset = None;
        for r in rows.iter().rev() {
            match f(r) {
                Some(true) => onset = Some(r.beta),
                Some(false) => break,
                None => {}
            }
        }
        onsets.insert(name.to_string(), onset);
    }
    if rows.iter().all(|r| r.note.is_some()) && !rows.is_empty() {
        return Err(Error::InvalidParameters(format!(
            "no beta in the range gives an eigenmatrix: {}",
            rows[0].note.clone().unwrap_or_default()
        )));
    }
    Ok(LargeBetaReport { d, b, alpha, rows, onsets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::{scheme_p_matrix, SchemeId};

    #[test]
    fn fast_matches_reference() {
        for (d, q) in [(1, 2), (4, 3), (7, 2), (6, 5), (9, 4)] {
            let s = SchemeId::hamming(d, q).unwrap();
            assert_eq!(hamming_matrix_fast(d, q).unwrap(), scheme_p_matrix(&s).unwrap());
        }
    }

    #[test]
    fn q0_small_values() {
        let want = [(2, 2), (3, 3), (4, 4), (5, 5), (6, 7), (7, 9), (8, 12), (9, 15), (10, 18)];
        for (d, q0) in want {
            assert_eq!(q0_threshold(d).unwrap(), q0, "d={d}");
        }
        assert!(q0_threshold(1).is_err());
        assert!(q0_threshold(101).is_err());
    }

    #[test]
    fn johnson_onsets() {
        let betas: Vec<i64> = (5..=60).collect();
        let r = largebeta_onset(5, 1, 1, &betas).unwrap();
        assert_eq!(r.onsets["i"], Some(22));
        assert_eq!(r.onsets["iii"], Some(29));
    }
}
