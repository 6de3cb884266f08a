//! Column-level extremal analysis, the theorem registry and its verifier,
//! bound-lemma checkers, and threshold searches.

mod bounds;
mod params;
mod registry;
mod theorems;
mod thresholds;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::HalfInt;
use crate::schemes::{scheme_p_matrix, SchemeId};

pub use bounds::{bound_lemma_ids, check_bound_lemma, chvatal_concentration_check, sweep_bound_lemma, BoundCheck, BoundReport, BoundSweep, LemmaParams};
pub use params::{BoxValues, Enumerated, Instance, ParamBox};
pub use registry::{catalog, theorem_info, verify_theorem, verify_theorem_default, Kind, Status, TheoremInfo, Tuple, VerificationReport};
pub use thresholds::{hamming_matrix_fast, largebeta_onset, q0_threshold, BetaRow, LargeBetaReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn of(x: &BigInt) -> Sign {
        match crate::exact::sign(x) {
            1 => Sign::Plus,
            0 => Sign::Zero,
            _ => Sign::Minus,
        }
    }
}

/// Exact extremal data of one column `P_{.j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnAnalysis {
    pub scheme: SchemeId,
    pub j: usize,
    #[serde(with = "crate::report::bigint_vec")]
    pub values: Vec<BigInt>,
    #[serde(with = "crate::report::bigint_str")]
    pub min_value: BigInt,
    pub argmin_set: Vec<usize>,
    /// Largest `|P_ij|` over `1 <= i <= d`.
    #[serde(with = "crate::report::bigint_str")]
    pub max_abs_tail: BigInt,
    pub argmax_abs_set: Vec<usize>,
    pub sign_vector: Vec<Sign>,
    pub distinct_count: usize,
}

impl ColumnAnalysis {
    pub fn from_values(scheme: SchemeId, j: usize, values: Vec<BigInt>) -> Self {
        let min_value = values.iter().min().expect("nonempty column").clone();
        let argmin_set = positions(&values, |v| *v == min_value);
        let max_abs_tail = values[1..].iter().map(|v| v.abs()).max().expect("d >= 1");
        let argmax_abs_set: Vec<usize> = positions(&values, |v| v.abs() == max_abs_tail)
            .into_iter()
            .filter(|&i| i >= 1)
            .collect();
        let sign_vector = values.iter().map(Sign::of).collect();
        let distinct_count = values.iter().collect::<BTreeSet<_>>().len();
        ColumnAnalysis {
            scheme,
            j,
            values,
            min_value,
            argmin_set,
            max_abs_tail,
            argmax_abs_set,
            sign_vector,
            distinct_count,
        }
    }
}

fn positions(values: &[BigInt], pred: impl Fn(&BigInt) -> bool) -> Vec<usize> {
    values.iter().enumerate().filter(|(_, v)| pred(v)).map(|(i, _)| i).collect()
}

/// Analyzes column `j` of the scheme's eigenmatrix.
pub fn analyze_column(scheme: &SchemeId, j: usize) -> Result<ColumnAnalysis> {
    let d = scheme.diameter();
    if j > d {
        return Err(Error::Domain(format!("{scheme}: column {j} outside 0..={d}")));
    }
    let p = scheme_p_matrix(scheme)?;
    Ok(ColumnAnalysis::from_values(*scheme, j, p.column(j)))
}

/// A predicted extremal index with the result it comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub scheme: SchemeId,
    pub j: usize,
    /// Predicted index of the smallest entry of the column.
    pub argmin: Option<usize>,
    pub argmin_source: Option<String>,
    /// Predicted index of the largest absolute value over `i >= 1`.
    pub argmax_abs: Option<usize>,
    pub argmax_abs_source: Option<String>,
    /// True when every prediction made rests on a conjecture only.
    pub conjectural: bool,
}

impl Prediction {
    pub fn is_empty(&self) -> bool {
        self.argmin.is_none() && self.argmax_abs.is_none()
    }
}

pub(crate) fn is_conjecture_id(id: &str) -> bool {
    id.contains("CONJ") || id.contains("REMARK")
}

/// Predicts the extremal indices of column `j` from the registered
/// results. Returns `None` when no result applies.
pub fn predict_extremal(scheme: &SchemeId, j: usize) -> Option<Prediction> {
    let d = scheme.diameter();
    if j == 0 || j > d {
        return None;
    }
    let (argmin, argmax) = predict_raw(scheme, j as i64, d as i64);
    let p = Prediction {
        scheme: *scheme,
        j,
        argmin: argmin.as_ref().map(|(i, _)| *i),
        argmin_source: argmin.as_ref().map(|(_, s)| s.to_string()),
        argmax_abs: argmax.as_ref().map(|(i, _)| *i),
        argmax_abs_source: argmax.as_ref().map(|(_, s)| s.to_string()),
        conjectural: argmin.iter().chain(argmax.iter()).all(|(_, s)| is_conjecture_id(s)),
    };
    (!p.is_empty()).then_some(p)
}

type Pick = Option<(usize, &'static str)>;

fn at(i: i64, id: &'static str) -> Pick {
    Some((i as usize, id))
}

fn predict_raw(scheme: &SchemeId, j: i64, d: i64) -> (Pick, Pick) {
    match *scheme {
        SchemeId::Hamming { q, .. } => {
            let q = q as i64;
            let high = q * j >= q * d - d + 1;
            let argmin = if q == 2 && 2 * j >= d + 1 && (j % 2 == 0 || j == d) {
                at(1, "H-COR-BINARY")
            } else if q >= 3 && high {
                at(1, "H-THM-NONBINARY")
            } else if 4 * q > d * d + 4 {
                at(d - j + 1, "H-LEM-QBIG")
            } else {
                None
            };
            let argmax = if q >= 3 && high && (q, d, j) != (3, 4, 3) {
                at(1, "H-THM-NONBINARY")
            } else {
                None
            };
            (argmin, argmax)
        }
        SchemeId::Johnson { n, .. } => {
            let (n, e) = (n as i64, n as i64 - d);
            if n == 2 * d && 2 * j > d {
                (at(1, "J-COR-KARLOFF"), at(1, "J-COR-KARLOFF"))
            } else if j == d {
                (at(1, "J-PROP-D"), at(1, "J-PROP-D"))
            } else if j * (n - 1) >= d * e {
                (at(1, "J-THM-SMALLEST"), at(1, "J-THM-SMALLEST"))
            } else {
                (None, None)
            }
        }
        SchemeId::Grassmann { q, n, .. } => {
            let n = n as i64;
            let argmin = if j == d {
                at(1, "G-PROP-ABS")
            } else if q >= 3 || n > 2 * d {
                at(d - j + 1, "G-THM-SMALLEST-I")
            } else if (7..=d - 5).contains(&j) {
                at(d - j, "G-THM-SMALLEST-II")
            } else if d >= 6 && (3..=d - 2).contains(&j) {
                at(d - j, "G-CONJ-II")
            } else {
                None
            };
            (argmin, at(1, "G-PROP-ABS"))
        }
        SchemeId::DualPolar { q, e, .. } => {
            let argmin = if d >= 3 && j < d && j % 2 == 1 {
                at(d, "C-COR-SMALLEST")
            } else {
                dualpolar_imin(q, d, e, j).map(|i| (i as usize, "C-CONJ-IMIN"))
            };
            let argmax = if d < 3 {
                None
            } else if e.twice() > 2 || (j == d && e.twice() == 2) {
                at(1, "C-COR-SMALLEST")
            } else {
                at(d, "C-COR-SMALLEST")
            };
            (argmin, argmax)
        }
        SchemeId::Bilinear { q, e, .. } => {
            let argmin = if j == d {
                at(1, "B-PROP-NEG")
            } else if q >= 4 {
                at(d - j + 1, "B-SIGN")
            } else if q >= 3 || d != e as i64 {
                at(d - j + 1, "B-CONJ")
            } else {
                None
            };
            let argmax = if j == d {
                at(1, "B-PROP-NEG")
            } else if q >= 4 {
                at(1, "B-THM-Q4")
            } else {
                None
            };
            (argmin, argmax)
        }
        SchemeId::Alternating { q, n } => {
            let argmax = if (q, n, j) == (2, 4, 1) { at(2, "A-THM-iii") } else { at(1, "A-THM") };
            (at(d - j + 1, "A-THM"), argmax)
        }
        SchemeId::Hermitian { q, .. } => {
            let (argmin, argmax) = if q >= 4 {
                let m = if j % 2 == 1 { at(1, "Q-THM-ii") } else { at(d - j + 2, "Q-THM-iii") };
                (m, if d >= 3 { at(1, "Q-THM-i") } else { None })
            } else {
                let m = if j % 2 == 1 { at(1, "Q-CONJ-1") } else { at(d - j + 2, "Q-CONJ-1") };
                (m, if d >= 3 { at(1, "Q-CONJ-2") } else { None })
            };
            (argmin, argmax)
        }
    }
}

/// The conjectured index of the smallest entry of a dual polar column,
/// `None` in the exceptional region where no value is stated.
pub(crate) fn dualpolar_imin(q: u32, d: i64, e: HalfInt, j: i64) -> Option<i64> {
    let t = e.twice();
    let (je, de) = (j % 2 == 0, d % 2 == 0);
    if q == 2 && t == 4 && de && j >= d - 4 && j < d {
        return match j {
            _ if j == d - 2 && d >= 6 => Some(2),
            _ if j == d - 4 && d >= 14 => Some(3),
            _ => None,
        };
    }
    if j == d && (je || t >= 2) {
        Some(1)
    } else if !je && (j < d || t <= 2) {
        Some(d)
    } else if je && t == 0 {
        Some((d - j + 2) / 2)
    } else if je && (t == 1 || t == 2) {
        Some(if de { (d - j + 2) / 2 } else { (d + j - 1) / 2 })
    } else if je && (t == 3 || t == 4) {
        Some(if de { (d + j) / 2 } else { (d - j + 3) / 2 })
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::{default_grid, Family};

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn hamming_4_3_column_3() {
        let a = analyze_column(&SchemeId::Hamming { d: 4, q: 3 }, 3).unwrap();
        assert_eq!(a.min_value, bi(-4));
        assert_eq!(a.argmin_set, vec![1, 2, 4]);
        assert_eq!(a.max_abs_tail, bi(5));
        assert_eq!(a.argmax_abs_set, vec![3]);
        assert_eq!(a.distinct_count, 3);
    }

    #[test]
    fn johnson_8_3_column_3() {
        let a = analyze_column(&SchemeId::Johnson { n: 8, d: 3 }, 3).unwrap();
        assert_eq!(a.min_value, bi(-6));
        assert_eq!(a.argmin_set, vec![1]);
    }

    #[test]
    fn column_zero_is_trivial() {
        for s in default_grid(Family::Bilinear) {
            let a = analyze_column(&s, 0).unwrap();
            assert!(a.values.iter().all(|v| *v == bi(1)));
            assert_eq!(a.distinct_count, 1);
            assert_eq!(a.sign_vector[0], Sign::Plus);
        }
        assert!(analyze_column(&SchemeId::Hamming { d: 2, q: 2 }, 3).is_err());
    }

    #[test]
    fn documented_predictions() {
        let p = predict_extremal(&SchemeId::Johnson { n: 10, d: 5 }, 3).unwrap();
        assert_eq!((p.argmin, p.argmin_source.as_deref()), (Some(1), Some("J-COR-KARLOFF")));
        let p = predict_extremal(&SchemeId::Hermitian { q: 4, d: 5 }, 2).unwrap();
        assert_eq!((p.argmin, p.argmin_source.as_deref()), (Some(5), Some("Q-THM-iii")));
        let p = predict_extremal(&SchemeId::Hamming { d: 7, q: 3 }, 5).unwrap();
        assert_eq!((p.argmin, p.argmin_source.as_deref()), (Some(1), Some("H-THM-NONBINARY")));
        assert!(predict_extremal(&SchemeId::Hamming { d: 7, q: 3 }, 2).is_none());
        let p = predict_extremal(&SchemeId::Hermitian { q: 2, d: 4 }, 2).unwrap();
        assert!(p.conjectural);
    }

    #[test]
    fn predictions_land_in_argmin_sets() {
        for fam in Family::ALL {
            for s in default_grid(fam) {
                for j in 1..=s.diameter() {
                    let Some(p) = predict_extremal(&s, j) else { continue };
                    let a = analyze_column(&s, j).unwrap();
                    if let Some(i) = p.argmin {
                        assert!(a.argmin_set.contains(&i), "{s} j={j}: {p:?} vs {:?}", a.argmin_set);
                    }
                    if let Some(i) = p.argmax_abs {
                        assert!(a.argmax_abs_set.contains(&i), "{s} j={j}: {p:?} vs {:?}", a.argmax_abs_set);
                    }
                }
            }
        }
    }
}
