//! Concordance grid over multiplicities and moduli values.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Field, Scalar};
use crate::arrangement::MultiArrangement;
use crate::derivation::decide_free_bruteforce;
use crate::error::{Error, Result};
use crate::x3::{classify_predicted, decide_free_homological, Prediction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleVerdict {
    Free,
    NotFree,
    Unknown,
    Skipped,
}

impl OracleVerdict {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            OracleVerdict::Free => Some(true),
            OracleVerdict::NotFree => Some(false),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanCell {
    pub alpha: Scalar,
    pub m: Vec<u32>,
    pub predicted: bool,
    pub homological: bool,
    pub bruteforce: OracleVerdict,
}

impl ScanCell {
    /// Whether any two definite verdicts differ.
    pub fn disagrees(&self) -> bool {
        self.predicted != self.homological || self.bruteforce.as_bool().is_some_and(|b| b != self.homological)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub field: Field,
    pub alphas: Vec<Scalar>,
    pub max_weight: u32,
    pub cells: usize,
    pub free_cells: Vec<ScanCell>,
    pub disagreements: Vec<ScanCell>,
    /// Cells where the brute-force oracle stayed inconclusive; never counted
    /// as agreement.
    pub unknown: Vec<ScanCell>,
}

/// All `m ∈ ℤ₊⁶` with `Σ mᵢ ≤ max_weight`, in lexicographic order.
pub fn multiplicities_up_to(max_weight: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, left: u32, out: &mut Vec<Vec<u32>>) {
        let slots = 6 - prefix.len() as u32;
        if slots == 0 {
            out.push(prefix.clone());
            return;
        }
        // leave at least 1 for each later slot
        for v in 1..=left.saturating_sub(slots - 1) {
            prefix.push(v);
            rec(prefix, left - v, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(6), max_weight, &mut out);
    out
}

/// Every `α` of a prime field other than 0 and 1.
pub fn nondegenerate_elements(field: Field) -> Option<Vec<Scalar>> {
    field.elements().map(|all| all.into_iter().filter(|a| !a.is_zero() && !a.is_one()).collect())
}

pub fn scan_cell(alpha: &Scalar, m: &[u32], bruteforce: bool) -> Result<ScanCell> {
    let predicted = classify_predicted(alpha, m)? == Prediction::Free;
    let homological = decide_free_homological(alpha, m)?.free;
    let bruteforce = if bruteforce {
        let a = MultiArrangement::x3(alpha)?.with_multiplicities(m)?;
        match decide_free_bruteforce(&a)?.as_bool() {
            Some(true) => OracleVerdict::Free,
            Some(false) => OracleVerdict::NotFree,
            None => OracleVerdict::Unknown,
        }
    } else {
        OracleVerdict::Skipped
    };
    Ok(ScanCell { alpha: alpha.clone(), m: m.to_vec(), predicted, homological, bruteforce })
}

/// Runs every cell concurrently; the report is ordered by `(α, m)` as given.
pub fn scan_grid(alphas: &[Scalar], max_weight: u32, bruteforce: bool) -> Result<ScanReport> {
    let field = alphas.first().map(Scalar::field).ok_or_else(|| Error::InvalidInput("no alpha values".into()))?;
    if alphas.iter().any(|a| a.field() != field) {
        return Err(Error::FieldMismatch("alpha values".into(), field.to_string()));
    }
    let ms = multiplicities_up_to(max_weight);
    let jobs: Vec<(&Scalar, &Vec<u32>)> = alphas.iter().flat_map(|a| ms.iter().map(move |m| (a, m))).collect();
    let cells: Vec<ScanCell> =
        jobs.par_iter().map(|(a, m)| scan_cell(a, m, bruteforce)).collect::<Result<Vec<_>>>()?;
    Ok(ScanReport {
        field,
        alphas: alphas.to_vec(),
        max_weight,
        cells: cells.len(),
        free_cells: cells.iter().filter(|c| c.homological).cloned().collect(),
        disagreements: cells.iter().filter(|c| c.disagrees()).cloned().collect(),
        unknown: cells.iter().filter(|c| c.bruteforce == OracleVerdict::Unknown).cloned().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_counts() {
        assert_eq!(multiplicities_up_to(5).len(), 0);
        assert_eq!(multiplicities_up_to(6), vec![vec![1; 6]]);
        assert_eq!(multiplicities_up_to(12).len(), 924);
    }

    #[test]
    fn small_scan_has_no_free_cells() {
        let q = Field::Rationals;
        let r = scan_grid(&[q.from_i64(-1), q.from_i64(2)], 8, true).unwrap();
        assert!(r.free_cells.is_empty());
        assert!(r.disagreements.is_empty());
        assert_eq!(r.cells, 2 * 28);
    }
}
