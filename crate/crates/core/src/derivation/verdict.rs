//! Brute-force freeness decision by scanning minimal generators.

use serde::Serialize;

use super::graded::Stepper;
use super::saito::{saito_check, SaitoOutcome};
use super::Derivation;
use crate::algebra::Scalar;
use crate::arrangement::MultiArrangement;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaitoCertificate {
    pub basis: Vec<Derivation>,
    pub exponents: Vec<u32>,
    /// `det = k · Q(A, m)`.
    pub k: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NotFreeWitness {
    /// More than `ℓ` minimal generators.
    TooManyGenerators { degrees: Vec<u32> },
    /// Exactly `ℓ` minimal generators, but they fail Saito's criterion.
    SaitoFailure { degrees: Vec<u32> },
    /// Fewer than `ℓ` generators up to `degree`, and even the cheapest
    /// completion would push the exponent sum past `|m|`.
    ExponentSumExceeded { degrees: Vec<u32>, degree: u32, total: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FreenessVerdict {
    Free(SaitoCertificate),
    NotFree(NotFreeWitness),
    UnknownUpToBound { bound: u32, degrees: Vec<u32> },
}

impl FreenessVerdict {
    pub fn is_free(&self) -> bool {
        matches!(self, FreenessVerdict::Free(_))
    }

    pub fn is_definite(&self) -> bool {
        !matches!(self, FreenessVerdict::UnknownUpToBound { .. })
    }

    /// `Some(true)` for free, `Some(false)` for not free, `None` if unknown.
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            FreenessVerdict::Free(_) => Some(true),
            FreenessVerdict::NotFree(_) => Some(false),
            FreenessVerdict::UnknownUpToBound { .. } => None,
        }
    }

    pub fn exponents(&self) -> Option<&[u32]> {
        match self {
            FreenessVerdict::Free(c) => Some(&c.exponents),
            _ => None,
        }
    }
}

/// Brute-force decision for rank-3 multi-arrangements, scanning degrees up
/// to `|m|`.
pub fn decide_free_bruteforce(a: &MultiArrangement) -> Result<FreenessVerdict> {
    if a.dim() != 3 || a.rank() != 3 {
        return Err(Error::InvalidInput(format!(
            "brute-force decision expects an essential rank-3 arrangement, got dimension {} and rank {}",
            a.dim(),
            a.rank()
        )));
    }
    decide_free_up_to(a, a.total_multiplicity())
}

/// Scans minimal generators degree by degree up to `bound`.
///
/// A free `D(A, m)` of rank `ℓ` has exactly `ℓ` minimal generators, they form
/// a basis, and their degrees sum to `|m|`. So the scan stops as soon as it
/// has `ℓ` generators (Saito decides), more than `ℓ` (not free), or when the
/// generators found so far plus `ℓ - k` generators of the next degree already
/// exceed `|m|` (not free).
pub fn decide_free_up_to(a: &MultiArrangement, bound: u32) -> Result<FreenessVerdict> {
    let ell = a.dim();
    let total = a.total_multiplicity();
    let mut stepper = Stepper::new(a);
    let mut gens: Vec<Derivation> = Vec::new();
    for _ in 0..=bound {
        let step = stepper.step();
        gens.extend(step.generators);
        let degrees: Vec<u32> = gens.iter().filter_map(Derivation::degree).collect();
        if gens.len() > ell {
            return Ok(FreenessVerdict::NotFree(NotFreeWitness::TooManyGenerators { degrees }));
        }
        if gens.len() == ell {
            return Ok(match saito_check(a, &gens)? {
                SaitoOutcome::Certified { k } => {
                    FreenessVerdict::Free(SaitoCertificate { basis: gens, exponents: degrees, k })
                }
                SaitoOutcome::Failed { .. } => FreenessVerdict::NotFree(NotFreeWitness::SaitoFailure { degrees }),
            });
        }
        let cheapest = degrees.iter().sum::<u32>() + (ell - gens.len()) as u32 * (step.degree + 1);
        if cheapest > total {
            return Ok(FreenessVerdict::NotFree(NotFreeWitness::ExponentSumExceeded {
                degrees,
                degree: step.degree,
                total,
            }));
        }
    }
    Ok(FreenessVerdict::UnknownUpToBound { bound, degrees: gens.iter().filter_map(Derivation::degree).collect() })
}
