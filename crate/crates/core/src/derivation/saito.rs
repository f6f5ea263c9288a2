use serde::Serialize;

use super::Derivation;
use crate::algebra::{Matrix, Polynomial, Scalar};
use crate::arrangement::MultiArrangement;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SaitoOutcome {
    /// `det = k · Q(A, m)` with `k ≠ 0`.
    Certified { k: Scalar },
    Failed { det: Polynomial },
}

impl SaitoOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, SaitoOutcome::Certified { .. })
    }
}

/// Saito's criterion: `ℓ` members of `D(A, m)` form a basis iff the
/// determinant of their coefficient matrix is a nonzero multiple of `Q(A, m)`.
/// Membership is checked first, so a failure always means the determinant test
/// failed.
pub fn saito_check(a: &MultiArrangement, candidates: &[Derivation]) -> Result<SaitoOutcome> {
    if candidates.len() != a.dim() {
        return Err(Error::Dimension(format!(
            "Saito's criterion needs {} derivations, got {}",
            a.dim(),
            candidates.len()
        )));
    }
    for (i, theta) in candidates.iter().enumerate() {
        if theta.ring() != &a.ring() {
            return Err(Error::VariableMismatch(theta.ring().vars().join(","), a.vars().join(",")));
        }
        if let Some(h) = theta.first_violation(a)? {
            return Err(Error::NotMember { candidate: i, hyperplane: h });
        }
    }
    let m = Matrix::from_rows(candidates.iter().map(|t| t.coeffs().to_vec()).collect());
    let det = m.det()?;
    let q = a.defining_polynomial();
    match det.scalar_ratio(&q) {
        Some(k) if !k.is_zero() => Ok(SaitoOutcome::Certified { k }),
        _ => Ok(SaitoOutcome::Failed { det }),
    }
}
