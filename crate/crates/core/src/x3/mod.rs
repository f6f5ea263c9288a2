//! Freeness of multiplicities on the moduli arrangement
//! `X₃(α) = {x, y, z, x − αy, x + z, y + z}`.
//!
//! The triple points of `X₃(α)` are `Y₁ = {H₁, H₂, H₄}`, `Y₂ = {H₁, H₃, H₅}` and
//! `Y₃ = {H₂, H₃, H₆}`. `D(X₃, m)` is free exactly when the columns of a 3×6
//! matrix `M`, assembled from Hilbert–Burch matrices of the ideals
//! `J(Yᵢ) = Σ_{H ⊃ Yᵢ} α_H^{m(H)} S`, generate `S³`.

mod complex;
mod hilbert_burch;

use serde::Serialize;

use crate::algebra::{Field, Matrix, PolyRing, Polynomial, Scalar};
use crate::arrangement::{check_alpha, MultiArrangement};
use crate::derivation::Derivation;
use crate::error::{Error, Result};

pub use complex::{
    build_m, chain_complex, decide_free_homological, designated_minor, is_exact, m_matrix, verify_chain_exactness,
    FreenessWitness, HomologicalVerdict, MMatrix, X3ChainComplex, DESIGNATED_COLUMNS,
};
pub use hilbert_burch::{hilbert_burch, HilbertBurchMatrix, LinearPower};

/// Hyperplane indices (0-based) of the three triple points.
pub const TRIPLE_POINTS: [[usize; 3]; 3] = [[0, 1, 3], [0, 2, 4], [1, 2, 5]];

/// One triple-point ideal with its ordered generators.
#[derive(Clone, Debug)]
pub struct TriplePointIdeal {
    pub hyperplanes: [usize; 3],
    pub powers: [LinearPower; 3],
    pub generators: [Polynomial; 3],
}

pub fn check_multiplicity(m: &[u32]) -> Result<()> {
    if m.len() != 6 {
        return Err(Error::InvalidInput(format!("expected 6 multiplicities, got {}", m.len())));
    }
    if m.contains(&0) {
        return Err(Error::InvalidInput("multiplicities must be positive".into()));
    }
    Ok(())
}

/// `J(Y₁) = ⟨x^{m₁}, y^{m₂}, (x−αy)^{m₄}⟩`, `J(Y₂) = ⟨x^{m₁}, z^{m₃}, (x+z)^{m₅}⟩`,
/// `J(Y₃) = ⟨y^{m₂}, z^{m₃}, (y+z)^{m₆}⟩`, in this generator order.
pub fn triple_point_ideals(alpha: &Scalar, m: &[u32]) -> Result<[TriplePointIdeal; 3]> {
    check_multiplicity(m)?;
    let a = MultiArrangement::x3(alpha)?;
    let ideal = |hs: [usize; 3]| {
        let powers = hs.map(|h| LinearPower { form: a.form(h).to_vec(), power: m[h] });
        let generators = hs.map(|h| a.form_polynomial(h).pow(m[h]));
        TriplePointIdeal { hyperplanes: hs, powers, generators }
    };
    Ok(TRIPLE_POINTS.map(ideal))
}

/// Multiplicative order of `α`, if finite. Over ℚ only `±1` have finite order.
pub fn multiplicative_order(alpha: &Scalar) -> Option<u64> {
    if alpha.is_zero() {
        return None;
    }
    match alpha.field() {
        Field::Rationals => {
            if alpha.is_one() {
                Some(1)
            } else if (-alpha).is_one() {
                Some(2)
            } else {
                None
            }
        }
        Field::Prime(p) => {
            let group = p - 1;
            let mut order = group;
            let mut rest = group;
            let mut q = 2;
            while q * q <= rest {
                if rest % q == 0 {
                    while rest % q == 0 {
                        rest /= q;
                    }
                    while order % q == 0 && alpha.pow((order / q) as u32).is_one() {
                        order /= q;
                    }
                }
                q += 1;
            }
            if rest > 1 {
                while order % rest == 0 && alpha.pow((order / rest) as u32).is_one() {
                    order /= rest;
                }
            }
            Some(order)
        }
    }
}

/// `Some(n)` when `m = [n, n, n, 1, 1, 1]`.
pub fn balanced_n(m: &[u32]) -> Option<u32> {
    (m.len() == 6 && m[0] == m[1] && m[1] == m[2] && m[3..] == [1, 1, 1]).then_some(m[0])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Prediction {
    Free,
    NotFree,
}

/// The classification formula: free iff `m = [n,n,n,1,1,1]` with `n > 1`, and
/// `n ≢ 1 (mod ord α)` whenever `α` is a root of unity.
pub fn classify_predicted(alpha: &Scalar, m: &[u32]) -> Result<Prediction> {
    check_alpha(alpha)?;
    check_multiplicity(m)?;
    let free = match balanced_n(m) {
        Some(n) if n > 1 => match multiplicative_order(alpha) {
            None => true,
            Some(ord) => u64::from(n) % ord != 1 % ord,
        },
        _ => false,
    };
    Ok(if free { Prediction::Free } else { Prediction::NotFree })
}

/// Exponents `(n+1, n+1, n+1)` of a free balanced multiplicity.
pub fn predicted_exponents(m: &[u32]) -> Option<[u32; 3]> {
    balanced_n(m).map(|n| [n + 1; 3])
}

/// Basis of `D(X₃(−1), [2k,2k,2k,1,1,1])` over `field`:
/// `θ₁ = x^{2k+1}∂x + y^{2k+1}∂y + z^{2k+1}∂z`,
/// `θ₂ = (y+z)(x^{2k}∂x − y^{2k}∂y − z^{2k}∂z)`,
/// `θ₃ = x^{2k}z∂x − (x+y+z)y^{2k}∂y + xz^{2k}∂z`.
pub fn canonical_basis_in(field: Field, k: u32) -> Result<[Derivation; 3]> {
    if k < 1 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let ring = PolyRing::standard(field, 3)?;
    let e = 2 * k;
    let (x, y, z) = (ring.var(0), ring.var(1), ring.var(2));
    let yz = &y + &z;
    let xyz = &(&x + &y) + &z;
    let t1 = Derivation::new(vec![x.pow(e + 1), y.pow(e + 1), z.pow(e + 1)])?;
    let t2 = Derivation::new(vec![&yz * &x.pow(e), -(&yz * &y.pow(e)), -(&yz * &z.pow(e))])?;
    let t3 = Derivation::new(vec![&x.pow(e) * &z, -(&xyz * &y.pow(e)), &x * &z.pow(e)])?;
    Ok([t1, t2, t3])
}

pub fn canonical_basis(k: u32) -> Result<[Derivation; 3]> {
    canonical_basis_in(Field::Rationals, k)
}

/// The coefficient matrix of `X₃(α)` (rows are the forms).
pub fn coefficient_matrix(alpha: &Scalar) -> Result<Matrix<Scalar>> {
    Ok(Matrix::from_rows(MultiArrangement::x3(alpha)?.forms().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn ideals_keep_generator_order() {
        let ideals = triple_point_ideals(&Q.from_i64(-1), &[1; 6]).unwrap();
        let shown: Vec<Vec<String>> =
            ideals.iter().map(|j| j.generators.iter().map(|g| g.to_string()).collect()).collect();
        assert_eq!(shown, [["x", "y", "x + y"], ["x", "z", "x + z"], ["y", "z", "y + z"]]);
        let a = Q.from_i64(3);
        let ideals = triple_point_ideals(&a, &[2, 2, 1, 1, 1, 1]).unwrap();
        let shown: Vec<String> = ideals[0].generators.iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, ["x^2", "y^2", "x - 3*y"]);
        assert!(triple_point_ideals(&Q.one(), &[1; 6]).is_err());
        assert!(triple_point_ideals(&a, &[1; 5]).is_err());
    }

    #[test]
    fn orders() {
        let f7 = Field::Prime(7);
        assert_eq!(multiplicative_order(&f7.from_i64(2)), Some(3));
        assert_eq!(multiplicative_order(&f7.from_i64(3)), Some(6));
        assert_eq!(multiplicative_order(&f7.from_i64(6)), Some(2));
        assert_eq!(multiplicative_order(&Q.from_i64(-1)), Some(2));
        assert_eq!(multiplicative_order(&Q.from_i64(2)), None);
        assert_eq!(multiplicative_order(&Field::Prime(13).from_i64(3)), Some(3));
    }

    #[test]
    fn prediction_examples() {
        let f7 = Field::Prime(7);
        let two = f7.from_i64(2);
        assert_eq!(classify_predicted(&Q.from_i64(2), &[5, 5, 5, 1, 1, 1]).unwrap(), Prediction::Free);
        assert_eq!(classify_predicted(&two, &[4, 4, 4, 1, 1, 1]).unwrap(), Prediction::NotFree);
        assert_eq!(classify_predicted(&two, &[3, 3, 3, 1, 1, 1]).unwrap(), Prediction::Free);
        assert_eq!(classify_predicted(&Q.from_i64(-1), &[3, 3, 3, 1, 1, 1]).unwrap(), Prediction::NotFree);
        assert_eq!(classify_predicted(&Q.from_i64(5), &[1; 6]).unwrap(), Prediction::NotFree);
        assert!(matches!(classify_predicted(&Q.zero(), &[1; 6]), Err(Error::DegenerateAlpha(_))));
    }

    #[test]
    fn canonical_basis_degrees() {
        let [t1, t2, t3] = canonical_basis(2).unwrap();
        assert_eq!([t1.degree(), t2.degree(), t3.degree()], [Some(5); 3]);
        let [t1, ..] = canonical_basis(1).unwrap();
        assert_eq!(t1.to_string(), "(x^3)∂x + (y^3)∂y + (z^3)∂z");
        assert!(canonical_basis(0).is_err());
    }
}
