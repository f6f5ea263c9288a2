//! The relation complex of `X₃(α)`, the presentation matrix `M` and the
//! constant-minor freeness test.

use serde::Serialize;

use super::hilbert_burch::{hilbert_burch, serialize_matrix, HilbertBurchMatrix};
use super::{check_multiplicity, coefficient_matrix, predicted_exponents, triple_point_ideals};
use crate::algebra::{Field, Matrix, Polynomial, Scalar};
use crate::arrangement::check_alpha;
use crate::error::{Error, Result};

/// Scalar matrices of the relation complex.
#[derive(Clone, Debug)]
pub struct X3ChainComplex {
    /// 6×3 coefficient matrix.
    pub delta0: Matrix<Scalar>,
    /// 3×6 relations `H₁ − αH₂ − H₄`, `H₁ + H₃ − H₅`, `H₂ + H₃ − H₆`.
    pub delta1: Matrix<Scalar>,
    /// 9×6 lift, rows `[H,Y]` for `H ⊃ Y`, ordered
    /// `[H₁,Y₁],[H₂,Y₁],[H₄,Y₁],[H₁,Y₂],[H₃,Y₂],[H₅,Y₂],[H₂,Y₃],[H₃,Y₃],[H₆,Y₃]`.
    pub delta1_hat: Matrix<Scalar>,
    /// 3×9 projection onto the cokernel of `delta1_hat`, in the basis
    /// `[H₁,Y₁], [H₂,Y₁], [H₃,Y₂]`.
    pub projection: Matrix<Scalar>,
}

pub fn chain_complex(alpha: &Scalar) -> Result<X3ChainComplex> {
    check_alpha(alpha)?;
    let f = alpha.field();
    let s = |v: i64| f.from_i64(v);
    let na = -alpha;
    let delta0 = coefficient_matrix(alpha)?;
    let delta1 = Matrix::from_rows(vec![
        vec![s(1), na.clone(), s(0), s(-1), s(0), s(0)],
        vec![s(1), s(0), s(1), s(0), s(-1), s(0)],
        vec![s(0), s(1), s(1), s(0), s(0), s(-1)],
    ]);
    let mut hat = Matrix::zeros(f, 9, 6);
    for (r, c, v) in [(0, 0, s(1)), (1, 1, na), (2, 3, s(-1)), (3, 0, s(1)), (4, 2, s(1)), (5, 4, s(-1)), (6, 1, s(1)), (7, 2, s(1)), (8, 5, s(-1))] {
        hat.set(r, c, v);
    }
    let mut projection = Matrix::zeros(f, 3, 9);
    for (r, c, v) in [(0, 0, s(1)), (0, 3, s(-1)), (1, 1, s(1)), (1, 6, alpha.clone()), (2, 4, s(1)), (2, 7, s(-1))] {
        projection.set(r, c, v);
    }
    Ok(X3ChainComplex { delta0, delta1, delta1_hat: hat, projection })
}

/// Exactness of `0 → K³ → K⁶ → K³ → 0` given by `delta0` then `delta1`.
pub fn is_exact(delta0: &Matrix<Scalar>, delta1: &Matrix<Scalar>) -> bool {
    let Ok(prod) = delta1.mul(delta0) else {
        return false;
    };
    let r0 = delta0.rank();
    let r1 = delta1.rank();
    prod.is_zero() && r0 == delta0.cols() && r1 == delta1.rows() && r0 + r1 == delta0.rows()
}

pub fn verify_chain_exactness(alpha: &Scalar) -> Result<bool> {
    let c = chain_complex(alpha)?;
    Ok(is_exact(&c.delta0, &c.delta1))
}

/// The 3×6 matrix `M = P · diag(φ₁, φ₂, φ₃)` with its Hilbert–Burch blocks.
/// Row degree labels are `(m₁, m₂, m₃)`, column labels the syzygy degrees.
#[derive(Clone, Debug, Serialize)]
pub struct MMatrix {
    #[serde(serialize_with = "serialize_matrix")]
    pub m: Matrix<Polynomial>,
    pub blocks: [HilbertBurchMatrix; 3],
}

impl MMatrix {
    pub fn column_degrees(&self) -> Vec<i64> {
        self.m.col_degrees().expect("labelled").to_vec()
    }

    /// The maximal minor on three columns.
    pub fn minor(&self, cols: [usize; 3]) -> Result<Polynomial> {
        self.m.submatrix(&[0, 1, 2], &cols).det()
    }
}

/// Assembles `M`. Each `φᵢ` must belong to the `i`-th triple-point ideal.
pub fn build_m(alpha: &Scalar, m: &[u32], phis: [HilbertBurchMatrix; 3]) -> Result<MMatrix> {
    let ideals = triple_point_ideals(alpha, m)?;
    for (i, (phi, ideal)) in phis.iter().zip(&ideals).enumerate() {
        if phi.generators != ideal.generators {
            return Err(Error::InvalidInput(format!("syzygy matrix {i} does not belong to J(Y{})", i + 1)));
        }
    }
    let ring = phis[0].generators[0].ring().clone();
    let p = chain_complex(alpha)?.projection;
    let mut entries = vec![vec![ring.zero(); 6]; 3];
    for (r, row) in entries.iter_mut().enumerate() {
        for (b, phi) in phis.iter().enumerate() {
            for k in 0..3 {
                let c = p.get(r, 3 * b + k);
                if c.is_zero() {
                    continue;
                }
                for j in 0..2 {
                    let term = phi.phi.get(k, j).scale(c);
                    row[2 * b + j] = &row[2 * b + j] + &term;
                }
            }
        }
    }
    let rows = vec![i64::from(m[0]), i64::from(m[1]), i64::from(m[2])];
    let cols = phis.iter().flat_map(|p| p.degrees.map(i64::from)).collect();
    let mat = Matrix::from_rows(entries).with_degrees(rows, cols)?;
    Ok(MMatrix { m: mat, blocks: phis })
}

/// Columns `(A, C, E)`: the first syzygy of each block.
pub const DESIGNATED_COLUMNS: [usize; 3] = [0, 2, 4];

pub fn designated_minor(mm: &MMatrix) -> Result<Polynomial> {
    mm.minor(DESIGNATED_COLUMNS)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FreenessWitness {
    /// A maximal minor that is a nonzero constant.
    UnitMinor { columns: [usize; 3], value: Scalar },
    /// Every maximal minor vanishes or has positive degree; `None` marks zero.
    NoUnitMinor { minors: Vec<([usize; 3], Option<u32>)> },
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologicalVerdict {
    pub free: bool,
    pub witness: FreenessWitness,
    pub exponents: Option<[u32; 3]>,
    pub column_degrees: Vec<i64>,
}

fn column_triples() -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(20);
    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Builds `M` and scans its 20 maximal minors. All minors are homogeneous, and
/// a homogeneous ideal is the unit ideal exactly when it contains a nonzero
/// constant (a proper one lies in the irrelevant ideal), so the columns of
/// `M` generate `S³` iff some maximal minor is a nonzero constant.
pub fn decide_free_homological(alpha: &Scalar, m: &[u32]) -> Result<HomologicalVerdict> {
    check_alpha(alpha)?;
    check_multiplicity(m)?;
    let mm = m_matrix(alpha, m)?;
    let mut minors = Vec::with_capacity(20);
    let mut witness = None;
    for cols in column_triples() {
        let det = mm.minor(cols)?;
        if det.is_zero() {
            minors.push((cols, None));
            continue;
        }
        if let Some(c) = det.constant_value() {
            witness = Some(FreenessWitness::UnitMinor { columns: cols, value: c });
            break;
        }
        minors.push((cols, det.degree()));
    }
    let column_degrees = mm.column_degrees();
    Ok(match witness {
        Some(w) => HomologicalVerdict { free: true, witness: w, exponents: predicted_exponents(m), column_degrees },
        None => HomologicalVerdict {
            free: false,
            witness: FreenessWitness::NoUnitMinor { minors },
            exponents: None,
            column_degrees,
        },
    })
}

/// Hilbert–Burch matrices of the three triple-point ideals and the assembled `M`.
pub fn m_matrix(alpha: &Scalar, m: &[u32]) -> Result<MMatrix> {
    let ideals = triple_point_ideals(alpha, m)?;
    let ring = ideals[0].generators[0].ring().clone();
    let phis = [
        hilbert_burch(&ring, &ideals[0].powers)?,
        hilbert_burch(&ring, &ideals[1].powers)?,
        hilbert_burch(&ring, &ideals[2].powers)?,
    ];
    build_m(alpha, m, phis)
}

impl X3ChainComplex {
    pub fn field(&self) -> Field {
        self.delta0.get(0, 0).field()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn complex_is_exact() {
        assert!(verify_chain_exactness(&Q.from_i64(-1)).unwrap());
        assert!(verify_chain_exactness(&Q.from_i64(5)).unwrap());
        let c = chain_complex(&Q.from_i64(-1)).unwrap();
        let mut broken = c.delta1.clone();
        for j in 0..6 {
            broken.set(1, j, Q.zero());
        }
        assert!(!is_exact(&c.delta0, &broken));
    }

    #[test]
    fn projection_kills_the_lift() {
        let c = chain_complex(&Q.from_i64(3)).unwrap();
        assert!(c.projection.mul(&c.delta1_hat).unwrap().is_zero());
        assert_eq!(c.delta1_hat.rank(), 6);
        assert_eq!(c.projection.rank(), 3);
    }

    #[test]
    fn m_layout_matches_blocks() {
        let alpha = Q.from_i64(2);
        let mm = m_matrix(&alpha, &[3, 3, 3, 1, 1, 1]).unwrap();
        let [p1, p2, p3] = &mm.blocks;
        let e = |p: &HilbertBurchMatrix, i, j| p.entry(i, j).clone();
        let z = || p1.entry(0, 0).ring().zero();
        let expected = [
            [e(p1, 0, 0), e(p1, 0, 1), -e(p2, 0, 0), -e(p2, 0, 1), z(), z()],
            [e(p1, 1, 0), e(p1, 1, 1), z(), z(), e(p3, 0, 0).scale(&alpha), e(p3, 0, 1).scale(&alpha)],
            [z(), z(), e(p2, 1, 0), e(p2, 1, 1), -e(p3, 1, 0), -e(p3, 1, 1)],
        ];
        for (r, row) in expected.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                assert_eq!(mm.m.get(r, c), v, "entry ({r},{c})");
            }
        }
        assert_eq!(mm.m.row_degrees(), Some(&[3, 3, 3][..]));
    }

    #[test]
    fn balanced_examples() {
        let v = decide_free_homological(&Q.from_i64(-1), &[2, 2, 2, 1, 1, 1]).unwrap();
        assert!(v.free);
        assert_eq!(v.exponents, Some([3, 3, 3]));
        assert!(!decide_free_homological(&Q.from_i64(-1), &[3, 3, 3, 1, 1, 1]).unwrap().free);
        for a in [-1, 2, 3] {
            assert!(!decide_free_homological(&Q.from_i64(a), &[2, 2, 2, 2, 1, 1]).unwrap().free);
        }
    }

    #[test]
    fn positive_degree_block_without_units() {
        let mm = m_matrix(&Q.from_i64(2), &[2, 2, 2, 2, 1, 1]).unwrap();
        for j in 0..2 {
            for i in 0..2 {
                assert!(mm.blocks[0].entry(i, j).degree().unwrap_or(1) > 0);
            }
        }
    }
}
