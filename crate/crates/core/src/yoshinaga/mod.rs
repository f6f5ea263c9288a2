//! Exponents of multi-arrangements in `ℙ¹` and rank-3 freeness through the
//! characteristic polynomial and the Ziegler restriction.

use serde::Serialize;

use crate::algebra::{Field, Scalar};
use crate::arrangement::{CharPoly, MultiArrangement};
use crate::derivation::{decide_free_up_to, FreenessVerdict};
use crate::error::{Error, Result};

/// Exponents `(e₁ ≤ e₂)` of a multi-arrangement of points in `ℙ¹`, read off the
/// degrees of a Saito basis of its (always free) derivation module.
pub fn p1_exponents(a: &MultiArrangement) -> Result<(u32, u32)> {
    if a.dim() != 2 {
        return Err(Error::InvalidInput(format!("expected 2 variables, got {}", a.dim())));
    }
    match decide_free_up_to(a, a.total_multiplicity())? {
        FreenessVerdict::Free(cert) => {
            let mut e = cert.exponents.clone();
            e.sort_unstable();
            Ok((e[0], e[1]))
        }
        other => Err(Error::InvalidInput(format!("rank-2 derivation module was not certified free: {other:?}"))),
    }
}

/// Evidence behind a rank-3 freeness decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YoshinagaReport {
    pub chi: CharPoly,
    /// `(d₁, d₂)` if `χ = (t − 1)(t − d₁)(t − d₂)` over ℤ.
    pub chi_roots: Option<(i64, i64)>,
    pub restriction_multiplicities: Vec<u32>,
    pub restriction_exponents: (u32, u32),
    pub free: bool,
}

/// Rank-3 criterion: a simple arrangement is free iff its characteristic
/// polynomial is `(t − 1)(t − d₁)(t − d₂)` and the Ziegler restriction onto `H`
/// has exponents `{d₁, d₂}`. Non-essential inputs of rank 3 are essentialized.
pub fn yoshinaga3(a: &MultiArrangement, h: usize) -> Result<YoshinagaReport> {
    if !a.is_simple() {
        return Err(Error::InvalidInput("expected a simple arrangement".into()));
    }
    if a.rank() != 3 {
        return Err(Error::InvalidInput(format!("expected rank 3, got {}", a.rank())));
    }
    if h >= a.len() {
        return Err(Error::InvalidInput(format!("hyperplane index {h} out of range")));
    }
    let a = if a.dim() == 3 { a.clone() } else { a.essentialize()? };
    let chi = a.lattice().char_poly();
    let chi_roots = chi.split_roots().and_then(|roots| {
        let mut rest = roots.clone();
        let one = rest.iter().position(|&r| r == 1)?;
        rest.remove(one);
        Some((rest[0].min(rest[1]), rest[0].max(rest[1])))
    });
    let restriction = a.ziegler_restriction(h)?;
    let exps = p1_exponents(&restriction)?;
    let free = chi_roots == Some((i64::from(exps.0), i64::from(exps.1)));
    Ok(YoshinagaReport {
        chi,
        chi_roots,
        restriction_multiplicities: restriction.multiplicities().to_vec(),
        restriction_exponents: exps,
        free,
    })
}

pub fn yoshinaga3_free(a: &MultiArrangement, h: usize) -> Result<bool> {
    Ok(yoshinaga3(a, h)?.free)
}

/// The family `x − aᵢz (i ≤ n)`, `y − b_jz (j ≤ n)`, `Ax + By + Cz`, `z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridLineSpec {
    pub a: Vec<Scalar>,
    pub b: Vec<Scalar>,
    pub line: [Scalar; 3],
}

impl GridLineSpec {
    pub fn new(a: Vec<Scalar>, b: Vec<Scalar>, line: [Scalar; 3]) -> Result<Self> {
        if a.is_empty() || a.len() != b.len() {
            return Err(Error::InvalidInput(format!(
                "need n >= 1 values on each side, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        let field = line[0].field();
        if a.iter().chain(&b).chain(&line).any(|s| s.field() != field) {
            return Err(Error::FieldMismatch("grid values".into(), field.to_string()));
        }
        for v in [&a, &b] {
            for i in 0..v.len() {
                if v[..i].contains(&v[i]) {
                    return Err(Error::InvalidInput(format!("repeated grid value {}", v[i])));
                }
            }
        }
        if line[0].is_zero() || line[1].is_zero() {
            return Err(Error::InvalidInput("the line needs A != 0 and B != 0".into()));
        }
        Ok(GridLineSpec { a, b, line })
    }

    pub fn from_i64(field: Field, a: &[i64], b: &[i64], line: [i64; 3]) -> Result<Self> {
        let s = |v: &[i64]| v.iter().map(|&x| field.from_i64(x)).collect();
        Self::new(s(a), s(b), line.map(|x| field.from_i64(x)))
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn field(&self) -> Field {
        self.line[0].field()
    }

    /// Grid points `(aᵢ, b_j)` on the line, as index pairs.
    pub fn incidences(&self) -> Vec<(usize, usize)> {
        let [la, lb, lc] = &self.line;
        let mut out = Vec::new();
        for (i, ai) in self.a.iter().enumerate() {
            for (j, bj) in self.b.iter().enumerate() {
                if (&(&(la * ai) + &(lb * bj)) + lc).is_zero() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `q`, the number of grid points on the line.
    pub fn q(&self) -> usize {
        self.incidences().len()
    }

    /// `(t − 1)(t² − (2n+1)t + n² + 2n − q)`.
    pub fn predicted_chi(&self) -> CharPoly {
        let n = self.n() as i64;
        let q = self.q() as i64;
        CharPoly::from_roots(&[1]).mul(&CharPoly::new(vec![n * n + 2 * n - q, -(2 * n + 1), 1]))
    }

    pub fn arrangement(&self) -> Result<MultiArrangement> {
        let f = self.field();
        let (o, z) = (f.one(), f.zero());
        let mut forms = Vec::with_capacity(2 * self.n() + 2);
        for ai in &self.a {
            forms.push(vec![o.clone(), z.clone(), -ai]);
        }
        for bj in &self.b {
            forms.push(vec![z.clone(), o.clone(), -bj]);
        }
        forms.push(self.line.to_vec());
        forms.push(vec![z.clone(), z, o]);
        MultiArrangement::simple(f, forms)
    }

    /// Index of the hyperplane `z = 0` in [`Self::arrangement`].
    pub fn z_index(&self) -> usize {
        2 * self.n() + 1
    }
}

/// Free iff the line passes through exactly `n` grid points. Distinct `aᵢ`
/// and `b_j` make every incidence set a partial matching, so `q = n` means
/// a perfect matching.
pub fn grid_line_free(spec: &GridLineSpec) -> bool {
    spec.q() == spec.n()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn p1(forms: &[&[i64]], m: &[u32]) -> MultiArrangement {
        MultiArrangement::from_integer_forms(Q, forms).unwrap().with_multiplicities(m).unwrap()
    }

    #[test]
    fn three_points_n_n_1() {
        for n in 1..=4 {
            assert_eq!(p1_exponents(&p1(&[&[1, 0], &[0, 1], &[2, 3]], &[n, n, 1])).unwrap(), (n, n + 1));
        }
    }

    #[test]
    fn four_points() {
        let e = |alpha| p1_exponents(&p1(&[&[1, 0], &[0, 1], &[1, 1], &[1, alpha]], &[3, 3, 1, 1])).unwrap();
        assert_eq!(e(-1), (3, 5));
        assert_eq!(e(2), (4, 4));
    }

    #[test]
    fn single_point() {
        assert_eq!(p1_exponents(&p1(&[&[1, 0]], &[4])).unwrap(), (0, 4));
    }

    #[test]
    fn x3_fails_the_criterion() {
        let a = MultiArrangement::x3(&Q.from_i64(2)).unwrap();
        for h in 0..6 {
            let r = yoshinaga3(&a, h).unwrap();
            assert!(!r.free);
            assert_eq!(r.chi_roots, None);
        }
    }

    #[test]
    fn boolean_passes() {
        let a = MultiArrangement::from_integer_forms(Q, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let r = yoshinaga3(&a, 0).unwrap();
        assert!(r.free);
        assert_eq!(r.restriction_exponents, (1, 1));
    }

    #[test]
    fn grid_examples() {
        let g = GridLineSpec::from_i64(Q, &[1, 2], &[-1, -2], [1, 1, 0]).unwrap();
        assert_eq!(g.incidences(), vec![(0, 0), (1, 1)]);
        assert!(grid_line_free(&g));
        assert!(yoshinaga3_free(&g.arrangement().unwrap(), g.z_index()).unwrap());
        assert_eq!(g.arrangement().unwrap().lattice().char_poly(), CharPoly::from_roots(&[1, 2, 3]));
        let g = GridLineSpec::from_i64(Q, &[1, 2], &[-1, 5], [1, 1, 0]).unwrap();
        assert_eq!(g.q(), 1);
        assert!(!grid_line_free(&g));
        assert!(!yoshinaga3_free(&g.arrangement().unwrap(), g.z_index()).unwrap());
        let g = GridLineSpec::from_i64(Q, &[3], &[4], [1, 1, -7]).unwrap();
        assert!(grid_line_free(&g));
        assert!(GridLineSpec::from_i64(Q, &[1, 1], &[2, 3], [1, 1, 0]).is_err());
        assert!(GridLineSpec::from_i64(Q, &[1], &[2], [0, 1, 0]).is_err());
    }
}
