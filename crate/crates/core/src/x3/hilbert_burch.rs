//! Hilbert–Burch matrices of ideals generated by three powers of linear forms
//! in a two-dimensional space of forms.

use serde::Serialize;

use crate::algebra::matrix::{kernel_in, rref_rows};
use crate::algebra::{monomials_of_degree, Matrix, Monomial, PolyRing, Polynomial, Scalar};
use crate::error::{Error, Result};

/// `form^power` for a linear form given by coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPower {
    pub form: Vec<Scalar>,
    pub power: u32,
}

/// A 3×2 syzygy matrix `φ` with `(f_1, f_2, f_3) · φ = 0` whose signed 2×2
/// minors recover the generators.
#[derive(Clone, Debug, Serialize)]
pub struct HilbertBurchMatrix {
    #[serde(serialize_with = "serialize_matrix")]
    pub phi: Matrix<Polynomial>,
    pub generators: [Polynomial; 3],
    /// Column degrees `r_1 ≤ r_2`; `r_1 + r_2 = Σ deg f_i`.
    pub degrees: [u32; 2],
    /// `c_i` with `(-1)^i · det(φ without row i) = c_i · f_i`.
    pub minor_scalars: [Scalar; 3],
}

pub(crate) fn serialize_matrix<S: serde::Serializer>(
    m: &Matrix<Polynomial>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
    rows.serialize(s)
}

impl HilbertBurchMatrix {
    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        self.phi.get(i, j)
    }

    /// Whether some entry of row `i` is a nonzero constant, meaning `f_i` is
    /// a redundant generator.
    pub fn has_unit_in_row(&self, i: usize) -> bool {
        (0..2).any(|j| {
            let e = self.phi.get(i, j);
            !e.is_zero() && e.is_constant()
        })
    }
}

/// Writes `l3 = c1 l1 + c2 l2`; errors unless `l1, l2` are independent and
/// both `c1, c2` are nonzero.
fn express_in_pair(l1: &[Scalar], l2: &[Scalar], l3: &[Scalar]) -> Result<(Scalar, Scalar)> {
    let n = l1.len();
    // Solve [l1 l2] c = l3 by eliminating on the augmented system.
    let mut rows: Vec<Vec<Scalar>> = (0..n).map(|k| vec![l1[k].clone(), l2[k].clone(), l3[k].clone()]).collect();
    let pivots = rref_rows(&mut rows, 3);
    if pivots != [0, 1] {
        return Err(Error::InvalidInput(
            "the three forms must span a two-dimensional space with the first two independent".into(),
        ));
    }
    let (c1, c2) = (rows[0][2].clone(), rows[1][2].clone());
    if c1.is_zero() || c2.is_zero() {
        return Err(Error::InvalidInput("two of the three forms are proportional".into()));
    }
    Ok((c1, c2))
}

/// Degree-`deg` syzygies of `(g_1, g_2, g_3)` in two variables, as an echelon
/// kernel. Unknowns are laid out as the coefficients of `h_1`, then `h_2`,
/// then `h_3`, each in descending graded-lex order.
fn syzygies_in_degree(ring2: &PolyRing, g: &[Polynomial; 3], degs: [u32; 3], deg: u32) -> (Vec<Vec<Scalar>>, [usize; 3]) {
    let field = ring2.field();
    let targets = monomials_of_degree(2, deg);
    let index = |m: &Monomial| targets.iter().position(|t| t == m).expect("degree matches");
    let mut sizes = [0usize; 3];
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..3 {
        if deg < degs[i] {
            continue;
        }
        let mons = monomials_of_degree(2, deg - degs[i]);
        sizes[i] = mons.len();
        for mo in mons {
            let prod = g[i].mul_monomial(&mo, &field.one());
            let mut col = vec![field.zero(); targets.len()];
            for (m, c) in prod.terms() {
                col[index(m)] = c.clone();
            }
            columns.push(col);
        }
    }
    let rows: Vec<Vec<Scalar>> = (0..targets.len()).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    (kernel_in(field, &rows, columns.len()), sizes)
}

fn vector_to_column(ring2: &PolyRing, v: &[Scalar], sizes: [usize; 3], degs: [u32; 3], deg: u32) -> [Polynomial; 3] {
    let mut out: [Polynomial; 3] = [ring2.zero(), ring2.zero(), ring2.zero()];
    let mut offset = 0;
    for i in 0..3 {
        if sizes[i] > 0 {
            out[i] = ring2.from_coefficients(deg - degs[i], &v[offset..offset + sizes[i]]);
        }
        offset += sizes[i];
    }
    out
}

/// Multiplies a syzygy vector of degree `from` by a monomial, giving the
/// vector of the product in degree `from + deg(mono)`.
fn shift_vector(v: &[Scalar], sizes_from: [usize; 3], sizes_to: [usize; 3], degs: [u32; 3], from: u32, mono: &Monomial) -> Vec<Scalar> {
    let field = v[0].field();
    let to = from + mono.degree();
    let mut out = vec![field.zero(); sizes_to.iter().sum()];
    let (mut off_from, mut off_to) = (0, 0);
    for i in 0..3 {
        if sizes_from[i] > 0 {
            let src = monomials_of_degree(2, from - degs[i]);
            let dst = monomials_of_degree(2, to - degs[i]);
            for (k, m) in src.iter().enumerate() {
                let target = m.mul(mono);
                let pos = dst.iter().position(|t| *t == target).expect("same degree");
                out[off_to + pos] = v[off_from + k].clone();
            }
        }
        off_from += sizes_from[i];
        off_to += sizes_to[i];
    }
    out
}

/// Computes a minimal pair of syzygies degree by degree in the two-variable
/// ring of `(l_1, l_2)`, then substitutes back into `ring`.
pub fn hilbert_burch(ring: &PolyRing, gens: &[LinearPower; 3]) -> Result<HilbertBurchMatrix> {
    if gens.iter().any(|g| g.power == 0) {
        return Err(Error::InvalidInput("powers must be positive".into()));
    }
    if gens.iter().any(|g| g.form.len() != ring.nvars()) {
        return Err(Error::Dimension("form length does not match the ring".into()));
    }
    let field = ring.field();
    let (c1, c2) = express_in_pair(&gens[0].form, &gens[1].form, &gens[2].form)?;
    let ring2 = PolyRing::new(field, &["u", "v"])?;
    let degs = [gens[0].power, gens[1].power, gens[2].power];
    let g2: [Polynomial; 3] = [
        ring2.var(0).pow(degs[0]),
        ring2.var(1).pow(degs[1]),
        ring2.linear_form(&[c1, c2]).pow(degs[2]),
    ];
    let total: u32 = degs.iter().sum();

    let mut r1 = None;
    for deg in 1..=total {
        let (k, sizes) = syzygies_in_degree(&ring2, &g2, degs, deg);
        if !k.is_empty() {
            r1 = Some((deg, k, sizes));
            break;
        }
    }
    let (r1, k1, sizes1) = r1.ok_or_else(|| Error::InvalidInput("no syzygies found".into()))?;
    let r2 = total - r1;
    let (s1, s2, sizes2) = if k1.len() >= 2 {
        debug_assert_eq!(r1, r2);
        (k1[0].clone(), k1[1].clone(), sizes1)
    } else {
        let (k2, sizes2) = syzygies_in_degree(&ring2, &g2, degs, r2);
        let mut span: Vec<Vec<Scalar>> = monomials_of_degree(2, r2 - r1)
            .iter()
            .map(|mo| shift_vector(&k1[0], sizes1, sizes2, degs, r1, mo))
            .collect();
        let width = sizes2.iter().sum();
        let pivots = rref_rows(&mut span, width);
        let mut rest: Vec<Vec<Scalar>> = k2
            .iter()
            .map(|v| {
                let mut r = v.clone();
                for (row, &p) in span.iter().zip(&pivots) {
                    if r[p].is_zero() {
                        continue;
                    }
                    let c = r[p].clone();
                    for (x, y) in r.iter_mut().zip(row) {
                        *x = &*x - &(&c * y);
                    }
                }
                r
            })
            .filter(|r| r.iter().any(|c| !c.is_zero()))
            .collect();
        rref_rows(&mut rest, width);
        let s2 = rest.into_iter().next().ok_or_else(|| Error::InvalidInput("second syzygy not found".into()))?;
        (k1[0].clone(), s2, sizes2)
    };
    let col1 = vector_to_column(&ring2, &s1, sizes1, degs, r1);
    let col2 = vector_to_column(&ring2, &s2, sizes2, degs, r2);

    let images = [ring.linear_form(&gens[0].form), ring.linear_form(&gens[1].form)];
    let lift = |p: &Polynomial| p.substitute(&images);
    let mut rows = Vec::with_capacity(3);
    for i in 0..3 {
        rows.push(vec![lift(&col1[i])?, lift(&col2[i])?]);
    }
    let generators: [Polynomial; 3] = [
        ring.linear_form(&gens[0].form).pow(degs[0]),
        ring.linear_form(&gens[1].form).pow(degs[1]),
        ring.linear_form(&gens[2].form).pow(degs[2]),
    ];
    let phi = Matrix::from_rows(rows).with_degrees(
        degs.iter().map(|&d| i64::from(d)).collect(),
        vec![i64::from(r1), i64::from(r2)],
    )?;

    // Validation: columns are syzygies, and minors give back the generators.
    for j in 0..2 {
        let mut acc = ring.zero();
        for i in 0..3 {
            acc = &acc + &(&generators[i] * phi.get(i, j));
        }
        if !acc.is_zero() {
            return Err(Error::InvalidInput(format!("column {j} is not a syzygy")));
        }
    }
    let mut scalars = Vec::with_capacity(3);
    for i in 0..3 {
        let keep: Vec<usize> = (0..3).filter(|&k| k != i).collect();
        let mut minor = phi.submatrix(&keep, &[0, 1]).det()?;
        if i == 1 {
            minor = -minor;
        }
        match minor.scalar_ratio(&generators[i]) {
            Some(c) if !c.is_zero() => scalars.push(c),
            _ => {
                return Err(Error::InvalidInput(format!(
                    "minor {i} of the syzygy matrix is not a multiple of {}",
                    generators[i]
                )))
            }
        }
    }
    let minor_scalars = [scalars[0].clone(), scalars[1].clone(), scalars[2].clone()];
    Ok(HilbertBurchMatrix { phi, generators, degrees: [r1, r2], minor_scalars })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    const Q: Field = Field::Rationals;

    fn lp(form: &[i64], power: u32) -> LinearPower {
        LinearPower { form: form.iter().map(|&c| Q.from_i64(c)).collect(), power }
    }

    #[test]
    fn koszul_like_relations() {
        let ring = PolyRing::standard(Q, 3).unwrap();
        let hb = hilbert_burch(&ring, &[lp(&[1, 0, 0], 1), lp(&[0, 1, 0], 1), lp(&[1, 1, 0], 1)]).unwrap();
        assert_eq!(hb.degrees, [1, 2]);
        assert!(hb.has_unit_in_row(0));
    }

    #[test]
    fn squares_with_linear_third() {
        // alpha = 3: J = <x^2, y^2, x - 3y>.
        let ring = PolyRing::standard(Q, 3).unwrap();
        let hb = hilbert_burch(&ring, &[lp(&[1, 0, 0], 2), lp(&[0, 1, 0], 2), lp(&[1, -3, 0], 1)]).unwrap();
        assert_eq!(hb.degrees, [2, 3]);
        assert_eq!(hb.entry(0, 0).to_string(), "1");
        assert_eq!(hb.entry(1, 0).to_string(), "-9");
    }

    #[test]
    fn all_squares() {
        let ring = PolyRing::standard(Q, 3).unwrap();
        let hb = hilbert_burch(&ring, &[lp(&[1, 0, 0], 2), lp(&[0, 1, 0], 2), lp(&[1, -2, 0], 2)]).unwrap();
        assert_eq!(hb.degrees, [3, 3]);
        for i in 0..3 {
            assert!(!hb.has_unit_in_row(i));
        }
    }

    #[test]
    fn proportional_forms_rejected() {
        let ring = PolyRing::standard(Q, 3).unwrap();
        assert!(hilbert_burch(&ring, &[lp(&[1, 0, 0], 2), lp(&[2, 0, 0], 2), lp(&[1, 1, 0], 1)]).is_err());
        assert!(hilbert_burch(&ring, &[lp(&[1, 0, 0], 2), lp(&[0, 1, 0], 2), lp(&[0, 3, 0], 1)]).is_err());
        assert!(hilbert_burch(&ring, &[lp(&[1, 0, 0], 1), lp(&[0, 1, 0], 1), lp(&[0, 0, 1], 1)]).is_err());
    }
}
