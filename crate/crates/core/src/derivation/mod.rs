//! Logarithmic derivation modules `D(A, m)`.
//!
//! `D(A, m)` is the graded module of derivations `θ = Σ P_j ∂_j` with
//! `α_H^{m(H)} | θ(α_H)` for every hyperplane. Each graded piece is the kernel
//! of a linear system on the coefficients of `(P_1, …, P_ℓ)`, so everything
//! here reduces to exact linear algebra.

mod graded;
mod saito;
mod verdict;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{monomials_of_degree, PolyRing, Polynomial, Scalar};
use crate::arrangement::MultiArrangement;
use crate::error::{Error, Result};

pub use graded::{degree_component, hilbert_function, minimal_generators, GeneratorScan};
pub use saito::{saito_check, SaitoOutcome};
pub use verdict::{decide_free_bruteforce, decide_free_up_to, FreenessVerdict, NotFreeWitness, SaitoCertificate};

/// A homogeneous derivation `Σ P_j ∂_j`, all `P_j` of one degree.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    coeffs: Vec<Polynomial>,
    degree: Option<u32>,
}

impl Derivation {
    pub fn new(coeffs: Vec<Polynomial>) -> Result<Self> {
        let first = coeffs.first().ok_or_else(|| Error::InvalidInput("a derivation needs coefficients".into()))?;
        let mut degree = None;
        for p in &coeffs {
            p.check_ring(first)?;
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() {
                return Err(Error::InvalidInput(format!("coefficient {p} is not homogeneous")));
            }
            match degree {
                None => degree = p.degree(),
                Some(d) if Some(d) != p.degree() => {
                    return Err(Error::InvalidInput("coefficients have different degrees".into()))
                }
                _ => {}
            }
        }
        if coeffs.len() != first.nvars() {
            return Err(Error::Dimension(format!(
                "{} coefficients in a ring with {} variables",
                coeffs.len(),
                first.nvars()
            )));
        }
        Ok(Derivation { coeffs, degree })
    }

    /// Parses one polynomial string per variable.
    pub fn parse(ring: &PolyRing, coeffs: &[&str]) -> Result<Self> {
        Self::new(coeffs.iter().map(|s| ring.parse(s)).collect::<Result<_>>()?)
    }

    /// The Euler derivation `Σ x_j ∂_j`.
    pub fn euler(ring: &PolyRing) -> Self {
        Derivation { coeffs: (0..ring.nvars()).map(|i| ring.var(i)).collect(), degree: Some(1) }
    }

    /// Rebuilds a derivation of degree `d` from its coefficient vector, laid out
    /// as `(j, monomial)` with monomials in descending graded-lex order.
    pub fn from_vector(ring: &PolyRing, d: u32, v: &[Scalar]) -> Self {
        let n = monomials_of_degree(ring.nvars(), d).len();
        let coeffs: Vec<Polynomial> = v.chunks(n).map(|c| ring.from_coefficients(d, c)).collect();
        let nonzero = coeffs.iter().any(|p| !p.is_zero());
        Derivation { coeffs, degree: nonzero.then_some(d) }
    }

    pub fn to_vector(&self, d: u32) -> Vec<Scalar> {
        self.coeffs.iter().flat_map(|p| p.coefficients_in_degree(d)).collect()
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn ring(&self) -> &PolyRing {
        self.coeffs[0].ring()
    }

    /// Polynomial degree of the coefficients; `None` for the zero derivation.
    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.degree.is_none()
    }

    /// `θ(f)` for a linear form given by its coefficients.
    pub fn apply_linear(&self, form: &[Scalar]) -> Polynomial {
        let mut acc = self.ring().zero();
        for (a, p) in form.iter().zip(&self.coeffs) {
            if !a.is_zero() {
                acc = &acc + &p.scale(a);
            }
        }
        acc
    }

    /// `θ(f)` for an arbitrary polynomial, by the product rule on terms.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let ring = self.ring();
        let mut acc = ring.zero();
        for (m, c) in f.terms() {
            for (j, p) in self.coeffs.iter().enumerate() {
                let e = m.exponent(j);
                if e == 0 || p.is_zero() {
                    continue;
                }
                let mut exps = *m.exponents();
                exps[j] -= 1;
                let dm = crate::algebra::Monomial::from_exponents(&exps[..ring.nvars()]);
                let coeff = c * &ring.field().from_i64(e as i64);
                acc = &acc + &p.mul_monomial(&dm, &coeff);
            }
        }
        acc
    }

    /// The first hyperplane whose divisibility condition fails, if any.
    /// Checked by polynomial division.
    pub fn first_violation(&self, a: &MultiArrangement) -> Result<Option<usize>> {
        for i in 0..a.len() {
            let g = self.apply_linear(a.form(i));
            let divisor = a.form_polynomial(i).pow(a.multiplicities()[i]);
            if !g.is_divisible_by(&divisor)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn is_member(&self, a: &MultiArrangement) -> Result<bool> {
        if self.ring() != &a.ring() {
            return Err(Error::VariableMismatch(self.ring().vars().join(","), a.vars().join(",")));
        }
        Ok(self.first_violation(a)?.is_none())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let coeffs: Vec<Polynomial> = self.coeffs.iter().map(|p| p.scale(c)).collect();
        let degree = if c.is_zero() { None } else { self.degree };
        Derivation { coeffs, degree }
    }

    /// `f · θ` for a homogeneous polynomial `f`.
    pub fn mul_poly(&self, f: &Polynomial) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|p| p * f).collect())
    }

    pub fn add(&self, other: &Derivation) -> Result<Self> {
        Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|p| p.to_string()).collect()
    }
}

impl Serialize for Derivation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = self.ring().vars();
        let mut first = true;
        for (p, v) in self.coeffs.iter().zip(vars) {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if p.terms().len() == 1 && p.is_constant() && p.terms()[0].1.is_one() {
                write!(f, "∂{v}")?;
            } else {
                write!(f, "({p})∂{v}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    #[test]
    fn membership_by_division() {
        let a = MultiArrangement::x3(&Field::Rationals.from_i64(-1)).unwrap();
        let ring = a.ring();
        let e = Derivation::euler(&ring);
        assert!(e.is_member(&a).unwrap());
        let d = Derivation::parse(&ring, &["x^2", "0", "0"]).unwrap();
        assert_eq!(d.first_violation(&a).unwrap(), Some(3));
        assert_eq!(d.to_string(), "(x^2)∂x");
    }

    #[test]
    fn vector_round_trip() {
        let ring = PolyRing::standard(Field::Rationals, 3).unwrap();
        let d = Derivation::parse(&ring, &["x^2 - y*z", "3*z^2", "0"]).unwrap();
        let v = d.to_vector(2);
        assert_eq!(v.len(), 18);
        assert_eq!(Derivation::from_vector(&ring, 2, &v), d);
    }

    #[test]
    fn apply_uses_product_rule() {
        let ring = PolyRing::standard(Field::Rationals, 2).unwrap();
        let e = Derivation::euler(&ring);
        let f = ring.parse("x^2*y + y^3").unwrap();
        assert_eq!(e.apply(&f), f.scale(&Field::Rationals.from_i64(3)));
    }

    #[test]
    fn rejects_mixed_degrees() {
        let ring = PolyRing::standard(Field::Rationals, 2).unwrap();
        assert!(Derivation::parse(&ring, &["x", "y^2"]).is_err());
        assert!(Derivation::parse(&ring, &["x"]).is_err());
    }
}
