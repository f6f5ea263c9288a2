//! Ziegler multi-restriction onto a hyperplane.

use super::{normalize, MultiArrangement};
use crate::algebra::Scalar;
use crate::error::{Error, Result};

/// Result of restricting a simple arrangement to one of its hyperplanes.
#[derive(Clone, Debug)]
pub struct Restriction {
    /// Restricted forms with fiber-count multiplicities.
    pub arrangement: MultiArrangement,
    /// For each restricted form, the original indices collapsing onto it.
    pub fibers: Vec<Vec<usize>>,
    /// The eliminated variable.
    pub pivot: usize,
}

impl MultiArrangement {
    /// Coordinates on `H = ker(alpha_h)`: the pivot (first nonzero) variable of
    /// `alpha_h` is eliminated, the rest keep their declared order.
    pub fn restrict_form(&self, h: usize, f: &[Scalar]) -> Vec<Scalar> {
        let a = self.form(h);
        let p = a.iter().position(|c| !c.is_zero()).expect("nonzero form");
        let ratio = &f[p] / &a[p];
        (0..self.dim()).filter(|&k| k != p).map(|k| &f[k] - &(&ratio * &a[k])).collect()
    }

    /// Ziegler multi-restriction `(A^H, m^H)`.
    pub fn ziegler_restriction(&self, h: usize) -> Result<MultiArrangement> {
        Ok(self.restriction(h)?.arrangement)
    }

    /// Ziegler multi-restriction with the fiber of every restricted form.
    /// The representative of a fiber is its first member in index order.
    pub fn restriction(&self, h: usize) -> Result<Restriction> {
        if h >= self.len() {
            return Err(Error::InvalidInput(format!("hyperplane index {h} out of range")));
        }
        if !self.is_simple() {
            return Err(Error::InvalidInput("Ziegler restriction needs a simple arrangement".into()));
        }
        if self.dim() < 2 {
            return Err(Error::InvalidInput("cannot restrict a one-dimensional arrangement".into()));
        }
        let pivot = self.form(h).iter().position(|c| !c.is_zero()).expect("nonzero form");
        let mut keys: Vec<Vec<Scalar>> = Vec::new();
        let mut forms: Vec<Vec<Scalar>> = Vec::new();
        let mut fibers: Vec<Vec<usize>> = Vec::new();
        for i in (0..self.len()).filter(|&i| i != h) {
            let r = self.restrict_form(h, self.form(i));
            let key = normalize(&r);
            match keys.iter().position(|k| *k == key) {
                Some(j) => fibers[j].push(i),
                None => {
                    keys.push(key);
                    forms.push(r);
                    fibers.push(vec![i]);
                }
            }
        }
        let vars = self.vars().iter().enumerate().filter(|&(k, _)| k != pivot).map(|(_, v)| v.clone()).collect();
        let mult = fibers.iter().map(|f| f.len() as u32).collect();
        let arrangement = MultiArrangement::new(self.field(), vars, forms, mult)?;
        Ok(Restriction { arrangement, fibers, pivot })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    const Q: Field = Field::Rationals;

    #[test]
    fn boolean_restriction() {
        let a = MultiArrangement::from_integer_forms(Q, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let r = a.ziegler_restriction(0).unwrap();
        assert_eq!(r.vars(), ["y", "z"]);
        assert_eq!(r.multiplicities(), [1, 1]);
        assert_eq!(r.to_string(), "(y), (z)");
    }

    #[test]
    fn x3_restricted_to_x() {
        let a = MultiArrangement::x3(&Q.from_i64(-1)).unwrap();
        let r = a.restriction(0).unwrap();
        assert_eq!(r.arrangement.to_string(), "(y)^2, (z)^2, (y + z)");
        assert_eq!(r.fibers, vec![vec![1, 3], vec![2, 4], vec![5]]);
        assert_eq!(r.arrangement.total_multiplicity() as usize, a.len() - 1);
    }

    #[test]
    fn rejects_multi_input() {
        let a = MultiArrangement::x3(&Q.from_i64(2)).unwrap().with_multiplicities(&[2, 1, 1, 1, 1, 1]).unwrap();
        assert!(a.ziegler_restriction(0).is_err());
        assert!(MultiArrangement::x3(&Q.from_i64(2)).unwrap().ziegler_restriction(6).is_err());
    }
}
