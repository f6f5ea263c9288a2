//! Intersection lattice, Möbius function and characteristic polynomial.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::MultiArrangement;
use crate::algebra::matrix::rref_rows;
use crate::algebra::Scalar;

/// A flat, keyed by the sorted indices of the hyperplanes containing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flat {
    pub hyperplanes: Vec<usize>,
    pub rank: usize,
    pub mobius: i64,
}

impl Flat {
    pub fn contains_hyperplane(&self, h: usize) -> bool {
        self.hyperplanes.binary_search(&h).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    dim: usize,
    flats: Vec<Flat>,
}

/// Echelonized span of a set of forms.
struct Span {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Span {
    fn of(forms: &[&[Scalar]]) -> Span {
        let mut rows: Vec<Vec<Scalar>> = forms.iter().map(|f| f.to_vec()).collect();
        let ncols = forms.first().map_or(0, |f| f.len());
        let pivots = rref_rows(&mut rows, ncols);
        Span { rows, pivots }
    }

    fn contains(&self, v: &[Scalar]) -> bool {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&c * y);
                }
            }
        }
        r.iter().all(Scalar::is_zero)
    }
}

impl MultiArrangement {
    /// Enumerates every flat by closing sets of hyperplanes rank by rank.
    pub fn lattice(&self) -> IntersectionLattice {
        let n = self.len();
        let forms = self.forms();
        let closure = |set: &[usize]| -> (Vec<usize>, usize) {
            let rows: Vec<&[Scalar]> = set.iter().map(|&i| forms[i].as_slice()).collect();
            let span = Span::of(&rows);
            let members = (0..n).filter(|&i| span.contains(&forms[i])).collect();
            (members, span.pivots.len())
        };

        let mut flats = vec![Flat { hyperplanes: Vec::new(), rank: 0, mobius: 1 }];
        let mut layer: BTreeSet<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        let mut rank = 1;
        while !layer.is_empty() {
            let mut next = BTreeSet::new();
            for set in &layer {
                flats.push(Flat { hyperplanes: set.clone(), rank, mobius: 0 });
                let mut covered = vec![false; n];
                for &i in set {
                    covered[i] = true;
                }
                for j in 0..n {
                    if covered[j] {
                        continue;
                    }
                    let mut s = set.clone();
                    s.push(j);
                    let (members, r) = closure(&s);
                    debug_assert_eq!(r, rank + 1);
                    for &i in &members {
                        covered[i] = true;
                    }
                    next.insert(members);
                }
            }
            layer = next;
            rank += 1;
        }

        // Möbius recursion: mu(X) = -sum of mu(Y) over flats strictly below X.
        for k in 1..flats.len() {
            let (below, rest) = flats.split_at_mut(k);
            let x = &mut rest[0];
            let sum: i64 = below
                .iter()
                .filter(|y| y.rank < x.rank && is_subset(&y.hyperplanes, &x.hyperplanes))
                .map(|y| y.mobius)
                .sum();
            x.mobius = -sum;
        }
        IntersectionLattice { dim: self.dim(), flats }
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

impl IntersectionLattice {
    /// All flats ordered by rank, then by index set; the first is the whole space.
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flats_of_rank(&self, r: usize) -> impl Iterator<Item = &Flat> {
        self.flats.iter().filter(move |f| f.rank == r)
    }

    pub fn rank(&self) -> usize {
        self.flats.last().map_or(0, |f| f.rank)
    }

    pub fn find(&self, hyperplanes: &[usize]) -> Option<&Flat> {
        self.flats.iter().find(|f| f.hyperplanes == hyperplanes)
    }

    /// Rank-2 flats on exactly three hyperplanes.
    pub fn triple_points(&self) -> Vec<Vec<usize>> {
        self.flats_of_rank(2).filter(|f| f.hyperplanes.len() == 3).map(|f| f.hyperplanes.clone()).collect()
    }

    /// Number of rank-`r` flats by size, as sorted `(size, count)` pairs.
    pub fn census(&self, r: usize) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for f in self.flats_of_rank(r) {
            *counts.entry(f.hyperplanes.len()).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    /// `chi(t) = sum over flats X of mu(X) t^(dim - rank X)`.
    pub fn char_poly(&self) -> CharPoly {
        let mut coeffs = vec![0i64; self.dim + 1];
        for f in &self.flats {
            coeffs[self.dim - f.rank] += f.mobius;
        }
        CharPoly::new(coeffs)
    }
}

/// Integer polynomial in `t`, coefficients in ascending degree.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPoly {
    coeffs: Vec<i64>,
}

impl CharPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        CharPoly { coeffs }
    }

    /// Product of `(t - r)` over the given roots.
    pub fn from_roots(roots: &[i64]) -> Self {
        let mut c = vec![1i64];
        for &r in roots {
            let mut next = vec![0i64; c.len() + 1];
            for (i, &a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= r * a;
            }
            c = next;
        }
        CharPoly::new(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficients from the leading term down.
    pub fn coeffs_descending(&self) -> Vec<i64> {
        self.coeffs.iter().rev().copied().collect()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    pub fn mul(&self, other: &CharPoly) -> CharPoly {
        let mut c = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        CharPoly::new(c)
    }

    /// Divides by `t^k`. Panics if the low coefficients are not zero.
    pub fn deflate(&self, k: usize) -> CharPoly {
        assert!(self.coeffs[..k].iter().all(|&c| c == 0), "not divisible by t^{k}");
        CharPoly::new(self.coeffs[k..].to_vec())
    }

    /// Synthetic division by `(t - r)`; `None` if `r` is not a root.
    fn divide_root(&self, r: i64) -> Option<CharPoly> {
        if self.degree() == 0 || self.eval(r) != 0 {
            return None;
        }
        let d = self.degree();
        let mut q = vec![0i64; d];
        let mut carry = 0i64;
        for i in (0..=d).rev() {
            let v = self.coeffs[i] + carry;
            if i == 0 {
                debug_assert_eq!(v, 0);
            } else {
                q[i - 1] = v;
                carry = v * r;
            }
        }
        Some(CharPoly::new(q))
    }

    /// Splits off integer roots by divisor search on the lowest nonzero
    /// coefficient. Returns the roots in increasing order and the cofactor.
    pub fn integer_roots(&self) -> (Vec<i64>, CharPoly) {
        let mut roots = Vec::new();
        let mut rest = self.clone();
        while rest.degree() > 0 && rest.coeffs[0] == 0 {
            roots.push(0);
            rest = rest.deflate(1);
        }
        let c0 = rest.coeffs[0].unsigned_abs();
        let mut candidates = Vec::new();
        let mut d = 1u64;
        while d * d <= c0 {
            if c0 % d == 0 {
                candidates.push(d as i64);
                candidates.push((c0 / d) as i64);
            }
            d += 1;
        }
        candidates.sort_unstable();
        candidates.dedup();
        for &c in &candidates {
            for r in [c, -c] {
                while let Some(q) = rest.divide_root(r) {
                    roots.push(r);
                    rest = q;
                }
            }
        }
        roots.sort_unstable();
        (roots, rest)
    }

    /// The roots if the polynomial is monic and splits into integer linear factors.
    pub fn split_roots(&self) -> Option<Vec<i64>> {
        let (roots, rest) = self.integer_roots();
        (rest.coeffs == [1]).then_some(roots)
    }

    /// Factored display, e.g. `(t - 1)(t^2 - 5t + 7)`.
    pub fn factored(&self) -> String {
        let (roots, rest) = self.integer_roots();
        let mut s = String::new();
        if rest.coeffs != [1] {
            if rest.degree() == 0 {
                s.push_str(&rest.to_string());
            } else if roots.is_empty() {
                return rest.to_string();
            } else {
                s.push_str(&format!("({rest})"));
            }
        }
        let mut rs = roots.clone();
        rs.sort_by_key(|r| (*r != 1, *r));
        let lin: Vec<String> = rs.iter().map(|&r| format!("({})", CharPoly::from_roots(&[r]))).collect();
        let lin = lin.join("");
        if s.is_empty() {
            lin
        } else if rest.degree() > 0 {
            format!("{lin}{s}")
        } else {
            format!("{s}{lin}")
        }
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 && !(i == 0 && first) {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag) {
                (0, _) => write!(f, "{mag}")?,
                (_, 1) => {}
                _ => write!(f, "{mag}")?,
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    const Q: Field = Field::Rationals;

    #[test]
    fn x3_lattice_census() {
        let l = MultiArrangement::x3(&Q.from_i64(-1)).unwrap().lattice();
        assert_eq!(l.census(2), vec![(2, 6), (3, 3)]);
        assert_eq!(l.triple_points(), vec![vec![0, 1, 3], vec![0, 2, 4], vec![1, 2, 5]]);
        let chi = l.char_poly();
        assert_eq!(chi.coeffs_descending(), vec![1, -6, 12, -7]);
        assert_eq!(chi.to_string(), "t^3 - 6t^2 + 12t - 7");
        assert_eq!(chi.factored(), "(t - 1)(t^2 - 5t + 7)");
        assert_eq!(chi.split_roots(), None);
    }

    #[test]
    fn boolean_lattice() {
        let a = MultiArrangement::from_integer_forms(Q, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let l = a.lattice();
        assert!(l.flats_of_rank(2).all(|f| f.mobius == 1));
        assert_eq!(l.char_poly(), CharPoly::from_roots(&[1, 1, 1]));
        assert_eq!(l.char_poly().factored(), "(t - 1)(t - 1)(t - 1)");
    }

    #[test]
    fn root_extraction() {
        let p = CharPoly::from_roots(&[1, 2, 3]);
        assert_eq!(p.split_roots(), Some(vec![1, 2, 3]));
        let p = CharPoly::from_roots(&[0, -4, 6]);
        assert_eq!(p.split_roots(), Some(vec![-4, 0, 6]));
        assert_eq!(CharPoly::new(vec![7, -5, 1]).integer_roots().0, Vec::<i64>::new());
        assert_eq!(CharPoly::new(vec![0]).to_string(), "0");
        assert_eq!(CharPoly::new(vec![-1, 0, 1]).to_string(), "t^2 - 1");
    }

    #[test]
    fn chi_vanishes_at_one() {
        for alpha in [-1, 2, 3] {
            let chi = MultiArrangement::x3(&Q.from_i64(alpha)).unwrap().lattice().char_poly();
            assert_eq!(chi.eval(1), 0);
        }
    }
}
