//! Graded pieces of `D(A, m)` and their minimal generators.

use std::collections::HashMap;

use super::Derivation;
use crate::algebra::matrix::{kernel_in, rref_rows};
use crate::algebra::{monomials_of_degree, Matrix, Monomial, PolyRing, Polynomial, Scalar};
use crate::arrangement::MultiArrangement;

/// Linear conditions cutting out `D(A, m)_d` inside `S_d^ℓ`.
///
/// For a form `α` with multiplicity `m`, substitute `x ↦ T x` where `T` sends
/// `α` to the first variable; `α^m | θ(α)` then says that every monomial of
/// `θ(α)(T x)` with first exponent below `m` has coefficient zero. Coordinate
/// forms give conditions that pin single unknowns to zero, so those unknowns
/// are dropped before solving.
struct System {
    nvars: usize,
    n: usize,
    free: Vec<usize>,
    rows: Vec<Vec<Scalar>>,
}

fn build_system(a: &MultiArrangement, d: u32) -> System {
    let nvars = a.dim();
    let field = a.field();
    let mons = monomials_of_degree(nvars, d);
    let n = mons.len();
    let mut fixed = vec![false; nvars * n];
    let mut general = Vec::new();
    for (i, form) in a.forms().iter().enumerate() {
        let m = a.multiplicities()[i];
        let support: Vec<usize> = (0..nvars).filter(|&k| !form[k].is_zero()).collect();
        if support.len() == 1 {
            let k = support[0];
            for (idx, mono) in mons.iter().enumerate() {
                if u32::from(mono.exponent(k)) < m {
                    fixed[k * n + idx] = true;
                }
            }
        } else {
            general.push(i);
        }
    }
    let free: Vec<usize> = (0..nvars * n).filter(|&p| !fixed[p]).collect();
    let mut position = vec![usize::MAX; nvars * n];
    for (r, &p) in free.iter().enumerate() {
        position[p] = r;
    }

    let ring = a.ring();
    let mut rows = Vec::new();
    for i in general {
        let form = a.form(i);
        let m = a.multiplicities()[i];
        let images = sending_to_first_variable(&ring, form);
        let targets: Vec<usize> = (0..n).filter(|&t| u32::from(mons[t].exponent(0)) < m).collect();
        if targets.is_empty() {
            continue;
        }
        let mut block = vec![vec![field.zero(); free.len()]; targets.len()];
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![ring.one(), p.clone()]).collect();
        for (mu_idx, mu) in mons.iter().enumerate() {
            let cols: Vec<(usize, &Scalar)> = (0..nvars)
                .filter(|&j| !form[j].is_zero() && position[j * n + mu_idx] != usize::MAX)
                .map(|j| (position[j * n + mu_idx], &form[j]))
                .collect();
            if cols.is_empty() {
                continue;
            }
            let image = monomial_image(&ring, mu, &images, &mut powers);
            for (row, &t) in block.iter_mut().zip(&targets) {
                let c = image.coefficient(&mons[t]);
                if c.is_zero() {
                    continue;
                }
                for &(col, a_j) in &cols {
                    row[col] = &row[col] + &(a_j * &c);
                }
            }
        }
        rows.extend(block.into_iter().filter(|r| r.iter().any(|c| !c.is_zero())));
    }
    System { nvars, n, free, rows }
}

/// Images of the variables under `T = B^{-1}`, where `B` has rows `α` and the
/// standard vectors off the pivot of `α`; then `α(T x) = x_1`.
fn sending_to_first_variable(ring: &PolyRing, form: &[Scalar]) -> Vec<Polynomial> {
    let field = ring.field();
    let nvars = form.len();
    let pivot = form.iter().position(|c| !c.is_zero()).expect("nonzero form");
    let mut b = vec![form.to_vec()];
    for k in (0..nvars).filter(|&k| k != pivot) {
        let mut e = vec![field.zero(); nvars];
        e[k] = field.one();
        b.push(e);
    }
    let t = Matrix::from_rows(b).inverse().expect("invertible by construction");
    (0..nvars).map(|i| ring.linear_form(t.row(i))).collect()
}

fn monomial_image(
    ring: &PolyRing,
    mu: &Monomial,
    images: &[Polynomial],
    powers: &mut [Vec<Polynomial>],
) -> Polynomial {
    let mut acc = ring.one();
    for (i, pw) in powers.iter_mut().enumerate() {
        let e = mu.exponent(i) as usize;
        while pw.len() <= e {
            let next = &pw[pw.len() - 1] * &images[i];
            pw.push(next);
        }
        if e > 0 {
            acc = &acc * &pw[e];
        }
    }
    acc
}

/// Echelon basis of `D(A, m)_d` as coefficient vectors.
pub(crate) fn component_vectors(a: &MultiArrangement, d: u32) -> Vec<Vec<Scalar>> {
    let sys = build_system(a, d);
    let field = a.field();
    let kernel = kernel_in(field, &sys.rows, sys.free.len());
    kernel
        .into_iter()
        .map(|k| {
            let mut v = vec![field.zero(); sys.nvars * sys.n];
            for (x, &p) in k.into_iter().zip(&sys.free) {
                v[p] = x;
            }
            v
        })
        .collect()
}

/// Echelon basis of the degree-`d` piece `D(A, m)_d`.
pub fn degree_component(a: &MultiArrangement, d: u32) -> Vec<Derivation> {
    let ring = a.ring();
    component_vectors(a, d).iter().map(|v| Derivation::from_vector(&ring, d, v)).collect()
}

/// `dim D(A, m)_d` for `d = 0..=d_max`.
pub fn hilbert_function(a: &MultiArrangement, d_max: u32) -> Vec<usize> {
    (0..=d_max).map(|d| component_vectors(a, d).len()).collect()
}

/// Walks the degrees upward, producing new minimal generators in each.
pub(crate) struct Stepper<'a> {
    a: &'a MultiArrangement,
    ring: PolyRing,
    next_degree: u32,
    prev: Vec<Vec<Scalar>>,
}

pub(crate) struct Step {
    pub degree: u32,
    pub dimension: usize,
    pub generators: Vec<Derivation>,
}

impl<'a> Stepper<'a> {
    pub fn new(a: &'a MultiArrangement) -> Self {
        Stepper { a, ring: a.ring(), next_degree: 0, prev: Vec::new() }
    }

    pub fn step(&mut self) -> Step {
        let d = self.next_degree;
        self.next_degree += 1;
        let basis = component_vectors(self.a, d);
        let nvars = self.a.dim();
        let mut image = Vec::new();
        if d > 0 && !self.prev.is_empty() {
            let prev_mons = monomials_of_degree(nvars, d - 1);
            let mons = monomials_of_degree(nvars, d);
            let index: HashMap<Monomial, usize> = mons.iter().enumerate().map(|(i, m)| (*m, i)).collect();
            let (np, n) = (prev_mons.len(), mons.len());
            let field = self.a.field();
            for v in &self.prev {
                for k in 0..nvars {
                    let shift: Vec<usize> = prev_mons.iter().map(|m| index[&m.mul(&Monomial::var(k))]).collect();
                    let mut out = vec![field.zero(); nvars * n];
                    for j in 0..nvars {
                        for (idx, &to) in shift.iter().enumerate() {
                            out[j * n + to] = v[j * np + idx].clone();
                        }
                    }
                    image.push(out);
                }
            }
        }
        let width = nvars * crate::algebra::monomial_count(nvars, i64::from(d));
        let pivots = rref_rows(&mut image, width);
        let mut rest: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|b| reduce(b, &image, &pivots))
            .filter(|r| r.iter().any(|c| !c.is_zero()))
            .collect();
        rref_rows(&mut rest, width);
        let generators = rest.iter().map(|v| Derivation::from_vector(&self.ring, d, v)).collect();
        let dimension = basis.len();
        self.prev = basis;
        Step { degree: d, dimension, generators }
    }
}

fn reduce(v: &[Scalar], rows: &[Vec<Scalar>], pivots: &[usize]) -> Vec<Scalar> {
    let mut r = v.to_vec();
    for (row, &p) in rows.iter().zip(pivots) {
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
    r
}

/// Minimal generators of `D(A, m)` in degrees `0..=d_max`.
#[derive(Clone, Debug)]
pub struct GeneratorScan {
    pub generators: Vec<Derivation>,
    pub hilbert: Vec<usize>,
}

impl GeneratorScan {
    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().filter_map(Derivation::degree).collect()
    }
}

/// In each degree, completes `S_1 · D_{d-1}` to a basis of `D_d` by echelon
/// selection; the completing vectors are the new generators.
pub fn minimal_generators(a: &MultiArrangement, d_max: u32) -> GeneratorScan {
    let mut stepper = Stepper::new(a);
    let mut generators = Vec::new();
    let mut hilbert = Vec::new();
    for _ in 0..=d_max {
        let step = stepper.step();
        hilbert.push(step.dimension);
        generators.extend(step.generators);
    }
    GeneratorScan { generators, hilbert }
}
