//! Sparse multivariate polynomials in at most four variables.
//!
//! Terms are kept sorted in descending graded-lexicographic order with no
//! zero coefficients, so structural equality is mathematical equality and
//! printing is canonical. The text format is a signed sum of terms such as
//! `x^2 - 2*x*y + 1/2*y^2`; [`PolyRing::parse`] accepts that format (plus
//! parentheses and integer powers of parenthesized groups) and `Display`
//! emits it.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{Field, Scalar};
use super::matrix::Matrix;
use crate::error::{Error, Result};

pub const MAX_VARS: usize = 4;

/// Exponent vector. Ordered by total degree, then lexicographically with the
/// first variable largest.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u16; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial(e)
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut e = [0; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = other.0[i] - self.0[i];
        }
        Monomial(e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = [0; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.0[i] + other.0[i];
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Monomials of total degree `d` in `nvars` variables, descending grlex.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut [u16; MAX_VARS], out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur[i] = left as u16;
            out.push(Monomial(*cur));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(nvars, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(nvars, 0, d, &mut [0; MAX_VARS], &mut out);
    out
}

/// Number of monomials of degree `d` in `nvars` variables (0 for negative `d`).
pub fn monomial_count(nvars: usize, d: i64) -> usize {
    if d < 0 {
        return 0;
    }
    if nvars == 0 {
        return usize::from(d == 0);
    }
    // C(d + n - 1, n - 1)
    let (d, k) = (d as u128, nvars as u128 - 1);
    let mut num = 1u128;
    for i in 1..=k {
        num = num * (d + i) / i;
    }
    num as usize
}

/// Field plus ordered variable names.
#[derive(Clone, Debug)]
pub struct PolyRing {
    field: Field,
    vars: Arc<[String]>,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && (Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars)
    }
}

impl Eq for PolyRing {}

const STANDARD_VARS: [&str; MAX_VARS] = ["x", "y", "z", "w"];

impl PolyRing {
    pub fn new<S: AsRef<str>>(field: Field, vars: &[S]) -> Result<Self> {
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables(vars.len()));
        }
        let names: Vec<String> = vars.iter().map(|v| v.as_ref().trim().to_string()).collect();
        for (i, v) in names.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidInput(format!("bad variable name {v:?}")));
            }
            if names[..i].contains(v) {
                return Err(Error::InvalidInput(format!("duplicate variable name {v:?}")));
            }
        }
        Ok(PolyRing { field, vars: names.into() })
    }

    /// The ring over `field` in the first `n` of `x, y, z, w`.
    pub fn standard(field: Field, n: usize) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::TooManyVariables(n));
        }
        Self::new(field, &STANDARD_VARS[..n])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial { ring: self.clone(), terms: Vec::new() }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: Scalar) -> Polynomial {
        self.monomial(Monomial::one(), c)
    }

    pub fn monomial(&self, m: Monomial, c: Scalar) -> Polynomial {
        assert_eq!(c.field(), self.field, "coefficient from another field");
        if c.is_zero() {
            return self.zero();
        }
        Polynomial { ring: self.clone(), terms: vec![(m, c)] }
    }

    pub fn var(&self, i: usize) -> Polynomial {
        assert!(i < self.nvars(), "variable index out of range");
        self.monomial(Monomial::var(i), self.field.one())
    }

    /// `sum_i coeffs[i] * x_i`.
    pub fn linear_form(&self, coeffs: &[Scalar]) -> Polynomial {
        assert_eq!(coeffs.len(), self.nvars());
        let mut terms: Vec<(Monomial, Scalar)> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial::var(i), c.clone()))
            .collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial { ring: self.clone(), terms }
    }

    /// Homogeneous polynomial of degree `d` from coefficients on
    /// [`monomials_of_degree`].
    pub fn from_coefficients(&self, d: u32, coeffs: &[Scalar]) -> Polynomial {
        let mons = monomials_of_degree(self.nvars(), d);
        assert_eq!(mons.len(), coeffs.len());
        let terms = mons
            .into_iter()
            .zip(coeffs.iter())
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, c.clone()))
            .collect();
        Polynomial { ring: self.clone(), terms }
    }

    fn from_map(&self, map: HashMap<Monomial, Scalar>) -> Polynomial {
        let mut terms: Vec<(Monomial, Scalar)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial { ring: self.clone(), terms }
    }

    pub fn parse(&self, s: &str) -> Result<Polynomial> {
        let mut p = Parser { ring: self, src: s.as_bytes(), pos: 0 };
        let poly = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(poly)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: PolyRing,
    terms: Vec<(Monomial, Scalar)>,
}

/// Binary operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
}

/// Checked sum or product of two polynomials over the same ring.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: PolyOp) -> Result<Polynomial> {
    a.check_ring(b)?;
    Ok(match op {
        PolyOp::Add => a + b,
        PolyOp::Mul => a * b,
    })
}

impl Polynomial {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring.field != other.ring.field {
            return Err(Error::FieldMismatch(self.ring.field.to_string(), other.ring.field.to_string()));
        }
        if self.ring != other.ring {
            return Err(Error::VariableMismatch(self.ring.vars.join(","), other.ring.vars.join(",")));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Monomial::one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(self.field().zero()),
            [(m, c)] if *m == Monomial::one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.field().zero())
    }

    /// Coefficients on [`monomials_of_degree`]`(nvars, d)`.
    pub fn coefficients_in_degree(&self, d: u32) -> Vec<Scalar> {
        monomials_of_degree(self.nvars(), d).iter().map(|m| self.coefficient(m)).collect()
    }

    /// For a linear form, its coefficient vector.
    pub fn linear_coefficients(&self) -> Option<Vec<Scalar>> {
        if self.terms.iter().any(|(m, _)| m.degree() != 1) {
            return None;
        }
        Some((0..self.nvars()).map(|i| self.coefficient(&Monomial::var(i))).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Ring map sending variable `i` to `images[i]`; the result lives in the
    /// images' ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars() {
            return Err(Error::Dimension(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Ok(self.clone()),
        };
        for p in images {
            p.check_ring(&images[0])?;
        }
        if target.field != self.field() {
            return Err(Error::FieldMismatch(self.field().to_string(), target.field.to_string()));
        }
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![target.one(), p.clone()]).collect();
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exponent(i) as usize;
                while pw.len() <= e {
                    let next = &pw[pw.len() - 1] * &images[i];
                    pw.push(next);
                }
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// `f(T x)`: variable `i` becomes `sum_j T[i][j] x_j`. `T` must be invertible.
    pub fn substitute_linear(&self, t: &Matrix<Scalar>) -> Result<Polynomial> {
        let n = self.nvars();
        if t.rows() != n || t.cols() != n {
            return Err(Error::Dimension(format!(
                "substitution matrix is {}x{}, ring has {n} variables",
                t.rows(),
                t.cols()
            )));
        }
        if t.det()?.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let images: Vec<Polynomial> = (0..n).map(|i| self.ring.linear_form(t.row(i))).collect();
        self.substitute(&images)
    }

    /// Division with remainder by a single divisor in grlex order. A single
    /// polynomial is a Groebner basis of the ideal it generates, so the
    /// remainder vanishes exactly when `g` divides `self`.
    pub fn div_rem(&self, g: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_ring(g)?;
        let (lm, lc) = match g.leading_term() {
            Some((m, c)) => (*m, c.clone()),
            None => return Err(Error::InvalidInput("division by the zero polynomial".into())),
        };
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        let mut p = self.clone();
        let mut q: HashMap<Monomial, Scalar> = HashMap::new();
        let mut r: HashMap<Monomial, Scalar> = HashMap::new();
        while let Some((m, c)) = p.terms.first().cloned() {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = &c * &lc_inv;
                p = &p - &g.mul_monomial(&qm, &qc);
                q.insert(qm, qc);
            } else {
                p.terms.remove(0);
                r.insert(m, c);
            }
        }
        Ok((self.ring.from_map(q), self.ring.from_map(r)))
    }

    pub fn is_divisible_by(&self, g: &Polynomial) -> Result<bool> {
        Ok(self.div_rem(g)?.1.is_zero())
    }

    /// `Some(k)` when `self = k * other` for a scalar `k` (possibly zero).
    pub fn scalar_ratio(&self, other: &Polynomial) -> Option<Scalar> {
        if other.is_zero() {
            return if self.is_zero() { Some(self.field().one()) } else { None };
        }
        if self.is_zero() {
            return Some(self.field().zero());
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let k = &self.terms[0].1 / &other.terms[0].1;
        let same = self
            .terms
            .iter()
            .zip(other.terms.iter())
            .all(|((m1, c1), (m2, c2))| m1 == m2 && *c1 == c2 * &k);
        same.then_some(k)
    }

    fn merge(&self, rhs: &Polynomial, negate: bool) -> Polynomial {
        assert!(
            self.ring == rhs.ring,
            "polynomials from different rings: [{}] over {} vs [{}] over {}",
            self.ring.vars.join(","),
            self.ring.field,
            rhs.ring.vars.join(","),
            rhs.ring.field
        );
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < rhs.terms.len() {
            let ord = match (self.terms.get(i), rhs.terms.get(j)) {
                (Some(a), Some(b)) => b.0.cmp(&a.0),
                (Some(_), None) => Ordering::Less,
                (None, _) => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (m, c) = &rhs.terms[j];
                    out.push((*m, if negate { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &self.terms[i].1 - &rhs.terms[j].1
                    } else {
                        &self.terms[i].1 + &rhs.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.ring == rhs.ring, "polynomials from different rings");
        if self.is_zero() || rhs.is_zero() {
            return self.ring.zero();
        }
        let mut map: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let prod = c1 * c2;
                map.entry(m1.mul(m2))
                    .and_modify(|c| *c = &*c + &prod)
                    .or_insert(prod);
            }
        }
        self.ring.from_map(map)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, name) in self.ring.vars.iter().enumerate() {
                match m.exponent(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

struct Parser<'a> {
    ring: &'a PolyRing,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at byte {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.ring.zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if sign { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            e.parse().map_err(|_| self.error("exponent too large"))
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                let e = self.exponent()?;
                Ok(inner.pow(e))
            }
            Some(c) if c.is_ascii_digit() => {
                let mut text = self.integer()?.to_string();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    text.push('/');
                    text.push_str(self.integer()?);
                }
                let c = self.ring.field.parse_scalar(&text)?;
                let e = self.exponent()?;
                Ok(self.ring.constant(c.pow(e)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let i = self
                    .ring
                    .vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| self.error(&format!("unknown variable {name:?}")))?;
                let e = self.exponent()?;
                let mut exps = [0u16; MAX_VARS];
                exps[i] = u16::try_from(e).map_err(|_| self.error("exponent too large"))?;
                Ok(self.ring.monomial(Monomial(exps), self.ring.field.one()))
            }
            _ => Err(self.error("expected a term")),
        }
    }
}
