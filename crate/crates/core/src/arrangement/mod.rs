//! Central multi-arrangements of hyperplanes.

mod lattice;
mod restriction;

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Field, Matrix, PolyRing, Polynomial, Scalar, MAX_VARS};
use crate::error::{Error, Result};

pub use lattice::{CharPoly, Flat, IntersectionLattice};
pub use restriction::Restriction;

/// A finite list of pairwise non-proportional linear forms, each carrying a
/// positive multiplicity.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiArrangement {
    field: Field,
    vars: Vec<String>,
    forms: Vec<Vec<Scalar>>,
    mult: Vec<u32>,
}

const STANDARD_VARS: [&str; MAX_VARS] = ["x", "y", "z", "w"];

impl MultiArrangement {
    pub fn new(field: Field, vars: Vec<String>, forms: Vec<Vec<Scalar>>, mult: Vec<u32>) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::InvalidInput("an arrangement needs at least one variable".into()));
        }
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables(vars.len()));
        }
        // Validates names as a side effect.
        PolyRing::new(field, &vars)?;
        if forms.len() != mult.len() {
            return Err(Error::InvalidInput(format!(
                "{} forms but {} multiplicities",
                forms.len(),
                mult.len()
            )));
        }
        if let Some(i) = mult.iter().position(|&m| m == 0) {
            return Err(Error::InvalidInput(format!("multiplicity of form {i} is zero")));
        }
        for (i, f) in forms.iter().enumerate() {
            if f.len() != vars.len() {
                return Err(Error::Dimension(format!(
                    "form {i} has {} coefficients, expected {}",
                    f.len(),
                    vars.len()
                )));
            }
            if let Some(c) = f.iter().find(|c| c.field() != field) {
                return Err(Error::FieldMismatch(c.field().to_string(), field.to_string()));
            }
            if f.iter().all(Scalar::is_zero) {
                return Err(Error::InvalidInput(format!("form {i} is zero")));
            }
        }
        for i in 0..forms.len() {
            for j in 0..i {
                if proportional(&forms[i], &forms[j]) {
                    return Err(Error::InvalidInput(format!("forms {j} and {i} define the same hyperplane")));
                }
            }
        }
        Ok(MultiArrangement { field, vars, forms, mult })
    }

    /// Simple arrangement in the standard variables `x, y, z, w`.
    pub fn simple(field: Field, forms: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = forms.first().map_or(0, Vec::len);
        let mult = vec![1; forms.len()];
        Self::new(field, standard_vars(n)?, forms, mult)
    }

    /// Simple arrangement from integer coefficient rows.
    pub fn from_integer_forms(field: Field, forms: &[&[i64]]) -> Result<Self> {
        let forms = forms.iter().map(|f| f.iter().map(|&c| field.from_i64(c)).collect()).collect();
        Self::simple(field, forms)
    }

    /// The moduli arrangement `x, y, z, x - a*y, x + z, y + z`.
    pub fn x3(alpha: &Scalar) -> Result<Self> {
        check_alpha(alpha)?;
        let f = alpha.field();
        let (o, z) = (f.one(), f.zero());
        let forms = vec![
            vec![o.clone(), z.clone(), z.clone()],
            vec![z.clone(), o.clone(), z.clone()],
            vec![z.clone(), z.clone(), o.clone()],
            vec![o.clone(), -alpha, z.clone()],
            vec![o.clone(), z.clone(), o.clone()],
            vec![z, o.clone(), o],
        ];
        Self::simple(f, forms)
    }

    /// Replaces the multiplicities.
    pub fn with_multiplicities(&self, mult: &[u32]) -> Result<Self> {
        Self::new(self.field, self.vars.clone(), self.forms.clone(), mult.to_vec())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn forms(&self) -> &[Vec<Scalar>] {
        &self.forms
    }

    pub fn form(&self, i: usize) -> &[Scalar] {
        &self.forms[i]
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    /// `|m|`, the sum of the multiplicities.
    pub fn total_multiplicity(&self) -> u32 {
        self.mult.iter().sum()
    }

    pub fn is_simple(&self) -> bool {
        self.mult.iter().all(|&m| m == 1)
    }

    pub fn ring(&self) -> PolyRing {
        PolyRing::new(self.field, &self.vars).expect("validated at construction")
    }

    pub fn form_polynomial(&self, i: usize) -> Polynomial {
        self.ring().linear_form(&self.forms[i])
    }

    /// `Q(A, m)`, the product of the forms raised to their multiplicities.
    pub fn defining_polynomial(&self) -> Polynomial {
        let ring = self.ring();
        let mut q = ring.one();
        for (i, &m) in self.mult.iter().enumerate() {
            q = &q * &ring.linear_form(&self.forms[i]).pow(m);
        }
        q
    }

    /// Rank of the span of the forms.
    pub fn rank(&self) -> usize {
        if self.forms.is_empty() {
            return 0;
        }
        Matrix::from_rows(self.forms.clone()).rank()
    }

    /// Index of the hyperplane defined by `form`, if present.
    pub fn position(&self, form: &[Scalar]) -> Option<usize> {
        self.forms.iter().position(|f| proportional(f, form))
    }

    /// Applies the coordinate change `x -> T x` to every form (forms are row
    /// vectors, so each becomes `f * T`).
    pub fn transform(&self, t: &Matrix<Scalar>) -> Result<Self> {
        if t.rows() != self.dim() || t.cols() != self.dim() {
            return Err(Error::Dimension("transformation size does not match the arrangement".into()));
        }
        if t.det()?.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let forms = self
            .forms
            .iter()
            .map(|f| {
                let row = Matrix::from_rows(vec![f.clone()]);
                row.mul(t).map(|r| r.row(0).to_vec())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.field, self.vars.clone(), forms, self.mult.clone())
    }

    /// Sub-arrangement on the given indices, keeping multiplicities.
    pub fn subarrangement(&self, indices: &[usize]) -> Result<Self> {
        let mut forms = Vec::with_capacity(indices.len());
        let mut mult = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= self.len() {
                return Err(Error::InvalidInput(format!("hyperplane index {i} out of range")));
            }
            forms.push(self.forms[i].clone());
            mult.push(self.mult[i]);
        }
        Self::new(self.field, self.vars.clone(), forms, mult)
    }

    /// Rewrites the forms in a basis of their span, giving an essential
    /// arrangement of dimension `rank` in standard variables. The basis is the
    /// reduced row echelon form of the forms.
    pub fn essentialize(&self) -> Result<Self> {
        let (_, pivots) = Matrix::from_rows(self.forms.clone()).rref();
        let r = pivots.len();
        let forms = self
            .forms
            .iter()
            .map(|f| pivots.iter().map(|&p| f[p].clone()).collect())
            .collect();
        // Coordinates in the echelon basis are the entries at pivot columns.
        Self::new(self.field, standard_vars(r)?, forms, self.mult.clone())
    }

    pub fn to_file(&self) -> ArrangementFile {
        ArrangementFile {
            field: self.field.to_string(),
            vars: self.vars.clone(),
            forms: self.forms.iter().map(|f| f.iter().map(scalar_to_json).collect()).collect(),
            mult: self.mult.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: ArrangementFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_arrangement()
    }
}

/// On-disk JSON layout: `{"field":"Q","vars":[..],"forms":[[..]],"mult":[..]}`.
/// Coefficients are JSON integers, or strings such as `"-1/2"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub field: String,
    pub vars: Vec<String>,
    pub forms: Vec<Vec<Value>>,
    #[serde(default)]
    pub mult: Vec<u32>,
}

impl ArrangementFile {
    pub fn into_arrangement(self) -> Result<MultiArrangement> {
        let field: Field = self.field.parse()?;
        let forms = self
            .forms
            .iter()
            .map(|f| f.iter().map(|v| scalar_from_json(field, v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mult = if self.mult.is_empty() { vec![1; forms.len()] } else { self.mult };
        MultiArrangement::new(field, self.vars, forms, mult)
    }
}

fn scalar_to_json(s: &Scalar) -> Value {
    match s.to_i64() {
        Some(n) => Value::from(n),
        None => Value::from(s.to_string()),
    }
}

fn scalar_from_json(field: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(field.from_i64(i)),
            None => Err(Error::Parse(format!("coefficient {n} is not an integer"))),
        },
        Value::String(s) => field.parse_scalar(s),
        other => Err(Error::Parse(format!("unexpected coefficient {other}"))),
    }
}

impl fmt::Display for MultiArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.mult.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({})", self.form_polynomial(i))?;
            if *m != 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiArrangement[{}]{{{}}}", self.field, self)
    }
}

pub fn standard_vars(n: usize) -> Result<Vec<String>> {
    if n == 0 || n > MAX_VARS {
        return Err(Error::TooManyVariables(n));
    }
    Ok(STANDARD_VARS[..n].iter().map(|s| s.to_string()).collect())
}

/// Rejects the degenerate moduli values 0 and 1.
pub fn check_alpha(alpha: &Scalar) -> Result<()> {
    if alpha.is_zero() {
        return Err(Error::DegenerateAlpha("alpha = 0 makes x - alpha*y coincide with x".into()));
    }
    if alpha.is_one() {
        return Err(Error::DegenerateAlpha("alpha = 1 degenerates to the braid arrangement".into()));
    }
    Ok(())
}

/// Whether two nonzero vectors span the same line.
pub fn proportional(u: &[Scalar], v: &[Scalar]) -> bool {
    let Some(p) = u.iter().position(|c| !c.is_zero()) else {
        return v.iter().all(Scalar::is_zero);
    };
    if v[p].is_zero() {
        return false;
    }
    let r = &v[p] / &u[p];
    u.iter().zip(v).all(|(a, b)| &(a * &r) == b)
}

/// Scales a nonzero vector so its first nonzero entry is one.
pub fn normalize(v: &[Scalar]) -> Vec<Scalar> {
    match v.iter().find(|c| !c.is_zero()) {
        None => v.to_vec(),
        Some(lead) => {
            let inv = lead.inv().expect("nonzero");
            v.iter().map(|c| c * &inv).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn x3_forms() {
        let a = MultiArrangement::x3(&Q.from_i64(-1)).unwrap();
        let printed: Vec<String> = (0..6).map(|i| a.form_polynomial(i).to_string()).collect();
        assert_eq!(printed, ["x", "y", "z", "x + y", "x + z", "y + z"]);
        let f7 = Field::Prime(7);
        let b = MultiArrangement::x3(&f7.from_i64(2)).unwrap();
        assert_eq!(b.form_polynomial(3).to_string(), "x - 2*y");
        assert_eq!(b.form(3)[1], f7.from_i64(5));
    }

    #[test]
    fn degenerate_alpha() {
        assert!(matches!(MultiArrangement::x3(&Q.zero()), Err(Error::DegenerateAlpha(_))));
        assert!(matches!(MultiArrangement::x3(&Q.one()), Err(Error::DegenerateAlpha(_))));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(MultiArrangement::from_integer_forms(Q, &[&[1, 0], &[2, 0]]).is_err());
        assert!(MultiArrangement::from_integer_forms(Q, &[&[0, 0]]).is_err());
        let a = MultiArrangement::from_integer_forms(Q, &[&[1, 0], &[0, 1]]).unwrap();
        assert!(a.with_multiplicities(&[1, 0]).is_err());
        assert!(a.with_multiplicities(&[1]).is_err());
    }

    #[test]
    fn defining_polynomial() {
        let a = MultiArrangement::x3(&Q.from_i64(-1)).unwrap().with_multiplicities(&[2, 1, 1, 1, 1, 1]).unwrap();
        let q = a.defining_polynomial();
        assert_eq!(q.degree(), Some(7));
        assert_eq!(a.total_multiplicity(), 7);
    }

    #[test]
    fn json_round_trip() {
        let a = MultiArrangement::x3(&Q.from_i64(-1)).unwrap().with_multiplicities(&[2, 2, 2, 1, 1, 1]).unwrap();
        let s = a.to_json();
        assert_eq!(
            s,
            r#"{"field":"Q","vars":["x","y","z"],"forms":[[1,0,0],[0,1,0],[0,0,1],[1,1,0],[1,0,1],[0,1,1]],"mult":[2,2,2,1,1,1]}"#
        );
        assert_eq!(MultiArrangement::from_json(&s).unwrap(), a);
        let h = MultiArrangement::from_json(r#"{"field":"Fp:7","vars":["x","y"],"forms":[[1,"1/2"],[0,1]]}"#).unwrap();
        assert_eq!(h.form(0)[1], Field::Prime(7).from_i64(4));
        assert!(MultiArrangement::from_json(r#"{"field":"Q","vars":["x"],"forms":[[1.5]]}"#).is_err());
    }

    #[test]
    fn essentialize_drops_unused_directions() {
        let a = MultiArrangement::from_integer_forms(Q, &[&[1, 0, 0, 0], &[0, 1, 0, 1], &[1, 1, 0, 1]]).unwrap();
        let e = a.essentialize().unwrap();
        assert_eq!(e.dim(), 2);
        assert_eq!(e.rank(), 2);
        assert_eq!(e.lattice().char_poly(), a.lattice().char_poly().deflate(2));
    }
}
