//! Rank-4 free extensions of `(X₃(α), [n,n,n,1,1,1])` and their verification
//! by restriction to `w = 0` plus local freeness along it.

mod trace;

use serde::Serialize;

use crate::algebra::{Field, Matrix, Scalar};
use crate::arrangement::{check_alpha, proportional, standard_vars, MultiArrangement, Restriction};
use crate::derivation::{decide_free_up_to, FreenessVerdict};
use crate::error::{Error, Result};
use crate::x3::{balanced_n, classify_predicted, decide_free_homological, multiplicative_order, Prediction};
use crate::yoshinaga::{grid_line_free, yoshinaga3, GridLineSpec, YoshinagaReport};

pub use trace::{combinatorial_exponents, terao_trace, TeraoTrace, TraceStep};

/// `α` of finite order `m` and orbit representatives `A₁, …, A_t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionSpec {
    pub alpha: Scalar,
    pub order: u64,
    pub constants: Vec<Scalar>,
}

impl ExtensionSpec {
    pub fn new(alpha: Scalar, constants: Vec<Scalar>) -> Result<Self> {
        check_alpha(&alpha)?;
        let field = alpha.field();
        let order = multiplicative_order(&alpha)
            .ok_or_else(|| Error::InvalidInput(format!("alpha = {alpha} is not a root of unity in {field}")))?;
        if constants.is_empty() {
            return Err(Error::InvalidInput("need at least one constant".into()));
        }
        if constants.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch("constants".into(), field.to_string()));
        }
        if constants.iter().any(Scalar::is_zero) {
            return Err(Error::InvalidInput("constants must be nonzero".into()));
        }
        let spec = ExtensionSpec { alpha, order, constants };
        let values = spec.orbit_values();
        for i in 0..values.len() {
            if values[..i].contains(&values[i]) {
                return Err(Error::InvalidInput(format!("constants share an alpha-orbit (value {})", values[i])));
            }
        }
        Ok(spec)
    }

    /// Picks the smallest field element of multiplicative order `m` as `α`.
    pub fn with_order(field: Field, m: u64, constants: Vec<Scalar>) -> Result<Self> {
        Self::new(element_of_order(field, m)?, constants)
    }

    pub fn t(&self) -> usize {
        self.constants.len()
    }

    /// `n = m·t`.
    pub fn n(&self) -> u32 {
        (self.order as usize * self.t()) as u32
    }

    /// `αʲ·Aᵢ` for `i = 1..t`, `j = 0..m-1`, in that nesting.
    pub fn orbit_values(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.n() as usize);
        for a in &self.constants {
            let mut v = a.clone();
            for _ in 0..self.order {
                out.push(v.clone());
                v = &v * &self.alpha;
            }
        }
        out
    }
}

/// An element of multiplicative order `m` other than 1.
pub fn element_of_order(field: Field, m: u64) -> Result<Scalar> {
    if m < 2 {
        return Err(Error::DegenerateAlpha("order 1 forces alpha = 1".into()));
    }
    let found = match field.elements() {
        None => (m == 2).then(|| field.from_i64(-1)),
        Some(all) => all.into_iter().find(|a| multiplicative_order(a) == Some(m)),
    };
    found.ok_or_else(|| Error::InvalidInput(format!("{field} has no element of order {m}")))
}

/// The forms `x − αʲAᵢw`, `y − αʲAᵢw`, `z + αʲAᵢw`, then `x − αy, x + z, y + z, w`,
/// in variables `x, y, z, w`.
pub fn build_extension(spec: &ExtensionSpec) -> Result<MultiArrangement> {
    let f = spec.alpha.field();
    let (o, z) = (f.one(), f.zero());
    let values = spec.orbit_values();
    let mut forms = Vec::with_capacity(3 * values.len() + 4);
    for v in &values {
        forms.push(vec![o.clone(), z.clone(), z.clone(), -v]);
    }
    for v in &values {
        forms.push(vec![z.clone(), o.clone(), z.clone(), -v]);
    }
    for v in &values {
        forms.push(vec![z.clone(), z.clone(), o.clone(), v.clone()]);
    }
    forms.push(vec![o.clone(), -&spec.alpha, z.clone(), z.clone()]);
    forms.push(vec![o.clone(), z.clone(), o.clone(), z.clone()]);
    forms.push(vec![z.clone(), o.clone(), o.clone(), z.clone()]);
    forms.push(vec![z.clone(), z.clone(), z, o]);
    let mult = vec![1; forms.len()];
    MultiArrangement::new(f, standard_vars(4)?, forms, mult)
}

/// Applies `x ↦ x + s₁w`, `y ↦ y + s₂w`, `z ↦ z + s₃w`.
pub fn translate(a: &MultiArrangement, s: &[Scalar; 3]) -> Result<MultiArrangement> {
    if a.dim() != 4 {
        return Err(Error::InvalidInput(format!("expected 4 variables, got {}", a.dim())));
    }
    let mut t = Matrix::identity(a.field(), 4);
    for (i, si) in s.iter().enumerate() {
        t.set(i, 3, si.clone());
    }
    a.transform(&t)
}

/// Translates so that the last three moduli forms become exactly `x − αy`,
/// `x + z` and `y + z`. Returns the translated arrangement and the shift used.
pub fn normalize_translation(a: &MultiArrangement, alpha: &Scalar) -> Result<(MultiArrangement, [Scalar; 3])> {
    check_alpha(alpha)?;
    if a.dim() != 4 {
        return Err(Error::InvalidInput(format!("expected 4 variables, got {}", a.dim())));
    }
    let f = a.field();
    let offset = |target: [Scalar; 3], lead: usize| -> Result<Scalar> {
        let form = a
            .forms()
            .iter()
            .find(|g| !g[lead].is_zero() && proportional(&g[..3], &target))
            .ok_or_else(|| Error::InvalidInput(format!("no form with linear part {:?}", target)))?;
        Ok(&form[3] / &(&form[lead] / &target[lead]))
    };
    let (o, z) = (f.one(), f.zero());
    let big_a = offset([o.clone(), -alpha, z.clone()], 0)?;
    let big_b = offset([o.clone(), z.clone(), o.clone()], 0)?;
    let big_c = offset([z, o.clone(), o], 1)?;
    // s₁ − αs₂ = −A, s₁ + s₃ = −B, s₂ + s₃ = −C.
    let m = Matrix::from_rows(vec![
        vec![f.one(), -alpha, f.zero()],
        vec![f.one(), f.zero(), f.one()],
        vec![f.zero(), f.one(), f.one()],
    ]);
    let s = m.inverse()?.mul_vec(&[-&big_a, -&big_b, -&big_c]);
    let s = [s[0].clone(), s[1].clone(), s[2].clone()];
    Ok((translate(a, &s)?, s))
}

/// How the restriction onto `H₀` matches the `X₃` moduli.
#[derive(Clone, Debug, Serialize)]
pub struct RestrictionCheck {
    pub multiplicities: Vec<u32>,
    pub fibers: Vec<Vec<usize>>,
    /// Restricted hyperplane playing `H₁, …, H₆`.
    pub labeling: Option<[usize; 6]>,
    pub alpha: Option<Scalar>,
    /// Multiplicities in `X₃` order.
    pub x3_multiplicities: Option<Vec<u32>>,
    pub n: Option<u32>,
    pub prediction: Option<Prediction>,
    /// Freeness of the simple restriction `X₃(α')`, which is never free.
    pub simple_restriction_free: Option<bool>,
    pub free: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GridCheck {
    pub spec: GridLineSpec,
    pub q: usize,
    pub free: bool,
}

/// One rank-3 flat containing `H₀`.
#[derive(Clone, Debug, Serialize)]
pub struct LocalCheck {
    pub hyperplanes: Vec<usize>,
    pub restriction_multiplicities: Vec<u32>,
    pub grid: Option<GridCheck>,
    pub yoshinaga: YoshinagaReport,
    pub free: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub hyperplanes: usize,
    pub h0: usize,
    pub restriction: RestrictionCheck,
    pub local: Vec<LocalCheck>,
    pub locally_free: bool,
    /// Grid-line and rank-3 verdicts agree on every grid-shaped flat.
    pub methods_agree: bool,
    pub saito: Option<FreenessVerdict>,
    pub free: bool,
}

impl ExtensionReport {
    pub fn failed_flats(&self) -> impl Iterator<Item = &LocalCheck> {
        self.local.iter().filter(|l| !l.free)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Also search for a Saito basis of the whole arrangement in 4 variables.
    pub full_saito: bool,
}

pub fn verify_extension(a: &MultiArrangement, h0: usize) -> Result<ExtensionReport> {
    verify_extension_with(a, h0, VerifyOptions::default())
}

/// Free iff the Ziegler restriction onto `H₀` is a free `X₃` multiplicity and
/// every rank-3 localization containing `H₀` is free.
pub fn verify_extension_with(a: &MultiArrangement, h0: usize, opts: VerifyOptions) -> Result<ExtensionReport> {
    check_extension_input(a, h0)?;
    let restriction = restriction_check(a, h0)?;
    let local = local_checks(a, h0)?;
    let locally_free = local.iter().all(|l| l.free);
    let methods_agree = local.iter().all(|l| l.grid.as_ref().is_none_or(|g| g.free == l.yoshinaga.free));
    let saito = if opts.full_saito { Some(decide_free_up_to(a, a.len() as u32)?) } else { None };
    Ok(ExtensionReport {
        hyperplanes: a.len(),
        h0,
        free: restriction.free && locally_free,
        restriction,
        local,
        locally_free,
        methods_agree,
        saito,
    })
}

pub(crate) fn check_extension_input(a: &MultiArrangement, h0: usize) -> Result<()> {
    if h0 >= a.len() {
        return Err(Error::InvalidInput(format!("H0 index {h0} is not a hyperplane of the arrangement")));
    }
    if a.dim() != 4 || a.rank() != 4 {
        return Err(Error::InvalidInput("expected an essential arrangement in 4 variables".into()));
    }
    if !a.is_simple() {
        return Err(Error::InvalidInput("expected a simple arrangement".into()));
    }
    Ok(())
}

/// Identifies `H₁..H₆` of an `X₃`-shaped arrangement from its triple points:
/// `H₁, H₂, H₃` lie on two triple points each (kept in index order), and
/// `H₄, H₅, H₆` complete `{H₁,H₂}`, `{H₁,H₃}`, `{H₂,H₃}`.
pub fn x3_labeling(r: &MultiArrangement) -> Option<[usize; 6]> {
    if r.len() != 6 || r.dim() != 3 || r.rank() != 3 {
        return None;
    }
    let lattice = r.lattice();
    if lattice.census(2) != [(2, 6), (3, 3)] {
        return None;
    }
    let triples = lattice.triple_points();
    let count = |h: usize| triples.iter().filter(|t| t.contains(&h)).count();
    let doubles: Vec<usize> = (0..6).filter(|&h| count(h) == 2).collect();
    if doubles.len() != 3 {
        return None;
    }
    let third = |p: usize, q: usize| {
        let t = triples.iter().find(|t| t.contains(&p) && t.contains(&q))?;
        t.iter().copied().find(|&h| h != p && h != q)
    };
    let (d1, d2, d3) = (doubles[0], doubles[1], doubles[2]);
    Some([d1, d2, d3, third(d1, d2)?, third(d1, d3)?, third(d2, d3)?])
}

/// The moduli parameter of an `X₃`-shaped arrangement under a labeling.
/// Writing `H₄ = c₁f₁ + c₂f₂`, `H₅ = e₁f₁ + e₃f₃`, `H₆ = d₂f₂ + d₃f₃` in the
/// basis `f₁, f₂, f₃`, the coordinates `x = e₁f₁`, `y = (e₃d₂/d₃)f₂`, `z = e₃f₃`
/// turn these into `x − α'y`, `x + z`, `y + z` with `α' = −c₂d₃e₁ / (c₁e₃d₂)`.
pub fn x3_alpha(r: &MultiArrangement, labeling: &[usize; 6]) -> Result<Scalar> {
    let basis = Matrix::from_rows(labeling[..3].iter().map(|&i| r.form(i).to_vec()).collect());
    let inv = basis.inverse()?;
    let coords = |i: usize| -> Result<Vec<Scalar>> {
        let row = Matrix::from_rows(vec![r.form(labeling[i]).to_vec()]);
        Ok(row.mul(&inv)?.row(0).to_vec())
    };
    let (c, e, d) = (coords(3)?, coords(4)?, coords(5)?);
    if !(c[2].is_zero() && e[1].is_zero() && d[0].is_zero()) {
        return Err(Error::InvalidInput("labeling does not follow the triple points".into()));
    }
    let num = &(&c[1] * &d[2]) * &e[0];
    let den = &(&c[0] * &e[2]) * &d[1];
    Ok(-&(&num / &den))
}

fn restriction_check(a: &MultiArrangement, h0: usize) -> Result<RestrictionCheck> {
    let Restriction { arrangement: r, fibers, .. } = a.restriction(h0)?;
    let mut check = RestrictionCheck {
        multiplicities: r.multiplicities().to_vec(),
        fibers,
        labeling: None,
        alpha: None,
        x3_multiplicities: None,
        n: None,
        prediction: None,
        simple_restriction_free: None,
        free: false,
    };
    let Some(labeling) = x3_labeling(&r) else {
        return Ok(check);
    };
    let alpha = x3_alpha(&r, &labeling)?;
    let m: Vec<u32> = labeling.iter().map(|&i| r.multiplicities()[i]).collect();
    let prediction = classify_predicted(&alpha, &m)?;
    check.simple_restriction_free = Some(decide_free_homological(&alpha, &[1; 6])?.free);
    check.n = balanced_n(&m);
    check.free = prediction == Prediction::Free;
    check.prediction = Some(prediction);
    check.labeling = Some(labeling);
    check.alpha = Some(alpha);
    check.x3_multiplicities = Some(m);
    Ok(check)
}

/// Rank-3 flats containing `h0`, each as its sorted hyperplane indices.
pub(crate) fn flats_through(a: &MultiArrangement, h0: usize) -> Vec<Vec<usize>> {
    a.lattice()
        .flats_of_rank(3)
        .filter(|f| f.contains_hyperplane(h0))
        .map(|f| f.hyperplanes.clone())
        .collect()
}

/// Localization at a flat, in 3 variables, with the position of `h0` in it.
pub(crate) fn localize(a: &MultiArrangement, flat: &[usize], h0: usize) -> Result<(MultiArrangement, usize)> {
    let local = a.subarrangement(flat)?.essentialize()?;
    let pos = flat.binary_search(&h0).map_err(|_| Error::InvalidInput("flat does not contain H0".into()))?;
    Ok((local, pos))
}

fn local_checks(a: &MultiArrangement, h0: usize) -> Result<Vec<LocalCheck>> {
    flats_through(a, h0)
        .into_iter()
        .map(|flat| {
            let (local, pos) = localize(a, &flat, h0)?;
            let yoshinaga = yoshinaga3(&local, pos)?;
            let grid = grid_model(&local, pos)?.map(|spec| GridCheck { q: spec.q(), free: grid_line_free(&spec), spec });
            let mut restriction_multiplicities = yoshinaga.restriction_multiplicities.clone();
            restriction_multiplicities.sort_unstable_by(|x, y| y.cmp(x));
            Ok(LocalCheck { hyperplanes: flat, restriction_multiplicities, free: yoshinaga.free, grid, yoshinaga })
        })
        .collect()
}

/// Rewrites a rank-3 arrangement whose restriction onto `h` has three points
/// with multiplicities `(k, k, 1)` as a grid-line arrangement, taking one
/// hyperplane from each `k`-fiber together with `h` as coordinates.
pub fn grid_model(local: &MultiArrangement, h: usize) -> Result<Option<GridLineSpec>> {
    let Restriction { fibers, .. } = local.restriction(h)?;
    if fibers.len() != 3 {
        return Ok(None);
    }
    let sizes: Vec<usize> = fibers.iter().map(Vec::len).collect();
    let single = match sizes.iter().position(|&s| s == 1) {
        Some(_) if sizes.iter().all(|&s| s == 1) => 2,
        Some(i) => i,
        None => return Ok(None),
    };
    let pair: Vec<usize> = (0..3).filter(|&i| i != single).collect();
    if sizes[pair[0]] != sizes[pair[1]] {
        return Ok(None);
    }
    let (p, q, r) = (&fibers[pair[0]], &fibers[pair[1]], &fibers[single]);
    let basis = Matrix::from_rows(vec![local.form(p[0]).to_vec(), local.form(q[0]).to_vec(), local.form(h).to_vec()]);
    let inv = basis.inverse()?;
    let coords = |i: usize| -> Result<Vec<Scalar>> {
        Ok(Matrix::from_rows(vec![local.form(i).to_vec()]).mul(&inv)?.row(0).to_vec())
    };
    let offsets = |fiber: &[usize], lead: usize| -> Result<Vec<Scalar>> {
        fiber.iter().map(|&i| coords(i).map(|c| -&(&c[2] / &c[lead]))).collect()
    };
    let line = coords(r[0])?;
    GridLineSpec::new(offsets(p, 0)?, offsets(q, 1)?, [line[0].clone(), line[1].clone(), line[2].clone()]).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn spec(field: Field, m: u64, constants: &[i64]) -> ExtensionSpec {
        ExtensionSpec::with_order(field, m, constants.iter().map(|&c| field.from_i64(c)).collect()).unwrap()
    }

    #[test]
    fn ten_hyperplanes_for_minus_one() {
        let a = build_extension(&spec(Q, 2, &[1])).unwrap();
        assert_eq!(a.len(), 10);
        let shown: Vec<String> = (0..10).map(|i| a.form_polynomial(i).to_string()).collect();
        assert_eq!(shown, ["x - w", "x + w", "y - w", "y + w", "z + w", "z - w", "x + y", "x + z", "y + z", "w"]);
    }

    #[test]
    fn spec_validation() {
        let f7 = Field::Prime(7);
        assert_eq!(spec(f7, 3, &[1]).alpha, f7.from_i64(2));
        assert_eq!(build_extension(&spec(f7, 3, &[1])).unwrap().len(), 13);
        assert!(ExtensionSpec::new(Q.from_i64(2), vec![Q.one()]).is_err());
        assert!(ExtensionSpec::new(Q.from_i64(-1), vec![Q.one(), Q.from_i64(-1)]).is_err());
        assert!(ExtensionSpec::new(Q.from_i64(-1), vec![Q.zero()]).is_err());
        assert!(matches!(ExtensionSpec::new(Q.one(), vec![Q.one()]), Err(Error::DegenerateAlpha(_))));
        assert!(element_of_order(Q, 3).is_err());
    }

    #[test]
    fn minus_one_extension_is_free() {
        let a = build_extension(&spec(Q, 2, &[1])).unwrap();
        let r = verify_extension(&a, 9).unwrap();
        assert!(r.free && r.methods_agree);
        assert_eq!(r.restriction.alpha, Some(Q.from_i64(-1)));
        assert_eq!(r.restriction.x3_multiplicities.as_deref(), Some(&[2, 2, 2, 1, 1, 1][..]));
        assert_eq!(r.restriction.simple_restriction_free, Some(false));
        assert_eq!(r.local.iter().filter(|l| l.grid.is_some()).count(), 3);
    }

    #[test]
    fn perturbed_extension_fails_locally() {
        let a = build_extension(&spec(Q, 2, &[1])).unwrap();
        let mut forms = a.forms().to_vec();
        forms[0] = vec![Q.one(), Q.zero(), Q.zero(), Q.from_i64(-3)];
        let b = MultiArrangement::simple(Q, forms).unwrap();
        let r = verify_extension(&b, 9).unwrap();
        assert!(r.restriction.free);
        assert!(!r.locally_free && !r.free);
        let bad: Vec<_> = r.failed_flats().collect();
        let flats: Vec<&[usize]> = bad.iter().map(|l| l.hyperplanes.as_slice()).collect();
        assert_eq!(flats, [&[0, 1, 2, 3, 6, 9][..], &[0, 1, 4, 5, 7, 9][..]]);
        assert!(bad.iter().all(|l| l.grid.as_ref().unwrap().q == 1));
    }

    #[test]
    fn translation_round_trip() {
        let a = build_extension(&spec(Q, 2, &[1])).unwrap();
        let s = [Q.from_i64(2), Q.from_i64(-5), Q.parse_scalar("1/3").unwrap()];
        let moved = translate(&a, &s).unwrap();
        assert_ne!(moved.forms(), a.forms());
        let (back, shift) = normalize_translation(&moved, &Q.from_i64(-1)).unwrap();
        assert_eq!(back.forms(), a.forms());
        assert_eq!(shift.to_vec(), s.iter().map(|x| -x).collect::<Vec<_>>());
        assert_eq!(verify_extension(&moved, 9).unwrap().free, true);
    }

    #[test]
    fn labeling_of_x3_itself() {
        let a = MultiArrangement::x3(&Q.from_i64(3)).unwrap();
        let lab = x3_labeling(&a).unwrap();
        assert_eq!(lab, [0, 1, 2, 3, 4, 5]);
        assert_eq!(x3_alpha(&a, &lab).unwrap(), Q.from_i64(3));
        let swapped = a.subarrangement(&[2, 1, 0, 5, 4, 3]).unwrap();
        let lab = x3_labeling(&swapped).unwrap();
        assert_eq!(x3_alpha(&swapped, &lab).unwrap(), Q.from_i64(3).inv().unwrap());
    }
}
