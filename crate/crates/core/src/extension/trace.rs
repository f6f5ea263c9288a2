//! A freeness verdict for extensions of `X₃` derived from lattice data only.

use serde::Serialize;

use super::{check_extension_input, flats_through, localize, x3_alpha, x3_labeling};
use crate::algebra::Field;
use crate::arrangement::{CharPoly, MultiArrangement};
use crate::error::{Error, Result};
use crate::x3::{balanced_n, classify_predicted, multiplicative_order, Prediction};
use crate::yoshinaga::p1_exponents;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TeraoTrace {
    pub steps: Vec<TraceStep>,
    pub n: Option<u32>,
    pub order: Option<u64>,
    pub t: Option<u64>,
    pub free: bool,
}

/// Exponents of up to three points in `ℙ¹` as a function of the multiplicities
/// alone. With `k₁ ≤ k₂ ≤ k₃` and `k = k₁ + k₂ + k₃`, three points give
/// `(k₁ + k₂, k₃)` when `k₃ ≥ k₁ + k₂ − 1` and `(⌊k/2⌋, ⌈k/2⌉)` otherwise.
/// Valid in characteristic zero; `None` for four or more points.
pub fn combinatorial_exponents(mult: &[u32]) -> Option<(u32, u32)> {
    let mut k = mult.to_vec();
    k.sort_unstable();
    let (lo, hi) = match k.as_slice() {
        [a] => (0, *a),
        [a, b] => (*a, *b),
        [a, b, c] if *c + 1 >= a + b => (a + b, *c),
        [a, b, c] => {
            let s = a + b + c;
            (s / 2, s - s / 2)
        }
        _ => return None,
    };
    Some((lo.min(hi), lo.max(hi)))
}

fn step(name: &str, passed: bool, detail: String) -> TraceStep {
    TraceStep { name: name.into(), passed, detail }
}

/// Replays the combinatorial argument: the multiplicity shape of the Ziegler
/// restriction, local freeness of every rank-3 flat through `H₀` read off its
/// characteristic polynomial, `n = m·t`, and the resulting verdict.
pub fn terao_trace(a: &MultiArrangement, h0: usize) -> Result<TeraoTrace> {
    check_extension_input(a, h0)?;
    let restriction = a.restriction(h0)?.arrangement;
    let labeling = x3_labeling(&restriction)
        .ok_or_else(|| Error::InvalidInput("the restriction onto H0 is not an X3 arrangement".into()))?;
    let alpha = x3_alpha(&restriction, &labeling)?;
    let m: Vec<u32> = labeling.iter().map(|&i| restriction.multiplicities()[i]).collect();
    let n = balanced_n(&m).filter(|&n| n > 1);
    let mut steps = vec![step(
        "restriction multiplicity",
        n.is_some(),
        format!("Ziegler restriction onto H{h0} has the X3 triple points with multiplicities {m:?}"),
    )];

    let mut failures = Vec::new();
    let mut flats = 0;
    for flat in flats_through(a, h0) {
        flats += 1;
        let (local, pos) = localize(a, &flat, h0)?;
        let chi = local.lattice().char_poly();
        let mult = local.restriction(pos)?.arrangement.multiplicities().to_vec();
        let formula = match a.field() {
            Field::Rationals => combinatorial_exponents(&mult),
            Field::Prime(_) => None,
        };
        let (e1, e2) = match formula {
            Some(e) => e,
            None => p1_exponents(&local.ziegler_restriction(pos)?)?,
        };
        let expected = CharPoly::from_roots(&[1, i64::from(e1), i64::from(e2)]);
        if chi != expected {
            failures.push(format!(
                "flat {flat:?}: chi = {}, restriction multiplicities {mult:?} need {}",
                chi.factored(),
                expected.factored()
            ));
        }
    }
    let local_ok = failures.is_empty();
    let detail = if local_ok {
        format!("all {flats} rank-3 flats through H{h0} have chi = (t - 1)(t - e1)(t - e2) for their restriction exponents")
    } else {
        failures.join("; ")
    };
    steps.push(step("local freeness along H0", local_ok, detail));

    let order = multiplicative_order(&alpha);
    let t = match (n, order) {
        (Some(n), Some(ord)) if u64::from(n) % ord == 0 => Some(u64::from(n) / ord),
        _ => None,
    };
    let detail = match (n, order) {
        (Some(n), Some(ord)) => format!("ord(alpha') = {ord} for alpha' = {alpha}, n = {n}"),
        (_, None) => format!("alpha' = {alpha} is not a root of unity"),
        (None, _) => "no balanced multiplicity".into(),
    };
    steps.push(step("n = m t", t.is_some(), detail));

    let prediction = classify_predicted(&alpha, &m)?;
    let free = steps.iter().all(|s| s.passed) && prediction == Prediction::Free;
    let detail = format!(
        "restriction {} and {} along H0",
        if prediction == Prediction::Free { "free" } else { "not free" },
        if local_ok { "locally free" } else { "not locally free" }
    );
    steps.push(step("Yoshinaga verdict", free, detail));
    Ok(TeraoTrace { steps, n, order, t, free })
}
