//! Plain-text tables derived from a [`Report`].

use std::fmt::Write;

use super::{Outcome, Report, ScanCell};
use crate::derivation::FreenessVerdict;
use crate::x3::FreenessWitness;

fn yes(b: bool) -> &'static str {
    if b {
        "free"
    } else {
        "not free"
    }
}

fn verdict_line(v: &FreenessVerdict) -> String {
    match v {
        FreenessVerdict::Free(c) => format!("free, exponents {:?}, det = {} * Q", c.exponents, c.k),
        FreenessVerdict::NotFree(w) => format!("not free ({w:?})"),
        FreenessVerdict::UnknownUpToBound { bound, degrees } => {
            format!("unknown up to degree {bound} (generator degrees {degrees:?})")
        }
    }
}

fn cell_row(out: &mut String, c: &ScanCell) {
    let _ = writeln!(
        out,
        "  {:>6}  {:<20} {:<9} {:<9} {:?}",
        c.alpha.to_string(),
        format!("{:?}", c.m),
        yes(c.predicted),
        yes(c.homological),
        c.bruteforce
    );
}

pub(super) fn table(r: &Report) -> String {
    let mut out = String::new();
    let o = &mut out;
    match &r.result {
        Outcome::Classify(c) => {
            let _ = writeln!(o, "X3({}) with m = {:?} over {}", c.alpha, c.m, r.request.field);
            let _ = writeln!(o, "  verdict      {}", yes(c.free));
            if let Some(e) = c.exponents {
                let _ = writeln!(o, "  exponents    {e:?}");
            }
            let _ = writeln!(o, "  columns      {:?}", c.homological.column_degrees);
            match &c.homological.witness {
                FreenessWitness::UnitMinor { columns, value } => {
                    let _ = writeln!(o, "  homological  free (minor on columns {columns:?} = {value})");
                }
                FreenessWitness::NoUnitMinor { .. } => {
                    let _ = writeln!(o, "  homological  not free (no constant maximal minor)");
                }
            }
            if let Some(p) = c.predicted {
                let _ = writeln!(o, "  predicted    {p:?}");
            }
            if let Some(b) = &c.bruteforce {
                let _ = writeln!(o, "  bruteforce   {}", verdict_line(b));
            }
        }
        Outcome::Scan(s) => {
            let _ = writeln!(
                o,
                "{} cells over {} (alpha in {}), weight <= {}",
                s.cells,
                s.field,
                s.alphas.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
                s.max_weight
            );
            let _ = writeln!(o, "  {:>6}  {:<20} {:<9} {:<9} bruteforce", "alpha", "m", "predicted", "homolog.");
            for c in &s.free_cells {
                cell_row(o, c);
            }
            let _ = writeln!(o, "free cells: {}", s.free_cells.len());
            let _ = writeln!(o, "disagreements: {}", s.disagreements.len());
            for c in &s.disagreements {
                cell_row(o, c);
            }
            let _ = writeln!(o, "oracle inconclusive: {}", s.unknown.len());
        }
        Outcome::Charpoly(c) => {
            let _ = writeln!(o, "chi(t) = {}", c.chi_text);
            let _ = writeln!(o, "       = {}", c.factored);
            for (rank, census) in &c.census {
                let parts: Vec<String> = census.iter().map(|(size, n)| format!("{n} of size {size}")).collect();
                let _ = writeln!(o, "  rank {rank}: {}", parts.join(", "));
            }
        }
        Outcome::Basis(b) => {
            if let Some(v) = &b.verdict {
                let _ = writeln!(o, "{}", verdict_line(v));
                if let FreenessVerdict::Free(c) = v {
                    for (i, theta) in c.basis.iter().enumerate() {
                        let _ = writeln!(o, "  theta{} = {theta}", i + 1);
                    }
                }
            }
            if let Some(c) = &b.canonical {
                let _ = writeln!(o, "explicit basis for k = {}: {:?}", c.k, c.outcome);
                for (i, theta) in c.basis.iter().enumerate() {
                    let _ = writeln!(o, "  theta{} = {theta}", i + 1);
                }
            }
        }
        Outcome::P1Exponents(p) => {
            let _ = writeln!(o, "exponents {:?} for multiplicities {:?}", p.exponents, p.arrangement.mult);
        }
        Outcome::GridLine { checks } => {
            let _ = writeln!(o, "  {:>2}  {:>2}  {:<9} {:<9} chi", "n", "q", "grid", "rank-3");
            for g in checks {
                let _ = writeln!(
                    o,
                    "  {:>2}  {:>2}  {:<9} {:<9} {}{}",
                    g.spec.n(),
                    g.q,
                    yes(g.grid_free),
                    yes(g.yoshinaga_free),
                    g.chi.factored(),
                    if g.chi == g.predicted_chi { "" } else { "  (differs from the q-formula)" }
                );
            }
        }
        Outcome::Extend(e) => {
            let rep = &e.report;
            let _ = writeln!(
                o,
                "extension with alpha = {} (order {}), t = {}: {} hyperplanes",
                e.spec.alpha,
                e.spec.order,
                e.spec.t(),
                rep.hyperplanes
            );
            let rc = &rep.restriction;
            let _ = writeln!(
                o,
                "  restriction   alpha' = {}, m = {:?}, {}",
                rc.alpha.as_ref().map_or("-".into(), ToString::to_string),
                rc.x3_multiplicities.as_deref().unwrap_or(&rc.multiplicities),
                yes(rc.free)
            );
            if let Some(s) = rc.simple_restriction_free {
                let _ = writeln!(o, "  simple X3     {}", yes(s));
            }
            let _ = writeln!(o, "  local flats   {} checked, {} failed", rep.local.len(), rep.failed_flats().count());
            for l in rep.failed_flats() {
                let _ = writeln!(o, "    flat {:?}: chi = {}", l.hyperplanes, l.yoshinaga.chi.factored());
            }
            if let Some(s) = &rep.saito {
                let _ = writeln!(o, "  saito         {}", verdict_line(s));
            }
            let _ = writeln!(o, "  verdict       {}", yes(rep.free));
            for s in &e.trace.steps {
                let _ = writeln!(o, "  [{}] {}: {}", if s.passed { "ok" } else { "!!" }, s.name, s.detail);
            }
        }
        Outcome::ComplexCheck { checks } => {
            for c in checks {
                let _ = writeln!(o, "  alpha = {:>8}  exact: {}  P*lift = 0: {}", c.alpha.to_string(), c.exact, c.projection_kills_lift);
            }
        }
    }
    if r.agreement == Some(false) {
        let _ = writeln!(o, "METHODS DISAGREE");
    }
    out
}
