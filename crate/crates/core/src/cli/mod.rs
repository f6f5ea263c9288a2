//! Command-line front end. Every subcommand produces a [`Report`]; the table
//! output is rendered from the same report that `--format json` prints.

mod render;
pub mod scan;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Field, Scalar};
use crate::arrangement::{standard_vars, ArrangementFile, CharPoly, MultiArrangement};
use crate::derivation::{decide_free_bruteforce, decide_free_up_to, saito_check, Derivation, FreenessVerdict, SaitoOutcome};
use crate::error::{Error, Result};
use crate::extension::{
    build_extension, terao_trace, verify_extension_with, ExtensionReport, ExtensionSpec, TeraoTrace, VerifyOptions,
};
use crate::x3::{
    canonical_basis_in, chain_complex, classify_predicted, decide_free_homological, is_exact, HomologicalVerdict,
    Prediction,
};
use crate::yoshinaga::{grid_line_free, p1_exponents, yoshinaga3, GridLineSpec};

pub use scan::{multiplicities_up_to, nondegenerate_elements, scan_cell, scan_grid, OracleVerdict, ScanCell, ScanReport};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: u8 = 0;
pub const EXIT_BAD_INPUT: u8 = 2;
pub const EXIT_DEGENERATE_ALPHA: u8 = 3;
pub const EXIT_DISAGREEMENT: u8 = 4;

#[derive(Parser, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[command(name = "freemult", version, about = "Free multiplicities on the X3 arrangement and its extensions")]
pub struct RunRequest {
    /// Coefficient field: Q or Fp:<prime>.
    #[arg(long, global = true, default_value = "Q")]
    pub field: Field,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for grid scans.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Table,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Homological,
    Predicted,
    Bruteforce,
    All,
}

#[derive(Subcommand, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Decide freeness of (X3(alpha), m).
    Classify(ClassifyArgs),
    /// Cross-check all methods over every m up to a total weight.
    Scan(ScanArgs),
    /// Characteristic polynomial and flat census of an arrangement.
    Charpoly(ArrangementArgs),
    /// Minimal generators of D(A, m), or the explicit basis for alpha = -1.
    Basis(BasisArgs),
    /// Exponents of a multi-arrangement of points in P^1.
    P1Exponents(P1Args),
    /// Grid-line arrangements: matching count against the rank-3 criterion.
    GridLine(GridArgs),
    /// Build and verify a rank-4 free extension.
    Extend(ExtendArgs),
    /// Exactness of the relation complex of X3(alpha).
    ComplexCheck(ComplexArgs),
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, value_delimiter = ',', required = true)]
    pub mult: Vec<u32>,
    #[arg(long, value_enum, default_value_t = Method::All)]
    pub method: Method,
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanArgs {
    #[arg(long)]
    pub max_weight: u32,
    /// Moduli values to scan; defaults to -1,2,3 over Q and every admissible
    /// value over a prime field.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alphas: Option<Vec<String>>,
    /// Skip the brute-force oracle.
    #[arg(long)]
    pub no_bruteforce: bool,
    #[arg(long, default_value_t = 16)]
    pub cap: u32,
}

#[derive(Args, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementArgs {
    /// Use X3(alpha).
    #[arg(long, allow_hyphen_values = true)]
    pub x3: Option<String>,
    /// Forms as rows separated by ';', e.g. "1,0;0,1;1,1".
    #[arg(long, allow_hyphen_values = true)]
    pub forms: Option<String>,
    /// Arrangement JSON file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    pub mult: Option<Vec<u32>>,
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisArgs {
    #[command(flatten)]
    pub arrangement: ArrangementArgs,
    /// Highest degree to search; defaults to |m|.
    #[arg(long)]
    pub max_degree: Option<u32>,
    /// Check the explicit basis of D(X3(-1), [2k,2k,2k,1,1,1]) instead.
    #[arg(long)]
    pub canonical: Option<u32>,
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct P1Args {
    /// Coefficient rows of linear forms in x, y, e.g. "1,0;0,1;1,1".
    #[arg(long, allow_hyphen_values = true)]
    pub forms: String,
    #[arg(long, value_delimiter = ',')]
    pub mult: Option<Vec<u32>>,
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridArgs {
    /// Offsets a_i of the vertical lines x = a_i z.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub a: Option<Vec<String>>,
    /// Offsets b_j of the horizontal lines y = b_j z.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub b: Option<Vec<String>>,
    /// Coefficients A,B,C of the line Ax + By + Cz.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub line: Option<Vec<String>>,
    /// Check this many random specs instead.
    #[arg(long)]
    pub random: Option<usize>,
    /// Largest grid size for random specs.
    #[arg(long, default_value_t = 4)]
    pub max_n: usize,
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendArgs {
    /// Multiplicative order of alpha; the smallest element of that order is used.
    #[arg(long)]
    pub order: Option<u64>,
    /// Root of unity alpha, given explicitly.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "order")]
    pub alpha: Option<String>,
    /// Number of orbit constants; when --constants is absent they are picked as 1, 2, ...
    #[arg(long)]
    pub t: Option<usize>,
    /// Orbit constants A_1,...,A_t.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub constants: Option<Vec<String>>,
    /// Also search for a Saito basis in four variables.
    #[arg(long)]
    pub full_saito: bool,
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexArgs {
    /// Parameter of X3(alpha).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Check this many random alpha values instead.
    #[arg(long)]
    pub random: Option<usize>,
}

impl RunRequest {
    pub fn parse_from_args<I, T>(args: I) -> std::result::Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        Self::try_parse_from(args)
    }

    /// Command line that parses back to this request.
    pub fn to_args(&self) -> Vec<String> {
        let mut v = vec!["freemult".to_string()];
        let mut push = |flag: &str, value: String| {
            v.push(format!("--{flag}"));
            v.push(value);
        };
        push("field", self.field.to_string());
        push("format", if self.format == Format::Json { "json" } else { "table" }.into());
        push("seed", self.seed.to_string());
        if let Some(j) = self.jobs {
            push("jobs", j.to_string());
        }
        let list = |xs: &[String]| xs.join(",");
        let nums = |xs: &[u32]| xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        let mut sub: Vec<String> = Vec::new();
        let mut flag = |name: &str, value: Option<String>| {
            sub.push(format!("--{name}"));
            if let Some(x) = value {
                sub.push(x);
            }
        };
        let name = match &self.command {
            Command::Classify(c) => {
                flag("alpha", Some(c.alpha.clone()));
                flag("mult", Some(nums(&c.mult)));
                flag("method", Some(c.method.to_possible_value().unwrap().get_name().to_string()));
                "classify"
            }
            Command::Scan(s) => {
                flag("max-weight", Some(s.max_weight.to_string()));
                if let Some(a) = &s.alphas {
                    flag("alphas", Some(list(a)));
                }
                if s.no_bruteforce {
                    flag("no-bruteforce", None);
                }
                flag("cap", Some(s.cap.to_string()));
                "scan"
            }
            Command::Charpoly(a) => {
                arrangement_flags(a, &mut flag);
                "charpoly"
            }
            Command::Basis(b) => {
                arrangement_flags(&b.arrangement, &mut flag);
                if let Some(d) = b.max_degree {
                    flag("max-degree", Some(d.to_string()));
                }
                if let Some(k) = b.canonical {
                    flag("canonical", Some(k.to_string()));
                }
                "basis"
            }
            Command::P1Exponents(p) => {
                flag("forms", Some(p.forms.clone()));
                if let Some(m) = &p.mult {
                    flag("mult", Some(nums(m)));
                }
                "p1-exponents"
            }
            Command::GridLine(g) => {
                for (n, x) in [("a", &g.a), ("b", &g.b), ("line", &g.line)] {
                    if let Some(x) = x {
                        flag(n, Some(list(x)));
                    }
                }
                if let Some(r) = g.random {
                    flag("random", Some(r.to_string()));
                }
                flag("max-n", Some(g.max_n.to_string()));
                "grid-line"
            }
            Command::Extend(e) => {
                if let Some(o) = e.order {
                    flag("order", Some(o.to_string()));
                }
                if let Some(a) = &e.alpha {
                    flag("alpha", Some(a.clone()));
                }
                if let Some(t) = e.t {
                    flag("t", Some(t.to_string()));
                }
                if let Some(c) = &e.constants {
                    flag("constants", Some(list(c)));
                }
                if e.full_saito {
                    flag("full-saito", None);
                }
                "extend"
            }
            Command::ComplexCheck(c) => {
                if let Some(a) = &c.alpha {
                    flag("alpha", Some(a.clone()));
                }
                if let Some(r) = c.random {
                    flag("random", Some(r.to_string()));
                }
                "complex-check"
            }
        };
        v.push(name.to_string());
        v.extend(sub);
        v
    }
}

fn arrangement_flags(a: &ArrangementArgs, flag: &mut impl FnMut(&str, Option<String>)) {
    if let Some(x) = &a.x3 {
        flag("x3", Some(x.clone()));
    }
    if let Some(f) = &a.forms {
        flag("forms", Some(f.clone()));
    }
    if let Some(p) = &a.file {
        flag("file", Some(p.display().to_string()));
    }
    if let Some(m) = &a.mult {
        flag("mult", Some(m.iter().map(u32::to_string).collect::<Vec<_>>().join(",")));
    }
}

/// Versioned machine-readable result of one run.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub request: RunRequest,
    pub result: Outcome,
    /// `Some(false)` when two methods returned different definite verdicts.
    pub agreement: Option<bool>,
    pub timings_ms: BTreeMap<String, f64>,
}

impl Report {
    pub fn exit_code(&self) -> u8 {
        if self.agreement == Some(false) {
            EXIT_DISAGREEMENT
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_table(&self) -> String {
        render::table(self)
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Classify(ClassifyResult),
    Scan(ScanReport),
    Charpoly(CharpolyResult),
    Basis(BasisResult),
    P1Exponents(P1Result),
    GridLine { checks: Vec<GridResult> },
    Extend(ExtendResult),
    ComplexCheck { checks: Vec<ComplexResult> },
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyResult {
    pub alpha: Scalar,
    pub m: Vec<u32>,
    pub free: bool,
    pub exponents: Option<[u32; 3]>,
    pub predicted: Option<Prediction>,
    /// Always computed: its witness certifies every verdict.
    pub homological: HomologicalVerdict,
    pub bruteforce: Option<FreenessVerdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharpolyResult {
    pub arrangement: ArrangementFile,
    pub chi: CharPoly,
    pub chi_text: String,
    pub factored: String,
    /// `(rank, [(flat size, count)])`.
    pub census: Vec<(usize, Vec<(usize, usize)>)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisResult {
    pub arrangement: ArrangementFile,
    pub verdict: Option<FreenessVerdict>,
    pub canonical: Option<CanonicalCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CanonicalCheck {
    pub k: u32,
    pub basis: Vec<Derivation>,
    pub outcome: SaitoOutcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct P1Result {
    pub arrangement: ArrangementFile,
    pub exponents: (u32, u32),
}

#[derive(Clone, Debug, Serialize)]
pub struct GridResult {
    pub spec: GridLineSpec,
    pub incidences: Vec<(usize, usize)>,
    pub q: usize,
    pub grid_free: bool,
    pub yoshinaga_free: bool,
    pub chi: CharPoly,
    pub predicted_chi: CharPoly,
}

impl GridResult {
    pub fn consistent(&self) -> bool {
        self.grid_free == self.yoshinaga_free && self.chi == self.predicted_chi
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtendResult {
    pub spec: ExtensionSpec,
    pub arrangement: ArrangementFile,
    pub report: ExtensionReport,
    pub trace: TeraoTrace,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexResult {
    pub alpha: Scalar,
    pub exact: bool,
    pub projection_kills_lift: bool,
}

fn scalar(field: Field, s: &str) -> Result<Scalar> {
    field.parse_scalar(s.trim())
}

fn scalars(field: Field, xs: &[String]) -> Result<Vec<Scalar>> {
    xs.iter().map(|s| scalar(field, s)).collect()
}

/// Parses `"1,0,0;0,1,0"` into rows.
pub fn parse_forms(field: Field, text: &str) -> Result<Vec<Vec<Scalar>>> {
    let rows: Vec<Vec<Scalar>> = text
        .split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| r.split(',').map(|c| scalar(field, c)).collect())
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(Error::InvalidInput("no forms given".into()));
    }
    Ok(rows)
}

fn forms_arrangement(field: Field, text: &str, mult: Option<&[u32]>) -> Result<MultiArrangement> {
    let forms = parse_forms(field, text)?;
    let dim = forms[0].len();
    let mult = mult.map_or_else(|| vec![1; forms.len()], <[u32]>::to_vec);
    MultiArrangement::new(field, standard_vars(dim)?, forms, mult)
}

pub fn resolve_arrangement(field: Field, args: &ArrangementArgs) -> Result<MultiArrangement> {
    let given = [args.x3.is_some(), args.forms.is_some(), args.file.is_some()].iter().filter(|&&b| b).count();
    if given != 1 {
        return Err(Error::InvalidInput("give exactly one of --x3, --forms, --file".into()));
    }
    let mult = args.mult.as_deref();
    if let Some(alpha) = &args.x3 {
        let a = MultiArrangement::x3(&scalar(field, alpha)?)?;
        return match mult {
            Some(m) => a.with_multiplicities(m),
            None => Ok(a),
        };
    }
    if let Some(text) = &args.forms {
        return forms_arrangement(field, text, mult);
    }
    let path = args.file.as_ref().expect("checked above");
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let a = MultiArrangement::from_json(&text)?;
    match mult {
        Some(m) => a.with_multiplicities(m),
        None => Ok(a),
    }
}

/// A random moduli value other than 0 and 1: over ℚ a fraction with small
/// numerator and denominator, over `𝔽_p` a uniform element.
pub fn random_alpha(field: Field, rng: &mut impl Rng) -> Scalar {
    loop {
        let a = match field {
            Field::Rationals => {
                let num = field.from_i64(rng.gen_range(-20..=20));
                let den = field.from_i64(rng.gen_range(1..=9));
                &num / &den
            }
            Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
        };
        if !a.is_zero() && !a.is_one() {
            return a;
        }
    }
}

fn random_element(field: Field, rng: &mut impl Rng) -> Scalar {
    match field {
        Field::Rationals => field.from_i64(rng.gen_range(-9..=9)),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

fn random_nonzero(field: Field, rng: &mut impl Rng) -> Scalar {
    loop {
        let x = random_element(field, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

fn random_distinct(field: Field, rng: &mut impl Rng, n: usize, taken: &mut Vec<Scalar>) {
    while taken.len() < n {
        let x = random_element(field, rng);
        if !taken.contains(&x) {
            taken.push(x);
        }
    }
}

/// A random grid-line spec with `n ≤ max_n`. A random number of grid points is
/// forced onto the line, so both free and non-free specs occur often.
pub fn random_grid_spec(field: Field, max_n: usize, rng: &mut impl Rng) -> Result<GridLineSpec> {
    if let Field::Prime(p) = field {
        if (p as usize) < max_n {
            return Err(Error::InvalidInput(format!("Fp:{p} has fewer than {max_n} elements")));
        }
    }
    let n = rng.gen_range(1..=max_n);
    let mut a = Vec::new();
    random_distinct(field, rng, n, &mut a);
    let (la, lb, lc) = (random_nonzero(field, rng), random_nonzero(field, rng), random_element(field, rng));
    let k = rng.gen_range(0..=n);
    // b = -(A a + C) / B puts (a, b) on the line; the map is injective.
    let mut b: Vec<Scalar> = a[..k].iter().map(|ai| -&(&(&(&la * ai) + &lc) / &lb)).collect();
    random_distinct(field, rng, n, &mut b);
    b.shuffle(rng);
    GridLineSpec::new(a, b, [la, lb, lc])
}

pub fn check_grid(spec: GridLineSpec) -> Result<GridResult> {
    let a = spec.arrangement()?;
    let yoshinaga_free = yoshinaga3(&a, spec.z_index())?.free;
    Ok(GridResult {
        incidences: spec.incidences(),
        q: spec.q(),
        grid_free: grid_line_free(&spec),
        yoshinaga_free,
        chi: a.lattice().char_poly(),
        predicted_chi: spec.predicted_chi(),
        spec,
    })
}

pub fn classify(alpha: &Scalar, m: &[u32], method: Method) -> Result<(ClassifyResult, bool)> {
    let homological = decide_free_homological(alpha, m)?;
    let predicted = matches!(method, Method::Predicted | Method::All).then(|| classify_predicted(alpha, m)).transpose()?;
    let bruteforce = if matches!(method, Method::Bruteforce | Method::All) {
        Some(decide_free_bruteforce(&MultiArrangement::x3(alpha)?.with_multiplicities(m)?)?)
    } else {
        None
    };
    let free = homological.free;
    let agree = predicted.is_none_or(|p| (p == Prediction::Free) == free)
        && bruteforce.as_ref().and_then(FreenessVerdict::as_bool).is_none_or(|b| b == free);
    let result = ClassifyResult {
        alpha: alpha.clone(),
        m: m.to_vec(),
        free,
        exponents: homological.exponents,
        predicted,
        homological,
        bruteforce,
    };
    Ok((result, agree))
}

fn extension_spec(field: Field, e: &ExtendArgs) -> Result<ExtensionSpec> {
    let alpha = match (&e.alpha, e.order) {
        (Some(a), _) => scalar(field, a)?,
        (None, order) => crate::extension::element_of_order(field, order.unwrap_or(2))?,
    };
    let constants = match &e.constants {
        Some(c) => {
            let c = scalars(field, c)?;
            if e.t.is_some_and(|t| t != c.len()) {
                return Err(Error::InvalidInput(format!("--t {} but {} constants given", e.t.unwrap(), c.len())));
            }
            c
        }
        None => pick_constants(&alpha, e.t.unwrap_or(1))?,
    };
    ExtensionSpec::new(alpha, constants)
}

/// The first `t` of `1, 2, 3, …` lying in distinct `α`-orbits.
fn pick_constants(alpha: &Scalar, t: usize) -> Result<Vec<Scalar>> {
    let field = alpha.field();
    let mut chosen: Vec<Scalar> = Vec::new();
    let mut seen: Vec<Scalar> = Vec::new();
    let limit = match field {
        Field::Rationals => 10_000,
        Field::Prime(p) => p as i64,
    };
    for v in 1..limit {
        if chosen.len() == t {
            break;
        }
        let c = field.from_i64(v);
        if c.is_zero() || seen.contains(&c) {
            continue;
        }
        let mut x = c.clone();
        for _ in 0..64 {
            seen.push(x.clone());
            x = &x * alpha;
            if x == c {
                break;
            }
        }
        chosen.push(c);
    }
    if chosen.len() < t {
        return Err(Error::InvalidInput(format!("{field} has fewer than {t} orbits of alpha")));
    }
    Ok(chosen)
}

/// Executes a request.
pub fn run(req: &RunRequest) -> Result<Report> {
    let start = Instant::now();
    let mut timings = BTreeMap::new();
    let field = req.field;
    let mut rng = ChaCha8Rng::seed_from_u64(req.seed);
    let (result, agreement) = match &req.command {
        Command::Classify(c) => {
            let (r, agree) = classify(&scalar(field, &c.alpha)?, &c.mult, c.method)?;
            (Outcome::Classify(r), Some(agree))
        }
        Command::Scan(s) => {
            if s.max_weight > s.cap {
                return Err(Error::InvalidInput(format!("weight bound {} exceeds the cap {}", s.max_weight, s.cap)));
            }
            let alphas = match (&s.alphas, nondegenerate_elements(field)) {
                (Some(a), _) => scalars(field, a)?,
                (None, Some(all)) => all,
                (None, None) => scalars(field, &["-1".into(), "2".into(), "3".into()])?,
            };
            let run_scan = || scan_grid(&alphas, s.max_weight, !s.no_bruteforce);
            let report = match req.jobs {
                Some(j) => rayon::ThreadPoolBuilder::new()
                    .num_threads(j)
                    .build()
                    .map_err(|e| Error::InvalidInput(e.to_string()))?
                    .install(run_scan)?,
                None => run_scan()?,
            };
            let agree = report.disagreements.is_empty();
            (Outcome::Scan(report), Some(agree))
        }
        Command::Charpoly(args) => {
            let a = resolve_arrangement(field, args)?;
            let lattice = a.lattice();
            let chi = lattice.char_poly();
            let census = (1..=lattice.rank()).map(|r| (r, lattice.census(r))).collect();
            let r = CharpolyResult { arrangement: a.to_file(), chi_text: chi.to_string(), factored: chi.factored(), chi, census };
            (Outcome::Charpoly(r), None)
        }
        Command::Basis(b) => {
            if let Some(k) = b.canonical {
                let basis = canonical_basis_in(field, k)?;
                let a = MultiArrangement::x3(&field.from_i64(-1))?.with_multiplicities(&[2 * k, 2 * k, 2 * k, 1, 1, 1])?;
                let outcome = saito_check(&a, &basis)?;
                let check = CanonicalCheck { k, basis: basis.to_vec(), outcome };
                (Outcome::Basis(BasisResult { arrangement: a.to_file(), verdict: None, canonical: Some(check) }), None)
            } else {
                let a = resolve_arrangement(field, &b.arrangement)?;
                let bound = b.max_degree.unwrap_or_else(|| a.total_multiplicity());
                let verdict = decide_free_up_to(&a, bound)?;
                (Outcome::Basis(BasisResult { arrangement: a.to_file(), verdict: Some(verdict), canonical: None }), None)
            }
        }
        Command::P1Exponents(p) => {
            let a = forms_arrangement(field, &p.forms, p.mult.as_deref())?;
            let exponents = p1_exponents(&a)?;
            (Outcome::P1Exponents(P1Result { arrangement: a.to_file(), exponents }), None)
        }
        Command::GridLine(g) => {
            let specs = match g.random {
                Some(count) => (0..count).map(|_| random_grid_spec(field, g.max_n, &mut rng)).collect::<Result<Vec<_>>>()?,
                None => {
                    fn need<'a>(x: &'a Option<Vec<String>>, name: &str) -> Result<&'a [String]> {
                        x.as_deref().ok_or_else(|| Error::InvalidInput(format!("--{name} is required without --random")))
                    }
                    let line = scalars(field, need(&g.line, "line")?)?;
                    let line: [Scalar; 3] = line
                        .try_into()
                        .map_err(|_| Error::InvalidInput("--line takes three coefficients A,B,C".into()))?;
                    vec![GridLineSpec::new(scalars(field, need(&g.a, "a")?)?, scalars(field, need(&g.b, "b")?)?, line)?]
                }
            };
            let checks = specs.into_iter().map(check_grid).collect::<Result<Vec<_>>>()?;
            let agree = checks.iter().all(GridResult::consistent);
            (Outcome::GridLine { checks }, Some(agree))
        }
        Command::Extend(e) => {
            let spec = extension_spec(field, e)?;
            let a = build_extension(&spec)?;
            let h0 = a.len() - 1;
            let t0 = Instant::now();
            let report = verify_extension_with(&a, h0, VerifyOptions { full_saito: e.full_saito })?;
            timings.insert("verify".to_string(), t0.elapsed().as_secs_f64() * 1e3);
            let trace = terao_trace(&a, h0)?;
            let agree = report.methods_agree
                && trace.free == report.free
                && report.saito.as_ref().and_then(FreenessVerdict::as_bool).is_none_or(|s| s == report.free);
            let r = ExtendResult { spec, arrangement: a.to_file(), report, trace };
            (Outcome::Extend(r), Some(agree))
        }
        Command::ComplexCheck(c) => {
            let alphas = match (&c.alpha, c.random) {
                (Some(a), _) => vec![scalar(field, a)?],
                (None, Some(n)) => (0..n).map(|_| random_alpha(field, &mut rng)).collect(),
                (None, None) => return Err(Error::InvalidInput("give --alpha or --random".into())),
            };
            let checks = alphas
                .into_iter()
                .map(|alpha| {
                    let cx = chain_complex(&alpha)?;
                    Ok(ComplexResult {
                        exact: is_exact(&cx.delta0, &cx.delta1),
                        projection_kills_lift: cx.projection.mul(&cx.delta1_hat)?.is_zero(),
                        alpha,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            (Outcome::ComplexCheck { checks }, None)
        }
    };
    timings.insert("total".to_string(), start.elapsed().as_secs_f64() * 1e3);
    Ok(Report { schema_version: SCHEMA_VERSION, request: req.clone(), result, agreement, timings_ms: timings })
}

pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::DegenerateAlpha(_) => EXIT_DEGENERATE_ALPHA,
        _ => EXIT_BAD_INPUT,
    }
}

/// Parses, runs and prints; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let req = match RunRequest::parse_from_args(args) {
        Ok(r) => r,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&req) {
        Ok(report) => {
            match req.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Table => print!("{}", report.to_table()),
            }
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(args: &[&str]) -> RunRequest {
        RunRequest::parse_from_args(std::iter::once("freemult").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn documented_commands_round_trip() {
        let cases: &[&[&str]] = &[
            &["classify", "--alpha", "-1", "--field", "Q", "--mult", "2,2,2,1,1,1", "--method", "all"],
            &["--field", "Fp:7", "scan", "--max-weight", "12"],
            &["scan", "--max-weight", "10", "--alphas", "-1,2,3", "--no-bruteforce", "--jobs", "2"],
            &["charpoly", "--x3", "-1"],
            &["basis", "--canonical", "2"],
            &["basis", "--x3", "2", "--mult", "3,3,3,1,1,1", "--max-degree", "5"],
            &["p1-exponents", "--forms", "1,0;0,1;1,1;1,-1", "--mult", "3,3,1,1"],
            &["grid-line", "--a", "1,2", "--b", "-1,-2", "--line", "1,1,0"],
            &["--seed", "7", "--field", "Fp:11", "grid-line", "--random", "5"],
            &["extend", "--order", "2", "--t", "1", "--constants", "1", "--field", "Q", "--full-saito"],
            &["complex-check", "--random", "10", "--format", "json"],
        ];
        for args in cases {
            let r = req(args);
            let back = RunRequest::parse_from_args(r.to_args()).unwrap();
            assert_eq!(back, r, "{args:?}");
            let json = serde_json::to_string(&r).unwrap();
            assert_eq!(serde_json::from_str::<RunRequest>(&json).unwrap(), r);
        }
    }

    #[test]
    fn classify_minus_one() {
        let r = run(&req(&["classify", "--alpha", "-1", "--mult", "2,2,2,1,1,1"])).unwrap();
        assert_eq!(r.agreement, Some(true));
        let Outcome::Classify(c) = &r.result else { panic!() };
        assert!(c.free);
        assert_eq!(c.exponents, Some([3, 3, 3]));
        let r = run(&req(&["classify", "--alpha", "-1", "--mult", "3,3,3,1,1,1"])).unwrap();
        let Outcome::Classify(c) = &r.result else { panic!() };
        assert!(!c.free);
    }

    #[test]
    fn errors_map_to_exit_codes() {
        let e = run(&req(&["classify", "--alpha", "1", "--mult", "2,2,2,1,1,1"])).unwrap_err();
        assert_eq!(exit_code_for(&e), EXIT_DEGENERATE_ALPHA);
        let e = run(&req(&["classify", "--alpha", "2", "--mult", "2,2,1"])).unwrap_err();
        assert_eq!(exit_code_for(&e), EXIT_BAD_INPUT);
        let e = run(&req(&["scan", "--max-weight", "40"])).unwrap_err();
        assert_eq!(exit_code_for(&e), EXIT_BAD_INPUT);
    }

    #[test]
    fn extend_picks_constants() {
        let r = run(&req(&["--field", "Fp:13", "extend", "--order", "3", "--t", "2"])).unwrap();
        let Outcome::Extend(e) = &r.result else { panic!() };
        assert_eq!(e.spec.constants.len(), 2);
        assert!(e.report.free && e.trace.free);
        assert_eq!(r.agreement, Some(true));
    }

    #[test]
    fn random_grid_specs_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = Field::Prime(11);
        let mut free = 0;
        for _ in 0..40 {
            let r = check_grid(random_grid_spec(f, 4, &mut rng).unwrap()).unwrap();
            assert!(r.consistent());
            free += usize::from(r.grid_free);
        }
        assert!(free > 0 && free < 40);
    }
}
