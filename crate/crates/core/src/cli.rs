//! The `frieze` command line: argument types, subcommand drivers and the
//! `verify` report. Everything returns an [`Outcome`] so the binary stays a
//! thin wrapper and tests can drive commands in-process.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dissection::{
    enumerate_dissections_with_guard, random_dissection, Dissection, DissectionJson, EdgeRef, PieceId,
    DEFAULT_ENUMERATION_GUARD,
};
use crate::frieze::{build_frieze, find_zigzag, minor, minor_formula_for, minor_table, RenderOptions, ZigZag};
use crate::matrix::PolyMatrix;
use crate::normalform::{
    arithmetic_diagonal_form, check_complementary_symmetry, det_expand, det_formula, diagonalize, expected_diagonal,
    smith_normal_form, ComplementContext, IntMatrix, DET_EXPAND_MAX,
};
use crate::poly::{geometric_sum, LaurentPoly, VarNames};
use crate::walks::{all_ones, enumerate_walks, specialize, walk_weight, weight_matrix, Flavor, WeightMatrix};

/// Environment variable overriding the `verify --all` guard.
pub const GUARD_ENV: &str = "FRIEZE_GUARD_N";

/// Walk enumeration is exponential; the oracle check is skipped above this.
pub const WALK_ORACLE_MAX: usize = 9;

#[derive(Parser, Debug, Clone)]
#[command(name = "frieze", version, about = "Walk matrices, diagonal forms and friezes of dissected polygons")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Comma-separated display names for the piece variables, in piece order.
    #[arg(long, value_delimiter = ',', global = true)]
    pub names: Option<Vec<String>>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula,
    Expand,
    Both,
}

/// Where the dissection comes from.
#[derive(Args, Debug, Clone, Default)]
pub struct Source {
    /// Dissection JSON file, `-` for stdin.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    /// Inline dissection JSON.
    #[arg(long)]
    pub json: Option<String>,
    /// Random dissection: `--random N [SEED]`.
    #[arg(long, num_args = 1..=2, value_names = ["N", "SEED"])]
    pub random: Option<Vec<u64>>,
    /// Seed for `--random` when not given inline.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Print the walk matrix.
    Matrix {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "arithmetic")]
        flavor: Flavor,
    },
    /// Determinant by closed form, by expansion, or both.
    Det {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "arithmetic")]
        flavor: Flavor,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Diagonal form P W Q = D with explicit P, Q.
    Diagform {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "xq")]
        flavor: Flavor,
    },
    /// Smith form of the walk-counting matrix.
    Snf {
        #[command(flatten)]
        source: Source,
    },
    /// Render the frieze pattern.
    Frieze {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "x")]
        flavor: Flavor,
        #[arg(long, default_value_t = 2)]
        periods: usize,
        #[arg(long)]
        latex: bool,
        /// Also show the all-zero row.
        #[arg(long)]
        zero_row: bool,
        /// Replace entries wider than this by labels with a legend.
        #[arg(long)]
        width: Option<usize>,
    },
    /// Every 2×2 minor with its zig-zag certificate.
    Minors {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "xq")]
        flavor: Flavor,
    },
    /// Zig-zag sequence between boundary edges e_i and e_j.
    Zigzag {
        i: usize,
        j: usize,
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "xq")]
        flavor: Flavor,
    },
    /// Run every check on one dissection or on all dissections of an n-gon.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Exhaustively verify every dissection of an n-gon.
        #[arg(long, value_name = "N")]
        all: Option<usize>,
        /// Corrupt one matrix entry before checking (negative control).
        #[arg(long)]
        fuzz: bool,
        /// Include per-check timings (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
}

/// Result of a command: what to print and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String, passed: bool) -> Self {
        Outcome { stdout, stderr: String::new(), code: if passed { 0 } else { 1 } }
    }

    fn input_error(msg: impl Into<String>) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {}\n", msg.into()), code: 2 }
    }
}

struct Ctx {
    format: Format,
    names: VarNames,
}

impl Ctx {
    fn poly(&self, p: &LaurentPoly) -> String {
        p.to_string_with(&self.names)
    }

    fn matrix(&self, m: &PolyMatrix) -> Vec<Vec<String>> {
        (0..m.rows()).map(|i| m.row(i).iter().map(|p| self.poly(p)).collect()).collect()
    }

    fn piece(&self, id: PieceId) -> String {
        self.names.name(id.var())
    }

    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String, passed: bool) -> Outcome {
        let stdout = match self.format {
            Format::Json => serde_json::to_string_pretty(value).expect("output types serialize") + "\n",
            Format::Text => text(),
        };
        Outcome::ok(stdout, passed)
    }
}

/// Parse arguments (including the program name) and run.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let ctx = Ctx {
        format: cli.format,
        names: cli.names.as_deref().map(VarNames::with_pieces).unwrap_or_default(),
    };
    let result = match &cli.command {
        Command::Matrix { source, flavor } => load(source).map(|d| cmd_matrix(&ctx, &d, *flavor)),
        Command::Det { source, flavor, method } => load(source).and_then(|d| cmd_det(&ctx, &d, *flavor, *method)),
        Command::Diagform { source, flavor } => load(source).and_then(|d| cmd_diagform(&ctx, &d, *flavor)),
        Command::Snf { source } => load(source).and_then(|d| cmd_snf(&ctx, &d)),
        Command::Frieze { source, flavor, periods, latex, zero_row, width } => load(source).map(|d| {
            let opts = RenderOptions { periods: *periods, zero_row: *zero_row, max_width: *width, names: ctx.names.clone() };
            cmd_frieze(&ctx, &d, *flavor, &opts, *latex)
        }),
        Command::Minors { source, flavor } => load(source).map(|d| cmd_minors(&ctx, &d, *flavor)),
        Command::Zigzag { i, j, source, flavor } => load(source).and_then(|d| cmd_zigzag(&ctx, &d, *i, *j, *flavor)),
        Command::Verify { source, all, fuzz, timings } => {
            let opts = VerifyOptions { fuzz: *fuzz, timings: *timings, seed: source.seed };
            match all {
                Some(n) => enumeration_guard().and_then(|guard| {
                    let ds: Vec<Dissection> = enumerate_dissections_with_guard(*n, guard)
                        .map_err(|e| e.to_string())?
                        .collect();
                    Ok(cmd_verify(&ctx, &ds, &opts))
                }),
                None => load(source).map(|d| cmd_verify(&ctx, &[d], &opts)),
            }
        }
    };
    result.unwrap_or_else(Outcome::input_error)
}

fn enumeration_guard() -> Result<usize, String> {
    match std::env::var(GUARD_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{GUARD_ENV} must be a positive integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_ENUMERATION_GUARD),
    }
}

/// Resolve a [`Source`] to a dissection.
pub fn load(source: &Source) -> Result<Dissection, String> {
    let given = [source.input.is_some(), source.json.is_some(), source.random.is_some()];
    match given.iter().filter(|&&b| b).count() {
        0 => return Err("no dissection given (use --input, --json or --random)".into()),
        1 => {}
        _ => return Err("give exactly one of --input, --json, --random".into()),
    }
    if let Some(r) = &source.random {
        let n = r[0] as usize;
        let seed = r.get(1).copied().unwrap_or(source.seed);
        return random_dissection(n, seed).map_err(|e| e.to_string());
    }
    let text = match (&source.input, &source.json) {
        (Some(path), _) if path.as_os_str() == "-" => {
            std::io::read_to_string(std::io::stdin()).map_err(|e| format!("reading stdin: {e}"))?
        }
        (Some(path), _) => std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?,
        (None, Some(json)) => json.clone(),
        (None, None) => unreachable!(),
    };
    let parsed: DissectionJson = serde_json::from_str(&text).map_err(|e| format!("invalid dissection JSON: {e}"))?;
    parsed.to_dissection().map_err(|e| e.to_string())
}

// ---------------------------------------------------------------- matrix

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixOutput {
    pub dissection: DissectionJson,
    pub flavor: Flavor,
    pub matrix: Vec<Vec<String>>,
}

fn cmd_matrix(ctx: &Ctx, d: &Dissection, flavor: Flavor) -> Outcome {
    let w = weight_matrix(d, flavor);
    let out = MatrixOutput { dissection: d.to_json(), flavor, matrix: ctx.matrix(w.matrix()) };
    ctx.emit(&out, || w.matrix().render(&ctx.names), true)
}

// ---------------------------------------------------------------- det

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetOutput {
    pub dissection: DissectionJson,
    pub flavor: Flavor,
    pub method: Method,
    pub formula: Option<String>,
    pub expand: Option<String>,
    pub equal: Option<bool>,
    /// The closed form as a product of factors, before expansion.
    pub factored: String,
}

/// Factors of the closed-form determinant: the sign (and `ε`) first, then
/// one geometric sum per piece.
pub fn determinant_factors(d: &Dissection, flavor: Flavor) -> Vec<LaurentPoly> {
    let n = d.n();
    let sign = LaurentPoly::constant(if n % 2 == 1 { 1 } else { -1 });
    if flavor == Flavor::Arithmetic {
        return std::iter::once(sign)
            .chain(d.piece_type().iter().map(|&k| LaurentPoly::constant(k as i64 - 1)))
            .collect();
    }
    let ctx = ComplementContext::new(d);
    let eps = if flavor == Flavor::Xq { ctx.eps() } else { LaurentPoly::one() };
    let ec = &eps * &ctx.c();
    std::iter::once(&sign * &eps)
        .chain(d.piece_ids().map(|id| geometric_sum(&(&ec * &id.poly().pow(2)), d.degree(id) - 2)))
        .collect()
}

fn cmd_det(ctx: &Ctx, d: &Dissection, flavor: Flavor, method: Method) -> Result<Outcome, String> {
    let formula = matches!(method, Method::Formula | Method::Both).then(|| det_formula(d, flavor));
    let expand = match method {
        Method::Expand | Method::Both => Some(det_expand(weight_matrix(d, flavor).matrix()).map_err(|e| e.to_string())?),
        Method::Formula => None,
    };
    let equal = match (&formula, &expand) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let factored = determinant_factors(d, flavor)
        .iter()
        .enumerate()
        .filter(|(k, f)| *k > 0 || !f.is_one())
        .map(|(_, f)| format!("({})", ctx.poly(f)))
        .collect::<Vec<_>>()
        .join(" * ");
    let out = DetOutput {
        dissection: d.to_json(),
        flavor,
        method,
        formula: formula.as_ref().map(|p| ctx.poly(p)),
        expand: expand.as_ref().map(|p| ctx.poly(p)),
        equal,
        factored,
    };
    let text = || {
        let mut s = String::new();
        if let Some(f) = &out.formula {
            let _ = writeln!(s, "formula:  {f}");
        }
        if let Some(e) = &out.expand {
            let _ = writeln!(s, "expand:   {e}");
        }
        let _ = writeln!(s, "factored: {}", out.factored);
        if let Some(eq) = out.equal {
            let _ = writeln!(s, "{}", if eq { "formula and expansion agree" } else { "MISMATCH between formula and expansion" });
        }
        s
    };
    Ok(ctx.emit(&out, text, equal != Some(false)))
}

// ---------------------------------------------------------------- diagform

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagformReport {
    pub pwq_equals_d: bool,
    pub d_matches_theorem: bool,
    pub det_p_unit: bool,
    pub det_q_unit: bool,
}

impl DiagformReport {
    pub fn passed(&self) -> bool {
        self.pwq_equals_d && self.d_matches_theorem && self.det_p_unit && self.det_q_unit
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagformOutput {
    pub dissection: DissectionJson,
    pub flavor: Flavor,
    pub p: Vec<Vec<String>>,
    pub d: Vec<String>,
    pub q: Vec<Vec<String>>,
    pub det_p: String,
    pub det_q: String,
    /// Piece responsible for each diagonal entry.
    pub labels: Vec<Option<String>>,
    pub operations: usize,
    pub report: DiagformReport,
}

fn cmd_diagform(ctx: &Ctx, d: &Dissection, flavor: Flavor) -> Result<Outcome, String> {
    let form = diagonalize(d, flavor).map_err(|e| e.to_string())?;
    let w = weight_matrix(d, flavor);
    let report = DiagformReport {
        pwq_equals_d: form.verify(w.matrix()),
        d_matches_theorem: form.d == expected_diagonal(d, flavor),
        det_p_unit: form.det_p.is_unit().is_some(),
        det_q_unit: form.det_q.is_unit().is_some(),
    };
    let out = DiagformOutput {
        dissection: d.to_json(),
        flavor,
        p: ctx.matrix(&form.p),
        d: form.d.iter().map(|p| ctx.poly(p)).collect(),
        q: ctx.matrix(&form.q),
        det_p: ctx.poly(&form.det_p),
        det_q: ctx.poly(&form.det_q),
        labels: form.labels.iter().map(|l| l.map(|id| ctx.piece(id))).collect(),
        operations: form.log.len(),
        report: report.clone(),
    };
    let text = || {
        let mut s = String::new();
        let _ = writeln!(s, "D = diag(");
        for (k, entry) in out.d.iter().enumerate() {
            let label = out.labels[k].as_deref().map(|l| format!("  [{l}]")).unwrap_or_default();
            let _ = writeln!(s, "  {entry}{label}");
        }
        let _ = writeln!(s, ")");
        let _ = writeln!(s, "P =\n{}", form.p.render(&ctx.names));
        let _ = writeln!(s, "Q =\n{}", form.q.render(&ctx.names));
        let _ = writeln!(s, "det P = {}, det Q = {}", out.det_p, out.det_q);
        let _ = writeln!(s, "elementary operations: {}", out.operations);
        let _ = writeln!(
            s,
            "P W Q = D: {}; D as predicted: {}; det P unit: {}; det Q unit: {}",
            yes(report.pwq_equals_d),
            yes(report.d_matches_theorem),
            yes(report.det_p_unit),
            yes(report.det_q_unit)
        );
        s
    };
    Ok(ctx.emit(&out, text, report.passed()))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}

// ---------------------------------------------------------------- snf

fn int_rows(m: &IntMatrix) -> Result<Vec<Vec<i64>>, String> {
    m.rows()
        .iter()
        .map(|r| r.iter().map(small).collect())
        .collect()
}

fn small(v: &BigInt) -> Result<i64, String> {
    i64::try_from(v).map_err(|_| format!("integer {v} does not fit in 64 bits"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremForm {
    pub diagonal: Vec<i64>,
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
    pub det_u: i64,
    pub det_v: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfReport {
    /// `U M V = S` with `U`, `V` unimodular and divisibility ordering.
    pub smith_verified: bool,
    /// `U M V = Δ(d_i - 1, ..., 1, ...)` with `U`, `V` unimodular.
    pub theorem_verified: bool,
    /// Both diagonals have the same invariant factors.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfOutput {
    pub dissection: DissectionJson,
    pub matrix: Vec<Vec<i64>>,
    pub invariant_factors: Vec<i64>,
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
    /// Diagonal form with the nontrivial entries `d_i - 1` first.
    pub theorem: TheoremForm,
    pub report: SnfReport,
}

/// Check `U M V = Δ(diagonal)` with unimodular `U`, `V`.
fn check_int_form(m: &IntMatrix, u: &IntMatrix, diagonal: &[BigInt], v: &IntMatrix) -> bool {
    let s = u.mul(m).mul(v);
    s.is_diagonal() && s.diagonal() == diagonal && unimodular(u) && unimodular(v)
}

fn unimodular(m: &IntMatrix) -> bool {
    let det = m.determinant();
    det == BigInt::from(1) || det == BigInt::from(-1)
}

fn cmd_snf(ctx: &Ctx, d: &Dissection) -> Result<Outcome, String> {
    let m = IntMatrix::try_from_poly(weight_matrix(d, Flavor::Arithmetic).matrix()).expect("integer matrix");
    let smith = smith_normal_form(&m);
    let theorem = arithmetic_diagonal_form(d).map_err(|e| e.to_string())?;
    let diag_smith = smith_normal_form(&IntMatrix::from_rows(
        (0..theorem.diagonal.len())
            .map(|i| {
                (0..theorem.diagonal.len())
                    .map(|j| if i == j { theorem.diagonal[i].clone() } else { BigInt::from(0) })
                    .collect()
            })
            .collect(),
    ));
    let report = SnfReport {
        smith_verified: smith.verify(&m),
        theorem_verified: check_int_form(&m, &theorem.u, &theorem.diagonal, &theorem.v),
        consistent: diag_smith.invariant_factors == smith.invariant_factors,
    };
    let passed = report.smith_verified && report.theorem_verified && report.consistent;
    let out = SnfOutput {
        dissection: d.to_json(),
        matrix: int_rows(&m)?,
        invariant_factors: smith.invariant_factors.iter().map(small).collect::<Result<_, _>>()?,
        u: int_rows(&smith.u)?,
        v: int_rows(&smith.v)?,
        theorem: TheoremForm {
            diagonal: theorem.diagonal.iter().map(small).collect::<Result<_, _>>()?,
            u: int_rows(&theorem.u)?,
            v: int_rows(&theorem.v)?,
            det_u: small(&theorem.det_u)?,
            det_v: small(&theorem.det_v)?,
        },
        report,
    };
    let list = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(", ");
    let text = || {
        let mut s = String::new();
        let _ = writeln!(s, "invariant factors: {}", list(&out.invariant_factors));
        let _ = writeln!(s, "diagonal form:     {}", list(&out.theorem.diagonal));
        let _ = writeln!(s, "det U = {}, det V = {}", out.theorem.det_u, out.theorem.det_v);
        let _ = writeln!(
            s,
            "Smith form verified: {}; diagonal form verified: {}; same invariants: {}",
            yes(out.report.smith_verified),
            yes(out.report.theorem_verified),
            yes(out.report.consistent)
        );
        s
    };
    Ok(ctx.emit(&out, text, passed))
}

// ---------------------------------------------------------------- frieze

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FriezeOutput {
    pub dissection: DissectionJson,
    pub flavor: Flavor,
    /// `rows[r][i-1]` is the matrix entry `(i, i+r)`, `r = 0..n-1`.
    pub rows: Vec<Vec<String>>,
    pub rendering: String,
}

fn cmd_frieze(ctx: &Ctx, d: &Dissection, flavor: Flavor, opts: &RenderOptions, latex: bool) -> Outcome {
    let f = build_frieze(&weight_matrix(d, flavor));
    let rendering = if latex { f.render_latex(opts) } else { f.render_text(opts) };
    let out = FriezeOutput {
        dissection: d.to_json(),
        flavor,
        rows: f.rows.iter().map(|r| r.iter().map(|p| ctx.poly(p)).collect()).collect(),
        rendering,
    };
    ctx.emit(&out, || out.rendering.clone(), true)
}

// ---------------------------------------------------------------- minors / zigzag

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZigZagJson {
    pub from: usize,
    pub to: usize,
    pub sequence: Vec<[usize; 2]>,
    pub diagonals: Vec<[usize; 2]>,
    pub pieces: Vec<String>,
    pub zig_pieces: Vec<String>,
}

impl ZigZagJson {
    fn new(ctx: &Ctx, z: &ZigZag) -> Self {
        ZigZagJson {
            from: z.from.0,
            to: z.to.0,
            sequence: z.sequence.iter().map(|&(a, b)| [a, b]).collect(),
            diagonals: z.diagonals().iter().map(|&(a, b)| [a, b]).collect(),
            pieces: z.pieces.iter().map(|&p| ctx.piece(p)).collect(),
            zig_pieces: z.zig_pieces.iter().map(|&p| ctx.piece(p)).collect(),
        }
    }

    fn describe(&self) -> String {
        let seq: Vec<String> = self.sequence.iter().map(|[a, b]| format!("({a},{b})")).collect();
        format!("{}  zig {{{}}}", seq.join(" "), self.zig_pieces.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorRow {
    pub e: usize,
    pub f: usize,
    pub minor: String,
    pub formula: String,
    pub agrees: bool,
    pub zigzag: Option<ZigZagJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorsOutput {
    pub dissection: DissectionJson,
    pub flavor: Flavor,
    pub entries: Vec<MinorRow>,
    pub all_agree: bool,
}

fn cmd_minors(ctx: &Ctx, d: &Dissection, flavor: Flavor) -> Outcome {
    let table = minor_table(&weight_matrix(d, flavor));
    let entries: Vec<MinorRow> = table
        .iter()
        .map(|t| MinorRow {
            e: t.e.0,
            f: t.f.0,
            minor: ctx.poly(&t.minor),
            formula: ctx.poly(&t.formula),
            agrees: t.agrees(),
            zigzag: t.zigzag.as_ref().map(|z| ZigZagJson::new(ctx, z)),
        })
        .collect();
    let all_agree = entries.iter().all(|r| r.agrees);
    let out = MinorsOutput { dissection: d.to_json(), flavor, entries, all_agree };
    let text = || {
        let mut s = String::new();
        for r in &out.entries {
            let mark = if r.agrees { "" } else { "  MISMATCH formula=" };
            let formula = if r.agrees { "" } else { r.formula.as_str() };
            let cert = r.zigzag.as_ref().map(|z| format!("  via {}", z.describe())).unwrap_or_default();
            let _ = writeln!(s, "d(e{}, e{}) = {}{mark}{formula}{cert}", r.e, r.f, r.minor);
        }
        let _ = writeln!(s, "{}", if out.all_agree { "all minors match the zig-zag formula" } else { "some minors differ" });
        s
    };
    ctx.emit(&out, text, all_agree)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZigzagOutput {
    pub dissection: DissectionJson,
    pub flavor: Flavor,
    pub e: usize,
    pub f: usize,
    pub zigzag: Option<ZigZagJson>,
    pub minor: String,
    pub formula: String,
    pub agrees: bool,
}

fn cmd_zigzag(ctx: &Ctx, d: &Dissection, i: usize, j: usize, flavor: Flavor) -> Result<Outcome, String> {
    let (e, f) = (EdgeRef(i), EdgeRef(j));
    let z = find_zigzag(d, e, f).map_err(|err| err.to_string())?;
    let formula = minor_formula_for(d, e, f, flavor).map_err(|err| err.to_string())?;
    let value = minor(&weight_matrix(d, flavor), e, f);
    let out = ZigzagOutput {
        dissection: d.to_json(),
        flavor,
        e: i,
        f: j,
        zigzag: z.as_ref().map(|z| ZigZagJson::new(ctx, z)),
        minor: ctx.poly(&value),
        formula: ctx.poly(&formula),
        agrees: value == formula,
    };
    let text = || {
        let mut s = String::new();
        match &out.zigzag {
            Some(z) => {
                let _ = writeln!(s, "zig-zag from e{i} to e{j}: {}", z.describe());
            }
            None => {
                let _ = writeln!(s, "no zig-zag sequence from e{i} to e{j}");
            }
        }
        let _ = writeln!(s, "d(e{i}, e{j}) = {}", out.minor);
        let _ = writeln!(s, "formula      = {}", out.formula);
        s
    };
    Ok(ctx.emit(&out, text, out.agrees))
}

// ---------------------------------------------------------------- verify

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

/// All checks run on one dissection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub dissection: DissectionJson,
    pub det_arithmetic: String,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub reports: Vec<RunReport>,
}

/// Names of the checks in a [`RunReport`], in order.
pub const CHECK_NAMES: [&str; 11] = [
    "arithmetic_symmetry",
    "complementary_symmetry_x",
    "complementary_symmetry_xq",
    "det_arithmetic",
    "det_x",
    "det_xq",
    "diagonal_form",
    "smith_form",
    "zigzag_minors",
    "specialization",
    "walk_oracle",
];

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub fuzz: bool,
    pub timings: bool,
    pub seed: u64,
}

/// The three walk matrices of a dissection, possibly corrupted.
struct Matrices {
    arithmetic: WeightMatrix,
    x: WeightMatrix,
    xq: WeightMatrix,
}

impl Matrices {
    fn new(d: &Dissection, opts: &VerifyOptions) -> Self {
        let mut m = Matrices {
            arithmetic: weight_matrix(d, Flavor::Arithmetic),
            x: weight_matrix(d, Flavor::X),
            xq: weight_matrix(d, Flavor::Xq),
        };
        if opts.fuzz {
            let n = d.n();
            let i = (opts.seed % n as u64) as usize;
            let j = (i + 1 + (opts.seed / n as u64) as usize % (n - 1)) % n;
            for w in [&mut m.arithmetic, &mut m.x, &mut m.xq] {
                w.matrix_mut()[(i, j)] += &LaurentPoly::one();
            }
        }
        m
    }

    fn get(&self, flavor: Flavor) -> &WeightMatrix {
        match flavor {
            Flavor::Arithmetic => &self.arithmetic,
            Flavor::X => &self.x,
            Flavor::Xq => &self.xq,
        }
    }
}

type CheckFn = fn(&Dissection, &Matrices) -> Result<(), String>;

fn check(name: &str, timings: bool, f: impl FnOnce() -> Result<(), String>) -> CheckResult {
    let start = Instant::now();
    let outcome = f();
    let millis = timings.then(|| start.elapsed().as_millis() as u64);
    let (status, witness) = match outcome {
        Ok(()) => (Status::Pass, None),
        Err(w) if w.starts_with("skipped") => (Status::Skipped, Some(w)),
        Err(w) => (Status::Fail, Some(shorten(w))),
    };
    CheckResult { name: name.to_string(), status, witness, millis }
}

/// Witnesses can be huge polynomials; keep reports readable.
const WITNESS_MAX: usize = 240;

fn shorten(mut w: String) -> String {
    if w.len() > WITNESS_MAX {
        let cut = (0..=WITNESS_MAX).rev().find(|&k| w.is_char_boundary(k)).unwrap_or(0);
        w.truncate(cut);
        w.push_str(" ...");
    }
    w
}

fn symmetry(w: &WeightMatrix) -> Result<(), String> {
    let s = check_complementary_symmetry(w);
    match s.violation {
        None => Ok(()),
        Some((i, j)) => Err(format!("entry ({i},{j}) = {} vs ({j},{i}) = {}", w.entry(i as i64, j as i64), w.entry(j as i64, i as i64))),
    }
}

fn det_check(d: &Dissection, m: &Matrices, flavor: Flavor) -> Result<(), String> {
    if d.n() > DET_EXPAND_MAX {
        return Err(format!("skipped: n = {} exceeds the expansion guard", d.n()));
    }
    let expanded = det_expand(m.get(flavor).matrix()).map_err(|e| e.to_string())?;
    let formula = det_formula(d, flavor);
    if expanded == formula {
        Ok(())
    } else {
        Err(format!("expansion {expanded} differs from formula {formula}"))
    }
}

fn diagonal_form_check(d: &Dissection, m: &Matrices) -> Result<(), String> {
    let form = diagonalize(d, Flavor::Xq).map_err(|e| e.to_string())?;
    if !form.verify(m.xq.matrix()) {
        return Err("P W Q differs from D".into());
    }
    if form.d != expected_diagonal(d, Flavor::Xq) {
        return Err("D differs from the predicted diagonal".into());
    }
    for (name, det) in [("P", &form.det_p), ("Q", &form.det_q)] {
        if det.is_unit().is_none() {
            return Err(format!("det {name} = {det} is not a unit"));
        }
    }
    Ok(())
}

fn smith_check(d: &Dissection, m: &Matrices) -> Result<(), String> {
    let int = IntMatrix::try_from_poly(m.arithmetic.matrix()).ok_or("non-integer walk counts")?;
    let form = arithmetic_diagonal_form(d).map_err(|e| e.to_string())?;
    if !check_int_form(&int, &form.u, &form.diagonal, &form.v) {
        return Err("U M V differs from the diagonal form".into());
    }
    let mut got: Vec<BigInt> = form.diagonal.clone();
    got.sort();
    let mut want: Vec<BigInt> = d.piece_type().iter().map(|&k| BigInt::from(k as i64 - 1)).collect();
    want.resize(d.n(), BigInt::from(1));
    want.sort();
    if got != want {
        return Err(format!("diagonal multiset {got:?} differs from {want:?}"));
    }
    let smith = smith_normal_form(&int);
    if !smith.verify(&int) {
        return Err("Smith form transforms do not verify".into());
    }
    let n = d.n();
    let diag = IntMatrix::from_rows(
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { form.diagonal[i].clone() } else { BigInt::from(0) }).collect())
            .collect(),
    );
    if smith_normal_form(&diag).invariant_factors != smith.invariant_factors {
        return Err("invariant factors of the diagonal form and of M differ".into());
    }
    Ok(())
}

fn zigzag_check(_d: &Dissection, m: &Matrices) -> Result<(), String> {
    match minor_table(&m.xq).into_iter().find(|t| !t.agrees()) {
        None => Ok(()),
        Some(t) => Err(format!("d(e{}, e{}) = {} but the formula gives {}", t.e.0, t.f.0, t.minor, t.formula)),
    }
}

fn specialization_check(d: &Dissection, m: &Matrices) -> Result<(), String> {
    let ones = all_ones(d);
    let collapsed = specialize(&m.xq, &ones).map_err(|e| e.to_string())?;
    if collapsed.matrix() != m.arithmetic.matrix() {
        return Err("W(x;q) at x = q = 1 differs from M".into());
    }
    let arithmetic = det_formula(d, Flavor::Arithmetic);
    let from_xq = det_formula(d, Flavor::Xq).substitute(&ones).map_err(|e| e.to_string())?;
    if from_xq != arithmetic {
        return Err(format!("specialised determinant {from_xq} differs from {arithmetic}"));
    }
    let n = d.n();
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            let value = minor(&m.arithmetic, EdgeRef(i), EdgeRef(j));
            let zig = find_zigzag(d, EdgeRef(i), EdgeRef(j)).map_err(|e| e.to_string())?.is_some();
            let expected = if zig { LaurentPoly::one() } else { LaurentPoly::zero() };
            if value != expected {
                return Err(format!("arithmetic d(e{i}, e{j}) = {value}, expected {expected}"));
            }
        }
    }
    Ok(())
}

fn walk_oracle_check(d: &Dissection, m: &Matrices) -> Result<(), String> {
    let n = d.n();
    if n > WALK_ORACLE_MAX {
        return Err(format!("skipped: walk enumeration limited to n <= {WALK_ORACLE_MAX}"));
    }
    for flavor in Flavor::ALL {
        let w = m.get(flavor);
        for i in 1..=n {
            for j in 1..=n {
                let summed: LaurentPoly = enumerate_walks(d, i, j).iter().map(|walk| walk_weight(d, walk, flavor)).sum();
                if &summed != w.entry(i as i64, j as i64) {
                    return Err(format!("{} entry ({i},{j}): walks give {summed}", flavor.name()));
                }
            }
        }
    }
    Ok(())
}

/// Run every check on one dissection.
pub fn verify_dissection(d: &Dissection, opts: &VerifyOptions) -> RunReport {
    let m = Matrices::new(d, opts);
    let table: [(&str, CheckFn); 11] = [
        (CHECK_NAMES[0], |_, m| symmetry(&m.arithmetic)),
        (CHECK_NAMES[1], |_, m| symmetry(&m.x)),
        (CHECK_NAMES[2], |_, m| symmetry(&m.xq)),
        (CHECK_NAMES[3], |d, m| det_check(d, m, Flavor::Arithmetic)),
        (CHECK_NAMES[4], |d, m| det_check(d, m, Flavor::X)),
        (CHECK_NAMES[5], |d, m| det_check(d, m, Flavor::Xq)),
        (CHECK_NAMES[6], diagonal_form_check),
        (CHECK_NAMES[7], smith_check),
        (CHECK_NAMES[8], zigzag_check),
        (CHECK_NAMES[9], specialization_check),
        (CHECK_NAMES[10], walk_oracle_check),
    ];
    let checks: Vec<CheckResult> = table.iter().map(|(name, f)| check(name, opts.timings, || f(d, &m))).collect();
    RunReport {
        dissection: d.to_json(),
        det_arithmetic: det_formula(d, Flavor::Arithmetic).to_string(),
        passed: checks.iter().all(|c| c.status != Status::Fail),
        checks,
    }
}

fn cmd_verify(ctx: &Ctx, ds: &[Dissection], opts: &VerifyOptions) -> Outcome {
    let reports: Vec<RunReport> = ds.par_iter().map(|d| verify_dissection(d, opts)).collect();
    let passed = reports.iter().filter(|r| r.passed).count();
    let out = VerifyOutput { total: reports.len(), passed, failed: reports.len() - passed, reports };
    let text = || {
        let mut s = String::new();
        let single = out.reports.len() == 1;
        for (r, d) in out.reports.iter().zip(ds) {
            if single {
                let _ = writeln!(s, "{d}  type {:?}  det M = {}", d.piece_type(), r.det_arithmetic);
                for c in &r.checks {
                    let status = match c.status {
                        Status::Pass => "pass",
                        Status::Fail => "FAIL",
                        Status::Skipped => "skip",
                    };
                    let witness = c.witness.as_deref().map(|w| format!("  ({w})")).unwrap_or_default();
                    let time = c.millis.map(|ms| format!("  {ms} ms")).unwrap_or_default();
                    let _ = writeln!(s, "  {status}  {}{witness}{time}", c.name);
                }
            } else if !r.passed {
                for c in r.checks.iter().filter(|c| c.status == Status::Fail) {
                    let _ = writeln!(s, "FAIL {d} {}: {}", c.name, c.witness.as_deref().unwrap_or(""));
                }
            }
        }
        let _ = writeln!(s, "{} of {} dissections passed every check", out.passed, out.total);
        s
    };
    ctx.emit(&out, text, out.failed == 0)
}
