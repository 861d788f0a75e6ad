//! Command-line front end.
//!
//! Exit codes: 0 when every checked inequality holds, 1 when one is violated
//! (or a witness fails verification), 2 on usage and domain errors, 3 when a
//! transcendental comparison stays undecided.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bounds::{
    condg2_check, eq1_check, eq2_check, eq3_check, oze_check, ozl2_check, schur_bounds,
    theorem4_check, BoundReport, SchurInput, Theorem4,
};
use crate::deltabases::{expand_explicit, multiplicity_from_coeffs, DeltaBasisSpec, ExpansionVector};
use crate::error::Error;
use crate::exact::interval::Verdict;
use crate::exact::{format_rational, multiplicity_at, parse_rational, parse_rational_list, rat, BigRational};
use crate::extremal::{bound_vs_search_table, search_max_multiplicity, verify_witness, SearchProblem};
use crate::families::{FamilySpec, Scaled, TailSum};
use crate::macwilliams::{code_polynomial, macwilliams_transform, vanishing_factor, DistanceDistribution};
use crate::report::{emit_report, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "multizero",
    version,
    about = "Exact bounds on the multiplicity of a zero of an expansion in discrete orthogonal bases"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutFormat::Json, global = true)]
    format: OutFormat,
    /// Render values as decimals instead of exact fractions.
    #[arg(long, global = true)]
    decimal: bool,
    /// Digits after the decimal point for decimal output.
    #[arg(long, default_value_t = 20, global = true)]
    precision: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weights, values, normalizers, kernels and tail sums of a family.
    Families(FamiliesArgs),
    /// Evaluate one or more inequalities.
    Bounds(BoundsArgs),
    /// Check a claimed multiplicity by two independent routes.
    Verify(VerifyArgs),
    /// Search an alphabet for the largest multiplicity at 1.
    Search(SearchArgs),
    /// Distance distribution of a code: dual, code polynomial, zero at 1.
    Macwilliams(MacwilliamsArgs),
    /// Searched optimum against the a-priori cap for a range of degrees.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyName {
    Hahn,
    Chebyshev,
    Krawtchouk,
    Meixner,
    Charlier,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Option<FamilyName>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    /// Translate the support by this amount.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    shift: i64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyOp {
    Weight,
    Value,
    Norm,
    Gsq,
    Kernel,
    Tail,
    Dual,
}

#[derive(Args, Debug)]
struct FamiliesArgs {
    #[arg(value_enum)]
    op: FamilyOp,
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    fam: FamilyArgs,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<i64>,
    #[arg(long)]
    mu: Option<usize>,
    #[arg(long)]
    lo: Option<usize>,
    #[arg(long)]
    hi: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundArg {
    Ozl2,
    Condg2,
    Eq1,
    Eq2,
    Eq3,
    Meixner1,
    Meixner2,
    Charlier3,
    Oze,
    Schur,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BasisName {
    Monomial,
    Krawtchouk,
    Laguerre,
}

#[derive(Args, Debug)]
struct BasisArgs {
    #[arg(long, value_enum, default_value_t = BasisName::Monomial)]
    basis: BasisName,
    /// Parameter of the Laguerre basis.
    #[arg(long, allow_hyphen_values = true)]
    basis_alpha: Option<String>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    /// Comma separated list of inequalities.
    #[arg(value_enum, value_delimiter = ',', required = true)]
    names: Vec<BoundArg>,
    /// Expansion coefficients, or `-` to read them from stdin.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    basis: BasisArgs,
    #[command(flatten)]
    fam: FamilyArgs,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    s: i64,
    /// Stated multiplicity; defaults to the detected one.
    #[arg(long)]
    mu: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Number of real roots, for the Schur comparison.
    #[arg(long)]
    nu: Option<usize>,
    #[arg(long)]
    a0: Option<String>,
    #[arg(long)]
    an: Option<String>,
    #[arg(long)]
    l2sq: Option<String>,
    #[arg(long)]
    l1: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    coeffs: String,
    #[arg(long)]
    mu: usize,
    #[command(flatten)]
    basis: BasisArgs,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true, default_value = "-1,0,1")]
    alphabet: String,
    /// Also admit vectors with a_0 = 0.
    #[arg(long)]
    allow_zero_a0: bool,
    #[arg(long)]
    no_pruning: bool,
    #[arg(long, default_value_t = crate::extremal::DEFAULT_WITNESS_CAP)]
    witness_cap: usize,
}

#[derive(Args, Debug)]
struct MacwilliamsArgs {
    /// JSON array `[B_0, ..., B_n]`, or `-` to read it from stdin.
    #[arg(long)]
    dist: String,
    /// Code distance for the vanishing factor.
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, default_value_t = 1)]
    from: usize,
    #[arg(long)]
    to: usize,
    #[arg(long, allow_hyphen_values = true, default_value = "-1,0,1")]
    alphabet: String,
}

#[derive(Debug)]
struct CliError {
    kind: &'static str,
    message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError {
        kind: "Usage",
        message: message.into(),
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

struct Ctx<'a> {
    format: Format,
    decimal: Option<usize>,
    stdin: &'a mut dyn Read,
}

impl Ctx<'_> {
    fn read_arg(&mut self, arg: &str) -> CliResult<String> {
        if arg.trim() != "-" {
            return Ok(arg.to_string());
        }
        let mut s = String::new();
        self.stdin
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
        Ok(s)
    }

    fn coeffs(&mut self, arg: &str) -> CliResult<Vec<BigRational>> {
        let text = self.read_arg(arg)?;
        let joined = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect::<Vec<_>>()
            .join(",");
        let v = parse_rational_list(&joined)?;
        if v.is_empty() {
            return Err(usage("no coefficients given"));
        }
        Ok(v)
    }

    fn rational(&self, r: &BigRational) -> String {
        match self.decimal {
            Some(d) => crate::exact::to_decimal(r, d),
            None => format_rational(r),
        }
    }

    fn enclosure_bits(&self) -> u32 {
        let digits = self.decimal.unwrap_or(20) as u32;
        digits * 4 + 64
    }

    fn scaled(&self, s: &Scaled) -> (String, Option<String>) {
        let digits = self.decimal.unwrap_or(20);
        match (s.as_exact(), self.decimal) {
            (Some(r), _) => (self.rational(r), None),
            (None, Some(_)) => (s.enclosure(self.enclosure_bits()).to_decimal(digits), None),
            (None, None) => (s.to_string(), Some(s.enclosure(self.enclosure_bits()).to_decimal(digits))),
        }
    }
}

fn opt_rational(s: &Option<String>, what: &str) -> CliResult<Option<BigRational>> {
    s.as_deref()
        .map(|t| parse_rational(t).map_err(|e| usage(format!("--{what}: {e}"))))
        .transpose()
}

fn need<T: Clone>(v: &Option<T>, what: &str) -> CliResult<T> {
    v.clone().ok_or_else(|| usage(format!("--{what} is required")))
}

fn build_family(n: Option<usize>, a: &FamilyArgs) -> CliResult<FamilySpec> {
    let name = a.family.ok_or_else(|| usage("--family is required"))?;
    let fam = match name {
        FamilyName::Hahn => FamilySpec::hahn(
            need(&n, "n")?,
            need(&opt_rational(&a.alpha, "alpha")?, "alpha")?,
            need(&opt_rational(&a.beta, "beta")?, "beta")?,
        )?,
        FamilyName::Chebyshev => FamilySpec::chebyshev(need(&n, "n")?),
        FamilyName::Krawtchouk => {
            FamilySpec::krawtchouk(need(&n, "n")?, need(&opt_rational(&a.q, "q")?, "q")?)?
        }
        FamilyName::Meixner => FamilySpec::meixner(
            need(&opt_rational(&a.beta, "beta")?, "beta")?,
            need(&opt_rational(&a.q, "q")?, "q")?,
        )?,
        FamilyName::Charlier => {
            FamilySpec::charlier(need(&opt_rational(&a.lambda, "lambda")?, "lambda")?)?
        }
    };
    Ok(fam.shifted(a.shift))
}

fn build_basis(n: usize, a: &BasisArgs) -> CliResult<DeltaBasisSpec> {
    Ok(match a.basis {
        BasisName::Monomial => DeltaBasisSpec::monomial(n),
        BasisName::Krawtchouk => DeltaBasisSpec::krawtchouk_product(n),
        BasisName::Laguerre => DeltaBasisSpec::laguerre_ratio(
            n,
            need(&opt_rational(&a.basis_alpha, "basis-alpha")?, "basis-alpha")?,
        )?,
    })
}

fn expansion(coeffs: Vec<BigRational>, n: Option<usize>, basis: &BasisArgs) -> CliResult<ExpansionVector> {
    let len = coeffs.len();
    if let Some(n) = n {
        if n + 1 != len {
            return Err(usage(format!("--n {n} needs {} coefficients, got {len}", n + 1)));
        }
    }
    Ok(ExpansionVector::new(build_basis(len - 1, basis)?, coeffs)?)
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

struct Output {
    text: String,
    code: i32,
}

fn ok(text: String) -> CliResult<Output> {
    Ok(Output { text, code: EXIT_OK })
}

fn families(ctx: &mut Ctx, a: &FamiliesArgs) -> CliResult<Output> {
    let fam = build_family(a.n, &a.fam)?;
    let k = || need(&a.k, "k");
    let x = || need(&a.x, "x");
    let (value, enclosure) = match a.op {
        FamilyOp::Weight => (ctx.rational(&fam.weight(x()?)?), None),
        FamilyOp::Value => (ctx.rational(&fam.unnormalized_value(k()?, x()?)?), None),
        FamilyOp::Norm => ctx.scaled(&fam.norm_constant(k()?)?),
        FamilyOp::Gsq => ctx.scaled(&fam.g_squared(k()?, x()?)?),
        FamilyOp::Kernel => {
            let s = need(&a.s, "s")?;
            let lo = a.lo.unwrap_or(0);
            let kern = fam.kernel(s, a.x.unwrap_or(s), lo, need(&a.hi, "hi")?)?;
            ctx.scaled(&kern)
        }
        FamilyOp::Tail => {
            let tail = fam.tail_sum(need(&a.s, "s")?, need(&a.mu, "mu")?)?;
            match &tail {
                TailSum::Exact(r) => (ctx.rational(r), None),
                TailSum::Complement { .. } => {
                    let iv = tail.enclosure(ctx.enclosure_bits()).to_decimal(ctx.decimal.unwrap_or(20));
                    if ctx.decimal.is_some() {
                        (iv, None)
                    } else {
                        (tail.to_string(), Some(iv))
                    }
                }
            }
        }
        FamilyOp::Dual => (
            ctx.rational(&fam.dual_orthogonality_check(x()?, need(&a.y, "y")?)?),
            None,
        ),
    };
    let op = a.op.to_possible_value().expect("not skipped").get_name().to_string();
    let text = match ctx.format {
        Format::Json => {
            let mut obj = json!({ "family": fam.to_string(), "op": op, "value": value });
            if let Some(e) = enclosure {
                obj["enclosure"] = Value::String(e);
            }
            pretty(&obj)
        }
        Format::Csv => csv_table(
            &["family", "op", "value", "enclosure"],
            &[vec![fam.to_string(), op, value, enclosure.unwrap_or_default()]],
        ),
    };
    ok(text)
}

fn bounds(ctx: &mut Ctx, a: &BoundsArgs) -> CliResult<Output> {
    let coeffs = a.coeffs.as_deref().map(|c| ctx.coeffs(c)).transpose()?;
    let vector = || -> CliResult<ExpansionVector> {
        let c = coeffs.clone().ok_or_else(|| usage("--coeffs is required"))?;
        expansion(c, a.n, &a.basis)
    };
    let monomial = || -> CliResult<ExpansionVector> {
        let v = vector()?;
        if !matches!(a.basis.basis, BasisName::Monomial) {
            return Err(usage("this inequality is stated for the monomial basis"));
        }
        Ok(v)
    };
    let q = opt_rational(&a.fam.q, "q")?;
    let mut reports: Vec<BoundReport> = Vec::new();
    let mut seen = Vec::new();
    for &name in &a.names {
        if seen.contains(&name) {
            continue;
        }
        seen.push(name);
        match name {
            BoundArg::Ozl2 | BoundArg::Condg2 => {
                let v = vector()?;
                let fam = build_family(a.n.or(Some(v.n())), &a.fam)?;
                let mu = match a.mu {
                    Some(m) => m,
                    None => multiplicity_from_coeffs(&v)?,
                };
                reports.push(if name == BoundArg::Ozl2 {
                    ozl2_check(&v, &fam, a.s, mu)?
                } else {
                    condg2_check(&v, &fam, a.s, mu)?
                });
            }
            BoundArg::Eq1 => reports.push(eq1_check(&monomial()?)?),
            BoundArg::Eq2 => reports.push(eq2_check(&monomial()?)?),
            BoundArg::Eq3 => reports.push(eq3_check(&monomial()?, &q.clone().unwrap_or_else(|| rat(1)))?),
            BoundArg::Meixner1 | BoundArg::Meixner2 | BoundArg::Charlier3 => {
                let (which, default_q) = match name {
                    BoundArg::Meixner1 => (Theorem4::Meixner1, rat(2)),
                    BoundArg::Meixner2 => (Theorem4::Meixner2, rat(2)),
                    _ => (Theorem4::Charlier3, rat(1)),
                };
                reports.push(theorem4_check(&monomial()?, which, &q.clone().unwrap_or(default_q))?);
            }
            BoundArg::Oze => reports.push(oze_check(need(&a.n, "n")?, need(&a.k, "k")?)?),
            BoundArg::Schur => {
                let (s1, s2) = schur(a, coeffs.as_deref())?;
                reports.push(s1);
                reports.push(s2);
            }
        }
    }
    let code = if reports.iter().any(|r| r.verdict == Verdict::Violated) {
        EXIT_VIOLATED
    } else if reports.iter().any(|r| r.verdict == Verdict::Undecided) {
        EXIT_UNDECIDED
    } else {
        EXIT_OK
    };
    Ok(Output {
        text: emit_report(&reports, ctx.format, ctx.decimal),
        code,
    })
}

fn schur(a: &BoundsArgs, coeffs: Option<&[BigRational]>) -> CliResult<(BoundReport, BoundReport)> {
    use num_traits::Signed;
    let from_coeffs = coeffs.map(|c| {
        let l2: BigRational = c.iter().map(|x| x * x).sum();
        let l1: BigRational = c.iter().map(|x| x.abs()).sum();
        (c[0].abs(), c[c.len() - 1].abs(), c.len() - 1, l2, l1)
    });
    let pick = |flag: &Option<String>, what: &str, fallback: Option<BigRational>| -> CliResult<BigRational> {
        opt_rational(flag, what)?
            .or(fallback)
            .ok_or_else(|| usage(format!("--{what} or --coeffs is required")))
    };
    let f = from_coeffs.clone();
    let inp = SchurInput {
        a0: pick(&a.a0, "a0", f.as_ref().map(|t| t.0.clone()))?,
        an: pick(&a.an, "an", f.as_ref().map(|t| t.1.clone()))?,
        n: a.n.or(f.as_ref().map(|t| t.2)).ok_or_else(|| usage("--n or --coeffs is required"))?,
        nu: need(&a.nu, "nu")?,
    };
    let l2 = pick(&a.l2sq, "l2sq", f.as_ref().map(|t| t.3.clone()))?;
    let l1 = pick(&a.l1, "l1", f.map(|t| t.4))?;
    Ok(schur_bounds(&inp, &l2, &l1)?)
}

fn verify(ctx: &mut Ctx, a: &VerifyArgs) -> CliResult<Output> {
    let coeffs = ctx.coeffs(&a.coeffs)?;
    let v = expansion(coeffs.clone(), None, &a.basis)?;
    let from_coeffs = multiplicity_from_coeffs(&v).ok();
    let by_division = expand_explicit(&v)
        .ok()
        .and_then(|p| multiplicity_at(&p, v.basis().c()).ok());
    let verified = match a.basis.basis {
        BasisName::Monomial => verify_witness(&coeffs, a.mu),
        _ => from_coeffs == Some(a.mu) && by_division == Some(a.mu),
    };
    let show = |m: Option<usize>| m.map_or(String::new(), |m| m.to_string());
    let text = match ctx.format {
        Format::Json => pretty(&json!({
            "basis": v.basis().name(),
            "claimed": a.mu,
            "from_coefficients": from_coeffs,
            "by_division": by_division,
            "verified": verified,
        })),
        Format::Csv => csv_table(
            &["basis", "claimed", "from_coefficients", "by_division", "verified"],
            &[vec![
                v.basis().name().to_string(),
                a.mu.to_string(),
                show(from_coeffs),
                show(by_division),
                verified.to_string(),
            ]],
        ),
    };
    Ok(Output {
        text,
        code: if verified { EXIT_OK } else { EXIT_VIOLATED },
    })
}

fn rational_list(ctx: &Ctx, v: &[BigRational]) -> Vec<String> {
    v.iter().map(|r| ctx.rational(r)).collect()
}

fn search(ctx: &mut Ctx, a: &SearchArgs) -> CliResult<Output> {
    let alphabet = parse_rational_list(&a.alphabet)?;
    let mut prob = SearchProblem::new(a.n, alphabet)?;
    prob.require_a0_nonzero = !a.allow_zero_a0;
    prob.pruning = !a.no_pruning;
    prob.witness_cap = a.witness_cap;
    let res = search_max_multiplicity(&prob)?;
    let text = match ctx.format {
        Format::Json => pretty(&json!({
            "n": prob.n,
            "alphabet": rational_list(ctx, &prob.alphabet),
            "require_a0_nonzero": prob.require_a0_nonzero,
            "pruning": prob.pruning,
            "mu_max": res.mu_max,
            "bound_used": res.bound_used,
            "witness_count": res.witness_count,
            "sign_reduced": res.sign_reduced,
            "nodes_explored": res.nodes_explored,
            "witnesses": res.witnesses.iter().map(|w| rational_list(ctx, w)).collect::<Vec<_>>(),
        })),
        Format::Csv => csv_table(
            &["n", "mu_max", "bound_used", "witness"],
            &res.witnesses
                .iter()
                .map(|w| {
                    vec![
                        prob.n.to_string(),
                        res.mu_max.to_string(),
                        res.bound_used.to_string(),
                        rational_list(ctx, w).join(" "),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    };
    ok(text)
}

fn parse_distribution(text: &str) -> CliResult<Vec<BigRational>> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| usage(format!("--dist is not JSON: {e}")))?;
    let items = value
        .as_array()
        .ok_or_else(|| usage("--dist must be a JSON array"))?;
    items
        .iter()
        .map(|item| match item {
            Value::Number(x) => Ok(parse_rational(&x.to_string())?),
            Value::String(s) => Ok(parse_rational(s)?),
            _ => Err(usage("distribution entries must be numbers or \"p/q\" strings")),
        })
        .collect()
}

fn macwilliams(ctx: &mut Ctx, a: &MacwilliamsArgs) -> CliResult<Output> {
    let text = ctx.read_arg(&a.dist)?;
    let dist = DistanceDistribution::new(parse_distribution(&text)?)?;
    let dual = macwilliams_transform(&dist)?;
    let poly = code_polynomial(&dist);
    let n = dist.n();
    let poly_coeffs: Vec<BigRational> = (0..=n).map(|i| poly.coeff(i)).collect();
    let factor = a.d.map(|d| vanishing_factor(&dist, d)).transpose()?;
    let text = match ctx.format {
        Format::Json => {
            let mut obj = json!({
                "n": n,
                "size": ctx.rational(&dist.size()),
                "distribution": rational_list(ctx, dist.coeffs()),
                "dual": rational_list(ctx, &dual),
                "code_polynomial": rational_list(ctx, &poly_coeffs),
            });
            if let (Some(d), Some((q, mu))) = (a.d, &factor) {
                let qc: Vec<BigRational> = q.coeffs().to_vec();
                obj["vanishing"] = json!({
                    "d": d,
                    "mu": mu,
                    "quotient": rational_list(ctx, &qc),
                });
            }
            pretty(&obj)
        }
        Format::Csv => csv_table(
            &["i", "b", "dual", "code_polynomial"],
            &(0..=n)
                .map(|i| {
                    vec![
                        i.to_string(),
                        ctx.rational(&dist.coeffs()[i]),
                        ctx.rational(&dual[i]),
                        ctx.rational(&poly_coeffs[i]),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    };
    ok(text)
}

fn table(ctx: &mut Ctx, a: &TableArgs) -> CliResult<Output> {
    if a.from == 0 || a.from > a.to {
        return Err(usage("need 1 <= --from <= --to"));
    }
    let alphabet = parse_rational_list(&a.alphabet)?;
    let rows = bound_vs_search_table(a.from..=a.to, &alphabet)?;
    let text = match ctx.format {
        Format::Json => pretty(&serde_json::to_value(&rows).expect("rows serialize")),
        Format::Csv => csv_table(
            &["n", "mu_star", "cap", "envelope"],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.mu_star.to_string(),
                        r.cap.to_string(),
                        format!("{:.6}", r.envelope),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    };
    let code = if rows.iter().all(|r| r.mu_star <= r.cap) {
        EXIT_OK
    } else {
        EXIT_VIOLATED
    };
    Ok(Output { text, code })
}

fn write_error(err: &mut dyn Write, e: &CliError) {
    let obj = json!({ "error": e.kind, "message": e.message });
    let _ = writeln!(err, "{}", serde_json::to_string(&obj).expect("json"));
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            write_error(err, &usage(e.to_string().trim_end()));
            return EXIT_USAGE;
        }
    };
    let mut ctx = Ctx {
        format: match cli.format {
            OutFormat::Json => Format::Json,
            OutFormat::Csv => Format::Csv,
        },
        decimal: cli.decimal.then_some(cli.precision),
        stdin,
    };
    let result = match &cli.command {
        Command::Families(a) => families(&mut ctx, a),
        Command::Bounds(a) => bounds(&mut ctx, a),
        Command::Verify(a) => verify(&mut ctx, a),
        Command::Search(a) => search(&mut ctx, a),
        Command::Macwilliams(a) => macwilliams(&mut ctx, a),
        Command::Table(a) => table(&mut ctx, a),
    };
    match result {
        Ok(o) => {
            let _ = write!(out, "{}", o.text);
            if !o.text.ends_with('\n') {
                let _ = writeln!(out);
            }
            o.code
        }
        Err(e) => {
            write_error(err, &e);
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        call_stdin(args, "")
    }

    fn call_stdin(args: &[&str], input: &str) -> (i32, String, String) {
        let mut argv = vec!["multizero"];
        argv.extend_from_slice(args);
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn json(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn eq1_sharp_report() {
        let (code, out, _) = call(&["bounds", "eq1", "--n", "5", "--coeffs", "1,-5,10,-10,5,-1"]);
        assert_eq!(code, 0);
        let v = json(&out);
        assert_eq!(v[0]["sharp"], true);
        assert_eq!(v[0]["lhs"], "252/1");
    }

    #[test]
    fn chebyshev_tail() {
        let (code, out, _) =
            call(&["families", "tail", "--family", "chebyshev", "--n", "2", "--s", "0", "--mu", "1"]);
        assert_eq!(code, 0);
        assert_eq!(json(&out)["value"], "2/3");
    }

    #[test]
    fn search_n6() {
        let (code, out, _) = call(&["search", "--n", "6", "--alphabet", "-1,0,1"]);
        assert_eq!(code, 0);
        let v = json(&out);
        assert_eq!(v["mu_max"], 3);
        let w: Vec<Value> = ["1/1", "-1/1", "-1/1", "0/1", "1/1", "1/1", "-1/1"]
            .iter()
            .map(|s| Value::String(s.to_string()))
            .collect();
        assert!(v["witnesses"].as_array().unwrap().contains(&Value::Array(w)));
    }

    #[test]
    fn stdin_coefficients_and_csv() {
        let (code, out, _) = call_stdin(&["bounds", "eq1", "--format", "csv", "--coeffs", "-"], "1 -2 1\n");
        assert_eq!(code, 0);
        assert!(out.contains("6/1,6/1,true,true,false"));
    }

    #[test]
    fn usage_errors_exit_2_with_json() {
        let (code, _, err) = call(&["frobnicate"]);
        assert_eq!(code, 2);
        assert_eq!(json(err.trim())["error"], "Usage");
        let (code, _, err) = call(&["bounds", "eq1", "--coeffs", "1,1"]);
        assert_eq!(code, 2);
        assert_eq!(json(err.trim())["error"], "NoZero");
        let (code, _, err) = call(&["bounds", "eq1", "--n", "3", "--coeffs", "1,-1"]);
        assert_eq!(code, 2);
        assert_eq!(json(err.trim())["error"], "Usage");
    }

    #[test]
    fn failed_verification_exits_1() {
        assert_eq!(call(&["verify", "--coeffs", "1,-1", "--mu", "2"]).0, 1);
        assert_eq!(call(&["verify", "--coeffs", "1,-1,-1,0,1,1,-1", "--mu", "3"]).0, 0);
        assert_eq!(
            call(&["verify", "--coeffs", "1,-2,1", "--mu", "1", "--basis", "krawtchouk"]).0,
            1
        );
    }

    #[test]
    fn multiple_bounds_and_families() {
        let (code, out, _) = call(&[
            "bounds", "ozl2,condg2", "--coeffs", "1,-2,1", "--family", "chebyshev", "--n", "2",
        ]);
        // condg2 needs s outside the support.
        assert_eq!(code, 2, "{out}");
        let (code, out, _) = call(&[
            "bounds", "ozl2,eq1,eq2,eq3,meixner1,meixner2,charlier3", "--coeffs", "1,-2,1",
            "--family", "krawtchouk", "--q", "2",
        ]);
        assert_eq!(code, 0);
        assert_eq!(json(&out).as_array().unwrap().len(), 7);
        let (code, out, _) = call(&["families", "gsq", "--family", "charlier", "--lambda", "1", "--k", "2", "--x", "0"]);
        assert_eq!(code, 0);
        let v = json(&out);
        assert_eq!(v["value"], "1/2*exp(-1/1)");
        assert!(v["enclosure"].as_str().unwrap().starts_with("0.18393972058572116"));
    }

    #[test]
    fn macwilliams_and_table() {
        let (code, out, _) = call(&["macwilliams", "--dist", "[1,0,0,1]", "--d", "3"]);
        assert_eq!(code, 0);
        let v = json(&out);
        assert_eq!(v["dual"], json(r#"["1/1","0/1","3/1","0/1"]"#));
        assert_eq!(v["code_polynomial"], json(r#"["2/1","0/1","6/1","0/1"]"#));
        assert_eq!(v["vanishing"]["mu"], 3);
        let (code, out, _) = call(&["table", "--to", "6", "--format", "csv"]);
        assert_eq!(code, 0);
        assert!(out.lines().nth(6).unwrap().starts_with("6,3,4,"));
    }

    #[test]
    fn deterministic_output() {
        let args = ["search", "--n", "9", "--alphabet", "-1,0,1"];
        assert_eq!(call(&args), call(&args));
    }

    #[test]
    fn oze_and_schur() {
        let (code, out, _) = call(&["bounds", "oze", "--n", "10", "--k", "10"]);
        assert_eq!(code, 0);
        assert_eq!(json(&out)[0]["holds"], true);
        let (code, out, _) = call(&["bounds", "schur", "--coeffs", "1,-2,1", "--nu", "2"]);
        assert_eq!(code, 0);
        assert_eq!(json(&out).as_array().unwrap().len(), 2);
    }
}
