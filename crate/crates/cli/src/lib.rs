//! The `multicomb` command line: argument grammar, dispatch and rendering.
//!
//! Everything goes through [`run`], which writes results to `out`,
//! diagnostics to `err` and returns the process exit status, so the binary
//! is a thin wrapper and the tests can drive it in-process.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{self, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use multicomb::lambda::enumerate_lambda;
use multicomb::methods::{self, BenchReport, CountKind, Method};
use multicomb::oracle::EnumBudget;
use multicomb::pascal::{build_subs_table, render_subs_table};
use multicomb::perm::{build_perm_table, render_perm_table};
use multicomb::spec::{check_spec_identities, is_self_adjoint, multiboolean_cardinality};
use multicomb::subcount::{
    count_subs_composition, count_subs_constant, count_subs_function, count_subs_linear,
    count_subs_step,
};
use multicomb::{parse_multiset, Error, PrimarySpec};
use num_bigint::BigUint;
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_DISAGREEMENT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "multicomb",
    version,
    about = "Exact counts of m-submultisets and m-permutations of multisets"
)]
struct Cli {
    /// Emit a JSON envelope instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Show the primary, secondary and adjoint specifications.
    Spec(SpecArgs),
    /// Count m-submultisets or m-permutations.
    #[command(subcommand)]
    Count(CountCommand),
    /// Print the generalized Pascal triangle or the permutation fold tables.
    #[command(subcommand)]
    Table(TableCommand),
    /// Check the specification identities, the total count and symmetry.
    Verify(SpecArgs),
    /// Run every applicable method and compare results and work.
    Bench(BenchArgs),
}

/// A multiset such as `4,3,3,1`, `a^2,b,c^inf` or `inf,inf`.
#[derive(Args, Debug)]
struct SpecArgs {
    multiset: String,
    /// Replace unbounded multiplicities with this value.
    #[arg(long)]
    clamp: Option<u64>,
}

#[derive(Args, Debug)]
struct QueryArgs {
    multiset: String,
    #[arg(short = 'm')]
    m: u64,
    /// Print each member of Λ_m as space-separated integers before the result.
    #[arg(long)]
    list_lambda: bool,
    /// State budget for the brute-force oracle.
    #[arg(long, default_value_t = EnumBudget::default().max_states)]
    max_states: u64,
}

#[derive(Subcommand, Debug)]
enum CountCommand {
    Subs {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long, value_enum, default_value_t = SubsMethod::Auto, conflicts_with = "class")]
        method: SubsMethod,
        /// Evaluate with the closed form for a recognized multiset class.
        #[arg(long, value_enum)]
        class: Option<SubsClass>,
    },
    Perms {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long, value_enum, default_value_t = PermsMethod::Auto)]
        method: PermsMethod,
    },
}

#[derive(Subcommand, Debug)]
enum TableCommand {
    Subs(SpecArgs),
    Perms(SpecArgs),
}

#[derive(Args, Debug)]
struct BenchArgs {
    multiset: String,
    #[arg(short = 'm')]
    m: u64,
    #[arg(long, default_value_t = EnumBudget::default().max_states)]
    max_states: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SubsMethod {
    Formula,
    Dp,
    Composition,
    Oracle,
    Auto,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PermsMethod {
    Formula,
    Table,
    Oracle,
    Auto,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SubsClass {
    Function,
    Linear,
    Constant,
    Step,
}

impl SubsMethod {
    fn resolve(self) -> (Method, &'static str) {
        match self {
            SubsMethod::Formula => (Method::Formula, "formula"),
            SubsMethod::Dp | SubsMethod::Auto => (Method::Table, "dp"),
            SubsMethod::Composition => (Method::Composition, "composition"),
            SubsMethod::Oracle => (Method::Oracle, "oracle"),
        }
    }
}

impl PermsMethod {
    fn resolve(self) -> (Method, &'static str) {
        match self {
            PermsMethod::Formula => (Method::Formula, "formula"),
            PermsMethod::Table | PermsMethod::Auto => (Method::Table, "table"),
            PermsMethod::Oracle => (Method::Oracle, "oracle"),
        }
    }
}

impl SubsClass {
    fn name(self) -> &'static str {
        match self {
            SubsClass::Function => "function-class",
            SubsClass::Linear => "linear-class",
            SubsClass::Constant => "constant-class",
            SubsClass::Step => "step-class",
        }
    }
}

/// Failure of a command, carrying its exit status.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Disagreement(_) => EXIT_DISAGREEMENT,
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        // A reader that went away (`| head`) is not worth a diagnostic.
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure {
                code: EXIT_OK,
                message: String::new(),
            };
        }
        Failure {
            code: EXIT_INVALID,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let json = cli.json;
    let outcome = match cli.command {
        Command::Spec(a) => cmd_spec(&a, json, out, err),
        Command::Count(CountCommand::Subs {
            query,
            method,
            class,
        }) => match class {
            Some(class) => cmd_count_class(&query, class, json, out, err),
            None => cmd_count(CountKind::Subs, &query, method.resolve(), json, out, err),
        },
        Command::Count(CountCommand::Perms { query, method }) => {
            cmd_count(CountKind::Perms, &query, method.resolve(), json, out, err)
        }
        Command::Table(TableCommand::Subs(a)) => cmd_table_subs(&a, json, out, err),
        Command::Table(TableCommand::Perms(a)) => cmd_table_perms(&a, json, out, err),
        Command::Verify(a) => cmd_verify(&a, json, out, err),
        Command::Bench(a) => cmd_bench(&a, json, out, err),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(err, "error: {}", f.message);
            }
            f.code
        }
    }
}

/// Parses the multiset, warns about stripped zero entries and reduces it to
/// a primary specification.
fn load(text: &str, clamp: Option<u64>, err: &mut dyn Write) -> Result<PrimarySpec, Failure> {
    let parsed = parse_multiset(text)?;
    if !parsed.stripped.is_empty() {
        writeln!(
            err,
            "warning: dropped zero-multiplicity entries: {}",
            parsed.stripped.join(", ")
        )?;
    }
    Ok(parsed.multiset.primary_spec(clamp)?)
}

fn ms(elapsed: std::time::Duration) -> f64 {
    elapsed.as_secs_f64() * 1000.0
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> Outcome {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| Failure {
        code: EXIT_INVALID,
        message: e.to_string(),
    })?;
    writeln!(out)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct Query<'a> {
    kind: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<&'a str>,
}

#[derive(Serialize)]
struct CountEnvelope<'a> {
    input_spec: &'a [u64],
    query: Query<'a>,
    result: String,
    elapsed_ms: BTreeMap<&'a str, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<Vec<Vec<u64>>>,
}

fn lambda_rows(spec: &PrimarySpec, m: u64) -> Vec<Vec<u64>> {
    enumerate_lambda(m, &spec.adjoint())
        .map(|sol| sol.lambda)
        .collect()
}

/// A computed count and how it was obtained.
struct Answer {
    method: &'static str,
    value: BigUint,
    elapsed_ms: f64,
}

fn write_count(
    kind: CountKind,
    spec: &PrimarySpec,
    args: &QueryArgs,
    answer: Answer,
    json: bool,
    out: &mut dyn Write,
) -> Outcome {
    let Answer {
        method: method_name,
        value,
        elapsed_ms,
    } = answer;
    let lambda = args.list_lambda.then(|| lambda_rows(spec, args.m));
    if json {
        let kind = kind.to_string();
        return emit_json(
            out,
            &CountEnvelope {
                input_spec: spec.parts(),
                query: Query {
                    kind: &kind,
                    m: Some(args.m),
                    method: Some(method_name),
                },
                result: value.to_string(),
                elapsed_ms: BTreeMap::from([(method_name, elapsed_ms)]),
                lambda,
            },
        );
    }
    for row in lambda.iter().flatten() {
        let line: Vec<String> = row.iter().map(u64::to_string).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    writeln!(out, "{value}")?;
    Ok(EXIT_OK)
}

fn cmd_count(
    kind: CountKind,
    args: &QueryArgs,
    (method, name): (Method, &'static str),
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    // An m-sample uses at most m copies of any element.
    let spec = load(&args.multiset, Some(args.m), err)?;
    let budget = EnumBudget {
        max_states: args.max_states,
    };
    let start = Instant::now();
    let value = methods::count(kind, method, &spec, args.m, budget)?;
    let answer = Answer {
        method: name,
        value,
        elapsed_ms: ms(start.elapsed()),
    };
    write_count(kind, &spec, args, answer, json, out)
}

fn ascending(spec: &PrimarySpec) -> Result<Vec<u64>, Failure> {
    if spec.is_empty() {
        return Err(
            Error::Precondition("a multiset class needs at least one element".into()).into(),
        );
    }
    let mut parts = spec.parts().to_vec();
    parts.reverse();
    Ok(parts)
}

fn not_in_class(spec: &PrimarySpec, class: &str) -> Failure {
    Error::Precondition(format!("{spec} is not a {class} multiset")).into()
}

fn count_by_class(spec: &PrimarySpec, class: SubsClass, m: u64) -> Result<BigUint, Failure> {
    let parts = ascending(spec)?;
    let n = parts.len() as u64;
    Ok(match class {
        SubsClass::Function => count_subs_function(&parts, m)?,
        SubsClass::Linear => {
            let p = if n > 1 { parts[1] - parts[0] } else { 0 };
            if parts.windows(2).any(|w| w[1] - w[0] != p) {
                return Err(not_in_class(spec, "linear"));
            }
            count_subs_linear(p, parts[0] as i64 - p as i64, n, m)?
        }
        SubsClass::Constant => {
            if parts.iter().any(|&k| k != parts[0]) {
                return Err(not_in_class(spec, "constant"));
            }
            count_subs_constant(parts[0], n, m)?
        }
        SubsClass::Step => {
            let l = parts
                .iter()
                .map(|&k| {
                    (k + 1)
                        .is_power_of_two()
                        .then(|| (k + 1).trailing_zeros() as u64)
                })
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| not_in_class(spec, "step (2^l - 1)"))?;
            count_subs_step(&l, m)?
        }
    })
}

fn cmd_count_class(
    args: &QueryArgs,
    class: SubsClass,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let spec = load(&args.multiset, Some(args.m), err)?;
    let start = Instant::now();
    let value = count_by_class(&spec, class, args.m)?;
    let answer = Answer {
        method: class.name(),
        value,
        elapsed_ms: ms(start.elapsed()),
    };
    write_count(CountKind::Subs, &spec, args, answer, json, out)
}

#[derive(Serialize)]
struct SpecEnvelope<'a> {
    input_spec: &'a [u64],
    query: Query<'a>,
    primary: &'a [u64],
    secondary: Vec<u64>,
    adjoint: Vec<u64>,
    self_adjoint: bool,
    cardinality: String,
}

fn cmd_spec(args: &SpecArgs, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let spec = load(&args.multiset, args.clamp, err)?;
    let secondary = spec.secondary();
    let adjoint = spec.adjoint();
    let self_adjoint = is_self_adjoint(&spec);
    if json {
        return emit_json(
            out,
            &SpecEnvelope {
                input_spec: spec.parts(),
                query: Query {
                    kind: "spec",
                    m: None,
                    method: None,
                },
                primary: spec.parts(),
                secondary: secondary.lambda.clone(),
                adjoint: adjoint.kbar.clone(),
                self_adjoint,
                cardinality: spec.total().to_string(),
            },
        );
    }
    writeln!(out, "primary:      {spec}")?;
    writeln!(out, "secondary:    {secondary}")?;
    writeln!(out, "adjoint:      {adjoint}")?;
    writeln!(
        out,
        "self-adjoint: {}",
        if self_adjoint { "yes" } else { "no" }
    )?;
    writeln!(out, "cardinality:  {}", spec.total())?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct TableEnvelope<'a> {
    input_spec: &'a [u64],
    query: Query<'a>,
    rows: Vec<Vec<String>>,
    lines: Vec<String>,
}

fn decimal_rows(rows: &[Vec<BigUint>]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| r.iter().map(BigUint::to_string).collect())
        .collect()
}

fn write_lines(lines: &[String], out: &mut dyn Write) -> Outcome {
    for line in lines {
        writeln!(out, "{line}")?;
    }
    Ok(EXIT_OK)
}

fn cmd_table_subs(
    args: &SpecArgs,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let spec = load(&args.multiset, args.clamp, err)?;
    let table = build_subs_table(&spec, true);
    let lines = render_subs_table(&table);
    if json {
        return emit_json(
            out,
            &TableEnvelope {
                input_spec: spec.parts(),
                query: Query {
                    kind: "table-subs",
                    m: None,
                    method: None,
                },
                rows: decimal_rows(&table.rows),
                lines,
            },
        );
    }
    write_lines(&lines, out)
}

fn cmd_table_perms(
    args: &SpecArgs,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let spec = load(&args.multiset, args.clamp, err)?;
    let table = build_perm_table(&spec);
    let lines = render_perm_table(&table);
    if json {
        return emit_json(
            out,
            &TableEnvelope {
                input_spec: spec.parts(),
                query: Query {
                    kind: "table-perms",
                    m: None,
                    method: None,
                },
                rows: decimal_rows(&table.columns),
                lines,
            },
        );
    }
    write_lines(&lines, out)
}

#[derive(Serialize)]
struct Check {
    name: String,
    pass: bool,
}

#[derive(Serialize)]
struct VerifyEnvelope<'a> {
    input_spec: &'a [u64],
    query: Query<'a>,
    checks: Vec<Check>,
    all_pass: bool,
}

fn cmd_verify(args: &SpecArgs, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let spec = load(&args.multiset, args.clamp, err)?;
    let mut checks: Vec<Check> = check_spec_identities(&spec)
        .checks
        .into_iter()
        .map(|(name, pass)| Check {
            name: name.to_string(),
            pass,
        })
        .collect();

    let row = build_subs_table(&spec, false).final_row().clone();
    let sum: BigUint = row.iter().sum();
    checks.push(Check {
        name: "sum of C_m = product of (k_i + 1)".into(),
        pass: sum == multiboolean_cardinality(&spec),
    });
    let total = spec.total();
    // The table is built by running sums; compare against the direct
    // composition count so the check is not circular.
    let symmetric = (0..=total).all(|m| {
        let direct = count_subs_composition(&spec, m);
        direct == row[m as usize] && direct == row[(total - m) as usize]
    });
    checks.push(Check {
        name: "C_m = C_(|A|-m)".into(),
        pass: symmetric,
    });

    let all_pass = checks.iter().all(|c| c.pass);
    let code = if all_pass { EXIT_OK } else { EXIT_DISAGREEMENT };
    if json {
        emit_json(
            out,
            &VerifyEnvelope {
                input_spec: spec.parts(),
                query: Query {
                    kind: "verify",
                    m: None,
                    method: None,
                },
                checks,
                all_pass,
            },
        )?;
        return Ok(code);
    }
    for c in &checks {
        writeln!(out, "{}  {}", if c.pass { "ok  " } else { "FAIL" }, c.name)?;
    }
    writeln!(
        out,
        "{}",
        if all_pass {
            "all checks passed"
        } else {
            "some checks FAILED"
        }
    )?;
    Ok(code)
}

#[derive(Serialize)]
struct BenchRun {
    kind: String,
    method: &'static str,
    /// Decimal count, or absent when the method refused.
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    arith_ops: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    enum_steps: Option<u64>,
}

#[derive(Serialize)]
struct LambdaSummary {
    s: u64,
    solutions: u64,
    visited: u64,
    unconstrained: String,
}

#[derive(Serialize)]
struct BenchEnvelope<'a> {
    input_spec: &'a [u64],
    query: Query<'a>,
    methods_agree: bool,
    elapsed_ms: BTreeMap<String, f64>,
    runs: Vec<BenchRun>,
    lambda: LambdaSummary,
}

fn bench_runs(report: &BenchReport) -> Vec<BenchRun> {
    report
        .runs
        .iter()
        .map(|r| BenchRun {
            kind: r.kind.to_string(),
            method: r.method.name(),
            result: r.outcome.as_ref().ok().map(BigUint::to_string),
            error: r.outcome.as_ref().err().map(Error::to_string),
            elapsed_ms: ms(r.elapsed),
            arith_ops: r.work.map(|w| w.arith.0),
            enum_steps: r.work.map(|w| w.enum_steps),
        })
        .collect()
}

fn cmd_bench(args: &BenchArgs, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let spec = load(&args.multiset, Some(args.m), err)?;
    let report = methods::bench(
        &spec,
        args.m,
        EnumBudget {
            max_states: args.max_states,
        },
    );
    let agree = report.methods_agree();
    let code = if agree { EXIT_OK } else { EXIT_DISAGREEMENT };
    let runs = bench_runs(&report);
    let lambda = &report.lambda;
    if json {
        emit_json(
            out,
            &BenchEnvelope {
                input_spec: spec.parts(),
                query: Query {
                    kind: "bench",
                    m: Some(args.m),
                    method: Some("all"),
                },
                methods_agree: agree,
                elapsed_ms: runs
                    .iter()
                    .map(|r| (format!("{}.{}", r.kind, r.method), r.elapsed_ms))
                    .collect(),
                runs,
                lambda: LambdaSummary {
                    s: lambda.s,
                    solutions: lambda.solutions,
                    visited: lambda.visited,
                    unconstrained: lambda.unconstrained.to_string(),
                },
            },
        )?;
        return Ok(code);
    }
    writeln!(out, "spec {spec}, m = {}", args.m)?;
    writeln!(
        out,
        "{:<6} {:<12} {:>24} {:>12} {:>10} {:>10}",
        "kind", "method", "result", "ms", "arith", "enum"
    )?;
    for r in &runs {
        let value = r
            .result
            .clone()
            .unwrap_or_else(|| format!("({})", r.error.as_deref().unwrap_or("failed")));
        let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
        writeln!(
            out,
            "{:<6} {:<12} {:>24} {:>12.3} {:>10} {:>10}",
            r.kind,
            r.method,
            value,
            r.elapsed_ms,
            opt(r.arith_ops),
            opt(r.enum_steps)
        )?;
    }
    writeln!(
        out,
        "lambda set: s = {}, {} solutions, {} assignments visited, {} unconstrained solutions",
        lambda.s, lambda.solutions, lambda.visited, lambda.unconstrained
    )?;
    writeln!(out, "methods agree: {}", if agree { "yes" } else { "NO" })?;
    Ok(code)
}
