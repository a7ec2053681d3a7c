use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use struve_ineq::bounds::{evaluate, BoundPoint, BoundReport, InequalityId};
use struve_ineq::integrate::{integral, Method};
use struve_ineq::specfun::{hyp1f2, hyp2f3, struve_l, StruveArgs};
use struve_ineq::verify::{regenerate_table, run_suite, ErrorTable, Suite, SuiteReport, TableKind};
use struve_ineq::{EvalConfig, IntegralSpec, QuadratureConfig, SeriesConfig};

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_NUMERIC: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(
    name = "struve-ineq",
    version,
    about = "Modified Struve function L_nu(x), its integrals and their closed-form bounds"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(flatten)]
    config: ConfigArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct ConfigArgs {
    /// Series stopping tolerance (relative to the partial sum)
    #[arg(long, global = true, default_value_t = 1e-15)]
    series_rel_tol: f64,
    /// Series term cap
    #[arg(long, global = true, default_value_t = 10_000)]
    series_max_terms: usize,
    /// Consecutive negligible terms needed to stop a series
    #[arg(long, global = true, default_value_t = 3)]
    series_trailing_small: usize,
    /// Quadrature relative tolerance
    #[arg(long, global = true, default_value_t = 1e-12)]
    quad_rel_tol: f64,
    /// Quadrature absolute tolerance floor
    #[arg(long, global = true, default_value_t = 1e-300)]
    quad_abs_tol: f64,
    /// Quadrature subdivision cap
    #[arg(long, global = true, default_value_t = 2000)]
    max_subdivisions: usize,
    /// Width of the analytically integrated piece near 0 [default: min(x, 1)/8]
    #[arg(long, global = true)]
    series_split: Option<f64>,
}

impl ConfigArgs {
    fn eval_config(&self) -> EvalConfig {
        EvalConfig {
            series: SeriesConfig {
                rel_tol: self.series_rel_tol,
                max_terms: self.series_max_terms,
                trailing_small: self.series_trailing_small,
            },
            quadrature: QuadratureConfig {
                rel_tol: self.quad_rel_tol,
                abs_tol: self.quad_abs_tol,
                max_subdivisions: self.max_subdivisions,
                series_split: self.series_split,
            },
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate L_nu(x), 1F2 or 2F3
    #[command(allow_negative_numbers = true)]
    Eval {
        #[arg(value_enum)]
        function: Function,
        #[arg(long)]
        nu: Option<f64>,
        #[arg(long)]
        x: Option<f64>,
        /// Numerator parameters, comma separated
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<f64>,
        /// Denominator parameters, comma separated
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b: Vec<f64>,
        #[arg(long)]
        z: Option<f64>,
    },
    /// int_0^x e^(-gamma t) t^p L_mu(t) dt
    #[command(allow_negative_numbers = true)]
    Integral {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        mu: f64,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        #[arg(long)]
        x: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Evaluate one bound against its integral
    #[command(allow_negative_numbers = true)]
    Bounds {
        /// B9_LOWER, B10_UPPER, ..., COR_LOWER, COR_UPPER
        #[arg(long)]
        ineq: InequalityId,
        #[arg(long)]
        nu: f64,
        #[arg(long, default_value_t = 0.0)]
        n: f64,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        #[arg(long)]
        x: f64,
    },
    /// Regenerate a relative-error table of the corollary bounds
    Table {
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Function {
    #[value(name = "struve_l")]
    StruveL,
    Hyp1f2,
    Hyp2f3,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Series,
    Quadrature,
    Auto,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Series => Method::Series,
            MethodArg::Quadrature => Method::Quadrature,
            MethodArg::Auto => Method::Auto,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Lower,
    Upper,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Identities,
    Inequalities,
    Tables,
    Tightness,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Inequalities => Suite::Inequalities,
            SuiteArg::Tables => Suite::Tables,
            SuiteArg::Tightness => Suite::Tightness,
        }
    }
}

enum Failure {
    Usage(String),
    Lib(struve_ineq::Error),
    Io(io::Error),
}

impl From<struve_ineq::Error> for Failure {
    fn from(e: struve_ineq::Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

/// Seventeen significant digits: enough to round-trip any double.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFY),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_domain() {
                EXIT_DOMAIN
            } else {
                EXIT_NUMERIC
            })
        }
        Err(Failure::Io(e)) => {
            if e.kind() == io::ErrorKind::BrokenPipe {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {e}");
            ExitCode::from(EXIT_NUMERIC)
        }
    }
}

/// Returns Ok(false) when a verification suite ran but did not pass.
fn run(cli: &Cli) -> Result<bool, Failure> {
    let config = cli.config.eval_config();
    config.validate()?;
    let out = &mut io::stdout().lock();
    match &cli.command {
        Command::Eval {
            function,
            nu,
            x,
            a,
            b,
            z,
        } => eval(
            out,
            cli.format,
            *function,
            *nu,
            *x,
            a,
            b,
            *z,
            &config.series,
        )?,
        Command::Integral {
            p,
            mu,
            gamma,
            x,
            method,
        } => {
            let spec = IntegralSpec::new(*p, *mu, *gamma, *x)?;
            let (value, used) =
                integral(&spec, (*method).into(), &config.quadrature, &config.series)?;
            write_integral(out, cli.format, &spec, used, value)?;
        }
        Command::Bounds {
            ineq,
            nu,
            n,
            gamma,
            x,
        } => {
            let report = evaluate(*ineq, &BoundPoint::new(*nu, *n, *gamma, *x), &config)?;
            write_bound(out, cli.format, &report)?;
        }
        Command::Table { kind } => {
            let kind = match kind {
                KindArg::Lower => TableKind::Lower,
                KindArg::Upper => TableKind::Upper,
            };
            write_table(out, cli.format, &regenerate_table(kind, &config)?)?;
        }
        Command::Verify { suite } => {
            let report = run_suite((*suite).into(), &config)?;
            write_suite(out, cli.format, &report)?;
            out.flush()?;
            return Ok(report.passed());
        }
    }
    out.flush()?;
    Ok(true)
}

fn required(v: Option<f64>, flag: &str, function: &str) -> Result<f64, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("{function} needs --{flag}")))
}

#[allow(clippy::too_many_arguments)]
fn eval(
    out: &mut impl Write,
    format: Format,
    function: Function,
    nu: Option<f64>,
    x: Option<f64>,
    a: &[f64],
    b: &[f64],
    z: Option<f64>,
    cfg: &SeriesConfig,
) -> Result<(), Failure> {
    let (name, params, value): (&str, Vec<(&str, serde_json::Value)>, f64) = match function {
        Function::StruveL => {
            let nu = required(nu, "nu", "struve_l")?;
            let x = required(x, "x", "struve_l")?;
            let v = struve_l(StruveArgs::new(nu, x)?, cfg)?;
            ("struve_l", vec![("nu", json!(nu)), ("x", json!(x))], v)
        }
        Function::Hyp1f2 | Function::Hyp2f3 => {
            let z = required(z, "z", "the hypergeometric functions")?;
            let (name, p, q) = match function {
                Function::Hyp1f2 => ("hyp1f2", 1, 2),
                _ => ("hyp2f3", 2, 3),
            };
            if a.len() != p || b.len() != q {
                return Err(Failure::Usage(format!(
                    "{name} takes {p} value(s) in --a and {q} in --b, got {} and {}",
                    a.len(),
                    b.len()
                )));
            }
            let v = if p == 1 {
                hyp1f2(a[0], b[0], b[1], z, cfg)?
            } else {
                hyp2f3(a[0], a[1], b[0], b[1], b[2], z, cfg)?
            };
            (
                name,
                vec![("a", json!(a)), ("b", json!(b)), ("z", json!(z))],
                v,
            )
        }
    };
    match format {
        Format::Text => writeln!(out, "{}", num(value))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["function", "value"])?;
            w.write_record([name, &num(value)])?;
            w.flush()?;
        }
        Format::Json => {
            let params: serde_json::Map<_, _> = params
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect();
            serde_json::to_writer(
                &mut *out,
                &json!({"function": name, "params": params, "value": value}),
            )?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn write_integral(
    out: &mut impl Write,
    format: Format,
    spec: &IntegralSpec,
    method: Method,
    value: f64,
) -> Result<(), Failure> {
    match format {
        Format::Text => writeln!(out, "{} ({method})", num(value))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["p", "mu", "gamma", "x", "method", "value"])?;
            w.write_record([
                num(spec.p),
                num(spec.mu),
                num(spec.gamma),
                num(spec.x),
                method.to_string(),
                num(value),
            ])?;
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer(
                &mut *out,
                &json!({"spec": spec, "method": method, "value": value}),
            )?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn write_bound(out: &mut impl Write, format: Format, r: &BoundReport) -> Result<(), Failure> {
    let p = r.point;
    match format {
        Format::Text => {
            writeln!(out, "inequality  {}", r.inequality)?;
            writeln!(
                out,
                "point       nu={} n={} gamma={} x={}",
                p.nu, p.n, p.gamma, p.x
            )?;
            writeln!(out, "bound       {}", num(r.bound_value))?;
            writeln!(out, "integral    {}", num(r.integral_value))?;
            writeln!(out, "slack       {}", num(r.signed_slack))?;
            writeln!(out, "rel_error   {}", num(r.relative_error))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "inequality",
                "nu",
                "n",
                "gamma",
                "x",
                "bound",
                "integral",
                "slack",
                "rel_error",
            ])?;
            w.write_record([
                r.inequality.to_string(),
                num(p.nu),
                num(p.n),
                num(p.gamma),
                num(p.x),
                num(r.bound_value),
                num(r.integral_value),
                num(r.signed_slack),
                num(r.relative_error),
            ])?;
            w.flush()?;
        }
        Format::Json => {
            let doc = json!({
                "inequality": r.inequality,
                "point": p,
                "bound": r.bound_value,
                "integral": r.integral_value,
                "slack": r.signed_slack,
                "rel_error": r.relative_error,
            });
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn write_table(out: &mut impl Write, format: Format, t: &ErrorTable) -> Result<(), Failure> {
    match format {
        Format::Text => {
            let title = match t.kind {
                TableKind::Lower => "(F - L) / F",
                TableKind::Upper => "(U - F) / F",
            };
            writeln!(out, "{title}")?;
            write!(out, "{:>8}", "nu \\ x")?;
            for x in &t.x {
                write!(out, " {x:>8}")?;
            }
            writeln!(out)?;
            for (nu, row) in t.nu.iter().zip(&t.entries) {
                write!(out, "{nu:>8}")?;
                for v in row {
                    write!(out, " {v:>8.4}")?;
                }
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["nu", "x", "value"])?;
            for (nu, row) in t.nu.iter().zip(&t.entries) {
                for (x, v) in t.x.iter().zip(row) {
                    w.write_record([nu.to_string(), x.to_string(), format!("{v:.4}")])?;
                }
            }
            w.flush()?;
        }
        Format::Json => {
            let doc = json!({"kind": t.kind, "rows": t.nu, "cols": t.x, "entries": t.entries});
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn write_suite(out: &mut impl Write, format: Format, r: &SuiteReport) -> Result<(), Failure> {
    match format {
        Format::Text => {
            for s in &r.sweeps {
                writeln!(
                    out,
                    "{} sweep {}: {} points, {} skipped, {} violations, min rel slack {}",
                    status(s.passed()),
                    s.inequality,
                    s.total,
                    s.skipped,
                    s.violations.len(),
                    s.min_relative_slack
                        .map_or("-".into(), |v| format!("{v:.3e}")),
                )?;
                for v in &s.violations {
                    writeln!(
                        out,
                        "    violation at {:?}: slack {}",
                        v.point,
                        num(v.signed_slack)
                    )?;
                }
            }
            for t in &r.tables {
                writeln!(
                    out,
                    "{} table {}: {} cells compared, {} mismatches, max |diff| {:.1e}",
                    status(t.passed()),
                    t.kind,
                    t.cells,
                    t.mismatches.len(),
                    t.max_abs_difference,
                )?;
                for m in &t.mismatches {
                    writeln!(
                        out,
                        "    nu={} x={}: computed {:.4}, reference {:.4}",
                        m.nu, m.x, m.computed, m.reference
                    )?;
                }
            }
            for c in &r.checks {
                writeln!(
                    out,
                    "{} {}: worst {:.3e} (tolerance {:.0e}); {}",
                    status(c.passed),
                    c.name,
                    c.worst,
                    c.tolerance,
                    c.detail
                )?;
            }
            writeln!(out, "suite {}: {}", r.suite, status(r.passed()))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["kind", "name", "passed", "worst", "tolerance", "detail"])?;
            for s in &r.sweeps {
                w.write_record([
                    "sweep".to_string(),
                    s.inequality.to_string(),
                    s.passed().to_string(),
                    s.violations.len().to_string(),
                    "0".into(),
                    format!("{} points, {} skipped", s.total, s.skipped),
                ])?;
            }
            for t in &r.tables {
                w.write_record([
                    "table".to_string(),
                    t.kind.to_string(),
                    t.passed().to_string(),
                    num(t.max_abs_difference),
                    num(struve_ineq::verify::TABLE_CELL_TOLERANCE),
                    format!("{} cells, {} mismatches", t.cells, t.mismatches.len()),
                ])?;
            }
            for c in &r.checks {
                w.write_record([
                    "check".to_string(),
                    c.name.clone(),
                    c.passed.to_string(),
                    num(c.worst),
                    num(c.tolerance),
                    c.detail.clone(),
                ])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let mut doc = serde_json::to_value(r)?;
            doc["passed"] = json!(r.passed());
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)?;
        }
    }
    Ok(())
}
