//! Command-line surface: compute individual objects, run the identity
//! verification suites, and emit polynomial tables.
//!
//! Exit codes: 0 on success, 1 when a verification suite reports a failing
//! identity, 2 on usage or parameter errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qsymfun::combinatorics::Partition;
use qsymfun::scalars::{BaseExponent, QScalar};
use qsymfun::series::Series;
use qsymfun::specializations as spec;
use qsymfun::symfun::{self, SymPoly};
use qsymfun::verify::{run_suite, SuiteConfig};
use qsymfun::{oracle, XPoly};

#[derive(Parser)]
#[command(
    name = "qsymfun",
    version,
    about = "Exact q-calculus of symmetric functions: compute, verify, tabulate"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ComputeObject {
    /// q-power sum [p_n] in the e-basis
    P,
    /// generalized q-power [p_n^(r)]
    Pr,
    /// q-centralizer order [z_lambda]
    Zq,
    /// partition expansion of e_n
    EExpansion,
    /// partition expansion of h_n
    HExpansion,
    /// discrete q-Hermite polynomial, first kind
    Hermite1,
    /// discrete q-Hermite polynomial, second kind
    Hermite2,
    /// labeled-tree inversion enumerator J_n
    Jtree,
    /// the power-sum generating series P(t)
    Pseries,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFamily {
    Hermite1,
    Hermite2,
    Jtree,
    P,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a single object and render it
    Compute {
        #[arg(value_enum)]
        object: ComputeObject,
        /// Main index n
        #[arg(long)]
        n: Option<u32>,
        /// Secondary index r (for the generalized powers)
        #[arg(long)]
        r: Option<u32>,
        /// Partition as comma-separated parts, e.g. "3,1,1"
        #[arg(long)]
        lambda: Option<String>,
        /// Base exponent m of the substitution q -> q^m
        #[arg(long, default_value_t = 1)]
        base_m: i64,
        /// Series truncation order in t
        #[arg(long, default_value_t = 8)]
        t_order: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write the output to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named identity suite and report pass/fail per identity
    Verify {
        /// One of: girard, determinants, partition-expansions, exp-formulas,
        /// link, products, qbinomial, trees, hermite, all
        suite: String,
        /// Override of the per-suite depth bound
        #[arg(long)]
        max_n: Option<u32>,
        #[arg(long, default_value_t = 8)]
        t_order: usize,
        #[arg(long, default_value_t = 10)]
        q_order: usize,
        #[arg(long, default_value_t = 1)]
        base_m: i64,
        /// Seed for the randomized-series identity checks
        #[arg(long)]
        seed: Option<u64>,
        /// Corrupt one coefficient to exercise the failure path
        #[arg(long, hide = true)]
        inject_perturbation: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a table of a polynomial family
    Table {
        #[arg(value_enum)]
        family: TableFamily,
        /// Largest index to include
        #[arg(long)]
        to: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Compute {
            object,
            n,
            r,
            lambda,
            base_m,
            t_order,
            format,
            out,
        } => {
            let text = compute(object, n, r, lambda, base_m, t_order, format)?;
            emit(&text, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            max_n,
            t_order,
            q_order,
            base_m,
            seed,
            inject_perturbation,
            out,
        } => {
            if base_m == 0 {
                return Err("--base-m must be nonzero".to_string());
            }
            let cfg = SuiteConfig {
                t_order,
                q_order,
                base_m,
                max_n,
                seed: seed.unwrap_or_else(|| SuiteConfig::default().seed),
                inject_perturbation,
            };
            let checks =
                run_suite(&suite, &cfg).ok_or_else(|| format!("unknown suite \"{suite}\""))?;
            let mut report = String::new();
            writeln!(report, "suite: {suite}  seed: {}", cfg.seed).unwrap();
            let mut failures = 0usize;
            for check in &checks {
                if !check.pass {
                    failures += 1;
                }
                writeln!(report, "{check}").unwrap();
            }
            writeln!(report, "{} checks, {} failed", checks.len(), failures).unwrap();
            emit(&report, out.as_deref())?;
            Ok(if failures == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Table {
            family,
            to,
            format,
            out,
        } => {
            let text = table(family, to, format)?;
            emit(&text, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn emit(text: &str, out: Option<&std::path::Path>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn base_exponent(m: i64) -> Result<BaseExponent, String> {
    BaseExponent::new(m).map_err(|e| e.to_string())
}

fn require_n(n: Option<u32>) -> Result<u32, String> {
    n.ok_or_else(|| "--n is required for this object".to_string())
}

fn qscalar_latex(s: &QScalar) -> String {
    let body = |p: &qsymfun::QPoly| format!("{p}").replace('*', " ");
    if s.is_polynomial() {
        body(s.numerator())
    } else {
        format!(
            "\\frac{{{}}}{{{}}}",
            body(s.numerator()),
            body(s.denominator())
        )
    }
}

fn render_qscalar(s: &QScalar, format: Format) -> String {
    match format {
        Format::Text => format!("{s}"),
        Format::Json => s.to_json().to_string(),
        Format::Latex => qscalar_latex(s),
    }
}

fn render_sympoly(p: &SymPoly, format: Format) -> String {
    match format {
        Format::Text => p.render(),
        Format::Json => p.to_json().to_string(),
        Format::Latex => p.render_latex(),
    }
}

fn render_xpoly(p: &XPoly, format: Format) -> String {
    match format {
        Format::Text => p.render(),
        Format::Json => p.to_json().to_string(),
        Format::Latex => p.render_latex(),
    }
}

fn render_sym_series(s: &Series<SymPoly>, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for n in 0..=s.t_order() {
                let c = s.coeff(n);
                if qsymfun::Coeff::is_zero(&c) {
                    continue;
                }
                if !out.is_empty() {
                    out.push_str(" + ");
                }
                write!(out, "({})*t^{n}", c.render()).unwrap();
            }
            if out.is_empty() {
                out.push('0');
            }
            write!(out, " + O(t^{})", s.t_order() + 1).unwrap();
            out
        }
        Format::Json => s.to_json_with(SymPoly::to_json).to_string(),
        Format::Latex => {
            let mut out = String::new();
            for n in 0..=s.t_order() {
                let c = s.coeff(n);
                if qsymfun::Coeff::is_zero(&c) {
                    continue;
                }
                if !out.is_empty() {
                    out.push_str(" + ");
                }
                write!(out, "\\left({}\\right) t^{{{n}}}", c.render_latex()).unwrap();
            }
            write!(out, " + O\\left(t^{{{}}}\\right)", s.t_order() + 1).unwrap();
            out
        }
    }
}

fn compute(
    object: ComputeObject,
    n: Option<u32>,
    r: Option<u32>,
    lambda: Option<String>,
    base_m: i64,
    t_order: usize,
    format: Format,
) -> Result<String, String> {
    let m = base_exponent(base_m)?;
    match object {
        ComputeObject::P => {
            let n = require_n(n)?;
            let p = symfun::q_power(n, m).map_err(|e| e.to_string())?;
            Ok(render_sympoly(&p, format))
        }
        ComputeObject::Pr => {
            let n = require_n(n)?;
            let r = r.ok_or_else(|| "--r is required for this object".to_string())?;
            let p = symfun::q_power_r(n, r, m).map_err(|e| e.to_string())?;
            Ok(render_sympoly(&p, format))
        }
        ComputeObject::Zq => {
            let text = lambda.ok_or_else(|| "--lambda is required for this object".to_string())?;
            let partition = Partition::parse(&text)
                .ok_or_else(|| format!("\"{text}\" is not a valid partition"))?;
            let z = qsymfun::combinatorics::q_z(&partition, m).map_err(|e| e.to_string())?;
            Ok(render_qscalar(&z, format))
        }
        ComputeObject::EExpansion => {
            let n = require_n(n)?;
            let p = symfun::e_expansion(n, m).map_err(|e| e.to_string())?;
            Ok(render_sympoly(&p, format))
        }
        ComputeObject::HExpansion => {
            let n = require_n(n)?;
            let p = symfun::h_expansion(n, m).map_err(|e| e.to_string())?;
            Ok(render_sympoly(&p, format))
        }
        ComputeObject::Hermite1 => {
            let n = require_n(n)?;
            Ok(render_xpoly(&spec::hermite_i(n), format))
        }
        ComputeObject::Hermite2 => {
            let n = require_n(n)?;
            let h = spec::hermite_ii(n).map_err(|e| e.to_string())?;
            Ok(render_xpoly(&h, format))
        }
        ComputeObject::Jtree => {
            let n = require_n(n)?;
            let j = oracle::j_poly(n).map_err(|e| e.to_string())?;
            Ok(render_qscalar(&j, format))
        }
        ComputeObject::Pseries => {
            let series = symfun::p_sum_series(t_order, m);
            Ok(render_sym_series(&series, format))
        }
    }
}

fn table(family: TableFamily, to: u32, format: Format) -> Result<String, String> {
    let label = match family {
        TableFamily::Hermite1 => "hermite1",
        TableFamily::Hermite2 => "hermite2",
        TableFamily::Jtree => "jtree",
        TableFamily::P => "p",
    };
    let start = match family {
        TableFamily::Hermite1 | TableFamily::Hermite2 => 0,
        TableFamily::Jtree | TableFamily::P => 1,
    };
    let mut rows: Vec<(u32, String, String, Value)> = Vec::new();
    for n in start..=to {
        let (text, latex, json) = match family {
            TableFamily::Hermite1 => {
                let h = spec::hermite_i(n);
                (h.render(), h.render_latex(), h.to_json())
            }
            TableFamily::Hermite2 => {
                let h = spec::hermite_ii(n).map_err(|e| e.to_string())?;
                (h.render(), h.render_latex(), h.to_json())
            }
            TableFamily::Jtree => {
                let j = oracle::j_poly(n).map_err(|e| e.to_string())?;
                (format!("{j}"), qscalar_latex(&j), j.to_json())
            }
            TableFamily::P => {
                let m = BaseExponent::ONE;
                let p = symfun::q_power(n, m).map_err(|e| e.to_string())?;
                (p.render(), p.render_latex(), p.to_json())
            }
        };
        rows.push((n, text, latex, json));
    }
    match format {
        Format::Text => {
            let mut out = String::new();
            for (n, text, _, _) in &rows {
                writeln!(out, "{label}[{n}] = {text}").unwrap();
            }
            Ok(out)
        }
        Format::Json => {
            let arr: Vec<Value> = rows
                .into_iter()
                .map(|(n, _, _, json_value)| json!({ "n": n, "poly": json_value }))
                .collect();
            Ok(Value::Array(arr).to_string())
        }
        Format::Latex => {
            let mut out = String::new();
            out.push_str("\\documentclass{article}\n\\begin{document}\n");
            out.push_str("\\begin{tabular}{rl}\n");
            out.push_str(&format!("$n$ & ${label}_n$ \\\\\n\\hline\n"));
            for (n, _, latex, _) in &rows {
                writeln!(out, "${n}$ & ${latex}$ \\\\").unwrap();
            }
            out.push_str("\\end{tabular}\n\\end{document}\n");
            Ok(out)
        }
    }
}
