//! Command-line front end: evaluate functions, run verification suites,
//! compute period matrices, monodromy and regulator data, and regenerate
//! the oracle fixtures.
//!
//! Parameters are entered as exact fraction strings (`--mu 7/2`); the
//! structural mod-Z hypotheses are undecidable on floats, so decimals are
//! rejected for parameters. Evaluation points are plain decimal complex
//! pairs.
//!
//! Exit codes: 0 success / all checks pass, 1 some verification failed,
//! 2 invalid configuration or violated parameter hypothesis, 3 I/O error.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::continuation::{monodromy_at_infinity, monodromy_at_one, monodromy_at_zero};
use crate::error::{Error, Result};
use crate::params::HGParams;
use crate::periods::{period_matrix, AnalyticFunction, FnKind};
use crate::poly::Poly;
use crate::regulator::{
    birat_instantiate, check_regulator_congruence, check_three_term_congruence,
    exterior_sample_grid, RegulatorRecursion,
};
use crate::report::{eval_rows_to_csv, eval_rows_to_json, EvalRow, Report};
use crate::scalar::{parse_rat, C64};
use crate::series::{eval_pfq, HGSeriesSpec, TruncationPolicy};
use crate::theta::ThetaData;

#[derive(Parser, Debug)]
#[command(
    name = "hypergeom",
    about = "Hypergeometric period and regulator functions: evaluation, operator algebra, monodromy and verification",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    /// Exact fraction in [0, 1), e.g. 1/3
    #[arg(long)]
    pub alpha: Option<String>,
    /// Exact fraction in [0, 1), e.g. 1/5
    #[arg(long)]
    pub beta: Option<String>,
    /// Exact fraction mu = m/l with mu > 1, e.g. 7/2
    #[arg(long)]
    pub mu: Option<String>,
    /// Covering degree l (positive integer)
    #[arg(long)]
    pub l: Option<i64>,
    /// Key-value file supplying any flag not given on the command line
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl ParamArgs {
    fn resolve(&self) -> Result<HGParams> {
        let cfg = self.config_map()?;
        let pick = |flag: Option<&String>, key: &str| -> Result<String> {
            flag.cloned()
                .or_else(|| cfg.get(key).cloned())
                .ok_or_else(|| {
                    Error::Invalid(format!("missing parameter --{key} (flag or config file)"))
                })
        };
        let alpha = parse_rat(&pick(self.alpha.as_ref(), "alpha")?)?;
        let beta = parse_rat(&pick(self.beta.as_ref(), "beta")?)?;
        let mu = parse_rat(&pick(self.mu.as_ref(), "mu")?)?;
        let l = match self.l {
            Some(l) => l,
            None => cfg
                .get("l")
                .ok_or_else(|| Error::Invalid("missing parameter --l".into()))?
                .parse::<i64>()
                .map_err(|_| Error::Invalid("l must be an integer".into()))?,
        };
        HGParams::new(alpha, beta, mu, l)
    }

    fn config_map(&self) -> Result<std::collections::HashMap<String, String>> {
        let mut map = std::collections::HashMap::new();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Invalid(format!("cannot read config {path:?}: {e}")))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line.split_once('=').ok_or_else(|| {
                    Error::Invalid(format!("config line {} is not key = value", lineno + 1))
                })?;
                map.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        Ok(map)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a named function on a lambda grid
    Eval {
        /// One of f1, f2, f3, F_mu, G_mu, H_mu, pFq, P_m, Q_m
        #[arg(long = "fn")]
        function: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Integer level shift applied to mu (F_mu/G_mu/H_mu)
        #[arg(long, default_value_t = 0)]
        shift: i64,
        /// Level m for P_m / Q_m
        #[arg(long)]
        m: Option<i64>,
        /// p0 coefficients, ascending, exact fractions: "1" or "0,1,-1"
        #[arg(long)]
        p0: Option<String>,
        /// p1 coefficients, ascending, exact fractions
        #[arg(long)]
        p1: Option<String>,
        /// Upper parameters for --fn pFq (decimal complex list a;b;c)
        #[arg(long)]
        upper: Option<String>,
        /// Lower parameters for --fn pFq
        #[arg(long)]
        lower: Option<String>,
        /// Grid: "re,im;re,im;..." or "lin:re0,im0:re1,im1:count"
        #[arg(long = "lambda", alias = "lambda-grid")]
        lambda: String,
        #[arg(long, default_value_t = 1e-13)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and write a machine-readable report
    Verify {
        /// all, core, functions, quadrature, operators, continuation,
        /// periods, regulator, fixtures
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the 2x2 period matrix at level m on a lambda grid
    PeriodMatrix {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        m: i64,
        #[arg(long, default_value = "1")]
        p0: String,
        #[arg(long, default_value = "0,1,-1")]
        p1: String,
        #[arg(long = "lambda", alias = "lambda-grid")]
        lambda: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monodromy matrix of the (F, G) basis around 0, 1 or infinity
    Monodromy {
        #[command(flatten)]
        params: ParamArgs,
        /// zero, one or infinity
        #[arg(long, default_value = "zero")]
        around: String,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact regulator recursion data and the congruence checks
    Regulator {
        #[command(flatten)]
        params: ParamArgs,
        /// Basis level m (defaults to mu * l)
        #[arg(long)]
        m: Option<i64>,
        /// Recursion depth r (the exponent in the congruence is r + 1)
        #[arg(long, default_value_t = 0)]
        depth: i64,
        #[arg(long, default_value = "1")]
        p0: String,
        #[arg(long, default_value = "0,1,-1")]
        p1: String,
        #[arg(long, default_value_t = 48)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a JSON verification report to CSV (or back)
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate the oracle fixtures (and check them against the
    /// implementation)
    Fixtures {
        #[arg(long)]
        out: Option<PathBuf>,
        /// Only compare, do not write
        #[arg(long, default_value_t = false)]
        check: bool,
    },
}

fn parse_lambda_grid(s: &str) -> Result<Vec<C64>> {
    if let Some(rest) = s.strip_prefix("lin:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Invalid(
                "range grid is lin:re0,im0:re1,im1:count".into(),
            ));
        }
        let a = parse_complex(parts[0])?;
        let b = parse_complex(parts[1])?;
        let n: usize = parts[2]
            .parse()
            .map_err(|_| Error::Invalid("bad count in lambda range".into()))?;
        if n < 1 {
            return Err(Error::Invalid("lambda range needs count >= 1".into()));
        }
        return Ok((0..n)
            .map(|k| {
                let t = if n == 1 {
                    0.0
                } else {
                    k as f64 / (n - 1) as f64
                };
                a + (b - a) * t
            })
            .collect());
    }
    s.split(';').map(parse_complex).collect()
}

fn parse_complex(s: &str) -> Result<C64> {
    let s = s.trim();
    match s.split_once(',') {
        Some((re, im)) => Ok(C64::new(
            re.trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad real part `{re}`")))?,
            im.trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad imag part `{im}`")))?,
        )),
        None => Ok(C64::new(
            s.parse()
                .map_err(|_| Error::Invalid(format!("bad number `{s}`")))?,
            0.0,
        )),
    }
}

fn parse_poly(s: &str) -> Result<Poly<crate::scalar::Rat>> {
    let coeffs: Result<Vec<_>> = s.split(',').map(|c| parse_rat(c.trim())).collect();
    Ok(Poly::new(coeffs?))
}

fn parse_complex_list(s: &str) -> Result<Vec<C64>> {
    s.split(';').map(parse_complex).collect()
}

fn write_or_print(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Invalid(format!("__io__ cannot write {path:?}: {e}"))),
        None => {
            if text.ends_with('\n') {
                print!("{text}");
            } else {
                println!("{text}");
            }
            Ok(())
        }
    }
}

fn theta_data_from(p0: &Option<String>, p1: &Option<String>) -> Result<ThetaData> {
    let p0 = match p0 {
        Some(s) => parse_poly(s)?,
        None => Poly::constant(crate::scalar::rat_int(1)),
    };
    let p1 = match p1 {
        Some(s) => parse_poly(s)?,
        None => Poly::zero(),
    };
    ThetaData::derive(p0, p1)
}

#[allow(clippy::too_many_arguments)]
fn run_eval(
    function: &str,
    params: &ParamArgs,
    shift: i64,
    m: Option<i64>,
    p0: &Option<String>,
    p1: &Option<String>,
    upper: &Option<String>,
    lower: &Option<String>,
    lambda: &str,
    tolerance: f64,
    format: OutputFormat,
    out: &Option<PathBuf>,
) -> Result<i32> {
    let grid = parse_lambda_grid(lambda)?;
    let policy = TruncationPolicy::new(tolerance, 20_000)?;
    let check_id = format!("eval.{function}");

    let handle: AnalyticFunction = match function {
        "pFq" => {
            let upper = parse_complex_list(
                upper
                    .as_deref()
                    .ok_or_else(|| Error::Invalid("pFq needs --upper".into()))?,
            )?;
            let lower = parse_complex_list(
                lower
                    .as_deref()
                    .ok_or_else(|| Error::Invalid("pFq needs --lower".into()))?,
            )?;
            AnalyticFunction::new(FnKind::PFqRaw {
                spec: HGSeriesSpec::new(upper, lower)?,
            })
        }
        "f1" | "f2" | "f3" => {
            let p = params.resolve()?;
            let (alpha, beta) = (p.alpha().clone(), p.beta().clone());
            AnalyticFunction::new(match function {
                "f1" => FnKind::F1 { alpha, beta },
                "f2" => FnKind::F2 { alpha, beta },
                _ => FnKind::F3 { alpha, beta },
            })
        }
        "F_mu" | "G_mu" | "H_mu" => {
            let p = params.resolve()?;
            AnalyticFunction::new(match function {
                "F_mu" => FnKind::FMu { params: p, shift },
                "G_mu" => FnKind::GMu { params: p, shift },
                _ => FnKind::HMu { params: p, shift },
            })
        }
        "P_m" | "Q_m" => {
            let p = params.resolve()?;
            let m = m.unwrap_or_else(|| p.m());
            let td = theta_data_from(p0, p1)?;
            AnalyticFunction::new(if function == "P_m" {
                FnKind::PM { params: p, td, m }
            } else {
                FnKind::QM { params: p, td, m }
            })
        }
        other => {
            return Err(Error::Invalid(format!(
                "unknown function `{other}` (f1, f2, f3, F_mu, G_mu, H_mu, pFq, P_m, Q_m)"
            )))
        }
    };

    let mut rows = Vec::with_capacity(grid.len());
    for lam in grid {
        // series-backed evaluators expose their truncation data
        let detail = match &handle.kind {
            FnKind::PFqRaw { spec } => {
                let v = eval_pfq(spec, lam, &policy)?;
                Some((v.value, v.est_error, v.terms_used))
            }
            FnKind::FMu { params, shift } => {
                let d = crate::functions::eval_f_mu_detailed(params, *shift, lam, &policy)?;
                Some((d.value, d.est_error, d.terms_used))
            }
            FnKind::GMu { params, shift } => {
                let d = crate::functions::eval_g_mu_detailed(params, *shift, lam, &policy)?;
                Some((d.value, d.est_error, d.terms_used))
            }
            FnKind::HMu { params, shift } => {
                let d = crate::functions::eval_h_mu_detailed(params, *shift, lam, &policy)?;
                Some((d.value, d.est_error, d.terms_used))
            }
            _ => None,
        };
        match detail {
            Some((value, est, terms)) => {
                let mut row = EvalRow::new(&check_id, lam, value, est, true);
                row.est_error = Some(est);
                row.terms_used = Some(terms);
                rows.push(row);
            }
            None => {
                let v = handle.eval(lam, &policy)?;
                rows.push(EvalRow::new(
                    &check_id,
                    lam,
                    v,
                    policy.relative_tolerance,
                    true,
                ));
            }
        }
    }
    let text = match format {
        OutputFormat::Json => eval_rows_to_json(&rows),
        OutputFormat::Csv => eval_rows_to_csv(&rows),
    };
    write_or_print(out, &text)?;
    Ok(0)
}

fn run_verify(suite: &str, seed: u64, format: OutputFormat, out: &Option<PathBuf>) -> Result<i32> {
    let report = crate::verify::run_suite(suite, seed)?;
    let text = match format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Csv => report.to_csv(),
    };
    write_or_print(out, &text)?;
    for r in &report.records {
        eprintln!(
            "{} {:<32} residual {:>12.3e}  threshold {:>9.1e}",
            if r.pass { "PASS" } else { "FAIL" },
            r.check_id,
            r.residual,
            r.threshold
        );
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn run_period_matrix(
    params: &ParamArgs,
    m: i64,
    p0: &str,
    p1: &str,
    lambda: &str,
    format: OutputFormat,
    out: &Option<PathBuf>,
) -> Result<i32> {
    let p = params.resolve()?;
    let td = ThetaData::derive(parse_poly(p0)?, parse_poly(p1)?)?;
    let pm = period_matrix(&p, &td, m)?;
    let policy = TruncationPolicy::default();
    let grid = parse_lambda_grid(lambda)?;
    let mut objs = Vec::new();
    let mut rows = Vec::new();
    for lam in grid {
        let full = pm.full(lam, &policy)?;
        let det_rel = pm.inner_det_relative(lam, &policy)?;
        objs.push(serde_json::json!({
            "lambda_re": lam.re, "lambda_im": lam.im,
            "matrix": [
                [[full[0][0].re, full[0][0].im], [full[0][1].re, full[0][1].im]],
                [[full[1][0].re, full[1][0].im], [full[1][1].re, full[1][1].im]],
            ],
            "inner_det_relative": det_rel,
        }));
        rows.push(EvalRow::new(
            "period_matrix.det",
            lam,
            full[0][0],
            det_rel,
            det_rel > 1e-10,
        ));
    }
    let text = match format {
        OutputFormat::Json => serde_json::to_string_pretty(&serde_json::json!({
            "m": pm.m(),
            "mu": pm.level_params().mu_f64(),
            "xi": [pm.xi().re, pm.xi().im],
            "prefactor_2pii_one_minus_zeta_m": [pm.prefactor_zeta().re, pm.prefactor_zeta().im],
            "theta": pm.theta().pretty(),
            "theta_json": pm.theta().to_json(),
            "grid": objs,
        }))
        .expect("json"),
        OutputFormat::Csv => eval_rows_to_csv(&rows),
    };
    write_or_print(out, &text)?;
    Ok(0)
}

fn run_monodromy(
    params: &ParamArgs,
    around: &str,
    tolerance: f64,
    out: &Option<PathBuf>,
) -> Result<i32> {
    let p = params.resolve()?;
    let m = match around {
        "zero" | "0" => monodromy_at_zero(&p, tolerance)?,
        "one" | "1" => monodromy_at_one(&p, tolerance)?,
        "infinity" | "inf" => monodromy_at_infinity(&p, tolerance)?,
        other => {
            return Err(Error::Invalid(format!(
                "--around must be zero, one or infinity, got `{other}`"
            )))
        }
    };
    let evs = m.eigenvalues();
    let text = serde_json::to_string_pretty(&serde_json::json!({
        "around": around,
        "basis": [m.basis_labels.0, m.basis_labels.1],
        "entries": [
            [[m.entries[0][0].re, m.entries[0][0].im], [m.entries[0][1].re, m.entries[0][1].im]],
            [[m.entries[1][0].re, m.entries[1][0].im], [m.entries[1][1].re, m.entries[1][1].im]],
        ],
        "eigenvalues": [[evs[0].re, evs[0].im], [evs[1].re, evs[1].im]],
        "determinant": [m.determinant().re, m.determinant().im],
    }))
    .expect("json");
    write_or_print(out, &text)?;
    Ok(0)
}

fn run_regulator(
    params: &ParamArgs,
    m: Option<i64>,
    depth: i64,
    p0: &str,
    p1: &str,
    samples: usize,
    out: &Option<PathBuf>,
) -> Result<i32> {
    let p = params.resolve()?;
    let m = m.unwrap_or_else(|| p.m());
    let td = ThetaData::derive(parse_poly(p0)?, parse_poly(p1)?)?;
    let policy = TruncationPolicy::default();
    let grid = exterior_sample_grid(samples.max(td.n() + depth as usize + 8));
    let rec = RegulatorRecursion::build(&p, (depth + td.n() as i64 + 1) as usize);
    let level = crate::periods::params_at_level(&p, m)?;
    let chk = check_regulator_congruence(&p, &td, m, depth, &grid, &policy)?;
    let tt: Vec<_> = (1..=3i64)
        .map(|i| check_three_term_congruence(&p, i, &grid, &policy).map(|c| (i, c)))
        .collect::<Result<Vec<_>>>()?;
    let text = serde_json::to_string_pretty(&serde_json::json!({
        "m": m,
        "mu": level.mu_f64(),
        "depth": depth,
        "c_0": birat_instantiate(rec.c_i(0), level.mu()).to_string_var("lam"),
        "d_0": birat_instantiate(rec.d_i(0), level.mu()).to_string_var("lam"),
        "e1": birat_instantiate(&rec.e1(&td, depth), level.mu()).to_string_var("lam"),
        "e2": birat_instantiate(&rec.e2(&td, depth), level.mu()).to_string_var("lam"),
        "w_remainder": birat_instantiate(&rec.w(&td, depth), level.mu()).to_string_var("lam"),
        "congruence": {
            "c1_estimate": [chk.c1_estimate.re, chk.c1_estimate.im],
            "c1_expected": [chk.c1_expected.re, chk.c1_expected.im],
            "fit_residual": chk.fit_residual,
            "fallback_residual": chk.fallback_residual,
            "exact_residual": chk.exact_residual,
            "condition": chk.condition,
        },
        "three_term": tt.iter().map(|(i, c)| serde_json::json!({
            "i": i,
            "fit_residual": c.fit_residual,
            "exact_residual": c.exact_residual,
            "condition": c.condition,
        })).collect::<Vec<_>>(),
    }))
    .expect("json");
    write_or_print(out, &text)?;
    Ok(0)
}

fn run_report(input: &PathBuf, format: OutputFormat, out: &Option<PathBuf>) -> Result<i32> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| Error::Invalid(format!("__io__ cannot read {input:?}: {e}")))?;
    let report = Report::from_json(&text)?;
    let rendered = match format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Csv => report.to_csv(),
    };
    write_or_print(out, &rendered)?;
    Ok(0)
}

fn run_fixtures(out: &Option<PathBuf>, check: bool) -> Result<i32> {
    let fixtures = crate::fixtures::generate()?;
    let mut failures = Vec::new();
    for (name, dev, tol) in crate::fixtures::compare_against_implementation(&fixtures)? {
        if dev >= tol {
            failures.push(format!("{name}: deviation {dev:e} over tolerance {tol:e}"));
        }
        eprintln!(
            "fixture {name:<28} deviation {:>12.3e}  tolerance {tol:>9.1e}",
            dev
        );
    }
    if check {
        let worst = crate::fixtures::stored_matches_regenerated()?;
        eprintln!("stored fixtures vs regenerated: worst relative deviation {worst:e}");
        if worst > 1e-12 {
            failures.push(format!(
                "stored fixture file is stale (deviation {worst:e})"
            ));
        }
    } else {
        let text = crate::fixtures::to_json(&fixtures);
        match out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Error::Invalid(format!("__io__ cannot write {path:?}: {e}")))?,
            None => println!("{text}"),
        }
    }
    if failures.is_empty() {
        Ok(0)
    } else {
        eprintln!("{}", failures.join("\n"));
        Ok(1)
    }
}

/// Run a parsed command; returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    match &cli.command {
        Command::Eval {
            function,
            params,
            shift,
            m,
            p0,
            p1,
            upper,
            lower,
            lambda,
            tolerance,
            format,
            out,
        } => run_eval(
            function, params, *shift, *m, p0, p1, upper, lower, lambda, *tolerance, *format, out,
        ),
        Command::Verify {
            suite,
            seed,
            format,
            out,
        } => run_verify(suite, *seed, *format, out),
        Command::PeriodMatrix {
            params,
            m,
            p0,
            p1,
            lambda,
            format,
            out,
        } => run_period_matrix(params, *m, p0, p1, lambda, *format, out),
        Command::Monodromy {
            params,
            around,
            tolerance,
            out,
        } => run_monodromy(params, around, *tolerance, out),
        Command::Regulator {
            params,
            m,
            depth,
            p0,
            p1,
            samples,
            out,
        } => run_regulator(params, *m, *depth, p0, p1, *samples, out),
        Command::Report { input, format, out } => run_report(input, *format, out),
        Command::Fixtures { out, check } => run_fixtures(out, *check),
    }
}

/// Map an error to the documented exit code, printing the message.
pub fn exit_code_for(err: &Error) -> i32 {
    let io = matches!(err, Error::Invalid(m) if m.starts_with("__io__"));
    eprintln!("error: {}", err.to_string().replace("__io__ ", ""));
    if io {
        3
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_grid_forms() {
        assert_eq!(parse_lambda_grid("0.5").unwrap(), vec![C64::new(0.5, 0.0)]);
        assert_eq!(
            parse_lambda_grid("0.5,0.1;-1.5,0").unwrap(),
            vec![C64::new(0.5, 0.1), C64::new(-1.5, 0.0)]
        );
        let lin = parse_lambda_grid("lin:0,0:1,0:3").unwrap();
        assert_eq!(
            lin,
            vec![C64::new(0.0, 0.0), C64::new(0.5, 0.0), C64::new(1.0, 0.0)]
        );
        assert!(parse_lambda_grid("lin:0:1").is_err());
    }

    #[test]
    fn decimals_rejected_for_parameters() {
        let args = ParamArgs {
            alpha: Some("0.333".into()),
            beta: Some("1/5".into()),
            mu: Some("7/2".into()),
            l: Some(2),
            config: None,
        };
        assert!(args.resolve().is_err());
    }

    #[test]
    fn hypothesis_violations_name_the_hypothesis() {
        let args = ParamArgs {
            alpha: Some("1/3".into()),
            beta: Some("1/5".into()),
            mu: Some("7/3".into()), // congruent to alpha mod Z
            l: Some(3),
            config: None,
        };
        let err = args.resolve().unwrap_err();
        assert!(err.to_string().contains("alpha"), "{err}");
        assert_eq!(exit_code_for(&err), 2);
    }
}
