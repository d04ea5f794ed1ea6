use std::io::Write;
use std::path::Path;

use anyhow::Context;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use youngspec::characters::PLANCHEREL_ENUMERATION_CAP;
use youngspec::exact::{format_ratio, integer, rational};
use youngspec::identities::{staircase_lhs, DenominatorVariant, StaircaseSpec};
use youngspec::spectra::MomentEstimate;
use youngspec::{
    eta_zero_lhs, hook_data, k2_series, monte_carlo, plancherel_moments, ratio_mn,
    ratio_one_transposition, ratio_two_transpositions, trace_character, BigInt, BigRational,
    MomentReport, MonteCarloConfig, Partition, YoungOrthogonal,
};

use crate::render::{self, SCHEMA};
use crate::{Check, Cli, Command, Format, Method, Outcome, UsageError};

/// Tolerance of the Coxeter audit.
pub const COXETER_TOLERANCE: f64 = 1e-12;
/// Per-sample tolerance of `m_1 = θ z̄`, relative to the matrix scale.
pub const FIRST_MOMENT_TOLERANCE: f64 = 1e-9;
/// Per-sample tolerance of the trace and Frobenius identities, relative to the scale.
pub const SPECTRAL_TOLERANCE: f64 = 1e-8;

pub fn dispatch(
    cli: &Cli,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Dim { shape, verbose } => dim(cli, shape, *verbose, stdout, stderr),
        Command::Charratio { shape, r, method } => charratio(cli, shape, *r, *method, stdout),
        Command::Spectrum {
            shape,
            trials,
            seed,
            bins,
            out,
        } => spectrum(
            cli,
            shape,
            *trials,
            *seed,
            *bins,
            out.as_deref(),
            stdout,
            stderr,
        ),
        Command::Moments {
            shape,
            trials,
            smax,
            seed,
            out,
        } => moments(
            cli,
            shape,
            *trials,
            *smax,
            *seed,
            out.as_deref(),
            stdout,
            stderr,
        ),
        Command::Check(Check::Coxeter { shape }) => check_coxeter(cli, shape, stdout),
        Command::Check(Check::Identities { k, eta, rmax }) => {
            check_identities(cli, *k, eta, *rmax, stdout)
        }
        Command::Check(Check::Plancherel { n }) => check_plancherel(cli, *n, stdout),
    }
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn dim(
    cli: &Cli,
    shape: &Partition,
    verbose: bool,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> anyhow::Result<Outcome> {
    let f = hook_data(shape).dimension;
    if verbose {
        let basis = youngspec::enumerate_tableaux(shape, cli.cap)?;
        for t in basis.tableaux() {
            writeln!(stderr, "# {}", t.index())?;
            write!(stderr, "{t}")?;
        }
    }
    let text = match cli.format.unwrap_or(Format::Table) {
        Format::Table => format!("{f}\n"),
        Format::Csv => render::csv(
            &["shape", "size", "dimension"],
            &[vec![
                shape.to_string(),
                shape.size().to_string(),
                f.to_string(),
            ]],
        )?,
        Format::Json => render::json(&json!({
            "schema": SCHEMA,
            "command": "dim",
            "shape": shape.to_string(),
            "size": shape.size(),
            "dimension": f.to_string(),
        }))?,
    };
    emit(&text, None, stdout)?;
    Ok(Outcome::Pass)
}

enum RatioValue {
    Exact(BigRational),
    Float(f64),
}

fn charratio(
    cli: &Cli,
    shape: &Partition,
    r: usize,
    method: Method,
    stdout: &mut dyn Write,
) -> anyhow::Result<Outcome> {
    let value = match method {
        Method::Mn => RatioValue::Exact(ratio_mn(shape, r)?),
        Method::Closed => RatioValue::Exact(match r {
            0 => BigRational::one(),
            1 => ratio_one_transposition(shape)?,
            2 => ratio_two_transpositions(shape)?,
            _ => {
                return Err(
                    UsageError(format!("closed forms exist for r <= 2, got r = {r}")).into(),
                )
            }
        }),
        Method::Trace => {
            if 2 * r > shape.size() {
                return Err(UsageError(format!(
                    "{r} disjoint transpositions need at least {} boxes",
                    2 * r
                ))
                .into());
            }
            let word: Vec<usize> = (0..r).map(|i| 2 * i + 1).collect();
            RatioValue::Float(trace_character(shape, &word, cli.cap)?)
        }
    };
    let method_name = match method {
        Method::Mn => "mn",
        Method::Closed => "closed",
        Method::Trace => "trace",
    };
    let (text_value, json_value) = match &value {
        RatioValue::Exact(q) => (format_ratio(q), render::ratio(q)),
        RatioValue::Float(x) => (x.to_string(), render::float(*x)),
    };
    let text = match cli.format.unwrap_or(Format::Table) {
        Format::Table => format!("{text_value}\n"),
        Format::Csv => render::csv(
            &["shape", "r", "method", "ratio"],
            &[vec![
                shape.to_string(),
                r.to_string(),
                method_name.into(),
                text_value,
            ]],
        )?,
        Format::Json => render::json(&json!({
            "schema": SCHEMA,
            "command": "charratio",
            "shape": shape.to_string(),
            "r": r,
            "method": method_name,
            "exact": matches!(value, RatioValue::Exact(_)),
            "ratio": json_value,
        }))?,
    };
    emit(&text, None, stdout)?;
    Ok(Outcome::Pass)
}

fn run_monte_carlo(
    cli: &Cli,
    shape: &Partition,
    config: &MonteCarloConfig,
) -> anyhow::Result<MomentReport> {
    let rep = YoungOrthogonal::new(shape, cli.cap)?;
    Ok(monte_carlo(&rep, config)?)
}

fn residuals_ok(report: &MomentReport) -> bool {
    report.max_first_moment_residual() <= FIRST_MOMENT_TOLERANCE
        && report.max_trace_residual() <= SPECTRAL_TOLERANCE
        && report.max_square_residual() <= SPECTRAL_TOLERANCE
}

fn residuals_json(report: &MomentReport) -> Value {
    json!({
        "first_moment_max": render::float(report.max_first_moment_residual()),
        "trace_max": render::float(report.max_trace_residual()),
        "square_max": render::float(report.max_square_residual()),
        "first_moment_tolerance": FIRST_MOMENT_TOLERANCE,
        "spectral_tolerance": SPECTRAL_TOLERANCE,
        "pass": residuals_ok(report),
    })
}

fn report_residuals(report: &MomentReport, stderr: &mut dyn Write) -> anyhow::Result<Outcome> {
    writeln!(
        stderr,
        "residuals: first moment {}, trace {}, squares {} (relative to scale)",
        render::residual(report.max_first_moment_residual()),
        render::residual(report.max_trace_residual()),
        render::residual(report.max_square_residual()),
    )?;
    if residuals_ok(report) {
        Ok(Outcome::Pass)
    } else {
        writeln!(
            stderr,
            "check failed: per-sample identity residual over tolerance"
        )?;
        Ok(Outcome::CheckFailed)
    }
}

#[allow(clippy::too_many_arguments)]
fn spectrum(
    cli: &Cli,
    shape: &Partition,
    trials: usize,
    seed: u64,
    bins: usize,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> anyhow::Result<Outcome> {
    let mut config = MonteCarloConfig::new(trials, seed, 2);
    config.bins = bins;
    let report = run_monte_carlo(cli, shape, &config)?;
    let table_format = cli.format == Some(Format::Table);
    let rows: Vec<Vec<String>> = report
        .histogram
        .iter()
        .map(|b| {
            let mass = if table_format {
                render::number(b.mass)
            } else {
                b.mass.to_string()
            };
            vec![b.left.to_string(), b.right.to_string(), mass]
        })
        .collect();
    let header = ["bin_left", "bin_right", "mass"];
    let text = match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => render::csv(&header, &rows)?,
        Format::Table => render::table(&header, &rows),
        Format::Json => render::json(&json!({
            "schema": SCHEMA,
            "command": "spectrum",
            "shape": shape.to_string(),
            "theta": render::ratio(&report.theta),
            "dimension": report.dimension,
            "trials": trials,
            "seed": seed,
            "bins": report.histogram.iter().map(|b| json!({
                "left": render::float(b.left),
                "right": render::float(b.right),
                "count": b.count,
                "mass": render::float(b.mass),
            })).collect::<Vec<_>>(),
            "ks_distance": render::float(report.ks_distance),
            "residuals": residuals_json(&report),
        }))?,
    };
    emit(&text, out, stdout)?;
    writeln!(stderr, "ks distance to N(0,1): {}", report.ks_distance)?;
    report_residuals(&report, stderr)
}

fn estimate_json(e: &MomentEstimate) -> Value {
    json!({
        "s": e.order,
        "estimate": render::float(e.mean),
        "standard_error": render::float(e.standard_error),
        "target": render::float(e.target.value),
        "target_kind": target_kind(e),
        "limit_gap": render::float(e.limit_gap),
    })
}

fn target_kind(e: &MomentEstimate) -> &'static str {
    if e.target.exact {
        "exact"
    } else {
        "limit"
    }
}

#[allow(clippy::too_many_arguments)]
fn moments(
    cli: &Cli,
    shape: &Partition,
    trials: usize,
    smax: usize,
    seed: u64,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> anyhow::Result<Outcome> {
    let report = run_monte_carlo(cli, shape, &MonteCarloConfig::new(trials, seed, smax))?;
    let mut estimates = report.estimates.clone();
    let mut cv = report.conditional_variance.clone();
    cv.order = 2;
    let header = [
        "s",
        "estimate",
        "standard_error",
        "target",
        "target_kind",
        "limit_gap",
    ];
    let table_format = cli.format == Some(Format::Table);
    let num = |x: f64| {
        if table_format {
            render::number(x)
        } else {
            x.to_string()
        }
    };
    let row = |e: &MomentEstimate, label: String| {
        vec![
            label,
            num(e.mean),
            num(e.standard_error),
            num(e.target.value),
            target_kind(e).to_string(),
            num(e.limit_gap),
        ]
    };
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => render::json(&json!({
            "schema": SCHEMA,
            "command": "moments",
            "shape": shape.to_string(),
            "theta": render::ratio(&report.theta),
            "dimension": report.dimension,
            "trials": trials,
            "seed": seed,
            "smax": smax,
            "moments": estimates.iter().map(estimate_json).collect::<Vec<_>>(),
            "conditional_variance": estimate_json(&cv),
            "ks_distance": render::float(report.ks_distance),
            "residuals": residuals_json(&report),
        }))?,
        format => {
            let mut rows: Vec<Vec<String>> = estimates
                .drain(..)
                .map(|e| row(&e, e.order.to_string()))
                .collect();
            rows.push(row(&cv, "cv".into()));
            if format == Format::Csv {
                render::csv(&header, &rows)?
            } else {
                render::table(&header, &rows)
            }
        }
    };
    emit(&text, out, stdout)?;
    report_residuals(&report, stderr)
}

fn check_coxeter(cli: &Cli, shape: &Partition, stdout: &mut dyn Write) -> anyhow::Result<Outcome> {
    let rep = YoungOrthogonal::new(shape, cli.cap)?;
    let audit = rep.coxeter_audit();
    let pass = audit.passes(COXETER_TOLERANCE);
    let residuals = [
        ("involution", audit.involution),
        ("commutation", audit.commutation),
        ("braid", audit.braid),
        ("symmetry", audit.symmetry),
        ("orthogonality", audit.orthogonality),
    ];
    let text = match cli.format.unwrap_or(Format::Table) {
        Format::Json => {
            let mut res = serde_json::Map::new();
            for (name, x) in residuals {
                res.insert(name.into(), render::float(x));
            }
            render::json(&json!({
                "schema": SCHEMA,
                "command": "check coxeter",
                "shape": shape.to_string(),
                "dimension": rep.dim(),
                "tolerance": COXETER_TOLERANCE,
                "residuals": res,
                "max_off_diagonal_per_row": audit.max_off_diagonal_per_row,
                "structurally_symmetric": audit.structurally_symmetric,
                "pass": pass,
            }))?
        }
        format => {
            let mut rows: Vec<Vec<String>> = residuals
                .iter()
                .map(|(name, x)| {
                    vec![
                        name.to_string(),
                        render::residual(*x),
                        render::status(*x <= COXETER_TOLERANCE).into(),
                    ]
                })
                .collect();
            rows.push(vec![
                "off_diagonal_per_row".into(),
                audit.max_off_diagonal_per_row.to_string(),
                render::status(audit.max_off_diagonal_per_row <= 1).into(),
            ]);
            rows.push(vec![
                "structural_symmetry".into(),
                audit.structurally_symmetric.to_string(),
                render::status(audit.structurally_symmetric).into(),
            ]);
            let header = ["check", "value", "status"];
            if format == Format::Csv {
                render::csv(&header, &rows)?
            } else {
                format!(
                    "shape {}  dimension {}  tolerance {}\n{}result: {}\n",
                    shape,
                    rep.dim(),
                    render::residual(COXETER_TOLERANCE),
                    render::table(&header, &rows),
                    render::status(pass)
                )
            }
        }
    };
    emit(&text, None, stdout)?;
    Ok(if pass {
        Outcome::Pass
    } else {
        Outcome::CheckFailed
    })
}

struct IdentityRow {
    identity: String,
    r: usize,
    value: BigRational,
    expected: BigRational,
}

impl IdentityRow {
    fn ok(&self) -> bool {
        self.value == self.expected
    }
}

fn check_identities(
    cli: &Cli,
    k: usize,
    eta: &[usize],
    rmax: usize,
    stdout: &mut dyn Write,
) -> anyhow::Result<Outcome> {
    let eta = if eta.is_empty() {
        vec![0; k.saturating_sub(1)]
    } else {
        eta.to_vec()
    };
    let spec = StaircaseSpec::new(k, eta)?;
    let power = |r: usize| integer(BigInt::from(k).pow(r as u32));
    let mut rows = Vec::new();
    let mut verified = Vec::new();
    for variant in DenominatorVariant::ALL {
        let before = rows.len();
        for r in 0..=rmax {
            rows.push(IdentityRow {
                identity: format!("staircase[{}]", variant.name()),
                r,
                value: staircase_lhs(&spec, r, variant),
                expected: power(r),
            });
        }
        if rows[before..].iter().all(IdentityRow::ok) {
            verified.push(variant);
        }
    }
    for r in 0..=rmax {
        rows.push(IdentityRow {
            identity: "eta_zero".into(),
            r,
            value: eta_zero_lhs(k, r)?,
            expected: power(r),
        });
    }
    if k == 2 {
        for r in 0..=rmax {
            rows.push(IdentityRow {
                identity: "k2_series".into(),
                r,
                value: k2_series(r),
                expected: power(r),
            });
        }
    }
    let required_ok = rows
        .iter()
        .filter(|row| !row.identity.starts_with("staircase"))
        .all(IdentityRow::ok);
    let pass = required_ok && !verified.is_empty();
    let verified_names: Vec<&str> = verified.iter().map(|v| v.name()).collect();
    let eta_text = spec
        .eta()
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let text = match cli.format.unwrap_or(Format::Table) {
        Format::Json => render::json(&json!({
            "schema": SCHEMA,
            "command": "check identities",
            "K": k,
            "eta": spec.eta(),
            "rmax": rmax,
            "rows": rows.iter().map(|row| json!({
                "identity": row.identity,
                "r": row.r,
                "value": render::ratio(&row.value),
                "expected": render::ratio(&row.expected),
                "ok": row.ok(),
            })).collect::<Vec<_>>(),
            "verified_variants": verified_names,
            "pass": pass,
        }))?,
        format => {
            let header = ["identity", "r", "value", "expected", "status"];
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|row| {
                    vec![
                        row.identity.clone(),
                        row.r.to_string(),
                        format_ratio(&row.value),
                        format_ratio(&row.expected),
                        if row.ok() { "ok" } else { "mismatch" }.into(),
                    ]
                })
                .collect();
            if format == Format::Csv {
                render::csv(&header, &cells)?
            } else {
                let variants = if verified_names.is_empty() {
                    "none".into()
                } else {
                    verified_names.join(", ")
                };
                format!(
                    "K {k}  eta [{eta_text}]  rmax {rmax}\n{}verified staircase variant: {variants}\nresult: {}\n",
                    render::table(&header, &cells),
                    render::status(pass)
                )
            }
        }
    };
    emit(&text, None, stdout)?;
    Ok(if pass {
        Outcome::Pass
    } else {
        Outcome::CheckFailed
    })
}

fn check_plancherel(cli: &Cli, n: usize, stdout: &mut dyn Write) -> anyhow::Result<Outcome> {
    let summary = plancherel_moments(n, PLANCHEREL_ENUMERATION_CAP)?;
    let expected_variance = rational(1, (n * (n - 1) / 2) as i64);
    let checks = [
        ("total_mass", summary.total_mass.clone(), BigRational::one()),
        ("mean", summary.mean.clone(), BigRational::zero()),
        ("variance", summary.variance.clone(), expected_variance),
    ];
    let pass = checks.iter().all(|(_, got, want)| got == want);
    let text = match cli.format.unwrap_or(Format::Table) {
        Format::Json => render::json(&json!({
            "schema": SCHEMA,
            "command": "check plancherel",
            "n": n,
            "total_mass": render::ratio(&summary.total_mass),
            "mean": render::ratio(&summary.mean),
            "variance": render::ratio(&summary.variance),
            "expected_variance": render::ratio(&checks[2].2),
            "pass": pass,
        }))?,
        format => {
            let rows: Vec<Vec<String>> = checks
                .iter()
                .map(|(name, got, want)| {
                    vec![
                        name.to_string(),
                        format_ratio(got),
                        format_ratio(want),
                        render::status(got == want).into(),
                    ]
                })
                .collect();
            let header = ["quantity", "value", "expected", "status"];
            if format == Format::Csv {
                render::csv(&header, &rows)?
            } else {
                format!(
                    "n {n}\n{}result: {}\n",
                    render::table(&header, &rows),
                    render::status(pass)
                )
            }
        }
    };
    emit(&text, None, stdout)?;
    Ok(if pass {
        Outcome::Pass
    } else {
        Outcome::CheckFailed
    })
}
