//! `bohr`: solve, tabulate and verify the Bohr radius problems.
//!
//! Exit status: 0 on success, 1 when a table row or verification check
//! fails, 2 on usage errors, 3 on numerical errors.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod render;

use std::io::Write;
use std::process::ExitCode;

use bohr_core::problems::{OperatorFlavor, ProblemId, ProblemSpec};
use bohr_core::solver::{solve_with, RootResult, SolverOptions, DEFAULT_MAX_ITER, DEFAULT_TOL};
use bohr_core::verify::{
    reproduce_table, run_suite, Suite, TableId, TableRow, VerificationReport, DEFAULT_TRIALS,
};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use render::{fmt_num, json_text, round12, rounded_json, Cell, Format, Grid};

#[derive(Debug, Parser)]
#[command(
    name = "bohr",
    version,
    about = "Bohr radii for stable harmonic mappings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Bracket width at which bisection stops.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,

    /// Output format (default: json for `verify`, plain otherwise).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Seed for the sampling suite.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Bisection iteration limit.
    #[arg(long = "max-iter", global = true, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: u32,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one problem, e.g. `solve T31 m=1 p=1`.
    Solve {
        problem: String,
        /// Parameters as key=value.
        params: Vec<String>,
        #[arg(long, value_enum, default_value_t = FlavorArg::D)]
        flavor: FlavorArg,
    },
    /// Recompute a reference table: 3.1, 3.2, 3.3, 3.4 or all.
    Table { id: String },
    /// Run a verification suite: identities, sharpness, sampling, area or all.
    Verify {
        suite: String,
        /// Random maps per problem in the sampling suite.
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
    },
    /// Radius as one parameter runs over lo:hi:step, e.g. `sweep T42 lambda 0:1:0.25 m=1`.
    Sweep {
        problem: String,
        param: String,
        range: String,
        /// Remaining parameters as key=value.
        fixed: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum FlavorArg {
    D,
    Dscript,
}

impl From<FlavorArg> for OperatorFlavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::D => OperatorFlavor::D,
            FlavorArg::Dscript => OperatorFlavor::Dscript,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<bohr_core::Error> for Failure {
    fn from(e: bohr_core::Error) -> Self {
        match e {
            bohr_core::Error::InvalidParameter(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

struct Outcome {
    text: String,
    pass: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not worth a panic.
            let _ = stdout.write_all(out.text.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nRun `bohr --help` for usage.");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("numerical error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let opts = SolverOptions {
        tol: cli.tol,
        max_iter: cli.max_iter,
        ..SolverOptions::default()
    };
    match &cli.command {
        Command::Solve {
            problem,
            params,
            flavor,
        } => {
            let spec = parse_spec(problem, params)?.with_flavor((*flavor).into());
            let root = solve_with(&spec, &opts)?;
            Ok(Outcome {
                text: render_solve(&spec, &root, cli.format.unwrap_or(Format::Plain)),
                pass: true,
            })
        }
        Command::Table { id } => {
            let ids = if id == "all" {
                TableId::ALL.to_vec()
            } else {
                vec![id.parse::<TableId>()?]
            };
            let mut rows = Vec::new();
            for t in &ids {
                rows.extend(reproduce_table(*t, &opts)?);
            }
            Ok(Outcome {
                pass: rows.iter().all(|r| r.pass),
                text: render_table(&rows, ids.len() > 1, cli.format.unwrap_or(Format::Plain)),
            })
        }
        Command::Verify { suite, trials } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite, cli.seed, *trials, &opts)?;
            Ok(Outcome {
                pass: report.failures == 0,
                text: render_verify(&report, cli.format.unwrap_or(Format::Json)),
            })
        }
        Command::Sweep {
            problem,
            param,
            range,
            fixed,
        } => {
            let id: ProblemId = problem.parse()?;
            let sweep = run_sweep(id, param, range, fixed, &opts)?;
            Ok(Outcome {
                text: render_sweep(id, param, &sweep, cli.format.unwrap_or(Format::Plain)),
                pass: true,
            })
        }
    }
}

fn split_pairs(raw: &[String]) -> Result<Vec<(String, String)>, Failure> {
    raw.iter()
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Failure::Usage(format!("expected key=value, got `{kv}`")))
        })
        .collect()
}

fn parse_spec(problem: &str, params: &[String]) -> Result<ProblemSpec, Failure> {
    let id: ProblemId = problem.parse()?;
    Ok(ProblemSpec::from_params(id, &split_pairs(params)?)?)
}

fn render_solve(spec: &ProblemSpec, root: &RootResult, format: Format) -> String {
    match format {
        Format::Json => {
            let mut v = rounded_json(root);
            v["problem"] = rounded_json(spec);
            v["target"] = json!(spec.target());
            json_text(&v)
        }
        Format::Csv | Format::Plain => {
            let params = spec.params();
            let mut headers = vec!["problem".to_string(), "flavor".to_string()];
            headers.extend(params.iter().map(|(k, _)| k.to_string()));
            headers.extend(
                [
                    "radius",
                    "residual",
                    "bracket_lo",
                    "bracket_hi",
                    "iterations",
                    "monotone_certified",
                ]
                .map(String::from),
            );
            let mut row: Vec<Cell> = vec![spec.id().to_string().into(), flavor_name(spec).into()];
            row.extend(params.iter().map(|(_, v)| Cell::Text(v.clone())));
            row.extend([
                root.radius.into(),
                root.residual.into(),
                root.final_bracket.lo.into(),
                root.final_bracket.hi.into(),
                root.iterations.into(),
                root.monotone_certified.into(),
            ]);
            if format == Format::Csv {
                let mut g = Grid::new(headers);
                g.push(row);
                g.csv()
            } else {
                let width = headers.iter().map(|h| h.len()).max().unwrap_or(0);
                headers
                    .iter()
                    .zip(row)
                    .map(|(h, c)| {
                        let text = match c {
                            Cell::Num(x) => fmt_num(x),
                            Cell::Int(n) => n.to_string(),
                            Cell::Bool(b) => b.to_string(),
                            Cell::Text(s) => s,
                            Cell::Empty => String::new(),
                        };
                        format!("{h:<width$}  {text}\n")
                    })
                    .collect()
            }
        }
    }
}

fn flavor_name(spec: &ProblemSpec) -> &'static str {
    match spec.flavor {
        OperatorFlavor::D => "D",
        OperatorFlavor::Dscript => "Dscript",
    }
}

fn render_table(rows: &[TableRow], combined: bool, format: Format) -> String {
    let passed = rows.iter().filter(|r| r.pass).count();
    if format == Format::Json {
        let items: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "table": r.table,
                    "problem": r.problem,
                    "expected": r.expected_radius,
                    "computed": r.computed_radius,
                    "delta": r.abs_delta,
                    "residual": r.residual,
                    "pass": r.pass,
                })
            })
            .collect();
        let v = json!({
            "rows": items,
            "passed": passed,
            "total": rows.len(),
            "tolerance": bohr_core::verify::TABLE_TOL,
        });
        return json_text(&rounded_json(&v));
    }

    let param_names: Vec<&str> = if combined {
        vec!["s", "m", "p", "q"]
    } else {
        rows.first()
            .map(|r| r.problem.params().iter().map(|(k, _)| *k).collect())
            .unwrap_or_default()
    };
    let mut headers: Vec<String> = Vec::new();
    if combined {
        headers.push("table".into());
    }
    headers.extend(param_names.iter().map(|s| s.to_string()));
    headers.extend(["expected", "computed", "delta", "residual", "pass"].map(String::from));
    let mut g = Grid::new(headers);
    for r in rows {
        let params = r.problem.params();
        let mut cells: Vec<Cell> = Vec::new();
        if combined {
            cells.push(r.table.to_string().into());
        }
        for name in &param_names {
            cells.push(match params.iter().find(|(k, _)| k == name) {
                Some((_, v)) => v.parse::<u64>().map_or(Cell::Text(v.clone()), Cell::Int),
                None => Cell::Empty,
            });
        }
        cells.extend([
            r.expected_radius.into(),
            r.computed_radius.into(),
            r.abs_delta.into(),
            r.residual.into(),
            r.pass.into(),
        ]);
        g.push(cells);
    }
    match format {
        Format::Csv => g.csv(),
        _ => format!("{}{passed}/{} rows pass\n", g.plain(), rows.len()),
    }
}

fn render_verify(report: &VerificationReport, format: Format) -> String {
    let mut v = rounded_json(report);
    v["pass"] = json!(report.failures == 0);
    match format {
        Format::Json => json_text(&v),
        Format::Csv => {
            let mut g = Grid::new(["suite", "case", "field", "value"]);
            for (suite, cases) in verify_cases(&v) {
                for (label, obj) in cases {
                    for (field, value) in obj {
                        if value.is_object() || value.is_array() {
                            continue;
                        }
                        g.push(vec![
                            suite.clone().into(),
                            label.clone().into(),
                            field.clone().into(),
                            json_scalar(value).into(),
                        ]);
                    }
                }
            }
            if let Some(note) = report.area_note {
                g.push(vec![
                    "area".into(),
                    "note".into(),
                    "text".into(),
                    note.into(),
                ]);
            }
            g.csv()
        }
        Format::Plain => verify_plain(report),
    }
}

type CaseList<'a> = Vec<(String, &'a serde_json::Map<String, Value>)>;

/// `(suite, [(case label, fields)])` in a fixed suite order.
fn verify_cases(v: &Value) -> Vec<(String, CaseList<'_>)> {
    let mut out = Vec::new();
    if let Some(cases) = v["identities"]["cases"].as_array() {
        let list = cases
            .iter()
            .filter_map(Value::as_object)
            .map(|c| {
                let label = format!(
                    "alpha={} N={} x={}",
                    json_scalar(&c["weight"]),
                    json_scalar(&c["start"]),
                    json_scalar(&c["x"])
                );
                (label, c)
            })
            .collect();
        out.push(("identities".to_string(), list));
    }
    let problem_cases = |key: &str, extra: Option<&str>| -> CaseList<'_> {
        v[key]
            .as_array()
            .map(|items| {
                items
                    .iter()
                    .filter_map(Value::as_object)
                    .map(|c| {
                        let mut label = problem_label(&c["problem"]);
                        if let Some(e) = extra {
                            label.push_str(&format!(" {e}={}", json_scalar(&c[e])));
                        }
                        (label, c)
                    })
                    .collect()
            })
            .unwrap_or_default()
    };
    if v.get("sharpness").is_some() {
        out.push((
            "sharpness".to_string(),
            problem_cases("sharpness", Some("epsilon")),
        ));
    }
    if let Some(t) = v["theorem51"].as_object() {
        out.push((
            "theorem51".to_string(),
            vec![(problem_label(&t["problem"]), t)],
        ));
    }
    if v.get("sampling").is_some() {
        out.push(("sampling".to_string(), problem_cases("sampling", None)));
    }
    if let Some(items) = v["area"].as_array() {
        let list = items
            .iter()
            .filter_map(Value::as_object)
            .map(|c| (format!("r={}", json_scalar(&c["r"])), c))
            .collect();
        out.push(("area".to_string(), list));
    }
    out
}

fn problem_label(p: &Value) -> String {
    let mut label = p["id"].as_str().unwrap_or("?").to_string();
    if let Some(params) = p["params"].as_object() {
        for (k, v) in params {
            label.push_str(&format!(" {k}={}", json_scalar(v)));
        }
    }
    label
}

fn json_scalar(v: &Value) -> String {
    match v {
        Value::Number(n) => n.as_f64().map_or_else(
            || n.to_string(),
            |x| {
                if n.is_f64() {
                    fmt_num(x)
                } else {
                    n.to_string()
                }
            },
        ),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Null => "null".to_string(),
        Value::Array(items) => items.iter().map(json_scalar).collect::<Vec<_>>().join(","),
        Value::Object(_) => String::new(),
    }
}

fn verify_plain(report: &VerificationReport) -> String {
    let mut out = String::new();
    if let Some(ids) = &report.identities {
        out.push_str(&format!(
            "identities: {} cases, {} failures\n",
            ids.cases.len(),
            ids.failures
        ));
        for c in ids.cases.iter().filter(|c| !c.pass) {
            out.push_str(&format!(
                "  FAIL alpha={} N={} x={} delta={} tail_bound={}\n",
                c.weight,
                c.start,
                fmt_num(c.x),
                fmt_num(c.delta),
                fmt_num(c.tail_bound)
            ));
        }
    }
    if let Some(scans) = &report.sharpness {
        let failures = scans.iter().filter(|s| !s.pass).count();
        out.push_str(&format!(
            "sharpness: {} scans, {failures} failures\n",
            scans.len()
        ));
        for s in scans.iter().filter(|s| !s.pass || s.advisory) {
            out.push_str(&format!(
                "  {} {} eps={} radius={} holds_below={} fails_above={}\n",
                if s.advisory { "ADVISORY" } else { "FAIL" },
                s.problem,
                fmt_num(s.epsilon),
                fmt_num(s.radius),
                s.holds_below,
                s.fails_above
            ));
        }
    }
    if let Some(t) = &report.theorem51 {
        out.push_str(&format!(
            "theorem51: radius={} reference={} monotone={} {}\n",
            fmt_num(t.radius),
            fmt_num(t.reference_radius),
            t.monotone_certified,
            if t.pass { "pass" } else { "FAIL" }
        ));
    }
    if let Some(runs) = &report.sampling {
        let violations: usize = runs
            .iter()
            .filter(|r| !r.advisory)
            .map(|r| r.violations)
            .sum();
        let trials = runs.first().map_or(0, |r| r.trials);
        out.push_str(&format!(
            "sampling: {} problems x {trials} trials, seed {}, {violations} violations\n",
            runs.len(),
            report.seed
        ));
        for r in runs {
            out.push_str(&format!(
                "  {:<24} radius={:<16} max_lhs={:<16} target={} violations={}\n",
                r.problem.to_string(),
                fmt_num(r.radius),
                fmt_num(r.max_lhs),
                fmt_num(r.target),
                r.violations
            ));
        }
    }
    if let Some(area) = &report.area {
        let failures = area.iter().filter(|a| !a.pass).count();
        out.push_str(&format!(
            "area: {} radii, {failures} failures\n",
            area.len()
        ));
        for a in area {
            out.push_str(&format!(
                "  r={:<5} series={:<16} quadrature={:<16} delta={}\n",
                fmt_num(a.r),
                fmt_num(a.series),
                fmt_num(a.quadrature),
                fmt_num(a.delta)
            ));
        }
        if let Some(note) = report.area_note {
            out.push_str(&format!("  note: {note}\n"));
        }
    }
    out.push_str(&format!(
        "result: {} ({} failures, {} advisories)\n",
        if report.failures == 0 { "pass" } else { "FAIL" },
        report.failures,
        report.advisories
    ));
    out
}

struct SweepRow {
    value: f64,
    root: RootResult,
}

fn parse_range(raw: &str) -> Result<Vec<f64>, Failure> {
    let bad = || {
        Failure::Usage(format!(
            "range must be lo:hi:step with step > 0 and lo <= hi, got `{raw}`"
        ))
    };
    let parts: Vec<f64> = raw
        .split(':')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let [lo, hi, step] = parts[..] else {
        return Err(bad());
    };
    if !(step > 0.0) || !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(bad());
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    if count > 100_000 {
        return Err(Failure::Usage(format!(
            "range `{raw}` has {count} points (limit 100000)"
        )));
    }
    Ok((0..count).map(|i| round12(lo + i as f64 * step)).collect())
}

fn run_sweep(
    id: ProblemId,
    param: &str,
    range: &str,
    fixed: &[String],
    opts: &SolverOptions,
) -> Result<Vec<SweepRow>, Failure> {
    if !id.parameter_names().contains(&param) || param == "poly" {
        return Err(Failure::Usage(format!(
            "{id} has no sweepable parameter `{param}`"
        )));
    }
    let values = parse_range(range)?;
    let fixed = split_pairs(fixed)?;
    values
        .into_iter()
        .map(|value| {
            let text = if param == "lambda" {
                value.to_string()
            } else if value.fract() == 0.0 && value >= 0.0 {
                format!("{}", value as u64)
            } else {
                return Err(Failure::Usage(format!(
                    "`{param}` takes integer values, got {value}"
                )));
            };
            let mut pairs = fixed.clone();
            pairs.push((param.to_string(), text));
            let spec = ProblemSpec::from_params(id, &pairs)?;
            Ok(SweepRow {
                value,
                root: solve_with(&spec, opts)?,
            })
        })
        .collect()
}

fn render_sweep(id: ProblemId, param: &str, rows: &[SweepRow], format: Format) -> String {
    if format == Format::Json {
        let items: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "value": r.value,
                    "radius": r.root.radius,
                    "residual": r.root.residual,
                    "iterations": r.root.iterations,
                    "monotone_certified": r.root.monotone_certified,
                })
            })
            .collect();
        return json_text(&rounded_json(&json!({
            "problem": id,
            "param": param,
            "rows": items,
        })));
    }
    let mut g = Grid::new([
        param,
        "radius",
        "residual",
        "iterations",
        "monotone_certified",
    ]);
    for r in rows {
        g.push(vec![
            r.value.into(),
            r.root.radius.into(),
            r.root.residual.into(),
            r.root.iterations.into(),
            r.root.monotone_certified.into(),
        ]);
    }
    match format {
        Format::Csv => g.csv(),
        _ => g.plain(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(
            parse_range("0:1:0.25").unwrap(),
            vec![0.0, 0.25, 0.5, 0.75, 1.0]
        );
        assert_eq!(parse_range("0:1:0.1").unwrap().len(), 11);
        assert_eq!(parse_range("0:1:0.1").unwrap()[3], 0.3);
        assert_eq!(parse_range("2:2:1").unwrap(), vec![2.0]);
        for bad in ["0:1", "0:1:0", "1:0:0.1", "a:b:c", "0:1:-1"] {
            assert!(parse_range(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn pairs() {
        let p = split_pairs(&["m=1".into(), " p = 2".into()]).unwrap();
        assert_eq!(p, vec![("m".into(), "1".into()), ("p".into(), "2".into())]);
        assert!(split_pairs(&["m1".into()]).is_err());
    }

    #[test]
    fn error_classes() {
        assert!(matches!(parse_spec("T99", &[]), Err(Failure::Usage(_))));
        assert!(matches!(
            parse_spec("T41", &["m=1".into()]),
            Err(Failure::Usage(_))
        ));
        let numeric: Failure = bohr_core::Error::NoRoot { hi: 0.5 }.into();
        assert!(matches!(numeric, Failure::Numeric(_)));
    }
}
