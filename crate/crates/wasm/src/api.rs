use bohr_core::solver::{find_upper_bracket, solve_with, SolverOptions};
use bohr_core::{ProblemId, ProblemSpec};
use serde_json::{json, Value};

pub const MAX_SAMPLES: usize = 4000;
pub const MAX_STEPS: usize = 200;

type ApiResult = Result<String, String>;

/// Parses `"m=1 p=2"`; pairs are separated by whitespace or `;`.
pub fn parse_params(raw: &str) -> Result<Vec<(String, String)>, String> {
    raw.split(|c: char| c.is_whitespace() || c == ';')
        .filter(|s| !s.is_empty())
        .map(|pair| {
            pair.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| format!("expected key=value, got `{pair}`"))
        })
        .collect()
}

fn spec(problem: &str, params: &str) -> Result<ProblemSpec, String> {
    let id: ProblemId = problem.trim().parse().map_err(|e| format!("{e}"))?;
    ProblemSpec::from_params(id, &parse_params(params)?).map_err(|e| e.to_string())
}

fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn solve(problem: &str, params: &str) -> ApiResult {
    let spec = spec(problem, params)?;
    let root = solve_with(&spec, &SolverOptions::default()).map_err(|e| e.to_string())?;
    Ok(json!({
        "problem": spec.to_string(),
        "target": spec.target(),
        "radius": root.radius,
        "residual": root.residual,
        "iterations": root.iterations,
        "bracket": [root.final_bracket.lo, root.final_bracket.hi],
        "monotone_certified": root.monotone_certified,
    })
    .to_string())
}

pub fn lhs_curve(problem: &str, params: &str, samples: usize) -> ApiResult {
    if !(2..=MAX_SAMPLES).contains(&samples) {
        return Err(format!("samples must lie in 2..={MAX_SAMPLES}"));
    }
    let spec = spec(problem, params)?;
    let root = solve_with(&spec, &SolverOptions::default()).map_err(|e| e.to_string())?;
    let far = find_upper_bracket(&spec).map_err(|e| e.to_string())?.hi;
    let r_max = (2.0 * root.radius).min(far);
    let mut r = Vec::with_capacity(samples);
    let mut class_bound = Vec::with_capacity(samples);
    let mut extremal = Vec::with_capacity(samples);
    for i in 0..samples {
        let x = r_max * i as f64 / (samples - 1) as f64;
        let (bound, ext) = spec.lhs_pair(x).map_err(|e| e.to_string())?;
        r.push(x);
        class_bound.push(finite(bound));
        extremal.push(finite(ext));
    }
    Ok(json!({
        "problem": spec.to_string(),
        "target": spec.target(),
        "radius": root.radius,
        "r": r,
        "class_bound": class_bound,
        "extremal": extremal,
    })
    .to_string())
}

pub fn sweep(
    problem: &str,
    params: &str,
    param: &str,
    lo: f64,
    hi: f64,
    steps: usize,
) -> ApiResult {
    let id: ProblemId = problem.trim().parse().map_err(|e| format!("{e}"))?;
    let param = param.trim();
    if !id.parameter_names().contains(&param) || param == "poly" {
        return Err(format!("{id} has no sweepable parameter `{param}`"));
    }
    if !(1..=MAX_STEPS).contains(&steps) || !(lo <= hi) {
        return Err(format!("need lo <= hi and 1..={MAX_STEPS} steps"));
    }
    let integral = param != "lambda";
    let mut fixed = parse_params(params)?;
    fixed.retain(|(k, _)| k != param);
    let mut values = Vec::new();
    let mut radii = Vec::new();
    for i in 0..=steps {
        let mut value = lo + (hi - lo) * i as f64 / steps as f64;
        if integral {
            value = value.round();
            if values.last() == Some(&value) {
                continue;
            }
        }
        let text = if integral {
            format!("{}", value as u64)
        } else {
            value.to_string()
        };
        let mut pairs = fixed.clone();
        pairs.push((param.to_string(), text));
        let spec = ProblemSpec::from_params(id, &pairs).map_err(|e| e.to_string())?;
        let root = solve_with(&spec, &SolverOptions::default()).map_err(|e| e.to_string())?;
        values.push(value);
        radii.push(root.radius);
    }
    Ok(
        json!({ "problem": id.to_string(), "param": param, "values": values, "radii": radii })
            .to_string(),
    )
}

pub fn parameter_names(problem: &str) -> ApiResult {
    let id: ProblemId = problem.trim().parse().map_err(|e| format!("{e}"))?;
    Ok(json!(id.parameter_names()).to_string())
}
