//! Certified root isolation for the gap functions.
//!
//! Every gap function is continuous, negative at 0 and unbounded at 1, so a
//! sign change is found by walking `hi = 1 − 2⁻ʲ` towards 1. Bisection then
//! shrinks the bracket below the tolerance and a few guarded Newton steps
//! polish the residual without ever leaving the bracket.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::problems::ProblemSpec;
use crate::series::MAX_ARGUMENT;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const RESIDUAL_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: u32 = 200;
pub const DEFAULT_MONOTONE_SAMPLES: usize = 1000;

const MAX_DOUBLINGS: i32 = 40;
const NEWTON_STEPS: u32 = 5;
const FD_STEP: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, r: f64) -> bool {
        self.lo < r && r <= self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootResult {
    pub radius: f64,
    pub final_bracket: Bracket,
    /// `|G(radius)|`.
    pub residual: f64,
    pub iterations: u32,
    pub monotone_certified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub tol: f64,
    pub max_iter: u32,
    pub monotone_samples: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            monotone_samples: DEFAULT_MONOTONE_SAMPLES,
        }
    }
}

impl SolverOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

fn gap(spec: &ProblemSpec, r: f64) -> Result<f64> {
    let g = spec.evaluate_g(r)?;
    if g.is_finite() {
        Ok(g)
    } else {
        Err(Error::NonFinite { r })
    }
}

/// `[0, hi]` with `hi = 1 − 2⁻ʲ` for the smallest `j ≤ 40` where `G(hi) > 0`.
/// Candidates past the evaluation limit `1 − 1e−6` are clamped to it.
pub fn find_upper_bracket(spec: &ProblemSpec) -> Result<Bracket> {
    let g0 = gap(spec, 0.0)?;
    if g0 >= 0.0 {
        return Err(Error::invalid(format!(
            "gap function is not negative at the origin (G(0) = {g0})"
        )));
    }
    let mut hi = 0.0;
    for j in 1..=MAX_DOUBLINGS {
        hi = (1.0 - 0.5f64.powi(j)).min(MAX_ARGUMENT);
        if gap(spec, hi)? > 0.0 {
            return Ok(Bracket { lo: 0.0, hi });
        }
        if hi == MAX_ARGUMENT {
            break;
        }
    }
    Err(Error::NoRoot { hi })
}

/// Solves `G(r) = 0` with default options apart from `tol`.
pub fn solve(spec: &ProblemSpec, tol: f64) -> Result<RootResult> {
    solve_with(spec, &SolverOptions::with_tol(tol))
}

pub fn solve_with(spec: &ProblemSpec, opts: &SolverOptions) -> Result<RootResult> {
    if !(1e-15..=1e-3).contains(&opts.tol) {
        return Err(Error::invalid(format!(
            "tolerance {} outside [1e-15, 1e-3]",
            opts.tol
        )));
    }
    let mut bracket = find_upper_bracket(spec)?;
    let mut iterations = 0;
    while bracket.width() > opts.tol {
        if iterations >= opts.max_iter {
            return Err(Error::NotConverged {
                iterations,
                width: bracket.width(),
            });
        }
        let mid = bracket.lo + 0.5 * bracket.width();
        if mid <= bracket.lo || mid >= bracket.hi {
            // Bracket is down to adjacent floats.
            break;
        }
        if gap(spec, mid)? < 0.0 {
            bracket.lo = mid;
        } else {
            bracket.hi = mid;
        }
        iterations += 1;
    }

    let mut radius = bracket.hi;
    let mut best = gap(spec, radius)?.abs();
    let mid = bracket.lo + 0.5 * bracket.width();
    if bracket.contains(mid) {
        let g = gap(spec, mid)?.abs();
        if g < best {
            radius = mid;
            best = g;
        }
    }
    let mut x = radius;
    for _ in 0..NEWTON_STEPS {
        if best == 0.0 {
            break;
        }
        let g = gap(spec, x)?;
        let left = (x - FD_STEP).max(0.0);
        let right = (x + FD_STEP).min(MAX_ARGUMENT);
        let slope = (gap(spec, right)? - gap(spec, left)?) / (right - left);
        if !(slope > 0.0) {
            break;
        }
        let next = x - g / slope;
        iterations += 1;
        if !bracket.contains(next) {
            break;
        }
        let g_next = gap(spec, next)?.abs();
        if g_next < best {
            radius = next;
            best = g_next;
        }
        if next == x {
            break;
        }
        x = next;
    }

    Ok(RootResult {
        radius,
        final_bracket: bracket,
        residual: best,
        iterations,
        monotone_certified: certify_monotone(spec, opts.monotone_samples),
    })
}

/// True iff the gap function strictly increases across `samples` equispaced
/// points of `[0, 1 − 1e−6]`.
///
/// The comparison is made on the left-hand side `L = G + target`. The two
/// differ by a constant, but near the origin `L` can be far below the unit
/// roundoff of the target (e.g. `r^{25}`), where `G` would collapse to
/// equal floats and hide a genuine increase.
pub fn certify_monotone(spec: &ProblemSpec, samples: usize) -> bool {
    if samples < 2 {
        return false;
    }
    let step = MAX_ARGUMENT / (samples - 1) as f64;
    let mut previous = f64::NEG_INFINITY;
    for i in 0..samples {
        let r = if i == samples - 1 {
            MAX_ARGUMENT
        } else {
            i as f64 * step
        };
        match spec.lhs_class_bound(r) {
            Ok(v) if v.is_finite() && v > previous => previous = v,
            _ => return false,
        }
    }
    true
}
