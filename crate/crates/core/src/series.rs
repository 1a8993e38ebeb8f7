//! Weighted geometric series `Σ_{n≥N} n^α xⁿ`.
//!
//! Every radius equation is assembled from a handful of these sums. The
//! closed forms are rational functions of `x`; for `α ≥ 2` they are
//! `x·A_α(x)/(1−x)^{α+1}` with `A_α` the Eulerian polynomial. A brute-force
//! partial sum and a geometric tail bound are provided so the closed forms
//! can be checked against direct accumulation.

use twofloat::TwoFloat;

use crate::error::{Error, Result};

/// Largest argument accepted by the closed forms. Beyond this the
/// `(1−x)^{-k}` factors lose too much relative accuracy.
pub const MAX_ARGUMENT: f64 = 1.0 - 1e-6;

/// Weight exponents that occur in the radius equations.
pub const SUPPORTED_WEIGHTS: [u32; 5] = [0, 1, 2, 3, 5];

// Eulerian polynomial coefficients, constant term first.
const EULERIAN_2: [f64; 2] = [1.0, 1.0];
const EULERIAN_3: [f64; 3] = [1.0, 4.0, 1.0];
const EULERIAN_5: [f64; 5] = [1.0, 26.0, 66.0, 26.0, 1.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedGeometricSeries {
    weight: u32,
    start: u64,
    x: f64,
}

impl WeightedGeometricSeries {
    /// Builds `Σ_{n≥start} n^weight xⁿ`, checking `weight ∈ {0,1,2,3,5}`,
    /// `start ≥ 1` and `0 ≤ x < 1`.
    pub fn new(weight: u32, start: u64, x: f64) -> Result<Self> {
        if !SUPPORTED_WEIGHTS.contains(&weight) {
            return Err(Error::invalid(format!(
                "weight exponent {weight} not in {{0,1,2,3,5}}"
            )));
        }
        if start == 0 {
            return Err(Error::invalid("start index must be at least 1"));
        }
        if !(0.0..1.0).contains(&x) {
            return Err(Error::Domain {
                value: x,
                domain: "[0, 1)",
            });
        }
        Ok(Self { weight, start, x })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn argument(&self) -> f64 {
        self.x
    }

    /// Whether a rational closed form is implemented for this `(α, N)`.
    pub fn has_closed_form(&self) -> bool {
        matches!((self.weight, self.start), (0 | 1, _) | (2 | 3 | 5, 1 | 2))
    }

    /// Value of the infinite series via its rational closed form, evaluated
    /// in double-double arithmetic and rounded once.
    pub fn closed_sum(&self) -> Result<f64> {
        if !self.has_closed_form() {
            return Err(Error::invalid(format!(
                "no closed form for weight {} starting at n = {}",
                self.weight, self.start
            )));
        }
        let x = self.x;
        if x > MAX_ARGUMENT {
            return Err(Error::Domain {
                value: x,
                domain: "[0, 1 - 1e-6]",
            });
        }
        let x = TwoFloat::from(x);
        let q = 1.0 - x;
        let value = match self.weight {
            0 => dd_div(x.powi(self.start as i32), q),
            1 => {
                let n = self.start as f64;
                dd_div(x.powi(self.start as i32) * (n + x - n * x), q * q)
            }
            alpha => {
                let eulerian: &[f64] = match alpha {
                    2 => &EULERIAN_2,
                    3 => &EULERIAN_3,
                    _ => &EULERIAN_5,
                };
                let full = dd_div(x * horner(eulerian, x), q.powi(alpha as i32 + 1));
                // n = 1 term of Σ n^α xⁿ is x itself.
                if self.start == 2 {
                    full - x
                } else {
                    full
                }
            }
        };
        let value = f64::from(value);
        Ok(value)
    }

    /// `Σ_{n=N}^{K} n^α xⁿ` by direct accumulation in double-double
    /// arithmetic, rounded once.
    pub fn partial_sum(&self, cutoff: u64) -> Result<f64> {
        if cutoff < self.start {
            return Err(Error::invalid(format!(
                "cutoff {cutoff} below start index {}",
                self.start
            )));
        }
        let x = TwoFloat::from(self.x);
        let mut power = x.powi(self.start as i32);
        let mut acc = TwoFloat::from(0.0);
        for n in self.start..=cutoff {
            if power.hi() == 0.0 {
                // xⁿ underflowed; every later term is zero as well.
                break;
            }
            acc += power * TwoFloat::from(n as f64).powi(self.weight as i32);
            power *= x;
        }
        Ok(f64::from(acc))
    }

    /// Upper bound on `Σ_{n>K} n^α xⁿ`.
    ///
    /// For `n > K` consecutive terms have ratio `x(1+1/n)^α ≤ x(1+1/(K+1))^α`,
    /// so the tail is dominated by a geometric series starting at the
    /// `(K+1)`-th term.
    pub fn tail_bound(&self, cutoff: u64) -> Result<f64> {
        if cutoff < self.start {
            return Err(Error::invalid(format!(
                "cutoff {cutoff} below start index {}",
                self.start
            )));
        }
        let next = (cutoff + 1) as f64;
        let ratio = self.x * (1.0 + 1.0 / next).powi(self.weight as i32);
        if ratio >= 1.0 {
            return Err(Error::BoundUnavailable { cutoff, ratio });
        }
        Ok(self.term(cutoff + 1) / (1.0 - ratio))
    }

    /// Smallest cutoff of the form `max(N, 8)·2ʲ` whose tail bound is at
    /// most `target`. Returns the cutoff and its bound.
    pub fn adaptive_cutoff(&self, target: f64) -> Result<(u64, f64)> {
        if !(target > 0.0) {
            return Err(Error::invalid("tail target must be positive"));
        }
        let mut cutoff = self.start.max(8);
        while cutoff <= 1 << 24 {
            if let Ok(bound) = self.tail_bound(cutoff) {
                if bound <= target {
                    return Ok((cutoff, bound));
                }
            }
            cutoff *= 2;
        }
        Err(Error::invalid(format!(
            "no cutoff below 2^24 reaches tail bound {target:e}"
        )))
    }

    fn term(&self, n: u64) -> f64 {
        (n as f64).powi(self.weight as i32) * self.x.powi(n as i32)
    }
}

/// Shorthand for `WeightedGeometricSeries::new(weight, start, x)?.closed_sum()`.
pub fn closed_sum(weight: u32, start: u64, x: f64) -> Result<f64> {
    WeightedGeometricSeries::new(weight, start, x)?.closed_sum()
}

fn horner(coeffs: &[f64], x: TwoFloat) -> TwoFloat {
    coeffs
        .iter()
        .rev()
        .fold(TwoFloat::from(0.0), |acc, &c| acc * x + c)
}

/// Double-double quotient by three rounds of long division. Each partial
/// quotient is an f64 estimate and the remainder is formed exactly.
fn dd_div(num: TwoFloat, den: TwoFloat) -> TwoFloat {
    let q1 = num.hi() / den.hi();
    let rem = num - den * q1;
    let q2 = rem.hi() / den.hi();
    let rem = rem - den * q2;
    let q3 = rem.hi() / den.hi();
    TwoFloat::from(q1) + q2 + q3
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub(crate) fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}
