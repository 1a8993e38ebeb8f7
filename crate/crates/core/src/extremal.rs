//! Extremal maps, harmonic differential operators and the area functional.
//!
//! A harmonic map `f = h + ḡ` normalized by `h(0) = g(0) = 0`, `h′(0) = 1`,
//! `g′(0) = 0` is stored through its coefficient sequences `(aₙ)`, `(bₙ)`.
//! The operators act diagonally on coefficients:
//!
//! | operator | on `aₙ`      | on `b̄ₙ`       |
//! |----------|--------------|---------------|
//! | `f`      | `1`          | `1`           |
//! | `Df`     | `n`          | `−n`          |
//! | `𝒟f`     | `n`          | `n`           |
//! | `D²f`    | `n²`         | `−n²`         |
//! | `𝒟²f`    | `n²`         | `n²`          |
//! | `F_λ`    | `(1−λ)+λn`   | `(1−λ)−λn`    |

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::problems::check_radius;
use crate::series::NeumaierSum;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum OperatorKind {
    Identity,
    D,
    Dscript,
    D2,
    Dscript2,
    /// `(1−λ)f + λDf`, `λ ∈ [0, 1]`.
    Flambda(f64),
}

impl OperatorKind {
    /// Multiplier applied to `aₙ`; also the majorant weight on `|aₙ| + |bₙ|`.
    pub fn weight(self, n: u64) -> f64 {
        let n = n as f64;
        match self {
            OperatorKind::Identity => 1.0,
            OperatorKind::D | OperatorKind::Dscript => n,
            OperatorKind::D2 | OperatorKind::Dscript2 => n * n,
            OperatorKind::Flambda(lambda) => (1.0 - lambda) + lambda * n,
        }
    }

    /// Multiplier applied to `bₙ` inside the conjugated part.
    pub fn conjugate_weight(self, n: u64) -> f64 {
        let nf = n as f64;
        match self {
            OperatorKind::Identity => 1.0,
            OperatorKind::D => -nf,
            OperatorKind::Dscript => nf,
            OperatorKind::D2 => -nf * nf,
            OperatorKind::Dscript2 => nf * nf,
            OperatorKind::Flambda(lambda) => (1.0 - lambda) - lambda * nf,
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            OperatorKind::Flambda(lambda) if !(0.0..=1.0).contains(&lambda) => {
                Err(Error::invalid(format!("lambda = {lambda} not in [0, 1]")))
            }
            _ => Ok(()),
        }
    }
}

/// Maps attaining the coefficient bounds: the Koebe function for the stable
/// univalent class, the half-plane map for the stable convex class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ExtremalMap {
    /// `k(z) = z/(1−z)² = Σ n zⁿ`.
    Koebe,
    /// `ℓ(z) = z/(1−z) = Σ zⁿ`.
    HalfPlane,
}

impl ExtremalMap {
    pub fn value(self, r: f64) -> Result<f64> {
        check_radius(r)?;
        let q = 1.0 - r;
        Ok(match self {
            ExtremalMap::Koebe => r / (q * q),
            ExtremalMap::HalfPlane => r / q,
        })
    }

    fn derivatives(self, r: f64) -> (f64, f64) {
        let q = 1.0 - r;
        match self {
            ExtremalMap::Koebe => ((1.0 + r) / q.powi(3), (4.0 + 2.0 * r) / q.powi(4)),
            ExtremalMap::HalfPlane => (1.0 / (q * q), 2.0 / q.powi(3)),
        }
    }

    /// Operator applied to the map at the real point `r`. Both maps have
    /// nonnegative coefficients and `bₙ = 0`, so this is also the modulus
    /// and the majorant of the operator.
    pub fn apply(self, op: OperatorKind, r: f64) -> Result<f64> {
        op.validate()?;
        let f = self.value(r)?;
        let (d1, d2) = self.derivatives(r);
        let zf = r * d1;
        Ok(match op {
            OperatorKind::Identity => f,
            OperatorKind::D | OperatorKind::Dscript => zf,
            // z(zf′)′ = zf′ + z²f″
            OperatorKind::D2 | OperatorKind::Dscript2 => zf + r * r * d2,
            OperatorKind::Flambda(lambda) => (1.0 - lambda) * f + lambda * zf,
        })
    }

    /// `M_f(r) = Σ (|aₙ| + |bₙ|) rⁿ`, equal to `f(r)` here.
    pub fn majorant(self, r: f64) -> Result<f64> {
        self.value(r)
    }

    /// `Σ_{n≥N} (|aₙ| + |bₙ|) rⁿ`.
    pub fn majorant_tail(self, start: u64, r: f64) -> Result<f64> {
        let mut head = 0.0;
        let mut power = 1.0;
        for n in 1..start {
            power *= r;
            head += self.coefficient(n) * power;
        }
        Ok(self.value(r)? - head)
    }

    /// `Σ n³ (|aₙ|² − |bₙ|²) r²ⁿ` in closed form.
    pub fn area_ratio(self, r: f64) -> Result<f64> {
        check_radius(r)?;
        let r2 = r * r;
        let q = 1.0 - r2;
        Ok(match self {
            ExtremalMap::Koebe => {
                let (r4, r6, r8, r10) = (r2 * r2, r2.powi(3), r2.powi(4), r2.powi(5));
                (r2 + 26.0 * r4 + 66.0 * r6 + 26.0 * r8 + r10) / q.powi(6)
            }
            ExtremalMap::HalfPlane => r2 * (1.0 + 4.0 * r2 + r2 * r2) / q.powi(4),
        })
    }

    pub fn coefficient(self, n: u64) -> f64 {
        match self {
            ExtremalMap::Koebe => n as f64,
            ExtremalMap::HalfPlane => 1.0,
        }
    }

    pub fn coefficients(self) -> HarmonicCoefficientMap {
        let (rule, label) = match self {
            ExtremalMap::Koebe => (CoefficientRule::Koebe, "koebe"),
            ExtremalMap::HalfPlane => (CoefficientRule::HalfPlane, "half-plane"),
        };
        HarmonicCoefficientMap {
            rule,
            label: label.to_string(),
        }
    }
}

pub fn koebe_value(r: f64) -> Result<f64> {
    ExtremalMap::Koebe.value(r)
}

pub fn halfplane_value(r: f64) -> Result<f64> {
    ExtremalMap::HalfPlane.value(r)
}

#[derive(Debug, Clone, PartialEq)]
enum CoefficientRule {
    Koebe,
    HalfPlane,
    /// `a[n-1] = aₙ`, `b[n-1] = bₙ`; zero beyond the stored length.
    Explicit {
        a: Vec<Complex64>,
        b: Vec<Complex64>,
    },
}

/// Coefficient sequences of `f = z + Σ_{n≥2} aₙzⁿ + conj(Σ_{n≥2} bₙzⁿ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicCoefficientMap {
    rule: CoefficientRule,
    label: String,
}

impl HarmonicCoefficientMap {
    /// `a` and `b` start at `n = 1` and must satisfy `a₁ = 1`, `b₁ = 0`.
    pub fn explicit(
        a: Vec<Complex64>,
        b: Vec<Complex64>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if a.first() != Some(&Complex64::new(1.0, 0.0)) {
            return Err(Error::invalid("normalization requires a₁ = 1"));
        }
        if b.first().is_some_and(|b1| *b1 != Complex64::new(0.0, 0.0)) {
            return Err(Error::invalid("normalization requires b₁ = 0"));
        }
        if a.iter()
            .chain(&b)
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::invalid("coefficients must be finite"));
        }
        Ok(Self {
            rule: CoefficientRule::Explicit { a, b },
            label: label.into(),
        })
    }

    /// `f(z) = z`.
    pub fn identity() -> Self {
        Self {
            rule: CoefficientRule::Explicit {
                a: vec![Complex64::new(1.0, 0.0)],
                b: Vec::new(),
            },
            label: "identity".to_string(),
        }
    }

    pub fn koebe() -> Self {
        ExtremalMap::Koebe.coefficients()
    }

    pub fn half_plane() -> Self {
        ExtremalMap::HalfPlane.coefficients()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn a(&self, n: u64) -> Complex64 {
        match &self.rule {
            CoefficientRule::Koebe => Complex64::new(n as f64, 0.0),
            CoefficientRule::HalfPlane => Complex64::new(1.0, 0.0),
            CoefficientRule::Explicit { a, .. } => lookup(a, n),
        }
    }

    pub fn b(&self, n: u64) -> Complex64 {
        match &self.rule {
            CoefficientRule::Koebe | CoefficientRule::HalfPlane => Complex64::new(0.0, 0.0),
            CoefficientRule::Explicit { b, .. } => lookup(b, n),
        }
    }

    /// `|aₙ| + |bₙ|`.
    pub fn abs_sum(&self, n: u64) -> f64 {
        self.a(n).norm() + self.b(n).norm()
    }

    /// `(op f)(z)` with both series truncated at `n = cutoff`.
    pub fn apply_operator(&self, op: OperatorKind, z: Complex64, cutoff: u64) -> Complex64 {
        let mut analytic = Complex64::new(0.0, 0.0);
        let mut co_analytic = Complex64::new(0.0, 0.0);
        let mut power = Complex64::new(1.0, 0.0);
        for n in 1..=cutoff {
            power *= z;
            analytic += op.weight(n) * self.a(n) * power;
            co_analytic += op.conjugate_weight(n) * self.b(n) * power;
        }
        analytic + co_analytic.conj()
    }

    /// `M(r) = r + Σ_{n=2}^{K} (|aₙ| + |bₙ|) rⁿ` with the operator weights.
    pub fn truncated_majorant(&self, op: OperatorKind, r: f64, cutoff: u64, start: u64) -> f64 {
        let mut acc = NeumaierSum::default();
        let mut power = 1.0;
        for n in 1..=cutoff {
            power *= r;
            if n >= start {
                acc.add(op.weight(n) * self.abs_sum(n) * power);
            }
        }
        acc.total()
    }
}

fn lookup(values: &[Complex64], n: u64) -> Complex64 {
    values
        .get((n - 1) as usize)
        .copied()
        .unwrap_or(Complex64::new(0.0, 0.0))
}

/// `r + Σ_{n=2}^{K} w(n)(|aₙ| + |bₙ|) rⁿ` for the operator's weight `w`.
pub fn operator_majorant(
    map: &HarmonicCoefficientMap,
    op: OperatorKind,
    r: f64,
    cutoff: u64,
) -> Result<f64> {
    check_radius(r)?;
    op.validate()?;
    if cutoff < 2 {
        return Err(Error::invalid("majorant cutoff must be at least 2"));
    }
    Ok(map.truncated_majorant(op, r, cutoff, 1))
}

/// Parseval form of the normalized area functional,
/// `Σ_{n=1}^{K} n³ (|aₙ|² − |bₙ|²) r²ⁿ`.
pub fn area_ratio_series(map: &HarmonicCoefficientMap, r: f64, cutoff: u64) -> Result<f64> {
    check_radius(r)?;
    let r2 = r * r;
    let mut acc = NeumaierSum::default();
    let mut power = 1.0;
    for n in 1..=cutoff {
        power *= r2;
        let n3 = (n as f64).powi(3);
        acc.add(n3 * (map.a(n).norm_sqr() - map.b(n).norm_sqr()) * power);
    }
    Ok(acc.total())
}

/// Result of [`area_ratio_quadrature`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaQuadrature {
    /// Richardson-extrapolated midpoint value at the requested grid.
    pub value: f64,
    /// Plain midpoint rule at the requested grid.
    pub midpoint: f64,
    /// Extrapolated value at half the grid.
    pub previous: f64,
    /// `|value − previous| ≤ 1e−4`; false means the grid is too coarse.
    pub converged: bool,
}

/// Threshold on successive refinements before the quadrature is flagged.
pub const AREA_REFINEMENT_THRESHOLD: f64 = 1e-4;

/// `(1/π)∬_{|z|<r} (|H′|² − |G′|²) dA` for the dilated pair
/// `H = Σ n aₙ zⁿ`, `G = Σ n bₙ zⁿ` (truncated at `K`), whose Parseval
/// expansion carries the weight `n³`.
///
/// The disk is sampled on a tensor grid of `grid` radial by `4·grid`
/// angular midpoints. The angular rule is exact for the trigonometric
/// polynomials involved once `4·grid > 2K`; the radial midpoint error is
/// `O(h²)` and is removed by one Richardson step against the half grid.
pub fn area_ratio_quadrature(
    map: &HarmonicCoefficientMap,
    r: f64,
    cutoff: u64,
    grid: usize,
) -> Result<AreaQuadrature> {
    check_radius(r)?;
    if grid < 64 {
        return Err(Error::invalid(format!("quadrature grid {grid} below 64")));
    }
    let fine = midpoint_area_ratio(map, r, cutoff, grid)?;
    let half = midpoint_area_ratio(map, r, cutoff, grid / 2)?;
    let quarter = midpoint_area_ratio(map, r, cutoff, grid / 4)?;
    let value = (4.0 * fine - half) / 3.0;
    let previous = (4.0 * half - quarter) / 3.0;
    Ok(AreaQuadrature {
        value,
        midpoint: fine,
        previous,
        converged: (value - previous).abs() <= AREA_REFINEMENT_THRESHOLD,
    })
}

/// Plain tensor-product midpoint rule behind [`area_ratio_quadrature`].
pub fn midpoint_area_ratio(
    map: &HarmonicCoefficientMap,
    r: f64,
    cutoff: u64,
    grid: usize,
) -> Result<f64> {
    check_radius(r)?;
    if grid == 0 {
        return Err(Error::invalid("quadrature grid must be positive"));
    }
    // Derivative coefficients of the dilated pair: (n·aₙ zⁿ)′ = n²aₙ zⁿ⁻¹.
    let dh: Vec<Complex64> = (1..=cutoff).map(|n| (n * n) as f64 * map.a(n)).collect();
    let dg: Vec<Complex64> = (1..=cutoff).map(|n| (n * n) as f64 * map.b(n)).collect();
    let has_g = dg.iter().any(|c| c.norm_sqr() > 0.0);

    let dr = r / grid as f64;
    let angles = 4 * grid;
    let dtheta = std::f64::consts::TAU / angles as f64;
    let rotations: Vec<Complex64> = (0..angles)
        .map(|j| Complex64::from_polar(1.0, (j as f64 + 0.5) * dtheta))
        .collect();

    // One partial sum per radial band, reduced in band order so the result
    // does not depend on how rayon splits the work.
    let bands: Vec<f64> = (0..grid)
        .into_par_iter()
        .map(|i| {
            let rho = (i as f64 + 0.5) * dr;
            let mut band = 0.0;
            for rot in &rotations {
                let z = rho * rot;
                let mut jac = horner(&dh, z).norm_sqr();
                if has_g {
                    jac -= horner(&dg, z).norm_sqr();
                }
                band += jac;
            }
            band * rho
        })
        .collect();
    let mut acc = NeumaierSum::default();
    for band in bands {
        acc.add(band);
    }
    Ok(acc.total() * dr * dtheta / std::f64::consts::PI)
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}
