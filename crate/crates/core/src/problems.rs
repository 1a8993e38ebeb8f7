//! The nine radius problems as gap functions `G(r) = L(r) − d₀`.
//!
//! `L(r)` is the worst-case left-hand side of a Bohr-type inequality over
//! a mapping class when every Schwarz function is replaced by its modulus
//! bound `|ω_j(z)| ≤ |z|^j`, and `d₀` is the distance floor (or the
//! constant 1 for the power-type inequalities). Each `G` is negative at
//! the origin, strictly increasing and unbounded at 1, so it has exactly
//! one zero in `(0, 1)`: the Bohr radius.

use std::fmt;
use std::str::FromStr;

use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal::{ExtremalMap, OperatorKind};
use crate::series::{closed_sum, MAX_ARGUMENT};

/// Stable harmonic mapping classes and their sharp coefficient data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MappingClass {
    /// Stable harmonic univalent: `|aₙ| + |bₙ| ≤ n`, image contains the disk of radius 1/4.
    StableUnivalent,
    /// Stable harmonic convex: `|aₙ| + |bₙ| ≤ 1`, image contains the disk of radius 1/2.
    StableConvex,
}

impl MappingClass {
    pub fn coeff_bound(self, n: u64) -> f64 {
        match self {
            MappingClass::StableUnivalent => n as f64,
            MappingClass::StableConvex => 1.0,
        }
    }

    pub fn distance_floor(self) -> f64 {
        match self {
            MappingClass::StableUnivalent => 0.25,
            MappingClass::StableConvex => 0.5,
        }
    }

    pub fn extremal(self) -> ExtremalMap {
        match self {
            MappingClass::StableUnivalent => ExtremalMap::Koebe,
            MappingClass::StableConvex => ExtremalMap::HalfPlane,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            MappingClass::StableUnivalent => "SHU",
            MappingClass::StableConvex => "SHC",
        }
    }
}

/// Polynomial `P(t) = Σ_{i=1}^{k} aᵢ tⁱ` with nonnegative coefficients and
/// no constant term.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonnegPolynomial {
    coefficients: Vec<f64>,
}

impl NonnegPolynomial {
    /// `coefficients[i]` multiplies `t^{i+1}`.
    pub fn new(coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::invalid("polynomial needs at least one coefficient"));
        }
        if let Some(c) = coefficients.iter().find(|c| !(c.is_finite() && **c >= 0.0)) {
            return Err(Error::invalid(format!(
                "polynomial coefficient {c} is not a finite nonnegative number"
            )));
        }
        if coefficients.iter().all(|&c| c == 0.0) {
            return Err(Error::invalid(
                "polynomial must have a positive coefficient",
            ));
        }
        Ok(Self { coefficients })
    }

    /// `P(t) = t`.
    pub fn identity() -> Self {
        Self {
            coefficients: vec![1.0],
        }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len()
    }

    pub fn eval(&self, t: f64) -> f64 {
        t * self
            .coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * t + c)
    }
}

impl fmt::Display for NonnegPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// The operators `D` and `𝒟` share every majorant bound; the flavor only
/// labels results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub enum OperatorFlavor {
    #[default]
    D,
    Dscript,
}

impl OperatorFlavor {
    pub fn first_order(self) -> OperatorKind {
        match self {
            OperatorFlavor::D => OperatorKind::D,
            OperatorFlavor::Dscript => OperatorKind::Dscript,
        }
    }

    pub fn second_order(self) -> OperatorKind {
        match self {
            OperatorFlavor::D => OperatorKind::D2,
            OperatorFlavor::Dscript => OperatorKind::Dscript2,
        }
    }
}

/// Problem identifiers, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ProblemId {
    T31,
    T32,
    T33,
    T34,
    T41,
    T42,
    T43,
    T44,
    T51,
}

impl ProblemId {
    pub const ALL: [ProblemId; 9] = [
        ProblemId::T31,
        ProblemId::T32,
        ProblemId::T33,
        ProblemId::T34,
        ProblemId::T41,
        ProblemId::T42,
        ProblemId::T43,
        ProblemId::T44,
        ProblemId::T51,
    ];

    /// Parameter names accepted by [`ProblemSpec::from_params`].
    pub fn parameter_names(self) -> &'static [&'static str] {
        match self {
            ProblemId::T31 | ProblemId::T32 => &["m", "p"],
            ProblemId::T33 | ProblemId::T34 => &["s", "m", "p", "q"],
            ProblemId::T41 | ProblemId::T42 => &["m", "lambda"],
            ProblemId::T43 | ProblemId::T44 => &["m", "p", "N"],
            ProblemId::T51 => &["m", "poly"],
        }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProblemId::ALL
            .into_iter()
            .find(|id| id.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid(format!("unknown problem `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Problem {
    /// `|Df(ω_m)| + M_f(|ω_p|) ≤ d` on SHU.
    T31 { m: u32, p: u32 },
    /// `|Df(ω_m)| + M_f(|ω_p|) ≤ d` on SHC.
    T32 { m: u32, p: u32 },
    /// `|Df(ω_m)|^s + |f(ω_q)|^p ≤ 1` on SHU.
    T33 { s: u32, m: u32, p: u32, q: u32 },
    /// `|Df(ω_m)|^s + |f(ω_q)|^p ≤ 1` on SHC.
    T34 { s: u32, m: u32, p: u32, q: u32 },
    /// `|(1−λ)f(ω_m) + λDf(ω_m)| ≤ d` on SHU.
    T41 { m: u32, lambda: f64 },
    /// `|(1−λ)f(ω_m) + λDf(ω_m)| ≤ d` on SHC.
    T42 { m: u32, lambda: f64 },
    /// `|D²f(ω_m)| + Σ_{n≥N}(|aₙ|+|bₙ|)|ω_p|ⁿ ≤ d` on SHU.
    T43 { m: u32, p: u32, n_start: u32 },
    /// `|D²f(ω_m)| + Σ_{n≥N}(|aₙ|+|bₙ|)|ω_p|ⁿ ≤ d` on SHC.
    T44 { m: u32, p: u32, n_start: u32 },
    /// `M_f(|ω_m|) + P(S_r/π) ≤ d` on SHU.
    T51 { m: u32, poly: NonnegPolynomial },
}

/// Serializes as `{"id", "flavor", "params"}` with typed parameter values.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub problem: Problem,
    pub flavor: OperatorFlavor,
}

#[derive(Serialize)]
#[serde(untagged)]
enum ParamValue<'a> {
    Order(u32),
    Real(f64),
    Poly(&'a [f64]),
}

struct ParamMap<'a>(&'a ProblemSpec);

impl Serialize for ParamMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let params = self.0.typed_params();
        let mut map = serializer.serialize_map(Some(params.len()))?;
        for (name, value) in &params {
            map.serialize_entry(name, value)?;
        }
        map.end()
    }
}

impl Serialize for ProblemSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ProblemSpec", 3)?;
        st.serialize_field("id", &self.id())?;
        st.serialize_field("flavor", &self.flavor)?;
        st.serialize_field("params", &ParamMap(self))?;
        st.end()
    }
}

/// Default lower summation index in T43/T44.
pub const DEFAULT_N_START: u32 = 2;

impl ProblemSpec {
    /// Wraps a problem with the `D` flavor after validating its parameters.
    pub fn new(problem: Problem) -> Result<Self> {
        let spec = Self {
            problem,
            flavor: OperatorFlavor::D,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_flavor(mut self, flavor: OperatorFlavor) -> Self {
        self.flavor = flavor;
        self
    }

    pub fn t31(m: u32, p: u32) -> Result<Self> {
        Self::new(Problem::T31 { m, p })
    }

    pub fn t32(m: u32, p: u32) -> Result<Self> {
        Self::new(Problem::T32 { m, p })
    }

    pub fn t33(s: u32, m: u32, p: u32, q: u32) -> Result<Self> {
        Self::new(Problem::T33 { s, m, p, q })
    }

    pub fn t34(s: u32, m: u32, p: u32, q: u32) -> Result<Self> {
        Self::new(Problem::T34 { s, m, p, q })
    }

    pub fn t41(m: u32, lambda: f64) -> Result<Self> {
        Self::new(Problem::T41 { m, lambda })
    }

    pub fn t42(m: u32, lambda: f64) -> Result<Self> {
        Self::new(Problem::T42 { m, lambda })
    }

    pub fn t43(m: u32, p: u32, n_start: u32) -> Result<Self> {
        Self::new(Problem::T43 { m, p, n_start })
    }

    pub fn t44(m: u32, p: u32, n_start: u32) -> Result<Self> {
        Self::new(Problem::T44 { m, p, n_start })
    }

    pub fn t51(m: u32, poly: NonnegPolynomial) -> Result<Self> {
        Self::new(Problem::T51 { m, poly })
    }

    pub fn validate(&self) -> Result<()> {
        let orders: &[(&str, u32)] = match &self.problem {
            Problem::T31 { m, p } | Problem::T32 { m, p } => &[("m", *m), ("p", *p)],
            Problem::T33 { s, m, p, q } | Problem::T34 { s, m, p, q } => {
                &[("s", *s), ("m", *m), ("p", *p), ("q", *q)]
            }
            Problem::T41 { m, lambda } | Problem::T42 { m, lambda } => {
                if !(0.0..=1.0).contains(lambda) {
                    return Err(Error::invalid(format!("lambda = {lambda} not in [0, 1]")));
                }
                &[("m", *m)]
            }
            Problem::T43 { m, p, n_start } | Problem::T44 { m, p, n_start } => {
                if *n_start < 2 {
                    return Err(Error::invalid(format!("N = {n_start} must be at least 2")));
                }
                &[("m", *m), ("p", *p)]
            }
            Problem::T51 { m, .. } => &[("m", *m)],
        };
        // Large orders make r^m underflow long before r reaches 1.
        for (name, value) in orders {
            if !(1..=64).contains(value) {
                return Err(Error::invalid(format!(
                    "{name} = {value} must be in 1..=64"
                )));
            }
        }
        Ok(())
    }

    pub fn id(&self) -> ProblemId {
        match self.problem {
            Problem::T31 { .. } => ProblemId::T31,
            Problem::T32 { .. } => ProblemId::T32,
            Problem::T33 { .. } => ProblemId::T33,
            Problem::T34 { .. } => ProblemId::T34,
            Problem::T41 { .. } => ProblemId::T41,
            Problem::T42 { .. } => ProblemId::T42,
            Problem::T43 { .. } => ProblemId::T43,
            Problem::T44 { .. } => ProblemId::T44,
            Problem::T51 { .. } => ProblemId::T51,
        }
    }

    pub fn class(&self) -> MappingClass {
        match self.id() {
            ProblemId::T31 | ProblemId::T33 | ProblemId::T41 | ProblemId::T43 | ProblemId::T51 => {
                MappingClass::StableUnivalent
            }
            _ => MappingClass::StableConvex,
        }
    }

    /// Right-hand side of the inequality: the distance floor, or 1 for the
    /// power-type problems.
    pub fn target(&self) -> f64 {
        match self.id() {
            ProblemId::T33 | ProblemId::T34 => 1.0,
            _ => self.class().distance_floor(),
        }
    }

    /// `(name, value)` pairs in the canonical parameter order.
    pub fn params(&self) -> Vec<(&'static str, String)> {
        match &self.problem {
            Problem::T31 { m, p } | Problem::T32 { m, p } => {
                vec![("m", m.to_string()), ("p", p.to_string())]
            }
            Problem::T33 { s, m, p, q } | Problem::T34 { s, m, p, q } => vec![
                ("s", s.to_string()),
                ("m", m.to_string()),
                ("p", p.to_string()),
                ("q", q.to_string()),
            ],
            Problem::T41 { m, lambda } | Problem::T42 { m, lambda } => {
                vec![("m", m.to_string()), ("lambda", lambda.to_string())]
            }
            Problem::T43 { m, p, n_start } | Problem::T44 { m, p, n_start } => vec![
                ("m", m.to_string()),
                ("p", p.to_string()),
                ("N", n_start.to_string()),
            ],
            Problem::T51 { m, poly } => vec![("m", m.to_string()), ("poly", poly.to_string())],
        }
    }

    fn typed_params(&self) -> Vec<(&'static str, ParamValue<'_>)> {
        use ParamValue::{Order, Poly, Real};
        match &self.problem {
            Problem::T31 { m, p } | Problem::T32 { m, p } => {
                vec![("m", Order(*m)), ("p", Order(*p))]
            }
            Problem::T33 { s, m, p, q } | Problem::T34 { s, m, p, q } => vec![
                ("s", Order(*s)),
                ("m", Order(*m)),
                ("p", Order(*p)),
                ("q", Order(*q)),
            ],
            Problem::T41 { m, lambda } | Problem::T42 { m, lambda } => {
                vec![("m", Order(*m)), ("lambda", Real(*lambda))]
            }
            Problem::T43 { m, p, n_start } | Problem::T44 { m, p, n_start } => {
                vec![("m", Order(*m)), ("p", Order(*p)), ("N", Order(*n_start))]
            }
            Problem::T51 { m, poly } => vec![("m", Order(*m)), ("poly", Poly(poly.coefficients()))],
        }
    }

    /// Builds a spec from `key=value` style pairs. `N` defaults to 2;
    /// every other parameter is required.
    pub fn from_params<K, V>(id: ProblemId, pairs: &[(K, V)]) -> Result<Self>
    where
        K: AsRef<str>,
        V: AsRef<str>,
    {
        let allowed = id.parameter_names();
        let mut values: Vec<Option<&str>> = vec![None; allowed.len()];
        for (key, value) in pairs {
            let key = canonical_key(key.as_ref());
            let slot = allowed
                .iter()
                .position(|name| *name == key)
                .ok_or_else(|| Error::invalid(format!("{id} does not take parameter `{key}`")))?;
            if values[slot].replace(value.as_ref()).is_some() {
                return Err(Error::invalid(format!("parameter `{key}` given twice")));
            }
        }
        let get = |name: &str| -> Option<&str> {
            allowed
                .iter()
                .position(|n| *n == name)
                .and_then(|i| values[i])
        };
        let order = |name: &str| -> Result<u32> {
            let raw = get(name)
                .ok_or_else(|| Error::invalid(format!("{id} requires parameter `{name}`")))?;
            raw.trim().parse::<u32>().map_err(|_| {
                Error::invalid(format!("`{name}` must be a positive integer, got `{raw}`"))
            })
        };
        let lambda = || -> Result<f64> {
            let raw = get("lambda")
                .ok_or_else(|| Error::invalid(format!("{id} requires parameter `lambda`")))?;
            raw.trim()
                .parse::<f64>()
                .map_err(|_| Error::invalid(format!("`lambda` must be a real number, got `{raw}`")))
        };
        let n_start = || -> Result<u32> {
            match get("N") {
                None => Ok(DEFAULT_N_START),
                Some(_) => order("N"),
            }
        };
        match id {
            ProblemId::T31 => Self::t31(order("m")?, order("p")?),
            ProblemId::T32 => Self::t32(order("m")?, order("p")?),
            ProblemId::T33 => Self::t33(order("s")?, order("m")?, order("p")?, order("q")?),
            ProblemId::T34 => Self::t34(order("s")?, order("m")?, order("p")?, order("q")?),
            ProblemId::T41 => Self::t41(order("m")?, lambda()?),
            ProblemId::T42 => Self::t42(order("m")?, lambda()?),
            ProblemId::T43 => Self::t43(order("m")?, order("p")?, n_start()?),
            ProblemId::T44 => Self::t44(order("m")?, order("p")?, n_start()?),
            ProblemId::T51 => {
                let raw =
                    get("poly").ok_or_else(|| Error::invalid("T51 requires parameter `poly`"))?;
                Self::t51(order("m")?, parse_polynomial(raw)?)
            }
        }
    }

    /// Gap function `G(r) = L(r) − target`.
    pub fn evaluate_g(&self, r: f64) -> Result<f64> {
        Ok(self.lhs_class_bound(r)? - self.target())
    }

    /// Worst-case left-hand side over the mapping class, assembled from the
    /// weighted geometric series closed forms.
    pub fn lhs_class_bound(&self, r: f64) -> Result<f64> {
        check_radius(r)?;
        let s = |weight: u32, start: u64, x: f64| closed_sum(weight, start, x);
        let value = match &self.problem {
            Problem::T31 { m, p } => {
                let (x, y) = (r.powi(*m as i32), r.powi(*p as i32));
                x + s(2, 2, x)? + y + s(1, 2, y)?
            }
            Problem::T32 { m, p } => {
                let (x, y) = (r.powi(*m as i32), r.powi(*p as i32));
                x + s(1, 2, x)? + y + s(0, 2, y)?
            }
            Problem::T33 { s: ps, m, p, q } => {
                let (x, y) = (r.powi(*m as i32), r.powi(*q as i32));
                s(2, 1, x)?.powi(*ps as i32) + s(1, 1, y)?.powi(*p as i32)
            }
            Problem::T34 { s: ps, m, p, q } => {
                let (x, y) = (r.powi(*m as i32), r.powi(*q as i32));
                s(1, 1, x)?.powi(*ps as i32) + s(0, 1, y)?.powi(*p as i32)
            }
            Problem::T41 { m, lambda } => {
                let x = r.powi(*m as i32);
                (1.0 - lambda) * s(0, 1, x)? + lambda * s(2, 1, x)?
            }
            Problem::T42 { m, lambda } => {
                let x = r.powi(*m as i32);
                (1.0 - lambda) * s(0, 1, x)? + lambda * s(1, 1, x)?
            }
            Problem::T43 { m, p, n_start } => {
                let (x, y) = (r.powi(*m as i32), r.powi(*p as i32));
                s(3, 1, x)? + s(1, *n_start as u64, y)?
            }
            Problem::T44 { m, p, n_start } => {
                let (x, y) = (r.powi(*m as i32), r.powi(*p as i32));
                s(2, 1, x)? + s(0, *n_start as u64, y)?
            }
            Problem::T51 { m, poly } => {
                let x = r.powi(*m as i32);
                s(1, 1, x)? + poly.eval(s(5, 1, r * r)?)
            }
        };
        Ok(value)
    }

    /// Left-hand side evaluated on the class's extremal map (Koebe or
    /// half-plane) with `ω_j(z) = z^j`, computed from the maps' derivatives
    /// rather than from the series closed forms.
    pub fn lhs_extremal(&self, r: f64) -> Result<f64> {
        check_radius(r)?;
        let ext = self.class().extremal();
        let d1 = self.flavor.first_order();
        let value = match &self.problem {
            Problem::T31 { m, p } | Problem::T32 { m, p } => {
                let (x, y) = (r.powi(*m as i32), r.powi(*p as i32));
                ext.apply(d1, x)? + ext.majorant(y)?
            }
            Problem::T33 { s, m, p, q } | Problem::T34 { s, m, p, q } => {
                let (x, y) = (r.powi(*m as i32), r.powi(*q as i32));
                ext.apply(d1, x)?.powi(*s as i32) + ext.value(y)?.powi(*p as i32)
            }
            Problem::T41 { m, lambda } | Problem::T42 { m, lambda } => {
                let x = r.powi(*m as i32);
                ext.apply(OperatorKind::Flambda(*lambda), x)?
            }
            Problem::T43 { m, p, n_start } | Problem::T44 { m, p, n_start } => {
                let (x, y) = (r.powi(*m as i32), r.powi(*p as i32));
                ext.apply(self.flavor.second_order(), x)? + ext.majorant_tail(*n_start as u64, y)?
            }
            Problem::T51 { m, poly } => {
                let x = r.powi(*m as i32);
                ext.majorant(x)? + poly.eval(ext.area_ratio(r)?)
            }
        };
        Ok(value)
    }

    /// `(lhs_class_bound, lhs_extremal)` at `r`. The two agree for every
    /// problem except T41, whose class bound uses the convex growth estimate
    /// `|f| ≤ r/(1−r)` while the Koebe map grows like `r/(1−r)²`.
    pub fn lhs_pair(&self, r: f64) -> Result<(f64, f64)> {
        Ok((self.lhs_class_bound(r)?, self.lhs_extremal(r)?))
    }

    /// T41 is the only problem whose sharpness claim the extremal map does
    /// not reproduce.
    pub fn sharpness_is_advisory(&self) -> bool {
        self.id() == ProblemId::T41
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())?;
        for (name, value) in self.params() {
            write!(f, " {name}={value}")?;
        }
        Ok(())
    }
}

fn canonical_key(key: &str) -> &str {
    match key.trim() {
        "n" | "N" => "N",
        "λ" | "lambda" | "l" => "lambda",
        other => other,
    }
}

/// Parses `a₁,a₂,…,a_k`. Empty entries are rejected.
pub fn parse_polynomial(raw: &str) -> Result<NonnegPolynomial> {
    let coefficients = raw
        .split(',')
        .map(|part| {
            let part = part.trim();
            if part.is_empty() {
                return Err(Error::invalid(format!("empty coefficient in `{raw}`")));
            }
            part.parse::<f64>()
                .map_err(|_| Error::invalid(format!("bad coefficient `{part}` in `{raw}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    NonnegPolynomial::new(coefficients)
}

pub(crate) fn check_radius(r: f64) -> Result<()> {
    if (0.0..=MAX_ARGUMENT).contains(&r) {
        Ok(())
    } else {
        Err(Error::Domain {
            value: r,
            domain: "[0, 1 - 1e-6]",
        })
    }
}
