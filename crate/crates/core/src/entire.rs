//! Truncated entire functions `f = Σ f_m`, their order and type, and Fischer
//! decomposition of such series degree by degree.

use std::collections::BTreeMap;
use std::f64::consts::E;
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeff::{rational_ln, rational_to_f64, Coeff, Rational};
use crate::error::{Error, Result};
use crate::fischer::{series_layers, Certificate, FischerProblem};
use crate::poly::{HomogeneousPolynomial, MultiIndex, Polynomial};
use crate::sphere::{sup_norm_bound, sup_norm_estimate};

/// Named closed form a series was generated from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SeriesGenerator {
    /// `e^{x_v}`: parts `x_v^m/m!`.
    Exp { variable: usize },
    /// `Σ x_v^m/(m!)²`, order ½.
    FactorialSquared { variable: usize },
    /// `x₁^m·c_m` with `c_m` the nearest double to `m^{−m/ρ}`.
    Synthetic { rho: f64 },
    /// `sin(πx₁/a)·e^{πx₂/a}` in `d = 2`, with `π` replaced by a 20-digit
    /// rational so every part stays exactly harmonic.
    Strip { a: String },
}

impl SeriesGenerator {
    pub fn part(&self, dim: usize, m: u32) -> Result<HomogeneousPolynomial> {
        match self {
            SeriesGenerator::Exp { variable } => {
                check_variable(dim, *variable)?;
                let c = Rational::one() / factorial_rational(m);
                Ok(HomogeneousPolynomial::monomial(MultiIndex::unit(dim, *variable, m), Coeff::real(c)))
            }
            SeriesGenerator::FactorialSquared { variable } => {
                check_variable(dim, *variable)?;
                let f = factorial_rational(m);
                let c = Rational::one() / (&f * &f);
                Ok(HomogeneousPolynomial::monomial(MultiIndex::unit(dim, *variable, m), Coeff::real(c)))
            }
            SeriesGenerator::Synthetic { rho } => {
                if !(*rho > 0.0 && rho.is_finite()) {
                    return Err(Error::InvalidProblem(format!("synthetic order must be positive, got {rho}")));
                }
                let c = if m <= 1 { 1.0 } else { (-(m as f64) * (m as f64).ln() / rho).exp() };
                let c = Rational::from_float(c).ok_or_else(|| Error::InvalidProblem("coefficient underflow".into()))?;
                Ok(HomogeneousPolynomial::monomial(MultiIndex::unit(dim, 0, m), Coeff::real(c)))
            }
            SeriesGenerator::Strip { a } => {
                if dim != 2 {
                    return Err(Error::DimensionMismatch { left: 2, right: dim });
                }
                let a = crate::coeff::parse_rational(a)?;
                if !a.is_positive() {
                    return Err(Error::InvalidProblem("strip half-width must be positive".into()));
                }
                Ok(strip_part(&(crate::spectral::pi_upper() / a), m))
            }
        }
    }

    /// Float value of the closed form, where one is available.
    pub fn eval_closed_form(&self, x: &[f64]) -> Option<f64> {
        match self {
            SeriesGenerator::Exp { variable } => Some(x[*variable].exp()),
            SeriesGenerator::Strip { a } => {
                let a = rational_to_f64(&crate::coeff::parse_rational(a).ok()?);
                let s = std::f64::consts::PI / a;
                Some((s * x[0]).sin() * (s * x[1]).exp())
            }
            _ => None,
        }
    }
}

fn check_variable(dim: usize, v: usize) -> Result<()> {
    if v >= dim {
        return Err(Error::InvalidProblem(format!("variable index {v} out of range for dimension {dim}")));
    }
    Ok(())
}

fn factorial_rational(m: u32) -> Rational {
    Rational::from_integer(crate::poly::factorial(m).into())
}

/// `Im (s(x₂ + i x₁))^m / m!`, the degree-`m` part of `sin(s x₁)e^{s x₂}`.
fn strip_part(s: &Rational, m: u32) -> HomogeneousPolynomial {
    let w = HomogeneousPolynomial::var(2, 1)
        .add(&HomogeneousPolynomial::var(2, 0).scale(&Coeff::i()))
        .expect("d = 2");
    let scale = num_traits::pow(s.clone(), m as usize) / factorial_rational(m);
    let p = w.pow(m);
    let mut out = HomogeneousPolynomial::zero(2, m);
    for (alpha, c) in p.terms() {
        out.add_term(alpha.clone(), Coeff::real(&c.im * &scale));
    }
    out
}

/// `f^{(N)} = f₀ + ⋯ + f_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct EntireSeries {
    dim: usize,
    parts: Vec<HomogeneousPolynomial>,
    generator: Option<SeriesGenerator>,
}

impl EntireSeries {
    pub fn new(dim: usize, parts: Vec<HomogeneousPolynomial>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidProblem("a series needs at least the degree-0 part".into()));
        }
        for (m, p) in parts.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: p.dim() });
            }
            if !p.is_zero() && p.degree() != m as u32 {
                return Err(Error::DegreeMismatch { expected: m as u32, found: p.degree() });
            }
        }
        let parts = parts
            .into_iter()
            .enumerate()
            .map(|(m, p)| if p.is_zero() { HomogeneousPolynomial::zero(dim, m as u32) } else { p })
            .collect();
        Ok(EntireSeries { dim, parts, generator: None })
    }

    pub fn from_generator(dim: usize, generator: SeriesGenerator, truncation: u32) -> Result<Self> {
        let parts = (0..=truncation).map(|m| generator.part(dim, m)).collect::<Result<Vec<_>>>()?;
        let mut s = EntireSeries::new(dim, parts)?;
        s.generator = Some(generator);
        Ok(s)
    }

    pub fn exp(dim: usize, variable: usize, truncation: u32) -> Result<Self> {
        Self::from_generator(dim, SeriesGenerator::Exp { variable }, truncation)
    }

    /// Pads with zero parts up to `truncation` if `p` has lower degree.
    pub fn from_polynomial(p: &Polynomial, truncation: u32) -> Result<Self> {
        let top = p.degree().unwrap_or(0);
        if top > truncation {
            return Err(Error::InvalidProblem(format!(
                "polynomial of degree {top} exceeds truncation {truncation}"
            )));
        }
        EntireSeries::new(p.dim(), (0..=truncation).map(|m| p.part(m)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn truncation(&self) -> u32 {
        self.parts.len() as u32 - 1
    }

    pub fn parts(&self) -> &[HomogeneousPolynomial] {
        &self.parts
    }

    pub fn part(&self, m: u32) -> &HomogeneousPolynomial {
        &self.parts[m as usize]
    }

    pub fn generator(&self) -> Option<&SeriesGenerator> {
        self.generator.as_ref()
    }

    /// Re-truncates. Extending past the current truncation needs a generator.
    pub fn with_truncation(&self, truncation: u32) -> Result<Self> {
        if truncation <= self.truncation() {
            let mut s = self.clone();
            s.parts.truncate(truncation as usize + 1);
            return Ok(s);
        }
        match &self.generator {
            Some(g) => Self::from_generator(self.dim, g.clone(), truncation),
            None => Err(Error::InvalidProblem("cannot extend a series without a generator".into())),
        }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_parts(self.dim, self.parts.iter().cloned()).expect("parts share the dimension")
    }

    /// Whether every part above degree `N/2` vanishes.
    pub fn is_polynomial_tail(&self) -> bool {
        let n = self.truncation();
        self.parts[(n as usize).div_ceil(2)..].iter().all(HomogeneousPolynomial::is_zero)
    }

    /// Float value of the truncation, parts summed from low degree up.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut acc = crate::poly::Neumaier::default();
        for p in &self.parts {
            acc.add(p.eval(x).0);
        }
        acc.sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntireSeriesJson {
    dimension: usize,
    truncation: u32,
    parts: Vec<Polynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generator: Option<SeriesGenerator>,
}

impl Serialize for EntireSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EntireSeriesJson {
            dimension: self.dim,
            truncation: self.truncation(),
            parts: self.parts.iter().map(|p| p.clone().into()).collect(),
            generator: self.generator.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EntireSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = EntireSeriesJson::deserialize(d)?;
        if j.parts.len() != j.truncation as usize + 1 {
            return Err(D::Error::custom(format!(
                "truncation {} needs {} parts, found {}",
                j.truncation,
                j.truncation + 1,
                j.parts.len()
            )));
        }
        let mut parts = Vec::with_capacity(j.parts.len());
        for (m, p) in j.parts.iter().enumerate() {
            if p.dim() != j.dimension {
                return Err(D::Error::custom(format!("part {m} has dimension {}", p.dim())));
            }
            if p.graded_parts().keys().any(|&deg| deg != m as u32) {
                return Err(D::Error::custom(format!("part {m} is not homogeneous of degree {m}")));
            }
            parts.push(p.part(m as u32));
        }
        let mut s = EntireSeries::new(j.dimension, parts).map_err(D::Error::custom)?;
        s.generator = j.generator;
        Ok(s)
    }
}

/// How per-degree sup norms are obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NormSource {
    /// Maximum over the deterministic sphere samples.
    #[default]
    Sampled,
    /// The certified `L²`-to-sup bound; no sampling.
    Certified,
}

/// `ln ‖f‖_∞` on the sphere, robust to coefficients outside the double range:
/// `f` is divided by its largest coefficient before evaluation.
pub fn log_sup_norm(f: &HomogeneousPolynomial, source: NormSource) -> Option<f64> {
    if f.is_zero() {
        return None;
    }
    let (scale, ln_scale) = f
        .terms()
        .map(|(_, c)| {
            let a = if c.re.abs() >= c.im.abs() { c.re.abs() } else { c.im.abs() };
            let l = rational_ln(&a);
            (a, l)
        })
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonzero polynomial");
    let normalized = f.scale_rational(&(Rational::one() / scale));
    let norm = match source {
        NormSource::Sampled => sup_norm_estimate(&normalized).sampled,
        NormSource::Certified => sup_norm_bound(&normalized),
    };
    Some(norm.ln() + ln_scale)
}

/// Order and type estimates from the tail of a truncated series.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderTypeEstimate {
    pub order: f64,
    /// Only when `0 < ρ̂ < ∞` and the estimate is stable across the window.
    pub type_estimate: Option<f64>,
    /// `(m, ln ‖f_m‖_∞)` for nonzero parts.
    pub log_norms: Vec<(u32, f64)>,
    /// `(m, ln m / ln(‖f_m‖_∞^{−1/m}))` over the tail window, where defined.
    pub limsup_sequence: Vec<(u32, f64)>,
    /// Maximum of `limsup_sequence`.
    pub naive_order: f64,
    /// Tail window `[⌈N/2⌉, N]`.
    pub window: (u32, u32),
}

/// Minimum truncation for [`order_estimate`].
pub const MIN_TRUNCATION: u32 = 8;

pub fn order_estimate(f: &EntireSeries) -> Result<OrderTypeEstimate> {
    order_estimate_with(f, NormSource::Sampled)
}

pub fn order_estimate_with(f: &EntireSeries, source: NormSource) -> Result<OrderTypeEstimate> {
    let n = f.truncation();
    if n < MIN_TRUNCATION {
        return Err(Error::InvalidProblem(format!("order estimation needs N ≥ {MIN_TRUNCATION}, got {n}")));
    }
    let log_norms: Vec<(u32, f64)> = f
        .parts()
        .par_iter()
        .enumerate()
        .filter_map(|(m, p)| log_sup_norm(p, source).map(|l| (m as u32, l)))
        .collect();
    order_estimate_from_log_norms(&log_norms, n)
}

/// Core estimator on a sequence `(m, ln ‖f_m‖)` truncated at `n`.
///
/// The definition is a `limsup` of `ln m / (−ln‖f_m‖/m)`, which converges
/// like `1/ln m`; at `N = 40` it is still 35% off for `e^{x₁}`. Instead
/// `y_m = −ln‖f_m‖/m` is fitted on the tail window by
/// `a·ln m + b + c·ln m/m + e/m`, the shape produced by Stirling's formula,
/// and `ρ̂ = 1/a`, `τ̂ = e^{−bρ̂}/(eρ̂)`. For `‖f_m‖ = m^{−m/ρ}` the fit is exact.
pub fn order_estimate_from_log_norms(log_norms: &[(u32, f64)], n: u32) -> Result<OrderTypeEstimate> {
    let lo = n.div_ceil(2).max(2);
    let tail: Vec<(u32, f64)> = log_norms.iter().copied().filter(|&(m, _)| m >= lo && m <= n).collect();
    if tail.is_empty() {
        return Err(Error::AllZeroTail);
    }
    let limsup_sequence: Vec<(u32, f64)> = tail
        .iter()
        .filter(|&&(_, l)| l < 0.0)
        .map(|&(m, l)| (m, (m as f64).ln() / (-l / m as f64)))
        .collect();
    let naive_order = limsup_sequence.iter().map(|p| p.1).fold(f64::NAN, f64::max);

    let (order, b) = fit_order(&tail);
    let stable = {
        let upper: Vec<_> = tail.iter().copied().filter(|&(m, _)| m >= (lo + n) / 2).collect();
        let (o2, _) = fit_order(&upper);
        upper.len() >= 2 && (o2 - order).abs() <= 0.05 * order
    };
    let type_estimate =
        (order > 0.0 && order.is_finite() && stable).then(|| (-b * order).exp() / (E * order));
    Ok(OrderTypeEstimate {
        order,
        type_estimate,
        log_norms: log_norms.to_vec(),
        limsup_sequence,
        naive_order,
        window: (lo, n),
    })
}

/// Returns `(ρ̂, b)`.
fn fit_order(points: &[(u32, f64)]) -> (f64, f64) {
    if points.len() < 2 {
        return (f64::INFINITY, 0.0);
    }
    let cols = if points.len() >= 6 { 4 } else { 2 };
    let rows = points.len();
    let mut a = DMatrix::zeros(rows, cols);
    let mut y = DVector::zeros(rows);
    for (i, &(m, l)) in points.iter().enumerate() {
        let mf = m as f64;
        let lm = mf.ln();
        let basis = [lm, 1.0, lm / mf, 1.0 / mf];
        for j in 0..cols {
            a[(i, j)] = basis[j];
        }
        y[i] = -l / mf;
    }
    let coef = a.svd(true, true).solve(&y, 1e-14).expect("SVD with both factors");
    let slope = coef[0];
    if slope <= 1e-12 {
        return (f64::INFINITY, coef[1]);
    }
    (1.0 / slope, coef[1])
}

/// Constant `α` of the spectral inequality for a problem instance; the
/// order gate is `(2k−β)/α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderGate {
    pub alpha: u32,
}

impl OrderGate {
    /// `∞` when `α = 0`.
    pub fn value(&self, problem: &FischerProblem) -> f64 {
        let gap = 2 * problem.k() - problem.beta().unwrap_or(0);
        if self.alpha == 0 {
            f64::INFINITY
        } else {
            gap as f64 / self.alpha as f64
        }
    }
}

/// Recorded, not fatal.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OrderGateWarning {
    pub order_estimate: f64,
    pub gate: f64,
}

impl std::fmt::Display for OrderGateWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "estimated order {:.4} is not below the gate {}; convergence of the quotient series is not guaranteed",
            self.order_estimate, self.gate
        )
    }
}

/// One row of the tail report.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailRow {
    pub degree: u32,
    /// Sampled `‖G_M‖_∞`.
    pub norm: f64,
    /// `(M+1)^{(d−1)/2}/(M+2k)^{(M+2k)/ρ̂}`, when `ρ̂(f)` is available.
    pub bound_shape: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct EntireDecomposition {
    /// `q^{(N)}`: parts `G_0 … G_{N−2k}`.
    pub quotient: EntireSeries,
    /// `h^{(N)} = f^{(N)} − P·q^{(N)}`, parts up to `N`.
    pub remainder: EntireSeries,
    pub certificate: Certificate,
    /// `max_m` of the number of layers contributing from `f_m`.
    pub max_layers: u32,
    pub order: Option<OrderTypeEstimate>,
    pub warning: Option<OrderGateWarning>,
    pub tail: Vec<TailRow>,
}

impl EntireDecomposition {
    pub fn is_exact(&self) -> bool {
        self.certificate.is_exact()
    }
}

/// Wire form of [`EntireDecomposition`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntireDecompositionJson {
    pub quotient: EntireSeries,
    pub remainder: EntireSeries,
    pub exact: bool,
    pub max_layers: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_estimate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub type_estimate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl From<&EntireDecomposition> for EntireDecompositionJson {
    fn from(d: &EntireDecomposition) -> Self {
        EntireDecompositionJson {
            quotient: d.quotient.clone(),
            remainder: d.remainder.clone(),
            exact: d.is_exact(),
            max_layers: d.max_layers,
            order_estimate: d.order.as_ref().map(|o| o.order).filter(|o| o.is_finite()),
            type_estimate: d.order.as_ref().and_then(|o| o.type_estimate),
            warning: d.warning.map(|w| w.to_string()),
        }
    }
}

/// `q^{(N)} = Σ_{m≤N} T_P(f_m)`, regraded into `G_M`, and `h^{(N)} = f^{(N)} − P·q^{(N)}`.
///
/// Each `T_P(f_m)` is computed by layers in parallel; the number of layers
/// with a `P_s` factor is checked against `⌊m/(2k−β)⌋`. The order gate is
/// advisory.
pub fn decompose_entire(
    problem: &FischerProblem,
    f: &EntireSeries,
    gate: Option<OrderGate>,
) -> Result<EntireDecomposition> {
    if f.dim() != problem.dim() {
        return Err(Error::DimensionMismatch { left: problem.dim(), right: f.dim() });
    }
    let n = f.truncation();
    let two_k = 2 * problem.k();
    let gap = two_k - problem.beta().unwrap_or(0);
    problem.operator().check_degrees(n)?;

    let per_degree: Vec<(Polynomial, u32)> = f
        .parts()
        .par_iter()
        .map(|fm| {
            if fm.is_zero() {
                return Ok((Polynomial::zero(f.dim()), 0));
            }
            let layers = series_layers(problem, fm)?;
            let depth = layers.len().saturating_sub(1) as u32;
            if problem.beta().is_some() && depth > fm.degree() / gap {
                return Err(Error::BoundViolated(format!(
                    "{depth} layers contribute from degree {}, bound is {}",
                    fm.degree(),
                    fm.degree() / gap
                )));
            }
            let mut sum = Polynomial::zero(f.dim());
            for l in &layers {
                sum = sum.add(l)?;
            }
            Ok((sum, depth))
        })
        .collect::<Result<_>>()?;

    // Regrading after the barrier: G_M collects every summand of degree M.
    let mut graded: BTreeMap<u32, HomogeneousPolynomial> = BTreeMap::new();
    let mut direct = Polynomial::zero(f.dim());
    let mut max_layers = 0;
    for (tp, depth) in &per_degree {
        max_layers = max_layers.max(*depth);
        direct = direct.add(tp)?;
        for (deg, part) in tp.graded_parts() {
            let merged = match graded.remove(deg) {
                Some(g) => g.add(part)?,
                None => part.clone(),
            };
            graded.insert(*deg, merged);
        }
    }
    let q_top = n.saturating_sub(two_k);
    let q_parts: Vec<HomogeneousPolynomial> = (0..=q_top)
        .map(|m| graded.get(&m).cloned().unwrap_or_else(|| HomogeneousPolynomial::zero(f.dim(), m)))
        .collect();
    let quotient = EntireSeries::new(f.dim(), q_parts)?;
    let q_poly = quotient.to_polynomial();
    if q_poly != direct {
        return Err(Error::BoundViolated("regraded quotient differs from the direct sum".into()));
    }

    let f_poly = f.to_polynomial();
    let h_poly = f_poly.sub(&problem.polynomial().mul(&q_poly)?)?;
    let remainder = EntireSeries::from_polynomial(&h_poly, n)?;
    let certificate = Certificate::compute(problem, &f_poly, &q_poly, &h_poly)?;

    let order = match order_estimate(f) {
        Ok(o) => Some(o),
        Err(Error::AllZeroTail) | Err(Error::InvalidProblem(_)) => None,
        Err(e) => return Err(e),
    };
    let warning = match (gate, &order) {
        (Some(g), Some(o)) if o.order >= g.value(problem) => {
            Some(OrderGateWarning { order_estimate: o.order, gate: g.value(problem) })
        }
        _ => None,
    };
    let rho = order.as_ref().map(|o| o.order).filter(|r| *r > 0.0 && r.is_finite());
    let d = f.dim() as f64;
    let tail = quotient
        .parts()
        .par_iter()
        .enumerate()
        .map(|(m, g)| {
            let norm = log_sup_norm(g, NormSource::Sampled).map_or(0.0, f64::exp);
            let shape = rho.map(|r| {
                let mm = m as f64;
                let top = mm + two_k as f64;
                ((d - 1.0) / 2.0 * (mm + 1.0).ln() - top / r * top.ln()).exp()
            });
            TailRow { degree: m as u32, norm, bound_shape: shape }
        })
        .collect();

    Ok(EntireDecomposition { quotient, remainder, certificate, max_layers, order, warning, tail })
}

/// CSV with columns `M,norm_GM,bound_shape`.
pub fn tail_report_csv(rows: &[TailRow]) -> String {
    let mut out = String::from("M,norm_GM,bound_shape\n");
    for r in rows {
        let shape = r.bound_shape.map(|v| format!("{v:?}")).unwrap_or_default();
        let _ = writeln!(out, "{},{:?},{}", r.degree, r.norm, shape);
    }
    out
}

/// Orders (and types, when orders agree) of `q` and `h` compared against `f`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderComparison {
    /// `0` for series whose tail vanishes.
    pub order_f: f64,
    pub order_q: f64,
    pub order_h: f64,
    pub type_f: Option<f64>,
    pub type_q: Option<f64>,
    pub type_h: Option<f64>,
    pub q_within: bool,
    pub h_within: bool,
    /// Type comparison for `q`, made only when `ρ̂(q) ≈ ρ̂(f)`.
    pub q_type_within: Option<bool>,
    pub tolerance: f64,
}

pub fn order_of_decomposition(f: &EntireSeries, q: &EntireSeries, h: &EntireSeries, tolerance: f64) -> OrderComparison {
    let est = |s: &EntireSeries| match order_estimate(s) {
        Ok(o) => (o.order, o.type_estimate),
        Err(_) => (0.0, None),
    };
    let (of, tf) = est(f);
    let (oq, tq) = est(q);
    let (oh, th) = est(h);
    let q_type_within = match (tf, tq) {
        (Some(a), Some(b)) if (oq - of).abs() <= tolerance => Some(b <= a + tolerance),
        _ => None,
    };
    OrderComparison {
        order_f: of,
        order_q: oq,
        order_h: oh,
        type_f: tf,
        type_q: tq,
        type_h: th,
        q_within: oq <= of + tolerance,
        h_within: oh <= of + tolerance,
        q_type_within,
        tolerance,
    }
}
