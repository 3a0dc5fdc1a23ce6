//! Harmonic extension of boundary data on quadric domains.
//!
//! Each domain is the zero set of `P` and `h = f − P·q` is the harmonic
//! function agreeing with `f` on `{P = 0}`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeff::{parse_rational, rational_to_f64, Coeff, Rational};
use crate::entire::{decompose_entire, EntireSeries, OrderGate, OrderGateWarning, SeriesGenerator};
use crate::error::{Error, Result};
use crate::fischer::{decompose_recursive, Certificate, DecompositionResult, FischerProblem};
use crate::poly::{HomogeneousPolynomial, MultiIndex, Polynomial};
use crate::sphere::sphere_samples;

/// Catalogued domains. Parameters are rationals written as `"p"` or `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainSpec {
    /// `Σ x_i²/a_i² < 1`
    Ellipsoid { axes: Vec<String> },
    /// `a·x₁ > x₂²`
    Parabola { a: String },
    /// `|x₁| < a`
    Strip { a: String },
    /// `Σ_{i<d} x_i²/a_i² < 1` in `d = axes + 1` variables.
    Cylinder { axes: Vec<String> },
}

impl DomainSpec {
    pub fn ellipsoid(axes: &[Rational]) -> Self {
        DomainSpec::Ellipsoid { axes: axes.iter().map(ToString::to_string).collect() }
    }

    pub fn unit_ball(dim: usize) -> Self {
        Self::ellipsoid(&vec![Rational::one(); dim])
    }

    pub fn parabola(a: Rational) -> Self {
        DomainSpec::Parabola { a: a.to_string() }
    }

    pub fn strip(a: Rational) -> Self {
        DomainSpec::Strip { a: a.to_string() }
    }

    pub fn cylinder(axes: &[Rational]) -> Self {
        DomainSpec::Cylinder { axes: axes.iter().map(ToString::to_string).collect() }
    }

    pub fn dim(&self) -> usize {
        match self {
            DomainSpec::Ellipsoid { axes } => axes.len(),
            DomainSpec::Parabola { .. } | DomainSpec::Strip { .. } => 2,
            DomainSpec::Cylinder { axes } => axes.len() + 1,
        }
    }

    fn params(&self) -> Result<Vec<Rational>> {
        let raw: Vec<&String> = match self {
            DomainSpec::Ellipsoid { axes } | DomainSpec::Cylinder { axes } => axes.iter().collect(),
            DomainSpec::Parabola { a } | DomainSpec::Strip { a } => vec![a],
        };
        if raw.is_empty() {
            return Err(Error::InvalidDomain("at least one semi-axis is required".into()));
        }
        raw.into_iter()
            .map(|s| {
                let v = parse_rational(s)?;
                if !v.is_positive() {
                    return Err(Error::InvalidDomain(format!("parameter {s} must be positive")));
                }
                Ok(v)
            })
            .collect()
    }
}

/// A domain turned into a decomposition problem, with its gate constant.
#[derive(Clone, Debug)]
pub struct DomainInstance {
    pub spec: DomainSpec,
    pub problem: FischerProblem,
    pub gate: OrderGate,
}

impl DomainInstance {
    /// `(2k−β)/α`, `None` for `∞`.
    pub fn gate_value(&self) -> Option<Rational> {
        if self.gate.alpha == 0 {
            return None;
        }
        let gap = 2 * self.problem.k() - self.problem.beta().unwrap_or(0);
        Some(Rational::new(gap.into(), self.gate.alpha.into()))
    }

    pub fn gate_label(&self) -> String {
        self.gate_value().map_or_else(|| "∞".to_string(), |g| g.to_string())
    }
}

fn sum_of_scaled_squares(dim: usize, axes: &[Rational]) -> HomogeneousPolynomial {
    let mut p = HomogeneousPolynomial::zero(dim, 2);
    for (i, a) in axes.iter().enumerate() {
        p.add_term(MultiIndex::unit(dim, i, 2), Coeff::real(Rational::one() / (a * a)));
    }
    p
}

/// `P` with `k = 1`, written as `P₂ − Σ P_j`.
///
/// | domain    | `P`                   | `β` | `α` | gate |
/// |-----------|-----------------------|-----|-----|------|
/// | ellipsoid | `Σ x_i²/a_i² − 1`     | 0   | 0   | ∞    |
/// | parabola  | `x₂² − a·x₁`          | 1   | 2   | ½    |
/// | strip     | `x₁² − a²`            | 0   | 2   | 1    |
/// | cylinder  | `Σ_{i<d} x_i²/a_i² − 1` | 0 | 2   | 1    |
pub fn to_fischer_problem(spec: &DomainSpec) -> Result<DomainInstance> {
    let params = spec.params()?;
    let dim = spec.dim();
    let (leading, lower, alpha) = match spec {
        DomainSpec::Ellipsoid { .. } => {
            (sum_of_scaled_squares(dim, &params), HomogeneousPolynomial::constant(dim, Coeff::one()), 0)
        }
        DomainSpec::Parabola { .. } => (
            HomogeneousPolynomial::monomial(MultiIndex::new(vec![0, 2]), Coeff::one()),
            HomogeneousPolynomial::var(2, 0).scale_rational(&params[0]),
            2,
        ),
        DomainSpec::Strip { .. } => (
            HomogeneousPolynomial::monomial(MultiIndex::new(vec![2, 0]), Coeff::one()),
            HomogeneousPolynomial::constant(2, Coeff::real(&params[0] * &params[0])),
            2,
        ),
        DomainSpec::Cylinder { .. } => {
            if dim < 2 {
                return Err(Error::InvalidDomain("a cylinder needs d ≥ 2".into()));
            }
            (sum_of_scaled_squares(dim, &params), HomogeneousPolynomial::constant(dim, Coeff::one()), 2)
        }
    };
    let problem = FischerProblem::new(leading, 1, [lower])?;
    Ok(DomainInstance { spec: spec.clone(), problem, gate: OrderGate { alpha } })
}

/// Boundary sampling window and density.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingOptions {
    /// Half-width of the parameter window on unbounded boundaries.
    pub window: f64,
    pub samples: usize,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        SamplingOptions { window: 4.0, samples: 512 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryResidualReport {
    pub parameterization: String,
    pub max_residual: f64,
    pub samples: usize,
    pub truncation: u32,
    /// `"closed form"` or `"truncated data"`: what `h` is compared against.
    pub reference: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundarySample {
    pub parameter: f64,
    pub point: Vec<f64>,
    pub f: f64,
    pub h: f64,
}

impl BoundarySample {
    pub fn residual(&self) -> f64 {
        (self.f - self.h).abs()
    }
}

/// `(parameter, point)` pairs on `{P = 0}` and a description of the scheme.
pub fn boundary_points(spec: &DomainSpec, opts: &SamplingOptions) -> Result<(String, Vec<(f64, Vec<f64>)>)> {
    let params: Vec<f64> = spec.params()?.iter().map(rational_to_f64).collect();
    let n = opts.samples.max(2);
    let w = opts.window;
    let grid = |count: usize, i: usize| -w + 2.0 * w * i as f64 / (count - 1) as f64;
    Ok(match spec {
        DomainSpec::Ellipsoid { .. } if params.len() == 2 => {
            let pts = (0..n)
                .map(|i| {
                    let t = 2.0 * PI * i as f64 / n as f64;
                    (t, vec![params[0] * t.cos(), params[1] * t.sin()])
                })
                .collect();
            (format!("(a₁cos t, a₂sin t), t ∈ [0, 2π), {n} angles"), pts)
        }
        DomainSpec::Ellipsoid { .. } => {
            let sphere = sphere_samples(params.len());
            let step = (sphere.len() / n).max(1);
            let pts = sphere
                .iter()
                .step_by(step)
                .take(n)
                .enumerate()
                .map(|(i, x)| (i as f64, x.iter().zip(&params).map(|(xi, a)| xi * a).collect()))
                .collect();
            (format!("quasi-random sphere points scaled by the semi-axes, {n} points"), pts)
        }
        DomainSpec::Parabola { .. } => {
            let a = params[0];
            let pts = (0..n)
                .map(|i| {
                    let t = grid(n, i);
                    (t, vec![t * t / a, t])
                })
                .collect();
            (format!("(t²/a, t), t ∈ [−{w}, {w}], {n} points"), pts)
        }
        DomainSpec::Strip { .. } => {
            let a = params[0];
            let half = n.div_ceil(2).max(2);
            let mut pts = Vec::with_capacity(2 * half);
            for side in [-1.0, 1.0] {
                for i in 0..half {
                    let s = grid(half, i);
                    pts.push((s, vec![side * a, s]));
                }
            }
            (format!("x₁ = ±a, x₂ ∈ [−{w}, {w}], {half} points per line"), pts)
        }
        DomainSpec::Cylinder { .. } => {
            let d = spec.dim();
            let heights = 16.min(n);
            let angles = (n / heights).max(1);
            let mut pts = Vec::with_capacity(angles * heights);
            for j in 0..heights {
                let z = grid(heights, j);
                for i in 0..angles {
                    let t = 2.0 * PI * i as f64 / angles as f64;
                    // points on the (x₁, x₂) ellipse; other cross-section
                    // coordinates stay 0. In d = 2 the section is x₁ = ±a₁.
                    let mut x = vec![0.0; d];
                    x[0] = params[0] * t.cos();
                    if d > 2 {
                        x[1] = params[1] * t.sin();
                    } else {
                        x[0] = params[0] * t.cos().signum();
                    }
                    x[d - 1] = z;
                    pts.push((t, x));
                }
            }
            (format!("(a₁cos t, a₂sin t, z), z ∈ [−{w}, {w}], {} points", angles * heights), pts)
        }
    })
}

#[derive(Clone, Debug)]
pub struct DirichletSolution {
    pub instance_gate: String,
    pub quotient: EntireSeries,
    pub remainder: EntireSeries,
    pub certificate: Certificate,
    pub order_estimate: Option<f64>,
    pub warning: Option<OrderGateWarning>,
    pub residual: BoundaryResidualReport,
    pub boundary: Vec<BoundarySample>,
}

impl DirichletSolution {
    pub fn is_exact(&self) -> bool {
        self.certificate.is_exact()
    }

    /// `h` as a polynomial.
    pub fn harmonic(&self) -> Polynomial {
        self.remainder.to_polynomial()
    }
}

/// Decomposes `data` truncated at `truncation` (or its own truncation) and
/// samples `|f − h|` on the boundary. `f` is the closed form when the data
/// carries a generator that has one.
pub fn solve(
    spec: &DomainSpec,
    data: &EntireSeries,
    truncation: Option<u32>,
    opts: &SamplingOptions,
) -> Result<DirichletSolution> {
    let instance = to_fischer_problem(spec)?;
    if data.dim() != spec.dim() {
        return Err(Error::DimensionMismatch { left: spec.dim(), right: data.dim() });
    }
    let data = match truncation {
        Some(n) => data.with_truncation(n)?,
        None => data.clone(),
    };
    let dec = decompose_entire(&instance.problem, &data, Some(instance.gate))?;
    let (parameterization, points) = boundary_points(spec, opts)?;
    let closed = data.generator().filter(|g| g.eval_closed_form(&vec![0.0; data.dim()]).is_some());
    let boundary: Vec<BoundarySample> = points
        .par_iter()
        .map(|(t, x)| BoundarySample {
            parameter: *t,
            point: x.clone(),
            f: closed.and_then(|g| g.eval_closed_form(x)).unwrap_or_else(|| data.eval(x)),
            h: dec.remainder.eval(x),
        })
        .collect();
    let max_residual = boundary.iter().map(BoundarySample::residual).fold(0.0, f64::max);
    let residual = BoundaryResidualReport {
        parameterization,
        max_residual,
        samples: boundary.len(),
        truncation: data.truncation(),
        reference: if closed.is_some() { "closed form" } else { "truncated data" }.to_string(),
    };
    Ok(DirichletSolution {
        instance_gate: instance.gate_label(),
        quotient: dec.quotient,
        remainder: dec.remainder,
        certificate: dec.certificate,
        order_estimate: dec.order.map(|o| o.order),
        warning: dec.warning,
        residual,
        boundary,
    })
}

/// CSV with columns `parameter,x1,…,xd,f,h,abs_diff`.
pub fn boundary_csv(samples: &[BoundarySample]) -> String {
    let d = samples.first().map_or(0, |s| s.point.len());
    let mut out = String::from("parameter");
    for i in 1..=d {
        let _ = write!(out, ",x{i}");
    }
    out.push_str(",f,h,abs_diff\n");
    for s in samples {
        let _ = write!(out, "{:?}", s.parameter);
        for x in &s.point {
            let _ = write!(out, ",{x:?}");
        }
        let _ = writeln!(out, ",{:?},{:?},{:?}", s.f, s.h, s.residual());
    }
    out
}

/// Two decompositions of the strip data `f = sin(πx₁/a)e^{πx₂/a}`.
///
/// The first, `q = 0, h = f`, is what the solver returns for harmonic data
/// and is exact at every truncation. The second, `h = 0, q = f/P`, exists
/// only for the entire function: a polynomial decomposition with this `P`
/// is unique. It is certified through the Taylor section `Q = [f/P]_{≤N}`,
/// computed by exact formal division: `f^{(N)} − P·Q_{≤N−2} = −a²(Q_{N−1} + Q_N)`
/// holds identically, so the residual lives in degrees `N−1` and `N` only.
#[derive(Clone, Debug)]
pub struct NonUniquenessWitness {
    pub data: EntireSeries,
    /// Solver output.
    pub first: DecompositionResult,
    /// `Q_{≤N−2}`
    pub second_quotient: Polynomial,
    /// `f^{(N)} − P·Q_{≤N−2}`; the second remainder is `0`.
    pub second_residual: Polynomial,
    /// `−a²(Q_{N−1} + Q_N)`
    pub predicted_tail: Polynomial,
}

impl NonUniquenessWitness {
    pub fn first_is_trivial(&self) -> bool {
        self.first.quotient.is_zero() && self.first.remainder == self.data.to_polynomial()
    }

    /// Residual equals the predicted truncation tail, which sits in degrees
    /// `≥ N−1`.
    pub fn second_is_exact(&self) -> bool {
        let n = self.data.truncation();
        self.second_residual == self.predicted_tail
            && self.second_residual.graded_parts().keys().all(|&m| m + 1 >= n)
    }

    pub fn both_exact(&self) -> bool {
        self.first.is_exact() && self.second_is_exact()
    }

    /// The remainders `f` and `0` differ whenever `f ≠ 0`.
    pub fn differ(&self) -> bool {
        !self.first.remainder.is_zero()
    }
}

pub fn nonuniqueness_witness(a: &Rational, n: u32) -> Result<NonUniquenessWitness> {
    if n < 2 {
        return Err(Error::InvalidProblem("the witness needs truncation N ≥ 2".into()));
    }
    let instance = to_fischer_problem(&DomainSpec::strip(a.clone()))?;
    let data = EntireSeries::from_generator(2, SeriesGenerator::Strip { a: a.to_string() }, n)?;
    let f = data.to_polynomial();
    let first = decompose_recursive(&instance.problem, &f)?;

    // 1/(x₁² − a²) = −a⁻² Σ_j (x₁/a)^{2j}
    let a2 = a * a;
    let mut inverse = Polynomial::zero(2);
    let mut c = -(Rational::one() / &a2);
    for j in 0..=n / 2 {
        inverse.add_term(MultiIndex::new(vec![2 * j, 0]), Coeff::real(c.clone()));
        c /= &a2;
    }
    let full = f.mul(&inverse)?;
    let section = |lo: u32, hi: u32| {
        Polynomial::from_parts(2, full.graded_parts().range(lo..=hi).map(|(_, p)| p.clone())).expect("d = 2")
    };
    let second_quotient = section(0, n - 2);
    let second_residual = f.sub(&instance.problem.polynomial().mul(&second_quotient)?)?;
    let predicted_tail = section(n - 1, n).scale_rational(&-a2);
    Ok(NonUniquenessWitness { data, first, second_quotient, second_residual, predicted_tail })
}

/// Wire form of a solve request.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirichletRequest {
    pub domain: DomainSpec,
    pub data: EntireSeries,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampling: Option<SamplingOptions>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirichletResponse {
    pub gate: String,
    pub quotient: EntireSeries,
    pub harmonic: EntireSeries,
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_estimate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    pub residual: BoundaryResidualReport,
}

impl From<&DirichletSolution> for DirichletResponse {
    fn from(s: &DirichletSolution) -> Self {
        DirichletResponse {
            gate: s.instance_gate.clone(),
            quotient: s.quotient.clone(),
            harmonic: s.remainder.clone(),
            exact: s.is_exact(),
            order_estimate: s.order_estimate.filter(|o| o.is_finite()),
            warning: s.warning.map(|w| w.to_string()),
            residual: s.residual.clone(),
        }
    }
}

pub fn solve_request(req: &DirichletRequest) -> Result<DirichletSolution> {
    solve(&req.domain, &req.data, req.truncation, &req.sampling.unwrap_or_default())
}

/// `true` when `h` has no part of degree `> 0` that fails `Δh = 0`.
pub fn is_harmonic(h: &Polynomial) -> bool {
    h.laplacian().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, ratio};

    fn poly(terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_int_terms(2, terms)
    }

    #[test]
    fn catalogue_forms_and_gates() {
        let p = to_fischer_problem(&DomainSpec::parabola(rat(1))).unwrap();
        assert_eq!(p.problem.polynomial(), poly(&[(&[0, 2], 1), (&[1, 0], -1)]));
        assert_eq!(p.gate_value(), Some(ratio(1, 2)));

        let s = to_fischer_problem(&DomainSpec::strip(rat(3))).unwrap();
        assert_eq!(s.problem.polynomial(), poly(&[(&[2, 0], 1), (&[0, 0], -9)]));
        assert_eq!(s.gate_value(), Some(rat(1)));

        let e = to_fischer_problem(&DomainSpec::unit_ball(3)).unwrap();
        let mut expected: Polynomial = HomogeneousPolynomial::norm_squared(3).into();
        expected = expected.sub(&Polynomial::one(3)).unwrap();
        assert_eq!(e.problem.polynomial(), expected);
        assert_eq!(e.gate_value(), None);
        assert_eq!(e.gate_label(), "∞");

        let c = to_fischer_problem(&DomainSpec::cylinder(&[rat(1), rat(2)])).unwrap();
        assert_eq!(c.problem.dim(), 3);
        assert_eq!(c.gate_value(), Some(rat(1)));
    }

    #[test]
    fn invalid_parameters() {
        assert!(to_fischer_problem(&DomainSpec::strip(rat(0))).is_err());
        assert!(to_fischer_problem(&DomainSpec::Parabola { a: "-2".into() }).is_err());
        assert!(to_fischer_problem(&DomainSpec::Ellipsoid { axes: vec![] }).is_err());
    }

    #[test]
    fn unit_disk_x1_squared() {
        let data = EntireSeries::from_polynomial(&poly(&[(&[2, 0], 1)]), 2).unwrap();
        let s = solve(&DomainSpec::unit_ball(2), &data, None, &SamplingOptions::default()).unwrap();
        let half = Coeff::real(ratio(1, 2));
        let h = poly(&[(&[0, 0], 1), (&[2, 0], 1), (&[0, 2], -1)]).scale(&half);
        assert_eq!(s.harmonic(), h);
        assert!(s.is_exact());
        assert!(s.residual.max_residual < 1e-12);
    }

    #[test]
    fn parabola_x1_squared() {
        let data = EntireSeries::from_polynomial(&poly(&[(&[2, 0], 1)]), 2).unwrap();
        let s = solve(&DomainSpec::parabola(rat(1)), &data, None, &SamplingOptions::default()).unwrap();
        assert_eq!(s.harmonic(), poly(&[(&[2, 0], 1), (&[0, 2], -1), (&[1, 0], 1)]));
        assert!(s.residual.max_residual <= 1e-10);
        assert_eq!(s.residual.samples, 512);
        // on (t², t): h = t⁴ − t² + t² = f
        for t in [-3.0f64, 0.5, 2.0] {
            assert!((s.harmonic().eval_real(&[t * t, t]) - t.powi(4)).abs() < 1e-12);
        }
    }

    #[test]
    fn polynomial_data_on_every_domain() {
        let specs = [
            DomainSpec::ellipsoid(&[rat(2), ratio(1, 2)]),
            DomainSpec::parabola(ratio(3, 2)),
            DomainSpec::strip(rat(2)),
        ];
        let f = poly(&[(&[3, 1], 2), (&[1, 2], -1), (&[0, 1], 4), (&[0, 0], 1)]);
        for spec in &specs {
            let data = EntireSeries::from_polynomial(&f, 4).unwrap();
            let s = solve(spec, &data, None, &SamplingOptions::default()).unwrap();
            assert!(s.is_exact() && is_harmonic(&s.harmonic()));
            assert!(s.residual.max_residual <= 1e-10, "{spec:?}: {}", s.residual.max_residual);
        }
    }

    #[test]
    fn cylinder_polynomial_data() {
        let f = Polynomial::from_int_terms(3, &[(&[2, 0, 1], 1), (&[0, 0, 3], 1), (&[1, 1, 0], 2)]);
        let data = EntireSeries::from_polynomial(&f, 3).unwrap();
        let spec = DomainSpec::cylinder(&[rat(1), rat(2)]);
        let s = solve(&spec, &data, None, &SamplingOptions::default()).unwrap();
        assert!(s.is_exact() && is_harmonic(&s.harmonic()));
        assert!(s.residual.max_residual <= 1e-10);
    }

    #[test]
    fn witness_a1_n16() {
        let w = nonuniqueness_witness(&rat(1), 16).unwrap();
        assert!(w.first_is_trivial());
        assert!(w.both_exact());
        assert!(w.differ());
        assert!(!w.second_quotient.is_zero());
        for p in w.data.parts() {
            assert!(p.laplacian().is_zero());
        }
    }

    #[test]
    fn witness_second_quotient_nonzero_from_degree_four() {
        for n in 4..=6 {
            let w = nonuniqueness_witness(&rat(1), n).unwrap();
            assert!(!w.second_quotient.is_zero() && w.second_is_exact());
        }
    }

    #[test]
    fn witness_second_quotient_approximates_division() {
        // q·P ≈ f away from the boundary, where both sides are evaluated in floats
        let w = nonuniqueness_witness(&rat(1), 30).unwrap();
        for x in [[0.3, 0.2], [-0.5, 0.1], [0.1, -0.4]] {
            let q = w.second_quotient.eval_real(&x);
            let f = (PI * x[0]).sin() * (PI * x[1]).exp();
            assert!((q * (x[0] * x[0] - 1.0) - f).abs() < 1e-6, "{x:?}");
        }
    }

    #[test]
    fn strip_residual_decays() {
        let spec = DomainSpec::strip(rat(1));
        let data = EntireSeries::from_generator(2, SeriesGenerator::Strip { a: "1".into() }, 8).unwrap();
        let opts = SamplingOptions { window: 1.0, samples: 64 };
        let r: Vec<f64> = [8, 16, 24]
            .iter()
            .map(|&n| solve(&spec, &data, Some(n), &opts).unwrap().residual.max_residual)
            .collect();
        assert!(r[0] > r[1] && r[1] > r[2], "{r:?}");
    }

    #[test]
    fn request_round_trip() {
        let req = DirichletRequest {
            domain: DomainSpec::parabola(rat(1)),
            data: EntireSeries::from_polynomial(&poly(&[(&[2, 0], 1)]), 2).unwrap(),
            truncation: None,
            sampling: None,
        };
        let s = serde_json::to_string(&req).unwrap();
        assert!(s.contains("\"kind\":\"parabola\""));
        let back: DirichletRequest = serde_json::from_str(&s).unwrap();
        assert_eq!(back, req);
        let resp = DirichletResponse::from(&solve_request(&back).unwrap());
        let js = serde_json::to_string(&resp).unwrap();
        let again: DirichletResponse = serde_json::from_str(&js).unwrap();
        assert_eq!(serde_json::to_string(&again).unwrap(), js);
    }

    #[test]
    fn csv_columns() {
        let data = EntireSeries::from_polynomial(&poly(&[(&[2, 0], 1)]), 2).unwrap();
        let s = solve(&DomainSpec::unit_ball(2), &data, None, &SamplingOptions { window: 4.0, samples: 4 }).unwrap();
        let csv = boundary_csv(&s.boundary);
        assert!(csv.starts_with("parameter,x1,x2,f,h,abs_diff\n"));
        assert_eq!(csv.lines().count(), 5);
    }
}
