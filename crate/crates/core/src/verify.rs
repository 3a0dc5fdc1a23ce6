//! The full invariant suite behind `fischer verify`.
//!
//! Every check is deterministic given the seed.

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coeff::{rat, ratio, Coeff};
use crate::dirichlet::{nonuniqueness_witness, solve, DomainSpec, SamplingOptions};
use crate::entire::{order_estimate, EntireSeries, SeriesGenerator};
use crate::error::Result;
use crate::fischer::{decompose_recursive, decompose_series_formula, operator_norm_bound, series_layers, FischerProblem};
use crate::poly::{HomogeneousPolynomial, MultiIndex, Polynomial};
use crate::random;
use crate::spectral::{
    chebyshev_identity_check, main_constant_upper, max_eigenvalue_a, min_quadratic_form_eigenvalue,
    sine_bound_check, verify_main_inequality,
};

/// Sizes of the suite. The defaults are the acceptance sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub spectral_m_max: u32,
    pub even_m_max: u32,
    pub chebyshev_n_max: usize,
    pub exactness_samples: usize,
    pub equivalence_samples: usize,
    pub norm_samples: usize,
    pub norm_m_max: u32,
    pub sine_n_max: u64,
    pub witness_truncation: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: random::DEFAULT_SEED,
            spectral_m_max: 200,
            even_m_max: 60,
            chebyshev_n_max: 16,
            exactness_samples: 500,
            equivalence_samples: 100,
            norm_samples: 100,
            norm_m_max: 20,
            sine_n_max: 1_000_000,
            witness_truncation: 16,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckOutcome { name: name.into(), passed, detail: detail.into() }
    }

    fn from_result(name: impl Into<String>, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((p, d)) => CheckOutcome::new(name, p, d),
            Err(e) => CheckOutcome::new(name, false, e.to_string()),
        }
    }
}

impl std::fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {} ({})", self.name, if self.passed { "PASS" } else { "FAIL" }, self.detail)
    }
}

/// Leading terms exercised by the randomized checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeadingKind {
    X2Squared,
    NormSquared,
    RandomDefinite,
}

/// A problem with leading term of the given kind in `d = 2`, random lower
/// parts of degree 0 and 1, and random data of degree `≤ max_degree`.
pub fn random_instance<R: Rng>(rng: &mut R, kind: LeadingKind, max_degree: u32) -> Result<(FischerProblem, Polynomial)> {
    let dim = 2;
    let leading = match kind {
        LeadingKind::X2Squared => HomogeneousPolynomial::monomial(MultiIndex::new(vec![0, 2]), Coeff::one()),
        LeadingKind::NormSquared => HomogeneousPolynomial::norm_squared(dim),
        LeadingKind::RandomDefinite => random::positive_definite_quadratic(rng, dim),
    };
    let mut lower = Vec::new();
    for s in 0..2 {
        if rng.gen_bool(0.7) {
            lower.push(random::homogeneous(rng, dim, s, 3));
        }
    }
    let problem = FischerProblem::new(leading, 1, lower)?;
    let f = random::polynomial(rng, dim, max_degree, 5);
    Ok((problem, f))
}

fn exactness(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let kinds = [LeadingKind::X2Squared, LeadingKind::NormSquared, LeadingKind::RandomDefinite];
    let mut failures = 0;
    for i in 0..cfg.exactness_samples {
        let (problem, f) = random_instance(&mut rng, kinds[i % 3], 10)?;
        if !decompose_recursive(&problem, &f)?.is_exact() {
            failures += 1;
        }
    }
    Ok((failures == 0, format!("{failures} of {} decompositions inexact", cfg.exactness_samples)))
}

fn equivalence(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5e71e5);
    let kinds = [LeadingKind::X2Squared, LeadingKind::NormSquared, LeadingKind::RandomDefinite];
    let mut mismatches = 0;
    for i in 0..cfg.equivalence_samples {
        let (problem, f) = random_instance(&mut rng, kinds[i % 3], 10)?;
        let rec = decompose_recursive(&problem, &f)?;
        let mut series = Polynomial::zero(f.dim());
        let mut layered = Polynomial::zero(f.dim());
        for part in f.graded_parts().values() {
            series = series.add(&decompose_series_formula(&problem, part)?.quotient)?;
            for l in series_layers(&problem, part)? {
                layered = layered.add(&l)?;
            }
        }
        if series != rec.quotient || layered != rec.quotient {
            mismatches += 1;
        }
    }
    Ok((mismatches == 0, format!("{mismatches} of {} quotients differ", cfg.equivalence_samples)))
}

fn even_degree(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let p = HomogeneousPolynomial::monomial(MultiIndex::new(vec![0, 2]), Coeff::one());
    let mut worst = 0.0f64;
    for m in 0..=cfg.even_m_max {
        let exact = (std::f64::consts::PI / (4 * m + 4) as f64).sin().powi(2);
        let via_a = (2.0 - max_eigenvalue_a(m as usize + 1).numeric) / 4.0;
        let direct = min_quadratic_form_eigenvalue(&p, 2 * m)?.min_eigenvalue;
        worst = worst.max((direct - exact).abs()).max((via_a - exact).abs());
    }
    Ok((worst <= 1e-9, format!("max deviation {worst:e}")))
}

fn norm_transfer(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let problem = FischerProblem::new(HomogeneousPolynomial::monomial(MultiIndex::new(vec![0, 2]), Coeff::one()), 1, [])?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x0b0d);
    let degrees: Vec<u32> = (2..=cfg.norm_m_max).collect();
    let mut worst = 0.0f64;
    for i in 0..cfg.norm_samples {
        let m = degrees[i % degrees.len()];
        let rec = operator_norm_bound(&problem, m, &main_constant_upper(m - 2), 1, &mut rng)?;
        worst = worst.max(rec.worst_ratio / rec.bound);
    }
    Ok((true, format!("0 violations, largest ‖Tf‖/(‖f‖/C) = {worst:.4}")))
}

fn dirichlet_examples() -> Result<(bool, String)> {
    let x1sq = Polynomial::from_int_terms(2, &[(&[2, 0], 1)]);
    let data = EntireSeries::from_polynomial(&x1sq, 2)?;
    let opts = SamplingOptions::default();
    let disk = solve(&DomainSpec::unit_ball(2), &data, None, &opts)?;
    let disk_h =
        Polynomial::from_int_terms(2, &[(&[0, 0], 1), (&[2, 0], 1), (&[0, 2], -1)]).scale(&Coeff::real(ratio(1, 2)));
    let par = solve(&DomainSpec::parabola(rat(1)), &data, None, &opts)?;
    let par_h = Polynomial::from_int_terms(2, &[(&[2, 0], 1), (&[0, 2], -1), (&[1, 0], 1)]);
    let residual = disk.residual.max_residual.max(par.residual.max_residual);
    let ok = disk.harmonic() == disk_h && par.harmonic() == par_h && disk.is_exact() && par.is_exact() && residual <= 1e-10;
    Ok((ok, format!("closed forms match, boundary residual {residual:e}")))
}

fn witness(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let w = nonuniqueness_witness(&rat(1), cfg.witness_truncation)?;
    let ok = w.both_exact() && w.differ() && w.first_is_trivial();
    Ok((ok, format!("N = {}: q = 0, h = f and h = 0, q = f/P both certified", cfg.witness_truncation)))
}

fn order_checks() -> Result<(bool, String)> {
    let mut ok = true;
    let mut detail = Vec::new();
    for rho in [0.5, 1.0, 2.0] {
        let est = order_estimate(&EntireSeries::from_generator(2, SeriesGenerator::Synthetic { rho }, 60)?)?;
        ok &= (est.order / rho - 1.0).abs() <= 0.02;
        detail.push(format!("ρ={rho}: {:.4}", est.order));
    }
    let exp = order_estimate(&EntireSeries::exp(2, 0, 40)?)?;
    let tau = exp.type_estimate.unwrap_or(f64::NAN);
    ok &= (exp.order - 1.0).abs() <= 0.05 && (tau - 1.0).abs() <= 0.1;
    detail.push(format!("exp: ρ̂ {:.4}, τ̂ {tau:.4}", exp.order));
    Ok((ok, detail.join("; ")))
}

/// Runs every check, in a fixed order.
pub fn run_suite(cfg: &VerifyConfig) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    out.push(CheckOutcome::from_result(format!("spectral inequality m≤{}", cfg.spectral_m_max), {
        verify_main_inequality(cfg.spectral_m_max).map(|reports| {
            let worst = reports.iter().filter_map(|r| r.margin()).fold(f64::INFINITY, f64::min);
            (true, format!("smallest margin {worst:e}"))
        })
    }));
    out.push(CheckOutcome::from_result(format!("even-degree exact minimum 2m, m≤{}", cfg.even_m_max), even_degree(cfg)));
    let cheb = (1..=cfg.chebyshev_n_max).all(chebyshev_identity_check);
    out.push(CheckOutcome::new(
        format!("det(A_n−λI) = 2T_n(−λ/2), n≤{}", cfg.chebyshev_n_max),
        cheb,
        "exact integer coefficients",
    ));
    out.push(CheckOutcome::from_result(format!("Fischer exactness ({} random)", cfg.exactness_samples), exactness(cfg)));
    out.push(CheckOutcome::from_result(
        format!("series formula = recursion ({} random)", cfg.equivalence_samples),
        equivalence(cfg),
    ));
    out.push(CheckOutcome::from_result("Dirichlet disk and parabola", dirichlet_examples()));
    out.push(CheckOutcome::from_result("strip non-uniqueness", witness(cfg)));
    out.push(CheckOutcome::from_result(
        format!("norm bound transfer m≤{} ({} random)", cfg.norm_m_max, cfg.norm_samples),
        norm_transfer(cfg),
    ));
    out.push(CheckOutcome::from_result("order estimator", order_checks()));
    let sine = sine_bound_check(cfg.sine_n_max);
    out.push(CheckOutcome::new(
        format!("sin(π/n) ≥ π/(n+2), n≤{}", cfg.sine_n_max),
        sine.violations == 0,
        format!("{} violations, smallest margin {:e} at n = {}", sine.violations, sine.min_margin, sine.argmin),
    ));
    out
}
