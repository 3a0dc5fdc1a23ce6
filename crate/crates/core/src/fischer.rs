//! Fischer decompositions `f = P·q + h`, `Δᵏh = 0`.
//!
//! For a homogeneous leading term `P₂ₖ` the quotient operator `T = T_{P₂ₖ}`
//! is computed per degree by an exact linear solve of `Δᵏ(P₂ₖ·q) = Δᵏf`.
//! For `P = P₂ₖ − P_β − ⋯ − P₀` the quotient `T_P` is obtained three ways:
//!
//! - [`decompose_recursive`]: degree-by-degree peeling, re-feeding `P_s·Tf`
//!   into lower degrees;
//! - [`decompose_series_formula`]: the iterated sum over index tuples
//!   `T P_{s_j} ⋯ T P_{s₀} T f_m`, memoized per operand;
//! - [`series_layers`]: the same sum grouped by tuple length, using linearity.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coeff::{rational_to_f64, Coeff, Rational};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::poly::{homogeneous_dimension, HomogeneousPolynomial, MultiIndex, Polynomial};
use crate::random;
use crate::sphere::homogeneous_norm_sq;

/// Per-degree inverse of `q ↦ Δᵏ(P₂ₖ·q)`.
type GradedInverse = std::result::Result<Arc<ExactMatrix>, Error>;

/// `T_{P₂ₖ}` for a homogeneous leading term and `Q(D) = Δᵏ`.
///
/// The inverse of the graded system is cached per degree. The cache only
/// ever maps a degree to the one value it can have, so concurrent fills are
/// harmless.
#[derive(Debug)]
pub struct HomogeneousFischerOperator {
    leading: HomogeneousPolynomial,
    k: u32,
    cache: RwLock<HashMap<u32, GradedInverse>>,
}

impl Clone for HomogeneousFischerOperator {
    fn clone(&self) -> Self {
        HomogeneousFischerOperator {
            leading: self.leading.clone(),
            k: self.k,
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
        }
    }
}

impl HomogeneousFischerOperator {
    pub fn new(leading: HomogeneousPolynomial, k: u32) -> Result<Self> {
        if k == 0 || leading.degree() != 2 * k || leading.is_zero() {
            return Err(Error::InvalidProblem(format!(
                "leading term must be a nonzero homogeneous polynomial of degree 2k = {}",
                2 * k
            )));
        }
        Ok(HomogeneousFischerOperator { leading, k, cache: RwLock::new(HashMap::new()) })
    }

    pub fn leading(&self) -> &HomogeneousPolynomial {
        &self.leading
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.leading.dim()
    }

    /// Inverse of the system matrix on quotients of degree `n`.
    fn inverse_for(&self, n: u32) -> GradedInverse {
        if let Some(hit) = self.cache.read().expect("cache lock").get(&n) {
            return hit.clone();
        }
        let dim = self.dim();
        let basis = MultiIndex::all_of_degree(dim, n);
        let columns: Vec<Vec<Coeff>> = basis
            .into_iter()
            .map(|b| {
                let prod = self.leading.mul(&HomogeneousPolynomial::monomial(b, Coeff::from_int(1)))
                    .expect("same dimension");
                let image = prod.laplacian_power(self.k);
                if image.is_zero() {
                    vec![Coeff::zero(); homogeneous_dimension(dim, n)]
                } else {
                    image.to_dense()
                }
            })
            .collect();
        let size = columns.len();
        let matrix = ExactMatrix::from_columns(size, &columns);
        let result = matrix
            .inverse()
            .map(Arc::new)
            .map_err(|s| Error::SingularFischerOperator { degree: n + 2 * self.k, rank: s.rank, size: s.size });
        self.cache.write().expect("cache lock").insert(n, result.clone());
        result
    }

    /// Checks that the graded system is solvable on every degree up to `max_degree`.
    pub fn check_degrees(&self, max_degree: u32) -> Result<()> {
        for m in (2 * self.k)..=max_degree {
            self.inverse_for(m - 2 * self.k)?;
        }
        Ok(())
    }

    /// `T f_m`: the unique homogeneous `q` of degree `m − 2k` with
    /// `Δᵏ(f_m − P₂ₖ·q) = 0`, or zero when `m < 2k`.
    pub fn apply(&self, f: &HomogeneousPolynomial) -> Result<HomogeneousPolynomial> {
        if f.dim() != self.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: f.dim() });
        }
        let m = f.degree();
        if m < 2 * self.k {
            return Ok(HomogeneousPolynomial::zero(self.dim(), 0));
        }
        let n = m - 2 * self.k;
        if f.is_zero() {
            return Ok(HomogeneousPolynomial::zero(self.dim(), n));
        }
        let inv = self.inverse_for(n)?;
        let rhs = f.laplacian_power(self.k);
        if rhs.is_zero() {
            return Ok(HomogeneousPolynomial::zero(self.dim(), n));
        }
        let q = inv.mul_vec(&rhs.to_dense());
        Ok(HomogeneousPolynomial::from_dense(self.dim(), n, &q))
    }

    /// `T` applied to each graded part.
    pub fn apply_graded(&self, f: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.dim());
        for part in f.graded_parts().values() {
            out.add_homogeneous(&self.apply(part)?)?;
        }
        Ok(out)
    }
}

/// `P = P₂ₖ − Σ_{j≤β} P_j` together with the power `k` of `Δᵏ`.
///
/// Lower parts are stored with positive sign and subtracted when `P` is
/// assembled.
#[derive(Clone, Debug)]
pub struct FischerProblem {
    operator: HomogeneousFischerOperator,
    lower: BTreeMap<u32, HomogeneousPolynomial>,
}

impl FischerProblem {
    pub fn new(
        leading: HomogeneousPolynomial,
        k: u32,
        lower: impl IntoIterator<Item = HomogeneousPolynomial>,
    ) -> Result<Self> {
        Self::from_operator(HomogeneousFischerOperator::new(leading, k)?, lower)
    }

    /// Same leading term with new lower parts; inverses already computed
    /// for this operator are reused.
    pub fn with_lower(&self, lower: impl IntoIterator<Item = HomogeneousPolynomial>) -> Result<Self> {
        Self::from_operator(self.operator.clone(), lower)
    }

    fn from_operator(
        operator: HomogeneousFischerOperator,
        lower: impl IntoIterator<Item = HomogeneousPolynomial>,
    ) -> Result<Self> {
        let k = operator.k();
        let dim = operator.dim();
        let mut parts: BTreeMap<u32, HomogeneousPolynomial> = BTreeMap::new();
        for p in lower {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: p.dim() });
            }
            if p.is_zero() {
                continue;
            }
            if p.degree() >= 2 * k {
                return Err(Error::InvalidProblem(format!(
                    "lower part of degree {} is not below 2k = {}",
                    p.degree(),
                    2 * k
                )));
            }
            let sum = match parts.remove(&p.degree()) {
                Some(existing) => existing.add(&p)?,
                None => p,
            };
            if !sum.is_zero() {
                parts.insert(sum.degree(), sum);
            }
        }
        Ok(FischerProblem { operator, lower: parts })
    }

    /// Splits a full polynomial `P` of degree `2k` into leading and (negated)
    /// lower parts.
    pub fn from_polynomial(p: &Polynomial, k: u32) -> Result<Self> {
        if p.degree() != Some(2 * k) {
            return Err(Error::InvalidProblem(format!(
                "polynomial has degree {:?}, expected 2k = {}",
                p.degree(),
                2 * k
            )));
        }
        let leading = p.part(2 * k);
        let lower = p
            .graded_parts()
            .iter()
            .filter(|(m, _)| **m < 2 * k)
            .map(|(_, part)| part.neg());
        FischerProblem::new(leading, k, lower)
    }

    pub fn dim(&self) -> usize {
        self.operator.dim()
    }

    pub fn k(&self) -> u32 {
        self.operator.k()
    }

    pub fn leading(&self) -> &HomogeneousPolynomial {
        self.operator.leading()
    }

    pub fn lower(&self) -> &BTreeMap<u32, HomogeneousPolynomial> {
        &self.lower
    }

    pub fn operator(&self) -> &HomogeneousFischerOperator {
        &self.operator
    }

    /// Largest degree of a nonzero lower part.
    pub fn beta(&self) -> Option<u32> {
        self.lower.keys().next_back().copied()
    }

    /// `P = P₂ₖ − Σ P_j`
    pub fn polynomial(&self) -> Polynomial {
        let mut p: Polynomial = self.leading().clone().into();
        for part in self.lower.values() {
            p.add_homogeneous(&part.neg()).expect("same dimension");
        }
        p
    }
}

/// Exact residual certificate of a decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    /// `f − P·q − h`
    pub residual: Polynomial,
    /// `Δᵏh`
    pub polyharmonic_defect: Polynomial,
}

impl Certificate {
    pub fn compute(problem: &FischerProblem, f: &Polynomial, q: &Polynomial, h: &Polynomial) -> Result<Self> {
        let residual = f.sub(&problem.polynomial().mul(q)?)?.sub(h)?;
        Ok(Certificate { residual, polyharmonic_defect: h.laplacian_power(problem.k()) })
    }

    pub fn is_exact(&self) -> bool {
        self.residual.is_zero() && self.polyharmonic_defect.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionResult {
    pub quotient: Polynomial,
    pub remainder: Polynomial,
    pub certificate: Certificate,
}

impl DecompositionResult {
    pub fn is_exact(&self) -> bool {
        self.certificate.is_exact()
    }
}

/// Wire form of a [`DecompositionResult`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionJson {
    pub quotient: Polynomial,
    pub remainder: Polynomial,
    pub certificate: CertificateJson,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateJson {
    pub residual: Polynomial,
    pub polyharmonic_defect: Polynomial,
}

impl From<&DecompositionResult> for DecompositionJson {
    fn from(r: &DecompositionResult) -> Self {
        DecompositionJson {
            quotient: r.quotient.clone(),
            remainder: r.remainder.clone(),
            certificate: CertificateJson {
                residual: r.certificate.residual.clone(),
                polyharmonic_defect: r.certificate.polyharmonic_defect.clone(),
            },
            exact: r.is_exact(),
        }
    }
}

/// `T f_m` for the leading term alone.
pub fn fischer_operator_homogeneous(problem: &FischerProblem, f: &HomogeneousPolynomial) -> Result<HomogeneousPolynomial> {
    problem.operator().apply(f)
}

/// Decomposition by induction on the degree: the top pending part `g` of
/// degree `m` splits as `g = P·Tg + Σ_s P_s·Tg + (g − P₂ₖ·Tg)`, and the
/// terms `P_s·Tg` (degree `< m`) are pushed back onto the pending queue.
pub fn decompose_recursive(problem: &FischerProblem, f: &Polynomial) -> Result<DecompositionResult> {
    if f.dim() != problem.dim() {
        return Err(Error::DimensionMismatch { left: problem.dim(), right: f.dim() });
    }
    let op = problem.operator();
    let mut pending: BTreeMap<u32, HomogeneousPolynomial> = f.graded_parts().clone();
    let mut q = Polynomial::zero(f.dim());
    let mut h = Polynomial::zero(f.dim());
    while let Some((_, g)) = pending.pop_last() {
        let t = op.apply(&g)?;
        if t.is_zero() {
            h.add_homogeneous(&g)?;
            continue;
        }
        h.add_homogeneous(&g.sub(&problem.leading().mul(&t)?)?)?;
        for ps in problem.lower().values() {
            let fed = ps.mul(&t)?;
            let deg = fed.degree();
            let merged = match pending.remove(&deg) {
                Some(existing) => existing.add(&fed)?,
                None => fed,
            };
            if !merged.is_zero() {
                pending.insert(deg, merged);
            }
        }
        q.add_homogeneous(&t)?;
    }
    let certificate = Certificate::compute(problem, f, &q, &h)?;
    Ok(DecompositionResult { quotient: q, remainder: h, certificate })
}

/// Result of evaluating the iterated series for one homogeneous input.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesEvaluation {
    /// `T_P(f_m)`
    pub quotient: Polynomial,
    /// Largest `j + 1` (number of `P_s` factors) with a nonzero chain.
    pub max_layers: u32,
    /// Distinct operands for which the tail sum was evaluated.
    pub operands_evaluated: usize,
}

/// `T_P(f_m) = Σ_{j=−1}^{m} Σ_{s₀…s_j} T P_{s_j} ⋯ T P_{s₀} T f_m`, the
/// `j = −1` summand being `T f_m`.
///
/// The tuple tree is walked depth first. The tail sum below a chain value
/// depends only on that value, so it is memoized by operand. Every nonzero
/// chain value is checked against its predicted degree
/// `m − 2k + Σ (s_i − 2k)` and against the layer bound `⌊m/(2k−β)⌋`.
pub fn decompose_series_formula(problem: &FischerProblem, f: &HomogeneousPolynomial) -> Result<SeriesEvaluation> {
    if f.dim() != problem.dim() {
        return Err(Error::DimensionMismatch { left: problem.dim(), right: f.dim() });
    }
    let m = f.degree();
    let two_k = 2 * problem.k();
    let layer_bound = problem.beta().map(|b| m / (two_k - b));
    let mut memo: HashMap<HomogeneousPolynomial, (Polynomial, u32)> = HashMap::new();

    let first = problem.operator().apply(f)?;
    let (sum, layers) = if first.is_zero() {
        (Polynomial::zero(f.dim()), 0)
    } else {
        chain_tail(problem, &first, m as i64 - two_k as i64, &mut memo)?
    };
    if let Some(bound) = layer_bound {
        if layers > bound {
            return Err(Error::BoundViolated(format!(
                "{layers} series layers contribute for degree {m}, bound is {bound}"
            )));
        }
    }
    Ok(SeriesEvaluation { quotient: sum, max_layers: layers, operands_evaluated: memo.len() })
}

/// Returns `x + Σ_s tail(T(P_s·x))` and the deepest nonzero layer count below `x`.
fn chain_tail(
    problem: &FischerProblem,
    x: &HomogeneousPolynomial,
    predicted_degree: i64,
    memo: &mut HashMap<HomogeneousPolynomial, (Polynomial, u32)>,
) -> Result<(Polynomial, u32)> {
    if predicted_degree < 0 || x.degree() as i64 != predicted_degree {
        return Err(Error::BoundViolated(format!(
            "chain value of degree {} where {predicted_degree} was predicted",
            x.degree()
        )));
    }
    if let Some(hit) = memo.get(x) {
        return Ok(hit.clone());
    }
    let two_k = 2 * problem.k() as i64;
    let mut sum: Polynomial = x.clone().into();
    let mut depth = 0;
    for (s, ps) in problem.lower() {
        let next = problem.operator().apply(&ps.mul(x)?)?;
        let next_degree = predicted_degree + *s as i64 - two_k;
        if next.is_zero() {
            continue;
        }
        let (tail, d) = chain_tail(problem, &next, next_degree, memo)?;
        sum = sum.add(&tail)?;
        depth = depth.max(d + 1);
    }
    memo.insert(x.clone(), (sum.clone(), depth));
    Ok((sum, depth))
}

/// Layer `L` is the sum over all tuples of length `L` of
/// `T P_{s_{L−1}} ⋯ T P_{s₀} T f_m`, i.e. `(T∘M_{ΣP_s})^L T f_m`. Trailing
/// zero layers are dropped.
pub fn series_layers(problem: &FischerProblem, f: &HomogeneousPolynomial) -> Result<Vec<Polynomial>> {
    let op = problem.operator();
    let mut layers = Vec::new();
    let mut current: Polynomial = op.apply(f)?.into();
    while !current.is_zero() {
        let mut fed = Polynomial::zero(f.dim());
        for ps in problem.lower().values() {
            fed = fed.add(&current.mul_homogeneous(ps)?)?;
        }
        let next = op.apply_graded(&fed)?;
        layers.push(current);
        current = next;
    }
    Ok(layers)
}

/// Outcome of a randomized check of `‖T f_m‖ ≤ (1/C_{m−2k})‖f_m‖`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormBoundRecord {
    pub degree: u32,
    pub samples: usize,
    /// Largest observed `‖T f_m‖ / ‖f_m‖`.
    pub worst_ratio: f64,
    /// `1 / C_{m−2k}`
    pub bound: f64,
    pub violations: usize,
}

/// Samples random real `f_m` and checks `‖Tf‖² · C² ≤ ‖f‖²` exactly.
///
/// `constant` is `C_{m−2k}`. Passing a rational upper bound of an
/// irrational constant keeps the check rigorous.
pub fn operator_norm_bound<R: Rng>(
    problem: &FischerProblem,
    m: u32,
    constant: &Rational,
    samples: usize,
    rng: &mut R,
) -> Result<NormBoundRecord> {
    if !problem.lower().is_empty() {
        return Err(Error::InvalidProblem("norm bound applies to the homogeneous leading term only".into()));
    }
    let c2 = constant * constant;
    let mut worst = 0.0f64;
    let mut violations = 0;
    for _ in 0..samples {
        let f = random::homogeneous(rng, problem.dim(), m, 4);
        if f.is_zero() {
            continue;
        }
        let t = problem.operator().apply(&f)?;
        let tn = homogeneous_norm_sq(&t);
        let fnorm = homogeneous_norm_sq(&f);
        if &tn * &c2 > fnorm {
            violations += 1;
        }
        if !tn.is_zero() {
            worst = worst.max(rational_to_f64(&(tn / fnorm)).sqrt());
        }
    }
    let record = NormBoundRecord {
        degree: m,
        samples,
        worst_ratio: worst,
        bound: 1.0 / rational_to_f64(constant),
        violations,
    };
    if violations > 0 {
        return Err(Error::BoundViolated(format!(
            "{violations} of {samples} samples exceed 1/C at degree {m} (worst ratio {worst})"
        )));
    }
    Ok(record)
}

/// Whether `q ↦ Δᵏ(P₂ₖ q)` is injective on degree `n`, i.e. its matrix has full rank.
pub fn is_fischer_pair_on_degree(op: &HomogeneousFischerOperator, n: u32) -> bool {
    op.inverse_for(n).is_ok()
}
