use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::homogeneous::HomogeneousPolynomial;
use super::monomial::MultiIndex;
use crate::coeff::{Coeff, Rational};
use crate::error::{Error, Result};

/// A polynomial stored as its graded components. Only nonzero parts are kept,
/// so `parts` is exactly the unique graded decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    dim: usize,
    parts: BTreeMap<u32, HomogeneousPolynomial>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        Polynomial { dim, parts: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Coeff) -> Self {
        HomogeneousPolynomial::constant(dim, c).into()
    }

    pub fn one(dim: usize) -> Self {
        Polynomial::constant(dim, Coeff::one())
    }

    pub fn var(dim: usize, i: usize) -> Self {
        HomogeneousPolynomial::var(dim, i).into()
    }

    pub fn monomial(alpha: MultiIndex, c: Coeff) -> Self {
        HomogeneousPolynomial::monomial(alpha, c).into()
    }

    /// Builds from arbitrary `(exponents, coefficient)` pairs of any degree.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Coeff)>,
    {
        let mut p = Polynomial::zero(dim);
        for (alpha, c) in terms {
            if alpha.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: alpha.dim() });
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    /// Convenience for tests and fixtures: integer coefficients.
    pub fn from_int_terms(dim: usize, terms: &[(&[u32], i64)]) -> Self {
        Polynomial::from_terms(
            dim,
            terms.iter().map(|(e, c)| (MultiIndex::new(e.to_vec()), Coeff::from_int(*c))),
        )
        .expect("well-formed fixture")
    }

    pub fn from_parts<I: IntoIterator<Item = HomogeneousPolynomial>>(dim: usize, parts: I) -> Result<Self> {
        let mut p = Polynomial::zero(dim);
        for part in parts {
            p.add_homogeneous(&part)?;
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.parts.keys().next_back().copied()
    }

    /// Graded components keyed by degree; `Σ parts = self`.
    pub fn graded_parts(&self) -> &BTreeMap<u32, HomogeneousPolynomial> {
        &self.parts
    }

    pub fn into_parts(self) -> BTreeMap<u32, HomogeneousPolynomial> {
        self.parts
    }

    /// The degree-`m` component, zero if absent.
    pub fn part(&self, m: u32) -> HomogeneousPolynomial {
        self.parts
            .get(&m)
            .cloned()
            .unwrap_or_else(|| HomogeneousPolynomial::zero(self.dim, m))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Coeff)> {
        self.parts.values().flat_map(|p| p.terms())
    }

    pub fn term_count(&self) -> usize {
        self.parts.values().map(|p| p.len()).sum()
    }

    pub fn is_real(&self) -> bool {
        self.parts.values().all(HomogeneousPolynomial::is_real)
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: Coeff) {
        let m = alpha.degree();
        let part = self
            .parts
            .entry(m)
            .or_insert_with(|| HomogeneousPolynomial::zero(alpha.dim(), m));
        part.add_term(alpha, c);
        if part.is_zero() {
            self.parts.remove(&m);
        }
    }

    pub fn add_homogeneous(&mut self, h: &HomogeneousPolynomial) -> Result<()> {
        if h.dim() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: h.dim() });
        }
        if h.is_zero() {
            return Ok(());
        }
        let m = h.degree();
        let sum = match self.parts.get(&m) {
            Some(existing) => existing.add(h)?,
            None => h.clone(),
        };
        if sum.is_zero() {
            self.parts.remove(&m);
        } else {
            self.parts.insert(m, sum);
        }
        Ok(())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for part in other.parts.values() {
            out.add_homogeneous(part)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_parts(HomogeneousPolynomial::neg)
    }

    /// Coefficient-wise complex conjugate, the `P*` of the Fischer pairing.
    pub fn conj(&self) -> Self {
        self.map_parts(HomogeneousPolynomial::conj)
    }

    pub fn scale(&self, s: &Coeff) -> Self {
        if s.is_zero() {
            return Polynomial::zero(self.dim);
        }
        self.map_parts(|p| p.scale(s))
    }

    pub fn scale_rational(&self, s: &Rational) -> Self {
        self.scale(&Coeff::real(s.clone()))
    }

    fn map_parts<F: Fn(&HomogeneousPolynomial) -> HomogeneousPolynomial>(&self, f: F) -> Self {
        Polynomial {
            dim: self.dim,
            parts: self
                .parts
                .iter()
                .map(|(m, p)| (*m, f(p)))
                .filter(|(_, p)| !p.is_zero())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Polynomial::zero(self.dim);
        for a in self.parts.values() {
            for b in other.parts.values() {
                out.add_homogeneous(&a.mul(b)?)?;
            }
        }
        Ok(out)
    }

    pub fn mul_homogeneous(&self, h: &HomogeneousPolynomial) -> Result<Self> {
        if h.dim() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: h.dim() });
        }
        let mut out = Polynomial::zero(self.dim);
        for a in self.parts.values() {
            out.add_homogeneous(&a.mul(h)?)?;
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Polynomial::one(self.dim), |acc, _| acc.mul(self).expect("same dimension"))
    }

    /// `Q(D)f`: every `x_j` of `Q` becomes `∂/∂x_j`. Coefficients of `Q` are
    /// used as given; pass `Q.conj()` where `Q*(D)` is wanted.
    pub fn apply_operator(q: &Polynomial, f: &Polynomial) -> Result<Polynomial> {
        q.check_dim(f)?;
        let mut out = Polynomial::zero(f.dim);
        for (gamma, c) in q.terms() {
            for part in f.parts.values() {
                let d = part.differentiate(gamma);
                if !d.is_zero() {
                    out.add_homogeneous(&d.scale(c))?;
                }
            }
        }
        Ok(out)
    }

    pub fn laplacian(&self) -> Self {
        let mut out = Polynomial::zero(self.dim);
        for p in self.parts.values() {
            out.add_homogeneous(&p.laplacian()).expect("same dimension");
        }
        out
    }

    /// `Δᵏf`.
    pub fn laplacian_power(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |acc, _| acc.laplacian())
    }

    /// Fischer inner product `[P, Q]_F = Σ_α α!·c_α·conj(d_α)`.
    pub fn fischer_inner_product(&self, other: &Polynomial) -> Result<Coeff> {
        self.check_dim(other)?;
        let mut acc = Coeff::zero();
        for (m, p) in &self.parts {
            let Some(q) = other.parts.get(m) else { continue };
            for (alpha, c) in p.terms() {
                let d = q.coeff(alpha);
                if d.is_zero() {
                    continue;
                }
                let fact = Rational::from_integer(alpha.factorial().into());
                acc += &(c * &d.conj()).scale(&fact);
            }
        }
        Ok(acc)
    }

    /// Evaluates at a real point; parts are summed in increasing degree with
    /// compensated summation.
    pub fn eval(&self, x: &[f64]) -> (f64, f64) {
        assert_eq!(x.len(), self.dim);
        let mut re = super::Neumaier::default();
        let mut im = super::Neumaier::default();
        for p in self.parts.values() {
            let (r, i) = p.eval(x);
            re.add(r);
            im.add(i);
        }
        (re.sum(), im.sum())
    }

    pub fn eval_real(&self, x: &[f64]) -> f64 {
        self.eval(x).0
    }
}

impl From<HomogeneousPolynomial> for Polynomial {
    fn from(h: HomogeneousPolynomial) -> Self {
        let mut p = Polynomial::zero(h.dim());
        p.add_homogeneous(&h).expect("same dimension");
        p
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::fmt_terms(f, self.parts.values().rev().flat_map(|p| p.terms()))
    }
}
