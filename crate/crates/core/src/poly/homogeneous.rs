use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::monomial::MultiIndex;
use crate::coeff::{Coeff, Rational};
use crate::error::{Error, Result};

/// Homogeneous polynomial of fixed degree. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousPolynomial {
    dim: usize,
    degree: u32,
    terms: BTreeMap<MultiIndex, Coeff>,
}

impl HomogeneousPolynomial {
    pub fn zero(dim: usize, degree: u32) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        HomogeneousPolynomial { dim, degree, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Coeff) -> Self {
        let mut p = HomogeneousPolynomial::zero(dim, 0);
        p.add_term(MultiIndex::zero(dim), c);
        p
    }

    pub fn monomial(alpha: MultiIndex, c: Coeff) -> Self {
        let mut p = HomogeneousPolynomial::zero(alpha.dim(), alpha.degree());
        p.add_term(alpha, c);
        p
    }

    /// `x_{i+1}` (zero-based variable index).
    pub fn var(dim: usize, i: usize) -> Self {
        HomogeneousPolynomial::monomial(MultiIndex::unit(dim, i, 1), Coeff::one())
    }

    /// `|x|² = x₁² + ⋯ + x_d²`
    pub fn norm_squared(dim: usize) -> Self {
        let mut p = HomogeneousPolynomial::zero(dim, 2);
        for i in 0..dim {
            p.add_term(MultiIndex::unit(dim, i, 2), Coeff::one());
        }
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, all of the same degree.
    pub fn from_terms<I>(dim: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Coeff)>,
    {
        let mut p = HomogeneousPolynomial::zero(dim, degree);
        for (alpha, c) in terms {
            if alpha.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: alpha.dim() });
            }
            if alpha.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: alpha.degree() });
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Coeff {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(Coeff::is_real)
    }

    /// Adds `c·x^α`, dropping the entry if it cancels.
    pub fn add_term(&mut self, alpha: MultiIndex, c: Coeff) {
        debug_assert_eq!(alpha.degree(), self.degree);
        debug_assert_eq!(alpha.dim(), self.dim);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn conj(&self) -> Self {
        self.map_coeffs(Coeff::conj)
    }

    pub fn scale(&self, s: &Coeff) -> Self {
        if s.is_zero() {
            return HomogeneousPolynomial::zero(self.dim, self.degree);
        }
        self.map_coeffs(|c| c * s)
    }

    pub fn scale_rational(&self, s: &Rational) -> Self {
        self.scale(&Coeff::real(s.clone()))
    }

    fn map_coeffs<F: Fn(&Coeff) -> Coeff>(&self, f: F) -> Self {
        HomogeneousPolynomial {
            dim: self.dim,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let mut out = HomogeneousPolynomial::zero(self.dim, self.degree + other.degree);
        for (a, c) in &self.terms {
            for (b, e) in &other.terms {
                out.add_term(a.add(b), c * e);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = HomogeneousPolynomial::constant(self.dim, Coeff::one());
        for _ in 0..n {
            acc = acc.mul(self).expect("same dimension");
        }
        acc
    }

    /// `∂^γ` applied to this polynomial.
    pub fn differentiate(&self, gamma: &MultiIndex) -> Self {
        let g = gamma.degree();
        if g > self.degree {
            return HomogeneousPolynomial::zero(self.dim, 0);
        }
        let mut out = HomogeneousPolynomial::zero(self.dim, self.degree - g);
        for (a, c) in &self.terms {
            if let Some(rest) = a.checked_sub(gamma) {
                let factor = Rational::from_integer(a.falling_factorial(gamma).into());
                out.add_term(rest, c.scale(&factor));
            }
        }
        out
    }

    /// `Δf`; a polynomial of degree below 2 maps to the zero polynomial of degree 0.
    pub fn laplacian(&self) -> Self {
        if self.degree < 2 {
            return HomogeneousPolynomial::zero(self.dim, 0);
        }
        let mut out = HomogeneousPolynomial::zero(self.dim, self.degree - 2);
        for (a, c) in &self.terms {
            for i in 0..self.dim {
                let e = a.get(i);
                if e >= 2 {
                    let mut exps = a.exponents().to_vec();
                    exps[i] -= 2;
                    let factor = Rational::from_integer(((e * (e - 1)) as i64).into());
                    out.add_term(MultiIndex::new(exps), c.scale(&factor));
                }
            }
        }
        out
    }

    pub fn laplacian_power(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |acc, _| acc.laplacian())
    }

    /// Evaluates at a real point using compensated summation.
    pub fn eval(&self, x: &[f64]) -> (f64, f64) {
        let mut re = super::Neumaier::default();
        let mut im = super::Neumaier::default();
        for (a, c) in &self.terms {
            let mono: f64 = a
                .exponents()
                .iter()
                .zip(x)
                .map(|(&e, &xi)| xi.powi(e as i32))
                .product();
            let (cr, ci) = c.to_f64_pair();
            re.add(cr * mono);
            if ci != 0.0 {
                im.add(ci * mono);
            }
        }
        (re.sum(), im.sum())
    }

    /// Dense coefficient vector over [`MultiIndex::all_of_degree`].
    pub fn to_dense(&self) -> Vec<Coeff> {
        MultiIndex::all_of_degree(self.dim, self.degree)
            .iter()
            .map(|a| self.coeff(a))
            .collect()
    }

    pub fn from_dense(dim: usize, degree: u32, values: &[Coeff]) -> Self {
        let basis = MultiIndex::all_of_degree(dim, degree);
        assert_eq!(basis.len(), values.len());
        let mut p = HomogeneousPolynomial::zero(dim, degree);
        for (a, c) in basis.into_iter().zip(values) {
            p.add_term(a, c.clone());
        }
        p
    }
}

impl fmt::Display for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::fmt_terms(f, self.terms.iter())
    }
}
