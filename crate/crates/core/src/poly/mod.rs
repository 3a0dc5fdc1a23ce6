//! Exact multivariate polynomial algebra over complex rationals.
//!
//! - [`MultiIndex`]: exponent vectors with graded-lex order
//! - [`HomogeneousPolynomial`]: fixed-degree sparse polynomials
//! - [`Polynomial`]: graded sum of homogeneous parts
//! - [`PolynomialJson`]: the `{dimension, terms}` interchange format

mod homogeneous;
mod json;
mod monomial;
mod polynomial;

use std::fmt;

use num_traits::{One, Signed};

pub use homogeneous::HomogeneousPolynomial;
pub use json::{PolynomialJson, TermJson};
pub use monomial::{factorial, homogeneous_dimension, MultiIndex};
pub use polynomial::Polynomial;

use crate::coeff::Coeff;

/// Neumaier (improved Kahan) summation.
#[derive(Default, Clone, Copy, Debug)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn sum(&self) -> f64 {
        self.sum + self.comp
    }
}

fn fmt_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (&'a MultiIndex, &'a Coeff)>,
{
    let mut first = true;
    for (alpha, c) in terms {
        let constant = alpha.degree() == 0;
        if c.is_real() {
            let neg = c.re.is_negative();
            let mag = c.re.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            if constant {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{alpha}")?;
            } else {
                write!(f, "{mag}*{alpha}")?;
            }
        } else {
            if !first {
                write!(f, " + ")?;
            }
            if constant {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{alpha}")?;
            }
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}
