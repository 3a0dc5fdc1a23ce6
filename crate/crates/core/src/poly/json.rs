use serde::{Deserialize, Serialize};

use super::monomial::MultiIndex;
use super::polynomial::Polynomial;
use crate::coeff::{parse_rational, Coeff};
use crate::error::{Error, Result};

/// Wire form of a polynomial:
/// `{ "dimension": d, "terms": [ { "exponents": [..], "re": "p/q", "im": "p/q" } ] }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialJson {
    pub dimension: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
}

fn zero_string() -> String {
    "0".to_string()
}

impl From<&Polynomial> for PolynomialJson {
    fn from(p: &Polynomial) -> Self {
        // Terms are emitted in canonical graded-lex order.
        PolynomialJson {
            dimension: p.dim(),
            terms: p
                .terms()
                .map(|(alpha, c)| TermJson {
                    exponents: alpha.exponents().to_vec(),
                    re: c.re.to_string(),
                    im: c.im.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&PolynomialJson> for Polynomial {
    type Error = Error;

    fn try_from(j: &PolynomialJson) -> Result<Self> {
        if j.dimension == 0 {
            return Err(Error::Parse("dimension must be positive".into()));
        }
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.exponents.len() != j.dimension {
                return Err(Error::Parse(format!(
                    "exponent array of length {} in dimension {}",
                    t.exponents.len(),
                    j.dimension
                )));
            }
            let c = Coeff::new(parse_rational(&t.re)?, parse_rational(&t.im)?);
            terms.push((MultiIndex::new(t.exponents.clone()), c));
        }
        Polynomial::from_terms(j.dimension, terms)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolynomialJson::deserialize(d)?;
        Polynomial::try_from(&j).map_err(serde::de::Error::custom)
    }
}
