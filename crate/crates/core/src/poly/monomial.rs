use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

/// Exponent vector `α` of the monomial `x^α = x₁^{α₁}⋯x_d^{α_d}`.
///
/// Ordered graded-lexicographically: by total degree first, then so that
/// `x₁²` precedes `x₁x₂` precedes `x₂²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        assert!(!exponents.is_empty(), "multi-index needs dimension >= 1");
        MultiIndex(exponents)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex::new(vec![0; dim])
    }

    /// `e_i` scaled by `power`.
    pub fn unit(dim: usize, i: usize, power: u32) -> Self {
        let mut e = vec![0; dim];
        e[i] = power;
        MultiIndex::new(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `|α|`
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_even(&self) -> bool {
        self.0.iter().all(|e| e % 2 == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `α − γ`, or `None` when some `γ_i > α_i`.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// `α!`
    pub fn factorial(&self) -> BigUint {
        self.0.iter().map(|&e| factorial(e)).product()
    }

    /// `α!/(α−γ)!`, the constant produced by `∂^γ x^α`.
    pub fn falling_factorial(&self, gamma: &MultiIndex) -> BigUint {
        self.0
            .iter()
            .zip(&gamma.0)
            .map(|(&a, &g)| ((a - g + 1)..=a).fold(BigUint::one(), |acc, v| acc * v))
            .product()
    }

    /// Every multi-index of dimension `dim` and total degree `degree`, in
    /// canonical order.
    pub fn all_of_degree(dim: usize, degree: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut current = vec![0u32; dim];
        fill(&mut out, &mut current, 0, degree);
        out
    }
}

fn fill(out: &mut Vec<MultiIndex>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(MultiIndex(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, v| acc * v)
}

/// Number of monomials of degree `m` in `d` variables, `C(m+d−1, d−1)`.
pub fn homogeneous_dimension(dim: usize, degree: u32) -> usize {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 1..dim as u128 {
        num *= degree as u128 + i;
        den *= i;
    }
    (num / den) as usize
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        for d in 1..=4 {
            for m in 0..=7 {
                let all = MultiIndex::all_of_degree(d, m);
                assert_eq!(all.len(), homogeneous_dimension(d, m));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                assert!(all.iter().all(|a| a.degree() == m));
            }
        }
    }

    #[test]
    fn canonical_order() {
        let a = MultiIndex::new(vec![2, 0]);
        let b = MultiIndex::new(vec![1, 1]);
        let c = MultiIndex::new(vec![0, 2]);
        let lin = MultiIndex::new(vec![0, 1]);
        assert!(lin < a && a < b && b < c);
    }

    #[test]
    fn factorials() {
        let a = MultiIndex::new(vec![3, 2]);
        assert_eq!(a.factorial(), BigUint::from(12u32));
        let g = MultiIndex::new(vec![1, 2]);
        assert_eq!(a.falling_factorial(&g), BigUint::from(6u32));
    }
}
