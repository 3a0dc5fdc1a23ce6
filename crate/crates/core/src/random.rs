//! Seeded random fixtures for property checks and the verification suite.

use rand::Rng;

use crate::coeff::{ratio, Coeff};
use crate::poly::{HomogeneousPolynomial, MultiIndex, Polynomial};

/// Default seed for every randomized check.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Small random rational `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ 3`.
pub fn small_rational<R: Rng>(rng: &mut R, bound: i64) -> Coeff {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=3);
    Coeff::real(ratio(p, q))
}

/// Random real homogeneous polynomial; each monomial is present with
/// probability ½ (at least one is kept).
pub fn homogeneous<R: Rng>(rng: &mut R, dim: usize, degree: u32, bound: i64) -> HomogeneousPolynomial {
    let basis = MultiIndex::all_of_degree(dim, degree);
    let mut p = HomogeneousPolynomial::zero(dim, degree);
    for alpha in &basis {
        if rng.gen_bool(0.5) {
            p.add_term(alpha.clone(), small_rational(rng, bound));
        }
    }
    if p.is_zero() {
        let i = rng.gen_range(0..basis.len());
        p.add_term(basis[i].clone(), Coeff::from_int(rng.gen_range(1..=bound.max(1))));
    }
    p
}

/// Random real polynomial with parts of degree `0..=max_degree`, each part
/// present with probability ½.
pub fn polynomial<R: Rng>(rng: &mut R, dim: usize, max_degree: u32, bound: i64) -> Polynomial {
    let mut p = Polynomial::zero(dim);
    for m in 0..=max_degree {
        if rng.gen_bool(0.5) {
            p.add_homogeneous(&homogeneous(rng, dim, m, bound)).expect("same dimension");
        }
    }
    p
}

/// Random positive-definite quadratic form `Σ x_i²·a_i + Σ_{i<j} b_ij x_i x_j`,
/// made diagonally dominant so it is elliptic.
pub fn positive_definite_quadratic<R: Rng>(rng: &mut R, dim: usize) -> HomogeneousPolynomial {
    let mut p = HomogeneousPolynomial::zero(dim, 2);
    let mut off = vec![vec![0i64; dim]; dim];
    for i in 0..dim {
        for j in (i + 1)..dim {
            off[i][j] = rng.gen_range(-3..=3);
        }
    }
    for i in 0..dim {
        // x_i² coefficient a gives diagonal a; x_i x_j coefficient b gives b/2 off-diagonal.
        let row: i64 = (0..dim).filter(|&j| j != i).map(|j| off[i.min(j)][i.max(j)].abs()).sum();
        let a = row + rng.gen_range(1..=4);
        p.add_term(MultiIndex::unit(dim, i, 2), Coeff::from_int(a));
        for j in (i + 1)..dim {
            let mut e = vec![0; dim];
            e[i] = 1;
            e[j] = 1;
            p.add_term(MultiIndex::new(e), Coeff::from_int(off[i][j]));
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn deterministic_under_seed() {
        let a = polynomial(&mut ChaCha8Rng::seed_from_u64(7), 2, 6, 5);
        let b = polynomial(&mut ChaCha8Rng::seed_from_u64(7), 2, 6, 5);
        assert_eq!(a, b);
    }

    #[test]
    fn quadratic_is_positive_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let q = positive_definite_quadratic(&mut rng, 3);
            for x in crate::sphere::sphere_samples(3).iter().step_by(997) {
                assert!(q.eval(x).0 > 0.0);
            }
        }
    }
}
