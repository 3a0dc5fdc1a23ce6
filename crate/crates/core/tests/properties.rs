//! Algebraic invariants over randomized inputs.

use fischer_core::coeff::{rat, Coeff};
use fischer_core::fischer::{decompose_recursive, decompose_series_formula, FischerProblem};
use fischer_core::sphere::{gauss_decompose, homogeneous_norm_sq, sphere_norm_sq};
use fischer_core::{HomogeneousPolynomial, MultiIndex, Polynomial, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn poly_strategy(dim: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, dim), -6i64..=6, -2i64..=2), 0..max_terms).prop_map(
        move |terms| {
            let mut p = Polynomial::zero(dim);
            for (e, re, im) in terms {
                p.add_term(MultiIndex::new(e), Coeff::new(rat(re), rat(im)));
            }
            p
        },
    )
}

fn homogeneous_strategy(dim: usize, degree: u32) -> impl Strategy<Value = HomogeneousPolynomial> {
    let basis = MultiIndex::all_of_degree(dim, degree);
    prop::collection::vec(-5i64..=5, basis.len()).prop_map(move |c| {
        let values: Vec<Coeff> = c.into_iter().map(Coeff::from_int).collect();
        HomogeneousPolynomial::from_dense(dim, degree, &values)
    })
}

fn x2_squared_problem(lower: &[i64; 3]) -> FischerProblem {
    let leading = HomogeneousPolynomial::monomial(MultiIndex::new(vec![0, 2]), Coeff::one());
    let p0 = HomogeneousPolynomial::constant(2, Coeff::from_int(lower[0]));
    let p1 = HomogeneousPolynomial::var(2, 0)
        .scale(&Coeff::from_int(lower[1]))
        .add(&HomogeneousPolynomial::var(2, 1).scale(&Coeff::from_int(lower[2])))
        .unwrap();
    FischerProblem::new(leading, 1, [p0, p1]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    // [P·f, g] = [f, P*(D) g]
    #[test]
    fn multiplication_and_differentiation_are_adjoint(
        p in poly_strategy(2, 2, 4),
        f in poly_strategy(2, 3, 6),
        g in poly_strategy(2, 5, 8),
    ) {
        let lhs = p.mul(&f).unwrap().fischer_inner_product(&g).unwrap();
        let rhs = f.fischer_inner_product(&Polynomial::apply_operator(&p.conj(), &g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn operators_compose(p in poly_strategy(3, 2, 3), q in poly_strategy(3, 2, 3), f in poly_strategy(3, 4, 8)) {
        let nested = Polynomial::apply_operator(&p, &Polynomial::apply_operator(&q, &f).unwrap()).unwrap();
        let product = Polynomial::apply_operator(&p.mul(&q).unwrap(), &f).unwrap();
        prop_assert_eq!(nested, product);
    }

    #[test]
    fn inner_product_is_hermitian(f in poly_strategy(2, 4, 6), g in poly_strategy(2, 4, 6)) {
        let a = f.fischer_inner_product(&g).unwrap();
        let b = g.fischer_inner_product(&f).unwrap();
        prop_assert_eq!(a, b.conj());
        let n = f.fischer_inner_product(&f).unwrap();
        prop_assert!(n.im.is_zero() && n.re >= Rational::zero());
    }

    // Harmonic pieces of different degree are orthogonal on the sphere.
    #[test]
    fn gauss_decomposition_is_parseval(f in homogeneous_strategy(3, 6)) {
        let dec = gauss_decompose(&f).unwrap();
        prop_assert_eq!(&dec.reassemble(), &f);
        let total: Rational = dec.harmonics.iter().map(homogeneous_norm_sq).sum();
        prop_assert_eq!(total, sphere_norm_sq(&f.clone().into()));
        for h in &dec.harmonics {
            prop_assert!(h.laplacian().is_zero());
        }
    }

    #[test]
    fn decomposition_is_exact(f in poly_strategy(2, 7, 10), lower in [-3i64..=3, -3i64..=3, -3i64..=3]) {
        let problem = x2_squared_problem(&lower);
        let r = decompose_recursive(&problem, &f).unwrap();
        prop_assert!(r.is_exact());
        prop_assert!(r.remainder.laplacian().is_zero());
    }

    #[test]
    fn decomposition_is_linear(
        f in poly_strategy(2, 6, 8),
        g in poly_strategy(2, 6, 8),
        s in -4i64..=4,
        lower in [-2i64..=2, -2i64..=2, -2i64..=2],
    ) {
        let problem = x2_squared_problem(&lower);
        let c = Coeff::from_int(s);
        let combined = f.add(&g.scale(&c)).unwrap();
        let a = decompose_recursive(&problem, &f).unwrap();
        let b = decompose_recursive(&problem, &g).unwrap();
        let ab = decompose_recursive(&problem, &combined).unwrap();
        prop_assert_eq!(ab.quotient, a.quotient.add(&b.quotient.scale(&c)).unwrap());
        prop_assert_eq!(ab.remainder, a.remainder.add(&b.remainder.scale(&c)).unwrap());
    }

    #[test]
    fn series_formula_matches_recursion(f in homogeneous_strategy(2, 8), lower in [-2i64..=2, -2i64..=2, -2i64..=2]) {
        let problem = x2_squared_problem(&lower);
        let series = decompose_series_formula(&problem, &f).unwrap();
        let rec = decompose_recursive(&problem, &f.clone().into()).unwrap();
        prop_assert_eq!(series.quotient, rec.quotient);
        if problem.beta().is_some() {
            prop_assert!(series.max_layers <= 8 / (2 - problem.beta().unwrap()));
        }
    }

    #[test]
    fn polynomial_json_round_trip(f in poly_strategy(3, 4, 10)) {
        let s = serde_json::to_string(&f).unwrap();
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn homogeneous_data_unique_for_homogeneous_problem(f in homogeneous_strategy(2, 6)) {
        // For P = x₂² alone, q and h of a homogeneous f are homogeneous.
        let problem = x2_squared_problem(&[0, 0, 0]);
        let r = decompose_recursive(&problem, &f.into()).unwrap();
        prop_assert!(r.quotient.graded_parts().keys().all(|&m| m == 4));
        prop_assert!(r.remainder.graded_parts().keys().all(|&m| m == 6));
        prop_assert!(r.is_exact());
    }
}
