//! Exact `L²(S^{d−1})` inner products of polynomials.
//!
//! Every integral is stored as a rational multiple of the surface area
//! `ω_{d−1}`; `ω` itself is only evaluated when a float is requested. The
//! closed form for a monomial with all exponents even is
//!
//! ```text
//! ∫ θ^α dθ / ω_{d−1} = Π (α_i − 1)!! / Π_{j<|α|/2} (d + 2j)
//! ```
//!
//! and the integral vanishes as soon as one exponent is odd.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coeff::{rational_to_f64, rat, Coeff, Rational};
use crate::error::{Error, Result};
use crate::fischer::HomogeneousFischerOperator;
use crate::poly::{HomogeneousPolynomial, MultiIndex, Polynomial};

/// Surface area `ω_{d−1} = 2π^{d/2}/Γ(d/2)` of the unit sphere in `R^d`.
pub fn omega(dim: usize) -> f64 {
    // ω_0 = 2, ω_1 = 2π, ω_{d+1} = 2π/d · ω_{d−1}
    let mut w = if dim % 2 == 1 { 2.0 } else { 2.0 * PI };
    let mut d = if dim % 2 == 1 { 1 } else { 2 };
    while d < dim {
        w *= 2.0 * PI / d as f64;
        d += 2;
    }
    w
}

/// `∫_{S^{d−1}} θ^α dθ` as an exact multiple of `ω_{d−1}`, with `d = α.dim()`.
pub fn monomial_sphere_integral(alpha: &MultiIndex) -> Rational {
    if !alpha.is_even() {
        return Rational::zero();
    }
    let d = alpha.dim() as i64;
    let mut num = BigInt::one();
    for &e in alpha.exponents() {
        let mut k = e as i64 - 1;
        while k > 1 {
            num *= k;
            k -= 2;
        }
    }
    let mut den = BigInt::one();
    for j in 0..(alpha.degree() / 2) as i64 {
        den *= d + 2 * j;
    }
    Rational::new(num, den)
}

/// A sphere integral stored as `multiple · ω_{d−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereInnerProductValue {
    pub dim: usize,
    pub multiple: Coeff,
}

impl SphereInnerProductValue {
    /// Real part of the represented value as a float (`multiple.re · ω`).
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.multiple.re) * omega(self.dim)
    }
}

/// `∫_{S^{d−1}} f dθ / ω_{d−1}`.
pub fn sphere_mean(f: &Polynomial) -> Coeff {
    let mut acc = Coeff::zero();
    for (alpha, c) in f.terms() {
        let w = monomial_sphere_integral(alpha);
        if !w.is_zero() {
            acc += &c.scale(&w);
        }
    }
    acc
}

/// `⟨f, g⟩ = ∫ f · conj(g) dθ`, exact.
pub fn sphere_inner_product(f: &Polynomial, g: &Polynomial) -> Result<SphereInnerProductValue> {
    let prod = f.mul(&g.conj())?;
    Ok(SphereInnerProductValue { dim: f.dim(), multiple: sphere_mean(&prod) })
}

/// `‖f‖²_{L²(S^{d−1})} / ω_{d−1}`, a non-negative rational.
pub fn sphere_norm_sq(f: &Polynomial) -> Rational {
    sphere_inner_product(f, f).expect("same dimension").multiple.re
}

pub fn homogeneous_norm_sq(f: &HomogeneousPolynomial) -> Rational {
    sphere_norm_sq(&f.clone().into())
}

/// Which trigonometric function a circle harmonic restricts to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trig {
    Cos,
    Sin,
}

/// `Y_{κ,s}` on `S¹`: the harmonic polynomial `Re (x₁+ix₂)^κ` or
/// `Im (x₁+ix₂)^κ` together with its normalization `c`, kept as `c²·π`.
///
/// `Y_{κ,0} = cos κt/√π`, `Y_{κ,1} = sin κt/√π` for `κ ≥ 1`,
/// `Y_{0,0} = 1/√(2π)` and `Y_{0,1} = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleHarmonic {
    pub kappa: u32,
    pub kind: Trig,
    pub polynomial: HomogeneousPolynomial,
    pub norm_sq_times_pi: Rational,
}

impl CircleHarmonic {
    pub fn is_zero(&self) -> bool {
        self.polynomial.is_zero()
    }

    /// `⟨Y_a, Y_b⟩` returned as `(sign, value²)`; exact even when the value
    /// carries a `√2`.
    pub fn inner(&self, other: &CircleHarmonic) -> (i8, Rational) {
        let raw = sphere_inner_product(&self.polynomial.clone().into(), &other.polynomial.clone().into())
            .expect("both in d = 2")
            .multiple
            .re;
        if raw.is_zero() {
            return (0, Rational::zero());
        }
        // value = c_a c_b · raw · 2π, with c_a² = n_a/π
        let sq = &self.norm_sq_times_pi * &other.norm_sq_times_pi * &raw * &raw * rat(4);
        (if raw.is_negative() { -1 } else { 1 }, sq)
    }
}

/// `Re (x₁ + i x₂)^κ` and `Im (x₁ + i x₂)^κ`.
pub fn complex_power_parts(kappa: u32) -> (HomogeneousPolynomial, HomogeneousPolynomial) {
    let z = HomogeneousPolynomial::var(2, 0)
        .add(&HomogeneousPolynomial::var(2, 1).scale(&Coeff::i()))
        .expect("d = 2");
    let p = z.pow(kappa);
    let mut re = HomogeneousPolynomial::zero(2, kappa);
    let mut im = HomogeneousPolynomial::zero(2, kappa);
    for (alpha, c) in p.terms() {
        re.add_term(alpha.clone(), Coeff::real(c.re.clone()));
        im.add_term(alpha.clone(), Coeff::real(c.im.clone()));
    }
    (re, im)
}

/// `(Y_{κ,0}, Y_{κ,1})` on the unit circle.
pub fn circle_harmonic_basis(kappa: u32) -> (CircleHarmonic, CircleHarmonic) {
    let (re, im) = complex_power_parts(kappa);
    let (n0, n1) = if kappa == 0 { (Rational::new(1.into(), 2.into()), Rational::zero()) } else { (rat(1), rat(1)) };
    (
        CircleHarmonic { kappa, kind: Trig::Cos, polynomial: re, norm_sq_times_pi: n0 },
        CircleHarmonic { kappa, kind: Trig::Sin, polynomial: im, norm_sq_times_pi: n1 },
    )
}

/// `f_{2m} = Σ_l h_{2l}·|x|^{2m−2l}` with every `h_{2l}` harmonic.
#[derive(Clone, Debug, PartialEq)]
pub struct AlmansiDecomposition {
    /// `harmonics[l]` is `h_{2l}`.
    pub harmonics: Vec<HomogeneousPolynomial>,
}

impl AlmansiDecomposition {
    /// `Σ h_{2l}·|x|^{2m−2l}`
    pub fn reassemble(&self) -> HomogeneousPolynomial {
        let m = self.harmonics.len() as u32 - 1;
        let dim = self.harmonics[0].dim();
        let r2 = HomogeneousPolynomial::norm_squared(dim);
        let mut acc = HomogeneousPolynomial::zero(dim, 2 * m);
        for (l, h) in self.harmonics.iter().enumerate() {
            let term = h.mul(&r2.pow(m - l as u32)).expect("same dimension");
            acc = acc.add(&term).expect("same degree");
        }
        acc
    }
}

/// Gauss decomposition of an even-degree homogeneous polynomial.
///
/// Peels the harmonic top piece with the exact Fischer solve for
/// `(|x|², Δ)` and recurses on the quotient.
pub fn gauss_decompose(f: &HomogeneousPolynomial) -> Result<AlmansiDecomposition> {
    if f.degree() % 2 == 1 {
        return Err(Error::InvalidProblem(format!(
            "Gauss decomposition needs even degree, got {}",
            f.degree()
        )));
    }
    let dim = f.dim();
    let m = f.degree() / 2;
    let op = HomogeneousFischerOperator::new(HomogeneousPolynomial::norm_squared(dim), 1)?;
    let mut harmonics = vec![HomogeneousPolynomial::zero(dim, 0); m as usize + 1];
    let mut current = f.clone();
    for l in (0..=m).rev() {
        let deg = 2 * l;
        if l == 0 {
            harmonics[0] = if current.is_zero() { HomogeneousPolynomial::zero(dim, 0) } else { current.clone() };
            break;
        }
        let q = op.apply(&current)?;
        let h = current.sub(&op.leading().mul(&q)?)?;
        harmonics[l as usize] = if h.is_zero() { HomogeneousPolynomial::zero(dim, deg) } else { h };
        current = if q.is_zero() { HomogeneousPolynomial::zero(dim, deg - 2) } else { q };
    }
    Ok(AlmansiDecomposition { harmonics })
}

/// Sampled maximum of `|f|` on the sphere and the certified upper bound
/// `√2/√ω_{d−1}·(1+m)^{(d−1)/2}·‖f‖_{L²(S^{d−1})}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupNormEstimate {
    pub sampled: f64,
    pub bound: f64,
}

pub const CIRCLE_SAMPLES: usize = 4096;
pub const SPHERE_SAMPLES: usize = 65536;
pub const SAMPLING_SEED: u64 = 0x5eed_f15c;

/// Certified bound only. `‖f‖²/ω = r` so the `ω` factors cancel.
pub fn sup_norm_bound(f: &HomogeneousPolynomial) -> f64 {
    let r = homogeneous_norm_sq(f);
    let m = f.degree() as f64;
    let d = f.dim() as f64;
    2f64.sqrt() * (1.0 + m).powf((d - 1.0) / 2.0) * rational_to_f64(&r).sqrt()
}

pub fn sup_norm_estimate(f: &HomogeneousPolynomial) -> SupNormEstimate {
    if f.is_zero() {
        return SupNormEstimate { sampled: 0.0, bound: 0.0 };
    }
    let points = sphere_samples(f.dim());
    let sampled = points
        .par_iter()
        .map(|x| {
            let (re, im) = f.eval(x);
            re.hypot(im)
        })
        .reduce(|| 0.0, f64::max);
    SupNormEstimate { sampled, bound: sup_norm_bound(f) }
}

/// Deterministic sample points on `S^{d−1}`: a uniform angle grid for `d = 2`,
/// a Fibonacci lattice for `d = 3`, seeded Gaussian directions beyond.
pub fn sphere_samples(dim: usize) -> Vec<Vec<f64>> {
    match dim {
        1 => vec![vec![1.0], vec![-1.0]],
        2 => (0..CIRCLE_SAMPLES)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / CIRCLE_SAMPLES as f64;
                vec![t.cos(), t.sin()]
            })
            .collect(),
        3 => {
            let golden = PI * (3.0 - 5f64.sqrt());
            let n = SPHERE_SAMPLES as f64;
            (0..SPHERE_SAMPLES)
                .map(|i| {
                    let z = 1.0 - (2.0 * i as f64 + 1.0) / n;
                    let r = (1.0 - z * z).sqrt();
                    let phi = golden * i as f64;
                    vec![r * phi.cos(), r * phi.sin(), z]
                })
                .collect()
        }
        _ => {
            use rand::Rng;
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED);
            (0..SPHERE_SAMPLES)
                .map(|_| loop {
                    let v: Vec<f64> = (0..dim)
                        .map(|_| {
                            // Box–Muller
                            let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
                            let u2: f64 = rng.gen();
                            (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
                        })
                        .collect();
                    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                    if n > 1e-12 {
                        break v.into_iter().map(|x| x / n).collect();
                    }
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::ratio;

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    /// Midpoint rule on the circle, exact for trigonometric polynomials of
    /// degree below the sample count.
    fn circle_quadrature(f: impl Fn(f64) -> f64) -> f64 {
        let n = 512;
        (0..n).map(|i| f(2.0 * PI * (i as f64 + 0.5) / n as f64)).sum::<f64>() * 2.0 * PI / n as f64
    }

    #[test]
    fn omega_values() {
        assert!((omega(2) - 2.0 * PI).abs() < 1e-15);
        assert!((omega(3) - 4.0 * PI).abs() < 1e-14);
        assert!((omega(4) - 2.0 * PI * PI).abs() < 1e-13);
        assert_eq!(omega(1), 2.0);
    }

    #[test]
    fn monomial_integral_examples() {
        assert_eq!(monomial_sphere_integral(&mi(&[0, 0])), rat(1));
        assert_eq!(monomial_sphere_integral(&mi(&[2, 0])), ratio(1, 2));
        assert_eq!(monomial_sphere_integral(&mi(&[1, 1])), rat(0));
        let q = circle_quadrature(|t| t.cos().powi(2)) / (2.0 * PI);
        assert!((q - 0.5).abs() < 1e-14);
    }

    #[test]
    fn monomial_integrals_match_quadrature() {
        for a in 0..7u32 {
            for b in 0..7u32 {
                let exact = rational_to_f64(&monomial_sphere_integral(&mi(&[a, b])));
                let q = circle_quadrature(|t| t.cos().powi(a as i32) * t.sin().powi(b as i32)) / (2.0 * PI);
                assert!((exact - q).abs() < 1e-13, "{a} {b}");
            }
        }
        // d = 3: ∫x₁² = 4π/3 → 1/3; ∫x₁²x₂² = 4π/15 → 1/15
        assert_eq!(monomial_sphere_integral(&mi(&[2, 0, 0])), ratio(1, 3));
        assert_eq!(monomial_sphere_integral(&mi(&[2, 2, 0])), ratio(1, 15));
        assert_eq!(monomial_sphere_integral(&mi(&[4, 0, 0])), ratio(1, 5));
    }

    #[test]
    fn inner_product_examples() {
        let x1sq = Polynomial::from_int_terms(2, &[(&[2, 0], 1)]);
        let v = sphere_inner_product(&x1sq, &x1sq).unwrap();
        assert_eq!(v.multiple, Coeff::real(ratio(3, 8)));
        let q = circle_quadrature(|t| t.cos().powi(4));
        assert!((v.to_f64() - q).abs() < 1e-13);

        let x1 = Polynomial::var(2, 0);
        let x2 = Polynomial::var(2, 1);
        assert!(sphere_inner_product(&x1, &x2).unwrap().multiple.is_zero());
        for d in 1..5 {
            assert_eq!(sphere_norm_sq(&Polynomial::one(d)), rat(1));
        }
        assert!(sphere_inner_product(&x1, &Polynomial::one(3)).is_err());
    }

    #[test]
    fn circle_basis_examples() {
        let (y00, y01) = circle_harmonic_basis(0);
        assert_eq!(y00.polynomial, HomogeneousPolynomial::constant(2, Coeff::one()));
        assert_eq!(y00.norm_sq_times_pi, ratio(1, 2));
        assert!(y01.is_zero());
        let (y10, y11) = circle_harmonic_basis(1);
        assert_eq!(y10.polynomial, HomogeneousPolynomial::var(2, 0));
        assert_eq!(y11.polynomial, HomogeneousPolynomial::var(2, 1));
        assert_eq!(y10.norm_sq_times_pi, rat(1));
        let (y20, _) = circle_harmonic_basis(2);
        let (y40, _) = circle_harmonic_basis(4);
        assert_eq!(y20.inner(&y40), (0, rat(0)));
        assert_eq!(y20.inner(&y20), (1, rat(1)));
        assert_eq!(y00.inner(&y00), (1, rat(1)));
    }

    #[test]
    fn circle_basis_is_orthonormal_up_to_12() {
        let basis: Vec<CircleHarmonic> = (0..=12)
            .flat_map(|k| {
                let (c, s) = circle_harmonic_basis(k);
                [c, s]
            })
            .filter(|y| !y.is_zero())
            .collect();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let expected = if i == j { (1, rat(1)) } else { (0, rat(0)) };
                assert_eq!(a.inner(b), expected, "κ={} vs κ={}", a.kappa, b.kappa);
            }
            assert!(a.polynomial.laplacian().is_zero());
        }
    }

    #[test]
    fn gauss_examples() {
        let x1sq = HomogeneousPolynomial::monomial(mi(&[2, 0]), Coeff::one());
        let dec = gauss_decompose(&x1sq).unwrap();
        assert_eq!(dec.harmonics[0], HomogeneousPolynomial::constant(2, Coeff::real(ratio(1, 2))));
        let expected_h2 = HomogeneousPolynomial::from_terms(
            2,
            2,
            [(mi(&[2, 0]), Coeff::real(ratio(1, 2))), (mi(&[0, 2]), Coeff::real(ratio(-1, 2)))],
        )
        .unwrap();
        assert_eq!(dec.harmonics[1], expected_h2);
        assert_eq!(dec.reassemble(), x1sq);

        let (harm, _) = complex_power_parts(6);
        let dec = gauss_decompose(&harm).unwrap();
        assert_eq!(dec.harmonics[3], harm);
        assert!(dec.harmonics[..3].iter().all(HomogeneousPolynomial::is_zero));

        let r2 = HomogeneousPolynomial::norm_squared(2);
        let dec = gauss_decompose(&r2).unwrap();
        assert_eq!(dec.harmonics[0], HomogeneousPolynomial::constant(2, Coeff::one()));
        assert!(dec.harmonics[1].is_zero());

        assert!(gauss_decompose(&HomogeneousPolynomial::var(2, 0)).is_err());
    }

    #[test]
    fn sup_norm_examples() {
        for m in [1u32, 2, 5, 9] {
            let (re, _) = complex_power_parts(m);
            let est = sup_norm_estimate(&re);
            assert!((est.sampled - 1.0).abs() < 1e-12);
            assert!((est.bound - ((1 + m) as f64).sqrt()).abs() < 1e-12);
        }
        let one = HomogeneousPolynomial::constant(2, Coeff::one());
        let est = sup_norm_estimate(&one);
        assert!((est.sampled - 1.0).abs() < 1e-15);
        assert!((est.bound - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(sup_norm_estimate(&HomogeneousPolynomial::zero(2, 3)), SupNormEstimate { sampled: 0.0, bound: 0.0 });
    }

    #[test]
    fn sup_norm_d3_under_bound() {
        let f = HomogeneousPolynomial::monomial(mi(&[2, 1, 1]), Coeff::one());
        let est = sup_norm_estimate(&f);
        assert!(est.sampled > 0.0 && est.sampled <= est.bound);
    }
}
