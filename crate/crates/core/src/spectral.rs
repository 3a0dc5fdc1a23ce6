//! Spectral bounds for multiplication operators on graded spaces.
//!
//! The central quantity is the minimal generalized eigenvalue of
//! `⟨P·f, f⟩ / ⟨f, f⟩` over homogeneous `f` of degree `m` on `S^{d−1}`. For
//! `d = 2`, `P = x₂²` the matrix of multiplication by `−4 sin²t` in the
//! cosine harmonics `Y_{0,0}, …, Y_{2m,0}` is `−2I + A_{m+1}`, with `A_n`
//! the tridiagonal matrix below, whose characteristic polynomial is
//! `2T_n(−λ/2)`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::coeff::{rat, rational_to_f64, Coeff, Rational};
use crate::error::{Error, Result};
use crate::linalg::{reduce_generalized, symmetric_eigenvalues, ExactMatrix};
use crate::poly::{HomogeneousPolynomial, MultiIndex, Polynomial};
use crate::sphere::sphere_mean;

/// `A_n`: zero diagonal, off-diagonal `√2` in the first position and `1`
/// elsewhere. Only squared off-diagonals enter exact computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TridiagonalMatrix {
    pub order: usize,
}

impl TridiagonalMatrix {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1);
        TridiagonalMatrix { order }
    }

    /// `b_i²` for the off-diagonal entry between rows `i` and `i + 1`.
    pub fn offdiag_squared(&self, i: usize) -> i64 {
        if i == 0 {
            2
        } else {
            1
        }
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        let n = self.order;
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n.saturating_sub(1) {
            let b = (self.offdiag_squared(i) as f64).sqrt();
            m[(i, i + 1)] = b;
            m[(i + 1, i)] = b;
        }
        m
    }

    /// Exact `det(A_n − λI)` at a rational `λ`. The symmetric `√2` pair is
    /// replaced by the entries `2, 1`, which leaves every principal minor and
    /// therefore the determinant unchanged.
    pub fn shifted_determinant(&self, lambda: &Rational) -> Rational {
        let n = self.order;
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Coeff::real(-lambda.clone());
        }
        for i in 0..n.saturating_sub(1) {
            m[(i, i + 1)] = Coeff::from_int(self.offdiag_squared(i));
            m[(i + 1, i)] = Coeff::from_int(1);
        }
        determinant(&m)
    }
}

fn determinant(m: &ExactMatrix) -> Rational {
    // det via elimination with partial pivoting on an owned copy.
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| m[(i, j)].re.clone()).collect()).collect();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// Dense univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(pub Vec<Rational>);

impl UniPoly {
    pub fn from_ints(c: &[i64]) -> Self {
        UniPoly(c.iter().map(|&v| rat(v)).collect()).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn coeff(&self, i: usize) -> Rational {
        self.0.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.0.len().max(other.0.len());
        UniPoly((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect()).trimmed()
    }

    pub fn scale(&self, s: &Rational) -> UniPoly {
        UniPoly(self.0.iter().map(|c| c * s).collect()).trimmed()
    }

    /// Multiplies by `a·x`.
    pub fn shift_scale(&self, a: &Rational) -> UniPoly {
        let mut v = vec![Rational::zero()];
        v.extend(self.0.iter().map(|c| c * a));
        UniPoly(v).trimmed()
    }

    /// `p(s·x)`
    pub fn substitute_scaled(&self, s: &Rational) -> UniPoly {
        let mut pow = Rational::one();
        let mut out = Vec::with_capacity(self.0.len());
        for c in &self.0 {
            out.push(c * &pow);
            pow *= s;
        }
        UniPoly(out).trimmed()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// Lagrange interpolation through `(x_i, y_i)`.
    pub fn interpolate(points: &[(Rational, Rational)]) -> UniPoly {
        let mut acc = UniPoly(vec![]);
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = UniPoly(vec![Rational::one()]);
            let mut denom = Rational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                // basis *= (x − x_j)
                basis = basis.shift_scale(&Rational::one()).add(&basis.scale(&-xj.clone()));
                denom *= xi - xj;
            }
            acc = acc.add(&basis.scale(&(yi / denom)));
        }
        acc
    }
}

/// `P_n(λ) = det(A_n − λI)` via `P_{n+1} = −λP_n − P_{n−1}`, `P₀ = 2`, `P₁ = −λ`.
pub fn characteristic_polynomial_a(n: usize) -> UniPoly {
    assert!(n >= 1);
    let minus_one = rat(-1);
    let mut prev = UniPoly::from_ints(&[2]);
    let mut cur = UniPoly::from_ints(&[0, -1]);
    for _ in 1..n {
        let next = cur.shift_scale(&minus_one).add(&prev.scale(&minus_one));
        prev = cur;
        cur = next;
    }
    cur
}

/// Chebyshev `T_n` via `T_{n+1} = 2xT_n − T_{n−1}`.
pub fn chebyshev_t(n: usize) -> UniPoly {
    let two = rat(2);
    let mut prev = UniPoly::from_ints(&[1]);
    if n == 0 {
        return prev;
    }
    let mut cur = UniPoly::from_ints(&[0, 1]);
    for _ in 1..n {
        let next = cur.shift_scale(&two).add(&prev.scale(&rat(-1)));
        prev = cur;
        cur = next;
    }
    cur
}

/// `det(A_n − λI)` as an exact polynomial: exact determinants at
/// `λ = 0, …, n` interpolated.
pub fn determinant_polynomial_a(n: usize) -> UniPoly {
    let a = TridiagonalMatrix::new(n);
    let points: Vec<(Rational, Rational)> = (0..=n as i64)
        .map(|l| {
            let lambda = rat(l);
            let d = a.shifted_determinant(&lambda);
            (lambda, d)
        })
        .collect();
    UniPoly::interpolate(&points)
}

/// Default upper limit for [`chebyshev_identity_check`].
pub const CHEBYSHEV_MAX_ORDER: usize = 16;

/// Exact check of `det(A_n − λI) = 2T_n(−λ/2)`.
pub fn chebyshev_identity_check(n: usize) -> bool {
    assert!((1..=CHEBYSHEV_MAX_ORDER.max(n)).contains(&n));
    let det = determinant_polynomial_a(n);
    let rhs = chebyshev_t(n).substitute_scaled(&Rational::new((-1).into(), 2.into())).scale(&rat(2));
    det.has_integer_coefficients() && det == rhs && det == characteristic_polynomial_a(n)
}

/// Largest eigenvalue of `A_n`, closed form and dense eigen-solve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaxEigenvalue {
    pub order: usize,
    /// `−2cos((2n−1)π/(2n))`
    pub closed_form: f64,
    pub numeric: f64,
}

pub fn max_eigenvalue_a(n: usize) -> MaxEigenvalue {
    let closed_form = -2.0 * ((2 * n - 1) as f64 * PI / (2 * n) as f64).cos();
    let numeric = *symmetric_eigenvalues(TridiagonalMatrix::new(n).to_f64()).last().expect("n >= 1");
    MaxEigenvalue { order: n, closed_form, numeric }
}

/// Largest eigenvalue of `B_m` (all off-diagonals 1), numerically.
pub fn max_eigenvalue_b(m: usize) -> f64 {
    if m == 0 {
        return f64::NEG_INFINITY;
    }
    let mut b = DMatrix::zeros(m, m);
    for i in 0..m - 1 {
        b[(i, i + 1)] = 1.0;
        b[(i + 1, i)] = 1.0;
    }
    *symmetric_eigenvalues(b).last().expect("m >= 1")
}

/// `π²/(4(m+4)²)`
pub fn main_bound(m: u32) -> f64 {
    PI * PI / (4.0 * ((m + 4) as f64).powi(2))
}

/// `π²/(4(2j+3)²)` for even degree `2j`.
pub fn even_degree_bound(two_j: u32) -> f64 {
    debug_assert!(two_j % 2 == 0);
    PI * PI / (4.0 * ((two_j + 3) as f64).powi(2))
}

/// Rational upper bound of `π`, used where a constant involving `π` must be
/// compared exactly.
pub fn pi_upper() -> Rational {
    Rational::new(BigInt::from(31_415_926_535_897_932_385u128), BigInt::from(10u128.pow(19)))
}

/// Rational lower bound of `π`.
pub fn pi_lower() -> Rational {
    Rational::new(BigInt::from(31_415_926_535_897_932_384u128), BigInt::from(10u128.pow(19)))
}

/// `π_hi²/(4(m+4)²) ≥ C_m`. A norm check that passes with this constant
/// passes with the exact one.
pub fn main_constant_upper(m: u32) -> Rational {
    let p = pi_upper();
    &p * &p / rat(4 * ((m + 4) as i64).pow(2))
}

/// `sin²(π/(2m+4))`: exact minimal eigenvalue for `P = x₂²`, `d = 2`.
/// At even degree `2j` this is `sin²(π/(4j+4))`.
pub fn x2_squared_exact_min(m: u32) -> f64 {
    (PI / (2 * m + 4) as f64).sin().powi(2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport {
    pub degree: u32,
    pub dim: usize,
    pub min_eigenvalue: f64,
    /// Available for `d = 2`, `P = x₂²`.
    pub exact_closed_form: Option<f64>,
    /// `π²/(4(m+4)²)` for `d = 2`, `P = x₂²`.
    pub paper_bound: Option<f64>,
}

impl SpectralReport {
    pub fn margin(&self) -> Option<f64> {
        self.paper_bound.map(|b| self.min_eigenvalue - b)
    }

    /// `min_eig / bound`; stays bounded as `m` grows.
    pub fn tightness(&self) -> Option<f64> {
        self.paper_bound.map(|b| self.min_eigenvalue / b)
    }
}

fn is_x2_squared(p: &HomogeneousPolynomial) -> bool {
    p.dim() == 2 && *p == HomogeneousPolynomial::monomial(MultiIndex::new(vec![0, 2]), Coeff::one())
}

/// Minimal `λ` with `⟨P f, f⟩ ≥ λ⟨f, f⟩` over homogeneous `f` of degree `m`.
///
/// In `d = 2` the computation runs in the orthogonal basis
/// `{cos jt, sin jt : j ≤ m, j ≡ m mod 2}` (restrictions of
/// `Re/Im (x₁+ix₂)^j·|x|^{m−j}`), whose Gram matrix is diagonal and exact.
/// In other dimensions the monomial basis is used with an exact `LDLᵀ` of the
/// Gram matrix. Either way only the final scaled matrix is a float matrix.
pub fn min_quadratic_form_eigenvalue(p: &HomogeneousPolynomial, m: u32) -> Result<SpectralReport> {
    if !p.is_real() {
        return Err(Error::InvalidProblem("multiplier must have real coefficients".into()));
    }
    let min_eigenvalue = if p.dim() == 2 {
        min_eigenvalue_circle(p, m)
    } else {
        min_eigenvalue_monomial(p, m)?
    };
    let special = is_x2_squared(p);
    Ok(SpectralReport {
        degree: m,
        dim: p.dim(),
        min_eigenvalue,
        exact_closed_form: special.then(|| x2_squared_exact_min(m)),
        paper_bound: special.then(|| main_bound(m)),
    })
}

/// Monomial-basis route, any dimension. Exponentially ill-conditioned Gram
/// matrices are handled by keeping `L⁻¹AL⁻ᵀ` exact.
pub fn min_eigenvalue_monomial(p: &HomogeneousPolynomial, m: u32) -> Result<f64> {
    let basis = MultiIndex::all_of_degree(p.dim(), m);
    let n = basis.len();
    let pp: Polynomial = p.clone().into();
    let mut a = vec![vec![Rational::zero(); n]; n];
    let mut b = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let prod = basis[i].add(&basis[j]);
            let bij = crate::sphere::monomial_sphere_integral(&prod);
            let aij = sphere_mean(&pp.mul(&Polynomial::monomial(prod, Coeff::one()))?).re;
            a[i][j] = aij.clone();
            a[j][i] = aij;
            b[i][j] = bij.clone();
            b[j][i] = bij;
        }
    }
    let reduced = reduce_generalized(&a, &b).ok_or(Error::IllConditionedGram { index: 0, pivot: 0.0 })?;
    Ok(symmetric_eigenvalues(reduced)[0])
}

/// Laurent polynomial in `e^{it}`: `(frequency, coefficient)` pairs.
type Fourier = std::collections::BTreeMap<i64, Coeff>;

fn fourier_mul(a: &Fourier, b: &Fourier) -> Fourier {
    let mut out = Fourier::new();
    for (na, ca) in a {
        for (nb, cb) in b {
            let e = out.entry(na + nb).or_default();
            *e += &(ca * cb);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Restriction of a homogeneous polynomial in `d = 2` to the unit circle.
fn to_fourier(p: &HomogeneousPolynomial) -> Fourier {
    let half = Coeff::real(Rational::new(1.into(), 2.into()));
    // cos t = (e^{it} + e^{−it})/2, sin t = (e^{it} − e^{−it})/(2i)
    let cos: Fourier = [(1, half.clone()), (-1, half.clone())].into_iter().collect();
    let minus_half_i = Coeff::new(Rational::zero(), Rational::new((-1).into(), 2.into()));
    let sin: Fourier = [(1, minus_half_i.clone()), (-1, -minus_half_i)].into_iter().collect();
    let mut out = Fourier::new();
    for (alpha, c) in p.terms() {
        let mut term: Fourier = [(0, c.clone())].into_iter().collect();
        for _ in 0..alpha.get(0) {
            term = fourier_mul(&term, &cos);
        }
        for _ in 0..alpha.get(1) {
            term = fourier_mul(&term, &sin);
        }
        for (n, v) in term {
            let e = out.entry(n).or_default();
            *e += &v;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn trig_basis(m: u32) -> Vec<(Fourier, Rational)> {
    let half = Rational::new(1.into(), 2.into());
    let mut out = Vec::new();
    let mut j = m as i64 % 2;
    while j <= m as i64 {
        if j == 0 {
            out.push(([(0, Coeff::one())].into_iter().collect(), Rational::one()));
        } else {
            let h = Coeff::real(half.clone());
            out.push(([(j, h.clone()), (-j, h)].into_iter().collect(), half.clone()));
            let s = Coeff::new(Rational::zero(), -half.clone());
            out.push(([(j, s.clone()), (-j, -s)].into_iter().collect(), half.clone()));
        }
        j += 2;
    }
    out
}

/// `d = 2` route in the orthogonal trigonometric basis.
pub fn min_eigenvalue_circle(p: &HomogeneousPolynomial, m: u32) -> f64 {
    assert_eq!(p.dim(), 2);
    let pf = to_fourier(p);
    let basis = trig_basis(m);
    let n = basis.len();
    let mut mat = DMatrix::zeros(n, n);
    for (i, (bi, gi)) in basis.iter().enumerate() {
        let prod = fourier_mul(&pf, bi);
        for (j, (bj, gj)) in basis.iter().enumerate().skip(i) {
            // ⟨P b_i, b_j⟩/ω₁ = Σ_n a_n conj(b_n)
            let mut acc = Coeff::zero();
            for (freq, c) in bj {
                if let Some(a) = prod.get(freq) {
                    acc += &(a * &c.conj());
                }
            }
            let v = rational_to_f64(&acc.re) / (rational_to_f64(gi) * rational_to_f64(gj)).sqrt();
            mat[(i, j)] = v;
            mat[(j, i)] = v;
        }
    }
    symmetric_eigenvalues(mat)[0]
}

/// Tolerance for margins of the spectral inequality.
pub const MARGIN_TOLERANCE: f64 = 1e-12;

/// Reports for `P = x₂²`, `d = 2`, `m = 0..=m_max`, with three checks:
/// the main bound, the sharper even-degree constant, and the odd-to-even
/// transfer `λ_min(2j+1) ≥ λ_min(2j+2)`.
pub fn verify_main_inequality(m_max: u32) -> Result<Vec<SpectralReport>> {
    let p = HomogeneousPolynomial::monomial(MultiIndex::new(vec![0, 2]), Coeff::one());
    let reports: Vec<SpectralReport> = (0..=m_max + 1)
        .into_par_iter()
        .map(|m| min_quadratic_form_eigenvalue(&p, m))
        .collect::<Result<_>>()?;
    for r in &reports[..=m_max as usize] {
        let m = r.degree;
        if r.margin().expect("x₂² instance") < -MARGIN_TOLERANCE {
            return Err(Error::BoundViolated(format!("main inequality fails at m = {m}: {}", r.min_eigenvalue)));
        }
        if m % 2 == 0 && r.min_eigenvalue < even_degree_bound(m) - MARGIN_TOLERANCE {
            return Err(Error::BoundViolated(format!("even-degree constant fails at m = {m}")));
        }
        if m % 2 == 1 {
            let next = &reports[m as usize + 1];
            if r.min_eigenvalue < next.min_eigenvalue - MARGIN_TOLERANCE {
                return Err(Error::BoundViolated(format!("odd/even transfer fails at m = {m}")));
            }
        }
    }
    let mut reports = reports;
    reports.truncate(m_max as usize + 1);
    Ok(reports)
}

/// CSV with columns `m,min_eigenvalue,paper_bound,margin,exact_closed_form`.
pub fn reports_to_csv(reports: &[SpectralReport]) -> String {
    let mut out = String::from("m,min_eigenvalue,paper_bound,margin,exact_closed_form\n");
    let opt = |v: Option<f64>| v.map(|x| format!("{x:?}")).unwrap_or_default();
    for r in reports {
        let _ = writeln!(
            out,
            "{},{:?},{},{},{}",
            r.degree,
            r.min_eigenvalue,
            opt(r.paper_bound),
            opt(r.margin()),
            opt(r.exact_closed_form)
        );
    }
    out
}

/// Outcome of checking `sin(π/n) ≥ π/(n+2)` for `2 ≤ n ≤ n_max`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SineBoundReport {
    pub checked: u64,
    pub violations: u64,
    /// Smallest `sin(π/n) − π/(n+2)` and the `n` where it occurs.
    pub min_margin: f64,
    pub argmin: u64,
}

/// `sin(π/n) − π/(n+2)` without cancellation:
/// `2π/(n(n+2)) − (x − sin x)` with `x = π/n`, the second term by its
/// alternating series when `x` is small.
pub fn sine_margin(n: u64) -> f64 {
    let nf = n as f64;
    let x = PI / nf;
    let gap = 2.0 * PI / (nf * (nf + 2.0));
    let x_minus_sin = if x < 0.5 {
        let x2 = x * x;
        let mut term = x * x2 / 6.0;
        let mut sum = 0.0;
        let mut k = 1;
        while term.abs() > 1e-40 * x {
            sum += term;
            term *= -x2 / (((2 * k + 2) * (2 * k + 3)) as f64);
            k += 1;
        }
        sum
    } else {
        x - x.sin()
    };
    gap - x_minus_sin
}

pub fn sine_bound_check(n_max: u64) -> SineBoundReport {
    assert!(n_max >= 2);
    let (violations, min_margin, argmin) = (2..=n_max)
        .into_par_iter()
        .map(|n| {
            let m = sine_margin(n);
            (u64::from(m < 0.0), m, n)
        })
        .reduce(
            || (0, f64::INFINITY, 0),
            |a, b| {
                let (min, arg) = if b.1 < a.1 || (b.1 == a.1 && b.2 < a.2) { (b.1, b.2) } else { (a.1, a.2) };
                (a.0 + b.0, min, arg)
            },
        );
    SineBoundReport { checked: n_max - 1, violations, min_margin, argmin }
}
