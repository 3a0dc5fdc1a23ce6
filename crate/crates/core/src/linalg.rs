//! Exact dense linear algebra over `Q(i)` and a thin float eigen-solver wrapper.
//!
//! Elimination is fraction-free (Bareiss): after step `k` every entry of the
//! trailing block is a `(k+1)`-minor of the input, so the only divisions are
//! exact divisions by the previous pivot. Rank deficiency is detected exactly.

use nalgebra::DMatrix;
use num_traits::{One, Zero};

use crate::coeff::{rational_to_f64, Coeff, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Coeff>,
}

/// Returned by [`ExactMatrix::solve`] when the system matrix is singular.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Singular {
    pub rank: usize,
    pub size: usize,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Coeff::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Coeff::one();
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Coeff>]) -> Self {
        let mut m = ExactMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, c) in col.iter().enumerate() {
                m[(i, j)] = c.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Coeff> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Coeff]) -> Vec<Coeff> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Coeff::zero();
                for (j, vj) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !vj.is_zero() {
                        acc += &(a * vj);
                    }
                }
                acc
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Fraction-free forward elimination in place. Returns the pivot columns.
    fn bareiss(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut prev = Coeff::one();
        let mut row = 0;
        let mut pivots = Vec::new();
        for col in 0..pivot_cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !self[(i, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let pivot = self[(row, col)].clone();
            for i in (row + 1)..self.rows {
                let lead = self[(i, col)].clone();
                for j in (col + 1)..self.cols {
                    let updated = &(&pivot * &self[(i, j)]) - &(&lead * &self[(row, j)]);
                    self[(i, j)] = &updated / &prev;
                }
                self[(i, col)] = Coeff::zero();
            }
            // Entries left of the pivot in the pivot row stay as-is; rows above
            // are scaled consistently by construction of Bareiss.
            prev = pivot;
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().bareiss(self.cols).len()
    }

    /// Solves `self · X = rhs` for square `self`.
    pub fn solve(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, Singular> {
        assert_eq!(self.rows, self.cols, "square system expected");
        assert_eq!(rhs.rows, self.rows);
        let n = self.rows;
        let mut aug = ExactMatrix::zeros(n, n + rhs.cols);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                aug[(i, n + j)] = rhs[(i, j)].clone();
            }
        }
        let pivots = aug.bareiss(n);
        if pivots.len() < n {
            return Err(Singular { rank: pivots.len(), size: n });
        }
        let mut x = ExactMatrix::zeros(n, rhs.cols);
        for c in 0..rhs.cols {
            for i in (0..n).rev() {
                let mut acc = aug[(i, n + c)].clone();
                for j in (i + 1)..n {
                    let a = &aug[(i, j)];
                    if !a.is_zero() {
                        acc -= &(a * &x[(j, c)]);
                    }
                }
                x[(i, c)] = &acc / &aug[(i, i)];
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<ExactMatrix, Singular> {
        self.solve(&ExactMatrix::identity(self.rows))
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = Coeff;
    fn index(&self, (i, j): (usize, usize)) -> &Coeff {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Coeff {
        &mut self.data[i * self.cols + j]
    }
}

/// Exact `B = L·D·Lᵀ` of a symmetric rational matrix with unit lower
/// triangular `L`. Returns `None` if a pivot vanishes.
pub fn ldlt(b: &[Vec<Rational>]) -> Option<(Vec<Vec<Rational>>, Vec<Rational>)> {
    let n = b.len();
    let mut l = vec![vec![Rational::zero(); n]; n];
    let mut d = vec![Rational::zero(); n];
    for j in 0..n {
        let mut dj = b[j][j].clone();
        for k in 0..j {
            if !l[j][k].is_zero() {
                dj -= &l[j][k] * &l[j][k] * &d[k];
            }
        }
        if dj.is_zero() {
            return None;
        }
        l[j][j] = Rational::one();
        for i in (j + 1)..n {
            let mut s = b[i][j].clone();
            for k in 0..j {
                if !l[i][k].is_zero() && !l[j][k].is_zero() {
                    s -= &l[i][k] * &l[j][k] * &d[k];
                }
            }
            l[i][j] = s / &dj;
        }
        d[j] = dj;
    }
    Some((l, d))
}

/// Solves `L·y = v` for unit lower triangular `L`.
pub fn forward_substitute(l: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    let n = l.len();
    let mut y: Vec<Rational> = Vec::with_capacity(n);
    for i in 0..n {
        let mut s = v[i].clone();
        for (k, yk) in y.iter().enumerate() {
            if !l[i][k].is_zero() {
                s -= &l[i][k] * yk;
            }
        }
        y.push(s);
    }
    y
}

/// Reduces the generalized problem `A v = λ B v` (both exact, symmetric, `B`
/// positive definite) to a float standard problem `D^{-1/2} L⁻¹ A L⁻ᵀ D^{-1/2}`.
///
/// `L⁻¹AL⁻ᵀ` is formed exactly; only the final diagonal scaling is done in
/// floats, via `sign·sqrt(c²/(dᵢdⱼ))` so huge rationals never overflow.
pub fn reduce_generalized(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Option<DMatrix<f64>> {
    let n = a.len();
    let (l, d) = ldlt(b)?;
    if d.iter().any(|x| *x <= Rational::zero()) {
        return None;
    }
    // W = L⁻¹ A, column by column of A (A symmetric so rows = columns).
    let w_cols: Vec<Vec<Rational>> = (0..n)
        .map(|j| forward_substitute(&l, &(0..n).map(|i| a[i][j].clone()).collect::<Vec<_>>()))
        .collect();
    // C = W L⁻ᵀ = (L⁻¹ Wᵀ)ᵀ; row i of W is (w_cols[j][i])_j.
    let mut c = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        let row: Vec<Rational> = (0..n).map(|j| w_cols[j][i].clone()).collect();
        let y = forward_substitute(&l, &row);
        for (j, v) in y.into_iter().enumerate() {
            c[i][j] = v;
        }
    }
    let mut out = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if c[i][j].is_zero() {
                continue;
            }
            let sq = &c[i][j] * &c[i][j] / (&d[i] * &d[j]);
            let mag = rational_to_f64(&sq).sqrt();
            out[(i, j)] = if c[i][j] < Rational::zero() { -mag } else { mag };
        }
    }
    Some(out)
}

/// Eigenvalues of a symmetric float matrix, ascending.
pub fn symmetric_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, ratio};

    fn c(n: i64) -> Coeff {
        Coeff::from_int(n)
    }

    #[test]
    fn solves_small_system() {
        // [[2,1],[1,3]] x = [3,5] → x = [4/5, 7/5]
        let m = ExactMatrix::from_columns(2, &[vec![c(2), c(1)], vec![c(1), c(3)]]);
        let rhs = ExactMatrix::from_columns(2, &[vec![c(3), c(5)]]);
        let x = m.solve(&rhs).unwrap();
        assert_eq!(x.column(0), vec![Coeff::real(ratio(4, 5)), Coeff::real(ratio(7, 5))]);
    }

    #[test]
    fn detects_singularity_exactly() {
        let m = ExactMatrix::from_columns(3, &[vec![c(1), c(2), c(3)], vec![c(2), c(4), c(6)], vec![c(0), c(1), c(1)]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.inverse(), Err(Singular { rank: 2, size: 3 }));
    }

    #[test]
    fn inverse_roundtrip_needs_pivoting() {
        let m = ExactMatrix::from_columns(3, &[vec![c(0), c(1), c(2)], vec![c(1), c(0), c(1)], vec![c(3), c(1), c(0)]]);
        let inv = m.inverse().unwrap();
        for j in 0..3 {
            let col = m.mul_vec(&inv.column(j));
            for (i, v) in col.iter().enumerate() {
                assert_eq!(*v, if i == j { Coeff::one() } else { Coeff::zero() });
            }
        }
    }

    #[test]
    fn complex_system() {
        let i = Coeff::i();
        let m = ExactMatrix::from_columns(2, &[vec![i.clone(), c(1)], vec![c(0), c(2)]]);
        let rhs = ExactMatrix::from_columns(2, &[vec![c(1), c(1)]]);
        let x = m.solve(&rhs).unwrap();
        // i·x0 = 1 → x0 = −i; x0 + 2x1 = 1 → x1 = (1+i)/2
        assert_eq!(x[(0, 0)], Coeff::new(rat(0), rat(-1)));
        assert_eq!(x[(1, 0)], Coeff::new(ratio(1, 2), ratio(1, 2)));
    }

    #[test]
    fn generalized_reduction_matches_direct() {
        // A = diag(1, 4) in a skewed basis: B = [[2,1],[1,1]], A = [[3,1],[1,1]]
        let a = vec![vec![rat(3), rat(1)], vec![rat(1), rat(1)]];
        let b = vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]];
        let ev = symmetric_eigenvalues(reduce_generalized(&a, &b).unwrap());
        // det(A − λB) = (3−2λ)(1−λ) − (1−λ)² = (1−λ)(2−λ)
        assert!((ev[0] - 1.0).abs() < 1e-14);
        assert!((ev[1] - 2.0).abs() < 1e-14);
    }
}
