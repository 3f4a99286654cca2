//! Dense matrices over a [`Field`]: reduced row echelon form, rank, kernels
//! and linear solves. Exact fields eliminate exactly; `f64` uses partial
//! pivoting and treats entries within the tolerance as zero.

use std::fmt;

use crate::scalar::{Field, Tolerance};

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix columns");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
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

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn is_zero_within(&self, tol: Tolerance) -> bool {
        self.data.iter().all(|x| x.is_negligible(tol))
    }

    /// Selects the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Matrix::from_rows(self.cols, rows.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduces in place to reduced row echelon form and returns the pivot
    /// columns. Pivots are normalized to one and negligible entries are
    /// cleared.
    pub fn rref(&mut self, tol: Tolerance) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let best = (r..self.rows)
                .filter(|&i| !self[(i, c)].is_negligible(tol))
                .max_by(|&a, &b| {
                    self[(a, c)]
                        .pivot_weight()
                        .partial_cmp(&self[(b, c)].pivot_weight())
                        .unwrap()
                        .then(b.cmp(&a))
                });
            let Some(p) = best else {
                for i in r..self.rows {
                    self[(i, c)] = F::zero();
                }
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].inv();
            for j in c..self.cols {
                let v = self[(r, j)].clone() * inv.clone();
                self[(r, j)] = v;
            }
            self[(r, c)] = F::one();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self[(i, c)].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let pv = self[(r, j)].clone();
                    if !pv.is_zero() {
                        let v = self[(i, j)].clone() - factor.clone() * pv;
                        self[(i, j)] = v;
                    }
                }
                self[(i, c)] = F::zero();
            }
            pivots.push(c);
            r += 1;
        }
        if !F::is_exact() {
            for x in self.data.iter_mut() {
                if x.is_negligible(tol) {
                    *x = F::zero();
                }
            }
        }
        pivots
    }

    pub fn rank(&self, tol: Tolerance) -> usize {
        self.clone().rref(tol).len()
    }

    /// A basis of the null space `{x : A x = 0}`, one vector per free column.
    pub fn kernel(&self, tol: Tolerance) -> Vec<Vec<F>> {
        let mut r = self.clone();
        let pivots = r.rref(tol);
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = -r[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `A x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[F], tol: Tolerance) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref(tol);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = aug[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self, tol: Tolerance) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = F::one();
        }
        let pivots = aug.rref(tol);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

/// Canonical basis of the span of `vectors`: the nonzero rows of the RREF.
///
/// When `leading_last` is set the echelon form is taken with respect to the
/// reversed coordinate order, so pivots sit on the last coordinates. Equal
/// spans give equal results either way.
pub fn canonical_span<F: Field>(dim: usize, vectors: &[Vec<F>], leading_last: bool, tol: Tolerance) -> Vec<Vec<F>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let rows: Vec<Vec<F>> = vectors
        .iter()
        .map(|v| {
            let mut v = v.clone();
            if leading_last {
                v.reverse();
            }
            v
        })
        .collect();
    let mut m = Matrix::from_rows(dim, rows);
    let rank = m.rref(tol).len();
    (0..rank)
        .map(|i| {
            let mut v = m.row(i).to_vec();
            if leading_last {
                v.reverse();
            }
            v
        })
        .collect()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span<F: Field>(dim: usize, basis: &[Vec<F>], v: &[F], tol: Tolerance) -> bool {
    if basis.is_empty() {
        return v.iter().all(|x| x.is_negligible(tol));
    }
    let a = Matrix::from_columns(dim, basis);
    a.solve(v, tol).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Field, Rational, F2};
    use num_traits::Zero;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn rref_and_kernel_exact() {
        // rows of the evaluation system at 0 and 1 for 1, x, x^2
        let a = Matrix::from_rows(3, vec![vec![q(1), q(0), q(0)], vec![q(1), q(1), q(1)]]);
        assert_eq!(a.rank(Tolerance::EXACT), 2);
        let k = a.kernel(Tolerance::EXACT);
        assert_eq!(k, vec![vec![q(0), q(-1), q(1)]]);
        assert!(a.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_and_inverse() {
        let a = Matrix::from_rows(2, vec![vec![q(2), q(1)], vec![q(1), q(3)]]);
        let x = a.solve(&[q(3), q(5)], Tolerance::EXACT).unwrap();
        assert_eq!(a.mul_vec(&x), vec![q(3), q(5)]);
        let inv = a.inverse(Tolerance::EXACT).unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        let singular = Matrix::from_rows(2, vec![vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert!(singular.inverse(Tolerance::EXACT).is_none());
        assert!(singular.solve(&[q(1), q(0)], Tolerance::EXACT).is_none());
    }

    #[test]
    fn float_rank_uses_tolerance() {
        let a = Matrix::from_rows(2, vec![vec![1.0, 1.0], vec![1.0, 1.0 + 1e-14]]);
        assert_eq!(a.rank(Tolerance(1e-10)), 1);
        assert_eq!(a.rank(Tolerance(0.0)), 2);
    }

    #[test]
    fn f2_rank() {
        let one = F2(true);
        let zero = F2(false);
        // the 1+1 = 0 row dependency only exists in characteristic two
        let a = Matrix::from_rows(
            3,
            vec![vec![one, one, zero], vec![zero, one, one], vec![one, zero, one]],
        );
        assert_eq!(a.rank(Tolerance::EXACT), 2);
    }

    #[test]
    fn canonical_span_is_basis_independent() {
        let v1 = vec![q(1), q(2), q(3)];
        let v2 = vec![q(0), q(1), q(1)];
        let a = canonical_span(3, &[v1.clone(), v2.clone()], true, Tolerance::EXACT);
        let b = canonical_span(
            3,
            &[
                v1.clone().iter().zip(&v2).map(|(x, y)| x.clone() + y.clone()).collect(),
                v2,
            ],
            true,
            Tolerance::EXACT,
        );
        assert_eq!(a, b);
        assert!(in_span(3, &a, &v1, Tolerance::EXACT));
        assert!(!in_span(3, &a, &[q(1), q(0), q(0)], Tolerance::EXACT));
    }
}
