//! Dense exact matrices over the rationals.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::{One, Zero};

use crate::scalar::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(rows.iter().map(|row| row.iter().map(|&v| crate::scalar::int(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// `uᵀ · self · v`
    pub fn bilinear(&self, u: &[Rational], v: &[Rational]) -> Rational {
        dot(u, &self.mul_vec(v))
    }

    /// Unique solution of `self · x = rhs`, or `None` when the matrix is singular.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert!(self.is_square() && rhs.len() == self.rows);
        let n = self.rows;
        let mut a = self.clone();
        let mut b = rhs.to_vec();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                a.swap_rows(pivot, col);
                b.swap(pivot, col);
            }
            let p = a[(col, col)].clone();
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] / &p;
                for c in col..n {
                    let delta = &f * &a[(col, c)];
                    a[(r, c)] -= delta;
                }
                let delta = &f * &b[col];
                b[r] -= delta;
            }
        }
        let mut x = vec![Rational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = b[i].clone();
            for j in i + 1..n {
                acc -= &a[(i, j)] * &x[j];
            }
            x[i] = acc / &a[(i, i)];
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let p = a[(col, col)].clone();
            for c in 0..n {
                a[(col, c)] /= &p;
                inv[(col, c)] /= &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for c in 0..n {
                    let da = &f * &a[(col, c)];
                    a[(r, c)] -= da;
                    let di = &f * &inv[(col, c)];
                    inv[(r, c)] -= di;
                }
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a[(col, col)].clone();
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] / &p;
                for c in col..n {
                    let delta = &f * &a[(col, c)];
                    a[(r, c)] -= delta;
                }
            }
            det *= p;
        }
        det
    }

    /// Basis of the right kernel `{x : self · x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, row);
            let pv = a[(row, col)].clone();
            for c in 0..self.cols {
                a[(row, c)] /= &pv;
            }
            for r in 0..self.rows {
                if r == row || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for c in 0..self.cols {
                    let d = &f * &a[(row, c)];
                    a[(r, c)] -= d;
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
}

pub fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    debug_assert_eq!(u.len(), v.len());
    u.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| {
        if a.is_zero() || b.is_zero() {
            acc
        } else {
            acc + a * b
        }
    })
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(crate::scalar::format_rational).collect()).collect();
        f.debug_list().entries(rows).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn inverse_of_a2_cartan() {
        let m = Matrix::from_i64(&[vec![-2, 1], vec![1, -2]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, Matrix::from_rows(vec![vec![ratio(-2, 3), ratio(-1, 3)], vec![ratio(-1, 3), ratio(-2, 3)]]));
        assert_eq!(&m * &inv, Matrix::identity(2));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = Matrix::from_i64(&[vec![-1, 1], vec![1, -1]]);
        assert!(m.inverse().is_none());
        assert!(m.solve(&[int(1), int(0)]).is_none());
        assert_eq!(m.determinant(), int(0));
    }

    #[test]
    fn kernel_is_annihilated() {
        let m = Matrix::from_i64(&[vec![0, -1, 0], vec![0, 0, -1]]);
        let k = m.kernel();
        assert_eq!(k, vec![vec![int(1), int(0), int(0)]]);
        let m = Matrix::from_i64(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8]]);
        let k = m.kernel();
        assert_eq!(k.len(), 3);
        for v in k {
            assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn determinant_with_pivoting() {
        let m = Matrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.determinant(), int(-1));
        let m = Matrix::from_i64(&[vec![4, 2], vec![2, -2]]);
        assert_eq!(m.determinant(), int(-12));
    }
}
