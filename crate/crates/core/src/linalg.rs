//! Small dense linear algebra over `f64`. Everything here is at most 9×9.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use crate::error::{Error, Result};

/// Square row-major matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        Self::from_fn(n, |i, j| rows[i][j])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.transpose()) <= tol
    }

    /// Lower-triangular `L` with `self = L·Lᵀ`; fails unless positive definite.
    pub fn cholesky(&self) -> Result<Matrix> {
        let n = self.n;
        let mut l = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let s: f64 = (0..j).map(|k| l[(i, k)] * l[(j, k)]).sum();
                if i == j {
                    let d = self[(i, i)] - s;
                    if d <= 1e-12 {
                        return Err(Error::NotFiniteType(format!(
                            "Gram matrix is not positive definite (pivot {i} = {d:.3e})"
                        )));
                    }
                    l[(i, i)] = d.sqrt();
                } else {
                    l[(i, j)] = (self[(i, j)] - s) / l[(j, j)];
                }
            }
        }
        Ok(l)
    }

    /// Solves `self · x = b` by Gaussian elimination with partial pivoting.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.n;
        let mut a = self.clone();
        let mut x = b.to_vec();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&p, &q| a[(p, col)].abs().total_cmp(&a[(q, col)].abs()))
                .ok_or(Error::Singular)?;
            if a[(pivot, col)].abs() < 1e-14 {
                return Err(Error::Singular);
            }
            if pivot != col {
                for k in 0..n {
                    a.data.swap(pivot * n + k, col * n + k);
                }
                x.swap(pivot, col);
            }
            for r in col + 1..n {
                let f = a[(r, col)] / a[(col, col)];
                for k in col..n {
                    a[(r, k)] -= f * a[(col, k)];
                }
                x[r] -= f * x[col];
            }
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|k| a[(i, k)] * x[k]).sum();
            x[i] = (x[i] - s) / a[(i, i)];
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.n;
        let mut inv = Matrix::zeros(n);
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            let col = self.solve(&e)?;
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        Ok(inv)
    }

    /// Determinants of the leading principal submatrices.
    pub fn leading_minors(&self) -> Vec<f64> {
        (1..=self.n)
            .map(|k| {
                let sub = Matrix::from_fn(k, |i, j| self[(i, j)]);
                sub.determinant()
            })
            .collect()
    }

    pub fn determinant(&self) -> f64 {
        let n = self.n;
        let mut a = self.clone();
        let mut det = 1.0;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&p, &q| a[(p, col)].abs().total_cmp(&a[(q, col)].abs()))
                .unwrap_or(col);
            if a[(pivot, col)] == 0.0 {
                return 0.0;
            }
            if pivot != col {
                for k in 0..n {
                    a.data.swap(pivot * n + k, col * n + k);
                }
                det = -det;
            }
            det *= a[(col, col)];
            for r in col + 1..n {
                let f = a[(r, col)] / a[(col, col)];
                for k in col..n {
                    a[(r, k)] -= f * a[(col, k)];
                }
            }
        }
        det
    }

    /// Order of an orthogonal map: smallest `k ≤ cap` with `selfᵏ = I` within `tol`.
    pub fn order(&self, cap: usize, tol: f64) -> Option<usize> {
        let id = Matrix::identity(self.n);
        let mut p = self.clone();
        for k in 1..=cap {
            if p.max_abs_diff(&id) <= tol {
                return Some(k);
            }
            p = &p * self;
        }
        None
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Matrix::from_fn(self.n, |i, j| (0..self.n).map(|k| self[(i, k)] * rhs[(k, j)]).sum())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:>10.6}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// `vectors[k]` belongs to `values[k]`, unit length.
    pub vectors: Vec<Vec<f64>>,
}

const JACOBI_OFF_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

pub fn jacobi_eigen(m: &Matrix) -> Result<SymmetricEigen> {
    if !m.is_symmetric(1e-12) {
        return Err(Error::InvalidArgument("matrix is not symmetric".into()));
    }
    let n = m.dim();
    let mut a = m.clone();
    let mut v = Matrix::identity(n);
    let off = |a: &Matrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)] * a[(i, j)];
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    while off(&a) >= JACOBI_OFF_TOL {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    Ok(SymmetricEigen {
        values: order.iter().map(|&i| a[(i, i)]).collect(),
        vectors: order
            .iter()
            .map(|&j| (0..n).map(|i| v[(i, j)]).collect())
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cholesky_a2() {
        let g = Matrix::from_rows(&[vec![2.0, -1.0], vec![-1.0, 2.0]]);
        let l = g.cholesky().unwrap();
        assert!((l[(0, 0)] - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(l[(0, 1)], 0.0);
        assert!((l[(1, 0)] + 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!((l[(1, 1)] - 1.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let g = Matrix::from_rows(&[vec![2.0, -3.0], vec![-3.0, 2.0]]);
        assert!(matches!(g.cholesky(), Err(Error::NotFiniteType(_))));
    }

    #[test]
    fn inverse_round_trip() {
        let g = Matrix::from_rows(&[
            vec![2.0, -1.0, 0.0],
            vec![-1.0, 2.0, -1.0],
            vec![0.0, -1.0, 2.0],
        ]);
        let prod = &g * &g.inverse().unwrap();
        assert!(prod.max_abs_diff(&Matrix::identity(3)) < 1e-14);
        assert!((g.determinant() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn singular_solve() {
        let g = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert_eq!(g.solve(&[1.0, 1.0]), Err(Error::Singular));
    }

    #[test]
    fn jacobi_path_graph() {
        // Path P4 adjacency: eigenvalues 2cos(kπ/5).
        let m = Matrix::from_fn(4, |i, j| if i.abs_diff(j) == 1 { 1.0 } else { 0.0 });
        let e = jacobi_eigen(&m).unwrap();
        let mut expected: Vec<f64> = (1..=4)
            .map(|k| 2.0 * (k as f64 * std::f64::consts::PI / 5.0).cos())
            .collect();
        expected.sort_by(f64::total_cmp);
        for (got, want) in e.values.iter().zip(&expected) {
            assert!((got - want).abs() < 1e-12);
        }
        for (val, vec) in e.values.iter().zip(&e.vectors) {
            let mv = m.apply(vec);
            for (x, y) in mv.iter().zip(vec) {
                assert!((x - val * y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn order_of_rotation() {
        let t = 2.0 * std::f64::consts::PI / 7.0;
        let r = Matrix::from_rows(&[vec![t.cos(), -t.sin()], vec![t.sin(), t.cos()]]);
        assert_eq!(r.order(100, 1e-9), Some(7));
    }
}
