//! Dense exact linear algebra over ℚ(i): echelon forms, kernels, determinants,
//! inverses, and linear systems with inconsistency certificates.

use crate::error::{Error, Result};
use crate::scalar::GaussScalar;
use std::fmt;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussScalar>,
}

/// Outcome of solving `A·x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    /// A particular solution and a basis of the homogeneous solution space.
    Consistent { particular: Vec<GaussScalar>, kernel: Vec<Vec<GaussScalar>> },
    /// Weights `y` with `yᵀA = 0` and `yᵀb ≠ 0`.
    Inconsistent { combination: Vec<GaussScalar>, value: GaussScalar },
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![GaussScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = GaussScalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix whose k-th column is `cols[k]`.
    pub fn from_columns(nrows: usize, cols: &[Vec<GaussScalar>]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows, "column length");
            for (i, v) in col.iter().enumerate() {
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[GaussScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<GaussScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<GaussScalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GaussScalar::is_zero)
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

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!("{}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[GaussScalar]) -> Vec<GaussScalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        (m, pivots)
    }

    /// Row-reduces using only the first `limit` columns as pivot candidates.
    fn rref_in_place(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].inv().expect("pivot is nonzero");
            for j in 0..self.cols {
                if !self[(r, j)].is_zero() {
                    self[(r, j)] = &self[(r, j)] * &inv;
                }
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in 0..self.cols {
                    if !self[(r, j)].is_zero() {
                        let d = &f * &self[(r, j)];
                        self[(i, j)] -= &d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A·x = 0}`, one vector per free column, in echelon-normalized form.
    pub fn nullspace(&self) -> Vec<Vec<GaussScalar>> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots, self.cols)
    }

    pub fn det(&self) -> Result<GaussScalar> {
        if !self.is_square() {
            return Err(Error::Shape(format!("determinant of {}x{}", self.rows, self.cols)));
        }
        let mut m = self.clone();
        let mut det = GaussScalar::one();
        for c in 0..self.cols {
            let Some(p) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(GaussScalar::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = &det * &piv;
            let inv = piv.inv()?;
            for i in c + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..m.cols {
                    if !m[(c, j)].is_zero() {
                        let d = &f * &m[(c, j)];
                        m[(i, j)] -= &d;
                    }
                }
            }
        }
        Ok(det)
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = GaussScalar::one();
        }
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize], ncols: usize) -> Vec<Vec<GaussScalar>> {
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![GaussScalar::zero(); ncols];
            v[f] = GaussScalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(row, f)];
            }
            v
        })
        .collect()
}

/// Solves `A·x = b` exactly. Inconsistent systems come with a certificate.
pub fn solve(a: &Matrix, b: &[GaussScalar]) -> Result<LinearSolution> {
    if b.len() != a.rows {
        return Err(Error::Shape(format!("rhs length {} for {} rows", b.len(), a.rows)));
    }
    let (m, n) = (a.rows, a.cols);
    // [A | b | I] so that row operations leave their weights in the identity block
    let mut aug = Matrix::zeros(m, n + 1 + m);
    for i in 0..m {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
        aug[(i, n + 1 + i)] = GaussScalar::one();
    }
    let pivots = aug.rref_in_place(n);
    for i in pivots.len()..m {
        if !aug[(i, n)].is_zero() {
            let combination = (0..m).map(|k| aug[(i, n + 1 + k)].clone()).collect();
            return Ok(LinearSolution::Inconsistent { combination, value: aug[(i, n)].clone() });
        }
    }
    let mut particular = vec![GaussScalar::zero(); n];
    for (row, &p) in pivots.iter().enumerate() {
        particular[p] = aug[(row, n)].clone();
    }
    let kernel = kernel_from_rref(&aug, &pivots, n);
    Ok(LinearSolution::Consistent { particular, kernel })
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = GaussScalar;
    fn index(&self, (i, j): (usize, usize)) -> &GaussScalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussScalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::sc;

    fn m(rows: &[&[&str]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| sc(s)).collect()).collect())
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&["1", "i"], &["2", "3"]]);
        assert_eq!(a.det().unwrap(), sc("3-2*i"));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(m(&[&["1", "2"], &["2", "4"]]).inverse().is_none());
        assert_eq!(m(&[&["0", "1"], &["1", "0"]]).det().unwrap(), sc("-1"));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = m(&[&["1", "2", "3", "4"], &["2", "4", "6", "8"], &["0", "1", "i", "0"]]);
        let ker = a.nullspace();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(a.apply(v).iter().all(GaussScalar::is_zero));
        }
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn inconsistent_certificate() {
        let a = m(&[&["1", "1"], &["2", "2"]]);
        let b = vec![sc("1"), sc("3")];
        match solve(&a, &b).unwrap() {
            LinearSolution::Inconsistent { combination, value } => {
                let at = a.transpose().apply(&combination);
                assert!(at.iter().all(GaussScalar::is_zero));
                let yb: GaussScalar = combination.iter().zip(&b).map(|(y, b)| y * b).sum();
                assert_eq!(yb, value);
                assert!(!value.is_zero());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn consistent_particular_solution() {
        let a = m(&[&["1", "1", "0"], &["0", "1", "1"]]);
        let b = vec![sc("2"), sc("i")];
        let LinearSolution::Consistent { particular, kernel } = solve(&a, &b).unwrap() else { panic!() };
        assert_eq!(a.apply(&particular), b);
        assert_eq!(kernel.len(), 1);
    }
}
