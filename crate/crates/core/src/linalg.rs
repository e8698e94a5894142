//! Dense linear algebra: an exact-capable matrix type over any [`Field`]
//! (Gaussian elimination for rank, kernels and solves) and a few numeric
//! helpers on `nalgebra` complex matrices (SVD-based kernels and images).

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::field::Field;

pub type CMat = DMatrix<Complex64>;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m: Self = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
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

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::negligible)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b))
    }

    /// Entrywise identity used for hashing group elements.
    pub fn key(&self) -> Vec<F::Key> {
        self.data.iter().map(Field::key).collect()
    }

    pub fn to_cmat(&self) -> CMat {
        CMat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_c64())
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut best = None;
            let mut best_mag = 0.0;
            for i in r..self.rows {
                let x = &self[(i, c)];
                if !x.negligible() {
                    let m = x.magnitude();
                    if best.is_none() || (!F::EXACT && m > best_mag) {
                        best = Some(i);
                        best_mag = m;
                        if F::EXACT {
                            break;
                        }
                    }
                }
            }
            let Some(p) = best else { continue };
            self.swap_rows(r, p);
            let inv = F::one() / self[(r, c)].clone();
            for j in c..self.cols {
                let v = self[(r, j)].clone() * inv.clone();
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].negligible() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    let v = self[(i, j)].clone() - f.clone() * self[(r, j)].clone();
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        if !F::EXACT {
            for x in &mut self.data {
                if x.negligible() {
                    *x = F::zero();
                }
            }
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self * x = b`; returns a particular solution or `None` when inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!("inverse of {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = Mat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Numerical("singular matrix".into()));
        }
        Ok(Mat::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
    }

    /// `self = L D L^T` for a symmetric matrix with nonzero leading minors.
    /// Returns `(L, d)` with `L` unit lower triangular.
    pub fn ldl(&self) -> Result<(Self, Vec<F>)> {
        let n = self.rows;
        let mut l: Mat<F> = Mat::identity(n);
        let mut d = vec![F::zero(); n];
        for j in 0..n {
            let mut dj = self[(j, j)].clone();
            for k in 0..j {
                dj = dj - l[(j, k)].clone() * l[(j, k)].clone() * d[k].clone();
            }
            if dj.negligible() {
                return Err(Error::Numerical("LDL^T pivot vanished".into()));
            }
            d[j] = dj;
            for i in j + 1..n {
                let mut v = self[(i, j)].clone();
                for k in 0..j {
                    v = v - l[(i, k)].clone() * l[(j, k)].clone() * d[k].clone();
                }
                l[(i, j)] = v / d[j].clone();
            }
        }
        Ok((l, d))
    }
}

impl<F> std::ops::Index<(usize, usize)> for Mat<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> Mul for &Mat<F> {
    type Output = Mat<F>;
    fn mul(self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out: Mat<F> = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }
}

impl<F: Field> Add for &Mat<F> {
    type Output = Mat<F>;
    fn add(self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<F: Field> Sub for &Mat<F> {
    type Output = Mat<F>;
    fn sub(self, rhs: &Mat<F>) -> Mat<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<F: Field> Neg for &Mat<F> {
    type Output = Mat<F>;
    fn neg(self) -> Mat<F> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a.clone()).collect() }
    }
}

/// Rank of a list of vectors (as rows).
pub fn rank_of<F: Field>(vectors: &[Vec<F>], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = Mat::from_fn(vectors.len(), dim, |i, j| vectors[i][j].clone());
    m.rank()
}

/// Extracts a maximal linearly independent subset (by rows of the rref).
pub fn row_basis<F: Field>(vectors: &[Vec<F>], dim: usize) -> Vec<Vec<F>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Mat::from_fn(vectors.len(), dim, |i, j| vectors[i][j].clone());
    let r = m.rref().len();
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

/// Numeric subspace data of a complex matrix obtained from its SVD.
#[derive(Clone, Debug)]
pub struct SvdSubspaces {
    /// Orthonormal basis of the kernel (columns).
    pub kernel: CMat,
    /// Orthonormal basis of the image (columns).
    pub image: CMat,
    pub singular_values: Vec<f64>,
    pub threshold: f64,
}

/// Kernel and image by singular-value thresholding relative to the largest
/// singular value.
pub fn svd_subspaces(m: &CMat, rel_tol: f64) -> SvdSubspaces {
    let (r, c) = m.shape();
    let n = r.max(c);
    // Pad to square so the SVD yields complete singular bases.
    let mut sq = CMat::zeros(n, n);
    sq.view_mut((0, 0), (r, c)).copy_from(m);
    let svd = sq.svd(true, true);
    let u = svd.u.expect("left singular vectors");
    let v_t = svd.v_t.expect("right singular vectors");
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let threshold = if smax > 0.0 { rel_tol * smax } else { 0.0 };
    let big: Vec<usize> = (0..n).filter(|&i| sv[i] > threshold && smax > 0.0).collect();
    let small: Vec<usize> = (0..n).filter(|i| !big.contains(i)).collect();
    let image = CMat::from_fn(r, big.len(), |i, k| u[(i, big[k])]);
    // rows of v_t are right singular vectors; keep the first c coordinates.
    let kernel_cols: Vec<usize> = small;
    let mut kernel = CMat::from_fn(c, kernel_cols.len(), |i, k| v_t[(kernel_cols[k], i)].conj());
    if c < n {
        // padded columns are not part of the domain; re-orthonormalize
        kernel = orthonormal_columns(&kernel, 1e-10);
    }
    SvdSubspaces { kernel, image, singular_values: sv, threshold }
}

/// Orthonormal basis for the column span (dropping dependent columns).
pub fn orthonormal_columns(m: &CMat, tol: f64) -> CMat {
    let (r, c) = m.shape();
    if c == 0 {
        return CMat::zeros(r, 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors");
    let sv = &svd.singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..sv.len()).filter(|&i| smax > 0.0 && sv[i] > tol * smax.max(1.0)).collect();
    CMat::from_fn(r, keep.len(), |i, k| u[(i, keep[k])])
}

/// Largest absolute entry.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, Q};

    #[test]
    fn exact_rank_and_nullspace() {
        let m: Mat<Q> = Mat::from_rows(vec![
            vec![q(1, 1), q(2, 1), q(3, 1)],
            vec![q(2, 1), q(4, 1), q(6, 1)],
            vec![q(1, 1), q(0, 1), q(1, 1)],
        ]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(|x| x.negligible()));
    }

    #[test]
    fn solve_and_inverse() {
        let m: Mat<Q> = Mat::from_rows(vec![vec![q(2, 1), q(-1, 1)], vec![q(-1, 1), q(2, 1)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat::identity(2));
        let x = m.solve(&[q(1, 1), q(0, 1)]).unwrap();
        assert_eq!(x, vec![q(2, 3), q(1, 3)]);
        let singular: Mat<Q> = Mat::from_rows(vec![vec![q(1, 1), q(1, 1)], vec![q(1, 1), q(1, 1)]]);
        assert!(singular.solve(&[q(1, 1), q(0, 1)]).is_none());
        assert!(singular.inverse().is_err());
    }

    #[test]
    fn ldl_reconstructs() {
        let g: Mat<Q> = Mat::from_rows(vec![vec![q(2, 1), q(-1, 1)], vec![q(-1, 1), q(2, 1)]]);
        let (l, d) = g.ldl().unwrap();
        let dm = Mat::from_fn(2, 2, |i, j| if i == j { d[i].clone() } else { q(0, 1) });
        assert_eq!(&(&l * &dm) * &l.transpose(), g);
        assert_eq!(d, vec![q(2, 1), q(3, 2)]);
    }

    #[test]
    fn svd_kernel_of_rank_one() {
        let m = CMat::from_row_slice(2, 2, &[
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
        ]);
        let s = svd_subspaces(&m, 1e-8);
        assert_eq!(s.kernel.ncols(), 1);
        assert_eq!(s.image.ncols(), 1);
        assert!(max_abs(&(&m * &s.kernel)) < 1e-12);
    }
}
