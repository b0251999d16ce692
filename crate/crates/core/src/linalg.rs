//! Small dense real matrices and the factorizations the rest of the crate
//! builds on: LU determinant/inverse, Householder QR, cyclic Jacobi
//! eigen-decomposition and one-sided Jacobi SVD. Sizes here are tiny
//! (d ≤ 6, or 2d for Hermitian embeddings), so everything is row-major
//! `Vec<f64>` with no blocking.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;
use core::ops::{Index, IndexMut, Mul};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { rows: r, cols: c, data })
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
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

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.cols.max(1)).map(<[f64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn scale(&self, k: f64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// Max-abs entry norm.
    pub fn norm_max(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..i {
                m = m.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        m
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        out
    }

    /// Determinant via LU with partial pivoting.
    pub fn det(&self) -> f64 {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for k in 0..n {
            let mut p = k;
            for i in k + 1..n {
                if a[i * n + k].abs() > a[p * n + k].abs() {
                    p = i;
                }
            }
            let pivot = a[p * n + k];
            if pivot == 0.0 {
                return 0.0;
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            det *= pivot;
            for i in k + 1..n {
                let f = a[i * n + k] / pivot;
                for j in k..n {
                    a[i * n + j] -= f * a[k * n + j];
                }
            }
        }
        det
    }

    /// Inverse by Gauss–Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        let scale = self.norm_max().max(f64::MIN_POSITIVE);
        for k in 0..n {
            let mut p = k;
            for i in k + 1..n {
                if a[i * n + k].abs() > a[p * n + k].abs() {
                    p = i;
                }
            }
            if a[p * n + k].abs() <= 1e-14 * scale {
                return Err(Error::Singular);
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                    inv.swap(k * n + j, p * n + j);
                }
            }
            let pivot = a[k * n + k];
            for j in 0..n {
                a[k * n + j] /= pivot;
                inv[k * n + j] /= pivot;
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a[i * n + k];
                if f == 0.0 {
                    continue;
                }
                for j in 0..n {
                    a[i * n + j] -= f * a[k * n + j];
                    inv[i * n + j] -= f * inv[k * n + j];
                }
            }
        }
        Ok(Self { rows: n, cols: n, data: inv })
    }

    /// Householder QR of a square matrix, normalized so that R has a
    /// non-negative diagonal. Returns (Q, R).
    pub fn qr_positive(&self) -> (Self, Self) {
        assert!(self.is_square());
        let n = self.rows;
        let mut r = self.clone();
        let mut q = Self::identity(n);
        for k in 0..n.saturating_sub(1) {
            let mut norm = 0.0;
            for i in k..n {
                norm += r[(i, k)] * r[(i, k)];
            }
            let norm = norm.sqrt();
            if norm == 0.0 {
                continue;
            }
            let alpha = if r[(k, k)] > 0.0 { -norm } else { norm };
            let mut v = vec![0.0; n];
            for i in k..n {
                v[i] = r[(i, k)];
            }
            v[k] -= alpha;
            let vnorm2: f64 = v[k..].iter().map(|x| x * x).sum();
            if vnorm2 == 0.0 {
                continue;
            }
            // R <- (I - 2vvᵀ/vᵀv) R ; Q <- Q (I - 2vvᵀ/vᵀv)
            for j in 0..n {
                let dot: f64 = (k..n).map(|i| v[i] * r[(i, j)]).sum();
                let f = 2.0 * dot / vnorm2;
                for i in k..n {
                    r[(i, j)] -= f * v[i];
                }
            }
            for i in 0..n {
                let dot: f64 = (k..n).map(|j| q[(i, j)] * v[j]).sum();
                let f = 2.0 * dot / vnorm2;
                for j in k..n {
                    q[(i, j)] -= f * v[j];
                }
            }
            for i in k + 1..n {
                r[(i, k)] = 0.0;
            }
        }
        for i in 0..n {
            if r[(i, i)] < 0.0 {
                for j in 0..n {
                    r[(i, j)] = -r[(i, j)];
                    q[(j, i)] = -q[(j, i)];
                }
            }
        }
        (q, r)
    }

    /// Cyclic Jacobi eigen-decomposition of a symmetric matrix. Returns
    /// eigenvalues (unsorted) and the orthogonal matrix whose columns are
    /// the eigenvectors.
    pub fn symmetric_eigen(&self) -> (Vec<f64>, Self) {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut v = Self::identity(n);
        for _sweep in 0..100 {
            let mut off = 0.0;
            for i in 0..n {
                for j in i + 1..n {
                    off += a[(i, j)] * a[(i, j)];
                }
            }
            let diag: f64 = (0..n).map(|i| a[(i, i)] * a[(i, i)]).sum();
            if off <= 1e-32 * diag.max(f64::MIN_POSITIVE) || off == 0.0 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    if apq == 0.0 {
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let cs = 1.0 / (t * t + 1.0).sqrt();
                    let sn = t * cs;
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = cs * akp - sn * akq;
                        a[(k, q)] = sn * akp + cs * akq;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = cs * apk - sn * aqk;
                        a[(q, k)] = sn * apk + cs * aqk;
                    }
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = cs * vkp - sn * vkq;
                        v[(k, q)] = sn * vkp + cs * vkq;
                    }
                }
            }
        }
        ((0..n).map(|i| a[(i, i)]).collect(), v)
    }

    /// One-sided Jacobi SVD of a square matrix: A = U diag(σ) Vᵀ with σ
    /// sorted in decreasing order.
    pub fn svd(&self) -> (Self, Vec<f64>, Self) {
        assert!(self.is_square());
        let n = self.rows;
        let mut u = self.clone();
        let mut v = Self::identity(n);
        for _sweep in 0..100 {
            let mut rotated = false;
            for p in 0..n {
                for q in p + 1..n {
                    let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                    for k in 0..n {
                        alpha += u[(k, p)] * u[(k, p)];
                        beta += u[(k, q)] * u[(k, q)];
                        gamma += u[(k, p)] * u[(k, q)];
                    }
                    if gamma.abs() <= 1e-15 * (alpha * beta).sqrt() || gamma == 0.0 {
                        continue;
                    }
                    rotated = true;
                    let zeta = (beta - alpha) / (2.0 * gamma);
                    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                    let t = if zeta == 0.0 { 1.0 } else { t };
                    let cs = 1.0 / (1.0 + t * t).sqrt();
                    let sn = cs * t;
                    for k in 0..n {
                        let ukp = u[(k, p)];
                        let ukq = u[(k, q)];
                        u[(k, p)] = cs * ukp - sn * ukq;
                        u[(k, q)] = sn * ukp + cs * ukq;
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = cs * vkp - sn * vkq;
                        v[(k, q)] = sn * vkp + cs * vkq;
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let mut sigma: Vec<f64> = (0..n)
            .map(|j| (0..n).map(|k| u[(k, j)] * u[(k, j)]).sum::<f64>().sqrt())
            .collect();
        for j in 0..n {
            if sigma[j] > 0.0 {
                for k in 0..n {
                    u[(k, j)] /= sigma[j];
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| sigma[b].partial_cmp(&sigma[a]).unwrap_or(core::cmp::Ordering::Equal));
        let mut us = Self::zeros(n, n);
        let mut vs = Self::zeros(n, n);
        let mut ss = vec![0.0; n];
        for (new, &old) in order.iter().enumerate() {
            ss[new] = sigma[old];
            for k in 0..n {
                us[(k, new)] = u[(k, old)];
                vs[(k, new)] = v[(k, old)];
            }
        }
        sigma = ss;
        (us, sigma, vs)
    }

    /// Negates column `j` in place.
    pub fn negate_column(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -self[(i, j)];
        }
    }

    /// Matrix exponential of a small matrix (scaling and squaring with a
    /// Taylor core).
    pub fn exp(&self) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        let norm = self.norm_max() * n as f64;
        let mut squarings = 0;
        let mut scaled = self.clone();
        if norm > 0.5 {
            squarings = (norm / 0.5).log2().ceil() as i32;
            scaled = self.scale(1.0 / (1u64 << squarings) as f64);
        }
        let mut result = Self::identity(n);
        let mut term = Self::identity(n);
        for k in 1..20 {
            term = term.matmul(&scaled).scale(1.0 / k as f64);
            result = result.add(&term);
        }
        for _ in 0..squarings {
            result = result.matmul(&result);
        }
        result
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

/// Eigenvalues of a Hermitian matrix given by its real and imaginary
/// parts, via the real symmetric embedding [[Re, −Im], [Im, Re]] (each
/// eigenvalue appears twice; the duplicates are removed).
pub fn hermitian_eigenvalues(re: &Matrix, im: &Matrix) -> Vec<f64> {
    let n = re.rows();
    let mut big = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            big[(i, j)] = re[(i, j)];
            big[(i + n, j + n)] = re[(i, j)];
            big[(i, j + n)] = -im[(i, j)];
            big[(i + n, j)] = im[(i, j)];
        }
    }
    let (mut vals, _) = big.symmetric_eigen();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    vals.into_iter().step_by(2).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Matrix {
        Matrix::from_rows(&[vec![2.0, -1.0, 0.5], vec![0.3, 1.5, -2.0], vec![1.0, 0.7, 3.0]]).unwrap()
    }

    #[test]
    fn qr_reconstructs_with_positive_diagonal() {
        let a = sample();
        let (q, r) = a.qr_positive();
        assert!((&q * &r).sub(&a).norm_max() < 1e-14);
        assert!((&q.transpose() * &q).sub(&Matrix::identity(3)).norm_max() < 1e-15);
        for i in 0..3 {
            assert!(r[(i, i)] > 0.0);
            for j in 0..i {
                assert_eq!(r[(i, j)], 0.0);
            }
        }
    }

    #[test]
    fn inverse_and_det() {
        let a = sample();
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).sub(&Matrix::identity(3)).norm_max() < 1e-14);
        // det by cofactor expansion
        let m = |i, j| a[(i, j)];
        let det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
            - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        assert!((a.det() - det).abs() < 1e-13);
        assert_eq!(Matrix::zeros(2, 2).inverse(), Err(Error::Singular));
    }

    #[test]
    fn eigen_and_svd() {
        let a = sample();
        let s = &a.transpose() * &a;
        let (vals, vecs) = s.symmetric_eigen();
        let recon = &(&vecs * &Matrix::diagonal(&vals)) * &vecs.transpose();
        assert!(recon.sub(&s).norm_max() < 1e-13);
        let (u, sig, v) = a.svd();
        let recon = &(&u * &Matrix::diagonal(&sig)) * &v.transpose();
        assert!(recon.sub(&a).norm_max() < 1e-13);
        assert!(sig.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn exp_of_diagonal() {
        let e = Matrix::diagonal(&[1.0, -2.0]).exp();
        assert!((e[(0, 0)] - 1.0f64.exp()).abs() < 1e-14);
        assert!((e[(1, 1)] - (-2.0f64).exp()).abs() < 1e-15);
    }
}
