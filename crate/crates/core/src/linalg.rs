//! Minimal dense real linear algebra: Kronecker products, a cyclic Jacobi
//! eigensolver for symmetric matrices, and matrix functions through spectra.
//!
//! Every operator in this crate is real symmetric in the chosen product
//! basis, so complex arithmetic is avoided on purpose. Dimensions stay at
//! or below 16, which keeps Jacobi robust and dependency-free.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Convergence target for the Jacobi sweep, relative to the Frobenius norm.
pub const JACOBI_TOL: f64 = 1e-12;
/// Sweep budget for the Jacobi iteration.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense row-major matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must equal rows*cols");
        Mat { rows, cols, data }
    }

    /// 2x2 convenience constructor, used for the single-site operators.
    pub fn from_2x2(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat::from_vec(2, 2, vec![a, b, c, d])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must match");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(l, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "vector length must match columns");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// `self += alpha * other`
    pub fn axpy(&mut self, alpha: f64, other: &Mat) {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        for (x, y) in self.data.iter_mut().zip(other.data.iter()) {
            *x += alpha * y;
        }
    }

    pub fn scaled(&self, alpha: f64) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| alpha * x).collect(),
        }
    }

    pub fn trace(&self) -> f64 {
        assert_eq!(self.rows, self.cols, "trace needs a square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Kronecker product. The `(ia*dim(b)+ib, ja*dim(b)+jb)` entry of the result
/// is `a[ia,ja] * b[ib,jb]`.
pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let mut out = Mat::zeros(a.rows * b.rows, a.cols * b.cols);
    for ia in 0..a.rows {
        for ja in 0..a.cols {
            let x = a[(ia, ja)];
            if x == 0.0 {
                continue;
            }
            for ib in 0..b.rows {
                for jb in 0..b.cols {
                    out[(ia * b.rows + ib, ja * b.cols + jb)] = x * b[(ib, jb)];
                }
            }
        }
    }
    out
}

/// Dense real symmetric matrix. Construction symmetrizes the entries, so the
/// stored matrix always satisfies `a[i][j] == a[j][i]` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    mat: Mat,
}

impl SymMatrix {
    pub fn new(dim: usize, entries: Vec<f64>) -> Self {
        SymMatrix::from_mat(Mat::from_vec(dim, dim, entries))
    }

    pub fn from_mat(mut m: Mat) -> Self {
        assert_eq!(m.rows(), m.cols(), "symmetric matrix must be square");
        let n = m.rows();
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
                m[(i, j)] = avg;
                m[(j, i)] = avg;
            }
        }
        SymMatrix { mat: m }
    }

    pub fn zeros(dim: usize) -> Self {
        SymMatrix {
            mat: Mat::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        SymMatrix {
            mat: Mat::identity(dim),
        }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Mat::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        SymMatrix { mat: m }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn as_mat(&self) -> &Mat {
        &self.mat
    }

    pub fn into_mat(self) -> Mat {
        self.mat
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.frobenius_norm()
    }

    /// Quadratic form `v^T A v`.
    pub fn expectation(&self, v: &[f64]) -> f64 {
        let av = self.mat.mul_vec(v);
        v.iter().zip(av.iter()).map(|(x, y)| x * y).sum()
    }
}

impl Index<(usize, usize)> for SymMatrix {
    type Output = f64;
    fn index(&self, idx: (usize, usize)) -> &f64 {
        &self.mat[idx]
    }
}

/// Eigenvalues in ascending order paired with orthonormal eigenvector
/// columns: `A = V D V^T`.
#[derive(Debug, Clone)]
pub struct SpectralDecomp {
    eigenvalues: Vec<f64>,
    eigenvectors: Mat,
}

impl SpectralDecomp {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &Mat {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }
}

fn off_diagonal_norm(m: &Mat) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)] * m[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Annihilate `m[p][q]` with a Jacobi rotation, accumulating into `v`.
fn jacobi_rotate(m: &mut Mat, v: &mut Mat, p: usize, q: usize) {
    let n = m.rows();
    let apq = m[(p, q)];
    let theta = 0.5 * (m[(q, q)] - m[(p, p)]) / apq;
    // smaller-magnitude root of t^2 + 2*theta*t - 1 = 0
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // A <- G^T A G with G the rotation in the (p,q) plane
    for j in 0..n {
        let mpj = m[(p, j)];
        let mqj = m[(q, j)];
        m[(p, j)] = c * mpj - s * mqj;
        m[(q, j)] = s * mpj + c * mqj;
    }
    for i in 0..n {
        let mip = m[(i, p)];
        let miq = m[(i, q)];
        m[(i, p)] = c * mip - s * miq;
        m[(i, q)] = s * mip + c * miq;
    }
    m[(p, q)] = 0.0;
    m[(q, p)] = 0.0;

    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = c * vip - s * viq;
        v[(i, q)] = s * vip + c * viq;
    }
}

/// Symmetric eigendecomposition by cyclic Jacobi with a threshold strategy.
///
/// Deterministic: the (p,q) sweep order is fixed, so identical inputs give
/// identical output. Converges when the off-diagonal Frobenius norm drops
/// below `JACOBI_TOL * ||A||_F`; errors with [`Error::NonConvergence`] after
/// [`JACOBI_MAX_SWEEPS`] sweeps.
pub fn eig_sym(a: &SymMatrix) -> Result<SpectralDecomp> {
    let n = a.dim();
    let mut m = a.as_mat().clone();
    let mut v = Mat::identity(n);
    let target = JACOBI_TOL * a.frobenius_norm();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&m);
        if off <= target {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NonConvergence {
                sweeps,
                off_norm: off,
            });
        }
        // During the first sweeps, rotating away entries far below the mean
        // off-diagonal magnitude is wasted work; afterwards take everything.
        let thresh = if sweeps < 3 {
            0.2 * off / (n * n) as f64
        } else {
            0.0
        };
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                if m[(p, q)].abs() <= thresh {
                    continue;
                }
                jacobi_rotate(&mut m, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| m[(i, i)]).collect();
    let mut eigenvectors = Mat::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            eigenvectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(SpectralDecomp {
        eigenvalues,
        eigenvectors,
    })
}

/// Apply a scalar function through the spectrum: returns `V f(D) V^T`.
///
/// Errors with [`Error::DomainError`] if `f` is non-finite at any eigenvalue.
pub fn matrix_function(d: &SpectralDecomp, f: impl Fn(f64) -> f64) -> Result<SymMatrix> {
    let n = d.dim();
    let mut fvals = Vec::with_capacity(n);
    for &lambda in d.eigenvalues() {
        let y = f(lambda);
        if !y.is_finite() {
            return Err(Error::DomainError {
                eigenvalue: lambda,
                reason: "function value is not finite",
            });
        }
        fvals.push(y);
    }

    let v = d.eigenvectors();
    let mut out = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for (l, fv) in fvals.iter().enumerate() {
                s += v[(i, l)] * fv * v[(j, l)];
            }
            out[(i, j)] = s;
        }
    }
    Ok(SymMatrix::from_mat(out))
}
