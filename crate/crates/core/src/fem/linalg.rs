//! Small dense symmetric linear algebra: just enough for an 8-DOF truss.
//!
//! Everything here is sized for systems of a dozen unknowns at most, so
//! the kernels favor clarity over blocking or pivoting sophistication:
//! an unpivoted Cholesky factorization, triangular solves, a cyclic
//! Jacobi eigenvalue sweep, and a Sylvester-inertia bisection that
//! serves as an independent route to the smallest generalized
//! eigenvalue.

// index-loop style is deliberate in these kernels
#![allow(clippy::needless_range_loop)]

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not positive definite (pivot {pivot:.3e} at row {row})")]
    NotPositiveDefinite { row: usize, pivot: f64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Dense square matrix, row-major.
#[derive(Clone, PartialEq)]
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

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "row {i} has wrong length");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)] * x[j]).sum())
            .collect()
    }

    pub fn scaled(&self, factor: f64) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    /// `self - shift * other`
    pub fn shifted(&self, shift: f64, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - shift * b)
                .collect(),
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                write!(f, "{:12.5e} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Lower-triangular Cholesky factor `L` with `A = L Lᵀ`.
#[derive(Clone, Debug)]
pub struct Cholesky {
    l: Matrix,
}

impl Cholesky {
    pub fn factor(a: &Matrix) -> Result<Self, LinalgError> {
        let n = a.size();
        let mut l = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let mut sum = a[(i, j)];
                for k in 0..j {
                    sum -= l[(i, k)] * l[(j, k)];
                }
                if i == j {
                    if sum <= 0.0 {
                        return Err(LinalgError::NotPositiveDefinite { row: i, pivot: sum });
                    }
                    l[(i, j)] = sum.sqrt();
                } else {
                    l[(i, j)] = sum / l[(j, j)];
                }
            }
        }
        Ok(Self { l })
    }

    pub fn lower(&self) -> &Matrix {
        &self.l
    }

    /// Solve `A x = b` via the two triangular systems.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let y = self.forward(b);
        self.backward(&y)
    }

    /// Solve `L y = b`.
    pub fn forward(&self, b: &[f64]) -> Vec<f64> {
        let n = self.l.size();
        assert_eq!(b.len(), n);
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut sum = b[i];
            for k in 0..i {
                sum -= self.l[(i, k)] * y[k];
            }
            y[i] = sum / self.l[(i, i)];
        }
        y
    }

    /// Solve `Lᵀ x = y`.
    pub fn backward(&self, y: &[f64]) -> Vec<f64> {
        let n = self.l.size();
        assert_eq!(y.len(), n);
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut sum = y[i];
            for k in (i + 1)..n {
                sum -= self.l[(k, i)] * x[k];
            }
            x[i] = sum / self.l[(i, i)];
        }
        x
    }
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations,
/// returned in ascending order. Converges to machine precision for the
/// matrix sizes used here.
pub fn jacobi_eigenvalues(a: &Matrix) -> Vec<f64> {
    let n = a.size();
    let mut m = a.clone();
    let scale: f64 = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)].abs()).fold(0.0, f64::max))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let mut off = 0.0_f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off = off.max(m[(i, j)].abs());
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq.abs() <= 1e-18 * scale {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| m[(i, i)]).collect();
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eig
}

/// Generalized symmetric eigenvalues of `K x = λ M x` with `M` positive
/// definite: factor `M = L Lᵀ` and take the ordinary spectrum of
/// `L⁻¹ K L⁻ᵀ`.
pub fn generalized_eigenvalues(k: &Matrix, m: &Matrix) -> Result<Vec<f64>, LinalgError> {
    if k.size() != m.size() {
        return Err(LinalgError::Dimension(format!(
            "K is {}x{} but M is {}x{}",
            k.size(),
            k.size(),
            m.size(),
            m.size()
        )));
    }
    let n = k.size();
    let chol = Cholesky::factor(m)?;
    // columns of L⁻¹ K L⁻ᵀ built one at a time
    let mut reduced = Matrix::zeros(n);
    for j in 0..n {
        // w = L⁻ᵀ e_j, v = K w, col = L⁻¹ v
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        let w = chol.backward(&e);
        let v = k.mul_vec(&w);
        let col = chol.forward(&v);
        for i in 0..n {
            reduced[(i, j)] = col[i];
        }
    }
    // symmetrize against rounding before the Jacobi sweep
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (reduced[(i, j)] + reduced[(j, i)]);
            reduced[(i, j)] = avg;
            reduced[(j, i)] = avg;
        }
    }
    Ok(jacobi_eigenvalues(&reduced))
}

/// Number of negative pivots of the LDLᵀ factorization of `A`, i.e. the
/// count of eigenvalues below zero (Sylvester's law of inertia). `None`
/// when a pivot degenerates; callers nudge the shift and retry.
fn negative_pivots(a: &Matrix) -> Option<usize> {
    let n = a.size();
    let mut m = a.clone();
    let scale: f64 = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)].abs()).fold(0.0, f64::max))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut negatives = 0;
    for p in 0..n {
        let pivot = m[(p, p)];
        if pivot.abs() <= 1e-13 * scale {
            return None;
        }
        if pivot < 0.0 {
            negatives += 1;
        }
        for i in (p + 1)..n {
            let factor = m[(i, p)] / pivot;
            for j in (p + 1)..n {
                m[(i, j)] -= factor * m[(p, j)];
            }
        }
    }
    Some(negatives)
}

/// Smallest generalized eigenvalue of `K x = λ M x` located by bisection
/// on the inertia of `K - λ M`. Fully independent of the
/// Cholesky-plus-Jacobi production route, which makes it usable as a
/// reference oracle.
pub fn smallest_eigenvalue_by_inertia(
    k: &Matrix,
    m: &Matrix,
    rel_tol: f64,
) -> Result<f64, LinalgError> {
    let n = k.size();
    if n != m.size() {
        return Err(LinalgError::Dimension(
            "K and M sizes differ".to_string(),
        ));
    }
    let count_below = |lambda: f64| -> usize {
        let mut shift = lambda;
        let mut wobble = lambda.abs().max(1.0) * 1e-12;
        loop {
            if let Some(c) = negative_pivots(&k.shifted(shift, m)) {
                return c;
            }
            shift += wobble;
            wobble *= 2.0;
        }
    };
    // bracket: grow until at least one eigenvalue lies below `hi`
    let mut hi = 1.0;
    while count_below(hi) == 0 {
        hi *= 8.0;
        if !hi.is_finite() {
            return Err(LinalgError::Dimension(
                "no finite eigenvalue bracket".to_string(),
            ));
        }
    }
    let mut lo = 0.0;
    while hi - lo > rel_tol * hi.abs().max(1e-300) {
        let mid = 0.5 * (lo + hi);
        if count_below(mid) == 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
