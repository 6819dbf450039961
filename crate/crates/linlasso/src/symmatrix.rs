//! Small dense symmetric PSD linear algebra: pivoted Cholesky factorization,
//! minimum-norm solves, and quadratic forms.
//!
//! Correlation matrices arising here are small (a handful of predictors) but
//! may be exactly singular, e.g. when a predictor is duplicated. Every place
//! the math calls for an inverse goes through [`SymFactorization`] instead; no
//! explicit inverse is ever formed, and singular systems get the canonical
//! minimum-norm solution.

use crate::error::{Error, Result};

/// Relative pivot tolerance used throughout the crate. Correlation matrices
/// have unit diagonal, so relative and absolute scales coincide.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Dense symmetric matrix in full row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMat {
    dim: usize,
    data: Vec<f64>,
}

impl SymMat {
    pub fn zeros(dim: usize) -> Self {
        SymMat {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    /// Build from full rows, verifying symmetry to 1e-12 and storing the
    /// symmetrized average so later arithmetic sees an exactly symmetric matrix.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            for j in 0..i {
                let diff = (rows[i][j] - rows[j][i]).abs();
                if diff > 1e-12 {
                    return Err(Error::NotSymmetric { i, j, diff });
                }
            }
        }
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                data[i * dim + j] = 0.5 * (rows[i][j] + rows[j][i]);
            }
        }
        Ok(SymMat { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Set M[i][j] and M[j][i] together.
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// Principal submatrix picked out by `idx` (in the given order).
    pub fn principal(&self, idx: &[usize]) -> SymMat {
        let k = idx.len();
        let mut out = SymMat::zeros(k);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.data[a * k + b] = self.get(i, j);
            }
        }
        out
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }
}

/// Pivoted Cholesky factorization of a symmetric PSD matrix.
///
/// The factor `b` is n×rank with rows kept in original index order, so
/// `M = B·Bᵀ` holds entrywise without any permutation bookkeeping for the
/// caller. `piv[k]` records which original index was chosen at step `k`.
#[derive(Debug, Clone)]
pub struct SymFactorization {
    dim: usize,
    rank: usize,
    tol_used: f64,
    /// n×rank, row-major, rows in original order.
    b: Vec<f64>,
    piv: Vec<usize>,
    /// Cached Cholesky factor of G = BᵀB (rank×rank, lower), used for
    /// minimum-norm solves when rank < dim.
    g_chol: Vec<f64>,
}

/// Factor a symmetric PSD matrix with diagonal pivoting.
///
/// Pivots below `tol`·(largest initial diagonal) are treated as zero and
/// define the numerical rank. A remaining diagonal entry more negative than
/// that threshold means the matrix is not PSD.
pub fn factor_psd(m: &SymMat, tol: f64) -> Result<SymFactorization> {
    let n = m.dim();
    let mut d: Vec<f64> = (0..n).map(|i| m.get(i, i)).collect();
    let max_diag = d.iter().cloned().fold(0.0_f64, f64::max);
    let thresh = tol * max_diag.max(1.0e-300);
    for (i, &di) in d.iter().enumerate() {
        if di < -thresh {
            return Err(Error::NotPsd { pivot: di, step: i });
        }
    }

    let mut b = vec![0.0; n * n]; // trapezoidal factor, rows in original order
    let mut p: Vec<usize> = (0..n).collect();
    let mut rank = n;
    for k in 0..n {
        // choose the largest remaining diagonal as pivot
        let (q, &dq) = d
            .iter()
            .enumerate()
            .filter(|(i, _)| p[k..].contains(i))
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .expect("non-empty pivot candidates");
        if dq <= thresh {
            // rank found; anything meaningfully negative disqualifies PSD
            for &i in &p[k..] {
                if d[i] < -thresh {
                    return Err(Error::NotPsd { pivot: d[i], step: k });
                }
            }
            rank = k;
            break;
        }
        let pos = p[k..].iter().position(|&i| i == q).unwrap() + k;
        p.swap(k, pos);
        let pk = p[k];
        let lkk = dq.sqrt();
        b[pk * n + k] = lkk;
        for &i in &p[k + 1..] {
            let mut v = m.get(i, pk);
            for t in 0..k {
                v -= b[i * n + t] * b[pk * n + t];
            }
            let lik = v / lkk;
            b[i * n + k] = lik;
            d[i] -= lik * lik;
        }
    }

    // shrink to n×rank
    let mut factor = vec![0.0; n * rank];
    for i in 0..n {
        factor[i * rank..(i + 1) * rank].copy_from_slice(&b[i * n..i * n + rank]);
    }

    // G = BᵀB and its (unpivoted) Cholesky; G is SPD whenever rank > 0
    let mut g = vec![0.0; rank * rank];
    for a in 0..rank {
        for bcol in a..rank {
            let mut s = 0.0;
            for i in 0..n {
                s += factor[i * rank + a] * factor[i * rank + bcol];
            }
            g[a * rank + bcol] = s;
            g[bcol * rank + a] = s;
        }
    }
    let g_chol = chol_lower(&g, rank).ok_or(Error::NotPsd {
        pivot: 0.0,
        step: rank,
    })?;

    Ok(SymFactorization {
        dim: n,
        rank,
        tol_used: tol,
        b: factor,
        piv: p,
        g_chol,
    })
}

/// Plain (unpivoted) Cholesky of a dense SPD matrix in row-major storage.
fn chol_lower(a: &[f64], n: usize) -> Option<Vec<f64>> {
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if s <= 0.0 {
                    return None;
                }
                l[i * n + i] = s.sqrt();
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    Some(l)
}

/// Solve L y = rhs then Lᵀ x = y for a dense lower factor.
fn chol_solve(l: &[f64], n: usize, rhs: &[f64]) -> Vec<f64> {
    let mut y = rhs.to_vec();
    for i in 0..n {
        for k in 0..i {
            y[i] -= l[i * n + k] * y[k];
        }
        y[i] /= l[i * n + i];
    }
    for i in (0..n).rev() {
        for k in i + 1..n {
            y[i] -= l[k * n + i] * y[k];
        }
        y[i] /= l[i * n + i];
    }
    y
}

impl SymFactorization {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn tol_used(&self) -> f64 {
        self.tol_used
    }

    pub fn pivots(&self) -> &[usize] {
        &self.piv
    }

    /// `B·Bᵀ`, for reconstruction checks.
    pub fn reconstruct(&self) -> SymMat {
        let n = self.dim;
        let r = self.rank;
        let mut out = SymMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..r {
                    s += self.b[i * r + k] * self.b[j * r + k];
                }
                out.data[i * n + j] = s;
            }
        }
        out
    }

    fn bt_mul(&self, v: &[f64]) -> Vec<f64> {
        let (n, r) = (self.dim, self.rank);
        let mut out = vec![0.0; r];
        for i in 0..n {
            let vi = v[i];
            for k in 0..r {
                out[k] += self.b[i * r + k] * vi;
            }
        }
        out
    }

    fn b_mul(&self, u: &[f64]) -> Vec<f64> {
        let (n, r) = (self.dim, self.rank);
        let mut out = vec![0.0; n];
        for i in 0..n {
            let mut s = 0.0;
            for k in 0..r {
                s += self.b[i * r + k] * u[k];
            }
            out[i] = s;
        }
        out
    }

    /// Forward-substitute B v = rhs in pivot order (full rank only, where B is
    /// lower triangular under the pivot permutation).
    fn tri_forward(&self, rhs: &[f64]) -> Vec<f64> {
        let r = self.rank;
        let mut v = vec![0.0; r];
        for k in 0..r {
            let row = self.piv[k];
            let mut s = rhs[row];
            for t in 0..k {
                s -= self.b[row * r + t] * v[t];
            }
            v[k] = s / self.b[row * r + k];
        }
        v
    }

    /// Back-substitute Bᵀ x = v in pivot order (full rank only). The result is
    /// returned in original index order.
    fn tri_backward(&self, v: &[f64]) -> Vec<f64> {
        let r = self.rank;
        let mut w = vec![0.0; r];
        for k in (0..r).rev() {
            let mut s = v[k];
            for t in k + 1..r {
                let row = self.piv[t];
                s -= self.b[row * r + k] * w[t];
            }
            w[k] = s / self.b[self.piv[k] * r + k];
        }
        let mut x = vec![0.0; self.dim];
        for k in 0..r {
            x[self.piv[k]] = w[k];
        }
        x
    }

    /// Minimum-norm solution of M x = b. For full-rank M this is the exact
    /// solution via two triangular solves; for singular M the solution is
    /// restricted to the numerical range, and a right-hand side with a
    /// component outside that range (beyond tol·‖b‖) is rejected.
    pub fn solve_min_norm(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        if rhs.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rhs.len(),
            });
        }
        if self.rank == self.dim {
            let v = self.tri_forward(rhs);
            return Ok(self.tri_backward(&v));
        }
        let norm_b = norm2(rhs);
        if self.rank == 0 {
            if norm_b > self.tol_used * norm_b.max(1.0) {
                return Err(Error::InconsistentSystem { residual: norm_b });
            }
            return Ok(vec![0.0; self.dim]);
        }
        // x = B G⁻¹ G⁻¹ Bᵀ b with G = BᵀB; consistency means b lies in col(B).
        let t = self.bt_mul(rhs);
        let u = chol_solve(&self.g_chol, self.rank, &t);
        let proj = self.b_mul(&u);
        let mut resid = 0.0;
        for i in 0..self.dim {
            resid += (proj[i] - rhs[i]) * (proj[i] - rhs[i]);
        }
        let resid = resid.sqrt();
        if resid > self.tol_used * norm_b.max(1.0) {
            return Err(Error::InconsistentSystem { residual: resid });
        }
        let w = chol_solve(&self.g_chol, self.rank, &u);
        Ok(self.b_mul(&w))
    }

    /// Quadratic form bᵀ M⁺ b, computed through the factorization on a path
    /// independent of [`solve_min_norm`] (‖·‖² of a triangular solve rather
    /// than an inner product with the solution vector).
    pub fn quad_form(&self, rhs: &[f64]) -> Result<f64> {
        if rhs.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rhs.len(),
            });
        }
        if self.rank == self.dim {
            let v = self.tri_forward(rhs);
            return Ok(v.iter().map(|x| x * x).sum());
        }
        let norm_b = norm2(rhs);
        if self.rank == 0 {
            if norm_b > self.tol_used * norm_b.max(1.0) {
                return Err(Error::InconsistentSystem { residual: norm_b });
            }
            return Ok(0.0);
        }
        let t = self.bt_mul(rhs);
        let u = chol_solve(&self.g_chol, self.rank, &t);
        let proj = self.b_mul(&u);
        let mut resid = 0.0;
        for i in 0..self.dim {
            resid += (proj[i] - rhs[i]) * (proj[i] - rhs[i]);
        }
        let resid = resid.sqrt();
        if resid > self.tol_used * norm_b.max(1.0) {
            return Err(Error::InconsistentSystem { residual: resid });
        }
        Ok(u.iter().map(|x| x * x).sum())
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
