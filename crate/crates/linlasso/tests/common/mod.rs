//! Independent oracles for the integration tests.
//!
//! Everything here deliberately avoids the library's own numerics: inverses
//! come from Gauss–Jordan elimination, the pseudo-inverse from a Gram–Schmidt
//! rank factorization, least squares from the normal equations, and integrals
//! from Simpson's rule. Slow and simple on purpose — these are the referees,
//! not the players.

#![allow(dead_code)] // each test binary uses its own subset of the oracles

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Mat = Vec<Vec<f64>>;

pub fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![0.0; cols]; rows]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

pub fn transpose(a: &Mat) -> Mat {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = zeros(a[0].len(), a.len());
    for (i, row) in a.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            out[j][i] = v;
        }
    }
    out
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    let mut out = zeros(n, m);
    for i in 0..n {
        for t in 0..k {
            let av = a[i][t];
            if av == 0.0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += av * b[t][j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &Mat, v: &[f64]) -> Vec<f64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(&x, &y)| x * y).sum())
        .collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Gauss–Jordan inverse with partial pivoting. `None` when a pivot falls
/// below 1e-12, i.e. the matrix is (numerically) singular.
pub fn gj_inverse(a: &Mat) -> Option<Mat> {
    let n = a.len();
    let mut work: Mat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| work[i][col].abs().partial_cmp(&work[j][col].abs()).unwrap())?;
        if work[pivot_row][col].abs() < 1e-12 {
            return None;
        }
        work.swap(col, pivot_row);
        let p = work[col][col];
        for v in work[col].iter_mut() {
            *v /= p;
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = work[i][col];
            if f == 0.0 {
                continue;
            }
            for j in 0..2 * n {
                work[i][j] -= f * work[col][j];
            }
        }
    }
    Some(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Moore–Penrose pseudo-inverse of a symmetric PSD matrix through an
/// orthonormal basis of its column space: modified Gram–Schmidt (with one
/// reorthogonalization pass) yields Q with orthonormal columns spanning
/// range(M), and with G = QᵀM the rank factorization M = QG gives
/// M⁺ = Gᵀ(GGᵀ)⁻¹Qᵀ. Using an orthonormal left factor keeps the
/// factorization as well conditioned as M itself.
pub fn pseudo_inverse(m: &Mat) -> Mat {
    let n = m.len();
    if n == 0 {
        return Vec::new();
    }
    let scale = m
        .iter()
        .flat_map(|row| row.iter())
        .fold(0.0_f64, |acc, &v| acc.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let mut q: Vec<Vec<f64>> = Vec::new();
    for j in 0..n {
        let mut v: Vec<f64> = m.iter().map(|row| row[j]).collect();
        for _ in 0..2 {
            for u in &q {
                let proj = dot(&v, u);
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
        }
        let norm = dot(&v, &v).sqrt();
        if norm <= 1e-8 * scale {
            continue; // numerically dependent on the columns already taken
        }
        for vi in v.iter_mut() {
            *vi /= norm;
        }
        q.push(v);
    }
    if q.is_empty() {
        return zeros(n, n);
    }
    let qt: Mat = q; // k×n, rows are the orthonormal basis vectors
    let g = mat_mul(&qt, m); // k×n
    let ggt_inv = gj_inverse(&mat_mul(&g, &transpose(&g))).expect("GGᵀ is SPD");
    mat_mul(&mat_mul(&transpose(&g), &ggt_inv), &qt)
}

/// Quadratic form bᵀ M⁺ b through the pseudo-inverse — the oracle's route to
/// the same number the library computes through its factorization.
pub fn quad_form_oracle(m: &Mat, b: &[f64]) -> f64 {
    dot(b, &mat_vec(&pseudo_inverse(m), b))
}

/// Ordinary least squares through the normal equations: (XᵀX)⁻¹Xᵀy.
/// `x_cols` holds the columns of X.
pub fn normal_equations(y: &[f64], x_cols: &[Vec<f64>]) -> Option<Vec<f64>> {
    let r = x_cols.len();
    let mut xtx = zeros(r, r);
    let mut xty = vec![0.0; r];
    for i in 0..r {
        for j in 0..r {
            xtx[i][j] = dot(&x_cols[i], &x_cols[j]);
        }
        xty[i] = dot(&x_cols[i], y);
    }
    gj_inverse(&xtx).map(|inv| mat_vec(&inv, &xty))
}

/// Composite Simpson's rule on [a, b] with n (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    assert!(n >= 2 && n.is_multiple_of(2), "need an even panel count");
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// r×k matrix with orthonormal columns, by modified Gram–Schmidt on random
/// draws (redrawing the whole set on a near-degenerate draw).
pub fn orthonormal_columns(rng: &mut ChaCha8Rng, r: usize, k: usize) -> Mat {
    'redraw: loop {
        let mut cols: Vec<Vec<f64>> = Vec::with_capacity(k);
        for _ in 0..k {
            let mut v: Vec<f64> = (0..r).map(|_| rng.gen_range(-1.0..1.0)).collect();
            for u in &cols {
                let proj = dot(&v, u);
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
            let norm = dot(&v, &v).sqrt();
            if norm < 1e-3 {
                continue 'redraw;
            }
            for vi in v.iter_mut() {
                *vi /= norm;
            }
            cols.push(v);
        }
        let mut out = zeros(r, k);
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                out[i][j] = v;
            }
        }
        return out;
    }
}

/// Factor B (r×k) whose singular values are drawn from [0.7, 1.5], so BBᵀ has
/// its nonzero eigenvalues well separated from zero and rank detection is
/// never a judgment call.
pub fn spectral_gap_factor(rng: &mut ChaCha8Rng, r: usize, k: usize) -> Mat {
    let mut b = orthonormal_columns(rng, r, k);
    let d: Vec<f64> = (0..k).map(|_| rng.gen_range(0.7..1.5)).collect();
    for row in b.iter_mut() {
        for (j, v) in row.iter_mut().enumerate() {
            *v *= d[j];
        }
    }
    b
}
