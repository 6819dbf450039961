//! Response-distribution content of predictor subsets.
//!
//! For a subset δ of standardized predictors with response correlations c_δ
//! and predictor correlation matrix C_δ, the share of the response
//! distribution the subset carries is σ(δ) = (c_δᵀ C_δ⁻¹ c_δ)^{1/2} — the
//! multiple correlation between the response and the best linear combination
//! of the subset. σ² is also the variance explained by the least-squares fit
//! on standardized columns, which gives an independent cross-check against
//! residuals computed from the data itself.

use crate::error::{Error, Result};
use crate::standardize::{CorrelationSummary, StandardizedDataset};
use crate::symmatrix::{factor_psd, SymFactorization, DEFAULT_TOL};

/// Validate a predictor subset against `r` columns: in range, no duplicates.
/// Returns a sorted copy.
pub(crate) fn check_subset(subset: &[usize], r: usize) -> Result<Vec<usize>> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    for w in s.windows(2) {
        if w[0] == w[1] {
            return Err(Error::InvalidArgument(format!(
                "duplicate predictor index {} in subset",
                w[0] + 1
            )));
        }
    }
    if let Some(&bad) = s.iter().find(|&&i| i >= r) {
        return Err(Error::IndexOutOfRange { index: bad, r });
    }
    Ok(s)
}

fn sub_correlations(summary: &CorrelationSummary, subset: &[usize]) -> (Vec<f64>, SymFactorization) {
    let c_sub: Vec<f64> = subset.iter().map(|&i| summary.c[i]).collect();
    let m = summary.cmat.principal(subset);
    let fact = factor_psd(&m, DEFAULT_TOL)
        .expect("a principal submatrix of a correlation matrix is positive semidefinite");
    (c_sub, fact)
}

/// Squared content σ²(δ) = c_δᵀ C_δ⁻¹ c_δ, clipped to [0, 1].
pub fn sigma_squared(summary: &CorrelationSummary, subset: &[usize]) -> Result<f64> {
    let subset = check_subset(subset, summary.c.len())?;
    if subset.is_empty() {
        return Ok(0.0);
    }
    let (c_sub, fact) = sub_correlations(summary, &subset);
    let q = fact.quad_form(&c_sub)?;
    Ok(q.clamp(0.0, 1.0))
}

/// Content σ(δ) ∈ [0, 1].
pub fn sigma(summary: &CorrelationSummary, subset: &[usize]) -> Result<f64> {
    Ok(sigma_squared(summary, subset)?.sqrt())
}

/// Coefficients of the best linear predictor on the subset, in standardized
/// units: β = C_δ⁻¹ c_δ (the minimum-norm solution when C_δ is singular).
/// Ordered to match the sorted subset.
pub fn coefficients(summary: &CorrelationSummary, subset: &[usize]) -> Result<Vec<f64>> {
    let subset = check_subset(subset, summary.c.len())?;
    if subset.is_empty() {
        return Ok(Vec::new());
    }
    let (c_sub, fact) = sub_correlations(summary, &subset);
    fact.solve_min_norm(&c_sub)
}

/// Predicted standardized response from a subset model: ŷ = Σ β_k x_{j_k}.
pub fn predict_subset(x_cols: &[Vec<f64>], subset: &[usize], beta: &[f64]) -> Vec<f64> {
    let n = x_cols.first().map_or(0, |c| c.len());
    let mut out = vec![0.0; n];
    for (&j, &b) in subset.iter().zip(beta) {
        for (o, &v) in out.iter_mut().zip(&x_cols[j]) {
            *o += b * v;
        }
    }
    out
}

/// Least-squares fit of a subset model with residual-based uncertainty.
#[derive(Debug, Clone)]
pub struct LsFit {
    /// Sorted predictor indices (0-based).
    pub subset: Vec<usize>,
    pub beta: Vec<f64>,
    /// Standard errors; `None` when the subset is collinear, in which case
    /// per-coefficient uncertainty is not identified.
    pub se: Option<Vec<f64>>,
    pub rss: f64,
    /// Residual variance estimate RSS/(n − s).
    pub sigma2_resid: f64,
    /// Share of response variance left unexplained, RSS/n. Equals 1 − σ²(δ)
    /// up to rounding — computed from data residuals, not from correlations.
    pub resid_var_prop: f64,
    pub sigma_sq: f64,
}

pub fn ls_fit(
    data: &StandardizedDataset,
    summary: &CorrelationSummary,
    subset: &[usize],
) -> Result<LsFit> {
    let subset = check_subset(subset, summary.c.len())?;
    let n = data.n;
    let s = subset.len();
    if n <= s {
        return Err(Error::InvalidArgument(format!(
            "need more rows than predictors for a residual variance estimate (n = {n}, s = {s})"
        )));
    }

    let (beta, sigma_sq, fact_rank, diag_inv) = if subset.is_empty() {
        (Vec::new(), 0.0, 0, Some(Vec::new()))
    } else {
        let (c_sub, fact) = sub_correlations(summary, &subset);
        let beta = fact.solve_min_norm(&c_sub)?;
        let q = fact.quad_form(&c_sub)?.clamp(0.0, 1.0);
        let diag_inv = if fact.rank() == s {
            let mut d = Vec::with_capacity(s);
            for k in 0..s {
                let mut e = vec![0.0; s];
                e[k] = 1.0;
                d.push(fact.solve_min_norm(&e)?[k]);
            }
            Some(d)
        } else {
            None
        };
        (beta, q, fact.rank(), diag_inv)
    };

    let fitted = predict_subset(&data.x, &subset, &beta);
    let rss: f64 = data
        .y
        .iter()
        .zip(&fitted)
        .map(|(&y, &f)| (y - f) * (y - f))
        .sum();
    let sigma2_resid = rss / (n - s) as f64;
    let se = diag_inv.map(|d| {
        d.iter()
            .map(|&di| (sigma2_resid * di / n as f64).sqrt())
            .collect()
    });
    debug_assert!(subset.is_empty() || fact_rank > 0);

    Ok(LsFit {
        subset,
        beta,
        se,
        rss,
        sigma2_resid,
        resid_var_prop: rss / n as f64,
        sigma_sq,
    })
}
