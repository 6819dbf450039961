//! Column standardization, sign alignment, and correlation summaries.
//!
//! Every model in this crate works on standardized columns: each column is
//! centered and scaled so its Euclidean length is √n (equivalently, unit
//! variance with the n-denominator convention). Predictors are additionally
//! sign-flipped so their correlation with the response is nonnegative, which
//! lets later stages treat "small correlation" and "weak predictor" as the
//! same thing without tracking signs.

use crate::error::{Error, Result};
use crate::ingest::NumericDataset;
use crate::symmatrix::SymMat;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

pub(crate) fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Pairwise correlations against the response (`c`) and among predictors
/// (`cmat`), after sign alignment. `flips[j]` is the ±1 factor applied to
/// predictor j; `n` is the number of rows the correlations were computed from.
#[derive(Debug, Clone)]
pub struct CorrelationSummary {
    pub c: Vec<f64>,
    pub cmat: SymMat,
    pub flips: Vec<f64>,
    pub n: usize,
}

/// A dataset in standardized coordinates together with the parameters that
/// produced it, so the same affine map can be replayed on held-out rows.
#[derive(Debug, Clone)]
pub struct StandardizedDataset {
    /// Response name followed by the retained predictor names.
    pub names: Vec<String>,
    pub y: Vec<f64>,
    /// Retained predictor columns, centered, scaled to length √n, sign-flipped.
    pub x: Vec<Vec<f64>>,
    pub y_loc: f64,
    pub y_scale: f64,
    pub locs: Vec<f64>,
    pub scales: Vec<f64>,
    pub flips: Vec<f64>,
    /// For each retained column, its index in the source dataset's predictors.
    pub src_idx: Vec<usize>,
    /// Predictors that were constant in the fitted rows: (source index, name).
    pub dropped: Vec<(usize, String)>,
    pub n: usize,
}

fn center_scale(v: &[f64]) -> (Vec<f64>, f64, f64) {
    let loc = mean(v);
    let centered: Vec<f64> = v.iter().map(|&x| x - loc).collect();
    let scale = norm(&centered) / (v.len() as f64).sqrt();
    (centered, loc, scale)
}

impl StandardizedDataset {
    /// Standardize all columns; any constant column is an error.
    pub fn fit(data: &NumericDataset) -> Result<Self> {
        let out = Self::fit_lenient(data)?;
        if let Some((_, name)) = out.dropped.first() {
            return Err(Error::ConstantColumn(name.clone()));
        }
        Ok(out)
    }

    /// Standardize, quietly setting aside predictors that are constant in
    /// these rows (they carry no direction). A constant response is still an
    /// error: nothing can be learned from it.
    pub fn fit_lenient(data: &NumericDataset) -> Result<Self> {
        let n = data.n();
        if n < 2 {
            return Err(Error::TooFewRows { min: 2, found: n });
        }
        let (y_centered, y_loc, y_scale) = center_scale(&data.y);
        if y_scale == 0.0 {
            return Err(Error::ConstantColumn(data.names[0].clone()));
        }
        let y: Vec<f64> = y_centered.iter().map(|&v| v / y_scale).collect();

        let mut names = vec![data.names[0].clone()];
        let mut x = Vec::new();
        let mut locs = Vec::new();
        let mut scales = Vec::new();
        let mut flips = Vec::new();
        let mut src_idx = Vec::new();
        let mut dropped = Vec::new();

        for (j, col) in data.x_cols.iter().enumerate() {
            let name = data.names[j + 1].clone();
            let (centered, loc, scale) = center_scale(col);
            if scale == 0.0 {
                dropped.push((j, name));
                continue;
            }
            let corr = dot(&y, &centered) / (norm(&y) * norm(&centered));
            let flip = if corr < 0.0 { -1.0 } else { 1.0 };
            x.push(centered.iter().map(|&v| flip * v / scale).collect());
            names.push(name);
            locs.push(loc);
            scales.push(scale);
            flips.push(flip);
            src_idx.push(j);
        }

        Ok(StandardizedDataset {
            names,
            y,
            x,
            y_loc,
            y_scale,
            locs,
            scales,
            flips,
            src_idx,
            dropped,
            n,
        })
    }

    pub fn r(&self) -> usize {
        self.x.len()
    }

    /// Apply the stored standardization to new rows. Columns that were set
    /// aside during fitting are skipped, so the output aligns with `self.x`.
    pub fn transform(&self, data: &NumericDataset) -> (Vec<f64>, Vec<Vec<f64>>) {
        let y = data
            .y
            .iter()
            .map(|&v| (v - self.y_loc) / self.y_scale)
            .collect();
        let x = self
            .src_idx
            .iter()
            .enumerate()
            .map(|(k, &j)| {
                data.x_cols[j]
                    .iter()
                    .map(|&v| self.flips[k] * (v - self.locs[k]) / self.scales[k])
                    .collect()
            })
            .collect();
        (y, x)
    }

    /// Correlations of the standardized columns (sign flips already applied,
    /// so every entry of `c` is nonnegative).
    pub fn correlations(&self) -> CorrelationSummary {
        let r = self.r();
        let norms: Vec<f64> = self.x.iter().map(|col| norm(col)).collect();
        let y_norm = norm(&self.y);
        let c: Vec<f64> = self
            .x
            .iter()
            .zip(&norms)
            .map(|(col, &nx)| dot(&self.y, col) / (y_norm * nx))
            .collect();
        let mut cmat = SymMat::identity(r);
        for i in 0..r {
            for j in (i + 1)..r {
                let v = dot(&self.x[i], &self.x[j]) / (norms[i] * norms[j]);
                cmat.set_sym(i, j, v);
            }
        }
        CorrelationSummary {
            c,
            cmat,
            flips: self.flips.clone(),
            n: self.n,
        }
    }
}

/// Correlations of columns taken as directions in Rⁿ, with no centering or
/// rescaling — each correlation is the cosine ⟨u,v⟩/(‖u‖‖v‖). This is the
/// right notion for arrays whose columns are already constructed as unit
/// vectors; regular tables should go through [`StandardizedDataset`] instead.
pub fn correlations_uncentered(y: &[f64], x_cols: &[Vec<f64>]) -> Result<CorrelationSummary> {
    let y_norm = norm(y);
    if y_norm == 0.0 {
        return Err(Error::ConstantColumn("response".into()));
    }
    let norms: Vec<f64> = x_cols.iter().map(|col| norm(col)).collect();
    for (j, &nx) in norms.iter().enumerate() {
        if nx == 0.0 {
            return Err(Error::ConstantColumn(format!("column {}", j + 1)));
        }
    }
    let r = x_cols.len();
    let mut flips = vec![1.0; r];
    let mut c = Vec::with_capacity(r);
    for (j, col) in x_cols.iter().enumerate() {
        let corr = dot(y, col) / (y_norm * norms[j]);
        if corr < 0.0 {
            flips[j] = -1.0;
        }
        c.push(flips[j] * corr);
    }
    let mut cmat = SymMat::identity(r);
    for i in 0..r {
        for j in (i + 1)..r {
            let v = flips[i] * flips[j] * dot(&x_cols[i], &x_cols[j]) / (norms[i] * norms[j]);
            cmat.set_sym(i, j, v);
        }
    }
    Ok(CorrelationSummary {
        c,
        cmat,
        flips,
        n: y.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn dataset(y: Vec<f64>, x_cols: Vec<Vec<f64>>) -> NumericDataset {
        let mut names = vec!["y".to_string()];
        for j in 0..x_cols.len() {
            names.push(format!("x{}", j + 1));
        }
        NumericDataset {
            y,
            x_cols,
            names,
            provenance: BTreeMap::new(),
        }
    }

    #[test]
    fn columns_become_mean_zero_length_sqrt_n() {
        let data = dataset(
            vec![1.0, 4.0, 2.0, 7.0],
            vec![vec![2.0, 4.0, 5.0, 9.0], vec![1.0, -1.0, 3.0, 0.5]],
        );
        let std = StandardizedDataset::fit(&data).unwrap();
        let sqrt_n = (4.0f64).sqrt();
        assert!(mean(&std.y).abs() < 1e-12);
        assert!((norm(&std.y) - sqrt_n).abs() < 1e-12);
        for col in &std.x {
            assert!(mean(col).abs() < 1e-12, "column not centered");
            assert!((norm(col) - sqrt_n).abs() < 1e-12, "column not length √n");
        }
    }

    #[test]
    fn anticorrelated_predictor_is_flipped() {
        let data = dataset(
            vec![1.0, 2.0, 3.0, 4.0],
            vec![vec![4.0, 3.0, 2.0, 1.0], vec![1.0, 2.0, 2.5, 4.0]],
        );
        let std = StandardizedDataset::fit(&data).unwrap();
        assert_eq!(std.flips, vec![-1.0, 1.0]);
        let summary = std.correlations();
        // after the flip the first predictor is perfectly aligned with y
        assert!((summary.c[0] - 1.0).abs() < 1e-12, "c0 = {}", summary.c[0]);
        assert!(summary.c[1] > 0.0);
    }

    #[test]
    fn zero_correlation_keeps_positive_sign() {
        // second predictor is orthogonal to the centered response
        let data = dataset(
            vec![1.0, 0.0, -1.0, 0.0],
            vec![vec![1.0, 0.5, -1.0, -0.5], vec![0.0, 1.0, 0.0, -1.0]],
        );
        let std = StandardizedDataset::fit(&data).unwrap();
        assert_eq!(std.flips[1], 1.0, "tie must resolve to +1");
        assert!(std.correlations().c[1].abs() < 1e-12);
    }

    #[test]
    fn correlations_match_hand_computation() {
        let data = dataset(
            vec![1.0, 2.0, 3.0],
            vec![vec![1.0, 2.0, 3.0], vec![2.0, 1.0, 3.0]],
        );
        let std = StandardizedDataset::fit(&data).unwrap();
        let s = std.correlations();
        assert!((s.c[0] - 1.0).abs() < 1e-12);
        // corr((1,2,3),(2,1,3)) = cov/sds = (1/3·(−1·0 + 0·(−1) + 1·1))/(σ·σ)
        // with σ² = 2/3 for both → 1/2
        assert!((s.c[1] - 0.5).abs() < 1e-12, "c1 = {}", s.c[1]);
        assert!((s.cmat.get(0, 1) - 0.5).abs() < 1e-12);
        assert!((s.cmat.get(0, 0) - 1.0).abs() == 0.0, "exact unit diagonal");
    }

    #[test]
    fn transform_replays_training_parameters() {
        let train = dataset(
            vec![1.0, 2.0, 3.0, 4.0],
            vec![vec![4.0, 3.0, 2.0, 1.0]],
        );
        let std = StandardizedDataset::fit(&train).unwrap();
        let test = dataset(vec![10.0], vec![vec![7.0]]);
        let (ty, tx) = std.transform(&test);
        assert!((ty[0] - (10.0 - std.y_loc) / std.y_scale).abs() < 1e-12);
        let expected = std.flips[0] * (7.0 - std.locs[0]) / std.scales[0];
        assert!((tx[0][0] - expected).abs() < 1e-12);
        // the flip matters: this column was anti-correlated in training, so a
        // value above the training mean lands below zero after flipping
        assert!(std.flips[0] < 0.0 && tx[0][0] < 0.0);
    }

    #[test]
    fn constant_predictor_strict_vs_lenient() {
        let data = dataset(
            vec![1.0, 2.0, 3.0],
            vec![vec![5.0, 5.0, 5.0], vec![1.0, 3.0, 2.0]],
        );
        assert!(matches!(
            StandardizedDataset::fit(&data),
            Err(Error::ConstantColumn(_))
        ));
        let std = StandardizedDataset::fit_lenient(&data).unwrap();
        assert_eq!(std.r(), 1);
        assert_eq!(std.dropped, vec![(0, "x1".to_string())]);
        assert_eq!(std.src_idx, vec![1]);
        assert_eq!(std.names, vec!["y", "x2"]);
    }

    #[test]
    fn constant_response_is_always_fatal() {
        let data = dataset(vec![2.0, 2.0, 2.0], vec![vec![1.0, 2.0, 3.0]]);
        assert!(matches!(
            StandardizedDataset::fit_lenient(&data),
            Err(Error::ConstantColumn(_))
        ));
    }

    #[test]
    fn uncentered_cosines_on_unit_vector_array() {
        let y = vec![1.0, 0.0, 0.0];
        let x = vec![
            vec![0.9, 0.435890, 0.0],
            vec![0.6, 0.4, 0.692820],
        ];
        let s = correlations_uncentered(&y, &x).unwrap();
        assert!((s.c[0] - 0.9).abs() < 1e-6, "c1 = {}", s.c[0]);
        assert!((s.c[1] - 0.6).abs() < 1e-6, "c2 = {}", s.c[1]);
        assert!(
            (s.cmat.get(0, 1) - 0.714356).abs() < 1e-6,
            "C12 = {}",
            s.cmat.get(0, 1)
        );
        assert_eq!(s.flips, vec![1.0, 1.0]);
    }

    #[test]
    fn uncentered_rejects_zero_column() {
        let err = correlations_uncentered(&[1.0, 0.0], &[vec![0.0, 0.0]]).unwrap_err();
        assert!(matches!(err, Error::ConstantColumn(_)));
    }
}
