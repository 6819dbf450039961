//! Repeated k-fold cross-validation of the elimination path, with an
//! ℓ₁-penalized baseline fit on the same splits.
//!
//! Each repeat draws a fresh random partition into k folds. Within a fold,
//! standardization (locations, scales, sign flips) is learned from the
//! training rows only and replayed on the held-out rows, so no information
//! leaks from test to train; errors are therefore measured in the training
//! run's standardized units. Subsets are re-selected per fold, which means
//! "model of size s" is judged as a procedure, not as one fixed subset.
//!
//! Determinism: repeat t draws from a counter-based generator seeded with
//! the master seed on stream t, so results are independent of thread
//! scheduling and identical across runs with the same seed.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ingest::NumericDataset;
use crate::lasso;
use crate::select::path_with_count;
use crate::standardize::StandardizedDataset;
use crate::ycontent::{coefficients, predict_subset};

#[derive(Debug, Clone)]
pub struct CvConfig {
    pub folds: usize,
    pub repeats: usize,
    pub seed: u64,
    /// Number of weakest predictors dropped outright before the greedy stage.
    pub m: usize,
    /// When set, also fit the ℓ₁ baseline at this penalty on every fold.
    pub lasso_gamma: Option<f64>,
}

impl Default for CvConfig {
    fn default() -> Self {
        CvConfig {
            folds: 10,
            repeats: 50,
            seed: 42,
            m: 0,
            lasso_gamma: None,
        }
    }
}

/// Cross-validation summary for the subset models of one size.
#[derive(Debug, Clone, PartialEq)]
pub struct CvModelSummary {
    pub s: usize,
    pub mean: f64,
    pub sd: f64,
    /// One value per repeat: that repeat's mean MSE over its folds.
    pub repeat_means: Vec<f64>,
}

/// Cross-validation summary for the ℓ₁ baseline.
#[derive(Debug, Clone, PartialEq)]
pub struct CvLassoSummary {
    pub gamma: f64,
    pub mean: f64,
    pub sd: f64,
    pub repeat_means: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct CvReport {
    pub n: usize,
    pub folds: usize,
    pub repeats: usize,
    pub seed: u64,
    pub m: usize,
    pub by_size: Vec<CvModelSummary>,
    pub lasso: Option<CvLassoSummary>,
    pub warnings: Vec<String>,
}

/// Shuffle 0..n and cut into k folds; the first n mod k folds get the extra
/// row. Every index lands in exactly one fold.
fn make_folds(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let mut idx: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        idx.swap(i, j);
    }
    let base = n / k;
    let extra = n % k;
    let mut folds = Vec::with_capacity(k);
    let mut pos = 0;
    for f in 0..k {
        let size = base + usize::from(f < extra);
        folds.push(idx[pos..pos + size].to_vec());
        pos += size;
    }
    folds
}

struct RepeatOutcome {
    /// Mean MSE over this repeat's folds, per subset size present.
    by_s: BTreeMap<usize, f64>,
    lasso: Option<f64>,
    warnings: Vec<String>,
}

struct FoldOutcome {
    /// Held-out MSE per subset size on this fold's path.
    by_s: BTreeMap<usize, f64>,
    lasso: Option<f64>,
    warnings: Vec<String>,
}

fn run_fold(
    data: &NumericDataset,
    train: &[usize],
    test: &[usize],
    config: &CvConfig,
    label: &str,
) -> Result<FoldOutcome> {
    let mut warnings = Vec::new();
    let train_data = data.subset_rows(train);
    let test_data = data.subset_rows(test);
    let std = StandardizedDataset::fit_lenient(&train_data)?;
    for (_, name) in &std.dropped {
        warnings.push(format!(
            "{label}: predictor '{name}' is constant in the training rows; excluded for this fold"
        ));
    }
    let r = std.r();
    if r == 0 {
        warnings.push(format!("{label}: no usable predictors; fold skipped"));
        return Ok(FoldOutcome {
            by_s: BTreeMap::new(),
            lasso: None,
            warnings,
        });
    }
    let m_eff = config.m.min(r - 1);
    if m_eff < config.m {
        warnings.push(format!(
            "{label}: only {r} usable predictors; dropping {m_eff} instead of {}",
            config.m
        ));
    }

    let summary = std.correlations();
    let path = path_with_count(&summary, m_eff)?;
    let (ty, tx) = std.transform(&test_data);
    let n_test = ty.len() as f64;

    let mut by_s = BTreeMap::new();
    for rec in &path.records {
        let beta = coefficients(&summary, &rec.subset)?;
        let pred = predict_subset(&tx, &rec.subset, &beta);
        let mse = ty
            .iter()
            .zip(&pred)
            .map(|(&a, &b)| (a - b) * (a - b))
            .sum::<f64>()
            / n_test;
        by_s.insert(rec.s, mse);
    }

    let lasso_mse = match config.lasso_gamma {
        Some(gamma) => {
            let fit = lasso::lasso_cd(
                &std.y,
                &std.x,
                gamma,
                None,
                lasso::DEFAULT_MAX_ITER,
                lasso::DEFAULT_TOL,
            )?;
            let all: Vec<usize> = (0..r).collect();
            let pred = predict_subset(&tx, &all, &fit.beta);
            Some(
                ty.iter()
                    .zip(&pred)
                    .map(|(&a, &b)| (a - b) * (a - b))
                    .sum::<f64>()
                    / n_test,
            )
        }
        None => None,
    };

    Ok(FoldOutcome {
        by_s,
        lasso: lasso_mse,
        warnings,
    })
}

fn run_repeat(data: &NumericDataset, config: &CvConfig, t: usize) -> Result<RepeatOutcome> {
    let n = data.n();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(t as u64);
    let folds = make_folds(n, config.folds, &mut rng);

    let mut acc_by_s: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    let mut acc_lasso = Vec::new();
    let mut warnings = Vec::new();
    for (f, fold) in folds.iter().enumerate() {
        let in_test = {
            let mut mask = vec![false; n];
            for &i in fold {
                mask[i] = true;
            }
            mask
        };
        let train: Vec<usize> = (0..n).filter(|&i| !in_test[i]).collect();
        let mut test = fold.clone();
        test.sort_unstable();
        let label = format!("repeat {} fold {}", t + 1, f + 1);
        let fold_out = run_fold(data, &train, &test, config, &label)?;
        warnings.extend(fold_out.warnings);
        for (s, mse) in fold_out.by_s {
            acc_by_s.entry(s).or_default().push(mse);
        }
        if let Some(m) = fold_out.lasso {
            acc_lasso.push(m);
        }
    }

    let by_s = acc_by_s
        .into_iter()
        .map(|(s, v)| (s, mean(&v)))
        .collect();
    let lasso = if acc_lasso.is_empty() {
        None
    } else {
        Some(mean(&acc_lasso))
    };
    Ok(RepeatOutcome {
        by_s,
        lasso,
        warnings,
    })
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Sample standard deviation (n−1 denominator); zero for fewer than two values.
fn sd(v: &[f64]) -> f64 {
    if v.len() < 2 {
        return 0.0;
    }
    let m = mean(v);
    (v.iter().map(|&x| (x - m) * (x - m)).sum::<f64>() / (v.len() - 1) as f64).sqrt()
}

/// Run the full repeated cross-validation. Repeats are evaluated in parallel
/// but each is seeded independently and collected in order, so the report is
/// identical to a sequential run.
pub fn cross_validate(data: &NumericDataset, config: &CvConfig) -> Result<CvReport> {
    let n = data.n();
    if config.folds < 2 || config.folds > n {
        return Err(Error::InvalidArgument(format!(
            "fold count must be between 2 and the number of rows ({n}), got {}",
            config.folds
        )));
    }
    if config.repeats == 0 {
        return Err(Error::InvalidArgument("need at least one repeat".into()));
    }
    if let Some(g) = config.lasso_gamma {
        if !g.is_finite() || g < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "penalty must be a nonnegative number, got {g}"
            )));
        }
    }

    let outcomes: Vec<RepeatOutcome> = (0..config.repeats)
        .into_par_iter()
        .map(|t| run_repeat(data, config, t))
        .collect::<Result<_>>()?;

    let mut warnings: Vec<String> = Vec::new();
    let mut per_s: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    let mut per_lasso: Vec<f64> = Vec::new();
    for out in &outcomes {
        warnings.extend(out.warnings.iter().cloned());
        for (&s, &v) in &out.by_s {
            per_s.entry(s).or_default().push(v);
        }
        if let Some(l) = out.lasso {
            per_lasso.push(l);
        }
    }

    let mut by_size = Vec::new();
    for (s, values) in per_s {
        if values.len() < config.repeats {
            warnings.push(format!(
                "size-{s} model was unavailable in {} of {} repeats; omitted from the summary",
                config.repeats - values.len(),
                config.repeats
            ));
            continue;
        }
        by_size.push(CvModelSummary {
            s,
            mean: mean(&values),
            sd: sd(&values),
            repeat_means: values,
        });
    }

    let lasso = config.lasso_gamma.and_then(|gamma| {
        if per_lasso.len() < config.repeats {
            warnings.push(format!(
                "the ℓ₁ baseline was unavailable in {} of {} repeats; omitted from the summary",
                config.repeats - per_lasso.len(),
                config.repeats
            ));
            return None;
        }
        Some(CvLassoSummary {
            gamma,
            mean: mean(&per_lasso),
            sd: sd(&per_lasso),
            repeat_means: per_lasso,
        })
    });

    Ok(CvReport {
        n,
        folds: config.folds,
        repeats: config.repeats,
        seed: config.seed,
        m: config.m,
        by_size,
        lasso,
        warnings,
    })
}
