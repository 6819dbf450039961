//! Backward elimination of weak predictors.
//!
//! Reduction happens in two stages. First, predictors whose response
//! correlation is small are dropped outright — either the `m` smallest, or
//! everything at or below a cutoff γ. The justification for treating such
//! predictors as ignorable is the tilt/shift identity checked by
//! [`tilt_shift_discrepancy`]: reweighting a standard normal density by
//! exp(γz) only shifts it, so a predictor whose correlation is small moves
//! the response distribution by (at most) a small shift rather than changing
//! its shape. Second, the remaining set is pruned one predictor at a time,
//! each step removing the one whose loss costs the least squared content
//! σ²(δ). Every intermediate subset size gets a record, so the result is a
//! full path from all predictors down to one.

use crate::error::{Error, Result};
use crate::standardize::CorrelationSummary;
use crate::ycontent::sigma_squared;

/// One recorded subset along the elimination path.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetRecord {
    pub s: usize,
    /// Sorted predictor indices (0-based).
    pub subset: Vec<usize>,
    pub sigma_sq: f64,
    pub sigma: f64,
}

/// One elimination step: which predictor left and what it cost.
#[derive(Debug, Clone, PartialEq)]
pub struct PathStep {
    pub removed: usize,
    pub sigma_sq_before: f64,
    pub sigma_sq_after: f64,
    /// True when the removal came from the correlation-threshold stage
    /// rather than the greedy stage.
    pub batch: bool,
}

/// A full downward path: subsets of every size from r down to 1.
#[derive(Debug, Clone)]
pub struct SelectionPath {
    pub records: Vec<SubsetRecord>,
    pub steps: Vec<PathStep>,
    /// Predictors dropped by the threshold stage, in drop order.
    pub batch_removed: Vec<usize>,
}

impl SelectionPath {
    /// The record for subset size `s`, if the path reaches it.
    pub fn record_for(&self, s: usize) -> Option<&SubsetRecord> {
        self.records.iter().find(|r| r.s == s)
    }
}

/// Indices of the `m` weakest predictors by response correlation, weakest
/// first. Ties are broken toward the larger index, so on equal correlations
/// the later column leaves first.
pub fn weakest_by_count(summary: &CorrelationSummary, m: usize) -> Result<Vec<usize>> {
    let r = summary.c.len();
    if r == 0 {
        return Err(Error::NoPredictors);
    }
    if m >= r {
        return Err(Error::InvalidArgument(format!(
            "removing {m} of {r} predictors would leave nothing to model; keep at least one"
        )));
    }
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&a, &b| {
        summary.c[a]
            .partial_cmp(&summary.c[b])
            .expect("correlations are finite")
            .then(b.cmp(&a))
    });
    Ok(order.into_iter().take(m).collect())
}

/// Indices of all predictors with response correlation ≤ `gamma`, weakest
/// first (same tie rule as [`weakest_by_count`]).
pub fn weakest_by_cutoff(summary: &CorrelationSummary, gamma: f64) -> Result<Vec<usize>> {
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "correlation cutoff must be a nonnegative number, got {gamma}"
        )));
    }
    let m = summary.c.iter().filter(|&&ci| ci <= gamma).count();
    if m == summary.c.len() {
        return Err(Error::InvalidArgument(format!(
            "cutoff {gamma} would remove every predictor; keep at least one"
        )));
    }
    let weak = weakest_by_count(summary, m)?;
    debug_assert!(weak.iter().all(|&i| summary.c[i] <= gamma));
    Ok(weak)
}

/// Among the members of `current`, find the one whose removal keeps the most
/// squared content. Ties go to the smallest index. Returns the removed index
/// and σ² of the remaining set.
pub fn eliminate_one(summary: &CorrelationSummary, current: &[usize]) -> Result<(usize, f64)> {
    if current.len() < 2 {
        return Err(Error::InvalidArgument(
            "nothing to eliminate from a subset of fewer than two predictors".into(),
        ));
    }
    let mut best: Option<(usize, f64)> = None;
    for &cand in current {
        let rest: Vec<usize> = current.iter().copied().filter(|&i| i != cand).collect();
        let s2 = sigma_squared(summary, &rest)?;
        // strict comparison: on exact ties the first (smallest) index wins
        if best.is_none_or(|(_, b)| s2 > b) {
            best = Some((cand, s2));
        }
    }
    Ok(best.expect("at least two candidates"))
}

fn path_from_forced(
    summary: &CorrelationSummary,
    forced: &[usize],
) -> Result<SelectionPath> {
    let r = summary.c.len();
    if r == 0 {
        return Err(Error::NoPredictors);
    }
    let mut current: Vec<usize> = (0..r).collect();
    let mut sigma_sq_cur = sigma_squared(summary, &current)?;
    let mut records = vec![SubsetRecord {
        s: r,
        subset: current.clone(),
        sigma_sq: sigma_sq_cur,
        sigma: sigma_sq_cur.sqrt(),
    }];
    let mut steps = Vec::new();

    let mut remove = |current: &mut Vec<usize>, idx: usize, batch: bool, before: f64| -> Result<f64> {
        current.retain(|&i| i != idx);
        let after = sigma_squared(summary, current)?;
        steps.push(PathStep {
            removed: idx,
            sigma_sq_before: before,
            sigma_sq_after: after,
            batch,
        });
        records.push(SubsetRecord {
            s: current.len(),
            subset: current.clone(),
            sigma_sq: after,
            sigma: after.sqrt(),
        });
        Ok(after)
    };

    for &idx in forced {
        if !current.contains(&idx) {
            return Err(Error::IndexOutOfRange { index: idx, r });
        }
        sigma_sq_cur = remove(&mut current, idx, true, sigma_sq_cur)?;
    }
    while current.len() > 1 {
        let (idx, _) = eliminate_one(summary, &current)?;
        sigma_sq_cur = remove(&mut current, idx, false, sigma_sq_cur)?;
    }

    Ok(SelectionPath {
        records,
        steps,
        batch_removed: forced.to_vec(),
    })
}

/// Downward path after first dropping the `m` weakest predictors.
pub fn path_with_count(summary: &CorrelationSummary, m: usize) -> Result<SelectionPath> {
    let forced = weakest_by_count(summary, m)?;
    path_from_forced(summary, &forced)
}

/// Downward path after first dropping all predictors with correlation ≤ γ.
pub fn path_with_cutoff(summary: &CorrelationSummary, gamma: f64) -> Result<SelectionPath> {
    let forced = weakest_by_cutoff(summary, gamma)?;
    path_from_forced(summary, &forced)
}

/// Pure greedy path with no threshold stage.
pub fn greedy_path(summary: &CorrelationSummary) -> Result<SelectionPath> {
    path_from_forced(summary, &[])
}

/// Exhaustive best subset of size `s` by squared content. Exponential in r,
/// so refuse anything past r = 20; meant for cross-checking the greedy path
/// on small problems, not for production selection.
pub fn best_subset_exhaustive(
    summary: &CorrelationSummary,
    s: usize,
) -> Result<(Vec<usize>, f64)> {
    let r = summary.c.len();
    if r > 20 {
        return Err(Error::InvalidArgument(format!(
            "exhaustive search over {r} predictors is not tractable (limit 20)"
        )));
    }
    if s == 0 || s > r {
        return Err(Error::InvalidArgument(format!(
            "subset size {s} is outside 1..={r}"
        )));
    }
    let mut best: Option<(Vec<usize>, f64)> = None;
    let mut comb: Vec<usize> = (0..s).collect();
    loop {
        let s2 = sigma_squared(summary, &comb)?;
        if best.as_ref().is_none_or(|(_, b)| s2 > *b) {
            best = Some((comb.clone(), s2));
        }
        // next lexicographic combination of {0..r} choose s
        let mut i = s;
        loop {
            if i == 0 {
                return Ok(best.expect("at least one combination"));
            }
            i -= 1;
            if comb[i] != i + r - s {
                break;
            }
        }
        comb[i] += 1;
        for j in i + 1..s {
            comb[j] = comb[j - 1] + 1;
        }
    }
}

/// Largest pointwise discrepancy, over a grid of z, between a standard normal
/// density reweighted by exp(γz) (and renormalized by exp(γ²/2)) and the same
/// density shifted by γ. These are identical functions — exp(−z²/2)·exp(γz)
/// = exp(−(z−γ)²/2)·exp(γ²/2) — so the returned value is pure floating-point
/// noise. This identity is what licenses the threshold stage: a predictor
/// with small correlation γ tilts the response distribution by a factor that
/// amounts to a shift of size γ, not a change of shape.
pub fn tilt_shift_discrepancy(gamma: f64) -> f64 {
    let phi = |z: f64| (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut max_diff = 0.0_f64;
    let mut z = -8.0;
    while z <= 8.0 {
        let tilted = phi(z) * (gamma * z).exp() / (0.5 * gamma * gamma).exp();
        let shifted = phi(z - gamma);
        max_diff = max_diff.max((tilted - shifted).abs());
        z += 0.01;
    }
    max_diff
}
