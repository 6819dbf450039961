//! Text and JSON rendering of computed results.
//!
//! Both formats are produced from the same in-memory structures in a fixed
//! order, so repeated runs over the same input are byte-identical. Predictor
//! indices are 1-based everywhere a human will read them, including JSON.

use serde_json::{json, Value};

use crate::crossval::CvReport;
use crate::lasso::LassoFit;
use crate::select::SelectionPath;
use crate::standardize::CorrelationSummary;
use crate::ycontent::LsFit;

/// 1-based subset rendering: `{1,3,4}`.
pub fn fmt_subset(subset: &[usize]) -> String {
    let inner: Vec<String> = subset.iter().map(|&i| (i + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn subset_1based(subset: &[usize]) -> Vec<usize> {
    subset.iter().map(|&i| i + 1).collect()
}

fn subset_names(names: &[String], subset: &[usize]) -> Vec<String> {
    subset.iter().map(|&i| names[i + 1].clone()).collect()
}

fn flip_char(f: f64) -> &'static str {
    if f < 0.0 {
        "-"
    } else {
        "+"
    }
}

fn name_width(names: &[String]) -> usize {
    names.iter().skip(1).map(|n| n.len()).max().unwrap_or(4).max(4)
}

// ---------- correlations ----------

pub fn correlate_text(names: &[String], s: &CorrelationSummary) -> String {
    let w = name_width(names);
    let mut out = format!(
        "correlations with '{}' (n = {}, {} predictors)\n",
        names[0],
        s.n,
        s.c.len()
    );
    out.push_str(&format!("  # {: <w$}  flip       c\n", "name", w = w));
    for (j, &cj) in s.c.iter().enumerate() {
        out.push_str(&format!(
            "  {} {: <w$}   {}    {: >7.4}\n",
            j + 1,
            names[j + 1],
            flip_char(s.flips[j]),
            cj,
            w = w
        ));
    }
    out.push_str("\npredictor correlation matrix (after sign alignment):\n");
    out.push_str("     ");
    for j in 0..s.c.len() {
        out.push_str(&format!("{: >8}", j + 1));
    }
    out.push('\n');
    for i in 0..s.c.len() {
        out.push_str(&format!("  {: >2} ", i + 1));
        for j in 0..s.c.len() {
            out.push_str(&format!("{: >8.4}", s.cmat.get(i, j)));
        }
        out.push('\n');
    }
    out
}

pub fn correlate_json(names: &[String], s: &CorrelationSummary) -> Value {
    let predictors: Vec<Value> = s
        .c
        .iter()
        .enumerate()
        .map(|(j, &cj)| {
            json!({
                "index": j + 1,
                "name": names[j + 1],
                "flip": if s.flips[j] < 0.0 { -1 } else { 1 },
                "c": cj,
            })
        })
        .collect();
    json!({
        "response": names[0],
        "n": s.n,
        "predictors": predictors,
        "correlation_matrix": s.cmat.rows(),
    })
}

// ---------- elimination path ----------

pub fn path_text(
    names: &[String],
    path: &SelectionPath,
    fits: &[LsFit],
    stage_label: &str,
) -> String {
    let mut out = format!("elimination path ({stage_label})\n");
    for (k, step) in path.steps.iter().enumerate() {
        let stage = if step.batch { "threshold" } else { "greedy" };
        out.push_str(&format!(
            "step {}: removed #{} '{}' ({stage}), sigma_sq {:.4} -> {:.4}\n",
            k + 1,
            step.removed + 1,
            names[step.removed + 1],
            step.sigma_sq_before,
            step.sigma_sq_after,
        ));
    }
    out.push_str("\n  s  subset           sigma   %content  coefficients\n");
    for (rec, fit) in path.records.iter().zip(fits) {
        let beta_str: Vec<String> = fit.beta.iter().map(|b| format!("{b:.4}")).collect();
        out.push_str(&format!(
            "  {}  {: <15}  {:.4}  {: >7.3}  [{}]\n",
            rec.s,
            fmt_subset(&rec.subset),
            rec.sigma,
            100.0 * rec.sigma,
            beta_str.join(", "),
        ));
    }
    out
}

pub fn path_json(
    names: &[String],
    path: &SelectionPath,
    fits: &[LsFit],
    stage: Value,
) -> Value {
    let steps: Vec<Value> = path
        .steps
        .iter()
        .map(|st| {
            json!({
                "removed": st.removed + 1,
                "name": names[st.removed + 1],
                "stage": if st.batch { "threshold" } else { "greedy" },
                "sigma_sq_before": st.sigma_sq_before,
                "sigma_sq_after": st.sigma_sq_after,
            })
        })
        .collect();
    let models: Vec<Value> = path
        .records
        .iter()
        .zip(fits)
        .map(|(rec, fit)| {
            json!({
                "s": rec.s,
                "subset": subset_1based(&rec.subset),
                "names": subset_names(names, &rec.subset),
                "sigma": rec.sigma,
                "sigma_sq": rec.sigma_sq,
                "pct_y_content": 100.0 * rec.sigma,
                "beta": fit.beta,
                "se": fit.se,
            })
        })
        .collect();
    json!({
        "response": names[0],
        "reduction": stage,
        "batch_removed": subset_1based(&path.batch_removed),
        "steps": steps,
        "models": models,
    })
}

// ---------- least-squares fit ----------

pub fn fit_text(names: &[String], fit: &LsFit, n: usize) -> String {
    let w = name_width(names);
    let mut out = format!(
        "least-squares fit on subset {} (n = {})\n",
        fmt_subset(&fit.subset),
        n
    );
    out.push_str(&format!("  # {: <w$}     beta       se\n", "name", w = w));
    for (k, &j) in fit.subset.iter().enumerate() {
        let se = match &fit.se {
            Some(se) => format!("{: >7.4}", se[k]),
            None => "     --".to_string(),
        };
        out.push_str(&format!(
            "  {} {: <w$}  {: >7.4}  {}\n",
            j + 1,
            names[j + 1],
            fit.beta[k],
            se,
            w = w
        ));
    }
    if fit.se.is_none() {
        out.push_str("(collinear subset: coefficients are the minimum-norm choice, no standard errors)\n");
    }
    out.push_str(&format!(
        "\nsigma {:.4}  sigma_sq {:.4}  %content {:.3}\n",
        fit.sigma_sq.sqrt(),
        fit.sigma_sq,
        100.0 * fit.sigma_sq.sqrt()
    ));
    out.push_str(&format!(
        "residual variance share {:.4} (rss {:.4}, residual variance estimate {:.4})\n",
        fit.resid_var_prop, fit.rss, fit.sigma2_resid
    ));
    out
}

pub fn fit_json(names: &[String], fit: &LsFit, n: usize) -> Value {
    json!({
        "response": names[0],
        "n": n,
        "subset": subset_1based(&fit.subset),
        "names": subset_names(names, &fit.subset),
        "beta": fit.beta,
        "se": fit.se,
        "sigma": fit.sigma_sq.sqrt(),
        "sigma_sq": fit.sigma_sq,
        "pct_y_content": 100.0 * fit.sigma_sq.sqrt(),
        "rss": fit.rss,
        "sigma2_resid": fit.sigma2_resid,
        "resid_var_prop": fit.resid_var_prop,
    })
}

// ---------- cross-validation ----------

pub fn cv_text(report: &CvReport) -> String {
    let mut out = format!(
        "repeated cross-validation: {} folds x {} repeats, seed {}, n = {}, drop m = {}\n",
        report.folds, report.repeats, report.seed, report.n, report.m
    );
    out.push_str("  s   mean MSE        sd\n");
    for m in &report.by_size {
        out.push_str(&format!("  {}   {: >8.4}  {: >8.4}\n", m.s, m.mean, m.sd));
    }
    if let Some(l) = &report.lasso {
        out.push_str(&format!(
            "\nl1 baseline at gamma = {}: mean MSE {:.4}, sd {:.4}\n",
            l.gamma, l.mean, l.sd
        ));
    }
    if !report.warnings.is_empty() {
        out.push_str("\nwarnings:\n");
        for w in &report.warnings {
            out.push_str(&format!("  {w}\n"));
        }
    }
    out
}

pub fn cv_json(report: &CvReport) -> Value {
    let models: Vec<Value> = report
        .by_size
        .iter()
        .map(|m| {
            json!({
                "s": m.s,
                "mean_mse": m.mean,
                "sd_mse": m.sd,
                "repeat_means": m.repeat_means,
            })
        })
        .collect();
    let lasso = report.lasso.as_ref().map(|l| {
        json!({
            "gamma": l.gamma,
            "mean_mse": l.mean,
            "sd_mse": l.sd,
            "repeat_means": l.repeat_means,
        })
    });
    json!({
        "n": report.n,
        "folds": report.folds,
        "repeats": report.repeats,
        "seed": report.seed,
        "m": report.m,
        "models": models,
        "lasso": lasso,
        "warnings": report.warnings,
    })
}

// ---------- l1 baseline ----------

pub fn lasso_text(
    names: &[String],
    fits: &[(LassoFit, f64)],
    support_threshold: f64,
) -> String {
    let w = name_width(names);
    let mut out = String::new();
    for (fit, kkt) in fits {
        let status = if fit.converged {
            "converged"
        } else {
            "DID NOT CONVERGE"
        };
        out.push_str(&format!(
            "l1 fit at gamma = {}: {} cycles, {status}, max stationarity violation {:.2e}\n",
            fit.gamma, fit.iterations, kkt
        ));
        let support = fit.support(support_threshold);
        out.push_str(&format!(
            "  support (|beta| > {}): {}\n",
            support_threshold,
            fmt_subset(&support)
        ));
        out.push_str(&format!("  # {: <w$}     beta\n", "name", w = w));
        for (j, &b) in fit.beta.iter().enumerate() {
            out.push_str(&format!(
                "  {} {: <w$}  {: >7.4}\n",
                j + 1,
                names[j + 1],
                b,
                w = w
            ));
        }
        out.push('\n');
    }
    out
}

pub fn lasso_json(
    names: &[String],
    fits: &[(LassoFit, f64)],
    support_threshold: f64,
) -> Value {
    let entries: Vec<Value> = fits
        .iter()
        .map(|(fit, kkt)| {
            let support = fit.support(support_threshold);
            json!({
                "gamma": fit.gamma,
                "beta": fit.beta,
                "names": names[1..].to_vec(),
                "support": subset_1based(&support),
                "support_names": support.iter().map(|&j| names[j + 1].clone()).collect::<Vec<_>>(),
                "iterations": fit.iterations,
                "converged": fit.converged,
                "kkt_violation": kkt,
            })
        })
        .collect();
    json!({
        "response": names[0],
        "support_threshold": support_threshold,
        "fits": entries,
    })
}
