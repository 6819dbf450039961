//! Command-line interface: argument parsing and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::crossval::{cross_validate, CvConfig};
use crate::error::{Error, Result};
use crate::ingest::{binarize_nominals, load_table, NumericDataset, ResponseSel};
use crate::lasso::{kkt_violation, lasso_cd, lasso_path, SUPPORT_THRESHOLD};
use crate::report;
use crate::select::{path_with_count, path_with_cutoff, SelectionPath};
use crate::standardize::StandardizedDataset;
use crate::svg;
use crate::ycontent::{ls_fit, sigma};

#[derive(Parser)]
#[command(
    name = "linlasso",
    version,
    about = "Correlation-based variable selection for linear models",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Response correlations, sign flips, and the predictor correlation matrix
    Correlate {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Backward elimination path with models of every size
    Select {
        #[command(flatten)]
        common: CommonArgs,
        /// Drop the m weakest predictors by correlation before the greedy stage
        #[arg(long, conflicts_with = "gamma")]
        m: Option<usize>,
        /// Drop every predictor with response correlation <= gamma instead
        #[arg(long)]
        gamma: Option<f64>,
    },
    /// Least-squares fit of one predictor subset
    Fit {
        #[command(flatten)]
        common: CommonArgs,
        /// 1-based predictor indices, e.g. "1,3,4" (default: all predictors)
        #[arg(long)]
        subset: Option<String>,
    },
    /// Repeated k-fold cross-validation of the path models
    Cv {
        #[command(flatten)]
        common: CommonArgs,
        /// Drop the m weakest predictors per training fold
        #[arg(long, default_value_t = 0)]
        m: usize,
        /// Also fit the l1 baseline at this penalty on every fold
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long, default_value_t = 10)]
        folds: usize,
        #[arg(long, default_value_t = 50)]
        repeats: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// l1-penalized least squares at one or more penalties
    Lasso {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, conflicts_with = "gamma_grid")]
        gamma: Option<f64>,
        /// Comma-separated penalties, fitted largest-first with warm starts
        #[arg(long, value_name = "G1,G2,...")]
        gamma_grid: Option<String>,
    },
    /// SVG bar chart of sigma and sigma_sq for chosen subsets
    Plot {
        #[command(flatten)]
        common: CommonArgs,
        /// Semicolon-separated subsets of 1-based indices, e.g. "1;1,2;1,2,3"
        #[arg(long)]
        subsets: String,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// Input CSV file with a header row
    #[arg(long)]
    input: PathBuf,
    /// Response column, by name or 1-based position (default: first column)
    #[arg(long)]
    response: Option<String>,
    /// Output format (plot always writes SVG)
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

fn parse_index_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let v: usize = tok.parse().map_err(|_| {
                Error::InvalidArgument(format!("'{tok}' is not a predictor index"))
            })?;
            if v == 0 {
                return Err(Error::InvalidArgument(
                    "predictor indices are 1-based".into(),
                ));
            }
            Ok(v - 1)
        })
        .collect()
}

fn parse_gamma_grid(text: &str) -> Result<Vec<f64>> {
    let grid: Result<Vec<f64>> = text
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("'{tok}' is not a penalty value")))
        })
        .collect();
    let grid = grid?;
    if grid.is_empty() {
        return Err(Error::InvalidArgument("empty penalty grid".into()));
    }
    Ok(grid)
}

fn load(common: &CommonArgs) -> Result<NumericDataset> {
    let response = match &common.response {
        Some(text) => text.parse::<ResponseSel>()?,
        None => ResponseSel::First,
    };
    let raw = load_table(&common.input, &response)?;
    binarize_nominals(&raw)
}

fn emit(common: &CommonArgs, content: &str) -> Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, content).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn render_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn path_fits(
    std: &StandardizedDataset,
    summary: &crate::standardize::CorrelationSummary,
    path: &SelectionPath,
) -> Result<Vec<crate::ycontent::LsFit>> {
    path.records
        .iter()
        .map(|rec| ls_fit(std, summary, &rec.subset))
        .collect()
}

fn run_command(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Correlate { common } => {
            let data = load(&common)?;
            let std = StandardizedDataset::fit(&data)?;
            let summary = std.correlations();
            let content = match common.format {
                Format::Text => report::correlate_text(&std.names, &summary),
                Format::Json => render_json(&report::correlate_json(&std.names, &summary)),
            };
            emit(&common, &content)
        }
        Command::Select { common, m, gamma } => {
            let data = load(&common)?;
            let std = StandardizedDataset::fit(&data)?;
            let summary = std.correlations();
            let (path, label, stage) = match (m, gamma) {
                (_, Some(g)) => (
                    path_with_cutoff(&summary, g)?,
                    format!("drop correlations <= {g}, then greedy"),
                    json!({"kind": "cutoff", "gamma": g}),
                ),
                (m, None) => {
                    let m = m.unwrap_or(0);
                    (
                        path_with_count(&summary, m)?,
                        format!("drop {m} weakest by correlation, then greedy"),
                        json!({"kind": "count", "m": m}),
                    )
                }
            };
            let fits = path_fits(&std, &summary, &path)?;
            let content = match common.format {
                Format::Text => report::path_text(&std.names, &path, &fits, &label),
                Format::Json => render_json(&report::path_json(&std.names, &path, &fits, stage)),
            };
            emit(&common, &content)
        }
        Command::Fit { common, subset } => {
            let data = load(&common)?;
            let std = StandardizedDataset::fit(&data)?;
            let summary = std.correlations();
            let subset = match subset {
                Some(text) => parse_index_list(&text)?,
                None => (0..std.r()).collect(),
            };
            let fit = ls_fit(&std, &summary, &subset)?;
            let content = match common.format {
                Format::Text => report::fit_text(&std.names, &fit, std.n),
                Format::Json => render_json(&report::fit_json(&std.names, &fit, std.n)),
            };
            emit(&common, &content)
        }
        Command::Cv {
            common,
            m,
            gamma,
            folds,
            repeats,
            seed,
        } => {
            let data = load(&common)?;
            let config = CvConfig {
                folds,
                repeats,
                seed,
                m,
                lasso_gamma: gamma,
            };
            let cv = cross_validate(&data, &config)?;
            let content = match common.format {
                Format::Text => report::cv_text(&cv),
                Format::Json => render_json(&report::cv_json(&cv)),
            };
            emit(&common, &content)
        }
        Command::Lasso {
            common,
            gamma,
            gamma_grid,
        } => {
            let data = load(&common)?;
            let std = StandardizedDataset::fit(&data)?;
            let fits = match (gamma, gamma_grid) {
                (Some(g), None) => vec![lasso_cd(
                    &std.y,
                    &std.x,
                    g,
                    None,
                    crate::lasso::DEFAULT_MAX_ITER,
                    crate::lasso::DEFAULT_TOL,
                )?],
                (None, Some(grid)) => lasso_path(
                    &std.y,
                    &std.x,
                    &parse_gamma_grid(&grid)?,
                    crate::lasso::DEFAULT_MAX_ITER,
                    crate::lasso::DEFAULT_TOL,
                )?,
                (None, None) => {
                    return Err(Error::InvalidArgument(
                        "provide --gamma or --gamma-grid".into(),
                    ))
                }
                (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
            };
            let with_kkt: Vec<_> = fits
                .into_iter()
                .map(|f| {
                    let v = kkt_violation(&std.y, &std.x, &f.beta, f.gamma);
                    (f, v)
                })
                .collect();
            let content = match common.format {
                Format::Text => report::lasso_text(&std.names, &with_kkt, SUPPORT_THRESHOLD),
                Format::Json => {
                    render_json(&report::lasso_json(&std.names, &with_kkt, SUPPORT_THRESHOLD))
                }
            };
            emit(&common, &content)
        }
        Command::Plot { common, subsets } => {
            let data = load(&common)?;
            let std = StandardizedDataset::fit(&data)?;
            let summary = std.correlations();
            let mut labels = Vec::new();
            let mut sigmas = Vec::new();
            for part in subsets.split(';') {
                let mut subset = parse_index_list(part)?;
                subset.sort_unstable();
                sigmas.push(sigma(&summary, &subset)?);
                labels.push(report::fmt_subset(&subset));
            }
            let title = format!("response content by predictor subset ('{}')", std.names[0]);
            emit(&common, &svg::content_bars(&title, &labels, &sigmas))
        }
    }
}

/// Parse `args` and run. Returns the process exit code: 0 on success, 1 on a
/// runtime error (usage errors exit 2 via the parser itself).
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::parse_from(args);
    match run_command(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
