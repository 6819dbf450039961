//! Correlation-based variable selection for linear models.
//!
//! The pipeline: ingest a CSV table ([`ingest`]), standardize and
//! sign-align the columns ([`standardize`]), measure how much of the
//! response distribution a predictor subset carries ([`ycontent`]), prune
//! weak predictors along a backward-elimination path ([`select`]), and
//! judge the resulting subset sizes by repeated k-fold cross-validation
//! ([`crossval`]) — with an ℓ₁-penalized baseline ([`lasso`]) fit on the
//! same folds for comparison.

pub mod cli;
pub mod crossval;
pub mod error;
pub mod ingest;
pub mod lasso;
pub mod report;
pub mod select;
pub mod standardize;
pub mod svg;
pub mod symmatrix;
pub mod ycontent;

pub use error::{Error, Result};
