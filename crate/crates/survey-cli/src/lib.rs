//! Survey driver for reflective lattices: single runs, the `U + <-2k>` series,
//! caching, reports and verification against transcribed reference tables.

pub mod cache;
pub mod reference;
pub mod report;
pub mod run;
pub mod verify;

use thiserror::Error;

pub use cache::{content_hash, Cache};
pub use lattice_core::{parse_lattice, LatticeExpression, ParseError};
pub use reference::{CheckStatus, ReferenceTable, SelfCheck};
pub use report::{emit_report, emit_verification, Format};
pub use run::{run_one, run_series, series_lists, Policy, RunConfig, RunRecord, SeriesLists};
pub use verify::{verify_against_reference, VerifyReport};

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error(transparent)]
    Lattice(#[from] lattice_core::LatticeError),
    #[error(transparent)]
    Parse(#[from] lattice_core::ParseError),
    #[error(transparent)]
    Vinberg(#[from] vinberg_engine::VinbergError),
    #[error(transparent)]
    Analysis(#[from] chamber_analysis::AnalysisError),
    #[error("lattice is not hyperbolic")]
    NotHyperbolic,
    #[error("invalid k range {0}..{1}")]
    BadRange(i128, i128),
    #[error("thread pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
