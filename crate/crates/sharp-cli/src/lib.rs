//! Command-line companion to the core harm-risk analytics: JSONL corpus
//! ingestion, seeded synthetic fixture generation, pipeline drivers, and
//! deterministic CSV/JSON report emission.

pub mod cli;
pub mod config;
pub mod ingest;
pub mod pipeline;
pub mod report;
pub mod synth;

pub use cli::run_cli;
