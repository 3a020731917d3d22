//! Scenario files in, verification reports out.

pub mod build;
pub mod checks;
pub mod report;
pub mod scenario;

use thiserror::Error;

pub use build::{BuildError, Context};
pub use checks::{run_all, run_check, Record, RunOptions, Verdict};
pub use report::{emit_report, Format, Report, SCHEMA};
pub use scenario::{parse_scenario, print_scenario, ParseError, Scenario};

/// Scenarios shipped with the binary.
pub const SHIPPED: [(&str, &str); 4] = [
    ("a4", include_str!("../scenarios/a4.scenario")),
    ("heisenberg", include_str!("../scenarios/heisenberg.scenario")),
    ("bounded", include_str!("../scenarios/bounded.scenario")),
    ("embeddings", include_str!("../scenarios/embeddings.scenario")),
];

#[derive(Debug, Error)]
pub enum RunError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("build error: {0}")]
    Build(#[from] BuildError),
}

/// Parse, build and run a scenario.
pub fn run_text(name: &str, text: &str, opts: &RunOptions) -> Result<Report, RunError> {
    let sc = parse_scenario(text)?;
    let ctx = Context::build(&sc)?;
    Ok(Report::new(name, opts.seed, run_all(&ctx, &sc, opts)))
}
