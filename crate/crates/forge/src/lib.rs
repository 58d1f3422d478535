//! File formats, run reports and the command-line driver around `forge-core`.

pub mod cli;
pub mod config;
pub mod examples;
pub mod formats;
pub mod pipeline;
pub mod report;

pub use config::Settings;
pub use examples::Example;
pub use report::RunReport;
