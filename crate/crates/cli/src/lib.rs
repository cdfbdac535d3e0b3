//! Command-line front end: job specs, report assembly and rendering.

pub mod render;
pub mod run;
pub mod spec;

pub use run::{run, CliError, Outcome};
pub use spec::{Command, JobSpec};
