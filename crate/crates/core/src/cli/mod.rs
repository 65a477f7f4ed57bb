//! Batch runs driven by a configuration file.

pub mod config;
pub mod run;

pub use config::{Mode, RunConfig, SweepAxis, SweepParameter};
pub use run::{emit_plotdata, execute, fmt_num, run, RunSummary, VERSION};
