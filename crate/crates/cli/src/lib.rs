//! Command-line front end: TOML job files in, rendered decompositions out.
//!
//! Exit codes: 0 success, 2 a hypothesis or case condition fails, 3 a
//! homotopy group is not tabulated or not determined, 4 the job, flags or
//! tables are malformed.

pub mod job;
pub mod parse;
pub mod run;

pub use job::{parse_job, Job};
pub use parse::parse_expr;
pub use run::{exit_code, run_batch, run_cli, run_job, run_job_text, DecomposeArgs, Outcome};
