use std::borrow::Cow;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use gaugekit::modmatrix::orbit_contains;
use gaugekit::{decompose, render, AttachingMatrix, Decomposition, Error, Format, TableSet};
use rayon::prelude::*;

use crate::job::{parse_job, Job};

/// Environment variable naming a directory of `.tbl` files that replaces
/// the built-in tables.
pub const TABLES_ENV: &str = "GAUGEKIT_TABLES";

/// State cap for the `--trace` orbit search.
const BFS_LIMIT: usize = 200_000;

#[derive(Debug, Parser)]
#[command(
    name = "gaugekit",
    version,
    about = "Suspension splittings and gauge-group decompositions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose the manifold described by a job file.
    Decompose(DecomposeArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct DecomposeArgs {
    /// TOML job file.
    #[arg(required_unless_present = "jobs", conflicts_with = "jobs")]
    pub file: Option<PathBuf>,
    /// Primes to invert, replacing the job's `localize_away`.
    #[arg(long, value_delimiter = ',', value_name = "P1,P2")]
    pub localize_away: Option<Vec<u64>>,
    /// `text` or `latex`, replacing the job's `format`.
    #[arg(long)]
    pub format: Option<String>,
    /// Print the row-operation log and the orbit-search verdict.
    #[arg(long)]
    pub trace: bool,
    /// Run every `*.toml` in a directory.
    #[arg(long, value_name = "DIR")]
    pub jobs: Option<PathBuf>,
}

/// Rendered result of one job.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn failed(err: &Error) -> Outcome {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            code: exit_code(err),
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::HypothesisNotMet { .. }
        | Error::Unsupported { .. }
        | Error::NoSplitting { .. }
        | Error::CaseInapplicable { .. } => 2,
        Error::NotTabulated { .. } | Error::Undetermined { .. } => 3,
        Error::InvalidArgument(_) | Error::TableSyntax { .. } | Error::TableConflict { .. } => 4,
    }
}

/// The built-in tables, or the directory named by [`TABLES_ENV`].
pub fn load_tables() -> gaugekit::Result<Cow<'static, TableSet>> {
    match std::env::var_os(TABLES_ENV) {
        Some(dir) if !dir.is_empty() => Ok(Cow::Owned(TableSet::load_dir(Path::new(&dir))?)),
        _ => Ok(Cow::Borrowed(TableSet::builtin())),
    }
}

/// Runs the job in `text` with command-line overrides applied.
pub fn run_job_text(text: &str, args: &DecomposeArgs, tables: &TableSet) -> Outcome {
    match parse_job(text).and_then(|job| apply_overrides(job, args)) {
        Ok(job) => run_job(&job, args.trace, tables),
        Err(e) => Outcome::failed(&e),
    }
}

fn apply_overrides(mut job: Job, args: &DecomposeArgs) -> gaugekit::Result<Job> {
    if let Some(away) = &args.localize_away {
        job.localize_away = away.clone();
    }
    if let Some(f) = &args.format {
        job.format = f.parse()?;
    }
    Ok(job)
}

pub fn run_job(job: &Job, trace: bool, tables: &TableSet) -> Outcome {
    match decompose(&job.spec, job.group, &job.localize_away, tables) {
        Ok(d) => Outcome {
            stdout: report(&d, job.format, trace),
            stderr: String::new(),
            code: 0,
        },
        Err(e) => Outcome::failed(&e),
    }
}

fn report(d: &Decomposition, format: Format, trace: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "suspension: {}", render(&d.suspension, format));
    let _ = writeln!(s, "gauge: {}", render(&d.gauge, format));
    let _ = writeln!(s, "theorem: {}", d.theorem_used);
    if !d.localized_away.is_empty() {
        let primes: Vec<String> = d.localized_away.iter().map(u64::to_string).collect();
        let _ = writeln!(s, "localized away: {}", primes.join(", "));
    }
    if let Some(c) = &d.bundle_classes {
        let _ = writeln!(s, "bundle classes: {} [{}]", c.group, c.source);
    }
    for (name, e) in &d.equivalences {
        let _ = writeln!(s, "equivalence: {name} = {}", render(e, format));
    }
    for note in &d.notes {
        let _ = writeln!(s, "note: {note}");
    }
    if trace {
        match &d.reduction {
            Some(r) => trace_reduction(&mut s, r),
            None => s.push_str("trace: no attaching matrix\n"),
        }
    }
    s
}

fn trace_reduction(s: &mut String, r: &AttachingMatrix) {
    let initial = AttachingMatrix::new(
        r.moduli().to_vec(),
        r.initial_residues()
            .iter()
            .map(|row| row.iter().map(|&v| v as i64).collect())
            .collect(),
    )
    .expect("initial matrix of a reduction is valid");
    let indent = |m: &AttachingMatrix| {
        m.to_string()
            .lines()
            .map(|l| format!("  {l}\n"))
            .collect::<String>()
    };
    let _ = write!(s, "trace: initial matrix\n{}", indent(&initial));
    s.push_str("trace: row operations\n");
    for op in r.oplog() {
        let _ = writeln!(s, "  {op}");
    }
    let _ = write!(s, "trace: reduced matrix\n{}", indent(r));
    let _ = writeln!(
        s,
        "trace: replay reproduces reduced matrix: {}",
        yes_no(r.log_certifies())
    );
    let verdict = match orbit_contains(r.moduli(), r.initial_residues(), r.residues(), BFS_LIMIT) {
        Some(true) => "reduced matrix is in the row-operation orbit".to_string(),
        Some(false) => "reduced matrix is NOT in the row-operation orbit".to_string(),
        None => format!("undecided within {BFS_LIMIT} states"),
    };
    let _ = writeln!(s, "trace: orbit search: {verdict}");
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run_file(path: &Path, args: &DecomposeArgs, tables: &TableSet) -> Outcome {
    match std::fs::read_to_string(path) {
        Ok(text) => run_job_text(&text, args, tables),
        Err(e) => Outcome::failed(&Error::invalid(format!("{}: {e}", path.display()))),
    }
}

fn job_files(dir: &Path) -> gaugekit::Result<Vec<PathBuf>> {
    let read =
        std::fs::read_dir(dir).map_err(|e| Error::invalid(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in read {
        let path = entry
            .map_err(|e| Error::invalid(format!("{}: {e}", dir.display())))?
            .path();
        if path.is_file() && path.extension().is_some_and(|x| x == "toml") {
            files.push(path);
        }
    }
    if files.is_empty() {
        return Err(Error::invalid(format!(
            "{}: no .toml job files",
            dir.display()
        )));
    }
    files.sort();
    Ok(files)
}

/// Runs every job in `dir` in parallel; outputs are concatenated in file
/// name order and the exit code is the largest one seen.
pub fn run_batch(dir: &Path, args: &DecomposeArgs, tables: &TableSet) -> Outcome {
    let files = match job_files(dir) {
        Ok(f) => f,
        Err(e) => return Outcome::failed(&e),
    };
    let outcomes: Vec<(String, Outcome)> = files
        .par_iter()
        .map(|p| {
            let name = p
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            (name, run_file(p, args, tables))
        })
        .collect();
    let mut all = Outcome {
        stdout: String::new(),
        stderr: String::new(),
        code: 0,
    };
    for (name, o) in outcomes {
        let _ = writeln!(all.stdout, "== {name} (exit {}) ==", o.code);
        all.stdout.push_str(&o.stdout);
        for line in o.stderr.lines() {
            let _ = writeln!(all.stderr, "{name}: {line}");
        }
        all.code = all.code.max(o.code);
    }
    all
}

/// Entry point shared by the binary and the tests.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 4 } else { 0 };
        }
    };
    let Command::Decompose(args) = cli.command;
    let outcome = match load_tables() {
        Err(e) => Outcome::failed(&e),
        Ok(tables) => match (&args.jobs, &args.file) {
            (Some(dir), _) => run_batch(dir, &args, &tables),
            (None, Some(file)) => run_file(file, &args, &tables),
            (None, None) => Outcome::failed(&Error::invalid("no job file given")),
        },
    };
    let _ = out.write_all(outcome.stdout.as_bytes());
    let _ = err.write_all(outcome.stderr.as_bytes());
    outcome.code
}
