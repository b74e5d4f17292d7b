//! Command-line driver: subcommand parsing, worker-pool setup and report
//! emission. [`run`] is the whole program; the binary only forwards to it.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use cayley_core::generators::Mutation;
use cayley_core::{GcdKind, Partition};
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub mod commands;
pub mod report;

pub use report::{without_timing, Entry, Outcome, Report, Table};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Parser)]
#[command(name = "cayley", version, about = "Exact characteristic numbers of Cayley plane bundles")]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Emit JSON (the default), optionally to PATH.
    #[arg(long, global = true, value_name = "PATH", num_args = 0..=1)]
    pub json: Option<Option<PathBuf>>,
    /// Emit the scan table as CSV, optionally to PATH.
    #[arg(long, global = true, value_name = "PATH", num_args = 0..=1)]
    pub csv: Option<Option<PathBuf>>,
    /// Destination for output without its own PATH.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 lets the pool decide.
    #[arg(long, global = true, env = "CAYLEY_THREADS", default_value_t = 0)]
    pub threads: usize,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Row,
    Even,
    Diff,
}

impl From<KindArg> for GcdKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Row => GcdKind::Row,
            KindArg::Even => GcdKind::Even,
            KindArg::Diff => GcdKind::Diff,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MutationArg {
    ExtraDegree,
    DuplicateBundle,
}

impl From<MutationArg> for Mutation {
    fn from(m: MutationArg) -> Self {
        match m {
            MutationArg::ExtraDegree => Mutation::ExtraDegree,
            MutationArg::DuplicateBundle => Mutation::DuplicateBundle,
        }
    }
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Binomial GCDs and their p-adic orders against the predicted pattern.
    Gcd {
        kind: KindArg,
        #[arg(long, conflicts_with_all = ["from", "to"])]
        n: Option<u64>,
        #[arg(long, requires = "to")]
        from: Option<u64>,
        #[arg(long, requires = "from")]
        to: Option<u64>,
    },
    /// Wolstenholme, Morley, Granville and the named binomial congruences.
    Congruence {
        #[arg(long, default_value_t = 200)]
        prime_cap: u64,
        #[arg(long, default_value_t = 100)]
        samples: u32,
        #[arg(long, default_value_t = 2000)]
        max_n: u64,
        #[arg(long, default_value_t = 3)]
        max_q: u32,
    },
    /// The pushforward polynomial of s_I(η), checked against its closed form when one exists.
    Pushforward {
        #[arg(long, value_parser = parse_partition)]
        partition: Partition,
        #[arg(long, default_value_t = 1)]
        nf: u64,
    },
    /// A characteristic number of a string Cayley plane bundle.
    Charnum {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        mp: u32,
        #[arg(long)]
        nf: u64,
        #[arg(long, value_parser = parse_partition)]
        partition: Partition,
    },
    /// Build one generator.
    Construct {
        #[command(subcommand)]
        target: ConstructTarget,
    },
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
    /// The four-square GCD against its 6-cycle.
    Conjecture {
        #[arg(long, default_value_t = 25)]
        from: u64,
        #[arg(long, default_value_t = 200)]
        to: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConstructTarget {
    /// M^{4n}.
    M {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        nf: Option<u64>,
        #[arg(long, value_enum)]
        mutate: Option<MutationArg>,
    },
    /// N^{2(p^i+p^j)}.
    N {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        nf: Option<u64>,
        /// Largest admissible p^j.
        #[arg(long, default_value_t = commands::default_power_cap())]
        cap: u64,
        #[arg(long, value_enum)]
        mutate: Option<MutationArg>,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifySuite {
    /// Both generator conditions over a dimension range.
    Theorem {
        #[arg(long, default_value_t = 30)]
        dim_cap: u32,
        /// Defaults to 2 * dim-cap + 1.
        #[arg(long)]
        prime_cap: Option<u64>,
        #[arg(long)]
        nf: Option<u64>,
        #[arg(long, value_enum)]
        mutate: Option<MutationArg>,
    },
    /// The two coefficient congruences and the A and B sums for one triple.
    Corollary {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        j: u32,
        #[arg(long, default_value_t = commands::default_power_cap())]
        cap: u64,
    },
    /// Engine against closed forms for s_n and s_{n1,n2}.
    ClosedForms {
        #[arg(long, default_value_t = 12)]
        max_n: u32,
        #[arg(long, default_value_t = 1)]
        nf: u64,
    },
}

impl Command {
    fn is_scan(&self) -> bool {
        matches!(
            self,
            Command::Gcd { .. } | Command::Congruence { .. } | Command::Conjecture { .. } | Command::Verify { suite: VerifySuite::Theorem { .. } }
        )
    }
}

pub fn execute(command: &Command, seed: u64) -> Result<Outcome, CliError> {
    match command {
        Command::Gcd { kind, n, from, to } => {
            let (a, b) = match (n, from, to) {
                (Some(n), _, _) => (*n, *n),
                (None, Some(a), Some(b)) => (*a, *b),
                _ => return Err(CliError::Usage("gcd needs --n or --from/--to".into())),
            };
            commands::gcd((*kind).into(), a, b)
        }
        Command::Congruence { prime_cap, samples, max_n, max_q } => commands::congruence(*prime_cap, *samples, *max_n, *max_q, seed),
        Command::Pushforward { partition, nf } => commands::pushforward(partition, *nf),
        Command::Charnum { m, mp, nf, partition } => commands::charnum(*m, *mp, *nf, partition),
        Command::Construct { target: ConstructTarget::M { n, nf, mutate } } => commands::construct_m(*n, *nf, mutate.map(Into::into)),
        Command::Construct { target: ConstructTarget::N { p, i, j, nf, cap, mutate } } => {
            commands::construct_n(*p, *i, *j, *nf, *cap, mutate.map(Into::into))
        }
        Command::Verify { suite: VerifySuite::Theorem { dim_cap, prime_cap, nf, mutate } } => {
            let prime_cap = prime_cap.unwrap_or(2 * *dim_cap as u64 + 1);
            commands::verify_theorem(*dim_cap, prime_cap, *nf, mutate.map(Into::into))
        }
        Command::Verify { suite: VerifySuite::Corollary { p, i, j, cap } } => commands::verify_corollary(*p, *i, *j, *cap),
        Command::Verify { suite: VerifySuite::ClosedForms { max_n, nf } } => commands::verify_closed_forms(*max_n, *nf),
        Command::Conjecture { from, to } => commands::conjecture(*from, *to),
    }
}

enum Sink {
    Stdout,
    File(PathBuf),
}

fn sink(own: &Option<PathBuf>, out: &Option<PathBuf>) -> Sink {
    match own.as_ref().or(out.as_ref()) {
        Some(p) => Sink::File(p.clone()),
        None => Sink::Stdout,
    }
}

fn same(a: &Sink, b: &Sink) -> bool {
    match (a, b) {
        (Sink::Stdout, Sink::Stdout) => true,
        (Sink::File(x), Sink::File(y)) => x == y,
        _ => false,
    }
}

fn write_to(sink: &Sink, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match sink {
        Sink::Stdout => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "stdout".into(), source }),
        Sink::File(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: display(path), source }),
    }
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

fn emit(cli: &Cli, outcome: &Outcome, stdout: &mut dyn Write) -> Result<(), CliError> {
    let o = &cli.output;
    let want_json = o.json.is_some() || o.csv.is_none();
    let json_sink = want_json.then(|| sink(o.json.as_ref().unwrap_or(&None), &o.out));
    let csv_sink = o.csv.as_ref().map(|own| sink(own, &o.out));
    if let (Some(a), Some(b)) = (&json_sink, &csv_sink) {
        if same(a, b) {
            return Err(CliError::Usage("JSON and CSV would go to the same destination; give one of them a PATH".into()));
        }
    }
    if let Some(s) = &json_sink {
        write_to(s, &outcome.report.to_json(), stdout)?;
    }
    if let Some(s) = &csv_sink {
        let table = outcome.table.as_ref().expect("checked before execution");
        write_to(s, &table.to_csv()?, stdout)?;
    }
    Ok(())
}

/// Parses `argv` (program name first), runs the command and writes its output.
/// Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match run_cli(&cli, stdout) {
        Ok(pass) => {
            if pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn run_cli(cli: &Cli, stdout: &mut dyn Write) -> Result<bool, CliError> {
    if cli.output.csv.is_some() && !cli.command.is_scan() {
        return Err(CliError::Usage("--csv is only available for gcd, congruence, conjecture and verify theorem".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.output.threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} threads: {e}", cli.output.threads)))?;
    let start = Instant::now();
    let mut outcome = pool.install(|| execute(&cli.command, cli.output.seed))?;
    outcome.report.timing_ms = start.elapsed().as_millis() as u64;
    emit(cli, &outcome, stdout)?;
    Ok(outcome.report.pass)
}

/// Runs `argv` and returns the exit code with everything written to stdout.
pub fn run_captured<I, T>(argv: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}
