//! Command-line front end. [`run`] parses the arguments, writes results to
//! `out` and diagnostics to `err`, and returns the process exit code.

use std::io::Write;

use clap::{Parser, Subcommand};
use gpfact_core::{
    alon_tarsi_sum, default_palette, enumerate_1f, enumerate_1f_par, verify_choosability_sample,
    Error, ExportFormat, GpGraph, SignedCountReport,
};

mod verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "gpfact", version, about = "1-factorisations of generalised Petersen graphs GP(3k,k)")]
struct Cli {
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true, value_name = "THREADS")]
    parallel: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the number of 1-factorisations of GP(3k,k) split by sign.
    Count {
        #[arg(long = "k")]
        k: usize,
    },
    /// Stream every 1-factorisation of GP(3k,k), one JSON object per line.
    Enumerate {
        #[arg(long = "k")]
        k: usize,
    },
    /// Print the Alon–Tarsi sign sum and whether it is nonzero.
    Signsum {
        #[arg(long = "k")]
        k: usize,
    },
    /// Check the counting identities for k = 1..=K.
    Verify {
        #[arg(long = "k-max")]
        k_max: usize,
        /// Also cross-check against exhaustive search where feasible.
        #[arg(long)]
        oracle: bool,
    },
    /// Solve random 3-list edge-colourings of GP(3k,k).
    Listcolor {
        #[arg(long = "k")]
        k: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Palette size; defaults to 3k capped at 9.
        #[arg(long)]
        palette: Option<usize>,
        /// Include wall time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Print GP(n,k) as JSON or DOT.
    Export {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(long, default_value = "json")]
        format: ExportFormat,
    },
}

pub fn run<I, S>(argv: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = std::iter::once(std::ffi::OsString::from("gpfact"))
        .chain(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };

    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.parallel.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start thread pool: {e}");
            return EXIT_USAGE;
        }
    };
    let parallel = cli.parallel.is_some_and(|t| t > 1);
    let result = pool.install(|| execute(cli.command, parallel, out, err));
    match result {
        Ok(code) => code,
        Err(CliError::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAIL
        }
    }
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn require_k(k: usize) -> Result<(), Error> {
    if k == 0 {
        Err(Error::InvalidParameters { n: 0, k: 0 })
    } else {
        Ok(())
    }
}

fn execute(
    command: Command,
    parallel: bool,
    out: &mut (dyn Write + Send),
    err: &mut (dyn Write + Send),
) -> Result<i32, CliError> {
    match command {
        Command::Count { k } => {
            require_k(k)?;
            out.write_all(SignedCountReport::new(k).to_json().as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Enumerate { k } => {
            let g = GpGraph::gp3k(k)?;
            if parallel {
                for f in enumerate_1f_par(k)? {
                    out.write_all(f.to_json(&g).as_bytes())?;
                }
            } else {
                for f in enumerate_1f(k)? {
                    out.write_all(f.to_json(&g).as_bytes())?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Signsum { k } => {
            require_k(k)?;
            let sum = alon_tarsi_sum(k);
            writeln!(out, "{{\"k\":{k},\"sign_sum\":\"{sum}\"}}")?;
            if sum == 0.into() {
                writeln!(out, "FAIL: sign sum is zero")?;
                Ok(EXIT_FAIL)
            } else {
                writeln!(out, "PASS: sign sum is nonzero")?;
                Ok(EXIT_OK)
            }
        }
        Command::Verify { k_max, oracle } => {
            let summary = verify::run_suite(k_max, oracle, out)?;
            Ok(if summary.failed == 0 { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Listcolor {
            k,
            trials,
            seed,
            palette,
            timing,
        } => {
            require_k(k)?;
            if trials == 0 {
                writeln!(err, "error: --trials must be at least 1")?;
                return Ok(EXIT_USAGE);
            }
            let palette = palette.unwrap_or_else(|| default_palette(k));
            let report = verify_choosability_sample(k, trials, palette, seed)?;
            out.write_all(report.to_json(timing).as_bytes())?;
            writeln!(err, "elapsed_ms: {}", report.elapsed_ms)?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Export { n, k, format } => {
            let g = GpGraph::new(n, k)?;
            out.write_all(&g.export(format))?;
            Ok(EXIT_OK)
        }
    }
}
