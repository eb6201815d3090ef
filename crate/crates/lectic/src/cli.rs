//! The `lectic` command line: enumeration, reduction, benchmarking, and
//! corpus generation over `.cxt` files.
//!
//! Results go to the output stream, diagnostics to the error stream.
//! Exit codes: 0 success, 1 domain error (unreadable or malformed input,
//! invalid parameter values), 2 usage error.

use crate::bitset::BitSet;
use crate::closure::{validate_closure_axioms, CountingOperator};
use crate::context::{intents, FormalContext, ObjectIntentTable, OpCounters};
use crate::cxt::{parse_cxt, write_cxt, CxtError};
use crate::random::{random_context, RandomContextError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Parser)]
#[command(
    name = "lectic",
    version,
    about = "Enumerate the intents, extents and concepts of formal contexts in lectic order"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all intents of a context, one per line
    Intents(EnumerateArgs),
    /// List all extents of a context, one per line
    Extents(EnumerateArgs),
    /// List all concepts as extent/intent pairs
    Concepts { file: PathBuf },
    /// Print the object-clarified and -reduced context
    Reduce { file: PathBuf },
    /// Compare the object-generator and classic enumeration algorithms
    Bench {
        file: PathBuf,
        /// Time this many runs of each algorithm and report the fastest
        #[arg(long, default_value_t = 1)]
        repeat: usize,
    },
    /// Generate a reproducible random context
    Random {
        #[arg(long)]
        objects: usize,
        #[arg(long)]
        attributes: usize,
        /// Probability of each incidence cell, in [0, 1]
        #[arg(long)]
        density: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Parse a context and smoke-test the closure axioms of its
    /// double-derivation operator
    Check { file: PathBuf },
}

#[derive(Args)]
struct EnumerateArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Algorithm::Irreducible)]
    algorithm: Algorithm,
    /// Stop after this many sets
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Lines)]
    format: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    /// Walk the ∩-irreducible generators (object intents)
    Irreducible,
    /// Classic Next-Closure over the double-derivation operator
    Classic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Lines,
    Json,
}

/// Timing and instrumentation for one benchmarked algorithm.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub algorithm: &'static str,
    pub intent_count: usize,
    pub wall: Duration,
    pub counters: BenchCounters,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BenchCounters {
    pub superset_tests: u64,
    pub intersections: u64,
    pub max_superset_tests_per_call: u64,
    pub closure_applications: u64,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: CxtError },
    #[error(transparent)]
    Random(#[from] RandomContextError),
    #[error("benchmarked intent counts disagree")]
    CountMismatch,
    #[error("{0} closure axiom violation(s) found")]
    AxiomViolations(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Run the CLI on the given argument vector (including the program
/// name), writing results to `out` and diagnostics to `err`.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(parse_err) => {
            use clap::error::ErrorKind;
            let rendered = parse_err.render();
            return match parse_err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        // A closed output pipe (e.g. piping into `head`) is not an error.
        Err(CliError::Io(io)) if io.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(error) => {
            let _ = writeln!(err, "error: {error}");
            1
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Intents(args) => cmd_enumerate(args, false, out),
        Command::Extents(args) => cmd_enumerate(args, true, out),
        Command::Concepts { file } => cmd_concepts(&file, out),
        Command::Reduce { file } => {
            let context = load(&file)?;
            write!(out, "{}", write_cxt(&context.clarify_reduce_objects()))?;
            Ok(())
        }
        Command::Bench { file, repeat } => cmd_bench(&file, repeat.max(1), out),
        Command::Random {
            objects,
            attributes,
            density,
            seed,
        } => {
            let context = random_context(objects, attributes, density, seed)?;
            write!(out, "{}", write_cxt(&context))?;
            Ok(())
        }
        Command::Check { file } => cmd_check(&file, out),
    }
}

fn load(path: &Path) -> Result<FormalContext, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })?;
    parse_cxt(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn member_names(set: &BitSet, names: &[String]) -> Vec<String> {
    set.iter().map(|i| names[i].clone()).collect()
}

fn cmd_enumerate(
    args: EnumerateArgs,
    transposed: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let context = load(&args.file)?;
    let context = if transposed { context.transpose() } else { context };
    let names = context.attribute_names().to_vec();
    let sets: Box<dyn Iterator<Item = BitSet>> = match args.algorithm {
        Algorithm::Irreducible => Box::new(intents(&context)),
        Algorithm::Classic => Box::new(crate::closure::closed_sets(crate::context::IntentClosure(
            &context,
        ))),
    };
    let limited = sets.take(args.limit.unwrap_or(usize::MAX));
    match args.format {
        OutputFormat::Lines => {
            for set in limited {
                writeln!(out, "{}", member_names(&set, &names).join(" "))?;
            }
        }
        OutputFormat::Json => {
            let listed: Vec<Vec<String>> = limited.map(|s| member_names(&s, &names)).collect();
            writeln!(
                out,
                "{}",
                serde_json::to_string(&listed).expect("string arrays always serialize")
            )?;
        }
    }
    Ok(())
}

fn cmd_concepts(file: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let context = load(file)?;
    for intent in intents(&context) {
        let extent = context.derive_objects(&intent);
        writeln!(
            out,
            "{} | {}",
            member_names(&extent, context.object_names()).join(" "),
            member_names(&intent, context.attribute_names()).join(" ")
        )?;
    }
    Ok(())
}

fn cmd_bench(file: &Path, repeat: usize, out: &mut dyn Write) -> Result<(), CliError> {
    let context = load(file)?;
    writeln!(
        out,
        "context: {} objects, {} attributes; {} timed run(s) per algorithm",
        context.object_count(),
        context.attribute_count(),
        repeat
    )?;
    let by_rows = bench_irreducible(&context, repeat);
    let classic = bench_classic(&context, repeat);
    for report in [&by_rows, &classic] {
        writeln!(out, "{}", render_report(report))?;
    }
    if by_rows.intent_count != classic.intent_count {
        return Err(CliError::CountMismatch);
    }
    writeln!(out, "intent counts agree: {}", by_rows.intent_count)?;
    Ok(())
}

fn render_report(report: &RunReport) -> String {
    let mut line = format!(
        "algorithm={} intents={} wall_us={}",
        report.algorithm,
        report.intent_count,
        report.wall.as_micros()
    );
    let c = report.counters;
    if report.algorithm == "irreducible" {
        line.push_str(&format!(
            " superset_tests={} intersections={} max_superset_tests_per_call={}",
            c.superset_tests, c.intersections, c.max_superset_tests_per_call
        ));
    } else {
        line.push_str(&format!(" closure_applications={}", c.closure_applications));
    }
    line
}

fn bench_irreducible(context: &FormalContext, repeat: usize) -> RunReport {
    let mut best = Duration::MAX;
    let mut intent_count = 0;
    let mut counters = BenchCounters::default();
    for _ in 0..repeat {
        let start = Instant::now();
        let reduced = context.clarify_reduce_objects();
        let table = ObjectIntentTable::new(&reduced);
        let mut totals = OpCounters::default();
        let mut max_per_call = 0;
        let mut count = 1; // the full attribute set comes for free
        let mut current = BitSet::full(context.attribute_count());
        loop {
            let (next, used) = table.next_intent_instrumented(&current);
            totals += used;
            max_per_call = max_per_call.max(used.superset_tests);
            match next {
                Some(intent) => {
                    count += 1;
                    current = intent;
                }
                None => break,
            }
        }
        best = best.min(start.elapsed());
        intent_count = count;
        counters = BenchCounters {
            superset_tests: totals.superset_tests,
            intersections: totals.intersections,
            max_superset_tests_per_call: max_per_call,
            closure_applications: 0,
        };
    }
    RunReport {
        algorithm: "irreducible",
        intent_count,
        wall: best,
        counters,
    }
}

fn bench_classic(context: &FormalContext, repeat: usize) -> RunReport {
    let mut best = Duration::MAX;
    let mut intent_count = 0;
    let mut applications = 0;
    for _ in 0..repeat {
        let operator = CountingOperator::new(crate::context::IntentClosure(context));
        let start = Instant::now();
        let count = crate::closure::closed_sets(&operator).count();
        best = best.min(start.elapsed());
        intent_count = count;
        applications = operator.applications();
    }
    RunReport {
        algorithm: "classic",
        intent_count,
        wall: best,
        counters: BenchCounters {
            closure_applications: applications,
            ..BenchCounters::default()
        },
    }
}

fn cmd_check(file: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let context = load(file)?;
    let report = validate_closure_axioms(&crate::context::IntentClosure(&context), 512);
    writeln!(
        out,
        "parsed {}: {} objects, {} attributes",
        file.display(),
        context.object_count(),
        context.attribute_count()
    )?;
    writeln!(
        out,
        "closure axioms ({} checks, {}): {}",
        report.checks,
        if report.exhaustive { "exhaustive" } else { "sampled" },
        if report.is_clean() { "ok" } else { "VIOLATED" }
    )?;
    if !report.is_clean() {
        for violation in &report.violations {
            writeln!(out, "  {violation:?}")?;
        }
        return Err(CliError::AxiomViolations(report.violations.len()));
    }
    Ok(())
}
