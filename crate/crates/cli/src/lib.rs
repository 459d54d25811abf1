//! Command-line front end for `primetree`.
//!
//! [`run`] takes an argv and two sinks and returns the process exit code:
//! 0 on success, 1 when the library rejects the input, 2 on a usage error.

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};

use clap::{ArgGroup, Args, Parser, Subcommand};
use num_bigint::BigUint;
use primetree::codec::{encode_value, eval_factored, EvalValue};
use primetree::generator::{g_count, g_forest, DEFAULT_ENUMERATION_BUDGET};
use primetree::rationals::{locate, rational_stream};
use primetree::sieve::{literal_fixpoint_run, sieve_run, SieveRun};
use primetree::{FactoredValue, Tree};

pub mod dot;
pub mod selftest;

/// Values wider than this print in prime-power form in `rationals` output.
pub const DECIMAL_BITS_LIMIT: u64 = 1 << 16;

#[derive(Parser, Debug)]
#[command(name = "primetree", version, about = "Prime-labeled trees, integers and rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the tree of a positive integer or fraction `p/q`.
    Encode {
        value: String,
    },
    /// Print the value of a tree given as an S-expression.
    Decode {
        tree: String,
    },
    /// List every tree over the first `n` primes with height at most `h`.
    Forest {
        #[command(flatten)]
        shape: Shape,
        /// Print only the number of trees.
        #[arg(long, conflicts_with = "dot")]
        count_only: bool,
        /// Emit Graphviz DOT instead of S-expressions.
        #[arg(long)]
        dot: bool,
    },
    /// Number of trees over the first `n` primes with height at most `h`.
    Count {
        #[command(flatten)]
        shape: Shape,
    },
    /// Primes in `(q, 2q)` read off the trees of the composites.
    Sieve {
        q: u64,
        /// Interleave each composite of `(q, 2q]` with its tree.
        #[arg(long)]
        show_composites: bool,
        /// Run the forest fixpoint form instead of the direct enumeration.
        #[arg(long)]
        fidelity: bool,
    },
    /// Enumerate the positive rationals, or find the stage of one.
    Rationals(RationalsArgs),
    /// Run the built-in oracle checks.
    Selftest,
}

#[derive(Args, Debug)]
struct Shape {
    #[arg(long = "labels", value_name = "N")]
    labels: u32,
    #[arg(long = "height", value_name = "H")]
    height: u32,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["count", "locate"])))]
struct RationalsArgs {
    /// Print the first `N` entries as `num/den<TAB>tree`.
    #[arg(long, value_name = "N")]
    count: Option<u64>,
    /// Stop after stage `S`.
    #[arg(long, value_name = "S", requires = "count")]
    max_stage: Option<u32>,
    /// Print the stage at which `p/q` appears.
    #[arg(long, value_name = "P/Q")]
    locate: Option<String>,
}

enum Failure {
    Domain(String),
    Io(io::Error),
}

impl From<primetree::Error> for Failure {
    fn from(e: primetree::Error) -> Failure {
        Failure::Domain(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Io(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Domain(message) => f.write_str(message),
            Failure::Io(e) => write!(f, "output error: {e}"),
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                2
            } else {
                let _ = out.write_all(rendered.as_bytes());
                0
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(failure) => {
            let _ = writeln!(err, "error: {failure}");
            1
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Encode { value } => {
            let value: EvalValue = value.trim().parse()?;
            writeln!(out, "{}", encode_value(&value)?)?;
        }
        Command::Decode { tree } => {
            let tree: Tree = tree.parse()?;
            writeln!(out, "{}", eval_factored(&tree)?.to_value()?)?;
        }
        Command::Forest { shape, count_only, dot } => {
            let forest = g_forest(shape.labels, shape.height)?;
            if count_only {
                writeln!(out, "{}", forest.len())?;
            } else if dot {
                dot::write_forest(out, forest.iter())?;
            } else {
                for tree in &forest {
                    writeln!(out, "{tree}")?;
                }
            }
        }
        Command::Count { shape } => {
            if shape.labels == 0 {
                return Err(Failure::Domain("invalid parameter: label count must be at least 1".into()));
            }
            writeln!(out, "{}", g_count(shape.labels, shape.height)?)?;
        }
        Command::Sieve { q, show_composites, fidelity } => {
            let run = if fidelity { literal_fixpoint_run(q, DEFAULT_ENUMERATION_BUDGET)? } else { sieve_run(q)? };
            write_sieve(out, &run, show_composites)?;
        }
        Command::Rationals(args) => rationals(out, args)?,
        Command::Selftest => return Ok(if selftest::run(out)? { 0 } else { 1 }),
    }
    Ok(0)
}

fn write_sieve(out: &mut dyn Write, run: &SieveRun, show_composites: bool) -> io::Result<()> {
    if !show_composites {
        for p in &run.primes_found {
            writeln!(out, "{p}")?;
        }
        return Ok(());
    }
    // the window in order: composites with their tree, primes bare
    let mut primes = run.primes_found.iter().peekable();
    for (value, tree) in &run.composites {
        while let Some(p) = primes.next_if(|&&p| p < *value) {
            writeln!(out, "{p}")?;
        }
        writeln!(out, "{value}\t{tree}")?;
    }
    for p in primes {
        writeln!(out, "{p}")?;
    }
    Ok(())
}

fn rationals(out: &mut dyn Write, args: RationalsArgs) -> Result<(), Failure> {
    if let Some(text) = args.locate {
        let value: EvalValue = text.trim().parse()?;
        let small = |n: &BigUint| u64::try_from(n).map_err(|_| Failure::Domain(format!("{n} does not fit in 64 bits")));
        let stage = locate(small(value.numerator())?, small(value.denominator())?)?;
        writeln!(out, "{stage}")?;
        return Ok(());
    }
    let count = args.count.expect("clap requires --count or --locate");
    let max_stage = args.max_stage.unwrap_or(u32::MAX);
    for entry in rational_stream().take_while(|e| e.stage <= max_stage).take(count as usize) {
        let factored = entry.factored()?;
        writeln!(out, "{}\t{}", fraction_text(&factored)?, entry.tree)?;
    }
    Ok(())
}

/// `num/den` in decimal, or in prime powers past [`DECIMAL_BITS_LIMIT`].
pub fn fraction_text(value: &FactoredValue) -> primetree::Result<String> {
    if value.bits_estimate() > DECIMAL_BITS_LIMIT {
        return Ok(value.to_string());
    }
    Ok(value.to_value()?.as_fraction().to_string())
}
