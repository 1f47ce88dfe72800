//! The `mgeseq` command line.
//!
//! Exit codes: 0 for success (or equivalent, or all axioms pass), 1 for a
//! semantic negative, 2 for usage, I/O and parse errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::canonize::{equivalent, minimize, onward, witness_from_transducer};
use crate::error::Error;
use crate::learn::{construct_minimal, FunctionOracle, TableOracle};
use crate::monoid::Monoid;
use crate::props::{run_axiom_suite, SampleConfig};
use crate::transducer::SubseqTransducer;
use crate::word::Word;

#[derive(Parser, Debug)]
#[command(name = "mgeseq", version, about = "Subsequential transducers over mge monoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print f(WORD), or UNDEFINED.
    Eval {
        #[arg(short = 't', long = "transducer")]
        transducer: PathBuf,
        /// `_` is the empty word.
        #[arg(short = 'w', long = "word")]
        word: String,
    },
    /// Push outputs forward.
    Onward {
        #[arg(short = 't', long = "transducer")]
        transducer: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Minimal equivalent machine; prints `STATES n`.
    Minimize {
        #[arg(short = 't', long = "transducer")]
        transducer: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Compare two machines.
    Equiv {
        #[arg(short = 'a')]
        left: PathBuf,
        #[arg(short = 'b')]
        right: PathBuf,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Build the minimal complete machine from an oracle (a table or a machine file).
    Learn {
        #[arg(long)]
        oracle: PathBuf,
        #[arg(long)]
        bound: usize,
        #[arg(long)]
        depth: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Witness for `A ≡ B` from the states the words reach.
    Witness {
        #[arg(short = 't', long = "transducer")]
        transducer: PathBuf,
        #[arg(short = 'a')]
        alpha: String,
        #[arg(short = 'b')]
        beta: String,
    },
    /// Sampled axiom checks.
    Axioms {
        #[arg(long)]
        monoid: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Rewrite a machine file in canonical form.
    Fmt {
        #[arg(short = 't', long = "transducer")]
        transducer: PathBuf,
    },
}

/// A diagnostic plus the exit code it maps to.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn negative(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    /// Parse errors name `file:line`; everything else only the file.
    fn from_error(path: &Path, err: Error) -> Self {
        match err {
            Error::Parse { line, message } => Failure::usage(format!("{}:{line}: {message}", path.display())),
            other => Failure::usage(format!("{}: {other}", path.display())),
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> std::result::Result<SubseqTransducer, Failure> {
    SubseqTransducer::parse(&read(path)?).map_err(|e| Failure::from_error(path, e))
}

fn load_oracle(path: &Path) -> std::result::Result<FunctionOracle, Failure> {
    let text = read(path)?;
    let is_table = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .nth(2)
        .is_some_and(|l| l.starts_with("map"));
    if is_table {
        TableOracle::parse(&text).map(Into::into)
    } else {
        SubseqTransducer::parse(&text).map(Into::into)
    }
    .map_err(|e| Failure::from_error(path, e))
}

fn word(arg: &str) -> std::result::Result<Word, Failure> {
    arg.parse()
        .map_err(|e: Error| Failure::usage(format!("word `{arg}`: {e}")))
}

fn emit(out: &mut dyn Write, output: Option<&Path>, text: &str) -> std::result::Result<(), Failure> {
    match output {
        Some(path) => write(path, text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::usage(format!("stdout: {e}"))),
    }
}

fn semantic(path: &Path, err: Error) -> Failure {
    Failure::negative(format!("{}: {err}", path.display()))
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(|e| Failure::usage(format!("stdout: {e}")))?
    };
}

fn execute(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Eval { transducer, word: w } => {
            let t = load(&transducer)?;
            let w = word(&w)?;
            match t.eval(w.letters()).map_err(|e| Failure::usage(e.to_string()))? {
                Some(e) => say!(out, "{e}"),
                None => say!(out, "UNDEFINED"),
            }
            Ok(0)
        }
        Command::Onward { transducer, output } => {
            let t = load(&transducer)?;
            let o = onward(&t).map_err(|e| semantic(&transducer, e))?;
            emit(out, output.as_deref(), &o.to_text())?;
            Ok(0)
        }
        Command::Minimize { transducer, output } => {
            let t = load(&transducer)?;
            let m = minimize(&t).map_err(|e| semantic(&transducer, e))?;
            emit(out, output.as_deref(), &m.to_text())?;
            say!(out, "STATES {}", m.num_states());
            Ok(0)
        }
        Command::Equiv { left, right, depth } => {
            let a = load(&left)?;
            let b = load(&right)?;
            let result = equivalent(&a, &b, depth).map_err(|e| Failure::usage(e.to_string()))?;
            say!(out, "{result}");
            Ok(if result.is_equivalent() { 0 } else { 1 })
        }
        Command::Learn {
            oracle,
            bound,
            depth,
            output,
        } => {
            let f = load_oracle(&oracle)?;
            let m = construct_minimal(&f, bound, depth).map_err(|e| match e {
                Error::InvalidParameter(_) => Failure::usage(e.to_string()),
                other => semantic(&oracle, other),
            })?;
            emit(out, output.as_deref(), &m.to_text())?;
            Ok(0)
        }
        Command::Witness { transducer, alpha, beta } => {
            let t = load(&transducer)?.complete();
            let (a, b) = (word(&alpha)?, word(&beta)?);
            match witness_from_transducer(&t, a.letters(), b.letters())
                .map_err(|e| Failure::usage(e.to_string()))?
            {
                Some(w) => {
                    say!(out, "u {}", w.u);
                    say!(out, "v {}", w.v);
                    for (z, s) in &w.sample {
                        say!(out, "s {z} {s}");
                    }
                    Ok(0)
                }
                None => {
                    say!(out, "NOT-EQUIVALENT");
                    Ok(1)
                }
            }
        }
        Command::Axioms { monoid, samples, seed } => {
            let m: Monoid = monoid
                .parse()
                .map_err(|e: Error| Failure::usage(e.to_string()))?;
            let cfg = SampleConfig {
                seed,
                count: samples,
                ..SampleConfig::default()
            };
            let reports = run_axiom_suite(&m, &cfg).map_err(|e| Failure::usage(e.to_string()))?;
            for r in &reports {
                say!(out, "{r}");
            }
            Ok(if reports.iter().all(|r| r.passed) { 0 } else { 1 })
        }
        Command::Fmt { transducer } => {
            let t = load(&transducer)?;
            write(&transducer, &t.to_text())?;
            Ok(0)
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "mgeseq: {}", f.message);
            f.code
        }
    }
}
