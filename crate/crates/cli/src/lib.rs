//! The `phoml` command: checking and normalising proof scripts, running the
//! metatheory property suites and replaying the bundled examples.

pub mod golden;
pub mod runner;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use phoml_core::parse::parse_script;
use phoml_core::reduce::DEFAULT_FUEL;
use phoml_core::typeck::Checker;
use phoml_harness::props::{self, Profile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "phoml",
    version,
    about = "Typechecker and normaliser for predicative higher-order minimal logic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Typecheck every declaration of a script.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
    },
    /// Normalise a definition of a script.
    Normalize {
        file: PathBuf,
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        /// Print every step with its rule and position.
        #[arg(long)]
        trace: bool,
    },
    /// Run the metatheory property suites.
    Props {
        /// A property name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        cases: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ProfileArg::Ci)]
        profile: ProfileArg,
    },
    /// Run the bundled example scripts and compare with their golden output.
    Examples {
        /// Directory holding the scripts and `golden/`.
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Rewrite the golden files instead of comparing.
        #[arg(long)]
        bless: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProfileArg {
    Ci,
    Full,
}

/// Runs the command line `argv` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match cli.command {
        Command::Check { file, fuel } => check(&file, fuel, out, err),
        Command::Normalize {
            file,
            name,
            fuel,
            trace,
        } => normalize(&file, &name, fuel, trace, out, err),
        Command::Props {
            suite,
            cases,
            seed,
            profile,
        } => {
            let profile = match profile {
                ProfileArg::Ci => Profile::Ci,
                ProfileArg::Full => Profile::Full,
            };
            run_props(&suite, cases.unwrap_or(profile.cases()), seed, out, err)
        }
        Command::Examples { dir, bless } => {
            let dir = dir.unwrap_or_else(golden::default_dir);
            golden::run(&dir, bless, out, err)
        }
    }
}

fn load(file: &PathBuf, err: &mut dyn Write) -> Result<phoml_core::parse::Script, i32> {
    let text = std::fs::read_to_string(file).map_err(|e| {
        let _ = writeln!(err, "{}: {e}", file.display());
        EXIT_USAGE
    })?;
    parse_script(&file.display().to_string(), &text).map_err(|e| {
        let _ = writeln!(err, "{e}");
        EXIT_USAGE
    })
}

fn check(file: &PathBuf, fuel: usize, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let script = match load(file, err) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let report = runner::check_script(&script, &Checker::new(fuel), fuel);
    let _ = write!(out, "{}", report.output());
    for (span, e) in report.errors() {
        let _ = writeln!(err, "{span}: {e}");
    }
    if report.ok() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

fn normalize(
    file: &PathBuf,
    name: &str,
    fuel: usize,
    trace: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let script = match load(file, err) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let Some((outcome, steps)) = runner::normalize_def(&script, name, fuel) else {
        let _ = writeln!(err, "{}: no definition named `{name}`", file.display());
        return EXIT_USAGE;
    };
    for line in runner::render_normalization(&outcome, trace.then_some(&steps)) {
        let _ = writeln!(out, "{line}");
    }
    EXIT_OK
}

fn run_props(
    suite: &str,
    cases: usize,
    seed: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let names: Vec<&str> = if suite == "all" {
        props::PROPERTIES.to_vec()
    } else if props::PROPERTIES.contains(&suite) {
        vec![suite]
    } else {
        let _ = writeln!(
            err,
            "unknown suite `{suite}`; expected `all` or one of: {}",
            props::PROPERTIES.join(", ")
        );
        return EXIT_USAGE;
    };
    let mut failed = false;
    for name in names {
        let verdict = props::run_property(name, cases, seed).expect("registered property");
        failed |= !verdict.passed();
        for line in verdict.lines() {
            let _ = writeln!(out, "{line}");
        }
        for f in &verdict.failures {
            let _ = writeln!(err, "{name}: seed {}: {}", f.seed, f.counterexample);
        }
    }
    if failed {
        EXIT_FAILURE
    } else {
        EXIT_OK
    }
}
