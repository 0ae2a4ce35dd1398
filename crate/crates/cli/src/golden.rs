//! Golden-output replay of the bundled example scripts. Each directive of a
//! script has its own file `golden/<script>/<NN>.txt`.

use std::io::Write;
use std::path::{Path, PathBuf};

use phoml_core::parse::parse_script;
use phoml_core::reduce::DEFAULT_FUEL;
use phoml_core::typeck::Checker;

use crate::runner::{check_script, CheckReport};
use crate::{EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

pub const SCRIPTS: [&str; 2] = ["congruence", "extensionality"];

pub fn default_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/examples"))
}

/// The expected contents of each directive's golden file, in order.
pub fn directive_outputs(report: &CheckReport) -> Vec<String> {
    report
        .items
        .iter()
        .filter(|i| i.directive)
        .map(|i| match &i.error {
            None => i.lines.iter().map(|l| format!("{l}\n")).collect(),
            Some(e) => format!("{e}\n"),
        })
        .collect()
}

/// Checks one bundled script, returning its report.
pub fn check_bundled(dir: &Path, script: &str) -> Result<CheckReport, String> {
    let file = format!("{script}.phoml");
    let text = std::fs::read_to_string(dir.join(&file)).map_err(|e| format!("{file}: {e}"))?;
    let parsed = parse_script(&file, &text).map_err(|e| e.to_string())?;
    Ok(check_script(
        &parsed,
        &Checker::new(DEFAULT_FUEL),
        DEFAULT_FUEL,
    ))
}

fn golden_path(dir: &Path, script: &str, index: usize) -> PathBuf {
    dir.join("golden")
        .join(script)
        .join(format!("{:02}.txt", index + 1))
}

pub fn run(dir: &Path, bless: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut failed = false;
    for script in SCRIPTS {
        let report = match check_bundled(dir, script) {
            Ok(r) => r,
            Err(e) => {
                let _ = writeln!(err, "{e}");
                return EXIT_USAGE;
            }
        };
        for (i, actual) in directive_outputs(&report).iter().enumerate() {
            let path = golden_path(dir, script, i);
            if bless {
                if let Err(e) = std::fs::create_dir_all(path.parent().expect("golden dir"))
                    .and_then(|()| std::fs::write(&path, actual))
                {
                    let _ = writeln!(err, "{}: {e}", path.display());
                    return EXIT_USAGE;
                }
                let _ = writeln!(out, "BLESS {script} #{:02}", i + 1);
                continue;
            }
            match std::fs::read_to_string(&path) {
                Ok(expected) if &expected == actual => {
                    let _ = writeln!(out, "PASS {script} #{:02}", i + 1);
                }
                Ok(expected) => {
                    failed = true;
                    let _ = writeln!(out, "DIFF {script} #{:02}", i + 1);
                    let _ = write!(err, "--- expected\n{expected}+++ actual\n{actual}");
                }
                Err(e) => {
                    failed = true;
                    let _ = writeln!(out, "MISSING {script} #{:02}", i + 1);
                    let _ = writeln!(err, "{}: {e}", path.display());
                }
            }
        }
    }
    if failed {
        EXIT_FAILURE
    } else {
        EXIT_OK
    }
}
