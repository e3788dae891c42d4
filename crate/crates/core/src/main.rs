//! Command line driver: parse an input file, run its goals, print the
//! report.
//!
//! Exit codes: 0 on success, 1 on a parse error (of the input file itself),
//! 2 when any goal failed its preconditions.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;

use conesym::error::{Error, Result};
use conesym::io::parse_input;
use conesym::report::run_job;

#[derive(Parser)]
#[command(name = "conesym", version, about = "Automorphism groups and canonical forms of rational cones and polytopes", long_about = None)]
struct Args {
    /// Input file with the cone description and the computation goals.
    input: PathBuf,

    /// Write the report to a file instead of standard output.
    #[arg(long, value_name = "path")]
    out: Option<PathBuf>,
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("cannot read {}: {}", path.display(), e)))
}

fn main() -> ExitCode {
    let args = Args::parse();

    let text = match read_text(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("conesym: {}", e);
            return ExitCode::from(1);
        }
    };
    let job = match parse_input(&text) {
        Ok(job) => job,
        Err(e) => {
            eprintln!("conesym: {}: {}", args.input.display(), e);
            return ExitCode::from(1);
        }
    };

    // IsoCheck paths are resolved relative to the referring file
    let base = args.input.parent().map(Path::to_path_buf).unwrap_or_default();
    let outcome = run_job(&job, |path| read_text(&base.join(path)));

    if let Some(out_path) = &args.out {
        if let Err(e) = std::fs::write(out_path, &outcome.text) {
            eprintln!("conesym: cannot write {}: {}", out_path.display(), e);
            return ExitCode::from(1);
        }
    } else {
        print!("{}", outcome.text);
    }

    if outcome.failed_goals > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
