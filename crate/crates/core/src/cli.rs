//! The `cpfcert` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::cert::{validate_structure, Verdict, VerdictKind, VerdictSummary};
use crate::check::{check, FuelConfig, DEFAULT_FUEL};
use crate::cpf::{parse_certificate, validate_schema};
use crate::render::render_html;

/// Exit code for parse, schema and I/O errors.
pub const EXIT_ERROR: i32 = 4;

/// Stack size for worker threads; deep terms recurse.
const STACK: usize = 512 << 20;

#[derive(Parser, Debug)]
#[command(name = "cpfcert", version, about = "Check proof certificates for term rewrite systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse, validate and check certificates
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Rewrite steps allowed per normal-form computation
        #[arg(long, env = "CPFCERT_FUEL", default_value_t = DEFAULT_FUEL)]
        fuel: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the XML structure only
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Write an HTML rendering of a certificate
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

pub fn exit_code(kind: VerdictKind) -> i32 {
    match kind {
        VerdictKind::Certified => 0,
        VerdictKind::Rejected => 1,
        VerdictKind::PartiallyCertified => 2,
        VerdictKind::Unsupported => 3,
    }
}

/// Rank of an exit code when combining several files.
fn severity(code: i32) -> u8 {
    match code {
        0 => 0,
        2 => 1,
        3 => 2,
        1 => 3,
        _ => 4,
    }
}

/// The more severe of two exit codes.
pub fn combine(a: i32, b: i32) -> i32 {
    if severity(b) > severity(a) {
        b
    } else {
        a
    }
}

/// What one file produced: text for stdout and stderr, and an exit code.
#[derive(Default)]
struct Report {
    out: String,
    err: String,
    code: i32,
}

fn read(path: &PathBuf) -> Result<Vec<u8>, String> {
    std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn check_file(path: &PathBuf, fuel: u64, format: Format, label: bool) -> Report {
    let bytes = match read(path) {
        Ok(b) => b,
        Err(e) => return Report { err: format!("{e}\n"), code: EXIT_ERROR, ..Default::default() },
    };
    let cp = match parse_certificate(&bytes) {
        Ok(cp) => cp,
        Err(e) => {
            return Report { err: format!("{}: {e}\n", path.display()), code: EXIT_ERROR, ..Default::default() }
        }
    };
    let verdict = check(&cp, FuelConfig::with_steps(fuel));
    Report { out: format_verdict(&verdict, format, label.then_some(path)), code: exit_code(verdict.kind()), err: String::new() }
}

fn format_verdict(v: &Verdict, format: Format, label: Option<&PathBuf>) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(&VerdictSummary::from(v)).expect("summary serializes");
            s.push('\n');
            s
        }
        Format::Text => match label {
            Some(p) => format!("{}: {v}\n", p.display()),
            None => format!("{v}\n"),
        },
    }
}

fn validate_file(path: &PathBuf) -> Report {
    let bytes = match read(path) {
        Ok(b) => b,
        Err(e) => return Report { err: format!("{e}\n"), code: EXIT_ERROR, ..Default::default() },
    };
    let errors = validate_schema(&bytes);
    if errors.is_empty() {
        return Report { out: format!("{}: valid\n", path.display()), ..Default::default() };
    }
    let err = errors.iter().map(|e| format!("{}: {e}\n", path.display())).collect();
    Report { err, code: EXIT_ERROR, ..Default::default() }
}

fn render_file(path: &PathBuf, output: Option<&PathBuf>) -> Report {
    let cp = match read(path).and_then(|b| parse_certificate(&b).map_err(|e| format!("{}: {e}", path.display()))) {
        Ok(cp) => cp,
        Err(e) => return Report { err: format!("{e}\n"), code: EXIT_ERROR, ..Default::default() },
    };
    let defects = validate_structure(&cp);
    if !defects.is_empty() {
        let err = defects.iter().map(|d| format!("{}: {d}\n", path.display())).collect();
        return Report { err, code: EXIT_ERROR, ..Default::default() };
    }
    let html = render_html(&cp);
    match output {
        None => Report { out: html, ..Default::default() },
        Some(o) => match std::fs::write(o, html) {
            Ok(()) => Report::default(),
            Err(e) => Report { err: format!("{}: {e}\n", o.display()), code: EXIT_ERROR, ..Default::default() },
        },
    }
}

/// Runs `job` on every file in parallel and prints the buffered reports in
/// argument order.
fn each_file(files: &[PathBuf], job: impl Fn(&PathBuf) -> Report + Sync) -> i32 {
    let reports: Vec<Report> = std::thread::scope(|s| {
        let handles: Vec<_> = files
            .iter()
            .map(|f| {
                let job = &job;
                std::thread::Builder::new()
                    .stack_size(STACK)
                    .spawn_scoped(s, move || job(f))
                    .expect("spawn worker thread")
            })
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join().unwrap_or_else(|_| Report {
                    err: "internal error while checking\n".into(),
                    code: EXIT_ERROR,
                    ..Default::default()
                })
            })
            .collect()
    });
    let mut code = 0;
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    for r in reports {
        let _ = stdout.lock().write_all(r.out.as_bytes());
        let _ = stderr.lock().write_all(r.err.as_bytes());
        code = combine(code, r.code);
    }
    let _ = stdout.lock().flush();
    code
}

/// Entry point; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { 0 };
        }
    };
    match cli.command {
        Command::Check { files, fuel, format } => {
            let label = files.len() > 1;
            each_file(&files, |f| check_file(f, fuel, format, label))
        }
        Command::Validate { files } => each_file(&files, validate_file),
        Command::Render { file, output } => each_file(&[file], |f| render_file(f, output.as_ref())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn severity_order() {
        assert_eq!(combine(0, 2), 2);
        assert_eq!(combine(2, 3), 3);
        assert_eq!(combine(3, 1), 1);
        assert_eq!(combine(1, 4), 4);
        assert_eq!(combine(4, 1), 4);
        assert_eq!(combine(1, 0), 1);
    }
}
