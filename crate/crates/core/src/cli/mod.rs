//! Command-line front end: `sweep`, `verify` and `distribution`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.

pub mod format;
pub mod sweep;
pub mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::hardy::{detection_distribution, HardyConfig};
use format::{Field, Record};
pub use sweep::{run_sweep, sweep_record, StageSelection, SweepRecord, SweepSpec};
pub use verify::{run_verify, Check, Comparison, VerifyOptions, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "hardy-irrealism",
    version,
    about = "Realism metrics across the stages of Hardy's two-interferometer experiment"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate stage metrics and detector statistics over a grid of p.
    Sweep {
        #[arg(long, default_value_t = 0.0)]
        p_min: f64,
        #[arg(long, default_value_t = 1.0)]
        p_max: f64,
        #[arg(long, default_value_t = 201)]
        steps: usize,
        /// 1, 2, 3, 4 or all
        #[arg(long, default_value = "all")]
        stage: StageSelection,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run every analytic-vs-numeric comparison and invariant check.
    Verify {
        /// Override the tolerance of every check.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Detector click probabilities at the final stage.
    Distribution {
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Five outcome probabilities plus the dark-detector summaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionRecord {
    pub p: f64,
    pub phi: f64,
    pub outcomes: [f64; 5],
    pub p_dark: f64,
    pub p_at_least_one_dark: f64,
}

impl Record for DistributionRecord {
    const COLUMNS: &'static [&'static str] = &[
        "p",
        "phi",
        "x_plus_x_minus",
        "x_plus_y_minus",
        "y_plus_x_minus",
        "y_plus_y_minus",
        "annihilation",
        "p_dark",
        "p_at_least_one_dark",
    ];

    fn fields(&self) -> Vec<Field> {
        let mut f = vec![Field::Real(self.p), Field::Real(self.phi)];
        f.extend(self.outcomes.iter().map(|&x| Field::Real(x)));
        f.push(Field::Real(self.p_dark));
        f.push(Field::Real(self.p_at_least_one_dark));
        f
    }
}

pub fn distribution_record(p: f64, phi: f64) -> crate::Result<DistributionRecord> {
    let config = HardyConfig::new(p, phi)?;
    let d = detection_distribution(&config)?;
    Ok(DistributionRecord {
        p: config.p(),
        phi: config.phi(),
        outcomes: d.as_array(),
        p_dark: d.both_dark(),
        p_at_least_one_dark: d.at_least_one_dark(),
    })
}

fn emit(text: &str, output: Option<&Path>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let written = match output {
        Some(path) => std::fs::write(path, text),
        None => stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let target = output.map_or("standard output".to_string(), |p| p.display().to_string());
            let _ = writeln!(stderr, "error: cannot write {target}: {e}");
            EXIT_USAGE
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match cli.command {
        Command::Sweep {
            p_min,
            p_max,
            steps,
            stage,
            phi,
            format,
            output,
        } => {
            let spec = SweepSpec {
                p_min,
                p_max,
                steps,
                stage,
                phi,
            };
            let rows = match run_sweep(&spec) {
                Ok(rows) => rows,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return EXIT_USAGE;
                }
            };
            let text = match format {
                Format::Csv => format::to_csv(&rows),
                Format::Json => format::to_json_array(&rows),
            };
            emit(&text, output.as_deref(), stdout, stderr)
        }
        Command::Verify { tolerance } => {
            if let Some(t) = tolerance {
                if !(t >= 0.0) {
                    let _ = writeln!(stderr, "error: tolerance must be nonnegative");
                    return EXIT_USAGE;
                }
            }
            let report = run_verify(&VerifyOptions {
                tolerance,
                ..Default::default()
            });
            if write!(stdout, "{report}").is_err() {
                return EXIT_USAGE;
            }
            if report.passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }
        Command::Distribution {
            p,
            phi,
            format,
            output,
        } => {
            let record = match distribution_record(p, phi) {
                Ok(r) => r,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return EXIT_USAGE;
                }
            };
            let text = match format {
                Format::Csv => format::to_csv(&[record]),
                Format::Json => format::to_json_object(&record),
            };
            emit(&text, output.as_deref(), stdout, stderr)
        }
    }
}
