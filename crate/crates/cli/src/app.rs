//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use flgame_core::analysis::{subsidy_report, threshold_report};
use flgame_core::model::check_interior_condition;
use flgame_core::EffectivenessSpec;
use serde::Serialize;

use crate::figure::{compute_figure, render_svg, FigureSpec, DEFAULT_D2, DEFAULT_POINTS};
use crate::format::{num, threshold};
use crate::report::{
    full_report, render_condition, render_report, render_subsidy, render_thresholds,
};
use crate::scenario_file::read_scenario;
use crate::sweep::{run_sweep, sweep_csv, OutputGroup, SweepParameter, SweepSpec};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "flgame",
    version,
    about = "Data pooling versus solo training in a differentiated duopoly"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Family {
    Sqrt,
    Log1p,
    Satexp,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the interior-duopoly condition; exit 1 if it fails.
    Validate { scenario: PathBuf },
    /// Regime choice, both equilibria, welfare, subsidy and thresholds.
    Report {
        scenario: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Sweep one parameter and write CSV.
    Sweep {
        scenario: PathBuf,
        #[arg(long, value_enum)]
        param: SweepParameter,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        /// Column groups; all of them when omitted.
        #[arg(long, value_enum, value_delimiter = ',')]
        outputs: Vec<OutputGroup>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// gamma*, D2*, gamma_hat and the largest valid gamma.
    Thresholds {
        scenario: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Joint FL gain and the side payment needed to keep the larger firm in.
    Subsidy {
        scenario: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Profit curves against gamma for v1 = 20, v2 = 15.
    Figure3 {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, allow_negative_numbers = true)]
        d1: f64,
        #[arg(long, default_value_t = DEFAULT_D2, allow_negative_numbers = true)]
        d2: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, default_value_t = 100.0, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
    s.push('\n');
    s
}

/// Runs one command, returning what it prints on stdout and its exit code.
pub fn execute(command: Command) -> Result<(String, i32), CliError> {
    match command {
        Command::Validate { scenario } => {
            let s = read_scenario(&scenario)?;
            let report = check_interior_condition(&s);
            Ok((
                render_condition(&report),
                if report.passes() { 0 } else { 1 },
            ))
        }
        Command::Report { scenario, json } => {
            let r = full_report(&read_scenario(&scenario)?)?;
            Ok((if json { to_json(&r) } else { render_report(&r) }, 0))
        }
        Command::Thresholds { scenario, json } => {
            let t = threshold_report(&read_scenario(&scenario)?)?;
            Ok((
                if json {
                    to_json(&t)
                } else {
                    render_thresholds(&t)
                },
                0,
            ))
        }
        Command::Subsidy { scenario, json } => {
            let r = subsidy_report(&read_scenario(&scenario)?)?;
            Ok((
                if json {
                    to_json(&r)
                } else {
                    render_subsidy(&r)
                },
                0,
            ))
        }
        Command::Sweep {
            scenario,
            param,
            from,
            to,
            steps,
            outputs,
            out,
        } => {
            let s = read_scenario(&scenario)?;
            let spec = SweepSpec::new(param, from, to, steps, &outputs)?;
            let csv = sweep_csv(&spec, &run_sweep(&s, &spec));
            match out {
                Some(path) => {
                    write_file(&path, &csv)?;
                    Ok((String::new(), 0))
                }
                None => Ok((csv, 0)),
            }
        }
        Command::Figure3 {
            family,
            d1,
            d2,
            a,
            b,
            c,
            points,
            out,
            svg,
        } => {
            if points < 2 {
                return Err(CliError::Usage(format!(
                    "figure needs at least 2 points, got {points}"
                )));
            }
            let effectiveness = match family {
                Family::Sqrt => EffectivenessSpec::SquareRoot,
                Family::Log1p => EffectivenessSpec::LogPlusOne,
                Family::Satexp => EffectivenessSpec::SaturatingExp { a, b, c },
            };
            let spec = FigureSpec {
                effectiveness,
                d1,
                d2,
                points,
            };
            // bad figure parameters are the caller's mistake, not a model outcome
            spec.scenario()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let figure = compute_figure(&spec)?;
            if let Some(path) = &svg {
                let title = format!("{}, D1 = {d1}, D2 = {d2}", effectiveness.name());
                write_file(path, &render_svg(&figure.csv, &figure.markers, &title)?)?;
            }
            let m = &figure.markers;
            let summary = format!(
                "gamma*: {}\ngamma_hat: {}\ngamma_max: {}\n",
                threshold(&m.gamma_star),
                threshold(&m.gamma_hat),
                num(m.gamma_max)
            );
            match out {
                Some(path) => {
                    write_file(&path, &figure.csv)?;
                    Ok((summary, 0))
                }
                None => Ok((figure.csv, 0)),
            }
        }
    }
}

/// Full command-line entry point; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok((text, code)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
