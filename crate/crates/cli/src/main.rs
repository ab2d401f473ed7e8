use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rees_elim::{run_script, Options};

#[derive(Parser)]
#[command(name = "rees-elim", about = "Exact Rees-algebra elimination engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a session script; the exit code is 0 iff every assertion passes.
    Run {
        /// Path to the session script.
        script: PathBuf,
        /// Write machine-readable records (JSON lines) to this file.
        #[arg(long)]
        records: Option<PathBuf>,
        /// Probe-grid coordinate values over the rationals, e.g. "0,1,-1,2".
        #[arg(long, value_name = "spec")]
        probe_grid: Option<String>,
        /// Reject generators above this total degree.
        #[arg(long, default_value_t = 64)]
        max_degree: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            script,
            records,
            probe_grid,
            max_degree,
        } => {
            let text = match fs::read_to_string(&script) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("cannot read {}: {}", script.display(), e);
                    return ExitCode::from(2);
                }
            };
            let probe_values = match probe_grid.map(|s| parse_probe_spec(&s)).transpose() {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("bad --probe-grid: {}", e);
                    return ExitCode::from(2);
                }
            };
            let report = run_script(
                &text,
                Options {
                    probe_values,
                    max_degree,
                },
            );
            print!("{}", report.text);
            if let Some(path) = records {
                let mut out = String::new();
                for r in &report.records {
                    out.push_str(&r.to_string());
                    out.push('\n');
                }
                if let Err(e) = fs::File::create(&path)
                    .and_then(|mut f| f.write_all(out.as_bytes()))
                {
                    eprintln!("cannot write {}: {}", path.display(), e);
                    return ExitCode::from(2);
                }
            }
            if report.success() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn parse_probe_spec(spec: &str) -> Result<Vec<i64>, String> {
    let values: Result<Vec<i64>, _> = spec.split(',').map(|v| v.trim().parse()).collect();
    match values {
        Ok(v) if !v.is_empty() => Ok(v),
        _ => Err(format!("expected comma-separated integers, got `{}`", spec)),
    }
}
