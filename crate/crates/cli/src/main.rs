use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qbatt_cli::presets::{self, PRESETS};
use qbatt_cli::sweep::{parse_at, point_dump};
use qbatt_cli::{run_sweep, to_csv, CliError, SweepConfig};

#[derive(Parser)]
#[command(name = "qbatt", version, about = "Charger-battery open-system sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = default_threads())]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep from a config file (a previous CSV also works).
    Run {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Sweep a named figure preset.
    Preset {
        name: String,
        /// Panel or curve value, see `list-presets`.
        #[arg(long, allow_negative_numbers = true)]
        panel: Option<f64>,
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long = "gap-tol")]
        gap_tol: Option<f64>,
        /// Extra `key=value` settings, e.g. `--set equation=lindblad`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        #[command(flatten)]
        output: Output,
    },
    ListPresets,
    /// Evaluate one point and print the full spectrum and state.
    Point {
        #[arg(long, conflicts_with = "preset")]
        config: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        at: String,
    },
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn load(path: &PathBuf) -> Result<SweepConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    SweepConfig::parse(&text)
}

fn sweep(cfg: &SweepConfig, output: &Output) -> Result<(), CliError> {
    let rows = run_sweep(cfg, output.threads)?;
    let csv = to_csv(cfg, &rows);
    match &output.out {
        Some(path) => std::fs::write(path, csv)?,
        None => std::io::stdout().write_all(csv.as_bytes())?,
    }
    let failed: Vec<_> = rows.iter().filter(|r| r.result.is_err()).collect();
    for row in &failed {
        if let Err(msg) = &row.result {
            eprintln!("failed at {}: {msg}", qbatt_cli::sweep::describe_point(&row.at));
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::FailedPoints { failed: failed.len(), total: rows.len() })
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run { config, output } => sweep(&load(&config)?, &output),
        Command::Preset { name, panel, tau, gap_tol, set, output } => {
            let mut cfg = presets::preset(&name, panel)?;
            if let Some(t) = tau {
                cfg.tau = t;
            }
            if let Some(g) = gap_tol {
                cfg.gap_tol = g;
            }
            for kv in &set {
                let (k, v) = kv.split_once('=').ok_or_else(|| CliError::Config(format!("--set '{kv}' must read key=value")))?;
                cfg.set(k.trim(), v.trim())?;
            }
            cfg.validate()?;
            sweep(&cfg, &output)
        }
        Command::ListPresets => {
            for p in PRESETS {
                let panels = match p.panel_param {
                    Some(param) => {
                        let vals: Vec<String> = p.panels.iter().map(|v| v.to_string()).collect();
                        format!("  [--panel {} = {}]", param.as_str(), vals.join(" | "))
                    }
                    None => String::new(),
                };
                println!("{:7} {}{}", p.name, p.summary, panels);
            }
            Ok(())
        }
        Command::Point { config, preset, at } => {
            let cfg = match (config, preset) {
                (Some(path), _) => load(&path)?,
                (None, Some(name)) => presets::preset(&name, None)?,
                (None, None) => return Err(CliError::Config("point needs --config or --preset".into())),
            };
            print!("{}", point_dump(&cfg, &parse_at(&at)?)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qbatt: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
