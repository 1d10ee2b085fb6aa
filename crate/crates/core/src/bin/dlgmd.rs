use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dlgmd::bench::write_bench;
use dlgmd::config::RunConfig;
use dlgmd::io::write_sweep;
use dlgmd::run::{output_writer, run, run_bench, sweep, synth};
use dlgmd::Error;

#[derive(Parser)]
#[command(name = "dlgmd", version, about = "Looming detector over frame sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Config file with one `key = value` per line.
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// Override a config key, e.g. `--set preset=set5`. Repeatable.
    #[arg(short = 's', long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Shorthand for `--set scene=...`.
    #[arg(long)]
    scene: Option<String>,
    /// Shorthand for `--set input_dir=...`.
    #[arg(long)]
    input_dir: Option<PathBuf>,
    /// Shorthand for `--set preset=...`.
    #[arg(long)]
    preset: Option<String>,
}

impl Common {
    fn load(&self) -> Result<RunConfig, Error> {
        let mut overrides = Vec::new();
        if let Some(s) = &self.scene {
            overrides.push(format!("scene={s}"));
        }
        if let Some(d) = &self.input_dir {
            overrides.push(format!("input_dir={}", d.display()));
        }
        if let Some(p) = &self.preset {
            overrides.push(format!("preset={p}"));
        }
        overrides.extend(self.overrides.iter().cloned());
        RunConfig::load(self.config.as_deref(), &overrides)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the detector and write a per-frame CSV report.
    Run {
        #[command(flatten)]
        common: Common,
        /// Report path (`-` for stdout); overrides the `report` key.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render the configured synthetic scene as numbered P5 graymaps.
    Synth {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Mean attenuation over translating speeds and kernel spreads.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Time the presynaptic stage across radii and resize factors.
    Bench {
        #[command(flatten)]
        common: Common,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a configuration and print the resolved parameters.
    ValidateConfig {
        #[command(flatten)]
        common: Common,
    },
}

fn execute(command: Command) -> Result<(), Error> {
    match command {
        Command::Run { common, output } => {
            let mut config = common.load()?;
            if output.is_some() {
                config.report = output.filter(|p| p.as_os_str() != "-");
            }
            let trace = run(&config, output_writer(None)?)?;
            let alarms = trace.reports.iter().filter(|r| r.alarm).count();
            eprintln!("{}: {} frames, {alarms} alarm frames", trace.label, trace.len());
        }
        Command::Synth { common, out_dir } => {
            let config = common.load()?;
            let paths = synth(&config, &out_dir)?;
            eprintln!("wrote {} frames to {}", paths.len(), out_dir.display());
        }
        Command::Sweep { common, output } => {
            let config = common.load()?;
            let cells = sweep(&config)?;
            write_sweep(output_writer(output.as_deref())?, &cells)?;
        }
        Command::Bench { common, output } => {
            let config = common.load()?;
            let rows = run_bench(&config)?;
            write_bench(output_writer(output.as_deref())?, &rows)?;
        }
        Command::ValidateConfig { common } => {
            let config = common.load()?;
            println!("{:#?}", config.params);
            for w in config.params.warnings() {
                println!("warning: {w}");
            }
            println!("ok");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_input_error() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
