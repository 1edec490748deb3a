use std::path::{Path, PathBuf};
use std::process::ExitCode;

use artsoc::runner::{self, parse_config, RunConfig, SweepAxis, OUTPUT_ROOT_ENV};
use clap::{Parser, Subcommand};

/// Grid-world agent simulations: ant sorting, Schelling segregation and
/// social impact.
#[derive(Parser)]
#[command(name = "artsoc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write metrics, snapshots and a manifest.
    Run { config: PathBuf },
    /// Run a parameter grid and write summary.csv.
    Sweep {
        config: PathBuf,
        /// `section.key=v1,v2,...`; repeat for more axes (first varies slowest).
        #[arg(long = "param", required = true)]
        params: Vec<SweepAxis>,
        #[arg(long, default_value_t = 1)]
        replicates: usize,
    },
    /// Check a config file and print it in canonical form.
    Validate { config: PathBuf },
}

fn load(path: &Path) -> artsoc::Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| artsoc::Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    let mut config = parse_config(&text)?;
    if let Some(root) = std::env::var_os(OUTPUT_ROOT_ENV) {
        if config.output_dir.is_relative() {
            config.output_dir = PathBuf::from(root).join(&config.output_dir);
        }
    }
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config } => load(&config).and_then(|c| {
            let m = runner::run_experiment(&c)?;
            println!(
                "{}: ticks {}..{}{}, {} files in {}",
                c.kind().as_str(),
                m.start_tick,
                m.end_tick,
                if m.settled { " (settled)" } else { "" },
                m.files.len(),
                c.output_dir.display()
            );
            Ok(true)
        }),
        Command::Sweep {
            config,
            params,
            replicates,
        } => load(&config).and_then(|c| {
            let s = runner::sweep(&c, &params, replicates)?;
            println!(
                "{} runs, {} failed; summary in {}",
                s.rows.len(),
                s.failures(),
                c.output_dir.join(runner::sweep::SUMMARY_FILE).display()
            );
            Ok(s.failures() == 0)
        }),
        Command::Validate { config } => load(&config).map(|c| {
            print!("{}", c.to_text());
            true
        }),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { 1 } else { 2 })
        }
    }
}
