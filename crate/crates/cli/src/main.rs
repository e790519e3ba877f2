use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use planesect_core::experiment::{
    cover_check, write_counts, write_cover, write_exponent, write_sections, Experiment, ExperimentConfig,
    ExperimentError,
};

#[derive(Parser)]
#[command(name = "planesect", version, about = "Rational points on quartic and quintic surfaces via plane sections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Experiment configuration file (`key = value` lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Continue even if a rational singular point is found.
    #[arg(long, global = true)]
    force: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output directory for reports (overrides `out_dir` in the config).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Point counts, line stripping, covering ratios, exponent fit.
    Count,
    /// Genus statistics of sampled and covering planes.
    Sections,
    /// Exhaustive and random verification of the covering bound.
    CoverCheck,
    /// Everything above.
    Report,
}

fn set_threads(n: Option<usize>) -> Result<(), ExperimentError> {
    let Some(n) = n else { return Ok(()) };
    if n == 0 {
        return Err(ExperimentError::Config("--threads must be at least 1".into()));
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| ExperimentError::Config(format!("thread pool: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    if n > 1 {
        eprintln!("note: built without the parallel feature; running on one thread");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), ExperimentError> {
    set_threads(cli.threads)?;
    let path = cli.config.ok_or_else(|| ExperimentError::Config("--config <path> is required".into()))?;
    let mut config = ExperimentConfig::load(&path)?;
    if let Some(out) = cli.out {
        config.out_dir = out;
    }
    let out = config.out_dir.clone();
    let cmd = cli.command;

    if matches!(cmd, Command::CoverCheck | Command::Report) {
        let rows = cover_check(&config);
        let p = write_cover(&rows, config.seed, &out)?;
        for r in &rows {
            println!("cover {}: {} points, {} failures, max ratio {:.4}", r.scope, r.points, r.failures, r.max_ratio);
        }
        println!("wrote {}", p.display());
        if rows.iter().any(|r| r.failures > 0) {
            return Err(ExperimentError::Io(std::io::Error::other("covering bound violated")));
        }
    }
    if cmd == Command::CoverCheck {
        return Ok(());
    }

    let exp = Experiment::prepare(&config, cli.force)?;
    println!(
        "surface {} ({}), {} points up to B = {}, {} lines, cache {}",
        exp.surface,
        exp.surface.hash(),
        exp.points.len(),
        config.b_max(),
        exp.lines.len(),
        if exp.cache_hit { "hit" } else { "written" }
    );
    let mut fit_error = None;
    if matches!(cmd, Command::Count | Command::Report) {
        let report = exp.count_report();
        for r in &report.rows {
            println!("B = {:>7}  N_X = {:>8}  N_X' = {:>8}  lines = {}", r.bound, r.n_x, r.n_x_prime, r.lines);
        }
        println!("wrote {}", write_counts(&report, &out)?.display());
        println!("wrote {}", write_exponent(&report, &out)?.display());
        match &report.fit {
            Ok(fit) => println!("fitted exponent {:.4}", fit.slope),
            Err(msg) => {
                println!("exponent fit: {msg}");
                fit_error = Some(msg.clone());
            }
        }
    }
    if matches!(cmd, Command::Sections | Command::Report) {
        let report = exp.section_report()?;
        let (a, b) = write_sections(&report, &out)?;
        println!("{} planes analyzed", report.records.len());
        println!("wrote {}", a.display());
        println!("wrote {}", b.display());
    }
    match (cmd, fit_error) {
        (Command::Report, Some(msg)) => Err(ExperimentError::InsufficientData(msg)),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
