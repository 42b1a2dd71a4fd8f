use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use dilcon::bench::bench;
use dilcon::{parse_grid_text, parse_pbm, run_pipeline_with, BinaryImage, Workers};

/// Oriented and dilated contours of bilevel images.
#[derive(Parser)]
#[command(name = "dilcon", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Trace the contours of an image and write them as JSON or SVG.
    Extract {
        input: PathBuf,
        #[command(flatten)]
        source: Source,
        /// Emit edge-midpoint (dilated) contours instead of pixel-corner ones.
        #[arg(long)]
        dilated: bool,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
        /// Worker threads for edge extraction (default: all cores).
        #[arg(long, env = "DILCON_THREADS")]
        threads: Option<usize>,
    },
    /// Time edge extraction for several worker counts.
    Bench {
        input: PathBuf,
        #[command(flatten)]
        source: Source,
        /// Comma-separated worker counts.
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
        threads: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        /// Also write the timings as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct Source {
    /// Input format; guessed from the file extension when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Swap black and white after loading.
    #[arg(long)]
    invert: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// PBM, plain (P1) or raw (P4). A 1 bit is black.
    Pbm,
    /// Rows of 0/1, top row first. A 1 is white.
    Grid,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Json,
    Svg,
}

fn load(path: &Path, source: &Source) -> Result<BinaryImage> {
    let format = source.format.unwrap_or_else(|| {
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("pbm" | "pnm") => Format::Pbm,
            _ => Format::Grid,
        }
    });
    let bytes = fs::read(path).with_context(|| format!("load: cannot read {}", path.display()))?;
    let img = match format {
        Format::Pbm => parse_pbm(&bytes),
        Format::Grid => parse_grid_text(&bytes),
    }
    .with_context(|| format!("load: {}", path.display()))?;
    Ok(if source.invert { img.inverted() } else { img })
}

fn workers(threads: Option<usize>) -> Result<Workers> {
    match threads {
        None => Ok(Workers::default()),
        Some(0) => bail!("--threads must be at least 1"),
        Some(n) => Ok(Workers::new(n)?),
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("write: {}", path.display()))
        }
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .context("write: stdout"),
    }
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Extract {
            input,
            source,
            dilated,
            out,
            emit,
            threads,
        } => {
            let img = load(&input, &source)?;
            let doc = run_pipeline_with(&img, dilated, &workers(threads)?)?;
            let text = match emit {
                Emit::Json => doc.to_json(),
                Emit::Svg => doc.to_svg(),
            };
            write_output(out.as_deref(), &text)
        }
        Command::Bench {
            input,
            source,
            threads,
            reps,
            csv,
        } => {
            if threads.is_empty() || threads.contains(&0) {
                bail!("--threads needs positive worker counts");
            }
            if reps == 0 {
                bail!("--reps must be at least 1");
            }
            let img = load(&input, &source)?;
            let report = bench(&img, &threads, reps)?;
            print!("{}", report.to_table());
            if let Some(path) = csv {
                fs::write(&path, report.to_csv())
                    .with_context(|| format!("write: {}", path.display()))?;
            }
            Ok(())
        }
    }
}
