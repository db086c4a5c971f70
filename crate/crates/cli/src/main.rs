mod commands;
mod export;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Root systems, Coxeter-plane projections and the E8 mass spectrum.
#[derive(Parser, Debug)]
#[command(name = "gosset", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print rank, edges and Gram matrix of a diagram.
    Diagram {
        /// Name (E8, H4, H4', A3, D5, I2(5), ...) or edge list `rank=N;edges=1-2:5,...`.
        spec: String,
    },
    /// Enumerate roots; print count, Coxeter number and marks.
    Roots { spec: String },
    /// Print c = 2cos(π/h) and the Perron eigenvector z.
    Eigvec { spec: String },
    /// Project onto the Coxeter plane and group into circles.
    Project {
        spec: String,
        #[arg(long, default_value = "ortho")]
        mode: String,
        #[arg(long, default_value = "roots")]
        points: String,
        #[arg(long = "out", default_value = "json")]
        out: String,
        /// Write to this file instead of standard output.
        #[arg(long)]
        file: Option<std::path::PathBuf>,
        /// Relative tolerance for merging radii into one circle.
        #[arg(long)]
        tol: Option<f64>,
        /// SVG canvas size in pixels.
        #[arg(long, default_value_t = 800)]
        size: u32,
        /// Annotate SVG circles with their radii.
        #[arg(long)]
        labels: bool,
    },
    /// Print the E8 mass table and cross-checks.
    Masses {
        #[arg(long, default_value_t = 1.0)]
        m1: f64,
    },
    /// Run the invariant checks; exit 1 if any fails.
    Verify {
        #[arg(default_value = "E8")]
        spec: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("gosset: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
