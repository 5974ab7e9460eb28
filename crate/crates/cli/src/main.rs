mod commands;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Clock;

/// Trivial extensions of quiver algebras and certificates of infinite
/// Hochschild homology dimension.
///
/// Exit codes: 0 success or certified, 1 failed check, 2 input error,
/// 3 verdict unknown, 4 dimension cap reached.
#[derive(Parser)]
#[command(name = "trivext", version)]
struct Cli {
    /// Human readable text instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Record wall clock time per stage (makes the report nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, basis, radical filtration, socles and structural flags.
    Info { file: String },
    /// Build T(A), its quiver and relations.
    Trivext {
        file: String,
        /// Use the grading of T(A) induced by a grading of A.
        #[arg(long)]
        graded: bool,
        /// Longest relation to search for (default: Loewy length of T(A)).
        #[arg(long, value_name = "L")]
        relations_cap: Option<usize>,
    },
    /// Run the criteria for infinite Hochschild homology dimension.
    Verdict {
        file: String,
        /// Judge T(A) rather than A.
        #[arg(long)]
        extend: bool,
        /// Also compute HH_n for n <= N as corroboration.
        #[arg(long, value_name = "N")]
        hh_check: Option<usize>,
    },
    /// Graded Cartan matrices and determinants of A and T(A).
    Cartan { file: String },
    /// Hochschild homology dimensions from the bar complex.
    Hh {
        file: String,
        #[arg(long, value_name = "N", default_value_t = 4)]
        max: usize,
        /// Use the full bar complex instead of the normalized one.
        #[arg(long)]
        full_bar: bool,
    },
    /// Run every check over the bundled corpus.
    Corpus,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut clock = Clock::new(cli.timing);
    let result = match &cli.command {
        Command::Info { file } => commands::info(file, &mut clock),
        Command::Trivext {
            file,
            graded,
            relations_cap,
        } => commands::trivext(file, *graded, *relations_cap, &mut clock),
        Command::Verdict { file, extend, hh_check } => commands::verdict(file, *extend, *hh_check, &mut clock),
        Command::Cartan { file } => commands::cartan(file, &mut clock),
        Command::Hh { file, max, full_bar } => commands::hh(file, *max, *full_bar, &mut clock),
        Command::Corpus => commands::corpus(&mut clock),
    };
    match result {
        Ok(mut out) => {
            clock.finish(&mut out.report);
            if cli.pretty {
                print!("{}", out.report.to_text());
            } else {
                println!("{}", out.report.to_json());
            }
            if let Some(d) = out.diagnostic {
                eprintln!("trivext: {d}");
            }
            ExitCode::from(out.exit as u8)
        }
        Err(f) => {
            eprintln!("trivext: error: {}", f.message);
            ExitCode::from(f.exit as u8)
        }
    }
}
