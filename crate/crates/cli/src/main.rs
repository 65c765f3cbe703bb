mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use quatlie_core::roots::TypeLabel;

#[derive(Parser, Debug)]
#[command(name = "quatlie", version, about = "Exact quaternifications of classical simple Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the quaternification of a classical type and write it as JSON.
    Build {
        #[arg(long = "type", value_name = "A|B|C|D")]
        type_label: TypeLabel,
        #[arg(long)]
        rank: usize,
        /// Output file; the algebra is written to stdout when omitted.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Run checks on a stored algebra.
    Verify {
        #[arg(long = "in")]
        input: std::path::PathBuf,
        /// Comma-separated check names; all checks when omitted.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
    },
    /// Weight-space decomposition, k and the triangular decomposition.
    Decompose {
        #[arg(long = "in")]
        input: std::path::PathBuf,
    },
    /// Print the positive roots.
    Roots {
        #[arg(long = "type", value_name = "A|B|C|D")]
        type_label: TypeLabel,
        #[arg(long)]
        rank: usize,
    },
    /// Check the free-word representation: ideal kernel and independence of h, Jh.
    RhoCheck {
        #[arg(long = "type", value_name = "A|B|C|D", required_unless_present = "cartan")]
        type_label: Option<TypeLabel>,
        #[arg(long, required_unless_present = "cartan")]
        rank: Option<usize>,
        /// Explicit Cartan matrix, rows separated by ';', e.g. "2,-1;-1,2".
        #[arg(long, conflicts_with_all = ["type_label", "rank"])]
        cartan: Option<String>,
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Bracket closure of a named preset compared with its target algebra.
    Closure {
        /// sl, so-star, sp, or any named algebra (gl-h, sl-h, sl-c, so-c, u, sk, sl-r-j-gl-r).
        #[arg(long)]
        preset: String,
        #[arg(long)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(e) = commands::configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::Build { type_label, rank, out } => commands::build(type_label, rank, out.as_deref()),
        Command::Verify { input, checks } => commands::verify(&input, checks),
        Command::Decompose { input } => commands::decompose(&input),
        Command::Roots { type_label, rank } => commands::roots(type_label, rank),
        Command::RhoCheck {
            type_label,
            rank,
            cartan,
            degree,
        } => commands::rho_check(type_label, rank, cartan.as_deref(), degree),
        Command::Closure { preset, n } => commands::closure(&preset, n),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
