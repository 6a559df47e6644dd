use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cliffrac_cli::{
    check, eval, solve, CliError, OutputFormat, ProblemConfig, Solution, SolveOptions,
    OUTPUT_DIR_ENV,
};

#[derive(Parser)]
#[command(
    name = "cliffrac",
    version,
    about = "Clifford-valued fractal interpolation"
)]
struct Cli {
    /// Suppress reports on success.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the fixed point and write the sampled solution.
    Solve {
        config: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Report contraction constants; exit 1 if the configured one is not below 1.
    Check { config: PathBuf },
    /// Evaluate a solution file at comma-separated points.
    Eval {
        solution: PathBuf,
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        at: Vec<f64>,
    },
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Solve {
            config: path,
            output,
            format,
        } => {
            let config = ProblemConfig::load(&path)?;
            let options = SolveOptions {
                output,
                format,
                output_dir: std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from),
            };
            let report = solve(&config, &path, &options)?;
            if !cli.quiet {
                println!("{report}");
            }
            Ok(0)
        }
        Command::Check { config: path } => {
            let config = ProblemConfig::load(&path)?;
            let report = check(&config)?;
            if !cli.quiet || !report.passes() {
                println!("{report}");
            }
            Ok(if report.passes() { 0 } else { 1 })
        }
        Command::Eval { solution, at } => {
            let solution = Solution::read(&solution)?;
            for point in eval(&solution, &at)? {
                println!("{}", point.line);
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
