use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod cmds;
mod config;
mod io;
mod report;

use cmds::bench::BenchArgs;
use cmds::classify::ClassifyArgs;
use cmds::generate::GenerateArgs;
use cmds::simulate::SimulateArgs;
use cmds::verify::VerifyArgs;
use config::FileConfig;

#[derive(Parser)]
#[command(
    name = "selforg",
    version,
    about = "Workbench for self-organizing list rules: generate, classify, \
             simulate, verify, bench"
)]
struct Cli {
    /// TOML config file with default flag values; explicit flags win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write request sequences drawn from a taxonomy class.
    Generate(GenerateArgs),
    /// Label request sequences with their taxonomy class.
    Classify(ClassifyArgs),
    /// Serve one sequence and print the per-step cost table.
    Simulate(SimulateArgs),
    /// Check the closed-form cost laws against simulation over a sweep.
    Verify(VerifyArgs),
    /// Compare algorithms' total costs over seeded samples of classes.
    Bench(BenchArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let file = match FileConfig::load(cli.config.as_deref()) {
        Ok(file) => file,
        Err(error) => {
            eprintln!("error: {error:#}");
            return ExitCode::from(2);
        }
    };
    let result = match cli.command {
        Command::Generate(args) => cmds::generate::run(args, &file),
        Command::Classify(args) => cmds::classify::run(args, &file),
        Command::Simulate(args) => cmds::simulate::run(args, &file),
        Command::Verify(args) => cmds::verify::run(args, &file),
        Command::Bench(args) => cmds::bench::run(args, &file),
    };
    match result {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::from(2)
        }
    }
}
