use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use ouflow_cli::{exit, run, ExperimentConfig, ExperimentId, RawConfig};

#[derive(Parser)]
#[command(name = "ouflow", version, about = "Matrix OU diffusion experiments against closed-form predictions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Run one experiment and write CSV, JSON and text outputs.
    Run(RunArgs),
    /// List experiments with their defaults.
    List,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    experiment: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Flat TOML file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    dt: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    samples: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    bins: Option<i64>,
    /// |w| for generalized-resolvent read-outs (default 2/n).
    #[arg(long, allow_hyphen_values = true)]
    regulator: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Negative control: swap in sign-flipped exact solutions (pde-residuals).
    #[arg(long, hide = true)]
    flip_viscosity: bool,
}

fn list() {
    println!("{:<20} {:>6} {:>5} {:>8} {:>10} {:>5}  description", "experiment", "n", "a", "samples", "tau", "bins");
    for e in ExperimentId::ALL {
        let d = e.defaults();
        let tau = d.tau.map_or("stationary".to_string(), |t| t.to_string());
        println!("{:<20} {:>6} {:>5} {:>8} {:>10} {:>5}  {}", e.name(), d.n, d.a, d.samples, tau, d.bins, e.summary());
    }
}

fn run_command(args: RunArgs) -> i32 {
    let flags = RawConfig {
        experiment: args.experiment,
        seed: args.seed,
        n: args.n,
        a: args.a,
        dt: args.dt,
        samples: args.samples,
        tau: args.tau,
        bins: args.bins,
        regulator: args.regulator,
        out: args.out,
    };
    let mut config = match ExperimentConfig::parse(args.config.as_deref(), flags) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return exit::CONFIG;
        }
    };
    config.flip_viscosity = args.flip_viscosity;

    let started = Instant::now();
    let output = match run(&config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {} failed: {e}", config.experiment);
            return exit::RUNTIME;
        }
    };
    if let Err(e) = output.write_to(&config.out_dir) {
        eprintln!("error: cannot write to {}: {e}", config.out_dir.display());
        return exit::RUNTIME;
    }
    print!("{}", output.report.to_text());
    eprintln!("wrote {} in {:.1} s", config.out_dir.display(), started.elapsed().as_secs_f64());
    if output.report.passed() {
        exit::PASS
    } else {
        exit::FAIL
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::CONFIG } else { exit::PASS };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match cli.command {
        Command::List => {
            list();
            exit::PASS
        }
        Command::Run(args) => run_command(args),
    };
    ExitCode::from(code as u8)
}
