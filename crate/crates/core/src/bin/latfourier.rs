//! Command-line driver for the experiment suites.
//!
//!   latfourier inequalities --lattice identity:2 --N 32 --K 8 --seed 7
//!   latfourier verify --lattice a_d:2 --suite tiling --samples 10000
//!   latfourier report --config experiment.cfg --out results/
//!
//! Exit status: 0 when every hard criterion passes, 1 when one fails or a
//! suite errors, 2 for configuration errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use latfourier::experiment::{run, ExperimentConfig, Suite};
use latfourier::Error;

#[derive(Parser)]
#[command(
    name = "latfourier",
    version,
    about = "Fourier analysis on lattice fundamental domains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fast transform against the direct-sum oracle, round trips, Plancherel.
    TransformSelftest(Flags),
    /// Monte Carlo tiling check of the fundamental domain.
    Tiling(Flags),
    /// Hausdorff-Young, Paley, Hardy-Littlewood and HYP ratio scans.
    Inequalities(Flags),
    /// Multiplier growth functionals, operator-norm estimates and checks.
    Multiplier(Flags),
    /// Every suite, plus a summary file.
    Report(Flags),
    /// Run one suite by name (or `all`).
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        flags: Flags,
    },
}

#[derive(Args, Default)]
struct Flags {
    /// Flat key=value configuration file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// identity:<d>, diag:<a,b,..>, rows:<a,b;c,d>, file:<path> or a_d:<d>
    #[arg(long)]
    lattice: Option<String>,
    #[arg(long = "N")]
    n: Option<String>,
    #[arg(long = "K")]
    k: Option<String>,
    #[arg(long)]
    oversample: Option<String>,
    /// Comma-separated exponents; fractions like 4/3 are accepted.
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    /// gaussian, const:re,im, poly:<a,b=re[:im];...> or table:<path>
    #[arg(long)]
    symbol: Option<String>,
    /// power:<exponent> or table:<path>
    #[arg(long)]
    weight: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    samples: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Output directory (default: $LATFOURIER_OUT or ./latfourier-out)
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    jobs: Option<String>,
}

impl Flags {
    fn into_config(self) -> Result<ExperimentConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        let pairs = [
            ("lattice", self.lattice),
            ("N", self.n),
            ("K", self.k),
            ("oversample", self.oversample),
            ("p", self.p),
            ("q", self.q),
            ("b", self.b),
            ("beta", self.beta),
            ("symbol", self.symbol),
            ("weight", self.weight),
            ("trials", self.trials),
            ("samples", self.samples),
            ("seed", self.seed),
            ("out", self.out),
            ("jobs", self.jobs),
        ];
        for (key, value) in pairs {
            if let Some(value) = value {
                cfg.set(key, &value)?;
            }
        }
        Ok(cfg)
    }
}

fn execute(command: Command) -> Result<bool, Error> {
    let (flags, suites, summary) = match command {
        Command::TransformSelftest(f) => (f, vec![Suite::TransformSelftest], false),
        Command::Tiling(f) => (f, vec![Suite::Tiling], false),
        Command::Inequalities(f) => (f, vec![Suite::Inequalities], false),
        Command::Multiplier(f) => (f, vec![Suite::Multiplier], false),
        Command::Report(f) => (f, Suite::ALL.to_vec(), true),
        Command::Verify { suite, flags } => {
            let suites = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![Suite::parse(&suite)?]
            };
            (flags, suites, false)
        }
    };
    let config = flags.into_config()?;
    let outcome = run(&config, &suites)?;
    let text = outcome.summary();
    print!("{text}");
    if summary {
        std::fs::write(config.out.join("summary.txt"), &text)?;
    }
    Ok(outcome.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err @ Error::Config { .. }) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
