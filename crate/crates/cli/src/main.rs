// SPDX-License-Identifier: Apache-2.0

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use subclassical::acceptance::Fault;
use subclassical::commands::{self, Initial, Preset, SystemParams, SystemSpec};
use subclassical::{CliError, Config, Format, Outcome};

#[derive(Parser)]
#[command(name = "subclassical", version, about = "Quantum extensions of finite classical Markov chains")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Classification tolerance, in (0, 1e-3].
    #[arg(long, global = true, env = "SUBCLASSICAL_TOL", default_value_t = commands::DEFAULT_TOL)]
    tol: f64,
    /// Seed for trajectory sampling.
    #[arg(long, global = true, default_value_t = commands::DEFAULT_SEED)]
    seed: u64,
    /// Number of one-step trajectories.
    #[arg(long, global = true, default_value_t = commands::DEFAULT_STEPS)]
    steps: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    CsvSummary,
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetArg {
    SpontaneousEmission,
    Spin,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    PerturbedR,
}

#[derive(Args)]
struct ParamArgs {
    /// Coupling of the spontaneous-emission Hamiltonian.
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    /// σx⊗σx coupling of the spin Hamiltonian.
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_3)]
    lambda: f64,
    /// σy⊗σy coupling of the spin Hamiltonian.
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_6)]
    mu: f64,
    /// Interaction time [default: π/4 for spontaneous-emission, 1 for spin].
    #[arg(long)]
    time: Option<f64>,
}

impl ParamArgs {
    fn params(&self) -> SystemParams {
        SystemParams { theta: self.theta, lambda: self.lambda, mu: self.mu, time: self.time }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dilate a stochastic matrix to a bijection with an environment law.
    Dilate {
        /// Stochastic matrix JSON, `-` for stdin.
        input: PathBuf,
    },
    /// Build and classify the canonical quantum extension of a stochastic matrix.
    Extend {
        /// Stochastic matrix JSON, `-` for stdin.
        input: PathBuf,
    },
    /// Classify a CP map given by Kraus operators or a Choi matrix.
    Classify {
        /// CP map JSON, `-` for stdin.
        input: PathBuf,
    },
    /// Birkhoff-von Neumann decomposition of a doubly stochastic matrix.
    Birkhoff {
        /// Matrix JSON, `-` for stdin.
        input: PathBuf,
    },
    /// Sample one-step quantum trajectories and compare with the exact law.
    Trajectory {
        /// `spontaneous-emission`, `spin`, or a path to a bipartite unitary JSON.
        system: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Initial diagonal law, comma separated [default: point mass on 0].
        #[arg(long, value_delimiter = ',', conflicts_with = "rho")]
        initial: Option<Vec<f64>>,
        /// Initial density matrix JSON; it must be diagonal.
        #[arg(long)]
        rho: Option<PathBuf>,
        /// Include the post-measurement state per outcome.
        #[arg(long)]
        final_states: bool,
    },
    /// Hamiltonian, unitary, R matrix and Birkhoff weights of a preset system.
    Example {
        #[arg(value_enum)]
        system: PresetArg,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run the acceptance suite.
    Verify {
        /// Print per-criterion timings.
        #[arg(short, long)]
        verbose: bool,
        /// Corrupt the suite deliberately to check that it fails.
        #[arg(long, value_enum)]
        inject_fault: Option<FaultArg>,
    },
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let mut s = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut s)?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(s)
}

fn run(cli: &Cli, cfg: &Config) -> Result<Outcome, CliError> {
    cfg.validate()?;
    match &cli.command {
        Command::Dilate { input } => commands::dilate(&read_input(input)?, cfg),
        Command::Extend { input } => commands::extend(&read_input(input)?, cfg),
        Command::Classify { input } => commands::classify(&read_input(input)?, cfg),
        Command::Birkhoff { input } => commands::birkhoff(&read_input(input)?, cfg),
        Command::Trajectory { system, params, initial, rho, final_states } => {
            let custom;
            let spec = match Preset::from_name(system) {
                Some(p) => SystemSpec::Preset(p, params.params()),
                None => {
                    custom = read_input(Path::new(system))?;
                    SystemSpec::Custom(&custom)
                }
            };
            let rho_text;
            let init = match (initial, rho) {
                (Some(w), _) => Initial::Law(w.clone()),
                (None, Some(path)) => {
                    rho_text = read_input(path)?;
                    Initial::State(&rho_text)
                }
                (None, None) => Initial::Ground,
            };
            commands::trajectory(&spec, &init, *final_states, cfg)
        }
        Command::Example { system, params } => {
            let preset = match system {
                PresetArg::SpontaneousEmission => Preset::SpontaneousEmission,
                PresetArg::Spin => Preset::Spin,
            };
            commands::example(preset, &params.params(), cfg)
        }
        Command::Verify { verbose, inject_fault } => {
            let fault = inject_fault.map(|f| match f {
                FaultArg::PerturbedR => Fault::PerturbedR,
            });
            commands::verify(*verbose, fault, cfg)
        }
    }
}

fn emit(body: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = Config {
        tol: cli.global.tol,
        seed: cli.global.seed,
        steps: cli.global.steps,
        format: match cli.global.format {
            FormatArg::Json => Format::Json,
            FormatArg::CsvSummary => Format::CsvSummary,
        },
    };
    let result = run(&cli, &cfg).and_then(|outcome| {
        if let Some(notes) = &outcome.notes {
            eprint!("{notes}");
        }
        emit(&outcome.body, cli.global.out.as_deref())?;
        Ok(outcome.failure)
    });
    match result {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(failure)) => {
            eprintln!("error: {}", CliError::Verification(failure));
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
