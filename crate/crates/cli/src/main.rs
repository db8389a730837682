use std::ffi::OsString;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use madelung_cli::{run, Command, DatasetSource, OutputFormat, RunConfig, DATASET_ENV};

#[derive(Parser)]
#[command(name = "madelung", version, about = "Orbital filling, one-electron spectra and pairing models")]
struct Cli {
    /// Output format: json or csv.
    #[arg(long, global = true, default_value = "json")]
    format: String,

    /// Element dataset CSV; an empty value disables dataset checks.
    /// Overridden by the MADELUNG_DATASET environment variable.
    #[arg(long, global = true)]
    dataset_path: Option<OsString>,

    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Electron configuration predicted by a filling rule.
    Aufbau(AufbauArgs),
    /// Compare Madelung predictions with the element dataset.
    Classify(ClassifyArgs),
    /// Hydrogenic and Madelung-regular energies plus the S³ eigenvalue check.
    Spectrum(SpectrumArgs),
    /// Dirac-Coulomb level.
    Dirac(DiracArgs),
    /// Richardson pair energies for a pairing model.
    Richardson(RichardsonArgs),
    /// Bogoliubov–de Gennes 2×2 block.
    Bdg(BdgArgs),
    /// Run the full invariant suite.
    Verify,
    /// Discreteness scan over nuclear charge.
    Swscan(SwscanArgs),
}

#[derive(Args)]
struct AufbauArgs {
    #[arg(long)]
    rule: Option<String>,
    #[arg(long)]
    z: String,
    /// Also compare against the experimental configuration.
    #[arg(long)]
    classify: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    z: Option<String>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    z: String,
    #[arg(long = "n-r")]
    n_r: String,
    #[arg(long)]
    l: String,
}

#[derive(Args)]
struct DiracArgs {
    #[arg(long)]
    z: String,
    #[arg(long = "n-r")]
    n_r: String,
    #[arg(long, allow_hyphen_values = true)]
    kappa: String,
    #[arg(long)]
    alpha: Option<String>,
}

#[derive(Args)]
struct RichardsonArgs {
    /// Comma-separated level energies.
    #[arg(long, allow_hyphen_values = true)]
    levels: String,
    /// Comma-separated pair degeneracies (default: all 1).
    #[arg(long)]
    degeneracies: Option<String>,
    #[arg(long)]
    g: String,
    #[arg(long)]
    pairs: String,
}

#[derive(Args)]
struct BdgArgs {
    #[arg(long, allow_hyphen_values = true)]
    epsilon: String,
    #[arg(long, allow_hyphen_values = true)]
    delta: String,
}

#[derive(Args)]
struct SwscanArgs {
    #[arg(long = "n-r")]
    n_r: String,
    #[arg(long)]
    l: String,
    #[arg(long, allow_hyphen_values = true)]
    kappa: String,
    #[arg(long = "z-max")]
    z_max: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
}

fn to_config(cli: Cli) -> Result<RunConfig, madelung_cli::CliError> {
    let mut params: Vec<(&str, Option<String>)> = Vec::new();
    let command = match cli.command {
        Sub::Aufbau(a) => {
            params.push(("rule", a.rule));
            params.push(("z", Some(a.z)));
            params.push(("classify", Some(a.classify.to_string())));
            Command::Aufbau
        }
        Sub::Classify(a) => {
            params.push(("z", a.z));
            Command::Classify
        }
        Sub::Spectrum(a) => {
            params.extend([("z", Some(a.z)), ("n-r", Some(a.n_r)), ("l", Some(a.l))]);
            Command::Spectrum
        }
        Sub::Dirac(a) => {
            params.extend([
                ("z", Some(a.z)),
                ("n-r", Some(a.n_r)),
                ("kappa", Some(a.kappa)),
                ("alpha", a.alpha),
            ]);
            Command::Dirac
        }
        Sub::Richardson(a) => {
            params.extend([
                ("levels", Some(a.levels)),
                ("degeneracies", a.degeneracies),
                ("g", Some(a.g)),
                ("pairs", Some(a.pairs)),
            ]);
            Command::Richardson
        }
        Sub::Bdg(a) => {
            params.extend([("epsilon", Some(a.epsilon)), ("delta", Some(a.delta))]);
            Command::Bdg
        }
        Sub::Verify => Command::Verify,
        Sub::Swscan(a) => {
            params.extend([
                ("n-r", Some(a.n_r)),
                ("l", Some(a.l)),
                ("kappa", Some(a.kappa)),
                ("z-max", a.z_max),
                ("alpha", a.alpha),
            ]);
            Command::Swscan
        }
    };
    let mut config = RunConfig::new(command)
        .format(cli.format.parse::<OutputFormat>()?)
        .dataset(DatasetSource::resolve(
            cli.dataset_path.map(Into::into),
            std::env::var_os(DATASET_ENV),
        ));
    for (key, value) in params {
        if let Some(v) = value {
            config = config.param(key, v);
        }
    }
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match to_config(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let outcome = run(&config);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.exit_code as u8)
}
