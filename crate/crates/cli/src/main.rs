use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qmix::experiments::{self, Command, ExperimentConfig, Format};

/// Quasirandomness experiments on superoperators and embedded graphs.
///
/// Exit status: 0 when every verdict passes, 1 when some verdict fails,
/// 2 on usage or input errors.
#[derive(Parser, Debug)]
#[command(name = "qmix", version)]
struct Cli {
    /// JSON experiment config; flags given alongside override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Experiment>,
}

#[derive(Subcommand, Debug)]
enum Experiment {
    /// Uniformity against spectral expansion over random unitary channels.
    Mixing {
        #[command(flatten)]
        sizes: Sizes,
        #[command(flatten)]
        common: Common,
    },
    /// Converse mixing ratios on irreducibly covariant embedded graphs.
    ConverseMixing {
        /// Graph JSON; defaults to circulant graphs on `n` vertices.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[command(flatten)]
        sizes: Sizes,
        #[command(flatten)]
        common: Common,
    },
    /// Norm equalities for an embedded graph.
    Embed {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Identities of the fermionic superoperator for a given n.
    HaagerupItoh {
        #[command(flatten)]
        sizes: Sizes,
        #[command(flatten)]
        common: Common,
    },
    /// Norms of the rank-one extremal circulant.
    CzExtremal {
        #[command(flatten)]
        sizes: Sizes,
        #[command(flatten)]
        common: Common,
    },
    /// Lifted matrices and the half-plane bound.
    Lift {
        #[command(flatten)]
        sizes: Sizes,
        #[command(flatten)]
        common: Common,
    },
    /// The quartic bound on random channels and a complete graph.
    Randomizing {
        #[command(flatten)]
        sizes: Sizes,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Default)]
struct Sizes {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
}

#[derive(Args, Debug, Default)]
struct Common {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    max_sweeps: Option<usize>,
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Tolerance applied to every verdict.
    #[arg(long)]
    tol: Option<f64>,
    /// Report file; the report goes to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OutputFormat {
    Json,
    Csv,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Csv => Format::Csv,
        }
    }
}

fn overlay<T>(slot: &mut Option<T>, value: Option<T>) {
    if value.is_some() {
        *slot = value;
    }
}

impl Experiment {
    fn command(&self) -> Command {
        match self {
            Experiment::Mixing { .. } => Command::Mixing,
            Experiment::ConverseMixing { .. } => Command::ConverseMixing,
            Experiment::Embed { .. } => Command::Embed,
            Experiment::HaagerupItoh { .. } => Command::HaagerupItoh,
            Experiment::CzExtremal { .. } => Command::CzExtremal,
            Experiment::Lift { .. } => Command::Lift,
            Experiment::Randomizing { .. } => Command::Randomizing,
        }
    }

    fn apply(self, config: &mut ExperimentConfig) {
        let (sizes, common, graph) = match self {
            Experiment::Mixing { sizes, common }
            | Experiment::HaagerupItoh { sizes, common }
            | Experiment::CzExtremal { sizes, common }
            | Experiment::Lift { sizes, common }
            | Experiment::Randomizing { sizes, common } => (sizes, common, None),
            Experiment::ConverseMixing { graph, sizes, common } => (sizes, common, graph),
            Experiment::Embed { graph, common } => (Sizes::default(), common, graph),
        };
        overlay(&mut config.n, sizes.n);
        overlay(&mut config.m, sizes.m);
        overlay(&mut config.k, sizes.k);
        overlay(&mut config.trials, sizes.trials);
        overlay(&mut config.graph, graph);
        overlay(&mut config.seed, common.seed);
        overlay(&mut config.restarts, common.restarts);
        overlay(&mut config.max_sweeps, common.max_sweeps);
        overlay(&mut config.rel_tol, common.rel_tol);
        overlay(&mut config.tol, common.tol);
        overlay(&mut config.out, common.out);
        overlay(&mut config.format, common.format.map(Format::from));
    }
}

fn build_config(cli: Cli) -> Result<ExperimentConfig, String> {
    let from_file = match &cli.config {
        Some(path) => Some(ExperimentConfig::from_json_file(path).map_err(|e| e.to_string())?),
        None => None,
    };
    match (from_file, cli.command) {
        (None, None) => Err("give a subcommand or --config <file>".into()),
        (Some(config), None) => Ok(config),
        (None, Some(experiment)) => {
            let mut config = ExperimentConfig::new(experiment.command());
            experiment.apply(&mut config);
            Ok(config)
        }
        (Some(mut config), Some(experiment)) => {
            if config.command != experiment.command() {
                return Err(format!(
                    "config file is for {} but the subcommand is {}",
                    config.command.name(),
                    experiment.command().name()
                ));
            }
            experiment.apply(&mut config);
            Ok(config)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match build_config(cli) {
        Ok(c) => c,
        Err(message) => {
            eprintln!("qmix: {message}");
            return ExitCode::from(2);
        }
    };
    let report = match experiments::run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("qmix: {}: {e}", config.command.name());
            return ExitCode::from(2);
        }
    };
    let format = config.format.unwrap_or_default();
    match &config.out {
        Some(path) => {
            if let Err(e) = experiments::emit(&report, format, path) {
                eprintln!("qmix: {e}");
                return ExitCode::from(2);
            }
        }
        None => println!("{}", experiments::render(&report, format).trim_end()),
    }
    for v in &report.verdicts {
        eprintln!("{} {} (tol {:e})", if v.pass { "PASS" } else { "FAIL" }, v.claim, v.tolerance);
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
