//! `hdirac`: runs the verification suites and reports on Dirac operators
//! for graded Hecke algebras.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hecke_dirac::field::Q;
use hecke_dirac::group::DEFAULT_GROUP_CAP;
use hecke_dirac::setting::Setting;
use hecke_dirac::suite::{SuiteName, SuiteOptions};

use commands::{Basis, Chirality, DiracArgs, GroupKind, ModuleKind};
use config::{Format, Resolved, RunConfig};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, configuration or input: exit status 2.
    Usage(String),
    /// A computation could not be completed: exit status 1.
    Failure(String),
}

impl From<hecke_dirac::Error> for CliError {
    fn from(e: hecke_dirac::Error) -> Self {
        use hecke_dirac::Error as E;
        match e {
            E::Numerical(_) | E::Validation(_) => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "hdirac", version, about = "Dirac operators for graded Hecke algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Root system series (A, B, C, D, G2, F4, I2), optionally with the rank: `A3`, `I2(5)`.
    #[arg(long, global = true)]
    series: Option<String>,
    #[arg(long, global = true)]
    rank: Option<usize>,
    /// Dihedral order for I2.
    #[arg(long, global = true)]
    m: Option<u32>,
    /// Parameters per root orbit, e.g. `long=1,short=2`.
    #[arg(long = "c", global = true, value_name = "NAME=VALUE,...")]
    c: Option<String>,
    /// Degree cap for the Hecke algebra arithmetic.
    #[arg(long, global = true)]
    degree: Option<usize>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON run configuration; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites.
    Verify {
        /// Suites to run (hecke, clifford, dirac, vogan); all by default.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<SuiteName>,
        /// Random ν per spin module for the D² identity.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Random pairs for the derivation identities.
        #[arg(long, default_value_t = 50)]
        pairs: usize,
        /// Degree window for the graded complex.
        #[arg(long, default_value_t = 3)]
        window: usize,
        /// Skip the graded-complex suite above this rank.
        #[arg(long, default_value_t = 2)]
        vogan_max_rank: usize,
    },
    /// Character table of W̃ (with c(σ̃)) or of W.
    Ctable {
        #[arg(long, value_enum, default_value_t = GroupKind::Cover)]
        group: GroupKind,
    },
    /// Dirac operator on a principal series or one-dimensional module.
    DiracReport {
        /// ν as comma-separated rationals, read according to --basis.
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        #[arg(long, value_enum, default_value_t = Basis::Pairings)]
        basis: Basis,
        /// Defaults to the principal series when --nu is given, else the trivial module.
        #[arg(long, value_enum)]
        module: Option<ModuleKind>,
        #[arg(long, value_enum, default_value_t = Chirality::All)]
        chirality: Chirality,
    },
    /// Screen central characters with the Dirac inequality.
    Bounds {
        /// `default` (pairings in [-2, 2] with step 1/2), `radius:step`, or points `a,b;c,d`.
        #[arg(long, default_value = "default", allow_hyphen_values = true)]
        nu_grid: String,
        /// Basis for explicit points.
        #[arg(long, value_enum, default_value_t = Basis::Pairings)]
        basis: Basis,
    },
    /// Nilpotent orbits with their ν_e and ⟨ν_e, ν_e⟩.
    Orbits {
        #[arg(long)]
        solvable_only: bool,
    },
    /// Solve z ⊗ 1 = ρ(ζ(z)) + 𝒟a + b𝒟 for a central z.
    Zeta {
        /// casimir, casimir-squared, cubic or invariant:<degree>.
        #[arg(long, default_value = "casimir")]
        z: String,
    },
}

fn build<F: hecke_dirac::field::Field>(cfg: &Resolved) -> Result<Setting<F>, CliError> {
    let params = cfg.params.iter().map(|(k, v)| (k.clone(), F::from_rational(v))).collect();
    Ok(Setting::with_caps(cfg.spec, &params, cfg.seed, DEFAULT_GROUP_CAP, cfg.degree)?)
}

macro_rules! with_setting {
    ($cfg:expr, $f:ident ( $($arg:expr),* )) => {
        if $cfg.spec.numeric_only() {
            commands::$f(&build::<f64>($cfg)?, $($arg),*)
        } else {
            commands::$f(&build::<Q>($cfg)?, $($arg),*)
        }
    };
}

fn run(cli: Cli) -> Result<(output::Report, Resolved, Option<PathBuf>), CliError> {
    let g = cli.global;
    let file = match &g.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let flags = RunConfig {
        series: g.series,
        rank: g.rank,
        m: g.m,
        c: g.c.as_deref().map(config::parse_parameter_list).transpose()?.unwrap_or_default(),
        degree: g.degree,
        tol: g.tol,
        seed: g.seed,
        format: g.format,
    };
    let cfg = config::resolve(file, flags)?;
    let report = match cli.command {
        Command::Verify { suite, samples, pairs, window, vogan_max_rank } => {
            let opts = SuiteOptions {
                suites: if suite.is_empty() { SuiteName::ALL.to_vec() } else { suite },
                tol: cfg.tol,
                dirac_samples: samples,
                derivation_pairs: pairs,
                window,
                vogan_max_rank,
                ..SuiteOptions::default()
            };
            with_setting!(&cfg, verify(&opts))?
        }
        Command::Ctable { group } => with_setting!(&cfg, ctable(group))?,
        Command::DiracReport { nu, basis, module, chirality } => {
            let nu = nu.as_deref().map(commands::parse_point).transpose()?;
            let module = module.unwrap_or(if nu.is_some() { ModuleKind::Principal } else { ModuleKind::Trivial });
            let args = DiracArgs { module, nu, basis, chirality, tol: cfg.tol };
            with_setting!(&cfg, dirac_report(&args))?
        }
        Command::Bounds { nu_grid, basis } => {
            if cfg.spec.numeric_only() {
                let s = build::<f64>(&cfg)?;
                commands::bounds(&s, &commands::grid_points(&s.rs, &nu_grid, basis)?)?
            } else {
                let s = build::<Q>(&cfg)?;
                commands::bounds(&s, &commands::grid_points(&s.rs, &nu_grid, basis)?)?
            }
        }
        Command::Orbits { solvable_only } => with_setting!(&cfg, orbits(solvable_only))?,
        Command::Zeta { z } => with_setting!(&cfg, zeta(&z))?,
    };
    Ok((report, cfg, g.out))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let outcome = run(cli).and_then(|(report, cfg, out)| {
        let text = output::render(&report, &cfg)?;
        match out {
            Some(p) => std::fs::write(&p, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display())))?,
            None => print!("{text}"),
        }
        Ok(report.pass)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
