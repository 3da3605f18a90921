use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use skewbrace::braces::circle_from_family;
use skewbrace::check::DEFAULT_SEED;
use skewbrace::ybe::build_solution;
use skewbrace::zoo::{paper_example, sweep_universe, PAPER_EXAMPLES};
use skewbrace::{RegularFamily, Sign, Variant};
use skewbrace_cli::config::{load_endo, load_group};
use skewbrace_cli::{
    exit_code, parse_checks, run, Check, EndoSource, Format, GroupSource, InputError, RunConfig, EXIT_INPUT,
};

#[derive(Parser)]
#[command(
    name = "skewbrace",
    version,
    about = "Regular subgroups, skew braces and Yang-Baxter solutions from endomorphisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks on one (G, ψ, ε).
    Check {
        #[command(flatten)]
        common: Common,
        /// Comma-separated subset of classify,oracles,brace,ybe,hg,fitting,equivariance, or "all".
        #[arg(long, default_value = "all")]
        checks: String,
        /// Write the brace's two Cayley tables here.
        #[arg(long)]
        export_brace: Option<PathBuf>,
    },
    /// Classify every endomorphism of G and compare properties with conditions.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "classify,oracles,brace")]
        checks: String,
    },
    /// Build and verify the Yang-Baxter solutions.
    Ybe {
        #[command(flatten)]
        common: Common,
        /// Write this variant's solution as JSON here.
        #[arg(long, requires = "variant")]
        export: Option<PathBuf>,
        /// rG, rGop, rG1 or rG1op.
        #[arg(long)]
        variant: Option<Variant>,
    },
    /// Hopf-Galois view: special subgroups, opposite subgroup, isomorphism types.
    HgReport {
        #[command(flatten)]
        common: Common,
    },
    /// Built-in groups and examples.
    Zoo {
        #[command(subcommand)]
        action: ZooAction,
    },
}

#[derive(Subcommand)]
enum ZooAction {
    List,
}

#[derive(Args)]
struct Common {
    /// A Cayley table file, zoo:<spec> or paper:<name>.
    #[arg(long)]
    group: String,
    /// A file of images, gen:<g->x,...>, identity, zero or enumerate.
    #[arg(long)]
    endo: Option<String>,
    /// +1 or -1.
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<Sign>,
    /// Exhaustive-scan cap on |G| for every check.
    #[arg(long)]
    cap: Option<usize>,
    /// Sample count above the cap.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// text or json.
    #[arg(long, default_value = "text")]
    format: Format,
}

impl Common {
    fn config(&self, checks: BTreeSet<Check>) -> Result<RunConfig, InputError> {
        let mut cfg = RunConfig::new(self.group.parse::<GroupSource>()?);
        cfg.endo = self.endo.as_deref().map(str::parse::<EndoSource>).transpose()?;
        cfg.epsilon = self.epsilon;
        cfg.checks = checks;
        cfg.exhaustive_cap = self.cap;
        cfg.samples = self.samples;
        cfg.seed = self.seed;
        cfg.format = self.format;
        Ok(cfg)
    }
}

fn checks_of(list: &[Check]) -> BTreeSet<Check> {
    list.iter().copied().collect()
}

fn execute(cfg: &RunConfig) -> i32 {
    let result = run(cfg);
    match &result {
        Ok(out) => println!("{}", out.render(cfg.format).trim_end()),
        Err(e) => eprintln!("error: {e}"),
    }
    exit_code(&result)
}

fn export_brace(cfg: &RunConfig, path: &PathBuf) -> Result<(), InputError> {
    let (group, psi, eps) = resolve(cfg)?;
    let family = RegularFamily::new(&group, &psi, eps)?;
    let brace = circle_from_family(&family)?;
    std::fs::write(path, brace.to_export_text())
        .map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))
}

fn export_solution(cfg: &RunConfig, variant: Variant, path: &PathBuf) -> Result<(), InputError> {
    let (group, psi, eps) = resolve(cfg)?;
    let solution = build_solution(&group, &psi, eps, variant)?;
    let json = serde_json::to_string_pretty(&solution.export()).expect("exports serialize");
    std::fs::write(path, json).map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))
}

fn resolve(cfg: &RunConfig) -> Result<(skewbrace::Group, skewbrace::GroupMap, Sign), InputError> {
    let loaded = load_group(&cfg.group)?;
    let psi = match (&cfg.endo, loaded.default_psi) {
        (Some(src), _) => load_endo(&loaded.group, src)?,
        (None, Some(psi)) => psi,
        (None, None) => skewbrace::GroupMap::identity(&loaded.group),
    };
    let eps = cfg.epsilon.or(loaded.default_epsilon).unwrap_or(Sign::Minus);
    Ok((loaded.group, psi, eps))
}

fn zoo_list() {
    println!("families:");
    for line in [
        "cyclic:<n>",
        "dihedral:<order>        (order even, at least 6)",
        "quaternion:<order>      (generalized, order divisible by 4, at least 8)",
        "heisenberg:<p>          (p odd prime)",
        "unitriangular:<dim>:<q> (upper unitriangular matrices over Z/q)",
        "product(<spec>,<spec>,...)",
        "quotient(<spec>,<k>)    (by the k-th lower central term)",
    ] {
        println!("  {line}");
    }
    println!("examples (paper:<name>):");
    for name in PAPER_EXAMPLES {
        let ex = paper_example(name).expect("built-in examples build");
        println!("  {name:<28} |G| = {:<5} epsilon = {}  {}", ex.group.order(), ex.epsilon, ex.description);
    }
    println!("sweep groups:");
    for spec in sweep_universe() {
        println!("  {spec}");
    }
}

fn dispatch(cli: Cli) -> Result<i32, InputError> {
    Ok(match cli.command {
        Command::Check { common, checks, export_brace: path } => {
            let cfg = common.config(parse_checks(&checks)?)?;
            if let Some(path) = &path {
                export_brace(&cfg, path)?;
            }
            execute(&cfg)
        }
        Command::Enumerate { common, checks } => {
            let mut cfg = common.config(parse_checks(&checks)?)?;
            cfg.endo = Some(EndoSource::Enumerate);
            execute(&cfg)
        }
        Command::Ybe { common, export, variant } => {
            let cfg = common.config(checks_of(&[Check::Classify, Check::Brace, Check::Ybe]))?;
            if let (Some(path), Some(variant)) = (&export, variant) {
                export_solution(&cfg, variant, path)?;
            }
            execute(&cfg)
        }
        Command::HgReport { common } => {
            execute(&common.config(checks_of(&[Check::Classify, Check::Hg, Check::Equivariance]))?)
        }
        Command::Zoo { action: ZooAction::List } => {
            zoo_list();
            0
        }
    })
}

fn main() -> ExitCode {
    let code = dispatch(Cli::parse()).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        EXIT_INPUT
    });
    ExitCode::from(code as u8)
}
