use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use symdeg::config::{validate_config, ProblemConfig};
use symdeg::degree::DegreeEngine;
use symdeg::report::{self, IsotropyCheck, Rendered};
use symdeg::spectral::Problem;
use symdeg::symmetry::{GammaSpec, Layout, SymmetryGroup};
use symdeg::Error;

#[derive(Parser)]
#[command(
    name = "symdeg",
    version,
    about = "Equivariant degrees for subharmonic solutions of reversible second-order systems"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum LayoutArg {
    GammaFirst,
    DmFirst,
}

#[derive(Args)]
struct GroupArgs {
    /// Problem configuration; supplies m, Γ, k and the layout.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Subharmonic order.
    #[arg(long)]
    m: Option<usize>,
    /// `trivial` or `dihedral:N`.
    #[arg(long, default_value = "trivial")]
    gamma: String,
    /// Dimension of the configuration space; defaults to N for `dihedral:N`, else 1.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = LayoutArg::GammaFirst)]
    layout: LayoutArg,
}

#[derive(Subcommand)]
enum Verb {
    /// Conjugacy classes of subgroups with normalizers and Weyl groups.
    GroupInfo(GroupArgs),
    /// Basic degrees of every irreducible representation.
    BasicDegrees(GroupArgs),
    /// Product of two generators of the Burnside ring, given by class name.
    BurnsideMul {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Existence degree and guaranteed subharmonic solutions.
    Existence {
        config: PathBuf,
        /// Seed for the random isotropy cross-check; skipped when absent.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Critical values and local bifurcation invariants.
    Bifurcation {
        config: PathBuf,
        /// Parameter window `lo,hi`; overrides the configuration.
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<(f64, f64)>,
    },
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(',').ok_or("expected lo,hi")?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo < hi {
        Ok((lo, hi))
    } else {
        Err(format!("window [{lo}, {hi}] is empty"))
    }
}

fn load(path: &PathBuf) -> symdeg::Result<ProblemConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    validate_config(&text)
}

fn group_of(args: &GroupArgs) -> symdeg::Result<SymmetryGroup> {
    if let Some(path) = &args.config {
        return load(path)?.symmetry_group();
    }
    let m = args.m.ok_or_else(|| Error::Config("either --config or --m is required".into()))?;
    let (spec, default_k) = match args.gamma.split_once(':') {
        None if args.gamma == "trivial" => (GammaSpec::Trivial, 1),
        Some(("dihedral", n)) => {
            let n: usize =
                n.parse().map_err(|_| Error::Config(format!("bad --gamma {}", args.gamma)))?;
            (GammaSpec::Dihedral(n), n)
        }
        _ => return Err(Error::Config(format!("unknown --gamma {}", args.gamma))),
    };
    let layout = match args.layout {
        LayoutArg::GammaFirst => Layout::GammaFirst,
        LayoutArg::DmFirst => Layout::DmFirst,
    };
    if m < 2 {
        return Err(Error::InvalidParameter(format!("m must be at least 2, got {m}")));
    }
    SymmetryGroup::new(&spec, args.k.unwrap_or(default_k), m, layout)
}

fn run(cli: &Cli) -> symdeg::Result<Rendered> {
    match &cli.verb {
        Verb::GroupInfo(g) => {
            let sym = group_of(g)?;
            let engine = DegreeEngine::for_group(&sym)?;
            Ok(report::group_info(&sym, &engine))
        }
        Verb::BasicDegrees(g) => {
            let sym = group_of(g)?;
            report::basic_degrees(&DegreeEngine::for_group(&sym)?)
        }
        Verb::BurnsideMul { group, left, right } => {
            let sym = group_of(group)?;
            let engine = DegreeEngine::for_group(&sym)?;
            let find = |name: &str| {
                engine.poset().find(name).ok_or_else(|| {
                    Error::InvalidParameter(format!("no subgroup class named {name}"))
                })
            };
            report::burnside_product(&engine, find(left)?, find(right)?)
        }
        Verb::Existence { config, seed } => {
            let problem = Problem::new(load(config)?)?;
            let r = problem.existence_degree()?;
            let iso = seed.map(|s| IsotropyCheck::run(&problem, &r, s)).transpose()?;
            Ok(report::existence(&problem, &r, iso.as_ref()))
        }
        Verb::Bifurcation { config, window } => {
            let problem = Problem::new(load(config)?)?;
            let r = problem.bifurcation_report(*window)?;
            Ok(report::bifurcation(&problem, &r))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            match cli.format {
                Format::Text => print!("{}", r.text),
                Format::Json => print!("{}", r.json_string()),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_malformed_input() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
