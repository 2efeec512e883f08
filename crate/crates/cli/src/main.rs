//! `cellulo`: batch front end for affine Weyl group, canonical basis and cell computations.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cellulo_core::cells::CellSide;
use cellulo_core::{parse_elt, Config, RootDatum, Weight, WeylGroup};

#[derive(Parser, Debug)]
#[command(name = "cellulo", version, about = "Cells and canonical bases of affine Weyl groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cell partition of a truncated ball.
    Cells {
        #[command(flatten)]
        datum: DatumArgs,
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, default_value = "antispherical")]
        side: String,
        /// Also match complete two-sided cells with complete antispherical cells.
        #[arg(long)]
        bijection: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Kazhdan-Lusztig polynomials `h_{x,w}` for all `w` up to a length.
    Klpoly {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        max_length: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Canonical basis of the antispherical module up to a length.
    AsphBasis {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        max_length: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Alcove coordinates of weights or of elements acting on 0.
    Alcove {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        ell: Option<i64>,
        /// Comma-separated weight coordinates.
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["elt", "max_length"])]
        weight: Option<String>,
        /// Element in text form, e.g. `s0*s1`.
        #[arg(long, conflicts_with = "max_length")]
        elt: Option<String>,
        /// Every element of the ball of this radius.
        #[arg(long)]
        max_length: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Weight cell labels for a product of general linear groups.
    GlCells {
        /// Block sizes, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        max_terms: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Number of nilpotent orbits.
    OrbitCount {
        #[command(flatten)]
        datum: DatumArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cross-validation suite; exits 1 on any mismatch.
    Check {
        /// Radius used for the cell checks.
        #[arg(long, default_value_t = 10)]
        radius: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct DatumArgs {
    /// Built-in datum: `A1`, `A2`, `B2`, `G2`, products joined by `|`, or `GL:2,3`.
    #[arg(long, conflicts_with = "datum_file")]
    datum: Option<String>,
    /// JSON datum description.
    #[arg(long)]
    datum_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConfigArgs {
    /// JSON file with `ell`, `ball_radius`, `margin`, `omega_bound`; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Defaults to the Coxeter number plus one.
    #[arg(long)]
    ell: Option<i64>,
    #[arg(long, alias = "max-length")]
    radius: Option<usize>,
    #[arg(long)]
    margin: Option<usize>,
    #[arg(long)]
    omega_bound: Option<usize>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table1,
    Text,
}

/// A fully validated invocation.
pub enum Plan {
    Cells { datum: RootDatum, config: Config, side: CellSide, bijection: bool },
    Klpoly { datum: RootDatum, max_length: usize },
    AsphBasis { datum: RootDatum, max_length: usize },
    Alcove { datum: RootDatum, ell: i64, target: AlcoveTarget },
    GlCells { a: Vec<usize>, max_terms: usize },
    OrbitCount { datum: RootDatum },
    Check { radius: usize },
}

pub enum AlcoveTarget {
    Weight(Weight<i64>),
    Elt(String),
    Ball(usize),
}

pub struct Output {
    pub path: Option<PathBuf>,
    pub format: Format,
}

fn load_datum(args: &DatumArgs) -> Result<RootDatum, String> {
    match (&args.datum, &args.datum_file) {
        (Some(sel), None) => RootDatum::from_selector(sel).map_err(|e| e.to_string()),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            RootDatum::from_json(&text).map_err(|e| e.to_string())
        }
        _ => Err("exactly one of --datum and --datum-file is required".into()),
    }
}

fn default_ell(datum: &RootDatum) -> i64 {
    i64::from(datum.coxeter_number()) + 1
}

fn load_config(args: &ConfigArgs, datum: &RootDatum) -> Result<Config, String> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => Config::new(default_ell(datum), 0),
    };
    if let Some(ell) = args.ell {
        cfg.ell = ell;
    }
    match (args.radius, &args.config) {
        (Some(r), _) => cfg.ball_radius = r,
        (None, None) => return Err("--radius is required".into()),
        _ => {}
    }
    if let Some(m) = args.margin {
        cfg.margin = m;
    }
    if let Some(b) = args.omega_bound {
        cfg.omega_bound = b;
    }
    cfg.validate(datum).map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn output(args: &OutputArgs, default: Format, allowed: &[Format]) -> Result<Output, String> {
    let format = args.format.unwrap_or(default);
    if !allowed.contains(&format) {
        return Err(format!("format {format:?} is not available for this command"));
    }
    Ok(Output {
        path: args.out.clone(),
        format,
    })
}

fn parse_weight(s: &str, datum: &RootDatum) -> Result<Weight<i64>, String> {
    let coords = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| format!("bad weight `{s}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != datum.rank() {
        return Err(format!("weight `{s}` has {} coordinates, expected {}", coords.len(), datum.rank()));
    }
    Ok(Weight(coords))
}

fn validate(cmd: Command) -> Result<(Plan, Output), String> {
    use Format::*;
    Ok(match cmd {
        Command::Cells { datum, config, side, bijection, output: out } => {
            let datum = load_datum(&datum)?;
            let config = load_config(&config, &datum)?;
            let side: CellSide = side.parse().map_err(|e: cellulo_core::Error| e.to_string())?;
            (Plan::Cells { datum, config, side, bijection }, output(&out, Json, &[Json, Csv])?)
        }
        Command::Klpoly { datum, max_length, output: out } => {
            let datum = load_datum(&datum)?;
            (Plan::Klpoly { datum, max_length }, output(&out, Json, &[Json, Csv])?)
        }
        Command::AsphBasis { datum, max_length, output: out } => {
            let datum = load_datum(&datum)?;
            (Plan::AsphBasis { datum, max_length }, output(&out, Json, &[Json, Csv])?)
        }
        Command::Alcove { datum, ell, weight, elt, max_length, output: out } => {
            let datum = load_datum(&datum)?;
            let ell = ell.unwrap_or_else(|| default_ell(&datum));
            Config::new(ell, 0)
                .validate(&datum).map_err(|e| e.to_string())?;
            let target = match (weight, elt, max_length) {
                (Some(w), None, None) => AlcoveTarget::Weight(parse_weight(&w, &datum)?),
                (None, Some(e), None) => {
                    let g = WeylGroup::new(datum.clone()).map_err(|e| e.to_string())?;
                    parse_elt(&g, &e).map_err(|e| e.to_string())?;
                    AlcoveTarget::Elt(e)
                }
                (None, None, Some(r)) => AlcoveTarget::Ball(r),
                _ => return Err("one of --weight, --elt, --max-length is required".into()),
            };
            (Plan::Alcove { datum, ell, target }, output(&out, Json, &[Json, Csv])?)
        }
        Command::GlCells { a, max_terms, output: out } => {
            if a.is_empty() || a.contains(&0) {
                return Err("--a must list positive block sizes".into());
            }
            (Plan::GlCells { a, max_terms }, output(&out, Table1, &[Json, Csv, Table1])?)
        }
        Command::OrbitCount { datum, output: out } => {
            let datum = load_datum(&datum)?;
            (Plan::OrbitCount { datum }, output(&out, Text, &[Json, Text])?)
        }
        Command::Check { radius, output: out } => (Plan::Check { radius }, output(&out, Json, &[Json])?),
    })
}

fn configure_threads() -> Result<(), String> {
    if let Ok(v) = std::env::var("CELLULO_THREADS") {
        let n: usize = v.parse().map_err(|_| format!("CELLULO_THREADS=`{v}` is not a thread count"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let validated = configure_threads().and_then(|()| validate(cli.command));
    let (plan, out) = match validated {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match commands::run(plan, &out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
