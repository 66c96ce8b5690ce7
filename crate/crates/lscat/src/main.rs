//! Command-line front end for `lscat-core`.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lscat_core::DEFAULT_CAPACITY;
use serde_json::json;

mod commands;
mod input;
mod output;

use output::{Report, SCHEMA_VERSION};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Core(#[from] lscat_core::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Core(lscat_core::Error::Capacity { .. }) => "capacity",
            CliError::Core(_) => "domain",
        }
    }
}

#[derive(Parser)]
#[command(name = "lscat", version, about = "Exact checks for A-infinity polytopes, bar models and LS-category bounds")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Args, Clone, Copy)]
pub struct Global {
    /// Largest size parameter to check
    #[arg(long, global = true, value_parser = positive)]
    pub nmax: Option<usize>,
    /// Random samples per case
    #[arg(long, global = true, value_parser = positive)]
    pub samples: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Largest number of stored matrix or table entries
    #[arg(long, global = true, value_parser = positive, default_value_t = DEFAULT_CAPACITY)]
    pub capacity: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Associahedra, multiplihedra and simplices
    #[command(subcommand)]
    Polytope(PolytopeCmd),
    /// A-infinity forms and maps on finite monoids
    #[command(subcommand)]
    Ainfty(AinftyCmd),
    /// Bar models of finite groups
    #[command(subcommand)]
    Bar(BarCmd),
    /// Graded algebras and cohomological bounds
    #[command(subcommand)]
    Ring(RingCmd),
    /// Real projective spaces
    #[command(subcommand)]
    Rp(RpCmd),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolytopeArg {
    Simplex,
    SimplexPrime,
    Assoc,
    AssocPrime,
    Multipl,
    MultiplPrime,
}

#[derive(Args)]
pub struct PolytopeSel {
    #[arg(long, value_enum)]
    pub polytope: PolytopeArg,
    #[arg(long)]
    pub n: usize,
}

#[derive(Subcommand)]
pub enum PolytopeCmd {
    /// Membership, boundary and chart image of a point
    Check {
        #[command(flatten)]
        which: PolytopeSel,
        /// Coordinates as `0,1/2` or a JSON array of "p/q" strings
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Verify the degeneracy/face identity tables
    Identities,
    /// Sample points, optionally on a boundary cell
    Sample {
        #[command(flatten)]
        which: PolytopeSel,
        /// Boundary cell as a JSON record, e.g. {"face":"assoc","k":1,"r":2,"s":2}
        #[arg(long)]
        cell: Option<String>,
    },
    /// Boundary cells containing a point, with their preimages
    Locate {
        #[command(flatten)]
        which: PolytopeSel,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
}

#[derive(Subcommand)]
pub enum AinftyCmd {
    /// Validate the iterated-product form on a monoid table
    ValidateForm {
        #[arg(long)]
        monoid: PathBuf,
    },
    /// Validate the form map induced by a map of monoid tables
    ValidateMap {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// Image of each source element, e.g. `0,1,0,1`
        #[arg(long)]
        images: String,
        /// Also check the unit in the last position
        #[arg(long)]
        include_last_unit: bool,
    },
}

#[derive(Subcommand)]
pub enum BarCmd {
    /// Nondegenerate cell counts of the bar models
    Cells {
        #[arg(long)]
        group: PathBuf,
    },
    /// Group homology (or cohomology) via the bar complex
    Homology {
        #[arg(long)]
        group: PathBuf,
        /// `trivial`, `ideal`, or a module file
        #[arg(long, default_value = "trivial")]
        coeff: String,
        /// Coefficient ring: `Z` or `F<p>`
        #[arg(long, default_value = "Z")]
        over: String,
        /// Use the unnormalized bar complex
        #[arg(long)]
        unnormalized: bool,
        /// Compute cohomology instead of homology
        #[arg(long)]
        cohomology: bool,
    },
    /// Cohomology ring over F_p with cup products
    CohomologyRing {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        prime: u64,
    },
    /// Decide whether the n-th Berstein-Svarc power vanishes
    BersteinSvarc {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, value_parser = positive)]
        n: usize,
    },
    /// Homology of the (n+1)-fold join model
    JoinHomology {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
pub enum RingCmd {
    /// Check unit, homogeneity, associativity and graded commutativity
    Validate {
        #[arg(long)]
        algebra: PathBuf,
    },
    Cuplength {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Zero-divisor cup-length and the resulting bound on tc
    TcBound {
        #[arg(long)]
        algebra: PathBuf,
        /// Known upper bound for tc
        #[arg(long)]
        upper: Option<usize>,
    },
    /// Bounds on cat and tc
    Report {
        #[arg(long)]
        algebra: PathBuf,
        /// Dimension of the space, an upper bound for cat
        #[arg(long)]
        dim: usize,
        /// Known upper bound for tc
        #[arg(long)]
        tc_upper: Option<usize>,
    },
}

#[derive(Subcommand)]
pub enum RpCmd {
    /// tc(RP^n) from the immersion dimension
    Tc {
        #[arg(long, value_parser = positive)]
        n: usize,
        #[arg(long)]
        imm: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Polytope(c) => match c {
                PolytopeCmd::Check { .. } => "polytope check",
                PolytopeCmd::Identities => "polytope identities",
                PolytopeCmd::Sample { .. } => "polytope sample",
                PolytopeCmd::Locate { .. } => "polytope locate",
            },
            Command::Ainfty(c) => match c {
                AinftyCmd::ValidateForm { .. } => "ainfty validate-form",
                AinftyCmd::ValidateMap { .. } => "ainfty validate-map",
            },
            Command::Bar(c) => match c {
                BarCmd::Cells { .. } => "bar cells",
                BarCmd::Homology { .. } => "bar homology",
                BarCmd::CohomologyRing { .. } => "bar cohomology-ring",
                BarCmd::BersteinSvarc { .. } => "bar berstein-svarc",
                BarCmd::JoinHomology { .. } => "bar join-homology",
            },
            Command::Ring(c) => match c {
                RingCmd::Validate { .. } => "ring validate",
                RingCmd::Cuplength { .. } => "ring cuplength",
                RingCmd::TcBound { .. } => "ring tc-bound",
                RingCmd::Report { .. } => "ring report",
            },
            Command::Rp(RpCmd::Tc { .. }) => "rp tc",
        }
    }
}

fn dispatch(command: &Command, g: &Global) -> Result<Report, CliError> {
    match command {
        Command::Polytope(c) => commands::polytope(c, g),
        Command::Ainfty(c) => commands::ainfty(c, g),
        Command::Bar(c) => commands::bar(c, g),
        Command::Ring(c) => commands::ring(c, g),
        Command::Rp(c) => commands::rp(c),
    }
}

/// Writes `text` to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global;
    let name = cli.command.name();
    let config = json!({
        "nmax": g.nmax,
        "samples": g.samples,
        "seed": g.seed,
        "capacity": g.capacity,
    });
    match dispatch(&cli.command, &g) {
        Ok(report) => {
            let text = match g.format {
                Format::Human => report.lines.join("\n"),
                Format::Structured => {
                    let doc = json!({
                        "schema_version": SCHEMA_VERSION,
                        "command": name,
                        "config": config,
                        "status": if report.passed { "pass" } else { "fail" },
                        "result": report.result,
                    });
                    serde_json::to_string_pretty(&doc).expect("json values serialize")
                }
            };
            emit(&text);
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("lscat {name}: {} error: {e}", e.kind());
            if g.format == Format::Structured {
                let doc = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": name,
                    "config": config,
                    "status": "error",
                    "error": {"kind": e.kind(), "message": e.to_string()},
                });
                emit(&serde_json::to_string_pretty(&doc).expect("json values serialize"));
            }
            ExitCode::from(2)
        }
    }
}
