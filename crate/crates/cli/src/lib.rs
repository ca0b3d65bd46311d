//! Command-line front end for the garside-wb workbench.
//!
//! Every command produces a JSON [`Report`] on standard output, or DOT text
//! when `--out dot` is given. Exit codes: 0 pass, 1 property violation,
//! 2 usage or input error, 3 window truncation.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use garside_wb::{Error, Report};

mod cache;
mod commands;

pub use cache::{cache_dir, load_or_build_ball};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TRUNCATED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "garside-wb", version, about = "Minimal cuts, cyclic orders, Coxeter windows and Garside normal forms")]
pub struct Cli {
    /// Directory for cached Coxeter ball tables.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimal A–B vertex cuts of a graph.
    #[command(subcommand)]
    Mincut(MincutCmd),
    /// Partial cyclic orders, the family C_P and admissibility.
    #[command(subcommand)]
    Order(OrderCmd),
    /// Coxeter group balls, gates and windows.
    #[command(subcommand)]
    Coxeter(CoxeterCmd),
    /// Normal forms and the Bestvina metric on Z^n and braid groups.
    #[command(subcommand)]
    Garside(GarsideCmd),
    /// Build a finite complex window.
    #[command(subcommand)]
    Instance(InstanceCmd),
    /// Experiments on Coxeter shadows.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
    /// Report utilities.
    #[command(subcommand)]
    Report(ReportCmd),
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Graph or diagram JSON file.
    #[arg(long)]
    pub graph: PathBuf,
    /// Vertex set A (comma separated ids).
    #[arg(long = "A")]
    pub a: String,
    /// Vertex set B.
    #[arg(long = "B")]
    pub b: String,
}

#[derive(Subcommand, Debug)]
pub enum MincutCmd {
    /// Sorted minimal cuts and the Hasse diagram of <.
    Enum(GraphArgs),
    /// Meet/join, squeeze and separation lemmas on the family.
    LatticeCheck(GraphArgs),
}

#[derive(Subcommand, Debug)]
pub enum OrderCmd {
    /// The family C_P for a path P.
    Cp {
        #[arg(long)]
        diagram: PathBuf,
        /// Path vertices, e.g. "a,p,b".
        #[arg(long)]
        path: String,
    },
    /// Admissibility of an explicit family (--in) or of C_P's families.
    Admissible {
        /// JSON with "graph", "family" and "less".
        #[arg(long = "in", conflicts_with_all = ["diagram", "path"])]
        input: Option<PathBuf>,
        #[arg(long, requires = "path")]
        diagram: Option<PathBuf>,
        #[arg(long, requires = "diagram")]
        path: Option<String>,
    },
    /// Partial cyclic order axioms for a ternary relation.
    CyclicCheck {
        /// JSON with "elements" and "triples".
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum CoxeterCmd {
    /// Enumerate (and cache) the ball of radius R in the Cayley graph.
    Ball {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        radius: usize,
    },
    /// Gate of x in a parabolic coset.
    Gate {
        #[arg(long)]
        diagram: PathBuf,
        /// Element as a word of generator ids.
        #[arg(long)]
        x: String,
        /// Coset "WORD;SET", e.g. "s t;s,u".
        #[arg(long)]
        coset: String,
    },
    /// Relative Coxeter complex window.
    Window {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        radius: usize,
        /// Vertex types (default: all generators).
        #[arg(long)]
        types: Option<String>,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        out: OutFormat,
    },
    /// Spherical subsets of the generators.
    Spherical {
        #[arg(long)]
        diagram: PathBuf,
        /// Test one subset instead of listing all.
        #[arg(long)]
        subset: Option<String>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct InstanceArg {
    /// "zn:N" or "braid:N".
    #[arg(long)]
    pub instance: String,
}

#[derive(Copy, Clone, Debug, ValueEnum, PartialEq, Eq)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Subcommand, Debug)]
pub enum GarsideCmd {
    /// Certified normal form from --from to --to (or from e to --word).
    Nf {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        #[arg(long, conflicts_with_all = ["from", "to"])]
        word: Option<String>,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
    },
    /// B-geodesic between two vertices of X.
    Bgeo {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
    },
    /// Bestvina distance and the graph distance in X.
    Dist {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Sampled normal-form and curvature checks.
    Check {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        /// Vertex cap for the BFS distance oracle.
        #[arg(long, default_value_t = 2000)]
        bfs_cap: usize,
    },
    /// Local B-convexity of a finite vertex set.
    Convex {
        #[command(flatten)]
        inst: InstanceArg,
        /// Vertices separated by ';'.
        #[arg(long)]
        members: String,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        /// Sampled member pairs for the global geodesic check.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum, PartialEq, Eq)]
pub enum OutFormat {
    Json,
    Dot,
}

#[derive(Copy, Clone, Debug, ValueEnum, PartialEq, Eq)]
pub enum InstanceKind {
    Zn,
    Braid,
    Coxeter,
    MincutShadow,
}

#[derive(Subcommand, Debug)]
pub enum InstanceCmd {
    Build {
        #[arg(long, value_enum)]
        kind: InstanceKind,
        /// Rank for zn and braid.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        diagram: Option<PathBuf>,
        #[arg(long)]
        path: Option<String>,
        #[arg(long)]
        types: Option<String>,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        out: OutFormat,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExperimentCmd {
    /// Alternating s,t 4-cycles in a Coxeter complex and their centers.
    FourCycle {
        /// Diagram JSON.
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        s: Option<String>,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        subdiagram: Option<String>,
        /// Window radius; defaults to the longest element for finite groups.
        #[arg(long)]
        radius: Option<usize>,
        /// Required when the window exceeds the exhaustive limit.
        #[arg(long)]
        seed: Option<u64>,
        /// Replay a single case.
        #[arg(long)]
        case: Option<usize>,
        /// Strong variant with Mincut(A, B).
        #[arg(long, requires_all = ["a", "b"])]
        strong: bool,
        #[arg(long = "A")]
        a: Option<String>,
        #[arg(long = "B")]
        b: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ReportCmd {
    /// Re-run the command recorded in a report and compare.
    Verify { file: PathBuf },
}

/// What a command produced.
pub enum Output {
    Report(Box<Report>),
    Text(String),
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Truncated(_) | Error::TooLarge { .. } => EXIT_TRUNCATED,
            Error::Internal(_) | Error::NotALattice(_) => EXIT_VIOLATION,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Result of one invocation.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses argv (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let args: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    match commands::dispatch(&cli, &args) {
        Ok(Output::Report(mut r)) => {
            r.timing.elapsed_ms = start.elapsed().as_millis() as u64;
            let code = if r.passed() { EXIT_OK } else { EXIT_VIOLATION };
            let mut stdout = serde_json::to_string_pretty(&r).expect("reports serialize");
            stdout.push('\n');
            let stderr = r
                .verdicts
                .iter()
                .filter(|v| !v.pass)
                .map(|v| format!("violation: {} {}\n", v.name, v.detail))
                .collect();
            Outcome { code, stdout, stderr }
        }
        Ok(Output::Text(t)) => Outcome {
            code: EXIT_OK,
            stdout: t,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}
