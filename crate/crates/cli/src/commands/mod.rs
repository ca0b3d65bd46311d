mod coxeter;
mod experiment;
mod garside;
mod instance;
mod mincut;
mod order;
mod report;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use garside_wb::garside::complex::FiniteComplex;
use garside_wb::report::input_hash;
use garside_wb::{CoxeterDiagram, Report};

use crate::{Cli, Command, Failure, Output};

/// Per-invocation context: the raw arguments (echoed into reports) and the
/// resolved cache directory.
pub struct Ctx {
    pub args: Vec<String>,
    pub cache: Option<PathBuf>,
}

impl Ctx {
    /// A report whose input hash covers the command name and the canonical
    /// forms of its inputs.
    pub fn report(&self, command: &str, parts: &[String], seed: Option<u64>) -> Report {
        let mut all = vec![command.to_string()];
        all.extend(parts.iter().cloned());
        Report::new(command, self.args.clone(), input_hash(&all), seed)
    }
}

pub fn dispatch(cli: &Cli, args: &[String]) -> Result<Output, Failure> {
    let ctx = Ctx {
        args: args.to_vec(),
        cache: crate::cache_dir(cli.cache_dir.as_deref()),
    };
    match &cli.command {
        Command::Mincut(c) => mincut::run(&ctx, c),
        Command::Order(c) => order::run(&ctx, c),
        Command::Coxeter(c) => coxeter::run(&ctx, c),
        Command::Garside(c) => garside::run(&ctx, c),
        Command::Instance(c) => instance::run(&ctx, c),
        Command::Experiment(c) => experiment::run(&ctx, c),
        Command::Report(c) => report::run(&ctx, c),
    }
}

pub fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

pub fn read_diagram(path: &Path) -> Result<CoxeterDiagram, Failure> {
    let text = read_text(path)?;
    CoxeterDiagram::from_json(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

pub fn ok(r: Report) -> Result<Output, Failure> {
    Ok(Output::Report(Box::new(r)))
}

pub fn to_value<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

pub const DOT_LIMIT: usize = 5000;

/// Graphviz export: one node per vertex labelled with its name and type,
/// boundary vertices dashed.
pub fn dot(c: &FiniteComplex) -> Result<String, Failure> {
    if c.len() > DOT_LIMIT {
        return Err(garside_wb::Error::TooLarge {
            what: "complex for DOT export",
            size: c.len(),
            limit: DOT_LIMIT,
        }
        .into());
    }
    let mut s = String::from("graph complex {\n  node [shape=circle, fontsize=10];\n");
    for v in 0..c.len() {
        let style = if c.boundary.get(v).copied().unwrap_or(false) { ", style=dashed" } else { "" };
        let ty = c.types.get(v).copied().unwrap_or(0);
        writeln!(s, "  v{v} [label={:?}, colorscheme=set19, color={}{style}];", c.names[v], ty % 9 + 1).ok();
    }
    for (u, v) in c.edges() {
        writeln!(s, "  v{u} -- v{v};").ok();
    }
    s.push_str("}\n");
    Ok(s)
}
