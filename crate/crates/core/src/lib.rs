//! Computational workbench for Coxeter diagrams, mincut lattices, partial
//! cyclic orders and Garside-like hat structures.

pub mod coxeter;
pub mod diagram;
pub mod error;
pub mod garside;
pub mod instances;
pub mod mincut;
pub mod order;
pub mod report;

pub use diagram::{CoxeterDiagram, Graph, Label, PathP, VSet};
pub use error::{Error, Result};
pub use mincut::{Cmp, Cut, MincutFamily};
pub use order::{CPFamily, FinitePoset, PartialCyclicOrder};
pub use report::{Report, Verdict};
