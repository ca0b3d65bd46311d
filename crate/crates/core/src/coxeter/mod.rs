//! Coxeter groups: exact geometric representation, Cayley balls, coset
//! windows, gates and Davis cells.

pub mod ball;
pub mod group;
pub mod scalar;
pub mod window;

pub use ball::{BallTable, Coset};
pub use group::{CoxeterGroup, GroupElement, ParabolicCoset, Side};
pub use scalar::ExactScalar;
pub use window::{CosetWindow, DavisWindow, OrientedCell};
