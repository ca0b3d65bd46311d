//! Concrete providers and the complex-level experiments.

pub mod braid;
pub mod zn;

pub use braid::{Braid, BraidProvider};
pub use zn::ZnProvider;
pub mod coxeter_shadow;
pub mod iso;

pub use coxeter_shadow::{coxeter_shadow_provider, CoxeterShadow};
pub use iso::{iso_check, IsoOutcome};
pub mod mincut_shadow;

pub use mincut_shadow::{analyze_shadow, mincut_complex_shadow, MincutShadow, ShadowReport};
pub mod four_cycle;

pub use four_cycle::{four_cycle_search, replay_case, strong_four_cycle_search, FourCycleReport, StrongReport};
pub mod sampling;
