//! De Morgan valued cylindric algebras and the many-valued first-order logic
//! they interpret, at finite scale.
//!
//! The layers, bottom up:
//!
//! * [`demorgan`]: finite De Morgan algebras `M` (validation, order, sups).
//! * [`setalg`]: cylindric set algebras over `U^d`.
//! * [`mvalued`]: the construction `M(B)` of partition-valued sets.
//! * [`laws`]: brute-force checkers for the axioms and structure theorems.
//! * [`syntax`], [`truth`], [`semantics`], [`proof`]: the logic.
//!
//! Enumeration-heavy drivers take an [`Exec`] and run on rayon when the
//! `parallel` feature is on.

pub mod demorgan;
pub mod exec;
pub mod laws;
pub mod mvalued;
pub mod proof;
pub mod semantics;
pub mod setalg;
pub mod syntax;
pub mod truth;

pub use demorgan::{AlgebraError, DeMorganAlgebra, ElemId};
pub use exec::Exec;
pub use mvalued::{FullMAlgebra, MAlgebra, MElement, MError, MValuedSet};
pub use setalg::{CylindricAlgebra, PointSet, SetError, Space};
pub use syntax::{Formula, Signature};

/// Seed used by every randomized driver unless overridden.
pub const DEFAULT_SEED: u64 = 0xD00D;
