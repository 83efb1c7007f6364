//! LTL satisfiability by a one-pass tree-shaped tableau.
//!
//! [`engine::solve`] decides a [`formula::Formula`]; satisfiable verdicts
//! carry an [`extraction::LassoModel`] that [`oracle::eval_lasso`] can check
//! independently.

pub mod bench;
pub mod cli;
pub mod engine;
pub mod extraction;
pub mod formula;
pub mod oracle;
