//! Finite Boole-De Morgan algebras, one-variable types over them, and a
//! decision procedure for the theory of existentially closed Boole-De Morgan
//! and De Morgan algebras.
//!
//! A finite algebra is a powerset of atoms with an involution `sigma` on the
//! atoms; embeddings are [`refinement::AtomRefinement`]s. The
//! [`solver`] module classifies the possible new elements over a finite algebra
//! by sigma-consistent triples and builds witnesses for them, which is all
//! [`solver::decide`] needs.

pub mod algebra;
pub mod cli;
pub mod logic;
pub mod model;
pub mod oracle;
pub mod refinement;
pub mod solver;
pub mod text;
