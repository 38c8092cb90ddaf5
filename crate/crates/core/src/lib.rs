//! Directed (p,q)-edge dominating set toolkit.
//!
//! An arc `(u, v)` (p,q)-dominates itself, every arc on a directed path of
//! length at most `q` starting at `v`, and every arc on a directed path of
//! length at most `p` ending at `u`. This crate provides the verifier for that
//! relation together with exact, parameterized, approximate and
//! treewidth-based solvers, polynomial kernels, tournament-specific solvers and
//! instance generators.

pub mod approx;
pub mod domination;
pub mod engine;
pub mod error;
pub mod fpt;
pub mod gen;
pub mod graph;
pub mod kernel;
pub mod oracle;
pub mod tournament;
pub mod twdp;

pub use domination::{dominated_arcs, verify, CoverTable, Instance, Solution};
pub use error::{Error, Result};
pub use graph::{Digraph, Tournament, UndirectedGraph, UndirectedView};
