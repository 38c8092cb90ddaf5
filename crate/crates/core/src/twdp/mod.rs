//! Exact solving over tree decompositions of the underlying undirected graph.

mod decomposition;
mod dp;
mod nice;

pub use decomposition::{elimination_td, heuristic_td, TreeDecomposition};
pub use dp::{signature_bound, solve_twdp, solve_twdp_with_stats, TwdpStats, DEFAULT_MEMORY_LIMIT};
pub use nice::{make_nice, NiceNode, NiceTreeDecomposition, NodeKind};
