//! Branching algorithms parameterized by solution size: `O*(9^k)` for (1,1) and
//! `O*(2^k)` for (0,1).

mod branch01;
mod branch11;

pub use branch01::{solve_01, solve_01_with_stats};
pub use branch11::{solve_11, solve_11_with_stats};

use crate::graph::ArcId;

/// Search-tree counters. A node is counted only while its measure is
/// non-negative; a leaf is a counted node without counted children.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub nodes: u64,
    pub leaves: u64,
    pub max_depth: usize,
}

/// Keeps the smaller candidate, comparing sorted arc lists on equal size.
fn keep_best(best: &mut Option<Vec<ArcId>>, mut cand: Vec<ArcId>) {
    cand.sort_unstable();
    cand.dedup();
    let better = match best {
        None => true,
        Some(b) => (cand.len(), &cand) < (b.len(), b),
    };
    if better {
        *best = Some(cand);
    }
}
