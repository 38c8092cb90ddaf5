use clap::{Args, ValueEnum};
use serde::Serialize;

use deds_core::engine::{solve, Engine, Report, SolveOptions};
use deds_core::gen::{gen_digraph, gen_tournament, small_corpus};
use deds_core::{Instance, Result};

use crate::{print_json, Status};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    /// Small random digraphs, (0,1) and (1,1) by branching.
    Fpt,
    /// Small random digraphs, (2,2) by the treewidth DP.
    Twdp,
    /// Random tournaments over every tournament route.
    Tournament,
    /// Larger random digraphs through both approximations.
    Approx,
}

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Report elapsed_ms as 0.
    #[arg(long)]
    deterministic: bool,
}

#[derive(Serialize)]
struct Line {
    suite: String,
    instance: String,
    #[serde(flatten)]
    report: Report,
}

/// Fixed recipes: (name, instance, engine, budget).
fn recipes(suite: Suite) -> Vec<(String, Instance, Engine, Option<usize>)> {
    let mut out = Vec::new();
    match suite {
        Suite::Fpt => {
            for (i, g) in small_corpus(20, 7, 14, 11).into_iter().enumerate() {
                for (p, q) in [(0, 1), (1, 1)] {
                    out.push((format!("corpus{i}"), Instance::new(g.clone(), p, q), Engine::Auto, None));
                }
            }
        }
        Suite::Twdp => {
            for (i, g) in small_corpus(20, 7, 10, 12).into_iter().enumerate() {
                out.push((format!("corpus{i}"), Instance::new(g, 2, 2), Engine::Twdp, None));
            }
        }
        Suite::Tournament => {
            for n in [4, 6, 8] {
                for (p, q) in [(0, 1), (1, 1), (0, 2), (3, 3)] {
                    let t = gen_tournament(n, n as u64).into_graph();
                    out.push((format!("t{n}"), Instance::new(t, p, q), Engine::Tournament, None));
                }
            }
        }
        Suite::Approx => {
            for n in [50, 100, 200] {
                for (p, q, e) in [(0, 1, Engine::Approx01), (1, 1, Engine::Approx11)] {
                    let g = gen_digraph(n, 0.05, n as u64);
                    out.push((format!("d{n}"), Instance::new(g, p, q), e, None));
                }
            }
        }
    }
    out
}

pub fn run(args: BenchArgs) -> Result<Status> {
    let suite = format!("{:?}", args.suite).to_lowercase();
    for (instance, inst, engine, k) in recipes(args.suite) {
        let opts = SolveOptions { k, deterministic: args.deterministic, ..SolveOptions::new(engine) };
        let report = solve(&inst, &opts)?;
        print_json(&Line { suite: suite.clone(), instance, report });
    }
    Ok(Status::Yes)
}
