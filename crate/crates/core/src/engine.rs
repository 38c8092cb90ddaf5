//! One entry point over every solver, with a serializable report.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::approx::{approx_01, approx_11, ApproxReport};
use crate::domination::{verify, Instance, Solution};
use crate::error::{Error, Result};
use crate::fpt::{solve_01, solve_11};
use crate::graph::{ArcId, Tournament};
use crate::oracle::exact_min_deds;
use crate::tournament::{classify, solve_tournament_via, Route};
use crate::twdp::{heuristic_td, make_nice, solve_twdp, TreeDecomposition};

/// Instances up to this many arcs go to the oracle under `auto`.
pub const AUTO_ORACLE_ARCS: usize = 20;
/// `auto` stops the (1,1) branching when the approximation exceeds this size.
pub const AUTO_FPT11_LIMIT: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Auto,
    Oracle,
    Fpt01,
    Fpt11,
    Approx01,
    Approx11,
    Twdp,
    Tournament,
}

impl Engine {
    pub const ALL: [Engine; 8] = [
        Engine::Auto,
        Engine::Oracle,
        Engine::Fpt01,
        Engine::Fpt11,
        Engine::Approx01,
        Engine::Approx11,
        Engine::Twdp,
        Engine::Tournament,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Auto => "auto",
            Engine::Oracle => "oracle",
            Engine::Fpt01 => "fpt01",
            Engine::Fpt11 => "fpt11",
            Engine::Approx01 => "approx01",
            Engine::Approx11 => "approx11",
            Engine::Twdp => "twdp",
            Engine::Tournament => "tournament",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::WrongEngine(format!("unknown engine `{s}`")))
    }
}

#[derive(Clone, Debug, Default)]
pub enum TdSource {
    #[default]
    Heuristic,
    Given(TreeDecomposition),
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub engine: Engine,
    /// Budget; required by the branching engines, an upper limit for the rest.
    pub k: Option<usize>,
    pub td: TdSource,
    /// Overrides `classify` for the tournament engine.
    pub route: Option<Route>,
    /// Report `elapsed_ms = 0` so that output is byte-identical across runs.
    pub deterministic: bool,
    /// Echoed in the report when the input came from a seeded generator.
    pub seed: Option<u64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { engine: Engine::Auto, k: None, td: TdSource::Heuristic, route: None, deterministic: false, seed: None }
    }
}

impl SolveOptions {
    pub fn new(engine: Engine) -> Self {
        SolveOptions { engine, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub engine: String,
    pub pq: [usize; 2],
    /// `None` when no solution within the budget exists.
    pub size: Option<usize>,
    pub arcs: Vec<ArcId>,
    pub feasible: bool,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<ApproxReport>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Runs the chosen engine and re-verifies whatever it returns.
pub fn solve(inst: &Instance, opts: &SolveOptions) -> Result<Report> {
    let start = Instant::now();
    let (sol, approx) = dispatch(inst, opts)?;
    let sol = match (sol, opts.k) {
        (Some(s), Some(k)) if s.size() > k && !matches!(opts.engine, Engine::Approx01 | Engine::Approx11) => None,
        (s, _) => s,
    };
    if let Some(s) = &sol {
        if !verify(inst, &s.arcs)? {
            return Err(Error::MalformedSolution(format!("engine {} returned a set that does not dominate", s.engine)));
        }
    }
    let elapsed_ms = if opts.deterministic { 0.0 } else { start.elapsed().as_secs_f64() * 1e3 };
    let engine = sol.as_ref().map_or_else(|| opts.engine.name().to_string(), |s| s.engine.clone());
    Ok(Report {
        engine,
        pq: [inst.p, inst.q],
        size: sol.as_ref().map(Solution::size),
        feasible: sol.is_some(),
        arcs: sol.map(|s| s.arcs).unwrap_or_default(),
        elapsed_ms,
        seed: opts.seed,
        approx,
    })
}

fn need_pq(inst: &Instance, engine: Engine, pq: (usize, usize)) -> Result<()> {
    if (inst.p, inst.q) != pq {
        return Err(Error::WrongEngine(format!(
            "{engine} solves ({}, {}), got ({}, {})",
            pq.0, pq.1, inst.p, inst.q
        )));
    }
    if inst.has_optional() {
        return Err(Error::WrongEngine(format!("{engine} does not support optional arcs")));
    }
    Ok(())
}

fn need_k(opts: &SolveOptions) -> Result<usize> {
    opts.k.ok_or_else(|| Error::Precondition(format!("engine {} needs a budget k", opts.engine)))
}

type Outcome = (Option<Solution>, Option<ApproxReport>);

fn dispatch(inst: &Instance, opts: &SolveOptions) -> Result<Outcome> {
    let g = &inst.graph;
    let exact = |s: Option<Solution>| Ok((s, None));
    match opts.engine {
        Engine::Oracle => exact(exact_min_deds(inst, opts.k.unwrap_or(g.m()))?),
        Engine::Fpt01 => {
            need_pq(inst, Engine::Fpt01, (0, 1))?;
            exact(solve_01(g, need_k(opts)?))
        }
        Engine::Fpt11 => {
            need_pq(inst, Engine::Fpt11, (1, 1))?;
            exact(solve_11(g, need_k(opts)?))
        }
        Engine::Approx01 => {
            need_pq(inst, Engine::Approx01, (0, 1))?;
            let (s, r) = approx_01(g);
            Ok((Some(s), Some(r)))
        }
        Engine::Approx11 => {
            need_pq(inst, Engine::Approx11, (1, 1))?;
            let (s, r) = approx_11(g);
            Ok((Some(s), Some(r)))
        }
        Engine::Twdp => {
            let td = match &opts.td {
                TdSource::Heuristic => heuristic_td(g),
                TdSource::Given(td) => td.clone(),
            };
            let ntd = make_nice(&td, &g.underlying().to_graph())?;
            exact(Some(solve_twdp(inst, &ntd)?.1))
        }
        Engine::Tournament => {
            if inst.has_optional() {
                return Err(Error::WrongEngine("tournament does not support optional arcs".into()));
            }
            let t = Tournament::new(g.clone())?;
            let route = opts.route.unwrap_or_else(|| classify(inst.p, inst.q));
            exact(Some(solve_tournament_via(&t, inst.p, inst.q, route)?))
        }
        Engine::Auto => auto(inst, opts),
    }
}

/// Tournaments go to their classifier except at (1,1); (0,1) and (1,1) to iterated branching
/// bounded by the approximation; small inputs to the oracle; the rest to the
/// treewidth DP over a heuristic decomposition.
fn auto(inst: &Instance, opts: &SolveOptions) -> Result<Outcome> {
    let g = &inst.graph;
    let with = |engine| dispatch(inst, &SolveOptions { engine, ..opts.clone() });
    let tournament = !inst.has_optional() && Tournament::new(g.clone()).is_ok();
    if tournament && classify(inst.p, inst.q) != Route::Fpt11 {
        return with(Engine::Tournament);
    }
    match (inst.p, inst.q, inst.has_optional()) {
        (0, 1, false) => {
            let (upper, report) = approx_01(g);
            let found = (0..upper.size()).find_map(|k| solve_01(g, k));
            exact(found.unwrap_or(upper), report)
        }
        (1, 1, false) => {
            let (upper, report) = approx_11(g);
            if upper.size() > AUTO_FPT11_LIMIT {
                return Ok((Some(upper), Some(report)));
            }
            let found = (0..upper.size()).find_map(|k| solve_11(g, k));
            exact(found.unwrap_or(upper), report)
        }
        _ if g.m() <= AUTO_ORACLE_ARCS => with(Engine::Oracle),
        _ => with(Engine::Twdp),
    }
}

/// An exact answer found below the approximation, or the approximation itself
/// when it was already optimal.
fn exact(sol: Solution, report: ApproxReport) -> Result<Outcome> {
    let keep = sol.engine.starts_with("approx");
    Ok((Some(sol), keep.then_some(report)))
}
