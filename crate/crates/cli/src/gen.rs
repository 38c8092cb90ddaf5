use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use serde::Serialize;

use deds_core::gen::{
    aim_to_tournament, gen_digraph, gen_digraph_with_arcs, gen_tournament, mcc_to_optional, optional_to_full,
    planted_aim, Lineage, McInstance, ReductionOutput,
};
use deds_core::graph::{parse_graph, write_graph, Digraph, UndirectedGraph, Vertex};
use deds_core::{Error, Instance, Result};

use crate::{print_json, read_input, write_output, Status};

#[derive(Subcommand)]
pub enum GenCommand {
    /// Uniformly random tournament.
    Tournament {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Random digraph with exactly `--m` arcs, or each arc with probability `--prob`.
    Digraph {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "prob")]
        m: Option<usize>,
        #[arg(long)]
        prob: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Multicolored clique to optional (3n,3n) instance, or to a standard one with `--full`.
    MccReduce {
        /// Number of classes.
        #[arg(long)]
        k: usize,
        /// Class size; vertex `j` of class `i` is `i*n + j`.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        full: bool,
        /// Graph file whose arcs are read as undirected edges.
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Bipartite almost induced matching instance to a (1,1) tournament.
    AimReduce {
        /// Side size; `A = 0..n`, `B = n..2n`.
        #[arg(long)]
        n: usize,
        /// Target matching size (even).
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Bipartite graph file; a planted instance is generated when absent.
        file: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args)]
pub struct Out {
    /// Graph output; the sidecar goes to `<out>.lineage.json`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Serialize)]
struct Sidecar {
    lineage: Lineage,
    #[serde(skip_serializing_if = "Option::is_none")]
    pq: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    threshold: Option<usize>,
    /// Vertices carrying every optional arc.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    s_set: Vec<Vertex>,
    /// The planted solution of a generated source instance.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    planted: Vec<Vertex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    source_graph: Option<String>,
    /// Edges of a generated source graph, which is not written elsewhere.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    source_edges: Vec<(Vertex, Vertex)>,
}

#[derive(Serialize)]
struct Written {
    graph: PathBuf,
    lineage: PathBuf,
    n: usize,
    m: usize,
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".lineage.json");
    PathBuf::from(s)
}

fn emit(out: &Out, inst: &Instance, sidecar: &Sidecar) -> Result<Status> {
    write_output(&out.out, &write_graph(&inst.graph, &inst.optional_arcs()))?;
    let lineage = sidecar_path(&out.out);
    write_output(&lineage, &serde_json::to_string_pretty(sidecar).expect("serializable"))?;
    print_json(&Written { graph: out.out.clone(), lineage, n: inst.graph.n(), m: inst.graph.m() });
    Ok(Status::Yes)
}

fn plain(construction: &str, n: usize, seed: u64) -> Lineage {
    Lineage { construction: construction.into(), n, seed: Some(seed), ..Default::default() }
}

fn reduction(r: ReductionOutput) -> (Instance, Sidecar) {
    let sidecar = Sidecar {
        pq: Some([r.instance.p, r.instance.q]),
        threshold: Some(r.threshold),
        s_set: r.s_set,
        lineage: r.lineage,
        planted: Vec::new(),
        source_graph: None,
        source_edges: Vec::new(),
    };
    (r.instance, sidecar)
}

fn read_undirected(path: &Path) -> Result<UndirectedGraph> {
    let g = parse_graph(&read_input(path)?)?.graph;
    UndirectedGraph::new(g.n(), g.arcs().iter().copied())
}

pub fn run(cmd: GenCommand) -> Result<Status> {
    let simple = |g: Digraph, lineage: Lineage| {
        let sidecar = Sidecar {
            lineage,
            pq: None,
            threshold: None,
            s_set: Vec::new(),
            planted: Vec::new(),
            source_graph: None,
            source_edges: Vec::new(),
        };
        (Instance::new(g, 0, 0), sidecar)
    };
    match cmd {
        GenCommand::Tournament { n, seed, out } => {
            let (inst, sc) = simple(gen_tournament(n, seed).into_graph(), plain("tournament", n, seed));
            emit(&out, &inst, &sc)
        }
        GenCommand::Digraph { n, m, prob, seed, out } => {
            let g = match (m, prob) {
                (Some(m), _) => {
                    if m > n * n.saturating_sub(1) {
                        return Err(Error::Precondition(format!("{m} arcs do not fit on {n} vertices")));
                    }
                    gen_digraph_with_arcs(n, m, seed)
                }
                (None, Some(p)) if (0.0..=1.0).contains(&p) => gen_digraph(n, p, seed),
                (None, Some(p)) => return Err(Error::Precondition(format!("probability {p} outside [0, 1]"))),
                (None, None) => return Err(Error::Precondition("give --m or --prob".into())),
            };
            let (inst, sc) = simple(g, plain("digraph", n, seed));
            emit(&out, &inst, &sc)
        }
        GenCommand::MccReduce { k, n, full, file, out } => {
            let mc = McInstance::new(read_undirected(&file)?, k, n)?;
            let mut r = mcc_to_optional(&mc)?;
            if full {
                let s = r.s_set.clone();
                r = optional_to_full(&r, &s)?;
            }
            let (inst, mut sc) = reduction(r);
            sc.source_graph = Some(file.display().to_string());
            emit(&out, &inst, &sc)
        }
        GenCommand::AimReduce { n, l, seed, file, out } => {
            let (g, planted, source) = match &file {
                Some(path) => (read_undirected(path)?, Vec::new(), Some(path.display().to_string())),
                None => {
                    let (g, s) = planted_aim(n, l, seed)?;
                    (g, s, None)
                }
            };
            let (inst, mut sc) = reduction(aim_to_tournament(&g, n, l, seed)?);
            if file.is_none() {
                sc.source_edges = g.edges().to_vec();
            }
            sc.planted = planted;
            sc.source_graph = source;
            emit(&out, &inst, &sc)
        }
    }
}
