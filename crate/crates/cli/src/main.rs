//! `tropmod` — command-line frontend over the stable-graph library.
//!
//! Exit status: 0 on success, 1 on a negative verdict (non-isomorphic,
//! not connected through codimension one), 2 on input errors.

mod dot;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tropmod::contraction::{contract, resolve_to_trivalent};
use tropmod::metric::{fiber, stabilize};
use tropmod::{
    automorphism_group, enumerate_all_seeded, ht_path_in, is_isomorphic, stratum_dims,
    CurveDescription, EdgeId, Error, GraphDescription, StrataPoset, WeightedGraph,
};

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Parser)]
#[command(
    name = "tropmod",
    version,
    about = "Stable weighted graphs with labeled legs: isomorphism, contraction, and tropical moduli strata"
)]
struct Cli {
    /// Output format for structured results
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Shuffle the internal work order; output bytes are unaffected
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a graph file against all invariants and reprint it normalized
    Validate { file: PathBuf },
    /// Decide whether two graphs are isomorphic; exit 0 iff they are
    Iso { a: PathBuf, b: PathBuf },
    /// Automorphism group: order, edge action, generators in cycle notation
    Aut { file: PathBuf },
    /// Contract a set of edges, reporting the vertex map and edge embedding
    Contract {
        file: PathBuf,
        /// Comma-separated edge ids, e.g. e0,e2
        #[arg(long, value_delimiter = ',', required = true)]
        edges: Vec<String>,
    },
    /// Resolve a stable graph to a 3-regular weight-0 one plus a witness
    Resolve { file: PathBuf },
    /// Reduce a metric curve to the stable representative of its class
    Stabilize {
        file: PathBuf,
        /// Allow infinite length on any edge
        #[arg(long)]
        extended: bool,
    },
    /// All points of the closed cone parametrizing the same curve
    Fiber { file: PathBuf },
    /// Enumerate all stable types for (g, n) with the contraction poset
    Enumerate {
        #[arg(short = 'g', long = "genus", visible_alias = "g")]
        genus: u64,
        #[arg(short = 'n', long = "legs", visible_alias = "n")]
        legs: u32,
        /// Print only the node counts per edge number
        #[arg(long)]
        fvector: bool,
        /// Verify connectivity through codimension one; exit 1 if it fails
        #[arg(long)]
        check_codim1: bool,
        /// Zig-zag path between two 3-regular types
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        ht_path: Option<Vec<PathBuf>>,
    },
    /// Dual graph of a pointed nodal curve
    Dual { file: PathBuf },
    /// Stratum dimensions on both sides of the correspondence
    Dims { file: PathBuf },
}

fn read_graph(path: &Path) -> Result<WeightedGraph, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    GraphDescription::from_json(&text)?.validate()
}

fn read_description(path: &Path) -> Result<GraphDescription, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    GraphDescription::from_json(&text)
}

fn parse_edge(id: &str) -> Result<EdgeId, Error> {
    let digits = id.strip_prefix('e').unwrap_or(id);
    digits
        .parse::<usize>()
        .map(EdgeId::new)
        .map_err(|_| Error::Parse(format!("bad edge id `{id}`")))
}

fn graph_json(g: &WeightedGraph) -> Value {
    serde_json::to_value(GraphDescription::from_graph(g)).expect("serializable")
}

fn order_json(order: u128) -> Value {
    match u64::try_from(order) {
        Ok(n) => json!(n),
        Err(_) => json!(order.to_string()),
    }
}

fn cycles(perm: &[u32], prefix: &str) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] as usize == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(format!("{prefix}{i}"));
            i = perm[i] as usize;
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

fn print_structured(format: Format, value: &Value, as_dot: Option<String>) {
    match format {
        Format::Dot => {
            if let Some(dot) = as_dot {
                print!("{dot}");
            } else {
                println!("{}", serde_json::to_string_pretty(value).unwrap());
            }
        }
        _ => println!("{}", serde_json::to_string_pretty(value).unwrap()),
    }
}

fn poset_json(poset: &StrataPoset) -> Value {
    json!({
        "genus": poset.genus,
        "legs": poset.num_legs,
        "count": poset.nodes.len(),
        "fVector": poset.f_vector(),
        "nodes": poset.nodes.iter().enumerate().map(|(i, node)| json!({
            "index": i,
            "edges": node.num_edges(),
            "weights": node.graph.weights(),
            "graph": graph_json(&node.graph),
        })).collect::<Vec<_>>(),
        "covers": poset.covers.iter().map(|c| json!({
            "from": c.from,
            "to": c.to,
            "multiplicity": c.multiplicity,
        })).collect::<Vec<_>>(),
    })
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Validate { file } => {
            let g = read_graph(&file)?;
            match cli.format {
                Format::Dot => print!("{}", dot::graph_to_dot(&g)),
                Format::Text => println!(
                    "valid: |V|={}, |E|={}, n={}, genus={}, stable={}",
                    g.num_vertices(),
                    g.num_edges(),
                    g.num_legs(),
                    g.genus(),
                    g.is_stable()
                ),
                Format::Json => print_structured(cli.format, &graph_json(&g), None),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Iso { a, b } => {
            let (ga, gb) = (read_graph(&a)?, read_graph(&b)?);
            if is_isomorphic(&ga, &gb) {
                println!("isomorphic");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("not isomorphic");
                Ok(ExitCode::from(1))
            }
        }
        Command::Aut { file } => {
            let g = read_graph(&file)?;
            let aut = automorphism_group(&g);
            let value = json!({
                "order": order_json(aut.order),
                "edgeActionOrder": order_json(aut.edge_action_order),
                "generators": aut.generators.iter().map(|a| json!({
                    "vertices": cycles(&a.vertex_map, "v"),
                    "halfEdges": cycles(&a.half_edge_map, "h"),
                })).collect::<Vec<_>>(),
                "edgeActionGenerators": aut.edge_action_generators.iter()
                    .map(|p| json!(cycles(p, "e")))
                    .collect::<Vec<_>>(),
            });
            print_structured(cli.format, &value, None);
            Ok(ExitCode::SUCCESS)
        }
        Command::Contract { file, edges } => {
            let g = read_graph(&file)?;
            let s = edges
                .iter()
                .map(|id| parse_edge(id))
                .collect::<Result<_, _>>()?;
            let res = contract(&g, &s)?;
            let vertex_map: BTreeMap<String, String> = res
                .vertex_map
                .iter()
                .enumerate()
                .map(|(v, img)| (format!("v{v}"), format!("v{}", img.index())))
                .collect();
            let edge_embedding: BTreeMap<String, String> = res
                .edge_embedding
                .iter()
                .enumerate()
                .map(|(e, orig)| (format!("e{e}"), format!("e{}", orig.index())))
                .collect();
            let value = json!({
                "graph": graph_json(&res.graph),
                "vertexMap": vertex_map,
                "edgeEmbedding": edge_embedding,
            });
            print_structured(cli.format, &value, Some(dot::graph_to_dot(&res.graph)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Resolve { file } => {
            let g = read_graph(&file)?;
            let (resolved, s) = resolve_to_trivalent(&g)?;
            let value = json!({
                "graph": graph_json(&resolved),
                "contract": s.iter().map(|e| format!("e{}", e.index())).collect::<Vec<_>>(),
            });
            print_structured(cli.format, &value, Some(dot::graph_to_dot(&resolved)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Stabilize { file, extended } => {
            let desc = read_description(&file)?;
            let curve = desc.validate_curve(extended)?;
            let stable = stabilize(&curve)?;
            let out = GraphDescription::from_curve(&stable);
            let value = serde_json::to_value(&out).expect("serializable");
            print_structured(cli.format, &value, Some(dot::graph_to_dot(stable.graph())));
            Ok(ExitCode::SUCCESS)
        }
        Command::Fiber { file } => {
            let desc = read_description(&file)?;
            let point = desc.validate_cone_point()?;
            let points = fiber(&point)?;
            let value = json!({
                "base": graph_json(point.base()),
                "count": points.len(),
                "points": points.iter().map(|q| {
                    q.coords().iter().enumerate()
                        .map(|(i, l)| (format!("e{i}"), json!(l.to_string())))
                        .collect::<BTreeMap<String, Value>>()
                }).collect::<Vec<_>>(),
            });
            print_structured(cli.format, &value, None);
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate {
            genus,
            legs,
            fvector,
            check_codim1,
            ht_path,
        } => {
            let poset = enumerate_all_seeded(genus, legs, cli.seed)?;
            if fvector {
                println!("{}", serde_json::to_string(&poset.f_vector()).unwrap());
                return Ok(ExitCode::SUCCESS);
            }
            if check_codim1 {
                let ok = poset.codim1_connected();
                println!("connected through codimension one: {ok}");
                return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) });
            }
            if let Some(files) = ht_path {
                let a = read_graph(&files[0])?;
                let b = read_graph(&files[1])?;
                let path = ht_path_in(&poset, &a, &b)?;
                let value = json!(path.iter().map(|z| json!({
                    "left": graph_json(&z.left),
                    "leftEdge": format!("e{}", z.left_edge.index()),
                    "middle": graph_json(&z.middle),
                    "right": graph_json(&z.right),
                    "rightEdge": format!("e{}", z.right_edge.index()),
                })).collect::<Vec<_>>());
                print_structured(cli.format, &value, None);
                return Ok(ExitCode::SUCCESS);
            }
            match cli.format {
                Format::Dot => print!("{}", dot::poset_to_dot(&poset)),
                Format::Text => {
                    println!(
                        "({}, {}): {} types, f-vector {:?}",
                        genus,
                        legs,
                        poset.nodes.len(),
                        poset.f_vector()
                    );
                    for (i, node) in poset.nodes.iter().enumerate() {
                        println!(
                            "  node {i}: |E|={}, weights {:?}",
                            node.num_edges(),
                            node.graph.weights()
                        );
                    }
                }
                Format::Json => print_structured(cli.format, &poset_json(&poset), None),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dual { file } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
            let curve = CurveDescription::from_json(&text)?.validate()?;
            let dual = curve.dual_graph()?;
            print_structured(cli.format, &graph_json(&dual), Some(dot::graph_to_dot(&dual)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Dims { file } => {
            let g = read_graph(&file)?;
            let d = stratum_dims(&g)?;
            let value = json!({
                "dimAlg": d.dim_alg,
                "codimTrop": d.codim_trop,
                "dimTrop": d.dim_trop,
            });
            print_structured(cli.format, &value, None);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    if let Ok(workers) = std::env::var("TROPMOD_WORKERS") {
        if let Ok(n) = workers.parse::<usize>() {
            tropmod::configure_workers(n.max(1));
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
