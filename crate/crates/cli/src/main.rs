//! `gbg` — analyze the strand configuration spaces of a finite graph.
//!
//! Every subcommand reads one input file (see [`input`] for the format),
//! prints a single complete report to stdout, and exits 0. Invalid input
//! exits 1 with a diagnostic on stderr and no report; structurally valid
//! input outside the implemented scope (dimension caps, enumeration caps,
//! non-simplicial intersection patterns) exits 2. Identical input bytes
//! always produce identical output bytes.

mod input;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use gbg_core::cube::homology_summary;
use gbg_core::graph;
use gbg_core::icomplex::one_skeleton_graph;
use gbg_core::products::standardness_graphs;
use gbg_core::{
    braid_free, braid_hyperbolic, build_intersection_complex, build_ud, build_up2,
    free_rank, grape_icomplex, grape_status, hierarchy_report, icomplex_filtration,
    maximal_products, qi_raag_verdict, recognize_grapes, Error, Grape, GrapeStatus, Graph,
    IntersectionComplex, NonRaagWitness, QiRaagVerdict, Sub,
};

use input::Input;

#[derive(Parser)]
#[command(
    name = "gbg",
    version,
    about = "Strand configuration spaces, product subcomplexes, and braid group classification for finite graphs",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Accepted for harness compatibility; every computation is deterministic.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Basic facts about the graph
    Info { file: PathBuf },
    /// Build the n-strand configuration complex and list its cells
    Ud {
        /// Number of strands
        #[arg(long)]
        n: usize,
        file: PathBuf,
    },
    /// Euler characteristic and Betti numbers of the n-strand complex
    Homology {
        /// Number of strands (defaults to the n embedded in a JSON input)
        #[arg(long)]
        n: Option<usize>,
        file: PathBuf,
    },
    /// Curvature and wall pathologies of the n-strand complex
    Special {
        /// Number of strands
        #[arg(long)]
        n: usize,
        file: PathBuf,
    },
    /// Union of the maximal product subcomplexes of the two-strand complex
    Up2 { file: PathBuf },
    /// Membership in the nested families of separability-friendly graphs
    Hierarchy { file: PathBuf },
    /// Intersection pattern of the maximal product subcomplexes
    Icomplex {
        /// Restrict to twig sets spanning a stem path of at most this length
        #[arg(long, value_name = "K")]
        filtration: Option<usize>,
        file: PathBuf,
    },
    /// Recognize a bunch-of-grapes decomposition
    Grapes { file: PathBuf },
    /// Decide quasi-isometry to a right-angled Artin group
    QiRaag { file: PathBuf },
    /// Freeness and hyperbolicity of the n-strand braid group
    Classify {
        /// Number of strands
        #[arg(long)]
        n: usize,
        file: PathBuf,
    },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successful runs; everything else
            // is an argument error.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let _ = cli.seed; // accepted and ignored: all algorithms are deterministic

    let path = match &cli.command {
        Command::Info { file }
        | Command::Ud { file, .. }
        | Command::Homology { file, .. }
        | Command::Special { file, .. }
        | Command::Up2 { file }
        | Command::Hierarchy { file }
        | Command::Icomplex { file, .. }
        | Command::Grapes { file }
        | Command::QiRaag { file }
        | Command::Classify { file, .. } => file.clone(),
    };
    let inp = match input::load(&path) {
        Ok(inp) => inp,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };

    let result = match &cli.command {
        Command::Info { .. } => cmd_info(&inp),
        Command::Ud { n, .. } => cmd_ud(&inp, *n),
        Command::Homology { n, .. } => cmd_homology(&inp, *n),
        Command::Special { n, .. } => cmd_special(&inp, *n),
        Command::Up2 { .. } => cmd_up2(&inp),
        Command::Hierarchy { .. } => cmd_hierarchy(&inp),
        Command::Icomplex { filtration, .. } => cmd_icomplex(&inp, *filtration),
        Command::Grapes { .. } => cmd_grapes(&inp),
        Command::QiRaag { .. } => cmd_qi_raag(&inp),
        Command::Classify { n, .. } => cmd_classify(&inp, *n),
    };
    match result {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).unwrap());
            } else {
                print!("{}", report.text);
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidGraph(_) | Error::InvalidArgument(_) => 1,
                _ => 2,
            }
        }
    }
}

/// A complete report in both shapes; exactly one is printed.
struct Report {
    json: Value,
    text: String,
}

/// Text reports share a two-line header so outputs are self-describing.
fn text_header(command: &str, inp: &Input, warnings: &[String]) -> String {
    let mut s = format!("command: {command}\ninput: {}\n", inp.digest);
    for w in warnings {
        s.push_str(&format!("warning: {w}\n"));
    }
    s
}

fn subdivision_warnings(sufficient: bool, n: usize) -> Vec<String> {
    if sufficient {
        Vec::new()
    } else {
        vec![format!(
            "the graph is not sufficiently subdivided for {n} strands; \
             cell counts are exact but the homotopy type may differ from the braid group's"
        )]
    }
}

fn graph_json(g: &Graph) -> Value {
    let vertices: Vec<&str> = g.vertex_ids().map(|v| g.name(v)).collect();
    let edges: Vec<[&str; 2]> = edge_names(g);
    json!({ "vertices": vertices, "edges": edges })
}

fn edge_names(g: &Graph) -> Vec<[&str; 2]> {
    g.edge_ids_iter()
        .map(|e| {
            let (u, v) = g.edge(e);
            [g.name(u), g.name(v)]
        })
        .collect()
}

fn sub_edge_names(g: &Graph, s: &Sub) -> Vec<[String; 2]> {
    s.edges
        .iter()
        .map(|&e| {
            let (u, v) = g.edge(e);
            [g.name(u).to_string(), g.name(v).to_string()]
        })
        .collect()
}

/// The grape for grape-specific commands: taken from `loops` annotations
/// when present, otherwise recognized from the plain graph.
fn as_grape(inp: &Input) -> Result<Grape, Error> {
    if inp.has_loops {
        let mut loops = BTreeMap::new();
        for (name, k) in &inp.loops {
            let v = inp.graph.vid(name).expect("loop names were resolved during parsing");
            loops.insert(v, *k);
        }
        Grape::new(inp.graph.clone(), loops)
    } else {
        recognize_grapes(&inp.graph).ok_or_else(|| {
            Error::Unsupported(
                "the input graph is not a bunch of grapes (no loops annotations, and no \
                 tree-with-triangles decomposition was recognized)"
                    .into(),
            )
        })
    }
}

fn status_name(s: GrapeStatus) -> &'static str {
    match s {
        GrapeStatus::Small => "small",
        GrapeStatus::Large => "large",
        GrapeStatus::Normal => "normal",
    }
}

fn cmd_info(inp: &Input) -> Result<Report, Error> {
    let g = &inp.graph;
    let components = graph::components(g, &g.full_sub()).len();
    let minimal = graph::smooth_to_minimal_model(g);
    let leafless = graph::is_leafless(g, &g.full_sub());
    let planar = graph::is_planar(g);
    let two_cycles = graph::has_two_disjoint_cycles(g)?;
    let suff2 = graph::is_sufficiently_subdivided(g, 2)?;
    let suff3 = graph::is_sufficiently_subdivided(g, 3)?;
    let grape = if inp.has_loops {
        Some(as_grape(inp)?)
    } else {
        recognize_grapes(g)
    };
    let grape_json = grape.as_ref().map(|gr| {
        json!({
            "status": status_name(grape_status(gr)),
            "stem_vertices": gr.stem().n_vertices(),
            "stem_edges": gr.stem().n_edges(),
            "total_loops": gr.total_loops(),
            "diameter": gr.diameter(),
        })
    });

    let json = json!({
        "command": "info",
        "input": inp.digest,
        "warnings": [],
        "vertices": g.n_vertices(),
        "edges": g.n_edges(),
        "components": components,
        "first_betti": graph::first_betti(g),
        "max_matching": graph::max_matching(g),
        "leafless": leafless,
        "planar": planar,
        "two_disjoint_cycles": two_cycles,
        "sufficiently_subdivided": { "2": suff2, "3": suff3 },
        "minimal_model": { "vertices": minimal.n_vertices(), "edges": minimal.n_edges() },
        "grape": grape_json,
    });

    let mut text = text_header("info", inp, &[]);
    text.push_str(&format!("vertices: {}\n", g.n_vertices()));
    text.push_str(&format!("edges: {}\n", g.n_edges()));
    text.push_str(&format!("components: {components}\n"));
    text.push_str(&format!("first betti: {}\n", graph::first_betti(g)));
    text.push_str(&format!("max matching: {}\n", graph::max_matching(g)));
    text.push_str(&format!("leafless: {leafless}\n"));
    text.push_str(&format!("planar: {planar}\n"));
    text.push_str(&format!("two disjoint cycles: {two_cycles}\n"));
    text.push_str(&format!("sufficiently subdivided for 2 strands: {suff2}\n"));
    text.push_str(&format!("sufficiently subdivided for 3 strands: {suff3}\n"));
    text.push_str(&format!(
        "minimal model: {} vertices, {} edges\n",
        minimal.n_vertices(),
        minimal.n_edges()
    ));
    match &grape {
        Some(gr) => text.push_str(&format!(
            "grape: {} (stem {} vertices / {} edges, {} triangles, diameter {})\n",
            status_name(grape_status(gr)),
            gr.stem().n_vertices(),
            gr.stem().n_edges(),
            gr.total_loops(),
            gr.diameter()
        )),
        None => text.push_str("grape: none\n"),
    }
    Ok(Report { json, text })
}

fn cmd_ud(inp: &Input, n: usize) -> Result<Report, Error> {
    let space = build_ud(&inp.graph, n)?;
    let x = &space.complex;
    let warnings = subdivision_warnings(space.sufficient, n);
    let cells: Vec<Vec<&str>> = (0..=x.dim())
        .map(|d| (0..x.n_cells(d)).map(|i| x.key(d, i)).collect())
        .collect();

    let json = json!({
        "command": "ud",
        "input": inp.digest,
        "warnings": warnings,
        "n": n,
        "graph": graph_json(&inp.graph),
        "counts": x.cell_counts(),
        "cells": cells,
        "chi": x.euler_characteristic(),
        "sufficient": space.sufficient,
    });

    let mut text = text_header("ud", inp, &warnings);
    text.push_str(&format!("n: {n}\n"));
    let counts: Vec<String> = x.cell_counts().iter().map(|c| c.to_string()).collect();
    text.push_str(&format!("cells: {}\n", counts.join(" ")));
    text.push_str(&format!("chi: {}\n", x.euler_characteristic()));
    text.push_str(&format!("sufficient: {}\n", space.sufficient));
    Ok(Report { json, text })
}

fn cmd_homology(inp: &Input, n: Option<usize>) -> Result<Report, Error> {
    let n = n.or(inp.json_n).ok_or_else(|| {
        Error::InvalidArgument("--n is required for plain graph inputs".into())
    })?;
    let space = build_ud(&inp.graph, n)?;
    let (chi, betti) = homology_summary(&space.complex)?;
    let warnings = subdivision_warnings(space.sufficient, n);

    let json = json!({
        "command": "homology",
        "input": inp.digest,
        "warnings": warnings,
        "n": n,
        "counts": space.complex.cell_counts(),
        "chi": chi,
        "betti": betti,
    });

    let mut text = text_header("homology", inp, &warnings);
    text.push_str(&format!("n: {n}\n"));
    let counts: Vec<String> =
        space.complex.cell_counts().iter().map(|c| c.to_string()).collect();
    text.push_str(&format!("cells: {}\n", counts.join(" ")));
    text.push_str(&format!("chi: {chi}\n"));
    let b: Vec<String> = betti.iter().map(|b| b.to_string()).collect();
    text.push_str(&format!("betti: {}\n", b.join(" ")));
    Ok(Report { json, text })
}

fn cmd_special(inp: &Input, n: usize) -> Result<Report, Error> {
    let space = build_ud(&inp.graph, n)?;
    let x = &space.complex;
    let npc = x.is_npc()?;
    let report = x.specialness_report()?;
    let special = npc && report.is_special();
    let warnings = subdivision_warnings(space.sufficient, n);
    let inter: Vec<[usize; 2]> =
        report.inter_osculating.iter().map(|&(a, b)| [a, b]).collect();

    let json = json!({
        "command": "special",
        "input": inp.digest,
        "warnings": warnings,
        "n": n,
        "npc": npc,
        "special": special,
        "classes": report.hyperplane_count,
        "self_intersecting": report.self_intersecting,
        "one_sided": report.one_sided,
        "self_osculating": report.self_osculating,
        "inter_osculating": inter,
    });

    let list = |v: &[usize]| -> String {
        if v.is_empty() {
            "-".to_string()
        } else {
            v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
        }
    };
    let mut text = text_header("special", inp, &warnings);
    text.push_str(&format!("n: {n}\n"));
    text.push_str(&format!("npc: {npc}\n"));
    text.push_str(&format!("special: {special}\n"));
    text.push_str(&format!("classes: {}\n", report.hyperplane_count));
    text.push_str(&format!("self-intersecting: {}\n", list(&report.self_intersecting)));
    text.push_str(&format!("one-sided: {}\n", list(&report.one_sided)));
    text.push_str(&format!("self-osculating: {}\n", list(&report.self_osculating)));
    let inter_text = if report.inter_osculating.is_empty() {
        "-".to_string()
    } else {
        report
            .inter_osculating
            .iter()
            .map(|(a, b)| format!("{a}+{b}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    text.push_str(&format!("inter-osculating: {inter_text}\n"));
    Ok(Report { json, text })
}

fn cmd_up2(inp: &Input) -> Result<Report, Error> {
    let g = &inp.graph;
    let union = build_up2(g)?;
    let products = maximal_products(g)?;
    let (chi, betti) = homology_summary(&union)?;
    let product_json: Vec<Value> = products
        .iter()
        .map(|p| json!([sub_edge_names(g, &p.first), sub_edge_names(g, &p.second)]))
        .collect();

    let json = json!({
        "command": "up2",
        "input": inp.digest,
        "warnings": [],
        "counts": union.cell_counts(),
        "chi": chi,
        "betti": betti,
        "maximal_products": product_json,
    });

    let mut text = text_header("up2", inp, &[]);
    let counts: Vec<String> = union.cell_counts().iter().map(|c| c.to_string()).collect();
    text.push_str(&format!("cells: {}\n", counts.join(" ")));
    text.push_str(&format!("chi: {chi}\n"));
    let b: Vec<String> = betti.iter().map(|b| b.to_string()).collect();
    text.push_str(&format!("betti: {}\n", b.join(" ")));
    text.push_str(&format!("maximal products: {}\n", products.len()));
    for (i, p) in products.iter().enumerate() {
        text.push_str(&format!("product {}: {}\n", i + 1, p.key(g)));
    }
    Ok(Report { json, text })
}

fn tri_json(j: &gbg_core::products::Justified) -> Value {
    let answer = match j.answer {
        gbg_core::products::TriState::Yes => "yes",
        gbg_core::products::TriState::No => "no",
        gbg_core::products::TriState::Unknown => "unknown",
    };
    json!({ "answer": answer, "because": j.because })
}

fn cmd_hierarchy(inp: &Input) -> Result<Report, Error> {
    let g = &inp.graph;
    let r = hierarchy_report(g)?;
    let (s, m, c) = standardness_graphs(g)?;
    let ic = one_skeleton_graph(g)?;

    let json = json!({
        "command": "hierarchy",
        "input": inp.digest,
        "warnings": [],
        "in_g0": r.in_g0,
        "cond_a": r.cond_a,
        "cond_b": r.cond_b,
        "cond_c": r.cond_c,
        "in_g3": r.in_g3,
        "in_g45": r.in_g45,
        "in_g2": tri_json(&r.in_g2),
        "in_g1": tri_json(&r.in_g1),
        "sip": r.sip,
        "connectivity": {
            "standard": s.is_connected(),
            "maximal": m.is_connected(),
            "cycles": c.is_connected(),
            "intersection": ic.is_connected(),
        },
    });

    let tri = |j: &gbg_core::products::Justified| -> String {
        let answer = match j.answer {
            gbg_core::products::TriState::Yes => "yes",
            gbg_core::products::TriState::No => "no",
            gbg_core::products::TriState::Unknown => "unknown",
        };
        format!("{answer} ({})", j.because)
    };
    let mut text = text_header("hierarchy", inp, &[]);
    text.push_str(&format!("base class (leafless, two disjoint cycles): {}\n", r.in_g0));
    text.push_str(&format!("condition a (no bivalent triangle vertex): {}\n", r.cond_a));
    text.push_str(&format!("condition b (disjoint edges separable): {}\n", r.cond_b));
    text.push_str(&format!("condition c (mixed separability): {}\n", r.cond_c));
    text.push_str(&format!("class 3 (base + a + c): {}\n", r.in_g3));
    text.push_str(&format!("class 4/5 (base + a + b): {}\n", r.in_g45));
    text.push_str(&format!("class 2: {}\n", tri(&r.in_g2)));
    text.push_str(&format!("class 1: {}\n", tri(&r.in_g1)));
    text.push_str(&format!("standard intersection property: {}\n", r.sip));
    text.push_str(&format!(
        "connectivity (standard / maximal / cycles / intersection): {} {} {} {}\n",
        s.is_connected(),
        m.is_connected(),
        c.is_connected(),
        ic.is_connected()
    ));
    Ok(Report { json, text })
}

fn icomplex_json(ic: &IntersectionComplex, label_graph: &Graph) -> Value {
    let simplices: Vec<Vec<Vec<usize>>> = (1..=ic.dim())
        .map(|d| {
            ic.simplices_by_dim
                .get(d)
                .map(|s| s.iter().cloned().collect())
                .unwrap_or_default()
        })
        .collect();
    let labels: Vec<Value> = ic
        .labels
        .iter()
        .filter(|(simplex, _)| simplex.len() >= 2)
        .map(|(simplex, pair)| json!({ "simplex": simplex, "label": pair.key(label_graph) }))
        .collect();
    let counts: Vec<usize> = (0..=ic.dim()).map(|d| ic.n_simplices(d)).collect();
    json!({
        "vertices": ic.vertex_keys,
        "counts": counts,
        "simplices": simplices,
        "labels": labels,
        "connected": ic.is_connected(),
        "is_simplex": ic.is_simplex(),
        "betti1_two_skeleton": ic.betti1_two_skeleton(),
    })
}

fn icomplex_text(ic: &IntersectionComplex, label_graph: &Graph) -> String {
    let mut text = String::new();
    text.push_str(&format!("vertices: {}\n", ic.n_vertices()));
    for (i, key) in ic.vertex_keys.iter().enumerate() {
        text.push_str(&format!("  {i}: {key}\n"));
    }
    for d in 1..=ic.dim() {
        text.push_str(&format!("simplices of dimension {d}: {}\n", ic.n_simplices(d)));
        if let Some(simplices) = ic.simplices_by_dim.get(d) {
            for s in simplices {
                let verts: Vec<String> = s.iter().map(|v| v.to_string()).collect();
                let label = ic
                    .labels
                    .get(s)
                    .map(|p| p.key(label_graph))
                    .unwrap_or_else(|| "-".to_string());
                text.push_str(&format!("  {}: {label}\n", verts.join(" ")));
            }
        }
    }
    text.push_str(&format!("connected: {}\n", ic.is_connected()));
    text.push_str(&format!("simplex: {}\n", ic.is_simplex()));
    text.push_str(&format!("betti1 of the two-skeleton: {}\n", ic.betti1_two_skeleton()));
    text
}

fn cmd_icomplex(inp: &Input, filtration: Option<usize>) -> Result<Report, Error> {
    let (ic, label_graph) = match filtration {
        Some(k) => {
            let grape = as_grape(inp)?;
            let ic = icomplex_filtration(&grape, k)?;
            (ic, grape.ambient().clone())
        }
        None if inp.has_loops => {
            let grape = as_grape(inp)?;
            let ic = grape_icomplex(&grape)?;
            (ic, grape.ambient().clone())
        }
        None => (build_intersection_complex(&inp.graph)?, inp.graph.clone()),
    };

    let json = json!({
        "command": "icomplex",
        "input": inp.digest,
        "warnings": [],
        "filtration": filtration,
        "icomplex": icomplex_json(&ic, &label_graph),
    });

    let mut text = text_header("icomplex", inp, &[]);
    if let Some(k) = filtration {
        text.push_str(&format!("filtration: {k}\n"));
    }
    text.push_str(&icomplex_text(&ic, &label_graph));
    Ok(Report { json, text })
}

fn cmd_grapes(inp: &Input) -> Result<Report, Error> {
    let outcome = if inp.has_loops {
        as_grape(inp).map_err(|e| e.to_string())
    } else {
        recognize_grapes(&inp.graph)
            .ok_or_else(|| "no tree-with-triangles decomposition recognized".to_string())
    };
    // A negative answer is still a successful run of this command.
    let (json, text) = match outcome {
        Ok(grape) => {
            let stem = grape.stem();
            let loops_json: BTreeMap<&str, usize> = grape
                .loops()
                .iter()
                .map(|(&v, &k)| (stem.name(v), k))
                .collect();
            let status = status_name(grape_status(&grape));
            let json = json!({
                "command": "grapes",
                "input": inp.digest,
                "warnings": [],
                "grape": {
                    "status": status,
                    "stem": graph_json(stem),
                    "loops": loops_json,
                    "total_loops": grape.total_loops(),
                    "diameter": grape.diameter(),
                },
            });
            let mut text = text_header("grapes", inp, &[]);
            text.push_str(&format!("grape: {status}\n"));
            text.push_str(&format!(
                "stem: {} vertices, {} edges\n",
                stem.n_vertices(),
                stem.n_edges()
            ));
            let mut loop_parts: Vec<String> = Vec::new();
            for v in stem.vertex_ids() {
                let m = grape.multiplicity(v);
                if m > 0 {
                    loop_parts.push(format!("{}:{m}", stem.name(v)));
                }
            }
            let rendered = if loop_parts.is_empty() { "-".into() } else { loop_parts.join(" ") };
            text.push_str(&format!("loops: {rendered}\n"));
            text.push_str(&format!("total loops: {}\n", grape.total_loops()));
            text.push_str(&format!("stem diameter: {}\n", grape.diameter()));
            (json, text)
        }
        Err(reason) => {
            let json = json!({
                "command": "grapes",
                "input": inp.digest,
                "warnings": [],
                "grape": null,
                "reason": reason,
            });
            let mut text = text_header("grapes", inp, &[]);
            text.push_str(&format!("grape: none\nreason: {reason}\n"));
            (json, text)
        }
    };
    Ok(Report { json, text })
}

fn cmd_qi_raag(inp: &Input) -> Result<Report, Error> {
    let grape = as_grape(inp)?;
    let verdict = qi_raag_verdict(&grape)?;
    let (verdict_json, verdict_text) = match &verdict {
        QiRaagVerdict::Yes(raag) => {
            let edges: Vec<[usize; 2]> = raag.edges.iter().map(|&(a, b)| [a, b]).collect();
            (
                json!({
                    "answer": "yes",
                    "raag": {
                        "vertices": raag.n_vertices(),
                        "edges": edges,
                        "isolated_rank": raag.isolated_rank,
                    },
                }),
                format!(
                    "verdict: yes\nraag: {} edges + {} isolated vertices ({} vertices total)\n",
                    raag.edges.len(),
                    raag.isolated_rank,
                    raag.n_vertices()
                ),
            )
        }
        QiRaagVerdict::No(NonRaagWitness::Dynkin { u, v, n }) => (
            json!({
                "answer": "no",
                "witness": { "kind": "dynkin", "ends": [u, v], "length": n },
            }),
            format!(
                "verdict: no\nwitness: a length-{n} Dynkin segment between looped vertices {u} and {v}\n"
            ),
        ),
        QiRaagVerdict::No(NonRaagWitness::Tripod { a, b, c }) => (
            json!({
                "answer": "no",
                "witness": { "kind": "tripod", "arms": [a, b, c] },
            }),
            format!("verdict: no\nwitness: a looped tripod with arm lengths {a}, {b}, {c}\n"),
        ),
        QiRaagVerdict::Unknown => (
            json!({ "answer": "unknown" }),
            "verdict: unknown\nno implemented criterion decides this bunch\n".to_string(),
        ),
    };

    let json = json!({
        "command": "qi-raag",
        "input": inp.digest,
        "warnings": [],
        "verdict": verdict_json,
    });
    let mut text = text_header("qi-raag", inp, &[]);
    text.push_str(&verdict_text);
    Ok(Report { json, text })
}

fn cmd_classify(inp: &Input, n: usize) -> Result<Report, Error> {
    let g = &inp.graph;
    let free = braid_free(g, n)?;
    let hyperbolic = braid_hyperbolic(g, n)?;
    let rank = free_rank(g, n)?;

    let json = json!({
        "command": "classify",
        "input": inp.digest,
        "warnings": [],
        "n": n,
        "free": free,
        "free_rank": rank,
        "hyperbolic": hyperbolic,
    });

    let mut text = text_header("classify", inp, &[]);
    text.push_str(&format!("n: {n}\n"));
    text.push_str(&format!("free: {free}\n"));
    match rank {
        Some(r) => text.push_str(&format!("free rank: {r}\n")),
        None => text.push_str("free rank: -\n"),
    }
    text.push_str(&format!("hyperbolic: {hyperbolic}\n"));
    Ok(Report { json, text })
}
