//! Discrete configuration spaces of graphs as cube complexes.
//!
//! An n-point configuration is a set of n pairwise disjoint cells of the
//! graph (vertices and closed edges); a configuration with d edge cells is a
//! d-cube whose direction-i facets replace the i-th edge (in edge-id order)
//! by its endpoints. Cell keys are canonical, so equal graphs produce equal
//! complexes.

use crate::cube::CubeComplex;
use crate::error::{CapCounter, Error, Result};
use crate::graph::{is_sufficiently_subdivided, Graph, Sub};
use std::collections::BTreeSet;

/// One point of a configuration: a vertex or a closed edge of the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Cell {
    V(usize),
    E(usize),
}

impl Cell {
    pub(crate) fn occupies(self, g: &Graph, v: usize) -> bool {
        match self {
            Cell::V(w) => w == v,
            Cell::E(e) => {
                let (a, b) = g.edge(e);
                a == v || b == v
            }
        }
    }
}

pub(crate) fn cell_key(g: &Graph, c: Cell) -> String {
    match c {
        Cell::V(v) => g.name(v).to_string(),
        Cell::E(e) => {
            let (u, v) = g.edge(e);
            format!("{} {}", g.name(u), g.name(v))
        }
    }
}

pub(crate) fn config_key(g: &Graph, parts: &[Cell]) -> String {
    let mut keys: Vec<String> = parts.iter().map(|&c| cell_key(g, c)).collect();
    keys.sort();
    keys.join(" | ")
}

/// The configuration space of n points on a graph, with the subdivision
/// status the homotopy-theoretic results depend on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigSpace {
    pub complex: CubeComplex,
    pub n: usize,
    pub sufficient: bool,
}

/// Builds the n-point configuration space of `g`.
///
/// Graphs with fewer than n vertices give the empty complex; insufficient
/// subdivision is recorded, not rejected.
pub fn build_ud(g: &Graph, n: usize) -> Result<ConfigSpace> {
    if n < 1 {
        return Err(Error::InvalidArgument("a configuration needs at least one point".into()));
    }
    let sufficient = is_sufficiently_subdivided(g, n)?;
    let mut complex = CubeComplex::new();
    if g.n_vertices() < n {
        return Ok(ConfigSpace { complex, n, sufficient });
    }

    // Enumerate configurations grouped by their number of edge cells.
    let mut all_cells: Vec<Cell> = (0..g.n_vertices()).map(Cell::V).collect();
    all_cells.extend((0..g.n_edges()).map(Cell::E));
    let mut by_dim: Vec<Vec<Vec<Cell>>> = Vec::new();
    let mut occupied = vec![false; g.n_vertices()];
    let mut chosen: Vec<Cell> = Vec::new();
    let mut cap = CapCounter::new("configuration enumeration");
    enumerate(g, &all_cells, 0, n, &mut occupied, &mut chosen, &mut by_dim, &mut cap)?;

    for (d, configs) in by_dim.iter().enumerate() {
        for parts in configs {
            let key = config_key(g, parts);
            if d == 0 {
                complex.add_vertex(key)?;
                continue;
            }
            // Direction i = the i-th edge cell in edge-id order; its facets
            // swap that edge for its smaller / larger endpoint.
            let mut facet_keys: Vec<[String; 2]> = Vec::with_capacity(d);
            for (pos, &cell) in parts.iter().enumerate() {
                let Cell::E(e) = cell else { continue };
                let (u, v) = g.edge(e);
                let mut pair = [String::new(), String::new()];
                for (slot, end) in pair.iter_mut().zip([u, v]) {
                    let mut facet = parts.to_vec();
                    facet[pos] = Cell::V(end);
                    *slot = config_key(g, &facet);
                }
                facet_keys.push(pair);
            }
            let refs: Vec<[&str; 2]> =
                facet_keys.iter().map(|[a, b]| [a.as_str(), b.as_str()]).collect();
            complex.add_cube(key, &refs)?;
        }
    }
    complex.validate()?;
    Ok(ConfigSpace { complex, n, sufficient })
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    g: &Graph,
    all_cells: &[Cell],
    start: usize,
    remaining: usize,
    occupied: &mut Vec<bool>,
    chosen: &mut Vec<Cell>,
    by_dim: &mut Vec<Vec<Vec<Cell>>>,
    cap: &mut CapCounter,
) -> Result<()> {
    if remaining == 0 {
        cap.tick()?;
        let d = chosen.iter().filter(|c| matches!(c, Cell::E(_))).count();
        while by_dim.len() <= d {
            by_dim.push(Vec::new());
        }
        by_dim[d].push(chosen.clone());
        return Ok(());
    }
    for (i, &cell) in all_cells.iter().enumerate().skip(start) {
        let footprint: Vec<usize> = match cell {
            Cell::V(v) => vec![v],
            Cell::E(e) => {
                let (u, v) = g.edge(e);
                vec![u, v]
            }
        };
        if footprint.iter().any(|&v| occupied[v]) {
            continue;
        }
        for &v in &footprint {
            occupied[v] = true;
        }
        chosen.push(cell);
        enumerate(g, all_cells, i + 1, remaining - 1, occupied, chosen, by_dim, cap)?;
        chosen.pop();
        for &v in &footprint {
            occupied[v] = false;
        }
    }
    Ok(())
}

/// The cell keys of the two-point configurations with one point on `a` and
/// one on `b` — the product subcomplex spanned by two disjoint subgraphs.
pub fn product_subcomplex_cells(g: &Graph, a: &Sub, b: &Sub) -> Result<BTreeSet<String>> {
    if !a.disjoint_from(b) {
        return Err(Error::InvalidArgument(
            "product subcomplex factors must be disjoint".into(),
        ));
    }
    let cells_of = |s: &Sub| -> Vec<Cell> {
        let mut cells: Vec<Cell> = s.verts.iter().map(|&v| Cell::V(v)).collect();
        cells.extend(s.edges.iter().map(|&e| Cell::E(e)));
        cells
    };
    let (ca, cb) = (cells_of(a), cells_of(b));
    let mut keys = BTreeSet::new();
    for &x in &ca {
        for &y in &cb {
            keys.insert(config_key(g, &[x, y]));
        }
    }
    Ok(keys)
}
