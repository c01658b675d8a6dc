//! Bunches of grapes: trees with per-vertex triangle multiplicities, their
//! materialized graphs, and the decision procedures that exploit that shape.
//!
//! A bunch of grapes is a tree `T` (the stem) together with a count `m(v)` of
//! triangles glued to each vertex `v` along a single shared vertex. The
//! materialized graph determines the pair `(T, m)` up to isomorphism, and for
//! normal bunches (two or more looped vertices, every stem leaf looped) the
//! maximal product subcomplexes of the two-strand configuration space are in
//! bijection with the stem edges ("twigs"). That bijection makes the
//! intersection complex, its level filtration, free-factor ranks, and the
//! right-angled-Artin-group verdict all computable directly on the tree.
//!
//! Minimal-model convention: a bivalent stem vertex must carry at least one
//! triangle, otherwise the same materialized graph would arise from the
//! smoothed stem as well and the twig bijection would break. Constructors
//! reject violations; recognition returns `None` for them.

use crate::error::{CapCounter, Error, Result};
use crate::graph::{self, EId, Graph, Sub, VId};
use crate::icomplex::{self, IntersectionComplex};
use crate::products::StandardPair;
use std::collections::{BTreeMap, BTreeSet};

/// A tree stem with triangle multiplicities and its materialized graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grape {
    stem: Graph,
    loops: BTreeMap<VId, usize>,
    ambient: Graph,
    diameter: usize,
}

impl Grape {
    /// Builds a bunch of grapes from a stem tree and loop multiplicities
    /// (missing vertices default to 0). Rejects non-trees, multiplicities at
    /// unknown vertices, and bare bivalent stem vertices.
    pub fn new(stem: Graph, mut loops: BTreeMap<VId, usize>) -> Result<Grape> {
        if stem.n_vertices() == 0 {
            return Err(Error::InvalidArgument("stem must have at least one vertex".into()));
        }
        if !stem.is_connected() || stem.n_edges() + 1 != stem.n_vertices() {
            return Err(Error::InvalidArgument("stem must be a tree".into()));
        }
        if let Some(&v) = loops.keys().find(|&&v| v >= stem.n_vertices()) {
            return Err(Error::InvalidArgument(format!("loop count at unknown vertex id {v}")));
        }
        for v in stem.vertex_ids() {
            loops.entry(v).or_insert(0);
        }
        for v in stem.vertex_ids() {
            if stem.degree(v) == 2 && loops[&v] == 0 {
                return Err(Error::InvalidArgument(format!(
                    "bivalent stem vertex {} needs a triangle to stay a minimal model",
                    stem.name(v)
                )));
            }
        }
        let mut names: Vec<String> = stem.vertex_ids().map(|v| stem.name(v).to_string()).collect();
        let mut edges: Vec<(String, String)> = stem
            .edge_ids_iter()
            .map(|e| {
                let (u, v) = stem.edge(e);
                (stem.name(u).to_string(), stem.name(v).to_string())
            })
            .collect();
        for v in stem.vertex_ids() {
            for i in 0..loops[&v] {
                let base = stem.name(v);
                let (a, b) = (format!("{base}#g{i}a"), format!("{base}#g{i}b"));
                if stem.vid(&a).is_some() || stem.vid(&b).is_some() {
                    return Err(Error::InvalidArgument(format!(
                        "stem name {base:?} collides with a generated triangle name"
                    )));
                }
                edges.push((base.to_string(), a.clone()));
                edges.push((base.to_string(), b.clone()));
                edges.push((a.clone(), b.clone()));
                names.push(a);
                names.push(b);
            }
        }
        let ambient = Graph::build(&names, &edges)?;
        let diameter = tree_diameter(&stem);
        Ok(Grape { stem, loops, ambient, diameter })
    }

    pub fn stem(&self) -> &Graph {
        &self.stem
    }

    /// Loop multiplicities, defined for every stem vertex.
    pub fn loops(&self) -> &BTreeMap<VId, usize> {
        &self.loops
    }

    pub fn multiplicity(&self, v: VId) -> usize {
        self.loops.get(&v).copied().unwrap_or(0)
    }

    /// Total number of triangles over all stem vertices.
    pub fn total_loops(&self) -> usize {
        self.loops.values().sum()
    }

    pub fn ambient(&self) -> &Graph {
        &self.ambient
    }

    /// Stem diameter in edges.
    pub fn diameter(&self) -> usize {
        self.diameter
    }

    /// The materialized graph: the stem with `m(v)` triangles attached at
    /// each vertex, triangle corners named `"{v}#g{i}a"` / `"{v}#g{i}b"`.
    pub fn materialize(&self) -> Graph {
        self.ambient.clone()
    }
}

fn tree_diameter(t: &Graph) -> usize {
    let mut best = 0;
    for v in t.vertex_ids() {
        best = best.max(bfs_dists(t, v).into_iter().max().unwrap_or(0));
    }
    best
}

fn bfs_dists(t: &Graph, from: VId) -> Vec<usize> {
    let mut dist = vec![usize::MAX; t.n_vertices()];
    dist[from] = 0;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for w in t.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

fn tree_parents(t: &Graph, root: VId) -> Vec<Option<VId>> {
    let mut parent = vec![None; t.n_vertices()];
    let mut seen = vec![false; t.n_vertices()];
    seen[root] = true;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for w in t.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    parent
}

/// Vertices of the unique stem path from `u` to `v`, inclusive.
fn tree_path_verts(t: &Graph, u: VId, v: VId) -> Vec<VId> {
    let parent = tree_parents(t, u);
    let mut path = vec![v];
    let mut cur = v;
    while cur != u {
        cur = parent[cur].expect("stem is connected");
        path.push(cur);
    }
    path.reverse();
    path
}

fn tree_path_edges(t: &Graph, u: VId, v: VId) -> BTreeSet<EId> {
    let verts = tree_path_verts(t, u, v);
    verts
        .windows(2)
        .map(|w| t.edge_id(w[0], w[1]).expect("consecutive path vertices are adjacent"))
        .collect()
}

/// Reads the stem-plus-triangles structure back off a graph: `Some` exactly
/// when every block is a single edge or a triangle, each triangle meets the
/// rest of the graph in one vertex, the bridges form a tree, and the result
/// is a minimal model.
pub fn recognize_grapes(g: &Graph) -> Option<Grape> {
    if g.n_vertices() == 0 || !g.is_connected() {
        return None;
    }
    if g.n_vertices() == 1 {
        let stem = Graph::build(&[g.name(0)], &[]).ok()?;
        return Grape::new(stem, BTreeMap::new()).ok();
    }
    let blocks = graph::blocks(g);
    let mut in_blocks = vec![0usize; g.n_vertices()];
    for b in &blocks {
        for &v in &b.verts {
            in_blocks[v] += 1;
        }
    }
    let mut bridge_pairs: Vec<(&str, &str)> = Vec::new();
    let mut triangles: Vec<&Sub> = Vec::new();
    for b in &blocks {
        match (b.verts.len(), b.edges.len()) {
            (2, 1) => {
                let (u, v) = g.edge(*b.edges.iter().next().expect("edge block has an edge"));
                bridge_pairs.push((g.name(u), g.name(v)));
            }
            (3, 3) => triangles.push(b),
            _ => return None,
        }
    }
    let mut attach: Vec<VId> = Vec::new();
    for t in &triangles {
        let cuts: Vec<VId> = t.verts.iter().copied().filter(|&v| in_blocks[v] >= 2).collect();
        match cuts.len() {
            0 if blocks.len() == 1 => {
                attach.push(*t.verts.iter().next().expect("triangle has vertices"));
            }
            1 => attach.push(cuts[0]),
            _ => return None,
        }
    }
    let (stem, m_by_name) = if bridge_pairs.is_empty() {
        let &v0 = attach.first()?;
        if attach.iter().any(|&a| a != v0) {
            return None;
        }
        let stem = Graph::build(&[g.name(v0)], &[]).ok()?;
        (stem, BTreeMap::from([(g.name(v0).to_string(), triangles.len())]))
    } else {
        let stem = Graph::build::<&str>(&[], &bridge_pairs).ok()?;
        if !stem.is_connected() || stem.n_edges() + 1 != stem.n_vertices() {
            return None;
        }
        let mut m: BTreeMap<String, usize> = BTreeMap::new();
        for &a in &attach {
            stem.vid(g.name(a))?;
            *m.entry(g.name(a).to_string()).or_insert(0) += 1;
        }
        (stem, m)
    };
    if stem.n_vertices() + 2 * triangles.len() != g.n_vertices() {
        return None;
    }
    let loops: BTreeMap<VId, usize> = stem
        .vertex_ids()
        .map(|v| (v, m_by_name.get(stem.name(v)).copied().unwrap_or(0)))
        .collect();
    if stem.vertex_ids().any(|v| stem.degree(v) == 2 && loops[&v] == 0) {
        return None;
    }
    Grape::new(stem, loops).ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrapeStatus {
    /// Fewer than two looped stem vertices.
    Small,
    /// At least two looped vertices, but some stem leaf is bare.
    Large,
    /// At least two looped vertices and every stem leaf is looped.
    Normal,
}

pub fn grape_status(g: &Grape) -> GrapeStatus {
    let looped = g.loops().values().filter(|&&m| m >= 1).count();
    if looped < 2 {
        return GrapeStatus::Small;
    }
    let stem = g.stem();
    let bare_leaf =
        stem.vertex_ids().any(|v| stem.degree(v) == 1 && g.multiplicity(v) == 0);
    if bare_leaf {
        GrapeStatus::Large
    } else {
        GrapeStatus::Normal
    }
}

fn require_normal(g: &Grape, what: &str) -> Result<()> {
    if grape_status(g) != GrapeStatus::Normal {
        return Err(Error::InvalidArgument(format!(
            "{what} requires a normal bunch of grapes (two or more looped vertices, every stem leaf looped)"
        )));
    }
    Ok(())
}

fn ambient_vid(g: &Grape, v: VId) -> VId {
    g.ambient().vid(g.stem().name(v)).expect("stem names survive materialization")
}

fn ambient_eid(g: &Grape, e: EId) -> EId {
    let (u, v) = g.stem().edge(e);
    g.ambient()
        .edge_id(ambient_vid(g, u), ambient_vid(g, v))
        .expect("stem edges survive materialization")
}

/// The two sides of the materialized graph cut along a stem path: remove the
/// path's edges and interior vertices, keep the components holding the two
/// path endpoints, drop the orphaned triangle remnants of interior vertices.
fn path_label(g: &Grape, path_verts: &[VId], path_edges: &BTreeSet<EId>) -> Result<StandardPair> {
    let ambient = g.ambient();
    let end1 = ambient_vid(g, path_verts[0]);
    let end2 = ambient_vid(g, *path_verts.last().expect("path is nonempty"));
    let interior: BTreeSet<VId> =
        path_verts[1..path_verts.len() - 1].iter().map(|&v| ambient_vid(g, v)).collect();
    let cut_edges: BTreeSet<EId> = path_edges.iter().map(|&e| ambient_eid(g, e)).collect();
    let kept = Sub {
        verts: ambient.vertex_ids().filter(|v| !interior.contains(v)).collect(),
        edges: ambient
            .edge_ids_iter()
            .filter(|&e| {
                let (a, b) = ambient.edge(e);
                !interior.contains(&a) && !interior.contains(&b) && !cut_edges.contains(&e)
            })
            .collect(),
    };
    let comps = graph::components(ambient, &kept);
    let side1 = comps.iter().find(|c| c.verts.contains(&end1));
    let side2 = comps.iter().find(|c| c.verts.contains(&end2));
    match (side1, side2) {
        (Some(a), Some(b)) if a != b => Ok(StandardPair::new(ambient, a.clone(), b.clone())),
        _ => Err(Error::InvariantViolation(
            "cutting a stem path must separate its two endpoints".into(),
        )),
    }
}

/// The maximal product subcomplexes of a normal bunch, one per stem edge:
/// each stem edge (twig) `t` yields the pair of components obtained by
/// deleting `t` from the materialized graph. Keys are stem edge ids.
pub fn twig_maximal_products(g: &Grape) -> Result<BTreeMap<EId, StandardPair>> {
    require_normal(g, "the twig correspondence")?;
    let stem = g.stem();
    let mut out = BTreeMap::new();
    for e in stem.edge_ids_iter() {
        let (u, v) = stem.edge(e);
        let pair = path_label(g, &[u, v], &BTreeSet::from([e]))?;
        out.insert(e, pair);
    }
    Ok(out)
}

/// Minimal stem subtree spanning all endpoints of `terminal_edges`, as an
/// edge set (contains every terminal edge).
fn steiner_edges(t: &Graph, terminal_edges: &BTreeSet<EId>) -> BTreeSet<EId> {
    let terminals: BTreeSet<VId> = terminal_edges
        .iter()
        .flat_map(|&e| {
            let (u, v) = t.edge(e);
            [u, v]
        })
        .collect();
    let root = *terminals.iter().next().expect("at least one terminal edge");
    let parent = tree_parents(t, root);
    let dist = bfs_dists(t, root);
    let mut order: Vec<VId> = t.vertex_ids().collect();
    order.sort_by_key(|&v| std::cmp::Reverse(dist[v]));
    let mut count = vec![0usize; t.n_vertices()];
    let total = terminals.len();
    let mut edges = BTreeSet::new();
    for v in order {
        if terminals.contains(&v) {
            count[v] += 1;
        }
        if let Some(p) = parent[v] {
            if count[v] >= 1 && count[v] < total {
                edges.insert(t.edge_id(v, p).expect("parent edge exists"));
            }
            count[p] += count[v];
        }
    }
    edges
}

/// Orders a connected, acyclic edge set as a path; `None` if some vertex
/// meets three or more of the edges.
fn path_order(t: &Graph, edges: &BTreeSet<EId>) -> Option<Vec<VId>> {
    let mut deg: BTreeMap<VId, usize> = BTreeMap::new();
    for &e in edges {
        let (u, v) = t.edge(e);
        *deg.entry(u).or_insert(0) += 1;
        *deg.entry(v).or_insert(0) += 1;
    }
    if deg.values().any(|&d| d > 2) {
        return None;
    }
    let &start = deg.iter().find(|(_, &d)| d == 1).map(|(v, _)| v)?;
    let mut order = vec![start];
    let mut used: BTreeSet<EId> = BTreeSet::new();
    while used.len() < edges.len() {
        let cur = *order.last().expect("path has a tail");
        let step = edges.iter().copied().find(|&e| {
            let (u, v) = t.edge(e);
            !used.contains(&e) && (u == cur || v == cur)
        })?;
        used.insert(step);
        let (u, v) = t.edge(step);
        order.push(if u == cur { v } else { u });
    }
    Some(order)
}

fn build_colinear_complex(g: &Grape, max_len: usize) -> Result<IntersectionComplex> {
    let twig_map = twig_maximal_products(g)?;
    let ambient = g.ambient();
    let stem = g.stem();
    let mut order: Vec<(StandardPair, EId)> =
        twig_map.into_iter().map(|(e, p)| (p, e)).collect();
    order.sort();
    let vertex_pairs: Vec<StandardPair> = order.iter().map(|(p, _)| p.clone()).collect();
    let vertex_keys: Vec<String> = vertex_pairs.iter().map(|p| p.key(ambient)).collect();
    let twig_eids: Vec<EId> = order.iter().map(|&(_, e)| e).collect();
    let n = vertex_pairs.len();

    let mut counter = CapCounter::new("enumerating colinear twig sets");
    let mut simplices_by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
    let mut labels: BTreeMap<Vec<usize>, StandardPair> = BTreeMap::new();
    let mut stack: Vec<Vec<usize>> = (0..n).rev().map(|i| vec![i]).collect();
    while let Some(tuple) = stack.pop() {
        counter.tick()?;
        let edges: BTreeSet<EId> = tuple.iter().map(|&i| twig_eids[i]).collect();
        let span = steiner_edges(stem, &edges);
        let Some(path_verts) = path_order(stem, &span) else { continue };
        if span.len() > max_len {
            continue;
        }
        let label = path_label(g, &path_verts, &span)?;
        let d = tuple.len() - 1;
        if simplices_by_dim.len() <= d {
            simplices_by_dim.resize(d + 1, BTreeSet::new());
        }
        simplices_by_dim[d].insert(tuple.clone());
        labels.insert(tuple.clone(), label);
        for next in (tuple.last().copied().unwrap_or(0) + 1..n).rev() {
            let mut bigger = tuple.clone();
            bigger.push(next);
            stack.push(bigger);
        }
    }
    let ic = IntersectionComplex { vertex_pairs, vertex_keys, simplices_by_dim, labels };
    ic.validate(ambient)?;
    Ok(ic)
}

/// The intersection complex of a normal bunch, built on the stem: twigs are
/// the vertices, and a twig set spans a simplex exactly when one stem path
/// contains all of its edges. The result is checked cell-for-cell against
/// the complex built from the materialized graph's configuration space.
pub fn grape_icomplex(g: &Grape) -> Result<IntersectionComplex> {
    let mine = build_colinear_complex(g, usize::MAX)?;
    let reference = icomplex::build_intersection_complex(g.ambient())?;
    if mine != reference {
        return Err(Error::InvariantViolation(
            "colinear twig complex disagrees with the intersection complex of the materialized graph"
                .into(),
        ));
    }
    Ok(mine)
}

/// The subcomplex of the intersection complex spanned by twig sets whose
/// covering stem path has at most `k` edges. At `k = 2` this is the stem's
/// line graph: one clique per stem vertex of valency ≥ 2, glued along the
/// tree.
pub fn icomplex_filtration(g: &Grape, k: usize) -> Result<IntersectionComplex> {
    if k < 2 || k > g.diameter() {
        return Err(Error::InvalidArgument(format!(
            "filtration level {k} outside 2..={} (the stem diameter)",
            g.diameter()
        )));
    }
    build_colinear_complex(g, k)
}

fn choose2(k: usize) -> usize {
    if k < 2 {
        0
    } else {
        k * (k - 1) / 2
    }
}

/// Free-factor rank of a normal bunch plus the per-vertex counts it sums:
/// for each stem vertex, with `val` its stem valency and `m` its loop count,
/// `N″ = 3m(m−1)/2 + val·m`, `N′ = C(val−1, 2) + val·m`, and
/// `N_v = (val+m)(val+3m−3)/2 + 1`; the total is `N = Σ N″`.
pub fn free_factor_rank(g: &Grape) -> Result<(usize, BTreeMap<VId, (usize, usize, usize)>)> {
    require_normal(g, "the free-factor rank formula")?;
    let stem = g.stem();
    let mut per_vertex = BTreeMap::new();
    let mut total = 0usize;
    for v in stem.vertex_ids() {
        let val = stem.degree(v);
        let m = g.multiplicity(v);
        let n2 = 3 * choose2(m) + val * m;
        let n1 = choose2(val.saturating_sub(1)) + val * m;
        let nv = ((val + m) as i64) * ((val + 3 * m) as i64 - 3) / 2 + 1;
        if nv < 0 {
            return Err(Error::InvariantViolation(format!(
                "vertex rank formula went negative at {}",
                stem.name(v)
            )));
        }
        per_vertex.insert(v, (nv as usize, n1, n2));
        total += n2;
    }
    if total < g.total_loops() {
        return Err(Error::InvariantViolation(
            "free-factor rank fell below the loop count".into(),
        ));
    }
    Ok((total, per_vertex))
}

/// Strips bare stem leaves one at a time (each removal contributes
/// `valency-after − 1` to the free part, valency measured in the materialized
/// graph), then smooths the bare bivalent vertices that remain. Returns the
/// resulting minimal-model bunch — `None` when no vertex carries a loop —
/// and the accumulated free contribution.
fn normalize(g: &Grape) -> Result<(Option<Grape>, usize)> {
    if g.total_loops() == 0 {
        return Ok((None, 0));
    }
    let stem = g.stem();
    let mut alive: BTreeSet<VId> = stem.vertex_ids().collect();
    let mut deg: Vec<usize> = stem.vertex_ids().map(|v| stem.degree(v)).collect();
    let mut strip_sum = 0usize;
    let mut work: BTreeSet<VId> = stem
        .vertex_ids()
        .filter(|&v| deg[v] == 1 && g.multiplicity(v) == 0)
        .collect();
    while let Some(&w) = work.iter().next() {
        work.remove(&w);
        alive.remove(&w);
        let u = stem
            .neighbors(w)
            .find(|n| alive.contains(n))
            .expect("a stripped leaf has one live neighbor");
        deg[u] -= 1;
        let val_after = deg[u] + 2 * g.multiplicity(u);
        strip_sum += val_after.saturating_sub(1);
        if deg[u] == 1 && g.multiplicity(u) == 0 {
            work.insert(u);
        }
    }
    if alive.len() == 1 {
        let v = *alive.iter().next().expect("one vertex is alive");
        let new_stem = Graph::build(&[stem.name(v)], &[])?;
        let grape = Grape::new(new_stem, BTreeMap::from([(0, g.multiplicity(v))]))?;
        return Ok((Some(grape), strip_sum));
    }
    let kept: BTreeSet<VId> = alive
        .iter()
        .copied()
        .filter(|&v| g.multiplicity(v) >= 1 || deg[v] != 2)
        .collect();
    let mut new_edges: BTreeSet<(String, String)> = BTreeSet::new();
    for &v in &kept {
        for start in stem.neighbors(v).filter(|n| alive.contains(n)) {
            let (mut prev, mut cur) = (v, start);
            while !kept.contains(&cur) {
                let next = stem
                    .neighbors(cur)
                    .find(|&n| alive.contains(&n) && n != prev)
                    .expect("a smoothed vertex has a second live neighbor");
                prev = cur;
                cur = next;
            }
            let (a, b) = (stem.name(v).to_string(), stem.name(cur).to_string());
            new_edges.insert(if a < b { (a, b) } else { (b, a) });
        }
    }
    let pairs: Vec<(String, String)> = new_edges.into_iter().collect();
    let new_stem = Graph::build::<String>(&[], &pairs)?;
    let loops: BTreeMap<VId, usize> = new_stem
        .vertex_ids()
        .map(|nv| {
            let old = stem.vid(new_stem.name(nv)).expect("kept vertices keep their names");
            (nv, g.multiplicity(old))
        })
        .collect();
    Ok((Some(Grape::new(new_stem, loops)?), strip_sum))
}

/// A right-angled Artin presentation graph: a complete-bipartite-by-position
/// pattern between `a`-tokens and `b`-tokens read off a path, plus a count
/// of isolated vertices.
///
/// Tokens are `(position, copy)` pairs; an edge joins `a_tokens[i]` to
/// `b_tokens[j]` (indices into the two vectors) exactly when the `a` position
/// is strictly smaller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaagGraph {
    pub a_tokens: Vec<(usize, usize)>,
    pub b_tokens: Vec<(usize, usize)>,
    pub edges: BTreeSet<(usize, usize)>,
    pub isolated_rank: usize,
}

impl RaagGraph {
    pub fn n_vertices(&self) -> usize {
        self.a_tokens.len() + self.b_tokens.len() + self.isolated_rank
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }
}

/// When every looped stem vertex lies on one stem path, the two-strand braid
/// group of the materialized graph is a right-angled Artin group; this
/// returns its presentation graph. Positions index the normalized path
/// `v₀…v_n`: `a`-tokens live at positions `0..n` with one copy per triangle,
/// `b`-tokens at `1..=n`, and tokens commute (share an edge) exactly when the
/// `a` position precedes the `b` position. Everything the leaf-stripping and
/// rank formulas contribute arrives as isolated vertices.
pub fn path_stem_raag(g: &Grape) -> Result<Option<RaagGraph>> {
    let stem = g.stem();
    let looped: Vec<VId> = stem.vertex_ids().filter(|&v| g.multiplicity(v) >= 1).collect();
    if looped.is_empty() {
        let isolated = stem.vertex_ids().map(|v| choose2(stem.degree(v).saturating_sub(1))).sum();
        return Ok(Some(RaagGraph {
            a_tokens: Vec::new(),
            b_tokens: Vec::new(),
            edges: BTreeSet::new(),
            isolated_rank: isolated,
        }));
    }
    let (normalized, strip_sum) = normalize(g)?;
    let norm = normalized.expect("a looped vertex survives normalization");
    if looped.len() == 1 {
        let m = g.multiplicity(looped[0]);
        return Ok(Some(RaagGraph {
            a_tokens: Vec::new(),
            b_tokens: Vec::new(),
            edges: BTreeSet::new(),
            isolated_rank: strip_sum + 3 * choose2(m) + 1,
        }));
    }
    let ns = norm.stem();
    if ns.vertex_ids().any(|v| ns.degree(v) > 2) {
        return Ok(None);
    }
    let start = ns
        .vertex_ids()
        .find(|&v| ns.degree(v) == 1)
        .expect("a path with an edge has endpoints");
    let path = {
        let far = ns
            .vertex_ids()
            .find(|&v| ns.degree(v) == 1 && v != start)
            .expect("a path has two endpoints");
        tree_path_verts(ns, start, far)
    };
    let n = path.len() - 1;
    let mval: Vec<usize> = path.iter().map(|&v| norm.multiplicity(v)).collect();
    let mut a_tokens = Vec::new();
    for (p, &m) in mval.iter().enumerate().take(n) {
        for q in 1..=m {
            a_tokens.push((p, q));
        }
    }
    let mut b_tokens = Vec::new();
    for (p, &m) in mval.iter().enumerate().skip(1) {
        for q in 1..=m {
            b_tokens.push((p, q));
        }
    }
    let edges: BTreeSet<(usize, usize)> = a_tokens
        .iter()
        .enumerate()
        .flat_map(|(i, &(pa, _))| {
            b_tokens
                .iter()
                .enumerate()
                .filter(move |&(_, &(pb, _))| pa < pb)
                .map(move |(j, _)| (i, j))
        })
        .collect();
    let isolated_rank = strip_sum + free_factor_rank(&norm)?.0;
    Ok(Some(RaagGraph { a_tokens, b_tokens, edges, isolated_rank }))
}

/// Two distinct stem vertices at distance `n − 4 ≥ 1`, each adjacent to at
/// least two stem leaves off their connecting path; returns the minimal `n`
/// (then the smallest vertex pair).
pub fn dynkin_witness(g: &Grape) -> Option<(VId, VId, usize)> {
    let t = g.stem();
    let leaves: BTreeSet<VId> = t.vertex_ids().filter(|&v| t.degree(v) == 1).collect();
    let mut best: Option<(usize, VId, VId)> = None;
    for u in t.vertex_ids() {
        for v in (u + 1)..t.n_vertices() {
            let path: BTreeSet<VId> = tree_path_verts(t, u, v).into_iter().collect();
            let side_leaves = |x: VId| {
                t.neighbors(x).filter(|w| leaves.contains(w) && !path.contains(w)).count()
            };
            if side_leaves(u) >= 2 && side_leaves(v) >= 2 {
                let n = (path.len() - 1) + 4;
                if best.map_or(true, |b| (n, u, v) < b) {
                    best = Some((n, u, v));
                }
            }
        }
    }
    best.map(|(n, u, v)| (u, v, n))
}

/// All strict distance triples `a < b < c` realized by three stem leaves in
/// three different branches around one stem vertex, sorted by total length,
/// then by `a + b`, then by `a`.
pub fn tripod_set(g: &Grape) -> Vec<(usize, usize, usize)> {
    let t = g.stem();
    let mut found: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    for x in t.vertex_ids() {
        if t.degree(x) < 3 {
            continue;
        }
        let dist = bfs_dists(t, x);
        let mut branch_dists: Vec<BTreeSet<usize>> = Vec::new();
        for b in t.neighbors(x) {
            let mut comp = BTreeSet::from([b]);
            let mut queue = std::collections::VecDeque::from([b]);
            while let Some(v) = queue.pop_front() {
                for w in t.neighbors(v) {
                    if w != x && comp.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            branch_dists
                .push(comp.into_iter().filter(|&v| t.degree(v) == 1).map(|v| dist[v]).collect());
        }
        let k = branch_dists.len();
        for i in 0..k {
            for j in i + 1..k {
                for l in j + 1..k {
                    for &d1 in &branch_dists[i] {
                        for &d2 in &branch_dists[j] {
                            for &d3 in &branch_dists[l] {
                                let mut tri = [d1, d2, d3];
                                tri.sort_unstable();
                                if tri[0] < tri[1] && tri[1] < tri[2] {
                                    found.insert((tri[0], tri[1], tri[2]));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut out: Vec<(usize, usize, usize)> = found.into_iter().collect();
    out.sort_by_key(|&(a, b, c)| (a + b + c, a + b, a));
    out
}

/// Why a bunch's braid group is not quasi-isometric to any right-angled
/// Artin group: either a pair of branch vertices with leaf pairs on both
/// sides, or a strict leaf-distance tripod. Vertex names refer to the
/// normalized stem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonRaagWitness {
    Dynkin { u: String, v: String, n: usize },
    Tripod { a: usize, b: usize, c: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QiRaagVerdict {
    /// The braid group is a right-angled Artin group with this presentation.
    Yes(RaagGraph),
    /// Provably not quasi-isometric to any right-angled Artin group.
    No(NonRaagWitness),
    /// No implemented criterion decides either way.
    Unknown,
}

/// Decides quasi-isometry to a right-angled Artin group where a criterion
/// applies: `Yes` when the looped vertices sit on one stem path, `No` with a
/// witness found on the normalized stem, `Unknown` otherwise.
pub fn qi_raag_verdict(g: &Grape) -> Result<QiRaagVerdict> {
    if let Some(raag) = path_stem_raag(g)? {
        return Ok(QiRaagVerdict::Yes(raag));
    }
    let (normalized, _) = normalize(g)?;
    let norm = normalized.expect("a bunch without loops has a path verdict");
    if let Some((u, v, n)) = dynkin_witness(&norm) {
        let ns = norm.stem();
        return Ok(QiRaagVerdict::No(NonRaagWitness::Dynkin {
            u: ns.name(u).to_string(),
            v: ns.name(v).to_string(),
            n,
        }));
    }
    if let Some(&(a, b, c)) = tripod_set(&norm).first() {
        return Ok(QiRaagVerdict::No(NonRaagWitness::Tripod { a, b, c }));
    }
    Ok(QiRaagVerdict::Unknown)
}

/// A closed walk through stem leaves, recorded by the leaves it visits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafSequence {
    pub leaves: Vec<VId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopVerdict {
    /// The walk's edge path in the intersection complex is homotopically
    /// nontrivial.
    Nontrivial,
    /// The triple-overlap criterion does not apply; nothing is concluded.
    Inconclusive,
}

/// Tests the no-triple-overlap criterion on a closed leaf walk of a normal
/// bunch: with `Pᵢ` the stem path between consecutive leaves, the walk is
/// certified nontrivial when every three consecutive paths share no edge.
pub fn leaf_sequence_analysis(g: &Grape, w: &LeafSequence) -> Result<LoopVerdict> {
    require_normal(g, "leaf sequence analysis")?;
    let t = g.stem();
    let ws = &w.leaves;
    if ws.len() < 4 {
        return Err(Error::InvalidArgument(
            "a closed leaf sequence needs at least three steps".into(),
        ));
    }
    if ws.first() != ws.last() {
        return Err(Error::InvalidArgument(
            "a leaf sequence must start and end at the same leaf".into(),
        ));
    }
    if ws.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::InvalidArgument(
            "consecutive leaf sequence entries must differ".into(),
        ));
    }
    for &v in ws {
        if v >= t.n_vertices() || t.degree(v) != 1 {
            return Err(Error::InvalidArgument(format!(
                "leaf sequence entry {v} is not a stem leaf"
            )));
        }
    }
    let paths: Vec<BTreeSet<EId>> =
        ws.windows(2).map(|p| tree_path_edges(t, p[0], p[1])).collect();
    if paths.iter().any(|p| p.len() < 2) {
        return Err(Error::InvalidArgument(
            "consecutive leaves must be at stem distance at least two".into(),
        ));
    }
    for i in 0..=paths.len() - 3 {
        let overlap = paths[i]
            .iter()
            .filter(|e| paths[i + 1].contains(e) && paths[i + 2].contains(e))
            .count();
        if overlap > 0 {
            return Ok(LoopVerdict::Inconclusive);
        }
    }
    Ok(LoopVerdict::Nontrivial)
}
