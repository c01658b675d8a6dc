//! Standard subgraphs, separability, product subcomplexes, and the nested
//! classification of graphs by how tractable their two-strand configuration
//! spaces are.
//!
//! A subgraph is *standard* when it is connected, carries at least one edge,
//! has no vertex of degree one, and leaves room for a disjoint partner: the
//! leafless core of its induced complement must still carry an edge. Two
//! standard subgraphs that are orthogonal complements of each other span a
//! product subcomplex of the two-strand configuration space. This module
//! enumerates those products, composes their union, and evaluates the
//! separability conditions that drive the classification report.

use crate::cube::CubeComplex;
use crate::error::{CapCounter, Error, Result};
use crate::graph::{self, EId, Graph, Sub, VId};
use crate::ud::{self, Cell};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Leafless core of the induced complement: the largest subgraph disjoint
/// from `s` in which every vertex still has degree at least two.
fn perp(g: &Graph, s: &Sub) -> Sub {
    graph::leafless_core(g, &graph::induced_complement(g, s))
}

/// The orthogonal complement of a subgraph without degree-one vertices.
///
/// The input may be trivial (a bare vertex set, or empty), but a vertex of
/// degree exactly one inside the subgraph is rejected: complements are only
/// meaningful for the leafless subgraphs the rest of this module works with.
pub fn orthogonal_complement(g: &Graph, s: &Sub) -> Result<Sub> {
    for &v in &s.verts {
        if s.degree_in(g, v) == 1 {
            return Err(Error::InvalidArgument(format!(
                "orthogonal complement needs a subgraph without degree-one vertices, \
                 but {} has degree 1 in it",
                g.name(v)
            )));
        }
    }
    Ok(perp(g, s))
}

/// Whether `s` is standard: connected, carrying an edge, leafless, and with
/// an orthogonal complement that also carries an edge.
pub fn is_standard(g: &Graph, s: &Sub) -> bool {
    !s.is_trivial()
        && graph::is_leafless(g, s)
        && graph::components(g, s).len() == 1
        && !perp(g, s).is_trivial()
}

/// Whether `s` is maximally standard: standard, with a connected nontrivial
/// complement whose own complement is `s` again.
pub fn is_maximally_standard(g: &Graph, s: &Sub) -> bool {
    if !is_standard(g, s) {
        return false;
    }
    let p = perp(g, s);
    !p.is_trivial() && graph::components(g, &p).len() == 1 && perp(g, &p) == *s
}

/// All standard subgraphs, in canonical order.
///
/// This walks every edge subset, so it is guarded by the enumeration cap;
/// graphs beyond roughly twenty edges need a raised `GBG_ENUM_CAP`.
pub fn enumerate_standard(g: &Graph) -> Result<Vec<Sub>> {
    let subs = connected_leafless_subgraphs_capped(g)?;
    Ok(subs.into_iter().filter(|s| !perp(g, s).is_trivial()).collect())
}

/// All maximally standard subgraphs, in canonical order.
///
/// Candidates grow from a seed population: every cycle, plus the leafless
/// cores of the sides left by deleting any single edge or vertex. The
/// complement of every known candidate is split into connected components
/// and those are fed back until nothing new appears; the definition is then
/// checked on each candidate, so a seed can only ever add genuine answers.
/// The deletion seeds matter when two cut vertices without cycles of their
/// own face each other: no cycle complement separates there, so the pair of
/// sides would otherwise never enter the pool.
/// Unlike [`enumerate_standard`] this avoids the full edge-subset scan, so it
/// stays usable on graphs whose subset scan would blow the enumeration cap;
/// the tests pin it against an exhaustive oracle over the whole corpus.
pub fn enumerate_maximally_standard(g: &Graph) -> Result<Vec<Sub>> {
    let mut pool: BTreeSet<Sub> = BTreeSet::new();
    let mut queue: VecDeque<Sub> = VecDeque::new();
    let seed = |pool: &mut BTreeSet<Sub>, queue: &mut VecDeque<Sub>, s: Sub| {
        if !s.is_trivial() && pool.insert(s.clone()) {
            queue.push_back(s);
        }
    };
    for c in graph::enumerate_cycles(g)? {
        seed(&mut pool, &mut queue, c);
    }
    for e in g.edge_ids_iter() {
        let mut cut = g.full_sub();
        cut.edges.remove(&e);
        for comp in graph::components(g, &cut) {
            seed(&mut pool, &mut queue, graph::leafless_core(g, &comp));
        }
    }
    for v in g.vertex_ids() {
        let single = Sub { verts: BTreeSet::from([v]), edges: BTreeSet::new() };
        for comp in graph::components(g, &graph::induced_complement(g, &single)) {
            seed(&mut pool, &mut queue, graph::leafless_core(g, &comp));
        }
    }
    let mut counter = CapCounter::new("growing the maximally standard candidate pool");
    let mut perp_of: BTreeMap<Sub, Sub> = BTreeMap::new();
    while let Some(s) = queue.pop_front() {
        let p = perp(g, &s);
        for comp in graph::components(g, &p) {
            counter.tick()?;
            if pool.insert(comp.clone()) {
                queue.push_back(comp);
            }
        }
        perp_of.insert(s, p);
    }
    let mut out = Vec::new();
    for s in &pool {
        let p = &perp_of[s];
        if p.is_trivial() || graph::components(g, p).len() != 1 {
            continue;
        }
        if perp(g, p) == *s {
            out.push(s.clone());
        }
    }
    Ok(out)
}

/// An unordered pair of disjoint subgraphs spanning a product subcomplex.
///
/// The factor with the lexicographically smaller canonical key is stored
/// first, so a pair compares equal no matter the order it was created in.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct StandardPair {
    pub first: Sub,
    pub second: Sub,
}

impl StandardPair {
    pub fn new(g: &Graph, a: Sub, b: Sub) -> StandardPair {
        if a.key(g) <= b.key(g) {
            StandardPair { first: a, second: b }
        } else {
            StandardPair { first: b, second: a }
        }
    }

    /// Canonical display key, e.g. `{a b | b c} x {d e}`.
    pub fn key(&self, g: &Graph) -> String {
        format!("{{{}}} x {{{}}}", self.first.key(g), self.second.key(g))
    }

    /// Keys of all two-strand configuration cells of the spanned product.
    pub fn cells(&self, g: &Graph) -> Result<BTreeSet<String>> {
        ud::product_subcomplex_cells(g, &self.first, &self.second)
    }
}

/// The maximal product subcomplexes, as factor pairs: every maximally
/// standard subgraph paired with its orthogonal complement, deduplicated.
pub fn maximal_products(g: &Graph) -> Result<Vec<StandardPair>> {
    let mut set: BTreeSet<StandardPair> = BTreeSet::new();
    for s in enumerate_maximally_standard(g)? {
        let p = perp(g, &s);
        set.insert(StandardPair::new(g, s, p));
    }
    Ok(set.into_iter().collect())
}

/// Precomputed separability engine.
///
/// Two disjoint subgraphs are separable when some pair of disjoint connected
/// nontrivial leafless subgraphs contains them, one each. For a query whose
/// one side is a single vertex or edge it suffices to test the minimal
/// leafless containers of that side — the cycles, and the shapes made of two
/// disjoint cycles joined by a path — against the leafless core of each
/// container's complement, because enlarging a container only shrinks that
/// core. The cache holds every such container with its core precomputed.
pub struct SeparabilityCache {
    containers: Vec<(Sub, Sub)>,
}

impl SeparabilityCache {
    pub fn new(g: &Graph) -> Result<SeparabilityCache> {
        let cycles = graph::enumerate_cycles(g)?;
        let mut shapes: BTreeSet<Sub> = cycles.iter().cloned().collect();
        let mut counter = CapCounter::new("enumerating minimal leafless containers");
        for i in 0..cycles.len() {
            for j in (i + 1)..cycles.len() {
                counter.tick()?;
                if !cycles[i].disjoint_from(&cycles[j]) {
                    continue;
                }
                for path in connecting_paths(g, &cycles[i], &cycles[j], &mut counter)? {
                    shapes.insert(cycles[i].union(&cycles[j]).union(&path));
                }
            }
        }
        let containers = shapes
            .into_iter()
            .map(|c| {
                let core = perp(g, &c);
                (c, core)
            })
            .collect();
        Ok(SeparabilityCache { containers })
    }

    /// Whether the disjoint subgraphs `a` and `b` are separable.
    ///
    /// Either side being a single vertex or edge takes the fast container
    /// route; two genuinely larger sides fall back to an exhaustive capped
    /// scan. Both sides must be nonempty and, unless atomic, connected.
    pub fn query(&self, g: &Graph, a: &Sub, b: &Sub) -> Result<bool> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::InvalidArgument(
                "separability needs nonempty subgraphs".into(),
            ));
        }
        if !a.disjoint_from(b) {
            return Err(Error::InvalidArgument(
                "separability is defined for disjoint subgraphs".into(),
            ));
        }
        for (tag, s) in [("first", a), ("second", b)] {
            if !is_atomic(s) && graph::components(g, s).len() != 1 {
                return Err(Error::InvalidArgument(format!(
                    "separability needs connected subgraphs; the {tag} one is not"
                )));
            }
        }
        if is_atomic(b) {
            Ok(self.containers.iter().any(|(c, core)| c.contains(b) && core.contains(a)))
        } else if is_atomic(a) {
            Ok(self.containers.iter().any(|(c, core)| c.contains(a) && core.contains(b)))
        } else {
            exhaustive_separable(g, a, b)
        }
    }
}

/// One-shot separability check; builds the cache and queries it once.
pub fn separable(g: &Graph, a: &Sub, b: &Sub) -> Result<bool> {
    SeparabilityCache::new(g)?.query(g, a, b)
}

fn is_atomic(s: &Sub) -> bool {
    (s.verts.len() == 1 && s.edges.is_empty()) || (s.verts.len() == 2 && s.edges.len() == 1)
}

/// Simple paths from a vertex of `from` to a first contact with `to`, with
/// every interior vertex outside both. Each path is returned as a subgraph.
fn connecting_paths(
    g: &Graph,
    from: &Sub,
    to: &Sub,
    counter: &mut CapCounter,
) -> Result<Vec<Sub>> {
    fn walk(
        g: &Graph,
        cur: VId,
        from: &Sub,
        to: &Sub,
        visited: &mut BTreeSet<VId>,
        path_edges: &mut Vec<EId>,
        out: &mut Vec<Sub>,
        counter: &mut CapCounter,
    ) -> Result<()> {
        for w in g.neighbors(cur) {
            counter.tick()?;
            let e = g.edge_id(cur, w).expect("neighbor must share an edge");
            if to.verts.contains(&w) {
                path_edges.push(e);
                out.push(g.sub_from_edges(path_edges.iter().copied()));
                path_edges.pop();
            } else if !from.verts.contains(&w) && !visited.contains(&w) {
                visited.insert(w);
                path_edges.push(e);
                walk(g, w, from, to, visited, path_edges, out, counter)?;
                path_edges.pop();
                visited.remove(&w);
            }
        }
        Ok(())
    }

    let mut out = Vec::new();
    for &start in &from.verts {
        let mut visited: BTreeSet<VId> = BTreeSet::new();
        visited.insert(start);
        let mut path_edges = Vec::new();
        walk(g, start, from, to, &mut visited, &mut path_edges, &mut out, counter)?;
    }
    Ok(out)
}

/// Exhaustive separability over all connected leafless subgraphs; capped.
fn exhaustive_separable(g: &Graph, a: &Sub, b: &Sub) -> Result<bool> {
    let pool = connected_leafless_subgraphs_capped(g)?;
    let around_a: Vec<&Sub> = pool.iter().filter(|c| c.contains(a)).collect();
    let around_b: Vec<&Sub> = pool.iter().filter(|c| c.contains(b)).collect();
    for ca in &around_a {
        for cb in &around_b {
            if ca.disjoint_from(cb) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Every connected subgraph with minimum degree two, by edge-subset scan.
fn connected_leafless_subgraphs_capped(g: &Graph) -> Result<Vec<Sub>> {
    let en = g.n_edges();
    if en == 0 {
        return Ok(Vec::new());
    }
    let mut counter = CapCounter::new("scanning edge subsets for leafless subgraphs");
    if en >= 63 {
        return Err(Error::CapExceeded {
            cap: crate::error::enum_cap(),
            context: "scanning edge subsets for leafless subgraphs".into(),
        });
    }
    let ends: Vec<(VId, VId)> = g.edge_ids_iter().map(|e| g.edge(e)).collect();
    let nv = g.n_vertices();
    let mut deg = vec![0u32; nv];
    let mut parent = vec![0usize; nv];
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << en) {
        counter.tick()?;
        deg.fill(0);
        for (e, &(u, v)) in ends.iter().enumerate() {
            if mask & (1 << e) != 0 {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        if deg.iter().any(|&d| d == 1) {
            continue;
        }
        for (v, p) in parent.iter_mut().enumerate() {
            *p = v;
        }
        for (e, &(u, v)) in ends.iter().enumerate() {
            if mask & (1 << e) != 0 {
                let (ru, rv) = (uf_find(&mut parent, u), uf_find(&mut parent, v));
                parent[ru] = rv;
            }
        }
        let mut connected = true;
        let mut first_root = usize::MAX;
        for v in 0..nv {
            if deg[v] == 0 {
                continue;
            }
            let r = uf_find(&mut parent, v);
            if first_root == usize::MAX {
                first_root = r;
            } else if r != first_root {
                connected = false;
                break;
            }
        }
        if !connected {
            continue;
        }
        out.push(g.sub_from_edges((0..en).filter(|e| mask & (1 << e) != 0)));
    }
    out.sort();
    Ok(out)
}

fn uf_find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// The union of all maximal product subcomplexes inside the two-strand
/// configuration space.
///
/// A cell survives exactly when its two parts are separable. The result is
/// computed twice — by filtering cells on separability and by uniting the
/// maximal products — and the two routes must agree.
pub fn build_up2(g: &Graph) -> Result<CubeComplex> {
    let space = ud::build_ud(g, 2)?;
    let cache = SeparabilityCache::new(g)?;
    let mut keep: BTreeSet<String> = BTreeSet::new();
    let vs: Vec<VId> = g.vertex_ids().collect();
    for (i, &v) in vs.iter().enumerate() {
        for &w in &vs[i + 1..] {
            if cache.query(g, &g.sub_single_vertex(v), &g.sub_single_vertex(w))? {
                keep.insert(ud::config_key(g, &[Cell::V(v), Cell::V(w)]));
            }
        }
    }
    for e in g.edge_ids_iter() {
        let es = g.sub_single_edge(e);
        for v in g.vertex_ids() {
            if Cell::E(e).occupies(g, v) {
                continue;
            }
            if cache.query(g, &g.sub_single_vertex(v), &es)? {
                keep.insert(ud::config_key(g, &[Cell::V(v), Cell::E(e)]));
            }
        }
        for f in (e + 1)..g.n_edges() {
            let fs = g.sub_single_edge(f);
            if !es.disjoint_from(&fs) {
                continue;
            }
            if cache.query(g, &es, &fs)? {
                keep.insert(ud::config_key(g, &[Cell::E(e), Cell::E(f)]));
            }
        }
    }
    let mut union_cells: BTreeSet<String> = BTreeSet::new();
    for p in maximal_products(g)? {
        union_cells.extend(p.cells(g)?);
    }
    if keep != union_cells {
        return Err(Error::InvariantViolation(
            "separable cells and the union of maximal products disagree".into(),
        ));
    }
    space.complex.restricted_to(&keep)
}

/// A small labeled graph on index vertices, used for the derived
/// standardness graphs rather than for configuration spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractGraph {
    pub labels: Vec<String>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl AbstractGraph {
    pub fn n_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn component_count(&self) -> usize {
        let n = self.labels.len();
        let mut parent: Vec<usize> = (0..n).collect();
        for &(u, v) in &self.edges {
            let (ru, rv) = (uf_find(&mut parent, u), uf_find(&mut parent, v));
            parent[ru] = rv;
        }
        (0..n).filter(|&v| uf_find(&mut parent, v) == v).count()
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }
}

/// The three derived graphs recording how standard subgraphs interact: one
/// on all standard subgraphs, one on the maximally standard ones, and one on
/// the standard cycles.
///
/// In the first two, subgraphs are adjacent when one fits inside the union
/// of the other with that other's orthogonal complement; two standard cycles
/// are adjacent when vertex-disjoint. All three are connected or
/// disconnected together (and the one-skeleton of the intersection complex
/// agrees with them as well).
pub fn standardness_graphs(g: &Graph) -> Result<(AbstractGraph, AbstractGraph, AbstractGraph)> {
    let standard = enumerate_standard(g)?;
    let perps: Vec<Sub> = standard.iter().map(|s| perp(g, s)).collect();
    let mut s_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..standard.len() {
        for j in (i + 1)..standard.len() {
            let fits = standard[j].union(&perps[j]).contains(&standard[i])
                || standard[i].union(&perps[i]).contains(&standard[j]);
            if fits {
                s_edges.insert((i, j));
            }
        }
    }
    let s_graph = AbstractGraph {
        labels: standard.iter().map(|s| s.key(g)).collect(),
        edges: s_edges.clone(),
    };

    let maxi_idx: Vec<usize> = (0..standard.len())
        .filter(|&i| {
            !perps[i].is_trivial()
                && graph::components(g, &perps[i]).len() == 1
                && perp(g, &perps[i]) == standard[i]
        })
        .collect();
    let mut m_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (a, &i) in maxi_idx.iter().enumerate() {
        for (b, &j) in maxi_idx.iter().enumerate().skip(a + 1) {
            if s_edges.contains(&(i, j)) {
                m_edges.insert((a, b));
            }
        }
    }
    let m_graph = AbstractGraph {
        labels: maxi_idx.iter().map(|&i| standard[i].key(g)).collect(),
        edges: m_edges,
    };

    let cyc_idx: Vec<usize> = (0..standard.len())
        .filter(|&i| standard[i].verts.len() == standard[i].edges.len())
        .collect();
    let mut c_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (a, &i) in cyc_idx.iter().enumerate() {
        for (b, &j) in cyc_idx.iter().enumerate().skip(a + 1) {
            if standard[i].disjoint_from(&standard[j]) {
                c_edges.insert((a, b));
            }
        }
    }
    let c_graph = AbstractGraph {
        labels: cyc_idx.iter().map(|&i| standard[i].key(g)).collect(),
        edges: c_edges,
    };
    Ok((s_graph, m_graph, c_graph))
}

/// No triangle contains a vertex of degree two.
pub fn condition_a(g: &Graph) -> bool {
    for e in g.edge_ids_iter() {
        let (u, v) = g.edge(e);
        for w in g.neighbors(u) {
            if w == v || g.edge_id(w, v).is_none() {
                continue;
            }
            if g.degree(u) == 2 || g.degree(v) == 2 || g.degree(w) == 2 {
                return false;
            }
        }
    }
    true
}

/// Every pair of disjoint edges is separable.
pub fn condition_b(g: &Graph) -> Result<bool> {
    condition_b_with(g, &SeparabilityCache::new(g)?)
}

pub(crate) fn condition_b_with(g: &Graph, cache: &SeparabilityCache) -> Result<bool> {
    for (e, f) in disjoint_edge_pairs(g) {
        if !cache.query(g, &g.sub_single_edge(e), &g.sub_single_edge(f))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Mixed separability forces edge separability: whenever a disjoint edge
/// pair is not separable, every corner (one endpoint from each edge) must
/// have at least one of its two vertex–edge pairs non-separable too.
pub fn condition_c(g: &Graph) -> Result<bool> {
    condition_c_with(g, &SeparabilityCache::new(g)?)
}

pub(crate) fn condition_c_with(g: &Graph, cache: &SeparabilityCache) -> Result<bool> {
    for (e, f) in disjoint_edge_pairs(g) {
        let es = g.sub_single_edge(e);
        let fs = g.sub_single_edge(f);
        if cache.query(g, &es, &fs)? {
            continue;
        }
        let (u1, v1) = g.edge(e);
        let (u2, v2) = g.edge(f);
        for x in [u1, v1] {
            for y in [u2, v2] {
                let x_sep = cache.query(g, &g.sub_single_vertex(x), &fs)?;
                let y_sep = cache.query(g, &es, &g.sub_single_vertex(y))?;
                if x_sep && y_sep {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn disjoint_edge_pairs(g: &Graph) -> Vec<(EId, EId)> {
    let mut out = Vec::new();
    for e in g.edge_ids_iter() {
        let (a, b) = g.edge(e);
        for f in (e + 1)..g.n_edges() {
            let (c, d) = g.edge(f);
            if a != c && a != d && b != c && b != d {
                out.push((e, f));
            }
        }
    }
    out
}

/// Keys of the facets of a configuration cell key: every edge part is
/// replaced by each of its endpoints in turn.
pub(crate) fn facet_keys(key: &str) -> Vec<String> {
    let parts: Vec<&str> = key.split(" | ").collect();
    let mut out = Vec::new();
    for i in 0..parts.len() {
        let Some((u, v)) = parts[i].split_once(' ') else {
            continue;
        };
        for repl in [u, v] {
            let mut q = parts.clone();
            q[i] = repl;
            q.sort_unstable();
            out.push(q.join(" | "));
        }
    }
    out
}

/// Connected components of a set of configuration cells, where two cells
/// touch when one is a facet of the other.
pub(crate) fn cell_components(cells: &BTreeSet<String>) -> Vec<BTreeSet<String>> {
    let keys: Vec<&String> = cells.iter().collect();
    let index: BTreeMap<&str, usize> =
        keys.iter().enumerate().map(|(i, k)| (k.as_str(), i)).collect();
    let mut parent: Vec<usize> = (0..keys.len()).collect();
    for (i, k) in keys.iter().enumerate() {
        for f in facet_keys(k) {
            if let Some(&j) = index.get(f.as_str()) {
                let (ri, rj) = (uf_find(&mut parent, i), uf_find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let mut groups: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
    for (i, k) in keys.iter().enumerate() {
        let r = uf_find(&mut parent, i);
        groups.entry(r).or_default().insert((*k).clone());
    }
    groups.into_values().collect()
}

/// Reconstruct the two product factors from the cells of a product-shaped
/// two-strand cell set by two-coloring the distinct cell parts. Returns
/// `None` when the set is not product-shaped.
pub(crate) fn pair_from_cells(g: &Graph, cells: &BTreeSet<String>) -> Option<StandardPair> {
    fn intern<'a>(
        ids: &mut BTreeMap<&'a str, usize>,
        parts: &mut Vec<&'a str>,
        p: &'a str,
    ) -> usize {
        *ids.entry(p).or_insert_with(|| {
            parts.push(p);
            parts.len() - 1
        })
    }

    if cells.is_empty() {
        return None;
    }
    let mut ids: BTreeMap<&str, usize> = BTreeMap::new();
    let mut parts: Vec<&str> = Vec::new();
    let mut links: Vec<(usize, usize)> = Vec::new();
    for key in cells {
        let (a, b) = key.split_once(" | ")?;
        if b.contains(" | ") {
            return None;
        }
        let ia = intern(&mut ids, &mut parts, a);
        let ib = intern(&mut ids, &mut parts, b);
        links.push((ia, ib));
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); parts.len()];
    for &(a, b) in &links {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut color: Vec<Option<bool>> = vec![None; parts.len()];
    color[0] = Some(false);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let cx = color[x].unwrap();
        for &y in &adj[x] {
            match color[y] {
                None => {
                    color[y] = Some(!cx);
                    queue.push_back(y);
                }
                Some(cy) => {
                    if cy == cx {
                        return None;
                    }
                }
            }
        }
    }
    if color.iter().any(|c| c.is_none()) {
        return None;
    }
    let mut sides = [g.empty_sub(), g.empty_sub()];
    for (i, p) in parts.iter().enumerate() {
        let side = &mut sides[color[i].unwrap() as usize];
        if let Some((u, v)) = p.split_once(' ') {
            let (uu, vv) = (g.vid(u)?, g.vid(v)?);
            let e = g.edge_id(uu, vv)?;
            side.verts.insert(uu);
            side.verts.insert(vv);
            side.edges.insert(e);
        } else {
            side.verts.insert(g.vid(p)?);
        }
    }
    let [a, b] = sides;
    if !a.disjoint_from(&b) {
        return None;
    }
    Some(StandardPair::new(g, a, b))
}

/// When a cell-connected set is exactly the product subcomplex of a pair of
/// disjoint connected nontrivial leafless subgraphs, return that pair.
pub(crate) fn standard_component_pair(
    g: &Graph,
    cells: &BTreeSet<String>,
) -> Result<Option<StandardPair>> {
    let Some(pair) = pair_from_cells(g, cells) else {
        return Ok(None);
    };
    for s in [&pair.first, &pair.second] {
        if s.is_trivial() || !graph::is_leafless(g, s) || graph::components(g, s).len() != 1 {
            return Ok(None);
        }
    }
    Ok(if &pair.cells(g)? == cells { Some(pair) } else { None })
}

/// Every subset (up to `max_size` members) of the given cell sets whose
/// members intersect nontrivially, as (sorted index list, intersection).
pub(crate) fn subset_intersections(
    cellsets: &[BTreeSet<String>],
    max_size: usize,
) -> Result<Vec<(Vec<usize>, BTreeSet<String>)>> {
    fn rec(
        cellsets: &[BTreeSet<String>],
        max_size: usize,
        counter: &mut CapCounter,
        out: &mut Vec<(Vec<usize>, BTreeSet<String>)>,
        prefix: &mut Vec<usize>,
        inter: Option<&BTreeSet<String>>,
        start: usize,
    ) -> Result<()> {
        for j in start..cellsets.len() {
            counter.tick()?;
            let next: BTreeSet<String> = match inter {
                None => cellsets[j].clone(),
                Some(cur) => cur.intersection(&cellsets[j]).cloned().collect(),
            };
            if next.is_empty() {
                continue;
            }
            prefix.push(j);
            out.push((prefix.clone(), next.clone()));
            if prefix.len() < max_size {
                rec(cellsets, max_size, counter, out, prefix, Some(&next), j + 1)?;
            }
            prefix.pop();
        }
        Ok(())
    }

    let mut out = Vec::new();
    if max_size == 0 {
        return Ok(out);
    }
    let mut counter = CapCounter::new("intersecting maximal product subsets");
    let mut prefix = Vec::new();
    rec(cellsets, max_size, &mut counter, &mut out, &mut prefix, None, 0)?;
    Ok(out)
}

/// Whether every nonempty intersection of maximal product subcomplexes
/// decomposes into standard product pieces: each cell-connected component of
/// each subset intersection must itself be the product subcomplex of a pair
/// of disjoint connected nontrivial leafless subgraphs.
///
/// `subset_cap` bounds the subset size; pass `usize::MAX` to check all.
pub fn standard_intersection_property(g: &Graph, subset_cap: usize) -> Result<bool> {
    let products = maximal_products(g)?;
    let mut cellsets = Vec::new();
    for p in &products {
        cellsets.push(p.cells(g)?);
    }
    for (subset, cells) in subset_intersections(&cellsets, subset_cap)? {
        if subset.len() < 2 {
            continue;
        }
        for comp in cell_components(&cells) {
            if standard_component_pair(g, &comp)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriState {
    Yes,
    No,
    Unknown,
}

/// A tri-state answer together with the criterion that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Justified {
    pub answer: TriState,
    pub because: &'static str,
}

impl Justified {
    fn new(answer: TriState, because: &'static str) -> Justified {
        Justified { answer, because }
    }
}

/// Membership report for the nested families of graphs whose two-strand
/// configuration spaces are progressively better behaved.
///
/// `in_g0` is the base class: leafless with two vertex-disjoint cycles.
/// The decidable refinements sit on top of it: `in_g3` adds `cond_c` and
/// `in_g45` adds `cond_b` (which implies `cond_c`). Membership in the two
/// intermediate families is only certified: `in_g2` is `Yes` via `cond_b` or
/// via being a normal bunch of grapes, `in_g1` is `Yes` whenever `in_g2` or
/// `in_g3` holds, and `Unknown` records that no implemented criterion
/// applies — not that membership fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierarchyReport {
    pub in_g0: bool,
    pub cond_a: bool,
    pub cond_b: bool,
    pub cond_c: bool,
    pub in_g3: bool,
    pub in_g45: bool,
    pub in_g2: Justified,
    pub in_g1: Justified,
    pub sip: bool,
}

pub fn hierarchy_report(g: &Graph) -> Result<HierarchyReport> {
    let leafless = graph::is_leafless(g, &g.full_sub());
    let in_g0 = leafless && graph::has_two_disjoint_cycles(g)?;
    let cache = SeparabilityCache::new(g)?;
    let cond_a = condition_a(g);
    let cond_b = condition_b_with(g, &cache)?;
    let cond_c = condition_c_with(g, &cache)?;
    let in_g45 = in_g0 && cond_b;
    let in_g3 = in_g0 && cond_c;
    let normal_grape = crate::grapes::recognize_grapes(g)
        .map(|gr| crate::grapes::grape_status(&gr) == crate::grapes::GrapeStatus::Normal)
        .unwrap_or(false);
    let outside = "not leafless with two vertex-disjoint cycles";
    let undecided = "no implemented criterion certifies or refutes membership";
    let in_g2 = if !in_g0 {
        Justified::new(TriState::No, outside)
    } else if in_g45 {
        Justified::new(TriState::Yes, "every disjoint edge pair is separable")
    } else if normal_grape {
        Justified::new(TriState::Yes, "normal bunch of grapes")
    } else {
        Justified::new(TriState::Unknown, undecided)
    };
    let in_g1 = if !in_g0 {
        Justified::new(TriState::No, outside)
    } else if in_g2.answer == TriState::Yes {
        Justified::new(TriState::Yes, "implied by the narrower product-covered class")
    } else if in_g3 {
        Justified::new(TriState::Yes, "implied by the mixed-separability closure condition")
    } else {
        Justified::new(TriState::Unknown, undecided)
    };
    let sip = standard_intersection_property(g, usize::MAX)?;
    Ok(HierarchyReport { in_g0, cond_a, cond_b, cond_c, in_g3, in_g45, in_g2, in_g1, sip })
}
