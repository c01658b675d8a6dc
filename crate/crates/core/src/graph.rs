//! Finite simple graphs with string-named vertices, plus the structural
//! operations the rest of the library builds on: subgraphs, leafless cores,
//! subdivision and smoothing, cycle enumeration, planarity, and blocks.
//!
//! Vertex ids are indices into a lexicographically sorted name table, so every
//! enumeration that walks ids in order is deterministic across runs.

use crate::error::{CapCounter, Error, Result};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

pub type VId = usize;
pub type EId = usize;

/// A finite simple graph. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    adj: Vec<BTreeSet<VId>>,
    edges: Vec<(VId, VId)>,
    edge_ids: BTreeMap<(VId, VId), EId>,
}

impl Graph {
    /// Builds a graph from vertex names and name pairs. Endpoint names are
    /// added implicitly; explicit names allow isolated vertices. Rejects
    /// loops and duplicate edges.
    pub fn build<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Graph> {
        let mut names: BTreeSet<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        for (u, v) in edges {
            names.insert(u.as_ref().to_string());
            names.insert(v.as_ref().to_string());
        }
        for n in &names {
            if n.is_empty() || n.chars().any(|c| c.is_whitespace()) {
                return Err(Error::InvalidGraph(format!("bad vertex name {n:?}")));
            }
        }
        let names: Vec<String> = names.into_iter().collect();
        let index: BTreeMap<&str, VId> =
            names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut pairs = BTreeSet::new();
        for (u, v) in edges {
            let (u, v) = (index[u.as_ref()], index[v.as_ref()]);
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at {}", names[u])));
            }
            let key = (u.min(v), u.max(v));
            if !pairs.insert(key) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {} {}",
                    names[key.0], names[key.1]
                )));
            }
        }
        let mut adj = vec![BTreeSet::new(); names.len()];
        let edges: Vec<(VId, VId)> = pairs.into_iter().collect();
        let mut edge_ids = BTreeMap::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u].insert(v);
            adj[v].insert(u);
            edge_ids.insert((u, v), i);
        }
        Ok(Graph { names, adj, edges, edge_ids })
    }

    pub fn n_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, v: VId) -> &str {
        &self.names[v]
    }

    pub fn vid(&self, name: &str) -> Option<VId> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    pub fn edge(&self, e: EId) -> (VId, VId) {
        self.edges[e]
    }

    pub fn edge_id(&self, u: VId, v: VId) -> Option<EId> {
        self.edge_ids.get(&(u.min(v), u.max(v))).copied()
    }

    /// Edge name pair, lexicographically ordered.
    pub fn edge_names(&self, e: EId) -> (&str, &str) {
        let (u, v) = self.edges[e];
        (&self.names[u], &self.names[v])
    }

    pub fn neighbors(&self, v: VId) -> impl Iterator<Item = VId> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: VId) -> usize {
        self.adj[v].len()
    }

    pub fn vertex_ids(&self) -> std::ops::Range<VId> {
        0..self.names.len()
    }

    pub fn edge_ids_iter(&self) -> std::ops::Range<EId> {
        0..self.edges.len()
    }

    pub fn is_connected(&self) -> bool {
        if self.names.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.names.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.names.len()
    }

    /// The subgraph holding every vertex and edge.
    pub fn full_sub(&self) -> Sub {
        Sub {
            verts: self.vertex_ids().collect(),
            edges: self.edge_ids_iter().collect(),
        }
    }

    pub fn empty_sub(&self) -> Sub {
        Sub { verts: BTreeSet::new(), edges: BTreeSet::new() }
    }

    /// Subgraph from explicit edge ids; vertex set is exactly the endpoints.
    pub fn sub_from_edges(&self, edges: impl IntoIterator<Item = EId>) -> Sub {
        let edges: BTreeSet<EId> = edges.into_iter().collect();
        let mut verts = BTreeSet::new();
        for &e in &edges {
            let (u, v) = self.edges[e];
            verts.insert(u);
            verts.insert(v);
        }
        Sub { verts, edges }
    }

    pub fn sub_single_vertex(&self, v: VId) -> Sub {
        Sub { verts: BTreeSet::from([v]), edges: BTreeSet::new() }
    }

    pub fn sub_single_edge(&self, e: EId) -> Sub {
        self.sub_from_edges([e])
    }

    /// Renders `sub` of this graph as a standalone `Graph` (names preserved).
    pub fn realize(&self, sub: &Sub) -> Graph {
        let verts: Vec<&str> = sub.verts.iter().map(|&v| self.name(v)).collect();
        let edges: Vec<(&str, &str)> = sub
            .edges
            .iter()
            .map(|&e| {
                let (u, v) = self.edges[e];
                (self.name(u), self.name(v))
            })
            .collect();
        Graph::build(&verts, &edges).expect("subgraph of a valid graph is valid")
    }
}

/// A subgraph given by subsets of the parent's vertices and edges.
///
/// The vertex set always contains every endpoint of the edge set and may
/// additionally hold isolated vertices. `trivial` means "no edges"; single
/// vertices are legal because separability tests need them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sub {
    pub verts: BTreeSet<VId>,
    pub edges: BTreeSet<EId>,
}

impl Sub {
    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn disjoint_from(&self, other: &Sub) -> bool {
        self.verts.intersection(&other.verts).next().is_none()
    }

    pub fn contains(&self, other: &Sub) -> bool {
        other.verts.is_subset(&self.verts) && other.edges.is_subset(&self.edges)
    }

    /// Union of vertex and edge sets.
    pub fn union(&self, other: &Sub) -> Sub {
        Sub {
            verts: self.verts.union(&other.verts).copied().collect(),
            edges: self.edges.union(&other.edges).copied().collect(),
        }
    }

    /// Degree of `v` counting only edges inside this subgraph.
    pub fn degree_in(&self, g: &Graph, v: VId) -> usize {
        g.adj[v]
            .iter()
            .filter(|&&w| {
                self.verts.contains(&w)
                    && g.edge_id(v, w).map(|e| self.edges.contains(&e)).unwrap_or(false)
            })
            .count()
    }

    /// Canonical display: edge name pairs plus isolated vertex names.
    pub fn key(&self, g: &Graph) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut covered: BTreeSet<VId> = BTreeSet::new();
        for &e in &self.edges {
            let (u, v) = g.edge(e);
            covered.insert(u);
            covered.insert(v);
            parts.push(format!("{} {}", g.name(u), g.name(v)));
        }
        for &v in &self.verts {
            if !covered.contains(&v) {
                parts.push(g.name(v).to_string());
            }
        }
        parts.join(" | ")
    }
}

/// Connected components of a subgraph (isolated vertices form their own
/// components), in canonical order by smallest vertex id.
pub fn components(g: &Graph, sub: &Sub) -> Vec<Sub> {
    let mut seen: BTreeSet<VId> = BTreeSet::new();
    let mut out = Vec::new();
    for &start in &sub.verts {
        if seen.contains(&start) {
            continue;
        }
        let mut verts = BTreeSet::new();
        let mut edges = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        verts.insert(start);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if let Some(e) = g.edge_id(v, w) {
                    if sub.edges.contains(&e) && sub.verts.contains(&w) {
                        edges.insert(e);
                        if seen.insert(w) {
                            verts.insert(w);
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        out.push(Sub { verts, edges });
    }
    out
}

/// The unique maximal subgraph of `s` in which every vertex has degree ≥ 2,
/// obtained by iteratively deleting leaves and isolated vertices. Idempotent;
/// possibly empty.
pub fn leafless_core(g: &Graph, s: &Sub) -> Sub {
    let mut cur = s.clone();
    loop {
        let doomed: Vec<VId> =
            cur.verts.iter().copied().filter(|&v| cur.degree_in(g, v) < 2).collect();
        if doomed.is_empty() {
            return cur;
        }
        for v in doomed {
            cur.verts.remove(&v);
            let dead: Vec<EId> = cur
                .edges
                .iter()
                .copied()
                .filter(|&e| {
                    let (a, b) = g.edge(e);
                    a == v || b == v
                })
                .collect();
            for e in dead {
                cur.edges.remove(&e);
            }
        }
    }
}

pub fn is_leafless(g: &Graph, s: &Sub) -> bool {
    s.verts.iter().all(|&v| s.degree_in(g, v) >= 2)
}

/// Induced complement: the subgraph induced on the vertices outside `s`
/// (isolated ones included).
pub fn induced_complement(g: &Graph, s: &Sub) -> Sub {
    let verts: BTreeSet<VId> = g.vertex_ids().filter(|v| !s.verts.contains(v)).collect();
    let edges: BTreeSet<EId> = g
        .edge_ids_iter()
        .filter(|&e| {
            let (u, v) = g.edge(e);
            verts.contains(&u) && verts.contains(&v)
        })
        .collect();
    Sub { verts, edges }
}

/// Non-bivalent vertices (degree ≠ 2): the endpoints of the "topological
/// edges" relevant to subdivision bounds.
fn non_bivalent(g: &Graph) -> Vec<VId> {
    g.vertex_ids().filter(|&v| g.degree(v) != 2).collect()
}

/// Minimum cycle length, or None for a forest.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    // BFS from every vertex; a non-tree edge closing at depths d1, d2 gives a
    // cycle of length d1 + d2 + 1 through the root's BFS tree.
    for root in g.vertex_ids() {
        let mut dist = vec![usize::MAX; g.n_vertices()];
        let mut parent = vec![usize::MAX; g.n_vertices()];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    let len = dist[v] + dist[w] + 1;
                    if best.map(|b| len < b).unwrap_or(true) {
                        best = Some(len);
                    }
                }
            }
        }
    }
    best
}

/// Both subdivision conditions for `n` strands: every maximal chain between
/// non-bivalent vertices has at least n−1 edges, and every cycle has at least
/// n+1 edges.
pub fn is_sufficiently_subdivided(g: &Graph, n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if n <= 2 {
        // Simplicity alone satisfies both bounds.
        return Ok(true);
    }
    if let Some(girth) = girth(g) {
        if girth < n + 1 {
            return Ok(false);
        }
    }
    // Walk each chain of bivalent vertices between non-bivalent endpoints.
    let anchors = non_bivalent(g);
    for &a in &anchors {
        for b0 in g.neighbors(a) {
            // Follow the chain starting with edge (a, b0).
            let mut prev = a;
            let mut cur = b0;
            let mut len = 1usize;
            while g.degree(cur) == 2 {
                let next = g.neighbors(cur).find(|&w| w != prev).unwrap_or(prev);
                prev = cur;
                cur = next;
                len += 1;
            }
            // `cur` is non-bivalent (or the walk closed a pure cycle, handled
            // by the girth bound). Chains are seen from both ends; that's fine.
            if len < n - 1 {
                return Ok(false);
            }
        }
    }
    // A component that is a pure cycle has no anchors; girth covered it.
    Ok(true)
}

/// Subdivides edges with fresh bivalent vertices until the graph is
/// sufficiently subdivided for `n`, inserting the minimum number of vertices.
/// The output is homeomorphic to the input.
pub fn subdivide_for(g: &Graph, n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if n <= 2 {
        return Ok(g.clone());
    }
    // Work chain by chain. Each maximal chain between non-bivalent endpoints
    // needs length ≥ n−1; a chain that is a cycle (through one non-bivalent
    // vertex, or a whole pure-cycle component) needs length ≥ n+1. Chains are
    // edge-disjoint, so padding each to its own bound is the global minimum:
    // any cycle through two or more chains already has length ≥ 2(n−1) ≥ n+1.
    let mut extra: BTreeMap<EId, usize> = BTreeMap::new();
    let mut seen_edges: BTreeSet<EId> = BTreeSet::new();
    let anchors = non_bivalent(g);
    for &a in &anchors {
        for b0 in g.neighbors(a) {
            let first = g.edge_id(a, b0).unwrap();
            if seen_edges.contains(&first) {
                continue;
            }
            let mut chain = vec![first];
            let mut prev = a;
            let mut cur = b0;
            while g.degree(cur) == 2 && cur != a {
                let next = g.neighbors(cur).find(|&w| w != prev).unwrap_or(prev);
                chain.push(g.edge_id(cur, next).unwrap());
                prev = cur;
                cur = next;
            }
            for &e in &chain {
                seen_edges.insert(e);
            }
            let is_cycle = cur == a;
            let need = if is_cycle { n + 1 } else { n - 1 };
            if chain.len() < need {
                *extra.entry(chain[0]).or_insert(0) += need - chain.len();
            }
        }
    }
    // Pure-cycle components (every vertex bivalent) have no anchor.
    let mut visited: BTreeSet<VId> = BTreeSet::new();
    for v in g.vertex_ids() {
        if visited.contains(&v) || g.degree(v) != 2 {
            continue;
        }
        // Trace the component; if it never meets a non-bivalent vertex it is
        // a pure cycle.
        let mut comp = vec![v];
        let mut queue = VecDeque::from([v]);
        let mut pure = true;
        visited.insert(v);
        while let Some(x) = queue.pop_front() {
            for w in g.neighbors(x) {
                if g.degree(w) != 2 {
                    pure = false;
                } else if visited.insert(w) {
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        if pure && !comp.is_empty() {
            let len = comp.len(); // cycle length = vertex count
            if len < n + 1 {
                let v0 = *comp.iter().min().unwrap();
                let w0 = g.neighbors(v0).next().unwrap();
                let e = g.edge_id(v0, w0).unwrap();
                *extra.entry(e).or_insert(0) += n + 1 - len;
            }
        }
    }
    // Materialize the subdivision.
    let taken: BTreeSet<String> = g.names.iter().cloned().collect();
    let fresh = |u: &str, v: &str, i: usize| -> String {
        let mut name = format!("{u}~{v}~{i}");
        while taken.contains(&name) {
            name.insert(0, '~');
        }
        name
    };
    let mut verts: Vec<String> = g.names.clone();
    let mut edges: Vec<(String, String)> = Vec::new();
    for e in g.edge_ids_iter() {
        let (u, v) = g.edge(e);
        let (un, vn) = (g.name(u).to_string(), g.name(v).to_string());
        let k = extra.get(&e).copied().unwrap_or(0);
        if k == 0 {
            edges.push((un, vn));
        } else {
            let mut prev = un.clone();
            for i in 0..k {
                let mid = fresh(&un, &vn, i);
                verts.push(mid.clone());
                edges.push((prev, mid.clone()));
                prev = mid;
            }
            edges.push((prev, vn));
        }
    }
    let edge_refs: Vec<(&str, &str)> =
        edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let vert_refs: Vec<&str> = verts.iter().map(|s| s.as_str()).collect();
    Graph::build(&vert_refs, &edge_refs)
}

/// Repeatedly merges the two edges at a bivalent vertex whenever the merge
/// keeps the graph simple; the result has the minimum vertex count among
/// simple graphs homeomorphic to the input.
pub fn smooth_to_minimal_model(g: &Graph) -> Graph {
    let mut cur = g.clone();
    loop {
        let candidate = cur.vertex_ids().find(|&v| {
            if cur.degree(v) != 2 {
                return false;
            }
            let nb: Vec<VId> = cur.neighbors(v).collect();
            nb[0] != nb[1] && cur.edge_id(nb[0], nb[1]).is_none()
        });
        let Some(v) = candidate else {
            return cur;
        };
        let nb: Vec<VId> = cur.neighbors(v).collect();
        let verts: Vec<String> =
            cur.vertex_ids().filter(|&w| w != v).map(|w| cur.name(w).to_string()).collect();
        let mut edges: Vec<(String, String)> = cur
            .edge_ids_iter()
            .filter(|&e| {
                let (a, b) = cur.edge(e);
                a != v && b != v
            })
            .map(|e| {
                let (a, b) = cur.edge(e);
                (cur.name(a).to_string(), cur.name(b).to_string())
            })
            .collect();
        edges.push((cur.name(nb[0]).to_string(), cur.name(nb[1]).to_string()));
        let vert_refs: Vec<&str> = verts.iter().map(|s| s.as_str()).collect();
        let edge_refs: Vec<(&str, &str)> =
            edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        cur = Graph::build(&vert_refs, &edge_refs).expect("smoothing preserves validity");
    }
}

/// All simple cycles, each as a subgraph, in canonical order (sorted edge-id
/// sequences). Every cycle is found once: enumeration roots each cycle at its
/// smallest vertex and fixes a direction.
pub fn enumerate_cycles(g: &Graph) -> Result<Vec<Sub>> {
    let mut out: Vec<Vec<EId>> = Vec::new();
    let mut cap = CapCounter::new("enumerating simple cycles");
    let n = g.n_vertices();
    let mut on_path = vec![false; n];
    // DFS paths starting at root r, visiting only vertices > r, closing back
    // to r. Direction is fixed by requiring the second vertex to be smaller
    // than the last vertex.
    fn dfs(
        g: &Graph,
        root: VId,
        v: VId,
        path: &mut Vec<VId>,
        on_path: &mut [bool],
        out: &mut Vec<Vec<EId>>,
        cap: &mut CapCounter,
    ) -> Result<()> {
        for w in g.neighbors(v) {
            if w == root && path.len() >= 3 {
                if path[1] < path[path.len() - 1] {
                    let mut edges: Vec<EId> = path
                        .windows(2)
                        .map(|ab| g.edge_id(ab[0], ab[1]).unwrap())
                        .collect();
                    edges.push(g.edge_id(v, root).unwrap());
                    edges.sort_unstable();
                    cap.tick()?;
                    out.push(edges);
                }
            } else if w > root && !on_path[w] {
                path.push(w);
                on_path[w] = true;
                dfs(g, root, w, path, on_path, out, cap)?;
                on_path[w] = false;
                path.pop();
            }
        }
        Ok(())
    }
    for root in 0..n {
        let mut path = vec![root];
        on_path[root] = true;
        dfs(g, root, root, &mut path, &mut on_path, &mut out, &mut cap)?;
        on_path[root] = false;
    }
    out.sort();
    out.dedup();
    Ok(out.into_iter().map(|edges| g.sub_from_edges(edges)).collect())
}

/// True iff two vertex-disjoint simple cycles exist.
pub fn has_two_disjoint_cycles(g: &Graph) -> Result<bool> {
    let cycles = enumerate_cycles(g)?;
    for (i, a) in cycles.iter().enumerate() {
        for b in cycles.iter().skip(i + 1) {
            if a.disjoint_from(b) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Biconnected components (blocks); every edge lies in exactly one block.
/// Canonical order by sorted edge ids.
pub fn blocks(g: &Graph) -> Vec<Sub> {
    struct St<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        timer: usize,
        stack: Vec<EId>,
        out: Vec<Vec<EId>>,
    }
    fn dfs(st: &mut St, v: VId, parent_edge: Option<EId>) {
        st.disc[v] = st.timer;
        st.low[v] = st.timer;
        st.timer += 1;
        let nbrs: Vec<VId> = st.g.neighbors(v).collect();
        for w in nbrs {
            let e = st.g.edge_id(v, w).unwrap();
            if Some(e) == parent_edge {
                continue;
            }
            if st.disc[w] == usize::MAX {
                st.stack.push(e);
                dfs(st, w, Some(e));
                st.low[v] = st.low[v].min(st.low[w]);
                if st.low[w] >= st.disc[v] {
                    let mut block = Vec::new();
                    while let Some(&top) = st.stack.last() {
                        st.stack.pop();
                        block.push(top);
                        if top == e {
                            break;
                        }
                    }
                    block.sort_unstable();
                    st.out.push(block);
                }
            } else if st.disc[w] < st.disc[v] {
                st.stack.push(e);
                st.low[v] = st.low[v].min(st.disc[w]);
            }
        }
    }
    let n = g.n_vertices();
    let mut st =
        St { g, disc: vec![usize::MAX; n], low: vec![0; n], timer: 0, stack: Vec::new(), out: Vec::new() };
    for start in 0..n {
        if st.disc[start] == usize::MAX {
            dfs(&mut st, start, None);
        }
    }
    st.out.sort();
    st.out.into_iter().map(|edges| g.sub_from_edges(edges)).collect()
}

/// Bridge edges: blocks consisting of a single edge.
pub fn bridges(g: &Graph) -> Vec<EId> {
    blocks(g)
        .into_iter()
        .filter(|b| b.edges.len() == 1)
        .map(|b| *b.edges.iter().next().unwrap())
        .collect()
}

/// Planarity via face embedding (Demoucron–Malgrange–Pertuiset) per block.
pub fn is_planar(g: &Graph) -> bool {
    // Euler quick reject and accept.
    if g.n_vertices() >= 3 && g.n_edges() > 3 * g.n_vertices() - 6 {
        return false;
    }
    blocks(g).iter().all(|b| block_planar(g, b))
}

fn block_planar(g: &Graph, block: &Sub) -> bool {
    if block.edges.len() <= 2 {
        return true;
    }
    // Relabel the block as a standalone graph for the embedding search.
    let verts: Vec<VId> = block.verts.iter().copied().collect();
    let vidx: BTreeMap<VId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<(usize, usize)> = block
        .edges
        .iter()
        .map(|&e| {
            let (u, v) = g.edge(e);
            (vidx[&u], vidx[&v])
        })
        .collect();
    let n = verts.len();
    let m = edges.len();
    if m > 3 * n.max(3) - 6 {
        return false;
    }
    // Find an initial cycle inside the block (a biconnected block with ≥ 3
    // edges always has one).
    let mut adj = vec![BTreeSet::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u].insert((v, i));
        adj[v].insert((u, i));
    }
    let cycle = find_cycle(n, &adj).expect("biconnected block with ≥ 3 edges has a cycle");

    // Faces are vertex sequences; embedded subgraph tracked by edge set.
    let mut embedded_edges: BTreeSet<usize> = cycle.1.iter().copied().collect();
    let mut embedded_verts: BTreeSet<usize> = cycle.0.iter().copied().collect();
    let mut faces: Vec<Vec<usize>> = vec![cycle.0.clone(), cycle.0.clone()];

    while embedded_edges.len() < m {
        // Fragments: connected components of the not-yet-embedded part,
        // where embedded vertices act as split points (contact vertices).
        let fragments = fragments(n, &adj, &embedded_edges, &embedded_verts);
        if fragments.is_empty() {
            break;
        }
        // For each fragment, the admissible faces (containing all contacts).
        let mut chosen: Option<(usize, Vec<usize>)> = None; // (fragment idx, faces)
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, face)| {
                    let fv: BTreeSet<usize> = face.iter().copied().collect();
                    frag.contacts.iter().all(|c| fv.contains(c))
                })
                .map(|(i, _)| i)
                .collect();
            if admissible.is_empty() {
                return false;
            }
            if admissible.len() == 1 {
                chosen = Some((fi, admissible));
                break;
            }
            if chosen.is_none() {
                chosen = Some((fi, admissible));
            }
        }
        let (fi, admissible) = chosen.unwrap();
        let frag = &fragments[fi];
        // Path through the fragment between two contacts (or a loop back to
        // the single contact when the fragment attaches at one vertex).
        let path = fragment_path(frag, &adj, &embedded_edges);
        // Embed the path in the first admissible face, splitting it.
        let face = faces.remove(admissible[0]);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            let e = adj[w[0]].iter().find(|&&(x, _)| x == w[1]).unwrap().1;
            embedded_edges.insert(e);
        }
        for &v in &path {
            embedded_verts.insert(v);
        }
    }
    true
}

fn find_cycle(n: usize, adj: &[BTreeSet<(usize, usize)>]) -> Option<(Vec<usize>, Vec<usize>)> {
    // DFS until a back edge appears; return (cycle vertices, cycle edge ids).
    let mut parent = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut state = vec![0u8; n];
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut stack = vec![start];
        state[start] = 1;
        while let Some(&v) = stack.last() {
            let mut advanced = false;
            for &(w, e) in &adj[v] {
                if e == parent_edge[v] {
                    continue;
                }
                if state[w] == 0 {
                    parent[w] = v;
                    parent_edge[w] = e;
                    state[w] = 1;
                    stack.push(w);
                    advanced = true;
                    break;
                } else if state[w] == 1 {
                    // Back edge v→w: walk parents from v to w.
                    let mut vs = vec![v];
                    let mut es = vec![e];
                    let mut x = v;
                    while x != w {
                        es.push(parent_edge[x]);
                        x = parent[x];
                        vs.push(x);
                    }
                    vs.pop();
                    vs.reverse();
                    let mut cyc_vs = vec![w];
                    cyc_vs.extend(vs);
                    return Some((cyc_vs, es));
                }
            }
            if !advanced {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

struct Fragment {
    verts: BTreeSet<usize>,
    contacts: BTreeSet<usize>,
}

fn fragments(
    n: usize,
    adj: &[BTreeSet<(usize, usize)>],
    embedded_edges: &BTreeSet<usize>,
    embedded_verts: &BTreeSet<usize>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    // Chord fragments: single non-embedded edges between embedded vertices.
    for v in 0..n {
        if !embedded_verts.contains(&v) {
            continue;
        }
        for &(w, e) in &adj[v] {
            if !embedded_edges.contains(&e) && embedded_verts.contains(&w) && v < w {
                out.push(Fragment {
                    verts: BTreeSet::from([v, w]),
                    contacts: BTreeSet::from([v, w]),
                });
            }
        }
    }
    // Bridge fragments grown from non-embedded vertices.
    let mut visited: BTreeSet<usize> = BTreeSet::new();
    for s in 0..n {
        if embedded_verts.contains(&s) || visited.contains(&s) {
            continue;
        }
        let mut verts = BTreeSet::from([s]);
        let mut contacts = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        visited.insert(s);
        while let Some(v) = queue.pop_front() {
            for &(w, _e) in &adj[v] {
                if embedded_verts.contains(&w) {
                    contacts.insert(w);
                    verts.insert(w);
                } else if visited.insert(w) {
                    verts.insert(w);
                    queue.push_back(w);
                }
            }
        }
        if !contacts.is_empty() {
            out.push(Fragment { verts, contacts });
        }
    }
    out
}

fn fragment_path(
    frag: &Fragment,
    adj: &[BTreeSet<(usize, usize)>],
    embedded_edges: &BTreeSet<usize>,
) -> Vec<usize> {
    // BFS inside the fragment from one contact to another, interior vertices
    // restricted to the fragment's non-contact vertices.
    let start = *frag.contacts.iter().next().unwrap();
    let interior: BTreeSet<usize> =
        frag.verts.iter().copied().filter(|v| !frag.contacts.contains(v)).collect();
    // Fragments of a biconnected block always have ≥ 2 contacts (a single
    // contact would be a cut vertex).
    let goals: BTreeSet<usize> =
        frag.contacts.iter().copied().filter(|&c| c != start).collect();
    let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::from([start]);
    let mut seen = BTreeSet::from([start]);
    while let Some(v) = queue.pop_front() {
        for &(w, e) in &adj[v] {
            if embedded_edges.contains(&e) {
                continue;
            }
            if seen.contains(&w) {
                continue;
            }
            if goals.contains(&w) {
                let mut path = vec![w, v];
                let mut x = v;
                while x != start {
                    x = prev[&x];
                    path.push(x);
                }
                path.reverse();
                return path;
            }
            if interior.contains(&w) {
                seen.insert(w);
                prev.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment of a biconnected block always connects two contacts")
}

fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let a = path[0];
    let b = *path.last().unwrap();
    let ia = face.iter().position(|&v| v == a).unwrap();
    let ib = face.iter().position(|&v| v == b).unwrap();
    let len = face.len();
    // Face as a cyclic sequence; two arcs between a and b.
    let mut arc1 = Vec::new();
    let mut i = ia;
    loop {
        arc1.push(face[i]);
        if i == ib {
            break;
        }
        i = (i + 1) % len;
    }
    let mut arc2 = Vec::new();
    let mut i = ib;
    loop {
        arc2.push(face[i]);
        if i == ia {
            break;
        }
        i = (i + 1) % len;
    }
    let interior: Vec<usize> = path[1..path.len() - 1].to_vec();
    let mut f1 = arc1;
    let mut rev_interior = interior.clone();
    rev_interior.reverse();
    f1.extend(rev_interior);
    let mut f2 = arc2;
    f2.extend(interior);
    (f1, f2)
}

/// Maximum matching size, by branch-and-bound over edges. Intended for the
/// small graphs this library works with.
pub fn max_matching(g: &Graph) -> usize {
    fn rec(g: &Graph, used: &mut Vec<bool>, from: EId, count: usize, best: &mut usize) {
        *best = (*best).max(count);
        if count + (g.n_edges() - from).min(g.n_vertices() / 2 - count) <= *best {
            return;
        }
        for e in from..g.n_edges() {
            let (u, v) = g.edge(e);
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                rec(g, used, e + 1, count + 1, best);
                used[u] = false;
                used[v] = false;
            }
        }
    }
    let mut best = 0;
    let mut used = vec![false; g.n_vertices()];
    rec(g, &mut used, 0, 0, &mut best);
    best
}

/// b₁ of a graph: E − V + #components.
pub fn first_betti(g: &Graph) -> usize {
    let comps = components(g, &g.full_sub()).len();
    g.n_edges() + comps - g.n_vertices()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn build_rejects_loops_and_duplicates() {
        assert!(Graph::build::<&str>(&[], &[("a", "a")]).is_err());
        assert!(Graph::build::<&str>(&[], &[("a", "b"), ("b", "a")]).is_err());
    }

    #[test]
    fn vertex_order_is_lexicographic() {
        let g = Graph::build(&["b", "a", "c"], &[("c", "a")]).unwrap();
        assert_eq!(g.name(0), "a");
        assert_eq!(g.name(1), "b");
        assert_eq!(g.name(2), "c");
        assert_eq!(g.edge_names(0), ("a", "c"));
    }

    #[test]
    fn leafless_core_of_tree_is_empty() {
        let g = corpus::path(5);
        assert!(leafless_core(&g, &g.full_sub()).is_empty());
        let s4 = corpus::star(4);
        assert!(leafless_core(&s4, &s4.full_sub()).is_empty());
    }

    #[test]
    fn leafless_core_keeps_triangle_drops_pendant() {
        let g = Graph::build(&[], &[("a", "b"), ("b", "c"), ("c", "a"), ("c", "d")]).unwrap();
        let core = leafless_core(&g, &g.full_sub());
        assert_eq!(core.edges.len(), 3);
        assert_eq!(core.verts.len(), 3);
        assert!(!core.verts.contains(&g.vid("d").unwrap()));
    }

    #[test]
    fn leafless_core_dumbbell_minus_apex() {
        // Deleting one triangle's apex from the dumbbell leaves a path plus
        // the other triangle; the core is exactly that triangle.
        let g = corpus::dumbbell();
        let apex = g.vid("a1").unwrap();
        let mut sub = g.full_sub();
        sub.verts.remove(&apex);
        let dead: Vec<EId> = sub
            .edges
            .iter()
            .copied()
            .filter(|&e| {
                let (a, b) = g.edge(e);
                a == apex || b == apex
            })
            .collect();
        for e in dead {
            sub.edges.remove(&e);
        }
        let core = leafless_core(&g, &sub);
        assert_eq!(core.edges.len(), 3);
        assert!(core.verts.contains(&g.vid("a2").unwrap()));
    }

    #[test]
    fn leafless_core_is_idempotent_and_monotone_spot() {
        let g = corpus::dumbbell();
        let core = leafless_core(&g, &g.full_sub());
        assert_eq!(core, leafless_core(&g, &core));
    }

    #[test]
    fn sufficient_subdivision_examples() {
        let k5 = corpus::complete(5);
        assert!(is_sufficiently_subdivided(&k5, 2).unwrap());
        let c3 = corpus::cycle(3);
        assert!(!is_sufficiently_subdivided(&c3, 3).unwrap());
        let c4 = corpus::cycle(4);
        assert!(is_sufficiently_subdivided(&c4, 3).unwrap());
    }

    #[test]
    fn subdivide_c3_for_3_gives_c4() {
        let c3 = corpus::cycle(3);
        let out = subdivide_for(&c3, 3).unwrap();
        assert_eq!(out.n_vertices(), 4);
        assert_eq!(out.n_edges(), 4);
        assert!(is_sufficiently_subdivided(&out, 3).unwrap());
        assert!(out.vertex_ids().all(|v| out.degree(v) == 2));
    }

    #[test]
    fn subdivide_is_minimal_on_paths() {
        // A single edge must grow to n−1 edges between its two leaves.
        let p1 = corpus::path(2);
        let out = subdivide_for(&p1, 4).unwrap();
        assert_eq!(out.n_edges(), 3);
        assert!(is_sufficiently_subdivided(&out, 4).unwrap());
    }

    #[test]
    fn subdivide_unchanged_examples() {
        let c3 = corpus::cycle(3);
        assert_eq!(subdivide_for(&c3, 2).unwrap(), c3);
        let p1 = corpus::path(2);
        assert_eq!(subdivide_for(&p1, 2).unwrap(), p1);
        let k23 = corpus::complete_bipartite(2, 3);
        assert_eq!(subdivide_for(&k23, 3).unwrap(), k23);
    }

    #[test]
    fn smoothing_examples() {
        let c4 = corpus::cycle(4);
        let m = smooth_to_minimal_model(&c4);
        assert_eq!((m.n_vertices(), m.n_edges()), (3, 3));
        let p5 = corpus::path(6);
        let m = smooth_to_minimal_model(&p5);
        assert_eq!((m.n_vertices(), m.n_edges()), (2, 1));
    }

    #[test]
    fn smoothing_subdivided_dumbbell() {
        // Subdividing the bridge and smoothing recovers the dumbbell shape.
        let g = Graph::build(
            &[],
            &[
                ("a1", "v0"),
                ("b1", "v0"),
                ("a1", "b1"),
                ("v0", "x"),
                ("x", "v1"),
                ("a2", "v1"),
                ("b2", "v1"),
                ("a2", "b2"),
            ],
        )
        .unwrap();
        let m = smooth_to_minimal_model(&g);
        assert_eq!((m.n_vertices(), m.n_edges()), (6, 7));
        let degs: Vec<usize> = m.vertex_ids().map(|v| m.degree(v)).collect();
        assert_eq!(degs.iter().filter(|&&d| d == 3).count(), 2);
    }

    #[test]
    fn cycle_enumeration_matches_known_counts() {
        assert!(enumerate_cycles(&corpus::path(4)).unwrap().is_empty());
        assert_eq!(enumerate_cycles(&corpus::cycle(3)).unwrap().len(), 1);
        let k4 = corpus::complete(4);
        let cycles = enumerate_cycles(&k4).unwrap();
        assert_eq!(cycles.len(), 7);
        let triangles = cycles.iter().filter(|c| c.edges.len() == 3).count();
        assert_eq!(triangles, 4);
        assert_eq!(cycles.len() - triangles, 3);
    }

    #[test]
    fn cycle_enumeration_agrees_with_reference_oracle() {
        for g in [
            corpus::complete(4),
            corpus::complete_bipartite(2, 3),
            corpus::dumbbell(),
            corpus::theta(),
            corpus::figure_eight(),
        ] {
            let fast = enumerate_cycles(&g).unwrap();
            let slow = crate::reference::cycles_by_subset_scan(&g);
            let fast_sets: Vec<&BTreeSet<EId>> = fast.iter().map(|s| &s.edges).collect();
            let slow_sets: Vec<&BTreeSet<EId>> = slow.iter().map(|s| &s.edges).collect();
            assert_eq!(fast_sets, slow_sets);
        }
    }

    #[test]
    fn planarity_known_cases() {
        assert!(is_planar(&corpus::complete(4)));
        assert!(!is_planar(&corpus::complete(5)));
        assert!(!is_planar(&corpus::complete_bipartite(3, 3)));
        assert!(is_planar(&corpus::complete_bipartite(2, 4)));
        assert!(is_planar(&corpus::dodecahedron()));
        assert!(is_planar(&corpus::dumbbell()));
        // A subdivided K₅ is still non-planar.
        let k5s = subdivide_for(&corpus::complete(5), 3).unwrap();
        assert!(!is_planar(&k5s));
    }

    #[test]
    fn planarity_k6_and_petersen_like() {
        assert!(!is_planar(&corpus::complete(6)));
        // K₅ minus an edge is planar.
        let g = Graph::build(
            &[],
            &[
                ("a", "b"),
                ("a", "c"),
                ("a", "d"),
                ("a", "e"),
                ("b", "c"),
                ("b", "d"),
                ("b", "e"),
                ("c", "d"),
                ("c", "e"),
            ],
        )
        .unwrap();
        assert!(is_planar(&g));
    }

    #[test]
    fn disjoint_cycles_known_cases() {
        assert!(has_two_disjoint_cycles(&corpus::dumbbell()).unwrap());
        assert!(!has_two_disjoint_cycles(&corpus::figure_eight()).unwrap());
        assert!(!has_two_disjoint_cycles(&corpus::complete(5)).unwrap());
        assert!(has_two_disjoint_cycles(&corpus::complete(6)).unwrap());
        assert!(!has_two_disjoint_cycles(&corpus::complete_bipartite(3, 3)).unwrap());
        // Every cycle here is even and uses two of the three left vertices,
        // so two disjoint ones would need four of them.
        assert!(!has_two_disjoint_cycles(&corpus::complete_bipartite(3, 4)).unwrap());
        assert!(has_two_disjoint_cycles(&corpus::complete_bipartite(4, 4)).unwrap());
    }

    #[test]
    fn blocks_known_cases() {
        let d = corpus::dumbbell();
        let bs = blocks(&d);
        assert_eq!(bs.len(), 3);
        let sizes: Vec<usize> = bs.iter().map(|b| b.edges.len()).collect();
        assert_eq!(sizes.iter().filter(|&&s| s == 3).count(), 2);
        assert_eq!(sizes.iter().filter(|&&s| s == 1).count(), 1);

        let c4 = corpus::cycle(4);
        assert_eq!(blocks(&c4).len(), 1);

        // K₄ with a pendant edge: two blocks.
        let g = Graph::build(
            &[],
            &[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d"), ("d", "p")],
        )
        .unwrap();
        let bs = blocks(&g);
        assert_eq!(bs.len(), 2);
        assert_eq!(bs.iter().map(|b| b.edges.len()).max(), Some(6));
    }

    #[test]
    fn blocks_partition_edges() {
        for g in [corpus::dumbbell(), corpus::sun(), corpus::dodecahedron(), corpus::theta()] {
            let bs = blocks(&g);
            let mut all: Vec<EId> = bs.iter().flat_map(|b| b.edges.iter().copied()).collect();
            all.sort_unstable();
            let expect: Vec<EId> = g.edge_ids_iter().collect();
            assert_eq!(all, expect);
        }
    }

    #[test]
    fn girth_and_matching() {
        assert_eq!(girth(&corpus::complete(5)), Some(3));
        assert_eq!(girth(&corpus::cycle(6)), Some(6));
        assert_eq!(girth(&corpus::path(4)), None);
        assert_eq!(girth(&corpus::dodecahedron()), Some(5));
        assert_eq!(max_matching(&corpus::complete(4)), 2);
        assert_eq!(max_matching(&corpus::complete_bipartite(2, 3)), 2);
        assert_eq!(max_matching(&corpus::path(4)), 2);
        assert_eq!(max_matching(&corpus::star(4)), 1);
    }
}
