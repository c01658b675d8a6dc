//! Finite cube complexes with explicit cells.
//!
//! A d-cube stores, for each of its d directions, the ordered pair of
//! (d−1)-facets obtained by collapsing that direction to its low or high end.
//! Everything else — boundary operators, corners, links, hyperplanes — is
//! derived from that table. Cells are addressed by `(dimension, index)` and
//! carry stable string keys, so two complexes built from the same data
//! compare equal.

use crate::error::{CapCounter, Error, Result};
use crate::rank::SparseMatrix;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Default bound on the dimensions homology will process.
pub const HOMOLOGY_DIM_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct Level {
    keys: Vec<String>,
    index: BTreeMap<String, usize>,
    /// sides[cell][dir] = [low facet, high facet] one dimension down.
    sides: Vec<Vec<[usize; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CubeComplex {
    levels: Vec<Level>,
}

/// A parallelism class of 1-cells, generated by square opposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    pub edge_class: Vec<usize>,
}

/// The link of a 0-cell: its vertices are the incident 1-cells; every corner
/// of a higher cube at the 0-cell contributes one simplex (kept with
/// multiplicity so non-simplicial gluings stay visible).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Link {
    pub vertices: Vec<usize>,
    pub simplices: Vec<Vec<usize>>,
}

/// Hyperplane pathologies, each listing the offending class indices (into
/// `hyperplanes()` order). Empty lists everywhere = special.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialnessReport {
    pub hyperplane_count: usize,
    pub self_intersecting: Vec<usize>,
    pub one_sided: Vec<usize>,
    pub self_osculating: Vec<usize>,
    pub inter_osculating: Vec<(usize, usize)>,
}

impl SpecialnessReport {
    pub fn is_special(&self) -> bool {
        self.self_intersecting.is_empty()
            && self.one_sided.is_empty()
            && self.self_osculating.is_empty()
            && self.inter_osculating.is_empty()
    }
}

impl CubeComplex {
    pub fn new() -> CubeComplex {
        CubeComplex { levels: Vec::new() }
    }

    fn level_mut(&mut self, d: usize) -> &mut Level {
        while self.levels.len() <= d {
            self.levels.push(Level::default());
        }
        &mut self.levels[d]
    }

    /// Highest dimension with at least one cell (0 for empty complexes).
    pub fn dim(&self) -> usize {
        (0..self.levels.len()).rev().find(|&d| !self.levels[d].keys.is_empty()).unwrap_or(0)
    }

    pub fn n_cells(&self, d: usize) -> usize {
        self.levels.get(d).map_or(0, |l| l.keys.len())
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        (0..=self.dim()).map(|d| self.n_cells(d)).collect()
    }

    pub fn key(&self, d: usize, i: usize) -> &str {
        &self.levels[d].keys[i]
    }

    pub fn index_of(&self, d: usize, key: &str) -> Option<usize> {
        self.levels.get(d).and_then(|l| l.index.get(key)).copied()
    }

    /// The direction table of a cell: sides[dir] = [low facet, high facet].
    pub fn sides(&self, d: usize, i: usize) -> &[[usize; 2]] {
        &self.levels[d].sides[i]
    }

    /// Endpoints of a 1-cell, in stored order.
    pub fn ends(&self, e: usize) -> [usize; 2] {
        self.levels[1].sides[e][0]
    }

    pub fn add_vertex(&mut self, key: impl Into<String>) -> Result<usize> {
        let key = key.into();
        let level = self.level_mut(0);
        if level.index.contains_key(&key) {
            return Err(Error::InvalidArgument(format!("duplicate 0-cell key {key:?}")));
        }
        let i = level.keys.len();
        level.index.insert(key.clone(), i);
        level.keys.push(key);
        level.sides.push(Vec::new());
        Ok(i)
    }

    /// Adds a d-cube (d = `facet_sides.len()` ≥ 1) whose facets are named by
    /// keys one level down.
    pub fn add_cube(&mut self, key: impl Into<String>, facet_sides: &[[&str; 2]]) -> Result<usize> {
        let key = key.into();
        let d = facet_sides.len();
        if d == 0 {
            return Err(Error::InvalidArgument("a cube needs at least one direction".into()));
        }
        let mut sides = Vec::with_capacity(d);
        for pair in facet_sides {
            let mut resolved = [0usize; 2];
            for (slot, name) in resolved.iter_mut().zip(pair.iter()) {
                *slot = self.index_of(d - 1, name).ok_or_else(|| {
                    Error::InvalidArgument(format!("unknown facet {name:?} at dimension {}", d - 1))
                })?;
            }
            sides.push(resolved);
        }
        let mut all: Vec<usize> = sides.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        if all.len() != 2 * d {
            return Err(Error::InvalidGraph(format!("cube {key:?} has repeated facets")));
        }
        let level = self.level_mut(d);
        if level.index.contains_key(&key) {
            return Err(Error::InvalidArgument(format!("duplicate {d}-cell key {key:?}")));
        }
        let i = level.keys.len();
        level.index.insert(key.clone(), i);
        level.keys.push(key);
        level.sides.push(sides);
        Ok(i)
    }

    /// The subcomplex spanned by the cells whose keys appear in `keep`.
    ///
    /// The key set must be closed under taking facets; a kept cell with a
    /// missing facet is an error. Kept cells keep their relative order, so
    /// restricting a complex to all of its own keys reproduces it exactly.
    pub fn restricted_to(&self, keep: &BTreeSet<String>) -> Result<CubeComplex> {
        let mut out = CubeComplex::new();
        for d in 0..self.levels.len() {
            for i in 0..self.n_cells(d) {
                let key = self.key(d, i);
                if !keep.contains(key) {
                    continue;
                }
                if d == 0 {
                    out.add_vertex(key.to_string())?;
                } else {
                    let facets: Vec<[&str; 2]> = self
                        .sides(d, i)
                        .iter()
                        .map(|pair| [self.key(d - 1, pair[0]), self.key(d - 1, pair[1])])
                        .collect();
                    out.add_cube(key.to_string(), &facets)?;
                }
            }
        }
        out.validate()?;
        Ok(out)
    }

    fn collapse(&self, d: usize, cell: usize, dir: usize, side: usize) -> usize {
        self.levels[d].sides[cell][dir][side]
    }

    /// Checks the corner structure every derived operation relies on.
    ///
    /// Squares must satisfy the endpoint rule: the s-th stored end of the
    /// direction-1 facet at side t is an endpoint of the direction-0 facet at
    /// side s (so corners can be read off the direction-1 edges). Higher
    /// cubes must have strictly commuting facet maps.
    pub fn validate(&self) -> Result<()> {
        // With cubes above dimension 2 present, flipped square gluings are
        // not supported: every square must be strictly index-aligned.
        let strict_squares = self.dim() >= 3;
        for sq in 0..self.n_cells(2) {
            let s = &self.levels[2].sides[sq];
            for side0 in 0..2 {
                let a_ends = self.ends(s[0][side0]);
                for side1 in 0..2 {
                    let corner = self.ends(s[1][side1])[side0];
                    let ok = if strict_squares {
                        a_ends[side1] == corner
                    } else {
                        a_ends.contains(&corner)
                    };
                    if !ok {
                        return Err(Error::InvariantViolation(format!(
                            "square {} has an inconsistent corner",
                            self.key(2, sq)
                        )));
                    }
                }
            }
        }
        for d in 3..self.levels.len() {
            for cell in 0..self.levels[d].keys.len() {
                for i in 0..d {
                    for j in i + 1..d {
                        for s in 0..2 {
                            for t in 0..2 {
                                // Collapsing j first leaves i at index i;
                                // collapsing i first shifts j down to j−1.
                                let a = self.collapse(d - 1, self.collapse(d, cell, j, t), i, s);
                                let b =
                                    self.collapse(d - 1, self.collapse(d, cell, i, s), j - 1, t);
                                if a != b {
                                    return Err(Error::InvariantViolation(format!(
                                        "facet maps of {} do not commute",
                                        self.key(d, cell)
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The 1-cell in direction `dir` at the corner selected by `side_choice`.
    fn corner_edge(&self, d: usize, cell: usize, dir: usize, side_choice: &[usize]) -> usize {
        let mut cur = cell;
        let mut cd = d;
        // Collapsing directions in descending order keeps every remaining
        // direction's index stable.
        for j in (0..d).rev() {
            if j == dir {
                continue;
            }
            cur = self.collapse(cd, cur, j, side_choice[j]);
            cd -= 1;
        }
        debug_assert_eq!(cd, 1);
        cur
    }

    /// The 0-cell at the corner selected by `side_choice`.
    fn corner_vertex(&self, d: usize, cell: usize, side_choice: &[usize]) -> usize {
        let mut cur = cell;
        let mut cd = d;
        for j in (0..d).rev() {
            cur = self.collapse(cd, cur, j, side_choice[j]);
            cd -= 1;
        }
        cur
    }

    fn each_corner(&self, d: usize, cell: usize, mut f: impl FnMut(usize, Vec<usize>)) {
        for mask in 0..(1usize << d) {
            let choice: Vec<usize> = (0..d).map(|j| mask >> j & 1).collect();
            let v = self.corner_vertex(d, cell, &choice);
            let mut edges: Vec<usize> =
                (0..d).map(|dir| self.corner_edge(d, cell, dir, &choice)).collect();
            edges.sort_unstable();
            f(v, edges);
        }
    }

    /// Connected components over 0-cells joined by 1-cells.
    pub fn component_count(&self) -> usize {
        let n = self.n_cells(0);
        let mut uf = UnionFind::new(n);
        for e in 0..self.n_cells(1) {
            let [a, b] = self.ends(e);
            uf.union(a, b);
        }
        let roots: BTreeSet<usize> = (0..n).map(|v| uf.find(v)).collect();
        roots.len()
    }

    /// Signed boundary entries of each d-cell, as (facet, coefficient) lists.
    ///
    /// A facet's coefficient carries an extra −1 when its stored orientation
    /// disagrees with the orientation the cube induces on it; for squares
    /// that alignment is read off the corner grid (only direction-0 facets
    /// can disagree, since corners are taken from the direction-1 edges).
    pub fn boundary_rows(&self, d: usize) -> Vec<Vec<(usize, i64)>> {
        let mut rows = Vec::with_capacity(self.n_cells(d));
        for cell in 0..self.n_cells(d) {
            let sides = &self.levels[d].sides[cell];
            let mut entries: Vec<(usize, i64)> = Vec::new();
            for (dir, pair) in sides.iter().enumerate() {
                let sign = if dir % 2 == 0 { 1 } else { -1 };
                for (side, &facet) in pair.iter().enumerate() {
                    let side_sign = if side == 1 { sign } else { -sign };
                    let alignment = if d == 2 && dir == 0 {
                        let stored = self.ends(facet);
                        let induced =
                            [self.ends(sides[1][0])[side], self.ends(sides[1][1])[side]];
                        if stored == induced {
                            1
                        } else {
                            -1
                        }
                    } else {
                        1
                    };
                    entries.push((facet, side_sign * alignment));
                }
            }
            rows.push(entries);
        }
        rows
    }

    /// Signed boundary matrix taking d-cells to (d−1)-cells (rows = d-cells).
    pub fn boundary_matrix(&self, d: usize) -> SparseMatrix {
        let mut m = SparseMatrix::new();
        for entries in self.boundary_rows(d) {
            m.push_row(entries);
        }
        m
    }

    /// Euler characteristic from the cell counts.
    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for d in 0..=self.dim() {
            let c = self.n_cells(d) as i64;
            chi += if d % 2 == 0 { c } else { -c };
        }
        chi
    }

    /// All 1-cells incident to each 0-cell.
    fn edges_at_vertices(&self) -> Vec<Vec<usize>> {
        let mut at = vec![Vec::new(); self.n_cells(0)];
        for e in 0..self.n_cells(1) {
            let [a, b] = self.ends(e);
            at[a].push(e);
            if b != a {
                at[b].push(e);
            }
        }
        at
    }

    /// Links of all 0-cells in one sweep.
    fn all_links(&self) -> Vec<Link> {
        let mut links: Vec<Link> = self
            .edges_at_vertices()
            .into_iter()
            .map(|vertices| Link { vertices, simplices: Vec::new() })
            .collect();
        for d in 2..=self.dim() {
            for cell in 0..self.n_cells(d) {
                self.each_corner(d, cell, |v, edges| links[v].simplices.push(edges));
            }
        }
        for link in &mut links {
            link.simplices.sort();
        }
        links
    }

    /// The link of a 0-cell.
    pub fn vertex_link(&self, v: usize) -> Result<Link> {
        if v >= self.n_cells(0) {
            return Err(Error::InvalidArgument(format!("no 0-cell with index {v}")));
        }
        Ok(self.all_links().swap_remove(v))
    }

    /// Nonpositive curvature: every vertex link is a simplicial flag complex.
    pub fn is_npc(&self) -> Result<bool> {
        for link in self.all_links() {
            // Degenerate or doubled corner simplices break simpliciality.
            let mut seen: BTreeSet<&Vec<usize>> = BTreeSet::new();
            for s in &link.simplices {
                let distinct: BTreeSet<usize> = s.iter().copied().collect();
                if distinct.len() != s.len() || !seen.insert(s) {
                    return Ok(false);
                }
            }
            if !link_is_flag(&link)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Parallelism classes of 1-cells under square opposition.
    pub fn hyperplanes(&self) -> Result<Vec<Hyperplane>> {
        if self.dim() > 2 {
            return Err(Error::Unsupported(
                "hyperplane analysis is limited to square complexes".into(),
            ));
        }
        Ok(self.hyperplane_classes().0)
    }

    /// Classes, plus the class index of every 1-cell.
    fn hyperplane_classes(&self) -> (Vec<Hyperplane>, Vec<usize>) {
        let ne = self.n_cells(1);
        let mut uf = UnionFind::new(ne);
        for sq in 0..self.n_cells(2) {
            for pair in self.levels[2].sides[sq].iter() {
                uf.union(pair[0], pair[1]);
            }
        }
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in 0..ne {
            by_root.entry(uf.find(e)).or_default().push(e);
        }
        let classes: Vec<Hyperplane> =
            by_root.into_values().map(|edge_class| Hyperplane { edge_class }).collect();
        let mut class_of = vec![0usize; ne];
        for (i, h) in classes.iter().enumerate() {
            for &e in &h.edge_class {
                class_of[e] = i;
            }
        }
        (classes, class_of)
    }

    /// The four hyperplane pathologies of a square complex.
    pub fn specialness_report(&self) -> Result<SpecialnessReport> {
        if self.dim() > 2 {
            return Err(Error::Unsupported(
                "specialness analysis is limited to square complexes".into(),
            ));
        }
        let (classes, class_of) = self.hyperplane_classes();

        // Self-intersection: both direction pairs of one square in one class.
        let mut self_intersecting: BTreeSet<usize> = BTreeSet::new();
        for sq in 0..self.n_cells(2) {
            let s = &self.levels[2].sides[sq];
            if class_of[s[0][0]] == class_of[s[1][0]] {
                self_intersecting.insert(class_of[s[0][0]]);
            }
        }

        // One-sidedness: parity union-find over orientation transport. The
        // transport across a square matches endpoints joined by the other
        // direction's edges; a parity conflict inside a class flips it.
        let ne = self.n_cells(1);
        let mut puf = ParityUnionFind::new(ne);
        for sq in 0..self.n_cells(2) {
            let s = &self.levels[2].sides[sq];
            for dir in 0..2 {
                let [lo, hi] = s[dir];
                let other = s[1 - dir];
                let flip = transport_flips(self, lo, hi, other);
                puf.union(lo, hi, flip);
            }
        }
        let mut one_sided: BTreeSet<usize> = BTreeSet::new();
        for e in 0..ne {
            if puf.flagged(e) {
                one_sided.insert(class_of[e]);
            }
        }

        // Corner census: which unordered edge pairs span a square corner at
        // each vertex.
        let mut corners: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
        for sq in 0..self.n_cells(2) {
            self.each_corner(2, sq, |v, edges| {
                corners.insert((v, edges[0], edges[1]));
            });
        }

        // Osculation scan over edge pairs at each vertex.
        let mut self_osculating: BTreeSet<usize> = BTreeSet::new();
        let mut osculating_pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (v, edges) in self.edges_at_vertices().into_iter().enumerate() {
            for (i, &e) in edges.iter().enumerate() {
                for &f in edges.iter().skip(i + 1) {
                    let (a, b) = (e.min(f), e.max(f));
                    if corners.contains(&(v, a, b)) {
                        continue;
                    }
                    let (ca, cb) = (class_of[a], class_of[b]);
                    if ca == cb {
                        self_osculating.insert(ca);
                    } else {
                        osculating_pairs.insert((ca.min(cb), ca.max(cb)));
                    }
                }
            }
        }

        // Inter-osculation: pairs that cross somewhere and osculate somewhere.
        let mut crossing_pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for sq in 0..self.n_cells(2) {
            let s = &self.levels[2].sides[sq];
            let (ca, cb) = (class_of[s[0][0]], class_of[s[1][0]]);
            if ca != cb {
                crossing_pairs.insert((ca.min(cb), ca.max(cb)));
            }
        }
        let inter_osculating: Vec<(usize, usize)> =
            crossing_pairs.intersection(&osculating_pairs).copied().collect();

        Ok(SpecialnessReport {
            hyperplane_count: classes.len(),
            self_intersecting: self_intersecting.into_iter().collect(),
            one_sided: one_sided.into_iter().collect(),
            self_osculating: self_osculating.into_iter().collect(),
            inter_osculating,
        })
    }

    /// True iff the complex is 2-dimensional, every 1-cell lies in exactly
    /// two squares, and every vertex link is a single circle.
    pub fn is_closed_surface(&self) -> bool {
        if self.dim() != 2 || self.n_cells(0) == 0 {
            return false;
        }
        let mut edge_use = vec![0usize; self.n_cells(1)];
        for sq in 0..self.n_cells(2) {
            for pair in self.levels[2].sides[sq].iter() {
                edge_use[pair[0]] += 1;
                edge_use[pair[1]] += 1;
            }
        }
        if edge_use.iter().any(|&u| u != 2) {
            return false;
        }
        self.all_links().iter().all(link_is_single_circle)
    }

    /// `Some(n)` iff the complex is the cycle graph with n vertices.
    pub fn is_cycle_graph(&self) -> Option<usize> {
        if self.dim() != 1 {
            return None;
        }
        let (nv, ne) = (self.n_cells(0), self.n_cells(1));
        if nv != ne || nv < 3 || self.component_count() != 1 {
            return None;
        }
        let mut deg = vec![0usize; nv];
        for e in 0..ne {
            let [a, b] = self.ends(e);
            deg[a] += 1;
            deg[b] += 1;
        }
        deg.iter().all(|&d| d == 2).then_some(nv)
    }
}

/// Euler characteristic and rational Betti numbers, with the default
/// dimension cap.
pub fn homology_summary(x: &CubeComplex) -> Result<(i64, Vec<usize>)> {
    homology_summary_with_cap(x, HOMOLOGY_DIM_CAP)
}

pub fn homology_summary_with_cap(x: &CubeComplex, cap: usize) -> Result<(i64, Vec<usize>)> {
    let dim = x.dim();
    if dim > cap {
        return Err(Error::Unsupported(format!(
            "homology of a {dim}-dimensional complex exceeds the cap of {cap}"
        )));
    }
    let mut ranks = vec![0usize; dim + 2];
    for d in 1..=dim {
        ranks[d] = x.boundary_matrix(d).rank();
    }
    let betti: Vec<usize> = (0..=dim).map(|d| x.n_cells(d) - ranks[d] - ranks[d + 1]).collect();
    Ok((x.euler_characteristic(), betti))
}

/// Whether orientation transport between the opposite 1-cells `lo`, `hi`
/// across a square (whose other direction pair is `other`) reverses the
/// stored end order.
fn transport_flips(x: &CubeComplex, lo: usize, hi: usize, other: [usize; 2]) -> bool {
    let le = x.ends(lo);
    let he = x.ends(hi);
    for b in other {
        let be = x.ends(b);
        for s in 0..2 {
            if be[s] == le[0] {
                let partner = be[1 - s];
                if partner == he[0] {
                    return false;
                }
                if partner == he[1] {
                    return true;
                }
            }
        }
    }
    // A validated square always joins the corners.
    false
}

fn link_is_flag(link: &Link) -> Result<bool> {
    // Adjacency from the 2-dimensional corners (pairs).
    let verts = &link.vertices;
    let pos: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let n = verts.len();
    let mut adj = vec![vec![false; n]; n];
    let mut present: BTreeSet<Vec<usize>> = BTreeSet::new();
    for s in &link.simplices {
        present.insert(s.clone());
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                let (a, b) = (pos[&s[i]], pos[&s[j]]);
                adj[a][b] = true;
                adj[b][a] = true;
            }
        }
    }
    // Every clique of size ≥ 3 must appear inside some corner simplex.
    let mut cap = CapCounter::new("flag-condition clique scan");
    let mut clique: Vec<usize> = Vec::new();
    grow_cliques(n, &adj, verts, &present, &mut clique, 0, &mut cap)
}

fn grow_cliques(
    n: usize,
    adj: &[Vec<bool>],
    verts: &[usize],
    present: &BTreeSet<Vec<usize>>,
    clique: &mut Vec<usize>,
    from: usize,
    cap: &mut CapCounter,
) -> Result<bool> {
    if clique.len() >= 3 {
        cap.tick()?;
        let named: Vec<usize> = clique.iter().map(|&i| verts[i]).collect();
        let spanned = present.iter().any(|s| named.iter().all(|v| s.contains(v)));
        if !spanned {
            return Ok(false);
        }
    }
    for cand in from..n {
        if clique.iter().all(|&c| adj[c][cand]) {
            clique.push(cand);
            let ok = grow_cliques(n, adj, verts, present, clique, cand + 1, cap)?;
            clique.pop();
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn link_is_single_circle(link: &Link) -> bool {
    // The 1-skeleton (with multiplicity) must be connected with all degrees 2.
    let verts = &link.vertices;
    if verts.is_empty() {
        return false;
    }
    let pos: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut deg = vec![0usize; verts.len()];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
    for s in &link.simplices {
        if s.len() != 2 {
            return false;
        }
        let (a, b) = (pos[&s[0]], pos[&s[1]]);
        deg[a] += 1;
        deg[b] += 1;
        adj[a].push(b);
        adj[b].push(a);
    }
    if deg.iter().any(|&d| d != 2) {
        return false;
    }
    let mut seen = vec![false; verts.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    count == verts.len()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Union-find carrying a parity bit to each element's root plus a "parity
/// conflict seen" flag per class.
struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<u8>,
    flagged: Vec<bool>,
}

impl ParityUnionFind {
    fn new(n: usize) -> ParityUnionFind {
        ParityUnionFind { parent: (0..n).collect(), parity: vec![0; n], flagged: vec![false; n] }
    }

    /// Root and parity of the path to it.
    fn find(&mut self, x: usize) -> (usize, u8) {
        if self.parent[x] == x {
            return (x, 0);
        }
        let (root, p) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.parity[x] ^= p;
        (root, self.parity[x])
    }

    fn union(&mut self, a: usize, b: usize, flip: bool) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        let rel = pa ^ pb ^ (flip as u8);
        if ra == rb {
            if rel == 1 {
                self.flagged[ra] = true;
            }
            return;
        }
        let (keep, drop) = (ra.min(rb), ra.max(rb));
        self.parent[drop] = keep;
        self.parity[drop] = rel;
        self.flagged[keep] |= self.flagged[drop];
    }

    fn flagged(&mut self, x: usize) -> bool {
        let (root, _) = self.find(x);
        self.flagged[root]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Cycle complex with n vertices.
    fn polygon(n: usize) -> CubeComplex {
        let mut x = CubeComplex::new();
        for i in 0..n {
            x.add_vertex(format!("v{i}")).unwrap();
        }
        for i in 0..n {
            let j = (i + 1) % n;
            x.add_cube(format!("e{i}"), &[[&format!("v{i}"), &format!("v{j}")]]).unwrap();
        }
        x
    }

    /// m×n grid of squares with both pairs of opposite sides glued.
    fn torus(m: usize, n: usize) -> CubeComplex {
        let mut x = CubeComplex::new();
        for i in 0..m {
            for j in 0..n {
                x.add_vertex(format!("v{i}-{j}")).unwrap();
            }
        }
        for i in 0..m {
            for j in 0..n {
                let i1 = (i + 1) % m;
                let j1 = (j + 1) % n;
                x.add_cube(format!("h{i}-{j}"), &[[&format!("v{i}-{j}"), &format!("v{i1}-{j}")]])
                    .unwrap();
                x.add_cube(format!("e{i}-{j}"), &[[&format!("v{i}-{j}"), &format!("v{i}-{j1}")]])
                    .unwrap();
            }
        }
        for i in 0..m {
            for j in 0..n {
                let i1 = (i + 1) % m;
                let j1 = (j + 1) % n;
                x.add_cube(
                    format!("s{i}-{j}"),
                    &[
                        [&format!("e{i}-{j}"), &format!("e{i1}-{j}")],
                        [&format!("h{i}-{j}"), &format!("h{i}-{j1}")],
                    ],
                )
                .unwrap();
            }
        }
        x.validate().unwrap();
        x
    }

    /// Surface of a 3-cube: 8 vertices, 12 edges, 6 squares.
    fn cube_surface() -> CubeComplex {
        let mut x = CubeComplex::new();
        let name = |bits: [usize; 3]| format!("c{}{}{}", bits[0], bits[1], bits[2]);
        for mask in 0..8usize {
            x.add_vertex(name([mask & 1, mask >> 1 & 1, mask >> 2 & 1])).unwrap();
        }
        let edge_name =
            |axis: usize, bits: [usize; 3]| format!("E{axis}-{}{}{}", bits[0], bits[1], bits[2]);
        for axis in 0..3 {
            for mask in 0..8usize {
                let bits = [mask & 1, mask >> 1 & 1, mask >> 2 & 1];
                if bits[axis] == 1 {
                    continue;
                }
                let mut hi = bits;
                hi[axis] = 1;
                x.add_cube(edge_name(axis, bits), &[[&name(bits), &name(hi)]]).unwrap();
            }
        }
        for fixed_axis in 0..3usize {
            let free: Vec<usize> = (0..3).filter(|&a| a != fixed_axis).collect();
            for fixed_val in 0..2usize {
                let mut base = [0usize; 3];
                base[fixed_axis] = fixed_val;
                // Direction 0 = coordinate free[0]: its facets are the edges
                // along free[1] at free[0] ∈ {0, 1}, and vice versa.
                let mut at_free0_hi = base;
                at_free0_hi[free[0]] = 1;
                let mut at_free1_hi = base;
                at_free1_hi[free[1]] = 1;
                let sides = [
                    [edge_name(free[1], base), edge_name(free[1], at_free0_hi)],
                    [edge_name(free[0], base), edge_name(free[0], at_free1_hi)],
                ];
                let refs: Vec<[&str; 2]> =
                    sides.iter().map(|[a, b]| [a.as_str(), b.as_str()]).collect();
                x.add_cube(format!("F{fixed_axis}-{fixed_val}"), &refs).unwrap();
            }
        }
        x.validate().unwrap();
        x
    }

    /// Möbius band from k squares: vertical edges glued with a flip at the
    /// wrap-around.
    fn moebius(k: usize) -> CubeComplex {
        let mut x = CubeComplex::new();
        for i in 0..k {
            x.add_vertex(format!("a{i}")).unwrap();
            x.add_vertex(format!("b{i}")).unwrap();
        }
        for i in 0..k {
            x.add_cube(format!("V{i}"), &[[&format!("a{i}"), &format!("b{i}")]]).unwrap();
        }
        for i in 0..k {
            if i + 1 < k {
                x.add_cube(format!("Ha{i}"), &[[&format!("a{i}"), &format!("a{}", i + 1)]])
                    .unwrap();
                x.add_cube(format!("Hb{i}"), &[[&format!("b{i}"), &format!("b{}", i + 1)]])
                    .unwrap();
            } else {
                x.add_cube(format!("Ha{i}"), &[[&format!("a{i}"), "b0"]]).unwrap();
                x.add_cube(format!("Hb{i}"), &[[&format!("b{i}"), "a0"]]).unwrap();
            }
        }
        for i in 0..k {
            let j = (i + 1) % k;
            x.add_cube(
                format!("S{i}"),
                &[
                    [&format!("V{i}"), &format!("V{j}")],
                    [&format!("Ha{i}"), &format!("Hb{i}")],
                ],
            )
            .unwrap();
        }
        x.validate().unwrap();
        x
    }

    /// Two squares in a strip whose cross-direction first and last edges
    /// share a vertex without a square corner there.
    fn osculating_strip() -> CubeComplex {
        let mut x = CubeComplex::new();
        for v in ["p", "b0", "a1", "b1", "b2"] {
            x.add_vertex(v).unwrap();
        }
        x.add_cube("E0", &[["p", "b0"]]).unwrap();
        x.add_cube("E1", &[["a1", "b1"]]).unwrap();
        x.add_cube("E2", &[["p", "b2"]]).unwrap();
        x.add_cube("F0", &[["p", "a1"]]).unwrap();
        x.add_cube("F1", &[["b0", "b1"]]).unwrap();
        x.add_cube("G0", &[["a1", "p"]]).unwrap();
        x.add_cube("G1", &[["b1", "b2"]]).unwrap();
        x.add_cube("S0", &[["E0", "E1"], ["F0", "F1"]]).unwrap();
        x.add_cube("S1", &[["E1", "E2"], ["G0", "G1"]]).unwrap();
        x.validate().unwrap();
        x
    }

    /// Three squares pairwise sharing edge-germs around one vertex, so the
    /// link at that vertex is a triangle.
    fn link_triangle() -> CubeComplex {
        let mut x = CubeComplex::new();
        for v in ["p", "x", "y", "z", "wxy", "wyz", "wxz"] {
            x.add_vertex(v).unwrap();
        }
        for (e, a, b) in [
            ("ex", "p", "x"),
            ("ey", "p", "y"),
            ("ez", "p", "z"),
            ("cxy", "y", "wxy"),
            ("dxy", "x", "wxy"),
            ("cyz", "z", "wyz"),
            ("dyz", "y", "wyz"),
            ("cxz", "z", "wxz"),
            ("dxz", "x", "wxz"),
        ] {
            x.add_cube(e, &[[a, b]]).unwrap();
        }
        x.add_cube("Sxy", &[["ex", "cxy"], ["ey", "dxy"]]).unwrap();
        x.add_cube("Syz", &[["ey", "cyz"], ["ez", "dyz"]]).unwrap();
        x.add_cube("Sxz", &[["ex", "cxz"], ["ez", "dxz"]]).unwrap();
        x.validate().unwrap();
        x
    }

    #[test]
    fn polygon_basics() {
        let hexagon = polygon(6);
        assert_eq!(hexagon.dim(), 1);
        assert_eq!(hexagon.cell_counts(), vec![6, 6]);
        assert_eq!(hexagon.is_cycle_graph(), Some(6));
        assert!(!hexagon.is_closed_surface());
        let (chi, betti) = homology_summary(&hexagon).unwrap();
        assert_eq!(chi, 0);
        assert_eq!(betti, vec![1, 1]);
        // No squares: every class is a singleton, links are isolated points.
        assert_eq!(hexagon.hyperplanes().unwrap().len(), 6);
        let link = hexagon.vertex_link(0).unwrap();
        assert_eq!(link.vertices.len(), 2);
        assert!(link.simplices.is_empty());
        assert!(hexagon.is_npc().unwrap());
        assert!(hexagon.specialness_report().unwrap().is_special());
    }

    #[test]
    fn single_square() {
        let mut x = CubeComplex::new();
        for v in ["00", "01", "10", "11"] {
            x.add_vertex(v).unwrap();
        }
        x.add_cube("bottom", &[["00", "10"]]).unwrap();
        x.add_cube("top", &[["01", "11"]]).unwrap();
        x.add_cube("left", &[["00", "01"]]).unwrap();
        x.add_cube("right", &[["10", "11"]]).unwrap();
        x.add_cube("sq", &[["left", "right"], ["bottom", "top"]]).unwrap();
        x.validate().unwrap();
        let (chi, betti) = homology_summary(&x).unwrap();
        assert_eq!(chi, 1);
        assert_eq!(betti, vec![1, 0, 0]);
        let hs = x.hyperplanes().unwrap();
        assert_eq!(hs.len(), 2);
        assert!(hs.iter().all(|h| h.edge_class.len() == 2));
        assert!(x.is_npc().unwrap());
        assert!(x.specialness_report().unwrap().is_special());
        // Corner link at a vertex of a square: a single edge.
        let v = x.index_of(0, "00").unwrap();
        let link = x.vertex_link(v).unwrap();
        assert_eq!(link.vertices.len(), 2);
        assert_eq!(link.simplices.len(), 1);
        assert!(!x.is_closed_surface());
    }

    #[test]
    fn torus_is_a_surface() {
        let t = torus(3, 3);
        assert_eq!(t.cell_counts(), vec![9, 18, 9]);
        let (chi, betti) = homology_summary(&t).unwrap();
        assert_eq!(chi, 0);
        assert_eq!(betti, vec![1, 2, 1]);
        assert!(t.is_closed_surface());
        assert!(t.is_npc().unwrap());
        assert!(t.specialness_report().unwrap().is_special());
        assert_eq!(t.hyperplanes().unwrap().len(), 6);
    }

    #[test]
    fn cube_surface_is_a_sphere() {
        let c = cube_surface();
        assert_eq!(c.cell_counts(), vec![8, 12, 6]);
        let (chi, betti) = homology_summary(&c).unwrap();
        assert_eq!(chi, 2);
        assert_eq!(betti, vec![1, 0, 1]);
        assert!(c.is_closed_surface());
        // Corners of a cube have triangular links: positively curved.
        assert!(!c.is_npc().unwrap());
        // Still special: three two-sided axis classes, no pathologies.
        let report = c.specialness_report().unwrap();
        assert_eq!(report.hyperplane_count, 3);
        assert!(report.is_special());
    }

    #[test]
    fn moebius_band_is_one_sided() {
        let m = moebius(4);
        let report = m.specialness_report().unwrap();
        assert_eq!(report.one_sided.len(), 1);
        assert!(report.self_intersecting.is_empty());
        // Homotopy equivalent to a circle.
        let (chi, betti) = homology_summary(&m).unwrap();
        assert_eq!(chi, 0);
        assert_eq!(betti, vec![1, 1, 0]);
        assert!(m.is_npc().unwrap());
    }

    #[test]
    fn osculating_strip_detected() {
        let x = osculating_strip();
        let report = x.specialness_report().unwrap();
        assert!(!report.self_osculating.is_empty());
        assert!(report.one_sided.is_empty());
        assert!(x.is_npc().unwrap());
    }

    #[test]
    fn link_triangle_fails_npc() {
        let x = link_triangle();
        assert!(!x.is_npc().unwrap());
        // The same corner pattern that makes the link a triangle forces every
        // pair of the three edge classes to cross in one square and meet at a
        // bare corner elsewhere, so all three pairs inter-osculate while the
        // single-hyperplane pathologies stay absent.
        let report = x.specialness_report().unwrap();
        assert!(report.self_intersecting.is_empty());
        assert!(report.one_sided.is_empty());
        assert!(report.self_osculating.is_empty());
        assert_eq!(report.inter_osculating.len(), 3);
        assert!(!report.is_special());
    }

    #[test]
    fn boundary_squares_to_zero() {
        for x in [torus(3, 3), cube_surface(), moebius(5)] {
            let edge_rows = x.boundary_rows(1);
            for (sq, row) in x.boundary_rows(2).iter().enumerate() {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(edge, coef) in row {
                    for &(v, c) in &edge_rows[edge] {
                        *acc.entry(v).or_insert(0) += coef * c;
                    }
                }
                assert!(acc.values().all(|&v| v == 0), "edges of square {sq} do not cancel");
            }
        }
    }

    #[test]
    fn component_counts() {
        let mut x = polygon(3);
        x.add_vertex("lonely").unwrap();
        assert_eq!(x.component_count(), 2);
        let (_, betti) = homology_summary(&x).unwrap();
        assert_eq!(betti[0], 2);
    }

    #[test]
    fn duplicate_and_degenerate_cells_rejected() {
        let mut x = CubeComplex::new();
        x.add_vertex("a").unwrap();
        assert!(x.add_vertex("a").is_err());
        x.add_vertex("b").unwrap();
        x.add_cube("e", &[["a", "b"]]).unwrap();
        assert!(x.add_cube("loop", &[["a", "a"]]).is_err());
        assert!(x.add_cube("e2", &[["a", "missing"]]).is_err());
    }
}
