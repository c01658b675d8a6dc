//! The intersection pattern of the maximal product subcomplexes of a
//! two-strand configuration space, recorded as a labeled simplicial complex.
//!
//! Vertices are the maximal products; a subset spans a simplex when the
//! member products share at least one configuration cell, and every simplex
//! carries the factor pair whose product is exactly that shared piece. The
//! construction is only defined when each such shared piece is itself a
//! single standard product — graphs violating that are rejected as
//! unsupported, but their one-skeleton is still available through
//! [`one_skeleton_graph`], which tests for a shared standard piece directly
//! on the factors.

use crate::error::{CapCounter, Error, Result};
use crate::graph::{self, Graph, Sub};
use crate::products::{self, AbstractGraph, StandardPair};
use crate::rank::SparseMatrix;
use std::collections::{BTreeMap, BTreeSet};

/// Nerve of the maximal product subcomplexes, with labeled simplices.
///
/// `simplices_by_dim[d]` holds the strictly increasing index tuples of
/// length `d + 1`; every simplex has an entry in `labels`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionComplex {
    pub vertex_pairs: Vec<StandardPair>,
    pub vertex_keys: Vec<String>,
    pub simplices_by_dim: Vec<BTreeSet<Vec<usize>>>,
    pub labels: BTreeMap<Vec<usize>, StandardPair>,
}

impl IntersectionComplex {
    pub fn n_vertices(&self) -> usize {
        self.vertex_pairs.len()
    }

    pub fn n_simplices(&self, d: usize) -> usize {
        self.simplices_by_dim.get(d).map_or(0, |s| s.len())
    }

    pub fn dim(&self) -> usize {
        (0..self.simplices_by_dim.len()).rev().find(|&d| self.n_simplices(d) > 0).unwrap_or(0)
    }

    /// The vertices and 1-simplices as an abstract graph.
    pub fn one_skeleton(&self) -> AbstractGraph {
        let edges: BTreeSet<(usize, usize)> = self
            .simplices_by_dim
            .get(1)
            .map(|es| es.iter().map(|e| (e[0], e[1])).collect())
            .unwrap_or_default();
        AbstractGraph { labels: self.vertex_keys.clone(), edges }
    }

    pub fn is_connected(&self) -> bool {
        self.one_skeleton().is_connected()
    }

    /// Whether the complex is a single simplex on all of its vertices
    /// (trivially true when there are no vertices).
    pub fn is_simplex(&self) -> bool {
        let n = self.vertex_pairs.len();
        if n == 0 {
            return true;
        }
        let full: Vec<usize> = (0..n).collect();
        self.simplices_by_dim.get(n - 1).is_some_and(|s| s.contains(&full))
    }

    /// First rational Betti number of the two-skeleton.
    pub fn betti1_two_skeleton(&self) -> usize {
        let ones: Vec<Vec<usize>> = self
            .simplices_by_dim
            .get(1)
            .map(|s| s.iter().cloned().collect())
            .unwrap_or_default();
        let edge_index: BTreeMap<Vec<usize>, usize> =
            ones.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let mut d1 = SparseMatrix::new();
        for e in &ones {
            d1.push_row([(e[0], -1), (e[1], 1)]);
        }
        let rank1 = d1.rank();
        let mut d2 = SparseMatrix::new();
        if let Some(twos) = self.simplices_by_dim.get(2) {
            for t in twos {
                let entries = [
                    (edge_index[&vec![t[1], t[2]]], 1i64),
                    (edge_index[&vec![t[0], t[2]]], -1),
                    (edge_index[&vec![t[0], t[1]]], 1),
                ];
                d2.push_row(entries);
            }
        }
        let rank2 = d2.rank();
        ones.len() - rank1 - rank2
    }

    /// Whether every clique of the one-skeleton spans a simplex.
    pub fn is_flag(&self) -> Result<bool> {
        fn grow(
            ic: &IntersectionComplex,
            adj: &[BTreeSet<usize>],
            clique: &mut Vec<usize>,
            candidates: &[usize],
            counter: &mut CapCounter,
        ) -> Result<bool> {
            for (pos, &v) in candidates.iter().enumerate() {
                counter.tick()?;
                clique.push(v);
                if clique.len() >= 3 {
                    let d = clique.len() - 1;
                    if !ic.simplices_by_dim.get(d).is_some_and(|s| s.contains(clique)) {
                        return Ok(false);
                    }
                }
                let narrowed: Vec<usize> = candidates[pos + 1..]
                    .iter()
                    .copied()
                    .filter(|w| adj[v].contains(w))
                    .collect();
                if !grow(ic, adj, clique, &narrowed, counter)? {
                    return Ok(false);
                }
                clique.pop();
            }
            Ok(true)
        }

        let n = self.vertex_pairs.len();
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        if let Some(es) = self.simplices_by_dim.get(1) {
            for e in es {
                adj[e[0]].insert(e[1]);
                adj[e[1]].insert(e[0]);
            }
        }
        let mut counter = CapCounter::new("growing cliques for the flag check");
        let all: Vec<usize> = (0..n).collect();
        grow(self, &adj, &mut Vec::new(), &all, &mut counter)
    }

    /// Structural soundness: tuples strictly increasing and in range, every
    /// simplex labeled, faces present, and labels monotone under faces (the
    /// shared piece of a larger subset sits inside that of any subset).
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvariantViolation(msg));
        for (d, simps) in self.simplices_by_dim.iter().enumerate() {
            for s in simps {
                if s.len() != d + 1
                    || !s.windows(2).all(|w| w[0] < w[1])
                    || s.iter().any(|&i| i >= self.vertex_pairs.len())
                {
                    return bad(format!("malformed {d}-simplex {s:?}"));
                }
                let Some(label) = self.labels.get(s) else {
                    return bad(format!("unlabeled simplex {s:?}"));
                };
                let label_cells = label.cells(g)?;
                if d == 0 {
                    continue;
                }
                for skip in 0..s.len() {
                    let face: Vec<usize> =
                        s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    if !self.simplices_by_dim[d - 1].contains(&face) {
                        return bad(format!("simplex {s:?} is missing its face {face:?}"));
                    }
                    let face_cells = self.labels[&face].cells(g)?;
                    if !label_cells.is_subset(&face_cells) {
                        return bad(format!("label of {s:?} leaks outside the label of {face:?}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Build the intersection complex of the maximal products of `g`.
///
/// Errors as unsupported when some subset of products meets in more than one
/// piece, or in a piece that is not itself a standard product — the labeled
/// complex is not defined there. The one-skeleton alone is still available
/// for such graphs through [`one_skeleton_graph`].
pub fn build_intersection_complex(g: &Graph) -> Result<IntersectionComplex> {
    let products = products::maximal_products(g)?;
    let mut cellsets = Vec::new();
    for p in &products {
        cellsets.push(p.cells(g)?);
    }
    let mut simplices_by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
    let mut labels: BTreeMap<Vec<usize>, StandardPair> = BTreeMap::new();
    for (subset, cells) in products::subset_intersections(&cellsets, usize::MAX)? {
        let label = if subset.len() == 1 {
            products[subset[0]].clone()
        } else {
            let comps = products::cell_components(&cells);
            if comps.len() != 1 {
                return Err(Error::Unsupported(format!(
                    "products {subset:?} meet in {} separate pieces; \
                     only single-piece intersections are supported",
                    comps.len()
                )));
            }
            match products::standard_component_pair(g, &comps[0])? {
                Some(pair) => pair,
                None => {
                    return Err(Error::Unsupported(format!(
                        "products {subset:?} meet in a piece that is not a standard product"
                    )));
                }
            }
        };
        let d = subset.len() - 1;
        while simplices_by_dim.len() <= d {
            simplices_by_dim.push(BTreeSet::new());
        }
        simplices_by_dim[d].insert(subset.clone());
        labels.insert(subset, label);
    }
    let ic = IntersectionComplex {
        vertex_keys: products.iter().map(|p| p.key(g)).collect(),
        vertex_pairs: products,
        simplices_by_dim,
        labels,
    };
    ic.validate(g)?;
    Ok(ic)
}

/// Headline readings of the intersection complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IcAnalysis {
    pub connected: bool,
    pub betti1: usize,
    pub flag: bool,
}

pub fn ic_analysis(g: &Graph) -> Result<IcAnalysis> {
    let ic = build_intersection_complex(g)?;
    Ok(IcAnalysis {
        connected: ic.is_connected(),
        betti1: ic.betti1_two_skeleton(),
        flag: ic.is_flag()?,
    })
}

/// The one-skeleton of the intersection pattern, defined for every graph.
///
/// Two maximal products are adjacent when their intersection contains a
/// standard product, i.e. when for some alignment of the factors both
/// pairwise factor intersections keep a leafless core with an edge. On
/// graphs where [`build_intersection_complex`] succeeds this agrees with its
/// one-skeleton; on the rest it is the faithful fallback.
pub fn one_skeleton_graph(g: &Graph) -> Result<AbstractGraph> {
    let products = products::maximal_products(g)?;
    let labels: Vec<String> = products.iter().map(|p| p.key(g)).collect();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..products.len() {
        for j in (i + 1)..products.len() {
            if share_standard_piece(g, &products[i], &products[j]) {
                edges.insert((i, j));
            }
        }
    }
    Ok(AbstractGraph { labels, edges })
}

fn share_standard_piece(g: &Graph, a: &StandardPair, b: &StandardPair) -> bool {
    let alignments = [
        [(&a.first, &b.first), (&a.second, &b.second)],
        [(&a.first, &b.second), (&a.second, &b.first)],
    ];
    for pairs in alignments {
        let ok = pairs.iter().all(|(x, y)| {
            !graph::leafless_core(g, &sub_intersection(x, y)).is_trivial()
        });
        if ok {
            return true;
        }
    }
    false
}

fn sub_intersection(a: &Sub, b: &Sub) -> Sub {
    Sub {
        verts: a.verts.intersection(&b.verts).copied().collect(),
        edges: a.edges.intersection(&b.edges).copied().collect(),
    }
}
