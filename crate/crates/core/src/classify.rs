//! Braid-group verdicts read off the graph: freeness and hyperbolicity by
//! strand count, free ranks (closed-form where a formula exists, homological
//! otherwise), detection of single-essential-vertex shapes, and maximal
//! free-abelian witnesses.

use crate::error::{CapCounter, Error, Result};
use crate::graph::{self, Graph, Sub, VId};
use crate::{cube, ud};
use std::collections::BTreeSet;

/// A graph shape with at most one essential vertex, up to homeomorphism:
/// `k` pendant arcs and `l` triangles sharing a single center. The rank
/// formula needs `k + 2l ≥ 2`; degenerate shapes (point `(0,0)`, arc
/// `(1,0)`) are still reported by detection and rejected by the formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElementaryGrapeType {
    pub k: usize,
    pub l: usize,
}

/// Recognizes the minimal model of `g` as `k` arcs plus `l` triangles at one
/// center: `Some` iff `g` is connected with at most one essential vertex and
/// every cycle through it is a triangle after smoothing.
pub fn detect_elementary(g: &Graph) -> Option<ElementaryGrapeType> {
    if g.n_vertices() == 0 || !g.is_connected() {
        return None;
    }
    let m = graph::smooth_to_minimal_model(g);
    let essential: Vec<VId> = m.vertex_ids().filter(|&v| m.degree(v) >= 3).collect();
    match essential.len() {
        0 => {
            if m.n_edges() == 0 {
                Some(ElementaryGrapeType { k: 0, l: 0 })
            } else if m.n_vertices() == 2 && m.n_edges() == 1 {
                Some(ElementaryGrapeType { k: 1, l: 0 })
            } else if m.vertex_ids().all(|v| m.degree(v) == 2) {
                Some(ElementaryGrapeType { k: 0, l: 1 })
            } else {
                None
            }
        }
        1 => {
            let c = essential[0];
            let (mut k, mut l) = (0usize, 0usize);
            let mut seen: BTreeSet<VId> = BTreeSet::from([c]);
            for w in m.neighbors(c) {
                if seen.contains(&w) {
                    continue;
                }
                match m.degree(w) {
                    1 => {
                        k += 1;
                        seen.insert(w);
                    }
                    2 => {
                        let other = m.neighbors(w).find(|&x| x != c)?;
                        let closes_triangle = m.degree(other) == 2
                            && m.edge_id(other, c).is_some()
                            && m.neighbors(other).all(|x| x == c || x == w);
                        if !closes_triangle {
                            return None;
                        }
                        l += 1;
                        seen.insert(w);
                        seen.insert(other);
                    }
                    _ => return None,
                }
            }
            if seen.len() != m.n_vertices() || m.n_edges() != k + 3 * l {
                return None;
            }
            Some(ElementaryGrapeType { k, l })
        }
        _ => None,
    }
}

fn binom(a: usize, b: i64) -> i128 {
    if b < 0 || b as usize > a {
        return 0;
    }
    let b = (b as usize).min(a - b as usize);
    let mut acc: i128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// Free rank of the `n`-strand braid group of the `(k, l)` shape:
/// `N = C(n+k+l−2, k+l−1)·(k+2l−2) − C(n+k+l−2, k+l−2) + 1`.
pub fn elementary_rank(t: &ElementaryGrapeType, n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidArgument("strand count must be positive".into()));
    }
    if t.k + 2 * t.l < 2 {
        return Err(Error::InvalidArgument(format!(
            "rank formula needs k + 2l >= 2, got k={} l={}",
            t.k, t.l
        )));
    }
    let a = n + t.k + t.l - 2;
    let s = (t.k + t.l) as i64;
    let value =
        binom(a, s - 1) * (t.k + 2 * t.l - 2) as i128 - binom(a, s - 2) + 1;
    if value < 0 {
        return Err(Error::InvariantViolation("rank formula went negative".into()));
    }
    Ok(value as usize)
}

fn essential_vertices(g: &Graph) -> Vec<VId> {
    g.vertex_ids().filter(|&v| g.degree(v) >= 3).collect()
}

fn is_tree(g: &Graph) -> bool {
    g.is_connected() && g.n_edges() + 1 == g.n_vertices()
}

/// Whether the `n`-strand braid group of `g` is free.
pub fn braid_free(g: &Graph, n: usize) -> Result<bool> {
    match n {
        0 => Err(Error::InvalidArgument("strand count must be positive".into())),
        1 => Ok(true),
        2 => Ok(graph::is_planar(g) && !graph::has_two_disjoint_cycles(g)?),
        3 => {
            if is_tree(g) || detect_elementary(g).is_some() {
                return Ok(true);
            }
            let m = graph::smooth_to_minimal_model(g);
            let essential = essential_vertices(&m);
            let cycles = graph::enumerate_cycles(&m)?;
            if cycles.len() == 1 && essential.iter().all(|v| cycles[0].verts.contains(v)) {
                return Ok(true);
            }
            // Two essential vertices with every cycle through both: free
            // exactly when the leafless core is a theta of three arcs.
            if essential.len() == 2
                && cycles.iter().all(|c| essential.iter().all(|v| c.verts.contains(v)))
            {
                let core = graph::leafless_core(&m, &m.full_sub());
                if essential.iter().all(|&v| core.degree_in(&m, v) == 3) {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        _ => Ok(detect_elementary(g).is_some()),
    }
}

/// Whether the `n`-strand braid group of `g` is word-hyperbolic.
pub fn braid_hyperbolic(g: &Graph, n: usize) -> Result<bool> {
    match n {
        0 => Err(Error::InvalidArgument("strand count must be positive".into())),
        1 => Ok(true),
        2 => Ok(!graph::has_two_disjoint_cycles(g)?),
        3 => {
            let essential = essential_vertices(g);
            let cycles = graph::enumerate_cycles(g)?;
            Ok(cycles
                .iter()
                .all(|c| essential.iter().all(|v| c.verts.contains(v))))
        }
        _ => Ok(essential_vertices(g).len() <= 1),
    }
}

fn choose2(k: usize) -> usize {
    if k < 2 {
        0
    } else {
        k * (k - 1) / 2
    }
}

/// Rank of the braid group when it is free (`None` when it is not): the
/// closed tree formula for two strands, the elementary-shape formula when it
/// applies, and otherwise the first Betti number of the configuration space
/// of a sufficiently subdivided copy.
pub fn free_rank(g: &Graph, n: usize) -> Result<Option<usize>> {
    if !braid_free(g, n)? {
        return Ok(None);
    }
    if n == 1 {
        return Ok(Some(graph::first_betti(g)));
    }
    if n == 2 && is_tree(g) {
        return Ok(Some(
            g.vertex_ids().map(|v| choose2(g.degree(v).saturating_sub(1))).sum(),
        ));
    }
    if let Some(t) = detect_elementary(g) {
        if t.k + 2 * t.l >= 2 {
            return Ok(Some(elementary_rank(&t, n)?));
        }
        // Point or arc: the configuration space is contractible.
        return Ok(Some(0));
    }
    let sub = graph::subdivide_for(g, n)?;
    let cs = ud::build_ud(&sub, n)?;
    let (_, betti) = cube::homology_summary(&cs.complex)?;
    Ok(Some(betti.get(1).copied().unwrap_or(0)))
}

/// A pairwise vertex-disjoint family of `p` cycles and `q` essential
/// vertices with `p + 2q ≤ n`, maximizing `p + q` (then `p`); the braid
/// group contains a free-abelian subgroup of rank `p + q` generated on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeAbelianWitness {
    pub p: usize,
    pub q: usize,
    pub cycles: Vec<Sub>,
    pub vertices: Vec<VId>,
}

pub fn free_abelian_witness(g: &Graph, n: usize) -> Result<FreeAbelianWitness> {
    if n == 0 {
        return Err(Error::InvalidArgument("strand count must be positive".into()));
    }
    let cycles = graph::enumerate_cycles(g)?;
    let essential = essential_vertices(g);
    let mut targets: Vec<(usize, usize)> = Vec::new();
    for p in 0..=n {
        for q in 0..=(n - p) / 2 {
            targets.push((p, q));
        }
    }
    targets.sort_by_key(|&(p, q)| (std::cmp::Reverse(p + q), std::cmp::Reverse(p)));
    let mut cap = CapCounter::new("searching disjoint cycle families");
    for &(p, q) in &targets {
        if let Some(chosen) = pick_cycles(&cycles, &essential, p, q, 0, &mut Vec::new(), &mut cap)?
        {
            let occupied: BTreeSet<VId> =
                chosen.iter().flat_map(|c| c.verts.iter().copied()).collect();
            let vertices: Vec<VId> = essential
                .iter()
                .copied()
                .filter(|v| !occupied.contains(v))
                .take(q)
                .collect();
            return Ok(FreeAbelianWitness { p, q, cycles: chosen, vertices });
        }
    }
    unreachable!("the empty family always qualifies")
}

/// Backtracking choice of `p` pairwise disjoint cycles (canonical order)
/// that leave at least `q` essential vertices untouched.
fn pick_cycles(
    cycles: &[Sub],
    essential: &[VId],
    p: usize,
    q: usize,
    from: usize,
    chosen: &mut Vec<Sub>,
    cap: &mut CapCounter,
) -> Result<Option<Vec<Sub>>> {
    cap.tick()?;
    if chosen.len() == p {
        let occupied: BTreeSet<VId> =
            chosen.iter().flat_map(|c| c.verts.iter().copied()).collect();
        let free = essential.iter().filter(|v| !occupied.contains(v)).count();
        return Ok(if free >= q { Some(chosen.clone()) } else { None });
    }
    for i in from..cycles.len() {
        if chosen.iter().all(|c| c.disjoint_from(&cycles[i])) {
            chosen.push(cycles[i].clone());
            if let Some(hit) = pick_cycles(cycles, essential, p, q, i + 1, chosen, cap)? {
                return Ok(Some(hit));
            }
            chosen.pop();
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn et(k: usize, l: usize) -> ElementaryGrapeType {
        ElementaryGrapeType { k, l }
    }

    #[test]
    fn detection_finds_single_center_shapes() {
        assert_eq!(detect_elementary(&corpus::star(4)), Some(et(4, 0)));
        assert_eq!(detect_elementary(&corpus::figure_eight()), Some(et(0, 2)));
        assert_eq!(detect_elementary(&corpus::cycle(5)), Some(et(0, 1)));
        assert_eq!(detect_elementary(&corpus::path(4)), Some(et(1, 0)));
        assert_eq!(detect_elementary(&corpus::triangle_pendant()), Some(et(1, 1)));
        assert_eq!(detect_elementary(&corpus::lambda(2, 2)), Some(et(2, 2)));
        assert_eq!(detect_elementary(&corpus::lambda(4, 0)), Some(et(4, 0)));
        let point = Graph::build(&["x"], &[]).unwrap();
        assert_eq!(detect_elementary(&point), Some(et(0, 0)));
    }

    #[test]
    fn detection_rejects_multi_center_shapes() {
        assert_eq!(detect_elementary(&corpus::dumbbell()), None);
        assert_eq!(detect_elementary(&corpus::theta()), None);
        assert_eq!(detect_elementary(&corpus::complete(4)), None);
        assert_eq!(detect_elementary(&corpus::sun()), None);
        assert_eq!(detect_elementary(&corpus::complete_bipartite(2, 3)), None);
        assert_eq!(detect_elementary(&corpus::double_star()), None);
    }

    #[test]
    fn rank_formula_instances() {
        assert_eq!(elementary_rank(&et(0, 2), 2).unwrap(), 4);
        assert_eq!(elementary_rank(&et(2, 1), 2).unwrap(), 4);
        assert_eq!(elementary_rank(&et(1, 1), 2).unwrap(), 2);
        assert_eq!(elementary_rank(&et(0, 1), 2).unwrap(), 1);
        assert_eq!(elementary_rank(&et(2, 0), 2).unwrap(), 0);
        assert_eq!(elementary_rank(&et(4, 0), 2).unwrap(), 3);
    }

    #[test]
    fn rank_formula_closed_forms() {
        // Two strands: (k+l)(k+3l−3)/2 + 1.
        for k in 0..=4 {
            for l in 0..=3 {
                if k + 2 * l < 2 {
                    continue;
                }
                let (ki, li) = (k as i64, l as i64);
                let direct = (ki + li) * (ki + 3 * li - 3) / 2 + 1;
                assert_eq!(
                    elementary_rank(&et(k, l), 2).unwrap() as i64,
                    direct,
                    "k={k} l={l}"
                );
            }
        }
        // One strand: the rank is the cycle count.
        for k in 0..=4 {
            for l in 0..=3 {
                if k + 2 * l < 2 {
                    continue;
                }
                assert_eq!(elementary_rank(&et(k, l), 1).unwrap(), l, "k={k} l={l}");
            }
        }
    }

    #[test]
    fn rank_formula_rejects_degenerates() {
        assert!(elementary_rank(&et(0, 0), 2).is_err());
        assert!(elementary_rank(&et(1, 0), 2).is_err());
        assert!(elementary_rank(&et(0, 2), 0).is_err());
    }

    #[test]
    fn freeness_by_strand_count() {
        let k23 = corpus::complete_bipartite(2, 3);
        let k24 = corpus::complete_bipartite(2, 4);
        assert!(braid_free(&k23, 3).unwrap());
        assert!(!braid_free(&k24, 3).unwrap());
        assert!(braid_free(&corpus::theta(), 3).unwrap());
        assert!(!braid_free(&corpus::complete(5), 2).unwrap());
        assert!(!braid_free(&corpus::complete_bipartite(3, 3), 2).unwrap());
        assert!(braid_free(&corpus::grid2x3(), 2).unwrap());
        assert!(!braid_free(&corpus::sun(), 2).unwrap());
        assert!(!braid_free(&corpus::dumbbell(), 3).unwrap());
        assert!(!braid_free(&corpus::complete(5), 3).unwrap());
        assert!(braid_free(&corpus::cycle(6), 3).unwrap());
        assert!(braid_free(&corpus::cycle(6), 5).unwrap());
        assert!(braid_free(&corpus::double_star(), 3).unwrap());
        assert!(!braid_free(&corpus::double_star(), 4).unwrap());
        assert!(braid_free(&corpus::path(5), 9).unwrap());
        assert!(braid_free(&corpus::star(4), 6).unwrap());
        for g in [corpus::complete(5), corpus::dumbbell(), corpus::sun()] {
            assert!(braid_free(&g, 1).unwrap());
        }
    }

    #[test]
    fn hyperbolicity_by_strand_count() {
        assert!(braid_hyperbolic(&corpus::complete(5), 2).unwrap());
        assert!(braid_hyperbolic(&corpus::complete_bipartite(3, 3), 2).unwrap());
        assert!(!braid_hyperbolic(&corpus::dumbbell(), 2).unwrap());
        assert!(!braid_hyperbolic(&corpus::sun(), 2).unwrap());
        assert!(braid_hyperbolic(&corpus::complete_bipartite(2, 3), 3).unwrap());
        assert!(braid_hyperbolic(&corpus::complete_bipartite(2, 4), 3).unwrap());
        assert!(!braid_hyperbolic(&corpus::complete(5), 3).unwrap());
        assert!(!braid_hyperbolic(&corpus::double_star(), 4).unwrap());
        assert!(braid_hyperbolic(&corpus::star(4), 4).unwrap());
        assert!(braid_hyperbolic(&corpus::path(5), 4).unwrap());
    }

    #[test]
    fn free_implies_hyperbolic_on_fixtures() {
        for (label, g) in corpus::standard_corpus() {
            for n in 1..=4 {
                if braid_free(&g, n).unwrap() {
                    assert!(
                        braid_hyperbolic(&g, n).unwrap(),
                        "{label} with {n} strands: free but not hyperbolic"
                    );
                }
            }
        }
    }

    #[test]
    fn free_ranks_on_fixtures() {
        assert_eq!(free_rank(&corpus::star(4), 2).unwrap(), Some(3));
        assert_eq!(free_rank(&corpus::figure_eight(), 2).unwrap(), Some(4));
        assert_eq!(free_rank(&corpus::complete_bipartite(2, 3), 3).unwrap(), Some(3));
        assert_eq!(free_rank(&corpus::path(5), 2).unwrap(), Some(0));
        assert_eq!(free_rank(&corpus::cycle(6), 2).unwrap(), Some(1));
        assert_eq!(free_rank(&corpus::triangle_pendant(), 2).unwrap(), Some(2));
        assert_eq!(free_rank(&corpus::complete(5), 2).unwrap(), None);
        assert_eq!(free_rank(&corpus::dumbbell(), 2).unwrap(), None);
        assert!(free_rank(&corpus::grid2x3(), 2).unwrap().is_some());
    }

    #[test]
    fn tree_rank_formula_matches_homology() {
        for g in [corpus::star(3), corpus::star(4), corpus::double_star(), corpus::path(6)] {
            let by_formula = free_rank(&g, 2).unwrap().unwrap();
            let sub = graph::subdivide_for(&g, 2).unwrap();
            let cs = ud::build_ud(&sub, 2).unwrap();
            let (_, betti) = cube::homology_summary(&cs.complex).unwrap();
            assert_eq!(by_formula, betti.get(1).copied().unwrap_or(0));
        }
    }

    #[test]
    fn abelian_witnesses_are_maximal_and_valid() {
        let w = free_abelian_witness(&corpus::dumbbell(), 2).unwrap();
        assert_eq!((w.p, w.q), (2, 0));
        let w = free_abelian_witness(&corpus::star(3), 2).unwrap();
        assert_eq!((w.p, w.q), (0, 1));
        let w = free_abelian_witness(&corpus::complete(5), 2).unwrap();
        assert_eq!((w.p, w.q), (1, 0));
        let w = free_abelian_witness(&corpus::double_star(), 4).unwrap();
        assert_eq!((w.p, w.q), (0, 2));
        let w = free_abelian_witness(&corpus::theta(), 2).unwrap();
        assert_eq!((w.p, w.q), (1, 0));

        for (label, g) in corpus::standard_corpus() {
            let w = free_abelian_witness(&g, 3).unwrap();
            assert!(w.p + 2 * w.q <= 3, "{label}");
            assert_eq!(w.cycles.len(), w.p, "{label}");
            assert_eq!(w.vertices.len(), w.q, "{label}");
            for (i, a) in w.cycles.iter().enumerate() {
                for b in w.cycles.iter().skip(i + 1) {
                    assert!(a.disjoint_from(b), "{label}: cycles overlap");
                }
                for &v in &w.vertices {
                    assert!(!a.verts.contains(&v), "{label}: vertex inside a cycle");
                }
            }
            for &v in &w.vertices {
                assert!(g.degree(v) >= 3, "{label}: witness vertex not essential");
            }
        }
    }

    #[test]
    fn rich_witness_contradicts_hyperbolicity() {
        for (label, g) in corpus::standard_corpus() {
            let w = free_abelian_witness(&g, 2).unwrap();
            if w.p + w.q >= 2 {
                assert!(
                    !braid_hyperbolic(&g, 2).unwrap(),
                    "{label}: rank-2 abelian subgroup in a hyperbolic group"
                );
            }
        }
    }
}
