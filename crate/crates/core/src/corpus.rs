//! Named example graphs and deterministic random generators used across the
//! test suites and benchmarks.
//!
//! Everything here is reproducible: fixtures are explicit edge lists and the
//! random families run on a seeded xorshift generator, so test expectations
//! stay stable across runs and platforms.

use crate::graph::Graph;
use crate::grapes::Grape;
use std::collections::BTreeMap;

fn build(vertices: &[&str], edges: &[(&str, &str)]) -> Graph {
    Graph::build(vertices, edges).expect("corpus fixture is a valid graph")
}

/// Path with `n` vertices (`n − 1` edges), names p0..p{n−1}.
pub fn path(n: usize) -> Graph {
    assert!(n >= 1);
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let edges: Vec<(String, String)> =
        (1..n).map(|i| (format!("p{}", i - 1), format!("p{i}"))).collect();
    let vr: Vec<&str> = names.iter().map(String::as_str).collect();
    let er: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    build(&vr, &er)
}

/// Star with `k` leaves around a center `c`.
pub fn star(k: usize) -> Graph {
    let names: Vec<String> = (0..k).map(|i| format!("s{i}")).collect();
    let edges: Vec<(&str, &str)> = names.iter().map(|s| ("c", s.as_str())).collect();
    build(&["c"], &edges)
}

/// Cycle with `n ≥ 3` vertices, names z0..z{n−1}.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let mut edges: Vec<(String, String)> =
        (1..n).map(|i| (format!("z{}", i - 1), format!("z{i}"))).collect();
    edges.push((format!("z{}", n - 1), "z0".to_string()));
    let er: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    build(&[], &er)
}

/// Complete graph K_n, names k0..k{n−1}.
pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((format!("k{i}"), format!("k{j}")));
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("k{i}")).collect();
    let vr: Vec<&str> = names.iter().map(String::as_str).collect();
    let er: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    build(&vr, &er)
}

/// Complete bipartite K_{a,b}, sides u0..u{a−1} and m0..m{b−1}.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            edges.push((format!("u{i}"), format!("m{j}")));
        }
    }
    let er: Vec<(&str, &str)> = edges.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect();
    build(&[], &er)
}

/// Two triangles joined by a bridge: a1b1v0 — v1a2b2.
pub fn dumbbell() -> Graph {
    build(
        &[],
        &[
            ("a1", "b1"),
            ("a1", "v0"),
            ("b1", "v0"),
            ("v0", "v1"),
            ("a2", "b2"),
            ("a2", "v1"),
            ("b2", "v1"),
        ],
    )
}

/// Theta graph: vertices u, w joined by arcs of lengths 1, 2, 2.
pub fn theta() -> Graph {
    build(&[], &[("u", "w"), ("u", "m2"), ("m2", "w"), ("u", "m3"), ("m3", "w")])
}

/// Two triangles sharing the single vertex c.
pub fn figure_eight() -> Graph {
    build(
        &[],
        &[("c", "a1"), ("a1", "b1"), ("b1", "c"), ("c", "a2"), ("a2", "b2"), ("b2", "c")],
    )
}

/// Central triangle x1x2x3 with a pendant edge to ℓᵢ at each corner and a
/// triangle hanging at each ℓᵢ (12 vertices, 15 edges).
pub fn sun() -> Graph {
    build(
        &[],
        &[
            ("x1", "x2"),
            ("x2", "x3"),
            ("x1", "x3"),
            ("x1", "l1"),
            ("x2", "l2"),
            ("x3", "l3"),
            ("l1", "a1"),
            ("l1", "b1"),
            ("a1", "b1"),
            ("l2", "a2"),
            ("l2", "b2"),
            ("a2", "b2"),
            ("l3", "a3"),
            ("l3", "b3"),
            ("a3", "b3"),
        ],
    )
}

/// The dodecahedral graph: 20 vertices, 30 edges, 3-regular, girth 5.
pub fn dodecahedron() -> Graph {
    let mut edges: Vec<(String, String)> = Vec::new();
    for i in 0..5 {
        let j = (i + 1) % 5;
        edges.push((format!("u{i}"), format!("u{j}")));
        edges.push((format!("u{i}"), format!("v{i}")));
        edges.push((format!("v{i}"), format!("w{i}")));
        edges.push((format!("w{i}"), format!("v{j}")));
        edges.push((format!("w{i}"), format!("z{i}")));
        edges.push((format!("z{i}"), format!("z{j}")));
    }
    let er: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    build(&[], &er)
}

/// Cube graph: outer square o0..o3, inner square i0..i3, verticals oₖ–iₖ.
pub fn nested_squares() -> Graph {
    let mut edges: Vec<(String, String)> = Vec::new();
    for k in 0..4 {
        let j = (k + 1) % 4;
        edges.push((format!("o{k}"), format!("o{j}")));
        edges.push((format!("i{k}"), format!("i{j}")));
        edges.push((format!("o{k}"), format!("i{k}")));
    }
    let er: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    build(&[], &er)
}

/// Three vertex-disjoint squares in a row, consecutive squares joined by two
/// parallel edges (12 vertices, 16 edges).
pub fn chain_of_squares() -> Graph {
    build(
        &[],
        &[
            ("a0", "a1"),
            ("a1", "a2"),
            ("a2", "a3"),
            ("a3", "a0"),
            ("b0", "b1"),
            ("b1", "b2"),
            ("b2", "b3"),
            ("b3", "b0"),
            ("c0", "c1"),
            ("c1", "c2"),
            ("c2", "c3"),
            ("c3", "c0"),
            ("a1", "b0"),
            ("a2", "b3"),
            ("b1", "c0"),
            ("b2", "c3"),
        ],
    )
}

/// One central vertex with `k` pendant edges and `l` attached triangles.
pub fn lambda(k: usize, l: usize) -> Graph {
    let mut verts = vec!["c".to_string()];
    let mut edges: Vec<(String, String)> = Vec::new();
    for i in 0..k {
        edges.push(("c".to_string(), format!("p{i}")));
    }
    for i in 0..l {
        edges.push(("c".to_string(), format!("t{i}a")));
        edges.push(("c".to_string(), format!("t{i}b")));
        edges.push((format!("t{i}a"), format!("t{i}b")));
    }
    verts.extend((0..k).map(|i| format!("p{i}")));
    let vr: Vec<&str> = verts.iter().map(String::as_str).collect();
    let er: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    build(&vr, &er)
}

fn grape(stem_edges: &[(&str, &str)], loops: &[(&str, usize)]) -> Grape {
    let stem = build(&[], stem_edges);
    let mut m = BTreeMap::new();
    for &(name, k) in loops {
        let v = stem.vid(name).expect("loop site is a stem vertex");
        m.insert(v, k);
    }
    Grape::new(stem, m).expect("corpus grape is valid")
}

/// Single stem edge with one triangle at each end; materializes to the
/// dumbbell shape.
pub fn dumbbell_grape() -> Grape {
    grape(&[("d0", "d1")], &[("d0", 1), ("d1", 1)])
}

/// Three-vertex path stem with one triangle at every vertex.
pub fn path3_grape() -> Grape {
    grape(&[("q0", "q1"), ("q1", "q2")], &[("q0", 1), ("q1", 1), ("q2", 1)])
}

/// Star stem S₃ with one triangle at every vertex (center included).
pub fn s3_grape() -> Grape {
    grape(
        &[("s", "v1"), ("s", "v2"), ("s", "v3")],
        &[("s", 1), ("v1", 1), ("v2", 1), ("v3", 1)],
    )
}

/// Star stem S₃ with triangles only at the three leaves.
pub fn star_grape_leaf_loops() -> Grape {
    grape(&[("s", "v1"), ("s", "v2"), ("s", "v3")], &[("v1", 1), ("v2", 1), ("v3", 1)])
}

/// H-shaped stem (two adjacent branch vertices, two leaves each) with one
/// triangle at every leaf.
pub fn dynkin5_grape() -> Grape {
    grape(
        &[("c", "w0"), ("c", "w1"), ("c", "d"), ("d", "w2"), ("d", "w3")],
        &[("w0", 1), ("w1", 1), ("w2", 1), ("w3", 1)],
    )
}

/// Spider stem with arms of lengths 1, 2, 3 and one triangle at each arm
/// tip and at each bivalent arm vertex (the latter keeps the materialized
/// graph a minimal model).
pub fn tripod123_grape() -> Grape {
    grape(
        &[
            ("z", "a1"),
            ("z", "b1"),
            ("b1", "b2"),
            ("z", "c1"),
            ("c1", "c2"),
            ("c2", "c3"),
        ],
        &[("a1", 1), ("b1", 1), ("b2", 1), ("c1", 1), ("c2", 1), ("c3", 1)],
    )
}

fn example_stem_edges() -> Vec<(&'static str, &'static str)> {
    vec![
        ("0", "1"),
        ("1", "10"),
        ("1", "2"),
        ("1", "3"),
        ("3", "4"),
        ("4", "9"),
        ("4", "8"),
        ("4", "5"),
        ("5", "7"),
        ("5", "6"),
    ]
}

/// An 11-vertex stem with a mixed multiplicity pattern; two stem leaves are
/// bare, so this one is large but not normal.
pub fn example_grape_large() -> Grape {
    grape(
        &example_stem_edges(),
        &[("0", 2), ("3", 1), ("4", 1), ("6", 1), ("8", 1), ("9", 1), ("10", 3)],
    )
}

/// The same stem with the two bare leaves filled in, making it normal.
pub fn example_grape_normal() -> Grape {
    grape(
        &example_stem_edges(),
        &[
            ("0", 2),
            ("2", 1),
            ("3", 1),
            ("4", 1),
            ("6", 1),
            ("7", 1),
            ("8", 1),
            ("9", 1),
            ("10", 3),
        ],
    )
}

/// The named grape fixtures, with stable labels for test diagnostics.
pub fn named_grapes() -> Vec<(&'static str, Grape)> {
    vec![
        ("dumbbell-grape", dumbbell_grape()),
        ("path3-grape", path3_grape()),
        ("s3-grape", s3_grape()),
        ("star-leaf-loops", star_grape_leaf_loops()),
        ("dynkin5-grape", dynkin5_grape()),
        ("tripod123-grape", tripod123_grape()),
        ("example-large", example_grape_large()),
        ("example-normal", example_grape_normal()),
    ]
}

/// A double star: two adjacent centers with three leaves each.
pub fn double_star() -> Graph {
    build(
        &[],
        &[
            ("c1", "c2"),
            ("c1", "x1"),
            ("c1", "x2"),
            ("c1", "x3"),
            ("c2", "y1"),
            ("c2", "y2"),
            ("c2", "y3"),
        ],
    )
}

/// 2×3 grid graph.
pub fn grid2x3() -> Graph {
    build(
        &[],
        &[
            ("g00", "g01"),
            ("g01", "g02"),
            ("g10", "g11"),
            ("g11", "g12"),
            ("g00", "g10"),
            ("g01", "g11"),
            ("g02", "g12"),
        ],
    )
}

/// Wheel: 5-cycle rim plus a hub joined to every rim vertex.
pub fn wheel5() -> Graph {
    build(
        &[],
        &[
            ("r0", "r1"),
            ("r1", "r2"),
            ("r2", "r3"),
            ("r3", "r4"),
            ("r4", "r0"),
            ("h", "r0"),
            ("h", "r1"),
            ("h", "r2"),
            ("h", "r3"),
            ("h", "r4"),
        ],
    )
}

/// Triangle with one pendant edge.
pub fn triangle_pendant() -> Graph {
    build(&[], &[("t0", "t1"), ("t1", "t2"), ("t2", "t0"), ("t0", "p")])
}

/// Dumbbell with one extra pendant edge at a branch vertex.
pub fn dumbbell_pendant() -> Graph {
    build(
        &[],
        &[
            ("a1", "b1"),
            ("a1", "v0"),
            ("b1", "v0"),
            ("v0", "v1"),
            ("a2", "b2"),
            ("a2", "v1"),
            ("b2", "v1"),
            ("v1", "p"),
        ],
    )
}

/// The fixed 30-graph corpus the cross-cutting suites run over. Members stay
/// at or below 24 edges so whole-corpus sweeps stay fast; suites with
/// exhaustive subgraph scans restrict further by edge count.
pub fn standard_corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("path2", path(2)),
        ("path5", path(5)),
        ("star3", star(3)),
        ("star4", star(4)),
        ("double-star", double_star()),
        ("cycle3", cycle(3)),
        ("cycle4", cycle(4)),
        ("cycle6", cycle(6)),
        ("k4", complete(4)),
        ("k5", complete(5)),
        ("k6", complete(6)),
        ("k23", complete_bipartite(2, 3)),
        ("k24", complete_bipartite(2, 4)),
        ("k33", complete_bipartite(3, 3)),
        ("k34", complete_bipartite(3, 4)),
        ("dumbbell", dumbbell()),
        ("figure-eight", figure_eight()),
        ("theta", theta()),
        ("sun", sun()),
        ("nested-squares", nested_squares()),
        ("chain-of-squares", chain_of_squares()),
        ("s3-grape", s3_grape().materialize()),
        ("dumbbell-pendant", dumbbell_pendant()),
        ("star-leaf-loops", star_grape_leaf_loops().materialize()),
        ("dynkin5-grape", dynkin5_grape().materialize()),
        ("tripod123-grape", tripod123_grape().materialize()),
        ("triangle-pendant", triangle_pendant()),
        ("lambda22", lambda(2, 2)),
        ("grid2x3", grid2x3()),
        ("wheel5", wheel5()),
    ]
}

/// xorshift64* generator: tiny, seedable, and identical everywhere.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(if seed == 0 { 0x9e3779b97f4a7c15 } else { seed })
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545f4914f6cdd1d)
    }

    /// Uniform value in 0..bound.
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        (self.next_u64() % bound as u64) as usize
    }
}

/// Random recursive tree with a vertex count drawn from 2..=max_vertices.
pub fn random_tree(rng: &mut Rng, max_vertices: usize) -> Graph {
    assert!(max_vertices >= 2);
    let n = 2 + rng.below(max_vertices - 1);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.below(i);
        edges.push((format!("t{j}"), format!("t{i}")));
    }
    let er: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    build(&[], &er)
}

/// Random normal grape: stem ≤ `max_stem_edges` edges, multiplicities ≤ 3,
/// with every stem leaf and every bivalent stem vertex looped (the latter
/// keeps the materialized graph a minimal model).
pub fn random_normal_grape(rng: &mut Rng, max_stem_edges: usize) -> Grape {
    let stem = random_tree(rng, max_stem_edges + 1);
    let mut loops = BTreeMap::new();
    for v in stem.vertex_ids() {
        let mut m = rng.below(4);
        if stem.degree(v) <= 2 {
            m = m.max(1);
        }
        loops.insert(v, m);
    }
    Grape::new(stem, loops).expect("random grape is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;

    #[test]
    fn fixture_sizes() {
        assert_eq!((sun().n_vertices(), sun().n_edges()), (12, 15));
        assert_eq!((dodecahedron().n_vertices(), dodecahedron().n_edges()), (20, 30));
        assert_eq!((nested_squares().n_vertices(), nested_squares().n_edges()), (8, 12));
        assert_eq!(
            (chain_of_squares().n_vertices(), chain_of_squares().n_edges()),
            (12, 16)
        );
        let l = lambda(2, 2);
        assert_eq!((l.n_vertices(), l.n_edges()), (7, 8));
        assert_eq!(lambda(4, 0).n_edges(), 4);
    }

    #[test]
    fn corpus_members_are_connected_and_small() {
        let corpus = standard_corpus();
        assert_eq!(corpus.len(), 30);
        for (name, g) in &corpus {
            assert!(g.is_connected(), "{name} must be connected");
            assert!(g.n_edges() <= 24, "{name} exceeds the corpus size budget");
        }
    }

    #[test]
    fn dodecahedron_is_cubic() {
        let g = dodecahedron();
        assert!(g.vertex_ids().all(|v| g.degree(v) == 3));
        assert!(g.is_connected());
    }

    #[test]
    fn random_trees_are_trees() {
        let mut rng = Rng::new(7);
        for _ in 0..50 {
            let t = random_tree(&mut rng, 10);
            assert!(t.is_connected());
            assert_eq!(t.n_edges() + 1, t.n_vertices());
            assert!(t.n_vertices() <= 10);
            assert!(graph::enumerate_cycles(&t).unwrap().is_empty());
        }
    }

    #[test]
    fn rng_is_deterministic() {
        let mut a = Rng::new(42);
        let mut b = Rng::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }
}
