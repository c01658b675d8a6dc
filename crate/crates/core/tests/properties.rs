//! Randomized invariants. Every assertion here is a statement that holds for
//! all inputs, so failures are real defects, not flaky draws; proptest will
//! shrink and persist any counterexample it finds.

use std::collections::BTreeSet;

use gbg_core::cube::homology_summary;
use gbg_core::graph::{self, Graph, Sub};
use gbg_core::grapes::{grape_status, recognize_grapes, twig_maximal_products, GrapeStatus};
use gbg_core::products::{build_up2, condition_b, condition_c, maximal_products, SeparabilityCache};
use gbg_core::{braid_free, braid_hyperbolic, build_ud, corpus, reference};

use proptest::prelude::*;

/// A simple graph on 2..=6 vertices with an arbitrary edge set, drawn as a
/// mask over the vertex pairs.
fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..=6).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::ANY, n * (n - 1) / 2)
            .prop_map(move |mask| graph_from_mask(n, &mask))
    })
}

fn graph_from_mask(n: usize, mask: &[bool]) -> Graph {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if mask[k] {
                edges.push((names[i].clone(), names[j].clone()));
            }
            k += 1;
        }
    }
    Graph::build(&names, &edges).unwrap()
}

/// A subgraph of `g` drawn from one bit per edge and one per vertex; the
/// vertex set is closed over the chosen edges' endpoints.
fn sub_from_masks(g: &Graph, edge_mask: &[bool], vert_mask: &[bool]) -> Sub {
    let mut edges = BTreeSet::new();
    let mut verts = BTreeSet::new();
    for (k, e) in g.edge_ids_iter().enumerate() {
        if edge_mask[k % edge_mask.len().max(1)] {
            let (u, v) = g.edge(e);
            edges.insert(e);
            verts.insert(u);
            verts.insert(v);
        }
    }
    for v in g.vertex_ids() {
        if vert_mask[v % vert_mask.len().max(1)] {
            verts.insert(v);
        }
    }
    Sub { verts, edges }
}

fn graph_with_subgraph() -> impl Strategy<Value = (Graph, Sub)> {
    arb_graph().prop_flat_map(|g| {
        let ne = g.n_edges().max(1);
        let nv = g.n_vertices();
        (
            Just(g),
            proptest::collection::vec(proptest::bool::ANY, ne),
            proptest::collection::vec(proptest::bool::ANY, nv),
        )
            .prop_map(|(g, em, vm)| {
                let s = sub_from_masks(&g, &em, &vm);
                (g, s)
            })
    })
}

/// The number of edge-parallelism classes a two-strand space must have: one
/// class per component of the graph left after deleting an edge's closed
/// star, summed over edges.
fn expected_class_count(g: &Graph) -> usize {
    let mut total = 0;
    for e in g.edge_ids_iter() {
        let (u, v) = g.edge(e);
        let keep: BTreeSet<_> = g.vertex_ids().filter(|&x| x != u && x != v).collect();
        let sub = Sub {
            edges: g
                .edge_ids_iter()
                .filter(|&f| {
                    let (a, b) = g.edge(f);
                    keep.contains(&a) && keep.contains(&b)
                })
                .collect(),
            verts: keep,
        };
        total += graph::components(g, &sub).len();
    }
    total
}

fn count_disjoint_edge_pairs(g: &Graph) -> usize {
    let ids: Vec<_> = g.edge_ids_iter().collect();
    let mut count = 0;
    for (i, &e) in ids.iter().enumerate() {
        for &f in &ids[i + 1..] {
            let (a, b) = g.edge(e);
            let (c, d) = g.edge(f);
            if a != c && a != d && b != c && b != d {
                count += 1;
            }
        }
    }
    count
}

/// Extract a subgraph as a standalone graph reusing the parent's names, so
/// configuration-cell keys coincide between the two complexes.
fn extract(g: &Graph, s: &Sub) -> Graph {
    let names: Vec<String> = s.verts.iter().map(|&v| g.name(v).to_string()).collect();
    let edges: Vec<(String, String)> = s
        .edges
        .iter()
        .map(|&e| {
            let (u, v) = g.edge(e);
            (g.name(u).to_string(), g.name(v).to_string())
        })
        .collect();
    Graph::build(&names, &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leafless_core_is_idempotent_monotone_and_leafless((g, s) in graph_with_subgraph()) {
        let core = graph::leafless_core(&g, &s);
        prop_assert!(core.verts.is_subset(&s.verts));
        prop_assert!(core.edges.is_subset(&s.edges));
        prop_assert!(graph::is_leafless(&g, &core));
        prop_assert_eq!(&graph::leafless_core(&g, &core), &core);

        // Shrink s to a smaller subgraph and compare cores.
        let mut smaller = s.clone();
        if let Some(&e) = smaller.edges.iter().next() {
            smaller.edges.remove(&e);
            let endpoints: BTreeSet<_> = smaller
                .edges
                .iter()
                .flat_map(|&f| {
                    let (u, v) = g.edge(f);
                    [u, v]
                })
                .collect();
            let (u, v) = g.edge(e);
            for w in [u, v] {
                if !endpoints.contains(&w) && !s.verts.contains(&w) {
                    smaller.verts.remove(&w);
                }
            }
        }
        let small_core = graph::leafless_core(&g, &smaller);
        prop_assert!(small_core.verts.is_subset(&core.verts));
        prop_assert!(small_core.edges.is_subset(&core.edges));
    }

    #[test]
    fn two_strand_cell_counts_match_closed_forms(g in arb_graph()) {
        let x = build_ud(&g, 2).unwrap().complex;
        let nv = g.n_vertices();
        prop_assert_eq!(x.n_cells(0), nv * (nv - 1) / 2);
        prop_assert_eq!(x.n_cells(1), g.n_edges() * (nv - 2));
        prop_assert_eq!(x.n_cells(2), count_disjoint_edge_pairs(&g));
    }

    #[test]
    fn dimension_is_the_capped_matching_size(g in arb_graph(), n in 2usize..=3) {
        prop_assume!(g.n_vertices() >= n);
        let x = build_ud(&g, n).unwrap().complex;
        let capped = graph::max_matching(&g).min(n);
        prop_assert!(x.dim() <= capped);
        if g.n_vertices() >= n + capped {
            prop_assert_eq!(x.dim(), capped);
        }
    }

    #[test]
    fn class_count_sums_per_edge_components(g in arb_graph()) {
        prop_assume!(g.n_edges() > 0);
        let x = build_ud(&g, 2).unwrap().complex;
        prop_assert_eq!(x.hyperplanes().unwrap().len(), expected_class_count(&g));
    }

    #[test]
    fn homology_is_internally_consistent(g in arb_graph()) {
        let x = build_ud(&g, 2).unwrap().complex;
        let (chi, betti) = homology_summary(&x).unwrap();
        prop_assert_eq!(chi, x.euler_characteristic());
        let alt: i64 = betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        prop_assert_eq!(alt, chi);
        prop_assert_eq!(betti[0], x.component_count());

        // Consecutive boundary maps compose to zero.
        for d in 1..x.dim() {
            let low = x.boundary_rows(d);
            for row in x.boundary_rows(d + 1) {
                let mut acc = std::collections::BTreeMap::new();
                for (cell, sign) in row {
                    for &(target, s2) in &low[cell] {
                        *acc.entry(target).or_insert(0i64) += sign * s2;
                    }
                }
                prop_assert!(acc.values().all(|&v| v == 0));
            }
        }
    }

    #[test]
    fn subgraph_complexes_embed_cell_for_cell((g, s) in graph_with_subgraph()) {
        prop_assume!(s.verts.len() >= 2);
        let sub_graph = extract(&g, &s);
        let small = build_ud(&sub_graph, 2).unwrap().complex;
        let large = build_ud(&g, 2).unwrap().complex;
        prop_assert!(small.dim() <= large.dim());
        for d in 0..=small.dim() {
            for i in 0..small.n_cells(d) {
                prop_assert!(
                    large.index_of(d, small.key(d, i)).is_some(),
                    "cell {} missing upstairs", small.key(d, i)
                );
            }
        }
    }

    #[test]
    fn product_union_is_a_subcomplex_and_matches_hyperbolicity(g in arb_graph()) {
        let union = build_up2(&g).unwrap();
        let full = build_ud(&g, 2).unwrap().complex;
        prop_assert!(union.dim() <= full.dim());
        for d in 0..=union.dim() {
            prop_assert!(union.n_cells(d) <= full.n_cells(d));
            for i in 0..union.n_cells(d) {
                prop_assert!(full.index_of(d, union.key(d, i)).is_some());
            }
        }
        let empty = union.n_cells(0) == 0;
        let no_products = maximal_products(&g).unwrap().is_empty();
        let hyperbolic = braid_hyperbolic(&g, 2).unwrap();
        prop_assert_eq!(empty, no_products);
        prop_assert_eq!(empty, hyperbolic);
    }

    #[test]
    fn fast_separability_agrees_with_the_exhaustive_oracle(g in arb_graph()) {
        prop_assume!(g.n_edges() <= 10);
        let cache = SeparabilityCache::new(&g).unwrap();
        let mut atoms: Vec<Sub> = g.vertex_ids().map(|v| g.sub_single_vertex(v)).collect();
        atoms.extend(g.edge_ids_iter().map(|e| g.sub_single_edge(e)));
        for a in &atoms {
            for b in &atoms {
                if !a.disjoint_from(b) || a >= b {
                    continue;
                }
                prop_assert_eq!(
                    cache.query(&g, a, b).unwrap(),
                    reference::separable_oracle(&g, a, b),
                    "atoms {:?} vs {:?}", a, b
                );
            }
        }
    }

    #[test]
    fn free_groups_are_hyperbolic(g in arb_graph(), n in 2usize..=3) {
        prop_assume!(g.n_vertices() >= n);
        if braid_free(&g, n).unwrap() {
            prop_assert!(braid_hyperbolic(&g, n).unwrap());
        }
    }

    #[test]
    fn edge_separability_implies_the_mixed_condition(g in arb_graph()) {
        if condition_b(&g).unwrap() {
            prop_assert!(condition_c(&g).unwrap());
        }
    }

    #[test]
    fn subdividing_reaches_sufficiency_and_keeps_the_shape(g in arb_graph(), n in 2usize..=3) {
        let h = graph::subdivide_for(&g, n).unwrap();
        prop_assert!(graph::is_sufficiently_subdivided(&h, n).unwrap());
        prop_assert_eq!(graph::first_betti(&h), graph::first_betti(&g));

        let back = graph::smooth_to_minimal_model(&h);
        let min = graph::smooth_to_minimal_model(&g);
        prop_assert_eq!(back.n_vertices(), min.n_vertices());
        prop_assert_eq!(back.n_edges(), min.n_edges());
        let degrees = |k: &Graph| {
            let mut d: Vec<usize> = k.vertex_ids().map(|v| k.degree(v)).collect();
            d.sort_unstable();
            d
        };
        prop_assert_eq!(degrees(&back), degrees(&min));
    }

    #[test]
    fn random_trees_have_forest_two_strand_spaces(seed in any::<u64>()) {
        let mut rng = corpus::Rng::new(seed | 1);
        let t = corpus::random_tree(&mut rng, 8);
        let x = build_ud(&t, 2).unwrap().complex;
        let (_, betti) = homology_summary(&x).unwrap();
        let expected: usize = t
            .vertex_ids()
            .map(|v| {
                let d = t.degree(v).saturating_sub(1);
                d * d.saturating_sub(1) / 2
            })
            .sum();
        prop_assert_eq!(betti.get(1).copied().unwrap_or(0), expected);
        prop_assert_eq!(betti[0], 1);
    }

    #[test]
    fn random_bunches_round_trip_and_count_twigs(seed in any::<u64>()) {
        let mut rng = corpus::Rng::new(seed | 1);
        let grape = corpus::random_normal_grape(&mut rng, 7);
        prop_assert_eq!(grape_status(&grape), GrapeStatus::Normal);

        let ambient = grape.materialize();
        let back = recognize_grapes(&ambient).expect("materialized bunch must be recognized");
        prop_assert_eq!(back.stem().n_vertices(), grape.stem().n_vertices());
        prop_assert_eq!(back.stem().n_edges(), grape.stem().n_edges());
        prop_assert_eq!(back.total_loops(), grape.total_loops());

        let products = maximal_products(grape.ambient()).unwrap();
        prop_assert_eq!(products.len(), grape.stem().n_edges());
        let twigs = twig_maximal_products(&grape).unwrap();
        prop_assert_eq!(twigs.len(), grape.stem().n_edges());
    }
}
