//! Slow, definition-level oracles used only by tests.
//!
//! Every function here recomputes something the main modules compute by a
//! faster route, using the most literal search available (usually a scan over
//! all edge subsets), so the two paths can be compared on small inputs.

use crate::graph::{self, EId, Graph, Sub};
use num_bigint::BigInt;
use num_traits::Zero;

/// All simple cycles, found by scanning every edge subset for connected
/// 2-regular subgraphs. Ordered like `graph::enumerate_cycles`.
pub fn cycles_by_subset_scan(g: &Graph) -> Vec<Sub> {
    assert!(g.n_edges() <= 20, "subset scan is for small graphs only");
    let mut out: Vec<Vec<EId>> = Vec::new();
    for mask in 1u32..(1 << g.n_edges()) {
        let edges: Vec<EId> = (0..g.n_edges()).filter(|&e| mask >> e & 1 == 1).collect();
        let sub = g.sub_from_edges(edges.clone());
        let two_regular = sub.verts.iter().all(|&v| sub.degree_in(g, v) == 2);
        if two_regular && graph::components(g, &sub).len() == 1 {
            out.push(edges);
        }
    }
    out.sort();
    out.into_iter().map(|edges| g.sub_from_edges(edges)).collect()
}

/// All connected nontrivial subgraphs of minimum degree ≥ 2, by subset scan.
pub fn connected_leafless_subgraphs(g: &Graph) -> Vec<Sub> {
    assert!(g.n_edges() <= 20, "subset scan is for small graphs only");
    let mut out = Vec::new();
    for mask in 1u32..(1 << g.n_edges()) {
        let edges: Vec<EId> = (0..g.n_edges()).filter(|&e| mask >> e & 1 == 1).collect();
        let sub = g.sub_from_edges(edges);
        let leafless = sub.verts.iter().all(|&v| sub.degree_in(g, v) >= 2);
        if leafless && graph::components(g, &sub).len() == 1 {
            out.push(sub);
        }
    }
    out.sort();
    out
}

fn complement_core(g: &Graph, sub: &Sub) -> Sub {
    let comp = graph::induced_complement(g, sub);
    graph::leafless_core(g, &comp)
}

/// Separability by exhaustive search: two disjoint connected leafless
/// containers, one around each input.
pub fn separable_oracle(g: &Graph, a: &Sub, b: &Sub) -> bool {
    assert!(a.disjoint_from(b));
    let pool = connected_leafless_subgraphs(g);
    let around_a: Vec<&Sub> = pool.iter().filter(|s| s.contains(a)).collect();
    let around_b: Vec<&Sub> = pool.iter().filter(|s| s.contains(b)).collect();
    for s in &around_a {
        for t in &around_b {
            if s.disjoint_from(t) {
                return true;
            }
        }
    }
    false
}

/// Standard subgraphs straight from the definition: connected, nontrivial,
/// leafless, with nontrivial complement core.
pub fn standard_subgraphs_oracle(g: &Graph) -> Vec<Sub> {
    connected_leafless_subgraphs(g)
        .into_iter()
        .filter(|s| !complement_core(g, s).is_trivial())
        .collect()
}

/// Maximally standard subgraphs straight from the definition.
pub fn maximally_standard_oracle(g: &Graph) -> Vec<Sub> {
    standard_subgraphs_oracle(g)
        .into_iter()
        .filter(|s| {
            let perp = complement_core(g, s);
            if perp.is_trivial() || graph::components(g, &perp).len() != 1 {
                return false;
            }
            complement_core(g, &perp) == *s
        })
        .collect()
}

/// Exact matrix rank by dense fraction-free elimination (no pivot search
/// heuristics, no sparsity) — a structurally different path from the sparse
/// eliminator.
pub fn dense_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    let mut row = 0;
    for col in 0..ncols {
        let Some(pivot_row) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pivot_row);
        let pivot = m[row][col].clone();
        for r in row + 1..nrows {
            for c in col + 1..ncols {
                let val = (&pivot * &m[r][c] - &m[r][col] * &m[row][c]) / &prev;
                m[r][c] = val;
            }
            m[r][col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
        row += 1;
        if row == nrows {
            break;
        }
    }
    rank
}

/// Sanity helper for tests: |det| of a square matrix by cofactor expansion.
pub fn det_by_cofactors(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = BigInt::zero();
    for (j, head) in m[0].iter().enumerate() {
        if head.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()
            })
            .collect();
        let term = head * det_by_cofactors(&minor);
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}
