//! Exact integer matrix rank for boundary operators.
//!
//! Sparse row-wise elimination over `BigInt`: cross-multiply rows against the
//! pivot row, then strip each row's integer content (gcd), which keeps the
//! arithmetic exact without any divisibility bookkeeping. Pivots are chosen
//! by the Markowitz fill-in heuristic with a small-magnitude tiebreak, which
//! keeps intermediate entries tame on the ±1 incidence matrices this library
//! produces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A sparse integer matrix assembled row by row.
#[derive(Debug, Clone, Default)]
pub struct SparseMatrix {
    rows: Vec<BTreeMap<usize, BigInt>>,
}

impl SparseMatrix {
    pub fn new() -> SparseMatrix {
        SparseMatrix { rows: Vec::new() }
    }

    /// Adds a row; zero entries are dropped, duplicate columns are summed.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, i64)>) {
        let mut row: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (c, v) in entries {
            let slot = row.entry(c).or_insert_with(BigInt::zero);
            *slot += v;
        }
        row.retain(|_, v| !v.is_zero());
        self.rows.push(row);
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// Exact rank; consumes the matrix.
    pub fn rank(mut self) -> usize {
        let mut rank = 0;
        let mut active: Vec<usize> =
            (0..self.rows.len()).filter(|&r| !self.rows[r].is_empty()).collect();
        while !active.is_empty() {
            // Column population over active rows (for the Markowitz score).
            let mut col_count: BTreeMap<usize, usize> = BTreeMap::new();
            for &r in &active {
                for &c in self.rows[r].keys() {
                    *col_count.entry(c).or_insert(0) += 1;
                }
            }
            // Pivot choice: least predicted fill-in, then smallest magnitude,
            // then position — a total order, so the run is deterministic.
            let mut best: Option<(usize, u64, usize, usize)> = None;
            for &r in &active {
                let rlen = self.rows[r].len();
                for (&c, v) in &self.rows[r] {
                    let score = (rlen - 1) * (col_count[&c] - 1);
                    let bits = v.magnitude().bits();
                    let key = (score, bits, r, c);
                    if best.map_or(true, |b| key < b) {
                        best = Some(key);
                    }
                }
            }
            let (_, _, pr, pc) = best.expect("active rows are nonempty");
            let pivot_row = std::mem::take(&mut self.rows[pr]);
            let pivot = pivot_row[&pc].clone();
            active.retain(|&r| r != pr);
            rank += 1;

            let mut still_active = Vec::with_capacity(active.len());
            for &r in &active {
                let coeff = self.rows[r].get(&pc).cloned();
                if let Some(coeff) = coeff {
                    let old = std::mem::take(&mut self.rows[r]);
                    let mut new_row: BTreeMap<usize, BigInt> = BTreeMap::new();
                    let mut keys: Vec<usize> = old.keys().copied().collect();
                    keys.extend(pivot_row.keys().copied());
                    keys.sort_unstable();
                    keys.dedup();
                    let mut content = BigInt::zero();
                    for c in keys {
                        if c == pc {
                            continue;
                        }
                        let a = old.get(&c).cloned().unwrap_or_else(BigInt::zero);
                        let b = pivot_row.get(&c).cloned().unwrap_or_else(BigInt::zero);
                        let val = &pivot * a - &coeff * b;
                        if !val.is_zero() {
                            content = content.gcd(&val);
                            new_row.insert(c, val);
                        }
                    }
                    // Scaling a row never changes the rank; stripping the
                    // content keeps entries from compounding.
                    if content > BigInt::one() {
                        for v in new_row.values_mut() {
                            *v = &*v / &content;
                        }
                    }
                    self.rows[r] = new_row;
                }
                if !self.rows[r].is_empty() {
                    still_active.push(r);
                }
            }
            active = still_active;
        }
        rank
    }
}

/// Builds a sparse matrix from dense rows (test and oracle convenience).
pub fn from_dense(rows: &[Vec<i64>]) -> SparseMatrix {
    let mut m = SparseMatrix::new();
    for row in rows {
        m.push_row(row.iter().enumerate().map(|(c, &v)| (c, v)));
    }
    m
}
