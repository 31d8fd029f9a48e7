//! Row-style Hermite normal form, built incrementally over sparse rows.
//!
//! Invariant kept after every insertion: rows are indexed by pivot column,
//! pivots are positive, entries of a row left of its pivot are zero, and every
//! entry sitting in another row's pivot column lies in `[0, pivot)`.
//! The fully reduced form is unique, so it doubles as the canonical
//! representative of a sublattice.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Sparse integer row: strictly increasing column indices, nonzero values.
pub type SparseRow = Vec<(usize, BigInt)>;

fn entry(row: &SparseRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|k| &row[k].1)
}

/// `a + factor * b`
fn axpy(a: &SparseRow, factor: &BigInt, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, factor * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + factor * &b[j].1;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `fa * a + fb * b`
fn combine(fa: &BigInt, a: &SparseRow, fb: &BigInt, b: &SparseRow) -> SparseRow {
    let scaled: SparseRow = a.iter().map(|(c, v)| (*c, v * fa)).filter(|(_, v)| !v.is_zero()).collect();
    axpy(&scaled, fb, b)
}

fn negate(row: &mut SparseRow) {
    for (_, v) in row.iter_mut() {
        *v = -std::mem::take(v);
    }
}

pub fn to_sparse(row: &[BigInt]) -> SparseRow {
    row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect()
}

#[derive(Debug, Clone, Default)]
pub struct HermiteAccumulator {
    width: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl HermiteAccumulator {
    pub fn new(width: usize) -> Self {
        HermiteAccumulator { width, rows: BTreeMap::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert_dense(&mut self, row: &[BigInt]) {
        assert_eq!(row.len(), self.width, "row width mismatch");
        self.insert(to_sparse(row));
    }

    pub fn insert(&mut self, mut v: SparseRow) {
        debug_assert!(v.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(v.last().is_none_or(|e| e.0 < self.width));
        while let Some((col, val)) = v.first().cloned() {
            let Some(prow) = self.rows.get(&col) else {
                if val.is_negative() {
                    negate(&mut v);
                }
                self.rows.insert(col, v);
                self.normalize_from(col);
                return;
            };
            let p = &prow[0].1;
            if val.is_multiple_of(p) {
                v = axpy(&v, &-(&val / p), prow);
                continue;
            }
            // Non-divisible leading entry: the pivot row becomes the gcd
            // combination and the remainder (zero at `col`) is inserted next.
            let prow = self.rows.remove(&col).unwrap();
            let p = prow[0].1.clone();
            let ext = p.extended_gcd(&val);
            let mut new_row = combine(&ext.x, &prow, &ext.y, &v);
            let rest = combine(&(&p / &ext.gcd), &v, &-(&val / &ext.gcd), &prow);
            if new_row[0].1.is_negative() {
                negate(&mut new_row);
            }
            self.rows.insert(col, new_row);
            self.normalize_from(col);
            v = rest;
        }
    }

    /// Restores the reduction invariant after row `col` was inserted or
    /// replaced.
    fn normalize_from(&mut self, col: usize) {
        self.reduce_row(col);
        let above: Vec<usize> =
            self.rows.range(..col).filter(|(_, r)| entry(r, col).is_some()).map(|(&c, _)| c).collect();
        for c in above {
            self.reduce_row(c);
        }
    }

    /// Reduces the row with pivot `c` into `[0, p)` at every later pivot column.
    fn reduce_row(&mut self, c: usize) {
        let mut row = self.rows.remove(&c).unwrap();
        let mut after = c;
        loop {
            let next = row.iter().find(|(cc, _)| *cc > after && self.rows.contains_key(cc)).cloned();
            let Some((col, val)) = next else { break };
            let prow = &self.rows[&col];
            let q = val.div_floor(&prow[0].1);
            if !q.is_zero() {
                row = axpy(&row, &-q, prow);
            }
            after = col;
        }
        self.rows.insert(c, row);
    }

    /// Rows in pivot order, as a dense matrix.
    pub fn to_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows.len(), self.width);
        for (i, row) in self.rows.values().enumerate() {
            for (c, v) in row {
                m[(i, *c)] = v.clone();
            }
        }
        m
    }

    pub fn pivot_rows(&self) -> impl Iterator<Item = (usize, &SparseRow)> {
        self.rows.iter().map(|(c, r)| (*c, r))
    }

    /// Reduces `v` against the basis. Returns the integer coefficients
    /// (one per basis row, pivot order) if `v` lies in the row span.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.width, "vector width mismatch");
        let mut rest = to_sparse(v);
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (&c, row) in &self.rows {
            let val = entry(&rest, c).cloned().unwrap_or_default();
            if let Some(&(lead, _)) = rest.first() {
                if lead < c {
                    return None;
                }
            }
            let p = &row[0].1;
            if !val.is_multiple_of(p) {
                return None;
            }
            let q = &val / p;
            if !q.is_zero() {
                rest = axpy(&rest, &-&q, row);
            }
            coeffs.push(q);
        }
        rest.is_empty().then_some(coeffs)
    }
}
