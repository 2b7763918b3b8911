use super::{SparseMatrix, SparseVec, Subspace, Q};
use std::collections::BTreeMap;

/// Incremental row echelon form over `Q`.
///
/// Rows are reduced against existing pivots in increasing column order.
/// When an incoming row is sparser than the pivot it collides with, the two
/// swap roles; this keeps fill-in down and is still deterministic since it
/// depends only on insertion order.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<u32, SparseVec>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivots: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = u32> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `row` by the current pivots until its lead has no pivot.
    pub fn reduce(&self, mut row: SparseVec) -> SparseVec {
        loop {
            let Some((lead, c)) = row.0.first().cloned() else { return row };
            match self.pivots.get(&lead) {
                Some(p) => row = row.axpy(&(-c), p),
                None => return row,
            }
        }
    }

    /// Fully reduces `row` (every pivot column eliminated, not only the lead).
    pub fn reduce_full(&self, mut row: SparseVec) -> SparseVec {
        let mut start = 0u32;
        loop {
            let hit = row.0.iter().find(|(j, _)| *j >= start && self.pivots.contains_key(j)).cloned();
            match hit {
                Some((j, c)) => {
                    row = row.axpy(&(-c), &self.pivots[&j]);
                    start = j + 1;
                }
                None => return row,
            }
        }
    }

    pub fn contains(&self, row: &SparseVec) -> bool {
        self.reduce_full(row.clone()).is_zero()
    }

    /// Inserts a row; returns true if it increased the rank.
    pub fn insert(&mut self, mut row: SparseVec) -> bool {
        loop {
            let Some((lead, c)) = row.0.first().cloned() else { return false };
            match self.pivots.get_mut(&lead) {
                Some(p) => {
                    if row.len() < p.len() {
                        let inv = Q::from(c.recip_ref());
                        row.scale(&inv);
                        std::mem::swap(p, &mut row);
                        continue;
                    }
                    row = row.axpy(&(-c), p);
                }
                None => {
                    let inv = Q::from(c.recip_ref());
                    row.scale(&inv);
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Reduced row echelon form: rows sorted by pivot column, each pivot
    /// column zero in every other row.
    pub fn into_rref(mut self) -> Vec<SparseVec> {
        let cols: Vec<u32> = self.pivots.keys().rev().copied().collect();
        for &c in &cols {
            let mut row = self.pivots.remove(&c).unwrap();
            let mut start = c + 1;
            loop {
                let hit = row.0.iter().find(|(j, _)| *j >= start && self.pivots.contains_key(j)).cloned();
                match hit {
                    Some((j, v)) => {
                        row = row.axpy(&(-v), &self.pivots[&j]);
                        start = j + 1;
                    }
                    None => break,
                }
            }
            self.pivots.insert(c, row);
        }
        self.pivots.into_values().collect()
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    // Eliminating along the shorter side is cheaper.
    let rows = if m.nrows > m.ncols { m.transpose().rows } else { m.rows.clone() };
    let ncols = if m.nrows > m.ncols { m.nrows } else { m.ncols };
    let mut e = Echelon::new(ncols);
    let mut order: Vec<SparseVec> = rows;
    order.sort_by_key(|r| r.len());
    for r in order {
        e.insert(r);
    }
    e.rank()
}

/// Basis of `{v : m v = 0}` as a canonical subspace.
pub fn kernel_basis(m: &SparseMatrix) -> Subspace {
    let mut e = Echelon::new(m.ncols);
    let mut order: Vec<&SparseVec> = m.rows.iter().collect();
    order.sort_by_key(|r| r.len());
    for r in order {
        e.insert(r.clone());
    }
    let rref = e.into_rref();
    let pivots: Vec<u32> = rref.iter().map(|r| r.lead().unwrap()).collect();
    let mut is_pivot = vec![false; m.ncols];
    for &p in &pivots {
        is_pivot[p as usize] = true;
    }
    // column f -> list of (pivot row index, coefficient)
    let mut by_free: BTreeMap<u32, Vec<(u32, Q)>> = BTreeMap::new();
    for (r, row) in rref.iter().enumerate() {
        for (j, v) in row.iter().skip(1) {
            by_free.entry(*j).or_default().push((pivots[r], Q::from(-v)));
        }
    }
    let vecs: Vec<SparseVec> = (0..m.ncols as u32)
        .filter(|f| !is_pivot[*f as usize])
        .map(|f| {
            let mut entries = by_free.remove(&f).unwrap_or_default();
            entries.push((f, Q::from(1)));
            entries.sort_by_key(|(i, _)| *i);
            SparseVec(entries)
        })
        .collect();
    Subspace::from_vectors(m.ncols, vecs)
}

/// One solution of `m x = b`, if any.
pub fn solve(m: &SparseMatrix, b: &SparseVec) -> Option<SparseVec> {
    // Augment with -b as an extra column and look for a kernel vector with
    // last coordinate 1.
    let n = m.ncols as u32;
    let mut rows = Vec::with_capacity(m.nrows);
    let bd = b.to_dense(m.nrows);
    for (i, r) in m.rows.iter().enumerate() {
        let mut row = r.clone();
        if bd[i] != 0 {
            row.0.push((n, Q::from(-&bd[i])));
        }
        rows.push(row);
    }
    let aug = SparseMatrix::from_rows(m.ncols + 1, rows);
    let mut e = Echelon::new(aug.ncols);
    for r in aug.rows {
        e.insert(r);
    }
    let rref = e.into_rref();
    if rref.iter().any(|r| r.lead() == Some(n)) {
        return None;
    }
    // x_pivot = -(coef of the augmented column), free variables zero.
    let x = rref
        .iter()
        .filter_map(|r| r.get(n).map(|v| (r.lead().unwrap(), Q::from(-v))))
        .collect::<Vec<_>>();
    Some(SparseVec::from_pairs(x))
}
