use super::Q;
use std::collections::BTreeMap;

/// Sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec(pub Vec<(u32, Q)>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(Vec::new())
    }

    pub fn unit(i: usize) -> Self {
        SparseVec(vec![(i as u32, Q::from(1))])
    }

    /// Builds from unsorted pairs, summing duplicates and dropping zeros.
    pub fn from_pairs<I: IntoIterator<Item = (u32, Q)>>(it: I) -> Self {
        let mut m: BTreeMap<u32, Q> = BTreeMap::new();
        for (i, v) in it {
            *m.entry(i).or_default() += v;
        }
        SparseVec(m.into_iter().filter(|(_, v)| *v != 0).collect())
    }

    pub fn from_map(m: BTreeMap<u32, Q>) -> Self {
        SparseVec(m.into_iter().filter(|(_, v)| *v != 0).collect())
    }

    pub fn from_dense(d: &[Q]) -> Self {
        SparseVec(
            d.iter()
                .enumerate()
                .filter(|(_, v)| **v != 0)
                .map(|(i, v)| (i as u32, v.clone()))
                .collect(),
        )
    }

    pub fn to_dense(&self, n: usize) -> Vec<Q> {
        let mut d = vec![Q::new(); n];
        for (i, v) in &self.0 {
            d[*i as usize] = v.clone();
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: u32) -> Option<&Q> {
        self.0
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|p| &self.0[p].1)
    }

    pub fn lead(&self) -> Option<u32> {
        self.0.first().map(|(i, _)| *i)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(u32, Q)> {
        self.0.iter()
    }

    pub fn scale(&mut self, c: &Q) {
        if *c == 0 {
            self.0.clear();
            return;
        }
        for (_, v) in self.0.iter_mut() {
            *v *= c;
        }
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let mut s = self.clone();
        s.scale(c);
        s
    }

    pub fn neg(&self) -> Self {
        SparseVec(self.0.iter().map(|(i, v)| (*i, Q::from(-v))).collect())
    }

    /// self + c * other
    pub fn axpy(&self, c: &Q, other: &SparseVec) -> SparseVec {
        if *c == 0 {
            return self.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, Q::from(c * &b[j].1)));
                j += 1;
            } else {
                let v = Q::from(c * &b[j].1) + &a[i].1;
                if v != 0 {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec(out)
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Q::from(1), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Q::from(-1), other)
    }

    pub fn dot(&self, other: &SparseVec) -> Q {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        let mut acc = Q::new();
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += Q::from(&a[i].1 * &b[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    pub fn dot_dense(&self, d: &[Q]) -> Q {
        let mut acc = Q::new();
        for (i, v) in &self.0 {
            acc += Q::from(v * &d[*i as usize]);
        }
        acc
    }

    /// Re-indexes entries through `f`; entries mapped to `None` are dropped.
    pub fn remap(&self, f: impl Fn(u32) -> Option<u32>) -> SparseVec {
        SparseVec::from_pairs(self.0.iter().filter_map(|(i, v)| f(*i).map(|j| (j, v.clone()))))
    }
}

/// Row-major sparse matrix over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![SparseVec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { nrows: n, ncols: n, rows: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn scalar(n: usize, c: &Q) -> Self {
        let mut m = Self::identity(n);
        for r in m.rows.iter_mut() {
            r.scale(c);
        }
        m
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Self {
        SparseMatrix { nrows: rows.len(), ncols, rows }
    }

    pub fn from_columns(nrows: usize, cols: &[SparseVec]) -> Self {
        let mut buckets: Vec<Vec<(u32, Q)>> = vec![Vec::new(); nrows];
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter() {
                buckets[*i as usize].push((j as u32, v.clone()));
            }
        }
        SparseMatrix { nrows, ncols: cols.len(), rows: buckets.into_iter().map(SparseVec).collect() }
    }

    pub fn from_dense(d: &[Vec<Q>]) -> Self {
        let ncols = d.first().map_or(0, |r| r.len());
        SparseMatrix { nrows: d.len(), ncols, rows: d.iter().map(|r| SparseVec::from_dense(r)).collect() }
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        self.rows.iter().map(|r| r.to_dense(self.ncols)).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.rows[i].get(j as u32).cloned().unwrap_or_default()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut buckets: Vec<Vec<(u32, Q)>> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r.iter() {
                buckets[*j as usize].push((i as u32, v.clone()));
            }
        }
        SparseMatrix { nrows: self.ncols, ncols: self.nrows, rows: buckets.into_iter().map(SparseVec).collect() }
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().rows
    }

    pub fn column(&self, j: usize) -> SparseVec {
        SparseVec(
            self.rows
                .iter()
                .enumerate()
                .filter_map(|(i, r)| r.get(j as u32).map(|v| (i as u32, v.clone())))
                .collect(),
        )
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        assert!(v.lead().is_none_or(|_| v.0.last().unwrap().0 < self.ncols as u32));
        SparseVec(
            self.rows
                .iter()
                .enumerate()
                .filter_map(|(i, r)| {
                    let x = r.dot(v);
                    (x != 0).then_some((i as u32, x))
                })
                .collect(),
        )
    }

    pub fn mul_dense(&self, v: &[Q]) -> Vec<Q> {
        self.rows.iter().map(|r| r.dot_dense(v)).collect()
    }

    pub fn matmul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows, "matmul shape mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc: BTreeMap<u32, Q> = BTreeMap::new();
                for (k, a) in r.iter() {
                    for (j, b) in other.rows[*k as usize].iter() {
                        *acc.entry(*j).or_default() += Q::from(a * b);
                    }
                }
                SparseVec::from_map(acc)
            })
            .collect();
        SparseMatrix { nrows: self.nrows, ncols: other.ncols, rows }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.axpy(&Q::from(1), other)
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.axpy(&Q::from(-1), other)
    }

    /// self + c * other
    pub fn axpy(&self, c: &Q, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols), "shape mismatch");
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.axpy(c, b)).collect(),
        }
    }

    pub fn scaled(&self, c: &Q) -> SparseMatrix {
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, rows: self.rows.iter().map(|r| r.scaled(c)).collect() }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.ncols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        SparseMatrix { nrows: rows.len(), ncols: self.ncols, rows }
    }

    /// Kronecker product.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut rows = Vec::with_capacity(self.nrows * other.nrows);
        for ra in &self.rows {
            for rb in &other.rows {
                let mut out = Vec::with_capacity(ra.len() * rb.len());
                for (ja, a) in ra.iter() {
                    for (jb, b) in rb.iter() {
                        out.push((*ja * other.ncols as u32 + *jb, Q::from(a * b)));
                    }
                }
                rows.push(SparseVec(out));
            }
        }
        SparseMatrix { nrows: self.nrows * other.nrows, ncols: self.ncols * other.ncols, rows }
    }

    pub fn is_symmetric(&self) -> bool {
        self.nrows == self.ncols && *self == self.transpose()
    }

    /// If `self == c * other` for a single rational `c`, returns it.
    pub fn ratio_to(&self, other: &SparseMatrix) -> Option<Q> {
        if (self.nrows, self.ncols) != (other.nrows, other.ncols) {
            return None;
        }
        let mut c: Option<Q> = None;
        for (a, b) in self.rows.iter().zip(&other.rows) {
            if let Some((j, bv)) = b.0.first() {
                let av = a.get(*j).cloned().unwrap_or_default();
                c = Some(Q::from(&av / bv));
                break;
            }
        }
        let c = c.unwrap_or_default();
        (self.sub(&other.scaled(&c)).is_zero()).then_some(c)
    }

    pub fn trace(&self) -> Q {
        let mut t = Q::new();
        for (i, r) in self.rows.iter().enumerate() {
            if let Some(v) = r.get(i as u32) {
                t += v;
            }
        }
        t
    }
}
