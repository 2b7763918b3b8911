//! Chevalley basis structure constants and the compact real form.
//!
//! `N_{a,b}` is fixed by `N = +(p+1)` on extraspecial pairs and propagated
//! with the usual relations (antisymmetry, the cyclic rule weighted by root
//! lengths, `N_{-a,-b} = -N_{a,b}`, and the four-root relation).

use super::complex::CQ;
use super::roots::RootDatum;
use super::LieError;
use crate::scalars::{SparseVec, Q};
use std::collections::HashMap;

pub struct Chevalley<'a> {
    pub rd: &'a RootDatum,
    memo: HashMap<(usize, usize), i64>,
}

impl<'a> Chevalley<'a> {
    pub fn new(rd: &'a RootDatum) -> Self {
        Chevalley { rd, memo: HashMap::new() }
    }

    fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        let ra = self.rd.root(a);
        let rb = self.rd.root(b);
        let s: Vec<i64> = ra.iter().zip(&rb).map(|(x, y)| x + y).collect();
        self.rd.index_of(&s)
    }

    fn len2(&self, k: usize) -> Q {
        let r = self.rd.root(k);
        self.rd.inner(&r, &r)
    }

    fn extraspecial(&self, xi: usize) -> (usize, usize) {
        let p = self.rd.num_positive();
        for a in 0..p {
            let b = match self.diff_index(xi, a) {
                Some(b) if b < p => b,
                _ => continue,
            };
            if a < b {
                return (a, b);
            }
        }
        unreachable!("non-simple positive root without an extraspecial pair")
    }

    fn diff_index(&self, a: usize, b: usize) -> Option<usize> {
        let ra = self.rd.root(a);
        let rb = self.rd.root(b);
        let s: Vec<i64> = ra.iter().zip(&rb).map(|(x, y)| x - y).collect();
        self.rd.index_of(&s)
    }

    /// Largest `p` with `b - p a` a root.
    fn string_p(&self, a: usize, b: usize) -> i64 {
        let ra = self.rd.root(a);
        let mut cur = self.rd.root(b);
        let mut p = 0;
        loop {
            for (c, x) in cur.iter_mut().zip(&ra) {
                *c -= x;
            }
            if self.rd.index_of(&cur).is_some() {
                p += 1;
            } else {
                return p;
            }
        }
    }

    /// Structure constant `N_{a,b}` for global root indices.
    pub fn n(&mut self, a: usize, b: usize) -> i64 {
        if self.sum_index(a, b).is_none() {
            return 0;
        }
        if let Some(v) = self.memo.get(&(a, b)) {
            return *v;
        }
        let v = self.compute(a, b);
        self.memo.insert((a, b), v);
        v
    }

    fn compute(&mut self, a: usize, b: usize) -> i64 {
        let rd = self.rd;
        let (pa, pb) = (rd.is_positive_index(a), rd.is_positive_index(b));
        if pa && pb {
            if a > b {
                return -self.n(b, a);
            }
            let xi = self.sum_index(a, b).unwrap();
            let (al, be) = self.extraspecial(xi);
            if (a, b) == (al, be) {
                return self.string_p(al, be) + 1;
            }
            let (ga, de) = (a, b);
            let nab = self.n(al, be);
            let neg = |k: usize| rd.negate_index(k);
            let mut acc = Q::new();
            if let Some(bg) = self.diff_index(be, ga) {
                let t = self.n(be, neg(ga)) * self.n(al, neg(de));
                acc += Q::from(t) / self.len2(bg);
            }
            if let Some(ag) = self.diff_index(al, ga) {
                let t = self.n(neg(ga), al) * self.n(be, neg(de));
                acc += Q::from(t) / self.len2(ag);
            }
            let v = acc * self.len2(xi) / nab;
            assert_eq!(*v.denom(), 1, "non-integral N");
            return v.numer().to_i64().unwrap();
        }
        if !pa && !pb {
            return -self.n(rd.negate_index(a), rd.negate_index(b));
        }
        // Mixed signs: use the cyclic rule on (a, b, -(a+b)).
        let g = self.sum_index(a, b).unwrap();
        let z = rd.negate_index(g);
        let pz = rd.is_positive_index(z);
        let v = if pb == pz {
            // N_{a,b} = (z,z)/(a,a) N_{b,z}
            Q::from(self.n(b, z)) * self.len2(z) / self.len2(a)
        } else {
            // N_{a,b} = (z,z)/(b,b) N_{z,a}
            Q::from(self.n(z, a)) * self.len2(z) / self.len2(b)
        };
        assert_eq!(*v.denom(), 1, "non-integral N");
        v.numer().to_i64().unwrap()
    }

    /// Complex Chevalley basis: `H_1..H_r`, then `E_a` for every root index.
    pub fn complex_dim(&self) -> usize {
        self.rd.rank + 2 * self.rd.num_positive()
    }

    /// `[X_i, X_j]` in the complex Chevalley basis, integer coefficients.
    pub fn complex_bracket(&mut self, i: usize, j: usize) -> Vec<(usize, i64)> {
        let r = self.rd.rank;
        match (i < r, j < r) {
            (true, true) => vec![],
            (true, false) => {
                let a = self.rd.root(j - r);
                vec![(j, self.rd.pairing(&a, i))]
            }
            (false, true) => self.complex_bracket(j, i).into_iter().map(|(k, v)| (k, -v)).collect(),
            (false, false) => {
                let (a, b) = (i - r, j - r);
                if self.rd.negate_index(a) == b {
                    let ra = self.rd.root(a);
                    self.rd
                        .coroot(&ra)
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| *c != 0)
                        .map(|(k, c)| {
                            assert_eq!(*c.denom(), 1);
                            (k, c.numer().to_i64().unwrap())
                        })
                        .collect()
                } else {
                    match self.sum_index(a, b) {
                        Some(s) => vec![(r + s, self.n(a, b))],
                        None => vec![],
                    }
                }
            }
        }
    }

    /// Compact basis element `k` expressed in the complex Chevalley basis.
    ///
    /// Ordering: `h_1..h_r`, then `e_a, f_a` for each positive root `a`.
    pub fn compact_element(&self, k: usize) -> Vec<(usize, CQ)> {
        let r = self.rd.rank;
        let p = self.rd.num_positive();
        if k < r {
            return vec![(k, CQ::i())];
        }
        let a = (k - r) / 2;
        let ea = r + a;
        let ena = r + p + a;
        if (k - r).is_multiple_of(2) {
            vec![(ea, CQ::i()), (ena, CQ::i())]
        } else {
            vec![(ea, CQ::real(1)), (ena, CQ::real(-1))]
        }
    }

    /// Inverse of `compact_element`: real coordinates of a complex vector
    /// that lies in the compact form.
    pub fn to_compact(&self, z: &[CQ]) -> Result<SparseVec, LieError> {
        let r = self.rd.rank;
        let p = self.rd.num_positive();
        let mut out = Vec::new();
        let minus_i = CQ::imag(-1);
        let half = Q::from((1, 2));
        let push = |out: &mut Vec<(u32, Q)>, k: usize, c: CQ| -> Result<(), LieError> {
            if c.im != 0 {
                return Err(LieError::Invariant("bracket left the compact form".into()));
            }
            if c.re != 0 {
                out.push((k as u32, c.re));
            }
            Ok(())
        };
        for i in 0..r {
            push(&mut out, i, &minus_i * &z[i])?;
        }
        for a in 0..p {
            let (za, zna) = (&z[r + a], &z[r + p + a]);
            push(&mut out, r + 2 * a, (&minus_i * &(za + zna)).scale(&half))?;
            push(&mut out, r + 2 * a + 1, (za - zna).scale(&half))?;
        }
        Ok(SparseVec(out))
    }

    /// Structure constants of the compact form: `table[i][j] = [b_i, b_j]`.
    pub fn compact_table(&mut self) -> Result<Vec<Vec<SparseVec>>, LieError> {
        let n = self.complex_dim();
        let elems: Vec<Vec<(usize, CQ)>> = (0..n).map(|k| self.compact_element(k)).collect();
        let mut table = vec![vec![SparseVec::new(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let mut z = vec![CQ::default(); n];
                for (x, cx) in &elems[i] {
                    for (y, cy) in &elems[j] {
                        let c = cx * cy;
                        for (k, v) in self.complex_bracket(*x, *y) {
                            z[k] = &z[k] + &c.scale(&Q::from(v));
                        }
                    }
                }
                let v = self.to_compact(&z)?;
                table[j][i] = v.neg();
                table[i][j] = v;
            }
        }
        Ok(table)
    }

    pub fn labels(&self) -> Vec<String> {
        let r = self.rd.rank;
        let mut out: Vec<String> = (1..=r).map(|i| format!("h{i}")).collect();
        for a in &self.rd.positive {
            let tag: Vec<String> = a.iter().map(|c| c.to_string()).collect();
            out.push(format!("e({})", tag.join(",")));
            out.push(format!("f({})", tag.join(",")));
        }
        out
    }
}
