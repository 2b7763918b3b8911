//! Root systems in Bourbaki numbering, weights, and the Weyl dimension formula.

use super::LieError;
use crate::scalars::{dense_inverse, Q};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    G2,
    F4,
}

impl CartanType {
    pub fn rank(&self) -> usize {
        match *self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) => n,
            CartanType::G2 => 2,
            CartanType::F4 => 4,
        }
    }

    pub fn positive_root_count(&self) -> usize {
        match *self {
            CartanType::A(n) => n * (n + 1) / 2,
            CartanType::B(n) | CartanType::C(n) => n * n,
            CartanType::D(n) => n * (n - 1),
            CartanType::G2 => 6,
            CartanType::F4 => 24,
        }
    }

    /// Symmetric form on simple roots.
    fn simple_form(&self) -> Vec<Vec<Q>> {
        let r = self.rank();
        let mut b = vec![vec![Q::new(); r]; r];
        let link = |b: &mut Vec<Vec<Q>>, i: usize, j: usize, v: Q| {
            b[i][j] = v.clone();
            b[j][i] = v;
        };
        match *self {
            CartanType::A(n) => {
                for i in 0..n {
                    b[i][i] = Q::from(2);
                    if i + 1 < n {
                        link(&mut b, i, i + 1, Q::from(-1));
                    }
                }
            }
            CartanType::B(n) => {
                for i in 0..n {
                    b[i][i] = Q::from(if i + 1 == n { 1 } else { 2 });
                    if i + 1 < n {
                        link(&mut b, i, i + 1, Q::from(-1));
                    }
                }
            }
            CartanType::C(n) => {
                for i in 0..n {
                    b[i][i] = Q::from(if i + 1 == n { 4 } else { 2 });
                    if i + 1 < n {
                        link(&mut b, i, i + 1, Q::from(if i + 2 == n { -2 } else { -1 }));
                    }
                }
            }
            CartanType::D(n) => {
                for i in 0..n {
                    b[i][i] = Q::from(2);
                }
                for i in 0..n.saturating_sub(2) {
                    link(&mut b, i, i + 1, Q::from(-1));
                }
                if n >= 3 {
                    link(&mut b, n - 3, n - 1, Q::from(-1));
                }
            }
            CartanType::G2 => {
                b[0][0] = Q::from(2);
                b[1][1] = Q::from(6);
                link(&mut b, 0, 1, Q::from(-3));
            }
            CartanType::F4 => {
                b[0][0] = Q::from(2);
                b[1][1] = Q::from(2);
                b[2][2] = Q::from(1);
                b[3][3] = Q::from(1);
                link(&mut b, 0, 1, Q::from(-1));
                link(&mut b, 1, 2, Q::from(-1));
                link(&mut b, 2, 3, Q::from((-1, 2)));
            }
        }
        b
    }

    /// The involution `-w_0` on fundamental weights, as a permutation.
    pub fn dual_permutation(&self) -> Vec<usize> {
        let r = self.rank();
        match *self {
            CartanType::A(n) => (0..n).rev().collect(),
            CartanType::D(n) if n % 2 == 1 => {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(n - 2, n - 1);
                p
            }
            _ => (0..r).collect(),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::G2 => write!(f, "G2"),
            CartanType::F4 => write!(f, "F4"),
        }
    }
}

/// A root in simple-root coordinates.
pub type Root = Vec<i64>;

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub ty: CartanType,
    pub rank: usize,
    /// `(alpha_i, alpha_j)`
    pub form: Vec<Vec<Q>>,
    /// `A[i][j] = <alpha_i, alpha_j^vee>`
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots ordered by height, then lexicographically.
    pub positive: Vec<Root>,
    index: HashMap<Root, usize>,
}

impl RootDatum {
    pub fn new(ty: CartanType) -> Result<Self, LieError> {
        let rank = ty.rank();
        let bad = match ty {
            CartanType::A(n) => n < 1,
            CartanType::B(n) => n < 2,
            CartanType::C(n) => n < 2,
            CartanType::D(n) => n < 3,
            _ => false,
        };
        if bad {
            return Err(LieError::Unsupported(format!("{ty}")));
        }
        let form = ty.simple_form();
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let v = Q::from(&form[i][j] * 2) / &form[j][j];
                        v.numer().to_i64().filter(|_| *v.denom() == 1).expect("integral Cartan matrix")
                    })
                    .collect()
            })
            .collect();
        let mut positive: Vec<Root> = (0..rank)
            .map(|i| {
                let mut r = vec![0; rank];
                r[i] = 1;
                r
            })
            .collect();
        let mut layer = positive.clone();
        let mut seen: std::collections::HashSet<Root> = positive.iter().cloned().collect();
        while !layer.is_empty() {
            let mut next: Vec<Root> = Vec::new();
            for beta in &layer {
                for i in 0..rank {
                    let pairing: i64 = (0..rank).map(|k| beta[k] * cartan[k][i]).sum();
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if seen.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q = p - pairing;
                    if q >= 1 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if seen.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            next.sort_by(|a, b| b.cmp(a));
            positive.extend(next.iter().cloned());
            layer = next;
        }
        if positive.len() != ty.positive_root_count() {
            return Err(LieError::Invariant(format!(
                "{ty}: generated {} positive roots, expected {}",
                positive.len(),
                ty.positive_root_count()
            )));
        }
        let mut index = HashMap::new();
        for (k, r) in positive.iter().enumerate() {
            index.insert(r.clone(), k);
        }
        let p = positive.len();
        for (k, r) in positive.iter().enumerate() {
            index.insert(r.iter().map(|c| -c).collect(), p + k);
        }
        Ok(RootDatum { ty, rank, form, cartan, positive, index })
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// Root by global index: positives first, then their negatives.
    pub fn root(&self, k: usize) -> Root {
        let p = self.positive.len();
        if k < p {
            self.positive[k].clone()
        } else {
            self.positive[k - p].iter().map(|c| -c).collect()
        }
    }

    pub fn index_of(&self, r: &[i64]) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_positive_index(&self, k: usize) -> bool {
        k < self.positive.len()
    }

    pub fn negate_index(&self, k: usize) -> usize {
        let p = self.positive.len();
        if k < p {
            k + p
        } else {
            k - p
        }
    }

    pub fn height(r: &[i64]) -> i64 {
        r.iter().sum()
    }

    pub fn highest_root(&self) -> Root {
        self.positive.last().unwrap().clone()
    }

    /// `(a, b)` for roots in simple-root coordinates.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> Q {
        let mut s = Q::new();
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if b[j] != 0 {
                    s += Q::from(&self.form[i][j] * (a[i] * b[j]));
                }
            }
        }
        s
    }

    /// `<a, alpha_i^vee>` for a root `a`.
    pub fn pairing(&self, a: &[i64], i: usize) -> i64 {
        (0..self.rank).map(|k| a[k] * self.cartan[k][i]).sum()
    }

    /// Coroot of `a` in the basis of simple coroots.
    pub fn coroot(&self, a: &[i64]) -> Vec<Q> {
        let aa = self.inner(a, a);
        (0..self.rank).map(|i| Q::from(&self.form[i][i] * a[i]) / &aa).collect()
    }

    /// Fundamental-weight coordinates of a root.
    pub fn root_to_weight(&self, a: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|i| self.pairing(a, i)).collect()
    }

    fn weight_in_roots(&self, m: &[i64]) -> Vec<Q> {
        let binv = dense_inverse(&self.form).expect("simple form is nondegenerate");
        // pi_i = sum_k (d_i/2) Binv[i][k] alpha_k
        let mut out = vec![Q::new(); self.rank];
        for i in 0..self.rank {
            if m[i] == 0 {
                continue;
            }
            let half = Q::from(&self.form[i][i] / 2);
            for k in 0..self.rank {
                out[k] += Q::from(&half * &binv[i][k]) * m[i];
            }
        }
        out
    }

    /// `(lambda, mu)` for weights in fundamental-weight coordinates.
    pub fn weight_inner(&self, l: &[i64], m: &[i64]) -> Q {
        let lr = self.weight_in_roots(l);
        let mr = self.weight_in_roots(m);
        let mut s = Q::new();
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += Q::from(&lr[i] * &mr[j]) * &self.form[i][j];
            }
        }
        s
    }

    /// Weyl dimension formula.
    pub fn weyl_dim(&self, weight: &[i64]) -> Result<u64, LieError> {
        if weight.len() != self.rank || weight.iter().any(|m| *m < 0) {
            return Err(LieError::NotDominant(weight.to_vec()));
        }
        let mut num = Q::from(1);
        for a in &self.positive {
            // (mu, alpha) = sum_j mu_j c_j d_j / 2 with alpha = sum c_j alpha_j
            let mut top = Q::new();
            let mut bot = Q::new();
            for j in 0..self.rank {
                let dj = &self.form[j][j];
                top += Q::from(dj * (a[j] * (weight[j] + 1)));
                bot += Q::from(dj * a[j]);
            }
            num *= top / bot;
        }
        if *num.denom() != 1 {
            return Err(LieError::Invariant(format!("weyl_dim not integral: {num}")));
        }
        Ok(num.numer().to_u64().expect("dimension fits u64"))
    }

    /// Casimir eigenvalue on the irreducible of highest weight `lambda`,
    /// normalized so the adjoint representation gives 1.
    pub fn casimir_value(&self, weight: &[i64]) -> Q {
        let rho = vec![1i64; self.rank];
        let shifted = |w: &[i64]| -> Vec<i64> { w.iter().zip(&rho).map(|(a, b)| a + 2 * b).collect() };
        let theta = self.root_to_weight(&self.highest_root());
        self.weight_inner(weight, &shifted(weight)) / self.weight_inner(&theta, &shifted(&theta))
    }

    /// Highest weights of the complexified complement of `g` in `Lambda^2(g)`:
    /// `2 theta - alpha_i` for each simple root with `theta - alpha_i` a root.
    pub fn perp_highest_weights(&self) -> Vec<Vec<i64>> {
        let theta = self.highest_root();
        let tw = self.root_to_weight(&theta);
        let mut out = Vec::new();
        for i in 0..self.rank {
            let mut t = theta.clone();
            t[i] -= 1;
            if self.index_of(&t).is_some() {
                out.push((0..self.rank).map(|j| 2 * tw[j] - self.cartan[i][j]).collect());
            }
        }
        out
    }

    /// `-w_0 lambda`.
    pub fn dual_weight(&self, w: &[i64]) -> Vec<i64> {
        let p = self.ty.dual_permutation();
        let mut out = vec![0; self.rank];
        for i in 0..self.rank {
            out[p[i]] = w[i];
        }
        out
    }

    pub fn fundamental(&self, i: usize) -> Vec<i64> {
        let mut w = vec![0; self.rank];
        w[i] = 1;
        w
    }

    /// Exponents, sorted. `e` occurs `#{height e} - #{height e+1}` times.
    pub fn exponents(&self) -> Vec<usize> {
        let mut by_height = vec![0i64; 2];
        for r in &self.positive {
            let h = Self::height(r) as usize;
            if by_height.len() <= h + 1 {
                by_height.resize(h + 2, 0);
            }
            by_height[h] += 1;
        }
        let mut out = Vec::new();
        for e in 1..by_height.len() - 1 {
            for _ in 0..(by_height[e] - by_height[e + 1]) {
                out.push(e);
            }
        }
        out
    }
}
