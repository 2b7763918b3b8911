//! Naive reference implementation of the exterior calculus used as a test
//! oracle. Forms are maps from sorted index lists to coefficients; nothing
//! here calls into `lieform::exterior`.

#![allow(dead_code)]

use lieform::lie_core::LieAlgebraData;
use lieform::scalars::{dense_inverse, Q};
use rand::Rng;
use std::collections::BTreeMap;

pub type Form = BTreeMap<Vec<usize>, Q>;

/// Sorts `idx`, returning the sign of the permutation, or `None` on a repeat.
pub fn canon(mut idx: Vec<usize>) -> Option<(bool, Vec<usize>)> {
    let mut neg = false;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] == idx[j + 1] {
                return None;
            }
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                neg = !neg;
            }
        }
    }
    Some((neg, idx))
}

fn push(f: &mut Form, idx: Vec<usize>, c: Q) {
    if let Some((neg, k)) = canon(idx) {
        let e = f.entry(k).or_default();
        if neg {
            *e -= c;
        } else {
            *e += c;
        }
    }
}

fn clean(mut f: Form) -> Form {
    f.retain(|_, v| *v != 0);
    f
}

pub fn add(a: &Form, b: &Form, cb: &Q) -> Form {
    let mut f = a.clone();
    for (k, v) in b {
        *f.entry(k.clone()).or_default() += Q::from(v * cb);
    }
    clean(f)
}

pub fn scale(a: &Form, c: &Q) -> Form {
    clean(a.iter().map(|(k, v)| (k.clone(), Q::from(v * c))).collect())
}

pub fn wedge(a: &Form, b: &Form) -> Form {
    let mut f = Form::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let mut idx = ka.clone();
            idx.extend(kb);
            push(&mut f, idx, Q::from(va * vb));
        }
    }
    clean(f)
}

pub fn vector(i: usize) -> Form {
    [(vec![i], Q::from(1))].into()
}

/// Plain interior product with a covector.
pub fn iota(cov: &[Q], a: &Form) -> Form {
    let mut f = Form::new();
    for (k, v) in a {
        for (s, &p) in k.iter().enumerate() {
            if cov[p] == 0 {
                continue;
            }
            let rest: Vec<usize> = k.iter().enumerate().filter(|(t, _)| *t != s).map(|(_, &x)| x).collect();
            let c = Q::from(v * &cov[p]);
            push(&mut f, rest, if s % 2 == 1 { -c } else { c });
        }
    }
    clean(f)
}

pub struct Naive {
    pub n: usize,
    /// `c[i][j][k]`: coefficient of `b_k` in `[b_i, b_j]`.
    pub c: Vec<Vec<Vec<Q>>>,
    pub g: Vec<Vec<Q>>,
    pub ginv: Vec<Vec<Q>>,
    pub omega: Form,
    /// Sign in `rho_*(u ^ w) x = s (<w,x> u - <u,x> w)`.
    pub s: i64,
}

impl Naive {
    /// Rebuilds `G = -Killing` from the bracket table alone.
    pub fn new(alg: &LieAlgebraData) -> Self {
        let n = alg.dim();
        let c: Vec<Vec<Vec<Q>>> = (0..n).map(|i| (0..n).map(|j| alg.bracket_basis(i, j).to_dense(n)).collect()).collect();
        let mut g = vec![vec![Q::new(); n]; n];
        // Killing(b_i, b_j) = sum_{k,l} c[i][l][k] c[j][k][l]
        for i in 0..n {
            for j in 0..n {
                let mut t = Q::new();
                for k in 0..n {
                    for l in 0..n {
                        t += Q::from(&c[i][l][k] * &c[j][k][l]);
                    }
                }
                g[i][j] = -t;
            }
        }
        let ginv = dense_inverse(&g).expect("G invertible");
        let mut omega = Form::new();
        for p in 0..n {
            for q in p + 1..n {
                for r in q + 1..n {
                    let mut w = Q::new();
                    for b in 0..n {
                        for cc in 0..n {
                            w += Q::from(&ginv[q][b] * &ginv[r][cc]) * &c[b][cc][p];
                        }
                    }
                    if w != 0 {
                        omega.insert(vec![p, q, r], w);
                    }
                }
            }
        }
        Naive { n, c, g, ginv, omega, s: -1 }
    }

    pub fn lower(&self, v: &[Q]) -> Vec<Q> {
        (0..self.n).map(|i| (0..self.n).map(|j| Q::from(&self.g[i][j] * &v[j])).sum()).collect()
    }

    pub fn unit(&self, i: usize) -> Vec<Q> {
        (0..self.n).map(|j| Q::from(if i == j { 1 } else { 0 })).collect()
    }

    /// Metric contraction of `b_i`.
    pub fn contract(&self, i: usize, a: &Form) -> Form {
        iota(&self.g[i], a)
    }

    pub fn d1(&self, j: usize) -> Form {
        self.contract(j, &self.omega)
    }

    /// Antiderivation extension of `d`.
    pub fn d(&self, a: &Form) -> Form {
        let mut f = Form::new();
        for (k, v) in a {
            for (s, &p) in k.iter().enumerate() {
                let rest: Form = [(k.iter().enumerate().filter(|(t, _)| *t != s).map(|(_, &x)| x).collect(), Q::from(1))].into();
                let t = wedge(&self.d1(p), &rest);
                let c = if s % 2 == 1 { -v.clone() } else { v.clone() };
                f = add(&f, &t, &c);
            }
        }
        f
    }

    /// Induced inner product: Gram determinants on index sets.
    pub fn inner(&self, a: &Form, b: &Form) -> Q {
        let mut t = Q::new();
        for (ka, va) in a {
            for (kb, vb) in b {
                if ka.len() != kb.len() {
                    continue;
                }
                let m: Vec<Vec<Q>> = ka.iter().map(|&i| kb.iter().map(|&j| self.g[i][j].clone()).collect()).collect();
                t += det(&m) * Q::from(va * vb);
            }
        }
        t
    }

    /// Endomorphism `x -> s (<w,x> u - <u,x> w)` summed over the terms of `tau`.
    pub fn rho_matrix(&self, tau: &Form) -> Vec<Vec<Q>> {
        let n = self.n;
        let mut m = vec![vec![Q::new(); n]; n];
        for (k, c) in tau {
            let (u, w) = (k[0], k[1]);
            for x in 0..n {
                let cs = Q::from(c * self.s);
                m[u][x] += Q::from(&self.g[w][x] * &cs);
                m[w][x] -= Q::from(&self.g[u][x] * &cs);
            }
        }
        m
    }

    /// Derivation extension of the endomorphism `m`.
    pub fn derive(&self, m: &[Vec<Q>], a: &Form) -> Form {
        let mut f = Form::new();
        for (k, v) in a {
            for s in 0..k.len() {
                for (y, row) in m.iter().enumerate() {
                    let e = &row[k[s]];
                    if *e == 0 {
                        continue;
                    }
                    let mut idx = k.clone();
                    idx[s] = y;
                    push(&mut f, idx, Q::from(v * e));
                }
            }
        }
        clean(f)
    }

    pub fn rho(&self, tau: &Form, a: &Form) -> Form {
        self.derive(&self.rho_matrix(tau), a)
    }

    /// Orthogonal projection of a bivector onto the complement of `d(g)`.
    pub fn project_perp(&self, beta: &Form) -> Form {
        let dg: Vec<Form> = (0..self.n).map(|j| self.d1(j)).collect();
        let m: Vec<Vec<Q>> = dg.iter().map(|a| dg.iter().map(|b| self.inner(a, b)).collect()).collect();
        let minv = dense_inverse(&m).expect("d injective on g");
        let r: Vec<Q> = dg.iter().map(|a| self.inner(a, beta)).collect();
        let mut out = beta.clone();
        for j in 0..self.n {
            let a: Q = (0..self.n).map(|i| Q::from(&minv[j][i] * &r[i])).sum();
            out = add(&out, &dg[j], &-a);
        }
        out
    }

    /// `Theta(T) = sum_i b_i (x) Pi(e^i _| T)`, as the list of second factors.
    pub fn theta(&self, t: &Form) -> Vec<Form> {
        (0..self.n).map(|i| self.project_perp(&iota(&self.unit(i), t))).collect()
    }

    pub fn d_plus(&self, x: &[Form]) -> Form {
        let mut f = Form::new();
        for (i, tau) in x.iter().enumerate() {
            f = add(&f, &wedge(&vector(i), &self.rho(tau, &self.omega)), &Q::from(1));
        }
        f
    }

    pub fn d_minus(&self, x: &[Form]) -> Form {
        let mut f = Form::new();
        for (i, tau) in x.iter().enumerate() {
            f = add(&f, &self.contract(i, &self.rho(tau, &self.omega)), &Q::from(1));
        }
        f
    }

    pub fn random_form(&self, k: usize, rng: &mut impl Rng) -> Form {
        let mut f = Form::new();
        for _ in 0..6 {
            let mut idx: Vec<usize> = Vec::new();
            while idx.len() < k {
                let i = rng.gen_range(0..self.n);
                if !idx.contains(&i) {
                    idx.push(i);
                }
            }
            push(&mut f, idx, Q::from(rng.gen_range(-4i64..=4)));
        }
        clean(f)
    }
}

pub fn det(m: &[Vec<Q>]) -> Q {
    match m.len() {
        0 => Q::from(1),
        1 => m[0][0].clone(),
        n => {
            let mut t = Q::new();
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<Q>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
                let term = &m[0][j] * det(&minor);
                if j % 2 == 1 {
                    t -= term;
                } else {
                    t += term;
                }
            }
            t
        }
    }
}

/// `c` with `a = c b` when `b != 0`; panics if not proportional.
pub fn ratio(a: &Form, b: &Form) -> Option<Q> {
    let (k, v) = b.iter().next()?;
    let c = a.get(k).cloned().unwrap_or_default() / v;
    assert_eq!(*a, scale(b, &c), "not proportional");
    Some(c)
}

/// Converts a library multivector's sorted terms (1-based) into a `Form`.
pub fn from_terms(terms: Vec<(Vec<usize>, Q)>) -> Form {
    terms.into_iter().map(|(k, v)| (k.into_iter().map(|i| i - 1).collect(), v)).collect()
}
