//! Gaussian rationals and small dense complex matrices.

use crate::scalars::Q;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CQ {
    pub re: Q,
    pub im: Q,
}

impl CQ {
    pub fn new(re: Q, im: Q) -> Self {
        CQ { re, im }
    }
    pub fn real(re: impl Into<Q>) -> Self {
        CQ { re: re.into(), im: Q::new() }
    }
    pub fn imag(im: impl Into<Q>) -> Self {
        CQ { re: Q::new(), im: im.into() }
    }
    pub fn i() -> Self {
        Self::imag(1)
    }
    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }
    pub fn conj(&self) -> Self {
        CQ { re: self.re.clone(), im: Q::from(-&self.im) }
    }
    pub fn scale(&self, c: &Q) -> Self {
        CQ { re: Q::from(&self.re * c), im: Q::from(&self.im * c) }
    }
}

impl Add for &CQ {
    type Output = CQ;
    fn add(self, o: &CQ) -> CQ {
        CQ { re: Q::from(&self.re + &o.re), im: Q::from(&self.im + &o.im) }
    }
}

impl Sub for &CQ {
    type Output = CQ;
    fn sub(self, o: &CQ) -> CQ {
        CQ { re: Q::from(&self.re - &o.re), im: Q::from(&self.im - &o.im) }
    }
}

impl Mul for &CQ {
    type Output = CQ;
    fn mul(self, o: &CQ) -> CQ {
        CQ {
            re: Q::from(&self.re * &o.re) - Q::from(&self.im * &o.im),
            im: Q::from(&self.re * &o.im) + Q::from(&self.im * &o.re),
        }
    }
}

impl Neg for &CQ {
    type Output = CQ;
    fn neg(self) -> CQ {
        CQ { re: Q::from(-&self.re), im: Q::from(-&self.im) }
    }
}

/// Dense square complex matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMatrix {
    pub n: usize,
    pub a: Vec<CQ>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix { n, a: vec![CQ::default(); n * n] }
    }

    /// `c * E_ij`
    pub fn unit(n: usize, i: usize, j: usize, c: CQ) -> Self {
        let mut m = Self::zeros(n);
        m.a[i * n + j] = c;
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &CQ {
        &self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: CQ) {
        self.a[i * self.n + j] = c;
    }

    pub fn add(&self, o: &CMatrix) -> CMatrix {
        CMatrix { n: self.n, a: self.a.iter().zip(&o.a).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, o: &CMatrix) -> CMatrix {
        CMatrix { n: self.n, a: self.a.iter().zip(&o.a).map(|(x, y)| x - y).collect() }
    }

    pub fn scale(&self, c: &CQ) -> CMatrix {
        CMatrix { n: self.n, a: self.a.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, o: &CMatrix) -> CMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.at(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = o.at(k, j);
                    if !y.is_zero() {
                        let t = &out.a[i * n + j] + &(x * y);
                        out.a[i * n + j] = t;
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, o: &CMatrix) -> CMatrix {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn conj(&self) -> CMatrix {
        CMatrix { n: self.n, a: self.a.iter().map(|x| x.conj()).collect() }
    }

    /// Real coordinates `(re, im)` interleaved, row-major.
    pub fn flatten(&self) -> Vec<Q> {
        self.a.iter().flat_map(|c| [c.re.clone(), c.im.clone()]).collect()
    }

    pub fn block(n: usize, blocks: [[&CMatrix; 2]; 2]) -> CMatrix {
        let mut m = Self::zeros(2 * n);
        for (bi, row) in blocks.iter().enumerate() {
            for (bj, b) in row.iter().enumerate() {
                for i in 0..n {
                    for j in 0..n {
                        m.set(bi * n + i, bj * n + j, b.at(i, j).clone());
                    }
                }
            }
        }
        m
    }
}
