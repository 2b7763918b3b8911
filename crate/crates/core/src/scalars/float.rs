//! Big-float backend: dense matrices over `rug::Float`, a one-sided Jacobi
//! SVD for rank/kernel decisions, and Gaussian solves.

use super::{Q, ScalarError, SparseMatrix};
use rug::Float;

/// Singular values below this (relative to the largest) count as zero.
pub const KERNEL_THRESHOLD: f64 = 1e-25;

pub fn to_decimal(x: &Float, digits: usize) -> String {
    x.to_string_radix(10, Some(digits))
}

pub fn from_q(prec: u32, q: &Q) -> Float {
    Float::with_val(prec, q)
}

#[derive(Clone, Debug)]
pub struct FloatMatrix {
    pub prec: u32,
    pub nrows: usize,
    pub ncols: usize,
    pub data: Vec<Vec<Float>>,
}

impl FloatMatrix {
    pub fn zeros(prec: u32, nrows: usize, ncols: usize) -> Self {
        FloatMatrix { prec, nrows, ncols, data: vec![vec![Float::with_val(prec, 0); ncols]; nrows] }
    }

    pub fn from_sparse(prec: u32, m: &SparseMatrix) -> Self {
        let mut f = Self::zeros(prec, m.nrows, m.ncols);
        for (i, r) in m.rows.iter().enumerate() {
            for (j, v) in r.iter() {
                f.data[i][*j as usize] = Float::with_val(prec, v);
            }
        }
        f
    }

    pub fn identity(prec: u32, n: usize) -> Self {
        let mut f = Self::zeros(prec, n, n);
        for i in 0..n {
            f.data[i][i] = Float::with_val(prec, 1);
        }
        f
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.prec, self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn matmul(&self, o: &FloatMatrix) -> FloatMatrix {
        assert_eq!(self.ncols, o.nrows);
        let mut out = Self::zeros(self.prec, self.nrows, o.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..o.ncols {
                    let t = Float::with_val(self.prec, &self.data[i][k] * &o.data[k][j]);
                    out.data[i][j] += t;
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> Float {
        let mut m = Float::with_val(self.prec, 0);
        for r in &self.data {
            for v in r {
                let a = Float::with_val(self.prec, v.abs_ref());
                if a > m {
                    m = a;
                }
            }
        }
        m
    }

    /// One-sided Jacobi SVD: returns singular values (descending) and the
    /// matching right singular vectors as columns of V.
    pub fn svd(&self) -> (Vec<Float>, FloatMatrix) {
        let prec = self.prec;
        let n = self.ncols;
        let mut u = self.clone();
        let mut v = Self::identity(prec, n);
        let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 8));
        for _sweep in 0..60 {
            let mut rotated = false;
            for p in 0..n {
                for q in p + 1..n {
                    let (mut a, mut b, mut c) =
                        (Float::with_val(prec, 0), Float::with_val(prec, 0), Float::with_val(prec, 0));
                    for i in 0..u.nrows {
                        a += Float::with_val(prec, u.data[i][p].square_ref());
                        b += Float::with_val(prec, u.data[i][q].square_ref());
                        c += Float::with_val(prec, &u.data[i][p] * &u.data[i][q]);
                    }
                    let ab = Float::with_val(prec, &a * &b).sqrt();
                    if c.is_zero() || Float::with_val(prec, c.abs_ref()) <= Float::with_val(prec, &eps * &ab) {
                        continue;
                    }
                    rotated = true;
                    let zeta = Float::with_val(prec, &b - &a) / Float::with_val(prec, &c * 2u32);
                    let sign = if zeta.is_sign_negative() { -1 } else { 1 };
                    let t = Float::with_val(prec, sign)
                        / (Float::with_val(prec, zeta.abs_ref())
                            + Float::with_val(prec, Float::with_val(prec, zeta.square_ref()) + 1u32).sqrt());
                    let cs = Float::with_val(prec, 1u32) / (Float::with_val(prec, t.square_ref()) + 1u32).sqrt();
                    let sn = Float::with_val(prec, &cs * &t);
                    for m in [&mut u, &mut v] {
                        for i in 0..m.nrows {
                            let xp = m.data[i][p].clone();
                            let xq = m.data[i][q].clone();
                            m.data[i][p] = Float::with_val(prec, &cs * &xp) - Float::with_val(prec, &sn * &xq);
                            m.data[i][q] = Float::with_val(prec, &sn * &xp) + Float::with_val(prec, &cs * &xq);
                        }
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let mut sv: Vec<(Float, usize)> = (0..n)
            .map(|j| {
                let mut s = Float::with_val(prec, 0);
                for i in 0..u.nrows {
                    s += Float::with_val(prec, u.data[i][j].square_ref());
                }
                (s.sqrt(), j)
            })
            .collect();
        sv.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
        let mut vs = Self::zeros(prec, n, n);
        for (newj, (_, oldj)) in sv.iter().enumerate() {
            for i in 0..n {
                vs.data[i][newj] = v.data[i][*oldj].clone();
            }
        }
        (sv.into_iter().map(|x| x.0).collect(), vs)
    }

    /// Kernel basis (columns) by singular-value threshold relative to the
    /// largest singular value. Errors when a singular value sits within a
    /// factor of 10 of the threshold.
    pub fn kernel(&self) -> Result<Vec<Vec<Float>>, ScalarError> {
        let (s, v) = self.svd();
        let smax = s.first().map(|x| x.to_f64()).unwrap_or(0.0);
        if smax == 0.0 {
            return Ok((0..self.ncols).map(|j| v.data.iter().map(|r| r[j].clone()).collect()).collect());
        }
        let mut out = Vec::new();
        for (j, sj) in s.iter().enumerate() {
            let rel = sj.to_f64() / smax;
            if rel > KERNEL_THRESHOLD / 10.0 && rel < KERNEL_THRESHOLD * 10.0 {
                return Err(ScalarError::IllConditioned { value: rel, threshold: KERNEL_THRESHOLD });
            }
            if rel <= KERNEL_THRESHOLD {
                out.push(v.data.iter().map(|r| r[j].clone()).collect());
            }
        }
        Ok(out)
    }

    /// Solves `self * X = rhs` for square `self` (partial pivoting).
    pub fn solve(&self, rhs: &FloatMatrix) -> Result<FloatMatrix, ScalarError> {
        let n = self.nrows;
        if n != self.ncols {
            return Err(ScalarError::NotSquare(n, self.ncols));
        }
        let prec = self.prec;
        let mut a = self.data.clone();
        let mut b = rhs.data.clone();
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&i, &j| a[i][col].clone().abs().partial_cmp(&a[j][col].clone().abs()).unwrap())
                .unwrap();
            if a[piv][col].is_zero() {
                return Err(ScalarError::Singular);
            }
            a.swap(col, piv);
            b.swap(col, piv);
            for r in col + 1..n {
                let f = Float::with_val(prec, &a[r][col] / &a[col][col]);
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let t = Float::with_val(prec, &f * &a[col][j]);
                    a[r][j] -= t;
                }
                for j in 0..rhs.ncols {
                    let t = Float::with_val(prec, &f * &b[col][j]);
                    b[r][j] -= t;
                }
            }
        }
        let mut x = FloatMatrix::zeros(prec, n, rhs.ncols);
        for j in 0..rhs.ncols {
            for i in (0..n).rev() {
                let mut s = b[i][j].clone();
                for k in i + 1..n {
                    s -= Float::with_val(prec, &a[i][k] * &x.data[k][j]);
                }
                x.data[i][j] = s / &a[i][i];
            }
        }
        Ok(x)
    }
}
