use super::PhiSplit;
use crate::exterior::{ext_basis, Exterior, FloatMultiVector, HodgeStar};
use crate::lie_core::LieError;
use crate::scalars::float::{to_decimal, FloatMatrix, KERNEL_THRESHOLD};
use crate::scalars::Backend;
use rug::Float;

/// `beta -> *(beta ^ phi) ^ phi` compared with `beta -> *beta` on
/// `Lambda^{n-l-1}_{phi-}`.
#[derive(Clone, Debug)]
pub struct XiReport {
    pub domain_dim: usize,
    pub c: Float,
    /// `max |X - c I|` where `X` expresses `Xi` in the `*beta_j` frame.
    pub max_deviation: Float,
    /// Residual of expressing `Xi(beta_j)` in the span of the `*beta_k`.
    pub fit_residual: Float,
    pub prec: u32,
}

impl XiReport {
    /// Tolerance `1e-25 |c|` on both the deviation and the fit.
    pub fn passes(&self) -> bool {
        let tol = Float::with_val(self.prec, self.c.abs_ref()) * KERNEL_THRESHOLD;
        !self.c.is_zero() && self.max_deviation < tol && self.fit_residual < tol
    }

    pub fn c_decimal(&self) -> String {
        to_decimal(&self.c, 30)
    }
}

/// `None` when `Lambda^{n-l-1}_{phi-}` is empty (e.g. `n < l + 1`).
pub fn xi_constant(ext: &Exterior, split: &PhiSplit, backend: Backend) -> Result<Option<XiReport>, LieError> {
    let n = ext.n();
    let l = split.l;
    if n < l + 1 {
        return Ok(None);
    }
    let k = n - l - 1;
    let dom = &split.minus[k];
    if dom.dim() == 0 {
        return Ok(None);
    }
    let star = HodgeStar::new(ext, backend).map_err(|e| LieError::Invariant(e.to_string()))?;
    let prec = star.prec();
    let phi = FloatMultiVector::from_exact(&split.phi, prec);
    let target = ext_basis(n, l + 1);
    let m = dom.dim();
    let mut m1 = FloatMatrix::zeros(prec, target.dim(), m);
    let mut m2 = FloatMatrix::zeros(prec, target.dim(), m);
    for (j, b) in dom.basis().iter().enumerate() {
        let beta = FloatMultiVector::from_exact(&ext.element(k, b), prec);
        let xi = star.star(&beta.wedge(&phi)).wedge(&phi);
        let sb = star.star(&beta);
        for (mask, v) in &xi.terms {
            m1.data[target.index(*mask) as usize][j] = v.clone();
        }
        for (mask, v) in &sb.terms {
            m2.data[target.index(*mask) as usize][j] = v.clone();
        }
    }
    // X = (M2^T M2)^{-1} M2^T M1
    let m2t = m2.transpose();
    let x = m2t.matmul(&m2).solve(&m2t.matmul(&m1)).map_err(LieError::from)?;
    let mut c = Float::with_val(prec, 0);
    for i in 0..m {
        c += &x.data[i][i];
    }
    c /= m as u32;
    let mut dev = Float::with_val(prec, 0);
    for i in 0..m {
        for j in 0..m {
            let mut e = x.data[i][j].clone();
            if i == j {
                e -= &c;
            }
            e.abs_mut();
            if e > dev {
                dev = e;
            }
        }
    }
    let fit = m2.matmul(&x);
    let mut res = Float::with_val(prec, 0);
    for i in 0..fit.nrows {
        for j in 0..m {
            let e = Float::with_val(prec, &fit.data[i][j] - &m1.data[i][j]).abs();
            if e > res {
                res = e;
            }
        }
    }
    Ok(Some(XiReport { domain_dim: m, c, max_deviation: dev, fit_residual: res, prec }))
}
