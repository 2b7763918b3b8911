use super::ops::Exterior;
use super::{ext_basis, wedge_masks, ExtError, Mask, MultiVector, MAX_DIM};
use crate::scalars::{float::from_q, Backend, Q};
use rug::Float;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Element of `Lambda^k(g)` with big-float coefficients.
#[derive(Clone, Debug)]
pub struct FloatMultiVector {
    pub algebra: Arc<str>,
    pub n: usize,
    pub degree: usize,
    pub prec: u32,
    pub terms: BTreeMap<Mask, Float>,
}

impl FloatMultiVector {
    pub fn from_exact(a: &MultiVector, prec: u32) -> Self {
        FloatMultiVector {
            algebra: a.algebra.clone(),
            n: a.n,
            degree: a.degree,
            prec,
            terms: a.terms.iter().map(|(m, v)| (*m, from_q(prec, v))).collect(),
        }
    }

    pub fn zero(algebra: &Arc<str>, n: usize, degree: usize, prec: u32) -> Self {
        FloatMultiVector { algebra: algebra.clone(), n, degree, prec, terms: BTreeMap::new() }
    }

    pub fn coeff(&self, m: Mask) -> Float {
        self.terms.get(&m).cloned().unwrap_or_else(|| Float::with_val(self.prec, 0))
    }

    pub fn scale(&self, c: &Float) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn axpy(&self, c: &Float, o: &FloatMultiVector) -> Self {
        let mut out = self.clone();
        for (m, v) in &o.terms {
            let t = Float::with_val(self.prec, c * v);
            *out.terms.entry(*m).or_insert_with(|| Float::with_val(self.prec, 0)) += t;
        }
        out
    }

    pub fn wedge(&self, o: &FloatMultiVector) -> Self {
        let mut terms: BTreeMap<Mask, Float> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                if let Some((neg, m)) = wedge_masks(*a, *b) {
                    let p = Float::with_val(self.prec, x * y);
                    let e = terms.entry(m).or_insert_with(|| Float::with_val(self.prec, 0));
                    if neg {
                        *e -= p;
                    } else {
                        *e += p;
                    }
                }
            }
        }
        FloatMultiVector { algebra: self.algebra.clone(), n: self.n, degree: self.degree + o.degree, prec: self.prec, terms }
    }

    /// Largest coefficient in absolute value.
    pub fn max_abs(&self) -> Float {
        let mut m = Float::with_val(self.prec, 0);
        for v in self.terms.values() {
            let a = Float::with_val(self.prec, v.abs_ref());
            if a > m {
                m = a;
            }
        }
        m
    }
}

/// Hodge star on `Lambda(g)` for the induced metric.
///
/// `*b = (1/sqrt(det G)) sum_I sign(I, I^c) (G_k b)_I e_{I^c}`, which is the
/// unique map with `a ^ *b = <a, b> vol` and `vol = e_1 ^ ... ^ e_n / sqrt(det G)`.
pub struct HodgeStar<'a> {
    ext: &'a Exterior,
    prec: u32,
    inv_sqrt_det: Float,
}

impl<'a> HodgeStar<'a> {
    pub fn new(ext: &'a Exterior, backend: Backend) -> Result<Self, ExtError> {
        let Backend::Float { bits } = backend else { return Err(ExtError::ExactStar) };
        let n = ext.n();
        let det: Q = ext.gram(n).matrix().get(0, 0);
        let mut s = from_q(bits, &det);
        s.sqrt_mut();
        s.recip_mut();
        Ok(HodgeStar { ext, prec: bits, inv_sqrt_det: s })
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Unit top-degree element.
    pub fn volume(&self) -> FloatMultiVector {
        let n = self.ext.n();
        let mut v = FloatMultiVector::zero(&self.ext.name, n, n, self.prec);
        v.terms.insert(Mask::MAX >> (MAX_DIM - n), self.inv_sqrt_det.clone());
        v
    }

    pub fn star(&self, b: &FloatMultiVector) -> FloatMultiVector {
        let n = self.ext.n();
        let k = b.degree;
        let full: Mask = Mask::MAX >> (MAX_DIM - n);
        let basis = ext_basis(n, k);
        let gram = self.ext.gram(k).matrix();
        let mut out = FloatMultiVector::zero(&self.ext.name, n, n - k, self.prec);
        // (G_k b)_I = sum_J G_IJ b_J
        let mut gb: BTreeMap<u32, Float> = BTreeMap::new();
        for (m, v) in &b.terms {
            let j = basis.index(*m) as usize;
            // G is symmetric, so row j lists column entries G_{I j}.
            for (i, gij) in gram.rows[j].iter() {
                let t = Float::with_val(self.prec, v * &from_q(self.prec, gij));
                *gb.entry(*i).or_insert_with(|| Float::with_val(self.prec, 0)) += t;
            }
        }
        for (i, v) in gb {
            if v.is_zero() {
                continue;
            }
            let m = basis.masks[i as usize];
            let (neg, _) = wedge_masks(m, full ^ m).unwrap();
            let mut c = Float::with_val(self.prec, &v * &self.inv_sqrt_det);
            if neg {
                c = -c;
            }
            out.terms.insert(full ^ m, c);
        }
        out
    }

    pub fn star_exact(&self, b: &MultiVector) -> FloatMultiVector {
        self.star(&FloatMultiVector::from_exact(b, self.prec))
    }

    /// Induced inner product on float multivectors of equal degree.
    pub fn inner(&self, a: &FloatMultiVector, b: &FloatMultiVector) -> Float {
        let mut acc = Float::with_val(self.prec, 0);
        if a.degree != b.degree {
            return acc;
        }
        let basis = ext_basis(a.n, a.degree);
        let gram = self.ext.gram(a.degree).matrix();
        for (m, x) in &a.terms {
            let i = basis.index(*m) as usize;
            for (j, gij) in gram.rows[i].iter() {
                if let Some(y) = b.terms.get(&basis.masks[*j as usize]) {
                    let t = Float::with_val(self.prec, x * y);
                    acc += t * from_q(self.prec, gij);
                }
            }
        }
        acc
    }
}

/// One-shot Hodge star; errors on the exact backend.
pub fn hodge_star(ext: &Exterior, a: &MultiVector, backend: Backend) -> Result<FloatMultiVector, ExtError> {
    Ok(HodgeStar::new(ext, backend)?.star_exact(a))
}
