//! Sparse exterior algebra `Lambda^k(g)` and the invariant operators on it.
//!
//! Basis `k`-vectors are `u32` bitmasks (so `dim g <= 32`), ordered
//! lexicographically as increasing index tuples. Elements live in the
//! vector picture: `omega_g` is stored with indices raised by the metric so
//! that contraction, wedge and the induced Gram all act on the same space.

mod hodge;
pub mod json;
mod ops;

pub use hodge::{hodge_star, FloatMultiVector, HodgeStar};
pub use ops::{cartan_3form, derivation_matrix, induced_gram_matrix, CartanForm, Exterior, LinOp, Space};

use crate::scalars::{SparseVec, Q};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

pub type Mask = u64;

/// Largest `n` for which `Lambda(R^n)` fits the bitmask basis.
pub const MAX_DIM: usize = Mask::BITS as usize;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum ExtError {
    #[error("algebra mismatch: {0} vs {1}")]
    AlgebraMismatch(String, String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("the Hodge star needs the float backend; use the star-free equivalents (orthogonal complements, pairings) on exact data")]
    ExactStar,
    #[error("{0}")]
    Json(String),
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

/// Lexicographically ordered basis of `Lambda^k(R^n)`.
#[derive(Debug)]
pub struct ExtBasis {
    pub n: usize,
    pub k: usize,
    pub masks: Vec<Mask>,
    index: HashMap<Mask, u32>,
}

impl ExtBasis {
    fn build(n: usize, k: usize) -> Self {
        let mut masks = Vec::with_capacity(binomial(n, k));
        let mut idx: Vec<usize> = (0..k).collect();
        if k <= n {
            loop {
                masks.push(mask_of(&idx));
                // next combination in lexicographic order
                let mut pos = k;
                while pos > 0 && idx[pos - 1] == n - k + pos - 1 {
                    pos -= 1;
                }
                if pos == 0 {
                    break;
                }
                idx[pos - 1] += 1;
                for j in pos..k {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
        let index = masks.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        ExtBasis { n, k, masks, index }
    }

    pub fn dim(&self) -> usize {
        self.masks.len()
    }

    pub fn index(&self, m: Mask) -> u32 {
        self.index[&m]
    }
}

/// Cached basis of `Lambda^k(R^n)`.
pub fn ext_basis(n: usize, k: usize) -> Arc<ExtBasis> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<ExtBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().unwrap().get(&(n, k)) {
        return b.clone();
    }
    let b = Arc::new(ExtBasis::build(n, k));
    cache.lock().unwrap().entry((n, k)).or_insert(b).clone()
}

pub fn mask_indices(m: Mask) -> Vec<usize> {
    (0..MAX_DIM).filter(|i| m & (1 << i) != 0).collect()
}

pub fn mask_of(idx: &[usize]) -> Mask {
    idx.iter().fold(0, |m, i| m | (1 << i))
}

/// `e_a ^ e_b = sign * e_{a|b}`, or `None` if they share an index.
#[inline]
pub fn wedge_masks(a: Mask, b: Mask) -> Option<(bool, Mask)> {
    if a & b != 0 {
        return None;
    }
    let mut inv = 0u32;
    let mut bb = b;
    while bb != 0 {
        let y = bb.trailing_zeros();
        inv += (a >> y).count_ones();
        bb &= bb - 1;
    }
    Some((inv % 2 == 1, a | b))
}

/// Plain interior product of the dual covector `b^p` into `e_m`.
#[inline]
pub fn interior_mask(p: usize, m: Mask) -> Option<(bool, Mask)> {
    let bit: Mask = 1 << p;
    if m & bit == 0 {
        return None;
    }
    let below = (m & (bit - 1)).count_ones();
    Some((below % 2 == 1, m ^ bit))
}

/// Element of `Lambda^k(g)` over exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiVector {
    pub algebra: Arc<str>,
    pub n: usize,
    pub degree: usize,
    pub terms: BTreeMap<Mask, Q>,
}

impl MultiVector {
    pub fn zero(algebra: &Arc<str>, n: usize, degree: usize) -> Self {
        MultiVector { algebra: algebra.clone(), n, degree, terms: BTreeMap::new() }
    }

    pub fn scalar(algebra: &Arc<str>, n: usize, c: Q) -> Self {
        let mut m = Self::zero(algebra, n, 0);
        if c != 0 {
            m.terms.insert(0, c);
        }
        m
    }

    /// Basis element `e_{i1} ^ ... ^ e_{ik}` (0-based, any order; sign applied).
    pub fn basis(algebra: &Arc<str>, n: usize, idx: &[usize]) -> Self {
        let mut m = Self::scalar(algebra, n, Q::from(1));
        for &i in idx {
            m = m.wedge(&Self::vector(algebra, n, &SparseVec::unit(i))).unwrap();
        }
        m
    }

    pub fn vector(algebra: &Arc<str>, n: usize, v: &SparseVec) -> Self {
        let mut m = Self::zero(algebra, n, 1);
        for (i, c) in v.iter() {
            m.terms.insert(1 << i, c.clone());
        }
        m
    }

    pub fn from_coords(algebra: &Arc<str>, n: usize, degree: usize, c: &SparseVec) -> Self {
        let b = ext_basis(n, degree);
        let mut m = Self::zero(algebra, n, degree);
        for (i, v) in c.iter() {
            m.terms.insert(b.masks[*i as usize], v.clone());
        }
        m
    }

    pub fn from_terms(algebra: &Arc<str>, n: usize, degree: usize, terms: BTreeMap<Mask, Q>) -> Self {
        let terms = terms.into_iter().filter(|(_, v)| *v != 0).collect();
        MultiVector { algebra: algebra.clone(), n, degree, terms }
    }

    pub fn coords(&self) -> SparseVec {
        let b = ext_basis(self.n, self.degree);
        SparseVec::from_pairs(self.terms.iter().map(|(m, v)| (b.index(*m), v.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient on `e_I` for a strictly increasing 0-based tuple.
    pub fn coeff(&self, idx: &[usize]) -> Q {
        self.terms.get(&mask_of(idx)).cloned().unwrap_or_default()
    }

    fn check(&self, o: &MultiVector) -> Result<(), ExtError> {
        if self.algebra != o.algebra || self.n != o.n {
            return Err(ExtError::AlgebraMismatch(self.algebra.to_string(), o.algebra.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, o: &MultiVector) -> Result<MultiVector, ExtError> {
        self.axpy(&Q::from(1), o)
    }

    pub fn sub(&self, o: &MultiVector) -> Result<MultiVector, ExtError> {
        self.axpy(&Q::from(-1), o)
    }

    /// self + c * o
    pub fn axpy(&self, c: &Q, o: &MultiVector) -> Result<MultiVector, ExtError> {
        self.check(o)?;
        if o.degree != self.degree && !o.is_zero() && !self.is_zero() {
            return Err(ExtError::Degree(format!("adding degrees {} and {}", self.degree, o.degree)));
        }
        let mut terms = self.terms.clone();
        for (m, v) in &o.terms {
            *terms.entry(*m).or_default() += Q::from(c * v);
        }
        let degree = if self.is_zero() { o.degree } else { self.degree };
        Ok(MultiVector::from_terms(&self.algebra, self.n, degree, terms))
    }

    pub fn scale(&self, c: &Q) -> MultiVector {
        let terms = self.terms.iter().map(|(m, v)| (*m, Q::from(v * c))).collect();
        MultiVector::from_terms(&self.algebra, self.n, self.degree, terms)
    }

    /// Wedge product; zero of degree `deg a + deg b` when that exceeds `n`.
    pub fn wedge(&self, o: &MultiVector) -> Result<MultiVector, ExtError> {
        self.check(o)?;
        let mut terms: BTreeMap<Mask, Q> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                if let Some((neg, m)) = wedge_masks(*a, *b) {
                    let p = Q::from(x * y);
                    let e = terms.entry(m).or_default();
                    if neg {
                        *e -= p;
                    } else {
                        *e += p;
                    }
                }
            }
        }
        Ok(MultiVector::from_terms(&self.algebra, self.n, self.degree + o.degree, terms))
    }

    /// Plain interior product with a covector given in the dual basis.
    pub fn interior(&self, covector: &SparseVec) -> MultiVector {
        let mut terms: BTreeMap<Mask, Q> = BTreeMap::new();
        for (m, x) in &self.terms {
            for (p, c) in covector.iter() {
                if let Some((neg, r)) = interior_mask(*p as usize, *m) {
                    let v = Q::from(x * c);
                    let e = terms.entry(r).or_default();
                    if neg {
                        *e -= v;
                    } else {
                        *e += v;
                    }
                }
            }
        }
        MultiVector::from_terms(&self.algebra, self.n, self.degree.saturating_sub(1), terms)
    }

    /// Indices of the terms as 1-based tuples, lexicographically sorted.
    pub fn sorted_terms(&self) -> Vec<(Vec<usize>, Q)> {
        let mut v: Vec<(Vec<usize>, Q)> =
            self.terms.iter().map(|(m, c)| (mask_indices(*m).iter().map(|i| i + 1).collect(), c.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }
}
