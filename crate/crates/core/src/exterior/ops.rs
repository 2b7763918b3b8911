use super::{ext_basis, interior_mask, wedge_masks, ExtError, Mask, MultiVector};
use crate::lie_core::{LieAlgebraData, LieError};
use crate::scalars::{kernel_basis, rank, Gram, SparseMatrix, SparseVec, Subspace, Q};
use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

/// Descriptor of the domain or codomain of a [`LinOp`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    Exterior { algebra: Arc<str>, n: usize, k: usize },
    /// `g (x) W` for a subspace `W` of some `Lambda^k`, ordered (vector index, W index).
    Tensor { algebra: Arc<str>, tag: String, dim: usize },
}

impl Space {
    pub fn dim(&self) -> usize {
        match self {
            Space::Exterior { n, k, .. } => super::binomial(*n, *k),
            Space::Tensor { dim, .. } => *dim,
        }
    }
}

/// Linear map between exterior-power (or tensor) spaces.
#[derive(Clone, Debug)]
pub struct LinOp {
    pub domain: Space,
    pub codomain: Space,
    pub matrix: SparseMatrix,
}

impl LinOp {
    pub fn new(domain: Space, codomain: Space, matrix: SparseMatrix) -> Self {
        assert_eq!(matrix.ncols, domain.dim(), "LinOp domain mismatch");
        assert_eq!(matrix.nrows, codomain.dim(), "LinOp codomain mismatch");
        LinOp { domain, codomain, matrix }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        self.matrix.mul_vec(v)
    }

    /// `self . other`
    pub fn compose(&self, other: &LinOp) -> LinOp {
        assert_eq!(other.codomain, self.domain);
        LinOp::new(other.domain.clone(), self.codomain.clone(), self.matrix.matmul(&other.matrix))
    }

    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }

    pub fn kernel(&self) -> Subspace {
        kernel_basis(&self.matrix)
    }

    pub fn image(&self) -> Subspace {
        Subspace::image(&self.matrix)
    }
}

/// The Cartan 3-form in both index positions.
#[derive(Clone, Debug)]
pub struct CartanForm {
    /// Coefficient `<b_i, [b_j, b_k]>` on `i < j < k`.
    pub form: MultiVector,
    /// Indices raised with the inverse Gram; the element of `Lambda^3(g)` the
    /// exterior operators act on. Equals `form` in an orthonormal basis.
    pub vector: MultiVector,
}

/// Builds `omega_g`.
pub fn cartan_3form(g: &LieAlgebraData) -> CartanForm {
    let n = g.dim();
    let name: Arc<str> = Arc::from(g.name.as_str());
    let gram = g.gram().matrix();
    let ginv = g.gram_inv();
    let mut form = BTreeMap::new();
    let mut vector = BTreeMap::new();
    for &m in &ext_basis(n, 3).masks {
        let idx = super::mask_indices(m);
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let c = gram.rows[i].dot(g.bracket_basis(j, k));
        if c != 0 {
            form.insert(m, c);
        }
        // W^{pqr} = sum_{b,c} G^{qb} G^{rc} c_{bc}^p
        let mut w = Q::new();
        for (b, gb) in ginv.rows[j].iter() {
            for (c2, gc) in ginv.rows[k].iter() {
                if let Some(v) = g.bracket_basis(*b as usize, *c2 as usize).get(i as u32) {
                    w += Q::from(gb * gc) * v;
                }
            }
        }
        if w != 0 {
            vector.insert(m, w);
        }
    }
    CartanForm {
        form: MultiVector::from_terms(&name, n, 3, form),
        vector: MultiVector::from_terms(&name, n, 3, vector),
    }
}

fn add_term(acc: &mut BTreeMap<Mask, Q>, m: Mask, neg: bool, v: Q) {
    let e = acc.entry(m).or_default();
    if neg {
        *e -= v;
    } else {
        *e += v;
    }
}

fn columns_to_matrix(n: usize, k_out: usize, cols: Vec<BTreeMap<Mask, Q>>) -> SparseMatrix {
    let b = ext_basis(n, k_out);
    let cols: Vec<SparseVec> = cols
        .into_iter()
        .map(|c| SparseVec::from_pairs(c.into_iter().filter(|(_, v)| *v != 0).map(|(m, v)| (b.index(m), v))))
        .collect();
    SparseMatrix::from_columns(b.dim(), &cols)
}

/// Induced Gram on `Lambda^k` from a degree-1 Gram: `det G[I, J]`.
pub fn induced_gram_matrix(gram: &SparseMatrix, k: usize) -> SparseMatrix {
    let n = gram.nrows;
    let basis = ext_basis(n, k);
    let dense = gram.to_dense();
    let idx: Vec<Vec<usize>> = basis.masks.iter().map(|m| super::mask_indices(*m)).collect();
    let mut rows: Vec<Vec<(u32, Q)>> = vec![Vec::new(); basis.dim()];
    for a in 0..basis.dim() {
        for b in a..basis.dim() {
            let d = small_det(&idx[a], &idx[b], &dense);
            if d != 0 {
                if a != b {
                    rows[b].push((a as u32, d.clone()));
                }
                rows[a].push((b as u32, d));
            }
        }
    }
    let rows = rows.into_iter().map(SparseVec::from_pairs).collect();
    SparseMatrix::from_rows(basis.dim(), rows)
}

fn small_det(r: &[usize], c: &[usize], g: &[Vec<Q>]) -> Q {
    let k = r.len();
    if k == 0 {
        return Q::from(1);
    }
    let mut m: Vec<Vec<Q>> = r.iter().map(|&i| c.iter().map(|&j| g[i][j].clone()).collect()).collect();
    let mut det = Q::from(1);
    for col in 0..k {
        let Some(p) = (col..k).find(|&i| m[i][col] != 0) else { return Q::new() };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let piv = m[col][col].clone();
        det *= &piv;
        for i in col + 1..k {
            if m[i][col] != 0 {
                let f = Q::from(&m[i][col] / &piv);
                for j in col..k {
                    let t = Q::from(&f * &m[col][j]);
                    m[i][j] -= t;
                }
            }
        }
    }
    det
}

/// Matrix of the derivation extension of `a` (an `n x n` matrix acting on
/// `g`) to `Lambda^k`.
pub fn derivation_matrix(a: &SparseMatrix, k: usize) -> SparseMatrix {
    let n = a.ncols;
    let acols = a.transpose();
    let cols = ext_basis(n, k)
        .masks
        .iter()
        .map(|&m| {
            let mut acc = BTreeMap::new();
            derivation_term(&acols, m, &Q::from(1), &mut acc);
            acc
        })
        .collect();
    columns_to_matrix(n, k, cols)
}

/// `acols.rows[p]` is column `p` of the matrix.
fn derivation_term(acols: &SparseMatrix, m: Mask, coeff: &Q, acc: &mut BTreeMap<Mask, Q>) {
    let mut rest = m;
    let mut slot = 0u32;
    while rest != 0 {
        let p = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let without = m ^ (1 << p);
        for (q, v) in acols.rows[p].iter() {
            let q = *q as usize;
            if without & (1 << q) != 0 {
                continue;
            }
            let below = (without & ((1 << q) - 1)).count_ones();
            let neg = (slot + below) % 2 == 1;
            add_term(acc, without | (1 << q), neg, Q::from(v * coeff));
        }
        slot += 1;
    }
}

/// Exterior algebra of a compact Lie algebra with cached operators.
pub struct Exterior {
    pub g: LieAlgebraData,
    pub name: Arc<str>,
    pub omega: CartanForm,
    /// `d(b_j)` as terms of `Lambda^2`.
    dvec: Vec<Vec<(Mask, Q)>>,
    rho_sign: i64,
    grams: Vec<OnceLock<Gram>>,
    dmats: Vec<OnceLock<SparseMatrix>>,
    deltas: Vec<OnceLock<SparseMatrix>>,
}

impl Exterior {
    /// Builds the operator context and calibrates the sign of `rho_*` so
    /// that `rho_*(tau) omega = d tau` on every basis bivector.
    pub fn new(g: &LieAlgebraData) -> Result<Self, LieError> {
        let n = g.dim();
        if n > super::MAX_DIM {
            return Err(LieError::Guardrail { name: g.name.clone(), dim: n, cap: super::MAX_DIM });
        }
        let omega = cartan_3form(g);
        let name: Arc<str> = omega.form.algebra.clone();
        let gram = g.gram().matrix();
        let dvec = (0..n)
            .map(|j| omega.vector.interior(&gram.rows[j]).terms.into_iter().collect())
            .collect();
        let mut ext = Exterior {
            g: g.clone(),
            name,
            omega,
            dvec,
            rho_sign: 0,
            grams: (0..=n).map(|_| OnceLock::new()).collect(),
            dmats: (0..=n).map(|_| OnceLock::new()).collect(),
            deltas: (0..=n).map(|_| OnceLock::new()).collect(),
        };
        ext.rho_sign = ext.calibrate_rho()?;
        Ok(ext)
    }

    fn calibrate_rho(&self) -> Result<i64, LieError> {
        let n = self.n();
        let mut sign = 0;
        for &m in &ext_basis(n, 2).masks {
            let tau = MultiVector::from_terms(&self.name, n, 2, [(m, Q::from(1))].into());
            let dt = self.d(&tau);
            let raw = self.derivation_apply(&self.tau_matrix(&tau, 1), &self.omega.vector);
            if sign == 0 {
                if dt.is_zero() {
                    continue;
                }
                sign = if raw == dt {
                    1
                } else if raw.scale(&Q::from(-1)) == dt {
                    -1
                } else {
                    return Err(LieError::Invariant("rho_*(tau) omega is not +-d tau".into()));
                };
            }
            if raw.scale(&Q::from(sign)) != dt {
                return Err(LieError::Invariant(format!("rho_* calibration fails on {:?}", super::mask_indices(m))));
            }
        }
        Ok(if sign == 0 { -1 } else { sign })
    }

    pub fn n(&self) -> usize {
        self.g.dim()
    }

    /// The global sign `s` in `rho_*(u ^ w) x = s (<w,x> u - <u,x> w)`.
    pub fn rho_sign(&self) -> i64 {
        self.rho_sign
    }

    pub fn space(&self, k: usize) -> Space {
        Space::Exterior { algebra: self.name.clone(), n: self.n(), k }
    }

    pub fn zero(&self, k: usize) -> MultiVector {
        MultiVector::zero(&self.name, self.n(), k)
    }

    pub fn element(&self, k: usize, coords: &SparseVec) -> MultiVector {
        MultiVector::from_coords(&self.name, self.n(), k, coords)
    }

    pub fn vector(&self, v: &SparseVec) -> MultiVector {
        MultiVector::vector(&self.name, self.n(), v)
    }

    pub fn basis_vector(&self, i: usize) -> MultiVector {
        self.vector(&SparseVec::unit(i))
    }

    /// Induced Gram on `Lambda^k`, computed once.
    pub fn gram(&self, k: usize) -> &Gram {
        self.grams[k].get_or_init(|| Gram::trusted(induced_gram_matrix(self.g.gram().matrix(), k)))
    }

    pub fn inner(&self, a: &MultiVector, b: &MultiVector) -> Q {
        if a.degree != b.degree {
            return Q::new();
        }
        self.gram(a.degree).inner(&a.coords(), &b.coords())
    }

    /// Metric contraction `v _| a = iota_{G v} a`.
    pub fn contract(&self, v: &SparseVec, a: &MultiVector) -> MultiVector {
        let cov = self.g.gram().matrix().mul_vec(v);
        a.interior(&cov)
    }

    /// Metric contraction with a degree-1 multivector.
    pub fn contract_mv(&self, v: &MultiVector, a: &MultiVector) -> Result<MultiVector, ExtError> {
        if v.degree != 1 {
            return Err(ExtError::Degree(format!("contraction needs a vector, got degree {}", v.degree)));
        }
        if v.algebra != a.algebra {
            return Err(ExtError::AlgebraMismatch(v.algebra.to_string(), a.algebra.to_string()));
        }
        Ok(self.contract(&v.coords(), a))
    }

    /// `d_g` as the derivation extension of `b_j -> b_j _| omega`.
    pub fn d_matrix(&self, k: usize) -> &SparseMatrix {
        self.dmats[k].get_or_init(|| {
            let n = self.n();
            let cols = ext_basis(n, k)
                .masks
                .iter()
                .map(|&m| {
                    let mut acc = BTreeMap::new();
                    self.d_term(m, &Q::from(1), &mut acc);
                    acc
                })
                .collect();
            columns_to_matrix(n, k + 1, cols)
        })
    }

    fn d_term(&self, m: Mask, coeff: &Q, acc: &mut BTreeMap<Mask, Q>) {
        let mut rest = m;
        let mut slot = 0;
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let without = m ^ (1 << p);
            for (dm, v) in &self.dvec[p] {
                if let Some((neg, r)) = wedge_masks(*dm, without) {
                    add_term(acc, r, neg ^ (slot % 2 == 1), Q::from(v * coeff));
                }
            }
            slot += 1;
        }
    }

    /// `d_g` from the contraction formula `sum_kl G_kl (b^k _| W) ^ (b^l _| a)`.
    pub fn d_matrix_contraction(&self, k: usize) -> SparseMatrix {
        let n = self.n();
        let gram = self.g.gram().matrix();
        let iw: Vec<MultiVector> = (0..n).map(|p| self.omega.vector.interior(&SparseVec::unit(p))).collect();
        let cols = ext_basis(n, k)
            .masks
            .iter()
            .map(|&m| {
                let a = MultiVector::from_terms(&self.name, n, k, [(m, Q::from(1))].into());
                let mut acc = self.zero(k + 1);
                for l in super::mask_indices(m) {
                    let ia = a.interior(&SparseVec::unit(l));
                    for (kk, gkl) in gram.rows[l].iter() {
                        let t = iw[*kk as usize].wedge(&ia).unwrap();
                        acc = acc.axpy(gkl, &t).unwrap();
                    }
                }
                acc.terms
            })
            .collect();
        columns_to_matrix(n, k + 1, cols)
    }

    /// `delta_g` from the explicit bracket formula.
    pub fn delta_matrix(&self, k: usize) -> &SparseMatrix {
        self.deltas[k].get_or_init(|| {
            let n = self.n();
            if k == 0 {
                return SparseMatrix::zeros(0, 1);
            }
            let cols = ext_basis(n, k)
                .masks
                .iter()
                .map(|&m| {
                    let mut acc = BTreeMap::new();
                    self.delta_term(m, &Q::from(1), &mut acc);
                    acc
                })
                .collect();
            columns_to_matrix(n, k - 1, cols)
        })
    }

    fn delta_term(&self, m: Mask, coeff: &Q, acc: &mut BTreeMap<Mask, Q>) {
        let idx = super::mask_indices(m);
        for a in 0..idx.len() {
            for b in a + 1..idx.len() {
                // 1-based positions a+1, b+1: sign (-1)^{a+b+3} = (-1)^{a+b+1}
                let neg = (a + b) % 2 == 0;
                let rest = m ^ (1 << idx[a]) ^ (1 << idx[b]);
                for (c, v) in self.g.bracket_basis(idx[a], idx[b]).iter() {
                    if let Some((s, r)) = wedge_masks(1 << c, rest) {
                        add_term(acc, r, s ^ neg, Q::from(v * coeff));
                    }
                }
            }
        }
    }

    pub fn d(&self, a: &MultiVector) -> MultiVector {
        let mut acc = BTreeMap::new();
        for (m, c) in &a.terms {
            self.d_term(*m, c, &mut acc);
        }
        MultiVector::from_terms(&self.name, self.n(), a.degree + 1, acc)
    }

    pub fn delta(&self, a: &MultiVector) -> MultiVector {
        let mut acc = BTreeMap::new();
        for (m, c) in &a.terms {
            self.delta_term(*m, c, &mut acc);
        }
        MultiVector::from_terms(&self.name, self.n(), a.degree.saturating_sub(1), acc)
    }

    pub fn d_op(&self, k: usize) -> LinOp {
        LinOp::new(self.space(k), self.space(k + 1), self.d_matrix(k).clone())
    }

    pub fn delta_op(&self, k: usize) -> LinOp {
        LinOp::new(self.space(k), self.space(k - 1), self.delta_matrix(k).clone())
    }

    /// `Delta = d delta + delta d` on `Lambda^k`.
    pub fn laplacian(&self, k: usize) -> LinOp {
        let n = self.n();
        let mut m = SparseMatrix::zeros(super::binomial(n, k), super::binomial(n, k));
        if k > 0 {
            m = m.add(&self.d_matrix(k - 1).matmul(self.delta_matrix(k)));
        }
        if k < n {
            m = m.add(&self.delta_matrix(k + 1).matmul(self.d_matrix(k)));
        }
        LinOp::new(self.space(k), self.space(k), m)
    }

    /// Harmonic `k`-vectors: `ker d ∩ ker delta`.
    pub fn harmonic(&self, k: usize) -> Subspace {
        let n = self.n();
        let dim = super::binomial(n, k);
        let mut stack = SparseMatrix::zeros(0, dim);
        if k < n {
            stack = stack.vstack(self.d_matrix(k));
        }
        if k > 0 {
            stack = stack.vstack(self.delta_matrix(k));
        }
        kernel_basis(&stack)
    }

    /// `b_k = C(n,k) - rank d_k - rank d_{k-1}`.
    pub fn betti(&self, k: usize) -> usize {
        let n = self.n();
        let rk = if k < n { rank(self.d_matrix(k)) } else { 0 };
        let rk1 = if k > 0 { rank(self.d_matrix(k - 1)) } else { 0 };
        super::binomial(n, k) - rk - rk1
    }

    /// Matrix of `tau` (a bivector) as an endomorphism of `g` with sign `s`:
    /// `x -> s * sum_pq tau^{pq} (G x)_q b_p`.
    fn tau_matrix(&self, tau: &MultiVector, s: i64) -> SparseMatrix {
        let n = self.n();
        let mut t = vec![vec![Q::new(); n]; n];
        for (m, c) in &tau.terms {
            let idx = super::mask_indices(*m);
            t[idx[0]][idx[1]] += c;
            t[idx[1]][idx[0]] -= c;
        }
        SparseMatrix::from_dense(&t).matmul(self.g.gram().matrix()).scaled(&Q::from(s))
    }

    /// `rho_*(tau)` as a matrix on `g`.
    pub fn rho_vector_matrix(&self, tau: &MultiVector) -> SparseMatrix {
        self.tau_matrix(tau, self.rho_sign)
    }

    pub fn rho_action(&self, tau: &MultiVector, a: &MultiVector) -> MultiVector {
        self.derivation_apply(&self.rho_vector_matrix(tau), a)
    }

    /// Derivation extension of `m` applied to `a`.
    pub fn derivation_apply(&self, m: &SparseMatrix, a: &MultiVector) -> MultiVector {
        let cols = m.transpose();
        let mut acc = BTreeMap::new();
        for (mask, c) in &a.terms {
            derivation_term(&cols, *mask, c, &mut acc);
        }
        MultiVector::from_terms(&self.name, self.n(), a.degree, acc)
    }

    /// `ad(x)` extended to `Lambda^k`.
    pub fn ad_matrix(&self, x: usize, k: usize) -> SparseMatrix {
        derivation_matrix(&self.g.ad_matrix(x), k)
    }

    /// `L_phi : Lambda^k -> Lambda^{k+l}`, `beta -> phi ^ beta`.
    pub fn wedge_matrix(&self, phi: &MultiVector, k: usize) -> SparseMatrix {
        let n = self.n();
        let cols = ext_basis(n, k)
            .masks
            .iter()
            .map(|&m| {
                let mut acc = BTreeMap::new();
                for (pm, c) in &phi.terms {
                    if let Some((neg, r)) = wedge_masks(*pm, m) {
                        add_term(&mut acc, r, neg, c.clone());
                    }
                }
                acc
            })
            .collect();
        columns_to_matrix(n, k + phi.degree, cols)
    }

    /// Metric contraction `L^*`-style map `Lambda^k -> Lambda^{k-1}`, `a -> v _| a`.
    pub fn contract_matrix(&self, v: &SparseVec, k: usize) -> SparseMatrix {
        let n = self.n();
        let cov = self.g.gram().matrix().mul_vec(v);
        let cols = ext_basis(n, k)
            .masks
            .iter()
            .map(|&m| {
                let mut acc = BTreeMap::new();
                for (p, c) in cov.iter() {
                    if let Some((neg, r)) = interior_mask(*p as usize, m) {
                        add_term(&mut acc, r, neg, c.clone());
                    }
                }
                acc
            })
            .collect();
        columns_to_matrix(n, k - 1, cols)
    }

    /// `Lambda^k(p)`, the map induced by a linear map `p` of `g`.
    pub fn power_matrix(&self, p: &SparseMatrix, k: usize) -> SparseMatrix {
        let n = self.n();
        let pcols: Vec<MultiVector> = p.columns().iter().map(|c| self.vector(c)).collect();
        let cols = ext_basis(n, k)
            .masks
            .iter()
            .map(|&m| {
                let mut acc = MultiVector::scalar(&self.name, n, Q::from(1));
                for i in super::mask_indices(m) {
                    acc = acc.wedge(&pcols[i]).unwrap();
                }
                acc.terms
            })
            .collect();
        columns_to_matrix(n, k, cols)
    }

    /// Span of a list of multivectors of degree `k`.
    pub fn span(&self, k: usize, vs: &[MultiVector]) -> Subspace {
        Subspace::from_vectors(super::binomial(self.n(), k), vs.iter().map(|v| v.coords()))
    }
}
