//! The splitting `Lambda^2 = g + g^perp`, the operators `D_+`, `D_-`,
//! `Theta` on `g (x) g^perp`, the `Lambda^3` triple decomposition and the
//! maximal isotypic component `R_max`.

use crate::exterior::{Exterior, LinOp, MultiVector, Space};
use crate::lie_core::{casimir_tensor, LieError};
use crate::scalars::{dense_inverse, rational_eigenspaces, Gram, SparseMatrix, SparseVec, Subspace, Q};

/// `Lambda^2 = d(g) + g^perp` with `g^perp = ker delta`.
#[derive(Clone, Debug)]
pub struct Lambda2Split {
    pub g_part: Subspace,
    pub g_perp: Subspace,
}

/// `Lambda^3 = <omega> + d(g^perp) + delta(Lambda^4)`.
#[derive(Clone, Debug)]
pub struct Lambda3Split {
    pub omega_line: Subspace,
    pub d_part: Subspace,
    pub delta_part: Subspace,
}

impl Lambda3Split {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.omega_line.dim(), self.d_part.dim(), self.delta_part.dim())
    }
}

fn invariant(msg: impl Into<String>) -> LieError {
    LieError::Invariant(msg.into())
}

pub fn split_lambda2(ext: &Exterior) -> Result<Lambda2Split, LieError> {
    let g_part = Subspace::image(ext.d_matrix(1));
    let g_perp = crate::scalars::kernel_basis(ext.delta_matrix(2));
    let n = ext.n();
    let total = n * (n - 1) / 2;
    if g_part.dim() != n {
        return Err(invariant(format!("d is not injective on g: rank {}", g_part.dim())));
    }
    if g_part.dim() + g_perp.dim() != total || g_part.sum(&g_perp).dim() != total {
        return Err(invariant("Lambda^2 is not d(g) + g^perp"));
    }
    if !g_part.is_orthogonal_to(&g_perp, ext.gram(2)) {
        return Err(invariant("d(g) and g^perp are not orthogonal"));
    }
    Ok(Lambda2Split { g_part, g_perp })
}

pub fn split_lambda3(ext: &Exterior, l2: &Lambda2Split) -> Result<Lambda3Split, LieError> {
    let omega_line = ext.span(3, std::slice::from_ref(&ext.omega.vector));
    let d_part = Subspace::image(&ext.d_matrix(2).matmul(&l2.g_perp.basis_matrix()));
    let n = ext.n();
    let delta_part = if n >= 4 { Subspace::image(ext.delta_matrix(4)) } else { Subspace::zero(omega_line.ambient()) };
    let gram = ext.gram(3);
    let parts = [&omega_line, &d_part, &delta_part];
    for a in 0..3 {
        for b in a + 1..3 {
            if !parts[a].is_orthogonal_to(parts[b], gram) {
                return Err(invariant(format!("Lambda^3 parts {a} and {b} are not orthogonal")));
            }
        }
    }
    let total = omega_line.dim() + d_part.dim() + delta_part.dim();
    if total != omega_line.ambient() {
        return Err(invariant(format!("Lambda^3 parts sum to {total}, expected {}", omega_line.ambient())));
    }
    Ok(Lambda3Split { omega_line, d_part, delta_part })
}

/// Operators on `g (x) g^perp`, basis ordered (vector index, `g^perp` index).
pub struct TorsionOps<'a> {
    pub ext: &'a Exterior,
    pub split: Lambda2Split,
    perp: Vec<MultiVector>,
    tensor_gram: Gram,
    /// `S^{-1} T^t G_2`: coordinates of the orthogonal projection onto `g^perp`.
    proj: SparseMatrix,
}

/// Largest `dim(g (x) g^perp)` the torsion operators are assembled for.
pub const TENSOR_GUARDRAIL: usize = 4096;

impl<'a> TorsionOps<'a> {
    pub fn new(ext: &'a Exterior) -> Result<Self, LieError> {
        let split = split_lambda2(ext)?;
        let n = ext.n();
        let m = split.g_perp.dim();
        if n * m > TENSOR_GUARDRAIL {
            return Err(LieError::Guardrail { name: format!("{} (x) g^perp", ext.g.name), dim: n * m, cap: TENSOR_GUARDRAIL });
        }
        let perp: Vec<MultiVector> = split.g_perp.basis().iter().map(|b| ext.element(2, b)).collect();
        let t = split.g_perp.basis_matrix();
        let tg = t.transpose().matmul(ext.gram(2).matrix());
        let s = tg.matmul(&t);
        let proj = if m == 0 {
            SparseMatrix::zeros(0, t.nrows)
        } else {
            SparseMatrix::from_dense(&dense_inverse(&s.to_dense())?).matmul(&tg)
        };
        let tensor_gram = Gram::trusted(ext.g.gram().matrix().kron(&s));
        Ok(TorsionOps { ext, split, perp, tensor_gram, proj })
    }

    pub fn perp_dim(&self) -> usize {
        self.perp.len()
    }

    pub fn tensor_space(&self) -> Space {
        Space::Tensor { algebra: self.ext.name.clone(), tag: "g(x)g_perp".into(), dim: self.ext.n() * self.perp.len() }
    }

    pub fn tensor_gram(&self) -> &Gram {
        &self.tensor_gram
    }

    fn tensor_columns(&self, k: usize, f: impl Fn(usize, &MultiVector) -> MultiVector) -> LinOp {
        let n = self.ext.n();
        let mut cols = Vec::with_capacity(n * self.perp.len());
        for i in 0..n {
            for tau in &self.perp {
                cols.push(f(i, tau).coords());
            }
        }
        let rows = crate::exterior::binomial(n, k);
        LinOp::new(self.tensor_space(), self.ext.space(k), SparseMatrix::from_columns(rows, &cols))
    }

    /// `v (x) tau -> v ^ rho_*(tau) omega`.
    pub fn d_plus(&self) -> LinOp {
        let w = &self.ext.omega.vector;
        self.tensor_columns(4, |i, tau| self.ext.basis_vector(i).wedge(&self.ext.rho_action(tau, w)).unwrap())
    }

    /// `v (x) tau -> v ^ d tau`.
    pub fn d_plus_factorized(&self) -> LinOp {
        self.tensor_columns(4, |i, tau| self.ext.basis_vector(i).wedge(&self.ext.d(tau)).unwrap())
    }

    /// `v (x) tau -> v _| rho_*(tau) omega`.
    pub fn d_minus(&self) -> LinOp {
        let w = &self.ext.omega.vector;
        self.tensor_columns(2, |i, tau| self.ext.contract(&SparseVec::unit(i), &self.ext.rho_action(tau, w)))
    }

    /// `v (x) tau -> v _| d tau`.
    pub fn d_minus_factorized(&self) -> LinOp {
        self.tensor_columns(2, |i, tau| self.ext.contract(&SparseVec::unit(i), &self.ext.d(tau)))
    }

    /// `T -> sum_ij G^{ij} b_i (x) Pi(b_j _| T)`; the metric factors cancel
    /// to the plain interior product with the dual basis.
    pub fn theta(&self) -> LinOp {
        let n = self.ext.n();
        let m = self.perp.len();
        let basis = crate::exterior::ext_basis(n, 3);
        let cols: Vec<SparseVec> = basis
            .masks
            .iter()
            .map(|&mask| {
                let t = MultiVector::from_terms(&self.ext.name, n, 3, [(mask, Q::from(1))].into());
                let mut pairs = Vec::new();
                for i in 0..n {
                    let c = self.proj.mul_vec(&t.interior(&SparseVec::unit(i)).coords());
                    for (j, v) in c.iter() {
                        pairs.push(((i * m) as u32 + j, v.clone()));
                    }
                }
                SparseVec::from_pairs(pairs)
            })
            .collect();
        LinOp::new(self.ext.space(3), self.tensor_space(), SparseMatrix::from_columns(n * m, &cols))
    }

    /// Casimir on `g (x) g^perp`.
    pub fn casimir(&self) -> Result<SparseMatrix, LieError> {
        casimir_tensor(&self.ext.g, &self.split.g_perp)
    }

    /// Maximal-Casimir eigenspace of `g (x) g^perp`, cross-checked against
    /// the Weyl dimension of `theta + Lambda^perp`.
    pub fn r_max(&self) -> Result<RMax, LieError> {
        let omega = self.casimir()?;
        let mut spaces = rational_eigenspaces(&omega)?;
        let (eigenvalue, space) = spaces.pop().ok_or_else(|| invariant("empty tensor space"))?;
        let mut expected_dim = None;
        let mut expected_casimir = None;
        if let Some(rd) = &self.ext.g.root_datum {
            let theta = rd.root_to_weight(&rd.highest_root());
            let hws: Vec<Vec<i64>> = rd
                .perp_highest_weights()
                .into_iter()
                .map(|l| l.iter().zip(&theta).map(|(a, b)| a + b).collect())
                .collect();
            let values: Vec<Q> = hws.iter().map(|w| rd.casimir_value(w)).collect();
            if let Some(top) = values.iter().max().cloned() {
                let mut dim = 0;
                for (w, v) in hws.iter().zip(&values) {
                    if *v == top {
                        dim += rd.weyl_dim(w)? as usize;
                    }
                }
                if top != eigenvalue || dim != space.dim() {
                    return Err(invariant(format!(
                        "maximal Casimir block is not the theta + Lambda^perp component: measured ({eigenvalue}, dim {}), expected ({top}, dim {dim})",
                        space.dim()
                    )));
                }
                expected_dim = Some(dim);
                expected_casimir = Some(top);
            }
        }
        Ok(RMax { eigenvalue, space, expected_dim, expected_casimir })
    }

    /// `W_har = ker D_+ ∩ ker D_-` and its complements in each kernel.
    pub fn w_har_split(&self) -> WHarSplit {
        let kp = self.d_plus().kernel();
        let km = self.d_minus().kernel();
        let w_har = kp.intersect(&km);
        let perp_plus = w_har.complement_in(&kp, &self.tensor_gram);
        let perp_minus = w_har.complement_in(&km, &self.tensor_gram);
        WHarSplit { w_har, perp_plus, perp_minus, ker_plus: kp, ker_minus: km }
    }

    /// `c` with `D_+ Theta = c d` on `Lambda^3`, if the two are proportional.
    pub fn d_plus_theta_constant(&self) -> Option<Q> {
        let lhs = self.d_plus().compose(&self.theta()).matrix;
        ratio(&lhs, self.ext.d_matrix(3))
    }

    /// `c` with `D_- Theta = c delta` on `Lambda^3`.
    pub fn d_minus_theta_constant(&self) -> Option<Q> {
        let lhs = self.d_minus().compose(&self.theta()).matrix;
        ratio(&lhs, self.ext.delta_matrix(3))
    }
}

/// `c` with `a = c b`; `None` if not proportional or both are zero.
fn ratio(a: &SparseMatrix, b: &SparseMatrix) -> Option<Q> {
    if b.is_zero() {
        return None;
    }
    a.ratio_to(b)
}

#[derive(Clone, Debug)]
pub struct RMax {
    pub eigenvalue: Q,
    pub space: Subspace,
    pub expected_dim: Option<usize>,
    pub expected_casimir: Option<Q>,
}

#[derive(Clone, Debug)]
pub struct WHarSplit {
    pub w_har: Subspace,
    pub perp_plus: Subspace,
    pub perp_minus: Subspace,
    pub ker_plus: Subspace,
    pub ker_minus: Subspace,
}

/// `c` with `sum_ij G^{ij} b_i ^ rho_*(b_j ^ X) theta = c X ^ theta` on all
/// of `Lambda^1 x Lambda^3`.
pub fn wedge_rho_constant(ext: &Exterior) -> Option<Q> {
    let n = ext.n();
    let ginv = ext.g.gram_inv();
    let mut c: Option<Q> = None;
    for x in 0..n {
        let mut acc = SparseMatrix::zeros(crate::exterior::binomial(n, 4), crate::exterior::binomial(n, 3));
        for i in 0..n {
            let wi = ext.wedge_matrix(&ext.basis_vector(i), 3);
            for (j, gij) in ginv.rows[i].iter() {
                let tau = ext.basis_vector(*j as usize).wedge(&ext.basis_vector(x)).unwrap();
                let r = crate::exterior::derivation_matrix(&ext.rho_vector_matrix(&tau), 3);
                acc = acc.axpy(gij, &wi.matmul(&r));
            }
        }
        let target = ext.wedge_matrix(&ext.basis_vector(x), 3);
        let r = acc.ratio_to(&target)?;
        match &c {
            None => c = Some(r),
            Some(prev) if *prev != r => return None,
            _ => {}
        }
    }
    c
}

/// `c` with `sum_ij G^{ij} b_i _| rho_*(b_j ^ X) omega = c d X` for all `X`.
pub fn contract_rho_constant(ext: &Exterior) -> Option<Q> {
    let n = ext.n();
    let ginv = ext.g.gram_inv();
    let w = &ext.omega.vector;
    let mut lhs_cols = Vec::new();
    for x in 0..n {
        let mut acc = ext.zero(2);
        for i in 0..n {
            for (j, gij) in ginv.rows[i].iter() {
                let tau = ext.basis_vector(*j as usize).wedge(&ext.basis_vector(x)).unwrap();
                let t = ext.contract(&SparseVec::unit(i), &ext.rho_action(&tau, w));
                acc = acc.axpy(gij, &t).unwrap();
            }
        }
        lhs_cols.push(acc.coords());
    }
    let lhs = SparseMatrix::from_columns(crate::exterior::binomial(n, 2), &lhs_cols);
    ratio(&lhs, ext.d_matrix(1))
}
