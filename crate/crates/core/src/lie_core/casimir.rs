use super::{LieAlgebraData, LieError};
use crate::exterior::{derivation_matrix, ext_basis};
use crate::scalars::{kernel_basis, SparseMatrix, Subspace, Q};

/// Representation spaces the Casimir can be assembled on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepSpace {
    Adjoint,
    Exterior(usize),
    /// `g (x) g^perp` with `g^perp = ker delta` in `Lambda^2`.
    TensorPerp,
}

/// Largest representation space the Casimir is assembled on.
pub const MAX_REP_DIM: usize = 4096;

/// `Omega = -sum_ij G^{ij} rho(b_i) rho(b_j)`; acts as `1` on the adjoint.
///
/// The sign makes eigenvalues nonnegative for the positive-definite
/// `G = -Killing`.
pub fn casimir_on(g: &LieAlgebraData, space: RepSpace) -> Result<SparseMatrix, LieError> {
    let n = g.dim();
    match space {
        RepSpace::Adjoint => casimir_from(g, |i| g.ad_matrix(i)),
        RepSpace::Exterior(k) => {
            let dim = ext_basis(n, k).dim();
            guard(g, dim)?;
            casimir_from(g, |i| derivation_matrix(&g.ad_matrix(i), k))
        }
        RepSpace::TensorPerp => {
            let perp = kernel_basis(&delta2(g));
            guard(g, n * perp.dim())?;
            casimir_tensor(g, &perp)
        }
    }
}

fn guard(g: &LieAlgebraData, dim: usize) -> Result<(), LieError> {
    if dim > MAX_REP_DIM {
        return Err(LieError::Guardrail { name: format!("{} representation", g.name), dim, cap: MAX_REP_DIM });
    }
    Ok(())
}

/// `delta : Lambda^2 -> Lambda^1`, `b_i ^ b_j -> [b_i, b_j]`.
fn delta2(g: &LieAlgebraData) -> SparseMatrix {
    let cols: Vec<_> = ext_basis(g.dim(), 2)
        .masks
        .iter()
        .map(|m| {
            let i = m.trailing_zeros() as usize;
            let j = (m ^ (1 << i)).trailing_zeros() as usize;
            g.bracket_basis(i, j).clone()
        })
        .collect();
    SparseMatrix::from_columns(g.dim(), &cols)
}

pub(crate) fn casimir_from(
    g: &LieAlgebraData,
    rho: impl Fn(usize) -> SparseMatrix,
) -> Result<SparseMatrix, LieError> {
    let n = g.dim();
    let reps: Vec<SparseMatrix> = (0..n).map(&rho).collect();
    let dim = reps[0].nrows;
    let mut out = SparseMatrix::zeros(dim, dim);
    for i in 0..n {
        // sum_j G^{ij} rho_j, then rho_i times that
        let mut inner = SparseMatrix::zeros(dim, dim);
        for (j, c) in g.gram_inv().rows[i].iter() {
            inner = inner.axpy(c, &reps[*j as usize]);
        }
        out = out.axpy(&Q::from(-1), &reps[i].matmul(&inner));
    }
    Ok(out)
}

/// Action of `ad(b_i)` on `Lambda^2` restricted to an invariant subspace, in
/// the subspace's pivot coordinates.
pub(crate) fn restricted_action(g: &LieAlgebraData, w: &Subspace, i: usize) -> Result<SparseMatrix, LieError> {
    let ad2 = derivation_matrix(&g.ad_matrix(i), 2);
    let cols: Vec<_> = w
        .basis()
        .iter()
        .map(|b| {
            let img = ad2.mul_vec(b);
            w.coords(&img)
                .map(|c| crate::scalars::SparseVec::from_dense(&c))
                .ok_or_else(|| LieError::Invariant("subspace is not ad-invariant".into()))
        })
        .collect::<Result<_, _>>()?;
    Ok(SparseMatrix::from_columns(w.dim(), &cols))
}

/// Casimir on `g (x) W`, basis ordered (vector index, W index).
pub fn casimir_tensor(g: &LieAlgebraData, w: &Subspace) -> Result<SparseMatrix, LieError> {
    let m = w.dim();
    let n = g.dim();
    let id_n = SparseMatrix::identity(n);
    let id_m = SparseMatrix::identity(m);
    let rs: Vec<SparseMatrix> = (0..n).map(|i| restricted_action(g, w, i)).collect::<Result<_, _>>()?;
    casimir_from(g, |i| g.ad_matrix(i).kron(&id_m).add(&id_n.kron(&rs[i])))
}
