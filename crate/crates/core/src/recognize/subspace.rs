use super::inertia;
use crate::exterior::{Exterior, MultiVector};
use crate::lie_core::{LieAlgebraData, LieError};
use crate::phi_split::{phi_split, star_omega};
use crate::scalars::{kernel_basis, rank, SparseMatrix, SparseVec, Subspace, Q};
use serde_json::{json, Value};

/// Outcome of testing a subspace `V ⊆ g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceVerdict {
    pub dim: usize,
    pub bracket_closed: bool,
    /// `omega` restricted to `V` has no kernel on `V`.
    pub restricted_multisymplectic: bool,
    /// Inertia of the Killing form of `V` with the induced bracket (closed `V` only).
    pub killing_signature: Option<(usize, usize, usize)>,
    pub semisimple: bool,
    pub strongly_associative: bool,
}

impl SubspaceVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "bracket_closed": self.bracket_closed,
            "restricted_multisymplectic": self.restricted_multisymplectic,
            "killing_signature": self.killing_signature.map(|(p, n, z)| json!({"positive": p, "negative": n, "zero": z})),
            "semisimple": self.semisimple,
            "strongly_associative": self.strongly_associative,
        })
    }
}

pub fn subspace_test(g: &LieAlgebraData, v: &Subspace) -> Result<SubspaceVerdict, LieError> {
    if v.ambient() != g.dim() {
        return Err(LieError::Invariant(format!("subspace lives in R^{}, algebra has dim {}", v.ambient(), g.dim())));
    }
    let b = v.basis();
    let d = b.len();
    let brackets: Vec<Vec<SparseVec>> = (0..d).map(|i| (0..d).map(|j| g.bracket(&b[i], &b[j])).collect()).collect();
    let closed = brackets.iter().flatten().all(|x| v.contains(x));

    // T(x, y, z) = <x, [y, z]>; x -> T(x, ., .) must be injective on V
    let mut cols = Vec::with_capacity(d);
    for x in b {
        let mut col = Vec::new();
        for j in 0..d {
            for k in j + 1..d {
                let t = g.inner(x, &brackets[j][k]);
                if t != 0 {
                    col.push(((j * d + k) as u32, t));
                }
            }
        }
        cols.push(SparseVec::from_pairs(col));
    }
    let ms = d > 0 && rank(&SparseMatrix::from_columns(d * d, &cols)) == d;

    let (sig, semisimple) = if closed && d > 0 {
        let ads: Vec<SparseMatrix> = (0..d)
            .map(|i| {
                let cols: Vec<SparseVec> = (0..d)
                    .map(|j| SparseVec::from_dense(&v.coords(&brackets[i][j]).expect("closed")))
                    .collect();
                SparseMatrix::from_columns(d, &cols)
            })
            .collect();
        debug_assert!(jacobi_holds(&ads));
        let kil: Vec<Vec<Q>> = (0..d).map(|i| (0..d).map(|j| ads[i].matmul(&ads[j]).trace()).collect()).collect();
        let s = inertia(&SparseMatrix::from_dense(&kil));
        (Some(s), s.2 == 0)
    } else {
        (None, false)
    };
    Ok(SubspaceVerdict {
        dim: d,
        bracket_closed: closed,
        restricted_multisymplectic: ms,
        killing_signature: sig,
        semisimple,
        strongly_associative: closed && ms,
    })
}

/// `ad` is a representation iff `[ad_i, ad_j] = ad([b_i, b_j])`; with `ad_i e_j = [b_i, b_j]`
/// this is the Jacobi identity of the induced bracket.
fn jacobi_holds(ads: &[SparseMatrix]) -> bool {
    let d = ads.len();
    for i in 0..d {
        for j in 0..d {
            let lhs = ads[i].matmul(&ads[j]).sub(&ads[j].matmul(&ads[i]));
            let c = ads[i].column(j);
            let rhs = c.iter().fold(SparseMatrix::zeros(d, d), |acc, (k, x)| acc.axpy(x, &ads[*k as usize]));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Span of the 3-vectors whose pairing with `V` defines the coassociative
/// system: `d(Lambda^2_{(*omega)+})`, which equals `d(g^perp)`.
///
/// The second component reports whether `Lambda^2_{(*omega)+} = g^perp`.
pub fn coassoc_system_space(ext: &Exterior) -> Result<(Subspace, bool), LieError> {
    let split = phi_split(ext, &star_omega(ext)?)?;
    let plus2 = &split.plus[2];
    let perp = kernel_basis(ext.delta_matrix(2));
    Ok((plus2.map(ext.d_matrix(2)), *plus2 == perp))
}

/// Whether every element of `system` pairs to zero with `v1 ^ v2 ^ v3`.
pub fn restricts_to_zero(ext: &Exterior, system: &Subspace, v: &[SparseVec; 3]) -> bool {
    let vol: MultiVector = ext.vector(&v[0]).wedge(&ext.vector(&v[1])).and_then(|a| a.wedge(&ext.vector(&v[2]))).expect("same algebra");
    let c = vol.coords();
    system.basis().iter().all(|t| ext.gram(3).inner(t, &c) == 0)
}

fn label_index(g: &LieAlgebraData, label: &str) -> Option<usize> {
    g.labels.iter().position(|l| l == label)
}

/// `span{h_a, e_a, f_a}` for the simple root `a = alpha_{i+1}`.
pub fn root_su2_subspace(g: &LieAlgebraData, i: usize) -> Option<Subspace> {
    let rank = g.rank()?;
    if i >= rank {
        return None;
    }
    let coords: Vec<String> = (0..rank).map(|j| if j == i { "1".into() } else { "0".into() }).collect();
    let c = coords.join(",");
    let idx = [label_index(g, &format!("h{}", i + 1))?, label_index(g, &format!("e({c})"))?, label_index(g, &format!("f({c})"))?];
    Some(Subspace::from_vectors(g.dim(), idx.iter().map(|&k| SparseVec::unit(k))))
}

/// `span{h_1, ..., h_r}`.
pub fn cartan_subspace(g: &LieAlgebraData) -> Option<Subspace> {
    let rank = g.rank()?;
    let idx: Option<Vec<usize>> = (1..=rank).map(|i| label_index(g, &format!("h{i}"))).collect();
    Some(Subspace::from_vectors(g.dim(), idx?.into_iter().map(SparseVec::unit)))
}

/// Span of `dim` random vectors with small integer entries.
pub fn random_subspace(g: &LieAlgebraData, dim: usize, rng: &mut impl rand::Rng) -> Subspace {
    let n = g.dim();
    loop {
        let vs: Vec<SparseVec> = (0..dim)
            .map(|_| SparseVec::from_pairs((0..n as u32).map(|i| (i, Q::from(rng.gen_range(-4i64..=4))))))
            .collect();
        let s = Subspace::from_vectors(n, vs);
        if s.dim() == dim {
            return s;
        }
    }
}
