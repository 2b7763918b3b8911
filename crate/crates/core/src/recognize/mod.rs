//! Stabilizers of forms, 3-form type recognition and the subspace tests.

mod catalogue;
mod subspace;

pub use catalogue::{catalogue_entry, CatalogueEntry, CATALOGUE};
pub use subspace::{
    cartan_subspace, coassoc_system_space, random_subspace, restricts_to_zero, root_su2_subspace, subspace_test, SubspaceVerdict,
};

use crate::exterior::{binomial, derivation_matrix, ext_basis, MultiVector};
use crate::lie_core::LieError;
use crate::scalars::{
    kernel_basis, rank, rational_eigenspaces, Echelon, Gram, SparseMatrix, SparseVec, Subspace, Q,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use std::sync::Arc;

/// Verdict of [`classify_3form`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Cartan(String),
    G2Type,
    SlType,
    ProductType,
    Zero,
    Unrecognized,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Cartan(g) => write!(f, "cartan({g})"),
            Verdict::G2Type => write!(f, "g2_type"),
            Verdict::SlType => write!(f, "sl_type"),
            Verdict::ProductType => write!(f, "product_type"),
            Verdict::Zero => write!(f, "zero"),
            Verdict::Unrecognized => write!(f, "unrecognized"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FormTypeReport {
    pub verdict: Verdict,
    pub ambient_dim: usize,
    /// `dim {xi : xi _| phi = 0}`.
    pub kernel_dim: usize,
    pub stab_dim: usize,
    /// `(positive, negative, zero)` inertia of the stabilizer's Killing form.
    pub killing_signature: Option<(usize, usize, usize)>,
    pub details: Vec<String>,
}

impl FormTypeReport {
    pub fn to_json(&self) -> Value {
        let sig = self.killing_signature.map(|(p, n, z)| json!({"positive": p, "negative": n, "zero": z}));
        json!({
            "verdict": self.verdict.to_string(),
            "ambient_dim": self.ambient_dim,
            "stab_dim": self.stab_dim,
            "kernel_dim": self.kernel_dim,
            "killing_signature": sig,
            "details": self.details,
        })
    }
}

/// Column `a * n + b` of the result is the action of `E_ab` on `phi`.
fn action_matrix(phi: &MultiVector) -> SparseMatrix {
    let n = phi.n;
    let k = phi.degree;
    let coords = phi.coords();
    let mut cols = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let e = SparseMatrix::from_rows(n, (0..n).map(|i| if i == a { SparseVec::unit(b) } else { SparseVec::new() }).collect());
            cols.push(derivation_matrix(&e, k).mul_vec(&coords));
        }
    }
    SparseMatrix::from_columns(binomial(n, k), &cols)
}

/// `{A in gl(n) : A . phi = 0}` for the derivation action on `Lambda^k(R^n)`,
/// as a subspace of `R^{n^2}` (entry `A_ab` at index `a * n + b`).
pub fn stabilizer_algebra(phi: &MultiVector) -> Subspace {
    kernel_basis(&action_matrix(phi))
}

pub fn vec_to_matrix(n: usize, v: &SparseVec) -> SparseMatrix {
    let mut rows = vec![Vec::new(); n];
    for (idx, c) in v.iter() {
        let (a, b) = (*idx as usize / n, *idx as usize % n);
        rows[a].push((b as u32, c.clone()));
    }
    SparseMatrix::from_rows(n, rows.into_iter().map(SparseVec::from_pairs).collect())
}

pub fn matrix_to_vec(m: &SparseMatrix) -> SparseVec {
    let n = m.ncols;
    SparseVec::from_pairs(m.rows.iter().enumerate().flat_map(|(a, r)| r.iter().map(move |(b, c)| ((a * n) as u32 + b, c.clone()))))
}

/// A matrix Lie algebra given by a basis.
#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra {
    pub n: usize,
    pub space: Subspace,
    pub basis: Vec<SparseMatrix>,
    /// `table[i][j]` = coordinates of `[A_i, A_j]`.
    pub table: Vec<Vec<SparseVec>>,
}

impl MatrixLieAlgebra {
    /// Errors if the span is not closed under the commutator.
    pub fn new(n: usize, space: Subspace) -> Result<Self, LieError> {
        let basis: Vec<SparseMatrix> = space.basis().iter().map(|v| vec_to_matrix(n, v)).collect();
        let d = basis.len();
        let mut table = vec![vec![SparseVec::new(); d]; d];
        for i in 0..d {
            for j in i + 1..d {
                let br = basis[i].matmul(&basis[j]).sub(&basis[j].matmul(&basis[i]));
                let c = space
                    .coords(&matrix_to_vec(&br))
                    .ok_or_else(|| LieError::Invariant("stabilizer is not closed under the bracket".into()))?;
                let c = SparseVec::from_dense(&c);
                table[j][i] = c.neg();
                table[i][j] = c;
            }
        }
        Ok(MatrixLieAlgebra { n, space, basis, table })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ad(&self, i: usize) -> SparseMatrix {
        SparseMatrix::from_columns(self.dim(), &self.table[i])
    }

    pub fn killing(&self) -> SparseMatrix {
        let ads: Vec<SparseMatrix> = (0..self.dim()).map(|i| self.ad(i)).collect();
        let d = self.dim();
        let dense: Vec<Vec<Q>> = (0..d).map(|i| (0..d).map(|j| ads[i].matmul(&ads[j]).trace()).collect()).collect();
        SparseMatrix::from_dense(&dense)
    }

    /// Dimension of the centralizer of a random element; the rank for
    /// reductive algebras.
    pub fn generic_rank(&self, seed: u64) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = SparseVec::from_pairs((0..self.dim() as u32).map(|i| (i, Q::from(rng.gen_range(-50i64..=50)))));
        let ad: SparseMatrix = x.iter().fold(SparseMatrix::zeros(self.dim(), self.dim()), |acc, (i, c)| acc.axpy(c, &self.ad(*i as usize)));
        self.dim() - rank(&ad)
    }

    /// Commutant of the algebra inside `gl(n)`.
    pub fn commutant(&self) -> Subspace {
        let n = self.n;
        let cols: Vec<SparseVec> = (0..n * n)
            .map(|idx| {
                let y = vec_to_matrix(n, &SparseVec::unit(idx));
                let mut out = Vec::new();
                for (k, a) in self.basis.iter().enumerate() {
                    let c = y.matmul(a).sub(&a.matmul(&y));
                    out.extend(matrix_to_vec(&c).iter().map(|(i, v)| ((k * n * n) as u32 + i, v.clone())));
                }
                SparseVec::from_pairs(out)
            })
            .collect();
        kernel_basis(&SparseMatrix::from_columns(self.dim() * n * n, &cols))
    }
}

/// `(positive, negative, zero)` counts of a symmetric rational matrix.
pub fn inertia(m: &SparseMatrix) -> (usize, usize, usize) {
    let n = m.nrows;
    let mut a = m.to_dense();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    loop {
        let p = match active.iter().copied().find(|&k| a[k][k] != 0) {
            Some(p) => p,
            None => {
                // all diagonal entries vanish: congruence e_r -> e_r + e_c
                let Some((r, c)) = active
                    .iter()
                    .flat_map(|&r| active.iter().map(move |&c| (r, c)))
                    .find(|&(r, c)| r != c && a[r][c] != 0)
                else {
                    break;
                };
                for k in 0..n {
                    let v = a[c][k].clone();
                    a[r][k] += v;
                }
                for k in 0..n {
                    let v = a[k][c].clone();
                    a[k][r] += v;
                }
                r
            }
        };
        let d = a[p][p].clone();
        if d > 0 {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&k| k != p);
        for &r in &active {
            if a[r][p] == 0 {
                continue;
            }
            let f = Q::from(&a[r][p] / &d);
            for &c in &active {
                let t = Q::from(&f * &a[p][c]);
                a[r][c] -= t;
            }
        }
        for &r in &active {
            a[r][p] = Q::new();
            a[p][r] = Q::new();
        }
    }
    (pos, neg, n - pos - neg)
}

/// `-sum G^{ij} rho_i rho_j` for `G` given by its inverse.
pub(crate) fn casimir_from_matrices(ginv: &SparseMatrix, reps: &[SparseMatrix]) -> SparseMatrix {
    let dim = reps[0].nrows;
    let mut out = SparseMatrix::zeros(dim, dim);
    for (i, ri) in reps.iter().enumerate() {
        let mut inner = SparseMatrix::zeros(dim, dim);
        for (j, c) in ginv.rows[i].iter() {
            inner = inner.axpy(c, &reps[*j as usize]);
        }
        out = out.axpy(&Q::from(-1), &ri.matmul(&inner));
    }
    out
}

/// `Lambda^k(P) phi` for an invertible `n x n` matrix `P`.
pub fn transform(phi: &MultiVector, p: &SparseMatrix) -> MultiVector {
    let n = phi.n;
    let cols: Vec<MultiVector> = p.columns().iter().map(|c| MultiVector::vector(&phi.algebra, n, c)).collect();
    let mut acc = MultiVector::zero(&phi.algebra, n, phi.degree);
    for (m, c) in &phi.terms {
        let mut t = MultiVector::scalar(&phi.algebra, n, c.clone());
        for i in crate::exterior::mask_indices(*m) {
            t = t.wedge(&cols[i]).unwrap();
        }
        acc = acc.add(&t).unwrap();
    }
    acc
}

/// Random invertible rational matrix with small entries.
pub fn random_invertible(n: usize, rng: &mut impl Rng) -> SparseMatrix {
    loop {
        let d: Vec<Vec<Q>> = (0..n).map(|_| (0..n).map(|_| Q::from(rng.gen_range(-3i64..=3))).collect()).collect();
        let m = SparseMatrix::from_dense(&d);
        if rank(&m) == n {
            return m;
        }
    }
}

/// Support of `phi`: the smallest `U` with `phi in Lambda^k(U)`, and `phi`
/// re-expressed in the pivot basis of `U`.
fn reduce_to_support(phi: &MultiVector) -> (Subspace, MultiVector) {
    let n = phi.n;
    let k = phi.degree;
    // U is spanned by all (k-1)-fold contractions of phi.
    let mut e = Echelon::new(n);
    for &m in &ext_basis(n, k - 1).masks {
        let idx = crate::exterior::mask_indices(m);
        let mut t = phi.clone();
        for i in idx.iter().rev() {
            t = t.interior(&SparseVec::unit(*i));
        }
        let v = t.coords();
        if !v.is_zero() {
            e.insert(v);
        }
    }
    let u = Subspace::from_echelon(e);
    let piv: Vec<usize> = u.pivots().iter().map(|p| *p as usize).collect();
    let m = piv.len();
    let mut terms = std::collections::BTreeMap::new();
    for (mask, c) in &phi.terms {
        let idx = crate::exterior::mask_indices(*mask);
        if idx.iter().all(|i| piv.contains(i)) {
            let local: Vec<usize> = idx.iter().map(|i| piv.iter().position(|p| p == i).unwrap()).collect();
            terms.insert(crate::exterior::mask_of(&local), c.clone());
        }
    }
    let name: Arc<str> = Arc::from(format!("R{m}").as_str());
    (u, MultiVector::from_terms(&name, m, k, terms))
}

/// Classifies a 3-form up to `GL`.
///
/// `metric` is validated (symmetric positive-definite) when given; the
/// verdict itself does not depend on it.
pub fn classify_3form(phi: &MultiVector, metric: Option<&SparseMatrix>) -> Result<FormTypeReport, LieError> {
    if phi.degree != 3 {
        return Err(LieError::Invariant(format!("expected a 3-form, got degree {}", phi.degree)));
    }
    let n = phi.n;
    let mut details = Vec::new();
    if let Some(g) = metric {
        if g.nrows != n {
            return Err(LieError::Invariant(format!("metric is {}x{}, form lives on R^{n}", g.nrows, g.ncols)));
        }
        Gram::new(g.clone())?;
        details.push("metric: positive-definite (verdict is metric independent)".into());
    }
    let mut rep = FormTypeReport {
        verdict: Verdict::Zero,
        ambient_dim: n,
        kernel_dim: n,
        stab_dim: n * n,
        killing_signature: None,
        details,
    };
    if phi.is_zero() {
        rep.details.push("zero form".into());
        return Ok(rep);
    }
    let (support, red) = reduce_to_support(phi);
    let m = red.n;
    rep.kernel_dim = n - m;
    if rep.kernel_dim > 0 {
        rep.details.push(format!("degenerate: {} kernel directions split off, reduced to R^{m}", rep.kernel_dim));
    }
    debug_assert_eq!(support.dim(), m);
    let stab = stabilizer_algebra(&red);
    rep.stab_dim = if m == n { stab.dim() } else { stabilizer_algebra(phi).dim() };
    rep.details.push(format!("stabilizer on R^{m}: dim {}", stab.dim()));
    let alg = MatrixLieAlgebra::new(m, stab)?;
    let killing = alg.killing();
    let sig = inertia(&killing);
    rep.killing_signature = Some(sig);
    let semisimple = sig.2 == 0 && alg.dim() > 0;
    let compact = semisimple && sig.0 == 0;

    if m == 3 {
        rep.verdict = Verdict::Cartan("su2".into());
        rep.details.push("nonzero 3-form on R^3".into());
        return Ok(rep);
    }
    // product type: phi = z ^ psi with z unique up to scale
    let divisors = {
        let cols: Vec<SparseVec> = (0..m)
            .map(|i| MultiVector::vector(&red.algebra, m, &SparseVec::unit(i)).wedge(&red).unwrap().coords())
            .collect();
        kernel_basis(&SparseMatrix::from_columns(binomial(m, 4), &cols)).dim()
    };
    if divisors == 1 {
        if m % 2 == 1 {
            rep.verdict = Verdict::ProductType;
            rep.details.push(format!("phi = z ^ omega with omega of rank {} on R^{m}/z", m - 1));
        } else {
            rep.verdict = Verdict::Unrecognized;
            rep.details.push("decomposable factor with even complement; not of maximal rank".into());
        }
        return Ok(rep);
    }
    if m == 6 && alg.dim() == 16 {
        match complex_structure(&alg) {
            Some(true) => {
                rep.verdict = Verdict::SlType;
                rep.details.push("stabilizer commutant is C: complex structure found".into());
            }
            _ => {
                rep.verdict = Verdict::Unrecognized;
                rep.details.push("stabilizer of dim 16 without a complex structure (split real form)".into());
            }
        }
        return Ok(rep);
    }
    if m == 7 && alg.dim() == 14 {
        if compact {
            rep.verdict = Verdict::G2Type;
            rep.details.push("stabilizer is compact of dim 14".into());
        } else {
            rep.verdict = Verdict::Unrecognized;
            rep.details.push("stabilizer of dim 14 is not compact (split form)".into());
        }
        return Ok(rep);
    }
    if alg.dim() == m && compact {
        match match_catalogue(&alg)? {
            Some(name) => {
                rep.verdict = Verdict::Cartan(name.clone());
                rep.details.push(format!("stabilizer matches {name} (dimension, rank, Casimir spectrum on Lambda^2)"));
            }
            None => {
                rep.verdict = Verdict::Unrecognized;
                rep.details.push("compact stabilizer of full dimension with no catalogue match".into());
            }
        }
        return Ok(rep);
    }
    rep.verdict = Verdict::Unrecognized;
    rep.details.push(format!("no catalogue shape: m = {m}, stab dim {}, semisimple {semisimple}, compact {compact}", alg.dim()));
    Ok(rep)
}

/// `Some(true)` if the commutant is a field isomorphic to `C`.
fn complex_structure(alg: &MatrixLieAlgebra) -> Option<bool> {
    let c = alg.commutant();
    if c.dim() != 2 {
        return Some(false);
    }
    let n = alg.n;
    let id = matrix_to_vec(&SparseMatrix::identity(n));
    // pick the basis vector that is not a multiple of the identity
    let y = c.basis().iter().map(|v| vec_to_matrix(n, v)).find(|m| {
        let v = matrix_to_vec(m);
        Subspace::from_vectors(n * n, [v, id.clone()]).dim() == 2
    })?;
    // Y^2 = a Y + b I
    let y2 = matrix_to_vec(&y.matmul(&y));
    let sys = SparseMatrix::from_columns(n * n, &[matrix_to_vec(&y), id]);
    let ab = crate::scalars::solve(&sys, &y2)?;
    let a = ab.get(0).cloned().unwrap_or_default();
    let b = ab.get(1).cloned().unwrap_or_default();
    let disc = Q::from(&a * &a) + (4 * b);
    Some(disc < 0)
}

/// Matches a compact stabilizer of dimension `m` on `R^m` against the
/// catalogue of built algebras.
fn match_catalogue(alg: &MatrixLieAlgebra) -> Result<Option<String>, LieError> {
    let d = alg.dim();
    let r = alg.generic_rank(0x5eed);
    let candidates: Vec<&CatalogueEntry> = CATALOGUE.iter().filter(|e| e.dim == d && e.rank == r).collect();
    if candidates.is_empty() {
        return Ok(None);
    }
    // Casimir of the stabilizer on R^m and on Lambda^2(R^m), normalized by
    // its own Killing form.
    let killing = alg.killing();
    let ginv = crate::scalars::dense_inverse(&killing.scaled(&Q::from(-1)).to_dense())?;
    let ginv = SparseMatrix::from_dense(&ginv);
    let defining = casimir_from_matrices(&ginv, &alg.basis);
    if defining != SparseMatrix::identity(alg.n) {
        return Ok(None);
    }
    let reps2: Vec<SparseMatrix> = alg.basis.iter().map(|a| derivation_matrix(a, 2)).collect();
    let spec = spectrum(&casimir_from_matrices(&ginv, &reps2))?;
    for e in candidates {
        if catalogue::spectrum_of(e)? == spec {
            return Ok(Some(e.name.to_string()));
        }
    }
    Ok(None)
}

pub(crate) fn spectrum(m: &SparseMatrix) -> Result<Vec<(Q, usize)>, LieError> {
    Ok(rational_eigenspaces(m)?.into_iter().map(|(v, s)| (v, s.dim())).collect())
}
