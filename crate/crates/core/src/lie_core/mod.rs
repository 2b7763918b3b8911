//! Compact simple Lie algebras from root data.
//!
//! [`build_algebra`] goes through a Chevalley basis and the compact
//! combinations `h = iH`, `e = i(E_a + E_-a)`, `f = E_a - E_-a`;
//! [`oracle::matrix_oracle`] builds the same algebras from explicit matrices
//! and is only used for cross-checks.

mod casimir;
pub mod chevalley;
pub mod complex;
pub mod oracle;
mod outer;
pub mod roots;

pub use casimir::{casimir_on, casimir_tensor, RepSpace, MAX_REP_DIM};
pub use outer::{check_automorphism, outer_automorphism};
pub use roots::{CartanType, Root, RootDatum};

use crate::scalars::{dense_inverse, Echelon, Gram, ScalarError, SparseMatrix, SparseVec, Q};
use std::sync::Arc;

/// Default cap on `dim g`.
pub const DEFAULT_GUARDRAIL: usize = 28;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum LieError {
    #[error("unsupported algebra '{0}' (supported: suN (N>=2), soN (N=3,5,6,7,...), spN (N>=1), g2, f4)")]
    Unsupported(String),
    #[error("algebra {name} has dimension {dim}, above the guardrail {cap}")]
    Guardrail { name: String, dim: usize, cap: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("weight {0:?} is not dominant integral")]
    NotDominant(Vec<i64>),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, Debug)]
pub struct BuildConfig {
    pub guardrail: usize,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig { guardrail: DEFAULT_GUARDRAIL }
    }
}

/// Parses `su3`, `so7`, `sp2`, `g2`, ... into a Cartan type.
pub fn parse_name(name: &str) -> Result<CartanType, LieError> {
    let bad = || LieError::Unsupported(name.to_string());
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "g2" => return Ok(CartanType::G2),
        "f4" => return Ok(CartanType::F4),
        _ => {}
    }
    let (fam, num) = lower.split_at(2.min(lower.len()));
    let k: usize = num.parse().map_err(|_| bad())?;
    match fam {
        "su" if k >= 2 => Ok(CartanType::A(k - 1)),
        "so" if k == 3 => Ok(CartanType::A(1)),
        "so" if k >= 5 && k % 2 == 1 => Ok(CartanType::B((k - 1) / 2)),
        "so" if k >= 6 && k.is_multiple_of(2) => Ok(CartanType::D(k / 2)),
        "sp" if k == 1 => Ok(CartanType::A(1)),
        "sp" if k >= 2 => Ok(CartanType::C(k)),
        _ => Err(bad()),
    }
}

/// Dimension of the algebra with the given Cartan type.
pub fn type_dim(ty: CartanType) -> usize {
    ty.rank() + 2 * ty.positive_root_count()
}

/// Structure constants, metric and root data of a compact Lie algebra.
#[derive(Clone, Debug)]
pub struct LieAlgebraData {
    pub name: String,
    pub root_datum: Option<RootDatum>,
    pub labels: Vec<String>,
    table: Arc<Vec<Vec<SparseVec>>>,
    gram: Gram,
    gram_inv: SparseMatrix,
}

impl LieAlgebraData {
    /// Validates and wraps a bracket table.
    ///
    /// Checks antisymmetry, Jacobi, positive-definiteness of minus the
    /// Killing form and (when `check_simple`) that the centroid is trivial.
    pub fn from_table(
        name: &str,
        labels: Vec<String>,
        table: Vec<Vec<SparseVec>>,
        root_datum: Option<RootDatum>,
        check_simple: bool,
    ) -> Result<Self, LieError> {
        let n = table.len();
        for i in 0..n {
            if !table[i][i].is_zero() {
                return Err(LieError::Invariant(format!("[b{i},b{i}] != 0")));
            }
            for j in 0..n {
                if table[i][j] != table[j][i].neg() {
                    return Err(LieError::Invariant(format!("antisymmetry fails at ({i},{j})")));
                }
            }
        }
        let table = Arc::new(table);
        let killing = killing_from(&table);
        let neg = killing.scaled(&Q::from(-1));
        let gram = Gram::new(neg)?;
        let gram_inv = SparseMatrix::from_dense(&dense_inverse(&gram.matrix().to_dense())?);
        let g = LieAlgebraData { name: name.to_string(), root_datum, labels, table, gram, gram_inv };
        if let Some((i, j, k)) = g.jacobi_violation() {
            return Err(LieError::Invariant(format!("Jacobi fails at ({i},{j},{k})")));
        }
        if check_simple {
            let c = g.centroid_dim();
            if c != 1 {
                return Err(LieError::Invariant(format!("centroid has dimension {c}; algebra is not simple")));
            }
        }
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn rank(&self) -> Option<usize> {
        self.root_datum.as_ref().map(|r| r.rank)
    }

    /// `[b_i, b_j]`
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    /// `c_{ij}^k`
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Q {
        self.table[i][j].get(k as u32).cloned().unwrap_or_default()
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let t = &self.table[*i as usize][*j as usize];
                if !t.is_zero() {
                    out = out.axpy(&Q::from(a * b), t);
                }
            }
        }
        out
    }

    /// Matrix of `ad(b_i)`: column `j` is `[b_i, b_j]`.
    pub fn ad_matrix(&self, i: usize) -> SparseMatrix {
        SparseMatrix::from_columns(self.dim(), &self.table[i])
    }

    pub fn ad_of(&self, x: &SparseVec) -> SparseMatrix {
        let cols: Vec<SparseVec> = (0..self.dim()).map(|j| self.bracket(x, &SparseVec::unit(j))).collect();
        SparseMatrix::from_columns(self.dim(), &cols)
    }

    /// Minus the Killing form; positive-definite.
    pub fn gram(&self) -> &Gram {
        &self.gram
    }

    pub fn gram_inv(&self) -> &SparseMatrix {
        &self.gram_inv
    }

    /// Killing form recomputed from the structure constants.
    pub fn killing(&self) -> SparseMatrix {
        killing_from(&self.table)
    }

    /// `<x, y>` = minus Killing.
    pub fn inner(&self, x: &SparseVec, y: &SparseVec) -> Q {
        self.gram.inner(x, y)
    }

    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket(&SparseVec::unit(i), &self.table[j][k]);
                    let b = self.bracket(&SparseVec::unit(j), &self.table[k][i]);
                    let c = self.bracket(&SparseVec::unit(k), &self.table[i][j]);
                    if !a.add(&b).add(&c).is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Dimension of `{T : T ad_x = ad_x T for all x}`; 1 iff `g` is simple
    /// (for a compact semisimple algebra).
    pub fn centroid_dim(&self) -> usize {
        let n = self.dim();
        let gens: Vec<usize> = match &self.root_datum {
            Some(rd) => (0..rd.rank).flat_map(|i| [rd.rank + 2 * i, rd.rank + 2 * i + 1]).collect(),
            None => (0..n).collect(),
        };
        // Unknown T has entries t_{ab} at index a*n + b.
        let mut e = Echelon::new(n * n);
        for &x in &gens {
            let ad = self.ad_matrix(x);
            let adt = ad.transpose();
            for a in 0..n {
                for b in 0..n {
                    // (T ad)_{ab} - (ad T)_{ab} = sum_c t_{ac} ad_{cb} - ad_{ac} t_{cb}
                    let mut row: Vec<(u32, Q)> = Vec::new();
                    for (c, v) in adt.rows[b].iter() {
                        row.push(((a * n + *c as usize) as u32, v.clone()));
                    }
                    for (c, v) in ad.rows[a].iter() {
                        row.push(((*c as usize * n + b) as u32, Q::from(-v)));
                    }
                    let row = SparseVec::from_pairs(row);
                    if !row.is_zero() {
                        e.insert(row);
                    }
                }
            }
        }
        n * n - e.rank()
    }
}

fn killing_from(table: &[Vec<SparseVec>]) -> SparseMatrix {
    let n = table.len();
    // (ad_i)_{kl} = c_{il}^k ; tr(ad_i ad_j) = sum_{k,l} c_{il}^k c_{jk}^l
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::new();
        for j in 0..n {
            let mut t = Q::new();
            for l in 0..n {
                for (k, v) in table[i][l].iter() {
                    if let Some(w) = table[j][*k as usize].get(l as u32) {
                        t += Q::from(v * w);
                    }
                }
            }
            if t != 0 {
                row.push((j as u32, t));
            }
        }
        rows.push(SparseVec(row));
    }
    SparseMatrix::from_rows(n, rows)
}

/// Builds a compact simple Lie algebra by name with the default guardrail.
pub fn build_algebra(name: &str) -> Result<LieAlgebraData, LieError> {
    build_algebra_with(name, &BuildConfig::default())
}

pub fn build_algebra_with(name: &str, cfg: &BuildConfig) -> Result<LieAlgebraData, LieError> {
    let ty = parse_name(name)?;
    let dim = type_dim(ty);
    if dim > cfg.guardrail {
        return Err(LieError::Guardrail { name: name.to_string(), dim, cap: cfg.guardrail });
    }
    let rd = RootDatum::new(ty)?;
    let mut ch = chevalley::Chevalley::new(&rd);
    let table = ch.compact_table()?;
    let labels = ch.labels();
    drop(ch);
    LieAlgebraData::from_table(&name.to_ascii_lowercase(), labels, table, Some(rd), true)
}
