use super::{ScalarError, SparseMatrix, SparseVec, Q};

/// A symmetric positive-definite inner product on `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gram(SparseMatrix);

impl Gram {
    /// Checks symmetry and positive-definiteness (exact LDL^T).
    pub fn new(m: SparseMatrix) -> Result<Self, ScalarError> {
        if m.nrows != m.ncols {
            return Err(ScalarError::NotSquare(m.nrows, m.ncols));
        }
        for (i, r) in m.rows.iter().enumerate() {
            for (j, v) in r.iter() {
                if m.get(*j as usize, i) != *v {
                    return Err(ScalarError::NotSymmetric(i, *j as usize));
                }
            }
        }
        ldl_positive(&m.to_dense())?;
        Ok(Gram(m))
    }

    /// Wraps a matrix known to be positive-definite by construction
    /// (induced Grams of a checked Gram, tensor products of checked Grams).
    pub fn trusted(m: SparseMatrix) -> Self {
        debug_assert_eq!(m.nrows, m.ncols);
        Gram(m)
    }

    pub fn identity(n: usize) -> Self {
        Gram(SparseMatrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.0
    }

    pub fn inner(&self, a: &SparseVec, b: &SparseVec) -> Q {
        self.0.mul_vec(a).dot(b)
    }

    pub fn norm2(&self, a: &SparseVec) -> Q {
        self.inner(a, a)
    }

    pub fn kron(&self, other: &Gram) -> Gram {
        Gram(self.0.kron(&other.0))
    }

    /// Gram-adjoint of `m: (Q^a, other) -> (Q^b, self)` as a map back.
    /// Returns `other^{-1} m^T self`.
    pub fn adjoint(&self, m: &SparseMatrix, other: &Gram) -> Result<SparseMatrix, ScalarError> {
        let inv = SparseMatrix::from_dense(&dense_inverse(&other.0.to_dense())?);
        Ok(inv.matmul(&m.transpose()).matmul(&self.0))
    }
}

fn ldl_positive(a: &[Vec<Q>]) -> Result<(), ScalarError> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a.to_vec();
    for k in 0..n {
        let p = m[k][k].clone();
        if p <= 0 {
            return Err(ScalarError::NotPositiveDefinite { pivot: k, value: p.to_string() });
        }
        for i in k + 1..n {
            if m[i][k] == 0 {
                continue;
            }
            let f = Q::from(&m[i][k] / &p);
            for j in k..n {
                if m[k][j] != 0 {
                    let t = Q::from(&f * &m[k][j]);
                    m[i][j] -= t;
                }
            }
        }
    }
    Ok(())
}

/// Gauss-Jordan inverse of a dense square matrix.
pub fn dense_inverse(a: &[Vec<Q>]) -> Result<Vec<Vec<Q>>, ScalarError> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(ScalarError::NotSquare(n, a.first().map_or(0, |r| r.len())));
    }
    let mut m: Vec<Vec<Q>> = a.to_vec();
    let mut inv: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| Q::from((i == j) as i32)).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| m[r][col] != 0).ok_or(ScalarError::Singular)?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = Q::from(m[col][col].recip_ref());
        for j in 0..n {
            m[col][j] *= &p;
            inv[col][j] *= &p;
        }
        for r in 0..n {
            if r == col || m[r][col] == 0 {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                if m[col][j] != 0 {
                    let t = Q::from(&f * &m[col][j]);
                    m[r][j] -= t;
                }
                if inv[col][j] != 0 {
                    let t = Q::from(&f * &inv[col][j]);
                    inv[r][j] -= t;
                }
            }
        }
    }
    Ok(inv)
}
