use super::{kernel_basis, Echelon, Gram, SparseMatrix, SparseVec, Q};

/// A linear subspace of `Q^ambient`, stored canonically as reduced row
/// echelon rows. Two subspaces are equal iff their rows are equal, and the
/// coordinates of a member vector are read off at the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<u32>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, rows: (0..ambient).map(SparseVec::unit).collect(), pivots: (0..ambient as u32).collect() }
    }

    pub fn from_vectors<I: IntoIterator<Item = SparseVec>>(ambient: usize, vecs: I) -> Self {
        let mut e = Echelon::new(ambient);
        for v in vecs {
            e.insert(v);
        }
        Self::from_echelon(e)
    }

    pub fn from_echelon(e: Echelon) -> Self {
        let ambient = e.ncols();
        let rows = e.into_rref();
        let pivots = rows.iter().map(|r| r.lead().unwrap()).collect();
        Subspace { ambient, rows, pivots }
    }

    /// Column space of `m`.
    pub fn image(m: &SparseMatrix) -> Self {
        Self::from_vectors(m.nrows, m.columns())
    }

    pub fn kernel(m: &SparseMatrix) -> Self {
        kernel_basis(m)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    /// Basis vectors as columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.ambient, &self.rows)
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ambient);
        for r in &self.rows {
            e.insert(r.clone());
        }
        e
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not a member.
    pub fn coords(&self, v: &SparseVec) -> Option<Vec<Q>> {
        let c: Vec<Q> = self.pivots.iter().map(|p| v.get(*p).cloned().unwrap_or_default()).collect();
        let mut rest = v.clone();
        for (ci, r) in c.iter().zip(&self.rows) {
            if *ci != 0 {
                rest = rest.axpy(&Q::from(-ci), r);
            }
        }
        rest.is_zero().then_some(c)
    }

    /// Coordinates without the membership check (caller guarantees membership).
    pub fn coords_unchecked(&self, v: &SparseVec) -> SparseVec {
        SparseVec(
            self.pivots
                .iter()
                .enumerate()
                .filter_map(|(k, p)| v.get(*p).map(|x| (k as u32, x.clone())))
                .collect(),
        )
    }

    pub fn combine(&self, c: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (k, x) in c.iter() {
            out = out.axpy(x, &self.rows[*k as usize]);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut e = self.echelon();
        for r in &other.rows {
            e.insert(r.clone());
        }
        Self::from_echelon(e)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        // Solve sum a_i u_i - sum b_j w_j = 0 and keep sum a_i u_i.
        let mut cols: Vec<SparseVec> = self.rows.clone();
        cols.extend(other.rows.iter().map(|w| w.neg()));
        let m = SparseMatrix::from_columns(self.ambient, &cols);
        let ker = kernel_basis(&m);
        let d = self.dim() as u32;
        Subspace::from_vectors(
            self.ambient,
            ker.basis().iter().map(|k| self.combine(&SparseVec(k.iter().filter(|(i, _)| *i < d).cloned().collect()))),
        )
    }

    /// `{x : <b, x>_gram = 0 for every b in self}`.
    pub fn orthogonal_complement(&self, gram: &Gram) -> Subspace {
        assert_eq!(self.ambient, gram.dim());
        if self.dim() == 0 {
            return Subspace::full(self.ambient);
        }
        let rows: Vec<SparseVec> = self.rows.iter().map(|b| gram.matrix().mul_vec(b)).collect();
        kernel_basis(&SparseMatrix::from_rows(self.ambient, rows))
    }

    /// Orthogonal complement of `self` inside `outer`.
    pub fn complement_in(&self, outer: &Subspace, gram: &Gram) -> Subspace {
        self.orthogonal_complement(gram).intersect(outer)
    }

    /// True iff every pair of basis vectors pairs to zero under `gram`.
    pub fn is_orthogonal_to(&self, other: &Subspace, gram: &Gram) -> bool {
        self.rows.iter().all(|a| {
            let ga = gram.matrix().mul_vec(a);
            other.rows.iter().all(|b| ga.dot(b) == 0)
        })
    }

    /// Gram matrix of the canonical basis.
    pub fn restricted_gram(&self, gram: &Gram) -> Vec<Vec<Q>> {
        let g: Vec<SparseVec> = self.rows.iter().map(|b| gram.matrix().mul_vec(b)).collect();
        g.iter().map(|gi| self.rows.iter().map(|b| gi.dot(b)).collect()).collect()
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, m: &SparseMatrix) -> Subspace {
        Subspace::from_vectors(m.nrows, self.rows.iter().map(|r| m.mul_vec(r)))
    }
}
