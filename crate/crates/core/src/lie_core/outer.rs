use super::chevalley::Chevalley;
use super::oracle::{compact_realization_a, MatrixAlgebra};
use super::roots::CartanType;
use super::{LieAlgebraData, LieError};
use crate::scalars::{SparseMatrix, SparseVec, Q};

/// The outer involution `sigma`, as a matrix on the basis of `g`.
///
/// * `su(n)`: complex conjugation, transported through the explicit
///   realization of the Chevalley basis in `sl(n, C)`.
/// * `so(2n)`: the Dynkin diagram involution swapping the two spin nodes.
///
/// Returns `Ok(None)` for every other type.
pub fn outer_automorphism(g: &LieAlgebraData) -> Result<Option<SparseMatrix>, LieError> {
    let Some(rd) = g.root_datum.as_ref() else { return Ok(None) };
    let sigma = match rd.ty {
        CartanType::A(_) => {
            let imgs = compact_realization_a(g)?;
            let ma = MatrixAlgebra::new(imgs.clone());
            let cols: Vec<SparseVec> = imgs
                .iter()
                .map(|m| ma.coords(&m.conj()).ok_or_else(|| LieError::Invariant("conjugate left su(n)".into())))
                .collect::<Result<_, _>>()?;
            SparseMatrix::from_columns(g.dim(), &cols)
        }
        CartanType::D(n) => diagram_involution(g, n)?,
        _ => return Ok(None),
    };
    check_automorphism(g, &sigma)?;
    Ok(Some(sigma))
}

fn diagram_involution(g: &LieAlgebraData, n: usize) -> Result<SparseMatrix, LieError> {
    let rd = g.root_datum.as_ref().unwrap();
    let r = rd.rank;
    let p = rd.num_positive();
    let perm = |root: &[i64]| -> Vec<i64> {
        let mut out = root.to_vec();
        out.swap(n - 2, n - 1);
        out
    };
    let mut ch = Chevalley::new(rd);
    let mut eps: Vec<Q> = vec![Q::from(1); p];
    for xi in r..p {
        let root = rd.positive[xi].clone();
        let (i, b) = (0..r)
            .find_map(|i| {
                let mut rest = root.clone();
                rest[i] -= 1;
                rd.index_of(&rest).filter(|b| *b < p).map(|b| (i, b))
            })
            .unwrap();
        let pi = rd.index_of(&perm(&rd.positive[i])).unwrap();
        let pb = rd.index_of(&perm(&rd.positive[b])).unwrap();
        let v = Q::from(&eps[b] * ch.n(pi, pb)) / ch.n(i, b);
        eps[xi] = v;
    }
    let mut cols = vec![SparseVec::new(); g.dim()];
    for i in 0..r {
        let pi = if i == n - 2 { n - 1 } else if i == n - 1 { n - 2 } else { i };
        cols[i] = SparseVec::unit(pi);
    }
    for a in 0..p {
        let pa = rd.index_of(&perm(&rd.positive[a])).unwrap();
        cols[r + 2 * a] = SparseVec::unit(r + 2 * pa).scaled(&eps[a]);
        cols[r + 2 * a + 1] = SparseVec::unit(r + 2 * pa + 1).scaled(&eps[a]);
    }
    Ok(SparseMatrix::from_columns(g.dim(), &cols))
}

/// Checks `[s x, s y] = s [x, y]` on basis pairs and that `s` preserves the metric.
pub fn check_automorphism(g: &LieAlgebraData, s: &SparseMatrix) -> Result<(), LieError> {
    let cols = s.columns();
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let lhs = g.bracket(&cols[i], &cols[j]);
            let rhs = s.mul_vec(g.bracket_basis(i, j));
            if lhs != rhs {
                return Err(LieError::Invariant(format!("sigma is not an automorphism at ({i},{j})")));
            }
        }
    }
    let st = s.transpose();
    if st.matmul(g.gram().matrix()).matmul(s) != *g.gram().matrix() {
        return Err(LieError::Invariant("sigma does not preserve the Killing form".into()));
    }
    Ok(())
}
