//! Matrix realizations used as independent cross-checks.

use super::chevalley::Chevalley;
use super::complex::{CMatrix, CQ};
use super::roots::{CartanType, RootDatum};
use super::{parse_name, LieAlgebraData, LieError};
use crate::scalars::{solve, SparseMatrix, SparseVec, Q};

/// A real Lie algebra spanned by complex matrices.
pub struct MatrixAlgebra {
    pub basis: Vec<CMatrix>,
    flat: SparseMatrix,
}

impl MatrixAlgebra {
    pub fn new(basis: Vec<CMatrix>) -> Self {
        let cols: Vec<SparseVec> = basis.iter().map(|m| SparseVec::from_dense(&m.flatten())).collect();
        let rows = basis.first().map_or(0, |m| 2 * m.n * m.n);
        MatrixAlgebra { basis, flat: SparseMatrix::from_columns(rows, &cols) }
    }

    /// Real coordinates of `m` in the basis, if it lies in the span.
    pub fn coords(&self, m: &CMatrix) -> Option<SparseVec> {
        solve(&self.flat, &SparseVec::from_dense(&m.flatten()))
    }

    pub fn table(&self) -> Result<Vec<Vec<SparseVec>>, LieError> {
        let n = self.basis.len();
        let mut t = vec![vec![SparseVec::new(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let b = self.basis[i].bracket(&self.basis[j]);
                let c = self
                    .coords(&b)
                    .ok_or_else(|| LieError::Invariant("matrix basis is not closed under bracket".into()))?;
                t[j][i] = c.neg();
                t[i][j] = c;
            }
        }
        Ok(t)
    }
}

fn e(n: usize, i: usize, j: usize, c: CQ) -> CMatrix {
    CMatrix::unit(n, i, j, c)
}

/// Compact `su(n)`: `i(E_jj - E_j+1,j+1)`, `E_jk - E_kj`, `i(E_jk + E_kj)`.
pub fn su_basis(n: usize) -> Vec<CMatrix> {
    let mut out = Vec::new();
    for j in 0..n - 1 {
        out.push(e(n, j, j, CQ::i()).add(&e(n, j + 1, j + 1, CQ::imag(-1))));
    }
    for j in 0..n {
        for k in j + 1..n {
            out.push(e(n, j, k, CQ::real(1)).add(&e(n, k, j, CQ::real(-1))));
            out.push(e(n, j, k, CQ::i()).add(&e(n, k, j, CQ::i())));
        }
    }
    out
}

/// `so(n)`: `E_ij - E_ji`.
pub fn so_basis(n: usize) -> Vec<CMatrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(e(n, i, j, CQ::real(1)).add(&e(n, j, i, CQ::real(-1))));
        }
    }
    out
}

/// Compact `sp(n)` inside `u(2n)`: `[[A, B], [-conj(B), conj(A)]]` with
/// `A` in `u(n)` and `B` complex symmetric.
pub fn sp_basis(n: usize) -> Vec<CMatrix> {
    let z = CMatrix::zeros(n);
    let mut u = Vec::new();
    for j in 0..n {
        u.push(e(n, j, j, CQ::i()));
        for k in j + 1..n {
            u.push(e(n, j, k, CQ::real(1)).add(&e(n, k, j, CQ::real(-1))));
            u.push(e(n, j, k, CQ::i()).add(&e(n, k, j, CQ::i())));
        }
    }
    let mut out: Vec<CMatrix> = u.iter().map(|a| CMatrix::block(n, [[a, &z], [&z, &a.conj()]])).collect();
    for j in 0..n {
        for k in j..n {
            for c in [CQ::real(1), CQ::i()] {
                let mut s = e(n, j, k, c.clone());
                if j != k {
                    s = s.add(&e(n, k, j, c));
                }
                let minus_conj = s.conj().scale(&CQ::real(-1));
                out.push(CMatrix::block(n, [[&z, &s], [&minus_conj, &z]]));
            }
        }
    }
    out
}

/// Builds `name` from explicit matrices.
pub fn matrix_oracle(name: &str) -> Result<LieAlgebraData, LieError> {
    let lower = name.to_ascii_lowercase();
    let ty = parse_name(&lower)?;
    let k: usize = lower[2..].parse().map_err(|_| LieError::Unsupported(name.into()))?;
    let basis = match (&lower[..2], ty) {
        ("su", _) => su_basis(k),
        ("so", _) => so_basis(k),
        ("sp", _) => sp_basis(k),
        _ => return Err(LieError::Unsupported(format!("{name} (no matrix oracle)"))),
    };
    let ma = MatrixAlgebra::new(basis);
    let table = ma.table()?;
    let labels = (1..=table.len()).map(|i| format!("m{i}")).collect();
    LieAlgebraData::from_table(&format!("{lower}-matrix"), labels, table, None, true)
}

/// Explicit homomorphism from the complex Chevalley basis of `A_n` into
/// `sl(n+1, C)`: `H_i -> E_ii - E_i+1,i+1`, `E_{a_i} -> E_i,i+1`,
/// `E_{-a_i} -> E_i+1,i`, extended along extraspecial pairs.
pub fn chevalley_realization_a(rd: &RootDatum) -> Result<Vec<CMatrix>, LieError> {
    let CartanType::A(r) = rd.ty else {
        return Err(LieError::Unsupported(format!("{} realization", rd.ty)));
    };
    let n = r + 1;
    let p = rd.num_positive();
    let mut ch = Chevalley::new(rd);
    let mut img: Vec<Option<CMatrix>> = vec![None; r + 2 * p];
    for i in 0..r {
        img[i] = Some(e(n, i, i, CQ::real(1)).add(&e(n, i + 1, i + 1, CQ::real(-1))));
        img[r + i] = Some(e(n, i, i + 1, CQ::real(1)));
        img[r + p + i] = Some(e(n, i + 1, i, CQ::real(1)));
    }
    for xi in r..p {
        let root = rd.positive[xi].clone();
        let (al, be) = (0..r)
            .find_map(|i| {
                let mut rest = root.clone();
                rest[i] -= 1;
                rd.index_of(&rest).filter(|b| *b < p).map(|b| (i, b))
            })
            .expect("decomposition exists");
        for (a, b, target) in [(al, be, xi), (p + al, p + be, p + xi)] {
            let nab = ch.n(a, b);
            let m = img[r + a].as_ref().unwrap().bracket(img[r + b].as_ref().unwrap());
            img[r + target] = Some(m.scale(&CQ::real(Q::from((1, nab)))));
        }
    }
    let img: Vec<CMatrix> = img.into_iter().map(|m| m.unwrap()).collect();
    // Homomorphism check on every pair.
    for i in 0..img.len() {
        for j in i + 1..img.len() {
            let lhs = img[i].bracket(&img[j]);
            let mut rhs = CMatrix::zeros(n);
            for (k, v) in ch.complex_bracket(i, j) {
                rhs = rhs.add(&img[k].scale(&CQ::real(v)));
            }
            if lhs != rhs {
                return Err(LieError::Invariant(format!("A{r} realization is not a homomorphism at ({i},{j})")));
            }
        }
    }
    Ok(img)
}

/// Images of the compact basis of `g` (built from `A_n`) as matrices in `su(n+1)`.
pub fn compact_realization_a(g: &LieAlgebraData) -> Result<Vec<CMatrix>, LieError> {
    let rd = g.root_datum.as_ref().ok_or_else(|| LieError::Unsupported(g.name.clone()))?;
    let img = chevalley_realization_a(rd)?;
    let ch = Chevalley::new(rd);
    let n = img[0].n;
    Ok((0..g.dim())
        .map(|k| {
            ch.compact_element(k)
                .into_iter()
                .fold(CMatrix::zeros(n), |acc, (idx, c)| acc.add(&img[idx].scale(&c)))
        })
        .collect())
}
