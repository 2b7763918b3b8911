use super::{phi_split, star_omega, PhiSplit};
use crate::exterior::Exterior;
use crate::lie_core::{casimir_on, LieError, RepSpace};
use crate::scalars::{kernel_basis, SparseMatrix, Subspace, Q};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

const GOLDEN_SU3: &str = include_str!("../../data/split_dims_su3.json");

/// Reference dimensions shipped with the crate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GoldenTable {
    pub format: u32,
    pub algebra: String,
    pub description: String,
    pub rows: BTreeMap<String, Vec<usize>>,
    pub lambda4_four_way: Vec<usize>,
}

pub fn golden_su3() -> GoldenTable {
    serde_json::from_str(GOLDEN_SU3).expect("shipped golden table parses")
}

/// Plus/minus dimensions of one splitting.
#[derive(Clone, Debug, Serialize)]
pub struct PhiTable {
    pub algebra: String,
    pub form: String,
    pub minus: Vec<usize>,
    pub plus: Vec<usize>,
}

impl PhiTable {
    pub fn from_split(ext: &Exterior, form: &str, s: &PhiSplit) -> Self {
        PhiTable { algebra: ext.g.name.clone(), form: form.into(), minus: s.minus_dims(), plus: s.plus_dims() }
    }
}

/// `Lambda^4(su3)` as `(L^1 ^ omega) + delta(L^5_27) + *(L^1 ^ omega) + d(L^3_27)`,
/// with every `*` replaced by its star-free description.
#[derive(Clone, Debug, Serialize)]
pub struct FourWaySplit {
    pub lambda3_27_dim: usize,
    pub lambda5_27_dim: usize,
    /// Dimensions of the four pieces.
    pub parts: [usize; 4],
    pub total_rank: usize,
    /// Casimir eigenvalue on `L^3_27`, if it acts as a scalar there.
    pub casimir_27: Option<String>,
    /// `delta(L^4_{omega-}) ⊆ L^3_{omega-}`.
    pub delta_minus_contained: bool,
    /// `delta(L^4_{omega+} ∩ ker d) = L^3_27`.
    pub delta_closed_plus_is_27: bool,
    /// `(dim d(g^perp), dim delta(L^4_{omega-}), dim L^3_{omega-})`, direct when the first two sum to the third.
    pub omega_minus_3: (usize, usize, usize),
    pub omega_minus_3_direct: bool,
}

/// Both splittings of `su3` (or any algebra, without the reference
/// comparison) and, for `su3`, the four-way split of `Lambda^4`.
pub struct SplitTables {
    pub omega: PhiTable,
    pub star: PhiTable,
    /// Row name and whether it matched the shipped reference.
    pub golden: Option<Vec<(String, bool)>>,
    pub four_way: Option<FourWaySplit>,
}

pub fn split_tables(ext: &Exterior) -> Result<SplitTables, LieError> {
    let w = ext.omega.vector.clone();
    let so = phi_split(ext, &w)?;
    let ss = phi_split(ext, &star_omega(ext)?)?;
    let omega = PhiTable::from_split(ext, "omega", &so);
    let star = PhiTable::from_split(ext, "star-omega", &ss);
    let (golden, four_way) = if ext.g.name == "su3" {
        let gt = golden_su3();
        let rows = [
            ("omega_minus", &omega.minus),
            ("omega_plus", &omega.plus),
            ("star_omega_minus", &star.minus),
            ("star_omega_plus", &star.plus),
        ];
        let cmp = rows.iter().map(|(name, got)| (name.to_string(), gt.rows.get(*name) == Some(*got))).collect();
        (Some(cmp), Some(four_way_split(ext, &so, &ss)?))
    } else {
        (None, None)
    };
    Ok(SplitTables { omega, star, golden, four_way })
}

fn four_way_split(ext: &Exterior, so: &PhiSplit, ss: &PhiSplit) -> Result<FourWaySplit, LieError> {
    let n = ext.n();
    let w = &ext.omega.vector;
    let x5 = &ss.phi;
    let omega_line = ext.span(3, std::slice::from_ref(w));
    let l3_27 = omega_line.complement_in(&so.plus[3], ext.gram(3));
    // (omega ^ Lambda^2)^perp ∩ x5^perp inside Lambda^5
    let w_l2 = Subspace::image(&ext.wedge_matrix(w, 2));
    let x5_line = ext.span(n - 3, std::slice::from_ref(x5));
    let l5_27 = w_l2.sum(&x5_line).orthogonal_complement(ext.gram(5));

    let a = Subspace::image(&ext.wedge_matrix(w, 1));
    let b = l5_27.map(ext.delta_matrix(5));
    let star_cols: Vec<_> = (0..n).map(|i| ext.contract(&crate::scalars::SparseVec::unit(i), x5).coords()).collect();
    let c = Subspace::from_vectors(crate::exterior::binomial(n, 4), star_cols);
    let d = l3_27.map(ext.d_matrix(3));
    let total = a.sum(&b).sum(&c).sum(&d).dim();

    let cas = casimir_on(&ext.g, RepSpace::Exterior(3))?;
    let casimir_27 = scalar_on(&cas, &l3_27).map(|q| q.to_string());

    let delta_minus = so.minus[4].map(ext.delta_matrix(4));
    let closed_plus = so.plus[4].intersect(&kernel_basis(ext.d_matrix(4)));
    let delta_closed_plus = closed_plus.map(ext.delta_matrix(4));
    let d_perp = kernel_basis(ext.delta_matrix(2)).map(ext.d_matrix(2));
    let sum3 = d_perp.sum(&delta_minus);

    Ok(FourWaySplit {
        lambda3_27_dim: l3_27.dim(),
        lambda5_27_dim: l5_27.dim(),
        parts: [a.dim(), b.dim(), c.dim(), d.dim()],
        total_rank: total,
        casimir_27,
        delta_minus_contained: so.minus[3].contains_space(&delta_minus),
        delta_closed_plus_is_27: delta_closed_plus == l3_27,
        omega_minus_3: (d_perp.dim(), delta_minus.dim(), so.minus[3].dim()),
        omega_minus_3_direct: sum3.dim() == d_perp.dim() + delta_minus.dim() && sum3 == so.minus[3],
    })
}

/// `c` with `m v = c v` on all of `s`.
pub(crate) fn scalar_on(m: &SparseMatrix, s: &Subspace) -> Option<Q> {
    let mut c: Option<Q> = None;
    for v in s.basis() {
        let mv = m.mul_vec(v);
        let (p, x) = v.0.first()?;
        let r = mv.get(*p).cloned().unwrap_or_default() / x ;
        if mv != v.scaled(&r) {
            return None;
        }
        match &c {
            Some(prev) if *prev != r => return None,
            _ => c = Some(r),
        }
    }
    c
}
