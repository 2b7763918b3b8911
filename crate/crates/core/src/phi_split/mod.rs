//! Invariant forms, the splittings `Lambda^k = ker L_phi + (ker L_phi)^perp`,
//! and the identities relating `L_phi` to `d` and `delta`.

mod table;
mod xi;

pub use table::{split_tables, golden_su3, SplitTables, FourWaySplit, GoldenTable, PhiTable};
pub use xi::{xi_constant, XiReport};

use crate::exterior::{binomial, ext_basis, wedge_masks, Exterior, Mask, MultiVector, MAX_DIM};
use crate::lie_core::{outer_automorphism, LieError};
use crate::scalars::{kernel_basis, rank, SparseMatrix, SparseVec, Subspace, Q};

fn invariant(msg: impl Into<String>) -> LieError {
    LieError::Invariant(msg.into())
}

/// Harmonic spaces and Betti numbers, possibly over a truncated degree range.
#[derive(Clone, Debug)]
pub struct InvariantAlgebra {
    pub n: usize,
    /// Harmonic spaces for the degrees actually computed.
    pub harmonic: Vec<Option<Subspace>>,
    /// `b_k` where known, either computed or filled in by duality.
    pub betti: Vec<Option<usize>>,
    /// Degrees whose Betti number came from `b_k = b_{n-k}`.
    pub by_duality: Vec<usize>,
    pub primitive_degrees: Vec<usize>,
}

impl InvariantAlgebra {
    pub fn complete(&self) -> bool {
        self.betti.iter().all(Option::is_some)
    }

    /// Coefficients of the Poincaré polynomial if every `b_k` is known.
    pub fn poincare(&self) -> Option<Vec<usize>> {
        self.betti.iter().copied().collect()
    }
}

/// Harmonic spaces up to `max_degree` (default: all), completed by duality.
pub fn invariant_forms(ext: &Exterior, max_degree: Option<usize>) -> InvariantAlgebra {
    let n = ext.n();
    let top = max_degree.unwrap_or(n).min(n);
    let mut harmonic = vec![None; n + 1];
    let mut betti = vec![None; n + 1];
    for k in 0..=top {
        let h = ext.harmonic(k);
        betti[k] = Some(h.dim());
        harmonic[k] = Some(h);
    }
    let mut by_duality = Vec::new();
    for k in 0..=n {
        if betti[k].is_none() {
            if let Some(b) = betti[n - k] {
                betti[k] = Some(b);
                by_duality.push(k);
            }
        }
    }
    let primitive_degrees = primitive_degrees(&betti);
    InvariantAlgebra { n, harmonic, betti, by_duality, primitive_degrees }
}

/// Reads generator degrees off `prod (1 + t^d)` by repeated division.
/// With a truncated sequence only the degrees inside the known prefix are
/// reported.
fn primitive_degrees(betti: &[Option<usize>]) -> Vec<usize> {
    let known = betti.iter().take_while(|b| b.is_some()).count();
    let mut p: Vec<i64> = betti[..known].iter().map(|b| b.unwrap() as i64).collect();
    let mut out = Vec::new();
    loop {
        let Some(d) = (1..p.len()).find(|&k| p[k] != 0) else { break };
        if p[d] < 0 {
            break;
        }
        out.push(d);
        // divide by (1 + t^d): q_k = p_k - q_{k-d}
        for k in d..p.len() {
            let v = p[k - d];
            p[k] -= v;
        }
    }
    out
}

/// Primitive generators: `omega` in degree 3, then in each primitive
/// degree the harmonic forms orthogonal to products of lower ones.
pub fn primitive_generators(ext: &Exterior, inv: &InvariantAlgebra) -> Result<Vec<(usize, Vec<MultiVector>)>, LieError> {
    let n = ext.n();
    let mut out: Vec<(usize, Vec<MultiVector>)> = Vec::new();
    for &d in &inv.primitive_degrees {
        let h = inv.harmonic[d].as_ref().ok_or_else(|| invariant(format!("degree {d} not computed")))?;
        let gens = if d == 3 {
            let w = ext.omega.vector.clone();
            if !h.contains(&w.coords()) {
                return Err(invariant("omega is not harmonic"));
            }
            vec![w]
        } else {
            let mut products = Subspace::zero(binomial(n, d));
            for (d1, g1) in &out {
                for x in g1 {
                    // products of x with any harmonic form of the right degree
                    if let Some(Some(h2)) = inv.harmonic.get(d - d1) {
                        for b in h2.basis() {
                            let p = x.wedge(&ext.element(d - d1, b)).map_err(|e| invariant(e.to_string()))?;
                            products = products.sum(&Subspace::from_vectors(binomial(n, d), [p.coords()]));
                        }
                    }
                }
            }
            let prim = products.complement_in(h, ext.gram(d));
            prim.basis().iter().map(|b| ext.element(d, b)).collect()
        };
        out.push((d, gens));
    }
    Ok(out)
}

/// `v -> v _| phi` injective.
pub fn multisymplectic_check(phi: &MultiVector) -> Result<bool, LieError> {
    if phi.is_zero() {
        return Err(invariant("multisymplectic check on the zero form"));
    }
    let n = phi.n;
    let cols: Vec<SparseVec> = (0..n).map(|p| phi.interior(&SparseVec::unit(p)).coords()).collect();
    let m = SparseMatrix::from_columns(binomial(n, phi.degree - 1), &cols);
    Ok(rank(&m) == n)
}

/// Per-degree split for an invariant form `phi` of degree `l`.
#[derive(Clone, Debug)]
pub struct PhiSplit {
    pub phi: MultiVector,
    pub l: usize,
    pub plus: Vec<Subspace>,
    pub minus: Vec<Subspace>,
}

impl PhiSplit {
    pub fn minus_dims(&self) -> Vec<usize> {
        self.minus.iter().map(Subspace::dim).collect()
    }

    pub fn plus_dims(&self) -> Vec<usize> {
        self.plus.iter().map(Subspace::dim).collect()
    }
}

/// Splits every `Lambda^k` by `phi`. Checks invariance, the complementary
/// dimensions, `rank L_phi(Lambda^{n-l-k}) = dim minus_k`, the pairing
/// description of `plus_k`, the duality `dim minus_k = dim minus_{n-l-k}`
/// and the vanishing of `minus_k` above `n - l`.
pub fn phi_split(ext: &Exterior, phi: &MultiVector) -> Result<PhiSplit, LieError> {
    let n = ext.n();
    let l = phi.degree;
    if !ext.d(phi).is_zero() || !ext.delta(phi).is_zero() {
        return Err(invariant("phi is not invariant (d phi or delta phi is nonzero)"));
    }
    let mut plus = Vec::with_capacity(n + 1);
    let mut minus = Vec::with_capacity(n + 1);
    let mut ranks = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let lm = ext.wedge_matrix(phi, k);
        let p = kernel_basis(&lm);
        let m = p.orthogonal_complement(ext.gram(k));
        if p.dim() + m.dim() != binomial(n, k) {
            return Err(invariant(format!("split of Lambda^{k} is not complementary")));
        }
        ranks.push(binomial(n, k) - p.dim());
        plus.push(p);
        minus.push(m);
    }
    for k in 0..=n {
        if k + l > n {
            if minus[k].dim() != 0 {
                return Err(invariant(format!("minus_{k} is nonzero above n - l")));
            }
            continue;
        }
        let j = n - l - k;
        if minus[k].dim() != ranks[j] {
            return Err(invariant(format!("dim minus_{k} = {} but rank L_phi on Lambda^{j} = {}", minus[k].dim(), ranks[j])));
        }
        if minus[k].dim() != minus[j].dim() {
            return Err(invariant(format!("dim minus_{k} != dim minus_{j}")));
        }
        if pairing_annihilator(phi, k) != plus[k] {
            return Err(invariant(format!("plus_{k} is not the annihilator of phi ^ Lambda^{j}")));
        }
    }
    Ok(PhiSplit { phi: phi.clone(), l, plus, minus })
}

/// `{gamma in Lambda^k : gamma ^ phi ^ eta = 0 for all eta in Lambda^{n-l-k}}`,
/// from the top-degree pairing matrix.
pub fn pairing_annihilator(phi: &MultiVector, k: usize) -> Subspace {
    let n = phi.n;
    let l = phi.degree;
    let j = n - l - k;
    let full: Mask = Mask::MAX >> (MAX_DIM - n);
    let gk = ext_basis(n, k);
    let gj = ext_basis(n, j);
    let mut rows = Vec::with_capacity(gj.dim());
    for &eta in &gj.masks {
        let mut row = Vec::new();
        for (ci, &gamma) in gk.masks.iter().enumerate() {
            let mut acc = Q::new();
            for (pm, c) in &phi.terms {
                let Some((s1, gp)) = wedge_masks(gamma, *pm) else { continue };
                let Some((s2, top)) = wedge_masks(gp, eta) else { continue };
                debug_assert_eq!(top, full);
                if s1 ^ s2 {
                    acc -= c;
                } else {
                    acc += c;
                }
            }
            if acc != 0 {
                row.push((ci as u32, acc));
            }
        }
        rows.push(SparseVec(row));
    }
    kernel_basis(&SparseMatrix::from_rows(gk.dim(), rows))
}

/// Outcome of the `L_phi` / `d` / `delta` commutation checks.
#[derive(Clone, Debug, Default)]
pub struct CommutationReport {
    /// Degrees where `(-1)^{l+1} L d + d L = 0` failed.
    pub d_failures: Vec<usize>,
    pub delta_failures: Vec<usize>,
    /// Degrees where `L_phi` failed to map harmonic / d-exact / delta-exact
    /// forms into the same kind.
    pub preservation_failures: Vec<(usize, &'static str)>,
}

impl CommutationReport {
    pub fn ok(&self) -> bool {
        self.d_failures.is_empty() && self.delta_failures.is_empty() && self.preservation_failures.is_empty()
    }
}

pub fn verify_commutation(ext: &Exterior, phi: &MultiVector) -> CommutationReport {
    let n = ext.n();
    let l = phi.degree;
    let sign = Q::from(if l % 2 == 1 { 1 } else { -1 }); // (-1)^{l+1}
    let mut rep = CommutationReport::default();
    for k in 0..=n {
        if k + l > n {
            break;
        }
        let lk = ext.wedge_matrix(phi, k);
        if k < n {
            let ld = ext.wedge_matrix(phi, k + 1).matmul(ext.d_matrix(k)).scaled(&sign);
            let dl = if k + l < n { ext.d_matrix(k + l).matmul(&lk) } else { SparseMatrix::zeros(ld.nrows, ld.ncols) };
            if !ld.add(&dl).is_zero() {
                rep.d_failures.push(k);
            }
        }
        if k > 0 {
            let ldel = ext.wedge_matrix(phi, k - 1).matmul(ext.delta_matrix(k)).scaled(&sign);
            let dell = ext.delta_matrix(k + l).matmul(&lk);
            if !ldel.add(&dell).is_zero() {
                rep.delta_failures.push(k);
            }
        }
        let target_h = ext.harmonic(k + l);
        if !target_h.contains_space(&ext.harmonic(k).map(&lk)) {
            rep.preservation_failures.push((k, "harmonic"));
        }
        if k > 0 {
            let exact = Subspace::image(ext.d_matrix(k - 1)).map(&lk);
            if !Subspace::image(ext.d_matrix(k + l - 1)).contains_space(&exact) {
                rep.preservation_failures.push((k, "d-exact"));
            }
        }
        if k < n {
            let coexact = Subspace::image(ext.delta_matrix(k + 1)).map(&lk);
            let target = if k + l < n { Subspace::image(ext.delta_matrix(k + l + 1)) } else { Subspace::zero(binomial(n, k + l)) };
            if !target.contains_space(&coexact) {
                rep.preservation_failures.push((k, "delta-exact"));
            }
        }
    }
    rep
}

/// The harmonic form of degree `n - 3`, a star-free stand-in for `*omega`
/// (the two are proportional since that harmonic space is a line).
pub fn star_omega(ext: &Exterior) -> Result<MultiVector, LieError> {
    let n = ext.n();
    let h = ext.harmonic(n - 3);
    if h.dim() != 1 {
        return Err(invariant(format!("harmonic Lambda^{} has dimension {}", n - 3, h.dim())));
    }
    Ok(ext.element(n - 3, &h.basis()[0]))
}

/// Results of the five relations derived from the two splittings.
#[derive(Clone, Debug)]
pub struct OmegaStarRelations {
    /// `Lambda^2_{(*omega)-} = d(Lambda^1)`.
    pub star_minus_2_is_dg: bool,
    /// `(dim Lambda^2_{omega-}, dim Lambda^2)`.
    pub omega_minus_2: (usize, usize),
    pub star_minus_3_dim: usize,
    /// `(dim d(g^perp), dim Lambda^3_{omega-}, contained)`.
    pub d_perp_in_omega_minus_3: (usize, usize, bool),
    /// Degrees `k` where `Lambda^{k-3} ^ omega` fails to lie in `Lambda^k_{omega+}`.
    pub wedge_omega_plus_failures: Vec<usize>,
}

impl OmegaStarRelations {
    pub fn ok(&self) -> bool {
        self.star_minus_2_is_dg
            && self.omega_minus_2.0 == self.omega_minus_2.1
            && self.star_minus_3_dim == 1
            && self.d_perp_in_omega_minus_3.2
            && self.wedge_omega_plus_failures.is_empty()
    }
}

pub fn omega_star_relations(ext: &Exterior, omega: &PhiSplit, star: &PhiSplit, g_perp: &Subspace) -> OmegaStarRelations {
    let n = ext.n();
    let dg = Subspace::image(ext.d_matrix(1));
    let d_perp = g_perp.map(ext.d_matrix(2));
    let mut failures = Vec::new();
    for k in 3..=n {
        let wedge = Subspace::image(&ext.wedge_matrix(&ext.omega.vector, k - 3));
        if !omega.plus[k].contains_space(&wedge) {
            failures.push(k);
        }
    }
    OmegaStarRelations {
        star_minus_2_is_dg: star.minus[2] == dg,
        omega_minus_2: (omega.minus[2].dim(), binomial(n, 2)),
        star_minus_3_dim: star.minus[3].dim(),
        d_perp_in_omega_minus_3: (d_perp.dim(), omega.minus[3].dim(), omega.minus[3].contains_space(&d_perp)),
        wedge_omega_plus_failures: failures,
    }
}

/// Action of the outer involution on the primitive generators.
#[derive(Clone, Debug)]
pub struct SigmaReport {
    pub det: Q,
    /// `(degree, sign)`; sign `None` if `sigma x` is not a multiple of `x`.
    pub signs: Vec<(usize, Option<Q>)>,
    pub involution: bool,
    pub commutes_with_laplacian: bool,
}

pub fn sigma_action_on_primitives(ext: &Exterior, gens: &[(usize, Vec<MultiVector>)]) -> Result<Option<SigmaReport>, LieError> {
    let Some(sigma) = outer_automorphism(&ext.g)? else { return Ok(None) };
    let n = ext.n();
    let det = ext.power_matrix(&sigma, n).get(0, 0);
    let involution = sigma.matmul(&sigma) == SparseMatrix::identity(n);
    let mut signs = Vec::new();
    let mut commutes = true;
    for (d, xs) in gens {
        let p = ext.power_matrix(&sigma, *d);
        let lap = ext.laplacian(*d).matrix;
        commutes &= p.matmul(&lap) == lap.matmul(&p);
        for x in xs {
            let c = x.coords();
            let img = p.mul_vec(&c);
            let m1 = SparseMatrix::from_columns(binomial(n, *d), &[img]);
            let m2 = SparseMatrix::from_columns(binomial(n, *d), &[c]);
            signs.push((*d, m1.ratio_to(&m2)));
        }
    }
    Ok(Some(SigmaReport { det, signs, involution, commutes_with_laplacian: commutes }))
}
