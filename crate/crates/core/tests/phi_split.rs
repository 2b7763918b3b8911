mod common;

use common::{from_terms, wedge, Naive};
use lieform::exterior::{binomial, Exterior};
use lieform::lie_core::build_algebra;
use lieform::phi_split::*;
use lieform::scalars::{q, qi, Backend, Q};
use std::sync::OnceLock;

fn su3() -> &'static Exterior {
    static E: OnceLock<Exterior> = OnceLock::new();
    E.get_or_init(|| Exterior::new(&build_algebra("su3").unwrap()).unwrap())
}

#[test]
fn su3_tables_match_reference() {
    let e = su3();
    let t = split_tables(e).unwrap();
    let golden = golden_su3();
    assert_eq!(t.omega.minus, golden.rows["omega_minus"]);
    assert_eq!(t.omega.plus, golden.rows["omega_plus"]);
    assert_eq!(t.star.minus, golden.rows["star_omega_minus"]);
    assert_eq!(t.star.plus, golden.rows["star_omega_plus"]);
    assert!(t.golden.unwrap().iter().all(|(_, ok)| *ok));
    for k in 0..=8 {
        assert_eq!(t.omega.minus[k] + t.omega.plus[k], binomial(8, k));
    }
}

#[test]
fn su3_four_way_split() {
    let e = su3();
    let fw = split_tables(e).unwrap().four_way.unwrap();
    assert_eq!(fw.parts.to_vec(), golden_su3().lambda4_four_way);
    assert_eq!(fw.total_rank, 70);
    assert_eq!((fw.lambda3_27_dim, fw.lambda5_27_dim), (27, 27));
    // highest weight (2,2): (a^2+b^2+ab+3a+3b)/9
    let rd = e.g.root_datum.as_ref().unwrap();
    assert_eq!(rd.weyl_dim(&[2, 2]).unwrap(), 27);
    assert_eq!(fw.casimir_27, Some(rd.casimir_value(&[2, 2]).to_string()));
    assert_eq!(fw.casimir_27.as_deref(), Some("8/3"));
    assert!(fw.delta_minus_contained);
    assert!(fw.delta_closed_plus_is_27);
    assert!(fw.omega_minus_3_direct);
}

#[test]
fn splits_commute_with_d_and_delta() {
    let e = su3();
    assert!(verify_commutation(e, &e.omega.vector).ok());
    let x5 = star_omega(e).unwrap();
    assert_eq!(x5.degree, 5);
    assert!(e.d(&x5).is_zero() && e.delta(&x5).is_zero());
    assert!(verify_commutation(e, &x5).ok());
    let so = phi_split(e, &e.omega.vector).unwrap();
    let ss = phi_split(e, &x5).unwrap();
    let rel = omega_star_relations(e, &so, &ss, &lieform::scalars::kernel_basis(e.delta_matrix(2)));
    assert!(rel.ok(), "{rel:?}");
}

#[test]
fn invariant_forms_and_primitives() {
    let e = su3();
    let inv = invariant_forms(e, None);
    assert!(inv.complete());
    assert_eq!(inv.poincare().unwrap(), vec![1, 0, 0, 1, 0, 1, 0, 0, 1]);
    assert_eq!(inv.primitive_degrees, vec![3, 5]);
    // truncated sweep fills the tail by duality
    let t = invariant_forms(e, Some(4));
    assert_eq!(t.poincare(), inv.poincare());
    assert_eq!(t.by_duality, vec![5, 6, 7, 8]);
    let g = build_algebra("g2").unwrap();
    let eg = Exterior::new(&g).unwrap();
    assert_eq!(invariant_forms(&eg, Some(5)).primitive_degrees, vec![3]);
}

#[test]
fn cartan_form_is_multisymplectic() {
    let e = su3();
    assert!(multisymplectic_check(&e.omega.vector).unwrap());
    let deg = e.basis_vector(0).wedge(&e.basis_vector(1)).unwrap().wedge(&e.basis_vector(2)).unwrap();
    assert!(!multisymplectic_check(&deg).unwrap());
    assert!(multisymplectic_check(&e.zero(3)).is_err());
}

#[test]
fn sigma_on_su3_primitives() {
    let e = su3();
    let inv = invariant_forms(e, None);
    let gens = primitive_generators(e, &inv).unwrap();
    let r = sigma_action_on_primitives(e, &gens).unwrap().unwrap();
    // conjugation X -> -X^T sends tr(X^k) to (-1)^k tr(X^k); x_{2k-1} <-> k
    assert_eq!(r.signs, vec![(3, Some(qi(1))), (5, Some(qi(-1)))]);
    // fixes so(3), negates the other 5 directions
    assert_eq!(r.det, qi(-1));
    assert!(r.involution && r.commutes_with_laplacian);
}

/// `<a ^ phi, b ^ phi> = (-1)^l c <a, b>` on `Lambda^{n-l-1}_{phi-}`.
fn xi_oracle(e: &Exterior, split: &PhiSplit) -> Q {
    let nv = Naive::new(&e.g);
    let l = split.l;
    let k = e.n() - l - 1;
    let phi = from_terms(split.phi.sorted_terms());
    let dom: Vec<_> = split.minus[k].basis().iter().map(|b| from_terms(e.element(k, b).sorted_terms())).collect();
    let sign = if l % 2 == 1 { qi(-1) } else { qi(1) };
    let c = (nv.inner(&wedge(&dom[0], &phi), &wedge(&dom[0], &phi)) / nv.inner(&dom[0], &dom[0])) * &sign;
    for a in &dom {
        for b in &dom {
            let lhs = nv.inner(&wedge(a, &phi), &wedge(b, &phi));
            assert_eq!(lhs, Q::from(&c * &sign) * nv.inner(a, b));
        }
    }
    c
}

#[test]
fn xi_constant_su3() {
    let e = su3();
    let split = phi_split(e, &e.omega.vector).unwrap();
    let exact = xi_oracle(e, &split);
    assert_eq!(exact, q(-5, 6));
    let r = xi_constant(e, &split, Backend::float(128).unwrap()).unwrap().unwrap();
    assert!(r.passes(), "{r:?}");
    assert_eq!(r.domain_dim, 8);
    let diff = (r.c.to_f64() - exact.to_f64()).abs();
    assert!(diff < 1e-15, "{}", r.c_decimal());
    let full = rug::Float::with_val(128, &r.c - &lieform::scalars::float::from_q(128, &exact)).abs();
    assert!(full < 1e-30, "{}", r.c_decimal());
}

#[test]
fn xi_constant_so5() {
    let e = Exterior::new(&build_algebra("so5").unwrap()).unwrap();
    let split = phi_split(&e, &e.omega.vector).unwrap();
    assert_eq!(xi_oracle(&e, &split), q(-7, 6));
    let r = xi_constant(&e, &split, Backend::float(128).unwrap()).unwrap().unwrap();
    assert!(r.passes());
    assert!((r.c.to_f64() + 7.0 / 6.0).abs() < 1e-15);
}

#[test]
fn xi_needs_float_backend() {
    let e = su3();
    let split = phi_split(e, &e.omega.vector).unwrap();
    assert!(xi_constant(e, &split, Backend::Exact).is_err());
}
