mod common;

use common::{from_terms, Naive};
use lieform::exterior::json::{from_json, to_json};
use lieform::exterior::*;
use lieform::lie_core::build_algebra;
use lieform::scalars::float::from_q;
use lieform::scalars::{qi, Backend, SparseVec, Q};
use proptest::prelude::*;
use rug::Float;
use std::sync::{Arc, OnceLock};

fn su3() -> &'static Exterior {
    static E: OnceLock<Exterior> = OnceLock::new();
    E.get_or_init(|| Exterior::new(&build_algebra("su3").unwrap()).unwrap())
}

fn form(k: usize) -> impl Strategy<Value = MultiVector> {
    let n = 8;
    let masks = ext_basis(n, k).masks.clone();
    proptest::collection::vec((0..masks.len(), -4i64..=4), 0..6).prop_map(move |terms| {
        let name: Arc<str> = Arc::from("su3");
        let map = terms.into_iter().map(|(i, c)| (masks[i], Q::from(c))).fold(std::collections::BTreeMap::new(), |mut m, (k, c)| {
            *m.entry(k).or_insert_with(Q::new) += c;
            m
        });
        MultiVector::from_terms(&name, n, k, map)
    })
}

fn covector() -> impl Strategy<Value = SparseVec> {
    proptest::collection::vec(-3i64..=3, 8).prop_map(|v| SparseVec::from_dense(&v.into_iter().map(Q::from).collect::<Vec<_>>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wedge_is_associative(a in form(1), b in form(2), c in form(2)) {
        prop_assert_eq!(a.wedge(&b).unwrap().wedge(&c).unwrap(), a.wedge(&b.wedge(&c).unwrap()).unwrap());
    }

    #[test]
    fn wedge_is_graded_commutative(a in form(1), b in form(3), c in form(2)) {
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().scale(&qi(-1)));
        prop_assert_eq!(a.wedge(&c).unwrap(), c.wedge(&a).unwrap());
        let b1 = a.wedge(&a).unwrap();
        prop_assert!(b1.is_zero());
    }

    #[test]
    fn interior_is_an_antiderivation(v in covector(), a in form(2), b in form(3)) {
        let lhs = a.wedge(&b).unwrap().interior(&v);
        let rhs = a.interior(&v).wedge(&b).unwrap().add(&a.wedge(&b.interior(&v)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_squares_to_zero(a in form(3)) {
        let e = su3();
        prop_assert!(e.d(&e.d(&a)).is_zero());
        prop_assert!(e.delta(&e.delta(&a)).is_zero());
    }

    #[test]
    fn d_is_an_antiderivation(a in form(1), b in form(2)) {
        let e = su3();
        let lhs = e.d(&a.wedge(&b).unwrap());
        let rhs = e.d(&a).wedge(&b).unwrap().sub(&a.wedge(&e.d(&b)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn delta_is_adjoint_of_d(a in form(2), b in form(3)) {
        let e = su3();
        prop_assert_eq!(e.inner(&e.d(&a), &b), e.inner(&a, &e.delta(&b)));
    }

    #[test]
    fn d_matches_naive_oracle(a in form(3)) {
        let e = su3();
        let nv = naive();
        let got = from_terms(e.d(&a).sorted_terms());
        prop_assert_eq!(got, nv.d(&from_terms(a.sorted_terms())));
    }

    #[test]
    fn json_round_trip(a in form(4)) {
        let v = to_json(&a);
        prop_assert_eq!(from_json(&v).unwrap(), a);
    }
}

fn naive() -> &'static Naive {
    static N: OnceLock<Naive> = OnceLock::new();
    N.get_or_init(|| Naive::new(&su3().g))
}

#[test]
fn d_routes_agree() {
    for name in ["su2", "su3", "so5", "g2"] {
        let e = Exterior::new(&build_algebra(name).unwrap()).unwrap();
        let n = e.n();
        for k in 0..n.min(4) {
            assert_eq!(*e.d_matrix(k), e.d_matrix_contraction(k), "{name} k={k}");
        }
        // delta from the bracket formula is the Gram adjoint of d
        for k in 1..(n - 1).min(4) {
            let adj = e.gram(k + 1).adjoint(e.d_matrix(k), e.gram(k)).unwrap();
            assert_eq!(adj, *e.delta_matrix(k + 1), "{name} k={k}");
        }
    }
}

#[test]
fn omega_is_harmonic_and_rho_sign_is_negative() {
    for name in ["su2", "su3", "so5", "g2"] {
        let e = Exterior::new(&build_algebra(name).unwrap()).unwrap();
        assert!(e.d(&e.omega.vector).is_zero(), "{name}");
        assert!(e.delta(&e.omega.vector).is_zero(), "{name}");
        assert_eq!(e.rho_sign(), -1, "{name}");
        assert_eq!(e.omega.vector.terms.len(), naive_omega_len(&e));
    }
}

fn naive_omega_len(e: &Exterior) -> usize {
    Naive::new(&e.g).omega.len()
}

#[test]
fn betti_numbers_su3() {
    let e = su3();
    let b: Vec<usize> = (0..=8).map(|k| e.betti(k)).collect();
    assert_eq!(b, vec![1, 0, 0, 1, 0, 1, 0, 0, 1]);
    for k in 0..=8 {
        assert_eq!(e.harmonic(k).dim(), b[k]);
    }
}

#[test]
fn hodge_star_pairing_and_square() {
    let e = su3();
    let hs = HodgeStar::new(e, Backend::float(160).unwrap()).unwrap();
    let tol = Float::with_val(160, 1e-40);
    let minus_one = Float::with_val(160, -1);
    let a = e.omega.vector.clone();
    let b = e.d(&e.basis_vector(0).wedge(&e.basis_vector(3)).unwrap());
    // a ^ *b = <a, b> vol
    let lhs = FloatMultiVector::from_exact(&a, 160).wedge(&hs.star_exact(&b));
    let rhs = hs.volume().scale(&from_q(160, &e.inner(&a, &b)));
    assert!(lhs.axpy(&minus_one, &rhs).max_abs() < tol);
    // ** = (-1)^{k(n-k)} on a definite metric
    let ss = hs.star(&hs.star_exact(&b));
    let back = FloatMultiVector::from_exact(&b, 160).scale(&minus_one);
    assert!(ss.axpy(&minus_one, &back).max_abs() < tol);
    assert!(matches!(hodge_star(e, &a, Backend::Exact), Err(ExtError::ExactStar)));
}

#[test]
fn json_rejects_malformed_input() {
    let bad = [
        serde_json::json!({"algebra": "R3", "degree": 2, "terms": [{"idx": [2, 1], "num": 1}]}),
        serde_json::json!({"algebra": "R3", "degree": 2, "terms": [{"idx": [1, 4], "num": 1}]}),
        serde_json::json!({"algebra": "R3", "degree": 2, "terms": [{"idx": [1, 2], "val": "0.5"}]}),
        serde_json::json!({"algebra": "R3", "degree": 2, "terms": [{"idx": [1, 2], "num": 1, "den": 0}]}),
        serde_json::json!({"algebra": "unknown", "degree": 1, "terms": []}),
        serde_json::json!({"algebra": "R3", "terms": []}),
    ];
    for v in bad {
        assert!(from_json(&v).is_err(), "{v}");
    }
    let ok = serde_json::json!({"algebra": "su3", "degree": 1, "terms": [{"idx": [8], "num": 2, "den": 4}]});
    let m = from_json(&ok).unwrap();
    assert_eq!(m.n, 8);
    assert_eq!(m.coeff(&[7]), Q::from((1, 2)));
}

#[test]
fn wide_algebras_use_full_bitmask() {
    let cfg = lieform::lie_core::BuildConfig { guardrail: 100 };
    let g = lieform::lie_core::build_algebra_with("so9", &cfg).unwrap();
    let e = Exterior::new(&g).unwrap();
    assert_eq!(e.n(), 36);
    assert!(e.d_matrix(1).matmul(e.d_matrix(0)).is_zero());
    // indices above 32 survive the wedge
    let a = e.basis_vector(34).wedge(&e.basis_vector(35)).unwrap();
    assert_eq!(a.sorted_terms()[0].0, vec![35, 36]);
    assert!(e.d(&e.omega.vector).is_zero());
    let g = lieform::lie_core::build_algebra_with("su9", &cfg).unwrap();
    assert!(matches!(Exterior::new(&g), Err(lieform::lie_core::LieError::Guardrail { dim: 80, cap: 64, .. })));
}
