use lieform::exterior::binomial;
use lieform::lie_core::oracle::matrix_oracle;
use lieform::lie_core::*;
use lieform::scalars::{kernel_basis, qi, rational_eigenspaces, SparseMatrix, SparseVec, Q};
use proptest::prelude::*;
use std::sync::OnceLock;

const NAMES: [&str; 7] = ["su2", "su3", "su4", "so5", "so7", "sp2", "g2"];

fn su3() -> &'static LieAlgebraData {
    static G: OnceLock<LieAlgebraData> = OnceLock::new();
    G.get_or_init(|| build_algebra("su3").unwrap())
}

#[test]
fn builds_supported_algebras() {
    let dims = [3, 8, 15, 10, 21, 10, 14];
    for (name, dim) in NAMES.iter().zip(dims) {
        let g = build_algebra(name).unwrap();
        assert_eq!(g.dim(), dim, "{name}");
        assert_eq!(g.jacobi_violation(), None, "{name}");
        assert_eq!(g.centroid_dim(), 1, "{name}");
        assert_eq!(g.labels.len(), dim);
    }
}

#[test]
fn casimir_is_one_on_adjoint() {
    for name in NAMES {
        let g = build_algebra(name).unwrap();
        let c = casimir_on(&g, RepSpace::Adjoint).unwrap();
        assert_eq!(c, SparseMatrix::identity(g.dim()), "{name}");
    }
}

#[test]
fn matrix_oracle_agrees() {
    for name in ["su2", "su3", "su4", "so5", "so7", "sp2"] {
        let a = build_algebra(name).unwrap();
        let b = matrix_oracle(name).unwrap();
        assert_eq!(a.dim(), b.dim(), "{name}");
        assert_eq!(casimir_on(&b, RepSpace::Adjoint).unwrap(), SparseMatrix::identity(b.dim()), "{name}");
        // same Casimir spectrum on Lambda^2 in both bases
        let sa: Vec<(Q, usize)> = rational_eigenspaces(&casimir_on(&a, RepSpace::Exterior(2)).unwrap())
            .unwrap()
            .into_iter()
            .map(|(v, s)| (v, s.dim()))
            .collect();
        let sb: Vec<(Q, usize)> = rational_eigenspaces(&casimir_on(&b, RepSpace::Exterior(2)).unwrap())
            .unwrap()
            .into_iter()
            .map(|(v, s)| (v, s.dim()))
            .collect();
        assert_eq!(sa, sb, "{name}");
    }
}

#[test]
fn lambda2_casimir_matches_weights() {
    // Lambda^2 = g + g^perp; the perp part carries the weights 2 theta - alpha_i
    for name in ["su3", "so5", "g2"] {
        let g = build_algebra(name).unwrap();
        let rd = g.root_datum.clone().unwrap();
        let spec = rational_eigenspaces(&casimir_on(&g, RepSpace::Exterior(2)).unwrap()).unwrap();
        let mut expected: Vec<(Q, usize)> = vec![(qi(1), g.dim())];
        for w in rd.perp_highest_weights() {
            let v = rd.casimir_value(&w);
            let d = rd.weyl_dim(&w).unwrap() as usize;
            match expected.iter_mut().find(|(x, _)| *x == v) {
                Some(e) => e.1 += d,
                None => expected.push((v, d)),
            }
        }
        expected.sort();
        let got: Vec<(Q, usize)> = spec.into_iter().map(|(v, s)| (v, s.dim())).collect();
        assert_eq!(got, expected, "{name}");
        assert_eq!(got.iter().map(|x| x.1).sum::<usize>(), binomial(g.dim(), 2));
    }
}

#[test]
fn weyl_dimensions() {
    let rd = RootDatum::new(CartanType::A(2)).unwrap();
    assert_eq!(rd.weyl_dim(&[1, 0]).unwrap(), 3);
    assert_eq!(rd.weyl_dim(&[1, 1]).unwrap(), 8);
    assert_eq!(rd.weyl_dim(&[3, 0]).unwrap(), 10);
    assert_eq!(rd.weyl_dim(&[4, 1]).unwrap(), 35);
    assert!(matches!(rd.weyl_dim(&[-1, 0]), Err(LieError::NotDominant(_))));
    let g2 = RootDatum::new(CartanType::G2).unwrap();
    let mut f: Vec<u64> = (0..2).map(|i| g2.weyl_dim(&g2.fundamental(i)).unwrap()).collect();
    f.sort();
    assert_eq!(f, vec![7, 14]);
    let b2 = RootDatum::new(CartanType::B(2)).unwrap();
    let mut f: Vec<u64> = (0..2).map(|i| b2.weyl_dim(&b2.fundamental(i)).unwrap()).collect();
    f.sort();
    assert_eq!(f, vec![4, 5]);
}

#[test]
fn exponents_and_poincare_degrees() {
    let cases: [(CartanType, &[usize]); 6] = [
        (CartanType::A(1), &[1]),
        (CartanType::A(2), &[1, 2]),
        (CartanType::A(3), &[1, 2, 3]),
        (CartanType::B(2), &[1, 3]),
        (CartanType::B(3), &[1, 3, 5]),
        (CartanType::G2, &[1, 5]),
    ];
    for (ty, e) in cases {
        let rd = RootDatum::new(ty).unwrap();
        assert_eq!(rd.exponents(), e, "{ty}");
        // sum of (2e+1) is dim g
        assert_eq!(e.iter().map(|x| 2 * x + 1).sum::<usize>(), type_dim(ty));
    }
}

#[test]
fn outer_automorphism_a_type() {
    for name in ["su2", "su3", "su4"] {
        let g = build_algebra(name).unwrap();
        let s = outer_automorphism(&g).unwrap().expect("complex conjugation");
        check_automorphism(&g, &s).unwrap();
        assert_eq!(s.matmul(&s), SparseMatrix::identity(g.dim()), "{name}");
    }
    assert!(outer_automorphism(&build_algebra("g2").unwrap()).unwrap().is_none());
}

#[test]
fn parse_and_guardrail_errors() {
    for bad in ["so4", "su1", "e8", "xx", "so", ""] {
        assert!(matches!(build_algebra(bad), Err(LieError::Unsupported(_))), "{bad}");
    }
    assert_eq!(parse_name("so3").unwrap(), CartanType::A(1));
    assert_eq!(parse_name("sp1").unwrap(), CartanType::A(1));
    assert_eq!(parse_name("SU3").unwrap(), CartanType::A(2));
    assert!(matches!(build_algebra("su9"), Err(LieError::Guardrail { dim: 80, cap: 28, .. })));
    let cfg = BuildConfig { guardrail: 7 };
    assert!(matches!(build_algebra_with("su3", &cfg), Err(LieError::Guardrail { dim: 8, .. })));
}

#[test]
fn rejects_broken_tables() {
    let g = su3();
    let n = g.dim();
    let mut table: Vec<Vec<SparseVec>> = (0..n).map(|i| (0..n).map(|j| g.bracket_basis(i, j).clone()).collect()).collect();
    let (i, j) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| !table[i][j].is_zero()).unwrap();
    table[i][j] = table[i][j].scaled(&qi(2));
    table[j][i] = table[j][i].scaled(&qi(2));
    assert!(LieAlgebraData::from_table("bad", vec![], table.clone(), None, false).is_err());
    table[j][i] = SparseVec::new();
    assert!(matches!(LieAlgebraData::from_table("bad", vec![], table, None, false), Err(LieError::Invariant(_))));
}

#[test]
fn ad_is_a_derivation_of_the_bracket() {
    let g = su3();
    let n = g.dim();
    let ker = kernel_basis(&(0..n).fold(SparseMatrix::zeros(0, n), |m, i| m.vstack(&g.ad_matrix(i))));
    assert_eq!(ker.dim(), 0, "centre is trivial");
}

fn vec8() -> impl Strategy<Value = SparseVec> {
    proptest::collection::vec(-3i64..=3, 8).prop_map(|v| SparseVec::from_dense(&v.into_iter().map(Q::from).collect::<Vec<_>>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_antisymmetric_and_jacobi(x in vec8(), y in vec8(), z in vec8()) {
        let g = su3();
        prop_assert_eq!(g.bracket(&x, &y), g.bracket(&y, &x).neg());
        let j = g.bracket(&x, &g.bracket(&y, &z))
            .add(&g.bracket(&y, &g.bracket(&z, &x)))
            .add(&g.bracket(&z, &g.bracket(&x, &y)));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn metric_is_ad_invariant(x in vec8(), y in vec8(), z in vec8()) {
        let g = su3();
        let s = g.inner(&g.bracket(&x, &y), &z) + g.inner(&y, &g.bracket(&x, &z));
        prop_assert_eq!(s, Q::new());
    }
}
