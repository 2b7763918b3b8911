use lieform::scalars::float::{from_q, FloatMatrix, KERNEL_THRESHOLD};
use lieform::scalars::*;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = SparseMatrix> {
    proptest::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
        let d: Vec<Vec<Q>> = v.chunks(cols).map(|r| r.iter().map(|&x| Q::from(x)).collect()).collect();
        SparseMatrix::from_dense(&d)
    })
}

fn sparse_vec(n: usize) -> impl Strategy<Value = SparseVec> {
    proptest::collection::vec(-5i64..=5, n).prop_map(|v| SparseVec::from_dense(&v.into_iter().map(Q::from).collect::<Vec<_>>()))
}

proptest! {
    #[test]
    fn rank_nullity(m in matrix(5, 7)) {
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.dim(), 7);
        for v in k.basis() {
            prop_assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn solve_reproduces_rhs(m in matrix(4, 6), x in sparse_vec(6)) {
        let b = m.mul_vec(&x);
        let y = solve(&m, &b).expect("consistent system");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn sum_intersection_dimensions(a in matrix(6, 3), b in matrix(6, 3)) {
        let sa = Subspace::image(&a);
        let sb = Subspace::image(&b);
        prop_assert_eq!(sa.sum(&sb).dim() + sa.intersect(&sb).dim(), sa.dim() + sb.dim());
        prop_assert!(sa.sum(&sb).contains_space(&sa));
        prop_assert!(sa.contains_space(&sa.intersect(&sb)));
    }

    #[test]
    fn orthogonal_complement_is_complementary(a in matrix(6, 2)) {
        let g = Gram::identity(6);
        let s = Subspace::image(&a);
        let c = s.orthogonal_complement(&g);
        prop_assert_eq!(s.dim() + c.dim(), 6);
        prop_assert!(s.is_orthogonal_to(&c, &g));
    }

    #[test]
    fn coords_round_trip(a in matrix(5, 3), c in sparse_vec(3)) {
        let s = Subspace::image(&a);
        let v = a.mul_vec(&c);
        let coords = s.coords(&v).expect("in span");
        prop_assert_eq!(s.combine(&SparseVec::from_dense(&coords)), v);
    }

    #[test]
    fn gram_adjoint_pairing(m in matrix(3, 4), x in sparse_vec(4), y in sparse_vec(3)) {
        // <m x, y>_B = <x, m* y>_A
        let a = Gram::new(SparseMatrix::from_dense(&diag(&[1, 2, 3, 4]))).unwrap();
        let b = Gram::new(SparseMatrix::from_dense(&diag(&[5, 1, 2]))).unwrap();
        let adj = b.adjoint(&m, &a).unwrap();
        prop_assert_eq!(b.inner(&m.mul_vec(&x), &y), a.inner(&x, &adj.mul_vec(&y)));
    }
}

fn diag(d: &[i64]) -> Vec<Vec<Q>> {
    (0..d.len()).map(|i| (0..d.len()).map(|j| Q::from(if i == j { d[i] } else { 0 })).collect()).collect()
}

#[test]
fn eigenspaces_of_conjugated_diagonal() {
    // P diag(1, 1, -2, 1/3) P^-1 with a unimodular P
    let p = SparseMatrix::from_dense(&[
        vec![qi(1), qi(1), qi(0), qi(0)],
        vec![qi(0), qi(1), qi(1), qi(0)],
        vec![qi(0), qi(0), qi(1), qi(1)],
        vec![qi(0), qi(0), qi(0), qi(1)],
    ]);
    let pinv = SparseMatrix::from_dense(&dense_inverse(&p.to_dense()).unwrap());
    let d = SparseMatrix::from_dense(&[
        vec![qi(1), qi(0), qi(0), qi(0)],
        vec![qi(0), qi(1), qi(0), qi(0)],
        vec![qi(0), qi(0), qi(-2), qi(0)],
        vec![qi(0), qi(0), qi(0), q(1, 3)],
    ]);
    let m = p.matmul(&d).matmul(&pinv);
    let es = rational_eigenspaces(&m).unwrap();
    let got: Vec<(Q, usize)> = es.iter().map(|(v, s)| (v.clone(), s.dim())).collect();
    assert_eq!(got, vec![(qi(-2), 1), (q(1, 3), 1), (qi(1), 2)]);
    for (v, s) in &es {
        for b in s.basis() {
            assert_eq!(m.mul_vec(b), b.scaled(v));
        }
    }
}

#[test]
fn irrational_spectrum_is_reported() {
    let m = SparseMatrix::from_dense(&[vec![qi(0), qi(2)], vec![qi(1), qi(0)]]);
    assert!(matches!(rational_eigenspaces(&m), Err(ScalarError::IrrationalFactor(_))));
}

#[test]
fn non_positive_gram_is_rejected() {
    let m = SparseMatrix::from_dense(&[vec![qi(1), qi(2)], vec![qi(2), qi(1)]]);
    assert!(matches!(Gram::new(m), Err(ScalarError::NotPositiveDefinite { .. })));
    let m = SparseMatrix::from_dense(&[vec![qi(1), qi(2)], vec![qi(0), qi(1)]]);
    assert!(matches!(Gram::new(m), Err(ScalarError::NotSymmetric(..))));
}

#[test]
fn precision_floor() {
    assert!(Backend::float(64).is_err());
    assert!(Backend::float(128).is_ok());
}

#[test]
fn float_kernel_matches_exact_kernel() {
    let d: Vec<Vec<Q>> = vec![
        vec![qi(1), qi(2), qi(3), qi(4)],
        vec![qi(2), qi(4), qi(6), qi(8)],
        vec![q(1, 3), qi(0), qi(1), qi(-1)],
    ];
    let m = SparseMatrix::from_dense(&d);
    let exact = kernel_basis(&m);
    let f = FloatMatrix::from_sparse(128, &m);
    let k = f.kernel().unwrap();
    assert_eq!(k.len(), exact.dim());
    for v in &k {
        // m v ~ 0
        for row in &d {
            let mut acc = rug::Float::with_val(128, 0);
            for (a, x) in row.iter().zip(v) {
                acc += from_q(128, a) * x;
            }
            assert!(acc.abs() < KERNEL_THRESHOLD);
        }
    }
}
