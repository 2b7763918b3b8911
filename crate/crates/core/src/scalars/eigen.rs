use super::{kernel_basis, Echelon, ScalarError, SparseMatrix, SparseVec, Subspace, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;
use std::fmt;

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Vec<Q>);

impl Poly {
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::new();
        for c in self.0.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    fn eval_f(&self, x: &Float) -> (Float, Float) {
        let prec = x.prec();
        let mut p = Float::with_val(prec, 0);
        let mut dp = Float::with_val(prec, 0);
        for c in self.0.iter().rev() {
            dp *= x;
            dp += &p;
            p *= x;
            p += Float::with_val(prec, c);
        }
        (p, dp)
    }

    /// Divides by `(t - r)`; the caller guarantees `r` is a root.
    fn deflate(&self, r: &Q) -> Poly {
        let d = self.degree();
        let mut out = vec![Q::new(); d];
        let mut carry = Q::new();
        for i in (1..=d).rev() {
            carry = Q::from(&carry * r) + &self.0[i];
            out[i - 1] = carry.clone();
        }
        Poly(out)
    }

    fn monic(mut self) -> Poly {
        if let Some(l) = self.0.last().cloned() {
            if l != 0 {
                for c in self.0.iter_mut() {
                    *c /= &l;
                }
            }
        }
        self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Minimal polynomial of `v` under `m` (monic), via the Krylov sequence.
pub fn minimal_polynomial(m: &SparseMatrix, v: &SparseVec) -> Poly {
    let n = m.nrows;
    let mut krylov = vec![v.clone()];
    let mut e = Echelon::new(n);
    e.insert(v.clone());
    loop {
        let next = m.mul_vec(krylov.last().unwrap());
        let independent = e.insert(next.clone());
        krylov.push(next);
        if !independent {
            break;
        }
    }
    let cols = SparseMatrix::from_columns(n, &krylov);
    let ker = kernel_basis(&cols);
    debug_assert_eq!(ker.dim(), 1);
    let k = &ker.basis()[0];
    Poly(k.to_dense(krylov.len())).monic()
}

/// Rational roots of `p`, assuming all its roots are real.
///
/// Roots are located numerically (Newton from above the Cauchy bound, which
/// converges monotonically for real-rooted polynomials), snapped to rationals
/// by continued fractions and confirmed exactly before deflation. Whatever
/// cannot be confirmed is returned as the leftover factor.
pub fn rational_roots(p: &Poly) -> (Vec<Q>, Poly) {
    const PREC: u32 = 320;
    let mut p = p.clone().monic();
    let mut roots = Vec::new();
    while p.degree() >= 1 {
        if p.0[0] == 0 {
            roots.push(Q::new());
            p = Poly(p.0[1..].to_vec());
            continue;
        }
        let bound = p.0[..p.degree()].iter().map(|c| Q::from(c.abs_ref())).max().unwrap() + Q::from(1);
        let mut x = Float::with_val(PREC, &bound);
        let mut converged = false;
        for _ in 0..2000 {
            let (v, dv) = p.eval_f(&x);
            if dv.is_zero() {
                break;
            }
            let step = Float::with_val(PREC, &v / &dv);
            x -= &step;
            let scale = Float::with_val(PREC, x.abs_ref()) + 1u32;
            if Float::with_val(PREC, step.abs_ref()) < scale * Float::with_val(PREC, Float::i_exp(1, -280)) {
                converged = true;
                break;
            }
        }
        let hit = converged.then(|| snap_rational(&x)).flatten().filter(|r| p.eval(r) == 0);
        match hit {
            Some(r) => {
                p = p.deflate(&r);
                roots.push(r);
            }
            None => break,
        }
    }
    roots.sort();
    (roots, p)
}

fn snap_rational(x: &Float) -> Option<Q> {
    let prec = x.prec();
    let exact = x.to_rational()?;
    // Continued-fraction convergents of x; return the first that matches x
    // to within 2^-200 with a modest denominator.
    let (mut h0, mut h1) = (rug::Integer::from(0), rug::Integer::from(1));
    let (mut k0, mut k1) = (rug::Integer::from(1), rug::Integer::from(0));
    let mut rest = exact.clone();
    let tol = Float::with_val(prec, Float::i_exp(1, -200));
    for _ in 0..200 {
        let a = rest.clone().floor();
        let a = a.numer().clone();
        let h2 = rug::Integer::from(&a * &h1) + &h0;
        let k2 = rug::Integer::from(&a * &k1) + &k0;
        let cand = Q::from((h2.clone(), k2.clone()));
        let diff = Float::with_val(prec, Q::from(&cand - &exact).abs());
        if diff < tol {
            return Some(cand);
        }
        if k2.significant_bits() > 64 {
            return None;
        }
        let frac = Q::from(&rest - &a);
        if frac == 0 {
            return Some(cand);
        }
        rest = frac.recip();
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    None
}

/// Eigen-decomposition of a diagonalizable matrix with rational spectrum.
///
/// Returns `(eigenvalue, eigenspace)` pairs in increasing eigenvalue order.
pub fn rational_eigenspaces(m: &SparseMatrix) -> Result<Vec<(Q, Subspace)>, ScalarError> {
    if m.nrows != m.ncols {
        return Err(ScalarError::NotSquare(m.nrows, m.ncols));
    }
    let n = m.nrows;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_ca51);
    let mut found: Vec<(Q, Subspace)> = Vec::new();
    for _attempt in 0..4 {
        let v = SparseVec::from_pairs((0..n as u32).map(|i| (i, Q::from(rng.gen_range(-3i64..=3)))));
        let v = if v.is_zero() { SparseVec::unit(0) } else { v };
        let poly = minimal_polynomial(m, &v);
        let (roots, rest) = rational_roots(&poly);
        if rest.degree() >= 1 {
            return Err(ScalarError::IrrationalFactor(rest.to_string()));
        }
        for r in roots {
            if found.iter().any(|(c, _)| *c == r) {
                continue;
            }
            let shifted = m.sub(&SparseMatrix::scalar(n, &r));
            found.push((r, kernel_basis(&shifted)));
        }
        let total: usize = found.iter().map(|(_, s)| s.dim()).sum();
        if total == n {
            found.sort_by(|a, b| a.0.cmp(&b.0));
            return Ok(found);
        }
    }
    let total = found.iter().map(|(_, s)| s.dim()).sum();
    Err(ScalarError::EigenDeficit { got: total, expected: n })
}
