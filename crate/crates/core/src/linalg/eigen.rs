//! Minimal polynomials and rational spectra.

use super::matrix::Matrix;
use crate::scalar::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Monic minimal polynomial, coefficients from the constant term up.
pub fn minimal_polynomial(a: &Matrix<Rational>) -> Vec<Rational> {
    let n = a.rows();
    let vec_of = |m: &Matrix<Rational>| -> Vec<Rational> { m.to_rows().into_iter().flatten().collect() };
    let mut powers = vec![vec_of(&Matrix::identity(n))];
    let mut cur = Matrix::identity(n);
    loop {
        cur = cur.mul(a);
        let v = vec_of(&cur);
        let cols = Matrix::from_cols(n * n, &powers);
        if let Some(x) = cols.solve(&v) {
            // A^k = sum x_i A^i  =>  p(t) = t^k - sum x_i t^i
            let mut p: Vec<Rational> = x.into_iter().map(|c| -c).collect();
            p.push(Rational::one());
            return p;
        }
        powers.push(v);
    }
}

fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Distinct rational roots of `p` (coefficients from the constant term up).
pub fn rational_roots(p: &[Rational]) -> Option<Vec<Rational>> {
    let mut p: Vec<Rational> = p.to_vec();
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    if p.len() <= 1 {
        return Some(vec![]);
    }
    let mut roots = Vec::new();
    if p[0].is_zero() {
        roots.push(Rational::zero());
        while p[0].is_zero() {
            p.remove(0);
        }
    }
    if p.len() == 1 {
        return Some(roots);
    }
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let num = divisors(&ints[0])?;
    let den = divisors(ints.last().unwrap())?;
    for a in &num {
        for b in &den {
            for s in [1, -1] {
                let x = Rational::new(a * BigInt::from(s), b.clone());
                if !roots.contains(&x) && eval(&p, &x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

/// Distinct eigenvalues when `a` is diagonalizable over Q, else `None`.
/// Diagonalizable over Q means the minimal polynomial is squarefree and splits.
pub fn rational_spectrum(a: &Matrix<Rational>) -> Option<Vec<Rational>> {
    let p = minimal_polynomial(a);
    let roots = rational_roots(&p)?;
    (roots.len() == p.len() - 1).then_some(roots)
}
