use num_traits::Zero;

use super::{BivariatePoly, Rational, TruncatedSeries};
use crate::{Error, Result};

/// Resultant in `t` of two polynomials whose coefficients (ascending powers of
/// `t`) are bivariate polynomials, via a fraction-free Bareiss elimination of
/// the Sylvester matrix.
pub fn sylvester_resultant(p: &[BivariatePoly], q: &[BivariatePoly]) -> Result<BivariatePoly> {
    let p = trim(p);
    let q = trim(q);
    if p.is_empty() || q.is_empty() {
        return Err(Error::invalid("resultant of a zero polynomial"));
    }
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    if size == 0 {
        return Ok(BivariatePoly::constant(Rational::from_integer(1.into())));
    }
    let mut a = vec![vec![BivariatePoly::zero(); size]; size];
    for r in 0..n {
        for (k, c) in p.iter().rev().enumerate() {
            a[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in q.iter().rev().enumerate() {
            a[n + r][r + k] = c.clone();
        }
    }
    bareiss_det(a)
}

fn trim(p: &[BivariatePoly]) -> Vec<BivariatePoly> {
    let mut v = p.to_vec();
    while v.last().is_some_and(BivariatePoly::is_zero) {
        v.pop();
    }
    v
}

fn bareiss_det(mut a: Vec<Vec<BivariatePoly>>) -> Result<BivariatePoly> {
    let n = a.len();
    let mut sign_flip = false;
    let mut prev = BivariatePoly::constant(Rational::from_integer(1.into()));
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return Ok(BivariatePoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = if num.is_zero() { num } else { num.div_exact(&prev)? };
            }
            a[i][k] = BivariatePoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign_flip { det.neg() } else { det })
}

/// Implicit equation of a polynomial parametrization `x = X(t), y = Y(t)`,
/// as `Res_t(x - X(t), y - Y(t))`. The result is a power of the reduced
/// equation when the parametrization is not injective.
pub fn implicitize(x: &TruncatedSeries, y: &TruncatedSeries) -> Result<BivariatePoly> {
    let to_t_poly = |s: &TruncatedSeries, var: BivariatePoly| {
        let last = s.terms().map(|(k, _)| k).max().unwrap_or(0);
        let mut out = vec![BivariatePoly::zero(); last + 1];
        for (k, c) in s.terms() {
            out[k] = BivariatePoly::constant(-c.clone());
        }
        out[0] = out[0].add(&var);
        out
    };
    if x.terms().all(|(_, c)| c.is_zero()) || y.terms().all(|(_, c)| c.is_zero()) {
        return Err(Error::invalid("implicitization needs non-constant coordinates"));
    }
    sylvester_resultant(&to_t_poly(x, BivariatePoly::x()), &to_t_poly(y, BivariatePoly::y()))
}
