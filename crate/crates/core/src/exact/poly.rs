use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use super::{abs_fmt, Rational, TruncatedSeries};
use crate::{Error, Result};

/// Sparse polynomial in `x, y` with rational coefficients; the key `(i, j)`
/// stands for `x^i y^j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    /// Multiplicity at the origin: lowest total degree of a nonzero term.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).min()
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((i, j), _)| i + j == d)
                .map(|(k, c)| (*k, c.clone())),
        )
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), c) in &other.terms {
            out.add_term(*i, *j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), c) in &other.terms {
            out.add_term(*i, *j, -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, -c)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, a)| (*k, a * c)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((i1, j1), a) in &self.terms {
            for ((i2, j2), b) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, a * b);
            }
        }
        out
    }

    pub fn mul_monomial(&self, i: u32, j: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((a + i, b + j), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(Rational::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn deriv_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|((i, j), c)| ((i - 1, *j), c * Rational::from_integer((*i).into()))),
        )
    }

    pub fn deriv_y(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|((i, j), c)| ((*i, j - 1), c * Rational::from_integer((*j).into()))),
        )
    }

    /// Substitutes `x = sx(t)`, `y = sy(t)`.
    pub fn eval_series(&self, sx: &TruncatedSeries, sy: &TruncatedSeries) -> TruncatedSeries {
        let max_i = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let max_j = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let xp = powers(sx, max_i);
        let yp = powers(sy, max_j);
        let mut acc: Option<TruncatedSeries> = None;
        for ((i, j), c) in &self.terms {
            let term = xp[*i as usize].mul(&yp[*j as usize]).scale(c);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        acc.unwrap_or_else(|| TruncatedSeries::zero(sx.precision().min(sy.precision())))
    }

    /// Evaluation at a rational point.
    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut s = Rational::zero();
        for ((i, j), c) in &self.terms {
            s += c * pow_r(x, *i) * pow_r(y, *j);
        }
        s
    }

    /// Leading term for the graded order: highest total degree, ties broken
    /// by the larger power of `x`.
    fn leading(&self) -> Option<((u32, u32), &Rational)> {
        self.terms
            .iter()
            .max_by_key(|((i, j), _)| (i + j, *i))
            .map(|(k, c)| (*k, c))
    }

    /// Multivariate division by a single divisor. Returns `(quotient,
    /// remainder)`; the remainder is zero exactly when the divisor divides.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let ((li, lj), lc) = divisor
            .leading()
            .ok_or_else(|| Error::math("division by the zero polynomial"))?;
        let lc = lc.clone();
        let mut rem = Self::zero();
        let mut quo = Self::zero();
        let mut p = self.clone();
        while let Some(((i, j), c)) = p.leading().map(|(k, c)| (k, c.clone())) {
            if i >= li && j >= lj {
                let q = Self::monomial(&c / &lc, i - li, j - lj);
                p = p.sub(&q.mul(divisor));
                quo = quo.add(&q);
            } else {
                rem.add_term(i, j, c.clone());
                p.terms.remove(&(i, j));
            }
        }
        Ok((quo, rem))
    }

    /// Exact quotient, failing if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::math("polynomial division is not exact"))
        }
    }
}

fn pow_r(x: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..n {
        acc *= x;
    }
    acc
}

/// `s^0, s^1, ..., s^n`.
pub(crate) fn powers(s: &TruncatedSeries, n: u32) -> Vec<TruncatedSeries> {
    let unit_prec = s.precision().max(1) * (n as usize + 1) + 1;
    let mut out = vec![TruncatedSeries::constant(Rational::one(), unit_prec)];
    for k in 1..=n as usize {
        let next = if k == 1 { s.clone() } else { out[k - 1].mul(s) };
        out.push(next);
    }
    out
}

impl fmt::Display for BivariatePoly {
    /// Terms in descending graded order, in the input grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|(i, j)| (std::cmp::Reverse(i + j), std::cmp::Reverse(*i)));
        for (n, k) in keys.into_iter().enumerate() {
            let c = &self.terms[k];
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mag = abs_fmt(c);
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" || *k == (0, 0) {
                factors.push(mag);
            }
            for (v, e) in [("x", k.0), ("y", k.1)] {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    e => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
