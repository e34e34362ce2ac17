use num_traits::{One, Zero};
use std::fmt;

use super::{fmt_rational, int, Rational};
use crate::{Error, Result};

/// A power series in `t` known modulo `t^precision`.
///
/// Coefficients at exponents `>= precision` are unknown. Operations propagate
/// the precision they can guarantee, and any query that depends on an unknown
/// coefficient fails with [`Error::Truncation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series from coefficients of `t^0, t^1, ...`, known modulo
    /// `t^precision`. Missing coefficients below the precision are zero and
    /// extra ones are dropped.
    pub fn new(mut coeffs: Vec<Rational>, precision: usize) -> Self {
        coeffs.resize(precision, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_terms(terms: &[(usize, Rational)], precision: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); precision];
        for (k, c) in terms {
            if *k < precision {
                coeffs[*k] += c;
            }
        }
        TruncatedSeries { coeffs }
    }

    pub fn zero(precision: usize) -> Self {
        Self::new(Vec::new(), precision)
    }

    pub fn constant(c: Rational, precision: usize) -> Self {
        Self::new(vec![c], precision)
    }

    /// `c * t^k` modulo `t^precision`.
    pub fn monomial(c: Rational, k: usize, precision: usize) -> Self {
        Self::from_terms(&[(k, c)], precision)
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, failing if it lies beyond the precision.
    pub fn coeff(&self, k: usize) -> Result<&Rational> {
        self.coeffs
            .get(k)
            .ok_or_else(|| Error::truncation(format!("coefficient of t^{k}"), self.precision()))
    }

    /// Nonzero terms below the precision.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Lowest exponent with a nonzero coefficient, or `None` if every known
    /// coefficient vanishes.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// The order, failing when the series vanishes to its full precision.
    pub fn order_checked(&self, context: &str) -> Result<usize> {
        self.order()
            .ok_or_else(|| Error::truncation(format!("order of {context}"), self.precision()))
    }

    /// Lower bound on the order: the true order when known, else the precision.
    pub fn order_lower_bound(&self) -> usize {
        self.order().unwrap_or(self.precision())
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.order().is_none()
    }

    pub fn truncate(&self, precision: usize) -> Self {
        let p = precision.min(self.precision());
        TruncatedSeries {
            coeffs: self.coeffs[..p].to_vec(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.precision().min(other.precision());
        TruncatedSeries {
            coeffs: (0..p).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.precision().min(other.precision());
        TruncatedSeries {
            coeffs: (0..p).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    /// Adds a constant to the coefficient of `t^0`.
    pub fn add_constant(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        if let Some(c0) = out.coeffs.first_mut() {
            *c0 += c;
        }
        out
    }

    /// Product. If `a` is known modulo `t^A` with order `α` and `b` modulo
    /// `t^B` with order `β`, the product is known modulo `t^min(A+β, B+α)`.
    pub fn mul(&self, other: &Self) -> Self {
        let p = (self.precision() + other.order_lower_bound())
            .min(other.precision() + self.order_lower_bound());
        let mut coeffs = vec![Rational::zero(); p];
        let a_terms: Vec<(usize, &Rational)> = self.terms().collect();
        let b_terms: Vec<(usize, &Rational)> = other.terms().collect();
        for (i, a) in &a_terms {
            if *i >= p {
                break;
            }
            for (j, b) in &b_terms {
                let k = i + j;
                if k >= p {
                    break;
                }
                coeffs[k] += *a * *b;
            }
        }
        TruncatedSeries { coeffs }
    }

    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            return TruncatedSeries::constant(Rational::one(), self.precision().max(1));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplication by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries { coeffs }
    }

    /// Division by `t^k`; the coefficients below `t^k` must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.precision() {
            return Err(Error::truncation(format!("division by t^{k}"), self.precision()));
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::math(format!("series is not divisible by t^{k}")));
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Inverse of a unit (nonzero constant term).
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeff(0)?;
        if c0.is_zero() {
            return Err(Error::math("inverse of a non-unit series"));
        }
        let inv0 = c0.recip();
        let p = self.precision();
        let mut out: Vec<Rational> = Vec::with_capacity(p);
        out.push(inv0.clone());
        let terms: Vec<(usize, &Rational)> = self.terms().filter(|(k, _)| *k > 0).collect();
        for n in 1..p {
            let mut s = Rational::zero();
            for (k, a) in &terms {
                if *k > n {
                    break;
                }
                s += *a * &out[n - k];
            }
            out.push(-(s * &inv0));
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Quotient `self / other` where `ord(self) >= ord(other)`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let b = other.order_checked("divisor")?;
        let num = self.shift_down(b)?;
        let den = other.shift_down(b)?.inverse()?;
        Ok(num.mul(&den))
    }

    /// `self^alpha` for a series with constant term 1.
    pub fn pow_rational(&self, alpha: &Rational) -> Result<Self> {
        if self.coeff(0)? != &Rational::one() {
            return Err(Error::math("rational power needs constant term 1"));
        }
        let p = self.precision();
        let mut g: Vec<Rational> = Vec::with_capacity(p);
        g.push(Rational::one());
        let terms: Vec<(usize, &Rational)> = self.terms().filter(|(k, _)| *k > 0).collect();
        let a1 = alpha + Rational::one();
        for n in 1..p {
            let mut s = Rational::zero();
            for (k, f) in &terms {
                if *k > n {
                    break;
                }
                let w = &a1 * int(*k as i64) - int(n as i64);
                s += w * *f * &g[n - k];
            }
            g.push(s / int(n as i64));
        }
        Ok(TruncatedSeries { coeffs: g })
    }

    /// Composition `self(g(t))` for `g(0) = 0`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.coeff(0)?.is_zero() {
            return Err(Error::math("composition needs g(0) = 0"));
        }
        let og = g.order_lower_bound().max(1);
        let mut p = self.precision().saturating_mul(og);
        if let Some(kmin) = self.terms().map(|(k, _)| k).find(|&k| k >= 1) {
            p = p.min(g.precision() + (kmin - 1) * og);
        }
        let mut acc = TruncatedSeries::constant(self.coeffs.first().cloned().unwrap_or_default(), p);
        let mut power = g.truncate(p);
        for k in 1..self.precision() {
            if k * og >= p {
                break;
            }
            if !self.coeffs[k].is_zero() {
                acc = acc.add(&power.scale(&self.coeffs[k]).truncate(p));
            }
            power = power.mul(g).truncate(p);
        }
        Ok(acc.truncate(p))
    }

    /// Compositional inverse of a series with `f(0) = 0` and `f'(0) != 0`.
    pub fn revert(&self) -> Result<Self> {
        if !self.coeff(0)?.is_zero() || self.coeff(1)?.is_zero() {
            return Err(Error::math("reversion needs f(0) = 0 and f'(0) != 0"));
        }
        let p = self.precision();
        let c = self.coeffs[1].clone();
        let w = self.shift_down(1)?.scale(&c.recip());
        let mut out = vec![Rational::zero(); p];
        for n in 1..p {
            let un = w.truncate(n).pow_rational(&int(-(n as i64)))?;
            out[n] = un.coeffs[n - 1].clone() / int(n as i64) / pow_rat(&c, n);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Evaluates the formal derivative.
    pub fn derivative(&self) -> Self {
        if self.precision() == 0 {
            return self.clone();
        }
        TruncatedSeries {
            coeffs: (1..self.precision())
                .map(|k| &self.coeffs[k] * int(k as i64))
                .collect(),
        }
    }
}

fn pow_rat(c: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..n {
        acc *= c;
    }
    acc
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            let neg = c < &Rational::zero();
            let mag = super::abs_fmt(c);
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (k, mag.as_str()) {
                (0, m) => write!(f, "{m}")?,
                (1, "1") => write!(f, "t")?,
                (1, m) => write!(f, "{m}*t")?,
                (k, "1") => write!(f, "t^{k}")?,
                (k, m) => write!(f, "{m}*t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.precision())
    }
}

impl TruncatedSeries {
    /// Exact text without the `O(..)` tail, in the input grammar.
    pub fn to_poly_string(&self) -> String {
        let s = self.to_string();
        match s.rfind(" + O(") {
            Some(i) => s[..i].to_string(),
            None => s,
        }
    }

    pub fn coeff_string(&self, k: usize) -> Option<String> {
        self.coeffs.get(k).map(fmt_rational)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn s(c: &[i64], p: usize) -> TruncatedSeries {
        TruncatedSeries::new(c.iter().map(|&v| int(v)).collect(), p)
    }

    #[test]
    fn inverse_of_one_minus_t_is_geometric() {
        let inv = s(&[1, -1], 6).inverse().unwrap();
        assert_eq!(inv, s(&[1, 1, 1, 1, 1, 1], 6));
    }

    #[test]
    fn product_precision_uses_orders() {
        let a = TruncatedSeries::monomial(int(1), 3, 10);
        let b = s(&[1, 2], 5);
        assert_eq!(a.mul(&b).precision(), 8);
    }

    #[test]
    fn coefficient_beyond_precision_fails() {
        assert!(matches!(s(&[1], 3).coeff(3), Err(Error::Truncation { .. })));
    }

    #[test]
    fn square_root_by_rational_power() {
        let r = s(&[1, 1], 6).pow_rational(&rat(1, 2)).unwrap();
        let back = r.mul(&r);
        assert_eq!(back, s(&[1, 1], 6));
    }

    #[test]
    fn reversion_inverts_composition() {
        let f = s(&[0, 2, 1, -3, 5], 8);
        let g = f.revert().unwrap();
        let id = f.compose(&g).unwrap();
        for k in 0..id.precision() {
            assert_eq!(id.coeffs()[k], if k == 1 { int(1) } else { int(0) });
        }
    }

    #[test]
    fn display_is_stable() {
        assert_eq!(s(&[0, 0, 1, -2], 5).to_string(), "t^2 - 2*t^3 + O(t^5)");
    }
}
