use std::fmt;

use crate::exact::{BivariatePoly, TruncatedSeries};
use crate::{Error, Result};

/// A polynomial 1-form `A dx + B dy`.
///
/// Forms tangent to a direction containing `{x = 0}` (resp. `{y = 0}`) are
/// stored with the factor `x` in `B` (resp. `y` in `A`) already multiplied
/// in, so `a` and `b` are always the full coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OneForm {
    pub a: BivariatePoly,
    pub b: BivariatePoly,
}

impl OneForm {
    pub fn new(a: BivariatePoly, b: BivariatePoly) -> Self {
        OneForm { a, b }
    }

    /// The differential `df`.
    pub fn exact(f: &BivariatePoly) -> Self {
        OneForm {
            a: f.deriv_x(),
            b: f.deriv_y(),
        }
    }

    /// Builds `y^{[y]} A dx + x^{[x]} B dy` from the reduced coefficients.
    pub fn from_convention(a: &BivariatePoly, b: &BivariatePoly, x_factor: bool, y_factor: bool) -> Self {
        OneForm {
            a: if y_factor { a.mul_monomial(0, 1) } else { a.clone() },
            b: if x_factor { b.mul_monomial(1, 0) } else { b.clone() },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Lowest total degree among the coefficients; `None` for the zero form.
    pub fn valuation(&self) -> Option<u32> {
        match (self.a.valuation(), self.b.valuation()) {
            (Some(u), Some(v)) => Some(u.min(v)),
            (u, v) => u.or(v),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        OneForm {
            a: self.a.add(&other.a),
            b: self.b.add(&other.b),
        }
    }

    pub fn scale_poly(&self, h: &BivariatePoly) -> Self {
        OneForm {
            a: self.a.mul(h),
            b: self.b.mul(h),
        }
    }

    /// `c` with `self ∧ other = c dx ∧ dy`.
    pub fn wedge(&self, other: &Self) -> BivariatePoly {
        self.a.mul(&other.b).sub(&other.a.mul(&self.b))
    }

    /// `ω ∧ dg = (A g_y - B g_x) dx ∧ dy`.
    pub fn wedge_differential(&self, g: &BivariatePoly) -> BivariatePoly {
        self.wedge(&Self::exact(g))
    }

    /// `γ*ω = (A(γ) x' + B(γ) y') dt`, the coefficient series.
    pub fn pullback(&self, x: &TruncatedSeries, y: &TruncatedSeries) -> TruncatedSeries {
        let ax = self.a.eval_series(x, y).mul(&x.derivative());
        let by = self.b.eval_series(x, y).mul(&y.derivative());
        ax.add(&by)
    }

    /// Whether `g` divides `ω ∧ dg`, i.e. the form is tangent to `{g = 0}`
    /// for reduced `g`.
    pub fn is_tangent_to(&self, g: &BivariatePoly) -> Result<bool> {
        let (_, r) = self.wedge_differential(g).div_rem(g)?;
        Ok(r.is_zero())
    }
}

impl fmt::Display for OneForm {
    /// The input grammar: `dx=<poly>; dy=<poly>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dx={}; dy={}", self.a, self.b)
    }
}

impl serde::Serialize for OneForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Checks that a series vanishes modulo `t^order`.
pub(crate) fn vanishes_to(s: &TruncatedSeries, order: usize) -> Result<bool> {
    if s.precision() < order {
        return Err(Error::truncation("pullback of a form", s.precision()));
    }
    Ok(s.truncate(order).is_zero_to_precision())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn poly(terms: &[((u32, u32), i64)]) -> BivariatePoly {
        BivariatePoly::from_terms(terms.iter().map(|(k, c)| (*k, int(*c))))
    }

    #[test]
    fn euler_form_wedge_differential() {
        let f = poly(&[((0, 6), 1), ((7, 0), -1)]);
        let w = OneForm::new(poly(&[((0, 1), -7)]), poly(&[((1, 0), 6)]));
        assert_eq!(w.wedge_differential(&f), f.scale(&int(-42)));
        assert!(w.is_tangent_to(&f).unwrap());
        assert_eq!(w.valuation(), Some(1));
    }

    #[test]
    fn display_round_trips_grammar() {
        let w = OneForm::new(poly(&[((0, 1), -7)]), poly(&[((1, 0), 6)]));
        assert_eq!(w.to_string(), "dx=-7*y; dy=6*x");
    }
}
