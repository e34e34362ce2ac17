//! Exact arithmetic: rationals, truncated power series, sparse bivariate
//! polynomials, dense rational matrices and the Sylvester resultant.

mod matrix;
mod poly;
mod resultant;
mod series;

pub use matrix::RatMatrix;
pub use poly::BivariatePoly;
pub use resultant::{implicitize, sylvester_resultant};
pub use series::TruncatedSeries;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Converts an integral rational to `i64`, if it is integral and fits.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

/// Canonical text for a rational: `a` or `a/b`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn abs_fmt(q: &Rational) -> String {
    fmt_rational(&q.abs())
}
