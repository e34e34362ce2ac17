use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CharExponents;
use crate::exact::{int, BivariatePoly, Rational, TruncatedSeries};
use crate::{Error, Result};

/// Ceiling on the precision that an exact polynomial parametrization may be
/// extended to on demand.
const MAX_EXACT_PRECISION: usize = 1 << 14;

/// A parametrization `t ↦ (x(t), y(t))` of a branch through the origin.
///
/// When `exact` is set the two series are polynomials known exactly, and their
/// precision may be extended with zeros. Otherwise they are known only modulo
/// `t^precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    pub x: TruncatedSeries,
    pub y: TruncatedSeries,
    pub exact: bool,
}

/// Puiseux form of a branch: in suitable linear coordinates `x = t^p` and
/// `y = y(t)` with `ord y >= p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxForm {
    pub p: u64,
    pub y: TruncatedSeries,
    /// Whether the roles of the input coordinates were exchanged.
    pub swapped: bool,
}

impl Parametrization {
    /// Polynomial parametrization from `(exponent, coefficient)` terms.
    pub fn polynomial(x: &[(usize, Rational)], y: &[(usize, Rational)], precision: usize) -> Self {
        let top = x.iter().chain(y).map(|(k, _)| k + 1).max().unwrap_or(1);
        let p = precision.max(top);
        Parametrization {
            x: TruncatedSeries::from_terms(x, p),
            y: TruncatedSeries::from_terms(y, p),
            exact: true,
        }
    }

    /// `x = t^p`, `y = t^q`.
    pub fn monomial(p: usize, q: usize, precision: usize) -> Self {
        Self::polynomial(&[(p, Rational::one())], &[(q, Rational::one())], precision)
    }

    pub fn truncated(x: TruncatedSeries, y: TruncatedSeries) -> Self {
        Parametrization { x, y, exact: false }
    }

    /// The truncation order: the smaller of the two precisions.
    pub fn truncation(&self) -> usize {
        self.x.precision().min(self.y.precision())
    }

    /// Both coordinates at exactly `precision`, extending exact polynomials
    /// with zeros and failing if a truncated series is too short.
    pub fn at_precision(&self, precision: usize) -> Result<(TruncatedSeries, TruncatedSeries)> {
        if precision <= self.truncation() {
            return Ok((self.x.truncate(precision), self.y.truncate(precision)));
        }
        if !self.exact || precision > MAX_EXACT_PRECISION {
            return Err(Error::truncation("parametrization coefficients", self.truncation()));
        }
        Ok((
            TruncatedSeries::new(self.x.coeffs().to_vec(), precision),
            TruncatedSeries::new(self.y.coeffs().to_vec(), precision),
        ))
    }

    /// Largest precision this parametrization can be queried at.
    pub fn max_precision(&self) -> usize {
        if self.exact {
            MAX_EXACT_PRECISION
        } else {
            self.truncation()
        }
    }

    pub fn with_precision(&self, precision: usize) -> Result<Self> {
        let (x, y) = self.at_precision(precision)?;
        Ok(Parametrization {
            x,
            y,
            exact: self.exact,
        })
    }

    /// Multiplicity `min(ord x, ord y)`.
    pub fn multiplicity(&self) -> Result<u64> {
        self.check_origin()?;
        Ok(match (self.x.order(), self.y.order()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) if a < self.y.precision() => a,
            (None, Some(b)) if b < self.x.precision() => b,
            _ => return Err(Error::truncation("multiplicity", self.truncation())),
        } as u64)
    }

    fn check_origin(&self) -> Result<()> {
        if !self.x.coeff(0)?.is_zero() || !self.y.coeff(0)?.is_zero() {
            return Err(Error::invalid("parametrization does not pass through the origin"));
        }
        Ok(())
    }

    /// Rewrites the branch with `x = t^p` after a linear change of
    /// coordinates and a reparametrization.
    pub fn puiseux_form(&self) -> Result<PuiseuxForm> {
        let p = self.multiplicity()? as usize;
        if p == 0 {
            return Err(Error::invalid("constant parametrization"));
        }
        let x_order = self.x.order().unwrap_or(usize::MAX);
        let swapped = x_order != p;
        let (x, y) = if swapped {
            (&self.y, &self.x)
        } else {
            (&self.x, &self.y)
        };
        let lead = x.coeff(p)?.clone();
        let monomial_x = x.terms().count() == 1;
        if monomial_x {
            return Ok(PuiseuxForm {
                p: p as u64,
                y: y.clone(),
                swapped,
            });
        }
        // x = lead t^p u(t) with u(0) = 1; s = t u^{1/p} gives x = lead s^p.
        let u = x.shift_down(p)?.scale(&lead.recip());
        let root = u.pow_rational(&Rational::new(1.into(), (p as i64).into()))?;
        let phi = root.shift_up(1);
        let psi = phi.revert()?;
        let y_new = y.compose(&psi)?;
        Ok(PuiseuxForm {
            p: p as u64,
            y: y_new,
            swapped,
        })
    }

    /// Characteristic exponents read off the gcd chain of the Puiseux form.
    pub fn char_exponents(&self) -> Result<CharExponents> {
        let form = self.puiseux_form()?;
        let p = form.p;
        if p == 1 {
            return CharExponents::new(vec![1]);
        }
        let mut beta = vec![p];
        let mut e = p;
        for (k, _) in form.y.terms() {
            let k = k as u64;
            if !k.is_multiple_of(e) {
                beta.push(k);
                e = e.gcd(&k);
                if e == 1 {
                    return CharExponents::new(beta);
                }
            }
        }
        if self.exact && !form.swapped && self.x.terms().count() == 1 {
            Err(Error::invalid(
                "parametrization is not primitive: the gcd chain never reaches 1",
            ))
        } else {
            Err(Error::truncation("characteristic exponents", form.y.precision()))
        }
    }

    /// Normal form `x = t^p`, `y = t^{β₁} + …`: roles are exchanged so that
    /// `x` has the lower order, terms of `y` below `β₁` (all multiples of `p`)
    /// are absorbed by `y ↦ y - P(x)`, and `y` is rescaled to a monic lead.
    /// Returns `None` for a smooth branch.
    pub fn convert_to_normal(&self) -> Result<Option<Parametrization>> {
        let chars = self.char_exponents()?;
        if chars.is_smooth() {
            return Ok(None);
        }
        let form = self.puiseux_form()?;
        let p = form.p as usize;
        let b1 = chars.betas()[1] as usize;
        let lead = form.y.coeff(b1)?.clone();
        let terms: Vec<(usize, Rational)> = form
            .y
            .terms()
            .filter(|(k, _)| *k >= b1)
            .map(|(k, c)| (k, c / &lead))
            .collect();
        let prec = form.y.precision();
        let exact = self.exact && self.x.terms().count() == 1;
        Ok(Some(Parametrization {
            x: TruncatedSeries::monomial(Rational::one(), p, prec),
            y: TruncatedSeries::from_terms(&terms, prec),
            exact,
        }))
    }
}

/// A plane curve given by a polynomial equation `f(x, y) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveEquation {
    pub f: BivariatePoly,
}

impl CurveEquation {
    pub fn new(f: BivariatePoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::invalid("the zero polynomial defines no curve"));
        }
        if !f.constant_term().is_zero() {
            return Err(Error::invalid("the curve does not pass through the origin"));
        }
        Ok(CurveEquation { f })
    }

    pub fn multiplicity(&self) -> u64 {
        self.f.valuation().unwrap_or(0) as u64
    }

    /// A monomial parametrization when `f = λ (y^a - μ x^b)` with `μ` a
    /// rational `a`-th power and `gcd(a, b) = 1`.
    pub fn monomial_parametrization(&self, precision: usize) -> Option<Parametrization> {
        let terms: Vec<(&(u32, u32), &Rational)> = self.f.terms().collect();
        if terms.len() != 2 {
            return None;
        }
        let (ya, xb) = match (terms[0].0, terms[1].0) {
            ((0, a), (b, 0)) | ((b, 0), (0, a)) if *a > 0 && *b > 0 => (*a, *b),
            _ => return None,
        };
        if (ya as u64).gcd(&(xb as u64)) != 1 {
            return None;
        }
        let cy = self.f.coeff(0, ya);
        let cx = self.f.coeff(xb, 0);
        let mu = -(cx / cy);
        let r = rational_root(&mu, ya)?;
        Some(Parametrization::polynomial(
            &[(ya as usize, Rational::one())],
            &[(xb as usize, r)],
            precision,
        ))
    }
}

fn rational_root(q: &Rational, n: u32) -> Option<Rational> {
    if q.is_zero() {
        return None;
    }
    let neg = q < &Rational::zero();
    if neg && n.is_multiple_of(2) {
        return None;
    }
    let a = q.numer().magnitude().nth_root(n);
    let b = q.denom().magnitude().nth_root(n);
    if a.pow(n) != *q.numer().magnitude() || b.pow(n) != *q.denom().magnitude() {
        return None;
    }
    let r = Rational::new(a.into(), b.into());
    Some(if neg { -r } else { r })
}

/// A seeded generic member of a topological class.
///
/// The characteristic terms have coefficient 1. Every other exponent
/// `k < trunc` above `β₁` that keeps the class unchanged (divisible by `e_i`
/// when `β_i < k < β_{i+1}`) receives a pseudo-random nonzero integer in
/// `[-9, 9]`. The result is an exact polynomial parametrization.
pub fn generic_parametrization(chars: &CharExponents, seed: u64, trunc: usize) -> Result<Parametrization> {
    let b = chars.betas();
    if chars.is_smooth() {
        return Ok(Parametrization::monomial(1, 2, trunc.max(3)));
    }
    if trunc <= *b.last().unwrap() as usize {
        return Err(Error::invalid(format!(
            "truncation {trunc} does not exceed the last characteristic exponent {}",
            b.last().unwrap()
        )));
    }
    let e = chars.gcd_chain();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut y: Vec<(usize, Rational)> = Vec::new();
    for k in b[1] as usize..trunc {
        let ku = k as u64;
        if let Some(i) = b.iter().position(|&bi| bi == ku) {
            if i > 0 {
                y.push((k, Rational::one()));
            }
            continue;
        }
        let level = b.iter().rposition(|&bi| bi < ku).unwrap();
        if !ku.is_multiple_of(e[level]) {
            continue;
        }
        let mut c: i64 = 0;
        while c == 0 {
            c = rng.gen_range(-9..=9);
        }
        y.push((k, int(c)));
    }
    Ok(Parametrization::polynomial(
        &[(b[0] as usize, Rational::one())],
        &y,
        trunc,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swapped_monomial_curve_normalizes() {
        let p = Parametrization::monomial(3, 2, 20);
        let n = p.convert_to_normal().unwrap().unwrap();
        assert_eq!(n.x.order(), Some(2));
        assert_eq!(n.y.order(), Some(3));
    }

    #[test]
    fn absorbs_multiples_of_the_multiplicity() {
        let p = Parametrization::polynomial(
            &[(2, int(1))],
            &[(4, int(1)), (5, int(1))],
            20,
        );
        let n = p.convert_to_normal().unwrap().unwrap();
        assert_eq!(n.y.order(), Some(5));
        assert_eq!(p.char_exponents().unwrap().betas(), &[2, 5]);
    }

    #[test]
    fn non_primitive_parametrization_is_rejected() {
        let p = Parametrization::polynomial(&[(2, int(1))], &[(4, int(1)), (6, int(1))], 30);
        assert!(matches!(p.char_exponents(), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn non_monomial_x_is_reparametrized() {
        // x = t^2 + t^3 is a reparametrization of a curve with exponents (2, 3).
        let p = Parametrization::polynomial(&[(2, int(1)), (3, int(1))], &[(3, int(1))], 24);
        assert_eq!(p.char_exponents().unwrap().betas(), &[2, 3]);
    }

    #[test]
    fn generic_parametrization_is_seeded() {
        let c = CharExponents::new(vec![4, 6, 7]).unwrap();
        let a = generic_parametrization(&c, 7, 40).unwrap();
        let b = generic_parametrization(&c, 7, 40).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.char_exponents().unwrap(), c);
    }
}
