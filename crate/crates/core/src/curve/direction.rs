use num_traits::{One, Zero};
use std::fmt;

use super::Parametrization;
use crate::exact::{Rational, TruncatedSeries};
use crate::{Error, Result};

/// A smooth germ through the origin that accompanies the branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DirectionComponent {
    /// The line `{x = 0}`.
    XAxis,
    /// The line `{y = 0}`.
    YAxis,
    /// A smooth germ given by a parametrization of multiplicity one.
    Smooth(Parametrization),
}

impl DirectionComponent {
    /// The germ as a pair of series at the given precision.
    pub fn germ(&self, precision: usize) -> Result<(TruncatedSeries, TruncatedSeries)> {
        let line = TruncatedSeries::monomial(Rational::one(), 1, precision);
        match self {
            DirectionComponent::XAxis => Ok((TruncatedSeries::zero(precision), line)),
            DirectionComponent::YAxis => Ok((line, TruncatedSeries::zero(precision))),
            DirectionComponent::Smooth(p) => p.at_precision(precision),
        }
    }

    /// Tangent vector at the origin.
    pub fn tangent(&self) -> Result<(Rational, Rational)> {
        let (x, y) = self.germ(2)?;
        Ok((x.coeff(1)?.clone(), y.coeff(1)?.clone()))
    }

    pub fn label(&self) -> String {
        match self {
            DirectionComponent::XAxis => "x=0".into(),
            DirectionComponent::YAxis => "y=0".into(),
            DirectionComponent::Smooth(p) => {
                format!("x={}; y={}", p.x.to_poly_string(), p.y.to_poly_string())
            }
        }
    }
}

/// A finite union `d` of smooth germs through the origin, possibly empty.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Direction(Vec<DirectionComponent>);

impl Direction {
    pub fn new(components: Vec<DirectionComponent>) -> Result<Self> {
        for c in &components {
            if let DirectionComponent::Smooth(p) = c {
                if p.multiplicity()? != 1 {
                    return Err(Error::invalid("direction components must be smooth"));
                }
            }
        }
        if components.len() > 2 {
            return Err(Error::invalid("a direction has at most two components"));
        }
        if let [a, b] = components.as_slice() {
            let (ta, tb) = (a.tangent()?, b.tangent()?);
            if &ta.0 * &tb.1 - &ta.1 * &tb.0 == Rational::zero() {
                return Err(Error::invalid("the two direction components must be transverse"));
            }
        }
        Ok(Direction(components))
    }

    pub fn empty() -> Self {
        Direction(Vec::new())
    }

    /// `{x = 0}`.
    pub fn x_axis() -> Self {
        Direction(vec![DirectionComponent::XAxis])
    }

    /// `{xy = 0}`.
    pub fn axes() -> Self {
        Direction(vec![DirectionComponent::XAxis, DirectionComponent::YAxis])
    }

    pub fn components(&self) -> &[DirectionComponent] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains_x_axis(&self) -> bool {
        self.0.contains(&DirectionComponent::XAxis)
    }

    pub fn contains_y_axis(&self) -> bool {
        self.0.contains(&DirectionComponent::YAxis)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "none");
        }
        let labels: Vec<String> = self.0.iter().map(|c| format!("{{{}}}", c.label())).collect();
        write!(f, "{}", labels.join(" ∪ "))
    }
}
