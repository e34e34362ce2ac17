use num_traits::Zero;
use std::cmp::Ordering;

use super::{BlowUpStep, Chart, ResolutionData};
use crate::curve::{DirectionComponent, Parametrization};
use crate::exact::{fmt_rational, RatMatrix, Rational, TruncatedSeries};
use crate::{Error, Result};

const MAX_STEPS: usize = 4096;
const FIRST_PRECISION: usize = 32;

type Germ = (TruncatedSeries, TruncatedSeries);

/// A resolution together with the local data seen along the way.
#[derive(Clone, Debug)]
pub struct ResolutionTrace {
    pub data: ResolutionData,
    /// Local parametrization of the strict transform at each center `c_i`.
    pub centers: Vec<Parametrization>,
    /// For each tracked direction component, the centers it passes through.
    pub passes: Vec<Vec<usize>>,
}

/// Resolves the branch; see [`resolve_traced`].
pub fn resolve(param: &Parametrization) -> Result<ResolutionData> {
    resolve_traced(param, &[]).map(|t| t.data)
}

/// Blows up until the strict transform is smooth, transverse to the
/// exceptional divisor and through a point of a single component.
///
/// The truncation is raised geometrically from a small value up to what the
/// parametrization provides; the first precision that decides every step is
/// kept, so the outcome does not depend on the ladder.
pub fn resolve_traced(param: &Parametrization, extra: &[DirectionComponent]) -> Result<ResolutionTrace> {
    let cap = param.max_precision();
    let mut precision = FIRST_PRECISION.min(cap);
    loop {
        match run(param, extra, precision) {
            Err(Error::Truncation { .. }) if precision < cap => {
                precision = (precision * 2).min(cap);
            }
            other => return other,
        }
    }
}

/// Decided comparison of `ord a` and `ord b`.
fn compare_orders(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<Ordering> {
    match (a.order(), b.order()) {
        (Some(p), Some(q)) => Ok(p.cmp(&q)),
        (Some(p), None) if p < b.precision() => Ok(Ordering::Less),
        (None, Some(q)) if q < a.precision() => Ok(Ordering::Greater),
        _ => Err(Error::truncation(
            "comparison of coordinate orders",
            a.precision().min(b.precision()),
        )),
    }
}

fn multiplicity(g: &Germ) -> Result<usize> {
    Ok(match compare_orders(&g.0, &g.1)? {
        Ordering::Greater => g.1.order().unwrap(),
        _ => g.0.order().unwrap(),
    })
}

struct Center {
    germ: Germ,
    div_x: Option<usize>,
    div_y: Option<usize>,
}

impl Center {
    fn divisors(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.div_x.into_iter().chain(self.div_y).collect();
        v.sort_unstable();
        v
    }

    fn needs_blow_up(&self) -> Result<bool> {
        let m = multiplicity(&self.germ)?;
        if m >= 2 || (self.div_x.is_some() && self.div_y.is_some()) {
            return Ok(true);
        }
        let cmp = compare_orders(&self.germ.0, &self.germ.1)?;
        Ok((self.div_x.is_some() && cmp == Ordering::Greater)
            || (self.div_y.is_some() && cmp == Ordering::Less))
    }
}

fn run(param: &Parametrization, extra: &[DirectionComponent], precision: usize) -> Result<ResolutionTrace> {
    let (x, y) = param.at_precision(precision)?;
    if !x.coeff(0)?.is_zero() || !y.coeff(0)?.is_zero() {
        return Err(Error::invalid("parametrization does not pass through the origin"));
    }
    let mut center = Center {
        germ: (x, y),
        div_x: None,
        div_y: None,
    };
    let mut branches: Vec<Option<Germ>> = Vec::new();
    for comp in extra {
        let g = comp.germ(precision)?;
        if !g.0.coeff(0)?.is_zero() || !g.1.coeff(0)?.is_zero() {
            return Err(Error::invalid("direction component does not pass through the origin"));
        }
        branches.push(Some(g));
    }
    let mut passes: Vec<Vec<usize>> = vec![Vec::new(); extra.len()];
    let mut steps: Vec<BlowUpStep> = Vec::new();
    let mut centers: Vec<Parametrization> = Vec::new();
    let mut later_centers: Vec<i64> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();

    while center.needs_blow_up()? {
        let i = steps.len() + 1;
        if i > MAX_STEPS {
            return Err(Error::BoundExhausted(format!("more than {MAX_STEPS} blow-ups")));
        }
        let divs = center.divisors();
        let m = multiplicity(&center.germ)?;
        let total = m + divs.len();
        for (b, track) in branches.iter().enumerate() {
            if track.is_some() {
                passes[b].push(i);
            }
        }
        for &j in &divs {
            later_centers[j - 1] += 1;
            edges.push((j, i));
        }
        if divs.len() == 2 {
            edges.retain(|&e| e != (divs[0], divs[1]));
        }
        later_centers.push(0);
        centers.push(Parametrization::truncated(center.germ.0.clone(), center.germ.1.clone()));

        let (sx, sy) = &center.germ;
        let chart = if compare_orders(sx, sy)? == Ordering::Greater {
            Chart::XOverY
        } else {
            Chart::YOverX
        };
        let (germ, tau) = blow_up(&center.germ, chart, None)?;
        for track in branches.iter_mut() {
            if let Some(g) = track.take() {
                *track = follow(&g, chart, &tau)?;
            }
        }
        let (div_x, div_y) = match chart {
            Chart::YOverX => (Some(i), center.div_y.filter(|_| tau.is_zero())),
            Chart::XOverY => (center.div_x.filter(|_| tau.is_zero()), Some(i)),
        };
        steps.push(BlowUpStep {
            index: i,
            center_divisors: divs,
            strict_multiplicity: m as u64,
            reduced_total_multiplicity: total as u64,
            chart,
            translation: fmt_rational(&tau),
        });
        center = Center { germ, div_x, div_y };
    }

    let n = steps.len();
    let mut prox = vec![vec![0i64; n]; n];
    for s in &steps {
        prox[s.index - 1][s.index - 1] = 1;
        for &j in &s.center_divisors {
            prox[j - 1][s.index - 1] = -1;
        }
    }
    let inverse = if n == 0 {
        Vec::new()
    } else {
        RatMatrix::from_i64(&prox)?
            .inverse()?
            .to_i64()
            .ok_or_else(|| Error::math("proximity inverse is not integral"))?
    };
    edges.sort_unstable();
    Ok(ResolutionTrace {
        data: ResolutionData {
            steps,
            proximity: prox,
            proximity_inverse: inverse,
            self_intersections: later_centers.iter().map(|c| -1 - c).collect(),
            edges,
            truncation: precision,
        },
        centers,
        passes,
    })
}

/// Chart map followed by translation of the non-divisor coordinate. When
/// `tau` is given the translation is imposed, otherwise it is the constant
/// term of the transformed coordinate.
fn blow_up(g: &Germ, chart: Chart, tau: Option<&Rational>) -> Result<(Germ, Rational)> {
    let (sx, sy) = g;
    match chart {
        Chart::YOverX => {
            let q = sy.div(sx)?;
            let c = match tau {
                Some(t) => t.clone(),
                None => q.coeff(0)?.clone(),
            };
            Ok(((sx.clone(), q.add_constant(&-c.clone())), c))
        }
        Chart::XOverY => {
            let q = sx.div(sy)?;
            let c = match tau {
                Some(t) => t.clone(),
                None => q.coeff(0)?.clone(),
            };
            Ok(((q.add_constant(&-c.clone()), sy.clone()), c))
        }
    }
}

/// Strict transform of a smooth germ through the center, or `None` once it
/// leaves the next center.
fn follow(g: &Germ, chart: Chart, tau: &Rational) -> Result<Option<Germ>> {
    let cmp = compare_orders(&g.0, &g.1)?;
    let visible = match chart {
        Chart::YOverX => cmp != Ordering::Greater,
        Chart::XOverY => cmp != Ordering::Less,
    };
    if !visible {
        return Ok(None);
    }
    let (next, _) = blow_up(g, chart, Some(tau))?;
    let moved = match chart {
        Chart::YOverX => &next.1,
        Chart::XOverY => &next.0,
    };
    Ok(if moved.coeff(0)?.is_zero() { Some(next) } else { None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_branch_needs_no_blow_up() {
        let r = resolve(&Parametrization::monomial(1, 3, 10)).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn cusp_takes_three_blow_ups() {
        let r = resolve(&Parametrization::monomial(2, 3, 10)).unwrap();
        assert_eq!(r.multiplicities(), vec![2, 1, 1]);
        assert_eq!(r.reduced_total_multiplicities(), vec![2, 2, 3]);
        assert_eq!(r.edges, vec![(1, 3), (2, 3)]);
        assert_eq!(r.self_intersections, vec![-3, -2, -1]);
    }
}
