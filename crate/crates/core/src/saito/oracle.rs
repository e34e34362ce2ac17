use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

use super::forms::{vanishes_to, OneForm};
use crate::curve::{
    generic_parametrization, CharExponents, CurveEquation, Direction, DirectionComponent, Parametrization,
};
use crate::exact::{implicitize, BivariatePoly, RatMatrix, Rational, TruncatedSeries};
use crate::{Error, Result};

/// The curve handed to the Saito oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaitoCurve {
    /// Tangency is tested by polynomial divisibility.
    Equation(CurveEquation),
    /// Tangency is tested by vanishing of jets of the pullback.
    Param(Parametrization),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Equation,
    Parametrization,
}

impl SaitoCurve {
    pub fn route(&self) -> Route {
        match self {
            SaitoCurve::Equation(_) => Route::Equation,
            SaitoCurve::Param(_) => Route::Parametrization,
        }
    }

    /// `ν(S)`.
    pub fn multiplicity(&self) -> Result<u64> {
        match self {
            SaitoCurve::Equation(e) => Ok(e.multiplicity()),
            SaitoCurve::Param(p) => p.multiplicity(),
        }
    }
}

/// `ν(S_d) = ν(S) + #d`.
pub fn curve_valuation(curve: &SaitoCurve, d: &Direction) -> Result<u64> {
    Ok(curve.multiplicity()? + d.len() as u64)
}

/// Degree bound on the coefficients of the searched forms and, for
/// parametrizations, the number of pullback coefficients forced to vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SaitoBounds {
    pub degree_bound: usize,
    pub jet_order: usize,
}

impl SaitoBounds {
    pub fn doubled(&self) -> Self {
        SaitoBounds {
            degree_bound: 2 * self.degree_bound,
            jet_order: 2 * self.jet_order,
        }
    }
}

/// Smallest degree `D` such that every monomial of degree `> D` pulls back to
/// order `>= jet_order` along a branch of multiplicity `p`.
fn degree_for_jets(jet_order: usize, p: usize) -> usize {
    (jet_order + 1).saturating_sub(2 * p).div_ceil(p)
}

/// Defaults for the oracle.
///
/// Equations: forms up to degree `deg f_d + 2`, which contains `d f_d`.
/// Parametrizations: with `κ = ⌈ν(S_d)/2⌉`, jets up to
/// `c + (κ + 2) p + β₁` and the degree making higher monomials invisible.
pub fn default_bounds(curve: &SaitoCurve, d: &Direction) -> Result<SaitoBounds> {
    match curve {
        SaitoCurve::Equation(e) => {
            let fd = direction_equation(e, d)?;
            let deg = fd.total_degree().unwrap_or(0) as usize;
            Ok(SaitoBounds {
                degree_bound: deg + 2,
                jet_order: 0,
            })
        }
        SaitoCurve::Param(param) => {
            let nu_sd = curve_valuation(curve, d)? as usize;
            let p = param.multiplicity()? as usize;
            let (c, q) = if p == 1 {
                (0, 2)
            } else {
                let chars = param.char_exponents()?;
                (chars.conductor() as usize, chars.betas()[1] as usize)
            };
            let kappa = nu_sd.div_ceil(2);
            let jet_order = c + (kappa + 2) * p + q;
            Ok(SaitoBounds {
                degree_bound: degree_for_jets(jet_order, p).max(kappa + 1),
                jet_order,
            })
        }
    }
}

/// `f · x^{[x ∈ d]} · y^{[y ∈ d]} · Π g_k` with `g_k` the implicit equations of
/// the other components of `d`.
pub fn direction_equation(e: &CurveEquation, d: &Direction) -> Result<BivariatePoly> {
    let mut fd = e.f.clone();
    for comp in d.components() {
        let g = match comp {
            DirectionComponent::XAxis => BivariatePoly::x(),
            DirectionComponent::YAxis => BivariatePoly::y(),
            DirectionComponent::Smooth(p) => {
                if !p.exact {
                    return Err(Error::invalid(
                        "a direction component must be a polynomial parametrization on the equation route",
                    ));
                }
                let prec = p.truncation();
                let (x, y) = p.at_precision(prec)?;
                implicitize(&x, &y)?
            }
        };
        fd = fd.mul(&g);
    }
    Ok(fd)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    Dx,
    Dy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Column {
    slot: Slot,
    i: u32,
    j: u32,
}

impl Column {
    fn degree(&self) -> u32 {
        self.i + self.j
    }
}

/// Assembled monomials of degree `<= bound`, in decreasing degree. Columns
/// of `dx` need a factor `y` when `{y=0} ⊂ d`, columns of `dy` a factor `x`
/// when `{x=0} ⊂ d`.
fn form_columns(bound: usize, d: &Direction) -> Vec<Column> {
    let (xf, yf) = (d.contains_x_axis(), d.contains_y_axis());
    let mut cols = Vec::new();
    for deg in (0..=bound as u32).rev() {
        for i in (0..=deg).rev() {
            let j = deg - i;
            if !yf || j >= 1 {
                cols.push(Column { slot: Slot::Dx, i, j });
            }
            if !xf || i >= 1 {
                cols.push(Column { slot: Slot::Dy, i, j });
            }
        }
    }
    cols
}

/// Linear system whose kernel is the space of tangent forms within bounds.
struct TangentSystem {
    columns: Vec<Column>,
    /// Number of leading auxiliary columns (the cofactor on the equation route).
    aux: usize,
    rref: RatMatrix,
    pivots: Vec<usize>,
    /// Columns whose pullback vanishes identically to the jet order; their
    /// kernel vectors carry no information.
    blind: Vec<bool>,
}

impl TangentSystem {
    fn build(curve: &SaitoCurve, d: &Direction, bounds: &SaitoBounds) -> Result<Self> {
        let columns = form_columns(bounds.degree_bound, d);
        let (rows, aux, blind) = match curve {
            SaitoCurve::Equation(e) => equation_rows(e, d, &columns, bounds)?,
            SaitoCurve::Param(p) => jet_rows(p, d, &columns, bounds)?,
        };
        let (rref, pivots) = if rows.is_empty() {
            (RatMatrix::zeros(0, columns.len() + aux), Vec::new())
        } else {
            RatMatrix::from_rows(rows)?.rref()
        };
        Ok(TangentSystem {
            columns,
            aux,
            rref,
            pivots,
            blind,
        })
    }

    /// Form columns that are free in the echelon form, with their degree.
    fn free_columns(&self) -> Vec<(usize, u32)> {
        let total = self.aux + self.columns.len();
        let mut is_pivot = vec![false; total];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (self.aux..total)
            .filter(|&c| !is_pivot[c] && !self.blind[c - self.aux])
            .map(|c| (c, self.columns[c - self.aux].degree()))
            .collect()
    }

    /// Kernel vector attached to a free column, as a form. Its lowest-degree
    /// part contains the monomial of that column with coefficient 1.
    fn form_for(&self, free: usize) -> OneForm {
        let mut a = BivariatePoly::zero();
        let mut b = BivariatePoly::zero();
        let mut put = |col: usize, c: Rational| {
            if col < self.aux {
                return;
            }
            let m = self.columns[col - self.aux];
            match m.slot {
                Slot::Dx => a.add_term(m.i, m.j, c),
                Slot::Dy => b.add_term(m.i, m.j, c),
            }
        };
        put(free, Rational::one());
        for (row, &p) in self.pivots.iter().enumerate() {
            let v = &self.rref[(row, free)];
            if !v.is_zero() {
                put(p, -v.clone());
            }
        }
        OneForm::new(a, b)
    }
}

type Rows = (Vec<Vec<Rational>>, usize, Vec<bool>);

fn equation_rows(e: &CurveEquation, d: &Direction, columns: &[Column], bounds: &SaitoBounds) -> Result<Rows> {
    let fd = direction_equation(e, d)?;
    let fx = fd.deriv_x();
    let fy = fd.deriv_y();
    let h_bound = bounds.degree_bound.saturating_sub(1) as u32;
    let mut polys: Vec<BivariatePoly> = Vec::new();
    for deg in 0..=h_bound {
        for i in 0..=deg {
            polys.push(fd.mul_monomial(i, deg - i).neg());
        }
    }
    let aux = polys.len();
    for c in columns {
        polys.push(match c.slot {
            Slot::Dx => fy.mul_monomial(c.i, c.j),
            Slot::Dy => fx.mul_monomial(c.i, c.j).neg(),
        });
    }
    let mut index: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for p in &polys {
        for (k, _) in p.terms() {
            let n = index.len();
            index.entry(*k).or_insert(n);
        }
    }
    let mut rows = vec![vec![Rational::zero(); polys.len()]; index.len()];
    for (col, p) in polys.iter().enumerate() {
        for (k, c) in p.terms() {
            rows[index[k]][col] = c.clone();
        }
    }
    Ok((rows, aux, vec![false; columns.len()]))
}

fn powers(s: &TruncatedSeries, n: u32, precision: usize) -> Vec<TruncatedSeries> {
    let mut out = vec![TruncatedSeries::constant(Rational::one(), precision)];
    for k in 1..=n as usize {
        let next = out[k - 1].mul(s).truncate(precision);
        out.push(next);
    }
    out
}

/// Pullback coefficients of every column along a germ, modulo `t^order`.
fn pullback_columns(
    x: &TruncatedSeries,
    y: &TruncatedSeries,
    columns: &[Column],
    order: usize,
) -> Vec<TruncatedSeries> {
    let bound = columns.iter().map(|c| c.i.max(c.j)).max().unwrap_or(0);
    let xp = powers(x, bound, order);
    let yp = powers(y, bound, order);
    let dx = x.derivative();
    let dy = y.derivative();
    columns
        .iter()
        .map(|c| {
            let m = xp[c.i as usize].mul(&yp[c.j as usize]);
            let v = match c.slot {
                Slot::Dx => m.mul(&dx),
                Slot::Dy => m.mul(&dy),
            };
            v.truncate(order)
        })
        .collect()
}

fn jet_rows(param: &Parametrization, d: &Direction, columns: &[Column], bounds: &SaitoBounds) -> Result<Rows> {
    let m = bounds.jet_order;
    if m == 0 {
        return Err(Error::invalid("jet order must be positive"));
    }
    let (x, y) = param.at_precision(m + 1)?;
    let series = pullback_columns(&x, &y, columns, m);
    let blind: Vec<bool> = series.iter().map(|s| s.is_zero_to_precision()).collect();
    let mut rows: Vec<Vec<Rational>> = (0..m)
        .map(|k| series.iter().map(|s| s.coeffs()[k].clone()).collect())
        .collect();
    for comp in d.components() {
        if let DirectionComponent::Smooth(_) = comp {
            let (gx, gy) = comp.germ(m + 1)?;
            let s = pullback_columns(&gx, &gy, columns, m);
            rows.extend((0..m).map(|k| s.iter().map(|v| v.coeffs()[k].clone()).collect::<Vec<_>>()));
        }
    }
    rows.retain(|r| r.iter().any(|v| !v.is_zero()));
    Ok((rows, 0, blind))
}

/// Outcome of the minimal-valuation search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaitoMinimum {
    pub route: Route,
    pub nu_min: u32,
    /// `ν(S_d)`.
    pub curve_valuation: u64,
    pub certificate: OneForm,
    pub bounds: SaitoBounds,
}

fn minimum_from(system: &TangentSystem, curve: &SaitoCurve, d: &Direction, bounds: &SaitoBounds) -> Result<SaitoMinimum> {
    let nu_sd = curve_valuation(curve, d)?;
    let (col, nu) = system
        .free_columns()
        .into_iter()
        .min_by_key(|&(c, deg)| (deg, std::cmp::Reverse(c)))
        .ok_or_else(|| Error::BoundExhausted("no tangent form within the degree bound; raise the bounds".into()))?;
    if nu as u64 >= nu_sd.max(1) {
        return Err(Error::BoundExhausted(format!(
            "lowest tangent form found has valuation {nu} >= ν(S_d) = {nu_sd}; raise the bounds"
        )));
    }
    Ok(SaitoMinimum {
        route: curve.route(),
        nu_min: nu,
        curve_valuation: nu_sd,
        certificate: system.form_for(col),
        bounds: *bounds,
    })
}

/// Smallest valuation of a form tangent to `S_d` within the bounds, with a
/// certificate realizing it.
pub fn min_saito_valuation(curve: &SaitoCurve, d: &Direction, bounds: &SaitoBounds) -> Result<SaitoMinimum> {
    if bounds.degree_bound == 0 {
        return Err(Error::invalid("degree bound must be positive"));
    }
    let system = TangentSystem::build(curve, d, bounds)?;
    minimum_from(&system, curve, d, bounds)
}

/// Verdict of the Saito criterion on two forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub route: Route,
    pub valuations: (Option<u32>, Option<u32>),
    pub tangent: (bool, bool),
    /// `c` with `ω₁ ∧ ω₂ = c dx ∧ dy`.
    pub wedge: String,
    pub wedge_valuation: Option<u32>,
    pub expected_valuation: u64,
    pub valuation_ok: bool,
    pub vanishes_on_curve: bool,
    /// `c / f_d` on the equation route when the division is exact.
    pub unit: Option<String>,
    pub pass: bool,
    pub verdict: String,
}

fn tangent_on_param(w: &OneForm, param: &Parametrization, d: &Direction, order: usize) -> Result<bool> {
    let (x, y) = param.at_precision(order + 1)?;
    if !vanishes_to(&w.pullback(&x, &y), order)? {
        return Ok(false);
    }
    direction_tangency(w, d, order)
}

fn direction_tangency(w: &OneForm, d: &Direction, order: usize) -> Result<bool> {
    for comp in d.components() {
        let ok = match comp {
            DirectionComponent::XAxis => w.b.terms().all(|((i, _), _)| *i >= 1),
            DirectionComponent::YAxis => w.a.terms().all(|((_, j), _)| *j >= 1),
            DirectionComponent::Smooth(_) => {
                let (gx, gy) = comp.germ(order + 1)?;
                vanishes_to(&w.pullback(&gx, &gy), order)?
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks whether `{ω₁, ω₂}` is a basis of the module of forms tangent to
/// `S_d`: both forms tangent, and `ω₁ ∧ ω₂ = u f_d dx ∧ dy` with `u` a unit.
///
/// On the equation route the quotient is computed exactly. On the
/// parametrization route `c` must vanish on every component to
/// `jet_order - ν(S) + 1` and have valuation `ν(S_d)`.
pub fn check_saito_criterion(
    w1: &OneForm,
    w2: &OneForm,
    curve: &SaitoCurve,
    d: &Direction,
    jet_order: usize,
) -> Result<CriterionReport> {
    let expected = curve_valuation(curve, d)?;
    let c = w1.wedge(w2);
    let wedge_valuation = c.valuation();
    let valuation_ok = wedge_valuation.map(u64::from) == Some(expected);
    let (tangent, vanishes, unit) = match curve {
        SaitoCurve::Equation(e) => {
            let fd = direction_equation(e, d)?;
            let tangent = (w1.is_tangent_to(&fd)?, w2.is_tangent_to(&fd)?);
            let (q, r) = c.div_rem(&fd)?;
            let vanishes = r.is_zero() && !c.is_zero();
            let unit = if vanishes && !q.constant_term().is_zero() {
                Some(q.to_string())
            } else {
                None
            };
            (tangent, vanishes, unit)
        }
        SaitoCurve::Param(param) => {
            if jet_order == 0 {
                return Err(Error::invalid("jet order must be positive"));
            }
            let tangent = (
                tangent_on_param(w1, param, d, jet_order)?,
                tangent_on_param(w2, param, d, jet_order)?,
            );
            let p = param.multiplicity()? as usize;
            let order = (jet_order + 1).saturating_sub(p).max(1);
            let (x, y) = param.at_precision(order + 1)?;
            let mut vanishes = !c.is_zero() && vanishes_to(&c.eval_series(&x, &y), order)?;
            for comp in d.components() {
                vanishes &= match comp {
                    DirectionComponent::XAxis => c.terms().all(|((i, _), _)| *i >= 1),
                    DirectionComponent::YAxis => c.terms().all(|((_, j), _)| *j >= 1),
                    DirectionComponent::Smooth(_) => {
                        let (gx, gy) = comp.germ(order + 1)?;
                        vanishes_to(&c.eval_series(&gx, &gy), order)?
                    }
                };
            }
            (tangent, vanishes, None)
        }
    };
    let pass = tangent.0
        && tangent.1
        && valuation_ok
        && vanishes
        && (curve.route() == Route::Parametrization || unit.is_some());
    let verdict = if pass {
        "basis"
    } else if !(tangent.0 && tangent.1) {
        "not tangent"
    } else if c.is_zero() {
        "dependent forms"
    } else if !vanishes {
        "not a basis: the wedge does not vanish on the curve"
    } else {
        "not a basis: the cofactor is not a unit"
    };
    Ok(CriterionReport {
        route: curve.route(),
        valuations: (w1.valuation(), w2.valuation()),
        tangent,
        wedge: c.to_string(),
        wedge_valuation,
        expected_valuation: expected,
        valuation_ok,
        vanishes_on_curve: vanishes,
        unit,
        pass,
        verdict: verdict.into(),
    })
}

/// A minimal form together with a complementary form making a basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaitoBasis {
    pub minimum: SaitoMinimum,
    pub complement: Option<OneForm>,
    pub criterion: Option<CriterionReport>,
}

/// The minimal form and, searching the kernel vectors by increasing
/// valuation, a second tangent form completing it to a basis.
pub fn saito_basis(curve: &SaitoCurve, d: &Direction, bounds: &SaitoBounds) -> Result<SaitoBasis> {
    let system = TangentSystem::build(curve, d, bounds)?;
    let minimum = minimum_from(&system, curve, d, bounds)?;
    let nu_sd = minimum.curve_valuation as u32;
    let mut free = system.free_columns();
    free.sort_by_key(|&(c, deg)| (deg, std::cmp::Reverse(c)));
    for (col, deg) in free {
        if deg + minimum.nu_min > nu_sd {
            break;
        }
        let w2 = system.form_for(col);
        if w2 == minimum.certificate {
            continue;
        }
        let report = check_saito_criterion(&minimum.certificate, &w2, curve, d, bounds.jet_order)?;
        if report.pass {
            return Ok(SaitoBasis {
                minimum,
                complement: Some(w2),
                criterion: Some(report),
            });
        }
    }
    Ok(SaitoBasis {
        minimum,
        complement: None,
        criterion: None,
    })
}

/// One generic instance compared with `⌊ν(S_d)/2⌋`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericInstance {
    pub seed: u64,
    pub nu_min: u32,
    pub nu_min_doubled: u32,
    pub expected: u64,
    pub stable: bool,
    pub matches: bool,
    pub certificate: OneForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericMinimumReport {
    pub char_exponents: CharExponents,
    pub direction: String,
    pub truncation: usize,
    pub bounds: SaitoBounds,
    pub instances: Vec<GenericInstance>,
    pub all_match: bool,
    /// Seeds where the minimum is strictly below `⌊ν(S_d)/2⌋`: either a
    /// non-generic draw or a defect.
    pub below_expected: Vec<u64>,
}

/// Compares the minimal valuation with `⌊ν(S_d)/2⌋` on a single curve, at the
/// default bounds and at doubled bounds.
pub fn verify_minimum(curve: &SaitoCurve, d: &Direction, seed: u64) -> Result<(GenericInstance, SaitoBounds)> {
    let bounds = default_bounds(curve, d)?;
    let base = min_saito_valuation(curve, d, &bounds)?;
    let doubled = min_saito_valuation(curve, d, &bounds.doubled())?;
    let expected = base.curve_valuation / 2;
    Ok((
        GenericInstance {
            seed,
            nu_min: base.nu_min,
            nu_min_doubled: doubled.nu_min,
            expected,
            stable: base.nu_min == doubled.nu_min,
            matches: u64::from(base.nu_min) == expected && base.nu_min == doubled.nu_min,
            certificate: base.certificate,
        },
        bounds,
    ))
}

/// Runs [`verify_minimum`] on seeded generic members of a class.
pub fn verify_generic_minimum(chars: &CharExponents, d: &Direction, seeds: &[u64]) -> Result<GenericMinimumReport> {
    let truncation = chars.default_truncation();
    let mut instances = Vec::new();
    let mut bounds = None;
    for &seed in seeds {
        let param = generic_parametrization(chars, seed, truncation)?;
        let (inst, b) = verify_minimum(&SaitoCurve::Param(param), d, seed)?;
        bounds.get_or_insert(b);
        instances.push(inst);
    }
    let below_expected = instances
        .iter()
        .filter(|i| u64::from(i.nu_min) < i.expected)
        .map(|i| i.seed)
        .collect();
    Ok(GenericMinimumReport {
        char_exponents: chars.clone(),
        direction: d.to_string(),
        truncation,
        bounds: bounds.unwrap_or(SaitoBounds {
            degree_bound: 0,
            jet_order: 0,
        }),
        all_match: instances.iter().all(|i| i.matches),
        instances,
        below_expected,
    })
}
