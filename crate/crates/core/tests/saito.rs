use branchmod::curve::{
    generic_parametrization, CharExponents, CurveEquation, Direction, DirectionComponent, Parametrization,
};
use branchmod::exact::{int, rat, BivariatePoly};
use branchmod::saito::*;

fn poly(terms: &[((u32, u32), i64)]) -> BivariatePoly {
    BivariatePoly::from_terms(terms.iter().map(|(k, c)| (*k, int(*c))))
}

fn data(p: &Parametrization, d: &Direction) -> (branchmod::resolution::ResolutionTrace, DeltaPData) {
    let t = trace_with_direction(p, d).unwrap();
    let dp = delta_p_data(&t, d).unwrap();
    (t, dp)
}

fn diagonal() -> DirectionComponent {
    DirectionComponent::Smooth(Parametrization::polynomial(&[(1, int(1))], &[(1, int(1))], 4))
}

#[test]
fn cusp_delta_and_p() {
    let cusp = Parametrization::monomial(2, 3, 12);
    let (t, dp) = data(&cusp, &Direction::empty());
    assert_eq!(dp.delta, vec![0, 1, 2]);
    assert_eq!(dp.v, vec![2, 1, 0]);
    assert_eq!(dp.p, vec![1, 1, 0]);
    assert!(dp.property_report.all_pass);
    let id = foliation_mult_identity(&t.data, &dp.delta, &dp.p).unwrap();
    assert_eq!((id.lhs, id.rhs), (1, 1));
    let tree = numbered_dual_tree(&t.data, &dp.p, &dp.direction_attachments).unwrap();
    let numbers: Vec<Numbering> = tree.vertices.iter().map(|v| v.number).collect();
    assert_eq!(numbers, vec![Numbering::Finite(1), Numbering::Finite(1), Numbering::Finite(0)]);
    assert!(tree.vertices[2].curve_attached);
    assert!(tree.to_dot().contains("D1 -- D3"));
}

#[test]
fn cusp_delta_depends_on_the_axis() {
    // The line {x=0} is transverse to the cusp and leaves after the first
    // blow-up; the tangent line {y=0} follows it to the second center.
    let cusp = Parametrization::monomial(2, 3, 12);
    assert_eq!(data(&cusp, &Direction::x_axis()).1.delta, vec![1, 1, 2]);
    let y = Direction::new(vec![DirectionComponent::YAxis]).unwrap();
    assert_eq!(data(&cusp, &y).1.delta, vec![1, 2, 2]);
    let (_, dp) = data(&cusp, &Direction::axes());
    assert_eq!(dp.delta, vec![2, 2, 2]);
    assert_eq!(dp.direction_attachments, vec![1, 1, 0]);
}

#[test]
fn y5_x13_has_no_dicritical_interior_vertex() {
    let p = Parametrization::monomial(5, 13, 40);
    let (t, dp) = data(&p, &Direction::empty());
    // c_3 lies on D_2 only, as the third column of the proximity matrix shows.
    assert_eq!(dp.delta, vec![0, 1, 1, 2, 2, 2]);
    assert!(dp.property_report.all_pass);
    let tree = numbered_dual_tree(&t.data, &dp.p, &dp.direction_attachments).unwrap();
    assert_eq!(tree.vertices.len(), 6);
    assert!(tree.vertices.iter().all(|v| v.number != Numbering::Infinite));
}

#[test]
fn three_pair_foliation_identity() {
    let p = Parametrization::polynomial(&[(8, int(1))], &[(20, int(1)), (30, int(1)), (35, int(1))], 64);
    let (t, dp) = data(&p, &Direction::empty());
    let id = foliation_mult_identity(&t.data, &dp.delta, &dp.p).unwrap();
    assert_eq!((id.lhs, id.rhs), (4, 4));
}

/// `p₁` from the expansion along the first row of the proximity matrix for
/// the model branch `(t^p, t^q)`.
fn p1_expanded(p: i64, q: i64, d1: i64, d2: i64) -> i64 {
    let fl = |a: i64| a.div_euclid(2);
    let n = (q + (q - p) - 1) / (q - p);
    if n == 2 {
        return fl(p - d1) - fl(p - d2);
    }
    let mut s = fl(p - d1);
    for j in 2..n {
        let dj = if j == 2 { d2 } else { 2 };
        s -= fl(q - p - dj);
    }
    s - fl((n - 1) * p - (n - 2) * q - 2) - n + 2
}

fn direction_for(d1: usize, d2: usize) -> Direction {
    match (d1, d2) {
        (0, 1) => Direction::empty(),
        (1, 1) => Direction::x_axis(),
        (1, 2) => Direction::new(vec![DirectionComponent::YAxis]).unwrap(),
        (2, 1) => Direction::new(vec![DirectionComponent::XAxis, diagonal()]).unwrap(),
        _ => Direction::axes(),
    }
}

#[test]
fn table_agrees_with_expansion_and_resolution() {
    for p in 2..=9u64 {
        for q in p + 1..=3 * p + 2 {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            for (d1, d2) in [(0, 1), (1, 1), (1, 2), (2, 1), (2, 2)] {
                let table = p1_table_crosscheck(p, q, d1, d2).unwrap();
                assert_eq!(table, p1_expanded(p as i64, q as i64, d1 as i64, d2 as i64), "({p},{q}) δ=({d1},{d2})");
                let d = direction_for(d1, d2);
                let (_, dp) = data(&Parametrization::monomial(p as usize, q as usize, 4 * q as usize), &d);
                assert_eq!(&dp.delta[..2], &[d1, d2]);
                assert_eq!(dp.p[0], table, "({p},{q}) δ=({d1},{d2})");
            }
        }
    }
}

#[test]
fn table_rejects_non_coprime_pairs() {
    assert!(p1_table_crosscheck(4, 6, 0, 1).is_err());
}

#[test]
fn minus_one_is_explained() {
    // p odd, n = 2, δ = (2, 1): p₁ = -1 in configuration (a).
    let d = direction_for(2, 1);
    let (t, dp) = data(&Parametrization::monomial(3, 7, 30), &d);
    assert_eq!(dp.p[0], -1);
    assert_eq!(dp.property_report.minus_one[0].case, MinusOneCase::A);
    assert!(dp.property_report.all_pass);
    let tree = numbered_dual_tree(&t.data, &dp.p, &dp.direction_attachments).unwrap();
    assert_eq!(tree.vertices[0].number, Numbering::Infinite);
    // p odd, q even, n = 3: configuration (b).
    let (_, dp) = data(&Parametrization::monomial(5, 8, 30), &d);
    assert_eq!(dp.p[0], -1);
    assert_eq!(dp.property_report.minus_one[0].case, MinusOneCase::B);
}

#[test]
fn direction_rejects_tangent_pairs() {
    let tangent = DirectionComponent::Smooth(Parametrization::polynomial(&[(1, int(1))], &[(2, int(1))], 4));
    assert!(Direction::new(vec![DirectionComponent::YAxis, tangent]).is_err());
    let cusp = DirectionComponent::Smooth(Parametrization::monomial(2, 3, 6));
    assert!(Direction::new(vec![cusp]).is_err());
}

fn eq(f: BivariatePoly) -> SaitoCurve {
    SaitoCurve::Equation(CurveEquation::new(f).unwrap())
}

fn y6_x7() -> BivariatePoly {
    poly(&[((0, 6), 1), ((7, 0), -1)])
}

#[test]
fn quasi_homogeneous_sextic_has_a_valuation_one_form() {
    let c = eq(y6_x7());
    let b = default_bounds(&c, &Direction::empty()).unwrap();
    let m = min_saito_valuation(&c, &Direction::empty(), &b).unwrap();
    assert_eq!(m.nu_min, 1);
    // Proportional to 6x dy - 7y dx.
    let lin = OneForm::new(m.certificate.a.homogeneous_part(1), m.certificate.b.homogeneous_part(1));
    assert_eq!(lin.a.coeff(0, 1) * int(6), lin.b.coeff(1, 0) * int(-7));
}

#[test]
fn perturbed_sextics() {
    let f2 = poly(&[((0, 6), 1), ((7, 0), -1), ((4, 4), 1)]);
    let f3 = poly(&[((0, 6), 1), ((7, 0), -1), ((5, 2), 1)]);
    for (f, nu) in [(f2, 2), (f3, 3)] {
        let c = eq(f);
        let b = default_bounds(&c, &Direction::empty()).unwrap();
        let basis = saito_basis(&c, &Direction::empty(), &b).unwrap();
        assert_eq!(basis.minimum.nu_min, nu);
        assert!(basis.criterion.unwrap().pass);
        let doubled = min_saito_valuation(&c, &Direction::empty(), &b.doubled()).unwrap();
        assert_eq!(doubled.nu_min, nu);
    }
}

fn euler() -> OneForm {
    OneForm::new(poly(&[((0, 1), -7)]), poly(&[((1, 0), 6)]))
}

#[test]
fn euler_basis_with_unit_minus_42() {
    let c = eq(y6_x7());
    let r = check_saito_criterion(&euler(), &OneForm::exact(&y6_x7()), &c, &Direction::empty(), 0).unwrap();
    assert!(r.pass);
    assert_eq!(r.unit.as_deref(), Some("-42"));
    // The transposed coefficients are not tangent.
    let swapped = OneForm::new(poly(&[((0, 1), -6)]), poly(&[((1, 0), 7)]));
    let r = check_saito_criterion(&swapped, &OneForm::exact(&y6_x7()), &c, &Direction::empty(), 0).unwrap();
    assert!(!r.pass);
    assert!(!r.tangent.0);
}

#[test]
fn degenerate_pair_fails() {
    let c = eq(y6_x7());
    let r = check_saito_criterion(&euler(), &euler(), &c, &Direction::empty(), 0).unwrap();
    assert!(!r.pass);
    assert_eq!(r.verdict, "dependent forms");
}

/// The explicit basis of `y⁶ - x⁷ + x⁴y⁴` written with the Euler form
/// `6x dy - 7y dx`.
pub fn sextic_basis() -> (OneForm, OneForm) {
    let e = euler();
    let w1 = OneForm::new(
        BivariatePoly::monomial(rat(5, 3), 4, 0),
        BivariatePoly::monomial(rat(-20, 21), 2, 3),
    )
    .add(&e.scale_poly(&BivariatePoly::from_terms([((1, 3), rat(8, 21)), ((0, 1), int(1))])));
    let w2 = OneForm::new(
        BivariatePoly::monomial(rat(20, 21), 3, 3),
        BivariatePoly::from_terms([((0, 4), rat(10, 7)), ((1, 6), rat(-80, 147))]),
    )
    .add(&e.scale_poly(&BivariatePoly::from_terms([((2, 0), int(1)), ((0, 6), rat(32, 147))])));
    (w1, w2)
}

#[test]
fn explicit_basis_of_the_perturbed_sextic() {
    let f = poly(&[((0, 6), 1), ((7, 0), -1), ((4, 4), 1)]);
    let (w1, w2) = sextic_basis();
    let r = check_saito_criterion(&w1, &w2, &eq(f), &Direction::empty(), 0).unwrap();
    assert!(r.pass, "{r:?}");
    assert_eq!(r.valuations, (Some(2), Some(3)));
    assert_eq!(r.unit.as_deref(), Some("-10"));
}

#[test]
fn routes_agree_on_monomial_curves() {
    for (a, b) in [(2u32, 3u32), (2, 5), (3, 4), (3, 5), (4, 5)] {
        let f = BivariatePoly::from_terms([((0, a), int(1)), ((b, 0), int(-1))]);
        let e = CurveEquation::new(f).unwrap();
        let param = e.monomial_parametrization(4 * b as usize).unwrap();
        for d in [Direction::empty(), Direction::x_axis(), Direction::axes()] {
            let ce = SaitoCurve::Equation(e.clone());
            let cp = SaitoCurve::Param(param.clone());
            let ne = min_saito_valuation(&ce, &d, &default_bounds(&ce, &d).unwrap()).unwrap();
            let bp = default_bounds(&cp, &d).unwrap();
            let np = min_saito_valuation(&cp, &d, &bp).unwrap();
            assert_eq!(ne.nu_min, np.nu_min, "y^{a}-x^{b} with {d}");
            // The exact certificate is tangent along the parametrization too.
            let r = check_saito_criterion(&ne.certificate, &OneForm::exact(&direction_equation(&e, &d).unwrap()), &cp, &d, bp.jet_order)
                .unwrap();
            assert!(r.tangent.0 && r.tangent.1);
        }
    }
}

#[test]
fn generic_cusp_minimum() {
    let r = verify_generic_minimum(&CharExponents::new(vec![2, 3]).unwrap(), &Direction::empty(), &[0, 1, 2]).unwrap();
    assert!(r.all_match);
    assert!(r.instances.iter().all(|i| i.nu_min == 1));
}

#[test]
fn monomial_sextic_is_below_the_generic_value() {
    let p = Parametrization::monomial(6, 7, 8);
    let (inst, _) = verify_minimum(&SaitoCurve::Param(p), &Direction::empty(), 0).unwrap();
    assert_eq!((inst.nu_min, inst.expected), (1, 3));
}

#[test]
fn generic_class_upper_bound_on_basis() {
    let c = CharExponents::new(vec![3, 4]).unwrap();
    let p = generic_parametrization(&c, 5, c.default_truncation()).unwrap();
    let curve = SaitoCurve::Param(p);
    let d = Direction::x_axis();
    let basis = saito_basis(&curve, &d, &default_bounds(&curve, &d).unwrap()).unwrap();
    let w2 = basis.complement.expect("complement found");
    let nu_sd = basis.minimum.curve_valuation as u32;
    assert!(basis.minimum.nu_min + w2.valuation().unwrap() <= nu_sd);
    assert!(basis.criterion.unwrap().pass);
}
