use serde::{Serialize, Serializer};

use crate::curve::{Direction, Parametrization};
use crate::resolution::{resolve_traced, ResolutionData, ResolutionTrace};
use crate::{Error, Result};

/// Resolves the branch while following the components of `d`.
pub fn trace_with_direction(param: &Parametrization, d: &Direction) -> Result<ResolutionTrace> {
    let trace = resolve_traced(param, d.components())?;
    if trace.data.is_empty() {
        return Err(Error::invalid(
            "the branch is smooth; the combinatorial data needs at least one blow-up",
        ));
    }
    Ok(trace)
}

/// `δ₁` is the number of components of `d`; for `i >= 2`, `δ_i` counts the
/// branches of the total transform of `d` through `c_i`: the divisors through
/// `c_i` and the strict transforms of `d` passing through it.
pub fn delta_sequence(trace: &ResolutionTrace, d: &Direction) -> Result<Vec<usize>> {
    if trace.passes.len() != d.len() {
        return Err(Error::invalid("the trace does not follow the given direction"));
    }
    let steps = &trace.data.steps;
    Ok(steps
        .iter()
        .map(|s| {
            if s.index == 1 {
                d.len()
            } else {
                s.center_divisors.len() + trace.passes.iter().filter(|p| p.contains(&s.index)).count()
            }
        })
        .collect())
}

/// `v_i = ⌊(m_i - δ_i)/2⌋ + 1` with floor division.
pub fn v_vector(res: &ResolutionData, delta: &[usize]) -> Result<Vec<i64>> {
    if delta.len() != res.len() {
        return Err(Error::invalid("δ-sequence length differs from the number of blow-ups"));
    }
    Ok(res
        .multiplicities()
        .iter()
        .zip(delta)
        .map(|(&m, &d)| (m as i64 - d as i64).div_euclid(2) + 1)
        .collect())
}

/// `p = ℰ v`.
pub fn p_vector(res: &ResolutionData, delta: &[usize]) -> Result<Vec<i64>> {
    let v = v_vector(res, delta)?;
    Ok(res
        .proximity
        .iter()
        .map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum())
        .collect())
}

/// Number of components of the strict transform of `d` meeting each `D_i`:
/// `ℰ μ` where `μ_i = 1` when a component passes through `c_i`.
pub fn direction_attachments(trace: &ResolutionTrace) -> Vec<usize> {
    let n = trace.data.len();
    let mut counts = vec![0i64; n];
    for passes in &trace.passes {
        let mu: Vec<i64> = (1..=n).map(|i| passes.contains(&i) as i64).collect();
        for (i, row) in trace.data.proximity.iter().enumerate() {
            counts[i] += row.iter().zip(&mu).map(|(a, b)| a * b).sum::<i64>();
        }
    }
    counts.into_iter().map(|c| c.max(0) as usize).collect()
}

/// Which of the two admissible configurations explains `p_i = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinusOneCase {
    /// `n_i = 2`, `δ_i = 2`, `δ_{i+1} = 1`, `ν(S_i)` odd.
    A,
    /// `n_i = 3`, `δ_i = 2`, `δ_{i+1} = 1`, `ν(S_i)` odd, `q(S_i)` even.
    B,
    /// Neither configuration applies.
    Unexplained,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinusOneEntry {
    pub index: usize,
    pub case: MinusOneCase,
}

/// A connected component of `D̄` and the vertex certifying it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentWitness {
    pub vertices: Vec<usize>,
    /// A vertex with `p_j > 0` or meeting the strict transform of `d`.
    pub witness: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    /// Every `p_i >= -1`.
    pub lower_bound: bool,
    pub minus_one: Vec<MinusOneEntry>,
    /// Indices where the configuration of case (a) or (b) holds but
    /// `p_i != -1`.
    pub unmatched_configurations: Vec<usize>,
    pub prop1: bool,
    /// Adjacent pairs both carrying `-1`.
    pub adjacent_minus_one: Vec<(usize, usize)>,
    pub prop2: bool,
    pub components: Vec<ComponentWitness>,
    pub prop3: bool,
    pub p_last_zero: bool,
    pub all_pass: bool,
}

/// `q(S_i)` in the local model `x = t^p, y = t^q + …` at `c_i` when the two
/// following centers lie on `D_i`: the strict transform at `c_{i+1}` has
/// multiplicity `q - p`.
fn local_q(res: &ResolutionData, i: usize) -> Option<u64> {
    let m = res.multiplicities();
    Some(m[i - 1] + *m.get(i)?)
}

fn case_of(res: &ResolutionData, delta: &[usize], i: usize) -> Option<MinusOneCase> {
    let m = res.multiplicities();
    let n = res.len();
    if i >= n || delta[i - 1] != 2 || delta[i] != 1 || m[i - 1].is_multiple_of(2) {
        return None;
    }
    match res.n_row(i) {
        2 => Some(MinusOneCase::A),
        3 if local_q(res, i)? % 2 == 0 => Some(MinusOneCase::B),
        _ => None,
    }
}

/// Checks the three combinatorial properties of the `p`-vector together with
/// `p_N = 0`.
pub fn check_combinatorial_properties(
    res: &ResolutionData,
    delta: &[usize],
    p: &[i64],
    attachments: &[usize],
) -> Result<PropertyReport> {
    let n = res.len();
    if delta.len() != n || p.len() != n || attachments.len() != n {
        return Err(Error::invalid("vector lengths differ from the number of blow-ups"));
    }
    let lower_bound = p.iter().all(|&v| v >= -1);
    let mut minus_one = Vec::new();
    let mut unmatched_configurations = Vec::new();
    for i in 1..=n {
        let case = case_of(res, delta, i);
        if p[i - 1] == -1 {
            minus_one.push(MinusOneEntry {
                index: i,
                case: case.unwrap_or(MinusOneCase::Unexplained),
            });
        } else if case.is_some() {
            unmatched_configurations.push(i);
        }
    }
    let prop1 = lower_bound
        && unmatched_configurations.is_empty()
        && minus_one.iter().all(|e| e.case != MinusOneCase::Unexplained);

    let adjacent_minus_one: Vec<(usize, usize)> = res
        .edges
        .iter()
        .copied()
        .filter(|&(a, b)| p[a - 1] == -1 && p[b - 1] == -1)
        .collect();
    let prop2 = adjacent_minus_one.is_empty();

    let kept: Vec<bool> = (1..=n).map(|i| i != n && p[i - 1] != -1).collect();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for &(a, b) in &res.edges {
        if kept[a - 1] && kept[b - 1] {
            let (ra, rb) = (find(&mut parent, a - 1), find(&mut parent, b - 1));
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut components: Vec<ComponentWitness> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        if !kept[i] {
            continue;
        }
        let r = find(&mut parent, i);
        let slot = match root_of[r] {
            Some(s) => s,
            None => {
                components.push(ComponentWitness {
                    vertices: Vec::new(),
                    witness: None,
                });
                root_of[r] = Some(components.len() - 1);
                components.len() - 1
            }
        };
        let c = &mut components[slot];
        c.vertices.push(i + 1);
        if c.witness.is_none() && (p[i] > 0 || attachments[i] > 0) {
            c.witness = Some(i + 1);
        }
    }
    let prop3 = components.iter().all(|c| c.witness.is_some());
    let p_last_zero = p.last() == Some(&0);
    Ok(PropertyReport {
        lower_bound,
        all_pass: prop1 && prop2 && prop3 && p_last_zero,
        minus_one,
        unmatched_configurations,
        prop1,
        adjacent_minus_one,
        prop2,
        components,
        prop3,
        p_last_zero,
    })
}

/// The full combinatorial data attached to a branch and a direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaPData {
    pub delta: Vec<usize>,
    pub v: Vec<i64>,
    pub p: Vec<i64>,
    /// Components of the strict transform of `d` meeting each `D_i`.
    pub direction_attachments: Vec<usize>,
    pub property_report: PropertyReport,
}

pub fn delta_p_data(trace: &ResolutionTrace, d: &Direction) -> Result<DeltaPData> {
    let delta = delta_sequence(trace, d)?;
    let v = v_vector(&trace.data, &delta)?;
    let p = p_vector(&trace.data, &delta)?;
    let attachments = direction_attachments(trace);
    let property_report = check_combinatorial_properties(&trace.data, &delta, &p, &attachments)?;
    Ok(DeltaPData {
        delta,
        v,
        p,
        direction_attachments: attachments,
        property_report,
    })
}

/// `p₁` for the branch `x = t^p, y = t^q` (`p < q` coprime) read from the
/// closed-form case analysis, with `n = ⌈q/(q-p)⌉`.
pub fn p1_table_crosscheck(p: u64, q: u64, delta1: usize, delta2: usize) -> Result<i64> {
    if p < 2 || q <= p || num_integer::gcd(p, q) != 1 {
        return Err(Error::invalid("the table needs coprime 2 <= p < q"));
    }
    let n = q.div_ceil(q - p) as i64;
    let (p_odd, q_odd) = (p % 2 == 1, q % 2 == 1);
    if n == 2 {
        let v = match (delta1, delta2) {
            (0, 1) => !p_odd as i64,
            (1, 1) | (2, 2) => 0,
            (1, 2) => p_odd as i64,
            (2, 1) => -(p_odd as i64),
            _ => return Err(Error::invalid("unsupported (δ₁, δ₂)")),
        };
        return Ok(v);
    }
    let by_parity = |even_n: i64, odd_n: i64| if n % 2 == 0 { even_n } else { odd_n };
    let v = match ((delta1, delta2), p_odd, q_odd) {
        ((0, 1), true, true) => 1,
        ((0, 1), false, true) => by_parity((n - 2) / 2, (n - 1) / 2),
        ((0, 1), true, false) => by_parity((n - 2) / 2, (n - 3) / 2),
        ((1, 1), true, true) => 1,
        ((1, 1), false, true) => by_parity((n - 4) / 2, (n - 3) / 2),
        ((1, 1), true, false) => by_parity((n - 2) / 2, (n - 3) / 2),
        ((1, 2), true, true) => 1,
        ((1, 2), false, true) => by_parity((n - 2) / 2, (n - 1) / 2),
        ((1, 2), true, false) => by_parity(n / 2, (n - 1) / 2),
        ((2, 1), true, true) => 0,
        ((2, 1), false, true) => by_parity((n - 4) / 2, (n - 3) / 2),
        ((2, 1), true, false) => by_parity((n - 4) / 2, (n - 5) / 2),
        ((2, 2), true, true) => 0,
        ((2, 2), false, true) => by_parity((n - 2) / 2, (n - 1) / 2),
        ((2, 2), true, false) => by_parity((n - 2) / 2, (n - 3) / 2),
        _ => return Err(Error::invalid("unsupported (δ₁, δ₂)")),
    };
    Ok(v)
}

/// `Σ_{i<N} p_i (ℰ⁻¹)_{1i} + δ₁ - 1` against `⌊ν(S_d)/2⌋`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoliationIdentity {
    pub lhs: i64,
    pub rhs: i64,
    pub equal: bool,
}

pub fn foliation_mult_identity(res: &ResolutionData, delta: &[usize], p: &[i64]) -> Result<FoliationIdentity> {
    let n = res.len();
    if n == 0 || delta.len() != n || p.len() != n {
        return Err(Error::invalid("vector lengths differ from the number of blow-ups"));
    }
    let row = &res.proximity_inverse[0];
    let lhs = (0..n - 1).map(|i| p[i] * row[i]).sum::<i64>() + delta[0] as i64 - 1;
    let nu_sd = res.steps[0].strict_multiplicity as i64 + delta[0] as i64;
    let rhs = nu_sd / 2;
    Ok(FoliationIdentity {
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}

/// Vertex label of the numbered dual tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Numbering {
    Finite(i64),
    Infinite,
}

impl Serialize for Numbering {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Numbering::Finite(v) => s.serialize_i64(*v),
            Numbering::Infinite => s.serialize_str("inf"),
        }
    }
}

impl std::fmt::Display for Numbering {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Numbering::Finite(v) => write!(f, "{v}"),
            Numbering::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeVertex {
    pub index: usize,
    pub number: Numbering,
    pub p: i64,
    pub self_intersection: i64,
    pub direction_attachments: usize,
    /// Whether the strict transform of the branch meets this divisor.
    pub curve_attached: bool,
    /// Dicritical components of the auxiliary foliation: `D_N` and every
    /// `D_i` with `p_i = -1`.
    pub dicritical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumberedDualTree {
    pub vertices: Vec<TreeVertex>,
    pub edges: Vec<(usize, usize)>,
}

pub fn numbered_dual_tree(res: &ResolutionData, p: &[i64], attachments: &[usize]) -> Result<NumberedDualTree> {
    let n = res.len();
    if p.len() != n || attachments.len() != n {
        return Err(Error::invalid("vector lengths differ from the number of blow-ups"));
    }
    let vertices = (1..=n)
        .map(|i| TreeVertex {
            index: i,
            number: if p[i - 1] == -1 {
                Numbering::Infinite
            } else {
                Numbering::Finite(p[i - 1] + attachments[i - 1] as i64)
            },
            p: p[i - 1],
            self_intersection: res.self_intersections[i - 1],
            direction_attachments: attachments[i - 1],
            curve_attached: i == n,
            dicritical: i == n || p[i - 1] == -1,
        })
        .collect();
    Ok(NumberedDualTree {
        vertices,
        edges: res.edges.clone(),
    })
}

impl NumberedDualTree {
    /// Graphviz rendering: one node per divisor labelled `D_i: number`, plus
    /// point nodes for the strict transforms of the branch and of `d`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph numbered_dual_tree {\n");
        for v in &self.vertices {
            let shape = if v.dicritical { "doublecircle" } else { "circle" };
            out.push_str(&format!(
                "  D{} [label=\"D{}: {}\", shape={}];\n",
                v.index, v.index, v.number, shape
            ));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("  D{a} -- D{b};\n"));
        }
        for v in &self.vertices {
            if v.curve_attached {
                out.push_str(&format!("  S [shape=point, xlabel=\"S\"];\n  S -- D{};\n", v.index));
            }
            for k in 0..v.direction_attachments {
                out.push_str(&format!(
                    "  d{}_{} [shape=point, xlabel=\"d\"];\n  d{}_{} -- D{};\n",
                    v.index, k, v.index, k, v.index
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// `(ℰ⁻¹) p = v` exactly.
pub fn round_trip_holds(res: &ResolutionData, p: &[i64], v: &[i64]) -> bool {
    res.proximity_inverse
        .iter()
        .zip(v)
        .all(|(row, &vi)| row.iter().zip(p).map(|(a, b)| a * b).sum::<i64>() == vi)
}
