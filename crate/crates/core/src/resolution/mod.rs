//! Minimal embedded resolution of a branch by point blow-ups, with the
//! proximity matrix, its inverse and the intersection form of the
//! exceptional divisor.

mod engine;
mod matrices;

pub use engine::{resolve, resolve_traced, ResolutionTrace};
pub use matrices::{intersection_report, IntersectionReport};

use serde::Serialize;

/// The affine chart used by a blow-up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    /// `(x, y) = (x', x' y')`; the new divisor is `{x' = 0}`.
    YOverX,
    /// `(x, y) = (x' y', y')`; the new divisor is `{y' = 0}`.
    XOverY,
}

/// One point blow-up of the resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowUpStep {
    /// 1-based index `i` of the center `c_i` and of the divisor `D_i`.
    pub index: usize,
    /// Indices of the earlier divisors through `c_i`, increasing.
    pub center_divisors: Vec<usize>,
    /// Multiplicity of the strict transform at `c_i`.
    pub strict_multiplicity: u64,
    /// Multiplicity at `c_i` of the reduced total transform: the strict
    /// multiplicity plus the number of divisors through `c_i`.
    pub reduced_total_multiplicity: u64,
    pub chart: Chart,
    /// Constant removed from the non-divisor coordinate after the chart map.
    pub translation: String,
}

/// Combinatorial data of the minimal embedded resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionData {
    pub steps: Vec<BlowUpStep>,
    /// `ℰ`: column `i` has 1 on the diagonal and -1 in each row `j` such that
    /// `c_i` lies on (the strict transform of) `D_j`.
    pub proximity: Vec<Vec<i64>>,
    pub proximity_inverse: Vec<Vec<i64>>,
    /// `D_i²` in the final configuration.
    pub self_intersections: Vec<i64>,
    /// Pairs `(i, j)`, `i < j`, of meeting divisors in the final configuration.
    pub edges: Vec<(usize, usize)>,
    /// Truncation order at which the resolution was decided.
    pub truncation: usize,
}

impl ResolutionData {
    /// Number `N` of blow-ups.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn multiplicities(&self) -> Vec<u64> {
        self.steps.iter().map(|s| s.strict_multiplicity).collect()
    }

    pub fn reduced_total_multiplicities(&self) -> Vec<u64> {
        self.steps.iter().map(|s| s.reduced_total_multiplicity).collect()
    }

    /// `n_i`: one more than the number of centers proximate to `D_i`.
    pub fn n_row(&self, i: usize) -> usize {
        1 + self.proximity[i - 1].iter().filter(|&&v| v == -1).count()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges.contains(&(a, b))
    }

    /// Graphviz dual graph: one node per divisor labelled with its
    /// self-intersection, and the strict transform attached to `D_N`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph dual_graph {\n");
        for (i, s) in self.self_intersections.iter().enumerate() {
            out.push_str(&format!("  D{0} [label=\"D{0} ({1})\"];\n", i + 1, s));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("  D{a} -- D{b};\n"));
        }
        if !self.is_empty() {
            out.push_str(&format!("  S [shape=point, xlabel=\"S\"];\n  S -- D{};\n", self.len()));
        }
        out.push_str("}\n");
        out
    }
}
