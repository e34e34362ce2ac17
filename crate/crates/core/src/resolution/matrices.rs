use serde::Serialize;

use super::ResolutionData;
use crate::exact::RatMatrix;
use crate::Result;

/// The intersection matrix of `D_1, …, D_N` computed from the blow-up
/// bookkeeping, compared with the four products of the proximity matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub matrix: Vec<Vec<i64>>,
    pub equals_et_e: bool,
    pub equals_minus_et_e: bool,
    pub equals_e_et: bool,
    pub equals_minus_e_et: bool,
    /// The matching product, e.g. `-E*E^T`, or `none`.
    pub convention: String,
}

/// Self-intersections on the diagonal; 1 off the diagonal for meeting pairs.
pub fn intersection_report(res: &ResolutionData) -> Result<IntersectionReport> {
    let n = res.len();
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = res.self_intersections[i];
    }
    for &(a, b) in &res.edges {
        m[a - 1][b - 1] = 1;
        m[b - 1][a - 1] = 1;
    }
    let direct = RatMatrix::from_i64(&m)?;
    let e = RatMatrix::from_i64(&res.proximity)?;
    let ete = e.transpose().mul(&e)?;
    let eet = e.mul(&e.transpose())?;
    let flags = [
        ("E^T*E", direct == ete),
        ("-E^T*E", direct == ete.neg()),
        ("E*E^T", direct == eet),
        ("-E*E^T", direct == eet.neg()),
    ];
    let convention = flags
        .iter()
        .filter(|(_, ok)| *ok)
        .map(|(name, _)| *name)
        .collect::<Vec<_>>()
        .join(",");
    Ok(IntersectionReport {
        matrix: m,
        equals_et_e: flags[0].1,
        equals_minus_et_e: flags[1].1,
        equals_e_et: flags[2].1,
        equals_minus_e_et: flags[3].1,
        convention: if convention.is_empty() { "none".into() } else { convention },
    })
}
