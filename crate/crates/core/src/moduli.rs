//! Generic dimension of the moduli space of a branch and rigidity.

use num_integer::Integer;
use serde::Serialize;

use crate::curve::{generic_parametrization, CharExponents};
use crate::resolution::{resolve, ResolutionData};
use crate::{Error, Result};

/// `σ(k) = (k-3)²/4` for odd `k`, `(k-2)(k-4)/4` for even `k`.
pub fn sigma(k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::invalid("σ is defined for k >= 1"));
    }
    let k = k as i64;
    let v = if k % 2 == 1 {
        (k - 3) * (k - 3) / 4
    } else {
        (k - 2) * (k - 4) / 4
    };
    Ok(v as u64)
}

/// `(a-1)(a-2)/2 + (b-1)(b-2)/2`, the dimension attached to a basis of
/// logarithmic forms of multiplicities `(a, b)`.
pub fn dimension_pair(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Err(Error::invalid("multiplicities must be positive"));
    }
    let t = |n: u64| (n - 1) * (n.max(2) - 2) / 2;
    Ok(t(a) + t(b))
}

/// `Σ σ(k_i)` over the reduced total multiplicities `k_i` of the centers.
pub fn generic_dimension(res: &ResolutionData) -> Result<u64> {
    res.reduced_total_multiplicities()
        .into_iter()
        .map(|k| {
            if k < 2 {
                Err(Error::math(format!("reduced total multiplicity {k} below 2 at a center")))
            } else {
                sigma(k)
            }
        })
        .sum()
}

/// `σ(n) + (h-1) σ(n+1)` for the semigroup `⟨n, nh+1⟩`.
pub fn closed_form_nh(n: u64, h: u64) -> Result<u64> {
    if n < 2 || h < 1 {
        return Err(Error::invalid("closed form needs n >= 2 and h >= 1"));
    }
    Ok(sigma(n)? + (h - 1) * sigma(n + 1)?)
}

/// Generic dimension of a topological class, computed on a seeded generic
/// member with the default truncation.
pub fn class_dimension(chars: &CharExponents, seed: u64) -> Result<u64> {
    if chars.is_smooth() {
        return Ok(0);
    }
    let param = generic_parametrization(chars, seed, chars.default_truncation())?;
    generic_dimension(&resolve(&param)?)
}

/// Whether a class is rigid according to the classification of rigid
/// branches: multiplicity at most 3, or multiplicity 4 with exponents
/// `(4,5)`, `(4,7)`, or Puiseux pairs `((2,3),(2,2k+1))` with `k >= 3`.
pub fn predicted_rigid(chars: &CharExponents) -> bool {
    let b = chars.betas();
    match b[0] {
        1..=3 => true,
        4 => {
            b == [4, 5] || b == [4, 7] || {
                let pairs = chars.puiseux_pairs();
                pairs.len() == 2
                    && pairs[0] == (2, 3)
                    && pairs[1].0 == 2
                    && pairs[1].1.is_odd()
                    && pairs[1].1 >= 7
            }
        }
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassDimension {
    pub char_exponents: CharExponents,
    pub semigroup: Vec<u64>,
    pub dimension: u64,
    pub rigid: bool,
    pub predicted_rigid: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub max_multiplicity: u64,
    /// Bound on the largest semigroup generator of each enumerated class.
    pub bound: u64,
    pub classes: Vec<ClassDimension>,
    pub rigid: Vec<CharExponents>,
    /// Whether the computed rigid set equals the predicted one.
    pub matches_prediction: bool,
}

/// Every class with `β₀ <= max_mult` whose semigroup generators are all at
/// most `bound`, in lexicographic order of the exponents.
pub fn enumerate_classes(max_mult: u64, bound: u64) -> Vec<CharExponents> {
    fn extend(beta: &mut Vec<u64>, e: u64, gens: &mut Vec<u64>, bound: u64, out: &mut Vec<CharExponents>) {
        let last = *beta.last().unwrap();
        for next in last + 1..=bound {
            let g = e.gcd(&next);
            if g == e {
                continue;
            }
            let gen = if beta.len() == 1 {
                next
            } else {
                let i = beta.len() - 1;
                let e_prev = beta[..i].iter().fold(0u64, |a, b| a.gcd(b));
                e_prev / e * gens[i] + next - beta[i]
            };
            if gen > bound {
                break;
            }
            beta.push(next);
            gens.push(gen);
            if g == 1 {
                out.push(CharExponents::new(beta.clone()).expect("valid by construction"));
            } else {
                extend(beta, g, gens, bound, out);
            }
            beta.pop();
            gens.pop();
        }
    }
    let mut out = Vec::new();
    for b0 in 1..=max_mult {
        if b0 == 1 {
            out.push(CharExponents::new(vec![1]).unwrap());
            continue;
        }
        extend(&mut vec![b0], b0, &mut vec![b0], bound, &mut out);
    }
    out.sort();
    out
}

/// Computes the generic dimension of every enumerated class and compares the
/// rigid ones with the classification.
pub fn classify_rigidity(max_mult: u64, bound: u64) -> Result<RigidityReport> {
    if max_mult == 0 {
        return Err(Error::invalid("maximal multiplicity must be positive"));
    }
    let mut classes = Vec::new();
    for c in enumerate_classes(max_mult, bound) {
        let dimension = class_dimension(&c, 0)?;
        classes.push(ClassDimension {
            semigroup: c.semigroup_generators(),
            rigid: dimension == 0,
            predicted_rigid: predicted_rigid(&c),
            char_exponents: c,
            dimension,
        });
    }
    let rigid: Vec<CharExponents> = classes
        .iter()
        .filter(|c| c.rigid)
        .map(|c| c.char_exponents.clone())
        .collect();
    let matches_prediction = classes.iter().all(|c| c.rigid == c.predicted_rigid);
    Ok(RigidityReport {
        max_multiplicity: max_mult,
        bound,
        classes,
        rigid,
        matches_prediction,
    })
}
