//! Topological and analytic descriptions of a plane branch: characteristic
//! exponents, semigroup, Puiseux pairs, conductor, parametrizations and
//! directions.

mod direction;
mod param;

pub use direction::{Direction, DirectionComponent};
pub use param::{generic_parametrization, CurveEquation, Parametrization, PuiseuxForm};

use num_integer::Integer;
use serde::Serialize;
use std::fmt;

use crate::{Error, Result};

/// Characteristic exponents `(β₀; β₁, …, β_g)` of a branch.
///
/// `β₀` is the multiplicity; the gcd chain `e_i = gcd(β₀, …, β_i)` strictly
/// decreases and ends at 1. A smooth branch is `(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CharExponents(Vec<u64>);

impl CharExponents {
    pub fn new(beta: Vec<u64>) -> Result<Self> {
        let Some(&b0) = beta.first() else {
            return Err(Error::invalid("characteristic exponents are empty"));
        };
        if b0 == 0 {
            return Err(Error::invalid("multiplicity must be positive"));
        }
        let mut e = b0;
        for w in beta.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::invalid(format!(
                    "characteristic exponents must increase strictly: {} then {}",
                    w[0], w[1]
                )));
            }
            let next = e.gcd(&w[1]);
            if next == e {
                return Err(Error::invalid(format!(
                    "exponent {} does not lower the gcd {e}",
                    w[1]
                )));
            }
            e = next;
        }
        if e != 1 {
            return Err(Error::invalid(format!("gcd chain ends at {e}, not 1")));
        }
        Ok(CharExponents(beta))
    }

    /// From Puiseux pairs `(e_{i-1}/e_i, β_i/e_i)`.
    pub fn from_pairs(pairs: &[(u64, u64)]) -> Result<Self> {
        if pairs.is_empty() {
            return Ok(CharExponents(vec![1]));
        }
        let g = pairs.len();
        let mut e = vec![1u64; g + 1];
        for i in (0..g).rev() {
            if pairs[i].0 < 2 {
                return Err(Error::invalid("Puiseux pair ramification must be at least 2"));
            }
            e[i] = e[i + 1] * pairs[i].0;
        }
        let mut beta = vec![e[0]];
        for (i, &(_, n)) in pairs.iter().enumerate() {
            beta.push(n * e[i + 1]);
        }
        let c = Self::new(beta)?;
        if c.puiseux_pairs() != pairs {
            return Err(Error::invalid("Puiseux pairs are not in reduced form"));
        }
        Ok(c)
    }

    /// From minimal semigroup generators `β̄₀ < β̄₁ < … < β̄_g`.
    pub fn from_semigroup(gens: &[u64]) -> Result<Self> {
        let Some(&b0) = gens.first() else {
            return Err(Error::invalid("semigroup generators are empty"));
        };
        if gens.len() == 1 {
            return Self::new(vec![b0]);
        }
        let mut beta = vec![b0, gens[1]];
        let mut e = vec![b0, b0.gcd(&gens[1])];
        for i in 1..gens.len() - 1 {
            let n = e[i - 1] / e[i];
            let next = (gens[i + 1] + beta[i])
                .checked_sub(n * gens[i])
                .filter(|&b| b > beta[i])
                .ok_or_else(|| Error::invalid("semigroup generators are not those of a branch"))?;
            beta.push(next);
            e.push(e[i].gcd(&gens[i + 1]));
        }
        let c = Self::new(beta)?;
        if c.semigroup_generators() != gens {
            return Err(Error::invalid("semigroup generators are not those of a branch"));
        }
        Ok(c)
    }

    pub fn betas(&self) -> &[u64] {
        &self.0
    }

    pub fn multiplicity(&self) -> u64 {
        self.0[0]
    }

    /// Number of characteristic exponents after `β₀`.
    pub fn genus(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_smooth(&self) -> bool {
        self.0[0] == 1
    }

    /// `e_0, …, e_g`.
    pub fn gcd_chain(&self) -> Vec<u64> {
        let mut e = vec![self.0[0]];
        for &b in &self.0[1..] {
            let last = *e.last().unwrap();
            e.push(last.gcd(&b));
        }
        e
    }

    /// `β̄₀ = β₀`, `β̄₁ = β₁`, `β̄_{i+1} = (e_{i-1}/e_i) β̄_i + β_{i+1} - β_i`.
    pub fn semigroup_generators(&self) -> Vec<u64> {
        let b = &self.0;
        let e = self.gcd_chain();
        let mut g = vec![b[0]];
        if b.len() > 1 {
            g.push(b[1]);
        }
        for i in 1..b.len().saturating_sub(1) {
            g.push(e[i - 1] / e[i] * g[i] + b[i + 1] - b[i]);
        }
        g
    }

    /// `(e_{i-1}/e_i, β_i/e_i)` for `i = 1..g`.
    pub fn puiseux_pairs(&self) -> Vec<(u64, u64)> {
        let e = self.gcd_chain();
        (1..self.0.len()).map(|i| (e[i - 1] / e[i], self.0[i] / e[i])).collect()
    }

    /// `Σ (n_i - 1) β̄_i - β₀ + 1` with `n_i = e_{i-1}/e_i`; zero when smooth.
    pub fn conductor(&self) -> u64 {
        if self.is_smooth() {
            return 0;
        }
        let e = self.gcd_chain();
        let g = self.semigroup_generators();
        let s: u64 = (1..g.len()).map(|i| (e[i - 1] / e[i] - 1) * g[i]).sum();
        s + 1 - self.0[0]
    }

    /// Default truncation order for series computations: `c + 2β₀`.
    pub fn default_truncation(&self) -> usize {
        (self.conductor() + 2 * self.multiplicity()) as usize
    }

    pub fn semigroup(&self) -> Semigroup {
        Semigroup::new(self.semigroup_generators())
    }
}

impl fmt::Display for CharExponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// A numerical semigroup given by generators with gcd 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semigroup {
    generators: Vec<u64>,
    member: Vec<bool>,
    conductor: u64,
}

impl Semigroup {
    pub fn new(generators: Vec<u64>) -> Self {
        let g = generators.iter().fold(0u64, |a, b| a.gcd(b));
        assert_eq!(g, 1, "semigroup generators must have gcd 1");
        let m = generators.iter().copied().min().unwrap_or(1);
        let mut member = vec![true];
        let mut run = 1u64;
        let mut n = 0u64;
        while run < m {
            n += 1;
            let inside = generators
                .iter()
                .any(|&a| a <= n && member[(n - a) as usize]);
            member.push(inside);
            run = if inside { run + 1 } else { 0 };
        }
        let conductor = n + 1 - run;
        member.truncate(conductor as usize + 1);
        Semigroup {
            generators,
            member,
            conductor,
        }
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.conductor || self.member[n as usize]
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor).filter(|&n| !self.contains(n)).collect()
    }
}
