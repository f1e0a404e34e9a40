//! Complete-intersection diagnostics for the equal-weight families.
//!
//! For `r = 1^n` with `n` even the degree-one generators number `C_{n/2}`;
//! for `r = (2, ..., 2)` with `n` odd they number the Riordan number `R(n)`.
//! A complete intersection of quadrics of dimension `d` and codimension `c`
//! has degree `2^c`, which cannot exceed `d!` for these rings. That bound
//! rules out the even family from `n = 8` on; in the odd family the minimal
//! presentation has more quadrics than the codimension from `n = 5` on.

use std::fmt;

use serde::Serialize;

use crate::linalg::binomial;
use crate::polytope::count_lattice;
use crate::presentation::minimal_relations_doubled;
use crate::tableau::Weights;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    /// `1^n`, `n` even.
    EvenOnes,
    /// `(2, ..., 2)`, `n` odd.
    OddTwos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    CompleteIntersection,
    NotCompleteIntersection,
    NotCovered,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::CompleteIntersection => "complete intersection",
            Self::NotCompleteIntersection => "not a complete intersection",
            Self::NotCovered => "criterion not covered for these weights",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CiReport {
    pub weights: Weights,
    pub family: Option<Family>,
    /// Number of degree-one generators.
    pub generators: u64,
    pub dimension: i64,
    pub codimension: i64,
    /// `2^codim`, the degree of a complete intersection of quadrics.
    pub quadric_degree: Option<u128>,
    /// `dim!`.
    pub factorial: Option<u128>,
    /// Minimal quadratic relations, computed for the odd family when small.
    pub relations: Option<usize>,
    pub verdict: Verdict,
}

pub fn catalan(m: u64) -> u128 {
    binomial(2 * m, m) / (m as u128 + 1)
}

/// Riordan numbers: `R(0) = 1`, `R(1) = 0`, `(n+1) R(n) = (n-1) (2 R(n-1) + 3 R(n-2))`.
pub fn riordan(n: u64) -> u128 {
    let (mut a, mut b) = (1u128, 0u128);
    if n == 0 {
        return a;
    }
    for k in 2..=n as u128 {
        let next = (k - 1) * (2 * b + 3 * a) / (k + 1);
        a = b;
        b = next;
    }
    b
}

fn factorial(d: i64) -> Option<u128> {
    (0..=34).contains(&d).then(|| (1..=d as u128).product())
}

/// Largest odd `n` for which the minimal relations are counted explicitly.
const RELATION_COUNT_LIMIT: usize = 7;

pub fn ci_report(weights: &Weights) -> CiReport {
    let n = weights.len();
    let w = weights.as_slice();
    let family = if n.is_multiple_of(2) && w.iter().all(|&x| x == 1) {
        Some(Family::EvenOnes)
    } else if n % 2 == 1 && w.iter().all(|&x| x == 2) {
        Some(Family::OddTwos)
    } else {
        None
    };
    let generators =
        if weights.total().is_multiple_of(2) { count_lattice(weights, 1) } else { count_lattice(weights, 2) } as u64;
    let dimension = n as i64 - 3;
    let codimension = generators as i64 - 1 - dimension;
    let quadric_degree = u32::try_from(codimension).ok().and_then(|c| 2u128.checked_pow(c));
    let factorial = factorial(dimension);
    let mut relations = None;
    let verdict = match family {
        Some(Family::EvenOnes) if n <= 6 => Verdict::CompleteIntersection,
        Some(Family::EvenOnes) => Verdict::NotCompleteIntersection,
        Some(Family::OddTwos) => {
            if n <= RELATION_COUNT_LIMIT {
                let base = Weights::ones(n);
                relations = minimal_relations_doubled(&base).ok().map(|(_, r)| r.len());
            }
            if n <= 3 {
                Verdict::CompleteIntersection
            } else {
                Verdict::NotCompleteIntersection
            }
        }
        None => Verdict::NotCovered,
    };
    CiReport {
        weights: weights.clone(),
        family,
        generators,
        dimension,
        codimension,
        quadric_degree,
        factorial,
        relations,
        verdict,
    }
}

impl fmt::Display for CiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.weights.len();
        match self.family {
            Some(Family::EvenOnes) => writeln!(f, "weights 1^{n}: C_{} = {} generators", n / 2, self.generators)?,
            Some(Family::OddTwos) => writeln!(f, "weights 2^{n}: R({n}) = {} generators", self.generators)?,
            None => writeln!(f, "weights {}: {} generators", self.weights, self.generators)?,
        }
        writeln!(f, "dimension {}, codimension {}", self.dimension, self.codimension)?;
        if let (Some(q), Some(d)) = (self.quadric_degree, self.factorial) {
            let cmp = if q > d { ">" } else { "<=" };
            writeln!(f, "2^{} = {q} {cmp} {d} = {}!", self.codimension, self.dimension)?;
        }
        if let Some(m) = self.relations {
            let cmp = if m as i64 > self.codimension { ">" } else { "<=" };
            writeln!(f, "{} generators, {m} relations; {m} {cmp} {} = codimension", self.generators, self.codimension)?;
        }
        write!(f, "verdict: {}", self.verdict)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequences() {
        assert_eq!((1..=6).map(catalan).collect::<Vec<_>>(), vec![1, 2, 5, 14, 42, 132]);
        assert_eq!((0..=9).map(riordan).collect::<Vec<_>>(), vec![1, 0, 1, 1, 3, 6, 15, 36, 91, 232]);
    }

    #[test]
    fn octagon_fails_degree_bound() {
        let r = ci_report(&Weights::ones(8));
        assert_eq!((r.quadric_degree, r.factorial), (Some(256), Some(120)));
        assert_eq!(r.verdict, Verdict::NotCompleteIntersection);
        assert!(r.to_string().contains("256 > 120"));
    }

    #[test]
    fn pentagon_has_too_many_relations() {
        let r = ci_report(&Weights::new(vec![2; 5]).unwrap());
        assert_eq!((r.generators, r.relations, r.codimension), (6, Some(5), 3));
        assert_eq!(r.verdict, Verdict::NotCompleteIntersection);
    }
}
