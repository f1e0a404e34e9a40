//! Two-row semistandard tableaux, their weights and LG-degrees.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Entry of a tableau; labels run over `1..=n`.
pub type Entry = u16;

/// Positive integer side lengths `r = (r_1, ..., r_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Weights(Vec<u32>);

impl Weights {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidWeights("need at least one weight".into()));
        }
        if values.contains(&0) {
            return Err(Error::InvalidWeights(format!("weights must be positive: {values:?}")));
        }
        if values.len() > Entry::MAX as usize {
            return Err(Error::InvalidWeights("too many weights".into()));
        }
        Ok(Self(values))
    }

    /// `(1, 1, ..., 1)` of length `n`.
    pub fn ones(n: usize) -> Self {
        Self(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&v| v as u64).sum()
    }

    pub fn scaled(&self, k: u32) -> Self {
        Self(self.0.iter().map(|&v| v * k).collect())
    }

    pub fn all_even(&self) -> bool {
        self.0.iter().all(|v| v % 2 == 0)
    }

    /// `r / 2` when every entry is even.
    pub fn halved(&self) -> Option<Self> {
        self.all_even().then(|| Self(self.0.iter().map(|v| v / 2).collect()))
    }

    /// Prefix sums `s_0 = 0, s_j = r_1 + ... + r_j`.
    pub fn prefix_sums(&self) -> Vec<i64> {
        let mut s = Vec::with_capacity(self.0.len() + 1);
        s.push(0);
        for &v in &self.0 {
            s.push(s.last().unwrap() + v as i64);
        }
        s
    }

    /// Some side at least as long as all the others together: no stable polygon.
    pub fn violates_polygon_inequality(&self) -> bool {
        let total = self.total();
        self.0.iter().any(|&v| 2 * v as u64 > total)
    }
}

impl TryFrom<Vec<u32>> for Weights {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Weights> for Vec<u32> {
    fn from(w: Weights) -> Self {
        w.0
    }
}

impl FromStr for Weights {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<u32>().map_err(|_| Error::Parse(format!("bad weight entry {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Two-row tableau with weakly increasing rows and strictly increasing columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTableau")]
pub struct Tableau {
    top: Vec<Entry>,
    bottom: Vec<Entry>,
    n: usize,
}

#[derive(Deserialize)]
struct RawTableau {
    top: Vec<Entry>,
    bottom: Vec<Entry>,
    n: usize,
}

impl TryFrom<RawTableau> for Tableau {
    type Error = Error;
    fn try_from(raw: RawTableau) -> Result<Self> {
        Tableau::new(raw.n, raw.top, raw.bottom)
    }
}

impl Tableau {
    pub fn new(n: usize, top: Vec<Entry>, bottom: Vec<Entry>) -> Result<Self> {
        if top.len() != bottom.len() {
            return Err(Error::InvalidTableau(format!("rows have lengths {} and {}", top.len(), bottom.len())));
        }
        for &e in top.iter().chain(&bottom) {
            if e == 0 || e as usize > n {
                return Err(Error::InvalidTableau(format!("entry {e} outside 1..={n}")));
            }
        }
        if top.windows(2).any(|w| w[0] > w[1]) || bottom.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidTableau("rows must weakly increase".into()));
        }
        if top.iter().zip(&bottom).any(|(t, b)| t >= b) {
            return Err(Error::InvalidTableau("columns must strictly increase".into()));
        }
        Ok(Self { top, bottom, n })
    }

    /// Caller guarantees semistandardness.
    pub(crate) fn from_rows_unchecked(n: usize, top: Vec<Entry>, bottom: Vec<Entry>) -> Self {
        debug_assert!(Self::new(n, top.clone(), bottom.clone()).is_ok());
        Self { top, bottom, n }
    }

    pub fn empty(n: usize) -> Self {
        Self { top: Vec::new(), bottom: Vec::new(), n }
    }

    /// Parses `[t1 t2 ... / b1 b2 ...]` with an explicit label count.
    pub fn parse_with_n(s: &str, n: usize) -> Result<Self> {
        let (top, bottom) = parse_rows(s)?;
        Self::new(n, top, bottom)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn top(&self) -> &[Entry] {
        &self.top
    }

    pub fn bottom(&self) -> &[Entry] {
        &self.bottom
    }

    /// Number of columns.
    pub fn degree(&self) -> usize {
        self.top.len()
    }

    pub fn columns(&self) -> impl Iterator<Item = (Entry, Entry)> + '_ {
        self.top.iter().copied().zip(self.bottom.iter().copied())
    }

    /// Number of occurrences of each label.
    pub fn content(&self) -> Vec<u32> {
        let mut c = vec![0u32; self.n];
        for &e in self.top.iter().chain(&self.bottom) {
            c[e as usize - 1] += 1;
        }
        c
    }

    /// Degree `N` with `content = N · r`, if any.
    pub fn degree_over(&self, weights: &Weights) -> Option<usize> {
        if weights.len() != self.n {
            return None;
        }
        let content = self.content();
        let total: u64 = content.iter().map(|&c| c as u64).sum();
        if !total.is_multiple_of(weights.total()) {
            return None;
        }
        let k = total / weights.total();
        content.iter().zip(weights.as_slice()).all(|(&c, &w)| c as u64 == k * w as u64).then_some(k as usize)
    }

    pub fn multiweight(&self) -> MultiWeight {
        let mut k1 = vec![0u32; self.n];
        let mut k2 = vec![0u32; self.n];
        for &e in &self.top {
            k1[e as usize - 1] += 1;
        }
        for &e in &self.bottom {
            k2[e as usize - 1] += 1;
        }
        MultiWeight { k1, k2 }
    }

    /// `Σ top + c · Σ bottom`.
    pub fn lg_degree(&self, c: i64) -> Result<i64> {
        if c < 2 {
            return Err(Error::InvalidConstant(c));
        }
        Ok(self.lg_degree_unchecked(c))
    }

    pub(crate) fn lg_degree_unchecked(&self, c: i64) -> i64 {
        let t: i64 = self.top.iter().map(|&e| e as i64).sum();
        let b: i64 = self.bottom.iter().map(|&e| e as i64).sum();
        t + c * b
    }

    /// Row-wise sorted concatenation.
    pub fn star(&self, other: &Tableau) -> Result<Tableau> {
        if self.n != other.n {
            return Err(Error::InconsistentWeight(format!(
                "star product of tableaux on {} and {} labels",
                self.n, other.n
            )));
        }
        let mut top = [self.top.as_slice(), other.top.as_slice()].concat();
        let mut bottom = [self.bottom.as_slice(), other.bottom.as_slice()].concat();
        top.sort_unstable();
        bottom.sort_unstable();
        Ok(Tableau::from_rows_unchecked(self.n, top, bottom))
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[Entry]| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "[{} / {}]", row(&self.top), row(&self.bottom))
    }
}

/// Reads the label count as the largest entry.
impl FromStr for Tableau {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (top, bottom) = parse_rows(s)?;
        let n = top.iter().chain(&bottom).copied().max().unwrap_or(0) as usize;
        Self::new(n, top, bottom)
    }
}

fn parse_rows(s: &str) -> Result<(Vec<Entry>, Vec<Entry>)> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [top / bottom], got {s:?}")))?;
    let (t, b) = inner.split_once('/').ok_or_else(|| Error::Parse(format!("missing '/' in {s:?}")))?;
    let row = |r: &str| {
        r.split_whitespace()
            .map(|p| p.parse::<Entry>().map_err(|_| Error::Parse(format!("bad entry {p:?}"))))
            .collect::<Result<Vec<_>>>()
    };
    Ok((row(t)?, row(b)?))
}

/// Row contents: `k1[i]` copies of `i+1` on top, `k2[i]` on the bottom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiWeight {
    pub k1: Vec<u32>,
    pub k2: Vec<u32>,
}

impl MultiWeight {
    /// Checks the stairstep inequalities that make the rows fit together.
    pub fn validate(&self) -> Result<()> {
        let n = self.k1.len();
        if self.k2.len() != n {
            return Err(Error::InvalidTableau("row weights of different length".into()));
        }
        if n == 0 {
            return Ok(());
        }
        if self.k2[0] != 0 || self.k1[n - 1] != 0 {
            return Err(Error::InvalidTableau("label 1 below or label n on top".into()));
        }
        let (mut top, mut bottom) = (0u64, 0u64);
        for i in 0..n {
            bottom += self.k2[i] as u64;
            if bottom > top {
                return Err(Error::InvalidTableau(format!("stairstep inequality fails at label {}", i + 1)));
            }
            top += self.k1[i] as u64;
        }
        if top != bottom {
            return Err(Error::InvalidTableau("rows of different length".into()));
        }
        Ok(())
    }

    pub fn to_tableau(&self) -> Result<Tableau> {
        self.validate()?;
        let n = self.k1.len();
        let expand = |k: &[u32]| {
            k.iter()
                .enumerate()
                .flat_map(|(i, &c)| std::iter::repeat_n((i + 1) as Entry, c as usize))
                .collect::<Vec<_>>()
        };
        Ok(Tableau::from_rows_unchecked(n, expand(&self.k1), expand(&self.k2)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str, n: usize) -> Tableau {
        Tableau::parse_with_n(s, n).unwrap()
    }

    #[test]
    fn lg_degrees_of_the_square_generators() {
        assert_eq!(t("[1 2 / 3 4]", 4).lg_degree(2).unwrap(), 17);
        assert_eq!(t("[1 3 / 2 4]", 4).lg_degree(2).unwrap(), 16);
        assert_eq!(t("[1 2 / 3 4]", 4).lg_degree(1), Err(Error::InvalidConstant(1)));
    }

    #[test]
    fn star_sorts_rows() {
        let p = t("[1 2 / 3 4]", 4).star(&t("[1 3 / 2 4]", 4)).unwrap();
        assert_eq!(p, t("[1 1 2 3 / 2 3 4 4]", 4));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(Tableau::parse_with_n("[2 1 / 3 4]", 4).is_err());
        assert!(Tableau::parse_with_n("[2 3 / 2 4]", 4).is_err());
        assert!(Tableau::parse_with_n("[1 2 / 3 5]", 4).is_err());
        assert!(Tableau::parse_with_n("[1 2 / 3]", 4).is_err());
    }

    #[test]
    fn multiweight_round_trip() {
        let x = t("[1 1 2 3 / 2 3 4 4]", 4);
        let mw = x.multiweight();
        assert_eq!(mw.k1, vec![2, 1, 1, 0]);
        assert_eq!(mw.k2, vec![0, 1, 1, 2]);
        assert_eq!(mw.to_tableau().unwrap(), x);
        let bad = MultiWeight { k1: vec![1, 0, 0, 0], k2: vec![0, 0, 0, 1] };
        assert!(bad.validate().is_ok());
        let bad = MultiWeight { k1: vec![0, 1, 0, 0], k2: vec![0, 1, 0, 0] };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn display_and_json_round_trip() {
        let x = t("[1 2 / 3 4]", 4);
        assert_eq!(x.to_string(), "[1 2 / 3 4]");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"top":[1,2],"bottom":[3,4],"n":4}"#);
        assert_eq!(serde_json::from_str::<Tableau>(&json).unwrap(), x);
        assert!(serde_json::from_str::<Tableau>(r#"{"top":[2],"bottom":[1],"n":4}"#).is_err());
    }

    #[test]
    fn degree_over_weights() {
        let w = Weights::new(vec![1, 1, 1, 1]).unwrap();
        assert_eq!(t("[1 1 2 3 / 2 3 4 4]", 4).degree_over(&w), Some(2));
        assert_eq!(t("[1 / 2]", 4).degree_over(&w), None);
    }
}
