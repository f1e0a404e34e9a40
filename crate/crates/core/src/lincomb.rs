//! Sparse integer linear combinations over an ordered key type.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A finite formal sum `Σ c_k · k` with nonzero `BigInt` coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearCombination<K: Ord> {
    terms: BTreeMap<K, BigInt>,
}

impl<K: Ord> Default for LinearCombination<K> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinearCombination<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_term(key: K, coeff: impl Into<BigInt>) -> Self {
        let mut lc = Self::new();
        lc.add_term(key, coeff.into());
        lc
    }

    pub fn add_term(&mut self, key: K, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += factor · other`
    pub fn add_scaled(&mut self, other: &Self, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * factor);
        }
    }

    pub fn scaled(&self, factor: &BigInt) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, factor);
        out
    }

    pub fn coeff(&self, key: &K) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigInt)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> LinearCombination<L> {
        let mut out = LinearCombination::new();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Greatest common divisor of the coefficients (zero for the empty sum).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content so the coefficients are coprime.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        let mut out = Self::new();
        for (k, c) in &self.terms {
            out.terms.insert(k.clone(), c / &g);
        }
        out
    }

    pub fn negated(&self) -> Self {
        self.scaled(&-BigInt::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-BigInt::one());
        out
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.values().map(|c| c.abs().bits()).max().unwrap_or(0)
    }
}

impl<K: Ord + Clone> FromIterator<(K, BigInt)> for LinearCombination<K> {
    fn from_iter<I: IntoIterator<Item = (K, BigInt)>>(iter: I) -> Self {
        let mut lc = Self::new();
        for (k, c) in iter {
            lc.add_term(k, c);
        }
        lc
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinearCombination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(k, c)| (k, c.to_string()))).finish()
    }
}

/// Writes `c1·t1 + c2·t2 - ...` using the supplied term printer.
pub fn format_sum<K: Ord>(lc: &LinearCombination<K>, mut term: impl FnMut(&K) -> String) -> String {
    if lc.terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (k, c)) in lc.terms.iter().enumerate() {
        let negative = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let body = term(k);
        if mag.is_one() && !body.is_empty() {
            out.push_str(&body);
        } else if body.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            out.push_str(&format!("{mag}*{body}"));
        }
    }
    out
}
