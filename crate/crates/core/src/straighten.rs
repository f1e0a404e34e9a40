//! Expansion of arbitrary products of 2×2 minors in the semistandard basis.
//!
//! A product of columns is rewritten with the three-term Plücker relation
//! `[a/d][b/c] = [a/c][b/d] - [a/b][c/d]` (`a < b < c < d`) until every
//! term is semistandard. Terms are processed from a maximal one downwards
//! in an order that both rewritten terms strictly decrease, so every
//! intermediate product is visited once with its accumulated coefficient.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lincomb::LinearCombination;
use crate::tableau::{Entry, Tableau};

/// An ordered column `(i, j)` standing for the minor `p_{ij} = -p_{ji}`.
pub type Column = (Entry, Entry);

/// A signed product of columns; not necessarily semistandard.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColumnProduct {
    n: usize,
    negative: bool,
    columns: Vec<Column>,
}

impl ColumnProduct {
    pub fn new(n: usize, columns: Vec<Column>) -> Result<Self> {
        for &(i, j) in &columns {
            for e in [i, j] {
                if e == 0 || e as usize > n {
                    return Err(Error::InvalidTableau(format!("entry {e} outside 1..={n}")));
                }
            }
        }
        Ok(Self { n, negative: false, columns })
    }

    pub fn from_tableau(t: &Tableau) -> Self {
        Self { n: t.n(), negative: false, columns: t.columns().collect() }
    }

    pub fn negate(mut self) -> Self {
        self.negative = !self.negative;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn degree(&self) -> usize {
        self.columns.len()
    }

    /// Orients every column upwards and sorts them; `None` when a column
    /// repeats a label and the product vanishes.
    pub fn normalized(&self) -> Option<(bool, Vec<Column>)> {
        let mut negative = self.negative;
        let mut cols = Vec::with_capacity(self.columns.len());
        for &(i, j) in &self.columns {
            match i.cmp(&j) {
                Ordering::Equal => return None,
                Ordering::Less => cols.push((i, j)),
                Ordering::Greater => {
                    negative = !negative;
                    cols.push((j, i));
                }
            }
        }
        cols.sort_unstable();
        Some((negative, cols))
    }

    /// Semistandard expansion.
    pub fn straighten(&self) -> LinearCombination<Tableau> {
        straighten_sum(self.n, std::iter::once((BigInt::from(1), self.clone())))
    }
}

/// Sorted upright columns ordered so that every straightening step descends:
/// first by the top row in reverse, then by the bottom row.
#[derive(Clone, PartialEq, Eq)]
struct Key(Vec<Column>);

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .iter()
            .map(|c| c.0)
            .cmp(self.0.iter().map(|c| c.0))
            .then_with(|| self.0.iter().map(|c| c.1).cmp(other.0.iter().map(|c| c.1)))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn insert_sorted(cols: &mut Vec<Column>, c: Column) {
    let pos = cols.partition_point(|x| *x < c);
    cols.insert(pos, c);
}

/// Straightens a signed sum of column products on `n` labels.
pub fn straighten_sum(
    n: usize,
    terms: impl IntoIterator<Item = (BigInt, ColumnProduct)>,
) -> LinearCombination<Tableau> {
    let mut queue: BTreeMap<Key, BigInt> = BTreeMap::new();
    let push = |queue: &mut BTreeMap<Key, BigInt>, key: Key, c: BigInt| {
        let slot = queue.entry(key).or_default();
        *slot += c;
    };
    for (c, prod) in terms {
        debug_assert_eq!(prod.n, n);
        if let Some((negative, cols)) = prod.normalized() {
            push(&mut queue, Key(cols), if negative { -c } else { c });
        }
    }
    let mut out = LinearCombination::new();
    while let Some((Key(cols), coeff)) = queue.pop_last() {
        if coeff.is_zero() {
            continue;
        }
        let descent = cols.windows(2).position(|w| w[0].1 > w[1].1);
        let Some(p) = descent else {
            let (top, bottom) = cols.iter().copied().unzip();
            out.add_term(Tableau::from_rows_unchecked(n, top, bottom), coeff);
            continue;
        };
        let (a, d) = cols[p];
        let (b, c) = cols[p + 1];
        debug_assert!(a < b && b < c && c < d);
        let mut rest = cols;
        rest.drain(p..p + 2);

        let mut first = rest.clone();
        insert_sorted(&mut first, (a, c));
        insert_sorted(&mut first, (b, d));
        let mut second = rest;
        insert_sorted(&mut second, (a, b));
        insert_sorted(&mut second, (c, d));
        push(&mut queue, Key(first), coeff.clone());
        push(&mut queue, Key(second), -coeff);
    }
    out
}

/// Straightens the product of several tableaux on the same labels.
pub fn straighten_tableaux<'a>(n: usize, factors: impl IntoIterator<Item = &'a Tableau>) -> LinearCombination<Tableau> {
    let columns: Vec<Column> = factors.into_iter().flat_map(|t| t.columns()).collect();
    straighten_sum(n, std::iter::once((BigInt::from(1), ColumnProduct { n, negative: false, columns })))
}

/// Whether a product of upright columns, read in lexicographic order, is semistandard.
pub fn is_semistandard_product(cols: &[Column]) -> bool {
    let mut sorted = cols.to_vec();
    sorted.sort_unstable();
    sorted.iter().all(|c| c.0 < c.1) && sorted.windows(2).all(|w| w[0].1 <= w[1].1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_square_relation() {
        let prod = ColumnProduct::new(4, vec![(1, 4), (2, 3)]).unwrap();
        let lc = prod.straighten();
        let x = Tableau::parse_with_n("[1 2 / 3 4]", 4).unwrap();
        let y = Tableau::parse_with_n("[1 3 / 2 4]", 4).unwrap();
        assert_eq!(lc.term_count(), 2);
        assert_eq!(lc.coeff(&x), BigInt::from(1));
        assert_eq!(lc.coeff(&y), BigInt::from(-1));
    }

    #[test]
    fn antisymmetry_and_vanishing() {
        let p = ColumnProduct::new(3, vec![(2, 1), (1, 3)]).unwrap();
        let lc = p.straighten();
        let t = Tableau::parse_with_n("[1 1 / 2 3]", 3).unwrap();
        assert_eq!(lc.coeff(&t), BigInt::from(-1));
        assert!(ColumnProduct::new(3, vec![(2, 2)]).unwrap().straighten().is_zero());
    }

    #[test]
    fn semistandard_input_is_fixed() {
        let t = Tableau::parse_with_n("[1 1 2 3 / 2 3 4 4]", 4).unwrap();
        let lc = ColumnProduct::from_tableau(&t).straighten();
        assert_eq!(lc, LinearCombination::from_term(t, 1));
    }
}
