//! Linear algebra for relation bookkeeping.
//!
//! Ranks of large relation spaces are computed modulo the Mersenne prime
//! `2^61 - 1`. A rank mod `p` never exceeds the rank over `Q`, so whenever it
//! reaches the known dimension of the relation space it certifies that the
//! integer vectors span that space over `Q` as well. Small spans are
//! compared exactly over `Q`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, PRIME - 2)
}

pub fn reduce_mod(c: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    let r = ((c % &p) + &p) % &p;
    r.to_u64().expect("residue fits")
}

/// Sparse row echelon form mod `p`, keyed by leading column.
#[derive(Default)]
pub struct SparseEchelon {
    pivots: HashMap<u32, Vec<(u32, u64)>>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a row; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, mut row: Vec<(u32, u64)>) -> bool {
        row.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(u32, u64)> = Vec::with_capacity(row.len());
        for (c, v) in row {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 = (last.1 + v) % PRIME,
                _ => merged.push((c, v % PRIME)),
            }
        }
        merged.retain(|e| e.1 != 0);
        let mut row = merged;
        loop {
            let Some(&(lead, coeff)) = row.first() else { return false };
            match self.pivots.get(&lead) {
                Some(pivot) => row = axpy(&row, pivot, PRIME - coeff),
                None => {
                    let inv = inv_mod(coeff);
                    for e in row.iter_mut() {
                        e.1 = mul_mod(e.1, inv);
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }
}

/// `x + a·y` for sorted sparse rows.
fn axpy(x: &[(u32, u64)], y: &[(u32, u64)], a: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            out.push((y[j].0, mul_mod(y[j].1, a)));
            j += 1;
        } else {
            let v = (x[i].1 + mul_mod(y[j].1, a)) % PRIME;
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank over `Q` of a small dense integer matrix.
pub fn rank_over_q(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|c| BigRational::from_integer(c.clone())).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = &row[col] / &pivot_row[col];
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `C(n, k)` as `u128`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of monomials of degree `k` in `vars` variables.
pub fn monomial_count(vars: u64, k: u64) -> u128 {
    if vars == 0 {
        return u128::from(k == 0);
    }
    binomial(vars + k - 1, k)
}

/// All sorted index tuples of length `k` drawn from `0..vars` with repetition.
pub fn monomials(vars: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(vars: u32, k: usize, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..vars {
            cur.push(v);
            rec(vars, k, v, cur, out);
            cur.pop();
        }
    }
    rec(vars, k, 0, &mut cur, &mut out);
    out
}

/// Upper unitriangular integer matrix stored by sparse columns; the unit
/// diagonal is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentMatrix {
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl UnipotentMatrix {
    /// `columns[j]` lists the strictly-above-diagonal entries of column `j`.
    pub fn from_columns(columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        for (j, col) in columns.iter().enumerate() {
            assert!(col.iter().all(|(i, _)| *i < j), "entries must lie above the diagonal");
        }
        Self { columns }
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> BigInt {
        if i == j {
            return BigInt::one();
        }
        self.columns[j].iter().find(|(r, _)| *r == i).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    /// Solves `C x = b` by back-substitution.
    pub fn solve(&self, b: &[BigInt]) -> Vec<BigInt> {
        let mut residual = b.to_vec();
        let mut x = vec![BigInt::zero(); self.dim()];
        for j in (0..self.dim()).rev() {
            if residual[j].is_zero() {
                continue;
            }
            let v = std::mem::take(&mut residual[j]);
            for (i, c) in &self.columns[j] {
                residual[*i] -= &v * c;
            }
            x[j] = v;
        }
        x
    }

    pub fn inverse(&self) -> UnipotentMatrix {
        let n = self.dim();
        let columns = (0..n)
            .map(|j| {
                let mut e = vec![BigInt::zero(); n];
                e[j] = BigInt::one();
                self.solve(&e).into_iter().enumerate().filter(|(i, c)| *i != j && !c.is_zero()).collect()
            })
            .collect();
        UnipotentMatrix { columns }
    }

    pub fn mul(&self, other: &UnipotentMatrix) -> Vec<Vec<BigInt>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| (i..=j).map(|k| self.entry(i, k) * other.entry(k, j)).sum()).collect()).collect()
    }

    pub fn max_entry_bits(&self) -> u64 {
        self.columns.iter().flatten().map(|(_, c)| c.abs().bits()).max().unwrap_or(0)
    }
}
