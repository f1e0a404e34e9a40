//! Numeric evaluation on random integer `n × 2` matrices.
//!
//! Column `(i, j)` evaluates to the minor `M[i][0]·M[j][1] - M[j][0]·M[i][1]`.
//! Any identity between tableau polynomials must hold on every matrix, so
//! random seeded matrices give an independent check on the algebra.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lincomb::LinearCombination;
use crate::straighten::{Column, ColumnProduct};
use crate::tableau::Tableau;

/// All `2 × 2` minors of one matrix.
#[derive(Clone, Debug)]
pub struct Minors {
    n: usize,
    values: Vec<i64>,
}

impl Minors {
    pub fn new(matrix: &[[i64; 2]]) -> Self {
        let n = matrix.len();
        let mut values = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                values[i * n + j] = matrix[i][0] * matrix[j][1] - matrix[j][0] * matrix[i][1];
            }
        }
        Self { n, values }
    }

    /// A matrix with entries drawn uniformly from `[-9, 9]`.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let m: Vec<[i64; 2]> = (0..n).map(|_| [rng.gen_range(-9..=9), rng.gen_range(-9..=9)]).collect();
        Self::new(&m)
    }

    /// `trials` matrices from a ChaCha stream seeded with `seed`.
    pub fn seeded(n: usize, seed: u64, trials: usize) -> Vec<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..trials).map(|_| Self::random(n, &mut rng)).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn minor(&self, (i, j): Column) -> i64 {
        self.values[(i as usize - 1) * self.n + (j as usize - 1)]
    }

    pub fn columns(&self, cols: impl IntoIterator<Item = Column>) -> BigInt {
        let mut acc = BigInt::one();
        let mut small: i128 = 1;
        for c in cols {
            let v = self.minor(c) as i128;
            if v == 0 {
                return BigInt::zero();
            }
            match small.checked_mul(v) {
                Some(p) if p.unsigned_abs() < (1u128 << 100) => small = p,
                _ => {
                    acc *= small;
                    small = v;
                }
            }
        }
        acc * small
    }

    pub fn tableau(&self, t: &Tableau) -> BigInt {
        self.columns(t.columns())
    }

    pub fn product(&self, p: &ColumnProduct) -> BigInt {
        let v = self.columns(p.columns().iter().copied());
        if p.is_negative() {
            -v
        } else {
            v
        }
    }

    pub fn combination(&self, lc: &LinearCombination<Tableau>) -> BigInt {
        lc.iter().map(|(t, c)| c * self.tableau(t)).sum()
    }
}
