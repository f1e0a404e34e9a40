//! Diagonal-length polytopes and their bijection with semistandard tableaux.
//!
//! A point of the degree-`N` polytope is a vector `d = (d_1, ..., d_{n-1})`
//! with `d_1 = N·r_1`, `d_{n-1} = N·r_n`, and for every `2 <= i <= n-1`
//! the triple `(d_{i-1}, d_i, N·r_i)` satisfying the triangle inequalities.
//! Lattice points additionally have `d_j ≡ N·(r_1 + ... + r_j) (mod 2)`.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tableau::{Entry, Tableau, Weights};

pub type Rational = Ratio<i64>;

/// A diagonal vector together with its degree and weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagonalVector {
    pub d: Vec<i64>,
    #[serde(rename = "N")]
    pub degree: u32,
    pub weights: Weights,
}

impl DiagonalVector {
    pub fn new(d: Vec<i64>, degree: u32, weights: Weights) -> Result<Self> {
        check_lattice_point(&d, &weights, degree)?;
        Ok(Self { d, degree, weights })
    }

    pub fn tableau(&self) -> Tableau {
        tableau_from_diagonal_unchecked(&self.d, &self.weights, self.degree)
    }
}

impl fmt::Display for DiagonalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", format_point(&self.d), self.degree)
    }
}

pub fn format_point(d: &[i64]) -> String {
    let parts: Vec<String> = d.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

fn triangle(x: i64, y: i64, z: i64) -> bool {
    x + y >= z && y + z >= x && z + x >= y
}

/// Membership in the real polytope, without the parity condition.
pub fn is_point(d: &[i64], weights: &Weights, degree: u32) -> bool {
    let n = weights.len();
    let big_n = degree as i64;
    if n < 2 {
        return d.is_empty() && degree == 0;
    }
    if d.len() != n - 1 {
        return false;
    }
    let r = |i: usize| big_n * weights.get(i) as i64;
    if d[0] != r(0) || d[n - 2] != r(n - 1) {
        return false;
    }
    (1..n - 1).all(|i| triangle(d[i - 1], d[i], r(i)))
}

pub fn is_lattice_point(d: &[i64], weights: &Weights, degree: u32) -> bool {
    if !is_point(d, weights, degree) {
        return false;
    }
    let s = weights.prefix_sums();
    d.iter().enumerate().all(|(j, &v)| (v - degree as i64 * s[j + 1]).rem_euclid(2) == 0)
}

pub fn check_lattice_point(d: &[i64], weights: &Weights, degree: u32) -> Result<()> {
    if is_lattice_point(d, weights, degree) {
        Ok(())
    } else {
        Err(Error::NotLatticePoint(format!(
            "{} is not a lattice point of degree {degree} over {weights}",
            format_point(d)
        )))
    }
}

/// Depth-first enumeration in raw (unsorted) order.
fn visit_lattice(weights: &Weights, degree: u32, mut visit: impl FnMut(&[i64])) {
    let n = weights.len();
    if n == 1 {
        if degree == 0 {
            visit(&[]);
        }
        return;
    }
    let big_n = degree as i64;
    let r: Vec<i64> = weights.as_slice().iter().map(|&w| big_n * w as i64).collect();
    let s = weights.prefix_sums();
    // Longest possible diagonal from vertex j back around to the start.
    let mut upper = vec![0i64; n - 1];
    for j in (0..n - 1).rev() {
        upper[j] = r[j + 1..].iter().sum();
    }
    let mut d = vec![0i64; n - 1];
    d[0] = r[0];
    if n == 2 {
        if r[0] == r[1] {
            visit(&d);
        }
        return;
    }
    fn rec(i: usize, d: &mut Vec<i64>, r: &[i64], s: &[i64], upper: &[i64], big_n: i64, visit: &mut dyn FnMut(&[i64])) {
        let n1 = d.len();
        if i == n1 {
            visit(d);
            return;
        }
        let prev = d[i - 1];
        if i == n1 - 1 {
            let last = r[n1];
            let parity_ok = (last - big_n * s[n1]).rem_euclid(2) == 0;
            if parity_ok && triangle(prev, last, r[i]) {
                d[i] = last;
                visit(d);
            }
            return;
        }
        let lo = (prev - r[i]).abs();
        let hi = (prev + r[i]).min(upper[i]);
        let parity = (big_n * s[i + 1]).rem_euclid(2);
        let mut v = lo + (lo - parity).rem_euclid(2);
        while v <= hi {
            d[i] = v;
            rec(i + 1, d, r, s, upper, big_n, visit);
            v += 2;
        }
    }
    rec(1, &mut d, &r, &s, &upper, big_n, &mut visit);
}

/// Number of lattice points of `D(N·r)`.
pub fn count_lattice(weights: &Weights, degree: u32) -> usize {
    let mut count = 0usize;
    visit_lattice(weights, degree, |_| count += 1);
    count
}

/// Lattice points in canonical order: LG-degree of the tableau ascending,
/// ties broken lexicographically on `d`.
pub fn enumerate_lattice(weights: &Weights, degree: u32) -> Vec<Vec<i64>> {
    enumerate_lattice_with(weights, degree, 2).expect("constant 2 is valid")
}

/// As [`enumerate_lattice`] with another LG constant `c >= 2`.
pub fn enumerate_lattice_with(weights: &Weights, degree: u32, c: i64) -> Result<Vec<Vec<i64>>> {
    if c < 2 {
        return Err(Error::InvalidConstant(c));
    }
    let mut pts: Vec<(i64, Vec<i64>)> = Vec::new();
    visit_lattice(weights, degree, |d| {
        let t = tableau_from_diagonal_unchecked(d, weights, degree);
        pts.push((t.lg_degree_unchecked(c), d.to_vec()));
    });
    pts.sort();
    Ok(pts.into_iter().map(|(_, d)| d).collect())
}

/// The semistandard tableau attached to a lattice point.
pub fn tableau_from_diagonal(d: &[i64], weights: &Weights, degree: u32) -> Result<Tableau> {
    check_lattice_point(d, weights, degree)?;
    Ok(tableau_from_diagonal_unchecked(d, weights, degree))
}

fn tableau_from_diagonal_unchecked(d: &[i64], weights: &Weights, degree: u32) -> Tableau {
    let n = weights.len();
    let big_n = degree as i64;
    let s = weights.prefix_sums();
    let lambda = big_n * s[n] / 2;
    let a = |j: usize| if j == n { lambda } else { (big_n * s[j] + d[j - 1]) / 2 };
    let b = |j: usize| if j == n { lambda } else { (big_n * s[j] - d[j - 1]) / 2 };
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    let (mut pa, mut pb) = (0i64, 0i64);
    for j in 1..=n {
        let (aj, bj) = (a(j), b(j));
        top.extend(std::iter::repeat_n(j as Entry, (aj - pa) as usize));
        bottom.extend(std::iter::repeat_n(j as Entry, (bj - pb) as usize));
        pa = aj;
        pb = bj;
    }
    Tableau::from_rows_unchecked(n, top, bottom)
}

/// `d_j = #(top entries <= j) - #(bottom entries <= j)`.
pub fn diagonal_of_tableau(t: &Tableau) -> Vec<i64> {
    let n = t.n();
    let mw = t.multiweight();
    let mut d = Vec::with_capacity(n.saturating_sub(1));
    let mut acc = 0i64;
    for j in 0..n.saturating_sub(1) {
        acc += mw.k1[j] as i64 - mw.k2[j] as i64;
        d.push(acc);
    }
    d
}

/// Row-sum coordinates `a_j`, `b_j` (`j = 1..=n`) with `a_n = b_n = Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GtPattern {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

impl GtPattern {
    pub fn lambda(&self) -> Rational {
        *self.a.last().expect("nonempty pattern")
    }
}

/// `d_j = a_j - b_j` for `j < n`.
pub fn phi(gt: &GtPattern) -> Vec<Rational> {
    let n = gt.a.len();
    (0..n.saturating_sub(1)).map(|j| gt.a[j] - gt.b[j]).collect()
}

/// `a_j = (N s_j + d_j)/2`, `b_j = (N s_j - d_j)/2`, `a_n = b_n = N|r|/2`.
pub fn phi_inv(d: &[Rational], weights: &Weights, degree: u32) -> GtPattern {
    let n = weights.len();
    let s = weights.prefix_sums();
    let big_n = Rational::from_integer(degree as i64);
    let two = Rational::from_integer(2);
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for j in 1..n {
        let ns = big_n * Rational::from_integer(s[j]);
        a.push((ns + d[j - 1]) / two);
        b.push((ns - d[j - 1]) / two);
    }
    let lambda = big_n * Rational::from_integer(s[n]) / two;
    a.push(lambda);
    b.push(lambda);
    GtPattern { a, b }
}

/// Rational row contents `(k1, k2)` obtained by differencing the pattern.
pub fn psi(gt: &GtPattern) -> (Vec<Rational>, Vec<Rational>) {
    let diff = |v: &[Rational]| {
        let mut prev = Rational::from_integer(0);
        v.iter()
            .map(|&x| {
                let out = x - prev;
                prev = x;
                out
            })
            .collect::<Vec<_>>()
    };
    (diff(&gt.a), diff(&gt.b))
}

/// Partial sums of the row contents.
pub fn psi_inv(k1: &[Rational], k2: &[Rational]) -> GtPattern {
    let sums = |v: &[Rational]| {
        let mut acc = Rational::from_integer(0);
        v.iter()
            .map(|&x| {
                acc += x;
                acc
            })
            .collect::<Vec<_>>()
    };
    GtPattern { a: sums(k1), b: sums(k2) }
}

/// Stairstep inequalities for rational row contents of weight `N·r`.
pub fn in_stairstep(k1: &[Rational], k2: &[Rational], weights: &Weights, degree: u32) -> bool {
    let n = weights.len();
    if k1.len() != n || k2.len() != n {
        return false;
    }
    let zero = Rational::from_integer(0);
    if k1.iter().chain(k2).any(|&x| x < zero) || k2[0] != zero || k1[n - 1] != zero {
        return false;
    }
    let big_n = degree as i64;
    for i in 0..n {
        if k1[i] + k2[i] != Rational::from_integer(big_n * weights.get(i) as i64) {
            return false;
        }
    }
    let (mut top, mut bottom) = (zero, zero);
    for i in 0..n {
        bottom += k2[i];
        if bottom > top {
            return false;
        }
        top += k1[i];
    }
    top == bottom
}

/// Top-row counts of labels `2..=n-2`, the injection used for Hilbert bounds.
pub fn top_projection(t: &Tableau) -> Vec<u32> {
    let k1 = t.multiweight().k1;
    let n = k1.len();
    if n < 4 {
        return Vec::new();
    }
    k1[1..n - 2].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(n: usize) -> Weights {
        Weights::ones(n)
    }

    #[test]
    fn square_points() {
        let w = ones(4);
        assert_eq!(enumerate_lattice(&w, 1), vec![vec![1, 0, 1], vec![1, 2, 1]]);
        assert!(is_point(&[1, 1, 1], &w, 1));
        assert!(!is_lattice_point(&[1, 1, 1], &w, 1));
        assert_eq!(tableau_from_diagonal(&[1, 2, 1], &w, 1).unwrap().to_string(), "[1 2 / 3 4]");
        assert_eq!(tableau_from_diagonal(&[1, 0, 1], &w, 1).unwrap().to_string(), "[1 3 / 2 4]");
        assert!(matches!(tableau_from_diagonal(&[1, 1, 1], &w, 1), Err(Error::NotLatticePoint(_))));
    }

    #[test]
    fn gt_pattern_of_x() {
        let w = ones(4);
        let d: Vec<Rational> = [1, 2, 1].iter().map(|&v| Rational::from_integer(v)).collect();
        let gt = phi_inv(&d, &w, 1);
        let ints = |v: &[Rational]| v.iter().map(|x| x.to_integer()).collect::<Vec<_>>();
        assert_eq!(ints(&gt.a), vec![1, 2, 2, 2]);
        assert_eq!(ints(&gt.b), vec![0, 0, 1, 2]);
        assert_eq!(phi(&gt), d);
        let (k1, k2) = psi(&gt);
        assert_eq!(ints(&k1), vec![1, 1, 0, 0]);
        assert_eq!(ints(&k2), vec![0, 0, 1, 1]);
        assert_eq!(psi_inv(&k1, &k2), gt);
    }

    #[test]
    fn small_cases() {
        assert_eq!(count_lattice(&ones(1), 0), 1);
        assert_eq!(count_lattice(&ones(1), 3), 0);
        assert_eq!(count_lattice(&ones(2), 1), 1);
        assert_eq!(count_lattice(&Weights::new(vec![1, 2]).unwrap(), 1), 0);
        assert_eq!(count_lattice(&ones(5), 1), 0);
        assert_eq!(count_lattice(&ones(6), 0), 1);
        assert_eq!(count_lattice(&Weights::new(vec![5, 1, 1, 1]).unwrap(), 2), 0);
    }
}
