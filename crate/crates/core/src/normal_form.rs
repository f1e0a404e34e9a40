//! Normal forms of D-matrices under the toric moves.
//!
//! A D-matrix is a list of columns, each a lattice point of degree 1 or 2
//! over the base weights. Its column sum is invariant under the moves
//!
//! * `F2`: two degree-1 columns merge into their sum, appended last;
//! * `F3`: a degree-1 and a degree-2 column become `ξ_3(d)` (earlier slot)
//!   and `d - ξ_3(d)` (later slot), where `d` is their sum;
//! * `F4`: two degree-2 columns become any other degree-2 pair with the same sum.
//!
//! Every class has a unique normal representative, which is built here both
//! directly from the sum and by running the moves.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::{check_lattice_point, enumerate_lattice, format_point, Rational};
use crate::tableau::Weights;

/// `e⁻(x)`: the least even `k` with `k + 1 >= x`.
pub fn round_even_down(x: Rational) -> i64 {
    2 * ((x - 1) / 2).ceil().to_integer()
}

/// `e⁺(x)`: the greatest even `k` with `k - 1 <= x`.
pub fn round_even_up(x: Rational) -> i64 {
    2 * ((x + 1) / 2).floor().to_integer()
}

/// The degree-1 lattice point nearest to `d / (2m+1)` coordinatewise.
pub fn xi_odd(d: &[i64], weights: &Weights, degree: u32) -> Result<Vec<i64>> {
    if degree.is_multiple_of(2) {
        return Err(Error::NotLatticePoint(format!("degree {degree} is not odd")));
    }
    if weights.total() % 2 == 1 {
        return Err(Error::EmptyDomain);
    }
    check_lattice_point(d, weights, degree)?;
    let s = weights.prefix_sums();
    let out: Vec<i64> = d
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let x = Rational::new(v, degree as i64);
            let f = x.floor().to_integer();
            let parity = s[j + 1].rem_euclid(2);
            if (f - parity).rem_euclid(2) == 0 {
                f
            } else {
                f + 1
            }
        })
        .collect();
    debug_assert!(check_lattice_point(&out, weights, 1).is_ok());
    Ok(out)
}

fn r_at(weights: &Weights, i: usize) -> i64 {
    weights.get(i - 1) as i64
}

/// Positions `i ∈ [2, n-1]` where `d_{i-1}/m`, `d_i/m` are odd integers
/// summing to `2 r_i`.
pub fn j0(d: &[i64], weights: &Weights, m: i64) -> Vec<usize> {
    let odd_quotient = |v: i64| v % m == 0 && (v / m).rem_euclid(2) == 1;
    (2..weights.len())
        .filter(|&i| {
            let (x, y) = (d[i - 2], d[i - 1]);
            odd_quotient(x) && odd_quotient(y) && x + y == 2 * m * r_at(weights, i)
        })
        .collect()
}

/// Positions `i ∈ [2, n-1]` with `d_{i-1} <= 2m r_i` and `d_i <= 2m r_i`.
pub fn j1(d: &[i64], weights: &Weights, m: i64) -> Vec<usize> {
    (2..weights.len())
        .filter(|&i| {
            let bound = 2 * m * r_at(weights, i);
            d[i - 2] <= bound && d[i - 1] <= bound
        })
        .collect()
}

/// Whether coordinate `i` (1-based) lies in an odd interval cut out by `j`.
fn odd_interval(j: &[usize], i: usize) -> bool {
    j.iter().filter(|&&x| x <= i).count() % 2 == 1
}

/// Splits a degree-`2m` lattice point as a degree-2 point plus a degree-`(2m-2)`
/// point, using an index set `J` with `J⁰ ⊆ J ⊆ J¹`.
pub fn split_even(d: &[i64], weights: &Weights, m: u32, j: &[usize]) -> Result<(Vec<i64>, Vec<i64>)> {
    if m == 0 {
        return Err(Error::NotLatticePoint("cannot split a degree-0 point".into()));
    }
    check_lattice_point(d, weights, 2 * m)?;
    let mi = m as i64;
    let (lo, hi) = (j0(d, weights, mi), j1(d, weights, mi));
    if j.windows(2).any(|w| w[0] >= w[1]) || !lo.iter().all(|x| j.contains(x)) || !j.iter().all(|x| hi.contains(x)) {
        return Err(Error::InvalidIndexSet(format!("{j:?} is not between {lo:?} and {hi:?}")));
    }
    let mut first = Vec::with_capacity(d.len());
    let mut rest = Vec::with_capacity(d.len());
    for (k, &v) in d.iter().enumerate() {
        let x = Rational::new(v, mi);
        let y = Rational::new((mi - 1) * v, mi);
        if odd_interval(j, k + 1) {
            first.push(round_even_up(x));
            rest.push(round_even_down(y));
        } else {
            first.push(round_even_down(x));
            rest.push(round_even_up(y));
        }
    }
    debug_assert!(check_lattice_point(&first, weights, 2).is_ok());
    debug_assert!(check_lattice_point(&rest, weights, 2 * m - 2).is_ok());
    Ok((first, rest))
}

/// The balanced pair `(f⁻(d), f⁺(d))` of a degree-4 point.
pub fn f_pair(d: &[i64], weights: &Weights) -> Result<(Vec<i64>, Vec<i64>)> {
    let j = j0(d, weights, 2);
    split_even(d, weights, 2, &j)
}

/// The ordered pair `(g⁻(d), g⁺(d))` of a degree-4 point, relative to the
/// index set `j` of the whole matrix.
pub fn g_pair(d: &[i64], j: &[usize]) -> (Vec<i64>, Vec<i64>) {
    let mut lo = Vec::with_capacity(d.len());
    let mut hi = Vec::with_capacity(d.len());
    for (k, &v) in d.iter().enumerate() {
        let x = Rational::new(v, 2);
        let (a, b) = (round_even_down(x), round_even_up(x));
        if odd_interval(j, k + 1) {
            lo.push(b);
            hi.push(a);
        } else {
            lo.push(a);
            hi.push(b);
        }
    }
    (lo, hi)
}

/// One column of a D-matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DColumn {
    pub d: Vec<i64>,
    pub degree: u32,
}

impl DColumn {
    pub fn new(d: Vec<i64>, degree: u32) -> Self {
        Self { d, degree }
    }
}

impl fmt::Display for DColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", format_point(&self.d), self.degree)
    }
}

/// Columns of degree 1 or 2 over fixed base weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DMatrix {
    pub weights: Weights,
    pub columns: Vec<DColumn>,
}

impl DMatrix {
    pub fn new(weights: Weights, columns: Vec<DColumn>) -> Result<Self> {
        for c in &columns {
            if c.degree != 1 && c.degree != 2 {
                return Err(Error::InvalidMatrix(format!("column {c} has degree {}", c.degree)));
            }
            check_lattice_point(&c.d, &weights, c.degree)?;
        }
        Ok(Self { weights, columns })
    }

    pub fn degree(&self) -> u32 {
        self.columns.iter().map(|c| c.degree).sum()
    }

    pub fn sum(&self) -> Vec<i64> {
        column_sum(self.weights.len(), &self.columns)
    }
}

impl fmt::Display for DMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self.columns.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", cols.join(" "))
    }
}

fn column_sum(n: usize, cols: &[DColumn]) -> Vec<i64> {
    let mut s = vec![0i64; n.saturating_sub(1)];
    for c in cols {
        for (a, b) in s.iter_mut().zip(&c.d) {
            *a += b;
        }
    }
    s
}

fn add(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn sub(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

/// All sums `x + y` with `x` in `a` and `y` in `b`.
pub fn minkowski_sum(a: &[Vec<i64>], b: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    a.iter().flat_map(|x| b.iter().map(move |y| x.iter().zip(y).map(|(p, q)| p + q).collect())).collect()
}

/// Whether the lattice points of degree `2m+1` are sums of degree 1 and
/// degree `2m` points (`odd`), and those of degree `2m` are sums of `m`
/// degree-2 points (`even`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinkowskiCheck {
    pub odd: bool,
    pub even: bool,
}

pub fn check_minkowski(weights: &Weights, m: u32) -> MinkowskiCheck {
    let set = |k: u32| enumerate_lattice(weights, k);
    let as_set = |v: Vec<Vec<i64>>| v.into_iter().collect::<BTreeSet<_>>();
    let odd = as_set(set(2 * m + 1)) == minkowski_sum(&set(1), &set(2 * m));
    let two = set(2);
    let mut sum: BTreeSet<Vec<i64>> = [vec![0; weights.len() - 1]].into();
    for _ in 0..m {
        let acc: Vec<Vec<i64>> = sum.into_iter().collect();
        sum = minkowski_sum(&acc, &two);
    }
    MinkowskiCheck { odd, even: as_set(set(2 * m)) == sum }
}

/// The normal D-matrix with column sum `a` (a lattice point of degree `degree`).
pub fn normal_form_of(a: &[i64], weights: &Weights, degree: u32) -> Result<DMatrix> {
    check_lattice_point(a, weights, degree)?;
    let mut columns = Vec::new();
    let mut rest = a.to_vec();
    if degree % 2 == 1 {
        let xi = xi_odd(a, weights, degree)?;
        rest = sub(a, &xi);
        columns.push(DColumn::new(xi, 1));
    }
    let m = (degree / 2) as i64;
    if m > 0 {
        let j = j1(&rest, weights, m);
        let mut even = vec![vec![0i64; rest.len()]; m as usize];
        for (i, &v) in rest.iter().enumerate() {
            let k = 2 * v.div_euclid(2 * m);
            let low_count = ((m * (k + 2) - v) / 2) as usize;
            let m = m as usize;
            for (c, col) in even.iter_mut().enumerate() {
                col[i] = if odd_interval(&j, i + 1) {
                    if c < m - low_count {
                        k + 2
                    } else {
                        k
                    }
                } else if c < low_count {
                    k
                } else {
                    k + 2
                };
            }
        }
        columns.extend(even.into_iter().map(|d| DColumn::new(d, 2)));
    }
    DMatrix::new(weights.clone(), columns)
}

/// Whether the columns of `matrix`, in some order, form the normal representative of its class.
pub fn is_normal(matrix: &DMatrix) -> bool {
    let weights = &matrix.weights;
    let a = matrix.sum();
    let (ones, mut even_part): (Vec<&DColumn>, Vec<&DColumn>) = matrix.columns.iter().partition(|c| c.degree == 1);
    match ones.as_slice() {
        [] => {}
        [first] => match xi_odd(&a, weights, matrix.degree()) {
            Ok(xi) if xi == first.d => {}
            _ => return false,
        },
        _ => return false,
    }
    let m = even_part.len() as i64;
    if m == 0 {
        return true;
    }
    let rest: Vec<i64> = (0..a.len()).map(|i| even_part.iter().map(|c| c.d[i]).sum()).collect();
    let j = j1(&rest, weights, m);
    let sign: Vec<i64> = (0..rest.len()).map(|i| if odd_interval(&j, i + 1) { -1 } else { 1 }).collect();
    even_part.sort_by_key(|c| c.d.iter().zip(&sign).map(|(x, s)| x * s).collect::<Vec<_>>());
    for (i, &v) in rest.iter().enumerate() {
        if even_part.iter().any(|c| (m * c.d[i] - v).abs() >= 2 * m) {
            return false;
        }
        if !even_part.windows(2).all(|w| sign[i] * w[0].d[i] <= sign[i] * w[1].d[i]) {
            return false;
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveKind {
    F2,
    F3,
    F4,
}

/// One move on columns `first < second`. For `F2` the result is the merged
/// column appended at the end; otherwise it replaces the pair in place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    pub first: usize,
    pub second: usize,
    pub result: Vec<DColumn>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub moves: Vec<Move>,
}

impl Trace {
    /// Re-applies every move to `start`, checking each one.
    pub fn replay(&self, start: &DMatrix) -> Result<DMatrix> {
        let mut cols = start.columns.clone();
        for mv in &self.moves {
            apply_move(&start.weights, &mut cols, mv)?;
        }
        Ok(DMatrix { weights: start.weights.clone(), columns: cols })
    }

    pub fn only(&self, kind: MoveKind) -> bool {
        self.moves.iter().all(|m| m.kind == kind)
    }
}

fn bad_move(mv: &Move, why: &str) -> Error {
    Error::InvalidMatrix(format!("{:?} on ({}, {}): {why}", mv.kind, mv.first, mv.second))
}

fn apply_move(weights: &Weights, cols: &mut Vec<DColumn>, mv: &Move) -> Result<()> {
    let (i, j) = (mv.first, mv.second);
    if i >= j || j >= cols.len() {
        return Err(bad_move(mv, "column indices out of range"));
    }
    let sum = add(&cols[i].d, &cols[j].d);
    let degree = cols[i].degree + cols[j].degree;
    match mv.kind {
        MoveKind::F2 => {
            if cols[i].degree != 1 || cols[j].degree != 1 {
                return Err(bad_move(mv, "needs two degree-1 columns"));
            }
            let merged = DColumn::new(sum, 2);
            if mv.result != [merged.clone()] {
                return Err(bad_move(mv, "result is not the merged column"));
            }
            cols.remove(j);
            cols.remove(i);
            cols.push(merged);
        }
        MoveKind::F3 => {
            if degree != 3 {
                return Err(bad_move(mv, "needs a degree-1 and a degree-2 column"));
            }
            let xi = xi_odd(&sum, weights, 3)?;
            let expected = [DColumn::new(xi.clone(), 1), DColumn::new(sub(&sum, &xi), 2)];
            if mv.result != expected {
                return Err(bad_move(mv, "result is not the ξ₃ split"));
            }
            cols[i] = expected[0].clone();
            cols[j] = expected[1].clone();
        }
        MoveKind::F4 => {
            if cols[i].degree != 2 || cols[j].degree != 2 || mv.result.len() != 2 {
                return Err(bad_move(mv, "needs two degree-2 columns"));
            }
            for c in &mv.result {
                if c.degree != 2 {
                    return Err(bad_move(mv, "result columns must have degree 2"));
                }
                check_lattice_point(&c.d, weights, 2)?;
            }
            if add(&mv.result[0].d, &mv.result[1].d) != sum {
                return Err(bad_move(mv, "column sum changed"));
            }
            cols[i] = mv.result[0].clone();
            cols[j] = mv.result[1].clone();
        }
    }
    Ok(())
}

/// Twice the weighted quadratic potential of a pair: degree-1 entries count
/// `2x²`, degree-2 entries `y²`. Balancing moves never raise it.
fn potential(cols: &[&DColumn]) -> i64 {
    cols.iter()
        .map(|c| {
            let w = if c.degree == 1 { 2 } else { 1 };
            c.d.iter().map(|v| w * v * v).sum::<i64>()
        })
        .sum()
}

/// Runs the moves until the matrix is normal; returns it with the trace.
/// A normal input comes back in canonical column order with an empty trace.
pub fn normalize(matrix: &DMatrix) -> Result<(DMatrix, Trace)> {
    let weights = &matrix.weights;
    if is_normal(matrix) {
        let out = if matrix.columns.is_empty() {
            matrix.clone()
        } else {
            normal_form_of(&matrix.sum(), weights, matrix.degree())?
        };
        return Ok((out, Trace::default()));
    }
    let mut cols = matrix.columns.clone();
    let mut trace = Trace::default();
    let mut run = |cols: &mut Vec<DColumn>, mv: Move| -> Result<()> {
        apply_move(weights, cols, &mv)?;
        trace.moves.push(mv);
        Ok(())
    };

    loop {
        let ones: Vec<usize> = (0..cols.len()).filter(|&k| cols[k].degree == 1).collect();
        if ones.len() < 2 {
            break;
        }
        let merged = DColumn::new(add(&cols[ones[0]].d, &cols[ones[1]].d), 2);
        run(&mut cols, Move { kind: MoveKind::F2, first: ones[0], second: ones[1], result: vec![merged] })?;
    }

    let odd = cols.iter().any(|c| c.degree == 1);
    if let Some(p) = cols.iter().position(|c| c.degree == 1) {
        if p != 0 {
            let sum = add(&cols[0].d, &cols[p].d);
            let xi = xi_odd(&sum, weights, 3)?;
            let result = vec![DColumn::new(xi.clone(), 1), DColumn::new(sub(&sum, &xi), 2)];
            run(&mut cols, Move { kind: MoveKind::F3, first: 0, second: p, result })?;
        }
    }
    let start = usize::from(odd);

    loop {
        let mut changed = false;
        if odd {
            for k in 1..cols.len() {
                let sum = add(&cols[0].d, &cols[k].d);
                let xi = xi_odd(&sum, weights, 3)?;
                let result = vec![DColumn::new(xi.clone(), 1), DColumn::new(sub(&sum, &xi), 2)];
                if potential(&[&result[0], &result[1]]) < potential(&[&cols[0], &cols[k]]) {
                    run(&mut cols, Move { kind: MoveKind::F3, first: 0, second: k, result })?;
                    changed = true;
                }
            }
        }
        for p in start..cols.len() {
            for q in p + 1..cols.len() {
                let sum = add(&cols[p].d, &cols[q].d);
                let (lo, hi) = f_pair(&sum, weights)?;
                let result = vec![DColumn::new(lo, 2), DColumn::new(hi, 2)];
                if potential(&[&result[0], &result[1]]) < potential(&[&cols[p], &cols[q]]) {
                    run(&mut cols, Move { kind: MoveKind::F4, first: p, second: q, result })?;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let m = (cols.len() - start) as i64;
    if m > 1 {
        let rest = column_sum(weights.len(), &cols[start..]);
        let j = j1(&rest, weights, m);
        loop {
            let mut changed = false;
            for p in start..cols.len() {
                for q in p + 1..cols.len() {
                    let (lo, hi) = g_pair(&add(&cols[p].d, &cols[q].d), &j);
                    if lo != cols[p].d || hi != cols[q].d {
                        let result = vec![DColumn::new(lo, 2), DColumn::new(hi, 2)];
                        run(&mut cols, Move { kind: MoveKind::F4, first: p, second: q, result })?;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    let out = DMatrix { weights: weights.clone(), columns: cols };
    debug_assert!(is_normal(&out), "moves stopped at a non-normal matrix {out}");
    debug_assert_eq!(Ok(&out), normal_form_of(&matrix.sum(), weights, matrix.degree()).as_ref());
    Ok((out, trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: usize) -> Weights {
        Weights::ones(n)
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn even_rounding() {
        assert_eq!(round_even_down(q(3, 1)), 2);
        assert_eq!(round_even_up(q(3, 1)), 4);
        assert_eq!(round_even_up(q(-1, 1)), 0);
        assert_eq!(round_even_down(q(-1, 1)), -2);
        assert_eq!(round_even_down(q(2, 1)), 2);
        assert_eq!(round_even_up(q(2, 1)), 2);
        assert_eq!(round_even_down(q(5, 2)), 2);
        assert_eq!(round_even_up(q(5, 2)), 2);
    }

    #[test]
    fn xi_of_the_octagon_example() {
        let xi = xi_odd(&[5, 4, 3, 8, 7, 6, 5], &r(8), 5).unwrap();
        assert_eq!(xi, vec![1, 0, 1, 2, 1, 2, 1]);
        assert_eq!(xi_odd(&[2, 2], &Weights::new(vec![1, 1, 1]).unwrap(), 1), Err(Error::EmptyDomain));
    }

    #[test]
    fn index_sets_of_the_octagon_example() {
        assert_eq!(j1(&[4, 4, 2, 6, 6, 4, 4], &r(8), 2), vec![2, 3, 7]);
        let (a, b) = split_even(&[4, 4, 4], &r(4), 2, &[]).unwrap();
        assert_eq!((a, b), (vec![2, 2, 2], vec![2, 2, 2]));
        assert!(matches!(split_even(&[4, 4, 4], &r(4), 2, &[5]), Err(Error::InvalidIndexSet(_))));
    }

    #[test]
    fn octagon_example_normalizes() {
        let cols = |v: &[[i64; 7]], deg: &[u32]| {
            v.iter().zip(deg).map(|(d, &k)| DColumn::new(d.to_vec(), k)).collect::<Vec<_>>()
        };
        let a = DMatrix::new(
            r(8),
            cols(&[[1, 2, 1, 2, 3, 2, 1], [2, 2, 0, 2, 0, 2, 2], [2, 0, 2, 4, 4, 2, 2]], &[1, 2, 2]),
        )
        .unwrap();
        let b = DMatrix::new(
            r(8),
            cols(&[[1, 0, 1, 2, 1, 2, 1], [2, 2, 0, 2, 2, 2, 2], [2, 2, 2, 4, 4, 2, 2]], &[1, 2, 2]),
        )
        .unwrap();
        assert_eq!(a.sum(), vec![5, 4, 3, 8, 7, 6, 5]);
        assert!(!is_normal(&a));
        assert!(is_normal(&b));
        let (nf, trace) = normalize(&a).unwrap();
        assert_eq!(nf, b);
        assert_eq!(trace.replay(&a).unwrap(), b);
    }

    #[test]
    fn pentagon_pair() {
        let w = r(5);
        let m = DMatrix::new(w.clone(), vec![DColumn::new(vec![2, 4, 2, 2], 2), DColumn::new(vec![2, 2, 4, 2], 2)])
            .unwrap();
        let (nf, trace) = normalize(&m).unwrap();
        assert_eq!(nf.columns, vec![DColumn::new(vec![2, 2, 2, 2], 2), DColumn::new(vec![2, 4, 4, 2], 2)]);
        assert!(trace.only(MoveKind::F4));
    }
}
