//! Kempe factorization of tableaux into lowest-degree tableaux.
//!
//! A tableau of weight `k·(1, ..., 1)` is read as a `k`-regular multigraph
//! with one edge per column. A perfect matching of the doubled bipartite
//! graph yields a 2-regular subgraph; Plücker moves merge its odd cycles in
//! pairs, after which alternate edges of every cycle peel off one perfect
//! matching. Repeating on the remainder writes the tableau as a signed sum of
//! products of `k` perfect matchings. General weights are handled by splitting
//! each label `i` into `r_i` labels upstairs and pushing the result back down.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lincomb::LinearCombination;
use crate::straighten::{Column, ColumnProduct};
use crate::tableau::{Entry, Tableau, Weights};

/// Order-preserving map from `|r|` upstairs labels onto `n` labels,
/// sending `r_i` consecutive labels to `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMap {
    weights: Weights,
    down: Vec<Entry>,
    block_start: Vec<Entry>,
}

impl SplitMap {
    pub fn new(weights: &Weights) -> Self {
        let mut down = Vec::new();
        let mut block_start = Vec::new();
        for (i, &w) in weights.as_slice().iter().enumerate() {
            block_start.push(down.len() as Entry + 1);
            down.extend(std::iter::repeat_n(i as Entry + 1, w as usize));
        }
        Self { weights: weights.clone(), down, block_start }
    }

    pub fn upstairs_len(&self) -> usize {
        self.down.len()
    }

    pub fn map_label(&self, e: Entry) -> Entry {
        self.down[e as usize - 1]
    }

    /// Image of a column product; `None` if a column collapses.
    pub fn push_product(&self, p: &ColumnProduct) -> Option<ColumnProduct> {
        let mut cols = Vec::with_capacity(p.degree());
        for &(i, j) in p.columns() {
            let (a, b) = (self.map_label(i), self.map_label(j));
            if a == b {
                return None;
            }
            cols.push((a, b));
        }
        let out = ColumnProduct::new(self.weights.len(), cols).expect("labels in range");
        Some(if p.is_negative() { out.negate() } else { out })
    }

    /// Semistandard preimage of a tableau of weight `k·r`: the occurrences of
    /// `i`, top row first, are handed out `k` at a time to the labels of block `i`.
    pub fn preimage(&self, t: &Tableau) -> Result<Tableau> {
        let k = t
            .degree_over(&self.weights)
            .ok_or_else(|| Error::InconsistentWeight(format!("{t} is not a multiple of {}", self.weights)))?;
        let cols = self.preimage_product(&ColumnProduct::from_tableau(t), k);
        let (top, bottom) = cols.into_iter().unzip();
        Tableau::new(self.upstairs_len(), top, bottom)
    }

    /// Upstairs columns for a product of content `k·r`, relabelled as in
    /// [`SplitMap::preimage`] with first entries read before second entries.
    fn preimage_product(&self, p: &ColumnProduct, k: usize) -> Vec<Column> {
        let mut used = vec![0usize; self.weights.len()];
        let mut relabel = |e: Entry| {
            let i = e as usize - 1;
            let q = used[i];
            used[i] += 1;
            self.block_start[i] + (q / k) as Entry
        };
        let firsts: Vec<Entry> = p.columns().iter().map(|c| relabel(c.0)).collect();
        let seconds: Vec<Entry> = p.columns().iter().map(|c| relabel(c.1)).collect();
        firsts.into_iter().zip(seconds).collect()
    }
}

/// Pushes an upstairs tableau down; `None` when a column collapses.
pub fn side_split(t: &Tableau, map: &SplitMap) -> Option<Tableau> {
    let mut top = Vec::with_capacity(t.degree());
    let mut bottom = Vec::with_capacity(t.degree());
    for (i, j) in t.columns() {
        let (a, b) = (map.map_label(i), map.map_label(j));
        if a == b {
            return None;
        }
        top.push(a);
        bottom.push(b);
    }
    Some(Tableau::new(map.weights.len(), top, bottom).expect("order-preserving image"))
}

/// Multigraph on labels `1..=n` with one edge per column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauGraph {
    pub n: usize,
    pub edges: Vec<Column>,
}

impl TableauGraph {
    pub fn valence(&self, v: Entry) -> usize {
        self.edges.iter().map(|&(a, b)| usize::from(a == v) + usize::from(b == v)).sum()
    }
}

pub fn tableau_graph(t: &Tableau) -> TableauGraph {
    let mut edges: Vec<Column> = t.columns().collect();
    edges.sort_unstable();
    TableauGraph { n: t.n(), edges }
}

/// One signed product of lowest-degree column products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KempeTerm {
    pub negative: bool,
    pub factors: Vec<ColumnProduct>,
}

/// A tableau written as a signed sum of products of lowest-degree factors.
#[derive(Clone, Debug)]
pub struct KempeFactorization {
    pub weights: Weights,
    /// Weights of the factors: `r` when `|r|` is even, `2r` otherwise.
    pub factor_weights: Weights,
    pub terms: Vec<KempeTerm>,
}

/// A commutative product of tableaux, kept sorted.
pub type TableauMonomial = Vec<Tableau>;

impl KempeFactorization {
    /// Expands every factor in the semistandard basis and multiplies out.
    pub fn expand(&self) -> LinearCombination<TableauMonomial> {
        let mut total = LinearCombination::new();
        for term in &self.terms {
            let mut acc: LinearCombination<TableauMonomial> = LinearCombination::from_term(Vec::new(), 1);
            for f in &term.factors {
                let lc = f.straighten();
                let mut next = LinearCombination::new();
                for (m, c) in acc.iter() {
                    for (t, d) in lc.iter() {
                        let mut key = m.clone();
                        let pos = key.partition_point(|x| x < t);
                        key.insert(pos, t.clone());
                        next.add_term(key, c * d);
                    }
                }
                acc = next;
            }
            let sign = BigInt::from(if term.negative { -1 } else { 1 });
            total.add_scaled(&acc, &sign);
        }
        total
    }
}

/// Factors a tableau of weight `N·r` into tableaux of the lowest degree.
pub fn kempe_factor(t: &Tableau, weights: &Weights) -> Result<KempeFactorization> {
    kempe_factor_product(&ColumnProduct::from_tableau(t), weights)
}

/// As [`kempe_factor`] for any product of columns with content `N·r`.
pub fn kempe_factor_product(p: &ColumnProduct, weights: &Weights) -> Result<KempeFactorization> {
    let degree = product_degree_over(p, weights)
        .ok_or_else(|| Error::InconsistentWeight(format!("content of {p:?} is not a multiple of {weights}")))?;
    let (factor_weights, k) = if weights.total().is_multiple_of(2) {
        (weights.clone(), degree)
    } else {
        if degree % 2 == 1 {
            return Err(Error::InconsistentWeight("odd degree over weights of odd total".into()));
        }
        (weights.scaled(2), degree / 2)
    };
    if p.columns().iter().any(|&(a, b)| a == b) {
        return Ok(KempeFactorization { weights: weights.clone(), factor_weights, terms: Vec::new() });
    }
    let terms = if k <= 1 {
        let factors = if k == 0 { Vec::new() } else { vec![p.clone()] };
        vec![KempeTerm { negative: false, factors }]
    } else {
        let map = SplitMap::new(&factor_weights);
        let up = map.preimage_product(p, k);
        raw_terms(&map, p.is_negative(), factor_regular(up, k))
    };
    Ok(KempeFactorization { weights: weights.clone(), factor_weights, terms })
}

fn raw_terms(map: &SplitMap, negative: bool, raw: Vec<(bool, Vec<Vec<Column>>)>) -> Vec<KempeTerm> {
    raw.into_iter()
        .filter_map(|(neg, matchings)| {
            let factors = matchings
                .into_iter()
                .map(|cols| {
                    let p = ColumnProduct::new(map.upstairs_len(), cols).expect("labels in range");
                    map.push_product(&p)
                })
                .collect::<Option<Vec<_>>>()?;
            Some(KempeTerm { negative: neg ^ negative, factors })
        })
        .collect()
}

fn product_degree_over(p: &ColumnProduct, weights: &Weights) -> Option<usize> {
    if p.n() != weights.len() {
        return None;
    }
    let mut content = vec![0u64; p.n()];
    for &(a, b) in p.columns() {
        content[a as usize - 1] += 1;
        content[b as usize - 1] += 1;
    }
    let total: u64 = content.iter().sum();
    if !total.is_multiple_of(weights.total()) {
        return None;
    }
    let k = total / weights.total();
    content.iter().zip(weights.as_slice()).all(|(&c, &w)| c == k * w as u64).then_some(k as usize)
}

type Split = (bool, Vec<Column>, Vec<Column>);

/// Cycles of a 2-regular multigraph as sequences of edge indices.
fn cycles(cols: &[Column]) -> Vec<Vec<usize>> {
    let max = cols.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0) as usize;
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); max + 1];
    for (e, &(a, b)) in cols.iter().enumerate() {
        incident[a as usize].push(e);
        incident[b as usize].push(e);
    }
    let mut used = vec![false; cols.len()];
    let mut out = Vec::new();
    for v in 0..=max {
        let Some(&start) = incident[v].iter().find(|&&e| !used[e]) else { continue };
        let mut cycle = Vec::new();
        let mut edge = start;
        let mut at = v as Entry;
        loop {
            used[edge] = true;
            cycle.push(edge);
            let (a, b) = cols[edge];
            at = if a == at { b } else { a };
            match incident[at as usize].iter().find(|&&e| !used[e]) {
                Some(&next) => edge = next,
                None => break,
            }
        }
        out.push(cycle);
    }
    out
}

fn undirected((a, b): Column) -> Column {
    (a.min(b), a.max(b))
}

/// Writes a 2-regular product of columns as a signed sum of products of two
/// perfect matchings.
fn split_two_regular(cols: Vec<Column>) -> Vec<Split> {
    let cyc = cycles(&cols);
    let min_vertex = |c: &Vec<usize>| c.iter().map(|&e| undirected(cols[e]).0).min().unwrap();
    let mut odd: Vec<&Vec<usize>> = cyc.iter().filter(|c| c.len() % 2 == 1).collect();
    if odd.is_empty() {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for c in &cyc {
            for (pos, &e) in c.iter().enumerate() {
                if pos % 2 == 0 {
                    a.push(cols[e])
                } else {
                    b.push(cols[e])
                }
            }
        }
        return vec![(false, a, b)];
    }
    odd.sort_by_key(|c| min_vertex(c));
    let pick = |c: &Vec<usize>| *c.iter().min_by_key(|&&e| (undirected(cols[e]), e)).unwrap();
    let (e, f) = (pick(odd[0]), pick(odd[1]));
    let (x1, y1) = cols[e];
    let (x2, y2) = cols[f];
    // p_{x1 y1} p_{x2 y2} = p_{x1 x2} p_{y1 y2} + p_{x1 y2} p_{x2 y1}
    let mut out = Vec::new();
    for (c1, c2) in [((x1, x2), (y1, y2)), ((x1, y2), (x2, y1))] {
        let mut next = cols.clone();
        next[e] = c1;
        next[f] = c2;
        out.extend(split_two_regular(next));
    }
    out
}

/// Perfect matching of the doubled bipartite graph: `assigned[x]` is the
/// column used to match man `x`, together with the woman it reaches.
fn bipartite_matching(cols: &[Column], n: usize) -> Vec<(usize, Entry)> {
    let mut adj: Vec<Vec<(Entry, usize)>> = vec![Vec::new(); n + 1];
    for (e, &(a, b)) in cols.iter().enumerate() {
        adj[a as usize].push((b, e));
        adj[b as usize].push((a, e));
    }
    let mut woman: Vec<Option<(usize, usize)>> = vec![None; n + 1];
    fn augment(
        man: usize,
        adj: &[Vec<(Entry, usize)>],
        woman: &mut [Option<(usize, usize)>],
        seen: &mut [bool],
    ) -> bool {
        for &(w, e) in &adj[man] {
            let w = w as usize;
            if seen[w] {
                continue;
            }
            seen[w] = true;
            let free = match woman[w] {
                None => true,
                Some((other, _)) => augment(other, adj, woman, seen),
            };
            if free {
                woman[w] = Some((man, e));
                return true;
            }
        }
        false
    }
    let vertices: Vec<usize> = (1..=n).filter(|&v| !adj[v].is_empty()).collect();
    for &v in &vertices {
        let mut seen = vec![false; n + 1];
        let ok = augment(v, &adj, &mut woman, &mut seen);
        assert!(ok, "regular bipartite multigraphs have perfect matchings");
    }
    let mut assigned = vec![(usize::MAX, 0 as Entry); n + 1];
    for (w, slot) in woman.iter().enumerate() {
        if let Some((man, e)) = slot {
            assigned[*man] = (*e, w as Entry);
        }
    }
    assigned
}

/// Writes a `k`-regular product of columns as a signed sum of products of
/// `k` perfect matchings.
fn factor_regular(cols: Vec<Column>, k: usize) -> Vec<(bool, Vec<Vec<Column>>)> {
    match k {
        0 => return vec![(false, Vec::new())],
        1 => return vec![(false, vec![cols])],
        2 => {
            return split_two_regular(cols).into_iter().map(|(s, a, b)| (s, vec![a, b])).collect();
        }
        _ => {}
    }
    let n = cols.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0) as usize;
    let assigned = bipartite_matching(&cols, n);
    let mut uses = vec![0u8; cols.len()];
    for &(e, _) in assigned.iter().skip(1) {
        if e != usize::MAX {
            uses[e] += 1;
        }
    }
    // A column matched in both directions is a 2-cycle that the remainder
    // cannot supply twice, so it goes straight into the peeled matching.
    let doubled: Vec<Column> = (0..cols.len()).filter(|&e| uses[e] == 2).map(|e| cols[e]).collect();
    let cycle_part: Vec<Column> = (0..cols.len()).filter(|&e| uses[e] == 1).map(|e| cols[e]).collect();
    let untouched: Vec<Column> = (0..cols.len()).filter(|&e| uses[e] == 0).map(|e| cols[e]).collect();

    let mut out = Vec::new();
    for (neg, peel, keep) in split_two_regular(cycle_part) {
        let mut matching = peel;
        matching.extend(doubled.iter().copied());
        let mut remainder = untouched.clone();
        remainder.extend(keep);
        for (neg2, mut rest) in factor_regular(remainder, k - 1) {
            rest.insert(0, matching.clone());
            out.push((neg ^ neg2, rest));
        }
    }
    out
}
