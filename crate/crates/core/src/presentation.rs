//! Generators and relations for the coordinate ring.
//!
//! Generators of degree 1 and 2 are the semistandard tableaux of weight `r`
//! and `2r`, indexed by lattice points. Every product of two generators that
//! is not a normal monomial is rewritten in the basis of normal monomials:
//! straighten it, then undo the unitriangular change of basis between normal
//! monomials and semistandard tableaux. Degree-2 generators are finally
//! eliminated with their Kempe factorizations.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kempe::kempe_factor;
use crate::linalg::{monomial_count, monomials, reduce_mod, SparseEchelon, UnipotentMatrix};
use crate::lincomb::{format_sum, LinearCombination};
use crate::normal_form::normal_form_of;
use crate::oracle::Minors;
use crate::polytope::{count_lattice, enumerate_lattice_with, tableau_from_diagonal};
use crate::straighten::straighten_tableaux;
use crate::tableau::{Tableau, Weights};

pub type GenId = u32;

/// A commutative monomial in generator ids, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<GenId>);

impl Monomial {
    pub fn new(mut ids: Vec<GenId>) -> Self {
        ids.sort_unstable();
        Self(ids)
    }

    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn ids(&self) -> &[GenId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut ids = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            if j == other.0.len() || (i < self.0.len() && self.0[i] <= other.0[j]) {
                ids.push(self.0[i]);
                i += 1;
            } else {
                ids.push(other.0[j]);
                j += 1;
            }
        }
        Monomial(ids)
    }
}

pub type Polynomial = LinearCombination<Monomial>;

pub fn poly_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut out = Polynomial::new();
    for (m, c) in a.iter() {
        for (n, d) in b.iter() {
            out.add_term(m.mul(n), c * d);
        }
    }
    out
}

fn monomial_times(m: &Monomial, p: &Polynomial) -> Polynomial {
    p.map_keys(|k| m.mul(k))
}

/// Degree-1 and degree-2 generators in canonical order: ids `0..g1` are
/// the degree-1 tableaux, the degree-2 tableaux follow.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    weights: Weights,
    lg_constant: i64,
    tableaux: Vec<Tableau>,
    points: Vec<(u32, Vec<i64>)>,
    g1: usize,
    by_tableau: HashMap<Tableau, GenId>,
    by_point: HashMap<(u32, Vec<i64>), GenId>,
}

impl GeneratorSet {
    pub fn new(weights: &Weights) -> Self {
        Self::with_constant(weights, 2).expect("constant 2 is valid")
    }

    pub fn with_constant(weights: &Weights, lg_constant: i64) -> Result<Self> {
        let p1 = enumerate_lattice_with(weights, 1, lg_constant)?;
        let p2 = enumerate_lattice_with(weights, 2, lg_constant)?;
        let g1 = p1.len();
        let points: Vec<(u32, Vec<i64>)> =
            p1.into_iter().map(|d| (1, d)).chain(p2.into_iter().map(|d| (2, d))).collect();
        let tableaux: Vec<Tableau> =
            points.iter().map(|(k, d)| tableau_from_diagonal(d, weights, *k).expect("enumerated point")).collect();
        let by_tableau = tableaux.iter().enumerate().map(|(i, t)| (t.clone(), i as GenId)).collect();
        let by_point = points.iter().enumerate().map(|(i, p)| (p.clone(), i as GenId)).collect();
        Ok(Self { weights: weights.clone(), lg_constant, tableaux, points, g1, by_tableau, by_point })
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.tableaux.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tableaux.is_empty()
    }

    pub fn g1_len(&self) -> usize {
        self.g1
    }

    pub fn g2_len(&self) -> usize {
        self.tableaux.len() - self.g1
    }

    pub fn degree_one(&self) -> &[Tableau] {
        &self.tableaux[..self.g1]
    }

    pub fn degree_two(&self) -> &[Tableau] {
        &self.tableaux[self.g1..]
    }

    pub fn tableaux(&self) -> &[Tableau] {
        &self.tableaux
    }

    pub fn tableau(&self, id: GenId) -> &Tableau {
        &self.tableaux[id as usize]
    }

    pub fn degree(&self, id: GenId) -> u32 {
        self.points[id as usize].0
    }

    pub fn point(&self, id: GenId) -> &[i64] {
        &self.points[id as usize].1
    }

    pub fn id_of(&self, t: &Tableau) -> Option<GenId> {
        self.by_tableau.get(t).copied()
    }

    pub fn id_of_point(&self, degree: u32, d: &[i64]) -> Option<GenId> {
        self.by_point.get(&(degree, d.to_vec())).copied()
    }
}

/// Semistandard tableaux of weight `k·r` in canonical order.
pub fn semistandard_basis(weights: &Weights, k: u32) -> Vec<Tableau> {
    enumerate_lattice_with(weights, k, 2)
        .expect("constant 2 is valid")
        .iter()
        .map(|d| tableau_from_diagonal(d, weights, k).expect("enumerated point"))
        .collect()
}

/// Everything needed to rewrite degree-`k` products in normal monomials.
struct Level {
    basis_index: HashMap<Tableau, usize>,
    normal: Vec<Monomial>,
    normal_set: HashSet<Monomial>,
    change: UnipotentMatrix,
}

impl Level {
    fn build(gens: &GeneratorSet, k: u32) -> Result<Self> {
        let weights = &gens.weights;
        let points = enumerate_lattice_with(weights, k, gens.lg_constant)?;
        let basis: Vec<Tableau> = points.iter().map(|d| tableau_from_diagonal(d, weights, k)).collect::<Result<_>>()?;
        let basis_index: HashMap<Tableau, usize> = basis.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let normal: Vec<Monomial> = points
            .iter()
            .map(|d| {
                let nf = normal_form_of(d, weights, k)?;
                let ids = nf
                    .columns
                    .iter()
                    .map(|c| gens.id_of_point(c.degree, &c.d).expect("normal columns are generators"))
                    .collect();
                Ok(Monomial::new(ids))
            })
            .collect::<Result<_>>()?;
        let columns: Vec<Vec<(usize, BigInt)>> = normal
            .par_iter()
            .enumerate()
            .map(|(j, m)| {
                let lc = straighten_tableaux(weights.len(), m.ids().iter().map(|&id| gens.tableau(id)));
                let mut col = Vec::with_capacity(lc.term_count());
                for (t, c) in lc.iter() {
                    let i = basis_index[t];
                    if i == j {
                        assert!(c.is_one(), "normal monomial leads with coefficient 1");
                    } else {
                        assert!(i < j, "change of basis must be upper triangular");
                        col.push((i, c.clone()));
                    }
                }
                col
            })
            .collect();
        let normal_set = normal.iter().cloned().collect();
        Ok(Self { basis_index, normal, normal_set, change: UnipotentMatrix::from_columns(columns) })
    }

    /// Coordinates of a product of generators in the normal-monomial basis.
    fn rewrite(&self, gens: &GeneratorSet, m: &Monomial) -> Polynomial {
        let lc = straighten_tableaux(gens.weights.len(), m.ids().iter().map(|&id| gens.tableau(id)));
        let mut b = vec![BigInt::zero(); self.normal.len()];
        for (t, c) in lc.iter() {
            b[self.basis_index[t]] = c.clone();
        }
        self.change
            .solve(&b)
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.normal[i].clone(), c))
            .collect()
    }
}

/// Normal monomials of degree `k` in canonical order.
pub fn normal_monomials(gens: &GeneratorSet, k: u32) -> Result<Vec<Monomial>> {
    Ok(Level::build(gens, k)?.normal)
}

/// Matrix expressing normal monomials of degree `k` in semistandard tableaux.
pub fn change_of_basis(gens: &GeneratorSet, k: u32) -> Result<UnipotentMatrix> {
    Ok(Level::build(gens, k)?.change)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelationKind {
    F2,
    F3,
    F4,
}

impl RelationKind {
    fn of_degree(k: u32) -> Self {
        match k {
            2 => Self::F2,
            3 => Self::F3,
            _ => Self::F4,
        }
    }
}

/// `lhs = rhs`, where `rhs` is a combination of normal monomials.
/// `kempe_form` is `lhs - rhs` rewritten in degree-one generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RelationJson", try_from = "RelationJson")]
pub struct Relation {
    pub kind: RelationKind,
    pub lhs: Monomial,
    pub rhs: Polynomial,
    pub kempe_form: Option<Polynomial>,
}

impl Relation {
    pub fn polynomial(&self) -> Polynomial {
        LinearCombination::from_term(self.lhs.clone(), 1).sub(&self.rhs)
    }

    fn renumber(&self, f: impl Fn(GenId) -> GenId) -> Relation {
        let m = |x: &Monomial| Monomial::new(x.ids().iter().map(|&i| f(i)).collect());
        Relation {
            kind: self.kind,
            lhs: m(&self.lhs),
            rhs: self.rhs.map_keys(m),
            kempe_form: self.kempe_form.as_ref().map(|p| p.map_keys(m)),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffJson {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: CoeffJson,
    monomial: Vec<GenId>,
}

#[derive(Serialize, Deserialize)]
struct RelationJson {
    kind: RelationKind,
    lhs: Vec<GenId>,
    rhs: Vec<TermJson>,
    kempe_form: Option<Vec<TermJson>>,
}

fn terms_to_json(p: &Polynomial) -> Vec<TermJson> {
    p.iter()
        .map(|(m, c)| TermJson {
            coeff: c.to_i64().map_or_else(|| CoeffJson::Big(c.to_string()), CoeffJson::Small),
            monomial: m.ids().to_vec(),
        })
        .collect()
}

fn terms_from_json(terms: Vec<TermJson>) -> Result<Polynomial> {
    terms
        .into_iter()
        .map(|t| {
            let c = match t.coeff {
                CoeffJson::Small(c) => BigInt::from(c),
                CoeffJson::Big(s) => s.parse().map_err(|_| Error::Parse(format!("coefficient {s}")))?,
            };
            Ok((Monomial::new(t.monomial), c))
        })
        .collect()
}

impl From<Relation> for RelationJson {
    fn from(r: Relation) -> Self {
        RelationJson {
            kind: r.kind,
            lhs: r.lhs.0.clone(),
            rhs: terms_to_json(&r.rhs),
            kempe_form: r.kempe_form.as_ref().map(terms_to_json),
        }
    }
}

impl TryFrom<RelationJson> for Relation {
    type Error = Error;

    fn try_from(r: RelationJson) -> Result<Self> {
        Ok(Relation {
            kind: r.kind,
            lhs: Monomial::new(r.lhs),
            rhs: terms_from_json(r.rhs)?,
            kempe_form: r.kempe_form.map(terms_from_json).transpose()?,
        })
    }
}

fn candidate_pairs(gens: &GeneratorSet, k: u32) -> Vec<Monomial> {
    let g1 = gens.g1_len() as GenId;
    let all = gens.len() as GenId;
    let mut out = Vec::new();
    match k {
        2 => {
            for a in 0..g1 {
                for b in a..g1 {
                    out.push(Monomial::new(vec![a, b]));
                }
            }
        }
        3 => {
            for a in 0..g1 {
                for b in g1..all {
                    out.push(Monomial::new(vec![a, b]));
                }
            }
        }
        4 => {
            for a in g1..all {
                for b in a..all {
                    out.push(Monomial::new(vec![a, b]));
                }
            }
        }
        _ => {}
    }
    out
}

fn lifts(gens: &GeneratorSet, level: &Level, k: u32, pairs: &[Monomial]) -> Vec<Relation> {
    pairs
        .par_iter()
        .filter(|m| !level.normal_set.contains(*m))
        .map(|m| Relation {
            kind: RelationKind::of_degree(k),
            lhs: m.clone(),
            rhs: level.rewrite(gens, m),
            kempe_form: None,
        })
        .collect()
}

/// One relation for every non-normal product of two generators of total
/// degree 2, 3 or 4, with ids from `gens`.
pub fn lift_relations_over(gens: &GeneratorSet) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    for k in 2..=4 {
        let pairs = candidate_pairs(gens, k);
        if pairs.is_empty() {
            continue;
        }
        let level = Level::build(gens, k)?;
        out.extend(lifts(gens, &level, k, &pairs));
    }
    Ok(out)
}

/// Lifted relations for `r`. When every weight is even the ring is graded
/// over `r/2` and the relations are the doubled ones, with ids of the
/// degree-1 generators of `r`.
pub fn lift_relations(weights: &Weights) -> Result<Vec<Relation>> {
    match weights.halved() {
        Some(base) => Ok(minimal_relations_doubled(&base)?.1),
        None => lift_relations_over(&GeneratorSet::new(weights)),
    }
}

/// Quadratic relations among the weight-`2b` tableaux, one per non-normal pair.
/// Generator ids index the returned tableaux.
pub fn minimal_relations_doubled(base: &Weights) -> Result<(Vec<Tableau>, Vec<Relation>)> {
    doubled_with_constant(base, 2)
}

fn doubled_with_constant(base: &Weights, c: i64) -> Result<(Vec<Tableau>, Vec<Relation>)> {
    let gens = GeneratorSet::with_constant(base, c)?;
    Ok((gens.degree_two().to_vec(), doubled_relations(&gens)?))
}

/// F4 lifts over the degree-2 generators of `gens`, renumbered from 0.
fn doubled_relations(gens: &GeneratorSet) -> Result<Vec<Relation>> {
    let g1 = gens.g1_len() as GenId;
    let pairs = candidate_pairs(gens, 4);
    if pairs.is_empty() {
        return Ok(Vec::new());
    }
    let level = Level::build(gens, 4)?;
    Ok(lifts(gens, &level, 4, &pairs)
        .into_iter()
        .map(|r| {
            let mut r = r.renumber(|i| i - g1);
            r.kempe_form = Some(r.polynomial());
            r
        })
        .collect())
}

/// Kempe images of the degree-2 generators as quadratic polynomials in the
/// degree-1 generators.
pub fn kempe_images(gens: &GeneratorSet) -> Result<Vec<Polynomial>> {
    gens.degree_two()
        .par_iter()
        .map(|t| {
            let lc = kempe_factor(t, &gens.weights)?.expand();
            let mut p = Polynomial::new();
            for (factors, c) in lc.iter() {
                let ids = factors
                    .iter()
                    .map(|f| {
                        gens.id_of(f)
                            .filter(|&id| gens.degree(id) == 1)
                            .ok_or_else(|| Error::InconsistentWeight(format!("factor {f} is not a generator")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                p.add_term(Monomial::new(ids), c.clone());
            }
            Ok(p)
        })
        .collect()
}

/// Replaces degree-2 generators by their Kempe images.
pub fn substitute(p: &Polynomial, gens: &GeneratorSet, images: &[Polynomial]) -> Polynomial {
    let g1 = gens.g1_len() as GenId;
    let mut out = Polynomial::new();
    for (m, c) in p.iter() {
        let mut acc = Polynomial::from_term(Monomial::one(), c.clone());
        for &id in m.ids() {
            acc = if id < g1 {
                monomial_times(&Monomial(vec![id]), &acc)
            } else {
                poly_mul(&acc, &images[(id - g1) as usize])
            };
        }
        out.add_scaled(&acc, &BigInt::one());
    }
    out
}

/// Hilbert-function bookkeeping in one degree: `free - ideal_rank` must equal
/// the number of lattice points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertCheck {
    pub degree: u32,
    pub free: u128,
    /// Proven lower bound for the rank of the relation ideal in this degree;
    /// `None` when the degree was skipped.
    pub ideal_rank: Option<u128>,
    pub expected: u128,
}

impl HilbertCheck {
    pub fn certified(&self) -> bool {
        self.ideal_rank.is_some_and(|r| self.free - r == self.expected)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    /// No stable polygons: the ring is the ground field.
    Trivial,
    /// Degree-1 generators; degree-2 generators eliminated by Kempe factoring.
    Kempe,
    /// Generated in degree 2 over `base`, regraded.
    Doubled { base: Weights },
}

/// Options for [`presentation_with`].
#[derive(Clone, Debug)]
pub struct Options {
    pub lg_constant: i64,
    /// Highest degree covered by relations and Hilbert checks (at most 4).
    pub max_degree: u32,
    /// Skip a degree, leaving its Hilbert check open, when multiples of
    /// lower-degree relations would need more rows than this.
    pub row_budget: u128,
    /// Largest free-ring dimension for which doubled presentations are certified.
    pub monomial_budget: u128,
}

impl Default for Options {
    fn default() -> Self {
        Self { lg_constant: 2, max_degree: 4, row_budget: 10_000, monomial_budget: 200_000 }
    }
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub weights: Weights,
    pub route: Route,
    /// Degree-one generators of the grading; ids `0..generators.len()`.
    pub generators: Vec<Tableau>,
    /// Degree-2 tableaux referenced by lifted relations (Kempe route only),
    /// with ids following the generators.
    pub auxiliary: Vec<Tableau>,
    /// Essential relations. `kempe_form` is always set and uses generator ids only.
    pub relations: Vec<Relation>,
    pub hilbert: Vec<HilbertCheck>,
}

pub fn presentation(weights: &Weights) -> Result<Presentation> {
    presentation_with(weights, &Options::default())
}

pub fn presentation_with(weights: &Weights, opts: &Options) -> Result<Presentation> {
    if opts.max_degree > 4 {
        return Err(Error::InvalidIndexSet(format!("max degree {} exceeds 4", opts.max_degree)));
    }
    if weights.len() < 2 || count_lattice(weights, 2) == 0 {
        return Ok(Presentation {
            weights: weights.clone(),
            route: Route::Trivial,
            generators: Vec::new(),
            auxiliary: Vec::new(),
            relations: Vec::new(),
            hilbert: Vec::new(),
        });
    }
    let base = if weights.total() % 2 == 1 { Some(weights.clone()) } else { weights.halved() };
    match base {
        Some(base) => doubled_presentation(weights, &base, opts),
        None => kempe_presentation(weights, opts),
    }
}

/// Relation rows as sparse vectors over degree-`k` monomials.
struct DegreeSpace {
    index: HashMap<Monomial, u32>,
    echelon: SparseEchelon,
}

impl DegreeSpace {
    fn new() -> Self {
        Self { index: HashMap::new(), echelon: SparseEchelon::new() }
    }

    fn insert(&mut self, p: &Polynomial) -> bool {
        let row = p
            .iter()
            .map(|(m, c)| {
                let next = self.index.len() as u32;
                (*self.index.entry(m.clone()).or_insert(next), reduce_mod(c))
            })
            .collect();
        self.echelon.insert(row)
    }

    fn rank(&self) -> u128 {
        self.echelon.rank() as u128
    }
}

fn poly_degree(p: &Polynomial) -> usize {
    p.keys().next().map_or(0, |m| m.len())
}

/// Adds all monomial multiples of lower-degree relations in degree `k`.
/// Returns `false` when the row budget would be exceeded.
fn fill_multiples(space: &mut DegreeSpace, forms: &[&Polynomial], vars: u32, k: usize, budget: u128) -> bool {
    let rows: u128 = forms.iter().map(|f| monomial_count(vars as u64, (k - poly_degree(f)) as u64)).sum();
    if rows > budget {
        return false;
    }
    for f in forms {
        for mono in monomials(vars, k - poly_degree(f)) {
            space.insert(&monomial_times(&Monomial(mono), f));
        }
    }
    true
}

fn kempe_presentation(weights: &Weights, opts: &Options) -> Result<Presentation> {
    let gens = GeneratorSet::with_constant(weights, opts.lg_constant)?;
    let images = kempe_images(&gens)?;
    let vars = gens.g1_len() as u32;
    let mut essential: Vec<Relation> = Vec::new();
    let mut hilbert = vec![HilbertCheck {
        degree: 1,
        free: vars as u128,
        ideal_rank: Some(0),
        expected: count_lattice(weights, 1) as u128,
    }];
    for k in 2..=opts.max_degree {
        let free = monomial_count(vars as u64, k as u64);
        let expected = count_lattice(weights, k) as u128;
        let mut space = DegreeSpace::new();
        let forms: Vec<&Polynomial> = essential.iter().filter_map(|r| r.kempe_form.as_ref()).collect();
        if !fill_multiples(&mut space, &forms, vars, k as usize, opts.row_budget) {
            hilbert.push(HilbertCheck { degree: k, free, ideal_rank: None, expected });
            continue;
        }
        if space.rank() + expected < free {
            let level = Level::build(&gens, k)?;
            let pairs = candidate_pairs(&gens, k);
            for chunk in pairs.chunks(256) {
                let mut batch = lifts(&gens, &level, k, chunk);
                batch.par_iter_mut().for_each(|r| {
                    r.kempe_form = Some(substitute(&r.polynomial(), &gens, &images));
                });
                for r in batch {
                    let form = r.kempe_form.as_ref().expect("just set");
                    if !form.is_zero() && space.insert(form) {
                        essential.push(r);
                    }
                }
                if space.rank() + expected >= free {
                    break;
                }
            }
        }
        hilbert.push(HilbertCheck { degree: k, free, ideal_rank: Some(space.rank()), expected });
    }
    Ok(Presentation {
        weights: weights.clone(),
        route: Route::Kempe,
        generators: gens.degree_one().to_vec(),
        auxiliary: gens.degree_two().to_vec(),
        relations: essential,
        hilbert,
    })
}

fn doubled_presentation(weights: &Weights, base: &Weights, opts: &Options) -> Result<Presentation> {
    let gens = GeneratorSet::with_constant(base, opts.lg_constant)?;
    let relations = doubled_relations(&gens)?;
    let g1 = gens.g1_len();
    let points: Vec<&[i64]> = (g1..gens.len()).map(|id| gens.point(id as GenId)).collect();
    let lg: Vec<i64> = gens.degree_two().iter().map(|t| t.lg_degree_unchecked(opts.lg_constant)).collect();
    let vars = points.len() as u32;
    let forms: Vec<&Polynomial> = relations.iter().filter_map(|r| r.kempe_form.as_ref()).collect();
    let mut hilbert = Vec::new();
    for k in 1..=opts.max_degree {
        let free = monomial_count(vars as u64, k as u64);
        let expected = count_lattice(base, 2 * k) as u128;
        let ideal_rank = if k < 2 {
            Some(0)
        } else if free <= opts.monomial_budget {
            match triangular_rank(base, &points, &lg, &relations, k as usize) {
                Some(rank) if rank + expected >= free => Some(rank),
                _ => {
                    let mut space = DegreeSpace::new();
                    fill_multiples(&mut space, &forms, vars, k as usize, opts.row_budget).then(|| space.rank())
                }
            }
        } else {
            None
        };
        hilbert.push(HilbertCheck { degree: k, free, ideal_rank, expected });
    }
    Ok(Presentation {
        weights: weights.clone(),
        route: Route::Doubled { base: base.clone() },
        generators: gens.degree_two().to_vec(),
        auxiliary: Vec::new(),
        relations,
        hilbert,
    })
}

/// Lower bound for the rank of the degree-`k` multiples of the doubled quadrics.
///
/// Monomials are grouped by column sum. Each multiple `m * (lhs - rhs)` has
/// exactly two terms of top LG-degree, `m * lhs` and `m * lead`, both in one
/// group; its other terms lie in groups of lower LG-degree. Ordering rows and
/// columns by group makes the matrix block triangular, and each diagonal block
/// is the incidence matrix of a graph on the group, of rank `vertices - components`.
fn triangular_rank(base: &Weights, points: &[&[i64]], lg: &[i64], relations: &[Relation], k: usize) -> Option<u128> {
    let sum_of = |m: &Monomial| -> Vec<i64> {
        let mut s = vec![0i64; base.len() - 1];
        for &id in m.ids() {
            for (a, b) in s.iter_mut().zip(points[id as usize]) {
                *a += b;
            }
        }
        s
    };
    let lg_of = |m: &Monomial| -> i64 { m.ids().iter().map(|&id| lg[id as usize]).sum() };
    let mut lead_of: HashMap<&Monomial, &Monomial> = HashMap::new();
    for rel in relations {
        let target = sum_of(&rel.lhs);
        let top = lg_of(&rel.lhs);
        let (lead, coeff) = rel.rhs.iter().find(|(m, _)| sum_of(m) == target)?;
        let below = rel.rhs.keys().filter(|m| *m != lead).all(|m| lg_of(m) < top);
        if !coeff.is_one() || !below {
            return None;
        }
        lead_of.insert(&rel.lhs, lead);
    }
    let mut fibers: HashMap<Vec<i64>, Vec<Monomial>> = HashMap::new();
    for ids in monomials(points.len() as u32, k) {
        let m = Monomial(ids);
        fibers.entry(sum_of(&m)).or_default().push(m);
    }
    let rank: usize = fibers
        .par_iter()
        .map(|(_, members)| {
            let index: HashMap<&Monomial, usize> = members.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut parent: Vec<usize> = (0..members.len()).collect();
            fn root(parent: &mut [usize], mut x: usize) -> usize {
                while parent[x] != x {
                    parent[x] = parent[parent[x]];
                    x = parent[x];
                }
                x
            }
            let mut components = members.len();
            for (u, m) in members.iter().enumerate() {
                let ids = m.ids();
                for i in 0..ids.len() {
                    for j in i + 1..ids.len() {
                        let Some(lead) = lead_of.get(&Monomial::new(vec![ids[i], ids[j]])) else { continue };
                        let cofactor = Monomial(
                            ids.iter().enumerate().filter(|&(p, _)| p != i && p != j).map(|(_, &x)| x).collect(),
                        );
                        let v = index[&cofactor.mul(lead)];
                        let (ru, rv) = (root(&mut parent, u), root(&mut parent, v));
                        if ru != rv {
                            parent[ru] = rv;
                            components -= 1;
                        }
                    }
                }
            }
            members.len() - components
        })
        .sum();
    Some(rank as u128)
}

/// Essential relations in degree-one generators, for weights of even total.
pub fn kempe_relations(weights: &Weights) -> Result<Vec<Relation>> {
    if weights.total() % 2 == 1 {
        return Err(Error::OddTotalWeight(weights.total()));
    }
    let p = presentation(weights)?;
    Ok(p.relations)
}

/// Outcome of checking one relation numerically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub index: usize,
    pub trials: usize,
    pub passed: bool,
}

pub fn evaluate(p: &Polynomial, values: &[BigInt]) -> BigInt {
    p.iter().map(|(m, c)| c * m.ids().iter().map(|&i| &values[i as usize]).product::<BigInt>()).sum()
}

impl Presentation {
    pub fn tableau(&self, id: GenId) -> &Tableau {
        let g = self.generators.len();
        let i = id as usize;
        if i < g {
            &self.generators[i]
        } else {
            &self.auxiliary[i - g]
        }
    }

    pub fn all_tableaux(&self) -> impl Iterator<Item = &Tableau> {
        self.generators.iter().chain(&self.auxiliary)
    }

    pub fn is_trivial(&self) -> bool {
        self.route == Route::Trivial
    }

    /// Name used in text output: letters when there are at most 26 generators.
    pub fn label(&self, id: GenId) -> String {
        let g = self.generators.len();
        let i = id as usize;
        if i >= g {
            format!("T{}", i - g)
        } else if g <= 26 {
            ((b'A' + i as u8) as char).to_string()
        } else {
            format!("x{i}")
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts: Vec<String> = Vec::new();
        let ids = m.ids();
        let mut i = 0;
        while i < ids.len() {
            let mut j = i;
            while j < ids.len() && ids[j] == ids[i] {
                j += 1;
            }
            let name = self.label(ids[i]);
            parts.push(if j - i > 1 { format!("{name}^{}", j - i) } else { name });
            i = j;
        }
        let single = m.ids().iter().all(|&id| self.label(id).len() == 1);
        parts.join(if single { "" } else { "*" })
    }

    /// `lhs = rhs`, or the Kempe form set to zero when the lift uses auxiliary generators.
    pub fn format_relation(&self, r: &Relation) -> String {
        let g = self.generators.len() as GenId;
        let auxiliary = r.lhs.ids().iter().chain(r.rhs.keys().flat_map(|m| m.ids())).any(|&i| i >= g);
        match &r.kempe_form {
            Some(form) if auxiliary => format!("{} = 0", format_sum(form, |m| self.format_monomial(m))),
            _ => format!("{} = {}", self.format_monomial(&r.lhs), format_sum(&r.rhs, |m| self.format_monomial(m))),
        }
    }

    /// Evaluates every relation, and its Kempe form, on seeded random matrices.
    pub fn verify(&self, seed: u64, trials: usize) -> Vec<RelationCheck> {
        let minors = Minors::seeded(self.weights.len(), seed, trials);
        let values: Vec<Vec<BigInt>> =
            minors.iter().map(|m| self.all_tableaux().map(|t| m.tableau(t)).collect()).collect();
        self.relations
            .par_iter()
            .enumerate()
            .map(|(index, r)| {
                let lifted = r.polynomial();
                let passed = values.iter().all(|v| {
                    evaluate(&lifted, v).is_zero() && r.kempe_form.as_ref().is_none_or(|f| evaluate(f, v).is_zero())
                });
                RelationCheck { index, trials, passed }
            })
            .collect()
    }

    pub fn hilbert_certified(&self) -> bool {
        self.hilbert.iter().all(|h| h.ideal_rank.is_none() || h.certified())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.generators.iter().enumerate() {
            writeln!(f, "{} = {}", self.label(i as GenId), t)?;
        }
        for r in &self.relations {
            writeln!(f, "{}", self.format_relation(r))?;
        }
        Ok(())
    }
}
