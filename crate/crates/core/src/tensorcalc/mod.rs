//! Symmetric tensors, metric traces and trace-free projection.
//!
//! A symmetric tensor stores one component per nondecreasing index tuple.
//! Contractions and symmetrised products account for how many ordered index
//! tuples each stored component stands for. The same code serves the flat
//! metric on `R^n` and the ambient metric on `R^(n+2)`; only the metric's
//! "partner" map differs (see [`Metric::partner`]).

mod pairskew;

pub use pairskew::{counterexample_tensor, decompose_gg, GgDecomposition, PairSkewTensor, PairKey};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::exactpoly::{Polynomial, VarSpace};
use crate::linalg::invert;
use crate::rational::{int, Rational};

/// Index tuple. Symmetric tensors keep these sorted.
pub type Idx = SmallVec<[u8; 8]>;

/// All nondecreasing tuples of length `len` over `0..dim`, in lexicographic order.
pub fn multisets(dim: usize, len: usize) -> Vec<Idx> {
    let mut out = Vec::new();
    let mut cur = Idx::new();
    fn rec(dim: usize, len: usize, start: usize, cur: &mut Idx, out: &mut Vec<Idx>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in start..dim {
            cur.push(v as u8);
            rec(dim, len, v, cur, out);
            cur.pop();
        }
    }
    rec(dim, len, 0, &mut cur, &mut out);
    out
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Number of distinct orderings of the multiset `idx`.
pub fn multiplicity(idx: &[u8]) -> u64 {
    let mut denom = 1u64;
    let mut run = 0usize;
    for i in 0..idx.len() {
        run += 1;
        if i + 1 == idx.len() || idx[i + 1] != idx[i] {
            denom *= factorial(run);
            run = 0;
        }
    }
    factorial(idx.len()) / denom
}

pub(crate) fn count_of(idx: &[u8], v: u8) -> usize {
    idx.iter().filter(|x| **x == v).count()
}

pub(crate) fn merged(a: &[u8], b: &[u8]) -> Idx {
    let mut out: Idx = a.iter().chain(b.iter()).copied().collect();
    out.sort_unstable();
    out
}

pub(crate) fn without_one(idx: &[u8], v: u8) -> Option<Idx> {
    let pos = idx.iter().position(|x| *x == v)?;
    let mut out: Idx = idx.into();
    out.remove(pos);
    Some(out)
}

fn distinct(idx: &[u8]) -> impl Iterator<Item = u8> + '_ {
    idx.iter()
        .enumerate()
        .filter(move |(i, v)| *i == 0 || idx[*i - 1] != **v)
        .map(|(_, v)| *v)
}

/// Coefficients a tensor can carry.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn vanishes(&self) -> bool;
    fn add_scaled(&mut self, other: &Self, c: &Rational);
    fn scaled(&self, c: &Rational) -> Self;
}

impl Coeff for Rational {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        *self += other * c;
    }
    fn scaled(&self, c: &Rational) -> Self {
        self * c
    }
}

impl Coeff for Polynomial {
    fn vanishes(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        Polynomial::add_scaled(self, other, c);
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
}

fn add_into<C: Coeff>(map: &mut BTreeMap<Idx, C>, key: Idx, c: &C, scale: &Rational) {
    if Zero::is_zero(scale) || c.vanishes() {
        return;
    }
    match map.get_mut(&key) {
        Some(e) => {
            e.add_scaled(c, scale);
            if e.vanishes() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, c.scaled(scale));
        }
    }
}

/// The metric used for traces and for `g ⊙ (.)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    /// `δ_ab` on `R^n`.
    Euclidean,
    /// `2 x^0 x^∞ + δ_ab x^a x^b` on `R^(n+2)`, index order `(0, 1..n, ∞)`.
    Ambient,
}

impl Metric {
    /// The unique `b` with `g_ab != 0` (and then `g_ab = 1`).
    pub fn partner(self, a: usize, dim: usize) -> usize {
        match self {
            Metric::Euclidean => a,
            Metric::Ambient if a == 0 => dim - 1,
            Metric::Ambient if a == dim - 1 => 0,
            Metric::Ambient => a,
        }
    }
}

/// Fully symmetric tensor stored on nondecreasing index tuples. Absent
/// components are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTensor<C> {
    dim: usize,
    metric: Metric,
    valency: usize,
    comps: BTreeMap<Idx, C>,
}

/// Symmetric tensor on `R^n` with polynomial components.
pub type SymTensorField = SymTensor<Polynomial>;

/// Constant symmetric tensor.
pub type ConstSymTensor = SymTensor<Rational>;

impl<C: Coeff> SymTensor<C> {
    pub fn new(dim: usize, metric: Metric, valency: usize) -> Self {
        SymTensor {
            dim,
            metric,
            valency,
            comps: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn valency(&self) -> usize {
        self.valency
    }

    pub fn components(&self) -> impl Iterator<Item = (&Idx, &C)> {
        self.comps.iter()
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    /// Component at any ordering of `idx`.
    pub fn get(&self, idx: &[u8]) -> Option<&C> {
        let mut key: Idx = idx.into();
        key.sort_unstable();
        self.comps.get(&key)
    }

    pub fn set(&mut self, idx: &[u8], c: C) {
        assert_eq!(idx.len(), self.valency, "index length does not match valency");
        assert!(idx.iter().all(|i| (*i as usize) < self.dim), "index out of range");
        let mut key: Idx = idx.into();
        key.sort_unstable();
        if c.vanishes() {
            self.comps.remove(&key);
        } else {
            self.comps.insert(key, c);
        }
    }

    /// `self[idx] += scale * c`.
    pub fn add_at(&mut self, idx: &[u8], c: &C, scale: &Rational) {
        let mut key: Idx = idx.into();
        key.sort_unstable();
        add_into(&mut self.comps, key, c, scale);
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    fn check_shape(&self, other: &Self) {
        assert!(
            self.dim == other.dim && self.metric == other.metric && self.valency == other.valency,
            "tensor shape mismatch"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_shape(other);
        let mut out = self.clone();
        for (k, v) in &other.comps {
            add_into(&mut out.comps, k.clone(), v, &Rational::one());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(&int(-1)))
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = Self::new(self.dim, self.metric, self.valency);
        if !Zero::is_zero(c) {
            out.comps = self.comps.iter().map(|(k, v)| (k.clone(), v.scaled(c))).collect();
        }
        out
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> SymTensor<D> {
        let mut out = SymTensor::new(self.dim, self.metric, self.valency);
        for (k, v) in &self.comps {
            let d = f(v);
            if !d.vanishes() {
                out.comps.insert(k.clone(), d);
            }
        }
        out
    }

    /// Contraction of two slots with the metric. Slots are interchangeable
    /// for a symmetric tensor but are validated.
    pub fn metric_trace(&self, slot_a: usize, slot_b: usize) -> Result<Self> {
        if self.valency < 2 || slot_a == slot_b || slot_a >= self.valency || slot_b >= self.valency {
            return Err(Error::InvalidSlots(slot_a, slot_b, self.valency));
        }
        Ok(self.trace())
    }

    /// `g_ab T^{ab...}`.
    pub fn trace(&self) -> Self {
        assert!(self.valency >= 2, "trace needs valency >= 2");
        let mut out = Self::new(self.dim, self.metric, self.valency - 2);
        let one = Rational::one();
        for (j, v) in &self.comps {
            for a in distinct(j) {
                let p = self.metric.partner(a as usize, self.dim) as u8;
                let rest = if p == a {
                    (count_of(j, a) >= 2).then(|| without_one(&without_one(j, a).unwrap(), a).unwrap())
                } else {
                    without_one(j, a).and_then(|r| without_one(&r, p))
                };
                if let Some(rest) = rest {
                    add_into(&mut out.comps, rest, v, &one);
                }
            }
        }
        out
    }

    pub fn is_trace_free(&self) -> bool {
        self.valency < 2 || self.trace().is_zero()
    }

    /// Symmetrised product with the metric, `g^(ab} U^{...)`.
    pub fn metric_product(&self) -> Self {
        let mut out = Self::new(self.dim, self.metric, self.valency + 2);
        let s = self.valency;
        for a in 0..self.dim {
            let p = self.metric.partner(a, self.dim);
            if p < a {
                continue;
            }
            let pair: [u8; 2] = [a as u8, p as u8];
            let mk = if a == p { 1 } else { 2 };
            for (i, v) in &self.comps {
                let j = merged(i, &pair);
                let w = Rational::new(
                    (mk * multiplicity(i)).into(),
                    multiplicity(&j).into(),
                );
                add_into(&mut out.comps, j, v, &w);
            }
        }
        debug_assert_eq!(out.valency, s + 2);
        out
    }

    /// Symmetrised tensor product with a caller-supplied coefficient product.
    pub fn sym_product_with<D: Coeff, E: Coeff>(
        &self,
        other: &SymTensor<D>,
        mul: impl Fn(&C, &D) -> E,
    ) -> SymTensor<E> {
        assert_eq!(self.dim, other.dim);
        let mut out = SymTensor::new(self.dim, self.metric, self.valency + other.valency);
        for (k, a) in &self.comps {
            for (l, b) in &other.comps {
                let j = merged(k, l);
                let w = Rational::new(
                    (multiplicity(k) * multiplicity(l)).into(),
                    multiplicity(&j).into(),
                );
                add_into(&mut out.comps, j, &mul(a, b), &w);
            }
        }
        out
    }

    /// Splits `self = tf + g ⊙ u` with `tf` trace-free; returns `(tf, u)`.
    pub fn tracefree_decomposition(&self) -> (Self, Option<Self>) {
        if self.valency < 2 {
            return (self.clone(), None);
        }
        let proj = projector(self.dim, self.metric, self.valency - 2);
        let tr = self.trace();
        let mut u = Self::new(self.dim, self.metric, self.valency - 2);
        for (k, v) in &tr.comps {
            let j = proj.index[k];
            for (i, row) in proj.inverse.iter().enumerate() {
                if !Zero::is_zero(&row[j]) {
                    add_into(&mut u.comps, proj.basis[i].clone(), v, &row[j]);
                }
            }
        }
        let tf = self.sub(&u.metric_product());
        (tf, Some(u))
    }

    pub fn tracefree_part(&self) -> Self {
        self.tracefree_decomposition().0
    }

    /// `T = V + g ⊙ W + g ⊙ g ⊙ X` with `V`, `W` trace-free. `W` is present for
    /// valency >= 2 and `X` for valency >= 4.
    pub fn split_symbol(&self) -> (Self, Option<Self>, Option<Self>) {
        let (v, u) = self.tracefree_decomposition();
        match u {
            None => (v, None, None),
            Some(u) => {
                let (w, x) = u.tracefree_decomposition();
                (v, Some(w), x)
            }
        }
    }

    /// Expands into all ordered index tuples.
    pub fn to_full(&self) -> FullTensor<C> {
        let mut full = FullTensor::new(self.dim, self.valency);
        for (k, v) in &self.comps {
            for perm in arrangements(k) {
                full.comps.insert(perm, v.clone());
            }
        }
        full
    }
}

/// Distinct orderings of a sorted tuple.
pub(crate) fn arrangements(sorted: &[u8]) -> Vec<Idx> {
    let mut out = Vec::new();
    let mut cur: Idx = sorted.into();
    // Iterate permutations in lexicographic order starting at the sorted one.
    loop {
        out.push(cur.clone());
        let n = cur.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

struct Projector {
    basis: Vec<Idx>,
    index: HashMap<Idx, usize>,
    inverse: Vec<Vec<Rational>>,
}

type ProjectorKey = (usize, Metric, usize);

/// Cached inverse of `U ↦ tr(g ⊙ U)` on symmetric tensors of the given valency.
fn projector(dim: usize, metric: Metric, valency: usize) -> Arc<Projector> {
    static CACHE: OnceLock<Mutex<HashMap<ProjectorKey, Arc<Projector>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&(dim, metric, valency)) {
        return p.clone();
    }
    let basis = multisets(dim, valency);
    let index: HashMap<Idx, usize> = basis.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    let m = basis.len();
    let mut mat = vec![vec![Rational::zero(); m]; m];
    for (j, k) in basis.iter().enumerate() {
        let mut e = ConstSymTensor::new(dim, metric, valency);
        e.set(k, Rational::one());
        for (i, v) in e.metric_product().trace().comps {
            mat[index[&i]][j] = v;
        }
    }
    let inverse = invert(&mat).expect("trace of metric product is invertible");
    let p = Arc::new(Projector { basis, index, inverse });
    cache.lock().unwrap().insert((dim, metric, valency), p.clone());
    p
}

/// Tensor with explicit (unsymmetrised) slots.
#[derive(Clone, Debug, PartialEq)]
pub struct FullTensor<C> {
    dim: usize,
    rank: usize,
    comps: BTreeMap<Idx, C>,
}

impl<C: Coeff> FullTensor<C> {
    pub fn new(dim: usize, rank: usize) -> Self {
        FullTensor {
            dim,
            rank,
            comps: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, idx: &[u8]) -> Option<&C> {
        self.comps.get(idx)
    }

    pub fn components(&self) -> impl Iterator<Item = (&Idx, &C)> {
        self.comps.iter()
    }

    pub fn add_at(&mut self, idx: &[u8], c: &C, scale: &Rational) {
        assert_eq!(idx.len(), self.rank);
        add_into(&mut self.comps, idx.into(), c, scale);
    }

    /// Projection onto the symmetric part.
    pub fn symmetrize(&self, metric: Metric) -> SymTensor<C> {
        let mut out = SymTensor::new(self.dim, metric, self.rank);
        for (k, v) in &self.comps {
            let mut key = k.clone();
            key.sort_unstable();
            let w = Rational::new(1.into(), multiplicity(&key).into());
            add_into(&mut out.comps, key, v, &w);
        }
        out
    }

    /// True when every component equals its value at the sorted index.
    pub fn is_symmetric(&self) -> bool {
        self.comps.iter().all(|(k, v)| {
            let mut key = k.clone();
            key.sort_unstable();
            arrangements(&key).iter().all(|p| self.comps.get(p) == Some(v))
        })
    }
}

impl SymTensorField {
    /// Zero field of valency `s` on `R^n`.
    pub fn zero(n: usize, s: usize) -> Self {
        SymTensor::new(n, Metric::Euclidean, s)
    }

    pub fn scalar(n: usize, p: Polynomial) -> Self {
        let mut t = Self::zero(n, 0);
        t.set(&[], p);
        t
    }

    /// `δ^{ab}` as a field.
    pub fn metric_tensor(n: usize) -> Self {
        let mut g = Self::zero(n, 2);
        for a in 0..n as u8 {
            g.set(&[a, a], Polynomial::one(VarSpace::base(n)));
        }
        g
    }

    pub fn space(&self) -> VarSpace {
        VarSpace::base(self.dim)
    }

    /// Component as a polynomial (zero if absent). Indices are zero-based.
    pub fn component(&self, idx: &[u8]) -> Polynomial {
        self.get(idx).cloned().unwrap_or_else(|| Polynomial::zero(self.space()))
    }

    /// The scalar of a valency-zero field.
    pub fn as_scalar(&self) -> Polynomial {
        assert_eq!(self.valency, 0);
        self.component(&[])
    }

    /// `∇^(a V^{bc...)}`.
    pub fn sym_gradient(&self) -> Self {
        let s = self.valency;
        let mut out = Self::zero(self.dim, s + 1);
        for (i, v) in &self.comps {
            for c in 0..self.dim {
                let d = v.partial(c);
                if d.is_zero() {
                    continue;
                }
                let j = merged(i, &[c as u8]);
                let w = Rational::new((count_of(&j, c as u8) as i64).into(), ((s + 1) as i64).into());
                add_into(&mut out.comps, j, &d, &w);
            }
        }
        out
    }

    /// `∇_a V^{a...}`.
    pub fn divergence(&self) -> Self {
        assert!(self.valency >= 1, "divergence needs valency >= 1");
        let mut out = Self::zero(self.dim, self.valency - 1);
        let one = Rational::one();
        for (j, v) in &self.comps {
            for c in distinct(j) {
                let d = v.partial(c as usize);
                add_into(&mut out.comps, without_one(j, c).unwrap(), &d, &one);
            }
        }
        out
    }

    /// Componentwise flat Laplacian.
    pub fn laplacian(&self) -> Self {
        self.map(|p| {
            let mut acc = Polynomial::zero(p.space());
            for a in 0..self.dim {
                acc += &p.partial(a).partial(a);
            }
            acc
        })
    }

    /// Symmetrised tensor product of two fields.
    pub fn sym_product(&self, other: &Self) -> Self {
        self.sym_product_with(other, |a, b| a * b)
    }

    pub fn to_json(&self) -> Value {
        let mut comps = Map::new();
        for (k, v) in &self.comps {
            let key = k.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
            comps.insert(key, v.to_json());
        }
        json!({"n": self.dim, "valency": self.valency, "components": comps})
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let field = |k: &str| {
            value
                .get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse(format!("tensor JSON needs integer `{k}`")))
        };
        let n = field("n")?;
        let s = field("valency")?;
        let mut t = Self::zero(n, s);
        let comps = value
            .get("components")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("tensor JSON needs `components` object".into()))?;
        for (key, poly) in comps {
            let idx: Idx = if key.is_empty() {
                Idx::new()
            } else {
                key.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<usize>()
                            .ok()
                            .filter(|i| (1..=n).contains(i))
                            .map(|i| (i - 1) as u8)
                            .ok_or_else(|| Error::Parse(format!("bad component index `{key}`")))
                    })
                    .collect::<Result<_>>()?
            };
            if idx.len() != s {
                return Err(Error::Parse(format!("component `{key}` has wrong length")));
            }
            if idx.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::Parse(format!("component `{key}` is not nondecreasing")));
            }
            t.set(&idx, Polynomial::from_json(VarSpace::base(n), poly)?);
        }
        Ok(t)
    }
}

impl fmt::Display for SymTensorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(k, v)| {
                let key = k.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
                format!("[{key}] {v}")
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::Var;
    use crate::rational::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_const(dim: usize, metric: Metric, s: usize, rng: &mut ChaCha8Rng) -> ConstSymTensor {
        let mut t = ConstSymTensor::new(dim, metric, s);
        for k in multisets(dim, s) {
            t.set(&k, int(rng.gen_range(-3..4)));
        }
        t
    }

    fn full_trace(t: &FullTensor<Rational>, dim: usize, metric: Metric) -> FullTensor<Rational> {
        let mut out = FullTensor::new(dim, t.rank() - 2);
        for (k, v) in t.components() {
            if metric.partner(k[0] as usize, dim) == k[1] as usize {
                out.add_at(&k[2..], v, &Rational::one());
            }
        }
        out
    }

    #[test]
    fn multiset_helpers() {
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(multisets(5, 4).len(), 70);
        assert_eq!(multiplicity(&[0, 0, 1]), 3);
        assert_eq!(multiplicity(&[0, 1, 2]), 6);
        assert_eq!(arrangements(&[0, 0, 1]).len(), 3);
        assert_eq!(arrangements(&[]).len(), 1);
    }

    #[test]
    fn trace_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for metric in [Metric::Euclidean, Metric::Ambient] {
            for s in 2..=4 {
                let t = random_const(5, metric, s, &mut rng);
                let brute = full_trace(&t.to_full(), 5, metric).symmetrize(metric);
                assert_eq!(t.trace(), brute, "valency {s}, {metric:?}");
            }
        }
    }

    #[test]
    fn products_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for metric in [Metric::Euclidean, Metric::Ambient] {
            let a = random_const(4, metric, 1, &mut rng);
            let b = random_const(4, metric, 2, &mut rng);
            let mut full = FullTensor::new(4, 3);
            for (i, x) in a.to_full().components() {
                for (j, y) in b.to_full().components() {
                    full.add_at(&merged_unsorted(i, j), &(x * y), &Rational::one());
                }
            }
            assert_eq!(a.sym_product_with(&b, |x, y| x * y), full.symmetrize(metric));

            let mut g = FullTensor::new(4, 2);
            for x in 0..4 {
                g.add_at(&[x as u8, metric.partner(x, 4) as u8], &int(1), &Rational::one());
            }
            let gs = g.symmetrize(metric);
            assert_eq!(b.metric_product(), gs.sym_product_with(&b, |x, y| x * y));
        }
    }

    fn merged_unsorted(a: &[u8], b: &[u8]) -> Idx {
        a.iter().chain(b.iter()).copied().collect()
    }

    #[test]
    fn metric_trace_examples() {
        let n = 3;
        let g = SymTensorField::metric_tensor(n);
        assert_eq!(g.trace().as_scalar(), Polynomial::from_int(VarSpace::base(n), 3));
        let mut e11 = ConstSymTensor::new(3, Metric::Euclidean, 2);
        e11.set(&[0, 0], int(1));
        assert_eq!(e11.trace().get(&[]), Some(&int(1)));
        assert!(matches!(g.metric_trace(0, 0), Err(Error::InvalidSlots(0, 0, 2))));
        assert!(matches!(g.metric_trace(0, 2), Err(Error::InvalidSlots(..))));
    }

    #[test]
    fn tracefree_examples() {
        let g = SymTensorField::metric_tensor(3);
        assert!(g.tracefree_part().is_zero());
        let mut e11 = ConstSymTensor::new(3, Metric::Euclidean, 2);
        e11.set(&[0, 0], int(1));
        let tf = e11.tracefree_part();
        assert_eq!(tf.get(&[0, 0]), Some(&rat(2, 3)));
        assert_eq!(tf.get(&[1, 1]), Some(&rat(-1, 3)));
        assert_eq!(tf.get(&[0, 1]), None);
        assert_eq!(tf.tracefree_part(), tf);
    }

    #[test]
    fn symmetrize_examples() {
        let mut t = FullTensor::new(3, 2);
        t.add_at(&[0, 1], &int(1), &Rational::one());
        let s = t.symmetrize(Metric::Euclidean);
        assert_eq!(s.get(&[0, 1]), Some(&rat(1, 2)));
        assert!(!t.is_symmetric());
        assert!(s.to_full().is_symmetric());
        assert_eq!(s.to_full().symmetrize(Metric::Euclidean), s);
        t.add_at(&[1, 0], &int(-1), &Rational::one());
        assert!(t.symmetrize(Metric::Euclidean).is_zero());
    }

    #[test]
    fn split_symbol_examples() {
        let n = 3;
        let b = VarSpace::base(n);
        let g = SymTensorField::metric_tensor(n);
        let (v, w, x) = g.split_symbol();
        assert!(v.is_zero());
        assert_eq!(w.unwrap().as_scalar(), Polynomial::one(b));
        assert!(x.is_none());

        let gg = g.sym_product(&g);
        let (v, w, x) = gg.split_symbol();
        assert!(v.is_zero());
        assert!(w.unwrap().is_zero());
        assert_eq!(x.unwrap().as_scalar(), Polynomial::one(b));
    }

    #[test]
    fn gradient_and_divergence() {
        let n = 3;
        let b = VarSpace::base(n);
        let mut v = SymTensorField::zero(n, 1);
        for a in 0..n {
            v.set(&[a as u8], Polynomial::var(b, Var::Coord(a + 1)));
        }
        assert_eq!(v.divergence().as_scalar(), Polynomial::from_int(b, 3));
        assert_eq!(v.sym_gradient(), SymTensorField::metric_tensor(n));
        assert!(v.sym_gradient().tracefree_part().is_zero());
    }

    #[test]
    fn ambient_tracefree_is_trace_free() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for s in 2..=4 {
            let t = random_const(6, Metric::Ambient, s, &mut rng);
            let tf = t.tracefree_part();
            assert!(tf.is_trace_free());
            assert_eq!(tf.tracefree_part(), tf);
        }
    }

    #[test]
    fn json_round_trip() {
        let n = 3;
        let b = VarSpace::base(n);
        let mut v = SymTensorField::zero(n, 2);
        v.set(&[0, 2], &Polynomial::var(b, Var::Coord(2)) * &Polynomial::from_int(b, -4));
        let back = SymTensorField::from_json(&v.to_json()).unwrap();
        assert_eq!(back, v);
    }

    fn random_field(n: usize, s: usize, rng: &mut ChaCha8Rng) -> SymTensorField {
        let b = VarSpace::base(n);
        let mut t = SymTensorField::zero(n, s);
        for k in multisets(n, s) {
            let mut p = Polynomial::zero(b);
            for _ in 0..3 {
                let mut exps = vec![0u32; n];
                let deg = rng.gen_range(0..=2);
                for _ in 0..deg {
                    exps[rng.gen_range(0..n)] += 1;
                }
                let m = crate::exactpoly::Monomial::from_exps(b, &exps);
                p.add_term(m, int(rng.gen_range(-3..4)));
            }
            t.set(&k, p);
        }
        t
    }

    proptest::proptest! {
        #[test]
        fn split_symbol_reconstructs(seed in 0u64..1000, s in 0usize..=4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = random_field(3, s, &mut rng);
            let (v, w, x) = t.split_symbol();
            proptest::prop_assert!(v.is_trace_free());
            let mut back = v.clone();
            if let Some(w) = &w {
                proptest::prop_assert!(w.is_trace_free());
                back = back.add(&w.metric_product());
            }
            if let Some(x) = &x {
                back = back.add(&x.metric_product().metric_product());
            }
            proptest::prop_assert_eq!(back, t);
        }

        #[test]
        fn tracefree_is_idempotent_projection(seed in 0u64..1000, s in 2usize..=4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = random_field(4, s, &mut rng);
            let (tf, u) = t.tracefree_decomposition();
            proptest::prop_assert!(tf.trace().is_zero());
            proptest::prop_assert_eq!(tf.tracefree_part(), tf.clone());
            proptest::prop_assert_eq!(t.sub(&tf), u.unwrap().metric_product());
        }
    }
}
