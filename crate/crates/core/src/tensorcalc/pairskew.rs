//! Constant ambient tensors whose indices come in skew pairs, optionally
//! followed by one symmetric pair.
//!
//! Ambient indices are positions `0..n+2` in the order `(0, 1..n, ∞)`. Only
//! one representative per orbit of the structural symmetries is stored: each
//! skew pair increasing, the trailing symmetric pair nondecreasing.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};
use smallvec::SmallVec;

use super::{arrangements, ConstSymTensor, Metric};
use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, rat, Rational};

/// Full or canonical index tuple of a pair-skew tensor.
pub type PairKey = SmallVec<[u8; 10]>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSkewTensor {
    n: usize,
    pairs: usize,
    tail: bool,
    comps: BTreeMap<PairKey, Rational>,
}

impl PairSkewTensor {
    pub fn new(n: usize, pairs: usize, tail: bool) -> Self {
        PairSkewTensor {
            n,
            pairs,
            tail,
            comps: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Ambient dimension `n + 2`.
    pub fn dim(&self) -> usize {
        self.n + 2
    }

    pub fn pairs(&self) -> usize {
        self.pairs
    }

    pub fn has_tail(&self) -> bool {
        self.tail
    }

    pub fn rank(&self) -> usize {
        2 * self.pairs + if self.tail { 2 } else { 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Canonical components.
    pub fn components(&self) -> impl Iterator<Item = (&PairKey, &Rational)> {
        self.comps.iter()
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    fn partner(&self, a: usize) -> usize {
        Metric::Ambient.partner(a, self.dim())
    }

    /// Canonical key and sign for a full index, `None` when a skew pair repeats.
    pub fn canonicalize(&self, full: &[u8]) -> Option<(bool, PairKey)> {
        assert_eq!(full.len(), self.rank(), "index has wrong length");
        let mut key: PairKey = full.into();
        let mut negative = false;
        for i in 0..self.pairs {
            let (a, b) = (key[2 * i], key[2 * i + 1]);
            if a == b {
                return None;
            }
            if a > b {
                key.swap(2 * i, 2 * i + 1);
                negative = !negative;
            }
        }
        if self.tail {
            let t = 2 * self.pairs;
            if key[t] > key[t + 1] {
                key.swap(t, t + 1);
            }
        }
        Some((negative, key))
    }

    /// Component at a full index.
    pub fn get(&self, full: &[u8]) -> Rational {
        match self.canonicalize(full) {
            None => Rational::zero(),
            Some((neg, key)) => match self.comps.get(&key) {
                None => Rational::zero(),
                Some(v) if neg => -v,
                Some(v) => v.clone(),
            },
        }
    }

    /// Sets the orbit of `full` so that `get(full) == value`.
    pub fn set(&mut self, full: &[u8], value: Rational) {
        match self.canonicalize(full) {
            None => assert!(value.is_zero(), "a repeated skew pair must vanish"),
            Some((neg, key)) => {
                let v = if neg { -value } else { value };
                if v.is_zero() {
                    self.comps.remove(&key);
                } else {
                    self.comps.insert(key, v);
                }
            }
        }
    }

    fn add_canonical(&mut self, key: PairKey, v: Rational) {
        if v.is_zero() {
            return;
        }
        let e = self.comps.entry(key.clone()).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            self.comps.remove(&key);
        }
    }

    /// Projection of arbitrary components onto the pair-skew (and trailing
    /// symmetric) type.
    pub fn from_raw(n: usize, pairs: usize, tail: bool, raw: impl IntoIterator<Item = (PairKey, Rational)>) -> Self {
        let mut out = Self::new(n, pairs, tail);
        let base = Rational::new(1.into(), (1i64 << pairs).into());
        for (full, v) in raw {
            let Some((neg, key)) = out.canonicalize(&full) else {
                continue;
            };
            let mut w = &base * &v;
            if tail {
                let t = 2 * pairs;
                if key[t] != key[t + 1] {
                    w *= rat(1, 2);
                }
            }
            out.add_canonical(key, if neg { -w } else { w });
        }
        out
    }

    /// Every full index with its (nonzero) value.
    pub fn expand(&self) -> Vec<(PairKey, Rational)> {
        let mut out = Vec::new();
        for (key, v) in &self.comps {
            for mask in 0..(1u32 << self.pairs) {
                let mut full = key.clone();
                let mut val = v.clone();
                for i in 0..self.pairs {
                    if mask & (1 << i) != 0 {
                        full.swap(2 * i, 2 * i + 1);
                        val = -val;
                    }
                }
                if self.tail {
                    let t = 2 * self.pairs;
                    let tails: &[bool] = if full[t] == full[t + 1] { &[false] } else { &[false, true] };
                    for &swap in tails {
                        let mut f = full.clone();
                        if swap {
                            f.swap(t, t + 1);
                        }
                        out.push((f, val.clone()));
                    }
                } else {
                    out.push((full, val));
                }
            }
        }
        out
    }

    fn check_shape(&self, other: &Self) {
        assert!(
            self.n == other.n && self.pairs == other.pairs && self.tail == other.tail,
            "pair-skew shape mismatch"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_shape(other);
        let mut out = self.clone();
        for (k, v) in &other.comps {
            out.add_canonical(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(&int(-1)))
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = Self::new(self.n, self.pairs, self.tail);
        if !c.is_zero() {
            out.comps = self.comps.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        }
        out
    }

    /// `self ⊗ other`; `self` must not have a trailing pair.
    pub fn tensor(&self, other: &Self) -> Self {
        assert!(!self.tail, "left factor cannot carry a trailing pair");
        assert_eq!(self.n, other.n);
        let mut out = Self::new(self.n, self.pairs + other.pairs, other.tail);
        for (a, x) in &self.comps {
            for (b, y) in &other.comps {
                let key: PairKey = a.iter().chain(b.iter()).copied().collect();
                out.comps.insert(key, x * y);
            }
        }
        out
    }

    /// Reorders the skew pairs: pair `i` of the result is pair `perm[i]` of `self`.
    pub fn permute_pairs(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.pairs);
        let mut out = Self::new(self.n, self.pairs, self.tail);
        for (k, v) in &self.comps {
            let mut key = k.clone();
            for (i, &p) in perm.iter().enumerate() {
                key[2 * i] = k[2 * p];
                key[2 * i + 1] = k[2 * p + 1];
            }
            out.comps.insert(key, v.clone());
        }
        out
    }

    /// Average over all permutations of the skew pairs.
    pub fn symmetrize_pairs(&self) -> Self {
        let ids: SmallVec<[u8; 8]> = (0..self.pairs as u8).collect();
        let perms = arrangements(&ids);
        let w = Rational::new(1.into(), (perms.len() as i64).into());
        let mut out = Self::new(self.n, self.pairs, self.tail);
        for p in &perms {
            let perm: Vec<usize> = p.iter().map(|x| *x as usize).collect();
            out = out.add(&self.permute_pairs(&perm));
        }
        out.scaled(&w)
    }

    /// Contraction of slots `i` and `j` of the full index with the ambient
    /// metric, as a map on the remaining full indices.
    pub fn contract(&self, i: usize, j: usize) -> BTreeMap<PairKey, Rational> {
        assert!(i != j && i < self.rank() && j < self.rank());
        let mut out: BTreeMap<PairKey, Rational> = BTreeMap::new();
        for (full, v) in self.expand() {
            if self.partner(full[i] as usize) == full[j] as usize {
                let rest: PairKey = full
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i && *k != j)
                    .map(|(_, x)| *x)
                    .collect();
                *out.entry(rest).or_insert_with(Rational::zero) += v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// All metric contractions between two slots vanish.
    pub fn is_totally_trace_free(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (i + 1..r).all(|j| self.contract(i, j).is_empty()))
    }

    /// Antisymmetrising over any three slots gives zero.
    pub fn three_skew_vanishes(&self) -> bool {
        let full = self.expand();
        let r = self.rank();
        let perms: [([usize; 3], i64); 6] = [
            ([0, 1, 2], 1),
            ([1, 2, 0], 1),
            ([2, 0, 1], 1),
            ([1, 0, 2], -1),
            ([0, 2, 1], -1),
            ([2, 1, 0], -1),
        ];
        for i in 0..r {
            for j in i + 1..r {
                for k in j + 1..r {
                    let slots = [i, j, k];
                    let mut acc: BTreeMap<PairKey, Rational> = BTreeMap::new();
                    for (idx, v) in &full {
                        for (p, sign) in &perms {
                            let mut t = idx.clone();
                            for m in 0..3 {
                                t[slots[m]] = idx[slots[p[m]]];
                            }
                            *acc.entry(t).or_insert_with(Rational::zero) += v * int(*sign);
                        }
                    }
                    if acc.values().any(|v| !v.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Full contraction `sum X^{I} Y_{I}` with all indices lowered.
    pub fn inner(&self, other: &Self) -> Rational {
        self.check_shape(other);
        let mut acc = Rational::zero();
        for (full, v) in self.expand() {
            let lowered: PairKey = full.iter().map(|a| self.partner(*a as usize) as u8).collect();
            acc += v * other.get(&lowered);
        }
        acc
    }

    fn dense4(&self) -> Vec<Rational> {
        assert_eq!(self.rank(), 4);
        let d = self.dim();
        let mut out = vec![Rational::zero(); d * d * d * d];
        for (full, v) in self.expand() {
            let (b, q, c, r) = (full[0] as usize, full[1] as usize, full[2] as usize, full[3] as usize);
            out[((b * d + q) * d + c) * d + r] = v;
        }
        out
    }

    fn from_dense4(n: usize, dense: &[Rational]) -> Self {
        let d = n + 2;
        let raw = dense.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| {
            let key: PairKey = [(i / (d * d * d)) as u8, ((i / (d * d)) % d) as u8, ((i / d) % d) as u8, (i % d) as u8]
                .into_iter()
                .collect();
            (key, v.clone())
        });
        Self::from_raw(n, 2, false, raw)
    }

    pub fn to_json(&self) -> Value {
        let mut comps = Map::new();
        for (k, v) in &self.comps {
            let key = k.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
            comps.insert(key, json!(format_rational(v)));
        }
        json!({"n": self.n, "pairs": self.pairs, "tail": self.tail, "components": comps})
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let n = value
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("pair-skew JSON needs `n`".into()))? as usize;
        let pairs = value
            .get("pairs")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("pair-skew JSON needs `pairs`".into()))? as usize;
        let tail = value.get("tail").and_then(Value::as_bool).unwrap_or(false);
        let mut t = Self::new(n, pairs, tail);
        let comps = value
            .get("components")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("pair-skew JSON needs `components`".into()))?;
        for (key, v) in comps {
            let idx: PairKey = key
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<u8>()
                        .ok()
                        .filter(|i| (*i as usize) < n + 2)
                        .ok_or_else(|| Error::Parse(format!("bad index `{key}`")))
                })
                .collect::<Result<_>>()?;
            if idx.len() != t.rank() {
                return Err(Error::Parse(format!("index `{key}` has wrong length")));
            }
            let v = parse_rational(v.as_str().ok_or_else(|| Error::Parse("component must be a string".into()))?)?;
            t.set(&idx, v);
        }
        Ok(t)
    }
}

/// The six summands of a two-pair tensor `X ∈ g ⊗ g`.
#[derive(Clone, Debug, PartialEq)]
pub struct GgDecomposition {
    /// Trace-free part satisfying the cyclic identity.
    pub cartan: PairSkewTensor,
    /// Symmetric trace-free `W^{BC}` of the two-box summand.
    pub bullet: ConstSymTensor,
    /// Killing-form value `-n X^{BQ}_{BQ}`.
    pub scalar: Rational,
    /// Trace-free part skew under exchange of the pairs.
    pub hook: PairSkewTensor,
    /// Bracket `X^B_Q^{QR} - X^R_Q^{QB}`.
    pub adjoint: PairSkewTensor,
    /// Totally skew part.
    pub fully_skew: PairSkewTensor,
}

fn g(n: usize, a: usize, b: usize) -> bool {
    Metric::Ambient.partner(a, n + 2) == b
}

impl GgDecomposition {
    /// `V (g^{QC} g^{BR} - g^{BC} g^{QR}) / (n(n+1)(n+2))`.
    pub fn embed_scalar(n: usize, v: &Rational) -> PairSkewTensor {
        let d = n + 2;
        let w = v / int((n * (n + 1) * (n + 2)) as i64);
        let mut dense = vec![Rational::zero(); d.pow(4)];
        for b in 0..d {
            for q in 0..d {
                for c in 0..d {
                    for r in 0..d {
                        let x = g(n, q, c) as i64 * g(n, b, r) as i64 - g(n, b, c) as i64 * g(n, q, r) as i64;
                        if x != 0 {
                            dense[((b * d + q) * d + c) * d + r] = &w * int(x);
                        }
                    }
                }
            }
        }
        PairSkewTensor::from_dense4(n, &dense)
    }

    /// `(V^{BR} g^{QC} - V^{QR} g^{BC} - V^{BC} g^{QR} + V^{QC} g^{BR}) / 2n`.
    pub fn embed_adjoint(v: &PairSkewTensor) -> PairSkewTensor {
        assert_eq!((v.pairs(), v.has_tail()), (1, false));
        let n = v.n();
        let d = n + 2;
        let w = rat(1, 2 * n as i64);
        let mut dense = vec![Rational::zero(); d.pow(4)];
        for b in 0..d {
            for q in 0..d {
                for c in 0..d {
                    for r in 0..d {
                        let mut x = Rational::zero();
                        let get = |i: usize, j: usize| v.get(&[i as u8, j as u8]);
                        if g(n, q, c) {
                            x += get(b, r);
                        }
                        if g(n, b, c) {
                            x -= get(q, r);
                        }
                        if g(n, q, r) {
                            x -= get(b, c);
                        }
                        if g(n, b, r) {
                            x += get(q, c);
                        }
                        dense[((b * d + q) * d + c) * d + r] = x * &w;
                    }
                }
            }
        }
        PairSkewTensor::from_dense4(n, &dense)
    }

    /// `W^{BC} g^{QR} - W^{QC} g^{BR} - W^{BR} g^{QC} + W^{QR} g^{BC}`.
    pub fn embed_bullet(n: usize, w: &ConstSymTensor) -> PairSkewTensor {
        assert_eq!((w.valency(), w.dim(), w.metric()), (2, n + 2, Metric::Ambient));
        let d = n + 2;
        let get = |i: usize, j: usize| w.get(&[i as u8, j as u8]).cloned().unwrap_or_else(Rational::zero);
        let mut dense = vec![Rational::zero(); d.pow(4)];
        for b in 0..d {
            for q in 0..d {
                for c in 0..d {
                    for r in 0..d {
                        let mut x = Rational::zero();
                        if g(n, q, r) {
                            x += get(b, c);
                        }
                        if g(n, b, r) {
                            x -= get(q, c);
                        }
                        if g(n, q, c) {
                            x -= get(b, r);
                        }
                        if g(n, b, c) {
                            x += get(q, r);
                        }
                        dense[((b * d + q) * d + c) * d + r] = x;
                    }
                }
            }
        }
        PairSkewTensor::from_dense4(n, &dense)
    }

    /// The six summands embedded back into `g ⊗ g`, in the order
    /// cartan, bullet, scalar, hook, adjoint, fully skew.
    pub fn embedded(&self) -> [PairSkewTensor; 6] {
        let n = self.cartan.n();
        [
            self.cartan.clone(),
            Self::embed_bullet(n, &self.bullet),
            Self::embed_scalar(n, &self.scalar),
            self.hook.clone(),
            Self::embed_adjoint(&self.adjoint),
            self.fully_skew.clone(),
        ]
    }

    pub fn recombine(&self) -> PairSkewTensor {
        let parts = self.embedded();
        let mut acc = PairSkewTensor::new(self.cartan.n(), 2, false);
        for p in &parts {
            acc = acc.add(p);
        }
        acc
    }
}

/// Splits a two-pair tensor into its six summands.
pub fn decompose_gg(x: &PairSkewTensor) -> GgDecomposition {
    assert_eq!((x.pairs(), x.has_tail()), (2, false), "decompose_gg needs two skew pairs");
    let n = x.n();
    let d = n + 2;
    let p = |a: usize| Metric::Ambient.partner(a, d);
    let dense = x.dense4();
    let at = |b: usize, q: usize, c: usize, r: usize| &dense[((b * d + q) * d + c) * d + r];

    let mut trace2 = Rational::zero();
    for b in 0..d {
        for q in 0..d {
            trace2 += at(b, q, p(b), p(q));
        }
    }
    let scalar = -int(n as i64) * trace2;

    let mut adjoint = PairSkewTensor::new(n, 1, false);
    let mut bullet_raw = ConstSymTensor::new(d, Metric::Ambient, 2);
    for b in 0..d {
        for r in 0..d {
            let mut a = Rational::zero();
            let mut c = Rational::zero();
            for q in 0..d {
                a += at(b, p(q), q, r) - at(r, p(q), q, b);
                c += at(b, q, r, p(q));
            }
            if b < r {
                adjoint.set(&[b as u8, r as u8], a);
            }
            bullet_raw.add_at(&[b as u8, r as u8], &c, &rat(1, if b == r { 1 } else { 2 }));
        }
    }
    let bullet = bullet_raw.tracefree_part().scaled(&rat(1, n as i64));

    let sign4 = |perm: [usize; 4]| -> i64 {
        let mut s = 1;
        for i in 0..4 {
            for j in i + 1..4 {
                if perm[i] > perm[j] {
                    s = -s;
                }
            }
        }
        s
    };
    let perms: Vec<([usize; 4], i64)> = {
        let ids: SmallVec<[u8; 8]> = (0..4u8).collect();
        arrangements(&ids)
            .into_iter()
            .map(|p| {
                let a = [p[0] as usize, p[1] as usize, p[2] as usize, p[3] as usize];
                (a, sign4(a))
            })
            .collect()
    };
    let mut alt = vec![Rational::zero(); d.pow(4)];
    let mut sym = vec![Rational::zero(); d.pow(4)];
    let mut skw = vec![Rational::zero(); d.pow(4)];
    for b in 0..d {
        for q in 0..d {
            for c in 0..d {
                for r in 0..d {
                    let i = ((b * d + q) * d + c) * d + r;
                    let idx = [b, q, c, r];
                    let mut acc = Rational::zero();
                    for (perm, s) in &perms {
                        let v = at(idx[perm[0]], idx[perm[1]], idx[perm[2]], idx[perm[3]]);
                        if !v.is_zero() {
                            acc += v * int(*s);
                        }
                    }
                    alt[i] = acc / int(24);
                    sym[i] = (at(b, q, c, r) + at(c, r, b, q)) / int(2);
                    skw[i] = (at(b, q, c, r) - at(c, r, b, q)) / int(2);
                }
            }
        }
    }
    let fully_skew = PairSkewTensor::from_dense4(n, &alt);
    let hook = PairSkewTensor::from_dense4(n, &skw).sub(&GgDecomposition::embed_adjoint(&adjoint));
    let cartan = PairSkewTensor::from_dense4(n, &sym)
        .sub(&GgDecomposition::embed_scalar(n, &scalar))
        .sub(&GgDecomposition::embed_bullet(n, &bullet))
        .sub(&fully_skew);
    GgDecomposition {
        cartan,
        bullet,
        scalar,
        hook,
        adjoint,
        fully_skew,
    }
}

/// `skew(Z^{BCDE} g^{(QR} g^{ST)})` over the pairs `BQ, CR, DS, ET`.
pub fn counterexample_tensor(z: &ConstSymTensor) -> Result<PairSkewTensor> {
    if z.valency() != 4 || z.metric() != Metric::Ambient {
        return Err(Error::SymmetryType("expected an ambient symmetric 4-tensor".into()));
    }
    if !z.is_trace_free() {
        return Err(Error::NotTraceFree);
    }
    let d = z.dim();
    let n = d - 2;
    let gm = |a: u8, b: u8| g(n, a as usize, b as usize) as i64;
    let g4 = |q: u8, r: u8, s: u8, t: u8| rat(gm(q, r) * gm(s, t) + gm(q, s) * gm(r, t) + gm(q, t) * gm(r, s), 3);
    let zget = |i: &[u8]| z.get(i).cloned().unwrap_or_else(Rational::zero);
    let pairs: Vec<(u8, u8)> = (0..d as u8).flat_map(|a| (a + 1..d as u8).map(move |b| (a, b))).collect();
    let mut out = PairSkewTensor::new(n, 4, false);
    let w = rat(1, 16);
    for p0 in &pairs {
        for p1 in &pairs {
            for p2 in &pairs {
                for p3 in &pairs {
                    let ps = [p0, p1, p2, p3];
                    let mut acc = Rational::zero();
                    for mask in 0..16u32 {
                        let mut first = [0u8; 4];
                        let mut second = [0u8; 4];
                        let mut sign = 1i64;
                        for i in 0..4 {
                            let (a, b) = *ps[i];
                            if mask & (1 << i) != 0 {
                                first[i] = b;
                                second[i] = a;
                                sign = -sign;
                            } else {
                                first[i] = a;
                                second[i] = b;
                            }
                        }
                        let gv = g4(second[0], second[1], second[2], second[3]);
                        if gv.is_zero() {
                            continue;
                        }
                        let zv = zget(&first);
                        if zv.is_zero() {
                            continue;
                        }
                        acc += zv * gv * int(sign);
                    }
                    if !acc.is_zero() {
                        let key: PairKey = [p0.0, p0.1, p1.0, p1.1, p2.0, p2.1, p3.0, p3.1].into_iter().collect();
                        out.comps.insert(key, acc * &w);
                    }
                }
            }
        }
    }
    Ok(out)
}

impl PairSkewTensor {
    /// Basis element `E_{ab}` of `so(n+1,1)`: `V^{ab} = 1 = -V^{ba}`.
    pub fn unit_pair(n: usize, a: u8, b: u8) -> Self {
        assert!(a != b);
        let mut t = Self::new(n, 1, false);
        t.set(&[a, b], Rational::one());
        t
    }

    /// Largest absolute numerator, useful for sanity in generated tensors.
    pub fn max_abs_numerator(&self) -> Rational {
        self.comps.values().map(|v| v.abs()).max().unwrap_or_else(Rational::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensorcalc::multisets;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn basis(n: usize) -> Vec<PairSkewTensor> {
        let d = (n + 2) as u8;
        (0..d)
            .flat_map(|a| (a + 1..d).map(move |b| (a, b)))
            .map(|(a, b)| PairSkewTensor::unit_pair(n, a, b))
            .collect()
    }

    fn dilation(n: usize) -> PairSkewTensor {
        PairSkewTensor::unit_pair(n, 0, (n + 1) as u8)
    }

    #[test]
    fn canonical_storage_and_signs() {
        let mut v = PairSkewTensor::new(3, 1, false);
        v.set(&[3, 1], int(2));
        assert_eq!(v.get(&[1, 3]), int(-2));
        assert_eq!(v.get(&[3, 1]), int(2));
        assert_eq!(v.len(), 1);
        let again = PairSkewTensor::from_raw(3, 1, false, v.expand());
        assert_eq!(again, v);
    }

    #[test]
    fn projection_examples() {
        // symmetric input with one pair projects to zero
        let raw = vec![(PairKey::from_slice(&[0, 1]), int(1)), (PairKey::from_slice(&[1, 0]), int(1))];
        assert!(PairSkewTensor::from_raw(3, 1, false, raw).is_zero());
        // a single 4-index entry becomes skew in both pairs
        let raw = vec![(PairKey::from_slice(&[0, 1, 2, 3]), int(4))];
        let t = PairSkewTensor::from_raw(3, 2, false, raw);
        assert_eq!(t.get(&[0, 1, 2, 3]), int(1));
        assert_eq!(t.get(&[1, 0, 3, 2]), int(1));
        assert_eq!(t.get(&[1, 0, 2, 3]), int(-1));
        // idempotent
        assert_eq!(PairSkewTensor::from_raw(3, 2, false, t.expand()), t);
    }

    #[test]
    fn tail_projection_is_idempotent() {
        let raw = vec![
            (PairKey::from_slice(&[0, 1, 2, 3]), int(2)),
            (PairKey::from_slice(&[0, 1, 2, 2]), int(5)),
        ];
        let t = PairSkewTensor::from_raw(3, 1, true, raw);
        assert_eq!(t.get(&[0, 1, 3, 2]), int(1) / int(2));
        assert_eq!(t.get(&[0, 1, 2, 2]), int(5) / int(2));
        assert_eq!(PairSkewTensor::from_raw(3, 1, true, t.expand()), t);
    }

    fn random_gg(n: usize, rng: &mut ChaCha8Rng) -> PairSkewTensor {
        let d = (n + 2) as u8;
        let mut raw = Vec::new();
        for _ in 0..12 {
            let k: PairKey = (0..4).map(|_| rng.gen_range(0..d)).collect();
            raw.push((k, int(rng.gen_range(-3..4))));
        }
        PairSkewTensor::from_raw(n, 2, false, raw)
    }

    fn check_characterisations(dec: &GgDecomposition) {
        let c = &dec.cartan;
        assert!(c.is_totally_trace_free());
        assert!(c.three_skew_vanishes());
        let swapped = c.permute_pairs(&[1, 0]);
        assert_eq!(&swapped, c);
        assert!(dec.bullet.is_trace_free());
        let h = &dec.hook;
        assert!(h.is_totally_trace_free());
        assert_eq!(h.permute_pairs(&[1, 0]), h.scaled(&int(-1)));
        let s = &dec.fully_skew;
        assert_eq!(s.get(&[0, 2, 1, 3]), -s.get(&[0, 1, 2, 3]));
    }

    #[test]
    fn decomposition_recombines_and_is_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [3, 4] {
            for _ in 0..3 {
                let x = random_gg(n, &mut rng);
                let dec = decompose_gg(&x);
                assert_eq!(dec.recombine(), x);
                check_characterisations(&dec);
                let parts = dec.embedded();
                for i in 0..6 {
                    for j in i + 1..6 {
                        assert!(parts[i].inner(&parts[j]).is_zero(), "parts {i} and {j} not orthogonal");
                    }
                }
                // projections are idempotent
                for (i, p) in parts.iter().enumerate() {
                    let again = decompose_gg(p).embedded();
                    for (j, q) in again.iter().enumerate() {
                        if i == j {
                            assert_eq!(q, p);
                        } else {
                            assert!(q.is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn all_basis_pairs_decompose() {
        let b = basis(3);
        for i in 0..b.len() {
            for j in i..b.len() {
                let x = b[i].tensor(&b[j]);
                let dec = decompose_gg(&x);
                assert_eq!(dec.recombine(), x);
                check_characterisations(&dec);
            }
        }
    }

    #[test]
    fn dilation_square_has_no_adjoint_part() {
        let v = dilation(3);
        let dec = decompose_gg(&v.tensor(&v));
        assert!(dec.adjoint.is_zero());
    }

    #[test]
    fn embedded_bullet_is_recovered() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let n = 3;
        let mut w = ConstSymTensor::new(n + 2, Metric::Ambient, 2);
        for k in multisets(n + 2, 2) {
            w.set(&k, int(rng.gen_range(-3..4)));
        }
        let w = w.tracefree_part();
        let x = GgDecomposition::embed_bullet(n, &w);
        let dec = decompose_gg(&x);
        assert_eq!(dec.bullet, w);
        assert!(dec.cartan.is_zero() && dec.hook.is_zero() && dec.adjoint.is_zero());
        assert!(dec.fully_skew.is_zero() && dec.scalar.is_zero());
    }

    #[test]
    fn scalar_and_adjoint_normalisations() {
        let n = 3;
        let x = GgDecomposition::embed_scalar(n, &int(1));
        assert_eq!(decompose_gg(&x).scalar, int(1));
        let v = PairSkewTensor::unit_pair(n, 1, 4);
        let y = GgDecomposition::embed_adjoint(&v);
        assert_eq!(decompose_gg(&y).adjoint, v);
    }

    #[test]
    fn counterexample_examples() {
        let n = 3;
        let z0 = ConstSymTensor::new(n + 2, Metric::Ambient, 4);
        assert!(counterexample_tensor(&z0).unwrap().is_zero());
        let mut e = ConstSymTensor::new(n + 2, Metric::Ambient, 4);
        e.set(&[0, 0, 0, 0], int(1));
        e.set(&[1, 1, 1, 1], int(1));
        assert!(matches!(counterexample_tensor(&e), Err(Error::NotTraceFree)));
    }

    #[test]
    fn json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = random_gg(3, &mut rng);
        assert_eq!(PairSkewTensor::from_json(&x.to_json()).unwrap(), x);
    }
}
