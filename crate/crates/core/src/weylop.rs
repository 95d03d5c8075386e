//! Linear differential operators with polynomial coefficients, kept in normal
//! form `sum_α c_α(x) ∂^α` (coefficients to the left of derivatives).

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::exactpoly::{Monomial, Polynomial, VarSpace};
use crate::rational::{int, Rational};
use crate::tensorcalc::{multiplicity, Idx, SymTensorField};

/// Derivative multi-index stored as a count per coordinate position.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(SmallVec<[u8; 8]>);

impl MultiIndex {
    pub fn zero(nvars: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, nvars))
    }

    pub fn unit(nvars: usize, pos: usize) -> Self {
        let mut m = Self::zero(nvars);
        m.0[pos] = 1;
        m
    }

    pub fn from_counts(counts: &[u8]) -> Self {
        MultiIndex(counts.into())
    }

    /// From a list of positions, e.g. `[0, 0, 2]` for `∂_0² ∂_2`.
    pub fn from_positions(nvars: usize, positions: &[u8]) -> Self {
        let mut m = Self::zero(nvars);
        for p in positions {
            m.0[*p as usize] += 1;
        }
        m
    }

    pub fn counts(&self) -> &[u8] {
        &self.0
    }

    /// Sorted list of positions, the tensor-index form of this multi-index.
    pub fn positions(&self) -> Idx {
        let mut out = Idx::new();
        for (p, c) in self.0.iter().enumerate() {
            for _ in 0..*c {
                out.push(p as u8);
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.0.iter().map(|c| *c as usize).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self - other` if `other <= self` componentwise.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let mut out = self.0.clone();
        for (o, b) in out.iter_mut().zip(other.0.iter()) {
            *o = o.checked_sub(*b)?;
        }
        Some(MultiIndex(out))
    }

    /// `α!`
    pub fn factorial(&self) -> Rational {
        let mut acc = Rational::one();
        for c in self.0.iter() {
            for k in 2..=*c as i64 {
                acc *= int(k);
            }
        }
        acc
    }

    /// All `γ <= self` componentwise with `Π binom(self_i, γ_i)`.
    fn sub_indices(&self) -> Vec<(MultiIndex, Rational)> {
        let mut out = vec![(MultiIndex::zero(self.0.len()), Rational::one())];
        for (pos, &a) in self.0.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * (a as usize + 1));
            for (g, c) in &out {
                let mut binom = Rational::one();
                for k in 0..=a {
                    let mut h = g.clone();
                    h.0[pos] = k;
                    next.push((h, c * &binom));
                    binom = binom * int((a - k) as i64) / int(k as i64 + 1);
                }
            }
            out = next;
        }
        out
    }

    /// Monomial `x^α` in a base space.
    pub fn monomial(&self, space: VarSpace) -> Monomial {
        let exps: Vec<u32> = self.0.iter().map(|c| *c as u32).collect();
        Monomial::from_exps(space, &exps)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order().cmp(&other.order()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All multi-indices over `nvars` positions of total order exactly `k`.
pub fn multi_indices(nvars: usize, k: usize) -> Vec<MultiIndex> {
    crate::tensorcalc::multisets(nvars, k)
        .into_iter()
        .map(|idx| MultiIndex::from_positions(nvars, &idx))
        .collect()
}

/// Lazily computed derivatives `∂^γ p` of one polynomial.
struct DerivCache<'a> {
    base: &'a Polynomial,
    cache: HashMap<MultiIndex, Polynomial>,
}

impl<'a> DerivCache<'a> {
    fn new(base: &'a Polynomial) -> Self {
        DerivCache {
            base,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, g: &MultiIndex) -> Polynomial {
        if g.order() == 0 {
            return self.base.clone();
        }
        if let Some(p) = self.cache.get(g) {
            return p.clone();
        }
        let pos = g.0.iter().position(|c| *c > 0).unwrap();
        let mut prev = g.clone();
        prev.0[pos] -= 1;
        let p = self.get(&prev).partial(pos);
        self.cache.insert(g.clone(), p.clone());
        p
    }
}

/// Differential operator in normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffOp {
    space: VarSpace,
    terms: BTreeMap<MultiIndex, Polynomial>,
}

impl DiffOp {
    pub fn zero(space: VarSpace) -> Self {
        DiffOp {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(space: VarSpace) -> Self {
        Self::multiplication(Polynomial::one(space))
    }

    /// Multiplication by `p`.
    pub fn multiplication(p: Polynomial) -> Self {
        let space = p.space();
        let mut op = Self::zero(space);
        op.add_term(MultiIndex::zero(space.nvars()), &p);
        op
    }

    pub fn constant(space: VarSpace, c: Rational) -> Self {
        Self::multiplication(Polynomial::constant(space, c))
    }

    /// `∂/∂x` at coordinate position `pos`.
    pub fn partial(space: VarSpace, pos: usize) -> Self {
        Self::term(MultiIndex::unit(space.nvars(), pos), Polynomial::one(space))
    }

    /// The single term `c ∂^α`.
    pub fn term(alpha: MultiIndex, c: Polynomial) -> Self {
        let mut op = Self::zero(c.space());
        op.add_term(alpha, &c);
        op
    }

    /// Flat Laplacian on the base space, `2∂_0∂_∞ + Σ ∂_a²` on the ambient space.
    pub fn laplacian(space: VarSpace) -> Self {
        let nv = space.nvars();
        let one = Polynomial::one(space);
        let mut op = Self::zero(space);
        if space.is_ambient() {
            op.add_term(MultiIndex::from_positions(nv, &[0, (nv - 1) as u8]), &one.scale(&int(2)));
            for a in 1..nv - 1 {
                op.add_term(MultiIndex::from_positions(nv, &[a as u8, a as u8]), &one);
            }
        } else {
            for a in 0..nv {
                op.add_term(MultiIndex::from_positions(nv, &[a as u8, a as u8]), &one);
            }
        }
        op
    }

    pub fn bilaplacian(space: VarSpace) -> Self {
        let l = Self::laplacian(space);
        l.compose(&l)
    }

    /// `Σ_I V^I ∂_I` summed over all ordered index tuples.
    pub fn from_sym_tensor(v: &SymTensorField) -> Self {
        let space = v.space();
        let mut op = Self::zero(space);
        for (idx, c) in v.components() {
            let m = int(multiplicity(idx) as i64);
            op.add_term(MultiIndex::from_positions(space.nvars(), idx), &c.scale(&m));
        }
        op
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Polynomial {
        self.terms.get(alpha).cloned().unwrap_or_else(|| Polynomial::zero(self.space))
    }

    /// Highest derivative order present, `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().map(MultiIndex::order).max()
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: &Polynomial) {
        assert_eq!(c.space(), self.space, "operator space mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&alpha) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&alpha);
                }
            }
            None => {
                self.terms.insert(alpha, c.clone());
            }
        }
    }

    fn check_space(&self, other: &DiffOp) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(self.space, other.space));
        }
        Ok(())
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        self.check_space(other).expect("operator space mismatch");
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &DiffOp) -> DiffOp {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        if c.is_zero() {
            return Self::zero(self.space);
        }
        DiffOp {
            space: self.space,
            terms: self.terms.iter().map(|(a, p)| (a.clone(), p.scale(c))).collect(),
        }
    }

    /// `p ∘ self`, i.e. every coefficient multiplied by `p`.
    pub fn left_multiply(&self, p: &Polynomial) -> DiffOp {
        let mut out = Self::zero(self.space);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), &(p * c));
        }
        out
    }

    /// Normal form of `self ∘ other` by the Leibniz rule.
    pub fn try_compose(&self, other: &DiffOp) -> Result<DiffOp> {
        self.check_space(other)?;
        let mut acc: BTreeMap<MultiIndex, Polynomial> = BTreeMap::new();
        let subs: HashMap<&MultiIndex, Vec<(MultiIndex, Rational)>> =
            self.terms.keys().map(|a| (a, a.sub_indices())).collect();
        for (beta, b) in &other.terms {
            let mut cache = DerivCache::new(b);
            for (alpha, a) in &self.terms {
                for (gamma, binom) in &subs[alpha] {
                    let db = cache.get(gamma);
                    if db.is_zero() {
                        continue;
                    }
                    let key = alpha.checked_sub(gamma).unwrap().add(beta);
                    let mut prod = a * &db;
                    if !binom.is_one() {
                        prod = prod.scale(binom);
                    }
                    match acc.get_mut(&key) {
                        Some(e) => *e += &prod,
                        None => {
                            acc.insert(key, prod);
                        }
                    }
                }
            }
        }
        acc.retain(|_, p| !p.is_zero());
        Ok(DiffOp {
            space: self.space,
            terms: acc,
        })
    }

    /// Panics on a space mismatch; see [`DiffOp::try_compose`].
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        self.try_compose(other).expect("operator space mismatch")
    }

    pub fn try_apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.space() != self.space {
            return Err(Error::SpaceMismatch(self.space, f.space()));
        }
        let mut cache = DerivCache::new(f);
        let mut out = Polynomial::zero(self.space);
        for (alpha, c) in &self.terms {
            let d = cache.get(alpha);
            if !d.is_zero() {
                out += &(c * &d);
            }
        }
        Ok(out)
    }

    /// Panics on a space mismatch; see [`DiffOp::try_apply`].
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        self.try_apply(f).expect("operator space mismatch")
    }

    /// Order-`k` part as a symmetric tensor `V^I` with `Σ_I V^I ∂_I` equal to it.
    pub fn symbol(&self, k: usize) -> SymTensorField {
        assert!(!self.space.is_ambient(), "symbol is defined for base operators");
        let mut t = SymTensorField::zero(self.space.n(), k);
        for (alpha, c) in &self.terms {
            if alpha.order() == k {
                let idx = alpha.positions();
                let m = Rational::from_integer(multiplicity(&idx).into());
                t.set(&idx, c.scale(&(Rational::one() / m)));
            }
        }
        t
    }

    /// Part of exact order `k`.
    pub fn homogeneous_part(&self, k: usize) -> DiffOp {
        DiffOp {
            space: self.space,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.order() == k)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    /// Division by the symbol `Σ ξ_a²` of the base Laplacian, reading the
    /// operator as a polynomial in commuting symbols. Returns `(q, r)` with
    /// `self = q·Σξ² + r` and `r` of degree at most one in `ξ_1`.
    pub fn divide_by_laplacian_symbol(&self) -> Result<(DiffOp, DiffOp)> {
        if self.space.is_ambient() {
            return Err(Error::Precondition("symbol division is defined on the base space".into()));
        }
        let nv = self.space.nvars();
        let mut rem = self.terms.clone();
        let mut quot: BTreeMap<MultiIndex, Polynomial> = BTreeMap::new();
        loop {
            // pick the term with the highest power of ξ_1 that is at least 2
            let Some(alpha) = rem.keys().filter(|a| a.0[0] >= 2).max_by_key(|a| a.0[0]).cloned() else {
                break;
            };
            let c = rem.remove(&alpha).unwrap();
            let mut q = alpha.clone();
            q.0[0] -= 2;
            for j in 1..nv {
                let mut t = q.clone();
                t.0[j] += 2;
                let e = rem.entry(t.clone()).or_insert_with(|| Polynomial::zero(self.space));
                *e -= &c;
                if e.is_zero() {
                    rem.remove(&t);
                }
            }
            let e = quot.entry(q.clone()).or_insert_with(|| Polynomial::zero(self.space));
            *e += &c;
            if e.is_zero() {
                quot.remove(&q);
            }
        }
        Ok((
            DiffOp {
                space: self.space,
                terms: quot,
            },
            DiffOp {
                space: self.space,
                terms: rem,
            },
        ))
    }

    /// Quotient and the `k` successive remainders of division by `(Σξ²)^k`.
    pub fn laplacian_power_remainders(&self, k: usize) -> Result<(DiffOp, Vec<DiffOp>)> {
        let mut q = self.clone();
        let mut rems = Vec::with_capacity(k);
        for _ in 0..k {
            let (nq, r) = q.divide_by_laplacian_symbol()?;
            rems.push(r);
            q = nq;
        }
        Ok((q, rems))
    }

    /// `δ` with `δ ∘ Δ^k = self`, or `NotDivisible`.
    pub fn right_factor(&self, k: usize) -> Result<DiffOp> {
        let (q, rems) = self.laplacian_power_remainders(k)?;
        if rems.iter().all(DiffOp::is_zero) {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// `δ` with `δ ∘ Δ² = self`, or `NotDivisible`.
    pub fn right_factor_through_bilaplacian(&self) -> Result<DiffOp> {
        self.right_factor(2)
    }

    /// `Some(δ)` with `Δ² ∘ self = δ ∘ Δ²` when `self` is a symmetry of `Δ²`.
    pub fn is_symmetry(&self) -> Option<DiffOp> {
        if self.space.is_ambient() {
            return None;
        }
        let p = DiffOp::bilaplacian(self.space).compose(self);
        p.right_factor_through_bilaplacian().ok()
    }

    /// Reconstructs an operator of order at most `order` from its action on
    /// base monomials. Coefficients are read off from monomials of degree at
    /// most `order`; the result is then checked on all monomials up to
    /// `check_degree`.
    pub fn from_action(
        space: VarSpace,
        order: usize,
        check_degree: usize,
        mut action: impl FnMut(&Monomial) -> Result<Polynomial>,
    ) -> Result<DiffOp> {
        if space.is_ambient() {
            return Err(Error::Precondition("reconstruction works on the base space".into()));
        }
        let nv = space.nvars();
        let mut op = DiffOp::zero(space);
        let mut images: BTreeMap<MultiIndex, Polynomial> = BTreeMap::new();
        for k in 0..=check_degree.max(order) {
            for alpha in multi_indices(nv, k) {
                let m = alpha.monomial(space);
                let img = action(&m)?;
                if img.space() != space {
                    return Err(Error::SpaceMismatch(space, img.space()));
                }
                if k <= order {
                    let f = Polynomial::term(space, m, Rational::one());
                    let partial = op.apply(&f);
                    let c = (&img - &partial).scale(&(Rational::one() / alpha.factorial()));
                    op.add_term(alpha.clone(), &c);
                }
                images.insert(alpha, img);
            }
        }
        for (alpha, img) in &images {
            let f = Polynomial::term(space, alpha.monomial(space), Rational::one());
            let got = op.apply(&f);
            if &got != img {
                return Err(Error::InconsistentAction {
                    order,
                    detail: format!("monomial {f}: expected {img}, reconstructed {got}"),
                });
            }
        }
        Ok(op)
    }

    /// [`DiffOp::from_action`] with a table of monomial images.
    pub fn operator_from_action(
        space: VarSpace,
        table: &BTreeMap<Monomial, Polynomial>,
        order: usize,
    ) -> Result<DiffOp> {
        let check = table
            .keys()
            .map(|m| m.degree().to_integer().max(0) as usize)
            .max()
            .unwrap_or(0);
        DiffOp::from_action(space, order, check, |m| {
            table
                .get(m)
                .cloned()
                .ok_or_else(|| Error::Precondition(format!("no image for monomial of degree {}", m.degree())))
        })
    }

    pub fn to_json(&self) -> Value {
        let mut terms = Map::new();
        for (alpha, c) in &self.terms {
            let key = alpha
                .positions()
                .iter()
                .map(|p| self.space.var(*p as usize).name())
                .collect::<Vec<_>>()
                .join(",");
            terms.insert(key, c.to_json());
        }
        json!({"space": self.space.name(), "n": self.space.n(), "terms": terms})
    }

    pub fn from_json(value: &Value) -> Result<DiffOp> {
        let n = value
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("operator JSON needs integer `n`".into()))? as usize;
        let space_name = value
            .get("space")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("operator JSON needs `space`".into()))?;
        let space = VarSpace::from_name(space_name, n)?;
        let terms = value
            .get("terms")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("operator JSON needs `terms`".into()))?;
        let mut op = DiffOp::zero(space);
        for (key, poly) in terms {
            let mut alpha = MultiIndex::zero(space.nvars());
            if !key.is_empty() {
                for name in key.split(',') {
                    let v = crate::exactpoly::Var::parse(name.trim())?;
                    let pos = space.position(v).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                    alpha.0[pos] += 1;
                }
            }
            op.add_term(alpha, &Polynomial::from_json(space, poly)?);
        }
        Ok(op)
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (alpha, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let d: Vec<String> = alpha
                .counts()
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(p, k)| {
                    let name = self.space.var(p).name().replacen('x', "d", 1);
                    if *k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            if d.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{}", d.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn b3() -> VarSpace {
        VarSpace::base(3)
    }

    fn x(space: VarSpace, pos: usize) -> Polynomial {
        Polynomial::coord(space, pos)
    }

    #[test]
    fn laplacian_of_radius_squared() {
        let s = b3();
        let r2 = Polynomial::radius_squared(s);
        assert_eq!(DiffOp::laplacian(s).apply(&r2), Polynomial::from_int(s, 6));
        assert_eq!(DiffOp::identity(s).apply(&r2), r2);
        let cubic = &x(s, 0).pow(3) + &(&x(s, 1) * &x(s, 2).pow(2));
        assert!(DiffOp::bilaplacian(s).apply(&cubic).is_zero());
    }

    #[test]
    fn canonical_commutator() {
        let s = b3();
        let d1 = DiffOp::partial(s, 0);
        let x1 = DiffOp::multiplication(x(s, 0));
        let expected = DiffOp::term(MultiIndex::unit(3, 0), x(s, 0)).add(&DiffOp::identity(s));
        assert_eq!(d1.compose(&x1), expected);
        let l = DiffOp::laplacian(s);
        assert_eq!(l.compose(&l), DiffOp::bilaplacian(s));
    }

    #[test]
    fn right_factor_examples() {
        let s = b3();
        let l = DiffOp::laplacian(s);
        let l2 = DiffOp::bilaplacian(s);
        assert_eq!(l2.compose(&l).right_factor_through_bilaplacian().unwrap(), l);
        let x1 = DiffOp::multiplication(x(s, 0));
        assert_eq!(x1.compose(&l2).right_factor_through_bilaplacian().unwrap(), x1);
        assert!(matches!(
            DiffOp::partial(s, 0).right_factor_through_bilaplacian(),
            Err(Error::NotDivisible)
        ));
    }

    #[test]
    fn symmetry_examples() {
        let s = b3();
        let l2 = DiffOp::bilaplacian(s);
        assert_eq!(l2.is_symmetry().unwrap(), l2);
        // rotation generator x1 ∂2 - x2 ∂1
        let rot = DiffOp::term(MultiIndex::unit(3, 1), x(s, 0)).sub(&DiffOp::term(MultiIndex::unit(3, 0), x(s, 1)));
        assert_eq!(rot.is_symmetry().unwrap(), rot);
        assert!(DiffOp::multiplication(x(s, 0)).is_symmetry().is_none());
    }

    #[test]
    fn reconstruction_examples() {
        let s = b3();
        let l = DiffOp::laplacian(s);
        let rec = DiffOp::from_action(s, 2, 4, |m| Ok(l.apply(&Polynomial::term(s, m.clone(), Rational::one())))).unwrap();
        assert_eq!(rec, l);
        let rec = DiffOp::from_action(s, 0, 3, |m| Ok(&x(s, 0) * &Polynomial::term(s, m.clone(), Rational::one())))
            .unwrap();
        assert_eq!(rec, DiffOp::multiplication(x(s, 0)));
        // dilation x^a ∂_a - w at w = 1/2
        let w = rat(1, 2);
        let euler = |m: &Monomial| {
            let f = Polynomial::term(s, m.clone(), Rational::one());
            Ok(&f.euler() - &f.scale(&w))
        };
        let rec = DiffOp::from_action(s, 1, 3, euler).unwrap();
        let mut expected = DiffOp::constant(s, -w.clone());
        for a in 0..3 {
            expected.add_term(MultiIndex::unit(3, a), &x(s, a));
        }
        assert_eq!(rec, expected);
        // an order-2 action cannot be reproduced at order 1
        let err = DiffOp::from_action(s, 1, 3, |m| Ok(l.apply(&Polynomial::term(s, m.clone(), Rational::one()))));
        assert!(matches!(err, Err(Error::InconsistentAction { .. })));
    }

    #[test]
    fn json_round_trip_and_display() {
        let s = VarSpace::ambient(3);
        let op = DiffOp::laplacian(s).add(&DiffOp::multiplication(Polynomial::coord(s, 4)));
        assert_eq!(DiffOp::from_json(&op.to_json()).unwrap(), op);
        assert!(!format!("{op}").is_empty());
    }

    #[test]
    fn symbol_matches_tensor() {
        let s = b3();
        let mut v = SymTensorField::zero(3, 2);
        v.set(&[0, 1], x(s, 2));
        v.set(&[2, 2], Polynomial::from_int(s, 3));
        let op = DiffOp::from_sym_tensor(&v);
        assert_eq!(op.symbol(2), v);
        assert_eq!(op.coefficient(&MultiIndex::from_positions(3, &[0, 1])), x(s, 2).scale(&int(2)));
    }

    fn small_poly(space: VarSpace, max_deg: usize, coeffs: &[i8]) -> Polynomial {
        let nv = space.nvars();
        let mut p = Polynomial::zero(space);
        let mut i = 0;
        for k in 0..=max_deg {
            for a in multi_indices(nv, k) {
                if i < coeffs.len() && coeffs[i] != 0 {
                    p.add_term(a.monomial(space), int(coeffs[i] as i64));
                }
                i += 1;
            }
        }
        p
    }

    fn small_op(space: VarSpace, order: usize, coeffs: &[Vec<i8>]) -> DiffOp {
        let mut op = DiffOp::zero(space);
        let mut i = 0;
        for k in 0..=order {
            for a in multi_indices(space.nvars(), k) {
                if let Some(c) = coeffs.get(i) {
                    op.add_term(a, &small_poly(space, 2, c));
                }
                i += 1;
            }
        }
        op
    }

    fn coeff_strategy(len: usize) -> impl Strategy<Value = Vec<Vec<i8>>> {
        prop::collection::vec(prop::collection::vec(-2i8..3, 0..6), 0..len)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn compose_is_an_action(a in coeff_strategy(10), b in coeff_strategy(10), f in prop::collection::vec(-3i8..4, 0..35)) {
            let s = b3();
            let oa = small_op(s, 3, &a);
            let ob = small_op(s, 3, &b);
            let f = small_poly(s, 4, &f);
            prop_assert_eq!(oa.compose(&ob).apply(&f), oa.apply(&ob.apply(&f)));
        }

        #[test]
        fn compose_is_associative(a in coeff_strategy(6), b in coeff_strategy(6), c in coeff_strategy(6)) {
            let s = b3();
            let (oa, ob, oc) = (small_op(s, 2, &a), small_op(s, 2, &b), small_op(s, 2, &c));
            prop_assert_eq!(oa.compose(&ob).compose(&oc), oa.compose(&ob.compose(&oc)));
        }

        #[test]
        fn right_factor_round_trip(d in coeff_strategy(10)) {
            let s = b3();
            let delta = small_op(s, 2, &d);
            let p = delta.compose(&DiffOp::bilaplacian(s));
            prop_assert_eq!(p.right_factor_through_bilaplacian().unwrap(), delta);
        }

        #[test]
        fn reconstruction_round_trip(d in coeff_strategy(10)) {
            let s = b3();
            let op = small_op(s, 2, &d);
            let rec = DiffOp::from_action(s, 2, 4, |m| Ok(op.apply(&Polynomial::term(s, m.clone(), Rational::one())))).unwrap();
            prop_assert_eq!(rec, op);
        }
    }
}
