//! Sparse multivariate polynomials over the rationals.
//!
//! Two variable spaces exist. The base space `R^n` has coordinates
//! `x1..xn`. The ambient space `R^(n+2)` has coordinates `x0, x1..xn, xinf`
//! (in that positional order), and `x0` alone may carry an arbitrary
//! rational exponent so that homogeneous functions of half-integer degree
//! can be represented exactly.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rational::{exp_to_rational, format_exp, format_rational, parse_rational, Exp, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceKind {
    Base,
    Ambient,
}

/// Which coordinates a polynomial lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSpace {
    kind: SpaceKind,
    n: usize,
}

/// A coordinate. `Coord(a)` is one-based, matching `x^a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Origin,
    Coord(usize),
    Infinity,
}

impl Var {
    pub fn name(&self) -> String {
        match self {
            Var::Origin => "x0".to_string(),
            Var::Coord(a) => format!("x{a}"),
            Var::Infinity => "xinf".to_string(),
        }
    }

    pub fn parse(s: &str) -> Result<Var> {
        match s {
            "x0" => Ok(Var::Origin),
            "xinf" => Ok(Var::Infinity),
            _ => s
                .strip_prefix('x')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|a| *a >= 1)
                .map(Var::Coord)
                .ok_or_else(|| Error::UnknownVariable(s.to_string())),
        }
    }
}

impl VarSpace {
    pub fn base(n: usize) -> Self {
        VarSpace {
            kind: SpaceKind::Base,
            n,
        }
    }

    pub fn ambient(n: usize) -> Self {
        VarSpace {
            kind: SpaceKind::Ambient,
            n,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn is_ambient(&self) -> bool {
        self.kind == SpaceKind::Ambient
    }

    /// Number of coordinates: `n` or `n + 2`.
    pub fn nvars(&self) -> usize {
        match self.kind {
            SpaceKind::Base => self.n,
            SpaceKind::Ambient => self.n + 2,
        }
    }

    pub fn var(&self, pos: usize) -> Var {
        assert!(pos < self.nvars(), "position {pos} out of range");
        match self.kind {
            SpaceKind::Base => Var::Coord(pos + 1),
            SpaceKind::Ambient if pos == 0 => Var::Origin,
            SpaceKind::Ambient if pos == self.n + 1 => Var::Infinity,
            SpaceKind::Ambient => Var::Coord(pos),
        }
    }

    pub fn position(&self, v: Var) -> Option<usize> {
        match (self.kind, v) {
            (SpaceKind::Base, Var::Coord(a)) if (1..=self.n).contains(&a) => Some(a - 1),
            (SpaceKind::Ambient, Var::Origin) => Some(0),
            (SpaceKind::Ambient, Var::Infinity) => Some(self.n + 1),
            (SpaceKind::Ambient, Var::Coord(a)) if (1..=self.n).contains(&a) => Some(a),
            _ => None,
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        (0..self.nvars()).map(|p| self.var(p)).collect()
    }

    /// Position whose exponent lives in the rational slot, if any.
    pub(crate) fn lead_pos(&self) -> Option<usize> {
        self.is_ambient().then_some(0)
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            SpaceKind::Base => "base",
            SpaceKind::Ambient => "ambient",
        }
    }

    pub fn from_name(name: &str, n: usize) -> Result<VarSpace> {
        match name {
            "base" => Ok(VarSpace::base(n)),
            "ambient" => Ok(VarSpace::ambient(n)),
            other => Err(Error::Parse(format!("unknown space `{other}`"))),
        }
    }
}

/// A power product. For the ambient space `exps[0]` is always zero and the
/// exponent of `x0` is held in `lead`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    lead: Exp,
    exps: SmallVec<[u32; 8]>,
}

impl Monomial {
    pub fn one(space: VarSpace) -> Self {
        Monomial {
            lead: Exp::zero(),
            exps: SmallVec::from_elem(0, space.nvars()),
        }
    }

    /// Builds a monomial from integer exponents indexed by position.
    pub fn from_exps(space: VarSpace, exps: &[u32]) -> Self {
        assert_eq!(exps.len(), space.nvars());
        let mut m = Monomial::one(space);
        for (p, e) in exps.iter().enumerate() {
            m.set_int(space, p, *e);
        }
        m
    }

    fn set_int(&mut self, space: VarSpace, pos: usize, e: u32) {
        if space.lead_pos() == Some(pos) {
            self.lead = Exp::from_integer(e as i64);
        } else {
            self.exps[pos] = e;
        }
    }

    pub fn with_lead(mut self, lead: Exp) -> Self {
        self.lead = lead;
        self
    }

    pub fn lead(&self) -> Exp {
        self.lead
    }

    pub fn exponent(&self, space: VarSpace, pos: usize) -> Exp {
        if space.lead_pos() == Some(pos) {
            self.lead
        } else {
            Exp::from_integer(self.exps[pos] as i64)
        }
    }

    /// Integer exponent at a position that is not the rational slot.
    pub fn int_exponent(&self, pos: usize) -> u32 {
        self.exps[pos]
    }

    pub fn degree(&self) -> Exp {
        self.lead + Exp::from_integer(self.exps.iter().map(|e| *e as i64).sum())
    }

    pub fn is_one(&self) -> bool {
        self.lead.is_zero() && self.exps.iter().all(|e| *e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            lead: self.lead + other.lead,
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Integer exponents by position, or `None` if `x0` has a non-integral or
    /// negative power.
    pub fn int_exps(&self, space: VarSpace) -> Option<SmallVec<[u32; 8]>> {
        let mut out = self.exps.clone();
        if let Some(p) = space.lead_pos() {
            if !self.lead.is_integer() || self.lead.is_negative() {
                return None;
            }
            out[p] = *self.lead.numer() as u32;
        }
        Some(out)
    }

    /// Exact derivative `d/dx_pos` as (factor, monomial), or `None` if it vanishes.
    pub fn partial(&self, space: VarSpace, pos: usize) -> Option<(Rational, Monomial)> {
        if space.lead_pos() == Some(pos) {
            if self.lead.is_zero() {
                return None;
            }
            let factor = exp_to_rational(self.lead);
            let mut m = self.clone();
            m.lead -= Exp::one();
            Some((factor, m))
        } else {
            let e = self.exps[pos];
            if e == 0 {
                return None;
            }
            let mut m = self.clone();
            m.exps[pos] -= 1;
            Some((Rational::from_integer(e.into()), m))
        }
    }

    fn fmt_with(&self, space: VarSpace) -> String {
        let mut parts = Vec::new();
        for p in 0..space.nvars() {
            let e = self.exponent(space, p);
            if e.is_zero() {
                continue;
            }
            let name = space.var(p).name();
            if e.is_one() {
                parts.push(name);
            } else if e.is_integer() {
                parts.push(format!("{name}^{}", e.numer()));
            } else {
                parts.push(format!("{name}^({})", format_exp(e)));
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lead.cmp(&other.lead))
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of [`Polynomial::homogeneous_degree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(Rational),
    Inhomogeneous,
}

/// Sparse polynomial with exact rational coefficients, terms in graded
/// lexicographic order, no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    space: VarSpace,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(space: VarSpace) -> Self {
        Polynomial {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: VarSpace) -> Self {
        Self::constant(space, Rational::one())
    }

    pub fn constant(space: VarSpace, c: Rational) -> Self {
        Self::term(space, Monomial::one(space), c)
    }

    pub fn from_int(space: VarSpace, c: i64) -> Self {
        Self::constant(space, Rational::from_integer(c.into()))
    }

    pub fn term(space: VarSpace, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(space);
        p.add_term(m, c);
        p
    }

    /// The coordinate at `pos`.
    pub fn coord(space: VarSpace, pos: usize) -> Self {
        let mut exps: SmallVec<[u32; 8]> = SmallVec::from_elem(0, space.nvars());
        exps[pos] = 1;
        Self::term(space, Monomial::from_exps(space, &exps), Rational::one())
    }

    pub fn var(space: VarSpace, v: Var) -> Self {
        let pos = space
            .position(v)
            .unwrap_or_else(|| panic!("{} is not a variable of {space:?}", v.name()));
        Self::coord(space, pos)
    }

    /// `x0^e` in the ambient space.
    pub fn origin_power(space: VarSpace, e: Exp) -> Self {
        assert!(space.is_ambient());
        Self::term(space, Monomial::one(space).with_lead(e), Rational::one())
    }

    /// `x . x = sum_a (x^a)^2` over the base coordinates `x1..xn`.
    pub fn radius_squared(space: VarSpace) -> Self {
        let mut p = Self::zero(space);
        for a in 1..=space.n() {
            let x = Self::var(space, Var::Coord(a));
            p += &(&x * &x);
        }
        p
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value if this polynomial is a constant (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational) {
        self.check_space(other);
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    fn check_space(&self, other: &Polynomial) {
        assert_eq!(
            self.space, other.space,
            "polynomial space mismatch: {:?} vs {:?}",
            self.space, other.space
        );
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(self.space, other.space));
        }
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(self.space, other.space));
        }
        Ok(self * other)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.space);
        }
        Polynomial {
            space: self.space,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(self.space);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.mul(m), v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.space);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative with respect to the coordinate at `pos`.
    pub fn partial(&self, pos: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.space);
        for (m, c) in &self.terms {
            if let Some((f, dm)) = m.partial(self.space, pos) {
                out.add_term(dm, c * f);
            }
        }
        out
    }

    pub fn partial_var(&self, v: Var) -> Result<Polynomial> {
        let pos = self
            .space
            .position(v)
            .ok_or_else(|| Error::UnknownVariable(v.name()))?;
        Ok(self.partial(pos))
    }

    /// `sum_A x^A d_A p`.
    pub fn euler(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.space);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * exp_to_rational(m.degree()));
        }
        out
    }

    pub fn homogeneous_degree(&self) -> Homogeneity {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        match degrees.next() {
            None => Homogeneity::Zero,
            Some(d) => {
                if degrees.all(|e| e == d) {
                    Homogeneity::Degree(exp_to_rational(d))
                } else {
                    Homogeneity::Inhomogeneous
                }
            }
        }
    }

    /// Largest total degree of any term, `None` for zero.
    pub fn max_degree(&self) -> Option<Exp> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Simultaneous substitution into a (possibly different) target space.
    /// Unbound variables are carried over by name and must exist in `target`.
    pub fn substitute(&self, target: VarSpace, bindings: &BTreeMap<Var, Polynomial>) -> Result<Polynomial> {
        for b in bindings.values() {
            if b.space != target {
                return Err(Error::SpaceMismatch(b.space, target));
            }
        }
        let nv = self.space.nvars();
        let mut power_cache: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(target, c.clone());
            let mut carried = Monomial::one(target);
            for pos in 0..nv {
                let e = m.exponent(self.space, pos);
                if e.is_zero() {
                    continue;
                }
                let var = self.space.var(pos);
                match bindings.get(&var) {
                    Some(b) => {
                        if e.is_integer() && !e.is_negative() {
                            let k = *e.numer() as u32;
                            let p = power_cache.entry((pos, k)).or_insert_with(|| b.pow(k));
                            acc = &acc * p;
                        } else {
                            match b.constant_value() {
                                Some(v) if v.is_one() => {}
                                Some(v) if !v.is_zero() && e.is_integer() => {
                                    let k = e.numer().unsigned_abs() as u32;
                                    let inv = v.recip();
                                    let mut f = Rational::one();
                                    for _ in 0..k {
                                        f *= &inv;
                                    }
                                    acc = acc.scale(&f);
                                }
                                _ => {
                                    return Err(Error::UndefinedPower(format!(
                                        "{}^({}) with {} bound to a non-unit",
                                        var.name(),
                                        format_exp(e),
                                        var.name()
                                    )))
                                }
                            }
                        }
                    }
                    None => {
                        let tpos = target
                            .position(var)
                            .ok_or_else(|| Error::UnknownVariable(var.name()))?;
                        if target.lead_pos() == Some(tpos) {
                            carried.lead += e;
                        } else if e.is_integer() && !e.is_negative() {
                            carried.exps[tpos] += *e.numer() as u32;
                        } else {
                            return Err(Error::UndefinedPower(format!(
                                "{}^({}) in the target space",
                                var.name(),
                                format_exp(e)
                            )));
                        }
                    }
                }
            }
            if !carried.is_one() {
                acc = acc.mul_monomial(&carried, &Rational::one());
            }
            out += &acc;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = Map::new();
                for pos in 0..self.space.nvars() {
                    let e = m.exponent(self.space, pos);
                    if e.is_zero() {
                        continue;
                    }
                    let v = if e.is_integer() {
                        json!(*e.numer())
                    } else {
                        json!(format_exp(e))
                    };
                    exps.insert(self.space.var(pos).name(), v);
                }
                json!({"coeff": format_rational(c), "exps": exps})
            })
            .collect();
        Value::Array(terms)
    }

    pub fn from_json(space: VarSpace, value: &Value) -> Result<Polynomial> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::Parse("polynomial must be a JSON list".into()))?;
        let mut p = Polynomial::zero(space);
        for t in arr {
            let coeff = t
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("term without string `coeff`".into()))?;
            let coeff = parse_rational(coeff)?;
            let mut m = Monomial::one(space);
            if let Some(exps) = t.get("exps") {
                let exps = exps
                    .as_object()
                    .ok_or_else(|| Error::Parse("`exps` must be an object".into()))?;
                for (name, e) in exps {
                    let var = Var::parse(name)?;
                    let pos = space
                        .position(var)
                        .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                    let e: Exp = match e {
                        Value::Number(k) => k
                            .as_i64()
                            .map(Exp::from_integer)
                            .ok_or_else(|| Error::Parse(format!("bad exponent {k}")))?,
                        Value::String(s) => crate::rational::rational_to_exp(&parse_rational(s)?)?,
                        other => return Err(Error::Parse(format!("bad exponent {other}"))),
                    };
                    if space.lead_pos() == Some(pos) {
                        m.lead = e;
                    } else if e.is_integer() && !e.is_negative() {
                        m.exps[pos] = *e.numer() as u32;
                    } else {
                        return Err(Error::Parse(format!(
                            "only x0 may carry a non-natural exponent, got {name}^{}",
                            format_exp(e)
                        )));
                    }
                }
            }
            p.add_term(m, coeff);
        }
        Ok(p)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let body = m.fmt_with(self.space);
            match (body.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{}", format_rational(&mag))?,
                (false, true) => write!(f, "{body}")?,
                (false, false) => write!(f, "{}*{body}", format_rational(&mag))?,
            }
        }
        Ok(())
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        self.check_space(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        self.check_space(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            space: self.space,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_space(rhs);
        let mut out = Polynomial::zero(self.space);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn x(space: VarSpace, a: usize) -> Polynomial {
        Polynomial::var(space, Var::Coord(a))
    }

    #[test]
    fn addition_examples() {
        let s = VarSpace::base(3);
        let one = Polynomial::one(s);
        let p = &(&x(s, 1) + &one) + &(-&x(s, 1));
        assert_eq!(p, one);
        assert_eq!(&p + &Polynomial::zero(s), p);
        let half = x(s, 2).pow(2).scale(&rat(1, 2));
        assert_eq!(&half + &half, x(s, 2).pow(2));
    }

    #[test]
    fn multiplication_examples() {
        let s = VarSpace::base(3);
        let lhs = &(&x(s, 1) + &x(s, 2)) * &(&x(s, 1) - &x(s, 2));
        assert_eq!(lhs, &x(s, 1).pow(2) - &x(s, 2).pow(2));
        assert_eq!(&lhs * &Polynomial::one(s), lhs);
        let a = VarSpace::ambient(3);
        let h = Polynomial::origin_power(a, Exp::new(1, 2));
        assert_eq!(&h * &h, Polynomial::var(a, Var::Origin));
    }

    #[test]
    fn partial_examples() {
        let s = VarSpace::base(3);
        let p = &x(s, 1).pow(2) * &x(s, 2);
        assert_eq!(p.partial(0), (&x(s, 1) * &x(s, 2)).scale(&int(2)));
        assert!(x(s, 2).partial(0).is_zero());
        let a = VarSpace::ambient(3);
        let h = Polynomial::origin_power(a, Exp::new(1, 2));
        let expect = Polynomial::origin_power(a, Exp::new(-1, 2)).scale(&rat(1, 2));
        assert_eq!(h.partial(0), expect);
    }

    #[test]
    fn null_cone_vanishes_on_section() {
        let a = VarSpace::ambient(3);
        let b = VarSpace::base(3);
        let x0 = Polynomial::var(a, Var::Origin);
        let xi = Polynomial::var(a, Var::Infinity);
        let r = &(&x0 * &xi).scale(&int(2)) + &Polynomial::radius_squared(a);
        let mut bind = BTreeMap::new();
        bind.insert(Var::Origin, Polynomial::one(b));
        bind.insert(Var::Infinity, Polynomial::radius_squared(b).scale(&rat(-1, 2)));
        assert!(r.substitute(b, &bind).unwrap().is_zero());
    }

    #[test]
    fn substitute_examples() {
        let b = VarSpace::base(3);
        let mut bind = BTreeMap::new();
        bind.insert(Var::Coord(1), x(b, 1));
        assert_eq!(x(b, 1).substitute(b, &bind).unwrap(), x(b, 1));

        let a = VarSpace::ambient(3);
        let p = &Polynomial::origin_power(a, Exp::new(-3, 2)) * &Polynomial::var(a, Var::Coord(1));
        let mut bind = BTreeMap::new();
        bind.insert(Var::Origin, Polynomial::one(b));
        bind.insert(Var::Infinity, Polynomial::zero(b));
        assert_eq!(p.substitute(b, &bind).unwrap(), x(b, 1));

        bind.insert(Var::Origin, Polynomial::from_int(b, 2));
        assert!(matches!(p.substitute(b, &bind), Err(Error::UndefinedPower(_))));
    }

    #[test]
    fn homogeneity_examples() {
        let a = VarSpace::ambient(3);
        let x0 = Polynomial::var(a, Var::Origin);
        let xi = Polynomial::var(a, Var::Infinity);
        let r = &(&x0 * &xi).scale(&int(2)) + &Polynomial::radius_squared(a);
        assert_eq!(r.homogeneous_degree(), Homogeneity::Degree(int(2)));
        let h = &Polynomial::origin_power(a, Exp::new(1, 2)) * &Polynomial::var(a, Var::Coord(1));
        assert_eq!(h.homogeneous_degree(), Homogeneity::Degree(rat(3, 2)));
        let b = VarSpace::base(3);
        assert_eq!((&x(b, 1) + &x(b, 1).pow(2)).homogeneous_degree(), Homogeneity::Inhomogeneous);
        assert_eq!(Polynomial::zero(b).homogeneous_degree(), Homogeneity::Zero);
    }

    #[test]
    fn space_mismatch_is_an_error() {
        let p = Polynomial::one(VarSpace::base(3));
        let q = Polynomial::one(VarSpace::ambient(3));
        assert!(matches!(p.try_add(&q), Err(Error::SpaceMismatch(..))));
        assert!(matches!(p.try_mul(&q), Err(Error::SpaceMismatch(..))));
    }

    #[test]
    fn json_round_trip_with_fractional_exponent() {
        let a = VarSpace::ambient(4);
        let p = &Polynomial::origin_power(a, Exp::new(-5, 2)) * &Polynomial::var(a, Var::Infinity).scale(&rat(-7, 3));
        let q = &p + &Polynomial::var(a, Var::Coord(4)).pow(3);
        let back = Polynomial::from_json(a, &q.to_json()).unwrap();
        assert_eq!(back, q);
        let text = q.to_json().to_string();
        assert!(text.contains("\"x0\":\"-5/2\""), "{text}");
    }

    #[test]
    fn json_rejects_fractional_exponent_off_origin() {
        let b = VarSpace::base(3);
        let v: Value = serde_json::from_str(r#"[{"coeff":"1","exps":{"x1":"1/2"}}]"#).unwrap();
        assert!(Polynomial::from_json(b, &v).is_err());
    }

    #[test]
    fn display_is_readable() {
        let b = VarSpace::base(3);
        let p = &x(b, 1).pow(2).scale(&rat(3, 2)) - &Polynomial::one(b);
        assert_eq!(p.to_string(), "3/2*x1^2 - 1");
    }
}
