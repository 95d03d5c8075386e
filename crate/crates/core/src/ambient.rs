//! Calculus on the ambient space `R^(n+2)` with quadratic form
//! `2 x0 xinf + Σ x_a²`, the null-cone section `x0 = 1, xinf = -|x|²/2`, and
//! induction of ambient operators to `R^n`.
//!
//! Ambient indices are positions `0..n+2` in the order `(0, 1..n, ∞)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactpoly::{Homogeneity, Monomial, Polynomial, Var, VarSpace};
use crate::rational::{exp_to_rational, format_rational, int, rat, rational_to_exp, Rational};
use crate::tensorcalc::{FullTensor, Metric, PairSkewTensor, SymTensorField};
use crate::weylop::{multi_indices, DiffOp, MultiIndex};

/// The ambient metric `g̃` on `R^(n+2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AmbientMetric {
    n: usize,
}

impl AmbientMetric {
    pub fn new(n: usize) -> Self {
        AmbientMetric { n }
    }

    pub fn dim(&self) -> usize {
        self.n + 2
    }

    /// The index paired with `a` by the metric.
    pub fn partner(&self, a: usize) -> usize {
        Metric::Ambient.partner(a, self.dim())
    }

    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| if self.partner(i) == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect()
    }

    pub fn inverse(&self) -> Vec<Vec<Rational>> {
        crate::linalg::invert(&self.matrix()).expect("ambient metric is invertible")
    }

    /// `(positive, negative)` counts by exact symmetric elimination.
    pub fn signature(&self) -> (usize, usize) {
        inertia(self.matrix())
    }
}

/// Inertia of a symmetric rational matrix via congruence transformations.
fn inertia(mut a: Vec<Vec<Rational>>) -> (usize, usize) {
    let d = a.len();
    let (mut pos, mut neg) = (0, 0);
    for k in 0..d {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..d).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..d).find(|&j| !a[k][j].is_zero()) {
                // row_k += row_j and col_k += col_j
                for c in 0..d {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[k] += v;
                }
            } else {
                continue;
            }
        }
        let p = a[k][k].clone();
        if p > Rational::zero() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..d {
            let f = &a[i][k] / &p;
            if f.is_zero() {
                continue;
            }
            for c in 0..d {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for row in a.iter_mut() {
                let v = &f * &row[k];
                row[i] -= v;
            }
        }
    }
    (pos, neg)
}

/// `r = 2 x0 xinf + Σ x_a²`.
pub fn r(n: usize) -> Polynomial {
    let s = VarSpace::ambient(n);
    let cross = &Polynomial::var(s, Var::Origin) * &Polynomial::var(s, Var::Infinity);
    &cross.scale(&int(2)) + &Polynomial::radius_squared(s)
}

/// Lowered ambient coordinate `x_B = g̃_{BA} x^A` as a polynomial.
pub fn lowered(n: usize, b: usize) -> Polynomial {
    let s = VarSpace::ambient(n);
    Polynomial::coord(s, AmbientMetric::new(n).partner(b))
}

/// Bindings of the section `x0 = 1`, `xinf = -|x|²/2`.
pub fn section_bindings(n: usize) -> BTreeMap<Var, Polynomial> {
    let b = VarSpace::base(n);
    let mut m = BTreeMap::new();
    m.insert(Var::Origin, Polynomial::one(b));
    m.insert(Var::Infinity, Polynomial::radius_squared(b).scale(&rat(-1, 2)));
    m
}

/// Restriction of an ambient function to `R^n` through the section.
pub fn restrict(p: &Polynomial) -> Result<Polynomial> {
    let n = p.space().n();
    p.substitute(VarSpace::base(n), &section_bindings(n))
}

/// Homogeneous extension `x0^(w - deg m) m` of each base monomial `m` of `f`.
pub fn extend(f: &Polynomial, w: &Rational) -> Result<Polynomial> {
    let n = f.space().n();
    let s = VarSpace::ambient(n);
    let mut out = Polynomial::zero(s);
    for (m, c) in f.terms() {
        out.add_term(extend_monomial(n, m, w)?, c.clone());
    }
    Ok(out)
}

fn extend_monomial(n: usize, m: &Monomial, w: &Rational) -> Result<Monomial> {
    let b = VarSpace::base(n);
    let s = VarSpace::ambient(n);
    let mut exps = vec![0u32; n + 2];
    for a in 0..n {
        exps[a + 1] = m.int_exponent(a);
    }
    let deg = exp_to_rational(m.degree());
    debug_assert!(b.nvars() == n);
    let lead = rational_to_exp(&(w - deg))?;
    Ok(Monomial::from_exps(s, &exps).with_lead(lead))
}

/// Random homogeneous ambient function of degree `w`: a combination of
/// `x0^(w - deg m) m` over monomials `m` in the other variables of degree at
/// most `max_degree`, with small integer coefficients.
pub fn random_homogeneous(n: usize, w: &Rational, max_degree: usize, rng: &mut impl Rng) -> Result<Polynomial> {
    let s = VarSpace::ambient(n);
    let mut out = Polynomial::zero(s);
    for k in 0..=max_degree {
        for alpha in multi_indices(n + 1, k) {
            let c = rng.gen_range(-3i64..=3);
            if c == 0 {
                continue;
            }
            let mut exps = vec![0u32; n + 2];
            for (i, e) in alpha.counts().iter().enumerate() {
                exps[i + 1] = *e as u32;
            }
            let lead = rational_to_exp(&(w - int(k as i64)))?;
            out.add_term(Monomial::from_exps(s, &exps).with_lead(lead), int(c));
        }
    }
    Ok(out)
}

/// `Φ_B` and `Ψ^b_Q` as base polynomials.
#[derive(Clone, Debug)]
pub struct PhiPsi {
    n: usize,
    phi: Vec<Polynomial>,
    psi: Vec<Vec<Polynomial>>,
}

impl PhiPsi {
    pub fn new(n: usize) -> Self {
        let b = VarSpace::base(n);
        let mut phi = vec![Polynomial::radius_squared(b).scale(&rat(-1, 2))];
        phi.extend((0..n).map(|a| Polynomial::coord(b, a)));
        phi.push(Polynomial::one(b));
        let psi = (0..n)
            .map(|bi| {
                let mut row = vec![-&Polynomial::coord(b, bi)];
                row.extend((0..n).map(|q| {
                    if q == bi {
                        Polynomial::one(b)
                    } else {
                        Polynomial::zero(b)
                    }
                }));
                row.push(Polynomial::zero(b));
                row
            })
            .collect();
        PhiPsi { n, phi, psi }
    }

    pub fn phi(&self, big_b: usize) -> &Polynomial {
        &self.phi[big_b]
    }

    /// `Ψ^b_Q` with `b` zero-based.
    pub fn psi(&self, b: usize, q: usize) -> &Polynomial {
        &self.psi[b][q]
    }

    fn partner(&self, a: usize) -> usize {
        AmbientMetric::new(self.n).partner(a)
    }

    /// `g̃^{QR} Ψ^b_Q Ψ^c_R = δ^{bc}`.
    pub fn psi_psi_is_metric(&self) -> bool {
        let base = VarSpace::base(self.n);
        (0..self.n).all(|b| {
            (0..self.n).all(|c| {
                let mut acc = Polynomial::zero(base);
                for q in 0..self.n + 2 {
                    acc += &(&self.psi[b][q] * &self.psi[c][self.partner(q)]);
                }
                acc == if b == c { Polynomial::one(base) } else { Polynomial::zero(base) }
            })
        })
    }

    /// `Φ_B g̃^{BQ} Ψ^b_Q = 0`.
    pub fn phi_psi_vanishes(&self) -> bool {
        (0..self.n).all(|b| {
            let mut acc = Polynomial::zero(VarSpace::base(self.n));
            for q in 0..self.n + 2 {
                acc += &(&self.phi[self.partner(q)] * &self.psi[b][q]);
            }
            acc.is_zero()
        })
    }

    /// `Φ_B Φ_C g̃^{BC} = 0`.
    pub fn phi_is_null(&self) -> bool {
        let mut acc = Polynomial::zero(VarSpace::base(self.n));
        for q in 0..self.n + 2 {
            acc += &(&self.phi[q] * &self.phi[self.partner(q)]);
        }
        acc.is_zero()
    }

    /// `Φ_B` agrees with the lowered coordinate `x_B` on the section.
    pub fn phi_is_restricted_coordinate(&self) -> bool {
        (0..self.n + 2).all(|b| restrict(&lowered(self.n, b)).map(|p| p == self.phi[b]).unwrap_or(false))
    }
}

fn check_young_type(v: &PairSkewTensor) -> Result<()> {
    if !v.is_totally_trace_free() {
        return Err(Error::SymmetryType("tensor is not totally trace-free".into()));
    }
    if !v.three_skew_vanishes() {
        return Err(Error::SymmetryType("skewing over three indices does not vanish".into()));
    }
    Ok(())
}

/// Contracts each pair's first index with `Φ` and second with `Ψ`, and a
/// trailing pair with two copies of `Φ`.
fn realize_unchecked(v: &PairSkewTensor) -> SymTensorField {
    let n = v.n();
    let pp = PhiPsi::new(n);
    let base = VarSpace::base(n);
    let k = v.pairs();
    let mut full: FullTensor<Polynomial> = FullTensor::new(n, k);
    for (idx, c) in v.expand() {
        let mut coeff = Polynomial::constant(base, c);
        for i in 0..k {
            coeff = &coeff * pp.phi(idx[2 * i] as usize);
        }
        if v.has_tail() {
            coeff = &(&coeff * pp.phi(idx[2 * k] as usize)) * pp.phi(idx[2 * k + 1] as usize);
        }
        if coeff.is_zero() {
            continue;
        }
        // choose output indices b_i with Ψ^{b_i}_{Q_i} nonzero
        let mut partial: Vec<(Vec<u8>, Polynomial)> = vec![(Vec::new(), coeff)];
        for i in 0..k {
            let q = idx[2 * i + 1] as usize;
            let mut next = Vec::new();
            for (out, p) in &partial {
                for b in 0..n {
                    let psi = pp.psi(b, q);
                    if psi.is_zero() {
                        continue;
                    }
                    let mut o = out.clone();
                    o.push(b as u8);
                    next.push((o, p * psi));
                }
            }
            partial = next;
        }
        for (out, p) in partial {
            full.add_at(&out, &p, &Rational::one());
        }
    }
    full.symmetrize(Metric::Euclidean)
}

/// The conformal Killing tensor `Φ_B…Φ_C V^{BQ…CR} Ψ^b_Q…Ψ^c_R`.
pub fn realize_ckt(v: &PairSkewTensor) -> Result<SymTensorField> {
    if v.has_tail() {
        return Err(Error::SymmetryType("expected skew pairs only".into()));
    }
    check_young_type(v)?;
    Ok(realize_unchecked(v))
}

/// Conformal Killing vector of a Lie algebra element.
pub fn lie_to_ckv(v: &PairSkewTensor) -> Result<SymTensorField> {
    if v.pairs() != 1 || v.has_tail() {
        return Err(Error::SymmetryType("expected a single skew pair".into()));
    }
    Ok(realize_unchecked(v))
}

/// The generalised conformal Killing tensor `Φ…Φ Φ_D Φ_E W^{…DE} Ψ…Ψ`.
pub fn realize_gckt(w: &PairSkewTensor) -> Result<SymTensorField> {
    if !w.has_tail() {
        return Err(Error::SymmetryType("expected a trailing symmetric pair".into()));
    }
    check_young_type(w)?;
    Ok(realize_unchecked(w))
}

/// `x_{B1}…x_{Bk} ∂_{Q1}…∂_{Qk}` summed against the components of `v`,
/// first index of each pair on `x`, second on `∂`.
fn pair_operator(v: &PairSkewTensor) -> DiffOp {
    let n = v.n();
    let s = VarSpace::ambient(n);
    let metric = AmbientMetric::new(n);
    let k = v.pairs();
    let mut op = DiffOp::zero(s);
    for (idx, c) in v.expand() {
        let mut exps = vec![0u32; n + 2];
        let mut derivs = Vec::with_capacity(k);
        for i in 0..k {
            exps[metric.partner(idx[2 * i] as usize)] += 1;
            derivs.push(idx[2 * i + 1]);
        }
        let m = Monomial::from_exps(s, &exps);
        op.add_term(MultiIndex::from_positions(n + 2, &derivs), &Polynomial::term(s, m, c));
    }
    op
}

/// `V^{BQ…CR} x_B…x_C ∂_Q…∂_R` for `V` of the trace-free two-row type.
pub fn ambient_op_v(v: &PairSkewTensor) -> Result<DiffOp> {
    if v.has_tail() {
        return Err(Error::SymmetryType("expected skew pairs only".into()));
    }
    if v.pairs() > 1 {
        check_young_type(v)?;
    }
    Ok(pair_operator(v))
}

/// `E_{BQ} = x_B ∂_Q - x_Q ∂_B`, the ambient operator of a unit generator.
pub fn generator_operator(n: usize, b: usize, q: usize) -> DiffOp {
    pair_operator(&PairSkewTensor::unit_pair(n, b as u8, q as u8))
}

/// `Σ X^{key} E_{p1} ∘ … ∘ E_{pk}` for any pair-skew `X` without a trailing
/// pair: the composite of the basic operators extended linearly.
pub fn word_operator(x: &PairSkewTensor) -> DiffOp {
    assert!(!x.has_tail(), "word operators take skew pairs only");
    let n = x.n();
    let s = VarSpace::ambient(n);
    if x.pairs() == 0 {
        let c = x.components().next().map(|(_, v)| v.clone()).unwrap_or_else(Rational::zero);
        return DiffOp::constant(s, c);
    }
    if x.pairs() == 1 {
        return pair_operator(x);
    }
    let mut groups: BTreeMap<(u8, u8), PairSkewTensor> = BTreeMap::new();
    for (key, c) in x.components() {
        let rest = groups
            .entry((key[0], key[1]))
            .or_insert_with(|| PairSkewTensor::new(n, x.pairs() - 1, false));
        rest.set(&key[2..], c.clone());
    }
    let mut op = DiffOp::zero(s);
    for ((a, b), rest) in groups {
        let inner = word_operator(&rest);
        op = op.add(&generator_operator(n, a as usize, b as usize).compose(&inner));
    }
    op
}

/// `X^{BQCR} x_B x_C ∂_Q ∂_R + X^{BQ}_Q^R x_B ∂_R` for a two-pair `X`.
pub fn two_pair_operator(x: &PairSkewTensor) -> DiffOp {
    assert_eq!((x.pairs(), x.has_tail()), (2, false));
    let n = x.n();
    let s = VarSpace::ambient(n);
    let metric = AmbientMetric::new(n);
    let mut op = DiffOp::zero(s);
    for (idx, c) in x.expand() {
        let (b, q, cc, rr) = (idx[0] as usize, idx[1] as usize, idx[2] as usize, idx[3] as usize);
        let mut exps = vec![0u32; n + 2];
        exps[metric.partner(b)] += 1;
        exps[metric.partner(cc)] += 1;
        op.add_term(
            MultiIndex::from_positions(n + 2, &[q as u8, rr as u8]),
            &Polynomial::term(s, Monomial::from_exps(s, &exps), c.clone()),
        );
        // X^{BQ}_Q^R: second index of the first pair contracted with the first of the second
        if metric.partner(q) == cc {
            let mut e = vec![0u32; n + 2];
            e[metric.partner(b)] += 1;
            op.add_term(
                MultiIndex::from_positions(n + 2, &[rr as u8]),
                &Polynomial::term(s, Monomial::from_exps(s, &e), c),
            );
        }
    }
    op
}

/// `W^{BQ…CRDE} x_B…x_C (x_D x_E Δ̃ + c x_D ∂_E) ∂_Q…∂_R`.
pub fn ambient_op_w_with(w: &PairSkewTensor, c: &Rational) -> Result<DiffOp> {
    if !w.has_tail() {
        return Err(Error::SymmetryType("expected a trailing symmetric pair".into()));
    }
    check_young_type(w)?;
    let n = w.n();
    let s = VarSpace::ambient(n);
    let metric = AmbientMetric::new(n);
    let lap = DiffOp::laplacian(s);
    let k = w.pairs();
    let mut op = DiffOp::zero(s);
    for (idx, v) in w.expand() {
        let mut exps = vec![0u32; n + 2];
        let mut derivs = Vec::with_capacity(k + 1);
        for i in 0..k {
            exps[metric.partner(idx[2 * i] as usize)] += 1;
            derivs.push(idx[2 * i + 1]);
        }
        let d = idx[2 * k] as usize;
        let e = idx[2 * k + 1] as usize;
        exps[metric.partner(d)] += 1;
        let mut first = exps.clone();
        first[metric.partner(e)] += 1;
        let inner = MultiIndex::from_positions(n + 2, &derivs);
        let coeff = Polynomial::term(s, Monomial::from_exps(s, &first), v.clone());
        for (alpha, lc) in lap.terms() {
            op.add_term(alpha.add(&inner), &(&coeff * lc));
        }
        let mut with_e = derivs.clone();
        with_e.push(e as u8);
        op.add_term(
            MultiIndex::from_positions(n + 2, &with_e),
            &Polynomial::term(s, Monomial::from_exps(s, &exps), &v * c),
        );
    }
    Ok(op)
}

/// The ambient operator `W (x_D x_E Δ̃ - 2 x_D ∂_E) ∂…` of a tensor with a
/// trailing symmetric pair.
pub fn ambient_op_w(w: &PairSkewTensor) -> Result<DiffOp> {
    ambient_op_w_with(w, &int(-2))
}

/// Pads `W^{…DE}` to `W^{…DE} g̃^{ST} - W^{…SE} g̃^{DT} - W^{…DT} g̃^{SE} + W^{…ST} g̃^{DE}`
/// with pairs `DS`, `ET`, then symmetrises over all pairs.
pub fn pad_w(w: &PairSkewTensor) -> PairSkewTensor {
    assert!(w.has_tail());
    let n = w.n();
    let metric = AmbientMetric::new(n);
    let k = w.pairs();
    let mut raw = Vec::new();
    for (idx, v) in w.expand() {
        let head = &idx[..2 * k];
        let (a, b) = (idx[2 * k], idx[2 * k + 1]);
        for c in 0..(n + 2) as u8 {
            let pc = metric.partner(c as usize) as u8;
            // index order: head, D, S, E, T
            for (d, s_, e, t, sign) in [(a, c, b, pc, 1), (c, a, b, pc, -1), (a, c, pc, b, -1), (c, a, pc, b, 1)] {
                let mut key: crate::tensorcalc::PairKey = head.into();
                key.extend_from_slice(&[d, s_, e, t]);
                raw.push((key, &v * int(sign)));
            }
        }
    }
    PairSkewTensor::from_raw(n, k + 2, false, raw).symmetrize_pairs()
}

/// Degree shift of a homogeneous ambient operator: every term `c ∂^α` has
/// `deg c - |α|` equal to the returned value.
pub fn degree_shift(op: &DiffOp) -> Result<Rational> {
    let mut shift: Option<Rational> = None;
    for (alpha, c) in op.terms() {
        let d = match c.homogeneous_degree() {
            Homogeneity::Degree(d) => d,
            Homogeneity::Zero => continue,
            Homogeneity::Inhomogeneous => return Err(Error::NotHomogeneous),
        };
        let h = d - int(alpha.order() as i64);
        match &shift {
            None => shift = Some(h),
            Some(s) if *s != h => return Err(Error::NotHomogeneous),
            _ => {}
        }
    }
    Ok(shift.unwrap_or_else(Rational::zero))
}

/// Whether `op(r g)` vanishes on the cone for random `g` of degree `w - 2`.
pub fn preserves_r_ideal(op: &DiffOp, w: &Rational, samples: usize, rng: &mut impl Rng) -> Result<bool> {
    let n = op.space().n();
    let rr = r(n);
    let deg = op.order().unwrap_or(0) + 2;
    for _ in 0..samples {
        let g = random_homogeneous(n, &(w - int(2)), deg, rng)?;
        if !restrict(&op.apply(&(&rr * &g)))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The operator on `R^n` induced by `op` acting on functions homogeneous of
/// degree `w`. Checks first that `op` maps multiples of `r` to multiples of
/// `r` at this weight.
pub fn induce(op: &DiffOp, w: &Rational) -> Result<DiffOp> {
    induce_seeded(op, w, 0x5eed)
}

/// [`induce`] with an explicit seed for the ideal-preservation samples.
pub fn induce_seeded(op: &DiffOp, w: &Rational, seed: u64) -> Result<DiffOp> {
    use rand::SeedableRng;
    let space = op.space();
    if !space.is_ambient() {
        return Err(Error::Precondition("induce expects an ambient operator".into()));
    }
    let n = space.n();
    let base = VarSpace::base(n);
    if op.is_zero() {
        return Ok(DiffOp::zero(base));
    }
    degree_shift(op)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    if !preserves_r_ideal(op, w, 2, &mut rng)? {
        return Err(Error::IdealNotPreserved(format_rational(w)));
    }
    let order = op.order().unwrap_or(0);
    DiffOp::from_action(base, order, order + 2, |m| {
        let f = Polynomial::term(space, extend_monomial(n, m, w)?, Rational::one());
        restrict(&op.apply(&f))
    })
}

/// `true` if `Δ̃(r g) = r Δ̃ g + 2(n + 2w - 2) g` for `g` homogeneous of degree `w - 2`.
pub fn laplacian_of_r_multiple_holds(g: &Polynomial, w: &Rational) -> bool {
    let n = g.space().n();
    let lap = DiffOp::laplacian(g.space());
    let rr = r(n);
    let lhs = lap.apply(&(&rr * g));
    let rhs = &(&rr * &lap.apply(g)) + &g.scale(&(int(2) * (int(n as i64) + int(2) * w - int(2))));
    lhs == rhs
}

/// `true` if `Δ̃²(r g) = r Δ̃² g + 4(n + 2w - 4) Δ̃ g` for `g` homogeneous of degree `w - 2`.
pub fn bilaplacian_of_r_multiple_holds(g: &Polynomial, w: &Rational) -> bool {
    let n = g.space().n();
    let lap = DiffOp::laplacian(g.space());
    let rr = r(n);
    let lhs = lap.apply(&lap.apply(&(&rr * g)));
    let lg = lap.apply(g);
    let rhs = &(&rr * &lap.apply(&lg)) + &lg.scale(&(int(4) * (int(n as i64) + int(2) * w - int(4))));
    lhs == rhs
}

/// `op(r g) = r op(g)` for the given `g`.
pub fn commutes_with_r(op: &DiffOp, g: &Polynomial) -> bool {
    let rr = r(op.space().n());
    op.apply(&(&rr * g)) == &rr * &op.apply(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn half_weight(n: usize, k: i64) -> Rational {
        int(k) - rat(n as i64, 2)
    }

    #[test]
    fn metric_and_cone() {
        for n in 3..=5 {
            let m = AmbientMetric::new(n);
            assert_eq!(m.inverse(), m.matrix());
            assert_eq!(m.signature(), (n + 1, 1));
            assert!(restrict(&r(n)).unwrap().is_zero());
            assert_eq!(r(n).homogeneous_degree(), Homogeneity::Degree(int(2)));
        }
    }

    #[test]
    fn phi_psi_identities() {
        for n in 3..=5 {
            let pp = PhiPsi::new(n);
            assert!(pp.psi_psi_is_metric());
            assert!(pp.phi_psi_vanishes());
            assert!(pp.phi_is_null());
            assert!(pp.phi_is_restricted_coordinate());
        }
    }

    #[test]
    fn block_examples_of_lie_to_ckv() {
        let n = 3;
        let b = VarSpace::base(n);
        let x = |a: usize| Polynomial::coord(b, a);
        // λ = 1
        let v = lie_to_ckv(&PairSkewTensor::unit_pair(n, 0, 4)).unwrap();
        for a in 0..n {
            assert_eq!(v.component(&[a as u8]), x(a));
        }
        // s = e1 sits at V^{1∞}
        let v = lie_to_ckv(&PairSkewTensor::unit_pair(n, 1, 4)).unwrap();
        assert_eq!(v.component(&[0]), Polynomial::from_int(b, -1));
        assert!(v.component(&[1]).is_zero());
        // r = e1: V^{01} = 1 and V^{10} = -1
        let v = lie_to_ckv(&PairSkewTensor::unit_pair(n, 0, 1)).unwrap();
        let half_r2 = Polynomial::radius_squared(b).scale(&rat(1, 2));
        assert_eq!(v.component(&[0]), &(&x(0) * &x(0)) - &half_r2);
        assert_eq!(v.component(&[1]), &x(0) * &x(1));
    }

    #[test]
    fn laplacian_identities_on_random_functions() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [3, 4] {
            for w in [half_weight(n, 1), half_weight(n, 2), rat(1, 7)] {
                for _ in 0..3 {
                    let g = random_homogeneous(n, &(&w - int(2)), 4, &mut rng).unwrap();
                    assert!(laplacian_of_r_multiple_holds(&g, &w));
                    assert!(bilaplacian_of_r_multiple_holds(&g, &w));
                }
            }
            let lap = DiffOp::laplacian(VarSpace::ambient(n));
            assert_eq!(lap.apply(&r(n)), Polynomial::from_int(VarSpace::ambient(n), 2 * (n as i64 + 2)));
        }
    }

    #[test]
    fn dilation_operator() {
        let n = 3;
        let s = VarSpace::ambient(n);
        let op = ambient_op_v(&PairSkewTensor::unit_pair(n, 0, 4)).unwrap();
        // V^{0∞} = 1: x_0 ∂_∞ - x_∞ ∂_0 = xinf ∂_inf - x0 ∂_0
        let expected = DiffOp::term(MultiIndex::unit(5, 4), Polynomial::coord(s, 4))
            .sub(&DiffOp::term(MultiIndex::unit(5, 0), Polynomial::coord(s, 0)));
        assert_eq!(op, expected);
    }

    #[test]
    fn induced_laplacians() {
        for n in [3, 4] {
            let s = VarSpace::ambient(n);
            let b = VarSpace::base(n);
            let lap = DiffOp::laplacian(s);
            assert_eq!(induce(&lap, &half_weight(n, 1)).unwrap(), DiffOp::laplacian(b));
            let lap2 = lap.compose(&lap);
            assert_eq!(induce(&lap2, &half_weight(n, 2)).unwrap(), DiffOp::bilaplacian(b));
            assert!(matches!(induce(&lap, &half_weight(n, 2)), Err(Error::IdealNotPreserved(_))));
        }
    }

    #[test]
    fn word_operator_matches_two_pair_formula() {
        let n = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut raw = Vec::new();
        for _ in 0..10 {
            let k: crate::tensorcalc::PairKey = (0..4).map(|_| rng.gen_range(0..5u8)).collect();
            raw.push((k, int(rng.gen_range(-3..4))));
        }
        let x = PairSkewTensor::from_raw(n, 2, false, raw);
        assert_eq!(word_operator(&x), two_pair_operator(&x));
    }

    #[test]
    fn padded_tail_matches_bullet_embedding() {
        let n = 3;
        let mut w = PairSkewTensor::new(n, 0, true);
        w.set(&[1, 2], int(1));
        w.set(&[0, 0], int(3));
        let mut sym = crate::tensorcalc::ConstSymTensor::new(n + 2, Metric::Ambient, 2);
        sym.set(&[1, 2], int(1));
        sym.set(&[0, 0], int(3));
        let emb = crate::tensorcalc::GgDecomposition::embed_bullet(n, &sym);
        assert_eq!(pad_w(&w), emb);
    }

    #[test]
    fn zero_inputs() {
        let w = PairSkewTensor::new(3, 0, true);
        assert!(ambient_op_w(&w).unwrap().is_zero());
        assert!(realize_gckt(&w).unwrap().is_zero());
    }
}
