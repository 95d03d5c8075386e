//! The Lie algebra `so(n+1,1)` as skew ambient tensors, its products, the
//! canonical symmetry operators on densities of weight `w`, and the
//! brute-force enumeration of symmetries of `Δ²`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::Rng;

use crate::ambient::{self, lie_to_ckv, realize_ckt, AmbientMetric};
use crate::cktsolve::{ckt_residual, gckt_residual};
use crate::error::{Error, Result};
use crate::exactpoly::{Monomial, Polynomial, VarSpace};
use crate::linalg::{rank_of_vectors, solve_columns, SparseVec, SystemBuilder};
use crate::rational::{int, rat, Rational};
use crate::tensorcalc::{
    counterexample_tensor, decompose_gg, ConstSymTensor, GgDecomposition, Metric, PairKey, PairSkewTensor,
    SymTensorField,
};
use crate::weylop::{multi_indices, DiffOp, MultiIndex};

/// Element `V^{BQ}` of `so(n+1,1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement(PairSkewTensor);

/// Block view of a Lie algebra element: `V^{0∞} = λ`, `V^{0q} = r^q`,
/// `V^{b∞} = s^b`, `V^{bq} = m^{bq}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocks {
    pub lambda: Rational,
    pub r: Vec<Rational>,
    pub s: Vec<Rational>,
    pub m: Vec<Vec<Rational>>,
}

impl LieElement {
    pub fn new(t: PairSkewTensor) -> Result<Self> {
        if t.pairs() != 1 || t.has_tail() {
            return Err(Error::SymmetryType("a Lie algebra element has exactly one skew pair".into()));
        }
        Ok(LieElement(t))
    }

    pub fn zero(n: usize) -> Self {
        LieElement(PairSkewTensor::new(n, 1, false))
    }

    pub fn unit(n: usize, a: usize, b: usize) -> Self {
        LieElement(PairSkewTensor::unit_pair(n, a as u8, b as u8))
    }

    /// The generator with `λ = 1`, realised as `x^a ∂_a`.
    pub fn dilation(n: usize) -> Self {
        Self::unit(n, 0, n + 1)
    }

    /// The generator with `s = e_a` (`a` zero-based), realised as `-∂_a`.
    pub fn translation(n: usize, a: usize) -> Self {
        Self::unit(n, a + 1, n + 1)
    }

    /// The generator with `r = e_a`, an inversion.
    pub fn inversion(n: usize, a: usize) -> Self {
        Self::unit(n, 0, a + 1)
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn tensor(&self) -> &PairSkewTensor {
        &self.0
    }

    pub fn get(&self, b: usize, q: usize) -> Rational {
        self.0.get(&[b as u8, q as u8])
    }

    pub fn add(&self, other: &Self) -> Self {
        LieElement(self.0.add(&other.0))
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        LieElement(self.0.scaled(c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn from_blocks(n: usize, b: &Blocks) -> Result<Self> {
        if b.r.len() != n || b.s.len() != n || b.m.len() != n || b.m.iter().any(|row| row.len() != n) {
            return Err(Error::Precondition("block sizes must equal n".into()));
        }
        let mut t = PairSkewTensor::new(n, 1, false);
        let inf = (n + 1) as u8;
        t.set(&[0, inf], b.lambda.clone());
        for a in 0..n {
            t.set(&[0, (a + 1) as u8], b.r[a].clone());
            t.set(&[(a + 1) as u8, inf], b.s[a].clone());
            for c in a + 1..n {
                if b.m[a][c] != -&b.m[c][a] {
                    return Err(Error::Precondition("block m must be skew".into()));
                }
                t.set(&[(a + 1) as u8, (c + 1) as u8], b.m[a][c].clone());
            }
            if !b.m[a][a].is_zero() {
                return Err(Error::Precondition("block m must be skew".into()));
            }
        }
        Ok(LieElement(t))
    }

    pub fn blocks(&self) -> Blocks {
        let n = self.n();
        Blocks {
            lambda: self.get(0, n + 1),
            r: (0..n).map(|a| self.get(0, a + 1)).collect(),
            s: (0..n).map(|a| self.get(a + 1, n + 1)).collect(),
            m: (0..n).map(|a| (0..n).map(|c| self.get(a + 1, c + 1)).collect()).collect(),
        }
    }

    /// Realised conformal Killing vector.
    pub fn vector_field(&self) -> SymTensorField {
        lie_to_ckv(&self.0).expect("one skew pair")
    }

    /// Random element with small integer entries.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let mut t = PairSkewTensor::new(n, 1, false);
        for a in 0..(n + 2) as u8 {
            for b in a + 1..(n + 2) as u8 {
                t.set(&[a, b], int(rng.gen_range(-2..=2)));
            }
        }
        LieElement(t)
    }
}

/// The `(n+2)(n+1)/2` unit generators `E_{ab}`, `a < b`.
pub fn lie_basis(n: usize) -> Vec<LieElement> {
    let d = n + 2;
    (0..d).flat_map(|a| (a + 1..d).map(move |b| LieElement::unit(n, a, b))).collect()
}

/// `[U,V]^{BR} = U^{BQ} V_Q^R - V^{BQ} U_Q^R`.
pub fn bracket(u: &LieElement, v: &LieElement) -> LieElement {
    let n = u.n();
    let metric = AmbientMetric::new(n);
    let d = n + 2;
    let mut t = PairSkewTensor::new(n, 1, false);
    for b in 0..d {
        for r in b + 1..d {
            let mut acc = Rational::zero();
            for q in 0..d {
                let pq = metric.partner(q);
                acc += u.get(b, q) * v.get(pq, r) - v.get(b, q) * u.get(pq, r);
            }
            t.set(&[b as u8, r as u8], acc);
        }
    }
    LieElement(t)
}

/// `⟨U,V⟩ = -n U^{BQ} V_{BQ}`.
pub fn killing_form(u: &LieElement, v: &LieElement) -> Rational {
    let n = u.n();
    let metric = AmbientMetric::new(n);
    let d = n + 2;
    let mut acc = Rational::zero();
    for b in 0..d {
        for q in 0..d {
            acc += u.get(b, q) * v.get(metric.partner(b), metric.partner(q));
        }
    }
    -int(n as i64) * acc
}

fn grad(p: &Polynomial, a: usize) -> Polynomial {
    p.partial(a)
}

fn div(v: &SymTensorField) -> Polynomial {
    v.divergence().as_scalar()
}

/// `(∇_b X^a)(∇_a Y^b) - (n-2)/n² (∇·X)(∇·Y) - (2/n) X^a ∇_a ∇·Y - (2/n) Y^a ∇_a ∇·X`
/// for conformal Killing vectors; errors if the result is not constant.
pub fn flat_pairing(x: &SymTensorField, y: &SymTensorField) -> Result<Rational> {
    let n = x.dim();
    let b = x.space();
    let mut acc = Polynomial::zero(b);
    for a in 0..n {
        for c in 0..n {
            acc += &(&grad(&x.component(&[a as u8]), c) * &grad(&y.component(&[c as u8]), a));
        }
    }
    let (dx, dy) = (div(x), div(y));
    let nn = n as i64;
    acc -= &(&dx * &dy).scale(&rat(nn - 2, nn * nn));
    for a in 0..n {
        acc -= &(&x.component(&[a as u8]) * &grad(&dy, a)).scale(&rat(2, nn));
        acc -= &(&y.component(&[a as u8]) * &grad(&dx, a)).scale(&rat(2, nn));
    }
    acc.constant_value()
        .ok_or_else(|| Error::Precondition(format!("pairing is not constant: {acc}")))
}

/// `[X,Y]^a = X^b ∇_b Y^a - Y^b ∇_b X^a`.
pub fn vector_bracket(x: &SymTensorField, y: &SymTensorField) -> SymTensorField {
    let n = x.dim();
    let mut out = SymTensorField::zero(n, 1);
    for a in 0..n as u8 {
        let mut acc = Polynomial::zero(x.space());
        for b in 0..n {
            acc += &(&x.component(&[b as u8]) * &grad(&y.component(&[a]), b));
            acc -= &(&y.component(&[b as u8]) * &grad(&x.component(&[a]), b));
        }
        out.set(&[a], acc);
    }
    out
}

/// Cartan part of `U ⊗ V`.
pub fn cartan_product(u: &LieElement, v: &LieElement) -> PairSkewTensor {
    decompose_gg(&u.0.tensor(&v.0)).cartan
}

/// `½ X^a Y^b + ½ X^b Y^a - (1/n) X^c Y_c g^{ab}` on `R^n`.
pub fn flat_cartan_product(x: &SymTensorField, y: &SymTensorField) -> SymTensorField {
    x.sym_product(y).tracefree_part()
}

/// `X ∙ Y = (1/n) X^a Y_a` of the realised vector fields.
pub fn bullet_product(u: &LieElement, v: &LieElement) -> SymTensorField {
    let (x, y) = (u.vector_field(), v.vector_field());
    let n = x.dim();
    let mut acc = Polynomial::zero(x.space());
    for a in 0..n as u8 {
        acc += &(&x.component(&[a]) * &y.component(&[a]));
    }
    SymTensorField::scalar(n, acc.scale(&rat(1, n as i64)))
}

/// Symmetric trace-free `W^{BC}` as a tensor with one trailing symmetric pair.
pub fn tail_tensor(w: &ConstSymTensor) -> PairSkewTensor {
    let n = w.dim() - 2;
    let mut t = PairSkewTensor::new(n, 0, true);
    for (idx, c) in w.components() {
        t.set(idx, c.clone());
    }
    t
}

/// A differential operator together with the weight of the densities it acts on.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedOperator {
    pub op: DiffOp,
    pub weight: Rational,
}

impl WeightedOperator {
    pub fn new(op: DiffOp, weight: Rational) -> Self {
        WeightedOperator { op, weight }
    }

    /// Composition of two operators on densities of the same weight.
    pub fn compose(&self, other: &WeightedOperator) -> Result<WeightedOperator> {
        if self.weight != other.weight {
            return Err(Error::Precondition("weights of composed operators differ".into()));
        }
        Ok(WeightedOperator::new(self.op.compose(&other.op), self.weight.clone()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"weight": crate::rational::format_rational(&self.weight), "operator": self.op.to_json()})
    }
}

fn residual_witness(r: &SymTensorField) -> Option<String> {
    r.components().next().map(|(idx, p)| {
        let i: Vec<String> = idx.iter().map(|a| (a + 1).to_string()).collect();
        format!("[{}] = {p}", i.join(","))
    })
}

/// Canonical operator with symbol `V` on densities of weight `w`, for a
/// conformal Killing tensor of valency at most two.
pub fn canonical_dv(v: &SymTensorField, w: &Rational) -> Result<WeightedOperator> {
    let n = v.dim() as i64;
    if let Some(wit) = residual_witness(&ckt_residual(v)?) {
        return Err(Error::NotConformalKilling(wit));
    }
    let op = match v.valency() {
        0 => DiffOp::multiplication(v.as_scalar()),
        1 => {
            let d = div(v).scale(&(-w / int(n)));
            DiffOp::from_sym_tensor(v).add(&DiffOp::multiplication(d))
        }
        2 => {
            let dv = v.divergence();
            let ddv = dv.divergence().as_scalar();
            let c1 = -int(2) * (w - int(1)) / int(n + 2);
            let c2 = w * (w - int(1)) / int((n + 2) * (n + 1));
            DiffOp::from_sym_tensor(v)
                .add(&DiffOp::from_sym_tensor(&dv).scale(&c1))
                .add(&DiffOp::multiplication(ddv.scale(&c2)))
        }
        s => {
            return Err(Error::Precondition(format!(
                "valency {s} needs its ambient tensor; use canonical_dv_ambient"
            )))
        }
    };
    Ok(WeightedOperator::new(op, w.clone()))
}

/// Canonical operator induced from the ambient tensor `V^{BQ…CR}`.
pub fn canonical_dv_ambient(v: &PairSkewTensor, w: &Rational) -> Result<WeightedOperator> {
    let op = ambient::induce(&ambient::ambient_op_v(v)?, w)?;
    Ok(WeightedOperator::new(op, w.clone()))
}

/// `W Δ - ((n+2w-2)/2)(∇^a W)∇_a + (w(n+2w-2)/(2(n+2)))(ΔW)` for a scalar
/// generalised conformal Killing field `W`.
pub fn canonical_dw(wf: &SymTensorField, w: &Rational) -> Result<WeightedOperator> {
    if wf.valency() != 0 {
        return Err(Error::Precondition(
            "closed form is for scalar W; use canonical_dw_ambient for higher valency".into(),
        ));
    }
    if let Some(wit) = residual_witness(&gckt_residual(wf)) {
        return Err(Error::NotGeneralisedConformalKilling(wit));
    }
    let n = wf.dim() as i64;
    let s = wf.space();
    let ww = wf.as_scalar();
    let k = int(n) + int(2) * w - int(2);
    let alpha = -&k / int(2);
    let beta = w * &k / int(2 * (n + 2));
    let lap = DiffOp::laplacian(s);
    let mut op = lap.left_multiply(&ww);
    for a in 0..n as usize {
        op.add_term(MultiIndex::unit(n as usize, a), &ww.partial(a).scale(&alpha));
    }
    op = op.add(&DiffOp::multiplication(lap.apply(&ww).scale(&beta)));
    Ok(WeightedOperator::new(op, w.clone()))
}

/// Operator induced by `W (x_D x_E Δ̃ - 2 x_D ∂_E) ∂…`; meaningful at `w = 2 - n/2`.
pub fn canonical_dw_ambient(wt: &PairSkewTensor, w: &Rational) -> Result<WeightedOperator> {
    let op = ambient::induce(&ambient::ambient_op_w(wt)?, w)?;
    Ok(WeightedOperator::new(op, w.clone()))
}

/// Operator induced by the padded and pair-symmetrised form of `W`, defined at every weight.
pub fn canonical_dw_padded(wt: &PairSkewTensor, w: &Rational) -> Result<WeightedOperator> {
    let op = ambient::induce(&ambient::word_operator(&ambient::pad_w(wt)), w)?;
    Ok(WeightedOperator::new(op, w.clone()))
}

/// Maps operators to sparse vectors over a shared `(∂^α, monomial)` index.
#[derive(Default)]
pub struct OperatorCoordinates {
    index: HashMap<(MultiIndex, Monomial), usize>,
}

impl OperatorCoordinates {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vector(&mut self, op: &DiffOp) -> SparseVec {
        let mut v = SparseVec::new();
        for (alpha, c) in op.terms() {
            for (m, x) in c.terms() {
                let next = self.index.len();
                let k = *self.index.entry((alpha.clone(), m.clone())).or_insert(next);
                v.insert(k, x.clone());
            }
        }
        v
    }
}

/// Rank of a family of operators as vectors over the rationals.
pub fn operator_rank(ops: &[DiffOp]) -> usize {
    let mut coords = OperatorCoordinates::new();
    let vecs: Vec<SparseVec> = ops.iter().map(|o| coords.vector(o)).collect();
    rank_of_vectors(&vecs)
}

/// Solves `target = Σ c_i pieces_i` exactly; `None` if no solution or the
/// pieces are dependent.
pub fn fit_coefficients(target: &DiffOp, pieces: &[DiffOp]) -> Option<Vec<Rational>> {
    let mut coords = OperatorCoordinates::new();
    let cols: Vec<SparseVec> = pieces.iter().map(|p| coords.vector(p)).collect();
    if rank_of_vectors(&cols) != cols.len() {
        return None;
    }
    let b = coords.vector(target);
    solve_columns(&cols, &b)
}

/// Coefficients `(c1, c2)` in `D = V^{ab}∇_a∇_b + c1 (∇_a V^{ab})∇_b + c2 (∇_a∇_b V^{ab})`.
pub fn second_order_dv_coefficients(d: &DiffOp, v: &SymTensorField) -> Option<(Rational, Rational)> {
    let dv = v.divergence();
    let rest = d.sub(&DiffOp::from_sym_tensor(v));
    let pieces = [
        DiffOp::from_sym_tensor(&dv),
        DiffOp::multiplication(dv.divergence().as_scalar()),
    ];
    fit_coefficients(&rest, &pieces).map(|c| (c[0].clone(), c[1].clone()))
}

/// Coefficient `c` in `D = V^a ∇_a + c (∇_a V^a)`.
pub fn first_order_dv_coefficient(d: &DiffOp, v: &SymTensorField) -> Option<Rational> {
    let rest = d.sub(&DiffOp::from_sym_tensor(v));
    fit_coefficients(&rest, &[DiffOp::multiplication(div(v))]).map(|c| c[0].clone())
}

/// Coefficients `(α, β)` in `D = W Δ + α (∇^a W) ∇_a + β (Δ W)`.
pub fn dw_coefficients(d: &DiffOp, wf: &Polynomial) -> Option<(Rational, Rational)> {
    let s = wf.space();
    let n = s.n();
    let lap = DiffOp::laplacian(s);
    let rest = d.sub(&lap.left_multiply(wf));
    let mut grad_op = DiffOp::zero(s);
    for a in 0..n {
        grad_op.add_term(MultiIndex::unit(n, a), &wf.partial(a));
    }
    let pieces = [grad_op, DiffOp::multiplication(lap.apply(wf))];
    fit_coefficients(&rest, &pieces).map(|c| (c[0].clone(), c[1].clone()))
}

/// `w(n+w)/(n(n+1)(n+2))`.
pub fn scalar_coefficient(n: usize, w: &Rational) -> Rational {
    let n_r = int(n as i64);
    w * (&n_r + w) / int((n * (n + 1) * (n + 2)) as i64)
}

/// Both sides of the composition law `D_X D_Y = D_{X⊛Y} + D_{X∙Y} + ½ D_{[X,Y]} + c(w)⟨X,Y⟩`.
#[derive(Clone, Debug)]
pub struct CompositionCheck {
    pub lhs: DiffOp,
    pub rhs: DiffOp,
    /// `lhs - rhs` with the scalar term left out; equals `c(w)⟨X,Y⟩` when the law holds.
    pub scalar_residual: DiffOp,
    pub pairing: Rational,
}

impl CompositionCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    /// `c` with `scalar_residual = c⟨X,Y⟩`, if the residual is a constant and the pairing is nonzero.
    pub fn empirical_scalar_coefficient(&self) -> Option<Rational> {
        if self.pairing.is_zero() {
            return None;
        }
        let s = self.lhs.space();
        if self.scalar_residual.is_zero() {
            return Some(Rational::zero());
        }
        if self.scalar_residual.order() != Some(0) {
            return None;
        }
        let c = self.scalar_residual.coefficient(&MultiIndex::zero(s.nvars())).constant_value()?;
        Some(c / &self.pairing)
    }
}

/// Builds both sides of the composition law for `U, V` at weight `w`.
pub fn composition_law(u: &LieElement, v: &LieElement, w: &Rational) -> Result<CompositionCheck> {
    let n = u.n();
    let (x, y) = (u.vector_field(), v.vector_field());
    let lhs = canonical_dv(&x, w)?.compose(&canonical_dv(&y, w)?)?.op;
    let cart = canonical_dv(&flat_cartan_product(&x, &y), w)?.op;
    let bul = canonical_dw(&bullet_product(u, v), w)?.op;
    let br = canonical_dv(&bracket(u, v).vector_field(), w)?.op.scale(&rat(1, 2));
    let pairing = killing_form(u, v);
    let without_scalar = cart.add(&bul).add(&br);
    let scalar = DiffOp::constant(VarSpace::base(n), scalar_coefficient(n, w) * &pairing);
    Ok(CompositionCheck {
        scalar_residual: lhs.sub(&without_scalar),
        rhs: without_scalar.add(&scalar),
        lhs,
        pairing,
    })
}

/// Coefficients `(a, b, c)` of the quadratic `a w² + b w + c` through three points.
pub fn interpolate_quadratic(points: &[(Rational, Rational); 3]) -> (Rational, Rational, Rational) {
    let mut a = Rational::zero();
    let mut b = Rational::zero();
    let mut c = Rational::zero();
    for i in 0..3 {
        let (xi, yi) = (&points[i].0, &points[i].1);
        let others: Vec<&Rational> = (0..3).filter(|j| *j != i).map(|j| &points[j].0).collect();
        let denom = (xi - others[0]) * (xi - others[1]);
        let f = yi / denom;
        a += &f;
        b -= &f * (others[0] + others[1]);
        c += &f * (others[0] * others[1]);
    }
    (a, b, c)
}

/// Random element of one summand of `g ⊗ g`, redrawn while it projects to zero.
pub fn random_summand(n: usize, which: Summand, rng: &mut impl Rng) -> PairSkewTensor {
    loop {
        let mut raw = Vec::new();
        for _ in 0..8 {
            let k: PairKey = (0..4).map(|_| rng.gen_range(0..(n + 2) as u8)).collect();
            raw.push((k, int(rng.gen_range(-3..=3))));
        }
        let x = PairSkewTensor::from_raw(n, 2, false, raw);
        let parts = decompose_gg(&x).embedded();
        let p = parts[which as usize].clone();
        if !p.is_zero() {
            return p;
        }
    }
}

/// The six summands of `g ⊗ g`, in the order of [`GgDecomposition::embedded`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Summand {
    Cartan = 0,
    Bullet = 1,
    Scalar = 2,
    Hook = 3,
    Adjoint = 4,
    FullySkew = 5,
}

/// `W^{BC}(x_B x_C Δ̃ - (n+2w-2) x_B ∂_C + r ∂_B ∂_C)`.
pub fn bullet_operator_on_weight(wt: &ConstSymTensor, w: &Rational) -> DiffOp {
    let n = wt.dim() - 2;
    let s = VarSpace::ambient(n);
    let metric = AmbientMetric::new(n);
    let lap = DiffOp::laplacian(s);
    let rr = ambient::r(n);
    let k = int(n as i64) + int(2) * w - int(2);
    let mut op = DiffOp::zero(s);
    for (idx, c) in wt.components() {
        let (b, cc) = (idx[0] as usize, idx[1] as usize);
        let mult = if b == cc { int(1) } else { int(2) };
        let c = c * mult;
        for (bb, ccc) in if b == cc { vec![(b, cc)] } else { vec![(b, cc), (cc, b)] } {
            let xb = Polynomial::coord(s, metric.partner(bb));
            let xc = Polynomial::coord(s, metric.partner(ccc));
            let half = if b == cc { int(1) } else { rat(1, 2) };
            let cw = &c * &half;
            op = op.add(&lap.left_multiply(&(&xb * &xc).scale(&cw)));
            op.add_term(MultiIndex::unit(n + 2, ccc), &xb.scale(&(-&cw * &k)));
            op.add_term(MultiIndex::from_positions(n + 2, &[bb as u8, ccc as u8]), &rr.scale(&cw));
        }
    }
    op
}

/// `W^{BC} x_B x_C Δ̃ - 2 W^{QC} x_C x^R ∂_R ∂_Q - n W^{BR} x_B ∂_R + W^{QR} r ∂_Q ∂_R`.
pub fn bullet_operator(wt: &ConstSymTensor) -> DiffOp {
    let n = wt.dim() - 2;
    let s = VarSpace::ambient(n);
    let metric = AmbientMetric::new(n);
    let lap = DiffOp::laplacian(s);
    let rr = ambient::r(n);
    let mut op = DiffOp::zero(s);
    let d = n + 2;
    let get = |a: usize, b: usize| wt.get(&[a as u8, b as u8]).cloned().unwrap_or_else(Rational::zero);
    for b in 0..d {
        for c in 0..d {
            let wbc = get(b, c);
            if wbc.is_zero() {
                continue;
            }
            let xb = Polynomial::coord(s, metric.partner(b));
            let xc = Polynomial::coord(s, metric.partner(c));
            op = op.add(&lap.left_multiply(&(&xb * &xc).scale(&wbc)));
            // -2 W^{QC} x_C x^R ∂_R ∂_Q with Q = b
            for rr_i in 0..d {
                let xr = Polynomial::coord(s, rr_i);
                op.add_term(
                    MultiIndex::from_positions(d, &[rr_i as u8, b as u8]),
                    &(&xc * &xr).scale(&(-int(2) * &wbc)),
                );
            }
            // -n W^{BR} x_B ∂_R with R = c
            op.add_term(MultiIndex::unit(d, c), &xb.scale(&(-int(n as i64) * &wbc)));
            op.add_term(MultiIndex::from_positions(d, &[b as u8, c as u8]), &rr.scale(&wbc));
        }
    }
    op
}

/// Result of the fourth-order counterexample computation.
#[derive(Clone, Debug)]
pub struct CounterexampleResult {
    pub tensor: PairSkewTensor,
    /// `X^{BQ}_{BQ}^{DSET} = 0`
    pub first_trace_vanishes: bool,
    /// `X^{BQCRDS}_{DS} = 0`
    pub last_trace_vanishes: bool,
    /// `c` with `X^{BQC}_Q^{DSE}_S = c Z^{BCDE}`, if proportional.
    pub mixed_trace_multiple: Option<Rational>,
    /// Realised quartic `q = Z^{BCDE} Φ_B Φ_C Φ_D Φ_E`.
    pub quartic: Polynomial,
    pub induced: DiffOp,
    /// `c'` with induced operator `= c' q Δ²`, if of that form.
    pub operator_multiple: Option<Rational>,
}

/// Double contraction of slots `(i, j)` and `(k, l)` of a pair-skew tensor.
pub fn double_trace(x: &PairSkewTensor, (i, j): (usize, usize), (k, l): (usize, usize)) -> HashMap<PairKey, Rational> {
    let metric = AmbientMetric::new(x.n());
    let mut out: HashMap<PairKey, Rational> = HashMap::new();
    for (idx, v) in x.expand() {
        if metric.partner(idx[i] as usize) != idx[j] as usize || metric.partner(idx[k] as usize) != idx[l] as usize {
            continue;
        }
        let rest: PairKey = idx
            .iter()
            .enumerate()
            .filter(|(p, _)| ![i, j, k, l].contains(p))
            .map(|(_, a)| *a)
            .collect();
        *out.entry(rest).or_insert_with(Rational::zero) += v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `Z^{BCDE} Φ_B Φ_C Φ_D Φ_E`.
pub fn realize_quartic(z: &ConstSymTensor) -> Polynomial {
    let n = z.dim() - 2;
    let pp = ambient::PhiPsi::new(n);
    let mut acc = Polynomial::zero(VarSpace::base(n));
    for (idx, c) in z.to_full().components() {
        let mut p = Polynomial::constant(VarSpace::base(n), c.clone());
        for a in idx.iter() {
            p = &p * pp.phi(*a as usize);
        }
        acc += &p;
    }
    acc
}

/// Builds the fourth-order tensor from `Z`, checks its traces and induces
/// its operator at `w = 2 - n/2`.
pub fn counterexample_check(z: &ConstSymTensor) -> Result<CounterexampleResult> {
    let n = z.dim() - 2;
    let x = counterexample_tensor(z)?;
    let first_trace_vanishes = double_trace(&x, (0, 2), (1, 3)).is_empty();
    let last_trace_vanishes = double_trace(&x, (4, 6), (5, 7)).is_empty();
    let mixed = double_trace(&x, (1, 3), (5, 7));
    let zfull = z.to_full();
    let mut ratio: Option<Rational> = None;
    let mut proportional = true;
    for (idx, zv) in zfull.components() {
        let key: PairKey = idx.iter().copied().collect();
        let m = mixed.get(&key).cloned().unwrap_or_else(Rational::zero);
        let c = m / zv;
        match &ratio {
            None => ratio = Some(c),
            Some(r) if *r != c => proportional = false,
            _ => {}
        }
    }
    let covered = mixed.keys().all(|k| zfull.get(k).is_some());
    let mixed_trace_multiple = if proportional && covered { ratio.or(Some(Rational::zero())) } else { None };
    let w = int(2) - rat(n as i64, 2);
    let induced = ambient::induce(&ambient::word_operator(&x), &w)?;
    let quartic = realize_quartic(z);
    let operator_multiple = match induced.right_factor(2) {
        Ok(delta) if delta.order().unwrap_or(0) == 0 => {
            let p = delta.coefficient(&MultiIndex::zero(n));
            if quartic.is_zero() {
                p.is_zero().then(Rational::zero)
            } else {
                let (m, c) = quartic.terms().next().unwrap();
                let k = p.coefficient(m) / c;
                (p == quartic.scale(&k)).then_some(k)
            }
        }
        _ => None,
    };
    Ok(CounterexampleResult {
        tensor: x,
        first_trace_vanishes,
        last_trace_vanishes,
        mixed_trace_multiple,
        quartic,
        induced,
        operator_multiple,
    })
}

/// `tf(e_a ⊙ e_a ⊙ e_a ⊙ e_a)` on the ambient space.
pub fn quartic_power(n: usize, a: u8) -> ConstSymTensor {
    let mut z = ConstSymTensor::new(n + 2, Metric::Ambient, 4);
    z.set(&[a, a, a, a], Rational::one());
    z.tracefree_part()
}

/// Basis of symmetries of `Δ²` of order at most `max_order` with
/// coefficients of degree at most `degree_bound`.
#[derive(Clone, Debug)]
pub struct SymmetryBasis {
    pub n: usize,
    pub max_order: usize,
    pub degree_bound: usize,
    pub basis: Vec<DiffOp>,
}

impl SymmetryBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Hash, PartialEq, Eq)]
struct RemainderKey(u8, MultiIndex, Monomial);

fn enumerate_at(n: usize, max_order: usize, bound: usize) -> Result<Vec<DiffOp>> {
    let s = VarSpace::base(n);
    let l2 = DiffOp::bilaplacian(s);
    let mut sys: SystemBuilder<RemainderKey> = SystemBuilder::new();
    let mut unknowns = Vec::new();
    for k in 0..=max_order {
        for alpha in multi_indices(n, k) {
            for d in 0..=bound {
                for beta in multi_indices(n, d) {
                    let m = beta.monomial(s);
                    let op = DiffOp::term(alpha.clone(), Polynomial::term(s, m.clone(), Rational::one()));
                    let (_, rems) = l2.compose(&op).laplacian_power_remainders(2)?;
                    let mut image = Vec::new();
                    for (i, r) in rems.iter().enumerate() {
                        for (a, c) in r.terms() {
                            for (mm, x) in c.terms() {
                                image.push((RemainderKey(i as u8, a.clone(), mm.clone()), x.clone()));
                            }
                        }
                    }
                    sys.push_column(image);
                    unknowns.push((alpha.clone(), m));
                }
            }
        }
    }
    Ok(sys
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut op = DiffOp::zero(s);
            for (col, c) in v {
                let (alpha, m) = &unknowns[col];
                op.add_term(alpha.clone(), &Polynomial::term(s, m.clone(), c));
            }
            op
        })
        .collect())
}

/// All symmetries `D` (with `Δ² D = δ Δ²`) of the given order and coefficient
/// degree, as an exact nullspace; errors if the count changes at `degree_bound + 2`.
pub fn enumerate_symmetries(n: usize, max_order: usize, degree_bound: usize) -> Result<SymmetryBasis> {
    if n < 3 {
        return Err(Error::Precondition(format!("dimension n = {n} must be at least 3")));
    }
    let basis = enumerate_at(n, max_order, degree_bound)?;
    let upper = enumerate_at(n, max_order, degree_bound + 2)?.len();
    if upper != basis.len() {
        return Err(Error::Unstable {
            bound: degree_bound,
            lower: basis.len(),
            next: degree_bound + 2,
            upper,
        });
    }
    Ok(SymmetryBasis {
        n,
        max_order,
        degree_bound,
        basis,
    })
}

/// The canonical symmetries of order at most two at `w = 2 - n/2`: constants,
/// first-order operators from `K_{n,1}`, second-order from `K_{n,2}`, and the
/// `W`-operators from `L_{n,2}`.
pub fn canonical_second_order_symmetries(
    k1: &[SymTensorField],
    k2: &[SymTensorField],
    l2: &[SymTensorField],
    n: usize,
) -> Result<Vec<DiffOp>> {
    let w = int(2) - rat(n as i64, 2);
    let mut ops = vec![DiffOp::identity(VarSpace::base(n))];
    for v in k1.iter().chain(k2.iter()) {
        ops.push(canonical_dv(v, &w)?.op);
    }
    for wf in l2 {
        ops.push(canonical_dw(wf, &w)?.op);
    }
    Ok(ops)
}

/// Realised Cartan product of two Lie algebra elements.
pub fn realized_cartan(u: &LieElement, v: &LieElement) -> Result<SymTensorField> {
    realize_ckt(&cartan_product(u, v))
}

/// The ambient bullet tensor `W^{BC}` of `U ⊗ V`.
pub fn bullet_tensor(u: &LieElement, v: &LieElement) -> ConstSymTensor {
    decompose_gg(&u.0.tensor(&v.0)).bullet
}

/// Decomposition of `U ⊗ V`.
pub fn decompose_pair(u: &LieElement, v: &LieElement) -> GgDecomposition {
    decompose_gg(&u.0.tensor(&v.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bracket_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let n = 3;
        for _ in 0..20 {
            let (a, b, c) = (
                LieElement::random(n, &mut rng),
                LieElement::random(n, &mut rng),
                LieElement::random(n, &mut rng),
            );
            assert!(bracket(&a, &a).is_zero());
            let jac = bracket(&a, &bracket(&b, &c))
                .add(&bracket(&b, &bracket(&c, &a)))
                .add(&bracket(&c, &bracket(&a, &b)));
            assert!(jac.is_zero());
            let inv = killing_form(&bracket(&c, &a), &b) + killing_form(&a, &bracket(&c, &b));
            assert!(inv.is_zero());
            assert_eq!(killing_form(&a, &b), killing_form(&b, &a));
        }
    }

    #[test]
    fn bracket_matches_vector_fields() {
        let n = 3;
        let basis = lie_basis(n);
        for u in &basis {
            for v in &basis {
                let lhs = bracket(u, v).vector_field();
                let rhs = vector_bracket(&u.vector_field(), &v.vector_field());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn dilation_and_translation() {
        let n = 3;
        let d = LieElement::dilation(n);
        let t = LieElement::translation(n, 0);
        // [x·∇, -∂_1] = ∂_1, realised as the negative translation
        assert_eq!(bracket(&d, &t), t.scaled(&int(-1)));
        assert_eq!(killing_form(&d, &d), int(6));
    }

    #[test]
    fn block_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let u = LieElement::random(3, &mut rng);
        assert_eq!(LieElement::from_blocks(3, &u.blocks()).unwrap(), u);
    }

    #[test]
    fn cartan_and_bullet_of_dilation() {
        let n = 3;
        let d = LieElement::dilation(n);
        let x = d.vector_field();
        assert_eq!(realized_cartan(&d, &d).unwrap(), flat_cartan_product(&x, &x));
        let r2 = Polynomial::radius_squared(VarSpace::base(n));
        assert_eq!(bullet_product(&d, &d).as_scalar(), r2.scale(&rat(1, 3)));
    }

    #[test]
    fn first_order_closed_form() {
        let n = 3;
        let x = LieElement::dilation(n).vector_field();
        let w = rat(1, 2);
        let op = canonical_dv(&x, &w).unwrap().op;
        assert_eq!(first_order_dv_coefficient(&op, &x), Some(-w / int(3)));
    }

    #[test]
    fn dw_special_weights() {
        let n = 4;
        let b = VarSpace::base(n);
        let wf = SymTensorField::scalar(n, Polynomial::radius_squared(b));
        let w = int(1) - rat(n as i64, 2);
        let op = canonical_dw(&wf, &w).unwrap().op;
        assert_eq!(op, DiffOp::laplacian(b).left_multiply(&wf.as_scalar()));
        let c = SymTensorField::scalar(n, Polynomial::from_int(b, 5));
        for w in [rat(1, 7), int(3)] {
            assert_eq!(canonical_dw(&c, &w).unwrap().op, DiffOp::laplacian(b).scale(&int(5)));
        }
    }

    #[test]
    fn quadratic_interpolation() {
        let f = |w: &Rational| int(3) * w * w - int(2) * w + rat(1, 5);
        let pts = [int(0), rat(1, 2), int(-2)].map(|w| (w.clone(), f(&w)));
        assert_eq!(interpolate_quadratic(&pts), (int(3), int(-2), rat(1, 5)));
    }

    #[test]
    fn composition_law_for_dilation() {
        let n = 3;
        let d = LieElement::dilation(n);
        assert!(composition_law(&d, &d, &rat(1, 7)).unwrap().holds());
    }

    #[test]
    fn enumerator_first_order() {
        assert_eq!(enumerate_symmetries(3, 1, 4).unwrap().dimension(), 11);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(12))]
        #[test]
        fn composition_law_for_random_elements(seed in 0u64..1_000_000, p in -6i64..6, q in 1i64..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let u = LieElement::random(3, &mut rng);
            let v = LieElement::random(3, &mut rng);
            proptest::prop_assert!(composition_law(&u, &v, &rat(p, q)).unwrap().holds());
        }
    }
}
