//! Conformal Killing tensors and their order-three generalisation as exact
//! nullspaces over polynomial tensors.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactpoly::{Monomial, Polynomial, VarSpace};
use crate::linalg::SystemBuilder;
use crate::rational::{int, rat, Rational};
use crate::tensorcalc::{multisets, Idx, SymTensorField};
use crate::weylop::multi_indices;

/// Trace-free part of `∇^(a V^{b...c)}`.
pub fn ckt_residual(v: &SymTensorField) -> Result<SymTensorField> {
    if !v.is_trace_free() {
        return Err(Error::NotTraceFree);
    }
    Ok(v.sym_gradient().tracefree_part())
}

/// Trace-free part of `∇^(a ∇^b ∇^c W^{d...e)}`.
pub fn gckt_residual(w: &SymTensorField) -> SymTensorField {
    w.sym_gradient().sym_gradient().sym_gradient().tracefree_part()
}

/// `(n+1)(n+2)(n²+5n+12)/12`, the number of independent symmetries of
/// order at most two.
pub fn second_order_symmetry_dimension(n: usize) -> usize {
    (n + 1) * (n + 2) * (n * n + 5 * n + 12) / 12
}

/// Which defining equation a basis solves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// `tf(∇^(a V^{b...c)}) = 0`
    ConformalKilling,
    /// `tf(∇^(a ∇^b ∇^c W^{d...e)}) = 0`
    GeneralisedConformalKilling,
}

impl BasisKind {
    pub fn name(self) -> &'static str {
        match self {
            BasisKind::ConformalKilling => "ckt",
            BasisKind::GeneralisedConformalKilling => "gckt",
        }
    }

    /// Derivatives taken by the defining equation.
    fn derivatives(self) -> usize {
        match self {
            BasisKind::ConformalKilling => 1,
            BasisKind::GeneralisedConformalKilling => 3,
        }
    }

    /// Smallest degree bound at which every solution is expected to appear.
    pub fn default_bound(self, valency: usize) -> usize {
        match self {
            BasisKind::ConformalKilling => 2 * valency,
            BasisKind::GeneralisedConformalKilling => 2 * valency + 4,
        }
    }
}

/// Basis of polynomial solutions of one of the two Killing-type equations.
#[derive(Clone, Debug, PartialEq)]
pub struct KillingBasis {
    pub kind: BasisKind,
    pub n: usize,
    pub valency: usize,
    pub degree_bound: usize,
    pub basis: Vec<SymTensorField>,
}

impl KillingBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn to_json(&self) -> Value {
        let valency_key = match self.kind {
            BasisKind::ConformalKilling => "s",
            BasisKind::GeneralisedConformalKilling => "t",
        };
        json!({
            "kind": self.kind.name(),
            "n": self.n,
            valency_key: self.valency,
            "degree_bound": self.degree_bound,
            "dimension": self.dimension(),
            "basis": self.basis.iter().map(SymTensorField::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let kind = match value.get("kind").and_then(Value::as_str) {
            Some("ckt") | None => BasisKind::ConformalKilling,
            Some("gckt") => BasisKind::GeneralisedConformalKilling,
            Some(other) => return Err(Error::Parse(format!("unknown basis kind `{other}`"))),
        };
        let num = |k: &str| value.get(k).and_then(Value::as_u64).map(|x| x as usize);
        let n = num("n").ok_or_else(|| Error::Parse("basis JSON needs `n`".into()))?;
        let valency = num("s")
            .or_else(|| num("t"))
            .ok_or_else(|| Error::Parse("basis JSON needs `s` or `t`".into()))?;
        let degree_bound = num("degree_bound").ok_or_else(|| Error::Parse("basis JSON needs `degree_bound`".into()))?;
        let basis = value
            .get("basis")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("basis JSON needs `basis`".into()))?
            .iter()
            .map(SymTensorField::from_json)
            .collect::<Result<Vec<_>>>()?;
        Ok(KillingBasis {
            kind,
            n,
            valency,
            degree_bound,
            basis,
        })
    }
}

/// Monomials of degree at most `bound` in the base variables.
pub fn base_monomials(n: usize, bound: usize) -> Vec<Monomial> {
    let space = VarSpace::base(n);
    (0..=bound)
        .flat_map(|k| multi_indices(n, k))
        .map(|a| a.monomial(space))
        .collect()
}

#[derive(Hash, PartialEq, Eq)]
enum Row {
    Trace(Idx, Monomial),
    Residual(Idx, Monomial),
}

fn solve_at(kind: BasisKind, n: usize, valency: usize, bound: usize) -> Vec<SymTensorField> {
    let space = VarSpace::base(n);
    let slots = multisets(n, valency);
    let monos = base_monomials(n, bound);
    let mut sys: SystemBuilder<Row> = SystemBuilder::new();
    let mut unknowns: Vec<(Idx, Monomial)> = Vec::new();
    for idx in &slots {
        for m in &monos {
            let mut v = SymTensorField::zero(n, valency);
            v.set(idx, Polynomial::term(space, m.clone(), Rational::one()));
            let mut image: Vec<(Row, Rational)> = Vec::new();
            if valency >= 2 {
                for (k, p) in v.trace().components() {
                    for (mm, c) in p.terms() {
                        image.push((Row::Trace(k.clone(), mm.clone()), c.clone()));
                    }
                }
            }
            let mut r = v.clone();
            for _ in 0..kind.derivatives() {
                r = r.sym_gradient();
            }
            for (k, p) in r.tracefree_part().components() {
                for (mm, c) in p.terms() {
                    image.push((Row::Residual(k.clone(), mm.clone()), c.clone()));
                }
            }
            sys.push_column(image);
            unknowns.push((idx.clone(), m.clone()));
        }
    }
    sys.nullspace()
        .into_iter()
        .map(|vec| {
            let mut t = SymTensorField::zero(n, valency);
            for (col, c) in vec {
                let (idx, m) = &unknowns[col];
                let p = Polynomial::term(space, m.clone(), c);
                t.add_at(idx, &p, &Rational::one());
            }
            t
        })
        .collect()
}

fn solve_stable(kind: BasisKind, n: usize, valency: usize, bound: usize) -> Result<KillingBasis> {
    if n < 3 {
        return Err(Error::Precondition(format!("dimension n = {n} must be at least 3")));
    }
    let basis = solve_at(kind, n, valency, bound);
    let upper = solve_at(kind, n, valency, bound + 2).len();
    if upper != basis.len() {
        return Err(Error::Unstable {
            bound,
            lower: basis.len(),
            next: bound + 2,
            upper,
        });
    }
    Ok(KillingBasis {
        kind,
        n,
        valency,
        degree_bound: bound,
        basis,
    })
}

/// Conformal Killing tensors of valency `s` with entries of degree at most
/// `degree_bound`; errors if the count changes at `degree_bound + 2`.
pub fn solve_ckt(n: usize, s: usize, degree_bound: usize) -> Result<KillingBasis> {
    solve_stable(BasisKind::ConformalKilling, n, s, degree_bound)
}

/// Generalised conformal Killing tensors of valency `t`; stability is checked
/// as for [`solve_ckt`].
pub fn solve_gckt(n: usize, t: usize, degree_bound: usize) -> Result<KillingBasis> {
    solve_stable(BasisKind::GeneralisedConformalKilling, n, t, degree_bound)
}

/// Outcome of the three identities satisfied by a conformal Killing tensor
/// `V` of valency `s` and `φ = s/(n+2s-2) ∇_b V^{b...}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DivergenceIdentities {
    pub phi: SymTensorField,
    /// `∇^(a V^{b...)} = g^(ab φ^{...)}`
    pub gradient_is_pure_trace: bool,
    /// `ΔV = (s-1) g ⊙ ∇_a φ^{a...} - (n+2s-4) ∇ ⊙ φ`
    pub laplacian_formula: bool,
    /// `tf(∇^(a ∇^b φ^{...)}) = 0`
    pub phi_second_order: bool,
}

impl DivergenceIdentities {
    pub fn all_hold(&self) -> bool {
        self.gradient_is_pure_trace && self.laplacian_formula && self.phi_second_order
    }

    /// Names of the identities that fail.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.gradient_is_pure_trace {
            out.push("gradient is pure trace");
        }
        if !self.laplacian_formula {
            out.push("laplacian formula");
        }
        if !self.phi_second_order {
            out.push("second-order equation for phi");
        }
        out
    }
}

/// Checks the divergence identities for a conformal Killing tensor of valency >= 1.
pub fn verify_divergence_identities(v: &SymTensorField) -> Result<DivergenceIdentities> {
    let s = v.valency();
    if s == 0 {
        return Err(Error::Precondition("valency must be at least 1".into()));
    }
    let residual = ckt_residual(v)?;
    if let Some((idx, p)) = residual.components().next() {
        return Err(Error::NotConformalKilling(format!("{idx:?}: {p}")));
    }
    let n = v.dim() as i64;
    let s_i = s as i64;
    let phi = v.divergence().scaled(&rat(s_i, n + 2 * s_i - 2));
    let gradient_is_pure_trace = v.sym_gradient() == phi.metric_product();
    let mut rhs = phi.sym_gradient().scaled(&int(-(n + 2 * s_i - 4)));
    if s >= 2 {
        rhs = rhs.add(&phi.divergence().metric_product().scaled(&int(s_i - 1)));
    }
    let laplacian_formula = v.laplacian() == rhs;
    let phi_second_order = phi.sym_gradient().sym_gradient().tracefree_part().is_zero();
    Ok(DivergenceIdentities {
        phi,
        gradient_is_pure_trace,
        laplacian_formula,
        phi_second_order,
    })
}

/// `(kind, valency, dimension)` for conformal Killing tensors of valency
/// `0..=s` and, when `s >= 2`, generalised ones of valency `s - 2`, each at
/// its default degree bound.
pub fn killing_dimensions(n: usize, s: usize) -> Result<Vec<(BasisKind, usize, usize)>> {
    let mut out = Vec::new();
    for k in 0..=s {
        let b = solve_ckt(n, k, BasisKind::ConformalKilling.default_bound(k))?;
        out.push((BasisKind::ConformalKilling, k, b.dimension()));
    }
    if s >= 2 {
        let t = s - 2;
        let b = solve_gckt(n, t, BasisKind::GeneralisedConformalKilling.default_bound(t))?;
        out.push((BasisKind::GeneralisedConformalKilling, t, b.dimension()));
    }
    Ok(out)
}

/// `true` if every element of the basis has vanishing residual and is trace-free.
pub fn basis_is_valid(b: &KillingBasis) -> bool {
    b.basis.iter().all(|v| {
        v.is_trace_free()
            && match b.kind {
                BasisKind::ConformalKilling => ckt_residual(v).map(|r| r.is_zero()).unwrap_or(false),
                BasisKind::GeneralisedConformalKilling => gckt_residual(v).is_zero(),
            }
    }) && crate::linalg::rank_of_vectors(&flatten(&b.basis)) == b.basis.len()
}

fn flatten(basis: &[SymTensorField]) -> Vec<crate::linalg::SparseVec> {
    let mut keys: std::collections::HashMap<(Idx, Monomial), usize> = std::collections::HashMap::new();
    basis
        .iter()
        .map(|t| {
            let mut v = crate::linalg::SparseVec::new();
            for (idx, p) in t.components() {
                for (m, c) in p.terms() {
                    let next = keys.len();
                    let k = *keys.entry((idx.clone(), m.clone())).or_insert(next);
                    if !c.is_zero() {
                        v.insert(k, c.clone());
                    }
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, a: usize) -> Polynomial {
        Polynomial::coord(VarSpace::base(n), a)
    }

    fn dilation(n: usize) -> SymTensorField {
        let mut v = SymTensorField::zero(n, 1);
        for a in 0..n {
            v.set(&[a as u8], x(n, a));
        }
        v
    }

    #[test]
    fn residual_examples() {
        assert!(ckt_residual(&dilation(3)).unwrap().is_zero());
        let mut v = SymTensorField::zero(3, 1);
        v.set(&[1], x(3, 0).pow(2));
        assert!(!ckt_residual(&v).unwrap().is_zero());
        let mut c = SymTensorField::zero(3, 2);
        c.set(&[0, 1], Polynomial::from_int(VarSpace::base(3), 2));
        assert!(ckt_residual(&c).unwrap().is_zero());
        assert!(matches!(ckt_residual(&SymTensorField::metric_tensor(3)), Err(Error::NotTraceFree)));
    }

    #[test]
    fn generalised_residual_examples() {
        let s = VarSpace::base(3);
        let r2 = Polynomial::radius_squared(s);
        assert!(gckt_residual(&SymTensorField::scalar(3, &x(3, 0) * &x(3, 1))).is_zero());
        assert!(gckt_residual(&SymTensorField::scalar(3, r2.pow(2))).is_zero());
        assert!(!gckt_residual(&SymTensorField::scalar(3, x(3, 0).pow(3))).is_zero());
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(solve_ckt(3, 0, 4).unwrap().dimension(), 1);
        let k1 = solve_ckt(3, 1, 4).unwrap();
        assert_eq!(k1.dimension(), 10);
        assert!(basis_is_valid(&k1));
        let l0 = solve_gckt(3, 0, 6).unwrap();
        assert_eq!(l0.dimension(), 14);
        assert!(basis_is_valid(&l0));
    }

    #[test]
    fn closed_form_total() {
        assert_eq!(second_order_symmetry_dimension(3), 60);
        assert_eq!(second_order_symmetry_dimension(4), 120);
        assert_eq!(second_order_symmetry_dimension(5), 217);
    }

    #[test]
    fn low_bound_is_reported_unstable() {
        assert!(matches!(solve_ckt(3, 1, 1), Err(Error::Unstable { .. })));
    }

    #[test]
    fn divergence_identities_for_simple_fields() {
        let d = verify_divergence_identities(&dilation(3)).unwrap();
        assert!(d.all_hold());
        assert_eq!(d.phi.as_scalar(), Polynomial::one(VarSpace::base(3)));
        let mut c = SymTensorField::zero(3, 1);
        c.set(&[2], Polynomial::one(VarSpace::base(3)));
        let d = verify_divergence_identities(&c).unwrap();
        assert!(d.all_hold() && d.phi.is_zero());
        let mut bad = SymTensorField::zero(3, 1);
        bad.set(&[1], x(3, 0).pow(2));
        assert!(matches!(verify_divergence_identities(&bad), Err(Error::NotConformalKilling(_))));
    }

    #[test]
    fn json_round_trip() {
        let b = solve_ckt(3, 1, 2).unwrap();
        assert_eq!(KillingBasis::from_json(&b.to_json()).unwrap(), b);
    }
}
