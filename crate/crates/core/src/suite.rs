//! Named verification checks, grouped into suites.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::ambient::{self, PhiPsi};
use crate::cktsolve::{
    ckt_residual, gckt_residual, solve_ckt, solve_gckt, verify_divergence_identities, BasisKind, KillingBasis,
};
use crate::error::{Error, Result};
use crate::exactpoly::{Polynomial, VarSpace};
use crate::rational::{format_rational, int, rat, Rational};
use crate::report::CheckReport;
use crate::symalg::*;
use crate::tensorcalc::{decompose_gg, multisets, ConstSymTensor, GgDecomposition, Metric, PairSkewTensor};
use crate::weylop::DiffOp;

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Ambient,
    Algebra,
    Lemma,
    Counterexample,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "all" => Suite::All,
            "ambient" => Suite::Ambient,
            "algebra" => Suite::Algebra,
            "lemma" => Suite::Lemma,
            "counterexample" => Suite::Counterexample,
            _ => return None,
        })
    }
}

/// `2 - n/2`, the weight on which `Δ²` acts.
pub fn bilaplacian_weight(n: usize) -> Rational {
    int(2) - rat(n as i64, 2)
}

/// `1 - n/2`, the weight on which `Δ` acts.
pub fn laplacian_weight(n: usize) -> Rational {
    int(1) - rat(n as i64, 2)
}

/// Runs a suite; reports are sorted by check name.
pub fn run(suite: Suite, n: usize, seed: u64) -> Result<Vec<CheckReport>> {
    if n < 3 {
        return Err(Error::Precondition(format!("dimension n = {n} must be at least 3")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Ambient {
        out.extend(phi_psi_checks(n));
        out.extend(r_identity_checks(n, &mut rng)?);
        out.extend(commutation_checks(n, &mut rng)?);
        out.extend(induction_checks(n, &mut rng)?);
    }
    if all || suite == Suite::Algebra {
        out.extend(lie_algebra_checks(n));
        out.extend(product_checks(n)?);
        let weights = [bilaplacian_weight(n), laplacian_weight(n), rat(1, 7)];
        out.extend(composition_checks(n, &weights)?);
        out.extend(closed_form_checks(n)?);
        out.extend(symmetry_certificate_checks(n)?);
        if n <= 4 {
            out.extend(enumeration_checks(n)?);
        }
    }
    if all || suite == Suite::Lemma {
        out.extend(divergence_identity_checks(n)?);
        for w in [bilaplacian_weight(n), laplacian_weight(n), rat(1, 3)] {
            out.extend(summand_checks(n, &w, &mut rng)?);
        }
    }
    if all || suite == Suite::Counterexample {
        out.extend(counterexample_checks(n, &mut rng)?);
    }
    out.sort_by(|a, b| a.check.cmp(&b.check));
    Ok(out)
}

/// Identities between `Φ_B` and `Ψ^b_Q`.
pub fn phi_psi_checks(n: usize) -> Vec<CheckReport> {
    let pp = PhiPsi::new(n);
    vec![
        CheckReport::new("phi_psi.psi_contracts_to_metric", n, pp.psi_psi_is_metric()),
        CheckReport::new("phi_psi.phi_orthogonal_to_psi", n, pp.phi_psi_vanishes()),
        CheckReport::new("phi_psi.phi_is_null", n, pp.phi_is_null()),
        CheckReport::new("phi_psi.phi_restricts_coordinates", n, pp.phi_is_restricted_coordinate()),
    ]
}

/// `Δ̃(rg)` and `Δ̃²(rg)` on random homogeneous `g`, and `r = 0` on the section.
pub fn r_identity_checks(n: usize, rng: &mut impl Rng) -> Result<Vec<CheckReport>> {
    let mut out = vec![CheckReport::new(
        "ambient.r_vanishes_on_section",
        n,
        ambient::restrict(&ambient::r(n))?.is_zero(),
    )];
    for w in [bilaplacian_weight(n), laplacian_weight(n), rat(1, 3)] {
        let mut lap = true;
        let mut bilap = true;
        for _ in 0..10 {
            let g = ambient::random_homogeneous(n, &(&w - int(2)), 3, rng)?;
            lap &= ambient::laplacian_of_r_multiple_holds(&g, &w);
            bilap &= ambient::bilaplacian_of_r_multiple_holds(&g, &w);
        }
        out.push(CheckReport::new("ambient.laplacian_of_r_multiple", n, lap).at_weight(&w));
        out.push(CheckReport::new("ambient.bilaplacian_of_r_multiple", n, bilap).at_weight(&w));
    }
    Ok(out)
}

fn commutes(op: &DiffOp, g: &Polynomial) -> bool {
    let lap = DiffOp::laplacian(op.space());
    lap.compose(op) == op.compose(&lap) && ambient::commutes_with_r(op, g)
}

/// Random combination of tensor products of `len` random Lie algebra elements.
pub fn random_word(n: usize, len: usize, rng: &mut impl Rng) -> PairSkewTensor {
    let mut acc = PairSkewTensor::new(n, len, false);
    for _ in 0..2 {
        let mut t = LieElement::random(n, rng).tensor().clone();
        for _ in 1..len {
            t = t.tensor(LieElement::random(n, rng).tensor());
        }
        acc = acc.add(&t);
    }
    acc
}

/// Ambient operators of generators, of `g ⊗ g`, and of words of length up to
/// three commute with `Δ̃` and with multiplication by `r`.
pub fn commutation_checks(n: usize, rng: &mut impl Rng) -> Result<Vec<CheckReport>> {
    let g = ambient::random_homogeneous(n, &rat(1, 2), 3, rng)?;
    let gens = lie_basis(n)
        .iter()
        .all(|v| ambient::ambient_op_v(v.tensor()).map(|op| commutes(&op, &g)).unwrap_or(false));
    let mut out = vec![CheckReport::new("ambient.generators_commute", n, gens)];
    let pair_ok = (0..3).all(|_| commutes(&ambient::two_pair_operator(&random_word(n, 2, rng)), &g));
    out.push(CheckReport::new("ambient.two_pair_operators_commute", n, pair_ok));
    for len in 1..=3 {
        let ok = (0..2).all(|_| commutes(&ambient::word_operator(&random_word(n, len, rng)), &g));
        out.push(CheckReport::new(format!("ambient.words_of_length_{len}_commute"), n, ok));
    }
    Ok(out)
}

/// Induced Laplacian, bilaplacian and first-order operators; independence
/// of the extension off the cone; the weight restriction on `x_D x_E Δ̃ - 2 x_D ∂_E`.
pub fn induction_checks(n: usize, rng: &mut impl Rng) -> Result<Vec<CheckReport>> {
    let amb = VarSpace::ambient(n);
    let base = VarSpace::base(n);
    let (w1, w2) = (laplacian_weight(n), bilaplacian_weight(n));
    let mut out = vec![
        CheckReport::new(
            "induce.laplacian",
            n,
            ambient::induce(&DiffOp::laplacian(amb), &w1)? == DiffOp::laplacian(base),
        )
        .at_weight(&w1),
        CheckReport::new(
            "induce.bilaplacian",
            n,
            ambient::induce(&DiffOp::bilaplacian(amb), &w2)? == DiffOp::bilaplacian(base),
        )
        .at_weight(&w2),
    ];
    let w = rat(1, 3);
    let first_order = lie_basis(n).iter().all(|v| {
        let induced = canonical_dv_ambient(v.tensor(), &w).map(|o| o.op);
        let closed = canonical_dv(&v.vector_field(), &w).map(|o| o.op);
        matches!((induced, closed), (Ok(a), Ok(b)) if a == b)
    });
    out.push(CheckReport::new("induce.first_order_closed_form", n, first_order).at_weight(&w));

    // F and F + r h give the same restriction after applying an operator that commutes with r
    let op = ambient::word_operator(&random_word(n, 2, rng));
    let f = ambient::random_homogeneous(n, &w, 3, rng)?;
    let h = ambient::random_homogeneous(n, &(&w - int(2)), 3, rng)?;
    let shifted = &f + &(&ambient::r(n) * &h);
    let same = ambient::restrict(&op.apply(&f))? == ambient::restrict(&op.apply(&shifted))?;
    out.push(CheckReport::new("induce.independent_of_extension", n, same).at_weight(&w));

    let mut wt = ConstSymTensor::new(n + 2, Metric::Ambient, 2);
    wt.set(&[1, 1], Rational::one());
    wt.set(&[0, 0], int(1));
    let wt = tail_tensor(&wt.tracefree_part());
    let pw = ambient::ambient_op_w(&wt)?;
    let at_w2 = ambient::preserves_r_ideal(&pw, &w2, 3, rng)?;
    out.push(CheckReport::new("induce.w_operator_preserves_ideal", n, at_w2).at_weight(&w2));
    let at_w1 = ambient::preserves_r_ideal(&pw, &w1, 3, rng)?;
    out.push(
        CheckReport::new("induce.w_operator_fails_off_weight", n, !at_w1)
            .at_weight(&w1)
            .with_detail("the ideal generated by r is not preserved at this weight"),
    );
    let m2 = ambient::ambient_op_w_with(&wt, &int(-2))?;
    let p6 = ambient::ambient_op_w_with(&wt, &int(6))?;
    let bl = DiffOp::bilaplacian(amb);
    out.push(CheckReport::new(
        "induce.w_operator_intertwines_bilaplacian",
        n,
        bl.compose(&m2) == p6.compose(&bl),
    ));
    Ok(out)
}

/// Antisymmetry, Jacobi and ad-invariance on all basis triples.
pub fn lie_algebra_checks(n: usize) -> Vec<CheckReport> {
    let b = lie_basis(n);
    let mut anti = true;
    let mut sym = true;
    for u in &b {
        for v in &b {
            anti &= bracket(u, v).add(&bracket(v, u)).is_zero();
            sym &= killing_form(u, v) == killing_form(v, u);
        }
    }
    let mut jacobi = true;
    let mut invariant = true;
    for a in &b {
        for bb in &b {
            let ab = bracket(a, bb);
            for c in &b {
                let j = bracket(a, &bracket(bb, c))
                    .add(&bracket(bb, &bracket(c, a)))
                    .add(&bracket(c, &ab));
                jacobi &= j.is_zero();
                invariant &= (killing_form(&bracket(c, a), bb) + killing_form(a, &bracket(c, bb))).is_zero();
            }
        }
    }
    let d = LieElement::dilation(n);
    let kd = killing_form(&d, &d);
    vec![
        CheckReport::new("algebra.bracket_antisymmetric", n, anti),
        CheckReport::new("algebra.jacobi", n, jacobi),
        CheckReport::new("algebra.killing_form_symmetric", n, sym),
        CheckReport::new("algebra.killing_form_invariant", n, invariant),
        CheckReport::new("algebra.killing_form_of_dilation", n, kd == int(2 * n as i64))
            .with_detail(format!("<dilation, dilation> = {}", format_rational(&kd))),
    ]
}

/// Realised brackets, flat pairing, Cartan and bullet products on all basis pairs.
pub fn product_checks(n: usize) -> Result<Vec<CheckReport>> {
    let b = lie_basis(n);
    let mut brackets = true;
    let mut ratios: Vec<Rational> = Vec::new();
    let mut pairing_vanishes = true;
    let mut cartan = true;
    let mut cartan_ckt = true;
    let mut bullet = true;
    let mut bullet_gckt = true;
    for (i, u) in b.iter().enumerate() {
        for v in &b[i..] {
            let (x, y) = (u.vector_field(), v.vector_field());
            brackets &= bracket(u, v).vector_field() == vector_bracket(&x, &y);
            let flat = flat_pairing(&x, &y)?;
            let k = killing_form(u, v);
            if k.is_zero() {
                pairing_vanishes &= flat.is_zero();
            } else {
                let rho = flat / k;
                if !ratios.contains(&rho) {
                    ratios.push(rho);
                }
            }
            let c = realized_cartan(u, v)?;
            cartan &= c == flat_cartan_product(&x, &y);
            cartan_ckt &= ckt_residual(&c)?.is_zero();
            let wt = tail_tensor(&bullet_tensor(u, v));
            let w = bullet_product(u, v);
            bullet &= ambient::realize_gckt(&wt)? == w;
            bullet_gckt &= gckt_residual(&w).is_zero();
        }
    }
    let rho_ok = ratios == vec![rat(1, n as i64)] && pairing_vanishes;
    let rho_detail = ratios.iter().map(format_rational).collect::<Vec<_>>().join(", ");
    Ok(vec![
        CheckReport::new("algebra.bracket_matches_vector_fields", n, brackets),
        CheckReport::new("algebra.flat_pairing_ratio", n, rho_ok).with_detail(format!("flat/ambient = {rho_detail}")),
        CheckReport::new("algebra.cartan_product_realisation", n, cartan),
        CheckReport::new("algebra.cartan_product_is_conformal_killing", n, cartan_ckt),
        CheckReport::new("algebra.bullet_product_realisation", n, bullet),
        CheckReport::new("algebra.bullet_product_is_generalised_killing", n, bullet_gckt),
    ])
}

/// The composition law on all unordered basis pairs at each weight, and the
/// quadratic dependence of its scalar coefficient on `w`.
pub fn composition_checks(n: usize, weights: &[Rational]) -> Result<Vec<CheckReport>> {
    let b = lie_basis(n);
    let mut out = Vec::new();
    for w in weights {
        let mut failure = None;
        let mut count = 0;
        for (i, u) in b.iter().enumerate() {
            for v in &b[i..] {
                count += 1;
                let c = composition_law(u, v, w)?;
                if failure.is_none() && !c.holds() {
                    failure = Some(c.lhs.sub(&c.rhs));
                }
            }
        }
        let mut r = CheckReport::new("algebra.composition_law", n, failure.is_none())
            .at_weight(w)
            .with_detail(format!("{count} basis pairs"));
        if let Some(diff) = failure {
            r = r.with_witness(diff.to_json());
        }
        out.push(r);
    }
    // the scalar term measured with the scalar term left out of the law
    let d = LieElement::dilation(n);
    let samples = [rat(1, 7), rat(-2, 3), int(2)];
    let mut points = Vec::new();
    for w in &samples {
        let c = composition_law(&d, &d, w)?;
        match c.empirical_scalar_coefficient() {
            Some(k) => points.push((w.clone(), k)),
            None => break,
        }
    }
    let nn = (n * (n + 1) * (n + 2)) as i64;
    let ok = points.len() == 3 && {
        let pts = [points[0].clone(), points[1].clone(), points[2].clone()];
        interpolate_quadratic(&pts) == (rat(1, nn), rat(n as i64, nn), Rational::zero())
    };
    out.push(
        CheckReport::new("algebra.scalar_coefficient_is_quadratic", n, ok)
            .with_detail(format!("interpolated from w = 1/7, -2/3, 2 against w(n+w)/{nn}")),
    );
    // special weights: coefficient of the ideal generators
    let w2 = bilaplacian_weight(n);
    let ni = n as i64;
    let c2 = scalar_coefficient(n, &w2) == -rat((ni - 4) * (ni + 4), 4 * ni * (ni + 1) * (ni + 2));
    let c1 = scalar_coefficient(n, &laplacian_weight(n)) == -rat(ni - 2, 4 * ni * (ni + 1));
    out.push(CheckReport::new("algebra.scalar_coefficient_special_weights", n, c1 && c2));
    let bullet_vanishes = {
        let w1 = laplacian_weight(n);
        let u = LieElement::translation(n, 0);
        let wf = bullet_product(&u, &u);
        let op = canonical_dw(&wf, &w1)?.op;
        op == DiffOp::laplacian(VarSpace::base(n)).left_multiply(&wf.as_scalar())
    };
    out.push(CheckReport::new("algebra.w_operator_at_laplacian_weight", n, bullet_vanishes).at_weight(&laplacian_weight(n)));
    Ok(out)
}

fn find_pair<T>(n: usize, mut f: impl FnMut(&LieElement, &LieElement) -> Option<T>) -> Option<T> {
    let b = lie_basis(n);
    for u in &b {
        for v in &b {
            if let Some(t) = f(u, v) {
                return Some(t);
            }
        }
    }
    None
}

/// Coefficients of the ambient-induced operators at `w = 2 - n/2` against
/// their closed forms.
pub fn closed_form_checks(n: usize) -> Result<Vec<CheckReport>> {
    let w = bilaplacian_weight(n);
    let ni = n as i64;
    let mut out = Vec::new();

    let d = LieElement::dilation(n);
    let op = canonical_dv_ambient(d.tensor(), &w)?.op;
    let c = first_order_dv_coefficient(&op, &d.vector_field());
    out.push(
        CheckReport::new("closed_form.first_order", n, c == Some(rat(ni - 4, 2 * ni)))
            .at_weight(&w)
            .with_detail(format!("coefficient {}", c.as_ref().map(format_rational).unwrap_or_default())),
    );

    let second = find_pair(n, |u, v| {
        let cart = cartan_product(u, v);
        let realized = ambient::realize_ckt(&cart).ok()?;
        let op = canonical_dv_ambient(&cart, &w).ok()?.op;
        second_order_dv_coefficients(&op, &realized)
    });
    let expected = (rat(ni - 2, ni + 2), rat((ni - 2) * (ni - 4), 4 * (ni + 1) * (ni + 2)));
    out.push(
        CheckReport::new("closed_form.second_order", n, second.as_ref() == Some(&expected))
            .at_weight(&w)
            .with_detail(match &second {
                Some((a, b)) => format!("coefficients {}, {}", format_rational(a), format_rational(b)),
                None => "no pair with independent lower-order terms".into(),
            }),
    );

    let dw = find_pair(n, |u, v| {
        let wt = tail_tensor(&bullet_tensor(u, v));
        let wf = bullet_product(u, v).as_scalar();
        let op = canonical_dw_ambient(&wt, &w).ok()?.op;
        dw_coefficients(&op, &wf)
    });
    let expected = (int(-1), -rat(ni - 4, 2 * (ni + 2)));
    out.push(
        CheckReport::new("closed_form.w_operator", n, dw.as_ref() == Some(&expected))
            .at_weight(&w)
            .with_detail(match &dw {
                Some((a, b)) => format!("coefficients {}, {}", format_rational(a), format_rational(b)),
                None => "no pair with independent lower-order terms".into(),
            }),
    );
    Ok(out)
}

/// The bases of conformal Killing vectors, valency-two conformal Killing
/// tensors and generalised conformal Killing scalars.
pub fn second_order_bases(n: usize) -> Result<(KillingBasis, KillingBasis, KillingBasis)> {
    let k1 = solve_ckt(n, 1, BasisKind::ConformalKilling.default_bound(1))?;
    let k2 = solve_ckt(n, 2, BasisKind::ConformalKilling.default_bound(2))?;
    let l2 = solve_gckt(n, 0, BasisKind::GeneralisedConformalKilling.default_bound(0))?;
    Ok((k1, k2, l2))
}

/// `Some(δ)` when `Δ² D = δ Δ²`, checked by recomposing.
pub fn symmetry_certificate(d: &DiffOp) -> Option<DiffOp> {
    let delta = d.is_symmetry()?;
    let l2 = DiffOp::bilaplacian(d.space());
    (delta.compose(&l2) == l2.compose(d)).then_some(delta)
}

/// Every canonical operator at `w = 2 - n/2` is a symmetry of `Δ²`.
pub fn symmetry_certificate_checks(n: usize) -> Result<Vec<CheckReport>> {
    let w = bilaplacian_weight(n);
    let (k1, k2, l2) = second_order_bases(n)?;
    let mut out = Vec::new();
    for (name, basis, is_w) in [
        ("certificate.conformal_killing_vectors", &k1, false),
        ("certificate.conformal_killing_tensors", &k2, false),
        ("certificate.generalised_killing_scalars", &l2, true),
    ] {
        let mut failure = None;
        for v in &basis.basis {
            let op = if is_w { canonical_dw(v, &w)? } else { canonical_dv(v, &w)? };
            if symmetry_certificate(&op.op).is_none() && failure.is_none() {
                failure = Some(op.to_json());
            }
        }
        let mut r = CheckReport::new(name, n, failure.is_none())
            .at_weight(&w)
            .with_detail(format!("{} operators", basis.dimension()));
        if let Some(f) = failure {
            r = r.with_witness(f);
        }
        out.push(r);
    }
    Ok(out)
}

/// Brute-force enumeration against the counting formula, against the
/// Killing-tensor dimensions, and against the span of the canonical operators.
pub fn enumeration_checks(n: usize) -> Result<Vec<CheckReport>> {
    let sym = enumerate_symmetries(n, 2, 6)?;
    let formula = crate::cktsolve::second_order_symmetry_dimension(n);
    let (k1, k2, l2) = second_order_bases(n)?;
    let routes = 1 + k1.dimension() + k2.dimension() + l2.dimension();
    let canon = canonical_second_order_symmetries(&k1.basis, &k2.basis, &l2.basis, n)?;
    let rank_canon = operator_rank(&canon);
    let mut all = canon.clone();
    all.extend(sym.basis.iter().cloned());
    let rank_all = operator_rank(&all);
    let spans = rank_canon == canon.len() && rank_canon == sym.dimension() && rank_all == rank_canon;
    Ok(vec![
        CheckReport::new("enumeration.matches_formula", n, sym.dimension() == formula)
            .with_detail(format!("enumerated {}, formula {formula}", sym.dimension())),
        CheckReport::new("enumeration.matches_killing_dimensions", n, sym.dimension() == routes).with_detail(format!(
            "1 + {} + {} + {} = {routes}",
            k1.dimension(),
            k2.dimension(),
            l2.dimension()
        )),
        CheckReport::new("enumeration.spanned_by_canonical_operators", n, spans)
            .with_detail(format!("rank {rank_canon} of {} canonical operators", canon.len())),
    ])
}

/// The three divergence identities on the valency one and two bases.
pub fn divergence_identity_checks(n: usize) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for s in [1, 2] {
        let basis = solve_ckt(n, s, BasisKind::ConformalKilling.default_bound(s))?;
        let mut failed = Vec::new();
        for v in &basis.basis {
            let id = verify_divergence_identities(v)?;
            for f in id.failures() {
                if !failed.contains(&f) {
                    failed.push(f);
                }
            }
        }
        out.push(
            CheckReport::new(format!("killing.divergence_identities_valency_{s}"), n, failed.is_empty())
                .with_detail(if failed.is_empty() {
                    format!("{} basis tensors", basis.dimension())
                } else {
                    failed.join(", ")
                }),
        );
    }
    Ok(out)
}

/// Each summand of `g ⊗ g` acts as predicted at weight `w`.
pub fn summand_checks(n: usize, w: &Rational, rng: &mut impl Rng) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let hook = random_summand(n, Summand::Hook, rng);
    out.push(CheckReport::new("summand.hook_vanishes", n, ambient::two_pair_operator(&hook).is_zero()).at_weight(w));
    if n + 2 >= 4 {
        let skew = random_summand(n, Summand::FullySkew, rng);
        out.push(
            CheckReport::new("summand.fully_skew_vanishes", n, ambient::two_pair_operator(&skew).is_zero()).at_weight(w),
        );
    }

    let v = int(rng.gen_range(1..=5));
    let scalar = ambient::induce(&ambient::two_pair_operator(&GgDecomposition::embed_scalar(n, &v)), w)?;
    let expected = DiffOp::constant(VarSpace::base(n), scalar_coefficient(n, w) * &v);
    out.push(CheckReport::new("summand.scalar_action", n, scalar == expected).at_weight(w));

    let u = LieElement::random(n, rng);
    let adj = ambient::induce(&ambient::two_pair_operator(&GgDecomposition::embed_adjoint(u.tensor())), w)?;
    let half = canonical_dv(&u.vector_field(), w)?.op.scale(&rat(1, 2));
    out.push(CheckReport::new("summand.adjoint_is_half_first_order", n, adj == half).at_weight(w));

    let bx = random_summand(n, Summand::Bullet, rng);
    let bt = decompose_gg(&bx).bullet;
    let amb = ambient::two_pair_operator(&bx);
    out.push(CheckReport::new("summand.bullet_operator_form", n, amb == bullet_operator(&bt)));
    let induced = ambient::induce(&amb, w)?;
    let weighted = ambient::induce(&bullet_operator_on_weight(&bt, w), w)?;
    out.push(CheckReport::new("summand.bullet_on_weight", n, induced == weighted).at_weight(w));
    if *w == laplacian_weight(n) {
        let factor = induced.right_factor(1);
        let mut r = CheckReport::new("summand.bullet_factors_through_laplacian", n, factor.is_ok()).at_weight(w);
        if let Ok(delta) = factor {
            r = r.with_witness(delta.to_json());
        }
        out.push(r);
    }
    Ok(out)
}

/// A random trace-free symmetric ambient 4-tensor with small entries.
pub fn random_quartic(n: usize, rng: &mut impl Rng) -> ConstSymTensor {
    loop {
        let mut z = ConstSymTensor::new(n + 2, Metric::Ambient, 4);
        for idx in multisets(n + 2, 4) {
            let c: i64 = rng.gen_range(-2..=2);
            if c != 0 {
                z.set(&idx, int(c));
            }
        }
        let z = z.tracefree_part();
        if !z.is_zero() {
            return z;
        }
    }
}

/// The fourth-order tensor built from `Z` for `Z = tf(e_1^4)` and a random `Z`.
pub fn counterexample_checks(n: usize, rng: &mut impl Rng) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for (label, z) in [("unit", quartic_power(n, 1)), ("random", random_quartic(n, rng))] {
        let r = counterexample_check(&z)?;
        out.push(CheckReport::new(
            format!("counterexample.{label}.traces_vanish"),
            n,
            r.first_trace_vanishes && r.last_trace_vanishes,
        ));
        let c = r.mixed_trace_multiple.clone();
        out.push(
            CheckReport::new(
                format!("counterexample.{label}.mixed_trace_multiple"),
                n,
                c.as_ref().is_some_and(|c| !c.is_zero()),
            )
            .with_detail(format!("c = {}", c.as_ref().map(format_rational).unwrap_or("none".into()))),
        );
        let k = r.operator_multiple.clone();
        let w = bilaplacian_weight(n);
        out.push(
            CheckReport::new(
                format!("counterexample.{label}.induces_multiple_of_bilaplacian"),
                n,
                k.as_ref().is_some_and(|k| !k.is_zero()) && !r.quartic.is_zero(),
            )
            .at_weight(&w)
            .with_detail(format!("c' = {}", k.as_ref().map(format_rational).unwrap_or("none".into())))
            .with_witness(json!({"quartic": r.quartic.to_json()})),
        );
    }
    let zero = ConstSymTensor::new(n + 2, Metric::Ambient, 4);
    let r = counterexample_check(&zero)?;
    out.push(CheckReport::new("counterexample.zero", n, r.induced.is_zero()));
    Ok(out)
}
