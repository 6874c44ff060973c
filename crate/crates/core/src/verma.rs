//! Verma modules A/I_V, twisted Verma ideals in rank 2, the explicit sl(3)
//! operator table, the sl(3) intertwiners and the simplicity criterion for
//! W(λ) over sl(3).

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{as_int, as_nonneg_int, factorial, int, is_integer, rat, Rational};
use crate::chevalley::{quadratic_casimir, CasimirScope, LieAlgebraData};
use crate::error::{Error, Result};
use crate::gt_module::{generator_images, gt_pattern, monomials_up_to, submodule_closure, EchelonSpan};
use crate::realization::{apply_uea, pi_twisted, variable_labels, RealizationContext, Realize};
use crate::roots::{weyl_vector, RootSystemData, WeightVec};
use crate::weyl::{quotient_act, weyl_commutator, weyl_mul, ModuleVector, Polarity, PolarityPattern, WeylOp};

/// g acting on the Verma module A/I_V. `ctx` must come from `for_module(λ)`.
pub fn verma_act(ctx: &RealizationContext, g: usize, v: &ModuleVector) -> ModuleVector {
    quotient_act(ctx.pi(g), v, &PolarityPattern::verma(ctx.nvars()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralCharacterReport {
    #[serde(with = "crate::algebra::serde_rational")]
    pub expected: Rational,
    pub kappa: Option<String>,
    pub checked_verma: usize,
    pub checked_gt: usize,
    pub mismatch: Option<String>,
}

impl CentralCharacterReport {
    pub fn ok(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// The full quadratic Casimir acts on every basis monomial of degree ≤ bound
/// in A/I_V and A/I_GT by one scalar equal to (λ+ρ, λ+ρ) - (ρ, ρ).
pub fn central_character_check(ctx: &RealizationContext, bound: u32) -> CentralCharacterReport {
    let l = &ctx.l;
    let rs = &l.rs;
    let rho = weyl_vector(rs);
    let lam_rho = &ctx.lambda;
    let expected = rs.weight_form(lam_rho, lam_rho) - rs.weight_form(&rho, &rho);
    let cas = apply_uea(ctx, &quadratic_casimir(l, CasimirScope::Full), Realize::Pi);
    let n = ctx.nvars();
    let mut kappa: Option<Rational> = None;
    let mut mismatch = None;
    let mut counts = [0usize; 2];
    let patterns = [PolarityPattern::verma(n), gt_pattern(rs)];
    'outer: for (pi, pat) in patterns.iter().enumerate() {
        for m in monomials_up_to(n, bound) {
            let v = ModuleVector::basis(m.clone());
            let out = quotient_act(&cas, &v, pat);
            let c = out.coeff(&m);
            if out != v.scale(&c) {
                mismatch = Some(format!("monomial {m:?} is not an eigenvector"));
                break 'outer;
            }
            match &kappa {
                None => kappa = Some(c),
                Some(k) if *k != c => {
                    mismatch = Some(format!("monomial {m:?} gives {c}, expected {k}"));
                    break 'outer;
                }
                _ => {}
            }
            counts[pi] += 1;
        }
    }
    if mismatch.is_none() && kappa.as_ref() != Some(&expected) {
        mismatch = Some(format!("scalar {:?} differs from (λ+ρ,λ+ρ)-(ρ,ρ) = {expected}", kappa.as_ref().map(|k| k.to_string())));
    }
    CentralCharacterReport {
        expected,
        kappa: kappa.map(|k| crate::algebra::fmt_rational(&k)),
        checked_verma: counts[0],
        checked_gt: counts[1],
        mismatch,
    }
}

fn require_a2(l: &LieAlgebraData) -> Result<()> {
    if l.rs.kind != 'A' || l.rs.rank != 2 {
        return Err(Error::Precondition(format!("sl(3) only, got {}", l.rs.name())));
    }
    Ok(())
}

/// Indices of the variables x, y, z (α₁, α₂, θ) in A2.
fn xyz(rs: &RootSystemData) -> [usize; 3] {
    [rs.simple_index(0), rs.simple_index(1), rs.theta_index]
}

struct Sl3Ops {
    x: WeylOp,
    y: WeylOp,
    z: WeylOp,
    dx: WeylOp,
    dy: WeylOp,
    dz: WeylOp,
}

impl Sl3Ops {
    fn new(rs: &RootSystemData) -> Self {
        let [i, j, k] = xyz(rs);
        Self {
            x: WeylOp::x(3, i),
            y: WeylOp::x(3, j),
            z: WeylOp::x(3, k),
            dx: WeylOp::d(3, i),
            dy: WeylOp::d(3, j),
            dz: WeylOp::d(3, k),
        }
    }

    fn c(v: Rational) -> WeylOp {
        WeylOp::constant(3, v)
    }

    /// ∂x + ½y∂z
    fn d1(&self) -> WeylOp {
        self.dx.add(&weyl_mul(&self.y, &self.dz).scale(&rat(1, 2)))
    }

    /// ∂y - ½x∂z
    fn d2(&self) -> WeylOp {
        self.dy.sub(&weyl_mul(&self.x, &self.dz).scale(&rat(1, 2)))
    }
}

fn prod(ops: &[&WeylOp]) -> WeylOp {
    ops.iter().fold(WeylOp::one(3), |acc, o| weyl_mul(&acc, o))
}

/// The nine displayed sl(3) operators for π_λ, keyed by label.
pub fn sl3_expected_table(rs: &RootSystemData, lambda: &WeightVec) -> Vec<(String, WeylOp)> {
    let o = Sl3Ops::new(rs);
    let (l1, l2) = (lambda[0].clone(), lambda[1].clone());
    let h = rat(1, 2);
    let q = rat(1, 4);
    let (x, y, z, dx, dy, dz) = (&o.x, &o.y, &o.z, &o.dx, &o.dy, &o.dz);
    let xdx = weyl_mul(x, dx);
    let ydy = weyl_mul(y, dy);
    let zdz = weyl_mul(z, dz);

    let e1 = weyl_mul(z, &dy.add(&weyl_mul(x, dz).scale(&h)))
        .add(&weyl_mul(x, &xdx.sub(&ydy.scale(&h)).add(&Sl3Ops::c(&l1 + int(1)))))
        .add(&prod(&[x, x, y, dz]).scale(&q));
    let e2 = weyl_mul(z, &dx.scale(&int(-1)).add(&weyl_mul(y, dz).scale(&h)))
        .add(&weyl_mul(y, &ydy.sub(&xdx.scale(&h)).add(&Sl3Ops::c(&l2 + int(1)))))
        .sub(&prod(&[x, y, y, dz]).scale(&q));
    let et = weyl_mul(z, &xdx.add(&ydy).add(&zdz).add(&Sl3Ops::c(&l1 + &l2 + int(2))))
        .add(&prod(&[x, y, &xdx.sub(&ydy).add(&Sl3Ops::c(&l1 - &l2))]).scale(&h))
        .add(&prod(&[x, x, y, y, dz]).scale(&q));
    let f1 = dx.scale(&int(-1)).add(&weyl_mul(y, dz).scale(&h));
    let f2 = dy.scale(&int(-1)).sub(&weyl_mul(x, dz).scale(&h));
    let ft = dz.scale(&int(-1));
    let h1 = xdx.scale(&int(2)).sub(&ydy).add(&zdz).add(&Sl3Ops::c(&l1 + int(1)));
    let h2 = ydy.scale(&int(2)).sub(&xdx).add(&zdz).add(&Sl3Ops::c(&l2 + int(1)));
    let ht = xdx.add(&ydy).add(&zdz.scale(&int(2))).add(&Sl3Ops::c(&l1 + &l2 + int(2)));
    vec![
        ("e_alpha1".into(), e1),
        ("e_alpha2".into(), e2),
        ("e_theta".into(), et),
        ("f_alpha1".into(), f1),
        ("f_alpha2".into(), f2),
        ("f_theta".into(), ft),
        ("h_alpha1".into(), h1),
        ("h_alpha2".into(), h2),
        ("h_theta".into(), ht),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableMismatch {
    pub label: String,
    pub computed: String,
    pub expected: String,
    pub difference: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub matched: usize,
    pub total: usize,
    pub mismatches: Vec<TableMismatch>,
}

impl TableReport {
    pub fn ok(&self) -> bool {
        self.matched == self.total
    }
}

/// Compares π_λ with the explicit table. `ctx.lambda` is the subscript of π.
pub fn sl3_table_check(ctx: &RealizationContext) -> Result<TableReport> {
    let l = &ctx.l;
    require_a2(l)?;
    let rs = &l.rs;
    let labels = variable_labels(l);
    let expected = sl3_expected_table(rs, &ctx.lambda);
    let (k1, k2) = (rs.simple_index(0), rs.simple_index(1));
    let computed = [
        ctx.pi(l.e(k1)).clone(),
        ctx.pi(l.e(k2)).clone(),
        ctx.pi(l.e_theta()).clone(),
        ctx.pi(l.f(k1)).clone(),
        ctx.pi(l.f(k2)).clone(),
        ctx.pi(l.f_theta()).clone(),
        ctx.pi(l.h(0)).clone(),
        ctx.pi(l.h(1)).clone(),
        ctx.pi_h_theta(),
    ];
    let mut mismatches = Vec::new();
    for ((label, exp), got) in expected.iter().zip(&computed) {
        if exp != got {
            mismatches.push(TableMismatch {
                label: label.clone(),
                computed: got.display_with(&labels),
                expected: exp.display_with(&labels),
                difference: got.sub(exp).display_with(&labels),
            });
        }
    }
    Ok(TableReport { matched: expected.len() - mismatches.len(), total: expected.len(), mismatches })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealCatalogEntry {
    pub label: String,
    pub pattern: PolarityPattern,
    /// Reduced word for Weyl-group labels.
    pub word: Option<Vec<usize>>,
    /// Generators of the ideal, e.g. "(∂x, y, z)".
    pub generators: String,
}

const CATALOGUE: [(&str, Option<&[usize]>, [Polarity; 3]); 8] = {
    use Polarity::{D, X};
    [
        ("e", Some(&[]), [X, X, X]),
        ("s1", Some(&[0]), [D, X, X]),
        ("s2", Some(&[1]), [X, D, X]),
        ("s1s2", Some(&[0, 1]), [X, D, D]),
        ("s2s1", Some(&[1, 0]), [D, X, D]),
        ("s1s2s1", Some(&[0, 1, 0]), [D, D, D]),
        ("GT", None, [X, X, D]),
        ("GT*", None, [D, D, X]),
    ]
};

fn pattern_in_root_order(rs: &RootSystemData, xyz_pat: [Polarity; 3]) -> PolarityPattern {
    let mut p = vec![Polarity::X; 3];
    for (slot, pol) in xyz(rs).into_iter().zip(xyz_pat) {
        p[slot] = pol;
    }
    PolarityPattern(p)
}

fn generators_string(xyz_pat: [Polarity; 3]) -> String {
    let names = ["x", "y", "z"];
    let parts: Vec<String> = names
        .iter()
        .zip(xyz_pat)
        .map(|(n, p)| match p {
            Polarity::X => n.to_string(),
            Polarity::D => format!("∂{n}"),
        })
        .collect();
    format!("({})", parts.join(", "))
}

/// The eight left ideals of the sl(3) Weyl algebra.
pub fn ideal_catalogue(rs: &RootSystemData) -> Result<Vec<IdealCatalogEntry>> {
    if rs.kind != 'A' || rs.rank != 2 {
        return Err(Error::Precondition("the ideal catalogue is for sl(3)".into()));
    }
    Ok(CATALOGUE
        .iter()
        .map(|(label, word, pat)| IdealCatalogEntry {
            label: label.to_string(),
            pattern: pattern_in_root_order(rs, *pat),
            word: word.map(<[usize]>::to_vec),
            generators: generators_string(*pat),
        })
        .collect())
}

pub fn twisted_ideal(rs: &RootSystemData, label: &str) -> Result<PolarityPattern> {
    ideal_catalogue(rs)?
        .into_iter()
        .find(|e| e.label == label)
        .map(|e| e.pattern)
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))
}

/// I_w contains x_α for α ∈ w⁻¹(Δ⁺) ∩ Δ⁺ and ∂_α for α ∈ w⁻¹(-Δ⁺) ∩ Δ⁺.
pub fn general_rule_pattern(rs: &RootSystemData, word: &[usize]) -> PolarityPattern {
    PolarityPattern(
        (0..rs.num_positive())
            .map(|k| {
                let img = rs.apply_word_root(word, rs.root(k));
                if img.iter().all(|&c| c >= 0) {
                    Polarity::X
                } else {
                    Polarity::D
                }
            })
            .collect(),
    )
}

/// For a Weyl-group label: the twisted action π^w on A/I_w satisfies the
/// module axiom on monomials of degree ≤ bound and h acts diagonally.
pub fn twisted_module_check(ctx: &RealizationContext, word: &[usize], bound: u32) -> Result<bool> {
    let l = &ctx.l;
    let tw = pi_twisted(ctx, word)?;
    let imgs = tw.images();
    let pat = general_rule_pattern(&l.rs, word);
    let n = ctx.nvars();
    for m in monomials_up_to(n, bound) {
        let v = ModuleVector::basis(m);
        for i in 0..l.rank() {
            let hv = quotient_act(&imgs[l.h(i)], &v, &pat);
            if hv.len() > 1 || (hv.len() == 1 && hv.as_monomial().map(|(e, _)| e) != v.as_monomial().map(|(e, _)| e)) {
                return Ok(false);
            }
        }
        for a in 0..l.dim {
            for b in 0..l.dim {
                let lhs = quotient_act(&imgs[a], &quotient_act(&imgs[b], &v, &pat), &pat)
                    .sub(&quotient_act(&imgs[b], &quotient_act(&imgs[a], &v, &pat), &pat));
                let mut br = WeylOp::zero(n);
                for (k, c) in l.bracket(a, b) {
                    br.add_scaled(&imgs[*k], c);
                }
                if lhs != quotient_act(&br, &v, &pat) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IntertwinerCase {
    S1,
    S2,
    Long,
}

impl IntertwinerCase {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "s1" => Ok(Self::S1),
            "s2" => Ok(Self::S2),
            "long" => Ok(Self::Long),
            _ => Err(Error::UnknownLabel(s.to_string())),
        }
    }

    pub fn word(self) -> &'static [usize] {
        match self {
            Self::S1 => &[0],
            Self::S2 => &[1],
            Self::Long => &[0, 1, 0],
        }
    }
}

/// ∏_{j=0}^{k-1} (D1 D2 - ½(λ₁ - λ₂ - k + 2j)∂z) for an explicit k.
pub fn long_intertwiner(rs: &RootSystemData, nu: &WeightVec, k: i64) -> WeylOp {
    let o = Sl3Ops::new(rs);
    let d12 = weyl_mul(&o.d1(), &o.d2());
    let mut out = WeylOp::one(3);
    for j in 0..k.max(0) {
        let c = (&nu[0] - &nu[1] - int(k) + int(2 * j)) * rat(1, 2);
        out = weyl_mul(&out, &d12.sub(&o.dz.scale(&c)));
    }
    out
}

/// The Verma intertwiner φ with π_ν(a) φ = φ π_{w ν}(a); ν is the subscript
/// of π (so the modules are M(ν - ρ) and M(wν - ρ)).
pub fn intertwiner(rs: &RootSystemData, nu: &WeightVec, case: IntertwinerCase) -> Result<WeylOp> {
    if rs.kind != 'A' || rs.rank != 2 {
        return Err(Error::Precondition("intertwiners are for sl(3)".into()));
    }
    let o = Sl3Ops::new(rs);
    let need = |v: &Rational, what: &str| {
        as_nonneg_int(v).filter(|&k| k > 0).ok_or_else(|| Error::Integrality(format!("{what} = {v} is not in ℕ")))
    };
    Ok(match case {
        IntertwinerCase::S1 => o.d1().pow(need(&nu[0], "λ₁")? as u32),
        IntertwinerCase::S2 => o.d2().pow(need(&nu[1], "λ₂")? as u32),
        IntertwinerCase::Long => long_intertwiner(rs, nu, need(&(&nu[0] + &nu[1]), "λ₁+λ₂")? as i64),
    })
}

/// Generators for which π_ν(a) φ ≠ φ π_{wν}(a).
pub fn intertwining_failures(l: &Arc<LieAlgebraData>, nu: &WeightVec, word: &[usize], phi: &WeylOp) -> Result<Vec<String>> {
    let src = RealizationContext::new(l.clone(), l.rs.apply_word_weight(word, nu))?;
    let dst = RealizationContext::new(l.clone(), nu.clone())?;
    Ok((0..l.dim)
        .filter(|&a| weyl_mul(dst.pi(a), phi) != weyl_mul(phi, src.pi(a)))
        .map(|a| l.label(a))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntertwinerReport {
    pub case: IntertwinerCase,
    pub operator: String,
    pub failures: Vec<String>,
    /// Long case only: outcome with the opposite sign k = -(λ₁+λ₂).
    pub opposite_sign_failures: Option<Vec<String>>,
}

pub fn intertwiner_report(l: &Arc<LieAlgebraData>, nu: &WeightVec, case: IntertwinerCase) -> Result<IntertwinerReport> {
    let phi = intertwiner(&l.rs, nu, case)?;
    let failures = intertwining_failures(l, nu, case.word(), &phi)?;
    let opposite_sign_failures = if case == IntertwinerCase::Long {
        let k = as_int(&(&nu[0] + &nu[1])).unwrap_or(0);
        let alt = long_intertwiner(&l.rs, nu, -k);
        Some(intertwining_failures(l, nu, case.word(), &alt)?)
    } else {
        None
    };
    Ok(IntertwinerReport { case, operator: phi.display_with(&variable_labels(l)), failures, opposite_sign_failures })
}

/// Whether two operators are proportional with a nonzero factor.
pub fn proportional(a: &WeylOp, b: &WeylOp) -> bool {
    let (Some((m, ca)), true) = (a.terms().next(), !b.is_zero()) else {
        return a.is_zero() && b.is_zero();
    };
    let cb = b.coeff(&m.0, &m.1);
    if cb.is_zero() {
        return false;
    }
    a.scale(&(cb / ca)) == *b
}

// ---- simplicity ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Witness {
    /// ψ = φ restricted to W is a homomorphism whose image misses 1 in
    /// degree ≤ bound.
    ProperImage {
        case: IntertwinerCase,
        intertwines: bool,
        preimage_monomials: usize,
        one_in_image: bool,
    },
    /// e_θ is locally nilpotent on U(g)·1 but not on z^m.
    ZPowerEscape {
        exponent: u64,
        nilpotent_on_one: bool,
        factorial_growth: bool,
        reached_from_one: bool,
    },
}

impl Witness {
    pub fn valid(&self) -> bool {
        match self {
            Self::ProperImage { intertwines, one_in_image, .. } => *intertwines && !*one_in_image,
            Self::ZPowerEscape { nilpotent_on_one, factorial_growth, reached_from_one, .. } => {
                *nilpotent_on_one && *factorial_growth && !*reached_from_one
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureEvidence {
    pub bound: u32,
    pub forward_reached: usize,
    pub forward_total: usize,
    pub backward_reaching_one: usize,
    pub backward_total: usize,
}

impl ClosureEvidence {
    pub fn ok(&self) -> bool {
        self.forward_reached == self.forward_total && self.backward_reaching_one == self.backward_total
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicityReport {
    /// Subscript ν of π_ν; the module is W(ν - ρ).
    pub nu: WeightVec,
    pub highest_weight: WeightVec,
    /// ν₁, ν₂ ∉ ℕ and ν₁ + ν₂ ∉ ℤ.
    pub proof_reading: bool,
    /// λ₁, λ₂ ∉ ℕ₀ and λ(h_θ) ∉ ℤ for λ = ν - ρ.
    pub statement_reading: bool,
    /// The statement's conditions applied to ν without the ρ-shift.
    pub statement_unshifted: bool,
    pub verdict: bool,
    pub w_checks: usize,
    pub w_failures: Vec<String>,
    pub closure: Option<ClosureEvidence>,
    pub witnesses: Vec<Witness>,
}

impl SimplicityReport {
    /// The verdict agrees with the computed evidence.
    pub fn consistent(&self) -> bool {
        let ev = if self.verdict {
            self.closure.as_ref().is_some_and(ClosureEvidence::ok)
        } else {
            !self.witnesses.is_empty() && self.witnesses.iter().all(Witness::valid)
        };
        ev && self.w_failures.is_empty()
    }
}

fn in_n(v: &Rational) -> bool {
    as_nonneg_int(v).is_some_and(|k| k > 0)
}

fn in_n0(v: &Rational) -> bool {
    as_nonneg_int(v).is_some()
}

fn gt_mono(rs: &RootSystemData, a: u32, b: u32, c: u32) -> ModuleVector {
    let mut e = vec![0u32; 3];
    let [i, j, k] = xyz(rs);
    e[i] = a;
    e[j] = b;
    e[k] = c;
    ModuleVector::basis(e)
}

/// w_i = ((π(h_θ) - 2)σ(e_αi) - σ(e_θ)π([e_αi, f_θ])) ∂x^a ∂y^b against
/// the closed forms.
fn w_formula_failures(ctx: &RealizationContext, bound: u32) -> (usize, Vec<String>) {
    let l = &ctx.l;
    let rs = &l.rs;
    let pat = gt_pattern(rs);
    let (n1, n2) = (ctx.lambda[0].clone(), ctx.lambda[1].clone());
    let ht2 = ctx.pi_h_theta().sub(&WeylOp::constant(3, int(2)));
    let ops: Vec<WeylOp> = (0..2)
        .map(|i| {
            let k = rs.simple_index(i);
            let br = l.bracket(l.e(k), l.f_theta());
            weyl_mul(&ht2, ctx.sigma(l.e(k))).sub(&weyl_mul(ctx.sigma(l.e_theta()), &ctx.image_sparse(Realize::Pi, br)))
        })
        .collect();
    let mut checks = 0;
    let mut failures = Vec::new();
    for a in 0..=bound {
        for b in 0..=bound - a {
            let v = gt_mono(rs, a, b, 0);
            let (ai, bi) = (int(a as i64), int(b as i64));
            let w1 = if a == 0 {
                ModuleVector::zero(3)
            } else {
                gt_mono(rs, a - 1, b, 0).scale(&(-(&ai) * (&n1 + &n2 - &ai) * (&n1 - &ai)))
            };
            let w2 = if b == 0 {
                ModuleVector::zero(3)
            } else {
                gt_mono(rs, a, b - 1, 0).scale(&(-(&bi) * (&n1 + &n2 - &bi) * (&n2 - &bi)))
            };
            for (i, expect) in [w1, w2].into_iter().enumerate() {
                checks += 1;
                if quotient_act(&ops[i], &v, &pat) != expect {
                    failures.push(format!("w{} at a={a}, b={b}", i + 1));
                }
            }
        }
    }
    (checks, failures)
}

fn closure_evidence(ctx: &RealizationContext, bound: u32) -> ClosureEvidence {
    let pat = gt_pattern(&ctx.l.rs);
    let ops = generator_images(ctx);
    let work = bound + 2;
    let mons = monomials_up_to(3, bound);
    let one = ModuleVector::vacuum(3);
    let fwd = submodule_closure(&ops, &pat, &[one.clone()], work);
    let forward_reached = mons.iter().filter(|m| fwd.contains(&ModuleVector::basis((*m).clone()))).count();
    let backward_reaching_one = mons
        .iter()
        .filter(|m| submodule_closure(&ops, &pat, &[ModuleVector::basis((*m).clone())], work).contains(&one))
        .count();
    ClosureEvidence { bound, forward_reached, forward_total: mons.len(), backward_reaching_one, backward_total: mons.len() }
}

fn proper_image(l: &Arc<LieAlgebraData>, ctx: &RealizationContext, case: IntertwinerCase, bound: u32) -> Result<Witness> {
    let rs = &l.rs;
    let nu = &ctx.lambda;
    let phi = intertwiner(rs, nu, case)?;
    let intertwines = intertwining_failures(l, nu, case.word(), &phi)?.is_empty();
    // φ has weight -kβ; preimages of 1 are ∂x^a ∂y^b z^c with relative
    // weight (c-a)α₁ + (c-b)α₂ = kβ
    let (p1, p2) = match case {
        IntertwinerCase::S1 => (as_int(&nu[0]).unwrap(), 0),
        IntertwinerCase::S2 => (0, as_int(&nu[1]).unwrap()),
        IntertwinerCase::Long => {
            let k = as_int(&(&nu[0] + &nu[1])).unwrap();
            (k, k)
        }
    };
    let pat = gt_pattern(rs);
    let mut image = EchelonSpan::new();
    let mut count = 0;
    for c in 0..=bound as i64 {
        let (a, b) = (c - p1, c - p2);
        if a < 0 || b < 0 || a + b + c > bound as i64 {
            continue;
        }
        count += 1;
        image.insert(&quotient_act(&phi, &gt_mono(rs, a as u32, b as u32, c as u32), &pat));
    }
    Ok(Witness::ProperImage {
        case,
        intertwines,
        preimage_monomials: count,
        one_in_image: image.contains(&ModuleVector::vacuum(3)),
    })
}

fn z_escape(ctx: &RealizationContext, m0: u64, bound: u32) -> Witness {
    let l = &ctx.l;
    let rs = &l.rs;
    let pat = gt_pattern(rs);
    let et = ctx.pi(l.e_theta());
    let mut v = ModuleVector::vacuum(3);
    for _ in 0..m0 {
        v = quotient_act(et, &v, &pat);
    }
    let nilpotent_on_one = v.is_zero();
    let mut w = gt_mono(rs, 0, 0, m0 as u32);
    let mut factorial_growth = true;
    for k in 1..=6u64 {
        w = quotient_act(et, &w, &pat);
        let expect = gt_mono(rs, 0, 0, (m0 + k) as u32).scale(&Rational::from_integer(factorial(k)));
        factorial_growth &= w == expect;
    }
    let span = submodule_closure(&generator_images(ctx), &pat, &[ModuleVector::vacuum(3)], bound.max(m0 as u32) + 2);
    Witness::ZPowerEscape {
        exponent: m0,
        nilpotent_on_one,
        factorial_growth,
        reached_from_one: span.contains(&gt_mono(rs, 0, 0, m0 as u32)),
    }
}

/// Simplicity of W(ν - ρ) over sl(3), with ν the subscript of π_ν.
pub fn simplicity_check_sl3(l: &Arc<LieAlgebraData>, nu: &WeightVec, bound: u32) -> Result<SimplicityReport> {
    require_a2(l)?;
    let rs = &l.rs;
    let ctx = RealizationContext::new(l.clone(), nu.clone())?;
    let (n1, n2) = (nu[0].clone(), nu[1].clone());
    let sum = &n1 + &n2;
    let highest_weight = nu - &weyl_vector(rs);
    let lt = rs.weight_on_coroot(&highest_weight, rs.theta());
    let proof_reading = !in_n(&n1) && !in_n(&n2) && !is_integer(&sum);
    let statement_reading = !in_n0(&highest_weight[0]) && !in_n0(&highest_weight[1]) && !is_integer(&lt);
    let statement_unshifted = !in_n0(&n1) && !in_n0(&n2) && !is_integer(&sum);
    let verdict = proof_reading;
    let (w_checks, w_failures) = w_formula_failures(&ctx, bound);

    let closure = (proof_reading || statement_unshifted).then(|| closure_evidence(&ctx, bound));
    let mut witnesses = Vec::new();
    if !verdict {
        if in_n(&n1) {
            witnesses.push(proper_image(l, &ctx, IntertwinerCase::S1, bound)?);
        }
        if in_n(&n2) {
            witnesses.push(proper_image(l, &ctx, IntertwinerCase::S2, bound)?);
        }
        if in_n(&sum) {
            witnesses.push(proper_image(l, &ctx, IntertwinerCase::Long, bound)?);
        }
        if let Some(s) = as_int(&sum).filter(|&s| s <= 0) {
            witnesses.push(z_escape(&ctx, (1 - s) as u64, bound));
        }
    }
    Ok(SimplicityReport {
        nu: nu.clone(),
        highest_weight,
        proof_reading,
        statement_reading,
        statement_unshifted,
        verdict,
        w_checks,
        w_failures,
        closure,
        witnesses,
    })
}

/// For each basis element a: whether the literal commutator [π(Cas_θ), π(a)]
/// is a multiple of π(a).
pub fn cas_theta_literal_commutators(ctx: &RealizationContext) -> Vec<(String, bool)> {
    let l = &ctx.l;
    let cas = apply_uea(ctx, &quadratic_casimir(l, CasimirScope::Theta), Realize::Pi);
    (0..l.dim)
        .map(|a| {
            let c = weyl_commutator(&cas, ctx.pi(a));
            (l.label(a), c.is_zero() || proportional(&c, ctx.pi(a)))
        })
        .collect()
}
