//! The θ-Gelfand–Tsetlin module W(λ) = A/I_GT with g acting through π_{λ+ρ}.
//!
//! Basis vectors w_{λ,b} = ∏_{α≠θ} ∂_α^{b_α} · x_θ^{b_θ} are indexed by
//! exponent vectors over Δ⁺ (variable k is the k-th positive root).

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{as_int, int, rat, RatMatrix, Rational};
use crate::chevalley::{quadratic_casimir, CasimirScope};
use crate::eigenspace::{check_phi, generalized_eigenspaces, FilteredOperator, PhiReport};
use crate::error::{Error, Result};
use crate::realization::{apply_uea, RealizationContext, Realize};
use crate::roots::{RootSystemData, WeightVec};
use crate::weyl::{quotient_act, weyl_mul, ModuleVector, PolarityPattern, WeylOp};

/// Integer exponents indexed by the positive roots.
pub type ExponentVec = Vec<i64>;

/// A Γ_θ-character: an h-weight together with a Cas_θ value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaCharacter {
    pub mu: WeightVec,
    #[serde(with = "crate::algebra::serde_rational")]
    pub c: Rational,
}

pub fn gt_pattern(rs: &RootSystemData) -> PolarityPattern {
    PolarityPattern::gt(rs.num_positive(), rs.theta_index)
}

/// Embeds a ∈ ℤ^Π into ℤ^{Δ⁺}.
pub fn extend_simple(rs: &RootSystemData, a: &[i64]) -> ExponentVec {
    let mut out = vec![0; rs.num_positive()];
    for (i, &v) in a.iter().enumerate() {
        out[rs.simple_index(i)] = v;
    }
    out
}

pub fn degree(b: &[i64]) -> i64 {
    b.iter().sum()
}

/// Root coordinates of -Σ_{α≠θ} b_α α + b_θ θ.
fn shift_coords(rs: &RootSystemData, b: &[i64]) -> Vec<i64> {
    let mut c = vec![0i64; rs.rank];
    for (k, &bk) in b.iter().enumerate() {
        let sign = if k == rs.theta_index { 1 } else { -1 };
        for (ci, mi) in c.iter_mut().zip(rs.root(k)) {
            *ci += sign * bk * mi;
        }
    }
    c
}

/// μ_{λ,b} = λ + θ - Σ_{α≠θ} b_α α + b_θ θ.
pub fn weight_of(rs: &RootSystemData, lambda: &WeightVec, b: &[i64]) -> WeightVec {
    let mut c = shift_coords(rs, b);
    for (ci, ti) in c.iter_mut().zip(rs.theta()) {
        *ci += ti;
    }
    lambda + &rs.root_weight(&c)
}

/// The vector t_α for a non-simple positive root.
pub fn t_vector(rs: &RootSystemData, k: usize) -> Result<ExponentVec> {
    if rs.is_simple(k) {
        return Err(Error::Precondition(format!("t_α is undefined for the simple root {}", rs.root_label(k))));
    }
    let sign = if k == rs.theta_index { 1 } else { -1 };
    let mut t = vec![0; rs.num_positive()];
    for (i, &m) in rs.root(k).iter().enumerate() {
        t[rs.simple_index(i)] = sign * m;
    }
    t[k] = 1;
    Ok(t)
}

fn non_simple(rs: &RootSystemData) -> Vec<usize> {
    (0..rs.num_positive()).filter(|&k| !rs.is_simple(k)).collect()
}

/// Whether d lies in the ℤ-span of {t_α : α ∈ Δ⁺ \ Π}.
pub fn in_t_lattice(rs: &RootSystemData, d: &[i64]) -> bool {
    let mut r = d.to_vec();
    for k in non_simple(rs) {
        let t = t_vector(rs, k).expect("non-simple");
        let n = d[k];
        for (ri, ti) in r.iter_mut().zip(&t) {
            *ri -= n * ti;
        }
    }
    r.iter().all(|&v| v == 0)
}

/// The smallest n ≥ 0 with a + n t_θ ∈ ℕ₀^{Δ⁺}, for a ∈ ℤ^Π.
pub fn n_a(rs: &RootSystemData, a: &[i64]) -> Result<i64> {
    let mut n = 0i64;
    for (i, &ai) in a.iter().enumerate() {
        let m = rs.theta()[i];
        if ai < 0 {
            if m == 0 {
                return Err(Error::Precondition("θ has a zero simple coordinate".into()));
            }
            n = n.max((-ai + m - 1) / m);
        }
    }
    Ok(n)
}

fn add_scaled(a: &mut [i64], t: &[i64], n: i64) {
    for (x, y) in a.iter_mut().zip(t) {
        *x += n * y;
    }
}

/// Enumerates n ∈ ℕ₀^{ks} with Σ n ≤ cap and calls f on a + Σ n_k t_k.
fn for_each_combination(ts: &[ExponentVec], base: &[i64], cap: i64, f: &mut dyn FnMut(&[i64])) {
    fn rec(ts: &[ExponentVec], cur: &mut Vec<i64>, left: i64, f: &mut dyn FnMut(&[i64])) {
        let Some((t, rest)) = ts.split_first() else {
            f(cur);
            return;
        };
        let mut k = 0;
        loop {
            rec(rest, cur, left - k, f);
            if k == left {
                break;
            }
            add_scaled(cur, t, 1);
            k += 1;
        }
        add_scaled(cur, t, -k);
    }
    let mut cur = base.to_vec();
    rec(ts, &mut cur, cap, f);
}

/// Basis of W(λ)_{μ_{λ,a}} truncated to total degree ≤ bound:
/// {a + n_a t_θ + t : t ∈ Λ₊, result ∈ ℕ₀^{Δ⁺}}. The set does not depend on λ.
pub fn weight_space_basis(rs: &RootSystemData, a: &[i64], bound: u32) -> Result<Vec<ExponentVec>> {
    if rs.is_simple(rs.theta_index) {
        // rank one: Λ₊ = 0 and the space is spanned by x_θ^a alone
        let b = extend_simple(rs, a);
        let keep = b.iter().all(|&v| v >= 0) && degree(&b) <= bound as i64;
        return Ok(if keep { vec![b] } else { vec![] });
    }
    let na = n_a(rs, a)?;
    let mut base = extend_simple(rs, a);
    add_scaled(&mut base, &t_vector(rs, rs.theta_index)?, na);
    let ts: Vec<ExponentVec> = non_simple(rs).into_iter().map(|k| t_vector(rs, k).unwrap()).collect();
    let mut out = BTreeSet::new();
    // every t_α adds 1 to its own slot, so each coefficient is bounded by the degree
    for_each_combination(&ts, &base, bound as i64, &mut |b| {
        if b.iter().all(|&v| v >= 0) && degree(b) <= bound as i64 {
            out.insert(b.to_vec());
        }
    });
    Ok(out.into_iter().collect())
}

/// All b ∈ ℕ₀^n with Σ b ≤ bound.
pub fn monomials_up_to(n: usize, bound: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, bound, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Oracle: every monomial of degree ≤ bound whose weight equals μ_{λ,a}.
pub fn weight_space_bruteforce(rs: &RootSystemData, a: &[i64], bound: u32) -> Vec<ExponentVec> {
    let lam = WeightVec::zero(rs.rank);
    let target = weight_of(rs, &lam, &extend_simple(rs, a));
    let mut out: Vec<ExponentVec> = monomials_up_to(rs.num_positive(), bound)
        .into_iter()
        .map(|m| m.into_iter().map(i64::from).collect::<Vec<_>>())
        .filter(|b| weight_of(rs, &lam, b) == target)
        .collect();
    out.sort();
    out
}

/// Cas_θ split into its semisimple and nilpotent parts:
/// s = ½σ(h_θ)(σ(h_θ) - 2), n = 2σ(e_θ)σ(f_θ).
pub fn casimir_split(ctx: &RealizationContext) -> (WeylOp, WeylOp) {
    let l = &ctx.l;
    let n = ctx.nvars();
    let sh = ctx.sigma_h_theta();
    let s = weyl_mul(&sh, &sh.sub(&WeylOp::constant(n, int(2)))).scale(&rat(1, 2));
    let nil = weyl_mul(ctx.sigma(l.e_theta()), ctx.sigma(l.f_theta())).scale(&int(2));
    (s, nil)
}

pub fn casimir_theta(ctx: &RealizationContext) -> WeylOp {
    apply_uea(ctx, &quadratic_casimir(&ctx.l, CasimirScope::Theta), Realize::Pi)
}

fn theta_value(rs: &RootSystemData, mu: &WeightVec) -> Rational {
    rs.weight_on_coroot(mu, rs.theta())
}

fn c_of(mu_theta: &Rational, total: i64) -> Rational {
    let a = mu_theta - int(2 * total);
    rat(1, 2) * &a * (a - int(2))
}

/// c_{λ,a,n_θ} = ½(μ(h_θ) - 2(n_a+n_θ))(μ(h_θ) - 2(n_a+n_θ+1)).
pub fn casimir_eigenvalue(rs: &RootSystemData, lambda: &WeightVec, a: &[i64], n_theta: i64) -> Result<Rational> {
    let mu = weight_of(rs, lambda, &extend_simple(rs, a));
    Ok(c_of(&theta_value(rs, &mu), n_a(rs, a)? + n_theta))
}

/// The s-eigenvalue of a single basis vector w_{λ,b}.
pub fn s_eigenvalue_of(rs: &RootSystemData, lambda: &WeightVec, b: &[i64]) -> Rational {
    let mu = weight_of(rs, lambda, b);
    c_of(&theta_value(rs, &mu), b[rs.theta_index])
}

pub fn to_module(b: &[i64]) -> ModuleVector {
    ModuleVector::basis(b.iter().map(|&v| u32::try_from(v).expect("nonnegative exponent")).collect())
}

/// Basis vectors a + N t_θ + t with t ∈ Λ₊^θ and all entries ≥ 0.
pub fn theta_family(rs: &RootSystemData, a: &[i64], total: i64) -> Vec<ExponentVec> {
    let mut base = extend_simple(rs, a);
    add_scaled(&mut base, &t_vector(rs, rs.theta_index).unwrap(), total);
    if base.iter().any(|&v| v < 0) {
        return vec![];
    }
    let ks: Vec<usize> = non_simple(rs).into_iter().filter(|&k| k != rs.theta_index).collect();
    let ts: Vec<ExponentVec> = ks.iter().map(|&k| t_vector(rs, k).unwrap()).collect();
    // each t_α lowers some simple slot by at least one
    let cap: i64 = (0..rs.rank).map(|i| base[rs.simple_index(i)]).sum();
    let mut out = BTreeSet::new();
    for_each_combination(&ts, &base, cap, &mut |b| {
        if b.iter().all(|&v| v >= 0) {
            out.insert(b.to_vec());
        }
    });
    out.into_iter().collect()
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r < &Rational::zero() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaMultiplicity {
    /// dim of the Γ_θ-weight space (distinct x_θ-families counted once).
    pub dimension: usize,
    pub basis: Vec<ExponentVec>,
    /// a ∈ ℤ^Π with μ = μ_{λ,a}; absent when μ is not a weight.
    pub a: Option<Vec<i64>>,
    pub n_a: i64,
    /// Total t_θ multipliers N with c_N = c.
    pub families: Vec<i64>,
    /// First counting set, shift n_a + n_θ.
    pub first_set: usize,
    /// Second set with the shift μ(h_θ) - n_a - n_θ - 1 as written.
    pub second_set_literal: usize,
    /// Second set with shift n'_θ = μ(h_θ) - 2n_a - n_θ - 1 (n_a dropped).
    pub second_set_without_na: usize,
    /// first + second as a plain sum (double counts when both shifts agree).
    pub literal_sum: usize,
    pub literal_reading_matches: bool,
    pub without_na_reading_matches: bool,
    /// Exhaustive count over monomials of degree ≤ bound.
    pub oracle: usize,
    pub oracle_bound: u32,
    pub saturated: bool,
    /// Generalized eigenspace of π(Cas_θ) on the x_θ-filtered weight space
    /// has the same dimension (None when μ is not a weight).
    pub eigenspace_crosscheck: Option<bool>,
}

/// a ∈ ℤ^Π with μ = μ_{λ,a}, if any.
pub fn solve_weight(rs: &RootSystemData, lambda: &WeightVec, mu: &WeightVec) -> Option<Vec<i64>> {
    let base = weight_of(rs, lambda, &vec![0; rs.num_positive()]);
    let coords = rs.weight_to_root_coords(&(&base - mu));
    coords.iter().map(as_int).collect()
}

/// Exhaustive oracle: monomials of degree ≤ bound with weight μ on which s
/// acts by c, checked by applying the s operator.
pub fn gamma_oracle(ctx: &RealizationContext, s: &WeylOp, mu: &WeightVec, c: &Rational, bound: u32) -> Vec<ExponentVec> {
    let rs = &ctx.l.rs;
    let lam = module_weight(ctx);
    let pat = gt_pattern(rs);
    monomials_up_to(rs.num_positive(), bound)
        .into_iter()
        .filter_map(|m| {
            let b: ExponentVec = m.iter().map(|&v| v as i64).collect();
            if &weight_of(rs, &lam, &b) != mu {
                return None;
            }
            let v = ModuleVector::basis(m);
            let sv = quotient_act(s, &v, &pat);
            (sv == v.scale(c)).then_some(b)
        })
        .collect()
}

/// The highest weight λ of the module a context was built for (ctx holds λ + ρ).
pub fn module_weight(ctx: &RealizationContext) -> WeightVec {
    &ctx.lambda - &crate::roots::weyl_vector(&ctx.l.rs)
}

/// Γ_θ-multiplicity of χ in W(λ). `ctx` must come from `for_module(λ)`.
pub fn gamma_multiplicity(ctx: &RealizationContext, chi: &GammaCharacter, bound: u32) -> Result<GammaMultiplicity> {
    let rs = &ctx.l.rs;
    let lambda = module_weight(ctx);
    let (s, nil) = casimir_split(ctx);
    let oracle_at = |d: u32| gamma_oracle(ctx, &s, &chi.mu, &chi.c, d).len();
    let empty = |oracle: usize, saturated: bool| GammaMultiplicity {
        dimension: 0,
        basis: vec![],
        a: None,
        n_a: 0,
        families: vec![],
        first_set: 0,
        second_set_literal: 0,
        second_set_without_na: 0,
        literal_sum: 0,
        literal_reading_matches: oracle == 0,
        without_na_reading_matches: oracle == 0,
        oracle,
        oracle_bound: bound,
        saturated,
        eigenspace_crosscheck: None,
    };
    let Some(a) = solve_weight(rs, &lambda, &chi.mu) else {
        let o = oracle_at(bound);
        return Ok(empty(o, o == oracle_at(bound + 1)));
    };
    let na = n_a(rs, &a)?;
    let mt = theta_value(rs, &chi.mu);
    // c_N = c  ⇔  (μ_θ - 2N - 1)² = 2c + 1
    let mut families = BTreeSet::new();
    if let Some(y) = rational_sqrt(&(&chi.c * int(2) + int(1))) {
        for y in [y.clone(), -y] {
            let n2 = &mt - int(1) - y;
            if let Some(n) = as_int(&(n2 * rat(1, 2))) {
                if n >= na {
                    families.insert(n);
                }
            }
        }
    }
    let families: Vec<i64> = families.into_iter().collect();
    let count = |total: i64| theta_family(rs, &a, total).len();
    let mut basis: Vec<ExponentVec> = families.iter().flat_map(|&n| theta_family(rs, &a, n)).collect();
    basis.sort();

    let (mut first, mut lit, mut alt) = (0, 0, 0);
    if let Some(&n_min) = families.first() {
        let n_theta = n_min - na;
        first = count(na + n_theta);
        if let Some(mt_int) = as_int(&mt) {
            let n_prime = mt_int - 2 * na - n_theta - 1;
            if n_prime >= 0 {
                lit = count(mt_int - na - n_theta - 1);
                alt = count(n_prime);
            }
        }
    }
    let dimension = basis.len();
    let max_deg = basis.iter().map(|b| degree(b)).max().unwrap_or(0);
    let oracle_bound = bound.max(max_deg as u32);
    let oracle = oracle_at(oracle_bound);
    let saturated = oracle == oracle_at(oracle_bound + 1) && oracle_bound as i64 >= max_deg;

    let eigenspace_crosscheck = if dimension > 0 || !families.is_empty() {
        Some(crosscheck(ctx, &s, &nil, &a, na, *families.last().unwrap_or(&na), &chi.c, dimension)?.0)
    } else {
        None
    };
    Ok(GammaMultiplicity {
        dimension,
        basis,
        a: Some(a),
        n_a: na,
        first_set: first,
        second_set_literal: lit,
        second_set_without_na: alt,
        literal_sum: first + lit,
        literal_reading_matches: first + lit == oracle,
        without_na_reading_matches: first + alt == oracle,
        families,
        oracle,
        oracle_bound,
        saturated,
        eigenspace_crosscheck,
    })
}

/// The weight space filtered by the x_θ-exponent: grade N holds the vectors
/// a + N t_θ + t. Returns the basis (grade order) and graded dimensions.
pub fn theta_filtered_basis(rs: &RootSystemData, a: &[i64], na: i64, top: i64) -> (Vec<ExponentVec>, Vec<usize>) {
    let mut basis = Vec::new();
    let mut grades = Vec::new();
    for n in na..=top {
        let fam = theta_family(rs, a, n);
        grades.push(fam.len());
        basis.extend(fam);
    }
    (basis, grades)
}

fn matrix_on(op: &WeylOp, basis: &[ExponentVec], pat: &PolarityPattern) -> Option<RatMatrix> {
    let index: BTreeMap<Vec<u32>, usize> =
        basis.iter().enumerate().map(|(i, b)| (b.iter().map(|&v| v as u32).collect(), i)).collect();
    let mut m = RatMatrix::zeros(basis.len(), basis.len());
    for (j, b) in basis.iter().enumerate() {
        let img = quotient_act(op, &to_module(b), pat);
        for (e, c) in img.terms() {
            let i = *index.get(e)?;
            m[(i, j)] = c.clone();
        }
    }
    Some(m)
}

/// Appendix-A style check on the x_θ-filtered piece of a weight space:
/// T = π(Cas_θ) preserves it, (s, n) satisfy the grading conditions, φ
/// exists, and the generalized eigenspace of T at c has dimension `expect`.
pub fn crosscheck(
    ctx: &RealizationContext,
    s: &WeylOp,
    nil: &WeylOp,
    a: &[i64],
    na: i64,
    top: i64,
    c: &Rational,
    expect: usize,
) -> Result<(bool, Option<PhiReport>)> {
    let rs = &ctx.l.rs;
    let pat = gt_pattern(rs);
    let (basis, grades) = theta_filtered_basis(rs, a, na, top);
    if basis.is_empty() {
        return Ok((expect == 0, None));
    }
    let t = casimir_theta(ctx);
    let (Some(tm), Some(sm), Some(nm)) = (matrix_on(&t, &basis, &pat), matrix_on(s, &basis, &pat), matrix_on(nil, &basis, &pat))
    else {
        return Ok((false, None));
    };
    let tf = FilteredOperator::new(grades.clone(), tm)?;
    let dim = generalized_eigenspaces(&tf)?.into_iter().find(|e| &e.eigenvalue == c).map_or(0, |e| e.basis.len());
    let ts = FilteredOperator::new(grades.clone(), sm)?;
    let tn = FilteredOperator::new(grades, nm)?;
    let rep = check_phi(&ts, &tn)?;
    Ok((dim == expect && rep.ok(), Some(rep)))
}

/// Row-echelon span of module vectors keyed by leading monomial.
#[derive(Clone, Debug, Default)]
pub struct EchelonSpan {
    pivots: BTreeMap<Vec<u32>, ModuleVector>,
}

impl EchelonSpan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn reduce(&self, v: &ModuleVector) -> ModuleVector {
        let mut v = v.clone();
        let mut done = ModuleVector::zero(v.nvars());
        while let Some((lead, c)) = v.terms().last().map(|(e, c)| (e.clone(), c.clone())) {
            match self.pivots.get(&lead) {
                Some(p) => v.add_scaled(p, &-c),
                None => {
                    done.add_term(lead.clone(), c.clone());
                    v.add_term(lead, -c);
                }
            }
        }
        done
    }

    /// Adds v; returns the reduced new basis vector when v was independent.
    pub fn insert(&mut self, v: &ModuleVector) -> Option<ModuleVector> {
        let r = self.reduce(v);
        let (lead, c) = r.terms().last().map(|(e, c)| (e.clone(), c.clone()))?;
        let r = r.scale(&c.recip());
        self.pivots.insert(lead, r.clone());
        Some(r)
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        self.reduce(v).is_zero()
    }
}

/// Span of the submodule generated by `start` under `ops`, keeping only
/// vectors of degree ≤ work_bound.
pub fn submodule_closure(ops: &[WeylOp], pat: &PolarityPattern, start: &[ModuleVector], work_bound: u32) -> EchelonSpan {
    let mut span = EchelonSpan::new();
    let mut queue = VecDeque::new();
    for v in start {
        if let Some(r) = span.insert(v) {
            queue.push_back(r);
        }
    }
    while let Some(v) = queue.pop_front() {
        for op in ops {
            let w = quotient_act(op, &v, pat);
            if w.is_zero() || w.degree().unwrap_or(0) > work_bound {
                continue;
            }
            if let Some(r) = span.insert(&w) {
                queue.push_back(r);
            }
        }
    }
    span
}

/// Images of the whole Chevalley basis.
pub fn generator_images(ctx: &RealizationContext) -> Vec<WeylOp> {
    (0..ctx.l.dim).map(|i| ctx.pi(i).clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicityReport {
    pub formulas_checked: u32,
    pub formula_failures: Vec<String>,
    /// Exponent of x_θ in the generator.
    pub generator_theta_power: u32,
    pub bound: u32,
    pub reached: usize,
    pub total: usize,
    pub unreached: Vec<Vec<u32>>,
}

impl CyclicityReport {
    pub fn all_reached(&self) -> bool {
        self.reached == self.total
    }
}

fn theta_power(n: usize, th: usize, k: u32) -> ModuleVector {
    let mut e = vec![0u32; n];
    e[th] = k;
    ModuleVector::basis(e)
}

/// The three x_θ^n action formulas for n ≤ max_n; returns the failures.
/// `ctx` must come from `for_module(λ)`.
pub fn cyclic_formula_failures(ctx: &RealizationContext, max_n: u32) -> Vec<String> {
    let l = &ctx.l;
    let rs = &l.rs;
    let lt = rs.weight_on_coroot(&module_weight(ctx), rs.theta());
    let pat = gt_pattern(rs);
    let n = ctx.nvars();
    let xt = |k: u32| theta_power(n, rs.theta_index, k);
    let mut failures = Vec::new();
    let ht = ctx.pi_h_theta();
    for k in 0..=max_n {
        let v = xt(k);
        let f = quotient_act(ctx.pi(l.f_theta()), &v, &pat);
        let f_exp = if k == 0 { ModuleVector::zero(n) } else { xt(k - 1).scale(&int(-(k as i64))) };
        if f != f_exp {
            failures.push(format!("f_theta on x_theta^{k}"));
        }
        let h = quotient_act(&ht, &v, &pat);
        if h != v.scale(&(&lt + int(2 + 2 * k as i64))) {
            failures.push(format!("h_theta on x_theta^{k}"));
        }
        let e = quotient_act(ctx.pi(l.e_theta()), &v, &pat);
        if e != xt(k + 1).scale(&(&lt + int(k as i64 + 2))) {
            failures.push(format!("e_theta on x_theta^{k}"));
        }
    }
    failures
}

/// Checks the x_θ^n formulas for n ≤ bound and runs the truncated closure
/// from the cyclic generator. `ctx` must come from `for_module(λ)`.
pub fn cyclicity_witness(ctx: &RealizationContext, bound: u32) -> CyclicityReport {
    let l = &ctx.l;
    let rs = &l.rs;
    let lt = rs.weight_on_coroot(&module_weight(ctx), rs.theta());
    let pat = gt_pattern(rs);
    let n = ctx.nvars();
    let xt = |k: u32| theta_power(n, rs.theta_index, k);
    let failures = cyclic_formula_failures(ctx, bound);
    // λ(h_θ) + 2 ∈ -ℕ₀ makes 1 fail to generate
    let gen_power = match as_int(&lt) {
        Some(v) if v + 2 <= 0 => (-v - 1) as u32,
        _ => 0,
    };
    let ops = generator_images(ctx);
    let span = submodule_closure(&ops, &pat, &[xt(gen_power)], bound.max(gen_power) + 2);
    let mons = monomials_up_to(n, bound);
    let unreached: Vec<Vec<u32>> = mons.iter().filter(|m| !span.contains(&ModuleVector::basis((*m).clone()))).cloned().collect();
    CyclicityReport {
        formulas_checked: 3 * (bound + 1),
        formula_failures: failures,
        generator_theta_power: gen_power,
        bound,
        reached: mons.len() - unreached.len(),
        total: mons.len(),
        unreached,
    }
}

/// ad-form of the Cas_θ property: on g the operator
/// ad e_θ ad f_θ + ad f_θ ad e_θ + ½ (ad h_θ)² is scalar on each g_α.
pub fn casimir_theta_adjoint(l: &crate::chevalley::LieAlgebraData, idx: usize) -> Option<Rational> {
    let e = l.ad_basis(l.e_theta());
    let f = l.ad_basis(l.f_theta());
    let h = l.ad_dense(&{
        let mut v = vec![Rational::zero(); l.dim];
        for (k, c) in l.h_theta() {
            v[k] = c;
        }
        v
    });
    let m = &(&(&e * &f) + &(&f * &e)) + &(&h * &h).scale(&rat(1, 2));
    let img = m.mul_vec(&l.unit(idx));
    let c = img[idx].clone();
    let expect: Vec<Rational> = l.unit(idx).iter().map(|u| u * &c).collect();
    (img == expect).then_some(c)
}

/// Convenience: Γ_θ-character of a basis vector.
pub fn character_of(rs: &RootSystemData, lambda: &WeightVec, b: &[i64]) -> GammaCharacter {
    GammaCharacter { mu: weight_of(rs, lambda, b), c: s_eigenvalue_of(rs, lambda, b) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_lie_algebra;
    use crate::roots::build_root_system;
    use std::sync::Arc;

    fn rs(k: char, r: usize) -> RootSystemData {
        build_root_system(k, r).unwrap()
    }

    fn module_ctx(k: char, r: usize, lam: Vec<Rational>) -> RealizationContext {
        let l = Arc::new(build_lie_algebra(&rs(k, r)));
        RealizationContext::for_module(l, &WeightVec(lam)).unwrap()
    }

    #[test]
    fn weight_examples() {
        let r = rs('A', 2);
        let lam = WeightVec(vec![rat(1, 2), rat(1, 3)]);
        let th = r.root_weight(r.theta());
        assert_eq!(weight_of(&r, &lam, &[0, 0, 0]), &lam + &th);
        let a1 = r.simple_index(0);
        let mut b = vec![0; 3];
        b[a1] = 1;
        assert_eq!(weight_of(&r, &lam, &b), &(&lam + &th) - &r.root_weight(r.root(a1)));
        let mut b = vec![0; 3];
        b[r.theta_index] = 1;
        assert_eq!(weight_of(&r, &lam, &b), &(&lam + &th) + &th);
    }

    #[test]
    fn t_vectors() {
        let r = rs('A', 2);
        let t = t_vector(&r, r.theta_index).unwrap();
        assert_eq!(t, vec![1, 1, 1]);
        assert!(t_vector(&r, r.simple_index(0)).is_err());
        let r3 = rs('A', 3);
        let k = r3.index_of(&[1, 1, 0]).unwrap();
        let t = t_vector(&r3, k).unwrap();
        let mut expect = vec![0; 6];
        expect[r3.simple_index(0)] = -1;
        expect[r3.simple_index(1)] = -1;
        expect[k] = 1;
        assert_eq!(t, expect);
        let lam = WeightVec(vec![rat(1, 3), int(2), rat(-1, 2)]);
        let a = vec![2, 0, 1, 0, 3, 1];
        for k in non_simple(&r3) {
            let mut b = a.clone();
            add_scaled(&mut b, &t_vector(&r3, k).unwrap(), 1);
            assert_eq!(weight_of(&r3, &lam, &a), weight_of(&r3, &lam, &b));
        }
    }

    #[test]
    fn n_a_examples() {
        let r = rs('A', 2);
        assert_eq!(n_a(&r, &[-1, 0]).unwrap(), 1);
        assert_eq!(n_a(&r, &[0, 0]).unwrap(), 0);
        let b2 = rs('B', 2);
        // θ = α1 + 2α2 in the B2 labelling used here, or the reverse
        let m = b2.theta().to_vec();
        let a: Vec<i64> = m.iter().map(|&x| -3 * x).collect();
        assert_eq!(n_a(&b2, &a).unwrap(), 3);
    }

    #[test]
    fn weight_space_matches_bruteforce() {
        for (k, n) in [('A', 2), ('B', 2), ('A', 3), ('G', 2)] {
            let r = rs(k, n);
            let a0 = vec![0; n];
            let mut a1 = vec![0; n];
            a1[0] = -1;
            let mut a2 = vec![0; n];
            a2[n - 1] = 2;
            for a in [a0, a1, a2] {
                assert_eq!(weight_space_basis(&r, &a, 6).unwrap(), weight_space_bruteforce(&r, &a, 6), "{k}{n} {a:?}");
            }
        }
        let r = rs('A', 2);
        let b = weight_space_basis(&r, &[0, 0], 3).unwrap();
        assert_eq!(b, vec![vec![0, 0, 0], vec![1, 1, 1]]);
    }

    #[test]
    fn lattice_membership_matches_weights() {
        let r = rs('A', 3);
        let z = WeightVec::zero(3);
        let a = vec![1, -2, 0, 3, 1, -1];
        for k in non_simple(&r) {
            let mut b = a.clone();
            add_scaled(&mut b, &t_vector(&r, k).unwrap(), -2);
            assert!(in_t_lattice(&r, &sub(&b, &a)));
            assert_eq!(weight_of(&r, &z, &a), weight_of(&r, &z, &b));
        }
        let mut b = a.clone();
        b[0] += 1;
        assert!(!in_t_lattice(&r, &sub(&b, &a)));
        assert_ne!(weight_of(&r, &z, &a), weight_of(&r, &z, &b));
    }

    fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    #[test]
    fn casimir_split_sums_to_casimir() {
        for (k, n) in [('A', 2), ('B', 2), ('G', 2), ('A', 3)] {
            let ctx = module_ctx(k, n, (0..n).map(|i| rat(i as i64 + 1, 3)).collect());
            let (s, nil) = casimir_split(&ctx);
            assert_eq!(s.add(&nil), casimir_theta(&ctx), "{k}{n}");
            let th = ctx.l.rs.theta_index;
            let alt = weyl_mul(&WeylOp::d(ctx.nvars(), th), ctx.sigma(ctx.l.e_theta())).scale(&int(-2));
            assert_eq!(nil, alt);
        }
    }

    #[test]
    fn s_eigenvalue_examples() {
        // λ(h_θ) = 1
        let ctx = module_ctx('A', 2, vec![rat(1, 2), rat(1, 2)]);
        let r = &ctx.l.rs;
        let lam = module_weight(&ctx);
        let (s, _) = casimir_split(&ctx);
        let pat = gt_pattern(r);
        let v = ModuleVector::vacuum(3);
        assert_eq!(quotient_act(&s, &v, &pat), v.scale(&rat(3, 2)));
        assert_eq!(casimir_eigenvalue(r, &lam, &[0, 0], 0).unwrap(), rat(3, 2));
        assert_eq!(casimir_eigenvalue(r, &lam, &[0, 0], 1).unwrap(), rat(-1, 2));
        let w = to_module(&t_vector(r, r.theta_index).unwrap());
        assert_eq!(quotient_act(&s, &w, &pat), w.scale(&rat(-1, 2)));
    }

    #[test]
    fn s_diagonal_and_nil_lowers_theta_degree() {
        let ctx = module_ctx('A', 3, vec![rat(1, 2), rat(-2, 3), rat(5, 4)]);
        let r = &ctx.l.rs;
        let lam = module_weight(&ctx);
        let (s, nil) = casimir_split(&ctx);
        let pat = gt_pattern(r);
        let th = r.theta_index;
        for m in monomials_up_to(6, 3) {
            let b: Vec<i64> = m.iter().map(|&v| v as i64).collect();
            let v = ModuleVector::basis(m.clone());
            assert_eq!(quotient_act(&s, &v, &pat), v.scale(&s_eigenvalue_of(r, &lam, &b)));
            let nv = quotient_act(&nil, &v, &pat);
            assert!(nv.terms().all(|(e, _)| e[th] + 1 == m[th]));
        }
    }

    #[test]
    fn gamma_multiplicity_generic() {
        let ctx = module_ctx('A', 2, vec![rat(1, 2), rat(1, 3)]);
        let r = ctx.l.rs.clone();
        let lam = module_weight(&ctx);
        let chi = character_of(&r, &lam, &[0, 0, 0]);
        let g = gamma_multiplicity(&ctx, &chi, 8).unwrap();
        assert_eq!(g.dimension, 1);
        assert_eq!(g.oracle, 1);
        assert!(g.saturated);
        assert_eq!(g.eigenspace_crosscheck, Some(true));
        let bad = GammaCharacter { mu: chi.mu.clone(), c: rat(7, 11) };
        assert_eq!(gamma_multiplicity(&ctx, &bad, 6).unwrap().dimension, 0);
    }

    #[test]
    fn gamma_multiplicity_coincidence() {
        // integral λ(h_θ): two x_θ-families share one Cas_θ value
        let ctx = module_ctx('A', 2, vec![int(2), int(1)]);
        let r = ctx.l.rs.clone();
        let lam = module_weight(&ctx);
        let a = [-1, 0];
        let b = {
            let mut b = extend_simple(&r, &a);
            add_scaled(&mut b, &t_vector(&r, r.theta_index).unwrap(), 1);
            b
        };
        let chi = character_of(&r, &lam, &b);
        let g = gamma_multiplicity(&ctx, &chi, 10).unwrap();
        assert_eq!(g.families.len(), 2, "{g:?}");
        assert!(g.saturated);
        assert_eq!(g.dimension, g.oracle);
        assert!(g.literal_reading_matches);
        assert_eq!(g.eigenspace_crosscheck, Some(true));
    }

    #[test]
    fn rank_one_weight_space() {
        let rs = build_root_system('A', 1).unwrap();
        for a in -3..=5 {
            assert_eq!(weight_space_basis(&rs, &[a], 4).unwrap(), weight_space_bruteforce(&rs, &[a], 4), "a = {a}");
        }
    }

    #[test]
    fn gamma_multiplicity_shift_keeps_na() {
        // a = (-2, 0), n_a = 2, λ(h_θ) = 2: families N = 2 and N' = 3
        let ctx = module_ctx('A', 2, vec![int(1), int(1)]);
        let r = ctx.l.rs.clone();
        let lam = module_weight(&ctx);
        let chi = character_of(&r, &lam, &[0, 2, 2]);
        assert_eq!(chi.c, int(0));
        let g = gamma_multiplicity(&ctx, &chi, 8).unwrap();
        assert_eq!(g.n_a, 2);
        assert_eq!(g.families, vec![2, 3]);
        assert_eq!((g.dimension, g.oracle), (2, 2));
        assert!(g.literal_reading_matches);
        assert!(!g.without_na_reading_matches, "{g:?}");
    }

    #[test]
    fn gamma_multiplicity_self_paired_family() {
        // μ(h_θ) = 3, c = -1/2: the pairing n'_θ = μ(h_θ) - 2n_a - n_θ - 1 gives n'_θ = n_θ
        let ctx = module_ctx('A', 2, vec![rat(1, 2), rat(1, 2)]);
        let r = ctx.l.rs.clone();
        let lam = module_weight(&ctx);
        let chi = GammaCharacter { mu: weight_of(&r, &lam, &[0, 0, 0]), c: rat(-1, 2) };
        let g = gamma_multiplicity(&ctx, &chi, 6).unwrap();
        assert_eq!(g.families, vec![1]);
        assert_eq!((g.dimension, g.oracle), (1, 1));
        assert_eq!(g.literal_sum, 2);
        assert!(!g.literal_reading_matches);
    }

    #[test]
    fn cyclic_generic() {
        let ctx = module_ctx('A', 2, vec![rat(1, 2), rat(1, 3)]);
        let rep = cyclicity_witness(&ctx, 4);
        assert!(rep.formula_failures.is_empty(), "{rep:?}");
        assert_eq!(rep.generator_theta_power, 0);
        assert!(rep.all_reached(), "{rep:?}");
    }

    #[test]
    fn cyclic_degenerate_generator() {
        // λ(h_θ) = -3: generator x_θ^2
        let ctx = module_ctx('A', 2, vec![int(-1), int(-2)]);
        let rep = cyclicity_witness(&ctx, 3);
        assert!(rep.formula_failures.is_empty());
        assert_eq!(rep.generator_theta_power, 2);
    }

    #[test]
    fn equivariance() {
        let ctx = module_ctx('B', 2, vec![rat(1, 3), rat(-3, 2)]);
        let l = &ctx.l;
        let r = &l.rs;
        let lam = module_weight(&ctx);
        let pat = gt_pattern(r);
        for g in 0..l.dim {
            let shift = r.root_weight(&l.root_vector(g));
            for m in monomials_up_to(4, 3) {
                let b: Vec<i64> = m.iter().map(|&v| v as i64).collect();
                let mu = weight_of(r, &lam, &b);
                let out = quotient_act(ctx.pi(g), &ModuleVector::basis(m), &pat);
                for (e, _) in out.terms() {
                    let eb: Vec<i64> = e.iter().map(|&v| v as i64).collect();
                    assert_eq!(weight_of(r, &lam, &eb), &mu + &shift);
                }
            }
        }
    }

    #[test]
    fn cas_theta_adjoint_scalar() {
        let l = build_lie_algebra(&rs('A', 2));
        let k = l.rs.simple_index(0);
        assert_eq!(casimir_theta_adjoint(&l, l.e(k)), Some(rat(3, 2)));
        assert_eq!(casimir_theta_adjoint(&l, l.e_theta()), Some(int(4)));
    }
}
