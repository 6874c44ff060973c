//! Seeded random inputs and the invariant families shared by the acceptance
//! suite and `gtr verify-all`.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{int, rat, RatMatrix, Rational};
use crate::chevalley::LieAlgebraData;
use crate::eigenspace::{check_phi, FilteredOperator};
use crate::gt_module::{
    casimir_eigenvalue, casimir_split, casimir_theta, cyclic_formula_failures, gt_pattern, in_t_lattice, module_weight, s_eigenvalue_of,
    monomials_up_to, n_a, solve_weight, weight_of, weight_space_basis, weight_space_bruteforce,
};
use crate::realization::RealizationContext;
use crate::roots::{RootSystemData, WeightVec};
use crate::weyl::{quotient_act, weyl_commutator, weyl_mul, ModuleVector, WeylOp};

pub use rand::SeedableRng;
pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), checked: 0, violations: Vec::new() }
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, pass: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !pass {
            self.violations.push(what());
        }
    }

    fn merge(&mut self, other: CheckResult) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}

/// p/q with |p| ≤ 12 and 1 ≤ q ≤ 6.
pub fn random_rational(r: &mut Rng64) -> Rational {
    rat(r.gen_range(-12..=12), r.gen_range(1..=6))
}

pub fn random_lambda(r: &mut Rng64, rank: usize) -> WeightVec {
    WeightVec((0..rank).map(|_| random_rational(r)).collect())
}

/// S = L U with unit triangular factors, so S is invertible over ℤ.
fn random_unimodular(r: &mut Rng64, n: usize) -> RatMatrix {
    let mut lo = RatMatrix::identity(n);
    let mut up = RatMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            lo[(i, j)] = int(r.gen_range(-2..=2));
            up[(j, i)] = int(r.gen_range(-2..=2));
        }
    }
    &lo * &up
}

/// A random pair (T_s, T_n) of total size ≤ max_dim: T_s block diagonal
/// with rational spectrum (repeated eigenvalues are likely), T_n strictly
/// block upper triangular.
pub fn random_filtered_pair(r: &mut Rng64, max_dim: usize) -> (FilteredOperator, FilteredOperator) {
    let mut grades = Vec::new();
    let mut total = 0;
    let ngrades = r.gen_range(1..=4);
    for _ in 0..ngrades {
        if total >= max_dim {
            break;
        }
        let d = r.gen_range(1..=4.min(max_dim - total));
        grades.push(d);
        total += d;
    }
    let mut ts = RatMatrix::zeros(total, total);
    let mut start = 0;
    let pool: Vec<Rational> = (0..3).map(|_| random_rational(r)).collect();
    for &d in &grades {
        let mut tri = RatMatrix::zeros(d, d);
        for i in 0..d {
            tri[(i, i)] = pool[r.gen_range(0..pool.len())].clone();
            for j in i + 1..d {
                if r.gen_bool(0.4) {
                    tri[(i, j)] = int(r.gen_range(-2..=2));
                }
            }
        }
        let s = random_unimodular(r, d);
        let sinv = s.inverse().expect("unimodular");
        let block = &(&s * &tri) * &sinv;
        for i in 0..d {
            for j in 0..d {
                ts[(start + i, start + j)] = block[(i, j)].clone();
            }
        }
        start += d;
    }
    let mut tn = RatMatrix::zeros(total, total);
    let g: Vec<usize> = grades.iter().enumerate().flat_map(|(k, &d)| std::iter::repeat(k).take(d)).collect();
    for i in 0..total {
        for j in 0..total {
            if g[i] < g[j] && r.gen_bool(0.5) {
                tn[(i, j)] = random_rational(r);
            }
        }
    }
    (
        FilteredOperator::new(grades.clone(), ts).expect("sizes agree"),
        FilteredOperator::new(grades, tn).expect("sizes agree"),
    )
}

fn image_of_sparse(ctx: &RealizationContext, v: &[(usize, Rational)]) -> WeylOp {
    let mut out = WeylOp::zero(ctx.nvars());
    for (k, c) in v {
        out.add_scaled(ctx.pi(*k), c);
    }
    out
}

/// [π(a), π(b)] = π([a, b]) on all ordered basis pairs.
pub fn check_homomorphism(ctx: &RealizationContext) -> CheckResult {
    let l = &ctx.l;
    let mut res = CheckResult::new("homomorphism");
    for a in 0..l.dim {
        for b in 0..l.dim {
            let lhs = weyl_commutator(ctx.pi(a), ctx.pi(b));
            let rhs = image_of_sparse(ctx, l.bracket(a, b));
            res.record(lhs == rhs, || format!("[{}, {}] at λ = {}", l.label(a), l.label(b), ctx.lambda));
        }
    }
    res
}

/// π(f_θ) = -∂_θ, π(h_θ) = Σ α(h_θ) x_α∂_α + (λ+ρ)(h_θ),
/// π(e_θ) = x_θ(π(h_θ) - x_θ∂_θ) + σ(e_θ) and
/// π(e_α) = x_θ π([e_α, f_θ]) + σ(e_α) for α ≠ θ.
pub fn check_sl2_triple(ctx: &RealizationContext) -> CheckResult {
    let l = &ctx.l;
    let rs = &l.rs;
    let n = ctx.nvars();
    let th = rs.theta_index;
    let xt = WeylOp::x(n, th);
    let dt = WeylOp::d(n, th);
    let mut res = CheckResult::new("sl2_triple_and_nilradical");
    res.record(*ctx.pi(l.f_theta()) == dt.scale(&int(-1)), || "π(f_θ) ≠ -∂_θ".into());
    let mut h = WeylOp::constant(n, ctx.constant_weight().0.iter().zip(rs.coroot_coeffs(rs.theta())).map(|(a, b)| a * b).sum());
    for k in 0..n {
        let c = int(rs.pairing(rs.root(k), rs.theta()).expect("roots"));
        h = h.add(&weyl_mul(&WeylOp::x(n, k), &WeylOp::d(n, k)).scale(&c));
    }
    let pht = ctx.pi_h_theta();
    res.record(pht == h, || "π(h_θ) formula".into());
    let e = weyl_mul(&xt, &pht.sub(&weyl_mul(&xt, &dt))).add(ctx.sigma(l.e_theta()));
    res.record(*ctx.pi(l.e_theta()) == e, || "π(e_θ) formula".into());
    for k in (0..n).filter(|&k| k != th) {
        let br = image_of_sparse(ctx, l.bracket(l.e(k), l.f_theta()));
        let rhs = weyl_mul(&xt, &br).add(ctx.sigma(l.e(k)));
        res.record(*ctx.pi(l.e(k)) == rhs, || format!("nilradical identity for {}", l.label(l.e(k))));
    }
    res
}

fn to_i64(m: &[u32]) -> Vec<i64> {
    m.iter().map(|&v| v as i64).collect()
}

/// Filtration degrees of a GT monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Degrees {
    pub theta: u32,
    pub partial: u32,
    pub total: u32,
}

pub fn degrees(rs: &RootSystemData, m: &[u32]) -> Degrees {
    let theta = m[rs.theta_index];
    let total: u32 = m.iter().sum();
    Degrees { theta, partial: total - theta, total }
}

/// Outcome of the Casimir-split family; the lowering flags are reported for
/// three filtrations separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub result: CheckResult,
    pub monomials: usize,
    pub n_lowers_theta_degree: bool,
    pub n_lowers_partial_degree: bool,
    pub n_lowers_total_degree: bool,
    /// min over monomials of (input total degree - output total degree).
    pub min_total_drop: Option<u32>,
}

/// s + n = π(Cas_θ); s acts on every GT monomial of degree ≤ bound by
/// casimir_eigenvalue; n strictly lowers the x_θ-degree. `ctx` must come
/// from `for_module(λ)`.
pub fn check_casimir_split(ctx: &RealizationContext, bound: u32) -> SplitReport {
    let rs = &ctx.l.rs;
    let (s, nil) = casimir_split(ctx);
    let mut res = CheckResult::new("casimir_split");
    res.record(s.add(&nil) == casimir_theta(ctx), || "s + n ≠ π(Cas_θ)".into());
    let lam = module_weight(ctx);
    let pat = gt_pattern(rs);
    let mons = monomials_up_to(ctx.nvars(), bound);
    let (mut lt, mut lp, mut ltot) = (true, true, true);
    let mut min_drop: Option<u32> = None;
    for m in &mons {
        let v = ModuleVector::basis(m.clone());
        let b = to_i64(m);
        let c = if rs.is_simple(rs.theta_index) {
            // rank one: a and the x_θ-exponent share a slot, so go by b directly
            s_eigenvalue_of(rs, &lam, &b)
        } else {
            let a = solve_weight(rs, &lam, &weight_of(rs, &lam, &b)).expect("weights are in the lattice");
            let total_n = b[rs.theta_index];
            casimir_eigenvalue(rs, &lam, &a, total_n - n_a(rs, &a).expect("na")).expect("n_θ ≥ 0")
        };
        res.record(quotient_act(&s, &v, &pat) == v.scale(&c), || format!("s on {m:?}"));
        let din = degrees(rs, m);
        for (e, _) in quotient_act(&nil, &v, &pat).terms() {
            let dout = degrees(rs, e);
            lt &= dout.theta < din.theta;
            lp &= dout.partial < din.partial;
            ltot &= dout.total < din.total;
            let drop = din.total.saturating_sub(dout.total);
            min_drop = Some(min_drop.map_or(drop, |d| d.min(drop)));
        }
    }
    res.record(lt, || "n does not lower the x_θ-degree".into());
    SplitReport {
        result: res,
        monomials: mons.len(),
        n_lowers_theta_degree: lt,
        n_lowers_partial_degree: lp,
        n_lowers_total_degree: ltot,
        min_total_drop: min_drop,
    }
}

pub fn check_cyclic_formulas(ctx: &RealizationContext, max_n: u32) -> CheckResult {
    let mut res = CheckResult::new("cyclic_formulas");
    res.checked = 3 * (max_n as usize + 1);
    res.violations = cyclic_formula_failures(ctx, max_n);
    res
}

fn random_exponents(r: &mut Rng64, n: usize) -> Vec<i64> {
    (0..n).map(|_| r.gen_range(-3..=3)).collect()
}

/// μ_{λ,a} = μ_{λ,b} ⇔ b - a ∈ span_ℤ{t_α}, on random pairs with entries in
/// [-3, 3]. Half the pairs are built inside one lattice coset so both sides
/// of the equivalence are exercised.
pub fn check_weight_lemma(rs: &RootSystemData, r: &mut Rng64, pairs: usize) -> CheckResult {
    let n = rs.num_positive();
    let ts: Vec<Vec<i64>> = (0..n).filter(|&k| !rs.is_simple(k)).map(|k| crate::gt_module::t_vector(rs, k).unwrap()).collect();
    let mut res = CheckResult::new("weight_lemma");
    let mut done = 0;
    while done < pairs {
        let lam = random_lambda(r, rs.rank);
        let a = random_exponents(r, n);
        let b = if done % 2 == 0 {
            let mut b = a.clone();
            for t in &ts {
                let c = r.gen_range(-2..=2);
                for (x, y) in b.iter_mut().zip(t) {
                    *x += c * y;
                }
            }
            if b.iter().any(|v| v.abs() > 3) {
                continue;
            }
            b
        } else {
            random_exponents(r, n)
        };
        let d: Vec<i64> = b.iter().zip(&a).map(|(x, y)| x - y).collect();
        let same = weight_of(rs, &lam, &a) == weight_of(rs, &lam, &b);
        res.record(same == in_t_lattice(rs, &d), || format!("a = {a:?}, b = {b:?}"));
        done += 1;
    }
    res
}

/// weight_space_basis equals brute-force enumeration for random a.
pub fn check_weight_space_basis(rs: &RootSystemData, r: &mut Rng64, count: usize, bound: u32) -> CheckResult {
    let mut res = CheckResult::new("weight_space_basis");
    for _ in 0..count {
        let a: Vec<i64> = (0..rs.rank).map(|_| r.gen_range(-2..=2)).collect();
        let fast = weight_space_basis(rs, &a, bound).expect("θ has full support");
        let brute = weight_space_bruteforce(rs, &a, bound);
        res.record(fast == brute, || format!("a = {a:?}"));
    }
    res
}

/// Spectrum equality, eigenspace mapping, gr φ = id and the kernel-power
/// oracle on random filtered pairs.
pub fn check_filtered_pairs(r: &mut Rng64, count: usize, max_dim: usize) -> CheckResult {
    let mut res = CheckResult::new("eigenspace_isomorphism");
    for i in 0..count {
        let (ts, tn) = random_filtered_pair(r, max_dim);
        match check_phi(&ts, &tn) {
            Ok(rep) => res.record(rep.ok(), || format!("pair {i}: {rep:?}")),
            Err(e) => res.record(false, || format!("pair {i}: {e}")),
        }
    }
    res
}

/// h-equivariance: each output monomial of π(g) on a GT monomial has weight
/// shifted by the root of g.
pub fn check_equivariance(ctx: &RealizationContext, bound: u32) -> CheckResult {
    let l = &ctx.l;
    let rs = &l.rs;
    let lam = module_weight(ctx);
    let pat = gt_pattern(rs);
    let mut res = CheckResult::new("h_equivariance");
    for m in monomials_up_to(ctx.nvars(), bound) {
        let b = to_i64(&m);
        let w = weight_of(rs, &lam, &b);
        let v = ModuleVector::basis(m.clone());
        for g in 0..l.dim {
            let shift = rs.root_weight(&l.root_vector(g));
            let target = &w + &shift;
            let out = quotient_act(ctx.pi(g), &v, &pat);
            let ok = out.terms().all(|(e, _)| weight_of(rs, &lam, &to_i64(e)) == target);
            res.record(ok, || format!("{} on {m:?}", l.label(g)));
        }
    }
    res
}

/// One independent verification family. Each family derives its own RNG
/// from the run seed and its position, so families can run in any order or
/// concurrently without changing results.
pub struct Family {
    pub name: &'static str,
    run: Box<dyn Fn() -> CheckResult + Send + Sync>,
}

impl Family {
    fn new(name: &'static str, run: impl Fn() -> CheckResult + Send + Sync + 'static) -> Self {
        Self { name, run: Box::new(run) }
    }

    pub fn run(&self) -> CheckResult {
        let mut r = (self.run)();
        r.name = self.name.to_string();
        r
    }
}

fn family_seed(seed: u64, k: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k)
}

/// The families run by `verify-all`, in output order.
pub fn verification_families(l: &Arc<LieAlgebraData>, seed: u64) -> Vec<Family> {
    let rank = l.rs.rank;
    let npos = l.rs.num_positive();
    let lambdas: Arc<Vec<WeightVec>> = {
        let mut r = rng(family_seed(seed, 0));
        Arc::new((0..5).map(|_| random_lambda(&mut r, rank)).collect())
    };
    let split_bound = match npos {
        0..=3 => 6,
        4..=6 => 3,
        _ => 2,
    };
    let mut out = Vec::new();
    {
        let (l, lams) = (l.clone(), lambdas.clone());
        out.push(Family::new("homomorphism", move || {
            let mut res = CheckResult::new("");
            for lam in lams.iter() {
                res.merge(check_homomorphism(&RealizationContext::new(l.clone(), lam.clone()).expect("rank")));
            }
            res
        }));
    }
    {
        let (l, lams) = (l.clone(), lambdas.clone());
        out.push(Family::new("sl2_triple_and_nilradical", move || {
            let mut res = CheckResult::new("");
            for lam in lams.iter() {
                res.merge(check_sl2_triple(&RealizationContext::new(l.clone(), lam.clone()).expect("rank")));
            }
            res
        }));
    }
    {
        let (l, lams) = (l.clone(), lambdas.clone());
        out.push(Family::new("cyclic_formulas", move || {
            let mut res = CheckResult::new("");
            for lam in lams.iter() {
                res.merge(check_cyclic_formulas(&RealizationContext::for_module(l.clone(), lam).expect("rank"), 10));
            }
            res
        }));
    }
    {
        let (l, lams) = (l.clone(), lambdas.clone());
        out.push(Family::new("casimir_split", move || {
            check_casimir_split(&RealizationContext::for_module(l.clone(), &lams[0]).expect("rank"), split_bound).result
        }));
    }
    {
        let (l, lams) = (l.clone(), lambdas.clone());
        out.push(Family::new("h_equivariance", move || {
            check_equivariance(&RealizationContext::for_module(l.clone(), &lams[1]).expect("rank"), split_bound.min(3))
        }));
    }
    {
        let l = l.clone();
        out.push(Family::new("weight_lemma", move || check_weight_lemma(&l.rs, &mut rng(family_seed(seed, 5)), 200)));
    }
    {
        let l = l.clone();
        let bound = if npos > 4 { 4 } else { 6 };
        out.push(Family::new("weight_space_basis", move || {
            check_weight_space_basis(&l.rs, &mut rng(family_seed(seed, 6)), 5, bound)
        }));
    }
    out.push(Family::new("eigenspace_isomorphism", move || check_filtered_pairs(&mut rng(family_seed(seed, 7)), 20, 12)));
    out
}

/// Runs every family sequentially.
pub fn verify_all(l: &Arc<LieAlgebraData>, seed: u64) -> Vec<CheckResult> {
    verification_families(l, seed).iter().map(Family::run).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_lie_algebra;
    use crate::roots::build_root_system;

    fn alg(k: char, r: usize) -> Arc<LieAlgebraData> {
        Arc::new(build_lie_algebra(&build_root_system(k, r).unwrap()))
    }

    #[test]
    fn seeded_inputs_are_reproducible() {
        let a = random_lambda(&mut rng(3), 2);
        let b = random_lambda(&mut rng(3), 2);
        assert_eq!(a, b);
        let (s1, n1) = random_filtered_pair(&mut rng(9), 12);
        let (s2, n2) = random_filtered_pair(&mut rng(9), 12);
        assert_eq!((s1, n1), (s2, n2));
    }

    #[test]
    fn random_pairs_are_valid() {
        let mut r = rng(1);
        for _ in 0..10 {
            let (ts, tn) = random_filtered_pair(&mut r, 12);
            assert!(ts.dim() <= 12);
            assert!(ts.preserves_grades());
            assert!(tn.strictly_lowers());
        }
    }

    #[test]
    fn families_pass_on_a2() {
        let l = alg('A', 2);
        let ctx = RealizationContext::new(l.clone(), WeightVec(vec![rat(1, 2), rat(-2, 3)])).unwrap();
        assert!(check_homomorphism(&ctx).ok());
        assert!(check_sl2_triple(&ctx).ok());
        let m = RealizationContext::for_module(l, &WeightVec(vec![rat(1, 2), rat(1, 2)])).unwrap();
        let split = check_casimir_split(&m, 5);
        assert!(split.result.ok(), "{:?}", split.result.violations);
        assert!(split.n_lowers_theta_degree && split.n_lowers_partial_degree && split.n_lowers_total_degree);
    }

    #[test]
    fn verify_all_b2() {
        let res = verify_all(&alg('B', 2), 7);
        for r in &res {
            assert!(r.ok(), "{}: {:?}", r.name, r.violations);
        }
    }
}
