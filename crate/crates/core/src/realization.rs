//! Differential-operator realizations π_λ, σ_λ and the twisted maps π^w.
//!
//! π_λ(a) = -Σ_α [A(ad u)(e^{-ad u} a)_n̄]_α ∂_α + (λ+ρ)((e^{-ad u} a)_h)
//! with u = Σ x_α f_α and A(t) = t e^t/(e^t - 1). σ_λ is the same formula
//! with v = u - x_θ f_θ. All series terminate because ad u is nilpotent.

use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::algebra::{int, series_coeffs, MultiPoly, RatMatrix, Rational, SeriesId};
use crate::chevalley::{ad_apply, GValuedPoly, LieAlgebraData, UEAExpr};
use crate::error::{Error, Result};
use crate::roots::{weyl_vector, WeightVec};
use crate::weyl::{weyl_mul, WeylOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Realize {
    Pi,
    Sigma,
}

/// Everything needed to evaluate π_λ and σ_λ for a fixed λ. Operator images
/// of basis elements are computed on first use and then shared.
#[derive(Debug)]
pub struct RealizationContext {
    pub l: Arc<LieAlgebraData>,
    /// The subscript λ of π_λ; constants are taken from λ + ρ.
    pub lambda: WeightVec,
    shifted: WeightVec,
    u: GValuedPoly,
    v: GValuedPoly,
    series_a: Vec<Rational>,
    pi_cache: Vec<OnceLock<WeylOp>>,
    sigma_cache: Vec<OnceLock<WeylOp>>,
}

impl RealizationContext {
    pub fn new(l: Arc<LieAlgebraData>, lambda: WeightVec) -> Result<Self> {
        if lambda.len() != l.rank() {
            return Err(Error::Dimension(format!(
                "weight has {} entries, algebra has rank {}",
                lambda.len(),
                l.rank()
            )));
        }
        let shifted = &lambda + &weyl_vector(&l.rs);
        let order = 2 * l.rs.theta_height() as usize;
        let u = GValuedPoly::u(&l);
        let v = GValuedPoly::v(&l);
        let dim = l.dim;
        Ok(Self {
            series_a: series_coeffs(SeriesId::A, order),
            u,
            v,
            shifted,
            lambda,
            pi_cache: (0..dim).map(|_| OnceLock::new()).collect(),
            sigma_cache: (0..dim).map(|_| OnceLock::new()).collect(),
            l,
        })
    }

    /// Context for a module of highest weight λ, i.e. for π_{λ+ρ}.
    pub fn for_module(l: Arc<LieAlgebraData>, lambda: &WeightVec) -> Result<Self> {
        let shifted = lambda + &weyl_vector(&l.rs);
        Self::new(l, shifted)
    }

    pub fn nvars(&self) -> usize {
        self.l.num_positive()
    }

    /// λ + ρ, the weight whose values appear as constants.
    pub fn constant_weight(&self) -> &WeightVec {
        &self.shifted
    }

    fn generator(&self, which: Realize) -> &GValuedPoly {
        match which {
            Realize::Pi => &self.u,
            Realize::Sigma => &self.v,
        }
    }

    fn compute(&self, which: Realize, idx: usize) -> WeylOp {
        let l = &*self.l;
        let n = self.nvars();
        let x = self.generator(which);
        let order = self.series_a.len() - 1;

        // w = e^{-ad X} a
        let mut term: Vec<MultiPoly> = (0..l.dim)
            .map(|j| if j == idx { MultiPoly::one(n) } else { MultiPoly::zero(n) })
            .collect();
        let mut w = term.clone();
        for k in 1..=order {
            term = ad_apply(l, x, &term);
            if term.iter().all(MultiPoly::is_zero) {
                break;
            }
            let c = Rational::new((-1i64).pow(k as u32).into(), crate::algebra::factorial(k as u64));
            for (wi, ti) in w.iter_mut().zip(&term) {
                wi.add_scaled(ti, &c);
            }
        }

        let wn: Vec<MultiPoly> = (0..l.dim)
            .map(|j| if l.is_nbar(j) { w[j].clone() } else { MultiPoly::zero(n) })
            .collect();
        // Horner evaluation of A(ad X) on the n̄-part
        let mut acc: Vec<MultiPoly> = wn.iter().map(|p| p.scale(&self.series_a[order])).collect();
        for k in (0..order).rev() {
            acc = ad_apply(l, x, &acc);
            for (ai, wi) in acc.iter_mut().zip(&wn) {
                ai.add_scaled(wi, &self.series_a[k]);
            }
        }

        let mut op = WeylOp::zero(n);
        for k in 0..n {
            let coeff = &acc[l.f(k)];
            if coeff.is_zero() {
                continue;
            }
            op.add_scaled(&weyl_mul(&WeylOp::from_poly(coeff), &WeylOp::d(n, k)), &-Rational::one());
        }
        for i in 0..l.rank() {
            let p = &w[l.h(i)];
            if !p.is_zero() {
                op.add_scaled(&WeylOp::from_poly(p), &self.shifted[i]);
            }
        }
        op
    }

    /// Image of a basis element.
    pub fn image(&self, which: Realize, idx: usize) -> &WeylOp {
        let cache = match which {
            Realize::Pi => &self.pi_cache,
            Realize::Sigma => &self.sigma_cache,
        };
        cache[idx].get_or_init(|| self.compute(which, idx))
    }

    /// Image of a dense element of g.
    pub fn image_dense(&self, which: Realize, x: &[Rational]) -> WeylOp {
        let mut op = WeylOp::zero(self.nvars());
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                op.add_scaled(self.image(which, i), c);
            }
        }
        op
    }

    pub fn image_sparse(&self, which: Realize, x: &[(usize, Rational)]) -> WeylOp {
        let mut op = WeylOp::zero(self.nvars());
        for (i, c) in x {
            op.add_scaled(self.image(which, *i), c);
        }
        op
    }

    pub fn pi(&self, idx: usize) -> &WeylOp {
        self.image(Realize::Pi, idx)
    }

    pub fn sigma(&self, idx: usize) -> &WeylOp {
        self.image(Realize::Sigma, idx)
    }

    pub fn pi_h_theta(&self) -> WeylOp {
        self.image_sparse(Realize::Pi, &self.l.h_theta())
    }

    pub fn sigma_h_theta(&self) -> WeylOp {
        self.image_sparse(Realize::Sigma, &self.l.h_theta())
    }
}

pub fn pi_lambda(ctx: &RealizationContext, idx: usize) -> WeylOp {
    ctx.pi(idx).clone()
}

pub fn sigma_lambda(ctx: &RealizationContext, idx: usize) -> WeylOp {
    ctx.sigma(idx).clone()
}

/// Image of a formal enveloping-algebra expression.
pub fn apply_uea(ctx: &RealizationContext, expr: &UEAExpr, which: Realize) -> WeylOp {
    let n = ctx.nvars();
    let mut out = WeylOp::zero(n);
    for (c, word) in &expr.terms {
        let mut op = WeylOp::one(n);
        for &letter in word {
            op = weyl_mul(&op, ctx.image(which, letter));
        }
        out.add_scaled(&op, c);
    }
    out
}

fn exp_nilpotent(m: &RatMatrix) -> RatMatrix {
    let d = m.rows();
    let mut out = RatMatrix::identity(d);
    let mut term = RatMatrix::identity(d);
    for k in 1..=(2 * d) {
        term = (&term * m).scale(&Rational::new(1.into(), k.into()));
        if term.is_zero() {
            return out;
        }
        out = &out + &term;
    }
    panic!("matrix is not nilpotent")
}

/// Ad(ṅ_i) = exp(ad e_i) exp(-ad f_i) exp(ad e_i).
pub fn simple_reflection_ad(l: &LieAlgebraData, i: usize) -> RatMatrix {
    let k = l.rs.simple_index(i);
    let ee = exp_nilpotent(&l.ad_basis(l.e(k)));
    let ef = exp_nilpotent(&l.ad_basis(l.f(k)).scale(&int(-1)));
    &(&ee * &ef) * &ee
}

/// Ad(ẇ^{-1}) for w = s_{w[0]} s_{w[1]} ... with ẇ = ṅ_{w[0]} ṅ_{w[1]} ...
pub fn ad_w_inverse(l: &LieAlgebraData, word: &[usize]) -> RatMatrix {
    let mut m = RatMatrix::identity(l.dim);
    for &i in word {
        let inv = simple_reflection_ad(l, i).inverse().expect("automorphism");
        m = &inv * &m;
    }
    m
}

/// The twisted realization π^w_{λ} = π_{w^{-1}λ} ∘ Ad(ẇ^{-1}), in the
/// convention where λ is the subscript of π (so modules use λ + ρ).
#[derive(Debug)]
pub struct TwistedRealization {
    pub word: Vec<usize>,
    pub inner: RealizationContext,
    pub ad: RatMatrix,
}

impl TwistedRealization {
    pub fn image(&self, idx: usize) -> WeylOp {
        let col = self.ad.col(idx);
        self.inner.image_dense(Realize::Pi, &col)
    }

    pub fn images(&self) -> Vec<WeylOp> {
        (0..self.inner.l.dim).map(|i| self.image(i)).collect()
    }
}

/// Builds π^w for a word in simple reflections (rank 2 only).
pub fn pi_twisted(ctx: &RealizationContext, word: &[usize]) -> Result<TwistedRealization> {
    let l = &ctx.l;
    if l.rank() != 2 {
        return Err(Error::Precondition("twisted realizations are supported for rank 2 only".into()));
    }
    if word.len() > l.rs.num_positive() || word.iter().any(|&i| i >= l.rank()) {
        return Err(Error::Precondition(format!("word {word:?} out of supported range")));
    }
    // w^{-1} reverses the word
    let rev: Vec<usize> = word.iter().rev().copied().collect();
    let lam = l.rs.apply_word_weight(&rev, &ctx.lambda);
    let inner = RealizationContext::new(l.clone(), lam)?;
    Ok(TwistedRealization { word: word.to_vec(), ad: ad_w_inverse(l, word), inner })
}

/// Variable labels: x, y, z for A2, and `x[m]` otherwise.
pub fn variable_labels(l: &LieAlgebraData) -> Vec<String> {
    if l.rs.kind == 'A' && l.rank() == 2 {
        return vec!["x".into(), "y".into(), "z".into()];
    }
    (0..l.num_positive()).map(|k| format!("x{}", l.rs.root_label(k))).collect()
}
