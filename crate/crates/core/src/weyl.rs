//! The Weyl algebra in variables x_1..x_n and its action on quotients by
//! polarity ideals.
//!
//! A `WeylOp` is stored normal ordered: every monomial is `x^a ∂^b` with all
//! multiplications to the left of all derivations.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{binomial, falling, parse_rational, MultiPoly, Rational};
use crate::error::{Error, Result};

/// `(x exponents, ∂ exponents)`.
pub type WeylMono = (Vec<u32>, Vec<u32>);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylOp {
    nvars: usize,
    terms: BTreeMap<WeylMono, Rational>,
}

fn ratio(b: BigInt) -> Rational {
    Rational::from_integer(b)
}

impl WeylOp {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut w = Self::zero(nvars);
        w.add_term(vec![0; nvars], vec![0; nvars], c);
        w
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// Multiplication by x_i.
    pub fn x(nvars: usize, i: usize) -> Self {
        let mut a = vec![0; nvars];
        a[i] = 1;
        Self::monomial(a, vec![0; nvars], Rational::one())
    }

    /// The derivation ∂_i.
    pub fn d(nvars: usize, i: usize) -> Self {
        let mut b = vec![0; nvars];
        b[i] = 1;
        Self::monomial(vec![0; nvars], b, Rational::one())
    }

    pub fn monomial(x: Vec<u32>, d: Vec<u32>, c: Rational) -> Self {
        let mut w = Self::zero(x.len());
        w.add_term(x, d, c);
        w
    }

    /// Multiplication operator by a polynomial.
    pub fn from_poly(p: &MultiPoly) -> Self {
        let n = p.nvars();
        let mut w = Self::zero(n);
        for (e, c) in p.terms() {
            w.add_term(e.clone(), vec![0; n], c.clone());
        }
        w
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    pub fn terms(&self) -> impl Iterator<Item = (&WeylMono, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, x: &[u32], d: &[u32]) -> Rational {
        self.terms.get(&(x.to_vec(), d.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, x: Vec<u32>, d: Vec<u32>, c: Rational) {
        debug_assert!(x.len() == self.nvars && d.len() == self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry((x, d)) {
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

    pub fn add_scaled(&mut self, other: &WeylOp, c: &Rational) {
        assert_eq!(self.nvars, other.nvars, "operators over different variables");
        if c.is_zero() {
            return;
        }
        for ((x, d), v) in &other.terms {
            self.add_term(x.clone(), d.clone(), v * c);
        }
    }

    pub fn add(&self, other: &WeylOp) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &WeylOp) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        out.add_scaled(self, c);
        out
    }

    pub fn mul(&self, other: &WeylOp) -> Self {
        weyl_mul(self, other)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = weyl_mul(&out, self);
        }
        out
    }

    /// Largest total order in ∂.
    pub fn d_order(&self) -> u32 {
        self.terms.keys().map(|(_, d)| d.iter().sum()).max().unwrap_or(0)
    }

    /// Largest total degree in x.
    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(|(x, _)| x.iter().sum()).max().unwrap_or(0)
    }

    /// Whether the operator involves x_i or ∂_i.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|(x, d)| x[i] > 0 || d[i] > 0)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars], &vec![0; self.nvars])
    }

    /// Serializes as a list of `{"c", "x", "d"}` records using the given
    /// variable labels.
    pub fn to_json_terms(&self, labels: &[String]) -> Vec<WeylTermJson> {
        self.terms
            .iter()
            .map(|((x, d), c)| {
                let to_map = |e: &[u32]| -> BTreeMap<String, u32> {
                    e.iter()
                        .enumerate()
                        .filter(|(_, &k)| k > 0)
                        .map(|(i, &k)| (labels[i].clone(), k))
                        .collect()
                };
                WeylTermJson { c: c.to_string(), x: to_map(x), d: to_map(d) }
            })
            .collect()
    }

    pub fn from_json_terms(terms: &[WeylTermJson], labels: &[String]) -> Result<Self> {
        let n = labels.len();
        let mut w = Self::zero(n);
        let lookup = |s: &str| {
            labels.iter().position(|l| l == s).ok_or_else(|| Error::UnknownLabel(s.to_string()))
        };
        for t in terms {
            let mut x = vec![0; n];
            let mut d = vec![0; n];
            for (k, v) in &t.x {
                x[lookup(k)?] = *v;
            }
            for (k, v) in &t.d {
                d[lookup(k)?] = *v;
            }
            w.add_term(x, d, parse_rational(&t.c)?);
        }
        Ok(w)
    }

    /// Human readable form such as `2x∂x - y∂y + 1`.
    pub fn display_with(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, ((x, d), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut body = String::new();
            for (i, &e) in x.iter().enumerate() {
                if e > 0 {
                    body.push_str(&labels[i]);
                    if e > 1 {
                        body.push_str(&format!("^{e}"));
                    }
                }
            }
            for (i, &e) in d.iter().enumerate() {
                if e > 0 {
                    body.push('∂');
                    body.push_str(&labels[i]);
                    if e > 1 {
                        body.push_str(&format!("^{e}"));
                    }
                }
            }
            if body.is_empty() || !abs.is_one() {
                out.push_str(&abs.to_string());
                if !body.is_empty() {
                    out.push('*');
                }
            }
            out.push_str(&body);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylTermJson {
    pub c: String,
    pub x: BTreeMap<String, u32>,
    pub d: BTreeMap<String, u32>,
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display_with(&labels))
    }
}

/// Normal-ordered product, using ∂^b x^c = Σ_k C(b,k) c^(k) x^(c-k) ∂^(b-k)
/// in each variable.
pub fn weyl_mul(a: &WeylOp, b: &WeylOp) -> WeylOp {
    assert_eq!(a.nvars, b.nvars, "operators over different variables");
    let n = a.nvars;
    let mut out = WeylOp::zero(n);
    for ((xa, da), ca) in &a.terms {
        for ((xb, db), cb) in &b.terms {
            let c0 = ca * cb;
            // partial expansions: (coef, x exps, d exps)
            let mut partial: Vec<(Rational, Vec<u32>, Vec<u32>)> = vec![(c0, xa.clone(), vec![0; n])];
            for i in 0..n {
                let (bi, ci) = (da[i], xb[i]);
                if bi == 0 || ci == 0 {
                    for p in partial.iter_mut() {
                        p.1[i] += ci;
                        p.2[i] = bi + db[i];
                    }
                    continue;
                }
                let mut next = Vec::with_capacity(partial.len() * (bi.min(ci) as usize + 1));
                for (c, x, d) in &partial {
                    for k in 0..=bi.min(ci) {
                        let f = ratio(binomial(bi as u64, k as u64) * falling(ci as u64, k as u64));
                        let mut x2 = x.clone();
                        let mut d2 = d.clone();
                        x2[i] += ci - k;
                        d2[i] = bi - k + db[i];
                        next.push((c * f, x2, d2));
                    }
                }
                partial = next;
            }
            for (c, x, d) in partial {
                out.add_term(x, d, c);
            }
        }
    }
    out
}

pub fn weyl_commutator(a: &WeylOp, b: &WeylOp) -> WeylOp {
    weyl_mul(a, b).sub(&weyl_mul(b, a))
}

/// Which generator of each variable pair lies in the left ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarity {
    /// x_α ∈ I; the coset basis uses powers of ∂_α.
    X,
    /// ∂_α ∈ I; the coset basis uses powers of x_α.
    D,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolarityPattern(pub Vec<Polarity>);

impl PolarityPattern {
    /// All x_α in the ideal (Verma modules).
    pub fn verma(n: usize) -> Self {
        Self(vec![Polarity::X; n])
    }

    /// x_α for α ≠ θ and ∂_θ.
    pub fn gt(n: usize, theta: usize) -> Self {
        let mut p = vec![Polarity::X; n];
        p[theta] = Polarity::D;
        Self(p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A vector of A/I in the monomial basis of the surviving generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleVector {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl ModuleVector {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    /// The coset of 1.
    pub fn vacuum(nvars: usize) -> Self {
        Self::basis(vec![0; nvars])
    }

    pub fn basis(exps: Vec<u32>) -> Self {
        let mut v = Self::zero(exps.len());
        v.add_term(exps, Rational::one());
        v
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
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

    pub fn add_scaled(&mut self, other: &ModuleVector, c: &Rational) {
        for (e, v) in &other.terms {
            self.add_term(e.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &ModuleVector) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The sole basis monomial, if the vector is a multiple of one.
    pub fn as_monomial(&self) -> Option<(&Vec<u32>, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }
}

/// Class of `op · v` in A/I. Each variable acts independently: for a D
/// variable the coset of x^m is a polynomial, for an X variable ∂^m·1 and
/// x acts on it as -d/d∂.
pub fn quotient_act(op: &WeylOp, v: &ModuleVector, p: &PolarityPattern) -> ModuleVector {
    assert_eq!(op.nvars, v.nvars);
    assert_eq!(op.nvars, p.len());
    let n = op.nvars;
    let mut out = ModuleVector::zero(n);
    for ((a, b), c) in &op.terms {
        'mono: for (e, cv) in &v.terms {
            let mut coef = c * cv;
            let mut exps = Vec::with_capacity(n);
            for i in 0..n {
                let m = e[i];
                match p.0[i] {
                    Polarity::D => {
                        if b[i] > m {
                            continue 'mono;
                        }
                        coef *= ratio(falling(m as u64, b[i] as u64));
                        exps.push(m - b[i] + a[i]);
                    }
                    Polarity::X => {
                        let m = m + b[i];
                        if a[i] > m {
                            continue 'mono;
                        }
                        let f = ratio(falling(m as u64, a[i] as u64));
                        coef *= if a[i] % 2 == 1 { -f } else { f };
                        exps.push(m - a[i]);
                    }
                }
            }
            out.add_term(exps, coef);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn canonical_commutation() {
        let (x, d) = (WeylOp::x(2, 0), WeylOp::d(2, 0));
        let y = WeylOp::x(2, 1);
        assert_eq!(weyl_mul(&d, &x), weyl_mul(&x, &d).add(&WeylOp::one(2)));
        assert_eq!(weyl_mul(&d, &y), weyl_mul(&y, &d));
        assert_eq!(weyl_commutator(&d, &x), WeylOp::one(2));
        let xd = weyl_mul(&x, &d);
        assert_eq!(weyl_commutator(&xd, &xd), WeylOp::zero(2));
        let expect = WeylOp::monomial(vec![2, 0], vec![2, 0], int(1)).add(&xd);
        assert_eq!(weyl_mul(&xd, &xd), expect);
    }

    #[test]
    fn commutator_x2d_with_d() {
        // [x²∂, ∂] = -2x∂
        let x2d = WeylOp::monomial(vec![2], vec![1], int(1));
        let d = WeylOp::d(1, 0);
        assert_eq!(weyl_commutator(&x2d, &d), WeylOp::monomial(vec![1], vec![1], int(-2)));
    }

    #[test]
    fn quotient_examples() {
        // A/I_GT in A2: x, y are X-type, z is D-type
        let gt = PolarityPattern::gt(3, 2);
        let dz = WeylOp::d(3, 2);
        let v = ModuleVector::basis(vec![0, 0, 4]);
        assert_eq!(quotient_act(&dz, &v, &gt), ModuleVector::basis(vec![0, 0, 3]).scale(&int(4)));
        let ver = PolarityPattern::verma(3);
        assert!(quotient_act(&WeylOp::x(3, 0), &ModuleVector::vacuum(3), &ver).is_zero());
        // x∂x on ∂x^a: ∂x^(a+1) then x lowers with a factor -(a+1)
        let xdx = weyl_mul(&WeylOp::x(3, 0), &WeylOp::d(3, 0));
        for a in 0..5u32 {
            let v = ModuleVector::basis(vec![a, 0, 0]);
            let got = quotient_act(&xdx, &v, &gt);
            assert_eq!(got, v.scale(&int(-(a as i64) - 1)));
        }
        let v = ModuleVector::basis(vec![1, 2, 3]);
        assert_eq!(quotient_act(&WeylOp::one(3), &v, &gt), v);
    }

    #[test]
    fn json_roundtrip() {
        let labels: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let op = WeylOp::monomial(vec![1, 0, 0], vec![0, 0, 1], rat(-1, 2)).add(&WeylOp::d(3, 1));
        let js = op.to_json_terms(&labels);
        assert_eq!(WeylOp::from_json_terms(&js, &labels).unwrap(), op);
        let s = serde_json::to_string(&js).unwrap();
        assert!(s.contains("\"c\":\"-1/2\""));
        assert_eq!(op.display_with(&labels), "-1/2*x∂z + ∂y");
    }

    fn arb_op(n: usize) -> impl Strategy<Value = WeylOp> {
        prop::collection::vec(
            (prop::collection::vec(0u32..3, n), prop::collection::vec(0u32..3, n), -4i64..5, 1i64..3),
            0..4,
        )
        .prop_map(move |ts| {
            let mut w = WeylOp::zero(n);
            for (x, d, a, b) in ts {
                w.add_term(x, d, rat(a, b));
            }
            w
        })
    }

    fn arb_vec(n: usize) -> impl Strategy<Value = ModuleVector> {
        prop::collection::vec((prop::collection::vec(0u32..4, n), -3i64..4), 1..4).prop_map(move |ts| {
            let mut v = ModuleVector::zero(n);
            for (e, c) in ts {
                v.add_term(e, int(c));
            }
            v
        })
    }

    fn arb_pattern(n: usize) -> impl Strategy<Value = PolarityPattern> {
        prop::collection::vec(prop::bool::ANY, n)
            .prop_map(|bs| PolarityPattern(bs.into_iter().map(|b| if b { Polarity::X } else { Polarity::D }).collect()))
    }

    proptest! {
        #[test]
        fn associativity(a in arb_op(2), b in arb_op(2), c in arb_op(2)) {
            prop_assert_eq!(weyl_mul(&weyl_mul(&a, &b), &c), weyl_mul(&a, &weyl_mul(&b, &c)));
        }

        #[test]
        fn commutator_bilinear(a in arb_op(2), b in arb_op(2), c in arb_op(2)) {
            let lhs = weyl_commutator(&a.add(&b), &c);
            prop_assert_eq!(lhs, weyl_commutator(&a, &c).add(&weyl_commutator(&b, &c)));
            let k = rat(3, 7);
            prop_assert_eq!(weyl_commutator(&a.scale(&k), &c), weyl_commutator(&a, &c).scale(&k));
        }

        #[test]
        fn action_axiom(a in arb_op(3), b in arb_op(3), v in arb_vec(3), p in arb_pattern(3)) {
            let lhs = quotient_act(&weyl_mul(&a, &b), &v, &p);
            let rhs = quotient_act(&a, &quotient_act(&b, &v, &p), &p);
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(quotient_act(&WeylOp::one(3), &v, &p), v);
        }
    }
}
