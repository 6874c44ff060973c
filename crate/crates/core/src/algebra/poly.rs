//! Sparse multivariate polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Rational;

/// Exponent vector, one slot per variable.
pub type Exponents = Vec<u32>;

/// A polynomial in a fixed number of commuting variables. Zero coefficients
/// are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exps: Exponents, c: Rational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Smallest total degree among the terms; `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    /// Adds `c * x^exps` in place.
    pub fn add_term(&mut self, exps: Exponents, c: Rational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
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

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &MultiPoly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (e, v) in &other.terms {
            self.add_term(e.clone(), v * c);
        }
    }

    /// `self += c * x^exps * other` without building the product.
    pub fn add_mul_term(&mut self, other: &MultiPoly, exps: &[u32], c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (e, v) in &other.terms {
            let shifted: Exponents = e.iter().zip(exps).map(|(a, b)| a + b).collect();
            self.add_term(shifted, v * c);
        }
    }

    /// `x_i * self`.
    pub fn mul_var(&self, i: usize) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| {
                    let mut e = e.clone();
                    e[i] += 1;
                    (e, v.clone())
                })
                .collect(),
        }
    }

    /// Whether `x_i` occurs in any term.
    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    fn check_compat(&self, other: &MultiPoly) {
        assert_eq!(self.nvars, other.nvars, "polynomials over different variable sets");
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_compat(rhs);
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        self.check_compat(rhs);
        self.add_scaled(rhs, &Rational::one());
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_compat(rhs);
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_compat(rhs);
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

/// Which arithmetic operation [`poly_arith`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    /// Multiplies `p` by the constant term of `q`.
    Scale,
}

pub fn poly_arith(p: &MultiPoly, q: &MultiPoly, op: PolyOp) -> MultiPoly {
    match op {
        PolyOp::Add => p + q,
        PolyOp::Mul => p * q,
        PolyOp::Scale => p.scale(&q.constant_term()),
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn square_of_variable() {
        let x = MultiPoly::var(2, 0);
        let sq = poly_arith(&x, &x, PolyOp::Mul);
        assert_eq!(sq, MultiPoly::monomial(vec![2, 0], int(1)));
    }

    #[test]
    fn additive_identity() {
        let p = &MultiPoly::var(2, 0) + &MultiPoly::constant(2, rat(3, 2));
        assert_eq!(poly_arith(&p, &MultiPoly::zero(2), PolyOp::Add), p);
    }

    #[test]
    fn difference_of_squares() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let lhs = poly_arith(&(&x + &y), &(&x - &y), PolyOp::Mul);
        let mut rhs = MultiPoly::zero(2);
        rhs.add_term(vec![2, 0], int(1));
        rhs.add_term(vec![0, 2], int(-1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn scale_by_constant_poly() {
        let x = MultiPoly::var(1, 0);
        let s = poly_arith(&x, &MultiPoly::constant(1, int(-3)), PolyOp::Scale);
        assert_eq!(s, MultiPoly::monomial(vec![1], int(-3)));
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = MultiPoly::var(3, 1);
        assert!((&x - &x).is_zero());
        assert_eq!((&x - &x).len(), 0);
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -5i64..5, 1i64..4), 0..5).prop_map(
            |ts| {
                let mut p = MultiPoly::zero(3);
                for ((a, b, c), n, d) in ts {
                    p.add_term(vec![a, b, c], rat(n, d));
                }
                p
            },
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert!(p.terms().all(|(_, c)| !c.is_zero()));
        }
    }
}
