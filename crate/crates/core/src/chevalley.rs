//! Chevalley basis, structure constants and Casimir elements.
//!
//! Basis order: `f_α` by descending height (index `n-1-k` for the k-th
//! positive root), then `h_1..h_r` (index `n+i`), then `e_α` by ascending
//! height (index `n+r+k`). Signs of the structure constants come from the
//! extraspecial-pair algorithm over the fixed root order.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{int, rat, MultiPoly, RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::roots::RootSystemData;

/// Sparse element of g: `(basis index, coefficient)` pairs, sorted by index.
pub type SparseVec = Vec<(usize, Rational)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisKind {
    F(usize),
    H(usize),
    E(usize),
}

#[derive(Clone, Debug)]
pub struct LieAlgebraData {
    pub rs: RootSystemData,
    pub dim: usize,
    n: usize,
    /// `table[a][b]` = [b_a, b_b].
    table: Vec<Vec<SparseVec>>,
}

/// Structure constants N_{a,b} for roots of either sign.
struct NTable<'a> {
    rs: &'a RootSystemData,
    memo: HashMap<(Vec<i64>, Vec<i64>), Rational>,
}

fn vadd(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vneg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

fn positive(a: &[i64]) -> bool {
    a.iter().all(|&x| x >= 0)
}

impl NTable<'_> {
    fn n(&mut self, a: &[i64], b: &[i64]) -> Rational {
        let s = vadd(a, b);
        if s.iter().all(|&x| x == 0) || !self.rs.is_root(&s) {
            return Rational::zero();
        }
        let key = (a.to_vec(), b.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let (pa, pb) = (positive(a), positive(b));
        let val = if pa && pb {
            let ia = self.rs.index_of(a).unwrap();
            let ib = self.rs.index_of(b).unwrap();
            self.n_pos(ia, ib)
        } else if !pa && !pb {
            -self.n(&vneg(a), &vneg(b))
        } else {
            // a + b + c = 0 and N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)
            let c = vneg(&s);
            let cc = self.rs.length_sq(&c);
            if positive(&c) == pb {
                cc * self.n(b, &c) / self.rs.length_sq(a)
            } else {
                cc * self.n(&c, a) / self.rs.length_sq(b)
            }
        };
        self.memo.insert(key, val.clone());
        val
    }

    fn extraspecial(&self, xi: &[i64]) -> (Vec<i64>, Vec<i64>) {
        for i in 0..self.rs.rank {
            let mut d = xi.to_vec();
            d[i] -= 1;
            if self.rs.index_of(&d).is_some() {
                let mut g = vec![0; self.rs.rank];
                g[i] = 1;
                return (g, d);
            }
        }
        unreachable!("non-simple positive roots have an extraspecial pair")
    }

    fn string_below(&self, gamma: &[i64], delta: &[i64]) -> i64 {
        let mut p = 0;
        let mut m = delta.to_vec();
        loop {
            m = m.iter().zip(gamma).map(|(x, y)| x - y).collect();
            if self.rs.is_root(&m) {
                p += 1;
            } else {
                return p;
            }
        }
    }

    fn n_pos(&mut self, ia: usize, ib: usize) -> Rational {
        if ia > ib {
            return -self.n_pos(ib, ia);
        }
        let alpha = self.rs.root(ia).to_vec();
        let beta = self.rs.root(ib).to_vec();
        let xi = vadd(&alpha, &beta);
        let (gamma, delta) = self.extraspecial(&xi);
        let ngd = int(self.string_below(&gamma, &delta) + 1);
        if alpha == gamma {
            return ngd;
        }
        let ng = vneg(&gamma);
        let nd = vneg(&delta);
        let mut acc = Rational::zero();
        let bg: Vec<i64> = vadd(&beta, &ng);
        if self.rs.is_root(&bg) {
            acc += self.n(&beta, &ng) * self.n(&alpha, &nd) / self.rs.length_sq(&bg);
        }
        let ag: Vec<i64> = vadd(&alpha, &ng);
        if self.rs.is_root(&ag) {
            acc += self.n(&ng, &alpha) * self.n(&beta, &nd) / self.rs.length_sq(&ag);
        }
        self.rs.length_sq(&xi) * acc / ngd
    }
}

fn push_term(v: &mut SparseVec, idx: usize, c: Rational) {
    if c.is_zero() {
        return;
    }
    match v.binary_search_by_key(&idx, |(i, _)| *i) {
        Ok(p) => {
            v[p].1 += c;
            if v[p].1.is_zero() {
                v.remove(p);
            }
        }
        Err(p) => v.insert(p, (idx, c)),
    }
}

pub fn build_lie_algebra(rs: &RootSystemData) -> LieAlgebraData {
    let n = rs.num_positive();
    let r = rs.rank;
    let dim = 2 * n + r;
    let mut alg = LieAlgebraData { rs: rs.clone(), dim, n, table: vec![vec![Vec::new(); dim]; dim] };
    let mut nt = NTable { rs, memo: HashMap::new() };
    for a in 0..dim {
        for b in (a + 1)..dim {
            let v = alg.compute_bracket(&mut nt, a, b);
            let neg: SparseVec = v.iter().map(|(i, c)| (*i, -c)).collect();
            alg.table[a][b] = v;
            alg.table[b][a] = neg;
        }
    }
    alg
}

impl LieAlgebraData {
    fn compute_bracket(&self, nt: &mut NTable, a: usize, b: usize) -> SparseVec {
        let mut out = Vec::new();
        match (self.kind(a), self.kind(b)) {
            (BasisKind::H(_), BasisKind::H(_)) => {}
            (BasisKind::H(i), _) => {
                let m = self.root_vector(b);
                push_term(&mut out, b, int(self.rs.coroot_value(&m, i)));
            }
            (_, BasisKind::H(i)) => {
                let m = self.root_vector(a);
                push_term(&mut out, a, int(-self.rs.coroot_value(&m, i)));
            }
            _ => {
                let ma = self.root_vector(a);
                let mb = self.root_vector(b);
                let s = vadd(&ma, &mb);
                if s.iter().all(|&x| x == 0) {
                    // [e_α, f_α] = h_α
                    let sign = if positive(&ma) { int(1) } else { int(-1) };
                    let m = if positive(&ma) { ma } else { mb };
                    for (i, c) in self.rs.coroot_coeffs(&m).into_iter().enumerate() {
                        push_term(&mut out, self.n + i, c * &sign);
                    }
                } else {
                    let c = nt.n(&ma, &mb);
                    if !c.is_zero() {
                        push_term(&mut out, self.root_basis_index(&s), c);
                    }
                }
            }
        }
        out
    }

    pub fn num_positive(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    pub fn e(&self, k: usize) -> usize {
        self.n + self.rs.rank + k
    }

    pub fn f(&self, k: usize) -> usize {
        self.n - 1 - k
    }

    pub fn h(&self, i: usize) -> usize {
        self.n + i
    }

    pub fn e_theta(&self) -> usize {
        self.e(self.rs.theta_index)
    }

    pub fn f_theta(&self) -> usize {
        self.f(self.rs.theta_index)
    }

    pub fn kind(&self, idx: usize) -> BasisKind {
        let (n, r) = (self.n, self.rs.rank);
        if idx < n {
            BasisKind::F(n - 1 - idx)
        } else if idx < n + r {
            BasisKind::H(idx - n)
        } else {
            BasisKind::E(idx - n - r)
        }
    }

    /// The root of a basis element (zero for the Cartan part).
    pub fn root_vector(&self, idx: usize) -> Vec<i64> {
        match self.kind(idx) {
            BasisKind::E(k) => self.rs.root(k).to_vec(),
            BasisKind::F(k) => vneg(self.rs.root(k)),
            BasisKind::H(_) => vec![0; self.rs.rank],
        }
    }

    fn root_basis_index(&self, m: &[i64]) -> usize {
        if positive(m) {
            self.e(self.rs.index_of(m).expect("root"))
        } else {
            self.f(self.rs.index_of(&vneg(m)).expect("root"))
        }
    }

    pub fn is_nbar(&self, idx: usize) -> bool {
        idx < self.n
    }

    pub fn is_cartan(&self, idx: usize) -> bool {
        (self.n..self.n + self.rs.rank).contains(&idx)
    }

    /// "e[1,0]", "f[1,1]", "h1".
    pub fn label(&self, idx: usize) -> String {
        match self.kind(idx) {
            BasisKind::E(k) => format!("e{}", self.rs.root_label(k)),
            BasisKind::F(k) => format!("f{}", self.rs.root_label(k)),
            BasisKind::H(i) => format!("h{}", i + 1),
        }
    }

    /// Accepts the labels produced by [`Self::label`] plus the shorthands
    /// `e_theta`, `f_theta`, `h_theta` is not a basis element and is rejected.
    pub fn parse_label(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        match s {
            "e_theta" => return Ok(self.e_theta()),
            "f_theta" => return Ok(self.f_theta()),
            _ => {}
        }
        (0..self.dim)
            .find(|&i| self.label(i) == s.replace(' ', ""))
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }

    pub fn bracket(&self, a: usize, b: usize) -> &SparseVec {
        &self.table[a][b]
    }

    /// Bracket of two sparse elements.
    pub fn bracket_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (a, ca) in x {
            for (b, cb) in y {
                for (c, v) in &self.table[*a][*b] {
                    push_term(&mut out, *c, ca * cb * v);
                }
            }
        }
        out
    }

    /// Bracket of two dense elements.
    pub fn bracket_dense(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (a, ca) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, cb) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (c, v) in &self.table[a][b] {
                    out[*c] += ca * cb * v;
                }
            }
        }
        out
    }

    pub fn unit(&self, idx: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[idx] = Rational::one();
        v
    }

    /// h_β as a sparse element, for a positive root index.
    pub fn coroot_element(&self, k: usize) -> SparseVec {
        self.rs
            .coroot_coeffs(self.rs.root(k))
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.h(i), c))
            .collect()
    }

    pub fn h_theta(&self) -> SparseVec {
        self.coroot_element(self.rs.theta_index)
    }

    /// Matrix of ad(b_idx) over the rationals.
    pub fn ad_basis(&self, idx: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for (i, c) in &self.table[idx][j] {
                m[(*i, j)] = c.clone();
            }
        }
        m
    }

    /// Matrix of ad(x) for a dense element x.
    pub fn ad_dense(&self, x: &[Rational]) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.dim, self.dim);
        for (a, ca) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for j in 0..self.dim {
                for (i, c) in &self.table[a][j] {
                    m[(*i, j)] += ca * c;
                }
            }
        }
        m
    }

    /// Killing form tr(ad a ad b) on basis elements.
    pub fn killing(&self, a: usize, b: usize) -> Rational {
        let mut tr = Rational::zero();
        for p in 0..self.dim {
            for (q, c1) in &self.table[b][p] {
                for (s, c2) in &self.table[a][*q] {
                    if *s == p {
                        tr += c1 * c2;
                    }
                }
            }
        }
        tr
    }

    /// Gram matrix of the invariant form normalized so that (e_θ, f_θ) = 1,
    /// which is the same as (θ, θ) = 2.
    pub fn invariant_form(&self) -> RatMatrix {
        let scale = self.killing(self.e_theta(), self.f_theta()).recip();
        let mut g = RatMatrix::zeros(self.dim, self.dim);
        for a in 0..self.dim {
            for b in a..self.dim {
                // only e_α/f_α and h/h pairs can pair nontrivially
                let s = vadd(&self.root_vector(a), &self.root_vector(b));
                if s.iter().any(|&x| x != 0) {
                    continue;
                }
                let v = self.killing(a, b) * &scale;
                g[(a, b)] = v.clone();
                g[(b, a)] = v;
            }
        }
        g
    }

    /// JSON-ready bracket table keyed by labels, nonzero entries only.
    pub fn bracket_table(&self) -> BracketTable {
        let mut brackets = BTreeMap::new();
        for a in 0..self.dim {
            let mut row = BTreeMap::new();
            for b in 0..self.dim {
                if self.table[a][b].is_empty() {
                    continue;
                }
                let entry: BTreeMap<String, String> = self.table[a][b]
                    .iter()
                    .map(|(i, c)| (self.label(*i), c.to_string()))
                    .collect();
                row.insert(self.label(b), entry);
            }
            if !row.is_empty() {
                brackets.insert(self.label(a), row);
            }
        }
        BracketTable {
            algebra: self.rs.name(),
            dimension: self.dim,
            basis: (0..self.dim).map(|i| self.label(i)).collect(),
            brackets,
        }
    }

    /// Jacobi identity on all basis triples; returns the first failure.
    pub fn check_jacobi(&self) -> Option<(usize, usize, usize)> {
        for a in 0..self.dim {
            for b in (a + 1)..self.dim {
                let ab = &self.table[a][b];
                for c in (b + 1)..self.dim {
                    let t1 = self.bracket_sparse(ab, &vec![(c, Rational::one())]);
                    let t2 = self.bracket_sparse(&self.table[b][c], &vec![(a, Rational::one())]);
                    let t3 = self.bracket_sparse(&self.table[c][a], &vec![(b, Rational::one())]);
                    let mut sum = t1;
                    for (i, v) in t2.into_iter().chain(t3) {
                        push_term(&mut sum, i, v);
                    }
                    if !sum.is_empty() {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketTable {
    pub algebra: String,
    pub dimension: usize,
    pub basis: Vec<String>,
    pub brackets: BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>>,
}

/// An element of ℚ[n̄] ⊗ g: one polynomial per basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GValuedPoly {
    pub nvars: usize,
    pub components: BTreeMap<usize, MultiPoly>,
}

impl GValuedPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, components: BTreeMap::new() }
    }

    pub fn add_component(&mut self, idx: usize, p: MultiPoly) {
        if p.is_zero() {
            return;
        }
        let e = self.components.entry(idx).or_insert_with(|| MultiPoly::zero(self.nvars));
        *e += &p;
        if e.is_zero() {
            self.components.remove(&idx);
        }
    }

    /// u(x) = Σ x_α f_α over all positive roots.
    pub fn u(l: &LieAlgebraData) -> Self {
        Self::partial_u(l, |_| true)
    }

    /// v(x) = Σ x_α f_α over positive roots other than θ.
    pub fn v(l: &LieAlgebraData) -> Self {
        let th = l.rs.theta_index;
        Self::partial_u(l, |k| k != th)
    }

    /// x_k f_k for a single positive root.
    pub fn single(l: &LieAlgebraData, k: usize) -> Self {
        Self::partial_u(l, |j| j == k)
    }

    fn partial_u(l: &LieAlgebraData, keep: impl Fn(usize) -> bool) -> Self {
        let n = l.num_positive();
        let mut g = Self::zero(n);
        for k in (0..n).filter(|&k| keep(k)) {
            g.add_component(l.f(k), MultiPoly::var(n, k));
        }
        g
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }
}

/// Square matrix over polynomials.
pub type PolyMatrix = Vec<Vec<MultiPoly>>;

/// Matrix of ad(X) on ℚ[n̄] ⊗ g; column j holds [X, b_j].
pub fn ad_matrix(l: &LieAlgebraData, x: &GValuedPoly) -> PolyMatrix {
    let mut m = vec![vec![MultiPoly::zero(x.nvars); l.dim]; l.dim];
    for (k, p) in &x.components {
        for (j, col) in l.table[*k].iter().enumerate() {
            for (i, c) in col {
                m[*i][j].add_scaled(p, c);
            }
        }
    }
    m
}

/// ad(X) applied to a polynomial-valued vector.
pub fn ad_apply(l: &LieAlgebraData, x: &GValuedPoly, v: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut out = vec![MultiPoly::zero(x.nvars); l.dim];
    for (k, p) in &x.components {
        for (j, q) in v.iter().enumerate() {
            if q.is_zero() || l.table[*k][j].is_empty() {
                continue;
            }
            if p.len() == 1 {
                let (e, pc) = p.terms().next().expect("one term");
                for (i, c) in &l.table[*k][j] {
                    out[*i].add_mul_term(q, e, &(pc * c));
                }
                continue;
            }
            let pq = p * q;
            for (i, c) in &l.table[*k][j] {
                out[*i].add_scaled(&pq, c);
            }
        }
    }
    out
}

fn poly_matmul(a: &PolyMatrix, b: &PolyMatrix, nvars: usize) -> PolyMatrix {
    let d = a.len();
    let mut out = vec![vec![MultiPoly::zero(nvars); d]; d];
    for i in 0..d {
        for k in 0..d {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..d {
                if !b[k][j].is_zero() {
                    let p = &a[i][k] * &b[k][j];
                    out[i][j] += &p;
                }
            }
        }
    }
    out
}

/// Smallest m with ad(X)^m = 0, for X valued in n̄.
pub fn nilpotency_index(l: &LieAlgebraData, x: &GValuedPoly) -> Result<usize> {
    if x.components.keys().any(|&k| !l.is_nbar(k)) {
        return Err(Error::NotNilpotent);
    }
    let ad = ad_matrix(l, x);
    let is_zero = |m: &PolyMatrix| m.iter().all(|r| r.iter().all(MultiPoly::is_zero));
    let mut pow = ad.clone();
    let cap = 2 * l.rs.theta_height() as usize + 1;
    for m in 1..=cap {
        if is_zero(&pow) {
            return Ok(m);
        }
        pow = poly_matmul(&pow, &ad, x.nvars);
    }
    if is_zero(&pow) {
        Ok(cap + 1)
    } else {
        Err(Error::NotNilpotent)
    }
}

/// A formal element of U(g): a list of weighted words in basis indices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UEAExpr {
    pub terms: Vec<(Rational, Vec<usize>)>,
}

impl UEAExpr {
    pub fn letter(idx: usize) -> Self {
        Self { terms: vec![(Rational::one(), vec![idx])] }
    }

    pub fn scalar(c: Rational) -> Self {
        Self { terms: vec![(c, vec![])] }
    }

    pub fn from_sparse(v: &SparseVec) -> Self {
        Self { terms: v.iter().map(|(i, c)| (c.clone(), vec![*i])).collect() }
    }

    pub fn add(&self, other: &UEAExpr) -> Self {
        let mut t = self.terms.clone();
        t.extend(other.terms.iter().cloned());
        Self { terms: t }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { terms: self.terms.iter().map(|(a, w)| (a * c, w.clone())).collect() }
    }

    /// Concatenation product.
    pub fn mul(&self, other: &UEAExpr) -> Self {
        let mut t = Vec::new();
        for (a, w) in &self.terms {
            for (b, v) in &other.terms {
                let mut word = w.clone();
                word.extend(v);
                t.push((a * b, word));
            }
        }
        Self { terms: t }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CasimirScope {
    Theta,
    Full,
}

pub fn quadratic_casimir(l: &LieAlgebraData, scope: CasimirScope) -> UEAExpr {
    match scope {
        CasimirScope::Theta => {
            let (e, f) = (l.e_theta(), l.f_theta());
            let h = UEAExpr::from_sparse(&l.h_theta());
            UEAExpr::letter(e)
                .mul(&UEAExpr::letter(f))
                .add(&UEAExpr::letter(f).mul(&UEAExpr::letter(e)))
                .add(&h.mul(&h).scale(&rat(1, 2)))
        }
        CasimirScope::Full => {
            let ginv = l.invariant_form().inverse().expect("invariant form is nondegenerate");
            let mut terms = Vec::new();
            for a in 0..l.dim {
                for b in 0..l.dim {
                    let c = &ginv[(a, b)];
                    if !c.is_zero() {
                        terms.push((c.clone(), vec![a, b]));
                    }
                }
            }
            UEAExpr { terms }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::build_root_system;

    fn alg(k: char, r: usize) -> LieAlgebraData {
        build_lie_algebra(&build_root_system(k, r).unwrap())
    }

    // PBW straightening in ascending index order; oracle for U(g) identities
    fn straighten(l: &LieAlgebraData, e: &UEAExpr) -> BTreeMap<Vec<usize>, Rational> {
        let mut out: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        let mut stack: Vec<(Rational, Vec<usize>)> = e.terms.clone();
        while let Some((c, w)) = stack.pop() {
            if c.is_zero() {
                continue;
            }
            match (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
                None => {
                    let entry = out.entry(w).or_insert_with(Rational::zero);
                    *entry += c;
                }
                Some(i) => {
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    stack.push((c.clone(), swapped));
                    for (k, v) in l.bracket(w[i], w[i + 1]) {
                        let mut nw = w[..i].to_vec();
                        nw.push(*k);
                        nw.extend(&w[i + 2..]);
                        stack.push((&c * v, nw));
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    #[test]
    fn a2_brackets_match_explicit_matrices() {
        let l = alg('A', 2);
        let (e1, e2, et) = (l.e(0), l.e(1), l.e(2));
        let (f1, f2, ft) = (l.f(0), l.f(1), l.f(2));
        assert_eq!(l.bracket(e1, e2), &vec![(et, int(1))]);
        assert_eq!(l.bracket(f2, f1), &vec![(ft, int(1))]);
        assert_eq!(l.bracket(e1, ft), &vec![(f2, int(-1))]);
        assert_eq!(l.bracket(e2, ft), &vec![(f1, int(1))]);
        assert_eq!(l.label(et), "e[1,1]");
        assert_eq!(l.label(ft), "f[1,1]");
        assert_eq!(l.label(l.h(0)), "h1");
        assert_eq!(l.parse_label("f[1,1]").unwrap(), ft);
        assert!(l.parse_label("q7").is_err());
    }

    // 3x3 matrix oracle: e1=E12, e2=E23, eθ=E13, f's transposed
    #[test]
    fn a2_matches_matrix_commutators() {
        let l = alg('A', 2);
        let e = |i: usize, j: usize| {
            let mut m = RatMatrix::zeros(3, 3);
            m[(i, j)] = int(1);
            m
        };
        let mats: Vec<(usize, RatMatrix)> = vec![
            (l.e(0), e(0, 1)),
            (l.e(1), e(1, 2)),
            (l.e(2), e(0, 2)),
            (l.f(0), e(1, 0)),
            (l.f(1), e(2, 1)),
            (l.f(2), e(2, 0)),
            (l.h(0), &e(0, 0) - &e(1, 1)),
            (l.h(1), &e(1, 1) - &e(2, 2)),
        ];
        let to_mat = |v: &SparseVec| {
            let mut m = RatMatrix::zeros(3, 3);
            for (i, c) in v {
                let b = &mats.iter().find(|(j, _)| j == i).unwrap().1;
                m = &m + &b.scale(c);
            }
            m
        };
        for (a, ma) in &mats {
            for (b, mb) in &mats {
                let comm = &(ma * mb) - &(mb * ma);
                assert_eq!(to_mat(l.bracket(*a, *b)), comm, "{} {}", l.label(*a), l.label(*b));
            }
        }
    }

    #[test]
    fn jacobi_and_integrality() {
        for (k, r) in [('A', 1), ('A', 2), ('A', 3), ('B', 2), ('C', 3), ('B', 3), ('G', 2), ('D', 4)] {
            let l = alg(k, r);
            assert_eq!(l.check_jacobi(), None, "{k}{r}");
            for a in 0..l.dim {
                for b in 0..l.dim {
                    for (_, c) in l.bracket(a, b) {
                        if !(l.is_cartan(a) || l.is_cartan(b)) {
                            assert!(c.is_integer(), "{k}{r}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_large_types() {
        for (k, r) in [('F', 4), ('E', 6), ('B', 4), ('C', 4)] {
            assert_eq!(alg(k, r).check_jacobi(), None, "{k}{r}");
        }
    }

    #[test]
    fn chevalley_normalization() {
        let l = alg('G', 2);
        for k in 0..l.num_positive() {
            assert_eq!(l.bracket(l.e(k), l.f(k)), &l.coroot_element(k));
            // N_{α,β} = ±(p+1)
            for j in 0..l.num_positive() {
                let s = vadd(l.rs.root(k), l.rs.root(j));
                if l.rs.is_root(&s) {
                    let nt = &l.bracket(l.e(k), l.e(j))[0].1;
                    let mut p = 0;
                    let mut m = l.rs.root(j).to_vec();
                    loop {
                        m = m.iter().zip(l.rs.root(k)).map(|(x, y)| x - y).collect();
                        if l.rs.is_root(&m) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    assert_eq!(num_traits::Signed::abs(nt), int(p + 1));
                }
            }
        }
    }

    #[test]
    fn invariant_form_is_invariant() {
        for (k, r) in [('A', 2), ('B', 2), ('G', 2)] {
            let l = alg(k, r);
            let g = l.invariant_form();
            let form = |x: &SparseVec, c: usize| -> Rational {
                x.iter().map(|(i, v)| v * &g[(*i, c)]).sum()
            };
            for a in 0..l.dim {
                for b in 0..l.dim {
                    for c in 0..l.dim {
                        let lhs = form(l.bracket(a, b), c);
                        let rhs = form(l.bracket(a, c), b);
                        assert_eq!(lhs + rhs, Rational::zero());
                    }
                }
            }
            assert_eq!(g[(l.e_theta(), l.f_theta())], int(1));
        }
    }

    #[test]
    fn ad_matrix_examples() {
        let l = alg('A', 2);
        let u = GValuedPoly::u(&l);
        let m = ad_matrix(&l, &u);
        let ft = l.f_theta();
        assert!((0..l.dim).all(|i| m[i][ft].is_zero()));
        let zero = ad_matrix(&l, &GValuedPoly::zero(3));
        assert!(zero.iter().flatten().all(MultiPoly::is_zero));
        // [u, h_θ] = Σ α(h_θ) x_α f_α
        let ht = l.h_theta();
        let mut col = vec![MultiPoly::zero(3); l.dim];
        for (i, c) in &ht {
            for r in 0..l.dim {
                col[r].add_scaled(&m[r][*i], c);
            }
        }
        for k in 0..3 {
            let a_ht = l.rs.pairing(l.rs.root(k), l.rs.theta()).unwrap();
            assert_eq!(col[l.f(k)], MultiPoly::var(3, k).scale(&int(a_ht)));
        }
    }

    #[test]
    fn nilpotency_examples() {
        let l = alg('A', 2);
        assert_eq!(nilpotency_index(&l, &GValuedPoly::single(&l, 2)).unwrap(), 3);
        assert_eq!(nilpotency_index(&l, &GValuedPoly::zero(3)).unwrap(), 1);
        assert_eq!(nilpotency_index(&l, &GValuedPoly::u(&l)).unwrap(), 5);
        let mut bad = GValuedPoly::zero(3);
        bad.add_component(l.e(0), MultiPoly::one(3));
        assert_eq!(nilpotency_index(&l, &bad), Err(Error::NotNilpotent));
        for (k, r) in [('B', 2), ('G', 2), ('A', 3)] {
            let l = alg(k, r);
            let m = nilpotency_index(&l, &GValuedPoly::u(&l)).unwrap();
            assert!(m <= 2 * l.rs.theta_height() as usize + 1);
        }
    }

    #[test]
    fn casimirs_agree_for_a1_and_are_central() {
        let l = alg('A', 1);
        let th = straighten(&l, &quadratic_casimir(&l, CasimirScope::Theta));
        let full = straighten(&l, &quadratic_casimir(&l, CasimirScope::Full));
        assert_eq!(th, full);
        for (k, r) in [('A', 2), ('B', 2), ('G', 2)] {
            let l = alg(k, r);
            let cas = quadratic_casimir(&l, CasimirScope::Full);
            if (k, r) == ('A', 2) {
                // one e f and one f e word per root, plus the 2x2 Cartan block
                assert_eq!(cas.len(), 6 + 4);
            }
            for b in 0..l.dim {
                let x = UEAExpr::letter(b);
                let comm = cas.mul(&x).add(&x.mul(&cas).scale(&int(-1)));
                assert!(straighten(&l, &comm).is_empty(), "{k}{r} {}", l.label(b));
            }
        }
        let l = alg('A', 2);
        assert_eq!(quadratic_casimir(&l, CasimirScope::Theta).len(), 2 + 4);
    }

    #[test]
    fn bracket_table_json_keys() {
        let l = alg('A', 2);
        let t = l.bracket_table();
        assert_eq!(t.brackets["e[1,0]"]["e[0,1]"]["e[1,1]"], "1");
        assert_eq!(t.dimension, 8);
    }
}
