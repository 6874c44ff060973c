//! Generalized eigenspaces of filtration-preserving operators over ℚ and the
//! isomorphism φ between the decompositions of T_s and T_s + T_n.
//!
//! A `FilteredOperator` lives on F_K = V_0 ⊕ … ⊕ V_K with the basis ordered
//! by grade; F_k is spanned by the first d_0 + … + d_k basis vectors.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::in_span;
use crate::algebra::{RatMatrix, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilteredOperator {
    /// Graded dimensions d_0, …, d_K.
    pub grades: Vec<usize>,
    #[serde(with = "matrix_rows")]
    pub matrix: RatMatrix,
}

mod matrix_rows {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &RatMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::algebra::serde_rational::matrix::serialize(&m.to_rows(), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<RatMatrix, D::Error> {
        let rows = crate::algebra::serde_rational::matrix::deserialize(d)?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(serde::de::Error::custom("matrix must be square"));
        }
        Ok(RatMatrix::from_rows(rows))
    }
}

impl FilteredOperator {
    pub fn new(grades: Vec<usize>, matrix: RatMatrix) -> Result<Self> {
        let n: usize = grades.iter().sum();
        if !matrix.is_square() || matrix.rows() != n {
            return Err(Error::Dimension(format!(
                "graded dimensions sum to {n}, matrix is {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self { grades, matrix })
    }

    /// Single grade: no filtration constraint.
    pub fn ungraded(matrix: RatMatrix) -> Result<Self> {
        Self::new(vec![matrix.rows()], matrix)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Grade of each basis vector.
    pub fn grade_of(&self) -> Vec<usize> {
        self.grades.iter().enumerate().flat_map(|(g, &d)| std::iter::repeat(g).take(d)).collect()
    }

    fn entries_satisfy(&self, ok: impl Fn(usize, usize) -> bool) -> bool {
        let g = self.grade_of();
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.matrix[(i, j)].is_zero() || ok(g[i], g[j])))
    }

    /// T(F_k) ⊂ F_k for all k.
    pub fn preserves_filtration(&self) -> bool {
        self.entries_satisfy(|gi, gj| gi <= gj)
    }

    /// T(F_k) ⊂ F_{k-1} for all k.
    pub fn strictly_lowers(&self) -> bool {
        self.entries_satisfy(|gi, gj| gi < gj)
    }

    /// T(V_k) ⊂ V_k for all k.
    pub fn preserves_grades(&self) -> bool {
        self.entries_satisfy(|gi, gj| gi == gj)
    }

    /// Restriction to F_k.
    pub fn truncate(&self, k: usize) -> Self {
        let grades: Vec<usize> = self.grades.iter().take(k + 1).copied().collect();
        let n: usize = grades.iter().sum();
        Self { grades, matrix: self.matrix.block(0, n, 0, n) }
    }
}

// ---- univariate polynomials, coefficients low to high ----

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn peval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn pderiv(p: &[Rational]) -> Vec<Rational> {
    p.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(i.into())).collect()
}

fn pdivrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (vec![], r);
    }
    let lead = b[db].clone();
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (i, bc) in b.iter().enumerate() {
            let v = &c * bc;
            r[shift + i] -= v;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn pgcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = pdivrem(&a, &b);
        a = b;
        b = r;
    }
    let lead = a.last().cloned().unwrap_or_else(Rational::one);
    a.iter().map(|c| c / &lead).collect()
}

/// Characteristic polynomial det(t·I - M), coefficients low to high
/// (Faddeev–LeVerrier).
pub fn char_poly(m: &RatMatrix) -> Vec<Rational> {
    let n = m.rows();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut mk = RatMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = m * &mk;
        for i in 0..n {
            next[(i, i)] += &c[n - k + 1];
        }
        mk = next;
        let am = m * &mk;
        let tr: Rational = (0..n).map(|i| am[(i, i)].clone()).sum();
        c[n - k] = -tr / Rational::from_integer(BigInt::from(k));
    }
    c
}

fn sign_changes(seq: &[Vec<Rational>], x: &Rational) -> usize {
    let signs: Vec<i32> = seq
        .iter()
        .map(|p| {
            let v = peval(p, x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sturm_sequence(p: &[Rational]) -> Vec<Vec<Rational>> {
    let mut seq = vec![p.to_vec(), pderiv(p)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let (_, r) = pdivrem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.iter().map(|c| -c).collect());
    }
    seq
}

/// Distinct rational roots of p. Roots r satisfy L·r ∈ ℤ where L is the
/// lcm-scaled leading coefficient, so after the substitution y = L·t only
/// integer roots of the scaled polynomial are searched, isolated by Sturm
/// counts on integer intervals.
fn rational_roots(p: &[Rational]) -> Vec<Rational> {
    let mut p = p.to_vec();
    trim(&mut p);
    if p.len() <= 1 {
        return vec![];
    }
    let sq = {
        let g = pgcd(&p, &pderiv(&p));
        pdivrem(&p, &g).0
    };
    // integer coefficients
    let den = sq.iter().fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
    let ints: Vec<BigInt> = sq.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let d = ints.len() - 1;
    let lead = ints[d].clone();
    // Q(y) = lead^{d-1} P(y / lead) has integer coefficients and a monic top
    let mut q: Vec<Rational> = Vec::with_capacity(d + 1);
    for (i, c) in ints.iter().enumerate() {
        if i == d {
            q.push(Rational::one());
        } else {
            q.push(Rational::from_integer(c * num_traits::pow(lead.clone(), d - 1 - i)));
        }
    }
    // Cauchy bound
    let bound = q[..d].iter().map(|c| c.abs()).fold(Rational::zero(), |a, b| if b > a { b } else { a });
    let bound = bound.ceil() + Rational::one();
    let seq = sturm_sequence(&q);
    let mut roots = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        // roots in (lo, hi]
        let count = sign_changes(&seq, &lo) as i64 - sign_changes(&seq, &hi) as i64;
        if count <= 0 {
            continue;
        }
        if &hi - &lo <= Rational::one() {
            if peval(&q, &hi).is_zero() {
                roots.push(hi / Rational::from_integer(lead.clone()));
            }
            continue;
        }
        let mid = ((&lo + &hi) / Rational::from_integer(2.into())).floor();
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    roots.sort();
    roots
}

/// Eigenvalues with algebraic multiplicity; errors when the characteristic
/// polynomial does not split over ℚ.
pub fn rational_spectrum(m: &RatMatrix) -> Result<Vec<(Rational, usize)>> {
    let cp = char_poly(m);
    let mut rest = cp.clone();
    let mut out = Vec::new();
    for r in rational_roots(&cp) {
        let lin = vec![-r.clone(), Rational::one()];
        let mut mult = 0;
        loop {
            let (q, rem) = pdivrem(&rest, &lin);
            if !rem.is_empty() {
                break;
            }
            rest = q;
            mult += 1;
        }
        out.push((r, mult));
    }
    let total: usize = out.iter().map(|(_, k)| k).sum();
    if total != m.rows() {
        return Err(Error::IrrationalEigenvalue);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralizedEigenspace {
    #[serde(with = "crate::algebra::serde_rational")]
    pub eigenvalue: Rational,
    pub multiplicity: usize,
    #[serde(with = "crate::algebra::serde_rational::matrix")]
    pub basis: Vec<Vec<Rational>>,
}

fn shifted(m: &RatMatrix, r: &Rational) -> RatMatrix {
    let mut s = m.clone();
    for i in 0..m.rows() {
        s[(i, i)] -= r;
    }
    s
}

/// V_λ as the image of ∏_{μ≠λ} (T - μ)^{m_μ}.
pub fn generalized_eigenspaces(t: &FilteredOperator) -> Result<Vec<GeneralizedEigenspace>> {
    if !t.preserves_filtration() {
        return Err(Error::Precondition("operator does not preserve the filtration".into()));
    }
    let m = &t.matrix;
    let spectrum = rational_spectrum(m)?;
    let mut out = Vec::with_capacity(spectrum.len());
    for (r, mult) in &spectrum {
        let mut p = RatMatrix::identity(m.rows());
        for (s, k) in &spectrum {
            if s != r {
                p = &p * &shifted(m, s).pow(*k as u32);
            }
        }
        let basis = p.column_space();
        debug_assert_eq!(basis.len(), *mult);
        out.push(GeneralizedEigenspace { eigenvalue: r.clone(), multiplicity: *mult, basis });
    }
    Ok(out)
}

/// Oracle: ker (T - λ)^n for every rational eigenvalue λ.
pub fn kernel_power_eigenspaces(m: &RatMatrix) -> Result<Vec<GeneralizedEigenspace>> {
    let n = m.rows() as u32;
    rational_spectrum(m)?
        .into_iter()
        .map(|(r, mult)| {
            let basis = shifted(m, &r).pow(n).nullspace();
            Ok(GeneralizedEigenspace { eigenvalue: r, multiplicity: mult, basis })
        })
        .collect()
}

/// Spectral projector onto the generalized eigenspace of `target` along the
/// others.
pub fn spectral_projector(spaces: &[GeneralizedEigenspace], target: &Rational) -> RatMatrix {
    let cols: Vec<Vec<Rational>> = spaces.iter().flat_map(|s| s.basis.iter().cloned()).collect();
    let n = cols.first().map_or(0, Vec::len);
    let b = RatMatrix::from_cols(n, &cols);
    let sel: Vec<Rational> = spaces
        .iter()
        .flat_map(|s| {
            let v = if &s.eigenvalue == target { Rational::one() } else { Rational::zero() };
            std::iter::repeat(v).take(s.basis.len())
        })
        .collect();
    let binv = b.inverse().expect("generalized eigenspaces span the space");
    &(&b * &RatMatrix::diagonal(&sel)) * &binv
}

fn check_pair(ts: &FilteredOperator, tn: &FilteredOperator) -> Result<()> {
    if ts.grades != tn.grades {
        return Err(Error::Precondition("T_s and T_n use different gradings".into()));
    }
    if !ts.preserves_grades() {
        return Err(Error::Precondition("T_s does not preserve the grading".into()));
    }
    if !tn.strictly_lowers() {
        return Err(Error::Precondition("T_n does not strictly lower the filtration".into()));
    }
    Ok(())
}

/// φ sends a vector w ∈ V_r ∩ V_λ^s to its component in V_λ^{s+n}.
pub fn phi_isomorphism(ts: &FilteredOperator, tn: &FilteredOperator) -> Result<RatMatrix> {
    check_pair(ts, tn)?;
    let total = FilteredOperator::new(ts.grades.clone(), &ts.matrix + &tn.matrix)?;
    let s_spaces = graded_eigenbasis(ts)?;
    let t_spaces = generalized_eigenspaces(&total)?;
    let n = ts.dim();
    let mut src = Vec::with_capacity(n);
    let mut img = Vec::with_capacity(n);
    for (lam, vecs) in &s_spaces {
        let p = spectral_projector(&t_spaces, lam);
        for w in vecs {
            img.push(p.mul_vec(w));
            src.push(w.clone());
        }
    }
    let s = RatMatrix::from_cols(n, &src);
    let i = RatMatrix::from_cols(n, &img);
    let sinv = s.inverse().ok_or_else(|| Error::Precondition("T_s eigenbasis is degenerate".into()))?;
    Ok(&i * &sinv)
}

/// Generalized eigenvectors of a grade-preserving T_s, each inside one V_r.
fn graded_eigenbasis(ts: &FilteredOperator) -> Result<Vec<(Rational, Vec<Vec<Rational>>)>> {
    let n = ts.dim();
    let mut acc: Vec<(Rational, Vec<Vec<Rational>>)> = Vec::new();
    let mut start = 0;
    for &d in &ts.grades {
        if d > 0 {
            let block = FilteredOperator::ungraded(ts.matrix.block(start, start + d, start, start + d))?;
            for sp in generalized_eigenspaces(&block)? {
                let lifted = sp.basis.into_iter().map(|v| {
                    let mut full = vec![Rational::zero(); n];
                    full[start..start + d].clone_from_slice(&v);
                    full
                });
                match acc.iter_mut().find(|(l, _)| *l == sp.eigenvalue) {
                    Some((_, vs)) => vs.extend(lifted),
                    None => acc.push((sp.eigenvalue, lifted.collect())),
                }
            }
        }
        start += d;
    }
    acc.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiReport {
    pub spectra_equal: bool,
    pub maps_eigenspaces: bool,
    pub graded_identity: bool,
    pub invertible: bool,
    pub matches_kernel_oracle: bool,
}

impl PhiReport {
    pub fn ok(&self) -> bool {
        self.spectra_equal && self.maps_eigenspaces && self.graded_identity && self.invertible && self.matches_kernel_oracle
    }
}

/// Checks every property of φ for a pair (T_s, T_n).
pub fn check_phi(ts: &FilteredOperator, tn: &FilteredOperator) -> Result<PhiReport> {
    check_pair(ts, tn)?;
    let phi = phi_isomorphism(ts, tn)?;
    let total = FilteredOperator::new(ts.grades.clone(), &ts.matrix + &tn.matrix)?;
    let s_sp = generalized_eigenspaces(ts)?;
    let t_sp = generalized_eigenspaces(&total)?;
    let mult = |v: &[GeneralizedEigenspace]| v.iter().map(|s| (s.eigenvalue.clone(), s.multiplicity)).collect::<Vec<_>>();
    let spectra_equal = mult(&s_sp) == mult(&t_sp);

    let mut maps_eigenspaces = spectra_equal;
    if spectra_equal {
        for (s, t) in s_sp.iter().zip(&t_sp) {
            let imgs: Vec<Vec<Rational>> = s.basis.iter().map(|w| phi.mul_vec(w)).collect();
            let full_rank = crate::algebra::linalg::span_rank(&imgs) == t.basis.len();
            maps_eigenspaces &= full_rank && imgs.iter().all(|v| in_span(&t.basis, v));
        }
    }

    // gr φ = id: (φ - 1) lowers the filtration
    let diff = FilteredOperator::new(ts.grades.clone(), &phi - &RatMatrix::identity(ts.dim()))?;
    let graded_identity = diff.strictly_lowers();
    let invertible = !phi.det().is_zero();

    let oracle_s = kernel_power_eigenspaces(&ts.matrix)?;
    let oracle_t = kernel_power_eigenspaces(&total.matrix)?;
    let same = |a: &[GeneralizedEigenspace], b: &[GeneralizedEigenspace]| {
        a.len() == b.len()
            && a.iter().zip(b).all(|(x, y)| {
                x.eigenvalue == y.eigenvalue
                    && x.basis.len() == y.basis.len()
                    && x.basis.iter().all(|v| in_span(&y.basis, v))
            })
    };
    let matches_kernel_oracle = same(&s_sp, &oracle_s) && same(&t_sp, &oracle_t);
    Ok(PhiReport { spectra_equal, maps_eigenspaces, graded_identity, invertible, matches_kernel_oracle })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    #[test]
    fn char_poly_of_companion() {
        // eigenvalues 1, 2, 3
        let a = m(&[&[0, 0, 6], &[1, 0, -11], &[0, 1, 6]]);
        assert_eq!(char_poly(&a), vec![int(-6), int(11), int(-6), int(1)]);
        let spectrum = rational_spectrum(&a).unwrap();
        assert_eq!(spectrum, vec![(int(1), 1), (int(2), 1), (int(3), 1)]);
    }

    #[test]
    fn diagonal_and_jordan() {
        let d = FilteredOperator::ungraded(m(&[&[1, 0], &[0, 2]])).unwrap();
        let sp = generalized_eigenspaces(&d).unwrap();
        assert_eq!(sp.len(), 2);
        assert!(sp.iter().all(|s| s.basis.len() == 1));
        let j = FilteredOperator::ungraded(m(&[&[5, 1], &[0, 5]])).unwrap();
        let sp = generalized_eigenspaces(&j).unwrap();
        assert_eq!(sp.len(), 1);
        assert_eq!((sp[0].eigenvalue.clone(), sp[0].basis.len()), (int(5), 2));
    }

    #[test]
    fn fractional_eigenvalues() {
        let a = RatMatrix::from_rows(vec![vec![rat(1, 3), int(7)], vec![int(0), rat(-5, 2)]]);
        let spectrum = rational_spectrum(&a).unwrap();
        assert_eq!(spectrum, vec![(rat(-5, 2), 1), (rat(1, 3), 1)]);
    }

    #[test]
    fn irrational_is_an_error() {
        let a = m(&[&[0, 2], &[1, 0]]);
        assert_eq!(rational_spectrum(&a), Err(Error::IrrationalEigenvalue));
        let rot = m(&[&[0, -1], &[1, 0]]);
        assert_eq!(rational_spectrum(&rot), Err(Error::IrrationalEigenvalue));
    }

    #[test]
    fn phi_identity_when_nilpotent_part_vanishes() {
        let ts = FilteredOperator::new(vec![1, 2], m(&[&[3, 0, 0], &[0, 1, 1], &[0, 0, 1]])).unwrap();
        let tn = FilteredOperator::new(vec![1, 2], RatMatrix::zeros(3, 3)).unwrap();
        assert_eq!(phi_isomorphism(&ts, &tn).unwrap(), RatMatrix::identity(3));
        assert!(check_phi(&ts, &tn).unwrap().ok());
    }

    #[test]
    fn two_by_two_triangular() {
        let ts = FilteredOperator::new(vec![1, 1], m(&[&[1, 0], &[0, 2]])).unwrap();
        let tn = FilteredOperator::new(vec![1, 1], m(&[&[0, 4], &[0, 0]])).unwrap();
        let rep = check_phi(&ts, &tn).unwrap();
        assert!(rep.ok(), "{rep:?}");
        // the eigenvector for 2 moves: (4, 1)
        let phi = phi_isomorphism(&ts, &tn).unwrap();
        assert_eq!(phi.col(1), vec![int(4), int(1)]);
    }

    #[test]
    fn precondition_violations() {
        let ts = FilteredOperator::new(vec![1, 1], m(&[&[1, 1], &[0, 2]])).unwrap();
        let tn = FilteredOperator::new(vec![1, 1], RatMatrix::zeros(2, 2)).unwrap();
        assert!(matches!(phi_isomorphism(&ts, &tn), Err(Error::Precondition(_))));
        let ts = FilteredOperator::new(vec![1, 1], m(&[&[1, 0], &[0, 2]])).unwrap();
        let tn = FilteredOperator::new(vec![1, 1], m(&[&[0, 0], &[1, 0]])).unwrap();
        assert!(matches!(phi_isomorphism(&ts, &tn), Err(Error::Precondition(_))));
    }

    #[test]
    fn json_round_trip() {
        let t = FilteredOperator::new(vec![2], RatMatrix::from_rows(vec![vec![rat(1, 2), int(0)], vec![int(3), int(-1)]])).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"grades":[2],"matrix":[["1/2","0"],["3","-1"]]}"#);
        let back: FilteredOperator = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}
