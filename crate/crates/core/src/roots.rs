//! Root systems of the simple types at rank at most six.
//!
//! Roots are integer vectors in the basis of simple roots. Weights are
//! rational vectors of their values on the simple coroots `h_1..h_r`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{int, RatMatrix, Rational};
use crate::error::{Error, Result};

pub const MAX_RANK: usize = 6;

/// Values of a weight on the simple coroots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVec(#[serde(with = "crate::algebra::serde_rational::vec")] pub Vec<Rational>);

impl WeightVec {
    pub fn zero(rank: usize) -> Self {
        Self(vec![Rational::zero(); rank])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self(v.iter().map(|&x| int(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }
}

impl Index<usize> for WeightVec {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &WeightVec {
    type Output = WeightVec;
    fn add(self, rhs: &WeightVec) -> WeightVec {
        WeightVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &WeightVec {
    type Output = WeightVec;
    fn sub(self, rhs: &WeightVec) -> WeightVec {
        WeightVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &WeightVec {
    type Output = WeightVec;
    fn neg(self) -> WeightVec {
        WeightVec(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootSystemData {
    pub kind: char,
    pub rank: usize,
    /// `cartan[i][j] = α_j(h_i)`.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, ordered by height and then
    /// by descending lexicographic order (so α_1, α_2, ... come first).
    pub positive_roots: Vec<Vec<i64>>,
    pub heights: Vec<u32>,
    pub theta_index: usize,
    /// Squared lengths of the simple roots, normalized so that (θ, θ) = 2.
    #[serde(with = "crate::algebra::serde_rational::vec")]
    pub simple_lengths: Vec<Rational>,
    #[serde(skip)]
    index: HashMap<Vec<i64>, usize>,
}

pub fn cartan_matrix(kind: char, rank: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::InvalidType(format!("{kind}{rank}"));
    let ok = match kind {
        'A' => rank >= 1,
        'B' | 'C' => rank >= 2,
        'D' => rank >= 4,
        'E' => rank == 6,
        'F' => rank == 4,
        'G' => rank == 2,
        _ => false,
    };
    if !ok || rank > MAX_RANK {
        return Err(bad());
    }
    let mut a = vec![vec![0i64; rank]; rank];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match kind {
        'A' | 'B' | 'C' | 'F' => (0..rank - 1).for_each(|i| link(i, i + 1)),
        'D' => {
            (0..rank - 2).for_each(|i| link(i, i + 1));
            link(rank - 3, rank - 1);
        }
        'E' => {
            for (i, j) in [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)] {
                link(i, j);
            }
        }
        'G' => link(0, 1),
        _ => unreachable!(),
    }
    match kind {
        'B' => a[rank - 1][rank - 2] = -2,
        'C' => a[rank - 2][rank - 1] = -2,
        'F' => a[2][1] = -2,
        'G' => a[0][1] = -3,
        _ => {}
    }
    Ok(a)
}

/// Parses "A2", "g2", etc.
pub fn parse_type(s: &str) -> Result<(char, usize)> {
    let s = s.trim();
    let mut chars = s.chars();
    let kind = chars
        .next()
        .ok_or_else(|| Error::Parse("empty type".into()))?
        .to_ascii_uppercase();
    let rest: String = chars.collect();
    let rank = rest.parse().map_err(|_| Error::Parse(format!("bad type `{s}`")))?;
    Ok((kind, rank))
}

pub fn build_root_system(kind: char, rank: usize) -> Result<RootSystemData> {
    let kind = kind.to_ascii_uppercase();
    let cartan = cartan_matrix(kind, rank)?;
    let r = rank;

    let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut m = vec![0; r];
            m[i] = 1;
            m
        })
        .collect();
    while !layer.is_empty() {
        found.extend(layer.iter().cloned());
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..r {
                // β - p α_i, ..., β is the bottom of the α_i-string through β
                let mut p = 0;
                let mut m = beta.clone();
                loop {
                    m[i] -= 1;
                    if found.contains(&m) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - coroot_value(&cartan, beta, i);
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        layer = next.into_iter().collect();
    }

    let mut roots: Vec<Vec<i64>> = found.into_iter().collect();
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let heights: Vec<u32> = roots.iter().map(|m| m.iter().sum::<i64>() as u32).collect();
    let theta_index = roots.len() - 1;
    let index = roots.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();

    // ℓ_i c_ij = ℓ_j c_ji
    let mut lengths: Vec<Option<Rational>> = vec![None; r];
    lengths[0] = Some(Rational::one());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..r {
            if j != i && cartan[i][j] != 0 && lengths[j].is_none() {
                let li = lengths[i].clone().unwrap();
                lengths[j] = Some(li * int(cartan[i][j]) / int(cartan[j][i]));
                queue.push_back(j);
            }
        }
    }
    let mut simple_lengths: Vec<Rational> = lengths.into_iter().map(|x| x.unwrap()).collect();

    let mut rs = RootSystemData {
        kind,
        rank,
        cartan_matrix: cartan,
        positive_roots: roots,
        heights,
        theta_index,
        simple_lengths: simple_lengths.clone(),
        index,
    };
    let theta = rs.theta().to_vec();
    let tt = rs.form(&theta, &theta);
    let f = int(2) / tt;
    simple_lengths.iter_mut().for_each(|l| *l *= &f);
    rs.simple_lengths = simple_lengths;
    Ok(rs)
}

/// β(h_i) for β in simple-root coordinates.
fn coroot_value(cartan: &[Vec<i64>], beta: &[i64], i: usize) -> i64 {
    beta.iter().zip(&cartan[i]).map(|(m, c)| m * c).sum()
}

impl RootSystemData {
    pub fn name(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn root(&self, k: usize) -> &[i64] {
        &self.positive_roots[k]
    }

    pub fn theta(&self) -> &[i64] {
        &self.positive_roots[self.theta_index]
    }

    pub fn height(&self, k: usize) -> u32 {
        self.heights[k]
    }

    pub fn theta_height(&self) -> u32 {
        self.heights[self.theta_index]
    }

    pub fn index_of(&self, m: &[i64]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Index of the simple root α_i.
    pub fn simple_index(&self, i: usize) -> usize {
        let mut m = vec![0; self.rank];
        m[i] = 1;
        self.index_of(&m).expect("simple roots are present")
    }

    pub fn is_simple(&self, k: usize) -> bool {
        self.heights[k] == 1
    }

    /// Whether ±m is a root.
    pub fn is_root(&self, m: &[i64]) -> bool {
        if m.iter().all(|&x| x >= 0) {
            self.index.contains_key(m)
        } else if m.iter().all(|&x| x <= 0) {
            let neg: Vec<i64> = m.iter().map(|x| -x).collect();
            self.index.contains_key(&neg)
        } else {
            false
        }
    }

    /// Label such as "[1,0]".
    pub fn root_label(&self, k: usize) -> String {
        let parts: Vec<String> = self.positive_roots[k].iter().map(|x| x.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// β(h_i) for β in the root lattice.
    pub fn coroot_value(&self, beta: &[i64], i: usize) -> i64 {
        coroot_value(&self.cartan_matrix, beta, i)
    }

    /// The weight of a root-lattice element, as values on the simple coroots.
    pub fn root_weight(&self, m: &[i64]) -> WeightVec {
        WeightVec((0..self.rank).map(|i| int(self.coroot_value(m, i))).collect())
    }

    /// The normalized invariant form on the root lattice.
    pub fn form(&self, a: &[i64], b: &[i64]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if b[j] == 0 {
                    continue;
                }
                // (α_i, α_j) = ℓ_i c_ij / 2
                acc += int(a[i] * b[j] * self.cartan_matrix[i][j]) * &self.simple_lengths[i];
            }
        }
        acc / int(2)
    }

    pub fn length_sq(&self, m: &[i64]) -> Rational {
        self.form(m, m)
    }

    /// ⟨α, β∨⟩ = 2(α, β)/(β, β). Both arguments must be roots (either sign).
    pub fn pairing(&self, alpha: &[i64], beta: &[i64]) -> Result<i64> {
        for m in [alpha, beta] {
            if m.len() != self.rank || !self.is_root(m) {
                return Err(Error::RootNotInSystem(m.to_vec()));
            }
        }
        let v = int(2) * self.form(alpha, beta) / self.form(beta, beta);
        debug_assert!(v.is_integer());
        Ok(crate::algebra::as_int(&v).expect("Cartan integers are small"))
    }

    /// Coefficients c_i with h_β = Σ c_i h_i.
    pub fn coroot_coeffs(&self, beta: &[i64]) -> Vec<Rational> {
        let bb = self.form(beta, beta);
        (0..self.rank).map(|i| int(beta[i]) * &self.simple_lengths[i] / &bb).collect()
    }

    /// λ(h_β) for a weight λ and a root β.
    pub fn weight_on_coroot(&self, lambda: &WeightVec, beta: &[i64]) -> Rational {
        self.coroot_coeffs(beta).iter().zip(&lambda.0).map(|(c, l)| c * l).sum()
    }

    /// Expresses a weight in simple-root coordinates.
    pub fn weight_to_root_coords(&self, lambda: &WeightVec) -> Vec<Rational> {
        let c = RatMatrix::from_rows(
            self.cartan_matrix.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(),
        );
        c.solve(&lambda.0).expect("Cartan matrix is invertible")
    }

    /// The normalized form on weights.
    pub fn weight_form(&self, a: &WeightVec, b: &WeightVec) -> Rational {
        let ca = self.weight_to_root_coords(a);
        // (α_j, μ) = μ(h_j) (α_j, α_j)/2
        ca.iter()
            .enumerate()
            .map(|(j, c)| c * &b.0[j] * &self.simple_lengths[j] / int(2))
            .sum()
    }

    /// Simple reflection s_i acting on a weight.
    pub fn reflect_weight(&self, i: usize, mu: &WeightVec) -> WeightVec {
        WeightVec(
            (0..self.rank)
                .map(|j| &mu.0[j] - &mu.0[i] * int(self.cartan_matrix[j][i]))
                .collect(),
        )
    }

    /// Simple reflection s_i acting on a root-lattice element.
    pub fn reflect_root(&self, i: usize, m: &[i64]) -> Vec<i64> {
        let mut out = m.to_vec();
        out[i] -= self.coroot_value(m, i);
        out
    }

    /// Applies the word s_{w[0]} s_{w[1]} ... to a weight (rightmost first).
    pub fn apply_word_weight(&self, word: &[usize], mu: &WeightVec) -> WeightVec {
        word.iter().rev().fold(mu.clone(), |acc, &i| self.reflect_weight(i, &acc))
    }

    pub fn apply_word_root(&self, word: &[usize], m: &[i64]) -> Vec<i64> {
        word.iter().rev().fold(m.to_vec(), |acc, &i| self.reflect_root(i, &acc))
    }

    /// Positive roots grouped by height, index 0 holding height 1.
    pub fn height_layers(&self) -> Vec<Vec<usize>> {
        let mut layers = vec![Vec::new(); self.theta_height() as usize];
        for (k, &h) in self.heights.iter().enumerate() {
            layers[h as usize - 1].push(k);
        }
        layers
    }
}

/// ρ as values on simple coroots; always all ones.
pub fn weyl_vector(rs: &RootSystemData) -> WeightVec {
    // ½ Σ α evaluated on each h_i
    let mut sum = vec![0i64; rs.rank];
    for m in &rs.positive_roots {
        for (s, x) in sum.iter_mut().zip(m) {
            *s += x;
        }
    }
    let w = rs.root_weight(&sum);
    w.scale(&crate::algebra::rat(1, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    // every root is W-conjugate to a simple root
    fn reflection_closure(rs: &RootSystemData) -> BTreeSet<Vec<i64>> {
        let mut seen: BTreeSet<Vec<i64>> = (0..rs.rank)
            .map(|i| {
                let mut m = vec![0; rs.rank];
                m[i] = 1;
                m
            })
            .collect();
        let mut stack: Vec<Vec<i64>> = seen.iter().cloned().collect();
        while let Some(m) = stack.pop() {
            for i in 0..rs.rank {
                let r = rs.reflect_root(i, &m);
                if seen.insert(r.clone()) {
                    stack.push(r);
                }
            }
        }
        seen.into_iter().filter(|m| m.iter().all(|&x| x >= 0)).collect()
    }

    const TYPES: &[(char, usize, usize)] = &[
        ('A', 1, 1),
        ('A', 2, 3),
        ('A', 3, 6),
        ('A', 6, 21),
        ('B', 2, 4),
        ('B', 3, 9),
        ('C', 3, 9),
        ('D', 4, 12),
        ('D', 5, 20),
        ('E', 6, 36),
        ('F', 4, 24),
        ('G', 2, 6),
    ];

    #[test]
    fn counts_match_reflection_closure() {
        for &(k, r, n) in TYPES {
            let rs = build_root_system(k, r).unwrap();
            assert_eq!(rs.num_positive(), n, "{k}{r}");
            let brute = reflection_closure(&rs);
            let ours: BTreeSet<_> = rs.positive_roots.iter().cloned().collect();
            assert_eq!(brute, ours, "{k}{r}");
        }
    }

    #[test]
    fn theta_dominates_and_has_length_two() {
        for &(k, r, _) in TYPES {
            let rs = build_root_system(k, r).unwrap();
            let th = rs.theta();
            for m in &rs.positive_roots {
                assert!(m.iter().zip(th).all(|(a, b)| a <= b), "{k}{r}");
            }
            assert_eq!(rs.length_sq(th), int(2));
            let layers = rs.height_layers();
            assert_eq!(layers.iter().map(Vec::len).sum::<usize>(), rs.num_positive());
            assert_eq!(layers.last().unwrap(), &vec![rs.theta_index]);
        }
    }

    #[test]
    fn a2_and_g2_examples() {
        let a2 = build_root_system('A', 2).unwrap();
        assert_eq!(a2.positive_roots, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(a2.pairing(&[1, 0], &[1, 0]).unwrap(), 2);
        assert_eq!(a2.pairing(&[1, 1], &[1, 1]).unwrap(), 2);
        assert_eq!(a2.pairing(&[1, 0], &[1, 1]).unwrap(), 1);
        assert!(a2.pairing(&[2, 0], &[1, 1]).is_err());
        let g2 = build_root_system('G', 2).unwrap();
        assert_eq!(g2.theta(), &[3, 2]);
        assert_eq!(g2.num_positive(), 6);
        let a1 = build_root_system('A', 1).unwrap();
        assert_eq!(a1.positive_roots, vec![vec![1]]);
    }

    #[test]
    fn invalid_types_rejected() {
        for (k, r) in [('A', 0), ('B', 1), ('D', 3), ('E', 7), ('E', 8), ('G', 3), ('A', 7), ('X', 2)] {
            assert!(build_root_system(k, r).is_err(), "{k}{r}");
        }
    }

    #[test]
    fn rho_is_all_ones() {
        for &(k, r, _) in TYPES {
            let rs = build_root_system(k, r).unwrap();
            assert_eq!(weyl_vector(&rs), WeightVec(vec![int(1); r]));
        }
    }

    #[test]
    fn coroot_pairing_consistency() {
        for &(k, r, _) in TYPES {
            let rs = build_root_system(k, r).unwrap();
            for a in &rs.positive_roots {
                for b in &rs.positive_roots {
                    let w = rs.root_weight(a);
                    assert_eq!(rs.weight_on_coroot(&w, b), int(rs.pairing(a, b).unwrap()));
                }
            }
        }
    }

    #[test]
    fn weight_form_agrees_on_roots() {
        let rs = build_root_system('B', 3).unwrap();
        for a in &rs.positive_roots {
            for b in &rs.positive_roots {
                assert_eq!(rs.weight_form(&rs.root_weight(a), &rs.root_weight(b)), rs.form(a, b));
            }
        }
        // A1: (ρ, ρ) = 1/2
        let a1 = build_root_system('A', 1).unwrap();
        let rho = weyl_vector(&a1);
        assert_eq!(a1.weight_form(&rho, &rho), rat(1, 2));
    }

    #[test]
    fn parse_types() {
        assert_eq!(parse_type("g2").unwrap(), ('G', 2));
        assert!(parse_type("A").is_err());
    }
}
