//! Taylor tables for the three generating functions built from t/(e^t - 1).

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{binomial, factorial, Rational};

/// Which of the three series a table holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeriesId {
    /// t e^t / (e^t - 1)
    A,
    /// t / (e^t - 1)
    B,
    /// (t - e^t + 1) / (e^t - 1)
    C,
}

/// Bernoulli numbers B_0..=B_n with B_1 = -1/2.
pub fn bernoulli_table(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut acc = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += Rational::from_integer(binomial(m as u64 + 1, k as u64)) * bk;
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_table(n).pop().expect("table is nonempty")
}

/// Coefficients c_0..=c_n of the chosen series.
pub fn series_coeffs(id: SeriesId, n: usize) -> Vec<Rational> {
    let mut c: Vec<Rational> = bernoulli_table(n)
        .into_iter()
        .enumerate()
        .map(|(k, b)| b / Rational::from_integer(factorial(k as u64)))
        .collect();
    match id {
        SeriesId::B => {}
        SeriesId::A => {
            if n >= 1 {
                c[1] += Rational::one();
            }
        }
        SeriesId::C => c[0] -= Rational::one(),
    }
    c
}

/// A truncated series together with its identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTable {
    pub id: SeriesId,
    #[serde(with = "super::serde_rational::vec")]
    pub coeffs: Vec<Rational>,
}

impl SeriesTable {
    pub fn new(id: SeriesId, n: usize) -> Self {
        Self { id, coeffs: series_coeffs(id, n) }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    // independent check: B(t) * (e^t - 1)/t == 1 as power series
    fn times_expm1_over_t(c: &[Rational]) -> Vec<Rational> {
        let n = c.len();
        let e: Vec<Rational> = (0..n)
            .map(|k| Rational::new(BigInt::one(), factorial(k as u64 + 1)))
            .collect();
        (0..n)
            .map(|m| (0..=m).map(|k| &c[k] * &e[m - k]).fold(Rational::zero(), |a, b| a + b))
            .collect()
    }

    #[test]
    fn first_bernoulli_numbers() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), int(0));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn recurrence_to_twenty() {
        let b = bernoulli_table(20);
        for n in 1..=20u64 {
            let s: Rational = (0..=n)
                .map(|k| Rational::from_integer(binomial(n + 1, k)) * &b[k as usize])
                .fold(Rational::zero(), |a, x| a + x);
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn listed_tables() {
        assert_eq!(series_coeffs(SeriesId::B, 2), vec![int(1), rat(-1, 2), rat(1, 12)]);
        assert_eq!(series_coeffs(SeriesId::A, 1), vec![int(1), rat(1, 2)]);
        assert_eq!(series_coeffs(SeriesId::C, 0), vec![int(0)]);
    }

    #[test]
    fn b_inverts_expm1_over_t() {
        let prod = times_expm1_over_t(&series_coeffs(SeriesId::B, 15));
        assert_eq!(prod[0], int(1));
        assert!(prod[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn shifts_between_tables() {
        for n in 0..12 {
            let b = series_coeffs(SeriesId::B, n);
            let mut a = b.clone();
            if n >= 1 {
                a[1] += int(1);
            }
            let mut c = b.clone();
            c[0] -= int(1);
            assert_eq!(series_coeffs(SeriesId::A, n), a);
            assert_eq!(series_coeffs(SeriesId::C, n), c);
        }
    }

    #[test]
    fn a_is_b_at_minus_t() {
        // t e^t/(e^t-1) = (-t)/(e^{-t}-1)
        let a = series_coeffs(SeriesId::A, 10);
        let b = series_coeffs(SeriesId::B, 10);
        for k in 0..=10 {
            let sign = if k % 2 == 1 { int(-1) } else { int(1) };
            assert_eq!(a[k], &b[k] * sign);
        }
    }
}
