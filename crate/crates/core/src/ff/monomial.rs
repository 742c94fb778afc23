use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type Exponents = SmallVec<[u32; 8]>;

/// A monomial `x^u` with its total degree cached.
///
/// Ordering is graded colex: first by degree, then by the exponent of the
/// last variable (larger first), then the next-to-last, and so on. This is
/// exactly the order of [`Monomial::rank`] within a degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: &[u32]) -> Self {
        Monomial {
            degree: exps.iter().sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub(crate) fn from_exps(exps: Exponents) -> Self {
        Monomial {
            degree: exps.iter().sum(),
            exps,
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize, power: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = power;
        m.degree = power;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    /// Multiplies every exponent by `factor` (the Frobenius twist for
    /// `factor = p^i`).
    pub fn scale(&self, factor: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|a| a * factor).collect(),
            degree: self.degree * factor,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(self.exps.iter())
                .map(|(b, a)| b - a)
                .collect(),
            degree: other.degree - self.degree,
        }
    }

    /// True when some exponent reaches `q`, i.e. `x^u ∈ (x_0^q, …, x_{v−1}^q)`.
    #[inline]
    pub fn in_frobenius_power(&self, q: u64) -> bool {
        self.exps.iter().any(|&a| a as u64 >= q)
    }

    /// Position of this monomial among all monomials of its degree, in
    /// graded colex order.
    pub fn rank(&self) -> usize {
        let v = self.nvars();
        let mut rank = 0usize;
        let mut s = 0usize;
        for j in 0..v.saturating_sub(1) {
            s += self.exps[j] as usize + usize::from(j > 0);
            rank += binomial(s as u64, j as u64 + 1).expect("rank of a countable monomial") as usize;
        }
        rank
    }

    /// Inverse of [`Monomial::rank`].
    pub fn unrank(nvars: usize, degree: u32, mut index: usize) -> Result<Monomial> {
        let count = monomial_count(nvars, degree)?;
        if index >= count {
            return Err(Error::Input(format!(
                "index {index} out of range for {count} monomials"
            )));
        }
        if nvars == 1 {
            return Ok(Monomial::new(&[degree]));
        }
        let top = degree as u64 + nvars as u64 - 2;
        let mut positions = vec![0u64; nvars - 1];
        let mut hi = top;
        for j in (0..nvars - 1).rev() {
            let k = j as u64 + 1;
            // largest s <= hi with C(s, k) <= index
            let (mut lo, mut up) = (j as u64, hi);
            while lo < up {
                let mid = (lo + up).div_ceil(2);
                match binomial(mid, k) {
                    Some(c) if c <= index as u128 => lo = mid,
                    _ => up = mid - 1,
                }
            }
            positions[j] = lo;
            index -= binomial(lo, k).unwrap() as usize;
            hi = lo.saturating_sub(1);
        }
        let mut exps: Exponents = SmallVec::with_capacity(nvars);
        exps.push(positions[0] as u32);
        for j in 1..nvars - 1 {
            exps.push((positions[j] - positions[j - 1] - 1) as u32);
        }
        exps.push((top - positions[nvars - 2]) as u32);
        Ok(Monomial::from_exps(exps))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().rev().zip(other.exps.iter().rev()) {
                match b.cmp(a) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{:?}", self.exps.as_slice())
    }
}

/// `C(n, k)`, or `None` when it does not fit in 128 bits.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Number of monomials of degree `m` in `v` variables, `C(m+v−1, v−1)`.
pub fn monomial_count(v: usize, m: u32) -> Result<usize> {
    if v == 0 {
        return Err(Error::Input("need at least one variable".into()));
    }
    let n = m as u64 + v as u64 - 1;
    let count = binomial(n, v as u64 - 1)
        .ok_or_else(|| Error::too_large("monomial count", u128::MAX, usize::MAX as u128))?;
    usize::try_from(count).map_err(|_| Error::too_large("monomial count", count, usize::MAX as u128))
}

/// All monomials of degree `m` in `v` variables, in graded colex order.
pub fn monomials_of_degree(v: usize, m: u32) -> Result<Vec<Monomial>> {
    let count = monomial_count(v, m)?;
    (0..count).map(|i| Monomial::unrank(v, m, i)).collect()
}

/// Monomials of degree `m` in `v` variables with every exponent at most
/// `max_exp`, sorted in graded colex order.
pub(crate) fn bounded_monomials(v: usize, m: u32, max_exp: u32) -> Vec<Monomial> {
    fn rec(v: usize, left: u32, max_exp: u32, cur: &mut Exponents, out: &mut Vec<Monomial>) {
        if cur.len() + 1 == v {
            if left <= max_exp {
                cur.push(left);
                out.push(Monomial::from_exps(cur.clone()));
                cur.pop();
            }
            return;
        }
        let rest = (v - cur.len() - 1) as u64 * max_exp as u64;
        let lo = (left as u64).saturating_sub(rest) as u32;
        for a in lo..=left.min(max_exp) {
            cur.push(a);
            rec(v, left - a, max_exp, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if v as u64 * max_exp as u64 >= m as u64 {
        rec(v, m, max_exp, &mut SmallVec::new(), &mut out);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn counts_from_examples() {
        let m = monomials_of_degree(2, 0).unwrap();
        assert_eq!(m, vec![Monomial::new(&[0, 0])]);
        assert_eq!(monomials_of_degree(4, 2).unwrap().len(), 10);
        // C(27,3) by the multiplicative formula: 27*26*25/6
        assert_eq!(27 * 26 * 25 / 6, 2925);
        assert_eq!(monomials_of_degree(4, 24).unwrap().len(), 2925);
    }

    #[test]
    fn huge_counts_are_rejected() {
        assert!(matches!(
            monomial_count(200, 4_000_000_000),
            Err(Error::InstanceTooLarge { .. })
        ));
    }

    #[test]
    fn enumeration_is_sorted_and_rank_matches_position() {
        for v in 1..5 {
            for m in 0..7 {
                let all = monomials_of_degree(v, m).unwrap();
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                for (i, mono) in all.iter().enumerate() {
                    assert_eq!(mono.rank(), i);
                    assert_eq!(mono.degree(), m);
                }
            }
        }
    }

    #[test]
    fn bounded_enumeration_filters_exponents() {
        let all = monomials_of_degree(4, 9).unwrap();
        let expect: Vec<_> = all
            .into_iter()
            .filter(|m| m.exponents().iter().all(|&a| a <= 4))
            .collect();
        assert_eq!(bounded_monomials(4, 9, 4), expect);
        assert!(bounded_monomials(3, 10, 3).is_empty());
    }

    proptest! {
        #[test]
        fn rank_unrank_roundtrip(exps in prop::collection::vec(0u32..12, 1..7)) {
            let mono = Monomial::new(&exps);
            prop_assert_eq!(mono.degree(), exps.iter().sum::<u32>());
            let back = Monomial::unrank(mono.nvars(), mono.degree(), mono.rank()).unwrap();
            prop_assert_eq!(back, mono);
        }

        #[test]
        fn order_agrees_with_rank(a in prop::collection::vec(0u32..6, 4), b in prop::collection::vec(0u32..6, 4)) {
            let (x, y) = (Monomial::new(&a), Monomial::new(&b));
            if x.degree() == y.degree() {
                prop_assert_eq!(x.cmp(&y), x.rank().cmp(&y.rank()));
            }
        }
    }
}
