use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::level::{Level, Method, Strategy};
use super::ring::GradedHypersurface;
use super::Limits;
use crate::error::Result;

/// `m_e`, or the marker that the ring is not F-split at this level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threshold {
    Degree(u64),
    NotFSplit,
}

impl Threshold {
    pub fn degree(self) -> Option<u64> {
        match self {
            Threshold::Degree(m) => Some(m),
            Threshold::NotFSplit => None,
        }
    }
}

/// Everything computed at one Frobenius level `e`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplittingProfile {
    pub e: u32,
    pub q: u64,
    /// `b_e(m)` for `m = 0..=max(M_e, 0)`.
    pub b: Vec<u64>,
    /// `dim R_m` over the same range.
    pub dim_r: Vec<u64>,
    /// `M_e = (q−1)(v−δ)`, absent when `v < δ`.
    pub pivot_degree: Option<u64>,
    pub threshold: Threshold,
    /// `m_e / q`.
    pub alpha_e: Option<BigRational>,
    /// `(m_e + 1)/(q − 1)`, an upper bound for `α_F(X; H)`.
    pub alpha_upper: Option<BigRational>,
    /// `a_e`, when `v ≥ δ`.
    pub free_rank: Option<u64>,
    /// `a_e / q^{v−1}`.
    pub s_raw: Option<BigRational>,
    /// `b_e(m) = b_e(M_e − m)` for all `m`.
    pub duality_ok: bool,
    /// Once `I_e(m) ≠ 0`, it stays nonzero in higher degrees.
    pub scan_monotone_ok: bool,
    /// `α_{e−1} + p^{−(e−1)} ≥ α_e + p^{−e}`, when the previous level is known.
    pub monotone_ok: Option<bool>,
    /// `b_e(0) = 1` agrees with the direct Fedder test on `G^{q−1}`.
    pub fedder_consistent: bool,
    pub method: Method,
    pub normal_asserted: bool,
}

impl SplittingProfile {
    pub fn f_split(&self) -> bool {
        matches!(self.threshold, Threshold::Degree(_))
    }

    /// `α_e + 1/q` as an exact rational.
    pub fn alpha_plus_inverse_q(&self) -> Option<BigRational> {
        self.threshold
            .degree()
            .map(|m| ratio(m + 1, self.q))
    }

    /// Indices `m` at which the palindrome fails.
    pub fn duality_failures(&self) -> Vec<u64> {
        duality_failures(&self.b)
    }
}

pub(crate) fn ratio(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn duality_failures(b: &[u64]) -> Vec<u64> {
    let n = b.len();
    (0..n)
        .filter(|&m| b[m] != b[n - 1 - m])
        .map(|m| m as u64)
        .collect()
}

/// Options for [`profiles`].
#[derive(Clone, Copy, Debug, Default)]
pub struct ProfileOptions {
    pub strategy: Strategy,
    pub limits: Limits,
}

/// Profile at a single level, with the monotonicity check against `prev`
/// when supplied.
pub fn profile(
    ring: &GradedHypersurface,
    e: u32,
    prev: Option<&SplittingProfile>,
    opts: ProfileOptions,
) -> Result<SplittingProfile> {
    let level = Level::new(ring, e, opts.strategy, opts.limits)?;
    let q = level.q();
    let pivot = ring.pivot_degree(q);
    let top = pivot.unwrap_or(0);

    let b: Vec<u64> = (0..=top + 1)
        .into_par_iter()
        .map(|m| level.b(m))
        .collect::<Result<_>>()?;
    let dim_r: Vec<u64> = (0..=top + 1).map(|m| ring.dim_r(m)).collect::<Result<_>>()?;
    let tail = b[b.len() - 1];
    let (b, dim_r) = (b[..=top as usize].to_vec(), dim_r[..=top as usize].to_vec());

    let f_split = b[0] == 1;
    let fedder = super::level::fedder_is_fsplit(ring, e)?;

    let first_gap = (0..b.len()).find(|&m| b[m] < dim_r[m]);
    let scan_monotone_ok = match first_gap {
        Some(g) => (g..b.len()).all(|m| b[m] < dim_r[m]),
        None => true,
    };
    let threshold = if !f_split {
        Threshold::NotFSplit
    } else {
        match first_gap {
            Some(g) => Threshold::Degree(g as u64 - 1),
            // every degree up to the pivot is full, so the gap is at top + 1
            None => Threshold::Degree(top),
        }
    };
    let m_e = threshold.degree();
    let alpha_e = m_e.map(|m| ratio(m, q));
    let alpha_upper = m_e.map(|m| ratio(m + 1, q - 1));

    let (free_rank, s_raw) = match pivot {
        Some(_) if tail == 0 => {
            let a: u64 = b.iter().sum();
            let denom = BigInt::from(q).pow(ring.nvars() as u32 - 1);
            (Some(a), Some(BigRational::new(BigInt::from(a), denom)))
        }
        _ => (None, None),
    };

    let duality_ok = pivot.is_some() && tail == 0 && duality_failures(&b).is_empty();
    let monotone_ok = match (prev, m_e) {
        (Some(prev), Some(m)) if prev.e + 1 == e => prev
            .threshold
            .degree()
            .map(|pm| ring.p() * (pm + 1) > m),
        _ => None,
    };

    Ok(SplittingProfile {
        e,
        q,
        b,
        dim_r,
        pivot_degree: pivot,
        threshold,
        alpha_e,
        alpha_upper,
        free_rank,
        s_raw,
        duality_ok,
        scan_monotone_ok,
        monotone_ok,
        fedder_consistent: fedder == f_split,
        method: level.method(),
        normal_asserted: ring.normal_asserted(),
    })
}

/// Profiles for consecutive levels `e_lo..=e_hi`, chaining the
/// monotonicity check.
pub fn profiles(
    ring: &GradedHypersurface,
    e_lo: u32,
    e_hi: u32,
    opts: ProfileOptions,
) -> Result<Vec<SplittingProfile>> {
    let mut out: Vec<SplittingProfile> = Vec::new();
    for e in e_lo..=e_hi {
        let next = profile(ring, e, out.last(), opts)?;
        out.push(next);
    }
    Ok(out)
}
