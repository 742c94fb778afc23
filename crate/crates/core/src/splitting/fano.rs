use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::profile::{profiles, ratio, ProfileOptions, SplittingProfile};
use super::ring::GradedHypersurface;
use crate::error::{Error, Result};

/// Normalised quantities at one level, with respect to `−K_X = (v−δ)H`.
#[derive(Clone, Debug, PartialEq)]
pub struct FanoLevel {
    pub e: u32,
    /// `α_e / (v−δ)`.
    pub alpha_estimate: BigRational,
    /// `(m_e+1) / ((q−1)(v−δ))`, a rigorous upper bound for `α_F(X)`.
    pub alpha_upper: BigRational,
    /// `s_raw / (v−δ)`.
    pub s_estimate: BigRational,
    /// Halved-sum estimator `2 Σ_{m ≤ (q−1)/2} b_e(m) / q^{v−1}`, only when
    /// `v − δ = 1`.
    pub s_halved: Option<BigRational>,
    /// `alpha_upper < 1/2`: certifies `α_F(X) < 1/2`.
    pub certifies_below_half: bool,
    /// `alpha_estimate ≤ 1/2 + slack` with `slack = 1/(q(v−δ))`. Advisory.
    pub estimate_within_half: bool,
    pub slack: BigRational,
    /// Lower sandwich `2α^{d+1} vol/(d+1)! ≤ s` at the level-`e` estimates. Advisory.
    pub sandwich_lower_ok: bool,
    /// Upper sandwich `s ≤ 2((1/2)^{d+1} − (1/2−α)^{d+1}) vol/(d+1)!`. Advisory.
    pub sandwich_upper_ok: bool,
    /// `s ≤ vol/(2^d (d+1)!)` at the level-`e` estimate. Advisory.
    pub signature_bound_ok: bool,
    /// `vol(H) α_e^{v−1}/(v−1)! ≤ s_raw` on the cone over `(X, H)`. Advisory.
    pub cone_lower_ok: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FanoReport {
    pub coindex: u64,
    /// `d = dim X = v − 2`.
    pub dim: u32,
    /// `vol(−K_X) = δ (v−δ)^{v−2}`.
    pub volume: BigRational,
    /// `vol(−K_X) / (2^d (d+1)!)`.
    pub bound: BigRational,
    pub levels: Vec<FanoLevel>,
    pub profiles: Vec<SplittingProfile>,
}

impl FanoReport {
    /// Smallest rigorous upper bound over the computed levels.
    pub fn best_upper(&self) -> Option<&BigRational> {
        self.levels.iter().map(|l| &l.alpha_upper).min()
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn rpow(x: &BigRational, n: u32) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, _| acc * x)
}

pub fn fano_report(ring: &GradedHypersurface, e_max: u32, opts: ProfileOptions) -> Result<FanoReport> {
    if !ring.is_fano() {
        return Err(Error::NonFano {
            coindex: ring.fano_coindex(),
        });
    }
    let v = ring.nvars() as u32;
    let delta = ring.degree();
    let n = ring.fano_coindex() as u64;
    let d = v - 2;
    let volume = BigRational::from_integer(BigInt::from(delta) * BigInt::from(n).pow(d));
    let bound = &volume / BigRational::from_integer(BigInt::from(2u32).pow(d) * factorial(d + 1));
    let profs = profiles(ring, 1, e_max, opts)?;

    let half = ratio(1, 2);
    let nq = BigRational::from_integer(BigInt::from(n));
    let vol_over = &volume / BigRational::from_integer(factorial(d + 1));
    let mut levels = Vec::with_capacity(profs.len());
    for prof in &profs {
        let m_e = prof.threshold.degree().ok_or(Error::NotFSplit { e: prof.e })?;
        let q = prof.q;
        let alpha_estimate = ratio(m_e, q) / &nq;
        let alpha_upper = ratio(m_e + 1, (q - 1) * n);
        let s_raw = prof.s_raw.clone().ok_or_else(|| {
            Error::InternalCheck(format!("free rank missing at e = {}", prof.e))
        })?;
        let s_estimate = &s_raw / &nq;
        let s_halved = (n == 1).then(|| {
            let half_sum: u64 = prof.b.iter().take(((q - 1) / 2) as usize + 1).sum();
            BigRational::new(
                BigInt::from(2 * half_sum),
                BigInt::from(q).pow(v - 1),
            )
        });
        let slack = ratio(1, q * n);
        let two = BigRational::from_integer(BigInt::from(2));
        let lower = &two * rpow(&alpha_estimate, d + 1) * &vol_over;
        let upper_factor = rpow(&half, d + 1) - rpow(&(&half - &alpha_estimate), d + 1);
        let upper = &two * upper_factor * &vol_over;
        let cone_lower = BigRational::from_integer(BigInt::from(delta))
            * rpow(&ratio(m_e, q), v - 1)
            / BigRational::from_integer(factorial(v - 1));
        levels.push(FanoLevel {
            e: prof.e,
            certifies_below_half: alpha_upper < half,
            estimate_within_half: alpha_estimate <= &half + &slack,
            sandwich_lower_ok: lower <= s_estimate,
            sandwich_upper_ok: s_estimate <= upper,
            signature_bound_ok: s_estimate <= bound,
            cone_lower_ok: cone_lower <= s_raw,
            alpha_estimate,
            alpha_upper,
            s_estimate,
            s_halved,
            slack,
        });
    }
    debug_assert!(levels.iter().all(|l| !l.alpha_estimate.is_zero() || l.alpha_upper > BigRational::zero()));
    Ok(FanoReport {
        coindex: n,
        dim: d,
        volume,
        bound,
        levels,
        profiles: profs,
    })
}
