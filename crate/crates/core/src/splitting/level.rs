use serde::Serialize;

use super::direct::DirectEngine;
use super::ring::GradedHypersurface;
use super::strings::{self, GradedStrings};
use super::Limits;
use crate::error::{Error, Result};
use crate::ff::{digit_power, PolynomialFp};

/// How `b_e(m)` is evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Tensor strings when `G` splits into variable-disjoint groups,
    /// otherwise the direct rank.
    #[default]
    Auto,
    /// Always rank `Φ_{e,m}` directly.
    DirectRank,
    /// Always use the tensor-string decomposition.
    TensorStrings,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    DirectRank,
    TensorStrings,
}

#[derive(Debug)]
enum Engine {
    Direct(DirectEngine),
    Strings(GradedStrings),
}

/// Everything needed to evaluate `b_e(m)` for one ring and one level `e`.
#[derive(Debug)]
pub struct Level<'a> {
    ring: &'a GradedHypersurface,
    e: u32,
    q: u64,
    engine: Engine,
}

impl<'a> Level<'a> {
    pub fn new(ring: &'a GradedHypersurface, e: u32, strategy: Strategy, limits: Limits) -> Result<Self> {
        let q = frobenius_q(ring.p(), e)?;
        let use_strings = match strategy {
            Strategy::Auto => strings::applicable(ring, q, &limits),
            Strategy::DirectRank => false,
            Strategy::TensorStrings => true,
        };
        let engine = if use_strings {
            Engine::Strings(strings::decompose(ring, q, &limits)?)
        } else {
            Engine::Direct(DirectEngine::new(ring, e, q, limits)?)
        };
        Ok(Level { ring, e, q, engine })
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn ring(&self) -> &GradedHypersurface {
        self.ring
    }

    pub fn method(&self) -> Method {
        match self.engine {
            Engine::Direct(_) => Method::DirectRank,
            Engine::Strings(_) => Method::TensorStrings,
        }
    }

    /// `b_e(m) = dim R_m − dim I_e(m)`.
    pub fn b(&self, m: u64) -> Result<u64> {
        let b = match &self.engine {
            Engine::Direct(d) => d.b(self.ring, m)?,
            Engine::Strings(s) => s.count(m, self.q),
        };
        let dim = self.ring.dim_r(m)?;
        if b > dim {
            return Err(Error::InternalCheck(format!(
                "b_{}({m}) = {b} exceeds dim R_{m} = {dim}",
                self.e
            )));
        }
        Ok(b)
    }

    /// Largest `m` with `I_e(m) = 0`.
    pub fn threshold(&self) -> Result<u64> {
        if self.b(0)? == 0 {
            return Err(Error::NotFSplit { e: self.e });
        }
        let cap = self.ring.pivot_degree(self.q).unwrap_or(0) + 1;
        let mut m = 0u64;
        loop {
            if m > cap {
                return Err(Error::InternalCheck(format!(
                    "threshold scan passed M_e + 1 = {cap} without finding I_e(m) ≠ 0"
                )));
            }
            if self.b(m)? < self.ring.dim_r(m)? {
                return Ok(m - 1);
            }
            m += 1;
        }
    }
}

pub(crate) fn frobenius_q(p: u64, e: u32) -> Result<u64> {
    if e == 0 {
        return Err(Error::Input("Frobenius level e must be at least 1".into()));
    }
    let q = p
        .checked_pow(e)
        .filter(|&q| q <= u32::MAX as u64)
        .ok_or_else(|| Error::too_large(format!("p^e for e = {e}"), u128::MAX, u32::MAX as u128))?;
    Ok(q)
}

/// `b_e(m)`, the rank of `Φ_{e,m}`.
pub fn b_dimension(ring: &GradedHypersurface, e: u32, m: u64) -> Result<u64> {
    Level::new(ring, e, Strategy::Auto, Limits::default())?.b(m)
}

/// Outcome of an `I_e` membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    /// `f ∈ I_e(deg f)`.
    pub member: bool,
    /// `f ∈ (G)`, in which case membership holds vacuously.
    pub in_defining_ideal: bool,
}

/// Tests `f ∈ I_e(deg f)`: every monomial of `f·G^{q−1}` must be divisible
/// by some `x_i^q`.
pub fn membership_check(ring: &GradedHypersurface, e: u32, f: &PolynomialFp) -> Result<Membership> {
    if f.nvars() != ring.nvars() || f.field() != ring.field() {
        return Err(Error::Input("element lives in a different polynomial ring".into()));
    }
    if f.is_zero() {
        return Ok(Membership {
            member: true,
            in_defining_ideal: true,
        });
    }
    if f.homogeneous_degree().is_none() {
        return Err(Error::Input("element is not homogeneous".into()));
    }
    let q = frobenius_q(ring.p(), e)?;
    let limits = Limits::default();
    let h = digit_power(ring.polynomial(), e, limits.max_power_terms)?;
    let product = f.mul_capped(&h, limits.max_power_terms)?;
    let member = product.terms().iter().all(|(m, _)| m.in_frobenius_power(q));
    let in_defining_ideal = f.remainder_mod(ring.polynomial()).is_zero();
    Ok(Membership {
        member,
        in_defining_ideal,
    })
}

/// F-splitness at level `e`: `G^{q−1}` has a monomial with every exponent
/// at most `q − 1`.
pub fn fedder_is_fsplit(ring: &GradedHypersurface, e: u32) -> Result<bool> {
    let q = frobenius_q(ring.p(), e)?;
    let h = digit_power(ring.polynomial(), e, Limits::default().max_power_terms)?;
    Ok(h.terms().iter().any(|(m, _)| !m.in_frobenius_power(q)))
}

/// `m_e`, the largest degree with vanishing splitting subspace.
pub fn m_threshold(ring: &GradedHypersurface, e: u32) -> Result<u64> {
    Level::new(ring, e, Strategy::Auto, Limits::default())?.threshold()
}

/// Free rank `a_e = Σ_{m ≤ M_e} b_e(m)` of a Fano hypersurface ring.
pub fn free_rank(ring: &GradedHypersurface, e: u32) -> Result<u64> {
    if !ring.is_fano() {
        return Err(Error::NonFano {
            coindex: ring.fano_coindex(),
        });
    }
    let level = Level::new(ring, e, Strategy::Auto, Limits::default())?;
    if level.b(0)? == 0 {
        return Err(Error::NotFSplit { e });
    }
    let pivot = ring.pivot_degree(level.q()).expect("Fano ring has a pivot degree");
    let mut sum = 0u64;
    for m in 0..=pivot {
        sum += level.b(m)?;
    }
    let tail = level.b(pivot + 1)?;
    if tail != 0 {
        return Err(Error::InternalCheck(format!(
            "b_{e}({}) = {tail} past the duality pivot",
            pivot + 1
        )));
    }
    Ok(sum)
}
