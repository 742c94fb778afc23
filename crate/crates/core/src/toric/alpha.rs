use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::fan::FanData;
use super::polytope::{anticanonical_volume, polar_and_dilate, RationalPolytope};
use crate::error::{Error, Result};

/// Default cap on the number of points scanned in the bounding box of `rP`.
pub const DEFAULT_LATTICE_CAP: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct ToricAlphaReport {
    pub dim: usize,
    /// Dilation used.
    pub r: u64,
    pub alpha: BigRational,
    /// Minimizing lattice point of `rP` (lexicographically smallest on ties).
    pub witness_u: Vec<i64>,
    /// Smallest ray index attaining `max_i c_i` at the witness.
    pub witness_ray: usize,
    /// Whether `witness_u` is a vertex of `rP`.
    pub witness_is_vertex: bool,
    /// `c_i = ⟨u, v_i⟩ + r` at the witness.
    pub witness_c: Vec<i64>,
    pub lattice_points: u64,
    /// `α` recomputed at dilation `2r`.
    pub alpha_doubled: BigRational,
    /// `d!·vol(P)`.
    pub volume: BigRational,
    /// `volume / (2^d (d+1)!)`.
    pub bound: BigRational,
    pub vertices: Vec<Vec<BigRational>>,
}

impl ToricAlphaReport {
    pub fn dilation_stable(&self) -> bool {
        self.alpha == self.alpha_doubled
    }
}

/// Result of a scan of `rP ∩ M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Scan {
    pub max_c: i64,
    pub witness: Vec<i64>,
    pub ray: usize,
    pub points: u64,
}

impl Scan {
    /// Larger `max_c` wins; ties go to the lexicographically smaller point.
    fn better(self, other: Scan) -> Scan {
        let points = self.points + other.points;
        let mut best = if other.max_c > self.max_c
            || (other.max_c == self.max_c && other.witness < self.witness)
        {
            other
        } else {
            self
        };
        best.points = points;
        best
    }
}

fn floor_ceil(x: &BigRational) -> (i64, i64) {
    let f: i64 = x.floor().to_integer().try_into().unwrap_or(i64::MIN / 4);
    let c: i64 = x.ceil().to_integer().try_into().unwrap_or(i64::MAX / 4);
    (f, c)
}

/// Bounding box of `rP` from its vertices.
fn bounding_box(poly: &RationalPolytope, r: u64) -> Vec<(i64, i64)> {
    let rr = BigRational::from_integer(BigInt::from(r));
    (0..poly.dim())
        .map(|j| {
            let coords: Vec<BigRational> = poly.vertices.iter().map(|w| &w[j] * &rr).collect();
            let lo = coords.iter().min().unwrap();
            let hi = coords.iter().max().unwrap();
            (floor_ceil(lo).0, floor_ceil(hi).1)
        })
        .collect()
}

pub(crate) fn box_size(poly: &RationalPolytope, r: u64) -> u128 {
    bounding_box(poly, r)
        .iter()
        .fold(1u128, |acc, &(lo, hi)| acc.saturating_mul((hi - lo + 1) as u128))
}

/// Scans every lattice point of `rP`, maximising `max_i c_i`.
pub(crate) fn scan(fan: &FanData, poly: &RationalPolytope, r: u64, cap: u128) -> Result<Scan> {
    let bbox = bounding_box(poly, r);
    let size = box_size(poly, r);
    if size > cap {
        return Err(Error::too_large("lattice box of rP", size, cap));
    }
    let rays = fan.rays();
    let r = r as i64;
    let d = bbox.len();
    let (lo0, hi0) = bbox[0];
    let slabs: Vec<Scan> = (lo0..=hi0)
        .into_par_iter()
        .filter_map(|x0| {
            let mut best: Option<Scan> = None;
            let mut u: Vec<i64> = bbox.iter().map(|b| b.0).collect();
            u[0] = x0;
            let mut c = vec![0i64; rays.len()];
            let mut points = 0u64;
            loop {
                let mut inside = true;
                for (ci, v) in c.iter_mut().zip(rays) {
                    *ci = u.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() + r;
                    if *ci < 0 {
                        inside = false;
                        break;
                    }
                }
                if inside {
                    points += 1;
                    let (ray, &mc) = c
                        .iter()
                        .enumerate()
                        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
                        .unwrap();
                    // Points arrive in lexicographic order within the slab.
                    if best.as_ref().is_none_or(|b| mc > b.max_c) {
                        best = Some(Scan {
                            max_c: mc,
                            witness: u.clone(),
                            ray,
                            points: 0,
                        });
                    }
                }
                let mut j = d - 1;
                loop {
                    if j == 0 {
                        return best.map(|mut b| {
                            b.points = points;
                            b
                        });
                    }
                    if u[j] < bbox[j].1 {
                        u[j] += 1;
                        break;
                    }
                    u[j] = bbox[j].0;
                    j -= 1;
                }
            }
        })
        .collect();
    let best = slabs
        .into_iter()
        .reduce(Scan::better)
        .ok_or_else(|| Error::InternalCheck("rP has no lattice points".into()))?;
    if best.max_c == 0 {
        return Err(Error::InternalCheck(format!(
            "all c_i zero at u = {:?}",
            best.witness
        )));
    }
    Ok(best)
}

/// `α` of the toric Fano variety of `fan`, as `r · min_u min_{c_i>0} 1/c_i`
/// over `u ∈ rP ∩ M`, with volume and signature bound.
pub fn toric_alpha(fan: &FanData) -> Result<ToricAlphaReport> {
    toric_alpha_capped(fan, DEFAULT_LATTICE_CAP)
}

pub fn toric_alpha_capped(fan: &FanData, cap: u128) -> Result<ToricAlphaReport> {
    let (poly, r) = polar_and_dilate(fan)?;
    let at_r = scan(fan, &poly, r, cap)?;
    let alpha = BigRational::new(BigInt::from(r), BigInt::from(at_r.max_c));
    let at_2r = scan(fan, &poly, 2 * r, cap)?;
    let alpha_doubled = BigRational::new(BigInt::from(2 * r), BigInt::from(at_2r.max_c));
    if alpha != alpha_doubled {
        return Err(Error::InternalCheck(format!(
            "dilation instability: α = {alpha} at r = {r} but {alpha_doubled} at 2r (witness {:?})",
            at_2r.witness
        )));
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if alpha > half {
        return Err(Error::InternalCheck(format!(
            "α = {alpha} exceeds 1/2 at witness {:?}",
            at_r.witness
        )));
    }
    let rr = BigRational::from_integer(BigInt::from(r));
    let witness_q: Vec<BigRational> = at_r
        .witness
        .iter()
        .map(|&x| BigRational::from_integer(BigInt::from(x)))
        .collect();
    let witness_is_vertex = poly
        .vertices
        .iter()
        .any(|w| w.iter().zip(&witness_q).all(|(a, b)| &(a * &rr) == b));
    let witness_c = fan
        .rays()
        .iter()
        .map(|v| at_r.witness.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() + r as i64)
        .collect();
    let volume = anticanonical_volume(fan)?;
    let d = fan.dim() as u32;
    let denom = BigInt::from(2).pow(d) * (1..=d + 1).fold(BigInt::one(), |a, k| a * k);
    let bound = &volume / BigRational::from_integer(denom);
    debug_assert!(!bound.is_zero());
    Ok(ToricAlphaReport {
        dim: fan.dim(),
        r,
        alpha,
        witness_u: at_r.witness,
        witness_ray: at_r.ray,
        witness_is_vertex,
        witness_c,
        lattice_points: at_r.points,
        alpha_doubled,
        volume,
        bound,
        vertices: poly.vertices,
    })
}
