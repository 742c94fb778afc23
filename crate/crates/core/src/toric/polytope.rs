use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::fan::{transpose, FanData};
use super::linalg::{det_i64, dot_int, solve};
use crate::error::{Error, Result};

/// `P = {u : ⟨u, v_i⟩ ≥ −1}` with one vertex per maximal cone.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalPolytope {
    /// Inner normals `v_i`; the H-representation.
    pub normals: Vec<Vec<i64>>,
    /// `vertices[k]` solves `⟨u, v_i⟩ = −1` for the rays of cone `k`.
    pub vertices: Vec<Vec<BigRational>>,
}

impl RationalPolytope {
    pub fn dim(&self) -> usize {
        self.normals.first().map_or(0, Vec::len)
    }

    pub fn contains(&self, u: &[BigRational]) -> bool {
        let minus_one = -BigRational::one();
        self.normals.iter().all(|v| dot_int(u, v) >= minus_one)
    }

    /// Lcm of all vertex-coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.vertices
            .iter()
            .flatten()
            .fold(BigInt::one(), |l, x| l.lcm(x.denom()))
    }
}

/// Vertices of the anticanonical polytope and a dilation `r` making `rP` a
/// lattice polytope whose section ring is generated in degree one.
pub fn polar_and_dilate(fan: &FanData) -> Result<(RationalPolytope, u64)> {
    let minus_one = -BigRational::one();
    let rhs = vec![minus_one.clone(); fan.dim()];
    let mut vertices = Vec::with_capacity(fan.cones().len());
    for (k, cone) in fan.cones().iter().enumerate() {
        let w = solve(&fan.cone_matrix(k), &rhs).ok_or_else(|| {
            Error::Validation(format!("non-simplicial or degenerate cone {k}"))
        })?;
        for (j, v) in fan.rays().iter().enumerate() {
            let s = dot_int(&w, v);
            let in_cone = cone.contains(&j);
            if (in_cone && s != minus_one) || (!in_cone && s <= minus_one) {
                return Err(Error::Validation(format!(
                    "fan is not Fano: vertex of cone {k} gives ⟨w, v_{j}⟩ = {s}"
                )));
            }
        }
        vertices.push(w);
    }
    let poly = RationalPolytope {
        normals: fan.rays().to_vec(),
        vertices,
    };
    let zero = vec![BigRational::zero(); fan.dim()];
    if !poly.contains(&zero) {
        return Err(Error::Validation("fan is not Fano: origin not interior".into()));
    }
    for w in &poly.vertices {
        if !poly.contains(w) {
            return Err(Error::InternalCheck(format!(
                "vertex {w:?} violates an H-constraint"
            )));
        }
    }
    let lcm: u64 = poly
        .denominator_lcm()
        .try_into()
        .map_err(|_| Error::too_large("vertex denominator lcm", u128::MAX, u64::MAX as u128))?;
    let r = lcm * (fan.dim().saturating_sub(1).max(1) as u64);
    Ok((poly, r))
}

/// `vol(−K_X) = d!·vol(P)`, exact.
///
/// Uses Lawrence's signed decomposition over the simple vertices of `P`: for
/// a generic `c = Σ_j γ_j a_j` in the outward normals `a_j = −v_j` at a vertex
/// `w`, that vertex contributes `⟨c, w⟩^d / (|det A| Π_j γ_j)`.
pub fn anticanonical_volume(fan: &FanData) -> Result<BigRational> {
    let (poly, _) = polar_and_dilate(fan)?;
    let d = fan.dim();
    let outward: Vec<Vec<Vec<i64>>> = (0..fan.cones().len())
        .map(|k| {
            fan.cone_matrix(k)
                .into_iter()
                .map(|v| v.into_iter().map(|x| -x).collect())
                .collect()
        })
        .collect();
    let dets: Vec<BigRational> = outward.iter().map(|a| det_i64(a).abs()).collect();
    for t in 2i64.. {
        // Moment-curve directions are generic for all but finitely many t.
        let c: Vec<BigRational> = (0..d)
            .map(|i| BigRational::from_integer(BigInt::from(t).pow(i as u32)))
            .collect();
        let mut total = BigRational::zero();
        let mut generic = true;
        for (k, a) in outward.iter().enumerate() {
            let gamma = solve(&transpose(a), &c).ok_or_else(|| {
                Error::InternalCheck(format!("singular cone {k} in volume"))
            })?;
            if gamma.iter().any(Zero::is_zero) {
                generic = false;
                break;
            }
            let cw = poly.vertices[k]
                .iter()
                .zip(&c)
                .fold(BigRational::zero(), |acc, (x, y)| acc + x * y);
            let num = (0..d).fold(BigRational::one(), |acc, _| acc * &cw);
            let den = gamma.iter().fold(dets[k].clone(), |acc, g| acc * g);
            total += num / den;
        }
        if generic {
            if !total.is_positive() {
                return Err(Error::InternalCheck(format!("nonpositive volume {total}")));
            }
            return Ok(total);
        }
    }
    unreachable!()
}

/// Reference for tests in dimension 2: cone over each edge from the origin,
/// `Σ_i |det(w_a, w_b)|` over the two vertices on facet `i`.
#[cfg(test)]
pub(crate) fn polygon_normalized_area(fan: &FanData, poly: &RationalPolytope) -> BigRational {
    let mut s = BigRational::zero();
    for i in 0..fan.rays().len() {
        let on: Vec<usize> = (0..fan.cones().len())
            .filter(|&k| fan.cones()[k].contains(&i))
            .collect();
        assert_eq!(on.len(), 2);
        let (a, b) = (&poly.vertices[on[0]], &poly.vertices[on[1]]);
        s += (&a[0] * &b[1] - &a[1] * &b[0]).abs();
    }
    s
}
