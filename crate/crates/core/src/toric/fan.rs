use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::linalg::{det_i64, solve, to_rational};
use crate::error::{Error, Result};

/// Seed for the completeness spot-check.
pub const COMPLETENESS_SEED: u64 = 0x5eed_f00d;

/// A complete simplicial fan given by primitive rays and maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanData {
    dim: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
}

impl FanData {
    /// Validates primitivity, cone cardinality and index range, simpliciality,
    /// and spot-checks completeness with `10·d` seeded random directions.
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Input("fan dimension must be positive".into()));
        }
        for (i, ray) in rays.iter().enumerate() {
            if ray.len() != dim {
                return Err(Error::Input(format!(
                    "ray {i} has {} coordinates, expected {dim}",
                    ray.len()
                )));
            }
            let g = ray.iter().fold(0i64, |g, &c| g.gcd(&c));
            if g == 0 {
                return Err(Error::Input(format!("ray {i} is zero")));
            }
            if g != 1 {
                return Err(Error::Input(format!("ray {i} not primitive")));
            }
        }
        for i in 0..rays.len() {
            if rays[..i].contains(&rays[i]) {
                return Err(Error::Input(format!("ray {i} repeated")));
            }
        }
        if cones.is_empty() {
            return Err(Error::Input("fan has no cones".into()));
        }
        for (k, cone) in cones.iter().enumerate() {
            if cone.len() != dim {
                return Err(Error::Input(format!(
                    "cone {k} has {} rays, expected {dim}",
                    cone.len()
                )));
            }
            for &i in cone {
                if i >= rays.len() {
                    return Err(Error::Input(format!(
                        "cone {k} references ray {i}, out of range (have {})",
                        rays.len()
                    )));
                }
            }
            let mut sorted = cone.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != dim {
                return Err(Error::Input(format!("cone {k} repeats a ray")));
            }
        }
        let fan = FanData { dim, rays, cones };
        for k in 0..fan.cones.len() {
            if det_i64(&fan.cone_matrix(k)).is_zero() {
                return Err(Error::Validation(format!(
                    "non-simplicial or degenerate cone {k}"
                )));
            }
        }
        fan.check_completeness(COMPLETENESS_SEED)?;
        Ok(fan)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    /// Rows are the cone's rays.
    pub(crate) fn cone_matrix(&self, k: usize) -> Vec<Vec<i64>> {
        self.cones[k].iter().map(|&i| self.rays[i].clone()).collect()
    }

    fn check_completeness(&self, seed: u64) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = self.dim;
        let mut done = 0;
        while done < 10 * d {
            let w: Vec<i64> = (0..d).map(|_| rng.gen_range(-1000..=1000)).collect();
            if w.iter().all(|&c| c == 0) {
                continue;
            }
            done += 1;
            let target = to_rational(&w);
            let covered = (0..self.cones.len()).any(|k| {
                // Columns are rays: solve Σ λ_j v_j = w.
                let m = transpose(&self.cone_matrix(k));
                solve(&m, &target).is_some_and(|lam| lam.iter().all(|l| !l.is_negative()))
            });
            if !covered {
                return Err(Error::Validation(format!(
                    "fan is not complete: direction {w:?} lies in no cone"
                )));
            }
        }
        Ok(())
    }

    /// Applies `v ↦ A v` to every ray.
    pub fn transformed(&self, a: &[Vec<i64>]) -> Result<FanData> {
        if a.len() != self.dim || a.iter().any(|r| r.len() != self.dim) {
            return Err(Error::Input("transform has wrong shape".into()));
        }
        if det_i64(a).abs() != BigRational::from_integer(1.into()) {
            return Err(Error::Input("transform is not unimodular".into()));
        }
        let rays = self
            .rays
            .iter()
            .map(|v| {
                a.iter()
                    .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
                    .collect()
            })
            .collect();
        FanData::new(self.dim, rays, self.cones.clone())
    }

    /// Product fan: rays of `self` padded by zeros, then rays of `other`.
    pub fn product(&self, other: &FanData) -> Result<FanData> {
        let (d1, d2) = (self.dim, other.dim);
        let mut rays = Vec::new();
        for r in &self.rays {
            let mut v = r.clone();
            v.resize(d1 + d2, 0);
            rays.push(v);
        }
        for r in &other.rays {
            let mut v = vec![0; d1];
            v.extend_from_slice(r);
            rays.push(v);
        }
        let n1 = self.rays.len();
        let mut cones = Vec::new();
        for a in &self.cones {
            for b in &other.cones {
                let mut c = a.clone();
                c.extend(b.iter().map(|&j| j + n1));
                cones.push(c);
            }
        }
        FanData::new(d1 + d2, rays, cones)
    }
}

pub(crate) fn transpose(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j]).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        let err = FanData::new(2, vec![vec![2, 2], vec![-1, 0]], vec![vec![0, 1]]).unwrap_err();
        assert_eq!(err, Error::Input("ray 0 not primitive".into()));
        let rays = vec![vec![1, 0], vec![0, 1], vec![-1, -1]];
        let err = FanData::new(2, rays.clone(), vec![vec![0, 1, 2]]).unwrap_err();
        assert_eq!(err, Error::Input("cone 0 has 3 rays, expected 2".into()));
        let err = FanData::new(2, rays.clone(), vec![vec![0, 7]]).unwrap_err();
        assert!(err.to_string().contains("out of range"));
    }

    #[test]
    fn detects_incomplete_fan() {
        let rays = vec![vec![1, 0], vec![0, 1], vec![-1, -1]];
        let err = FanData::new(2, rays, vec![vec![0, 1], vec![1, 2]]).unwrap_err();
        assert!(err.to_string().contains("not complete"));
    }

    #[test]
    fn degenerate_cone() {
        let rays = vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]];
        let err = FanData::new(2, rays, vec![vec![0, 1], vec![2, 3]]).unwrap_err();
        assert!(err.to_string().contains("non-simplicial or degenerate cone 0"));
    }
}
