//! Slow reference implementations, written independently of the main engines.
//!
//! Nothing here reuses the polynomial, monomial, rank or polytope code of the
//! rest of the crate; only [`PrimeField`] is shared. Keep it naive.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::ff::PrimeField;
use crate::splitting::GradedHypersurface;
use crate::toric::FanData;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_p: u64,
    pub max_q: u64,
    /// Cap on `rows × columns` of the dense matrix.
    pub max_dense_cells: u128,
    pub max_dim: usize,
    /// Cap on points in the integer box around `rP`.
    pub max_lattice_points: u128,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_p: 7,
            max_q: 9,
            max_dense_cells: 60_000_000,
            max_dim: 3,
            max_lattice_points: 100_000,
            seed: 0x0bac1e,
        }
    }
}

type Poly = BTreeMap<Vec<u32>, u32>;

fn poly_mul(f: &PrimeField, a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert(0);
            *slot = f.add(*slot, f.mul(*ca, *cb));
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Every exponent vector of total degree `deg` in `v` variables.
fn all_monomials(v: usize, deg: u32) -> Vec<Vec<u32>> {
    if v == 1 {
        return vec![vec![deg]];
    }
    let mut out = Vec::new();
    for first in 0..=deg {
        for mut rest in all_monomials(v - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn count_monomials(v: usize, deg: u64) -> u128 {
    // C(deg + v − 1, v − 1)
    let mut c: u128 = 1;
    for i in 0..(v as u128 - 1) {
        c = c * (deg as u128 + 1 + i) / (i + 1);
    }
    c
}

/// Row-echelon rank of a dense matrix stored by rows.
fn dense_rank(field: &PrimeField, rows: &mut [Vec<u8>], ncols: usize) -> usize {
    let p = field.p();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = field.inv(u32::from(rows[rank][c])).unwrap();
        let (top, below) = rows.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in below.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let factor = field.mul(u32::from(row[c]), inv);
            let neg = p - factor;
            for k in c..ncols {
                if prow[k] != 0 {
                    row[k] = ((u32::from(row[k]) + neg * u32::from(prow[k])) % p) as u8;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `b_e(m)` as `rank[B|A] − rank[B]` over all monomials of degree
/// `m + δ(q−1)`, where `B` spans `m^{[q]}` in that degree and `A` holds
/// `x^a·G^{q−1}` for every monomial `x^a` of degree `m`.
pub fn naive_b_dimension(
    ring: &GradedHypersurface,
    e: u32,
    m: u64,
    cfg: &OracleConfig,
) -> Result<u64> {
    let field = ring.field();
    let p = field.modulus();
    if p > cfg.max_p {
        return Err(Error::too_large("oracle p", p as u128, cfg.max_p as u128));
    }
    let q = p.checked_pow(e).filter(|&q| q <= cfg.max_q && e >= 1).ok_or_else(|| {
        Error::too_large("oracle q", p.saturating_pow(e) as u128, cfg.max_q as u128)
    })?;
    let v = ring.nvars();
    let delta = u64::from(ring.degree());
    let t = m + delta * (q - 1);
    let rows = count_monomials(v, t);
    let cols = rows + count_monomials(v, m);
    if rows * cols > cfg.max_dense_cells {
        return Err(Error::too_large("oracle dense cells", rows * cols, cfg.max_dense_cells));
    }

    let g: Poly = ring
        .polynomial()
        .terms()
        .iter()
        .map(|(mono, c)| (mono.exponents().to_vec(), *c))
        .collect();
    let mut h: Poly = BTreeMap::from([(vec![0; v], 1)]);
    for _ in 0..q - 1 {
        h = poly_mul(&field, &h, &g);
    }

    let targets = all_monomials(v, t as u32);
    let index: BTreeMap<&Vec<u32>, usize> = targets.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut b_cols: Vec<usize> = Vec::new();
    for (i, x) in targets.iter().enumerate() {
        if x.iter().any(|&a| u64::from(a) >= q) {
            b_cols.push(i);
        }
    }
    let sources = all_monomials(v, m as u32);
    let ncols = b_cols.len() + sources.len();
    let mut mat = vec![vec![0u8; ncols]; targets.len()];
    for (j, &i) in b_cols.iter().enumerate() {
        mat[i][j] = 1;
    }
    for (j, a) in sources.iter().enumerate() {
        let col = b_cols.len() + j;
        for (x, c) in &h {
            let y: Vec<u32> = x.iter().zip(a).map(|(s, t)| s + t).collect();
            mat[index[&y]][col] = *c as u8;
        }
    }
    let mut only_b: Vec<Vec<u8>> = mat.iter().map(|r| r[..b_cols.len()].to_vec()).collect();
    let rank_b = dense_rank(&field, &mut only_b, b_cols.len());
    let rank_all = dense_rank(&field, &mut mat, ncols);
    Ok((rank_all - rank_b) as u64)
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn det3(m: &[[i128; 3]; 3], d: usize) -> i128 {
    match d {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
    }
}

/// `α = r · min_u min_{c_i>0} 1/c_i` by scanning an integer box around `rP`,
/// with vertices found by trying every `d`-subset of rays (Cramer's rule).
pub fn naive_toric_alpha(fan: &FanData, cfg: &OracleConfig) -> Result<BigRational> {
    let d = fan.dim();
    if d > cfg.max_dim {
        return Err(Error::too_large("oracle dimension", d as u128, cfg.max_dim as u128));
    }
    let rays: Vec<Vec<i128>> = fan
        .rays()
        .iter()
        .map(|v| v.iter().map(|&x| x as i128).collect())
        .collect();
    let n = rays.len();

    // Vertices as (numerators, common denominator).
    let mut vertices: Vec<(Vec<i128>, i128)> = Vec::new();
    let mut subset: Vec<usize> = (0..d).collect();
    loop {
        let mut a = [[0i128; 3]; 3];
        for (r, &i) in subset.iter().enumerate() {
            for c in 0..d {
                a[r][c] = rays[i][c];
            }
        }
        let den = det3(&a, d);
        if den != 0 {
            let mut num = Vec::with_capacity(d);
            for c in 0..d {
                let mut ac = a;
                for row in ac.iter_mut().take(d) {
                    row[c] = -1;
                }
                num.push(det3(&ac, d));
            }
            let feasible = rays.iter().all(|v| {
                let s: i128 = num.iter().zip(v).map(|(x, y)| x * y).sum();
                // s/den ≥ −1
                if den > 0 {
                    s >= -den
                } else {
                    s <= -den
                }
            });
            if feasible {
                let g = num.iter().fold(den, |g, &x| gcd(g, x));
                let sign = if den < 0 { -1 } else { 1 };
                let vert = (num.iter().map(|x| sign * x / g).collect(), sign * den / g);
                if !vertices.contains(&vert) {
                    vertices.push(vert);
                }
            }
        }
        // Next d-subset in lexicographic order.
        let mut k = d;
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            if subset[k] < n - d + k {
                subset[k] += 1;
                for j in k + 1..d {
                    subset[j] = subset[j - 1] + 1;
                }
                k = usize::MAX;
                break;
            }
        }
        if k != usize::MAX {
            break;
        }
    }
    if vertices.is_empty() {
        return Err(Error::Validation("polytope has no vertices".into()));
    }

    let lcm = vertices.iter().fold(1i128, |l, (_, den)| l / gcd(l, *den) * den);
    let r = lcm * (d.saturating_sub(1).max(1) as i128);
    let mut lo = vec![i128::MAX; d];
    let mut hi = vec![i128::MIN; d];
    for (num, den) in &vertices {
        for c in 0..d {
            let x = r * num[c];
            lo[c] = lo[c].min(x.div_euclid(*den));
            hi[c] = hi[c].max(-((-x).div_euclid(*den)));
        }
    }
    let size: u128 = lo.iter().zip(&hi).map(|(a, b)| (b - a + 1) as u128).product();
    if size > cfg.max_lattice_points {
        return Err(Error::too_large("oracle lattice box", size, cfg.max_lattice_points));
    }

    let mut best_c: i128 = 0;
    let mut u = lo.clone();
    'scan: loop {
        let cs: Vec<i128> = rays
            .iter()
            .map(|v| v.iter().zip(&u).map(|(a, b)| a * b).sum::<i128>() + r)
            .collect();
        if cs.iter().all(|&c| c >= 0) {
            let top = *cs.iter().max().unwrap();
            if top == 0 {
                return Err(Error::InternalCheck(format!("all c_i zero at {u:?}")));
            }
            best_c = best_c.max(top);
        }
        for c in (0..d).rev() {
            if u[c] < hi[c] {
                u[c] += 1;
                continue 'scan;
            }
            u[c] = lo[c];
        }
        break;
    }
    Ok(BigRational::new(BigInt::from(r), BigInt::from(best_c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::corpus::{named_fan, projective_space};

    #[test]
    fn toric_examples() {
        let cfg = OracleConfig::default();
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(naive_toric_alpha(&projective_space(2), &cfg).unwrap(), q(1, 3));
        assert_eq!(naive_toric_alpha(&named_fan("P1xP1").unwrap(), &cfg).unwrap(), q(1, 2));
        assert_eq!(naive_toric_alpha(&projective_space(1), &cfg).unwrap(), q(1, 2));
    }

    #[test]
    fn hypersurface_examples() {
        let cfg = OracleConfig::default();
        let quadric = GradedHypersurface::diagonal(3, 4, 2).unwrap();
        assert_eq!(naive_b_dimension(&quadric, 1, 1, &cfg).unwrap(), 4);
        let cubic = GradedHypersurface::diagonal(5, 4, 3).unwrap();
        assert_eq!(naive_b_dimension(&cubic, 1, 0, &cfg).unwrap(), 1);
        assert_eq!(naive_b_dimension(&cubic, 1, 2, &cfg).unwrap(), 6);
    }

    #[test]
    fn caps() {
        let cfg = OracleConfig::default();
        let ring = GradedHypersurface::diagonal(11, 4, 3).unwrap();
        assert!(matches!(
            naive_b_dimension(&ring, 1, 0, &cfg),
            Err(Error::InstanceTooLarge { .. })
        ));
        let ring = GradedHypersurface::diagonal(5, 4, 2).unwrap();
        assert!(naive_b_dimension(&ring, 2, 0, &cfg).is_err());
    }
}
