//! Exact rational linear algebra for small dense systems.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) fn to_rational(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

fn rational_matrix(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    m.iter().map(|r| to_rational(r)).collect()
}

/// Determinant by fraction-exact elimination.
pub(crate) fn det(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if piv != c {
            a.swap(piv, c);
            d = -d;
        }
        let pv = a[c][c].clone();
        d *= &pv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    d
}

pub(crate) fn det_i64(m: &[Vec<i64>]) -> BigRational {
    det(&rational_matrix(m))
}

/// Solves `m x = b` for square `m`; `None` when singular.
pub(crate) fn solve(m: &[Vec<i64>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    solve_rational(&rational_matrix(m), b)
}

pub(crate) fn solve_rational(m: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(piv, c);
        let inv = a[c][c].recip();
        for k in c..=n {
            a[c][k] *= &inv;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in c..=n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub(crate) fn dot_int(u: &[BigRational], v: &[i64]) -> BigRational {
    u.iter()
        .zip(v)
        .fold(BigRational::zero(), |acc, (x, &y)| acc + x * BigInt::from(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_systems() {
        let m = vec![vec![2, 1], vec![1, 3]];
        assert_eq!(det_i64(&m), BigRational::from_integer(5.into()));
        let x = solve(&m, &to_rational(&[3, 4])).unwrap();
        assert_eq!(x, to_rational(&[1, 1]));
        assert!(solve(&[vec![1, 2], vec![2, 4]], &to_rational(&[1, 1])).is_none());
    }
}
