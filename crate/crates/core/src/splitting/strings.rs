//! Graded Jordan strings of multiplication by `G` on `A = S/(x_0^q, …, x_{v−1}^q)`.
//!
//! `b_e(m)` is the rank of `G^{q−1}: A_m → A_{m+δ(q−1)}`. Because
//! `G^q = 0` on `A`, every Jordan string of `G` has length at most `q`, so
//! this rank counts the strings of length exactly `q` that start in degree
//! `m`. When the terms of `G` split into groups on disjoint variable sets,
//! `A` is a tensor product of the corresponding truncated algebras and `G`
//! acts as the sum of commuting pieces. The string decomposition of the
//! whole is then assembled from the pieces' decompositions together with
//! the (characteristic-dependent) decomposition of a tensor product of two
//! strings, both obtained from ranks of powers of the nilpotent operator.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::ring::GradedHypersurface;
use super::Limits;
use crate::error::{Error, Result};
use crate::ff::{bounded_monomials, MatrixFp, Monomial, PolynomialFp, PrimeField};

/// Multiset of graded strings keyed by `(start degree, length)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct GradedStrings {
    counts: BTreeMap<(u64, u64), u64>,
}

impl GradedStrings {
    fn add(&mut self, start: u64, len: u64, n: u64) {
        if n > 0 {
            *self.counts.entry((start, len)).or_insert(0) += n;
        }
    }

    pub fn count(&self, start: u64, len: u64) -> u64 {
        self.counts.get(&(start, len)).copied().unwrap_or(0)
    }

    pub fn total_dimension(&self) -> u128 {
        self.counts
            .iter()
            .map(|(&(_, len), &n)| len as u128 * n as u128)
            .sum()
    }
}

/// Variable groups of `G`: connected components of the "appear in a common
/// term" relation, plus one singleton for each variable `G` does not use.
pub(crate) fn variable_groups(g: &PolynomialFp) -> Vec<Vec<usize>> {
    let v = g.nvars();
    let mut parent: Vec<usize> = (0..v).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (mono, _) in g.terms() {
        let vars: Vec<usize> = (0..v).filter(|&i| mono.exponents()[i] > 0).collect();
        for w in vars.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..v {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Whether the tensor route applies: more than one group, each small
/// enough for its own truncated algebra to be handled directly.
pub(crate) fn applicable(ring: &GradedHypersurface, q: u64, limits: &Limits) -> bool {
    let groups = variable_groups(ring.polynomial());
    groups.len() > 1
        && groups.iter().all(|grp| {
            grp.len() == 1
                || (q as u128)
                    .checked_pow(grp.len() as u32)
                    .is_some_and(|n| n <= limits.max_group_box as u128)
        })
}

pub(crate) fn decompose(ring: &GradedHypersurface, q: u64, limits: &Limits) -> Result<GradedStrings> {
    let g = ring.polynomial();
    let field = ring.field();
    let delta = ring.degree() as u64;
    let mut memo = TensorMemo::new(field);

    let mut acc = GradedStrings::default();
    acc.add(0, 1, 1);
    for group in variable_groups(g) {
        let piece = group_strings(g, &group, q, delta, limits)?;
        let mut next = GradedStrings::default();
        for (&(s1, l1), &n1) in &acc.counts {
            for (&(s2, l2), &n2) in &piece.counts {
                let n = n1
                    .checked_mul(n2)
                    .ok_or_else(|| Error::too_large("string multiplicity", u128::MAX, u64::MAX as u128))?;
                for &(k, len, c) in memo.get(l1, l2).iter() {
                    next.add(s1 + s2 + k * delta, len, n * c);
                }
            }
        }
        acc = next;
    }
    let expected = (q as u128).pow(ring.nvars() as u32);
    if acc.total_dimension() != expected {
        return Err(Error::InternalCheck(format!(
            "string decomposition has total dimension {} instead of q^v = {expected}",
            acc.total_dimension()
        )));
    }
    Ok(acc)
}

/// Strings of the restriction of `G` to one variable group.
fn group_strings(
    g: &PolynomialFp,
    group: &[usize],
    q: u64,
    delta: u64,
    limits: &Limits,
) -> Result<GradedStrings> {
    let terms: Vec<(Vec<u32>, u32)> = g
        .terms()
        .iter()
        .filter(|(m, _)| group.iter().any(|&i| m.exponents()[i] > 0))
        .map(|(m, c)| (group.iter().map(|&i| m.exponents()[i]).collect(), *c))
        .collect();
    let mut out = GradedStrings::default();
    if terms.is_empty() {
        // unused variable: G acts by zero on k[x]/(x^q)
        for j in 0..q {
            out.add(j, 1, 1);
        }
        return Ok(out);
    }
    if group.len() == 1 {
        // c·x^δ on k[x]/(x^q): strings x^r, x^{r+δ}, … for r < δ
        for r in 0..delta.min(q) {
            out.add(r, (q - r).div_ceil(delta), 1);
        }
        return Ok(out);
    }
    let cap = limits.max_group_box as u128;
    let size = (q as u128).checked_pow(group.len() as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::too_large("variable group box", size, cap));
    }
    let field = g.field();
    let nv = group.len();
    let piece = PolynomialFp::from_terms(
        field,
        nv,
        terms.iter().map(|(e, c)| (Monomial::new(e), *c as u64)),
    );
    let max_exp = (q - 1) as u32;
    let top = nv as u64 * (q - 1);
    // rank of T^ℓ from degree d, for every d and ℓ
    let mut ranks: HashMap<(u64, u64), u64> = HashMap::new();
    for d in 0..=top {
        let basis = bounded_monomials(nv, d as u32, max_exp);
        ranks.insert((d, 0), basis.len() as u64);
        let mut images: Vec<PolynomialFp> = basis
            .iter()
            .map(|mono| PolynomialFp::from_terms(field, nv, [(mono.clone(), 1)]))
            .collect();
        let mut ell = 0u64;
        loop {
            ell += 1;
            if d + ell * delta > top {
                break;
            }
            images = images
                .iter()
                .map(|f| truncate(&f.mul(&piece), q))
                .collect();
            let rank = rank_of(field, &images);
            ranks.insert((d, ell), rank);
            if rank == 0 {
                break;
            }
        }
    }
    let r = |d: i128, ell: u64| -> u64 {
        if d < 0 {
            0
        } else {
            ranks.get(&(d as u64, ell)).copied().unwrap_or(0)
        }
    };
    for d in 0..=top {
        for len in 1..=q {
            let di = d as i128;
            let starts_ge = |l: u64| r(di, l - 1) - r(di - delta as i128, l);
            let exact = starts_ge(len) - starts_ge(len + 1);
            out.add(d, len, exact);
        }
    }
    Ok(out)
}

fn truncate(f: &PolynomialFp, q: u64) -> PolynomialFp {
    PolynomialFp::from_terms(
        f.field(),
        f.nvars(),
        f.terms()
            .iter()
            .filter(|(m, _)| !m.in_frobenius_power(q))
            .map(|(m, c)| (m.clone(), *c as u64)),
    )
}

fn rank_of(field: PrimeField, vectors: &[PolynomialFp]) -> u64 {
    let rows: BTreeSet<&Monomial> = vectors.iter().flat_map(|f| f.terms().iter().map(|(m, _)| m)).collect();
    let index: HashMap<&Monomial, u32> = rows.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
    let mut mat = MatrixFp::new(field, rows.len());
    for f in vectors {
        mat.push_column(f.terms().iter().map(|(m, c)| (index[m], *c)).collect());
    }
    mat.rank() as u64
}

/// Decompositions of `J_a ⊗ J_b` (nilpotent strings of lengths `a` and
/// `b`, acting by `T⊗1 + 1⊗T`) into strings `(level offset, length, count)`.
struct TensorMemo {
    field: PrimeField,
    cache: HashMap<(u64, u64), Vec<(u64, u64, u64)>>,
}

impl TensorMemo {
    fn new(field: PrimeField) -> Self {
        TensorMemo {
            field,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, a: u64, b: u64) -> &[(u64, u64, u64)] {
        let key = (a.min(b), a.max(b));
        if !self.cache.contains_key(&key) {
            let value = tensor_strings(self.field, key.0, key.1);
            self.cache.insert(key, value);
        }
        &self.cache[&key]
    }
}

fn tensor_strings(field: PrimeField, a: u64, b: u64) -> Vec<(u64, u64, u64)> {
    if a == 1 {
        return vec![(0, b, 1)];
    }
    let top = a + b - 2;
    // W_k = span{e_i ⊗ f_j : i + j = k}; index by i
    let level = |k: u64| -> (u64, u64) {
        let lo = k.saturating_sub(b - 1);
        let hi = k.min(a - 1);
        (lo, hi)
    };
    // binomials mod p up to a + b
    let n = (a + b) as usize;
    let mut pascal = vec![vec![0u32; n + 1]; n + 1];
    for i in 0..=n {
        pascal[i][0] = 1 % field.p();
        for j in 1..=i {
            pascal[i][j] = field.add(pascal[i - 1][j - 1], if j < i { pascal[i - 1][j] } else { 0 });
        }
    }
    let rank = |k: u64, ell: u64| -> u64 {
        if k + ell > top {
            return 0;
        }
        let (lo, hi) = level(k);
        let (tlo, thi) = level(k + ell);
        if ell == 0 {
            return hi - lo + 1;
        }
        let mut mat = MatrixFp::new(field, (thi - tlo + 1) as usize);
        for i in lo..=hi {
            let j = k - i;
            let mut col = Vec::new();
            for t in 0..=ell {
                let (ni, nj) = (i + t, j + ell - t);
                if ni < a && nj < b {
                    let c = pascal[ell as usize][t as usize];
                    if c != 0 {
                        col.push(((ni - tlo) as u32, c));
                    }
                }
            }
            mat.push_column(col);
        }
        mat.rank() as u64
    };
    let mut table: HashMap<(u64, u64), u64> = HashMap::new();
    for k in 0..=top {
        for ell in 0..=(top - k) {
            let r = rank(k, ell);
            table.insert((k, ell), r);
            if r == 0 {
                break;
            }
        }
    }
    let r = |k: i128, ell: u64| -> u64 {
        if k < 0 {
            0
        } else {
            table.get(&(k as u64, ell)).copied().unwrap_or(0)
        }
    };
    let mut out = Vec::new();
    for k in 0..=top {
        let ki = k as i128;
        let starts_ge = |l: u64| r(ki, l - 1) - r(ki - 1, l);
        for len in 1..=(top - k + 1) {
            let exact = starts_ge(len) - starts_ge(len + 1);
            if exact > 0 {
                out.push((k, len, exact));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings_dim(v: &[(u64, u64, u64)]) -> u64 {
        v.iter().map(|&(_, l, c)| l * c).sum()
    }

    #[test]
    fn tensor_of_strings_char_zero_like() {
        // large p behaves like characteristic zero: J_2 ⊗ J_3 = J_4 ⊕ J_2
        let f = PrimeField::new(101).unwrap();
        let mut got = tensor_strings(f, 2, 3);
        got.sort();
        assert_eq!(got, vec![(0, 4, 1), (1, 2, 1)]);
    }

    #[test]
    fn tensor_of_strings_in_small_characteristic() {
        // over F_2, (T⊗1 + 1⊗T)^2 = T^2⊗1 + 1⊗T^2 = 0 on J_2 ⊗ J_2
        let f = PrimeField::new(2).unwrap();
        let got = tensor_strings(f, 2, 2);
        assert_eq!(strings_dim(&got), 4);
        assert!(got.iter().all(|&(_, len, _)| len <= 2));
        // J_p ⊗ J_p splits into p copies of J_p
        let f3 = PrimeField::new(3).unwrap();
        let got = tensor_strings(f3, 3, 3);
        assert_eq!(got.iter().map(|&(_, l, c)| if l == 3 { c } else { 0 }).sum::<u64>(), 3);
    }

    #[test]
    fn groups_of_diagonal_and_mixed_forms() {
        let f = PrimeField::new(5).unwrap();
        let g = PolynomialFp::from_terms(
            f,
            4,
            [
                (Monomial::new(&[1, 1, 0, 0]), 1),
                (Monomial::new(&[0, 0, 2, 0]), 1),
            ],
        );
        assert_eq!(variable_groups(&g), vec![vec![0, 1], vec![2], vec![3]]);
    }
}
