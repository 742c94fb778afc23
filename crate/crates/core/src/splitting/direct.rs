//! `b_e(m)` as the rank of `Φ_{e,m}: f ↦ f·G^{q−1} mod (x_0^q, …, x_{v−1}^q)`.
//!
//! Two reductions keep the matrices small without changing the rank:
//! columns range over monomials of degree `m` that lie in the box
//! `[0, q−1]^v` (others map to zero) and are not divisible by the lex
//! leading monomial of `G` (those columns are combinations of the rest
//! modulo `G·S_{m−δ}`, which lies in the kernel). The remaining matrix
//! splits into independent blocks, the connected components of the
//! column/row incidence graph, and each block is ranked separately.

use std::collections::HashMap;

use super::ring::GradedHypersurface;
use super::Limits;
use crate::error::{Error, Result};
use crate::ff::{digit_power, MatrixFp, Monomial, PolynomialFp};

#[derive(Clone, Debug)]
pub(crate) struct DirectEngine {
    multiplier: PolynomialFp,
    lead: Monomial,
    q: u64,
    limits: Limits,
}

impl DirectEngine {
    pub fn new(ring: &GradedHypersurface, e: u32, q: u64, limits: Limits) -> Result<Self> {
        let multiplier = digit_power(ring.polynomial(), e, limits.max_power_terms)?;
        let lead = ring
            .polynomial()
            .lex_leading()
            .expect("nonzero generator")
            .0
            .clone();
        Ok(DirectEngine {
            multiplier,
            lead,
            q,
            limits,
        })
    }

    pub fn b(&self, ring: &GradedHypersurface, m: u64) -> Result<u64> {
        let v = ring.nvars() as u64;
        let q = self.q;
        let target = m + ring.degree() as u64 * (q - 1);
        if target > v * (q - 1) {
            return Ok(0);
        }
        let max_exp = u32::try_from(q - 1).map_err(|_| Error::too_large("q", q as u128, u32::MAX as u128))?;
        let m32 = u32::try_from(m).map_err(|_| Error::too_large("degree", m as u128, u32::MAX as u128))?;
        let columns: Vec<Monomial> = crate::ff::bounded_monomials(ring.nvars(), m32, max_exp)
            .into_iter()
            .filter(|mono| !self.lead.divides(mono))
            .collect();
        let side_cap = self.limits.max_matrix_side as u128;
        if columns.len() as u128 > side_cap {
            return Err(Error::too_large(
                format!("matrix columns at m = {m}"),
                columns.len() as u128,
                side_cap,
            ));
        }
        if columns.len() as u64 > ring.dim_r(m)? {
            return Err(Error::InternalCheck(format!(
                "{} normal-form columns exceed dim R_{m} = {}",
                columns.len(),
                ring.dim_r(m)?
            )));
        }

        let mut row_index: HashMap<Monomial, u32> = HashMap::new();
        let mut entries: Vec<Vec<(u32, u32)>> = Vec::with_capacity(columns.len());
        for a in &columns {
            let mut col = Vec::new();
            for (h, c) in self.multiplier.terms() {
                let t = a.mul(h);
                if t.in_frobenius_power(q) {
                    continue;
                }
                let next = row_index.len() as u32;
                let r = *row_index.entry(t).or_insert(next);
                col.push((r, *c));
            }
            entries.push(col);
        }
        let nrows = row_index.len();
        if nrows as u128 > side_cap {
            return Err(Error::too_large(
                format!("matrix rows at m = {m}"),
                nrows as u128,
                side_cap,
            ));
        }
        drop(row_index);

        let blocks = incidence_components(&entries, nrows);
        let field = ring.field();
        let mut rank = 0u64;
        for block in blocks {
            let mut local_row: HashMap<u32, u32> = HashMap::new();
            let mut cols = Vec::with_capacity(block.len());
            for &j in &block {
                let col: Vec<(u32, u32)> = entries[j]
                    .iter()
                    .map(|&(r, c)| {
                        let next = local_row.len() as u32;
                        (*local_row.entry(r).or_insert(next), c)
                    })
                    .collect();
                cols.push(col);
            }
            let mut mat = MatrixFp::new(field, local_row.len());
            for col in cols {
                mat.push_column(col);
            }
            rank += mat.rank() as u64;
        }
        Ok(rank)
    }
}

/// Groups column indices into connected components, two columns being
/// adjacent when they share a row.
fn incidence_components(cols: &[Vec<(u32, u32)>], nrows: usize) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..cols.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut owner: Vec<Option<usize>> = vec![None; nrows];
    for (j, col) in cols.iter().enumerate() {
        for &(r, _) in col {
            match owner[r as usize] {
                None => owner[r as usize] = Some(j),
                Some(k) => {
                    let (a, b) = (find(&mut parent, j), find(&mut parent, k));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for j in 0..cols.len() {
        if cols[j].is_empty() {
            continue;
        }
        let root = find(&mut parent, j);
        groups.entry(root).or_default().push(j);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort_unstable_by_key(|g| g[0]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_split_disjoint_rows() {
        let cols = vec![vec![(0, 1)], vec![(1, 1)], vec![(0, 2), (2, 1)], vec![]];
        assert_eq!(incidence_components(&cols, 3), vec![vec![0, 2], vec![1]]);
    }
}
