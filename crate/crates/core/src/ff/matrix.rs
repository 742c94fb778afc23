use super::PrimeField;

/// Sparse column-major matrix over `F_p`. Stored entries are nonzero and
/// reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFp {
    field: PrimeField,
    nrows: usize,
    cols: Vec<Vec<(u32, u32)>>,
}

impl MatrixFp {
    pub fn new(field: PrimeField, nrows: usize) -> Self {
        MatrixFp {
            field,
            nrows,
            cols: Vec::new(),
        }
    }

    pub fn zeros(field: PrimeField, nrows: usize, ncols: usize) -> Self {
        MatrixFp {
            field,
            nrows,
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = MatrixFp::new(field, n);
        for i in 0..n {
            m.push_column(vec![(i as u32, 1)]);
        }
        m
    }

    /// Builds from dense rows; entries are reduced mod `p`.
    pub fn from_dense(field: PrimeField, rows: &[Vec<u64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = MatrixFp::new(field, nrows);
        for j in 0..ncols {
            let col = (0..nrows)
                .filter_map(|i| {
                    let v = field.reduce(rows[i][j]);
                    (v != 0).then_some((i as u32, v))
                })
                .collect();
            m.cols.push(col);
        }
        m
    }

    /// Appends a column given as `(row, value)` pairs. Duplicate rows are
    /// summed and zeros dropped.
    pub fn push_column(&mut self, mut entries: Vec<(u32, u32)>) {
        let f = self.field;
        entries.sort_unstable_by_key(|e| e.0);
        let mut col: Vec<(u32, u32)> = Vec::with_capacity(entries.len());
        for (r, v) in entries {
            assert!((r as usize) < self.nrows, "row index out of range");
            let v = f.reduce(v as u64);
            match col.last_mut() {
                Some(last) if last.0 == r => last.1 = f.add(last.1, v),
                _ => col.push((r, v)),
            }
        }
        col.retain(|e| e.1 != 0);
        self.cols.push(col);
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(u32, u32)] {
        &self.cols[j]
    }

    pub fn transpose(&self) -> MatrixFp {
        let mut rows: Vec<Vec<(u32, u32)>> = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                rows[i as usize].push((j as u32, v));
            }
        }
        MatrixFp {
            field: self.field,
            nrows: self.cols.len(),
            cols: rows,
        }
    }

    pub fn rank(&self) -> usize {
        rank_mod_p(self)
    }
}

/// Rank over `F_p` by column-wise Gaussian elimination.
///
/// Each column is scattered into a dense accumulator and reduced against
/// the pivots found so far, scanning rows upward from the top; the first
/// row that survives without a pivot becomes a new pivot. Pivot columns
/// are stored sparse and normalised to a leading one, so the result is
/// deterministic and independent of thread scheduling.
pub fn rank_mod_p(m: &MatrixFp) -> usize {
    let f = m.field;
    let p = f.modulus();
    let n = m.nrows;
    if n == 0 || m.cols.is_empty() {
        return 0;
    }
    let mut pivot_of_row: Vec<Option<Vec<(u32, u32)>>> = vec![None; n];
    let mut acc = vec![0u64; n];
    let mut touched: Vec<u32> = Vec::new();
    let mut rank = 0;
    for col in &m.cols {
        if col.is_empty() {
            continue;
        }
        for &(r, v) in col {
            acc[r as usize] = v as u64;
            touched.push(r);
        }
        let mut lo = col[0].0 as usize;
        let mut found: Option<usize> = None;
        while lo < n {
            // next live row at or after `lo`
            let mut r = lo;
            while r < n && acc[r] % p == 0 {
                r += 1;
            }
            if r == n {
                break;
            }
            let a = (acc[r] % p) as u32;
            match &pivot_of_row[r] {
                Some(piv) => {
                    let factor = (p - a as u64) % p;
                    for &(i, v) in piv {
                        let i = i as usize;
                        if acc[i] == 0 {
                            touched.push(i as u32);
                        }
                        acc[i] = (acc[i] + factor * v as u64) % p;
                    }
                    lo = r + 1;
                }
                None => {
                    found = Some(r);
                    break;
                }
            }
        }
        if let Some(r) = found {
            let inv = f.inv((acc[r] % p) as u32).expect("nonzero pivot") as u64;
            let mut piv: Vec<(u32, u32)> = Vec::new();
            touched.sort_unstable();
            touched.dedup();
            for &i in &touched {
                let i = i as usize;
                if i >= r {
                    let v = acc[i] % p;
                    if v != 0 {
                        piv.push((i as u32, (v * inv % p) as u32));
                    }
                }
            }
            pivot_of_row[r] = Some(piv);
            rank += 1;
        }
        for &i in &touched {
            acc[i as usize] = 0;
        }
        touched.clear();
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_examples() {
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(MatrixFp::identity(f7, 5).rank(), 5);
        assert_eq!(MatrixFp::zeros(f7, 3, 4).rank(), 0);
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(MatrixFp::from_dense(f5, &[vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn characteristic_matters() {
        // det = 3 - 2*... : [[1,1],[1,4]] has det 3, singular mod 3 only
        let rows = vec![vec![1, 1], vec![1, 4]];
        assert_eq!(MatrixFp::from_dense(PrimeField::new(3).unwrap(), &rows).rank(), 1);
        assert_eq!(MatrixFp::from_dense(PrimeField::new(5).unwrap(), &rows).rank(), 2);
    }

    fn dense_rank(rows: &[Vec<u64>], p: u64) -> usize {
        let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
        let (n, m) = (a.len(), a.first().map_or(0, Vec::len));
        let mut rank = 0;
        for c in 0..m {
            let Some(piv) = (rank..n).find(|&i| a[i][c] != 0) else { continue };
            a.swap(rank, piv);
            let inv = PrimeField::new(p).unwrap().inv(a[rank][c] as u32).unwrap() as u64;
            for i in 0..n {
                if i != rank && a[i][c] != 0 {
                    let fct = a[i][c] * inv % p;
                    for j in 0..m {
                        a[i][j] = (a[i][j] + p * p - fct * a[rank][j]) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn sparse_rows() -> impl Strategy<Value = (u64, Vec<Vec<u64>>)> {
        (prop::sample::select(vec![2u64, 3, 5, 7, 101]), 1usize..200, 1usize..200).prop_flat_map(
            |(p, n, m)| {
                let cell = prop_oneof![6 => Just(0u64), 1 => 0u64..p];
                (Just(p), prop::collection::vec(prop::collection::vec(cell, m), n))
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn rank_is_transpose_invariant((p, rows) in sparse_rows()) {
            let m = MatrixFp::from_dense(PrimeField::new(p).unwrap(), &rows);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_matches_dense_reference((p, rows) in sparse_rows()) {
            prop_assume!(rows.len() <= 60 && rows[0].len() <= 60);
            let m = MatrixFp::from_dense(PrimeField::new(p).unwrap(), &rows);
            prop_assert_eq!(m.rank(), dense_rank(&rows, p));
        }
    }
}
