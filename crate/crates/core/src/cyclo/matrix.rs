use num_integer::Integer;

use super::number::CycNumber;

/// Dense matrix over a cyclotomic field, row-major.
///
/// All entries are held at one common conductor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    entries: Vec<CycNumber>,
}

impl CycMatrix {
    pub fn zeros(rows: usize, cols: usize, conductor: u32) -> Self {
        CycMatrix {
            rows,
            cols,
            conductor,
            entries: vec![CycNumber::zero(conductor); rows * cols],
        }
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        let mut m = Self::zeros(n, n, conductor);
        for i in 0..n {
            m.set(i, i, CycNumber::one(conductor));
        }
        m
    }

    /// Build from rows; `cols` is needed when there are no rows.
    pub fn from_rows(rows: Vec<Vec<CycNumber>>, cols: usize) -> Self {
        let conductor = rows
            .iter()
            .flatten()
            .fold(1u32, |acc, x| acc.lcm(&x.conductor()));
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            entries.extend(row.into_iter().map(|x| x.coerce(conductor)));
        }
        CycMatrix { rows: nrows, cols, conductor, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn get(&self, r: usize, c: usize) -> &CycNumber {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycNumber) {
        if v.conductor() != self.conductor {
            let m = self.conductor.lcm(&v.conductor());
            if m != self.conductor {
                self.recoerce(m);
            }
        }
        self.entries[r * self.cols + c] = v.coerce(self.conductor);
    }

    fn recoerce(&mut self, m: u32) {
        for e in self.entries.iter_mut() {
            *e = e.coerce(m);
        }
        self.conductor = m;
    }

    pub fn row(&self, r: usize) -> &[CycNumber] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[CycNumber]) -> Vec<CycNumber> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(CycNumber::zero(self.conductor), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Reorder rows and columns: result[i][j] = self[row_perm[i]][col_perm[j]].
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, self.cols, self.conductor);
        for (i, &ri) in row_perm.iter().enumerate() {
            for (j, &cj) in col_perm.iter().enumerate() {
                out.entries[i * self.cols + j] = self.get(ri, cj).clone();
            }
        }
        out
    }

    /// Row echelon form by fraction-free (Bareiss) elimination.
    /// Returns the reduced rows and the pivot column of each nonzero row.
    fn echelon(&self) -> (Vec<Vec<CycNumber>>, Vec<usize>) {
        let mut a: Vec<Vec<CycNumber>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut prev_inv = CycNumber::one(self.conductor);
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            let (top, bottom) = a.split_at_mut(r + 1);
            let prow = &top[r];
            let pv = &prow[c];
            for row in bottom.iter_mut() {
                let lead = std::mem::replace(&mut row[c], CycNumber::zero(self.conductor));
                for j in c + 1..self.cols {
                    let mut v = pv * &row[j];
                    if !lead.is_zero() && !prow[j].is_zero() {
                        v -= &(&lead * &prow[j]);
                    }
                    row[j] = &v * &prev_inv;
                }
            }
            prev_inv = pv.inv().expect("pivot is nonzero");
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Exact rank and a basis of the right kernel `{v : M v = 0}`.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<CycNumber>>) {
        let (ech, pivots) = self.echelon();
        let rank = pivots.len();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![CycNumber::zero(self.conductor); self.cols];
            x[free] = CycNumber::one(self.conductor);
            for (i, &pc) in pivots.iter().enumerate().rev() {
                let mut s = CycNumber::zero(self.conductor);
                for j in pc + 1..self.cols {
                    if !x[j].is_zero() && !ech[i][j].is_zero() {
                        s += &(&ech[i][j] * &x[j]);
                    }
                }
                if !s.is_zero() {
                    x[pc] = -(&s * &ech[i][pc].inv().expect("pivot is nonzero"));
                }
            }
            basis.push(x);
        }
        (rank, basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> CycMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        CycMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| CycNumber::from_int(v)).collect()).collect(),
            cols,
        )
    }

    #[test]
    fn identity_has_full_rank() {
        let (r, k) = CycMatrix::identity(3, 1).rank_kernel();
        assert_eq!(r, 3);
        assert!(k.is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let (r, k) = CycMatrix::zeros(2, 5, 1).rank_kernel();
        assert_eq!(r, 0);
        assert_eq!(k.len(), 5);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = int_matrix(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let (r, k) = m.rank_kernel();
        assert_eq!(r, 2);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(CycNumber::is_zero));
        }
    }

    #[test]
    fn cyclotomic_entries() {
        // rows (1, z) and (z^2, z^3) are proportional.
        let z = |k| CycNumber::zeta_pow(5, k);
        let m = CycMatrix::from_rows(vec![vec![z(0), z(1)], vec![z(2), z(3)]], 2);
        let (r, k) = m.rank_kernel();
        assert_eq!(r, 1);
        assert!(m.mul_vec(&k[0]).iter().all(CycNumber::is_zero));
    }
}
