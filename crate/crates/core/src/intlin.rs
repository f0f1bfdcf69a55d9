//! Integer matrices: column echelon form with unimodular transforms, saturated
//! kernels and Smith elementary divisors. Entries are `BigInt`; nothing is ever
//! reduced modulo anything.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct ZMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for ZMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ZMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for ZMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ZMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

/// Result of [`ZMatrix::column_echelon`]: `a * transform = echelon`, and
/// `inverse * transform = I`.
pub struct ColumnEchelon {
    pub echelon: ZMatrix,
    pub transform: ZMatrix,
    pub inverse: ZMatrix,
    pub rank: usize,
}

impl ZMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ZMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ZMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.as_ref().len());
        let mut m = ZMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.as_ref().len(), c, "ragged matrix");
            for (j, &v) in row.as_ref().iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> ZMatrix {
        let mut t = ZMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &ZMatrix) -> ZMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = ZMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &ZMatrix) -> ZMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ZMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Entries as `i64` rows; panics if an entry does not fit.
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| i64::try_from(&self[(r, c)]).expect("entry fits in i64"))
                    .collect()
            })
            .collect()
    }

    /// Column vector from a slice.
    pub fn from_column(v: &[BigInt]) -> ZMatrix {
        ZMatrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// Determinant of a square matrix by cofactor-free fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[(r, k)].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn select_columns(&self, cols: std::ops::Range<usize>) -> ZMatrix {
        let mut out = ZMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (k, c) in cols.clone().enumerate() {
                out[(r, k)] = self[(r, c)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: std::ops::Range<usize>) -> ZMatrix {
        let mut out = ZMatrix::zeros(rows.len(), self.cols);
        for (k, r) in rows.enumerate() {
            for c in 0..self.cols {
                out[(k, c)] = self[(r, c)].clone();
            }
        }
        out
    }

    /// Block matrix `[self | other]`.
    pub fn hcat(&self, other: &ZMatrix) -> ZMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = ZMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                out[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        out
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// col_dst += m * col_src
    fn add_col(&mut self, dst: usize, src: usize, m: &BigInt) {
        for r in 0..self.rows {
            let v = &self[(r, src)] * m;
            self[(r, dst)] += v;
        }
    }

    /// row_dst += m * row_src
    fn add_row(&mut self, dst: usize, src: usize, m: &BigInt) {
        for c in 0..self.cols {
            let v = &self[(src, c)] * m;
            self[(dst, c)] += v;
        }
    }

    /// Column-style Hermite reduction by unimodular column operations.
    pub fn column_echelon(&self) -> ColumnEchelon {
        let mut h = self.clone();
        let mut u = ZMatrix::identity(self.cols);
        let mut uinv = ZMatrix::identity(self.cols);
        let mut pc = 0;
        for r in 0..self.rows {
            if pc == self.cols {
                break;
            }
            loop {
                let best = (pc..self.cols)
                    .filter(|&j| !h[(r, j)].is_zero())
                    .min_by(|&a, &b| h[(r, a)].abs().cmp(&h[(r, b)].abs()));
                let Some(j) = best else { break };
                h.swap_cols(pc, j);
                u.swap_cols(pc, j);
                uinv.swap_rows(pc, j);
                let mut done = true;
                for j in pc + 1..self.cols {
                    if h[(r, j)].is_zero() {
                        continue;
                    }
                    let q = -h[(r, j)].div_floor(&h[(r, pc)]);
                    h.add_col(j, pc, &q);
                    u.add_col(j, pc, &q);
                    uinv.add_row(pc, j, &-&q);
                    if !h[(r, j)].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if !h[(r, pc)].is_zero() {
                pc += 1;
            }
        }
        ColumnEchelon {
            echelon: h,
            transform: u,
            inverse: uinv,
            rank: pc,
        }
    }

    pub fn rank(&self) -> usize {
        self.column_echelon().rank
    }

    /// Basis of the integer kernel (as columns); the kernel is saturated.
    pub fn kernel_basis(&self) -> ZMatrix {
        let ce = self.column_echelon();
        ce.transform.select_columns(ce.rank..self.cols)
    }

    /// Nonzero Smith invariants `d_1 | d_2 | ...`, all positive.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        let mut a = self.clone();
        let n = a.rows.min(a.cols);
        let mut out = Vec::new();
        for t in 0..n {
            let pivot = (t..a.rows)
                .flat_map(|r| (t..a.cols).map(move |c| (r, c)))
                .filter(|&(r, c)| !a[(r, c)].is_zero())
                .min_by(|&x, &y| a[x].abs().cmp(&a[y].abs()));
            let Some((pr, pcol)) = pivot else { break };
            a.swap_rows(t, pr);
            a.swap_cols(t, pcol);
            loop {
                let mut clean = true;
                for r in t + 1..a.rows {
                    if a[(r, t)].is_zero() {
                        continue;
                    }
                    let q = -a[(r, t)].div_floor(&a[(t, t)]);
                    a.add_row(r, t, &q);
                    if !a[(r, t)].is_zero() {
                        clean = false;
                    }
                }
                for c in t + 1..a.cols {
                    if a[(t, c)].is_zero() {
                        continue;
                    }
                    let q = -a[(t, c)].div_floor(&a[(t, t)]);
                    a.add_col(c, t, &q);
                    if !a[(t, c)].is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    // divisibility of the remaining block
                    let bad = (t + 1..a.rows)
                        .flat_map(|r| (t + 1..a.cols).map(move |c| (r, c)))
                        .find(|&(r, c)| !a[(r, c)].is_multiple_of(&a[(t, t)]));
                    match bad {
                        None => break,
                        Some((r, _)) => {
                            let one = BigInt::one();
                            a.add_row(t, r, &one);
                            continue;
                        }
                    }
                }
                // move the smallest entry of row/column t onto the diagonal
                let cand = (t..a.rows)
                    .map(|r| (r, t))
                    .chain((t..a.cols).map(|c| (t, c)))
                    .filter(|&p| !a[p].is_zero())
                    .min_by(|&x, &y| a[x].abs().cmp(&a[y].abs()))
                    .expect("pivot row/column is nonzero");
                a.swap_rows(t, cand.0);
                a.swap_cols(t, cand.1);
            }
            out.push(a[(t, t)].abs());
        }
        out
    }
}
