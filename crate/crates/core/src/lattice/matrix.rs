//! Dense integer matrices with the exact normal forms (Hermite, Smith) and
//! determinant/kernel/solve routines the rest of the crate is built on.

use num::{Integer, One, Signed, Zero};

use crate::{Int, Rat};

/// A dense matrix over `ℤ`, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

/// Smith normal form `u * a * v = d` with `u`, `v` unimodular and `d`
/// diagonal with a divisibility chain `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
    /// Inverse of `v`, tracked during the reduction.
    pub v_inv: IntMat,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Int::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<Int>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().cloned());
        }
        IntMat {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let converted: Vec<Vec<Int>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect();
        IntMat::from_rows(cols, &converted)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = std::mem::take(self.at_mut(i, j));
            *self.at_mut(i, j) = -v;
        }
    }

    /// `row_i -= q * row_k`
    fn sub_row(&mut self, i: usize, k: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = q * self.at(k, j);
            *self.at_mut(i, j) -= delta;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `col_j -= q * col_k`
    fn sub_col(&mut self, j: usize, k: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = q * self.at(i, k);
            *self.at_mut(i, j) -= delta;
        }
    }

    /// Exact determinant of a square matrix (Bareiss fraction-free
    /// elimination).
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "det requires a square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.clone();
        let mut sign = 1i8;
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a.at(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.at(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                    *a.at_mut(i, j) = num / &prev;
                }
                *a.at_mut(i, k) = Int::zero();
            }
            prev = a.at(k, k).clone();
        }
        let mut d = a.at(n - 1, n - 1).clone();
        if sign < 0 {
            d = -d;
        }
        d
    }

    /// Row Hermite normal form with zero rows removed. Pivots are positive,
    /// entries above each pivot are reduced into `[0, pivot)`. The result is
    /// the unique canonical basis of the row span.
    pub fn hnf(&self) -> IntMat {
        let mut a = self.clone();
        let mut r = 0usize;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            // Gcd-reduce column c among rows r.. until one nonzero remains.
            loop {
                let mut idx: Option<usize> = None;
                for i in r..a.rows {
                    if !a.at(i, c).is_zero()
                        && idx.is_none_or(|b| a.at(i, c).abs() < a.at(b, c).abs())
                    {
                        idx = Some(i);
                    }
                }
                let Some(p) = idx else { break };
                a.swap_rows(r, p);
                let mut again = false;
                for i in r + 1..a.rows {
                    if !a.at(i, c).is_zero() {
                        let q = a.at(i, c) / a.at(r, c);
                        a.sub_row(i, r, &q);
                        if !a.at(i, c).is_zero() {
                            again = true;
                        }
                    }
                }
                if !again {
                    break;
                }
            }
            if a.at(r, c).is_zero() {
                continue;
            }
            if a.at(r, c).is_negative() {
                a.negate_row(r);
            }
            for i in 0..r {
                let q = a.at(i, c).div_floor(a.at(r, c));
                a.sub_row(i, r, &q);
            }
            r += 1;
        }
        IntMat {
            rows: r,
            cols: a.cols,
            data: a.data[..r * a.cols].to_vec(),
        }
    }

    /// Rank of the matrix (equal to the rational rank).
    pub fn rank(&self) -> usize {
        self.hnf().rows
    }

    /// Smith normal form. Returns `(u, d, v)` packed in an [`Snf`] together
    /// with `v^{-1}`, satisfying `u * self * v = d`.
    pub fn snf(&self) -> Snf {
        let mut a = self.clone();
        let mut u = IntMat::identity(self.rows);
        let mut v = IntMat::identity(self.cols);
        let mut v_inv = IntMat::identity(self.cols);
        let n = self.rows.min(self.cols);
        let mut t = 0usize;
        'outer: while t < n {
            // Locate a pivot of minimal absolute value in the trailing block.
            let mut piv: Option<(usize, usize)> = None;
            for i in t..a.rows {
                for j in t..a.cols {
                    if !a.at(i, j).is_zero()
                        && piv.is_none_or(|(pi, pj)| a.at(i, j).abs() < a.at(pi, pj).abs())
                    {
                        piv = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = piv else { break };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);
            // Clear the pivot row and column; restart if a remainder shrinks
            // the pivot.
            loop {
                let mut dirty = false;
                for i in t + 1..a.rows {
                    if !a.at(i, t).is_zero() {
                        let q = a.at(i, t) / a.at(t, t);
                        a.sub_row(i, t, &q);
                        u.sub_row(i, t, &q);
                        if !a.at(i, t).is_zero() {
                            a.swap_rows(t, i);
                            u.swap_rows(t, i);
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..a.cols {
                    if !a.at(t, j).is_zero() {
                        let q = a.at(t, j) / a.at(t, t);
                        a.sub_col(j, t, &q);
                        v.sub_col(j, t, &q);
                        v_inv.add_row(t, j, &q);
                        if !a.at(t, j).is_zero() {
                            a.swap_cols(t, j);
                            v.swap_cols(t, j);
                            v_inv.swap_rows(t, j);
                            dirty = true;
                        }
                    }
                }
                if !dirty {
                    break;
                }
            }
            // Divisibility: pivot must divide every remaining entry.
            for i in t + 1..a.rows {
                for j in t + 1..a.cols {
                    if !(a.at(i, j) % a.at(t, t)).is_zero() {
                        // Fold row i into row t and redo the pivot step.
                        let one = Int::one();
                        a.sub_row(t, i, &(-&one));
                        u.sub_row(t, i, &(-&one));
                        continue 'outer;
                    }
                }
            }
            if a.at(t, t).is_negative() {
                a.negate_row(t);
                u.negate_row(t);
            }
            t += 1;
        }
        Snf {
            u,
            d: a,
            v,
            v_inv,
        }
    }

    /// `row_i += q * row_k` (used for tracking `v^{-1}` in the SNF).
    fn add_row(&mut self, i: usize, k: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = q * self.at(k, j);
            *self.at_mut(i, j) += delta;
        }
    }

    /// Basis of the right kernel `{x : self · x = 0}`, returned as matrix
    /// rows. The basis is primitive (the kernel is saturated by construction).
    pub fn kernel_basis(&self) -> IntMat {
        let snf = self.snf();
        let n = self.cols;
        let mut rank = 0usize;
        for i in 0..self.rows.min(n) {
            if !snf.d.at(i, i).is_zero() {
                rank += 1;
            }
        }
        let mut rows = Vec::with_capacity(n - rank);
        for j in rank..n {
            let col: Vec<Int> = (0..n).map(|i| snf.v.at(i, j).clone()).collect();
            rows.push(col);
        }
        IntMat::from_rows(n, &rows).hnf()
    }

    /// Solve `self · x = b` exactly over the rationals. `None` when the
    /// matrix is singular. Requires a square matrix.
    pub fn solve_rational(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(b.len(), self.rows);
        let n = self.rows;
        let mut a: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rat> = self
                    .row(i)
                    .iter()
                    .map(|x| Rat::from_integer(x.clone()))
                    .collect();
                row.push(b[i].clone());
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&i| !a[i][c].is_zero())?;
            a.swap(c, p);
            let inv = a[c][c].clone();
            for j in c..=n {
                a[c][j] = &a[c][j] / &inv;
            }
            for i in 0..n {
                if i != c && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..=n {
                        let delta = &f * &a[c][j];
                        a[i][j] = &a[i][j] - delta;
                    }
                }
            }
        }
        Some(a.iter().map(|row| row[n].clone()).collect())
    }

    /// Rank of the matrix augmented with an extra rational column. Used for
    /// exact "target in image" tests on degenerate cones.
    pub fn rank_augmented(&self, b: &[Rat]) -> (usize, usize) {
        let n = self.rows;
        let mut a: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rat> = self
                    .row(i)
                    .iter()
                    .map(|x| Rat::from_integer(x.clone()))
                    .collect();
                row.push(b[i].clone());
                row
            })
            .collect();
        let cols = self.cols + 1;
        let mut rank_plain = 0usize;
        let mut rank_aug = 0usize;
        let mut r = 0usize;
        for c in 0..cols {
            let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            for i in r + 1..n {
                if !a[i][c].is_zero() {
                    let f = &a[i][c] / &a[r][c];
                    for j in c..cols {
                        let delta = &f * &a[r][j];
                        a[i][j] = &a[i][j] - delta;
                    }
                }
            }
            if c < self.cols {
                rank_plain += 1;
            }
            rank_aug += 1;
            r += 1;
        }
        (rank_plain, rank_aug)
    }

    /// Membership of a row vector in the integer row span, decided against
    /// the HNF basis by exact division.
    pub fn row_span_contains(hnf_basis: &IntMat, x: &[Int]) -> bool {
        assert_eq!(hnf_basis.cols, x.len());
        let mut x = x.to_vec();
        for i in 0..hnf_basis.rows {
            let pivot_col = match (0..hnf_basis.cols).find(|&j| !hnf_basis.at(i, j).is_zero()) {
                Some(c) => c,
                None => continue,
            };
            if !x[pivot_col].is_zero() {
                let (q, rem) = x[pivot_col].div_rem(hnf_basis.at(i, pivot_col));
                if !rem.is_zero() {
                    return false;
                }
                for j in 0..hnf_basis.cols {
                    let delta = &q * hnf_basis.at(i, j);
                    x[j] -= delta;
                }
            }
        }
        x.iter().all(|v| v.is_zero())
    }
}
