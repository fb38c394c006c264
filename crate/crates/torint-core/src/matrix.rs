//! Dense integer matrices with arbitrary-precision entries, plus the two
//! normal forms everything else is built on: column-style Hermite normal form
//! and Smith normal form with unimodular transforms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Row-major integer matrix. Entries are exact `BigInt`s; no floating point
/// enters any computation in this crate.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

/// Smith normal form `U * A * V = S` with `U`, `V` unimodular and `S`
/// diagonal, nonnegative, each diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntMatrix::new(rows, cols, entries)
    }

    /// Build from a list of rows.
    pub fn from_rows(rows: &[Vec<BigInt>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix::new(rows.len(), cols, rows.concat())
    }

    /// Build from a list of columns, each of length `ambient`.
    pub fn from_columns(ambient: usize, columns: &[Vec<BigInt>]) -> Self {
        assert!(columns.iter().all(|c| c.len() == ambient), "ragged columns");
        IntMatrix::from_fn(ambient, columns.len(), |i, j| columns[j][i].clone())
    }

    /// Convenience constructor from machine integers, row by row.
    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let big: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntMatrix::from_rows(&big)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        IntMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| &self[(i, k)] * &other[(k, j)]).sum()
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|k| &self[(i, k)] * &v[k]).sum())
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        IntMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn col_is_zero(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self[(i, j)].is_zero())
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    /// `col_dest += q * col_src`
    fn add_col_multiple(&mut self, dest: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, dest)] + q * &self[(i, src)];
            self[(i, dest)] = v;
        }
    }

    /// `(col_a, col_b) <- (x*col_a + y*col_b, z*col_a + w*col_b)`.
    /// The caller guarantees `x*w - y*z = ±1`.
    fn combine_cols(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
        for i in 0..self.rows {
            let va = self[(i, a)].clone();
            let vb = self[(i, b)].clone();
            self[(i, a)] = x * &va + y * &vb;
            self[(i, b)] = z * &va + w * &vb;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    /// `row_dest += q * row_src`
    fn add_row_multiple(&mut self, dest: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(dest, j)] + q * &self[(src, j)];
            self[(dest, j)] = v;
        }
    }

    /// `(row_a, row_b) <- (x*row_a + y*row_b, z*row_a + w*row_b)`.
    fn combine_rows(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
        for j in 0..self.cols {
            let va = self[(a, j)].clone();
            let vb = self[(b, j)].clone();
            self[(a, j)] = x * &va + y * &vb;
            self[(b, j)] = z * &va + w * &vb;
        }
    }

    /// Column-style Hermite normal form: returns `(H, U)` with `H = self * U`,
    /// `U` unimodular, and `H` the canonical column-echelon representative of
    /// the column span: pivots are the topmost nonzero entries, strictly
    /// descending row by row across columns, positive, with every entry to the
    /// left of a pivot in its row reduced into `[0, pivot)`. Zero columns are
    /// pushed to the right.
    pub fn hnf(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.cols);
        let mut pivot_col = 0;
        for row in 0..self.rows {
            if pivot_col >= h.cols {
                break;
            }
            let nonzero = (pivot_col..h.cols).find(|&j| !h[(row, j)].is_zero());
            let Some(first) = nonzero else { continue };
            h.swap_cols(pivot_col, first);
            u.swap_cols(pivot_col, first);
            for j in pivot_col + 1..h.cols {
                if h[(row, j)].is_zero() {
                    continue;
                }
                let a = h[(row, pivot_col)].clone();
                let b = h[(row, j)].clone();
                let eg = a.extended_gcd(&b);
                let (g, x, y) = (eg.gcd, eg.x, eg.y);
                let z = -(&b / &g);
                let w = &a / &g;
                h.combine_cols(pivot_col, j, &x, &y, &z, &w);
                u.combine_cols(pivot_col, j, &x, &y, &z, &w);
            }
            if h[(row, pivot_col)].is_negative() {
                h.negate_col(pivot_col);
                u.negate_col(pivot_col);
            }
            let pivot = h[(row, pivot_col)].clone();
            for j in 0..pivot_col {
                let q = -h[(row, j)].div_floor(&pivot);
                h.add_col_multiple(j, pivot_col, &q);
                u.add_col_multiple(j, pivot_col, &q);
            }
            pivot_col += 1;
        }
        (h, u)
    }

    /// Number of linearly independent columns.
    pub fn rank(&self) -> usize {
        let (h, _) = self.hnf();
        (0..h.cols).filter(|&j| !h.col_is_zero(j)).count()
    }

    /// Basis of the integer kernel `{x : self * x = 0}`, as the columns of the
    /// returned matrix. The kernel of an integer matrix is saturated by
    /// construction.
    pub fn kernel(&self) -> IntMatrix {
        let (h, u) = self.hnf();
        let zero_cols: Vec<usize> = (0..h.cols).filter(|&j| h.col_is_zero(j)).collect();
        IntMatrix::from_fn(self.cols, zero_cols.len(), |i, j| u[(i, zero_cols[j])].clone())
    }

    /// Smith normal form with transforms.
    pub fn snf(&self) -> SnfResult {
        let mut s = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut v = IntMatrix::identity(self.cols);
        let n = self.rows.min(self.cols);

        let mut t = 0;
        while t < n {
            // Locate a nonzero entry in the trailing submatrix.
            let mut pivot = None;
            'search: for i in t..s.rows {
                for j in t..s.cols {
                    if !s[(i, j)].is_zero() {
                        pivot = Some((i, j));
                        break 'search;
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            // Alternate row and column clearing until both are clean; each
            // gcd step strictly shrinks |pivot|, so this terminates.
            loop {
                let mut dirty = false;
                for i in t + 1..s.rows {
                    if s[(i, t)].is_zero() {
                        continue;
                    }
                    let a = s[(t, t)].clone();
                    let b = s[(i, t)].clone();
                    if (&b % &a).is_zero() {
                        let q = -(&b / &a);
                        s.add_row_multiple(i, t, &q);
                        u.add_row_multiple(i, t, &q);
                    } else {
                        let eg = a.extended_gcd(&b);
                        let (g, x, y) = (eg.gcd, eg.x, eg.y);
                        let z = -(&b / &g);
                        let w = &a / &g;
                        s.combine_rows(t, i, &x, &y, &z, &w);
                        u.combine_rows(t, i, &x, &y, &z, &w);
                        dirty = true;
                    }
                }
                for j in t + 1..s.cols {
                    if s[(t, j)].is_zero() {
                        continue;
                    }
                    let a = s[(t, t)].clone();
                    let b = s[(t, j)].clone();
                    if (&b % &a).is_zero() {
                        let q = -(&b / &a);
                        s.add_col_multiple(j, t, &q);
                        v.add_col_multiple(j, t, &q);
                    } else {
                        let eg = a.extended_gcd(&b);
                        let (g, x, y) = (eg.gcd, eg.x, eg.y);
                        let z = -(&b / &g);
                        let w = &a / &g;
                        s.combine_cols(t, j, &x, &y, &z, &w);
                        v.combine_cols(t, j, &x, &y, &z, &w);
                        dirty = true;
                    }
                }
                let col_clean = (t + 1..s.rows).all(|i| s[(i, t)].is_zero());
                let row_clean = (t + 1..s.cols).all(|j| s[(t, j)].is_zero());
                if col_clean && row_clean && !dirty {
                    break;
                }
            }
            t += 1;
        }

        for i in 0..n {
            if s[(i, i)].is_negative() {
                s.negate_row(i);
                u.negate_row(i);
            }
        }

        // Enforce the divisibility chain d_i | d_{i+1}. The transplant trick:
        // fold column j into column i, re-split the 2x2 block, repeat until
        // every adjacent pair divides. Each fix strictly shrinks d_i.
        loop {
            let mut fixed = true;
            for i in 0..n {
                for j in i + 1..n {
                    let a = s[(i, i)].clone();
                    let b = s[(j, j)].clone();
                    if b.is_zero() {
                        continue;
                    }
                    if a.is_zero() {
                        // Move the nonzero entry forward.
                        s.swap_rows(i, j);
                        u.swap_rows(i, j);
                        s.swap_cols(i, j);
                        v.swap_cols(i, j);
                        fixed = false;
                        continue;
                    }
                    if (&b % &a).is_zero() {
                        continue;
                    }
                    // diag(a, b) -> diag(gcd, lcm)
                    s.add_row_multiple(i, j, &BigInt::one());
                    u.add_row_multiple(i, j, &BigInt::one());
                    let eg = a.extended_gcd(&b);
                    let (g, x, y) = (eg.gcd, eg.x, eg.y);
                    let z = -(&b / &g);
                    let w = &a / &g;
                    s.combine_cols(i, j, &x, &y, &z, &w);
                    v.combine_cols(i, j, &x, &y, &z, &w);
                    let q = -(&s[(j, i)] / &s[(i, i)]);
                    s.add_row_multiple(j, i, &q);
                    u.add_row_multiple(j, i, &q);
                    fixed = false;
                }
            }
            if fixed {
                break;
            }
        }

        SnfResult { s, u, v }
    }

    /// Determinant via fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = num / &prev;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    /// Gcd of all `k x k` minors; zero iff the rank is below `k`. Computed as
    /// the product of the first `k` diagonal entries of the Smith form.
    pub fn minor_gcd(&self, k: usize) -> Result<BigInt> {
        if k > self.rows.min(self.cols) {
            return Err(Error::MinorSize {
                size: k,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let snf = self.snf();
        let mut product = BigInt::one();
        for i in 0..k {
            if snf.s[(i, i)].is_zero() {
                return Ok(BigInt::zero());
            }
            product *= &snf.s[(i, i)];
        }
        Ok(product)
    }

    /// Inverse of a unimodular matrix. Since the columns span all of `Z^n`,
    /// the canonical column HNF is the identity and the transform is the
    /// inverse.
    pub fn unimodular_inverse(&self) -> IntMatrix {
        assert_eq!(self.rows, self.cols);
        let (h, u) = self.hnf();
        assert_eq!(h, IntMatrix::identity(self.rows), "matrix is not unimodular");
        u
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows_i64(rows)
    }

    #[test]
    fn hnf_identity_is_fixed() {
        let a = IntMatrix::identity(2);
        let (h, u) = a.hnf();
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_single_entry() {
        let a = m(&[vec![2]]);
        let (h, u) = a.hnf();
        assert_eq!(h, m(&[vec![2]]));
        assert_eq!(u, IntMatrix::identity(1));
    }

    #[test]
    fn hnf_spanning_columns_give_identity() {
        // Columns (2,0), (0,1), (1,1) generate Z^2: brute-force combinations
        // produce e1 = (1,1)-(0,1) and e2 = (0,1).
        let a = m(&[vec![2, 0, 1], vec![0, 1, 1]]);
        let (h, u) = a.hnf();
        assert_eq!(h.column(0), vec![BigInt::one(), BigInt::zero()]);
        assert_eq!(h.column(1), vec![BigInt::zero(), BigInt::one()]);
        assert!(h.col_is_zero(2));
        assert_eq!(a.mul(&u), h);
    }

    #[test]
    fn hnf_transform_is_unimodular() {
        let a = m(&[vec![2, 4, -1], vec![6, 8, 3], vec![0, 5, 7]]);
        let (h, u) = a.hnf();
        assert_eq!(a.mul(&u), h);
        assert_eq!(u.det().abs(), BigInt::one());
    }

    #[test]
    fn snf_already_diagonal() {
        let a = m(&[vec![2, 0], vec![0, 4]]);
        let r = a.snf();
        assert_eq!(r.s, a);
        assert_eq!(r.u.mul(&a).mul(&r.v), r.s);
    }

    #[test]
    fn snf_classic_example() {
        // d1 = gcd of entries = 2, d1*d2 = |det| = 8.
        let a = m(&[vec![2, 4], vec![6, 8]]);
        let r = a.snf();
        assert_eq!(r.s, m(&[vec![2, 0], vec![0, 4]]));
        assert_eq!(r.u.mul(&a).mul(&r.v), r.s);
        assert_eq!(r.u.det().abs(), BigInt::one());
        assert_eq!(r.v.det().abs(), BigInt::one());
    }

    #[test]
    fn snf_zero_matrix() {
        let a = IntMatrix::zero(2, 3);
        let r = a.snf();
        assert_eq!(r.s, a);
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert_eq!(IntMatrix::identity(3).kernel().cols(), 0);
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let k = IntMatrix::zero(1, 2).kernel();
        assert_eq!(k.cols(), 2);
        assert_eq!(k.rank(), 2);
    }

    #[test]
    fn kernel_of_row() {
        // (2, -1) x = 0  <=>  x in span{(1, 2)}.
        let a = m(&[vec![2, -1]]);
        let k = a.kernel();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
        let c = k.column(0);
        assert_eq!((c[0].abs(), c[1].abs()), (BigInt::from(1), BigInt::from(2)));
    }

    #[test]
    fn det_matches_cofactor_values() {
        assert_eq!(m(&[vec![2, 4], vec![6, 8]]).det(), BigInt::from(-8));
        assert_eq!(
            m(&[vec![0, 0, 3], vec![0, 1, 1], vec![1, 0, 0]]).det(),
            BigInt::from(-3)
        );
        assert_eq!(IntMatrix::identity(4).det(), BigInt::one());
    }

    #[test]
    fn minor_gcd_examples() {
        assert_eq!(IntMatrix::identity(3).minor_gcd(3).unwrap(), BigInt::one());
        // Rank-deficient: every 2x2 minor vanishes.
        let a = m(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(a.minor_gcd(2).unwrap(), BigInt::zero());
        // Paper-style 3x3 with |det| = 3: columns e3*, e2*, (3,1,0).
        let b = m(&[vec![0, 0, 3], vec![0, 1, 1], vec![1, 0, 0]]);
        assert_eq!(b.minor_gcd(3).unwrap(), BigInt::from(3));
        assert!(b.minor_gcd(4).is_err());
        assert_eq!(b.minor_gcd(0).unwrap(), BigInt::one());
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let u = m(&[vec![1, 2, 0], vec![0, 1, 3], vec![0, 0, 1]]);
        let inv = u.unimodular_inverse();
        assert_eq!(u.mul(&inv), IntMatrix::identity(3));
        assert_eq!(inv.mul(&u), IntMatrix::identity(3));
    }
}
