//! Dense integer matrices and Smith normal form.
//!
//! Matrices are row-major `i64`; the Smith reduction itself runs over
//! `BigInt` so intermediate transformation entries can never wrap, and the
//! results are converted back (all supported inputs stay far below `i64`).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.concat(),
        }
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<i64>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        assert!(cols.iter().all(|col| col.len() == r), "ragged columns");
        let mut m = Mat::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x += y;
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x -= y;
        }
        out
    }

    pub fn neg(&self) -> Mat {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = -*x;
        }
        out
    }

    pub fn pow(&self, mut e: usize) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut acc = Mat::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &x)| a * x).sum())
            .collect()
    }

    /// Horizontal concatenation [self | other].
    pub fn hconcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)];
            }
        }
        out
    }

    pub fn rows_vec(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form decomposition: `d = u * m * v` with `u`, `v`
/// unimodular, `d` diagonal with a divisibility chain d_1 | d_2 | ...
/// (units first, then growing divisors, zeros last). Inverses of the
/// transforms are tracked alongside, so callers can change basis in both
/// directions without re-inverting.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub u: Mat,
    pub u_inv: Mat,
    pub d: Mat,
    pub v: Mat,
    pub v_inv: Mat,
    /// Diagonal of `d`, length min(rows, cols), zeros included.
    pub diag: Vec<i64>,
}

struct BigMat {
    rows: usize,
    cols: usize,
    a: Vec<BigInt>,
}

impl BigMat {
    fn from(m: &Mat) -> Self {
        BigMat {
            rows: m.rows,
            cols: m.cols,
            a: (0..m.rows)
                .flat_map(|i| m.row(i).iter().map(|&x| BigInt::from(x)))
                .collect(),
        }
    }

    fn identity(n: usize) -> Self {
        let mut a = vec![BigInt::zero(); n * n];
        for i in 0..n {
            a[i * n + i] = BigInt::from(1);
        }
        BigMat {
            rows: n,
            cols: n,
            a,
        }
    }

    fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.a[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..self.cols {
            self.a.swap(i * self.cols + j, k * self.cols + j);
        }
    }

    fn swap_cols(&mut self, j: usize, l: usize) {
        if j == l {
            return;
        }
        for i in 0..self.rows {
            self.a.swap(i * self.cols + j, i * self.cols + l);
        }
    }

    /// row_i += c * row_k
    fn add_row(&mut self, i: usize, k: usize, c: &BigInt) {
        for j in 0..self.cols {
            let t = self.at(k, j) * c;
            let v = self.at(i, j) + t;
            self.set(i, j, v);
        }
    }

    /// col_j += c * col_l
    fn add_col(&mut self, j: usize, l: usize, c: &BigInt) {
        for i in 0..self.rows {
            let t = self.at(i, l) * c;
            let v = self.at(i, j) + t;
            self.set(i, j, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j).clone();
            self.set(i, j, v);
        }
    }

    fn to_mat(&self) -> Mat {
        let mut m = Mat::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = i64::try_from(self.at(i, j)).expect("SNF entry exceeds i64");
            }
        }
        m
    }
}

/// Computes the Smith normal form of `m`.
///
/// Pivots are chosen by minimal absolute value, which keeps the transform
/// entries small at the desk scales this crate targets.
pub fn smith_normal_form(m: &Mat) -> SmithNormalForm {
    let rows = m.rows;
    let cols = m.cols;
    let mut d = BigMat::from(m);
    let mut u = BigMat::identity(rows);
    let mut u_inv = BigMat::identity(rows);
    let mut v = BigMat::identity(cols);
    let mut v_inv = BigMat::identity(cols);

    // Invariant: d = u * m * v throughout. Row op R: d <- R d, u <- R u,
    // u_inv <- u_inv R^{-1}. Column op C: d <- d C, v <- v C, v_inv <- C^{-1} v_inv.
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // Find the pivot: minimal nonzero absolute value in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d.at(i, j).is_zero() {
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => d.at(i, j).abs() < d.at(pi, pj).abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break; // trailing block is zero
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);

        // Clear row and column t; restart whenever a remainder replaces the pivot.
        loop {
            let mut clean = true;
            for i in (t + 1)..rows {
                if d.at(i, t).is_zero() {
                    continue;
                }
                let q = div_round(d.at(i, t), d.at(t, t));
                if !q.is_zero() {
                    let c = -&q;
                    d.add_row(i, t, &c);
                    u.add_row(i, t, &c);
                    u_inv.add_col(t, i, &q);
                }
                if !d.at(i, t).is_zero() {
                    // Remainder is strictly smaller than the pivot: promote it.
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    u_inv.swap_cols(t, i);
                    clean = false;
                }
            }
            for j in (t + 1)..cols {
                if d.at(t, j).is_zero() {
                    continue;
                }
                let q = div_round(d.at(t, j), d.at(t, t));
                if !q.is_zero() {
                    let c = -&q;
                    d.add_col(j, t, &c);
                    v.add_col(j, t, &c);
                    v_inv.add_row(t, j, &q);
                }
                if !d.at(t, j).is_zero() {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    v_inv.swap_rows(t, j);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Row and column are clear; enforce that the pivot divides the
            // trailing block, otherwise fold an offending row in and redo.
            let mut fixed = true;
            'scan: for i in (t + 1)..rows {
                for j in (t + 1)..cols {
                    if !(d.at(i, j) % d.at(t, t)).is_zero() {
                        let one = BigInt::from(1);
                        let minus_one = BigInt::from(-1);
                        d.add_row(t, i, &one);
                        u.add_row(t, i, &one);
                        u_inv.add_col(i, t, &minus_one);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if d.at(t, t).is_negative() {
            // R = diag(.., -1 at t, ..): d <- R d, u <- R u, u_inv <- u_inv R.
            d.negate_row(t);
            u.negate_row(t);
            for i in 0..rows {
                let x = -u_inv.at(i, t).clone();
                u_inv.set(i, t, x);
            }
        }
        t += 1;
    }

    let d_mat = d.to_mat();
    let diag = (0..n).map(|i| d_mat[(i, i)]).collect();
    SmithNormalForm {
        u: u.to_mat(),
        u_inv: u_inv.to_mat(),
        d: d_mat,
        v: v.to_mat(),
        v_inv: v_inv.to_mat(),
        diag,
    }
}

/// Quotient rounded to nearest (ties toward zero), so remainders satisfy
/// |r| <= |b|/2. This is what keeps min-abs pivoting effective.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = (a / b, a % b);
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Exact integer solution of `a x = b`, if one exists.
pub fn solve(a: &Mat, b: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(a.rows, b.len());
    let snf = smith_normal_form(a);
    let ub = snf.u.apply(b);
    let mut y = vec![0i64; a.cols];
    for i in 0..a.rows {
        let d = if i < snf.diag.len() { snf.diag[i] } else { 0 };
        if d == 0 {
            if ub[i] != 0 {
                return None;
            }
        } else {
            if ub[i] % d != 0 {
                return None;
            }
            y[i] = ub[i] / d;
        }
    }
    Some(snf.v.apply(&y))
}

/// Basis of the integer kernel of `a` (columns annihilated by `a`).
pub fn kernel_basis(a: &Mat) -> Vec<Vec<i64>> {
    let snf = smith_normal_form(a);
    let mut basis = Vec::new();
    for j in 0..a.cols {
        let zero_col = j >= snf.diag.len() || snf.diag[j] == 0;
        if zero_col {
            basis.push(snf.v.col(j));
        }
    }
    basis
}

/// Precondition guard shared by constructors that take a declared cyclic
/// order: `gamma^order` must be the identity.
pub fn check_finite_order(gamma: &Mat, order: usize) -> Result<()> {
    if gamma.rows != gamma.cols {
        return Err(Error::validation("action matrix must be square"));
    }
    if order == 0 {
        return Err(Error::validation("cyclic order must be positive"));
    }
    if !gamma.pow(order).is_identity() {
        return Err(Error::validation(format!(
            "matrix does not satisfy gamma^{order} = identity"
        )));
    }
    Ok(())
}
