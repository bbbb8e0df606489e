//! Dense exact linear algebra over ℤ, ℚ and prime fields.
//!
//! Everything in this crate that looks like numerical linear algebra is in
//! fact exact: matrices over arbitrary-precision integers or rationals, with
//! Hermite/Smith normal forms for lattice bookkeeping and Gaussian
//! elimination over F_p for modular ranks. No floating point anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix over ℤ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        IMat {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        IMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] += t;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IMat) -> IMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += b;
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> IMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn transpose(&self) -> IMat {
        let mut out = IMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..i {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Matrix-vector product (vector given as a column in its own Vec).
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> IMat {
        let mut out = IMat::zeros(row_idx.len(), col_idx.len());
        for (i, &ri) in row_idx.iter().enumerate() {
            for (j, &cj) in col_idx.iter().enumerate() {
                out[(i, j)] = self[(ri, cj)].clone();
            }
        }
        out
    }

    pub fn select_columns(&self, col_idx: &[usize]) -> IMat {
        self.submatrix(&(0..self.rows).collect::<Vec<_>>(), col_idx)
    }

    pub fn to_rational(&self) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| BigRational::from(x.clone()))
                .collect(),
        }
    }

    pub fn mod_p(&self, p: u64) -> FpMat {
        let pb = BigInt::from(p);
        let data = self
            .data
            .iter()
            .map(|x| {
                let r = x.mod_floor(&pb);
                let digits = r.to_u64_digits().1;
                digits.first().copied().unwrap_or(0)
            })
            .collect();
        FpMat {
            p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Dense row-major matrix over ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = QMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] += t;
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> QMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Exact integrality test; returns the integer matrix when every entry
    /// has denominator one.
    pub fn to_integer(&self) -> Option<IMat> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            if !x.denom().is_one() {
                return None;
            }
            data.push(x.numer().clone());
        }
        Some(IMat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Least common multiple of all entry denominators.
    pub fn common_denominator(&self) -> BigInt {
        let mut d = BigInt::one();
        for x in &self.data {
            d = d.lcm(x.denom());
        }
        d
    }

    /// Solve A·X = B for a square nonsingular A (self), by Gaussian
    /// elimination over ℚ. Errors when A is singular.
    pub fn solve(&self, b: &QMat) -> Result<QMat> {
        assert_eq!(self.rows, self.cols, "solve needs a square matrix");
        assert_eq!(self.rows, b.rows, "dimension mismatch in solve");
        let n = self.rows;
        let m = b.cols;
        let mut a = self.clone();
        let mut x = b.clone();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero());
            let pivot = pivot.ok_or_else(|| Error::Internal("singular matrix in solve".into()))?;
            if pivot != col {
                a.swap_rows(pivot, col);
                x.swap_rows(pivot, col);
            }
            let pv = a[(col, col)].clone();
            for j in col..n {
                let t = &a[(col, j)] / &pv;
                a[(col, j)] = t;
            }
            for j in 0..m {
                let t = &x[(col, j)] / &pv;
                x[(col, j)] = t;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in col..n {
                    let t = &a[(col, j)] * &f;
                    a[(r, j)] -= t;
                }
                for j in 0..m {
                    let t = &x[(col, j)] * &f;
                    x[(r, j)] -= t;
                }
            }
        }
        Ok(x)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// (rank, pivot column indices) by straightforward rational elimination.
    pub fn rank_profile(&self) -> (usize, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..a.cols {
            if r == a.rows {
                break;
            }
            let pivot = (r..a.rows).find(|&i| !a[(i, col)].is_zero());
            let Some(pivot) = pivot else { continue };
            a.swap_rows(pivot, r);
            let pv = a[(r, col)].clone();
            for i in (r + 1)..a.rows {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let f = &a[(i, col)] / &pv;
                for j in col..a.cols {
                    let t = &a[(r, j)] * &f;
                    a[(i, j)] -= t;
                }
            }
            pivots.push(col);
            r += 1;
        }
        (r, pivots)
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Row-style Hermite normal form.
///
/// Treats the rows of `m` as generators of a subgroup of ℤ^cols and returns a
/// matrix whose rows are a canonical basis (row echelon, positive pivots,
/// entries above a pivot reduced modulo it). Zero rows are dropped.
pub fn hnf_rows(m: &IMat) -> IMat {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    let cols = m.cols;
    let mut pivot_row = 0;
    for col in 0..cols {
        // Euclidean elimination below pivot_row in this column.
        loop {
            let mut best: Option<usize> = None;
            for (i, row) in rows.iter().enumerate().skip(pivot_row) {
                if !row[col].is_zero() {
                    match best {
                        None => best = Some(i),
                        Some(b) => {
                            if row[col].abs() < rows[b][col].abs() {
                                best = Some(i);
                            }
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            rows.swap(pivot_row, b);
            let mut done = true;
            for i in (pivot_row + 1)..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[pivot_row][col]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let t = &rows[pivot_row][j] * &q;
                        rows[i][j] -= t;
                    }
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < rows.len() && !rows[pivot_row][col].is_zero() {
            if rows[pivot_row][col].is_negative() {
                for j in 0..cols {
                    let t = -rows[pivot_row][j].clone();
                    rows[pivot_row][j] = t;
                }
            }
            // Reduce entries above the pivot.
            for i in 0..pivot_row {
                let q = rows[i][col].div_floor(&rows[pivot_row][col]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let t = &rows[pivot_row][j] * &q;
                        rows[i][j] -= t;
                    }
                }
            }
            pivot_row += 1;
        }
    }
    rows.truncate(pivot_row);
    if rows.is_empty() {
        IMat::zeros(0, cols)
    } else {
        IMat::from_rows(rows)
    }
}

/// Elementary divisors (Smith normal form diagonal) of an integer matrix.
///
/// Returned values are positive, in divisibility order d_1 | d_2 | ...; zero
/// diagonal entries (rank deficiency) are not included.
pub fn smith_elementary_divisors(m: &IMat) -> Vec<BigInt> {
    let mut a = m.clone();
    let rows = a.rows;
    let cols = a.cols;
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Find a nonzero entry of minimal absolute value in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[(i, j)].is_zero() {
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if a[(i, j)].abs() < a[(bi, bj)].abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        swap_rows_imat(&mut a, t, bi);
        swap_cols_imat(&mut a, t, bj);
        // Clear row and column t.
        let mut clean = true;
        for i in (t + 1)..rows {
            if a[(i, t)].is_zero() {
                continue;
            }
            let q = a[(i, t)].div_floor(&a[(t, t)]);
            if !q.is_zero() {
                for j in t..cols {
                    let v = &a[(t, j)] * &q;
                    a[(i, j)] -= v;
                }
            }
            if !a[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in (t + 1)..cols {
            if a[(t, j)].is_zero() {
                continue;
            }
            let q = a[(t, j)].div_floor(&a[(t, t)]);
            if !q.is_zero() {
                for i in t..rows {
                    let v = &a[(i, t)] * &q;
                    a[(i, j)] -= v;
                }
            }
            if !a[(t, j)].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Enforce divisibility of the remaining block by a[(t,t)].
        let pivot = a[(t, t)].clone();
        let mut offending = None;
        'scan: for i in (t + 1)..rows {
            for j in (t + 1)..cols {
                if !(&a[(i, j)] % &pivot).is_zero() {
                    offending = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offending {
            for j in t..cols {
                let v = a[(i, j)].clone();
                a[(t, j)] += v;
            }
            continue;
        }
        divisors.push(pivot.abs());
        t += 1;
    }
    divisors
}

fn swap_rows_imat(a: &mut IMat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.cols {
        let x = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = x;
    }
}

fn swap_cols_imat(a: &mut IMat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..a.rows {
        let x = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = x;
    }
}

/// Dense matrix over the prime field F_p (p < 2^63).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMat {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl FpMat {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMat {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(p: u64, rows: Vec<Vec<u64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row.into_iter().map(|x| x % p));
        }
        FpMat {
            p,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn mul_mod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn inv_mod(&self, a: u64) -> u64 {
        // Fermat inverse; p is prime.
        let mut base = a % self.p;
        let mut exp = self.p - 2;
        let mut acc: u64 = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_mod(acc, base);
            }
            base = self.mul_mod(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn mul(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.p, other.p);
        assert_eq!(self.cols, other.rows);
        let mut out = FpMat::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let v = (out.get(i, j) + self.mul_mod(a, b)) % self.p;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc: u64 = 0;
                for j in 0..self.cols {
                    acc = (acc + self.mul_mod(self.get(i, j), v[j])) % self.p;
                }
                acc
            })
            .collect()
    }

    pub fn select_columns(&self, col_idx: &[usize]) -> FpMat {
        let mut out = FpMat::zeros(self.p, self.rows, col_idx.len());
        for i in 0..self.rows {
            for (j, &cj) in col_idx.iter().enumerate() {
                out.set(i, j, self.get(i, cj));
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let pivot = (r..self.rows).find(|&i| self.get(i, col) != 0);
            let Some(pivot) = pivot else { continue };
            if pivot != r {
                for j in 0..self.cols {
                    let a = self.get(r, j);
                    let b = self.get(pivot, j);
                    self.set(r, j, b);
                    self.set(pivot, j, a);
                }
            }
            let inv = self.inv_mod(self.get(r, col));
            for j in col..self.cols {
                let v = self.mul_mod(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, col);
                if f == 0 {
                    continue;
                }
                for j in col..self.cols {
                    let v = (self.get(i, j) + self.p - self.mul_mod(f, self.get(r, j))) % self.p;
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Column rank profile: lexicographically first set of independent columns.
    pub fn column_rank_profile(&self) -> Vec<usize> {
        let mut m = self.clone();
        m.rref()
    }

    /// Solve A·X = B where the columns of A are independent and the system is
    /// consistent. Errors on inconsistency.
    pub fn solve(&self, b: &FpMat) -> Result<FpMat> {
        assert_eq!(self.rows, b.rows);
        let n = self.cols;
        // Augment and reduce.
        let mut aug = FpMat::zeros(self.p, self.rows, n + b.cols);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            for j in 0..b.cols {
                aug.set(i, n + j, b.get(i, j));
            }
        }
        let pivots = aug.rref();
        let lead: Vec<usize> = pivots.iter().copied().take_while(|&c| c < n).collect();
        if lead.len() < pivots.len() {
            return Err(Error::Internal(
                "inconsistent linear system over F_p".into(),
            ));
        }
        if lead.len() < n {
            return Err(Error::Internal("dependent columns in F_p solve".into()));
        }
        let mut x = FpMat::zeros(self.p, n, b.cols);
        for (row, &col) in lead.iter().enumerate() {
            for j in 0..b.cols {
                x.set(col, j, aug.get(row, n + j));
            }
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn hnf_of_simple_lattice() {
        // Rows (2,0),(0,2),(1,1) generate the checkerboard sublattice of Z^2.
        let m = IMat::from_i64_rows(&[vec![2, 0], vec![0, 2], vec![1, 1]]);
        let h = hnf_rows(&m);
        assert_eq!(h.rows, 2);
        assert_eq!(h[(0, 0)], bi(1));
        assert_eq!(h[(0, 1)], bi(1));
        assert_eq!(h[(1, 0)], bi(0));
        assert_eq!(h[(1, 1)], bi(2));
    }

    #[test]
    fn hnf_drops_zero_rows() {
        let m = IMat::from_i64_rows(&[vec![0, 0], vec![3, 6]]);
        let h = hnf_rows(&m);
        assert_eq!(h.rows, 1);
        assert_eq!(h[(0, 0)], bi(3));
        assert_eq!(h[(0, 1)], bi(6));
    }

    #[test]
    fn smith_divisors_diagonal_chain() {
        let m = IMat::from_i64_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let d = smith_elementary_divisors(&m);
        // Classical example: divisors 2 | 2 | 156.
        assert_eq!(d, vec![bi(2), bi(2), bi(156)]);
    }

    #[test]
    fn smith_divisors_rank_deficient() {
        let m = IMat::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        let d = smith_elementary_divisors(&m);
        assert_eq!(d, vec![bi(1)]);
    }

    #[test]
    fn rational_solve_roundtrip() {
        let a = IMat::from_i64_rows(&[vec![2, 1], vec![1, 1]]).to_rational();
        let b = IMat::from_i64_rows(&[vec![3], vec![2]]).to_rational();
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
    }

    #[test]
    fn fp_rank_and_profile() {
        let m = FpMat::from_rows(2, vec![vec![1, 1, 0], vec![1, 1, 1], vec![0, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.column_rank_profile(), vec![0, 2]);
    }

    #[test]
    fn fp_solve_consistent() {
        let a = FpMat::from_rows(5, vec![vec![2, 1], vec![1, 1], vec![0, 3]]);
        let b = FpMat::from_rows(5, vec![vec![3], vec![2], vec![3]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
    }

    #[test]
    fn smith_matches_det_valuation_on_random_grams() {
        // Product of elementary divisors of a nonsingular matrix is |det|;
        // spot-check against cofactor expansion on 3x3 matrices.
        let cases = [
            vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]],
            vec![vec![4, 2, 2], vec![2, 6, 0], vec![2, 0, 8]],
        ];
        for c in &cases {
            let m = IMat::from_i64_rows(c);
            let det = {
                let a = c;
                a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                    - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                    + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
            };
            let prod: BigInt = smith_elementary_divisors(&m).iter().product();
            assert_eq!(prod, bi(det.abs()));
        }
    }
}
