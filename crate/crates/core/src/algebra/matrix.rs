//! Dense matrices over the rational-function field and exact elimination.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};



use super::poly::Poly;
use super::ratfun::RatFun;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RfMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RatFun>,
}

/// Result of [`solve_linear_exact`].
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub particular: Vec<RatFun>,
    pub kernel: Vec<Vec<RatFun>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("linear system is inconsistent over the function field")]
pub struct Inconsistent;

impl RfMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RfMatrix { rows, cols, data: vec![RatFun::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RfMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = RatFun::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RatFun) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RfMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<RatFun>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RfMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<RatFun>]) -> Self {
        RfMatrix::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        RfMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| RatFun::from_int(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> Vec<RatFun> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<RatFun> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> RfMatrix {
        RfMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatFun::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self[(r, c)] == self[(c, r)]))
    }

    pub fn is_constant(&self) -> bool {
        self.data.iter().all(RatFun::is_constant)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &RatFun)> {
        self.data.iter().position(|e| !e.is_zero()).map(|i| (i / self.cols, i % self.cols, &self.data[i]))
    }

    pub fn entries(&self) -> impl Iterator<Item = &RatFun> {
        self.data.iter()
    }

    pub fn map(&self, f: impl Fn(&RatFun) -> RatFun) -> RfMatrix {
        RfMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul_vec(&self, v: &[RatFun]) -> Vec<RatFun> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = RatFun::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = &self[(r, c)];
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// `u^T M v`.
    pub fn bilinear(&self, u: &[RatFun], v: &[RatFun]) -> RatFun {
        dot(u, &self.mul_vec(v))
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &RfMatrix) -> RfMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RfMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form over the function field. Within each column
    /// the pivot is the nonzero entry of lowest total degree (ties by row).
    pub fn rref(&self) -> (RfMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows)
                .filter(|&r| !m[(r, col)].is_zero())
                .min_by_key(|&r| (m[(r, col)].total_degree(), r))
            else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(row, c)].is_zero() {
                        continue;
                    }
                    let v = &m[(r, c)] - &(&factor * &m[(row, c)]);
                    m[(r, c)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Rank over the function field by fraction-free (Bareiss) elimination on
    /// the denominator-cleared polynomial matrix.
    pub fn generic_rank(&self) -> usize {
        bareiss(&self.cleared_rows()).0
    }

    /// Determinant; panics if the matrix is not square.
    pub fn determinant(&self) -> RatFun {
        assert!(self.is_square(), "determinant of a non-square matrix");
        if self.rows == 0 {
            return RatFun::one();
        }
        let scales: Vec<Poly> = (0..self.rows).map(|r| row_lcm_denominator(&self.row(r))).collect();
        let cleared = self.cleared_rows();
        let (rank, det) = bareiss(&cleared);
        if rank < self.rows {
            return RatFun::zero();
        }
        let denom = scales.iter().fold(Poly::one(), |acc, s| &acc * s);
        RatFun::new(det, denom).expect("nonzero scale")
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<RfMatrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let aug = RfMatrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                RatFun::one()
            } else {
                RatFun::zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(RfMatrix::from_fn(n, n, |r, c| red[(r, c + n)].clone()))
    }

    /// Each row multiplied by the lcm of its denominators.
    fn cleared_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let l = row_lcm_denominator(&row);
                row.iter()
                    .map(|e| {
                        let s = l.div_exact(e.denom()).expect("lcm is a multiple");
                        &s * e.numer()
                    })
                    .collect()
            })
            .collect()
    }
}

fn poly_lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() || a == b {
        return a.clone();
    }
    let g = a.gcd(b);
    (&a.div_exact(&g).expect("gcd divides") * b).monic()
}

fn row_lcm_denominator(row: &[RatFun]) -> Poly {
    row.iter().fold(Poly::one(), |acc, e| poly_lcm(&acc, e.denom()))
}

/// Fraction-free elimination with full pivoting: lowest total degree first,
/// ties by column then row. Returns `(rank, last pivot)`; for a full-rank
/// square input the last pivot is the determinant up to the swap sign, which
/// is folded in.
fn bareiss(input: &[Vec<Poly>]) -> (usize, Poly) {
    let rows = input.len();
    let cols = input.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Poly>> = input.to_vec();
    let mut prev = Poly::one();
    let mut sign = true;
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        for c in k..cols {
            for (r, row) in m.iter().enumerate().skip(k) {
                if row[c].is_zero() {
                    continue;
                }
                let key = (row[c].total_degree(), c, r);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        let Some((_, pc, pr)) = best else { break };
        if pr != k {
            m.swap(pr, k);
            sign = !sign;
        }
        if pc != k {
            for row in m.iter_mut() {
                row.swap(pc, k);
            }
            sign = !sign;
        }
        rank += 1;
        let pivot = m[k][k].clone();
        for r in k + 1..rows {
            let lead = m[r][k].clone();
            for c in k + 1..cols {
                let num = &(&pivot * &m[r][c]) - &(&lead * &m[k][c]);
                m[r][c] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[r][k] = Poly::zero();
        }
        prev = pivot;
    }
    let det = if sign { prev } else { -&prev };
    (rank, det)
}

pub fn dot(u: &[RatFun], v: &[RatFun]) -> RatFun {
    assert_eq!(u.len(), v.len(), "dimension mismatch");
    let mut acc = RatFun::zero();
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc = &acc + &(a * b);
        }
    }
    acc
}

/// Solve `A v = b` exactly over the rational-function field.
pub fn solve_linear_exact(a: &RfMatrix, b: &[RatFun]) -> Result<Solution, Inconsistent> {
    assert_eq!(a.rows(), b.len(), "right-hand side length must equal the row count");
    let n = a.cols();
    let aug = RfMatrix::from_fn(a.rows(), n + 1, |r, c| if c < n { a[(r, c)].clone() } else { b[r].clone() });
    let (red, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return Err(Inconsistent);
    }
    let mut particular = vec![RatFun::zero(); n];
    for (row, &col) in pivots.iter().enumerate() {
        particular[col] = red[(row, n)].clone();
    }
    Ok(Solution { particular, kernel: kernel_from_rref(&red, &pivots, n) })
}

fn kernel_from_rref(red: &RfMatrix, pivots: &[usize], n: usize) -> Vec<Vec<RatFun>> {
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![RatFun::zero(); n];
            v[free] = RatFun::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&red[(row, free)];
            }
            v
        })
        .collect()
}

/// Null-space basis with denominators cleared so every entry is a polynomial.
pub fn kernel_basis(a: &RfMatrix) -> Vec<Vec<Poly>> {
    let (red, pivots) = a.rref();
    kernel_from_rref(&red, &pivots, a.cols())
        .into_iter()
        .map(|v| {
            let l = row_lcm_denominator(&v);
            v.iter().map(|e| &l.div_exact(e.denom()).expect("lcm is a multiple") * e.numer()).collect()
        })
        .collect()
}

pub fn generic_rank(a: &RfMatrix) -> usize {
    a.generic_rank()
}

impl Index<(usize, usize)> for RfMatrix {
    type Output = RatFun;
    fn index(&self, (r, c): (usize, usize)) -> &RatFun {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RfMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut RatFun {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &RfMatrix {
    type Output = RfMatrix;
    fn mul(self, rhs: &RfMatrix) -> RfMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        RfMatrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = RatFun::zero();
            for k in 0..self.cols {
                let (a, b) = (&self[(r, k)], &rhs[(k, c)]);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
    }
}

impl Add for &RfMatrix {
    type Output = RfMatrix;
    fn add(self, rhs: &RfMatrix) -> RfMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        RfMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &RfMatrix {
    type Output = RfMatrix;
    fn sub(self, rhs: &RfMatrix) -> RfMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        RfMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &RfMatrix {
    type Output = RfMatrix;
    fn neg(self) -> RfMatrix {
        self.map(|e| -e)
    }
}

/// Outer product `u v^T`.
pub fn outer(u: &[RatFun], v: &[RatFun]) -> RfMatrix {
    RfMatrix::from_fn(u.len(), v.len(), |r, c| &u[r] * &v[c])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> RatFun {
        RatFun::var(i)
    }

    #[test]
    fn identity_solve() {
        let a = RfMatrix::identity(2);
        let s = solve_linear_exact(&a, &[RatFun::one(), RatFun::zero()]).unwrap();
        assert_eq!(s.particular, vec![RatFun::one(), RatFun::zero()]);
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn row_with_variable_kernel() {
        // [[1, x]] v = 0 has kernel (-x, 1).
        let a = RfMatrix::from_rows(vec![vec![RatFun::one(), x(0)]]);
        let s = solve_linear_exact(&a, &[RatFun::zero()]).unwrap();
        assert_eq!(s.kernel, vec![vec![-&x(0), RatFun::one()]]);
        let k = kernel_basis(&a);
        assert_eq!(k, vec![vec![-&Poly::var(0), Poly::one()]]);
        // substitute back
        let v: Vec<RatFun> = k[0].iter().cloned().map(RatFun::from).collect();
        assert!(a.mul_vec(&v).iter().all(RatFun::is_zero));
    }

    #[test]
    fn zero_matrix_kernel_is_standard_basis() {
        let k = kernel_basis(&RfMatrix::zeros(2, 2));
        assert_eq!(k, vec![vec![Poly::one(), Poly::zero()], vec![Poly::zero(), Poly::one()]]);
    }

    #[test]
    fn full_rank_square_has_empty_kernel() {
        let a = RfMatrix::from_rows(vec![vec![x(0), RatFun::one()], vec![RatFun::one(), x(0)]]);
        assert!(kernel_basis(&a).is_empty());
        assert_eq!(a.generic_rank(), 2);
    }

    #[test]
    fn inconsistent_system() {
        let a = RfMatrix::from_rows(vec![vec![RatFun::one()], vec![RatFun::one()]]);
        assert_eq!(solve_linear_exact(&a, &[RatFun::one(), RatFun::zero()]), Err(Inconsistent));
    }

    #[test]
    fn ranks() {
        assert_eq!(RfMatrix::identity(4).generic_rank(), 4);
        assert_eq!(RfMatrix::from_rows(vec![vec![x(0)]]).generic_rank(), 1);
        assert_eq!(RfMatrix::zeros(3, 2).generic_rank(), 0);
        // second row is x times the first
        let a = RfMatrix::from_rows(vec![vec![RatFun::one(), x(1)], vec![x(0), &x(0) * &x(1)]]);
        assert_eq!(a.generic_rank(), 1);
    }

    #[test]
    fn determinant_and_inverse() {
        let a = RfMatrix::from_rows(vec![vec![x(0), RatFun::one()], vec![RatFun::one(), x(1)]]);
        let det = &(&x(0) * &x(1)) - &RatFun::one();
        assert_eq!(a.determinant(), det);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, RfMatrix::identity(2));
        let half = RfMatrix::from_rows(vec![vec![x(0).recip().unwrap(), RatFun::from_int(2)], vec![RatFun::zero(), RatFun::one()]]);
        assert_eq!(half.determinant(), x(0).recip().unwrap());
        let sing = RfMatrix::from_rows(vec![vec![x(0), x(0)], vec![RatFun::one(), RatFun::one()]]);
        assert!(sing.inverse().is_none());
        assert!(sing.determinant().is_zero());
    }

    #[test]
    fn permutation_determinant_sign() {
        let p = RfMatrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(p.determinant(), RatFun::from_int(-1));
    }
}
