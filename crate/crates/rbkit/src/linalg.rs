//! Small dense linear algebra support: exact integer ranks, thresholded
//! floating-point ranks, and nullspace dimensions via symmetric
//! eigendecomposition.
//!
//! Ranks of integer matrices are certified exactly. A fast elimination
//! modulo a large prime runs first; full rank modulo p already proves full
//! rank over the rationals, and anything short of that falls back to
//! fraction-free elimination over big integers.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Mat<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Mat {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T> Mat<T>
where
    T: Clone + Zero + std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
{
    pub fn identity(n: usize) -> Self
    where
        T: One,
    {
        Mat::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn mul(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        Mat::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = T::zero();
            for i in 0..self.cols {
                acc = acc + self.get(r, i).clone() * other.get(i, c).clone();
            }
            acc
        })
    }

    pub fn add(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, factor: T) -> Mat<T> {
        self.map(|v| v.clone() * factor.clone())
    }
}

/// Kronecker product, consistent with row-major vectorization: the entry
/// at (i * br + p, j * bc + q) is a[i][j] * b[p][q].
pub fn kronecker<T>(a: &Mat<T>, b: &Mat<T>) -> Mat<T>
where
    T: Clone + std::ops::Mul<Output = T>,
{
    Mat::from_fn(a.rows * b.rows, a.cols * b.cols, |r, c| {
        let (i, p) = (r / b.rows, r % b.rows);
        let (j, q) = (c / b.cols, c % b.cols);
        a.get(i, j).clone() * b.get(p, q).clone()
    })
}

const PRIME: u64 = (1 << 61) - 1;

fn mod_p(v: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    let mut r = v % &p;
    if r.is_negative() {
        r += &p;
    }
    let digits = r.to_u64_digits().1;
    digits.first().copied().unwrap_or(0)
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn sub_mod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + PRIME - b
    }
}

/// Rank over the field of p elements; always a lower bound for the
/// rational rank.
fn rank_mod_p(m: &Mat<BigInt>) -> usize {
    let mut a: Vec<Vec<u64>> = (0..m.rows)
        .map(|r| m.row(r).iter().map(mod_p).collect())
        .collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let piv = a[rank][col];
        for r in rank + 1..rows {
            let factor = a[r][col];
            if factor == 0 {
                continue;
            }
            let (upper, lower) = a.split_at_mut(r);
            let pivot_row = &upper[rank];
            for (rc, pc) in lower[0][col..].iter_mut().zip(&pivot_row[col..]) {
                *rc = sub_mod(mul_mod(*rc, piv), mul_mod(*pc, factor));
            }
        }
        rank += 1;
    }
    rank
}

/// Fraction-free elimination; exact over the integers.
fn rank_bareiss(m: &Mat<BigInt>) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            if a[r][col].is_zero() && a[rank][col].is_one() && prev.is_one() {
                continue;
            }
            let (upper, lower) = a.split_at_mut(r);
            let pivot_row = &upper[rank];
            let row = &mut lower[0];
            let lead = row[col].clone();
            for (rc, pc) in row[col + 1..].iter_mut().zip(&pivot_row[col + 1..]) {
                let num = &pivot_row[col] * &*rc - &lead * pc;
                *rc = num / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Exact rank of an integer matrix.
pub fn exact_rank(m: &Mat<BigInt>) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let fast = rank_mod_p(m);
    if fast == m.rows.min(m.cols) {
        // full rank modulo p forces full rank over the rationals
        return fast;
    }
    rank_bareiss(m)
}

/// Numeric rank by partial-pivoted elimination. A pivot counts only if its
/// magnitude exceeds `rel_tol` times the largest entry of the input.
pub fn f64_rank(m: &Mat<f64>, rel_tol: f64) -> usize {
    let scale = m.data.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if scale == 0.0 {
        return 0;
    }
    let tol = rel_tol * scale;
    let mut a: Vec<Vec<f64>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        if a[pivot][col].abs() <= tol {
            continue;
        }
        a.swap(rank, pivot);
        let piv = a[rank][col];
        for r in rank + 1..rows {
            let factor = a[r][col] / piv;
            if factor == 0.0 {
                continue;
            }
            let (upper, lower) = a.split_at_mut(r);
            let pivot_row = &upper[rank];
            for (rc, pc) in lower[0][col..].iter_mut().zip(&pivot_row[col..]) {
                *rc -= factor * pc;
            }
        }
        rank += 1;
    }
    rank
}

/// Nullspace dimension measurement for possibly ill-conditioned data.
#[derive(Clone, Debug)]
pub struct NullspaceReport {
    /// Number of singular values treated as zero.
    pub nullity: usize,
    /// Smallest singular value kept (infinity if all were dropped).
    pub smallest_kept: f64,
    /// Largest singular value dropped (0 if none were).
    pub largest_dropped: f64,
}

impl NullspaceReport {
    /// Ratio between the smallest kept and largest dropped singular value;
    /// large values mean the zero/nonzero split is unambiguous.
    pub fn gap(&self) -> f64 {
        if self.largest_dropped == 0.0 {
            f64::INFINITY
        } else {
            self.smallest_kept / self.largest_dropped
        }
    }
}

/// Dimension of the (approximate) nullspace of `m`: singular values below
/// `rel_tol` times the largest are treated as zero. Works on the Gram
/// matrix, so singular values are recovered as square roots of its
/// eigenvalues.
pub fn nullity(m: &Mat<f64>, rel_tol: f64) -> NullspaceReport {
    let gram = DMatrix::from_fn(m.cols, m.cols, |i, j| {
        (0..m.rows).map(|r| m.get(r, i) * m.get(r, j)).sum::<f64>()
    });
    let eigen = gram.symmetric_eigen();
    let mut sv: Vec<f64> = eigen
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .collect();
    sv.sort_by(|a, b| a.total_cmp(b));
    let top = sv.last().copied().unwrap_or(0.0);
    let cut = rel_tol * top;
    let nullity = sv.iter().take_while(|&&s| s <= cut).count();
    NullspaceReport {
        nullity,
        smallest_kept: sv.get(nullity).copied().unwrap_or(f64::INFINITY),
        largest_dropped: if nullity == 0 { 0.0 } else { sv[nullity - 1] },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[&[i64]]) -> Mat<BigInt> {
        Mat::from_fn(v.len(), v[0].len(), |r, c| BigInt::from(v[r][c]))
    }

    #[test]
    fn exact_rank_basics() {
        assert_eq!(exact_rank(&Mat::<BigInt>::identity(5)), 5);
        assert_eq!(exact_rank(&big(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(exact_rank(&big(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(exact_rank(&big(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
    }

    #[test]
    fn exact_rank_survives_entries_divisible_by_the_prime() {
        // each entry vanishes modulo 2^61 - 1, so the fast path sees a zero
        // matrix and the exact fallback must take over
        let p = BigInt::from(super::PRIME);
        let m = Mat::from_fn(2, 2, |r, c| if r == c { p.clone() } else { BigInt::zero() });
        assert_eq!(exact_rank(&m), 2);
    }

    #[test]
    fn exact_rank_wide_matrix() {
        // rows: (1, a, a^2, a^3) for distinct a; Vandermonde, full row rank
        let m = Mat::from_fn(3, 4, |r, c| BigInt::from((r as i64 + 2).pow(c as u32)));
        assert_eq!(exact_rank(&m), 3);
    }

    #[test]
    fn f64_rank_detects_near_dependence() {
        let m = Mat::from_fn(3, 3, |r, c| {
            if r == c {
                1.0
            } else if r == 2 && c == 1 {
                1e-13
            } else {
                0.0
            }
        });
        assert_eq!(f64_rank(&m, 1e-9), 3); // diagonal dominates
        let dep = Mat::from_fn(3, 3, |r, c| ((r + 1) * (c + 1)) as f64);
        assert_eq!(f64_rank(&dep, 1e-9), 1);
    }

    #[test]
    fn nullity_of_projector() {
        // rank-1 projector on R^3: two singular values vanish
        let m = Mat::from_fn(3, 3, |r, c| if r == 0 && c == 0 { 1.0 } else { 0.0 });
        let report = nullity(&m, 1e-8);
        assert_eq!(report.nullity, 2);
        assert!(report.gap() > 1e6);
    }

    #[test]
    fn nullity_of_invertible_matrix_is_zero() {
        let m = Mat::from_fn(3, 3, |r, c| if r == c { (r + 1) as f64 } else { 0.5 });
        let report = nullity(&m, 1e-10);
        assert_eq!(report.nullity, 0);
        assert_eq!(report.gap(), f64::INFINITY);
    }

    #[test]
    fn kronecker_of_identities() {
        let i2 = Mat::<f64>::identity(2);
        let i3 = Mat::<f64>::identity(3);
        assert_eq!(kronecker(&i2, &i3), Mat::<f64>::identity(6));
    }

    #[test]
    fn kronecker_small_example() {
        let a = Mat::from_fn(1, 2, |_, c| (c + 1) as f64); // [1 2]
        let b = Mat::from_fn(2, 1, |r, _| (r + 3) as f64); // [3; 4]
        let k = kronecker(&a, &b);
        assert_eq!(k.rows(), 2);
        assert_eq!(k.cols(), 2);
        assert_eq!(k.row(0), &[3.0, 6.0]);
        assert_eq!(k.row(1), &[4.0, 8.0]);
    }

    #[test]
    fn matrix_product() {
        let a = Mat::from_fn(2, 3, |r, c| (r * 3 + c) as i64);
        let b = Mat::from_fn(3, 2, |r, c| (r * 2 + c) as i64);
        let ab = a.mul(&b);
        assert_eq!(ab.row(0), &[10, 13]);
        assert_eq!(ab.row(1), &[28, 40]);
    }
}
