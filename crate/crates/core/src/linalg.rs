//! Fraction-free integer linear algebra.
//!
//! Every routine is generic over [`ExactInt`]. The `i64` instance uses checked
//! arithmetic and reports overflow as `None`; callers then rerun the same
//! routine over `BigInt`, which never fails. Results are always exact.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub trait ExactInt: Clone + Eq + Hash + Debug + Send + Sync {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    fn checked_neg(&self) -> Option<Self>;
    /// Nonnegative gcd; `gcd(0, 0) = 0`.
    fn gcd(&self, other: &Self) -> Self;
    /// Exact division; the divisor must divide `self`.
    fn div_exact(&self, other: &Self) -> Self;
}

impl ExactInt for i64 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i64::checked_mul(*self, *other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        i64::checked_sub(*self, *other)
    }
    fn checked_neg(&self) -> Option<Self> {
        i64::checked_neg(*self)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
}

/// Divides a vector by the gcd of its entries and makes the first nonzero
/// entry positive. Returns `None` on overflow; a zero vector is left alone.
pub fn normalize_primitive<T: ExactInt>(v: &mut [T]) -> Option<()> {
    let mut g = T::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return Some(());
    }
    let negate = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if negate { g.checked_neg()? } else { g };
    for x in v.iter_mut() {
        *x = x.div_exact(&g);
    }
    Some(())
}

/// `row <- row * p - row[col] * pivot`, then primitive-normalized.
fn eliminate<T: ExactInt>(row: &mut [T], pivot: &[T], col: usize) -> Option<()> {
    let factor = row[col].clone();
    if factor.is_zero() {
        return Some(());
    }
    let p = pivot[col].clone();
    for (x, y) in row.iter_mut().zip(pivot) {
        *x = x.checked_mul(&p)?.checked_sub(&factor.checked_mul(y)?)?;
    }
    normalize_primitive(row)
}

/// Canonical reduced echelon form of the row space spanned by `rows`.
///
/// Each output row is primitive, has a positive pivot, and is zero in every
/// other pivot column. These rows are the primitive integer multiples of the
/// rational RREF rows, so the result is unique per row space. Zero rows are
/// dropped.
pub fn canonical_rref<T: ExactInt>(rows: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        normalize_primitive(&mut m[rank])?;
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank {
                eliminate(row, &pivot, col)?;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    Some(m)
}

/// Pivot column of a canonical row (first nonzero entry).
pub fn pivot_of<T: ExactInt>(row: &[T]) -> usize {
    row.iter().position(|x| !x.is_zero()).expect("echelon rows are nonzero")
}

/// Whether `v` lies in the row space of an echelon basis whose rows have
/// pairwise distinct pivots and are zero in each other's pivot columns.
pub fn in_row_space<T: ExactInt>(basis: &[Vec<T>], v: &[T]) -> Option<bool> {
    let mut w = v.to_vec();
    for row in basis {
        eliminate(&mut w, row, pivot_of(row))?;
    }
    Some(w.iter().all(ExactInt::is_zero))
}

/// Rank of an integer matrix.
pub fn rank<T: ExactInt>(rows: &[Vec<T>]) -> Option<usize> {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let pivot = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            eliminate(row, &pivot, col)?;
        }
        rank += 1;
    }
    Some(rank)
}

/// Integer basis of the right null space `{x : M x = 0}`.
pub fn null_space<T: ExactInt>(rows: &[Vec<T>], ncols: usize) -> Option<Vec<Vec<T>>> {
    let rref = canonical_rref(rows)?;
    let pivots: Vec<usize> = rref.iter().map(|r| pivot_of(r)).collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        // x_free = L, x_pivot(r) = -row[free] * L / row[pivot], L = lcm of pivots.
        let mut l = T::from_i64(1);
        for (row, &p) in rref.iter().zip(&pivots) {
            let g = l.gcd(&row[p]);
            l = l.checked_mul(&row[p].div_exact(&g))?;
        }
        let mut x = vec![T::zero(); ncols];
        x[free] = l.clone();
        for (row, &p) in rref.iter().zip(&pivots) {
            let scaled = l.div_exact(&row[p]).checked_mul(&row[free])?;
            x[p] = scaled.checked_neg()?;
        }
        normalize_primitive(&mut x)?;
        basis.push(x);
    }
    Some(basis)
}

pub fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Converts back to machine integers when every entry fits.
pub fn try_to_small(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i64>>> {
    rows.iter()
        .map(|r| r.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>())
        .collect()
}

/// Rank of a small-integer matrix, falling back to `BigInt` on overflow.
pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    rank(rows).unwrap_or_else(|| rank(&to_big(rows)).expect("bigint arithmetic is infallible"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_is_canonical_for_different_spanning_sets() {
        let a = vec![vec![1i64, 1, 0], vec![0, 1, 1]];
        let b = vec![vec![1i64, 2, 1], vec![2, 1, -1], vec![1, 0, -1]];
        assert_eq!(canonical_rref(&a), canonical_rref(&b));
        assert_eq!(canonical_rref(&a).unwrap(), vec![vec![1, 0, -1], vec![0, 1, 1]]);
    }

    #[test]
    fn rref_rows_are_primitive_with_positive_pivot() {
        let m = vec![vec![-2i64, 4, 6], vec![0, 0, 3]];
        let r = canonical_rref(&m).unwrap();
        assert_eq!(r, vec![vec![1, -2, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn overflow_is_reported_and_bigint_agrees() {
        let big = i64::MAX / 2;
        let m = vec![vec![big, 3], vec![3, big]];
        assert_eq!(rank(&m), None);
        assert_eq!(rank_i64(&m), 2);
    }

    #[test]
    fn row_space_membership() {
        let basis = canonical_rref(&[vec![1i64, 1, 0], vec![0, 1, 1]]).unwrap();
        assert_eq!(in_row_space(&basis, &[1, 2, 1]), Some(true));
        assert_eq!(in_row_space(&basis, &[0, 0, 1]), Some(false));
    }

    #[test]
    fn null_space_is_annihilated() {
        let m = vec![vec![1i64, 2, 3, 4], vec![2, 3, 4, 5]];
        let ns = null_space(&m, 4).unwrap();
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for row in &m {
                let dot: i64 = row.iter().zip(x).map(|(a, b)| a * b).sum();
                assert_eq!(dot, 0);
            }
        }
        assert_eq!(rank_i64(&ns), 2);
    }
}
