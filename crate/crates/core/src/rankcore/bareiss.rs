//! Fraction-free (Bareiss) elimination over the integers.
//!
//! Every intermediate entry is a minor of the input, so all divisions are
//! exact. The elimination first runs in `i128` with checked arithmetic and
//! restarts over `BigInt` the moment any product overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Scalar usable by the elimination. `cross` computes `(a*b - c*d) / e`
/// exactly, or `None` if the scalar type cannot represent an intermediate.
pub(crate) trait FfScalar: Clone + PartialEq {
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self>;
}

impl FfScalar for i128 {
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn cross(a: &i128, b: &i128, c: &i128, d: &i128, e: &i128) -> Option<i128> {
        let num = a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)?;
        debug_assert_eq!(num % e, 0, "Bareiss division must be exact");
        Some(num / e)
    }
}

impl FfScalar for BigInt {
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cross(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt, e: &BigInt) -> Option<BigInt> {
        let num = a * b - c * d;
        if e.is_one() {
            return Some(num);
        }
        let (q, rem) = num.div_rem(e);
        debug_assert!(Zero::is_zero(&rem), "Bareiss division must be exact");
        Some(q)
    }
}

/// Result of a fraction-free elimination.
#[derive(Clone, Debug)]
pub(crate) struct Echelon<T> {
    /// The first `pivots.len()` rows are the nonzero rows.
    pub rows: Vec<Vec<T>>,
    pub pivots: Vec<usize>,
    /// Last pivot; in Jordan form every pivot entry equals it.
    pub scale: T,
}

/// Row echelon form (`jordan = false`) or reduced form with a common pivot
/// value (`jordan = true`). `None` signals scalar overflow.
pub(crate) fn eliminate<T: FfScalar>(mut a: Vec<Vec<T>>, ncols: usize, jordan: bool) -> Option<Echelon<T>> {
    let m = a.len();
    let mut prev = T::one();
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (head, tail) = a.split_at_mut(rank);
        let (pivot_row, below) = tail.split_first_mut().expect("rank < m");
        let piv = pivot_row[col].clone();
        for row in below.iter_mut() {
            let factor = row[col].clone();
            for j in col..ncols {
                row[j] = T::cross(&piv, &row[j], &factor, &pivot_row[j], &prev)?;
            }
        }
        if jordan {
            for row in head.iter_mut() {
                let factor = row[col].clone();
                for j in 0..ncols {
                    row[j] = T::cross(&piv, &row[j], &factor, &pivot_row[j], &prev)?;
                }
            }
        }
        prev = piv;
        pivots.push(col);
        rank += 1;
    }
    Some(Echelon {
        rows: a,
        pivots,
        scale: prev,
    })
}

fn widen(a: &[Vec<i128>]) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Exact elimination on a 0/1 (or small-integer) matrix, `i128` first.
pub(crate) fn eliminate_exact(a: Vec<Vec<i128>>, ncols: usize, jordan: bool) -> Echelon<BigInt> {
    match eliminate(a.clone(), ncols, jordan) {
        Some(e) => Echelon {
            rows: widen(&e.rows),
            pivots: e.pivots,
            scale: BigInt::from(e.scale),
        },
        None => eliminate(widen(&a), ncols, jordan).expect("BigInt arithmetic cannot overflow"),
    }
}

/// Rank over the rationals.
pub(crate) fn exact_rank(a: Vec<Vec<i128>>, ncols: usize) -> usize {
    match eliminate(a.clone(), ncols, false) {
        Some(e) => e.pivots.len(),
        None => eliminate(widen(&a), ncols, false)
            .expect("BigInt arithmetic cannot overflow")
            .pivots
            .len(),
    }
}
