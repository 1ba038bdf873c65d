//! Binomial arithmetic, colex indexing and the closed-form shadow bounds.
//!
//! Formula-level quantities are returned as arbitrary-precision integers;
//! machine-word helpers (`binom_u64`, colex ranks) are limited to the
//! 64-vertex ground sets the rest of the crate works with.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{range_err, Error, Result};
use crate::kset::KSet;

/// Exact binomial coefficient. `k < 0` or `k > n` gives 0; negative `n`
/// is rejected.
pub fn binomial(n: i64, k: i64) -> Result<BigUint> {
    if n < 0 {
        return range_err(format!("binomial top {n} is negative"));
    }
    if k < 0 || k > n {
        return Ok(BigUint::zero());
    }
    Ok(big_binom(n as u64, k as u64))
}

/// Binomial with the extended zero convention: any negative argument gives
/// 0. Used where closed forms step below the bottom of Pascal's triangle.
pub fn binomial_or_zero(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        BigUint::zero()
    } else {
        big_binom(n as u64, k as u64)
    }
}

fn big_binom(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// Word-sized binomial; `None` on overflow. Exact for every `n <= 64`.
pub fn checked_binom(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc * (n as u128 - k as u128 + i) / i;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Word-sized binomial. Panics if the value does not fit a `u64`, which
/// cannot happen for `n <= 64`.
pub fn binom_u64(n: usize, k: usize) -> u64 {
    checked_binom(n as u64, k as u64).expect("binomial exceeds u64")
}

/// Colex rank: `sum_i C(s_i - 1, i)` over the sorted elements `s_1 < ... < s_k`.
pub fn colex_rank(set: KSet) -> u64 {
    set.iter().enumerate().map(|(i, v)| binom_u64(v - 1, i + 1)).sum()
}

/// Inverse of [`colex_rank`] on the `k`-subsets of `[1..=n]`.
pub fn colex_unrank(idx: u64, k: usize, n: usize) -> Result<KSet> {
    if k > n {
        return range_err(format!("k = {k} exceeds n = {n}"));
    }
    if n > crate::kset::MAX_VERTICES {
        return range_err(format!("n = {n} exceeds the 64-vertex cap"));
    }
    let total = binom_u64(n, k);
    if idx >= total {
        return Err(Error::IndexOutOfRange {
            what: "colex index",
            index: idx,
            limit: total,
        });
    }
    let mut rest = idx;
    let mut bits = 0u64;
    let mut top = n;
    for i in (1..=k).rev() {
        // largest c < top with C(c, i) <= rest
        let mut c = top - 1;
        while binom_u64(c, i) > rest {
            c -= 1;
        }
        rest -= binom_u64(c, i);
        bits |= 1u64 << c;
        top = c;
    }
    Ok(KSet::from_bits(bits))
}

fn decimal<S: serde::Serializer>(x: &BigUint, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_str(x)
}

/// The representation `m = C(m_k, k) + C(m_{k-1}, k-1) + ... + C(m_j, j)`
/// with `m_k > m_{k-1} > ... > m_j >= j >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CascadeDecomposition {
    #[serde(serialize_with = "decimal")]
    pub m: BigUint,
    pub k: usize,
    /// `(top, index)` pairs, index descending from `k`.
    pub terms: Vec<(u64, usize)>,
}

impl CascadeDecomposition {
    /// Recomputes `sum C(top, index)`.
    pub fn reconstruct(&self) -> BigUint {
        self.terms
            .iter()
            .map(|&(top, i)| big_binom_checked(top, i as u64))
            .sum()
    }

    /// Checks the ordering invariants and the reconstruction identity.
    pub fn is_valid(&self) -> bool {
        let mut prev: Option<(u64, usize)> = None;
        for &(top, i) in &self.terms {
            if i == 0 || top < i as u64 {
                return false;
            }
            match prev {
                None if i != self.k => return false,
                Some((pt, pi)) if pt <= top || pi != i + 1 => return false,
                _ => {}
            }
            prev = Some((top, i));
        }
        self.reconstruct() == self.m
    }

    /// `sum C(m_i, i - p)`, with `C(x, y) = 0` for `y < 0`.
    pub fn shifted_sum(&self, p: usize) -> BigUint {
        self.terms
            .iter()
            .map(|&(top, i)| binomial_or_zero(top as i64, i as i64 - p as i64))
            .sum()
    }
}

fn big_binom_checked(n: u64, k: u64) -> BigUint {
    if k > n {
        BigUint::zero()
    } else {
        big_binom(n, k)
    }
}

/// Greedy cascade decomposition of `m >= 1` in `k`-binomials.
pub fn cascade_decompose(m: &BigUint, k: usize) -> Result<CascadeDecomposition> {
    if m.is_zero() {
        return range_err("cascade decomposition needs m >= 1");
    }
    cascade_decompose_allow_zero(m, k)
}

/// As [`cascade_decompose`], but `m = 0` yields the empty decomposition.
pub fn cascade_decompose_allow_zero(m: &BigUint, k: usize) -> Result<CascadeDecomposition> {
    if k == 0 {
        return range_err("cascade decomposition needs k >= 1");
    }
    let mut rest = m.clone();
    let mut terms = Vec::new();
    for i in (1..=k).rev() {
        if rest.is_zero() {
            break;
        }
        let Some(top) = largest_top(&rest, i as u64) else {
            return range_err(format!("m = {m} needs a cascade top beyond 2^64 at index {i}"));
        };
        rest -= big_binom(top, i as u64);
        terms.push((top, i));
    }
    debug_assert!(rest.is_zero(), "the 1-binomial term absorbs any remainder");
    Ok(CascadeDecomposition {
        m: m.clone(),
        k,
        terms,
    })
}

/// Largest `a >= i` with `C(a, i) <= m`, for `m >= 1`; `None` if that `a`
/// does not fit a `u64`.
fn largest_top(m: &BigUint, i: u64) -> Option<u64> {
    let mut lo = i;
    let mut hi = i + 1;
    while big_binom(hi, i) <= *m {
        if hi == u64::MAX {
            return None;
        }
        lo = hi;
        hi = hi.saturating_mul(2);
    }
    // C(lo, i) <= m < C(hi, i)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if big_binom(mid, i) <= *m {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

/// Kruskal–Katona lower bound on the lower `p`-shadow of `m` sets of size `k`.
pub fn kk_lower_shadow_bound(m: &BigUint, k: usize, p: usize) -> Result<BigUint> {
    if p == 0 || p > k {
        return range_err(format!("need 1 <= p <= k, got p = {p}, k = {k}"));
    }
    Ok(cascade_decompose(m, k)?.shifted_sum(p))
}

/// `K(n, m, k, p)`: least possible size of the upper `p`-shadow of `m`
/// distinct `k`-subsets of `[n]`, via the complement family.
pub fn kk_upper_shadow_min(n: usize, m: &BigUint, k: usize, p: usize) -> Result<BigUint> {
    if p == 0 || k + p > n {
        return range_err(format!(
            "need p >= 1 and k + p <= n, got n = {n}, k = {k}, p = {p}"
        ));
    }
    let total = binomial(n as i64, k as i64)?;
    if m.is_zero() || *m > total {
        return range_err(format!("m = {m} outside 1..={total}"));
    }
    Ok(cascade_decompose(m, n - k)?.shifted_sum(p))
}

fn check_star_params(n: i64, t: i64, r: i64, s: i64) -> Result<()> {
    if s < 1 || r < s {
        return range_err(format!("need r >= s >= 1, got r = {r}, s = {s}"));
    }
    if t < 0 || t > n {
        return range_err(format!("need 0 <= t <= n, got t = {t}, n = {n}"));
    }
    Ok(())
}

/// `N(n, t, r, s) = C(n-s+1, r-s+1) - C(n-s+1-t, r-s+1)`: the number of
/// `r`-sets containing some member of a `t`-element `s`-star configuration.
pub fn star_shadow_size(n: usize, t: usize, r: usize, s: usize) -> Result<BigUint> {
    let (n, t, r, s) = (n as i64, t as i64, r as i64, s as i64);
    check_star_params(n, t, r, s)?;
    let q = r - s + 1;
    Ok(binomial_or_zero(n - s + 1, q) - binomial_or_zero(n - s + 1 - t, q))
}

/// The same quantity as `sum_{i=1..t} C(n-s+1-i, r-s)`.
pub fn star_shadow_size_by_sum(n: usize, t: usize, r: usize, s: usize) -> Result<BigUint> {
    let (n, t, r, s) = (n as i64, t as i64, r as i64, s as i64);
    check_star_params(n, t, r, s)?;
    Ok((1..=t).map(|i| binomial_or_zero(n - s + 1 - i, r - s)).sum())
}

fn check_alpha_open(alpha: &BigRational) -> Result<()> {
    if !alpha.is_positive() || *alpha >= BigRational::one() {
        return range_err(format!("alpha = {alpha} must lie strictly between 0 and 1"));
    }
    Ok(())
}

fn as_rational(x: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Exact test of `alpha * N(n, p, r, s) > N(n, t, r, s)`.
pub fn nspeed_holds(n: usize, t: usize, p: usize, r: usize, s: usize, alpha: &BigRational) -> Result<bool> {
    check_alpha_open(alpha)?;
    if r <= s {
        return range_err(format!("need r > s, got r = {r}, s = {s}"));
    }
    let lhs = alpha * as_rational(star_shadow_size(n, p, r, s)?);
    let rhs = as_rational(star_shadow_size(n, t, r, s)?);
    Ok(lhs > rhs)
}

/// Exact test of `N(n, t, r, s) - alpha * C(n-s, r-s) < N(n-1, t, r, s)`.
pub fn ncomp_holds(n: usize, t: usize, r: usize, s: usize, alpha: &BigRational) -> Result<bool> {
    check_alpha_open(alpha)?;
    if r <= s {
        return range_err(format!("need r > s, got r = {r}, s = {s}"));
    }
    if n == 0 {
        return range_err("need n >= 1");
    }
    let deg = as_rational(binomial(n as i64 - s as i64, (r - s) as i64)?);
    let lhs = as_rational(star_shadow_size(n, t, r, s)?) - alpha * deg;
    let rhs = as_rational(star_shadow_size(n - 1, t, r, s)?);
    Ok(lhs < rhs)
}

/// Parses `"a/b"` or an integer into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Range(format!("cannot parse rational {text:?}"));
    let (num, den) = match text.trim().split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Lossy float view, for reporting only.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}
