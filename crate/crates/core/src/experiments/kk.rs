use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::json;

use super::{ExperimentReport, Recorder};
use crate::combinat::{colex_rank, kk_lower_shadow_bound};
use crate::error::{range_err, Result};
use crate::kset::k_subsets;

/// Exhaustive minimum lower `p`-shadow over all families of `k`-subsets of
/// `[n]`, compared with the cascade bound for every family size.
///
/// Families are bitmasks over the colex-ordered `k`-sets; the shadow of a
/// family is the shadow of its lowest member OR the shadow of the rest.
pub fn kk_oracle(n: usize, k: usize, p: usize) -> Result<ExperimentReport> {
    if n > 6 || k > 4 {
        return range_err(format!(
            "exhaustive search is limited to n <= 6, k <= 4 (got n = {n}, k = {k})"
        ));
    }
    if p == 0 || p > k || k > n {
        return range_err(format!("need 1 <= p <= k <= n, got p = {p}, k = {k}, n = {n}"));
    }
    let sets: Vec<_> = k_subsets(n, k).collect();
    let m_total = sets.len();
    let single: Vec<u64> = sets
        .iter()
        .map(|e| e.subsets(k - p).fold(0u64, |acc, q| acc | 1 << colex_rank(q)))
        .collect();

    let mut shadow = vec![0u64; 1 << m_total];
    let mut min_size = vec![usize::MAX; m_total + 1];
    let mut minimizers = vec![0u64; m_total + 1];
    for mask in 1usize..(1 << m_total) {
        let low = mask.trailing_zeros() as usize;
        shadow[mask] = shadow[mask & (mask - 1)] | single[low];
    }
    for (mask, sh) in shadow.iter().enumerate() {
        let m = mask.count_ones() as usize;
        let size = sh.count_ones() as usize;
        if size < min_size[m] {
            min_size[m] = size;
            minimizers[m] = 1;
        } else if size == min_size[m] {
            minimizers[m] += 1;
        }
    }

    let mut rec = Recorder::new("kk_oracle", 0);
    rec.param("n", n).param("k", k).param("p", p);
    let mut bounds = Vec::with_capacity(m_total + 1);
    for m in 0..=m_total {
        let bound = if m == 0 {
            0
        } else {
            kk_lower_shadow_bound(&BigUint::from(m), k, p)?
                .to_usize()
                .expect("small bound")
        };
        // colex initial segment of length m
        let segment = shadow[(1usize << m) - 1].count_ones() as usize;
        bounds.push(bound);
        if min_size[m] != bound || segment != bound {
            rec.fail(json!({"m": m, "exhaustive_min": min_size[m], "cascade_bound": bound, "colex_segment": segment}));
        }
    }
    rec.stat("families", 1u64 << m_total)
        .stat("min_shadow", &min_size)
        .stat("cascade_bound", &bounds)
        .stat("minimizers", &minimizers);
    Ok(rec.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let rep = kk_oracle(5, 2, 1).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
        let rep = kk_oracle(5, 3, 2).unwrap();
        assert!(rep.passed());
        assert!(kk_oracle(7, 3, 1).is_err());
        assert!(kk_oracle(6, 3, 4).is_err());
    }
}
