use itertools::Itertools;
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::{ExperimentReport, Recorder};
use crate::combinat::{binom_u64, checked_binom, kk_upper_shadow_min};
use crate::error::{range_err, Result};
use crate::hypergraph::complete;
use crate::kset::KSet;
use crate::rankcore::{exact_rank_dense, random_word_prime, rank_mod};

/// Default cap on the number of rank evaluations.
pub const DEFAULT_REX_BUDGET: u64 = 100_000_000;

fn dense(rows: &[&Vec<usize>], ncols: usize) -> Vec<Vec<i128>> {
    rows.iter()
        .map(|row| {
            let mut v = vec![0i128; ncols];
            for &j in row.iter() {
                v[j] = 1;
            }
            v
        })
        .collect()
}

/// Smallest removal family `F` (searched by size, all families of one size
/// before the next) such that `rank M_s^r(K_n^r - F) <= C(n,s) - t`.
///
/// A rank at one fixed word prime screens candidates: it never exceeds the
/// rational rank, so a screen above the target rejects exactly. Survivors
/// are confirmed by exact elimination.
pub fn rex_oracle(
    n: usize,
    t: usize,
    r: usize,
    s: usize,
    f_cap: usize,
    budget: u64,
) -> Result<ExperimentReport> {
    if s > r || r > n {
        return range_err(format!("need s <= r <= n, got s = {s}, r = {r}, n = {n}"));
    }
    let ncols = binom_u64(n, s) as usize;
    if t > ncols {
        return range_err(format!("t = {t} exceeds C({n},{s}) = {ncols}"));
    }
    let target = ncols - t;
    let k = complete(n, r)?;
    let all_rows: Vec<Vec<usize>> = k
        .edges()
        .iter()
        .map(|e| {
            e.subsets(s)
                .map(|q| crate::combinat::colex_rank(q) as usize)
                .collect()
        })
        .collect();
    let total = all_rows.len();
    let prime = random_word_prime(&mut ChaCha8Rng::seed_from_u64(0));

    let mut rec = Recorder::new("rex_oracle", 0);
    rec.param("n", n)
        .param("t", t)
        .param("r", r)
        .param("s", s)
        .param("f_cap", f_cap)
        .param("budget", budget);

    let mut calls: u64 = 0;
    let mut searched: Option<usize> = None;
    for f in 0..=f_cap.min(total) {
        let level = checked_binom(total as u64, f as u64);
        match level.and_then(|c| calls.checked_add(c)) {
            Some(c) if c <= budget => calls = c,
            _ => {
                rec.stat("rank_calls", calls)
                    .stat("largest_f_searched", searched)
                    .stat("reason", "budget exceeded");
                rec.inconclusive();
                return Ok(rec.finish());
            }
        }
        let mut found: Vec<Vec<usize>> = (0..total)
            .combinations(f)
            .par_bridge()
            .filter(|removed| {
                let mut keep = vec![true; total];
                for &i in removed {
                    keep[i] = false;
                }
                let rows: Vec<&Vec<usize>> = (0..total).filter(|&i| keep[i]).map(|i| &all_rows[i]).collect();
                if rows.len() <= target {
                    return true;
                }
                let screen = rank_mod(&rows, ncols, prime).expect("fixed prime is valid");
                screen <= target && exact_rank_dense(dense(&rows, ncols), ncols) <= target
            })
            .collect();
        searched = Some(f);
        if found.is_empty() {
            continue;
        }
        found.sort();
        let rex = total - f;
        rec.stat("rex", rex)
            .stat("min_removed", f)
            .stat("extremal_count", found.len())
            .stat("rank_calls", calls);
        for removed in &found {
            let sets: Vec<KSet> = removed.iter().map(|&i| k.edges()[i]).collect();
            rec.witness(json!({ "removed": sets }));
        }
        if t >= 1 && r > s {
            let lower = BigUint::from(total) - kk_upper_shadow_min(n, &BigUint::from(t), s, r - s)?;
            rec.stat("kk_lower_bound", lower.to_string());
            if BigUint::from(rex) < lower {
                rec.fail(json!({ "rex": rex, "kk_lower_bound": lower.to_string() }));
            }
        }
        return Ok(rec.finish());
    }
    rec.stat("rank_calls", calls)
        .stat("largest_f_searched", searched)
        .stat("reason", "no family within f_cap reaches the target rank");
    rec.inconclusive();
    Ok(rec.finish())
}
