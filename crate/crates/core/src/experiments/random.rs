use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{ExperimentReport, Recorder};
use crate::combinat::{binom_u64, checked_binom, colex_unrank};
use crate::error::{range_err, Result};
use crate::hypergraph::{random_hypergraph_with, Hypergraph};
use crate::kset::{k_subsets, KSet};
use crate::rankcore::{rank, InclusionMatrix, RankMode};

/// Samples drawn per trial before a degree-capped family is declared
/// unobtainable.
const REJECTION_LIMIT: usize = 10_000;

/// Independent generator for `(master, stream)`: same key, bit-identical
/// stream, whatever thread runs it.
pub fn trial_rng(master: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(stream);
    rng
}

/// `points` values spaced evenly in log scale over `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points)
            .map(|i| lo * (hi / lo).powf(i as f64 / (points - 1) as f64))
            .collect(),
    }
}

/// `s (r-s)! ln n / n^(r-s)`, the location of the full-rank threshold.
pub fn threshold_estimate(n: usize, r: usize, s: usize) -> f64 {
    let fact: f64 = (1..=r - s).map(|i| i as f64).product();
    s as f64 * fact * (n as f64).ln() / (n as f64).powi((r - s) as i32)
}

/// Thirteen log-spaced probabilities from a quarter to four times the
/// threshold estimate, clamped to `[0, 1]`.
pub fn threshold_grid(n: usize, r: usize, s: usize) -> Vec<f64> {
    let p = threshold_estimate(n, r, s);
    log_grid(p / 4.0, 4.0 * p, 13)
        .into_iter()
        .map(|x| x.min(1.0))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub p: f64,
    pub full_rank_freq: f64,
    pub no_zero_col_freq: f64,
    pub trials: usize,
}

/// CSV rendering of a sweep curve, header included.
pub fn curve_csv(points: &[SweepPoint]) -> String {
    let mut out = String::from("p,full_rank_freq,no_zero_col_freq,trials\n");
    for pt in points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            pt.p, pt.full_rank_freq, pt.no_zero_col_freq, pt.trials
        ));
    }
    out
}

/// First grid position where `freq` rises from below 1/2 to at least 1/2,
/// interpolated linearly in `p`.
fn half_crossing(points: &[SweepPoint], freq: impl Fn(&SweepPoint) -> f64) -> Option<f64> {
    points.windows(2).find_map(|w| {
        let (a, b) = (freq(&w[0]), freq(&w[1]));
        (a < 0.5 && b >= 0.5).then(|| w[0].p + (0.5 - a) / (b - a) * (w[1].p - w[0].p))
    })
}

/// Adjacent grid points where the frequency drops by more than two
/// standard errors.
fn monotonicity_breaks(points: &[SweepPoint], freq: impl Fn(&SweepPoint) -> f64) -> usize {
    points
        .windows(2)
        .filter(|w| {
            let (a, b) = (freq(&w[0]), freq(&w[1]));
            let var = a * (1.0 - a) / w[0].trials as f64 + b * (1.0 - b) / w[1].trials as f64;
            a - b > 2.0 * var.sqrt()
        })
        .count()
}

/// Monte Carlo over the binomial random `r`-graph: per grid probability,
/// the frequency of a full-rank `M_s^r` (certified rank) and of having no
/// all-zero column.
pub fn threshold_sweep(
    n: usize,
    r: usize,
    s: usize,
    p_grid: &[f64],
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    if p_grid.is_empty() {
        return range_err("empty probability grid");
    }
    if trials == 0 {
        return range_err("need at least one trial");
    }
    if s > r || r > n {
        return range_err(format!("need s <= r <= n, got s = {s}, r = {r}, n = {n}"));
    }
    if let Some(bad) = p_grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return range_err(format!("probability {bad} outside [0, 1]"));
    }
    let ncols = binom_u64(n, s) as usize;
    let outcomes: Vec<(bool, bool)> = (0..p_grid.len() * trials)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / trials, idx % trials);
            let mut rng = trial_rng(seed, (i as u64) << 32 | j as u64);
            let g = random_hypergraph_with(n, r, p_grid[i], &mut rng).expect("validated parameters");
            let m = InclusionMatrix::build(&g, s).expect("s <= r");
            let no_zero = m.zero_columns().is_empty();
            let full = no_zero
                && rank(&m, RankMode::Certified { seed: rng.random() })
                    .expect("certified rank needs no modulus")
                    .rank
                    == ncols;
            (full, no_zero)
        })
        .collect();

    let points: Vec<SweepPoint> = p_grid
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let chunk = &outcomes[i * trials..(i + 1) * trials];
            let full = chunk.iter().filter(|o| o.0).count();
            let no_zero = chunk.iter().filter(|o| o.1).count();
            SweepPoint {
                p,
                full_rank_freq: full as f64 / trials as f64,
                no_zero_col_freq: no_zero as f64 / trials as f64,
                trials,
            }
        })
        .collect();

    let mut rec = Recorder::new("threshold_sweep", seed);
    rec.param("n", n)
        .param("r", r)
        .param("s", s)
        .param("p_grid", p_grid)
        .param("trials", trials);
    rec.stat("threshold_estimate", threshold_estimate(n, r, s))
        .stat(
            "full_rank_crossing",
            half_crossing(&points, |pt| pt.full_rank_freq),
        )
        .stat(
            "no_zero_col_crossing",
            half_crossing(&points, |pt| pt.no_zero_col_freq),
        )
        .stat(
            "monotonicity_breaks",
            monotonicity_breaks(&points, |pt| pt.full_rank_freq)
                + monotonicity_breaks(&points, |pt| pt.no_zero_col_freq),
        )
        .stat("curve", &points);
    Ok(rec.finish())
}

/// Uniform random removal families of a fixed size with maximum `s`-degree
/// at most `degree_cap`, and the fraction leaving `M_s^r(K_n^r - F)` of full
/// rank. Inside the region `n >= 2r+s`, `|F| C(r,s) < C(n,r-s)` with no cap,
/// full rank is asserted for every sample.
pub fn resilience_trial(
    n: usize,
    r: usize,
    s: usize,
    family_size: usize,
    degree_cap: Option<usize>,
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    if s > r || r > n {
        return range_err(format!("need s <= r <= n, got s = {s}, r = {r}, n = {n}"));
    }
    let total = match checked_binom(n as u64, r as u64) {
        Some(t) if t <= 10_000_000 => t as usize,
        _ => return range_err(format!("C({n},{r}) is too large to enumerate")),
    };
    if family_size > total {
        return range_err(format!("family size {family_size} exceeds C({n},{r}) = {total}"));
    }
    let ncols = binom_u64(n, s) as usize;
    let all: Vec<KSet> = k_subsets(n, r).collect();
    let asserted = degree_cap.is_none()
        && n >= 2 * r + s
        && (family_size as u64) * binom_u64(r, s) < binom_u64(n, r - s);

    // per trial: Some((full rank, rejections, family)) or None if capped out
    let results: Vec<Option<(bool, usize, Vec<KSet>)>> = (0..trials as u64)
        .into_par_iter()
        .map(|j| {
            let mut rng = trial_rng(seed, j);
            for attempt in 0..REJECTION_LIMIT {
                let mut picked: Vec<usize> = sample(&mut rng, total, family_size).into_vec();
                picked.sort_unstable();
                let family: Vec<KSet> = picked
                    .iter()
                    .map(|&i| colex_unrank(i as u64, r, n).expect("index below C(n,r)"))
                    .collect();
                let f = Hypergraph::new(n, r, family.clone()).expect("valid r-sets");
                if degree_cap.is_some_and(|cap| f.max_s_degree(s) > cap) {
                    continue;
                }
                let g = Hypergraph::new(n, r, all.clone())
                    .expect("valid r-sets")
                    .without_edges(&family);
                let m = InclusionMatrix::build(&g, s).expect("s <= r");
                let rk = rank(&m, RankMode::Certified { seed: rng.random() }).expect("no modulus");
                return Some((rk.rank == ncols, attempt, family));
            }
            None
        })
        .collect();

    let mut rec = Recorder::new("resilience_trial", seed);
    rec.param("n", n)
        .param("r", r)
        .param("s", s)
        .param("family_size", family_size)
        .param("degree_cap", degree_cap)
        .param("trials", trials);
    let done: Vec<&(bool, usize, Vec<KSet>)> = results.iter().flatten().collect();
    let full = done.iter().filter(|d| d.0).count();
    let rejections: usize = done.iter().map(|d| d.1).sum();
    rec.stat("asserted", asserted)
        .stat("completed_trials", done.len())
        .stat("full_rank", full)
        .stat("rejections", rejections)
        .stat(
            "full_rank_fraction",
            if done.is_empty() {
                None
            } else {
                Some(full as f64 / done.len() as f64)
            },
        );
    if done.len() < trials {
        rec.stat(
            "reason",
            format!("rejection limit of {REJECTION_LIMIT} samples reached"),
        );
        rec.inconclusive();
    }
    if asserted {
        for d in done.iter().filter(|d| !d.0) {
            rec.fail(json!({ "removed": d.2 }));
        }
    }
    Ok(rec.finish())
}
