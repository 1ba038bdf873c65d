use num_bigint::BigUint;
use serde_json::json;

use super::{ExperimentReport, Recorder};
use crate::combinat::{binom_u64, star_shadow_size};
use crate::error::{range_err, Result};
use crate::hypergraph::{complete, hamilton_frame, star_deleted_graph, tightness_graph, Hypergraph};
use crate::rankcore::{
    check_one_clique, check_semistar, nullspace_certified, rank, InclusionMatrix, RankMode,
};

pub(crate) fn exact_rank(g: &Hypergraph, s: usize) -> Result<usize> {
    let m = InclusionMatrix::build(g, s)?;
    Ok(rank(&m, RankMode::Exact)?.rank)
}

/// Full rank of `M_s^r(K_n^r)` for every `0 <= s <= r <= n <= n_max`.
pub fn verify_gottlieb(n_max: usize) -> Result<ExperimentReport> {
    if n_max > 12 {
        return range_err(format!("n_max = {n_max} exceeds 12"));
    }
    let mut rec = Recorder::new("verify_gottlieb", 0);
    rec.param("n_max", n_max);
    let mut cases = 0usize;
    for n in 0..=n_max {
        for r in 0..=n {
            let k = complete(n, r)?;
            for s in 0..=r {
                let got = exact_rank(&k, s)?;
                let want = binom_u64(n, r).min(binom_u64(n, s)) as usize;
                cases += 1;
                if got != want {
                    rec.fail(json!({"n": n, "r": r, "s": s, "rank": got, "expected": want}));
                }
            }
        }
    }
    rec.stat("cases", cases);
    Ok(rec.finish())
}

/// Exact rank `C(n,s) - t` for `G(n,t,r,s)`; also runs the one-clique and
/// semistar checkers on every kernel vector.
pub fn verify_construction(n: usize, t: usize, r: usize, s: usize) -> Result<ExperimentReport> {
    let g = star_deleted_graph(n, t, r, s)?;
    let mut rec = Recorder::new("verify_construction", 0);
    rec.param("n", n).param("t", t).param("r", r).param("s", s);
    let m = InclusionMatrix::build(&g, s)?;
    let got = rank(&m, RankMode::Exact)?.rank;
    let want = binom_u64(n, s) as usize - t;
    let zero_cols = m.zero_columns();
    rec.stat("edges", g.len())
        .stat("rank", got)
        .stat("expected_rank", want)
        .stat("zero_columns", zero_cols.len());
    if got != want {
        rec.fail(json!({"rank": got, "expected": want}));
    }
    if zero_cols.len() < t {
        rec.fail(json!({"zero_columns": zero_cols.len(), "expected_at_least": t}));
    }
    let f = g.complement();
    let kernel = nullspace_certified(&m, 0);
    let mut violations = 0usize;
    for alpha in &kernel {
        let gp = alpha.support();
        let cliques = check_one_clique(&g, &gp)?;
        let stars = check_semistar(&g, &gp, &f)?;
        violations += cliques.len() + stars.len();
        if !cliques.is_empty() || !stars.is_empty() {
            rec.fail(
                json!({"kernel_vector": alpha.to_strings(), "one_cliques": cliques, "semistars": stars}),
            );
        }
    }
    rec.stat("kernel_dimension", kernel.len())
        .stat("observation_violations", violations);
    Ok(rec.finish())
}

/// Both conclusions about the tightness construction `R(n,r,s)`, plus the
/// rank bound of its recursive step when `s > 1`.
pub fn verify_r(n: usize, r: usize, s: usize) -> Result<ExperimentReport> {
    let g = tightness_graph(n, r, s)?;
    let mut rec = Recorder::new("verify_R", 0);
    rec.param("n", n).param("r", r).param("s", s);
    let rk = exact_rank(&g, s)?;
    let t = n - r - 1;
    let rank_cap = binom_u64(n, s) as usize - t;
    let gap = BigUint::from(binom_u64(n, r) - g.len() as u64);
    let shadow = star_shadow_size(n, t, r, s)?;
    rec.stat("edges", g.len())
        .stat("rank", rk)
        .stat("rank_cap", rank_cap)
        .stat("missing_edges", gap.to_string())
        .stat("N", shadow.to_string());
    if rk > rank_cap {
        rec.fail(json!({"rank": rk, "rank_cap": rank_cap}));
    }
    if gap >= shadow {
        rec.fail(json!({"missing_edges": gap.to_string(), "N": shadow.to_string()}));
    }
    if s > 1 {
        let inner = tightness_graph(n - 1, r - 1, s - 1)?;
        let bound = binom_u64(n - 1, s) as usize + exact_rank(&inner, s - 1)?;
        rec.stat("recursive_bound", bound);
        if rk > bound {
            rec.fail(json!({"rank": rk, "recursive_bound": bound}));
        }
    }
    Ok(rec.finish())
}

/// Rank `n` for the Hamilton frame, with each attachment raising the rank
/// of the growing graph by exactly one.
pub fn verify_hamilton(n: usize, r: usize) -> Result<ExperimentReport> {
    let frame = hamilton_frame(n, r)?;
    let mut rec = Recorder::new("verify_hamilton", 0);
    rec.param("n", n).param("r", r);
    let mut edges = frame.cycle.clone();
    let mut ranks = vec![exact_rank(&Hypergraph::new(n, r, edges.clone())?, 1)?];
    if ranks[0] != frame.cycle_len {
        rec.fail(json!({"cycle_rank": ranks[0], "cycle_len": frame.cycle_len}));
    }
    for &a in &frame.attachments {
        edges.push(a);
        let rk = exact_rank(&Hypergraph::new(n, r, edges.clone())?, 1)?;
        let prev = *ranks.last().expect("nonempty");
        if rk != prev + 1 {
            rec.fail(json!({"attachment": a, "rank_before": prev, "rank_after": rk}));
        }
        ranks.push(rk);
    }
    let last = *ranks.last().expect("nonempty");
    if last != n {
        rec.fail(json!({"rank": last, "expected": n}));
    }
    rec.stat("cycle_len", frame.cycle_len)
        .stat("edges", edges.len())
        .stat("rank_sequence", &ranks)
        .stat("rank", last);
    Ok(rec.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_gottlieb() {
        let rep = verify_gottlieb(6).unwrap();
        assert!(rep.passed());
        assert!(verify_gottlieb(13).is_err());
    }

    #[test]
    fn construction_examples() {
        let rep = verify_construction(8, 2, 3, 1).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
        assert_eq!(rep.stat("rank").unwrap(), 6);
        let rep = verify_construction(6, 1, 3, 1).unwrap();
        assert_eq!(rep.stat("rank").unwrap(), 5);
    }

    #[test]
    fn r_examples() {
        let rep = verify_r(4, 2, 1).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.stat("rank").unwrap(), 3);
        let rep = verify_r(5, 3, 2).unwrap();
        assert!(rep.passed(), "{}", rep.to_json());
        assert_eq!(rep.stat("missing_edges").unwrap(), "2");
    }

    #[test]
    fn hamilton_examples() {
        let rep = verify_hamilton(9, 3).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.stat("rank_sequence").unwrap(), &json!([8, 9]));
        assert!(verify_hamilton(8, 2).unwrap().passed());
        assert!(verify_hamilton(4, 3).is_err());
    }
}
