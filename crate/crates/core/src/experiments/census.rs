use std::collections::BTreeSet;

use serde_json::json;

use super::{ExperimentReport, Recorder};
use crate::error::{range_err, Result};
use crate::hypergraph::{complete, Hypergraph};
use crate::kset::KSet;
use crate::rankcore::exact_rank_dense;

/// Connected components of a graph on `[n]` and whether each is bipartite.
fn components(n: usize, edges: &[KSet]) -> Vec<(KSet, bool)> {
    let mut adj = vec![KSet::EMPTY; n + 1];
    for e in edges {
        let v = e.to_vec();
        adj[v[0]] = adj[v[0]].insert(v[1]);
        adj[v[1]] = adj[v[1]].insert(v[0]);
    }
    let mut color = vec![None; n + 1];
    let mut out = Vec::new();
    for start in 1..=n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut stack = vec![start];
        let mut members = KSet::EMPTY;
        let mut bipartite = true;
        while let Some(u) = stack.pop() {
            members = members.insert(u);
            let cu = color[u].expect("colored on push");
            for w in adj[u].iter() {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        stack.push(w);
                    }
                    Some(cw) if cw == cu => bipartite = false,
                    Some(_) => {}
                }
            }
        }
        out.push((members, bipartite));
    }
    out
}

/// Name of the graph left after deleting isolated vertices: `empty`,
/// `K_m`, `C_m`, `P_m` (m edges), `mK_2`, `K_{a,b}`, or `other(v=..,e=..)`.
pub fn name_core(g: &Hypergraph) -> String {
    assert_eq!(g.r(), 2, "cores are named for graphs only");
    let e = g.len();
    let support = g.support();
    let v = support.len();
    if e == 0 {
        return "empty".into();
    }
    if e == v * (v - 1) / 2 {
        return format!("K_{v}");
    }
    let deg = g.degrees();
    let degs: Vec<usize> = support.iter().map(|x| deg[x - 1]).collect();
    let comps: Vec<(KSet, bool)> = components(g.n(), g.edges())
        .into_iter()
        .filter(|(c, _)| c.len() > 1)
        .collect();
    let connected = comps.len() == 1;
    if connected && degs.iter().all(|&d| d == 2) {
        return format!("C_{v}");
    }
    if connected && e + 1 == v && degs.iter().all(|&d| d <= 2) {
        return format!("P_{e}");
    }
    if degs.iter().all(|&d| d == 1) {
        return format!("{e}K_2");
    }
    if connected && comps[0].1 {
        // a connected bipartite graph has a unique 2-coloring
        let mut side = KSet::EMPTY;
        let mut stack = vec![support.min_vertex().expect("nonempty")];
        let mut seen = KSet::EMPTY;
        let mut parity = vec![false; g.n() + 1];
        while let Some(u) = stack.pop() {
            if seen.contains(u) {
                continue;
            }
            seen = seen.insert(u);
            if !parity[u] {
                side = side.insert(u);
            }
            for f in g.edges().iter().filter(|f| f.contains(u)) {
                let w = f.remove(u).min_vertex().expect("2-edge");
                if !seen.contains(w) {
                    parity[w] = !parity[u];
                    stack.push(w);
                }
            }
        }
        let (a, b) = (side.len().min(v - side.len()), side.len().max(v - side.len()));
        if a * b == e {
            return format!("K_{{{a},{b}}}");
        }
    }
    format!("other(v={v},e={e})")
}

/// Every labeled graph on `[n]`: checks `rank M_1^2(G) = n - b(G)` and
/// tabulates `rex(n,t,2,1)` with the cores of all extremal graphs.
pub fn graph_census(n: usize) -> Result<ExperimentReport> {
    if n > 7 {
        return range_err(format!("census over 2^C({n},2) graphs is limited to n <= 7"));
    }
    let all = complete(n, 2)?;
    let pairs: Vec<(usize, usize)> = all
        .edges()
        .iter()
        .map(|e| {
            let v = e.to_vec();
            (v[0] - 1, v[1] - 1)
        })
        .collect();
    let m = pairs.len();
    let mut rec = Recorder::new("graph_census", 0);
    rec.param("n", n);

    // best[rho] = (max edges at rank rho, masks attaining it)
    let mut best: Vec<(usize, Vec<u32>)> = vec![(0, Vec::new()); n + 1];
    let mut mismatches = 0usize;
    for mask in 0u32..(1u32 << m) {
        let edges: Vec<KSet> = (0..m)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| all.edges()[i])
            .collect();
        let dense: Vec<Vec<i128>> = (0..m)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| {
                let mut row = vec![0i128; n];
                row[pairs[i].0] = 1;
                row[pairs[i].1] = 1;
                row
            })
            .collect();
        let rank = exact_rank_dense(dense, n);
        let b = components(n, &edges).iter().filter(|(_, bip)| *bip).count();
        if rank != n - b {
            mismatches += 1;
            rec.fail(json!({"edges": edges, "rank": rank, "bipartite_components": b}));
        }
        let e = edges.len();
        let slot = &mut best[rank];
        if e > slot.0 || slot.1.is_empty() {
            *slot = (e, vec![mask]);
        } else if e == slot.0 {
            slot.1.push(mask);
        }
    }

    let mut table = Vec::new();
    let mut cores = Vec::new();
    let mut counts = Vec::new();
    for t in 1..=n {
        let candidates = &best[..=n - t];
        let rex = candidates.iter().map(|b| b.0).max().unwrap_or(0);
        let mut names = BTreeSet::new();
        let mut count = 0usize;
        for (size, masks) in candidates {
            if *size != rex {
                continue;
            }
            for &mask in masks {
                let edges = (0..m)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| all.edges()[i])
                    .collect();
                names.insert(name_core(&Hypergraph::new(n, 2, edges)?));
                count += 1;
            }
        }
        table.push(rex);
        cores.push(names.into_iter().collect::<Vec<_>>());
        counts.push(count);
    }
    rec.stat("graphs", 1u64 << m)
        .stat("rank_mismatches", mismatches)
        .stat("rex_table", &table)
        .stat("extremal_cores", &cores)
        .stat("extremal_counts", &counts);
    Ok(rec.finish())
}
