use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{shadow, Hypergraph, ShadowDirection};
use crate::combinat::binomial_or_zero;
use crate::error::{range_err, Error, Result};
use crate::kset::{k_subsets, KSet, MAX_VERTICES};

/// `K_n^r`, edges in colex order.
pub fn complete(n: usize, r: usize) -> Result<Hypergraph> {
    if n > MAX_VERTICES {
        return range_err(format!("n = {n} exceeds the {MAX_VERTICES}-vertex cap"));
    }
    if r > n {
        return range_err(format!("r = {r} exceeds n = {n}"));
    }
    Ok(Hypergraph::from_canonical(n, r, k_subsets(n, r).collect()))
}

/// The canonical `t`-element `s`-star: `{1..s-1} + {s-1+i}` for `i = 1..t`.
pub fn star_configuration(n: usize, t: usize, s: usize) -> Result<Vec<KSet>> {
    if s == 0 || s > n {
        return range_err(format!("need 1 <= s <= n, got s = {s}, n = {n}"));
    }
    if t == 0 || t > n - s + 1 {
        return range_err(format!("need 1 <= t <= n - s + 1 = {}, got t = {t}", n - s + 1));
    }
    let core = KSet::prefix(s - 1);
    Ok((1..=t).map(|i| core.insert(s - 1 + i)).collect())
}

/// `G(n, t, r, s)`: `K_n^r` minus every edge containing a member of the
/// canonical `t`-element `s`-star.
pub fn star_deleted_graph(n: usize, t: usize, r: usize, s: usize) -> Result<Hypergraph> {
    if s == 0 || r <= s {
        return range_err(format!("need r > s >= 1, got r = {r}, s = {s}"));
    }
    if n < r {
        return range_err(format!("need n >= r, got n = {n}, r = {r}"));
    }
    let star = star_configuration(n, t, s)?;
    let removed = shadow(&star, r - s, ShadowDirection::Upper, n)?;
    Ok(complete(n, r)?.without_edges(&removed))
}

/// `R(n, r, s)`: an `r`-graph whose inclusion matrix loses at least
/// `n - r - 1` rank while missing fewer than `N(n, n-r-1, r, s)` edges.
pub fn tightness_graph(n: usize, r: usize, s: usize) -> Result<Hypergraph> {
    if s == 0 || r <= s {
        return range_err(format!("need r > s >= 1, got r = {r}, s = {s}"));
    }
    if n < r + 2 {
        return range_err(format!("need n >= r + 2, got n = {n}, r = {r}"));
    }
    if n > MAX_VERTICES {
        return range_err(format!("n = {n} exceeds the {MAX_VERTICES}-vertex cap"));
    }
    if s == 1 {
        let edges = if r == 2 {
            // the 4-cycle 1-2-3-4-1
            [[1, 2], [2, 3], [3, 4], [1, 4]]
                .iter()
                .map(|e| KSet::from_vertices(e.iter().copied()))
                .collect::<Result<Vec<_>>>()?
        } else {
            let apex = r + 2;
            k_subsets(r + 1, r - 1).map(|e| e.insert(apex)).collect()
        };
        return Hypergraph::new(n, r, edges);
    }
    let lower = tightness_graph(n - 1, r - 1, s - 1)?;
    let mut edges: Vec<KSet> = k_subsets(n - 1, r).collect();
    edges.extend(lower.edges().iter().map(|e| e.insert(n)));
    Hypergraph::new(n, r, edges)
}

/// An `(r-1)`-tight cycle on `[n']` plus pendant edges for the vertices
/// above `n'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HamiltonFrame {
    pub cycle_len: usize,
    pub cycle: Vec<KSet>,
    /// In vertex order `n'+1, ..., n`.
    pub attachments: Vec<KSet>,
}

impl HamiltonFrame {
    pub fn graph(&self, n: usize, r: usize) -> Hypergraph {
        let mut edges = self.cycle.clone();
        edges.extend_from_slice(&self.attachments);
        Hypergraph::new(n, r, edges).expect("frame edges are valid r-sets")
    }
}

/// Builds the tight-cycle frame with `n' = r - 1 (mod r)`, `n - r + 1 <= n' <= n`.
/// Attachment `j` joins vertex `n' + j` to the cycle block
/// `{(j-1)(r-1)+1, ..., j(r-1)}`.
pub fn hamilton_frame(n: usize, r: usize) -> Result<HamiltonFrame> {
    if r < 2 {
        return range_err(format!("need r >= 2, got r = {r}"));
    }
    if n > MAX_VERTICES {
        return range_err(format!("n = {n} exceeds the {MAX_VERTICES}-vertex cap"));
    }
    // the window [n-r+1, n] holds exactly one value = r-1 (mod r)
    let cycle_len = if n + 1 >= r { n - (n + 1) % r } else { 0 };
    if cycle_len + r <= n || cycle_len < 2 * r - 1 {
        return Err(Error::Range(format!(
            "no n' = {} (mod {r}) with {} <= n' <= {n} long enough for a tight cycle (need n' >= {})",
            r - 1,
            (n + 1).saturating_sub(r),
            2 * r - 1
        )));
    }
    let extra = n - cycle_len;
    if extra * (r - 1) > cycle_len {
        return Err(Error::Range(format!(
            "n' = {cycle_len} cannot host {extra} disjoint attachment blocks of size {}",
            r - 1
        )));
    }
    let cycle = (0..cycle_len)
        .map(|i| {
            let verts = (0..r).map(|j| (i + j) % cycle_len + 1);
            KSet::from_vertices(verts)
        })
        .collect::<Result<Vec<_>>>()?;
    let attachments = (1..=extra)
        .map(|j| {
            let block = ((j - 1) * (r - 1) + 1)..=(j * (r - 1));
            KSet::from_vertices(block.chain(std::iter::once(cycle_len + j)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HamiltonFrame {
        cycle_len,
        cycle,
        attachments,
    })
}

/// Binomial random `r`-graph: each `r`-set kept independently with
/// probability `p`, visiting `r`-sets in colex order.
pub fn random_hypergraph_with<R: Rng + ?Sized>(
    n: usize,
    r: usize,
    p: f64,
    rng: &mut R,
) -> Result<Hypergraph> {
    if !(0.0..=1.0).contains(&p) {
        return range_err(format!("probability {p} outside [0, 1]"));
    }
    if r > n || n > MAX_VERTICES {
        return range_err(format!("need r <= n <= {MAX_VERTICES}, got r = {r}, n = {n}"));
    }
    let edges = k_subsets(n, r).filter(|_| rng.random_bool(p)).collect();
    Ok(Hypergraph::from_canonical(n, r, edges))
}

/// [`random_hypergraph_with`] driven by a ChaCha8 stream seeded from `seed`.
pub fn random_hypergraph(n: usize, r: usize, p: f64, seed: u64) -> Result<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_hypergraph_with(n, r, p, &mut rng)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeelTrace {
    pub ell: usize,
    /// Original labels, in removal order.
    pub removal_order: Vec<usize>,
}

/// Repeatedly deletes a vertex of maximum degree (smallest label on ties)
/// until the maximum degree is at most `alpha * C(|V| - s, r - s)`.
pub fn peel_max_degree(f: &Hypergraph, s: usize, alpha: &BigRational) -> Result<PeelTrace> {
    if !alpha.is_positive() || *alpha > BigRational::one() {
        return range_err(format!("alpha = {alpha} must lie in (0, 1]"));
    }
    let r = f.r();
    if s > r {
        return range_err(format!("need s <= r, got s = {s}, r = {r}"));
    }
    let mut alive: Vec<bool> = vec![true; f.n()];
    let mut edges: Vec<KSet> = f.edges().to_vec();
    let mut order = Vec::new();
    loop {
        let remaining = f.n() - order.len();
        let mut deg = vec![0usize; f.n()];
        for e in &edges {
            for v in e.iter() {
                deg[v - 1] += 1;
            }
        }
        let (best, max_deg) =
            deg.iter()
                .enumerate()
                .filter(|(i, _)| alive[*i])
                .fold((None, 0usize), |(bv, bd), (i, &d)| {
                    if bv.is_none() || d > bd {
                        (Some(i + 1), d)
                    } else {
                        (bv, bd)
                    }
                });
        let cap = alpha
            * BigRational::from_integer(BigInt::from(binomial_or_zero(
                remaining as i64 - s as i64,
                (r - s) as i64,
            )));
        if BigRational::from_integer(BigInt::from(max_deg)) <= cap {
            break;
        }
        let v = best.expect("a positive degree implies a live vertex");
        alive[v - 1] = false;
        edges.retain(|e| !e.contains(v));
        order.push(v);
    }
    Ok(PeelTrace {
        ell: order.len(),
        removal_order: order,
    })
}
