//! Uniform hypergraphs on `[1..=n]`, stored canonically as a colex-sorted,
//! duplicate-free edge list.

mod construct;
mod io;

pub use construct::{
    complete, hamilton_frame, peel_max_degree, random_hypergraph, random_hypergraph_with, star_configuration,
    star_deleted_graph, tightness_graph, HamiltonFrame, PeelTrace,
};
pub use io::{read_text, write_text};

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{range_err, Error, Result};
use crate::kset::{k_subsets, KSet, MAX_VERTICES};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<KSet>,
}

impl Hypergraph {
    /// Validates and canonicalizes. Duplicate edges are merged. `r > n` is
    /// allowed and forces the edge set to be empty.
    pub fn new(n: usize, r: usize, mut edges: Vec<KSet>) -> Result<Self> {
        if n > MAX_VERTICES {
            return range_err(format!("n = {n} exceeds the {MAX_VERTICES}-vertex cap"));
        }
        for e in &edges {
            if e.len() != r {
                return Err(Error::Uniformity(format!("edge {e} does not have {r} elements")));
            }
            if !e.fits(n) {
                return range_err(format!("edge {e} leaves [1..{n}]"));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Hypergraph { n, r, edges })
    }

    /// Edgeless `r`-graph on `[n]`.
    pub fn empty(n: usize, r: usize) -> Result<Self> {
        Hypergraph::new(n, r, Vec::new())
    }

    /// Caller guarantees the canonical invariants.
    pub(crate) fn from_canonical(n: usize, r: usize, edges: Vec<KSet>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| e.len() == r && e.fits(n)));
        Hypergraph { n, r, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[KSet] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: KSet) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Same vertex set and uniformity, edges `C([n], r) \ E`.
    pub fn complement(&self) -> Hypergraph {
        let edges = k_subsets(self.n, self.r).filter(|e| !self.contains(*e)).collect();
        Hypergraph::from_canonical(self.n, self.r, edges)
    }

    /// Removes the listed edges (missing ones are ignored).
    pub fn without_edges(&self, removed: &[KSet]) -> Hypergraph {
        let drop: BTreeSet<KSet> = removed.iter().copied().collect();
        let edges = self.edges.iter().copied().filter(|e| !drop.contains(e)).collect();
        Hypergraph::from_canonical(self.n, self.r, edges)
    }

    /// Union of edge sets on the same `(n, r)`.
    pub fn with_edges(&self, added: &[KSet]) -> Result<Hypergraph> {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(added);
        Hypergraph::new(self.n, self.r, edges)
    }

    fn check_vertex(&self, x: usize) -> Result<()> {
        if x == 0 || x > self.n {
            return Err(Error::IndexOutOfRange {
                what: "vertex",
                index: x as u64,
                limit: self.n as u64,
            });
        }
        Ok(())
    }

    /// `H - x`: edges avoiding `x`, labels above `x` shifted down by one.
    pub fn delete_vertex(&self, x: usize) -> Result<Hypergraph> {
        self.check_vertex(x)?;
        let edges = self
            .edges
            .iter()
            .filter(|e| !e.contains(x))
            .map(|e| e.compact_without(x))
            .collect();
        Hypergraph::new(self.n - 1, self.r, edges)
    }

    /// `H / x`: `{A \ {x} : x in A}`, an `(r-1)`-graph on the compacted labels.
    pub fn link(&self, x: usize) -> Result<Hypergraph> {
        self.check_vertex(x)?;
        if self.r == 0 {
            return Err(Error::Uniformity("the link of a 0-graph is undefined".into()));
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.contains(x))
            .map(|e| e.remove(x).compact_without(x))
            .collect();
        Hypergraph::new(self.n - 1, self.r - 1, edges)
    }

    /// Sub-hypergraph induced on `keep`, relabelled `1..=|keep|` in order.
    pub fn induced(&self, keep: KSet) -> Result<Hypergraph> {
        if !keep.fits(self.n) {
            return range_err(format!("vertex set {keep} leaves [1..{}]", self.n));
        }
        let labels = keep.to_vec();
        let relabel = |e: KSet| {
            let mut bits = 0u64;
            for (i, &v) in labels.iter().enumerate() {
                if e.contains(v) {
                    bits |= 1 << i;
                }
            }
            KSet::from_bits(bits)
        };
        let edges = self
            .edges
            .iter()
            .filter(|e| e.is_subset(keep))
            .map(|&e| relabel(e))
            .collect();
        Hypergraph::new(labels.len(), self.r, edges)
    }

    /// Number of edges containing `set`.
    pub fn s_degree(&self, set: KSet) -> usize {
        self.edges.iter().filter(|e| set.is_subset(**e)).count()
    }

    /// Vertex degrees, index `v - 1`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for v in e.iter() {
                deg[v - 1] += 1;
            }
        }
        deg
    }

    /// Largest number of edges through a single `s`-set.
    pub fn max_s_degree(&self, s: usize) -> usize {
        let mut counts = std::collections::HashMap::new();
        for e in &self.edges {
            for sub in e.subsets(s) {
                *counts.entry(sub).or_insert(0usize) += 1;
            }
        }
        counts.into_values().max().unwrap_or(0)
    }

    /// Union of all edges.
    pub fn support(&self) -> KSet {
        self.edges.iter().fold(KSet::EMPTY, |acc, e| acc.union(*e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShadowDirection {
    Lower,
    Upper,
}

/// Lower `p`-shadow (all `(k-p)`-subsets of members) or upper `p`-shadow
/// (all `(k+p)`-subsets of `[n]` containing a member) of a `k`-uniform
/// family. The result is colex-sorted.
pub fn shadow(family: &[KSet], p: usize, direction: ShadowDirection, n: usize) -> Result<Vec<KSet>> {
    if p == 0 {
        return range_err("shadow order p must be at least 1");
    }
    if n > MAX_VERTICES {
        return range_err(format!("n = {n} exceeds the {MAX_VERTICES}-vertex cap"));
    }
    let Some(first) = family.first() else {
        return Ok(Vec::new());
    };
    let k = first.len();
    if let Some(bad) = family.iter().find(|f| f.len() != k) {
        return Err(Error::Uniformity(format!("{bad} is not a {k}-set")));
    }
    if let Some(bad) = family.iter().find(|f| !f.fits(n)) {
        return range_err(format!("{bad} leaves [1..{n}]"));
    }
    let mut out = BTreeSet::new();
    match direction {
        ShadowDirection::Lower => {
            if p > k {
                return range_err(format!("lower {p}-shadow of {k}-sets"));
            }
            for f in family {
                out.extend(f.subsets(k - p));
            }
        }
        ShadowDirection::Upper => {
            if k + p > n {
                return range_err(format!("upper {p}-shadow of {k}-sets needs k + p <= n = {n}"));
            }
            for f in family {
                out.extend(f.complement(n).subsets(p).map(|extra| f.union(extra)));
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Setwise complements in `[n]`.
pub fn complement_family(family: &[KSet], n: usize) -> Vec<KSet> {
    let mut out: Vec<KSet> = family.iter().map(|f| f.complement(n)).collect();
    out.sort_unstable();
    out
}
