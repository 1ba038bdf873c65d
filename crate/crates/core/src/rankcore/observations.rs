//! Executable forms of the structural facts every dependence sequence obeys.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::matrix::InclusionMatrix;
use super::nullspace::DependenceSequence;
use crate::combinat::binom_u64;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::kset::{k_subsets, KSet};

fn check_pair(g: &Hypergraph, gp: &Hypergraph) -> Result<()> {
    if gp.n() != g.n() {
        return Err(Error::Uniformity(format!(
            "associated graph on {} vertices, host on {}",
            gp.n(),
            g.n()
        )));
    }
    if gp.r() > g.r() {
        return Err(Error::Uniformity(format!(
            "{}-uniform associated graph for a {}-graph",
            gp.r(),
            g.r()
        )));
    }
    Ok(())
}

/// Number of edges of `gp` inside `set`.
fn edges_inside(gp: &Hypergraph, set: KSet) -> usize {
    if set.len() < gp.r() {
        return 0;
    }
    if binom_u64(set.len(), gp.r()) <= gp.len() as u64 {
        set.subsets(gp.r()).filter(|&q| gp.contains(q)).count()
    } else {
        gp.edges().iter().filter(|q| q.is_subset(set)).count()
    }
}

/// True when no edge of `gp` lies inside `set`.
pub fn is_independent(gp: &Hypergraph, set: KSet) -> bool {
    edges_inside(gp, set) == 0
}

/// Edges of `g` that induce exactly one edge of `gp`. Empty when `gp` is
/// the associated graph of a dependence sequence for `g`.
pub fn check_one_clique(g: &Hypergraph, gp: &Hypergraph) -> Result<Vec<KSet>> {
    check_pair(g, gp)?;
    Ok(g.edges()
        .iter()
        .copied()
        .filter(|&e| edges_inside(gp, e) == 1)
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Semistar {
    pub center: usize,
    pub leaves: KSet,
}

/// `(r+s-2)`-semistars of `gp` with no `r`-set `{x} + R'`, `R'` in
/// `binom(L, r-1)`, in `f`.
pub fn check_semistar(g: &Hypergraph, gp: &Hypergraph, f: &Hypergraph) -> Result<Vec<Semistar>> {
    check_pair(g, gp)?;
    if f.n() != g.n() || f.r() != g.r() {
        return Err(Error::Uniformity(format!(
            "removed family is a {}-graph on {} vertices",
            f.r(),
            f.n()
        )));
    }
    let (n, r, s) = (g.n(), g.r(), gp.r());
    if s == 0 || r == 0 || gp.is_empty() {
        return Ok(Vec::new());
    }
    let k = r + s - 2;
    if k + 1 > n {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for x in gp.support().iter() {
        let others: Vec<usize> = (1..=n).filter(|&v| v != x).collect();
        for local in k_subsets(n - 1, k) {
            let leaves = local.iter().fold(KSet::EMPTY, |acc, i| acc.insert(others[i - 1]));
            if !is_independent(gp, leaves) {
                continue;
            }
            if !leaves.subsets(s - 1).any(|sp| gp.contains(sp.insert(x))) {
                continue;
            }
            if !leaves.subsets(r - 1).any(|rp| f.contains(rp.insert(x))) {
                out.push(Semistar { center: x, leaves });
            }
        }
    }
    Ok(out)
}

/// Output of the independent-set procedure: the set `A`, the edge `R` it
/// was grown from, and the guaranteed lower bound on `|A|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableSetWitness {
    pub set: KSet,
    pub edge: KSet,
    pub bound: BigRational,
}

/// Left minus right side of the hypothesis
/// `(n-r-s)(C(n,r)-|F|) >= |F| C(r,s) C(n-r+s,s)`.
fn hypothesis_slack(n: usize, r: usize, s: usize, f_len: usize) -> BigInt {
    let total = BigInt::from(binom_u64(n, r));
    let lhs = BigInt::from(n as i64 - r as i64 - s as i64) * (&total - f_len);
    let rhs = BigInt::from(f_len) * binom_u64(r, s) * binom_u64(n - r + s, s);
    lhs - rhs
}

/// Runs the procedure after checking the hypothesis of the lemma it comes
/// from; fails with [`Error::Hypothesis`] otherwise.
pub fn stable_set_witness(
    g: &Hypergraph,
    f: &Hypergraph,
    alpha: &DependenceSequence,
) -> Result<StableSetWitness> {
    let slack = hypothesis_slack(g.n(), g.r(), alpha.s(), f.len());
    if slack < BigInt::from(0) {
        return Err(Error::Hypothesis(format!(
            "(n-r-s)(C(n,r)-|F|) falls short of |F|C(r,s)C(n-r+s,s) by {}",
            -slack
        )));
    }
    stable_set_witness_unchecked(g, f, alpha)
}

/// The procedure without the counting hypothesis. `A` is still returned;
/// its independence is then not guaranteed.
pub fn stable_set_witness_unchecked(
    g: &Hypergraph,
    f: &Hypergraph,
    alpha: &DependenceSequence,
) -> Result<StableSetWitness> {
    let (n, r, s) = (g.n(), g.r(), alpha.s());
    if alpha.n() != n || s > r {
        return Err(Error::Uniformity(format!(
            "sequence on {}-subsets of [{}] for a {r}-graph on [{n}]",
            s,
            alpha.n()
        )));
    }
    if f.n() != n || f.r() != r || f.len() + g.len() != binom_u64(n, r) as usize {
        return Err(Error::Hypothesis("F is not the complement of G".into()));
    }
    if alpha.is_trivial() {
        return Err(Error::Hypothesis("dependence sequence is trivial".into()));
    }
    let m = InclusionMatrix::build(g, s)?;
    if !m.annihilates(alpha.weights()) {
        return Err(Error::Hypothesis(
            "sequence is not in the kernel of M_s^r(G)".into(),
        ));
    }
    let Some(&first) = g.edges().first() else {
        return Err(Error::Hypothesis("G has no edges".into()));
    };
    let near = |e: &KSet, rr: KSet| e.intersection(rr).len() + s >= r;
    let mut best = (usize::MAX, first);
    for &rr in g.edges() {
        let hits = f.edges().iter().filter(|e| near(e, rr)).count();
        if hits < best.0 {
            best = (hits, rr);
        }
    }
    let edge = best.1;
    let mut removed = KSet::EMPTY;
    for e in f.edges().iter().filter(|e| near(e, edge)) {
        let v = e
            .difference(edge)
            .min_vertex()
            .expect("e differs from an edge of G");
        removed = removed.insert(v);
    }
    let set = KSet::prefix(n).difference(removed);
    let num = BigInt::from(f.len()) * binom_u64(r, s) * binom_u64(n - r + s, s);
    let den = BigInt::from(binom_u64(n, r) as usize - f.len());
    let bound = BigRational::from_integer(BigInt::from(n)) - BigRational::new(num, den);
    Ok(StableSetWitness { set, edge, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{complete, star_deleted_graph, tightness_graph};
    use crate::rankcore::nullspace::nullspace;

    fn ks(v: &[usize]) -> KSet {
        KSet::from_vertices(v.iter().copied()).unwrap()
    }

    #[test]
    fn four_cycle_has_no_one_cliques() {
        let c4 = tightness_graph(4, 2, 1).unwrap();
        let m = InclusionMatrix::build(&c4, 1).unwrap();
        let gp = nullspace(&m)[0].support();
        assert!(check_one_clique(&c4, &gp).unwrap().is_empty());
        assert!(check_semistar(&c4, &gp, &c4.complement()).unwrap().is_empty());
    }

    #[test]
    fn star_deleted_graph_examples() {
        let g = star_deleted_graph(6, 1, 2, 1).unwrap();
        let gp = Hypergraph::new(6, 1, vec![ks(&[1])]).unwrap();
        assert!(check_one_clique(&g, &gp).unwrap().is_empty());
        assert!(check_semistar(&g, &gp, &g.complement()).unwrap().is_empty());
    }

    #[test]
    fn negative_control() {
        let k3 = complete(3, 2).unwrap();
        let gp = Hypergraph::new(3, 1, vec![ks(&[1])]).unwrap();
        assert_eq!(
            check_one_clique(&k3, &gp).unwrap(),
            vec![ks(&[1, 2]), ks(&[1, 3])]
        );
        let bad = Hypergraph::new(4, 1, vec![ks(&[1])]).unwrap();
        assert!(check_one_clique(&k3, &bad).is_err());
        // with nothing removed, every semistar {1, y} is a violation
        let none = Hypergraph::empty(3, 2).unwrap();
        assert_eq!(check_semistar(&k3, &gp, &none).unwrap().len(), 2);
    }

    #[test]
    fn semistar_on_larger_kernel() {
        let g = star_deleted_graph(8, 1, 3, 1).unwrap();
        let m = InclusionMatrix::build(&g, 1).unwrap();
        for alpha in nullspace(&m) {
            let gp = alpha.support();
            assert!(check_semistar(&g, &gp, &g.complement()).unwrap().is_empty());
        }
        let full = complete(7, 3).unwrap();
        let gp = Hypergraph::empty(7, 1).unwrap();
        assert!(check_semistar(&full, &gp, &full.complement()).unwrap().is_empty());
    }

    #[test]
    fn stable_set_small_example() {
        let g = star_deleted_graph(6, 1, 2, 1).unwrap();
        let f = g.complement();
        let alpha = DependenceSequence::indicator(6, ks(&[1]));
        assert!(matches!(
            stable_set_witness(&g, &f, &alpha),
            Err(Error::Hypothesis(_))
        ));
        let w = stable_set_witness_unchecked(&g, &f, &alpha).unwrap();
        assert_eq!(w.set, ks(&[2, 3, 4, 5, 6]));
        assert_eq!(w.edge, ks(&[2, 3]));
        assert_eq!(w.bound, BigRational::from_integer(BigInt::from(1)));
    }

    #[test]
    fn stable_set_under_hypothesis() {
        for n in 8..=10 {
            let g = star_deleted_graph(n, 1, 2, 1).unwrap();
            let f = g.complement();
            let m = InclusionMatrix::build(&g, 1).unwrap();
            for alpha in nullspace(&m) {
                let w = stable_set_witness(&g, &f, &alpha).unwrap();
                assert!(is_independent(&alpha.support(), w.set));
                assert!(w.edge.is_subset(w.set));
                assert!(BigRational::from_integer(BigInt::from(w.set.len())) >= w.bound);
            }
        }
    }
}
