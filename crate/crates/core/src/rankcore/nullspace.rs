use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::bareiss::eliminate_exact;
use super::matrix::InclusionMatrix;
use crate::combinat::{binom_u64, colex_rank, colex_unrank};
use crate::error::{range_err, Result};
use crate::hypergraph::Hypergraph;
use crate::kset::KSet;

/// Integer weights on the `s`-subsets of `[n]` (colex-indexed) that the
/// inclusion matrix they came from sends to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DependenceSequence {
    n: usize,
    s: usize,
    alpha: Vec<BigInt>,
}

impl DependenceSequence {
    pub fn new(n: usize, s: usize, alpha: Vec<BigInt>) -> Result<Self> {
        if alpha.len() as u64 != binom_u64(n, s) {
            return range_err(format!("{} weights for C({n},{s}) subsets", alpha.len()));
        }
        Ok(DependenceSequence { n, s, alpha })
    }

    /// Indicator of a single `s`-set.
    pub fn indicator(n: usize, set: KSet) -> Self {
        let s = set.len();
        let mut alpha = vec![BigInt::zero(); binom_u64(n, s) as usize];
        alpha[colex_rank(set) as usize] = BigInt::one();
        DependenceSequence { n, s, alpha }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.alpha
    }

    pub fn weight(&self, set: KSet) -> &BigInt {
        &self.alpha[colex_rank(set) as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.alpha.iter().all(Zero::is_zero)
    }

    /// The associated `s`-graph `{S : alpha_S != 0}`.
    pub fn support(&self) -> Hypergraph {
        let edges = self
            .alpha
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(j, _)| colex_unrank(j as u64, self.s, self.n).expect("index in range"))
            .collect();
        Hypergraph::from_canonical(self.n, self.s, edges)
    }

    /// Decimal strings, for JSON export.
    pub fn to_strings(&self) -> Vec<String> {
        self.alpha.iter().map(ToString::to_string).collect()
    }

    /// Weights on the `s`-subsets of `keep`, relabelled `1..=|keep|`.
    pub fn restrict(&self, keep: KSet) -> DependenceSequence {
        let labels = keep.to_vec();
        let k = labels.len();
        let alpha = crate::kset::k_subsets(k, self.s)
            .map(|local| {
                let global = local.iter().fold(KSet::EMPTY, |acc, i| acc.insert(labels[i - 1]));
                self.weight(global).clone()
            })
            .collect();
        DependenceSequence {
            n: k,
            s: self.s,
            alpha,
        }
    }

    /// `beta_{S'} = alpha_{{x} + S'}` over the `(s-1)`-subsets of `[n] - x`
    /// (labels compacted). `None` when some supported `s`-set avoids `x` or
    /// `s = 0`.
    pub fn link_transfer(&self, x: usize) -> Option<DependenceSequence> {
        if self.s == 0 || x == 0 || x > self.n {
            return None;
        }
        if self.support().edges().iter().any(|e| !e.contains(x)) {
            return None;
        }
        let alpha = crate::kset::k_subsets(self.n - 1, self.s - 1)
            .map(|local| {
                // undo the compaction: labels >= x move up by one
                let global = local
                    .iter()
                    .fold(KSet::EMPTY, |acc, v| acc.insert(if v >= x { v + 1 } else { v }));
                self.weight(global.insert(x)).clone()
            })
            .collect();
        Some(DependenceSequence {
            n: self.n - 1,
            s: self.s - 1,
            alpha,
        })
    }
}

/// Divides by the content and makes the first nonzero entry positive.
pub(crate) fn normalize(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return;
    }
    let flip = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x /= &g;
        if flip {
            *x = -&*x;
        }
    }
}

/// Kernel basis in RREF shape: one vector per non-pivot column `f`, with
/// weight on `f` and on pivot columns only.
pub(crate) fn kernel_from_jordan(
    rows: &[Vec<BigInt>],
    pivots: &[usize],
    scale: &BigInt,
    ncols: usize,
) -> Vec<Vec<BigInt>> {
    let mut is_pivot = vec![false; ncols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![BigInt::zero(); ncols];
            v[f] = scale.clone();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -&rows[i][f];
            }
            normalize(&mut v);
            v
        })
        .collect()
}

/// Integer basis of the right kernel of `m`, by fraction-free Gauss–Jordan
/// elimination. Each vector is coprime with a positive leading entry and is
/// checked against `m` before being returned.
pub fn nullspace(m: &InclusionMatrix) -> Vec<DependenceSequence> {
    let ncols = m.ncols();
    let dense = m.to_dense(0i128, 1i128);
    let ech = eliminate_exact(dense, ncols, true);
    kernel_from_jordan(&ech.rows, &ech.pivots, &ech.scale, ncols)
        .into_iter()
        .map(|alpha| {
            assert!(m.annihilates(&alpha), "kernel vector failed verification");
            DependenceSequence {
                n: m.n(),
                s: m.s(),
                alpha,
            }
        })
        .collect()
}

/// The associated `s`-graph of a dependence sequence.
pub fn associated_graph(alpha: &DependenceSequence) -> Hypergraph {
    alpha.support()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{complete, tightness_graph};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn four_cycle_kernel_alternates() {
        let c4 = tightness_graph(4, 2, 1).unwrap();
        let m = InclusionMatrix::build(&c4, 1).unwrap();
        let k = nullspace(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].weights(), &ints(&[1, -1, 1, -1])[..]);
        assert_eq!(associated_graph(&k[0]).len(), 4);
    }

    #[test]
    fn tightness_base_kernel() {
        for r in 3..=6 {
            let g = tightness_graph(r + 2, r, 1).unwrap();
            let m = InclusionMatrix::build(&g, 1).unwrap();
            let k = nullspace(&m);
            assert_eq!(k.len(), 1);
            let mut expect = vec![1i64; r + 1];
            expect.push(-(r as i64 - 1));
            assert_eq!(k[0].weights(), &ints(&expect)[..]);
        }
    }

    #[test]
    fn complete_graphs_have_trivial_kernel() {
        for (n, r, s) in [(6, 3, 1), (7, 3, 2), (8, 4, 2), (6, 2, 1)] {
            let m = InclusionMatrix::build(&complete(n, r).unwrap(), s).unwrap();
            assert!(nullspace(&m).is_empty());
        }
    }

    #[test]
    fn empty_matrix_kernel_is_everything() {
        let m = InclusionMatrix::build(&Hypergraph::empty(4, 2).unwrap(), 1).unwrap();
        let k = nullspace(&m);
        assert_eq!(k.len(), 4);
        assert_eq!(k[2].weights(), &ints(&[0, 0, 1, 0])[..]);
    }

    #[test]
    fn support_examples() {
        let one = DependenceSequence::indicator(5, KSet::from_vertices([2, 4]).unwrap());
        assert_eq!(one.support().edges(), &[KSet::from_vertices([2, 4]).unwrap()]);
        let zero = DependenceSequence::new(5, 2, vec![BigInt::zero(); 10]).unwrap();
        assert!(zero.is_trivial());
        assert!(zero.support().is_empty());
        assert!(DependenceSequence::new(5, 2, vec![BigInt::zero(); 9]).is_err());
    }

    #[test]
    fn normalization() {
        let mut v = ints(&[0, -4, 6, 2]);
        normalize(&mut v);
        assert_eq!(v, ints(&[0, 2, -3, -1]));
    }
}
