use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hyperrank::combinat::{binom_u64, cascade_decompose, colex_rank, colex_unrank, kk_lower_shadow_bound};
use hyperrank::experiments::threshold_sweep;
use hyperrank::hypergraph::{complement_family, hamilton_frame, random_hypergraph, shadow, ShadowDirection};
use hyperrank::kset::k_subsets;
use hyperrank::rankcore::{nullspace, random_word_prime};
use hyperrank::{rank, Hypergraph, InclusionMatrix, KSet, RankMode};

/// Rank over Q by plain Gaussian elimination, built straight from set
/// containment.
fn oracle_rank(g: &Hypergraph, s: usize) -> usize {
    let cols: Vec<KSet> = k_subsets(g.n(), s).collect();
    let mut rows: Vec<Vec<BigRational>> = g
        .edges()
        .iter()
        .map(|e| {
            cols.iter()
                .map(|c| {
                    if c.is_subset(*e) {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols.len() {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn exact(g: &Hypergraph, s: usize) -> usize {
    rank(&InclusionMatrix::build(g, s).unwrap(), RankMode::Exact)
        .unwrap()
        .rank
}

/// Random r-graph on at most `max_n` vertices together with an `s <= r`.
fn instance(max_n: usize) -> impl Strategy<Value = (Hypergraph, usize)> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), 1..=n.min(4)))
        .prop_flat_map(|(n, r)| (Just(n), Just(r), 0..=r, 0.05..0.95f64, any::<u64>()))
        .prop_map(|(n, r, s, p, seed)| (random_hypergraph(n, r, p, seed).unwrap(), s))
}

fn family(max_n: usize) -> impl Strategy<Value = (Vec<KSet>, usize, usize)> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), 1..n))
        .prop_flat_map(|(n, k)| {
            let all: Vec<KSet> = k_subsets(n, k).collect();
            (
                Just(n),
                Just(k),
                proptest::sample::subsequence(all.clone(), 0..=all.len()),
            )
        })
        .prop_map(|(n, k, f)| (f, n, k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_rank_matches_rational_elimination((g, s) in instance(7)) {
        prop_assert_eq!(exact(&g, s), oracle_rank(&g, s));
    }

    #[test]
    fn certified_equals_exact_and_modular_never_exceeds((g, s) in instance(8), seed in any::<u64>()) {
        let m = InclusionMatrix::build(&g, s).unwrap();
        let r = rank(&m, RankMode::Exact).unwrap().rank;
        let cert = rank(&m, RankMode::Certified { seed }).unwrap();
        prop_assert_eq!(cert.rank, r);
        prop_assert!(cert.verified);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut primes = vec![2, 3, 5, 7];
        primes.extend((0..4).map(|_| random_word_prime(&mut rng)));
        for p in primes {
            prop_assert!(rank(&m, RankMode::Modular(p)).unwrap().rank <= r);
        }
    }

    #[test]
    fn rank_is_at_most_the_nonzero_columns((g, s) in instance(8)) {
        let m = InclusionMatrix::build(&g, s).unwrap();
        let lower = match g.r() - s {
            0 => g.edges().to_vec(),
            p => shadow(g.edges(), p, ShadowDirection::Lower, g.n()).unwrap(),
        };
        prop_assert_eq!(m.ncols() - m.zero_columns().len(), lower.len());
        prop_assert!(exact(&g, s) <= lower.len());
    }

    #[test]
    fn rank_is_sub_additive_over_delete_and_link((g, s) in instance(9)) {
        prop_assume!(s >= 1 && s < g.r());
        let whole = exact(&g, s);
        for x in 1..=g.n() {
            let minus = exact(&g.delete_vertex(x).unwrap(), s);
            let link = exact(&g.link(x).unwrap(), s - 1);
            prop_assert!(whole >= minus + link, "x = {}: {} < {} + {}", x, whole, minus, link);
        }
    }

    #[test]
    fn edges_split_into_link_and_deletion((g, _s) in instance(10)) {
        for x in 1..=g.n() {
            prop_assert_eq!(g.len(), g.link(x).unwrap().len() + g.delete_vertex(x).unwrap().len());
        }
    }

    #[test]
    fn upper_shadow_is_dual_to_lower_shadow((f, n, k) in family(10), p in 1usize..4) {
        prop_assume!(k + p <= n && p <= n - k);
        let mut up = shadow(&f, p, ShadowDirection::Upper, n).unwrap();
        let mut dual = complement_family(&shadow(&complement_family(&f, n), p, ShadowDirection::Lower, n).unwrap(), n);
        up.sort();
        dual.sort();
        prop_assert_eq!(up, dual);
    }

    #[test]
    fn kernel_vectors_restrict_to_induced_subgraphs((g, s) in instance(8), mask in any::<u64>()) {
        let keep = KSet::from_vertices((1..=g.n()).filter(|v| mask >> v & 1 == 1)).unwrap();
        prop_assume!(keep.len() >= s);
        let h = InclusionMatrix::build(&g.induced(keep).unwrap(), s).unwrap();
        for alpha in nullspace(&InclusionMatrix::build(&g, s).unwrap()) {
            prop_assert!(h.annihilates(alpha.restrict(keep).weights()));
        }
    }

    #[test]
    fn kernel_vectors_transfer_to_links((g, s) in instance(8)) {
        prop_assume!(s >= 1);
        for alpha in nullspace(&InclusionMatrix::build(&g, s).unwrap()) {
            for x in 1..=g.n() {
                if let Some(beta) = alpha.link_transfer(x) {
                    let link = InclusionMatrix::build(&g.link(x).unwrap(), s - 1).unwrap();
                    prop_assert!(link.annihilates(beta.weights()));
                }
            }
        }
    }

    #[test]
    fn colex_rank_roundtrips(n in 1usize..=24, mask in any::<u32>()) {
        let set = KSet::from_vertices((1..=n).filter(|v| mask >> (v - 1) & 1 == 1)).unwrap();
        let idx = colex_rank(set);
        prop_assert!(idx < binom_u64(n, set.len()));
        prop_assert_eq!(colex_unrank(idx, set.len(), n).unwrap(), set);
    }

    #[test]
    fn cascade_reconstructs_large_m(digits in "[1-9][0-9]{0,17}", k in 1usize..=10) {
        let m: BigUint = digits.parse().unwrap();
        let d = cascade_decompose(&m, k).unwrap();
        prop_assert!(d.is_valid());
        prop_assert_eq!(d.reconstruct(), m);
    }

    #[test]
    fn kk_bound_is_monotone_in_m(m in 1u64..5000, k in 1usize..=6, p in 1usize..=6) {
        prop_assume!(p <= k);
        let a = kk_lower_shadow_bound(&BigUint::from(m), k, p).unwrap();
        let b = kk_lower_shadow_bound(&BigUint::from(m + 1), k, p).unwrap();
        prop_assert!(a <= b);
    }

    #[test]
    fn hamilton_attachments_are_disjoint_and_touch_the_cycle_in_r_minus_one(r in 2usize..=5, extra in 0usize..=20) {
        // the shortest tight cycle has 2r - 1 vertices, and the attachment
        // blocks must fit inside the cycle
        let n = 2 * r - 1 + extra;
        let frame = hamilton_frame(n, r);
        prop_assume!(frame.is_ok());
        let frame = frame.unwrap();
        let cycle = frame.cycle.iter().fold(KSet::EMPTY, |acc, e| acc.union(*e));
        for (i, a) in frame.attachments.iter().enumerate() {
            prop_assert_eq!(a.intersection(cycle).len(), r - 1);
            for b in &frame.attachments[i + 1..] {
                prop_assert!(a.intersection(*b).is_empty());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn sweeps_are_reproducible(seed in any::<u64>()) {
        let grid = [0.05, 0.2, 0.5];
        let a = threshold_sweep(7, 3, 1, &grid, 12, seed).unwrap();
        let b = threshold_sweep(7, 3, 1, &grid, 12, seed).unwrap();
        prop_assert_eq!(a.stats, b.stats);
        prop_assert_eq!(a.witnesses, b.witnesses);
    }
}

#[test]
fn cascade_rejects_tops_beyond_u64() {
    let m = BigUint::from(u64::MAX) * BigUint::from(u64::MAX);
    for k in 1..=2 {
        assert!(cascade_decompose(&m, k).is_err());
    }
    assert!(cascade_decompose(&m, 3).unwrap().reconstruct() == m);
}

#[test]
fn oracle_agrees_on_a_known_kernel() {
    // four-cycle: rank 3 over Q, kernel (1,-1,1,-1)
    let c4 = Hypergraph::new(
        4,
        2,
        ["12", "23", "14", "34"]
            .iter()
            .map(|e| KSet::from_vertices(e.chars().map(|c| c.to_digit(10).unwrap() as usize)).unwrap())
            .collect(),
    )
    .unwrap();
    assert_eq!(oracle_rank(&c4, 1), 3);
    let k = nullspace(&InclusionMatrix::build(&c4, 1).unwrap());
    assert_eq!(k[0].weights(), &[1, -1, 1, -1].map(BigInt::from)[..]);
}
