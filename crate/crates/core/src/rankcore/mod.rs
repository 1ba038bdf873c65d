//! Inclusion matrices and their rank over the rationals and prime fields.

mod bareiss;
mod certified;
mod matrix;
mod modular;
mod nullspace;
mod observations;

pub(crate) use bareiss::exact_rank as exact_rank_dense;
pub use matrix::InclusionMatrix;
pub(crate) use modular::rank_mod;
pub use modular::{is_prime, random_word_prime, MODULUS_LIMIT};
pub use nullspace::{associated_graph, nullspace, DependenceSequence};
pub use observations::{
    check_one_clique, check_semistar, is_independent, stable_set_witness, stable_set_witness_unchecked,
    Semistar, StableSetWitness,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;

/// Fresh primes tried by certified mode before it falls back to exact
/// elimination.
const CERTIFY_ATTEMPTS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMode {
    Exact,
    Modular(u64),
    /// Random-prime rank promoted to an exact rank; `seed` drives the
    /// prime choice.
    Certified {
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankMethod {
    ExactFractionFree,
    ModularLowerBound,
    CertifiedHybrid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub rank: usize,
    /// Column count minus rank. For modular results this is the GF(p)
    /// nullity, an upper bound for the rational one.
    pub nullity: usize,
    pub method: RankMethod,
    pub primes_used: Vec<u64>,
    /// True when the rank is the rational rank.
    pub verified: bool,
}

fn exact_certificate(m: &InclusionMatrix) -> RankCertificate {
    // all-zero columns cannot carry pivots; dropping them shrinks the work
    let nonzero: Vec<usize> = {
        let mut used = vec![false; m.ncols()];
        for row in m.entries() {
            for &j in row {
                used[j] = true;
            }
        }
        (0..m.ncols()).filter(|&j| used[j]).collect()
    };
    let mut index = vec![usize::MAX; m.ncols()];
    for (k, &j) in nonzero.iter().enumerate() {
        index[j] = k;
    }
    let dense: Vec<Vec<i128>> = m
        .entries()
        .iter()
        .map(|row| {
            let mut v = vec![0i128; nonzero.len()];
            for &j in row {
                v[index[j]] = 1;
            }
            v
        })
        .collect();
    let rank = bareiss::exact_rank(dense, nonzero.len());
    RankCertificate {
        rank,
        nullity: m.ncols() - rank,
        method: RankMethod::ExactFractionFree,
        primes_used: Vec::new(),
        verified: true,
    }
}

fn certified_certificate(m: &InclusionMatrix, seed: u64) -> RankCertificate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut primes_used = Vec::new();
    for _ in 0..CERTIFY_ATTEMPTS {
        let p = random_word_prime(&mut rng);
        primes_used.push(p);
        let first = modular::echelon_gfp(m.entries(), m.ncols(), p, true);
        let rank = first.rank();
        // the modular rank is a lower bound, so hitting a dimension is final
        let saturated = rank == m.ncols() || rank == m.nrows();
        if saturated || certified::lift_kernel(m, &first, &mut rng, &mut primes_used).is_some() {
            return RankCertificate {
                rank,
                nullity: m.ncols() - rank,
                method: RankMethod::CertifiedHybrid,
                primes_used,
                verified: true,
            };
        }
    }
    RankCertificate {
        primes_used,
        ..exact_certificate(m)
    }
}

/// Rank of `m` in the requested mode. A matrix with no rows has rank 0.
pub fn rank(m: &InclusionMatrix, mode: RankMode) -> Result<RankCertificate> {
    match mode {
        RankMode::Exact => Ok(exact_certificate(m)),
        RankMode::Modular(p) => {
            let rank = modular::rank_mod(m.entries(), m.ncols(), p)?;
            Ok(RankCertificate {
                rank,
                nullity: m.ncols() - rank,
                method: RankMethod::ModularLowerBound,
                primes_used: vec![p],
                verified: false,
            })
        }
        RankMode::Certified { seed } => Ok(certified_certificate(m, seed)),
    }
}

/// Kernel basis computed by modular lifting, verified exactly. Falls back
/// to [`nullspace`] if lifting fails. Agrees with [`nullspace`] vector for
/// vector, since both return the normalized RREF-shaped basis.
pub fn nullspace_certified(m: &InclusionMatrix, seed: u64) -> Vec<DependenceSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut primes = Vec::new();
    for _ in 0..CERTIFY_ATTEMPTS {
        let p = random_word_prime(&mut rng);
        let first = modular::echelon_gfp(m.entries(), m.ncols(), p, true);
        if let Some(basis) = certified::lift_kernel(m, &first, &mut rng, &mut primes) {
            return basis
                .into_iter()
                .map(|alpha| DependenceSequence::new(m.n(), m.s(), alpha).expect("length matches"))
                .collect();
        }
    }
    nullspace(m)
}
