//! Modular rank promoted to an exact rank by lifting a kernel basis.
//!
//! The GF(p) rank is a lower bound for the rational rank. If the RREF
//! kernel basis computed modulo several primes lifts (CRT plus rational
//! reconstruction) to integer vectors that `M` annihilates exactly, the
//! rational nullity is at least the modular nullity, so the two ranks agree.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::matrix::InclusionMatrix;
use super::modular::{echelon_gfp, random_word_prime, ModEchelon};
use super::nullspace::normalize;
use crate::combinat::binom_u64;

/// Distinct bad primes tolerated before giving up on a lift.
const MAX_BAD_PRIMES: usize = 8;

/// `x ≡ a (mod m)`, `x ≡ b (mod p)` combined into a residue mod `m p`.
fn crt_step(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let p_big = BigInt::from(p);
    let m_mod_p = (m % &p_big).to_u64_digits().1.first().copied().unwrap_or(0);
    let inv = mod_inverse(m_mod_p, p);
    let a_mod_p = (a % &p_big).to_u64_digits().1.first().copied().unwrap_or(0);
    let diff = ((b as u128 + p as u128 - a_mod_p as u128) % p as u128) as u64;
    let k = ((diff as u128 * inv as u128) % p as u128) as u64;
    a + m * BigInt::from(k)
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "modulus must be prime to the value");
    t.rem_euclid(p as i128) as u64
}

/// Smallest-denominator rational `num/den` with `num ≡ a·den (mod m)` and
/// `|num|, den <= sqrt(m/2)`; `None` if no such fraction exists.
pub(crate) fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1) = (r1, r2);
        (t0, t1) = (t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.sign() == Sign::Minus {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// Number of 61-bit primes whose product exceeds `2 H^2`, where `H` is the
/// Hadamard bound on `rank`-sized minors of a matrix with `weight` ones per row.
fn primes_needed(rank: usize, weight: u64) -> usize {
    let bits_per_row = (weight.max(2) as f64).log2() / 2.0;
    let bits = 2.0 * bits_per_row * rank as f64 + 2.0;
    ((bits / 61.0).ceil() as usize).max(1)
}

/// Lifts the RREF kernel basis of `first` to integer vectors and verifies
/// them against `m`. Returns the normalized basis on success.
pub(crate) fn lift_kernel<R: Rng + ?Sized>(
    m: &InclusionMatrix,
    first: &ModEchelon,
    rng: &mut R,
    primes_used: &mut Vec<u64>,
) -> Option<Vec<Vec<BigInt>>> {
    let ncols = m.ncols();
    let rank = first.rank();
    let mut is_pivot = vec![false; ncols];
    for &c in &first.pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
    if free.is_empty() {
        return Some(Vec::new());
    }
    let selected: Vec<Vec<usize>> = first.basis_rows.iter().map(|&i| m.entries()[i].clone()).collect();

    // residues[i][k]: RREF entry (pivot row i, free column free[k])
    let mut residues: Vec<Vec<BigInt>> = first
        .rows
        .iter()
        .map(|row| free.iter().map(|&f| BigInt::from(row[f])).collect())
        .collect();
    let mut modulus = BigInt::from(first.p);
    let need = primes_needed(rank, binom_u64(m.r(), m.s()));
    let mut used = 1;
    let mut bad = 0;
    while used < need {
        let p = random_word_prime(rng);
        if modulus.is_multiple_of(&BigInt::from(p)) {
            continue;
        }
        let ech = echelon_gfp(&selected, ncols, p, true);
        primes_used.push(p);
        if ech.pivots != first.pivots {
            bad += 1;
            if bad > MAX_BAD_PRIMES {
                return None;
            }
            continue;
        }
        for (res_row, row) in residues.iter_mut().zip(&ech.rows) {
            for (res, &f) in res_row.iter_mut().zip(&free) {
                *res = crt_step(res, &modulus, row[f], p);
            }
        }
        modulus *= p;
        used += 1;
    }

    let mut basis = Vec::with_capacity(free.len());
    for (k, &f) in free.iter().enumerate() {
        let mut fracs = Vec::with_capacity(rank);
        let mut lcm = BigInt::one();
        for res_row in &residues {
            let (num, den) = rational_reconstruct(&res_row[k], &modulus)?;
            lcm = lcm.lcm(&den);
            fracs.push((num, den));
        }
        let mut v = vec![BigInt::zero(); ncols];
        v[f] = lcm.clone();
        for ((num, den), &c) in fracs.iter().zip(&first.pivots) {
            v[c] = -(num * (&lcm / den));
        }
        if !m.annihilates(&v) {
            return None;
        }
        normalize(&mut v);
        basis.push(v);
    }
    Some(basis)
}
