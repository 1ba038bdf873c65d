//! Elimination over GF(2) (packed words) and GF(p) for odd word-sized
//! primes (Montgomery arithmetic).

use rand::Rng;

use crate::error::{Error, Result};

/// Moduli accepted by the modular kernel are primes below this bound.
pub const MODULUS_LIMIT: u64 = 1 << 62;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut twos = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        twos += 1;
    }
    'witness: for a in SMALL {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..twos {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A uniformly placed prime in `[2^61, 2^62)`.
pub fn random_word_prime<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let mut c = rng.random_range((1u64 << 61)..MODULUS_LIMIT) | 1;
        while c < MODULUS_LIMIT {
            if is_prime(c) {
                return c;
            }
            c += 2;
        }
    }
}

pub(crate) fn check_modulus(p: u64) -> Result<()> {
    if p >= MODULUS_LIMIT || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Montgomery form for an odd modulus `p < 2^62`; residues stay below `p`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Montgomery {
    p: u64,
    /// `-p^{-1} mod 2^64`
    neg_inv: u64,
    /// `2^128 mod p`
    r2: u64,
}

impl Montgomery {
    pub fn new(p: u64) -> Self {
        debug_assert!(p % 2 == 1 && p < MODULUS_LIMIT);
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r1 = ((1u128 << 64) % p as u128) as u64;
        let r2 = mulmod(r1, r1, p);
        Montgomery {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    fn reduce(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    pub fn encode(&self, a: u64) -> u64 {
        self.reduce((a % self.p) as u128 * self.r2 as u128)
    }

    pub fn decode(&self, a: u64) -> u64 {
        self.reduce(a as u128)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn one(&self) -> u64 {
        self.encode(1)
    }

    pub fn inv(&self, a: u64) -> u64 {
        let mut acc = self.one();
        let mut base = a;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Rank of a 0/1 matrix over GF(2), rows given by their column supports.
pub(crate) fn rank_gf2<R: AsRef<[usize]>>(rows: &[R], ncols: usize) -> usize {
    let words = ncols.div_ceil(64);
    let mut basis: Vec<Option<Vec<u64>>> = vec![None; ncols];
    let mut rank = 0;
    for row in rows {
        let mut v = vec![0u64; words];
        for &j in row.as_ref() {
            v[j / 64] ^= 1 << (j % 64);
        }
        let mut w = 0;
        while w < words {
            if v[w] == 0 {
                w += 1;
                continue;
            }
            let col = w * 64 + v[w].trailing_zeros() as usize;
            match &basis[col] {
                Some(b) => {
                    for k in w..words {
                        v[k] ^= b[k];
                    }
                }
                None => {
                    basis[col] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
        if rank == ncols {
            break;
        }
    }
    rank
}

/// Row-reduced echelon form over GF(p), odd `p`.
#[derive(Clone, Debug)]
pub(crate) struct ModEchelon {
    pub p: u64,
    pub pivots: Vec<usize>,
    /// RREF rows (standard representatives), aligned with `pivots`.
    pub rows: Vec<Vec<u64>>,
    /// Input rows that entered the basis, in insertion order.
    pub basis_rows: Vec<usize>,
}

impl ModEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Incremental GF(p) elimination; each input row is reduced against the
/// current basis and kept if a residue survives.
pub(crate) fn echelon_gfp<R: AsRef<[usize]>>(rows: &[R], ncols: usize, p: u64, reduce: bool) -> ModEchelon {
    let mont = Montgomery::new(p);
    let one = mont.one();
    let mut basis: Vec<Option<Vec<u64>>> = vec![None; ncols];
    let mut basis_rows = Vec::new();
    let mut rank = 0;
    for (idx, row) in rows.iter().enumerate() {
        if rank == ncols {
            break;
        }
        let mut v = vec![0u64; ncols];
        for &j in row.as_ref() {
            v[j] = one;
        }
        for col in 0..ncols {
            let c = v[col];
            if c == 0 {
                continue;
            }
            match &basis[col] {
                Some(b) => {
                    for k in col..ncols {
                        if b[k] != 0 {
                            v[k] = mont.sub(v[k], mont.mul(c, b[k]));
                        }
                    }
                }
                None => {
                    let inv = mont.inv(c);
                    for x in v[col..].iter_mut() {
                        *x = mont.mul(*x, inv);
                    }
                    basis[col] = Some(v);
                    basis_rows.push(idx);
                    rank += 1;
                    break;
                }
            }
        }
    }
    let pivots: Vec<usize> = (0..ncols).filter(|&c| basis[c].is_some()).collect();
    if reduce {
        // back-substitution: clear every pivot column above its pivot
        for (pi, &pc) in pivots.iter().enumerate().rev() {
            let pivot_row = basis[pc].clone().expect("pivot present");
            for &qc in &pivots[..pi] {
                let row = basis[qc].as_mut().expect("pivot present");
                let c = row[pc];
                if c != 0 {
                    for k in pc..ncols {
                        if pivot_row[k] != 0 {
                            row[k] = mont.sub(row[k], mont.mul(c, pivot_row[k]));
                        }
                    }
                }
            }
        }
    }
    let rows_out = pivots
        .iter()
        .map(|&c| {
            basis[c]
                .as_ref()
                .expect("pivot present")
                .iter()
                .map(|&x| mont.decode(x))
                .collect()
        })
        .collect();
    ModEchelon {
        p,
        pivots,
        rows: rows_out,
        basis_rows,
    }
}

/// Rank over GF(p) for any prime `p < 2^62`.
pub(crate) fn rank_mod<R: AsRef<[usize]>>(rows: &[R], ncols: usize, p: u64) -> Result<usize> {
    check_modulus(p)?;
    Ok(if p == 2 {
        rank_gf2(rows, ncols)
    } else {
        echelon_gfp(rows, ncols, p, false).rank()
    })
}
