//! Integer-arithmetic kernel: prime sieves, Möbius function, odd squarefree
//! enumeration and the Kronecker symbol.
//!
//! Everything here is pure after table construction; tables are immutable and
//! freely shareable across threads.

use crate::error::{Error, Result};

/// Hard cap on sieve sizes; regenerating tables is cheap at desk scale, but a
/// runaway limit should fail loudly instead of swapping.
pub const SIEVE_BOUND: u64 = 1 << 31;

/// All primes `p ≤ limit`, ascending. Bit-packed sieve of Eratosthenes.
pub fn primes_upto(limit: u64) -> Result<Vec<u64>> {
    if limit > SIEVE_BOUND {
        return Err(Error::Resource {
            op: "primes_upto",
            required: limit,
            bound: SIEVE_BOUND,
        });
    }
    if limit < 2 {
        return Ok(Vec::new());
    }
    let n = limit as usize;
    // Bitset over odd numbers: bit k represents 2k+1.
    let half = n / 2 + 1;
    let mut composite = vec![0u64; half / 64 + 1];
    let is_set = |bits: &[u64], k: usize| bits[k / 64] >> (k % 64) & 1 == 1;
    let mut p = 3usize;
    while p * p <= n {
        if !is_set(&composite, p / 2) {
            let mut m = p * p;
            while m <= n {
                composite[m / 2 / 64] |= 1 << (m / 2 % 64);
                m += 2 * p;
            }
        }
        p += 2;
    }
    let mut primes = Vec::with_capacity((n as f64 / (n as f64).ln().max(2.0) * 1.2) as usize + 8);
    primes.push(2);
    let mut q = 3usize;
    while q <= n {
        if !is_set(&composite, q / 2) {
            primes.push(q as u64);
        }
        q += 2;
    }
    Ok(primes)
}

/// Möbius μ(n) for a single n, by trial division.
pub fn mobius(n: u64) -> Result<i32> {
    if n == 0 {
        return Err(Error::domain("mobius", "n must be positive"));
    }
    let mut m = n;
    let mut mu = 1i32;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return Ok(0);
            }
            mu = -mu;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        mu = -mu;
    }
    Ok(mu)
}

/// Table of μ(n) for 0 ≤ n ≤ limit (index 0 unused, set to 0) via a linear
/// sieve on the smallest prime factor.
pub fn mobius_table(limit: u64) -> Result<Vec<i8>> {
    if limit > SIEVE_BOUND / 8 {
        return Err(Error::Resource {
            op: "mobius_table",
            required: limit,
            bound: SIEVE_BOUND / 8,
        });
    }
    let n = limit as usize;
    let mut mu = vec![0i8; n + 1];
    if n >= 1 {
        mu[1] = 1;
    }
    let mut primes: Vec<u32> = Vec::new();
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p as usize;
            if p > spf[i] || ip > n {
                break;
            }
            spf[ip] = p;
            mu[ip] = if i % p as usize == 0 { 0 } else { -mu[i] };
        }
    }
    Ok(mu)
}

/// Signed odd squarefree d with 1 ≤ |d| ≤ limit, ascending by |d|, the
/// positive sign first. Produced by marking p² multiples over the odds;
/// no per-element factorization.
pub fn sieve_squarefree_odd(limit: u64) -> Result<Vec<i64>> {
    if limit > SIEVE_BOUND / 4 {
        return Err(Error::Resource {
            op: "sieve_squarefree_odd",
            required: limit,
            bound: SIEVE_BOUND / 4,
        });
    }
    Ok(squarefree_odd_magnitudes(limit)?
        .into_iter()
        .flat_map(|m| [m as i64, -(m as i64)])
        .collect())
}

/// The positive magnitudes |d| of the odd squarefree family, ascending.
pub fn squarefree_odd_magnitudes(limit: u64) -> Result<Vec<u64>> {
    if limit > SIEVE_BOUND / 4 {
        return Err(Error::Resource {
            op: "squarefree_odd_magnitudes",
            required: limit,
            bound: SIEVE_BOUND / 4,
        });
    }
    let n = limit as usize;
    if n == 0 {
        return Ok(Vec::new());
    }
    // Bit k represents the odd number 2k+1; set = killed by some odd p².
    let half = n / 2 + 1;
    let mut not_sf = vec![0u64; half / 64 + 1];
    let mut p = 3usize;
    while p * p <= n {
        // p itself needn't be prime; marking composite squares is redundant
        // but harmless and keeps the loop branch-free.
        let p2 = p * p;
        let mut m = p2;
        while m <= n {
            not_sf[m / 2 / 64] |= 1 << (m / 2 % 64);
            m += 2 * p2;
        }
        p += 2;
    }
    let mut out = Vec::with_capacity(n / 2 + 1);
    let mut q = 1usize;
    while q <= n {
        let k = q / 2;
        if not_sf[k / 64] >> (k % 64) & 1 == 0 {
            out.push(q as u64);
        }
        q += 2;
    }
    Ok(out)
}

/// Kronecker symbol (a|b) for b ≥ 0, extending the Jacobi symbol to even and
/// unit moduli. Binary algorithm, no factorization.
pub fn kronecker(a: i64, b: u64) -> i32 {
    // (2|a) = (-1)^((a²-1)/8) for odd a, indexed by a mod 8.
    const TAB2: [i32; 8] = [0, 1, 0, -1, 0, -1, 0, 1];
    if b == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut b = b as i64;
    if a % 2 == 0 && b % 2 == 0 {
        return 0;
    }
    let mut k = 1i32;
    // Strip the even part of b; each factor 2 contributes (a|2) = (2|a).
    let mut v = 0u32;
    while b % 2 == 0 {
        b /= 2;
        v += 1;
    }
    if v % 2 == 1 {
        k = TAB2[a.rem_euclid(8) as usize];
        if k == 0 {
            return 0;
        }
    }
    // b now odd positive; fold the sign of a through (-1|b) = (-1)^((b-1)/2).
    if a < 0 {
        a = -a;
        if b % 4 == 3 {
            k = -k;
        }
    }
    a %= b;
    // Plain Jacobi loop on nonnegative a, odd positive b.
    while a != 0 {
        let mut v = 0u32;
        while a % 2 == 0 {
            a /= 2;
            v += 1;
        }
        if v % 2 == 1 {
            k *= TAB2[(b % 8) as usize];
        }
        // Reciprocity for odd positive a, b.
        if a % 4 == 3 && b % 4 == 3 {
            k = -k;
        }
        let t = b % a;
        b = a;
        a = t;
    }
    if b > 1 {
        0
    } else {
        k
    }
}

/// The real primitive character χ_{8d} of conductor 8|d|, labelled by an odd
/// squarefree d of either sign. The parity 𝔞 is 0 for d > 0 and 1 for d < 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticCharacter {
    d: i64,
    parity: u8,
    conductor: u64,
}

impl QuadraticCharacter {
    /// Build from a label d, validating oddness, squarefreeness and range.
    pub fn new(d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("QuadraticCharacter", "d must be nonzero"));
        }
        if d.abs() % 2 == 0 {
            return Err(Error::domain("QuadraticCharacter", format!("d = {d} is even")));
        }
        if d.unsigned_abs() > (1u64 << 60) {
            return Err(Error::domain(
                "QuadraticCharacter",
                "|d| exceeds the 63-bit conductor budget",
            ));
        }
        let mut m = d.unsigned_abs();
        let mut p = 3u64;
        while p * p <= m {
            if m % p == 0 {
                m /= p;
                if m % p == 0 {
                    return Err(Error::domain(
                        "QuadraticCharacter",
                        format!("d = {d} is not squarefree"),
                    ));
                }
            }
            p += 2;
        }
        Ok(Self::new_unchecked(d))
    }

    /// Build from a d already known odd and squarefree (e.g. sieve output).
    pub fn new_unchecked(d: i64) -> Self {
        QuadraticCharacter {
            d,
            parity: u8::from(d < 0),
            conductor: 8 * d.unsigned_abs(),
        }
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Parity 𝔞 ∈ {0, 1}: the exponent in the Γ-factor of the functional
    /// equation, 1 exactly when d < 0.
    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// χ_{8d}(n) as the Kronecker symbol (8d|n).
    pub fn chi(&self, n: u64) -> i32 {
        kronecker(8 * self.d, n)
    }

    /// Character values for n = 0..len-1 in one pass.
    pub fn chi_table(&self, len: usize) -> Vec<i8> {
        (0..len).map(|n| self.chi(n as u64) as i8).collect()
    }
}
