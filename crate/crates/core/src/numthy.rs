//! Word-sized number theory: primality, factorization, primitive roots and
//! discrete logarithms modulo a prime.
//!
//! Everything here is exact and deterministic. Residues are always kept as
//! least nonnegative representatives.

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Bases that make Miller-Rabin exact for every 64-bit input.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Inputs below this bound are settled by trial division alone.
const TRIAL_DIVISION_LIMIT: u64 = 1 << 32;

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exponent mod modulus`, by square-and-multiply with 128-bit products.
///
/// The result is in `[0, modulus)`; `modulus` must be at least 2.
pub fn pow_mod(base: u64, mut exponent: u64, modulus: u64) -> u64 {
    debug_assert!(modulus >= 2);
    let mut acc = 1 % modulus;
    let mut b = base % modulus;
    while exponent > 0 {
        if exponent & 1 == 1 {
            acc = mul_mod(acc, b, modulus);
        }
        b = mul_mod(b, b, modulus);
        exponent >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Floor of the square root, exact for every `u128`.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

fn trial_division_is_prime(m: u64) -> bool {
    if m < 4 {
        return m >= 2;
    }
    if m % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= m {
        if m % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn miller_rabin(m: u64) -> bool {
    let mut d = m - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_BASES {
        if a % m == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, m);
            if x == m - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic primality test.
///
/// Trial division below 2^32; above that, Miller-Rabin with the first twelve
/// prime bases, which has no pseudoprimes in the 64-bit range.
pub fn is_prime(m: u64) -> Result<bool> {
    if m < 2 {
        return Err(domain(m, "primality is defined for m >= 2"));
    }
    Ok(if m < TRIAL_DIVISION_LIMIT {
        trial_division_is_prime(m)
    } else {
        MR_BASES.iter().all(|&q| m % q != 0) && miller_rabin(m)
    })
}

/// Prime factorization as ascending `(prime, multiplicity)` pairs.
pub fn factorize(mut m: u64) -> Result<Vec<(u64, u32)>> {
    if m < 2 {
        return Err(domain(m, "factorization is defined for m >= 2"));
    }
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m % d == 0 {
            let mut k = 0;
            while m % d == 0 {
                m /= d;
                k += 1;
            }
            out.push((d, k));
            if m > 1 && is_prime(m)? {
                break;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    Ok(out)
}

/// Euler's totient from a factorization.
pub fn totient_of(factorization: &[(u64, u32)]) -> u64 {
    factorization
        .iter()
        .map(|&(q, k)| (q - 1) * q.pow(k - 1))
        .product()
}

/// Number-theoretic facts about one odd prime `p >= 5`, computed once and
/// shared read-only by every construction and scan for that prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeContext {
    pub p: u64,
    /// Array order `p - 1`.
    pub n: u64,
    /// Factorization of `n`.
    pub factorization: Vec<(u64, u32)>,
    pub totient_n: u64,
    /// Every primitive element of F_p, ascending.
    pub primitive_roots: Vec<u64>,
    /// `(p - 1) / 2` is prime.
    pub is_safe_prime: bool,
    /// Smallest prime divisor of `(p - 1) / 2`.
    pub t: u64,
}

impl PrimeContext {
    pub fn new(p: u64) -> Result<Self> {
        if p < 5 {
            return Err(domain(p, "prime context requires p >= 5"));
        }
        if !is_prime(p)? {
            return Err(Error::NotPrime(p));
        }
        let n = p - 1;
        let factorization = factorize(n)?;
        let totient_n = totient_of(&factorization);
        let primitive_roots: Vec<u64> = (2..p)
            .filter(|&g| factorization.iter().all(|&(q, _)| pow_mod(g, n / q, p) != 1))
            .collect();
        debug_assert_eq!(primitive_roots.len() as u64, totient_n);
        let half = n / 2;
        let t = factorize(half)?[0].0;
        Ok(Self {
            p,
            n,
            factorization,
            totient_n,
            primitive_roots,
            is_safe_prime: is_prime(half)?,
            t,
        })
    }

    /// `(p - 1) / t`, the recurring equality value of the cited results.
    pub fn n_over_t(&self) -> u64 {
        self.n / self.t
    }

    pub fn least_primitive_root(&self) -> u64 {
        self.primitive_roots[0]
    }

    pub fn largest_primitive_root(&self) -> u64 {
        *self.primitive_roots.last().expect("F_p* always has a generator")
    }

    pub fn is_primitive_root(&self, g: u64) -> bool {
        self.primitive_roots.binary_search(&g).is_ok()
    }

    /// Checks `alpha` is primitive, producing the error every construction reports.
    pub fn require_primitive(&self, alpha: u64) -> Result<()> {
        if self.is_primitive_root(alpha) {
            Ok(())
        } else {
            Err(Error::NotPrimitive { alpha, p: self.p })
        }
    }
}

/// Shorthand for [`PrimeContext::new`].
pub fn build_prime_context(p: u64) -> Result<PrimeContext> {
    PrimeContext::new(p)
}

/// Discrete logarithm table to a primitive base, built in one sweep of powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DlogTable {
    p: u64,
    alpha: u64,
    // index x in [1, p-1]; slot 0 unused
    logs: Vec<u32>,
}

impl DlogTable {
    pub fn new(ctx: &PrimeContext, alpha: u64) -> Result<Self> {
        ctx.require_primitive(alpha)?;
        let p = ctx.p;
        let mut logs = vec![0u32; p as usize];
        let mut x = 1u64;
        for e in 0..ctx.n {
            logs[x as usize] = e as u32;
            x = mul_mod(x, alpha, p);
        }
        Ok(Self { p, alpha, logs })
    }

    /// `e` in `[0, p-2]` with `alpha^e = x (mod p)`; `x` must be a unit.
    pub fn log(&self, x: u64) -> u64 {
        let x = x % self.p;
        assert!(x != 0, "log of zero is undefined");
        self.logs[x as usize] as u64
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

/// Shorthand for [`DlogTable::new`] taking only the prime.
pub fn dlog_table(p: u64, alpha: u64) -> Result<DlogTable> {
    DlogTable::new(&PrimeContext::new(p)?, alpha)
}

/// Primes in `[lo, hi]`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi)
        .filter(|&m| is_prime(m).unwrap_or(false))
        .collect()
}
