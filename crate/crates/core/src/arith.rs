//! Exact elementary number theory on `u64` with `u128` widening.
//!
//! Nothing here wraps silently: every operation that can leave the 64-bit
//! range returns [`Error::Overflow`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn gcd(mut x: u64, mut y: u64) -> u64 {
    while y != 0 {
        let r = x % y;
        x = y;
        y = r;
    }
    x
}

pub fn coprime(x: u64, y: u64) -> bool {
    gcd(x, y) == 1
}

pub fn lcm(x: u64, y: u64) -> Result<u64> {
    if x == 0 || y == 0 {
        return Ok(0);
    }
    (x / gcd(x, y))
        .checked_mul(y)
        .ok_or(Error::Overflow("lcm"))
}

pub fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp).ok_or(Error::Overflow("pow"))
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

/// Reduce a signed value into `[0, m)`.
pub fn rem_euclid(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

/// Extended Euclid on signed 128-bit values: returns `(g, s, t)` with `s*a + t*b = g`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd(a as i128, m as i128);
    (g == 1).then(|| rem_euclid(s, m))
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Prime factorization of a positive integer, primes strictly ascending.
///
/// The factorization of 1 is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    /// The set of prime divisors, ascending.
    pub fn primes(&self) -> Vec<u64> {
        self.pairs.iter().map(|&(p, _)| p).collect()
    }

    /// Exponent of `p`, zero when `p` does not divide.
    pub fn exponent(&self, p: u64) -> u32 {
        self.pairs
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn product(&self) -> Result<u64> {
        self.pairs.iter().try_fold(1u64, |acc, &(p, e)| {
            acc.checked_mul(checked_pow(p, e)?)
                .ok_or(Error::Overflow("factorization product"))
        })
    }

    /// Prime-power components `(p, p^e)`.
    pub fn prime_powers(&self) -> Vec<(u64, u64)> {
        self.pairs
            .iter()
            .map(|&(p, e)| (p, p.pow(e)))
            .collect()
    }

    pub fn is_square_free(&self) -> bool {
        self.pairs.iter().all(|&(_, e)| e == 1)
    }

    pub fn radical(&self) -> u64 {
        self.pairs.iter().map(|&(p, _)| p).product()
    }
}

pub fn factorize(x: u64) -> Result<Factorization> {
    if x == 0 {
        return Err(Error::pre("factorize requires x >= 1"));
    }
    let mut pairs = Vec::new();
    let mut n = x;
    let mut push = |n: &mut u64, p: u64| {
        let mut e = 0u32;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    };
    push(&mut n, 2);
    push(&mut n, 3);
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        push(&mut n, d);
        push(&mut n, d + 2);
        d += 6;
    }
    if n > 1 {
        pairs.push((n, 1));
    }
    Ok(Factorization { pairs })
}

/// Prime divisors of `x` (the set usually written with a subscripted Pi).
pub fn prime_divisors(x: u64) -> Result<Vec<u64>> {
    Ok(factorize(x)?.primes())
}

/// Exponent of the prime `p` in `x`.
pub fn valuation(mut x: u64, p: u64) -> u32 {
    debug_assert!(p >= 2);
    if x == 0 {
        return u32::MAX;
    }
    let mut e = 0;
    while x % p == 0 {
        x /= p;
        e += 1;
    }
    e
}

/// Greatest divisor of `x` coprime with `y`.
pub fn dagger(x: u64, y: u64) -> u64 {
    let mut x = x;
    let mut g = gcd(x, y);
    while g > 1 {
        x /= g;
        g = gcd(x, g);
    }
    x
}

pub fn is_square_free(x: u64) -> Result<bool> {
    Ok(factorize(x)?.is_square_free())
}

/// Sieve of Eratosthenes; the table is built per call.
pub fn primes_up_to(n: u64) -> Result<Vec<u64>> {
    let len = usize::try_from(n).map_err(|_| Error::Overflow("primes_up_to"))?;
    if len < 2 {
        return Ok(Vec::new());
    }
    let mut composite = vec![false; len + 1];
    let mut i = 2usize;
    while i * i <= len {
        if !composite[i] {
            let mut j = i * i;
            while j <= len {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    Ok((2..=len)
        .filter(|&k| !composite[k])
        .map(|k| k as u64)
        .collect())
}

/// Least prime strictly greater than `n`.
pub fn next_prime_after(n: u64) -> Result<u64> {
    let mut c = n.checked_add(1).ok_or(Error::Overflow("next_prime_after"))?;
    while !is_prime(c) {
        c = c.checked_add(1).ok_or(Error::Overflow("next_prime_after"))?;
    }
    Ok(c)
}

/// Least prime in `{a + b n : n >= 0}` not exceeding `search_bound`.
///
/// `Ok(None)` means the bound ran out; existence is guaranteed for coprime
/// `a, b`, but no bound on the least prime is assumed.
pub fn least_prime_in_progression(a: u64, b: u64, search_bound: u64) -> Result<Option<u64>> {
    if b == 0 {
        return Err(Error::pre("modulus b must be >= 1"));
    }
    if gcd(a, b) != 1 {
        return Err(Error::pre(format!(
            "gcd({a}, {b}) = {} != 1; primes in a progression need coprime a, b",
            gcd(a, b)
        )));
    }
    let mut c = a;
    while c <= search_bound {
        if is_prime(c) {
            return Ok(Some(c));
        }
        c = match c.checked_add(b) {
            Some(v) => v,
            None => break,
        };
    }
    Ok(None)
}

/// Exact floor of the `k`-th root.
pub fn iroot(x: u64, k: u32) -> u64 {
    assert!(k >= 1);
    if k == 1 || x < 2 {
        return x;
    }
    let mut r = (x as f64).powf(1.0 / k as f64).round() as u64;
    let fits = |r: u64| r.checked_pow(k).is_some_and(|v| v <= x);
    while !fits(r) {
        r -= 1;
    }
    while fits(r + 1) {
        r += 1;
    }
    r
}

pub fn is_kth_power(x: u64, k: u32) -> bool {
    let r = iroot(x, k);
    r.checked_pow(k) == Some(x)
}

/// `Some((base, k))` with `base^k = x`, `k >= 2` maximal and `base` not itself
/// a perfect power. `1` reports `None`.
pub fn is_perfect_power(x: u64) -> Option<(u64, u32)> {
    if x < 4 {
        return None;
    }
    let max_k = 63 - x.leading_zeros();
    (2..=max_k)
        .rev()
        .find(|&k| is_kth_power(x, k))
        .map(|k| (iroot(x, k), k))
}

/// Integer square root, exact floor.
pub fn isqrt(x: u64) -> u64 {
    iroot(x, 2)
}

/// Exact floor of the `k`-th root of a 128-bit value.
pub fn iroot_u128(x: u128, k: u32) -> u128 {
    assert!(k >= 1);
    if k == 1 || x < 2 {
        return x;
    }
    let fits = |r: u128| r.checked_pow(k).is_some_and(|v| v <= x);
    // f64 estimate, then bisect a bracket around it wide enough for rounding error
    let est = (x as f64).powf(1.0 / k as f64) as u128;
    let slack = (est >> 40) + 2;
    let (mut lo, mut hi) = (est.saturating_sub(slack).max(1), est + slack);
    if !fits(lo) || fits(hi) {
        (lo, hi) = (1, 1u128 << (128 / k + 1).min(127));
    }
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}
