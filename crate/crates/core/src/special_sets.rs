//! Closedness certificates for special subsets of the Golomb space.
//!
//! * `{x^2 + nx}` is closed: each non-member `a` has a prime `p > a` with
//!   `x^2 + nx - a` rootless mod `p`, so `a + pN0` misses the set.
//! * `X_n = p_n N ∩ {x^2 + nx}` form a pairwise disjoint family.
//! * `X_8 = {x^8}` is not closed: `16` is a limit point, since `x^8 = 16` is
//!   solvable modulo every odd prime power but not over the integers.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::arith::{self, checked_pow, iroot_u128, is_prime, mod_inverse, mul_mod, pow_mod};
use crate::error::{Error, Result};
use crate::progression::{crt_pair, least_at_least, Progression};

/// `{x^2 + nx : x >= 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticImageSet {
    pub n: u64,
}

impl QuadraticImageSet {
    pub fn new(n: u64) -> Self {
        QuadraticImageSet { n }
    }

    /// `z = x^2 + nx` for some `x >= 1`, read off the discriminant `n^2 + 4z`.
    pub fn preimage(&self, z: u64) -> Option<u64> {
        let n = self.n as u128;
        let disc = n * n + 4 * z as u128;
        let s = iroot_u128(disc, 2);
        if s * s != disc || s <= n || (s - n) % 2 != 0 {
            return None;
        }
        Some(((s - n) / 2) as u64)
    }

    pub fn contains(&self, z: u64) -> bool {
        self.preimage(z).is_some()
    }

    pub fn eval(&self, x: u64) -> Option<u64> {
        x.checked_add(self.n)?.checked_mul(x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobCertificate {
    pub n: u64,
    pub a: u64,
    pub p: u64,
    /// `(a + pN0) ∩ [1, window]` was checked to miss the set.
    pub window: u64,
    pub checked: u64,
}

fn has_root_mod(n: u64, a: u64, p: u64) -> bool {
    let (nn, aa) = (n % p, a % p);
    (0..p).any(|r| (mul_mod(r, r, p) + mul_mod(nn, r, p)) % p == aa)
}

/// Least prime `p > a`, `p <= prime_bound`, with `x^2 + nx - a` rootless mod `p`.
pub fn frob_closedness_certificate(
    n: u64,
    a: u64,
    prime_bound: u64,
    window: u64,
) -> Result<FrobCertificate> {
    if a == 0 {
        return Err(Error::pre("a must be >= 1"));
    }
    let set = QuadraticImageSet::new(n);
    if set.contains(a) {
        return Err(Error::MemberInput { n, value: a });
    }
    let p = arith::primes_up_to(prime_bound)?
        .into_iter()
        .filter(|&p| p > a)
        .find(|&p| !has_root_mod(n, a, p))
        .ok_or_else(|| Error::NotFoundWithinBound {
            what: format!("prime certifying {a} outside x^2+{n}x"),
            bound: prime_bound,
        })?;
    let mut checked = 0;
    for z in Progression::nonneg(a, p)?.enumerate(window) {
        checked += 1;
        if set.contains(z) {
            return Err(Error::WindowViolation {
                point: z,
                detail: format!("{z} in {a}+{p}N0 lies in x^2+{n}x"),
            });
        }
    }
    Ok(FrobCertificate {
        n,
        a,
        p,
        window,
        checked,
    })
}

/// `X_n = p_n N ∩ {x^2 + nx}` with its preimage `p_n N ∪ (p_n - n + p_n N0)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub n: u64,
    pub p: u64,
    /// `[0 + p N0, (p - n) + p N0]`; the first piece has offset 0.
    pub preimage: [Progression; 2],
}

impl FamilyMember {
    pub fn preimage_contains(&self, x: u64) -> bool {
        x >= 1 && self.preimage.iter().any(|q| q.contains(x as i128))
    }

    pub fn contains(&self, z: u64) -> bool {
        z % self.p == 0 && QuadraticImageSet::new(self.n).contains(z)
    }

    /// Members of `X_n` up to `window`, ascending.
    pub fn members(&self, window: u64) -> Vec<u64> {
        let set = QuadraticImageSet::new(self.n);
        (1..)
            .map_while(|x| set.eval(x).filter(|&z| z <= window))
            .filter(|z| z % self.p == 0)
            .collect()
    }
}

pub fn disjoint_family_member(n: u64) -> Result<FamilyMember> {
    if n == 0 {
        return Err(Error::pre("family index n must be >= 1"));
    }
    let bound = n
        .checked_mul(n)
        .and_then(|v| v.checked_add(n))
        .ok_or(Error::Overflow("n^2 + n"))?;
    let p = arith::next_prime_after(bound)?;
    Ok(FamilyMember {
        n,
        p,
        preimage: [Progression::nonneg(0, p)?, Progression::nonneg(p - n, p)?],
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDisjointness {
    pub n: u64,
    pub m: u64,
    pub window: u64,
    pub disjoint: bool,
    pub common: Vec<u64>,
    /// A shared point would need its `X_m` preimage `y <= m^2 - n^2`.
    pub preimage_upper_bound: u64,
    /// Smallest `X_m` preimage seen in the window; at least `p_m - m`.
    pub min_preimage: Option<u64>,
    /// `p_m - m - m^2`, positive by the choice of `p_m`.
    pub prime_margin: i64,
}

pub fn verify_family_disjoint(n: u64, m: u64, window: u64) -> Result<FamilyDisjointness> {
    if n == 0 || n >= m {
        return Err(Error::pre(format!("need 1 <= n < m, got n = {n}, m = {m}")));
    }
    let xn = disjoint_family_member(n)?;
    let xm = disjoint_family_member(m)?;
    let left: HashSet<u64> = xn.members(window).into_iter().collect();
    let right = xm.members(window);
    let common: Vec<u64> = right.iter().copied().filter(|z| left.contains(z)).collect();
    let set_m = QuadraticImageSet::new(m);
    let min_preimage = right.iter().filter_map(|&z| set_m.preimage(z)).min();
    if let Some(y) = min_preimage {
        if y < xm.p - m {
            return Err(Error::InternalInvariant(format!(
                "preimage {y} of X_{m} is below p_m - m = {}",
                xm.p - m
            )));
        }
    }
    Ok(FamilyDisjointness {
        n,
        m,
        window,
        disjoint: common.is_empty(),
        common,
        preimage_upper_bound: m * m - n * n,
        min_preimage,
        prime_margin: xm.p as i64 - m as i64 - (m * m) as i64,
    })
}

/// Above this, square roots use Tonelli–Shanks instead of a residue scan.
pub const SQRT_SCAN_LIMIT: u64 = 10_000;

fn require_odd_prime(p: u64) -> Result<()> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::pre(format!("p = {p} must be an odd prime")));
    }
    Ok(())
}

/// Smallest `r` in `[0, p)` with `r^2 ≡ a (mod p)`.
pub fn sqrt_mod_prime(a: i64, p: u64) -> Result<Option<u64>> {
    require_odd_prime(p)?;
    let a = arith::rem_euclid(a as i128, p);
    if a == 0 {
        return Ok(Some(0));
    }
    if p <= SQRT_SCAN_LIMIT {
        return Ok((1..p).find(|&r| r * r % p == a));
    }
    Ok(tonelli_shanks(a, p).map(|r| r.min(p - r)))
}

fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// How a root of `x^8 - 16` modulo an odd prime was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootCase {
    /// `r^2 = 2`
    SqrtTwo,
    /// `r^2 = -2`
    SqrtMinusTwo,
    /// `r = 1 + i` with `i^2 = -1`
    OnePlusSqrtMinusOne,
}

/// Root of `x^8 ≡ 16 (mod p)` together with the case that produced it.
pub fn x8_root_with_case(p: u64) -> Result<(u64, RootCase)> {
    require_odd_prime(p)?;
    let (r, case) = if let Some(r) = sqrt_mod_prime(2, p)? {
        (r, RootCase::SqrtTwo)
    } else if let Some(r) = sqrt_mod_prime(-2, p)? {
        (r, RootCase::SqrtMinusTwo)
    } else if let Some(i) = sqrt_mod_prime(-1, p)? {
        ((1 + i) % p, RootCase::OnePlusSqrtMinusOne)
    } else {
        return Err(Error::InternalInvariant(format!(
            "none of 2, -2, -1 is a square mod {p}"
        )));
    };
    if pow_mod(r, 8, p) != 16 % p {
        return Err(Error::InternalInvariant(format!("{r}^8 != 16 mod {p}")));
    }
    Ok((r, case))
}

pub fn root_x8_16_mod_p(p: u64) -> Result<u64> {
    x8_root_with_case(p).map(|(r, _)| r)
}

/// Root of `x^8 ≡ 16 (mod p^k)` lifted from the root mod `p` one power at a time.
pub fn hensel_lift(p: u64, k: u32) -> Result<u64> {
    if k == 0 {
        return Err(Error::pre("k must be >= 1"));
    }
    let mut r = root_x8_16_mod_p(p)?;
    let mut modulus = p;
    for _ in 1..k {
        let derivative = mul_mod(8, pow_mod(r, 7, p), p);
        if derivative == 0 {
            return Err(Error::InternalInvariant(format!(
                "derivative 8r^7 vanishes mod {p} at r = {r}"
            )));
        }
        modulus = modulus.checked_mul(p).ok_or(Error::Overflow("p^k"))?;
        let value = (pow_mod(r, 8, modulus) + modulus - 16 % modulus) % modulus;
        let slope = mul_mod(8, pow_mod(r, 7, modulus), modulus);
        let inv = mod_inverse(slope, modulus)
            .ok_or_else(|| Error::InternalInvariant("derivative not invertible".into()))?;
        r = (r + modulus - mul_mod(value, inv, modulus)) % modulus;
    }
    if pow_mod(r, 8, modulus) != 16 % modulus {
        return Err(Error::InternalInvariant(format!(
            "lifted root {r} fails mod {modulus}"
        )));
    }
    Ok(r)
}

/// One CRT component of the X_8 witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePowerRoot {
    pub p: u64,
    pub k: u32,
    pub modulus: u64,
    pub root: u64,
    pub case: RootCase,
}

/// `x >= 16` with `x^8 ∈ 16 + bN0`: a point of `X_8` in the neighborhood `16 + bN0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct X8Witness {
    pub b: u64,
    pub x: u64,
    pub components: Vec<PrimePowerRoot>,
    pub check: String,
}

/// Least `x >= 16` in the CRT class of the per-prime Hensel roots.
pub fn closure_point_witness_x8(b: u64) -> Result<X8Witness> {
    if b % 2 == 0 {
        return Err(Error::pre(format!(
            "b = {b} is even, so 16+{b}N0 is not a neighborhood of 16"
        )));
    }
    if b < 3 {
        return Err(Error::pre("b must be >= 3"));
    }
    let mut components = Vec::new();
    let mut class = (0u64, 1u64);
    for &(p, k) in arith::factorize(b)?.pairs() {
        let root = hensel_lift(p, k)?;
        let (_, case) = x8_root_with_case(p)?;
        let modulus = checked_pow(p, k)?;
        class = crt_pair(class.0, class.1, root, modulus)?
            .ok_or_else(|| Error::InternalInvariant("coprime CRT failed".into()))?;
        components.push(PrimePowerRoot {
            p,
            k,
            modulus,
            root,
            case,
        });
    }
    let x = least_at_least(class.0, class.1, 16);
    if pow_mod(x, 8, b) != 16 % b {
        return Err(Error::InternalInvariant(format!("{x}^8 != 16 mod {b}")));
    }
    Ok(X8Witness {
        b,
        x,
        components,
        check: format!("{x}^8 ≡ 16 mod {b}"),
    })
}

/// `x^8 = 16` has no positive integer solution: `1^8 < 16 < 2^8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WangRecord {
    pub target: u64,
    pub bracket: (u64, u64),
    pub bracket_values: (u64, u64),
}

pub fn wang_no_integer_solution() -> WangRecord {
    let lo = (1u64..).take_while(|x| x.pow(8) < 16).last().unwrap_or(0);
    let hi = lo + 1;
    debug_assert!(lo.pow(8) < 16 && 16 < hi.pow(8));
    WangRecord {
        target: 16,
        bracket: (lo, hi),
        bracket_values: (lo.pow(8), hi.pow(8)),
    }
}

/// `z ∈ {x^k : x >= 1}`.
pub fn in_power_set(z: u128, k: u32) -> bool {
    z >= 1 && iroot_u128(z, k).checked_pow(k) == Some(z)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct X8nWitness {
    pub n: u32,
    pub b: u64,
    /// `16^n`, outside `X_{8n}` but in its closure
    pub point: u128,
    /// `x` such that `x^{8n} ∈ (16^n + bN0) ∩ X_{8n}`
    pub base: u64,
    pub exponent: u32,
    pub point_in_set: bool,
}

pub fn x8n_closure_witness(n: u32, b: u64) -> Result<X8nWitness> {
    if n == 0 {
        return Err(Error::pre("n must be >= 1"));
    }
    let point = 16u128.checked_pow(n).ok_or(Error::Overflow("16^n"))?;
    let w = closure_point_witness_x8(b)?;
    let exponent = n.checked_mul(8).ok_or(Error::Overflow("8n"))?;
    if pow_mod(w.x, exponent as u64, b) != (point % b as u128) as u64 {
        return Err(Error::InternalInvariant(format!(
            "{}^{exponent} != 16^{n} mod {b}",
            w.x
        )));
    }
    let point_in_set = in_power_set(point, exponent);
    if point_in_set {
        return Err(Error::InternalInvariant(format!("16^{n} is an {exponent}-th power")));
    }
    Ok(X8nWitness {
        n,
        b,
        point,
        base: w.x,
        exponent,
        point_in_set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn squares_mod(p: u64) -> Vec<u64> {
        let mut v: Vec<u64> = (0..p).map(|r| r * r % p).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    #[test]
    fn quadratic_membership() {
        let set = QuadraticImageSet::new(3);
        let brute: HashSet<u64> = (1..=100).map(|x| x * x + 3 * x).collect();
        for z in 1..=10_000 {
            assert_eq!(set.contains(z), brute.contains(&z), "z={z}");
        }
        assert!(!QuadraticImageSet::new(0).contains(2));
        assert!(QuadraticImageSet::new(0).contains(49));
        assert!(!QuadraticImageSet::new(5).contains(0));
    }

    #[test]
    fn frob_examples() {
        assert_eq!(squares_mod(3), vec![0, 1]);
        let c = frob_closedness_certificate(0, 2, 1000, 10_000).unwrap();
        assert_eq!(c.p, 3);
        assert_eq!(squares_mod(7), vec![0, 1, 2, 4]);
        assert_eq!(frob_closedness_certificate(0, 5, 1000, 10_000).unwrap().p, 7);
        assert!(matches!(
            frob_closedness_certificate(2, 8, 1000, 10_000),
            Err(Error::MemberInput { n: 2, value: 8 })
        ));
        assert!(matches!(
            frob_closedness_certificate(0, 2, 2, 100),
            Err(Error::NotFoundWithinBound { .. })
        ));
    }

    #[test]
    fn family_examples() {
        let m1 = disjoint_family_member(1).unwrap();
        assert_eq!(m1.p, 3);
        assert_eq!(m1.preimage[1], Progression::nonneg(2, 3).unwrap());
        let m2 = disjoint_family_member(2).unwrap();
        assert_eq!(m2.p, 7);
        assert_eq!(m2.preimage[1], Progression::nonneg(5, 7).unwrap());
        let m3 = disjoint_family_member(3).unwrap();
        assert_eq!(m3.p, 13);
        assert_eq!(m3.preimage[1], Progression::nonneg(10, 13).unwrap());
        assert!(disjoint_family_member(0).is_err());
    }

    #[test]
    fn family_disjointness_examples() {
        let r = verify_family_disjoint(1, 2, 1_000_000).unwrap();
        assert!(r.disjoint);
        assert!(r.prime_margin > 0);
        assert!(r.min_preimage.unwrap() > r.preimage_upper_bound);
        assert!(verify_family_disjoint(2, 5, 1_000_000).unwrap().disjoint);
        assert!(verify_family_disjoint(3, 3, 10).is_err());
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_mod_prime(2, 7).unwrap(), Some(3));
        assert_eq!(sqrt_mod_prime(-1, 5).unwrap(), Some(2));
        assert_eq!(sqrt_mod_prime(3, 5).unwrap(), None);
        assert!(sqrt_mod_prime(1, 9).is_err());
        assert!(sqrt_mod_prime(1, 2).is_err());
    }

    #[test]
    fn sqrt_agrees_with_squaring() {
        for p in arith::primes_up_to(200).unwrap().into_iter().skip(1) {
            for a in 0..p {
                let expected = (0..p).find(|r| r * r % p == a);
                assert_eq!(sqrt_mod_prime(a as i64, p).unwrap(), expected, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn tonelli_shanks_large_primes() {
        for p in [10_007u64, 65_537, 1_000_003, 998_244_353] {
            for a in [2i64, 3, -1, -2, 5, 12345] {
                let r = sqrt_mod_prime(a, p).unwrap();
                let legendre = pow_mod(arith::rem_euclid(a as i128, p), (p - 1) / 2, p);
                assert_eq!(r.is_some(), legendre == 1, "a={a} p={p}");
                if let Some(r) = r {
                    assert!(r <= p / 2);
                    assert_eq!(mul_mod(r, r, p), arith::rem_euclid(a as i128, p));
                }
            }
        }
    }

    #[test]
    fn x8_root_examples() {
        assert_eq!(root_x8_16_mod_p(3).unwrap(), 1);
        assert_eq!(root_x8_16_mod_p(7).unwrap(), 3);
        assert_eq!(x8_root_with_case(5).unwrap(), (3, RootCase::OnePlusSqrtMinusOne));
        assert_eq!(6561 % 5, 1);
    }

    #[test]
    fn hensel_examples() {
        assert_eq!(65536 % 9, 7);
        assert_eq!(hensel_lift(3, 2).unwrap(), 4);
        assert_eq!(hensel_lift(3, 1).unwrap(), 1);
        let r = hensel_lift(7, 3).unwrap();
        let direct = (0..8).fold(1u64, |acc, _| acc * r % 343);
        assert_eq!(direct, 16);
        assert!(hensel_lift(9, 2).is_err());
        assert!(hensel_lift(3, 0).is_err());
    }

    #[test]
    fn x8_witness_examples() {
        assert_eq!(closure_point_witness_x8(3).unwrap().x, 16);
        let w = closure_point_witness_x8(9).unwrap();
        assert_eq!(w.x, 22);
        assert_eq!(w.check, "22^8 ≡ 16 mod 9");
        assert_eq!(closure_point_witness_x8(15).unwrap().x, 28);
        assert!(matches!(
            closure_point_witness_x8(4),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn wang_bracket() {
        let w = wang_no_integer_solution();
        assert_eq!(w.bracket, (1, 2));
        assert_eq!(w.bracket_values, (1, 256));
        assert!(!in_power_set(16, 8));
        assert!(in_power_set(256, 8));
    }

    #[test]
    fn x8n_examples() {
        let w = x8n_closure_witness(1, 3).unwrap();
        assert_eq!((w.point, w.base, w.exponent), (16, 16, 8));
        let w = x8n_closure_witness(2, 3).unwrap();
        assert_eq!((w.point, w.exponent), (256, 16));
        for n in 1..=31 {
            assert!(!x8n_closure_witness(n, 45).unwrap().point_in_set);
        }
        assert!(matches!(x8n_closure_witness(32, 3), Err(Error::Overflow(_))));
    }
}
