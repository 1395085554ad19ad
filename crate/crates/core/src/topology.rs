//! The Golomb topology: basic opens, symbolic closures and the witnesses that
//! make its separation properties concrete.
//!
//! Closures are never materialized. The closure of `a + bN0` is
//!
//! ```text
//! N ∩ ⋂_{p | b} ( pN ∪ (a + p^{l_p(b)} Z) )
//! ```
//!
//! and [`ClosureDescriptor`] stores exactly the pairs `(p, p^{l_p(b)})`.
//! Every witness constructed here is re-checked on a finite window; those
//! checks are sound but bounded and say so in their output.

use serde::{Deserialize, Serialize};

use crate::arith::{self, checked_pow, coprime, gcd, is_prime, lcm, valuation};
use crate::error::{Error, Result};
use crate::progression::{Carrier, Progression, ProgressionSystem};

/// Cap for default verification windows.
pub const MAX_DEFAULT_WINDOW: u64 = 10_000_000;

/// `10 * lcm(moduli)`, capped at [`MAX_DEFAULT_WINDOW`].
pub fn default_window(moduli: &[u64]) -> u64 {
    let l = moduli
        .iter()
        .try_fold(1u64, |acc, &m| lcm(acc, m).ok())
        .unwrap_or(u64::MAX);
    l.saturating_mul(10).min(MAX_DEFAULT_WINDOW)
}

/// A base open set `a + bN0` with `gcd(a, b) = 1`, `a >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasicOpen {
    pub a: u64,
    pub b: u64,
}

impl BasicOpen {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::pre(format!("basic open {a}+{b}N0 needs a, b >= 1")));
        }
        if !coprime(a, b) {
            return Err(Error::pre(format!(
                "basic open {a}+{b}N0 needs gcd(a, b) = 1, got {}",
                gcd(a, b)
            )));
        }
        Ok(BasicOpen { a, b })
    }

    pub fn progression(&self) -> Progression {
        Progression {
            a: self.a as i64,
            b: self.b,
            carrier: Carrier::N0,
        }
    }

    pub fn contains(&self, x: u64) -> bool {
        x >= self.a && (x - self.a) % self.b == 0
    }
}

/// Symbolic closure of `a + bN0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureDescriptor {
    pub a: u64,
    /// `(p, p^{l_p(b)})` for every prime `p | b`.
    pub conditions: Vec<(u64, u64)>,
}

impl ClosureDescriptor {
    /// Closure of `a + bN0` for arbitrary `a, b >= 1`; coprimality is not needed.
    pub fn of_progression(a: u64, b: u64) -> Result<Self> {
        let f = arith::factorize(b)?;
        Ok(ClosureDescriptor {
            a,
            conditions: f.prime_powers(),
        })
    }

    pub fn contains(&self, x: u64) -> bool {
        x >= 1
            && self.conditions.iter().all(|&(p, pk)| {
                x % p == 0 || (x as i128 - self.a as i128).rem_euclid(pk as i128) == 0
            })
    }

    /// Product of the prime-power moduli; equals `b`.
    pub fn modulus(&self) -> u64 {
        self.conditions.iter().map(|&(_, pk)| pk).product()
    }
}

pub fn closure(u: &BasicOpen) -> ClosureDescriptor {
    ClosureDescriptor::of_progression(u.a, u.b).expect("b >= 1 by construction")
}

/// Decide `x ∈ cl(u)` from the definition: every basic neighborhood
/// `x + dN0` with `d <= modulus_bound` must meet `u`.
///
/// Exact once `modulus_bound >= u.b`, since a point outside the closure is
/// always separated by some `p^{l_p(b)} <= b`.
pub fn in_closure_oracle(x: u64, u: &BasicOpen, modulus_bound: u64) -> Result<bool> {
    if x == 0 {
        return Err(Error::pre("x must be >= 1"));
    }
    if modulus_bound < u.b {
        return Err(Error::pre(format!(
            "modulus bound {modulus_bound} is below the open's modulus {}",
            u.b
        )));
    }
    for d in 1..=modulus_bound {
        if !coprime(d, x) {
            continue;
        }
        let sys = ProgressionSystem::new(vec![Progression::nonneg(x, d)?, u.progression()]);
        if sys.least_element()?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A point shared by `X` and the closures of several opens of `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperconnectWitness {
    pub point: u64,
    /// Progressions `e_j + f_j N0` inside each trace `X ∩ U_j`.
    pub refined: Vec<Progression>,
    /// Primes dividing some refined modulus.
    pub primes: Vec<u64>,
    pub window: u64,
}

/// Point of `X ∩ cl(U_1) ∩ ... ∩ cl(U_n)` for `X = ⋃ pieces` whose first piece
/// is `0 + b_0 N0`.
pub fn superconnected_witness(
    pieces: &[Progression],
    opens: &[BasicOpen],
    window: u64,
) -> Result<SuperconnectWitness> {
    let first = pieces
        .first()
        .ok_or_else(|| Error::pre("at least one piece is required"))?;
    if first.carrier != Carrier::N0 || first.a != 0 {
        return Err(Error::pre(format!(
            "first piece must be 0 + bN0, got {first}"
        )));
    }
    let mut refined = Vec::with_capacity(opens.len());
    let mut primes: Vec<u64> = Vec::new();
    for u in opens {
        let trace = pieces.iter().find_map(|piece| {
            let sys = ProgressionSystem::new(vec![*piece, u.progression()]);
            match sys.least_element() {
                Ok(Some(e)) => Some(lcm(piece.b, u.b).map(|f| (e, f))),
                Ok(None) => None,
                Err(err) => Some(Err(err)),
            }
        });
        let (e, f) = trace.ok_or_else(|| {
            Error::pre(format!("open {}+{}N0 does not meet X", u.a, u.b))
        })??;
        refined.push(Progression::nonneg(e, f)?);
        primes.extend(arith::prime_divisors(f)?);
    }
    primes.sort_unstable();
    primes.dedup();

    let mut constraints = vec![Progression::int(0, first.b)?];
    for &p in &primes {
        constraints.push(Progression::int(0, p)?);
    }
    let mut sys = ProgressionSystem::new(constraints);
    sys.naturals = true;
    let point = sys
        .least_element()?
        .ok_or_else(|| Error::InternalInvariant("multiples system is never empty".into()))?;
    if point > window {
        return Err(Error::WindowExceeded {
            window,
            needed: point,
        });
    }
    if !first.contains(point as i128) {
        return Err(Error::InternalInvariant(format!("{point} is not in X")));
    }
    for r in &refined {
        let cl = ClosureDescriptor::of_progression(r.a as u64, r.b)?;
        if !cl.contains(point) {
            return Err(Error::InternalInvariant(format!(
                "{point} is not in the closure of {r}"
            )));
        }
    }
    Ok(SuperconnectWitness {
        point,
        refined,
        primes,
        window,
    })
}

/// Primes `p` whose closure condition for `u` is not automatic on multiples.
///
/// The condition at `p` holds for all of `qN` with `p ∤ q` only when
/// `p^{l_p(b)} = 2` (every odd number is `≡ a (mod 2)` for odd `a`).
fn required_primes(u: &BasicOpen) -> Result<Vec<u64>> {
    Ok(closure(u)
        .conditions
        .into_iter()
        .filter(|&(_, pk)| pk != 2)
        .map(|(p, _)| p)
        .collect())
}

/// Least square-free `q` with `qN ⊆ cl(U_1) ∩ ... ∩ cl(U_n)`, checked on `[1, window]`.
pub fn f0_base_element(opens: &[BasicOpen], window: u64) -> Result<u64> {
    if opens.is_empty() {
        return Err(Error::pre("at least one open is required"));
    }
    let mut primes = Vec::new();
    for u in opens {
        primes.extend(required_primes(u)?);
    }
    primes.sort_unstable();
    primes.dedup();
    let q = primes
        .iter()
        .try_fold(1u64, |acc, &p| acc.checked_mul(p))
        .ok_or(Error::Overflow("f0 base element"))?;
    let closures: Vec<_> = opens.iter().map(closure).collect();
    let mut z = q;
    while z <= window {
        if let Some(cl) = closures.iter().find(|cl| !cl.contains(z)) {
            return Err(Error::InternalInvariant(format!(
                "{z} in {q}N is outside the closure with base {}",
                cl.a
            )));
        }
        z += q;
    }
    Ok(q)
}

/// Neighborhoods `x + q^n N0`, `y + q^n N0` whose closures meet exactly in `qN`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Special1Witness {
    pub n: u32,
    pub ux: BasicOpen,
    pub uy: BasicOpen,
    pub window: u64,
}

pub fn special1_witness(x: u64, y: u64, q: u64, window: Option<u64>) -> Result<Special1Witness> {
    if x == 0 || y == 0 {
        return Err(Error::pre("x, y must be >= 1"));
    }
    if x == y {
        return Err(Error::pre("x and y must be distinct"));
    }
    if q < 2 || !arith::is_square_free(q)? {
        return Err(Error::pre(format!("q = {q} must be square-free and > 1")));
    }
    if !coprime(q, x) || !coprime(q, y) {
        return Err(Error::pre(format!(
            "q = {q} must be coprime with x = {x} and y = {y}"
        )));
    }
    let diff = x.abs_diff(y);
    let primes = arith::prime_divisors(q)?;
    let n = (1u32..=64)
        .find(|&n| {
            primes
                .iter()
                .all(|&p| p.checked_pow(n).map_or(true, |pn| diff % pn != 0))
        })
        .ok_or_else(|| Error::InternalInvariant("no exponent n <= 64 separates x, y".into()))?;
    let qn = checked_pow(q, n)?;
    let ux = BasicOpen::new(x, qn)?;
    let uy = BasicOpen::new(y, qn)?;
    let window = window.unwrap_or_else(|| default_window(&[qn]));
    let (cx, cy) = (closure(&ux), closure(&uy));
    for z in 1..=window {
        let both = cx.contains(z) && cy.contains(z);
        if both != (z % q == 0) {
            return Err(Error::WindowViolation {
                point: z,
                detail: format!("closure intersection disagrees with {q}N"),
            });
        }
    }
    Ok(Special1Witness { n, ux, uy, window })
}

/// For `q` sharing a prime with `x` or `y`: a point of `cl(x + bN0) ∩ cl(y + dN0)`
/// outside `qN`, showing these neighborhoods cannot squeeze the closures into `qN`.
pub fn special1_refutation(x: u64, y: u64, q: u64, b: u64, d: u64) -> Result<u64> {
    let ux = BasicOpen::new(x, b)?;
    let uy = BasicOpen::new(y, d)?;
    let shared = |v: u64| {
        arith::prime_divisors(gcd(q, v)).map(|ps| ps.first().copied())
    };
    // normalize so the shared prime divides the first point
    let (ux, uy, p) = match (shared(x)?, shared(y)?) {
        (Some(p), _) => (ux, uy, p),
        (None, Some(p)) => (uy, ux, p),
        (None, None) => {
            return Err(Error::pre(format!(
                "q = {q} is coprime with both points; nothing to refute"
            )))
        }
    };
    let mut others: Vec<u64> = arith::prime_divisors(ux.b)?;
    others.extend(arith::prime_divisors(uy.b)?);
    let mut constraints = Vec::new();
    if uy.b % p != 0 {
        constraints.push(Progression::nonneg(1 + p, p)?);
    } else {
        // p | d forces p ∤ y, so y + p^{l_p(d)} N avoids pN
        let pk = checked_pow(p, valuation(uy.b, p))?;
        constraints.push(Progression::nonneg(uy.a + pk, pk)?);
        others.retain(|&r| r != p);
    }
    others.sort_unstable();
    others.dedup();
    for r in others {
        constraints.push(Progression::int(0, r)?);
    }
    let point = ProgressionSystem::new(constraints)
        .least_element()?
        .ok_or_else(|| Error::InternalInvariant("refutation system is empty".into()))?;
    let ok = closure(&ux).contains(point) && closure(&uy).contains(point) && point % q != 0;
    if !ok {
        return Err(Error::InternalInvariant(format!(
            "refutation point {point} fails verification"
        )));
    }
    Ok(point)
}

/// Witness that `cl(1 + aN0) ∩ cl(x + bN0)` belongs to the filter `F_x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterWitness {
    pub x: u64,
    pub a: u64,
    pub b: u64,
}

impl FilterWitness {
    pub fn new(x: u64, a: u64, b: u64) -> Result<Self> {
        if !coprime(b, x) {
            return Err(Error::pre(format!("b = {b} must be coprime with x = {x}")));
        }
        BasicOpen::new(1, a)?;
        BasicOpen::new(x, b)?;
        Ok(FilterWitness { x, a, b })
    }

    /// Membership in `cl(1 + aN0) ∩ cl(x + bN0)`.
    pub fn contains(&self, z: u64) -> bool {
        let c1 = ClosureDescriptor::of_progression(1, self.a).expect("a >= 1");
        let cx = ClosureDescriptor::of_progression(self.x, self.b).expect("b >= 1");
        c1.contains(z) && cx.contains(z)
    }
}

/// Witness that `pN ∈ F_x`, available exactly when `p ∤ x`.
pub fn filter_witness_for_prime(x: u64, p: u64) -> Result<FilterWitness> {
    let w = special1_witness(x, 1, p, None)?;
    FilterWitness::new(x, w.uy.b, w.ux.b)
}

/// Prime divisors of `x` recovered from the filter `F_x`: `p | x` iff `pN ∉ F_x`.
pub fn pi_via_filter(x: u64, prime_bound: u64) -> Result<Vec<u64>> {
    if x == 0 {
        return Err(Error::pre("x must be >= 1"));
    }
    if x == 1 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for p in arith::primes_up_to(prime_bound)? {
        match filter_witness_for_prime(x, p) {
            Ok(_) => {}
            Err(Error::Precondition(_)) => out.push(p),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularNeighborhood {
    pub n: u32,
    pub neighborhood: BasicOpen,
    pub window: u64,
}

/// Exponent `n` such that every prime in `cl(x + b^n N0)` lies in `x + bN0`.
pub fn regular_neighborhood_for_prime(
    x: u64,
    b: u64,
    window: Option<u64>,
) -> Result<RegularNeighborhood> {
    if !is_prime(x) {
        return Err(Error::pre(format!("x = {x} must be prime")));
    }
    if b == 0 || !coprime(x, b) {
        return Err(Error::pre(format!("b = {b} must be coprime with x = {x}")));
    }
    let primes = arith::prime_divisors(b)?;
    if primes.len() < 2 {
        return Err(Error::pre(format!(
            "b = {b} must have at least two prime divisors"
        )));
    }
    let separated = |n: u32| {
        primes.iter().all(|&p| {
            let diff = p.abs_diff(x);
            primes
                .iter()
                .all(|&r| r.checked_pow(n).map_or(true, |rn| diff % rn != 0))
        })
    };
    let n = (1u32..=64)
        .find(|&n| b.checked_pow(n).map_or(true, |bn| bn > x) && separated(n))
        .ok_or_else(|| Error::InternalInvariant("no exponent n <= 64 works".into()))?;
    let bn = checked_pow(b, n)?;
    let neighborhood = BasicOpen::new(x, bn)?;
    let window = window.unwrap_or_else(|| default_window(&[bn]));
    let cl = closure(&neighborhood);
    let outer = BasicOpen::new(x, b)?;
    for p in arith::primes_up_to(window)? {
        if cl.contains(p) && !outer.contains(p) {
            return Err(Error::WindowViolation {
                point: p,
                detail: format!("prime in cl({x}+{bn}N0) escapes {x}+{b}N0"),
            });
        }
    }
    Ok(RegularNeighborhood {
        n,
        neighborhood,
        window,
    })
}

/// A point of `X = a + bN0` in the closure of `W = a + qbcN0` but outside
/// `V = a + qbN0`, so no neighborhood of `a` inside `V` has its closure in `V`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonRegularityWitness {
    pub point: u64,
    pub w: BasicOpen,
    pub v: BasicOpen,
}

pub fn nonregularity_witness(
    a: u64,
    b: u64,
    q: u64,
    c: u64,
    window: u64,
) -> Result<NonRegularityWitness> {
    let x = BasicOpen::new(a, b)?;
    if !is_prime(q) {
        return Err(Error::pre(format!("q = {q} must be prime")));
    }
    if a % q == 0 || b % q == 0 {
        return Err(Error::pre(format!("q = {q} must divide neither a nor b")));
    }
    if c == 0 || !coprime(c, a) {
        return Err(Error::pre(format!("c = {c} must be coprime with a = {a}")));
    }
    let qb = q.checked_mul(b).ok_or(Error::Overflow("q*b"))?;
    let m = qb.checked_mul(c).ok_or(Error::Overflow("q*b*c"))?;
    let w = BasicOpen::new(a, m)?;
    let v = BasicOpen::new(a, qb)?;
    let mut constraints = Vec::new();
    for (p, pk) in arith::factorize(m)?.prime_powers() {
        if b % p == 0 {
            constraints.push(Progression::nonneg(a, pk)?);
        } else {
            constraints.push(Progression::int(0, p)?);
        }
    }
    let mut sys = ProgressionSystem::new(constraints);
    sys.naturals = true;
    let point = sys
        .least_element()?
        .ok_or_else(|| Error::InternalInvariant("CRT system is empty".into()))?;
    if point > window {
        return Err(Error::WindowExceeded {
            window,
            needed: point,
        });
    }
    let ok = closure(&w).contains(point) && point % q == 0 && x.contains(point) && !v.contains(point);
    if !ok {
        return Err(Error::InternalInvariant(format!(
            "non-regularity point {point} fails verification"
        )));
    }
    Ok(NonRegularityWitness { point, w, v })
}

/// Clopen separation of two points of `a + bN0` by classes modulo `b^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisconnectionWitness {
    pub n: u32,
    pub class_x: Progression,
    pub class_y: Progression,
}

pub fn disconnection_witness(a: u64, b: u64, x: u64, y: u64) -> Result<DisconnectionWitness> {
    if b < 2 {
        return Err(Error::pre("b must be >= 2; a + 1N0 is connected"));
    }
    if x == y {
        return Err(Error::pre("x and y must be distinct"));
    }
    let prog = Progression::nonneg(a, b)?;
    for v in [x, y] {
        if !prog.contains(v as i128) {
            return Err(Error::pre(format!("{v} is not in {prog}")));
        }
    }
    let diff = x.abs_diff(y);
    let mut n = 1u32;
    loop {
        match b.checked_pow(n) {
            Some(bn) if diff % bn == 0 => n += 1,
            _ => break,
        }
    }
    let bn = checked_pow(b, n)?;
    Ok(DisconnectionWitness {
        n,
        class_x: Progression::int(x as i64, bn)?,
        class_y: Progression::int(y as i64, bn)?,
    })
}
