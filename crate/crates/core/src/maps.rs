//! Continuous self-maps of the Golomb space.
//!
//! A map `f` is *progressive* when every prime of `x` divides `f(x)` and
//! `(y - x)†f(x)` divides `f(y) - f(x)` for `x < y`. Finite-to-one progressive
//! maps are continuous; [`continuity_certificate`] produces the neighborhood
//! that proves it at a point and checks the inclusion on a window.

use serde::{Deserialize, Serialize};

use crate::arith::{self, coprime, dagger, gcd};
use crate::error::{Error, Result};
use crate::progression::{Progression, ProgressionSystem};

/// A map from the positive integers to themselves, possibly only known on `[1, n]`.
pub trait SelfMap {
    /// `f(x)`, widened so polynomial images stay exact past 64 bits.
    fn apply(&self, x: u64) -> Result<u128>;

    /// Largest argument the map is defined at, `None` for total maps.
    fn domain_limit(&self) -> Option<u64> {
        None
    }

    fn is_constant(&self) -> bool {
        false
    }
}

/// Integer polynomial `a_0 + a_1 x + ... + a_d x^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPolynomial {
    coefficients: Vec<i64>,
}

impl IntPolynomial {
    /// Coefficients in ascending degree; trailing zeros are dropped.
    pub fn new(mut coefficients: Vec<i64>) -> Self {
        while coefficients.len() > 1 && coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            coefficients.push(0);
        }
        IntPolynomial { coefficients }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn constant_term(&self) -> i64 {
        self.coefficients[0]
    }

    pub fn eval(&self, x: i128) -> Result<i128> {
        self.coefficients.iter().rev().try_fold(0i128, |acc, &c| {
            acc.checked_mul(x)
                .and_then(|v| v.checked_add(c as i128))
                .ok_or(Error::Overflow("polynomial evaluation"))
        })
    }

    /// Check that the polynomial sends `[1, window]` into the positive integers.
    pub fn check_self_map(&self, window: u64) -> Result<()> {
        for x in 1..=window {
            self.apply(x)?;
        }
        Ok(())
    }
}

impl SelfMap for IntPolynomial {
    fn apply(&self, x: u64) -> Result<u128> {
        let v = self.eval(x as i128)?;
        if v < 1 {
            return Err(Error::NotSelfMap { x, value: v });
        }
        Ok(v as u128)
    }

    fn is_constant(&self) -> bool {
        self.degree() == 0
    }
}

/// A finite table `f(1), ..., f(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MapTable {
    pub values: Vec<u64>,
}

impl SelfMap for MapTable {
    fn apply(&self, x: u64) -> Result<u128> {
        if x == 0 || x as usize > self.values.len() {
            return Err(Error::Invalid(format!(
                "{x} is outside the table domain [1, {}]",
                self.values.len()
            )));
        }
        Ok(self.values[x as usize - 1] as u128)
    }

    fn domain_limit(&self) -> Option<u64> {
        Some(self.values.len() as u64)
    }

    fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }
}

/// Which clause of the progressive definition failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum ProgressiveViolation {
    /// some prime of `x` does not divide `f(x)`
    PrimeDivisors { x: u64, fx: u64 },
    /// `(y - x)†f(x)` does not divide `f(y) - f(x)`
    Difference { x: u64, y: u64, modulus: u64 },
    /// tree mode only
    NotIncreasing { x: u64 },
}

/// `Ok(())` when `values` (read as `f(1..=n)`) is progressive.
pub fn is_progressive(values: &[u64]) -> std::result::Result<(), ProgressiveViolation> {
    for (i, &fx) in values.iter().enumerate() {
        let x = i as u64 + 1;
        if fx == 0 || dagger(x, fx) != 1 {
            return Err(ProgressiveViolation::PrimeDivisors { x, fx });
        }
    }
    for (i, &fx) in values.iter().enumerate() {
        for (j, &fy) in values.iter().enumerate().skip(i + 1) {
            let modulus = dagger((j - i) as u64, fx);
            if (fy as i128 - fx as i128) % modulus as i128 != 0 {
                return Err(ProgressiveViolation::Difference {
                    x: i as u64 + 1,
                    y: j as u64 + 1,
                    modulus,
                });
            }
        }
    }
    Ok(())
}

/// Progressive and strictly increasing, i.e. membership in the tree level `T_n`.
pub fn is_tree_node(values: &[u64]) -> std::result::Result<(), ProgressiveViolation> {
    if let Some(i) = values.windows(2).position(|w| w[0] >= w[1]) {
        return Err(ProgressiveViolation::NotIncreasing { x: i as u64 + 2 });
    }
    is_progressive(values)
}

/// A progressive function on `[1, n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct ProgressiveFunction {
    values: Vec<u64>,
}

impl ProgressiveFunction {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::pre("a progressive function needs a nonempty domain"));
        }
        is_progressive(&values)
            .map_err(|v| Error::pre(format!("not progressive: {v:?}")))?;
        Ok(ProgressiveFunction { values })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_increasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn table(&self) -> MapTable {
        MapTable {
            values: self.values.clone(),
        }
    }
}

impl TryFrom<Vec<u64>> for ProgressiveFunction {
    type Error = Error;

    fn try_from(values: Vec<u64>) -> Result<Self> {
        ProgressiveFunction::new(values)
    }
}

impl From<ProgressiveFunction> for Vec<u64> {
    fn from(f: ProgressiveFunction) -> Self {
        f.values
    }
}

/// The residue classes whose intersection is the successor set `Y_f`:
/// `pN` for each prime `p | n+1`, and `f(k) + ((n+1-k)†f(k))Z` for `k <= n`.
pub fn successor_constraints(f: &ProgressiveFunction) -> Result<Vec<Progression>> {
    let n = f.len() as u64;
    let mut out = Vec::new();
    for p in arith::prime_divisors(n + 1)? {
        out.push(Progression::int(0, p)?);
    }
    for (i, &fk) in f.values().iter().enumerate() {
        let k = i as u64 + 1;
        let m = dagger(n + 1 - k, fk);
        out.push(Progression::int(i64::try_from(fk).map_err(|_| Error::Overflow("f(k)"))?, m)?);
    }
    Ok(out)
}

/// The two pairwise CRT conditions that make `Y_f` infinite.
///
/// 1. `gcd(p, (n+1-k)†f(k))` divides `f(k)` for `p | n+1`, `k <= n`.
/// 2. `gcd((n+1-k)†f(k), (n+1-l)†f(l))` divides `f(l) - f(k)` for `k < l`.
pub fn successor_conditions(f: &ProgressiveFunction) -> Result<()> {
    let n = f.len() as u64;
    let v = f.values();
    let mods: Vec<u64> = v
        .iter()
        .enumerate()
        .map(|(i, &fk)| dagger(n - i as u64, fk))
        .collect();
    for p in arith::prime_divisors(n + 1)? {
        for (i, &m) in mods.iter().enumerate() {
            if v[i] % gcd(p, m) != 0 {
                return Err(Error::InternalInvariant(format!(
                    "successor condition (1) fails at p = {p}, k = {}",
                    i + 1
                )));
            }
        }
    }
    for k in 0..mods.len() {
        for l in k + 1..mods.len() {
            let g = gcd(mods[k], mods[l]) as i128;
            if (v[l] as i128 - v[k] as i128) % g != 0 {
                return Err(Error::InternalInvariant(format!(
                    "successor condition (2) fails at k = {}, l = {}",
                    k + 1,
                    l + 1
                )));
            }
        }
    }
    Ok(())
}

/// The first `count` values `g(n+1) > f(n)` extending `f` inside the tree, ascending.
pub fn enumerate_successors(f: &ProgressiveFunction, count: usize) -> Result<Vec<u64>> {
    if !f.is_increasing() {
        return Err(Error::pre("tree nodes must be strictly increasing"));
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    successor_conditions(f)?;
    let class = ProgressionSystem::new(successor_constraints(f)?)
        .intersect()?
        .ok_or_else(|| Error::InternalInvariant("successor set is empty".into()))?;
    let last = *f.values().last().expect("nonempty");
    let mut g = crate::progression::least_at_least(class.a as u64, class.b, last + 1);
    let mut out = Vec::with_capacity(count);
    let mut ext = f.values().to_vec();
    ext.push(0);
    for _ in 0..count {
        *ext.last_mut().expect("nonempty") = g;
        is_tree_node(&ext).map_err(|v| {
            Error::InternalInvariant(format!("successor {g} breaks progressivity: {v:?}"))
        })?;
        out.push(g);
        g = g.checked_add(class.b).ok_or(Error::Overflow("successor"))?;
    }
    Ok(out)
}

/// Neighborhood `x + dN0` (minus the finite set `removed`) mapped into `f(x) + bN0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuityCertificate {
    pub x: u64,
    pub fx: u128,
    pub b: u64,
    pub d: u64,
    /// Points of `x + dN0` in the window whose image lands below `f(x)` in `f(x) + bZ`.
    pub removed: Vec<u64>,
    pub window: u64,
    pub checked: u64,
    pub window_bounded: bool,
}

/// Continuity of `f` at `x` against the target neighborhood `f(x) + bN0`.
///
/// `removed` is the exceptional set restricted to `x + dN0`; points off that
/// progression never matter for the neighborhood.
pub fn continuity_certificate(
    f: &dyn SelfMap,
    x: u64,
    b: u64,
    window: u64,
) -> Result<ContinuityCertificate> {
    if x == 0 || b == 0 {
        return Err(Error::pre("x and b must be >= 1"));
    }
    let fx = f.apply(x)?;
    let g = gcd(b, (fx % b as u128) as u64);
    if g != 1 {
        return Err(Error::pre(format!(
            "gcd(b, f(x)) = gcd({b}, {fx}) = {g} != 1; {fx}+{b}N0 is not a neighborhood"
        )));
    }
    let window = f.domain_limit().map_or(window, |n| window.min(n));
    let d = if f.is_constant() { 1 } else { b };
    if !coprime(d, x) {
        return Err(Error::WindowViolation {
            point: x,
            detail: format!("{x}+{d}N0 is not a neighborhood; f is not progressive at {x}"),
        });
    }
    let mut removed = Vec::new();
    let mut checked = 0;
    let mut y = x;
    while y <= window {
        let fy = f.apply(y)?;
        checked += 1;
        if fy % b as u128 != fx % b as u128 {
            return Err(Error::WindowViolation {
                point: y,
                detail: format!("f({y}) = {fy} is not in {fx}+{b}Z"),
            });
        }
        if fy < fx {
            removed.push(y);
        }
        y = match y.checked_add(d) {
            Some(v) => v,
            None => break,
        };
    }
    Ok(ContinuityCertificate {
        x,
        fx,
        b,
        d,
        removed,
        window,
        checked,
        window_bounded: true,
    })
}

/// Disjoint open split of `f(X)` for the superconnected `X = pN ∪ (x + pN0)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitWitness {
    pub x: u64,
    pub fx: u64,
    pub a0: i64,
    pub p: u64,
    /// `U = f(X) ∩ (a0 + pZ)`, the image of `pN`
    pub u_class: Progression,
    /// `V = f(X) ∩ (f(x) + pZ)`, the image of `x + pN0`
    pub v_class: Progression,
    pub u_sample: u128,
    pub v_sample: u64,
    pub window: u64,
    pub checked: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PolyVerdict {
    ContinuousA0Zero,
    ContinuousConstant { value: u128 },
    Discontinuous { witness: SplitWitness },
}

/// Classify a polynomial self-map: continuous exactly when the constant term vanishes
/// (constants aside). Discontinuity comes with an explicit split witness.
pub fn polynomial_continuity(p: &IntPolynomial, check_window: u64) -> Result<PolyVerdict> {
    p.check_self_map(check_window.max(1))?;
    if p.is_constant() {
        return Ok(PolyVerdict::ContinuousConstant { value: p.apply(1)? });
    }
    let a0 = p.constant_term();
    if a0 == 0 {
        return Ok(PolyVerdict::ContinuousA0Zero);
    }
    split_witness(p, None).map(|witness| PolyVerdict::Discontinuous { witness })
}

/// Build and window-check the split of `f(pN ∪ (x + pN0))` for `a0 != 0`.
///
/// `p` is the least prime above `max(|a0|, x, f(x))` not dividing `f(x) - a0`;
/// the second requirement matters only for negative `a0`.
pub fn split_witness(f: &IntPolynomial, window: Option<u64>) -> Result<SplitWitness> {
    let a0 = f.constant_term();
    if a0 == 0 || f.is_constant() {
        return Err(Error::pre("split witness needs a non-constant polynomial with a0 != 0"));
    }
    let x = (1..=f.degree() as u64 + 1)
        .find(|&x| f.eval(x as i128).map_or(false, |v| v != a0 as i128))
        .ok_or_else(|| Error::InternalInvariant("non-constant polynomial is constant".into()))?;
    let fx = u64::try_from(f.apply(x)?).map_err(|_| Error::Overflow("f(x)"))?;
    let gap = (fx as i128 - a0 as i128).unsigned_abs();
    let mut p = arith::next_prime_after(a0.unsigned_abs().max(x).max(fx))?;
    while gap % p as u128 == 0 {
        p = arith::next_prime_after(p)?;
    }
    let u_class = Progression::int(a0, p)?;
    let v_class = Progression::int(fx as i64, p)?;
    if u_class == v_class || u_class.a == 0 || v_class.a == 0 {
        return Err(Error::InternalInvariant(format!(
            "classes {u_class} and {v_class} are not disjoint open classes"
        )));
    }
    let window = window.unwrap_or_else(|| x + 10 * p);
    let mut checked = 0;
    for y in 1..=window {
        let in_pn = y % p == 0;
        let in_shift = y >= x && (y - x) % p == 0;
        if !in_pn && !in_shift {
            continue;
        }
        let fy = f.apply(y)?;
        checked += 1;
        let class = if in_pn { &u_class } else { &v_class };
        if !class.contains(fy as i128) {
            return Err(Error::WindowViolation {
                point: y,
                detail: format!("f({y}) = {fy} is not in {class}"),
            });
        }
    }
    Ok(SplitWitness {
        x,
        fx,
        a0,
        p,
        u_class,
        v_class,
        u_sample: f.apply(p)?,
        v_sample: fx,
        window,
        checked,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfSquareWitness {
    pub b: u64,
    pub point: u64,
    pub image: u64,
}

/// For the neighborhood `2 + bN0` of 2, a point whose image under `x(x+1)/2`
/// is even and so misses `3 + 2N0`.
pub fn half_square_discontinuity_witness(b: u64) -> Result<HalfSquareWitness> {
    if b % 2 == 0 {
        return Err(Error::pre(format!(
            "b = {b} is even, so 2+{b}N0 is not a neighborhood of 2"
        )));
    }
    let n = (b + 1) / 2;
    let point = n.checked_mul(4).ok_or(Error::Overflow("4n"))?;
    let image = (point as u128 * (point as u128 + 1) / 2) as u64;
    if (point - 2) % b != 0 || image % 2 != 0 {
        return Err(Error::InternalInvariant(format!(
            "half-square witness {point} fails verification"
        )));
    }
    Ok(HalfSquareWitness { b, point, image })
}
