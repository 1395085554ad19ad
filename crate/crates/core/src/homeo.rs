//! Necessary-condition filter for candidate self-homeomorphisms.
//!
//! Every homeomorphism `h` of the Golomb space satisfies
//! 1. `h(1) = 1`,
//! 2. `h(Π) = Π`,
//! 3. `Π_{h(x)} = h(Π_x)` for all `x`,
//! 4. `h(a^n) = h(a)^{μ(n)}` for a multiplicative bijection `μ`.
//!
//! The checks below test these on a finite window `[1, N]`. Passing them does
//! not certify a homeomorphism.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::{self, is_kth_power, is_perfect_power, is_prime, pow_mod};
use crate::error::{Error, Result};

pub const NECESSARY_ONLY: &str =
    "necessary conditions only: passing every check does not certify a homeomorphism";

/// Violations kept per verdict; the total is always counted.
pub const MAX_LISTED_VIOLATIONS: usize = 20;

/// An injective map `[1, N] → ℕ`, a window into a candidate bijection of `ℕ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WindowFile", into = "WindowFile")]
pub struct BijectionWindow {
    forward: Vec<u64>,
    backward: HashMap<u64, u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct WindowFile {
    n: u64,
    map: Vec<u64>,
}

impl TryFrom<WindowFile> for BijectionWindow {
    type Error = Error;

    fn try_from(file: WindowFile) -> Result<Self> {
        if file.map.len() as u64 != file.n {
            return Err(Error::Invalid(format!(
                "n = {} but map has {} entries",
                file.n,
                file.map.len()
            )));
        }
        BijectionWindow::new(file.map)
    }
}

impl From<BijectionWindow> for WindowFile {
    fn from(h: BijectionWindow) -> Self {
        WindowFile {
            n: h.size(),
            map: h.forward,
        }
    }
}

impl BijectionWindow {
    /// `forward[i]` is `h(i + 1)`.
    pub fn new(forward: Vec<u64>) -> Result<Self> {
        let mut backward = HashMap::with_capacity(forward.len());
        for (i, &v) in forward.iter().enumerate() {
            let x = i as u64 + 1;
            if v == 0 {
                return Err(Error::Invalid(format!("h({x}) = 0 is not a positive integer")));
            }
            if let Some(prev) = backward.insert(v, x) {
                return Err(Error::Invalid(format!(
                    "not injective: h({prev}) = h({x}) = {v}"
                )));
            }
        }
        Ok(BijectionWindow { forward, backward })
    }

    pub fn from_fn(n: u64, mut f: impl FnMut(u64) -> Result<u64>) -> Result<Self> {
        Self::new((1..=n).map(&mut f).collect::<Result<_>>()?)
    }

    pub fn identity(n: u64) -> Self {
        Self::new((1..=n).collect()).expect("identity is injective")
    }

    /// Exchanges the numbers `p` and `q`, fixing everything else.
    pub fn transposition(n: u64, p: u64, q: u64) -> Result<Self> {
        Self::from_fn(n, |x| {
            Ok(match x {
                _ if x == p => q,
                _ if x == q => p,
                _ => x,
            })
        })
    }

    /// Exchanges the exponents of the primes `p` and `q` in every factorization.
    pub fn multiplicative_swap(n: u64, p: u64, q: u64) -> Result<Self> {
        if !is_prime(p) || !is_prime(q) || p == q {
            return Err(Error::pre("swap needs two distinct primes"));
        }
        Self::from_fn(n, |x| {
            let (ep, eq) = (arith::valuation(x, p), arith::valuation(x, q));
            let rest = x / arith::checked_pow(p, ep)? / arith::checked_pow(q, eq)?;
            rest.checked_mul(arith::checked_pow(q, ep)?)
                .and_then(|v| v.checked_mul(arith::checked_pow(p, eq).ok()?))
                .ok_or(Error::Overflow("multiplicative swap"))
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("window JSON: {e}")))
    }

    /// Rows `x,h(x)` covering `1..=N` in any order; a non-numeric first row is a header.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let mut pairs = BTreeMap::new();
        for (row, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::Invalid(format!("window CSV: {e}")))?;
            if record.len() != 2 {
                return Err(Error::Invalid(format!("row {}: expected 2 fields", row + 1)));
            }
            let parsed = (record[0].parse::<u64>(), record[1].parse::<u64>());
            let (x, v) = match parsed {
                (Ok(x), Ok(v)) => (x, v),
                _ if row == 0 => continue,
                _ => return Err(Error::Invalid(format!("row {}: not integers", row + 1))),
            };
            if pairs.insert(x, v).is_some() {
                return Err(Error::Invalid(format!("h({x}) given twice")));
            }
        }
        let n = pairs.len() as u64;
        if pairs.keys().copied().ne(1..=n) {
            return Err(Error::Invalid(format!("rows must cover 1..={n}")));
        }
        Self::new(pairs.into_values().collect())
    }

    /// Reads `.csv` files as pairs and anything else as JSON.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => Self::from_csv(&text),
            _ => Self::from_json(&text),
        }
    }

    pub fn size(&self) -> u64 {
        self.forward.len() as u64
    }

    pub fn forward(&self, x: u64) -> Option<u64> {
        x.checked_sub(1).and_then(|i| self.forward.get(i as usize)).copied()
    }

    /// `h^{-1}(y)` when it lies in the window.
    pub fn backward(&self, y: u64) -> Option<u64> {
        self.backward.get(&y).copied()
    }

    pub fn values(&self) -> &[u64] {
        &self.forward
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub x: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub item: String,
    pub status: Status,
    pub checked: u64,
    /// Cases needing values outside the window.
    pub skipped: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
}

impl Verdict {
    fn new(item: &str) -> Self {
        Verdict {
            item: item.to_string(),
            status: Status::Indeterminate,
            checked: 0,
            skipped: 0,
            violation_count: 0,
            violations: Vec::new(),
        }
    }

    fn ok(&mut self) {
        self.checked += 1;
    }

    fn skip(&mut self) {
        self.skipped += 1;
    }

    fn fail(&mut self, x: u64, detail: String) {
        self.checked += 1;
        self.violation_count += 1;
        if self.violations.len() < MAX_LISTED_VIOLATIONS {
            self.violations.push(Violation { x, detail });
        }
    }

    fn finish(mut self) -> Self {
        self.status = if self.violation_count > 0 {
            Status::Fail
        } else if self.checked > 0 {
            Status::Pass
        } else {
            Status::Indeterminate
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

pub fn check_fixed_one(h: &BijectionWindow) -> Verdict {
    let mut v = Verdict::new("fixed_one");
    match h.forward(1) {
        Some(1) => v.ok(),
        Some(y) => v.fail(1, format!("h(1) = {y}")),
        None => v.skip(),
    }
    v.finish()
}

pub fn check_primes_preserved(h: &BijectionWindow) -> Verdict {
    let mut v = Verdict::new("primes_preserved");
    let n = h.size();
    for p in (2..=n).filter(|&p| is_prime(p)) {
        let y = h.forward(p).expect("p is in the window");
        if is_prime(y) {
            v.ok();
        } else {
            v.fail(p, format!("prime {p} maps to non-prime {y}"));
        }
        match h.backward(p) {
            Some(x) if is_prime(x) => v.ok(),
            Some(x) => v.fail(x, format!("non-prime {x} maps to prime {p}")),
            None => v.skip(),
        }
    }
    v.finish()
}

fn prime_set(x: u64) -> BTreeSet<u64> {
    arith::prime_divisors(x).map(BTreeSet::from_iter).unwrap_or_default()
}

pub fn check_prime_divisor_equivariance(h: &BijectionWindow) -> Verdict {
    let mut v = Verdict::new("prime_divisor_equivariance");
    for x in 1..=h.size() {
        let hx = h.forward(x).expect("x is in the window");
        let image: Option<BTreeSet<u64>> = prime_set(x).into_iter().map(|p| h.forward(p)).collect();
        let Some(image) = image else {
            v.skip();
            continue;
        };
        let actual = prime_set(hx);
        if actual == image {
            v.ok();
        } else {
            v.fail(
                x,
                format!("prime divisors of h({x}) = {hx} are {actual:?}, images of those of {x} are {image:?}"),
            );
        }
    }
    v.finish()
}

/// `m` with `base^m = value`, for `base >= 2`.
fn exact_log(value: u64, base: u64) -> Option<u32> {
    let mut m = 0;
    let mut rest = value;
    while rest > 1 && rest % base == 0 {
        rest /= base;
        m += 1;
    }
    (rest == 1 && m > 0).then_some(m)
}

/// In-window powers `a^k`, `k <= max_power`, with out-of-window ones counted.
fn powers_in_window(h: &BijectionWindow, a: u64, max_power: u32) -> (Vec<(u32, u64)>, u64) {
    let mut inside = Vec::new();
    let mut outside = 0;
    for k in 1..=max_power {
        match a.checked_pow(k).filter(|&ak| ak <= h.size()) {
            Some(ak) => inside.push((k, ak)),
            None => outside += 1,
        }
    }
    (inside, outside)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonogenicVerdict {
    pub a: u64,
    pub image: Option<u64>,
    #[serde(flatten)]
    pub verdict: Verdict,
    /// `(k, m)` with `h(a^k) = h(a)^m`.
    pub exponents: Vec<(u32, u32)>,
}

pub fn check_monogenic(h: &BijectionWindow, a: u64, max_power: u32) -> Result<MonogenicVerdict> {
    if a < 2 {
        return Err(Error::pre("base a must be >= 2"));
    }
    let mut v = Verdict::new("monogenic");
    let mut exponents = Vec::new();
    let image = h.forward(a);
    let (inside, outside) = powers_in_window(h, a, max_power);
    v.skipped = outside;
    if let Some(ha) = image {
        for (k, ak) in inside {
            let hk = h.forward(ak).expect("power is in the window");
            match (ha >= 2).then(|| exact_log(hk, ha)).flatten() {
                Some(m) => {
                    v.ok();
                    exponents.push((k, m));
                }
                None => v.fail(ak, format!("h({ak}) = {hk} is not a power of h({a}) = {ha}")),
            }
        }
    }
    Ok(MonogenicVerdict {
        a,
        image,
        verdict: v.finish(),
        exponents,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuConflict {
    pub n: u32,
    pub first_base: u64,
    pub first_mu: u32,
    pub second_base: u64,
    pub second_mu: u32,
}

/// Partial `n ↦ μ(n)` solved from `h(a^n) = h(a)^{μ(n)}` over several bases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuTable {
    pub entries: BTreeMap<u32, u32>,
    /// Per base, the exponents it determined.
    pub per_base: BTreeMap<u64, BTreeMap<u32, u32>>,
    pub conflicts: Vec<MuConflict>,
    /// `(x, y)` coprime with `xy` tabulated and `μ(xy) != μ(x)μ(y)`.
    pub multiplicative_failures: Vec<(u32, u32)>,
    pub primes_to_primes: bool,
    pub status: Status,
}

impl MuTable {
    pub fn get(&self, n: u32) -> Option<u32> {
        self.entries.get(&n).copied()
    }
}

pub fn extract_mu(h: &BijectionWindow, bases: &[u64], max_power: u32) -> Result<MuTable> {
    let mut per_base = BTreeMap::new();
    for &a in bases {
        if a < 2 {
            return Err(Error::pre("bases must be >= 2"));
        }
        if let Some((root, k)) = is_perfect_power(a) {
            return Err(Error::pre(format!("base {a} = {root}^{k} is a perfect power")));
        }
        let mv = check_monogenic(h, a, max_power)?;
        if let Some(bad) = mv.verdict.first_violation() {
            let image = mv.image.unwrap_or(0);
            let value = h.forward(bad.x).unwrap_or(0);
            return Err(Error::NoExponent {
                base: a,
                image,
                power: bad.x,
                value,
            });
        }
        per_base.insert(a, mv.exponents.into_iter().collect::<BTreeMap<_, _>>());
    }

    let mut entries: BTreeMap<u32, u32> = BTreeMap::new();
    let mut source: BTreeMap<u32, u64> = BTreeMap::new();
    let mut conflicts = Vec::new();
    for (&a, table) in &per_base {
        for (&n, &m) in table {
            match entries.get(&n) {
                Some(&prev) if prev != m => conflicts.push(MuConflict {
                    n,
                    first_base: source[&n],
                    first_mu: prev,
                    second_base: a,
                    second_mu: m,
                }),
                Some(_) => {}
                None => {
                    entries.insert(n, m);
                    source.insert(n, a);
                }
            }
        }
    }

    let mut multiplicative_failures = Vec::new();
    for (&x, &mx) in &entries {
        for (&y, &my) in entries.range(x..) {
            let Some(xy) = x.checked_mul(y) else { break };
            if let Some(&mxy) = entries.get(&xy) {
                let coprime = arith::gcd(x as u64, y as u64) == 1;
                let prime_power = x == y && is_prime(x as u64);
                if (coprime || prime_power) && Some(mxy) != mx.checked_mul(my) {
                    multiplicative_failures.push((x, y));
                }
            }
        }
    }

    let prime_images: Vec<u32> = entries
        .iter()
        .filter(|(&n, _)| is_prime(n as u64))
        .map(|(_, &m)| m)
        .collect();
    let distinct: BTreeSet<u32> = prime_images.iter().copied().collect();
    let primes_to_primes =
        prime_images.iter().all(|&m| is_prime(m as u64)) && distinct.len() == prime_images.len();

    let status = if !conflicts.is_empty() || !multiplicative_failures.is_empty() {
        Status::Fail
    } else if entries.is_empty() {
        Status::Indeterminate
    } else {
        Status::Pass
    };
    Ok(MuTable {
        entries,
        per_base,
        conflicts,
        multiplicative_failures,
        primes_to_primes,
        status,
    })
}

/// Primes `p ≡ 1 (mod b)`, `p ∤ a`, with `a^{(p-1)/b} ≢ 1 (mod p)`, ascending.
pub fn brunault_primes(a: u64, b: u64, count: usize, search_bound: u64) -> Result<Vec<u64>> {
    if !is_prime(b) {
        return Err(Error::pre(format!("b = {b} must be prime")));
    }
    if a < 2 {
        return Err(Error::pre("a must be >= 2"));
    }
    let k = u32::try_from(b).map_err(|_| Error::pre("b too large"))?;
    if is_kth_power(a, k) {
        return Err(Error::pre(format!("a = {a} is a {b}-th power")));
    }
    let found: Vec<u64> = arith::primes_up_to(search_bound)?
        .into_iter()
        .filter(|&p| p % b == 1 && a % p != 0 && pow_mod(a, (p - 1) / b, p) != 1)
        .take(count)
        .collect();
    if found.len() < count {
        return Err(Error::NotFoundWithinBound {
            what: format!("{count} primes for a = {a}, b = {b} (found {})", found.len()),
            bound: search_bound,
        });
    }
    Ok(found)
}

/// Bases used by [`run_all_checks`]: non-perfect powers `a` with `a^2 <= N`.
pub fn default_bases(n: u64) -> Vec<u64> {
    (2..)
        .take_while(|&a: &u64| a.checked_mul(a).is_some_and(|sq| sq <= n))
        .filter(|&a| is_perfect_power(a).is_none())
        .collect()
}

/// Largest `k` with `2^k <= N`, at least 1.
pub fn default_max_power(n: u64) -> u32 {
    n.checked_ilog2().unwrap_or(0).max(1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomeoReport {
    pub n: u64,
    pub fixed_one: Verdict,
    pub primes_preserved: Verdict,
    pub prime_divisor_equivariance: Verdict,
    pub power_exponents: Verdict,
    pub mu: Option<MuTable>,
    pub all_pass: bool,
    pub note: String,
}

impl HomeoReport {
    pub fn items(&self) -> [&Verdict; 4] {
        [
            &self.fixed_one,
            &self.primes_preserved,
            &self.prime_divisor_equivariance,
            &self.power_exponents,
        ]
    }
}

fn power_exponents(h: &BijectionWindow) -> (Verdict, Option<MuTable>) {
    let mut v = Verdict::new("power_exponents");
    let bases = default_bases(h.size());
    let max_power = default_max_power(h.size());
    for &a in &bases {
        let mv = check_monogenic(h, a, max_power).expect("bases are >= 2");
        v.checked += mv.verdict.checked;
        v.violation_count += mv.verdict.violation_count;
        let room = MAX_LISTED_VIOLATIONS.saturating_sub(v.violations.len());
        v.violations.extend(mv.verdict.violations.into_iter().take(room));
    }
    if v.violation_count > 0 || bases.is_empty() {
        return (v.finish(), None);
    }
    let mu = extract_mu(h, &bases, max_power).expect("monogenic checks passed");
    for c in &mu.conflicts {
        v.fail(
            c.n as u64,
            format!(
                "mu({}) is {} from base {} but {} from base {}",
                c.n, c.first_mu, c.first_base, c.second_mu, c.second_base
            ),
        );
    }
    for &(x, y) in &mu.multiplicative_failures {
        v.fail(x as u64 * y as u64, format!("mu({x}*{y}) != mu({x}) mu({y})"));
    }
    if !mu.primes_to_primes {
        v.fail(0, "mu does not map primes injectively to primes".into());
    }
    (v.finish(), Some(mu))
}

pub fn run_all_checks(h: &BijectionWindow) -> HomeoReport {
    let fixed_one = check_fixed_one(h);
    let primes_preserved = check_primes_preserved(h);
    let prime_divisor_equivariance = check_prime_divisor_equivariance(h);
    let (power_exponents, mu) = power_exponents(h);
    let all_pass = [
        &fixed_one,
        &primes_preserved,
        &prime_divisor_equivariance,
        &power_exponents,
    ]
    .iter()
    .all(|v| v.passed());
    HomeoReport {
        n: h.size(),
        fixed_one,
        primes_preserved,
        prime_divisor_equivariance,
        power_exponents,
        mu,
        all_pass,
        note: NECESSARY_ONLY.to_string(),
    }
}
