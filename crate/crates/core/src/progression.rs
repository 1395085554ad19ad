//! Arithmetic progressions and their intersections.
//!
//! Two carriers are supported: `a + b N0` (the literal set `{a + bn : n >= 0}`)
//! and the full residue class `a + bZ`. Intersections are computed on residue
//! classes first and clipped back to the positive integers afterwards.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{ext_gcd, gcd, mul_mod, rem_euclid};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Carrier {
    /// `{a + bn : n >= 0}`
    N0,
    /// `a + bZ`
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Progression {
    pub a: i64,
    pub b: u64,
    pub carrier: Carrier,
}

impl Progression {
    /// `a + b N0`. The literal offset is kept since the least element matters.
    pub fn nonneg(a: u64, b: u64) -> Result<Self> {
        if b == 0 {
            return Err(Error::pre("progression modulus must be >= 1"));
        }
        let a = i64::try_from(a).map_err(|_| Error::Overflow("progression offset"))?;
        Ok(Progression {
            a,
            b,
            carrier: Carrier::N0,
        })
    }

    /// `a + bZ` in canonical form `0 <= a < b`.
    pub fn int(a: i64, b: u64) -> Result<Self> {
        if b == 0 {
            return Err(Error::pre("progression modulus must be >= 1"));
        }
        if b > i64::MAX as u64 {
            return Err(Error::Overflow("progression modulus"));
        }
        Ok(Progression {
            a: rem_euclid(a as i128, b) as i64,
            b,
            carrier: Carrier::Z,
        })
    }

    /// Residue of the progression in `[0, b)`.
    pub fn residue(&self) -> u64 {
        rem_euclid(self.a as i128, self.b)
    }

    pub fn canonical(&self) -> Progression {
        Progression {
            a: self.residue() as i64,
            b: self.b,
            carrier: Carrier::Z,
        }
    }

    pub fn contains(&self, x: i128) -> bool {
        let congruent = (x - self.a as i128).rem_euclid(self.b as i128) == 0;
        match self.carrier {
            Carrier::Z => congruent,
            Carrier::N0 => congruent && x >= self.a as i128,
        }
    }

    /// Least positive member.
    pub fn least_positive(&self) -> u64 {
        let lower = match self.carrier {
            Carrier::N0 => self.a.max(1) as u64,
            Carrier::Z => 1,
        };
        least_at_least(self.residue(), self.b, lower)
    }

    /// Members in `[1, limit]`, ascending.
    pub fn enumerate(&self, limit: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut x = self.least_positive();
        while x <= limit {
            out.push(x);
            x = match x.checked_add(self.b) {
                Some(v) => v,
                None => break,
            };
        }
        out
    }
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.carrier {
            Carrier::N0 => write!(f, "{}+{}N0", self.a, self.b),
            Carrier::Z => write!(f, "{}+{}Z", self.a, self.b),
        }
    }
}

/// Parses the `Display` forms `a+bN0` and `a+bZ`.
impl FromStr for Progression {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Invalid(format!("expected a+bN0 or a+bZ, got {s:?}"));
        let (body, n0) = match (s.strip_suffix("N0"), s.strip_suffix('Z')) {
            (Some(body), _) => (body, true),
            (None, Some(body)) => (body, false),
            _ => return Err(bad()),
        };
        let split = body.get(1..).and_then(|t| t.find('+')).map(|i| i + 1).ok_or_else(bad)?;
        let b: u64 = body[split + 1..].parse().map_err(|_| bad())?;
        if n0 {
            Progression::nonneg(body[..split].parse().map_err(|_| bad())?, b)
        } else {
            Progression::int(body[..split].parse().map_err(|_| bad())?, b)
        }
    }
}

/// Least `x >= lower` with `x ≡ residue (mod modulus)`.
pub(crate) fn least_at_least(residue: u64, modulus: u64, lower: u64) -> u64 {
    let r = residue % modulus;
    let lr = lower % modulus;
    let shift = (r + modulus - lr) % modulus;
    lower + shift
}

/// Merge two residue classes. `None` when they are disjoint.
pub fn crt_pair(a1: u64, m1: u64, a2: u64, m2: u64) -> Result<Option<(u64, u64)>> {
    let (g, s, _) = ext_gcd(m1 as i128, m2 as i128);
    let g = g as u64;
    let diff = a2 as i128 - a1 as i128;
    if diff % g as i128 != 0 {
        return Ok(None);
    }
    let m2g = m2 / g;
    let lcm = (m1 as u128) * (m2g as u128);
    if lcm > u64::MAX as u128 {
        return Err(Error::Overflow("crt modulus"));
    }
    // x = a1 + m1 * t with t ≡ (diff/g) * s (mod m2/g)
    let t = mul_mod(rem_euclid(diff / g as i128, m2g), rem_euclid(s, m2g), m2g);
    let x = (a1 as u128 + m1 as u128 * t as u128) % lcm;
    Ok(Some((x as u64, lcm as u64)))
}

/// A finite list of progression constraints, read as their intersection.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ProgressionSystem {
    pub constraints: Vec<Progression>,
    /// Clip to the positive integers even when every constraint is a `Z` class.
    #[serde(default)]
    pub naturals: bool,
}

impl ProgressionSystem {
    pub fn new(constraints: Vec<Progression>) -> Self {
        ProgressionSystem {
            constraints,
            naturals: false,
        }
    }

    fn require_nonempty(&self) -> Result<()> {
        if self.constraints.is_empty() {
            Err(Error::pre("progression system needs at least one constraint"))
        } else {
            Ok(())
        }
    }

    /// Pairwise solvability: `gcd(b_i, b_j)` divides `a_i - a_j` for all pairs.
    pub fn crt_consistent(&self) -> Result<bool> {
        self.require_nonempty()?;
        let cs = &self.constraints;
        for (i, p) in cs.iter().enumerate() {
            for q in &cs[i + 1..] {
                let g = gcd(p.b, q.b) as i128;
                if (p.a as i128 - q.a as i128) % g != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The intersection of the underlying residue classes as a canonical `Z` progression.
    pub fn intersect(&self) -> Result<Option<Progression>> {
        self.require_nonempty()?;
        let mut acc = (0u64, 1u64);
        for p in &self.constraints {
            match crt_pair(acc.0, acc.1, p.residue(), p.b)? {
                Some(m) => acc = m,
                None => return Ok(None),
            }
        }
        Ok(Some(Progression::int(acc.0 as i64, acc.1)?))
    }

    /// Least positive integer in the full mixed-carrier intersection.
    pub fn least_element(&self) -> Result<Option<u64>> {
        if self.constraints.is_empty() {
            return Ok(Some(1));
        }
        let Some(class) = self.intersect()? else {
            return Ok(None);
        };
        let lower = self
            .constraints
            .iter()
            .filter(|p| p.carrier == Carrier::N0)
            .map(|p| p.a.max(1) as u64)
            .max()
            .unwrap_or(1);
        let x = least_at_least(class.a as u64, class.b, lower);
        Ok(Some(x))
    }

    pub fn contains(&self, x: i128) -> bool {
        let clip = self.naturals || self.constraints.iter().any(|p| p.carrier == Carrier::N0);
        (!clip || x >= 1) && self.constraints.iter().all(|p| p.contains(x))
    }
}

pub fn crt_consistent(system: &ProgressionSystem) -> Result<bool> {
    system.crt_consistent()
}

pub fn intersect(system: &ProgressionSystem) -> Result<Option<Progression>> {
    system.intersect()
}

pub fn least_element(system: &ProgressionSystem) -> Result<Option<u64>> {
    system.least_element()
}

pub fn enumerate(p: &Progression, limit: u64) -> Vec<u64> {
    p.enumerate(limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::lcm;
    use proptest::prelude::*;

    fn z(a: i64, b: u64) -> Progression {
        Progression::int(a, b).unwrap()
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!("3+5N0".parse::<Progression>().unwrap(), Progression::nonneg(3, 5).unwrap());
        assert_eq!(" -1 + 4Z".parse::<Progression>().unwrap(), z(3, 4));
        assert!("-1+4N0".parse::<Progression>().is_err());
        assert!("3+0N0".parse::<Progression>().is_err());
        assert!("3*5N0".parse::<Progression>().is_err());
        assert!("".parse::<Progression>().is_err());
        assert!("N0".parse::<Progression>().is_err());
        for p in [Progression::nonneg(7, 12).unwrap(), z(5, 9)] {
            assert_eq!(p.to_string().parse::<Progression>().unwrap(), p);
        }
    }

    fn n0(a: u64, b: u64) -> Progression {
        Progression::nonneg(a, b).unwrap()
    }

    fn sys(ps: &[Progression]) -> ProgressionSystem {
        ProgressionSystem::new(ps.to_vec())
    }

    #[test]
    fn consistency_examples() {
        let scan = |ps: &[Progression]| (0..24).any(|x| ps.iter().all(|p| p.contains(x)));
        let yes = [z(1, 4), z(3, 6)];
        let no = [z(1, 4), z(2, 6)];
        assert!(scan(&yes));
        assert!(!scan(&no));
        assert!(sys(&yes).crt_consistent().unwrap());
        assert!(!sys(&no).crt_consistent().unwrap());
        assert!(sys(&[z(17, 1)]).crt_consistent().unwrap());
        assert!(sys(&[]).crt_consistent().is_err());
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(sys(&[z(1, 4), z(3, 6)]).intersect().unwrap(), Some(z(9, 12)));
        assert_eq!(sys(&[z(1, 2), z(2, 3)]).intersect().unwrap(), Some(z(5, 6)));
        assert_eq!(sys(&[z(0, 1), z(0, 1)]).intersect().unwrap(), Some(z(0, 1)));
        assert_eq!(sys(&[z(1, 4), z(2, 6)]).intersect().unwrap(), None);
    }

    #[test]
    fn least_element_examples() {
        assert_eq!(sys(&[n0(1, 2), n0(2, 3)]).least_element().unwrap(), Some(5));
        assert_eq!(sys(&[n0(2, 4), n0(3, 4)]).least_element().unwrap(), None);
        assert_eq!(sys(&[n0(5, 7)]).least_element().unwrap(), Some(5));
        // the N0 offset, not the residue, bounds the answer
        assert_eq!(sys(&[n0(15, 2), z(0, 3)]).least_element().unwrap(), Some(15));
        assert_eq!(sys(&[n0(16, 2), z(0, 3)]).least_element().unwrap(), Some(18));
        assert_eq!(sys(&[z(0, 5)]).least_element().unwrap(), Some(5));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(n0(2, 5).enumerate(20), vec![2, 7, 12, 17]);
        assert_eq!(z(0, 3).enumerate(10), vec![3, 6, 9]);
        assert!(n0(7, 10).enumerate(5).is_empty());
        assert_eq!(n0(0, 4).enumerate(9), vec![4, 8]);
    }

    #[test]
    fn canonical_form_and_membership() {
        assert_eq!(z(-1, 4), z(3, 4));
        assert!(z(-1, 4).contains(-1));
        assert!(!n0(5, 3).contains(2));
        assert!(n0(5, 3).contains(8));
        assert!(Progression::nonneg(1, 0).is_err());
    }

    #[test]
    fn crt_overflow_is_reported() {
        let big = sys(&[z(0, (1 << 40) + 1), z(1, (1 << 40) - 1)]);
        assert!(matches!(big.intersect(), Err(Error::Overflow(_))));
    }

    fn arb_progression() -> impl Strategy<Value = Progression> {
        (0u64..40, 1u64..=30, any::<bool>()).prop_map(|(a, b, nn)| {
            if nn {
                n0(a, b)
            } else {
                z(a as i64, b)
            }
        })
    }

    proptest! {
        #[test]
        fn consistency_matches_brute_force(ps in prop::collection::vec(arb_progression(), 1..=4)) {
            let s = sys(&ps);
            let l = ps.iter().try_fold(1u64, |acc, p| lcm(acc, p.b)).unwrap();
            let max_off = ps.iter().map(|p| p.a as u64).max().unwrap();
            let found = (1..=(2 * l + max_off) as i128).any(|x| s.contains(x));
            prop_assert_eq!(s.crt_consistent().unwrap(), found);
            if let Some(c) = s.intersect().unwrap() {
                for x in 1..=(3 * l) as i128 {
                    let brute = ps.iter().all(|p| p.canonical().contains(x));
                    prop_assert_eq!(c.contains(x), brute);
                }
            }
            let brute_least = (1..=(2 * l + max_off)).find(|&x| s.contains(x as i128));
            prop_assert_eq!(s.least_element().unwrap(), brute_least);
        }

        #[test]
        fn intersect_is_order_independent(mut ps in prop::collection::vec(arb_progression(), 1..=4), seed in any::<u64>()) {
            let before = sys(&ps).intersect().unwrap();
            let k = ps.len();
            ps.rotate_left((seed as usize) % k);
            ps.reverse();
            prop_assert_eq!(sys(&ps).intersect().unwrap(), before);
        }

        #[test]
        fn intersect_is_idempotent(a in -50i64..50, b in 1u64..=60) {
            let p = z(a, b);
            prop_assert_eq!(sys(&[p, p]).intersect().unwrap(), Some(p.canonical()));
        }
    }
}
