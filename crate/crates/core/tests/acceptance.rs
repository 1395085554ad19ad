//! Acceptance criteria, each checked against an independent brute-force oracle.
//!
//! Prints one PASS/FAIL line per criterion and exits nonzero if any fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use golomb::homeo::{self, BijectionWindow, Status};
use golomb::maps::{self, IntPolynomial, PolyVerdict, ProgressiveFunction};
use golomb::progression::{Progression, ProgressionSystem};
use golomb::special_sets;
use golomb::topology::{closure, in_closure_oracle, BasicOpen};
use golomb::arith;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0;
const CLOSURE_TIME_LIMIT: Duration = Duration::from_secs(60);
const X8_TIME_LIMIT: Duration = Duration::from_secs(120);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

// Independent oracles.

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn prime_by_trial(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn pow_by_repetition(base: u64, exp: u64, m: u64) -> u64 {
    let b = (base % m) as u128;
    (0..exp).fold(1 % m as u128, |acc, _| acc * b % m as u128) as u64
}

fn dagger_by_division(mut x: u64, y: u64) -> u64 {
    loop {
        let g = gcd(x, y);
        if g == 1 {
            return x;
        }
        x /= g;
    }
}

fn progressive_by_definition(values: &[u64]) -> bool {
    let n = values.len();
    (1..=n as u64).all(|x| {
        let fx = values[x as usize - 1];
        (2..=x).filter(|&p| x % p == 0 && prime_by_trial(p)).all(|p| fx % p == 0)
    }) && (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let m = dagger_by_division((j - i) as u64, values[i]) as i128;
            (values[j] as i128 - values[i] as i128) % m == 0
        })
    })
}

fn eval_poly(c: &[i64], x: u64) -> i128 {
    c.iter().rev().fold(0i128, |acc, &a| acc * x as i128 + a as i128)
}

// Criteria.

fn closure_formula() -> Outcome {
    let start = Instant::now();
    let (mut checks, mut mismatches) = (0u64, 0u64);
    for b in 1..=30u64 {
        for a in (1..=b).filter(|&a| gcd(a, b) == 1 && (a < b || b == 1)) {
            let u = BasicOpen::new(a, b).unwrap();
            let cl = closure(&u);
            for x in 1..=2000 {
                checks += 1;
                if cl.contains(x) != in_closure_oracle(x, &u, b).unwrap() {
                    mismatches += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches == 0 && elapsed <= CLOSURE_TIME_LIMIT,
        format!(
            "{mismatches} mismatches in {checks} checks, {:.1} s (limit {} s)",
            elapsed.as_secs_f64(),
            CLOSURE_TIME_LIMIT.as_secs()
        ),
    )
}

fn crt_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut mismatches = Vec::new();
    let systems = 10_000;
    for _ in 0..systems {
        let k = rng.gen_range(1..=4);
        let constraints: Vec<Progression> = (0..k)
            .map(|_| {
                let m = rng.gen_range(1..=30u64);
                if rng.gen_bool(0.5) {
                    Progression::nonneg(rng.gen_range(0..3 * m), m).unwrap()
                } else {
                    Progression::int(rng.gen_range(-(m as i64)..m as i64), m).unwrap()
                }
            })
            .collect();
        let period = constraints.iter().fold(1u64, |l, c| l / gcd(l, c.b) * c.b);
        let residue_ok = |t: u64| {
            constraints
                .iter()
                .all(|c| (t as i128 - c.a as i128).rem_euclid(c.b as i128) == 0)
        };
        let (step, start) = constraints
            .iter()
            .max_by_key(|c| c.b)
            .map(|c| (c.b, (c.a as i128).rem_euclid(c.b as i128) as u64))
            .unwrap();
        let brute: Vec<u64> = (0..)
            .map(|i| start + i * step)
            .take_while(|&t| t < 3 * period)
            .filter(|&t| residue_ok(t))
            .collect();

        let sys = ProgressionSystem::new(constraints.clone());
        let consistent = sys.crt_consistent().unwrap();
        let meet = sys.intersect().unwrap();
        let expected: Vec<u64> = match meet {
            Some(p) if p.b == period => (0..3).map(|i| p.a as u64 + i * period).collect(),
            Some(_) => vec![u64::MAX],
            None => Vec::new(),
        };
        let lower = constraints
            .iter()
            .filter(|c| c.carrier == golomb::progression::Carrier::N0)
            .map(|c| c.a as u64)
            .max()
            .unwrap_or(0)
            .max(1);
        let least_brute = (0..)
            .map(|i| start + i * step)
            .take_while(|&t| t < lower + 3 * period)
            .find(|&t| t >= lower && residue_ok(t));
        if consistent != !brute.is_empty()
            || expected != brute
            || sys.least_element().unwrap() != least_brute
        {
            mismatches.push(format!("{constraints:?}"));
        }
    }
    outcome(
        mismatches.is_empty(),
        format!(
            "{} mismatches over {systems} random systems (seed {SEED}){}",
            mismatches.len(),
            mismatches.first().map(|m| format!(", first {m}")).unwrap_or_default()
        ),
    )
}

fn dirichlet_density() -> Outcome {
    let (mut pairs, mut failures) = (0, Vec::new());
    for b in 1..=50u64 {
        for a in (1..=50u64).filter(|&a| gcd(a, b) == 1) {
            pairs += 1;
            let ok = match arith::least_prime_in_progression(a, b, 1_000_000) {
                Ok(Some(p)) => p >= a && (p - a) % b == 0 && prime_by_trial(p),
                _ => false,
            };
            if !ok {
                failures.push((a, b));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{}/{pairs} coprime pairs found a prime within 10^6", pairs - failures.len()),
    )
}

fn check_split(c: &[i64], w: &maps::SplitWitness) -> bool {
    let p = w.p;
    let a0 = c[0];
    let fx = eval_poly(c, w.x);
    if !prime_by_trial(p)
        || fx != w.fx as i128
        || fx == a0 as i128
        || p <= w.x
        || (fx - a0 as i128).rem_euclid(p as i128) == 0
    {
        return false;
    }
    // f(kp) ≡ a0 and f(x + kp) ≡ f(x) (mod p), so the two images sit in distinct classes.
    (1..=20u64).all(|k| {
        (eval_poly(c, k * p) - a0 as i128).rem_euclid(p as i128) == 0
            && (eval_poly(c, w.x + (k - 1) * p) - fx).rem_euclid(p as i128) == 0
            && (a0 as i128).rem_euclid(p as i128) != 0
            && fx.rem_euclid(p as i128) != 0
    })
}

fn polynomial_dichotomy() -> Outcome {
    let (mut classified, mut certificates, mut splits) = (0u64, 0u64, 0u64);
    let mut errors = Vec::new();
    let range = -10i64..=10;
    for a4 in range.clone() {
        for a3 in range.clone() {
            for a2 in range.clone() {
                for a1 in range.clone() {
                    if (a1, a2, a3, a4) == (0, 0, 0, 0) {
                        continue;
                    }
                    for a0 in range.clone() {
                        let c = [a0, a1, a2, a3, a4];
                        if !(1..=100).all(|x| eval_poly(&c, x) >= 1) {
                            continue;
                        }
                        classified += 1;
                        let p = IntPolynomial::new(c.to_vec());
                        match (a0, maps::polynomial_continuity(&p, 100)) {
                            (0, Ok(PolyVerdict::ContinuousA0Zero)) => {
                                for x in 1..=50u64 {
                                    let fx = eval_poly(&c, x) as u128;
                                    for b in (1..=50u64).filter(|&b| gcd((fx % b as u128) as u64, b) == 1) {
                                        certificates += 1;
                                        let ok = maps::continuity_certificate(&p, x, b, x + 10 * b)
                                            .is_ok_and(|cert| cert.fx == fx && cert.d == b);
                                        if !ok {
                                            errors.push(format!("{c:?} at x = {x}, b = {b}"));
                                        }
                                    }
                                }
                            }
                            (a0, Ok(PolyVerdict::Discontinuous { witness })) if a0 != 0 => {
                                splits += 1;
                                if !check_split(&c, &witness) {
                                    errors.push(format!("{c:?}: split witness fails"));
                                }
                            }
                            (_, other) => errors.push(format!("{c:?}: {other:?}")),
                        }
                    }
                }
            }
        }
    }
    outcome(
        errors.is_empty(),
        format!(
            "{classified} polynomials, {certificates} certificates, {splits} splits, {} errors{}",
            errors.len(),
            errors.first().map(|e| format!(", first {e}")).unwrap_or_default()
        ),
    )
}

fn half_square() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for b in (1..=999u64).step_by(2) {
        count += 1;
        let ok = maps::half_square_discontinuity_witness(b).is_ok_and(|w| {
            let image = w.point * (w.point + 1) / 2;
            w.point >= 2 && (w.point - 2) % b == 0 && image == w.image && image % 2 == 0
        });
        if !ok {
            bad.push(b);
        }
    }
    outcome(bad.is_empty(), format!("{}/{count} odd b verified", count - bad.len()))
}

fn x8_non_closed() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut count = 0;
    for b in (3..=100_000u64).step_by(2) {
        count += 1;
        let ok = special_sets::closure_point_witness_x8(b)
            .is_ok_and(|w| w.x >= 16 && pow_by_repetition(w.x, 8, b) == 16 % b);
        if !ok {
            bad.push(b);
        }
    }
    let wang = special_sets::wang_no_integer_solution();
    let bracket = wang.bracket.1 == wang.bracket.0 + 1
        && wang.bracket.0.pow(8) < 16
        && 16 < wang.bracket.1.pow(8);
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && bracket && elapsed <= X8_TIME_LIMIT,
        format!(
            "{}/{count} odd b verified, 16 not an eighth power ({}^8 < 16 < {}^8), {:.1} s (limit {} s)",
            count - bad.len(),
            wang.bracket.0,
            wang.bracket.1,
            elapsed.as_secs_f64(),
            X8_TIME_LIMIT.as_secs()
        ),
    )
}

fn hensel_correctness() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for p in (3..=100u64).filter(|&p| prime_by_trial(p)) {
        for k in 1..=5u32 {
            let Some(m) = p.checked_pow(k) else { continue };
            count += 1;
            let ok = special_sets::hensel_lift(p, k).is_ok_and(|r| r < m && pow_by_repetition(r, 8, m) == 16 % m);
            if !ok {
                bad.push((p, k));
            }
        }
    }
    outcome(bad.is_empty(), format!("{}/{count} lifts satisfy x^8 = 16 mod p^k", count - bad.len()))
}

fn frobenius_certificates() -> Outcome {
    const WINDOW: u64 = 1_000_000;
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 0..=10u64 {
        let members: Vec<u64> = (1..).map(|x| x * x + n * x).take_while(|&z| z <= WINDOW).collect();
        let member_set: HashSet<u64> = members.iter().copied().collect();
        for a in (1..=200u64).filter(|a| !member_set.contains(a)) {
            count += 1;
            let ok = special_sets::frob_closedness_certificate(n, a, 10_000, WINDOW).is_ok_and(|c| {
                let rootless = (0..c.p).all(|r| (r * r + n * r) % c.p != a % c.p);
                let disjoint = members.iter().all(|&z| z < a || (z - a) % c.p != 0);
                c.p > a && c.p <= 10_000 && prime_by_trial(c.p) && rootless && disjoint
            });
            if !ok {
                bad.push((n, a));
            }
        }
    }
    outcome(bad.is_empty(), format!("{}/{count} non-members certified on [1, 10^6]", count - bad.len()))
}

fn disjoint_family() -> Outcome {
    const WINDOW: u64 = 10_000_000;
    let mut problems = Vec::new();
    let mut members = Vec::new();
    for n in 1..=5u64 {
        let m = special_sets::disjoint_family_member(n).unwrap();
        let p = (n * n + n + 1..).find(|&q| prime_by_trial(q)).unwrap();
        if m.p != p {
            problems.push(format!("p_{n} = {} expected {p}", m.p));
        }
        for x in 1..=100_000u64 {
            let by_formula = m.preimage_contains(x);
            let direct = (x * x + n * x) % p == 0;
            if by_formula != direct {
                problems.push(format!("preimage of X_{n} disagrees at {x}"));
                break;
            }
        }
        let set: HashSet<u64> = (1..)
            .map(|x| x * x + n * x)
            .take_while(|&z| z <= WINDOW)
            .filter(|z| z % p == 0)
            .collect();
        members.push(set);
    }
    for i in 0..5 {
        for j in i + 1..5 {
            let common = members[i].intersection(&members[j]).count();
            let report = special_sets::verify_family_disjoint(i as u64 + 1, j as u64 + 1, WINDOW).unwrap();
            if common != 0 || !report.disjoint {
                problems.push(format!("X_{} and X_{} share {common} points", i + 1, j + 1));
            }
        }
    }
    outcome(
        problems.is_empty(),
        format!("{} violations (10 pairs on [1, 10^7], preimages on [1, 10^5])", problems.len()),
    )
}

fn continuum_tree() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    let prefixes = 100;
    for _ in 0..prefixes {
        let depth = rng.gen_range(1..=8usize);
        let mut values = vec![rng.gen_range(1..=20u64)];
        while values.len() < depth {
            let f = ProgressiveFunction::new(values.clone()).unwrap();
            let next = maps::enumerate_successors(&f, 3).unwrap();
            values.push(next[rng.gen_range(0..next.len())]);
        }
        let f = ProgressiveFunction::new(values.clone()).unwrap();
        let n = values.len() as u64;
        let mods: Vec<u64> = values
            .iter()
            .enumerate()
            .map(|(i, &fk)| dagger_by_division(n - i as u64, fk))
            .collect();
        let cond1 = (2..=n + 1)
            .filter(|&p| (n + 1) % p == 0 && prime_by_trial(p))
            .all(|p| mods.iter().zip(&values).all(|(&m, &fk)| fk % gcd(p, m) == 0));
        let cond2 = (0..mods.len()).all(|k| {
            (k + 1..mods.len())
                .all(|l| (values[l] as i128 - values[k] as i128) % gcd(mods[k], mods[l]) as i128 == 0)
        });
        let ok = cond1
            && cond2
            && maps::successor_conditions(&f).is_ok()
            && maps::enumerate_successors(&f, 10).is_ok_and(|succ| {
                succ.len() >= 10
                    && succ.iter().all(|&g| {
                        let mut ext = values.clone();
                        ext.push(g);
                        g > *values.last().unwrap()
                            && maps::is_progressive(&ext).is_ok()
                            && progressive_by_definition(&ext)
                    })
            });
        if !ok {
            failures.push(values);
        }
    }
    outcome(
        failures.is_empty(),
        format!("{}/{prefixes} random prefixes extend by 10 verified successors (seed {SEED})", prefixes - failures.len()),
    )
}

fn homeomorphism_filter() -> Outcome {
    let mut problems = Vec::new();
    let id = homeo::run_all_checks(&BijectionWindow::identity(1000));
    if !id.all_pass || !id.items().iter().all(|v| v.status == Status::Pass) {
        problems.push("identity does not pass every item");
    }
    let swap = homeo::run_all_checks(&BijectionWindow::transposition(1000, 2, 3).unwrap());
    let item3 = &swap.prime_divisor_equivariance;
    if item3.status != Status::Fail || item3.first_violation().map(|v| v.x) != Some(4) {
        problems.push("2-3 transposition does not fail item (3) at x = 4");
    }
    if swap.fixed_one.status != Status::Pass || swap.primes_preserved.status != Status::Pass {
        problems.push("2-3 transposition fails items (1) or (2)");
    }
    let mult = homeo::run_all_checks(&BijectionWindow::multiplicative_swap(1000, 2, 3).unwrap());
    if !mult.items().iter().all(|v| v.status == Status::Pass) || !mult.all_pass {
        problems.push("multiplicative 2-3 swap does not pass all four items");
    }
    if !mult.note.contains("necessary conditions only") {
        problems.push("report is not flagged as necessary only");
    }
    outcome(
        problems.is_empty(),
        if problems.is_empty() {
            "identity passes, transposition fails item (3) at 4, multiplicative swap passes (necessary only)".to_string()
        } else {
            problems.join("; ")
        },
    )
}

fn brunault() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = Vec::new();
    let trials = 20;
    for _ in 0..trials {
        let b = [2u64, 3, 5][rng.gen_range(0..3)];
        let a = loop {
            let a = rng.gen_range(2..=100u64);
            if !(1..=a).any(|r| r.pow(b as u32) == a) {
                break a;
            }
        };
        let ok = homeo::brunault_primes(a, b, 5, 100_000).is_ok_and(|ps| {
            ps.len() == 5
                && ps.iter().all(|&p| {
                    prime_by_trial(p)
                        && p <= 100_000
                        && p % b == 1
                        && a % p != 0
                        && pow_by_repetition(a, (p - 1) / b, p) != 1
                })
        });
        if !ok {
            bad.push((a, b));
        }
    }
    outcome(bad.is_empty(), format!("{}/{trials} random (a, b) yield 5 verified primes (seed {SEED})", trials - bad.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("closure formula matches oracle", closure_formula),
        ("CRT soundness", crt_soundness),
        ("primes in progressions", dirichlet_density),
        ("polynomial continuity dichotomy", polynomial_dichotomy),
        ("x(x+1)/2 discontinuity", half_square),
        ("eighth powers not closed", x8_non_closed),
        ("Hensel lifting", hensel_correctness),
        ("closedness of x^2 + nx", frobenius_certificates),
        ("disjoint superconnected family", disjoint_family),
        ("continuum tree", continuum_tree),
        ("homeomorphism filter", homeomorphism_filter),
        ("Brunault primes", brunault),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        if !result.pass {
            failed += 1;
        }
        println!(
            "criterion {:2} [{}] {name}: {} ({:.1} s)",
            i + 1,
            if result.pass { "PASS" } else { "FAIL" },
            result.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {}/12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
