//! Command-line front end: one subcommand per operation, JSON or text output.
//!
//! Exit status: 0 success, 2 precondition violation or bad input,
//! 3 search bound or window exhausted, 1 internal error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homeo::{self, BijectionWindow};
use crate::maps::{self, IntPolynomial, ProgressiveFunction};
use crate::progression::{Progression, ProgressionSystem};
use crate::special_sets;
use crate::topology::{self, BasicOpen};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "golomb", version, about = "Computations in the Golomb topology on the positive integers")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,

    /// Seed for randomized drivers; every subcommand here is deterministic.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closure of the basic open a+bN0, or membership of --query in it
    Closure {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        query: Option<u64>,
    },
    /// Membership of x in a+bN0 and in its closure
    Member {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        x: u64,
    },
    /// Intersection of progressions such as 3+5N0 or -1+4Z
    Intersect {
        #[arg(required = true, allow_hyphen_values = true)]
        progressions: Vec<Progression>,
    },
    /// Least positive element of an intersection of progressions
    Least {
        #[arg(required = true, allow_hyphen_values = true)]
        progressions: Vec<Progression>,
    },
    /// Least prime in a+bN0
    PrimesIn {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long, default_value_t = 1_000_000)]
        bound: u64,
    },
    /// Common point of X = union of pieces and the closures of opens meeting X
    Superconnect {
        #[arg(long = "piece", required = true)]
        pieces: Vec<Progression>,
        #[arg(long = "open", required = true)]
        opens: Vec<Progression>,
        #[arg(long)]
        window: Option<u64>,
    },
    /// Neighborhoods of x and y whose closures meet exactly in qN
    Special1 {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        window: Option<u64>,
    },
    /// Neighborhood x+b^nN0 of a prime x whose closure keeps primes inside x+bN0
    RegularNbhd {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        window: Option<u64>,
    },
    /// Point showing a+bN0 is not regular at a
    Nonregular {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        c: u64,
        #[arg(long, default_value_t = topology::MAX_DEFAULT_WINDOW)]
        window: u64,
    },
    /// Progressivity of the table f(1), ..., f(n)
    Progressive {
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<u64>,
    },
    /// Successors of a strictly increasing progressive table
    Successors {
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<u64>,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Continuity of an integer polynomial (coefficients in ascending degree)
    PolyCont {
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        coeffs: Vec<i64>,
        /// Positivity is checked on [1, window]
        #[arg(long, default_value_t = 100)]
        window: u64,
        /// With --b, also certify continuity at this point
        #[arg(long, requires = "b")]
        x: Option<u64>,
        #[arg(long, requires = "x")]
        b: Option<u64>,
        #[arg(long, default_value_t = 100_000)]
        cert_window: u64,
    },
    /// Discontinuity of x(x+1)/2 at 2 against the neighborhood 2+bN0
    HalfSquare {
        #[arg(long)]
        b: u64,
    },
    /// Prime certifying that a lies outside the closed set {x^2 + nx}
    Frob {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        a: u64,
        #[arg(long, default_value_t = 10_000)]
        prime_bound: u64,
        #[arg(long, default_value_t = 1_000_000)]
        window: u64,
    },
    /// Member X_n of the disjoint family, or disjointness of X_n and X_m
    Family {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, default_value_t = 1_000_000)]
        window: u64,
    },
    /// Root of x^8 = 16 modulo p^k
    Hensel {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Point x >= 16 with x^8 in 16+bN0
    X8Witness {
        #[arg(long)]
        b: u64,
    },
    /// Necessary-condition filter on a candidate homeomorphism window
    HomeoCheck {
        /// JSON {"n": N, "map": [...]} or CSV rows x,h(x)
        #[arg(long)]
        file: PathBuf,
    },
    /// Primes p = 1 mod b with a^((p-1)/b) != 1 mod p
    Brunault {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, default_value_t = 100_000)]
        bound: u64,
    },
}

fn to_value(payload: impl Serialize) -> Result<Value> {
    serde_json::to_value(payload).map_err(|e| Error::InternalInvariant(format!("serialize: {e}")))
}

fn basic_open(p: &Progression) -> Result<BasicOpen> {
    match p.carrier {
        crate::progression::Carrier::N0 => BasicOpen::new(p.a as u64, p.b),
        crate::progression::Carrier::Z => Err(Error::Invalid(format!("open {p} must be of the form a+bN0"))),
    }
}

/// Runs one subcommand and returns its JSON payload.
pub fn dispatch(command: &Command) -> Result<Value> {
    match command {
        Command::Closure { a, b, query } => {
            let u = BasicOpen::new(*a, *b)?;
            let cl = topology::closure(&u);
            match query {
                Some(x) => Ok(json!({ "in_closure": cl.contains(*x) })),
                None => Ok(json!({ "open": u.progression().to_string(), "closure": to_value(&cl)? })),
            }
        }
        Command::Member { a, b, x } => {
            let u = BasicOpen::new(*a, *b)?;
            Ok(json!({
                "x": x,
                "open": u.progression().to_string(),
                "in_open": u.contains(*x),
                "in_closure": topology::closure(&u).contains(*x),
            }))
        }
        Command::Intersect { progressions } => {
            let sys = ProgressionSystem::new(progressions.clone());
            let meet = sys.intersect()?;
            Ok(json!({
                "consistent": meet.is_some(),
                "intersection": meet.map(|p| p.to_string()),
            }))
        }
        Command::Least { progressions } => {
            let least = ProgressionSystem::new(progressions.clone()).least_element()?;
            Ok(json!({ "least": least }))
        }
        Command::PrimesIn { a, b, bound } => {
            let p = crate::arith::least_prime_in_progression(*a, *b, *bound)?.ok_or_else(|| {
                Error::NotFoundWithinBound {
                    what: format!("prime in {a}+{b}N0"),
                    bound: *bound,
                }
            })?;
            Ok(json!({ "prime": p }))
        }
        Command::Superconnect {
            pieces,
            opens,
            window,
        } => {
            let opens: Vec<BasicOpen> = opens.iter().map(basic_open).collect::<Result<_>>()?;
            let moduli: Vec<u64> = pieces.iter().map(|p| p.b).chain(opens.iter().map(|u| u.b)).collect();
            let window = window.unwrap_or_else(|| topology::default_window(&moduli));
            to_value(topology::superconnected_witness(pieces, &opens, window)?)
        }
        Command::Special1 { x, y, q, window } => to_value(topology::special1_witness(*x, *y, *q, *window)?),
        Command::RegularNbhd { x, b, window } => {
            to_value(topology::regular_neighborhood_for_prime(*x, *b, *window)?)
        }
        Command::Nonregular { a, b, q, c, window } => {
            to_value(topology::nonregularity_witness(*a, *b, *q, *c, *window)?)
        }
        Command::Progressive { values } => {
            let progressive = maps::is_progressive(values);
            let tree = maps::is_tree_node(values);
            Ok(json!({
                "progressive": progressive.is_ok(),
                "tree_node": tree.is_ok(),
                "violation": to_value(progressive.err().or(tree.err()))?,
            }))
        }
        Command::Successors { values, count } => {
            let f = ProgressiveFunction::new(values.clone())?;
            let class = ProgressionSystem::new(maps::successor_constraints(&f)?).intersect()?;
            Ok(json!({
                "class": class.map(|p| p.to_string()),
                "successors": maps::enumerate_successors(&f, *count)?,
            }))
        }
        Command::PolyCont {
            coeffs,
            window,
            x,
            b,
            cert_window,
        } => {
            let p = IntPolynomial::new(coeffs.clone());
            let verdict = maps::polynomial_continuity(&p, *window)?;
            let certificate = match (x, b) {
                (Some(x), Some(b)) => Some(maps::continuity_certificate(&p, *x, *b, *cert_window)?),
                _ => None,
            };
            Ok(json!({
                "polynomial": p.coefficients(),
                "verdict": to_value(verdict)?,
                "certificate": to_value(certificate)?,
            }))
        }
        Command::HalfSquare { b } => to_value(maps::half_square_discontinuity_witness(*b)?),
        Command::Frob {
            n,
            a,
            prime_bound,
            window,
        } => to_value(special_sets::frob_closedness_certificate(*n, *a, *prime_bound, *window)?),
        Command::Family { n, m, window } => match m {
            Some(m) => to_value(special_sets::verify_family_disjoint(*n, *m, *window)?),
            None => {
                let member = special_sets::disjoint_family_member(*n)?;
                Ok(json!({
                    "n": member.n,
                    "p": member.p,
                    "preimage": member.preimage.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                    "members": member.members(*window).into_iter().take(10).collect::<Vec<_>>(),
                }))
            }
        },
        Command::Hensel { p, k } => {
            let root = special_sets::hensel_lift(*p, *k)?;
            Ok(json!({
                "p": p,
                "k": k,
                "modulus": crate::arith::checked_pow(*p, *k)?,
                "root": root,
            }))
        }
        Command::X8Witness { b } => to_value(special_sets::closure_point_witness_x8(*b)?),
        Command::HomeoCheck { file } => to_value(homeo::run_all_checks(&BijectionWindow::load(file)?)),
        Command::Brunault { a, b, count, bound } => {
            Ok(json!({ "primes": homeo::brunault_primes(*a, *b, *count, *bound)? }))
        }
    }
}

fn render_text(value: &Value, prefix: &str, out: &mut String) {
    let scalar = |v: &Value| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                render_text(v, &key, out);
            }
        }
        Value::Array(items) if items.iter().all(|v| !v.is_object() && !v.is_array()) => {
            let joined: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{prefix}: [{}]\n", joined.join(", ")));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                render_text(v, &format!("{prefix}[{i}]"), out);
            }
        }
        other => out.push_str(&format!("{prefix}: {}\n", scalar(other))),
    }
}

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{value}\n"),
        Format::Text => {
            let mut out = String::new();
            render_text(value, "", &mut out);
            out
        }
    }
}

/// Parses `args`, runs the command, prints the payload, and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli.command) {
        Ok(value) => {
            print!("{}", render(&value, cli.format));
            0
        }
        Err(e) => {
            match cli.format {
                Format::Json => eprintln!("{}", json!({ "error": e.to_string(), "exit_code": e.exit_code() })),
                Format::Text => eprintln!("error: {e}"),
            }
            e.exit_code()
        }
    }
}
