//! The integer tables `f_n`, `g_n` on `{2, …, n}` and the Möbius function.
//!
//! `f_n` is the unique table with `Σ_{r | i, i ≤ n} f_n(i) = −1` for every
//! `2 ≤ r ≤ n`; `g_n` is the unique table with `g_n(n) = 1` and
//! `Σ_{r | i, i ≤ n} g_n(i) = 0` for every `2 ≤ r < n`. Both are solved by
//! downward recursion on `r`, since the sum for `r` only involves `r` and its
//! proper multiples.

use std::fmt;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};

/// Table `i ↦ value` on the domain `{2, …, n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    n: u64,
    values: Vec<i64>,
}

impl CoefficientTable {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Value at `i`; zero outside `{2, …, n}`.
    pub fn get(&self, i: u64) -> i64 {
        if (2..=self.n).contains(&i) {
            self.values[(i - 2) as usize]
        } else {
            0
        }
    }

    /// `(i, value)` for every `i` in the domain.
    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.values.iter().enumerate().map(|(k, &v)| (k as u64 + 2, v))
    }

    /// The `i` with nonzero value, increasing.
    pub fn support(&self) -> Vec<u64> {
        self.iter().filter(|&(_, v)| v != 0).map(|(i, _)| i).collect()
    }

    /// `Σ |value(i)|`, the number of chords a parallel band draws from this
    /// table.
    pub fn abs_sum(&self) -> u64 {
        self.values.iter().map(|v| v.unsigned_abs()).sum()
    }

    /// `Σ value(i)` over the multiples `i` of `r` with `r ≤ i ≤ n`.
    pub fn multiple_sum(&self, r: u64) -> i64 {
        (r..=self.n).step_by(r as usize).map(|i| self.get(i)).sum()
    }
}

/// Dump format: one `i <value>` line per domain element, then
/// `support <i1> <i2> ...`.
impl fmt::Display for CoefficientTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.iter() {
            writeln!(f, "{i} {v}")?;
        }
        f.write_str("support")?;
        for i in self.support() {
            write!(f, " {i}")?;
        }
        writeln!(f)
    }
}

/// Möbius function by trial division.
pub fn mobius(n: i64) -> Result<i64> {
    if n < 1 {
        return Err(Error::OutOfDomain(format!("mobius: n must be >= 1, got {n}")));
    }
    let mut n = n as u64;
    let mut mu = 1;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return Ok(0);
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    Ok(mu)
}

/// Mertens function `M(x) = Σ_{k ≤ x} μ(k)`.
pub fn mertens(x: u64) -> i64 {
    (1..=x as i64).map(|k| mobius(k).expect("k >= 1")).sum()
}

fn check_n(n: i64, what: &str) -> Result<u64> {
    if n < 2 {
        Err(Error::OutOfDomain(format!("{what}: n must be >= 2, got {n}")))
    } else {
        Ok(n as u64)
    }
}

/// Solves `Σ_{r | i, r ≤ i ≤ n} t(i) = rhs(r)` downward from `r = n`.
fn solve_downward(n: u64, rhs: impl Fn(u64) -> i64) -> CoefficientTable {
    let mut values = vec![0i64; (n - 1) as usize];
    for r in (2..=n).rev() {
        let above: i64 = (2 * r..=n).step_by(r as usize).map(|i| values[(i - 2) as usize]).sum();
        values[(r - 2) as usize] = rhs(r) - above;
    }
    CoefficientTable { n, values }
}

pub fn f_table(n: i64) -> Result<CoefficientTable> {
    let n = check_n(n, "f_table")?;
    Ok(solve_downward(n, |_| -1))
}

pub fn g_table(n: i64) -> Result<CoefficientTable> {
    let n = check_n(n, "g_table")?;
    Ok(solve_downward(n, |r| i64::from(r == n)))
}

/// First discrepancy found by [`verify_tables`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableViolation {
    /// `f_n` misses a defining sum.
    FSum { n: u64, r: u64, sum: i64 },
    /// `g_n` misses a defining sum (or `g_n(n) ≠ 1` when `r = n`).
    GSum { n: u64, r: u64, sum: i64 },
    /// `g_n(i)` differs from `μ(n/i)` (or 0 when `i ∤ n`).
    Mobius { n: u64, i: u64, table: i64, expected: i64 },
    /// `f_n(r)` differs from `−M(⌊n/r⌋)`.
    Mertens { n: u64, r: u64, table: i64, expected: i64 },
}

impl fmt::Display for TableViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TableViolation::FSum { n, r, sum } => {
                write!(f, "f_{n}: defining sum for r = {r} is {sum}, expected -1")
            }
            TableViolation::GSum { n, r, sum } => {
                write!(f, "g_{n}: defining sum for r = {r} is {sum}")
            }
            TableViolation::Mobius { n, i, table, expected } => {
                write!(f, "g_{n}({i}) = {table}, Möbius form gives {expected}")
            }
            TableViolation::Mertens { n, r, table, expected } => {
                write!(f, "f_{n}({r}) = {table}, Mertens form gives {expected}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableReport {
    pub n_max: u64,
    pub violation: Option<TableViolation>,
}

impl TableReport {
    pub fn is_ok(&self) -> bool {
        self.violation.is_none()
    }
}

fn verify_one(n: u64, mu: &[i64], mert: &[i64]) -> Option<TableViolation> {
    let f = solve_downward(n, |_| -1);
    let g = solve_downward(n, |r| i64::from(r == n));
    for r in 2..=n {
        let sum = f.multiple_sum(r);
        if sum != -1 {
            return Some(TableViolation::FSum { n, r, sum });
        }
        let sum = g.multiple_sum(r);
        if sum != i64::from(r == n) {
            return Some(TableViolation::GSum { n, r, sum });
        }
    }
    for i in 2..=n {
        let expected = if n.is_multiple_of(i) { mu[(n / i) as usize] } else { 0 };
        if g.get(i) != expected {
            return Some(TableViolation::Mobius {
                n,
                i,
                table: g.get(i),
                expected,
            });
        }
        let expected = -mert[(n / i) as usize];
        if f.get(i) != expected {
            return Some(TableViolation::Mertens {
                n,
                r: i,
                table: f.get(i),
                expected,
            });
        }
    }
    None
}

/// Checks, for every `2 ≤ n ≤ n_max`, the defining sums of `f_n` and `g_n`,
/// the Möbius form of `g_n` and the Mertens form `f_n(r) = −M(⌊n/r⌋)`.
/// The Mertens form is a derived identity, checked as a cross-check only.
pub fn verify_tables(n_max: i64) -> Result<TableReport> {
    verify_tables_with(n_max, Execution::default())
}

pub fn verify_tables_with(n_max: i64, exec: Execution) -> Result<TableReport> {
    let n_max = check_n(n_max, "verify_tables")?;
    let mu: Vec<i64> = std::iter::once(0)
        .chain((1..=n_max as i64).map(|k| mobius(k).expect("k >= 1")))
        .collect();
    let mert: Vec<i64> = mu
        .iter()
        .scan(0, |acc, &m| {
            *acc += m;
            Some(*acc)
        })
        .collect();
    let ns: Vec<u64> = (2..=n_max).collect();
    let violation = exec::find_first(exec, &ns, |&n| verify_one(n, &mu, &mert));
    Ok(TableReport { n_max, violation })
}
