//! Computing `R_n(z)` by brute force and by orbit factorization, plus the
//! parallel engine both methods share.
//!
//! Each worker walks one contiguous lexicographic range with a private
//! histogram of run counts; histograms are merged after all workers finish,
//! so the result never depends on the worker count or on scheduling. The
//! orbit method is not asymptotically cheaper: it still visits all `n!`
//! permutations to filter the minimal ones, and saves only on accumulation
//! (`n!/2^m` terms) before one multiplication by `(1+z)^m`.

mod partition;
pub mod verify;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::action::{self, GeneratorSet};
use crate::error::{CapExceeded, Error, Result};
use crate::perm::{self, Permutation, MAX_N};
use crate::poly::RunPolynomial;

pub use partition::{partition_work, permutations, rank, unrank, LexIter, LexRange};

/// Environment variable that may lower (never raise) [`MAX_N`].
pub const MAX_N_ENV: &str = "RUNSLAB_MAX_N";

/// Practical cap for brute-force distributions.
pub const BRUTE_CAP: usize = 13;
/// Practical cap for the orbit method.
pub const ORBIT_CAP: usize = 13;
/// Practical cap for per-permutation verification suites.
pub const PER_PERMUTATION_CAP: usize = 8;
/// Practical cap for distribution-level verification suites.
pub const DISTRIBUTION_CAP: usize = 11;

/// `n!`, if it fits in a `u64` (`n <= 20`).
pub fn factorial(n: u32) -> Option<u64> {
    (1..=u64::from(n)).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

/// [`MAX_N`], lowered by `RUNSLAB_MAX_N` when that is set to a smaller
/// positive integer. Unparseable values are ignored.
pub fn hard_cap() -> usize {
    std::env::var(MAX_N_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .map_or(MAX_N, |v| v.min(MAX_N))
}

/// Whether practical caps apply or only the hard cap.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum CapPolicy {
    #[default]
    Practical,
    Force,
}

pub fn check_cap(what: &'static str, n: usize, practical: usize, policy: CapPolicy) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    let hard = hard_cap();
    let cap = match policy {
        CapPolicy::Practical => practical.min(hard),
        CapPolicy::Force => hard,
    };
    if n > cap {
        return Err(Error::CapExceeded(CapExceeded {
            what,
            n,
            cap,
            forced: policy == CapPolicy::Force,
        }));
    }
    Ok(())
}

/// Worker count and cap policy for an enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    pub workers: usize,
    pub caps: CapPolicy,
}

impl EnumOptions {
    pub fn new(workers: usize) -> Self {
        EnumOptions {
            workers: workers.max(1),
            caps: CapPolicy::Practical,
        }
    }

    pub fn forced(mut self) -> Self {
        self.caps = CapPolicy::Force;
        self
    }
}

impl Default for EnumOptions {
    fn default() -> Self {
        Self::new(default_workers())
    }
}

/// Available hardware parallelism, at least 1.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Brute,
    Orbit,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Orbit => "orbit",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "brute" => Ok(Method::Brute),
            "orbit" => Ok(Method::Orbit),
            other => Err(format!(
                "unknown method {other:?} (expected brute or orbit)"
            )),
        }
    }
}

/// A computed `R_n(z)` with its factorization data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionResult {
    pub n: usize,
    pub m: usize,
    pub polynomial: RunPolynomial,
    pub method: Method,
    /// `R_n / (1+z)^m`, present for `n >= 4` when the division is exact.
    pub quotient: Option<RunPolynomial>,
    pub multiplicity_at_minus_one: u32,
    pub elapsed: Duration,
    pub workers: usize,
}

/// Runs `job` on every range, on a pool of `workers` threads. Results come
/// back in range order regardless of scheduling.
pub(crate) fn run_ranges<T, F>(ranges: &[LexRange], workers: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(&LexRange) -> T + Sync + Send,
{
    if workers <= 1 || ranges.len() <= 1 {
        return ranges.iter().map(job).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| ranges.par_iter().map(&job).collect()),
        Err(_) => ranges.iter().map(job).collect(),
    }
}

type Histogram = [u64; MAX_N + 1];

fn histogram_to_poly(parts: Vec<Histogram>) -> Result<RunPolynomial> {
    parts
        .iter()
        .map(|h| RunPolynomial::from_counts(h))
        .try_fold(RunPolynomial::zero(), |acc, p| acc.merge(&p))
}

/// `R_n(z)` by visiting all `n!` permutations.
pub fn distribution_bruteforce(n: usize, workers: usize) -> Result<DistributionResult> {
    distribution_bruteforce_with(n, EnumOptions::new(workers))
}

pub fn distribution_bruteforce_with(n: usize, opts: EnumOptions) -> Result<DistributionResult> {
    check_cap("brute-force enumeration", n, BRUTE_CAP, opts.caps)?;
    let started = Instant::now();
    let ranges = partition_work(n, opts.workers)?;
    let parts = run_ranges(&ranges, opts.workers, |range| {
        let mut h: Histogram = [0; MAX_N + 1];
        for p in range.iter() {
            h[perm::count_runs(p.entries()) as usize] += 1;
        }
        h
    });
    let polynomial = histogram_to_poly(parts)?;
    finish(n, Method::Brute, polynomial, None, started, opts.workers)
}

/// The minimal orbit representatives of length `n`, in lexicographic order.
pub fn minimal_representatives(n: usize) -> Result<impl Iterator<Item = Permutation>> {
    minimal_representatives_with(n, CapPolicy::Practical)
}

pub fn minimal_representatives_with(
    n: usize,
    caps: CapPolicy,
) -> Result<impl Iterator<Item = Permutation>> {
    check_cap("minimal-representative enumeration", n, ORBIT_CAP, caps)?;
    Ok(permutations(n)?.filter(action::is_minimal))
}

/// `R_n(z) = (1+z)^m * sum over minimal q of z^run(q)`.
pub fn distribution_via_orbits(n: usize, workers: usize) -> Result<DistributionResult> {
    distribution_via_orbits_with(n, EnumOptions::new(workers))
}

pub fn distribution_via_orbits_with(n: usize, opts: EnumOptions) -> Result<DistributionResult> {
    check_cap("orbit enumeration", n, ORBIT_CAP, opts.caps)?;
    let started = Instant::now();
    let m = GeneratorSet::new(n)?.m();
    let ranges = partition_work(n, opts.workers)?;
    let parts = run_ranges(&ranges, opts.workers, |range| {
        let mut h: Histogram = [0; MAX_N + 1];
        for p in range.iter().filter(action::is_minimal) {
            h[perm::count_runs(p.entries()) as usize] += 1;
        }
        h
    });
    let quotient = histogram_to_poly(parts)?;
    let polynomial = quotient.mul_binomial_power(m as u32)?;
    finish(
        n,
        Method::Orbit,
        polynomial,
        Some(quotient),
        started,
        opts.workers,
    )
}

fn finish(
    n: usize,
    method: Method,
    polynomial: RunPolynomial,
    quotient: Option<RunPolynomial>,
    started: Instant,
    workers: usize,
) -> Result<DistributionResult> {
    let m = GeneratorSet::new(n)?.m();
    let total = i128::from(factorial(n as u32).expect("n <= 20"));
    if polynomial.coefficient_sum()? != total {
        return Err(Error::Invariant(format!(
            "R_{n} has coefficient sum {}, expected {n}! = {total}",
            polynomial.coefficient_sum()?
        )));
    }
    let multiplicity_at_minus_one = polynomial.multiplicity_at_minus_one()?;
    let quotient = if n >= 4 {
        match quotient {
            Some(q) => Some(q),
            None => polynomial.div_binomial_power(m as u32).ok(),
        }
    } else {
        None
    };
    Ok(DistributionResult {
        n,
        m,
        polynomial,
        method,
        quotient,
        multiplicity_at_minus_one,
        elapsed: started.elapsed(),
        workers,
    })
}
