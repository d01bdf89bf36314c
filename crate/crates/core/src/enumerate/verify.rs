//! Exhaustive checks of the structural claims behind the factorization of
//! `R_n(z)`.
//!
//! Per-permutation properties scan every permutation of each length in the
//! range; distribution-level properties compute `R_n` first. Scans are split
//! with [`partition_work`] and stop at the first counterexample of each
//! range; the reported witness is the one with the lowest lexicographic rank
//! among ranges that failed, so reports are reproducible for a fixed worker
//! count.

use std::fmt;
use std::str::FromStr;

use crate::action::{self, GeneratorOrder, GeneratorSet};
use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::{
    check_cap, distribution_bruteforce_with, distribution_via_orbits_with, factorial,
    partition_work, run_ranges, EnumOptions, DISTRIBUTION_CAP, PER_PERMUTATION_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    /// `|run(c_i(p)) - run(p)| = 1` for `3 <= i <= n-1`.
    RunDelta,
    /// `c_i c_j = c_j c_i` whenever `1 <= i <= j-2 <= n-2`.
    Commutativity,
    /// `c_i(c_j(p)) != p` for the same pairs.
    NonFixing,
    /// Orbits are free (`2^m` distinct members) and partition all `n!`
    /// permutations into `n!/2^m` classes.
    OrbitSize,
    /// For generators `i != j`, applying `c_j` first does not change the
    /// sign of `c_i`'s effect on the run count.
    Independence,
    /// Each orbit sums to `z^a (1+z)^m`, layered binomially, and the greedy
    /// pass (either order) lands on the orbit minimum.
    OrbitPolynomial,
    /// All coefficients of `R_n` are even, `n >= 2`.
    Evenness,
    /// `(1+z)^m` divides `R_n` exactly, `n >= 4`.
    Divisibility,
    /// Brute force and orbit factorization give the same `R_n`.
    OracleEquality,
}

impl Property {
    pub const ALL: [Property; 9] = [
        Property::RunDelta,
        Property::Commutativity,
        Property::NonFixing,
        Property::OrbitSize,
        Property::Independence,
        Property::OrbitPolynomial,
        Property::Evenness,
        Property::Divisibility,
        Property::OracleEquality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::RunDelta => "run-delta",
            Property::Commutativity => "commutativity",
            Property::NonFixing => "non-fixing",
            Property::OrbitSize => "orbit-size",
            Property::Independence => "independence",
            Property::OrbitPolynomial => "orbit-polynomial",
            Property::Evenness => "evenness",
            Property::Divisibility => "divisibility",
            Property::OracleEquality => "oracle-equality",
        }
    }

    /// Checked on every permutation rather than on `R_n` as a whole.
    pub fn is_per_permutation(self) -> bool {
        !matches!(
            self,
            Property::Evenness | Property::Divisibility | Property::OracleEquality
        )
    }

    /// Largest `n` run without an explicit override.
    pub fn practical_cap(self) -> usize {
        if self.is_per_permutation() {
            PER_PERMUTATION_CAP
        } else {
            DISTRIBUTION_CAP
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownProperty(s.to_owned()))
    }
}

/// First failing instance of a property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub n: usize,
    /// Absent for distribution-level failures.
    pub permutation: Option<Permutation>,
    pub detail: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.permutation {
            Some(p) => write!(f, "n={} p={p}: {}", self.n, self.detail),
            None => write!(f, "n={}: {}", self.n, self.detail),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub property: Property,
    pub n_min: usize,
    pub n_max: usize,
    /// Instances examined; see [`verify_property`] for what one instance is.
    pub checked: u64,
    pub counterexample: Option<Counterexample>,
    /// Per-n observations worth recording (multiplicities, skipped lengths).
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Runs one property over every `n` in `n_min..=n_max` with default options.
///
/// Instances counted in `checked`:
/// - run-delta: (permutation, position) pairs, `n! * (n-3)` per length;
/// - commutativity, non-fixing: (permutation, pair `i <= j-2`) pairs;
/// - independence: (permutation, ordered generator pair);
/// - orbit-size, orbit-polynomial: permutations;
/// - evenness: coefficients of `R_n`;
/// - divisibility: lengths;
/// - oracle-equality: permutations enumerated per method.
pub fn verify_property(
    property: Property,
    n_min: usize,
    n_max: usize,
) -> Result<VerificationReport> {
    verify_property_with(property, n_min, n_max, EnumOptions::default())
}

pub fn verify_property_with(
    property: Property,
    n_min: usize,
    n_max: usize,
    opts: EnumOptions,
) -> Result<VerificationReport> {
    if n_min == 0 || n_min > n_max {
        return Err(Error::InvalidRange {
            min: n_min,
            max: n_max,
        });
    }
    check_cap("verification", n_max, property.practical_cap(), opts.caps)?;
    let mut report = VerificationReport {
        property,
        n_min,
        n_max,
        checked: 0,
        counterexample: None,
        notes: Vec::new(),
    };
    for n in n_min..=n_max {
        let outcome = if property.is_per_permutation() {
            scan_permutations(property, n, opts)?
        } else {
            check_distribution(property, n, opts, &mut report.notes)?
        };
        report.checked += outcome.checked;
        if let Some(c) = outcome.counterexample {
            report.counterexample = Some(c);
            break;
        }
    }
    Ok(report)
}

struct Outcome {
    checked: u64,
    counterexample: Option<Counterexample>,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    instances: u64,
    leaders: u64,
}

struct RangeResult {
    tally: Tally,
    failure: Option<(Permutation, String)>,
}

fn scan_permutations(property: Property, n: usize, opts: EnumOptions) -> Result<Outcome> {
    let gens = GeneratorSet::new(n)?;
    let ranges = partition_work(n, opts.workers)?;
    let results = run_ranges(&ranges, opts.workers, |range| {
        let mut tally = Tally::default();
        for p in range.iter() {
            match check_one(property, &p, &gens) {
                Ok(t) => {
                    tally.instances += t.instances;
                    tally.leaders += t.leaders;
                }
                Err(detail) => {
                    return RangeResult {
                        tally,
                        failure: Some((p, detail)),
                    }
                }
            }
        }
        RangeResult {
            tally,
            failure: None,
        }
    });

    let mut total = Tally::default();
    for r in results {
        total.instances += r.tally.instances;
        total.leaders += r.tally.leaders;
        if let Some((p, detail)) = r.failure {
            return Ok(Outcome {
                checked: total.instances,
                counterexample: Some(Counterexample {
                    n,
                    permutation: Some(p),
                    detail,
                }),
            });
        }
    }

    if property == Property::OrbitSize {
        let expected = factorial(n as u32).expect("n <= 20") >> gens.m();
        if total.leaders != expected {
            return Ok(Outcome {
                checked: total.instances,
                counterexample: Some(Counterexample {
                    n,
                    permutation: None,
                    detail: format!(
                        "found {} orbits, expected n!/2^m = {expected}",
                        total.leaders
                    ),
                }),
            });
        }
    }
    Ok(Outcome {
        checked: total.instances,
        counterexample: None,
    })
}

fn check_one(
    property: Property,
    p: &Permutation,
    gens: &GeneratorSet,
) -> std::result::Result<Tally, String> {
    let n = p.len();
    let runs = |q: &Permutation| i64::from(q.run_count().get());
    let c = |i: usize, q: &Permutation| q.apply_c(i).expect("position within 1..=n");
    let mut tally = Tally::default();
    match property {
        Property::RunDelta => {
            for i in 3..n {
                let delta = runs(&c(i, p)) - runs(p);
                if delta.abs() != 1 {
                    return Err(format!("c_{i} changes the run count by {delta}"));
                }
                tally.instances += 1;
            }
        }
        Property::Commutativity | Property::NonFixing => {
            for j in 3..=n {
                let cj = c(j, p);
                for i in 1..=j - 2 {
                    let ij = c(i, &cj);
                    if property == Property::Commutativity {
                        let ji = c(j, &c(i, p));
                        if ij != ji {
                            return Err(format!(
                                "c_{i}(c_{j}(p)) = {ij} but c_{j}(c_{i}(p)) = {ji}"
                            ));
                        }
                    } else if ij == *p {
                        return Err(format!("c_{i}(c_{j}(p)) = p"));
                    }
                    tally.instances += 1;
                }
            }
        }
        Property::Independence => {
            let base = runs(p);
            for &i in gens.indices() {
                let ci = c(i, p);
                let first = (runs(&ci) - base).signum();
                for &j in gens.indices().iter().filter(|&&j| j != i) {
                    let cj = c(j, p);
                    let second = (runs(&c(j, &ci)) - runs(&cj)).signum();
                    if first != second {
                        return Err(format!(
                            "c_{i} changes run(p) with sign {first} but run(c_{j}(p)) with sign {second}"
                        ));
                    }
                    tally.instances += 1;
                }
            }
        }
        Property::OrbitSize => {
            let orbit = action::orbit_of(p).map_err(|e| e.to_string())?;
            if orbit.len() != gens.order() as usize {
                return Err(format!(
                    "orbit has {} members, expected {}",
                    orbit.len(),
                    gens.order()
                ));
            }
            let lowest = orbit.members().iter().map(|m| m.permutation).min();
            if lowest == Some(*p) {
                tally.leaders = 1;
            }
            tally.instances = 1;
        }
        Property::OrbitPolynomial => {
            let orbit = action::orbit_of(p).map_err(|e| e.to_string())?;
            action::orbit_polynomial(&orbit).map_err(|e| e.to_string())?;
            let m = gens.m();
            let a = orbit.minimal().runs.get() as usize;
            let layers = orbit.run_histogram();
            for (k, &count) in layers.iter().enumerate() {
                let expected = if k >= a && k - a <= m {
                    binomial(m, k - a)
                } else {
                    0
                };
                if count != expected {
                    return Err(format!(
                        "{count} orbit members have {k} runs, expected C({m},{}) = {expected}",
                        k as i64 - a as i64
                    ));
                }
            }
            let target = orbit.minimal().permutation;
            for order in [GeneratorOrder::Ascending, GeneratorOrder::Descending] {
                let greedy = action::canonicalize_in_order(p, order);
                if greedy.representative != target {
                    return Err(format!(
                        "greedy pass ({order:?}) stops at {} with {} runs, orbit minimum is {target}",
                        greedy.representative, greedy.runs
                    ));
                }
            }
            if !action::is_minimal(&target) {
                return Err(format!(
                    "orbit minimum {target} is not minimal under every generator"
                ));
            }
            tally.instances = 1;
        }
        Property::Evenness | Property::Divisibility | Property::OracleEquality => {
            unreachable!("distribution-level property")
        }
    }
    Ok(tally)
}

fn check_distribution(
    property: Property,
    n: usize,
    opts: EnumOptions,
    notes: &mut Vec<String>,
) -> Result<Outcome> {
    let fail = |detail: String| Outcome {
        checked: 0,
        counterexample: Some(Counterexample {
            n,
            permutation: None,
            detail,
        }),
    };
    let brute = distribution_bruteforce_with(n, opts)?;
    let r = &brute.polynomial;
    match property {
        Property::Evenness => {
            if n < 2 {
                notes.push(format!(
                    "n={n}: R_{n} = {r}; evenness holds only from n = 2"
                ));
                return Ok(Outcome {
                    checked: 0,
                    counterexample: None,
                });
            }
            if let Some((e, c)) = r.terms().find(|&(_, c)| c % 2 != 0) {
                return Ok(fail(format!(
                    "coefficient of z^{e} in R_{n} is {c}, which is odd"
                )));
            }
            Ok(Outcome {
                checked: r.terms().count() as u64,
                counterexample: None,
            })
        }
        Property::Divisibility => {
            let m = brute.m as u32;
            let t = brute.multiplicity_at_minus_one;
            if let Err(e) = r.div_binomial_power(m) {
                return Ok(fail(format!(
                    "R_{n} = {r} is not divisible by (1+z)^{m}: {e}"
                )));
            }
            if t < m {
                return Ok(fail(format!(
                    "multiplicity of -1 in R_{n} is {t} < m = {m}"
                )));
            }
            notes.push(format!("n={n}: m={m}, multiplicity at -1 = {t}"));
            Ok(Outcome {
                checked: 1,
                counterexample: None,
            })
        }
        Property::OracleEquality => {
            let orbit = distribution_via_orbits_with(n, opts)?;
            if orbit.polynomial != *r {
                return Ok(fail(format!(
                    "brute force gives {r}, orbit factorization gives {}",
                    orbit.polynomial
                )));
            }
            if orbit.quotient != brute.quotient {
                return Ok(fail(format!(
                    "quotients differ: brute {:?}, orbit {:?}",
                    brute.quotient.map(|q| q.to_string()),
                    orbit.quotient.map(|q| q.to_string())
                )));
            }
            Ok(Outcome {
                checked: factorial(n as u32).expect("n <= 20"),
                counterexample: None,
            })
        }
        _ => unreachable!("per-permutation property"),
    }
}

fn binomial(m: usize, k: usize) -> u64 {
    if k > m {
        return 0;
    }
    (0..k).fold(1u64, |acc, j| acc * (m - j) as u64 / (j as u64 + 1))
}
