//! Release gate. Each criterion runs at its stated size and time budget and
//! prints one PASS/FAIL line; the process exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use runslab_core::enumerate::{factorial, EnumOptions};
use runslab_core::perm::{relative_complement, vertical_complement};
use runslab_core::{
    apply_element, distribution_bruteforce, enumerate, generator_set, parse_permutation,
    verify_property_with, GroupElement, Permutation, Property, RunPolynomial,
};

type Check = Result<String, String>;

fn p(s: &str) -> Permutation {
    parse_permutation(s).expect("literal permutation")
}

fn poly(terms: &[(u32, i128)]) -> RunPolynomial {
    RunPolynomial::from_terms(terms.iter().copied()).expect("small literal")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite(
    prop: Property,
    lo: usize,
    hi: usize,
    workers: usize,
) -> Result<runslab_core::VerificationReport, String> {
    let r =
        verify_property_with(prop, lo, hi, EnumOptions::new(workers)).map_err(|e| e.to_string())?;
    match &r.counterexample {
        Some(c) => Err(format!("{prop}: counterexample {c}")),
        None => Ok(r),
    }
}

fn worked_examples() -> Check {
    ensure(p("425613").complement() == p("352164"), || {
        "complement(425613)".into()
    })?;
    ensure(
        relative_complement(&[2, 4, 7, 8, 3]).map_err(|e| e.to_string())? == vec![8, 4, 3, 2, 7],
        || "relative_complement(24783)".into(),
    )?;
    let set = |v: &[u32]| v.iter().copied().collect::<BTreeSet<_>>();
    ensure(
        vertical_complement(&set(&[1, 4, 6]), &set(&[1, 2, 3, 4, 6, 8, 9]))
            .map_err(|e| e.to_string())?
            == set(&[3, 4, 9]),
        || "vertical_complement".into(),
    )?;
    let q = p("315462");
    let c = |i, x: &Permutation| x.apply_c(i).expect("valid position");
    ensure(c(3, &q) == p("314526"), || "c_3(315462)".into())?;
    ensure(c(5, &q) == p("315426"), || "c_5(315462)".into())?;
    ensure(c(3, &c(5, &q)) == p("314562"), || "c_3(c_5(315462))".into())?;
    ensure(c(5, &c(3, &q)) == p("314562"), || "c_5(c_3(315462))".into())?;
    let gens = generator_set(6).map_err(|e| e.to_string())?;
    ensure(
        apply_element(GroupElement(0b11), &q, &gens).map_err(|e| e.to_string())? == p("314562"),
        || "group element {c_3, c_5}".into(),
    )?;
    Ok("all seven example identities hold".into())
}

fn run_delta() -> Check {
    let r = suite(Property::RunDelta, 4, 8, 4)?;
    let expected: u64 = (4..=8u32)
        .map(|n| factorial(n).unwrap() * u64::from(n - 3))
        .sum();
    ensure(r.checked == expected, || {
        format!("checked {} instances, expected {expected}", r.checked)
    })?;
    Ok(format!("{} (permutation, i) pairs, n = 4..8", r.checked))
}

fn commutativity() -> Check {
    let a = suite(Property::Commutativity, 1, 7, 4)?;
    let b = suite(Property::NonFixing, 1, 7, 4)?;
    ensure(a.checked == b.checked && a.checked > 0, || {
        "pair counts differ".into()
    })?;
    Ok(format!(
        "{} (permutation, i <= j-2) pairs for each claim, n <= 7",
        a.checked
    ))
}

fn orbit_structure() -> Check {
    let size = suite(Property::OrbitSize, 1, 8, 4)?;
    let layered = suite(Property::OrbitPolynomial, 1, 8, 4)?;
    let total: u64 = (1..=8).map(|n| factorial(n).unwrap()).sum();
    ensure(size.checked == total && layered.checked == total, || {
        format!(
            "covered {} / {} of {total} permutations",
            size.checked, layered.checked
        )
    })?;
    Ok(format!(
        "{total} permutations, orbits free, layered C(m,i), sums z^a(1+z)^m"
    ))
}

fn oracle_equality() -> Check {
    let r = suite(Property::OracleEquality, 1, 10, 4)?;
    Ok(format!(
        "brute = orbit for n = 1..10 ({} permutations per method)",
        r.checked
    ))
}

fn divisibility() -> Check {
    let r = suite(Property::Divisibility, 4, 11, 4)?;
    ensure(r.checked == 8, || format!("checked {} lengths", r.checked))?;
    Ok(r.notes.join("; "))
}

fn fixtures() -> Check {
    let expect = [
        (2, poly(&[(1, 2)])),
        (3, poly(&[(1, 2), (2, 4)])),
        (4, poly(&[(1, 2), (2, 12), (3, 10)])),
    ];
    for (n, want) in &expect {
        let r = distribution_bruteforce(*n, 1).map_err(|e| e.to_string())?;
        ensure(r.polynomial == *want, || {
            format!("R_{n} = {}, expected {want}", r.polynomial)
        })?;
        let sum = r.polynomial.coefficient_sum().map_err(|e| e.to_string())?;
        ensure(sum == i128::from(factorial(*n as u32).unwrap()), || {
            format!("R_{n} sums to {sum}")
        })?;
        ensure(r.polynomial.terms().all(|(_, c)| c % 2 == 0), || {
            format!("R_{n} has an odd coefficient")
        })?;
        if *n == 4 {
            ensure(r.quotient == Some(poly(&[(1, 2), (2, 10)])), || {
                format!("quotient {:?}", r.quotient)
            })?;
        }
    }
    Ok("R_2 = 2z; R_3 = 2z + 4z^2; R_4 = 2z + 12z^2 + 10z^3 = (1+z)(2z + 10z^2)".into())
}

fn determinism() -> Check {
    let reference = distribution_bruteforce(9, 1).map_err(|e| e.to_string())?;
    for workers in [1, 2, 7] {
        let opts = EnumOptions::new(workers);
        for r in [
            enumerate::distribution_bruteforce_with(9, opts),
            enumerate::distribution_via_orbits_with(9, opts),
        ] {
            let r = r.map_err(|e| e.to_string())?;
            ensure(
                r.polynomial == reference.polynomial && r.quotient == reference.quotient,
                || format!("{} with {workers} workers gives {}", r.method, r.polynomial),
            )?;
        }
    }
    Ok(format!(
        "R_9 = {} for workers 1, 2, 7 (both methods)",
        reference.polynomial
    ))
}

fn independence() -> Check {
    let r = suite(Property::Independence, 1, 7, 4)?;
    Ok(format!(
        "{} (permutation, c_i, c_j) triples, n <= 7, no sign flips",
        r.checked
    ))
}

type Criterion = (u32, &'static str, Duration, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            1,
            "worked-example fidelity",
            Duration::from_secs(1),
            worked_examples,
        ),
        (2, "run-delta, n = 4..8", Duration::from_secs(60), run_delta),
        (
            3,
            "commutativity and non-fixing, n <= 7",
            Duration::from_secs(60),
            commutativity,
        ),
        (
            4,
            "orbit structure, n <= 8",
            Duration::from_secs(120),
            orbit_structure,
        ),
        (
            5,
            "brute = orbit factorization, n <= 10",
            Duration::from_secs(120),
            oracle_equality,
        ),
        (
            6,
            "divisibility by (1+z)^m, n = 4..11",
            Duration::from_secs(300),
            divisibility,
        ),
        (7, "small-n fixtures", Duration::from_secs(1), fixtures),
        (
            8,
            "determinism under parallelism, n = 9",
            Duration::from_secs(60),
            determinism,
        ),
        (
            9,
            "independence remark, n <= 7",
            Duration::from_secs(60),
            independence,
        ),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let started = Instant::now();
        let outcome = run();
        let elapsed = started.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => Err(format!("over budget: {detail}")),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {id} [{tag}] {name} ({:.3}s / {}s): {detail}",
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failed == 0 {
        println!("acceptance: all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 9 criteria failed");
        ExitCode::FAILURE
    }
}
