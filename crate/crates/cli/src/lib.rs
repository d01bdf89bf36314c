//! Command implementations behind the `runslab` binary.
//!
//! Every command produces an [`OutputDocument`] and renders it as text, JSON
//! or CSV. Exit codes: 0 success, 1 a verified claim failed (counterexample
//! or internal invariant violation), 2 usage or validation error.

pub mod args;
pub mod document;

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use runslab_core::enumerate::{
    self, check_cap, default_workers, hard_cap, CapPolicy, DistributionResult, EnumOptions,
};
use runslab_core::{
    canonicalize, generator_set, is_minimal, orbit_of, orbit_polynomial, parse_permutation,
    verify_property_with, Error, Permutation, Property, RunPolynomial,
};

use args::{Cli, Command, DistArgs, Format, MethodArg, PermArgs, VerifyArgs};
use document::{
    CanonPayload, CounterexampleRow, DistPayload, ErrorPayload, MemberRow, OrbitPayload,
    OutputDocument, Payload, QuotientPayload, ReportRow, Status, VerifyPayload,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_COUNTEREXAMPLE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// A finished command: what to print and how to exit.
#[derive(Debug)]
pub struct Outcome {
    pub document: OutputDocument,
    pub stdout: String,
    pub stderr: String,
    pub exit_code: u8,
}

struct Failure {
    exit_code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit_code = match e {
            Error::Invariant(_) => EXIT_COUNTEREXAMPLE,
            _ => EXIT_USAGE,
        };
        Failure {
            exit_code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        exit_code: EXIT_USAGE,
        message: message.into(),
    }
}

pub fn run(cli: Cli) -> Outcome {
    let (name, format) = match &cli.command {
        Command::Dist(a) => ("dist", a.format),
        Command::Quotient(a) => ("quotient", a.format),
        Command::Orbit(a) => ("orbit", a.format),
        Command::Canon(a) => ("canon", a.format),
        Command::Verify(a) => ("verify", a.format),
    };
    let result = match &cli.command {
        Command::Dist(a) => dist(a),
        Command::Quotient(a) => quotient(a),
        Command::Orbit(a) => orbit(a),
        Command::Canon(a) => canon(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok((payload, status)) => {
            let document = OutputDocument::new(name, payload, status);
            let exit_code = match status {
                Status::Ok => EXIT_OK,
                Status::Failed => EXIT_COUNTEREXAMPLE,
            };
            Outcome {
                stdout: render(&document, format),
                stderr: String::new(),
                document,
                exit_code,
            }
        }
        Err(f) => {
            let document = OutputDocument::new(
                name,
                Payload::Error(ErrorPayload {
                    error: f.message.clone(),
                }),
                Status::Failed,
            );
            let stdout = match format {
                Format::Json => document.to_json() + "\n",
                _ => String::new(),
            };
            Outcome {
                stdout,
                stderr: format!("error: {}\n", f.message),
                document,
                exit_code: f.exit_code,
            }
        }
    }
}

fn options(threads: Option<usize>, force: bool) -> Result<EnumOptions, Failure> {
    let workers = threads.unwrap_or_else(default_workers);
    if workers == 0 {
        return Err(usage("--threads must be at least 1"));
    }
    let opts = EnumOptions::new(workers);
    Ok(if force { opts.forced() } else { opts })
}

fn compute_distribution(a: &DistArgs) -> Result<DistributionResult, Failure> {
    let opts = options(a.threads, a.force)?;
    let r = match a.method {
        MethodArg::Brute => enumerate::distribution_bruteforce_with(a.n, opts)?,
        MethodArg::Orbit => enumerate::distribution_via_orbits_with(a.n, opts)?,
    };
    Ok(r)
}

fn dist(a: &DistArgs) -> Result<(Payload, Status), Failure> {
    let r = compute_distribution(a)?;
    Ok((
        Payload::Dist(DistPayload {
            n: r.n,
            m: r.m,
            method: r.method.as_str().to_owned(),
            polynomial: r.polynomial,
            quotient: r.quotient,
            multiplicity_at_minus_one: r.multiplicity_at_minus_one,
            workers: r.workers,
            elapsed_us: r.elapsed.as_micros() as u64,
        }),
        Status::Ok,
    ))
}

fn quotient(a: &DistArgs) -> Result<(Payload, Status), Failure> {
    if a.n < 4 {
        return Err(usage(format!(
            "the (1+z)^m quotient is defined for n >= 4 (got n = {})",
            a.n
        )));
    }
    let r = compute_distribution(a)?;
    let Some(quotient) = r.quotient else {
        return Err(Error::Invariant(format!(
            "R_{} = {} is not divisible by (1+z)^{}",
            r.n, r.polynomial, r.m
        ))
        .into());
    };
    Ok((
        Payload::Quotient(QuotientPayload {
            n: r.n,
            m: r.m,
            quotient,
        }),
        Status::Ok,
    ))
}

fn input_permutation(a: &PermArgs) -> Result<Permutation, Failure> {
    let p = match (&a.perm, a.n, a.seed) {
        (Some(text), _, _) => parse_permutation(text)?,
        (None, Some(n), Some(seed)) => {
            if n == 0 || n > runslab_core::MAX_N {
                return Err(usage(format!("--n must be in 1..={}", runslab_core::MAX_N)));
            }
            let mut entries: Vec<u8> = (1..=n as u8).collect();
            entries.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            Permutation::new(&entries)?
        }
        _ => return Err(usage("give --perm, or --n together with --seed")),
    };
    let cap = hard_cap();
    if p.len() > cap {
        return Err(usage(format!(
            "permutation length {} exceeds the hard cap {cap}",
            p.len()
        )));
    }
    Ok(p)
}

fn member_row(gens: &runslab_core::GeneratorSet, m: &runslab_core::OrbitMember) -> MemberRow {
    MemberRow {
        mask: m.element.mask(),
        applied: gens.positions_of(m.element),
        permutation: m.permutation.to_string(),
        runs: m.runs.get(),
    }
}

/// `z^a(1+z)^m` with the trivial factors dropped.
pub fn factored_form(a: u32, m: usize) -> String {
    let mut s = match a {
        0 => String::new(),
        1 => "z".to_owned(),
        _ => format!("z^{a}"),
    };
    match m {
        0 => {}
        1 => s.push_str("(1+z)"),
        _ => {
            let _ = write!(s, "(1+z)^{m}");
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

fn orbit(a: &PermArgs) -> Result<(Payload, Status), Failure> {
    let p = input_permutation(a)?;
    let orbit = orbit_of(&p)?;
    let polynomial = orbit_polynomial(&orbit)?;
    let gens = orbit.generators();
    let minimal = orbit.minimal();
    let a_exp = minimal.runs.get();
    Ok((
        Payload::Orbit(OrbitPayload {
            permutation: p.to_string(),
            n: p.len(),
            m: gens.m(),
            generators: gens.indices().to_vec(),
            members: orbit
                .members()
                .iter()
                .map(|m| member_row(gens, m))
                .collect(),
            minimal: member_row(gens, minimal),
            a: a_exp,
            polynomial,
            factored: factored_form(a_exp, gens.m()),
        }),
        Status::Ok,
    ))
}

fn canon(a: &PermArgs) -> Result<(Payload, Status), Failure> {
    let p = input_permutation(a)?;
    let c = canonicalize(&p);
    let gens = generator_set(p.len())?;
    if !is_minimal(&c.representative) {
        return Err(Error::Invariant(format!(
            "greedy canonical form {} of {p} is not minimal",
            c.representative
        ))
        .into());
    }
    Ok((
        Payload::Canon(CanonPayload {
            input: p.to_string(),
            input_runs: p.run_count().get(),
            canonical: c.representative.to_string(),
            runs: c.runs.get(),
            mask: c.element.mask(),
            applied: gens.positions_of(c.element),
            is_minimal: true,
        }),
        Status::Ok,
    ))
}

fn parse_props(list: &[String]) -> Result<Vec<Property>, Failure> {
    let mut props = Vec::new();
    for item in list.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
        if item == "all" {
            props.extend(Property::ALL);
        } else {
            props.push(item.parse::<Property>()?);
        }
    }
    if props.is_empty() {
        return Err(usage("--props is empty"));
    }
    let mut seen = Vec::new();
    props.retain(|p| {
        let fresh = !seen.contains(p);
        seen.push(*p);
        fresh
    });
    Ok(props)
}

fn verify(a: &VerifyArgs) -> Result<(Payload, Status), Failure> {
    if a.n_min == 0 || a.n_min > a.n_max {
        return Err(Error::InvalidRange {
            min: a.n_min,
            max: a.n_max,
        }
        .into());
    }
    let props = parse_props(&a.props)?;
    let opts = options(a.threads, a.force)?;
    // refuse up front rather than after partial work
    let policy = if a.force {
        CapPolicy::Force
    } else {
        CapPolicy::Practical
    };
    for p in &props {
        check_cap("verification", a.n_max, p.practical_cap(), policy)?;
    }
    let mut reports = Vec::new();
    for &prop in &props {
        for n in a.n_min..=a.n_max {
            let r = verify_property_with(prop, n, n, opts)?;
            reports.push(ReportRow {
                property: prop.name().to_owned(),
                n_min: r.n_min,
                n_max: r.n_max,
                passed: r.passed(),
                checked: r.checked,
                counterexample: r.counterexample.map(|c| CounterexampleRow {
                    permutation: c.permutation.map(|p| p.to_string()),
                    detail: c.detail,
                }),
                notes: r.notes,
            });
        }
    }
    let status = if reports.iter().all(|r| r.passed) {
        Status::Ok
    } else {
        Status::Failed
    };
    Ok((
        Payload::Verify(VerifyPayload {
            n_min: a.n_min,
            n_max: a.n_max,
            reports,
        }),
        status,
    ))
}

pub fn render(doc: &OutputDocument, format: Format) -> String {
    match format {
        Format::Json => doc.to_json() + "\n",
        Format::Text => render_text(doc),
        Format::Csv => render_csv(doc),
    }
}

fn render_text(doc: &OutputDocument) -> String {
    let mut out = String::new();
    match &doc.payload {
        Payload::Dist(d) => {
            let _ = writeln!(out, "R_{}(z) = {}; m={}", d.n, d.polynomial, d.m);
            match &d.quotient {
                Some(q) => {
                    let _ = writeln!(out, "quotient: R_{}(z) / (1+z)^{} = {q}", d.n, d.m);
                }
                None if d.n < 4 => {
                    let _ = writeln!(out, "quotient: none (n < 4)");
                }
                None => {
                    let _ = writeln!(out, "quotient: none (not divisible by (1+z)^{})", d.m);
                }
            }
            let _ = writeln!(out, "multiplicity at z=-1: {}", d.multiplicity_at_minus_one);
            let _ = writeln!(
                out,
                "method: {}, workers: {}, elapsed: {:.3}s",
                d.method,
                d.workers,
                d.elapsed_us as f64 / 1e6
            );
        }
        Payload::Quotient(q) => {
            let _ = writeln!(out, "R_{}(z) / (1+z)^{} = {}", q.n, q.m, q.quotient);
        }
        Payload::Orbit(o) => {
            let gens: Vec<String> = o.generators.iter().map(|i| format!("c_{i}")).collect();
            let _ = writeln!(
                out,
                "orbit of {} (n={}, m={}, generators: {})",
                o.permutation,
                o.n,
                o.m,
                if gens.is_empty() {
                    "none".to_owned()
                } else {
                    gens.join(" ")
                }
            );
            for row in &o.members {
                let _ = writeln!(
                    out,
                    "  mask {:>3}  {:<14} runs {}  applied {}",
                    row.mask,
                    row.permutation,
                    row.runs,
                    applied_text(&row.applied)
                );
            }
            let _ = writeln!(
                out,
                "minimal: {} (runs: {})",
                o.minimal.permutation, o.minimal.runs
            );
            let _ = writeln!(out, "polynomial: {} = {}", o.polynomial, o.factored);
        }
        Payload::Canon(c) => {
            let _ = writeln!(out, "input: {} (runs: {})", c.input, c.input_runs);
            let _ = writeln!(out, "canonical: {} (runs: {})", c.canonical, c.runs);
            let _ = writeln!(
                out,
                "applied: {} (mask {})",
                applied_text(&c.applied),
                c.mask
            );
        }
        Payload::Verify(v) => {
            for r in &v.reports {
                let _ = write!(
                    out,
                    "{} {} n={} checked={}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.property,
                    r.n_min,
                    r.checked
                );
                for note in &r.notes {
                    let _ = write!(out, " [{note}]");
                }
                out.push('\n');
                if let Some(c) = &r.counterexample {
                    let _ = writeln!(
                        out,
                        "  counterexample: {}{}",
                        c.permutation
                            .as_deref()
                            .map(|p| format!("p = {p}: "))
                            .unwrap_or_default(),
                        c.detail
                    );
                }
            }
            let failed = v.reports.iter().filter(|r| !r.passed).count();
            let _ = writeln!(
                out,
                "{} of {} reports passed",
                v.reports.len() - failed,
                v.reports.len()
            );
        }
        Payload::Error(e) => {
            let _ = writeln!(out, "error: {}", e.error);
        }
    }
    out
}

fn applied_text(applied: &[usize]) -> String {
    if applied.is_empty() {
        "none".to_owned()
    } else {
        let names: Vec<String> = applied.iter().map(|i| format!("c_{i}")).collect();
        format!("{{{}}}", names.join(", "))
    }
}

fn poly_rows(w: &mut csv::Writer<Vec<u8>>, p: &RunPolynomial) -> csv::Result<()> {
    w.write_record(["exponent", "coefficient"])?;
    for (e, c) in p.terms() {
        w.write_record([e.to_string(), c.to_string()])?;
    }
    Ok(())
}

fn render_csv(doc: &OutputDocument) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let written: csv::Result<()> = (|| {
        match &doc.payload {
            Payload::Dist(d) => poly_rows(&mut w, &d.polynomial)?,
            Payload::Quotient(q) => poly_rows(&mut w, &q.quotient)?,
            Payload::Orbit(o) => {
                w.write_record(["mask", "permutation", "runs"])?;
                for row in &o.members {
                    w.write_record([
                        row.mask.to_string(),
                        row.permutation.clone(),
                        row.runs.to_string(),
                    ])?;
                }
            }
            Payload::Canon(c) => {
                w.write_record(["input", "canonical", "runs", "mask"])?;
                w.write_record([
                    c.input.clone(),
                    c.canonical.clone(),
                    c.runs.to_string(),
                    c.mask.to_string(),
                ])?;
            }
            Payload::Verify(v) => {
                w.write_record(["property", "n", "passed", "checked", "counterexample"])?;
                for r in &v.reports {
                    let cx = r
                        .counterexample
                        .as_ref()
                        .map(|c| match &c.permutation {
                            Some(p) => format!("{p}: {}", c.detail),
                            None => c.detail.clone(),
                        })
                        .unwrap_or_default();
                    w.write_record([
                        r.property.clone(),
                        r.n_min.to_string(),
                        r.passed.to_string(),
                        r.checked.to_string(),
                        cx,
                    ])?;
                }
            }
            Payload::Error(e) => {
                w.write_record(["error"])?;
                w.write_record([e.error.as_str()])?;
            }
        }
        Ok(())
    })();
    written.expect("writing CSV into memory");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV fields are UTF-8")
}
