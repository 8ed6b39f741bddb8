use std::io::Write;
use std::time::Duration;

use circint::{
    cross_verify, cyclotomic_polynomial, enumerate_integral, eigenvalue, is_integral_in,
    lemma1_check, numeric_spectrum, numeric_verify, orbit_partition, AbelianField, CirculantSpec,
    Limits, SweepMode, VerificationReport,
};
use serde::Serialize;

use crate::render;
use crate::{Failure, Format};

type Outcome = Result<u8, Failure>;

pub fn partition(out: &mut impl Write, format: Format, n: u64, field: &AbelianField, limits: &Limits) -> Outcome {
    let part = orbit_partition(n, field, limits)?;
    match format {
        Format::Json => render::json_line(out, &part)?,
        Format::Table => render::partition_table(out, &part)?,
    }
    Ok(0)
}

/// Parses `1,5,7`, the empty string, or `blocks:0,2` (indices into the partition for `field`).
pub fn parse_set(n: u64, text: &str, field: &AbelianField, limits: &Limits) -> Result<CirculantSpec, Failure> {
    let text = text.trim();
    let numbers = |list: &str| -> Result<Vec<i64>, Failure> {
        list.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|e| Failure::usage(format!("bad set element `{t}`: {e}")))
            })
            .collect()
    };
    if let Some(list) = text.strip_prefix("blocks:") {
        let part = orbit_partition(n, field, limits)?;
        let mut members = Vec::new();
        for index in numbers(list)? {
            let block = usize::try_from(index)
                .ok()
                .and_then(|i| part.blocks().get(i))
                .ok_or_else(|| {
                    Failure::usage(format!("block index {index} out of range: the partition has {} blocks", part.len()))
                })?;
            members.extend(block.members.iter().map(|&x| x as i64));
        }
        return Ok(CirculantSpec::new(n, members)?);
    }
    let list = text.trim_start_matches('{').trim_end_matches('}');
    Ok(CirculantSpec::new(n, numbers(list)?)?)
}

pub fn check(
    out: &mut impl Write,
    format: Format,
    n: u64,
    set: &str,
    field: &AbelianField,
    limits: &Limits,
) -> Outcome {
    let spec = parse_set(n, set, field, limits)?;
    let part = orbit_partition(n, field, limits)?;
    let verdict = is_integral_in(&spec, &part)?;
    match format {
        Format::Json => render::json_line(out, &verdict.record(&spec, field))?,
        Format::Table => render::verdict_table(out, &spec, &verdict, &part)?,
    }
    Ok(if verdict.integral { 0 } else { 1 })
}

#[derive(Serialize)]
struct EnumerationSummary {
    count: u64,
    r: usize,
    complete: bool,
}

pub fn enumerate(
    out: &mut impl Write,
    format: Format,
    n: u64,
    field: &AbelianField,
    limit: Option<u64>,
    limits: &Limits,
) -> Outcome {
    let sets = enumerate_integral(n, field, limit, limits)?;
    let part = sets.orbits().clone();
    let mut count = 0u64;
    for spec in sets {
        let verdict = is_integral_in(&spec, &part)?;
        debug_assert!(verdict.integral);
        match format {
            Format::Json => render::json_line(out, &verdict.record(&spec, field))?,
            Format::Table => writeln!(out, "{}", render::braces(spec.connection_set()))?,
        }
        count += 1;
    }
    let r = part.len();
    let summary = EnumerationSummary {
        count,
        r,
        complete: r < 64 && count == 1u64 << r,
    };
    match format {
        Format::Json => render::json_line(out, &summary)?,
        Format::Table => writeln!(out, "# {count} sets (r = {r}, complete: {})", summary.complete)?,
    }
    Ok(0)
}

#[derive(Serialize)]
struct ExactSpectrum<'a> {
    n: u64,
    #[serde(rename = "S")]
    set: &'a [u64],
    mode: &'static str,
    modulus: Vec<i64>,
    eigenvalues: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct NumericSpectrum<'a> {
    n: u64,
    #[serde(rename = "S")]
    set: &'a [u64],
    mode: &'static str,
    eigenvalues: Vec<[f64; 2]>,
}

pub fn spectrum(
    out: &mut impl Write,
    format: Format,
    n: u64,
    set: &str,
    field: &AbelianField,
    exact: bool,
    limits: &Limits,
) -> Outcome {
    let spec = parse_set(n, set, field, limits)?;
    if exact {
        let modulus = cyclotomic_polynomial(n, limits)?;
        let eigenvalues = (0..n)
            .map(|r| eigenvalue(n, spec.connection_set(), r)?.reduced())
            .collect::<circint::Result<Vec<_>>>()?;
        let doc = ExactSpectrum {
            n,
            set: spec.connection_set(),
            mode: "exact",
            modulus,
            eigenvalues,
        };
        match format {
            Format::Json => render::json_line(out, &doc)?,
            Format::Table => {
                writeln!(out, "# Phi_{n} = {:?}", doc.modulus)?;
                for (r, c) in doc.eigenvalues.iter().enumerate() {
                    writeln!(out, "{r:>4}  {c:?}")?;
                }
            }
        }
    } else {
        let eigenvalues = numeric_spectrum(&spec)
            .into_iter()
            .map(|z| [render::round12(z.re), render::round12(z.im)])
            .collect();
        let doc = NumericSpectrum {
            n,
            set: spec.connection_set(),
            mode: "numeric",
            eigenvalues,
        };
        match format {
            Format::Json => render::json_line(out, &doc)?,
            Format::Table => {
                for (r, [re, im]) in doc.eigenvalues.iter().enumerate() {
                    writeln!(out, "{r:>4}  {re:>20}  {im:>20}")?;
                }
            }
        }
    }
    Ok(0)
}

pub struct VerifyOptions {
    pub samples: Option<u64>,
    pub seed: u64,
    pub lemma1: bool,
    pub numeric: bool,
    pub tol: f64,
    pub timing: bool,
}

/// Parses `n`, `a..b` or `a..=b`; both range forms include `b`.
pub fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<u64>, Failure> {
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|e| Failure::usage(format!("bad order `{t}` in range `{text}`: {e}")))
    };
    let range = match text.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => {
            let n = num(text)?;
            n..=n
        }
    };
    if range.is_empty() || *range.start() < 2 {
        return Err(Failure::usage(format!(
            "range `{text}` must be non-empty with every order at least 2"
        )));
    }
    Ok(range)
}

#[derive(Serialize)]
struct VerifyDocument {
    passed: bool,
    reports: Vec<VerificationReport>,
}

pub fn verify(
    out: &mut impl Write,
    format: Format,
    range: &str,
    field: &AbelianField,
    options: &VerifyOptions,
    limits: &Limits,
) -> Outcome {
    if options.tol.is_nan() || options.tol <= 0.0 {
        return Err(Failure::usage("--tol must be positive"));
    }
    let mode = match options.samples {
        Some(count) => SweepMode::Sample {
            count,
            seed: options.seed,
        },
        None => SweepMode::Exhaustive,
    };
    let mut reports = Vec::new();
    for n in parse_range(range)? {
        reports.push(cross_verify(n, field, mode, limits)?);
        if options.lemma1 {
            reports.push(lemma1_check(n, field, limits)?);
        }
        if options.numeric {
            reports.push(numeric_verify(n, field, mode, options.tol, limits)?);
        }
    }
    let total: Duration = reports.iter().map(|r| r.elapsed).sum();
    if options.timing {
        eprintln!("verify: {} reports in {} ms", reports.len(), total.as_millis());
    } else {
        for r in &mut reports {
            r.elapsed = Duration::ZERO;
        }
    }
    let passed = reports.iter().all(VerificationReport::passed);
    match format {
        Format::Json => render::json_line(out, &VerifyDocument { passed, reports })?,
        Format::Table => render::report_table(out, &reports)?,
    }
    Ok(if passed { 0 } else { 1 })
}
