use std::io::{self, Write};

use circint::{CirculantSpec, IntegralityVerdict, OrbitPartition, VerificationReport};
use serde::Serialize;

pub fn json_line(out: &mut impl Write, value: &impl Serialize) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)
}

/// Rounds to 12 significant digits; magnitudes below 1e-12 become 0.
pub fn round12(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        return 0.0;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

pub fn braces(set: &[u64]) -> String {
    let items: Vec<String> = set.iter().map(u64::to_string).collect();
    format!("{{{}}}", items.join(","))
}

pub fn partition_table(out: &mut impl Write, part: &OrbitPartition) -> io::Result<()> {
    writeln!(out, "# n = {}, field = {}, r = {}", part.order(), part.field(), part.len())?;
    writeln!(out, "{:>5}  {:>6}  members", "block", "p")?;
    for (i, b) in part.blocks().iter().enumerate() {
        writeln!(out, "{i:>5}  {:>6}  {}", b.p, braces(&b.members))?;
    }
    Ok(())
}

pub fn verdict_table(
    out: &mut impl Write,
    spec: &CirculantSpec,
    verdict: &IntegralityVerdict,
    part: &OrbitPartition,
) -> io::Result<()> {
    let head = format!("D({}, {}) over {}", spec.order(), braces(spec.connection_set()), part.field());
    match (&verdict.block_indices, &verdict.violation) {
        (Some(blocks), _) => {
            let list: Vec<String> = blocks.iter().map(usize::to_string).collect();
            writeln!(out, "{head}: integral, union of blocks [{}]", list.join(","))
        }
        (None, Some(v)) => writeln!(
            out,
            "{head}: not integral, block {} {} has {} but misses {}",
            v.block,
            braces(&part.blocks()[v.block].members),
            braces(&v.present),
            braces(&v.missing)
        ),
        (None, None) => unreachable!("verdict carries neither blocks nor a violation"),
    }
}

pub fn report_table(out: &mut impl Write, reports: &[VerificationReport]) -> io::Result<()> {
    writeln!(out, "{:>5}  {:<14}  {:<7}  {:>8}  {:>10}  result", "n", "field", "mode", "cases", "mismatches")?;
    for r in reports {
        let mode = serde_json::to_value(r.mode).expect("mode serializes");
        writeln!(
            out,
            "{:>5}  {:<14}  {:<7}  {:>8}  {:>10}  {}",
            r.n,
            r.field,
            mode.as_str().unwrap_or_default(),
            r.cases_checked,
            r.mismatches.len(),
            if r.passed() { "pass" } else { "FAIL" }
        )?;
        for m in &r.mismatches {
            writeln!(out, "       S = {}  expected {}  got {}", braces(&m.set), m.expected, m.got)?;
        }
    }
    Ok(())
}
