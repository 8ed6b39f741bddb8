//! Independent checks of the orbit-partition criterion.
//!
//! [`oracle_is_integral`] decides integrality straight from the eigenvalues:
//! each `lambda_r` lies in `Z[zeta_n]`, and it lies in `K` exactly when every
//! automorphism in `Gal(Q(zeta_n) / K ∩ Q(zeta_n))` fixes it. That path never
//! looks at the orbit partition. The floating-point checks are a sanity layer
//! for `Q` and `Q(i)` only and never decide anything on their own.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::cyclotomic::{cyc_equal, eigenvalue, galois_apply};
use crate::error::{Error, Result};
use crate::field::{galois_subgroup_mod, AbelianField};
use crate::integrality::{is_integral_in, CirculantSpec};
use crate::limits::Limits;
use crate::orbit::orbit_partition;
use crate::residue::UnitSubgroup;

/// Exact integrality test for a fixed `(n, K)`; reuse it across many sets.
#[derive(Debug, Clone)]
pub struct ExactOracle {
    order: u64,
    galois: UnitSubgroup,
}

impl ExactOracle {
    pub fn new(n: u64, field: &AbelianField, limits: &Limits) -> Result<Self> {
        limits.check_exact_order(n)?;
        let galois = galois_subgroup_mod(field, n, limits)?;
        Ok(ExactOracle { order: n, galois })
    }

    /// `H_n`, the automorphisms of `Q(zeta_n)` that fix `K ∩ Q(zeta_n)`.
    pub fn galois_subgroup(&self) -> &UnitSubgroup {
        &self.galois
    }

    pub fn is_integral(&self, spec: &CirculantSpec) -> Result<bool> {
        if spec.order() != self.order {
            return Err(Error::OrderMismatch {
                left: spec.order(),
                right: self.order,
            });
        }
        let n = self.order;
        for r in 0..n {
            let lambda = eigenvalue(n, spec.connection_set(), r)?;
            for &a in self.galois.elements() {
                if a <= 1 {
                    continue;
                }
                if !cyc_equal(&galois_apply(a as i64, &lambda)?, &lambda)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// True iff every eigenvalue of `D(n, S)` lies in `K`, decided by exact Galois fixed points.
pub fn oracle_is_integral(spec: &CirculantSpec, field: &AbelianField, limits: &Limits) -> Result<bool> {
    ExactOracle::new(spec.order(), field, limits)?.is_integral(spec)
}

/// `lambda_r` for `r = 0..n` in double precision.
pub fn numeric_spectrum(spec: &CirculantSpec) -> Vec<Complex64> {
    let n = spec.order();
    let step = std::f64::consts::TAU / n as f64;
    (0..n)
        .map(|r| {
            spec.connection_set()
                .iter()
                .map(|&s| Complex64::from_polar(1.0, step * ((r * s) % n) as f64))
                .sum()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lattice {
    RationalIntegers,
    GaussianIntegers,
}

impl Lattice {
    /// The ring of integers of `K` when it has a floating-point membership test.
    pub fn for_field(field: &AbelianField, limits: &Limits) -> Result<Lattice> {
        match field.degree() {
            1 => Ok(Lattice::RationalIntegers),
            2 if galois_subgroup_mod(field, 4, limits)?.order() == 1 => Ok(Lattice::GaussianIntegers),
            _ => Err(Error::UnsupportedLattice(field.to_string())),
        }
    }

    fn distance(self, z: Complex64) -> f64 {
        let dre = (z.re - z.re.round()).abs();
        let dim = match self {
            Lattice::RationalIntegers => z.im.abs(),
            Lattice::GaussianIntegers => (z.im - z.im.round()).abs(),
        };
        dre.max(dim)
    }
}

/// True iff every numeric eigenvalue is within `tol` of the lattice (max-norm).
pub fn numeric_lattice_check(spec: &CirculantSpec, lattice: Lattice, tol: f64) -> bool {
    assert!(tol > 0.0, "tolerance must be positive");
    numeric_spectrum(spec).into_iter().all(|z| lattice.distance(z) <= tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
    Lemma1,
}

/// One disagreement found by a verification run.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Mismatch {
    #[serde(rename = "S")]
    pub set: Vec<u64>,
    pub expected: bool,
    pub got: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub n: u64,
    pub field: String,
    pub mode: Mode,
    pub cases_checked: u64,
    /// Sorted lexicographically by set.
    pub mismatches: Vec<Mismatch>,
    pub seed: Option<u64>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.cases_checked > 0
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("VerificationReport", 7)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("field", &self.field)?;
        s.serialize_field("mode", &self.mode)?;
        s.serialize_field("cases", &self.cases_checked)?;
        s.serialize_field("mismatches", &self.mismatches)?;
        s.serialize_field("seed", &self.seed)?;
        s.serialize_field("elapsed_ms", &(self.elapsed.as_millis() as u64))?;
        s.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// Every subset of `{1, ..., n-1}`.
    Exhaustive,
    /// `count` subsets drawn from `n - 1` fair bits each, from a seeded ChaCha8 stream.
    Sample { count: u64, seed: u64 },
}

/// Connection sets visited by a sweep, in visiting order.
pub fn sweep_sets(n: u64, mode: SweepMode, limits: &Limits) -> Result<Vec<CirculantSpec>> {
    if n < 2 {
        return Err(Error::DegenerateOrder(n));
    }
    match mode {
        SweepMode::Exhaustive => {
            if n > limits.exhaustive_order || n > 63 {
                return Err(Error::LimitExceeded {
                    what: "exhaustive order",
                    value: n,
                    limit: limits.exhaustive_order.min(63),
                });
            }
            Ok((0u64..1 << (n - 1)).map(|mask| subset_from_bits(n, |s| mask >> (s - 1) & 1 == 1)).collect())
        }
        SweepMode::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..count)
                .map(|_| {
                    let bits: Vec<bool> = (1..n).map(|_| rng.gen::<bool>()).collect();
                    subset_from_bits(n, |s| bits[(s - 1) as usize])
                })
                .collect())
        }
    }
}

fn subset_from_bits(n: u64, mut keep: impl FnMut(u64) -> bool) -> CirculantSpec {
    let set: Vec<u64> = (1..n).filter(|&s| keep(s)).collect();
    CirculantSpec::new(n, set.into_iter().map(|s| s as i64)).expect("subset of [1, n) is valid")
}

fn seed_of(mode: SweepMode) -> Option<u64> {
    match mode {
        SweepMode::Exhaustive => None,
        SweepMode::Sample { seed, .. } => Some(seed),
    }
}

/// Compares the orbit-partition verdict with the exact oracle on every swept set.
pub fn cross_verify(n: u64, field: &AbelianField, mode: SweepMode, limits: &Limits) -> Result<VerificationReport> {
    let start = Instant::now();
    let sets = sweep_sets(n, mode, limits)?;
    let partition = orbit_partition(n, field, limits)?;
    let oracle = ExactOracle::new(n, field, limits)?;
    let mut mismatches = Vec::new();
    for spec in &sets {
        let expected = oracle.is_integral(spec)?;
        let got = is_integral_in(spec, &partition)?.integral;
        if expected != got {
            mismatches.push(Mismatch {
                set: spec.connection_set().to_vec(),
                expected,
                got,
                detail: None,
            });
        }
    }
    mismatches.sort();
    Ok(VerificationReport {
        n,
        field: field.to_string(),
        mode: Mode::Exact,
        cases_checked: sets.len() as u64,
        mismatches,
        seed: seed_of(mode),
        elapsed: start.elapsed(),
    })
}

/// Compares the floating-point lattice test with the exact oracle.
pub fn numeric_verify(
    n: u64,
    field: &AbelianField,
    mode: SweepMode,
    tol: f64,
    limits: &Limits,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let lattice = Lattice::for_field(field, limits)?;
    let sets = sweep_sets(n, mode, limits)?;
    let oracle = ExactOracle::new(n, field, limits)?;
    let mut mismatches = Vec::new();
    for spec in &sets {
        let expected = oracle.is_integral(spec)?;
        let got = numeric_lattice_check(spec, lattice, tol);
        if expected != got {
            mismatches.push(Mismatch {
                set: spec.connection_set().to_vec(),
                expected,
                got,
                detail: None,
            });
        }
    }
    mismatches.sort();
    Ok(VerificationReport {
        n,
        field: field.to_string(),
        mode: Mode::Numeric,
        cases_checked: sets.len() as u64,
        mismatches,
        seed: seed_of(mode),
        elapsed: start.elapsed(),
    })
}

/// Checks that each block's image under `gamma_st = zeta_n^(st)` has entries fixed
/// by `H_n` (so it lies in `F^(n-1)`), and that the block indicator vectors are
/// nonzero and pairwise orthogonal.
pub fn lemma1_check(n: u64, field: &AbelianField, limits: &Limits) -> Result<VerificationReport> {
    let start = Instant::now();
    let partition = orbit_partition(n, field, limits)?;
    let oracle = ExactOracle::new(n, field, limits)?;
    let blocks = partition.blocks();
    let mut cases = 0u64;
    let mut mismatches = Vec::new();

    for block in blocks {
        for s in 1..n {
            cases += 1;
            let entry = eigenvalue(n, &block.members, s)?;
            for &a in oracle.galois_subgroup().elements() {
                if !cyc_equal(&galois_apply(a as i64, &entry)?, &entry)? {
                    mismatches.push(Mismatch {
                        set: block.members.clone(),
                        expected: true,
                        got: false,
                        detail: Some(format!("entry s={s} moved by a={a}")),
                    });
                    break;
                }
            }
        }
    }

    for (i, left) in blocks.iter().enumerate() {
        for right in &blocks[i + 1..] {
            cases += 1;
            let dot = left.members.iter().filter(|x| right.members.binary_search(x).is_ok()).count();
            if dot != 0 || left.members.is_empty() || right.members.is_empty() {
                mismatches.push(Mismatch {
                    set: left.members.clone(),
                    expected: true,
                    got: false,
                    detail: Some(format!("not orthogonal to {:?}", right.members)),
                });
            }
        }
    }
    mismatches.sort();
    Ok(VerificationReport {
        n,
        field: field.to_string(),
        mode: Mode::Lemma1,
        cases_checked: cases,
        mismatches,
        seed: None,
        elapsed: start.elapsed(),
    })
}
