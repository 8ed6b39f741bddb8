//! Integrality of circulant digraphs: `D(n, S)` is integral over `K` exactly
//! when `S` is a union of blocks of the orbit partition for `(n, K)`.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{field_gaussian, AbelianField};
use crate::limits::Limits;
use crate::orbit::{orbit_partition, r_count, OrbitPartition};

/// A circulant digraph `D(n, S)` with loopless connection set `S ⊆ {1, ..., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirculantSpec {
    order: u64,
    connection_set: Vec<u64>,
}

impl CirculantSpec {
    /// Validates and sorts `set`; repeated elements collapse.
    pub fn new(order: u64, set: impl IntoIterator<Item = i64>) -> Result<Self> {
        if order < 2 {
            return Err(Error::DegenerateOrder(order));
        }
        let mut connection_set = Vec::new();
        for s in set {
            if s == 0 {
                return Err(Error::InvalidSet(
                    "0 is not allowed in S: a loop adds the rational integer 1 to every \
                     eigenvalue and never changes integrality, so connection sets are loopless"
                        .to_string(),
                ));
            }
            if s < 0 || s as u64 >= order {
                return Err(Error::InvalidSet(format!(
                    "{s} is outside [1, {order})"
                )));
            }
            connection_set.push(s as u64);
        }
        connection_set.sort_unstable();
        connection_set.dedup();
        Ok(CirculantSpec {
            order,
            connection_set,
        })
    }

    pub(crate) fn from_sorted(order: u64, connection_set: Vec<u64>) -> Self {
        CirculantSpec {
            order,
            connection_set,
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn connection_set(&self) -> &[u64] {
        &self.connection_set
    }
}

/// A block of the partition that `S` cuts through.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub block: usize,
    pub missing: Vec<u64>,
    pub present: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityVerdict {
    pub integral: bool,
    /// Indices of the blocks whose union is `S`; set iff integral.
    pub block_indices: Option<Vec<usize>>,
    /// The first block `S` meets without containing; set iff not integral.
    pub violation: Option<Violation>,
}

/// The JSON verdict record: `{"n","S","field","integral","blocks","violation"}`.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictRecord<'a> {
    pub n: u64,
    #[serde(rename = "S")]
    pub set: &'a [u64],
    pub field: String,
    pub integral: bool,
    pub blocks: Option<&'a [usize]>,
    pub violation: Option<&'a Violation>,
}

impl IntegralityVerdict {
    pub fn record<'a>(&'a self, spec: &'a CirculantSpec, field: &AbelianField) -> VerdictRecord<'a> {
        VerdictRecord {
            n: spec.order(),
            set: spec.connection_set(),
            field: field.to_string(),
            integral: self.integral,
            blocks: self.block_indices.as_deref(),
            violation: self.violation.as_ref(),
        }
    }
}

/// Decides integrality of `spec` against a prebuilt partition of the same order.
pub fn is_integral_in(spec: &CirculantSpec, partition: &OrbitPartition) -> Result<IntegralityVerdict> {
    if spec.order() != partition.order() {
        return Err(Error::OrderMismatch {
            left: spec.order(),
            right: partition.order(),
        });
    }
    let n = spec.order() as usize;
    let mut in_set = vec![false; n];
    for &s in spec.connection_set() {
        in_set[s as usize] = true;
    }
    let mut touched: Vec<usize> = spec
        .connection_set()
        .iter()
        .map(|&s| partition.locate(s))
        .collect::<Result<_>>()?;
    touched.sort_unstable();
    touched.dedup();
    for &index in &touched {
        let members = &partition.blocks()[index].members;
        let (present, missing): (Vec<u64>, Vec<u64>) =
            members.iter().partition(|&&x| in_set[x as usize]);
        if !missing.is_empty() {
            return Ok(IntegralityVerdict {
                integral: false,
                block_indices: None,
                violation: Some(Violation {
                    block: index,
                    missing,
                    present,
                }),
            });
        }
    }
    Ok(IntegralityVerdict {
        integral: true,
        block_indices: Some(touched),
        violation: None,
    })
}

pub fn is_integral(spec: &CirculantSpec, field: &AbelianField, limits: &Limits) -> Result<IntegralityVerdict> {
    let partition = orbit_partition(spec.order(), field, limits)?;
    is_integral_in(spec, &partition)
}

/// Integrality over `Q(i)`: every eigenvalue is a Gaussian integer.
pub fn is_gauss_integral(spec: &CirculantSpec, limits: &Limits) -> Result<IntegralityVerdict> {
    is_integral(spec, &field_gaussian(), limits)
}

/// `2^r(n, K)`: the number of connection sets on `n` vertices that are integral over `K`.
pub fn count_integral(n: u64, field: &AbelianField, limits: &Limits) -> Result<BigUint> {
    let r = r_count(n, field, limits)?;
    Ok(BigUint::from(1u8) << r)
}

/// Every integral connection set, as a binary counter over canonical block indices
/// (bit `i` selects block `i`). Starts at `∅`, ends at `{1, ..., n-1}`.
#[derive(Debug, Clone)]
pub struct IntegralSets {
    partition: OrbitPartition,
    next: u64,
    end: u64,
}

impl IntegralSets {
    pub fn orbits(&self) -> &OrbitPartition {
        &self.partition
    }

    /// Number of sets still to be produced.
    pub fn remaining(&self) -> u64 {
        self.end - self.next
    }

    /// The set encoded by `mask`, where bit `i` selects block `i`.
    pub fn union_of(&self, mask: u64) -> CirculantSpec {
        let mut set: Vec<u64> = self
            .partition
            .blocks()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i < 64 && mask >> i & 1 == 1)
            .flat_map(|(_, b)| b.members.iter().copied())
            .collect();
        set.sort_unstable();
        CirculantSpec::from_sorted(self.partition.order(), set)
    }
}

impl Iterator for IntegralSets {
    type Item = CirculantSpec;

    fn next(&mut self) -> Option<CirculantSpec> {
        if self.next >= self.end {
            return None;
        }
        let spec = self.union_of(self.next);
        self.next += 1;
        Some(spec)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.remaining()).unwrap_or(usize::MAX);
        (left, Some(left))
    }
}

/// Streams the integral connection sets for `(n, K)`, stopping after `limit` if given.
///
/// Without a limit the full count `2^r` must fit in `limits.enumeration`.
pub fn enumerate_integral(
    n: u64,
    field: &AbelianField,
    limit: Option<u64>,
    limits: &Limits,
) -> Result<IntegralSets> {
    let partition = orbit_partition(n, field, limits)?;
    let r = partition.len() as u64;
    let total = if r < 64 { Some(1u64 << r) } else { None };
    let end = match (limit, total) {
        (Some(l), Some(t)) => l.min(t),
        (Some(l), None) => {
            // only the low 63 block bits can be addressed by a counter
            if l > 1 << 63 {
                return Err(Error::TooManyOrbits {
                    r,
                    budget: limits.enumeration,
                });
            }
            l
        }
        (None, Some(t)) if t <= limits.enumeration => t,
        (None, _) => {
            return Err(Error::TooManyOrbits {
                r,
                budget: limits.enumeration,
            })
        }
    };
    Ok(IntegralSets {
        partition,
        next: 0,
        end,
    })
}
