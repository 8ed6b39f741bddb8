//! Integral circulant digraphs over abelian number fields.
//!
//! A circulant digraph `D(n, S)` has eigenvalues `lambda_r = sum_{s in S} zeta_n^(r s)`.
//! It is integral over an abelian field `K` exactly when `S` is a union of blocks of
//! the Galois-orbit partition of `{1, ..., n-1}` built in [`orbit`]. The [`oracle`]
//! module checks that claim independently with exact arithmetic in `Z[zeta_n]`.

pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod integrality;
pub mod limits;
pub mod oracle;
pub mod orbit;
pub mod residue;

pub use cyclotomic::{cyc_equal, cyclotomic_polynomial, eigenvalue, galois_apply, CyclotomicInteger};
pub use error::{Error, Result};
pub use field::{
    field_cyclotomic, field_gaussian, field_quadratic, field_rationals, galois_subgroup_mod,
    kronecker_symbol, AbelianField,
};
pub use integrality::{
    count_integral, enumerate_integral, is_gauss_integral, is_integral, is_integral_in, CirculantSpec,
    IntegralSets, IntegralityVerdict, VerdictRecord, Violation,
};
pub use limits::Limits;
pub use oracle::{
    cross_verify, lemma1_check, numeric_lattice_check, numeric_spectrum, numeric_verify,
    oracle_is_integral, ExactOracle, Lattice, Mismatch, Mode, SweepMode, VerificationReport,
};
pub use orbit::{orbit_partition, r_count, Block, OrbitPartition};
pub use residue::{euler_phi, gcd_class, proper_divisors, subgroup_closure, units_mod, UnitSubgroup};
