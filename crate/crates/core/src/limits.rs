use crate::error::{Error, Result};

/// Resource bounds shared by every operation that can blow up on large inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest modulus (including `lcm(conductor, g)`) the residue machinery will touch.
    pub modulus: u64,
    /// Largest order `n` accepted by exact cyclotomic arithmetic.
    pub exact_order: u64,
    /// Largest number of sets an unbounded enumeration may produce.
    pub enumeration: u64,
    /// Largest `n` accepted by exhaustive verification sweeps.
    pub exhaustive_order: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            modulus: 100_000,
            exact_order: 10_000,
            enumeration: 1 << 20,
            exhaustive_order: 14,
        }
    }
}

impl Limits {
    pub(crate) fn check_modulus(&self, value: u64) -> Result<()> {
        check("modulus", value, self.modulus)
    }

    pub(crate) fn check_exact_order(&self, value: u64) -> Result<()> {
        check("cyclotomic order", value, self.exact_order)
    }
}

fn check(what: &'static str, value: u64, limit: u64) -> Result<()> {
    if value > limit {
        Err(Error::LimitExceeded { what, value, limit })
    } else {
        Ok(())
    }
}
