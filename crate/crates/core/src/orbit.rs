//! The Galois-orbit partition of `{1, ..., n-1}`.
//!
//! Each divisor class `G_n(p) = p * (Z/gZ)*` (with `g = n/p`) is split into the
//! orbits of `x' -> a x' mod g` for `a` in `H_g`. Over `Q` every class is a single
//! orbit; over `Q(zeta_n)` every orbit is a singleton.

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{galois_subgroup_mod, AbelianField};
use crate::limits::Limits;
use crate::residue::{euler_phi, mul_mod, proper_divisors, units_mod};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub p: u64,
    pub members: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct OrbitPartition {
    order: u64,
    field: AbelianField,
    blocks: Vec<Block>,
    // block index of each residue; slot 0 unused
    owner: Vec<usize>,
}

impl OrbitPartition {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn field(&self) -> &AbelianField {
        &self.field
    }

    /// Blocks in canonical order: ascending divisor, then ascending least member.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing `x`.
    pub fn locate(&self, x: u64) -> Result<usize> {
        if x == 0 || x >= self.order {
            return Err(Error::OutOfRange {
                value: x as i64,
                n: self.order,
            });
        }
        Ok(self.owner[x as usize])
    }

    /// Re-checks the partition invariants from scratch.
    pub fn is_valid(&self, limits: &Limits) -> Result<bool> {
        let n = self.order;
        let mut count = vec![0u32; n as usize];
        for b in &self.blocks {
            if b.members.is_empty() || b.members.windows(2).any(|w| w[0] >= w[1]) {
                return Ok(false);
            }
            for &x in &b.members {
                if x == 0 || x >= n || num_integer::gcd(x, n) != b.p {
                    return Ok(false);
                }
                count[x as usize] += 1;
            }
        }
        if count[1..].iter().any(|&c| c != 1) {
            return Ok(false);
        }
        for p in proper_divisors(n)? {
            let h = galois_subgroup_mod(&self.field, n / p, limits)?;
            let with_p: Vec<&Block> = self.blocks.iter().filter(|b| b.p == p).collect();
            if with_p.iter().any(|b| b.members.len() != h.order())
                || with_p.len() as u64 != euler_phi(n / p) / h.order() as u64
            {
                return Ok(false);
            }
        }
        let keys: Vec<(u64, u64)> = self.blocks.iter().map(|b| (b.p, b.members[0])).collect();
        Ok(keys.windows(2).all(|w| w[0] < w[1]))
    }
}

impl Serialize for OrbitPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("OrbitPartition", 3)?;
        s.serialize_field("n", &self.order)?;
        s.serialize_field("field", &self.field.to_string())?;
        s.serialize_field("blocks", &self.blocks)?;
        s.end()
    }
}

pub fn orbit_partition(n: u64, field: &AbelianField, limits: &Limits) -> Result<OrbitPartition> {
    let divisors = proper_divisors(n)?;
    limits.check_modulus(n)?;
    let mut blocks = Vec::new();
    let mut owner = vec![usize::MAX; n as usize];
    for p in divisors {
        let g = n / p;
        let h = galois_subgroup_mod(field, g, limits)?;
        let mut seen = vec![false; g as usize];
        for &start in units_mod(g).elements() {
            if seen[start as usize] {
                continue;
            }
            let mut orbit: Vec<u64> = h.elements().iter().map(|&a| mul_mod(a, start, g)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            assert_eq!(orbit.len(), h.order(), "H_{g} does not act freely on units mod {g}");
            let index = blocks.len();
            let members: Vec<u64> = orbit
                .into_iter()
                .map(|x| {
                    seen[x as usize] = true;
                    owner[(p * x) as usize] = index;
                    p * x
                })
                .collect();
            blocks.push(Block { p, members });
        }
    }
    Ok(OrbitPartition {
        order: n,
        field: field.clone(),
        blocks,
        owner,
    })
}

/// `r(n, K) = sum_{p | n, p < n} [K ∩ Q(zeta_{n/p}) : Q]`.
pub fn r_count(n: u64, field: &AbelianField, limits: &Limits) -> Result<u64> {
    let mut total = 0;
    for p in proper_divisors(n)? {
        let g = n / p;
        let h = galois_subgroup_mod(field, g, limits)?;
        total += euler_phi(g) / h.order() as u64;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{field_cyclotomic, field_gaussian, field_quadratic, field_rationals};
    use crate::residue::gcd_class;

    fn lim() -> Limits {
        Limits::default()
    }

    fn members(part: &OrbitPartition) -> Vec<Vec<u64>> {
        part.blocks().iter().map(|b| b.members.clone()).collect()
    }

    #[test]
    fn six_over_rationals() {
        let part = orbit_partition(6, &field_rationals(), &lim()).unwrap();
        assert_eq!(members(&part), vec![vec![1, 5], vec![2, 4], vec![3]]);
        assert_eq!(part.blocks().iter().map(|b| b.p).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(part.locate(3).unwrap(), 2);
        assert!(part.is_valid(&lim()).unwrap());
    }

    #[test]
    fn eight_over_gaussians() {
        let part = orbit_partition(8, &field_gaussian(), &lim()).unwrap();
        assert_eq!(
            members(&part),
            vec![vec![1, 5], vec![3, 7], vec![2], vec![6], vec![4]]
        );
        assert_eq!(part.locate(7).unwrap(), 1);
        assert_eq!(part.locate(1).unwrap(), 0);
        assert!(matches!(part.locate(8), Err(Error::OutOfRange { .. })));
        assert!(matches!(part.locate(0), Err(Error::OutOfRange { .. })));
        assert_eq!(r_count(8, &field_gaussian(), &lim()).unwrap(), 5);
    }

    #[test]
    fn full_cyclotomic_gives_singletons() {
        for n in 2..=40u64 {
            let part = orbit_partition(n, &field_cyclotomic(n), &lim()).unwrap();
            assert_eq!(part.len() as u64, n - 1);
            assert!(part.blocks().iter().all(|b| b.members.len() == 1));
            assert_eq!(r_count(n, &field_cyclotomic(n), &lim()).unwrap(), n - 1);
        }
    }

    #[test]
    fn rationals_recover_divisor_classes() {
        assert_eq!(r_count(12, &field_rationals(), &lim()).unwrap(), 5);
        for n in 2..=120u64 {
            let part = orbit_partition(n, &field_rationals(), &lim()).unwrap();
            let classes: Vec<Vec<u64>> = proper_divisors(n)
                .unwrap()
                .into_iter()
                .map(|p| gcd_class(n, p).unwrap())
                .collect();
            assert_eq!(members(&part), classes, "n = {n}");
        }
    }

    #[test]
    fn degenerate_order_rejected() {
        assert_eq!(
            orbit_partition(1, &field_rationals(), &lim()).unwrap_err(),
            Error::DegenerateOrder(1)
        );
    }

    #[test]
    fn every_partition_is_valid_and_counted() {
        let fields = [
            field_rationals(),
            field_gaussian(),
            field_quadratic(2).unwrap(),
            field_quadratic(-3).unwrap(),
            field_quadratic(5).unwrap(),
            field_cyclotomic(8),
            field_cyclotomic(9),
        ];
        for k in &fields {
            for n in 2..=80u64 {
                let part = orbit_partition(n, k, &lim()).unwrap();
                assert!(part.is_valid(&lim()).unwrap(), "{k}, n = {n}");
                assert_eq!(part.len() as u64, r_count(n, k, &lim()).unwrap());
                for x in 1..n {
                    let b = &part.blocks()[part.locate(x).unwrap()];
                    assert!(b.members.contains(&x));
                }
            }
        }
    }

    fn refines(fine: &OrbitPartition, coarse: &OrbitPartition) -> bool {
        fine.blocks().iter().all(|b| {
            let home = coarse.locate(b.members[0]).unwrap();
            b.members.iter().all(|&x| coarse.locate(x).unwrap() == home)
        })
    }

    #[test]
    fn larger_fields_refine_partitions() {
        let pairs = [
            (field_rationals(), field_gaussian()),
            (field_rationals(), field_quadratic(2).unwrap()),
            (field_gaussian(), field_cyclotomic(8)),
            (field_quadratic(2).unwrap(), field_cyclotomic(8)),
            (field_quadratic(-3).unwrap(), field_cyclotomic(3)),
        ];
        for (small, big) in &pairs {
            for n in 2..=30u64 {
                let coarse = orbit_partition(n, small, &lim()).unwrap();
                let fine = orbit_partition(n, big, &lim()).unwrap();
                assert!(refines(&fine, &coarse), "{big} vs {small}, n = {n}");
            }
        }
    }

    #[test]
    fn json_shape() {
        let part = orbit_partition(6, &field_rationals(), &lim()).unwrap();
        let json = serde_json::to_string(&part).unwrap();
        assert_eq!(
            json,
            r#"{"n":6,"field":"Q","blocks":[{"p":1,"members":[1,5]},{"p":2,"members":[2,4]},{"p":3,"members":[3]}]}"#
        );
    }
}
