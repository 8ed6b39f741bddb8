//! Unit groups modulo `n`, their subgroups, and the divisor classes
//! `G_n(p) = { x : 1 <= x < n, gcd(x, n) = p }`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// A subgroup of `(Z/gZ)*`, stored as its sorted elements.
///
/// The trivial group modulo 1 is stored as `[0]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct UnitSubgroup {
    modulus: u64,
    elements: Vec<u64>,
}

impl UnitSubgroup {
    /// Wraps a sorted, deduplicated element list that is already known to be a subgroup.
    pub(crate) fn from_sorted(modulus: u64, elements: Vec<u64>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        UnitSubgroup { modulus, elements }
    }

    pub(crate) fn from_mask(modulus: u64, mask: &[bool]) -> Self {
        if modulus == 1 {
            return Self::trivial(1);
        }
        let elements = mask
            .iter()
            .enumerate()
            .filter_map(|(x, &hit)| hit.then_some(x as u64))
            .collect();
        UnitSubgroup { modulus, elements }
    }

    /// The subgroup `{1}` (or `{0}` when `g = 1`).
    pub fn trivial(modulus: u64) -> Self {
        assert!(modulus >= 1);
        let one = if modulus == 1 { 0 } else { 1 };
        UnitSubgroup {
            modulus,
            elements: vec![one],
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&(x % self.modulus)).is_ok()
    }

    /// Checks every subgroup axiom by brute force: coprimality, identity,
    /// closure under products and inverses.
    pub fn is_valid(&self) -> bool {
        let g = self.modulus;
        if g == 0 || self.elements.is_empty() {
            return false;
        }
        if g == 1 {
            return self.elements == [0];
        }
        let sorted = self.elements.windows(2).all(|w| w[0] < w[1]);
        let units = self.elements.iter().all(|&e| e < g && e.gcd(&g) == 1);
        if !sorted || !units || !self.contains(1) {
            return false;
        }
        let closed = self
            .elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| self.contains(mul_mod(a, b, g))));
        let inverses = self
            .elements
            .iter()
            .all(|&a| self.elements.iter().any(|&b| mul_mod(a, b, g) == 1));
        closed && inverses
    }

    /// The image of this subgroup under reduction modulo a divisor `h` of the modulus.
    pub fn reduce(&self, h: u64) -> UnitSubgroup {
        assert!(h >= 1 && self.modulus % h == 0, "{h} must divide {}", self.modulus);
        if h == 1 {
            return Self::trivial(1);
        }
        let mut mask = vec![false; h as usize];
        for &e in &self.elements {
            mask[(e % h) as usize] = true;
        }
        Self::from_mask(h, &mask)
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Euler's totient by trial division.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi is defined for n >= 1");
    let mut rest = n;
    let mut phi = n;
    let mut q = 2;
    while q * q <= rest {
        if rest % q == 0 {
            while rest % q == 0 {
                rest /= q;
            }
            phi -= phi / q;
        }
        q += 1;
    }
    if rest > 1 {
        phi -= phi / rest;
    }
    phi
}

/// The full unit group `(Z/nZ)*`.
pub fn units_mod(n: u64) -> UnitSubgroup {
    assert!(n >= 1, "units_mod is defined for n >= 1");
    if n == 1 {
        return UnitSubgroup::trivial(1);
    }
    let elements = (1..n).filter(|x| x.gcd(&n) == 1).collect();
    UnitSubgroup::from_sorted(n, elements)
}

/// The smallest subgroup of `(Z/nZ)*` containing `generators`.
pub fn subgroup_closure(n: u64, generators: &[i64]) -> Result<UnitSubgroup> {
    assert!(n >= 1, "subgroup_closure is defined for n >= 1");
    let gens = generators
        .iter()
        .map(|&g| {
            let r = g.rem_euclid(n as i64) as u64;
            if r.gcd(&n) == 1 || n == 1 {
                Ok(r)
            } else {
                Err(Error::NotAUnit {
                    residue: g,
                    modulus: n,
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    if n == 1 {
        return Ok(UnitSubgroup::trivial(1));
    }

    let mut seen = vec![false; n as usize];
    let mut frontier = vec![1u64];
    seen[1] = true;
    while let Some(x) = frontier.pop() {
        for &gen in &gens {
            let y = mul_mod(x, gen, n);
            if !seen[y as usize] {
                seen[y as usize] = true;
                frontier.push(y);
            }
        }
    }
    Ok(UnitSubgroup::from_mask(n, &seen))
}

/// All `p` with `p | n` and `1 <= p < n`, ascending.
pub fn proper_divisors(n: u64) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(Error::DegenerateOrder(n));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d && d != 1 {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// `G_n(p)`: residues in `[1, n)` whose gcd with `n` is exactly `p`.
pub fn gcd_class(n: u64, p: u64) -> Result<Vec<u64>> {
    if p == 0 || p >= n || n % p != 0 {
        return Err(Error::NotADivisor { p, n });
    }
    let g = n / p;
    Ok(units_mod(g).elements().iter().map(|&u| p * u).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn phi_small_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(97), 96);
    }

    #[test]
    fn unit_groups() {
        assert_eq!(units_mod(8).elements(), &[1, 3, 5, 7]);
        assert_eq!(units_mod(7).elements(), &[1, 2, 3, 4, 5, 6]);
        assert_eq!(units_mod(1).elements(), &[0]);
        assert!(units_mod(1).is_valid());
    }

    #[test]
    fn closures() {
        assert_eq!(subgroup_closure(8, &[5]).unwrap().elements(), &[1, 5]);
        assert_eq!(subgroup_closure(12, &[]).unwrap().elements(), &[1]);
        assert_eq!(
            subgroup_closure(7, &[3]).unwrap().elements(),
            &[1, 2, 3, 4, 5, 6]
        );
        assert_eq!(subgroup_closure(8, &[-1]).unwrap().elements(), &[1, 7]);
        assert_eq!(
            subgroup_closure(12, &[4]),
            Err(Error::NotAUnit {
                residue: 4,
                modulus: 12
            })
        );
    }

    #[test]
    fn powers_of_three_mod_seven() {
        // oracle: walk the powers of 3 until they repeat
        let mut powers = vec![];
        let mut x = 1;
        loop {
            powers.push(x);
            x = x * 3 % 7;
            if x == 1 {
                break;
            }
        }
        powers.sort();
        assert_eq!(subgroup_closure(7, &[3]).unwrap().elements(), &powers[..]);
    }

    #[test]
    fn divisors() {
        assert_eq!(proper_divisors(6).unwrap(), vec![1, 2, 3]);
        assert_eq!(proper_divisors(8).unwrap(), vec![1, 2, 4]);
        assert_eq!(proper_divisors(7).unwrap(), vec![1]);
        assert_eq!(proper_divisors(36).unwrap(), vec![1, 2, 3, 4, 6, 9, 12, 18]);
        assert_eq!(proper_divisors(1), Err(Error::DegenerateOrder(1)));
    }

    #[test]
    fn divisor_classes() {
        assert_eq!(gcd_class(6, 2).unwrap(), vec![2, 4]);
        assert_eq!(gcd_class(6, 3).unwrap(), vec![3]);
        assert_eq!(gcd_class(8, 1).unwrap(), vec![1, 3, 5, 7]);
        assert!(matches!(gcd_class(6, 4), Err(Error::NotADivisor { .. })));
        assert!(matches!(gcd_class(6, 6), Err(Error::NotADivisor { .. })));
    }

    #[test]
    fn classes_partition_the_nonzero_residues() {
        for n in 2..=300u64 {
            let mut seen = vec![0u32; n as usize];
            for p in proper_divisors(n).unwrap() {
                let class = gcd_class(n, p).unwrap();
                assert_eq!(class.len() as u64, euler_phi(n / p));
                for x in class {
                    assert_eq!(x.gcd(&n), p);
                    seen[x as usize] += 1;
                }
            }
            assert_eq!(seen[0], 0);
            assert!(seen[1..].iter().all(|&c| c == 1), "n = {n}");
            assert_eq!(units_mod(n).order() as u64, euler_phi(n));
        }
    }

    #[test]
    fn reduction_is_a_subgroup() {
        let h = subgroup_closure(40, &[3, 11]).unwrap();
        for d in [1, 2, 4, 5, 8, 10, 20, 40] {
            assert!(h.reduce(d).is_valid(), "d = {d}");
        }
    }

    proptest! {
        #[test]
        fn closure_satisfies_subgroup_axioms(n in 1u64..120, gens in prop::collection::vec(1i64..500, 0..4)) {
            let units: Vec<i64> = gens.into_iter().filter(|g| (*g as u64).gcd(&n) == 1).collect();
            let h = subgroup_closure(n, &units).unwrap();
            prop_assert!(h.is_valid());
            prop_assert_eq!(euler_phi(n) % h.order() as u64, 0);
            for g in units {
                prop_assert!(h.contains(g.rem_euclid(n as i64) as u64));
            }
        }
    }
}
