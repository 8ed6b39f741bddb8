//! Exact arithmetic in `Z[zeta_n]`.
//!
//! Elements are stored redundantly as `n` integer coefficients of
//! `1, zeta, ..., zeta^(n-1)`. Two elements are equal when their difference
//! is divisible by `Phi_n`, so comparison is the only place a reduction happens.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::residue::mul_mod;

type Poly = Arc<[i64]>;

fn cache() -> &'static RwLock<HashMap<u64, Poly>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Poly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Phi_n`, ascending coefficients.
pub fn cyclotomic_polynomial(n: u64, limits: &Limits) -> Result<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomials are indexed from 1");
    limits.check_exact_order(n)?;
    Ok(phi_cached(n)?.to_vec())
}

pub(crate) fn phi_cached(n: u64) -> Result<Poly> {
    if let Some(p) = cache().read().unwrap().get(&n) {
        return Ok(Arc::clone(p));
    }
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let mut local: HashMap<u64, Poly> = HashMap::new();
    for &d in &divisors {
        let cached = cache().read().unwrap().get(&d).cloned();
        let poly = match cached {
            Some(p) => p,
            None => {
                let below: Vec<&Poly> = divisors
                    .iter()
                    .take_while(|&&e| e < d)
                    .filter(|&&e| d % e == 0)
                    .map(|e| &local[e])
                    .collect();
                let p: Poly = phi_from_smaller(d, &below)?.into();
                // every writer computes the same polynomial, so racing fills are harmless
                cache().write().unwrap().entry(d).or_insert_with(|| Arc::clone(&p));
                p
            }
        };
        local.insert(d, poly);
    }
    Ok(Arc::clone(&local[&n]))
}

/// Divides `x^n - 1` by the product of `Phi_d` over the proper divisors `d` of `n`.
fn phi_from_smaller(n: u64, below: &[&Poly]) -> Result<Vec<i64>> {
    let mut divisor: Vec<i64> = vec![1];
    for p in below {
        divisor = poly_mul(&divisor, p)?;
    }
    let mut numerator = vec![0i64; n as usize + 1];
    numerator[0] = -1;
    numerator[n as usize] = 1;
    let (quotient, remainder) = div_rem_monic(numerator, &divisor)?;
    assert!(
        remainder.iter().all(|&c| c == 0),
        "x^{n} - 1 is not divisible by its lower cyclotomic factors"
    );
    Ok(quotient)
}

pub(crate) fn poly_mul(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let t = x.checked_mul(y).ok_or(Error::ArithmeticOverflow)?;
            out[i + j] = out[i + j].checked_add(t).ok_or(Error::ArithmeticOverflow)?;
        }
    }
    Ok(out)
}

/// Long division by a monic polynomial. Returns `(quotient, remainder)`; the
/// remainder has length `divisor.len() - 1`.
fn div_rem_monic(mut dividend: Vec<i64>, divisor: &[i64]) -> Result<(Vec<i64>, Vec<i64>)> {
    let deg = divisor.len() - 1;
    assert_eq!(divisor[deg], 1, "divisor must be monic");
    if dividend.len() <= deg {
        dividend.resize(deg, 0);
        return Ok((vec![0], dividend));
    }
    let mut quotient = vec![0i64; dividend.len() - deg];
    for top in (deg..dividend.len()).rev() {
        let c = dividend[top];
        if c == 0 {
            continue;
        }
        let shift = top - deg;
        quotient[shift] = c;
        for (j, &d) in divisor.iter().enumerate() {
            let t = c.checked_mul(d).ok_or(Error::ArithmeticOverflow)?;
            let slot = &mut dividend[shift + j];
            *slot = slot.checked_sub(t).ok_or(Error::ArithmeticOverflow)?;
        }
    }
    dividend.truncate(deg);
    Ok((quotient, dividend))
}

/// An element `sum c_j zeta_n^j` of `Z[zeta_n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInteger {
    order: u64,
    coefficients: Vec<i64>,
}

impl CyclotomicInteger {
    pub fn zero(order: u64) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        CyclotomicInteger {
            order,
            coefficients: vec![0; order as usize],
        }
    }

    pub fn constant(order: u64, c: i64) -> Self {
        let mut u = Self::zero(order);
        u.coefficients[0] = c;
        u
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(order: u64, k: u64) -> Self {
        let mut u = Self::zero(order);
        u.coefficients[(k % order) as usize] = 1;
        u
    }

    /// Evaluates the polynomial `sum c_j x^j` at `zeta_n`; exponents fold modulo `n`.
    pub fn from_polynomial(order: u64, poly: &[i64]) -> Result<Self> {
        let mut u = Self::zero(order);
        for (j, &c) in poly.iter().enumerate() {
            u.add_term(j as u64, c)?;
        }
        Ok(u)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// The redundant length-`n` coefficient vector.
    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    /// Adds `c * zeta^k`.
    pub fn add_term(&mut self, k: u64, c: i64) -> Result<()> {
        let slot = &mut self.coefficients[(k % self.order) as usize];
        *slot = slot.checked_add(c).ok_or(Error::ArithmeticOverflow)?;
        Ok(())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        same_order(self, other)?;
        let coefficients = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::ArithmeticOverflow))
            .collect::<Result<_>>()?;
        Ok(CyclotomicInteger {
            order: self.order,
            coefficients,
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_order(self, other)?;
        let mut out = self.clone();
        for (k, &c) in other.coefficients.iter().enumerate() {
            out.add_term(k as u64, c)?;
        }
        Ok(out)
    }

    /// The canonical representative: remainder modulo `Phi_n`, `phi(n)` coefficients.
    pub fn reduced(&self) -> Result<Vec<i64>> {
        let phi = phi_cached(self.order)?;
        let (_, rem) = div_rem_monic(self.coefficients.clone(), &phi)?;
        Ok(rem)
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.reduced()?.iter().all(|&c| c == 0))
    }

    /// Numerical value at `zeta_n = exp(2 pi i / n)`.
    pub fn to_complex(&self) -> Complex64 {
        evaluate(self.order, &self.coefficients)
    }
}

/// Evaluates `sum c_j zeta_n^j` in floating point.
pub(crate) fn evaluate(order: u64, coefficients: &[i64]) -> Complex64 {
    let step = std::f64::consts::TAU / order as f64;
    coefficients
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| Complex64::from_polar(c as f64, step * j as f64))
        .sum()
}

fn same_order(u: &CyclotomicInteger, v: &CyclotomicInteger) -> Result<()> {
    if u.order != v.order {
        return Err(Error::OrderMismatch {
            left: u.order,
            right: v.order,
        });
    }
    Ok(())
}

/// Semantic equality in `Z[zeta_n]`.
pub fn cyc_equal(u: &CyclotomicInteger, v: &CyclotomicInteger) -> Result<bool> {
    u.checked_sub(v)?.is_zero()
}

/// `sigma_a(u)`, where `sigma_a(zeta_n) = zeta_n^a`.
pub fn galois_apply(a: i64, u: &CyclotomicInteger) -> Result<CyclotomicInteger> {
    let n = u.order;
    let a_mod = a.rem_euclid(n as i64) as u64;
    if n > 1 && a_mod.gcd(&n) != 1 {
        return Err(Error::NotAUnit {
            residue: a,
            modulus: n,
        });
    }
    let mut out = CyclotomicInteger::zero(n);
    for (j, &c) in u.coefficients.iter().enumerate() {
        if c != 0 {
            out.add_term(mul_mod(a_mod, j as u64, n), c)?;
        }
    }
    Ok(out)
}

/// `lambda_r = sum_{s in S} zeta_n^(r s)`.
pub fn eigenvalue(n: u64, set: &[u64], r: u64) -> Result<CyclotomicInteger> {
    assert!(n >= 1, "eigenvalue needs n >= 1");
    if r >= n {
        return Err(Error::OutOfRange {
            value: r as i64,
            n,
        });
    }
    let mut out = CyclotomicInteger::zero(n);
    for &s in set {
        if s == 0 || s >= n {
            return Err(Error::OutOfRange {
                value: s as i64,
                n,
            });
        }
        out.add_term(mul_mod(r, s, n), 1)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn phi(n: u64) -> Vec<i64> {
        cyclotomic_polynomial(n, &Limits::default()).unwrap()
    }

    fn zeta(n: u64, k: u64) -> CyclotomicInteger {
        CyclotomicInteger::root_of_unity(n, k)
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(phi(1), vec![-1, 1]);
        assert_eq!(phi(2), vec![1, 1]);
        assert_eq!(phi(4), vec![1, 0, 1]);
        assert_eq!(phi(6), vec![1, -1, 1]);
        assert_eq!(phi(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(phi(7), vec![1; 7]);
    }

    #[test]
    fn phi_105_has_a_minus_two() {
        let p = phi(105);
        assert_eq!(p.len(), 49);
        assert_eq!(p[7], -2);
        assert_eq!(p[41], -2);
        assert_eq!(p.iter().filter(|&&c| c == -2).count(), 2);
    }

    #[test]
    fn limit_is_enforced() {
        let tight = Limits {
            exact_order: 50,
            ..Limits::default()
        };
        assert!(matches!(
            cyclotomic_polynomial(51, &tight),
            Err(Error::LimitExceeded { value: 51, .. })
        ));
    }

    #[test]
    fn equality_examples() {
        let full: CyclotomicInteger = CyclotomicInteger::from_polynomial(7, &[1; 7]).unwrap();
        assert!(cyc_equal(&full, &CyclotomicInteger::zero(7)).unwrap());
        let i_plus_minus_i = zeta(4, 1).checked_add(&zeta(4, 3)).unwrap();
        assert!(cyc_equal(&i_plus_minus_i, &CyclotomicInteger::zero(4)).unwrap());
        assert!(!cyc_equal(&zeta(8, 1), &zeta(8, 3)).unwrap());
        assert_eq!(
            cyc_equal(&zeta(8, 1), &zeta(4, 1)),
            Err(Error::OrderMismatch { left: 8, right: 4 })
        );
    }

    #[test]
    fn galois_examples() {
        let u = CyclotomicInteger::from_polynomial(9, &[3, -1, 0, 2, 0, 0, 0, 5]).unwrap();
        assert_eq!(galois_apply(1, &u).unwrap(), u);
        assert_eq!(galois_apply(7, &zeta(8, 1)).unwrap(), zeta(8, 7));
        let u = zeta(8, 1).checked_add(&zeta(8, 5)).unwrap();
        let expect = zeta(8, 3).checked_add(&zeta(8, 7)).unwrap();
        assert_eq!(galois_apply(3, &u).unwrap(), expect);
        assert_eq!(galois_apply(-1, &zeta(8, 1)).unwrap(), zeta(8, 7));
        assert!(matches!(galois_apply(2, &u), Err(Error::NotAUnit { .. })));
    }

    #[test]
    fn eigenvalue_examples() {
        for n in 2..12u64 {
            let set: Vec<u64> = (1..n).step_by(2).collect();
            let l0 = eigenvalue(n, &set, 0).unwrap();
            assert!(cyc_equal(&l0, &CyclotomicInteger::constant(n, set.len() as i64)).unwrap());
        }
        assert_eq!(eigenvalue(4, &[1], 1).unwrap(), zeta(4, 1));
        let l = eigenvalue(6, &[1, 5], 1).unwrap();
        // zeta_6 + zeta_6^5 reduced mod x^2 - x + 1 is the constant 1
        assert_eq!(l.reduced().unwrap(), vec![1, 0]);
        assert!(cyc_equal(&l, &CyclotomicInteger::constant(6, 1)).unwrap());
        assert!(matches!(eigenvalue(6, &[0], 1), Err(Error::OutOfRange { value: 0, .. })));
        assert!(matches!(eigenvalue(6, &[6], 1), Err(Error::OutOfRange { value: 6, .. })));
        assert!(matches!(eigenvalue(6, &[1], 6), Err(Error::OutOfRange { value: 6, .. })));
    }

    #[test]
    fn cyclotomic_products_and_roots_up_to_200() {
        for n in 1..=200u64 {
            let mut product = vec![1i64];
            for d in (1..=n).filter(|d| n % d == 0) {
                product = poly_mul(&product, &phi(d)).unwrap();
            }
            let mut expect = vec![0i64; n as usize + 1];
            expect[0] = -1;
            expect[n as usize] = 1;
            assert_eq!(product, expect, "n = {n}");

            let p = phi(n);
            assert_eq!(p.len() as u64 - 1, crate::residue::euler_phi(n));
            assert_eq!(*p.last().unwrap(), 1);
            let at_root = CyclotomicInteger::from_polynomial(n, &p).unwrap();
            assert!(at_root.is_zero().unwrap(), "Phi_{n}(zeta_{n}) != 0");
        }
    }

    #[test]
    fn trace_of_loopless_operator_vanishes() {
        for n in 2..=30u64 {
            let set: Vec<u64> = (1..n).filter(|s| s % 3 != 1).collect();
            let mut total = CyclotomicInteger::zero(n);
            for r in 0..n {
                total = total.checked_add(&eigenvalue(n, &set, r).unwrap()).unwrap();
            }
            assert!(total.is_zero().unwrap(), "n = {n}");
        }
    }

    #[test]
    fn reduced_value_matches_numeric_value() {
        for n in 1..=60u64 {
            let u = CyclotomicInteger::from_polynomial(n, &(0..n as i64).map(|j| j * j - 3).collect::<Vec<_>>()).unwrap();
            let direct = u.to_complex();
            let via_reduced = evaluate(n, &u.reduced().unwrap());
            assert!((direct - via_reduced).norm() < 1e-7, "n = {n}");
        }
    }

    fn arb_element(n: u64) -> impl Strategy<Value = CyclotomicInteger> {
        prop::collection::vec(-5i64..=5, n as usize)
            .prop_map(move |c| CyclotomicInteger::from_polynomial(n, &c).unwrap())
    }

    fn arb_case() -> impl Strategy<Value = (u64, CyclotomicInteger, i64, i64)> {
        (2u64..40).prop_flat_map(|n| {
            let units: Vec<i64> = (1..n as i64).filter(|a| (*a as u64).gcd(&n) == 1).collect();
            (
                Just(n),
                arb_element(n),
                prop::sample::select(units.clone()),
                prop::sample::select(units),
            )
        })
    }

    proptest! {
        #[test]
        fn galois_action_composes((n, u, a, b) in arb_case()) {
            let lhs = galois_apply(a, &galois_apply(b, &u).unwrap()).unwrap();
            let rhs = galois_apply((a * b).rem_euclid(n as i64), &u).unwrap();
            prop_assert!(cyc_equal(&lhs, &rhs).unwrap());
        }

        #[test]
        fn galois_action_respects_equality((n, u, a, _b) in arb_case(), k in 0u64..40) {
            // u and u + zeta^k * Phi_n(zeta) are the same element
            let shifted: Vec<i64> = std::iter::repeat_n(0, k as usize).chain(phi(n)).collect();
            let v = u.checked_add(&CyclotomicInteger::from_polynomial(n, &shifted).unwrap()).unwrap();
            prop_assert!(cyc_equal(&u, &v).unwrap());
            prop_assert!(cyc_equal(&galois_apply(a, &u).unwrap(), &galois_apply(a, &v).unwrap()).unwrap());
        }

        #[test]
        fn galois_moves_eigenvalues((n, _u, a, _b) in arb_case(), bits in any::<u64>(), r in 0u64..40) {
            let r = r % n;
            let set: Vec<u64> = (1..n).filter(|s| bits >> s & 1 == 1).collect();
            let moved = galois_apply(a, &eigenvalue(n, &set, r).unwrap()).unwrap();
            let target = eigenvalue(n, &set, mul_mod(a as u64, r, n)).unwrap();
            prop_assert!(cyc_equal(&moved, &target).unwrap());
        }
    }
}
