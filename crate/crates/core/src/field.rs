//! Abelian number fields described by a conductor `m` and the subgroup `H` of
//! `(Z/mZ)* = Gal(Q(zeta_m)/Q)` that fixes them.
//!
//! Only the data needed to intersect `K` with other cyclotomic fields is kept.
//! A field is never canonicalized: `(4, {1})` and `(8, {1, 5})` both describe
//! `Q(i)`, and `==` compares the stored data, not the field itself.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::residue::{euler_phi, subgroup_closure, units_mod, UnitSubgroup};

#[derive(Debug, Clone)]
pub struct AbelianField {
    conductor: u64,
    fixing: UnitSubgroup,
    label: Option<String>,
}

impl PartialEq for AbelianField {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor && self.fixing == other.fixing
    }
}

impl Eq for AbelianField {}

impl AbelianField {
    /// Builds a field from a subgroup of `(Z/mZ)*`, where `m` is the subgroup's modulus.
    pub fn new(fixing: UnitSubgroup) -> Self {
        assert!(fixing.is_valid(), "fixing subgroup violates the subgroup axioms");
        let conductor = fixing.modulus();
        assert_eq!(euler_phi(conductor) % fixing.order() as u64, 0);
        AbelianField {
            conductor,
            fixing,
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn fixing_subgroup(&self) -> &UnitSubgroup {
        &self.fixing
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// `[K : Q] = phi(m) / |H|`.
    pub fn degree(&self) -> u64 {
        euler_phi(self.conductor) / self.fixing.order() as u64
    }
}

impl fmt::Display for AbelianField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(label) => f.write_str(label),
            None => {
                let gens: Vec<String> = self.fixing.elements().iter().map(u64::to_string).collect();
                write!(f, "custom:{}:{}", self.conductor, gens.join(","))
            }
        }
    }
}

pub fn field_rationals() -> AbelianField {
    AbelianField::new(UnitSubgroup::trivial(1)).with_label("Q")
}

pub fn field_gaussian() -> AbelianField {
    AbelianField::new(UnitSubgroup::trivial(4)).with_label("Qi")
}

/// `Q(zeta_m)`.
pub fn field_cyclotomic(m: u64) -> AbelianField {
    assert!(m >= 1, "cyclotomic field order must be positive");
    AbelianField::new(UnitSubgroup::trivial(m)).with_label(format!("cyclo:{m}"))
}

/// `Q(sqrt d)` for squarefree `d` other than 0 and 1.
pub fn field_quadratic(d: i64) -> Result<AbelianField> {
    if d == 0 || d == 1 {
        return Err(Error::DegenerateInput(d));
    }
    if !is_squarefree(d.unsigned_abs()) {
        return Err(Error::NotSquarefree(d));
    }
    let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
    let m = disc.unsigned_abs();
    let elements = units_mod(m)
        .elements()
        .iter()
        .copied()
        .filter(|&a| kronecker_symbol(disc, a as i64) == Ok(1))
        .collect();
    let fixing = UnitSubgroup::from_sorted(m, elements);
    Ok(AbelianField::new(fixing).with_label(format!("sqrt:{d}")))
}

fn is_squarefree(n: u64) -> bool {
    let mut q = 2;
    while q * q <= n {
        if n % (q * q) == 0 {
            return false;
        }
        q += 1;
    }
    true
}

/// The Kronecker symbol `(a|b)`.
pub fn kronecker_symbol(a: i64, b: i64) -> Result<i8> {
    // (2|b) for odd b, indexed by b mod 8
    const TWO: [i8; 8] = [0, 1, 0, -1, 0, -1, 0, 1];

    let (mut a, mut b) = (a as i128, b as i128);
    if b == 0 {
        return match a.abs() {
            0 => Err(Error::BothZero),
            1 => Ok(1),
            _ => Ok(0),
        };
    }
    if a % 2 == 0 && b % 2 == 0 {
        return Ok(0);
    }
    let v = b.trailing_zeros();
    b >>= v;
    let mut k: i8 = if v % 2 == 1 { TWO[(a & 7) as usize] } else { 1 };
    if b < 0 {
        b = -b;
        if a < 0 {
            k = -k;
        }
    }
    loop {
        if a == 0 {
            return Ok(if b > 1 { 0 } else { k });
        }
        let v = a.trailing_zeros();
        a >>= v;
        if v % 2 == 1 {
            k *= TWO[(b & 7) as usize];
        }
        if a & b & 2 != 0 {
            k = -k;
        }
        let r = a.abs();
        a = b % r;
        b = r;
    }
}

/// `H_g`: the subgroup of `(Z/gZ)*` corresponding to `Gal(Q(zeta_g) / K ∩ Q(zeta_g))`.
///
/// Enumerates `(Z/LZ)*` for `L = lcm(m, g)`, keeps the residues lying over `H`,
/// and reduces them modulo `g`. `phi(g) / |H_g|` is the degree of `K ∩ Q(zeta_g)`.
pub fn galois_subgroup_mod(field: &AbelianField, g: u64, limits: &Limits) -> Result<UnitSubgroup> {
    assert!(g >= 1, "galois_subgroup_mod needs g >= 1");
    limits.check_modulus(g)?;
    let m = field.conductor;
    let l = m.lcm(&g);
    limits.check_modulus(l)?;
    if g == 1 {
        return Ok(UnitSubgroup::trivial(1));
    }
    if m == 1 {
        return Ok(units_mod(g));
    }
    let mut mask = vec![false; g as usize];
    for a in 1..l {
        if a.gcd(&l) == 1 && field.fixing.contains(a % m) {
            mask[(a % g) as usize] = true;
        }
    }
    Ok(UnitSubgroup::from_mask(g, &mask))
}

impl FromStr for AbelianField {
    type Err = Error;

    /// Grammar: `Q`, `Qi`, `sqrt:<d>`, `cyclo:<m>`, `custom:<m>:<g1,g2,...>`.
    fn from_str(spec: &str) -> Result<Self> {
        let bad = |reason: String| Error::FieldSpec {
            spec: spec.to_string(),
            reason,
        };
        let spec_trim = spec.trim();
        let mut parts = spec_trim.splitn(3, ':');
        let head = parts.next().unwrap_or_default();
        let arg = parts.next();
        let rest = parts.next();
        match (head, arg, rest) {
            ("Q", None, None) => Ok(field_rationals()),
            ("Qi", None, None) => Ok(field_gaussian()),
            ("sqrt", Some(d), None) => {
                let d: i64 = d
                    .trim()
                    .parse()
                    .map_err(|e| bad(format!("`{d}` is not an integer: {e}")))?;
                field_quadratic(d)
            }
            ("cyclo", Some(m), None) => {
                let m = parse_modulus(m).map_err(bad)?;
                Ok(field_cyclotomic(m))
            }
            ("custom", Some(m), Some(gens)) => {
                let m = parse_modulus(m).map_err(bad)?;
                let gens = gens
                    .split(',')
                    .map(str::trim)
                    .filter(|g| !g.is_empty())
                    .map(|g| {
                        g.parse::<i64>()
                            .map_err(|e| bad(format!("generator `{g}`: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let fixing = subgroup_closure(m, &gens)?;
                Ok(AbelianField::new(fixing).with_label(spec_trim))
            }
            _ => Err(bad(
                "expected one of Q, Qi, sqrt:<d>, cyclo:<m>, custom:<m>:<g1,g2,...>".to_string(),
            )),
        }
    }
}

fn parse_modulus(text: &str) -> std::result::Result<u64, String> {
    match text.trim().parse::<u64>() {
        Ok(0) => Err("modulus must be positive".to_string()),
        Ok(m) => Ok(m),
        Err(e) => Err(format!("`{text}` is not a positive integer: {e}")),
    }
}
