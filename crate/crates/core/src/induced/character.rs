//! Finite-order characters `μ₂` of the norm-one group `E¹`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::padic::{CycScalar, ExtElem, PrecisionContext};

/// Upper bound on `p^{2·level}` residue pairs enumerated when building a table.
const MAX_ENUMERATION: u64 = 1 << 22;

/// A character of `E¹` trivial on `E¹ ∩ (1 + p_E^level)`.
///
/// The quotient `E¹ / (E¹ ∩ (1 + p_E^level))` is cyclic of order
/// `(q+1)·q^{level-1}`; the character sends a fixed generator to `ζ_m^exponent`.
#[derive(Clone, Debug)]
pub struct CharacterMu2 {
    level: u32,
    modulus: u64,
    order: u32,
    exponent: u32,
    conductor: u32,
    /// Residue pair of an element modulo `p^level` to its discrete logarithm.
    log: HashMap<(u64, u64), u64>,
    group_order: u64,
}

impl CharacterMu2 {
    pub fn trivial() -> Self {
        Self {
            level: 0,
            modulus: 1,
            order: 1,
            exponent: 0,
            conductor: 0,
            log: HashMap::new(),
            group_order: 1,
        }
    }

    /// A faithful character of `E¹ / (E¹ ∩ (1 + p_E^c))`, hence of conductor exactly `c`.
    pub fn of_conductor(ctx: &PrecisionContext, c: u32) -> Result<Self> {
        if c == 0 {
            return Ok(Self::trivial());
        }
        let h = (ctx.q() + 1) * ctx.q().pow(c - 1);
        let order = u32::try_from(h).map_err(|_| Error::UnsupportedRange(format!("character order {h}")))?;
        Self::new(ctx, c, order, 1, Some(c))
    }

    /// The character of level `level` sending the table generator to `ζ_order^exponent`.
    ///
    /// `order` must divide the order of the quotient group. When
    /// `declared_conductor` is given it is checked against the value table.
    pub fn new(
        ctx: &PrecisionContext,
        level: u32,
        order: u32,
        exponent: u32,
        declared_conductor: Option<u32>,
    ) -> Result<Self> {
        if level == 0 {
            let chi = Self::trivial();
            return match declared_conductor {
                Some(c) if c != 0 => Err(Error::InvalidParams(format!(
                    "declared conductor {c} but the character is trivial"
                ))),
                _ => Ok(chi),
            };
        }
        if level > ctx.precision() {
            return Err(Error::UnsupportedRange(format!("character level {level}")));
        }
        let p = ctx.p();
        let modulus = p.pow(level);
        if modulus.saturating_mul(modulus) > MAX_ENUMERATION {
            return Err(Error::UnsupportedRange(format!(
                "character table modulo {p}^{level} is too large"
            )));
        }
        let group_order = (p + 1) * p.pow(level - 1);
        if order == 0 || group_order % order as u64 != 0 {
            return Err(Error::InvalidParams(format!(
                "character order {order} does not divide {group_order}"
            )));
        }
        let eps = ctx.eps() % modulus;
        let mul = |(a, b): (u64, u64), (c, d): (u64, u64)| -> (u64, u64) {
            let m = modulus as u128;
            let (a, b, c, d) = (a as u128, b as u128, c as u128, d as u128);
            (
                ((a * c + eps as u128 * b % m * d) % m) as u64,
                ((a * d + b * c) % m) as u64,
            )
        };
        let elements: Vec<(u64, u64)> = (0..modulus)
            .flat_map(|a| (0..modulus).map(move |b| (a, b)))
            .filter(|&(a, b)| {
                let m = modulus as u128;
                let n = (a as u128 * a as u128 % m + m - eps as u128 * (b as u128 * b as u128 % m) % m) % m;
                n == 1 % m
            })
            .collect();
        if elements.len() as u64 != group_order {
            return Err(Error::Inconsistency(format!(
                "found {} norm-one residues, expected {group_order}",
                elements.len()
            )));
        }
        let mut log = HashMap::new();
        for &g in &elements {
            log.clear();
            let mut x = (1 % modulus, 0);
            for k in 0..group_order {
                if log.insert(x, k).is_some() {
                    break;
                }
                x = mul(x, g);
            }
            if log.len() as u64 == group_order {
                break;
            }
        }
        if log.len() as u64 != group_order {
            return Err(Error::Inconsistency("norm-one residues are not cyclic".into()));
        }
        let mut chi = Self {
            level,
            modulus,
            order,
            exponent: exponent % order,
            conductor: 0,
            log,
            group_order,
        };
        chi.conductor = chi.conductor_from_table(ctx);
        if let Some(c) = declared_conductor {
            if c != chi.conductor {
                return Err(Error::InvalidParams(format!(
                    "declared conductor {c} but the value table has conductor {}",
                    chi.conductor
                )));
            }
        }
        Ok(chi)
    }

    fn value_at_log(&self, k: u64) -> CycScalar {
        let e = (self.exponent as u64 * k) % self.order as u64;
        CycScalar::root_of_unity(self.order, e as i64)
    }

    fn is_trivial_at_log(&self, k: u64) -> bool {
        (self.exponent as u64 * k) % self.order as u64 == 0
    }

    /// Least `n` such that the table is trivial on all residues `≡ 1 mod p^n`.
    fn conductor_from_table(&self, ctx: &PrecisionContext) -> u32 {
        (0..=self.level)
            .find(|&n| {
                let m = ctx.p().pow(n);
                self.log
                    .iter()
                    .filter(|((a, b), _)| a % m == 1 % m && b % m == 0)
                    .all(|(_, &k)| self.is_trivial_at_log(k))
            })
            .unwrap_or(self.level)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_trivial(&self) -> bool {
        self.conductor == 0
    }

    /// Order `m` of the cyclotomic field the values live in.
    pub fn value_order(&self) -> u32 {
        self.order
    }

    /// Order of the quotient group the table is defined on.
    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// `μ₂(β)` for a norm-one unit `β`.
    pub fn eval(&self, beta: &ExtElem) -> Result<CycScalar> {
        if self.level == 0 || self.conductor == 0 {
            return Ok(CycScalar::one());
        }
        let key = beta.residue(self.level)?;
        let k = self.log.get(&key).ok_or_else(|| {
            Error::Domain(format!(
                "μ₂ evaluated at {beta}, which is not a norm-one unit modulo p^{}",
                self.level
            ))
        })?;
        debug_assert!(key.0 < self.modulus && key.1 < self.modulus);
        Ok(self.value_at_log(*k))
    }

    /// All values on the quotient group, for table checks.
    pub fn values(&self) -> impl Iterator<Item = ((u64, u64), CycScalar)> + '_ {
        self.log.iter().map(|(&r, &k)| (r, self.value_at_log(k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::sample::random_norm_one;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn conductors() {
        let c = PrecisionContext::new(3, 24).unwrap();
        assert_eq!(CharacterMu2::trivial().conductor(), 0);
        let chi = CharacterMu2::of_conductor(&c, 1).unwrap();
        assert_eq!(chi.group_order(), 4);
        assert_eq!(chi.conductor(), 1);
        let chi2 = CharacterMu2::of_conductor(&c, 2).unwrap();
        assert_eq!(chi2.group_order(), 12);
        assert_eq!(chi2.conductor(), 2);
        // cubing kills the order-4 part, leaving a character of conductor 2
        assert_eq!(CharacterMu2::new(&c, 2, 12, 4, None).unwrap().conductor(), 2);
        // a character of order dividing 4 factors through level 1
        assert_eq!(CharacterMu2::new(&c, 2, 12, 3, None).unwrap().conductor(), 1);
        assert!(CharacterMu2::new(&c, 2, 12, 3, Some(2)).is_err());
        assert!(CharacterMu2::new(&c, 1, 3, 1, None).is_err());
    }

    #[test]
    fn multiplicative() {
        let c = PrecisionContext::new(5, 24).unwrap();
        let chi = CharacterMu2::of_conductor(&c, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = random_norm_one(&c, &mut rng);
            let y = random_norm_one(&c, &mut rng);
            assert_eq!(chi.eval(&(x * y)).unwrap(), chi.eval(&x).unwrap() * chi.eval(&y).unwrap());
        }
    }

    #[test]
    fn orthogonality() {
        let c = PrecisionContext::new(3, 24).unwrap();
        let chi = CharacterMu2::of_conductor(&c, 1).unwrap();
        let s: CycScalar = chi.values().map(|(_, v)| v).sum();
        assert!(s.is_zero());
    }
}
