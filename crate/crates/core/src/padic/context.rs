use crate::error::{Error, Result};

/// Residue characteristic, working precision and the chosen non-square unit.
///
/// `F` is realised as the `p`-adic field, so the residue cardinality `q`
/// equals `p`. Units are stored modulo `p^precision`, which must fit in a
/// machine word with room for a `u128` product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    p: u64,
    eps: u64,
    precision: u32,
}

impl PrecisionContext {
    pub const DEFAULT_PRECISION: u32 = 24;
    pub const MIN_PRECISION: u32 = 4;

    pub fn new(p: u64, precision: u32) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::BadPrime(p));
        }
        let max = max_precision(p);
        if precision < Self::MIN_PRECISION || precision > max {
            return Err(Error::BadPrecision {
                p,
                precision,
                min: Self::MIN_PRECISION,
                max,
            });
        }
        let eps = (2..p)
            .find(|&e| !is_square_mod(e, p))
            .expect("an odd prime has a non-residue");
        Ok(Self { p, eps, precision })
    }

    pub fn with_default_precision(p: u64) -> Result<Self> {
        Self::new(p, Self::DEFAULT_PRECISION)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Residue cardinality of `F`.
    pub fn q(&self) -> u64 {
        self.p
    }

    /// The least positive quadratic non-residue, used as `ε`.
    pub fn eps(&self) -> u64 {
        self.eps
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub(crate) fn modulus(&self, k: u32) -> u64 {
        debug_assert!(k <= self.precision);
        self.p.pow(k)
    }
}

fn max_precision(p: u64) -> u32 {
    let mut k = 0u32;
    let mut acc: u128 = 1;
    while acc * (p as u128) < (1u128 << 63) {
        acc *= p as u128;
        k += 1;
    }
    k
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn is_square_mod(a: u64, p: u64) -> bool {
    (1..p).any(|x| (x * x) % p == a % p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_non_residue() {
        assert_eq!(PrecisionContext::new(3, 24).unwrap().eps(), 2);
        assert_eq!(PrecisionContext::new(5, 24).unwrap().eps(), 2);
        assert_eq!(PrecisionContext::new(7, 20).unwrap().eps(), 3);
        assert_eq!(PrecisionContext::new(11, 16).unwrap().eps(), 2);
    }

    #[test]
    fn rejects_even_and_composite() {
        assert_eq!(PrecisionContext::new(2, 24), Err(Error::BadPrime(2)));
        assert_eq!(PrecisionContext::new(9, 10), Err(Error::BadPrime(9)));
        assert_eq!(PrecisionContext::new(1, 10), Err(Error::BadPrime(1)));
    }

    #[test]
    fn precision_bounds() {
        assert!(PrecisionContext::new(3, 3).is_err());
        assert!(PrecisionContext::new(3, 4).is_ok());
        assert!(PrecisionContext::new(5, 27).is_ok());
        assert!(PrecisionContext::new(5, 28).is_err());
    }
}
