//! Exact scalars in cyclotomic fields `Q(ζ_m)`.
//!
//! An element is a rational polynomial in `ζ_m` of degree `< φ(m)`, reduced
//! modulo the `m`-th cyclotomic polynomial. Operands of different orders are
//! lifted to the least common multiple before combining.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

type Q = BigRational;

#[derive(Clone, Debug)]
pub struct CycScalar {
    m: u32,
    coeffs: Vec<Q>,
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Vec<Q>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<Q>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_poly(n: u32) -> Vec<Q> {
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Φ_d with d | n, d < n
    let mut num = vec![Q::zero(); n as usize + 1];
    num[0] = -Q::one();
    num[n as usize] = Q::one();
    for d in 1..n {
        if n % d == 0 {
            let (q, r) = poly_divrem(&num, &cyclotomic_poly(d));
            debug_assert!(r.iter().all(Zero::is_zero));
            num = q;
        }
    }
    cyclotomic_cache().lock().unwrap().insert(n, num.clone());
    num
}

fn trim(p: &mut Vec<Q>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn poly_divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![Q::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, y) in b.iter().enumerate() {
            r[i + shift] -= &c * y;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn reduce(m: u32, mut p: Vec<Q>) -> Vec<Q> {
    trim(&mut p);
    if m == 1 {
        // Φ_1 = x - 1: evaluate at 1
        let s = p.into_iter().fold(Q::zero(), |acc, c| acc + c);
        return if s.is_zero() { Vec::new() } else { vec![s] };
    }
    let phi = cyclotomic_poly(m);
    if p.len() < phi.len() {
        return p;
    }
    poly_divrem(&p, &phi).1
}

impl CycScalar {
    fn from_parts(m: u32, coeffs: Vec<Q>) -> Self {
        let coeffs = reduce(m, coeffs);
        if coeffs.len() <= 1 {
            Self { m: 1, coeffs }
        } else {
            Self { m, coeffs }
        }
    }

    pub fn zero() -> Self {
        Self { m: 1, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Q::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(Q::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero(format!("{num}/0")));
        }
        Ok(Self::from_rational(Q::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn from_rational(r: Q) -> Self {
        Self::from_parts(1, vec![r])
    }

    /// `ζ_m^k` for a fixed primitive `m`-th root of unity `ζ_m`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!(m > 0, "root of unity of order 0");
        let e = k.rem_euclid(m as i64) as usize;
        let mut c = vec![Q::zero(); e + 1];
        c[e] = Q::one();
        Self::from_parts(m, c)
    }

    /// The order `m` of the cyclotomic field the element is stored in.
    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.m == 1 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn to_rational(&self) -> Option<Q> {
        match self.coeffs.len() {
            0 => Some(Q::zero()),
            1 if self.m == 1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn lift(&self, target: u32) -> Vec<Q> {
        debug_assert_eq!(target % self.m, 0);
        let step = (target / self.m) as usize;
        let mut out = vec![Q::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * step] = c.clone();
        }
        out
    }

    fn common(&self, other: &Self) -> (u32, Vec<Q>, Vec<Q>) {
        let l = self.m.lcm(&other.m);
        (l, self.lift(l), other.lift(l))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("inverse of cyclotomic zero".into()));
        }
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        // extended Euclid: s·a + t·Φ = 1
        let phi = cyclotomic_poly(self.m);
        let (mut r0, mut r1) = (phi, self.coeffs.clone());
        let (mut s0, mut s1) = (Vec::<Q>::new(), vec![Q::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
        }
        if r0.len() != 1 {
            return Err(Error::Inconsistency("non-unit in a cyclotomic field".into()));
        }
        let c = r0[0].recip();
        Ok(Self::from_parts(self.m, s0.into_iter().map(|x| x * &c).collect()))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Ok(acc)
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            return self.coeffs == other.coeffs;
        }
        let (l, a, b) = self.common(other);
        reduce(l, a) == reduce(l, b)
    }
}

impl Eq for CycScalar {}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        let (l, mut a, b) = self.common(rhs);
        if a.len() < b.len() {
            a.resize(b.len(), Q::zero());
        }
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        CycScalar::from_parts(l, a)
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        if self.m == 1 && rhs.m == 1 {
            return match (self.coeffs.first(), rhs.coeffs.first()) {
                (Some(a), Some(b)) => CycScalar::from_rational(a * b),
                _ => CycScalar::zero(),
            };
        }
        let (l, a, b) = self.common(rhs);
        CycScalar::from_parts(l, poly_mul(&a, &b))
    }
}

impl<'a> Div<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    /// Panics on division by zero; use [`CycScalar::try_div`] for a checked version.
    fn div(self, rhs: &CycScalar) -> CycScalar {
        self.try_div(rhs).expect("division by zero")
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for CycScalar {
            type Output = CycScalar;
            fn $f(self, rhs: CycScalar) -> CycScalar {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl std::iter::Sum for CycScalar {
    fn sum<I: Iterator<Item = CycScalar>>(iter: I) -> CycScalar {
        iter.fold(CycScalar::zero(), |acc, x| &acc + &x)
    }
}

fn fmt_rational(r: &Q) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = fmt_rational(&c.abs());
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, c.abs().is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "zeta_{}^{}", self.m, i)?,
                (_, false) => write!(f, "{mag}*zeta_{}^{}", self.m, i)?,
            }
        }
        Ok(())
    }
}

impl CycScalar {
    /// Small rationals as `f64`, for diagnostics only.
    pub fn approx_f64(&self) -> Option<f64> {
        self.to_rational()
            .and_then(|r| Some(r.numer().to_f64()? / r.denom().to_f64()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CycScalar {
        CycScalar::root_of_unity(m, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        let q = |v: &[i64]| v.iter().map(|&x| Q::from_integer(x.into())).collect::<Vec<_>>();
        assert_eq!(cyclotomic_poly(1), q(&[-1, 1]));
        assert_eq!(cyclotomic_poly(3), q(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(4), q(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), q(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), q(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn roots_of_unity() {
        for m in [1u32, 2, 3, 4, 5, 6, 8, 9, 12] {
            let x = z(m, 1);
            assert!(x.pow(m as i64).unwrap().is_one(), "m = {m}");
            let s: CycScalar = (0..m as i64).map(|k| z(m, k)).sum();
            if m > 1 {
                assert!(s.is_zero(), "m = {m}");
            }
        }
        assert_eq!(z(4, 2), CycScalar::from_i64(-1));
        assert_eq!(z(6, 2), z(3, 1));
        assert_eq!(z(6, 3) * z(4, 1), -z(4, 1));
    }

    #[test]
    fn inverse() {
        let x = &CycScalar::from_i64(2) + &z(5, 1);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert!(CycScalar::zero().inv().is_err());
    }

    #[test]
    fn display() {
        let x = &CycScalar::from_ratio(1, 2).unwrap() - &z(3, 1);
        assert_eq!(x.to_string(), "1/2 - zeta_3^1");
        assert_eq!(CycScalar::from_i64(-4).to_string(), "-4");
    }
}
