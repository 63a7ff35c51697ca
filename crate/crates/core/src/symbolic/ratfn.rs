//! Elements of the parameter field `Q(ν, λ, a, q)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{gcd, MPoly, Var, Q};
use crate::error::{Error, Result};
use crate::padic::CycScalar;

/// A reduced fraction of Laurent polynomials.
///
/// Canonical form: the denominator has no monomial factor, is coprime to the
/// numerator and has leading coefficient 1. Equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamScalar {
    num: MPoly,
    den: MPoly,
}

impl ParamScalar {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero(format!("({num})/0")));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let m = den.min_exps();
        let neg: [i32; 4] = std::array::from_fn(|i| -m[i]);
        let mut den = den.shift(&neg);
        let mut num = num.shift(&neg);
        if let Some(c) = den.as_constant() {
            let inv = c.recip();
            return Ok(Self { num: num.scale(&inv), den: MPoly::one() });
        }
        if !num.is_monomial() {
            let g = gcd(&num, &den);
            if !g.is_one() {
                num = num.div_exact(&g)?;
                den = den.div_exact(&g)?;
            }
        }
        let lc = den.leading().expect("non-zero").1.recip();
        Ok(Self { num: num.scale(&lc), den: den.scale(&lc) })
    }

    /// Normalizes a fraction already known to be reduced up to monomials.
    fn from_coprime(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let m = den.min_exps();
        let neg: [i32; 4] = std::array::from_fn(|i| -m[i]);
        let (num, den) = (num.shift(&neg), den.shift(&neg));
        let lc = den.leading().expect("non-zero").1.recip();
        Self { num: num.scale(&lc), den: den.scale(&lc) }
    }

    /// `(an/ad)·(bn/bd)` for reduced inputs, cancelling only across the two fractions.
    fn mul_reduced(an: &MPoly, ad: &MPoly, bn: &MPoly, bd: &MPoly) -> Self {
        if an.is_zero() || bn.is_zero() {
            return Self::zero();
        }
        let g1 = gcd(an, bd);
        let g2 = gcd(bn, ad);
        let q = |p: &MPoly, g: &MPoly| p.div_exact(g).expect("gcd divides");
        Self::from_coprime(&q(an, &g1) * &q(bn, &g2), &q(ad, &g2) * &q(bd, &g1))
    }

    pub fn from_poly(p: MPoly) -> Self {
        Self { num: p, den: MPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(MPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_poly(MPoly::from_i64(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::DivisionByZero(format!("{n}/0")));
        }
        Ok(Self::from_rational(Q::new(n.into(), d.into())))
    }

    pub fn from_rational(r: Q) -> Self {
        Self::from_poly(MPoly::constant(r))
    }

    /// A rational `CycScalar`; scalars outside `Q` are rejected.
    pub fn from_cyc(c: &CycScalar) -> Result<Self> {
        c.to_rational()
            .map(Self::from_rational)
            .ok_or_else(|| Error::Domain(format!("{c} is not rational")))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MPoly::var(v))
    }

    pub fn nu() -> Self {
        Self::var(Var::Nu)
    }

    pub fn lambda() -> Self {
        Self::var(Var::Lambda)
    }

    pub fn a() -> Self {
        Self::var(Var::A)
    }

    pub fn q() -> Self {
        Self::var(Var::Q)
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Whether the value is a Laurent polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_rational(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.to_rational()
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    pub fn uses(&self, v: Var) -> bool {
        self.num.uses(v) || self.den.uses(v)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero("1/0".into()));
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero(format!("({self})/0")));
        }
        if rhs.den.is_one() && rhs.num.is_monomial() {
            let (e, c) = rhs.num.leading().expect("non-zero");
            let inv: [i32; 4] = std::array::from_fn(|i| -e[i]);
            return Ok(Self { num: self.num.shift(&inv).scale(&c.recip()), den: self.den.clone() });
        }
        Ok(Self::mul_reduced(&self.num, &self.den, &rhs.den, &rhs.num))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let k = u32::try_from(k.unsigned_abs())
            .map_err(|_| Error::UnsupportedRange(format!("exponent {k}")))?;
        Ok(Self { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// Substitutes a rational value for `v`.
    pub fn specialize(&self, v: Var, value: &Q) -> Result<Self> {
        if !self.uses(v) {
            return Ok(self.clone());
        }
        Self::new(self.num.specialize(v, value)?, self.den.specialize(v, value)?)
    }

    /// Substitutes the value of a `CycScalar`, which must be rational.
    pub fn specialize_cyc(&self, v: Var, value: &CycScalar) -> Result<Self> {
        let r = value
            .to_rational()
            .ok_or_else(|| Error::Domain(format!("cannot substitute {value} for {}: not rational", v.name())))?;
        self.specialize(v, &r)
    }

    /// Substitutes several values at once.
    pub fn specialize_all(&self, values: &[(Var, Q)]) -> Result<Self> {
        let mut out = self.clone();
        for (v, x) in values {
            out = out.specialize(*v, x)?;
        }
        Ok(out)
    }
}

impl<'a> Add<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: &ParamScalar) -> ParamScalar {
        if self.den.is_one() && rhs.den.is_one() {
            return ParamScalar::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return ParamScalar::new(&self.num + &rhs.num, self.den.clone()).expect("non-zero denominator");
        }
        // only factors of gcd(den, rhs.den) can cancel against the new numerator
        let g = gcd(&self.den, &rhs.den);
        let q = |p: &MPoly, g: &MPoly| p.div_exact(g).expect("gcd divides");
        let (d1, d2) = (q(&self.den, &g), q(&rhs.den, &g));
        let t = &(&self.num * &d2) + &(&rhs.num * &d1);
        if t.is_zero() {
            return ParamScalar::zero();
        }
        let h = gcd(&t, &g);
        ParamScalar::from_coprime(q(&t, &h), &d1 * &q(&rhs.den, &h))
    }
}

impl<'a> Sub<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: &ParamScalar) -> ParamScalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: &ParamScalar) -> ParamScalar {
        if self.den.is_one() && rhs.den.is_one() {
            return ParamScalar::from_poly(&self.num * &rhs.num);
        }
        ParamScalar::mul_reduced(&self.num, &self.den, &rhs.num, &rhs.den)
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<ParamScalar> for ParamScalar {
            type Output = ParamScalar;
            fn $m(self, rhs: ParamScalar) -> ParamScalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        -&self
    }
}

impl From<i64> for ParamScalar {
    fn from(n: i64) -> Self {
        Self::from_i64(n)
    }
}

impl From<Q> for ParamScalar {
    fn from(r: Q) -> Self {
        Self::from_rational(r)
    }
}

impl Zero for ParamScalar {
    fn zero() -> Self {
        ParamScalar::zero()
    }
    fn is_zero(&self) -> bool {
        ParamScalar::is_zero(self)
    }
}

impl One for ParamScalar {
    fn one() -> Self {
        ParamScalar::one()
    }
}

impl ParamScalar {
    /// Whether the rendering is a single signed factor that needs no parentheses
    /// inside a product.
    pub(crate) fn is_atomic(&self) -> bool {
        self.den.is_one() && self.num.len() <= 1
    }

    pub(crate) fn is_negative_atom(&self) -> bool {
        use num_traits::Signed;
        self.is_atomic() && self.num.leading().is_some_and(|(_, c)| c.is_negative())
    }
}

/// `num` when the denominator is 1, otherwise `(num)/(den)`.
impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let q = ParamScalar::q();
        let a = ParamScalar::a();
        // (q²/a + q) = q(q + a)/a
        let t = &(&q * &q).try_div(&a).unwrap() + &q;
        assert_eq!(t.to_string(), "q + a^-1*q^2");
        let back = &t.try_div(&(&q + &a)).unwrap() * &a;
        assert_eq!(back, q);
        let x = (&ParamScalar::nu() - &q).try_div(&(&ParamScalar::nu() - &q)).unwrap();
        assert!(x.is_one());
        assert_eq!(ParamScalar::from_ratio(6, 4).unwrap().to_string(), "3/2");
    }

    #[test]
    fn specialization_clears_denominators() {
        let q = ParamScalar::q();
        let e = (&q - &ParamScalar::one()).try_div(&(&q.pow(2).unwrap() - &ParamScalar::one())).unwrap();
        assert_eq!(e.to_string(), "(1)/(q + 1)");
        let s = e.specialize(Var::Q, &Q::from_integer(3.into())).unwrap();
        assert_eq!(s, ParamScalar::from_ratio(1, 4).unwrap());
    }
}
