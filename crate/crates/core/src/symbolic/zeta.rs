//! Rational functions in `X = q^{-2s}` with coefficients in the parameter field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::poly::{Var, Q};
use super::ratfn::ParamScalar;
use crate::error::{Error, Result};

/// A Laurent polynomial `Σ c_k X^{low + k}` with no zero coefficients at either end.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LPoly {
    low: i32,
    coeffs: Vec<ParamScalar>,
}

impl LPoly {
    pub fn new(low: i32, coeffs: Vec<ParamScalar>) -> Self {
        let mut p = Self { low, coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self { low: 0, coeffs: vec![] }
    }

    pub fn constant(c: ParamScalar) -> Self {
        Self::new(0, vec![c])
    }

    pub fn monomial(c: ParamScalar, k: i32) -> Self {
        Self::new(k, vec![c])
    }

    /// `1 − c·X`.
    pub fn one_minus(c: &ParamScalar) -> Self {
        Self::new(0, vec![ParamScalar::one(), -c])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    /// Highest exponent; `low` for the zero polynomial.
    pub fn high(&self) -> i32 {
        self.low + self.coeffs.len().max(1) as i32 - 1
    }

    /// Number of stored coefficients, i.e. `high − low + 1` for non-zero values.
    pub fn span(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: i32) -> ParamScalar {
        let i = k - self.low;
        if i < 0 {
            return ParamScalar::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(ParamScalar::zero)
    }

    /// `(exponent, coefficient)` pairs with non-zero coefficient, in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &ParamScalar)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i32, c))
    }

    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    fn map_coeffs(&self, f: impl Fn(&ParamScalar) -> Result<ParamScalar>) -> Result<Self> {
        Ok(Self::new(self.low, self.coeffs.iter().map(f).collect::<Result<_>>()?))
    }

    pub fn eval(&self, x: &ParamScalar) -> Result<ParamScalar> {
        let mut acc = ParamScalar::zero();
        for (k, c) in self.terms() {
            acc = &acc + &(c * &x.pow(k as i64)?);
        }
        Ok(acc)
    }

    /// Polynomial division; both operands must have `low ≥ 0`.
    fn divrem(&self, d: &LPoly) -> Result<(LPoly, LPoly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero("polynomial division by zero".into()));
        }
        let dense = |p: &LPoly| -> Vec<ParamScalar> {
            let mut v = vec![ParamScalar::zero(); p.low.max(0) as usize];
            v.extend(p.coeffs.iter().cloned());
            v
        };
        let mut r = dense(self);
        let dv = dense(d);
        let dd = dv.len() - 1;
        let lead_inv = dv[dd].inv()?;
        if r.len() <= dd {
            return Ok((LPoly::zero(), LPoly::new(0, r)));
        }
        let mut q = vec![ParamScalar::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in dv.iter().enumerate() {
                r[i + j] = &r[i + j] - &(&c * dj);
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((LPoly::new(0, q), LPoly::new(0, r)))
    }

    fn monic(&self) -> Result<Self> {
        match self.coeffs.last() {
            Some(c) => Ok(self.scale(&c.inv()?)),
            None => Ok(Self::zero()),
        }
    }

    /// Rational coefficients after substituting `point`, or `None` if the
    /// leading coefficient vanishes or a coefficient is undefined there.
    fn image_at(&self, point: &[(Var, Q)]) -> Option<Vec<Q>> {
        let image: Vec<Q> = self
            .coeffs
            .iter()
            .map(|c| c.specialize_all(point).ok().and_then(|s| s.to_rational()))
            .collect::<Option<_>>()?;
        (!image.last()?.is_zero()).then_some(image)
    }

    /// Whether some integer specialization of the parameters shows `a` and `b`
    /// coprime; `false` means "unknown".
    fn coprime_at_a_point(a: &LPoly, b: &LPoly) -> bool {
        const POINTS: [[i64; 4]; 3] = [[3, 5, 7, 11], [-2, 13, 4, -9], [17, -6, 19, 23]];
        for p in POINTS {
            let point: Vec<(Var, Q)> = Var::ALL.into_iter().zip(p).map(|(v, x)| (v, Q::from_integer(x.into()))).collect();
            let (Some(mut x), Some(mut y)) = (a.image_at(&point), b.image_at(&point)) else {
                continue;
            };
            while !y.is_empty() {
                // x mod y over Q
                while x.len() >= y.len() {
                    let c = x.last().expect("non-empty") / y.last().expect("non-empty");
                    let shift = x.len() - y.len();
                    for (j, yj) in y.iter().enumerate() {
                        x[shift + j] -= &c * yj;
                    }
                    x.pop();
                    while x.last().is_some_and(|t| t.is_zero()) {
                        x.pop();
                    }
                }
                std::mem::swap(&mut x, &mut y);
            }
            return x.len() == 1;
        }
        false
    }

    /// Monic gcd of two polynomials with `low ≥ 0` and non-zero constant term in `b`.
    fn gcd(a: &LPoly, b: &LPoly) -> Result<LPoly> {
        if Self::coprime_at_a_point(a, b) {
            return Ok(LPoly::constant(ParamScalar::one()));
        }
        let mut x = a.monic()?;
        let mut y = b.monic()?;
        while !y.is_zero() {
            let (_, r) = x.divrem(&y)?;
            x = y;
            y = r.monic()?;
        }
        Ok(x)
    }
}

impl<'a> Add<&'a LPoly> for &'a LPoly {
    type Output = LPoly;
    fn add(self, rhs: &LPoly) -> LPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        LPoly::new(low, (low..=high).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a LPoly> for &'a LPoly {
    type Output = LPoly;
    fn sub(self, rhs: &LPoly) -> LPoly {
        self + &(-rhs)
    }
}

impl Neg for &LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        LPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<'a> Mul<&'a LPoly> for &'a LPoly {
    type Output = LPoly;
    fn mul(self, rhs: &LPoly) -> LPoly {
        if self.is_zero() || rhs.is_zero() {
            return LPoly::zero();
        }
        let mut out = vec![ParamScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        LPoly::new(self.low + rhs.low, out)
    }
}

/// A reduced quotient of Laurent polynomials in `X`.
///
/// Canonical form: the denominator is a polynomial with constant term 1, and
/// numerator and denominator have no common factor. Equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZetaRational {
    num: LPoly,
    den: LPoly,
}

impl ZetaRational {
    pub fn new(num: LPoly, den: LPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero(format!("({num:?})/0")));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        // move the X-power of the denominator into the numerator
        let num = num.shift(-den.low);
        let den = den.shift(-den.low);
        let c0 = den.coeffs[0].inv()?;
        let (mut num, mut den) = (num.scale(&c0), den.scale(&c0));
        if den.span() > 1 && !num.is_monomial() {
            let n0 = num.shift(-num.low);
            let g = LPoly::gcd(&n0, &den)?;
            if g.span() > 1 {
                let (qn, rn) = n0.divrem(&g)?;
                let (qd, rd) = den.divrem(&g)?;
                if !rn.is_zero() || !rd.is_zero() {
                    return Err(Error::Inconsistency("gcd does not divide".into()));
                }
                let c0 = qd.coeffs[0].inv()?;
                num = qn.shift(num.low).scale(&c0);
                den = qd.scale(&c0);
            }
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: LPoly) -> Self {
        Self { num: p, den: LPoly::constant(ParamScalar::one()) }
    }

    pub fn zero() -> Self {
        Self::from_poly(LPoly::zero())
    }

    pub fn one() -> Self {
        Self::constant(ParamScalar::one())
    }

    pub fn constant(c: ParamScalar) -> Self {
        Self::from_poly(LPoly::constant(c))
    }

    /// `c·X^k`.
    pub fn monomial(c: ParamScalar, k: i32) -> Self {
        Self::from_poly(LPoly::monomial(c, k))
    }

    pub fn x() -> Self {
        Self::monomial(ParamScalar::one(), 1)
    }

    /// `1/(1 − c·X)`.
    pub fn geometric(c: &ParamScalar) -> Self {
        Self { num: LPoly::constant(ParamScalar::one()), den: LPoly::one_minus(c) }
    }

    pub fn num(&self) -> &LPoly {
        &self.num
    }

    pub fn den(&self) -> &LPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.span() == 1
    }

    /// Whether the value is `c·X^k` with `c ≠ 0`.
    pub fn is_monomial(&self) -> bool {
        self.is_laurent_polynomial() && self.num.is_monomial()
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero("rational function division by zero".into()));
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// `self / d` computed factorwise: the numerator of `d` must divide the
    /// numerator of `self` and likewise for the denominators.
    pub fn divide_exact(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero("rational function division by zero".into()));
        }
        let exact = |a: &LPoly, b: &LPoly| -> Result<LPoly> {
            let (q, r) = a.shift(-a.low).divrem(&b.shift(-b.low))?;
            if !r.is_zero() {
                return Err(Error::NotDivisible(format!("({self}) by ({d})")));
            }
            Ok(q.shift(a.low - b.low))
        };
        if self.is_zero() {
            return Ok(Self::zero());
        }
        Self::new(exact(&self.num, &d.num)?, exact(&self.den, &d.den)?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Coefficients of `X^0, …, X^order` of the power series at `X = 0`.
    pub fn series_expand(&self, order: usize) -> Result<Vec<ParamScalar>> {
        if self.num.low < 0 && !self.num.is_zero() {
            return Err(Error::PoleAtZero(self.to_string()));
        }
        // the denominator has constant term 1: s_n = num_n − Σ_{j≥1} den_j s_{n−j}
        let mut s: Vec<ParamScalar> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.num.coeff(n as i32);
            for j in 1..self.den.span().min(n + 1) {
                let dj = &self.den.coeffs[j];
                if !dj.is_zero() {
                    acc = &acc - &(dj * &s[n - j]);
                }
            }
            s.push(acc);
        }
        Ok(s)
    }

    /// The truncated polynomial `Σ_{i ≤ n} c_i X^i`.
    pub fn from_series(coeffs: &[ParamScalar]) -> Self {
        Self::from_poly(LPoly::new(0, coeffs.to_vec()))
    }

    fn map_coeffs(&self, f: impl Fn(&ParamScalar) -> Result<ParamScalar>) -> Result<Self> {
        Self::new(self.num.map_coeffs(&f)?, self.den.map_coeffs(&f)?)
    }

    /// Substitutes `X ↦ q^{-2}X^{-1}`, i.e. `s ↦ 1 − s`.
    pub fn reflect(&self, q: &ParamScalar) -> Result<Self> {
        let q2inv = q.pow(-2)?;
        let flip = |p: &LPoly| -> Result<LPoly> {
            let hi = p.high();
            let mut coeffs = Vec::with_capacity(p.span());
            for k in (p.low..=hi).rev() {
                coeffs.push(&p.coeff(k) * &q2inv.pow(k as i64)?);
            }
            Ok(LPoly::new(-hi, coeffs))
        };
        Self::new(flip(&self.num)?, flip(&self.den)?)
    }

    pub fn specialize(&self, v: Var, value: &Q) -> Result<Self> {
        self.map_coeffs(|c| c.specialize(v, value))
    }

    pub fn specialize_all(&self, values: &[(Var, Q)]) -> Result<Self> {
        self.map_coeffs(|c| c.specialize_all(values))
    }

    pub fn eval(&self, x: &ParamScalar) -> Result<ParamScalar> {
        self.num.eval(x)?.try_div(&self.den.eval(x)?)
    }

    /// For `1/P(X)`: the polynomial `P`. Fails for other shapes.
    pub fn inverse_polynomial(&self) -> Result<LPoly> {
        match self.num.coeffs.as_slice() {
            [c] if self.num.low == 0 => Ok(self.den.scale(&c.inv()?)),
            _ => Err(Error::Form(format!("{self} is not of the form 1/P(X)"))),
        }
    }
}

/// Whether `f` divides `g` as L-factors: both of the form `1/P`, and `P_f | P_g`,
/// i.e. `f/g` is a Laurent polynomial.
pub fn divides(f: &ZetaRational, g: &ZetaRational) -> Result<bool> {
    f.inverse_polynomial()?;
    g.inverse_polynomial()?;
    Ok(f.try_div(g)?.is_laurent_polynomial())
}

impl<'a> Add<&'a ZetaRational> for &'a ZetaRational {
    type Output = ZetaRational;
    fn add(self, rhs: &ZetaRational) -> ZetaRational {
        if self.den == rhs.den {
            return ZetaRational::new(&self.num + &rhs.num, self.den.clone()).expect("non-zero denominator");
        }
        ZetaRational::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
            .expect("non-zero denominator")
    }
}

impl<'a> Sub<&'a ZetaRational> for &'a ZetaRational {
    type Output = ZetaRational;
    fn sub(self, rhs: &ZetaRational) -> ZetaRational {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ZetaRational> for &'a ZetaRational {
    type Output = ZetaRational;
    fn mul(self, rhs: &ZetaRational) -> ZetaRational {
        ZetaRational::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("non-zero denominator")
    }
}

impl Neg for &ZetaRational {
    type Output = ZetaRational;
    fn neg(self) -> ZetaRational {
        ZetaRational { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (k, c)) in self.terms().enumerate() {
            let xpart = match k {
                0 => String::new(),
                1 => "X".to_string(),
                k => format!("X^{k}"),
            };
            let (neg, body) = if c.is_atomic() {
                let neg = c.is_negative_atom();
                let abs = if neg { -c } else { c.clone() };
                let body = match (abs.is_one(), xpart.is_empty()) {
                    (true, false) => xpart,
                    (_, true) => abs.to_string(),
                    (false, false) => format!("{abs}*{xpart}"),
                };
                (neg, body)
            } else if xpart.is_empty() {
                (false, format!("({c})"))
            } else {
                (false, format!("({c})*{xpart}"))
            };
            match (n, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

/// Canonical rendering: `num` for Laurent polynomials, otherwise `(num)/(den)`,
/// with terms in increasing powers of `X`.
impl fmt::Display for ZetaRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> ParamScalar {
        ParamScalar::from_i64(n)
    }

    #[test]
    fn geometric_series() {
        let z = ZetaRational::geometric(&int(1));
        assert_eq!(z.series_expand(3).unwrap(), vec![int(1); 4]);
        assert_eq!(z.to_string(), "(1)/(1 - X)");
    }

    #[test]
    fn reflection_of_x() {
        let q = ParamScalar::q();
        let r = ZetaRational::x().reflect(&q).unwrap();
        assert_eq!(r, ZetaRational::monomial(q.pow(-2).unwrap(), -1));
        let z = ZetaRational::geometric(&ParamScalar::a());
        assert_eq!(z.reflect(&q).unwrap().reflect(&q).unwrap(), z);
    }

    #[test]
    fn cancels_parametric_common_factors() {
        let (a, q, nu) = (ParamScalar::a(), ParamScalar::q(), ParamScalar::nu());
        let shared = &LPoly::one_minus(&(&a * &q)) * &LPoly::one_minus(&nu.try_div(&q).unwrap());
        let num = &shared * &LPoly::one_minus(&q);
        let den = &shared * &LPoly::one_minus(&a);
        let z = ZetaRational::new(num, den).unwrap();
        let expected = ZetaRational::new(LPoly::one_minus(&q), LPoly::one_minus(&a)).unwrap();
        assert_eq!(z, expected);
        assert_eq!(z.den(), &LPoly::one_minus(&a));
    }

    #[test]
    fn exact_division_and_reduction() {
        let a = ZetaRational::geometric(&int(1));
        let b = ZetaRational::geometric(&int(2));
        let ab = &a * &b;
        assert_eq!(ab.divide_exact(&a).unwrap(), b);
        assert!(matches!(a.divide_exact(&ab), Err(Error::NotDivisible(_))));
        assert_eq!(ab.try_div(&a).unwrap(), b);
        assert!(divides(&a, &ab).unwrap());
        assert!(!divides(&b, &ZetaRational::geometric(&int(3))).unwrap());
        let cancel = ZetaRational::new(LPoly::one_minus(&int(1)), &LPoly::one_minus(&int(1)) * &LPoly::one_minus(&int(5)))
            .unwrap();
        assert_eq!(cancel, ZetaRational::geometric(&int(5)));
    }

    #[test]
    fn pole_at_zero() {
        let z = ZetaRational::monomial(int(1), -1);
        assert!(matches!(z.series_expand(2), Err(Error::PoleAtZero(_))));
    }
}
