//! Elements `a + b√ε` of the unramified quadratic extension `E = F[√ε]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::context::PrecisionContext;
use super::local::LocalElem;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct ExtElem {
    re: LocalElem,
    im: LocalElem,
    ctx: PrecisionContext,
}

impl PartialEq for ExtElem {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im
    }
}

impl ExtElem {
    pub fn new(ctx: &PrecisionContext, re: LocalElem, im: LocalElem) -> Self {
        Self { re, im, ctx: *ctx }
    }

    pub fn zero(ctx: &PrecisionContext) -> Self {
        Self::new(ctx, LocalElem::ZERO, LocalElem::ZERO)
    }

    pub fn one(ctx: &PrecisionContext) -> Self {
        Self::from_local(ctx, LocalElem::one(ctx))
    }

    pub fn from_local(ctx: &PrecisionContext, x: LocalElem) -> Self {
        Self::new(ctx, x, LocalElem::ZERO)
    }

    pub fn from_i64(ctx: &PrecisionContext, n: i64) -> Self {
        Self::from_local(ctx, LocalElem::from_i64(ctx, n))
    }

    pub fn from_ints(ctx: &PrecisionContext, a: i64, b: i64) -> Self {
        Self::new(ctx, LocalElem::from_i64(ctx, a), LocalElem::from_i64(ctx, b))
    }

    pub fn sqrt_eps(ctx: &PrecisionContext) -> Self {
        Self::new(ctx, LocalElem::ZERO, LocalElem::one(ctx))
    }

    /// `ϖ^k`.
    pub fn pi_pow(ctx: &PrecisionContext, k: i32) -> Self {
        Self::from_local(ctx, LocalElem::pi_pow(ctx, k))
    }

    pub fn ctx(&self) -> &PrecisionContext {
        &self.ctx
    }

    pub fn re(&self) -> LocalElem {
        self.re
    }

    pub fn im(&self) -> LocalElem {
        self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.re.is_exact_zero() && self.im.is_exact_zero()
    }

    /// True when the `√ε`-component is exactly zero.
    pub fn in_base_field(&self) -> bool {
        self.im.is_exact_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re, im: -self.im, ctx: self.ctx }
    }

    /// `a² − εb²`, an element of `F`.
    pub fn norm(&self) -> LocalElem {
        let eps = LocalElem::from_i64(&self.ctx, self.ctx.eps() as i64);
        self.re * self.re - eps * self.im * self.im
    }

    /// `2a`, an element of `F`.
    pub fn trace(&self) -> LocalElem {
        self.re + self.re
    }

    /// `min(val a, val b)`; `None` for exact zero.
    pub fn val(&self) -> Result<Option<i32>> {
        let known = |x: &LocalElem| match x.val() {
            Ok(v) => Some(v),
            Err(_) => None,
        };
        match (known(&self.re), known(&self.im)) {
            (Some(a), Some(b)) => Ok(match (a, b) {
                (None, v) | (v, None) => v,
                (Some(a), Some(b)) => Some(a.min(b)),
            }),
            // one component is vanished: the other decides only if it is visibly smaller
            (Some(Some(v)), None) if v < self.im.abs_precision().unwrap_or(i32::MAX) => Ok(Some(v)),
            (None, Some(Some(v))) if v < self.re.abs_precision().unwrap_or(i32::MAX) => Ok(Some(v)),
            _ => Err(Error::PrecisionExhausted(format!("valuation of {self} is undecidable"))),
        }
    }

    /// Valuation of a value that must be non-zero.
    pub fn val_nonzero(&self) -> Result<i32> {
        self.val()?
            .ok_or_else(|| Error::DivisionByZero("valuation of exact zero".into()))
    }

    pub fn val_at_least(&self, k: i32) -> Result<bool> {
        Ok(self.re.val_at_least(k)? && self.im.val_at_least(k)?)
    }

    /// `|x|_E = q^{-2 val x}` as the exponent `-2 val x`; `None` for zero.
    pub fn abs_exponent(&self) -> Result<Option<i32>> {
        Ok(self.val()?.map(|v| -2 * v))
    }

    pub fn scale_by_pi_power(&self, k: i32) -> Self {
        Self {
            re: self.re.scale_by_pi_power(k),
            im: self.im.scale_by_pi_power(k),
            ctx: self.ctx,
        }
    }

    pub fn scale(&self, s: LocalElem) -> Self {
        Self { re: self.re * s, im: self.im * s, ctx: self.ctx }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_exact_zero() {
            return Err(Error::DivisionByZero("inverse of exact zero in E".into()));
        }
        let n = self.norm().inv()?;
        Ok(self.conj().scale(n))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(*self * rhs.inv()?)
    }

    pub fn half(&self) -> Self {
        let h = LocalElem::from_ratio(&self.ctx, 1, 2).expect("p is odd");
        self.scale(h)
    }

    /// Residue classes of both components modulo `p^k`, for integral elements.
    pub fn residue(&self, k: u32) -> Result<(u64, u64)> {
        Ok((self.re.residue(&self.ctx, k)?, self.im.residue(&self.ctx, k)?))
    }
}

impl Add for ExtElem {
    type Output = ExtElem;
    fn add(self, rhs: ExtElem) -> ExtElem {
        ExtElem { re: self.re + rhs.re, im: self.im + rhs.im, ctx: self.ctx }
    }
}

impl Sub for ExtElem {
    type Output = ExtElem;
    fn sub(self, rhs: ExtElem) -> ExtElem {
        ExtElem { re: self.re - rhs.re, im: self.im - rhs.im, ctx: self.ctx }
    }
}

impl Neg for ExtElem {
    type Output = ExtElem;
    fn neg(self) -> ExtElem {
        ExtElem { re: -self.re, im: -self.im, ctx: self.ctx }
    }
}

impl Mul for ExtElem {
    type Output = ExtElem;
    fn mul(self, rhs: ExtElem) -> ExtElem {
        let eps = LocalElem::from_i64(&self.ctx, self.ctx.eps() as i64);
        ExtElem {
            re: self.re * rhs.re + eps * self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
            ctx: self.ctx,
        }
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_exact_zero(), self.im.is_exact_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "({})√ε", self.im),
            (false, false) => write!(f, "{} + ({})√ε", self.re, self.im),
        }
    }
}
