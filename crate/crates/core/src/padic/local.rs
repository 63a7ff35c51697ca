//! Truncated elements of `F = Q_p` with per-element residual precision.
//!
//! A non-zero element is `ϖ^val · u` where the unit `u` is known modulo
//! `p^prec`. Cancellation in a sum lowers the remaining precision; a sum that
//! cancels every known digit becomes a *vanished* element `O(ϖ^abs)`, which
//! compares equal to zero but refuses valuation queries.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::context::PrecisionContext;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Repr {
    Zero,
    Unit {
        val: i32,
        unit: u64,
        prec: u32,
        ctx: PrecisionContext,
    },
    Vanished {
        abs: i32,
    },
}

#[derive(Clone, Copy, Debug)]
pub struct LocalElem(Repr);

/// Equality at the available precision: the difference is zero to every known digit.
impl PartialEq for LocalElem {
    fn eq(&self, other: &Self) -> bool {
        (*self - *other).is_zero()
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "unit expected");
    t0.rem_euclid(m as i128) as u64
}

impl LocalElem {
    pub const ZERO: LocalElem = LocalElem(Repr::Zero);

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn one(ctx: &PrecisionContext) -> Self {
        Self::from_i64(ctx, 1)
    }

    /// An integer, known to the full working precision.
    pub fn from_i64(ctx: &PrecisionContext, n: i64) -> Self {
        if n == 0 {
            return Self::ZERO;
        }
        let p = ctx.p() as i128;
        let mut m = n as i128;
        let mut val = 0;
        while m % p == 0 {
            m /= p;
            val += 1;
        }
        let modulus = ctx.modulus(ctx.precision()) as i128;
        LocalElem(Repr::Unit {
            val,
            unit: m.rem_euclid(modulus) as u64,
            prec: ctx.precision(),
            ctx: *ctx,
        })
    }

    pub fn from_ratio(ctx: &PrecisionContext, num: i64, den: i64) -> Result<Self> {
        let d = Self::from_i64(ctx, den).inv()?;
        Ok(Self::from_i64(ctx, num) * d)
    }

    /// `ϖ^k` exactly.
    pub fn pi_pow(ctx: &PrecisionContext, k: i32) -> Self {
        Self::one(ctx).scale_by_pi_power(k)
    }

    /// The element `O(ϖ^abs)`: zero to the given absolute precision.
    pub fn vanished(abs: i32) -> Self {
        LocalElem(Repr::Vanished { abs })
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.0, Repr::Zero)
    }

    /// Zero at the available precision (exactly zero or vanished).
    pub fn is_zero(&self) -> bool {
        !matches!(self.0, Repr::Unit { .. })
    }

    /// Valuation; `None` is the valuation of exact zero.
    pub fn val(&self) -> Result<Option<i32>> {
        match self.0 {
            Repr::Zero => Ok(None),
            Repr::Unit { val, .. } => Ok(Some(val)),
            Repr::Vanished { abs } => Err(Error::PrecisionExhausted(format!(
                "valuation of O(ϖ^{abs}) is undecidable"
            ))),
        }
    }

    /// Decides `val(self) >= k`, failing only when the digits needed are gone.
    pub fn val_at_least(&self, k: i32) -> Result<bool> {
        match self.0 {
            Repr::Zero => Ok(true),
            Repr::Unit { val, .. } => Ok(val >= k),
            Repr::Vanished { abs } if abs >= k => Ok(true),
            Repr::Vanished { abs } => Err(Error::PrecisionExhausted(format!(
                "cannot decide val >= {k} for O(ϖ^{abs})"
            ))),
        }
    }

    /// Absolute precision: the element is known modulo `ϖ^abs`.
    pub fn abs_precision(&self) -> Option<i32> {
        match self.0 {
            Repr::Zero => None,
            Repr::Unit { val, prec, .. } => Some(val + prec as i32),
            Repr::Vanished { abs } => Some(abs),
        }
    }

    /// Unit part and its precision, for non-zero elements.
    pub fn unit_part(&self) -> Option<(u64, u32)> {
        match self.0 {
            Repr::Unit { unit, prec, .. } => Some((unit, prec)),
            _ => None,
        }
    }

    pub fn scale_by_pi_power(&self, k: i32) -> Self {
        match self.0 {
            Repr::Zero => Self::ZERO,
            Repr::Unit { val, unit, prec, ctx } => LocalElem(Repr::Unit {
                val: val + k,
                unit,
                prec,
                ctx,
            }),
            Repr::Vanished { abs } => Self::vanished(abs + k),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match self.0 {
            Repr::Zero => Err(Error::DivisionByZero("inverse of exact zero".into())),
            Repr::Vanished { abs } => Err(Error::PrecisionExhausted(format!(
                "inverse of O(ϖ^{abs})"
            ))),
            Repr::Unit { val, unit, prec, ctx } => Ok(LocalElem(Repr::Unit {
                val: -val,
                unit: inv_mod(unit, ctx.modulus(prec)),
                prec,
                ctx,
            })),
        }
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(*self * rhs.inv()?)
    }

    /// Residue modulo `p^k` of an integral element, as an integer in `[0, p^k)`.
    pub fn residue(&self, ctx: &PrecisionContext, k: u32) -> Result<u64> {
        if k == 0 {
            return Ok(0);
        }
        match self.0 {
            Repr::Zero => Ok(0),
            Repr::Vanished { abs } if abs >= k as i32 => Ok(0),
            Repr::Vanished { abs } => Err(Error::PrecisionExhausted(format!(
                "residue mod ϖ^{k} of O(ϖ^{abs})"
            ))),
            Repr::Unit { val, unit, prec, .. } => {
                if val < 0 {
                    return Err(Error::Domain(format!("residue of non-integral element (val {val})")));
                }
                let val = val as u32;
                if val >= k {
                    return Ok(0);
                }
                if val + prec < k {
                    return Err(Error::PrecisionExhausted(format!(
                        "residue mod ϖ^{k} needs more than {} digits",
                        val + prec
                    )));
                }
                let m = ctx.modulus(k);
                Ok(mulmod(unit % m, ctx.modulus(val), m))
            }
        }
    }

    fn ctx(&self) -> Option<PrecisionContext> {
        match self.0 {
            Repr::Unit { ctx, .. } => Some(ctx),
            _ => None,
        }
    }
}

impl Add for LocalElem {
    type Output = LocalElem;

    fn add(self, rhs: LocalElem) -> LocalElem {
        match (self.0, rhs.0) {
            (Repr::Zero, _) => rhs,
            (_, Repr::Zero) => self,
            (Repr::Vanished { abs: a }, Repr::Vanished { abs: b }) => Self::vanished(a.min(b)),
            (Repr::Vanished { abs }, Repr::Unit { val, unit, prec, ctx })
            | (Repr::Unit { val, unit, prec, ctx }, Repr::Vanished { abs }) => {
                if val >= abs {
                    Self::vanished(abs)
                } else {
                    let prec = prec.min((abs - val) as u32);
                    LocalElem(Repr::Unit {
                        val,
                        unit: unit % ctx.modulus(prec),
                        prec,
                        ctx,
                    })
                }
            }
            (
                Repr::Unit { val: v1, unit: u1, prec: p1, ctx },
                Repr::Unit { val: v2, unit: u2, prec: p2, .. },
            ) => {
                let v = v1.min(v2);
                let abs = (v1 + p1 as i32).min(v2 + p2 as i32);
                let width = (abs - v) as u32;
                let m = ctx.modulus(width);
                let lift = |u: u64, shift: u32| -> u64 {
                    if shift >= width {
                        0
                    } else {
                        mulmod(u % m, ctx.modulus(shift), m)
                    }
                };
                let s = (lift(u1, (v1 - v) as u32) + lift(u2, (v2 - v) as u32)) % m;
                if s == 0 {
                    return Self::vanished(abs);
                }
                let mut s = s;
                let mut k = 0u32;
                while s % ctx.p() == 0 {
                    s /= ctx.p();
                    k += 1;
                }
                let prec = width - k;
                LocalElem(Repr::Unit {
                    val: v + k as i32,
                    unit: s % ctx.modulus(prec),
                    prec,
                    ctx,
                })
            }
        }
    }
}

impl Neg for LocalElem {
    type Output = LocalElem;

    fn neg(self) -> LocalElem {
        match self.0 {
            Repr::Unit { val, unit, prec, ctx } => {
                let m = ctx.modulus(prec);
                LocalElem(Repr::Unit {
                    val,
                    unit: (m - unit % m) % m,
                    prec,
                    ctx,
                })
            }
            _ => self,
        }
    }
}

impl Sub for LocalElem {
    type Output = LocalElem;

    fn sub(self, rhs: LocalElem) -> LocalElem {
        self + (-rhs)
    }
}

impl Mul for LocalElem {
    type Output = LocalElem;

    fn mul(self, rhs: LocalElem) -> LocalElem {
        match (self.0, rhs.0) {
            (Repr::Zero, _) | (_, Repr::Zero) => Self::ZERO,
            (Repr::Vanished { abs: a }, Repr::Vanished { abs: b }) => Self::vanished(a + b),
            (Repr::Vanished { abs }, Repr::Unit { val, .. })
            | (Repr::Unit { val, .. }, Repr::Vanished { abs }) => Self::vanished(abs + val),
            (
                Repr::Unit { val: v1, unit: u1, prec: p1, ctx },
                Repr::Unit { val: v2, unit: u2, prec: p2, .. },
            ) => {
                let prec = p1.min(p2);
                let m = ctx.modulus(prec);
                LocalElem(Repr::Unit {
                    val: v1 + v2,
                    unit: mulmod(u1 % m, u2 % m, m),
                    prec,
                    ctx,
                })
            }
        }
    }
}

impl<'a> Add<&'a LocalElem> for &'a LocalElem {
    type Output = LocalElem;
    fn add(self, rhs: &LocalElem) -> LocalElem {
        *self + *rhs
    }
}

impl<'a> Mul<&'a LocalElem> for &'a LocalElem {
    type Output = LocalElem;
    fn mul(self, rhs: &LocalElem) -> LocalElem {
        *self * *rhs
    }
}

impl fmt::Display for LocalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Repr::Zero => write!(f, "0"),
            Repr::Vanished { abs } => write!(f, "O(p^{abs})"),
            Repr::Unit { val, unit, prec, ctx } => {
                // signed representative is easier to read for small integers
                let m = ctx.modulus(prec);
                let signed = if unit > m / 2 { unit as i128 - m as i128 } else { unit as i128 };
                if val == 0 {
                    write!(f, "{signed}")
                } else {
                    write!(f, "{signed}*p^{val}")
                }
            }
        }
    }
}

impl LocalElem {
    /// Context of a non-zero element, if it carries one.
    pub fn context(&self) -> Option<PrecisionContext> {
        self.ctx()
    }
}
