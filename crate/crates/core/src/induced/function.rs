//! Newforms in `Ind_B^G(μ₁ ⊗ μ₂)` and their evaluation.
//!
//! A function is a finite sum `g ↦ Σ c·f₀(g·h)` of right translates of the
//! base newform `f₀`. The base newform is evaluated through the double coset
//! decomposition `x = b·γ_i·k`: `f₀(x) = |α|_E·μ₁(α)·μ₂(β)·f₀(γ_i)` with
//! `f₀(e) = 1`.

use std::fmt;
use std::ops::{Add, Mul};

use super::character::CharacterMu2;
use crate::error::{Error, Result};
use crate::group::{classify_coset, BorelElt, CosetClass, GroupElt};
use crate::padic::{CycScalar, PrecisionContext};

/// How the base newform is known away from `B·K_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SupportMode {
    /// The newform vanishes off `B·K_n`.
    Supported,
    /// Values on `B·γ_{n-1}·K_n` are an unknown `U_γ`; values elsewhere off
    /// `B·K_n` are not available.
    Partial,
}

#[derive(Clone, Debug)]
pub struct InducedParams {
    /// `μ₁(ϖ)` for the unramified quasi-character `μ₁`.
    pub a: CycScalar,
    pub mu2: CharacterMu2,
    pub level: u32,
    pub support: SupportMode,
}

impl InducedParams {
    pub fn new(a: CycScalar, mu2: CharacterMu2, level: u32, support: SupportMode) -> Result<Self> {
        let params = Self { a, mu2, level, support };
        params.validate_for(0)?;
        Ok(params)
    }

    /// Checks the parameter invariants for residue cardinality `q` (skipped when `q = 0`).
    pub fn validate_for(&self, q: u64) -> Result<()> {
        if self.a.is_zero() {
            return Err(Error::InvalidParams("μ₁(ϖ) must be non-zero".into()));
        }
        if self.level == 0 {
            return Err(Error::InvalidParams("level must be at least 1".into()));
        }
        if self.mu2.conductor() > self.level {
            return Err(Error::InvalidParams(format!(
                "μ₂ has conductor {} above the level {}",
                self.mu2.conductor(),
                self.level
            )));
        }
        if q > 0 {
            let q = CycScalar::from_i64(q as i64);
            let obstruction = &(&(&q * &q) / &self.a) + &q;
            if obstruction.is_zero() {
                return Err(Error::InvalidParams(
                    "q²/μ₁(ϖ) + q = 0: the induced representation has no generic newform here".into(),
                ));
            }
        }
        Ok(())
    }
}

/// `κ₀ + κ₁·U_γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub constant: CycScalar,
    pub gamma_coeff: CycScalar,
}

impl LinearForm {
    pub fn zero() -> Self {
        Self::constant(CycScalar::zero())
    }

    pub fn constant(c: CycScalar) -> Self {
        Self { constant: c, gamma_coeff: CycScalar::zero() }
    }

    pub fn unknown(coeff: CycScalar) -> Self {
        Self { constant: CycScalar::zero(), gamma_coeff: coeff }
    }

    /// The value when no `U_γ` term remains.
    pub fn as_scalar(&self) -> Option<&CycScalar> {
        self.gamma_coeff.is_zero().then_some(&self.constant)
    }

    pub fn substitute(&self, u: &CycScalar) -> CycScalar {
        &self.constant + &(&self.gamma_coeff * u)
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        Self {
            constant: &self.constant * c,
            gamma_coeff: &self.gamma_coeff * c,
        }
    }
}

impl Add for LinearForm {
    type Output = LinearForm;
    fn add(self, rhs: LinearForm) -> LinearForm {
        LinearForm {
            constant: &self.constant + &rhs.constant,
            gamma_coeff: &self.gamma_coeff + &rhs.gamma_coeff,
        }
    }
}

impl Mul<&CycScalar> for LinearForm {
    type Output = LinearForm;
    fn mul(self, rhs: &CycScalar) -> LinearForm {
        self.scale(rhs)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gamma_coeff.is_zero() {
            write!(f, "{}", self.constant)
        } else {
            write!(f, "({}) + ({})*U", self.constant, self.gamma_coeff)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalResult {
    Value(LinearForm),
    /// The base newform was needed at a point where its value is unknown.
    Indeterminate(String),
}

impl EvalResult {
    pub fn value(self) -> Result<LinearForm> {
        match self {
            EvalResult::Value(v) => Ok(v),
            EvalResult::Indeterminate(at) => Err(Error::Indeterminate(at)),
        }
    }

    /// The value as a scalar, failing on indeterminate or `U_γ`-dependent results.
    pub fn scalar(self) -> Result<CycScalar> {
        let v = self.value()?;
        v.as_scalar()
            .cloned()
            .ok_or_else(|| Error::Indeterminate(format!("value depends on the unknown U: {v}")))
    }
}

/// A right-translate combination of the base newform.
#[derive(Clone, Debug)]
pub struct InducedFn {
    params: InducedParams,
    ctx: PrecisionContext,
    translates: Vec<(GroupElt, CycScalar)>,
    effective_level: u32,
    gamma_value: Option<CycScalar>,
}

impl InducedFn {
    /// The base newform `f₀` with `f₀(e) = 1`.
    pub fn newform(ctx: &PrecisionContext, params: InducedParams) -> Result<Self> {
        params.validate_for(ctx.q())?;
        let level = params.level;
        Ok(Self {
            params,
            ctx: *ctx,
            translates: vec![(GroupElt::identity(ctx), CycScalar::one())],
            effective_level: level,
            gamma_value: None,
        })
    }

    /// Replaces the unknown `U_γ` by a known value.
    pub fn with_gamma_value(mut self, u: CycScalar) -> Self {
        self.gamma_value = Some(u);
        self
    }

    pub fn params(&self) -> &InducedParams {
        &self.params
    }

    pub fn ctx(&self) -> &PrecisionContext {
        &self.ctx
    }

    pub fn translates(&self) -> &[(GroupElt, CycScalar)] {
        &self.translates
    }

    pub fn effective_level(&self) -> u32 {
        self.effective_level
    }

    /// `g ↦ Σ_m c_m·self(g·m)` for the given operator terms.
    pub(crate) fn compose(&self, terms: &[(GroupElt, CycScalar)], effective_level: u32) -> Self {
        let mut translates = Vec::with_capacity(terms.len() * self.translates.len());
        for (m, cm) in terms {
            for (h, ch) in &self.translates {
                translates.push((*m * *h, cm * ch));
            }
        }
        Self {
            params: self.params.clone(),
            ctx: self.ctx,
            translates,
            effective_level,
            gamma_value: self.gamma_value.clone(),
        }
    }

    /// `|α|_E·μ₁(α)·μ₂(β)` for a Borel element.
    pub fn borel_factor(&self, b: &BorelElt) -> Result<CycScalar> {
        let v = b.val_alpha()?;
        let q = CycScalar::from_i64(self.ctx.q() as i64);
        let delta = q.pow(-2 * v as i64)?;
        let mu1 = self.params.a.pow(v as i64)?;
        let mu2 = self.params.mu2.eval(&b.beta())?;
        Ok(&(&delta * &mu1) * &mu2)
    }

    fn eval_base(&self, x: &GroupElt) -> Result<EvalResult> {
        let n = self.params.level;
        let w = match classify_coset(x, n)? {
            CosetClass::Coset(w) => w,
            CosetClass::Other => {
                return Ok(match self.params.support {
                    SupportMode::Supported => EvalResult::Value(LinearForm::zero()),
                    SupportMode::Partial => EvalResult::Indeterminate(format!("unclassified point\n{x}")),
                })
            }
        };
        if w.rep_index == n {
            return Ok(EvalResult::Value(LinearForm::constant(self.borel_factor(&w.b)?)));
        }
        Ok(match self.params.support {
            SupportMode::Supported => EvalResult::Value(LinearForm::zero()),
            SupportMode::Partial if w.rep_index + 1 == n => {
                let factor = self.borel_factor(&w.b)?;
                match &self.gamma_value {
                    Some(u) => EvalResult::Value(LinearForm::constant(&factor * u)),
                    None => EvalResult::Value(LinearForm::unknown(factor)),
                }
            }
            SupportMode::Partial => EvalResult::Indeterminate(format!(
                "point in the coset of γ_{} at level {n}\n{x}",
                w.rep_index
            )),
        })
    }

    pub fn eval(&self, g: &GroupElt) -> Result<EvalResult> {
        let mut acc = LinearForm::zero();
        for (h, c) in &self.translates {
            match self.eval_base(&(*g * *h))? {
                EvalResult::Value(v) => acc = acc + v.scale(c),
                ind @ EvalResult::Indeterminate(_) => return Ok(ind),
            }
        }
        Ok(EvalResult::Value(acc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_pow(q: i64, e: i64) -> CycScalar {
        CycScalar::from_i64(q).pow(e).unwrap()
    }

    #[test]
    fn base_values_on_the_torus() {
        let ctx = PrecisionContext::new(3, 24).unwrap();
        let a = CycScalar::from_ratio(-1, 3).unwrap();
        let params = InducedParams::new(a.clone(), CharacterMu2::trivial(), 1, SupportMode::Partial).unwrap();
        let f = InducedFn::newform(&ctx, params).unwrap();
        let e = GroupElt::identity(&ctx);
        assert!(f.eval(&e).unwrap().scalar().unwrap().is_one());
        let z = f.eval(&GroupElt::zeta(&ctx)).unwrap().scalar().unwrap();
        assert_eq!(z, &q_pow(3, -2) * &a);
        let zi = f.eval(&GroupElt::zeta_pow(&ctx, -1)).unwrap().scalar().unwrap();
        assert_eq!(zi, &q_pow(3, 2) / &a);
    }

    #[test]
    fn reducibility_obstruction_is_rejected() {
        let ctx = PrecisionContext::new(3, 24).unwrap();
        // q²/a + q = 0 at a = −q
        let params = InducedParams::new(CycScalar::from_i64(-3), CharacterMu2::trivial(), 1, SupportMode::Partial)
            .unwrap();
        assert!(InducedFn::newform(&ctx, params).is_err());
        assert!(InducedParams::new(CycScalar::zero(), CharacterMu2::trivial(), 1, SupportMode::Partial).is_err());
    }
}
