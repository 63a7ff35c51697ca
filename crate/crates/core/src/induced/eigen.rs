//! Eigenvalues of the level/Hecke operators and the identities relating them
//! to values of the newform, computed from the translate sums.

use std::fmt;
use std::str::FromStr;

use super::character::CharacterMu2;
use super::function::{InducedFn, InducedParams, LinearForm, SupportMode};
use super::operators::{apply_delta_theta, apply_hecke_t, apply_prime, apply_theta_prime};
use crate::error::{Error, Result};
use crate::group::{classify_coset, GroupElt};
use crate::padic::{CycScalar, PrecisionContext};

/// Reducible unramified inductions whose newform the engine can evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InducedCase {
    /// `μ₁|_{F×} = ω_{E/F}|·|_F`, `μ₂` trivial: `a = −1/q`, level 1.
    Ru2Unramified,
    /// `μ₁` trivial, `μ₂` of conductor `c ≥ 1`: `a = 1`, level `c`, support in `B·K_c`.
    Ru3 { c: u32 },
    /// `μ₁ = |·|_E`, `μ₂` trivial: `a = q⁻²`, level 2, support not known.
    Steinberg,
    /// Irreducible induction with `μ₁(ϖ) = a` rational and `μ₂` of conductor `c ≥ 1`, level `c`.
    Irreducible { a_num: i64, a_den: i64, c: u32 },
}

impl InducedCase {
    pub fn name(&self) -> String {
        match self {
            InducedCase::Ru2Unramified => "ru2-unramified".into(),
            InducedCase::Ru3 { c } => format!("ru3(c={c})"),
            InducedCase::Steinberg => "steinberg".into(),
            InducedCase::Irreducible { a_num, a_den, c } => format!("irreducible(a={a_num}/{a_den},c={c})"),
        }
    }

    pub fn params(&self, ctx: &PrecisionContext) -> Result<InducedParams> {
        let q = ctx.q() as i64;
        let (a, mu2, level, support) = match *self {
            InducedCase::Ru2Unramified => (
                CycScalar::from_ratio(-1, q)?,
                CharacterMu2::trivial(),
                1,
                SupportMode::Partial,
            ),
            InducedCase::Ru3 { c } => {
                if c == 0 {
                    return Err(Error::InvalidParams("this case needs a non-trivial μ₂".into()));
                }
                (CycScalar::one(), CharacterMu2::of_conductor(ctx, c)?, c, SupportMode::Supported)
            }
            InducedCase::Steinberg => (
                CycScalar::from_ratio(1, q * q)?,
                CharacterMu2::trivial(),
                2,
                SupportMode::Partial,
            ),
            InducedCase::Irreducible { a_num, a_den, c } => {
                if c == 0 {
                    return Err(Error::InvalidParams("this case needs a non-trivial μ₂".into()));
                }
                (
                    CycScalar::from_ratio(a_num, a_den)?,
                    CharacterMu2::of_conductor(ctx, c)?,
                    c,
                    SupportMode::Supported,
                )
            }
        };
        InducedParams::new(a, mu2, level, support)
    }

    pub fn newform(&self, ctx: &PrecisionContext) -> Result<InducedFn> {
        InducedFn::newform(ctx, self.params(ctx)?)
    }
}

/// `ν`, `λ` and the newform values they were computed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenPair {
    pub nu: CycScalar,
    pub lambda: CycScalar,
    /// `(θ′f)(e)`.
    pub theta_at_e: CycScalar,
    /// `(θ′f)(γ_N)`.
    pub theta_at_gamma: CycScalar,
}

/// `ν = (Tθ′f)(e)/(θ′f)(e)` and `λ = (δθ′f)(e)/f(e)`.
pub fn eigen_pair(f: &InducedFn) -> Result<EigenPair> {
    let ctx = *f.ctx();
    let e = GroupElt::identity(&ctx);
    let f_e = f.eval(&e)?.scalar()?;
    let theta = apply_theta_prime(f)?;
    let theta_at_e = theta.eval(&e)?.scalar()?;
    let gamma = GroupElt::gamma(&ctx, f.params().level as i32);
    let theta_at_gamma = theta.eval(&gamma)?.scalar()?;
    let t = apply_hecke_t(&theta)?.eval(&e)?.scalar()?;
    let nu = t.try_div(&theta_at_e)?;
    let lambda = apply_delta_theta(f)?.eval(&e)?.scalar()?.try_div(&f_e)?;
    Ok(EigenPair { nu, lambda, theta_at_e, theta_at_gamma })
}

fn q_scalar(ctx: &PrecisionContext) -> CycScalar {
    CycScalar::from_i64(ctx.q() as i64)
}

/// `q²/a + q`.
pub fn theta_identity_factor(q: &CycScalar, a: &CycScalar) -> Result<CycScalar> {
    Ok(&(q * q).try_div(a)? + q)
}

/// `(ν + q² − q²a)(1 + a/q)`.
pub fn lambda_from_nu(nu: &CycScalar, a: &CycScalar, q: &CycScalar) -> Result<CycScalar> {
    let q2 = q * q;
    let left = &(nu + &q2) - &(&q2 * a);
    let right = &CycScalar::one() + &a.try_div(q)?;
    Ok(&left * &right)
}

/// Coefficients `(q²(a + 1/a) + q³ − q², q²(q² − 1)/a)` of `g(e)` and `g(γ_N)` in `ν·g(e)`.
pub fn hecke_two_value_coefficients(q: &CycScalar, a: &CycScalar) -> Result<(CycScalar, CycScalar)> {
    let q2 = q * q;
    let q3 = &q2 * q;
    let ainv = a.inv()?;
    let c_e = &(&(&q2 * &(a + &ainv)) + &q3) - &q2;
    let c_gamma = &(&q2 * &(&q2 - &CycScalar::one())) * &ainv;
    Ok((c_e, c_gamma))
}

/// `ν` from the ratio `r = (θ′f)(γ_N)/f(e)`.
pub fn nu_from_ratio(q: &CycScalar, a: &CycScalar, r: &CycScalar) -> Result<CycScalar> {
    let (c_e, c_gamma) = hecke_two_value_coefficients(q, a)?;
    Ok(&c_e + &(&c_gamma * &r.try_div(&theta_identity_factor(q, a)?)?))
}

/// The newform identities that can be checked from first principles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NewformIdentity {
    /// `(θ′f)(e) = (q²/a + q) f(e)`.
    ThetaAtIdentity,
    /// `λ = (ν + q² − q²a)(1 + a/q)`.
    LambdaFromNu,
    /// `λ f(e) = (θ′f)′(e) + a (θ′f)(e)`.
    LoweringCollapse,
    /// `ν g(e) = (q²(a + 1/a) + q³ − q²) g(e) + q²(q² − 1)a⁻¹ g(γ_N)` for `g = θ′f`.
    HeckeTwoValue,
    /// `ν` expressed through `(θ′f)(γ_N)/f(e)`.
    NuFromRatio,
    /// `(θ′f)(γ_1) = (q + 1) f(e)` in the unramified-twist case at level 1.
    ThetaAtGammaOne,
    /// `(θ′f)(γ_N) = 0` when the newform is supported on `B·K_N`, and `γ_N ∉ B·K_{N+1}`.
    ThetaVanishesAtGamma,
}

impl NewformIdentity {
    pub const ALL: [NewformIdentity; 7] = [
        NewformIdentity::ThetaAtIdentity,
        NewformIdentity::LambdaFromNu,
        NewformIdentity::LoweringCollapse,
        NewformIdentity::HeckeTwoValue,
        NewformIdentity::NuFromRatio,
        NewformIdentity::ThetaAtGammaOne,
        NewformIdentity::ThetaVanishesAtGamma,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            NewformIdentity::ThetaAtIdentity => "theta-at-identity",
            NewformIdentity::LambdaFromNu => "lambda-from-nu",
            NewformIdentity::LoweringCollapse => "lowering-collapse",
            NewformIdentity::HeckeTwoValue => "hecke-two-value",
            NewformIdentity::NuFromRatio => "nu-from-ratio",
            NewformIdentity::ThetaAtGammaOne => "theta-at-gamma-one",
            NewformIdentity::ThetaVanishesAtGamma => "theta-vanishes-at-gamma",
        }
    }

    /// Whether the identity is stated for the given case.
    pub fn applies_to(&self, case: &InducedCase) -> bool {
        match self {
            NewformIdentity::ThetaAtGammaOne => *case == InducedCase::Ru2Unramified,
            NewformIdentity::ThetaVanishesAtGamma => {
                matches!(case, InducedCase::Ru3 { .. } | InducedCase::Irreducible { .. })
            }
            _ => true,
        }
    }
}

impl fmt::Display for NewformIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for NewformIdentity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        NewformIdentity::ALL
            .into_iter()
            .find(|i| i.tag() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown newform identity {s:?}")))
    }
}

/// Both sides of a checked identity plus any intermediate values.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub identity: NewformIdentity,
    pub case: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub intermediates: Vec<(String, String)>,
}

fn report(
    identity: NewformIdentity,
    case: &InducedCase,
    lhs: impl fmt::Display,
    rhs: impl fmt::Display,
    holds: bool,
    intermediates: Vec<(String, String)>,
) -> IdentityReport {
    IdentityReport {
        identity,
        case: case.name(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        holds,
        intermediates,
    }
}

/// Resolves the unknown value `U` of the base newform on `B·γ_{N−1}·K_N`
/// from a target ratio `(θ′f)(γ_N)/f(e)`.
pub fn solve_gamma_value(f: &InducedFn, target_ratio: &CycScalar) -> Result<CycScalar> {
    let ctx = *f.ctx();
    let theta = apply_theta_prime(f)?;
    let at_gamma = theta.eval(&GroupElt::gamma(&ctx, f.params().level as i32))?.value()?;
    if at_gamma.gamma_coeff.is_zero() {
        return Err(Error::Indeterminate(format!(
            "(θ′f)(γ_N) = {at_gamma} does not depend on U"
        )));
    }
    (target_ratio - &at_gamma.constant).try_div(&at_gamma.gamma_coeff)
}

/// Checks one identity for one case, computing both sides from the operator sums.
pub fn verify_identity(
    ctx: &PrecisionContext,
    case: &InducedCase,
    which: NewformIdentity,
    gamma_value: Option<CycScalar>,
) -> Result<IdentityReport> {
    if !which.applies_to(case) {
        return Err(Error::InvalidParams(format!("{which} is not stated for {}", case.name())));
    }
    let mut f = case.newform(ctx)?;
    if let Some(u) = gamma_value.clone() {
        f = f.with_gamma_value(u);
    }
    let q = q_scalar(ctx);
    let a = f.params().a.clone();
    let n = f.params().level as i32;
    let e = GroupElt::identity(ctx);
    let gamma = GroupElt::gamma(ctx, n);
    let f_e = f.eval(&e)?.scalar()?;
    let theta = apply_theta_prime(&f)?;

    Ok(match which {
        NewformIdentity::ThetaAtIdentity => {
            let lhs = theta.eval(&e)?.scalar()?;
            let rhs = &theta_identity_factor(&q, &a)? * &f_e;
            let holds = lhs == rhs;
            report(which, case, lhs, rhs, holds, vec![])
        }
        NewformIdentity::LambdaFromNu => {
            let ep = eigen_pair(&f)?;
            let rhs = lambda_from_nu(&ep.nu, &a, &q)?;
            let holds = ep.lambda == rhs;
            report(which, case, &ep.lambda, rhs, holds, vec![("nu".into(), ep.nu.to_string())])
        }
        NewformIdentity::LoweringCollapse => {
            let lambda = apply_delta_theta(&f)?.eval(&e)?.scalar()?.try_div(&f_e)?;
            let primed = apply_prime(&theta)?.eval(&e)?.scalar()?;
            let theta_e = theta.eval(&e)?.scalar()?;
            let rhs = &primed + &(&a * &theta_e);
            let lhs = &lambda * &f_e;
            let holds = lhs == rhs;
            report(which, case, lhs, rhs, holds, vec![("(θ′f)′(e)".into(), primed.to_string())])
        }
        NewformIdentity::HeckeTwoValue => {
            // compared as linear forms in the unknown U, so the check does not depend on U
            let lhs = apply_hecke_t(&theta)?.eval(&e)?.value()?;
            let g_e = theta.eval(&e)?.value()?;
            let g_gamma = theta.eval(&gamma)?.value()?;
            let (c_e, c_gamma) = hecke_two_value_coefficients(&q, &a)?;
            let rhs: LinearForm = g_e.scale(&c_e) + g_gamma.scale(&c_gamma);
            let holds = lhs == rhs;
            report(which, case, &lhs, &rhs, holds, vec![("g(γ_N)".into(), g_gamma.to_string())])
        }
        NewformIdentity::NuFromRatio => {
            let ep = eigen_pair(&f)?;
            let ratio = ep.theta_at_gamma.try_div(&f_e)?;
            let rhs = nu_from_ratio(&q, &a, &ratio)?;
            let holds = ep.nu == rhs;
            report(which, case, &ep.nu, rhs, holds, vec![("(θ′f)(γ_N)/f(e)".into(), ratio.to_string())])
        }
        NewformIdentity::ThetaAtGammaOne => {
            let lhs = theta.eval(&GroupElt::gamma(ctx, 1))?.scalar()?;
            let rhs = &(&q + &CycScalar::one()) * &f_e;
            let holds = lhs == rhs;
            report(which, case, lhs, rhs, holds, vec![])
        }
        NewformIdentity::ThetaVanishesAtGamma => {
            let lhs = theta.eval(&gamma)?.scalar()?;
            let class = classify_coset(&gamma, n as u32 + 1)?;
            let disjoint = class.rep_index() != Some(n as u32 + 1);
            let holds = lhs.is_zero() && disjoint;
            report(
                which,
                case,
                lhs,
                0,
                holds,
                vec![(
                    "coset index of γ_N at level N+1".into(),
                    format!("{:?}", class.rep_index()),
                )],
            )
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let q = CycScalar::from_i64(3);
        let a = CycScalar::from_ratio(-1, 3).unwrap();
        assert_eq!(lambda_from_nu(&CycScalar::from_i64(24), &a, &q).unwrap(), CycScalar::from_i64(32));
        assert_eq!(nu_from_ratio(&q, &a, &CycScalar::from_i64(4)).unwrap(), CycScalar::from_i64(24));
        let one = CycScalar::one();
        assert_eq!(nu_from_ratio(&q, &one, &CycScalar::zero()).unwrap(), CycScalar::from_i64(36));
    }
}
