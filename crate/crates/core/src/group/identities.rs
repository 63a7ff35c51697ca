//! Matrix identities used when reducing group elements by hand.
//!
//! Each identity is checked entrywise at working precision on explicit or
//! randomly drawn admissible parameters.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::sample::{random_ext, random_local, random_unit};
use super::subgroup::{is_in_subgroup, Subgroup};
use super::GroupElt;
use crate::error::{Error, Result};
use crate::padic::{ExtElem, LocalElem, PrecisionContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    /// `bold_û(y, x) = bold_u(−ȳ/x̄, 1/x)·diag(ϖ^{N+1}/x̄, −x̄/x, ϖ^{−1−N}x)·t_{N+1}·bold_u(−ȳ/x, 1/x)`,
    /// with `t_{N+1}·bold_u(−ȳ/x, 1/x) ∈ K_{N+1}`.
    LowerUnipotentFactorization,
    /// `ζ^i u(a, b) = u(ϖ^i a, ϖ^{2i} b) ζ^i`.
    TorusConjugation,
    /// `ζ^{i+1} u(y, 0) = u(ϖ^{i+1} y, 0) ζ^{i+1}`.
    TorusConjugationPure,
    /// `t_2 γ_1 t_2 = u(−ϖ^{−1}, 0)`.
    WeylConjugateOfGamma,
    /// `ζ u(−ϖ^{−1}, 0) ζ^{−1} = u(−1, 0)` and `t_1 ζ^{−1} = ζ t_1`.
    ZetaWeylRelations,
    /// `t_1 u(−ϖ^{−1}, 0) u(0, x) = û(1, ϖ² x) t_1`.
    WeylShear,
    /// `−x̄/x ∈ 1 + p_E^N` when `x + x̄ + y ȳ = 0`, `val y ≥ N`, `val x = N`.
    NormOneRatio,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::LowerUnipotentFactorization,
        Identity::TorusConjugation,
        Identity::TorusConjugationPure,
        Identity::WeylConjugateOfGamma,
        Identity::ZetaWeylRelations,
        Identity::WeylShear,
        Identity::NormOneRatio,
    ];

    /// Short tag used in reports and on the command line.
    pub fn tag(&self) -> &'static str {
        match self {
            Identity::LowerUnipotentFactorization => "lower-unipotent-factorization",
            Identity::TorusConjugation => "torus-conjugation",
            Identity::TorusConjugationPure => "torus-conjugation-pure",
            Identity::WeylConjugateOfGamma => "weyl-conjugate-of-gamma",
            Identity::ZetaWeylRelations => "zeta-weyl-relations",
            Identity::WeylShear => "weyl-shear",
            Identity::NormOneRatio => "norm-one-ratio",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            Identity::LowerUnipotentFactorization => {
                "bold_û(y,x) = bold_u(-ȳ/x̄,1/x) diag(ϖ^{N+1}/x̄, -x̄/x, ϖ^{-1-N}x) t_{N+1} bold_u(-ȳ/x,1/x)"
            }
            Identity::TorusConjugation => "ζ^i u(a,b) = u(ϖ^i a, ϖ^{2i} b) ζ^i",
            Identity::TorusConjugationPure => "ζ^{i+1} u(y,0) = u(ϖ^{i+1} y, 0) ζ^{i+1}",
            Identity::WeylConjugateOfGamma => "t_2 γ_1 t_2 = u(-ϖ^{-1}, 0)",
            Identity::ZetaWeylRelations => "ζ γ' ζ^{-1} = u(-1,0), t_1 ζ^{-1} = ζ t_1",
            Identity::WeylShear => "t_1 γ' u(0,x) = û(1, ϖ^2 x) t_1",
            Identity::NormOneRatio => "-x̄/x ∈ 1 + p_E^N when x + x̄ + yȳ = 0",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParams(format!("unknown identity {s:?}")))
    }
}

/// Result of one identity check: the parameters used and the first failure, if any.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub identity: Identity,
    pub params: String,
    pub failure: Option<String>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn compare(lhs: &GroupElt, rhs: &GroupElt, what: &str) -> Option<String> {
    lhs.mismatch(rhs)
        .map(|(i, j)| format!("{what}: entry ({i}, {j}) differs: {} vs {}", lhs.entry(i, j), rhs.entry(i, j)))
}

/// Checks the factorization of `û(y, x)` for explicit `N`, `y ∈ p_E^N` and `z ∈ F` with `x = z√ε − yȳ/2` of valuation `N`.
pub fn check_lower_unipotent_factorization(
    ctx: &PrecisionContext,
    n: i32,
    y: ExtElem,
    z: LocalElem,
) -> Result<Option<String>> {
    let x = ExtElem::new(ctx, LocalElem::ZERO, z) - (y * y.conj()).half();
    if !y.val_at_least(n)? || x.val()? != Some(n) {
        return Err(Error::Domain(format!("need val y ≥ {n}, val x = {n}")));
    }
    let lhs = GroupElt::bold_u_hat(y, x)?;
    let xb = x.conj();
    let xi = x.inv()?;
    let left = GroupElt::bold_u(-y.conj().try_div(&xb)?, xi)?;
    let alpha = ExtElem::pi_pow(ctx, n + 1).try_div(&xb)?;
    let beta = -xb.try_div(&x)?;
    let d = GroupElt::torus(alpha, beta)?;
    let trailing = GroupElt::t_index(ctx, n + 1) * GroupElt::bold_u(-y.conj().try_div(&x)?, xi)?;
    let rhs = left * d * trailing;
    if let Some(m) = compare(&lhs, &rhs, "factorization") {
        return Ok(Some(m));
    }
    if !is_in_subgroup(&trailing, Subgroup::K(n as u32 + 1))? {
        return Ok(Some(format!("trailing factor not in K_{}", n + 1)));
    }
    if !(d.entry(2, 2) - ExtElem::pi_pow(ctx, -1 - n) * x).is_zero() {
        return Ok(Some("third diagonal entry differs from ϖ^{-1-N}x".into()));
    }
    Ok(None)
}

/// Checks `ζ^i u(a, b) = u(ϖ^i a, ϖ^{2i} b) ζ^i` for explicit `i`, `a ∈ E`, `b ∈ F`.
pub fn check_torus_conjugation(ctx: &PrecisionContext, i: i32, a: ExtElem, b: LocalElem) -> Option<String> {
    let z = GroupElt::zeta_pow(ctx, i);
    let lhs = z * GroupElt::u(a, b);
    let rhs = GroupElt::u(a.scale_by_pi_power(i), b.scale_by_pi_power(2 * i)) * z;
    compare(&lhs, &rhs, "ζ^i u(a,b)")
}

fn gamma_prime(ctx: &PrecisionContext) -> GroupElt {
    GroupElt::u(-ExtElem::pi_pow(ctx, -1), LocalElem::ZERO)
}

/// Checks `t_2 γ_1 t_2 = u(−ϖ^{−1}, 0)`.
pub fn check_weyl_conjugate_of_gamma(ctx: &PrecisionContext) -> Option<String> {
    let t2 = GroupElt::t_index(ctx, 2);
    compare(&(t2 * GroupElt::gamma(ctx, 1) * t2), &gamma_prime(ctx), "t_2 γ_1 t_2")
}

/// Checks `ζ γ' ζ^{−1} = u(−1, 0)` and `t_1 ζ^{−1} = ζ t_1`.
pub fn check_zeta_weyl_relations(ctx: &PrecisionContext) -> Option<String> {
    let z = GroupElt::zeta(ctx);
    let zi = GroupElt::zeta_pow(ctx, -1);
    let t1 = GroupElt::t_index(ctx, 1);
    let minus_one = GroupElt::u(-ExtElem::one(ctx), LocalElem::ZERO);
    compare(&(z * gamma_prime(ctx) * zi), &minus_one, "ζ γ' ζ^{-1}")
        .or_else(|| compare(&(t1 * zi), &(z * t1), "t_1 ζ^{-1}"))
}

/// Checks `t_1 γ' u(0, x) = û(1, ϖ² x) t_1` for explicit `x ∈ F`.
pub fn check_weyl_shear(ctx: &PrecisionContext, x: LocalElem) -> Option<String> {
    let t1 = GroupElt::t_index(ctx, 1);
    let lhs = t1 * gamma_prime(ctx) * GroupElt::u(ExtElem::zero(ctx), x);
    let rhs = GroupElt::u_hat(ExtElem::one(ctx), x.scale_by_pi_power(2)) * t1;
    compare(&lhs, &rhs, "t_1 γ' u(0,x)")
}

/// Checks the norm-one ratio identity for explicit `N`, `y ∈ p_E^N` and `z ∈ p_F^N \ p_F^{N+1}`.
pub fn check_norm_one_ratio(ctx: &PrecisionContext, n: i32, y: ExtElem, z: LocalElem) -> Result<Option<String>> {
    let x = ExtElem::new(ctx, LocalElem::ZERO, z) - (y * y.conj()).half();
    if !(x + x.conj() + y * y.conj()).is_zero() {
        return Ok(Some("x + x̄ + yȳ ≠ 0".into()));
    }
    if x.val()? != Some(n) {
        return Ok(Some(format!("val x ≠ {n}")));
    }
    let r = -x.conj().try_div(&x)?;
    if !(r - ExtElem::one(ctx)).val_at_least(n)? {
        return Ok(Some(format!("-x̄/x = {r} not in 1 + p_E^{n}")));
    }
    if !(r * r.conj() - ExtElem::one(ctx)).is_zero() {
        return Ok(Some("-x̄/x is not of norm one".into()));
    }
    Ok(None)
}

fn random_exact_val<R: Rng>(ctx: &PrecisionContext, n: i32, rng: &mut R) -> LocalElem {
    loop {
        let z = random_local(ctx, n, rng);
        if z.val().ok() == Some(Some(n)) {
            return z;
        }
    }
}

/// Checks an identity on randomly drawn admissible parameters.
pub fn check_random<R: Rng>(ctx: &PrecisionContext, which: Identity, rng: &mut R) -> Result<IdentityCheck> {
    let (params, failure) = match which {
        Identity::LowerUnipotentFactorization | Identity::NormOneRatio => {
            let n = rng.gen_range(0..=3);
            let y = random_ext(ctx, n, rng);
            let z = random_exact_val(ctx, n, rng);
            let failure = if which == Identity::NormOneRatio {
                check_norm_one_ratio(ctx, n, y, z)?
            } else {
                check_lower_unipotent_factorization(ctx, n, y, z)?
            };
            (format!("N={n}, y={y}, z={z}"), failure)
        }
        Identity::TorusConjugation => {
            let i = rng.gen_range(-3..=3);
            let a = random_ext(ctx, rng.gen_range(-2..=2), rng);
            let b = random_local(ctx, rng.gen_range(-2..=2), rng);
            (format!("i={i}, a={a}, b={b}"), check_torus_conjugation(ctx, i, a, b))
        }
        Identity::TorusConjugationPure => {
            let i = rng.gen_range(-1..=3);
            let y = random_unit(ctx, rng).scale_by_pi_power(-1);
            (
                format!("i={i}, y={y}"),
                check_torus_conjugation(ctx, i + 1, y, LocalElem::ZERO),
            )
        }
        Identity::WeylConjugateOfGamma => (String::new(), check_weyl_conjugate_of_gamma(ctx)),
        Identity::ZetaWeylRelations => (String::new(), check_zeta_weyl_relations(ctx)),
        Identity::WeylShear => {
            let x = random_local(ctx, -2, rng);
            (format!("x={x}"), check_weyl_shear(ctx, x))
        }
    };
    Ok(IdentityCheck { identity: which, params, failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn documented_instances() {
        let c = PrecisionContext::new(3, 24).unwrap();
        let a = ExtElem::from_ints(&c, 1, 1);
        let b = LocalElem::from_i64(&c, 2);
        assert_eq!(check_torus_conjugation(&c, 2, a, b), None);
        assert_eq!(check_weyl_conjugate_of_gamma(&c), None);
        assert_eq!(check_zeta_weyl_relations(&c), None);
        let y = ExtElem::pi_pow(&c, 1);
        let z = LocalElem::from_i64(&c, 3);
        assert_eq!(check_lower_unipotent_factorization(&c, 1, y, z).unwrap(), None);
        // the unit case used for the level-one computation: y = 1, N = 0
        let z = LocalElem::from_i64(&c, 2);
        assert_eq!(
            check_lower_unipotent_factorization(&c, 0, ExtElem::one(&c), z).unwrap(),
            None
        );
        let z = LocalElem::from_i64(&c, 9 * 7);
        assert_eq!(
            check_lower_unipotent_factorization(&c, 0, ExtElem::one(&c), z).unwrap(),
            None
        );
    }

    #[test]
    fn random_instances() {
        for p in [3, 5] {
            let c = PrecisionContext::new(p, 24).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            for which in Identity::ALL {
                for _ in 0..10 {
                    let r = check_random(&c, which, &mut rng).unwrap();
                    assert!(r.passed(), "{which} {}: {:?}", r.params, r.failure);
                }
            }
        }
    }

    #[test]
    fn tags_round_trip() {
        for i in Identity::ALL {
            assert_eq!(i.tag().parse::<Identity>().unwrap(), i);
        }
    }
}
