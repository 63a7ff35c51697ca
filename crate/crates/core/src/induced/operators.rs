//! Level raising, priming, Hecke and level lowering operators as translate sums.
//!
//! With `N` the level of the base newform:
//!
//! * `θ′f(g) = f(g ζ⁻¹) + Σ_{x ∈ p_F^{-1-N}/p_F^{-N}} f(g u(0, x))`;
//! * `w′(g) = Σ_{y ∈ p_E^N/p_E^{N+1}, z ∈ p_F^N/p_F^{N+1}} w(g û(y, z))`;
//! * `Tw(g) = w′(g ζ⁻¹) + Σ_{a ∈ o_E/p_E, b ∈ p_F^{-1-N}/p_F^{1-N}} w(g u(a, b) ζ)`;
//! * `δθ′f = (θ′f)′ + Σ_{y ∈ p_E^{-1}/o_E} π(ζ u(y, 0)) θ′f`.

use super::function::InducedFn;
use crate::error::{Error, Result};
use crate::group::GroupElt;
use crate::padic::{residue_transversal, CycScalar, ExtElem, Field, LocalElem, PrecisionContext};

fn unit_terms(elts: impl IntoIterator<Item = GroupElt>) -> Vec<(GroupElt, CycScalar)> {
    elts.into_iter().map(|g| (g, CycScalar::one())).collect()
}

fn f_part(x: &ExtElem) -> LocalElem {
    x.re()
}

fn theta_terms(ctx: &PrecisionContext, n: i32) -> Result<Vec<GroupElt>> {
    let mut out = vec![GroupElt::zeta_pow(ctx, -1)];
    for x in residue_transversal(ctx, Field::F, -1 - n, -n)? {
        out.push(GroupElt::u(ExtElem::zero(ctx), f_part(&x)));
    }
    Ok(out)
}

fn prime_terms(ctx: &PrecisionContext, n: i32) -> Result<Vec<GroupElt>> {
    let ys = residue_transversal(ctx, Field::E, n, n + 1)?;
    let zs = residue_transversal(ctx, Field::F, n, n + 1)?;
    let mut out = Vec::with_capacity(ys.len() * zs.len());
    for y in &ys {
        for z in &zs {
            out.push(GroupElt::u_hat(*y, f_part(z)));
        }
    }
    Ok(out)
}

fn hecke_terms(ctx: &PrecisionContext, n: i32) -> Result<Vec<GroupElt>> {
    let zi = GroupElt::zeta_pow(ctx, -1);
    let zeta = GroupElt::zeta(ctx);
    let mut out: Vec<GroupElt> = prime_terms(ctx, n)?.into_iter().map(|h| zi * h).collect();
    let as_ = residue_transversal(ctx, Field::E, 0, 1)?;
    let bs = residue_transversal(ctx, Field::F, -1 - n, 1 - n)?;
    for a in &as_ {
        for b in &bs {
            out.push(GroupElt::u(*a, f_part(b)) * zeta);
        }
    }
    Ok(out)
}

fn lowering_terms(ctx: &PrecisionContext, n: i32) -> Result<Vec<GroupElt>> {
    let zeta = GroupElt::zeta(ctx);
    let mut out = prime_terms(ctx, n)?;
    for y in residue_transversal(ctx, Field::E, -1, 0)? {
        out.push(zeta * GroupElt::u(y, LocalElem::ZERO));
    }
    Ok(out)
}

fn require_level(f: &InducedFn, expected: u32, op: &str) -> Result<i32> {
    if f.effective_level() != expected {
        return Err(Error::InvalidParams(format!(
            "{op} expects a function of level {expected}, got level {}",
            f.effective_level()
        )));
    }
    Ok(f.params().level as i32)
}

/// `θ′f` for `f` at the base level `N`; the result has level `N + 1`.
pub fn apply_theta_prime(f: &InducedFn) -> Result<InducedFn> {
    let n = require_level(f, f.params().level, "θ′")?;
    Ok(f.compose(&unit_terms(theta_terms(f.ctx(), n)?), n as u32 + 1))
}

/// `w′` for `w` at level `N + 1`.
pub fn apply_prime(w: &InducedFn) -> Result<InducedFn> {
    let n = require_level(w, w.params().level + 1, "priming")?;
    Ok(w.compose(&unit_terms(prime_terms(w.ctx(), n)?), n as u32 + 1))
}

/// `Tw` for `w` at level `N + 1`.
pub fn apply_hecke_t(w: &InducedFn) -> Result<InducedFn> {
    let n = require_level(w, w.params().level + 1, "T")?;
    Ok(w.compose(&unit_terms(hecke_terms(w.ctx(), n)?), n as u32 + 1))
}

/// `δθ′f` for the base newform `f`; the result has level `N`.
pub fn apply_delta_theta(f: &InducedFn) -> Result<InducedFn> {
    let theta = apply_theta_prime(f)?;
    let n = f.params().level as i32;
    Ok(theta.compose(&unit_terms(lowering_terms(f.ctx(), n)?), n as u32))
}

/// Number of translate terms each operator adds, as `(θ′, ′, T, δ)`.
pub fn operator_sizes(ctx: &PrecisionContext, n: i32) -> Result<(usize, usize, usize, usize)> {
    Ok((
        theta_terms(ctx, n)?.len(),
        prime_terms(ctx, n)?.len(),
        hecke_terms(ctx, n)?.len(),
        lowering_terms(ctx, n)?.len(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{is_in_subgroup, Subgroup};

    #[test]
    fn term_counts() {
        let c = PrecisionContext::new(3, 24).unwrap();
        // 1 + q, q³, q³ + q⁴, q³ + q²
        assert_eq!(operator_sizes(&c, 1).unwrap(), (4, 27, 108, 36));
    }

    #[test]
    fn priming_terms_lie_in_k_n() {
        let c = PrecisionContext::new(3, 24).unwrap();
        for n in 1..3 {
            for h in prime_terms(&c, n).unwrap() {
                assert!(is_in_subgroup(&h, Subgroup::K(n as u32)).unwrap());
            }
        }
    }
}
