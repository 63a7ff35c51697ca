//! Decompositions `g = b·k` and `g = b·γ_i·k` with `b ∈ B`, `k ∈ K_n`.
//!
//! Both procedures act on the bottom row `r = (r₁, r₂, r₃)` of `g`, which
//! satisfies `r₁r̄₃ + r₂r̄₂ + r₃r̄₁ = 0`, using right multiplication by
//! elements of `K_n`: `t_n`, torus units `t(a)` and lower unipotents `û`.
//! Every returned decomposition is verified by reconstruction.

use std::fmt;

use super::subgroup::{is_in_subgroup, Subgroup};
use super::GroupElt;
use crate::error::{Error, Result};
use crate::padic::ExtElem;

/// An upper triangular element `diag(α, β, ᾱ⁻¹)·u`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BorelElt {
    g: GroupElt,
}

impl BorelElt {
    pub fn new(g: GroupElt) -> Result<Self> {
        if !is_in_subgroup(&g, Subgroup::B)? {
            return Err(Error::Domain(format!("not upper triangular:\n{g}")));
        }
        Ok(Self { g })
    }

    pub fn identity(ctx: &crate::padic::PrecisionContext) -> Self {
        Self { g: GroupElt::identity(ctx) }
    }

    pub fn elt(&self) -> &GroupElt {
        &self.g
    }

    pub fn alpha(&self) -> ExtElem {
        self.g.entry(0, 0)
    }

    pub fn beta(&self) -> ExtElem {
        self.g.entry(1, 1)
    }

    pub fn val_alpha(&self) -> Result<i32> {
        self.alpha().val_nonzero()
    }

    /// `δ_B^{1/2}(b) = |α|_E = q^{-2 val α}`, returned as the exponent of `q`.
    pub fn delta_half_exponent(&self) -> Result<i32> {
        Ok(-2 * self.val_alpha()?)
    }
}

impl fmt::Display for BorelElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.g.fmt(f)
    }
}

/// `g = b · γ_rep · k` with `k ∈ K_n`; `rep_index = n` is the coset `B·K_n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CosetWitness {
    pub rep_index: u32,
    pub b: BorelElt,
    pub k: GroupElt,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CosetClass {
    Coset(CosetWitness),
    /// The elimination reached no normal form.
    Other,
}

impl CosetClass {
    pub fn rep_index(&self) -> Option<u32> {
        match self {
            CosetClass::Coset(w) => Some(w.rep_index),
            CosetClass::Other => None,
        }
    }
}

enum Stage {
    Done(GroupElt, GroupElt),
    NotApplicable,
    Undecided(Error),
}

fn bottom_row(g: &GroupElt) -> [ExtElem; 3] {
    g.rows()[2]
}

/// Clears the bottom row with `bold_û(y, x) ∈ K_n` when `r₁, r₂ ∈ ϖ^n r₃ o_E`.
fn clear_bottom_row(g: &GroupElt, n: i32) -> Result<Stage> {
    let [r1, r2, r3] = bottom_row(g);
    let v3 = match r3.val() {
        Ok(Some(v)) => v,
        Ok(None) => return Ok(Stage::NotApplicable),
        Err(e) => return Ok(Stage::Undecided(e)),
    };
    for r in [r1, r2] {
        match r.val_at_least(n + v3) {
            Ok(true) => {}
            Ok(false) => return Ok(Stage::NotApplicable),
            Err(e) => return Ok(Stage::Undecided(e)),
        }
    }
    let y = r2.try_div(&r3)?.conj();
    let x = -(r1 + r2 * y).try_div(&r3)?;
    let h = GroupElt::bold_u_hat(y, x)
        .map_err(|e| Error::Inconsistency(format!("bottom-row elimination: {e}")))?;
    Ok(Stage::Done(*g * h, h.inverse()))
}

fn check_bk(g: &GroupElt, b: &GroupElt, k: &GroupElt, n: u32) -> Result<()> {
    if !is_in_subgroup(b, Subgroup::B)? {
        return Err(Error::Inconsistency(format!("Borel part is not upper triangular:\n{b}")));
    }
    if !is_in_subgroup(k, Subgroup::K(n))? {
        return Err(Error::Inconsistency(format!("K_{n} part fails membership:\n{k}")));
    }
    if let Some((i, j)) = (*b * *k).mismatch(g) {
        return Err(Error::Inconsistency(format!(
            "reconstruction b·k differs from g at entry ({i}, {j})"
        )));
    }
    Ok(())
}

/// Finds `g = b·k` with `k ∈ K_n`, or `None` when `g ∉ B·K_n`.
pub fn reduce_bk(g: &GroupElt, n: u32) -> Result<Option<(BorelElt, GroupElt)>> {
    let ctx = *g.ctx();
    let ni = n as i32;
    let mut undecided = None;
    let tn = GroupElt::t_index(&ctx, ni);
    for twist in [None, Some(tn)] {
        let h = match twist {
            None => *g,
            Some(t) => *g * t,
        };
        match clear_bottom_row(&h, ni)? {
            Stage::Done(b, k) => {
                // t_n is an involution, so g = b·k·t_n
                let k = match twist {
                    None => k,
                    Some(t) => k * t,
                };
                check_bk(g, &b, &k, n)?;
                return Ok(Some((BorelElt { g: b }, k)));
            }
            Stage::NotApplicable => {}
            Stage::Undecided(e) => undecided = Some(e),
        }
    }
    match undecided {
        Some(e) => Err(e),
        None => Ok(None),
    }
}

/// `g = b·k` with `k ∈ K_0`; every element of `G` admits one.
pub fn iwasawa_k0(g: &GroupElt) -> Result<(BorelElt, GroupElt)> {
    reduce_bk(g, 0)?.ok_or_else(|| {
        Error::Inconsistency(format!("no B·K_0 decomposition found for\n{g}"))
    })
}

/// Decides `val(x) + shift < val(y)` from possibly truncated values.
fn val_lt(x: &ExtElem, shift: i32, y: &ExtElem) -> Result<bool> {
    if x.is_exact_zero() {
        return Ok(false);
    }
    let vx = x.val();
    let vy = y.val();
    match (vx, vy) {
        (Ok(Some(a)), Ok(None)) => Ok(a + shift < i32::MAX),
        (Ok(Some(a)), Ok(Some(b))) => Ok(a + shift < b),
        (Ok(Some(a)), Err(e)) => match y.val_at_least(a + shift + 1) {
            Ok(true) => Ok(true),
            _ => Err(e),
        },
        (Err(e), Ok(Some(b))) => match x.val_at_least(b - shift) {
            Ok(true) => Ok(false),
            _ => Err(e),
        },
        (Err(e), _) => Err(e),
        (Ok(None), _) => Ok(false),
    }
}

/// Places `g` in one of the double cosets `B·γ_i·K_n`.
///
/// `γ_i` and `γ_{n−i}` lie in the same double coset, so the returned index is
/// normalized to `⌈n/2⌉ ≤ i ≤ n`, with `i = n` for `B·K_n` itself.
pub fn classify_coset(g: &GroupElt, n: u32) -> Result<CosetClass> {
    let ctx = *g.ctx();
    let ni = n as i32;
    let e = GroupElt::identity(&ctx);
    let [r1, _, r3] = bottom_row(g);

    // make val r₁ ≥ n + val r₃ so that r₃ carries the smallest scaled valuation
    let flip = val_lt(&r1, -ni, &r3)?;
    let kappa0 = if flip { GroupElt::t_index(&ctx, ni) } else { e };
    let g0 = *g * kappa0;
    let [_, r2, r3] = bottom_row(&g0);
    let v3 = r3.val_nonzero()?;

    let witness = if r2.val_at_least(ni + v3)? {
        match clear_bottom_row(&g0, ni)? {
            Stage::Done(b, k) => {
                let gamma_n = GroupElt::gamma(&ctx, ni);
                CosetWitness {
                    rep_index: n,
                    b: BorelElt { g: b },
                    k: gamma_n.inverse() * k * kappa0.inverse(),
                }
            }
            Stage::NotApplicable => return Ok(CosetClass::Other),
            Stage::Undecided(e) => return Err(e),
        }
    } else {
        let i = r2.val_nonzero()? - v3;
        // t(a) with a = conj(−ϖ^i r₃/r₂), a unit, scales the middle entry to −ϖ^i r₃/ā
        let a = (-ExtElem::pi_pow(&ctx, i) * r3).try_div(&r2)?.conj();
        let ta = GroupElt::t(a)?;
        let g1 = g0 * ta;
        let [s1, _, s3] = bottom_row(&g1);
        let x1 = s1.try_div(&s3)?;
        let w = x1 + ExtElem::pi_pow(&ctx, 2 * i).half();
        if !w.re().is_zero() {
            return Err(Error::Inconsistency(format!(
                "normalized bottom row violates the form: w = {w}"
            )));
        }
        let shear = GroupElt::u_hat(ExtElem::zero(&ctx), -w.im());
        let g2 = g1 * shear;
        let gamma = GroupElt::gamma(&ctx, i);
        let b = g2 * gamma.inverse();
        let kappa = kappa0 * ta * shear;
        CosetWitness {
            rep_index: i as u32,
            b: BorelElt { g: b },
            k: kappa.inverse(),
        }
    };
    check_witness(g, &witness, n)?;
    Ok(CosetClass::Coset(witness))
}

fn check_witness(g: &GroupElt, w: &CosetWitness, n: u32) -> Result<()> {
    let ctx = *g.ctx();
    let gamma = GroupElt::gamma(&ctx, w.rep_index as i32);
    let fail = |msg: String| Error::Inconsistency(format!("coset witness for index {}: {msg}", w.rep_index));
    if !is_in_subgroup(w.b.elt(), Subgroup::B)? {
        return Err(fail(format!("Borel part is not upper triangular:\n{}", w.b)));
    }
    if !is_in_subgroup(&w.k, Subgroup::K(n))? {
        return Err(fail(format!("K_{n} part fails membership:\n{}", w.k)));
    }
    if let Some((i, j)) = (*w.b.elt() * gamma * w.k).mismatch(g) {
        return Err(fail(format!("reconstruction differs at entry ({i}, {j})")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{LocalElem, PrecisionContext};

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(3, 24).unwrap()
    }

    #[test]
    fn trivial_decompositions() {
        let c = ctx();
        let e = GroupElt::identity(&c);
        let (b, k) = iwasawa_k0(&e).unwrap();
        assert_eq!(*b.elt(), e);
        assert_eq!(k, e);
        let z = GroupElt::zeta(&c);
        let (b, k) = iwasawa_k0(&z).unwrap();
        assert_eq!(*b.elt() * k, z);
        for n in 1..4 {
            let g = GroupElt::gamma(&c, n);
            let (b, k) = reduce_bk(&g, n as u32).unwrap().unwrap();
            assert_eq!(*b.elt() * k, g);
            assert!(reduce_bk(&g, n as u32 + 1).unwrap().is_none());
        }
    }

    #[test]
    fn gamma_cosets() {
        let c = ctx();
        for n in 1..5u32 {
            for i in 0..=n {
                let g = GroupElt::gamma(&c, i as i32);
                let class = classify_coset(&g, n).unwrap();
                assert_eq!(class.rep_index(), Some(i.max(n - i)), "n = {n}, i = {i}");
            }
        }
    }

    #[test]
    fn lower_unipotent_with_unit_scaling() {
        let c = ctx();
        let n = 2;
        let y = ExtElem::from_ints(&c, 2, 1).scale_by_pi_power(1);
        let g = GroupElt::u_hat(y, LocalElem::ZERO);
        let CosetClass::Coset(w) = classify_coset(&g, n).unwrap() else {
            panic!("no coset");
        };
        assert_eq!(w.rep_index, 1);
        assert_eq!(w.b.val_alpha().unwrap(), 0);
    }
}
