//! Residue-class representatives and the additive character of `E`.

use super::context::PrecisionContext;
use super::cyclo::CycScalar;
use super::ext::ExtElem;
use super::local::LocalElem;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    F,
    E,
}

/// Representatives of `p^lo / p^hi` in `F` or `E`, built digit by digit.
///
/// The list has `q^(hi-lo)` entries for `F` and `q^(2(hi-lo))` for `E`, starts
/// with zero and is deterministic.
pub fn residue_transversal(
    ctx: &PrecisionContext,
    field: Field,
    lo: i32,
    hi: i32,
) -> Result<Vec<ExtElem>> {
    if lo >= hi {
        return Err(Error::Domain(format!("empty residue range p^{lo}/p^{hi}")));
    }
    let p = ctx.p() as i64;
    // each digit position contributes one (F) or two (E) base-p digits
    let per_digit: u32 = match field {
        Field::F => 1,
        Field::E => 2,
    };
    let width = (hi - lo) as u32 * per_digit;
    let count = (p as u64)
        .checked_pow(width)
        .filter(|&c| c <= 1 << 24)
        .ok_or_else(|| Error::UnsupportedRange(format!("transversal of size {p}^{width}")))?;
    let mut out = Vec::with_capacity(count as usize);
    for mut idx in 0..count {
        let mut x = ExtElem::zero(ctx);
        for k in lo..hi {
            let a = (idx % p as u64) as i64;
            idx /= p as u64;
            let b = if field == Field::E {
                let b = (idx % p as u64) as i64;
                idx /= p as u64;
                b
            } else {
                0
            };
            if a != 0 || b != 0 {
                x = x + ExtElem::from_ints(ctx, a, b).scale_by_pi_power(k);
            }
        }
        out.push(x);
    }
    Ok(out)
}

/// `ψ_E(y)` for `y ∈ p_E^{-1}`: the additive character of conductor `o_E`
/// given by `ζ_p` raised to the residue of `ϖ·tr(y)`.
pub fn psi_e(ctx: &PrecisionContext, y: &ExtElem) -> Result<CycScalar> {
    if !y.val_at_least(-1)? {
        return Err(Error::UnsupportedRange(format!(
            "ψ_E evaluated outside p_E^-1 at {y}"
        )));
    }
    let t: LocalElem = y.trace().scale_by_pi_power(1);
    let k = t.residue(ctx, 1)?;
    Ok(CycScalar::root_of_unity(ctx.p() as u32, k as i64))
}

/// `Σ_{y ∈ p_E^lo / o_E} ψ_E(y)` for `lo ∈ {-1, 0}`.
pub fn additive_char_sum(ctx: &PrecisionContext, lo: i32) -> Result<CycScalar> {
    match lo {
        0 => Ok(CycScalar::one()),
        -1 => residue_transversal(ctx, Field::E, -1, 0)?
            .iter()
            .map(|y| psi_e(ctx, y))
            .sum(),
        _ => Err(Error::UnsupportedRange(format!(
            "character sum over p_E^{lo}/o_E"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let c = PrecisionContext::new(3, 24).unwrap();
        let t = residue_transversal(&c, Field::F, -2, -1).unwrap();
        assert_eq!(t.len(), 3);
        assert!(t[0].is_exact_zero());
        assert_eq!(t[1], ExtElem::pi_pow(&c, -2));
        assert_eq!(t[2], ExtElem::from_i64(&c, 2).scale_by_pi_power(-2));
        assert_eq!(residue_transversal(&c, Field::E, 0, 1).unwrap().len(), 9);
        assert!(residue_transversal(&c, Field::E, 1, 1).is_err());
    }

    #[test]
    fn character_sum_vanishes() {
        for p in [3, 5, 7] {
            let c = PrecisionContext::new(p, 12).unwrap();
            assert!(additive_char_sum(&c, -1).unwrap().is_zero());
            assert!(additive_char_sum(&c, 0).unwrap().is_one());
            assert!(additive_char_sum(&c, -2).is_err());
        }
    }
}
