//! Random group elements for property checks.

use rand::Rng;

use super::GroupElt;
use crate::error::Result;
use crate::padic::{ExtElem, LocalElem, PrecisionContext};

/// Bound on the digits drawn for random units; keeps products well inside the precision.
const UNIT_DIGITS: u32 = 6;

fn random_digits<R: Rng>(ctx: &PrecisionContext, rng: &mut R) -> i64 {
    let m = ctx.p().pow(UNIT_DIGITS.min(ctx.precision())) as i64;
    rng.gen_range(0..m)
}

/// Random element of `p_F^lo`, possibly zero.
pub fn random_local<R: Rng>(ctx: &PrecisionContext, lo: i32, rng: &mut R) -> LocalElem {
    LocalElem::from_i64(ctx, random_digits(ctx, rng)).scale_by_pi_power(lo)
}

/// Random element of `p_E^lo`, possibly zero.
pub fn random_ext<R: Rng>(ctx: &PrecisionContext, lo: i32, rng: &mut R) -> ExtElem {
    ExtElem::from_ints(ctx, random_digits(ctx, rng), random_digits(ctx, rng)).scale_by_pi_power(lo)
}

/// Random unit of `o_E`.
pub fn random_unit<R: Rng>(ctx: &PrecisionContext, rng: &mut R) -> ExtElem {
    loop {
        let x = random_ext(ctx, 0, rng);
        if x.val().ok() == Some(Some(0)) {
            return x;
        }
    }
}

/// Random norm-one unit `z / z̄`.
pub fn random_norm_one<R: Rng>(ctx: &PrecisionContext, rng: &mut R) -> ExtElem {
    let z = random_unit(ctx, rng);
    z.try_div(&z.conj()).expect("units are invertible")
}

/// Random element of `B` with `val α` in `-3..=3`.
pub fn random_borel<R: Rng>(ctx: &PrecisionContext, rng: &mut R) -> Result<GroupElt> {
    let alpha = random_unit(ctx, rng).scale_by_pi_power(rng.gen_range(-3..=3));
    let beta = random_norm_one(ctx, rng);
    let u = GroupElt::u(random_ext(ctx, -2, rng), random_local(ctx, -2, rng));
    Ok(GroupElt::torus(alpha, beta)? * u)
}

/// Random word of length `len` in the generators `û(y, z)`, `u(x, w)`, `t(a)`, `t_n` of `K_n`.
pub fn random_k<R: Rng>(ctx: &PrecisionContext, n: u32, len: usize, rng: &mut R) -> Result<GroupElt> {
    let n = n as i32;
    let mut g = GroupElt::identity(ctx);
    for _ in 0..len {
        let h = match rng.gen_range(0..4) {
            0 => GroupElt::u_hat(random_ext(ctx, n, rng), random_local(ctx, n, rng)),
            1 => GroupElt::u(random_ext(ctx, 0, rng), random_local(ctx, -n, rng)),
            2 => GroupElt::t(random_unit(ctx, rng))?,
            _ => GroupElt::t_index(ctx, n),
        };
        g = g * h;
    }
    Ok(g)
}
