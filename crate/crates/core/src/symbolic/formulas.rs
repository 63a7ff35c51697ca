//! Whittaker recursions, zeta integrals, L-factors and ε-factors of newforms.
//!
//! All functions take the parameters as [`ParamScalar`]s, so the same code
//! proves identities symbolically in `Q(ν, λ, a, q)` and evaluates them at
//! concrete values.

use super::ratfn::ParamScalar;
use super::zeta::{LPoly, ZetaRational};
use crate::error::{Error, Result};

fn qp(q: &ParamScalar, k: i64) -> ParamScalar {
    q.pow(k).expect("q is non-zero")
}

fn check_q(q: &ParamScalar) -> Result<()> {
    if q.is_zero() {
        return Err(Error::InvalidParams("q must be non-zero".into()));
    }
    Ok(())
}

/// A character of `E^×` as seen by its Hecke-Tate factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LChar {
    Trivial,
    /// Unramified, with the given value at `ϖ`.
    Unramified(ParamScalar),
    Ramified,
}

/// `L_E(s, χ)`: `1/(1 − χ(ϖ)X)` for unramified `χ`, `1` for ramified `χ`.
pub fn l_factor(chi: &LChar) -> Result<ZetaRational> {
    match chi {
        LChar::Trivial => Ok(ZetaRational::geometric(&ParamScalar::one())),
        LChar::Unramified(c) if c.is_zero() => {
            Err(Error::InvalidParams("an unramified character cannot vanish at ϖ".into()))
        }
        LChar::Unramified(c) => Ok(ZetaRational::geometric(c)),
        LChar::Ramified => Ok(ZetaRational::one()),
    }
}

/// `α = (ν + q² − q³)q⁻⁴` and `β = (ν + q² − λ)q⁻⁵` of the Whittaker recursion.
pub fn recursion_coefficients(
    nu: &ParamScalar,
    lambda: &ParamScalar,
    q: &ParamScalar,
) -> (ParamScalar, ParamScalar) {
    let q2 = qp(q, 2);
    let alpha = &(&(nu + &q2) - &qp(q, 3)) * &qp(q, -4);
    let beta = &(&(nu + &q2) - lambda) * &qp(q, -5);
    (alpha, beta)
}

/// Values `c_i = W(ζ^i)` of the newform's Whittaker function for `0 ≤ i ≤ M`,
/// normalized by `c₀ = 1`; `c_{−1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhittakerSeq {
    c: Vec<ParamScalar>,
}

impl WhittakerSeq {
    pub fn coeffs(&self) -> &[ParamScalar] {
        &self.c
    }

    /// `c_i`, with `c_i = 0` for `i < 0`.
    pub fn get(&self, i: i64) -> ParamScalar {
        if i < 0 {
            ParamScalar::zero()
        } else {
            self.c[i as usize].clone()
        }
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// `(ν − q³)c₀ = q⁴c₁` and `(ν + q² − λ)c_i + q(ν + q² − q³)c_{i+1} = q⁵c_{i+2}`.
    pub fn satisfies_recursions(&self, nu: &ParamScalar, lambda: &ParamScalar, q: &ParamScalar) -> bool {
        let q2 = qp(q, 2);
        let q3 = qp(q, 3);
        if self.c.len() >= 2 && &(nu - &q3) * &self.c[0] != &qp(q, 4) * &self.c[1] {
            return false;
        }
        let a = &(nu + &q2) - lambda;
        let b = q * &(&(nu + &q2) - &q3);
        let q5 = qp(q, 5);
        self.c
            .windows(3)
            .all(|w| &(&a * &w[0]) + &(&b * &w[1]) == &q5 * &w[2])
    }
}

/// `c₀, …, c_M` from `c₀ = 1`, `c₁ = (ν − q³)q⁻⁴` and `c_{i+2} = αc_{i+1} + βc_i`.
pub fn whittaker_seq(nu: &ParamScalar, lambda: &ParamScalar, q: &ParamScalar, m: usize) -> Result<WhittakerSeq> {
    check_q(q)?;
    let (alpha, beta) = recursion_coefficients(nu, lambda, q);
    let mut c = vec![ParamScalar::one()];
    if m >= 1 {
        c.push(&(nu - &qp(q, 3)) * &qp(q, -4));
    }
    for i in 2..=m {
        let next = &(&alpha * &c[i - 1]) + &(&beta * &c[i - 2]);
        c.push(next);
    }
    Ok(WhittakerSeq { c })
}

/// The truncated zeta integral `Σ_{i ≤ M} c_i q^{2i} X^i`.
pub fn zeta_series(c: &WhittakerSeq, q: &ParamScalar) -> Result<ZetaRational> {
    check_q(q)?;
    let q2 = qp(q, 2);
    let mut w = ParamScalar::one();
    let mut coeffs = Vec::with_capacity(c.len());
    for ci in c.coeffs() {
        coeffs.push(ci * &w);
        w = &w * &q2;
    }
    Ok(ZetaRational::from_poly(LPoly::new(0, coeffs)))
}

/// `1 − (ν + q² − q³)q⁻²X − (ν + q² − λ)q⁻¹X²`.
pub fn zeta_denominator(nu: &ParamScalar, lambda: &ParamScalar, q: &ParamScalar) -> LPoly {
    let q2 = qp(q, 2);
    let c1 = &(&(nu + &q2) - &qp(q, 3)) * &qp(q, -2);
    let c2 = &(&(nu + &q2) - lambda) * &qp(q, -1);
    LPoly::new(0, vec![ParamScalar::one(), -&c1, -&c2])
}

/// `Z(s, W) = (1 − X)/(1 − (ν + q² − q³)q⁻²X − (ν + q² − λ)q⁻¹X²)`.
pub fn zeta_closed(nu: &ParamScalar, lambda: &ParamScalar, q: &ParamScalar) -> Result<ZetaRational> {
    check_q(q)?;
    ZetaRational::new(LPoly::one_minus(&ParamScalar::one()), zeta_denominator(nu, lambda, q))
}

/// `Z(s, W)·L_E(s, 1)`, the zeta integral against the level-`N` Schwartz function.
pub fn zeta_with_phi(nu: &ParamScalar, lambda: &ParamScalar, q: &ParamScalar) -> Result<ZetaRational> {
    Ok(&zeta_closed(nu, lambda, q)? * &l_factor(&LChar::Trivial)?)
}

/// `(ν + q² − q³ − q²a)q⁻²`, the second root of the factored denominator.
pub fn factored_root(nu: &ParamScalar, a: &ParamScalar, q: &ParamScalar) -> ParamScalar {
    let q2 = qp(q, 2);
    &(&(&(nu + &q2) - &qp(q, 3)) - &(&q2 * a)) * &qp(q, -2)
}

/// `L_E(s, μ₁)/(1 − (ν + q² − q³ − q²a)q⁻²X)` for `a = μ₁(ϖ)`.
pub fn zeta_factored(nu: &ParamScalar, a: &ParamScalar, q: &ParamScalar) -> Result<ZetaRational> {
    check_q(q)?;
    if a.is_zero() {
        return Err(Error::InvalidParams("μ₁(ϖ) must be non-zero".into()));
    }
    let root = factored_root(nu, a, q);
    ZetaRational::new(
        LPoly::constant(ParamScalar::one()),
        &LPoly::one_minus(a) * &LPoly::one_minus(&root),
    )
}

/// `λ = (ν + q² − q²a)(1 + a/q)`.
pub fn lambda_from_nu(nu: &ParamScalar, a: &ParamScalar, q: &ParamScalar) -> Result<ParamScalar> {
    check_q(q)?;
    let q2 = qp(q, 2);
    Ok(&(&(nu + &q2) - &(&q2 * a)) * &(&ParamScalar::one() + &a.try_div(q)?))
}

/// `α = a⁻¹ + a⁻¹(q² − 1)(q²a⁻¹ + q)⁻¹·r` with `r = (θ′f)(γ_N)/f(e)`.
pub fn alpha_from_ratio(a: &ParamScalar, q: &ParamScalar, r: &ParamScalar) -> Result<ParamScalar> {
    check_q(q)?;
    let ainv = a.inv()?;
    let q2 = qp(q, 2);
    let obstruction = &(&q2 * &ainv) + q;
    if obstruction.is_zero() {
        return Err(Error::DivisionByZero("q²/a + q = 0".into()));
    }
    let tail = (&(&ainv * &(&q2 - &ParamScalar::one())) * r).try_div(&obstruction)?;
    Ok(&ainv + &tail)
}

/// `ε = q^N X^N`.
pub fn epsilon_factor(n: u32, q: &ParamScalar) -> Result<ZetaRational> {
    check_q(q)?;
    Ok(ZetaRational::monomial(qp(q, n as i64), n as i32))
}

/// The two shapes `Z(s, W, Φ)` can take relative to `L(s, π)` before the
/// functional-equation argument rules one out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialCandidate {
    /// `Z = L`.
    One,
    /// `Z = L/L_E(s, 1)`.
    InverseTrivialL,
}

/// The ε-factor the functional equation would force for the candidate, and
/// whether it is a monomial in `X`.
pub fn monomial_check(candidate: MonomialCandidate, n: u32, q: &ParamScalar) -> Result<(ZetaRational, bool)> {
    let eps = epsilon_factor(n, q)?;
    let cand = match candidate {
        MonomialCandidate::One => eps,
        MonomialCandidate::InverseTrivialL => {
            let l = l_factor(&LChar::Trivial)?;
            (&eps * &l).try_div(&l.reflect(q)?)?
        }
    };
    let mono = cand.is_monomial();
    Ok((cand, mono))
}

/// `d_i = c_{i−1} + q·c_i` and `d′_i = λc_i − q²d_{i+1}` for `0 ≤ i ≤ n`, with `d′_{−1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DChain {
    /// `d_0 … d_{n+1}`.
    pub d: Vec<ParamScalar>,
    /// `d′_{−1} … d′_n`.
    pub d_prime: Vec<ParamScalar>,
}

pub fn d_chain(c: &WhittakerSeq, lambda: &ParamScalar, q: &ParamScalar, n: usize) -> Result<DChain> {
    if c.len() < n + 3 {
        return Err(Error::InvalidParams(format!(
            "need c_0..c_{} for the chain up to {n}, have {} terms",
            n + 2,
            c.len()
        )));
    }
    let q2 = qp(q, 2);
    let d: Vec<ParamScalar> = (0..=n as i64 + 1).map(|i| &c.get(i - 1) + &(q * &c.get(i))).collect();
    let mut d_prime = vec![ParamScalar::zero()];
    for i in 0..=n {
        d_prime.push(&(lambda * &c.get(i as i64)) - &(&q2 * &d[i + 1]));
    }
    Ok(DChain { d, d_prime })
}

impl DChain {
    fn d_prime_at(&self, i: i64) -> &ParamScalar {
        &self.d_prime[(i + 1) as usize]
    }

    /// `ν d_i = d′_{i−1} + q⁴ d_{i+1}` for every `i` the chain covers.
    pub fn satisfies_hecke_relation(&self, nu: &ParamScalar, q: &ParamScalar) -> bool {
        let q4 = qp(q, 4);
        (0..self.d.len() as i64 - 1)
            .all(|i| nu * &self.d[i as usize] == self.d_prime_at(i - 1) + &(&q4 * &self.d[i as usize + 1]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> ParamScalar {
        ParamScalar::from_i64(n)
    }

    fn r(n: i64, d: i64) -> ParamScalar {
        ParamScalar::from_ratio(n, d).unwrap()
    }

    #[test]
    fn l_factors() {
        assert_eq!(l_factor(&LChar::Trivial).unwrap(), ZetaRational::geometric(&int(1)));
        assert_eq!(l_factor(&LChar::Ramified).unwrap(), ZetaRational::one());
        assert!(l_factor(&LChar::Unramified(int(0))).is_err());
    }

    #[test]
    fn first_coefficients() {
        let (nu, la, q) = (ParamScalar::nu(), ParamScalar::lambda(), ParamScalar::q());
        let c = whittaker_seq(&nu, &la, &q, 2).unwrap();
        assert_eq!(c.get(1), &(&nu - &q.pow(3).unwrap()) * &q.pow(-4).unwrap());
        assert_eq!(c.get(-1), int(0));
        let (alpha, _) = recursion_coefficients(&nu, &la, &q);
        assert_eq!(&c.get(1) - &alpha, -&q.pow(-2).unwrap());
    }

    #[test]
    fn ru2_values() {
        let c = whittaker_seq(&int(24), &int(32), &int(3), 6).unwrap();
        let (alpha, beta) = recursion_coefficients(&int(24), &int(32), &int(3));
        assert_eq!((alpha, beta), (r(2, 27), r(1, 243)));
        for i in 0..=6 {
            assert_eq!(c.get(i), r(-1, 27).pow(i).unwrap());
        }
        assert_eq!(zeta_closed(&int(24), &int(32), &int(3)).unwrap(), ZetaRational::geometric(&r(-1, 3)));
    }

    #[test]
    fn ratio_formula() {
        assert_eq!(alpha_from_ratio(&r(-1, 3), &int(3), &int(4)).unwrap(), int(1));
        assert_eq!(alpha_from_ratio(&r(1, 9), &int(3), &r(-21, 2)).unwrap(), int(0));
        assert!(alpha_from_ratio(&int(-3), &int(3), &int(1)).is_err());
        assert_eq!(lambda_from_nu(&int(24), &r(-1, 3), &int(3)).unwrap(), int(32));
    }

    #[test]
    fn epsilon_and_monomiality() {
        let e = epsilon_factor(2, &int(3)).unwrap();
        assert_eq!(e, ZetaRational::monomial(int(9), 2));
        assert_eq!(e.eval(&r(1, 3)).unwrap(), int(1));
        assert!(monomial_check(MonomialCandidate::One, 1, &int(3)).unwrap().1);
        assert!(!monomial_check(MonomialCandidate::InverseTrivialL, 1, &int(3)).unwrap().1);
    }
}
