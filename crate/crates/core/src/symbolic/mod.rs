//! Exact rational functions in `X = q^{-2s}` over the parameter field `Q(ν, λ, a, q)`.

mod formulas;
mod parse;
mod poly;
mod ratfn;
mod zeta;

pub use formulas::{
    alpha_from_ratio, d_chain, epsilon_factor, factored_root, l_factor, lambda_from_nu, monomial_check,
    recursion_coefficients, whittaker_seq, zeta_closed, zeta_denominator, zeta_factored, zeta_series,
    zeta_with_phi, DChain, LChar, MonomialCandidate, WhittakerSeq,
};
pub use parse::{parse_param, parse_zeta};
pub use poly::{gcd, MPoly, Var, Q};
pub use ratfn::ParamScalar;
pub use zeta::{divides, LPoly, ZetaRational};
