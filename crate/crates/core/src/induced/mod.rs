//! Newforms in induced models `Ind_B^G(μ₁ ⊗ μ₂)` with unramified `μ₁`, and
//! the operators `θ′`, `′`, `T`, `δθ′` acting on them.

mod character;
mod function;
mod eigen;
mod operators;

pub use character::CharacterMu2;
pub use function::{EvalResult, InducedFn, InducedParams, LinearForm, SupportMode};
pub use eigen::{
    eigen_pair, hecke_two_value_coefficients, lambda_from_nu, nu_from_ratio, solve_gamma_value,
    theta_identity_factor, verify_identity, EigenPair, IdentityReport, InducedCase, NewformIdentity,
};
pub use operators::{apply_delta_theta, apply_hecke_t, apply_prime, apply_theta_prime, operator_sizes};
