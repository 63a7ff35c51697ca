//! Truncated arithmetic in `F = Q_p` and its unramified quadratic extension.

mod context;
mod cyclo;
mod ext;
mod local;
mod transversal;

pub use context::PrecisionContext;
pub use cyclo::{cyclotomic_poly, CycScalar};
pub use ext::ExtElem;
pub use local::LocalElem;
pub use transversal::{additive_char_sum, psi_e, residue_transversal, Field};

