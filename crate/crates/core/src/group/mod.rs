//! The unitary group `G = {g ∈ GL_3(E) : ᵗḡ J g = J}` with `J` antidiagonal.

mod decomp;
pub mod identities;
pub mod sample;
mod subgroup;

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::padic::{ExtElem, LocalElem, PrecisionContext};

pub use decomp::{classify_coset, iwasawa_k0, reduce_bk, BorelElt, CosetClass, CosetWitness};
pub use subgroup::{is_in_subgroup, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupElt {
    m: [[ExtElem; 3]; 3],
}

impl GroupElt {
    /// Wraps a matrix without checking the defining form.
    pub fn from_matrix_unchecked(m: [[ExtElem; 3]; 3]) -> Self {
        Self { m }
    }

    pub fn from_matrix(m: [[ExtElem; 3]; 3]) -> Result<Self> {
        let g = Self { m };
        if !g.is_in_g()? {
            return Err(Error::Domain(format!("matrix does not preserve the form:\n{g}")));
        }
        Ok(g)
    }

    pub fn ctx(&self) -> &PrecisionContext {
        self.m[0][0].ctx()
    }

    pub fn entry(&self, i: usize, j: usize) -> ExtElem {
        self.m[i][j]
    }

    pub fn rows(&self) -> &[[ExtElem; 3]; 3] {
        &self.m
    }

    pub fn identity(ctx: &PrecisionContext) -> Self {
        Self::diag3(ctx, ExtElem::one(ctx), ExtElem::one(ctx), ExtElem::one(ctx))
    }

    fn diag3(ctx: &PrecisionContext, a: ExtElem, b: ExtElem, c: ExtElem) -> Self {
        let z = ExtElem::zero(ctx);
        Self { m: [[a, z, z], [z, b, z], [z, z, c]] }
    }

    fn j(ctx: &PrecisionContext) -> [[ExtElem; 3]; 3] {
        let z = ExtElem::zero(ctx);
        let o = ExtElem::one(ctx);
        [[z, z, o], [z, o, z], [o, z, z]]
    }

    /// `u(x, y)` with `x ∈ E`, `y ∈ F`: upper-right entry `y√ε − x x̄/2`.
    pub fn u(x: ExtElem, y: LocalElem) -> Self {
        let ctx = *x.ctx();
        let mut g = Self::identity(&ctx);
        g.m[0][1] = x;
        g.m[0][2] = ExtElem::new(&ctx, LocalElem::ZERO, y) - (x * x.conj()).half();
        g.m[1][2] = -x.conj();
        g
    }

    /// `u(x, y)` in the second parametrization, requiring `y + ȳ + x x̄ = 0`.
    pub fn bold_u(x: ExtElem, y: ExtElem) -> Result<Self> {
        let trace_condition = y + y.conj() + x * x.conj();
        if !trace_condition.is_zero() {
            return Err(Error::Domain(format!(
                "bold u({x}, {y}) violates y + ȳ + x x̄ = 0"
            )));
        }
        let ctx = *x.ctx();
        let mut g = Self::identity(&ctx);
        g.m[0][1] = x;
        g.m[0][2] = y;
        g.m[1][2] = -x.conj();
        Ok(g)
    }

    /// Transpose of `u(x, y)`.
    pub fn u_hat(x: ExtElem, y: LocalElem) -> Self {
        Self::u(x, y).transpose()
    }

    /// Transpose of the second-parametrization `u(x, y)`.
    pub fn bold_u_hat(x: ExtElem, y: ExtElem) -> Result<Self> {
        Ok(Self::bold_u(x, y)?.transpose())
    }

    /// `t(a) = diag(a, 1, ā⁻¹)`.
    pub fn t(a: ExtElem) -> Result<Self> {
        let ctx = *a.ctx();
        Ok(Self::diag3(&ctx, a, ExtElem::one(&ctx), a.conj().inv()?))
    }

    /// `diag(α, β, ᾱ⁻¹)` with `β β̄ = 1`.
    pub fn torus(alpha: ExtElem, beta: ExtElem) -> Result<Self> {
        let ctx = *alpha.ctx();
        if !(beta * beta.conj() - ExtElem::one(&ctx)).is_zero() {
            return Err(Error::Domain(format!("β = {beta} is not of norm one")));
        }
        Ok(Self::diag3(&ctx, alpha, beta, alpha.conj().inv()?))
    }

    /// Scalar matrix `β·1` with `β β̄ = 1`, a central element.
    pub fn center(beta: ExtElem) -> Result<Self> {
        let ctx = *beta.ctx();
        if !(beta * beta.conj() - ExtElem::one(&ctx)).is_zero() {
            return Err(Error::Domain(format!("β = {beta} is not of norm one")));
        }
        Ok(Self::diag3(&ctx, beta, beta, beta))
    }

    /// `ζ^k = diag(ϖ^k, 1, ϖ^{-k})`.
    pub fn zeta_pow(ctx: &PrecisionContext, k: i32) -> Self {
        Self::diag3(
            ctx,
            ExtElem::pi_pow(ctx, k),
            ExtElem::one(ctx),
            ExtElem::pi_pow(ctx, -k),
        )
    }

    pub fn zeta(ctx: &PrecisionContext) -> Self {
        Self::zeta_pow(ctx, 1)
    }

    /// `γ_i = û(ϖ^i, 0)`.
    pub fn gamma(ctx: &PrecisionContext, i: i32) -> Self {
        Self::u_hat(ExtElem::pi_pow(ctx, i), LocalElem::ZERO)
    }

    /// `t_i`: antidiagonal `(ϖ^{-i}, 1, ϖ^i)`.
    pub fn t_index(ctx: &PrecisionContext, i: i32) -> Self {
        let z = ExtElem::zero(ctx);
        Self {
            m: [
                [z, z, ExtElem::pi_pow(ctx, -i)],
                [z, ExtElem::one(ctx), z],
                [ExtElem::pi_pow(ctx, i), z, z],
            ],
        }
    }

    pub fn transpose(&self) -> Self {
        let m = &self.m;
        Self {
            m: [
                [m[0][0], m[1][0], m[2][0]],
                [m[0][1], m[1][1], m[2][1]],
                [m[0][2], m[1][2], m[2][2]],
            ],
        }
    }

    fn conj_transpose(&self) -> [[ExtElem; 3]; 3] {
        let t = self.transpose();
        t.m.map(|row| row.map(|x| x.conj()))
    }

    /// `g⁻¹ = J ᵗḡ J`, valid for elements of `G`; no division involved.
    pub fn inverse(&self) -> Self {
        let m = &self.m;
        let mut out = self.m;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = m[2 - j][2 - i].conj();
            }
        }
        Self { m: out }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.ctx()), |acc, _| acc * *self)
    }

    /// Checks `ᵗḡ J g = J` and `val det g = 0` at the available precision.
    pub fn is_in_g(&self) -> Result<bool> {
        let ctx = *self.ctx();
        let j = Self::j(&ctx);
        let lhs = mat_mul(&mat_mul(&self.conj_transpose(), &j), &self.m);
        let form_ok = lhs
            .iter()
            .zip(j.iter())
            .all(|(r, s)| r.iter().zip(s.iter()).all(|(a, b)| (*a - *b).is_zero()));
        if !form_ok {
            return Ok(false);
        }
        Ok(self.det().val()? == Some(0))
    }

    pub fn det(&self) -> ExtElem {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Entrywise comparison at the available precision; reports the first differing entry.
    pub fn mismatch(&self, other: &Self) -> Option<(usize, usize)> {
        for i in 0..3 {
            for j in 0..3 {
                if !(self.m[i][j] - other.m[i][j]).is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

fn mat_mul(a: &[[ExtElem; 3]; 3], b: &[[ExtElem; 3]; 3]) -> [[ExtElem; 3]; 3] {
    let mut out = *a;
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    out
}

impl Mul for GroupElt {
    type Output = GroupElt;
    fn mul(self, rhs: GroupElt) -> GroupElt {
        GroupElt { m: mat_mul(&self.m, &rhs.m) }
    }
}

impl<'a> Mul<&'a GroupElt> for &'a GroupElt {
    type Output = GroupElt;
    fn mul(self, rhs: &GroupElt) -> GroupElt {
        GroupElt { m: mat_mul(&self.m, &rhs.m) }
    }
}

impl fmt::Display for GroupElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.m {
            writeln!(f, "[{}, {}, {}]", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(3, 24).unwrap()
    }

    #[test]
    fn generators_preserve_form() {
        let c = ctx();
        let x = ExtElem::from_ints(&c, 1, 1);
        let y = LocalElem::from_i64(&c, 2);
        for g in [
            GroupElt::u(x, y),
            GroupElt::u_hat(x, y),
            GroupElt::t(x).unwrap(),
            GroupElt::zeta(&c),
            GroupElt::gamma(&c, 2),
            GroupElt::t_index(&c, 3),
        ] {
            assert!(g.is_in_g().unwrap(), "{g}");
        }
    }

    #[test]
    fn relations() {
        let c = ctx();
        let e = GroupElt::identity(&c);
        for i in 0..4 {
            let t = GroupElt::t_index(&c, i);
            assert_eq!(t * t, e);
        }
        let x = LocalElem::from_i64(&c, 5);
        let y = LocalElem::from_ratio(&c, 1, 9).unwrap();
        let zero = ExtElem::zero(&c);
        assert_eq!(GroupElt::u(zero, x) * GroupElt::u(zero, y), GroupElt::u(zero, x + y));
        assert_eq!(GroupElt::zeta_pow(&c, 2) * GroupElt::zeta_pow(&c, -5), GroupElt::zeta_pow(&c, -3));
    }

    #[test]
    fn inverse_is_unitary_inverse() {
        let c = ctx();
        let g = GroupElt::u(ExtElem::from_ints(&c, 2, 1), LocalElem::from_i64(&c, 7))
            * GroupElt::gamma(&c, 1)
            * GroupElt::t_index(&c, 2);
        assert_eq!(g * g.inverse(), GroupElt::identity(&c));
    }

    #[test]
    fn bold_u_trace_condition() {
        let c = ctx();
        let x = ExtElem::from_ints(&c, 1, 1);
        // y = -x x̄ / 2 + √ε satisfies the trace condition
        let y = -(x * x.conj()).half() + ExtElem::sqrt_eps(&c);
        assert!(GroupElt::bold_u(x, y).unwrap().is_in_g().unwrap());
        assert!(GroupElt::bold_u(x, ExtElem::one(&c)).is_err());
    }
}
