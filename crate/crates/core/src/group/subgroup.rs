use super::GroupElt;
use crate::error::Result;
use crate::padic::ExtElem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subgroup {
    G,
    /// Upper triangular elements.
    B,
    /// Unipotent radical of `B`.
    U,
    /// The congruence subgroup `K_n`.
    K(u32),
    /// `Z ∩ (1 + p_E^n)` inside the center.
    Z(u32),
}

/// Minimal valuation allowed at each entry of `K_n`.
fn k_bounds(n: i32) -> [[i32; 3]; 3] {
    [[0, 0, -n], [n, 0, 0], [n, n, 0]]
}

fn is_one_mod(x: &ExtElem, n: i32) -> Result<bool> {
    (*x - ExtElem::one(x.ctx())).val_at_least(n)
}

pub fn is_in_subgroup(g: &GroupElt, which: Subgroup) -> Result<bool> {
    let m = g.rows();
    let lower_zero = || m[1][0].is_zero() && m[2][0].is_zero() && m[2][1].is_zero();
    match which {
        Subgroup::G => g.is_in_g(),
        Subgroup::B => Ok(lower_zero()),
        Subgroup::U => Ok(lower_zero()
            && (0..3).all(|i| (m[i][i] - ExtElem::one(g.ctx())).is_zero())),
        Subgroup::K(n) => {
            let n = n as i32;
            let bounds = k_bounds(n);
            for i in 0..3 {
                for j in 0..3 {
                    if !m[i][j].val_at_least(bounds[i][j])? {
                        return Ok(false);
                    }
                }
            }
            is_one_mod(&m[1][1], n)
        }
        Subgroup::Z(n) => {
            let d = m[0][0];
            let scalar = (0..3).all(|i| {
                (0..3).all(|j| if i == j { (m[i][j] - d).is_zero() } else { m[i][j].is_zero() })
            });
            Ok(scalar && is_one_mod(&d, n as i32)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PrecisionContext;

    #[test]
    fn membership_examples() {
        let c = PrecisionContext::new(3, 24).unwrap();
        for n in 1..4 {
            assert!(is_in_subgroup(&GroupElt::t_index(&c, n), Subgroup::K(n as u32)).unwrap());
            assert!(is_in_subgroup(&GroupElt::gamma(&c, n), Subgroup::K(n as u32)).unwrap());
            assert!(!is_in_subgroup(&GroupElt::gamma(&c, n), Subgroup::K(n as u32 + 1)).unwrap());
        }
        assert!(!is_in_subgroup(&GroupElt::zeta(&c), Subgroup::K(0)).unwrap());
        assert!(is_in_subgroup(&GroupElt::zeta(&c), Subgroup::B).unwrap());
        assert!(!is_in_subgroup(&GroupElt::zeta(&c), Subgroup::U).unwrap());
        let u = GroupElt::u(ExtElem::from_ints(&c, 1, 2), crate::padic::LocalElem::from_i64(&c, 4));
        assert!(is_in_subgroup(&u, Subgroup::U).unwrap());
        let z = GroupElt::center(ExtElem::from_i64(&c, -1)).unwrap();
        assert!(is_in_subgroup(&z, Subgroup::Z(0)).unwrap());
        assert!(!is_in_subgroup(&z, Subgroup::Z(1)).unwrap());
    }
}
