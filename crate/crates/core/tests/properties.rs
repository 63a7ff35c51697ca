//! Property tests for the algebraic invariants of each layer.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use u21_core::classify::{invariants, table_cases};
use u21_core::group::sample::{random_borel, random_ext, random_k};
use u21_core::group::{BorelElt, GroupElt};
use u21_core::induced::{apply_theta_prime, InducedCase};
use u21_core::padic::{CycScalar, PrecisionContext};
use u21_core::symbolic::{divides, parse_param, parse_zeta, LPoly, ParamScalar, ZetaRational};

fn ctx(p: u64) -> PrecisionContext {
    PrecisionContext::new(p, 24).unwrap()
}

fn rational() -> impl Strategy<Value = ParamScalar> {
    (-6i64..=6, 1i64..=5).prop_map(|(n, d)| ParamScalar::from_ratio(n, d).unwrap())
}

/// Laurent monomials in `ν, a, q` with small rational coefficients, summed.
fn laurent() -> impl Strategy<Value = ParamScalar> {
    let term = (rational(), 0i64..=2, -1i64..=2, -2i64..=2).prop_map(|(c, e_nu, e_a, e_q)| {
        &(&(&c * &ParamScalar::nu().pow(e_nu).unwrap()) * &ParamScalar::a().pow(e_a).unwrap())
            * &ParamScalar::q().pow(e_q).unwrap()
    });
    prop::collection::vec(term, 1..=3).prop_map(|ts| ts.iter().fold(ParamScalar::zero(), |acc, t| &acc + t))
}

fn scalar() -> impl Strategy<Value = ParamScalar> {
    (laurent(), laurent()).prop_map(|(n, d)| if d.is_zero() { n } else { n.try_div(&d).unwrap() })
}

fn lpoly() -> impl Strategy<Value = LPoly> {
    (-2i32..=2, prop::collection::vec(scalar(), 1..=3)).prop_map(|(low, cs)| LPoly::new(low, cs))
}

fn zeta_rational() -> impl Strategy<Value = ZetaRational> {
    (lpoly(), prop::collection::vec(scalar(), 0..=2)).prop_map(|(num, tail)| {
        let mut den = vec![ParamScalar::one()];
        den.extend(tail);
        ZetaRational::new(num, LPoly::new(0, den)).unwrap()
    })
}

/// Products `∏ 1/(1 − c X)^{e_c}` over a fixed list of distinct `c`.
fn l_factor_exponents() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..=2, 4)
}

fn l_factor(exps: &[u32]) -> ZetaRational {
    let cs = [
        ParamScalar::one(),
        ParamScalar::from_i64(2),
        ParamScalar::from_ratio(-1, 3).unwrap(),
        ParamScalar::a(),
    ];
    cs.iter()
        .zip(exps)
        .fold(ZetaRational::one(), |acc, (c, &e)| &acc * &ZetaRational::geometric(c).pow(e as i64).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn param_scalar_field_laws(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x - &x, ParamScalar::zero());
        if !y.is_zero() {
            prop_assert_eq!((&x * &y).try_div(&y).unwrap(), x.clone());
            prop_assert!((&y * &y.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn param_scalar_round_trips_through_text(x in scalar()) {
        prop_assert_eq!(parse_param(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn zeta_round_trips_through_text(z in zeta_rational()) {
        prop_assert_eq!(parse_zeta(&z.to_string()).unwrap(), z);
    }

    #[test]
    fn reflection_is_an_involution(z in zeta_rational(), q in prop_oneof![Just(3i64), Just(5), Just(0)]) {
        let q = if q == 0 { ParamScalar::q() } else { ParamScalar::from_i64(q) };
        prop_assert_eq!(z.reflect(&q).unwrap().reflect(&q).unwrap(), z);
    }

    #[test]
    fn divides_is_a_partial_order(e in l_factor_exponents(), f in l_factor_exponents(), g in l_factor_exponents()) {
        let (le, lf, lg) = (l_factor(&e), l_factor(&f), l_factor(&g));
        prop_assert!(divides(&le, &le).unwrap());
        let ef = divides(&le, &lf).unwrap();
        let fe = divides(&lf, &le).unwrap();
        prop_assert_eq!(ef, e.iter().zip(&f).all(|(a, b)| a <= b));
        if ef && fe {
            prop_assert_eq!(&le, &lf);
        }
        if ef && divides(&lf, &lg).unwrap() {
            prop_assert!(divides(&le, &lg).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ext_field_axioms(seed in any::<u64>(), p in prop_oneof![Just(3u64), Just(5)]) {
        let ctx = ctx(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_ext(&ctx, -2, &mut rng);
        let y = random_ext(&ctx, -1, &mut rng);
        prop_assert_eq!((x * y).norm(), x.norm() * y.norm());
        if let (Some(vx), Some(vy)) = (x.val().unwrap(), y.val().unwrap()) {
            prop_assert_eq!((x * y).try_div(&y).unwrap(), x);
            prop_assert_eq!((x * y).val().unwrap(), Some(vx + vy));
            if vx != vy {
                prop_assert_eq!((x + y).val().unwrap(), Some(vx.min(vy)));
            }
        }
    }

    #[test]
    fn borel_transformation_law(seed in any::<u64>(), p in prop_oneof![Just(3u64), Just(5)], i in 0i32..=2) {
        let ctx = ctx(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = InducedCase::Ru3 { c: 1 }.newform(&ctx).unwrap();
        let g = random_k(&ctx, 0, 3, &mut rng).unwrap() * GroupElt::gamma(&ctx, i);
        let b = BorelElt::new(random_borel(&ctx, &mut rng).unwrap()).unwrap();
        let lhs = f.eval(&(*b.elt() * g)).unwrap().scalar().unwrap();
        let rhs = &f.borel_factor(&b).unwrap() * &f.eval(&g).unwrap().scalar().unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn theta_is_right_invariant_at_the_next_level(seed in any::<u64>(), i in 0i32..=2) {
        let ctx = ctx(3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let theta = apply_theta_prime(&InducedCase::Ru3 { c: 1 }.newform(&ctx).unwrap()).unwrap();
        let g = random_borel(&ctx, &mut rng).unwrap() * GroupElt::gamma(&ctx, i);
        let k = random_k(&ctx, 2, 3, &mut rng).unwrap();
        prop_assert_eq!(theta.eval(&(g * k)).unwrap().scalar().unwrap(), theta.eval(&g).unwrap().scalar().unwrap());
    }

    #[test]
    fn theta_at_identity(num in prop_oneof![Just(2i64), Just(3), Just(-2), Just(5), Just(7)], den in 1i64..=4) {
        prop_assume!(num.abs() != den);
        let ctx = ctx(3);
        let f = InducedCase::Irreducible { a_num: num, a_den: den, c: 1 }.newform(&ctx);
        prop_assume!(f.is_ok());
        let f = f.unwrap();
        let e = GroupElt::identity(&ctx);
        let a = CycScalar::from_ratio(num, den).unwrap();
        let q = CycScalar::from_i64(3);
        let factor = &(&(&q * &q) / &a) + &q;
        let lhs = apply_theta_prime(&f).unwrap().eval(&e).unwrap().scalar().unwrap();
        prop_assert_eq!(lhs, &factor * &f.eval(&e).unwrap().scalar().unwrap());
    }
}

#[test]
fn invariants_are_deterministic() {
    for q in [ParamScalar::from_i64(3), ParamScalar::q()] {
        for spec in table_cases() {
            assert_eq!(invariants(&spec, &q).unwrap(), invariants(&spec, &q).unwrap());
        }
    }
}
