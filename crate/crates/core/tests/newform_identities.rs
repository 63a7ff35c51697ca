use std::time::Instant;

use u21_core::induced::{
    eigen_pair, solve_gamma_value, verify_identity, InducedCase, NewformIdentity,
};
use u21_core::padic::{CycScalar, PrecisionContext};

fn int(n: i64) -> CycScalar {
    CycScalar::from_i64(n)
}

#[test]
fn ru2_unramified_eigenvalues() {
    for (p, nu, lambda) in [(3u64, 24i64, 32i64), (5, 120, 144)] {
        let ctx = PrecisionContext::new(p, 24).unwrap();
        let t = Instant::now();
        let ep = eigen_pair(&InducedCase::Ru2Unramified.newform(&ctx).unwrap()).unwrap();
        eprintln!("p={p}: {:?}", t.elapsed());
        assert_eq!(ep.nu, int(nu));
        assert_eq!(ep.lambda, int(lambda));
        assert_eq!(ep.theta_at_gamma, int(p as i64 + 1));
    }
}

#[test]
fn ru3_eigenvalues() {
    for (p, nu, lambda) in [(3u64, 36i64, 48i64), (5, 150, 180)] {
        let ctx = PrecisionContext::new(p, 24).unwrap();
        let t = Instant::now();
        let ep = eigen_pair(&InducedCase::Ru3 { c: 1 }.newform(&ctx).unwrap()).unwrap();
        eprintln!("p={p}: {:?}", t.elapsed());
        assert_eq!(ep.nu, int(nu));
        assert_eq!(ep.lambda, int(lambda));
        assert!(ep.theta_at_gamma.is_zero());
    }
}

#[test]
fn all_identities_hold() {
    let ctx = PrecisionContext::new(3, 24).unwrap();
    for case in [InducedCase::Ru2Unramified, InducedCase::Ru3 { c: 1 }] {
        for id in NewformIdentity::ALL {
            if !id.applies_to(&case) {
                continue;
            }
            let t = Instant::now();
            let r = verify_identity(&ctx, &case, id, None).unwrap();
            eprintln!("{} {id}: {:?} {} = {}", case.name(), t.elapsed(), r.lhs, r.rhs);
            assert!(r.holds, "{r:?}");
        }
    }
}

#[test]
fn steinberg_partial() {
    let ctx = PrecisionContext::new(3, 24).unwrap();
    let f = InducedCase::Steinberg.newform(&ctx).unwrap();
    let r = verify_identity(&ctx, &InducedCase::Steinberg, NewformIdentity::HeckeTwoValue, None).unwrap();
    eprintln!("{r:?}");
    let target = CycScalar::from_ratio(-21, 2).unwrap();
    let u = solve_gamma_value(&f, &target).unwrap();
    eprintln!("U = {u}");
    let ep = eigen_pair(&f.with_gamma_value(u)).unwrap();
    eprintln!("{ep:?}");
}
