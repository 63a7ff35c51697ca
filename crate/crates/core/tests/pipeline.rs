use u21_core::classify::{cross_check, ReprSpec};
use u21_core::symbolic::ParamScalar;

#[test]
fn cross_checks_pass() {
    let specs = [
        (ReprSpec::Ru2 { c: 0 }, vec![3, 5]),
        (ReprSpec::Ru3 { c: 1 }, vec![3, 5]),
        (ReprSpec::Ru3 { c: 2 }, vec![3]),
        (ReprSpec::Steinberg, vec![3, 5]),
        (ReprSpec::IrredPsUnramMu2 { a: ParamScalar::from_i64(2), c: 1, n: 1 }, vec![3, 5]),
    ];
    for (spec, primes) in specs {
        for p in primes {
            let t = std::time::Instant::now();
            let r = cross_check(&spec, p).unwrap();
            eprintln!("{spec} p={p} {:?}: nu={} lambda={} ratio={} Z={}", t.elapsed(), r.nu, r.lambda, r.ratio, r.zeta_factored);
            assert!(r.passed(), "{r:#?}");
        }
    }
}
