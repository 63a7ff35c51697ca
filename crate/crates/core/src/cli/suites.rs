//! Verification suites. Each suite turns its checks into report records;
//! errors become failing records rather than aborting the run.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::RunConfig;
use super::report::Record;
use crate::classify::{cross_check, invariants, steinberg_ratio, table_cases, ReprSpec};
use crate::error::{Error, Result};
use crate::group::identities::{check_random, Identity};
use crate::group::sample::{random_borel, random_ext, random_k, random_unit};
use crate::group::{classify_coset, reduce_bk, GroupElt};
use crate::induced::{
    eigen_pair, nu_from_ratio, solve_gamma_value, verify_identity, InducedCase, NewformIdentity,
};
use crate::padic::{additive_char_sum, residue_transversal, CycScalar, Field, PrecisionContext};
use crate::symbolic::{
    d_chain, divides, factored_root, lambda_from_nu, monomial_check, recursion_coefficients, whittaker_seq,
    zeta_closed, zeta_denominator, zeta_series, LPoly, MonomialCandidate, ParamScalar,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Padic,
    Group,
    Identities,
    Eigenvalues,
    Recursions,
    Pipeline,
    Monomial,
    Estimates,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Padic,
        Suite::Group,
        Suite::Identities,
        Suite::Eigenvalues,
        Suite::Recursions,
        Suite::Pipeline,
        Suite::Monomial,
        Suite::Estimates,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Padic => "padic",
            Suite::Group => "group",
            Suite::Identities => "identities",
            Suite::Eigenvalues => "eigenvalues",
            Suite::Recursions => "recursions",
            Suite::Pipeline => "pipeline",
            Suite::Monomial => "monomial",
            Suite::Estimates => "estimates",
        }
    }

    fn seed_offset(&self) -> u64 {
        *self as u64 * 0x9e37_79b9
    }

    pub fn run(&self, cfg: &RunConfig) -> Vec<Record> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ self.seed_offset());
        let ctx = match cfg.context() {
            Ok(c) => c,
            Err(e) => return vec![Record::error(format!("{}/context", self.name()), "valid configuration", "", &e)],
        };
        match self {
            Suite::Padic => padic(&ctx, cfg, &mut rng),
            Suite::Group => group(&ctx, cfg, &mut rng),
            Suite::Identities => identities(&ctx, cfg, &mut rng),
            Suite::Eigenvalues => eigenvalues(&ctx),
            Suite::Recursions => recursions(cfg),
            Suite::Pipeline => pipeline(cfg),
            Suite::Monomial => monomial(cfg),
            Suite::Estimates => estimates(cfg),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown suite {s:?}")))
    }
}

/// Runs `check` `samples` times and reports how many succeeded, with the first failure.
fn sampled(
    name: String,
    claim: &str,
    inputs: String,
    samples: usize,
    mut check: impl FnMut(usize) -> Result<Option<String>>,
) -> Record {
    let mut ok = 0;
    let mut first_failure = None;
    for i in 0..samples {
        match check(i) {
            Ok(None) => ok += 1,
            Ok(Some(msg)) => {
                first_failure.get_or_insert(format!("sample {i}: {msg}"));
            }
            Err(e) => {
                first_failure.get_or_insert(format!("sample {i}: error: {e}"));
            }
        }
    }
    let expected = format!("{samples} of {samples} exact");
    let computed = match first_failure {
        None => format!("{ok} of {samples} exact"),
        Some(f) => format!("{ok} of {samples} exact; {f}"),
    };
    Record::new(name, claim, inputs, expected, computed)
}

fn padic(ctx: &PrecisionContext, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Vec<Record> {
    let q = ctx.q();
    let inputs = format!("p={}, M={}", ctx.p(), ctx.precision());
    let mut out = vec![];
    out.push(sampled(
        "padic/field-operations".into(),
        "multiplication is associative and distributive, and division inverts multiplication in E",
        inputs.clone(),
        cfg.samples,
        |_| {
            let (x, y, z) = (random_ext(ctx, -2, rng), random_unit(ctx, rng), random_ext(ctx, 1, rng));
            if (x * y) * z != x * (y * z) || x * (y + z) != x * y + x * z {
                return Ok(Some(format!("x={x}, y={y}, z={z}")));
            }
            Ok(((x * y).try_div(&y)? != x).then(|| format!("(x·y)/y ≠ x at x={x}, y={y}")))
        },
    ));
    out.push(sampled(
        "padic/norm-and-conjugation".into(),
        "conjugation is an involution and the norm is multiplicative",
        inputs.clone(),
        cfg.samples,
        |_| {
            let (x, y) = (random_ext(ctx, -1, rng), random_ext(ctx, 0, rng));
            let ok = x.conj().conj() == x && (x * y).norm() == x.norm() * y.norm();
            Ok((!ok).then(|| format!("x={x}, y={y}")))
        },
    ));
    let sizes = (|| -> Result<String> {
        Ok(format!(
            "{} {}",
            residue_transversal(ctx, Field::F, -1, 0)?.len(),
            residue_transversal(ctx, Field::E, 0, 1)?.len()
        ))
    })();
    out.push(match sizes {
        Ok(s) => Record::new(
            "padic/transversal-sizes",
            "residue transversals of p_F^-1/o_F and o_E/p_E have q and q^2 elements",
            inputs.clone(),
            format!("{q} {}", q * q),
            s,
        ),
        Err(e) => Record::error("padic/transversal-sizes", "", inputs.clone(), &e),
    });
    out.push(match additive_char_sum(ctx, -1) {
        Ok(s) => Record::new(
            "padic/character-sum",
            "the sum of psi_E over p_E^-1/o_E vanishes in Q(zeta_p)",
            inputs.clone(),
            CycScalar::zero(),
            s,
        ),
        Err(e) => Record::error("padic/character-sum", "", inputs, &e),
    });
    out
}

fn group(ctx: &PrecisionContext, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Vec<Record> {
    let inputs = format!("p={}, M={}", ctx.p(), ctx.precision());
    let mut out = vec![];
    out.push(sampled(
        "group/borel-congruence-reconstruction".into(),
        "every product b·k with b in B and k in K_n is recognized and reconstructed exactly",
        inputs.clone(),
        cfg.samples,
        |i| {
            let n = 1 + (i % 3) as u32;
            let g = random_borel(ctx, rng)? * random_k(ctx, n, 5, rng)?;
            Ok(match reduce_bk(&g, n)? {
                Some((b, k)) if *b.elt() * k == g => None,
                Some(_) => Some(format!("reconstruction differs at n={n}")),
                None => Some(format!("not recognized at n={n}:\n{g}")),
            })
        },
    ));
    out.push(sampled(
        "group/coset-bi-invariance".into(),
        "the double coset of b·gamma_i·k is the class of gamma_max(i, n-i)",
        inputs.clone(),
        cfg.samples,
        |_| {
            let n = rng.gen_range(1..=4u32);
            let i = rng.gen_range(0..=n);
            let g = random_borel(ctx, rng)? * GroupElt::gamma(ctx, i as i32) * random_k(ctx, n, 5, rng)?;
            let got = classify_coset(&g, n)?.rep_index();
            Ok((got != Some(i.max(n - i))).then(|| format!("n={n}, i={i}: got {got:?}")))
        },
    ));
    let disjoint = (2..=5u32)
        .map(|n| classify_coset(&GroupElt::gamma(ctx, n as i32 - 1), n).map(|c| c.rep_index() != Some(n)))
        .collect::<Result<Vec<bool>>>();
    out.push(match disjoint {
        Ok(v) => Record::new(
            "group/gamma-outside-identity-coset",
            "gamma_(n-1) is not in B·K_n for n = 2..5",
            inputs,
            "true true true true",
            v.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" "),
        ),
        Err(e) => Record::error("group/gamma-outside-identity-coset", "", inputs, &e),
    });
    out
}

fn identities(ctx: &PrecisionContext, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Vec<Record> {
    Identity::ALL
        .iter()
        .map(|&which| {
            sampled(
                format!("identities/{}", which.tag()),
                which.description(),
                format!("p={}, M={}, samples={}", ctx.p(), ctx.precision(), cfg.samples),
                cfg.samples,
                |_| Ok(check_random(ctx, which, rng)?.failure),
            )
        })
        .collect()
}

fn eigen_cases() -> Vec<InducedCase> {
    vec![
        InducedCase::Ru2Unramified,
        InducedCase::Ru3 { c: 1 },
        InducedCase::Steinberg,
        InducedCase::Irreducible { a_num: 2, a_den: 1, c: 1 },
    ]
}

/// The value of `U` making the Steinberg newform's zeta integral `L_E(s, μ₁)`.
fn steinberg_gamma_value(ctx: &PrecisionContext) -> Result<CycScalar> {
    let q = ParamScalar::from_i64(ctx.q() as i64);
    let r = steinberg_ratio(&q)?
        .to_rational()
        .ok_or_else(|| Error::Inconsistency("steinberg ratio is not rational".into()))?;
    solve_gamma_value(&InducedCase::Steinberg.newform(ctx)?, &CycScalar::from_rational(r))
}

fn eigenvalues(ctx: &PrecisionContext) -> Vec<Record> {
    let mut out = vec![];
    let p = ctx.p();
    for case in eigen_cases() {
        let gamma_value = if case == InducedCase::Steinberg {
            match steinberg_gamma_value(ctx) {
                Ok(u) => {
                    out.push(steinberg_consistency(ctx, &u));
                    Some(u)
                }
                Err(e) => {
                    out.push(Record::error(format!("eigenvalues/{}/gamma-value", case.name()), "", "", &e));
                    continue;
                }
            }
        } else {
            None
        };
        for which in NewformIdentity::ALL {
            if !which.applies_to(&case) {
                continue;
            }
            let name = format!("eigenvalues/{}/{}", case.name(), which.tag());
            let inputs = format!("p={p}");
            // the two-value Hecke identity is checked with U left unknown
            let u = if which == NewformIdentity::HeckeTwoValue { None } else { gamma_value.clone() };
            out.push(match verify_identity(ctx, &case, which, u) {
                Ok(r) => {
                    let computed = if r.intermediates.is_empty() {
                        r.lhs.clone()
                    } else {
                        let extra: Vec<String> = r.intermediates.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                        format!("{} ({})", r.lhs, extra.join(", "))
                    };
                    Record::with_status(name, identity_claim(which), inputs, r.rhs, computed, r.holds)
                }
                Err(e) => Record::error(name, identity_claim(which), inputs, &e),
            });
        }
    }
    out
}

fn identity_claim(which: NewformIdentity) -> &'static str {
    match which {
        NewformIdentity::ThetaAtIdentity => "(theta' f)(e) = (q^2/a + q) f(e)",
        NewformIdentity::LambdaFromNu => "lambda = (nu + q^2 - q^2 a)(1 + a/q)",
        NewformIdentity::LoweringCollapse => "lambda f(e) = (theta' f)'(e) + a (theta' f)(e)",
        NewformIdentity::HeckeTwoValue => {
            "nu g(e) = (q^2(a + 1/a) + q^3 - q^2) g(e) + q^2(q^2 - 1)/a g(gamma_N) for g = theta' f"
        }
        NewformIdentity::NuFromRatio => "nu is determined by (theta' f)(gamma_N)/f(e)",
        NewformIdentity::ThetaAtGammaOne => "(theta' f)(gamma_1) = (q + 1) f(e)",
        NewformIdentity::ThetaVanishesAtGamma => "(theta' f)(gamma_N) = 0 and gamma_N is outside B·K_(N+1)",
    }
}

fn steinberg_consistency(ctx: &PrecisionContext, u: &CycScalar) -> Record {
    let name = "eigenvalues/steinberg/gamma-value";
    let claim = "the value U solving alpha = 0 yields eigenvalues consistent with the ratio formula";
    let inputs = format!("p={}, U={u}", ctx.p());
    let res = (|| -> Result<(CycScalar, CycScalar)> {
        let f = InducedCase::Steinberg.newform(ctx)?.with_gamma_value(u.clone());
        let ep = eigen_pair(&f)?;
        let q = CycScalar::from_i64(ctx.q() as i64);
        Ok((nu_from_ratio(&q, &f.params().a, &ep.theta_at_gamma)?, ep.nu))
    })();
    match res {
        Ok((expected, nu)) => Record::new(name, claim, inputs, expected, nu),
        Err(e) => Record::error(name, claim, inputs, &e),
    }
}

fn recursions(cfg: &RunConfig) -> Vec<Record> {
    let (nu, la, a, q) = (ParamScalar::nu(), ParamScalar::lambda(), ParamScalar::a(), ParamScalar::q());
    let m = cfg.terms;
    let inputs = format!("symbolic in nu, lambda, a, q; terms={m}");
    let mut out = vec![];
    let res = (|| -> Result<Vec<Record>> {
        let c = whittaker_seq(&nu, &la, &q, m.max(10))?;
        let mut recs = vec![Record::with_status(
            "recursions/whittaker-recursion",
            "(nu - q^3)c_0 = q^4 c_1 and (nu + q^2 - lambda)c_i + q(nu + q^2 - q^3)c_(i+1) = q^5 c_(i+2)",
            inputs.clone(),
            "holds",
            if c.satisfies_recursions(&nu, &la, &q) { "holds" } else { "fails" },
            c.satisfies_recursions(&nu, &la, &q),
        )];
        let (alpha, _) = recursion_coefficients(&nu, &la, &q);
        recs.push(Record::new(
            "recursions/first-step",
            "c_1 - alpha c_0 = -q^-2 c_0",
            inputs.clone(),
            -&q.pow(-2)?,
            &c.get(1) - &alpha,
        ));
        let chain = d_chain(&c, &la, &q, 8)?;
        let holds = chain.satisfies_hecke_relation(&nu, &q);
        recs.push(Record::with_status(
            "recursions/level-raising-chain",
            "with d_i = c_(i-1) + q c_i, d'_i = lambda c_i - q^2 d_(i+1) and d'_(-1) = 0: nu d_i = d'_(i-1) + q^4 d_(i+1) for i <= 8",
            inputs.clone(),
            "holds",
            if holds { "holds" } else { "fails" },
            holds,
        ));
        let closed = zeta_closed(&nu, &la, &q)?.series_expand(m)?;
        let series = zeta_series(&whittaker_seq(&nu, &la, &q, m)?, &q)?;
        let mismatch = (0..=m).find(|&i| closed[i] != series.num().coeff(i as i32));
        recs.push(Record::new(
            "recursions/closed-form-series",
            "the closed-form zeta integral expands to sum c_i q^(2i) X^i",
            inputs.clone(),
            format!("coefficients 0..={m} agree"),
            match mismatch {
                None => format!("coefficients 0..={m} agree"),
                Some(i) => format!("coefficient {i} differs: {} vs {}", closed[i], series.num().coeff(i as i32)),
            },
        ));
        let lam = lambda_from_nu(&nu, &a, &q)?;
        let lhs = zeta_denominator(&nu, &lam, &q);
        let rhs = &LPoly::one_minus(&a) * &LPoly::one_minus(&factored_root(&nu, &a, &q));
        recs.push(Record::new(
            "recursions/denominator-factorization",
            "after substituting lambda(nu, a), the zeta denominator factors as (1 - aX)(1 - (nu + q^2 - q^3 - q^2 a)q^-2 X)",
            inputs.clone(),
            rhs,
            lhs,
        ));
        let ru2 = whittaker_seq(&ParamScalar::from_i64(24), &ParamScalar::from_i64(32), &ParamScalar::from_i64(3), 6)?;
        let expect: Vec<String> = (0..=6).map(|i| ParamScalar::from_ratio(-1, 27).and_then(|x| x.pow(i))).map(|x| x.map(|v| v.to_string())).collect::<Result<_>>()?;
        recs.push(Record::new(
            "recursions/ru2-unramified-coefficients",
            "at nu = 24, lambda = 32, q = 3 the Whittaker values are (-1/27)^i",
            "nu=24, lambda=32, q=3",
            expect.join(", "),
            ru2.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "),
        ));
        Ok(recs)
    })();
    match res {
        Ok(r) => out.extend(r),
        Err(e) => out.push(Record::error("recursions/setup", "", inputs, &e)),
    }
    out
}

fn pipeline_specs() -> Vec<ReprSpec> {
    vec![
        ReprSpec::Ru2 { c: 0 },
        ReprSpec::Ru3 { c: 1 },
        ReprSpec::Steinberg,
        ReprSpec::IrredPsUnramMu2 { a: ParamScalar::from_i64(2), c: 1, n: 1 },
    ]
}

fn pipeline(cfg: &RunConfig) -> Vec<Record> {
    let mut out = vec![];
    for spec in pipeline_specs() {
        let base = format!("pipeline/{spec}");
        let inputs = format!("p={}", cfg.p);
        match cross_check(&spec, cfg.p) {
            Ok(r) => {
                let summary = format!(
                    "nu={}, lambda={}, a={}, ratio={}{}, Z={}",
                    r.nu,
                    r.lambda,
                    r.a,
                    r.ratio,
                    r.gamma_value.as_ref().map(|u| format!(", U={u}")).unwrap_or_default(),
                    r.zeta_factored
                );
                for (i, (claim, ok)) in r.checks.iter().enumerate() {
                    out.push(Record::with_status(
                        format!("{base}/{i}"),
                        claim.clone(),
                        inputs.clone(),
                        format!("L = {}", r.table_l),
                        &summary,
                        *ok,
                    ));
                }
            }
            Err(e) => out.push(Record::error(base, "cross-check runs", inputs, &e)),
        }
    }
    out
}

fn monomial(cfg: &RunConfig) -> Vec<Record> {
    let mut primes = vec![3u64, 5];
    if !primes.contains(&cfg.p) {
        primes.push(cfg.p);
    }
    let mut out = vec![];
    for q in primes {
        for n in 1..=3u32 {
            let qs = ParamScalar::from_i64(q as i64);
            for (cand, label, want) in [
                (MonomialCandidate::One, "z-equals-l", true),
                (MonomialCandidate::InverseTrivialL, "z-equals-l-over-le", false),
            ] {
                let name = format!("monomial/q{q}/n{n}/{label}");
                let claim = if want {
                    "Z = L forces epsilon = q^N X^N, a monomial"
                } else {
                    "Z = L/L_E(s,1) would force a non-monomial epsilon"
                };
                let inputs = format!("q={q}, N={n}");
                out.push(match monomial_check(cand, n, &qs) {
                    Ok((eps, mono)) => Record::with_status(
                        name,
                        claim,
                        inputs,
                        format!("monomial={want}"),
                        format!("monomial={mono}; epsilon candidate {eps}"),
                        mono == want,
                    ),
                    Err(e) => Record::error(name, claim, inputs, &e),
                });
            }
        }
    }
    out
}

fn estimates(cfg: &RunConfig) -> Vec<Record> {
    let q = ParamScalar::from_i64(cfg.p as i64);
    let mut out = vec![];
    for spec in table_cases() {
        let name = format!("estimates/{spec}");
        let inputs = format!("q={}", cfg.p);
        let res = (|| -> Result<(Record, Record)> {
            let inv = invariants(&spec, &q)?;
            let div = divides(&inv.l, &inv.bound)?;
            let at_center = inv.epsilon.eval(&q.inv()?)?;
            Ok((
                Record::with_status(
                    format!("{name}/bound"),
                    format!("L divides the {:?} bound", inv.bound_kind),
                    inputs.clone(),
                    format!("{} divides {}", inv.l, inv.bound),
                    if div { "divides" } else { "does not divide" },
                    div,
                ),
                Record::new(
                    format!("{name}/epsilon-at-center"),
                    "epsilon = q^N X^N equals 1 at X = 1/q",
                    format!("{inputs}, N={}", inv.conductor),
                    ParamScalar::one(),
                    at_center,
                ),
            ))
        })();
        match res {
            Ok((a, b)) => out.extend([a, b]),
            Err(e) => out.push(Record::error(name, "invariants are defined", inputs, &e)),
        }
    }
    out
}

/// Runs the given suites in order and collects their records.
pub fn run_suites(suites: &[Suite], cfg: &RunConfig) -> Vec<Record> {
    suites.iter().flat_map(|s| s.run(cfg)).collect()
}
