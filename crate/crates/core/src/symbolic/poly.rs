//! Sparse multivariate Laurent polynomials over `Q` in the parameters `ν, λ, a, q`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub const NVARS: usize = 4;

pub type Exps = [i32; NVARS];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Nu,
    Lambda,
    A,
    Q,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Nu, Var::Lambda, Var::A, Var::Q];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Nu => "nu",
            Var::Lambda => "lambda",
            Var::A => "a",
            Var::Q => "q",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

/// A polynomial with integer (possibly negative) exponents. Terms are kept in
/// lexicographic exponent order with `ν` most significant; zero coefficients
/// are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: BTreeMap<Exps, Q>,
}

fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial([0; NVARS], c)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(q_int(n))
    }

    pub fn monomial(e: Exps, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, k: i32) -> Self {
        let mut e = [0; NVARS];
        e[v.index()] = k;
        Self::monomial(e, Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps, &Q)> {
        self.terms.iter()
    }

    /// The value when the polynomial is a constant.
    pub fn as_constant(&self) -> Option<&Q> {
        match self.terms.len() {
            0 => None,
            1 => self.terms.get(&[0; NVARS]),
            _ => None,
        }
    }

    pub fn to_rational(&self) -> Option<Q> {
        if self.is_zero() {
            return Some(Q::zero());
        }
        self.as_constant().cloned()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The lexicographically largest term.
    pub fn leading(&self) -> Option<(&Exps, &Q)> {
        self.terms.iter().next_back()
    }

    /// Componentwise minimum of the exponents (the largest monomial factor).
    pub fn min_exps(&self) -> Exps {
        let mut m = [0; NVARS];
        for (i, slot) in m.iter_mut().enumerate() {
            *slot = self.terms.keys().map(|e| e[i]).min().unwrap_or(0);
        }
        m
    }

    pub fn degree(&self, v: Var) -> i32 {
        self.terms.keys().map(|e| e[v.index()]).max().unwrap_or(0)
    }

    pub fn uses(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e[v.index()] != 0)
    }

    /// Multiplies by the monomial with exponents `d`.
    pub fn shift(&self, d: &Exps) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = *e;
                for i in 0..NVARS {
                    e2[i] += d[i];
                }
                (e2, c.clone())
            })
            .collect();
        Self { terms }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    fn add_term(&mut self, e: Exps, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes a rational value for one variable.
    pub fn specialize(&self, v: Var, value: &Q) -> Result<Self> {
        let i = v.index();
        if value.is_zero() && self.terms.keys().any(|e| e[i] < 0) {
            return Err(Error::DivisionByZero(format!("{} = 0 in a negative power", v.name())));
        }
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2[i] = 0;
            let factor = Q::pow(value, e[i]);
            out.add_term(e2, c * factor);
        }
        Ok(out)
    }

    /// Exact quotient, failing when `d` does not divide `self` in the Laurent ring.
    pub fn div_exact(&self, d: &MPoly) -> Result<MPoly> {
        if d.is_zero() {
            return Err(Error::DivisionByZero("polynomial division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if d.is_monomial() {
            let (e, c) = d.leading().expect("non-zero");
            let inv: Exps = std::array::from_fn(|i| -e[i]);
            return Ok(self.shift(&inv).scale(&c.recip()));
        }
        let mr = self.min_exps();
        let md = d.min_exps();
        let neg = |m: &Exps| -> Exps { std::array::from_fn(|i| -m[i]) };
        let mut r = self.shift(&neg(&mr));
        let dp = d.shift(&neg(&md));
        let (lde, ldc) = {
            let (e, c) = dp.leading().expect("non-zero");
            (*e, c.clone())
        };
        let mut quotient = Self::zero();
        while let Some((re, rc)) = r.leading().map(|(e, c)| (*e, c.clone())) {
            let mut qe = [0; NVARS];
            for i in 0..NVARS {
                qe[i] = re[i] - lde[i];
                if qe[i] < 0 {
                    return Err(Error::NotDivisible(format!("({self}) by ({d})")));
                }
            }
            let qc = &rc / &ldc;
            quotient.add_term(qe, qc.clone());
            r = &r - &dp.shift(&qe).scale(&qc);
        }
        let off: Exps = std::array::from_fn(|i| mr[i] - md[i]);
        Ok(quotient.shift(&off))
    }

    /// Coefficients of the powers of `v` (exponents of `v` removed from the keys).
    fn coefficients_in(&self, v: Var) -> BTreeMap<i32, MPoly> {
        let i = v.index();
        let mut out: BTreeMap<i32, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2[i] = 0;
            out.entry(e[i]).or_default().add_term(e2, c.clone());
        }
        out
    }

    /// Divides by the leading coefficient so that the leading term is monic.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => Self::zero(),
        }
    }

    /// Removes the monomial content so every variable has minimal exponent 0.
    pub fn strip_monomial(&self) -> Self {
        let m = self.min_exps();
        self.shift(&std::array::from_fn(|i| -m[i]))
    }
}

fn content_in(p: &MPoly, v: Var) -> MPoly {
    let mut g = MPoly::zero();
    for c in p.coefficients_in(v).values() {
        g = gcd_poly(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Leading coefficient of `p` as a polynomial in `v`.
fn lc_in(p: &MPoly, v: Var) -> MPoly {
    p.coefficients_in(v).remove(&p.degree(v)).unwrap_or_default()
}

/// Pseudo-remainder `lc(b)^(deg a − deg b + 1)·a mod b` with respect to `v`.
fn prem(a: &MPoly, b: &MPoly, v: Var) -> MPoly {
    let db = b.degree(v);
    let lb = lc_in(b, v);
    let mut r = a.clone();
    let mut steps = (a.degree(v) - db + 1).max(0);
    while !r.is_zero() {
        let dr = r.degree(v);
        if dr < db {
            break;
        }
        let lr = lc_in(&r, v);
        r = &(&lb * &r) - &(&(&lr * &MPoly::var_pow(v, dr - db)) * b);
        steps -= 1;
    }
    if steps > 0 {
        r = &r * &lb.pow(steps as u32);
    }
    r
}

/// Points at which the other variables are specialized by the coprimality test.
const TEST_POINTS: [[i64; NVARS]; 3] = [[3, 5, 7, 11], [-2, 13, 4, -9], [17, -6, 19, 23]];

/// Whether `a` and `b` (primitive, both using `v`) are coprime in `v`, decided
/// by a univariate gcd at an integer point where both leading coefficients survive.
/// `false` means "unknown".
fn coprime_at_a_point(a: &MPoly, b: &MPoly, v: Var) -> bool {
    let (la, lb) = (lc_in(a, v), lc_in(b, v));
    'points: for point in TEST_POINTS {
        let mut images = [a.clone(), b.clone(), la.clone(), lb.clone()];
        for w in Var::ALL.into_iter().filter(|&w| w != v) {
            let x = Q::from_integer(point[w.index()].into());
            for p in images.iter_mut() {
                match p.specialize(w, &x) {
                    Ok(s) => *p = s,
                    Err(_) => continue 'points,
                }
            }
        }
        if images[2].is_zero() || images[3].is_zero() {
            continue;
        }
        let (mut x, mut y) = (images[0].monic(), images[1].monic());
        while !y.is_zero() {
            let r = prem(&x, &y, v).monic();
            x = y;
            y = r;
        }
        return x.degree(v) == 0;
    }
    false
}

/// Greatest common divisor of two polynomials with non-negative exponents,
/// normalized to be monic. Monomial factors are treated like any other factor.
///
/// Recursive in the variables; each level runs a subresultant remainder
/// sequence, after a quick coprimality test at an integer point.
pub fn gcd_poly(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return MPoly::one();
    }
    let Some(v) = Var::ALL.into_iter().find(|&v| a.uses(v) || b.uses(v)) else {
        return MPoly::one();
    };
    if !a.uses(v) {
        return gcd_poly(a, &content_in(b, v));
    }
    if !b.uses(v) {
        return gcd_poly(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_poly(&ca, &cb);
    // constants are units over Q, so primitive parts are kept monic
    let mut x = a.div_exact(&ca).expect("content divides").monic();
    let mut y = b.div_exact(&cb).expect("content divides").monic();
    if coprime_at_a_point(&x, &y, v) {
        return c.monic();
    }
    if x.degree(v) < y.degree(v) {
        std::mem::swap(&mut x, &mut y);
    }
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        let delta = x.degree(v) - y.degree(v);
        let r = prem(&x, &y, v);
        if r.is_zero() {
            break;
        }
        if !r.uses(v) {
            return c.monic();
        }
        let divisor = &g * &h.pow(delta as u32);
        x = y;
        y = r.div_exact(&divisor).expect("subresultant division is exact");
        g = lc_in(&x, v);
        h = if delta == 0 {
            h
        } else {
            (&g.pow(delta as u32))
                .div_exact(&h.pow(delta as u32 - 1))
                .expect("subresultant division is exact")
        };
    }
    let pp = y.div_exact(&content_in(&y, v)).expect("content divides");
    (&c * &pp).monic()
}

/// Greatest common divisor in the Laurent ring, normalized to have no
/// monomial factor and a monic leading term.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    gcd_poly(&a.strip_monomial(), &b.strip_monomial())
}

impl<'a> std::ops::Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a> std::ops::Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exps = std::array::from_fn(|i| e1[i] + e2[i]);
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl std::ops::Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

pub(crate) fn fmt_rational(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial(e: &Exps) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        match e[v.index()] {
            0 => {}
            1 => parts.push(v.name().to_string()),
            k => parts.push(format!("{}^{k}", v.name())),
        }
    }
    parts.join("*")
}

/// Writes `c·m` with the sign separated out, e.g. `("-", "3/2*nu^2")`.
fn fmt_term(e: &Exps, c: &Q) -> (bool, String) {
    let neg = c.is_negative();
    let a = c.abs();
    let m = fmt_monomial(e);
    let body = match (m.is_empty(), a.is_one()) {
        (true, _) => fmt_rational(&a),
        (false, true) => m,
        (false, false) => format!("{}*{m}", fmt_rational(&a)),
    };
    (neg, body)
}

/// Renders terms in decreasing lexicographic order, e.g. `nu - q^3 + 2*q^-1`.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let (neg, body) = fmt_term(e, c);
            match (k, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl PartialOrd for MPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An arbitrary but fixed total order, used only for canonical sorting.
impl Ord for MPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.iter().rev().cmp(other.terms.iter().rev())
    }
}
