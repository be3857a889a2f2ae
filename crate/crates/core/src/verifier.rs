//! Brute-force Diophantine oracles.
//!
//! Every [`Real`] is a dyadic rational, so inputs are turned into exact
//! fractions over a common denominator and `||t||` is computed with integer
//! arithmetic. Only the final weighting by `q`, `|A|^{1/i}` and friends is
//! rounded.

use dashu_int::{IBig, UBig};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::params::ExponentPair;
use crate::real::{self, Precision, Rational, Real};

#[derive(Clone, Debug)]
pub enum Number {
    Rational(Rational),
    Real(Real),
}

impl Number {
    pub fn exact(&self) -> Rational {
        match self {
            Number::Rational(r) => r.clone(),
            Number::Real(x) => real::exact_rational(x),
        }
    }
}

impl From<Real> for Number {
    fn from(x: Real) -> Self {
        Number::Real(x)
    }
}

impl From<Rational> for Number {
    fn from(r: Rational) -> Self {
        Number::Rational(r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Simultaneous,
    Dual,
    Quadratic,
    Exponent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Q { q: u64 },
    Pair { a: i64, b: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBox {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_max: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_max: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_max: Option<i64>,
    /// Only continued-fraction denominators were visited.
    pub convergents_only: bool,
}

#[derive(Clone, Debug)]
pub struct BadnessReport {
    pub form: Form,
    pub value: Real,
    pub witness: Option<Witness>,
    pub search_box: SearchBox,
    /// Free-form description of the exponents used.
    pub params: String,
}

impl BadnessReport {
    pub fn witness_q(&self) -> Option<u64> {
        match self.witness {
            Some(Witness::Q { q }) => Some(q),
            _ => None,
        }
    }

    pub fn witness_pair(&self) -> Option<(i64, i64)> {
        match self.witness {
            Some(Witness::Pair { a, b }) => Some((a, b)),
            _ => None,
        }
    }
}

impl Serialize for BadnessReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc<'a> {
            form: Form,
            value: String,
            value_f64: f64,
            witness: &'a Option<Witness>,
            #[serde(rename = "box")]
            search_box: &'a SearchBox,
            params: &'a str,
        }
        let p = Precision::new(self.value.precision().max(Precision::MIN_BITS)).unwrap_or_default();
        Doc {
            form: self.form,
            value: real::decimal(&self.value, p),
            value_f64: real::to_f64(&self.value),
            witness: &self.witness,
            search_box: &self.search_box,
            params: &self.params,
        }
        .serialize(s)
    }
}

/// Numbers written as `n_k / d` over one shared `d`.
struct Common {
    nums: Vec<IBig>,
    den: IBig,
}

impl Common {
    fn new(xs: &[Rational]) -> Self {
        let mut den = UBig::ONE;
        for x in xs {
            let d = x.denominator();
            if (&den % d) != UBig::ZERO {
                den = &den * d;
            }
        }
        let nums = xs.iter().map(|x| x.numerator() * IBig::from(&den / x.denominator())).collect();
        Common { nums, den: IBig::from(den) }
    }

    /// `min(r, d - r)` for `r = t mod d`: the numerator of `||t / d||`.
    fn dist_num(&self, t: &IBig) -> IBig {
        let mut r = t % &self.den;
        if r < IBig::ZERO {
            r += &self.den;
        }
        let s = &self.den - &r;
        if s < r {
            s
        } else {
            r
        }
    }

    fn dist(&self, t: &IBig, p: Precision) -> Real {
        p.int(self.dist_num(t)) / p.int(self.den.clone())
    }
}

/// `||x||` exactly.
pub fn dist_to_int(x: &Rational) -> Rational {
    let f = x.fract();
    let f = if f < Rational::ZERO { f + Rational::ONE } else { f };
    let g = Rational::ONE - &f;
    if g < f {
        g
    } else {
        f
    }
}

fn weight(v: u64, e: &Rational, p: Precision) -> Option<Real> {
    // |v|^{1/e}; `None` marks a dropped coordinate
    if *e == Rational::ZERO {
        return None;
    }
    Some(real::pow(&p.int(v), &(Rational::ONE / e), p))
}

fn dist_pow(d: Real, e: &Rational, p: Precision) -> Option<Real> {
    if *e == Rational::ZERO {
        return None;
    }
    if real::is_zero(&d) {
        return Some(d);
    }
    Some(real::pow(&d, &(Rational::ONE / e), p))
}

/// `min_{1<=q<=Q} q max{||qx||^{1/i}, ||qy||^{1/j}}`, a coordinate with zero
/// exponent being dropped. `pair` is read in its original orientation.
pub fn sim_badness(x: &Number, y: &Number, pair: &ExponentPair, q_max: u64, p: Precision) -> BadnessReport {
    assert!(q_max >= 1, "Q >= 1 required");
    let g = p.guarded();
    let cm = Common::new(&[x.exact(), y.exact()]);
    let (ei, ej) = (pair.x_exponent().clone(), pair.y_exponent().clone());
    let eval = |q: u64| -> Real {
        let qi = IBig::from(q);
        let tx = dist_pow(cm.dist(&(&qi * &cm.nums[0]), g), &ei, g);
        let ty = dist_pow(cm.dist(&(&qi * &cm.nums[1]), g), &ej, g);
        let m = match (tx, ty) {
            (Some(a), Some(b)) => real::max(&a, &b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!("i + j = 1"),
        };
        g.int(q) * m
    };
    let (value, q) = min_by_index(1..=q_max, eval);
    BadnessReport {
        form: Form::Simultaneous,
        value: p.of(&value),
        witness: Some(Witness::Q { q }),
        search_box: SearchBox { q_max: Some(q_max), a_max: None, b_max: None, convergents_only: false },
        params: format!("i = {}, j = {}", ei, ej),
    }
}

/// Deterministic parallel arg-min: ties go to the earliest index.
fn min_by_index<I, F>(range: I, f: F) -> (Real, u64)
where
    I: IntoParallelIterator<Item = u64>,
    F: Fn(u64) -> Real + Sync + Send,
{
    range
        .into_par_iter()
        .map(|q| (f(q), q))
        .reduce_with(|a, b| if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
        .expect("non-empty range")
}

/// `min max{|A|^{1/i}, |B|^{1/j}} ||Ax - By||` over `(A, B) != 0`,
/// `|A| <= a_max`, `|B| <= b_max`.
pub fn dual_badness(x: &Number, y: &Number, pair: &ExponentPair, a_max: i64, b_max: i64, p: Precision) -> BadnessReport {
    let mut r = dual_core(x, y, pair.x_exponent(), pair.y_exponent(), a_max, b_max, p);
    r.params = format!("i = {}, j = {}", pair.x_exponent(), pair.y_exponent());
    r
}

fn dual_core(x: &Number, y: &Number, ei: &Rational, ej: &Rational, a_max: i64, b_max: i64, p: Precision) -> BadnessReport {
    assert!(a_max >= 1 && b_max >= 1, "Amax, Bmax >= 1 required");
    let g = p.guarded();
    let cm = Common::new(&[x.exact(), y.exact()]);
    // (A, B) and (-A, -B) agree; keep B > 0, or B = 0 and A > 0
    let best = (0..=b_max)
        .into_par_iter()
        .filter_map(|b| {
            let wb = weight(b as u64, ej, g);
            let start = if b == 0 { 1 } else { -a_max };
            let nb = IBig::from(b) * &cm.nums[1];
            let mut best: Option<(Real, (i64, i64))> = None;
            for a in start..=a_max {
                let d = cm.dist(&(IBig::from(a) * &cm.nums[0] - &nb), g);
                let wa = weight(a.unsigned_abs(), ei, g);
                let w = match (wa, &wb) {
                    (Some(u), Some(v)) => real::max(&u, v),
                    (Some(u), None) => u,
                    (None, Some(v)) => v.clone(),
                    (None, None) => unreachable!("i + j = 1"),
                };
                let v = w * d;
                if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
                    best = Some((v, (a, b)));
                }
            }
            best
        })
        .reduce_with(|u, v| if v.0 < u.0 || (v.0 == u.0 && (v.1 .1, v.1 .0) < (u.1 .1, u.1 .0)) { v } else { u })
        .expect("non-empty box");
    BadnessReport {
        form: Form::Dual,
        value: p.of(&best.0),
        witness: Some(Witness::Pair { a: best.1 .0, b: best.1 .1 }),
        search_box: SearchBox { q_max: None, a_max: Some(a_max), b_max: Some(b_max), convergents_only: false },
        params: String::new(),
    }
}

/// `min max{A^2, B^2} ||Ax - Bx^2||` over `|A|, |B| <= N`.
pub fn quadratic_badness(x: &Number, n: i64, p: Precision) -> BadnessReport {
    let ex = x.exact();
    let sq = Number::Rational(&ex * &ex);
    let half = Rational::from_parts(IBig::ONE, UBig::from(2u8));
    let mut r = dual_core(&Number::Rational(ex), &sq, &half, &half, n, n, p);
    r.form = Form::Quadratic;
    r.params = "max{A^2, B^2} ||Ax - Bx^2||".into();
    r
}

/// Continued-fraction convergents `p_k / q_k` with `q_k <= Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentList {
    pub q_max: u64,
    pub entries: Vec<(IBig, u64)>,
}

impl ConvergentList {
    pub fn denominators(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.iter().map(|e| e.1)
    }
}

pub fn convergents(alpha: &Rational, q_max: u64) -> ConvergentList {
    let mut entries = Vec::new();
    let (mut p1, mut q1) = (IBig::ONE, IBig::ZERO);
    let (mut p2, mut q2) = (IBig::ZERO, IBig::ONE);
    let mut x = alpha.clone();
    let cap = IBig::from(q_max);
    loop {
        let a = x.floor();
        let p = &a * &p1 + &p2;
        let q = &a * &q1 + &q2;
        if q > cap {
            break;
        }
        entries.push((p.clone(), u64::try_from(&q).expect("q <= Q")));
        let f = &x - Rational::from(a);
        if f == Rational::ZERO {
            break;
        }
        x = Rational::ONE / f;
        (p2, q2) = (p1, q1);
        (p1, q1) = (p, q);
    }
    ConvergentList { q_max, entries }
}

/// Exhaustive below this `Q`, convergent denominators above.
pub const EXHAUSTIVE_LIMIT: u64 = 1000;

/// `min_{1<=q<=Q} q^e ||q alpha||` for `e >= 0`.
pub fn exponent_check(alpha: &Number, exponent: &Rational, q_max: u64, p: Precision) -> BadnessReport {
    if q_max <= EXHAUSTIVE_LIMIT {
        exponent_check_exhaustive(alpha, exponent, q_max, p)
    } else {
        exponent_check_convergents(alpha, exponent, q_max, p)
    }
}

fn exponent_value(cm: &Common, exponent: &Rational, q: u64, g: Precision) -> Real {
    let d = cm.dist(&(IBig::from(q) * &cm.nums[0]), g);
    if real::is_zero(&d) {
        return d;
    }
    real::pow(&g.int(q), exponent, g) * d
}

pub fn exponent_check_exhaustive(alpha: &Number, exponent: &Rational, q_max: u64, p: Precision) -> BadnessReport {
    assert!(*exponent >= Rational::ZERO, "exponent >= 0 required");
    let g = p.guarded();
    let cm = Common::new(&[alpha.exact()]);
    let (value, q) = min_by_index(1..=q_max, |q| exponent_value(&cm, exponent, q, g));
    exponent_report(p.of(&value), q, q_max, false, exponent)
}

/// Visits only convergent denominators. For `e >= 0` the minimum sits at one
/// of them, by the best-approximation property.
pub fn exponent_check_convergents(alpha: &Number, exponent: &Rational, q_max: u64, p: Precision) -> BadnessReport {
    assert!(*exponent >= Rational::ZERO, "exponent >= 0 required");
    let g = p.guarded();
    let a = alpha.exact();
    let cm = Common::new(std::slice::from_ref(&a));
    let mut qs: Vec<u64> = convergents(&a, q_max).denominators().collect();
    qs.dedup();
    let mut best: Option<(Real, u64)> = None;
    for q in qs {
        let v = exponent_value(&cm, exponent, q, g);
        if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
            best = Some((v, q));
        }
    }
    let (value, q) = best.expect("q = 1 is always a convergent denominator");
    exponent_report(p.of(&value), q, q_max, true, exponent)
}

fn exponent_report(value: Real, q: u64, q_max: u64, conv: bool, exponent: &Rational) -> BadnessReport {
    BadnessReport {
        form: Form::Exponent,
        value,
        witness: Some(Witness::Q { q }),
        search_box: SearchBox { q_max: Some(q_max), a_max: None, b_max: None, convergents_only: conv },
        params: format!("exponent = {exponent}"),
    }
}
