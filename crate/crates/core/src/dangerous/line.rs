use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::params::ExponentPair;
use crate::real::{self, Precision, Rational, Real};

/// The rational line `Ax - By + C = 0`, primitive, with `B > 0` or `B = 0, A > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Line {
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    #[serde(rename = "C")]
    pub c: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

pub fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    gcd(gcd(a, b), c)
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({}, {}, {})", self.a, self.b, self.c)
    }
}

impl Line {
    /// Divides out the content and fixes the sign.
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a == 0 && b == 0 {
            return Err(Error::Constraint("a line needs (A, B) != (0, 0)".into()));
        }
        let g = gcd3(a, b, c);
        let (mut a, mut b, mut c) = (a / g, b / g, c / g);
        if b < 0 || (b == 0 && a < 0) {
            (a, b, c) = (-a, -b, -c);
        }
        Ok(Line { a, b, c })
    }

    /// Builds without normalising; callers guarantee primitivity and sign.
    pub(crate) fn raw(a: i64, b: i64, c: i64) -> Self {
        debug_assert!(gcd3(a, b, c) == 1 && (b > 0 || (b == 0 && a > 0)));
        Line { a, b, c }
    }

    /// `F_L(x) = Ax - Bf(x) + C`.
    pub fn eval_f(&self, curve: &CurveSpec, x: &Real) -> Result<Real> {
        if !curve.contains(x) {
            return Err(Error::Domain(format!("{:e}", real::to_f64(x))));
        }
        Ok(self.eval_at(curve, x, curve.precision()))
    }

    pub(crate) fn eval_at(&self, curve: &CurveSpec, x: &Real, p: Precision) -> Real {
        let fx = curve.eval_at(x, p)[0].clone();
        p.int(self.a) * p.of(x) - p.int(self.b) * fx + p.int(self.c)
    }

    /// `F_L'(x) = A - Bf'(x)`.
    pub(crate) fn deriv_at(&self, curve: &CurveSpec, x: &Real, p: Precision) -> Real {
        let d = curve.eval_at(x, p)[1].clone();
        p.int(self.a) - p.int(self.b) * d
    }

    /// `max{|A|^{1/i}, |B|^{1/j}}` in the pair's own orientation.
    pub fn dual_scale(&self, pair: &ExponentPair, p: Precision) -> Real {
        let a = dual_power(self.a, pair.x_exponent(), p);
        let b = dual_power(self.b, pair.y_exponent(), p);
        real::max(&a, &b)
    }

    pub fn max_abs(&self) -> i64 {
        self.a.abs().max(self.b.abs())
    }
}

/// `|v|^{1/e}`, with the limit convention at `e = 0`: 0, 1 or infinity
/// (reported as `None`) for `|v| = 0`, `1`, larger.
pub fn dual_power_checked(v: i64, e: &Rational, p: Precision) -> Option<Real> {
    let m = v.unsigned_abs();
    if *e == Rational::ZERO {
        return match m {
            0 => Some(p.zero()),
            1 => Some(p.one()),
            _ => None,
        };
    }
    Some(real::pow(&p.int(m), &(Rational::ONE / e), p))
}

pub(crate) fn dual_power(v: i64, e: &Rational, p: Precision) -> Real {
    dual_power_checked(v, e, p).expect("zero exponent outside the rational case")
}
