//! Working-precision reals and exact rationals.
//!
//! `Real` is a binary float whose precision travels with the value, so every
//! constant must be created through [`Precision`]; mixing a bare `Real::from(3)`
//! into an expression silently drops the result to a handful of bits.

use std::fmt;
use std::str::FromStr;

use dashu_float::round::mode::{Down, HalfEven, Up};
use dashu_float::{DBig, FBig};
use dashu_int::ops::BitTest;
use dashu_int::IBig;
use dashu_ratio::RBig;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Real = FBig<HalfEven, 2>;
pub type Rational = RBig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Precision(usize);

impl Default for Precision {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.0)
    }
}

impl Precision {
    pub const DEFAULT: Precision = Precision(128);
    pub const MIN_BITS: usize = 64;
    pub const MAX_BITS: usize = 1 << 16;

    pub fn new(bits: usize) -> Result<Self> {
        if !(Self::MIN_BITS..=Self::MAX_BITS).contains(&bits) {
            return Err(Error::Constraint(format!(
                "precision must lie in [{}, {}] bits, got {bits}",
                Self::MIN_BITS,
                Self::MAX_BITS
            )));
        }
        Ok(Precision(bits))
    }

    pub fn bits(self) -> usize {
        self.0
    }

    /// Twice the working precision plus slack, for residual evaluation.
    pub fn guarded(self) -> Precision {
        Precision(2 * self.0 + 32)
    }

    pub fn int(self, v: impl Into<IBig>) -> Real {
        Real::from(v.into()).with_precision(self.0).value()
    }

    pub fn zero(self) -> Real {
        self.int(0)
    }

    pub fn one(self) -> Real {
        self.int(1)
    }

    /// Exact conversion; `v` must be finite.
    pub fn f64(self, v: f64) -> Real {
        let r = Real::try_from(v).expect("finite f64");
        r.with_precision(self.0).value()
    }

    pub fn ratio(self, num: i64, den: i64) -> Real {
        self.int(num) / self.int(den)
    }

    pub fn rational(self, r: &Rational) -> Real {
        r.to_float::<HalfEven, 2>(self.0).value()
    }

    /// Re-rounds `x` to this precision.
    pub fn of(self, x: &Real) -> Real {
        x.clone().with_precision(self.0).value()
    }

    /// Parses `p/q`, a decimal, or scientific notation.
    pub fn parse(self, s: &str) -> Result<Real> {
        let r = parse_rational(s)?;
        Ok(self.rational(&r))
    }

    /// `base^e` for an integer exponent; exact when `e >= 0` and the result fits.
    pub fn pow_int(self, base: u64, e: i64) -> Real {
        let b = IBig::from(base);
        if e >= 0 {
            let p = b.pow(e as usize);
            let bits = (p.bit_len()).max(self.0);
            Real::from(p).with_precision(bits).value()
        } else {
            let p = b.pow(e.unsigned_abs() as usize);
            self.one() / self.int(p)
        }
    }

    /// Relative unit `2^{-(p - slack)}`.
    pub fn rel_unit(self, slack: usize) -> Real {
        let k = self.0.saturating_sub(slack).max(1);
        Real::from_parts(IBig::ONE, -(k as isize)).with_precision(self.0).value()
    }
}

/// Parses `p/q`, decimal or scientific notation exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some((a, b)) = t.split_once('/') {
        let num = parse_rational(a)?;
        let den = parse_rational(b)?;
        if den == Rational::ZERO {
            return Err(Error::Parse(format!("zero denominator in {t:?}")));
        }
        return Ok(num / den);
    }
    let d = DBig::from_str(t).map_err(|e| Error::Parse(format!("{t:?}: {e}")))?;
    let repr = d.repr();
    let m = Rational::from(repr.significand().clone());
    let e = repr.exponent();
    let ten = IBig::from(10u8).pow(e.unsigned_abs());
    Ok(if e >= 0 { m * Rational::from(ten) } else { m / Rational::from(ten) })
}

pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().value()
}

/// Exact value of a binary float as a rational.
pub fn exact_rational(x: &Real) -> Rational {
    Rational::try_from(x.clone()).expect("finite float")
}

pub fn floor_int(x: &Real) -> IBig {
    x.floor().to_int().value()
}

pub fn ceil_int(x: &Real) -> IBig {
    x.ceil().to_int().value()
}

pub fn floor_i64(x: &Real) -> Option<i64> {
    i64::try_from(floor_int(x)).ok()
}

pub fn ceil_i64(x: &Real) -> Option<i64> {
    i64::try_from(ceil_int(x)).ok()
}

pub fn abs(x: &Real) -> Real {
    if *x < Real::ZERO {
        -x.clone()
    } else {
        x.clone()
    }
}

pub fn is_zero(x: &Real) -> bool {
    *x == Real::ZERO
}

pub fn max(a: &Real, b: &Real) -> Real {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn min(a: &Real, b: &Real) -> Real {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// `base^e` for `base >= 0`. Integer exponents avoid the log/exp path.
pub fn pow(base: &Real, e: &Rational, prec: Precision) -> Real {
    if e.denominator() == &dashu_int::UBig::ONE {
        let k = i64::try_from(e.numerator().clone()).expect("exponent fits i64");
        return pow_i64(base, k, prec);
    }
    if is_zero(base) {
        return prec.zero();
    }
    if e.denominator() == &dashu_int::UBig::from(2u8) {
        let k = i64::try_from(e.numerator().clone()).expect("exponent fits i64");
        return pow_i64(&sqrt(base, prec), k, prec);
    }
    let b = prec.of(base);
    b.powf(&prec.rational(e))
}

pub fn pow_i64(base: &Real, k: i64, prec: Precision) -> Real {
    let b = prec.of(base);
    if k >= 0 {
        b.powi(IBig::from(k))
    } else {
        prec.one() / b.powi(IBig::from(-k))
    }
}

pub fn sqrt(x: &Real, prec: Precision) -> Real {
    if is_zero(x) {
        return prec.zero();
    }
    prec.of(x).sqrt()
}

/// Largest `n` with `base^n <= x`, for `x > 0`.
pub fn floor_log(x: &Real, base: u64, prec: Precision) -> i64 {
    assert!(*x > Real::ZERO, "floor_log of non-positive");
    let g = prec.guarded();
    let est = to_f64(&(g.of(x).ln() / g.int(base).ln())).floor() as i64;
    let mut n = est;
    while prec.pow_int(base, n) > *x {
        n -= 1;
    }
    while prec.pow_int(base, n + 1) <= *x {
        n += 1;
    }
    n
}

/// Moves `x` down by a relative margin of `2^{-(p-slack)}` (absolute for `|x| < 1`).
pub fn nudge_down(x: &Real, prec: Precision, slack: usize) -> Real {
    let scale = max(&abs(x), &prec.one());
    prec.of(x) - scale * prec.rel_unit(slack)
}

pub fn nudge_up(x: &Real, prec: Precision, slack: usize) -> Real {
    let scale = max(&abs(x), &prec.one());
    prec.of(x) + scale * prec.rel_unit(slack)
}

fn digits_for(prec: Precision) -> usize {
    (prec.bits() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2
}

/// Decimal string rounded to nearest, at the digit count matching `prec`.
pub fn decimal(x: &Real, prec: Precision) -> String {
    x.clone().with_base_and_precision::<10>(digits_for(prec)).value().to_string()
}

/// Decimal string rounded towards negative infinity.
pub fn decimal_down(x: &Real, prec: Precision) -> String {
    let d: FBig<Down, 2> = x.clone().with_rounding();
    d.with_base_and_precision::<10>(digits_for(prec)).value().to_string()
}

/// Decimal string rounded towards positive infinity.
pub fn decimal_up(x: &Real, prec: Precision) -> String {
    let d: FBig<Up, 2> = x.clone().with_rounding();
    d.with_base_and_precision::<10>(digits_for(prec)).value().to_string()
}

/// Lossless `significand*2^exponent` encoding.
pub fn exact_string(x: &Real) -> String {
    let r = x.repr();
    format!("{}*2^{}", r.significand(), r.exponent())
}

pub fn parse_exact(s: &str, prec: Precision) -> Result<Real> {
    let (m, e) = s.split_once("*2^").ok_or_else(|| Error::Parse(format!("expected significand*2^exponent, got {s:?}")))?;
    let m = IBig::from_str(m.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
    let e = isize::from_str(e.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
    let bits = m.bit_len().max(prec.bits());
    Ok(Real::from_parts(m, e).with_precision(bits).value())
}

pub fn rational_string(r: &Rational) -> String {
    if r.denominator() == &dashu_int::UBig::ONE {
        r.numerator().to_string()
    } else {
        format!("{}/{}", r.numerator(), r.denominator())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: Precision = Precision::DEFAULT;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("1/3").unwrap(), Rational::from(1) / Rational::from(3));
        assert_eq!(parse_rational("0.25").unwrap(), Rational::from(1) / Rational::from(4));
        assert_eq!(parse_rational("1e-5").unwrap(), Rational::from(1) / Rational::from(100000));
        assert_eq!(parse_rational("-2").unwrap(), Rational::from(-2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn constants_keep_precision() {
        let x = P.int(3) * P.int(5);
        assert_eq!(to_f64(&x), 15.0);
        assert_eq!(x.precision(), 128);
    }

    #[test]
    fn floor_log_exact_at_powers() {
        assert_eq!(floor_log(&P.int(1024), 4, P), 5);
        assert_eq!(floor_log(&(P.int(1024) - P.one()), 4, P), 4);
        assert_eq!(floor_log(&P.ratio(1, 4), 4, P), -1);
        assert_eq!(floor_log(&P.ratio(1, 5), 4, P), -2);
    }

    #[test]
    fn exact_roundtrip() {
        let x = P.ratio(1, 3);
        let s = exact_string(&x);
        assert_eq!(parse_exact(&s, P).unwrap(), x);
    }

    #[test]
    fn directed_decimals_bracket() {
        let x = P.ratio(2, 3);
        let lo = P.parse(&decimal_down(&x, P)).unwrap();
        let hi = P.parse(&decimal_up(&x, P)).unwrap();
        assert!(lo <= x && x <= hi);
    }

    #[test]
    fn pow_paths_agree() {
        let b = P.int(4);
        let half = Rational::from(1) / Rational::from(2);
        assert_eq!(to_f64(&pow(&b, &half, P)), 2.0);
        assert_eq!(to_f64(&pow(&b, &Rational::from(-2), P)), 1.0 / 16.0);
        assert!(is_zero(&pow(&P.zero(), &half, P)));
    }

    #[test]
    fn nudges_move_outward() {
        let x = P.ratio(-7, 3);
        assert!(nudge_down(&x, P, 8) < x);
        assert!(nudge_up(&x, P, 8) > x);
    }
}
