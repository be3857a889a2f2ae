//! Planar curves `y = f(x)` over a closed interval, with curvature bounds.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::{self, exact_string, parse_exact, parse_rational, rational_string, Precision, Rational, Real};

/// User-supplied `C^2` function. Both evaluation paths must agree.
pub trait CurveFunction: Send + Sync + fmt::Debug {
    fn eval(&self, x: &Real, prec: Precision) -> [Real; 3];
    /// `[f, f', f'']` in double precision, used only for pruning.
    fn eval_f64(&self, x: f64) -> [f64; 3];
}

#[derive(Clone, Debug)]
pub enum CurveKind {
    /// `f(x) = x^2`.
    Parabola,
    /// `f(x) = sum coeffs[k] x^k`.
    Polynomial(Vec<Rational>),
    /// `f(x) = alpha x + beta`; legal only in line mode.
    Affine {
        alpha: Real,
        beta: Real,
    },
    Custom(Arc<dyn CurveFunction>),
}

#[derive(Clone, Debug)]
pub struct CurveSpec {
    lo: Real,
    hi: Real,
    kind: CurveKind,
    small_c0: Real,
    big_c0: Real,
    prec: Precision,
    f64_coeffs: Vec<f64>,
}

pub const GRID_POINTS: usize = 10_000;

struct Bounds {
    min_d1: Real,
    max_d1: Real,
    min_d2: Real,
    max_d2: Real,
}

impl CurveSpec {
    pub fn parabola(lo: Real, hi: Real, prec: Precision) -> Result<Self> {
        Self::build(lo, hi, CurveKind::Parabola, prec)
    }

    pub fn polynomial(coeffs: Vec<Rational>, lo: Real, hi: Real, prec: Precision) -> Result<Self> {
        Self::build(lo, hi, CurveKind::Polynomial(coeffs), prec)
    }

    pub fn affine(alpha: Real, beta: Real, lo: Real, hi: Real, prec: Precision) -> Result<Self> {
        Self::build(lo, hi, CurveKind::Affine { alpha: prec.of(&alpha), beta: prec.of(&beta) }, prec)
    }

    pub fn custom(f: Arc<dyn CurveFunction>, lo: Real, hi: Real, prec: Precision) -> Result<Self> {
        Self::build(lo, hi, CurveKind::Custom(f), prec)
    }

    fn build(lo: Real, hi: Real, kind: CurveKind, prec: Precision) -> Result<Self> {
        if lo >= hi {
            return Err(Error::Constraint("curve domain must have lo < hi".into()));
        }
        let f64_coeffs = match &kind {
            CurveKind::Polynomial(c) => c.iter().map(real::rational_to_f64).collect(),
            _ => Vec::new(),
        };
        let mut spec =
            CurveSpec { lo: prec.of(&lo), hi: prec.of(&hi), kind, small_c0: prec.zero(), big_c0: prec.zero(), prec, f64_coeffs };
        let b = spec.derivative_bounds()?;
        let affine = spec.is_affine();
        let small = if affine { b.min_d1.clone() } else { real::min(&b.min_d1, &b.min_d2) };
        if small <= Real::ZERO {
            return Err(Error::Constraint(if affine {
                "affine curve needs alpha != 0".into()
            } else {
                "c0 <= |f'| and c0 <= |f''| need a positive c0: f' or f'' vanishes on the domain".into()
            }));
        }
        let sup = real::max(&b.max_d1, &b.max_d2);
        spec.small_c0 = small;
        spec.big_c0 = sup + prec.ratio(1, 100);
        Ok(spec)
    }

    /// Replaces the default bounds; both must be consistent with the sampled
    /// (or exact) derivative ranges.
    pub fn with_bounds(mut self, small_c0: Option<Real>, big_c0: Option<Real>) -> Result<Self> {
        let b = self.derivative_bounds()?;
        if let Some(c) = small_c0 {
            let lim = if self.is_affine() { b.min_d1.clone() } else { real::min(&b.min_d1, &b.min_d2) };
            if c <= Real::ZERO || c > lim {
                return Err(Error::Constraint(format!(
                    "c0 = {:e} must be positive and at most min |f'|, |f''| = {:e}",
                    real::to_f64(&c),
                    real::to_f64(&lim)
                )));
            }
            self.small_c0 = c;
        }
        if let Some(c) = big_c0 {
            let sup = real::max(&b.max_d1, &b.max_d2);
            if c <= sup {
                return Err(Error::Constraint(format!(
                    "C0 = {:e} must exceed sup |f'|, |f''| = {:e}",
                    real::to_f64(&c),
                    real::to_f64(&sup)
                )));
            }
            self.big_c0 = c;
        }
        Ok(self)
    }

    fn derivative_bounds(&self) -> Result<Bounds> {
        let p = self.prec;
        match &self.kind {
            CurveKind::Parabola => {
                if self.lo <= Real::ZERO && self.hi >= Real::ZERO {
                    return Err(Error::Constraint("parabola domain must exclude 0 (f' vanishes there)".into()));
                }
                let a = real::abs(&self.lo);
                let b = real::abs(&self.hi);
                Ok(Bounds {
                    min_d1: p.int(2) * real::min(&a, &b),
                    max_d1: p.int(2) * real::max(&a, &b),
                    min_d2: p.int(2),
                    max_d2: p.int(2),
                })
            }
            CurveKind::Affine { alpha, .. } => {
                let a = real::abs(alpha);
                Ok(Bounds { min_d1: a.clone(), max_d1: a, min_d2: p.zero(), max_d2: p.zero() })
            }
            _ => self.grid_bounds(),
        }
    }

    fn grid_bounds(&self) -> Result<Bounds> {
        let p = self.prec;
        let width = &self.hi - &self.lo;
        let n = GRID_POINTS as i64 - 1;
        let mut out: Option<Bounds> = None;
        let (mut s1, mut s2) = (0i8, 0i8);
        for k in 0..=n {
            let x = &self.lo + &width * p.int(k) / p.int(n);
            let [_, d1, d2] = self.eval_all(&x);
            for (d, s) in [(&d1, &mut s1), (&d2, &mut s2)] {
                let sign = if *d > Real::ZERO {
                    1
                } else if *d < Real::ZERO {
                    -1
                } else {
                    0
                };
                if sign == 0 || (*s != 0 && *s != sign) {
                    return Err(Error::Constraint(format!(
                        "f' and f'' must keep a strict sign on the domain; sign change near x = {:.6}",
                        real::to_f64(&x)
                    )));
                }
                *s = sign;
            }
            let (a1, a2) = (real::abs(&d1), real::abs(&d2));
            out = Some(match out {
                None => Bounds { min_d1: a1.clone(), max_d1: a1, min_d2: a2.clone(), max_d2: a2 },
                Some(b) => Bounds {
                    min_d1: real::min(&b.min_d1, &a1),
                    max_d1: real::max(&b.max_d1, &a1),
                    min_d2: real::min(&b.min_d2, &a2),
                    max_d2: real::max(&b.max_d2, &a2),
                },
            });
        }
        Ok(out.expect("grid is non-empty"))
    }

    pub fn kind(&self) -> &CurveKind {
        &self.kind
    }

    pub fn is_affine(&self) -> bool {
        matches!(self.kind, CurveKind::Affine { .. })
    }

    pub fn lo(&self) -> &Real {
        &self.lo
    }

    pub fn hi(&self) -> &Real {
        &self.hi
    }

    pub fn small_c0(&self) -> &Real {
        &self.small_c0
    }

    pub fn big_c0(&self) -> &Real {
        &self.big_c0
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn contains(&self, x: &Real) -> bool {
        *x >= self.lo && *x <= self.hi
    }

    /// `[f, f', f'']` at precision `p`, without a domain check.
    pub fn eval_at(&self, x: &Real, p: Precision) -> [Real; 3] {
        let x = p.of(x);
        match &self.kind {
            CurveKind::Parabola => [&x * &x, p.int(2) * &x, p.int(2)],
            CurveKind::Affine { alpha, beta } => [p.of(alpha) * &x + p.of(beta), p.of(alpha), p.zero()],
            CurveKind::Polynomial(c) => {
                let mut f = p.zero();
                let mut d1 = p.zero();
                let mut d2 = p.zero();
                for a in c.iter().rev() {
                    d2 = d2 * &x + p.int(2) * &d1;
                    d1 = d1 * &x + &f;
                    f = f * &x + p.rational(a);
                }
                [f, d1, d2]
            }
            CurveKind::Custom(g) => g.eval(&x, p),
        }
    }

    fn eval_all(&self, x: &Real) -> [Real; 3] {
        self.eval_at(x, self.prec)
    }

    pub fn f(&self, x: &Real) -> Result<Real> {
        self.check(x)?;
        Ok(self.eval_all(x)[0].clone())
    }

    pub fn df(&self, x: &Real) -> Result<Real> {
        self.check(x)?;
        Ok(self.eval_all(x)[1].clone())
    }

    pub fn d2f(&self, x: &Real) -> Result<Real> {
        self.check(x)?;
        Ok(self.eval_all(x)[2].clone())
    }

    fn check(&self, x: &Real) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::Domain(format!("{:e}", real::to_f64(x))))
        }
    }

    pub fn eval_f64(&self, x: f64) -> [f64; 3] {
        match &self.kind {
            CurveKind::Parabola => [x * x, 2.0 * x, 2.0],
            CurveKind::Affine { alpha, beta } => {
                let a = real::to_f64(alpha);
                [a * x + real::to_f64(beta), a, 0.0]
            }
            CurveKind::Polynomial(_) => {
                let (mut f, mut d1, mut d2) = (0.0, 0.0, 0.0);
                for a in self.f64_coeffs.iter().rev() {
                    d2 = d2 * x + 2.0 * d1;
                    d1 = d1 * x + f;
                    f = f * x + a;
                }
                [f, d1, d2]
            }
            CurveKind::Custom(g) => g.eval_f64(x),
        }
    }

    /// The unique `x` in `[a, b]` with `f'(x) = t`, if any. `f'` is strictly
    /// monotone on non-affine curves.
    pub fn solve_df(&self, t: &Real, a: &Real, b: &Real, p: Precision) -> Option<Real> {
        match &self.kind {
            CurveKind::Parabola => {
                let x = p.of(t) / p.int(2);
                (x >= *a && x <= *b).then_some(x)
            }
            CurveKind::Affine { .. } => None,
            _ => {
                let g = |x: &Real| self.eval_at(x, p)[1].clone() - p.of(t);
                bisect_root(&g, a, b, p)
            }
        }
    }

    /// `f^{-1}(y)` on the domain, or `None` when `y` is outside `f(I)`.
    pub fn inverse(&self, y: &Real, p: Precision) -> Option<Real> {
        match &self.kind {
            CurveKind::Parabola => {
                if *y < Real::ZERO {
                    return None;
                }
                let s = real::sqrt(y, p);
                let x = if self.lo > Real::ZERO { s } else { -s };
                self.contains(&x).then_some(x)
            }
            CurveKind::Affine { alpha, beta } => {
                let x = (p.of(y) - p.of(beta)) / p.of(alpha);
                self.contains(&x).then_some(x)
            }
            _ => {
                let g = |x: &Real| self.eval_at(x, p)[0].clone() - p.of(y);
                bisect_root(&g, &self.lo, &self.hi, p)
            }
        }
    }

    /// `[min f, max f]` over the domain.
    pub fn range(&self, p: Precision) -> (Real, Real) {
        let a = self.eval_at(&self.lo, p)[0].clone();
        let b = self.eval_at(&self.hi, p)[0].clone();
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn to_doc(&self) -> Option<CurveDoc> {
        let (kind, coefficients, alpha, beta) = match &self.kind {
            CurveKind::Parabola => ("parabola", None, None, None),
            CurveKind::Polynomial(c) => ("polynomial", Some(c.iter().map(rational_string).collect()), None, None),
            CurveKind::Affine { alpha, beta } => ("affine", None, Some(exact_string(alpha)), Some(exact_string(beta))),
            CurveKind::Custom(_) => return None,
        };
        Some(CurveDoc {
            kind: kind.into(),
            lo: exact_string(&self.lo),
            hi: exact_string(&self.hi),
            coefficients,
            alpha,
            beta,
            c0: exact_string(&self.small_c0),
            big_c0: exact_string(&self.big_c0),
        })
    }

    pub fn from_doc(doc: &CurveDoc, prec: Precision) -> Result<Self> {
        let lo = parse_exact(&doc.lo, prec)?;
        let hi = parse_exact(&doc.hi, prec)?;
        let spec = match doc.kind.as_str() {
            "parabola" => Self::parabola(lo, hi, prec)?,
            "polynomial" => {
                let c = doc
                    .coefficients
                    .as_ref()
                    .ok_or_else(|| Error::Parse("polynomial curve needs coefficients".into()))?
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?;
                Self::polynomial(c, lo, hi, prec)?
            }
            "affine" => {
                let a = doc.alpha.as_deref().ok_or_else(|| Error::Parse("affine curve needs alpha".into()))?;
                let b = doc.beta.as_deref().unwrap_or("0*2^0");
                Self::affine(parse_exact(a, prec)?, parse_exact(b, prec)?, lo, hi, prec)?
            }
            other => return Err(Error::Parse(format!("unknown curve kind {other:?}"))),
        };
        let mut spec = spec;
        spec.small_c0 = parse_exact(&doc.c0, prec)?;
        spec.big_c0 = parse_exact(&doc.big_c0, prec)?;
        Ok(spec)
    }
}

/// Lossless serialised curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveDoc {
    pub kind: String,
    pub lo: String,
    pub hi: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    pub c0: String,
    #[serde(rename = "C0")]
    pub big_c0: String,
}

/// Root of a monotone `g` on `[a, b]` to relative width `2^{-(p-16)}`.
pub fn bisect_root(g: &dyn Fn(&Real) -> Real, a: &Real, b: &Real, p: Precision) -> Option<Real> {
    bisect_bracket(g, a, b, p).map(|(lo, hi)| (lo + hi) / p.int(2))
}

/// Bracket `[lo, hi]` around the root of a monotone `g` with a sign change on `[a, b]`.
pub fn bisect_bracket(g: &dyn Fn(&Real) -> Real, a: &Real, b: &Real, p: Precision) -> Option<(Real, Real)> {
    let ga = g(a);
    let gb = g(b);
    if real::is_zero(&ga) {
        return Some((a.clone(), a.clone()));
    }
    if real::is_zero(&gb) {
        return Some((b.clone(), b.clone()));
    }
    let up = ga < Real::ZERO;
    if up == (gb < Real::ZERO) {
        return None;
    }
    let (mut lo, mut hi) = (p.of(a), p.of(b));
    let scale = real::max(&real::max(&real::abs(a), &real::abs(b)), &p.one());
    let tol = scale * p.rel_unit(16);
    let two = p.int(2);
    while &hi - &lo > tol {
        let mid = p.of(&((&lo + &hi) / &two));
        let gm = g(&mid);
        if real::is_zero(&gm) {
            return Some((mid.clone(), mid));
        }
        if (gm < Real::ZERO) == up {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some((lo, hi))
}
