//! Exhaustive listing of star intervals in a height window.

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::params::ConstructionParams;
use crate::real::{self, Real};

use super::arc::arcs;
use super::line::{gcd3, Line};
use super::star::{star_interval, StarInterval};

#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    /// Largest admissible `|A|` or `|B|` bound.
    pub coeff_cap: f64,
    /// Largest admissible number of `(A, B)` pairs.
    pub pair_cap: f64,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig { coeff_cap: 1e7, pair_cap: 4e8 }
    }
}

/// Coefficient box containing every line whose non-exceptional star has
/// height below `R^top`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PruningBox {
    pub top: i64,
    pub a_max: i64,
    pub b_max: i64,
    /// Real-valued Type 1 bounds on `|A|`, `|B|`.
    pub type1: (f64, f64),
    /// Real-valued Type 2 bounds, absent when no Type 2 star can qualify.
    pub type2: Option<(f64, f64)>,
}

impl PruningBox {
    pub fn pairs(&self) -> f64 {
        (2.0 * self.a_max as f64 + 1.0) * (self.b_max as f64 + 1.0)
    }
}

fn ln_pow_bound(ln_x: f64, e: f64) -> f64 {
    // largest t with t^{1 + 1/e} <= x
    (ln_x * e / (1.0 + e)).exp()
}

fn floor_bound(x: f64) -> i64 {
    if !x.is_finite() || x >= 9.0e18 {
        i64::MAX
    } else {
        (x * (1.0 + 1e-9)).floor() as i64
    }
}

pub fn pruning_box(params: &ConstructionParams, top: i64) -> PruningBox {
    let ix = real::rational_to_f64(params.pair.x_exponent());
    let jy = real::rational_to_f64(params.pair.y_exponent());
    let ln_r = (params.r as f64).ln();
    let c = real::to_f64(&params.c);
    let big = real::to_f64(&params.big_c0);
    let lam = params.lambda as f64;

    // Type 1: max{|A|,|B|} * M < c^{1/2} R^{2N + lambda} / (C0 + 1)
    let ln_x = 0.5 * c.ln() + (2.0 * top as f64 + lam) * ln_r - (big + 1.0).ln();
    let type1 = (ln_pow_bound(ln_x, ix), ln_pow_bound(ln_x, jy));

    // Type 2: M |B| < R^{2N}, and only above the exceptional height
    let type2 = (top > 3 * params.n0 as i64 && !params.line_mode).then(|| {
        let ln_y = 2.0 * top as f64 * ln_r;
        let b = ln_pow_bound(ln_y, jy);
        let a_free = (ln_y * ix).exp();
        let theta = (big + 1.0) * (-lam * ln_r).exp();
        let a = if theta < 1.0 { a_free.min((big / (1.0 - theta)).max(1.0) * b.floor()) } else { a_free };
        (a, b)
    });
    let (a, b) = match type2 {
        Some((a2, b2)) => (type1.0.max(a2), type1.1.max(b2)),
        None => type1,
    };
    PruningBox { top, a_max: floor_bound(a), b_max: floor_bound(b), type1, type2 }
}

fn check_budget(bx: &PruningBox, cfg: &EnumerationConfig) -> Result<()> {
    for (what, v) in [("|A|", bx.a_max), ("|B|", bx.b_max)] {
        if v as f64 > cfg.coeff_cap {
            return Err(Error::BudgetExceeded { what: what.into(), bound: v as f64, cap: cfg.coeff_cap });
        }
    }
    if bx.pairs() > cfg.pair_cap {
        return Err(Error::BudgetExceeded { what: "(A, B) pairs".into(), bound: bx.pairs(), cap: cfg.pair_cap });
    }
    Ok(())
}

/// All non-exceptional stars with `R^{n-1} <= H < R^n` meeting `window`.
pub fn enumerate_class(
    curve: &CurveSpec,
    params: &ConstructionParams,
    n: u32,
    window: (&Real, &Real),
    cfg: &EnumerationConfig,
) -> Result<Vec<StarInterval>> {
    if n < 1 {
        return Err(Error::Constraint("class index n >= 1 required".into()));
    }
    enumerate_heights(curve, params, Some(n as i64 - 1), n as i64, window, cfg)
}

/// All non-exceptional stars with `H < R^e` meeting `window`.
pub fn enumerate_below(
    curve: &CurveSpec,
    params: &ConstructionParams,
    e: i64,
    window: (&Real, &Real),
    cfg: &EnumerationConfig,
) -> Result<Vec<StarInterval>> {
    if e <= 0 {
        return Ok(Vec::new());
    }
    enumerate_heights(curve, params, None, e, window, cfg)
}

/// Double-precision data shared by every `(A, B)` pair.
struct Prefilter {
    ix: f64,
    jy: f64,
    c: f64,
    inv_sqrt_c: f64,
    lo: f64,
    hi: f64,
    h_top: f64,
    h_bottom: f64,
    exc: f64,
    line_mode: bool,
}

impl Prefilter {
    fn dual(&self, v: i64, e: f64) -> f64 {
        let m = v.unsigned_abs() as f64;
        if m == 0.0 {
            0.0
        } else {
            m.powf(1.0 / e)
        }
    }

    /// The `C` range, or `None` when no star of this `(A, B)` can land in the
    /// height window.
    fn c_range(&self, curve: &CurveSpec, a: i64, b: i64) -> Option<(i64, i64)> {
        let (af, bf) = (a as f64, b as f64);
        let m = self.dual(a, self.ix).max(self.dual(b, self.jy));
        let mu = self.c / m;
        let d = |x: f64| af - bf * curve.eval_f64(x)[1];
        let (dl, dr) = (d(self.lo), d(self.hi));
        let slack = 1e-12 * (af.abs() + bf.abs() + 1.0);
        let crosses = dl == 0.0 || dr == 0.0 || (dl < 0.0) != (dr < 0.0);
        let vmin = if crosses { 0.0 } else { (dl.abs().min(dr.abs()) - slack).max(0.0) };
        let vmax = dl.abs().max(dr.abs()) + slack;

        let h2 = (m * bf).sqrt();
        let type2 = !self.line_mode
            && b != 0
            && h2 >= self.exc * (1.0 - 1e-9)
            && h2 < self.h_top * (1.0 + 1e-9)
            && h2 >= self.h_bottom * (1.0 - 1e-9);
        let h1_hi = self.inv_sqrt_c * vmax * m;
        let type1 = h1_hi >= self.h_bottom * (1.0 - 1e-9);

        // V = min |F'| over the arc; a Type 1 star below the top needs an arc
        // point with |F'| < R^top c^{1/2} / M
        let v_top = self.h_top / (self.inv_sqrt_c * m) * (1.0 + 1e-9) + slack;
        let zone = if type1 && vmin <= v_top { self.band(&d, dl, dr, v_top) } else { None };
        let (xl, xr) = match (zone, type2) {
            (_, true) => (self.lo, self.hi),
            (Some(z), false) => z,
            (None, false) => return None,
        };
        let g = |x: f64| af * x - bf * curve.eval_f64(x)[0];
        let mut pts = vec![xl, xr];
        let (el, er) = (d(xl), d(xr));
        if b != 0 && (el == 0.0 || er == 0.0 || (el < 0.0) != (er < 0.0)) {
            pts.push(bisect_f64(&d, xl, xr, 0.0));
        }
        let vals: Vec<f64> = pts.iter().map(|&x| g(x)).collect();
        let gmin = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let gmax = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let fmax = pts.iter().map(|&x| curve.eval_f64(x)[0].abs()).fold(0.0, f64::max);
        let xmax = self.lo.abs().max(self.hi.abs());
        let tol = 1e-12 * (af.abs() + bf.abs() + 1.0) * (1.0 + xmax + fmax);
        let c_lo = (-gmax - mu - tol).ceil();
        let c_hi = (-gmin + mu + tol).floor();
        (c_lo <= c_hi).then_some((c_lo as i64, c_hi as i64))
    }

    /// `{x : |d(x)| <= v}` for monotone `d`, widened by a relative margin.
    fn band(&self, d: &dyn Fn(f64) -> f64, dl: f64, dr: f64, v: f64) -> Option<(f64, f64)> {
        let inc = dr >= dl;
        let (lo_t, hi_t) = if inc { (-v, v) } else { (v, -v) };
        let x_from = if (inc && dl >= -v) || (!inc && dl <= v) { self.lo } else { bisect_f64(d, self.lo, self.hi, lo_t) };
        let x_to = if (inc && dr <= v) || (!inc && dr >= -v) { self.hi } else { bisect_f64(d, self.lo, self.hi, hi_t) };
        if x_from > x_to {
            return None;
        }
        let pad = 1e-9 * (1.0 + x_from.abs().max(x_to.abs())) + 1e-9 * (x_to - x_from);
        Some(((x_from - pad).max(self.lo), (x_to + pad).min(self.hi)))
    }
}

/// Point where a monotone `d` crosses `t` on `[a, b]` (an endpoint if it does not).
fn bisect_f64(d: &dyn Fn(f64) -> f64, a: f64, b: f64, t: f64) -> f64 {
    let up = d(a) < d(b);
    let (mut u, mut w) = (a, b);
    for _ in 0..100 {
        let mid = 0.5 * (u + w);
        if (d(mid) < t) == up {
            u = mid
        } else {
            w = mid
        }
    }
    0.5 * (u + w)
}

fn enumerate_heights(
    curve: &CurveSpec,
    params: &ConstructionParams,
    bottom: Option<i64>,
    top: i64,
    window: (&Real, &Real),
    cfg: &EnumerationConfig,
) -> Result<Vec<StarInterval>> {
    let (wlo, whi) = window;
    if wlo > whi || !curve.contains(wlo) || !curve.contains(whi) {
        return Err(Error::Domain(format!(
            "window [{:e}, {:e}] not inside the curve domain",
            real::to_f64(wlo),
            real::to_f64(whi)
        )));
    }
    let bx = pruning_box(params, top);
    check_budget(&bx, cfg)?;
    let r = params.r as f64;
    let c = real::to_f64(&params.c);
    let h_min = bottom.unwrap_or(0).max(0);
    // a star meeting the window lies within two halflengths of it
    let reach = 2.0 * real::to_f64(&params.k) * c.sqrt() / r.powi(h_min as i32) * (1.0 + 1e-6) + 1e-12;
    let (ilo, ihi) = (real::to_f64(curve.lo()), real::to_f64(curve.hi()));
    let pre = Prefilter {
        ix: real::rational_to_f64(params.pair.x_exponent()),
        jy: real::rational_to_f64(params.pair.y_exponent()),
        c,
        inv_sqrt_c: 1.0 / c.sqrt(),
        lo: (real::to_f64(wlo) - reach).max(ilo),
        hi: (real::to_f64(whi) + reach).min(ihi),
        h_top: r.powi(top as i32),
        h_bottom: bottom.map_or(0.0, |b| r.powi(b as i32)),
        exc: r.powi(3 * params.n0 as i32),
        line_mode: params.line_mode,
    };
    let h_top = params.r_pow(top);
    let h_bottom = bottom.map(|b| params.r_pow(b));
    let keep = |s: &StarInterval| {
        !s.exceptional && s.height < h_top && h_bottom.as_ref().is_none_or(|b| s.height >= *b) && s.meets(wlo, whi)
    };
    let rows: Vec<Vec<StarInterval>> = (-bx.a_max..=bx.a_max)
        .into_par_iter()
        .map(|a| -> Result<Vec<StarInterval>> {
            let mut out = Vec::new();
            let b_start = if a > 0 { 0 } else { 1 };
            for b in b_start..=bx.b_max {
                let Some((c_lo, c_hi)) = pre.c_range(curve, a, b) else { continue };
                for cc in c_lo..=c_hi {
                    if gcd3(a, b, cc) != 1 {
                        continue;
                    }
                    let line = Line::raw(a, b, cc);
                    for arc in arcs(&line, curve, params)? {
                        let star = star_interval(&arc, params)?;
                        if keep(&star) {
                            out.push(star);
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut all: Vec<StarInterval> = rows.into_iter().flatten().collect();
    sort_stars(&mut all);
    Ok(all)
}

/// Canonical order: by line, then left endpoint.
pub fn sort_stars(v: &mut [StarInterval]) {
    v.sort_by(|x, y| x.line.cmp(&y.line).then(x.lo.partial_cmp(&y.lo).expect("finite endpoints")));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dangerous::verify_label;
    use crate::params::{derive_params, ExponentPair};
    use crate::real::Precision;

    const P: Precision = Precision::DEFAULT;

    fn setup() -> (CurveSpec, ConstructionParams) {
        let curve = CurveSpec::parabola(P.ratio(1, 2), P.ratio(3, 2), P).unwrap();
        let mut params = derive_params(&ExponentPair::half(), 4, curve.big_c0(), None, P).unwrap();
        params.fit_k(curve.small_c0());
        (curve, params)
    }

    #[test]
    fn box_grows_with_height() {
        let (_, params) = setup();
        let mut prev = pruning_box(&params, 1);
        for top in 2..16 {
            let b = pruning_box(&params, top);
            assert!(b.a_max >= prev.a_max && b.b_max >= prev.b_max);
            assert_eq!(b.type2.is_some(), top > 3 * params.n0 as i64);
            prev = b;
        }
    }

    #[test]
    fn low_classes_are_empty() {
        let (curve, params) = setup();
        let w = (curve.lo(), curve.hi());
        for n in 1..=4 {
            assert!(enumerate_class(&curve, &params, n, w, &EnumerationConfig::default()).unwrap().is_empty());
        }
    }

    #[test]
    fn class_five_is_deterministic_and_labelled() {
        let (curve, params) = setup();
        let w = (curve.lo(), curve.hi());
        let cfg = EnumerationConfig::default();
        let a = enumerate_class(&curve, &params, 5, w, &cfg).unwrap();
        let b = enumerate_class(&curve, &params, 5, w, &cfg).unwrap();
        assert_eq!(a.len(), 7);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.line, y.line);
            assert_eq!(x.lo, y.lo);
            let label = x.class.unwrap();
            assert_eq!(label.n, 5);
            assert!(verify_label(&label, x, &params));
        }
        assert!(a.iter().any(|s| (s.line.a, s.line.b, s.line.c) == (-1, 1, 1)));
    }

    #[test]
    fn cap_is_enforced() {
        let (curve, params) = setup();
        let cfg = EnumerationConfig { coeff_cap: 3.0, pair_cap: 1e9 };
        let err = enumerate_class(&curve, &params, 6, (curve.lo(), curve.hi()), &cfg).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn window_outside_domain() {
        let (curve, params) = setup();
        let two = P.int(2);
        let cfg = EnumerationConfig::default();
        assert!(enumerate_class(&curve, &params, 1, (curve.lo(), &two), &cfg).is_err());
    }
}
