use crate::curve::{bisect_bracket, CurveSpec};
use crate::error::Result;
use crate::params::ConstructionParams;
use crate::real::{self, Precision, Real};

use super::line::Line;

/// One connected component of `{x in I : |F_L(x)| <= mu}`.
#[derive(Clone, Debug)]
pub struct Arc {
    pub line: Line,
    pub lo: Real,
    pub hi: Real,
    /// Where `|F_L'|` is smallest on the component.
    pub x0: Real,
    /// `V_L = min |F_L'|` over the component.
    pub v: Real,
    /// `f'(x0)`, needed by the `l = 0` subclass split.
    pub df_x0: Real,
    pub mu: Real,
}

/// `mu = c / max{|A|^{1/i}, |B|^{1/j}}`.
pub fn threshold(line: &Line, params: &ConstructionParams) -> Real {
    let p = params.precision;
    p.of(&params.c) / line.dual_scale(&params.pair, p)
}

pub fn arcs(line: &Line, curve: &CurveSpec, params: &ConstructionParams) -> Result<Vec<Arc>> {
    let mu = threshold(line, params);
    Ok(arcs_with_threshold(line, curve, &mu, params.precision))
}

/// Sub-level components for an explicit threshold. Endpoints are rounded
/// outward and clipped to the domain.
pub fn arcs_with_threshold(line: &Line, curve: &CurveSpec, mu: &Real, p: Precision) -> Vec<Arc> {
    if clearly_missed(line, curve, real::to_f64(mu)) {
        return Vec::new();
    }
    let g = p.guarded();
    let (lo, hi) = (curve.lo().clone(), curve.hi().clone());
    let flat = line.b == 0 || curve.is_affine();
    let split = if flat {
        None
    } else {
        let t = g.int(line.a) / g.int(line.b);
        curve.solve_df(&t, &lo, &hi, g).filter(|x| *x > lo && *x < hi)
    };
    let pieces: Vec<(Real, Real)> = match &split {
        Some(x) => vec![(lo.clone(), x.clone()), (x.clone(), hi.clone())],
        None => vec![(lo.clone(), hi.clone())],
    };
    let mut comps: Vec<(Real, Real)> = Vec::new();
    for (a, b) in &pieces {
        if let Some(c) = monotone_piece(line, curve, mu, a, b, g, p) {
            comps.push(c);
        }
    }
    if let (Some(x), 2) = (&split, comps.len()) {
        // both halves reach the turning point: one component
        if comps[0].1 == *x && comps[1].0 == *x {
            let merged = (comps[0].0.clone(), comps[1].1.clone());
            comps = vec![merged];
        }
    }
    assert!(comps.len() <= 2, "more than two components");
    comps
        .into_iter()
        .map(|(a, b)| {
            let a = real::max(&real::nudge_down(&a, p, 8), &lo);
            let b = real::min(&real::nudge_up(&b, p, 8), &hi);
            finish(line, curve, mu, a, b, split.as_ref(), p)
        })
        .collect()
}

/// Cheap rejection in `f64`: `F` keeps one sign on the domain and stays
/// clear of `[-mu, mu]` with a margin covering rounding and the error in
/// the located turning point.
fn clearly_missed(line: &Line, curve: &CurveSpec, mu: f64) -> bool {
    let (a, b, c) = (line.a as f64, line.b as f64, line.c as f64);
    let (lo, hi) = (real::to_f64(curve.lo()), real::to_f64(curve.hi()));
    let f = |x: f64| a * x - b * curve.eval_f64(x)[0] + c;
    let d = |x: f64| a - b * curve.eval_f64(x)[1];
    let mut pts = vec![(lo, 0.0), (hi, 0.0)];
    let (dl, dh) = (d(lo), d(hi));
    if line.b != 0 && !curve.is_affine() && (dl < 0.0) != (dh < 0.0) {
        let (mut u, mut w) = (lo, hi);
        for _ in 0..200 {
            let m = 0.5 * (u + w);
            if (d(m) < 0.0) == (dl < 0.0) {
                u = m
            } else {
                w = m
            }
            if w - u <= f64::EPSILON * (1.0 + m.abs()) {
                break;
            }
        }
        let x = 0.5 * (u + w);
        pts.push((x, d(x).abs() * ((w - u) + 1e-12 * (hi - lo))));
    }
    let scale: f64 = pts.iter().map(|&(x, _)| a.abs() * x.abs() + b.abs() * curve.eval_f64(x)[0].abs()).fold(0.0, f64::max);
    let tol = 1e-12 * (scale + c.abs() + 1.0);
    let vals: Vec<(f64, f64)> = pts.iter().map(|&(x, slack)| (f(x), slack + tol)).collect();
    vals.iter().all(|&(v, t)| v > mu * (1.0 + 1e-9) + t) || vals.iter().all(|&(v, t)| v < -mu * (1.0 + 1e-9) - t)
}

/// On a piece where `F` is monotone, `{|F| <= mu}` is an interval (or empty).
/// Evaluates at `g`, bisects to the tolerance of `p`.
fn monotone_piece(
    line: &Line,
    curve: &CurveSpec,
    mu: &Real,
    a: &Real,
    b: &Real,
    g: Precision,
    p: Precision,
) -> Option<(Real, Real)> {
    let fa = line.eval_at(curve, a, g);
    let fb = line.eval_at(curve, b, g);
    let mu = g.of(mu);
    let neg = -mu.clone();
    let increasing = fb >= fa;
    let (fmin, fmax) = if increasing { (&fa, &fb) } else { (&fb, &fa) };
    if *fmax < neg || *fmin > mu {
        return None;
    }
    let solve = |target: &Real, want_low: bool| -> Real {
        let h = |x: &Real| line.eval_at(curve, x, g) - target;
        let (l, r) = bisect_bracket(&h, a, b, p).expect("sign change on a monotone piece");
        if want_low {
            l
        } else {
            r
        }
    };
    // entry and exit of the band [-mu, mu]
    let (t_in, t_out) = if increasing { (&neg, &mu) } else { (&mu, &neg) };
    let start = if (increasing && fa >= neg) || (!increasing && fa <= mu) { a.clone() } else { solve(t_in, true) };
    let end = if (increasing && fb <= mu) || (!increasing && fb >= neg) { b.clone() } else { solve(t_out, false) };
    Some((start, end))
}

fn finish(line: &Line, curve: &CurveSpec, mu: &Real, lo: Real, hi: Real, split: Option<&Real>, p: Precision) -> Arc {
    let g = p.guarded();
    let (x0, v) = match split {
        Some(x) if *x >= lo && *x <= hi => (x.clone(), p.zero()),
        _ => {
            if line.b == 0 || curve.is_affine() {
                let mid = (&lo + &hi) / p.int(2);
                let v = real::abs(&line.deriv_at(curve, &mid, g));
                (mid, v)
            } else {
                let vl = real::abs(&line.deriv_at(curve, &lo, g));
                let vh = real::abs(&line.deriv_at(curve, &hi, g));
                if vl <= vh {
                    (lo.clone(), vl)
                } else {
                    (hi.clone(), vh)
                }
            }
        }
    };
    let df_x0 = p.of(&curve.eval_at(&x0, p)[1]);
    Arc { line: *line, lo: p.of(&lo), hi: p.of(&hi), x0: p.of(&x0), v: p.of(&v), df_x0, mu: p.of(mu) }
}
