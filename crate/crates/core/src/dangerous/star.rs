use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::ConstructionParams;
use crate::real::{self, Real};

use super::arc::Arc;
use super::classify::{classify, ClassLabel};
use super::line::Line;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum StarType {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

/// The enlarged interval `Delta*(L)` around an arc.
#[derive(Clone, Debug)]
pub struct StarInterval {
    pub line: Line,
    pub arc: Arc,
    pub star_type: StarType,
    pub center: Real,
    /// Inflated by a relative `2^{-(p-10)}` before rounding the endpoints out.
    pub halflength: Real,
    pub lo: Real,
    pub hi: Real,
    pub height: Real,
    /// `c^{-1/2} V max{|A|^{1/i}, |B|^{1/j}}`, the Type 1 height whatever the type.
    pub h1: Real,
    /// `R^d <= h1 < R^{d+1}`; `None` when `h1 = 0`.
    pub d: Option<i64>,
    pub l0: u32,
    pub exceptional: bool,
    pub class: Option<ClassLabel>,
}

impl StarInterval {
    pub fn meets(&self, lo: &Real, hi: &Real) -> bool {
        self.lo <= *hi && *lo <= self.hi
    }

    pub fn contains(&self, x: &Real) -> bool {
        self.lo <= *x && *x <= self.hi
    }
}

pub fn star_interval(arc: &Arc, params: &ConstructionParams) -> Result<StarInterval> {
    let p = params.precision;
    let line = arc.line;
    let scale = line.dual_scale(&params.pair, p);
    let sqrt_c = params.sqrt_c();
    let h1 = p.of(&arc.v) * &scale / &sqrt_c;
    let d = if real::is_zero(&h1) { None } else { Some(real::floor_log(&h1, params.r, p)) };
    let l0 = (d.unwrap_or(0).max(0) as u64 / params.lambda) as u32;
    let big_ab = p.int(line.max_abs());
    let cp1 = p.of(&params.big_c0) + p.one();
    let thresh = &cp1 * params.r_pow(-(params.lambda as i64) * (l0 as i64 + 1)) * &big_ab;
    let type1 = arc.v > thresh;

    if params.line_mode && !type1 {
        return Err(Error::Invariant(format!(
            "{line}: the Type test selected Type 2 on an affine curve; the tau clause should exclude this"
        )));
    }
    let (star_type, height, half) = if type1 {
        let half = p.of(&params.k) * &params.c / (&scale * &arc.v);
        (StarType::One, h1.clone(), half)
    } else {
        if line.b == 0 {
            return Err(Error::Degenerate(line.to_string()));
        }
        let mb = &scale * p.int(line.b.abs());
        let height = real::sqrt(&mb, p);
        let half = p.of(&params.k) * real::sqrt(&(p.of(&params.c) / &mb), p);
        (StarType::Two, height, half)
    };
    if height < p.one() {
        return Err(Error::Invariant(format!("{line}: star height {:e} < 1; c is too large for this R", real::to_f64(&height))));
    }
    let half = &half * (p.one() + p.rel_unit(10));
    let center = (&arc.lo + &arc.hi) / p.int(2);
    let lo = real::nudge_down(&(&center - &half), p, 8);
    let hi = real::nudge_up(&(&center + &half), p, 8);
    if arc.lo < lo || arc.hi > hi {
        return Err(Error::Invariant(format!(
            "{line}: arc [{:e}, {:e}] is not inside its star; K is too small",
            real::to_f64(&arc.lo),
            real::to_f64(&arc.hi)
        )));
    }
    let exceptional = star_type == StarType::Two && height < params.exceptional_height();
    let mut star = StarInterval {
        line,
        arc: arc.clone(),
        star_type,
        center,
        halflength: half,
        lo,
        hi,
        height,
        h1,
        d,
        l0,
        exceptional,
        class: None,
    };
    if !exceptional {
        star.class = Some(classify(&star, params)?);
    }
    Ok(star)
}

/// Type 2 with height below `R^{3 n0}`.
pub fn is_exceptional(star: &StarInterval, params: &ConstructionParams) -> bool {
    star.star_type == StarType::Two && star.height < params.exceptional_height()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveSpec;
    use crate::dangerous::{arcs, verify_label};
    use crate::params::{derive_params, ExponentPair};
    use crate::real::Precision;

    const P: Precision = Precision::DEFAULT;

    fn setup(c: Option<&Real>) -> (CurveSpec, ConstructionParams) {
        let curve = CurveSpec::parabola(P.ratio(1, 2), P.ratio(3, 2), P).unwrap();
        let mut params = derive_params(&ExponentPair::half(), 4, curve.big_c0(), c, P).unwrap();
        params.fit_k(curve.small_c0());
        (curve, params)
    }

    fn point_arc(line: Line, v: Real) -> Arc {
        Arc { line, lo: P.one(), hi: P.one(), x0: P.one(), v, df_x0: P.int(2), mu: P.zero() }
    }

    #[test]
    fn type_one_height_from_v() {
        let (_, params) = setup(Some(&P.ratio(1, 100_000)));
        let star = star_interval(&point_arc(Line::raw(3, 2, -1), P.ratio(1, 2)), &params).unwrap();
        assert_eq!(star.star_type, StarType::One);
        assert!((real::to_f64(&star.height) - 1423.025).abs() < 1e-3);
        assert_eq!(star.d, Some(5));
        assert_eq!(star.l0, 1);
        let label = star.class.unwrap();
        assert_eq!(label.n, 6);
        assert!(verify_label(&label, &star, &params));
        assert!(star.lo < P.one() && P.one() < star.hi);
    }

    #[test]
    fn vertical_line_is_type_one() {
        let (curve, params) = setup(None);
        let line = Line::new(1, 0, -1).unwrap();
        let arc = &arcs(&line, &curve, &params).unwrap()[0];
        let star = star_interval(arc, &params).unwrap();
        assert_eq!(star.star_type, StarType::One);
        assert_eq!(star.arc.v, P.one());
        assert!(star.contains(&P.one()));
    }

    #[test]
    fn tangent_line_is_exceptional_type_two() {
        let (curve, params) = setup(None);
        let line = Line::new(2, 1, -1).unwrap();
        let found = arcs(&line, &curve, &params).unwrap();
        assert_eq!(found.len(), 1);
        let star = star_interval(&found[0], &params).unwrap();
        assert_eq!(star.star_type, StarType::Two);
        assert_eq!(star.height, P.int(2));
        assert!(star.exceptional && is_exceptional(&star, &params));
        assert!(star.class.is_none());
        assert!(star.contains(&P.one()));
    }

    #[test]
    fn exceptional_boundary_is_strict() {
        let (_, params) = setup(None);
        // M |B| = 2^32 * 2^16 = R^24 puts H exactly at R^{3 n0}
        let at = star_interval(&point_arc(Line::raw(1, 1 << 16, 0), P.zero()), &params).unwrap();
        assert_eq!(at.height, params.exceptional_height());
        assert!(!at.exceptional);
        assert_eq!(at.class.unwrap().variant, crate::dangerous::Variant::Type2);
        let below = star_interval(&point_arc(Line::raw(1, (1 << 16) - 1, 0), P.zero()), &params).unwrap();
        assert!(below.exceptional);
    }
}
