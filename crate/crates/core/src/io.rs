//! JSON documents and SVG rendering.
//!
//! Constants are written twice: as lossless `significand*2^exponent` strings
//! (read back by [`tree_from_doc`]) and as decimals for people.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cantor::{ConstructionTrace, RemovalCount};
use crate::curve::{CurveDoc, CurveSpec};
use crate::dangerous::{StarInterval, StarType, SubClass, Variant};
use crate::error::{Error, Result};
use crate::params::{ConstructionParams, ExponentPair, RationalParams};
use crate::real::{self, exact_string, parse_exact, parse_rational, rational_string, Precision, Real};
use crate::survivors::{Mode, RationalLevelCheck, RemovalLedgerEntry, SurvivorTree, TreeParams};

/// A constant as exact and decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Num {
    pub exact: String,
    pub decimal: String,
}

impl Num {
    pub fn new(x: &Real, p: Precision) -> Self {
        Num { exact: exact_string(x), decimal: real::decimal(x, p) }
    }

    pub fn get(&self, p: Precision) -> Result<Real> {
        parse_exact(&self.exact, p)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamsDoc {
    pub pair: ExponentPair,
    #[serde(rename = "R")]
    pub r: u64,
    pub lambda: u64,
    pub omega: String,
    pub epsilon: String,
    pub c: Num,
    pub c_bound: Num,
    pub c1: Num,
    pub n0: u32,
    #[serde(rename = "K")]
    pub k: Num,
    #[serde(rename = "C0")]
    pub big_c0: Num,
    pub precision_bits: usize,
    pub line_mode: bool,
}

impl ParamsDoc {
    pub fn new(p: &ConstructionParams) -> Self {
        let pr = p.precision;
        ParamsDoc {
            pair: p.pair.clone(),
            r: p.r,
            lambda: p.lambda,
            omega: rational_string(&p.omega),
            epsilon: rational_string(&p.epsilon),
            c: Num::new(&p.c, pr),
            c_bound: Num::new(&p.c_bound, pr),
            c1: Num::new(&p.c1, pr),
            n0: p.n0,
            k: Num::new(&p.k, pr),
            big_c0: Num::new(&p.big_c0, pr),
            precision_bits: pr.bits(),
            line_mode: p.line_mode,
        }
    }

    pub fn params(&self) -> Result<ConstructionParams> {
        let pr = Precision::new(self.precision_bits)?;
        let p = ConstructionParams {
            pair: self.pair.clone(),
            r: self.r,
            lambda: self.lambda,
            omega: parse_rational(&self.omega)?,
            epsilon: parse_rational(&self.epsilon)?,
            c: self.c.get(pr)?,
            c_bound: self.c_bound.get(pr)?,
            c1: self.c1.get(pr)?,
            n0: self.n0,
            k: self.k.get(pr)?,
            big_c0: self.big_c0.get(pr)?,
            precision: pr,
            line_mode: self.line_mode,
        };
        p.check_invariants()?;
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalParamsDoc {
    #[serde(rename = "R")]
    pub r: u64,
    pub c: Num,
    pub c_bound: Num,
    pub c1: Num,
    pub c0: Num,
    #[serde(rename = "C0")]
    pub big_c0: Num,
    pub precision_bits: usize,
}

impl RationalParamsDoc {
    pub fn new(p: &RationalParams) -> Self {
        let pr = p.precision;
        RationalParamsDoc {
            r: p.r,
            c: Num::new(&p.c, pr),
            c_bound: Num::new(&p.c_bound, pr),
            c1: Num::new(&p.c1, pr),
            c0: Num::new(&p.small_c0, pr),
            big_c0: Num::new(&p.big_c0, pr),
            precision_bits: pr.bits(),
        }
    }

    pub fn params(&self) -> Result<RationalParams> {
        let pr = Precision::new(self.precision_bits)?;
        Ok(RationalParams {
            r: self.r,
            c: self.c.get(pr)?,
            c_bound: self.c_bound.get(pr)?,
            c1: self.c1.get(pr)?,
            small_c0: self.c0.get(pr)?,
            big_c0: self.big_c0.get(pr)?,
            precision: pr,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnyParamsDoc {
    Curve(ParamsDoc),
    Rational(RationalParamsDoc),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountDoc {
    pub k: usize,
    pub n: usize,
    pub count: u64,
    pub budget: f64,
    pub max_per_ancestor: u64,
    pub budget_per_ancestor: f64,
}

impl From<&RemovalCount> for CountDoc {
    fn from(r: &RemovalCount) -> Self {
        CountDoc {
            k: r.k,
            n: r.n,
            count: r.count,
            budget: r.budget,
            max_per_ancestor: r.max_per_ancestor,
            budget_per_ancestor: r.budget_per_ancestor,
        }
    }
}

/// The trace shape: `levels` as `[lo, hi]` decimal pairs, rounded outward.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub lo: Num,
    pub len: Num,
    pub r_seq: Vec<u64>,
    pub levels: Vec<Vec<[String; 2]>>,
    /// Grid positions of the survivors, `J = lo + len [i, i+1] / (R_0 ... R_{n-1})`.
    pub indices: Vec<Vec<u128>>,
    pub removal_counts: Vec<CountDoc>,
    pub warnings: Vec<String>,
    pub empty_at: Option<usize>,
}

pub fn trace_doc(t: &ConstructionTrace) -> TraceDoc {
    let p = t.precision;
    let levels = t
        .levels
        .iter()
        .enumerate()
        .map(|(n, v)| {
            v.iter()
                .map(|&i| {
                    let (lo, hi) = t.bounds(n, i);
                    [real::decimal_down(&lo, p), real::decimal_up(&hi, p)]
                })
                .collect()
        })
        .collect();
    TraceDoc {
        lo: Num::new(&t.lo, p),
        len: Num::new(&t.len, p),
        r_seq: t.r_seq.clone(),
        levels,
        indices: t.levels.clone(),
        removal_counts: t.removal_counts.values().map(CountDoc::from).collect(),
        warnings: t.warnings.clone(),
        empty_at: t.empty_at,
    }
}

impl TraceDoc {
    pub fn trace(&self, p: Precision) -> Result<ConstructionTrace> {
        if self.indices.len() != self.r_seq.len() + 1 {
            return Err(Error::Parse("trace needs one more level than R values".into()));
        }
        let counts = self
            .removal_counts
            .iter()
            .map(|c| {
                (
                    (c.k, c.n),
                    RemovalCount {
                        k: c.k,
                        n: c.n,
                        count: c.count,
                        max_per_ancestor: c.max_per_ancestor,
                        budget_per_ancestor: c.budget_per_ancestor,
                        budget: c.budget,
                    },
                )
            })
            .collect::<BTreeMap<_, _>>();
        let mut levels = self.indices.clone();
        for v in &mut levels {
            v.sort_unstable();
        }
        Ok(ConstructionTrace {
            lo: self.lo.get(p)?,
            len: self.len.get(p)?,
            r_seq: self.r_seq.clone(),
            levels,
            removal_counts: counts,
            warnings: self.warnings.clone(),
            precision: p,
            empty_at: self.empty_at,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeDoc {
    pub mode: Mode,
    pub params: AnyParamsDoc,
    pub curve: CurveDoc,
    pub trace: TraceDoc,
    #[serde(default, skip_deserializing)]
    pub ledger: Vec<RemovalLedgerEntry>,
    #[serde(default, skip_deserializing)]
    pub rational_checks: Vec<RationalLevelCheck>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

pub fn tree_doc(t: &SurvivorTree) -> Result<TreeDoc> {
    let params = match &t.params {
        TreeParams::Curve(p) => AnyParamsDoc::Curve(ParamsDoc::new(p)),
        TreeParams::Rational(p) => AnyParamsDoc::Rational(RationalParamsDoc::new(p)),
    };
    let curve = t.curve.to_doc().ok_or_else(|| Error::Constraint("custom curves cannot be serialised".into()))?;
    Ok(TreeDoc {
        mode: t.mode,
        params,
        curve,
        trace: trace_doc(&t.trace),
        ledger: t.ledger.clone(),
        rational_checks: t.rational_checks.clone(),
        warnings: t.warnings.clone(),
    })
}

/// Rebuilds a tree for verification. The ledger is not restored.
pub fn tree_from_doc(doc: &TreeDoc) -> Result<SurvivorTree> {
    use crate::cantor::{rational_schedule, standard_schedule};
    let (params, prec) = match &doc.params {
        AnyParamsDoc::Curve(d) => {
            let p = d.params()?;
            let pr = p.precision;
            (TreeParams::Curve(p), pr)
        }
        AnyParamsDoc::Rational(d) => {
            let p = d.params()?;
            let pr = p.precision;
            (TreeParams::Rational(p), pr)
        }
    };
    let schedule = match &params {
        TreeParams::Curve(p) => standard_schedule(p.r, real::rational_to_f64(&p.epsilon), p.n0 as usize, 1),
        TreeParams::Rational(_) => rational_schedule(),
    };
    let curve = CurveSpec::from_doc(&doc.curve, prec)?;
    let trace = doc.trace.trace(prec)?;
    if !trace.check_nesting() {
        return Err(Error::Parse("tree levels are not nested".into()));
    }
    Ok(SurvivorTree {
        mode: doc.mode,
        params,
        curve,
        schedule,
        trace,
        ledger: Vec::new(),
        warnings: doc.warnings.clone(),
        rational_checks: Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassDoc {
    pub n: u32,
    pub k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    pub sub: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StarDoc {
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    #[serde(rename = "C")]
    pub c: i64,
    #[serde(rename = "type")]
    pub star_type: StarType,
    #[serde(rename = "H")]
    pub h: String,
    #[serde(rename = "V")]
    pub v: String,
    pub lo: String,
    pub hi: String,
    pub class: Option<ClassDoc>,
    pub exceptional: bool,
}

pub fn star_doc(s: &StarInterval, p: Precision) -> StarDoc {
    let class = s.class.map(|c| {
        let (l, m, sub, u, v) = match c.variant {
            Variant::Type2 => (None, None, "star".to_string(), None, None),
            Variant::Type1 { l, m, sub } => match sub {
                SubClass::Generic => (Some(l), Some(m), "generic".into(), None, None),
                SubClass::C1 => (Some(l), Some(m), "C1".into(), None, None),
                SubClass::C2 => (Some(l), Some(m), "C2".into(), None, None),
                SubClass::C3 { u, v } => (Some(l), Some(m), "C3".into(), Some(u), Some(v)),
            },
        };
        ClassDoc { n: c.n, k: c.k, l, m, sub, u, v }
    });
    StarDoc {
        a: s.line.a,
        b: s.line.b,
        c: s.line.c,
        star_type: s.star_type,
        h: real::decimal(&s.height, p),
        v: real::decimal(&s.arc.v, p),
        lo: real::decimal_down(&s.lo, p),
        hi: real::decimal_up(&s.hi, p),
        class,
        exceptional: s.exceptional,
    }
}

pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

/// One row of rectangles per level, scaled to `J_0`.
pub fn render_svg(trace: &ConstructionTrace) -> String {
    const W: f64 = 1000.0;
    const ROW: f64 = 18.0;
    const GAP: f64 = 8.0;
    let depth = trace.depth();
    let h = (depth + 1) as f64 * (ROW + GAP) + GAP;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{h}" viewBox="0 0 {} {h}">"#,
        W + 2.0 * GAP,
        W + 2.0 * GAP
    );
    for (n, v) in trace.levels.iter().enumerate() {
        let y = GAP + n as f64 * (ROW + GAP);
        let d = trace.denominator(n) as f64;
        let _ = writeln!(s, r#"  <g fill="black"><title>level {n}: {} intervals</title>"#, v.len());
        for &i in v {
            let x = GAP + W * (i as f64) / d;
            let w = (W / d).max(0.5);
            let _ = writeln!(s, r#"    <rect x="{x:.4}" y="{y}" width="{w:.4}" height="{ROW}"/>"#);
        }
        let _ = writeln!(s, "  </g>");
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::{build, CantorRecipe, MiddleThirds, RemovalSchedule};

    const P: Precision = Precision::DEFAULT;

    #[test]
    fn trace_round_trip() {
        let r = CantorRecipe::constant(P.ratio(1, 3), P.ratio(1, 7), 3, RemovalSchedule::diagonal(1.0), P).unwrap();
        let t = build(&r, &mut MiddleThirds, 4).unwrap().trace;
        let doc = trace_doc(&t);
        let json = serde_json::to_string(&doc).unwrap();
        let back: TraceDoc = serde_json::from_str(&json).unwrap();
        let t2 = back.trace(P).unwrap();
        assert_eq!(t2.levels, t.levels);
        assert_eq!(t2.lo, t.lo);
        assert_eq!(t2.bounds(4, 7), t.bounds(4, 7));
        assert_eq!(doc.levels[1].len(), 2);
    }

    #[test]
    fn svg_has_one_rect_per_survivor() {
        let r = CantorRecipe::constant(P.zero(), P.one(), 3, RemovalSchedule::diagonal(1.0), P).unwrap();
        let t = build(&r, &mut MiddleThirds, 3).unwrap().trace;
        let svg = render_svg(&t);
        assert_eq!(svg.matches("<rect").count(), 1 + 2 + 4 + 8);
    }
}
