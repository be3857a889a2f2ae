//! Nested survivor collections `J_0 ⊃ J_1 ⊃ ...` avoiding star intervals.

use std::collections::BTreeMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::cantor::{
    build_partial, rational_schedule, standard_schedule, CantorRecipe, Cell, ConstructionTrace, Removal, RemovalSchedule, Remover,
};
use crate::curve::CurveSpec;
use crate::dangerous::{enumerate_below, enumerate_class, ClassLabel, EnumerationConfig, Line, StarInterval};
use crate::error::{Error, Result};
use crate::params::{ConstructionParams, RationalParams};
use crate::real::{self, Precision, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Curve,
    Line,
    Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum Source {
    Line(Line),
    Rational { p: i64, q: i64 },
}

impl std::fmt::Display for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Source::Line(l) => write!(f, "{l}"),
            Source::Rational { p, q } => write!(f, "{p}/{q}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LedgerTag {
    pub source: Source,
    pub class: Option<ClassLabel>,
    pub family: String,
    /// The attribution rule pointed below level 0.
    pub clamped: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RemovalLedgerEntry {
    pub n_child: usize,
    pub child_index: u128,
    pub m_ancestor: usize,
    pub ancestor_index: u128,
    #[serde(flatten)]
    pub tag: LedgerTag,
}

/// Per-level bookkeeping of the rational case.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RationalLevelCheck {
    /// Parent level.
    pub n: usize,
    pub max_removed_per_parent: usize,
    pub max_intervals_per_parent: usize,
    pub max_children_per_interval: usize,
}

impl RationalLevelCheck {
    pub fn passes(&self) -> bool {
        self.max_removed_per_parent <= 3 && self.max_intervals_per_parent <= 1 && self.max_children_per_interval <= 3
    }
}

#[derive(Clone, Debug)]
pub enum TreeParams {
    Curve(ConstructionParams),
    Rational(RationalParams),
}

impl TreeParams {
    pub fn r(&self) -> u64 {
        match self {
            TreeParams::Curve(p) => p.r,
            TreeParams::Rational(p) => p.r,
        }
    }

    pub fn precision(&self) -> Precision {
        match self {
            TreeParams::Curve(p) => p.precision,
            TreeParams::Rational(p) => p.precision,
        }
    }

    pub fn c1(&self) -> &Real {
        match self {
            TreeParams::Curve(p) => &p.c1,
            TreeParams::Rational(p) => &p.c1,
        }
    }
}

#[derive(Debug)]
pub struct SurvivorTree {
    pub mode: Mode,
    pub params: TreeParams,
    pub curve: CurveSpec,
    pub schedule: RemovalSchedule,
    pub trace: ConstructionTrace,
    pub ledger: Vec<RemovalLedgerEntry>,
    pub warnings: Vec<String>,
    pub rational_checks: Vec<RationalLevelCheck>,
}

impl SurvivorTree {
    pub fn depth(&self) -> usize {
        self.trace.depth()
    }

    pub fn construction_params(&self) -> Option<&ConstructionParams> {
        match &self.params {
            TreeParams::Curve(p) => Some(p),
            TreeParams::Rational(_) => None,
        }
    }

    pub fn survivors(&self, level: usize) -> impl Iterator<Item = Cell> + '_ {
        self.trace.levels[level].iter().map(move |&i| self.trace.cell(level, i))
    }

    /// Midpoints of the survivors at `level`, at working precision.
    pub fn midpoints(&self, level: usize) -> Vec<Real> {
        let p = self.trace.precision;
        self.survivors(level).map(|c| (c.lo + c.hi) / p.int(2)).collect()
    }
}

fn j0_interval(curve: &CurveSpec, c1: &Real, offset: &Real, p: Precision) -> Result<(Real, Real)> {
    if *offset < Real::ZERO {
        return Err(Error::Constraint("J0 offset must be non-negative".into()));
    }
    let lo = p.of(curve.lo()) + p.of(offset);
    let hi = &lo + p.of(c1);
    if hi > *curve.hi() {
        return Err(Error::Constraint(format!(
            "J0 = [lo + offset, lo + offset + c1] must fit in the domain: c1 = {:e}, offset = {:e}",
            real::to_f64(c1),
            real::to_f64(offset)
        )));
    }
    Ok((lo, p.of(c1)))
}

/// Intervals sorted by left end, searchable by overlap.
struct IntervalIndex<T> {
    items: Vec<(Real, Real, T)>,
    max_len: Real,
}

impl<T> IntervalIndex<T> {
    fn new(mut items: Vec<(Real, Real, T)>, p: Precision) -> Self {
        items.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
        let max_len = items.iter().map(|(l, h, _)| h - l).fold(p.zero(), |m, d| real::max(&m, &d));
        IntervalIndex { items, max_len }
    }

    fn empty(p: Precision) -> Self {
        IntervalIndex { items: Vec::new(), max_len: p.zero() }
    }

    /// Items whose closed interval meets `[lo, hi]`.
    fn meeting<'a>(&'a self, lo: &'a Real, hi: &'a Real) -> impl Iterator<Item = &'a (Real, Real, T)> + 'a {
        let from = lo - &self.max_len;
        let start = self.items.partition_point(|x| x.0 < from);
        self.items[start..].iter().take_while(move |x| x.0 <= *hi).filter(move |x| x.1 >= *lo)
    }
}

struct StarRemover<'a> {
    curve: &'a CurveSpec,
    params: &'a ConstructionParams,
    cfg: &'a EnumerationConfig,
    stars: IntervalIndex<LedgerTag>,
    /// `(level, tag)` of attributions that had to be clamped.
    clamped: Mutex<Vec<String>>,
}

impl Remover for StarRemover<'_> {
    type Tag = LedgerTag;

    fn begin_level(&mut self, n: usize, trace: &ConstructionTrace) -> Result<()> {
        let p = self.params.precision;
        if n == 0 {
            // no star has height below 1
            self.stars = IntervalIndex::empty(p);
            return Ok(());
        }
        let (lo, hi) = trace.hull(n).expect("non-empty level");
        let lo = real::max(&lo, self.curve.lo());
        let hi = real::min(&hi, self.curve.hi());
        let found = enumerate_class(self.curve, self.params, n as u32, (&lo, &hi), self.cfg)?;
        let items = found
            .into_iter()
            .map(|s| {
                let label = s.class.expect("non-exceptional stars carry a class");
                let tag = LedgerTag { source: Source::Line(s.line), class: Some(label), family: label.family(), clamped: false };
                (s.lo, s.hi, tag)
            })
            .collect();
        self.stars = IntervalIndex::new(items, p);
        Ok(())
    }

    fn remove(&self, n: usize, parent: &Cell, children: &[Cell]) -> Vec<Removal<LedgerTag>> {
        let mut out = Vec::new();
        for (lo, hi, tag) in self.stars.meeting(&parent.lo, &parent.hi) {
            let label = tag.class.expect("class");
            let (m, clamped) = label.ancestor_level(self.params.n0);
            debug_assert_eq!(label.n as usize, n);
            if clamped {
                self.clamped.lock().expect("poisoned").push(format!("{} at n = {n}: {}", tag.source, label));
            }
            for (pos, ch) in children.iter().enumerate() {
                if ch.lo <= *hi && *lo <= ch.hi {
                    let mut t = tag.clone();
                    t.clamped = clamped;
                    out.push(Removal { child: pos, ancestor_level: m, tag: t });
                }
            }
        }
        out
    }
}

fn ledger_from(removed: Vec<crate::cantor::RemovedChild<LedgerTag>>) -> Vec<RemovalLedgerEntry> {
    let mut v: Vec<RemovalLedgerEntry> = removed
        .into_iter()
        .map(|r| RemovalLedgerEntry {
            n_child: r.level,
            child_index: r.index,
            m_ancestor: r.ancestor_level,
            ancestor_index: r.ancestor_index,
            tag: r.tag,
        })
        .collect();
    v.sort_by_key(|e| (e.n_child, e.child_index));
    v
}

fn empty_level_error(level: usize, ledger: &[RemovalLedgerEntry]) -> Error {
    let mut by_family: BTreeMap<&str, usize> = BTreeMap::new();
    for e in ledger.iter().filter(|e| e.n_child == level) {
        *by_family.entry(e.tag.family.as_str()).or_default() += 1;
    }
    let detail = by_family
        .iter()
        .max_by_key(|(f, c)| (**c, std::cmp::Reverse(**f)))
        .map(|(f, c)| format!("; dominant class {f} with {c} removals"))
        .unwrap_or_default();
    Error::EmptyLevel { level, detail }
}

/// Builds `J_0 .. J_depth` for a non-degenerate curve, or for an affine curve
/// when `params.line_mode` is set.
pub fn build_survivors(
    curve: &CurveSpec,
    params: &ConstructionParams,
    depth: usize,
    j0_offset: &Real,
    cfg: &EnumerationConfig,
) -> Result<SurvivorTree> {
    if curve.is_affine() != params.line_mode {
        return Err(Error::Constraint(if params.line_mode {
            "line mode needs an affine curve".into()
        } else {
            "an affine curve (f'' = 0) is only admissible in line mode".into()
        }));
    }
    if *curve.big_c0() > params.big_c0 {
        return Err(Error::Constraint("the curve's C0 exceeds the one used for the constants".into()));
    }
    let p = params.precision;
    let (lo, len) = j0_interval(curve, &params.c1, j0_offset, p)?;
    let eps = real::rational_to_f64(&params.epsilon);
    let schedule = standard_schedule(params.r, eps, params.n0 as usize, 1);
    let recipe = CantorRecipe::constant(lo, len, params.r, schedule.clone(), p)?;
    let mut remover = StarRemover { curve, params, cfg, stars: IntervalIndex::empty(p), clamped: Mutex::new(Vec::new()) };
    let out = build_partial(&recipe, &mut remover, depth)?;
    let ledger = ledger_from(out.removed);
    if let Some(level) = out.trace.empty_at {
        return Err(empty_level_error(level, &ledger));
    }
    let mut warnings = out.trace.warnings.clone();
    let mut clamped = remover.clamped.into_inner().expect("poisoned");
    clamped.sort();
    clamped.dedup();
    for c in clamped {
        warnings.push(format!("attribution clamped to level 0: {c}"));
    }
    Ok(SurvivorTree {
        mode: if params.line_mode { Mode::Line } else { Mode::Curve },
        params: TreeParams::Curve(params.clone()),
        curve: curve.clone(),
        schedule,
        trace: out.trace,
        ledger,
        warnings,
        rational_checks: Vec::new(),
    })
}

/// A star that reaches a survivor it should have been removed from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LowHeightWitness {
    pub level: usize,
    pub index: u128,
    pub source: Source,
    pub star_lo: String,
    pub star_hi: String,
    pub height: f64,
}

impl std::fmt::Display for LowHeightWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "level {} interval #{} meets the star of {} = [{}, {}] with height {:.6e}",
            self.level, self.index, self.source, self.star_lo, self.star_hi, self.height
        )
    }
}

fn first_hit<T>(
    tree: &SurvivorTree,
    n: usize,
    intervals: IntervalIndex<T>,
    describe: impl Fn(&(Real, Real, T)) -> (Source, f64),
) -> Option<LowHeightWitness> {
    let p = tree.trace.precision;
    for cell in tree.survivors(n) {
        if let Some(hit) = intervals.meeting(&cell.lo, &cell.hi).next() {
            let (source, height) = describe(hit);
            return Some(LowHeightWitness {
                level: n,
                index: cell.index,
                source,
                star_lo: real::decimal_down(&hit.0, p),
                star_hi: real::decimal_up(&hit.1, p),
                height,
            });
        }
    }
    None
}

/// Re-enumerates from scratch every star with `H < R^{n-1}` and checks that
/// none meets a survivor of level `n`. `Ok(None)` means the level is clean.
pub fn verify_no_low_height(tree: &SurvivorTree, n: usize, cfg: &EnumerationConfig) -> Result<Option<LowHeightWitness>> {
    if n > tree.depth() {
        return Err(Error::Constraint(format!("level {n} above the tree depth {}", tree.depth())));
    }
    if n <= 1 || tree.trace.levels[n].is_empty() {
        return Ok(None);
    }
    match &tree.params {
        TreeParams::Curve(params) => {
            let (lo, hi) = tree.trace.hull(n).expect("non-empty");
            let lo = real::max(&lo, tree.curve.lo());
            let hi = real::min(&hi, tree.curve.hi());
            let stars = enumerate_below(&tree.curve, params, n as i64 - 1, (&lo, &hi), cfg)?;
            let items: Vec<(Real, Real, StarInterval)> = stars.into_iter().map(|s| (s.lo.clone(), s.hi.clone(), s)).collect();
            let idx = IntervalIndex::new(items, params.precision);
            Ok(first_hit(tree, n, idx, |(_, _, s)| (Source::Line(s.line), real::to_f64(&s.height))))
        }
        TreeParams::Rational(rp) => {
            let (lo, hi) = tree.trace.hull(n).expect("non-empty");
            let top = rp.r.pow(n as u32 - 1);
            let items = rational_intervals(&tree.curve, rp, 1, top, &lo, &hi);
            let idx = IntervalIndex::new(items, rp.precision);
            Ok(first_hit(tree, n, idx, |(_, _, (p, q))| (Source::Rational { p: *p, q: *q }, (*q as f64) * (*q as f64))))
        }
    }
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    (a, b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Neighbourhoods `f^{-1}(p/q) ± c/(c0 q^2)` for reduced `p/q` with
/// `bottom <= q^2 < top`, restricted to those meeting `[lo, hi]`.
fn rational_intervals(
    curve: &CurveSpec,
    rp: &RationalParams,
    bottom: u64,
    top: u64,
    lo: &Real,
    hi: &Real,
) -> Vec<(Real, Real, (i64, i64))> {
    let p = rp.precision;
    let g = p.guarded();
    let (fmin, fmax) = curve.range(g);
    let mut out = Vec::new();
    let mut q: i64 = 1;
    while ((q * q) as u64) < top {
        if ((q * q) as u64) < bottom {
            q += 1;
            continue;
        }
        let q2 = g.int(q * q);
        let rad_y = g.of(&rp.c) / &q2;
        let half = p.of(&(g.of(&rp.c) / (g.of(&rp.small_c0) * &q2)));
        // p/q must come within c/q^2 of f(I)
        let p_lo = real::ceil_i64(&((&fmin - &rad_y) * g.int(q))).expect("fits");
        let p_hi = real::floor_i64(&((&fmax + &rad_y) * g.int(q))).expect("fits");
        for num in p_lo..=p_hi {
            if gcd(num, q) != 1 {
                continue;
            }
            let y = g.int(num) / g.int(q);
            // outside f(I): centre at the nearer end, which still covers the set
            let yc = real::min(&real::max(&y, &fmin), &fmax);
            let x = curve.inverse(&yc, g).unwrap_or_else(|| if yc <= fmin { curve.lo().clone() } else { curve.hi().clone() });
            let a = real::nudge_down(&(&x - &half), p, 8);
            let b = real::nudge_up(&(&x + &half), p, 8);
            if a <= *hi && *lo <= b {
                out.push((p.of(&a), p.of(&b), (num, q)));
            }
        }
        q += 1;
    }
    out
}

struct RationalRemover<'a> {
    curve: &'a CurveSpec,
    rp: &'a RationalParams,
    intervals: IntervalIndex<(i64, i64)>,
    checks: Mutex<BTreeMap<usize, RationalLevelCheck>>,
}

impl Remover for RationalRemover<'_> {
    type Tag = LedgerTag;

    fn begin_level(&mut self, n: usize, trace: &ConstructionTrace) -> Result<()> {
        let p = self.rp.precision;
        self.checks.lock().expect("poisoned").insert(n, RationalLevelCheck { n, ..Default::default() });
        if n == 0 {
            self.intervals = IntervalIndex::empty(p);
            return Ok(());
        }
        let r = self.rp.r;
        let (lo, hi) = trace.hull(n).expect("non-empty level");
        let bottom = r.pow(n as u32 - 1);
        let top = r.checked_pow(n as u32).ok_or_else(|| Error::Constraint("R^n overflows u64".into()))?;
        self.intervals = IntervalIndex::new(rational_intervals(self.curve, self.rp, bottom, top, &lo, &hi), p);
        Ok(())
    }

    fn remove(&self, n: usize, parent: &Cell, children: &[Cell]) -> Vec<Removal<LedgerTag>> {
        let mut out = Vec::new();
        let mut hit = vec![false; children.len()];
        let mut count = 0;
        let mut per_interval = 0;
        for (lo, hi, (num, q)) in self.intervals.meeting(&parent.lo, &parent.hi) {
            count += 1;
            let mut here = 0;
            for (pos, ch) in children.iter().enumerate() {
                if ch.lo <= *hi && *lo <= ch.hi {
                    here += 1;
                    hit[pos] = true;
                    let tag = LedgerTag {
                        source: Source::Rational { p: *num, q: *q },
                        class: None,
                        family: format!("Q(n={n})"),
                        clamped: false,
                    };
                    out.push(Removal { child: pos, ancestor_level: n, tag });
                }
            }
            per_interval = per_interval.max(here);
        }
        let removed = hit.iter().filter(|&&b| b).count();
        let mut checks = self.checks.lock().expect("poisoned");
        let e = checks.entry(n).or_default();
        e.max_removed_per_parent = e.max_removed_per_parent.max(removed);
        e.max_intervals_per_parent = e.max_intervals_per_parent.max(count);
        e.max_children_per_interval = e.max_children_per_interval.max(per_interval);
        out
    }
}

/// The `(0, 1)` construction: neighbourhoods of `f^{-1}(p/q)` with height `q^2`.
pub fn build_rational_case(curve: &CurveSpec, rp: &RationalParams, depth: usize, j0_offset: &Real) -> Result<SurvivorTree> {
    if curve.is_affine() {
        return Err(Error::Constraint("the rational case needs a non-degenerate curve".into()));
    }
    let p = rp.precision;
    let (lo, len) = j0_interval(curve, &rp.c1, j0_offset, p)?;
    let schedule = rational_schedule();
    let recipe = CantorRecipe::constant(lo, len, rp.r, schedule.clone(), p)?;
    let mut remover = RationalRemover { curve, rp, intervals: IntervalIndex::empty(p), checks: Mutex::new(BTreeMap::new()) };
    let out = build_partial(&recipe, &mut remover, depth)?;
    let ledger = ledger_from(out.removed);
    if let Some(level) = out.trace.empty_at {
        return Err(empty_level_error(level, &ledger));
    }
    let checks: Vec<RationalLevelCheck> = remover.checks.into_inner().expect("poisoned").into_values().collect();
    let mut warnings = out.trace.warnings.clone();
    for c in checks.iter().filter(|c| !c.passes()) {
        warnings.push(format!("rational-case bound broken at n = {}: {:?}", c.n, c));
    }
    Ok(SurvivorTree {
        mode: Mode::Rational,
        params: TreeParams::Rational(rp.clone()),
        curve: curve.clone(),
        schedule,
        trace: out.trace,
        ledger,
        warnings,
        rational_checks: checks,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LedgerRow {
    pub m: usize,
    pub n: usize,
    pub class: String,
    pub empirical_max: u64,
    pub budget: f64,
    pub flag: String,
}

/// Per `(m, n)`: the largest number of removals charged to one level-`m`
/// ancestor at step `n`, overall (`class = "all"`) and per class family.
pub fn ledger_report(tree: &SurvivorTree) -> Vec<LedgerRow> {
    let flag = |v: u64, b: f64| if v as f64 <= b { "pass" } else { "warn" }.to_string();
    let mut rows = Vec::new();
    for rc in tree.trace.removal_counts.values() {
        rows.push(LedgerRow {
            m: rc.k,
            n: rc.n,
            class: "all".into(),
            empirical_max: rc.max_per_ancestor,
            budget: rc.budget_per_ancestor,
            flag: flag(rc.max_per_ancestor, rc.budget_per_ancestor),
        });
    }
    let mut fam: BTreeMap<(usize, usize, String, u128), u64> = BTreeMap::new();
    for e in &tree.ledger {
        *fam.entry((e.m_ancestor, e.n_child - 1, e.tag.family.clone(), e.ancestor_index)).or_default() += 1;
    }
    let mut fam_max: BTreeMap<(usize, usize, String), u64> = BTreeMap::new();
    for ((m, n, f, _), c) in fam {
        let e = fam_max.entry((m, n, f)).or_default();
        *e = (*e).max(c);
    }
    for ((m, n, f), c) in fam_max {
        let b = tree.schedule.bound(m, n);
        rows.push(LedgerRow { m, n, class: f, empirical_max: c, budget: b, flag: flag(c, b) });
    }
    rows.sort_by(|a, b| (a.n, a.m, a.class != "all", &a.class).cmp(&(b.n, b.m, b.class != "all", &b.class)));
    rows
}

pub fn write_ledger_csv<W: std::io::Write>(rows: &[LedgerRow], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{derive_params, derive_rational_params, ExponentPair};

    const P: Precision = Precision::DEFAULT;

    fn parabola() -> CurveSpec {
        CurveSpec::parabola(P.ratio(1, 2), P.ratio(3, 2), P).unwrap()
    }

    fn params(curve: &CurveSpec) -> ConstructionParams {
        let mut p = derive_params(&ExponentPair::half(), 4, curve.big_c0(), None, P).unwrap();
        p.fit_k(curve.small_c0());
        p
    }

    #[test]
    fn level_one_is_a_pure_split() {
        let c = parabola();
        let t = build_survivors(&c, &params(&c), 1, &P.zero(), &EnumerationConfig::default()).unwrap();
        assert_eq!(t.trace.levels[1].len(), 4);
        assert!(t.ledger.is_empty());
        assert!(verify_no_low_height(&t, 1, &EnumerationConfig::default()).unwrap().is_none());
    }

    #[test]
    fn j0_must_fit() {
        let c = parabola();
        let e = build_survivors(&c, &params(&c), 1, &P.one(), &EnumerationConfig::default());
        assert!(matches!(e, Err(Error::Constraint(_))));
    }

    #[test]
    fn affine_needs_line_mode() {
        let c = CurveSpec::affine(P.ratio(3, 2), P.zero(), P.zero(), P.one(), P).unwrap();
        let pr = derive_params(&ExponentPair::half(), 4, c.big_c0(), None, P).unwrap();
        assert!(build_survivors(&c, &pr, 1, &P.zero(), &EnumerationConfig::default()).is_err());
    }

    #[test]
    fn rational_case_level_one() {
        let c = parabola();
        let rp = derive_rational_params(4, c.small_c0(), c.big_c0(), None, P).unwrap();
        let t = build_rational_case(&c, &rp, 3, &P.ratio(1, 10)).unwrap();
        assert_eq!(t.trace.levels[1].len(), 4);
        assert!(t.rational_checks.iter().all(|c| c.passes()));
        for n in 0..=3 {
            assert!(verify_no_low_height(&t, n, &EnumerationConfig::default()).unwrap().is_none());
        }
    }

    #[test]
    fn no_removal_report_is_zero() {
        let c = parabola();
        let t = build_survivors(&c, &params(&c), 1, &P.zero(), &EnumerationConfig::default()).unwrap();
        let rows = ledger_report(&t);
        assert!(rows.iter().all(|r| r.empirical_max == 0 && r.class == "all"));
        let mut buf = Vec::new();
        write_ledger_csv(&rows, &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("m,n,class,empirical_max,budget,flag"));
    }
}
