//! The generic split-and-remove engine and its dimension bound.
//!
//! Intervals live on an exact grid: the `index`-th interval of level `n` is
//! `[lo + len*index/D_n, lo + len*(index+1)/D_n]` with `D_n = R_0 ... R_{n-1}`.
//! Nesting is integer division, so no tolerance is ever involved.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use dashu_float::round::mode::{Down, Up};
use dashu_float::round::Round;
use dashu_float::FBig;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::real::{self, Precision, Real};

type BoundFn = dyn Fn(usize, usize) -> f64 + Send + Sync;

/// Kept child indices and removals (with child index) for one parent.
type ParentOutcome<T> = (Vec<u128>, Vec<(u128, Removal<T>)>);

/// Budgets `r_{m,n}`: level-`(n+1)` children removable per level-`m` ancestor.
#[derive(Clone)]
pub struct RemovalSchedule {
    f: Arc<BoundFn>,
    label: String,
}

impl fmt::Debug for RemovalSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RemovalSchedule({})", self.label)
    }
}

impl RemovalSchedule {
    pub fn new(label: impl Into<String>, f: impl Fn(usize, usize) -> f64 + Send + Sync + 'static) -> Self {
        RemovalSchedule { f: Arc::new(f), label: label.into() }
    }

    pub fn zero() -> Self {
        Self::new("zero", |_, _| 0.0)
    }

    pub fn constant(v: f64) -> Self {
        assert!(v >= 0.0, "budgets are non-negative");
        Self::new(format!("constant {v}"), move |_, _| v)
    }

    /// Only the diagonal `m = n` carries budget.
    pub fn diagonal(v: f64) -> Self {
        assert!(v >= 0.0, "budgets are non-negative");
        Self::new(format!("diagonal {v}"), move |m, n| if m == n { v } else { 0.0 })
    }

    pub fn bound(&self, m: usize, n: usize) -> f64 {
        assert!(m <= n, "schedule queried at m = {m} > n = {n}");
        let v = (self.f)(m, n);
        assert!(v >= 0.0, "negative budget at ({m}, {n})");
        v
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// Pointwise sum of schedules.
pub fn intersect_schedules(list: &[RemovalSchedule]) -> Result<RemovalSchedule> {
    if list.is_empty() {
        return Err(Error::Constraint("intersect_schedules needs at least one schedule".into()));
    }
    let parts: Vec<RemovalSchedule> = list.to_vec();
    let label = parts.iter().map(|s| s.label.as_str()).collect::<Vec<_>>().join(" + ");
    Ok(RemovalSchedule::new(label, move |m, n| parts.iter().map(|s| s.bound(m, n)).sum()))
}

/// `4dR^{1-eps}` on the diagonal, `3dR^{1-eps}` when `n - m = n0` and
/// `n >= 3 n0`, `2dR^{1-eps}` elsewhere.
pub fn standard_schedule(r: u64, eps: f64, n0: usize, d: u32) -> RemovalSchedule {
    assert!(r >= 2 && eps > 0.0 && eps < 1.0 && n0 >= 1 && d >= 1);
    let unit = d as f64 * (r as f64).powf(1.0 - eps);
    RemovalSchedule::new(format!("standard(R={r}, eps={eps}, n0={n0}, d={d})"), move |m, n| {
        if m == n {
            4.0 * unit
        } else if n - m == n0 && n >= 3 * n0 {
            3.0 * unit
        } else {
            2.0 * unit
        }
    })
}

/// Three on the diagonal, nothing off it.
pub fn rational_schedule() -> RemovalSchedule {
    RemovalSchedule::diagonal(3.0)
}

/// The `(I, R, r)` data.
#[derive(Clone)]
pub struct CantorRecipe {
    pub lo: Real,
    pub len: Real,
    r_seq: Arc<dyn Fn(usize) -> u64 + Send + Sync>,
    pub schedule: RemovalSchedule,
    pub precision: Precision,
}

impl fmt::Debug for CantorRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CantorRecipe")
            .field("lo", &real::to_f64(&self.lo))
            .field("len", &real::to_f64(&self.len))
            .field("R_0", &self.r_at(0))
            .field("schedule", &self.schedule)
            .finish()
    }
}

impl CantorRecipe {
    pub fn new(
        lo: Real,
        len: Real,
        r_seq: impl Fn(usize) -> u64 + Send + Sync + 'static,
        schedule: RemovalSchedule,
        precision: Precision,
    ) -> Result<Self> {
        if len <= Real::ZERO {
            return Err(Error::Constraint("|I| > 0 required".into()));
        }
        Ok(CantorRecipe { lo: precision.of(&lo), len: precision.of(&len), r_seq: Arc::new(r_seq), schedule, precision })
    }

    pub fn constant(lo: Real, len: Real, r: u64, schedule: RemovalSchedule, precision: Precision) -> Result<Self> {
        if r < 2 {
            return Err(Error::Constraint(format!("R_n >= 2 required, got {r}")));
        }
        Self::new(lo, len, move |_| r, schedule, precision)
    }

    pub fn r_at(&self, n: usize) -> u64 {
        let r = (self.r_seq)(n);
        assert!(r >= 2, "R_{n} = {r} < 2");
        r
    }
}

fn condition_lhs(recipe: &CantorRecipe, n: usize) -> f64 {
    let mut total = 0.0;
    let mut prod = 1.0;
    for k in 0..=n {
        if k > 0 {
            prod *= 4.0 / recipe.r_at(n - k) as f64;
        }
        total += recipe.schedule.bound(n - k, n) * prod;
    }
    total
}

/// For each `n <= n_max`: `sum_k r_{n-k,n} prod_{i=1..k} 4/R_{n-i} <= R_n/4`.
pub fn check_condition(recipe: &CantorRecipe, n_max: usize) -> Vec<bool> {
    (0..=n_max).map(|n| condition_lhs(recipe, n) <= recipe.r_at(n) as f64 / 4.0).collect()
}

/// Left- and right-hand sides of the removal condition, for reporting.
pub fn condition_table(recipe: &CantorRecipe, n_max: usize) -> Vec<(f64, f64)> {
    (0..=n_max).map(|n| (condition_lhs(recipe, n), recipe.r_at(n) as f64 / 4.0)).collect()
}

/// Finite-horizon stand-in for `liminf (1 - log 2 / log R_n)`.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct DimensionBound {
    pub value: f64,
    pub horizon: usize,
    pub argmin: usize,
    /// The bound formally needs `R_n >= 4`; false means it is reported outside its hypotheses.
    pub r_at_least_4: bool,
}

pub fn dimension_lower_bound(recipe: &CantorRecipe, horizon: usize) -> Result<DimensionBound> {
    if let Some(n) = check_condition(recipe, horizon).iter().position(|ok| !ok) {
        return Err(Error::ConditionViolated(n));
    }
    let mut best = (f64::INFINITY, 0);
    let mut r4 = true;
    for n in 0..=horizon {
        let r = recipe.r_at(n);
        r4 &= r >= 4;
        let v = 1.0 - std::f64::consts::LN_2 / (r as f64).ln();
        if v < best.0 {
            best = (v, n);
        }
    }
    Ok(DimensionBound { value: best.0, horizon, argmin: best.1, r_at_least_4: r4 })
}

/// An interval handed to a remover, with outward-rounded endpoints.
#[derive(Clone, Debug)]
pub struct Cell {
    pub level: usize,
    pub index: u128,
    pub lo: Real,
    pub hi: Real,
}

#[derive(Clone, Debug)]
pub struct Removal<T> {
    /// Position within the `children` slice.
    pub child: usize,
    pub ancestor_level: usize,
    pub tag: T,
}

pub trait Remover: Sync {
    type Tag: Send + Clone;

    /// Called once per level, before any `remove` call for that level.
    fn begin_level(&mut self, _n: usize, _trace: &ConstructionTrace) -> Result<()> {
        Ok(())
    }

    /// Marks children of `parent` (a level-`n` survivor) for deletion. Called
    /// concurrently on distinct parents.
    fn remove(&self, n: usize, parent: &Cell, children: &[Cell]) -> Vec<Removal<Self::Tag>>;
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct RemovalCount {
    pub k: usize,
    pub n: usize,
    pub count: u64,
    pub max_per_ancestor: u64,
    /// `r_{k,n}`.
    pub budget_per_ancestor: f64,
    /// `r_{k,n} * #J_k`.
    pub budget: f64,
}

#[derive(Clone, Debug)]
pub struct RemovedChild<T> {
    /// Level of the removed interval.
    pub level: usize,
    pub index: u128,
    pub ancestor_level: usize,
    pub ancestor_index: u128,
    pub tag: T,
}

#[derive(Clone, Debug)]
pub struct ConstructionTrace {
    pub lo: Real,
    pub len: Real,
    /// `R_0 .. R_{depth-1}`.
    pub r_seq: Vec<u64>,
    /// Sorted survivor indices per level.
    pub levels: Vec<Vec<u128>>,
    pub removal_counts: BTreeMap<(usize, usize), RemovalCount>,
    pub warnings: Vec<String>,
    pub precision: Precision,
    /// First empty level, if the construction died.
    pub empty_at: Option<usize>,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn directed<R: Round>(lo: &Real, len: &Real, num: u128, den: u128, p: Precision) -> Real {
    let g = gcd(num, den).max(1);
    let (num, den) = (num / g, den / g);
    let wide = p.bits().max(136);
    let lo: FBig<R, 2> = lo.clone().with_rounding();
    let len: FBig<R, 2> = len.clone().with_rounding();
    let n = FBig::<R, 2>::from(num).with_precision(wide).value();
    let d = FBig::<R, 2>::from(den).with_precision(wide).value();
    let v = lo.with_precision(p.bits()).value() + len.with_precision(p.bits()).value() * n / d;
    v.with_rounding()
}

impl ConstructionTrace {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// `D_n = R_0 ... R_{n-1}`.
    pub fn denominator(&self, level: usize) -> u128 {
        self.try_denominator(level).expect("grid fits in u128")
    }

    pub fn try_denominator(&self, level: usize) -> Option<u128> {
        self.r_seq[..level].iter().try_fold(1u128, |acc, &r| acc.checked_mul(r as u128))
    }

    /// Outward-rounded endpoints of a grid interval.
    pub fn bounds(&self, level: usize, index: u128) -> (Real, Real) {
        let d = self.denominator(level);
        let lo = directed::<Down>(&self.lo, &self.len, index, d, self.precision);
        let hi = directed::<Up>(&self.lo, &self.len, index + 1, d, self.precision);
        (lo, hi)
    }

    pub fn cell(&self, level: usize, index: u128) -> Cell {
        let (lo, hi) = self.bounds(level, index);
        Cell { level, index, lo, hi }
    }

    /// `|J_n| = |I| / D_n` at working precision.
    pub fn length(&self, level: usize) -> Real {
        let p = self.precision;
        p.of(&self.len) / p.int(self.denominator(level))
    }

    /// Hull of a level, outward-rounded.
    pub fn hull(&self, level: usize) -> Option<(Real, Real)> {
        let v = &self.levels[level];
        let first = *v.first()?;
        let last = *v.last()?;
        Some((self.bounds(level, first).0, self.bounds(level, last).1))
    }

    /// Index of the level-`k` ancestor of a level-`n` interval.
    pub fn ancestor(&self, level: usize, index: u128, k: usize) -> u128 {
        assert!(k <= level);
        index / (self.denominator(level) / self.denominator(k))
    }

    /// `#J_{n+1} >= R_n #J_n - sum_k r_{k,n} #J_k`, per step.
    pub fn counting_law(&self, schedule: &RemovalSchedule) -> Vec<bool> {
        (0..self.depth())
            .map(|n| {
                let budget: f64 = (0..=n).map(|k| schedule.bound(k, n) * self.levels[k].len() as f64).sum();
                self.levels[n + 1].len() as f64 >= self.r_seq[n] as f64 * self.levels[n].len() as f64 - budget
            })
            .collect()
    }

    /// Every level-`(n+1)` interval sits in exactly one level-`n` survivor.
    pub fn check_nesting(&self) -> bool {
        (0..self.depth()).all(|n| {
            let r = self.r_seq[n] as u128;
            let parents = &self.levels[n];
            self.levels[n + 1].windows(2).all(|w| w[0] < w[1])
                && self.levels[n + 1].iter().all(|&c| parents.binary_search(&(c / r)).is_ok())
        })
    }
}

pub struct BuildOutput<T> {
    pub trace: ConstructionTrace,
    pub removed: Vec<RemovedChild<T>>,
}

/// Runs splitting and removal up to `depth`, stopping early at an empty level.
pub fn build_partial<Rm: Remover>(recipe: &CantorRecipe, remover: &mut Rm, depth: usize) -> Result<BuildOutput<Rm::Tag>> {
    let mut trace = ConstructionTrace {
        lo: recipe.lo.clone(),
        len: recipe.len.clone(),
        r_seq: Vec::with_capacity(depth),
        levels: vec![vec![0]],
        removal_counts: BTreeMap::new(),
        warnings: Vec::new(),
        precision: recipe.precision,
        empty_at: None,
    };
    let mut removed_all = Vec::new();
    for n in 0..depth {
        let r = recipe.r_at(n);
        trace.r_seq.push(r);
        trace.try_denominator(n + 1).ok_or_else(|| Error::Constraint("grid index overflow".into()))?;
        remover.begin_level(n, &trace)?;
        let rem: &Rm = remover;
        let t = &trace;
        let per_parent: Vec<ParentOutcome<Rm::Tag>> = trace.levels[n]
            .par_iter()
            .map(|&pi| {
                let parent = t.cell(n, pi);
                let base = pi * r as u128;
                let children: Vec<Cell> = (0..r as u128).map(|c| t.cell(n + 1, base + c)).collect();
                let mut marks: Vec<Option<Removal<Rm::Tag>>> = vec![None; children.len()];
                for rm in rem.remove(n, &parent, &children) {
                    assert!(rm.child < children.len(), "removal of a non-child");
                    assert!(rm.ancestor_level <= n, "ancestor level {} above parent level {n}", rm.ancestor_level);
                    let keep = match &marks[rm.child] {
                        Some(prev) => rm.ancestor_level > prev.ancestor_level,
                        None => true,
                    };
                    if keep {
                        let pos = rm.child;
                        marks[pos] = Some(rm);
                    }
                }
                let mut alive = Vec::with_capacity(children.len());
                let mut gone = Vec::new();
                for (pos, m) in marks.into_iter().enumerate() {
                    let idx = base + pos as u128;
                    match m {
                        None => alive.push(idx),
                        Some(rm) => gone.push((idx, rm)),
                    }
                }
                (alive, gone)
            })
            .collect();

        let mut next = Vec::new();
        let mut per_ancestor: BTreeMap<(usize, u128), u64> = BTreeMap::new();
        for (alive, gone) in per_parent {
            next.extend(alive);
            for (idx, rm) in gone {
                let anc = trace.ancestor(n + 1, idx, rm.ancestor_level);
                *per_ancestor.entry((rm.ancestor_level, anc)).or_default() += 1;
                removed_all.push(RemovedChild {
                    level: n + 1,
                    index: idx,
                    ancestor_level: rm.ancestor_level,
                    ancestor_index: anc,
                    tag: rm.tag,
                });
            }
        }
        for k in 0..=n {
            let counts: Vec<u64> = per_ancestor.range((k, 0)..=(k, u128::MAX)).map(|(_, &c)| c).collect();
            let count: u64 = counts.iter().sum();
            let max = counts.iter().copied().max().unwrap_or(0);
            let rk = recipe.schedule.bound(k, n);
            if max as f64 > rk {
                trace
                    .warnings
                    .push(format!("schedule exceeded at (k={k}, n={n}): {max} removals under one ancestor, budget r = {rk:.3}"));
            }
            trace.removal_counts.insert(
                (k, n),
                RemovalCount {
                    k,
                    n,
                    count,
                    max_per_ancestor: max,
                    budget_per_ancestor: rk,
                    budget: rk * trace.levels[k].len() as f64,
                },
            );
        }
        let empty = next.is_empty();
        trace.levels.push(next);
        if empty {
            trace.empty_at = Some(n + 1);
            break;
        }
    }
    Ok(BuildOutput { trace, removed: removed_all })
}

/// As [`build_partial`], but an empty level is an error.
pub fn build<Rm: Remover>(recipe: &CantorRecipe, remover: &mut Rm, depth: usize) -> Result<BuildOutput<Rm::Tag>> {
    let out = build_partial(recipe, remover, depth)?;
    if let Some(level) = out.trace.empty_at {
        return Err(Error::EmptyLevel { level, detail: String::new() });
    }
    Ok(out)
}

/// Removes nothing.
pub struct KeepAll;

impl Remover for KeepAll {
    type Tag = ();
    fn remove(&self, _: usize, _: &Cell, _: &[Cell]) -> Vec<Removal<()>> {
        Vec::new()
    }
}

/// Removes the middle child of every parent (odd `R` only), charged to the parent.
pub struct MiddleThirds;

impl Remover for MiddleThirds {
    type Tag = ();
    fn remove(&self, n: usize, _: &Cell, children: &[Cell]) -> Vec<Removal<()>> {
        vec![Removal { child: children.len() / 2, ancestor_level: n, tag: () }]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const P: Precision = Precision::DEFAULT;

    fn unit(r: u64, s: RemovalSchedule) -> CantorRecipe {
        CantorRecipe::constant(P.zero(), P.one(), r, s, P).unwrap()
    }

    #[test]
    fn condition_examples() {
        assert!(check_condition(&unit(4, RemovalSchedule::zero()), 20).iter().all(|&b| b));
        assert!(!check_condition(&unit(4, RemovalSchedule::diagonal(2.0)), 0)[0]);
        // 4 R^{1-eps} exceeds R/4 at R = 2^10, eps = 1/128
        let s = standard_schedule(1024, 1.0 / 128.0, 2, 1);
        assert!(!check_condition(&unit(1024, s), 5)[0]);
        let s = standard_schedule(1024, 0.5, 2, 1);
        assert!(check_condition(&unit(1024, s), 100).iter().all(|&b| b));
    }

    #[test]
    fn dimension_examples() {
        let d = dimension_lower_bound(&unit(4, RemovalSchedule::zero()), 10).unwrap();
        assert!((d.value - 0.5).abs() < 1e-15 && d.r_at_least_4);
        let d = dimension_lower_bound(&unit(3, RemovalSchedule::zero()), 10).unwrap();
        assert!((d.value - 0.369_070_246_428_542_6).abs() < 1e-12 && !d.r_at_least_4);
        let d = dimension_lower_bound(&unit(1024, RemovalSchedule::zero()), 10).unwrap();
        assert!((d.value - 0.9).abs() < 1e-15);
        assert!(matches!(dimension_lower_bound(&unit(4, RemovalSchedule::diagonal(2.0)), 3), Err(Error::ConditionViolated(0))));
    }

    #[test]
    fn standard_schedule_table() {
        let s = standard_schedule(4, 1.0 / 128.0, 2, 1);
        let u = 4f64.powf(127.0 / 128.0);
        assert_eq!(s.bound(5, 5), 4.0 * u);
        assert_eq!(s.bound(3, 5), 2.0 * u);
        assert_eq!(s.bound(4, 6), 3.0 * u);
        assert_eq!(s.bound(0, 6), 2.0 * u);
        let d2 = standard_schedule(4, 1.0 / 128.0, 2, 2);
        let sum = intersect_schedules(&[s.clone(), s.clone()]).unwrap();
        for n in 0..10 {
            for m in 0..=n {
                assert!((d2.bound(m, n) - sum.bound(m, n)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn intersect_examples() {
        let s = standard_schedule(8, 0.25, 1, 1);
        let z = intersect_schedules(&[s.clone(), RemovalSchedule::zero()]).unwrap();
        assert_eq!(z.bound(2, 3), s.bound(2, 3));
        let three = intersect_schedules(&[
            RemovalSchedule::constant(1.0),
            RemovalSchedule::constant(1.0),
            RemovalSchedule::constant(1.0),
        ])
        .unwrap();
        assert_eq!(three.bound(0, 7), 3.0);
        assert!(intersect_schedules(&[]).is_err());
    }

    #[test]
    fn pure_splitting() {
        let out = build(&unit(4, RemovalSchedule::zero()), &mut KeepAll, 5).unwrap();
        assert_eq!(out.trace.levels[5].len(), 1024);
        assert!(out.trace.check_nesting());
    }

    #[test]
    fn middle_thirds() {
        let out = build(&unit(3, RemovalSchedule::diagonal(1.0)), &mut MiddleThirds, 8).unwrap();
        for d in 0..=8 {
            assert_eq!(out.trace.levels[d].len(), 1 << d);
        }
        assert!(out.trace.warnings.is_empty());
        let (lo, hi) = out.trace.bounds(1, out.trace.levels[1][1]);
        assert!(real::to_f64(&lo) <= 2.0 / 3.0 && real::to_f64(&hi) >= 1.0);
    }

    struct Grandparent;
    impl Remover for Grandparent {
        type Tag = ();
        fn remove(&self, n: usize, parent: &Cell, _: &[Cell]) -> Vec<Removal<()>> {
            if n >= 1 && parent.index % 4 == 1 {
                vec![Removal { child: 0, ancestor_level: n - 1, tag: () }]
            } else {
                Vec::new()
            }
        }
    }

    #[test]
    fn grandparent_attribution() {
        let s = RemovalSchedule::new("gp", |m, n| if m + 1 == n { 1.0 } else { 0.0 });
        let out = build(&unit(4, s), &mut Grandparent, 5).unwrap();
        let t = &out.trace;
        for n in 1..5 {
            let rc = &t.removal_counts[&(n - 1, n)];
            assert_eq!(rc.count as usize, t.levels[n - 1].len());
            assert_eq!(rc.max_per_ancestor, 1);
        }
        assert!(t.warnings.is_empty());
    }

    #[test]
    fn empty_level_reported() {
        struct All;
        impl Remover for All {
            type Tag = ();
            fn remove(&self, n: usize, _: &Cell, c: &[Cell]) -> Vec<Removal<()>> {
                (0..c.len()).map(|child| Removal { child, ancestor_level: n, tag: () }).collect()
            }
        }
        let r = build(&unit(4, RemovalSchedule::zero()), &mut All, 3);
        assert!(matches!(r, Err(Error::EmptyLevel { level: 1, .. })));
    }

    /// Removes a pseudo-random number of children within the schedule, charged to random ancestors.
    struct Bounded {
        seed: u64,
        per_level: u64,
    }
    impl Remover for Bounded {
        type Tag = ();
        fn remove(&self, n: usize, parent: &Cell, children: &[Cell]) -> Vec<Removal<()>> {
            let h = (parent.index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ self.seed ^ n as u64;
            let k = (h % (self.per_level + 1)) as usize;
            (0..k.min(children.len())).map(|c| Removal { child: c * 2 % children.len(), ancestor_level: n, tag: () }).collect()
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn traces_nest_and_count(seed in any::<u64>(), r in 4u64..9, per in 0u64..3, depth in 1usize..5) {
            let s = RemovalSchedule::diagonal(per as f64);
            let out = build_partial(&unit(r, s.clone()), &mut Bounded { seed, per_level: per }, depth).unwrap();
            prop_assert!(out.trace.check_nesting());
            prop_assert!(out.trace.counting_law(&s).iter().all(|&b| b));
            for lvl in 0..out.trace.levels.len() {
                let len = real::to_f64(&out.trace.length(lvl));
                prop_assert!((len * (r as f64).powi(lvl as i32) - 1.0).abs() < 1e-12);
            }
        }

        #[test]
        fn sum_is_commutative_and_associative(a in 0.0f64..5.0, b in 0.0f64..5.0, c in 0.0f64..5.0, m in 0usize..5, d in 0usize..5) {
            let (x, y, z) = (RemovalSchedule::constant(a), RemovalSchedule::diagonal(b), standard_schedule(16, 0.1 + c / 10.0, 1, 1));
            let n = m + d;
            let xy = intersect_schedules(&[x.clone(), y.clone()]).unwrap();
            let yx = intersect_schedules(&[y.clone(), x.clone()]).unwrap();
            prop_assert!((xy.bound(m, n) - yx.bound(m, n)).abs() < 1e-12);
            let l = intersect_schedules(&[xy, z.clone()]).unwrap();
            let r = intersect_schedules(&[x, intersect_schedules(&[y, z]).unwrap()]).unwrap();
            prop_assert!((l.bound(m, n) - r.bound(m, n)).abs() < 1e-12);
        }
    }
}
