//! Acceptance checks, one printed line per criterion.

use std::collections::BTreeSet;
use std::process::ExitCode;

use badpoints::cantor::{
    build, check_condition, dimension_lower_bound, intersect_schedules, standard_schedule, CantorRecipe, Cell, MiddleThirds,
    Removal, RemovalSchedule, Remover,
};
use badpoints::curve::CurveSpec;
use badpoints::dangerous::{arcs, enumerate_below, enumerate_class, pruning_box, star_interval, EnumerationConfig, Line};
use badpoints::params::{derive_params, derive_rational_params, ConstructionParams, ExponentPair};
use badpoints::real::{self, exact_string, parse_rational, rational_string};
use badpoints::survivors::{build_rational_case, build_survivors, verify_no_low_height};
use badpoints::verifier::{dual_badness, exponent_check_convergents, exponent_check_exhaustive, sim_badness, Number};
use badpoints::Precision;
use badpoints_suite::{Outcome, Suite};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const P: Precision = Precision::DEFAULT;

const DIM_TOL: f64 = 1e-12;
const BOUND_TOL: f64 = 1e-15;
const GOLDEN_RANGE: (f64, f64) = (0.447, 0.448);
const RANDOM_ALPHAS: usize = 100;
const SEED: u64 = 20_240_601;

fn parabola() -> CurveSpec {
    CurveSpec::parabola(P.ratio(1, 2), P.ratio(3, 2), P).unwrap()
}

fn params(curve: &CurveSpec, r: u64) -> ConstructionParams {
    let mut p = derive_params(&ExponentPair::half(), r, curve.big_c0(), None, P).unwrap();
    p.fit_k(curve.small_c0());
    p
}

fn unit(r: u64, s: RemovalSchedule) -> CantorRecipe {
    CantorRecipe::constant(P.zero(), P.one(), r, s, P).unwrap()
}

fn criterion_1() -> Outcome {
    let p = params(&parabola(), 4);
    let (w, e) = (rational_string(&p.omega), rational_string(&p.epsilon));
    Outcome::new(
        w == "1/16" && e == "1/128" && p.lambda == 5,
        format!("omega = {w}, epsilon = {e}, lambda = {} (exact)", p.lambda),
    )
}

fn criterion_2() -> Outcome {
    let d3 = dimension_lower_bound(&unit(3, RemovalSchedule::zero()), 50).unwrap().value;
    let want = 1.0 - 2f64.ln() / 3f64.ln();
    let a = Outcome::new((d3 - want).abs() <= DIM_TOL, format!("(a) R = 3: {d3:.15} vs 1 - log_3 2, tol {DIM_TOL:e}"));

    let r = 1024;
    let p = params(&parabola(), r);
    let eps = real::rational_to_f64(&p.epsilon);
    let recipe = unit(r, standard_schedule(r, eps, p.n0 as usize, 1));
    let ok = check_condition(&recipe, 100);
    let failing = ok.iter().filter(|b| !**b).count();
    let formula = 1.0 - 2f64.ln() / (r as f64).ln();
    let unit_budget = (r as f64).powf(1.0 - eps);
    let b = Outcome::new(
        failing == 0 && (formula - 0.9).abs() <= BOUND_TOL,
        format!(
            "(b) R = 2^10, eps = {}: condition holds for {}/101 levels (4R^(1-eps) = {:.1} vs R/4 = {}), 1 - log_R 2 = {formula}",
            rational_string(&p.epsilon),
            101 - failing,
            4.0 * unit_budget,
            r / 4
        ),
    );

    let out = build(&unit(3, RemovalSchedule::diagonal(1.0)), &mut MiddleThirds, 15).unwrap();
    let counts_ok = out.trace.levels.iter().enumerate().all(|(d, l)| l.len() == 1 << d);
    let c = Outcome::new(counts_ok, format!("(c) middle thirds: #J_15 = {}", out.trace.levels[15].len()));
    Outcome::all(vec![a, b, c])
}

type Key = (i64, i64, i64, String);

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Every non-exceptional star with `R^{n-1} <= H < R^n` over a doubled box and the full `C` range.
fn brute_class(curve: &CurveSpec, p: &ConstructionParams, n: i64) -> BTreeSet<Key> {
    let bx = pruning_box(p, n);
    let (lo, hi) = (real::to_f64(curve.lo()), real::to_f64(curve.hi()));
    let xmax = lo.abs().max(hi.abs());
    let fmax = (0..=1000).map(|k| curve.eval_f64(lo + (hi - lo) * k as f64 / 1000.0)[0].abs()).fold(0.0, f64::max);
    let (bottom, top) = (p.r_pow(n - 1), p.r_pow(n));
    let mut out = BTreeSet::new();
    for a in -2 * bx.a_max..=2 * bx.a_max {
        for b in 0..=2 * bx.b_max {
            if b == 0 && a <= 0 {
                continue;
            }
            let c_max = (a.abs() as f64 * xmax + b as f64 * (fmax + 0.01)).ceil() as i64 + 2;
            for c in -c_max..=c_max {
                if gcd(gcd(a, b), c) != 1 {
                    continue;
                }
                for arc in arcs(&Line::new(a, b, c).unwrap(), curve, p).unwrap() {
                    let s = star_interval(&arc, p).unwrap();
                    if !s.exceptional && s.height >= bottom && s.height < top {
                        out.insert((a, b, c, exact_string(&s.lo)));
                    }
                }
            }
        }
    }
    out
}

fn criterion_3() -> Outcome {
    let curve = parabola();
    let p = params(&curve, 4);
    let parts = (1..=3)
        .map(|n| {
            let got: BTreeSet<Key> = enumerate_class(&curve, &p, n, (curve.lo(), curve.hi()), &EnumerationConfig::default())
                .unwrap()
                .iter()
                .map(|s| (s.line.a, s.line.b, s.line.c, exact_string(&s.lo)))
                .collect();
            let want = brute_class(&curve, &p, n as i64);
            Outcome::new(got == want, format!("n = {n}: {} enumerated, {} brute force", got.len(), want.len()))
        })
        .collect();
    Outcome::all(parts)
}

fn criterion_4() -> Outcome {
    let curve = parabola();
    let t = build_survivors(&curve, &params(&curve, 4), 5, &P.zero(), &EnumerationConfig::default()).unwrap();
    let sizes: Vec<usize> = t.trace.levels.iter().map(Vec::len).collect();
    let mut violations = Vec::new();
    for n in 0..=5 {
        if let Some(w) = verify_no_low_height(&t, n, &EnumerationConfig::default()).unwrap() {
            violations.push(w.to_string());
        }
    }
    Outcome::new(
        sizes.iter().all(|&s| s > 0) && violations.is_empty(),
        format!("level sizes {sizes:?}, {} violations {violations:?}", violations.len()),
    )
}

fn criterion_5() -> Outcome {
    let curve = parabola();
    let p = params(&curve, 4);
    let t = build_survivors(&curve, &p, 5, &P.zero(), &EnumerationConfig::default()).unwrap();
    let bx = pruning_box(&p, 4);
    let (lo, hi) = t.trace.hull(0).unwrap();
    let stars = enumerate_below(&curve, &p, 4, (&lo, &hi), &EnumerationConfig::default()).unwrap();
    let mids = t.midpoints(5);
    let mut min_dual = f64::INFINITY;
    let mut zero = 0;
    let mut covered = 0;
    for x in &mids {
        let y = curve.f(x).unwrap();
        let rep = dual_badness(&Number::Real(x.clone()), &Number::Real(y), &ExponentPair::half(), bx.a_max, bx.b_max, P);
        if real::is_zero(&rep.value) {
            zero += 1;
        }
        min_dual = min_dual.min(real::to_f64(&rep.value));
        covered += stars.iter().filter(|s| s.contains(x)).count();
    }
    Outcome::new(
        zero == 0 && covered == 0 && min_dual > 0.0,
        format!(
            "{} midpoints, box |A| <= {}, |B| <= {}: min dual badness {min_dual:.6e}, {zero} zero; {} stars with H < R^4, {covered} containments",
            mids.len(),
            bx.a_max,
            bx.b_max,
            stars.len()
        ),
    )
}

fn criterion_6() -> Outcome {
    let curve = parabola();
    let parts = [4u64, 8]
        .iter()
        .map(|&r| {
            let rp = derive_rational_params(r, curve.small_c0(), curve.big_c0(), None, P).unwrap();
            let t = build_rational_case(&curve, &rp, 6, &P.ratio(1, 10)).unwrap();
            let removed = t.rational_checks.iter().map(|c| c.max_removed_per_parent).max().unwrap_or(0);
            let meeting = t.rational_checks.iter().map(|c| c.max_intervals_per_parent).max().unwrap_or(0);
            let ok = t.rational_checks.iter().all(|c| c.passes()) && t.trace.levels.iter().all(|l| !l.is_empty());
            Outcome::new(
                ok,
                format!(
                    "R = {r}: #J_6 = {}, max removed per parent {removed} <= 3, max class-n intervals per J_n {meeting} <= 1",
                    t.trace.levels[6].len()
                ),
            )
        })
        .collect();
    Outcome::all(parts)
}

fn criterion_7() -> Outcome {
    let phi = P.parse("1.6180339887498948482045868343656381177203091798058").unwrap();
    let one_zero = ExponentPair::parse("1", "0").unwrap();
    let g = sim_badness(&Number::Real(phi), &Number::Real(P.zero()), &one_zero, 100_000, P);
    let gv = real::to_f64(&g.value);
    let a = Outcome::new(
        gv >= GOLDEN_RANGE.0 && gv <= GOLDEN_RANGE.1,
        format!(
            "(a) golden ratio: min q||q phi|| over q <= 1e5 = {gv:.6} at q = {:?}, want [{}, {}]",
            g.witness_q(),
            GOLDEN_RANGE.0,
            GOLDEN_RANGE.1
        ),
    );

    let x = Number::Rational(parse_rational("1/3").unwrap());
    let y = Number::Rational(parse_rational("2/5").unwrap());
    let s = sim_badness(&x, &y, &ExponentPair::half(), 100, P);
    let d = dual_badness(&x, &y, &ExponentPair::half(), 10, 10, P);
    let dual_ok = real::is_zero(&d.value) && matches!(d.witness_pair(), Some((a, 0)) if a.abs() == 3);
    let b = Outcome::new(
        real::is_zero(&s.value) && s.witness_q() == Some(15) && dual_ok,
        format!("(b) (1/3, 2/5): simultaneous 0 at q = {:?}, dual 0 at (A, B) = {:?}", s.witness_q(), d.witness_pair()),
    );

    let mut rng = StdRng::seed_from_u64(SEED);
    let exponents = ["0", "1/2", "1"].map(|e| parse_rational(e).unwrap());
    let mut mismatches = Vec::new();
    for _ in 0..RANDOM_ALPHAS {
        let k: u64 = rng.random();
        let alpha = Number::Rational(parse_rational(&format!("{k}/18446744073709551616")).unwrap());
        for e in &exponents {
            for q_max in [10, 100, 1000] {
                let ex = exponent_check_exhaustive(&alpha, e, q_max, P);
                let cf = exponent_check_convergents(&alpha, e, q_max, P);
                if ex.value != cf.value || ex.witness_q() != cf.witness_q() {
                    mismatches.push(format!("{k}/2^64, e = {}, Q = {q_max}", rational_string(e)));
                }
            }
        }
    }
    let c = Outcome::new(
        mismatches.is_empty(),
        format!(
            "(c) {RANDOM_ALPHAS} random alpha x 3 exponents x Q in {{10, 100, 1000}}: {} mismatches {mismatches:?}",
            mismatches.len()
        ),
    );
    Outcome::all(vec![a, b, c])
}

/// Takes the first child of every parent, charged to the parent, and the
/// second child of every last-born parent, charged to the grandparent.
struct TwoRules {
    r: u128,
}

impl Remover for TwoRules {
    type Tag = &'static str;
    fn remove(&self, n: usize, parent: &Cell, _: &[Cell]) -> Vec<Removal<&'static str>> {
        let mut out = vec![Removal { child: 0, ancestor_level: n, tag: "diagonal" }];
        if n >= 1 && parent.index % self.r == self.r - 1 {
            out.push(Removal { child: 1, ancestor_level: n - 1, tag: "lagged" });
        }
        out
    }
}

fn criterion_8() -> Outcome {
    let r = 8;
    let diagonal = RemovalSchedule::diagonal(1.0);
    let lagged = RemovalSchedule::new("lagged 1", |m, n| if m + 1 == n { 1.0 } else { 0.0 });
    let both = intersect_schedules(&[diagonal, lagged]).unwrap();
    let depth = 6;
    let out = build(&unit(r, both.clone()), &mut TwoRules { r: r as u128 }, depth).unwrap();
    let law = out.trace.counting_law(&both);
    let within = out.trace.removal_counts.values().all(|c| c.max_per_ancestor as f64 <= c.budget_per_ancestor);
    let sizes: Vec<usize> = out.trace.levels.iter().map(Vec::len).collect();
    Outcome::new(
        law.iter().all(|&b| b) && within && out.trace.warnings.is_empty(),
        format!(
            "R = {r}, {}: counting law holds at {}/{depth} steps, level sizes {sizes:?}",
            both.label(),
            law.iter().filter(|&&b| b).count()
        ),
    )
}

fn main() -> ExitCode {
    let mut s = Suite::default();
    s.run(1, "parameter formulas", criterion_1);
    s.run(2, "Cantor framework", criterion_2);
    s.run(3, "enumeration completeness", criterion_3);
    s.run(4, "survivor soundness", criterion_4);
    s.run(5, "point certification", criterion_5);
    s.run(6, "rational case bookkeeping", criterion_6);
    s.run(7, "verifier oracles", criterion_7);
    s.run(8, "summed schedules", criterion_8);
    s.finish()
}
