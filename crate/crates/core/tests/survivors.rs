use badpoints::curve::CurveSpec;
use badpoints::dangerous::{enumerate_below, EnumerationConfig, StarType};
use badpoints::params::{
    derive_line_params, derive_params, derive_rational_params, ConstructionParams, ExponentPair, LineModeOptions,
};
use badpoints::real::{self, parse_rational};
use badpoints::survivors::{build_rational_case, build_survivors, verify_no_low_height, SurvivorTree};
use badpoints::verifier::{sim_badness, Number};
use badpoints::{Error, Precision, Rational};
use proptest::prelude::*;

const P: Precision = Precision::DEFAULT;

fn curve_params(curve: &CurveSpec) -> ConstructionParams {
    let mut p = derive_params(&ExponentPair::half(), 4, curve.big_c0(), None, P).unwrap();
    p.fit_k(curve.small_c0());
    p
}

fn parabola() -> CurveSpec {
    CurveSpec::parabola(P.ratio(1, 2), P.ratio(3, 2), P).unwrap()
}

fn near_tangent() -> CurveSpec {
    let cs = ["0.99", "-0.99", "1"].iter().map(|s| parse_rational(s).unwrap()).collect::<Vec<Rational>>();
    CurveSpec::polynomial(cs, P.ratio(1, 2), P.ratio(3, 2), P).unwrap()
}

fn sizes(t: &SurvivorTree) -> Vec<usize> {
    t.trace.levels.iter().map(Vec::len).collect()
}

fn assert_sound(t: &SurvivorTree) {
    assert!(t.trace.check_nesting());
    assert!(t.trace.counting_law(&t.schedule).iter().all(|&b| b));
    for n in 0..=t.depth() {
        let w = verify_no_low_height(t, n, &EnumerationConfig::default()).unwrap();
        assert!(w.is_none(), "level {n}: {}", w.unwrap());
    }
}

#[test]
fn parabola_depth_five_keeps_everything() {
    let c = parabola();
    let t = build_survivors(&c, &curve_params(&c), 5, &P.zero(), &EnumerationConfig::default()).unwrap();
    assert_eq!(sizes(&t), vec![1, 4, 16, 64, 256, 1024]);
    assert!(t.ledger.is_empty());
    assert_sound(&t);
}

#[test]
fn near_tangent_removals_are_sound_and_load_bearing() {
    let c = near_tangent();
    let mut t = build_survivors(&c, &curve_params(&c), 3, &P.ratio(445, 1000), &EnumerationConfig::default()).unwrap();
    assert_eq!(sizes(&t), vec![1, 4, 11, 44]);
    assert_sound(&t);

    // putting a removed child back must be caught
    let e = t.ledger.iter().find(|e| e.n_child == 2).expect("a level-2 removal").clone();
    let level = &mut t.trace.levels[2];
    let at = level.binary_search(&e.child_index).unwrap_err();
    level.insert(at, e.child_index);
    let w = verify_no_low_height(&t, 2, &EnumerationConfig::default()).unwrap().expect("witness");
    assert_eq!((w.level, w.index), (2, e.child_index));
}

#[test]
fn empty_level_is_reported() {
    let c = near_tangent();
    let e = build_survivors(&c, &curve_params(&c), 3, &P.ratio(47, 100), &EnumerationConfig::default());
    assert!(matches!(e, Err(Error::EmptyLevel { level: 2, .. })), "{e:?}");
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, ..ProptestConfig::default() })]

    #[test]
    fn any_offset_builds_a_sound_tree_or_dies_cleanly(k in 400u32..470) {
        let c = near_tangent();
        match build_survivors(&c, &curve_params(&c), 2, &P.ratio(k as i64, 1000), &EnumerationConfig::default()) {
            Ok(t) => assert_sound(&t),
            Err(Error::EmptyLevel { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn rational_case_bookkeeping_holds() {
    let c = parabola();
    for r in [4, 8] {
        let rp = derive_rational_params(r, c.small_c0(), c.big_c0(), None, P).unwrap();
        let t = build_rational_case(&c, &rp, 6, &P.ratio(1, 10)).unwrap();
        assert!(!t.rational_checks.is_empty());
        assert!(t.rational_checks.iter().all(|ch| ch.passes()), "R = {r}: {:?}", t.rational_checks);
        assert!(!t.trace.levels[6].is_empty());
        assert_sound(&t);
        // no rational p/q with q^2 below R^5 comes near a level-6 midpoint
        let x = t.midpoints(6)[0].clone();
        let y = c.f(&x).unwrap();
        let rep = sim_badness(&Number::Real(x), &Number::Real(y), &ExponentPair::parse("0", "1").unwrap(), 30, P);
        assert!(real::to_f64(&rep.value) > 0.0);
    }
}

#[test]
fn golden_line_has_only_type_one_stars() {
    let alpha = P.parse("0.6180339887498948482045868343656381177203").unwrap();
    let lp = derive_line_params(
        &alpha,
        &ExponentPair::half(),
        4,
        &parse_rational("1/10").unwrap(),
        100_000,
        &LineModeOptions::default(),
    )
    .unwrap();
    assert_eq!(lp.tau_q, 1);
    let c = CurveSpec::affine(alpha, P.zero(), P.zero(), P.one(), P).unwrap();
    let cp = &lp.construction;
    let stars = enumerate_below(&c, cp, 3, (c.lo(), c.hi()), &EnumerationConfig::default()).unwrap();
    assert!(stars.iter().all(|s| s.star_type == StarType::One && !s.exceptional));
    let t = build_survivors(&c, cp, 3, &P.zero(), &EnumerationConfig::default()).unwrap();
    assert_eq!(sizes(&t), vec![1, 4, 16, 64]);
    assert_sound(&t);
}
