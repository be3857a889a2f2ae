//! Exponent pairs and the construction constants derived from them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::{self, parse_rational, rational_string, Precision, Rational, Real};
use crate::verifier::{self, Number};

/// A pair `(i, j)` with `i + j = 1`, stored with `i <= j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PairRepr", into = "PairRepr")]
pub struct ExponentPair {
    i: Rational,
    j: Rational,
    swapped: bool,
}

#[derive(Serialize, Deserialize)]
struct PairRepr {
    i: String,
    j: String,
}

impl TryFrom<PairRepr> for ExponentPair {
    type Error = Error;
    fn try_from(r: PairRepr) -> Result<Self> {
        ExponentPair::parse(&r.i, &r.j)
    }
}

impl From<ExponentPair> for PairRepr {
    fn from(p: ExponentPair) -> Self {
        PairRepr { i: rational_string(p.x_exponent()), j: rational_string(p.y_exponent()) }
    }
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", rational_string(self.x_exponent()), rational_string(self.y_exponent()))
    }
}

impl ExponentPair {
    /// Accepts the pair in either order; `i + j` must equal one.
    pub fn new(i: Rational, j: Rational) -> Result<Self> {
        let zero = Rational::ZERO;
        let one = Rational::ONE;
        if i < zero || i > one || j < zero || j > one {
            return Err(Error::Constraint(format!(
                "exponents must lie in [0, 1], got ({}, {})",
                rational_string(&i),
                rational_string(&j)
            )));
        }
        let sum = &i + &j;
        if sum != one {
            let gap = real::rational_to_f64(&(sum - &one)).abs();
            if gap > f64::EPSILON {
                return Err(Error::Constraint(format!(
                    "i + j = 1 required, got ({}, {})",
                    rational_string(&i),
                    rational_string(&j)
                )));
            }
        }
        let (i, swapped) = if i > j { (Rational::ONE - &i, true) } else { (i, false) };
        let j = Rational::ONE - &i;
        Ok(ExponentPair { i, j, swapped })
    }

    pub fn parse(i: &str, j: &str) -> Result<Self> {
        Self::new(parse_rational(i)?, parse_rational(j)?)
    }

    pub fn half() -> Self {
        let h = Rational::ONE / Rational::from(2);
        ExponentPair { i: h.clone(), j: h, swapped: false }
    }

    /// The smaller exponent.
    pub fn i(&self) -> &Rational {
        &self.i
    }

    pub fn j(&self) -> &Rational {
        &self.j
    }

    pub fn swapped(&self) -> bool {
        self.swapped
    }

    /// Exponent attached to the first coordinate, in the caller's orientation.
    pub fn x_exponent(&self) -> &Rational {
        if self.swapped {
            &self.j
        } else {
            &self.i
        }
    }

    pub fn y_exponent(&self) -> &Rational {
        if self.swapped {
            &self.i
        } else {
            &self.j
        }
    }

    pub fn is_rational_case(&self) -> bool {
        self.i == Rational::ZERO
    }

    pub fn product(&self) -> Rational {
        &self.i * &self.j
    }

    pub fn sigma(&self) -> &Rational {
        &self.i
    }
}

/// Every constant the construction needs, fixed up front.
#[derive(Clone, Debug)]
pub struct ConstructionParams {
    pub pair: ExponentPair,
    pub r: u64,
    pub lambda: u64,
    pub omega: Rational,
    pub epsilon: Rational,
    pub c: Real,
    /// The admissibility bound `c` must stay strictly below.
    pub c_bound: Real,
    pub c1: Real,
    pub n0: u32,
    pub k: Real,
    pub big_c0: Real,
    pub precision: Precision,
    /// Affine curves: only Type 1 stars are admissible.
    pub line_mode: bool,
}

/// `floor(max{4, 1/i, (1+i)/j}) + 1`.
pub fn default_lambda(pair: &ExponentPair) -> u64 {
    let i = pair.i();
    let j = pair.j();
    let mut m = Rational::from(4);
    let inv = Rational::ONE / i;
    if inv > m {
        m = inv;
    }
    let t = (Rational::ONE + i) / j;
    if t > m {
        m = t;
    }
    u64::try_from(m.floor()).expect("lambda fits u64") + 1
}

/// `min{(8(C0+1)R^{-1-ij/2-lambda})^2, ((C0+1)C0R^2)^{-2}}`.
pub fn c_bound(pair: &ExponentPair, r: u64, lambda: u64, big_c0: &Real, prec: Precision) -> Real {
    let g = prec.guarded();
    let c0p1 = g.of(big_c0) + g.one();
    let e = -(Rational::ONE + pair.product() / Rational::from(2) + Rational::from(lambda));
    let t1 = g.int(8) * &c0p1 * real::pow(&g.int(r), &e, g);
    let t1 = &t1 * &t1;
    let t2 = &c0p1 * g.of(big_c0) * g.int(r) * g.int(r);
    let t2 = g.one() / (&t2 * &t2);
    prec.of(&real::min(&t1, &t2))
}

/// Smallest `n >= 1` with `c^{1/2} R^n C0 >= 1`.
pub fn compute_n0(c: &Real, r: u64, big_c0: &Real, prec: Precision) -> u32 {
    assert!(*c > Real::ZERO && *c < prec.one(), "compute_n0 needs 0 < c < 1");
    assert!(r >= 2, "compute_n0 needs R >= 2");
    let g = prec.guarded();
    let base = real::sqrt(c, g) * g.of(big_c0);
    let mut n = 1u32;
    while &base * g.pow_int(r, n as i64) < g.one() {
        n += 1;
    }
    n
}

/// Derives all constants with the default `lambda` and, absent an override,
/// `c` equal to half of the admissibility bound.
pub fn derive_params(
    pair: &ExponentPair,
    r: u64,
    big_c0: &Real,
    c_override: Option<&Real>,
    prec: Precision,
) -> Result<ConstructionParams> {
    if pair.is_rational_case() {
        return Err(Error::RationalCase);
    }
    derive_with_lambda(pair, r, default_lambda(pair), big_c0, c_override, prec)
}

pub fn derive_with_lambda(
    pair: &ExponentPair,
    r: u64,
    lambda: u64,
    big_c0: &Real,
    c_override: Option<&Real>,
    prec: Precision,
) -> Result<ConstructionParams> {
    if pair.is_rational_case() {
        return Err(Error::RationalCase);
    }
    if r < 2 {
        return Err(Error::Constraint(format!("R >= 2 required, got {r}")));
    }
    if *big_c0 <= Real::ZERO {
        return Err(Error::Constraint("C0 > 0 required".into()));
    }
    if Rational::from(lambda) <= Rational::from(default_lambda(pair) - 1) {
        return Err(Error::Constraint(format!("lambda = {lambda} must exceed max{{4, 1/i, (1+i)/j}}")));
    }
    let bound = c_bound(pair, r, lambda, big_c0, prec);
    let c = match c_override {
        Some(c) => {
            if *c <= Real::ZERO || *c >= bound {
                return Err(Error::Constraint(format!(
                    "c = {:e} must satisfy 0 < c < min{{(8(C0+1)R^(-1-ij/2-lambda))^2, ((C0+1)C0R^2)^(-2)}} = {:e}",
                    real::to_f64(c),
                    real::to_f64(&bound)
                )));
            }
            prec.of(c)
        }
        None => prec.of(&(&bound / prec.int(2))),
    };
    let omega = pair.product() / Rational::from(4);
    let epsilon = {
        let p = pair.product();
        &p * &p / Rational::from(8)
    };
    let g = prec.guarded();
    let c1 = real::sqrt(&c, g) * real::pow(&g.int(r), &(Rational::ONE + &omega), g);
    let n0 = compute_n0(&c, r, big_c0, prec);
    let k = real::sqrt(&g.int(8), g);
    Ok(ConstructionParams {
        pair: pair.clone(),
        r,
        lambda,
        omega,
        epsilon,
        c,
        c_bound: bound,
        c1: prec.of(&c1),
        n0,
        k: prec.of(&k),
        big_c0: prec.of(big_c0),
        precision: prec,
        line_mode: false,
    })
}

impl ConstructionParams {
    /// Raises `K` to `2/sqrt(c0)` when that exceeds the default, so the
    /// curvature-based bound on an arc still fits inside its star.
    pub fn fit_k(&mut self, small_c0: &Real) {
        let g = self.precision.guarded();
        let need = g.int(2) / real::sqrt(small_c0, g);
        if need > self.k {
            self.k = self.precision.of(&need);
        }
    }

    pub fn sqrt_c(&self) -> Real {
        real::sqrt(&self.c, self.precision)
    }

    pub fn r_pow(&self, e: i64) -> Real {
        self.precision.pow_int(self.r, e)
    }

    /// `R^{3 n0}`, the height below which Type 2 stars are exempt.
    pub fn exceptional_height(&self) -> Real {
        self.r_pow(3 * self.n0 as i64)
    }

    pub fn check_invariants(&self) -> Result<()> {
        let p = self.precision;
        let lam = Rational::from(self.lambda);
        let i = self.pair.i();
        let j = self.pair.j();
        let four = Rational::from(4);
        if !(lam > four && lam > Rational::ONE / i && lam > (Rational::ONE + i) / j) {
            return Err(Error::Invariant("lambda too small".into()));
        }
        if !(self.c > Real::ZERO && self.c < self.c_bound) {
            return Err(Error::Invariant("c not below its bound".into()));
        }
        let omega = self.pair.product() / four;
        if self.omega != omega || self.epsilon != &self.pair.product() * &self.pair.product() / Rational::from(8) {
            return Err(Error::Invariant("omega/epsilon mismatch".into()));
        }
        let s = self.sqrt_c() * &self.big_c0;
        if s.clone() * self.r_pow(self.n0 as i64) < p.one() {
            return Err(Error::Invariant("n0 too small".into()));
        }
        if self.n0 > 1 && s * self.r_pow(self.n0 as i64 - 1) >= p.one() {
            return Err(Error::Invariant("n0 not minimal".into()));
        }
        if self.k < p.one() {
            return Err(Error::Invariant("K < 1".into()));
        }
        Ok(())
    }
}

/// Parameters of the affine-curve mode.
#[derive(Clone, Debug)]
pub struct LineModeParams {
    pub alpha: Real,
    pub beta: Real,
    pub sigma: Rational,
    pub eps_dioph: Rational,
    /// Finite-range estimate of the infimum; only `q <= q_check` was searched.
    pub tau: Real,
    pub tau_q: u64,
    pub q_check: u64,
    pub lambda_line: u64,
    pub construction: ConstructionParams,
}

#[derive(Clone, Debug)]
pub struct LineModeOptions {
    pub beta: Real,
    /// Defaults to `|alpha| + 0.01`.
    pub big_c0: Option<Real>,
    pub tau_floor: f64,
    pub precision: Precision,
}

impl Default for LineModeOptions {
    fn default() -> Self {
        let p = Precision::DEFAULT;
        LineModeOptions { beta: p.zero(), big_c0: None, tau_floor: 1e-6, precision: p }
    }
}

/// Default `C0` for an affine curve of slope `alpha`.
pub fn affine_big_c0(alpha: &Real, prec: Precision) -> Real {
    real::abs(alpha) + prec.ratio(1, 100)
}

pub fn derive_line_params(
    alpha: &Real,
    pair: &ExponentPair,
    r: u64,
    eps_dioph: &Rational,
    q_check: u64,
    opts: &LineModeOptions,
) -> Result<LineModeParams> {
    let prec = opts.precision;
    if *eps_dioph <= Rational::ZERO {
        return Err(Error::Constraint("Diophantine epsilon must be positive".into()));
    }
    if q_check < 1000 {
        return Err(Error::Constraint(format!("Q_check >= 1000 required, got {q_check}")));
    }
    if pair.is_rational_case() {
        return Err(Error::RationalCase);
    }
    if real::is_zero(alpha) {
        return Err(Error::Constraint("alpha = 0 gives a horizontal line; V_L = |A| carries no information".into()));
    }
    let sigma = pair.sigma().clone();
    let exponent = Rational::ONE / &sigma - eps_dioph;
    let report = verifier::exponent_check(&Number::Real(alpha.clone()), &exponent, q_check, prec);
    let tau = report.value.clone();
    let tau_q = report.witness_q().unwrap_or(1);
    if real::to_f64(&tau) < opts.tau_floor {
        return Err(Error::DiophantineConditionSuspect { tau: real::to_f64(&tau), q: tau_q, floor: opts.tau_floor });
    }
    let big_c0 = opts.big_c0.clone().unwrap_or_else(|| affine_big_c0(alpha, prec));
    if big_c0 <= real::abs(alpha) {
        return Err(Error::Constraint("C0 must exceed |alpha| on an affine curve".into()));
    }

    // lambda > (i+1)/(eps i) - 1, and lambda above the curve-mode floor.
    let first = (Rational::ONE + &sigma) / (eps_dioph * &sigma) - Rational::ONE;
    let mut lambda = (u64::try_from(first.floor()).unwrap_or(0) + 1).max(default_lambda(pair));
    let g = prec.guarded();
    loop {
        let cp = derive_with_lambda(pair, r, lambda, &big_c0, None, prec)?;
        let base = g.int(r) * real::sqrt(&cp.c, g);
        let e = Rational::from(lambda) / Rational::from(lambda + 1);
        let lhs = real::pow(&base, &e, g);
        if lhs < tau {
            let mut construction = cp;
            construction.line_mode = true;
            return Ok(LineModeParams {
                alpha: prec.of(alpha),
                beta: prec.of(&opts.beta),
                sigma,
                eps_dioph: eps_dioph.clone(),
                tau,
                tau_q,
                q_check,
                lambda_line: lambda,
                construction,
            });
        }
        lambda += 1;
        if lambda > 10_000 {
            return Err(Error::Constraint("no lambda <= 10000 satisfies the tau clause".into()));
        }
    }
}

/// Constants for the `(0, 1)` pair, where dangerous sets come from rationals `p/q`.
#[derive(Clone, Debug)]
pub struct RationalParams {
    pub r: u64,
    pub c: Real,
    pub c_bound: Real,
    pub c1: Real,
    pub small_c0: Real,
    pub big_c0: Real,
    pub precision: Precision,
}

/// `c1 = 2cR^2/c0` with `0 < c < 1/(2R^2)`; additionally `c1 (1 + 1/R) C0 < 1`
/// so two class-`n` neighbourhoods cannot both reach one survivor.
pub fn derive_rational_params(
    r: u64,
    small_c0: &Real,
    big_c0: &Real,
    c_override: Option<&Real>,
    prec: Precision,
) -> Result<RationalParams> {
    if r < 4 {
        return Err(Error::Constraint(format!("the rational case needs R >= 4, got {r}")));
    }
    let g = prec.guarded();
    let r2 = g.int(r) * g.int(r);
    let b1 = g.one() / (g.int(2) * &r2);
    let sep = g.of(small_c0) / (g.int(2) * &r2 * g.of(big_c0) * (g.one() + g.one() / g.int(r)));
    let bound = prec.of(&real::min(&b1, &sep));
    let c = match c_override {
        Some(c) => {
            if *c <= Real::ZERO || *c >= bound {
                return Err(Error::Constraint(format!(
                    "c = {:e} must satisfy 0 < c < min{{1/(2R^2), c0/(2R^2 C0 (1+1/R))}} = {:e}",
                    real::to_f64(c),
                    real::to_f64(&bound)
                )));
            }
            prec.of(c)
        }
        None => prec.of(&(&bound / prec.int(2))),
    };
    let c1 = prec.of(&(g.int(2) * &c * &r2 / g.of(small_c0)));
    Ok(RationalParams { r, c, c_bound: bound, c1, small_c0: prec.of(small_c0), big_c0: prec.of(big_c0), precision: prec })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const P: Precision = Precision::DEFAULT;

    fn c0() -> Real {
        P.parse("3.01").unwrap()
    }

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn half_pair_constants() {
        let p = derive_params(&ExponentPair::half(), 4, &c0(), None, P).unwrap();
        assert_eq!(p.omega, q("1/16"));
        assert_eq!(p.epsilon, q("1/128"));
        assert_eq!(p.lambda, 5);
        p.check_invariants().unwrap();
    }

    #[test]
    fn half_pair_c_matches_oracle() {
        // mpmath at 300 bits
        let p = derive_params(&ExponentPair::half(), 4, &c0(), None, P).unwrap();
        let c = real::to_f64(&p.c);
        assert!((c / 1.340_628_052_121_228e-5 - 1.0).abs() < 1e-15, "{c}");
        let c1 = real::to_f64(&p.c1);
        assert!((c1 / 0.015_971_396_523_309_053 - 1.0).abs() < 1e-15, "{c1}");
        assert_eq!(p.n0, 4);
        assert!((real::to_f64(&p.k) - 8f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn lambda_boundaries() {
        let pair = ExponentPair::parse("1/5", "4/5").unwrap();
        assert_eq!(default_lambda(&pair), 6);
        let pair = ExponentPair::parse("1/3", "2/3").unwrap();
        assert_eq!(default_lambda(&pair), 5);
        let pair = ExponentPair::parse("0.1", "0.9").unwrap();
        assert_eq!(default_lambda(&pair), 11);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(ExponentPair::parse("0.5", "0.6").is_err());
        assert!(ExponentPair::parse("-0.5", "1.5").is_err());
        let zero = ExponentPair::parse("0", "1").unwrap();
        assert!(matches!(derive_params(&zero, 4, &c0(), None, P), Err(Error::RationalCase)));
        let big = P.one();
        assert!(matches!(derive_params(&ExponentPair::half(), 4, &c0(), Some(&big), P), Err(Error::Constraint(_))));
    }

    #[test]
    fn swapped_orientation() {
        let p = ExponentPair::parse("2/3", "1/3").unwrap();
        assert!(p.swapped());
        assert_eq!(p.i(), &q("1/3"));
        assert_eq!(p.x_exponent(), &q("2/3"));
        let s = serde_json::to_string(&p).unwrap();
        let back: ExponentPair = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn n0_examples() {
        assert_eq!(compute_n0(&P.ratio(1, 16), 4, &P.one(), P), 1);
        assert_eq!(compute_n0(&P.ratio(1, 4), 7, &P.int(2), P), 1);
        // 1/(3.01 sqrt(1e-5)) = 105.06, 4^3 < 105.06 <= 4^4
        assert_eq!(compute_n0(&P.parse("1e-5").unwrap(), 4, &c0(), P), 4);
    }

    #[test]
    fn line_mode_lambda_and_errors() {
        let g = P.guarded();
        let phi = P.of(&((g.one() + real::sqrt(&g.int(5), g)) / g.int(2)));
        let lp = derive_line_params(&phi, &ExponentPair::half(), 4, &q("0.1"), 10_000, &LineModeOptions::default()).unwrap();
        assert!(lp.lambda_line >= 30);
        assert_eq!(lp.tau_q, 1);
        assert!((real::to_f64(&lp.tau) - 0.3819660112501051).abs() < 1e-12);
        assert!(lp.construction.line_mode);

        let half = P.ratio(1, 2);
        let err = derive_line_params(&half, &ExponentPair::half(), 4, &q("0.1"), 1000, &LineModeOptions::default());
        assert!(matches!(err, Err(Error::DiophantineConditionSuspect { .. })));
    }

    #[test]
    fn rational_case_params() {
        let rp = derive_rational_params(4, &P.one(), &c0(), None, P).unwrap();
        let c1 = real::to_f64(&rp.c1);
        let c = real::to_f64(&rp.c);
        assert!((c1 - 2.0 * c * 16.0).abs() < 1e-18);
        assert!(c < 1.0 / 32.0);
        assert!(c1 * 1.25 * 3.01 < 1.0);
        assert!(derive_rational_params(3, &P.one(), &c0(), None, P).is_err());
    }

    fn pair_strategy() -> impl Strategy<Value = ExponentPair> {
        (1u32..=50, 51u32..=100).prop_map(|(a, d)| {
            let i = Rational::from(a) / Rational::from(2 * d);
            ExponentPair::new(i.clone(), Rational::ONE - i).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn derived_params_satisfy_invariants(pair in pair_strategy(), r in 2u64..64, c0x in 101u32..1000) {
            let big = P.ratio(c0x as i64, 100);
            let p = derive_params(&pair, r, &big, None, P).unwrap();
            p.check_invariants().unwrap();
            prop_assert!(p.epsilon < p.omega);
            prop_assert!(p.epsilon <= q("1/128"));
        }

        #[test]
        fn swapping_is_invisible(pair in pair_strategy(), r in 2u64..32) {
            let sw = ExponentPair::new(pair.j().clone(), pair.i().clone()).unwrap();
            let a = derive_params(&pair, r, &c0(), None, P).unwrap();
            let b = derive_params(&sw, r, &c0(), None, P).unwrap();
            prop_assert_eq!(a.lambda, b.lambda);
            prop_assert_eq!(a.omega, b.omega);
            prop_assert_eq!(a.c, b.c);
            prop_assert_eq!(a.n0, b.n0);
        }

        #[test]
        fn n0_monotone(e in 2u32..30, r in 2u64..20, c0x in 1u32..500) {
            let c = P.pow_int(2, -(e as i64));
            let c_small = P.pow_int(2, -(e as i64) - 3);
            let big = P.ratio(c0x as i64, 100);
            let bigger = P.ratio(c0x as i64 + 50, 100);
            let n = compute_n0(&c, r, &big, P);
            prop_assert!(compute_n0(&c_small, r, &big, P) >= n);
            prop_assert!(compute_n0(&c, r, &bigger, P) <= n);
            prop_assert!(compute_n0(&c, r + 1, &big, P) <= n);
        }
    }
}
