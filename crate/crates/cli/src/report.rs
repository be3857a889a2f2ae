use std::fmt::Write as _;

use badpoints::io::{self, ParamsDoc, RationalParamsDoc};
use badpoints::real::{self, rational_string, rational_to_f64};
use badpoints::survivors::{ledger_report, SurvivorTree};
use badpoints::Real;
use serde_json::json;

use crate::config::{Derived, RunConfig};

fn dec(x: &Real) -> String {
    let f = real::to_f64(x);
    if f != 0.0 || real::is_zero(x) {
        return format!("{f:.12e}");
    }
    // below the f64 range: scale by a power of ten first
    let p = badpoints::Precision::DEFAULT.guarded();
    let e = real::floor_log(&real::abs(x), 10, p);
    let m = real::to_f64(&(p.of(x) * p.pow_int(10, -e)));
    format!("{m:.12}e{e}")
}

pub fn params_text(cfg: &RunConfig, d: &Derived) -> String {
    let mut s = String::new();
    let curve = &cfg.curve;
    let _ = writeln!(s, "curve c0 = {}, C0 = {}", dec(curve.small_c0()), dec(curve.big_c0()));
    match d {
        Derived::Rational(rp) => {
            let _ = writeln!(s, "rational case, pair (0, 1), R = {}", rp.r);
            let _ = writeln!(s, "c = {}  (bound c < min{{1/(2R^2), c0/(2R^2 C0 (1+1/R))}} = {})", dec(&rp.c), dec(&rp.c_bound));
            let _ = writeln!(s, "c1 = 2cR^2/c0 = {}", dec(&rp.c1));
        }
        Derived::Curve(cp) | Derived::Line(badpoints::params::LineModeParams { construction: cp, .. }) => {
            if let Derived::Line(lp) = d {
                let _ = writeln!(
                    s,
                    "line mode: alpha = {}, tau = {} at q = {} (q <= {}), lambda' = {}",
                    dec(&lp.alpha),
                    dec(&lp.tau),
                    lp.tau_q,
                    lp.q_check,
                    lp.lambda_line
                );
            }
            let _ = writeln!(s, "pair (i, j) = {}, R = {}", cp.pair, cp.r);
            let _ = writeln!(s, "omega = {} = {}", rational_string(&cp.omega), rational_to_f64(&cp.omega));
            let _ = writeln!(s, "epsilon = {} = {}", rational_string(&cp.epsilon), rational_to_f64(&cp.epsilon));
            let _ = writeln!(s, "lambda = {}", cp.lambda);
            let _ = writeln!(
                s,
                "c = {}  (bound c < min{{(8(C0+1)R^(-1-ij/2-lambda))^2, ((C0+1)C0R^2)^(-2)}} = {})",
                dec(&cp.c),
                dec(&cp.c_bound)
            );
            let _ = writeln!(s, "c1 = {}", dec(&cp.c1));
            let _ = writeln!(s, "n0 = {}", cp.n0);
            let _ = writeln!(s, "K = {}", dec(&cp.k));
            let _ = writeln!(s, "C0 = {}", dec(&cp.big_c0));
        }
    }
    s
}

pub fn params_json(d: &Derived) -> anyhow::Result<String> {
    let v = match d {
        Derived::Curve(cp) => serde_json::to_value(ParamsDoc::new(cp))?,
        Derived::Rational(rp) => serde_json::to_value(RationalParamsDoc::new(rp))?,
        Derived::Line(lp) => {
            let p = lp.construction.precision;
            json!({
                "alpha": io::Num::new(&lp.alpha, p),
                "beta": io::Num::new(&lp.beta, p),
                "sigma": rational_string(&lp.sigma),
                "eps_dioph": rational_string(&lp.eps_dioph),
                "tau": io::Num::new(&lp.tau, p),
                "tau_q": lp.tau_q,
                "q_check": lp.q_check,
                "lambda_line": lp.lambda_line,
                "construction": ParamsDoc::new(&lp.construction),
            })
        }
    };
    Ok(serde_json::to_string_pretty(&v)?)
}

pub fn summary(tree: &SurvivorTree) -> String {
    let mut s = String::new();
    let t = &tree.trace;
    let _ = writeln!(s, "mode {:?}, R = {}, depth {}", tree.mode, tree.params.r(), tree.depth());
    for (n, v) in t.levels.iter().enumerate() {
        let _ = writeln!(s, "level {n}: {} intervals{}", v.len(), if v.is_empty() { " (empty)" } else { "" });
    }
    let _ = writeln!(s, "removals {}", tree.ledger.len());
    for c in &tree.rational_checks {
        let _ = writeln!(
            s,
            "rational check n = {}: removed/parent {} <= 3, intervals/parent {} <= 1, children/interval {} <= 3: {}",
            c.n,
            c.max_removed_per_parent,
            c.max_intervals_per_parent,
            c.max_children_per_interval,
            if c.passes() { "pass" } else { "fail" }
        );
    }
    let flagged = ledger_report(tree).iter().filter(|r| r.flag != "pass").count();
    let _ = writeln!(s, "ledger rows over budget: {flagged}");
    let _ = writeln!(s, "warnings {}", tree.warnings.len());
    for w in &tree.warnings {
        let _ = writeln!(s, "  {w}");
    }
    s
}
