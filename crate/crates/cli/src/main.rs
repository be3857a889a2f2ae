//! `badpoints`: batch front-end for the construction library.

mod config;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use badpoints::cantor::{
    check_condition, condition_table, dimension_lower_bound, rational_schedule, standard_schedule, CantorRecipe, RemovalSchedule,
};
use badpoints::dangerous::{enumerate_class, pruning_box, EnumerationConfig};
use badpoints::io::{self, TreeDoc};
use badpoints::params::ExponentPair;
use badpoints::real::{self, rational_to_f64};
use badpoints::survivors::{
    build_rational_case, build_survivors, ledger_report, verify_no_low_height, write_ledger_csv, SurvivorTree, TreeParams,
};
use badpoints::verifier::{dual_badness, sim_badness, Number};
use badpoints::Error;
use clap::{Parser, Subcommand};

use config::{Derived, RunArgs};

#[derive(Parser)]
#[command(name = "badpoints", version, about = "Cantor-set constructions of badly approximable points on curves")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Derive and print the construction constants.
    Params {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Build the survivor tree and write tree JSON, ledger CSV and a summary.
    Build {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Re-check a saved tree against a fresh enumeration.
    Verify {
        #[arg(long)]
        tree: PathBuf,
        /// Also report badness of this point over the box implied by the tree depth.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long)]
        coeff_cap: Option<f64>,
        #[arg(long)]
        pair_cap: Option<f64>,
    },
    /// Evaluate the removal condition and the dimension bound for a schedule.
    CantorCheck {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 100)]
        n_max: usize,
        /// `standard`, `rational`, `zero`, `constant:<v>` or `diagonal:<v>`.
        #[arg(long, default_value = "standard")]
        schedule: String,
    },
    /// Re-render artifacts from a saved tree.
    Export {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Write the stars of this class that meet `J_0`.
        #[arg(long)]
        class: Option<u32>,
        #[arg(long)]
        stars: Option<PathBuf>,
    },
}

const VERIFY_BOX_CAP: i64 = 2000;

/// A verification failure carrying its witness.
#[derive(Debug)]
struct Violation(String);

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "violation: {}", self.0)
    }
}

impl std::error::Error for Violation {}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Violation>().is_some() {
        return 5;
    }
    match e.downcast_ref::<Error>() {
        Some(
            Error::Constraint(_)
            | Error::RationalCase
            | Error::DiophantineConditionSuspect { .. }
            | Error::ConditionViolated(_)
            | Error::Domain(_)
            | Error::Parse(_),
        ) => 2,
        Some(Error::EmptyLevel { .. }) => 3,
        Some(Error::BudgetExceeded { .. }) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Params { run } => cmd_params(&run),
        Cmd::Build { run } => cmd_build(&run),
        Cmd::Verify { tree, point, coeff_cap, pair_cap } => {
            let d = EnumerationConfig::default();
            let cfg = EnumerationConfig { coeff_cap: coeff_cap.unwrap_or(d.coeff_cap), pair_cap: pair_cap.unwrap_or(d.pair_cap) };
            cmd_verify(&tree, point.as_deref(), &cfg)
        }
        Cmd::CantorCheck { run, n_max, schedule } => cmd_cantor_check(&run, n_max, &schedule),
        Cmd::Export { tree, svg, summary, class, stars } => cmd_export(&tree, svg, summary, class, stars),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn cmd_params(run: &RunArgs) -> anyhow::Result<()> {
    let cfg = run.resolve()?;
    let derived = cfg.derive()?;
    print!("{}", report::params_text(&cfg, &derived));
    println!("{}", report::params_json(&derived)?);
    Ok(())
}

fn cmd_build(run: &RunArgs) -> anyhow::Result<()> {
    let cfg = run.resolve()?;
    let tree = match cfg.derive()? {
        Derived::Curve(cp) => build_survivors(&cfg.curve, &cp, cfg.depth, &cfg.j0_offset, &cfg.enumeration)?,
        Derived::Line(lp) => build_survivors(&cfg.curve, &lp.construction, cfg.depth, &cfg.j0_offset, &cfg.enumeration)?,
        Derived::Rational(rp) => build_rational_case(&cfg.curve, &rp, cfg.depth, &cfg.j0_offset)?,
    };
    fs::create_dir_all(&cfg.out_dir).with_context(|| format!("creating {}", cfg.out_dir.display()))?;
    let doc = io::tree_doc(&tree)?;
    fs::write(cfg.out_dir.join("tree.json"), io::to_json(&doc)?)?;
    let file = fs::File::create(cfg.out_dir.join("ledger.csv"))?;
    write_ledger_csv(&ledger_report(&tree), file)?;
    let summary = report::summary(&tree);
    fs::write(cfg.out_dir.join("summary.txt"), &summary)?;
    if cfg.svg {
        fs::write(cfg.out_dir.join("levels.svg"), io::render_svg(&tree.trace))?;
    }
    print!("{summary}");
    println!("wrote {}", cfg.out_dir.display());
    Ok(())
}

fn load_tree(path: &PathBuf) -> anyhow::Result<SurvivorTree> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc: TreeDoc = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(io::tree_from_doc(&doc)?)
}

fn cmd_verify(path: &PathBuf, point: Option<&str>, cfg: &EnumerationConfig) -> anyhow::Result<()> {
    let tree = load_tree(path)?;
    for n in 1..=tree.depth() {
        if let Some(w) = verify_no_low_height(&tree, n, cfg)? {
            return Err(Violation(w.to_string()).into());
        }
        println!("level {n}: pass ({} survivors)", tree.trace.levels[n].len());
    }
    let Some(s) = point else { return Ok(()) };
    let p = tree.trace.precision;
    let x = p.parse(s)?;
    let y = tree.curve.f(&x)?;
    let (xn, yn) = (Number::Real(x), Number::Real(y));
    let depth = tree.depth() as i64;
    let reports = match &tree.params {
        TreeParams::Curve(cp) => {
            let b = pruning_box(cp, depth);
            if b.a_max > VERIFY_BOX_CAP || b.b_max > VERIFY_BOX_CAP {
                eprintln!("note: dual box ({}, {}) capped at {VERIFY_BOX_CAP}", b.a_max, b.b_max);
            }
            let q_max = (cp.r as f64).powi(depth as i32).min(1e6) as u64;
            vec![
                dual_badness(&xn, &yn, &cp.pair, b.a_max.clamp(1, VERIFY_BOX_CAP), b.b_max.clamp(1, VERIFY_BOX_CAP), p),
                sim_badness(&xn, &yn, &cp.pair, q_max.max(1), p),
            ]
        }
        TreeParams::Rational(rp) => {
            let pair = ExponentPair::parse("0", "1")?;
            let q_max = (rp.r as f64).powf(depth as f64 / 2.0).min(1e6) as u64;
            vec![sim_badness(&xn, &yn, &pair, q_max.max(1), p)]
        }
    };
    for r in &reports {
        println!("{}", serde_json::to_string(r)?);
    }
    if let Some(r) = reports.iter().find(|r| real::is_zero(&r.value)) {
        return Err(
            Violation(format!("{s} has zero {:?} badness, witness {}", r.form, serde_json::to_string(&r.witness)?)).into()
        );
    }
    Ok(())
}

fn parse_schedule(s: &str) -> anyhow::Result<Option<RemovalSchedule>> {
    let value =
        |v: &str| -> anyhow::Result<f64> { v.parse::<f64>().map_err(|_| Error::Parse(format!("schedule value {v:?}")).into()) };
    Ok(match s.split_once(':') {
        None if s == "standard" => None,
        None if s == "rational" => Some(rational_schedule()),
        None if s == "zero" => Some(RemovalSchedule::zero()),
        Some(("constant", v)) => Some(RemovalSchedule::constant(value(v)?)),
        Some(("diagonal", v)) => Some(RemovalSchedule::diagonal(value(v)?)),
        _ => return Err(Error::Parse(format!("unknown schedule {s:?}")).into()),
    })
}

fn cmd_cantor_check(run: &RunArgs, n_max: usize, schedule: &str) -> anyhow::Result<()> {
    let cfg = run.resolve()?;
    let p = cfg.precision;
    let schedule = match parse_schedule(schedule)? {
        Some(s) => s,
        None => match cfg.derive()? {
            Derived::Curve(cp) => standard_schedule(cp.r, rational_to_f64(&cp.epsilon), cp.n0 as usize, 1),
            Derived::Line(lp) => {
                let cp = &lp.construction;
                standard_schedule(cp.r, rational_to_f64(&cp.epsilon), cp.n0 as usize, 1)
            }
            Derived::Rational(_) => rational_schedule(),
        },
    };
    let recipe = CantorRecipe::constant(p.zero(), p.one(), cfg.r, schedule, p)?;
    println!("schedule {}", recipe.schedule.label());
    let ok = check_condition(&recipe, n_max);
    for (n, ((lhs, rhs), pass)) in condition_table(&recipe, n_max).into_iter().zip(&ok).enumerate() {
        println!("n = {n:>3}  lhs = {lhs:.6e}  R_n/4 = {rhs:.6e}  {}", if *pass { "pass" } else { "fail" });
    }
    let b = dimension_lower_bound(&recipe, n_max)?;
    println!("dimension lower bound {:.15} (horizon {}, R_n >= 4: {})", b.value, b.horizon, b.r_at_least_4);
    Ok(())
}

fn cmd_export(
    path: &PathBuf,
    svg: Option<PathBuf>,
    summary: Option<PathBuf>,
    class: Option<u32>,
    stars: Option<PathBuf>,
) -> anyhow::Result<()> {
    let tree = load_tree(path)?;
    if let Some(out) = svg {
        fs::write(&out, io::render_svg(&tree.trace))?;
    }
    if let Some(out) = summary {
        fs::write(&out, report::summary(&tree))?;
    }
    match (class, stars) {
        (Some(n), Some(out)) => {
            let Some(cp) = tree.construction_params() else {
                return Err(Error::Constraint("star export needs a curve-mode or line-mode tree".into()).into());
            };
            let (lo, hi) = tree.trace.bounds(0, 0);
            let found = enumerate_class(&tree.curve, cp, n, (&lo, &hi), &EnumerationConfig::default())?;
            let docs: Vec<_> = found.iter().map(|s| io::star_doc(s, cp.precision)).collect();
            fs::write(&out, io::to_json(&docs)?)?;
        }
        (None, None) => {}
        _ => return Err(Error::Constraint("--class and --stars go together".into()).into()),
    }
    Ok(())
}
