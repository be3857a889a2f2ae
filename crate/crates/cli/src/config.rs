use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use badpoints::curve::CurveSpec;
use badpoints::dangerous::EnumerationConfig;
use badpoints::params::{
    derive_line_params, derive_params, derive_rational_params, derive_with_lambda, ConstructionParams, ExponentPair,
    LineModeOptions, LineModeParams, RationalParams,
};
use badpoints::real::parse_rational;
use badpoints::{Error, Precision, Real};
use clap::{Args, ValueEnum};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum RunMode {
    Build,
    RationalCase,
    LineMode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CurveKindArg {
    Parabola,
    Polynomial,
    Line,
}

/// Keys accepted in a config file. Every key is optional; flags win.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub mode: Option<RunMode>,
    pub curve: Option<CurveKindArg>,
    pub lo: Option<String>,
    pub hi: Option<String>,
    pub coefficients: Option<Vec<String>>,
    pub alpha: Option<String>,
    pub beta: Option<String>,
    pub i: Option<String>,
    pub j: Option<String>,
    #[serde(rename = "R")]
    pub r: Option<u64>,
    pub lambda: Option<u64>,
    pub depth: Option<usize>,
    pub c: Option<String>,
    pub c0: Option<String>,
    #[serde(rename = "C0")]
    pub big_c0: Option<String>,
    pub j0_offset: Option<String>,
    pub precision_bits: Option<usize>,
    pub eps_dioph: Option<String>,
    pub q_check: Option<u64>,
    pub coeff_cap: Option<f64>,
    pub pair_cap: Option<f64>,
    pub out_dir: Option<PathBuf>,
    pub svg: Option<bool>,
}

#[derive(Clone, Debug, Default, Args)]
pub struct RunArgs {
    /// TOML file with the run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub mode: Option<RunMode>,
    #[arg(long, value_enum)]
    pub curve: Option<CurveKindArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub lo: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub hi: Option<String>,
    /// Polynomial coefficients, constant term first, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coefficients: Option<Vec<String>>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long)]
    pub i: Option<String>,
    #[arg(long)]
    pub j: Option<String>,
    #[arg(long = "R")]
    pub r: Option<u64>,
    #[arg(long)]
    pub lambda: Option<u64>,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long)]
    pub c0: Option<String>,
    #[arg(long = "C0")]
    pub big_c0: Option<String>,
    #[arg(long)]
    pub j0_offset: Option<String>,
    #[arg(long)]
    pub precision_bits: Option<usize>,
    #[arg(long)]
    pub eps_dioph: Option<String>,
    #[arg(long)]
    pub q_check: Option<u64>,
    #[arg(long)]
    pub coeff_cap: Option<f64>,
    #[arg(long)]
    pub pair_cap: Option<f64>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long)]
    pub svg: bool,
}

/// The merged, validated configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub mode: RunMode,
    pub curve: CurveSpec,
    pub pair: ExponentPair,
    pub r: u64,
    pub lambda: Option<u64>,
    pub depth: usize,
    pub c: Option<Real>,
    pub j0_offset: Real,
    pub precision: Precision,
    pub alpha: Option<Real>,
    pub beta: Real,
    pub eps_dioph: badpoints::Rational,
    pub q_check: u64,
    pub enumeration: EnumerationConfig,
    pub out_dir: PathBuf,
    pub svg: bool,
}

/// Derived constants for the selected mode.
pub enum Derived {
    Curve(ConstructionParams),
    Line(LineModeParams),
    Rational(RationalParams),
}

fn load(path: &Path) -> anyhow::Result<FileConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    toml::from_str(&text).map_err(|e| Error::Constraint(format!("config {}: {e}", path.display())).into())
}

impl RunArgs {
    pub fn resolve(&self) -> anyhow::Result<RunConfig> {
        let f = match &self.config {
            Some(p) => load(p)?,
            None => FileConfig::default(),
        };
        macro_rules! pick {
            ($field:ident) => {
                self.$field.clone().or(f.$field.clone())
            };
        }
        let bits = pick!(precision_bits).unwrap_or(Precision::DEFAULT.bits());
        let p = Precision::new(bits)?;
        let num = |s: Option<String>, default: &str| p.parse(s.as_deref().unwrap_or(default));

        let i = pick!(i).unwrap_or_else(|| "1/2".into());
        let j = pick!(j).unwrap_or_else(|| "1/2".into());
        let pair = ExponentPair::parse(&i, &j)?;

        let kind = pick!(curve);
        let mode = match pick!(mode) {
            Some(m) => m,
            None if pair.is_rational_case() => RunMode::RationalCase,
            None if kind == Some(CurveKindArg::Line) => RunMode::LineMode,
            None => RunMode::Build,
        };
        let kind = kind.unwrap_or(if mode == RunMode::LineMode { CurveKindArg::Line } else { CurveKindArg::Parabola });
        if (mode == RunMode::LineMode) != (kind == CurveKindArg::Line) {
            return Err(Error::Constraint("line-mode runs need curve = line, and only they accept it".into()).into());
        }
        if mode == RunMode::RationalCase && !pair.is_rational_case() {
            return Err(Error::Constraint("rational-case mode needs (i, j) = (0, 1)".into()).into());
        }

        let lo = num(pick!(lo), "0.5")?;
        let hi = num(pick!(hi), "1.5")?;
        let alpha = pick!(alpha).map(|s| p.parse(&s)).transpose()?;
        let beta = num(pick!(beta), "0")?;
        let curve = match kind {
            CurveKindArg::Parabola => CurveSpec::parabola(lo, hi, p)?,
            CurveKindArg::Polynomial => {
                let Some(cs) = pick!(coefficients) else {
                    bail!(Error::Constraint("a polynomial curve needs coefficients".into()));
                };
                let cs = cs.iter().map(|s| parse_rational(s)).collect::<badpoints::Result<Vec<_>>>()?;
                CurveSpec::polynomial(cs, lo, hi, p)?
            }
            CurveKindArg::Line => {
                let Some(a) = alpha.clone() else {
                    bail!(Error::Constraint("a line needs alpha".into()));
                };
                CurveSpec::affine(a, beta.clone(), lo, hi, p)?
            }
        };
        let c0 = pick!(c0).map(|s| p.parse(&s)).transpose()?;
        let big_c0 = pick!(big_c0).map(|s| p.parse(&s)).transpose()?;
        let curve = if c0.is_some() || big_c0.is_some() { curve.with_bounds(c0, big_c0)? } else { curve };

        let defaults = EnumerationConfig::default();
        Ok(RunConfig {
            mode,
            curve,
            pair,
            r: pick!(r).unwrap_or(4),
            lambda: pick!(lambda),
            depth: pick!(depth).unwrap_or(5),
            c: pick!(c).map(|s| p.parse(&s)).transpose()?,
            j0_offset: num(pick!(j0_offset), "0")?,
            precision: p,
            alpha,
            beta,
            eps_dioph: parse_rational(pick!(eps_dioph).as_deref().unwrap_or("1/10"))?,
            q_check: pick!(q_check).unwrap_or(100_000),
            enumeration: EnumerationConfig {
                coeff_cap: pick!(coeff_cap).unwrap_or(defaults.coeff_cap),
                pair_cap: pick!(pair_cap).unwrap_or(defaults.pair_cap),
            },
            out_dir: pick!(out_dir).unwrap_or_else(|| PathBuf::from("out")),
            svg: self.svg || f.svg.unwrap_or(false),
        })
    }
}

impl RunConfig {
    pub fn derive(&self) -> anyhow::Result<Derived> {
        let p = self.precision;
        let c0 = self.curve.small_c0();
        let big_c0 = self.curve.big_c0();
        Ok(match self.mode {
            RunMode::RationalCase => Derived::Rational(derive_rational_params(self.r, c0, big_c0, self.c.as_ref(), p)?),
            RunMode::LineMode => {
                let alpha = self.alpha.clone().expect("line mode has alpha");
                let opts = LineModeOptions {
                    beta: self.beta.clone(),
                    big_c0: Some(big_c0.clone()),
                    precision: p,
                    ..LineModeOptions::default()
                };
                Derived::Line(derive_line_params(&alpha, &self.pair, self.r, &self.eps_dioph, self.q_check, &opts)?)
            }
            RunMode::Build => {
                let mut cp = match self.lambda {
                    Some(l) => derive_with_lambda(&self.pair, self.r, l, big_c0, self.c.as_ref(), p)?,
                    None => derive_params(&self.pair, self.r, big_c0, self.c.as_ref(), p)?,
                };
                cp.fit_k(c0);
                Derived::Curve(cp)
            }
        })
    }
}
