use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::ConstructionParams;
use crate::real::{self, Real};

use super::line::dual_power;
use super::star::{StarInterval, StarType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SubClass {
    /// `l >= 1`.
    Generic,
    C1,
    C2,
    C3 {
        u: u32,
        v: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    Type1 { l: u32, m: u32, sub: SubClass },
    Type2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClassLabel {
    pub n: u32,
    pub k: u32,
    pub variant: Variant,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variant {
            Variant::Type2 => write!(f, "C*(n={},k={})", self.n, self.k),
            Variant::Type1 { l, m, sub } => {
                write!(f, "C(n={},k={},l={},m={}", self.n, self.k, l, m)?;
                match sub {
                    SubClass::Generic => write!(f, ")"),
                    SubClass::C1 => write!(f, ",C1)"),
                    SubClass::C2 => write!(f, ",C2)"),
                    SubClass::C3 { u, v } => write!(f, ",C3,u={u},v={v})"),
                }
            }
        }
    }
}

impl ClassLabel {
    /// Coarse family used by the ledger: `C(l)`, `C1`, `C2`, `C3(u)`, `C*`.
    pub fn family(&self) -> String {
        match self.variant {
            Variant::Type2 => "C*".into(),
            Variant::Type1 { l, sub, .. } => match sub {
                SubClass::Generic => format!("C(l={l})"),
                SubClass::C1 => "C1".into(),
                SubClass::C2 => "C2".into(),
                SubClass::C3 { u, .. } => format!("C3(u={u})"),
            },
        }
    }

    /// Level of the ancestor charged with a removal, and whether it had to
    /// be clamped at zero.
    pub fn ancestor_level(&self, n0: u32) -> (usize, bool) {
        let back = match self.variant {
            Variant::Type2 => n0,
            Variant::Type1 { l, sub, .. } => match sub {
                SubClass::Generic => l,
                SubClass::C1 | SubClass::C2 => 0,
                SubClass::C3 { u, .. } => u,
            },
        };
        if back > self.n {
            (0, true)
        } else {
            ((self.n - back) as usize, false)
        }
    }
}

fn fail(star: &StarInterval, reason: impl Into<String>) -> Error {
    Error::Classification { line: star.line.to_string(), reason: reason.into() }
}

/// Assigns the unique class of a non-exceptional star from the exact
/// defining inequalities.
pub fn classify(star: &StarInterval, params: &ConstructionParams) -> Result<ClassLabel> {
    if star.exceptional {
        return Err(fail(star, "exceptional stars carry no class"));
    }
    let p = params.precision;
    let r = params.r;
    let h = &star.height;
    let n = real::floor_log(h, r, p) + 1;
    if n < 1 {
        return Err(fail(star, format!("height {:e} below one", real::to_f64(h))));
    }
    let base = params.r_pow(n - 1);
    let mut k = 0u32;
    while p.pow_int(2, k as i64 + 1) * &base <= *h {
        k += 1;
    }
    if (p.pow_int(2, k as i64) as Real) >= p.int(r) {
        return Err(fail(star, format!("k = {k} not below log2 R")));
    }
    let variant = match star.star_type {
        StarType::Two => Variant::Type2,
        StarType::One => type1_variant(star, params)?,
    };
    Ok(ClassLabel { n: n as u32, k, variant })
}

fn type1_variant(star: &StarInterval, params: &ConstructionParams) -> Result<Variant> {
    let p = params.precision;
    let v = &star.arc.v;
    let line = star.line;
    let top = (p.of(&params.big_c0) + p.one()) * p.int(line.max_abs());
    let lam = params.lambda as i64;
    if *v > top {
        return Err(fail(star, "V exceeds (C0+1)max{|A|,|B|}"));
    }
    let mut l = 0u32;
    while *v <= &top * params.r_pow(-lam * (l as i64 + 1)) {
        l += 1;
        if l > star.l0 {
            return Err(fail(star, format!("l = {l} exceeds l0 = {}", star.l0)));
        }
    }
    let band = &top * params.r_pow(-lam * l as i64);
    let mut m = 0u32;
    while *v <= &band * p.pow_int(2, -(m as i64 + 1)) {
        m += 1;
    }
    let m_cap = lam as f64 * (params.r as f64).log2();
    if m as f64 > m_cap + 1e-9 {
        return Err(fail(star, format!("m = {m} above lambda log2 R")));
    }
    let sub = if l >= 1 { SubClass::Generic } else { subclass(star, params)? };
    Ok(Variant::Type1 { l, m, sub })
}

fn subclass(star: &StarInterval, params: &ConstructionParams) -> Result<SubClass> {
    let p = params.precision;
    let line = star.line;
    let a = p.int(line.a.abs());
    let b = p.int(line.b.abs());
    if a >= &real::abs(&star.arc.df_x0) * &b / p.int(2) {
        return Ok(SubClass::C1);
    }
    let pa = dual_power(line.a, params.pair.x_exponent(), p);
    let pb = dual_power(line.b, params.pair.y_exponent(), p);
    if pa <= pb {
        return Ok(SubClass::C2);
    }
    let rho = &pa / &pb;
    let step = params.r_pow(params.lambda as i64);
    let mut u = 0u32;
    let mut scale = p.one();
    while &scale * &step < rho {
        scale = &scale * &step;
        u += 1;
    }
    let mut v = 0u32;
    while p.pow_int(2, v as i64 + 1) * &scale < rho {
        v += 1;
    }
    let v_cap = params.lambda as f64 * (params.r as f64).log2();
    if v as f64 > v_cap + 1e-9 {
        return Err(fail(star, format!("v = {v} above lambda log2 R")));
    }
    Ok(SubClass::C3 { u, v })
}

/// Re-checks every defining inequality of `label` against the star's data.
pub fn verify_label(label: &ClassLabel, star: &StarInterval, params: &ConstructionParams) -> bool {
    let p = params.precision;
    let h = &star.height;
    let rn1 = params.r_pow(label.n as i64 - 1);
    let two_k = p.pow_int(2, label.k as i64);
    if !(rn1 <= *h && *h < params.r_pow(label.n as i64)) {
        return false;
    }
    if !(&two_k * &rn1 <= *h && *h < p.int(2) * &two_k * &rn1) {
        return false;
    }
    match (label.variant, star.star_type) {
        (Variant::Type2, StarType::Two) => true,
        (Variant::Type1 { l, m, sub }, StarType::One) => {
            let line = star.line;
            let v = &star.arc.v;
            let lam = params.lambda as i64;
            let top = (p.of(&params.big_c0) + p.one()) * p.int(line.max_abs());
            let band_hi = &top * params.r_pow(-lam * l as i64);
            let band_lo = &top * params.r_pow(-lam * (l as i64 + 1));
            if !(band_lo < *v && *v <= band_hi) || l > star.l0 {
                return false;
            }
            let m_hi = &band_hi * p.pow_int(2, -(m as i64));
            let m_lo = &band_hi * p.pow_int(2, -(m as i64 + 1));
            if !(m_lo < *v && *v <= m_hi) {
                return false;
            }
            let a = p.int(line.a.abs());
            let b = p.int(line.b.abs());
            let half_fb = &real::abs(&star.arc.df_x0) * &b / p.int(2);
            let pa = dual_power(line.a, params.pair.x_exponent(), p);
            let pb = dual_power(line.b, params.pair.y_exponent(), p);
            match sub {
                SubClass::Generic => l >= 1,
                SubClass::C1 => l == 0 && a >= half_fb,
                SubClass::C2 => l == 0 && a < half_fb && pa <= pb,
                SubClass::C3 { u, v } => {
                    let s = params.r_pow(lam * u as i64) * &pb;
                    l == 0 && a < half_fb && pa > pb && p.pow_int(2, v as i64) * &s < pa && pa <= p.pow_int(2, v as i64 + 1) * &s
                }
            }
        }
        _ => false,
    }
}
