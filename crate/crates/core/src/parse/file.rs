//! The line-oriented family file.
//!
//! ```text
//! # first kind
//! ring = Q
//! trunc = 1
//! F = x^2*(x+1) + (x+2)*t
//! F0_factors = [(x, 2), (x + 1, 1)]
//! mode = exact
//! precision = 256
//! ```
//!
//! A homogeneous file adds `degree = n` and writes `F` in x, y, z, t.

use std::fmt::Write as _;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{parse_err, parse_family_at, parse_homogeneous_at, parse_poly_at, parse_xyz_at, print};
use crate::arith::{PolyXY, PolyXYZ, TruncatedFamily, Q};
use crate::dual::HomogeneousFamily;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingTag {
    #[serde(rename = "Q")]
    Q,
    #[serde(rename = "Q[y]")]
    Qy,
}

impl RingTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            RingTag::Q => "Q",
            RingTag::Qy => "Q[y]",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Numeric => "numeric",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FamilyBody {
    Affine {
        family: TruncatedFamily,
        factors: Option<Vec<(PolyXY, u32)>>,
    },
    Homogeneous {
        family: HomogeneousFamily,
        factors: Option<Vec<(PolyXYZ, u32)>>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyFile {
    pub ring: RingTag,
    pub trunc: usize,
    pub body: FamilyBody,
    pub mode: Option<Mode>,
    pub precision: Option<u32>,
}

struct Entry<'a> {
    line: usize,
    value_col: usize,
    value: &'a str,
}

const KEYS: [&str; 7] = ["ring", "trunc", "F", "F0_factors", "mode", "precision", "degree"];

impl FamilyFile {
    pub fn parse(text: &str) -> Result<FamilyFile> {
        let mut entries: Vec<Option<Entry>> = (0..KEYS.len()).map(|_| None).collect();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            let eq = body
                .find('=')
                .ok_or_else(|| parse_err(line, 1, "expected 'key = value'"))?;
            let key = body[..eq].trim();
            let slot = KEYS.iter().position(|k| *k == key).ok_or_else(|| {
                let col = body.find(key).unwrap_or(0) + 1;
                parse_err(line, col, format!("unknown key '{key}'"))
            })?;
            if entries[slot].is_some() {
                return Err(parse_err(line, 1, format!("duplicate key '{key}'")));
            }
            let after = &body[eq + 1..];
            let lead = after.len() - after.trim_start().len();
            entries[slot] = Some(Entry {
                line,
                value_col: body[..eq + 1 + lead].chars().count() + 1,
                value: after.trim(),
            });
        }
        let get = |k: &str| entries[KEYS.iter().position(|x| *x == k).unwrap()].as_ref();

        let trunc = match get("trunc") {
            Some(e) => {
                let t: usize = e
                    .value
                    .parse()
                    .map_err(|_| parse_err(e.line, e.value_col, "trunc must be a nonnegative integer"))?;
                if t < 1 {
                    return Err(parse_err(e.line, e.value_col, "trunc must be at least 1"));
                }
                Some(t)
            }
            None => None,
        };
        let mode = match get("mode") {
            Some(e) => Some(match e.value {
                "exact" => Mode::Exact,
                "numeric" => Mode::Numeric,
                _ => return Err(parse_err(e.line, e.value_col, "mode must be 'exact' or 'numeric'")),
            }),
            None => None,
        };
        let precision = match get("precision") {
            Some(e) => {
                let p: u32 = e
                    .value
                    .parse()
                    .map_err(|_| parse_err(e.line, e.value_col, "precision must be an integer"))?;
                if p < 64 {
                    return Err(parse_err(e.line, e.value_col, "precision must be at least 64 bits"));
                }
                Some(p)
            }
            None => None,
        };
        let declared_ring = match get("ring") {
            Some(e) => Some(match e.value.replace(' ', "").as_str() {
                "Q" => RingTag::Q,
                "Q[y]" => RingTag::Qy,
                _ => return Err(parse_err(e.line, e.value_col, "ring must be Q or Q[y]")),
            }),
            None => None,
        };
        let f = get("F").ok_or_else(|| parse_err(1, 1, "missing key 'F'"))?;

        let (body, uses_y) = match get("degree") {
            None => {
                let family = parse_family_at(f.value, trunc, f.line, f.value_col)?;
                let factors = match get("F0_factors") {
                    Some(e) => {
                        let raw = split_factor_list(e)?;
                        let mut out = Vec::new();
                        for (text, col, mult) in raw {
                            out.push((parse_poly_at(text, e.line, col)?, mult));
                        }
                        validate_affine_factors(family.f0(), &out)
                            .map_err(|m| parse_err(e.line, e.value_col, m))?;
                        Some(out)
                    }
                    None => None,
                };
                let uses_y = !family.is_y_free();
                (FamilyBody::Affine { family, factors }, uses_y)
            }
            Some(d) => {
                let n: u32 = d
                    .value
                    .parse()
                    .map_err(|_| parse_err(d.line, d.value_col, "degree must be a positive integer"))?;
                let family = parse_homogeneous_at(f.value, n, trunc, f.line, f.value_col)?;
                let factors = match get("F0_factors") {
                    Some(e) => {
                        let raw = split_factor_list(e)?;
                        let mut out = Vec::new();
                        for (text, col, mult) in raw {
                            out.push((parse_xyz_at(text, e.line, col)?, mult));
                        }
                        validate_xyz_factors(&family.coeffs()[0], &out)
                            .map_err(|m| parse_err(e.line, e.value_col, m))?;
                        Some(out)
                    }
                    None => None,
                };
                (FamilyBody::Homogeneous { family, factors }, true)
            }
        };
        let ring = match declared_ring {
            Some(RingTag::Q) if uses_y => {
                return Err(parse_err(f.line, f.value_col, "variable y appears but ring = Q"))
            }
            Some(r) => r,
            None if uses_y => RingTag::Qy,
            None => RingTag::Q,
        };
        let trunc = match &body {
            FamilyBody::Affine { family, .. } => family.trunc(),
            FamilyBody::Homogeneous { family, .. } => family.trunc(),
        };
        Ok(FamilyFile {
            ring,
            trunc,
            body,
            mode,
            precision,
        })
    }

    /// The affine family, or the hypothesis error for homogeneous input.
    pub fn affine(&self) -> Result<&TruncatedFamily> {
        match &self.body {
            FamilyBody::Affine { family, .. } => Ok(family),
            FamilyBody::Homogeneous { .. } => Err(Error::hyp(
                "homogeneous family given where an affine family is expected",
            )),
        }
    }

    pub fn affine_factors(&self) -> Option<&[(PolyXY, u32)]> {
        match &self.body {
            FamilyBody::Affine { factors, .. } => factors.as_deref(),
            FamilyBody::Homogeneous { .. } => None,
        }
    }

    /// Replaces the truncation order. Raising it pads with zero terms;
    /// lowering it below the t-degree of the data is refused.
    pub fn with_trunc(&self, trunc: usize) -> Result<FamilyFile> {
        let mut out = self.clone();
        match &mut out.body {
            FamilyBody::Affine { family, .. } => {
                if family.t_degree() > trunc {
                    return Err(Error::trunc(format!(
                        "trunc = {trunc} would drop nonzero terms of order {}",
                        family.t_degree()
                    )));
                }
                *family = family.with_trunc(trunc);
            }
            FamilyBody::Homogeneous { family, .. } => {
                *family = family.with_trunc(trunc)?;
            }
        }
        out.trunc = trunc;
        Ok(out)
    }

    /// Canonical text; [`FamilyFile::parse`] reads it back to an equal value.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "ring = {}", self.ring.as_str());
        let _ = writeln!(s, "trunc = {}", self.trunc);
        match &self.body {
            FamilyBody::Affine { family, factors } => {
                let _ = writeln!(s, "F = {}", print::family_to_string(family));
                if let Some(fs) = factors {
                    let items: Vec<String> = fs
                        .iter()
                        .map(|(p, m)| format!("({}, {m})", print::poly_to_string(p)))
                        .collect();
                    let _ = writeln!(s, "F0_factors = [{}]", items.join(", "));
                }
            }
            FamilyBody::Homogeneous { family, factors } => {
                let _ = writeln!(s, "degree = {}", family.degree());
                let _ = writeln!(s, "F = {}", print::homogeneous_to_string(family.coeffs()));
                if let Some(fs) = factors {
                    let items: Vec<String> = fs
                        .iter()
                        .map(|(p, m)| format!("({}, {m})", print::polyxyz_to_string(p)))
                        .collect();
                    let _ = writeln!(s, "F0_factors = [{}]", items.join(", "));
                }
            }
        }
        if let Some(m) = self.mode {
            let _ = writeln!(s, "mode = {}", m.as_str());
        }
        if let Some(p) = self.precision {
            let _ = writeln!(s, "precision = {p}");
        }
        s
    }
}

/// Splits `[(expr, mult), ...]` into `(expr text, column, mult)`.
fn split_factor_list<'a>(e: &Entry<'a>) -> Result<Vec<(&'a str, usize, u32)>> {
    let v = e.value;
    let err = |off: usize, m: &str| parse_err(e.line, e.value_col + off, m.to_string());
    if !v.starts_with('[') || !v.ends_with(']') {
        return Err(err(0, "F0_factors must look like [(expr, mult), ...]"));
    }
    let bytes = v.as_bytes();
    let mut out = Vec::new();
    let mut i = 1;
    let end = v.len() - 1;
    loop {
        while i < end && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i >= end {
            break;
        }
        if bytes[i] != b'(' {
            return Err(err(i, "expected '(' starting a factor"));
        }
        let open = i;
        let mut depth = 0i32;
        let mut close = None;
        for (j, &b) in bytes.iter().enumerate().take(end).skip(open) {
            match b {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        close = Some(j);
                        break;
                    }
                }
                _ => {}
            }
        }
        let close = close.ok_or_else(|| err(open, "unbalanced '(' in factor list"))?;
        let inner = &v[open + 1..close];
        let comma = inner
            .rfind(',')
            .ok_or_else(|| err(open, "factor needs the form (expr, mult)"))?;
        let expr = &inner[..comma];
        let mult_txt = inner[comma + 1..].trim();
        let mult: u32 = mult_txt
            .parse()
            .ok()
            .filter(|&m| m >= 1)
            .ok_or_else(|| err(open + 1 + comma + 1, "multiplicity must be a positive integer"))?;
        let lead = expr.len() - expr.trim_start().len();
        out.push((expr.trim(), e.value_col + open + 1 + lead, mult));
        i = close + 1;
        while i < end && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i < end {
            if bytes[i] != b',' {
                return Err(err(i, "expected ',' between factors"));
            }
            i += 1;
        }
    }
    if out.is_empty() {
        return Err(err(0, "empty factor list"));
    }
    Ok(out)
}

fn validate_affine_factors(f0: &PolyXY, fs: &[(PolyXY, u32)]) -> std::result::Result<(), String> {
    let mut prod = PolyXY::one();
    for (p, m) in fs {
        if p.deg_x() == 0 {
            return Err("factors must have positive degree in x".into());
        }
        prod = prod.mul(&p.pow(*m));
    }
    unit_ratio(f0, &prod)
        .map(|_| ())
        .ok_or_else(|| "product of F0_factors differs from F_0 by more than a nonzero constant".into())
}

/// `u` with `a = u * b` for a nonzero rational `u`.
fn unit_ratio(a: &PolyXY, b: &PolyXY) -> Option<Q> {
    if b.is_zero() {
        return None;
    }
    let lb = b.terms()[0].clone();
    let u = a.coeff(lb.dx, lb.dy) / &lb.coeff;
    (!u.is_zero() && *a == b.scale(&u)).then_some(u)
}

fn validate_xyz_factors(f0: &PolyXYZ, fs: &[(PolyXYZ, u32)]) -> std::result::Result<(), String> {
    let mut prod = PolyXYZ::from_terms([([0, 0, 0], Q::from_integer(1.into()))]);
    for (p, m) in fs {
        if p.homogeneous_degree().is_none() {
            return Err("homogeneous factors required".into());
        }
        for _ in 0..*m {
            prod = prod.mul(p);
        }
    }
    let a = f0.dehomogenize();
    let b = prod.dehomogenize();
    if prod.homogeneous_degree() != f0.homogeneous_degree() || unit_ratio(&a, &b).is_none() {
        return Err("product of F0_factors differs from F_0 by more than a nonzero constant".into());
    }
    Ok(())
}
