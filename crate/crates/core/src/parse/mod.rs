//! Parsing and printing of polynomials, families, series and family files.

mod expr;
pub mod file;
pub mod print;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{ExactSeries, PolyXY, PolyXYZ, PuiseuxSeriesT, Term, TruncatedFamily, Q};
use crate::dual::HomogeneousFamily;
use crate::error::{Error, Result};

pub use expr::PARSE_DEGREE_CAP;
pub use file::{FamilyBody, FamilyFile, Mode, RingTag};

pub(crate) fn parse_err(line: usize, column: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: msg.into(),
    }
}

pub fn parse_rational(text: &str) -> Result<Q> {
    let p = expr::parse_sparse(text, 1, 1, "")?;
    Ok(p.get(&[0; 4]).cloned().unwrap_or_else(Q::zero))
}

fn sparse_to_poly(m: &BTreeMap<[u32; 4], Q>) -> PolyXY {
    PolyXY::from_terms(m.iter().map(|(k, c)| Term {
        dx: k[0] as usize,
        dy: k[1] as usize,
        coeff: c.clone(),
    }))
}

/// Polynomial in x and y.
pub fn parse_poly(text: &str) -> Result<PolyXY> {
    parse_poly_at(text, 1, 1)
}

pub(crate) fn parse_poly_at(text: &str, line: usize, col: usize) -> Result<PolyXY> {
    Ok(sparse_to_poly(&expr::parse_sparse(text, line, col, "xy")?))
}

/// Family in x, y, t known modulo `t^(trunc+1)`. Terms above the truncation
/// order are an error.
pub fn parse_family(text: &str, trunc: usize) -> Result<TruncatedFamily> {
    parse_family_at(text, Some(trunc), 1, 1)
}

/// Family whose truncation order is its t-degree (at least 1).
pub fn parse_family_exact(text: &str) -> Result<TruncatedFamily> {
    parse_family_at(text, None, 1, 1)
}

pub(crate) fn parse_family_at(
    text: &str,
    trunc: Option<usize>,
    line: usize,
    col: usize,
) -> Result<TruncatedFamily> {
    let sp = expr::parse_sparse(text, line, col, "xyt")?;
    let tdeg = sp.keys().map(|k| k[3] as usize).max().unwrap_or(0);
    let trunc = match trunc {
        Some(t) if tdeg > t => {
            return Err(parse_err(
                line,
                col,
                format!("t-order overflow: term of order {tdeg} exceeds trunc = {t}"),
            ))
        }
        Some(t) => t,
        None => tdeg.max(1),
    };
    let mut by_t: Vec<Vec<Term>> = vec![Vec::new(); trunc + 1];
    for (k, c) in sp {
        by_t[k[3] as usize].push(Term {
            dx: k[0] as usize,
            dy: k[1] as usize,
            coeff: c,
        });
    }
    let coeffs: Vec<PolyXY> = by_t.into_iter().map(PolyXY::from_terms).collect();
    if coeffs[0].is_zero() {
        return Err(parse_err(line, col, "zero family (F_0 must be nonzero)"));
    }
    TruncatedFamily::new(coeffs, trunc)
}

pub(crate) fn parse_xyz_at(text: &str, line: usize, col: usize) -> Result<PolyXYZ> {
    let sp = expr::parse_sparse(text, line, col, "xyz")?;
    Ok(PolyXYZ::from_terms(
        sp.into_iter().map(|(k, c)| ([k[0], k[1], k[2]], c)),
    ))
}

/// Homogeneous family in x, y, z, t of the given degree.
pub fn parse_homogeneous(text: &str, degree: u32, trunc: usize) -> Result<HomogeneousFamily> {
    parse_homogeneous_at(text, degree, Some(trunc), 1, 1)
}

pub(crate) fn parse_homogeneous_at(
    text: &str,
    degree: u32,
    trunc: Option<usize>,
    line: usize,
    col: usize,
) -> Result<HomogeneousFamily> {
    let sp = expr::parse_sparse(text, line, col, "xyzt")?;
    let tdeg = sp.keys().map(|k| k[3] as usize).max().unwrap_or(0);
    let trunc = match trunc {
        Some(t) if tdeg > t => {
            return Err(parse_err(
                line,
                col,
                format!("t-order overflow: term of order {tdeg} exceeds trunc = {t}"),
            ))
        }
        Some(t) => t,
        None => tdeg.max(1),
    };
    let mut by_t: Vec<Vec<([u32; 3], Q)>> = vec![Vec::new(); trunc + 1];
    for (k, c) in sp {
        by_t[k[3] as usize].push(([k[0], k[1], k[2]], c));
    }
    let coeffs = by_t.into_iter().map(PolyXYZ::from_terms).collect();
    HomogeneousFamily::new(degree, coeffs, trunc).map_err(|e| match e {
        Error::Hypothesis(m) => parse_err(line, col, m),
        other => other,
    })
}

/// Exact Puiseux series, optionally followed by `+ O(t^k)`. Without the
/// order term the series is taken as certified just past its last term.
pub fn parse_series(text: &str) -> Result<ExactSeries> {
    let (sp, order) = expr::parse_series_sparse(text)?;
    let terms: Vec<(Q, Q)> = sp.into_iter().map(|(k, c)| (k.0, c)).collect();
    let known = match order {
        Some(o) => o,
        None => {
            let e = terms
                .iter()
                .fold(BigInt::one(), |acc, (k, _)| acc.lcm(k.denom()));
            terms
                .last()
                .map(|(k, _)| k + Q::new(BigInt::one(), e))
                .unwrap_or_else(Q::zero)
        }
    };
    Ok(PuiseuxSeriesT::new(terms, known))
}
