use num_traits::{One, Signed};
use serde::Serialize;

use crate::arith::{QPoly, TruncatedFamily, Q};
use crate::elim::discriminant_mod_tpow;
use crate::error::{Error, Result};
use crate::parse::print;

/// `Δ(F) = t^alpha Δ'` with `Δ'(0) = Δ'₀ ≠ 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscriminantLimit {
    pub alpha: usize,
    /// t-coefficients of Δ', known below t^(T + 1 - alpha).
    #[serde(serialize_with = "ser_series")]
    pub delta_prime: Vec<QPoly>,
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub delta_prime_0: QPoly,
    /// alpha and Δ'₀ came out the same when recomputed at truncation T + 1.
    pub stable: bool,
    pub trunc: usize,
}

fn ser_series<S: serde::Serializer>(v: &[QPoly], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&series_text(v))
}

/// `c_0 + c_1 t + ...` with polynomial coefficients in y, plus the order term.
pub fn series_text(v: &[QPoly]) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let tp = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        let (neg, body) = if c.is_constant() {
            let a = c.coeff(0);
            let mag = print::rational(&a.abs());
            let body = match (tp.is_empty(), a.abs().is_one()) {
                (true, _) => mag,
                (false, true) => tp,
                (false, false) => format!("{mag}*{tp}"),
            };
            (a.is_negative(), body)
        } else if tp.is_empty() {
            (false, print::ypoly_to_string(c))
        } else {
            (false, format!("({})*{tp}", print::ypoly_to_string(c)))
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    format!("{out} + O(t^{})", v.len())
}

impl DiscriminantLimit {
    pub fn delta_prime_text(&self) -> String {
        series_text(&self.delta_prime)
    }
}

/// Newton interpolation through `(xs[k], vs[k])`.
fn interpolate(xs: &[Q], vs: &[Q]) -> QPoly {
    let n = xs.len();
    let mut dd = vs.to_vec();
    for level in 1..n {
        for k in (level..n).rev() {
            dd[k] = (&dd[k] - &dd[k - 1]) / (&xs[k] - &xs[k - level]);
        }
    }
    let mut acc = QPoly::constant(dd[n - 1].clone());
    for k in (0..n - 1).rev() {
        let lin = QPoly::new(vec![-xs[k].clone(), Q::one()]);
        acc = &(&acc * &lin) + &QPoly::constant(dd[k].clone());
    }
    acc
}

/// Δ(F) mod t^(T+1) with coefficients in Q[y].
pub fn discriminant_mod_t(f: &TruncatedFamily) -> Result<Vec<QPoly>> {
    let n = f.x_degree();
    if n == 0 {
        return Err(Error::hyp("discriminant needs deg_x F_0 >= 1"));
    }
    if !f.f0().lc_x().is_constant() {
        return Err(Error::hyp(
            "x-leading coefficient of F_0 must be a nonzero constant",
        ));
    }
    let len = f.trunc() + 1;
    if f.is_y_free() {
        let d = discriminant_mod_tpow(&f.to_x_over_t(None), len);
        return Ok(d.into_iter().map(QPoly::constant).collect());
    }
    // every t-coefficient of Δ is a polynomial in y of degree at most (2n-2) deg_y
    let npts = (2 * n - 2) * f.deg_y() + 1;
    let xs: Vec<Q> = (0..npts as i64).map(|k| Q::from_integer(k.into())).collect();
    let samples: Vec<Vec<Q>> = xs
        .iter()
        .map(|y0| discriminant_mod_tpow(&f.to_x_over_t(Some(y0)), len))
        .collect();
    Ok((0..len)
        .map(|i| {
            let vs: Vec<Q> = samples.iter().map(|s| s[i].clone()).collect();
            interpolate(&xs, &vs)
        })
        .collect())
}

fn split_alpha(coeffs: &[QPoly], trunc: usize) -> Result<(usize, Vec<QPoly>)> {
    let alpha = coeffs.iter().position(|c| !c.is_zero()).ok_or_else(|| {
        Error::trunc(format!(
            "discriminant vanishes to truncation order {trunc}: raise the truncation or check that the generic fiber is reduced"
        ))
    })?;
    Ok((alpha, coeffs[alpha..].to_vec()))
}

/// Brute-force oracle: α, Δ' and Δ'₀ from the exact discriminant.
///
/// The t^k coefficient of Δ(F) depends only on F_0, ..., F_k, so every
/// coefficient up to t^T is certified and α ≤ T is accepted.
pub fn discriminant_series(f: &TruncatedFamily) -> Result<DiscriminantLimit> {
    // Δ mod t^(T+2) of the zero-padded family; its first T + 1 coefficients
    // are Δ mod t^(T+1) of F itself
    let again = discriminant_mod_t(&f.with_trunc(f.trunc() + 1))?;
    let coeffs = &again[..=f.trunc()];
    let (alpha, delta_prime) = split_alpha(coeffs, f.trunc())?;
    let (alpha2, dp2) = split_alpha(&again, f.trunc() + 1)?;
    let stable = alpha2 == alpha && dp2[0] == delta_prime[0];
    Ok(DiscriminantLimit {
        alpha,
        delta_prime_0: delta_prime[0].clone(),
        delta_prime,
        stable,
        trunc: f.trunc(),
    })
}

/// Oracle value at a y-free family, as a rational.
pub fn delta_prime_0_q(f: &TruncatedFamily) -> Result<Q> {
    let d = discriminant_series(f)?;
    d.delta_prime_0
        .is_constant()
        .then(|| d.delta_prime_0.coeff(0))
        .ok_or_else(|| Error::hyp("Δ'₀ depends on y"))
}
