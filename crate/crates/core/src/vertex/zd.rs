//! Zeuthen decompositions `αF ≡ (f β_0 + β_1 t + ... + β_(n-1) t^(n-1))^N + δ t^n`
//! and the vertex assembled from them through resultants.

use serde::Serialize;

use crate::arith::{PolyXY, QPoly, TruncatedFamily, UPoly, Q};
use crate::elim::resultant;
use crate::error::{Error, Result};
use crate::parse::print;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZdDecomposition {
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub component: PolyXY,
    pub multiplicity: u32,
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub alpha: PolyXY,
    #[serde(serialize_with = "ser_polys")]
    pub betas: Vec<PolyXY>,
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub delta: PolyXY,
    pub order: usize,
}

fn ser_polys<S: serde::Serializer>(v: &[PolyXY], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(print::poly_to_string))
}

fn series_mul(a: &[PolyXY], b: &[PolyXY], len: usize) -> Vec<PolyXY> {
    let mut out = vec![PolyXY::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

fn series_pow(a: &[PolyXY], e: u32, len: usize) -> Vec<PolyXY> {
    let mut acc = vec![PolyXY::zero(); len];
    acc[0] = PolyXY::one();
    for _ in 0..e {
        acc = series_mul(&acc, a, len);
    }
    acc
}

/// The part of F_0 coprime to the component, with the multiplicity found.
fn cofactor(f0: &PolyXY, comp: &PolyXY) -> (u32, PolyXY) {
    let mut n = 0;
    let mut rest = f0.clone();
    while let Some(q) = rest.exact_div(comp) {
        rest = q;
        n += 1;
    }
    (n, rest)
}

impl ZdDecomposition {
    /// Re-expands the decomposition against the x-monic family `fbar`.
    pub fn verify(&self, fbar: &TruncatedFamily) -> Result<()> {
        let n = self.order;
        let len = n + 1;
        let mut b = self.betas.clone();
        b[0] = self.component.mul(&b[0]);
        let mut rhs = series_pow(&b, self.multiplicity, len);
        rhs[n] = rhs[n].add(&self.delta);
        let lhs: Vec<PolyXY> = (0..len).map(|i| self.alpha.mul(&fbar.coeff(i))).collect();
        if lhs != rhs {
            return Err(Error::Inconsistency("Zd identity fails on re-expansion".into()));
        }
        if self.alpha.mul(&self.delta).gcd(&self.component).deg_x() > 0 {
            return Err(Error::Inconsistency("gcd(alpha delta, f) != 1".into()));
        }
        Ok(())
    }
}

/// Lifts `β_k` one order at a time starting from `α = R^(N-1)`, `β_0 = R`
/// where `R = F_0 / f^N`. Runs on the x-monic normalization of `f`.
pub fn zd_search(f: &TruncatedFamily, component: &PolyXY) -> Result<ZdDecomposition> {
    let (fbar, _) = f.monic_normalized()?;
    let comp = component
        .monic_x()
        .filter(|c| c.deg_x() > 0)
        .ok_or_else(|| Error::hyp("component must have positive x-degree and a constant leading coefficient"))?;
    let (nmult, r) = cofactor(fbar.f0(), &comp);
    if nmult <= 1 {
        return Err(Error::hyp(format!(
            "Zd needs a multiple component; {} has multiplicity {nmult}",
            print::poly_to_string(&comp)
        )));
    }
    let alpha = r.pow(nmult - 1);
    let p = comp.mul(&r);
    let denom = p.pow(nmult - 1).scale(&Q::from_integer(nmult.into()));
    let mut betas = vec![r.clone()];
    for k in 1..=fbar.trunc() {
        let len = k + 1;
        let mut b: Vec<PolyXY> = betas.clone();
        b[0] = p.clone();
        let bn = series_pow(&b, nmult, len);
        let residual = alpha.mul(&fbar.coeff(k)).sub(&bn[k]);
        if residual.is_zero() {
            betas.push(PolyXY::zero());
            continue;
        }
        if let Some(beta) = residual.exact_div(&denom) {
            betas.push(beta);
            continue;
        }
        if residual.gcd(&comp).deg_x() > 0 {
            return Err(Error::Unsupported(format!(
                "no Zd found by this strategy: residual {} at t^{k} shares a factor with {}",
                print::poly_to_string(&residual),
                print::poly_to_string(&comp)
            )));
        }
        let d = ZdDecomposition {
            component: comp,
            multiplicity: nmult,
            alpha,
            betas,
            delta: residual,
            order: k,
        };
        d.verify(&fbar)?;
        return Ok(d);
    }
    Err(Error::trunc(format!(
        "lift exceeded truncation: no residual left through t^{}",
        fbar.trunc()
    )))
}

/// `(-1)^(N(N-1)/2) N^N`.
pub fn zd_sign_constant(n: u32) -> Q {
    let v = Q::from_integer(num_bigint::BigInt::from(n).pow(n));
    if (n as u64 * (n as u64 - 1) / 2) % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `Δ(F, x)(0, t)₀ = (-1)^(N(N-1)/2) N^N δ(0)^(N-1) R(0)^(N-1) / α(0)^(N-1)` for
/// a decomposition along the component `x`.
pub fn zd_root_value(d: &ZdDecomposition, f: &TruncatedFamily) -> Result<QPoly> {
    if d.component != PolyXY::x() {
        return Err(Error::hyp("the local value needs the component x; recenter the family first"));
    }
    let (fbar, _) = f.monic_normalized()?;
    let (_, r) = cofactor(fbar.f0(), &d.component);
    let (a0, d0, r0) = (d.alpha.coeff_x(0), d.delta.coeff_x(0), r.coeff_x(0));
    if a0.is_zero() || d0.is_zero() {
        return Err(Error::hyp("alpha(0) delta(0) = 0"));
    }
    let e = d.multiplicity - 1;
    let num = QPoly::constant(zd_sign_constant(d.multiplicity))
        .mul_poly(&d0.pow_u(e))
        .mul_poly(&r0.pow_u(e));
    num.exact_div_poly(&a0.pow_u(e))
        .ok_or_else(|| Error::Unsupported("local value is not a polynomial in y".into()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultantFactor {
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub left: PolyXY,
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub right: PolyXY,
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub value: QPoly,
    pub exponent: i64,
}

/// Terms of `ver = c ∏ res(f_ν, δ_ν^(N-1)) ∏_ν ∏_(ν'≠ν) res(f_ν, f_ν')^(n_ν') / ∏ res(f_ν, α_ν^(N-1))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZdAssembly {
    #[serde(serialize_with = "crate::report::ser_q")]
    pub c: Q,
    pub numerator: Vec<ResultantFactor>,
    pub denominator: Vec<ResultantFactor>,
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub value: QPoly,
}

fn res_xy(a: &PolyXY, b: &PolyXY) -> QPoly {
    let (ua, ub): (&UPoly<QPoly>, &UPoly<QPoly>) = (a.as_upoly(), b.as_upoly());
    resultant(ua, ub)
}

/// The constant `c`: the per-root constants of the local formula collected
/// over every root, times the sign from writing each cross resultant in one
/// orientation.
pub fn zd_calibration(comps: &[(PolyXY, u32)]) -> Q {
    let mut c = Q::from_integer(1.into());
    for (f, n) in comps {
        c *= num_traits::pow(zd_sign_constant(*n), f.deg_x());
    }
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            let e = comps[i].0.deg_x() * comps[j].0.deg_x() * (comps[i].1 * comps[j].1) as usize;
            if e % 2 == 1 {
                c = -c;
            }
        }
    }
    c
}

/// Assembles ver from one decomposition per multiple component.
pub fn vertex_from_zd(comps: &[(PolyXY, u32)], decomps: &[ZdDecomposition]) -> Result<ZdAssembly> {
    let c = zd_calibration(comps);
    let mut numerator = Vec::new();
    let mut denominator = Vec::new();
    for (i, (f, n)) in comps.iter().enumerate() {
        if *n > 1 {
            let d = decomps
                .iter()
                .find(|d| &d.component == f)
                .ok_or_else(|| Error::hyp(format!("missing decomposition for {}", print::poly_to_string(f))))?;
            let dp = d.delta.pow(n - 1);
            numerator.push(ResultantFactor { left: f.clone(), right: dp.clone(), value: res_xy(f, &dp), exponent: 1 });
            let ap = d.alpha.pow(n - 1);
            denominator.push(ResultantFactor { left: f.clone(), right: ap.clone(), value: res_xy(f, &ap), exponent: 1 });
        }
        for (j, (g, m)) in comps.iter().enumerate() {
            if i != j {
                numerator.push(ResultantFactor {
                    left: f.clone(),
                    right: g.clone(),
                    value: res_xy(f, g),
                    exponent: *m as i64,
                });
            }
        }
    }
    let mut num = QPoly::constant(c.clone());
    for r in &numerator {
        num = num.mul_poly(&r.value.pow_u(r.exponent as u32));
    }
    let mut den = QPoly::constant(Q::from_integer(1.into()));
    for r in &denominator {
        den = den.mul_poly(&r.value);
    }
    if den.is_zero() {
        return Err(Error::hyp("res(f, alpha) vanishes"));
    }
    let value = num
        .exact_div_poly(&den)
        .ok_or_else(|| Error::Unsupported("ver is not a polynomial in y on this route".into()))?;
    Ok(ZdAssembly { c, numerator, denominator, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::parse::{parse_family_exact, parse_poly};

    fn px(s: &str) -> PolyXY {
        parse_poly(s).unwrap()
    }

    #[test]
    fn spec_decompositions() {
        let f = parse_family_exact("x^2 + 2*x*t + t^2 + t^3").unwrap();
        let d = zd_search(&f, &px("x")).unwrap();
        assert_eq!((d.alpha.clone(), d.betas.clone(), d.delta.clone(), d.order), (px("1"), vec![px("1"), px("1"), px("0")], px("1"), 3));
        assert_eq!(zd_root_value(&d, &f).unwrap(), QPoly::constant(q(-4)));

        let f = parse_family_exact("x^2*(x+1) + (x+2)*t").unwrap();
        let d = zd_search(&f, &px("x")).unwrap();
        assert_eq!((d.alpha.clone(), d.betas.clone(), d.order), (px("x + 1"), vec![px("x + 1")], 1));
        assert_eq!(d.delta, px("(x + 1)*(x + 2)"));
        assert_eq!(zd_root_value(&d, &f).unwrap(), QPoly::constant(q(-8)));
    }

    #[test]
    fn strategy_failure_and_half_lift() {
        let f = parse_family_exact("x^3 + x*t").unwrap();
        assert!(matches!(zd_search(&f, &px("x")), Err(Error::Unsupported(m)) if m.contains("no Zd found by this strategy")));
        // the residual x (x+1)^2 at t^1 divides by 2 x (x+1)^2
        let f = parse_family_exact("x^2*(x+1)^2 + t*x").unwrap();
        assert!(matches!(zd_search(&f, &px("x")), Err(Error::Truncation(_))));
        let f = f.with_trunc(2);
        let d = zd_search(&f, &px("x")).unwrap();
        assert_eq!(d.betas[1], px("1/2"));
        assert_eq!((d.order, d.delta.clone()), (2, px("-1/4")));
        assert_eq!(zd_root_value(&d, &f).unwrap(), QPoly::constant(q(1)));
    }

    #[test]
    fn lift_needs_a_residual() {
        let f = parse_family_exact("(x + t)^2").unwrap();
        assert!(matches!(zd_search(&f, &px("x")), Err(Error::Truncation(_))));
        assert!(matches!(zd_search(&parse_family_exact("x*(x+1) + t").unwrap(), &px("x")), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn calibration_constants() {
        assert_eq!(zd_sign_constant(1), q(1));
        assert_eq!(zd_sign_constant(2), q(-4));
        assert_eq!(zd_sign_constant(3), q(-27));
        assert_eq!(zd_sign_constant(4), q(256));
        // x^2 (x - 1)^3: degrees 1 and 1, product of multiplicities 6 (even)
        assert_eq!(zd_calibration(&[(px("x"), 2), (px("x - 1"), 3)]), q(108));
        assert_eq!(zd_calibration(&[(px("x"), 1), (px("x - 1"), 3)]), q(27));
    }

    #[test]
    fn assembled_vertex() {
        let f = parse_family_exact("x^2 + 2*x*t + t^2 + t^3").unwrap();
        let d = zd_search(&f, &px("x")).unwrap();
        assert_eq!(vertex_from_zd(&[(px("x"), 2)], &[d]).unwrap().value, QPoly::constant(q(-4)));
        let f = parse_family_exact("x^2*(x+1) + (x+2)*t").unwrap();
        let d = zd_search(&f, &px("x")).unwrap();
        let a = vertex_from_zd(&[(px("x"), 2), (px("x + 1"), 1)], &[d]).unwrap();
        assert_eq!(a.value, QPoly::constant(q(-8)));
        assert_eq!(a.c, q(-4));
        let a = vertex_from_zd(&[(px("x^2 - 1"), 1)], &[]).unwrap();
        assert_eq!(a.value, QPoly::constant(q(1)));
    }
}
