//! The vertex ver(F): closed forms, Zeuthen decompositions, and the check
//! `Δ'₀ = λ^(2n'-2) ∏ Δ(f_ν)^(n_ν) · ver` against the brute-force oracle.
//!
//! ver is always that of the x-monic normalization `F / λ`, `λ = lc_x(F_0)`.

mod kind;
mod zd;

use num_traits::One;
use serde::Serialize;

pub use kind::{classify_kind, kind_vertex_value, parts_text, HypothesisFlag, Kind, KindParts, KindPattern, ThirdKindData};
pub use zd::{
    vertex_from_zd, zd_calibration, zd_root_value, zd_search, zd_sign_constant, ResultantFactor, ZdAssembly,
    ZdDecomposition,
};

use crate::arith::{PolyXY, QPoly, TruncatedFamily, Q};
use crate::disc::{discriminant_series, special_fiber_components, verify_product_formula, GfdValue, Scalar};
use crate::elim::discriminant;
use crate::error::{Error, Result};
use crate::newton::Backend;
use crate::parse::print;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexMethod {
    ClosedFormKind,
    ZdResultants,
    BranchNumeric,
    BranchExact,
}

impl VertexMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            VertexMethod::ClosedFormKind => "closed-form-kind",
            VertexMethod::ZdResultants => "zd-resultants",
            VertexMethod::BranchNumeric => "branch-numeric",
            VertexMethod::BranchExact => "branch-exact",
        }
    }
}

/// Which routes `compute_vertex` may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexRoute {
    Auto,
    Kind,
    Zd,
    Branch,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentDiscriminant {
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub component: PolyXY,
    pub multiplicity: u32,
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub discriminant: QPoly,
}

/// Both sides of `Δ'₀ = λ^(2n'-2) ∏ Δ(f_ν)^(n_ν) · ver`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorizationCheck {
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub oracle: QPoly,
    #[serde(serialize_with = "crate::report::ser_q")]
    pub leading_power: Q,
    pub components: Vec<ComponentDiscriminant>,
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub vertex: QPoly,
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub product: QPoly,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Calibration {
    #[serde(serialize_with = "crate::report::ser_q")]
    pub c: Q,
    pub oracle_verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlternativeValue {
    pub method: VertexMethod,
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub value: QPoly,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexReport {
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub value: QPoly,
    pub method: VertexMethod,
    #[serde(serialize_with = "crate::report::ser_q")]
    pub leading_coefficient: Q,
    #[serde(serialize_with = "crate::report::ser_parts")]
    pub components: Vec<(PolyXY, u32)>,
    pub kind: KindPattern,
    pub zd: Vec<ZdDecomposition>,
    pub assembly: Option<ZdAssembly>,
    pub gfd: Vec<GfdValue>,
    pub calibration: Option<Calibration>,
    /// Other routes that also produced a value; all agree with `value`.
    pub alternatives: Vec<AlternativeValue>,
    pub check: Option<FactorizationCheck>,
    pub oracle_verified: bool,
    pub notes: Vec<String>,
}

impl VertexReport {
    pub fn value_text(&self) -> String {
        print::ypoly_to_string(&self.value)
    }
}

fn component_discriminants(comps: &[(PolyXY, u32)]) -> Vec<ComponentDiscriminant> {
    comps
        .iter()
        .map(|(p, n)| ComponentDiscriminant {
            component: p.clone(),
            multiplicity: *n,
            discriminant: discriminant(p.as_upoly()),
        })
        .collect()
}

/// `λ^(2n'-2) ∏ Δ(f_ν)^(n_ν)`.
fn discriminant_part(f: &TruncatedFamily, comps: &[ComponentDiscriminant]) -> Result<(Q, QPoly)> {
    let (_, lambda) = f.monic_normalized()?;
    let n = f.x_degree();
    let lp = num_traits::pow(lambda, 2 * n.max(1) - 2);
    let mut prod = QPoly::constant(lp.clone());
    for c in comps {
        prod = prod.mul_poly(&c.discriminant.pow_u(c.multiplicity));
    }
    Ok((lp, prod))
}

/// Compares the oracle Δ'₀ with `λ^(2n'-2) ∏ Δ(f_ν)^(n_ν) · ver`.
pub fn check_vertex_factorization(
    f: &TruncatedFamily,
    comps: &[(PolyXY, u32)],
    vertex: &QPoly,
) -> Result<FactorizationCheck> {
    let oracle = discriminant_series(f)?.delta_prime_0;
    let components = component_discriminants(comps);
    let (leading_power, part) = discriminant_part(f, &components)?;
    let product = part.mul_poly(vertex);
    Ok(FactorizationCheck {
        matches: product == oracle,
        oracle,
        leading_power,
        components,
        vertex: vertex.clone(),
        product,
    })
}

fn zd_route(f: &TruncatedFamily, comps: &[(PolyXY, u32)]) -> Result<(Vec<ZdDecomposition>, ZdAssembly)> {
    let mut decomps = Vec::new();
    for (p, n) in comps {
        if *n > 1 {
            decomps.push(zd_search(f, p)?);
        }
    }
    let a = vertex_from_zd(comps, &decomps)?;
    Ok((decomps, a))
}

struct BranchOutcome {
    value: QPoly,
    method: VertexMethod,
    gfd: Vec<GfdValue>,
    note: String,
}

/// ver from branch data. With exact branches the product is exact; with
/// numeric branches the exact value comes from the oracle and the numeric
/// product must agree with it to the comparison tolerance.
fn branch_route(f: &TruncatedFamily, comps: &[(PolyXY, u32)], backend: Backend) -> Result<BranchOutcome> {
    let check = verify_product_formula(f, Some(comps), backend)?.ensure()?;
    let cross: Q = check
        .cross
        .iter()
        .map(|c| {
            let p = num_traits::pow(c.resultant.clone(), c.exponent.unsigned_abs() as usize);
            if c.exponent < 0 {
                Q::one() / p
            } else {
                p
            }
        })
        .product();
    match &check.gfd_product {
        Scalar::Exact(g) => Ok(BranchOutcome {
            value: QPoly::constant(g * cross),
            method: VertexMethod::BranchExact,
            gfd: check.gfd,
            note: "ver from exact branch data".into(),
        }),
        Scalar::Numeric(_) => {
            let comps_d = component_discriminants(comps);
            let (_, part) = discriminant_part(f, &comps_d)?;
            let v = check.oracle.clone() / part.coeff(0);
            Ok(BranchOutcome {
                value: QPoly::constant(v),
                method: VertexMethod::BranchNumeric,
                gfd: check.gfd,
                note: format!(
                    "numeric branch product agrees with the oracle quotient (log2 relative gap {:.1})",
                    check.rel_gap_log2.unwrap_or(f64::NEG_INFINITY)
                ),
            })
        }
    }
}

/// Computes ver(F) by the requested route and checks it against the oracle.
pub fn compute_vertex(
    f: &TruncatedFamily,
    given: Option<&[(PolyXY, u32)]>,
    route: VertexRoute,
    backend: Backend,
) -> Result<VertexReport> {
    let comps = special_fiber_components(f, given)?;
    let kind = classify_kind(f);
    let mut notes = Vec::new();
    let mut found: Vec<(VertexMethod, QPoly)> = Vec::new();
    let mut zd = Vec::new();
    let mut assembly = None;
    let mut gfd = Vec::new();
    let mut first_err: Option<Error> = None;

    if matches!(route, VertexRoute::Auto | VertexRoute::Kind) {
        match kind_vertex_value(&kind) {
            Ok(v) => found.push((VertexMethod::ClosedFormKind, v)),
            Err(e) if route == VertexRoute::Kind => return Err(e),
            Err(e) => {
                if kind.candidate != Kind::Other {
                    notes.push(e.to_string());
                }
            }
        }
    }
    if matches!(route, VertexRoute::Auto | VertexRoute::Zd) {
        match zd_route(f, &comps) {
            Ok((d, a)) => {
                found.push((VertexMethod::ZdResultants, a.value.clone()));
                zd = d;
                assembly = Some(a);
            }
            Err(e) if route == VertexRoute::Zd => return Err(e),
            Err(e) => {
                notes.push(format!("Zd route: {e}"));
                first_err.get_or_insert(e);
            }
        }
    }
    let want_branch = route == VertexRoute::Branch || (route == VertexRoute::Auto && found.is_empty());
    if want_branch {
        if !f.is_y_free() {
            let e = Error::Unsupported(
                "cannot certify ver route: no kind pattern or Zd, and branch data needs a family over Q".into(),
            );
            return Err(if route == VertexRoute::Branch { e } else { first_err.unwrap_or(e) });
        }
        let b = branch_route(f, &comps, backend)?;
        notes.push(b.note);
        found.push((b.method, b.value));
        gfd = b.gfd;
    }
    let (method, value) = found.first().cloned().ok_or_else(|| Error::Unsupported("cannot certify ver route".into()))?;
    for (m, v) in &found[1..] {
        if *v != value {
            return Err(Error::Inconsistency(format!(
                "{} gives ver = {} but {} gives {}",
                method.as_str(),
                print::ypoly_to_string(&value),
                m.as_str(),
                print::ypoly_to_string(v)
            )));
        }
    }
    let check = match check_vertex_factorization(f, &comps, &value) {
        Ok(c) => Some(c),
        Err(e) => {
            notes.push(format!("oracle unavailable ({e}); ver holds up to a nonzero constant"));
            None
        }
    };
    if let Some(c) = &check {
        if !c.matches {
            return Err(Error::Inconsistency(format!(
                "Δ'₀ = {} but λ^(2n'-2) ∏ Δ(f)^n · ver = {}",
                print::ypoly_to_string(&c.oracle),
                print::ypoly_to_string(&c.product)
            )));
        }
    }
    let oracle_verified = check.as_ref().is_some_and(|c| c.matches);
    let calibration = assembly.as_ref().map(|a| Calibration { c: a.c.clone(), oracle_verified });
    Ok(VertexReport {
        value,
        method,
        leading_coefficient: kind.leading_coefficient.clone(),
        components: comps,
        kind,
        zd,
        assembly,
        gfd,
        calibration,
        alternatives: found[1..]
            .iter()
            .map(|(m, v)| AlternativeValue { method: *m, value: v.clone() })
            .collect(),
        check,
        oracle_verified,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::parse::parse_family_exact;

    fn run(text: &str) -> VertexReport {
        compute_vertex(&parse_family_exact(text).unwrap(), None, VertexRoute::Auto, Backend::Exact).unwrap()
    }

    #[test]
    fn kinds_agree_with_zd_and_oracle() {
        for (text, v, alt) in [
            ("x^2*(x+1) + (x+2)*t", -8, true),
            ("x^3 + x^2 + 2*x*t - t^2", 8, true),
            ("x^2 + x^3 + 2*x*t + t^2 + 2*t^3", -4, false),
            ("x^2 + 2*x*t + t^2 + t^3", -4, true),
        ] {
            let r = run(text);
            assert_eq!(r.method, VertexMethod::ClosedFormKind, "{text}");
            assert_eq!(r.value, QPoly::constant(q(v)), "{text}");
            assert!(r.oracle_verified);
            assert_eq!(!r.alternatives.is_empty(), alt, "{text}: {:?}", r.notes);
        }
    }

    #[test]
    fn corollary_examples() {
        let r = run("x^3 + x^2 + t*x + 2*t");
        assert_eq!(r.value, QPoly::constant(q(-8)));
        let r = run("x^2 - 1");
        assert_eq!(r.value, QPoly::constant(q(1)));
        assert_eq!(r.check.unwrap().oracle, QPoly::constant(q(4)));
        let f = parse_family_exact("x^2 + 2*x*t + t^2 + t^3").unwrap();
        let r = compute_vertex(&f, None, VertexRoute::Zd, Backend::Exact).unwrap();
        assert_eq!((r.method, r.value.clone()), (VertexMethod::ZdResultants, QPoly::constant(q(-4))));
        assert_eq!(r.calibration.unwrap(), Calibration { c: q(-4), oracle_verified: true });
    }

    #[test]
    fn branch_fallback() {
        // x^3 + x t: no kind shape hypotheses, no Zd; oracle -4 t^3
        let f = crate::parse::parse_family("x^3 + x*t", 3).unwrap();
        let r = compute_vertex(&f, None, VertexRoute::Auto, Backend::Exact).unwrap();
        assert_eq!(r.method, VertexMethod::BranchNumeric);
        assert_eq!(r.value, QPoly::constant(q(-4)));
        let r = compute_vertex(
            &parse_family_exact("(x - t)*(x - 2*t)*(x - 1 - t)").unwrap(),
            None,
            VertexRoute::Branch,
            Backend::Exact,
        )
        .unwrap();
        assert_eq!(r.method, VertexMethod::BranchExact);
        assert!(r.oracle_verified);
    }

    #[test]
    fn forced_kind_route_names_hypothesis() {
        let f = parse_family_exact("x^3 + (x+2)*t").unwrap();
        assert!(matches!(compute_vertex(&f, None, VertexRoute::Kind, Backend::Exact), Err(Error::Hypothesis(_))));
        let r = compute_vertex(&f, None, VertexRoute::Auto, Backend::Exact).unwrap();
        assert_eq!(r.value, QPoly::constant(q(-108)));
        assert!(r.notes.iter().any(|n| n.contains("A(0) != 0")));
    }

    #[test]
    fn over_qy() {
        let r = run("x^2*(x+y) + (x+2)*t");
        assert_eq!(r.value, QPoly::new(vec![q(0), q(0), q(0), q(-8)]));
        assert!(r.oracle_verified);
        let r = run("(x - y)^2*(x + 1) + t*(x + 3)");
        assert!(r.oracle_verified);
        assert_eq!(r.method, VertexMethod::ZdResultants);
    }

    #[test]
    fn non_monic_family() {
        let r = run("3*x^2*(x+1) + (x+2)*t");
        assert_eq!(r.value, QPoly::constant(Q::new((-8).into(), 3.into())));
        assert_eq!(r.check.unwrap().oracle, QPoly::constant(q(-216)));
    }
}
