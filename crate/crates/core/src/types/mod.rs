//! Types of the components of the special fiber and the general type of a
//! family, with a randomized check that truncating at the general type does
//! not change ver.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{PolyXY, QPoly, TruncatedFamily, Q};
use crate::disc::special_fiber_components;
use crate::elim::squarefree_decompose;
use crate::error::{Error, Result};
use crate::newton::{expand_branches_numeric, separation_orders, separation_orders_symbolic, Backend};
use crate::parse::print;
use crate::vertex::{compute_vertex, zd_search, VertexRoute};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TypeMethod {
    Symbolic,
    Zd,
    Numeric,
}

impl TypeMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            TypeMethod::Symbolic => "symbolic",
            TypeMethod::Zd => "zd",
            TypeMethod::Numeric => "numeric",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentType {
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub component: PolyXY,
    pub multiplicity: u32,
    /// Largest separation order among branches centered on the component.
    #[serde(serialize_with = "crate::report::ser_opt_q")]
    pub m: Option<Q>,
    pub tau: u32,
    pub method: TypeMethod,
    /// No pair of branches shares a center, so tau is set to 0 by convention.
    pub empty_pairs: bool,
    /// Polynomials in y that must not vanish for the symbolic answer to hold.
    #[serde(serialize_with = "ser_ypolys")]
    pub certificates: Vec<QPoly>,
    pub notes: Vec<String>,
}

fn ser_ypolys<S: serde::Serializer>(v: &[QPoly], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(print::ypoly_to_string))
}

fn floor_to_u32(v: &Q) -> u32 {
    let f = v.floor().to_integer();
    u32::try_from(f).unwrap_or(u32::MAX)
}

fn build(component: &PolyXY, n: u32, m: Option<Q>, method: TypeMethod, certificates: Vec<QPoly>) -> ComponentType {
    let tau = m.as_ref().map_or(0, |m| floor_to_u32(&(m * Q::from_integer(n.into()))));
    ComponentType {
        component: component.clone(),
        multiplicity: n,
        empty_pairs: m.is_none(),
        m,
        tau,
        method,
        certificates,
        notes: Vec::new(),
    }
}

/// Components of F_0 with multiplicities. When the x-leading coefficient of
/// F_0 depends on y, the y-content is set aside first.
pub fn type_components(f: &TruncatedFamily) -> Result<Vec<(PolyXY, u32)>> {
    if f.f0().lc_x().is_constant() {
        return special_fiber_components(f, None);
    }
    let content = f.f0().as_upoly().content();
    let prim = f.f0().exact_divide(&PolyXY::from_y_poly(&content))?;
    if !prim.lc_x().is_constant() {
        return Err(Error::Unsupported(
            "x-leading coefficient of F_0 has a nontrivial factor in x; components are not defined over Q[y]".into(),
        ));
    }
    Ok(squarefree_decompose(&prim)?.parts)
}

fn numeric_type(f: &TruncatedFamily, component: &PolyXY, n: u32, backend: Backend) -> Result<ComponentType> {
    if !f.is_y_free() {
        return Err(Error::Unsupported("numeric branches need a family over Q".into()));
    }
    let backend = match backend {
        Backend::Exact => Backend::default_numeric(),
        b => b,
    };
    let work = f.monic_normalized().map(|(g, _)| g).unwrap_or_else(|_| f.clone());
    let b = expand_branches_numeric(&work, backend, None)?;
    let idx = b.branches_on(component);
    if idx.len() != n as usize * component.deg_x() {
        return Err(Error::Inconsistency(format!(
            "{} branches sit on {}, expected {}",
            idx.len(),
            print::poly_to_string(component),
            n as usize * component.deg_x()
        )));
    }
    let m = separation_orders(&b).max_within(&idx);
    Ok(build(component, n, m, TypeMethod::Numeric, Vec::new()))
}

/// Type of one component, trying the symbolic recursion, then a Zd, then
/// numeric branches.
pub fn type_of(f: &TruncatedFamily, component: &PolyXY, multiplicity: u32, backend: Backend) -> Result<ComponentType> {
    let mut notes = Vec::new();
    let mut out = match separation_orders_symbolic(f, component) {
        Ok(s) => Some(build(component, multiplicity, s.m, TypeMethod::Symbolic, s.certificates)),
        Err(e @ (Error::Hypothesis(_) | Error::Parse { .. })) => return Err(e),
        Err(e) => {
            notes.push(format!("symbolic route: {e}"));
            None
        }
    };
    if out.is_none() {
        match zd_search(f, component) {
            Ok(d) => {
                let m = Q::new(d.order.into(), multiplicity.into());
                let mut t = build(component, multiplicity, Some(m), TypeMethod::Zd, Vec::new());
                t.tau = d.order as u32;
                out = Some(t);
            }
            Err(e) => notes.push(format!("Zd route: {e}")),
        }
    }
    let mut out = match out {
        Some(t) => t,
        None => numeric_type(f, component, multiplicity, backend)?,
    };
    out.notes = notes;
    Ok(out)
}

/// Runs one specific method, for cross-checks.
pub fn type_by(
    f: &TruncatedFamily,
    component: &PolyXY,
    multiplicity: u32,
    method: TypeMethod,
    backend: Backend,
) -> Result<ComponentType> {
    match method {
        TypeMethod::Symbolic => {
            let s = separation_orders_symbolic(f, component)?;
            Ok(build(component, multiplicity, s.m, TypeMethod::Symbolic, s.certificates))
        }
        TypeMethod::Zd => {
            let d = zd_search(f, component)?;
            let mut t = build(
                component,
                multiplicity,
                Some(Q::new(d.order.into(), multiplicity.into())),
                TypeMethod::Zd,
                Vec::new(),
            );
            t.tau = d.order as u32;
            Ok(t)
        }
        TypeMethod::Numeric => numeric_type(f, component, multiplicity, backend),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TypeReport {
    pub components: Vec<ComponentType>,
    pub general_type: u32,
    pub sufficiency: Option<SufficiencyReport>,
}

/// Per-component types and their maximum.
pub fn general_type(f: &TruncatedFamily, given: Option<&[(PolyXY, u32)]>, backend: Backend) -> Result<TypeReport> {
    let comps = match given {
        Some(g) => special_fiber_components(f, Some(g))?,
        None => type_components(f)?,
    };
    let components = comps
        .iter()
        .map(|(p, n)| type_of(f, p, *n, backend))
        .collect::<Result<Vec<_>>>()?;
    let general_type = components.iter().map(|c| c.tau).max().unwrap_or(0);
    Ok(TypeReport {
        components,
        general_type,
        sufficiency: None,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Perturbation {
    pub trial: u64,
    pub order: usize,
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub added: PolyXY,
    /// ver of the perturbed family, or the error it raised.
    pub outcome: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SufficiencyReport {
    pub tau: u32,
    pub trials: u64,
    pub seed: u64,
    pub base_value: String,
    pub passed: bool,
    /// Perturbations at order tau + 1 that changed ver.
    pub failures: Vec<Perturbation>,
    /// A single perturbation at order tau; a change there shows the bound is
    /// not slack, but no change proves nothing.
    pub probe: Option<ProbeResult>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeResult {
    pub perturbation: Perturbation,
    pub changed: bool,
}

fn random_poly(rng: &mut ChaCha8Rng, deg_x: usize, deg_y: usize) -> PolyXY {
    let mut p = PolyXY::zero();
    for i in 0..=deg_x {
        for j in 0..=deg_y {
            let c: i64 = rng.gen_range(-5..=5);
            if c != 0 {
                p = p.add(&PolyXY::monomial(Q::from_integer(c.into()), i, j));
            }
        }
    }
    if p.is_zero() {
        PolyXY::one()
    } else {
        p
    }
}

fn perturbed(f: &TruncatedFamily, order: usize, g: &PolyXY) -> Result<TruncatedFamily> {
    let base = f.with_trunc(f.trunc().max(order));
    let mut coeffs = base.coeffs().to_vec();
    coeffs.resize(base.trunc() + 1, PolyXY::zero());
    coeffs[order] = coeffs[order].add(g);
    TruncatedFamily::new(coeffs, base.trunc())
}

fn ver_value(f: &TruncatedFamily, backend: Backend) -> Result<QPoly> {
    compute_vertex(f, None, VertexRoute::Auto, backend).map(|r| r.value)
}

fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Adds random terms at t^(tau + 1) and checks that ver does not move.
pub fn truncation_sufficiency_check(
    f: &TruncatedFamily,
    tau: u32,
    trials: u64,
    seed: u64,
    backend: Backend,
) -> Result<SufficiencyReport> {
    let base = ver_value(f, backend)?;
    let (n, dy) = (f.x_degree(), f.deg_y());
    let order = tau as usize + 1;
    let mut failures = Vec::new();
    for trial in 0..trials {
        let g = random_poly(&mut trial_rng(seed, trial), n, dy);
        let outcome = perturbed(f, order, &g).and_then(|h| ver_value(&h, backend));
        match outcome {
            Ok(v) if v == base => {}
            other => failures.push(Perturbation {
                trial,
                order,
                added: g,
                outcome: match other {
                    Ok(v) => print::ypoly_to_string(&v),
                    Err(e) => format!("error: {e}"),
                },
            }),
        }
    }
    let probe = if tau >= 1 {
        let g = random_poly(&mut trial_rng(seed, u64::MAX), n, dy);
        let outcome = perturbed(f, tau as usize, &g).and_then(|h| ver_value(&h, backend));
        Some(ProbeResult {
            changed: outcome.as_ref().map_or(true, |v| *v != base),
            perturbation: Perturbation {
                trial: u64::MAX,
                order: tau as usize,
                added: g,
                outcome: match outcome {
                    Ok(v) => print::ypoly_to_string(&v),
                    Err(e) => format!("error: {e}"),
                },
            },
        })
    } else {
        None
    };
    Ok(SufficiencyReport {
        tau,
        trials,
        seed,
        base_value: print::ypoly_to_string(&base),
        passed: failures.is_empty(),
        failures,
        probe,
    })
}

impl SufficiencyReport {
    /// Turns a failed check into an error naming the first offending perturbation.
    pub fn ensure(&self) -> Result<()> {
        match self.failures.first() {
            None => Ok(()),
            Some(p) => Err(Error::Inconsistency(format!(
                "ver changed from {} to {} after adding t^{}*({}) (trial {})",
                self.base_value,
                p.outcome,
                p.order,
                print::poly_to_string(&p.added),
                p.trial
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qr;
    use crate::parse::{parse_family, parse_family_exact, parse_poly};

    fn gt(text: &str, trunc: usize) -> TypeReport {
        general_type(&parse_family(text, trunc).unwrap(), None, Backend::Exact).unwrap()
    }

    #[test]
    fn closed_form_kinds() {
        // first, second and third kind families have types 1, 2, 3
        assert_eq!(gt("x^2*(x+1) + (x+2)*t", 1).general_type, 1);
        assert_eq!(gt("x^3 + x^2 + 2*x*t - t^2", 2).general_type, 2);
        assert_eq!(gt("x^2 + x^3 + 2*x*t + t^2 + 2*t^3", 3).general_type, 3);
    }

    #[test]
    fn zd_order_is_the_type() {
        let f = parse_family_exact("x^2 + 2*x*t + t^2 + t^3").unwrap();
        let x = parse_poly("x").unwrap();
        let t = type_by(&f, &x, 2, TypeMethod::Zd, Backend::Exact).unwrap();
        assert_eq!((t.tau, t.m.clone()), (3, Some(qr(3, 2))));
        let s = type_by(&f, &x, 2, TypeMethod::Symbolic, Backend::Exact).unwrap();
        assert_eq!(s.tau, 3);
        let n = type_by(&f, &x, 2, TypeMethod::Numeric, Backend::default_numeric()).unwrap();
        assert_eq!(n.tau, 3);
    }

    #[test]
    fn example_families_over_qy() {
        // x^3 + F1 t with x not dividing F1
        assert_eq!(gt("x^3 + (x + y + 1)*t", 1).general_type, 1);
        // x^3 + x C1 t with x not dividing C1
        assert_eq!(gt("x^3 + x*(y + 2)*t", 1).general_type, 1);
        // x^3 + x C2 t^2 + F3 t^3
        assert_eq!(gt("x^3 + x*(y + 1)*t^2 + t^3", 3).general_type, 3);
        // x^2 y + F1 t
        assert_eq!(gt("x^2*y + (x + 1)*t", 1).general_type, 1);
        // x^2 y + x C1 t + F2 t^2
        assert_eq!(gt("x^2*y + x*t + t^2", 2).general_type, 2);
    }

    #[test]
    fn reduced_component_has_empty_pairs() {
        let r = gt("x^2*(x+1) + (x+2)*t", 1);
        let c = r.components.iter().find(|c| c.multiplicity == 1).unwrap();
        assert!(c.empty_pairs);
        assert_eq!(c.tau, 0);
    }

    #[test]
    fn numeric_fallback_for_irrational_roots() {
        // (x^2 - 2)^2 + t: roots ±sqrt 2 are irrational
        let f = parse_family_exact("(x^2 - 2)^2 + t").unwrap();
        let r = general_type(&f, None, Backend::Exact).unwrap();
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.components[0].m, Some(qr(1, 2)));
        assert_eq!(r.general_type, 1);
    }

    #[test]
    fn truncation_is_sufficient() {
        for (text, trunc) in [
            ("x^2*(x+1) + (x+2)*t", 1),
            ("x^3 + x^2 + 2*x*t - t^2", 2),
            ("x^2 + 2*x*t + t^2 + t^3", 3),
        ] {
            let f = parse_family(text, trunc).unwrap();
            let tau = general_type(&f, None, Backend::Exact).unwrap().general_type;
            let s = truncation_sufficiency_check(&f, tau, 10, 7, Backend::Exact).unwrap();
            assert!(s.passed, "{text}: {:?}", s.failures);
            s.ensure().unwrap();
        }
    }

    #[test]
    fn probe_below_the_type_moves_ver() {
        // second kind: ver depends on F_2
        let f = parse_family("x^3 + x^2 + 2*x*t - t^2", 2).unwrap();
        let s = truncation_sufficiency_check(&f, 2, 3, 11, Backend::Exact).unwrap();
        let p = s.probe.unwrap();
        assert_eq!(p.perturbation.order, 2);
        assert!(p.changed);
    }

    #[test]
    fn zero_trials() {
        let f = parse_family("x^2*(x+1) + (x+2)*t", 1).unwrap();
        let s = truncation_sufficiency_check(&f, 1, 0, 1, Backend::Exact).unwrap();
        assert!(s.passed && s.failures.is_empty());
    }

    #[test]
    fn too_small_tau_is_caught() {
        // claiming tau = 1 for a second kind family lets the F_2 change through
        let f = parse_family("x^3 + x^2 + 2*x*t - t^2", 2).unwrap();
        let s = truncation_sufficiency_check(&f, 1, 5, 3, Backend::Exact).unwrap();
        assert!(!s.passed);
        assert!(matches!(s.ensure(), Err(Error::Inconsistency(_))));
    }
}
