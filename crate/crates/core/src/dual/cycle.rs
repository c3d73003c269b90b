use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::HomogeneousFamily;
use crate::arith::{PolyXY, PolyXYZ, QPoly, TruncatedFamily, UPoly, Q};
use crate::elim::{discriminant, rational_roots, resultant, squarefree_qpoly};
use crate::error::{Error, Result};
use crate::newton::Backend;
use crate::parse::print;
use crate::vertex::{compute_vertex, VertexMethod, VertexReport, VertexRoute};

fn ser_matrix<S: Serializer>(m: &Option<[[Q; 3]; 3]>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match m {
        None => s.serialize_none(),
        Some(m) => s.collect_seq(m.iter().map(|r| r.iter().map(print::rational).collect::<Vec<_>>())),
    }
}

fn ser_xyz<S: Serializer>(p: &PolyXYZ, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&print::polyxyz_to_string(p))
}

/// Outcome of the two coordinate conditions on F_0.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoordinateReport {
    /// Coefficient of x^n in F_0, i.e. F_0(1, 0, 0).
    #[serde(serialize_with = "crate::report::ser_q")]
    pub x_power_coefficient: Q,
    pub point_condition: bool,
    /// Discriminant of the binary form F_0(x, y, 0), read at y = 1.
    #[serde(serialize_with = "crate::report::ser_q")]
    pub infinity_discriminant: Q,
    /// Square-free at infinity; sufficient for z = 0 not to be tangent to F_0,
    /// not necessary.
    pub tangency_proxy: bool,
    pub passed: bool,
    #[serde(serialize_with = "ser_matrix")]
    pub suggested_transform: Option<[[Q; 3]; 3]>,
}

fn conditions(h: &HomogeneousFamily) -> (Q, Q) {
    let f0 = &h.coeffs()[0];
    let lead = f0.coeff([h.degree(), 0, 0]);
    let at_inf: UPoly<Q> = f0.at_infinity_y1();
    let disc = if lead.is_zero() || h.degree() == 0 { Q::zero() } else { discriminant(&at_inf) };
    (lead, disc)
}

fn det3(m: &[[Q; 3]; 3]) -> Q {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Both coordinate conditions; on failure a seeded search proposes an
/// invertible integer matrix under which both hold.
pub fn check_coordinates(h: &HomogeneousFamily) -> CoordinateReport {
    let (lead, disc) = conditions(h);
    let point_condition = !lead.is_zero();
    let tangency_proxy = point_condition && !disc.is_zero();
    let passed = point_condition && tangency_proxy;
    let suggested_transform = if passed { None } else { suggest_transform(h) };
    CoordinateReport {
        x_power_coefficient: lead,
        point_condition,
        infinity_discriminant: disc,
        tangency_proxy,
        passed,
        suggested_transform,
    }
}

fn suggest_transform(h: &HomogeneousFamily) -> Option<[[Q; 3]; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..500 {
        let m: [[Q; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| Q::from_integer(rng.gen_range(-3i64..=3).into())));
        if det3(&m).is_zero() {
            continue;
        }
        let moved = HomogeneousFamily::new(h.degree(), h.coeffs().iter().map(|c| c.linear_change(&m)).collect(), h.trunc());
        if let Ok(g) = moved {
            let (lead, disc) = conditions(&g);
            if !lead.is_zero() && !disc.is_zero() {
                return Some(m);
            }
        }
    }
    None
}

/// `F(x, y, 1, t)` divided by the x^n coefficient of F_0.
pub fn dehomogenize(h: &HomogeneousFamily) -> Result<TruncatedFamily> {
    let lead = conditions(h).0;
    if lead.is_zero() {
        return Err(Error::hyp("F_0(1,0,0) != 0 fails: x^n has coefficient 0 in F_0"));
    }
    Ok(h.affine_chart()?.scale(&(Q::one() / lead)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PencilSource {
    /// Lines through C_ν ∩ C_ν'.
    Intersection,
    /// Lines through Z(Δ) ∩ C_ν for the Zd remainder Δ.
    ZdRemainder,
    /// Lines through Z(A) ∩ C_ν for the Zd multiplier A, counted negatively.
    ZdMultiplier,
    /// The part of ver left after removing the intersection pencils, when no
    /// Zd is available for every multiple component.
    FormalPart,
    /// Denominator of the formal part, counted negatively.
    FormalDenominator,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Pencil {
    pub source: PencilSource,
    /// The component C_ν the pencil sits on, when a single one is known.
    #[serde(serialize_with = "ser_opt_poly")]
    pub component: Option<PolyXY>,
    /// The locus intersected with C_ν.
    #[serde(serialize_with = "ser_opt_poly")]
    pub partner: Option<PolyXY>,
    pub multiplicity: i64,
    /// Restriction to the line L, a resultant in x at z = 1.
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub restriction: QPoly,
}

fn ser_opt_poly<S: Serializer>(p: &Option<PolyXY>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_str(&print::poly_to_string(p)),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualComponent {
    #[serde(serialize_with = "ser_xyz")]
    pub curve: PolyXYZ,
    pub multiplicity: u32,
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub discriminant: QPoly,
}

/// A Zd written back in homogeneous coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomogeneousZd {
    #[serde(serialize_with = "ser_xyz")]
    pub component: PolyXYZ,
    #[serde(serialize_with = "ser_xyz")]
    pub multiplier: PolyXYZ,
    #[serde(serialize_with = "ser_xyz")]
    pub remainder: PolyXYZ,
    /// Every piece fits the degree its homogeneous role demands.
    pub degrees_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitCycle {
    pub degree: u32,
    pub coordinates: CoordinateReport,
    pub dual_components: Vec<DualComponent>,
    pub pencils: Vec<Pencil>,
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub ver: QPoly,
    pub method: VertexMethod,
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub delta_prime_0: QPoly,
    /// Δ'₀ divided by `∏ Δ(f_ν)^(n_ν) ∏ restriction^mult`.
    #[serde(serialize_with = "crate::report::ser_opt_q")]
    pub constant: Option<Q>,
    pub consistent: bool,
    /// `deg Δ'₀ = deg ∏ Δ(f_ν)^(n_ν) + deg ver`.
    pub degrees_balance: bool,
    pub homogeneous_zd: Vec<HomogeneousZd>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub vertex: VertexReport,
    #[serde(skip)]
    pub special_fiber: PolyXYZ,
}

fn res_x(a: &PolyXY, b: &PolyXY) -> QPoly {
    resultant(a.as_upoly(), b.as_upoly())
}

fn total_degree_hom(p: &PolyXY) -> Result<PolyXYZ> {
    PolyXYZ::homogenize(p, p.total_degree() as u32).ok_or_else(|| Error::hyp("cannot homogenize"))
}

/// Assembles the limit of the dual curves as a cycle: dual components with
/// multiplicities plus line pencils whose restrictions to L multiply back
/// to Δ'₀.
pub fn limit_dual_cycle(
    h: &HomogeneousFamily,
    given: Option<&[(PolyXYZ, u32)]>,
    backend: Backend,
) -> Result<LimitCycle> {
    let coordinates = check_coordinates(h);
    let f = dehomogenize(h)?;
    let mut notes = Vec::new();
    if !coordinates.tangency_proxy {
        notes.push("F_0(x,y,0) is not square-free; tangency at infinity was not excluded".to_string());
    }
    let affine_given: Option<Vec<(PolyXY, u32)>> = given.map(|g| g.iter().map(|(p, n)| (p.dehomogenize(), *n)).collect());
    let rep = compute_vertex(&f, affine_given.as_deref(), VertexRoute::Auto, backend)?;
    let comps = rep.components.clone();

    let dual_components = comps
        .iter()
        .map(|(p, n)| {
            Ok(DualComponent {
                curve: total_degree_hom(p)?,
                multiplicity: *n,
                discriminant: discriminant(p.as_upoly()),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut pencils = Vec::new();
    for (i, (p, _)) in comps.iter().enumerate() {
        for (j, (g, m)) in comps.iter().enumerate() {
            if i != j {
                pencils.push(Pencil {
                    source: PencilSource::Intersection,
                    component: Some(p.clone()),
                    partner: Some(g.clone()),
                    multiplicity: *m as i64,
                    restriction: res_x(p, g),
                });
            }
        }
    }
    let multiple: Vec<&(PolyXY, u32)> = comps.iter().filter(|(_, n)| *n > 1).collect();
    let zd_complete = !multiple.is_empty() && multiple.iter().all(|(p, _)| rep.zd.iter().any(|d| &d.component == p));
    let mut homogeneous_zd = Vec::new();
    if zd_complete {
        for d in &rep.zd {
            let e = d.multiplicity as i64 - 1;
            pencils.push(Pencil {
                source: PencilSource::ZdRemainder,
                component: Some(d.component.clone()),
                partner: Some(d.delta.clone()),
                multiplicity: e,
                restriction: res_x(&d.component, &d.delta),
            });
            pencils.push(Pencil {
                source: PencilSource::ZdMultiplier,
                component: Some(d.component.clone()),
                partner: Some(d.alpha.clone()),
                multiplicity: -e,
                restriction: res_x(&d.component, &d.alpha),
            });
            homogeneous_zd.push(rehomogenize_zd(d, h.degree())?);
        }
    } else if !multiple.is_empty() {
        let cross = pencils.iter().fold(QPoly::constant(Q::one()), |acc, p| {
            acc.mul_poly(&p.restriction.pow_u(p.multiplicity as u32))
        });
        let g = rep.value.gcd_poly(&cross);
        let num = rep.value.exact_div_poly(&g).ok_or(Error::NotDivisible)?;
        let den = cross.exact_div_poly(&g).ok_or(Error::NotDivisible)?;
        let component = (multiple.len() == 1).then(|| multiple[0].0.clone());
        let lift = |r: &QPoly| component.as_ref().map(|_| PolyXY::from_y_poly(r));
        pencils.push(Pencil {
            source: PencilSource::FormalPart,
            component: component.clone(),
            partner: lift(&num),
            multiplicity: 1,
            restriction: num.clone(),
        });
        if !den.is_constant() {
            pencils.push(Pencil {
                source: PencilSource::FormalDenominator,
                component: component.clone(),
                partner: lift(&den),
                multiplicity: -1,
                restriction: den,
            });
        }
        notes.push(format!(
            "no Zd for every multiple component; formal part taken from the {} value of ver",
            rep.method.as_str()
        ));
    }

    let disc_part = dual_components
        .iter()
        .fold(QPoly::constant(Q::one()), |acc, c| acc.mul_poly(&c.discriminant.pow_u(c.multiplicity)));
    let (mut num, mut den) = (disc_part.clone(), QPoly::constant(Q::one()));
    for p in &pencils {
        let r = p.restriction.pow_u(p.multiplicity.unsigned_abs() as u32);
        if p.multiplicity >= 0 {
            num = num.mul_poly(&r);
        } else {
            den = den.mul_poly(&r);
        }
    }
    let delta_prime_0 = match &rep.check {
        Some(c) => c.oracle.clone(),
        None => crate::disc::discriminant_series(&f)?.delta_prime_0,
    };
    let constant = if num.is_zero() {
        None
    } else {
        delta_prime_0
            .mul_poly(&den)
            .exact_div_poly(&num)
            .filter(|k| k.is_constant() && !k.is_zero())
            .map(|k| k.coeff(0))
    };
    let consistent = constant.is_some();
    let degrees_balance = delta_prime_0.deg() == disc_part.deg() + rep.value.deg();
    notes.extend(rep.notes.iter().cloned());
    Ok(LimitCycle {
        degree: h.degree(),
        coordinates,
        dual_components,
        pencils,
        ver: rep.value.clone(),
        method: rep.method,
        delta_prime_0,
        constant,
        consistent,
        degrees_balance,
        homogeneous_zd,
        notes,
        special_fiber: h.coeffs()[0].clone(),
        vertex: rep,
    })
}

fn rehomogenize_zd(d: &crate::vertex::ZdDecomposition, n: u32) -> Result<HomogeneousZd> {
    let a = d.alpha.total_degree() as u32;
    let nu = d.multiplicity;
    let target = a + n;
    let beta_deg = target.is_multiple_of(nu).then(|| target / nu - d.component.total_degree() as u32);
    let fits = |p: &PolyXY, k: u32| p.is_zero() || p.total_degree() as u32 <= k;
    let degrees_ok = fits(&d.delta, target)
        && beta_deg.is_some_and(|b| d.betas.iter().all(|p| fits(p, b)));
    let hom = |p: &PolyXY, k: u32| PolyXYZ::homogenize(p, k).unwrap_or_else(PolyXYZ::zero);
    Ok(HomogeneousZd {
        component: total_degree_hom(&d.component)?,
        multiplier: hom(&d.alpha, a),
        remainder: hom(&d.delta, target),
        degrees_ok,
    })
}

impl LimitCycle {
    /// Canonical text form of the cycle.
    pub fn to_text(&self) -> String {
        let mut out = String::from("limit of dual curves =");
        for c in &self.dual_components {
            out.push_str(&format!("\n  {} * dual(Z({}))", c.multiplicity, print::polyxyz_to_string(&c.curve)));
        }
        for p in &self.pencils {
            let on = p.component.as_ref().map_or("C".to_string(), print::poly_to_string);
            let what = match (&p.source, &p.partner) {
                (PencilSource::Intersection, Some(g)) => format!("Z({on}).Z({})", print::poly_to_string(g)),
                (PencilSource::ZdRemainder, Some(g)) => format!("Z({on}).Z(Delta = {})", print::poly_to_string(g)),
                (PencilSource::ZdMultiplier, Some(g)) => format!("Z({on}).Z(A = {})", print::poly_to_string(g)),
                (PencilSource::FormalDenominator, _) => format!("formal denominator on Z({on})"),
                _ => format!("formal part on Z({on})"),
            };
            let sign = if p.multiplicity < 0 { "-" } else { "+" };
            out.push_str(&format!(
                "\n  {sign} {} * pencil[{what}]  restriction to L: {}",
                p.multiplicity.unsigned_abs(),
                print::ypoly_to_string(&p.restriction)
            ));
        }
        out.push_str(&format!("\nver = {}  ({})", print::ypoly_to_string(&self.ver), self.method.as_str()));
        out.push_str(&format!("\nDelta'_0 = {}", print::ypoly_to_string(&self.delta_prime_0)));
        match &self.constant {
            Some(k) => out.push_str(&format!("\nconstant = {}", print::rational(k))),
            None => out.push_str("\nconstant = none (cycle does not match Delta'_0)"),
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexPoint {
    #[serde(serialize_with = "crate::report::ser_q")]
    pub x: Q,
    #[serde(serialize_with = "crate::report::ser_q")]
    pub y: Q,
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub component: PolyXY,
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub partner: PolyXY,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerticesReport {
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub ver: QPoly,
    #[serde(serialize_with = "ser_qparts")]
    pub squarefree_parts: Vec<(QPoly, u32)>,
    /// y₀ with ver(y₀) = 0: the lines y = y₀ z through vertices.
    #[serde(serialize_with = "ser_roots")]
    pub vertex_lines: Vec<(Q, u32)>,
    /// Vertices `(x : y : 1)` with rational coordinates.
    pub vertex_points: Vec<VertexPoint>,
    /// Square-free factors of ver with no rational root.
    #[serde(serialize_with = "ser_qparts")]
    pub irrational_factors: Vec<(QPoly, u32)>,
}

fn ser_qparts<S: Serializer>(v: &[(QPoly, u32)], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(p, m)| (print::ypoly_to_string(p), m)))
}

fn ser_roots<S: Serializer>(v: &[(Q, u32)], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(r, m)| (print::rational(r), m)))
}

/// Vertex lines and rational vertex points of a limit cycle.
pub fn vertices_report(cycle: &LimitCycle) -> Result<VerticesReport> {
    let ver = cycle.ver.clone();
    if ver.is_constant() {
        return Ok(VerticesReport {
            ver,
            squarefree_parts: Vec::new(),
            vertex_lines: Vec::new(),
            vertex_points: Vec::new(),
            irrational_factors: Vec::new(),
        });
    }
    // rational roots are read with y as the variable of a univariate poly
    let squarefree_parts: Vec<(QPoly, u32)> = squarefree_qpoly(&ver)?.into_iter().filter(|(p, _)| !p.is_constant()).collect();
    let vertex_lines = rational_roots(&ver);
    let irrational_factors = squarefree_parts
        .iter()
        .filter(|(p, _)| rational_roots(p).is_empty())
        .cloned()
        .collect();
    let f0 = &cycle.special_fiber;
    let mut vertex_points: Vec<VertexPoint> = Vec::new();
    for p in cycle.pencils.iter().filter(|p| p.multiplicity > 0) {
        let (Some(comp), Some(partner)) = (&p.component, &p.partner) else { continue };
        for (y0, _) in &vertex_lines {
            if !p.restriction.eval(y0).is_zero() {
                continue;
            }
            let common = comp.eval_y(y0).gcd_poly(&partner.eval_y(y0));
            if common.is_zero() || common.is_constant() {
                continue;
            }
            for (x0, _) in rational_roots(&common) {
                let on_curve = f0.eval(&x0, y0, &Q::one()).is_zero();
                let on_partner = partner.eval(&x0, y0).is_zero();
                if !(on_curve && on_partner) {
                    return Err(Error::Inconsistency(format!(
                        "vertex ({} : {} : 1) fails substitution",
                        print::rational(&x0),
                        print::rational(y0)
                    )));
                }
                if !vertex_points.iter().any(|v| v.x == x0 && &v.y == y0) {
                    vertex_points.push(VertexPoint { x: x0, y: y0.clone(), component: comp.clone(), partner: partner.clone() });
                }
            }
        }
    }
    vertex_points.sort_by(|a, b| (&a.y, &a.x).cmp(&(&b.y, &b.x)));
    Ok(VerticesReport { ver, squarefree_parts, vertex_lines, vertex_points, irrational_factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::parse::{parse_homogeneous, parse_poly};

    fn hom(text: &str, n: u32, trunc: usize) -> HomogeneousFamily {
        parse_homogeneous(text, n, trunc).unwrap()
    }

    fn qp(v: &[i64]) -> QPoly {
        QPoly::new(v.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn coordinate_conditions() {
        let cusp = check_coordinates(&hom("x^2*z - y^3", 3, 0));
        assert!(!cusp.point_condition && !cusp.passed);
        let m = cusp.suggested_transform.clone().unwrap();
        let moved = hom("x^2*z - y^3", 3, 0).transform(&m).unwrap();
        assert!(check_coordinates(&moved).passed);
        let fermat = check_coordinates(&hom("x^3 + y^3 + z^3", 3, 0));
        assert!(fermat.passed && fermat.suggested_transform.is_none());
        let split = check_coordinates(&hom("x^2*(x + z)", 3, 0));
        assert!(split.point_condition && !split.tangency_proxy);
    }

    #[test]
    fn dehomogenize_examples() {
        let f = dehomogenize(&hom("x^3 + y^2*z*t", 3, 1)).unwrap();
        assert_eq!(f.coeff(1), parse_poly("y^2").unwrap());
        let f = dehomogenize(&hom("x^2*(x + z) + z^3*t", 3, 1)).unwrap();
        assert_eq!(f.f0(), &parse_poly("x^2*(x+1)").unwrap());
        assert_eq!(f.coeff(1), PolyXY::one());
        let f = dehomogenize(&hom("2*x^3 + y^3 + z^3", 3, 0)).unwrap();
        assert_eq!(f.f0(), &parse_poly("x^3 + 1/2*y^3 + 1/2").unwrap());
        assert!(dehomogenize(&hom("x^2*z - y^3", 3, 0)).is_err());
    }

    #[test]
    fn first_kind_cycle() {
        let c = limit_dual_cycle(&hom("x^2*(x + z) + z^3*t", 3, 1), None, Backend::Exact).unwrap();
        assert_eq!(c.dual_components.len(), 2);
        let mults: Vec<u32> = c.dual_components.iter().map(|d| d.multiplicity).collect();
        assert!(mults.contains(&2) && mults.contains(&1));
        assert_eq!(c.ver, qp(&[-4]));
        assert_eq!(c.delta_prime_0, qp(&[-4]));
        assert!(c.consistent && c.degrees_balance);
        assert!(c.pencils.iter().any(|p| p.source == PencilSource::Intersection && p.restriction.is_constant()));
    }

    #[test]
    fn smooth_special_fiber() {
        let c = limit_dual_cycle(&hom("x^3 + y^3 + z^3 + x*y*z*t", 3, 1), None, Backend::Exact).unwrap();
        assert_eq!(c.dual_components.len(), 1);
        assert_eq!(c.dual_components[0].multiplicity, 1);
        assert!(c.pencils.is_empty());
        assert_eq!(c.ver, qp(&[1]));
        assert_eq!(c.constant, Some(q(1)));
        assert!(vertices_report(&c).unwrap().vertex_lines.is_empty());
    }

    #[test]
    fn zd_pencils_multiply_to_ver() {
        let c = limit_dual_cycle(&hom("x^2*(x + z) + (x + 2*z)*z^2*t", 3, 1), None, Backend::Exact).unwrap();
        assert_eq!(c.ver, qp(&[-8]));
        assert!(c.pencils.iter().any(|p| p.source == PencilSource::ZdRemainder));
        let prod = c.pencils.iter().fold(qp(&[1]), |acc, p| {
            if p.multiplicity >= 0 {
                acc.mul_poly(&p.restriction.pow_u(p.multiplicity as u32))
            } else {
                acc.exact_div_poly(&p.restriction.pow_u(p.multiplicity.unsigned_abs() as u32)).unwrap()
            }
        });
        assert_eq!(prod.deg(), 0);
        assert_eq!(prod.coeff(0), q(2));
        assert!(c.consistent);
        assert!(c.homogeneous_zd.iter().all(|z| z.degrees_ok));
    }

    #[test]
    fn first_kind_vertices_over_qy() {
        // F = x^2 (x + z) + (y - z)(y + 2z) z t: vertices on Z(x) at y = 1 and y = -2
        let h = hom("x^2*(x + z) + (y - z)*(y + 2*z)*z*t", 3, 1);
        let c = limit_dual_cycle(&h, None, Backend::Exact).unwrap();
        assert!(c.consistent);
        let v = vertices_report(&c).unwrap();
        let ys: Vec<Q> = v.vertex_lines.iter().map(|(y, _)| y.clone()).collect();
        assert_eq!(ys, vec![q(-2), q(1)]);
        let pts: Vec<(Q, Q)> = v.vertex_points.iter().map(|p| (p.x.clone(), p.y.clone())).collect();
        assert_eq!(pts, vec![(q(0), q(-2)), (q(0), q(1))]);
    }
}
