//! Leading coefficients of the generalized formal discriminant at each root
//! of a component, and the product formula that reassembles Δ'₀ from them.
//!
//! Everything here works on the x-monic normalization `F / λ` with
//! `λ = lc_x(F_0)`; the product formula then picks up `λ^(2n'-2)`.

use num_traits::One;
use serde::{Serialize, Serializer};

use super::series::discriminant_series;
use crate::arith::numeric::rel_gap_log2;
use crate::arith::{Cplx, PolyXY, QPoly, Ring, TruncatedFamily, Q, DEFAULT_PRECISION_BITS};
use crate::elim::{discriminant, resultant, squarefree_decompose};
use crate::error::{Error, Result};
use crate::newton::{
    expand_branches_exact, expand_branches_numeric, separation_orders, Backend, BranchCoeff, BranchSet,
};
use crate::parse::print;

/// Relative tolerance used when the comparison runs on numeric branches.
pub const NUMERIC_REL_TOL: f64 = 1e-9;

/// An exact rational or a high-precision complex number.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Q),
    Numeric(Cplx),
}

impl Scalar {
    pub fn text(&self) -> String {
        match self {
            Scalar::Exact(v) => print::rational(v),
            Scalar::Numeric(c) => print::complex(c),
        }
    }

    pub fn to_cplx(&self, prec: u32) -> Cplx {
        match self {
            Scalar::Exact(v) => Cplx::from_q(v, prec),
            Scalar::Numeric(c) => c.clone(),
        }
    }

    pub fn as_exact(&self) -> Option<&Q> {
        match self {
            Scalar::Exact(v) => Some(v),
            Scalar::Numeric(_) => None,
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.text())
    }
}

trait IntoScalar {
    fn into_scalar(self) -> Scalar;
}

impl IntoScalar for Q {
    fn into_scalar(self) -> Scalar {
        Scalar::Exact(self)
    }
}

impl IntoScalar for Cplx {
    fn into_scalar(self) -> Scalar {
        Scalar::Numeric(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GfdMethod {
    BranchExact,
    BranchNumeric,
    ZdClosedForm,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GfdValue {
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub component: PolyXY,
    pub multiplicity: u32,
    pub root: Scalar,
    pub value: Scalar,
    pub method: GfdMethod,
}

/// Largest `n` with `f^n | g`.
fn multiplicity_in(f: &PolyXY, g: &PolyXY) -> (u32, PolyXY) {
    let mut n = 0;
    let mut rest = g.clone();
    while let Some(q) = rest.exact_div(f) {
        rest = q;
        n += 1;
    }
    (n, rest)
}

fn eval_at<K: BranchCoeff>(p: &QPoly, c: &K, prec: u32) -> K {
    p.coeffs()
        .iter()
        .rev()
        .fold(K::zero(), |acc, a| acc.mul(c).add(&K::from_q(a, prec)))
}

fn prec_of<K>(b: &BranchSet<K>) -> u32 {
    match b.backend {
        Backend::Exact => 0,
        Backend::Numeric { precision_bits, .. } => precision_bits,
    }
}

/// Per-root values for one monic, square-free component of the monic
/// family `fbar`. The branch set must have been expanded from `fbar`.
fn component_values<K: BranchCoeff + IntoScalar>(
    fbar: &TruncatedFamily,
    comp: &PolyXY,
    b: &BranchSet<K>,
    method: GfdMethod,
) -> Result<Vec<GfdValue>> {
    let prec = prec_of(b);
    let (n, rest) = multiplicity_in(comp, fbar.f0());
    if n == 0 {
        return Err(Error::hyp(format!(
            "{} does not divide F_0",
            print::poly_to_string(comp)
        )));
    }
    let r = rest.to_x_poly().ok_or_else(|| Error::Unsupported("component data depends on y".into()))?;
    let fprime = comp
        .derivative_x()
        .to_x_poly()
        .ok_or_else(|| Error::Unsupported("component data depends on y".into()))?;
    let on = b.branches_on(comp);
    let mut centers: Vec<usize> = on.iter().map(|&i| b.center_of[i]).collect();
    centers.sort_unstable();
    centers.dedup();
    if centers.len() != comp.deg_x() {
        return Err(Error::hyp(format!(
            "roots not distinct: {} has {} distinct branch centers, expected {}",
            print::poly_to_string(comp),
            centers.len(),
            comp.deg_x()
        )));
    }
    let seps = separation_orders(b);
    let mut out = Vec::new();
    for c in centers {
        let members: Vec<usize> = on.iter().copied().filter(|&i| b.center_of[i] == c).collect();
        if members.len() != n as usize {
            return Err(Error::Inconsistency(format!(
                "{} branches at a root of multiplicity {n}",
                members.len()
            )));
        }
        let a = &b.centers[c];
        let mut v = eval_at(&r, a, prec)
            .pow(2 * n - 2)
            .mul(&eval_at(&fprime, a, prec).pow(n * (n - 1)));
        for (k, &i) in members.iter().enumerate() {
            for &j in &members[k + 1..] {
                let m = seps
                    .get(i, j)
                    .ok_or_else(|| Error::Inconsistency("missing separation order".into()))?;
                let (si, sj) = (&b.branches[i], &b.branches[j]);
                if *m >= si.known_order || *m >= sj.known_order {
                    return Err(Error::trunc(format!(
                        "insufficient depth: branches {} and {} separate at t^({}) beyond their certified order",
                        i + 1,
                        j + 1,
                        print::rational(m)
                    )));
                }
                let d = si.coeff(m).sub(&sj.coeff(m));
                v = v.mul(&d).mul(&d);
            }
        }
        out.push(GfdValue {
            component: comp.clone(),
            multiplicity: n,
            root: a.clone().into_scalar(),
            value: v.into_scalar(),
            method,
        });
    }
    Ok(out)
}

enum Branches {
    Exact(BranchSet<Q>),
    Numeric(BranchSet<Cplx>),
}

/// Exact branches when every characteristic root is rational and the
/// backend allows it, numeric branches otherwise.
fn branches_for(fbar: &TruncatedFamily, backend: Backend) -> Result<Branches> {
    if backend == Backend::Exact {
        match expand_branches_exact(fbar, None) {
            Ok(b) => return Ok(Branches::Exact(b)),
            Err(Error::Unsupported(_)) => {
                return expand_branches_numeric(fbar, Backend::numeric(DEFAULT_PRECISION_BITS), None)
                    .map(Branches::Numeric)
            }
            Err(e) => return Err(e),
        }
    }
    expand_branches_numeric(fbar, backend, None).map(Branches::Numeric)
}

fn values_for(fbar: &TruncatedFamily, comp: &PolyXY, b: &Branches) -> Result<Vec<GfdValue>> {
    match b {
        Branches::Exact(b) => component_values(fbar, comp, b, GfdMethod::BranchExact),
        Branches::Numeric(b) => component_values(fbar, comp, b, GfdMethod::BranchNumeric),
    }
}

fn monic_component(comp: &PolyXY) -> Result<PolyXY> {
    if comp.deg_x() == 0 {
        return Err(Error::hyp("component must have positive x-degree"));
    }
    comp.monic_x()
        .ok_or_else(|| Error::hyp("component must have a constant x-leading coefficient"))
}

/// Leading coefficients `Δ(F, f_ν)(a, t)₀` at every root `a` of `component`.
pub fn gfd_leading(f: &TruncatedFamily, component: &PolyXY, backend: Backend) -> Result<Vec<GfdValue>> {
    if !f.is_y_free() {
        return Err(Error::Unsupported("branch-based values need a family over Q".into()));
    }
    let (fbar, _) = f.monic_normalized()?;
    let comp = monic_component(component)?;
    let b = branches_for(&fbar, backend)?;
    values_for(&fbar, &comp, &b)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentFactor {
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub component: PolyXY,
    pub multiplicity: u32,
    #[serde(serialize_with = "crate::report::ser_q")]
    pub discriminant: Q,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossFactor {
    pub pair: (usize, usize),
    #[serde(serialize_with = "crate::report::ser_q")]
    pub resultant: Q,
    pub exponent: i64,
}

/// Both sides of `Δ'₀ = λ^(2n'-2) ∏ gfd · ∏ Δ(f_ν)^(n_ν) · ∏ res(f_ν, f_ν')^(2(n_ν+n_ν'-n_ν n_ν'))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProductCheck {
    #[serde(serialize_with = "crate::report::ser_q")]
    pub oracle: Q,
    #[serde(serialize_with = "crate::report::ser_q")]
    pub leading_coefficient: Q,
    pub components: Vec<ComponentFactor>,
    pub cross: Vec<CrossFactor>,
    pub gfd: Vec<GfdValue>,
    pub gfd_product: Scalar,
    pub product: Scalar,
    pub method: GfdMethod,
    /// log2 of the relative gap in numeric mode.
    pub rel_gap_log2: Option<f64>,
    pub matches: bool,
}

impl ProductCheck {
    /// Turns a mismatch into an inconsistency error naming both sides.
    pub fn ensure(self) -> Result<ProductCheck> {
        if self.matches {
            Ok(self)
        } else {
            Err(Error::Inconsistency(format!(
                "product formula mismatch: oracle Δ'₀ = {}, product = {}",
                print::rational(&self.oracle),
                self.product.text()
            )))
        }
    }
}

fn pow_signed(v: &Q, e: i64) -> Q {
    let p = num_traits::pow(v.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        <Q as One>::one() / p
    } else {
        p
    }
}

/// Components of the monic special fiber; uses `given` when supplied, the
/// square-free decomposition otherwise.
pub fn special_fiber_components(f: &TruncatedFamily, given: Option<&[(PolyXY, u32)]>) -> Result<Vec<(PolyXY, u32)>> {
    let (fbar, _) = f.monic_normalized()?;
    let comps = match given {
        Some(g) => g
            .iter()
            .map(|(p, n)| Ok((monic_component(p)?, *n)))
            .collect::<Result<Vec<_>>>()?,
        None => squarefree_decompose(fbar.f0())?.parts,
    };
    let prod = comps.iter().fold(PolyXY::one(), |acc, (p, n)| acc.mul(&p.pow(*n)));
    if &prod != fbar.f0() {
        return Err(Error::hyp("supplied factors do not multiply to the monic F_0"));
    }
    for (i, (p, _)) in comps.iter().enumerate() {
        if p.gcd(&p.derivative_x()).deg_x() > 0 {
            return Err(Error::hyp(format!("component {} is not square-free", print::poly_to_string(p))));
        }
        for (q, _) in &comps[i + 1..] {
            if p.gcd(q).deg_x() > 0 {
                return Err(Error::hyp("components are not pairwise coprime"));
            }
        }
    }
    Ok(comps)
}

/// Compares the oracle Δ'₀ with the product formula built from branch data.
pub fn verify_product_formula(
    f: &TruncatedFamily,
    given: Option<&[(PolyXY, u32)]>,
    backend: Backend,
) -> Result<ProductCheck> {
    if !f.is_y_free() {
        return Err(Error::Unsupported("the product check needs a family over Q".into()));
    }
    let oracle = discriminant_series(f)?.delta_prime_0.coeff(0);
    let (fbar, lambda) = f.monic_normalized()?;
    let comps = special_fiber_components(f, given)?;
    let b = branches_for(&fbar, backend)?;
    let mut gfd = Vec::new();
    for (p, _) in &comps {
        gfd.extend(values_for(&fbar, p, &b)?);
    }
    let n_total = f.x_degree() as u32;
    let mut rational = num_traits::pow(lambda.clone(), (2 * n_total.max(1) - 2) as usize);
    let mut components = Vec::new();
    for (p, n) in &comps {
        let d = discriminant(&p.to_x_poly().expect("y-free"));
        rational *= num_traits::pow(d.clone(), *n as usize);
        components.push(ComponentFactor { component: p.clone(), multiplicity: *n, discriminant: d });
    }
    let mut cross = Vec::new();
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            let (ni, nj) = (comps[i].1 as i64, comps[j].1 as i64);
            let e = 2 * (ni + nj - ni * nj);
            let r = resultant(
                &comps[i].0.to_x_poly().expect("y-free"),
                &comps[j].0.to_x_poly().expect("y-free"),
            );
            rational *= pow_signed(&r, e);
            cross.push(CrossFactor { pair: (i, j), resultant: r, exponent: e });
        }
    }
    let (method, gfd_product, product, gap, matches) = match &b {
        Branches::Exact(_) => {
            let g = gfd
                .iter()
                .fold(<Q as One>::one(), |acc, v| acc * v.value.as_exact().expect("exact values"));
            let p = &g * &rational;
            let ok = p == oracle;
            (GfdMethod::BranchExact, Scalar::Exact(g), Scalar::Exact(p), None, ok)
        }
        Branches::Numeric(bs) => {
            let prec = prec_of(bs);
            let g = gfd
                .iter()
                .fold(Cplx::one(), |acc, v| acc.mul(&v.value.to_cplx(prec)));
            let p = g.mul(&Cplx::from_q(&rational, prec));
            let gap = rel_gap_log2(&p, &Cplx::from_q(&oracle, prec));
            let ok = gap < NUMERIC_REL_TOL.log2();
            (GfdMethod::BranchNumeric, Scalar::Numeric(g), Scalar::Numeric(p), Some(gap), ok)
        }
    };
    Ok(ProductCheck {
        oracle,
        leading_coefficient: lambda,
        components,
        cross,
        gfd,
        gfd_product,
        product,
        method,
        rel_gap_log2: gap,
        matches,
    })
}
