//! Largest separation order for one component, computed over Q[y] without
//! extracting roots: the recursion only follows repeated characteristic
//! roots, which must lie in Q[y].

use serde::Serialize;

use super::branches::DEPTH_CAP;
use super::node::Node;
use crate::arith::{PolyXY, QPoly, TruncatedFamily, UPoly, Q};
use crate::elim::{discriminant, split_over_q};
use crate::error::{Error, Result};
use crate::parse::print;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymbolicSeparation {
    /// Largest `m(i, j)` over pairs of branches centered at roots of the
    /// component; `None` when the component carries a single branch per
    /// center.
    #[serde(serialize_with = "crate::report::ser_opt_q")]
    pub m: Option<Q>,
    /// Nonzero polynomials in y; the result holds for every y outside
    /// their common zero set.
    #[serde(serialize_with = "ser_polys")]
    pub certificates: Vec<QPoly>,
}

fn ser_polys<S: serde::Serializer>(v: &[QPoly], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(print::ypoly_to_string))
}

/// Roots of a component `f` that the symbolic route can handle: a linear
/// factor with root in Q[y], or a y-free factor splitting over Q.
fn component_roots(f: &PolyXY) -> Result<Vec<QPoly>> {
    if f.deg_x() == 1 {
        let (a0, a1) = (f.coeff_x(0), f.coeff_x(1));
        let r = a0
            .neg_poly()
            .exact_div_poly(&a1)
            .ok_or_else(|| Error::Unsupported("component root is not a polynomial in y".into()))?;
        return Ok(vec![r]);
    }
    let p = f
        .to_x_poly()
        .ok_or_else(|| Error::Unsupported("symbolic route needs a linear component over Q[y]".into()))?;
    let roots = split_over_q(&p)
        .ok_or_else(|| Error::Unsupported("component has irrational roots; symbolic route unavailable".into()))?;
    Ok(roots.into_iter().map(|(r, _)| QPoly::constant(r)).collect())
}

pub fn separation_orders_symbolic(f: &TruncatedFamily, component: &PolyXY) -> Result<SymbolicSeparation> {
    if component.deg_x() == 0 {
        return Err(Error::hyp("component must have positive x-degree"));
    }
    let mut certs = Vec::new();
    let root = Node::from_rows(f.rows_over_qy(), f.trunc() + 1, 0);
    let mut best: Option<Q> = None;
    for a in component_roots(component)? {
        let f0: UPoly<QPoly> = UPoly::new(root.coeffs.iter().map(|r| r[0].clone()).collect());
        let k = f0.taylor_shift(&a).valuation().unwrap_or(0);
        if k == 0 {
            return Err(Error::hyp("component root is not a root of F_0"));
        }
        let node = root.recenter(&a, k)?;
        best = max_opt(best, max_separation(&node, &mut certs, 1)?);
    }
    certs.retain(|c| !c.is_constant());
    certs.sort_by(|a, b| (a.deg(), a.coeffs()).cmp(&(b.deg(), b.coeffs())));
    certs.dedup();
    Ok(SymbolicSeparation { m: best, certificates: certs })
}

fn max_opt(a: Option<Q>, b: Option<Q>) -> Option<Q> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn max_separation(node: &Node<QPoly>, certs: &mut Vec<QPoly>, level: usize) -> Result<Option<Q>> {
    if node.d <= 1 {
        return Ok(None);
    }
    if level > DEPTH_CAP {
        return Err(Error::trunc(format!(
            "non-separating family: branches still coincide after {DEPTH_CAP} polygon iterations"
        )));
    }
    let edges = node.polygon();
    let mut best: Option<Q> = None;
    let mut slopes = Vec::new();
    for edge in &edges {
        let expo = node.t_exponent(&edge.lambda);
        slopes.push(expo.clone());
        if edge.open {
            if edge.branch_count() >= 2 {
                return Err(Error::trunc(format!(
                    "insufficient depth: {} branches undetermined beyond t^({})",
                    edge.branch_count(),
                    print::rational(&expo)
                )));
            }
            continue;
        }
        let p = UPoly::new(edge.char_poly.clone());
        certs.push(p.lc());
        certs.push(p.coeff(0));
        let g = p.gcd_poly(&p.derivative());
        let distinct = p.deg() - g.deg();
        if g.deg() == 0 {
            certs.push(discriminant(&p));
        } else {
            let sqf = p.exact_div_poly(&g).expect("gcd divides");
            if sqf.deg() >= 1 {
                certs.push(discriminant(&sqf));
            }
            for c in repeated_roots(&g)? {
                let lin = UPoly::new(vec![c.neg_poly(), QPoly::constant(Q::from_integer(1.into()))]);
                let mut k = 0;
                let mut rest = p.clone();
                while let Some(qt) = rest.exact_div_poly(&lin) {
                    rest = qt;
                    k += 1;
                }
                let child = node.substitute(&edge.lambda, edge.from, &c, k)?;
                best = max_opt(best, max_separation(&child, certs, level + 1)?);
            }
        }
        if distinct >= 2 {
            best = max_opt(best, Some(expo));
        }
    }
    // branches on different edges separate at the smaller slope
    if slopes.len() >= 2 {
        best = max_opt(best, Some(slopes[slopes.len() - 2].clone()));
    }
    Ok(best)
}

/// Distinct roots of `g` (the repeated part of a characteristic polynomial)
/// when they all lie in Q[y].
fn repeated_roots(g: &UPoly<QPoly>) -> Result<Vec<QPoly>> {
    let h = g.exact_div_poly(&g.gcd_poly(&g.derivative())).expect("gcd divides");
    if h.deg() == 1 {
        let r = h
            .coeff(0)
            .neg_poly()
            .exact_div_poly(&h.coeff(1))
            .ok_or_else(irrational)?;
        return Ok(vec![r]);
    }
    if h.coeffs().iter().all(|c| c.is_constant()) {
        let hq = QPoly::new(h.coeffs().iter().map(|c| c.coeff(0)).collect());
        let roots = split_over_q(&hq).ok_or_else(irrational)?;
        return Ok(roots.into_iter().map(|(r, _)| QPoly::constant(r)).collect());
    }
    Err(irrational())
}

fn irrational() -> Error {
    Error::Unsupported("repeated irrational characteristic root; use the numeric backend".into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qr};
    use crate::parse::{parse_family_exact, parse_poly};

    fn m(text: &str, comp: &str) -> Option<Q> {
        let f = parse_family_exact(text).unwrap();
        separation_orders_symbolic(&f, &parse_poly(comp).unwrap()).unwrap().m
    }

    #[test]
    fn spec_examples() {
        // Example 4.9(c) shape with C2 = 1, F3 = 1
        assert_eq!(m("x^3 + x*t^2 + t^3", "x"), Some(q(1)));
        // Example 4.9(e) shape with C1 = 1, F2 = 1
        assert_eq!(m("x^2*y + x*t + t^2", "x"), Some(q(1)));
        assert_eq!(m("x^2 + 2*t", "x"), Some(qr(1, 2)));
    }

    #[test]
    fn repeated_root_recursion() {
        // (x + t)^2 + t^3 separates at t^(3/2)
        assert_eq!(m("x^2 + 2*x*t + t^2 + t^3", "x"), Some(qr(3, 2)));
        // second kind: m = 1; third kind: m = 3/2
        assert_eq!(m("x^3 + x^2 + 2*x*t - t^2", "x"), Some(q(1)));
        assert_eq!(m("x^2 + x^3 + 2*x*t + t^2 + 2*t^3", "x"), Some(qr(3, 2)));
    }

    #[test]
    fn recentered_component_over_qy() {
        // (x - y)^2 + t (x + 1): the double root x = y
        assert_eq!(m("(x - y)^2*(x + 1) + t*(x + 1)", "x - y"), Some(qr(1, 2)));
        let f = parse_family_exact("(x - y)^2 + t*y").unwrap();
        let s = separation_orders_symbolic(&f, &parse_poly("x - y").unwrap()).unwrap();
        assert_eq!(s.m, Some(qr(1, 2)));
        assert!(!s.certificates.is_empty());
    }

    #[test]
    fn simple_component_has_no_pairs() {
        assert_eq!(m("x^2*(x+1) + (x+2)*t", "x + 1"), None);
    }
}
