use num_traits::ToPrimitive;
use serde::Serialize;

use super::node::hull_chain;
use crate::arith::{PolyXY, QPoly, TruncatedFamily, UPoly, Q};
use crate::error::{Error, Result};
use crate::parse::print;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NewtonPolygonData {
    /// Lattice points `(i, j)`: `t^i x^j` has a nonzero coefficient.
    pub support: Vec<(usize, usize)>,
    /// Vertices of the compact lower boundary, starting at `(0, d)`.
    pub hull_vertices: Vec<(usize, usize)>,
    pub d: usize,
    #[serde(serialize_with = "crate::report::ser_opt_q")]
    pub m1: Option<Q>,
}

impl NewtonPolygonData {
    /// `m` for each compact edge (the edge has slope `-1/m`).
    pub fn edge_ms(&self) -> Vec<Q> {
        self.hull_vertices
            .windows(2)
            .map(|w| {
                Q::new(
                    ((w[1].0 - w[0].0) as i64).into(),
                    ((w[0].1 - w[1].1) as i64).into(),
                )
            })
            .collect()
    }
}

pub fn newton_polygon(f: &TruncatedFamily) -> NewtonPolygonData {
    let mut support = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        for j in 0..=c.deg_x() {
            if !c.coeff_x(j).is_zero() {
                support.push((i, j));
            }
        }
    }
    support.sort();
    let d = f.f0().as_upoly().valuation().unwrap_or(0);
    let hull_vertices = if d == 0 { vec![(0, 0)] } else { hull_chain(&support) };
    let m1 = (hull_vertices.len() >= 2).then(|| {
        let (a, b) = (hull_vertices[0], hull_vertices[1]);
        Q::new(((b.0 - a.0) as i64).into(), ((a.1 - b.1) as i64).into())
    });
    NewtonPolygonData {
        support,
        hull_vertices,
        d,
        m1,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TruncationData {
    /// `F1' = Σ a_(m1(d-j), j) t^(m1(d-j)) x^j`.
    #[serde(serialize_with = "ser_family")]
    pub f1prime: TruncatedFamily,
    /// `P(s) = Σ a_(m1(d-j), j) s^j`, coefficients in Q[y].
    #[serde(serialize_with = "ser_char_poly")]
    pub char_poly: UPoly<QPoly>,
}

fn ser_family<S: serde::Serializer>(f: &TruncatedFamily, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&print::family_to_string(f))
}

fn ser_char_poly<S: serde::Serializer>(p: &UPoly<QPoly>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&char_poly_to_string(p))
}

pub fn char_poly_to_string(p: &UPoly<QPoly>) -> String {
    print::poly_named(&PolyXY::from_upoly(p.clone()), "s")
}

pub fn first_truncation(f: &TruncatedFamily) -> Result<TruncationData> {
    let poly = newton_polygon(f);
    if poly.d == 0 {
        return Err(Error::hyp("d = 0: x does not divide F_0, no leading edge"));
    }
    let m1 = poly
        .m1
        .clone()
        .ok_or_else(|| Error::hyp(format!("x^{} divides F(t): no leading edge", poly.d)))?;
    let reach = &m1 * Q::from_integer((poly.d as i64).into());
    if reach > Q::from_integer((f.trunc() as i64).into()) {
        return Err(Error::trunc("leading edge requires t-orders beyond truncation"));
    }
    let mut rows = vec![PolyXY::zero(); f.trunc() + 1];
    let mut cp = vec![QPoly::zero(); poly.d + 1];
    for j in 0..=poly.d {
        let i = &m1 * Q::from_integer(((poly.d - j) as i64).into());
        if !i.is_integer() {
            continue;
        }
        let i = i.to_integer().to_usize().expect("within truncation");
        let a = f.coeff(i).coeff_x(j);
        if a.is_zero() {
            continue;
        }
        rows[i] = rows[i].add(&PolyXY::from_upoly(UPoly::monomial(a.clone(), j)));
        cp[j] = a;
    }
    let trunc = f.trunc();
    Ok(TruncationData {
        f1prime: TruncatedFamily::raw(rows, trunc),
        char_poly: UPoly::new(cp),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qr};
    use crate::parse::{parse_family_exact, parse_poly};

    #[test]
    fn spec_polygons() {
        let p = newton_polygon(&parse_family_exact("x^2*(x+1) + (x+2)*t").unwrap());
        assert_eq!(p.support, vec![(0, 2), (0, 3), (1, 0), (1, 1)]);
        assert_eq!((p.d, p.m1.clone()), (2, Some(qr(1, 2))));
        assert_eq!(p.hull_vertices, vec![(0, 2), (1, 0)]);

        let p = newton_polygon(&parse_family_exact("x^3 + 5*x*t").unwrap());
        assert_eq!((p.d, p.m1.clone()), (3, Some(qr(1, 2))));
        assert_eq!(p.hull_vertices, vec![(0, 3), (1, 1)]);

        let p = newton_polygon(&parse_family_exact("x^2 + t^2").unwrap());
        assert_eq!((p.d, p.m1), (2, Some(q(1))));

        let p = newton_polygon(&parse_family_exact("x^2 - 1 + t").unwrap());
        assert_eq!((p.d, p.m1), (0, None));
    }

    #[test]
    fn polygon_scale_invariant() {
        let f = parse_family_exact("x^2*(x+1) + (x+2)*t + x*t^2").unwrap();
        assert_eq!(newton_polygon(&f), newton_polygon(&f.scale(&qr(-7, 3))));
    }

    #[test]
    fn spec_truncations() {
        let t = first_truncation(&parse_family_exact("x^2*(x+1) + (x+2)*t").unwrap()).unwrap();
        assert_eq!(char_poly_to_string(&t.char_poly), "s^2 + 2");
        let t = first_truncation(&parse_family_exact("x^2 + 2*t").unwrap()).unwrap();
        assert_eq!(char_poly_to_string(&t.char_poly), "s^2 + 2");
        // third kind shape x^2 a0 + x^3 a1 + 2 x b0 t + x^2 b1 t + c0 t^2 + x c1 t^2 + d1 t^3
        let f = parse_family_exact("x^2 + x^3 + 2*x*t + 3*x^2*t + t^2 + 5*x*t^2 + 2*t^3").unwrap();
        let t = first_truncation(&f).unwrap();
        assert_eq!(print::family_to_string(&t.f1prime), "x^2 + 2*x*t + t^2");
        assert_eq!(t.char_poly.deg(), 2);
        let f = parse_family_exact("y*x^2 + x*t + (y + 1)*t^2").unwrap();
        let t = first_truncation(&f).unwrap();
        assert_eq!(
            PolyXY::from_upoly(t.char_poly),
            parse_poly("y*x^2 + x + y + 1").unwrap()
        );
    }

    #[test]
    fn truncation_reach() {
        let f = crate::parse::parse_family("x^2 + x*t^2", 2).unwrap();
        assert!(matches!(first_truncation(&f), Err(Error::Truncation(_))));
        let f = crate::parse::parse_family("x^2 + x*t", 3).unwrap();
        assert!(first_truncation(&f).is_ok());
    }
}
