//! Zeuthen's three kinds of families and their closed-form vertices.
//!
//! All shapes are read off the x-monic normalization `F / lc_x(F_0)`.

use serde::Serialize;

use crate::arith::{PolyXY, QPoly, TruncatedFamily, Q};
use crate::error::{Error, Result};
use crate::parse::print;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    First,
    Second,
    Third,
    Other,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::First => "first",
            Kind::Second => "second",
            Kind::Third => "third",
            Kind::Other => "other",
        }
    }
}

/// Coefficients of the third-kind shape
/// `x^2 a0 + x^3 a1 + 2 x b0 t + x^2 b1 t + c0 t^2 + x c1 t^2 + d1 t^3`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThirdKindData {
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub a0: QPoly,
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub a1: QPoly,
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub b0: QPoly,
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub b1: QPoly,
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub c0: QPoly,
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub c1: QPoly,
    #[serde(serialize_with = "crate::report::ser_ypoly")]
    pub d1: QPoly,
}

impl ThirdKindData {
    /// `-a1 b0^3 + b1 b0^2 a0 - c1 b0 a0^2 + d1 a0^3`.
    pub fn k(&self) -> QPoly {
        let (a0, b0) = (&self.a0, &self.b0);
        let b02 = b0.mul_poly(b0);
        let a02 = a0.mul_poly(a0);
        self.a1
            .mul_poly(&b02.mul_poly(b0))
            .neg_poly()
            .add_poly(&self.b1.mul_poly(&b02).mul_poly(a0))
            .sub_poly(&self.c1.mul_poly(b0).mul_poly(&a02))
            .add_poly(&self.d1.mul_poly(&a02.mul_poly(a0)))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "shape", rename_all = "lowercase")]
pub enum KindParts {
    /// `x^2 A + B t`.
    First {
        #[serde(serialize_with = "crate::report::ser_poly")]
        a: PolyXY,
        #[serde(serialize_with = "crate::report::ser_poly")]
        b: PolyXY,
    },
    /// `x^2 A + 2 x B t + C t^2`.
    Second {
        #[serde(serialize_with = "crate::report::ser_poly")]
        a: PolyXY,
        #[serde(serialize_with = "crate::report::ser_poly")]
        b: PolyXY,
        #[serde(serialize_with = "crate::report::ser_poly")]
        c: PolyXY,
    },
    Third(ThirdKindData),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypothesisFlag {
    pub name: String,
    pub holds: bool,
}

/// Result of matching a family against the three shapes. `candidate` is the
/// shape the t-coefficients point to; `kind` equals it only when every flag
/// holds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KindPattern {
    pub kind: Kind,
    pub candidate: Kind,
    pub parts: Option<KindParts>,
    pub flags: Vec<HypothesisFlag>,
    #[serde(serialize_with = "crate::report::ser_q")]
    pub leading_coefficient: Q,
}

impl KindPattern {
    pub fn violated(&self) -> Vec<&str> {
        self.flags.iter().filter(|f| !f.holds).map(|f| f.name.as_str()).collect()
    }
}

fn flag(flags: &mut Vec<HypothesisFlag>, name: &str, holds: bool) {
    flags.push(HypothesisFlag { name: name.to_string(), holds });
}

fn at0(p: &PolyXY) -> QPoly {
    p.coeff_x(0)
}

pub fn classify_kind(f: &TruncatedFamily) -> KindPattern {
    let Ok((fbar, lambda)) = f.monic_normalized() else {
        return KindPattern {
            kind: Kind::Other,
            candidate: Kind::Other,
            parts: None,
            flags: vec![HypothesisFlag { name: "x-leading coefficient of F_0 is constant".into(), holds: false }],
            leading_coefficient: Q::from_integer(0.into()),
        };
    };
    let mut flags = Vec::new();
    let f0 = fbar.f0();
    let x2 = PolyXY::x().pow(2);
    let Some(a) = f0.exact_div(&x2) else {
        flag(&mut flags, "x^2 divides F_0", false);
        return KindPattern { kind: Kind::Other, candidate: Kind::Other, parts: None, flags, leading_coefficient: lambda };
    };
    flag(&mut flags, "x^2 divides F_0", true);
    let a0 = at0(&a);
    flag(&mut flags, "A(0) != 0", !a0.is_zero());
    flag(&mut flags, "A square-free", a.gcd(&a.derivative_x()).deg_x() == 0);
    let f1 = fbar.coeff(1);
    let f2 = fbar.coeff(2);
    let (candidate, parts) = if !at0(&f1).is_zero() {
        flag(&mut flags, "F_1 is known (trunc >= 1)", fbar.trunc() >= 1);
        flag(&mut flags, "B(0) != 0", true);
        (Kind::First, KindParts::First { a: a.clone(), b: f1.clone() })
    } else {
        let b = f1
            .exact_div(&PolyXY::x())
            .expect("x divides F_1")
            .scale(&Q::new(1.into(), 2.into()));
        let b0 = at0(&b);
        let c0 = at0(&f2);
        let disc0 = b0.mul_poly(&b0).sub_poly(&a0.mul_poly(&c0));
        if !disc0.is_zero() || fbar.trunc() < 2 {
            flag(&mut flags, "F_2 is known (trunc >= 2)", fbar.trunc() >= 2);
            flag(&mut flags, "A(0)(B(0)^2 - A(0)C(0)) != 0", !disc0.is_zero() && !a0.is_zero());
            (Kind::Second, KindParts::Second { a: a.clone(), b, c: f2.clone() })
        } else {
            let d = ThirdKindData {
                a0: a0.clone(),
                a1: a.coeff_x(1),
                b0,
                b1: f1.coeff_x(2),
                c0,
                c1: f2.coeff_x(1),
                d1: at0(&fbar.coeff(3)),
            };
            flag(&mut flags, "F_3 is known (trunc >= 3)", fbar.trunc() >= 3);
            flag(&mut flags, "b0^2 - a0 c0 = 0", true);
            flag(&mut flags, "a0 K != 0", !a0.is_zero() && !d.k().is_zero());
            (Kind::Third, KindParts::Third(d))
        }
    };
    let ok = flags.iter().all(|f| f.holds);
    KindPattern {
        kind: if ok { candidate } else { Kind::Other },
        candidate,
        parts: Some(parts),
        flags,
        leading_coefficient: lambda,
    }
}

/// ver of the x-monic normalization from the matched closed form.
pub fn kind_vertex_value(p: &KindPattern) -> Result<QPoly> {
    if let Some(v) = p.violated().first() {
        return Err(Error::hyp(format!(
            "{v} ({} kind candidate)",
            p.candidate.as_str()
        )));
    }
    let four = QPoly::constant(Q::from_integer(4.into()));
    match p.parts.as_ref() {
        Some(KindParts::First { a, b }) => {
            let a0 = at0(a);
            Ok(four.neg_poly().mul_poly(&at0(b)).mul_poly(&a0.pow_u(3)))
        }
        Some(KindParts::Second { a, b, c }) => {
            let (a0, b0, c0) = (at0(a), at0(b), at0(c));
            let inner = b0.mul_poly(&b0).sub_poly(&a0.mul_poly(&c0));
            Ok(four.mul_poly(&inner).mul_poly(&a0.mul_poly(&a0)))
        }
        Some(KindParts::Third(d)) => Ok(four.neg_poly().mul_poly(&d.k())),
        None => Err(Error::hyp("family matches none of the three kinds")),
    }
}

pub fn parts_text(p: &KindParts) -> Vec<(String, String)> {
    let y = |v: &QPoly| print::ypoly_to_string(v);
    let x = |v: &PolyXY| print::poly_to_string(v);
    match p {
        KindParts::First { a, b } => vec![("A".into(), x(a)), ("B".into(), x(b))],
        KindParts::Second { a, b, c } => vec![("A".into(), x(a)), ("B".into(), x(b)), ("C".into(), x(c))],
        KindParts::Third(d) => vec![
            ("a0".into(), y(&d.a0)),
            ("a1".into(), y(&d.a1)),
            ("b0".into(), y(&d.b0)),
            ("b1".into(), y(&d.b1)),
            ("c0".into(), y(&d.c0)),
            ("c1".into(), y(&d.c1)),
            ("d1".into(), y(&d.d1)),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::parse::{parse_family_exact, parse_poly};

    fn qc(v: i64) -> QPoly {
        QPoly::constant(q(v))
    }

    #[test]
    fn first_kind() {
        let p = classify_kind(&parse_family_exact("x^2*(x+1) + (x+2)*t").unwrap());
        assert_eq!(p.kind, Kind::First);
        assert_eq!(
            p.parts,
            Some(KindParts::First { a: parse_poly("x + 1").unwrap(), b: parse_poly("x + 2").unwrap() })
        );
        assert_eq!(kind_vertex_value(&p).unwrap(), qc(-8));
    }

    #[test]
    fn second_kind() {
        let p = classify_kind(&parse_family_exact("x^3 + x^2 + 2*x*t - t^2").unwrap());
        assert_eq!(p.kind, Kind::Second);
        assert_eq!(
            p.parts,
            Some(KindParts::Second {
                a: parse_poly("x + 1").unwrap(),
                b: parse_poly("1").unwrap(),
                c: parse_poly("-1").unwrap()
            })
        );
        assert_eq!(kind_vertex_value(&p).unwrap(), qc(8));
    }

    #[test]
    fn third_kind() {
        let p = classify_kind(&parse_family_exact("x^2 + x^3 + 2*x*t + t^2 + 2*t^3").unwrap());
        assert_eq!(p.kind, Kind::Third);
        let Some(KindParts::Third(d)) = &p.parts else { panic!() };
        let got: Vec<QPoly> = vec![&d.a0, &d.a1, &d.b0, &d.b1, &d.c0, &d.c1, &d.d1].into_iter().cloned().collect();
        assert_eq!(got, [1, 1, 1, 0, 1, 0, 2].map(qc).to_vec());
        assert_eq!(kind_vertex_value(&p).unwrap(), qc(-4));
    }

    #[test]
    fn violated_hypothesis_is_named() {
        // A = x, so A(0) = 0
        let p = classify_kind(&parse_family_exact("x^3 + (x+2)*t").unwrap());
        assert_eq!((p.kind, p.candidate), (Kind::Other, Kind::First));
        let e = kind_vertex_value(&p).unwrap_err();
        assert!(matches!(&e, Error::Hypothesis(m) if m.contains("A(0) != 0")), "{e}");
        let p = classify_kind(&parse_family_exact("x*(x+1) + t").unwrap());
        assert_eq!((p.kind, p.candidate), (Kind::Other, Kind::Other));
    }

    #[test]
    fn normalization_and_y_coefficients() {
        // 3 x^2 (x + 1) + (x + 2) t: the monic family has B = (x + 2)/3
        let p = classify_kind(&parse_family_exact("3*x^2*(x+1) + (x+2)*t").unwrap());
        assert_eq!(p.leading_coefficient, q(3));
        assert_eq!(kind_vertex_value(&p).unwrap(), QPoly::constant(Q::new((-8).into(), 3.into())));
        let p = classify_kind(&parse_family_exact("x^2*(x+y) + (x+2)*t").unwrap());
        assert_eq!(p.kind, Kind::First);
        assert_eq!(kind_vertex_value(&p).unwrap(), QPoly::new(vec![q(0), q(0), q(0), q(-8)]));
    }
}
