//! Canonical text rendering. Exact values print to text the parser reads back unchanged.

use num_traits::{One, Signed, Zero};

use crate::arith::{Cplx, ExactSeries, NumericSeries, PolyXY, PolyXYZ, QPoly, TruncatedFamily, Q};

pub fn rational(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

fn var_pow(name: &str, e: usize) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

fn monomial(parts: &[(&str, usize)]) -> String {
    parts
        .iter()
        .filter_map(|(n, e)| var_pow(n, *e))
        .collect::<Vec<_>>()
        .join("*")
}

/// Renders `|c| * mono` without sign.
fn unsigned_term(c: &Q, mono: &str) -> String {
    let a = c.abs();
    match (mono.is_empty(), a.is_one()) {
        (true, _) => rational(&a),
        (false, true) => mono.to_string(),
        (false, false) => format!("{}*{mono}", rational(&a)),
    }
}

/// Joins signed pieces as `a + b - c`.
fn join_signed(pieces: Vec<(bool, String)>) -> String {
    if pieces.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (neg, body)) in pieces.into_iter().enumerate() {
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        s.push_str(&body);
    }
    s
}

fn poly_pieces(p: &PolyXY, extra: &[(&str, usize)]) -> Vec<(bool, String)> {
    named_pieces(p, "x", extra)
}

fn named_pieces(p: &PolyXY, xname: &str, extra: &[(&str, usize)]) -> Vec<(bool, String)> {
    p.terms()
        .iter()
        .map(|t| {
            let mut parts = vec![(xname, t.dx), ("y", t.dy)];
            parts.extend_from_slice(extra);
            (t.coeff.is_negative(), unsigned_term(&t.coeff, &monomial(&parts)))
        })
        .collect()
}

pub fn poly_to_string(p: &PolyXY) -> String {
    join_signed(poly_pieces(p, &[]))
}

/// Renders with the x variable renamed, e.g. `s` for characteristic polynomials.
pub fn poly_named(p: &PolyXY, xname: &str) -> String {
    join_signed(named_pieces(p, xname, &[]))
}

/// Polynomial in y.
pub fn ypoly_to_string(p: &QPoly) -> String {
    poly_to_string(&PolyXY::from_y_poly(p))
}

/// Polynomial in x.
pub fn xpoly_to_string(p: &QPoly) -> String {
    poly_to_string(&PolyXY::from_x_poly(p))
}

pub fn family_to_string(f: &TruncatedFamily) -> String {
    let mut pieces = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if i == 0 {
            pieces.extend(poly_pieces(c, &[]));
            continue;
        }
        let terms = c.terms();
        if terms.len() == 1 {
            pieces.extend(poly_pieces(c, &[("t", i)]));
        } else {
            let tp = var_pow("t", i).unwrap();
            pieces.push((false, format!("({})*{tp}", poly_to_string(c))));
        }
    }
    join_signed(pieces)
}

pub fn polyxyz_to_string(p: &PolyXYZ) -> String {
    join_signed(
        p.terms()
            .iter()
            .map(|(k, c)| {
                let m = monomial(&[("x", k[0] as usize), ("y", k[1] as usize), ("z", k[2] as usize)]);
                (c.is_negative(), unsigned_term(c, &m))
            })
            .collect(),
    )
}

/// Homogeneous family `Σ F_i t^i` with F_i in x, y, z.
pub fn homogeneous_to_string(coeffs: &[PolyXYZ]) -> String {
    let mut pieces = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let terms = c.terms();
        if i == 0 || terms.len() == 1 {
            for (k, v) in terms {
                let m = monomial(&[
                    ("x", k[0] as usize),
                    ("y", k[1] as usize),
                    ("z", k[2] as usize),
                    ("t", i),
                ]);
                pieces.push((v.is_negative(), unsigned_term(&v, &m)));
            }
        } else {
            let tp = var_pow("t", i).unwrap();
            pieces.push((false, format!("({})*{tp}", polyxyz_to_string(c))));
        }
    }
    join_signed(pieces)
}

fn t_power(e: &Q) -> String {
    if e.is_zero() {
        String::new()
    } else if e.is_one() {
        "t".to_string()
    } else if e.is_integer() {
        format!("t^{}", e.numer())
    } else {
        format!("t^({}/{})", e.numer(), e.denom())
    }
}

/// Exact series such as `2 - t^(3/2)`.
pub fn series_to_string(s: &ExactSeries) -> String {
    join_signed(
        s.terms
            .iter()
            .map(|(e, c)| (c.is_negative(), unsigned_term(c, &t_power(e))))
            .collect(),
    )
}

/// Exact series followed by its certified order, `2 - t^(3/2) + O(t^2)`.
pub fn series_with_order(s: &ExactSeries) -> String {
    let e = &s.known_order;
    let tail = if e.is_integer() {
        format!("O(t^{})", e.numer())
    } else {
        format!("O(t^({}/{}))", e.numer(), e.denom())
    };
    if s.terms.is_empty() {
        tail
    } else {
        format!("{} + {tail}", series_to_string(s))
    }
}

pub fn complex(c: &Cplx) -> String {
    let (mut a, mut b) = c.to_f64_pair();
    // a part 15 orders of magnitude below the other is below display resolution
    let scale = a.abs().max(b.abs());
    if b.abs() <= scale * 1e-15 {
        b = 0.0;
    }
    if a.abs() <= scale * 1e-15 {
        a = 0.0;
    }
    let fmt = |v: f64| format!("{v:.12e}");
    if b == 0.0 {
        fmt(a)
    } else if a == 0.0 {
        format!("{}*i", fmt(b))
    } else {
        format!("({} {} {}*i)", fmt(a), if b < 0.0 { "-" } else { "+" }, fmt(b.abs()))
    }
}

/// Numeric series with coefficients rendered to 13 significant digits.
pub fn numeric_series_to_string(s: &NumericSeries) -> String {
    if s.terms.is_empty() {
        return "0".to_string();
    }
    s.terms
        .iter()
        .map(|(e, c)| {
            let tp = t_power(e);
            if tp.is_empty() {
                complex(c)
            } else {
                format!("{}*{tp}", complex(c))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
