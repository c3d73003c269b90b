use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::roots::aberth_roots;
use crate::arith::{lcm_denom_poly, Cplx, PolyXY, QPoly, UPoly, Q};
use crate::error::{Error, Result};

/// `unit * ∏ part^mult`, parts monic in x, square-free and pairwise coprime.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SquareFreeDecomposition {
    #[serde(serialize_with = "crate::report::ser_q")]
    pub unit: Q,
    #[serde(serialize_with = "crate::report::ser_parts")]
    pub parts: Vec<(PolyXY, u32)>,
}

impl SquareFreeDecomposition {
    pub fn expand(&self) -> PolyXY {
        self.parts
            .iter()
            .fold(PolyXY::constant(self.unit.clone()), |acc, (p, m)| acc.mul(&p.pow(*m)))
    }
}

/// Normalized gcd in x (monic when the inputs allow it).
pub fn gcd(f: &PolyXY, g: &PolyXY) -> PolyXY {
    f.gcd(g)
}

/// Exact quotient; "not divisible" unless the remainder vanishes.
pub fn exact_divide(f: &PolyXY, g: &PolyXY) -> Result<PolyXY> {
    f.exact_divide(g)
}

/// Yun's square-free decomposition with respect to x.
pub fn squarefree_decompose(f: &PolyXY) -> Result<SquareFreeDecomposition> {
    if f.is_zero() {
        return Err(Error::hyp("square-free decomposition of zero"));
    }
    let lc = f.lc_x();
    if !lc.is_constant() {
        return Err(Error::hyp("cannot monic-normalize over Q[y]"));
    }
    let unit = lc.coeff(0);
    let monic = f.scale(&(Q::one() / &unit));
    if monic.deg_x() == 0 {
        return Ok(SquareFreeDecomposition {
            unit,
            parts: Vec::new(),
        });
    }
    let mut parts = Vec::new();
    let d = monic.derivative_x();
    let a0 = monic.gcd(&d);
    let mut b = monic.exact_divide(&a0)?;
    let c = d.exact_divide(&a0)?;
    let mut dd = c.sub(&b.derivative_x());
    let mut i = 1u32;
    while b.deg_x() > 0 {
        let a = b.gcd(&dd);
        let nb = b.exact_divide(&a)?;
        let nc = dd.exact_divide(&a)?;
        if a.deg_x() > 0 {
            parts.push((a, i));
        }
        dd = nc.sub(&nb.derivative_x());
        b = nb;
        i += 1;
    }
    Ok(SquareFreeDecomposition { unit, parts })
}

/// Square-free decomposition of a univariate rational polynomial.
pub fn squarefree_qpoly(f: &QPoly) -> Result<Vec<(QPoly, u32)>> {
    let d = squarefree_decompose(&PolyXY::from_x_poly(f))?;
    Ok(d
        .parts
        .into_iter()
        .map(|(p, m)| (p.to_x_poly().expect("y-free input"), m))
        .collect())
}

fn int_coeffs(f: &QPoly) -> Vec<BigInt> {
    let l = lcm_denom_poly(f);
    f.coeffs()
        .iter()
        .map(|c| (c * Q::from_integer(l.clone())).to_integer())
        .collect()
}

/// Positive divisors of `n`, or `None` if `n` has a prime factor beyond the
/// trial-division bound.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    let bound = BigInt::from(100_000u64);
    while &p * &p <= n && p <= bound {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        if &p * &p <= n {
            return None;
        }
        primes.push((n, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    Some(out)
}

/// Rational roots with multiplicity, sorted ascending.
pub fn rational_roots(f: &QPoly) -> Vec<(Q, u32)> {
    assert!(!f.is_zero(), "rational roots of zero polynomial");
    let mut out = Vec::new();
    let mut g = f.clone();
    let v = g.valuation().unwrap_or(0);
    if v > 0 {
        out.push((Q::zero(), v as u32));
        g = UPoly::new(g.coeffs()[v..].to_vec());
    }
    if g.deg() == 0 {
        return out;
    }
    // square-free part keeps candidate testing cheap
    let sqf = g.exact_div_poly(&g.gcd_poly(&g.derivative())).expect("gcd divides");
    let z = int_coeffs(&sqf);
    let n = sqf.deg();
    let an = z[n].clone();
    // integer roots r of the monic g(y) = an^(n-1) f(y / an) give roots r/an
    let mono: Vec<BigInt> = (0..=n)
        .map(|i| {
            if i == n {
                BigInt::one()
            } else {
                &z[i] * num_traits::pow(an.clone(), n - 1 - i)
            }
        })
        .collect();
    let candidates: Vec<BigInt> = match divisors(&mono[0]) {
        Some(ds) => ds.into_iter().flat_map(|d| [d.clone(), -d]).collect(),
        None => numeric_integer_candidates(&mono),
    };
    let mut found: Vec<Q> = Vec::new();
    for r in candidates {
        let val = mono.iter().rev().fold(BigInt::zero(), |acc, c| acc * &r + c);
        if val.is_zero() {
            let root = Q::new(r, an.clone());
            if !found.contains(&root) {
                found.push(root);
            }
        }
    }
    for root in found {
        let lin = QPoly::new(vec![-root.clone(), Q::one()]);
        let mut m = 0;
        while let Some(qt) = g.exact_div_poly(&lin) {
            g = qt;
            m += 1;
        }
        out.push((root, m));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn numeric_integer_candidates(mono: &[BigInt]) -> Vec<BigInt> {
    let bits = mono.iter().map(|c| c.bits()).max().unwrap_or(1) as u32;
    let prec = 4 * bits + 128;
    let cs: Vec<Cplx> = mono
        .iter()
        .map(|c| Cplx::from_q(&Q::from_integer(c.clone()), prec))
        .collect();
    let mut out = Vec::new();
    for r in aberth_roots(&cs, prec) {
        if r.im.log2_abs() > -1.0 {
            continue;
        }
        let base = r.re.round_to_bigint();
        for d in [-1i64, 0, 1] {
            out.push(&base + d);
        }
    }
    out
}

/// Rational roots, requiring that they account for the whole degree.
pub fn split_over_q(f: &QPoly) -> Option<Vec<(Q, u32)>> {
    let r = rational_roots(f);
    let total: u32 = r.iter().map(|(_, m)| m).sum();
    (total as usize == f.deg()).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qr};
    use crate::parse::parse_poly;

    fn p(v: &[i64]) -> QPoly {
        UPoly::new(v.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn spec_gcd_examples() {
        let g = gcd(&parse_poly("x^2 - 1").unwrap(), &parse_poly("x^2 + 2*x + 1").unwrap());
        assert_eq!(g, parse_poly("x + 1").unwrap());
        assert_eq!(
            exact_divide(&parse_poly("x^3 + x^2").unwrap(), &parse_poly("x^2").unwrap()).unwrap(),
            parse_poly("x + 1").unwrap()
        );
        assert_eq!(gcd(&parse_poly("x").unwrap(), &parse_poly("x + 2").unwrap()), PolyXY::one());
        assert_eq!(
            exact_divide(&parse_poly("x^2 + 1").unwrap(), &parse_poly("x").unwrap()),
            Err(Error::NotDivisible)
        );
    }

    #[test]
    fn spec_squarefree_examples() {
        let d = squarefree_decompose(&parse_poly("x^3 + x^2").unwrap()).unwrap();
        assert_eq!(
            d.parts,
            vec![(parse_poly("x + 1").unwrap(), 1), (parse_poly("x").unwrap(), 2)]
        );
        let d = squarefree_decompose(&parse_poly("x^2 + y").unwrap()).unwrap();
        assert_eq!(d.parts, vec![(parse_poly("x^2 + y").unwrap(), 1)]);
        let f = parse_poly("(x^2 - 1)^2*x").unwrap();
        let d = squarefree_decompose(&f).unwrap();
        assert_eq!(
            d.parts,
            vec![(parse_poly("x").unwrap(), 1), (parse_poly("x^2 - 1").unwrap(), 2)]
        );
        assert_eq!(d.expand(), f);
        assert!(squarefree_decompose(&parse_poly("y*x^2 + 1").unwrap()).is_err());
    }

    #[test]
    fn squarefree_over_qy() {
        let f = parse_poly("3*(x - y)^3*(x + y^2 + 1)").unwrap();
        let d = squarefree_decompose(&f).unwrap();
        assert_eq!(d.unit, q(3));
        assert_eq!(
            d.parts,
            vec![(parse_poly("x + y^2 + 1").unwrap(), 1), (parse_poly("x - y").unwrap(), 3)]
        );
    }

    #[test]
    fn spec_rational_roots() {
        assert_eq!(rational_roots(&p(&[-1, 0, 1])), vec![(q(-1), 1), (q(1), 1)]);
        assert_eq!(rational_roots(&p(&[1, 0, 1])), vec![]);
        assert_eq!(rational_roots(&p(&[0, 0, 1, 1])), vec![(q(-1), 1), (q(0), 2)]);
        // (2x - 3)^2 (3x + 1)
        let f = &(&p(&[-3, 2]) * &p(&[-3, 2])) * &p(&[1, 3]);
        assert_eq!(rational_roots(&f), vec![(qr(-1, 3), 1), (qr(3, 2), 2)]);
    }

    #[test]
    fn large_prime_root() {
        // root 1000000007 * 1000000009 is beyond trial division
        let r = BigInt::from(1_000_000_007u64) * BigInt::from(1_000_000_009u64);
        let f = QPoly::new(vec![-Q::from_integer(r.clone()), Q::one()]);
        let f = &f * &p(&[1, 0, 1]);
        assert_eq!(rational_roots(&f), vec![(Q::from_integer(r), 1)]);
    }
}
