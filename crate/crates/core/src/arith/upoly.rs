use std::ops::{Add, Mul, Neg, Sub};

use super::ring::{GcdDomain, Ring, ScalarMul, Q};

/// Dense univariate polynomial, little-endian, never stores a zero leading
/// coefficient.
#[derive(Clone, PartialEq, Eq, Debug, Hash, Default)]
pub struct UPoly<C> {
    coeffs: Vec<C>,
}

pub type QPoly = UPoly<Q>;

impl<C: Ring> UPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: C, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![C::zero(); k + 1];
        v[k] = c;
        UPoly { coeffs: v }
    }

    pub fn x() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn lc(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    /// Lowest power of x with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, at: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc.mul(at).add(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&C::from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> UPoly<D> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul_x_pow(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![C::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UPoly { coeffs: v }
    }

    pub fn add_poly(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a.add(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => C::zero(),
                })
                .collect(),
        )
    }

    pub fn sub_poly(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a.sub(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.neg(),
                    (None, None) => C::zero(),
                })
                .collect(),
        )
    }

    pub fn mul_poly(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut v = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(v)
    }

    pub fn neg_poly(&self) -> Self {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    /// Keeps the terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// `p(x + c)`.
    pub fn taylor_shift(&self, c: &C) -> Self {
        if c.is_zero() || self.is_constant() {
            return self.clone();
        }
        // Horner in the shifted variable.
        let step = Self::new(vec![c.clone(), C::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, a| {
            acc.mul_poly(&step).add_poly(&Self::constant(a.clone()))
        })
    }

    /// `p(a*x + b)` for a polynomial substitution.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, a| {
            acc.mul_poly(inner).add_poly(&Self::constant(a.clone()))
        })
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn prem(&self, b: &Self) -> Self {
        assert!(!b.is_zero(), "pseudo-division by zero");
        let db = b.deg();
        if self.is_zero() || self.deg() < db {
            return self.clone();
        }
        let lb = b.lc();
        let mut r = self.clone();
        let mut steps = self.deg() - db + 1;
        while !r.is_zero() && r.deg() >= db {
            let shift = r.deg() - db;
            let lr = r.lc();
            r = r.scale(&lb).sub_poly(&b.scale(&lr).mul_x_pow(shift));
            steps -= 1;
        }
        if steps > 0 {
            r = r.scale(&lb.pow(steps as u32));
        }
        r
    }

    /// Division with remainder when every leading-coefficient quotient is exact.
    pub fn div_rem(&self, b: &Self) -> Option<(Self, Self)> {
        if b.is_zero() {
            return None;
        }
        let db = b.deg();
        let lb = b.lc();
        let mut r = self.clone();
        let mut qc = vec![C::zero(); self.coeffs.len().saturating_sub(db).max(1)];
        while !r.is_zero() && r.deg() >= db {
            let shift = r.deg() - db;
            let c = r.lc().exact_div(&lb)?;
            r = r.sub_poly(&b.scale(&c).mul_x_pow(shift));
            qc[shift] = c;
        }
        Some((Self::new(qc), r))
    }

    /// Exact quotient, `None` unless `b` divides `self`.
    pub fn exact_div_poly(&self, b: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(b)?;
        r.is_zero().then_some(q)
    }

    pub fn pow_u(&self, e: u32) -> Self {
        Ring::pow(self, e)
    }
}

impl<C: Ring> Ring for UPoly<C> {
    fn zero() -> Self {
        UPoly::zero()
    }
    fn one() -> Self {
        UPoly::constant(C::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.add_poly(rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.sub_poly(rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_poly(rhs)
    }
    fn neg(&self) -> Self {
        self.neg_poly()
    }
    fn from_i64(v: i64) -> Self {
        UPoly::constant(C::from_i64(v))
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.exact_div_poly(rhs)
    }
}

impl<C: ScalarMul> ScalarMul for UPoly<C> {
    fn scale(&self, c: &Q) -> Self {
        UPoly::new(self.coeffs.iter().map(|a| a.scale(c)).collect())
    }
}

impl<C: GcdDomain> UPoly<C> {
    /// Normalized gcd of the coefficients.
    pub fn content(&self) -> C {
        let mut g = C::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        let p = self.exact_div_scalar(&c);
        let u = p.lc().unit();
        p.exact_div_scalar(&u)
    }

    fn exact_div_scalar(&self, c: &C) -> Self {
        if c.is_one() {
            return self.clone();
        }
        UPoly::new(
            self.coeffs
                .iter()
                .map(|a| a.exact_div(c).expect("content divides every coefficient"))
                .collect(),
        )
    }

    /// Normalized form: divided by the unit of the leading coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let u = self.lc().unit();
        self.exact_div_scalar(&u)
    }

    /// gcd by the primitive polynomial remainder sequence.
    pub fn gcd_poly(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.normalized();
        }
        if rhs.is_zero() {
            return self.normalized();
        }
        let cg = self.content().gcd(&rhs.content());
        let (mut a, mut b) = if self.deg() >= rhs.deg() {
            (self.primitive_part(), rhs.primitive_part())
        } else {
            (rhs.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = r.primitive_part();
        }
        UPoly::constant(cg).mul_poly(&a).normalized()
    }
}

impl<C: GcdDomain> GcdDomain for UPoly<C> {
    fn gcd(&self, rhs: &Self) -> Self {
        self.gcd_poly(rhs)
    }
    fn unit(&self) -> Self {
        UPoly::constant(self.lc().unit())
    }
}

impl<'a, C: Ring> Add<&'a UPoly<C>> for &'a UPoly<C> {
    type Output = UPoly<C>;
    fn add(self, rhs: &'a UPoly<C>) -> UPoly<C> {
        self.add_poly(rhs)
    }
}

impl<'a, C: Ring> Sub<&'a UPoly<C>> for &'a UPoly<C> {
    type Output = UPoly<C>;
    fn sub(self, rhs: &'a UPoly<C>) -> UPoly<C> {
        self.sub_poly(rhs)
    }
}

impl<'a, C: Ring> Mul<&'a UPoly<C>> for &'a UPoly<C> {
    type Output = UPoly<C>;
    fn mul(self, rhs: &'a UPoly<C>) -> UPoly<C> {
        self.mul_poly(rhs)
    }
}

impl<C: Ring> Neg for &UPoly<C> {
    type Output = UPoly<C>;
    fn neg(self) -> UPoly<C> {
        self.neg_poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ring::{q, qr};

    fn p(v: &[i64]) -> QPoly {
        UPoly::new(v.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
    }

    #[test]
    fn taylor_shift_roundtrip() {
        let f = p(&[3, -2, 0, 5]);
        let g = f.taylor_shift(&qr(2, 3)).taylor_shift(&qr(-2, 3));
        assert_eq!(f, g);
    }

    #[test]
    fn gcd_over_q() {
        let g = p(&[-1, 0, 1]).gcd_poly(&p(&[1, 2, 1]));
        assert_eq!(g, p(&[1, 1]));
        assert_eq!(p(&[0, 1]).gcd_poly(&p(&[2, 1])), p(&[1]));
    }

    #[test]
    fn gcd_over_qy() {
        // (x - y)(x + 1) and (x - y)(x - 2) over Q[y]
        let y = UPoly::<QPoly>::constant(p(&[0, 1]));
        let xm = &UPoly::<QPoly>::x() - &y;
        let a = &xm * &UPoly::new(vec![p(&[1]), p(&[1])]);
        let b = &xm * &UPoly::new(vec![p(&[-2]), p(&[1])]);
        assert_eq!(a.gcd_poly(&b), xm);
    }

    #[test]
    fn exact_division() {
        assert_eq!(p(&[0, 0, 1, 1]).exact_div_poly(&p(&[0, 0, 1])), Some(p(&[1, 1])));
        assert_eq!(p(&[1, 0, 1]).exact_div_poly(&p(&[0, 1])), None);
    }

    #[test]
    fn prem_identity() {
        let a = p(&[1, 2, 3, 4]);
        let b = p(&[5, 0, 2]);
        // lc(b)^2 a = q b + r with deg r < 2
        let r = a.prem(&b);
        assert!(r.deg() < 2);
        let lhs = a.scale(&q(4)).sub_poly(&r);
        assert!(lhs.exact_div_poly(&b).is_some());
    }
}
