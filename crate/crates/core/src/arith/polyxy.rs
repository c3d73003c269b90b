use std::fmt;

use super::ring::{GcdDomain, Ring, ScalarMul, Q};
use super::upoly::{QPoly, UPoly};
use crate::error::{Error, Result};

/// Default bound on the x- and y-degree of any intermediate polynomial.
pub const DEFAULT_DEGREE_CAP: usize = 64;

/// Polynomial in Q[x, y], stored as a polynomial in x with coefficients in Q[y].
#[derive(Clone, PartialEq, Eq, Debug, Hash, Default)]
pub struct PolyXY(UPoly<QPoly>);

/// One monomial `coeff * x^dx * y^dy`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term {
    pub dx: usize,
    pub dy: usize,
    pub coeff: Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl PolyXY {
    pub fn zero() -> Self {
        PolyXY(UPoly::zero())
    }

    pub fn one() -> Self {
        Self::constant(Q::from_i64(1))
    }

    pub fn constant(c: Q) -> Self {
        PolyXY(UPoly::constant(QPoly::constant(c)))
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(Q::from_i64(c))
    }

    pub fn x() -> Self {
        PolyXY(UPoly::x())
    }

    pub fn y() -> Self {
        PolyXY(UPoly::constant(QPoly::x()))
    }

    pub fn monomial(coeff: Q, dx: usize, dy: usize) -> Self {
        PolyXY(UPoly::monomial(QPoly::monomial(coeff, dy), dx))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut cols: Vec<Vec<Q>> = Vec::new();
        for t in terms {
            if cols.len() <= t.dx {
                cols.resize(t.dx + 1, Vec::new());
            }
            let col = &mut cols[t.dx];
            if col.len() <= t.dy {
                col.resize(t.dy + 1, Q::from_i64(0));
            }
            col[t.dy] = &col[t.dy] + &t.coeff;
        }
        PolyXY(UPoly::new(cols.into_iter().map(UPoly::new).collect()))
    }

    pub fn from_upoly(p: UPoly<QPoly>) -> Self {
        PolyXY(p)
    }

    /// Embeds a polynomial in x with rational coefficients.
    pub fn from_x_poly(p: &QPoly) -> Self {
        PolyXY(p.map(|c| QPoly::constant(c.clone())))
    }

    /// Embeds a polynomial in y.
    pub fn from_y_poly(p: &QPoly) -> Self {
        PolyXY(UPoly::constant(p.clone()))
    }

    pub fn as_upoly(&self) -> &UPoly<QPoly> {
        &self.0
    }

    pub fn into_upoly(self) -> UPoly<QPoly> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn deg_x(&self) -> usize {
        self.0.deg()
    }

    pub fn deg_y(&self) -> usize {
        self.0.coeffs().iter().map(|c| c.deg()).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.terms().first().map(|t| t.dx + t.dy).unwrap_or(0)
    }

    pub fn is_y_free(&self) -> bool {
        self.0.coeffs().iter().all(|c| c.is_constant())
    }

    pub fn is_constant(&self) -> bool {
        self.0.is_constant() && self.is_y_free()
    }

    /// Coefficient of x^i, an element of Q[y].
    pub fn coeff_x(&self, i: usize) -> QPoly {
        self.0.coeff(i)
    }

    pub fn coeff(&self, dx: usize, dy: usize) -> Q {
        self.0.coeff(dx).coeff(dy)
    }

    pub fn lc_x(&self) -> QPoly {
        self.0.lc()
    }

    /// Constant rational value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Q> {
        self.is_constant().then(|| self.coeff(0, 0))
    }

    /// The polynomial in x, when no y appears.
    pub fn to_x_poly(&self) -> Option<QPoly> {
        self.is_y_free()
            .then(|| self.0.map(|c| c.coeff(0)))
    }

    /// The polynomial in y, when no x appears.
    pub fn to_y_poly(&self) -> Option<QPoly> {
        self.0.is_constant().then(|| self.0.coeff(0))
    }

    /// Terms in canonical order: total degree descending, then x-degree descending.
    pub fn terms(&self) -> Vec<Term> {
        let mut out = Vec::new();
        for (dx, col) in self.0.coeffs().iter().enumerate() {
            for (dy, c) in col.coeffs().iter().enumerate() {
                if !Ring::is_zero(c) {
                    out.push(Term {
                        dx,
                        dy,
                        coeff: c.clone(),
                    });
                }
            }
        }
        out.sort_by(|a, b| {
            (b.dx + b.dy)
                .cmp(&(a.dx + a.dy))
                .then(b.dx.cmp(&a.dx))
        });
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        PolyXY(self.0.add_poly(&rhs.0))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        PolyXY(self.0.sub_poly(&rhs.0))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        PolyXY(self.0.mul_poly(&rhs.0))
    }

    pub fn neg(&self) -> Self {
        PolyXY(self.0.neg_poly())
    }

    pub fn scale(&self, c: &Q) -> Self {
        PolyXY(ScalarMul::scale(&self.0, c))
    }

    pub fn pow(&self, e: u32) -> Self {
        PolyXY(Ring::pow(&self.0, e))
    }

    /// Ring operation with the degree guard applied to the result.
    pub fn checked_op(&self, rhs: &Self, op: PolyOp, cap: usize) -> Result<Self> {
        let bound = match op {
            PolyOp::Add | PolyOp::Sub => (self.deg_x().max(rhs.deg_x()), self.deg_y().max(rhs.deg_y())),
            PolyOp::Mul => (self.deg_x() + rhs.deg_x(), self.deg_y() + rhs.deg_y()),
        };
        check_cap(bound, cap)?;
        Ok(match op {
            PolyOp::Add => self.add(rhs),
            PolyOp::Sub => self.sub(rhs),
            PolyOp::Mul => self.mul(rhs),
        })
    }

    pub fn checked_pow(&self, e: u32, cap: usize) -> Result<Self> {
        check_cap((self.deg_x() * e as usize, self.deg_y() * e as usize), cap)?;
        Ok(self.pow(e))
    }

    pub fn derivative_x(&self) -> Self {
        PolyXY(self.0.derivative())
    }

    /// `p(x + a)` for `a` in Q[y].
    pub fn shift_x(&self, a: &QPoly) -> Self {
        PolyXY(self.0.taylor_shift(a))
    }

    /// Substitutes `x = a(y)`, giving an element of Q[y].
    pub fn eval_x(&self, a: &QPoly) -> QPoly {
        self.0.eval(a)
    }

    /// Substitutes a rational value for y, giving a polynomial in x.
    pub fn eval_y(&self, y0: &Q) -> QPoly {
        self.0.map(|c| c.eval(y0))
    }

    pub fn eval(&self, x0: &Q, y0: &Q) -> Q {
        self.eval_y(y0).eval(x0)
    }

    /// Exact quotient in Q[x, y], or `None`.
    pub fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.0.exact_div_poly(&rhs.0).map(PolyXY)
    }

    /// Exact division returning the library error on failure.
    pub fn exact_divide(&self, rhs: &Self) -> Result<Self> {
        self.exact_div(rhs).ok_or(Error::NotDivisible)
    }

    /// Normalized gcd (monic in x with a monic content in y).
    pub fn gcd(&self, rhs: &Self) -> Self {
        PolyXY(self.0.gcd_poly(&rhs.0))
    }

    /// Divides by the x-leading coefficient when it is a nonzero constant.
    pub fn monic_x(&self) -> Option<Self> {
        let lc = self.lc_x();
        if !lc.is_constant() || lc.is_zero() {
            return None;
        }
        let inv = Q::from_i64(1) / lc.coeff(0);
        Some(self.scale(&inv))
    }

    /// Maps every coefficient of the x-polynomial.
    pub fn map_x_coeffs(&self, f: impl Fn(&QPoly) -> QPoly) -> Self {
        PolyXY(self.0.map(f))
    }

    pub fn max_abs_numerator_bits(&self) -> u64 {
        self.terms()
            .iter()
            .map(|t| t.coeff.numer().bits().max(t.coeff.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

fn check_cap((dx, dy): (usize, usize), cap: usize) -> Result<()> {
    if dx > cap || dy > cap {
        Err(Error::DegreeLimit(format!(
            "result degree (x {dx}, y {dy}) exceeds cap {cap}"
        )))
    } else {
        Ok(())
    }
}

impl Ring for PolyXY {
    fn zero() -> Self {
        PolyXY::zero()
    }
    fn one() -> Self {
        PolyXY::one()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        PolyXY::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        PolyXY::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        PolyXY::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        PolyXY::neg(self)
    }
    fn from_i64(v: i64) -> Self {
        PolyXY::from_i64(v)
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        PolyXY::exact_div(self, rhs)
    }
}

impl ScalarMul for PolyXY {
    fn scale(&self, c: &Q) -> Self {
        PolyXY::scale(self, c)
    }
}

impl GcdDomain for PolyXY {
    fn gcd(&self, rhs: &Self) -> Self {
        PolyXY::gcd(self, rhs)
    }
    fn unit(&self) -> Self {
        let lc = self.lc_x().lc();
        if Ring::is_zero(&lc) {
            PolyXY::one()
        } else {
            PolyXY::constant(lc)
        }
    }
}

impl fmt::Display for PolyXY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::print::poly_to_string(self))
    }
}
