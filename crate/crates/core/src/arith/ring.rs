use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Q = BigRational;

/// Commutative ring with an exact-division test, enough structure for
/// fraction-free elimination.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    /// `self / rhs` when the quotient exists in the ring.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Integral domain with a normalized gcd.
pub trait GcdDomain: Ring {
    fn gcd(&self, rhs: &Self) -> Self;
    /// The unit `u` with `self / u` normalized (monic, positive, ...).
    fn unit(&self) -> Self;
}

/// Exact ring whose elements embed in the rationals or Q[y]; lets generic
/// code ask for a rational scalar multiple.
pub trait ScalarMul: Ring {
    fn scale(&self, c: &Q) -> Self;
}

impl Ring for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(v: i64) -> Self {
        Q::from_integer(BigInt::from(v))
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
}

impl GcdDomain for Q {
    fn gcd(&self, rhs: &Self) -> Self {
        if Zero::is_zero(self) && Zero::is_zero(rhs) {
            <Q as Zero>::zero()
        } else {
            <Q as One>::one()
        }
    }
    fn unit(&self) -> Self {
        if Zero::is_zero(self) {
            <Q as One>::one()
        } else {
            self.clone()
        }
    }
}

impl ScalarMul for Q {
    fn scale(&self, c: &Q) -> Self {
        self * c
    }
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Least common multiple of the denominators.
pub fn lcm_denoms<'a>(it: impl IntoIterator<Item = &'a Q>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

pub fn sign_pow(e: u64) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn abs_q(a: &Q) -> Q {
    a.abs()
}

/// Least common multiple of the coefficient denominators of a polynomial.
pub fn lcm_denom_poly(p: &super::upoly::QPoly) -> BigInt {
    lcm_denoms(p.coeffs())
}
