//! Binary floating point with a fixed bit precision, and complex numbers over it.
//!
//! Values are `mant * 2^exp`. A precision of 0 marks an exact value (small
//! integers created by the ring identities); arithmetic takes the larger
//! operand precision and rounds to nearest.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ring::{Ring, Q};

pub const DEFAULT_PRECISION_BITS: u32 = 256;

#[derive(Clone, Debug)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn bit_len(m: &BigInt) -> u64 {
    m.magnitude().bits()
}

/// Rounds `m / 2^k` to nearest, ties away from zero.
fn shr_round(m: &BigInt, k: u64) -> BigInt {
    if k == 0 {
        return m.clone();
    }
    let neg = m.is_negative();
    let mag = m.magnitude();
    let half = num_bigint::BigUint::one() << (k - 1);
    let r: num_bigint::BigUint = (mag + half) >> k;
    let v = BigInt::from_biguint(Sign::Plus, r);
    if neg {
        -v
    } else {
        v
    }
}

impl BigFloat {
    fn make(mant: BigInt, exp: i64, prec: u32) -> Self {
        if mant.is_zero() {
            return BigFloat {
                mant,
                exp: 0,
                prec,
            };
        }
        if prec == 0 {
            return BigFloat { mant, exp, prec };
        }
        let bits = bit_len(&mant);
        if bits > prec as u64 {
            let k = bits - prec as u64;
            BigFloat {
                mant: shr_round(&mant, k),
                exp: exp + k as i64,
                prec,
            }
        } else {
            BigFloat { mant, exp, prec }
        }
    }

    pub fn zero() -> Self {
        BigFloat {
            mant: BigInt::zero(),
            exp: 0,
            prec: 0,
        }
    }

    pub fn from_i64(v: i64) -> Self {
        BigFloat::make(BigInt::from(v), 0, 0)
    }

    pub fn from_q(v: &Q, prec: u32) -> Self {
        if Zero::is_zero(v) {
            return BigFloat::zero().with_prec(prec);
        }
        let num = v.numer();
        let den = v.denom();
        let shift = prec as i64 + bit_len(den) as i64 - bit_len(num) as i64 + 2;
        let (n, d) = if shift >= 0 {
            (num << shift as usize, den.clone())
        } else {
            (num.clone(), den << (-shift) as usize)
        };
        let (qt, r) = n.div_rem(&d);
        // round half away from zero
        let twice = r.abs() * 2;
        let qt = if twice >= d.abs() {
            if qt.is_negative() || (qt.is_zero() && n.is_negative()) {
                qt - 1
            } else {
                qt + 1
            }
        } else {
            qt
        };
        BigFloat::make(qt, -shift, prec)
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        if v == 0.0 || !v.is_finite() {
            return BigFloat::zero().with_prec(prec);
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let exponent = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & 0xfffffffffffff;
        let (m, e) = if exponent == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exponent - 1075)
        };
        BigFloat::make(BigInt::from(m) * sign, e, prec)
    }

    pub fn with_prec(mut self, prec: u32) -> Self {
        self.prec = prec;
        BigFloat::make(self.mant, self.exp, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mant: -&self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// Approximate base-2 logarithm of |self|; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = bit_len(&self.mant) as i64;
        let keep = bits.min(60);
        let top = (self.mant.abs() >> (bits - keep) as usize).to_f64().unwrap_or(1.0);
        top.log2() + (self.exp + bits - keep) as f64
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = bit_len(&self.mant) as i64;
        let keep = bits.min(60);
        let top = (self.mant.abs() >> (bits - keep) as usize).to_f64().unwrap_or(0.0);
        let e = self.exp + bits - keep;
        let v = if e > 2000 {
            f64::INFINITY
        } else if e < -2000 {
            0.0
        } else {
            top * 2f64.powi(e as i32)
        };
        if self.mant.is_negative() {
            -v
        } else {
            v
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return rhs.clone().with_prec(prec);
        }
        if rhs.is_zero() {
            return self.clone().with_prec(prec);
        }
        let (hi, lo) = if self.exp >= rhs.exp {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let gap = (hi.exp - lo.exp) as u64;
        if prec > 0 {
            // lo is far below the last kept bit of hi
            let hi_top = hi.exp + bit_len(&hi.mant) as i64;
            let lo_top = lo.exp + bit_len(&lo.mant) as i64;
            if hi_top - lo_top > prec as i64 + 4 {
                return hi.clone().with_prec(prec);
            }
        }
        let m = (&hi.mant << gap as usize) + &lo.mant;
        BigFloat::make(m, lo.exp, prec)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        BigFloat::make(
            &self.mant * &rhs.mant,
            self.exp + rhs.exp,
            self.prec.max(rhs.prec),
        )
    }

    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "BigFloat division by zero");
        let prec = match self.prec.max(rhs.prec) {
            0 => DEFAULT_PRECISION_BITS,
            p => p,
        };
        if self.is_zero() {
            return BigFloat::zero().with_prec(prec);
        }
        let shift = prec as i64 + bit_len(&rhs.mant) as i64 - bit_len(&self.mant) as i64 + 2;
        let shift = shift.max(0);
        let n = &self.mant << shift as usize;
        let (qt, r) = n.div_rem(&rhs.mant);
        let qt = if r.abs() * 2 >= rhs.mant.abs() {
            if (n.is_negative()) != (rhs.mant.is_negative()) {
                qt - 1
            } else {
                qt + 1
            }
        } else {
            qt
        };
        BigFloat::make(qt, self.exp - rhs.exp - shift, prec)
    }

    pub fn cmp_abs(&self, rhs: &Self) -> Ordering {
        self.abs().sub(&rhs.abs()).sign_ordering()
    }

    fn sign_ordering(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.mant.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Nearest integer, ties rounded up.
    pub fn round_to_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as usize;
        }
        let k = (-self.exp) as usize;
        let half = BigInt::one() << (k - 1);
        (&self.mant + half) >> k
    }

    /// Square root by Newton iteration.
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of negative BigFloat");
        if self.is_zero() {
            return self.clone();
        }
        let prec = match self.prec {
            0 => DEFAULT_PRECISION_BITS,
            p => p,
        };
        let mut x = BigFloat::from_f64(2f64.powf(self.log2_abs() / 2.0), prec);
        let half = BigFloat::from_f64(0.5, prec);
        for _ in 0..(prec.ilog2() + 8) {
            x = x.add(&self.div(&x)).mul(&half);
        }
        x
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

/// Complex number with [`BigFloat`] parts.
#[derive(Clone, Debug, PartialEq)]
pub struct Cplx {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Cplx {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Cplx { re, im }
    }

    pub fn from_q(v: &Q, prec: u32) -> Self {
        Cplx::new(BigFloat::from_q(v, prec), BigFloat::zero().with_prec(prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Cplx::new(BigFloat::from_f64(re, prec), BigFloat::from_f64(im, prec))
    }

    pub fn with_prec(self, prec: u32) -> Self {
        Cplx::new(self.re.with_prec(prec), self.im.with_prec(prec))
    }

    pub fn conj(&self) -> Self {
        Cplx::new(self.re.clone(), self.im.neg())
    }

    pub fn norm_sqr(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    /// Approximate log2 |z|.
    pub fn log2_abs(&self) -> f64 {
        let a = self.re.log2_abs();
        let b = self.im.log2_abs();
        let m = a.max(b);
        if m == f64::NEG_INFINITY {
            return m;
        }
        m + 0.5 * (2f64.powf(2.0 * (a - m)) + 2f64.powf(2.0 * (b - m))).log2()
    }

    pub fn abs_f64(&self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let d = rhs.norm_sqr();
        let num = self.mul(&rhs.conj());
        Cplx::new(num.re.div(&d), num.im.div(&d))
    }

    pub fn scale_f(&self, s: &BigFloat) -> Self {
        Cplx::new(self.re.mul(s), self.im.mul(s))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let prec = match self.prec() {
            0 => DEFAULT_PRECISION_BITS,
            p => p,
        };
        if self.is_zero() {
            return self.clone();
        }
        let r = self.norm_sqr().sqrt();
        let half = BigFloat::from_f64(0.5, prec);
        let re = r.add(&self.re).mul(&half);
        let re = if re.is_negative() { BigFloat::zero() } else { re };
        let a = re.sqrt();
        let im_abs = r.sub(&self.re).mul(&half);
        let im_abs = if im_abs.is_negative() {
            BigFloat::zero()
        } else {
            im_abs
        };
        let b = im_abs.sqrt();
        let b = if self.im.is_negative() { b.neg() } else { b };
        Cplx::new(a, b).with_prec(prec)
    }
}

impl Ring for Cplx {
    fn zero() -> Self {
        Cplx::new(BigFloat::zero(), BigFloat::zero())
    }
    fn one() -> Self {
        Cplx::new(BigFloat::from_i64(1), BigFloat::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Cplx::new(self.re.add(&rhs.re), self.im.add(&rhs.im))
    }
    fn sub(&self, rhs: &Self) -> Self {
        Cplx::new(self.re.sub(&rhs.re), self.im.sub(&rhs.im))
    }
    fn mul(&self, rhs: &Self) -> Self {
        Cplx::new(
            self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        )
    }
    fn neg(&self) -> Self {
        Cplx::new(self.re.neg(), self.im.neg())
    }
    fn from_i64(v: i64) -> Self {
        Cplx::new(BigFloat::from_i64(v), BigFloat::zero())
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self.div(rhs))
    }
}

impl fmt::Display for Cplx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.to_f64_pair();
        if b == 0.0 {
            write!(f, "{a}")
        } else if a == 0.0 {
            write!(f, "{b}*i")
        } else if b < 0.0 {
            write!(f, "({a} - {}*i)", -b)
        } else {
            write!(f, "({a} + {b}*i)")
        }
    }
}

/// Relative distance |a - b| / max(|a|, |b|), as a log2 value.
pub fn rel_gap_log2(a: &Cplx, b: &Cplx) -> f64 {
    let d = a.sub(b).log2_abs();
    let s = a.log2_abs().max(b.log2_abs());
    if s == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    d - s
}
