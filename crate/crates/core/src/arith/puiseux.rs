use num_traits::{One, ToPrimitive, Zero};

use super::numeric::Cplx;
use super::ring::{Ring, Q};

/// A truncated series in fractional powers of t.
///
/// `terms` holds `(exponent, coefficient)` with strictly increasing exponents;
/// `ramification` is the least common denominator of those exponents. The
/// series is certified up to, but not including, `known_order`.
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxSeriesT<K> {
    pub ramification: u32,
    pub terms: Vec<(Q, K)>,
    pub known_order: Q,
}

/// Series coefficient kinds the library produces.
pub type ExactSeries = PuiseuxSeriesT<Q>;
pub type NumericSeries = PuiseuxSeriesT<Cplx>;

impl<K: Ring> PuiseuxSeriesT<K> {
    /// Builds a series, dropping zero coefficients and sorting by exponent.
    pub fn new(mut terms: Vec<(Q, K)>, known_order: Q) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Q, K)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match merged.last_mut() {
                Some((le, lc)) if *le == e => *lc = lc.add(&c),
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        let ramification = merged
            .iter()
            .map(|(e, _)| e.denom().to_u32().unwrap_or(u32::MAX))
            .fold(1, lcm_u32);
        PuiseuxSeriesT {
            ramification,
            terms: merged,
            known_order,
        }
    }

    /// The constant term s(0).
    pub fn center(&self) -> K {
        self.terms
            .iter()
            .find(|(e, _)| Zero::is_zero(e))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(K::zero)
    }

    /// Coefficient of `t^e`.
    pub fn coeff(&self, e: &Q) -> K {
        self.terms
            .iter()
            .find(|(x, _)| x == e)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(K::zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn order(&self) -> Option<Q> {
        self.terms.first().map(|(e, _)| e.clone())
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl ExactSeries {
    pub fn sub(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().map(|(e, c)| (e.clone(), -c)));
        PuiseuxSeriesT::new(
            terms,
            self.known_order.clone().min(rhs.known_order.clone()),
        )
    }

    pub fn constant(c: Q) -> Self {
        PuiseuxSeriesT::new(vec![(<Q as Zero>::zero(), c)], <Q as One>::one())
    }
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    let g = num_integer::gcd(a, b);
    a / g * b
}
