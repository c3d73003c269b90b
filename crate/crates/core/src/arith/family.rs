use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::polyxy::PolyXY;
use super::ring::{Ring, Q};
use super::upoly::{QPoly, UPoly};
use crate::error::{Error, Result};

/// `F(x, t) = F_0 + F_1 t + ... + F_T t^T`, known modulo `t^(T+1)`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct TruncatedFamily {
    coeffs: Vec<PolyXY>,
    trunc: usize,
}

impl TruncatedFamily {
    /// Builds a family from its t-coefficients. Missing coefficients up to
    /// `trunc` are zero; nonzero coefficients beyond `trunc` are refused.
    pub fn new(mut coeffs: Vec<PolyXY>, trunc: usize) -> Result<Self> {
        if coeffs.first().is_none_or(|c| c.is_zero()) {
            return Err(Error::hyp("zero family (F_0 must be nonzero)"));
        }
        if coeffs.iter().skip(trunc + 1).any(|c| !c.is_zero()) {
            return Err(Error::trunc(format!(
                "family has t-terms beyond the truncation order {trunc}"
            )));
        }
        coeffs.resize(trunc + 1, PolyXY::zero());
        let n = coeffs[0].deg_x();
        if let Some(i) = coeffs.iter().position(|c| c.deg_x() > n) {
            return Err(Error::hyp(format!(
                "deg_x(F_{i}) = {} exceeds deg_x(F_0) = {n}",
                coeffs[i].deg_x()
            )));
        }
        Ok(TruncatedFamily { coeffs, trunc })
    }

    /// Constructor without the degree invariant; used for intermediate
    /// objects such as recentered or rescaled families.
    pub(crate) fn raw(mut coeffs: Vec<PolyXY>, trunc: usize) -> Self {
        coeffs.resize(trunc + 1, PolyXY::zero());
        TruncatedFamily { coeffs, trunc }
    }

    pub fn coeffs(&self) -> &[PolyXY] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> PolyXY {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn f0(&self) -> &PolyXY {
        &self.coeffs[0]
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// n', the x-degree of F_0.
    pub fn x_degree(&self) -> usize {
        self.coeffs[0].deg_x()
    }

    pub fn is_y_free(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_y_free())
    }

    pub fn deg_y(&self) -> usize {
        self.coeffs.iter().map(|c| c.deg_y()).max().unwrap_or(0)
    }

    /// Highest index with a nonzero coefficient.
    pub fn t_degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Same data with a different truncation order. Raising the order pads
    /// with zeros, which is only meaningful for families known exactly.
    pub fn with_trunc(&self, trunc: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(trunc + 1);
        TruncatedFamily::raw(c, trunc)
    }

    pub fn scale(&self, c: &Q) -> Self {
        TruncatedFamily::raw(self.coeffs.iter().map(|p| p.scale(c)).collect(), self.trunc)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let t = self.trunc.min(rhs.trunc);
        TruncatedFamily::raw(
            (0..=t).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect(),
            t,
        )
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul_truncate(&self, rhs: &Self) -> Self {
        let t = self.trunc.min(rhs.trunc);
        let mut out = vec![PolyXY::zero(); t + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(t + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(t + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        TruncatedFamily::raw(out, t)
    }

    pub fn pow_truncate(&self, e: u32) -> Self {
        let mut acc = TruncatedFamily::raw(vec![PolyXY::one()], self.trunc);
        for _ in 0..e {
            acc = acc.mul_truncate(self);
        }
        acc
    }

    /// `F(x + a, t)` for `a` in Q[y].
    pub fn shift_x(&self, a: &QPoly) -> Self {
        TruncatedFamily::raw(
            self.coeffs.iter().map(|p| p.shift_x(a)).collect(),
            self.trunc,
        )
    }

    /// Divides by the x-leading coefficient of F_0 when it is a nonzero
    /// constant; returns the normalized family and that constant.
    pub fn monic_normalized(&self) -> Result<(Self, Q)> {
        let lc = self.coeffs[0].lc_x();
        if !lc.is_constant() {
            return Err(Error::hyp("cannot monic-normalize over Q[y]: x-leading coefficient of F_0 is not constant"));
        }
        let l = lc.coeff(0);
        let inv = Q::from_i64(1) / &l;
        Ok((self.scale(&inv), l))
    }

    /// The family as a polynomial in x whose coefficients are polynomials in
    /// t, after substituting `y = y0` (or requiring y-freeness when `None`).
    pub fn to_x_over_t(&self, y0: Option<&Q>) -> UPoly<QPoly> {
        let n = self.coeffs.iter().map(|c| c.deg_x()).max().unwrap_or(0);
        let cols: Vec<QPoly> = (0..=n)
            .map(|j| {
                QPoly::new(
                    self.coeffs
                        .iter()
                        .map(|c| {
                            let cy = c.coeff_x(j);
                            match y0 {
                                Some(v) => cy.eval(v),
                                None => cy.coeff(0),
                            }
                        })
                        .collect(),
                )
            })
            .collect();
        UPoly::new(cols)
    }

    /// Substitutes `x = t^m (c + x')` and extracts the largest power of t.
    ///
    /// With `m = p/q`, the variable is rescaled to `τ = t^(1/q)`; the result
    /// `(G, w, e)` satisfies `F(t^m (c + x'), t) = t^w G(x', t^(1/e))` and
    /// `G` is a family in `τ` with the precision the input supports.
    pub fn substitute_ramified(&self, m: &Q, c: &QPoly) -> Result<(Self, Q, u32)> {
        if !m.is_positive() {
            return Err(Error::hyp("ramified substitution needs m > 0"));
        }
        let p = m.numer().to_usize().ok_or_else(|| Error::DegreeLimit("exponent too large".into()))?;
        let qd = m.denom().to_usize().ok_or_else(|| Error::DegreeLimit("exponent too large".into()))?;
        let known = qd * (self.trunc + 1);
        let mut g: Vec<PolyXY> = vec![PolyXY::zero(); known];
        // powers (c + x')^j
        let base = PolyXY::from_upoly(UPoly::new(vec![c.clone(), QPoly::constant(Q::from_i64(1))]));
        let n = self.coeffs.iter().map(|f| f.deg_x()).max().unwrap_or(0);
        let mut pows = vec![PolyXY::one()];
        for j in 1..=n {
            let next = pows[j - 1].mul(&base);
            pows.push(next);
        }
        for (i, fi) in self.coeffs.iter().enumerate() {
            for j in 0..=fi.deg_x() {
                let a = fi.coeff_x(j);
                if a.is_zero() {
                    continue;
                }
                let k = qd * i + p * j;
                if k < known {
                    g[k] = g[k].add(&pows[j].mul(&PolyXY::from_y_poly(&a)));
                }
            }
        }
        let w = g
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::hyp("degenerate substitution: result vanishes to known precision"))?;
        let rest: Vec<PolyXY> = g.into_iter().skip(w).collect();
        let trunc = rest.len() - 1;
        Ok((
            TruncatedFamily::raw(rest, trunc),
            Q::new(w.into(), qd.into()),
            qd as u32,
        ))
    }

    /// Lowest t-index with a nonzero coefficient.
    pub fn t_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Evaluates y at a rational value.
    pub fn eval_y(&self, y0: &Q) -> Self {
        TruncatedFamily::raw(
            self.coeffs
                .iter()
                .map(|c| PolyXY::from_x_poly(&c.eval_y(y0)))
                .collect(),
            self.trunc,
        )
    }

    /// Least common multiple of all coefficient denominators.
    pub fn lcm_denominator(&self) -> num_bigint::BigInt {
        let mut l = num_bigint::BigInt::from(1);
        for c in &self.coeffs {
            for t in c.terms() {
                l = l.lcm(t.coeff.denom());
            }
        }
        l
    }

    pub fn is_zero_mod_trunc(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Sum of `F_i t^i` as a single printable polynomial-in-t view.
pub fn family_terms(f: &TruncatedFamily) -> impl Iterator<Item = (usize, &PolyXY)> {
    f.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ring::{q, qr};

    fn x() -> PolyXY {
        PolyXY::x()
    }
    fn c(v: i64) -> PolyXY {
        PolyXY::from_i64(v)
    }
    fn fam(cs: Vec<PolyXY>, t: usize) -> TruncatedFamily {
        TruncatedFamily::raw(cs, t)
    }

    #[test]
    fn product_and_truncation() {
        let a = fam(vec![x(), c(1)], 2);
        let b = fam(vec![x(), c(-1)], 2);
        assert_eq!(a.mul_truncate(&b), fam(vec![x().pow(2), c(0), c(-1)], 2));
        let one_t = fam(vec![c(1), c(1)], 1);
        assert_eq!(one_t.mul_truncate(&one_t), fam(vec![c(1), c(2)], 1));
    }

    #[test]
    fn shift_example() {
        // x^2 (x+1) + (x+2) t shifted by -1
        let f = fam(vec![x().pow(2).mul(&x().add(&c(1))), x().add(&c(2))], 1);
        let g = f.shift_x(&QPoly::constant(q(-1)));
        let expect0 = x().pow(3).sub(&x().pow(2).scale(&q(2))).add(&x());
        assert_eq!(g, fam(vec![expect0, x().add(&c(1))], 1));
        assert_eq!(g.shift_x(&QPoly::constant(q(1))), f);
    }

    #[test]
    fn ramified_examples() {
        let f = fam(
            vec![x().pow(2), x().scale(&q(2)), c(1), c(1)],
            3,
        );
        let (g, w, e) = f.substitute_ramified(&q(1), &QPoly::constant(q(-1))).unwrap();
        assert_eq!((w, e), (q(2), 1));
        assert_eq!(g.coeff(0), x().pow(2));
        assert_eq!(g.coeff(1), c(1));

        let f = fam(vec![x().pow(2), c(2)], 1);
        let (g, w, e) = f.substitute_ramified(&qr(1, 2), &QPoly::zero()).unwrap();
        assert_eq!((w, e), (q(1), 2));
        assert_eq!(g.coeff(0), x().pow(2).add(&c(2)));

        let f = fam(vec![x()], 2);
        let (g, w, _) = f.substitute_ramified(&q(1), &QPoly::zero()).unwrap();
        assert_eq!(w, q(1));
        assert_eq!(g.coeff(0), x());
    }
}
