//! One level of the Newton–Puiseux recursion.
//!
//! A node is the polynomial `G(x', τ)` obtained after substituting
//! `x = prefix(t) + t^mu x'` with `τ = t^(1/e)`. Row `j` of `coeffs` holds the
//! τ-coefficients of `x'^j`, known for exponents below `prec0 + step * j`.

use num_traits::{ToPrimitive, Zero};

use crate::arith::{Cplx, PuiseuxSeriesT, QPoly, Ring, TruncatedFamily, Q};
use crate::parse::print;
use crate::error::{Error, Result};

/// Coefficient domains the engine runs over.
pub trait BranchCoeff: Ring {
    fn from_q(v: &Q, prec: u32) -> Self;
    fn text(&self) -> String;
    fn series_text(s: &PuiseuxSeriesT<Self>) -> String;
    /// log2 of the magnitude; exact domains report 0.
    fn mag_log2(&self) -> f64 {
        0.0
    }
    /// Whether a computed value is indistinguishable from zero given the
    /// largest contributing term (`scale_log2`) and working precision.
    fn negligible(&self, _scale_log2: f64, _prec: u32) -> bool {
        self.is_zero()
    }
}

impl BranchCoeff for Q {
    fn from_q(v: &Q, _prec: u32) -> Self {
        v.clone()
    }
    fn text(&self) -> String {
        print::rational(self)
    }
    fn series_text(s: &PuiseuxSeriesT<Self>) -> String {
        print::series_with_order(s)
    }
}

impl BranchCoeff for QPoly {
    fn from_q(v: &Q, _prec: u32) -> Self {
        QPoly::constant(v.clone())
    }
    fn text(&self) -> String {
        print::ypoly_to_string(self)
    }
    fn series_text(s: &PuiseuxSeriesT<Self>) -> String {
        let body: Vec<String> = s
            .terms
            .iter()
            .map(|(e, c)| format!("({})*t^({})", print::ypoly_to_string(c), print::rational(e)))
            .collect();
        format!("{} + O(t^({}))", body.join(" + "), print::rational(&s.known_order))
    }
}

impl BranchCoeff for Cplx {
    fn from_q(v: &Q, prec: u32) -> Self {
        Cplx::from_q(v, prec)
    }
    fn text(&self) -> String {
        print::complex(self)
    }
    fn series_text(s: &PuiseuxSeriesT<Self>) -> String {
        print::numeric_series_to_string(s)
    }
    fn mag_log2(&self) -> f64 {
        self.log2_abs()
    }
    fn negligible(&self, scale_log2: f64, prec: u32) -> bool {
        self.is_zero() || self.log2_abs() < scale_log2 - (prec / 2) as f64
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Node<K> {
    pub coeffs: Vec<Vec<K>>,
    pub prec0: usize,
    pub step: usize,
    pub e: u32,
    pub mu: Q,
    /// Number of roots of G tending to zero.
    pub d: usize,
    pub prec_bits: u32,
}

/// A compact edge of a node's Newton polygon, from `(i, j)` to `(i', j')`
/// with `j > j'`. Along the edge `x' ~ τ^lambda`.
#[derive(Clone, Debug)]
pub(crate) struct Edge<K> {
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub lambda: Q,
    /// The end point is the precision bound of the constant row, not a
    /// known coefficient: the edge and its roots are not certified.
    pub open: bool,
    /// `Σ a_(i,j) s^(j - to.1)` over points on the edge.
    pub char_poly: Vec<K>,
}

impl<K> Edge<K> {
    pub fn branch_count(&self) -> usize {
        self.from.1 - self.to.1
    }
}

impl<K: BranchCoeff> Node<K> {
    /// The whole family as a node with every root still unseparated.
    pub fn root(f: &TruncatedFamily, prec_bits: u32) -> Node<K> {
        let g = f.to_x_over_t_generic();
        let n = g.len().saturating_sub(1);
        let prec0 = f.trunc() + 1;
        let coeffs = g
            .into_iter()
            .map(|row| {
                let mut r: Vec<K> = row.iter().map(|c| K::from_q(c, prec_bits)).collect();
                r.resize(prec0, K::zero());
                r
            })
            .collect();
        Node {
            coeffs,
            prec0,
            step: 0,
            e: 1,
            mu: <Q as Zero>::zero(),
            d: n,
            prec_bits,
        }
    }

    /// Same as `root` but with coefficients already in the node domain.
    pub fn from_rows(rows: Vec<Vec<K>>, prec0: usize, prec_bits: u32) -> Node<K> {
        let d = rows.len().saturating_sub(1);
        let coeffs = rows
            .into_iter()
            .map(|mut r| {
                r.resize(prec0, K::zero());
                r
            })
            .collect();
        Node {
            coeffs,
            prec0,
            step: 0,
            e: 1,
            mu: <Q as Zero>::zero(),
            d,
            prec_bits,
        }
    }

    /// Lowest known τ-exponent with a nonzero coefficient in row `j`.
    pub fn lowest(&self, j: usize) -> Option<usize> {
        self.coeffs
            .get(j)?
            .iter()
            .position(|c| !c.is_zero())
    }

    /// The compact edges between `(0, d)` and the constant row, ordered by
    /// increasing `lambda`.
    pub fn polygon(&self) -> Vec<Edge<K>> {
        let mut pts: Vec<(usize, usize)> = Vec::new();
        for j in 0..=self.d {
            if let Some(i) = self.lowest(j) {
                pts.push((i, j));
            }
        }
        let open = self.lowest(0).is_none();
        if open {
            pts.push((self.prec0, 0));
        }
        let chain = hull_chain(&pts);
        let mut edges = Vec::new();
        for w in chain.windows(2) {
            let (from, to) = (w[0], w[1]);
            let lambda = Q::new(
                ((to.0 - from.0) as i64).into(),
                ((from.1 - to.1) as i64).into(),
            );
            let is_open = open && to.1 == 0;
            let mut char_poly = vec![K::zero(); from.1 - to.1 + 1];
            if !is_open {
                for j in to.1..=from.1 {
                    // point (i, j) lies on the edge iff i = from.0 + lambda (from.1 - j)
                    let i = Q::from_integer(from.0.into())
                        + &lambda * Q::from_integer(((from.1 - j) as i64).into());
                    if !i.is_integer() {
                        continue;
                    }
                    let i = i.to_integer().to_usize().expect("nonnegative index");
                    if self.lowest(j) == Some(i) {
                        char_poly[j - to.1] = self.coeffs[j][i].clone();
                    }
                }
            }
            edges.push(Edge {
                from,
                to,
                lambda,
                open: is_open,
                char_poly,
            });
        }
        edges
    }

    /// t-exponent of `x'` along an edge of this node.
    pub fn t_exponent(&self, lambda: &Q) -> Q {
        &self.mu + lambda / Q::from_integer(self.e.into())
    }

    /// Substitutes `x' = τ^lambda (c + x'')` for a root `c` of multiplicity
    /// `k` of the edge's characteristic polynomial, with `σ = τ^(1/q)`.
    pub fn substitute(&self, lambda: &Q, from: (usize, usize), c: &K, k: usize) -> Result<Node<K>> {
        let p = lambda.numer().to_usize().expect("edge slope fits");
        let q = lambda.denom().to_usize().expect("edge slope fits");
        let w = q * from.0 + p * from.1;
        let prec0 = (q * self.prec0)
            .checked_sub(w)
            .filter(|v| *v > 0)
            .ok_or_else(|| Error::trunc("insufficient depth: substitution exhausts the known t-terms"))?;
        let step = q * self.step + p;
        let n = self.coeffs.len() - 1;
        let mut cpow = vec![K::one()];
        for j in 1..=n {
            cpow.push(cpow[j - 1].mul(c));
        }
        let mut out: Vec<Vec<K>> = (0..=n).map(|l| vec![K::zero(); prec0 + step * l]).collect();
        let mut mag: Vec<Vec<f64>> = out.iter().map(|r| vec![f64::NEG_INFINITY; r.len()]).collect();
        for (j, row) in self.coeffs.iter().enumerate() {
            let mut binom = vec![num_bigint::BigInt::from(1); j + 1];
            for l in 1..=j {
                binom[l] = &binom[l - 1] * (j - l + 1) / l;
            }
            let binom: Vec<K> = binom
                .into_iter()
                .map(|b| K::from_q(&Q::from_integer(b), self.prec_bits))
                .collect();
            for (kk, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let expo = q * kk + p * j;
                debug_assert!(expo >= w, "polygon point below its edge");
                let m = expo - w;
                for l in 0..=j {
                    if m >= out[l].len() {
                        continue;
                    }
                    let term = a.mul(&cpow[j - l]).mul(&binom[l]);
                    mag[l][m] = mag[l][m].max(term.mag_log2());
                    out[l][m] = out[l][m].add(&term);
                }
            }
        }
        for (l, row) in out.iter_mut().enumerate() {
            for (m, v) in row.iter_mut().enumerate() {
                // the roots of the characteristic polynomial make the low rows vanish at σ^0
                if (m == 0 && l < k) || v.negligible(mag[l][m], self.prec_bits) {
                    *v = K::zero();
                }
            }
        }
        Ok(Node {
            coeffs: out,
            prec0,
            step,
            e: self.e * q as u32,
            mu: self.t_exponent(lambda),
            d: k,
            prec_bits: self.prec_bits,
        })
    }

    /// Moves a root `a` of the constant-in-τ polynomial to the origin.
    pub fn recenter(&self, a: &K, k: usize) -> Result<Node<K>> {
        self.substitute(&<Q as Zero>::zero(), (0, 0), a, k)
    }
}

/// Lower convex chain of a Newton polygon: from the point with the largest
/// x-exponent on the `i = min` column down to the lowest x-exponent, merging
/// collinear points into a single edge.
pub(crate) fn hull_chain(points: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let Some(jmin) = points.iter().map(|p| p.1).min() else {
        return Vec::new();
    };
    let imin = points.iter().map(|p| p.0).min().expect("nonempty");
    let start_j = points
        .iter()
        .filter(|p| p.0 == imin)
        .map(|p| p.1)
        .min()
        .expect("nonempty");
    let mut cur = (imin, start_j);
    let mut chain = vec![cur];
    while cur.1 > jmin {
        let mut best: Option<(Q, (usize, usize))> = None;
        for &pt in points.iter().filter(|p| p.1 < cur.1) {
            let slope = Q::new(
                (pt.0 as i64 - cur.0 as i64).into(),
                ((cur.1 - pt.1) as i64).into(),
            );
            let better = match &best {
                None => true,
                Some((s, b)) => slope < *s || (slope == *s && pt.1 < b.1),
            };
            if better {
                best = Some((slope, pt));
            }
        }
        let (_, nxt) = best.expect("a lower point exists");
        chain.push(nxt);
        cur = nxt;
    }
    chain
}

impl TruncatedFamily {
    /// Rows indexed by x-exponent, each listing the rational t-coefficients;
    /// requires a y-free family.
    pub(crate) fn to_x_over_t_generic(&self) -> Vec<Vec<Q>> {
        self.to_x_over_t(None)
            .coeffs()
            .iter()
            .map(|c| c.coeffs().to_vec())
            .collect()
    }

    /// Rows indexed by x-exponent over Q[y].
    pub(crate) fn rows_over_qy(&self) -> Vec<Vec<QPoly>> {
        let n = self.coeffs().iter().map(|c| c.deg_x()).max().unwrap_or(0);
        (0..=n)
            .map(|j| self.coeffs().iter().map(|c| c.coeff_x(j)).collect())
            .collect()
    }
}
