use std::collections::BTreeMap;

use num_traits::Zero;

use super::polyxy::{PolyXY, Term};
use super::ring::Q;
use super::upoly::QPoly;

/// Sparse polynomial in Q[x, y, z], keyed by `[deg_x, deg_y, deg_z]`.
#[derive(Clone, PartialEq, Eq, Debug, Hash, Default)]
pub struct PolyXYZ {
    terms: BTreeMap<[u32; 3], Q>,
}

impl PolyXYZ {
    pub fn zero() -> Self {
        PolyXYZ::default()
    }

    pub fn from_terms(it: impl IntoIterator<Item = ([u32; 3], Q)>) -> Self {
        let mut terms: BTreeMap<[u32; 3], Q> = BTreeMap::new();
        for (k, c) in it {
            let e = terms.entry(k).or_insert_with(Q::zero);
            *e += c;
        }
        terms.retain(|_, c| !c.is_zero());
        PolyXYZ { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: [u32; 3]) -> Q {
        self.terms.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    /// Terms in canonical order: total degree descending, then x, then y descending.
    pub fn terms(&self) -> Vec<([u32; 3], Q)> {
        let mut v: Vec<([u32; 3], Q)> = self.terms.iter().map(|(k, c)| (*k, c.clone())).collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then(b[0].cmp(&a[0])).then(b[1].cmp(&a[1]))
        });
        v
    }

    /// Total degree if every term has the same degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|k| k.iter().sum::<u32>());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Vec::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.push(([a[0] + b[0], a[1] + b[1], a[2] + b[2]], ca * cb));
            }
        }
        PolyXYZ::from_terms(out)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        PolyXYZ::from_terms(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(k, c)| (*k, c.clone())),
        )
    }

    /// Affine chart `z = 1`.
    pub fn dehomogenize(&self) -> PolyXY {
        PolyXY::from_terms(self.terms.iter().map(|(k, c)| Term {
            dx: k[0] as usize,
            dy: k[1] as usize,
            coeff: c.clone(),
        }))
    }

    /// Homogenizes an affine polynomial to total degree `n`.
    pub fn homogenize(p: &PolyXY, n: u32) -> Option<Self> {
        let mut out = Vec::new();
        for t in p.terms() {
            let d = (t.dx + t.dy) as u32;
            if d > n {
                return None;
            }
            out.push(([t.dx as u32, t.dy as u32, n - d], t.coeff));
        }
        Some(PolyXYZ::from_terms(out))
    }

    /// Restriction to the line `z = 0` as a polynomial in x with y set to 1.
    /// For a binary form of degree n whose x^n coefficient is nonzero this
    /// loses nothing.
    pub fn at_infinity_y1(&self) -> QPoly {
        let mut coeffs: Vec<Q> = Vec::new();
        for (k, c) in &self.terms {
            if k[2] == 0 {
                let i = k[0] as usize;
                if coeffs.len() <= i {
                    coeffs.resize(i + 1, Q::zero());
                }
                coeffs[i] += c;
            }
        }
        QPoly::new(coeffs)
    }

    pub fn eval(&self, x: &Q, y: &Q, z: &Q) -> Q {
        let mut acc = Q::zero();
        for (k, c) in &self.terms {
            acc += c * pow_q(x, k[0]) * pow_q(y, k[1]) * pow_q(z, k[2]);
        }
        acc
    }

    /// Applies the linear substitution `(x, y, z) -> M (x, y, z)`.
    pub fn linear_change(&self, m: &[[Q; 3]; 3]) -> Self {
        let rows: Vec<PolyXYZ> = m
            .iter()
            .map(|r| {
                PolyXYZ::from_terms([
                    ([1, 0, 0], r[0].clone()),
                    ([0, 1, 0], r[1].clone()),
                    ([0, 0, 1], r[2].clone()),
                ])
            })
            .collect();
        let mut out = PolyXYZ::zero();
        for (k, c) in &self.terms {
            let mut term = PolyXYZ::from_terms([([0, 0, 0], c.clone())]);
            for (v, &e) in k.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&rows[v]);
                }
            }
            out = out.add(&term);
        }
        out
    }
}

fn pow_q(b: &Q, e: u32) -> Q {
    num_traits::pow::pow(b.clone(), e as usize)
}
