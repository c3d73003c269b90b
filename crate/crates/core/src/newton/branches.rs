use num_traits::Zero;
use serde::Serialize;

use super::node::{BranchCoeff, Node};
use crate::arith::roots::roots_with_margin;
use crate::arith::{Cplx, PolyXY, PuiseuxSeriesT, QPoly, TruncatedFamily, UPoly, Q, DEFAULT_PRECISION_BITS};
use crate::elim::{discriminant, split_over_q};
use crate::error::{Error, Result};
use crate::parse::print;

/// Polygon iterations allowed before a family is declared non-separating.
pub const DEPTH_CAP: usize = 64;

/// log2 of the default relative clustering tolerance 1e-12.
pub const DEFAULT_CLUSTER_TOL_LOG2: f64 = -39.863_137_138_648_35;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Numeric {
        precision_bits: u32,
        cluster_tol_log2: f64,
    },
}

impl Backend {
    pub fn numeric(precision_bits: u32) -> Backend {
        Backend::Numeric {
            precision_bits,
            cluster_tol_log2: DEFAULT_CLUSTER_TOL_LOG2,
        }
    }

    pub fn default_numeric() -> Backend {
        Backend::numeric(DEFAULT_PRECISION_BITS)
    }
}

#[derive(Clone, Debug, PartialEq)]
struct Step {
    node: usize,
    key: (usize, usize),
    exponent: Q,
}

/// Every t-root of a family, grouped by center.
#[derive(Clone, Debug)]
pub struct BranchSet<K> {
    pub branches: Vec<PuiseuxSeriesT<K>>,
    pub backend: Backend,
    /// Smallest certified order over all branches.
    pub certified_order: Q,
    /// Distinct values s(0), and the index into them for each branch.
    pub centers: Vec<K>,
    pub center_of: Vec<usize>,
    /// Numeric mode: log2 of the widest gap merged into a cluster and of the
    /// narrowest gap kept between clusters.
    pub margin: Option<(f64, f64)>,
    paths: Vec<Vec<Step>>,
}

pub type ExactBranches = BranchSet<Q>;
pub type NumericBranches = BranchSet<Cplx>;

trait RootSource<K> {
    fn roots(&mut self, poly: &[K]) -> Result<Vec<(K, usize)>>;
}

struct ExactRoots;

impl RootSource<Q> for ExactRoots {
    fn roots(&mut self, poly: &[Q]) -> Result<Vec<(Q, usize)>> {
        split_over_q(&QPoly::new(poly.to_vec()))
            .map(|r| r.into_iter().map(|(c, m)| (c, m as usize)).collect())
            .ok_or_else(|| Error::Unsupported("irrational branch data in exact mode; use the numeric backend".into()))
    }
}

struct NumericRoots {
    prec: u32,
    tol: f64,
    within: f64,
    between: f64,
}

impl RootSource<Cplx> for NumericRoots {
    fn roots(&mut self, poly: &[Cplx]) -> Result<Vec<(Cplx, usize)>> {
        let (r, w, b) = roots_with_margin(poly, self.prec, self.tol);
        self.within = self.within.max(w);
        self.between = self.between.min(b);
        Ok(r)
    }
}

struct Leaf<K> {
    terms: Vec<(Q, K)>,
    path: Vec<Step>,
    known: Q,
}

struct Expander<'a, K, R> {
    roots: &'a mut R,
    depth: Option<Q>,
    leaves: Vec<Leaf<K>>,
    next_id: usize,
}

impl<K: BranchCoeff, R: RootSource<K>> Expander<'_, K, R> {
    fn expand(&mut self, node: Node<K>, terms: Vec<(Q, K)>, path: Vec<Step>, level: usize) -> Result<()> {
        if level > DEPTH_CAP {
            return Err(Error::trunc(format!(
                "non-separating family: branches still coincide after {DEPTH_CAP} polygon iterations (discriminant zero to this truncation?)"
            )));
        }
        if node.d == 1 {
            return self.finish_single(node, terms, path);
        }
        self.next_id += 1;
        let id = self.next_id;
        for (ei, edge) in node.polygon().into_iter().enumerate() {
            let expo = node.t_exponent(&edge.lambda);
            if edge.open {
                if edge.branch_count() >= 2 {
                    return Err(Error::trunc(format!(
                        "insufficient depth: {} branches undetermined beyond t^({})",
                        edge.branch_count(),
                        print::rational(&expo)
                    )));
                }
                let mut p = path.clone();
                p.push(Step { node: id, key: (ei, 0), exponent: expo.clone() });
                self.leaves.push(Leaf { terms: terms.clone(), path: p, known: expo });
                continue;
            }
            for (ri, (c, k)) in self.roots.roots(&edge.char_poly)?.into_iter().enumerate() {
                let child = node.substitute(&edge.lambda, edge.from, &c, k)?;
                let mut t = terms.clone();
                t.push((expo.clone(), c));
                let mut p = path.clone();
                p.push(Step { node: id, key: (ei, ri), exponent: expo.clone() });
                self.expand(child, t, p, level + 1)?;
            }
        }
        Ok(())
    }

    /// Continues a separated branch term by term.
    fn finish_single(&mut self, mut node: Node<K>, mut terms: Vec<(Q, K)>, path: Vec<Step>) -> Result<()> {
        loop {
            let Some(b0) = node.lowest(0) else {
                let known = node.t_exponent(&Q::from_integer(node.prec0.into()));
                if let Some(dp) = &self.depth {
                    if known < *dp {
                        return Err(Error::trunc(format!(
                            "depth exceeds truncation support: branch known only to t^({})",
                            print::rational(&known)
                        )));
                    }
                }
                self.leaves.push(Leaf { terms, path, known });
                return Ok(());
            };
            let lambda = Q::from_integer(b0.into());
            let expo = node.t_exponent(&lambda);
            if self.depth.as_ref().is_some_and(|dp| expo >= *dp) {
                self.leaves.push(Leaf { terms, path, known: expo });
                return Ok(());
            }
            let c = node.coeffs[0][b0]
                .neg()
                .exact_div(&node.coeffs[1][0])
                .expect("field division");
            node = node.substitute(&lambda, (0, 1), &c, 1)?;
            terms.push((expo, c));
        }
    }
}

fn check_family(f: &TruncatedFamily) -> Result<()> {
    if !f.is_y_free() {
        return Err(Error::Unsupported(
            "branch expansion needs a y-free family (numeric backend requires specialized y)".into(),
        ));
    }
    if f.x_degree() == 0 {
        return Err(Error::hyp("F_0 has no roots in x"));
    }
    let disc = discriminant(&f.to_x_over_t(None));
    if disc.truncate(f.trunc() + 1).is_zero() {
        return Err(Error::hyp(format!(
            "discriminant vanishes to truncation order {}",
            f.trunc()
        )));
    }
    Ok(())
}

fn run<K: BranchCoeff, R: RootSource<K>>(
    f: &TruncatedFamily,
    roots: &mut R,
    depth: Option<Q>,
    prec_bits: u32,
) -> Result<(Vec<Leaf<K>>, Vec<K>, Vec<usize>)> {
    let root: Node<K> = Node::root(f, prec_bits);
    let f0: Vec<K> = root.coeffs.iter().map(|r| r[0].clone()).collect();
    let v = f0.iter().position(|c| !c.is_zero()).expect("F_0 nonzero");
    let mut centers: Vec<(K, usize)> = Vec::new();
    if v > 0 {
        centers.push((K::zero(), v));
    }
    if f0.len() - v > 1 {
        centers.extend(roots.roots(&f0[v..])?);
    }
    let mut ex = Expander { roots, depth, leaves: Vec::new(), next_id: 0 };
    let mut center_of = Vec::new();
    for (ci, (a, k)) in centers.iter().enumerate() {
        let before = ex.leaves.len();
        let child = root.recenter(a, *k)?;
        let step = Step { node: 0, key: (0, ci), exponent: Q::zero() };
        ex.expand(child, vec![(Q::zero(), a.clone())], vec![step], 1)?;
        center_of.extend(std::iter::repeat_n(ci, ex.leaves.len() - before));
    }
    let leaves = ex.leaves;
    Ok((leaves, centers.into_iter().map(|c| c.0).collect(), center_of))
}

fn assemble<K: BranchCoeff>(
    leaves: Vec<Leaf<K>>,
    centers: Vec<K>,
    center_of: Vec<usize>,
    backend: Backend,
    margin: Option<(f64, f64)>,
) -> BranchSet<K> {
    let certified_order = leaves
        .iter()
        .map(|l| l.known.clone())
        .min()
        .unwrap_or_else(Q::zero);
    let mut branches = Vec::new();
    let mut paths = Vec::new();
    for l in leaves {
        branches.push(PuiseuxSeriesT::new(l.terms, l.known));
        paths.push(l.path);
    }
    BranchSet {
        branches,
        backend,
        certified_order,
        centers,
        center_of,
        margin,
        paths,
    }
}

/// Exact Puiseux expansion; every characteristic polynomial must split over Q.
///
/// `depth = Some(d)` expands each branch until its certified order reaches
/// `d`; `None` expands as far as the truncation supports.
pub fn expand_branches_exact(f: &TruncatedFamily, depth: Option<Q>) -> Result<ExactBranches> {
    check_family(f)?;
    let (leaves, centers, center_of) = run(f, &mut ExactRoots, depth, 0)?;
    let set = assemble(leaves, centers, center_of, Backend::Exact, None);
    set.verify_residuals(f)?;
    Ok(set)
}

/// Numeric Puiseux expansion with complex coefficients.
pub fn expand_branches_numeric(f: &TruncatedFamily, backend: Backend, depth: Option<Q>) -> Result<NumericBranches> {
    let Backend::Numeric { precision_bits, cluster_tol_log2 } = backend else {
        return Err(Error::hyp("numeric expansion needs a numeric backend"));
    };
    check_family(f)?;
    let mut roots = NumericRoots {
        prec: precision_bits,
        tol: cluster_tol_log2,
        within: f64::NEG_INFINITY,
        between: f64::INFINITY,
    };
    let (leaves, centers, center_of) = run(f, &mut roots, depth, precision_bits)?;
    let margin = Some((roots.within, roots.between));
    let set = assemble(leaves, centers, center_of, backend, margin);
    set.verify_residuals(f)?;
    Ok(set)
}

/// Dense τ-series with a magnitude bound per entry (numeric bookkeeping).
struct Dense<K> {
    v: Vec<K>,
    mag: Vec<f64>,
}

impl<K: BranchCoeff> Dense<K> {
    fn mul(&self, rhs: &Dense<K>) -> Dense<K> {
        let n = self.v.len();
        let mut v = vec![K::zero(); n];
        let mut mag = vec![f64::NEG_INFINITY; n];
        for i in 0..n {
            if self.v[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if rhs.v[j].is_zero() {
                    continue;
                }
                v[i + j] = v[i + j].add(&self.v[i].mul(&rhs.v[j]));
                mag[i + j] = mag[i + j].max(self.mag[i] + rhs.mag[j]);
            }
        }
        Dense { v, mag }
    }
}

impl<K: BranchCoeff> BranchSet<K> {
    /// Substitutes every branch into F and checks that the residual vanishes
    /// below `min(known order, T + 1)`: exactly in exact mode, to half the
    /// working precision in numeric mode.
    pub fn verify_residuals(&self, f: &TruncatedFamily) -> Result<()> {
        let prec_bits = match self.backend {
            Backend::Exact => 0,
            Backend::Numeric { precision_bits, .. } => precision_bits,
        };
        let rows = f.to_x_over_t_generic();
        let limit = Q::from_integer((f.trunc() + 1).into());
        for (bi, s) in self.branches.iter().enumerate() {
            let e = s.ramification as usize;
            let need = s.known_order.clone().min(limit.clone()) * Q::from_integer(e.into());
            let need = need.ceil().to_integer();
            let need: usize = need.try_into().unwrap_or(0);
            if need == 0 {
                continue;
            }
            let mut sv = Dense { v: vec![K::zero(); need], mag: vec![f64::NEG_INFINITY; need] };
            for (ex, c) in &s.terms {
                let k = (ex * Q::from_integer(e.into())).to_integer();
                let k: usize = k.try_into().expect("nonnegative exponent");
                if k < need {
                    sv.v[k] = c.clone();
                    sv.mag[k] = c.mag_log2();
                }
            }
            // Horner in x over dense τ-series
            let mut acc = Dense { v: vec![K::zero(); need], mag: vec![f64::NEG_INFINITY; need] };
            for row in rows.iter().rev() {
                acc = acc.mul(&sv);
                for (i, c) in row.iter().enumerate() {
                    let k = i * e;
                    if k < need && !c.is_zero() {
                        let kc = K::from_q(c, prec_bits);
                        acc.mag[k] = acc.mag[k].max(kc.mag_log2());
                        acc.v[k] = acc.v[k].add(&kc);
                    }
                }
            }
            for k in 0..need {
                if !acc.v[k].negligible(acc.mag[k], prec_bits) {
                    return Err(Error::Inconsistency(format!(
                        "branch {} leaves a residual at t^({}/{e})",
                        bi + 1,
                        k
                    )));
                }
            }
        }
        Ok(())
    }

    /// Indices of branches whose center is a root of `factor`.
    pub fn branches_on(&self, factor: &PolyXY) -> Vec<usize> {
        let poly = factor.to_x_poly().unwrap_or_else(|| UPoly::new(vec![]));
        let prec_bits = match self.backend {
            Backend::Exact => 0,
            Backend::Numeric { precision_bits, .. } => precision_bits,
        };
        let on: Vec<bool> = self
            .centers
            .iter()
            .map(|c| {
                let mut v = K::zero();
                let mut mag = f64::NEG_INFINITY;
                let mut cp = K::one();
                for a in poly.coeffs() {
                    let term = K::from_q(a, prec_bits).mul(&cp);
                    mag = mag.max(term.mag_log2());
                    v = v.add(&term);
                    cp = cp.mul(c);
                }
                v.negligible(mag, prec_bits)
            })
            .collect();
        (0..self.branches.len()).filter(|&i| on[self.center_of[i]]).collect()
    }

    pub fn report(&self) -> BranchReport {
        BranchReport {
            backend: self.backend,
            certified_order: print::rational(&self.certified_order),
            centers: self.centers.iter().map(|c| c.text()).collect(),
            branches: self
                .branches
                .iter()
                .enumerate()
                .map(|(i, s)| BranchLine {
                    center: self.center_of[i] + 1,
                    series: K::series_text(s),
                    ramification: s.ramification,
                    known_order: print::rational(&s.known_order),
                })
                .collect(),
            margin_log2: self.margin,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchLine {
    pub center: usize,
    pub series: String,
    pub ramification: u32,
    pub known_order: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchReport {
    pub backend: Backend,
    pub certified_order: String,
    pub centers: Vec<String>,
    pub branches: Vec<BranchLine>,
    pub margin_log2: Option<(f64, f64)>,
}

/// Orders `m(i, j)` of `s_i - s_j` for pairs of branches with equal centers
/// (indices are 0-based, `i < j`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeparationOrders {
    #[serde(serialize_with = "ser_orders")]
    pub orders: Vec<((usize, usize), Q)>,
}

fn ser_orders<S: serde::Serializer>(v: &[((usize, usize), Q)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for ((i, j), m) in v {
        seq.serialize_element(&(i + 1, j + 1, print::rational(m)))?;
    }
    seq.end()
}

impl SeparationOrders {
    pub fn get(&self, i: usize, j: usize) -> Option<&Q> {
        let key = (i.min(j), i.max(j));
        self.orders.iter().find(|(k, _)| *k == key).map(|(_, m)| m)
    }

    /// Largest order among pairs drawn from `idx`; `None` for fewer than two.
    pub fn max_within(&self, idx: &[usize]) -> Option<Q> {
        let mut best: Option<Q> = None;
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                if let Some(m) = self.get(i, j) {
                    if best.as_ref().is_none_or(|b| m > b) {
                        best = Some(m.clone());
                    }
                }
            }
        }
        best
    }
}

pub fn separation_orders<K>(b: &BranchSet<K>) -> SeparationOrders {
    let mut orders = Vec::new();
    for i in 0..b.paths.len() {
        for j in i + 1..b.paths.len() {
            if b.center_of[i] != b.center_of[j] {
                continue;
            }
            let (pi, pj) = (&b.paths[i], &b.paths[j]);
            let split = pi
                .iter()
                .zip(pj.iter())
                .find(|(a, c)| a.key != c.key)
                .expect("distinct branches diverge");
            debug_assert_eq!(split.0.node, split.1.node);
            let m = split.0.exponent.clone().min(split.1.exponent.clone());
            orders.push(((i, j), m));
        }
    }
    SeparationOrders { orders }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qr};
    use crate::parse::parse_family_exact;

    #[test]
    fn single_linear_branch() {
        let f = parse_family_exact("x - t").unwrap();
        let b = expand_branches_exact(&f, None).unwrap();
        assert_eq!(b.branches.len(), 1);
        assert_eq!(print::series_to_string(&b.branches[0]), "t");
    }

    #[test]
    fn quadratic_numeric() {
        let f = parse_family_exact("x^2 + 2*x*t + t^2 + t^3").unwrap();
        assert!(matches!(expand_branches_exact(&f, Some(q(2))), Err(Error::Unsupported(_))));
        let b = expand_branches_numeric(&f, Backend::default_numeric(), Some(q(2))).unwrap();
        assert_eq!(b.branches.len(), 2);
        for s in &b.branches {
            assert_eq!(s.ramification, 2);
            let lead = s.coeff(&q(1));
            assert!((lead.re.to_f64() + 1.0).abs() < 1e-30);
            let c = s.coeff(&qr(3, 2));
            assert!((c.im.to_f64().abs() - 1.0).abs() < 1e-30);
        }
        let orders = separation_orders(&b);
        assert_eq!(orders.orders, vec![((0, 1), qr(3, 2))]);
    }

    #[test]
    fn first_kind_branches() {
        let f = parse_family_exact("x^2*(x+1) + (x+2)*t").unwrap();
        let b = expand_branches_numeric(&f, Backend::default_numeric(), None).unwrap();
        assert_eq!(b.branches.len(), 3);
        let at0 = b.branches_on(&crate::parse::parse_poly("x").unwrap());
        assert_eq!(at0.len(), 2);
        for &i in &at0 {
            // ±sqrt(-2) t^(1/2)
            let c = b.branches[i].coeff(&qr(1, 2));
            assert!((c.im.to_f64().abs() - 2f64.sqrt()).abs() < 1e-30);
        }
        assert_eq!(separation_orders(&b).max_within(&at0), Some(qr(1, 2)));
        let at1 = b.branches_on(&crate::parse::parse_poly("x + 1").unwrap());
        assert_eq!(at1.len(), 1);
    }

    #[test]
    fn exact_rational_puiseux() {
        // (x - t)(x + t)(x - 1) + t^3 x: branches at 0 separate at order 1
        let f = parse_family_exact("(x - t)*(x + t)*(x - 1)").unwrap();
        let f = f.with_trunc(4);
        let b = expand_branches_exact(&f, None).unwrap();
        assert_eq!(b.branches.len(), 3);
        let at0 = b.branches_on(&crate::parse::parse_poly("x").unwrap());
        assert_eq!(separation_orders(&b).max_within(&at0), Some(q(1)));
        assert!(b.branches.iter().any(|s| print::series_to_string(s) == "t"));
        assert!(b.branches.iter().any(|s| print::series_to_string(s) == "-t"));
    }

    #[test]
    fn vanishing_discriminant_refused() {
        let f = parse_family_exact("(x - t)^2").unwrap().with_trunc(3);
        assert!(matches!(expand_branches_exact(&f, None), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn y_requires_specialization() {
        let f = parse_family_exact("x^2 + y*t").unwrap();
        assert!(matches!(
            expand_branches_numeric(&f, Backend::default_numeric(), None),
            Err(Error::Unsupported(_))
        ));
    }
}
