//! Simultaneous root approximation by Aberth iteration.

use super::numeric::{rel_gap_log2, BigFloat, Cplx};
use super::ring::Ring;

fn eval_with_derivative(coeffs: &[Cplx], z: &Cplx) -> (Cplx, Cplx) {
    let mut p = Cplx::zero();
    let mut dp = Cplx::zero();
    for c in coeffs.iter().rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z).add(c);
    }
    (p, dp)
}

pub fn eval_poly(coeffs: &[Cplx], z: &Cplx) -> Cplx {
    coeffs
        .iter()
        .rev()
        .fold(Cplx::zero(), |acc, c| acc.mul(z).add(c))
}

pub fn derivative(coeffs: &[Cplx]) -> Vec<Cplx> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul(&Cplx::from_i64(i as i64)))
        .collect()
}

/// All complex roots of `Σ coeffs[i] z^i` (leading coefficient nonzero),
/// approximated to about `prec` bits for simple roots.
///
/// Starting points lie on a circle whose radius is the geometric bound
/// `max |a_i / a_n|^(1/(n-i))`, with a fixed angular offset, so the result is
/// deterministic.
pub fn aberth_roots(coeffs: &[Cplx], prec: u32) -> Vec<Cplx> {
    let mut cs: Vec<Cplx> = coeffs.iter().map(|c| c.clone().with_prec(prec)).collect();
    while cs.last().is_some_and(|c| c.is_zero()) {
        cs.pop();
    }
    let n = cs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = cs[n].clone();
    let cs: Vec<Cplx> = cs.iter().map(|c| c.div(&lead)).collect();
    if n == 1 {
        return vec![cs[0].neg()];
    }
    // log2 of the radius bound
    let mut lr = f64::NEG_INFINITY;
    for (i, c) in cs.iter().enumerate().take(n) {
        let l = c.log2_abs();
        if l.is_finite() {
            lr = lr.max(l / (n - i) as f64);
        }
    }
    if !lr.is_finite() {
        // z^n: all roots are zero
        return vec![Cplx::zero().with_prec(prec); n];
    }
    let radius = 2f64.powf(lr.clamp(-900.0, 900.0));
    let mut z: Vec<Cplx> = (0..n)
        .map(|k| {
            let ang = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Cplx::from_f64(radius * ang.cos(), radius * ang.sin(), prec)
        })
        .collect();
    let target = -(prec as f64) + 8.0;
    let mut done = vec![false; n];
    for _ in 0..(40 * n + 10 * prec as usize / 8) {
        let mut worst = f64::NEG_INFINITY;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = eval_with_derivative(&cs, &z[k]);
            if p.is_zero() {
                done[k] = true;
                continue;
            }
            let mut sum = Cplx::zero();
            for j in 0..n {
                if j != k {
                    let d = z[k].sub(&z[j]);
                    if !d.is_zero() {
                        sum = sum.add(&Cplx::one().with_prec(prec).div(&d));
                    }
                }
            }
            let ratio = if dp.is_zero() {
                Cplx::from_f64(1e-3, 1e-3, prec)
            } else {
                p.div(&dp)
            };
            let denom = Cplx::one().sub(&ratio.mul(&sum));
            let w = if denom.is_zero() { ratio } else { ratio.div(&denom) };
            let rel = w.log2_abs() - z[k].log2_abs().max(-(prec as f64));
            z[k] = z[k].sub(&w);
            if rel < target {
                done[k] = true;
            }
            worst = worst.max(rel);
        }
        if done.iter().all(|d| *d) || worst < target {
            break;
        }
    }
    z
}

/// Groups roots whose relative distance is below `2^tol_log2`, returning
/// each cluster's mean and size.
pub fn cluster(roots: &[Cplx], tol_log2: f64) -> Vec<(Cplx, usize)> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    for i in 0..n {
        for j in i + 1..n {
            let close = {
                let g = rel_gap_log2(&roots[i], &roots[j]);
                g < tol_log2 || (roots[i].is_zero() && roots[j].is_zero())
            };
            if close {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(g, _)| *g == r) {
            Some((_, v)) => v.push(i),
            None => groups.push((r, vec![i])),
        }
    }
    groups
        .into_iter()
        .map(|(_, idx)| {
            let prec = roots[idx[0]].prec();
            let mut s = Cplx::zero();
            for &i in &idx {
                s = s.add(&roots[i]);
            }
            let inv = BigFloat::from_i64(1).with_prec(prec).div(&BigFloat::from_i64(idx.len() as i64));
            (s.scale_f(&inv), idx.len())
        })
        .collect()
}

/// Newton refinement of a root of multiplicity `m` using the `(m-1)`-th
/// derivative, where the root is simple.
pub fn refine_multiple(coeffs: &[Cplx], start: &Cplx, m: usize, prec: u32) -> Cplx {
    let mut d = coeffs.to_vec();
    for _ in 1..m {
        d = derivative(&d);
    }
    let mut z = start.clone().with_prec(prec);
    for _ in 0..(prec.ilog2() as usize + 6) {
        let (p, dp) = eval_with_derivative(&d, &z);
        if p.is_zero() || dp.is_zero() {
            break;
        }
        let step = p.div(&dp);
        let small = step.log2_abs() - z.log2_abs().max(-(prec as f64)) < -(prec as f64) + 4.0;
        z = z.sub(&step);
        if small {
            break;
        }
    }
    z
}

/// Roots with multiplicities: Aberth, clustering at relative `2^tol_log2`,
/// then refinement of every repeated cluster.
pub fn roots_with_multiplicity(coeffs: &[Cplx], prec: u32, tol_log2: f64) -> Vec<(Cplx, usize)> {
    let raw = aberth_roots(coeffs, prec);
    cluster(&raw, tol_log2)
        .into_iter()
        .map(|(c, m)| {
            if m > 1 {
                (refine_multiple(coeffs, &c, m, prec), m)
            } else {
                (c, m)
            }
        })
        .collect()
}

/// Like [`roots_with_multiplicity`], also returning the clustering margin:
/// the largest relative gap merged into one cluster and the smallest gap
/// left between clusters, both as log2 values.
pub fn roots_with_margin(coeffs: &[Cplx], prec: u32, tol_log2: f64) -> (Vec<(Cplx, usize)>, f64, f64) {
    let raw = aberth_roots(coeffs, prec);
    let (mut within, mut between) = (f64::NEG_INFINITY, f64::INFINITY);
    for i in 0..raw.len() {
        for j in i + 1..raw.len() {
            let g = rel_gap_log2(&raw[i], &raw[j]);
            if g < tol_log2 {
                within = within.max(g);
            } else {
                between = between.min(g);
            }
        }
    }
    let roots = cluster(&raw, tol_log2)
        .into_iter()
        .map(|(c, m)| {
            if m > 1 {
                (refine_multiple(coeffs, &c, m, prec), m)
            } else {
                (c, m)
            }
        })
        .collect();
    (roots, within, between)
}
