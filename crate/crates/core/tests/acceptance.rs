//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Every expected value here is computed from the family's coefficients by
//! formulas written out in this file, never by the library route under test.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dualimit_core::arith::{q, qr, ExactSeries, PolyXY, QPoly, TruncatedFamily, Q};
use dualimit_core::disc::{discriminant_series, special_fiber_components, verify_product_formula, GfdMethod, NUMERIC_REL_TOL};
use dualimit_core::dual::{limit_dual_cycle, vertices_report};
use dualimit_core::elim::{discriminant, rational_roots, resultant};
use dualimit_core::parse::{parse_family, parse_homogeneous, parse_poly, parse_series, print};
use dualimit_core::types::{general_type, truncation_sufficiency_check, type_by, TypeMethod};
use dualimit_core::vertex::{classify_kind, compute_vertex, kind_vertex_value, vertex_from_zd, zd_search, Kind, VertexMethod, VertexRoute};
use dualimit_core::Backend;

type Check = Result<String, String>;
type Criterion = fn() -> Check;
type Generator<'a> = &'a dyn Fn(&mut ChaCha8Rng) -> (TruncatedFamily, QPoly);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn nonzero(r: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let v = r.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

fn xy(r: &mut ChaCha8Rng, dx: usize, dy: usize, bound: i64) -> PolyXY {
    let mut p = PolyXY::zero();
    for i in 0..=dx {
        for j in 0..=dy {
            p = p.add(&PolyXY::monomial(q(r.gen_range(-bound..=bound)), i, j));
        }
    }
    p
}

fn monic(r: &mut ChaCha8Rng, d: usize, dy: usize) -> PolyXY {
    xy(r, d - 1, dy, 4).add(&PolyXY::monomial(Q::one(), d, 0))
}

fn at0(p: &PolyXY) -> QPoly {
    p.coeff_x(0)
}

fn disc_xy(p: &PolyXY) -> QPoly {
    discriminant(p.as_upoly())
}

fn fam(coeffs: Vec<PolyXY>, trunc: usize) -> TruncatedFamily {
    TruncatedFamily::new(coeffs, trunc).expect("well-formed family")
}

fn oracle(f: &TruncatedFamily) -> Result<QPoly, String> {
    discriminant_series(f)
        .map(|d| d.delta_prime_0)
        .map_err(|e| format!("{}: {e}", print::family_to_string(f)))
}

fn show(f: &TruncatedFamily) -> String {
    print::family_to_string(f)
}

fn c(v: Q) -> QPoly {
    QPoly::constant(v)
}

/// A square-free monic A with A(0) != 0.
fn random_a(r: &mut ChaCha8Rng, dy: usize) -> PolyXY {
    loop {
        let d = r.gen_range(1..=4);
        let a = monic(r, d, dy);
        if !at0(&a).is_zero() && !disc_xy(&a).is_zero() {
            return a;
        }
    }
}

/// `x^2 A + B t` with its expected Δ'₀ = Δ(A) · (-4 B(0) A(0)^3).
fn first_kind(r: &mut ChaCha8Rng, dy: usize) -> (TruncatedFamily, QPoly) {
    let a = random_a(r, dy);
    let b = loop {
        let b = xy(r, a.deg_x() + 2, dy, 5);
        if !at0(&b).is_zero() {
            break b;
        }
    };
    let a0 = at0(&a);
    let expected = disc_xy(&a).mul_poly(&c(q(-4))).mul_poly(&at0(&b)).mul_poly(&a0.pow_u(3));
    (fam(vec![PolyXY::x().pow(2).mul(&a), b], 1), expected)
}

/// `x^2 A + 2 x B t + C t^2` with Δ'₀ = Δ(A) · 4 (B(0)^2 - A(0) C(0)) A(0)^2.
fn second_kind(r: &mut ChaCha8Rng, dy: usize) -> (TruncatedFamily, QPoly) {
    let a = random_a(r, dy);
    let a0 = at0(&a);
    loop {
        let b = xy(r, a.deg_x() + 1, dy, 4);
        let cc = xy(r, a.deg_x() + 2, dy, 5);
        let inner = at0(&b).pow_u(2).sub_poly(&a0.mul_poly(&at0(&cc)));
        if inner.is_zero() {
            continue;
        }
        let expected = disc_xy(&a).mul_poly(&c(q(4))).mul_poly(&inner).mul_poly(&a0.pow_u(2));
        let f1 = PolyXY::x().mul(&b).scale(&q(2));
        return (fam(vec![PolyXY::x().pow(2).mul(&a), f1, cc], 2), expected);
    }
}

/// Third-kind family from `(a0, a1, b0, b1, c0, c1, d1)`.
fn third_from(v: [Q; 7]) -> TruncatedFamily {
    let [a0, a1, b0, b1, c0, c1, d1] = v;
    let m = |k: Q, dx: usize| PolyXY::monomial(k, dx, 0);
    fam(
        vec![
            m(a0, 2).add(&m(a1, 3)),
            m(q(2) * b0, 1).add(&m(b1, 2)),
            m(c0, 0).add(&m(c1, 1)),
            m(d1, 0),
        ],
        3,
    )
}

/// `λ^4 · (-4 K)` with K read off the family divided by λ = a1.
fn third_expected(v: &[Q; 7]) -> Q {
    let l = v[1].clone();
    let [a0, _, b0, b1, _, c1, d1] = v.clone().map(|x| x / &l);
    let k = -(&b0 * &b0 * &b0) + &b1 * &b0 * &b0 * &a0 - &c1 * &b0 * &a0 * &a0 + &d1 * &a0 * &a0 * &a0;
    num_traits::pow(l, 4) * q(-4) * k
}

/// Third kind with `b0^2 = a0 c0` built in.
fn third_kind(r: &mut ChaCha8Rng) -> (TruncatedFamily, QPoly) {
    loop {
        let a0 = q(nonzero(r, 4));
        let b0 = q(nonzero(r, 4));
        let c0 = &b0 * &b0 / &a0;
        let v = [
            a0,
            q(nonzero(r, 3)),
            b0,
            q(r.gen_range(-4..=4)),
            c0,
            q(r.gen_range(-4..=4)),
            q(r.gen_range(-6..=6)),
        ];
        let e = third_expected(&v);
        if !e.is_zero() {
            return (third_from(v), c(e));
        }
    }
}

/// Family whose branches are rational: a product of `x - r - u t - w t^2`
/// with distinct centers r and distinct slopes u inside each cluster.
fn split_family(r: &mut ChaCha8Rng) -> TruncatedFamily {
    loop {
        let k = r.gen_range(2..=3);
        let mut roots: Vec<i64> = Vec::new();
        while roots.len() < k {
            let v = r.gen_range(-3..=3);
            if !roots.contains(&v) {
                roots.push(v);
            }
        }
        let mults: Vec<usize> = (0..k).map(|_| r.gen_range(1..=3)).collect();
        let total: usize = mults.iter().sum();
        if total > 6 || mults.iter().all(|&m| m == 1) {
            continue;
        }
        let big = 2 * total;
        let mut f = fam(vec![PolyXY::one()], big);
        for (root, m) in roots.iter().zip(&mults) {
            let mut slopes: Vec<i64> = Vec::new();
            while slopes.len() < *m {
                let u = r.gen_range(-4..=4);
                if !slopes.contains(&u) {
                    slopes.push(u);
                }
            }
            for u in slopes {
                let w = if r.gen_bool(0.3) { r.gen_range(-2..=2) } else { 0 };
                let lin = fam(
                    vec![
                        PolyXY::x().sub(&PolyXY::from_i64(*root)),
                        PolyXY::from_i64(-u),
                        PolyXY::from_i64(-w),
                    ],
                    big,
                );
                f = f.mul_truncate(&lin);
            }
        }
        let alpha: usize = mults.iter().map(|m| m * (m - 1)).sum();
        let trunc = f.t_degree().max(alpha) + 1;
        return f.with_trunc(trunc);
    }
}

/// `(x - r + β_1 t + ... + β_(n-1) t^(n-1))^N + δ t^n` truncated at t^n.
fn zd_family(r: &mut ChaCha8Rng) -> (TruncatedFamily, usize, PolyXY) {
    let n = r.gen_range(2..=6);
    let big_n = r.gen_range(2..=3u32);
    let root = r.gen_range(-2..=2);
    let mut inner = vec![PolyXY::x().sub(&PolyXY::from_i64(root))];
    for _ in 1..n {
        inner.push(PolyXY::from_i64(r.gen_range(-3..=3)));
    }
    let base = fam(inner, n).pow_truncate(big_n);
    let mut coeffs = base.coeffs().to_vec();
    let delta = loop {
        let d = xy(r, big_n as usize - 1, 0, 3);
        if !d.eval_x(&c(q(root))).is_zero() {
            break d;
        }
    };
    coeffs[n] = coeffs[n].add(&delta);
    let comp = PolyXY::x().sub(&PolyXY::from_i64(root));
    (fam(coeffs, n), n, comp)
}

// ---------------------------------------------------------------- criteria

fn kind_identity(
    pinned: (&str, usize, i64),
    over_q: impl Fn(&mut ChaCha8Rng) -> (TruncatedFamily, QPoly),
    over_qy: Option<Generator>,
    kind: Kind,
    seed: u64,
) -> Check {
    let f = parse_family(pinned.0, pinned.1).map_err(|e| e.to_string())?;
    let got = oracle(&f)?;
    ensure(got == c(q(pinned.2)), || format!("pinned {}: Δ'₀ = {}", pinned.0, print::ypoly_to_string(&got)))?;
    let mut r = rng(seed);
    let mut cases: Vec<(TruncatedFamily, QPoly)> = (0..50).map(|_| over_q(&mut r)).collect();
    let nq = cases.len();
    if let Some(g) = over_qy {
        cases.extend((0..20).map(|_| g(&mut r)));
    }
    for (f, expected) in &cases {
        let got = oracle(f)?;
        ensure(&got == expected, || {
            format!(
                "{}: oracle {} vs closed form {}",
                show(f),
                print::ypoly_to_string(&got),
                print::ypoly_to_string(expected)
            )
        })?;
        let p = classify_kind(f);
        ensure(p.kind == kind, || format!("{}: classified as {}", show(f), p.kind.as_str()))?;
        let v = compute_vertex(f, None, VertexRoute::Kind, Backend::Exact).map_err(|e| format!("{}: {e}", show(f)))?;
        ensure(v.method == VertexMethod::ClosedFormKind && v.oracle_verified, || format!("{}: vertex not verified", show(f)))?;
    }
    let qy = match cases.len() - nq {
        0 => String::new(),
        k => format!(", {k} over Q[y]"),
    };
    Ok(format!("pinned {} -> {} ok, {nq} random over Q{qy}", pinned.0, pinned.2))
}

fn criterion_1() -> Check {
    kind_identity(
        ("x^2*(x+1) + (x+2)*t", 1, -8),
        |r| first_kind(r, 0),
        Some(&|r| first_kind(r, 1)),
        Kind::First,
        101,
    )
}

fn criterion_2() -> Check {
    kind_identity(
        ("x^3 + x^2 + 2*x*t - t^2", 2, 8),
        |r| second_kind(r, 0),
        Some(&|r| second_kind(r, 1)),
        Kind::Second,
        202,
    )
}

fn criterion_3() -> Check {
    let pinned = third_from([1, 1, 1, 0, 1, 0, 2].map(q));
    let got = oracle(&pinned)?;
    ensure(got == c(q(-4)), || format!("pinned third kind: Δ'₀ = {}", print::ypoly_to_string(&got)))?;
    let text = show(&pinned);
    kind_identity((&text, 3, -4), third_kind, None, Kind::Third, 303)
}

fn criterion_4() -> Check {
    let mut r = rng(404);
    let tol = NUMERIC_REL_TOL.log2();
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..30 {
        let f = split_family(&mut r);
        let exact = verify_product_formula(&f, None, Backend::Exact).map_err(|e| format!("{}: {e}", show(&f)))?;
        ensure(exact.matches && exact.method == GfdMethod::BranchExact, || {
            format!("{}: exact product {} vs oracle {}", show(&f), exact.product.text(), print::rational(&exact.oracle))
        })?;
        let num = verify_product_formula(&f, None, Backend::numeric(256)).map_err(|e| format!("{}: {e}", show(&f)))?;
        let gap = num.rel_gap_log2.unwrap_or(f64::INFINITY);
        ensure(num.matches && gap < tol, || format!("{}: numeric gap 2^{gap:.1}", show(&f)))?;
        worst = worst.max(gap);
    }
    Ok(format!("30 split families exact; numeric worst relative gap 2^{worst:.0}"))
}

fn criterion_5() -> Check {
    let mut r = rng(505);
    let ty = |f: &TruncatedFamily| -> Result<u32, String> {
        general_type(f, None, Backend::Exact)
            .map(|t| t.general_type)
            .map_err(|e| format!("{}: {e}", show(f)))
    };
    for (name, want, gen) in [
        ("first", 1, &(|r: &mut ChaCha8Rng| first_kind(r, 0)) as Generator),
        ("second", 2, &|r: &mut ChaCha8Rng| second_kind(r, 0)),
        ("third", 3, &third_kind),
    ] {
        for _ in 0..20 {
            let (f, _) = gen(&mut r);
            let t = ty(&f)?;
            ensure(t == want, || format!("{name} kind {}: type {t}, want {want}", show(&f)))?;
        }
    }
    for _ in 0..20 {
        let (f, n, comp) = zd_family(&mut r);
        let t = ty(&f)?;
        ensure(t == n as u32, || format!("Zd family {}: type {t}, want {n}", show(&f)))?;
        let mult = f.f0().deg_x() as u32;
        let z = type_by(&f, &comp, mult, TypeMethod::Zd, Backend::Exact).map_err(|e| e.to_string())?;
        ensure(z.tau == n as u32, || format!("Zd family {}: Zd route gives {}", show(&f), z.tau))?;
    }
    let x3 = PolyXY::x().pow(3);
    let x2y = PolyXY::x().pow(2).mul(&PolyXY::y());
    let x = PolyXY::x();
    let mut count = 0;
    for _ in 0..4 {
        let shapes: Vec<(char, u32, TruncatedFamily)> = vec![
            ('a', 1, {
                let f1 = nonvanishing(&mut r, 2, at0);
                fam(vec![x3.clone(), f1, xy(&mut r, 3, 1, 3)], 2)
            }),
            ('b', 1, {
                let c1 = nonvanishing(&mut r, 2, at0);
                fam(vec![x3.clone(), x.mul(&c1), xy(&mut r, 3, 1, 3)], 2)
            }),
            ('c', 3, {
                let (c2, f3) = loop {
                    let c2 = xy(&mut r, 2, 1, 3);
                    let f3 = xy(&mut r, 3, 1, 3);
                    let w = at0(&c2).pow_u(3).mul_poly(&c(q(4))).add_poly(&at0(&f3).pow_u(2).mul_poly(&c(q(27))));
                    if !w.is_zero() {
                        break (c2, f3);
                    }
                };
                fam(vec![x3.clone(), PolyXY::zero(), x.mul(&c2), f3, xy(&mut r, 3, 1, 3)], 4)
            }),
            ('d', 1, {
                let f1 = nonvanishing(&mut r, 2, at0);
                fam(vec![x2y.clone(), f1], 1)
            }),
            ('e', 2, {
                let (c1, f2) = loop {
                    let c1 = xy(&mut r, 1, 1, 3);
                    let f2 = xy(&mut r, 2, 1, 3);
                    let w = at0(&c1).pow_u(2).sub_poly(&at0(&f2).mul_poly(&QPoly::new(vec![q(0), q(4)])));
                    if !w.is_zero() {
                        break (c1, f2);
                    }
                };
                fam(vec![x2y.clone(), x.mul(&c1), f2], 2)
            }),
        ];
        for (label, want, f) in shapes {
            let t = ty(&f)?;
            ensure(t == want, || format!("Q[y] shape ({label}) {}: type {t}, want {want}", show(&f)))?;
            count += 1;
        }
    }
    Ok(format!("kinds 1/2/3 on 20 each, 20 Zd families with n in 2..6, {count} Q[y] shapes (a)-(e)"))
}

/// A random polynomial of x-degree `dx` over Q[y] whose `probe` is nonzero.
fn nonvanishing(r: &mut ChaCha8Rng, dx: usize, probe: impl Fn(&PolyXY) -> QPoly) -> PolyXY {
    loop {
        let p = xy(r, dx, 1, 3);
        if !probe(&p).is_zero() {
            return p;
        }
    }
}

fn criterion_6() -> Check {
    let mut r = rng(606);
    let mut total = 0;
    for (name, gen) in [
        ("first", &(|r: &mut ChaCha8Rng| first_kind(r, 0)) as Generator),
        ("second", &|r: &mut ChaCha8Rng| second_kind(r, 0)),
        ("third", &third_kind),
    ] {
        for i in 0..30 {
            let (f, _) = gen(&mut r);
            let tau = general_type(&f, None, Backend::Exact).map_err(|e| e.to_string())?.general_type;
            let s = truncation_sufficiency_check(&f, tau, 30, 6000 + i, Backend::Exact)
                .map_err(|e| format!("{name} kind {}: {e}", show(&f)))?;
            s.ensure().map_err(|e| format!("{name} kind {}: {e}", show(&f)))?;
            total += s.trials;
        }
    }
    Ok(format!("90 families, {total} perturbations at t^(τ+1), ver unchanged in all"))
}

/// ver through Zd decompositions of every multiple component.
fn zd_value(f: &TruncatedFamily) -> Option<QPoly> {
    let comps = special_fiber_components(f, None).ok()?;
    let decomps = comps
        .iter()
        .filter(|(_, n)| *n > 1)
        .map(|(p, _)| zd_search(f, p))
        .collect::<Result<Vec<_>, _>>()
        .ok()?;
    vertex_from_zd(&comps, &decomps).ok().map(|a| a.value)
}

fn kind_corpus(seed: u64) -> Vec<TruncatedFamily> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    for _ in 0..25 {
        out.push(first_kind(&mut r, 0).0);
        out.push(first_kind(&mut r, 1).0);
        out.push(second_kind(&mut r, 0).0);
        out.push(second_kind(&mut r, 1).0);
        out.push(third_kind(&mut r).0);
    }
    out.push(parse_family("x^2*(x+1) + (x+2)*t", 1).unwrap());
    out.push(parse_family("x^3 + x^2 + 2*x*t - t^2", 2).unwrap());
    out.push(third_from([1, 1, 1, 0, 1, 0, 2].map(q)));
    out
}

fn criterion_7() -> Check {
    let mut both = [0usize; 3];
    for f in kind_corpus(707) {
        let p = classify_kind(&f);
        let Ok(closed) = kind_vertex_value(&p) else { continue };
        let Some(zd) = zd_value(&f) else { continue };
        ensure(closed == zd, || {
            format!(
                "{}: closed form {} vs Zd {}",
                show(&f),
                print::ypoly_to_string(&closed),
                print::ypoly_to_string(&zd)
            )
        })?;
        both[match p.kind {
            Kind::First => 0,
            Kind::Second => 1,
            _ => 2,
        }] += 1;
    }
    ensure(both[0] > 0 && both[1] > 0, || format!("too few overlapping cases: {both:?}"))?;
    Ok(format!("agreement on {} families (first {}, second {}, third {})", both.iter().sum::<usize>(), both[0], both[1], both[2]))
}

fn criterion_8() -> Check {
    let mut corpus = kind_corpus(808);
    let mut r = rng(809);
    corpus.extend((0..10).map(|_| split_family(&mut r)));
    // (x + ...)^N + δ t^n has α = (N - 1) n ≤ 2n
    corpus.extend((0..10).map(|_| {
        let (f, n, _) = zd_family(&mut r);
        f.with_trunc(2 * n)
    }));
    for f in &corpus {
        let a = discriminant_series(f).map_err(|e| format!("{}: {e}", show(f)))?;
        let b = discriminant_series(&f.with_trunc(f.trunc() + 2)).map_err(|e| e.to_string())?;
        ensure(a.alpha == b.alpha && a.delta_prime_0 == b.delta_prime_0 && a.stable, || {
            format!("{}: T gives (α {}, Δ'₀ {}), T+2 gives (α {}, Δ'₀ {})", show(f), a.alpha,
                print::ypoly_to_string(&a.delta_prime_0), b.alpha, print::ypoly_to_string(&b.delta_prime_0))
        })?;
    }
    for i in 0..20 {
        let f = &corpus[(i * 7) % corpus.len()];
        let k = qr(nonzero(&mut r, 7), r.gen_range(1..=5));
        let n = f.x_degree();
        let lhs = oracle(&f.scale(&k))?;
        let rhs = oracle(f)?.scale(&num_traits::pow(k.clone(), 2 * n - 2));
        ensure(lhs == rhs, || format!("{}: scaling by {} breaks Δ'₀(cF) = c^(2n'-2) Δ'₀(F)", show(f), print::rational(&k)))?;
    }
    Ok(format!("{} families invariant under T -> T+2; scaling law on 20 pairs", corpus.len()))
}

fn random_qpoly(r: &mut ChaCha8Rng) -> QPoly {
    let d = r.gen_range(1..=5);
    let mut v: Vec<Q> = (0..=d).map(|_| qr(r.gen_range(-9..=9), r.gen_range(1..=3))).collect();
    v[d] = q(nonzero(r, 9));
    QPoly::new(v)
}

fn criterion_9() -> Check {
    let mut r = rng(909);
    for _ in 0..200 {
        let (f, g, h) = (random_qpoly(&mut r), random_qpoly(&mut r), random_qpoly(&mut r));
        let fg = f.mul_poly(&g);
        ensure(resultant(&fg, &h) == resultant(&f, &h) * resultant(&g, &h), || {
            format!("res(fg,h) fails at f = {}, g = {}, h = {}", print::xpoly_to_string(&f), print::xpoly_to_string(&g), print::xpoly_to_string(&h))
        })?;
        let rfg = resultant(&f, &g);
        ensure(discriminant(&fg) == discriminant(&f) * discriminant(&g) * &rfg * &rfg, || {
            format!("Δ(fg) fails at f = {}, g = {}", print::xpoly_to_string(&f), print::xpoly_to_string(&g))
        })?;
        let sign = if (f.deg() * g.deg()) % 2 == 1 { q(-1) } else { q(1) };
        ensure(resultant(&g, &f) == sign * rfg, || {
            format!("res swap fails at f = {}, g = {}", print::xpoly_to_string(&f), print::xpoly_to_string(&g))
        })?;
    }
    Ok("200 cases of each identity".into())
}

/// Factors line up with the rational roots (with multiplicity) of `expected`.
fn geometric(text: &str, expected: QPoly) -> Result<usize, String> {
    let h = parse_homogeneous(text, 3, 3).map_err(|e| e.to_string())?;
    let cycle = limit_dual_cycle(&h, None, Backend::Exact).map_err(|e| format!("{text}: {e}"))?;
    ensure(cycle.consistent, || format!("{text}: limit cycle inconsistent"))?;
    ensure(cycle.ver == expected, || {
        format!("{text}: ver = {}, closed form {}", print::ypoly_to_string(&cycle.ver), print::ypoly_to_string(&expected))
    })?;
    let v = vertices_report(&cycle).map_err(|e| e.to_string())?;
    let mut want = rational_roots(&expected);
    want.sort();
    let mut lines = v.vertex_lines.clone();
    lines.sort();
    ensure(lines == want, || format!("{text}: vertex lines {lines:?}, roots of the closed form {want:?}"))?;
    let mut from_ver = rational_roots(&cycle.ver);
    from_ver.sort();
    ensure(from_ver == lines, || format!("{text}: lines disagree with the roots of ver"))?;
    let on_x = |p: &PolyXY| p == &PolyXY::x();
    ensure(
        v.vertex_points.iter().filter(|p| on_x(&p.component)).all(|p| p.x.is_zero()),
        || format!("{text}: a vertex of Z(x) lies off the line x = 0"),
    )?;
    Ok(lines.len())
}

fn criterion_10() -> Check {
    let yp = |v: &[i64]| QPoly::new(v.iter().map(|&k| q(k)).collect());
    // A = x + y + z, B = (y - z)(y + 2z) z: ver = -4 B(0) A(0)^3
    let a0 = yp(&[1, 1]);
    let b0 = yp(&[-2, 1, 1]);
    let first = b0.mul_poly(&a0.pow_u(3)).scale(&q(-4));
    let n1 = geometric("x^2*(x + y + z) + (y - z)*(y + 2*z)*z*t", first)?;
    // A = x + z, B = y z, C = (2z - y) z^2: ver = 4 (B(0)^2 - A(0) C(0)) A(0)^2
    let second = yp(&[0, 0, 1]).sub_poly(&yp(&[2, -1])).scale(&q(4));
    let n2 = geometric("x^2*(x + z) + 2*x*y*z*t + (2*z - y)*z^2*t^2", second)?;
    // A0 = z, A1 = 1, B0 = y z, C0 = y^2 z, D1 = y^3 + (y - z)(y + 2z) z: ver = -4 K
    let k = yp(&[0, 0, 0, -1]).add_poly(&yp(&[-2, 1, 1, 1]));
    let n3 = geometric("x^2*z + x^3 + 2*x*y*z*t + y^2*z*t^2 + (y^3 + (y - z)*(y + 2*z)*z)*t^3", k.scale(&q(-4)))?;
    Ok(format!("first, second and third kind cycles; {n1}, {n2}, {n3} vertex lines match the closed forms"))
}

fn random_q(r: &mut ChaCha8Rng) -> Q {
    qr(r.gen_range(-40..=40), r.gen_range(1..=12))
}

fn criterion_11() -> Check {
    let mut r = rng(1111);
    for i in 0..500 {
        match i % 3 {
            0 => {
                let (dx, dy) = (r.gen_range(0..=4), r.gen_range(0..=2));
                let p = xy(&mut r, dx, dy, 6).map_x_coeffs(|c| {
                    c.scale(&qr(1, 1 + (i as i64 % 5)))
                });
                let text = print::poly_to_string(&p);
                let back = parse_poly(&text).map_err(|e| format!("{text}: {e}"))?;
                ensure(back == p, || format!("polynomial {text} parses back as {}", print::poly_to_string(&back)))?;
            }
            1 => {
                let n = r.gen_range(1..=4);
                let trunc = r.gen_range(0..=3);
                let mut coeffs = vec![monic(&mut r, n, 1).scale(&q(nonzero(&mut r, 3)))];
                for _ in 0..trunc {
                    coeffs.push(xy(&mut r, n, 1, 5).map_x_coeffs(|c| c.scale(&qr(1, 2))));
                }
                let f = fam(coeffs, trunc);
                let text = show(&f);
                let back = parse_family(&text, trunc).map_err(|e| format!("{text}: {e}"))?;
                ensure(back == f, || format!("family {text} parses back as {}", show(&back)))?;
            }
            _ => {
                let mut terms: Vec<(Q, Q)> = Vec::new();
                for _ in 0..r.gen_range(0..=4) {
                    let e = qr(r.gen_range(0..=12), r.gen_range(1..=4));
                    terms.push((e, random_q(&mut r)));
                }
                let s = ExactSeries::new(terms, qr(r.gen_range(13..=20), r.gen_range(1..=4)));
                let text = print::series_with_order(&s);
                let back = parse_series(&text).map_err(|e| format!("{text}: {e}"))?;
                ensure(back == s, || format!("series {text} parses back differently"))?;
            }
        }
    }
    Ok("500 values (polynomials, families, series) survive print then parse".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 11] = [
        ("first-kind identity", criterion_1),
        ("second-kind identity", criterion_2),
        ("third-kind identity", criterion_3),
        ("product formula", criterion_4),
        ("types", criterion_5),
        ("truncation sufficiency", criterion_6),
        ("Zd and closed-form agreement", criterion_7),
        ("oracle robustness", criterion_8),
        ("elimination identities", criterion_9),
        ("geometric pipeline", criterion_10),
        ("parser round-trip", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
