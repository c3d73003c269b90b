use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use dualimit_core::disc::{discriminant_series, series_text, verify_product_formula, ProductCheck};
use dualimit_core::dual::{dehomogenize, limit_dual_cycle, vertices_report, HomogeneousFamily};
use dualimit_core::newton::{
    char_poly_to_string, expand_branches_exact, expand_branches_numeric, first_truncation, newton_polygon,
    separation_orders, Backend, BranchReport, SeparationOrders,
};
use dualimit_core::parse::{print, FamilyBody, FamilyFile};
use dualimit_core::types::{general_type, truncation_sufficiency_check, SufficiencyReport, TypeReport};
use dualimit_core::vertex::{
    compute_vertex, parts_text, vertex_from_zd, zd_search, VertexReport, VertexRoute, ZdDecomposition,
};
use dualimit_core::{Error, PolyXY, PolyXYZ, Result, TruncatedFamily};

use crate::{Command, MethodArg, Outcome, RunConfig};

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

struct Input {
    family: TruncatedFamily,
    factors: Option<Vec<(PolyXY, u32)>>,
    homogeneous: Option<(HomogeneousFamily, Option<Vec<(PolyXYZ, u32)>>)>,
}

fn affine_input(file: &FamilyFile) -> Result<Input> {
    match &file.body {
        FamilyBody::Affine { family, factors } => Ok(Input {
            family: family.clone(),
            factors: factors.clone(),
            homogeneous: None,
        }),
        FamilyBody::Homogeneous { family, factors } => Ok(Input {
            family: dehomogenize(family)?,
            factors: factors.as_ref().map(|fs| fs.iter().map(|(p, n)| (p.dehomogenize(), *n)).collect()),
            homogeneous: Some((family.clone(), factors.clone())),
        }),
    }
}

pub fn dispatch(cmd: &Command, file: &FamilyFile, cfg: &RunConfig) -> Result<Outcome> {
    if let Command::Parse(_) = cmd {
        return parse(file);
    }
    let input = affine_input(file)?;
    match cmd {
        Command::Parse(_) => unreachable!(),
        Command::Polygon(_) => polygon(&input.family),
        Command::Branches(_) => branches(&input.family, cfg),
        Command::DiscLimit(_) => disc_limit(&input, cfg),
        Command::Vertex { .. } => vertex(&input, cfg),
        Command::Zd(_) => zd(&input),
        Command::Type { .. } => type_cmd(&input, cfg),
        Command::LimitDual(_) => limit_dual(&input, cfg),
        Command::Check(_) => check(&input, cfg),
    }
}

fn ok(text: String, result: Value, certificates: Value) -> Result<Outcome> {
    Ok(Outcome {
        text,
        result,
        certificates,
        exit: 0,
    })
}

fn parse(file: &FamilyFile) -> Result<Outcome> {
    let canonical = file.to_text();
    let coefficients: Vec<String> = match &file.body {
        FamilyBody::Affine { family, .. } => family.coeffs().iter().map(print::poly_to_string).collect(),
        FamilyBody::Homogeneous { family, .. } => family.coeffs().iter().map(print::polyxyz_to_string).collect(),
    };
    let mut text = canonical.trim_end().to_string();
    for (i, c) in coefficients.iter().enumerate() {
        let _ = write!(text, "\nF_{i} = {c}");
    }
    ok(text, json!({"canonical": canonical, "coefficients": coefficients}), json!({}))
}

fn pairs(v: &[(usize, usize)]) -> String {
    v.iter().map(|(i, j)| format!("({i},{j})")).collect::<Vec<_>>().join(" ")
}

fn polygon(f: &TruncatedFamily) -> Result<Outcome> {
    let p = newton_polygon(f);
    let ms: Vec<String> = p.edge_ms().iter().map(print::rational).collect();
    let m1 = p.m1.as_ref().map_or("undefined".to_string(), print::rational);
    let mut text = format!(
        "support = {}\nhull = {}\nd = {}\nm1 = {m1}\nedge m = [{}]",
        pairs(&p.support),
        pairs(&p.hull_vertices),
        p.d,
        ms.join(", ")
    );
    let mut result = json!({"polygon": to_value(&p), "edge_m": ms});
    if p.d > 0 {
        let t = first_truncation(f)?;
        let cp = char_poly_to_string(&t.char_poly);
        let ft = print::family_to_string(&t.f1prime);
        let _ = write!(text, "\nfirst truncation = {ft}\ncharacteristic polynomial = {cp}");
        result["first_truncation"] = json!(ft);
        result["char_poly"] = json!(cp);
    }
    ok(text, result, json!({}))
}

fn backend_text(b: &Backend) -> String {
    match b {
        Backend::Exact => "exact".into(),
        Backend::Numeric { precision_bits, .. } => format!("numeric ({precision_bits} bits)"),
    }
}

fn branch_text(r: &BranchReport, s: &SeparationOrders) -> String {
    let mut text = format!("backend = {}\ncertified order = {}", backend_text(&r.backend), r.certified_order);
    for (i, c) in r.centers.iter().enumerate() {
        let _ = write!(text, "\ncenter {} = {c}", i + 1);
    }
    for (i, b) in r.branches.iter().enumerate() {
        let _ = write!(
            text,
            "\ns_{} = {}  [center {}, ramification {}, known to t^{}]",
            i + 1,
            b.series,
            b.center,
            b.ramification,
            b.known_order
        );
    }
    for ((i, j), m) in &s.orders {
        let _ = write!(text, "\nm({},{}) = {}", i + 1, j + 1, print::rational(m));
    }
    text
}

fn branches(f: &TruncatedFamily, cfg: &RunConfig) -> Result<Outcome> {
    let (report, seps, margin) = match cfg.backend() {
        Backend::Exact => {
            let b = expand_branches_exact(f, None)?;
            (b.report(), separation_orders(&b), b.margin)
        }
        backend => {
            let b = expand_branches_numeric(f, backend, None)?;
            (b.report(), separation_orders(&b), b.margin)
        }
    };
    ok(
        branch_text(&report, &seps),
        json!({"branches": to_value(&report), "separation_orders": to_value(&seps)}),
        json!({"certified_order": report.certified_order, "cluster_margin_log2": margin}),
    )
}

fn product_table(c: &ProductCheck) -> String {
    let mut text = String::from("product formula:");
    for g in &c.gfd {
        let _ = write!(
            text,
            "\n  gfd[{} at {}] = {}",
            print::poly_to_string(&g.component),
            g.root.text(),
            g.value.text()
        );
    }
    for d in &c.components {
        let _ = write!(
            text,
            "\n  Delta({})^{} = ({})^{}",
            print::poly_to_string(&d.component),
            d.multiplicity,
            print::rational(&d.discriminant),
            d.multiplicity
        );
    }
    for x in &c.cross {
        let _ = write!(text, "\n  res(f_{}, f_{})^{} = ({})^{}", x.pair.0 + 1, x.pair.1 + 1, x.exponent, print::rational(&x.resultant), x.exponent);
    }
    let _ = write!(
        text,
        "\n  leading coefficient factor = {}\n  product = {}\n  oracle Delta'_0 = {}\n  matches = {}",
        print::rational(&c.leading_coefficient),
        c.product.text(),
        print::rational(&c.oracle),
        c.matches
    );
    text
}

fn disc_limit(input: &Input, cfg: &RunConfig) -> Result<Outcome> {
    let d = discriminant_series(&input.family)?;
    let mut text = format!(
        "alpha = {}\nDelta' = {}\nDelta'_0 = {}\nstable = {}",
        d.alpha,
        series_text(&d.delta_prime),
        print::ypoly_to_string(&d.delta_prime_0),
        d.stable
    );
    let mut result = to_value(&d);
    let mut certificates = json!({"stable": d.stable, "certified_to_order": d.trunc});
    let mut exit = 0;
    if cfg.check {
        let c = verify_product_formula(&input.family, input.factors.as_deref(), cfg.backend())?;
        let _ = write!(text, "\n{}", product_table(&c));
        if !c.matches {
            exit = 4;
        }
        result["product_check"] = to_value(&c);
        certificates["product_formula_matches"] = json!(c.matches);
    }
    Ok(Outcome { text, result, certificates, exit })
}

fn route(m: MethodArg) -> VertexRoute {
    match m {
        MethodArg::Auto => VertexRoute::Auto,
        MethodArg::Kind => VertexRoute::Kind,
        MethodArg::Zd => VertexRoute::Zd,
        MethodArg::Branch => VertexRoute::Branch,
    }
}

fn vertex_text(r: &VertexReport) -> String {
    let mut text = format!("ver = {}\nmethod = {}\nkind = {}", r.value_text(), r.method.as_str(), r.kind.kind.as_str());
    if r.kind.kind != r.kind.candidate {
        let _ = write!(text, " ({} kind shape, hypotheses fail)", r.kind.candidate.as_str());
    }
    if let Some(parts) = &r.kind.parts {
        for (k, v) in parts_text(parts) {
            let _ = write!(text, "\n  {k} = {v}");
        }
    }
    let _ = write!(text, "\ncomponents:");
    for (p, n) in &r.components {
        let _ = write!(text, "\n  ({})^{n}", print::poly_to_string(p));
    }
    if let Some(a) = &r.assembly {
        let _ = write!(text, "\nZd constant c = {}", print::rational(&a.c));
    }
    if let Some(c) = &r.check {
        let _ = write!(text, "\nfactor table:\n  leading power = {}", print::rational(&c.leading_power));
        for d in &c.components {
            let _ = write!(
                text,
                "\n  Delta({})^{} = ({})^{}",
                print::poly_to_string(&d.component),
                d.multiplicity,
                print::ypoly_to_string(&d.discriminant),
                d.multiplicity
            );
        }
        let _ = write!(
            text,
            "\n  ver = {}\n  product = {}\n  oracle Delta'_0 = {}",
            print::ypoly_to_string(&c.vertex),
            print::ypoly_to_string(&c.product),
            print::ypoly_to_string(&c.oracle)
        );
    }
    for a in &r.alternatives {
        let _ = write!(text, "\nalso {} = {}", a.method.as_str(), print::ypoly_to_string(&a.value));
    }
    let _ = write!(text, "\noracle verified = {}", r.oracle_verified);
    for n in &r.notes {
        let _ = write!(text, "\nnote: {n}");
    }
    text
}

fn vertex(input: &Input, cfg: &RunConfig) -> Result<Outcome> {
    let r = compute_vertex(&input.family, input.factors.as_deref(), route(cfg.method), cfg.backend())?;
    ok(
        vertex_text(&r),
        to_value(&r),
        json!({"oracle_verified": r.oracle_verified, "calibration": to_value(&r.calibration)}),
    )
}

fn zd_text(d: &ZdDecomposition) -> String {
    let mut text = format!(
        "component {} (multiplicity {}):\n  A = {}",
        print::poly_to_string(&d.component),
        d.multiplicity,
        print::poly_to_string(&d.alpha)
    );
    for (k, b) in d.betas.iter().enumerate() {
        let _ = write!(text, "\n  B_{k} = {}", print::poly_to_string(b));
    }
    let _ = write!(text, "\n  Delta_{} = {}\n  n = {}", d.order, print::poly_to_string(&d.delta), d.order);
    text
}

fn zd(input: &Input) -> Result<Outcome> {
    let comps = dualimit_core::disc::special_fiber_components(&input.family, input.factors.as_deref())?;
    let decomps = comps
        .iter()
        .filter(|(_, n)| *n > 1)
        .map(|(p, _)| zd_search(&input.family, p))
        .collect::<Result<Vec<_>>>()?;
    let mut text = decomps.iter().map(zd_text).collect::<Vec<_>>().join("\n");
    if decomps.is_empty() {
        text.push_str("no multiple components");
    }
    let a = vertex_from_zd(&comps, &decomps)?;
    let _ = write!(text, "\nc = {}\nver = {}", print::rational(&a.c), print::ypoly_to_string(&a.value));
    let verified = decomps.iter().all(|d| d.verify(&input.family.monic_normalized().map(|x| x.0).unwrap_or_else(|_| input.family.clone())).is_ok());
    ok(
        text,
        json!({"decompositions": to_value(&decomps), "assembly": to_value(&a)}),
        json!({"decompositions_verified": verified}),
    )
}

fn type_text(r: &TypeReport) -> String {
    let mut text = String::new();
    for c in &r.components {
        let m = c.m.as_ref().map_or("none".to_string(), print::rational);
        let _ = writeln!(
            text,
            "component {} (multiplicity {}): m = {m}, tau = {} [{}]{}",
            print::poly_to_string(&c.component),
            c.multiplicity,
            c.tau,
            c.method.as_str(),
            if c.empty_pairs { " (no branch pairs)" } else { "" }
        );
        if !c.certificates.is_empty() {
            let certs: Vec<String> = c.certificates.iter().map(print::ypoly_to_string).collect();
            let _ = writeln!(text, "  valid where these do not vanish: {}", certs.join(", "));
        }
    }
    let _ = write!(text, "general type = {}", r.general_type);
    text
}

fn sufficiency_text(s: &SufficiencyReport) -> String {
    let mut text = format!(
        "truncation check: tau = {}, trials = {}, seed = {}, ver = {}, passed = {}",
        s.tau, s.trials, s.seed, s.base_value, s.passed
    );
    for p in &s.failures {
        let _ = write!(
            text,
            "\n  trial {}: adding t^{}*({}) gives {}",
            p.trial,
            p.order,
            print::poly_to_string(&p.added),
            p.outcome
        );
    }
    if let Some(p) = &s.probe {
        let _ = write!(
            text,
            "\n  probe at t^{}: {} (ver {})",
            p.perturbation.order,
            p.perturbation.outcome,
            if p.changed { "changed" } else { "unchanged" }
        );
    }
    text
}

fn type_cmd(input: &Input, cfg: &RunConfig) -> Result<Outcome> {
    let mut r = general_type(&input.family, input.factors.as_deref(), cfg.backend())?;
    let mut text = type_text(&r);
    let mut exit = 0;
    if cfg.verify_truncation {
        let s = truncation_sufficiency_check(&input.family, r.general_type, cfg.trials, cfg.seed, cfg.backend())?;
        let _ = write!(text, "\n{}", sufficiency_text(&s));
        if !s.passed {
            exit = 4;
        }
        r.sufficiency = Some(s);
    }
    let certificates = json!({
        "seed": cfg.seed,
        "sufficiency_passed": r.sufficiency.as_ref().map(|s| s.passed),
    });
    Ok(Outcome { text, result: to_value(&r), certificates, exit })
}

fn limit_dual(input: &Input, cfg: &RunConfig) -> Result<Outcome> {
    let (h, given) = input
        .homogeneous
        .as_ref()
        .ok_or_else(|| Error::Hypothesis("limit-dual needs a homogeneous family file (with a `degree = n` key)".into()))?;
    let cycle = limit_dual_cycle(h, given.as_deref(), cfg.backend())?;
    let v = vertices_report(&cycle)?;
    let mut text = cycle.to_text();
    let lines: Vec<String> = v.vertex_lines.iter().map(|(y, m)| format!("y = {} (multiplicity {m})", print::rational(y))).collect();
    let _ = write!(text, "\nvertex lines: {}", if lines.is_empty() { "none".to_string() } else { lines.join(", ") });
    for p in &v.vertex_points {
        let _ = write!(
            text,
            "\nvertex ({} : {} : 1) on Z({}) . Z({})",
            print::rational(&p.x),
            print::rational(&p.y),
            print::poly_to_string(&p.component),
            print::poly_to_string(&p.partner)
        );
    }
    for (f, m) in &v.irrational_factors {
        let _ = write!(text, "\nvertex factor without rational roots: ({})^{m}", print::ypoly_to_string(f));
    }
    for n in &cycle.notes {
        let _ = write!(text, "\nnote: {n}");
    }
    let exit = if cycle.consistent { 0 } else { 4 };
    Ok(Outcome {
        text,
        result: json!({"cycle": to_value(&cycle), "vertices": to_value(&v)}),
        certificates: json!({
            "consistent": cycle.consistent,
            "degrees_balance": cycle.degrees_balance,
            "coordinates": to_value(&cycle.coordinates),
        }),
        exit,
    })
}

/// Status of one step of `check`.
fn step_status(r: &Result<bool>) -> String {
    match r {
        Ok(true) => "passed".into(),
        Ok(false) => "FAILED".into(),
        Err(e) => format!("skipped ({e})"),
    }
}

fn check(input: &Input, cfg: &RunConfig) -> Result<Outcome> {
    let f = &input.family;
    let factors = input.factors.as_deref();
    let mut text = String::new();
    let mut result = json!({});

    let product = match verify_product_formula(f, factors, cfg.backend()) {
        Ok(c) => {
            let _ = writeln!(text, "{}", product_table(&c));
            result["product_formula"] = to_value(&c);
            Ok(c.matches)
        }
        Err(e @ Error::Unsupported(_)) => Err(e),
        Err(e) => return Err(e),
    };
    let _ = writeln!(text, "product formula: {}", step_status(&product));

    let vertex = compute_vertex(f, factors, VertexRoute::Auto, cfg.backend())?;
    let factorization: Result<bool> = match &vertex.check {
        Some(c) => Ok(c.matches),
        None => Err(Error::Unsupported("oracle unavailable".into())),
    };
    let _ = writeln!(text, "ver = {} ({})", vertex.value_text(), vertex.method.as_str());
    let _ = writeln!(text, "ver factorization: {}", step_status(&factorization));
    result["vertex"] = to_value(&vertex);

    let types = general_type(f, factors, cfg.backend())?;
    let s = truncation_sufficiency_check(f, types.general_type, cfg.trials, cfg.seed, cfg.backend())?;
    let _ = writeln!(text, "general type = {}", types.general_type);
    let _ = writeln!(text, "{}", sufficiency_text(&s));
    let sufficiency: Result<bool> = Ok(s.passed);
    let _ = write!(text, "truncation sufficiency: {}", step_status(&sufficiency));
    result["type"] = to_value(&types);
    result["sufficiency"] = to_value(&s);

    let failed = [&product, &factorization, &sufficiency].iter().any(|r| matches!(r, Ok(false)));
    let certificates = json!({
        "product_formula": step_status(&product),
        "ver_factorization": step_status(&factorization),
        "truncation_sufficiency": step_status(&sufficiency),
        "seed": cfg.seed,
    });
    Ok(Outcome {
        text,
        result,
        certificates,
        exit: if failed { 4 } else { 0 },
    })
}
