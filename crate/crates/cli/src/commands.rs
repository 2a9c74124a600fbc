use serde_json::{json, Value};

use cend_core::cend::{
    lambda_product, lie_bracket, nth_products, seeded_module_samples, seeded_triples,
    standard_action_at, dual_action_at, product_at, bracket_at, verify_assoc_axioms,
    verify_lie_axioms, verify_module_axioms, AlgebraKind, AxiomReport,
};
use cend_core::cend1::{classify, closure, irreducible_on_standard, ClosureStatus};
use cend_core::gclie::{invariance_check, irreducibility_probe, make_oc_spc_generators, ConfBilinearForm, ProbeOutcome};
use cend_core::json::*;
use cend_core::poly::{parse_rat, Var};
use cend_core::polymat::smith_form;
use cend_core::structure::{
    anti_automorphism_exists, anti_involution_search, build_extension, decide_isomorphism,
    left_ideal_generator, right_ideal_generator, unital_closure_probe, ExtensionKind, Side,
    UnitalOutcome,
};
use cend_core::{CendElem, CendError, MPoly, ModVec, PolyMat, Rat, Result};

use crate::{Opts, Outcome, Status, Verb};

pub(crate) const EXTENSION_SAMPLES: usize = 10;

pub(crate) fn dispatch(verb: Verb, input: &Value, opts: &Opts) -> Result<Outcome> {
    let mut out = match verb {
        Verb::Product => product(input, false)?,
        Verb::Bracket => product(input, true)?,
        Verb::CheckAxioms => check_axioms(input, opts)?,
        Verb::Smith => smith(input)?,
        Verb::Iso => iso(input)?,
        Verb::AntiAuto => anti_auto(input)?,
        Verb::AntiInvSearch => anti_inv(input, opts)?,
        Verb::Ideal => ideal(input)?,
        Verb::ClassifyCend1 => classify_cend1(input, opts)?,
        Verb::ExtensionBuild => extension(input, opts)?,
        Verb::OcGens => oc_gens(input)?,
        Verb::InvarianceCheck => invariance(input, opts)?,
        Verb::IrreducibilityProbe => probe(input, opts)?,
        Verb::UnitalProbe => unital(input, opts)?,
        Verb::Verify => crate::verify::verify(input)?,
    };
    out.report["command"] = json!(verb.name());
    Ok(out)
}

fn decided(report: Value) -> Outcome {
    Outcome { report, status: Status::Decided }
}

fn bad(path: &str, message: impl std::fmt::Display) -> CendError {
    CendError::Parse { offset: 0, message: format!("{path}: {message}") }
}

pub(crate) fn report_json(r: &AxiomReport) -> Value {
    json!({ "checked": r.checked, "failures": r.failures })
}

pub(crate) fn eps_from_json(v: &Value, path: &str) -> Result<i8> {
    match v.as_i64() {
        Some(1) => Ok(1),
        Some(-1) => Ok(-1),
        _ => Err(bad(path, "epsilon must be 1 or -1")),
    }
}

fn opt_usize(input: &Value, key: &str, default: usize) -> Result<usize> {
    match input.get(key) {
        None => Ok(default),
        Some(v) => v
            .as_u64()
            .map(|n| n as usize)
            .ok_or_else(|| bad(&format!("$.{key}"), "expected a non-negative integer")),
    }
}

fn opt_rat(input: &Value, key: &str) -> Result<Rat> {
    match input.get(key) {
        None => Ok(Rat::from_integer(0.into())),
        Some(v) => rat_from_json(v, &format!("$.{key}")),
    }
}

/// A list, or an object holding the list under `gens`.
fn gens_value(input: &Value) -> Result<(&Value, &'static str)> {
    if input.is_array() {
        Ok((input, "$"))
    } else {
        Ok((field(input, "gens")?, "$.gens"))
    }
}

fn cend_field(input: &Value, key: &str) -> Result<CendElem> {
    cend_from_json(field(input, key)?, &format!("$.{key}"))
}

fn polymat_field(input: &Value, key: &str) -> Result<PolyMat> {
    polymat_from_json(field(input, key)?, &format!("$.{key}"))
}

pub(crate) fn product_series(a: &CendElem, b: &CendElem, bracket: bool) -> Result<Value> {
    let s = if bracket { lie_bracket(a, b)? } else { lambda_product(a, b)? };
    Ok(lambda_series_json(&s))
}

fn product(input: &Value, bracket: bool) -> Result<Outcome> {
    let (a, b) = (cend_field(input, "a")?, cend_field(input, "b")?);
    if a.n() != b.n() {
        return Err(CendError::Mismatch("a and b differ in size".into()));
    }
    let series = product_series(&a, &b, bracket)?;
    let mut report = json!({ "series": series });
    if !bracket {
        let nth: Vec<Value> = nth_products(&a, &b)?.iter().map(cend_json).collect();
        report["nth_products"] = json!(nth);
    }
    report["certificate"] = json!({ "a": cend_json(&a), "b": cend_json(&b) });
    Ok(decided(report))
}

pub(crate) struct AxiomParams {
    pub n: usize,
    pub count: usize,
    pub max_degree: u32,
    pub alphas: Vec<Rat>,
}

pub(crate) fn axiom_params(input: &Value) -> Result<AxiomParams> {
    let alphas = match input.get("alphas") {
        None => ["0", "1", "-1/2"].iter().map(|s| parse_rat(s).unwrap()).collect(),
        Some(v) => v
            .as_array()
            .ok_or_else(|| bad("$.alphas", "expected a list"))?
            .iter()
            .enumerate()
            .map(|(i, a)| rat_from_json(a, &format!("$.alphas[{i}]")))
            .collect::<Result<Vec<_>>>()?,
    };
    let n = opt_usize(input, "n", 2)?;
    if n == 0 {
        return Err(CendError::Degenerate("n must be positive".into()));
    }
    Ok(AxiomParams {
        n,
        count: opt_usize(input, "count", 50)?,
        max_degree: opt_usize(input, "max_degree", 2)? as u32,
        alphas,
    })
}

/// Runs the whole axiom battery; deterministic in `seed`.
pub(crate) fn axiom_battery(p: &AxiomParams, seed: u64) -> Value {
    let triples = seeded_triples(seed, p.n, p.count, p.max_degree);
    let assoc = verify_assoc_axioms(&triples, None);
    let lie = verify_lie_axioms(&triples);
    let samples = seeded_module_samples(seed.wrapping_add(1), p.n, p.n, p.count, p.max_degree);
    let mut passed = assoc.passed() && lie.passed();
    let mut modules = vec![];
    let assoc_prod = |a: &CendElem, b: &CendElem, at: &MPoly| product_at(a, b, at);
    let lie_prod = |a: &CendElem, b: &CendElem, at: &MPoly| bracket_at(a, b, at);
    for alpha in &p.alphas {
        let action = |a: &CendElem, at: &MPoly, v: &ModVec| standard_action_at(a, None, alpha, v, at);
        for (kind, name) in [(AlgebraKind::Associative, "associative"), (AlgebraKind::Lie, "lie")] {
            let prod: &dyn Fn(&CendElem, &CendElem, &MPoly) -> CendElem = match kind {
                AlgebraKind::Associative => &assoc_prod,
                AlgebraKind::Lie => &lie_prod,
            };
            let r = verify_module_axioms(kind, prod, &action, &samples);
            passed &= r.passed();
            modules.push(json!({
                "module": "standard", "alpha": rat_json(alpha), "kind": name,
                "checked": r.checked, "failures": r.failures,
            }));
        }
    }
    let dual = |a: &CendElem, at: &MPoly, v: &ModVec| dual_action_at(a, v, at);
    let r = verify_module_axioms(AlgebraKind::Lie, &lie_prod, &dual, &samples);
    passed &= r.passed();
    modules.push(json!({
        "module": "dual", "alpha": Value::Null, "kind": "lie",
        "checked": r.checked, "failures": r.failures,
    }));
    json!({
        "passed": passed,
        "associative": report_json(&assoc),
        "lie": report_json(&lie),
        "modules": modules,
    })
}

fn check_axioms(input: &Value, opts: &Opts) -> Result<Outcome> {
    let empty = json!({});
    let input = if input.is_null() { &empty } else { input };
    let params = axiom_params(input)?;
    let mut report = axiom_battery(&params, opts.seed);
    let passed = report["passed"] == json!(true);
    report["certificate"] = json!({
        "seed": opts.seed,
        "n": params.n,
        "count": params.count,
        "max_degree": params.max_degree,
        "alphas": params.alphas.iter().map(rat_json).collect::<Vec<_>>(),
    });
    let status = if passed { Status::Decided } else { Status::Failed };
    Ok(Outcome { report, status })
}

fn smith(input: &Value) -> Result<Outcome> {
    let m = polymat_field(input, "matrix")?;
    let cert = smith_form(&m);
    let mut c = smith_json(&cert);
    c["matrix"] = polymat_json(&m);
    Ok(decided(json!({
        "divisors": upolys_json(&cert.divisors, Var::X),
        "certificate": c,
    })))
}

fn opt_rat_json(r: &Option<Rat>) -> Value {
    r.as_ref().map(rat_json).unwrap_or(Value::Null)
}

fn iso(input: &Value) -> Result<Outcome> {
    let (p, q) = (polymat_field(input, "p")?, polymat_field(input, "q")?);
    let d = decide_isomorphism(&p, &q)?;
    let (sp, sq) = match &d.certs {
        Some((a, b)) => (smith_json(a), smith_json(b)),
        None => (Value::Null, Value::Null),
    };
    Ok(decided(json!({
        "isomorphic": d.isomorphic,
        "alpha": opt_rat_json(&d.alpha),
        "divisors_p": upolys_json(&d.divisors_p, Var::X),
        "divisors_q": upolys_json(&d.divisors_q, Var::X),
        "certificate": {
            "p": polymat_json(&p), "q": polymat_json(&q), "alpha": opt_rat_json(&d.alpha),
            "smith_p": sp, "smith_q": sq,
        },
    })))
}

fn anti_auto(input: &Value) -> Result<Outcome> {
    let p = polymat_field(input, "p")?;
    let d = anti_automorphism_exists(&p)?;
    let (ss, sp) = d.certs.as_ref().map(|(a, b)| (smith_json(a), smith_json(b))).expect("always compared");
    Ok(decided(json!({
        "exists": d.isomorphic,
        "alpha": opt_rat_json(&d.alpha),
        "divisors_star": upolys_json(&d.divisors_p, Var::X),
        "divisors_p": upolys_json(&d.divisors_q, Var::X),
        "certificate": {
            "p": polymat_json(&p), "alpha": opt_rat_json(&d.alpha),
            "smith_star": ss, "smith_p": sp,
        },
    })))
}

fn anti_inv(input: &Value, opts: &Opts) -> Result<Outcome> {
    let p = polymat_field(input, "p")?;
    let cap = opts.cap(1)?;
    match anti_involution_search(&p, cap as usize)? {
        Some(spec) => Ok(decided(json!({
            "found": true,
            "y": polymat_json(spec.y()),
            "epsilon": spec.eps(),
            "alpha": rat_json(spec.alpha()),
            "certificate": {
                "p": polymat_json(&p), "y": polymat_json(spec.y()),
                "epsilon": spec.eps(), "alpha": rat_json(spec.alpha()),
            },
        }))),
        None => Ok(Outcome {
            report: json!({
                "found": false,
                "certificate": { "p": polymat_json(&p), "degree_cap": cap },
            }),
            status: Status::Undecided,
        }),
    }
}

pub(crate) fn side_from_json(input: &Value) -> Result<Side> {
    match input.get("side").map(|v| v.as_str()) {
        None | Some(Some("left")) => Ok(Side::Left),
        Some(Some("right")) => Ok(Side::Right),
        _ => Err(bad("$.side", "expected \"left\" or \"right\"")),
    }
}

fn ideal(input: &Value) -> Result<Outcome> {
    let side = side_from_json(input)?;
    let p = polymat_field(input, "p")?;
    let gens = cend_list_from_json(field(input, "gens")?, "$.gens")?;
    let r = match side {
        Side::Left => left_ideal_generator(&p, &gens)?,
        Side::Right => right_ideal_generator(&p, &gens)?,
    };
    let mats = |ms: &[PolyMat]| Value::Array(ms.iter().map(polymat_json).collect());
    Ok(decided(json!({
        "side": side.name(),
        "q": polymat_json(&r.q),
        "certificate": {
            "side": side.name(),
            "p": polymat_json(&p),
            "gens": gens.iter().map(cend_json).collect::<Vec<_>>(),
            "q": polymat_json(&r.q),
            "inputs": mats(&r.inputs),
            "multipliers": mats(&r.hermite.multipliers),
            "generator": polymat_json(&r.hermite.generator),
        },
    })))
}

pub(crate) fn cend1_gens(input: &Value) -> Result<Vec<MPoly>> {
    let (v, path) = gens_value(input)?;
    let items = v.as_array().ok_or_else(|| bad(path, "expected a list"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, g)| poly_from_json(g, &[Var::D, Var::X], &format!("{path}[{i}]")))
        .collect()
}

fn classify_cend1(input: &Value, opts: &Opts) -> Result<Outcome> {
    let gens = cend1_gens(input)?;
    if opts.machine && opts.degree_cap.is_none() {
        return Err(CendError::Budget("--degree-cap is required with --json".into()));
    }
    let rounds = opts.rounds(12)?;
    let st = closure(&gens, opts.degree_cap, rounds)?;
    let certificate = json!({
        "gens": gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "basis": st.basis.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "gcd": st.gcd.to_string(),
        "x_degree_cap": st.x_degree_cap,
        "status": st.status.name(),
        "rounds": st.round,
    });
    if st.status == ClosureStatus::BudgetExhausted {
        return Ok(Outcome {
            report: json!({
                "type": Value::Null, "p": Value::Null, "q": Value::Null,
                "status": st.status.name(), "rounds": st.round, "irreducible": Value::Null,
                "certificate": certificate,
            }),
            status: Status::Undecided,
        });
    }
    let desc = classify(&st, opts.seed)?;
    let up = |u: &Option<cend_core::UPoly>| u.as_ref().map(|u| upoly_json(u, Var::X)).unwrap_or(Value::Null);
    Ok(decided(json!({
        "type": desc.tag.name(),
        "p": up(&desc.p),
        "q": up(&desc.q),
        "status": st.status.name(),
        "rounds": st.round,
        "irreducible": irreducible_on_standard(&desc),
        "certificate": certificate,
    })))
}

pub(crate) fn extension_kind(input: &Value) -> Result<(PolyMat, ExtensionKind, Value)> {
    let alpha = opt_rat(input, "alpha")?;
    match field(input, "kind")?.as_str() {
        Some("factorization") => {
            let (p, r, s) = (polymat_field(input, "p")?, polymat_field(input, "r")?, polymat_field(input, "s")?);
            let echo = json!({
                "kind": "factorization", "p": polymat_json(&p), "r": polymat_json(&r),
                "s": polymat_json(&s), "alpha": rat_json(&alpha),
            });
            Ok((p, ExtensionKind::Factorization { r, s, alpha }, echo))
        }
        Some("jordan") => {
            let p = match input.get("p") {
                Some(v) => polymat_from_json(v, "$.p")?,
                None => PolyMat::identity(opt_usize(input, "n", 1)?.max(1)),
            };
            let echo = json!({ "kind": "jordan", "p": polymat_json(&p), "alpha": rat_json(&alpha) });
            Ok((p, ExtensionKind::Jordan { alpha }, echo))
        }
        _ => Err(bad("$.kind", "expected \"factorization\" or \"jordan\"")),
    }
}

/// Builds the module and checks (M1), (M2) and the embedding on seeded
/// samples.
pub(crate) fn extension_checks(input: &Value, seed: u64) -> Result<(Value, Value)> {
    let (p, kind, echo) = extension_kind(input)?;
    let m = build_extension(&p, kind)?;
    let samples = seeded_module_samples(seed, m.n(), m.rank(), EXTENSION_SAMPLES, 2);
    let axioms = m.verify_axioms(&samples);
    let emb: Vec<(CendElem, ModVec)> = seeded_module_samples(seed.wrapping_add(1), m.n(), m.n(), EXTENSION_SAMPLES, 2)
        .into_iter()
        .map(|(a, _, v)| (a, v))
        .collect();
    let embedding = m.verify_embedding(&emb);
    let report = json!({
        "kind": echo["kind"],
        "rank": m.rank(),
        "passed": axioms.passed() && embedding.passed(),
        "axioms": report_json(&axioms),
        "embedding": report_json(&embedding),
    });
    Ok((report, echo))
}

fn extension(input: &Value, opts: &Opts) -> Result<Outcome> {
    let (mut report, mut echo) = extension_checks(input, opts.seed)?;
    let passed = report["passed"] == json!(true);
    echo["seed"] = json!(opts.seed);
    echo["samples"] = json!(EXTENSION_SAMPLES);
    report["certificate"] = echo;
    let status = if passed { Status::Decided } else { Status::Failed };
    Ok(Outcome { report, status })
}

fn oc_gens(input: &Value) -> Result<Outcome> {
    let p = polymat_field(input, "p")?;
    let n = opt_usize(input, "n", p.size())?;
    let eps = eps_from_json(field(input, "epsilon")?, "$.epsilon")?;
    let max_n = opt_usize(input, "max_n", 1)? as u32;
    let gens = make_oc_spc_generators(n, &p, eps, max_n)?;
    let list: Vec<Value> = gens
        .iter()
        .map(|g| json!({ "n": g.n, "i": g.i, "j": g.j, "apart": cend_json(&g.apart), "symbol": cend_json(&g.symbol) }))
        .collect();
    Ok(decided(json!({
        "algebra": if eps == 1 { "oc" } else { "spc" },
        "count": list.len(),
        "generators": list,
        "certificate": { "n": n, "p": polymat_json(&p), "epsilon": eps, "max_n": max_n },
    })))
}

fn invariance(input: &Value, opts: &Opts) -> Result<Outcome> {
    let p = polymat_field(input, "p")?;
    let eps = eps_from_json(field(input, "epsilon")?, "$.epsilon")?;
    let a = cend_field(input, "a")?;
    let cap = opts.cap(3)?;
    let form = ConfBilinearForm::new(p.clone(), eps)?;
    let r = invariance_check(&form, &a, cap)?;
    Ok(decided(json!({
        "invariant": r.passed(),
        "checked": r.checked,
        "failures": r.failures,
        "certificate": { "p": polymat_json(&p), "epsilon": eps, "a": cend_json(&a), "degree_cap": cap },
    })))
}

pub(crate) struct ProbeInput {
    pub p: PolyMat,
    pub alpha: Rat,
    pub gens: Vec<CendElem>,
    pub start: ModVec,
}

pub(crate) fn probe_input(input: &Value) -> Result<ProbeInput> {
    let gens = cend_list_from_json(field(input, "gens")?, "$.gens")?;
    let n = gens.first().map(|g| g.n()).unwrap_or(1);
    let p = match input.get("p") {
        Some(v) => polymat_from_json(v, "$.p")?,
        None => PolyMat::identity(n),
    };
    let start = match input.get("start") {
        Some(v) => modvec_from_json(v, "$.start")?,
        None => ModVec::basis(p.size(), 0, MPoly::one()),
    };
    Ok(ProbeInput { p, alpha: opt_rat(input, "alpha")?, gens, start })
}

fn probe(input: &Value, opts: &Opts) -> Result<Outcome> {
    let pi = probe_input(input)?;
    let cap = opts.cap(4)?;
    let rounds = opts.rounds(8)?;
    let r = irreducibility_probe(&pi.gens, &pi.p, &pi.alpha, &pi.start, cap, rounds)?;
    let span: Vec<Value> = r.span.iter().map(|row| upolys_json(row, Var::D)).collect();
    let status = if r.outcome == ProbeOutcome::Undecided { Status::Undecided } else { Status::Decided };
    Ok(Outcome {
        report: json!({
            "outcome": r.outcome.name(),
            "rounds": r.rounds,
            "span": span,
            "certificate": {
                "p": polymat_json(&pi.p), "alpha": rat_json(&pi.alpha),
                "gens": pi.gens.iter().map(cend_json).collect::<Vec<_>>(),
                "start": modvec_json(&pi.start), "degree_cap": cap, "rounds": rounds,
            },
        }),
        status,
    })
}

fn unital(input: &Value, opts: &Opts) -> Result<Outcome> {
    let (v, path) = gens_value(input)?;
    let gens = cend_list_from_json(v, path)?;
    let cap = opts.cap(8)?;
    let rounds = opts.rounds(8)?;
    let r = unital_closure_probe(&gens, cap, rounds)?;
    let status = if r.outcome == UnitalOutcome::Undecided { Status::Undecided } else { Status::Decided };
    Ok(Outcome {
        report: json!({
            "outcome": r.outcome.name(),
            "rounds": r.rounds,
            "basis": r.basis.iter().map(cend_json).collect::<Vec<_>>(),
            "witness": r.witness.as_ref().map(cend_json).unwrap_or(Value::Null),
            "certificate": {
                "gens": gens.iter().map(cend_json).collect::<Vec<_>>(),
                "degree_cap": cap, "rounds": rounds,
            },
        }),
        status,
    })
}
