//! Re-checks a report from its certificate. Each check names what it
//! established; the first failing check is reported.

use serde_json::{json, Value};

use cend_core::cend::AntiInvSpec;
use cend_core::cend1::{split_gcd, ClosureState, ClosureStatus};
use cend_core::gclie::{check_anti_fixed, plain_spec};
use cend_core::json::*;
use cend_core::poly::Var;
use cend_core::polymat::LeftGenerator;
use cend_core::structure::{ideal_inputs, Side};
use cend_core::{CendElem, CendError, Rat, Result, SmithCert, UPoly};

use crate::commands::*;
use crate::{run, Opts, Outcome, Status, Verb};

fn smith_from_json(v: &Value, path: &str) -> Result<SmithCert> {
    let divisors = field(v, "divisors")?
        .as_array()
        .ok_or_else(|| CendError::Parse { offset: 0, message: format!("{path}.divisors: expected a list") })?
        .iter()
        .enumerate()
        .map(|(i, d)| upoly_from_json(d, Var::X, &format!("{path}.divisors[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(SmithCert {
        divisors,
        left: polymat_from_json(field(v, "left")?, &format!("{path}.left"))?,
        right: polymat_from_json(field(v, "right")?, &format!("{path}.right"))?,
    })
}

fn opt_rat(v: &Value, path: &str) -> Result<Option<Rat>> {
    if v.is_null() {
        Ok(None)
    } else {
        rat_from_json(v, path).map(Some)
    }
}

fn root_sum(p: &UPoly) -> Rat {
    match p.degree() {
        None | Some(0) => Rat::from_integer(0.into()),
        Some(d) => -(p.coeff(d - 1) / p.lc()),
    }
}

struct Checks {
    done: Vec<&'static str>,
    failed: Option<&'static str>,
}

impl Checks {
    fn new() -> Checks {
        Checks { done: vec![], failed: None }
    }

    fn check(&mut self, name: &'static str, ok: bool) {
        if self.failed.is_none() {
            if ok {
                self.done.push(name);
            } else {
                self.failed = Some(name);
            }
        }
    }
}

/// Recomputes a report with the budgets recorded in its certificate.
fn rerun(verb: Verb, input: &Value, cert: &Value) -> Result<Outcome> {
    let opts = Opts {
        seed: cert.get("seed").and_then(Value::as_u64).unwrap_or(crate::DEFAULT_SEED),
        degree_cap: cert.get("degree_cap").and_then(Value::as_u64).map(|c| c as u32),
        rounds: cert.get("rounds").and_then(Value::as_u64).map(|r| r as usize),
        machine: false,
    };
    run(verb, input, &opts)
}

fn same_fields(a: &Value, b: &Value, keys: &[&str]) -> bool {
    keys.iter().all(|k| a.get(k) == b.get(k))
}

pub(crate) fn verify(report: &Value) -> Result<Outcome> {
    let name = field(report, "command")?
        .as_str()
        .ok_or_else(|| CendError::Parse { offset: 0, message: "$.command: expected a string".into() })?;
    let verb = Verb::from_name(name)
        .filter(|v| *v != Verb::Verify)
        .ok_or_else(|| CendError::Mismatch(format!("cannot verify command {name:?}")))?;
    let cert = field(report, "certificate")?;
    let mut c = Checks::new();
    match verb {
        Verb::Product | Verb::Bracket => {
            let (a, b) = (cend_from_json(field(cert, "a")?, "$.certificate.a")?, cend_from_json(field(cert, "b")?, "$.certificate.b")?);
            let series = product_series(&a, &b, verb == Verb::Bracket)?;
            c.check("series recomputed", report.get("series") == Some(&series));
        }
        Verb::CheckAxioms => {
            let params = axiom_params(cert)?;
            let seed = cert.get("seed").and_then(Value::as_u64).unwrap_or(crate::DEFAULT_SEED);
            let fresh = axiom_battery(&params, seed);
            c.check("battery rerun", same_fields(report, &fresh, &["passed", "associative", "lie", "modules"]));
        }
        Verb::Smith => {
            let m = polymat_from_json(field(cert, "matrix")?, "$.certificate.matrix")?;
            let s = smith_from_json(cert, "$.certificate")?;
            c.check("left·M·right is the divisor diagonal", s.verify(&m));
            c.check("divisors match", report.get("divisors") == Some(&upolys_json(&s.divisors, Var::X)));
        }
        Verb::Iso => {
            let (p, q) = (polymat_from_json(field(cert, "p")?, "$.certificate.p")?, polymat_from_json(field(cert, "q")?, "$.certificate.q")?);
            let alpha = opt_rat(field(cert, "alpha")?, "$.certificate.alpha")?;
            let (dp, dq) = (p.det(), q.det());
            let claim = report.get("isomorphic") == Some(&json!(true));
            c.check("nondegenerate", !dp.is_zero() && !dq.is_zero());
            match alpha {
                None => c.check("det degrees differ", dp.degree() != dq.degree() && !claim),
                Some(alpha) => {
                    let deg = dp.degree().unwrap_or(0);
                    let expect = if deg == 0 {
                        Rat::from_integer(0.into())
                    } else {
                        (root_sum(&dp) - root_sum(&dq)) / Rat::from_integer((deg as i64).into())
                    };
                    c.check("alpha is the root-sum candidate", dq.degree() == Some(deg) && alpha == expect);
                    let sp = smith_from_json(field(cert, "smith_p")?, "$.certificate.smith_p")?;
                    let sq = smith_from_json(field(cert, "smith_q")?, "$.certificate.smith_q")?;
                    c.check("smith of P(x+alpha)", sp.verify(&p.shift(&alpha)));
                    c.check("smith of Q", sq.verify(&q));
                    c.check("verdict matches divisors", claim == (sp.divisors == sq.divisors));
                }
            }
        }
        Verb::AntiAuto => {
            let p = polymat_from_json(field(cert, "p")?, "$.certificate.p")?;
            let alpha = rat_from_json(field(cert, "alpha")?, "$.certificate.alpha")?;
            let dp = p.det();
            let deg = dp.degree().unwrap_or(0);
            let expect = if deg == 0 {
                Rat::from_integer(0.into())
            } else {
                root_sum(&dp) * Rat::from_integer(2.into()) / Rat::from_integer((deg as i64).into())
            };
            c.check("nondegenerate", !dp.is_zero());
            c.check("alpha is the root-sum candidate", alpha == expect);
            let ss = smith_from_json(field(cert, "smith_star")?, "$.certificate.smith_star")?;
            let sp = smith_from_json(field(cert, "smith_p")?, "$.certificate.smith_p")?;
            c.check("smith of star(P)", ss.verify(&p.star(&alpha)));
            c.check("smith of P", sp.verify(&p));
            let claim = report.get("exists") == Some(&json!(true));
            c.check("verdict matches divisors", claim == (ss.divisors == sp.divisors));
        }
        Verb::AntiInvSearch => {
            let p = polymat_from_json(field(cert, "p")?, "$.certificate.p")?;
            if report.get("found") == Some(&json!(true)) {
                let y = polymat_from_json(field(cert, "y")?, "$.certificate.y")?;
                let eps = eps_from_json(field(cert, "epsilon")?, "$.certificate.epsilon")?;
                let alpha = rat_from_json(field(cert, "alpha")?, "$.certificate.alpha")?;
                c.check("anti-involution condition", AntiInvSpec::new(p, y, eps, alpha).is_ok());
            } else {
                c.check("no claim to check", true);
            }
        }
        Verb::Ideal => {
            let side = side_from_json(cert)?;
            let p = polymat_from_json(field(cert, "p")?, "$.certificate.p")?;
            let gens = cend_list_from_json(field(cert, "gens")?, "$.certificate.gens")?;
            let q = polymat_from_json(field(cert, "q")?, "$.certificate.q")?;
            let lg = LeftGenerator {
                generator: polymat_from_json(field(cert, "generator")?, "$.certificate.generator")?,
                multipliers: polymat_list_from_json(field(cert, "multipliers")?, "$.certificate.multipliers")?,
            };
            let inputs = ideal_inputs(side, &p, &gens)?;
            let recorded = polymat_list_from_json(field(cert, "inputs")?, "$.certificate.inputs")?;
            c.check("inputs recomputed from the generators", recorded == inputs);
            c.check("hermite generator spans the inputs", lg.verify(&recorded));
            let rel = match side {
                Side::Left => &q * &p == lg.generator,
                Side::Right => q.transpose() == lg.generator,
            };
            c.check("Q relates to the generator", rel);
            c.check("reported Q matches", report.get("q") == Some(&polymat_json(&q)));
        }
        Verb::ClassifyCend1 => {
            let gens = cend1_gens(cert)?;
            let strs = |key: &str| -> Result<Vec<cend_core::MPoly>> {
                field(cert, key)?
                    .as_array()
                    .ok_or_else(|| CendError::Parse { offset: 0, message: format!("$.certificate.{key}: expected a list") })?
                    .iter()
                    .enumerate()
                    .map(|(i, g)| poly_from_json(g, &[Var::D, Var::X], &format!("$.certificate.{key}[{i}]")))
                    .collect()
            };
            let status = match field(cert, "status")?.as_str() {
                Some("stabilized") => ClosureStatus::Stabilized,
                _ => ClosureStatus::BudgetExhausted,
            };
            let state = ClosureState {
                basis: strs("basis")?,
                gcd: poly_from_json(field(cert, "gcd")?, &[Var::D, Var::X], "$.certificate.gcd")?,
                round: field(cert, "rounds")?.as_u64().unwrap_or(0) as usize,
                status,
                x_degree_cap: field(cert, "x_degree_cap")?.as_u64().unwrap_or(0) as u32,
            };
            c.check("closure certificate", state.verify(&gens));
            if status == ClosureStatus::Stabilized {
                let tag = report.get("type").and_then(Value::as_str).unwrap_or("");
                if tag == "CPARTIAL" {
                    c.check("x-free basis", state.basis.iter().all(|b| !b.involves(Var::X)));
                } else {
                    let up = |key: &str| -> Result<UPoly> {
                        match report.get(key) {
                            Some(Value::Null) | None => Ok(UPoly::one()),
                            Some(v) => upoly_from_json(v, Var::X, &format!("$.{key}")),
                        }
                    };
                    let (p, q) = (up("p")?, up("q")?);
                    let split = split_gcd(&state.gcd, 0);
                    c.check("gcd is p(x)q(∂+x)", split == Some((p, q)));
                }
            }
        }
        Verb::ExtensionBuild => {
            let seed = cert.get("seed").and_then(Value::as_u64).unwrap_or(crate::DEFAULT_SEED);
            let (fresh, _) = extension_checks(cert, seed)?;
            c.check("axioms and embedding rerun", same_fields(report, &fresh, &["passed", "axioms", "embedding", "rank"]));
        }
        Verb::OcGens => {
            let p = polymat_from_json(field(cert, "p")?, "$.certificate.p")?;
            let eps = eps_from_json(field(cert, "epsilon")?, "$.certificate.epsilon")?;
            let spec = plain_spec(&p, eps)?;
            let pm = CendElem::from_polymat(&p);
            let gens = field(report, "generators")?.as_array().cloned().unwrap_or_default();
            let mut fixed = true;
            let mut symbols = true;
            for (k, g) in gens.iter().enumerate() {
                let a = cend_from_json(field(g, "apart")?, &format!("$.generators[{k}].apart"))?;
                let s = cend_from_json(field(g, "symbol")?, &format!("$.generators[{k}].symbol"))?;
                fixed &= check_anti_fixed(&a, &spec);
                symbols &= &a * &pm == s;
            }
            c.check("sigma(a) = -a", fixed);
            c.check("symbol = a·P", symbols);
        }
        Verb::InvarianceCheck | Verb::IrreducibilityProbe | Verb::UnitalProbe => {
            let fresh = rerun(verb, cert, cert)?;
            let keys: &[&str] = match verb {
                Verb::InvarianceCheck => &["invariant", "checked", "failures"],
                Verb::IrreducibilityProbe => &["outcome", "rounds", "span"],
                _ => &["outcome", "rounds", "basis", "witness"],
            };
            c.check("rerun agrees", same_fields(report, &fresh.report, keys));
        }
        Verb::Verify => unreachable!(),
    }
    let verified = c.failed.is_none();
    let mut out = json!({
        "target": name,
        "verified": verified,
        "certificate": { "checks": c.done },
    });
    if let Some(f) = c.failed {
        out["failed_check"] = json!(f);
    }
    Ok(Outcome { report: out, status: if verified { Status::Decided } else { Status::Failed } })
}
