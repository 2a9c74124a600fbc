//! Closure probe for unital subalgebras of `Cend_N`: such a subalgebra that
//! acts irreducibly is `Cur_N` or all of `Cend_N`.

use crate::cend::{product_at, CendElem};
use crate::error::{CendError, Result};
use crate::poly::{MPoly, UPoly, Var};
use crate::polymat::Echelon;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitalOutcome {
    CurN,
    CendN,
    /// Closed, x-free and strictly smaller than `Cur_N`: the constant part
    /// is a proper subalgebra of `Mat_N`, so the action is reducible.
    Reducible,
    Undecided,
}

impl UnitalOutcome {
    pub fn name(self) -> &'static str {
        match self {
            UnitalOutcome::CurN => "cur_n",
            UnitalOutcome::CendN => "cend_n",
            UnitalOutcome::Reducible => "reducible",
            UnitalOutcome::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitalProbe {
    pub outcome: UnitalOutcome,
    pub rounds: usize,
    /// Echelon basis of the x-free closure (empty for `CendN`).
    pub basis: Vec<CendElem>,
    /// The x-dependent element that decided `CendN`.
    pub witness: Option<CendElem>,
}

fn to_row(a: &CendElem) -> Vec<UPoly> {
    a.entries()
        .iter()
        .map(|e| UPoly::from_mpoly(e, Var::D).expect("x-free symbol"))
        .collect()
}

fn from_row(n: usize, row: &[UPoly]) -> CendElem {
    CendElem::from_entries(n, row.iter().map(|p| p.to_mpoly(Var::D)).collect()).expect("n*n")
}

/// Saturates under all λ-coefficients of pairwise products. The identity
/// must be among `gens`; elements with ∂-degree above `degree_cap` are
/// discarded.
pub fn unital_closure_probe(gens: &[CendElem], degree_cap: u32, rounds: usize) -> Result<UnitalProbe> {
    let n = gens
        .first()
        .ok_or_else(|| CendError::Mismatch("empty generator list".into()))?
        .n();
    if gens.iter().any(|g| g.n() != n) {
        return Err(CendError::Mismatch("generators differ in size".into()));
    }
    if !gens.contains(&CendElem::identity(n)) {
        return Err(CendError::Mismatch("identity is not among the generators".into()));
    }
    if let Some(w) = gens.iter().find(|g| g.involves(Var::X)) {
        return Ok(UnitalProbe {
            outcome: UnitalOutcome::CendN,
            rounds: 0,
            basis: vec![],
            witness: Some(w.clone()),
        });
    }
    let fits = |a: &CendElem| a.entries().iter().all(|e| e.total_degree().unwrap_or(0) <= degree_cap);
    let mut span = Echelon::new(n * n);
    for g in gens.iter().filter(|g| fits(g)) {
        span.insert(to_row(g));
    }
    let lam = MPoly::var(Var::L);
    for round in 1..=rounds {
        let basis: Vec<CendElem> = span.rows().map(|r| from_row(n, r)).collect();
        let mut grew = false;
        for a in &basis {
            for b in &basis {
                for (_, c) in product_at(a, b, &lam).collect_lambda().terms() {
                    if fits(c) {
                        grew |= span.insert(to_row(c));
                    }
                }
            }
        }
        if !grew {
            let full = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .all(|(i, j)| span.contains(&to_row(&CendElem::unit(n, i, j, MPoly::one()))));
            return Ok(UnitalProbe {
                outcome: if full { UnitalOutcome::CurN } else { UnitalOutcome::Reducible },
                rounds: round,
                basis,
                witness: None,
            });
        }
    }
    Ok(UnitalProbe {
        outcome: UnitalOutcome::Undecided,
        rounds,
        basis: span.rows().map(|r| from_row(n, r)).collect(),
        witness: None,
    })
}
