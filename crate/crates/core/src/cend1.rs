//! Subalgebras of `Cend_1 = ℚ[∂, x]`.
//!
//! A subalgebra is one of: `ℚ[∂]`, `ℚ[∂,x]p(x)`, `ℚ[∂,x]q(∂+x)`,
//! `ℚ[∂,x]p(x)q(∂+x)`. [`closure`] saturates a generating set inside an
//! x-degree window and tracks the gcd `G` of everything found; [`classify`]
//! splits `G = p(x)q(∂+x)` and tags the result.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cend::{product_at, CendElem};
use crate::error::{CendError, Result};
use crate::poly::{bipoly_gcd, upoly_gcd, MPoly, Monomial, Rat, Subst, UPoly, Var};
use crate::polymat::Echelon;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureStatus {
    Stabilized,
    BudgetExhausted,
}

impl ClosureStatus {
    pub fn name(self) -> &'static str {
        match self {
            ClosureStatus::Stabilized => "stabilized",
            ClosureStatus::BudgetExhausted => "budget_exhausted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureState {
    /// Echelon basis of the ℚ[∂]-module found so far.
    pub basis: Vec<MPoly>,
    /// Normalized gcd of the basis (zero for the zero module).
    pub gcd: MPoly,
    pub round: usize,
    pub status: ClosureStatus,
    pub x_degree_cap: u32,
}

pub fn default_x_degree_cap(gens: &[MPoly]) -> u32 {
    2 * gens.iter().filter_map(|g| g.degree_in(Var::X)).max().unwrap_or(0) + 4
}

fn to_row(p: &MPoly, cap: u32) -> Option<Vec<UPoly>> {
    if p.degree_in(Var::X).is_some_and(|d| d > cap) {
        return None;
    }
    let mut row = vec![UPoly::zero(); cap as usize + 1];
    for (k, c) in p.collect_by(Var::X) {
        row[k as usize] = UPoly::from_mpoly(&c, Var::D).expect("only ∂, x");
    }
    Some(row)
}

fn from_row(row: &[UPoly]) -> MPoly {
    let mut out = MPoly::zero();
    for (k, c) in row.iter().enumerate() {
        out += &(&c.to_mpoly(Var::D) * &MPoly::var(Var::X).pow(k as u32));
    }
    out
}

fn gcd_all(basis: &[MPoly]) -> MPoly {
    basis.iter().fold(MPoly::zero(), |g, b| bipoly_gcd(&g, b))
}

/// Saturation under all λ-coefficients of pairwise products, keeping
/// elements of x-degree `<= cap` (default `2·deg_x + 4`).
///
/// Products of basis elements suffice: sesquilinearity puts the products
/// of ∂-multiples in the ℚ[∂]-span of the same coefficients. Stabilized
/// means a full round added nothing, so the echelon and `G` both repeat.
pub fn closure(gens: &[MPoly], x_degree_cap: Option<u32>, rounds: usize) -> Result<ClosureState> {
    if gens.is_empty() {
        return Err(CendError::Mismatch("empty generator list".into()));
    }
    if let Some(g) = gens.iter().find(|g| !g.uses_only(&[Var::D, Var::X])) {
        return Err(CendError::Mismatch(format!("generator {g} uses λ or μ")));
    }
    let cap = x_degree_cap.unwrap_or_else(|| default_x_degree_cap(gens));
    let mut span = Echelon::new(cap as usize + 1);
    for g in gens {
        let row = to_row(g, cap)
            .ok_or_else(|| CendError::Budget(format!("generator {g} exceeds the x-degree cap {cap}")))?;
        span.insert(row);
    }
    let lam = MPoly::var(Var::L);
    let mut basis: Vec<MPoly> = span.rows().map(from_row).collect();
    let mut gcd = gcd_all(&basis);
    for round in 1..=rounds {
        let mut grew = false;
        for a in &basis {
            for b in &basis {
                let prod = product_at(&CendElem::single(a.clone()), &CendElem::single(b.clone()), &lam);
                for (_, c) in prod.collect_lambda().terms() {
                    if let Some(row) = to_row(c.get(0, 0), cap) {
                        grew |= span.insert(row);
                    }
                }
            }
        }
        basis = span.rows().map(from_row).collect();
        let next = gcd_all(&basis);
        let same = next == gcd;
        gcd = next;
        if !grew && same {
            return Ok(ClosureState {
                basis,
                gcd,
                round,
                status: ClosureStatus::Stabilized,
                x_degree_cap: cap,
            });
        }
    }
    Ok(ClosureState {
        basis,
        gcd,
        round: rounds,
        status: ClosureStatus::BudgetExhausted,
        x_degree_cap: cap,
    })
}

impl ClosureState {
    /// Re-checks a recorded state: the generators lie in the span of the
    /// basis, `gcd` is the gcd of the basis, and, when stabilized, one more
    /// round of products stays inside the span.
    pub fn verify(&self, gens: &[MPoly]) -> bool {
        let cap = self.x_degree_cap;
        let mut span = Echelon::new(cap as usize + 1);
        for b in &self.basis {
            match to_row(b, cap) {
                Some(row) => {
                    span.insert(row);
                }
                None => return false,
            }
        }
        if span.rank() != self.basis.len() || gcd_all(&self.basis) != self.gcd {
            return false;
        }
        if !gens.iter().all(|g| to_row(g, cap).is_some_and(|r| span.contains(&r))) {
            return false;
        }
        if self.status == ClosureStatus::BudgetExhausted {
            return true;
        }
        let lam = MPoly::var(Var::L);
        self.basis.iter().all(|a| {
            self.basis.iter().all(|b| {
                let prod = product_at(&CendElem::single(a.clone()), &CendElem::single(b.clone()), &lam);
                prod.collect_lambda()
                    .terms()
                    .all(|(_, c)| to_row(c.get(0, 0), cap).is_none_or(|r| span.contains(&r)))
            })
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubalgType {
    /// `ℚ[∂]`.
    CPartial,
    POnly,
    QOnly,
    PQ,
    /// All of `Cend_1` (`p = 1`).
    Full,
}

impl SubalgType {
    pub fn name(self) -> &'static str {
        match self {
            SubalgType::CPartial => "CPARTIAL",
            SubalgType::POnly => "P_ONLY",
            SubalgType::QOnly => "Q_ONLY",
            SubalgType::PQ => "PQ",
            SubalgType::Full => "FULL",
        }
    }
}

/// `q` is a polynomial in `z = ∂+x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubalgDescriptor {
    pub tag: SubalgType,
    pub p: Option<UPoly>,
    pub q: Option<UPoly>,
}

impl SubalgDescriptor {
    /// The symbol `p(x)q(∂+x)` spanning the algebra over `ℚ[∂,x]`, or `1`
    /// for `ℚ[∂]`.
    pub fn generator(&self) -> MPoly {
        let one = UPoly::one();
        let p = self.p.as_ref().unwrap_or(&one).to_mpoly(Var::X);
        let q = self.q.as_ref().unwrap_or(&one).to_mpoly(Var::X);
        let z = &MPoly::var(Var::D) + &MPoly::var(Var::X);
        &p * &q.substitute(&Subst::new().with(Var::X, z))
    }
}

fn random_point(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(rng.gen_range(-40i64..=40).into(), rng.gen_range(1i64..=7).into())
}

/// `G(t, x)` as a polynomial in `x`.
fn at_d(g: &MPoly, t: &Rat) -> UPoly {
    let s = Subst::new().with(Var::D, MPoly::constant(t.clone()));
    UPoly::from_mpoly(&g.substitute(&s), Var::X).expect("only ∂, x")
}

/// Splits a normalized `G` as `p(x)q(∂+x)` (both monic), using seeded
/// evaluation points. `None` if no split reconstructs `G` exactly.
pub fn split_gcd(g: &MPoly, seed: u64) -> Option<(UPoly, UPoly)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..8 {
        let ts: Vec<Rat> = (0..3).map(|_| random_point(&mut rng)).collect();
        // G(t, x) = p(x) q(t + x); the q-factors are coprime for generic t
        let p = ts.iter().fold(UPoly::zero(), |acc, t| upoly_gcd(&acc, &at_d(g, t)));
        if p.is_zero() {
            return None;
        }
        let c = (0..20).map(|_| random_point(&mut rng)).find(|c| !p.eval(c).is_zero())?;
        // q(z) = G(z - c, c) / p(c), read off in the x slot
        let s = Subst::new()
            .with(Var::D, &MPoly::var(Var::X) - &MPoly::constant(c.clone()))
            .with(Var::X, MPoly::constant(c.clone()));
        let q = UPoly::from_mpoly(&g.substitute(&s), Var::X)?.scale(&p.eval(&c).recip());
        let cand = SubalgDescriptor {
            tag: SubalgType::PQ,
            p: Some(p.clone()),
            q: Some(q.clone()),
        };
        if &cand.generator() == g {
            return Some((p, q));
        }
    }
    None
}

/// Tags a stabilized closure.
pub fn classify(state: &ClosureState, seed: u64) -> Result<SubalgDescriptor> {
    if state.status != ClosureStatus::Stabilized {
        return Err(CendError::Budget("closure did not stabilize".into()));
    }
    if state.basis.is_empty() {
        return Err(CendError::Degenerate("zero subalgebra".into()));
    }
    if state.basis.iter().all(|b| !b.involves(Var::X)) {
        return Ok(SubalgDescriptor {
            tag: SubalgType::CPartial,
            p: None,
            q: None,
        });
    }
    let (p, q) = split_gcd(&state.gcd, seed)
        .ok_or_else(|| CendError::Degenerate(format!("gcd {} has no p(x)q(∂+x) split", state.gcd)))?;
    let tag = match (p.is_constant(), q.is_constant()) {
        (true, true) => SubalgType::Full,
        (false, true) => SubalgType::POnly,
        (true, false) => SubalgType::QOnly,
        (false, false) => SubalgType::PQ,
    };
    Ok(SubalgDescriptor {
        tag,
        p: (!p.is_constant()).then_some(p),
        q: (!q.is_constant()).then_some(q),
    })
}

/// Whether the subalgebra acts irreducibly on `ℚ[∂]`.
pub fn irreducible_on_standard(desc: &SubalgDescriptor) -> bool {
    matches!(desc.tag, SubalgType::CPartial | SubalgType::POnly | SubalgType::Full)
}

/// `∂^i x^j` shorthand used by callers building generator lists.
pub fn monomial(i: u32, j: u32) -> MPoly {
    MPoly::monomial(Rat::from_integer(1.into()), Monomial([i, j, 0, 0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_mpoly;

    fn run(gens: &[&str]) -> (ClosureState, SubalgDescriptor) {
        let gens: Vec<MPoly> = gens.iter().map(|s| parse_mpoly(s).unwrap()).collect();
        let st = closure(&gens, None, 12).unwrap();
        assert_eq!(st.status, ClosureStatus::Stabilized, "{gens:?}");
        assert!(st.verify(&gens));
        let d = classify(&st, 7).unwrap();
        (st, d)
    }

    #[test]
    fn table() {
        let (st, d) = run(&["1"]);
        assert_eq!((d.tag, st.gcd), (SubalgType::CPartial, MPoly::one()));
        let (st, d) = run(&["x^2"]);
        assert_eq!(st.gcd, parse_mpoly("x^2").unwrap());
        assert_eq!((d.tag, d.p), (SubalgType::POnly, Some(UPoly::from_ints(&[0, 0, 1]))));
        let (_, d) = run(&["d^3 + 3*d^2*x + 3*d*x^2 + x^3"]);
        assert_eq!((d.tag, d.q), (SubalgType::QOnly, Some(UPoly::from_ints(&[0, 0, 0, 1]))));
        let (_, d) = run(&["d*x + x^2"]);
        assert_eq!(d.tag, SubalgType::PQ);
        assert_eq!((d.p, d.q), (Some(UPoly::var()), Some(UPoly::var())));
        let (st, d) = run(&["x", "d"]);
        assert_eq!((d.tag, st.gcd), (SubalgType::Full, MPoly::one()));
    }

    #[test]
    fn irreducibility_flags() {
        let desc = |tag| SubalgDescriptor { tag, p: None, q: None };
        assert!(irreducible_on_standard(&desc(SubalgType::POnly)));
        assert!(irreducible_on_standard(&desc(SubalgType::CPartial)));
        assert!(!irreducible_on_standard(&desc(SubalgType::QOnly)));
        assert!(!irreducible_on_standard(&desc(SubalgType::PQ)));
    }

    #[test]
    fn split_rejects_non_product() {
        assert!(split_gcd(&parse_mpoly("d^2 + x").unwrap(), 1).is_none());
        let g = parse_mpoly("d*x + x^2 + x").unwrap(); // x(∂+x+1)
        assert_eq!(split_gcd(&g, 1), Some((UPoly::var(), UPoly::from_ints(&[1, 1]))));
    }

    #[test]
    fn budget_is_reported() {
        let st = closure(&[parse_mpoly("x^2").unwrap()], None, 1).unwrap();
        assert_eq!(st.status, ClosureStatus::BudgetExhausted);
        assert!(classify(&st, 1).is_err());
        let mut forged = closure(&[parse_mpoly("x^2").unwrap()], None, 12).unwrap();
        forged.basis.pop();
        forged.gcd = gcd_all(&forged.basis);
        assert!(!forged.verify(&[parse_mpoly("x^2").unwrap()]));
        assert!(closure(&[parse_mpoly("x^9").unwrap()], Some(4), 3).is_err());
    }
}
