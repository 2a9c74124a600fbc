//! Structure theory as decision procedures: one-sided ideals, isomorphism,
//! anti-automorphisms and anti-involutions, extension modules and the
//! unital closure probe. Every report carries data that can be re-checked
//! with `polymat`/`cend` primitives alone.

mod antiinv;
mod extension;
mod unital;

pub use antiinv::{anti_involution_search, antiinv_conjugacy_verify};
pub use extension::{build_extension, ExtensionKind, ExtensionModule};
pub use unital::{unital_closure_probe, UnitalOutcome, UnitalProbe};

use num_traits::Zero;

use crate::cend::CendElem;
use crate::error::{CendError, Result};
use crate::poly::{MPoly, Rat, Subst, UPoly, Var};
use crate::polymat::{hermite_left_generator, smith_form, LeftGenerator, PolyMat, SmithCert};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// A one-sided ideal of `Cend_{N,P}` with its generator.
///
/// Left: the ideal is `Cend_{N,QP}`, and `hermite` is the canonical left
/// generator of the ∂-coefficient matrices `a_i(x)P(x)` of the inputs, so
/// `hermite.generator = Q·P`. Right: the ideal is `Q(∂+x)·Cend_{N,P}`, with
/// `Q` in the variable `z = ∂+x` (printed as `x`) and `hermite` computed on
/// transposes, so `hermite.generator = Q^t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealReport {
    pub side: Side,
    pub q: PolyMat,
    /// The matrices fed to the Hermite step.
    pub inputs: Vec<PolyMat>,
    pub hermite: LeftGenerator,
}

impl IdealReport {
    pub fn verify(&self, p: &PolyMat) -> bool {
        if !self.hermite.verify(&self.inputs) {
            return false;
        }
        match self.side {
            Side::Left => &self.q * p == self.hermite.generator,
            Side::Right => self.q.transpose() == self.hermite.generator,
        }
    }
}

/// `[M_0, M_1, ...]` with `a = Σ ∂^i M_i(x)`; trailing zero blocks dropped.
pub fn d_coefficients(a: &CendElem) -> Result<Vec<PolyMat>> {
    if a.involves(Var::L) || a.involves(Var::M) {
        return Err(CendError::Mismatch("symbol contains λ or μ".into()));
    }
    let n = a.n();
    let top = a.entries().iter().filter_map(|e| e.degree_in(Var::D)).max();
    let Some(top) = top else { return Ok(vec![]) };
    let mut out = vec![PolyMat::zeros(n, n); top as usize + 1];
    for i in 0..n {
        for j in 0..n {
            for (k, c) in a.get(i, j).collect_by(Var::D) {
                let u = UPoly::from_mpoly(&c, Var::X).expect("only ∂, x present");
                out[k as usize].set(i, j, u);
            }
        }
    }
    Ok(out)
}

fn check_algebra(p: &PolyMat, gens: &[CendElem]) -> Result<()> {
    if !p.is_square() {
        return Err(CendError::Mismatch("P must be square".into()));
    }
    if gens.is_empty() {
        return Err(CendError::Mismatch("empty generator list".into()));
    }
    if gens.iter().any(|g| g.n() != p.size()) {
        return Err(CendError::Mismatch("generator size differs from P".into()));
    }
    if p.det().is_zero() {
        return Err(CendError::Degenerate("det P = 0".into()));
    }
    Ok(())
}

/// The matrices whose left span decides the ideal. Left: the
/// ∂-coefficients of each `a`, times `P`. Right: the transposed
/// ∂-coefficients of `a` rewritten in `z = ∂+x`.
pub fn ideal_inputs(side: Side, p: &PolyMat, gens: &[CendElem]) -> Result<Vec<PolyMat>> {
    check_algebra(p, gens)?;
    let n = p.size();
    let to_z = Subst::new().with(Var::X, &MPoly::var(Var::X) - &MPoly::var(Var::D));
    let mut inputs = vec![];
    for g in gens {
        match side {
            Side::Left => inputs.extend(d_coefficients(g)?.into_iter().map(|m| &m * p)),
            Side::Right => {
                let tilde = g.substitute(&to_z);
                inputs.extend(d_coefficients(&tilde)?.iter().map(PolyMat::transpose));
            }
        }
    }
    if inputs.is_empty() {
        inputs.push(PolyMat::zeros(n, n));
    }
    Ok(inputs)
}

/// Left ideal generated by the elements `a(∂,x)P(x)`, given by a-parts.
///
/// Extracting leading λ-coefficients of `E_kk P _λ a` peels `a` into its
/// ∂-coefficients; the left ideal of `Mat_N ℚ[x]` they generate (after the
/// factor `P`) is `Mat_N ℚ[x]·QP`.
pub fn left_ideal_generator(p: &PolyMat, gens: &[CendElem]) -> Result<IdealReport> {
    let inputs = ideal_inputs(Side::Left, p, gens)?;
    let hermite = hermite_left_generator(&inputs)?;
    let q = hermite
        .generator
        .right_divide(p)
        .ok_or_else(|| CendError::Budget("ideal generator is not right-divisible by P".into()))?;
    Ok(IdealReport {
        side: Side::Left,
        q,
        inputs,
        hermite,
    })
}

/// Right ideal generated by `a(∂,x)P(x)`: rewrite `a = Σ ∂^i ã_i(∂+x)` and
/// take the right generator of the `ã_i(z)`.
pub fn right_ideal_generator(p: &PolyMat, gens: &[CendElem]) -> Result<IdealReport> {
    let inputs = ideal_inputs(Side::Right, p, gens)?;
    let hermite = hermite_left_generator(&inputs)?;
    Ok(IdealReport {
        side: Side::Right,
        q: hermite.generator.transpose(),
        inputs,
        hermite,
    })
}

/// Outcome of an isomorphism (or anti-automorphism) decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoDecision {
    pub isomorphic: bool,
    pub alpha: Option<Rat>,
    /// Elementary divisors of the shifted (or starred) first matrix.
    pub divisors_p: Vec<UPoly>,
    pub divisors_q: Vec<UPoly>,
    /// Smith certificates of the two compared matrices, when computed.
    pub certs: Option<(SmithCert, SmithCert)>,
}

fn nondegenerate(m: &PolyMat, name: &str) -> Result<UPoly> {
    if !m.is_square() {
        return Err(CendError::Mismatch(format!("{name} must be square")));
    }
    let d = m.det();
    if d.is_zero() {
        return Err(CendError::Degenerate(format!("det {name} = 0")));
    }
    Ok(d)
}

/// Sum of roots of `p`: `-c_{d-1}/c_d`.
fn root_sum(p: &UPoly) -> Rat {
    let d = p.degree().unwrap_or(0);
    if d == 0 {
        return Rat::zero();
    }
    -(p.coeff(d - 1) / p.lc())
}

fn compare(a: &PolyMat, b: &PolyMat, alpha: Rat) -> IsoDecision {
    let (ca, cb) = (smith_form(a), smith_form(b));
    IsoDecision {
        isomorphic: ca.divisors == cb.divisors,
        alpha: Some(alpha),
        divisors_p: ca.divisors.clone(),
        divisors_q: cb.divisors.clone(),
        certs: Some((ca, cb)),
    }
}

/// Is `Cend_{N,P} ≅ Cend_{N,Q}`? Decided through the one candidate shift
/// `α = (s_P - s_Q)/d` forced by the determinants' root sums.
pub fn decide_isomorphism(p: &PolyMat, q: &PolyMat) -> Result<IsoDecision> {
    let (dp, dq) = (nondegenerate(p, "P")?, nondegenerate(q, "Q")?);
    if p.size() != q.size() {
        return Err(CendError::Mismatch("P and Q differ in size".into()));
    }
    let (degp, degq) = (dp.degree().unwrap(), dq.degree().unwrap());
    if degp != degq {
        let (cp, cq) = (smith_form(p), smith_form(q));
        return Ok(IsoDecision {
            isomorphic: false,
            alpha: None,
            divisors_p: cp.divisors,
            divisors_q: cq.divisors,
            certs: None,
        });
    }
    if degp == 0 {
        return Ok(compare(p, q, Rat::zero()));
    }
    let alpha = (root_sum(&dp) - root_sum(&dq)) / Rat::from_integer((degp as i64).into());
    Ok(compare(&p.shift(&alpha), q, alpha))
}

/// Does `Cend_{N,P}` carry an anti-automorphism? Compares `star(P, α)`
/// with `P` at the unique root-sum candidate `α = 2s/d`.
pub fn anti_automorphism_exists(p: &PolyMat) -> Result<IsoDecision> {
    let dp = nondegenerate(p, "P")?;
    let deg = dp.degree().unwrap();
    let alpha = if deg == 0 {
        Rat::zero()
    } else {
        root_sum(&dp) * Rat::from_integer(2.into()) / Rat::from_integer((deg as i64).into())
    };
    Ok(compare(&p.star(&alpha), p, alpha))
}
