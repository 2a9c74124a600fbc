//! The Lie side: `oc_{N,P}` / `spc_{N,P}` generators, conformal bilinear
//! forms and invariance, bracket closure, the standard-module
//! irreducibility probe and the `φ: V ⊗ V → gc_N` spot check.
//!
//! Elements of `Cend_{N,P}` are passed by a-part `a` (the element is
//! `a(∂,x)P(x)`) unless a function says otherwise.

use num_traits::Zero;

use crate::cend::{
    apply_antiinv, bracket_at, lie_bracket, standard_action_at, AntiInvSpec, AxiomReport,
    CendElem, ModVec,
};
use crate::error::{CendError, Result};
use crate::poly::{rat, ratio, MPoly, Rat, Subst, UPoly, Var};
use crate::polymat::{congruence_verify, Echelon, PolyMat};

fn d() -> MPoly {
    MPoly::var(Var::D)
}
fn x() -> MPoly {
    MPoly::var(Var::X)
}
fn l() -> MPoly {
    MPoly::var(Var::L)
}
fn m() -> MPoly {
    MPoly::var(Var::M)
}

/// `(x^n E_ij - sign·(-∂-x)^n E_ji)·P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OcSpcGen {
    pub n: u32,
    pub i: usize,
    pub j: usize,
    /// The a-part, without the factor `P`.
    pub apart: CendElem,
    /// The full symbol `apart · P(x)`.
    pub symbol: CendElem,
}

/// Generators for an explicit sign, with no symmetry check on `P`. Zero
/// symbols (e.g. `n = 0`, `i = j`, sign `+1`) are dropped.
pub fn generators_with_sign(size: usize, p: &PolyMat, sign: i8, max_n: u32) -> Vec<OcSpcGen> {
    let flip = &(-&d()) - &x();
    let pm = CendElem::from_polymat(p);
    let mut out = vec![];
    for n in 0..=max_n {
        for i in 0..size {
            for j in 0..size {
                let mut a = CendElem::unit(size, i, j, x().pow(n));
                let t = CendElem::unit(size, j, i, flip.pow(n).scale(&rat(sign as i64)));
                a = &a - &t;
                if a.is_zero() {
                    continue;
                }
                let symbol = &a * &pm;
                out.push(OcSpcGen { n, i, j, apart: a, symbol });
            }
        }
    }
    out
}

/// Generators of `oc_{N,P}` (`ε = +1`, `P` hermitian) or `spc_{N,P}`
/// (`ε = -1`, `P` skew-hermitian): the anti-fixed points of
/// `σ_{P,I,ε,0}`, which take the sign `ε` in front of the transposed term.
pub fn make_oc_spc_generators(size: usize, p: &PolyMat, eps: i8, max_n: u32) -> Result<Vec<OcSpcGen>> {
    if eps != 1 && eps != -1 {
        return Err(CendError::Mismatch("ε must be +1 or -1".into()));
    }
    if !p.is_square() || p.size() != size {
        return Err(CendError::Mismatch("P must be N x N".into()));
    }
    if p.det().is_zero() {
        return Err(CendError::Degenerate("det P = 0".into()));
    }
    if p.star(&Rat::zero()) != p.scale(&rat(eps as i64)) {
        return Err(CendError::Mismatch(format!("P^t(-x) differs from {eps}·P")));
    }
    Ok(generators_with_sign(size, p, eps, max_n))
}

/// The anti-involution `σ_{P,I,ε,0}` defining `oc`/`spc`.
pub fn plain_spec(p: &PolyMat, eps: i8) -> Result<AntiInvSpec> {
    AntiInvSpec::new(p.clone(), PolyMat::identity(p.size()), eps, Rat::zero())
}

/// `σ(a) = -a` for the a-part `a`.
pub fn check_anti_fixed(a: &CendElem, spec: &AntiInvSpec) -> bool {
    apply_antiinv(a, spec) == -a
}

/// `gc_N = g_* ⊕ M_N` for the plain `σ` (`P = I`, `ε = 1`):
/// `a = ½(a - σa) + ½(a + σa)`.
pub fn split_gc(a: &CendElem) -> (CendElem, CendElem) {
    let spec = plain_spec(&PolyMat::identity(a.n()), 1).expect("identity spec is valid");
    let s = apply_antiinv(a, &spec);
    let half = ratio(1, 2);
    ((a - &s).scale(&half), (a + &s).scale(&half))
}

/// `⟨v, w⟩_λ = v^t(-λ) P(λ) w(λ)` with a symmetry claim `P^t(-x) = εP(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfBilinearForm {
    p: PolyMat,
    eps: i8,
}

impl ConfBilinearForm {
    pub fn new(p: PolyMat, eps: i8) -> Result<ConfBilinearForm> {
        if !p.is_square() {
            return Err(CendError::Mismatch("form matrix must be square".into()));
        }
        if p.star(&Rat::zero()) != p.scale(&rat(eps as i64)) {
            return Err(CendError::Mismatch(format!("P^t(-x) differs from {eps}·P")));
        }
        Ok(ConfBilinearForm { p, eps })
    }

    pub fn p(&self) -> &PolyMat {
        &self.p
    }

    pub fn eps(&self) -> i8 {
        self.eps
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.p.det().is_zero()
    }

    /// `⟨v, w⟩_L`; `v`, `w` may carry `λ`, `μ` besides `∂`.
    pub fn pair_at(&self, v: &ModVec, w: &ModVec, at: &MPoly) -> MPoly {
        let vs = v.substitute(&Subst::new().with(Var::D, -at));
        let ws = w.substitute(&Subst::new().with(Var::D, at.clone()));
        let pm = CendElem::from_polymat_at(&self.p, at);
        let pw = &pm * &ws;
        let mut out = MPoly::zero();
        for (a, b) in vs.entries().iter().zip(pw.entries()) {
            out += &(a * b);
        }
        out
    }
}

/// `⟨a_μ v, w⟩_λ + ⟨v, a_μ w⟩_{λ-μ} = 0` for the element `a·P` (form
/// matrix `P`, standard action at `α = 0`), over `v, w ∈ {∂^k e_i}` with
/// `k <= degree_cap`.
pub fn invariance_check(form: &ConfBilinearForm, a: &CendElem, degree_cap: u32) -> Result<AxiomReport> {
    if !form.is_nondegenerate() {
        return Err(CendError::Degenerate("form is degenerate".into()));
    }
    let n = form.p.size();
    if a.n() != n {
        return Err(CendError::Mismatch("element and form differ in size".into()));
    }
    let (lam, mu) = (l(), m());
    let act = |v: &ModVec| standard_action_at(a, Some(&form.p), &Rat::zero(), v, &mu);
    let basis: Vec<ModVec> = (0..n)
        .flat_map(|i| (0..=degree_cap).map(move |k| ModVec::basis(n, i, d().pow(k))))
        .collect();
    let mut rep = AxiomReport::default();
    for (iv, v) in basis.iter().enumerate() {
        let av = act(v);
        for (iw, w) in basis.iter().enumerate() {
            let defect = &form.pair_at(&av, w, &lam) + &form.pair_at(v, &act(w), &(&lam - &mu));
            rep.checked += 1;
            if !defect.is_zero() {
                rep.failures.push(format!("v#{iv} w#{iw}: {defect}"));
            }
        }
    }
    Ok(rep)
}

/// Brackets of full symbols `a_k P` for the first `pairs` pairs (in
/// lexicographic order, including `k = l`); every λ-coefficient must be
/// right-divisible by `P` with an a-part passing `member`.
pub fn bracket_closure_check(
    gens: &[CendElem],
    p: &PolyMat,
    member: &dyn Fn(&CendElem) -> bool,
    pairs: usize,
) -> AxiomReport {
    let pm = CendElem::from_polymat(p);
    let full: Vec<CendElem> = gens.iter().map(|g| g * &pm).collect();
    let mut rep = AxiomReport::default();
    let mut budget = pairs;
    'outer: for (i, a) in full.iter().enumerate() {
        for (j, b) in full.iter().enumerate().skip(i) {
            if budget == 0 {
                break 'outer;
            }
            budget -= 1;
            let s = bracket_at(a, b, &l()).collect_lambda();
            for ((k, _), c) in s.terms() {
                rep.checked += 1;
                match c.right_divide(p) {
                    Some(ap) if member(&ap) => {}
                    Some(_) => rep.failures.push(format!("[{i} λ {j}] λ^{k}: not a member")),
                    None => rep.failures.push(format!("[{i} λ {j}] λ^{k}: leaves Cend_(N,P)")),
                }
            }
        }
    }
    rep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
    Irreducible,
    ProperInvariantDetected,
    Undecided,
}

impl ProbeOutcome {
    pub fn name(self) -> &'static str {
        match self {
            ProbeOutcome::Irreducible => "irreducible",
            ProbeOutcome::ProperInvariantDetected => "proper_invariant_detected",
            ProbeOutcome::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityProbe {
    pub outcome: ProbeOutcome,
    pub rounds: usize,
    /// Echelon basis of the ℚ[∂]-span reached.
    pub span: Vec<Vec<UPoly>>,
}

/// Grows the ℚ[∂]-span of `start` under the λ-coefficients of the actions
/// of `a_k P` (standard module twisted by `α`), keeping vectors of
/// ∂-degree `<= degree_cap`.
///
/// `Irreducible`: the span reached every `e_i`. `ProperInvariantDetected`:
/// the span stopped growing short of that and every action coefficient,
/// capped or not, lies in it; by sesquilinearity that makes it invariant.
pub fn irreducibility_probe(
    gens: &[CendElem],
    p: &PolyMat,
    alpha: &Rat,
    start: &ModVec,
    degree_cap: u32,
    rounds: usize,
) -> Result<IrreducibilityProbe> {
    let n = p.size();
    if gens.iter().any(|g| g.n() != n) || start.len() != n {
        return Err(CendError::Mismatch("sizes differ".into()));
    }
    let start_row = start
        .to_upolys()
        .ok_or_else(|| CendError::Mismatch("start vector must use ∂ only".into()))?;
    if start.is_zero() {
        return Err(CendError::Degenerate("zero start vector".into()));
    }
    let fits = |r: &[UPoly]| r.iter().all(|e| e.degree().unwrap_or(0) <= degree_cap as usize);
    let full = |span: &Echelon| {
        (0..n).all(|i| {
            let mut e = vec![UPoly::zero(); n];
            e[i] = UPoly::one();
            span.contains(&e)
        })
    };
    let mut span = Echelon::new(n);
    span.insert(start_row);
    let lam = l();
    for round in 1..=rounds {
        let basis: Vec<Vec<UPoly>> = span.rows().map(<[UPoly]>::to_vec).collect();
        let mut grew = false;
        let mut escaped = false;
        for g in gens {
            for v in &basis {
                let w = standard_action_at(g, Some(p), alpha, &ModVec::from_upolys(v), &lam);
                for (_, c) in w.collect_lambda().terms() {
                    let row = c.to_upolys().expect("∂ only after collecting λ");
                    if fits(&row) {
                        grew |= span.insert(row);
                    } else if !span.contains(&row) {
                        escaped = true;
                    }
                }
            }
        }
        if full(&span) {
            return Ok(IrreducibilityProbe {
                outcome: ProbeOutcome::Irreducible,
                rounds: round,
                span: span.rows().map(<[UPoly]>::to_vec).collect(),
            });
        }
        if !grew {
            let outcome = if escaped {
                ProbeOutcome::Undecided
            } else {
                ProbeOutcome::ProperInvariantDetected
            };
            return Ok(IrreducibilityProbe {
                outcome,
                rounds: round,
                span: span.rows().map(<[UPoly]>::to_vec).collect(),
            });
        }
    }
    Ok(IrreducibilityProbe {
        outcome: ProbeOutcome::Undecided,
        rounds,
        span: span.rows().map(<[UPoly]>::to_vec).collect(),
    })
}

/// A tensor `Σ t_ij(∂₁, ∂₂) e_i ⊗ e_j`, stored as a matrix with `∂₁` in the
/// `d` slot and `∂₂` in the `x` slot.
pub fn tensor(u: &ModVec, w: &ModVec) -> CendElem {
    let n = u.len();
    let to_x = Subst::new().with(Var::D, x());
    let mut t = CendElem::zeros(n);
    for i in 0..n {
        for j in 0..n {
            t.set(i, j, u.get(i) * &w.get(j).substitute(&to_x));
        }
    }
    t
}

/// `φ(p(∂)e_i ⊗ q(∂)e_j) = p(-x) q(x+∂) E_ji`, extended linearly.
pub fn phi(t: &CendElem) -> CendElem {
    t.substitute(&Subst::new().with(Var::D, -&x()).with(Var::X, &x() + &d()))
        .transpose()
}

/// `a _λ (u ⊗ w) = (a _λ u) ⊗ w + u ⊗ (a _λ w)` in tensor coordinates. With
/// `dual_first`, the first factor carries the contragredient action.
pub fn tensor_action(a: &CendElem, t: &CendElem, dual_first: bool) -> CendElem {
    let lam = l();
    let shift1 = t.substitute(&Subst::new().with(Var::D, &lam + &d()));
    let first = if dual_first {
        let op = a.substitute(&Subst::new().with(Var::D, -&lam).with(Var::X, -&d()));
        -&(&op.transpose() * &shift1)
    } else {
        let op = a.substitute(&Subst::new().with(Var::D, -&lam).with(Var::X, &lam + &d()));
        &op * &shift1
    };
    let shift2 = t.substitute(&Subst::new().with(Var::X, &lam + &x()));
    let op2 = a.substitute(&Subst::new().with(Var::D, -&lam).with(Var::X, &lam + &x()));
    &first + &(&shift2 * &op2.transpose())
}

/// `φ(a _λ (u⊗w)) = [a _λ φ(u⊗w)]` on each sample `(u, w, a)`.
pub fn phi_equivariance_spotcheck(samples: &[(ModVec, ModVec, CendElem)], dual_first: bool) -> AxiomReport {
    let mut rep = AxiomReport::default();
    for (k, (u, w, a)) in samples.iter().enumerate() {
        let t = tensor(u, w);
        let lhs = phi(&tensor_action(a, &t, dual_first));
        let rhs = bracket_at(a, &phi(&t), &l());
        rep.checked += 1;
        if lhs != rhs {
            rep.failures.push(format!("phi #{k}"));
        }
    }
    rep
}

/// Conjugacy certificate for `oc`/`spc` families: `P = c · A*(x) Q(x) A(x)`
/// with `A` unimodular and `c ≠ 0`.
pub fn oc_conjugacy_verify(p: &PolyMat, q: &PolyMat, a: &PolyMat, c: &Rat) -> Result<bool> {
    if c.is_zero() {
        return Ok(false);
    }
    Ok(congruence_verify(q, a, &Rat::zero())?.scale(c) == *p)
}

/// `[L _λ L] = (∂ + 2λ)L` for `L = x + c∂`.
pub fn virasoro_holds(c: &Rat) -> bool {
    let el = CendElem::single(&x() + &d().scale(c));
    let want = el.times(&(&d() + &l().scale(&rat(2))));
    lie_bracket(&el, &el).map(|s| s.expand() == want).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_mpoly;

    fn e(s: &str) -> CendElem {
        CendElem::single(parse_mpoly(s).unwrap())
    }

    fn j2() -> PolyMat {
        PolyMat::from_int_coeffs(&[&[&[], &[1]], &[&[-1], &[]]])
    }

    #[test]
    fn generator_examples() {
        let one = PolyMat::identity(1);
        let g = make_oc_spc_generators(1, &one, 1, 1).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!((g[0].n, &g[0].symbol), (1, &e("2*x + d")));
        let spc = make_oc_spc_generators(2, &j2(), -1, 2).unwrap();
        let spec = plain_spec(&j2(), -1).unwrap();
        assert!(spc.iter().all(|g| check_anti_fixed(&g.apart, &spec)));
        assert!(make_oc_spc_generators(2, &j2(), 1, 1).is_err());
    }

    #[test]
    fn anti_fixed_examples() {
        let spec = plain_spec(&PolyMat::identity(1), 1).unwrap();
        assert!(check_anti_fixed(&e("2*x + d"), &spec));
        assert!(!check_anti_fixed(&e("-d"), &spec));
        assert!(check_anti_fixed(&e("0"), &spec));
        let (anti, fixed) = split_gc(&e("x^2 + 3*d"));
        assert_eq!(&anti + &fixed, e("x^2 + 3*d"));
        assert!(check_anti_fixed(&anti, &spec));
        assert_eq!(apply_antiinv(&fixed, &spec), fixed);
    }

    #[test]
    fn invariance_examples() {
        let form = ConfBilinearForm::new(PolyMat::identity(1), 1).unwrap();
        for g in make_oc_spc_generators(1, &PolyMat::identity(1), 1, 3).unwrap() {
            assert!(invariance_check(&form, &g.apart, 2).unwrap().passed());
        }
        assert!(!invariance_check(&form, &e("x"), 1).unwrap().passed());
        assert!(invariance_check(&form, &e("0"), 1).unwrap().passed());
        let px = PolyMat::diag(&[UPoly::from_ints(&[0, 1])]);
        let form = ConfBilinearForm::new(px.clone(), -1).unwrap();
        for g in make_oc_spc_generators(1, &px, -1, 3).unwrap() {
            assert!(invariance_check(&form, &g.apart, 2).unwrap().passed());
        }
        assert!(ConfBilinearForm::new(px, 1).is_err());
    }

    #[test]
    fn closure_examples() {
        let one = PolyMat::identity(1);
        let spec = plain_spec(&one, 1).unwrap();
        let member = |a: &CendElem| check_anti_fixed(a, &spec);
        let gens: Vec<CendElem> = make_oc_spc_generators(1, &one, 1, 2).unwrap().into_iter().map(|g| g.apart).collect();
        assert!(bracket_closure_check(&gens, &one, &member, 100).passed());
        let y = e("2*x + d");
        let want = y.times(&parse_mpoly("4*l + 2*d").unwrap());
        assert_eq!(lie_bracket(&y, &y).unwrap().expand(), want);
        // w-type x + (-∂-x) = -∂ is σ-fixed, so mixing it in is flagged
        let mixed = [y, e("2*x^2 + 2*d*x + d^2")];
        assert!(!bracket_closure_check(&mixed, &one, &member, 100).passed());
    }

    #[test]
    fn probe_examples() {
        let px = PolyMat::diag(&[UPoly::from_ints(&[0, 1])]);
        let one = ModVec::new(vec![MPoly::one()]);
        let r = irreducibility_probe(&[e("1"), e("x"), e("d")], &px, &Rat::zero(), &one, 4, 4).unwrap();
        assert_eq!(r.outcome, ProbeOutcome::Irreducible);
        let r = irreducibility_probe(&[e("2*x + d")], &px, &Rat::zero(), &one, 4, 4).unwrap();
        assert_eq!(r.outcome, ProbeOutcome::Irreducible);
        let e11 = CendElem::unit(2, 0, 0, MPoly::one());
        let start = ModVec::basis(2, 0, MPoly::one());
        let r = irreducibility_probe(&[e11], &PolyMat::identity(2), &Rat::zero(), &start, 4, 4).unwrap();
        assert_eq!(r.outcome, ProbeOutcome::ProperInvariantDetected);
        assert!(irreducibility_probe(&[e("1")], &px, &Rat::zero(), &ModVec::zeros(1), 4, 4).is_err());
    }

    #[test]
    fn phi_examples() {
        let a = CendElem::from_entries(2, vec![MPoly::zero(), MPoly::one(), MPoly::int(-1), MPoly::zero()]).unwrap();
        let (u, w) = (ModVec::basis(2, 0, MPoly::one()), ModVec::basis(2, 1, MPoly::one()));
        assert!(phi_equivariance_spotcheck(&[(u.clone(), w.clone(), a)], false).passed());
        let (p, q) = (ModVec::new(vec![d()]), ModVec::new(vec![MPoly::one()]));
        assert!(phi_equivariance_spotcheck(&[(p.clone(), q.clone(), e("2*x + d"))], false).passed());
        // x is not in oc_1: only the dual first factor intertwines
        assert!(!phi_equivariance_spotcheck(&[(p.clone(), q.clone(), e("x"))], false).passed());
        assert!(phi_equivariance_spotcheck(&[(p, q, e("x"))], true).passed());
        assert!(phi(&tensor(&ModVec::zeros(1), &ModVec::new(vec![d()]))).is_zero());
    }

    #[test]
    fn virasoro_and_conjugacy() {
        assert!(virasoro_holds(&rat(0)));
        assert!(virasoro_holds(&ratio(1, 2)));
        let spec = plain_spec(&PolyMat::identity(1), 1).unwrap();
        assert!(check_anti_fixed(&e("x + 1/2*d"), &spec));
        let (i2, jj) = (PolyMat::identity(2), j2());
        assert!(oc_conjugacy_verify(&i2, &i2, &i2, &rat(1)).unwrap());
        let a = PolyMat::diag(&[UPoly::constant(rat(2)), UPoly::constant(ratio(1, 2))]);
        assert!(oc_conjugacy_verify(&jj, &jj, &a, &rat(1)).unwrap());
        assert!(!oc_conjugacy_verify(&i2, &jj, &i2, &rat(1)).unwrap());
    }
}
