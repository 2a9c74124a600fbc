//! Extensions of the standard module of `Cend_{N,P}`.
//!
//! *Factorization*: for `P(x+α) = R(x)S(x)` the action
//! `a P _λ v = S(∂) a(-λ, λ+∂+α) R(λ+∂) v(λ+∂)` on `ℚ[∂]^N`, which contains
//! `S(∂)ℚ[∂]^N` as a copy of the standard module.
//!
//! *Jordan*: the standard action evaluated at `α ↦ J = [[α,1],[0,α]]` on
//! `ℚ[∂]^N ⊗ ℚ²`. Every module identity is polynomial in `α` with
//! coefficients commuting with `J`, so it survives the substitution; by
//! Taylor, `f(J) = f(α) ⊗ I + f'(α) ⊗ E_12`.

use crate::cend::{
    apart_product_at, standard_action_at, verify_module_axioms, AlgebraKind, AxiomReport,
    CendElem, ModVec,
};
use crate::error::{CendError, Result};
use crate::poly::{MPoly, Rat, Subst, Var};
use crate::polymat::PolyMat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionKind {
    Factorization { r: PolyMat, s: PolyMat, alpha: Rat },
    Jordan { alpha: Rat },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionModule {
    pub p: PolyMat,
    pub kind: ExtensionKind,
}

pub fn build_extension(p: &PolyMat, kind: ExtensionKind) -> Result<ExtensionModule> {
    if !p.is_square() {
        return Err(CendError::Mismatch("P must be square".into()));
    }
    if let ExtensionKind::Factorization { r, s, alpha } = &kind {
        if r.rows() != p.size() || !r.is_square() || !s.is_square() || s.size() != p.size() {
            return Err(CendError::Mismatch("R, S must match the size of P".into()));
        }
        if r * s != p.shift(alpha) {
            return Err(CendError::Mismatch("R·S differs from P(x+α)".into()));
        }
    }
    Ok(ExtensionModule { p: p.clone(), kind })
}

fn polymat_at(m: &PolyMat, at: &MPoly) -> CendElem {
    CendElem::from_polymat_at(m, at)
}

impl ExtensionModule {
    pub fn n(&self) -> usize {
        self.p.size()
    }

    /// Rank of the underlying free `ℚ[∂]`-module.
    pub fn rank(&self) -> usize {
        match self.kind {
            ExtensionKind::Factorization { .. } => self.n(),
            ExtensionKind::Jordan { .. } => 2 * self.n(),
        }
    }

    pub fn alpha(&self) -> &Rat {
        match &self.kind {
            ExtensionKind::Factorization { alpha, .. } | ExtensionKind::Jordan { alpha } => alpha,
        }
    }

    /// The product of a-parts in `Cend_{N,P}` at slot `at`.
    pub fn product_at(&self, a: &CendElem, b: &CendElem, at: &MPoly) -> CendElem {
        apart_product_at(a, b, &self.p, at)
    }

    /// Action of `a(∂,x)P(x)` on `v` at slot `at`.
    pub fn action_at(&self, a: &CendElem, v: &ModVec, at: &MPoly) -> ModVec {
        let d = MPoly::var(Var::D);
        let y = at + &d;
        let shifted = &y + &MPoly::constant(self.alpha().clone());
        let v_at = v.substitute(&Subst::new().with(Var::D, y.clone()));
        match &self.kind {
            ExtensionKind::Factorization { r, s, .. } => {
                let mid = a.substitute(&Subst::new().with(Var::D, -at).with(Var::X, shifted));
                let op = &(&polymat_at(s, &d) * &mid) * &polymat_at(r, &y);
                &op * &v_at
            }
            ExtensionKind::Jordan { .. } => {
                let n = self.n();
                // T(x) = a(-L, x) P(x), evaluated with its x-derivative at L+∂+α
                let t = &a.substitute(&Subst::new().with(Var::D, -at)) * &CendElem::from_polymat(&self.p);
                let dt = t.map(|e| e.derivative(Var::X));
                let at_x = Subst::new().with(Var::X, shifted);
                let (t, dt) = (t.substitute(&at_x), dt.substitute(&at_x));
                let (v1, v2) = split(&v_at, n);
                let top = &(&t * &v1) + &(&dt * &v2);
                let bottom = &t * &v2;
                ModVec::new(top.entries().iter().chain(bottom.entries()).cloned().collect())
            }
        }
    }

    /// Embedding of the standard module: `v ↦ S(∂)v`, or `v ↦ (v, 0)`.
    pub fn embed(&self, v: &ModVec) -> ModVec {
        match &self.kind {
            ExtensionKind::Factorization { s, .. } => &polymat_at(s, &MPoly::var(Var::D)) * v,
            ExtensionKind::Jordan { .. } => {
                let mut e = v.entries().to_vec();
                e.extend(std::iter::repeat_n(MPoly::zero(), self.n()));
                ModVec::new(e)
            }
        }
    }

    /// (M1), (M2) on the given samples.
    pub fn verify_axioms(&self, samples: &[(CendElem, CendElem, ModVec)]) -> AxiomReport {
        let product = |a: &CendElem, b: &CendElem, at: &MPoly| self.product_at(a, b, at);
        let action = |a: &CendElem, at: &MPoly, v: &ModVec| self.action_at(a, v, at);
        verify_module_axioms(AlgebraKind::Associative, &product, &action, samples)
    }

    /// The image of [`Self::embed`] is invariant and the action on it is the
    /// transported standard action: `a _λ embed(v) = embed(a _λ v)`.
    pub fn verify_embedding(&self, samples: &[(CendElem, ModVec)]) -> AxiomReport {
        let l = MPoly::var(Var::L);
        let mut rep = AxiomReport::default();
        for (k, (a, v)) in samples.iter().enumerate() {
            let lhs = self.action_at(a, &self.embed(v), &l);
            let rhs = self.embed(&standard_action_at(a, Some(&self.p), self.alpha(), v, &l));
            rep.checked += 1;
            if lhs != rhs {
                rep.failures.push(format!("embedding #{k}"));
            }
        }
        rep
    }
}

fn split(v: &ModVec, n: usize) -> (ModVec, ModVec) {
    let e = v.entries();
    (ModVec::new(e[..n].to_vec()), ModVec::new(e[n..].to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cend::{random_elem, random_modvec};
    use crate::poly::{parse_mpoly, rat, ratio, UPoly};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn samples(n: usize, rank: usize, seed: u64) -> Vec<(CendElem, CendElem, ModVec)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..6)
            .map(|_| (random_elem(&mut rng, n, 2), random_elem(&mut rng, n, 2), random_modvec(&mut rng, rank, 2)))
            .collect()
    }

    #[test]
    fn factorization_x_squared() {
        let x = PolyMat::diag(&[UPoly::from_ints(&[0, 1])]);
        let x2 = PolyMat::diag(&[UPoly::from_ints(&[0, 0, 1])]);
        let kind = ExtensionKind::Factorization { r: x.clone(), s: x.clone(), alpha: rat(0) };
        let m = build_extension(&x2, kind).unwrap();
        let one = ModVec::new(vec![MPoly::one()]);
        let got = m.action_at(&CendElem::single(MPoly::one()), &one, &MPoly::var(Var::L));
        assert_eq!(got, ModVec::new(vec![parse_mpoly("d*l + d^2").unwrap()]));
        let s = samples(1, 1, 3);
        assert!(m.verify_axioms(&s).passed());
        let pairs: Vec<_> = s.iter().map(|(a, _, v)| (a.clone(), v.clone())).collect();
        assert!(m.verify_embedding(&pairs).passed());
        let bad = ExtensionKind::Factorization { r: x.clone(), s: x2.clone(), alpha: rat(0) };
        assert!(build_extension(&x2, bad).is_err());
    }

    #[test]
    fn trivial_factorization_is_standard() {
        let p = PolyMat::diag(&[UPoly::from_ints(&[1, 1])]);
        let kind = ExtensionKind::Factorization { r: p.clone(), s: PolyMat::identity(1), alpha: rat(0) };
        let m = build_extension(&p, kind).unwrap();
        let (a, v) = (CendElem::single(parse_mpoly("d*x + 2").unwrap()), ModVec::new(vec![parse_mpoly("d^2").unwrap()]));
        let l = MPoly::var(Var::L);
        assert_eq!(m.action_at(&a, &v, &l), standard_action_at(&a, Some(&p), &rat(0), &v, &l));
    }

    #[test]
    fn jordan_module() {
        for (n, alpha) in [(1, rat(0)), (1, ratio(-1, 2)), (2, rat(1))] {
            let m = build_extension(&PolyMat::identity(n), ExtensionKind::Jordan { alpha }).unwrap();
            let s = samples(n, 2 * n, 9);
            let rep = m.verify_axioms(&s);
            assert!(rep.passed(), "{:?}", rep.failures);
            let pairs: Vec<_> = samples(n, n, 4).into_iter().map(|(a, _, v)| (a, v)).collect();
            assert!(m.verify_embedding(&pairs).passed());
        }
        // the extension does not split: x acts on e_2 with an e_1 component
        let m = build_extension(&PolyMat::identity(1), ExtensionKind::Jordan { alpha: rat(0) }).unwrap();
        let e2 = ModVec::new(vec![MPoly::zero(), MPoly::one()]);
        let got = m.action_at(&CendElem::single(MPoly::var(Var::X)), &e2, &MPoly::var(Var::L));
        assert_eq!(got, ModVec::new(vec![MPoly::one(), parse_mpoly("l + d").unwrap()]));
    }
}
