use crate::cend::AntiInvSpec;
use crate::error::Result;
use crate::poly::{rat, Rat};
use crate::polymat::{unimodular_candidates, PolyMat};

use super::anti_automorphism_exists;

/// Bounded search for `(Y, ε, α)` satisfying the anti-involution condition.
///
/// `α` comes from [`anti_automorphism_exists`]; `Y` runs over products of
/// at most two elementary unimodular factors with entry degrees `<= cap`,
/// `ε = +1` before `ε = -1`. `Ok(None)` is not a disproof.
pub fn anti_involution_search(p: &PolyMat, degree_cap: usize) -> Result<Option<AntiInvSpec>> {
    let decision = anti_automorphism_exists(p)?;
    if !decision.isomorphic {
        return Ok(None);
    }
    let alpha = decision.alpha.unwrap_or_default();
    for eps in [1i8, -1] {
        for y in unimodular_candidates(p.size(), degree_cap) {
            if AntiInvSpec::condition_holds(p, &y, eps, &alpha) {
                // re-validated by the constructor
                return AntiInvSpec::new(p.clone(), y, eps, alpha).map(Some);
            }
        }
    }
    Ok(None)
}

/// Checks a conjugacy witness between two anti-involutions of one
/// `Cend_{N,P}`: `ε₁ = ε₂`, `B` unimodular and
/// `star(B, α)·P(x)Y₁(x)·B(x) = P(x+β)Y₂(x+β)` with `β = (γ-α)/2`.
pub fn antiinv_conjugacy_verify(s1: &AntiInvSpec, s2: &AntiInvSpec, b: &PolyMat) -> bool {
    if s1.eps() != s2.eps() || s1.p() != s2.p() {
        return false;
    }
    if !b.is_unimodular() || b.size() != s1.p().size() {
        return false;
    }
    let beta: Rat = (s2.alpha() - s1.alpha()) / rat(2);
    let lhs = &(&b.star(s1.alpha()) * &(s1.p() * s1.y())) * b;
    let rhs = &s2.p().shift(&beta) * &s2.y().shift(&beta);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cend::apply_antiinv;
    use crate::cend::CendElem;
    use crate::poly::{MPoly, Monomial, UPoly};

    fn check_involutive(spec: &AntiInvSpec) {
        let n = spec.p().size();
        for i in 0..=3u32 {
            for j in 0..=(3 - i) {
                for (r, c) in [(0, 0), (0, n - 1), (n - 1, 0)] {
                    let a = CendElem::unit(n, r, c, MPoly::monomial(rat(1), Monomial([i, j, 0, 0])));
                    assert_eq!(apply_antiinv(&apply_antiinv(&a, spec), spec), a);
                }
            }
        }
    }

    #[test]
    fn search_examples() {
        let bloch = anti_involution_search(&PolyMat::diag(&[UPoly::from_ints(&[0, 1])]), 1)
            .unwrap()
            .unwrap();
        assert_eq!((bloch.y(), bloch.eps(), bloch.alpha()), (&PolyMat::identity(1), -1, &rat(0)));
        check_involutive(&bloch);
        let id = anti_involution_search(&PolyMat::identity(2), 1).unwrap().unwrap();
        assert_eq!((id.y(), id.eps()), (&PolyMat::identity(2), 1));
        let p = PolyMat::diag(&[UPoly::from_ints(&[0, 1]), UPoly::from_ints(&[-1, 1])]);
        let spec = anti_involution_search(&p, 1).unwrap().expect("found");
        assert!(AntiInvSpec::condition_holds(&p, spec.y(), spec.eps(), spec.alpha()));
        assert_eq!(spec.alpha(), &rat(1));
        check_involutive(&spec);
    }

    #[test]
    fn conjugacy_examples() {
        let id = PolyMat::identity(2);
        let s = AntiInvSpec::new(id.clone(), id.clone(), 1, rat(0)).unwrap();
        assert!(antiinv_conjugacy_verify(&s, &s, &id));
        let j = PolyMat::from_int_coeffs(&[&[&[], &[1]], &[&[-1], &[]]]);
        let t = AntiInvSpec::new(id.clone(), j, -1, rat(0)).unwrap();
        assert!(!antiinv_conjugacy_verify(&s, &t, &id));
        let four = AntiInvSpec::new(id.clone(), id.scale(&rat(4)), 1, rat(0)).unwrap();
        assert!(antiinv_conjugacy_verify(&s, &four, &id.scale(&rat(2))));
        assert!(!antiinv_conjugacy_verify(&s, &four, &id));
    }
}
