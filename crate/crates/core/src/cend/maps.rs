//! Automorphisms, homomorphisms and anti-involutions acting on symbols.

use crate::error::{CendError, Result};
use crate::poly::{MPoly, Rat, Subst, Var};
use crate::polymat::PolyMat;

use super::{d, x, CendElem};

/// `C(x)` unimodular and a shift `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutoSpec {
    c: PolyMat,
    c_inv: PolyMat,
    alpha: Rat,
}

impl AutoSpec {
    pub fn new(c: PolyMat, alpha: Rat) -> Result<AutoSpec> {
        let c_inv = c
            .inverse()
            .ok_or_else(|| CendError::Degenerate("automorphism matrix is not unimodular".into()))?;
        Ok(AutoSpec { c, c_inv, alpha })
    }

    pub fn c(&self) -> &PolyMat {
        &self.c
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }
}

/// `C(∂+x) · A(∂, x+α) · C(x)^{-1}`; `λ`, `μ` in the entries are passive.
pub fn conjugate(a: &CendElem, spec: &AutoSpec) -> Result<CendElem> {
    if a.n() != spec.c.size() {
        return Err(CendError::Mismatch("automorphism size differs from symbol".into()));
    }
    let left = CendElem::from_polymat_at(&spec.c, &(&d() + &x()));
    let mid = a.substitute(&Subst::new().with(Var::X, &x() + &MPoly::constant(spec.alpha.clone())));
    Ok(&(&left * &mid) * &CendElem::from_polymat(&spec.c_inv))
}

/// Factorization `P(x+α) = R(x)S(x)` defining a homomorphism out of
/// `Cend_{N,P}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpec {
    pub p: PolyMat,
    pub r: PolyMat,
    pub s: PolyMat,
    pub alpha: Rat,
}

impl HomSpec {
    pub fn new(p: PolyMat, r: PolyMat, s: PolyMat, alpha: Rat) -> Result<HomSpec> {
        if &r * &s != p.shift(&alpha) {
            return Err(CendError::Mismatch("R·S differs from P(x+α)".into()));
        }
        Ok(HomSpec { p, r, s, alpha })
    }
}

/// `S(∂+x) · a(∂, x+α) · R(x)` for the element `a(∂,x)P(x)`.
pub fn homomorphism_image(a: &CendElem, spec: &HomSpec) -> CendElem {
    let left = CendElem::from_polymat_at(&spec.s, &(&d() + &x()));
    let mid = a.substitute(&Subst::new().with(Var::X, &x() + &MPoly::constant(spec.alpha.clone())));
    &(&left * &mid) * &CendElem::from_polymat(&spec.r)
}

/// Matrix units `E_ij`, generating `Cur_N = ℚ[∂]·Mat_N` as a ℚ[∂]-module.
pub fn cur_n(n: usize) -> Vec<CendElem> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(CendElem::unit(n, i, j, MPoly::one()));
        }
    }
    out
}

/// Data `(P, Y, ε, α)` of an anti-involution of `Cend_{N,P}`, validated
/// against `Y^t(-x+α)P^t(-x+α) = ε P(x)Y(x)` on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiInvSpec {
    p: PolyMat,
    y: PolyMat,
    eps: i8,
    alpha: Rat,
    y_star_inv: PolyMat,
}

impl AntiInvSpec {
    pub fn new(p: PolyMat, y: PolyMat, eps: i8, alpha: Rat) -> Result<AntiInvSpec> {
        if eps != 1 && eps != -1 {
            return Err(CendError::Mismatch("ε must be +1 or -1".into()));
        }
        if !p.is_square() || !y.is_square() || p.size() != y.size() {
            return Err(CendError::Mismatch("P and Y must be square of one size".into()));
        }
        let y_star = y.star(&alpha);
        let y_star_inv = y_star
            .inverse()
            .ok_or_else(|| CendError::Mismatch("Y is not unimodular".into()))?;
        if !AntiInvSpec::condition_holds(&p, &y, eps, &alpha) {
            return Err(CendError::Mismatch(
                "Y^t(-x+α)P^t(-x+α) differs from ε P(x)Y(x)".into(),
            ));
        }
        Ok(AntiInvSpec {
            p,
            y,
            eps,
            alpha,
            y_star_inv,
        })
    }

    /// The defining matrix identity on its own.
    pub fn condition_holds(p: &PolyMat, y: &PolyMat, eps: i8, alpha: &Rat) -> bool {
        let lhs = &y.star(alpha) * &p.star(alpha);
        let rhs = (p * y).scale(&crate::poly::rat(eps as i64));
        lhs == rhs
    }

    pub fn p(&self) -> &PolyMat {
        &self.p
    }

    pub fn y(&self) -> &PolyMat {
        &self.y
    }

    pub fn eps(&self) -> i8 {
        self.eps
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }
}

/// a-part of `σ(a P)`:
/// `ε Y(∂+x) a^t(∂, -∂-x+α) Y^t(-x+α)^{-1}`. `λ`, `μ` are passive.
pub fn apply_antiinv(a: &CendElem, spec: &AntiInvSpec) -> CendElem {
    let left = CendElem::from_polymat_at(&spec.y, &(&d() + &x()));
    let flip = &(&(-&d()) - &x()) + &MPoly::constant(spec.alpha.clone());
    let mid = a.transpose().substitute(&Subst::new().with(Var::X, flip));
    let out = &(&left * &mid) * &CendElem::from_polymat(&spec.y_star_inv);
    if spec.eps < 0 {
        -&out
    } else {
        out
    }
}
