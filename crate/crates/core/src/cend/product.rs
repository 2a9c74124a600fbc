//! λ-products, brackets and actions. Every formula is a substitution into
//! symbols; the `*_at` variants take the λ-slot as an arbitrary polynomial
//! `L` so that nested and shifted products (`λ+μ`, `-λ-∂`) reuse them.

use crate::error::{CendError, Result};
use crate::poly::{MPoly, Rat, Subst, Var};
use crate::polymat::PolyMat;

use super::{d, l, x, CendElem, LambdaSeries, ModSeries, ModVec};

fn same_size(a: &CendElem, b: &CendElem) -> Result<()> {
    if a.n() != b.n() {
        return Err(CendError::Mismatch(format!(
            "symbol sizes differ: {} vs {}",
            a.n(),
            b.n()
        )));
    }
    Ok(())
}

/// `A(-L, x+L+∂)`.
fn left_factor(a: &CendElem, at: &MPoly) -> CendElem {
    let s = Subst::new()
        .with(Var::D, -at)
        .with(Var::X, &(&x() + at) + &d());
    a.substitute(&s)
}

/// `B(L+∂, x)`.
fn right_factor(b: &CendElem, at: &MPoly) -> CendElem {
    b.substitute(&Subst::new().with(Var::D, at + &d()))
}

/// `A(-L, x+L+∂) · B(L+∂, x)`.
pub fn product_at(a: &CendElem, b: &CendElem, at: &MPoly) -> CendElem {
    &left_factor(a, at) * &right_factor(b, at)
}

/// Product of a-parts in `Cend_{N,P}`:
/// `a(-L, x+L+∂) · P(x+L+∂) · b(L+∂, x)`.
pub fn apart_product_at(a: &CendElem, b: &CendElem, p: &PolyMat, at: &MPoly) -> CendElem {
    let pm = CendElem::from_polymat_at(p, &(&(&x() + at) + &d()));
    &(&left_factor(a, at) * &pm) * &right_factor(b, at)
}

/// `a _λ b`.
pub fn lambda_product(a: &CendElem, b: &CendElem) -> Result<LambdaSeries> {
    same_size(a, b)?;
    Ok(product_at(a, b, &l()).collect_lambda())
}

/// `[c_0, c_1, ...]` with `a _λ b = Σ λ^n c_n` (plain powers, not divided).
pub fn nth_products(a: &CendElem, b: &CendElem) -> Result<Vec<CendElem>> {
    let s = lambda_product(a, b)?;
    Ok(match s.lambda_degree() {
        None => vec![],
        Some(top) => (0..=top).map(|k| s.coeff(k, 0)).collect(),
    })
}

/// `A(-L, x+L+∂)B(L+∂, x) - B(L+∂, x-L)A(-L, x)`.
pub fn bracket_at(a: &CendElem, b: &CendElem, at: &MPoly) -> CendElem {
    let b_shift = b.substitute(
        &Subst::new()
            .with(Var::D, at + &d())
            .with(Var::X, &x() - at),
    );
    let a_plain = a.substitute(&Subst::new().with(Var::D, -at));
    &product_at(a, b, at) - &(&b_shift * &a_plain)
}

/// `[a _λ b]` in `gc_N`.
pub fn lie_bracket(a: &CendElem, b: &CendElem) -> Result<LambdaSeries> {
    same_size(a, b)?;
    Ok(bracket_at(a, b, &l()).collect_lambda())
}

/// `A(-L, L+∂+α) · P(L+∂+α) · v(L+∂)` for the element `a(∂,x)P(x)`;
/// `p = None` means `P = I`.
pub fn standard_action_at(
    a: &CendElem,
    p: Option<&PolyMat>,
    alpha: &Rat,
    v: &ModVec,
    at: &MPoly,
) -> ModVec {
    let shifted = &(at + &d()) + &MPoly::constant(alpha.clone());
    let mut op = a.substitute(
        &Subst::new()
            .with(Var::D, -at)
            .with(Var::X, shifted.clone()),
    );
    if let Some(p) = p {
        op = &op * &CendElem::from_polymat_at(p, &shifted);
    }
    &op * &v.substitute(&Subst::new().with(Var::D, at + &d()))
}

/// The λ-action on `ℚ[∂]^N`, collected by powers of λ.
pub fn module_action(a: &CendElem, p: Option<&PolyMat>, alpha: &Rat, v: &ModVec) -> Result<ModSeries> {
    if v.len() != a.n() || p.is_some_and(|p| p.size() != a.n()) {
        return Err(CendError::Mismatch("action sizes differ".into()));
    }
    Ok(standard_action_at(a, p, alpha, v, &l()).collect_lambda())
}

/// Contragredient action `-A^t(-L, -∂) v(L+∂)`.
pub fn dual_action_at(a: &CendElem, v: &ModVec, at: &MPoly) -> ModVec {
    let op = a
        .transpose()
        .substitute(&Subst::new().with(Var::D, -at).with(Var::X, -&d()));
    let w = &op * &v.substitute(&Subst::new().with(Var::D, at + &d()));
    w.map(|e| -e)
}

pub fn dual_action(a: &CendElem, v: &ModVec) -> Result<ModSeries> {
    if v.len() != a.n() {
        return Err(CendError::Mismatch("action sizes differ".into()));
    }
    Ok(dual_action_at(a, v, &l()).collect_lambda())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_mpoly, rat};

    fn p(s: &str) -> MPoly {
        parse_mpoly(s).unwrap()
    }

    fn e1(s: &str) -> CendElem {
        CendElem::single(p(s))
    }

    #[test]
    fn product_examples() {
        assert_eq!(lambda_product(&e1("1"), &e1("x")).unwrap().expand(), e1("x"));
        assert_eq!(lambda_product(&e1("x"), &e1("1")).unwrap().expand(), e1("x + l + d"));
        // p = x^2: p(λ+∂+x)·p(x)
        let got = lambda_product(&e1("x^2"), &e1("x^2")).unwrap().expand();
        assert_eq!(got, e1("x^2").times(&p("l + d + x").pow(2)));
    }

    #[test]
    fn nth_product_examples() {
        assert_eq!(nth_products(&e1("1"), &e1("x")).unwrap(), vec![e1("x")]);
        assert_eq!(nth_products(&e1("x"), &e1("1")).unwrap(), vec![e1("x + d"), e1("1")]);
        assert!(nth_products(&e1("0"), &e1("x")).unwrap().is_empty());
        assert!(lambda_product(&CendElem::identity(2), &e1("x")).is_err());
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(lie_bracket(&e1("x"), &e1("x")).unwrap().expand(), e1("d*x + 2*l*x"));
        let y = e1("2*x + d");
        let want = e1("2*x + d").times(&p("4*l + 2*d"));
        assert_eq!(lie_bracket(&y, &y).unwrap().expand(), want);
        // x-free symbols: plain commutator
        let a = CendElem::unit(2, 0, 1, MPoly::one());
        let b = CendElem::unit(2, 1, 0, MPoly::one());
        assert_eq!(lie_bracket(&a, &b).unwrap().expand(), &(&a * &b) - &(&b * &a));
    }

    #[test]
    fn action_examples() {
        let one = ModVec::new(vec![MPoly::one()]);
        let id = PolyMat::identity(1);
        let xp = PolyMat::diag(&[crate::poly::UPoly::from_ints(&[0, 1])]);
        let s = module_action(&e1("1"), Some(&id), &rat(0), &one).unwrap();
        assert_eq!(s.coeff(0, 0), one);
        let got = standard_action_at(&e1("1"), Some(&xp), &rat(0), &one, &l());
        assert_eq!(got, ModVec::new(vec![p("l + d")]));
        let v = ModVec::new(vec![p("d")]);
        let got = standard_action_at(&e1("x"), None, &rat(0), &v, &l());
        assert_eq!(got, ModVec::new(vec![p("l + d").pow(2)]));
    }

    #[test]
    fn dual_action_examples() {
        let v = ModVec::new(vec![p("d^2 + 1"), p("d")]);
        let got = dual_action_at(&CendElem::identity(2), &v, &l());
        let want = v.substitute(&Subst::new().with(Var::D, p("l + d"))).map(|e| -e);
        assert_eq!(got, want);
        let a = CendElem::unit(2, 0, 1, p("x"));
        let got = dual_action_at(&a, &ModVec::basis(2, 0, MPoly::one()), &l());
        assert_eq!(got, ModVec::basis(2, 1, p("d")));
    }
}
