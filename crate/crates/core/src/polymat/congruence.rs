//! The `*` involution and α-congruence `B = C* · A · C`.

use num_traits::{Signed, Zero};

use crate::error::{CendError, Result};
use crate::poly::{rat, ratio, Rat, UPoly};

use super::PolyMat;

/// A claim `base(-x + α)^t = ε · base`. Checked, never assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarForm {
    pub base: PolyMat,
    pub alpha: Rat,
    pub eps: i8,
}

impl StarForm {
    pub fn new(base: PolyMat, alpha: Rat, eps: i8) -> StarForm {
        StarForm { base, alpha, eps }
    }

    pub fn holds(&self) -> bool {
        self.base.is_square() && self.base.star(&self.alpha) == self.base.scale(&rat(self.eps as i64))
    }
}

/// `star(C, α) · A · C`. `C` must be unimodular.
pub fn congruence_verify(a: &PolyMat, c: &PolyMat, alpha: &Rat) -> Result<PolyMat> {
    if !a.is_square() || !c.is_square() || a.size() != c.size() {
        return Err(CendError::Mismatch("congruence needs square matrices of one size".into()));
    }
    if !c.is_unimodular() {
        return Err(CendError::Degenerate("congruence transform is not unimodular".into()));
    }
    Ok(&(&c.star(alpha) * a) * c)
}

/// Polynomials of degree `<= cap` over a small integer grid, zero excluded,
/// in a fixed order (low degree first).
fn grid_polys(cap: usize) -> Vec<UPoly> {
    let values: &[i64] = if cap <= 1 { &[1, -1, 2, -2] } else { &[1, -1] };
    let mut out = vec![];
    for deg in 0..=cap {
        // every coefficient below the top ranges over values ∪ {0}
        let lower = values.len() + 1;
        let total = lower.pow(deg as u32);
        for top in values {
            for code in 0..total {
                let mut c = Vec::with_capacity(deg + 1);
                let mut k = code;
                for _ in 0..deg {
                    let i = k % lower;
                    k /= lower;
                    c.push(if i == 0 { Rat::zero() } else { rat(values[i - 1]) });
                }
                c.push(rat(*top));
                out.push(UPoly::new(c));
            }
        }
    }
    out
}

/// Elementary unimodular factors: transvections `I + f·E_ij`, transpositions
/// and single-entry constant scalings.
pub(crate) fn elementary_factors(n: usize, cap: usize) -> Vec<PolyMat> {
    let mut out = vec![];
    for c in [rat(-1), rat(2), rat(-2), ratio(1, 2), ratio(-1, 2)] {
        for i in 0..n {
            let mut m = PolyMat::identity(n);
            m.set(i, i, UPoly::constant(c.clone()));
            out.push(m);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut m = PolyMat::identity(n);
            m.swap_rows(i, j);
            out.push(m);
        }
    }
    let polys = grid_polys(cap);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for f in &polys {
                let mut m = PolyMat::identity(n);
                m.set(i, j, f.clone());
                out.push(m);
            }
        }
    }
    out
}

/// Identity, then single factors, then products of two factors, keeping
/// only those with entry degrees `<= cap`. Duplicates are skipped.
pub(crate) fn unimodular_candidates(n: usize, cap: usize) -> impl Iterator<Item = PolyMat> {
    let factors = elementary_factors(n, cap);
    let singles = factors.clone();
    let pairs = (0..factors.len()).flat_map(move |i| {
        let f = factors.clone();
        (0..f.len()).map(move |j| &f[i] * &f[j])
    });
    let mut seen = std::collections::HashSet::new();
    std::iter::once(PolyMat::identity(n))
        .chain(singles)
        .chain(pairs)
        .filter(move |m| m.max_degree().unwrap_or(0) <= cap && seen.insert(m.clone()))
}

/// Searches for a unimodular `C` with `star(C, α)·A·C = target`.
///
/// `None` only means nothing was found within the grid; it is not a proof
/// of non-congruence.
pub fn congruence_search_bounded(
    a: &PolyMat,
    target: &PolyMat,
    alpha: &Rat,
    degree_cap: usize,
) -> Option<PolyMat> {
    if !a.is_square() || !target.is_square() || a.size() != target.size() {
        return None;
    }
    // det(target) = c²·det(A) for a constant c is necessary
    let (da, dt) = (a.det(), target.det());
    if da.is_zero() != dt.is_zero() {
        return None;
    }
    if !da.is_zero() {
        match dt.div_exact(&da) {
            Some(q) if q.is_constant() && q.coeff(0).is_positive() => {}
            _ => return None,
        }
    }
    unimodular_candidates(a.size(), degree_cap).find(|c| {
        let got = &(&c.star(alpha) * a) * c;
        &got == target
    })
}

/// Hermitian (`ε = 1`) or skew-hermitian (`ε = -1`) at shift `α`.
pub fn is_star_symmetric(m: &PolyMat, alpha: &Rat, eps: i8) -> bool {
    StarForm::new(m.clone(), alpha.clone(), eps).holds()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j_with(f: &[i64]) -> PolyMat {
        PolyMat::from_int_coeffs(&[&[&[], &[1]], &[&[-1], f]])
    }

    #[test]
    fn star_examples() {
        let m = PolyMat::diag(&[UPoly::from_ints(&[0, 1]), UPoly::one()]);
        assert_eq!(m.star(&rat(0)), PolyMat::diag(&[UPoly::from_ints(&[0, -1]), UPoly::one()]));
        let m = PolyMat::from_int_coeffs(&[&[&[], &[0, 1]], &[&[1], &[]]]);
        assert_eq!(
            m.star(&rat(2)),
            PolyMat::from_int_coeffs(&[&[&[], &[1]], &[&[2, -1], &[]]])
        );
        assert_eq!(m.star(&rat(0)).star(&rat(0)), m);
    }

    #[test]
    fn congruence_examples() {
        let a = j_with(&[0, 2]);
        assert_eq!(congruence_verify(&a, &PolyMat::identity(2), &rat(0)).unwrap(), a);
        // f = 2x, g = -x: C = [[1, x], [0, 1]] clears f
        let c = PolyMat::from_int_coeffs(&[&[&[1], &[0, 1]], &[&[], &[1]]]);
        assert_eq!(congruence_verify(&a, &c, &rat(0)).unwrap(), j_with(&[]));
        let c2 = PolyMat::scalar(2, UPoly::constant(rat(3)));
        assert_eq!(congruence_verify(&a, &c2, &rat(0)).unwrap(), a.scale(&rat(9)));
        assert!(congruence_verify(&a, &PolyMat::diag(&[UPoly::one(), UPoly::from_ints(&[0, 1])]), &rat(0)).is_err());
    }

    #[test]
    fn bounded_search_examples() {
        let a = j_with(&[0, 2]);
        assert_eq!(congruence_search_bounded(&a, &a, &rat(0), 1), Some(PolyMat::identity(2)));
        let c = congruence_search_bounded(&a, &j_with(&[]), &rat(0), 1).expect("found");
        assert_eq!(congruence_verify(&a, &c, &rat(0)).unwrap(), j_with(&[]));
        let x = PolyMat::diag(&[UPoly::from_ints(&[0, 1])]);
        let x2 = PolyMat::diag(&[UPoly::from_ints(&[0, 0, 1])]);
        assert_eq!(congruence_search_bounded(&x, &x2, &rat(0), 2), None);
    }

    #[test]
    fn symmetry_claims() {
        assert!(is_star_symmetric(&j_with(&[]), &rat(0), -1));
        assert!(is_star_symmetric(&j_with(&[0, 2]), &rat(0), -1));
        assert!(!is_star_symmetric(&j_with(&[0, 2]), &rat(0), 1));
        let x = PolyMat::diag(&[UPoly::from_ints(&[0, 1])]);
        assert!(is_star_symmetric(&x, &rat(0), -1));
    }
}
