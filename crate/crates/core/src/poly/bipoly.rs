//! Bivariate gcd in `ℚ[∂, x]`, viewed as `ℚ[x][∂]`.

use super::{upoly_gcd, MPoly, Monomial, UPoly, Var};

/// Coefficients in `∂`, lowest first, each a polynomial in `x`.
type Dense = Vec<UPoly>;

fn to_dense(p: &MPoly) -> Dense {
    assert!(p.uses_only(&[Var::D, Var::X]), "bipoly: only d and x allowed");
    let mut out = vec![UPoly::zero(); p.degree_in(Var::D).map_or(0, |d| d as usize + 1)];
    for (k, c) in p.collect_by(Var::D) {
        out[k as usize] = UPoly::from_mpoly(&c, Var::X).expect("checked above");
    }
    out
}

fn from_dense(p: &[UPoly]) -> MPoly {
    let mut out = MPoly::zero();
    for (k, c) in p.iter().enumerate() {
        for (j, r) in c.coeffs().iter().enumerate() {
            out.add_term(Monomial([k as u32, j as u32, 0, 0]), r.clone());
        }
    }
    out
}

fn trim(p: &mut Dense) {
    while p.last().is_some_and(UPoly::is_zero) {
        p.pop();
    }
}

fn deg(p: &[UPoly]) -> usize {
    p.len() - 1
}

fn content(p: &[UPoly]) -> UPoly {
    p.iter().fold(UPoly::zero(), |g, c| upoly_gcd(&g, c))
}

fn div_coeffs(p: &[UPoly], d: &UPoly) -> Dense {
    p.iter()
        .map(|c| c.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

/// `lc(b)^(deg a - deg b + 1) · a  mod  b`.
fn pseudo_rem(a: &[UPoly], b: &[UPoly]) -> Dense {
    let lb = b.last().unwrap();
    let mut r: Dense = a.to_vec();
    let mut steps = 0;
    let target = deg(a) + 1 - deg(b);
    while !r.is_empty() && r.len() >= b.len() {
        let shift = r.len() - b.len();
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] = &r[k + shift] - &(&lr * bc);
        }
        trim(&mut r);
        steps += 1;
    }
    let extra = lb.pow((target - steps) as u32);
    r.iter().map(|c| c * &extra).collect()
}

/// Gcd of two primitive polynomials through the subresultant remainder
/// sequence; the result is primitive.
fn primitive_gcd(a: Dense, b: Dense) -> Dense {
    let (mut a, mut b) = if deg(&a) >= deg(&b) { (a, b) } else { (b, a) };
    let mut g = UPoly::one();
    let mut h = UPoly::one();
    loop {
        let delta = deg(&a) - deg(&b);
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return vec![UPoly::one()];
        }
        let denom = &g * &h.pow(delta as u32);
        a = std::mem::replace(&mut b, div_coeffs(&r, &denom));
        g = a.last().unwrap().clone();
        // h <- g^δ / h^(δ-1)
        if delta > 0 {
            h = g
                .pow(delta as u32)
                .div_exact(&h.pow(delta as u32 - 1))
                .expect("subresultant division is exact");
        }
    }
    let c = content(&b);
    div_coeffs(&b, &c)
}

/// Gcd in `ℚ[∂, x]`, normalized so the leading term under the canonical
/// order has coefficient 1. `gcd(0, 0) = 0`.
pub fn bipoly_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (da, db) = (to_dense(a), to_dense(b));
    let (ca, cb) = (content(&da), content(&db));
    let c = upoly_gcd(&ca, &cb);
    let g = primitive_gcd(div_coeffs(&da, &ca), div_coeffs(&db, &cb));
    let g: Dense = g.iter().map(|k| k * &c).collect();
    from_dense(&g).monic()
}

/// Exact quotient `a / b` in `ℚ[∂, x]`, `None` if `b` does not divide `a`.
pub fn bipoly_div_exact(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    if b.is_zero() {
        return None;
    }
    let bd = to_dense(b);
    let mut r = to_dense(a);
    trim(&mut r);
    if r.is_empty() {
        return Some(MPoly::zero());
    }
    if r.len() < bd.len() {
        return None;
    }
    let lb = bd.last().unwrap();
    let mut q = vec![UPoly::zero(); r.len() - bd.len() + 1];
    while !r.is_empty() {
        if r.len() < bd.len() {
            return None;
        }
        let shift = r.len() - bd.len();
        let t = r.last().unwrap().div_exact(lb)?;
        for (k, bc) in bd.iter().enumerate() {
            r[k + shift] = &r[k + shift] - &(&t * bc);
        }
        q[shift] = t;
        trim(&mut r);
    }
    Some(from_dense(&q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_mpoly;
    use proptest::prelude::*;

    fn p(s: &str) -> MPoly {
        parse_mpoly(s).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(bipoly_gcd(&p("x*d + x^2"), &p("x^2*d + x^3")), p("x*d + x^2"));
        let a = &p("d + x") * &p("x + 1");
        let b = &p("d + x") * &p("x - 1");
        assert_eq!(bipoly_gcd(&a, &b), p("d + x"));
        let q = p("3*d^2*x - 6*x^2 + 9");
        assert_eq!(bipoly_gcd(&q, &q), q.monic());
        assert_eq!(bipoly_gcd(&p("x"), &p("d")), MPoly::one());
        assert_eq!(bipoly_gcd(&p("x^2 - 1"), &p("x^2 + x")), p("x + 1"));
    }

    #[test]
    fn coprime_check_by_trial_division() {
        // p = x+1, q = x-1: neither linear factor of one divides the other
        assert!(bipoly_div_exact(&p("x + 1"), &p("x - 1")).is_none());
        assert!(bipoly_div_exact(&p("x - 1"), &p("x + 1")).is_none());
        assert_eq!(bipoly_div_exact(&p("d*x + x^2"), &p("d + x")), Some(p("x")));
    }

    fn small() -> impl Strategy<Value = MPoly> {
        proptest::collection::vec((0u32..3, 0u32..3, -3i64..=3), 1..5).prop_map(|ts| {
            MPoly::from_terms(
                ts.into_iter()
                    .map(|(i, j, c)| (Monomial([i, j, 0, 0]), crate::poly::rat(c))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn gcd_divides_both(a in small(), b in small(), c in small()) {
            let (a, b) = (&a * &c, &b * &c);
            let g = bipoly_gcd(&a, &b);
            if !a.is_zero() && !b.is_zero() {
                prop_assert!(bipoly_div_exact(&a, &g).is_some());
                prop_assert!(bipoly_div_exact(&b, &g).is_some());
                // the planted common factor divides the gcd
                if !c.is_zero() {
                    prop_assert!(bipoly_div_exact(&g, &c).is_some(), "{:?} vs {:?}", g, c);
                }
            }
        }
    }
}
