use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{MPoly, Monomial, Rat, Var};

/// Dense univariate polynomial over `ℚ`, lowest degree first.
///
/// The variable is implicit; conversions to and from [`MPoly`] name it.
/// The leading coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: Vec<Rat>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> UPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> UPoly {
        UPoly::new(coeffs.iter().map(|&c| super::rat(c)).collect())
    }

    pub fn zero() -> UPoly {
        UPoly { coeffs: vec![] }
    }

    pub fn one() -> UPoly {
        UPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> UPoly {
        UPoly::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> UPoly {
        UPoly::new(vec![Rat::zero(), Rat::one()])
    }

    /// `x - r`.
    pub fn linear_root(r: &Rat) -> UPoly {
        UPoly::new(vec![-r.clone(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Constant polynomials, including zero.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&self.lc().recip())
    }

    pub fn eval(&self, at: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * at + c)
    }

    pub fn pow(&self, e: u32) -> UPoly {
        (0..e).fold(UPoly::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * super::rat(k as i64))
                .collect(),
        )
    }

    /// Composition `self(inner)`.
    pub fn compose(&self, inner: &UPoly) -> UPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(UPoly::zero(), |acc, c| &(&acc * inner) + &UPoly::constant(c.clone()))
    }

    /// `p(x + α)`.
    pub fn shift(&self, alpha: &Rat) -> UPoly {
        self.compose(&UPoly::new(vec![alpha.clone(), Rat::one()]))
    }

    /// `p(-x + α)`.
    pub fn reflect(&self, alpha: &Rat) -> UPoly {
        self.compose(&UPoly::new(vec![alpha.clone(), -Rat::one()]))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let inv = d.lc().recip();
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    pub fn divides(&self, other: &UPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Exact quotient, `None` when `d` is zero or leaves a remainder.
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Extended Euclid: `(g, s, t)` with `s·a + t·b = g`, `g` monic
    /// (or zero when both inputs vanish).
    pub fn ext_gcd(a: &UPoly, b: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn to_mpoly(&self, v: Var) -> MPoly {
        MPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::var(v, k as u32), c.clone())),
        )
    }

    /// Reads a polynomial that only involves `v`.
    pub fn from_mpoly(p: &MPoly, v: Var) -> Option<UPoly> {
        if !p.uses_only(&[v]) {
            return None;
        }
        let deg = p.degree_in(v).unwrap_or(0) as usize;
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (m, c) in p.terms() {
            coeffs[m.exp(v) as usize] = c.clone();
        }
        Some(UPoly::new(coeffs))
    }
}

/// Monic gcd; `gcd(a, 0) = monic(a)`.
pub fn upoly_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    UPoly::ext_gcd(a, b).0
}

impl Add<&UPoly> for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&UPoly> for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&UPoly> for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl Add for UPoly {
    type Output = UPoly;
    fn add(self, rhs: UPoly) -> UPoly {
        &self + &rhs
    }
}

impl Sub for UPoly {
    type Output = UPoly;
    fn sub(self, rhs: UPoly) -> UPoly {
        &self - &rhs
    }
}

impl Mul for UPoly {
    type Output = UPoly;
    fn mul(self, rhs: UPoly) -> UPoly {
        &self * &rhs
    }
}

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        -&self
    }
}

/// Printed with `x` as the variable.
impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_mpoly(Var::X))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};
    use proptest::prelude::*;

    fn up(c: &[i64]) -> UPoly {
        UPoly::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        // x^2 + x and x^2 - 1 -> x + 1
        assert_eq!(upoly_gcd(&up(&[0, 1, 1]), &up(&[-1, 0, 1])), up(&[1, 1]));
        let p = up(&[4, 0, 2]);
        assert_eq!(upoly_gcd(&p, &UPoly::zero()), p.monic());
        assert_eq!(upoly_gcd(&up(&[0, 0, 1]), &up(&[0, 0, 0, 1])), up(&[0, 0, 1]));
        assert!(upoly_gcd(&UPoly::zero(), &UPoly::zero()).is_zero());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(up(&[0, 1]).shift(&rat(5)), up(&[5, 1]));
        assert_eq!(up(&[0, 0, 1]).shift(&rat(1)), up(&[1, 2, 1]));
        let p = up(&[3, -1, 0, 2]);
        let a = ratio(7, 3);
        assert_eq!(p.shift(&a).shift(&-a), p);
        assert_eq!(up(&[0, 1]).reflect(&rat(2)), up(&[2, -1]));
    }

    #[test]
    fn division() {
        let (q, r) = up(&[1, 0, 0, 1]).div_rem(&up(&[1, 1]));
        assert_eq!(q, up(&[1, -1, 1]));
        assert!(r.is_zero());
        assert_eq!(up(&[1, 0, 1]).div_exact(&up(&[1, 1])), None);
        assert_eq!(up(&[2]).div_rem(&up(&[0, 1])), (UPoly::zero(), up(&[2])));
    }

    fn small_poly() -> impl Strategy<Value = UPoly> {
        proptest::collection::vec(-3i64..=3, 0..=5).prop_map(|c| UPoly::from_ints(&c))
    }

    /// Monic divisors with coefficients in -3..=3 up to degree 4.
    fn brute_force_common_divisors(a: &UPoly, b: &UPoly) -> Vec<UPoly> {
        let mut out = vec![];
        for deg in 1..=4usize {
            let total = 7usize.pow(deg as u32);
            for code in 0..total {
                let mut c = Vec::with_capacity(deg + 1);
                let mut k = code;
                for _ in 0..deg {
                    c.push(rat((k % 7) as i64 - 3));
                    k /= 7;
                }
                c.push(rat(1));
                let d = UPoly::new(c);
                if d.divides(a) && d.divides(b) {
                    out.push(d);
                }
            }
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn gcd_divides_and_is_greatest(a in small_poly(), b in small_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let g = upoly_gcd(&a, &b);
            prop_assert!(g.divides(&a) && g.divides(&b));
            prop_assert!(g.lc() == rat(1));
            for d in brute_force_common_divisors(&a, &b) {
                prop_assert!(d.divides(&g), "{:?} does not divide {:?}", d, g);
            }
        }

        #[test]
        fn bezout_identity(a in small_poly(), b in small_poly()) {
            let (g, s, t) = UPoly::ext_gcd(&a, &b);
            prop_assert_eq!(&(&s * &a) + &(&t * &b), g);
        }
    }
}
