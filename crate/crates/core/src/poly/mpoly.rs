use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{format_rat, Rat, UPoly};

/// The fixed variable alphabet. Declaration order is the term order
/// priority: `∂ > x > λ > μ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    D,
    X,
    L,
    M,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::D, Var::X, Var::L, Var::M];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Letter used by the text grammar.
    pub fn letter(self) -> char {
        match self {
            Var::D => 'd',
            Var::X => 'x',
            Var::L => 'l',
            Var::M => 'm',
        }
    }

    pub fn from_letter(c: char) -> Option<Var> {
        match c {
            'd' => Some(Var::D),
            'x' => Some(Var::X),
            'l' => Some(Var::L),
            'm' => Some(Var::M),
            _ => None,
        }
    }
}

/// Exponent vector `(e_∂, e_x, e_λ, e_μ)` ordered graded-lexicographically.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(v: Var, e: u32) -> Monomial {
        let mut m = [0; 4];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(m)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over `ℚ` in `∂, x, λ, μ`.
///
/// Zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly::default()
    }

    pub fn one() -> MPoly {
        MPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> MPoly {
        MPoly::monomial(c, Monomial::ONE)
    }

    pub fn int(c: i64) -> MPoly {
        MPoly::constant(super::rat(c))
    }

    pub fn var(v: Var) -> MPoly {
        MPoly::monomial(Rat::one(), Monomial::var(v, 1))
    }

    pub fn monomial(c: Rat, m: Monomial) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(iter: I) -> MPoly {
        let mut p = MPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn constant_term(&self) -> Rat {
        self.terms.get(&Monomial::ONE).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    /// True when no variable outside `vars` occurs.
    pub fn uses_only(&self, vars: &[Var]) -> bool {
        self.terms.keys().all(|m| {
            Var::ALL
                .iter()
                .all(|v| vars.contains(v) || m.exp(*v) == 0)
        })
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Divides by the leading coefficient (zero stays zero).
    pub fn monic(&self) -> MPoly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => MPoly::zero(),
        }
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: Var, k: u32) -> MPoly {
        let idx = v.index();
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[idx] == k)
                .map(|(m, c)| {
                    let mut m = *m;
                    m.0[idx] = 0;
                    (m, c.clone())
                })
                .collect(),
        }
    }

    /// Partial derivative in `v`.
    pub fn derivative(&self, v: Var) -> MPoly {
        let idx = v.index();
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e > 0 {
                let mut m = *m;
                m.0[idx] = e - 1;
                out.add_term(m, c * Rat::from_integer(e.into()));
            }
        }
        out
    }

    /// Splits by powers of `v`; only nonzero coefficients are returned.
    pub fn collect_by(&self, v: Var) -> BTreeMap<u32, MPoly> {
        let idx = v.index();
        let mut out: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.0[idx];
            let mut rest = *m;
            rest.0[idx] = 0;
            out.entry(k).or_default().terms.insert(rest, c.clone());
        }
        out
    }

    /// Simultaneous substitution; unbound variables are left alone.
    pub fn substitute(&self, subst: &Subst) -> MPoly {
        let mut cache: [Vec<MPoly>; 4] = Default::default();
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::ONE;
            let mut factor = MPoly::monomial(c.clone(), Monomial::ONE);
            for v in Var::ALL {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                match &subst.bind[v.index()] {
                    None => kept.0[v.index()] = e,
                    Some(b) => {
                        let powers = &mut cache[v.index()];
                        if powers.is_empty() {
                            powers.push(MPoly::one());
                        }
                        while powers.len() <= e as usize {
                            let next = powers.last().unwrap() * b;
                            powers.push(next);
                        }
                        factor = &factor * &powers[e as usize];
                    }
                }
            }
            for (fm, fc) in factor.terms {
                out.add_term(fm.mul(&kept), fc);
            }
        }
        out
    }

    /// Exact division by a univariate polynomial in `v`; `None` when the
    /// divisor does not divide.
    pub fn div_exact_upoly(&self, d: &UPoly, v: Var) -> Option<MPoly> {
        if d.is_zero() {
            return None;
        }
        let idx = v.index();
        // group by the exponents of the other variables
        let mut groups: BTreeMap<[u32; 4], BTreeMap<u32, Rat>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut key = m.0;
            key[idx] = 0;
            groups.entry(key).or_default().insert(m.0[idx], c.clone());
        }
        let mut out = MPoly::zero();
        for (key, coeffs) in groups {
            let top = *coeffs.keys().next_back().unwrap() as usize;
            let mut dense = vec![Rat::zero(); top + 1];
            for (k, c) in coeffs {
                dense[k as usize] = c;
            }
            let q = UPoly::new(dense).div_exact(d)?;
            for (k, c) in q.coeffs().iter().enumerate() {
                let mut m = key;
                m[idx] = k as u32;
                out.add_term(Monomial(m), c.clone());
            }
        }
        Some(out)
    }
}

/// A simultaneous substitution `{var -> polynomial}`.
#[derive(Clone, Debug, Default)]
pub struct Subst {
    bind: [Option<MPoly>; 4],
}

impl Subst {
    pub fn new() -> Subst {
        Subst::default()
    }

    pub fn with(mut self, v: Var, p: MPoly) -> Subst {
        self.bind[v.index()] = Some(p);
        self
    }

    pub fn get(&self, v: Var) -> Option<&MPoly> {
        self.bind[v.index()].as_ref()
    }
}

impl From<Var> for MPoly {
    fn from(v: Var) -> MPoly {
        MPoly::var(v)
    }
}

impl From<Rat> for MPoly {
    fn from(c: Rat) -> MPoly {
        MPoly::constant(c)
    }
}

impl<'a> Add<&'a MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: MPoly) -> MPoly {
        self += &rhs;
        self
    }
}

impl<'a> AddAssign<&'a MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &'a MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<'a> SubAssign<&'a MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &'a MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<'a> Sub<&'a MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(mut self, rhs: MPoly) -> MPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl<'a> Mul<&'a MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        let mut acc: std::collections::HashMap<Monomial, Rat> =
            std::collections::HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let prod = ca * cb;
                acc.entry(ma.mul(mb))
                    .and_modify(|c| *c += &prod)
                    .or_insert(prod);
            }
        }
        MPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for v in Var::ALL {
        let e = m.exp(v);
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{}", v.letter())?;
        } else {
            write!(f, "{}^{}", v.letter(), e)?;
        }
    }
    Ok(())
}

/// Prints in the text grammar, highest term first, e.g. `2*x + d - 1/2*l^2`.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if *m == Monomial::ONE {
                f.write_str(&format_rat(&abs))?;
            } else if abs.is_one() {
                write_monomial(f, m)?;
            } else {
                write!(f, "{}*", format_rat(&abs))?;
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_mpoly, rat};

    fn p(s: &str) -> MPoly {
        parse_mpoly(s).unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&p("x + l") * &p("x - l"), p("x^2 - l^2"));
        assert!((&p("3*x*d + 1") * &MPoly::zero()).is_zero());
        assert_eq!(p("d + x").pow(2), p("d^2 + 2*d*x + x^2"));
    }

    #[test]
    fn term_order_is_graded_lex() {
        let q = p("x^2 + d + d*x + m^3");
        let order: Vec<String> = q
            .terms()
            .rev()
            .map(|(m, c)| MPoly::monomial(c.clone(), *m).to_string())
            .collect();
        assert_eq!(order, vec!["m^3", "d*x", "x^2", "d"]);
        assert_eq!(q.leading_term().unwrap().0, &Monomial([0, 0, 0, 3]));
    }

    #[test]
    fn substitute_examples() {
        let s = Subst::new().with(Var::X, p("x + l + d"));
        assert_eq!(p("x").substitute(&s), p("x + l + d"));
        let s2 = Subst::new()
            .with(Var::D, p("-l"))
            .with(Var::X, p("x + l + d"));
        assert_eq!(p("d*x").substitute(&s2), p("-l*x - l^2 - l*d"));
        assert_eq!(p("7/3").substitute(&s2), p("7/3"));
    }

    #[test]
    fn substitution_is_simultaneous() {
        // d -> x, x -> d swaps rather than collapsing
        let s = Subst::new().with(Var::D, p("x")).with(Var::X, p("d"));
        assert_eq!(p("d^2*x").substitute(&s), p("x^2*d"));
    }

    #[test]
    fn collect_and_coefficients() {
        let q = p("l^2*x + 3*l*d - 2");
        let by = q.collect_by(Var::L);
        assert_eq!(by[&2], p("x"));
        assert_eq!(by[&1], p("3*d"));
        assert_eq!(by[&0], p("-2"));
        assert_eq!(q.coeff_of(Var::L, 1), p("3*d"));
        assert!(q.coeff_of(Var::L, 5).is_zero());
    }

    #[test]
    fn exact_division_by_univariate() {
        let q = p("d*x^2 + d*x + l*x + l");
        let d = UPoly::new(vec![rat(1), rat(1)]);
        assert_eq!(q.div_exact_upoly(&d, Var::X), Some(p("d*x + l")));
        assert_eq!(p("x^2 + 1").div_exact_upoly(&d, Var::X), None);
    }

    #[test]
    fn display_round_trip() {
        for s in ["2*x + d - 1/2*l^2", "-x", "0", "d^3*x - 5/7", "l*m"] {
            let q = p(s);
            assert_eq!(p(&q.to_string()), q, "{s}");
        }
        assert_eq!(p("x - 1/2*l^2 + d + x").to_string(), "-1/2*l^2 + d + 2*x");
    }
}
