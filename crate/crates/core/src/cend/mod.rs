//! Symbols of conformal operators and the λ-product calculus.
//!
//! An element of `Cend_N` is stored as its symbol `A(∂, x)`, an `N x N`
//! matrix over `ℚ[∂, x]`. Intermediate results reuse the same matrix type
//! with `λ`/`μ` allowed in the entries; [`LambdaSeries`] is the collected
//! view keyed by powers of `λ` and `μ`.

mod axioms;
mod maps;
mod product;

pub use axioms::{
    random_elem, random_modvec, seeded_module_samples, seeded_triples, verify_assoc_axioms, verify_lie_axioms, verify_module_axioms,
    AlgebraKind, AxiomReport,
};
pub use maps::{
    apply_antiinv, conjugate, cur_n, homomorphism_image, AntiInvSpec, AutoSpec, HomSpec,
};
pub use product::{
    apart_product_at, bracket_at, dual_action, dual_action_at, lambda_product, lie_bracket,
    module_action, nth_products, product_at, standard_action_at,
};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{CendError, Result};
use crate::poly::{MPoly, Monomial, Rat, Subst, UPoly, Var};
use crate::polymat::PolyMat;

pub(crate) fn d() -> MPoly {
    MPoly::var(Var::D)
}
pub(crate) fn x() -> MPoly {
    MPoly::var(Var::X)
}
pub(crate) fn l() -> MPoly {
    MPoly::var(Var::L)
}
pub(crate) fn m() -> MPoly {
    MPoly::var(Var::M)
}

/// Square matrix of [`MPoly`]. As an element of `Cend_N` the entries use
/// only `∂` and `x`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CendElem {
    n: usize,
    entries: Vec<MPoly>,
}

impl CendElem {
    pub fn zeros(n: usize) -> CendElem {
        CendElem {
            n,
            entries: vec![MPoly::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> CendElem {
        CendElem::scalar(n, MPoly::one())
    }

    /// `p · I`.
    pub fn scalar(n: usize, p: MPoly) -> CendElem {
        let mut e = CendElem::zeros(n);
        for i in 0..n {
            e.set(i, i, p.clone());
        }
        e
    }

    /// `p · E_ij`.
    pub fn unit(n: usize, i: usize, j: usize, p: MPoly) -> CendElem {
        let mut e = CendElem::zeros(n);
        e.set(i, j, p);
        e
    }

    pub fn from_entries(n: usize, entries: Vec<MPoly>) -> Result<CendElem> {
        if entries.len() != n * n {
            return Err(CendError::Mismatch(format!(
                "expected {} entries for a {n}x{n} symbol",
                n * n
            )));
        }
        Ok(CendElem { n, entries })
    }

    /// A `1 x 1` symbol.
    pub fn single(p: MPoly) -> CendElem {
        CendElem {
            n: 1,
            entries: vec![p],
        }
    }

    pub fn from_polymat(p: &PolyMat) -> CendElem {
        CendElem {
            n: p.size(),
            entries: p.entries().map(|e| e.to_mpoly(Var::X)).collect(),
        }
    }

    /// `P(at)` with `at` substituted for `x`.
    pub fn from_polymat_at(p: &PolyMat, at: &MPoly) -> CendElem {
        CendElem {
            n: p.size(),
            entries: p.to_mpolys_at(at),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MPoly) {
        self.entries[i * self.n + j] = p;
    }

    pub fn entries(&self) -> &[MPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MPoly::is_zero)
    }

    /// True when only `∂` and `x` occur.
    pub fn is_symbol(&self) -> bool {
        self.entries.iter().all(|p| p.uses_only(&[Var::D, Var::X]))
    }

    pub fn involves(&self, v: Var) -> bool {
        self.entries.iter().any(|p| p.involves(v))
    }

    pub fn map(&self, f: impl Fn(&MPoly) -> MPoly) -> CendElem {
        CendElem {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn substitute(&self, s: &Subst) -> CendElem {
        self.map(|p| p.substitute(s))
    }

    pub fn transpose(&self) -> CendElem {
        let mut t = CendElem::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Every entry multiplied by `p` (e.g. `∂·a`).
    pub fn times(&self, p: &MPoly) -> CendElem {
        self.map(|e| p * e)
    }

    pub fn scale(&self, c: &Rat) -> CendElem {
        self.map(|e| e.scale(c))
    }

    /// Entries of `self = X · P` divided back out, if `P` right-divides.
    pub fn right_divide(&self, p: &PolyMat) -> Option<CendElem> {
        let det = p.det();
        if det.is_zero() || p.size() != self.n {
            return None;
        }
        let num = self * &CendElem::from_polymat(&p.adjugate());
        let entries = num
            .entries
            .iter()
            .map(|e| e.div_exact_upoly(&det, Var::X))
            .collect::<Option<Vec<_>>>()?;
        Some(CendElem { n: self.n, entries })
    }

    /// Total degree over all entries.
    pub fn max_degree(&self) -> Option<u32> {
        self.entries.iter().filter_map(MPoly::total_degree).max()
    }

    /// Splits entries by powers of `λ` and `μ`.
    pub fn collect_lambda(&self) -> LambdaSeries {
        let mut coeffs: BTreeMap<(u32, u32), CendElem> = BTreeMap::new();
        for (k, e) in self.entries.iter().enumerate() {
            for (mono, c) in e.terms() {
                let key = (mono.exp(Var::L), mono.exp(Var::M));
                let mut rest = *mono;
                rest.0[Var::L.index()] = 0;
                rest.0[Var::M.index()] = 0;
                coeffs
                    .entry(key)
                    .or_insert_with(|| CendElem::zeros(self.n))
                    .entries[k]
                    .add_term(rest, c.clone());
            }
        }
        LambdaSeries { n: self.n, coeffs }
    }
}

impl Mul<&CendElem> for &CendElem {
    type Output = CendElem;
    fn mul(self, rhs: &CendElem) -> CendElem {
        assert_eq!(self.n, rhs.n, "symbol sizes differ");
        let n = self.n;
        let mut out = CendElem::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[i * n + j] += &(a * b);
                }
            }
        }
        out
    }
}

impl Add<&CendElem> for &CendElem {
    type Output = CendElem;
    fn add(self, rhs: &CendElem) -> CendElem {
        assert_eq!(self.n, rhs.n, "symbol sizes differ");
        CendElem {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&CendElem> for &CendElem {
    type Output = CendElem;
    fn sub(self, rhs: &CendElem) -> CendElem {
        assert_eq!(self.n, rhs.n, "symbol sizes differ");
        CendElem {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CendElem {
    type Output = CendElem;
    fn neg(self) -> CendElem {
        self.map(|e| -e)
    }
}

impl fmt::Display for CendElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for CendElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CendElem{self}")
    }
}

/// `Σ λ^i μ^j c_ij` with finitely many nonzero symbol coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LambdaSeries {
    n: usize,
    coeffs: BTreeMap<(u32, u32), CendElem>,
}

impl LambdaSeries {
    pub fn zero(n: usize) -> LambdaSeries {
        LambdaSeries {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(CendElem::is_zero)
    }

    /// Coefficient of `λ^i μ^j`.
    pub fn coeff(&self, i: u32, j: u32) -> CendElem {
        self.coeffs
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| CendElem::zeros(self.n))
    }

    /// Nonzero coefficients keyed by `(λ power, μ power)`.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &CendElem)> {
        self.coeffs.iter().filter(|(_, c)| !c.is_zero())
    }

    pub fn lambda_degree(&self) -> Option<u32> {
        self.terms().map(|((i, _), _)| *i).max()
    }

    pub fn insert(&mut self, key: (u32, u32), c: CendElem) {
        assert_eq!(c.n(), self.n);
        if !c.is_zero() {
            self.coeffs.insert(key, c);
        }
    }

    /// Back to a single matrix with `λ`, `μ` in the entries.
    pub fn expand(&self) -> CendElem {
        let mut out = CendElem::zeros(self.n);
        for ((i, j), c) in self.terms() {
            let mono = MPoly::monomial(num_traits::One::one(), Monomial([0, 0, *i, *j]));
            out = &out + &c.times(&mono);
        }
        out
    }
}

impl fmt::Debug for LambdaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LambdaSeries({})", self.expand())
    }
}

/// Column vector over `ℚ[∂]`; intermediate values may also carry `λ`, `μ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModVec {
    entries: Vec<MPoly>,
}

impl ModVec {
    pub fn zeros(n: usize) -> ModVec {
        ModVec {
            entries: vec![MPoly::zero(); n],
        }
    }

    pub fn new(entries: Vec<MPoly>) -> ModVec {
        ModVec { entries }
    }

    pub fn from_upolys(v: &[UPoly]) -> ModVec {
        ModVec {
            entries: v.iter().map(|p| p.to_mpoly(Var::D)).collect(),
        }
    }

    /// `p(∂) e_i`.
    pub fn basis(n: usize, i: usize, p: MPoly) -> ModVec {
        let mut v = ModVec::zeros(n);
        v.entries[i] = p;
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[MPoly] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &MPoly {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MPoly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&MPoly) -> MPoly) -> ModVec {
        ModVec {
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn substitute(&self, s: &Subst) -> ModVec {
        self.map(|p| p.substitute(s))
    }

    pub fn times(&self, p: &MPoly) -> ModVec {
        self.map(|e| p * e)
    }

    /// Entries as polynomials in `∂`, if no other variable occurs.
    pub fn to_upolys(&self) -> Option<Vec<UPoly>> {
        self.entries.iter().map(|p| UPoly::from_mpoly(p, Var::D)).collect()
    }

    /// Splits by powers of `λ` and `μ`.
    pub fn collect_lambda(&self) -> ModSeries {
        let mut coeffs: BTreeMap<(u32, u32), ModVec> = BTreeMap::new();
        let n = self.entries.len();
        for (k, e) in self.entries.iter().enumerate() {
            for (mono, c) in e.terms() {
                let key = (mono.exp(Var::L), mono.exp(Var::M));
                let mut rest = *mono;
                rest.0[Var::L.index()] = 0;
                rest.0[Var::M.index()] = 0;
                coeffs.entry(key).or_insert_with(|| ModVec::zeros(n)).entries[k]
                    .add_term(rest, c.clone());
            }
        }
        ModSeries { n, coeffs }
    }
}

impl Mul<&ModVec> for &CendElem {
    type Output = ModVec;
    fn mul(self, v: &ModVec) -> ModVec {
        assert_eq!(self.n, v.len(), "matrix/vector sizes differ");
        let mut out = ModVec::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let (a, b) = (self.get(i, j), &v.entries[j]);
                if !a.is_zero() && !b.is_zero() {
                    out.entries[i] += &(a * b);
                }
            }
        }
        out
    }
}

impl Add<&ModVec> for &ModVec {
    type Output = ModVec;
    fn add(self, rhs: &ModVec) -> ModVec {
        assert_eq!(self.len(), rhs.len());
        ModVec {
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&ModVec> for &ModVec {
    type Output = ModVec;
    fn sub(self, rhs: &ModVec) -> ModVec {
        assert_eq!(self.len(), rhs.len());
        ModVec {
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for ModVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for ModVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModVec{self}")
    }
}

/// λ-series of module vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModSeries {
    n: usize,
    coeffs: BTreeMap<(u32, u32), ModVec>,
}

impl ModSeries {
    pub fn coeff(&self, i: u32, j: u32) -> ModVec {
        self.coeffs
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| ModVec::zeros(self.n))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &ModVec)> {
        self.coeffs.iter().filter(|(_, v)| !v.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(ModVec::is_zero)
    }
}
