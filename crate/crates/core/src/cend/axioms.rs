//! Exact checks of the conformal algebra and module axioms on samples.
//! A failure here is an engine bug, never a tolerance issue.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{rat, MPoly, Monomial};
use crate::polymat::PolyMat;

use super::product::{apart_product_at, bracket_at, product_at};
use super::{d, l, m, CendElem, ModVec};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checked: usize,
    /// `"<axiom> #<sample index>"` for every violated identity.
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, name: &str, idx: usize, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failures.push(format!("{name} #{idx}"));
        }
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

/// Random polynomial in `∂, x` of total degree `<= max_deg`.
fn random_entry<R: Rng>(rng: &mut R, max_deg: u32) -> MPoly {
    let mut p = MPoly::zero();
    for _ in 0..rng.gen_range(0..=3) {
        let total = rng.gen_range(0..=max_deg);
        let i = rng.gen_range(0..=total);
        p.add_term(Monomial([i, total - i, 0, 0]), rat(rng.gen_range(-3..=3)));
    }
    p
}

pub fn random_elem<R: Rng>(rng: &mut R, n: usize, max_deg: u32) -> CendElem {
    let entries = (0..n * n).map(|_| random_entry(rng, max_deg)).collect();
    CendElem::from_entries(n, entries).expect("n*n entries")
}

/// Random vector over `ℚ[∂]` with entry degrees `<= max_deg`.
pub fn random_modvec<R: Rng>(rng: &mut R, n: usize, max_deg: u32) -> ModVec {
    ModVec::new(
        (0..n)
            .map(|_| {
                let mut p = MPoly::zero();
                for k in 0..=rng.gen_range(0..=max_deg) {
                    p.add_term(Monomial([k, 0, 0, 0]), rat(rng.gen_range(-3..=3)));
                }
                p
            })
            .collect(),
    )
}

/// `count` triples from a ChaCha stream seeded with `seed`.
pub fn seeded_triples(seed: u64, n: usize, count: usize, max_deg: u32) -> Vec<(CendElem, CendElem, CendElem)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a = random_elem(&mut rng, n, max_deg);
            let b = random_elem(&mut rng, n, max_deg);
            (a, b, random_elem(&mut rng, n, max_deg))
        })
        .collect()
}

/// `count` samples `(a, b, v)` with `v` of length `rank`.
pub fn seeded_module_samples(
    seed: u64,
    n: usize,
    rank: usize,
    count: usize,
    max_deg: u32,
) -> Vec<(CendElem, CendElem, ModVec)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a = random_elem(&mut rng, n, max_deg);
            let b = random_elem(&mut rng, n, max_deg);
            (a, b, random_modvec(&mut rng, rank, max_deg))
        })
        .collect()
}

/// (A1) in both slots and (A2). With `p`, elements are a-parts in
/// `Cend_{N,P}` and the product is the twisted one.
pub fn verify_assoc_axioms(
    triples: &[(CendElem, CendElem, CendElem)],
    p: Option<&PolyMat>,
) -> AxiomReport {
    let prod = |a: &CendElem, b: &CendElem, at: &MPoly| match p {
        Some(p) => apart_product_at(a, b, p, at),
        None => product_at(a, b, at),
    };
    let (lam, mu) = (l(), m());
    let mut rep = AxiomReport::default();
    for (k, (a, b, c)) in triples.iter().enumerate() {
        let ab = prod(a, b, &lam);
        rep.check("A1 left", k, prod(&a.times(&d()), b, &lam) == ab.times(&-&lam));
        rep.check("A1 right", k, prod(a, &b.times(&d()), &lam) == ab.times(&(&lam + &d())));
        let lhs = prod(a, &prod(b, c, &mu), &lam);
        let rhs = prod(&ab, c, &(&lam + &mu));
        rep.check("A2", k, lhs == rhs);
    }
    rep
}

/// (C1) in both slots, skew-symmetry (C2) and Jacobi (C3) for the bracket.
pub fn verify_lie_axioms(triples: &[(CendElem, CendElem, CendElem)]) -> AxiomReport {
    let (lam, mu) = (l(), m());
    let mut rep = AxiomReport::default();
    for (k, (a, b, c)) in triples.iter().enumerate() {
        let ab = bracket_at(a, b, &lam);
        rep.check("C1 left", k, bracket_at(&a.times(&d()), b, &lam) == ab.times(&-&lam));
        rep.check(
            "C1 right",
            k,
            bracket_at(a, &b.times(&d()), &lam) == ab.times(&(&lam + &d())),
        );
        let flipped = bracket_at(a, b, &(&(-&lam) - &d()));
        rep.check("C2", k, bracket_at(b, a, &lam) == -&flipped);
        let lhs = bracket_at(a, &bracket_at(b, c, &mu), &lam);
        let rhs = &bracket_at(&ab, c, &(&lam + &mu)) + &bracket_at(b, &bracket_at(a, c, &lam), &mu);
        rep.check("C3", k, lhs == rhs);
    }
    rep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    /// (M2) as `a_λ(b_μ v) = (a_λ b)_{λ+μ} v`.
    Associative,
    /// (M2) as `a_λ(b_μ v) - b_μ(a_λ v) = [a_λ b]_{λ+μ} v`.
    Lie,
}

/// (M1) in both slots and (M2) for an abstract action.
///
/// `product(a, b, L)` is the algebra product (or bracket) at slot `L`, and
/// `action(a, L, v)` the module action at slot `L`.
pub fn verify_module_axioms(
    kind: AlgebraKind,
    product: &dyn Fn(&CendElem, &CendElem, &MPoly) -> CendElem,
    action: &dyn Fn(&CendElem, &MPoly, &ModVec) -> ModVec,
    samples: &[(CendElem, CendElem, ModVec)],
) -> AxiomReport {
    let (lam, mu) = (l(), m());
    let mut rep = AxiomReport::default();
    for (k, (a, b, v)) in samples.iter().enumerate() {
        let av = action(a, &lam, v);
        rep.check("M1 left", k, action(&a.times(&d()), &lam, v) == av.times(&-&lam));
        rep.check(
            "M1 right",
            k,
            action(a, &lam, &v.times(&d())) == av.times(&(&lam + &d())),
        );
        let mut lhs = action(a, &lam, &action(b, &mu, v));
        if kind == AlgebraKind::Lie {
            lhs = &lhs - &action(b, &mu, &av);
        }
        let rhs = action(&product(a, b, &lam), &(&lam + &mu), v);
        rep.check("M2", k, lhs == rhs);
    }
    rep
}
