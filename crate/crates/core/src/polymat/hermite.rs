//! Row Hermite normal forms over a univariate polynomial ring `ℚ[t]`.
//!
//! Convention: nonzero rows first, pivot columns strictly increasing,
//! pivots monic, and every entry above a pivot reduced modulo it. The form
//! is unique for a given row module, so generators compare by equality.

use crate::error::{CendError, Result};
use crate::poly::UPoly;

use super::PolyMat;

/// `transform · input = h`, with `transform` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteCert {
    pub h: PolyMat,
    pub transform: PolyMat,
    pub rank: usize,
}

/// Batch row HNF with transform.
pub fn row_hnf(m: &PolyMat) -> HermiteCert {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut t = PolyMat::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // lowest row index, then lowest degree
        let mut best: Option<(usize, usize)> = None;
        for i in r..rows {
            if let Some(d) = a.get(i, c).degree() {
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, i));
                }
            }
        }
        let Some((_, pi)) = best else { continue };
        a.swap_rows(r, pi);
        t.swap_rows(r, pi);
        for i in r + 1..rows {
            let b = a.get(i, c).clone();
            if b.is_zero() {
                continue;
            }
            let p = a.get(r, c).clone();
            if let Some(q) = b.div_exact(&p) {
                let f = -&q;
                a.add_row_multiple(i, r, &f);
                t.add_row_multiple(i, r, &f);
            } else {
                let (g, s, u) = UPoly::ext_gcd(&p, &b);
                let k = [&s, &u, &-&b.div_exact(&g).unwrap(), &p.div_exact(&g).unwrap()];
                a.combine_rows(r, i, k);
                t.combine_rows(r, i, k);
            }
        }
        let inv = a.get(r, c).lc().recip();
        a.scale_row(r, &inv);
        t.scale_row(r, &inv);
        for k in 0..r {
            let (q, _) = a.get(k, c).div_rem(a.get(r, c));
            let f = -&q;
            a.add_row_multiple(k, r, &f);
            t.add_row_multiple(k, r, &f);
        }
        r += 1;
    }
    HermiteCert {
        h: a,
        transform: t,
        rank: r,
    }
}

/// Generator of a left ideal of `Mat_N ℚ[x]`, with multipliers showing it
/// lies in the ideal: `generator = Σ multipliers[k] · inputs[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftGenerator {
    pub generator: PolyMat,
    pub multipliers: Vec<PolyMat>,
}

impl LeftGenerator {
    /// Checks both directions of the ideal equality.
    pub fn verify(&self, inputs: &[PolyMat]) -> bool {
        if inputs.len() != self.multipliers.len() {
            return false;
        }
        let n = self.generator.rows();
        let mut sum = PolyMat::zeros(n, n);
        for (x, m) in self.multipliers.iter().zip(inputs) {
            sum = &sum + &(x * m);
        }
        if sum != self.generator {
            return false;
        }
        let mut span = Echelon::new(n);
        for i in 0..n {
            span.insert(self.generator.row(i).to_vec());
        }
        inputs
            .iter()
            .all(|m| (0..n).all(|i| span.contains(m.row(i))))
    }
}

/// Canonical `R` with `Σ Mat_N ℚ[x] · M_k = Mat_N ℚ[x] · R`.
pub fn hermite_left_generator(mats: &[PolyMat]) -> Result<LeftGenerator> {
    let first = mats
        .first()
        .ok_or_else(|| CendError::Mismatch("empty generator list".into()))?;
    let n = first.rows();
    if mats.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(CendError::Mismatch("generators must be square of one size".into()));
    }
    let mut stacked = PolyMat::zeros(n * mats.len(), n);
    for (k, m) in mats.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                stacked.set(k * n + i, j, m.get(i, j).clone());
            }
        }
    }
    let cert = row_hnf(&stacked);
    let mut generator = PolyMat::zeros(n, n);
    for i in 0..n.min(stacked.rows()) {
        for j in 0..n {
            generator.set(i, j, cert.h.get(i, j).clone());
        }
    }
    let multipliers = (0..mats.len())
        .map(|k| {
            let mut x = PolyMat::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    x.set(i, j, cert.transform.get(i, k * n + j).clone());
                }
            }
            x
        })
        .collect();
    Ok(LeftGenerator {
        generator,
        multipliers,
    })
}

/// Incrementally maintained row HNF of a submodule of `ℚ[t]^dim`.
///
/// Rows are kept sorted by pivot column and fully reduced, so two echelons
/// of the same module compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Echelon {
    dim: usize,
    rows: Vec<(usize, Vec<UPoly>)>,
}

fn axpy(dst: &mut [UPoly], f: &UPoly, src: &[UPoly]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = &*d + &(f * s);
        }
    }
}

fn pivot_of(v: &[UPoly]) -> Option<usize> {
    v.iter().position(|e| !e.is_zero())
}

impl Echelon {
    pub fn new(dim: usize) -> Echelon {
        Echelon { dim, rows: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The basis rows in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &[UPoly]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }

    /// Adds `v` to the module; returns whether the module grew.
    pub fn insert(&mut self, v: Vec<UPoly>) -> bool {
        assert_eq!(v.len(), self.dim, "echelon vector length");
        let mut v = v;
        let mut changed = false;
        let mut idx = 0;
        while let Some(c) = pivot_of(&v) {
            while idx < self.rows.len() && self.rows[idx].0 < c {
                idx += 1;
            }
            if idx == self.rows.len() || self.rows[idx].0 > c {
                let inv = v[c].lc().recip();
                let v: Vec<UPoly> = v.iter().map(|e| e.scale(&inv)).collect();
                self.rows.insert(idx, (c, v));
                changed = true;
                break;
            }
            let p = self.rows[idx].1[c].clone();
            let b = v[c].clone();
            if let Some(q) = b.div_exact(&p) {
                axpy(&mut v, &-&q, &self.rows[idx].1);
            } else {
                let (g, s, t) = UPoly::ext_gcd(&p, &b);
                let row = self.rows[idx].1.clone();
                let mut merged: Vec<UPoly> = row.iter().map(|e| &s * e).collect();
                axpy(&mut merged, &t, &v);
                // the complementary combination vanishes at column c
                let mut rest: Vec<UPoly> = v.iter().map(|e| e * &p.div_exact(&g).unwrap()).collect();
                axpy(&mut rest, &-&b.div_exact(&g).unwrap(), &row);
                self.rows[idx].1 = merged;
                v = rest;
                changed = true;
            }
        }
        if changed {
            self.reduce();
        }
        changed
    }

    fn reduce(&mut self) {
        for r in 0..self.rows.len() {
            let (c, ref pivot_row) = self.rows[r].clone();
            for k in 0..r {
                let (q, _) = self.rows[k].1[c].div_rem(&pivot_row[c]);
                if !q.is_zero() {
                    axpy(&mut self.rows[k].1, &-&q, pivot_row);
                }
            }
        }
    }

    /// Membership test without modifying the module.
    pub fn contains(&self, v: &[UPoly]) -> bool {
        let mut v = v.to_vec();
        for (c, row) in &self.rows {
            if let Some(first) = pivot_of(&v) {
                if first < *c {
                    return false;
                }
            } else {
                return true;
            }
            if v[*c].is_zero() {
                continue;
            }
            match v[*c].div_exact(&row[*c]) {
                Some(q) => axpy(&mut v, &-&q, row),
                None => return false,
            }
        }
        pivot_of(&v).is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[i64]) -> UPoly {
        UPoly::from_ints(c)
    }

    #[test]
    fn scalar_ideal_is_gcd() {
        let a = PolyMat::diag(&[up(&[0, 1, 1])]);
        let b = PolyMat::diag(&[up(&[-1, 0, 1])]);
        let g = hermite_left_generator(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(g.generator, PolyMat::diag(&[up(&[1, 1])]));
        assert!(g.verify(&[a, b]));
    }

    #[test]
    fn unit_and_zero_ideals() {
        let u = PolyMat::from_int_coeffs(&[&[&[1], &[0, 1]], &[&[], &[1]]]);
        assert_eq!(hermite_left_generator(&[u]).unwrap().generator, PolyMat::identity(2));
        let z = hermite_left_generator(&[PolyMat::zeros(2, 2)]).unwrap();
        assert!(z.generator.is_zero());
        assert!(hermite_left_generator(&[]).is_err());
    }

    #[test]
    fn echelon_matches_batch_form() {
        let vs = [
            vec![up(&[0, 1]), up(&[1])],
            vec![up(&[1, 1]), up(&[0, 0, 1])],
            vec![up(&[2]), up(&[3, 1])],
        ];
        let mut e = Echelon::new(2);
        for v in &vs {
            e.insert(v.clone());
        }
        let m = PolyMat::from_rows(vs.to_vec()).unwrap();
        let h = row_hnf(&m);
        assert_eq!(h.rank, e.rank());
        for (i, row) in e.rows().enumerate() {
            assert_eq!(row, h.h.row(i));
        }
        assert_eq!(&h.transform * &m, h.h);
        assert!(e.contains(&[up(&[0, 3]), up(&[3])]));
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new(2);
        assert!(e.insert(vec![up(&[0, 1]), UPoly::zero()]));
        assert!(!e.insert(vec![up(&[0, 0, 2]), UPoly::zero()]));
        assert!(!e.contains(&[up(&[1]), UPoly::zero()]));
        assert!(!e.contains(&[UPoly::zero(), up(&[1])]));
        assert!(e.insert(vec![up(&[1]), UPoly::zero()]));
        assert_eq!(e.rank(), 1);
        assert_eq!(e.rows().next().unwrap()[0], up(&[1]));
    }
}
