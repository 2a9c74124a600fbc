use crate::poly::UPoly;

use super::{is_unit, PolyMat};

/// Smith normal form with transforms: `left · M · right = diag(divisors)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithCert {
    /// Monic elementary divisors; zeros (singular input) come last.
    pub divisors: Vec<UPoly>,
    pub left: PolyMat,
    pub right: PolyMat,
}

impl SmithCert {
    /// The diagonal matrix with the shape of the input.
    pub fn diagonal(&self) -> PolyMat {
        let mut d = PolyMat::zeros(self.left.rows(), self.right.cols());
        for (i, p) in self.divisors.iter().enumerate() {
            d.set(i, i, p.clone());
        }
        d
    }

    /// Re-checks every invariant of the certificate against `m`.
    pub fn verify(&self, m: &PolyMat) -> bool {
        if self.left.rows() != m.rows() || self.right.cols() != m.cols() {
            return false;
        }
        if self.divisors.len() != m.rows().min(m.cols()) {
            return false;
        }
        if !self.left.is_unimodular() || !self.right.is_unimodular() {
            return false;
        }
        let monic = self.divisors.iter().all(|d| d.is_zero() || d.lc() == num_traits::One::one());
        let chain = self.divisors.windows(2).all(|w| w[0].divides(&w[1]));
        monic && chain && &(&self.left * m) * &self.right == self.diagonal()
    }

    /// Number of nonzero divisors.
    pub fn rank(&self) -> usize {
        self.divisors.iter().filter(|d| !d.is_zero()).count()
    }

    /// Divisors with the unit ones dropped, which is the usual way to list
    /// elementary divisors.
    pub fn nontrivial(&self) -> Vec<UPoly> {
        self.divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

fn reduce_pivot_column(a: &mut PolyMat, u: &mut PolyMat, t: usize) -> bool {
    let mut clean = true;
    for i in t + 1..a.rows() {
        let b = a.get(i, t).clone();
        if b.is_zero() {
            continue;
        }
        let p = a.get(t, t).clone();
        if let Some(q) = b.div_exact(&p) {
            let f = -&q;
            a.add_row_multiple(i, t, &f);
            u.add_row_multiple(i, t, &f);
        } else {
            let (g, s, r) = UPoly::ext_gcd(&p, &b);
            let k = [&s, &r, &-&b.div_exact(&g).unwrap(), &p.div_exact(&g).unwrap()];
            a.combine_rows(t, i, k);
            u.combine_rows(t, i, k);
            clean = false;
        }
    }
    clean
}

fn reduce_pivot_row(a: &mut PolyMat, v: &mut PolyMat, t: usize) -> bool {
    let mut clean = true;
    for j in t + 1..a.cols() {
        let b = a.get(t, j).clone();
        if b.is_zero() {
            continue;
        }
        let p = a.get(t, t).clone();
        if let Some(q) = b.div_exact(&p) {
            let f = -&q;
            a.add_col_multiple(j, t, &f);
            v.add_col_multiple(j, t, &f);
        } else {
            let (g, s, r) = UPoly::ext_gcd(&p, &b);
            let k = [&s, &r, &-&b.div_exact(&g).unwrap(), &p.div_exact(&g).unwrap()];
            a.combine_cols(t, j, k);
            v.combine_cols(t, j, k);
            clean = false;
        }
    }
    clean
}

/// Smith form by gcd elimination over `ℚ[x]`. Works for rectangular and
/// singular input.
pub fn smith_form(m: &PolyMat) -> SmithCert {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = PolyMat::identity(rows);
    let mut v = PolyMat::identity(cols);
    for t in 0..rows.min(cols) {
        // smallest-degree nonzero entry of the trailing block, first in
        // row-major order on ties
        let mut best: Option<(usize, usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if let Some(d) = a.get(i, j).degree() {
                    if best.is_none_or(|(bd, _, _)| d < bd) {
                        best = Some((d, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let col_clean = reduce_pivot_column(&mut a, &mut u, t);
            let row_clean = reduce_pivot_row(&mut a, &mut v, t);
            if !(col_clean && row_clean) {
                continue;
            }
            if (t + 1..rows).any(|i| !a.get(i, t).is_zero()) {
                continue;
            }
            // pivot must divide the whole trailing block
            let p = a.get(t, t).clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !p.divides(a.get(i, j))));
            match bad {
                Some(i) => {
                    a.add_row_multiple(t, i, &UPoly::one());
                    u.add_row_multiple(t, i, &UPoly::one());
                }
                None => break,
            }
        }
        let c = a.get(t, t).lc().recip();
        a.scale_row(t, &c);
        u.scale_row(t, &c);
    }
    let divisors = (0..rows.min(cols)).map(|i| a.get(i, i).clone()).collect();
    debug_assert!(is_unit(&u.det()) && is_unit(&v.det()));
    SmithCert {
        divisors,
        left: u,
        right: v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let m = PolyMat::from_int_coeffs(&[&[&[0, 1], &[]], &[&[], &[-1, 1]]]);
        let c = smith_form(&m);
        assert!(c.verify(&m));
        assert_eq!(c.divisors, vec![UPoly::one(), UPoly::from_ints(&[0, -1, 1])]);

        let m = PolyMat::from_int_coeffs(&[&[&[0, 1], &[1]], &[&[], &[0, 1]]]);
        let c = smith_form(&m);
        assert!(c.verify(&m));
        assert_eq!(c.divisors, vec![UPoly::one(), UPoly::from_ints(&[0, 0, 1])]);

        let c = smith_form(&PolyMat::identity(2));
        assert_eq!(c.divisors, vec![UPoly::one(), UPoly::one()]);
    }

    #[test]
    fn singular_and_rectangular() {
        let m = PolyMat::from_int_coeffs(&[&[&[0, 1], &[0, 2]], &[&[0, 2], &[0, 4]]]);
        let c = smith_form(&m);
        assert!(c.verify(&m));
        assert_eq!(c.divisors, vec![UPoly::from_ints(&[0, 1]), UPoly::zero()]);

        let m = PolyMat::from_int_coeffs(&[&[&[1, 1], &[0, 1], &[2]]]);
        let c = smith_form(&m);
        assert!(c.verify(&m));
        assert_eq!(c.divisors, vec![UPoly::one()]);
        assert!(smith_form(&PolyMat::zeros(2, 2)).divisors.iter().all(UPoly::is_zero));
    }
}
