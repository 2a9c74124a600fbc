//! Matrices over `ℚ[x]`.
//!
//! Entries are [`UPoly`] in `x`. Most operations expect square input but
//! the type itself is rectangular so that stacked generator lists and
//! transforms can share the same code.

mod congruence;
mod hermite;
mod smith;

pub use congruence::{congruence_search_bounded, congruence_verify, is_star_symmetric, StarForm};
pub(crate) use congruence::unimodular_candidates;
pub use hermite::{hermite_left_generator, row_hnf, Echelon, HermiteCert, LeftGenerator};
pub use smith::{smith_form, SmithCert};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;
use rand::Rng;

use crate::error::{CendError, Result};
use crate::poly::{rat, MPoly, Rat, Subst, UPoly, Var};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMat {
    rows: usize,
    cols: usize,
    entries: Vec<UPoly>,
}

impl PolyMat {
    pub fn zeros(rows: usize, cols: usize) -> PolyMat {
        PolyMat {
            rows,
            cols,
            entries: vec![UPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> PolyMat {
        PolyMat::scalar(n, UPoly::one())
    }

    /// `c·I`.
    pub fn scalar(n: usize, c: UPoly) -> PolyMat {
        PolyMat::diag(&vec![c; n])
    }

    pub fn diag(d: &[UPoly]) -> PolyMat {
        let mut m = PolyMat::zeros(d.len(), d.len());
        for (i, p) in d.iter().enumerate() {
            m.set(i, i, p.clone());
        }
        m
    }

    /// Builds from rows; fails when they are ragged.
    pub fn from_rows(rows: Vec<Vec<UPoly>>) -> Result<PolyMat> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(CendError::Mismatch("ragged matrix rows".into()));
        }
        Ok(PolyMat {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer coefficient lists per entry, lowest degree first.
    pub fn from_int_coeffs(rows: &[&[&[i64]]]) -> PolyMat {
        PolyMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|c| UPoly::from_ints(c)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    /// Matrix unit `E_ij` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> PolyMat {
        let mut m = PolyMat::zeros(n, n);
        m.set(i, j, UPoly::one());
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix.
    pub fn size(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &UPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: UPoly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[UPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &UPoly> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(UPoly::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(UPoly::is_constant)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(UPoly::degree).max()
    }

    pub fn map(&self, f: impl Fn(&UPoly) -> UPoly) -> PolyMat {
        PolyMat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> PolyMat {
        let mut t = PolyMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &Rat) -> PolyMat {
        self.map(|p| p.scale(c))
    }

    /// Entrywise `p(x + α)`.
    pub fn shift(&self, alpha: &Rat) -> PolyMat {
        self.map(|p| p.shift(alpha))
    }

    /// `M(-x + α)^t`.
    pub fn star(&self, alpha: &Rat) -> PolyMat {
        self.map(|p| p.reflect(alpha)).transpose()
    }

    /// Entries as [`MPoly`] in `x`, then a substitution for `x`.
    pub fn to_mpolys_at(&self, x_to: &MPoly) -> Vec<MPoly> {
        let s = Subst::new().with(Var::X, x_to.clone());
        self.entries
            .iter()
            .map(|p| p.to_mpoly(Var::X).substitute(&s))
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row_dst += f · row_src`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, f: &UPoly) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(dst, j) + &(f * self.get(src, j));
            self.set(dst, j, v);
        }
    }

    /// `col_dst += col_src · f`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, f: &UPoly) {
        if f.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, dst) + &(self.get(i, src) * f);
            self.set(i, dst, v);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &Rat) {
        for j in 0..self.cols {
            let v = self.get(i, j).scale(c);
            self.set(i, j, v);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &Rat) {
        for i in 0..self.rows {
            let v = self.get(i, j).scale(c);
            self.set(i, j, v);
        }
    }

    /// Rows `a` and `b` replaced by `[[s, t], [u, v]] · [row_a; row_b]`.
    pub fn combine_rows(&mut self, a: usize, b: usize, k: [&UPoly; 4]) {
        let [s, t, u, v] = k;
        for j in 0..self.cols {
            let (ra, rb) = (self.get(a, j).clone(), self.get(b, j).clone());
            self.set(a, j, &(s * &ra) + &(t * &rb));
            self.set(b, j, &(u * &ra) + &(v * &rb));
        }
    }

    /// Columns `a` and `b` replaced by `[col_a, col_b] · [[s, u], [t, v]]`.
    pub fn combine_cols(&mut self, a: usize, b: usize, k: [&UPoly; 4]) {
        let [s, t, u, v] = k;
        for i in 0..self.rows {
            let (ca, cb) = (self.get(i, a).clone(), self.get(i, b).clone());
            self.set(i, a, &(&ca * s) + &(&cb * t));
            self.set(i, b, &(&ca * u) + &(&cb * v));
        }
    }

    /// Fraction-free (Bareiss) determinant; every division is exact in ℚ[x].
    pub fn det(&self) -> UPoly {
        assert!(self.is_square(), "det of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return UPoly::one();
        }
        let mut a = self.clone();
        let mut sign = Rat::one();
        let mut prev = UPoly::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return UPoly::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(a.get(k, k) * a.get(i, j)) - &(a.get(i, k) * a.get(k, j));
                    let q = num.div_exact(&prev).expect("Bareiss division is exact");
                    a.set(i, j, q);
                }
                a.set(i, k, UPoly::zero());
            }
            prev = a.get(k, k).clone();
        }
        a.get(n - 1, n - 1).scale(&sign)
    }

    /// Laplace expansion along the first row; an independent check on
    /// [`PolyMat::det`].
    pub fn det_cofactor(&self) -> UPoly {
        assert!(self.is_square(), "det of a non-square matrix");
        let n = self.rows;
        match n {
            0 => UPoly::one(),
            1 => self.get(0, 0).clone(),
            _ => {
                let mut acc = UPoly::zero();
                for j in 0..n {
                    if self.get(0, j).is_zero() {
                        continue;
                    }
                    let term = self.get(0, j) * &self.minor(0, j).det_cofactor();
                    acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Deletes row `r` and column `c`.
    pub fn minor(&self, r: usize, c: usize) -> PolyMat {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMat {
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
        }
    }

    pub fn adjugate(&self) -> PolyMat {
        let n = self.size();
        if n == 1 {
            return PolyMat::identity(1);
        }
        let mut adj = PolyMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det();
                adj.set(j, i, if (i + j) % 2 == 0 { c } else { -c });
            }
        }
        adj
    }

    /// Nonzero constant determinant.
    pub fn is_unimodular(&self) -> bool {
        self.is_square() && {
            let d = self.det();
            !d.is_zero() && d.is_constant()
        }
    }

    /// Inverse over `ℚ[x]`, which exists exactly for unimodular input.
    pub fn inverse(&self) -> Option<PolyMat> {
        if !self.is_square() {
            return None;
        }
        let d = self.det();
        if d.is_zero() || !d.is_constant() {
            return None;
        }
        Some(self.adjugate().scale(&d.lc().recip()))
    }

    /// `X` with `self = X · right`, if it exists over `ℚ[x]`.
    pub fn right_divide(&self, right: &PolyMat) -> Option<PolyMat> {
        let d = right.det();
        if d.is_zero() {
            return None;
        }
        let num = self * &right.adjugate();
        let mut out = PolyMat::zeros(num.rows, num.cols);
        for (k, e) in num.entries.iter().enumerate() {
            out.entries[k] = e.div_exact(&d)?;
        }
        Some(out)
    }

    /// Rational constant matrix, if every entry is constant.
    pub fn constant_part(&self) -> Option<Vec<Rat>> {
        self.is_constant().then(|| self.entries.iter().map(|p| p.coeff(0)).collect())
    }

    /// Random entries with degrees `<= max_deg` and integer coefficients in
    /// `-range..=range`.
    pub fn random<R: Rng>(rng: &mut R, rows: usize, cols: usize, max_deg: usize, range: i64) -> PolyMat {
        let mut m = PolyMat::zeros(rows, cols);
        for e in m.entries.iter_mut() {
            let deg = rng.gen_range(0..=max_deg);
            *e = UPoly::new((0..=deg).map(|_| rat(rng.gen_range(-range..=range))).collect());
        }
        m
    }

    /// A random unimodular matrix built from transvections with entries
    /// of degree `<= max_deg`, row swaps and a constant diagonal.
    pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, max_deg: usize, steps: usize) -> PolyMat {
        let mut m = PolyMat::identity(n);
        for _ in 0..steps {
            if n >= 2 {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                let deg = rng.gen_range(0..=max_deg);
                let f = UPoly::new((0..=deg).map(|_| rat(rng.gen_range(-2..=2))).collect());
                m.add_row_multiple(i, j, &f);
                if rng.gen_bool(0.2) {
                    m.swap_rows(i, j);
                }
            }
        }
        for i in 0..n {
            let c = [1, -1, 2, -3][rng.gen_range(0..4)];
            m.scale_row(i, &rat(c));
        }
        m
    }
}

impl Mul<&PolyMat> for &PolyMat {
    type Output = PolyMat;
    fn mul(self, rhs: &PolyMat) -> PolyMat {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = PolyMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

impl Add<&PolyMat> for &PolyMat {
    type Output = PolyMat;
    fn add(self, rhs: &PolyMat) -> PolyMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        PolyMat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&PolyMat> for &PolyMat {
    type Output = PolyMat;
    fn sub(self, rhs: &PolyMat) -> PolyMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        PolyMat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &PolyMat {
    type Output = PolyMat;
    fn neg(self) -> PolyMat {
        self.map(|p| -p)
    }
}

impl fmt::Display for PolyMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
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

impl fmt::Debug for PolyMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMat{self}")
    }
}

/// `true` when `d` is a nonzero rational constant.
pub(crate) fn is_unit(d: &UPoly) -> bool {
    !d.is_zero() && d.is_constant()
}

