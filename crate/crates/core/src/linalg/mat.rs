//! Dense matrices over GF(q) with exact Gaussian elimination.

use super::field::{Elt, Fq};
use crate::error::{ModRepError, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    f: Fq,
    rows: usize,
    cols: usize,
    a: Vec<Elt>,
}

/// Result of reduced row echelon computation.
pub struct Rref {
    pub r: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.f)?;
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| self.f.format_elt(self.get(i, j))).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Elt;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Elt {
        &self.a[i * self.cols + j]
    }
}

impl Mat {
    pub fn zero(f: &Fq, rows: usize, cols: usize) -> Mat {
        Mat { f: f.clone(), rows, cols, a: vec![0; rows * cols] }
    }

    pub fn identity(f: &Fq, n: usize) -> Mat {
        let mut m = Mat::zero(f, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(f: &Fq, rows: Vec<Vec<Elt>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        Mat { f: f.clone(), rows: r, cols: c, a: rows.concat() }
    }

    pub fn from_fn(f: &Fq, rows: usize, cols: usize, mut g: impl FnMut(usize, usize) -> Elt) -> Mat {
        let mut a = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                a.push(g(i, j));
            }
        }
        Mat { f: f.clone(), rows, cols, a }
    }

    /// Row vector from a slice.
    pub fn row_vec(f: &Fq, v: &[Elt]) -> Mat {
        Mat { f: f.clone(), rows: 1, cols: v.len(), a: v.to_vec() }
    }

    /// Column vector from a slice.
    pub fn col_vec(f: &Fq, v: &[Elt]) -> Mat {
        Mat { f: f.clone(), rows: v.len(), cols: 1, a: v.to_vec() }
    }

    pub fn field(&self) -> &Fq {
        &self.f
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elt {
        self.a[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elt) {
        self.a[i * self.cols + j] = v;
    }
    pub fn entries(&self) -> &[Elt] {
        &self.a
    }
    pub fn row(&self, i: usize) -> &[Elt] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }
    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u16::from(i == j)))
    }

    fn check_field(&self, o: &Mat) -> Result<()> {
        if self.f != o.f {
            return Err(ModRepError::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &Mat) -> Result<Mat> {
        self.check_field(o)?;
        if self.rows != o.rows || self.cols != o.cols {
            return Err(ModRepError::DimMismatch(format!(
                "add {}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let a = self.a.iter().zip(&o.a).map(|(&x, &y)| self.f.add(x, y)).collect();
        Ok(Mat { f: self.f.clone(), rows: self.rows, cols: self.cols, a })
    }

    pub fn sub(&self, o: &Mat) -> Result<Mat> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Mat {
        let a = self.a.iter().map(|&x| self.f.neg(x)).collect();
        Mat { f: self.f.clone(), rows: self.rows, cols: self.cols, a }
    }

    pub fn scale(&self, c: Elt) -> Mat {
        let a = self.a.iter().map(|&x| self.f.mul(x, c)).collect();
        Mat { f: self.f.clone(), rows: self.rows, cols: self.cols, a }
    }

    pub fn mul(&self, o: &Mat) -> Result<Mat> {
        self.check_field(o)?;
        if self.cols != o.rows {
            return Err(ModRepError::DimMismatch(format!(
                "mul {}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let f = &self.f;
        let mut out = Mat::zero(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x == 0 {
                    continue;
                }
                let orow = o.row(k);
                let dst = &mut out.a[i * o.cols..(i + 1) * o.cols];
                if x == 1 {
                    for (d, &y) in dst.iter_mut().zip(orow) {
                        *d = f.add(*d, y);
                    }
                } else {
                    for (d, &y) in dst.iter_mut().zip(orow) {
                        *d = f.add(*d, f.mul(x, y));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.f, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn kronecker(&self, o: &Mat) -> Result<Mat> {
        self.check_field(o)?;
        let f = &self.f;
        let mut out = Mat::zero(f, self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if x == 0 {
                    continue;
                }
                for r in 0..o.rows {
                    for c in 0..o.cols {
                        out.set(i * o.rows + r, j * o.cols + c, f.mul(x, o.get(r, c)));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn hstack(&self, o: &Mat) -> Result<Mat> {
        self.check_field(o)?;
        if self.rows != o.rows {
            return Err(ModRepError::DimMismatch("hstack".into()));
        }
        Ok(Mat::from_fn(&self.f, self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                o.get(i, j - self.cols)
            }
        }))
    }

    pub fn vstack(&self, o: &Mat) -> Result<Mat> {
        self.check_field(o)?;
        if self.cols != o.cols {
            return Err(ModRepError::DimMismatch("vstack".into()));
        }
        let mut a = self.a.clone();
        a.extend_from_slice(&o.a);
        Ok(Mat { f: self.f.clone(), rows: self.rows + o.rows, cols: self.cols, a })
    }

    pub fn vstack_all(f: &Fq, mats: &[Mat]) -> Mat {
        if mats.is_empty() {
            return Mat::zero(f, 0, 0);
        }
        let cols = mats[0].cols;
        let rows = mats.iter().map(|m| m.rows).sum();
        let mut a = Vec::with_capacity(rows * cols);
        for m in mats {
            assert_eq!(m.cols, cols);
            a.extend_from_slice(&m.a);
        }
        Mat { f: f.clone(), rows, cols, a }
    }

    pub fn hstack_all(f: &Fq, mats: &[Mat]) -> Mat {
        if mats.is_empty() {
            return Mat::zero(f, 0, 0);
        }
        let rows = mats[0].rows;
        let cols: usize = mats.iter().map(|m| m.cols).sum();
        let mut out = Mat::zero(f, rows, cols);
        let mut off = 0;
        for m in mats {
            assert_eq!(m.rows, rows);
            for i in 0..rows {
                for j in 0..m.cols {
                    out.set(i, off + j, m.get(i, j));
                }
            }
            off += m.cols;
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        Mat::from_fn(&self.f, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    /// Block diagonal assembly.
    pub fn block_diag(f: &Fq, blocks: &[Mat]) -> Mat {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zero(f, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(ro + i, co + j, b.get(i, j));
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    /// In-place row reduction; returns pivot columns. Shared kernel of rref
    /// and the transform-carrying variant.
    fn reduce(&mut self, carry: Option<&mut Mat>) -> Vec<usize> {
        let f = self.f.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut carry = carry;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            // find pivot
            let mut pr = None;
            for i in r..rows {
                if self.get(i, c) != 0 {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            if pr != r {
                self.swap_rows(pr, r);
                if let Some(t) = carry.as_deref_mut() {
                    t.swap_rows(pr, r);
                }
            }
            let pv = self.get(r, c);
            if pv != 1 {
                let inv = f.inv(pv).unwrap();
                self.scale_row(r, inv);
                if let Some(t) = carry.as_deref_mut() {
                    t.scale_row(r, inv);
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let x = self.get(i, c);
                if x != 0 {
                    let m = f.neg(x);
                    self.axpy_row(i, r, m, c);
                    if let Some(t) = carry.as_deref_mut() {
                        t.axpy_row(i, r, m, 0);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn scale_row(&mut self, i: usize, s: Elt) {
        let f = self.f.clone();
        for c in 0..self.cols {
            let v = self.get(i, c);
            self.set(i, c, f.mul(v, s));
        }
    }

    /// row_i += s * row_j, starting from column `from`.
    fn axpy_row(&mut self, i: usize, j: usize, s: Elt, from: usize) {
        let f = self.f.clone();
        let cols = self.cols;
        if s == 1 {
            for c in from..cols {
                let y = self.a[j * cols + c];
                if y != 0 {
                    let x = self.a[i * cols + c];
                    self.a[i * cols + c] = f.add(x, y);
                }
            }
        } else {
            for c in from..cols {
                let y = self.a[j * cols + c];
                if y != 0 {
                    let x = self.a[i * cols + c];
                    self.a[i * cols + c] = f.add(x, f.mul(s, y));
                }
            }
        }
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.reduce(None);
        Rref { rank: pivots.len(), r: m, pivots }
    }

    /// Rref together with an invertible transform T with T * self = rref.
    pub fn rref_with_transform(&self) -> (Rref, Mat) {
        let mut m = self.clone();
        let mut t = Mat::identity(&self.f, self.rows);
        let pivots = m.reduce(Some(&mut t));
        (Rref { rank: pivots.len(), r: m, pivots }, t)
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of { v : self * v^T = 0 }, returned as rows. Row count equals
    /// cols - rank.
    pub fn right_nullspace(&self) -> Mat {
        let Rref { r, rank, pivots } = self.rref();
        let f = &self.f;
        let cols = self.cols;
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zero(f, free.len(), cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (pi, &pc) in pivots.iter().enumerate().take(rank) {
                out.set(k, pc, f.neg(r.get(pi, fc)));
            }
        }
        out
    }

    /// Basis for the row space, as the nonzero rows of the rref.
    pub fn row_basis(&self) -> Mat {
        let Rref { r, rank, .. } = self.rref();
        r.submatrix(&(0..rank).collect::<Vec<_>>(), &(0..self.cols).collect::<Vec<_>>())
    }

    /// Basis for the column space, as columns.
    pub fn col_basis(&self) -> Mat {
        self.transpose().row_basis().transpose()
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let (rr, t) = self.rref_with_transform();
        if rr.rank == self.rows {
            Some(t)
        } else {
            None
        }
    }

    /// Solve X * self = rhs for X (row-space solve); None if inconsistent.
    pub fn solve_left(&self, rhs: &Mat) -> Option<Mat> {
        // X * A = B  <=>  A^T X^T = B^T
        self.transpose().solve_right(&rhs.transpose()).map(|x| x.transpose())
    }

    /// Solve self * X = rhs for X; None if inconsistent.
    pub fn solve_right(&self, rhs: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hstack(rhs).unwrap();
        let Rref { r, rank, pivots } = aug.rref();
        // any pivot in the rhs block means inconsistency
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let f = &self.f;
        let mut x = Mat::zero(f, self.cols, rhs.cols);
        for (pi, &pc) in pivots.iter().enumerate().take(rank) {
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(pi, self.cols + j));
            }
        }
        Some(x)
    }

    /// The trace of a square matrix.
    pub fn trace(&self) -> Elt {
        assert!(self.is_square());
        let mut t = 0;
        for i in 0..self.rows {
            t = self.f.add(t, self.get(i, i));
        }
        t
    }

    /// self^n by repeated squaring.
    pub fn pow(&self, mut n: u64) -> Mat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Mat::identity(&self.f, self.rows);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            base = base.mul(&base).unwrap();
            n >>= 1;
        }
        acc
    }
}

/// A row-space membership and coordinate solver over a fixed spanning set.
///
/// Holds the rref of the spanning rows plus the transform back to the
/// original spanning vectors, so vectors can be expressed in the original
/// (not echelonized) basis.
pub struct Span {
    basis: Mat,
    rref: Mat,
    pivots: Vec<usize>,
    /// coords of each rref row in terms of the original rows
    back: Mat,
    rank: usize,
}

impl Span {
    /// Build from spanning rows. If `rows` are linearly independent the
    /// coordinate solve is exact in that basis.
    pub fn new(rows: Mat) -> Span {
        let (Rref { r, rank, pivots }, t) = rows.rref_with_transform();
        // rows of t beyond rank express the dependencies; the first `rank`
        // rows express rref rows in the original basis
        let idx: Vec<usize> = (0..rank).collect();
        let allc: Vec<usize> = (0..rows.cols()).collect();
        let tcols: Vec<usize> = (0..rows.rows()).collect();
        Span {
            rref: r.submatrix(&idx, &allc),
            back: t.submatrix(&idx, &tcols),
            basis: rows,
            pivots: pivots.into_iter().take(rank).collect(),
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn rref_basis(&self) -> &Mat {
        &self.rref
    }

    pub fn contains(&self, v: &[Elt]) -> bool {
        self.coords_rref(v).is_some()
    }

    /// Coordinates of v in the rref basis, if v lies in the span.
    fn coords_rref(&self, v: &[Elt]) -> Option<Vec<Elt>> {
        let f = self.rref.field().clone();
        let mut w = v.to_vec();
        let mut coords = vec![0; self.rank];
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c != 0 {
                coords[i] = c;
                let m = f.neg(c);
                for j in 0..w.len() {
                    let rv = self.rref.get(i, j);
                    if rv != 0 {
                        w[j] = f.add(w[j], f.mul(m, rv));
                    }
                }
            }
        }
        if w.iter().all(|&x| x == 0) {
            Some(coords)
        } else {
            None
        }
    }

    /// Coordinates of v in terms of the ORIGINAL spanning rows, if v lies in
    /// the span. Meaningful when the spanning rows are independent.
    pub fn coords(&self, v: &[Elt]) -> Option<Vec<Elt>> {
        let d = self.coords_rref(v)?;
        let dm = Mat::row_vec(self.rref.field(), &d);
        let c = dm.mul(&self.back).unwrap();
        Some(c.entries().to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::Fq;
    use proptest::prelude::*;

    fn gf2() -> Fq {
        Fq::prime(2).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let f = gf2();
        let i2 = Mat::identity(&f, 2);
        let r = i2.rref();
        assert_eq!(r.r, i2);
        assert_eq!(r.rank, 2);
        let z = Mat::zero(&f, 3, 3);
        let r = z.rref();
        assert!(r.r.is_zero());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_hand_elimination() {
        let f = gf2();
        let m = Mat::from_rows(&f, vec![vec![1, 1], vec![1, 1]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.r, Mat::from_rows(&f, vec![vec![1, 1], vec![0, 0]]));
    }

    #[test]
    fn nullspace_examples() {
        let f = gf2();
        assert_eq!(Mat::identity(&f, 4).right_nullspace().rows(), 0);
        assert_eq!(Mat::zero(&f, 2, 3).right_nullspace().rows(), 3);
        let m = Mat::from_rows(&f, vec![vec![1, 1]]);
        let n = m.right_nullspace();
        assert_eq!(n.rows(), 1);
        assert_eq!(n.row(0), &[1, 1]);
    }

    #[test]
    fn kronecker_examples() {
        let f = gf2();
        let i2 = Mat::identity(&f, 2);
        let i3 = Mat::identity(&f, 3);
        assert_eq!(i2.kronecker(&i3).unwrap(), Mat::identity(&f, 6));
        let a = Mat::from_rows(&f, vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(a.kronecker(&Mat::identity(&f, 1)).unwrap(), a);
        let b = Mat::from_rows(&f, vec![vec![1], vec![1]]);
        let k = a.kronecker(&b).unwrap();
        let expect =
            Mat::from_rows(&f, vec![vec![1, 1], vec![1, 1], vec![0, 1], vec![0, 1]]);
        assert_eq!(k, expect);
    }

    #[test]
    fn solve_and_inverse() {
        let f = Fq::prime(3).unwrap();
        let m = Mat::from_rows(&f, vec![vec![1, 2], vec![2, 2]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let rhs = Mat::from_rows(&f, vec![vec![1], vec![0]]);
        let x = m.solve_right(&rhs).unwrap();
        assert_eq!(m.mul(&x).unwrap(), rhs);
    }

    #[test]
    fn span_coords() {
        let f = Fq::prime(3).unwrap();
        let b = Mat::from_rows(&f, vec![vec![1, 1, 0], vec![0, 1, 1]]);
        let s = Span::new(b);
        // v = 2*b0 + 1*b1
        let v = [2, 0, 1];
        assert_eq!(s.coords(&v).unwrap(), vec![2, 1]);
        assert!(!s.contains(&[1, 0, 0]));
    }

    fn arb_mat(q: u64) -> impl Strategy<Value = Mat> {
        (1usize..6, 1usize..6).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(0..q as u16, r * c).prop_map(move |a| {
                let f = if q == 4 { Fq::gf(2, 2).unwrap() } else { Fq::prime(q).unwrap() };
                Mat { f, rows: r, cols: c, a }
            })
        })
    }

    proptest! {
        #[test]
        fn rref_idempotent(m in arb_mat(2), m3 in arb_mat(3), m4 in arb_mat(4)) {
            for m in [m, m3, m4] {
                let r = m.rref();
                let r2 = r.r.rref();
                prop_assert_eq!(&r2.r, &r.r);
                prop_assert_eq!(r2.rank, r.rank);
            }
        }

        #[test]
        fn rank_nullity(m in arb_mat(3)) {
            let n = m.right_nullspace();
            prop_assert_eq!(m.rank() + n.rows(), m.cols());
            // exactness: every nullspace row is killed by m
            for i in 0..n.rows() {
                let v = Mat::col_vec(m.field(), n.row(i));
                prop_assert!(m.mul(&v).unwrap().is_zero());
                // rows independent
            }
            prop_assert_eq!(n.rank(), n.rows());
        }

        #[test]
        fn product_rank_bound(a in arb_mat(2), b in arb_mat(2)) {
            if a.cols() == b.rows() {
                let p = a.mul(&b).unwrap();
                prop_assert!(p.rank() <= a.rank().min(b.rank()));
            }
        }
    }
}
