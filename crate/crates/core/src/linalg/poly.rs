//! Univariate polynomials over GF(q): gcd, factorization (Berlekamp),
//! characteristic and minimal polynomials of matrices.

use super::field::{Elt, Fq};
use super::mat::{Mat, Span};

/// Coefficients constant-term first, no trailing zeros. The zero polynomial
/// is the empty vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    pub f: Fq,
    pub c: Vec<Elt>,
}

impl Poly {
    pub fn new(f: &Fq, mut c: Vec<Elt>) -> Poly {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { f: f.clone(), c }
    }

    pub fn zero(f: &Fq) -> Poly {
        Poly { f: f.clone(), c: vec![] }
    }

    pub fn one(f: &Fq) -> Poly {
        Poly { f: f.clone(), c: vec![1] }
    }

    pub fn x(f: &Fq) -> Poly {
        Poly { f: f.clone(), c: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 by convention of callers
    /// guarding on `is_zero` first.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Elt {
        *self.c.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.lead() == 1 {
            return self.clone();
        }
        let inv = self.f.inv(self.lead()).unwrap();
        Poly::new(&self.f, self.c.iter().map(|&a| self.f.mul(a, inv)).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0; n];
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            c[i] = self.f.add(a, b);
        }
        Poly::new(&self.f, c)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(&self.f, self.c.iter().map(|&a| self.f.neg(a)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.f);
        }
        let mut c = vec![0; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = self.f.add(c[i + j], self.f.mul(a, b));
            }
        }
        Poly::new(&self.f, c)
    }

    pub fn scale(&self, s: Elt) -> Poly {
        Poly::new(&self.f, self.c.iter().map(|&a| self.f.mul(a, s)).collect())
    }

    /// (quotient, remainder) with divisor nonzero.
    pub fn divmod(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero());
        let f = &self.f;
        let dinv = f.inv(d.lead()).unwrap();
        let mut rem = self.c.clone();
        if rem.len() < d.c.len() {
            return (Poly::zero(f), self.clone());
        }
        let qlen = rem.len() - d.c.len() + 1;
        let mut q = vec![0; qlen];
        for i in (0..qlen).rev() {
            let coef = f.mul(rem[i + d.c.len() - 1], dinv);
            q[i] = coef;
            if coef != 0 {
                for (j, &dc) in d.c.iter().enumerate() {
                    rem[i + j] = f.sub(rem[i + j], f.mul(coef, dc));
                }
            }
        }
        (Poly::new(f, q), Poly::new(f, rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divmod(d).1
    }

    /// Coefficient of x^i (0 when i exceeds the degree).
    pub fn coeff(&self, i: usize) -> Elt {
        self.c.get(i).copied().unwrap_or(0)
    }

    /// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
    pub fn xgcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let f = &a.f;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let ns = s0.sub(&q.mul(&s1));
            let nt = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = ns;
            t0 = t1;
            t1 = nt;
        }
        let lc = r0.lead();
        if lc != 0 && lc != 1 {
            let inv = f.inv(lc).expect("nonzero lead");
            r0 = r0.scale(inv);
            s0 = s0.scale(inv);
            t0 = t0.scale(inv);
        }
        (r0, s0, t0)
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        if self.c.len() <= 1 {
            return Poly::zero(&self.f);
        }
        let f = &self.f;
        let c = (1..self.c.len())
            .map(|i| {
                let mult = f.from_int(i as i64);
                f.mul(self.c[i], mult)
            })
            .collect();
        Poly::new(f, c)
    }

    pub fn eval(&self, x: Elt) -> Elt {
        let f = &self.f;
        let mut acc = 0;
        for &a in self.c.iter().rev() {
            acc = f.add(f.mul(acc, x), a);
        }
        acc
    }

    pub fn eval_mat(&self, m: &Mat) -> Mat {
        let f = m.field();
        let n = m.rows();
        let mut acc = Mat::zero(f, n, n);
        for &a in self.c.iter().rev() {
            acc = acc.mul(m).unwrap();
            if a != 0 {
                for i in 0..n {
                    acc.set(i, i, f.add(acc.get(i, i), a));
                }
            }
        }
        acc
    }

    /// Full factorization into monic irreducibles with multiplicities.
    pub fn factor(&self) -> Vec<(Poly, usize)> {
        assert!(!self.is_zero());
        let mut out: Vec<(Poly, usize)> = Vec::new();
        factor_into(&self.monic(), 1, &mut out);
        out.sort_by(|a, b| (a.0.deg(), &a.0.c).cmp(&(b.0.deg(), &b.0.c)));
        out
    }

    /// Distinct monic irreducible factors.
    pub fn irreducible_factors(&self) -> Vec<Poly> {
        self.factor().into_iter().map(|(p, _)| p).collect()
    }

    pub fn is_irreducible(&self) -> bool {
        self.deg() >= 1 && self.factor().len() == 1 && self.factor()[0].1 == 1
    }
}

fn factor_into(p: &Poly, mult: usize, out: &mut Vec<(Poly, usize)>) {
    let f = &p.f;
    if p.deg() == 0 {
        return;
    }
    if p.deg() == 1 {
        push_factor(out, p.monic(), mult);
        return;
    }
    let dp = p.derivative();
    if dp.is_zero() {
        // p = u(x)^p with u obtained by p-th roots of the x^{pk} coefficients
        let pr = f.p() as usize;
        let mut uc = Vec::new();
        for i in (0..p.c.len()).step_by(pr) {
            uc.push(f.frobenius_inv(p.c[i], 1));
        }
        let u = Poly::new(f, uc);
        factor_into(&u, mult * pr, out);
        return;
    }
    let g = p.gcd(&dp);
    if g.deg() == 0 {
        // squarefree: Berlekamp split
        for l in berlekamp_squarefree(p) {
            push_factor(out, l, mult);
        }
        return;
    }
    let (w, r) = p.divmod(&g);
    debug_assert!(r.is_zero());
    // w is squarefree; peel its factors off p with the right multiplicities
    let mut rest = p.monic();
    for l in berlekamp_squarefree(&w) {
        let mut m = 0;
        loop {
            let (q, r) = rest.divmod(&l);
            if r.is_zero() {
                rest = q;
                m += 1;
            } else {
                break;
            }
        }
        push_factor(out, l, mult * m);
    }
    if rest.deg() >= 1 {
        factor_into(&rest, mult, out);
    }
}

fn push_factor(out: &mut Vec<(Poly, usize)>, p: Poly, mult: usize) {
    for entry in out.iter_mut() {
        if entry.0 == p {
            entry.1 += mult;
            return;
        }
    }
    out.push((p, mult));
}

/// Berlekamp factorization of a squarefree monic polynomial.
fn berlekamp_squarefree(p: &Poly) -> Vec<Poly> {
    let f = &p.f;
    let n = p.deg();
    if n <= 1 {
        return vec![p.monic()];
    }
    // rows of Q: x^{iq} mod p
    let q = f.q();
    let xq = {
        // x^q mod p by square and multiply on polynomials
        let mut acc = Poly::one(f);
        let x = Poly::x(f);
        let mut base = x.rem(p);
        let mut e = q;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(p);
            }
            base = base.mul(&base).rem(p);
            e >>= 1;
        }
        acc
    };
    let mut qm = Mat::zero(f, n, n);
    let mut cur = Poly::one(f);
    for i in 0..n {
        for (j, &c) in cur.c.iter().enumerate() {
            qm.set(i, j, c);
        }
        cur = cur.mul(&xq).rem(p);
    }
    let diff = qm.sub(&Mat::identity(f, n)).unwrap();
    let null = diff.transpose().right_nullspace();
    if null.rows() == 1 {
        return vec![p.monic()];
    }
    // pick a non-constant element of the Berlekamp subalgebra and split
    let v = (0..null.rows())
        .map(|i| Poly::new(f, null.row(i).to_vec()))
        .find(|v| v.deg() >= 1)
        .expect("non-constant Berlekamp vector must exist when nullity > 1");
    let mut pieces = Vec::new();
    for c in f.elements().collect::<Vec<_>>() {
        let shifted = v.sub(&Poly::new(f, vec![c]));
        let g = p.gcd(&shifted);
        if g.deg() >= 1 && g.deg() < p.deg() {
            pieces.extend(berlekamp_squarefree(&g));
        }
    }
    if pieces.is_empty() {
        // v splits p over an extension only; this cannot happen for the
        // Berlekamp subalgebra over the ground field
        unreachable!("Berlekamp split found no factors");
    }
    pieces
}

/// Characteristic polynomial of a square matrix via Hessenberg reduction.
pub fn charpoly(m: &Mat) -> Poly {
    let f = m.field().clone();
    let n = m.rows();
    assert!(m.is_square());
    if n == 0 {
        return Poly::one(&f);
    }
    let mut h = m.clone();
    // similarity reduction to upper Hessenberg
    for j in 0..n.saturating_sub(2) {
        let piv = (j + 1..n).find(|&i| h.get(i, j) != 0);
        let Some(piv) = piv else { continue };
        if piv != j + 1 {
            // swap rows and columns piv, j+1
            for c in 0..n {
                let (a, b) = (h.get(piv, c), h.get(j + 1, c));
                h.set(piv, c, b);
                h.set(j + 1, c, a);
            }
            for r in 0..n {
                let (a, b) = (h.get(r, piv), h.get(r, j + 1));
                h.set(r, piv, b);
                h.set(r, j + 1, a);
            }
        }
        let pinv = f.inv(h.get(j + 1, j)).unwrap();
        for i in j + 2..n {
            let t = f.mul(h.get(i, j), pinv);
            if t == 0 {
                continue;
            }
            // row_i -= t * row_{j+1}; col_{j+1} += t * col_i
            for c in 0..n {
                let v = f.sub(h.get(i, c), f.mul(t, h.get(j + 1, c)));
                h.set(i, c, v);
            }
            for r in 0..n {
                let v = f.add(h.get(r, j + 1), f.mul(t, h.get(r, i)));
                h.set(r, j + 1, v);
            }
        }
    }
    // p_m = (x - h[m-1][m-1]) p_{m-1} - sum_i h[m-1-i][m-1] (prod subdiag) p_{m-1-i}
    let mut ps: Vec<Poly> = vec![Poly::one(&f)];
    for mm in 1..=n {
        let x = Poly::x(&f);
        let diag = Poly::new(&f, vec![h.get(mm - 1, mm - 1)]);
        let mut pm = x.sub(&diag).mul(&ps[mm - 1]);
        let mut subprod: Elt = 1;
        for i in 1..mm {
            // entry h[mm-i][mm-i-1] joins the subdiagonal product
            subprod = f.mul(subprod, h.get(mm - i, mm - i - 1));
            if subprod == 0 {
                break;
            }
            let coef = f.mul(h.get(mm - 1 - i, mm - 1), subprod);
            if coef != 0 {
                pm = pm.sub(&ps[mm - 1 - i].scale(coef));
            }
        }
        ps.push(pm);
    }
    ps.pop().unwrap()
}

/// Minimal polynomial of a square matrix, by the first linear dependence in
/// the sequence of vectorized powers.
pub fn minpoly(m: &Mat) -> Poly {
    let f = m.field().clone();
    let n = m.rows();
    assert!(m.is_square());
    if n == 0 {
        return Poly::one(&f);
    }
    let mut pows: Vec<Mat> = vec![Mat::identity(&f, n)];
    loop {
        let k = pows.len();
        let next = pows[k - 1].mul(m).unwrap();
        // does next lie in the span of the previous powers?
        let rows: Vec<Vec<Elt>> = pows.iter().map(|p| p.entries().to_vec()).collect();
        let span = Span::new(Mat::from_rows(&f, rows));
        if let Some(coords) = span.coords(next.entries()) {
            let mut c: Vec<Elt> = coords.iter().map(|&a| f.neg(a)).collect();
            c.push(1);
            return Poly::new(&f, c);
        }
        pows.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::Fq;

    #[test]
    fn divmod_gcd() {
        let f = Fq::prime(5).unwrap();
        // (x+1)(x+2) = x^2 + 3x + 2
        let a = Poly::new(&f, vec![1, 1]);
        let b = Poly::new(&f, vec![2, 1]);
        let p = a.mul(&b);
        assert_eq!(p.c, vec![2, 3, 1]);
        let (q, r) = p.divmod(&a);
        assert!(r.is_zero());
        assert_eq!(q, b);
        assert_eq!(p.gcd(&a), a.monic());
    }

    #[test]
    fn factor_examples() {
        let f = Fq::prime(2).unwrap();
        // x^2 + x + 1 irreducible over GF(2)
        let p = Poly::new(&f, vec![1, 1, 1]);
        assert!(p.is_irreducible());
        // x^2 + 1 = (x+1)^2
        let p = Poly::new(&f, vec![1, 0, 1]);
        let fac = p.factor();
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].1, 2);
        assert_eq!(fac[0].0.c, vec![1, 1]);
        // x^3 + x = x (x+1)^2
        let p = Poly::new(&f, vec![0, 1, 0, 1]);
        let fac = p.factor();
        let total: usize = fac.iter().map(|(l, m)| l.deg() * m).sum();
        assert_eq!(total, 3);
        assert_eq!(fac.len(), 2);
    }

    #[test]
    fn factor_frobenius_power() {
        let f = Fq::prime(3).unwrap();
        // (x^2+1)^3 = x^6 + 3x^4 ... computed in char 3: x^6 + 1... via mul
        let base = Poly::new(&f, vec![1, 0, 1]);
        let p = base.mul(&base).mul(&base);
        let fac = p.factor();
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0].1, 3);
        assert_eq!(fac[0].0, base.monic());
    }

    #[test]
    fn charpoly_matches_brute_force_2x2() {
        let f = Fq::prime(3).unwrap();
        for a in 0..3u16 {
            for b in 0..3u16 {
                for c in 0..3u16 {
                    for d in 0..3u16 {
                        let m = Mat::from_rows(&f, vec![vec![a, b], vec![c, d]]);
                        let p = charpoly(&m);
                        // x^2 - (a+d) x + (ad - bc)
                        let tr = f.add(a, d);
                        let det = f.sub(f.mul(a, d), f.mul(b, c));
                        assert_eq!(p.c, vec![det, f.neg(tr), 1], "m = {:?}", m);
                    }
                }
            }
        }
    }

    #[test]
    fn cayley_hamilton_and_minpoly() {
        let f = Fq::prime(2).unwrap();
        let m = Mat::from_rows(
            &f,
            vec![vec![0, 1, 0, 1], vec![1, 1, 0, 0], vec![0, 0, 1, 1], vec![1, 0, 1, 0]],
        );
        let cp = charpoly(&m);
        assert_eq!(cp.deg(), 4);
        assert!(cp.eval_mat(&m).is_zero());
        let mp = minpoly(&m);
        assert!(mp.eval_mat(&m).is_zero());
        // minpoly divides charpoly
        assert!(cp.rem(&mp).is_zero());
    }

    #[test]
    fn charpoly_nilpotent_jordan() {
        let f = Fq::prime(2).unwrap();
        let m = Mat::from_rows(&f, vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        assert_eq!(charpoly(&m).c, vec![0, 0, 0, 1]);
        assert_eq!(minpoly(&m).c, vec![0, 0, 0, 1]);
    }
}
