//! Finite-dimensional associative algebras over GF(q), given by structure
//! constants: group algebras, centers, quotients, the Jacobson radical in
//! characteristic p, and primitive idempotents of commutative algebras.
//!
//! Conventions: algebra elements are coefficient row vectors in the stored
//! basis. `left_mult(a)` is the matrix with `a * x == x * left_mult(a)` for
//! row vectors `x`; modules elsewhere use column vectors so that action
//! matrices compose covariantly.

use crate::error::{ModRepError, Result};
use crate::linalg::{charpoly, minpoly, Elt, Fq, Mat, Poly, Span};
use crate::perm::PermGroup;

#[derive(Clone)]
pub struct FDAlgebra {
    f: Fq,
    dim: usize,
    /// sc[i].row(j) = e_i * e_j as a row vector.
    sc: Vec<Mat>,
    unit: Vec<Elt>,
    labels: Option<Vec<String>>,
    /// Optional symmetrising linear form lambda with lambda(ab) = lambda(ba).
    sym_form: Option<Vec<Elt>>,
    /// Optional known generating set (as a unital algebra); speeds up
    /// intertwiner computations.
    gens: Option<Vec<Vec<Elt>>>,
}

impl std::fmt::Debug for FDAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FDAlgebra(dim {}, q={})", self.dim, self.f.q())
    }
}

impl FDAlgebra {
    pub fn new(f: Fq, sc: Vec<Mat>, unit: Vec<Elt>) -> Result<FDAlgebra> {
        let dim = sc.len();
        for m in &sc {
            if m.rows() != dim || m.cols() != dim {
                return Err(ModRepError::DimMismatch("structure constant table shape".into()));
            }
        }
        if unit.len() != dim {
            return Err(ModRepError::DimMismatch("unit vector length".into()));
        }
        Ok(FDAlgebra { f, dim, sc, unit, labels: None, sym_form: None, gens: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> FDAlgebra {
        self.labels = Some(labels);
        self
    }

    pub fn with_sym_form(mut self, form: Vec<Elt>) -> FDAlgebra {
        self.sym_form = Some(form);
        self
    }

    pub fn with_gens(mut self, gens: Vec<Vec<Elt>>) -> FDAlgebra {
        self.gens = Some(gens);
        self
    }

    /// A generating set as a unital algebra: the stored one when known,
    /// otherwise computed greedily.
    pub fn generating_elements(&self) -> Vec<Vec<Elt>> {
        if let Some(g) = &self.gens {
            return g.clone();
        }
        let mut gens: Vec<Vec<Elt>> = Vec::new();
        let mut span_rows = Mat::from_rows(&self.f, vec![self.unit.clone()]);
        while span_rows.rows() < self.dim {
            let sp = Span::new(span_rows.clone());
            let next = (0..self.dim)
                .map(|i| self.basis_elem(i))
                .find(|e| !sp.contains(e))
                .expect("span is proper");
            gens.push(next.clone());
            // close the span under multiplication by all chosen generators
            let mut rows = span_rows;
            rows = rows.vstack(&Mat::from_rows(&self.f, vec![next])).expect("width");
            loop {
                let mut prods: Vec<Vec<Elt>> = Vec::new();
                for r in 0..rows.rows() {
                    for g in &gens {
                        prods.push(self.mul(rows.row(r), g));
                        prods.push(self.mul(g, rows.row(r)));
                    }
                }
                let stacked =
                    rows.vstack(&Mat::from_rows(&self.f, prods)).expect("width").row_basis();
                if stacked.rows() == rows.rows() {
                    break;
                }
                rows = stacked;
            }
            span_rows = rows.row_basis();
        }
        gens
    }

    /// Full associativity and unit check; O(dim^4), for untrusted input.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            let ei = self.basis_elem(i);
            if self.mul(&self.unit, &ei) != ei || self.mul(&ei, &self.unit) != ei {
                return Err(ModRepError::AlgebraMismatch("unit axiom fails".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let eij = self.sc[i].row(j).to_vec();
                for k in 0..n {
                    let lhs = self.mul(&eij, &self.basis_elem(k));
                    let rhs = self.mul(&self.basis_elem(i), self.sc[j].row(k));
                    if lhs != rhs {
                        return Err(ModRepError::AlgebraMismatch(format!(
                            "associativity fails at ({},{},{})",
                            i, j, k
                        )));
                    }
                }
            }
        }
        if let Some(form) = &self.sym_form {
            for i in 0..n {
                for j in 0..n {
                    let ab = self.sc[i].row(j);
                    let ba = self.sc[j].row(i);
                    if self.apply_form(form, ab) != self.apply_form(form, ba) {
                        return Err(ModRepError::AlgebraMismatch(
                            "form is not symmetrising".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply_form(&self, form: &[Elt], a: &[Elt]) -> Elt {
        let mut s = 0;
        for (x, y) in form.iter().zip(a) {
            s = self.f.add(s, self.f.mul(*x, *y));
        }
        s
    }

    /// The group algebra kG with basis the enumerated group elements and the
    /// standard symmetrising form (coefficient of the identity).
    /// The base field as a one-dimensional algebra.
    pub fn scalars(f: &Fq) -> FDAlgebra {
        FDAlgebra::new(f.clone(), vec![Mat::identity(f, 1)], vec![1]).expect("consistent")
    }

    pub fn group_algebra(f: &Fq, g: &PermGroup) -> FDAlgebra {
        let n = g.order();
        let sc: Vec<Mat> = (0..n)
            .map(|i| Mat::from_fn(f, n, n, |j, k| if g.mul(i, j) == k { 1 } else { 0 }))
            .collect();
        let mut unit = vec![0; n];
        unit[g.identity()] = 1;
        let mut form = vec![0; n];
        form[g.identity()] = 1;
        let gens = g
            .generator_indices()
            .into_iter()
            .map(|gi| {
                let mut v = vec![0; n];
                v[gi] = 1;
                v
            })
            .collect();
        FDAlgebra { f: f.clone(), dim: n, sc, unit, labels: None, sym_form: Some(form), gens: None }
            .with_labels(group_element_labels(g))
            .with_gens(gens)
    }

    pub fn field(&self) -> &Fq {
        &self.f
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn unit(&self) -> &[Elt] {
        &self.unit
    }
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
    pub fn sym_form(&self) -> Option<&[Elt]> {
        self.sym_form.as_deref()
    }
    pub fn structure_constants(&self) -> &[Mat] {
        &self.sc
    }

    pub fn zero_elem(&self) -> Vec<Elt> {
        vec![0; self.dim]
    }

    pub fn basis_elem(&self, i: usize) -> Vec<Elt> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    /// Matrix of x -> a*x on row vectors (apply as x * L).
    pub fn left_mult(&self, a: &[Elt]) -> Mat {
        let mut m = Mat::zero(&self.f, self.dim, self.dim);
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.sc[i].scale(c)).expect("square dims");
            }
        }
        m
    }

    /// Matrix of x -> x*a on row vectors (apply as x * R).
    pub fn right_mult(&self, a: &[Elt]) -> Mat {
        Mat::from_rows(
            &self.f,
            (0..self.dim)
                .map(|i| {
                    Mat::row_vec(&self.f, a).mul(&self.sc[i]).expect("dims").row(0).to_vec()
                })
                .collect(),
        )
    }

    pub fn mul(&self, a: &[Elt], b: &[Elt]) -> Vec<Elt> {
        let mut out = vec![0; self.dim];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let c = self.f.mul(ai, bj);
                let row = &self.sc[i];
                for k in 0..self.dim {
                    let s = row.get(j, k);
                    if s != 0 {
                        out[k] = self.f.add(out[k], self.f.mul(c, s));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[Elt], b: &[Elt]) -> Vec<Elt> {
        a.iter().zip(b).map(|(&x, &y)| self.f.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[Elt], b: &[Elt]) -> Vec<Elt> {
        a.iter().zip(b).map(|(&x, &y)| self.f.sub(x, y)).collect()
    }

    pub fn scale(&self, c: Elt, a: &[Elt]) -> Vec<Elt> {
        a.iter().map(|&x| self.f.mul(c, x)).collect()
    }

    pub fn pow(&self, a: &[Elt], mut n: u64) -> Vec<Elt> {
        let mut base = a.to_vec();
        let mut acc = self.unit.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    pub fn is_idempotent(&self, a: &[Elt]) -> bool {
        self.mul(a, a) == a
    }

    pub fn is_unit_elem(&self, a: &[Elt]) -> bool {
        self.left_mult(a).rank() == self.dim
    }

    pub fn is_zero(&self, a: &[Elt]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// The opposite algebra on the same basis.
    pub fn opposite(&self) -> FDAlgebra {
        let sc = (0..self.dim)
            .map(|i| Mat::from_fn(&self.f, self.dim, self.dim, |j, k| self.sc[j].get(i, k)))
            .collect();
        FDAlgebra {
            f: self.f.clone(),
            dim: self.dim,
            sc,
            unit: self.unit.clone(),
            labels: self.labels.clone(),
            sym_form: self.sym_form.clone(),
            // generators of A generate A^op as a unital algebra too
            gens: self.gens.clone(),
        }
    }

    /// Basis (rows) of the center.
    pub fn center_basis(&self) -> Mat {
        // a central  <=>  a * e_j == e_j * a for all j
        let mut blocks = Vec::new();
        for j in 0..self.dim {
            // row i of cj is e_i * e_j; row i of self.sc[j] is e_j * e_i
            let cj = Mat::from_fn(&self.f, self.dim, self.dim, |i, k| self.sc[i].get(j, k));
            blocks.push(cj.sub(&self.sc[j]).expect("square dims"));
        }
        Mat::hstack_all(&self.f, &blocks).transpose().right_nullspace()
    }

    /// The center as an algebra plus its embedding rows into self.
    pub fn center(&self) -> Result<(FDAlgebra, Mat)> {
        let basis = self.center_basis();
        self.subalgebra(&basis, &self.unit.clone())
    }

    /// Subalgebra on the span of the given rows; `unit_elem` must lie in the
    /// span and act as a two-sided identity on it. Returns the subalgebra
    /// and its basis rows inside self.
    pub fn subalgebra(&self, rows: &Mat, unit_elem: &[Elt]) -> Result<(FDAlgebra, Mat)> {
        let sect = rows.row_basis();
        let span = Span::new(sect.clone());
        let m = span.rank();
        let unit_c = span
            .coords(unit_elem)
            .ok_or_else(|| ModRepError::Precondition("unit not in subalgebra span".into()))?;
        let mut sc = Vec::with_capacity(m);
        for i in 0..m {
            let mut rows_i = Vec::with_capacity(m);
            for j in 0..m {
                let prod = self.mul(sect.row(i), sect.row(j));
                let c = span.coords(&prod).ok_or_else(|| {
                    ModRepError::Precondition("span not closed under multiplication".into())
                })?;
                rows_i.push(c);
            }
            sc.push(Mat::from_rows(&self.f, rows_i));
        }
        for i in 0..m {
            let b = sect.row(i).to_vec();
            if self.mul(unit_elem, &b) != b || self.mul(&b, unit_elem) != b {
                return Err(ModRepError::Precondition(
                    "given unit is not an identity on the span".into(),
                ));
            }
        }
        let alg = FDAlgebra::new(self.f.clone(), sc, unit_c)?;
        Ok((alg, sect))
    }

    /// The corner algebra eAe for an idempotent e, with its embedding rows.
    pub fn corner(&self, e: &[Elt]) -> Result<(FDAlgebra, Mat)> {
        if !self.is_idempotent(e) {
            return Err(ModRepError::Precondition("corner: e is not idempotent".into()));
        }
        let rows = Mat::from_rows(
            &self.f,
            (0..self.dim).map(|i| self.mul(e, &self.mul(&self.basis_elem(i), e))).collect(),
        );
        let (sub, sect) = self.subalgebra(&rows, e)?;
        let sub = sub.clone().with_gens(sub.generating_elements());
        Ok((sub, sect))
    }

    /// Quotient by a two-sided ideal spanned by the given rows.
    pub fn quotient(&self, ideal_rows: &Mat) -> Result<AlgebraQuotient> {
        let mut rref = ideal_rows.row_basis();
        if rref.rows() == 0 {
            rref = Mat::zero(&self.f, 0, self.dim);
        }
        let r = rref.rows();
        let m = self.dim - r;
        // ideal check
        let ispan = Span::new(rref.clone());
        for i in 0..self.dim {
            for t in 0..r {
                let v = rref.row(t).to_vec();
                if !ispan.contains(&self.mul(&self.basis_elem(i), &v))
                    || !ispan.contains(&self.mul(&v, &self.basis_elem(i)))
                {
                    return Err(ModRepError::Precondition(
                        "span is not a two-sided ideal".into(),
                    ));
                }
            }
        }
        // complement: standard basis vectors at the non-pivot columns
        let pivots: std::collections::HashSet<usize> =
            rref.rref().pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let sect = if free.is_empty() {
            Mat::zero(&self.f, 0, self.dim)
        } else {
            Mat::from_rows(&self.f, free.iter().map(|&c| self.basis_elem(c)).collect())
        };
        let full = rref.vstack(&sect).expect("same width");
        let finv = full
            .inverse()
            .ok_or_else(|| ModRepError::Precondition("quotient basis not complementary".into()))?;
        // x * proj = coordinates of the class of x in the complement basis
        let all_rows: Vec<usize> = (0..self.dim).collect();
        let tail_cols: Vec<usize> = (r..self.dim).collect();
        let proj = finv.submatrix(&all_rows, &tail_cols);
        let project = |x: &[Elt]| -> Vec<Elt> {
            Mat::row_vec(&self.f, x).mul(&proj).expect("dims").row(0).to_vec()
        };
        let mut sc = Vec::with_capacity(m);
        for i in 0..m {
            let rows_i =
                (0..m).map(|j| project(&self.mul(sect.row(i), sect.row(j)))).collect();
            sc.push(Mat::from_rows(&self.f, rows_i));
        }
        let unit = project(&self.unit);
        Ok(AlgebraQuotient { alg: FDAlgebra::new(self.f.clone(), sc, unit)?, proj, sect })
    }

    /// Jacobson radical, returned as a row basis.
    ///
    /// Characteristic-p algorithm: the chain I_{-1} = A,
    /// I_m = { x in I_{m-1} : c_{p^m}(xy) = 0 for all y }, where c_{p^m} is
    /// coefficient number p^m (from the top) of the characteristic polynomial
    /// of left multiplication, reaches the radical once p^m >= dim A. On each
    /// I_{m-1} the defining form is p^m-semilinear in x, so every step is a
    /// linear solve after an inverse Frobenius twist.
    pub fn radical_basis(&self) -> Mat {
        let n = self.dim;
        let p = self.f.p();
        let f = self.f.clone();
        let mut basis = Mat::identity(&f, n);
        let mut pm: u64 = 1; // p^m
        let mut m: u32 = 0;
        while pm <= n as u64 && basis.rows() > 0 {
            let r = basis.rows();
            // cond[t][j] = c_{p^m}( b_t * e_j )
            let mut cond = Mat::zero(&f, r, n);
            for t in 0..r {
                let bt = basis.row(t).to_vec();
                for j in 0..n {
                    let prod = self.mul(&bt, &self.basis_elem(j));
                    let c = if m == 0 {
                        f.neg(self.left_mult(&prod).trace())
                    } else {
                        charpoly(&self.left_mult(&prod)).coeff(n - pm as usize)
                    };
                    cond.set(t, j, c);
                }
            }
            // For x = sum lambda_t b_t in I_{m-1}:
            //   c_{p^m}(x y) = sum_t lambda_t^{p^m} c_{p^m}(b_t y),
            // so solve for mu = Frobenius^m(lambda) and twist back.
            let mu = cond.transpose().right_nullspace();
            let mut new_rows = Vec::with_capacity(mu.rows());
            for s in 0..mu.rows() {
                let mut x = vec![0; n];
                for t in 0..r {
                    let lam = f.frobenius_inv(mu.get(s, t), m);
                    let bt = basis.row(t);
                    for k in 0..n {
                        x[k] = f.add(x[k], f.mul(lam, bt[k]));
                    }
                }
                new_rows.push(x);
            }
            basis = Mat::from_rows(&f, new_rows).row_basis();
            m += 1;
            pm *= p;
        }
        basis
    }

    /// A / rad(A) together with projection and section.
    pub fn semisimple_quotient(&self) -> Result<AlgebraQuotient> {
        self.quotient(&self.radical_basis())
    }

    /// Lift an idempotent along the radical: a idempotent mod rad, repeated
    /// p-th powers converge to an idempotent congruent to a.
    pub fn lift_idempotent(&self, a: &[Elt]) -> Result<Vec<Elt>> {
        let p = self.f.p();
        let mut x = a.to_vec();
        for _ in 0..=self.dim {
            if self.is_idempotent(&x) {
                return Ok(x);
            }
            x = self.pow(&x, p);
        }
        Err(ModRepError::SearchFailure("idempotent lifting did not converge".into()))
    }

    /// Primitive idempotents of a commutative algebra, summing to 1.
    pub fn primitive_idempotents_commutative(&self) -> Result<Vec<Vec<Elt>>> {
        let q = self.semisimple_quotient()?;
        let s = &q.alg;
        // split the semisimple commutative quotient into fields
        let mut comps: Vec<Vec<Elt>> = vec![s.unit.clone()];
        loop {
            let mut changed = false;
            let mut next: Vec<Vec<Elt>> = Vec::new();
            'comp: for u in comps.iter() {
                for bidx in 0..s.dim {
                    let b = s.mul(u, &s.basis_elem(bidx));
                    // minimal polynomial of multiplication by b on u*S
                    let rows = Mat::from_rows(
                        &s.f,
                        (0..s.dim).map(|i| s.mul(u, &s.basis_elem(i))).collect(),
                    )
                    .row_basis();
                    if rows.rows() == 0 {
                        continue;
                    }
                    let span = Span::new(rows.clone());
                    let act = Mat::from_fn(&s.f, rows.rows(), rows.rows(), |i, j| {
                        span.coords(&s.mul(rows.row(i), &b)).expect("ideal closed")[j]
                    });
                    let mp = minpoly(&act);
                    let facs = mp.factor();
                    if facs.len() > 1 {
                        // CRT idempotents: for each factor fac,
                        // e = (beta*h)(b)*u with h = mp/fac, alpha*fac + beta*h = 1
                        for (fac, _) in &facs {
                            let h = mp.divmod(fac).0;
                            let (_, _, beta) = Poly::xgcd(fac, &h);
                            let bh = beta.mul(&h);
                            next.push(s.eval_poly_at(&bh, &b, u));
                        }
                        changed = true;
                        continue 'comp;
                    }
                }
                next.push(u.clone());
            }
            comps = next;
            if !changed {
                break;
            }
        }
        // lift each primitive idempotent of S back to self
        let mut lifted = Vec::new();
        for e in comps {
            lifted.push(self.lift_idempotent(&q.lift(&e))?);
        }
        // sanity: orthogonal decomposition of 1
        let mut sum = self.zero_elem();
        for e in &lifted {
            sum = self.add(&sum, e);
        }
        if sum != self.unit {
            return Err(ModRepError::SearchFailure(
                "idempotents do not sum to the unit".into(),
            ));
        }
        for (i, a) in lifted.iter().enumerate() {
            for (j, b) in lifted.iter().enumerate() {
                if i != j && !self.is_zero(&self.mul(a, b)) {
                    return Err(ModRepError::SearchFailure(
                        "lifted idempotents are not orthogonal".into(),
                    ));
                }
            }
        }
        Ok(lifted)
    }

    /// Evaluate a polynomial at b inside the ideal with identity u:
    /// the constant term uses u rather than the global unit.
    fn eval_poly_at(&self, poly: &Poly, b: &[Elt], u: &[Elt]) -> Vec<Elt> {
        let mut acc = self.zero_elem();
        if poly.is_zero() {
            return acc;
        }
        for i in (0..=poly.deg()).rev() {
            acc = self.mul(&acc, b);
            let c = poly.coeff(i);
            if c != 0 {
                acc = self.add(&acc, &self.scale(c, u));
            }
        }
        acc
    }
}

/// Cycle-notation labels for the elements of a permutation group.
pub fn group_element_labels(g: &PermGroup) -> Vec<String> {
    (0..g.order())
        .map(|i| {
            let p = g.perm(i);
            let mut seen = vec![false; p.len()];
            let mut out = String::new();
            for start in 0..p.len() {
                if seen[start] || p[start] as usize == start {
                    seen[start] = true;
                    continue;
                }
                out.push('(');
                let mut x = start;
                loop {
                    seen[x] = true;
                    if x != start {
                        out.push(' ');
                    }
                    out.push_str(&(x + 1).to_string());
                    x = p[x] as usize;
                    if x == start {
                        break;
                    }
                }
                out.push(')');
            }
            if out.is_empty() {
                out.push_str("()");
            }
            out
        })
        .collect()
}

/// A quotient algebra with the projection (row vector x -> x*proj gives the
/// image coordinates) and a section embedding the chosen complement.
pub struct AlgebraQuotient {
    pub alg: FDAlgebra,
    pub proj: Mat,
    pub sect: Mat,
}

impl AlgebraQuotient {
    pub fn project(&self, x: &[Elt]) -> Vec<Elt> {
        Mat::row_vec(self.alg.field(), x).mul(&self.proj).expect("dims").row(0).to_vec()
    }

    pub fn lift(&self, xbar: &[Elt]) -> Vec<Elt> {
        Mat::row_vec(self.alg.field(), xbar).mul(&self.sect).expect("dims").row(0).to_vec()
    }
}

/// Test oracle: x lies in the radical iff 1 - y*x is invertible for every y.
/// Only usable when the algebra is small enough to enumerate; returns None
/// otherwise.
pub fn radical_membership_oracle(a: &FDAlgebra, x: &[Elt]) -> Option<bool> {
    let q = a.field().q() as u128;
    let n = a.dim() as u32;
    if q.checked_pow(n).map_or(true, |t| t > 4096) {
        return None;
    }
    let total = q.pow(n) as u64;
    let elts: Vec<Elt> = a.field().elements().collect();
    for mut idx in 0..total {
        let mut y = vec![0; a.dim()];
        for slot in y.iter_mut() {
            *slot = elts[(idx % q as u64) as usize];
            idx /= q as u64;
        }
        let yx = a.mul(&y, x);
        let one_minus = a.sub(a.unit(), &yx);
        if !a.is_unit_elem(&one_minus) {
            return Some(false);
        }
    }
    Some(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::builtin;

    fn kg(q: u64, name: &str) -> FDAlgebra {
        let f = Fq::from_order(q).unwrap();
        FDAlgebra::group_algebra(&f, &builtin(name).unwrap())
    }

    #[test]
    fn group_algebra_validates() {
        for (q, name) in [(2, "C2"), (2, "S3"), (3, "S3"), (2, "V4"), (4, "C3")] {
            kg(q, name).validate().unwrap();
        }
    }

    #[test]
    fn radical_dims() {
        // kC2 over GF(2): radical = span(1+g)
        assert_eq!(kg(2, "C2").radical_basis().rows(), 1);
        // kC3 over GF(2) is semisimple
        assert_eq!(kg(2, "C3").radical_basis().rows(), 0);
        // kC3 over GF(3): augmentation ideal is the radical
        assert_eq!(kg(3, "C3").radical_basis().rows(), 2);
        // kS3 over GF(2): principal block (dim 2) + a 2x2 matrix block
        assert_eq!(kg(2, "S3").radical_basis().rows(), 1);
        // kS3 over GF(3): two 1-dim simples, radical dim 4
        assert_eq!(kg(3, "S3").radical_basis().rows(), 4);
        // kV4 over GF(2): local algebra, radical dim 3
        assert_eq!(kg(2, "V4").radical_basis().rows(), 3);
        assert_eq!(kg(4, "C3").radical_basis().rows(), 0);
    }

    #[test]
    fn radical_matches_oracle() {
        for (q, name) in [(2u64, "C2"), (2, "C4"), (3, "S3"), (2, "S3")] {
            let a = kg(q, name);
            let rad = a.radical_basis();
            let span = Span::new(rad.clone());
            for i in 0..rad.rows() {
                assert_eq!(radical_membership_oracle(&a, rad.row(i)), Some(true), "{}", name);
            }
            for i in 0..a.dim() {
                let e = a.basis_elem(i);
                if !span.contains(&e) {
                    assert_eq!(radical_membership_oracle(&a, &e), Some(false), "{}", name);
                }
            }
        }
    }

    #[test]
    fn radical_is_nilpotent_ideal() {
        for (q, name) in [(2u64, "V4"), (3, "S3"), (2, "D8")] {
            let a = kg(q, name);
            let rad = a.radical_basis();
            let span = Span::new(rad.clone());
            for i in 0..rad.rows() {
                for j in 0..a.dim() {
                    let e = a.basis_elem(j);
                    assert!(span.contains(&a.mul(rad.row(i), &e)));
                    assert!(span.contains(&a.mul(&e, rad.row(i))));
                }
            }
            for i in 0..rad.rows() {
                assert!(a.is_zero(&a.pow(rad.row(i), a.dim() as u64)));
            }
        }
    }

    #[test]
    fn center_of_group_algebra_is_class_algebra() {
        // dim Z(kG) = number of conjugacy classes
        for (q, name, classes) in [(2u64, "S3", 3), (3, "S3", 3), (2, "A4", 4), (5, "D8", 5)] {
            let a = kg(q, name);
            assert_eq!(a.center_basis().rows(), classes, "{}", name);
            let (z, _) = a.center().unwrap();
            z.validate().unwrap();
            assert_eq!(z.dim(), classes);
        }
    }

    #[test]
    fn semisimple_quotient_has_zero_radical() {
        for (q, name) in [(2u64, "S3"), (3, "S3"), (2, "V4")] {
            let a = kg(q, name);
            let ss = a.semisimple_quotient().unwrap();
            ss.alg.validate().unwrap();
            assert_eq!(ss.alg.radical_basis().rows(), 0, "{}", name);
        }
    }

    #[test]
    fn block_counts_via_central_idempotents() {
        // blocks of kG = primitive idempotents of the center
        let cases = [
            (2u64, "S3", 2), // principal block + a defect-zero matrix block
            (3, "S3", 1),    // normal Sylow 3-subgroup: one block
            (2, "V4", 1),    // p-group: one block
            (2, "A4", 1),    // normal Sylow V4: everything is principal
            (3, "A4", 2),    // principal + defect-zero block of the 3-dim simple
        ];
        for (q, name, nblocks) in cases {
            let a = kg(q, name);
            let (z, sect) = a.center().unwrap();
            let idems = z.primitive_idempotents_commutative().unwrap();
            assert_eq!(idems.len(), nblocks, "{} over GF({})", name, q);
            for e in &idems {
                let img =
                    Mat::row_vec(a.field(), e).mul(&sect).unwrap().row(0).to_vec();
                assert!(a.is_idempotent(&img));
            }
        }
    }

    #[test]
    fn commutative_idempotents_semisimple_case() {
        // kC3 over GF(2) = GF(2) x GF(4): two primitive idempotents
        let a = kg(2, "C3");
        assert_eq!(a.primitive_idempotents_commutative().unwrap().len(), 2);
        // over GF(4) it splits completely: three
        let a4 = kg(4, "C3");
        assert_eq!(a4.primitive_idempotents_commutative().unwrap().len(), 3);
    }

    #[test]
    fn corner_and_opposite() {
        let a = kg(2, "S3");
        let (z, sect) = a.center().unwrap();
        let idems = z.primitive_idempotents_commutative().unwrap();
        for e in idems {
            let img = Mat::row_vec(a.field(), &e).mul(&sect).unwrap().row(0).to_vec();
            let (corner, _) = a.corner(&img).unwrap();
            corner.validate().unwrap();
            // block dims: 2 (principal) and 4 (matrix block)
            assert!(corner.dim() == 2 || corner.dim() == 4, "dim {}", corner.dim());
        }
        let op = a.opposite();
        op.validate().unwrap();
        assert_eq!(op.radical_basis().rows(), a.radical_basis().rows());
    }

    #[test]
    fn lift_idempotent_works() {
        let a = kg(2, "S3");
        let (z, sect) = a.center().unwrap();
        let rad = a.radical_basis();
        for e in z.primitive_idempotents_commutative().unwrap() {
            let img = Mat::row_vec(a.field(), &e).mul(&sect).unwrap().row(0).to_vec();
            // perturbing by a radical element and re-lifting recovers an idempotent
            let mut x = img.clone();
            if rad.rows() > 0 {
                x = a.add(&x, rad.row(0));
            }
            let lifted = a.lift_idempotent(&x).unwrap();
            assert!(a.is_idempotent(&lifted));
        }
    }

    #[test]
    fn quotient_rejects_non_ideal() {
        let a = kg(2, "S3");
        let v = a.basis_elem(1);
        let rows = Mat::from_rows(a.field(), vec![v]);
        assert!(a.quotient(&rows).is_err());
    }
}
