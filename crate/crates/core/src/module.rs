//! Finite-dimensional left modules over a structure-constant algebra:
//! Hom spaces, endomorphism algebras, decomposition into indecomposables
//! (with a soundness certificate via local endomorphism rings), isomorphism
//! testing, and projective covers / syzygies / projective dimension.
//!
//! Module elements are column vectors; an action matrix rho(a) satisfies
//! rho(ab) = rho(a) * rho(b).

use crate::algebra::FDAlgebra;
use crate::error::{ModRepError, Result};
use crate::linalg::{minpoly, Elt, Fq, Mat, Span};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x6d6f6472_65700001;

#[derive(Clone)]
pub struct AModule {
    a: FDAlgebra,
    dim: usize,
    /// act[i] = rho(e_i), acting on column vectors.
    act: Vec<Mat>,
}

impl std::fmt::Debug for AModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AModule(dim {} over dim-{} algebra)", self.dim, self.a.dim())
    }
}

/// A direct summand with its inclusion (V.dim x part.dim) and projection
/// (part.dim x V.dim); proj * incl = id and the incl*proj sum to id_V.
pub struct Summand {
    pub module: AModule,
    pub incl: Mat,
    pub proj: Mat,
}

impl AModule {
    pub fn new(a: &FDAlgebra, act: Vec<Mat>) -> Result<AModule> {
        if act.len() != a.dim() {
            return Err(ModRepError::DimMismatch("one action matrix per basis element".into()));
        }
        let dim = act.first().map_or(0, |m| m.rows());
        for m in &act {
            if m.rows() != dim || m.cols() != dim {
                return Err(ModRepError::DimMismatch("action matrices must be square".into()));
            }
        }
        Ok(AModule { a: a.clone(), dim, act })
    }

    pub fn zero(a: &FDAlgebra) -> AModule {
        let f = a.field().clone();
        AModule { a: a.clone(), dim: 0, act: vec![Mat::zero(&f, 0, 0); a.dim()] }
    }

    pub fn algebra(&self) -> &FDAlgebra {
        &self.a
    }
    pub fn field(&self) -> &Fq {
        self.a.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn action(&self, i: usize) -> &Mat {
        &self.act[i]
    }
    pub fn actions(&self) -> &[Mat] {
        &self.act
    }

    /// rho(a) for an algebra element.
    pub fn act_of(&self, a: &[Elt]) -> Mat {
        let f = self.field();
        let mut m = Mat::zero(f, self.dim, self.dim);
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.act[i].scale(c)).expect("square");
            }
        }
        m
    }

    /// Check the action axioms; O(dim_A^2) matrix products.
    pub fn validate(&self) -> Result<()> {
        if !self.act_of(self.a.unit()).is_identity() {
            return Err(ModRepError::AlgebraMismatch("unit must act as identity".into()));
        }
        let sc = self.a.structure_constants();
        for i in 0..self.a.dim() {
            for j in 0..self.a.dim() {
                let lhs = self.act[i].mul(&self.act[j]).expect("square");
                let rhs = self.act_of(sc[i].row(j));
                if lhs.entries() != rhs.entries() {
                    return Err(ModRepError::AlgebraMismatch(format!(
                        "action not multiplicative at ({},{})",
                        i, j
                    )));
                }
            }
        }
        Ok(())
    }

    /// The left regular module.
    pub fn regular(a: &FDAlgebra) -> AModule {
        let act = (0..a.dim()).map(|i| a.left_mult(&a.basis_elem(i)).transpose()).collect();
        AModule { a: a.clone(), dim: a.dim(), act }
    }

    /// The left ideal A*e as a module, with the inclusion into the regular
    /// module (columns of `incl` are the chosen basis vectors of A*e).
    pub fn left_ideal(a: &FDAlgebra, e: &[Elt]) -> (AModule, Mat) {
        let rows = Mat::from_rows(
            a.field(),
            (0..a.dim()).map(|i| a.mul(&a.basis_elem(i), e)).collect(),
        );
        let reg = AModule::regular(a);
        let (m, incl, _) = reg.submodule_from_rows(&rows);
        (m, incl)
    }

    /// Pull the action back along an algebra map given by the images of the
    /// basis elements of `b` in self's algebra.
    pub fn pullback(&self, b: &FDAlgebra, images: &[Vec<Elt>]) -> Result<AModule> {
        if images.len() != b.dim() {
            return Err(ModRepError::DimMismatch("one image per basis element".into()));
        }
        let act = images.iter().map(|im| self.act_of(im)).collect();
        AModule::new(b, act)
    }

    /// Row basis of the subspace spanned by the given rows, closed under the
    /// algebra action.
    pub fn closed_span(&self, rows: &Mat) -> Mat {
        let f = self.field().clone();
        let mut basis = rows.row_basis();
        if basis.rows() == 0 {
            return Mat::zero(&f, 0, self.dim);
        }
        loop {
            let mut new_rows: Vec<Vec<Elt>> = Vec::new();
            for i in 0..self.a.dim() {
                for r in 0..basis.rows() {
                    let col = Mat::col_vec(&f, basis.row(r));
                    let img = self.act[i].mul(&col).expect("dims");
                    new_rows.push((0..self.dim).map(|t| img.get(t, 0)).collect());
                }
            }
            let stacked = basis.vstack(&Mat::from_rows(&f, new_rows)).expect("width");
            let nb = stacked.row_basis();
            if nb.rows() == basis.rows() {
                return nb;
            }
            basis = nb;
        }
    }

    /// Submodule on the closure of the span of the given rows. Returns the
    /// module, the inclusion (self.dim x m) and a projection (m x self.dim)
    /// splitting it as linear maps (not as module maps in general).
    pub fn submodule_from_rows(&self, rows: &Mat) -> (AModule, Mat, Mat) {
        let f = self.field().clone();
        let basis = self.closed_span(rows);
        let m = basis.rows();
        let span = Span::new(basis.clone());
        let incl = basis.transpose();
        let mut act = Vec::with_capacity(self.a.dim());
        for i in 0..self.a.dim() {
            act.push(Mat::from_fn(&f, m, m, |r, c| {
                let col = Mat::col_vec(&f, basis.row(c));
                let img = self.act[i].mul(&col).expect("dims");
                let v: Vec<Elt> = (0..self.dim).map(|t| img.get(t, 0)).collect();
                span.coords(&v).expect("closed")[r]
            }));
        }
        // a linear retraction: extend the basis by standard vectors at the
        // non-pivot columns and invert, so proj * incl = I and the
        // complement maps to zero
        let proj = if m == 0 {
            Mat::zero(&f, 0, self.dim)
        } else {
            let pivots: std::collections::HashSet<usize> =
                basis.rref().pivots.iter().copied().collect();
            let free: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
            let compl =
                Mat::from_fn(&f, free.len(), self.dim, |i, j| if free[i] == j { 1 } else { 0 });
            let full = basis.vstack(&compl).expect("width");
            let finv = full.inverse().expect("basis plus complement is invertible");
            let all: Vec<usize> = (0..self.dim).collect();
            let head: Vec<usize> = (0..m).collect();
            finv.submatrix(&all, &head).transpose()
        };
        (AModule { a: self.a.clone(), dim: m, act }, incl, proj)
    }

    /// Quotient by a submodule (given as rows, must be action-closed).
    /// Returns the quotient, the projection (m x self.dim, on columns) and a
    /// linear section (self.dim x m).
    pub fn quotient_by_rows(&self, rows: &Mat) -> Result<(AModule, Mat, Mat)> {
        let f = self.field().clone();
        let mut rref = rows.row_basis();
        if rref.rows() == 0 {
            rref = Mat::zero(&f, 0, self.dim);
        }
        if self.closed_span(&rref).rows() != rref.rows() {
            return Err(ModRepError::Precondition("subspace is not a submodule".into()));
        }
        let r = rref.rows();
        let m = self.dim - r;
        let pivots: std::collections::HashSet<usize> =
            rref.rref().pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let sect_rows = Mat::from_fn(&f, m, self.dim, |i, j| if free[i] == j { 1 } else { 0 });
        let full = rref.vstack(&sect_rows).expect("width");
        let finv = full
            .inverse()
            .ok_or_else(|| ModRepError::Precondition("complement construction failed".into()))?;
        let all: Vec<usize> = (0..self.dim).collect();
        let tail: Vec<usize> = (r..self.dim).collect();
        // row-vector convention: x * proj_row = class coords; on columns use
        // the transpose
        let proj = finv.submatrix(&all, &tail).transpose();
        let sect = sect_rows.transpose();
        let act = (0..self.a.dim())
            .map(|i| proj.mul(&self.act[i]).expect("dims").mul(&sect).expect("dims"))
            .collect();
        Ok((AModule { a: self.a.clone(), dim: m, act }, proj, sect))
    }

    /// Rows spanning rad(A) * V.
    pub fn radical_rows(&self) -> Mat {
        let f = self.field().clone();
        let rad = self.a.radical_basis();
        let mut rows: Vec<Vec<Elt>> = Vec::new();
        for t in 0..rad.rows() {
            let m = self.act_of(rad.row(t));
            for j in 0..self.dim {
                rows.push((0..self.dim).map(|i| m.get(i, j)).collect());
            }
        }
        if rows.is_empty() {
            return Mat::zero(&f, 0, self.dim);
        }
        Mat::from_rows(&f, rows).row_basis()
    }

    /// The head V / rad(A)V with its projection.
    pub fn top(&self) -> Result<(AModule, Mat)> {
        let (t, proj, _) = self.quotient_by_rows(&self.radical_rows())?;
        Ok((t, proj))
    }

    pub fn direct_sum(a: &FDAlgebra, parts: &[&AModule]) -> AModule {
        let f = a.field().clone();
        let dim = parts.iter().map(|p| p.dim).sum();
        let act = (0..a.dim())
            .map(|i| {
                let blocks: Vec<Mat> = parts.iter().map(|p| p.act[i].clone()).collect();
                let m = Mat::block_diag(&f, &blocks);
                debug_assert_eq!(m.rows(), dim);
                m
            })
            .collect();
        AModule { a: a.clone(), dim, act }
    }
}

/// Basis of all matrices F (dw x dv) with F * opv = opw * F for every given
/// pair of operators.
pub fn intertwiner_space(
    f: &Fq,
    dv: usize,
    dw: usize,
    pairs: &[(Mat, Mat)],
) -> Vec<Mat> {
    if dv == 0 || dw == 0 {
        return vec![];
    }
    let idv = Mat::identity(f, dv);
    let idw = Mat::identity(f, dw);
    let mut blocks = Vec::new();
    for (opv, opw) in pairs {
        let k = idv
            .kronecker(opw)
            .expect("dims")
            .sub(&opv.transpose().kronecker(&idw).expect("dims"))
            .expect("dims");
        blocks.push(k);
    }
    let stacked = Mat::vstack_all(f, &blocks);
    let null = if stacked.rows() == 0 {
        Mat::identity(f, dw * dv)
    } else {
        stacked.right_nullspace()
    };
    let mut out = Vec::with_capacity(null.rows());
    for r in 0..null.rows() {
        let vecf = null.row(r);
        // column-major vec: entry (i,j) of F at index j*dw + i
        out.push(Mat::from_fn(f, dw, dv, |i, j| vecf[j * dw + i]));
    }
    out
}

/// Basis of Hom_A(V, W) as matrices (W.dim x V.dim).
pub fn hom_space(v: &AModule, w: &AModule) -> Result<Vec<Mat>> {
    if v.algebra().dim() != w.algebra().dim() {
        return Err(ModRepError::AlgebraMismatch("hom between different algebras".into()));
    }
    let f = v.field().clone();
    let gens = v.algebra().generating_elements();
    let pairs: Vec<(Mat, Mat)> =
        gens.iter().map(|g| (v.act_of(g), w.act_of(g))).collect();
    Ok(intertwiner_space(&f, v.dim(), w.dim(), &pairs))
}

/// End_A(V) as a structure-constant algebra (product = composition), with
/// the matrix basis it was built from.
pub fn end_algebra(v: &AModule) -> Result<(FDAlgebra, Vec<Mat>)> {
    let f = v.field().clone();
    let basis = hom_space(v, v)?;
    end_algebra_from_matrices(&f, v.dim(), basis)
}

/// Build the algebra generated (as a subspace it must already be closed)
/// by the given endomorphism matrices, which must include the identity in
/// their span.
pub fn end_algebra_from_matrices(
    f: &Fq,
    dim: usize,
    basis: Vec<Mat>,
) -> Result<(FDAlgebra, Vec<Mat>)> {
    let n = basis.len();
    let rows = Mat::from_rows(f, basis.iter().map(|m| m.entries().to_vec()).collect());
    let span = Span::new(rows);
    if span.rank() != n {
        return Err(ModRepError::Precondition("endomorphism basis is dependent".into()));
    }
    let mut sc = Vec::with_capacity(n);
    for i in 0..n {
        let rows_i = (0..n)
            .map(|j| {
                let prod = basis[i].mul(&basis[j]).expect("square");
                span.coords(prod.entries()).expect("closed under composition")
            })
            .collect();
        sc.push(Mat::from_rows(f, rows_i));
    }
    let unit = span
        .coords(Mat::identity(f, dim).entries())
        .ok_or_else(|| ModRepError::Precondition("identity not in endomorphism span".into()))?;
    let alg = FDAlgebra::new(f.clone(), sc, unit)?;
    let alg = alg.clone().with_gens(alg.generating_elements());
    Ok((alg, basis))
}

/// Split V along complementary action-closed subspaces given as row bases.
fn split_along(v: &AModule, part_rows: &[Mat]) -> Result<Vec<Summand>> {
    let f = v.field().clone();
    let stacked = Mat::vstack_all(&f, part_rows);
    if stacked.rows() != v.dim() {
        return Err(ModRepError::DimMismatch("parts do not fill the module".into()));
    }
    let c = stacked.transpose(); // columns = part bases in order
    let cinv =
        c.inverse().ok_or_else(|| ModRepError::Precondition("parts not complementary".into()))?;
    let mut out = Vec::new();
    let mut off = 0;
    let all_cols: Vec<usize> = (0..v.dim()).collect();
    for rows in part_rows {
        let m = rows.rows();
        // build the part module on exactly these basis rows so that the
        // inclusion matches the rows of cinv
        let span = Span::new(rows.clone());
        let act = (0..v.algebra().dim())
            .map(|i| {
                Mat::from_fn(&f, m, m, |r, c| {
                    let col = Mat::col_vec(&f, rows.row(c));
                    let img = v.act[i].mul(&col).expect("dims");
                    let vv: Vec<Elt> = (0..v.dim()).map(|t| img.get(t, 0)).collect();
                    span.coords(&vv).expect("parts must be action-closed")[r]
                })
            })
            .collect();
        let module = AModule { a: v.a.clone(), dim: m, act };
        let incl = rows.transpose();
        let idx: Vec<usize> = (off..off + m).collect();
        let proj = cinv.submatrix(&idx, &all_cols);
        out.push(Summand { module, incl, proj });
        off += m;
    }
    Ok(out)
}

/// A nontrivial idempotent of a semisimple algebra, by minimal polynomial
/// splitting of basis elements, their products, and seeded random elements.
pub(crate) fn nontrivial_idempotent_semisimple(
    s: &FDAlgebra,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Elt>> {
    let f = s.field().clone();
    let elts: Vec<Elt> = f.elements().collect();
    let try_elem = |z: &[Elt]| -> Option<Vec<Elt>> {
        let mp = minpoly(&s.left_mult(z));
        let facs = mp.factor();
        if facs.len() < 2 {
            return None;
        }
        let (fac, _) = &facs[0];
        let h = mp.divmod(fac).0;
        let (_, _, beta) = crate::linalg::Poly::xgcd(fac, &h);
        let bh = beta.mul(&h);
        // evaluate at z with the global unit as constant
        let mut acc = s.zero_elem();
        for i in (0..=bh.deg()).rev() {
            acc = s.mul(&acc, z);
            let c = bh.coeff(i);
            if c != 0 {
                acc = s.add(&acc, &s.scale(c, s.unit()));
            }
        }
        if s.is_idempotent(&acc) && !s.is_zero(&acc) && acc != s.unit() {
            Some(acc)
        } else {
            None
        }
    };
    for i in 0..s.dim() {
        if let Some(e) = try_elem(&s.basis_elem(i)) {
            return Ok(e);
        }
    }
    for i in 0..s.dim() {
        for j in 0..s.dim() {
            let z = s.mul(&s.basis_elem(i), &s.basis_elem(j));
            if let Some(e) = try_elem(&z) {
                return Ok(e);
            }
        }
    }
    for _ in 0..500 {
        let z: Vec<Elt> =
            (0..s.dim()).map(|_| elts[rng.random_range(0..elts.len())]).collect();
        if let Some(e) = try_elem(&z) {
            return Ok(e);
        }
    }
    Err(ModRepError::SearchFailure(
        "no splitting idempotent found in semisimple algebra".into(),
    ))
}

/// Full decomposition into indecomposable summands, deterministic up to the
/// seed. Indecomposability is certified: the endomorphism ring of each part
/// is local (its semisimple quotient is a finite field).
pub fn decompose(v: &AModule) -> Result<Vec<Summand>> {
    decompose_seeded(v, DEFAULT_SEED)
}

pub fn decompose_seeded(v: &AModule, seed: u64) -> Result<Vec<Summand>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    decompose_inner(v, &mut rng)
}

fn compose_summand(outer: &Summand, inner: Summand) -> Summand {
    Summand {
        incl: outer.incl.mul(&inner.incl).expect("dims"),
        proj: inner.proj.mul(&outer.proj).expect("dims"),
        module: inner.module,
    }
}

fn decompose_inner(v: &AModule, rng: &mut ChaCha8Rng) -> Result<Vec<Summand>> {
    let f = v.field().clone();
    if v.dim() == 0 {
        return Ok(vec![]);
    }
    let whole = || Summand {
        module: v.clone(),
        incl: Mat::identity(&f, v.dim()),
        proj: Mat::identity(&f, v.dim()),
    };
    let homs = hom_space(v, v)?;
    if homs.len() == 1 {
        return Ok(vec![whole()]);
    }
    // candidate endomorphisms: basis, then random combinations
    let elts: Vec<Elt> = f.elements().collect();
    let n_rand = 4 * homs.len() + 8;
    let candidates = (0..homs.len() + n_rand).map(|t| {
        if t < homs.len() {
            homs[t].clone()
        } else {
            let mut m = Mat::zero(&f, v.dim(), v.dim());
            for h in &homs {
                let c = elts[rng.random_range(0..elts.len())];
                if c != 0 {
                    m = m.add(&h.scale(c)).expect("square");
                }
            }
            m
        }
    });
    for phi in candidates {
        let mp = minpoly(&phi);
        let facs = mp.factor();
        if facs.len() < 2 {
            continue;
        }
        // primary decomposition: V = (+) ker f_t(phi)^{m_t}
        let mut parts = Vec::new();
        for (fac, mult) in &facs {
            let mat = fac.eval_mat(&phi).pow(*mult as u64);
            parts.push(mat.right_nullspace());
        }
        if parts.iter().filter(|p| p.rows() > 0).count() < 2 {
            continue;
        }
        let summands = split_along(v, &parts)?;
        let mut out = Vec::new();
        for s in summands {
            for inner in decompose_inner(&s.module, rng)? {
                out.push(compose_summand(&s, inner));
            }
        }
        return Ok(out);
    }
    // no candidate split: certify via the endomorphism ring
    let (e_alg, e_basis) = end_algebra_from_matrices(&f, v.dim(), homs)?;
    let rad = e_alg.radical_basis();
    let ssq = e_alg.quotient(&rad)?;
    let q = &ssq.alg;
    let q_commutative = {
        let mut ok = true;
        'outer: for i in 0..q.dim() {
            for j in 0..q.dim() {
                if q.mul(&q.basis_elem(i), &q.basis_elem(j))
                    != q.mul(&q.basis_elem(j), &q.basis_elem(i))
                {
                    ok = false;
                    break 'outer;
                }
            }
        }
        ok
    };
    let qe = if q_commutative {
        let idems = q.primitive_idempotents_commutative()?;
        if idems.len() == 1 {
            // End/rad is a finite field: End is local, V indecomposable
            return Ok(vec![whole()]);
        }
        idems.into_iter().next().unwrap()
    } else {
        // no finite division ring is noncommutative, so a split must exist
        nontrivial_idempotent_semisimple(q, rng)?
    };
    let e_elem = e_alg.lift_idempotent(&ssq.lift(&qe))?;
    // realize the idempotent as a matrix and split along image and kernel
    let mut eps = Mat::zero(&f, v.dim(), v.dim());
    for (c, m) in e_elem.iter().zip(&e_basis) {
        if *c != 0 {
            eps = eps.add(&m.scale(*c)).expect("square");
        }
    }
    let im_rows = eps.transpose().row_basis();
    let ker_rows = eps.right_nullspace();
    let summands = split_along(v, &[im_rows, ker_rows])?;
    let mut out = Vec::new();
    for s in summands {
        for inner in decompose_inner(&s.module, rng)? {
            out.push(compose_summand(&s, inner));
        }
    }
    Ok(out)
}

/// An A-module isomorphism V -> W (as a W.dim x V.dim matrix), if one
/// exists. Exhaustive over the hom space when small, seeded random otherwise.
pub fn module_iso(v: &AModule, w: &AModule) -> Result<Option<Mat>> {
    module_iso_seeded(v, w, DEFAULT_SEED)
}

pub fn module_iso_seeded(v: &AModule, w: &AModule, seed: u64) -> Result<Option<Mat>> {
    if v.dim() != w.dim() {
        return Ok(None);
    }
    if v.dim() == 0 {
        return Ok(Some(Mat::zero(v.field(), 0, 0)));
    }
    let homs = hom_space(v, w)?;
    if homs.is_empty() {
        return Ok(None);
    }
    let f = v.field().clone();
    for h in &homs {
        if h.rank() == v.dim() {
            return Ok(Some(h.clone()));
        }
    }
    let q = f.q() as u128;
    let hn = homs.len() as u32;
    let elts: Vec<Elt> = f.elements().collect();
    if q.checked_pow(hn).is_some_and(|t| t <= 65536) {
        let total = q.pow(hn) as u64;
        for mut idx in 1..total {
            let mut m = Mat::zero(&f, w.dim(), v.dim());
            for h in &homs {
                let c = elts[(idx % q as u64) as usize];
                idx /= q as u64;
                if c != 0 {
                    m = m.add(&h.scale(c)).expect("dims");
                }
            }
            if m.rank() == v.dim() {
                return Ok(Some(m));
            }
        }
        return Ok(None);
    }
    // random search; a failure here is only evidence, so cross-check with a
    // necessary condition before giving up
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..800 {
        let mut m = Mat::zero(&f, w.dim(), v.dim());
        for h in &homs {
            let c = elts[rng.random_range(0..elts.len())];
            if c != 0 {
                m = m.add(&h.scale(c)).expect("dims");
            }
        }
        if m.rank() == v.dim() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

pub fn is_isomorphic(v: &AModule, w: &AModule) -> Result<bool> {
    Ok(module_iso(v, w)?.is_some())
}

/// The projective indecomposables of A: one summand per copy in the regular
/// module, plus the partition into isomorphism classes.
pub struct Projectives {
    pub summands: Vec<Summand>,
    /// class[i] = isomorphism class index of summands[i]
    pub class: Vec<usize>,
    /// one summand index per class
    pub reps: Vec<usize>,
}

pub fn projectives(a: &FDAlgebra) -> Result<Projectives> {
    let reg = AModule::regular(a);
    let summands = decompose(&reg)?;
    let mut class = vec![usize::MAX; summands.len()];
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..summands.len() {
        let mut found = None;
        for (ci, &r) in reps.iter().enumerate() {
            if is_isomorphic(&summands[i].module, &summands[r].module)? {
                found = Some(ci);
                break;
            }
        }
        match found {
            Some(ci) => class[i] = ci,
            None => {
                class[i] = reps.len();
                reps.push(i);
            }
        }
    }
    Ok(Projectives { summands, class, reps })
}

/// A projective cover of U: the covering module (a direct sum of projective
/// indecomposables), the surjection (U.dim x P.dim), and the class index of
/// each chosen projective summand.
pub struct Cover {
    pub p: AModule,
    pub map: Mat,
    pub classes: Vec<usize>,
}

pub fn projective_cover(u: &AModule, projs: &Projectives) -> Result<Cover> {
    let a = u.algebra().clone();
    let f = u.field().clone();
    if u.dim() == 0 {
        return Ok(Cover { p: AModule::zero(&a), map: Mat::zero(&f, 0, 0), classes: vec![] });
    }
    let (top, top_proj) = u.top()?;
    let top_dim = top.dim();
    // Hom(P_c, U) once per class; reused across all cover steps
    let mut class_homs = Vec::with_capacity(projs.reps.len());
    for &ri in &projs.reps {
        class_homs.push(hom_space(&projs.summands[ri].module, u)?);
    }
    let mut covered = Mat::zero(&f, 0, top_dim);
    let mut chosen: Vec<(usize, Mat)> = Vec::new(); // (class, map P_c -> U)
    'outer: while covered.rows() < top_dim {
        for (ci, homs) in class_homs.iter().enumerate() {
            for phi in homs {
                // image of phi in top(U), as rows
                let timg = top_proj.mul(phi).expect("dims");
                let img_rows = timg.transpose().row_basis();
                let stacked = covered.vstack(&img_rows).expect("width");
                let nb = stacked.row_basis();
                if nb.rows() > covered.rows() {
                    covered = nb;
                    chosen.push((ci, phi.clone()));
                    continue 'outer;
                }
            }
        }
        return Err(ModRepError::SearchFailure(
            "projective cover: top not reachable from projectives".into(),
        ));
    }
    let parts: Vec<&AModule> =
        chosen.iter().map(|(ci, _)| &projs.summands[projs.reps[*ci]].module).collect();
    let p = AModule::direct_sum(&a, &parts);
    let maps: Vec<Mat> = chosen.iter().map(|(_, m)| m.clone()).collect();
    let map = Mat::hstack_all(&f, &maps);
    // surjectivity check
    if map.rank() != u.dim() {
        return Err(ModRepError::SearchFailure("projective cover map not surjective".into()));
    }
    Ok(Cover { p, map, classes: chosen.into_iter().map(|(c, _)| c).collect() })
}

/// The kernel of a projective cover, as a module.
pub fn syzygy(u: &AModule, projs: &Projectives) -> Result<AModule> {
    let cover = projective_cover(u, projs)?;
    if cover.p.dim() == 0 {
        return Ok(AModule::zero(u.algebra()));
    }
    let ker_rows = cover.map.right_nullspace();
    let (m, _, _) = cover.p.submodule_from_rows(&ker_rows);
    Ok(m)
}

pub fn is_projective(u: &AModule, projs: &Projectives) -> Result<bool> {
    Ok(syzygy(u, projs)?.dim() == 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pdim {
    Finite(u32),
    /// Periodicity detected: a syzygy repeats, so the dimension is infinite.
    Infinite,
    /// Cutoff reached without resolution or detected period.
    AtLeast(u32),
}

/// Projective dimension by iterated syzygies, with periodicity detection
/// over a sliding window.
pub fn pdim(u: &AModule, projs: &Projectives, cutoff: u32) -> Result<Pdim> {
    const WINDOW: usize = 4;
    if u.dim() == 0 {
        return Ok(Pdim::Finite(0));
    }
    let mut current = u.clone();
    let mut history: Vec<AModule> = Vec::new();
    for step in 0..=cutoff {
        let s = syzygy(&current, projs)?;
        if s.dim() == 0 {
            return Ok(Pdim::Finite(step));
        }
        for prev in history.iter().rev().take(WINDOW) {
            if is_isomorphic(prev, &s)? {
                return Ok(Pdim::Infinite);
            }
        }
        history.push(s.clone());
        current = s;
    }
    Ok(Pdim::AtLeast(cutoff + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::builtin;

    fn kg(q: u64, name: &str) -> FDAlgebra {
        let f = Fq::from_order(q).unwrap();
        FDAlgebra::group_algebra(&f, &builtin(name).unwrap())
    }

    /// 2x2 upper triangular matrices: basis e11, e22, e12.
    fn triangular(q: u64) -> FDAlgebra {
        let f = Fq::from_order(q).unwrap();
        let mut sc = vec![Mat::zero(&f, 3, 3); 3];
        // e11*e11 = e11, e11*e12 = e12, e22*e22 = e22, e12*e22 = e12
        sc[0].set(0, 0, 1);
        sc[0].set(2, 2, 1);
        sc[1].set(1, 1, 1);
        sc[2].set(1, 2, 1);
        let a = FDAlgebra::new(f, sc, vec![1, 1, 0]).unwrap();
        a.validate().unwrap();
        a
    }

    #[test]
    fn regular_module_validates() {
        for (q, name) in [(2u64, "C2"), (2, "S3"), (3, "S3"), (4, "C3")] {
            AModule::regular(&kg(q, name)).validate().unwrap();
        }
        AModule::regular(&triangular(2)).validate().unwrap();
    }

    #[test]
    fn hom_space_dims() {
        // End of the regular module of A has dim = dim A
        for (q, name) in [(2u64, "C2"), (2, "C3"), (2, "S3")] {
            let a = kg(q, name);
            let reg = AModule::regular(&a);
            assert_eq!(hom_space(&reg, &reg).unwrap().len(), a.dim(), "{}", name);
        }
    }

    #[test]
    fn decompose_local_algebra_regular_is_indecomposable() {
        // kC2, kC4, kV4 over GF(2) are local: regular module indecomposable
        for name in ["C2", "C4", "V4"] {
            let a = kg(2, name);
            let reg = AModule::regular(&a);
            let parts = decompose(&reg).unwrap();
            assert_eq!(parts.len(), 1, "{}", name);
        }
    }

    #[test]
    fn decompose_kc3_gf2_nonsplit_summand() {
        // kC3 over GF(2) = k x GF(4): dims 1 and 2, the 2-dim part is
        // indecomposable with endomorphism field GF(4)
        let a = kg(2, "C3");
        let reg = AModule::regular(&a);
        let mut dims: Vec<usize> = decompose(&reg).unwrap().iter().map(|s| s.module.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
    }

    #[test]
    fn decompose_ks3_gf2() {
        // kS3 over GF(2) = B0 (dim 2, one PIM) + M2(k) (two copies of the
        // 2-dim simple-projective)
        let a = kg(2, "S3");
        let reg = AModule::regular(&a);
        let parts = decompose(&reg).unwrap();
        let mut dims: Vec<usize> = parts.iter().map(|s| s.module.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![2, 2, 2]);
        // summand data is a genuine direct sum decomposition
        let f = a.field();
        let mut total = Mat::zero(f, 6, 6);
        for s in &parts {
            assert!(s.proj.mul(&s.incl).unwrap().is_identity());
            total = total.add(&s.incl.mul(&s.proj).unwrap()).unwrap();
        }
        assert!(total.is_identity());
    }

    #[test]
    fn projective_classes_ks3() {
        let a = kg(2, "S3");
        let projs = projectives(&a).unwrap();
        assert_eq!(projs.summands.len(), 3);
        assert_eq!(projs.reps.len(), 2);
        let a3 = kg(3, "S3");
        let projs3 = projectives(&a3).unwrap();
        // p=3: PIMs of dim 3 for trivial and sign, each multiplicity 1
        assert_eq!(projs3.summands.len(), 2);
        assert_eq!(projs3.reps.len(), 2);
        let mut dims: Vec<usize> =
            projs3.summands.iter().map(|s| s.module.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![3, 3]);
    }

    #[test]
    fn trivial_module_cover_and_pdim() {
        // trivial kC2-module over GF(2): Omega(k) = k, so pdim is infinite
        let a = kg(2, "C2");
        let projs = projectives(&a).unwrap();
        let f = a.field().clone();
        let triv = AModule::new(&a, vec![Mat::identity(&f, 1), Mat::identity(&f, 1)]).unwrap();
        triv.validate().unwrap();
        let cover = projective_cover(&triv, &projs).unwrap();
        assert_eq!(cover.p.dim(), 2);
        assert_eq!(pdim(&triv, &projs, 10).unwrap(), Pdim::Infinite);
    }

    #[test]
    fn triangular_algebra_has_finite_global_dimension() {
        let a = triangular(2);
        let projs = projectives(&a).unwrap();
        assert_eq!(projs.summands.len(), 2);
        let mut dims: Vec<usize> =
            projs.summands.iter().map(|s| s.module.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
        // both simples have pdim <= 1
        for s in &projs.summands {
            let (top, _) = s.module.top().unwrap();
            let pd = pdim(&top, &projs, 10).unwrap();
            match pd {
                Pdim::Finite(d) => assert!(d <= 1),
                other => panic!("expected finite pdim, got {:?}", other),
            }
        }
    }

    #[test]
    fn semisimple_everything_projective() {
        let a = kg(2, "C3");
        let projs = projectives(&a).unwrap();
        for s in &projs.summands {
            assert!(is_projective(&s.module, &projs).unwrap());
            assert_eq!(pdim(&s.module, &projs, 5).unwrap(), Pdim::Finite(0));
        }
    }

    #[test]
    fn iso_testing() {
        let a = kg(2, "S3");
        let projs = projectives(&a).unwrap();
        // two of the three summands are isomorphic (the matrix block)
        let mut iso_pairs = 0;
        for i in 0..3 {
            for j in (i + 1)..3 {
                if is_isomorphic(&projs.summands[i].module, &projs.summands[j].module).unwrap()
                {
                    iso_pairs += 1;
                }
            }
        }
        assert_eq!(iso_pairs, 1);
    }

    #[test]
    fn submodule_quotient_roundtrip() {
        let a = kg(2, "V4");
        let reg = AModule::regular(&a);
        let rad = reg.radical_rows();
        assert_eq!(rad.rows(), 3);
        let (top, _) = reg.top().unwrap();
        assert_eq!(top.dim(), 1);
        top.validate().unwrap();
        let (sub, _, _) = reg.submodule_from_rows(&rad);
        sub.validate().unwrap();
        assert_eq!(sub.dim(), 3);
    }
}
