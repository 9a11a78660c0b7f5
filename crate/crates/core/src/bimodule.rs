//! (A,B)-bimodules as commuting pairs of action-matrix families, with Hom
//! spaces, tensor products over the middle algebra, duals, and decomposition
//! into indecomposable summands (through the enveloping algebra A (x) B^op).

use crate::algebra::FDAlgebra;
use crate::error::{ModRepError, Result};
use crate::linalg::{Elt, Fq, Mat, Span};
use crate::module::{decompose_seeded, intertwiner_space, module_iso_seeded, AModule, DEFAULT_SEED};

#[derive(Clone)]
pub struct Bimodule {
    a: FDAlgebra,
    b: FDAlgebra,
    dim: usize,
    /// lact[i] = matrix of left action by a_i on columns; multiplicative.
    lact: Vec<Mat>,
    /// ract[j] = matrix of right action by b_j on columns;
    /// anti-multiplicative: ract(xy) = ract(y) * ract(x).
    ract: Vec<Mat>,
}

impl std::fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Bimodule(dim {}; {} x {})", self.dim, self.a.dim(), self.b.dim())
    }
}

impl Bimodule {
    pub fn new(a: &FDAlgebra, b: &FDAlgebra, lact: Vec<Mat>, ract: Vec<Mat>) -> Result<Bimodule> {
        if lact.len() != a.dim() || ract.len() != b.dim() {
            return Err(ModRepError::DimMismatch("one action matrix per basis element".into()));
        }
        let dim = lact.first().or(ract.first()).map_or(0, |m| m.rows());
        for m in lact.iter().chain(&ract) {
            if m.rows() != dim || m.cols() != dim {
                return Err(ModRepError::DimMismatch("action matrices must be square".into()));
            }
        }
        Ok(Bimodule { a: a.clone(), b: b.clone(), dim, lact, ract })
    }

    pub fn left_algebra(&self) -> &FDAlgebra {
        &self.a
    }
    pub fn right_algebra(&self) -> &FDAlgebra {
        &self.b
    }
    pub fn field(&self) -> &Fq {
        self.a.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn lact(&self) -> &[Mat] {
        &self.lact
    }
    pub fn ract(&self) -> &[Mat] {
        &self.ract
    }

    pub fn lact_of(&self, x: &[Elt]) -> Mat {
        combine(self.field(), self.dim, &self.lact, x)
    }

    pub fn ract_of(&self, y: &[Elt]) -> Mat {
        combine(self.field(), self.dim, &self.ract, y)
    }

    pub fn validate(&self) -> Result<()> {
        let left = AModule::new(&self.a, self.lact.clone())?;
        left.validate()?;
        // right action: anti-multiplicative with unit acting as identity
        if !self.ract_of(self.b.unit()).is_identity() {
            return Err(ModRepError::AlgebraMismatch("right unit must act as identity".into()));
        }
        let sc = self.b.structure_constants();
        for i in 0..self.b.dim() {
            for j in 0..self.b.dim() {
                let lhs = self.ract[j].mul(&self.ract[i]).expect("square");
                let rhs = self.ract_of(sc[i].row(j));
                if lhs.entries() != rhs.entries() {
                    return Err(ModRepError::AlgebraMismatch(
                        "right action not anti-multiplicative".into(),
                    ));
                }
            }
        }
        for l in &self.lact {
            for r in &self.ract {
                if l.mul(r).expect("square").entries() != r.mul(l).expect("square").entries() {
                    return Err(ModRepError::AlgebraMismatch("actions do not commute".into()));
                }
            }
        }
        Ok(())
    }

    /// A as the regular (A,A)-bimodule.
    pub fn regular(a: &FDAlgebra) -> Bimodule {
        let lact = (0..a.dim()).map(|i| a.left_mult(&a.basis_elem(i)).transpose()).collect();
        let ract = (0..a.dim()).map(|j| a.right_mult(&a.basis_elem(j)).transpose()).collect();
        Bimodule { a: a.clone(), b: a.clone(), dim: a.dim(), lact, ract }
    }

    /// Restrict the right action along an algebra map c -> b given on basis
    /// elements (e.g. a subalgebra inclusion).
    pub fn restrict_right(&self, c: &FDAlgebra, images: &[Vec<Elt>]) -> Result<Bimodule> {
        if images.len() != c.dim() {
            return Err(ModRepError::DimMismatch("one image per basis element".into()));
        }
        let ract = images.iter().map(|im| self.ract_of(im)).collect();
        Bimodule::new(&self.a, c, self.lact.clone(), ract)
    }

    /// Restrict the left action along an algebra map c -> a.
    pub fn restrict_left(&self, c: &FDAlgebra, images: &[Vec<Elt>]) -> Result<Bimodule> {
        if images.len() != c.dim() {
            return Err(ModRepError::DimMismatch("one image per basis element".into()));
        }
        let lact = images.iter().map(|im| self.lact_of(im)).collect();
        Bimodule::new(c, &self.b, lact, self.ract.clone())
    }

    /// Forget the right action.
    pub fn left_module(&self) -> AModule {
        AModule::new(&self.a, self.lact.clone()).expect("consistent")
    }

    /// Replace the left action by scalars (a plain right module).
    pub fn forget_left(&self) -> Bimodule {
        let k = FDAlgebra::scalars(self.field());
        Bimodule {
            a: k,
            b: self.b.clone(),
            dim: self.dim,
            lact: vec![Mat::identity(self.field(), self.dim)],
            ract: self.ract.clone(),
        }
    }

    /// Replace the right action by scalars (a plain left module).
    pub fn forget_right(&self) -> Bimodule {
        let k = FDAlgebra::scalars(self.field());
        Bimodule {
            a: self.a.clone(),
            b: k,
            dim: self.dim,
            lact: self.lact.clone(),
            ract: vec![Mat::identity(self.field(), self.dim)],
        }
    }

    /// A left module as a (A, k)-bimodule.
    pub fn from_left_module(m: &AModule) -> Bimodule {
        let k = FDAlgebra::scalars(m.field());
        Bimodule {
            a: m.algebra().clone(),
            b: k,
            dim: m.dim(),
            lact: m.actions().to_vec(),
            ract: vec![Mat::identity(m.field(), m.dim())],
        }
    }

    /// A right module (given by its anti-multiplicative action matrices)
    /// as a (k, B)-bimodule.
    pub fn from_right_module(b: &FDAlgebra, ract: Vec<Mat>) -> Result<Bimodule> {
        let k = FDAlgebra::scalars(b.field());
        let dim = ract.first().map_or(0, |m| m.rows());
        Bimodule::new(&k, b, vec![Mat::identity(b.field(), dim)], ract)
    }

    /// The dual Hom_k(X, k) as a (B,A)-bimodule: (b.f.a)(x) = f(a x b).
    pub fn dual(&self) -> Bimodule {
        let lact = self.ract.iter().map(|m| m.transpose()).collect();
        let ract = self.lact.iter().map(|m| m.transpose()).collect();
        Bimodule { a: self.b.clone(), b: self.a.clone(), dim: self.dim, lact, ract }
    }

    /// The enveloping algebra A (x) B^op together with self as a left module
    /// over it. Basis of the envelope: (i,j) -> index i*dim_B + j.
    pub fn envelope(&self) -> (FDAlgebra, AModule) {
        let env = envelope_algebra(&self.a, &self.b);
        let m = self.envelope_module(&env);
        (env, m)
    }

    /// Self as a module over a precomputed envelope of (A, B).
    pub fn envelope_module(&self, env: &FDAlgebra) -> AModule {
        let db = self.b.dim();
        let act = (0..env.dim())
            .map(|t| {
                let (i, j) = (t / db, t % db);
                self.lact[i].mul(&self.ract[j]).expect("square")
            })
            .collect();
        AModule::new(env, act).expect("consistent")
    }

    /// Direct sum.
    pub fn direct_sum(a: &FDAlgebra, b: &FDAlgebra, parts: &[&Bimodule]) -> Bimodule {
        let f = a.field().clone();
        let dim = parts.iter().map(|p| p.dim).sum();
        let lact = (0..a.dim())
            .map(|i| Mat::block_diag(&f, &parts.iter().map(|p| p.lact[i].clone()).collect::<Vec<_>>()))
            .collect();
        let ract = (0..b.dim())
            .map(|j| Mat::block_diag(&f, &parts.iter().map(|p| p.ract[j].clone()).collect::<Vec<_>>()))
            .collect();
        let mut out = Bimodule { a: a.clone(), b: b.clone(), dim, lact, ract };
        if dim == 0 {
            out.lact = vec![Mat::zero(&f, 0, 0); a.dim()];
            out.ract = vec![Mat::zero(&f, 0, 0); b.dim()];
        }
        out
    }

    /// Conjugate the basis: new coords = t * old coords (t invertible).
    pub fn change_basis(&self, t: &Mat) -> Result<Bimodule> {
        let tinv = t
            .inverse()
            .ok_or_else(|| ModRepError::Precondition("basis change must be invertible".into()))?;
        let conv = |m: &Mat| t.mul(m).expect("dims").mul(&tinv).expect("dims");
        Ok(Bimodule {
            a: self.a.clone(),
            b: self.b.clone(),
            dim: self.dim,
            lact: self.lact.iter().map(conv).collect(),
            ract: self.ract.iter().map(conv).collect(),
        })
    }
}

fn combine(f: &Fq, dim: usize, mats: &[Mat], coeffs: &[Elt]) -> Mat {
    let mut m = Mat::zero(f, dim, dim);
    for (i, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            m = m.add(&mats[i].scale(c)).expect("square");
        }
    }
    m
}

/// The enveloping algebra A (x) B^op with product
/// (a (x) b)(a' (x) b') = aa' (x) b'b, and a small generating set.
pub fn envelope_algebra(a: &FDAlgebra, b: &FDAlgebra) -> FDAlgebra {
    let f = a.field().clone();
    let (da, db) = (a.dim(), b.dim());
    let n = da * db;
    let sca = a.structure_constants();
    let scb = b.structure_constants();
    let mut sc = Vec::with_capacity(n);
    for t in 0..n {
        let (i, j) = (t / db, t % db);
        // row (k,l): (a_i (x) b_j)(a_k (x) b_l) = a_i a_k (x) b_l b_j
        let m = Mat::from_fn(&f, n, n, |kl, st| {
            let (k, l) = (kl / db, kl % db);
            let (s, t2) = (st / db, st % db);
            f.mul(sca[i].get(k, s), scb[l].get(j, t2))
        });
        sc.push(m);
    }
    let mut unit = vec![0; n];
    let (ua, ub) = (a.unit(), b.unit());
    for i in 0..da {
        for j in 0..db {
            unit[i * db + j] = f.mul(ua[i], ub[j]);
        }
    }
    let mut gens: Vec<Vec<Elt>> = Vec::new();
    for g in a.generating_elements() {
        let mut v = vec![0; n];
        for (i, &c) in g.iter().enumerate() {
            for j in 0..db {
                v[i * db + j] = f.mul(c, ub[j]);
            }
        }
        gens.push(v);
    }
    for h in b.generating_elements() {
        let mut v = vec![0; n];
        for i in 0..da {
            for (j, &c) in h.iter().enumerate() {
                v[i * db + j] = f.mul(ua[i], c);
            }
        }
        gens.push(v);
    }
    FDAlgebra::new(f, sc, unit).expect("consistent").with_gens(gens)
}

/// Basis of bimodule homomorphisms X -> Y as matrices (Y.dim x X.dim).
pub fn hom_bimodule(x: &Bimodule, y: &Bimodule) -> Result<Vec<Mat>> {
    if x.a.dim() != y.a.dim() || x.b.dim() != y.b.dim() {
        return Err(ModRepError::AlgebraMismatch("bimodules over different algebras".into()));
    }
    let f = x.field().clone();
    let mut pairs: Vec<(Mat, Mat)> = Vec::new();
    for g in x.a.generating_elements() {
        pairs.push((x.lact_of(&g), y.lact_of(&g)));
    }
    for h in x.b.generating_elements() {
        pairs.push((x.ract_of(&h), y.ract_of(&h)));
    }
    Ok(intertwiner_space(&f, x.dim(), y.dim(), &pairs))
}

pub struct BimoduleSummand {
    pub module: Bimodule,
    pub incl: Mat,
    pub proj: Mat,
}

/// Decompose into indecomposable bimodule summands via the envelope.
pub fn decompose_bimodule(x: &Bimodule) -> Result<Vec<BimoduleSummand>> {
    decompose_bimodule_seeded(x, DEFAULT_SEED)
}

pub fn decompose_bimodule_seeded(x: &Bimodule, seed: u64) -> Result<Vec<BimoduleSummand>> {
    let (_, m) = x.envelope();
    let parts = decompose_seeded(&m, seed)?;
    let mut out = Vec::new();
    for s in parts {
        let lact = x
            .lact
            .iter()
            .map(|l| s.proj.mul(l).expect("dims").mul(&s.incl).expect("dims"))
            .collect();
        let ract = x
            .ract
            .iter()
            .map(|r| s.proj.mul(r).expect("dims").mul(&s.incl).expect("dims"))
            .collect();
        out.push(BimoduleSummand {
            module: Bimodule {
                a: x.a.clone(),
                b: x.b.clone(),
                dim: s.module.dim(),
                lact,
                ract,
            },
            incl: s.incl,
            proj: s.proj,
        });
    }
    Ok(out)
}

/// An isomorphism of bimodules, if any.
pub fn bimodule_iso(x: &Bimodule, y: &Bimodule) -> Result<Option<Mat>> {
    if x.dim() != y.dim() {
        return Ok(None);
    }
    let env = envelope_algebra(&x.a, &x.b);
    let mx = x.envelope_module(&env);
    let my = y.envelope_module(&env);
    module_iso_seeded(&mx, &my, DEFAULT_SEED)
}

pub fn bimodules_isomorphic(x: &Bimodule, y: &Bimodule) -> Result<bool> {
    Ok(bimodule_iso(x, y)?.is_some())
}

/// X (x)_B Y for X an (A,B)- and Y a (B,C)-bimodule. Returns the tensor
/// product as an (A,C)-bimodule plus the projection from the full tensor
/// space X (x)_k Y (pair (r,s) -> index r*dim_Y + s) and a linear section.
pub fn tensor_over(x: &Bimodule, y: &Bimodule) -> Result<(Bimodule, Mat, Mat)> {
    if x.b.dim() != y.a.dim() {
        return Err(ModRepError::AlgebraMismatch("middle algebras differ".into()));
    }
    let f = x.field().clone();
    let (dx, dy) = (x.dim(), y.dim());
    let n = dx * dy;
    // relation subspace: (x.u) (x) y - x (x) (u.y) over all u, basis x, y
    let mut rel_rows: Vec<Vec<Elt>> = Vec::new();
    for u in 0..x.b.dim() {
        let ru = &x.ract[u];
        let lu = &y.lact[u];
        for r in 0..dx {
            for s in 0..dy {
                let mut row = vec![0; n];
                for rp in 0..dx {
                    let c = ru.get(rp, r);
                    if c != 0 {
                        row[rp * dy + s] = f.add(row[rp * dy + s], c);
                    }
                }
                for sp in 0..dy {
                    let c = lu.get(sp, s);
                    if c != 0 {
                        row[r * dy + sp] = f.sub(row[r * dy + sp], c);
                    }
                }
                if row.iter().any(|&c| c != 0) {
                    rel_rows.push(row);
                }
            }
        }
    }
    let mut rel = if rel_rows.is_empty() {
        Mat::zero(&f, 0, n)
    } else {
        Mat::from_rows(&f, rel_rows).row_basis()
    };
    if rel.rows() == 0 {
        rel = Mat::zero(&f, 0, n);
    }
    let r = rel.rows();
    let m = n - r;
    let pivots: std::collections::HashSet<usize> = rel.rref().pivots.iter().copied().collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let sect_rows = Mat::from_fn(&f, m, n, |i, j| if free[i] == j { 1 } else { 0 });
    let full = rel.vstack(&sect_rows).expect("width");
    let finv = full
        .inverse()
        .ok_or_else(|| ModRepError::Precondition("tensor complement failed".into()))?;
    let all: Vec<usize> = (0..n).collect();
    let tail: Vec<usize> = (r..n).collect();
    let proj = finv.submatrix(&all, &tail).transpose(); // m x n on columns
    let sect = sect_rows.transpose(); // n x m
    let idy = Mat::identity(&f, dy);
    let idx = Mat::identity(&f, dx);
    let lact = (0..x.a.dim())
        .map(|i| {
            let big = x.lact[i].kronecker(&idy).expect("dims");
            proj.mul(&big).expect("dims").mul(&sect).expect("dims")
        })
        .collect();
    let ract = (0..y.b.dim())
        .map(|j| {
            let big = idx.kronecker(&y.ract[j]).expect("dims");
            proj.mul(&big).expect("dims").mul(&sect).expect("dims")
        })
        .collect();
    Ok((Bimodule { a: x.a.clone(), b: y.b.clone(), dim: m, lact, ract }, proj, sect))
}

/// Check whether X occurs as a direct summand of Y (as bimodules).
pub fn is_direct_summand(x: &Bimodule, y: &Bimodule) -> Result<bool> {
    let env = envelope_algebra(&x.a, &x.b);
    let mx = x.envelope_module(&env);
    let parts_x = decompose_seeded(&mx, DEFAULT_SEED)?;
    let my = y.envelope_module(&env);
    let parts_y = decompose_seeded(&my, DEFAULT_SEED)?;
    // multiplicity comparison per isomorphism class of X-summands
    let mut used = vec![false; parts_y.len()];
    'outer: for px in &parts_x {
        for (i, py) in parts_y.iter().enumerate() {
            if used[i] {
                continue;
            }
            if module_iso_seeded(&px.module, &py.module, DEFAULT_SEED)?.is_some() {
                used[i] = true;
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// e*kG*f as an (eAe, fAf)-bimodule given the corner data, with its basis
/// rows inside the ambient algebra.
pub fn corner_bimodule(
    amb: &FDAlgebra,
    e: &[Elt],
    corner_e: &FDAlgebra,
    sect_e: &Mat,
    fidem: &[Elt],
    corner_f: &FDAlgebra,
    sect_f: &Mat,
) -> Result<(Bimodule, Mat)> {
    let f = amb.field().clone();
    let rows = Mat::from_rows(
        &f,
        (0..amb.dim()).map(|i| amb.mul(e, &amb.mul(&amb.basis_elem(i), fidem))).collect(),
    )
    .row_basis();
    let span = Span::new(rows.clone());
    let m = rows.rows();
    let lact = (0..corner_e.dim())
        .map(|i| {
            let img = sect_e.row(i).to_vec();
            Mat::from_fn(&f, m, m, |r, c| {
                let prod = amb.mul(&img, rows.row(c));
                span.coords(&prod).expect("closed")[r]
            })
        })
        .collect();
    let ract = (0..corner_f.dim())
        .map(|j| {
            let img = sect_f.row(j).to_vec();
            Mat::from_fn(&f, m, m, |r, c| {
                let prod = amb.mul(rows.row(c), &img);
                span.coords(&prod).expect("closed")[r]
            })
        })
        .collect();
    Ok((Bimodule { a: corner_e.clone(), b: corner_f.clone(), dim: m, lact, ract }, rows))
}
