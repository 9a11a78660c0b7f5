//! Bounded chain complexes of bimodules (differentials lower the degree),
//! tensor products, Hom complexes and duals with fixed sign conventions,
//! and minimization with explicit homotopy certificates.
//!
//! Sign conventions, once and for all. For complexes (U, delta) and
//! (V, epsilon), the differential of U (x)_A V out of U_i (x) V_j has the
//! components (-1)^i Id (x) epsilon_j into U_i (x) V_{j-1} and
//! (-1)^i delta_i (x) Id into U_{i-1} (x) V_j (the first sign is the Koszul
//! sign of moving a degree -1 map past U_i). For Hom_A(V, W) with W-side
//! differential zeta, degree-n terms are the Hom(V_i, W_j) with j - i = n,
//! and the differential post-composes with zeta_j and pre-composes with
//! (-1)^{n+1} epsilon_{i+1}. The k-dual has (V*)_n = (V_{-n})* with
//! differential the transpose of (-1)^{n+1} epsilon_{-n+1}.

use std::collections::BTreeMap;

use crate::algebra::FDAlgebra;
use crate::bimodule::{decompose_bimodule, tensor_over, Bimodule};
use crate::error::{ModRepError, Result};
use crate::linalg::{Fq, Mat, Span};
use crate::module::intertwiner_space;

#[derive(Clone)]
pub struct BimoduleComplex {
    a: FDAlgebra,
    b: FDAlgebra,
    /// lowest degree carrying a term; terms[t] sits in degree min + t
    min: i64,
    terms: Vec<Bimodule>,
    /// diffs[t] = d_{min+t+1} : terms[t+1] -> terms[t]
    diffs: Vec<Mat>,
}

impl std::fmt::Debug for BimoduleComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let dims: Vec<usize> = self.terms.iter().map(|t| t.dim()).collect();
        write!(f, "BimoduleComplex(degrees {}..={}, dims {:?})", self.min, self.max_deg(), dims)
    }
}

impl BimoduleComplex {
    pub fn new(
        a: &FDAlgebra,
        b: &FDAlgebra,
        min: i64,
        terms: Vec<Bimodule>,
        diffs: Vec<Mat>,
    ) -> Result<BimoduleComplex> {
        if terms.is_empty() {
            return Ok(BimoduleComplex::zero(a, b));
        }
        if diffs.len() + 1 != terms.len() {
            return Err(ModRepError::DimMismatch("one differential per adjacent pair".into()));
        }
        let c = BimoduleComplex { a: a.clone(), b: b.clone(), min, terms, diffs };
        c.validate()?;
        Ok(c)
    }

    pub fn zero(a: &FDAlgebra, b: &FDAlgebra) -> BimoduleComplex {
        BimoduleComplex { a: a.clone(), b: b.clone(), min: 0, terms: vec![], diffs: vec![] }
    }

    pub fn concentrated(m: &Bimodule, degree: i64) -> BimoduleComplex {
        BimoduleComplex {
            a: m.left_algebra().clone(),
            b: m.right_algebra().clone(),
            min: degree,
            terms: vec![m.clone()],
            diffs: vec![],
        }
    }

    pub fn field(&self) -> &Fq {
        self.a.field()
    }
    pub fn left_algebra(&self) -> &FDAlgebra {
        &self.a
    }
    pub fn right_algebra(&self) -> &FDAlgebra {
        &self.b
    }
    pub fn min_deg(&self) -> i64 {
        self.min
    }
    pub fn max_deg(&self) -> i64 {
        self.min + self.terms.len() as i64 - 1
    }
    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.dim() == 0)
    }

    pub fn term(&self, n: i64) -> Option<&Bimodule> {
        if n < self.min || n > self.max_deg() {
            return None;
        }
        Some(&self.terms[(n - self.min) as usize])
    }

    pub fn term_dim(&self, n: i64) -> usize {
        self.term(n).map_or(0, |t| t.dim())
    }

    /// d_n : X_n -> X_{n-1}, the zero matrix outside the support.
    pub fn diff(&self, n: i64) -> Mat {
        let f = self.field();
        let src = self.term_dim(n);
        let tgt = self.term_dim(n - 1);
        if n - 1 < self.min || n > self.max_deg() {
            return Mat::zero(f, tgt, src);
        }
        self.diffs[(n - 1 - self.min) as usize].clone()
    }

    pub fn validate(&self) -> Result<()> {
        for t in &self.terms {
            t.validate()?;
        }
        for n in self.min + 1..=self.max_deg() {
            let d = self.diff(n);
            let src = self.term(n).expect("in support");
            let tgt = self.term(n - 1).expect("in support");
            if d.rows() != tgt.dim() || d.cols() != src.dim() {
                return Err(ModRepError::DimMismatch("differential shape".into()));
            }
            if !is_bimodule_map(src, tgt, &d) {
                return Err(ModRepError::Precondition(
                    "differential is not a bimodule homomorphism".into(),
                ));
            }
            let sq = self.diff(n + 1);
            if n + 1 <= self.max_deg() {
                let prod = d.mul(&sq).expect("dims");
                if prod.entries().iter().any(|&c| c != 0) {
                    return Err(ModRepError::Precondition("d^2 is nonzero".into()));
                }
            }
        }
        Ok(())
    }

    /// Shift: (X[k])_n = X_{n-k}, differentials scaled by (-1)^k.
    pub fn shift(&self, k: i64) -> BimoduleComplex {
        let f = self.field().clone();
        let sign = if k.rem_euclid(2) == 0 { 1 } else { f.neg(1) };
        BimoduleComplex {
            a: self.a.clone(),
            b: self.b.clone(),
            min: self.min + k,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(sign)).collect(),
        }
    }

    /// Homology dimensions per degree over the support.
    pub fn homology_dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for n in self.min..=self.max_deg() {
            let d_out = self.diff(n);
            let d_in = self.diff(n + 1);
            let dim = self.term_dim(n);
            let h = dim - d_out.rank() - d_in.rank();
            out.insert(n, h);
        }
        out
    }

    /// Drop zero-dimensional terms from both ends.
    pub fn trim(&self) -> BimoduleComplex {
        let mut lo = 0;
        let mut hi = self.terms.len();
        while lo < hi && self.terms[lo].dim() == 0 {
            lo += 1;
        }
        while hi > lo && self.terms[hi - 1].dim() == 0 {
            hi -= 1;
        }
        if lo >= hi {
            return BimoduleComplex::zero(&self.a, &self.b);
        }
        BimoduleComplex {
            a: self.a.clone(),
            b: self.b.clone(),
            min: self.min + lo as i64,
            terms: self.terms[lo..hi].to_vec(),
            diffs: self.diffs[lo..hi - 1].to_vec(),
        }
    }
}

fn is_bimodule_map(src: &Bimodule, tgt: &Bimodule, d: &Mat) -> bool {
    for g in src.left_algebra().generating_elements() {
        let lhs = d.mul(&src.lact_of(&g)).expect("dims");
        let rhs = tgt.lact_of(&g).mul(d).expect("dims");
        if lhs.entries() != rhs.entries() {
            return false;
        }
    }
    for g in src.right_algebra().generating_elements() {
        let lhs = d.mul(&src.ract_of(&g)).expect("dims");
        let rhs = tgt.ract_of(&g).mul(d).expect("dims");
        if lhs.entries() != rhs.entries() {
            return false;
        }
    }
    true
}

fn sign_of(f: &Fq, i: i64) -> u16 {
    if i.rem_euclid(2) == 0 {
        1
    } else {
        f.neg(1)
    }
}

/// The tensor product U (x)_B V of an (A,B)-complex and a (B,C)-complex.
pub fn tensor_complexes(u: &BimoduleComplex, v: &BimoduleComplex) -> Result<BimoduleComplex> {
    if u.b.dim() != v.a.dim() {
        return Err(ModRepError::AlgebraMismatch("middle algebras differ".into()));
    }
    if u.is_zero() || v.is_zero() {
        return Ok(BimoduleComplex::zero(&u.a, &v.b));
    }
    let f = u.field().clone();
    // per-pair tensor data
    let mut pieces: BTreeMap<(i64, i64), (Bimodule, Mat, Mat)> = BTreeMap::new();
    for i in u.min..=u.max_deg() {
        for j in v.min..=v.max_deg() {
            let t = tensor_over(u.term(i).expect("range"), v.term(j).expect("range"))?;
            pieces.insert((i, j), t);
        }
    }
    let min = u.min + v.min;
    let max = u.max_deg() + v.max_deg();
    // assemble terms with offsets per (i,j), i ascending
    let mut terms = Vec::new();
    let mut offsets: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for n in min..=max {
        let mut parts: Vec<&Bimodule> = Vec::new();
        let mut off = 0;
        for i in u.min..=u.max_deg() {
            let j = n - i;
            if let Some((bm, _, _)) = pieces.get(&(i, j)) {
                offsets.insert((i, j), off);
                off += bm.dim();
                parts.push(bm);
            }
        }
        terms.push(Bimodule::direct_sum(&u.a, &v.b, &parts));
    }
    let mut diffs = Vec::new();
    for n in min + 1..=max {
        let src_dim = terms[(n - min) as usize].dim();
        let tgt_dim = terms[(n - 1 - min) as usize].dim();
        let mut d = Mat::zero(&f, tgt_dim, src_dim);
        for i in u.min..=u.max_deg() {
            let j = n - i;
            let Some((bm, _, sect)) = pieces.get(&(i, j)) else { continue };
            let s_off = offsets[&(i, j)];
            let sgn = sign_of(&f, i);
            // (-1)^i Id (x) epsilon_j into (i, j-1)
            if let Some((tb, tproj, _)) = pieces.get(&(i, j - 1)) {
                let eps = v.diff(j);
                let big = Mat::identity(&f, u.term_dim(i)).kronecker(&eps).expect("dims");
                let block =
                    tproj.mul(&big).expect("dims").mul(sect).expect("dims").scale(sgn);
                let t_off = offsets[&(i, j - 1)];
                d = emplace(&d, &block, t_off, s_off);
                let _ = tb;
            }
            // (-1)^i delta_i (x) Id into (i-1, j)
            if let Some((_, tproj, _)) = pieces.get(&(i - 1, j)) {
                let delta = u.diff(i);
                let big = delta.kronecker(&Mat::identity(&f, v.term_dim(j))).expect("dims");
                let block =
                    tproj.mul(&big).expect("dims").mul(sect).expect("dims").scale(sgn);
                let t_off = offsets[&(i - 1, j)];
                d = emplace(&d, &block, t_off, s_off);
            }
            let _ = bm;
        }
        diffs.push(d);
    }
    BimoduleComplex::new(&u.a, &v.b, min, terms, diffs)
}

fn emplace(d: &Mat, block: &Mat, row_off: usize, col_off: usize) -> Mat {
    let f = d.field();
    Mat::from_fn(f, d.rows(), d.cols(), |r, c| {
        let mut x = d.get(r, c);
        if r >= row_off && r < row_off + block.rows() && c >= col_off && c < col_off + block.cols()
        {
            x = f.add(x, block.get(r - row_off, c - col_off));
        }
        x
    })
}

/// The k-dual complex: (V*)_n = (V_{-n})* with the quoted sign.
pub fn dual_complex(v: &BimoduleComplex) -> BimoduleComplex {
    if v.is_zero() {
        return BimoduleComplex::zero(&v.b, &v.a);
    }
    let f = v.field().clone();
    let min = -v.max_deg();
    let max = -v.min;
    let terms: Vec<Bimodule> =
        (min..=max).map(|n| v.term(-n).expect("range").dual()).collect();
    let mut diffs = Vec::new();
    for n in min + 1..=max {
        // d_n : (V_{-n})* -> (V_{-n+1})*, transpose of (-1)^{n+1} eps_{-n+1}
        let eps = v.diff(-n + 1);
        diffs.push(eps.transpose().scale(sign_of(&f, n + 1)));
    }
    BimoduleComplex {
        a: v.b.clone(),
        b: v.a.clone(),
        min,
        terms,
        diffs,
    }
}

/// Data of one Hom term: a matrix basis of Hom_A(V_i, W_j).
struct HomPiece {
    basis: Vec<Mat>,
    span: Span,
}

impl HomPiece {
    fn new(f: &Fq, v: &Bimodule, w: &Bimodule) -> HomPiece {
        let pairs: Vec<(Mat, Mat)> = v
            .left_algebra()
            .generating_elements()
            .iter()
            .map(|g| (v.lact_of(g), w.lact_of(g)))
            .collect();
        let basis = intertwiner_space(f, v.dim(), w.dim(), &pairs);
        let rows = if basis.is_empty() {
            Mat::zero(f, 0, (v.dim() * w.dim()).max(1))
        } else {
            Mat::from_rows(f, basis.iter().map(|m| m.entries().to_vec()).collect())
        };
        HomPiece { basis, span: Span::new(rows) }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn coords(&self, m: &Mat) -> Option<Vec<u16>> {
        if self.basis.is_empty() {
            return if m.entries().iter().all(|&c| c == 0) { Some(vec![]) } else { None };
        }
        self.span.coords(m.entries())
    }
}

/// The complex Hom_A(V, W) of left-A-module homomorphisms, as a complex of
/// (B, C)-bimodules when V is an (A,B)- and W an (A,C)-complex.
pub fn hom_complex(v: &BimoduleComplex, w: &BimoduleComplex) -> Result<BimoduleComplex> {
    if v.a.dim() != w.a.dim() {
        return Err(ModRepError::AlgebraMismatch("hom over different algebras".into()));
    }
    if v.is_zero() || w.is_zero() {
        return Ok(BimoduleComplex::zero(&v.b, &w.b));
    }
    let f = v.field().clone();
    let mut pieces: BTreeMap<(i64, i64), HomPiece> = BTreeMap::new();
    for i in v.min..=v.max_deg() {
        for j in w.min..=w.max_deg() {
            pieces.insert((i, j), HomPiece::new(&f, v.term(i).expect("r"), w.term(j).expect("r")));
        }
    }
    let min = w.min - v.max_deg();
    let max = w.max_deg() - v.min;
    let mut terms = Vec::new();
    let mut offsets: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for n in min..=max {
        // pairs (i, j) with j - i = n, i ascending
        let mut parts: Vec<Bimodule> = Vec::new();
        let mut off = 0;
        for i in v.min..=v.max_deg() {
            let j = n + i;
            let Some(piece) = pieces.get(&(i, j)) else { continue };
            offsets.insert((i, j), off);
            off += piece.dim();
            parts.push(hom_piece_bimodule(&f, piece, v.term(i).expect("r"), w.term(j).expect("r"))?);
        }
        let refs: Vec<&Bimodule> = parts.iter().collect();
        terms.push(Bimodule::direct_sum(&v.b, &w.b, &refs));
    }
    let mut diffs = Vec::new();
    for n in min + 1..=max {
        let src_dim = terms[(n - min) as usize].dim();
        let tgt_dim = terms[(n - 1 - min) as usize].dim();
        let mut d = Mat::zero(&f, tgt_dim, src_dim);
        for i in v.min..=v.max_deg() {
            let j = n + i;
            let Some(src) = pieces.get(&(i, j)) else { continue };
            let s_off = offsets[&(i, j)];
            // post-compose with zeta_j : W_j -> W_{j-1}
            if let Some(tgt) = pieces.get(&(i, j - 1)) {
                let zeta = w.diff(j);
                let block = hom_block(&f, src, tgt, |m| zeta.mul(m).expect("dims"))?;
                d = emplace(&d, &block, offsets[&(i, j - 1)], s_off);
            }
            // pre-compose with (-1)^{n+1} eps_{i+1} : V_{i+1} -> V_i
            if let Some(tgt) = pieces.get(&(i + 1, j)) {
                let eps = v.diff(i + 1).scale(sign_of(&f, n + 1));
                let block = hom_block(&f, src, tgt, |m| m.mul(&eps).expect("dims"))?;
                d = emplace(&d, &block, offsets[&(i + 1, j)], s_off);
            }
        }
        diffs.push(d);
    }
    BimoduleComplex::new(&v.b, &w.b, min, terms, diffs)
}

fn hom_block(
    f: &Fq,
    src: &HomPiece,
    tgt: &HomPiece,
    map: impl Fn(&Mat) -> Mat,
) -> Result<Mat> {
    let mut rows = Vec::with_capacity(src.dim());
    for b in &src.basis {
        let img = map(b);
        let c = tgt
            .coords(&img)
            .ok_or_else(|| ModRepError::SearchFailure("hom image not a module map".into()))?;
        rows.push(c);
    }
    // columns index the source basis
    let m = if rows.is_empty() {
        Mat::zero(f, tgt.dim(), 0)
    } else {
        Mat::from_rows(f, rows).transpose()
    };
    Ok(m)
}

fn hom_piece_bimodule(f: &Fq, piece: &HomPiece, v: &Bimodule, w: &Bimodule) -> Result<Bimodule> {
    let m = piece.dim();
    let bb = v.right_algebra();
    let cc = w.right_algebra();
    let act = |m_of: &dyn Fn(&Mat) -> Mat| -> Result<Mat> {
        let mut rows = Vec::with_capacity(m);
        for b in &piece.basis {
            let img = m_of(b);
            let c = piece
                .coords(&img)
                .ok_or_else(|| ModRepError::SearchFailure("action leaves hom space".into()))?;
            rows.push(c);
        }
        Ok(if rows.is_empty() { Mat::zero(f, 0, 0) } else { Mat::from_rows(f, rows).transpose() })
    };
    let mut lact = Vec::with_capacity(bb.dim());
    for t in 0..bb.dim() {
        let rb = v.ract()[t].clone();
        let g = move |x: &Mat| x.mul(&rb).expect("dims");
        lact.push(act(&g)?);
    }
    let mut ract = Vec::with_capacity(cc.dim());
    for t in 0..cc.dim() {
        let rc = w.ract()[t].clone();
        let g = move |x: &Mat| rc.mul(x).expect("dims");
        ract.push(act(&g)?);
    }
    Bimodule::new(bb, cc, lact, ract)
}

/// For a symmetric algebra A, realize the isomorphism of complexes
/// Hom_A(V, A) = V* given by post-composition with the symmetrising form,
/// and verify it degree by degree (invertible, compatible with the
/// differentials). Returns the per-degree matrices from Hom-coordinates to
/// dual coordinates.
pub fn form_dual_iso(v: &BimoduleComplex) -> Result<BTreeMap<i64, Mat>> {
    let a = v.left_algebra().clone();
    let s = a
        .sym_form()
        .ok_or_else(|| ModRepError::Precondition("algebra has no symmetrising form".into()))?
        .to_vec();
    let f = v.field().clone();
    let h = hom_complex(v, &BimoduleComplex::concentrated(&Bimodule::regular(&a), 0))?;
    let d = dual_complex(v);
    // rebuild the Hom bases to express the map in the same coordinates
    let mut maps = BTreeMap::new();
    let reg = Bimodule::regular(&a);
    for n in h.min_deg()..=h.max_deg() {
        let vi = v.term(-n).expect("support matches");
        let piece = HomPiece::new(&f, vi, &reg);
        if piece.dim() != h.term_dim(n) || piece.dim() != d.term_dim(n) {
            return Err(ModRepError::DimMismatch("hom and dual term dims differ".into()));
        }
        // F maps to the functional x -> s(F x), coordinates F^T s
        let scol = Mat::row_vec(&f, &s).transpose();
        let cols: Vec<Mat> =
            piece.basis.iter().map(|b| b.transpose().mul(&scol).expect("dims")).collect();
        let phi = Mat::from_fn(&f, vi.dim(), piece.dim(), |r, c| cols[c].get(r, 0));
        if phi.rows() != phi.cols() || (phi.rows() > 0 && phi.inverse().is_none()) {
            return Err(ModRepError::Precondition("form pairing is degenerate".into()));
        }
        maps.insert(n, phi);
    }
    // chain-map compatibility
    for n in h.min_deg() + 1..=h.max_deg() {
        let phi_n = &maps[&n];
        let phi_n1 = &maps[&(n - 1)];
        let lhs = phi_n1.mul(&h.diff(n)).expect("dims");
        let rhs = d.diff(n).mul(phi_n).expect("dims");
        if lhs.entries() != rhs.entries() {
            return Err(ModRepError::Precondition("form iso is not a chain map".into()));
        }
    }
    Ok(maps)
}

/// Chain maps f : X -> Y and g : Y -> X with f g = id exactly and
/// g f - id = d h + h d; all maps indexed by degree, h_n : X_n -> X_{n+1}.
pub struct HomotopyCertificate {
    pub f: BTreeMap<i64, Mat>,
    pub g: BTreeMap<i64, Mat>,
    pub h: BTreeMap<i64, Mat>,
}

fn map_at(f: &Fq, maps: &BTreeMap<i64, Mat>, n: i64, rows: usize, cols: usize) -> Mat {
    maps.get(&n).cloned().unwrap_or_else(|| Mat::zero(f, rows, cols))
}

/// Exact verification of a homotopy certificate between two complexes.
pub fn verify_certificate(
    x: &BimoduleComplex,
    y: &BimoduleComplex,
    cert: &HomotopyCertificate,
) -> bool {
    let f = x.field().clone();
    let lo = x.min_deg().min(y.min_deg()) - 1;
    let hi = x.max_deg().max(y.max_deg()) + 1;
    for n in lo..=hi {
        let fx = map_at(&f, &cert.f, n, y.term_dim(n), x.term_dim(n));
        let fx1 = map_at(&f, &cert.f, n - 1, y.term_dim(n - 1), x.term_dim(n - 1));
        let gx = map_at(&f, &cert.g, n, x.term_dim(n), y.term_dim(n));
        let gx1 = map_at(&f, &cert.g, n - 1, x.term_dim(n - 1), y.term_dim(n - 1));
        // chain maps
        let lhs = fx1.mul(&x.diff(n)).expect("dims");
        let rhs = y.diff(n).mul(&fx).expect("dims");
        if lhs.entries() != rhs.entries() {
            return false;
        }
        let lhs = gx1.mul(&y.diff(n)).expect("dims");
        let rhs = x.diff(n).mul(&gx).expect("dims");
        if lhs.entries() != rhs.entries() {
            return false;
        }
        // f g = id on Y
        let fg = fx.mul(&gx).expect("dims");
        if !fg.is_identity() && fg.rows() > 0 {
            return false;
        }
        // g f - id = d h + h d on X
        let hx = map_at(&f, &cert.h, n, x.term_dim(n + 1), x.term_dim(n));
        let hx1 = map_at(&f, &cert.h, n - 1, x.term_dim(n), x.term_dim(n - 1));
        let gf = gx.mul(&fx).expect("dims");
        let dh = x.diff(n + 1).mul(&hx).expect("dims");
        let hd = hx1.mul(&x.diff(n)).expect("dims");
        let rhs = dh.add(&hd).expect("dims").add(&Mat::identity(&f, x.term_dim(n))).expect("dims");
        if gf.entries() != rhs.entries() {
            return false;
        }
    }
    true
}

fn compose_maps(
    f: &Fq,
    second: &BTreeMap<i64, Mat>, // Y -> Z
    first: &BTreeMap<i64, Mat>,  // X -> Y
    x: &BimoduleComplex,
    y: &BimoduleComplex,
    z: &BimoduleComplex,
) -> BTreeMap<i64, Mat> {
    let mut out = BTreeMap::new();
    let lo = x.min_deg().min(y.min_deg()).min(z.min_deg());
    let hi = x.max_deg().max(y.max_deg()).max(z.max_deg());
    for n in lo..=hi {
        let a = map_at(f, first, n, y.term_dim(n), x.term_dim(n));
        let b = map_at(f, second, n, z.term_dim(n), y.term_dim(n));
        let m = b.mul(&a).expect("dims");
        if m.rows() > 0 && m.cols() > 0 {
            out.insert(n, m);
        }
    }
    out
}

/// Remove homotopically trivial summand pairs until no differential
/// component is invertible: Gaussian elimination on the complex. Returns
/// the minimized complex with a verified homotopy certificate from the
/// input.
pub fn minimize(c: &BimoduleComplex) -> Result<(BimoduleComplex, HomotopyCertificate)> {
    let f = c.field().clone();
    let mut y = c.trim();
    // cumulative maps: f_total : C -> Y, g_total : Y -> C, h_total on C
    let mut f_total: BTreeMap<i64, Mat> = BTreeMap::new();
    let mut g_total: BTreeMap<i64, Mat> = BTreeMap::new();
    let mut h_total: BTreeMap<i64, Mat> = BTreeMap::new();
    for n in c.min_deg()..=c.max_deg() {
        let d = c.term_dim(n);
        if d > 0 {
            f_total.insert(n, Mat::identity(&f, d));
            g_total.insert(n, Mat::identity(&f, d));
        }
    }
    'outer: loop {
        for n in y.min_deg() + 1..=y.max_deg() {
            let d = y.diff(n);
            if d.entries().iter().all(|&c| c == 0) {
                continue;
            }
            let src = y.term(n).expect("range");
            let tgt = y.term(n - 1).expect("range");
            let src_parts = decompose_bimodule(src)?;
            let tgt_parts = decompose_bimodule(tgt)?;
            for sp in &src_parts {
                for tp in &tgt_parts {
                    let alpha =
                        tp.proj.mul(&d).expect("dims").mul(&sp.incl).expect("dims");
                    if alpha.rows() != alpha.cols() || alpha.rows() == 0 {
                        continue;
                    }
                    let Some(alpha_inv) = alpha.inverse() else { continue };
                    // cancellation data
                    let (incl_c, proj_c, rest_n) = complement(&y, n, &src_parts, sp)?;
                    let (incl_c2, proj_c2, rest_n1) = complement(&y, n - 1, &tgt_parts, tp)?;
                    let beta = tp.proj.mul(&d).expect("dims").mul(&incl_c).expect("dims");
                    let gamma = proj_c2.mul(&d).expect("dims").mul(&sp.incl).expect("dims");
                    let delta = proj_c2.mul(&d).expect("dims").mul(&incl_c).expect("dims");
                    let corr = gamma.mul(&alpha_inv).expect("dims");
                    let d_new = delta.sub(&corr.mul(&beta).expect("dims")).expect("dims");
                    // assemble the new complex
                    let mut terms = Vec::new();
                    let mut diffs = Vec::new();
                    for m in y.min_deg()..=y.max_deg() {
                        if m == n {
                            terms.push(rest_n.clone());
                        } else if m == n - 1 {
                            terms.push(rest_n1.clone());
                        } else {
                            terms.push(y.term(m).expect("range").clone());
                        }
                    }
                    for m in y.min_deg() + 1..=y.max_deg() {
                        let dm = if m == n {
                            d_new.clone()
                        } else if m == n + 1 {
                            proj_c.mul(&y.diff(m)).expect("dims")
                        } else if m == n - 1 {
                            y.diff(m).mul(&incl_c2).expect("dims")
                        } else {
                            y.diff(m)
                        };
                        diffs.push(dm);
                    }
                    let y_new = BimoduleComplex {
                        a: y.a.clone(),
                        b: y.b.clone(),
                        min: y.min_deg(),
                        terms,
                        diffs,
                    };
                    // per-step certificate maps (old y -> new y)
                    let mut fs: BTreeMap<i64, Mat> = BTreeMap::new();
                    let mut gs: BTreeMap<i64, Mat> = BTreeMap::new();
                    let mut hs: BTreeMap<i64, Mat> = BTreeMap::new();
                    for m in y.min_deg()..=y.max_deg() {
                        if m == n {
                            fs.insert(m, proj_c.clone());
                            gs.insert(
                                m,
                                incl_c
                                    .sub(
                                        &sp.incl
                                            .mul(&alpha_inv)
                                            .expect("dims")
                                            .mul(&beta)
                                            .expect("dims"),
                                    )
                                    .expect("dims"),
                            );
                        } else if m == n - 1 {
                            fs.insert(m, proj_c2.sub(&corr.mul(&tp.proj).expect("dims")).expect("dims"));
                            gs.insert(m, incl_c2.clone());
                            hs.insert(
                                m,
                                sp.incl
                                    .mul(&alpha_inv)
                                    .expect("dims")
                                    .mul(&tp.proj)
                                    .expect("dims")
                                    .neg(),
                            );
                        } else if y.term_dim(m) > 0 {
                            let id = Mat::identity(&f, y.term_dim(m));
                            fs.insert(m, id.clone());
                            gs.insert(m, id);
                        }
                    }
                    // fold into the cumulative certificate
                    let step_h_pulled = {
                        // g_total o h_step o f_total, shifted by one degree
                        let mut out = BTreeMap::new();
                        for (&m, hm) in &hs {
                            let ft = map_at(&f, &f_total, m, y.term_dim(m), c.term_dim(m));
                            let gt = map_at(
                                &f,
                                &g_total,
                                m + 1,
                                c.term_dim(m + 1),
                                y.term_dim(m + 1),
                            );
                            let v = gt.mul(hm).expect("dims").mul(&ft).expect("dims");
                            out.insert(m, v);
                        }
                        out
                    };
                    f_total = compose_maps(&f, &fs, &f_total, c, &y, &y_new);
                    g_total = compose_maps(&f, &g_total, &gs, &y_new, &y, c);
                    for (m, v) in step_h_pulled {
                        let cur = map_at(&f, &h_total, m, c.term_dim(m + 1), c.term_dim(m));
                        h_total.insert(m, cur.add(&v).expect("dims"));
                    }
                    y = y_new.trim();
                    // re-restrict cumulative maps to the trimmed support
                    f_total.retain(|&m, v| {
                        if y.term_dim(m) == 0 {
                            false
                        } else {
                            v.rows() > 0
                        }
                    });
                    g_total.retain(|&m, _| y.term_dim(m) > 0);
                    continue 'outer;
                }
            }
        }
        break;
    }
    let cert = HomotopyCertificate { f: f_total, g: g_total, h: h_total };
    Ok((y, cert))
}


fn complement(
    y: &BimoduleComplex,
    n: i64,
    parts: &[crate::bimodule::BimoduleSummand],
    skip: &crate::bimodule::BimoduleSummand,
) -> Result<(Mat, Mat, Bimodule)> {
    let f = y.field().clone();
    let term = y.term(n).expect("range");
    let others: Vec<&crate::bimodule::BimoduleSummand> =
        parts.iter().filter(|p| !std::ptr::eq(*p, skip)).collect();
    let total: usize = others.iter().map(|p| p.module.dim()).sum();
    let mut incl = Mat::zero(&f, term.dim(), total);
    let mut proj = Mat::zero(&f, total, term.dim());
    let mut off = 0;
    for p in &others {
        incl = emplace_cols(&incl, &p.incl, off);
        proj = emplace_rows(&proj, &p.proj, off);
        off += p.module.dim();
    }
    let mods: Vec<&Bimodule> = others.iter().map(|p| &p.module).collect();
    let rest = Bimodule::direct_sum(term.left_algebra(), term.right_algebra(), &mods);
    Ok((incl, proj, rest))
}

fn emplace_cols(d: &Mat, block: &Mat, col_off: usize) -> Mat {
    let f = d.field();
    Mat::from_fn(f, d.rows(), d.cols(), |r, c| {
        if c >= col_off && c < col_off + block.cols() {
            block.get(r, c - col_off)
        } else {
            d.get(r, c)
        }
    })
}

fn emplace_rows(d: &Mat, block: &Mat, row_off: usize) -> Mat {
    let f = d.field();
    Mat::from_fn(f, d.rows(), d.cols(), |r, c| {
        if r >= row_off && r < row_off + block.rows() {
            block.get(r - row_off, c)
        } else {
            d.get(r, c)
        }
    })
}
