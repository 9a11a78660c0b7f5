//! Group algebras and their block theory: central primitive idempotents,
//! the Brauer homomorphism, defect groups, source idempotents and source
//! algebras with the embedded defect group.

use crate::algebra::FDAlgebra;
use crate::bimodule::{is_direct_summand, tensor_over, Bimodule};
use crate::error::{ModRepError, Result};
use crate::linalg::{Elt, Fq, Mat, Span};
use crate::module::AModule;
use crate::perm::{PermGroup, Subgroup};
use crate::structure::primitive_idempotent_decomposition;

#[derive(Clone)]
pub struct GroupAlgebra {
    group: PermGroup,
    alg: FDAlgebra,
}

impl GroupAlgebra {
    pub fn new(f: &Fq, group: &PermGroup) -> GroupAlgebra {
        GroupAlgebra { group: group.clone(), alg: FDAlgebra::group_algebra(f, group) }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }
    pub fn algebra(&self) -> &FDAlgebra {
        &self.alg
    }
    pub fn field(&self) -> &Fq {
        self.alg.field()
    }

    /// Matrix of conjugation by g on coefficient rows: x -> x^g with
    /// (x^g) supported on g h g^{-1} where x is supported on h.
    pub fn conj_matrix(&self, g: usize) -> Mat {
        let n = self.group.order();
        Mat::from_fn(self.field(), n, n, |h, k| if self.group.conj(g, h) == k { 1 } else { 0 })
    }

    pub fn is_fixed_by(&self, x: &[Elt], p: &Subgroup) -> bool {
        let xm = Mat::row_vec(self.field(), x);
        p.element_indices().iter().all(|&u| {
            xm.mul(&self.conj_matrix(u)).expect("dims").row(0) == x
        })
    }

    /// Basis rows of the fixed-point subalgebra (kG)^P.
    pub fn fixed_points(&self, p: &Subgroup) -> Mat {
        let f = self.field().clone();
        let n = self.group.order();
        let id = Mat::identity(&f, n);
        let conds: Vec<Mat> = p
            .element_indices()
            .iter()
            .map(|&u| self.conj_matrix(u).sub(&id).expect("square"))
            .collect();
        if conds.is_empty() {
            return id;
        }
        Mat::hstack_all(&f, &conds).transpose().right_nullspace()
    }

    /// The fixed-point subalgebra (kG)^P with its basis rows in kG.
    pub fn fixed_point_algebra(&self, p: &Subgroup) -> Result<(FDAlgebra, Mat)> {
        let rows = self.fixed_points(p);
        self.alg.subalgebra(&rows, &self.alg.unit().to_vec())
    }

    /// Augmentation: the action of x on the trivial module (sum of
    /// coefficients).
    pub fn augmentation(&self, x: &[Elt]) -> Elt {
        let f = self.field();
        x.iter().fold(0, |s, &c| f.add(s, c))
    }

    /// dim of the ideal x*kG... that is, kG*x viewed row-wise; for central
    /// idempotents this is the block dimension.
    pub fn ideal_dim(&self, x: &[Elt]) -> usize {
        let rows = Mat::from_rows(
            self.field(),
            (0..self.alg.dim()).map(|i| self.alg.mul(&self.alg.basis_elem(i), x)).collect(),
        );
        rows.rank()
    }

    /// Block idempotents: the primitive idempotents of the center, principal
    /// block first, then by block dimension (ties broken by coefficient
    /// vector for determinism).
    pub fn blocks(&self) -> Result<Vec<Vec<Elt>>> {
        let (z, zsect) = self.alg.center()?;
        let prims = z.primitive_idempotents_commutative()?;
        let mut out: Vec<Vec<Elt>> = prims
            .iter()
            .map(|c| {
                Mat::row_vec(self.field(), c).mul(&zsect).expect("dims").row(0).to_vec()
            })
            .collect();
        out.sort_by_key(|b| {
            let principal = self.augmentation(b) != 0;
            (if principal { 0 } else { 1 }, self.ideal_dim(b), b.clone())
        });
        Ok(out)
    }

    /// The Brauer map at P: truncation of a P-fixed element to the group
    /// elements centralizing P.
    pub fn brauer_map(&self, x: &[Elt], p: &Subgroup) -> Result<Vec<Elt>> {
        if !self.is_fixed_by(x, p) {
            return Err(ModRepError::Precondition(
                "element is not fixed by P-conjugation".into(),
            ));
        }
        let g = &self.group;
        let mut out = vec![0; x.len()];
        for (h, &c) in x.iter().enumerate() {
            if c != 0 && p.element_indices().iter().all(|&u| g.mul(h, u) == g.mul(u, h)) {
                out[h] = c;
            }
        }
        Ok(out)
    }

    /// Defect groups of a block: the maximal p-subgroups P with
    /// Br_P(b) != 0 (all conjugate).
    pub fn defect_groups(&self, b: &[Elt]) -> Result<Vec<Subgroup>> {
        let p = self.field().p();
        let mut hits: Vec<Subgroup> = Vec::new();
        for s in self.group.subgroups()? {
            if !s.as_group().is_p_group(p) {
                continue;
            }
            let br = self.brauer_map(b, &s)?;
            if br.iter().any(|&c| c != 0) {
                hits.push(s);
            }
        }
        let max = hits.iter().map(|s| s.order()).max().unwrap_or(1);
        let out: Vec<Subgroup> = hits.into_iter().filter(|s| s.order() == max).collect();
        for w in out.windows(2) {
            if !w[0].is_conjugate_to(&w[1]) {
                return Err(ModRepError::SearchFailure(
                    "maximal Brauer-nonvanishing p-subgroups not all conjugate".into(),
                ));
            }
        }
        Ok(out)
    }

    /// A primitive idempotent i of (kGb)^P with Br_P(i) != 0, for P a defect
    /// group of b. Deterministic: first such component of the primitive
    /// decomposition of b inside (kG)^P.
    pub fn source_idempotent(&self, b: &[Elt], p: &Subgroup) -> Result<Vec<Elt>> {
        let (c, csect) = self.fixed_point_algebra(p)?;
        let span = Span::new(csect.clone());
        let b_c = span
            .coords(b)
            .ok_or_else(|| ModRepError::Precondition("block not P-fixed".into()))?;
        let prims = primitive_idempotent_decomposition(&c, &b_c)?;
        for pc in &prims {
            let lift = Mat::row_vec(self.field(), pc).mul(&csect).expect("dims").row(0).to_vec();
            let br = self.brauer_map(&lift, p)?;
            if br.iter().any(|&x| x != 0) {
                return Ok(lift);
            }
        }
        Err(ModRepError::SearchFailure(
            "no primitive fixed idempotent with nonzero Brauer image".into(),
        ))
    }

    /// Full block package for a block idempotent b.
    pub fn block_datum(&self, b: &[Elt]) -> Result<BlockDatum> {
        let f = self.field().clone();
        let defect = self
            .defect_groups(b)?
            .into_iter()
            .next()
            .ok_or_else(|| ModRepError::SearchFailure("no defect group found".into()))?;
        let (block_algebra, block_sect) = self.alg.corner(b)?;
        let source = self.source_idempotent(b, &defect)?;
        let (src_alg, source_sect) = self.alg.corner(&source)?;
        // restrict the symmetrising form (coefficient of the identity)
        let amb_form = self
            .alg
            .sym_form()
            .expect("group algebras carry their symmetrising form")
            .to_vec();
        let form: Vec<Elt> =
            (0..src_alg.dim()).map(|j| self.alg.apply_form(&amb_form, source_sect.row(j))).collect();
        let source_algebra = src_alg.with_sym_form(form);
        let span = Span::new(source_sect.clone());
        let mut p_image = Vec::with_capacity(defect.order());
        for &g in defect.element_indices() {
            let x = self.alg.mul(&source, &self.alg.mul(&self.alg.basis_elem(g), &source));
            let coords = span
                .coords(&x)
                .ok_or_else(|| ModRepError::SearchFailure("igi not in source algebra".into()))?;
            if !source_algebra.is_unit_elem(&coords) {
                return Err(ModRepError::SearchFailure(
                    "image of defect-group element not invertible".into(),
                ));
            }
            p_image.push(coords);
        }
        let _ = f;
        Ok(BlockDatum {
            block: b.to_vec(),
            block_algebra,
            block_sect,
            defect,
            source,
            source_algebra,
            source_sect,
            p_image,
        })
    }
}

impl GroupAlgebra {
    /// The permutation module k[G/H] (left cosets).
    pub fn coset_module(&self, h: &Subgroup) -> AModule {
        let f = self.field().clone();
        let reps = h.left_coset_reps();
        let m = reps.len();
        let act = (0..self.group.order())
            .map(|g| {
                Mat::from_fn(&f, m, m, |r, c| {
                    // g * (reps[c] H) = reps[r] H ?
                    let img = self.group.mul(g, reps[c]);
                    if h.coset_of(img, &reps) == r {
                        1
                    } else {
                        0
                    }
                })
            })
            .collect();
        AModule::new(&self.alg, act).expect("permutation action is consistent")
    }

    /// The trivial module k.
    pub fn trivial_module(&self) -> AModule {
        let f = self.field().clone();
        let act = vec![Mat::identity(&f, 1); self.group.order()];
        AModule::new(&self.alg, act).expect("consistent")
    }
}

/// Relative trace Tr_Q^G(phi) = sum over coset representatives x of
/// rho(x) phi rho(x)^{-1}, for phi an endomorphism of u commuting with Q.
pub fn relative_trace(kg: &GroupAlgebra, u: &AModule, q: &Subgroup, phi: &Mat) -> Mat {
    let f = kg.field().clone();
    let mut out = Mat::zero(&f, u.dim(), u.dim());
    for &x in &q.left_coset_reps() {
        let rx = &u.actions()[x];
        let rxi = &u.actions()[kg.group().inv(x)];
        out = out.add(&rx.mul(phi).expect("dims").mul(rxi).expect("dims")).expect("dims");
    }
    out
}

/// Higman's criterion: u is relatively Q-projective iff the identity lies
/// in the image of the relative trace map on End_{kQ}(u).
pub fn is_relatively_projective(kg: &GroupAlgebra, u: &AModule, q: &Subgroup) -> Result<bool> {
    if u.algebra().dim() != kg.algebra().dim() {
        return Err(ModRepError::AlgebraMismatch("module is not over this group algebra".into()));
    }
    let f = kg.field().clone();
    let d = u.dim();
    let pairs: Vec<(Mat, Mat)> = q
        .element_indices()
        .iter()
        .map(|&x| (u.actions()[x].clone(), u.actions()[x].clone()))
        .collect();
    let endq = crate::module::intertwiner_space(&f, d, d, &pairs);
    let mut rows: Vec<Vec<Elt>> = Vec::new();
    for phi in &endq {
        let tr = relative_trace(kg, u, q, phi);
        rows.push((0..d * d).map(|t| tr.get(t / d, t % d)).collect());
    }
    if rows.is_empty() {
        return Ok(d == 0);
    }
    let span = Span::new(Mat::from_rows(&f, rows));
    let id: Vec<Elt> = (0..d * d).map(|t| if t / d == t % d { 1 } else { 0 }).collect();
    Ok(span.contains(&id))
}

/// A vertex of an indecomposable module: a subgroup of minimal order
/// relative to which the module is projective. All minimal ones are
/// conjugate; the first is returned.
pub fn vertex(kg: &GroupAlgebra, u: &AModule) -> Result<Subgroup> {
    if crate::module::decompose(u)?.len() != 1 {
        return Err(ModRepError::Precondition("vertex requires an indecomposable module".into()));
    }
    let mut subs = kg.group().subgroups()?;
    subs.sort_by_key(|s| s.order());
    let mut minimal: Vec<Subgroup> = Vec::new();
    let mut min_order = usize::MAX;
    for s in subs {
        if s.order() > min_order {
            break;
        }
        if is_relatively_projective(kg, u, &s)? {
            min_order = s.order();
            minimal.push(s);
        }
    }
    for w in minimal.windows(2) {
        if !w[0].is_conjugate_to(&w[1]) {
            return Err(ModRepError::SearchFailure("minimal vertices not conjugate".into()));
        }
    }
    minimal
        .into_iter()
        .next()
        .ok_or_else(|| ModRepError::SearchFailure("no vertex found (G itself must work)".into()))
}

/// Everything attached to one block: the idempotent, the block algebra with
/// its embedding, a defect group, a source idempotent, the source algebra
/// A = i*kG*i (with the restricted symmetrising form), and the image of the
/// defect group in A. `p_image[j]` is the image of the j-th element of
/// `defect.element_indices()`.
pub struct BlockDatum {
    pub block: Vec<Elt>,
    pub block_algebra: FDAlgebra,
    pub block_sect: Mat,
    pub defect: Subgroup,
    pub source: Vec<Elt>,
    pub source_algebra: FDAlgebra,
    pub source_sect: Mat,
    pub p_image: Vec<Vec<Elt>>,
}

impl BlockDatum {
    /// The group algebra of the defect group, plus the image in A of each of
    /// its basis elements (aligned with the element order of `kp.group()`...
    /// i.e. of `defect.as_group()`).
    pub fn defect_group_algebra(&self, kg: &GroupAlgebra) -> (FDAlgebra, Vec<Vec<Elt>>) {
        let pgrp = self.defect.as_group();
        let kp = FDAlgebra::group_algebra(kg.field(), &pgrp);
        let images: Vec<Vec<Elt>> = (0..pgrp.order())
            .map(|j| {
                let parent_idx = kg
                    .group()
                    .index_of(pgrp.perm(j))
                    .expect("subgroup elements lie in the parent");
                let pos = self
                    .defect
                    .element_indices()
                    .binary_search(&parent_idx)
                    .expect("element of the defect group");
                self.p_image[pos].clone()
            })
            .collect();
        (kp, images)
    }

    /// A as an (A, kP)-bimodule and as a (kP, A)-bimodule.
    pub fn source_bimodules(&self, kg: &GroupAlgebra) -> Result<(Bimodule, Bimodule, FDAlgebra)> {
        let (kp, images) = self.defect_group_algebra(kg);
        let reg = Bimodule::regular(&self.source_algebra);
        let right = reg.restrict_right(&kp, &images)?;
        let left = reg.restrict_left(&kp, &images)?;
        Ok((right, left, kp))
    }
}

/// Is the source algebra A a direct summand of A (x)_{kP} A as an
/// (A,A)-bimodule? True for genuine source algebras (separable equivalence
/// with the defect group algebra).
pub fn verify_separable(kg: &GroupAlgebra, datum: &BlockDatum) -> Result<bool> {
    let (x, y, _) = datum.source_bimodules(kg)?;
    let (t, _, _) = tensor_over(&x, &y)?;
    let reg = Bimodule::regular(&datum.source_algebra);
    is_direct_summand(&reg, &t)
}

/// Exhibit a basis of A = i*kG*i permuted by the two-sided P-action
/// (u, v): a -> u a v. Rows are ambient kG coefficient vectors. Greedy
/// orbit packing over the elements i g i.
pub fn p_stable_basis(kg: &GroupAlgebra, datum: &BlockDatum) -> Result<Mat> {
    let f = kg.field().clone();
    let alg = kg.algebra();
    let dim_a = datum.source_algebra.dim();
    let i = &datum.source;
    let mut chosen: Vec<Vec<Elt>> = Vec::new();
    let mut span = Mat::zero(&f, 0, alg.dim());
    let mut seen: std::collections::HashSet<Vec<Elt>> = std::collections::HashSet::new();
    for g in 0..kg.group().order() {
        if span.rows() == dim_a {
            break;
        }
        let a0 = alg.mul(i, &alg.mul(&alg.basis_elem(g), i));
        if a0.iter().all(|&c| c == 0) || seen.contains(&a0) {
            continue;
        }
        // full two-sided P-orbit of a0
        let mut orbit: Vec<Vec<Elt>> = Vec::new();
        for &u in datum.defect.element_indices() {
            for &v in datum.defect.element_indices() {
                let x = alg.mul(&alg.basis_elem(u), &alg.mul(&a0, &alg.basis_elem(v)));
                if !orbit.contains(&x) {
                    orbit.push(x);
                }
            }
        }
        let cand_rows = chosen.iter().chain(&orbit).cloned().collect::<Vec<_>>();
        let cand = Mat::from_rows(&f, cand_rows);
        if cand.rank() == chosen.len() + orbit.len() && chosen.len() + orbit.len() <= dim_a {
            for x in &orbit {
                seen.insert(x.clone());
            }
            chosen.extend(orbit);
            span = Mat::from_rows(&f, chosen.clone());
        }
    }
    if chosen.len() == dim_a {
        Ok(Mat::from_rows(&f, chosen))
    } else {
        Err(ModRepError::SearchFailure("no two-sided stable basis found".into()))
    }
}

/// Gram matrix of the algebra's symmetrising form: s(e_i e_j).
pub fn form_gram(a: &FDAlgebra) -> Result<Mat> {
    let form = a
        .sym_form()
        .ok_or_else(|| ModRepError::Precondition("algebra has no symmetrising form".into()))?
        .to_vec();
    Ok(Mat::from_fn(a.field(), a.dim(), a.dim(), |i, j| {
        a.apply_form(&form, &a.mul(&a.basis_elem(i), &a.basis_elem(j)))
    }))
}

/// Is the stored symmetrising form nondegenerate (and symmetric)?
pub fn form_nondegenerate(a: &FDAlgebra) -> Result<bool> {
    let g = form_gram(a)?;
    Ok(g.inverse().is_some() && g.entries() == g.transpose().entries())
}
