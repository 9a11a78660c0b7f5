//! Finitistic-dimension probes: scan a census of small modules for the
//! largest finite projective dimension, and check that separable
//! equivalences transfer the probe.

use crate::algebra::FDAlgebra;
use crate::bimodule::{decompose_bimodule, tensor_over, Bimodule};
use crate::error::{ModRepError, Result};
use crate::linalg::{Elt, Mat};
use crate::module::{
    decompose, end_algebra, is_isomorphic, is_projective, pdim, projectives, AModule, Pdim,
    Projectives,
};
use crate::rickard::remove_regular_summands;

/// Enumerating all vectors of F^d is capped at this many.
const VECTOR_ENUM_BOUND: u64 = 1 << 16;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FindimVerdict {
    /// the probe attained the expected finitistic dimension exactly
    LowerBoundAttained,
    /// every finite projective dimension found is below the expected value
    Consistent,
    /// a module with finite projective dimension above the expected value
    Violation,
}

pub struct FindimReport {
    /// modules scanned, up to isomorphism
    pub census_count: usize,
    /// (dimension, pdim) of each module with finite projective dimension
    pub finite: Vec<(usize, u32)>,
    pub max_finite_pdim: u32,
    /// modules where the syzygy cutoff was reached without a decision
    pub undecided: usize,
    pub dim_cutoff: usize,
    pub syzygy_cutoff: u32,
    pub expected: Option<u32>,
    pub verdict: Option<FindimVerdict>,
}

fn all_vectors(f: &crate::linalg::Fq, d: usize) -> Option<Vec<Vec<Elt>>> {
    let q = f.q();
    let total = q.checked_pow(d as u32)?;
    if total > VECTOR_ENUM_BOUND {
        return None;
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut v = vec![0u16; d];
    loop {
        out.push(v.clone());
        let mut k = 0;
        while k < d {
            v[k] += 1;
            if (v[k] as u64) < q {
                break;
            }
            v[k] = 0;
            k += 1;
        }
        if k == d {
            break;
        }
    }
    Some(out)
}

fn subspace_signature(rows: &Mat) -> Vec<Elt> {
    rows.rref().r.entries().to_vec()
}

/// Distinct submodules of `p` that are joins of at most two cyclic
/// submodules, as row bases.
fn small_submodules(p: &AModule) -> Vec<Mat> {
    let f = p.field().clone();
    let d = p.dim();
    let mut seen: std::collections::HashSet<Vec<Elt>> = std::collections::HashSet::new();
    let mut cyclic: Vec<Mat> = Vec::new();
    let Some(vectors) = all_vectors(&f, d) else {
        return Vec::new();
    };
    for v in &vectors {
        if v.iter().all(|&c| c == 0) {
            continue;
        }
        let k = p.closed_span(&Mat::row_vec(&f, v));
        if seen.insert(subspace_signature(&k)) {
            cyclic.push(k);
        }
    }
    let mut out = cyclic.clone();
    for i in 0..cyclic.len() {
        for j in i + 1..cyclic.len() {
            let join = cyclic[i].vstack(&cyclic[j]).expect("same width").row_basis();
            if seen.insert(subspace_signature(&join)) {
                out.push(join);
            }
        }
    }
    out
}

/// Projective base modules for the census: indecomposable projectives and
/// their pairwise direct sums, within the dimension cutoff.
fn base_projectives(a: &FDAlgebra, projs: &Projectives, dim_cutoff: usize) -> Vec<AModule> {
    let reps: Vec<&AModule> =
        projs.reps.iter().map(|&k| &projs.summands[k].module).collect();
    let mut out: Vec<AModule> = Vec::new();
    for (i, r) in reps.iter().enumerate() {
        if r.dim() <= dim_cutoff {
            out.push((*r).clone());
        }
        for s in reps.iter().skip(i) {
            if r.dim() + s.dim() <= dim_cutoff {
                out.push(AModule::direct_sum(a, &[r, s]));
            }
        }
    }
    out
}

/// Cheap isomorphism invariant: the dimension together with the rank of the
/// action of every algebra basis element. Full isomorphism tests only run
/// between modules with equal signatures.
fn iso_signature(a: &FDAlgebra, u: &AModule) -> Vec<usize> {
    let mut sig = vec![u.dim()];
    for i in 0..a.dim() {
        sig.push(u.act_of(&a.basis_elem(i)).rank());
    }
    sig
}

/// Scan quotients of small projectives by small submodules for finite
/// projective dimensions. Modules are deduplicated up to isomorphism.
pub fn findim_probe(
    a: &FDAlgebra,
    dim_cutoff: usize,
    syzygy_cutoff: u32,
    expected: Option<u32>,
) -> Result<FindimReport> {
    // pin a generating set so hom computations never recompute one
    let a = &a.clone().with_gens(a.generating_elements());
    let projs = projectives(a)?;
    let mut census: Vec<AModule> = Vec::new();
    let mut by_sig: std::collections::HashMap<Vec<usize>, Vec<usize>> =
        std::collections::HashMap::new();
    for p in base_projectives(a, &projs, dim_cutoff) {
        for k in small_submodules(&p) {
            let (u, _, _) = p.quotient_by_rows(&k)?;
            if u.dim() == 0 || u.dim() > dim_cutoff {
                continue;
            }
            let sig = iso_signature(a, &u);
            let bucket = by_sig.entry(sig).or_default();
            let mut fresh = true;
            for &idx in bucket.iter() {
                if is_isomorphic(&census[idx], &u)? {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                bucket.push(census.len());
                census.push(u);
            }
        }
    }
    let mut finite = Vec::new();
    let mut undecided = 0;
    let mut max_finite_pdim = 0;
    for u in &census {
        match pdim(u, &projs, syzygy_cutoff)? {
            Pdim::Finite(n) => {
                finite.push((u.dim(), n));
                max_finite_pdim = max_finite_pdim.max(n);
            }
            Pdim::Infinite => {}
            Pdim::AtLeast(_) => undecided += 1,
        }
    }
    let verdict = expected.map(|e| {
        if finite.iter().any(|&(_, n)| n > e) {
            FindimVerdict::Violation
        } else if max_finite_pdim == e {
            FindimVerdict::LowerBoundAttained
        } else {
            FindimVerdict::Consistent
        }
    });
    Ok(FindimReport {
        census_count: census.len(),
        finite,
        max_finite_pdim,
        undecided,
        dim_cutoff,
        syzygy_cutoff,
        expected,
        verdict,
    })
}

/// add(X) ⊆ add(Y): every indecomposable summand of X occurs among the
/// indecomposable summands of Y.
fn add_contained(x: &AModule, y: &AModule) -> Result<bool> {
    if x.dim() == 0 {
        return Ok(true);
    }
    let ys = decompose(y)?;
    for s in decompose(x)? {
        let mut found = false;
        for t in &ys {
            if is_isomorphic(&s.module, &t.module)? {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

pub struct SeparableTransferReport {
    pub projective_both_sides: bool,
    /// A is a summand of M (x)_B M*, and B of M* (x)_A M
    pub separably_linked: bool,
    /// M* (x)_A U ∈ add(V) and M (x)_B V ∈ add(U)
    pub add_conditions: bool,
    /// the inclusions are equalities: add(M (x) V) = add(U) and symmetrically
    pub add_equalities: bool,
    pub probe_u: FindimReport,
    pub probe_v: FindimReport,
    pub probes_agree: bool,
    pub pass: bool,
}

/// Verify the hypotheses of the separable-equivalence transfer and compare
/// finitistic-dimension probes of End(U) and End(V) (right modules, so the
/// probes run over the opposite endomorphism algebras).
pub fn separable_transfer_check(
    m: &Bimodule,
    u: &AModule,
    v: &AModule,
    dim_cutoff: usize,
    syzygy_cutoff: u32,
) -> Result<SeparableTransferReport> {
    let a = m.left_algebra().clone();
    let b = m.right_algebra().clone();
    if u.algebra().dim() != a.dim() || v.algebra().dim() != b.dim() {
        return Err(ModRepError::AlgebraMismatch("modules do not match the bimodule".into()));
    }
    let projs_a = projectives(&a)?;
    let bop = b.opposite();
    let projs_bop = projectives(&bop)?;
    let right_of_m = AModule::new(&bop, m.ract().to_vec())?;
    let projective_both_sides =
        is_projective(&m.left_module(), &projs_a)? && is_projective(&right_of_m, &projs_bop)?;
    let md = m.dual();
    let (mm, _, _) = tensor_over(m, &md)?;
    let (mm2, _, _) = tensor_over(&md, m)?;
    let contains = |prod: &Bimodule, alg: &FDAlgebra| -> Result<bool> {
        let parts = decompose_bimodule(prod)?.into_iter().map(|s| s.module).collect();
        Ok(remove_regular_summands(alg, parts)?.is_some())
    };
    let separably_linked = contains(&mm, &a)? && contains(&mm2, &b)?;
    // transported modules
    let (mu, _, _) = tensor_over(&md, &Bimodule::from_left_module(u))?;
    let mu = mu.left_module();
    let (mv, _, _) = tensor_over(m, &Bimodule::from_left_module(v))?;
    let mv = mv.left_module();
    let add_conditions = add_contained(&mu, v)? && add_contained(&mv, u)?;
    let add_equalities =
        add_conditions && add_contained(v, &mu)? && add_contained(u, &mv)?;
    let (eu, _) = end_algebra(u)?;
    let (ev, _) = end_algebra(v)?;
    let probe_u = findim_probe(&eu.opposite(), dim_cutoff, syzygy_cutoff, None)?;
    let probe_v = findim_probe(&ev.opposite(), dim_cutoff, syzygy_cutoff, None)?;
    let probes_agree = probe_u.max_finite_pdim == probe_v.max_finite_pdim;
    let pass = projective_both_sides
        && separably_linked
        && add_conditions
        && add_equalities
        && probes_agree;
    Ok(SeparableTransferReport {
        projective_both_sides,
        separably_linked,
        add_conditions,
        add_equalities,
        probe_u,
        probe_v,
        probes_agree,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::GroupAlgebra;
    use crate::linalg::Fq;
    use crate::perm::builtin;
    use crate::yoshida::{build_n, build_n_for_block, yoshida_algebra, YoshidaAlgebra};

    fn p_group_yoshida(q: u64, name: &str) -> YoshidaAlgebra {
        let f = Fq::prime(q).unwrap();
        let p = builtin(name).unwrap();
        let a = FDAlgebra::group_algebra(&f, &p);
        let images: Vec<Vec<Elt>> = (0..p.order()).map(|i| a.basis_elem(i)).collect();
        yoshida_algebra(build_n(&a, &p, &images).unwrap()).unwrap()
    }

    #[test]
    fn semisimple_probe_is_zero() {
        // kC3 over GF(2) is semisimple: every module is projective
        let f = Fq::prime(2).unwrap();
        let a = FDAlgebra::group_algebra(&f, &builtin("C3").unwrap());
        let r = findim_probe(&a, 8, 6, Some(0)).unwrap();
        assert_eq!(r.max_finite_pdim, 0);
        assert_eq!(r.verdict, Some(FindimVerdict::LowerBoundAttained));
    }

    #[test]
    fn self_injective_probe_is_zero() {
        // kC2: only projectives have finite pdim, all other modules periodic
        let f = Fq::prime(2).unwrap();
        let a = FDAlgebra::group_algebra(&f, &builtin("C2").unwrap());
        let r = findim_probe(&a, 8, 6, None).unwrap();
        assert_eq!(r.max_finite_pdim, 0);
        assert_eq!(r.undecided, 0);
    }

    #[test]
    fn yoshida_c2_probe_attains_two() {
        // the Yoshida algebra of C2 has finitistic dimension 1 + s(C2) = 2
        let y = p_group_yoshida(2, "C2");
        let r = findim_probe(&y.e.opposite(), 10, 8, Some(2)).unwrap();
        assert_eq!(r.verdict, Some(FindimVerdict::LowerBoundAttained));
        assert_eq!(r.max_finite_pdim, 2);
    }

    #[test]
    fn resolution_length_matches_reported_pdim() {
        // for each finite pdim n found, the syzygy chain has exactly n steps
        let y = p_group_yoshida(2, "C2");
        let a = y.e.opposite();
        let projs = projectives(&a).unwrap();
        let mut checked = 0;
        for p in base_projectives(&a, &projs, 10) {
            for k in small_submodules(&p) {
                let (u, _, _) = p.quotient_by_rows(&k).unwrap();
                if u.dim() == 0 {
                    continue;
                }
                if let Pdim::Finite(n) = pdim(&u, &projs, 8).unwrap() {
                    let mut cur = u.clone();
                    for _ in 0..n {
                        cur = crate::module::syzygy(&cur, &projs).unwrap();
                        assert!(cur.dim() > 0, "resolution ended early");
                    }
                    cur = crate::module::syzygy(&cur, &projs).unwrap();
                    assert_eq!(cur.dim(), 0, "resolution longer than reported");
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn separable_transfer_trivial_case() {
        // A = B = kC2, M = the regular bimodule, U = V = N
        let y = p_group_yoshida(2, "C2");
        let f = Fq::prime(2).unwrap();
        let a = FDAlgebra::group_algebra(&f, &builtin("C2").unwrap());
        let m = Bimodule::regular(&a);
        let n = &y.n.n;
        let r = separable_transfer_check(&m, n, n, 10, 8).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn separable_transfer_source_algebra_gf3() {
        // A = source algebra of kS3 over GF(3) (all of kS3), B = kC3,
        // M = A restricted on the right to kC3, U = N of A, V = N of kC3
        let f = Fq::prime(3).unwrap();
        let kg = GroupAlgebra::new(&f, &builtin("S3").unwrap());
        let blocks = kg.blocks().unwrap();
        assert_eq!(blocks.len(), 1);
        let datum = kg.block_datum(&blocks[0]).unwrap();
        assert_eq!(datum.source_algebra.dim(), 6);
        let n_a = build_n_for_block(&kg, &datum).unwrap();
        let (kp, images) = datum.defect_group_algebra(&kg);
        let m = Bimodule::regular(&datum.source_algebra).restrict_right(&kp, &images).unwrap();
        let y_b = p_group_yoshida(3, "C3");
        let r = separable_transfer_check(&m, &n_a.n, &y_b.n.n, 8, 6).unwrap();
        assert!(r.projective_both_sides);
        assert!(r.separably_linked);
        assert!(r.add_conditions, "A (x)_{{kP}} V must land in add(U)");
        assert!(r.add_equalities);
        assert!(r.probes_agree);
        assert!(r.pass);
    }
}
