//! Acceptance gate: the eleven primary criteria, one pass/fail line each.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use modrep_core::algebra::FDAlgebra;
use modrep_core::bimodule::{tensor_over, Bimodule};
use modrep_core::blocks::{
    form_nondegenerate, p_stable_basis, verify_separable, BlockDatum, GroupAlgebra,
};
use modrep_core::complex::{
    dual_complex, form_dual_iso, hom_complex, minimize, tensor_complexes, verify_certificate,
    BimoduleComplex,
};
use modrep_core::findim::{findim_probe, separable_transfer_check, FindimVerdict};
use modrep_core::linalg::{Elt, Fq, Mat};
use modrep_core::module::hom_space;
use modrep_core::perm::builtin;
use modrep_core::rickard::{
    stable_transport, transport_y, verify_rickard, verify_splendid, verify_stable_morita,
};
use modrep_core::structure::{morita_evidence, MoritaVerdict};
use modrep_core::yoshida::{
    build_n, build_n_for_block, recollement_check, stable_yoshida, theorem1_check,
    yoshida_algebra, YoshidaAlgebra,
};

fn group_alg(q: u64, name: &str) -> FDAlgebra {
    let f = Fq::from_order(q).unwrap();
    FDAlgebra::group_algebra(&f, &builtin(name).unwrap())
}

fn p_group_yoshida(q: u64, name: &str) -> YoshidaAlgebra {
    let f = Fq::from_order(q).unwrap();
    let p = builtin(name).unwrap();
    let a = FDAlgebra::group_algebra(&f, &p);
    let images: Vec<Vec<Elt>> = (0..p.order()).map(|i| a.basis_elem(i)).collect();
    yoshida_algebra(build_n(&a, &p, &images).unwrap()).unwrap()
}

/// Every block of the corpus: group algebras of S3 (p=2,3), A4 (p=2), and
/// the p-groups C2, C3, C4, V4, D8, Q8 at their own primes.
fn corpus() -> Vec<(&'static str, u64, GroupAlgebra)> {
    let mut out = Vec::new();
    for (name, q) in [
        ("S3", 2),
        ("S3", 3),
        ("A4", 2),
        ("C2", 2),
        ("C3", 3),
        ("C4", 2),
        ("V4", 2),
        ("D8", 2),
        ("Q8", 2),
    ] {
        let f = Fq::from_order(q).unwrap();
        out.push((name, q, GroupAlgebra::new(&f, &builtin(name).unwrap())));
    }
    out
}

fn corpus_block_data() -> Vec<(String, GroupAlgebra, BlockDatum)> {
    let mut out = Vec::new();
    for (name, q, kg) in corpus() {
        for (i, b) in kg.blocks().unwrap().iter().enumerate() {
            let datum = kg.block_datum(b).unwrap();
            out.push((format!("{name}/GF({q}) block {i}"), kg.clone(), datum));
        }
    }
    out
}

fn line(n: u32, what: &str, ok: bool) {
    println!("criterion {n} ({what}): {}", if ok { "pass" } else { "FAIL" });
    assert!(ok, "criterion {n} ({what}) failed");
}

#[test]
fn criterion_01_block_census() {
    let t0 = Instant::now();
    let mut ok = true;
    for (name, q, want) in [("S3", 2u64, vec![2usize, 4]), ("S3", 3, vec![6]), ("A4", 2, vec![8])]
    {
        let t = Instant::now();
        let f = Fq::from_order(q).unwrap();
        let kg = GroupAlgebra::new(&f, &builtin(name).unwrap());
        let blocks = kg.blocks().unwrap();
        let mut dims: Vec<usize> = blocks.iter().map(|b| kg.ideal_dim(b)).collect();
        if name == "A4" {
            ok &= blocks.len() == 1;
        } else {
            dims.sort_unstable();
            let mut w = want.clone();
            w.sort_unstable();
            ok &= dims == w;
        }
        // idempotents central, orthogonal, summing to 1
        let a = kg.algebra();
        let mut sum = vec![0; a.dim()];
        for (i, b) in blocks.iter().enumerate() {
            ok &= a.is_idempotent(b);
            for k in 0..a.dim() {
                let e = a.basis_elem(k);
                ok &= a.mul(b, &e) == a.mul(&e, b);
            }
            for (j, c) in blocks.iter().enumerate() {
                if i != j {
                    ok &= a.mul(b, c).iter().all(|&x| x == 0);
                }
            }
            sum = a.add(&sum, b);
        }
        ok &= sum == a.unit();
        ok &= t.elapsed() < Duration::from_secs(1);
    }
    let _ = t0;
    line(1, "block census", ok);
}

#[test]
fn criterion_02_defect_and_source() {
    let t0 = Instant::now();
    let mut ok = true;
    let f2 = Fq::prime(2).unwrap();
    let ks3 = GroupAlgebra::new(&f2, &builtin("S3").unwrap());
    let blocks = ks3.blocks().unwrap();
    ok &= ks3.augmentation(&blocks[0]) != 0;
    let d0 = ks3.block_datum(&blocks[0]).unwrap();
    ok &= d0.defect.order() == 2;
    ok &= d0.source_algebra.dim() == 2;
    let kc2 = group_alg(2, "C2");
    let ev = morita_evidence(&d0.source_algebra, &kc2, None).unwrap();
    ok &= matches!(ev.verdict, MoritaVerdict::EquivalentEvidence);
    let d1 = ks3.block_datum(&blocks[1]).unwrap();
    ok &= d1.defect.order() == 1;
    let f3 = Fq::prime(3).unwrap();
    let ks3p3 = GroupAlgebra::new(&f3, &builtin("S3").unwrap());
    let b = &ks3p3.blocks().unwrap()[0];
    let d3 = ks3p3.block_datum(b).unwrap();
    ok &= d3.source_algebra.dim() == 6;
    for (kg, d) in [(&ks3, &d0), (&ks3, &d1), (&ks3p3, &d3)] {
        ok &= p_stable_basis(kg, d).is_ok();
        ok &= form_nondegenerate(&d.source_algebra).unwrap();
    }
    ok &= t0.elapsed() < Duration::from_secs(5);
    line(2, "defect and source", ok);
}

#[test]
fn criterion_03_theorem1_corpus() {
    let t0 = Instant::now();
    let mut ok = true;
    for (label, kg, datum) in corpus_block_data() {
        let rep = theorem1_check(&kg, &datum).unwrap();
        let good = matches!(rep.verdict, MoritaVerdict::EquivalentEvidence);
        if !good {
            println!("  theorem1 {label}: verdict {:?}", rep.verdict);
        }
        ok &= good;
        ok &= !matches!(rep.verdict, MoritaVerdict::Distinguished);
    }
    ok &= t0.elapsed() < Duration::from_secs(60);
    line(3, "theorem 1 corpus", ok);
}

/// Independent cross-check of dim E: sum of dim Hom(N_Q, N_R) over all
/// ordered pairs of subgroup summands.
fn hom_sum(y: &YoshidaAlgebra) -> usize {
    let mut total = 0;
    for u in &y.n.summands {
        for v in &y.n.summands {
            total += hom_space(u, v).unwrap().len();
        }
    }
    total
}

#[test]
fn criterion_04_yoshida_dimensions() {
    let mut ok = true;
    let yc2 = p_group_yoshida(2, "C2");
    ok &= yc2.e.dim() == 5 && hom_sum(&yc2) == 5;
    let yc3 = p_group_yoshida(3, "C3");
    ok &= yc3.e.dim() == 6 && hom_sum(&yc3) == 6;
    for (label, kg, datum) in corpus_block_data() {
        let y = yoshida_algebra(build_n_for_block(&kg, &datum).unwrap()).unwrap();
        let good = y.e.dim() == hom_sum(&y);
        if !good {
            println!("  hom-sum mismatch for {label}");
        }
        ok &= good;
    }
    line(4, "yoshida dimensions", ok);
}

#[test]
fn criterion_05_recollement() {
    let t0 = Instant::now();
    let mut ok = true;
    for (label, kg, datum) in corpus_block_data() {
        let y = yoshida_algebra(build_n_for_block(&kg, &datum).unwrap()).unwrap();
        let rep = recollement_check(&y).unwrap();
        let good =
            rep.corner_iso_ok && rep.cartan_ok && rep.dim_e == rep.dim_ideal + rep.dim_stable;
        if !good {
            println!("  recollement failure for {label}");
        }
        ok &= good;
    }
    let yc2 = p_group_yoshida(2, "C2");
    let r2 = recollement_check(&yc2).unwrap();
    ok &= (r2.dim_stable, r2.dim_ideal) == (1, 4);
    let yc3 = p_group_yoshida(3, "C3");
    let r3 = recollement_check(&yc3).unwrap();
    ok &= (r3.dim_stable, r3.dim_ideal) == (1, 5);
    ok &= t0.elapsed() < Duration::from_secs(10);
    line(5, "recollement", ok);
}

/// A random complex: the tensor product of two two-term complexes of free
/// bimodules with differentials given by central elements.
fn random_complex(a: &FDAlgebra, rng: &mut ChaCha8Rng) -> BimoduleComplex {
    let center = a.center_basis();
    let two_term = |rng: &mut ChaCha8Rng| {
        let (m, n) = (rng.random_range(1..=2usize), rng.random_range(1..=2usize));
        let reg = Bimodule::regular(a);
        let copies_m: Vec<&Bimodule> = (0..m).map(|_| &reg).collect();
        let copies_n: Vec<&Bimodule> = (0..n).map(|_| &reg).collect();
        let src = Bimodule::direct_sum(a, a, &copies_m);
        let tgt = Bimodule::direct_sum(a, a, &copies_n);
        // block matrix of right-multiplications by random central elements
        let f = a.field();
        let mut d = Mat::zero(f, tgt.dim(), src.dim());
        for bi in 0..n {
            for bj in 0..m {
                let mut z = vec![0; a.dim()];
                for r in 0..center.rows() {
                    if rng.random_range(0..f.q()) == 0 {
                        z = a.add(&z, center.row(r));
                    }
                }
                let rm = a.right_mult(&z);
                for i in 0..a.dim() {
                    for j in 0..a.dim() {
                        d.set(bi * a.dim() + i, bj * a.dim() + j, rm.get(i, j));
                    }
                }
            }
        }
        let min = rng.random_range(-1..=1i64);
        BimoduleComplex::new(a, a, min, vec![tgt, src], vec![d]).unwrap()
    };
    let u = two_term(rng);
    let v = two_term(rng);
    tensor_complexes(&u, &v).unwrap()
}

#[test]
fn criterion_06_sign_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let algebras = [group_alg(2, "C2"), group_alg(3, "C3"), group_alg(2, "C4"), group_alg(4, "C2")];
    let mut ok = true;
    for i in 0..50 {
        let a = &algebras[i % algebras.len()];
        let x = random_complex(a, &mut rng);
        ok &= x.validate().is_ok();
        let xd = dual_complex(&x);
        ok &= xd.validate().is_ok();
        let xdd = dual_complex(&xd);
        ok &= xdd.validate().is_ok();
        // (V*)* = V degreewise with the same differentials
        for n in x.min_deg()..=x.max_deg() {
            ok &= x.term_dim(n) == xdd.term_dim(n);
            ok &= x.diff(n) == xdd.diff(n);
        }
        let h = hom_complex(&x, &x).unwrap();
        ok &= h.validate().is_ok();
        // Hom(V, A) = V* realized through the symmetrising form
        ok &= form_dual_iso(&x).is_ok();
        // minimize preserves homology, with an exact certificate
        let (m, cert) = minimize(&x).unwrap();
        ok &= m.validate().is_ok();
        ok &= x.homology_dims() == m.homology_dims();
        ok &= verify_certificate(&x, &m, &cert);
        if !ok {
            println!("  sign suite failure at iteration {i}");
            break;
        }
    }
    line(6, "sign conventions", ok);
}

#[test]
fn criterion_07_rickard_harness() {
    let t0 = Instant::now();
    let mut ok = true;
    let f = Fq::prime(2).unwrap();
    let p = builtin("C2").unwrap();
    let a = FDAlgebra::group_algebra(&f, &p);
    let images: Vec<Vec<Elt>> = (0..p.order()).map(|i| a.basis_elem(i)).collect();
    let ident = BimoduleComplex::concentrated(&Bimodule::regular(&a), 0);

    let r = verify_rickard(&ident).unwrap();
    ok &= r.pass;
    let r = verify_rickard(&ident.shift(1)).unwrap();
    ok &= r.pass;

    // corruption: A + A in degree 0 is not invertible
    let reg = Bimodule::regular(&a);
    let dbl = Bimodule::direct_sum(&a, &a, &[&reg, &reg]);
    let r = verify_rickard(&BimoduleComplex::concentrated(&dbl, 0)).unwrap();
    ok &= !r.pass && r.left_projective_ok && r.right_projective_ok;

    // splendid: pass on A and on the free bimodule A (x)_{k1} A
    ok &= verify_splendid(&ident, &p, &images, &images).unwrap();
    let k1 = FDAlgebra::group_algebra(&f, &builtin("C1").unwrap());
    let left = Bimodule::regular(&a).restrict_right(&k1, &[a.unit().to_vec()]).unwrap();
    let right = Bimodule::regular(&a).restrict_left(&k1, &[a.unit().to_vec()]).unwrap();
    let (free, _, _) = tensor_over(&left, &right).unwrap();
    ok &= verify_splendid(&BimoduleComplex::concentrated(&free, 0), &p, &images, &images).unwrap();

    // fail on a non-p-permutation term: the 3-dim syzygy of the simple
    let k = Bimodule::new(
        &a,
        &a,
        vec![Mat::identity(&f, 1), Mat::identity(&f, 1)],
        vec![Mat::identity(&f, 1), Mat::identity(&f, 1)],
    )
    .unwrap();
    let (env, module) = k.envelope();
    let projs = modrep_core::module::projectives(&env).unwrap();
    let syz = modrep_core::module::syzygy(&module, &projs).unwrap();
    let lact = (0..a.dim())
        .map(|i| {
            let mut coord = vec![0; env.dim()];
            coord[i * a.dim()] = 1;
            syz.act_of(&coord)
        })
        .collect();
    let ract = (0..a.dim())
        .map(|j| {
            let mut coord = vec![0; env.dim()];
            coord[j] = 1;
            syz.act_of(&coord)
        })
        .collect();
    let syzb = Bimodule::new(&a, &a, lact, ract).unwrap();
    ok &= !verify_splendid(&BimoduleComplex::concentrated(&syzb, 0), &p, &images, &images).unwrap();

    ok &= t0.elapsed() < Duration::from_secs(30);
    line(7, "rickard harness", ok);
}

/// Yoshida algebras of the corpus source algebras small enough for the
/// transport construction on one core: the p-groups and the S3 blocks.
fn transport_corpus() -> Vec<(String, YoshidaAlgebra, YoshidaAlgebra, FDAlgebra)> {
    let mut out = Vec::new();
    for (q, name) in [(2u64, "C2"), (3, "C3"), (2, "C4"), (2, "V4")] {
        let y = p_group_yoshida(q, name);
        let y2 = p_group_yoshida(q, name);
        let a = group_alg(q, name);
        out.push((format!("k{name}/GF({q})"), y, y2, a));
    }
    for q in [2u64, 3] {
        let f = Fq::prime(q).unwrap();
        let kg = GroupAlgebra::new(&f, &builtin("S3").unwrap());
        let datum = kg.block_datum(&kg.blocks().unwrap()[0]).unwrap();
        let src = datum.source_algebra.clone();
        let y = yoshida_algebra(build_n_for_block(&kg, &datum).unwrap()).unwrap();
        let y2 = yoshida_algebra(build_n_for_block(&kg, &datum).unwrap()).unwrap();
        out.push((format!("b0 kS3/GF({q}) source"), y, y2, src));
    }
    out
}

#[test]
fn criterion_08_transport() {
    let mut ok = true;
    for (label, y, y2, a) in transport_corpus() {
        let ident = BimoduleComplex::concentrated(&Bimodule::regular(&a), 0);
        for (what, x) in [("identity", ident.clone()), ("shift", ident.shift(1))] {
            let r = transport_y(&x, &y, &y2).unwrap();
            let good = r.pass && r.summands_ok && r.summands_dual_ok && r.terms_projective_ok;
            if !good {
                println!("  transport failure: {label} {what}");
            }
            ok &= good;
        }
    }
    line(8, "theorem 2 transport", ok);
}

#[test]
fn criterion_09_stable_layer() {
    let mut ok = true;
    // dims match criterion 5
    let yc2 = p_group_yoshida(2, "C2");
    let (q2, i2) = stable_yoshida(&yc2).unwrap();
    ok &= (q2.alg.dim(), i2) == (1, 4);
    let yc3 = p_group_yoshida(3, "C3");
    let (q3, i3) = stable_yoshida(&yc3).unwrap();
    ok &= (q3.alg.dim(), i3) == (1, 5);

    let a = group_alg(2, "C2");
    ok &= verify_stable_morita(&Bimodule::regular(&a)).unwrap().pass;

    // the b0 kS3 <-> kC2 bridge
    let f = Fq::prime(2).unwrap();
    let kg = GroupAlgebra::new(&f, &builtin("S3").unwrap());
    let datum = kg.block_datum(&kg.blocks().unwrap()[0]).unwrap();
    let e_src = yoshida_algebra(build_n_for_block(&kg, &datum).unwrap()).unwrap();
    let e_c2 = p_group_yoshida(2, "C2");
    let kc2 = group_alg(2, "C2");
    let (kp, images) = datum.defect_group_algebra(&kg);
    ok &= kp.dim() == 2;
    let m = Bimodule::regular(&datum.source_algebra).restrict_right(&kc2, &images).unwrap();
    let r = stable_transport(&m, &e_src, &e_c2).unwrap();
    ok &= r.pass && r.summand_bijection_ok;
    ok &= matches!(r.evidence.verdict, MoritaVerdict::EquivalentEvidence);

    // pure-projective counterexample: fails on the A-summand condition
    let k1 = FDAlgebra::group_algebra(&f, &builtin("C1").unwrap());
    let left = Bimodule::regular(&a).restrict_right(&k1, &[a.unit().to_vec()]).unwrap();
    let right = Bimodule::regular(&a).restrict_left(&k1, &[a.unit().to_vec()]).unwrap();
    let (free, _, _) = tensor_over(&left, &right).unwrap();
    let rep = verify_stable_morita(&free).unwrap();
    ok &= !rep.pass && !rep.left_shape_ok;
    ok &= rep.left_projective_ok && rep.right_projective_ok;

    line(9, "stable layer", ok);
}

#[test]
fn criterion_10_findim() {
    let t0 = Instant::now();
    let mut ok = true;
    for (q, name, cutoffs, expect) in [
        (2u64, "C2", (10usize, 8u32), 2u32),
        (3, "C3", (10, 8), 2),
        (2, "C4", (12, 8), 2),
        (2, "V4", (12, 8), 3),
    ] {
        let y = p_group_yoshida(q, name);
        let r = findim_probe(&y.e.opposite(), cutoffs.0, cutoffs.1, Some(expect)).unwrap();
        let good = r.max_finite_pdim == expect
            && matches!(r.verdict, Some(FindimVerdict::LowerBoundAttained));
        if !good {
            println!(
                "  findim {name}: max {} expected {expect} (census {})",
                r.max_finite_pdim, r.census_count
            );
        }
        ok &= good;
    }
    // sectional-rank regressions
    for (name, s) in [("C4", 1u32), ("V4", 2), ("D8", 2), ("Q8", 2)] {
        ok &= builtin(name).unwrap().sectional_rank(2).unwrap() == s;
    }
    ok &= t0.elapsed() < Duration::from_secs(600);
    line(10, "finitistic dimension", ok);
}

#[test]
fn criterion_11_separable_transfer() {
    let t0 = Instant::now();
    let mut ok = true;

    // instance 1: G = P a p-group (A = kP), M the regular bimodule
    let yc2 = p_group_yoshida(2, "C2");
    let a = group_alg(2, "C2");
    let m = Bimodule::regular(&a);
    let r = separable_transfer_check(&m, &yc2.n.n, &yc2.n.n, 10, 8).unwrap();
    ok &= r.pass && r.add_equalities && r.probes_agree;

    // instance 2: principal block of kS3 over GF(2), A = source algebra = kC2
    let f2 = Fq::prime(2).unwrap();
    let ks3 = GroupAlgebra::new(&f2, &builtin("S3").unwrap());
    let datum = ks3.block_datum(&ks3.blocks().unwrap()[0]).unwrap();
    ok &= verify_separable(&ks3, &datum).unwrap();
    let n_a = build_n_for_block(&ks3, &datum).unwrap();
    let (kp, images) = datum.defect_group_algebra(&ks3);
    let _ = kp;
    let m = Bimodule::regular(&datum.source_algebra)
        .restrict_right(&group_alg(2, "C2"), &images)
        .unwrap();
    let r = separable_transfer_check(&m, &n_a.n, &yc2.n.n, 10, 8).unwrap();
    ok &= r.pass && r.add_equalities && r.probes_agree;

    // instance 3: kS3 over GF(3), A = kS3 (dim 6), B = kC3
    let f3 = Fq::prime(3).unwrap();
    let ks3p3 = GroupAlgebra::new(&f3, &builtin("S3").unwrap());
    let datum3 = ks3p3.block_datum(&ks3p3.blocks().unwrap()[0]).unwrap();
    ok &= verify_separable(&ks3p3, &datum3).unwrap();
    let n_a3 = build_n_for_block(&ks3p3, &datum3).unwrap();
    let (kp3, images3) = datum3.defect_group_algebra(&ks3p3);
    let yc3 = p_group_yoshida(3, "C3");
    let _ = kp3;
    let m3 = Bimodule::regular(&datum3.source_algebra)
        .restrict_right(&group_alg(3, "C3"), &images3)
        .unwrap();
    let r = separable_transfer_check(&m3, &n_a3.n, &yc3.n.n, 8, 6).unwrap();
    ok &= r.pass && r.add_equalities && r.probes_agree;

    ok &= t0.elapsed() < Duration::from_secs(300);
    line(11, "separable transfer", ok);
}
