//! Command-line surface: deterministic text reports, machine-readable
//! result files, and a content-hash cache.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::algebra::FDAlgebra;
use crate::bimodule::Bimodule;
use crate::blocks::{form_nondegenerate, p_stable_basis, GroupAlgebra};
use crate::error::{ModRepError, Result};
use crate::findim::{findim_probe, FindimVerdict};
use crate::io::{read_algebra, read_complex, resolve_group, Workspace};
use crate::linalg::{Elt, Fq};
use crate::perm::PermGroup;
use crate::rickard::{stable_transport, transport_y, verify_rickard, verify_splendid, verify_stable_morita};
use crate::structure::MoritaVerdict;
use crate::yoshida::{
    build_n, build_n_for_block, recollement_check, stable_yoshida, theorem1_check,
    yoshida_algebra, YoshidaAlgebra,
};

const LEDGER: &str = "\
conventions: chain complexes (differentials lower degree); \
coMack modules are right E-modules (probes run over E^op); \
subgroups in enumeration order, trivial subgroup first";

#[derive(Parser)]
#[command(name = "modrep", version, about = "block theory and Mackey-functor computations over small finite fields")]
struct Cli {
    /// seed for randomized isomorphism searches (recorded in reports)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// workspace directory for the artifact cache and result files
    #[arg(long, global = true)]
    workspace: Option<PathBuf>,
    /// bypass the cache (results are still stored)
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct GroupArgs {
    /// builtin group name or path to a group file
    group: String,
    /// field characteristic
    #[arg(short)]
    p: u64,
    /// field extension degree
    #[arg(short, default_value_t = 1)]
    e: u32,
}

#[derive(Args)]
struct BlockArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// block index in the census order (principal block first)
    #[arg(long, default_value_t = 0)]
    block: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// block census of a group algebra
    Blocks(GroupArgs),
    /// defect groups of one block
    Defect(BlockArgs),
    /// source idempotent and source algebra of one block
    Source(BlockArgs),
    /// the endomorphism algebra E of N = sum of A (x)_{kQ} k
    Yoshida(YoshidaArgs),
    /// compare E with the group-side endomorphism algebra
    Theorem1(BlockArgs),
    /// the recollement layers tau-E-tau, E, E-bar of one block
    Recollement(BlockArgs),
    /// the stable quotient E-bar = E / (E tau E)
    StableYoshida(BlockArgs),
    /// verify a Rickard complex from a complex file
    RickardVerify(RickardArgs),
    /// transport a Rickard complex to the endomorphism algebras
    Transport(TransportArgs),
    /// verify a stable equivalence of Morita type
    StableEq(StableEqArgs),
    /// finitistic-dimension probe
    Findim(FindimArgs),
    /// p-sectional rank of a group
    Srank(GroupArgs),
}

#[derive(Args)]
struct YoshidaArgs {
    /// builtin group name or path to a group file
    #[arg(long)]
    group: Option<String>,
    #[arg(short, default_value_t = 0)]
    p: u64,
    #[arg(short, default_value_t = 1)]
    e: u32,
    #[arg(long, default_value_t = 0)]
    block: usize,
    /// JSON file with a p-group algebra (basis ordered by group elements)
    #[arg(long, conflicts_with = "group")]
    source_algebra: Option<PathBuf>,
    /// group file for the p-group acting on the source algebra
    #[arg(long, requires = "source_algebra")]
    p_group: Option<String>,
}

#[derive(Args)]
struct RickardArgs {
    /// complex JSON file
    #[arg(long)]
    complex: PathBuf,
    /// left algebra JSON file
    #[arg(long)]
    left: PathBuf,
    /// right algebra JSON file
    #[arg(long)]
    right: PathBuf,
    /// additionally check splendidness over the given p-group
    #[arg(long)]
    splendid: bool,
    /// p-group for the splendid check; both algebras must be group algebras
    /// of groups containing it, with basis in element order
    #[arg(long, short = 'P', requires = "splendid")]
    p_group: Option<String>,
    /// group whose algebra is the left algebra (for the splendid embedding)
    #[arg(long, requires = "splendid")]
    left_group: Option<String>,
    /// group whose algebra is the right algebra (for the splendid embedding)
    #[arg(long, requires = "splendid")]
    right_group: Option<String>,
}

#[derive(Args)]
struct TransportArgs {
    /// complex JSON file over the two p-group algebras
    #[arg(long)]
    complex: PathBuf,
    /// left p-group (builtin name or file)
    #[arg(long)]
    left_group: String,
    /// right p-group (builtin name or file)
    #[arg(long)]
    right_group: String,
    #[arg(short)]
    p: u64,
    #[arg(short, default_value_t = 1)]
    e: u32,
}

#[derive(Args)]
struct StableEqArgs {
    /// complex JSON file with a single degree-0 term: the bimodule M
    #[arg(long)]
    bimodule: PathBuf,
    /// left algebra JSON file
    #[arg(long)]
    left: Option<PathBuf>,
    /// right algebra JSON file
    #[arg(long)]
    right: Option<PathBuf>,
    /// left p-group: use its group algebra and also transport N
    #[arg(long, conflicts_with = "left")]
    left_group: Option<String>,
    /// right p-group
    #[arg(long, conflicts_with = "right", requires = "left_group")]
    right_group: Option<String>,
    #[arg(short, default_value_t = 0)]
    p: u64,
    #[arg(short, default_value_t = 1)]
    e: u32,
}

#[derive(Args)]
struct FindimArgs {
    /// probe the Yoshida algebra built from --group / --block
    #[arg(long)]
    yoshida: bool,
    #[arg(long, requires = "yoshida")]
    group: Option<String>,
    #[arg(short, default_value_t = 0)]
    p: u64,
    #[arg(short, default_value_t = 1)]
    e: u32,
    #[arg(long, default_value_t = 0)]
    block: usize,
    /// probe an algebra from a JSON file directly
    #[arg(long, conflicts_with = "yoshida")]
    algebra: Option<PathBuf>,
    /// expected finitistic dimension (verdict compares against this)
    #[arg(long)]
    expect: Option<u32>,
    #[arg(long, default_value_t = 12)]
    dim_cutoff: usize,
    #[arg(long, default_value_t = 8)]
    syzygy_cutoff: u32,
}

fn field_of(p: u64, e: u32) -> Result<Fq> {
    let q = p
        .checked_pow(e)
        .ok_or_else(|| ModRepError::ResourceBound(format!("{p}^{e} overflows")))?;
    Fq::from_order(q)
}

fn group_algebra_of(args: &GroupArgs) -> Result<(PermGroup, GroupAlgebra)> {
    let g = resolve_group(&args.group)?;
    let f = field_of(args.p, args.e)?;
    Ok((g.clone(), GroupAlgebra::new(&f, &g)))
}

fn block_of(kg: &GroupAlgebra, idx: usize) -> Result<Vec<Elt>> {
    let blocks = kg.blocks()?;
    blocks.get(idx).cloned().ok_or_else(|| {
        ModRepError::Precondition(format!("block index {idx} out of range (found {})", blocks.len()))
    })
}

fn p_group_yoshida(g: &PermGroup, f: &Fq) -> Result<YoshidaAlgebra> {
    if !g.is_p_group(f.p()) {
        return Err(ModRepError::NotPGroup { p: f.p() });
    }
    let a = FDAlgebra::group_algebra(f, g);
    let images: Vec<Vec<Elt>> = (0..g.order()).map(|i| a.basis_elem(i)).collect();
    yoshida_algebra(build_n(&a, g, &images)?)
}

fn yoshida_of_block(args: &BlockArgs) -> Result<YoshidaAlgebra> {
    let (_, kg) = group_algebra_of(&args.group)?;
    let b = block_of(&kg, args.block)?;
    let datum = kg.block_datum(&b)?;
    yoshida_algebra(build_n_for_block(&kg, &datum)?)
}

struct Report {
    body: String,
    exit: i32,
}

impl Report {
    fn new(title: &str, seed: u64) -> Report {
        let mut body = String::new();
        let _ = writeln!(body, "# modrep {title}");
        let _ = writeln!(body, "{LEDGER}");
        let _ = writeln!(body, "seed: {seed}");
        Report { body, exit: 0 }
    }
    fn line(&mut self, s: impl AsRef<str>) {
        self.body.push_str(s.as_ref());
        self.body.push('\n');
    }
    fn verdict(&mut self, pass: bool) {
        self.line(if pass { "verdict: pass" } else { "verdict: fail" });
        if !pass {
            self.exit = 1;
        }
    }
}

fn run_blocks(args: &GroupArgs, seed: u64) -> Result<Report> {
    let (g, kg) = group_algebra_of(args)?;
    let mut r = Report::new("blocks", seed);
    r.line(format!("group: {g:?}"));
    r.line(format!("field: GF({})", kg.field().q()));
    let blocks = kg.blocks()?;
    r.line(format!("blocks: {}", blocks.len()));
    for (i, b) in blocks.iter().enumerate() {
        let principal = kg.augmentation(b) != 0;
        r.line(format!(
            "block {i}: dim {}{}",
            kg.ideal_dim(b),
            if principal { " principal" } else { "" }
        ));
    }
    r.verdict(true);
    Ok(r)
}

fn run_defect(args: &BlockArgs, seed: u64) -> Result<Report> {
    let (_, kg) = group_algebra_of(&args.group)?;
    let b = block_of(&kg, args.block)?;
    let mut r = Report::new("defect", seed);
    r.line(format!("block: {}", args.block));
    let defs = kg.defect_groups(&b)?;
    let order = defs.first().map_or(1, |d| d.order());
    r.line(format!("defect group order: {order}"));
    r.line(format!("conjugates found: {}", defs.len()));
    r.verdict(true);
    Ok(r)
}

fn run_source(args: &BlockArgs, seed: u64) -> Result<Report> {
    let (_, kg) = group_algebra_of(&args.group)?;
    let b = block_of(&kg, args.block)?;
    let datum = kg.block_datum(&b)?;
    let mut r = Report::new("source", seed);
    r.line(format!("block: {} (dim {})", args.block, kg.ideal_dim(&b)));
    r.line(format!("defect group order: {}", datum.defect.order()));
    r.line(format!("source algebra dim: {}", datum.source_algebra.dim()));
    let stable = p_stable_basis(&kg, &datum).is_ok();
    let form_ok = form_nondegenerate(&datum.source_algebra)?;
    r.line(format!("PxP-stable basis: {}", if stable { "found" } else { "missing" }));
    r.line(format!("symmetrising form nondegenerate: {form_ok}"));
    r.verdict(stable && form_ok);
    Ok(r)
}

fn run_yoshida(args: &YoshidaArgs, seed: u64) -> Result<Report> {
    let y = if let Some(path) = &args.source_algebra {
        let a = read_algebra(path)?;
        let gname = args.p_group.as_deref().ok_or_else(|| {
            ModRepError::Precondition("--source-algebra needs --p-group".into())
        })?;
        let g = resolve_group(gname)?;
        if a.dim() != g.order() {
            return Err(ModRepError::DimMismatch(
                "algebra basis must be ordered by the group elements".into(),
            ));
        }
        let images: Vec<Vec<Elt>> = (0..g.order()).map(|i| a.basis_elem(i)).collect();
        yoshida_algebra(build_n(&a, &g, &images)?)?
    } else {
        let gname = args
            .group
            .clone()
            .ok_or_else(|| ModRepError::Precondition("need --group or --source-algebra".into()))?;
        yoshida_of_block(&BlockArgs {
            group: GroupArgs { group: gname, p: args.p, e: args.e },
            block: args.block,
        })?
    };
    let mut r = Report::new("yoshida", seed);
    r.line(format!("dim N: {}", y.n.n.dim()));
    let dims: Vec<usize> = y.n.summands.iter().map(|m| m.dim()).collect();
    r.line(format!("summand dims (by subgroup): {dims:?}"));
    r.line(format!("subgroup orders: {:?}", y.n.subgroup_orders));
    r.line(format!("dim E: {}", y.e.dim()));
    let tau_ok = y.e.is_idempotent(&y.tau);
    r.line(format!("tau idempotent: {tau_ok}"));
    r.verdict(tau_ok);
    Ok(r)
}

fn run_theorem1(args: &BlockArgs, seed: u64) -> Result<Report> {
    let (_, kg) = group_algebra_of(&args.group)?;
    let b = block_of(&kg, args.block)?;
    let datum = kg.block_datum(&b)?;
    let rep = theorem1_check(&kg, &datum)?;
    let mut r = Report::new("theorem1", seed);
    r.line(format!("dim End(group side): {}", rep.dim_group_side));
    r.line(format!("dim E (source side): {}", rep.dim_source_side));
    r.line(format!("group summand dims: {:?}", rep.group_summand_dims));
    r.line(format!("transported dims: {:?}", rep.transported_dims));
    r.line(format!("summand correspondence: {}", rep.correspondence_ok));
    r.line(format!("functorial isomorphism: {}", rep.functor_iso_ok));
    let verdict = match rep.verdict {
        MoritaVerdict::EquivalentEvidence => "equivalent-evidence",
        MoritaVerdict::Undecided => "undecided",
        MoritaVerdict::Distinguished => "distinguished",
    };
    r.line(format!("morita verdict: {verdict}"));
    r.verdict(matches!(rep.verdict, MoritaVerdict::EquivalentEvidence));
    Ok(r)
}

fn run_recollement(args: &BlockArgs, seed: u64) -> Result<Report> {
    let y = yoshida_of_block(args)?;
    let rep = recollement_check(&y)?;
    let mut r = Report::new("recollement", seed);
    r.line(format!("dim E: {}", rep.dim_e));
    r.line(format!("dim tau-E-tau: {}", rep.dim_corner));
    r.line(format!("dim E-tau-E: {}", rep.dim_ideal));
    r.line(format!("dim E-bar: {}", rep.dim_stable));
    r.line(format!("corner is A-opposite: {}", rep.corner_iso_ok));
    r.line(format!("dimension bookkeeping: {}", rep.cartan_ok));
    r.line(format!("corner convention: {}", rep.convention));
    r.verdict(rep.corner_iso_ok && rep.cartan_ok);
    Ok(r)
}

fn run_stable_yoshida(args: &BlockArgs, seed: u64) -> Result<Report> {
    let y = yoshida_of_block(args)?;
    let (q, ideal_dim) = stable_yoshida(&y)?;
    let mut r = Report::new("stable-yoshida", seed);
    r.line(format!("dim E: {}", y.e.dim()));
    r.line(format!("dim E-tau-E: {ideal_dim}"));
    r.line(format!("dim E-bar: {}", q.alg.dim()));
    r.verdict(y.e.dim() == ideal_dim + q.alg.dim());
    Ok(r)
}

fn run_rickard(args: &RickardArgs, seed: u64) -> Result<Report> {
    let a = read_algebra(&args.left)?;
    let b = read_algebra(&args.right)?;
    let (x, note) = read_complex(&args.complex, &a, &b)?;
    let mut r = Report::new("rickard-verify", seed);
    r.line(format!("input: {note}"));
    r.line(format!("support: {}..={}", x.min_deg(), x.max_deg()));
    let rep = verify_rickard(&x)?;
    r.line(format!("terms projective (left): {}", rep.left_projective_ok));
    r.line(format!("terms projective (right): {}", rep.right_projective_ok));
    r.line(format!("X (x) X* ~ A: {}", rep.left_identity_ok));
    r.line(format!("X* (x) X ~ A': {}", rep.right_identity_ok));
    let mut pass = rep.pass;
    if args.splendid {
        let p = resolve_group(args.p_group.as_deref().ok_or_else(|| {
            ModRepError::Precondition("--splendid needs -P <subgroup>".into())
        })?)?;
        let gl = resolve_group(args.left_group.as_deref().ok_or_else(|| {
            ModRepError::Precondition("--splendid needs --left-group".into())
        })?)?;
        let gr = resolve_group(args.right_group.as_deref().ok_or_else(|| {
            ModRepError::Precondition("--splendid needs --right-group".into())
        })?)?;
        let imgs_a = embed_group(&p, &gl, a.dim())?;
        let imgs_b = embed_group(&p, &gr, b.dim())?;
        let sp = verify_splendid(&x, &p, &imgs_a, &imgs_b)?;
        r.line(format!("splendid: {sp}"));
        pass = pass && sp;
    }
    r.verdict(pass);
    Ok(r)
}

/// Images of the elements of P as basis vectors of the group algebra of G.
fn embed_group(p: &PermGroup, g: &PermGroup, dim: usize) -> Result<Vec<Vec<Elt>>> {
    if g.order() != dim {
        return Err(ModRepError::DimMismatch(
            "algebra must be the group algebra of the given group".into(),
        ));
    }
    let mut out = Vec::with_capacity(p.order());
    for i in 0..p.order() {
        let idx = g
            .index_of(p.perm(i))
            .ok_or(ModRepError::NotSubgroup)?;
        let mut v = vec![0; dim];
        v[idx] = 1;
        out.push(v);
    }
    Ok(out)
}

fn run_transport(args: &TransportArgs, seed: u64) -> Result<Report> {
    let f = field_of(args.p, args.e)?;
    let gl = resolve_group(&args.left_group)?;
    let gr = resolve_group(&args.right_group)?;
    let ya = p_group_yoshida(&gl, &f)?;
    let yb = p_group_yoshida(&gr, &f)?;
    let (x, note) = read_complex(&args.complex, &ya.n.algebra, &yb.n.algebra)?;
    let mut r = Report::new("transport", seed);
    r.line(format!("input: {note}"));
    let rick = verify_rickard(&x)?;
    r.line(format!("rickard precondition: {}", rick.pass));
    if !rick.pass {
        r.verdict(false);
        return Ok(r);
    }
    let rep = transport_y(&x, &ya, &yb)?;
    r.line(format!("summand hypothesis (Y side): {}", rep.summands_ok));
    r.line(format!("summand hypothesis (Y' side): {}", rep.summands_dual_ok));
    r.line(format!("Y support: {}..={}", rep.y.min_deg(), rep.y.max_deg()));
    r.line(format!("terms projective both sides: {}", rep.terms_projective_ok));
    r.line(format!("Y (x) Y' ~ E: {}", rep.left_identity_ok));
    r.line(format!("Y' (x) Y ~ E': {}", rep.right_identity_ok));
    r.verdict(rep.pass);
    Ok(r)
}

fn run_stable_eq(args: &StableEqArgs, seed: u64) -> Result<Report> {
    let mut r = Report::new("stable-eq", seed);
    let (a, b, yos) = if let Some(lg) = &args.left_group {
        let rg = args.right_group.as_deref().ok_or_else(|| {
            ModRepError::Precondition("--left-group needs --right-group".into())
        })?;
        let f = field_of(args.p, args.e)?;
        let gl = resolve_group(lg)?;
        let gr = resolve_group(rg)?;
        let ya = p_group_yoshida(&gl, &f)?;
        let yb = p_group_yoshida(&gr, &f)?;
        (ya.n.algebra.clone(), yb.n.algebra.clone(), Some((ya, yb)))
    } else {
        let l = args.left.as_ref().ok_or_else(|| {
            ModRepError::Precondition("need --left/--right or --left-group/--right-group".into())
        })?;
        let rt = args.right.as_ref().ok_or_else(|| {
            ModRepError::Precondition("need --right with --left".into())
        })?;
        (read_algebra(l)?, read_algebra(rt)?, None)
    };
    let (x, note) = read_complex(&args.bimodule, &a, &b)?;
    r.line(format!("input: {note}"));
    if x.min_deg() != 0 || x.max_deg() != 0 {
        return Err(ModRepError::Precondition(
            "bimodule file must have a single degree-0 term".into(),
        ));
    }
    let m: &Bimodule = x.term(0).expect("support");
    let rep = verify_stable_morita(m)?;
    r.line(format!("M projective (left): {}", rep.left_projective_ok));
    r.line(format!("M projective (right): {}", rep.right_projective_ok));
    r.line(format!("M (x) M* = A + projective: {}", rep.left_shape_ok));
    r.line(format!("M* (x) M = A' + projective: {}", rep.right_shape_ok));
    let mut pass = rep.pass;
    if let Some((ya, yb)) = yos {
        let t = stable_transport(m, &ya, &yb)?;
        r.line(format!("nonprojective summand bijection: {}", t.summand_bijection_ok));
        r.line(format!("dim E-bar: {}", t.stable_dim));
        r.line(format!("dim E-bar': {}", t.stable_dim_prime));
        let verdict = match t.evidence.verdict {
            MoritaVerdict::EquivalentEvidence => "equivalent-evidence",
            MoritaVerdict::Undecided => "undecided",
            MoritaVerdict::Distinguished => "distinguished",
        };
        r.line(format!("stable-quotient morita verdict: {verdict}"));
        pass = pass && t.pass;
    }
    r.verdict(pass);
    Ok(r)
}

fn run_findim(args: &FindimArgs, seed: u64) -> Result<Report> {
    let mut r = Report::new("findim", seed);
    let (alg, expected) = if let Some(path) = &args.algebra {
        (read_algebra(path)?.opposite(), args.expect)
    } else if args.yoshida {
        let gname = args
            .group
            .clone()
            .ok_or_else(|| ModRepError::Precondition("--yoshida needs --group".into()))?;
        let g = resolve_group(&gname)?;
        let f = field_of(args.p, args.e)?;
        let y = if g.is_p_group(f.p()) {
            p_group_yoshida(&g, &f)?
        } else {
            yoshida_of_block(&BlockArgs {
                group: GroupArgs { group: gname, p: args.p, e: args.e },
                block: args.block,
            })?
        };
        let expected = match args.expect {
            Some(n) => Some(n),
            None => Some(1 + y.n.p.sectional_rank(f.p())?),
        };
        r.line(format!("dim E: {}", y.e.dim()));
        (y.e.opposite(), expected)
    } else {
        return Err(ModRepError::Precondition("need --yoshida or --algebra".into()));
    };
    let rep = findim_probe(&alg, args.dim_cutoff, args.syzygy_cutoff, expected)?;
    r.line(format!("census size: {}", rep.census_count));
    r.line(format!("modules with finite pdim: {}", rep.finite.len()));
    r.line(format!("max finite pdim: {}", rep.max_finite_pdim));
    r.line(format!("undecided at cutoff: {}", rep.undecided));
    if let Some(e) = rep.expected {
        r.line(format!("expected: {e}"));
    }
    match rep.verdict {
        Some(FindimVerdict::LowerBoundAttained) => {
            r.line("probe verdict: lower-bound-attained");
            r.verdict(true);
        }
        Some(FindimVerdict::Consistent) => {
            r.line("probe verdict: consistent");
            r.verdict(true);
        }
        Some(FindimVerdict::Violation) => {
            r.line("probe verdict: violation");
            r.verdict(false);
        }
        None => r.verdict(true),
    }
    Ok(r)
}

fn run_srank(args: &GroupArgs, seed: u64) -> Result<Report> {
    let g = resolve_group(&args.group)?;
    let mut r = Report::new("srank", seed);
    let s = g.sectional_rank(args.p)?;
    r.line(format!("group: {:?}", g));
    r.line(format!("p: {}", args.p));
    r.line(format!("sectional rank: {s}"));
    r.verdict(true);
    Ok(r)
}

fn dispatch(cmd: &Cmd, seed: u64) -> Result<Report> {
    match cmd {
        Cmd::Blocks(a) => run_blocks(a, seed),
        Cmd::Defect(a) => run_defect(a, seed),
        Cmd::Source(a) => run_source(a, seed),
        Cmd::Yoshida(a) => run_yoshida(a, seed),
        Cmd::Theorem1(a) => run_theorem1(a, seed),
        Cmd::Recollement(a) => run_recollement(a, seed),
        Cmd::StableYoshida(a) => run_stable_yoshida(a, seed),
        Cmd::RickardVerify(a) => run_rickard(a, seed),
        Cmd::Transport(a) => run_transport(a, seed),
        Cmd::StableEq(a) => run_stable_eq(a, seed),
        Cmd::Findim(a) => run_findim(a, seed),
        Cmd::Srank(a) => run_srank(a, seed),
    }
}

fn cache_params(cmd: &Cmd, seed: u64) -> BTreeMap<String, String> {
    let mut params = BTreeMap::new();
    params.insert("seed".into(), seed.to_string());
    // hash the raw argv so any input change misses the cache; file inputs
    // are hashed by content below
    let argv: Vec<String> = std::env::args().skip(1).collect();
    params.insert("argv".into(), argv.join("\u{1}"));
    let mut file_inputs: Vec<&PathBuf> = Vec::new();
    match cmd {
        Cmd::RickardVerify(a) => {
            file_inputs.extend([&a.complex, &a.left, &a.right]);
        }
        Cmd::Transport(a) => file_inputs.push(&a.complex),
        Cmd::StableEq(a) => {
            file_inputs.push(&a.bimodule);
            file_inputs.extend(a.left.iter());
            file_inputs.extend(a.right.iter());
        }
        Cmd::Findim(a) => file_inputs.extend(a.algebra.iter()),
        Cmd::Yoshida(a) => file_inputs.extend(a.source_algebra.iter()),
        _ => {}
    }
    for (i, path) in file_inputs.iter().enumerate() {
        let content = fs::read_to_string(path).unwrap_or_default();
        params.insert(format!("file{i}"), content);
    }
    params
}

fn exit_code_of(err: &ModRepError) -> i32 {
    match err {
        ModRepError::ResourceBound(_) | ModRepError::GroupTooLarge { .. } => 3,
        _ => 2,
    }
}

fn op_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Blocks(_) => "blocks",
        Cmd::Defect(_) => "defect",
        Cmd::Source(_) => "source",
        Cmd::Yoshida(_) => "yoshida",
        Cmd::Theorem1(_) => "theorem1",
        Cmd::Recollement(_) => "recollement",
        Cmd::StableYoshida(_) => "stable-yoshida",
        Cmd::RickardVerify(_) => "rickard-verify",
        Cmd::Transport(_) => "transport",
        Cmd::StableEq(_) => "stable-eq",
        Cmd::Findim(_) => "findim",
        Cmd::Srank(_) => "srank",
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    let workspace = cli
        .workspace
        .clone()
        .or_else(|| std::env::var_os("MODREP_WORKSPACE").map(PathBuf::from));
    let ws = match workspace.map(Workspace::open).transpose() {
        Ok(w) => w,
        Err(e) => {
            eprintln!("modrep: {e}");
            return 2;
        }
    };
    let op = op_name(&cli.cmd);
    let key = Workspace::key(op, &cache_params(&cli.cmd, cli.seed));
    if !cli.no_cache {
        if let Some(cached) = ws.as_ref().and_then(|w| w.lookup(&key)) {
            if let Some((first, body)) = cached.split_once('\n') {
                if let Some(code) = first.strip_prefix("exit: ").and_then(|c| c.parse().ok()) {
                    print!("{body}");
                    return code;
                }
            }
        }
    }
    match dispatch(&cli.cmd, cli.seed) {
        Ok(rep) => {
            print!("{}", rep.body);
            if let Some(w) = &ws {
                let artifact = format!("exit: {}\n{}", rep.exit, rep.body);
                let _ = w.store(&key, &artifact);
                let json = serde_json::json!({
                    "op": op,
                    "seed": cli.seed,
                    "exit": rep.exit,
                    "report": rep.body,
                });
                let _ = crate::io::atomic_write(
                    &w.root.join("results").join(format!("{key}.json")),
                    &(json.to_string() + "\n"),
                );
            }
            rep.exit
        }
        Err(e) => {
            eprintln!("modrep: {e}");
            exit_code_of(&e)
        }
    }
}
