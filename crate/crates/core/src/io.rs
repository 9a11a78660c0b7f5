//! File formats: permutation groups as line-oriented text with cycle
//! notation, algebras and bimodule complexes as JSON, plus a content-hash
//! cache with atomic writes.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::FDAlgebra;
use crate::bimodule::Bimodule;
use crate::complex::BimoduleComplex;
use crate::error::{ModRepError, Result};
use crate::linalg::{Elt, Fq, Mat};
use crate::perm::{builtin, Perm, PermGroup, Point};

fn parse_err(line: usize, msg: impl Into<String>) -> ModRepError {
    ModRepError::Parse { line, msg: msg.into() }
}

/// Parse one permutation in cycle notation, e.g. `(1 2 3)(4 5)` or `()`.
/// Points are 1-based in the text format.
pub fn parse_cycles(s: &str, degree: usize, line: usize) -> Result<Perm> {
    let mut perm: Perm = (0..degree as u16).collect();
    let mut used = vec![false; degree];
    let s = s.trim();
    if s == "()" || s == "e" || s == "id" {
        return Ok(perm);
    }
    let mut rest = s;
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| parse_err(line, "expected '(' starting a cycle"))?;
        if rest[..open].trim() != "" {
            return Err(parse_err(line, "unexpected text between cycles"));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| parse_err(line, "unclosed cycle"))?;
        let body = &rest[open + 1..close];
        rest = &rest[close + 1..];
        let points: Vec<usize> = body
            .split([' ', ','])
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| parse_err(line, format!("bad point {t:?}")))
            })
            .collect::<Result<_>>()?;
        if points.is_empty() {
            continue;
        }
        for &p in &points {
            if p == 0 || p > degree {
                return Err(parse_err(line, format!("point {p} outside 1..={degree}")));
            }
        }
        for w in 0..points.len() {
            let from = points[w] - 1;
            let to = points[(w + 1) % points.len()] - 1;
            if used[from] {
                return Err(parse_err(line, format!("point {} repeated", points[w])));
            }
            used[from] = true;
            perm[from] = to as Point;
        }
    }
    Ok(perm)
}

fn format_cycles(p: &Perm) -> String {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || p[start] as usize == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = p[x] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Parse the group text format: an optional builtin name on the first
/// line, or a `perm <degree>` header followed by one generator per line in
/// cycle notation. `#` starts a comment.
pub fn parse_group_str(text: &str) -> Result<PermGroup> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first_no, first) = lines
        .next()
        .ok_or_else(|| parse_err(0, "empty group file"))?;
    if let Some(rest) = first.strip_prefix("perm") {
        let degree: usize = rest
            .trim()
            .parse()
            .map_err(|_| parse_err(first_no, "expected `perm <degree>`"))?;
        if degree == 0 || degree > u16::MAX as usize {
            return Err(parse_err(first_no, "degree out of range"));
        }
        let mut gens = Vec::new();
        for (no, l) in lines {
            gens.push(parse_cycles(l, degree, no)?);
        }
        PermGroup::new(degree, gens)
    } else if lines.next().is_none() {
        builtin(first).ok_or_else(|| parse_err(first_no, format!("unknown builtin group {first:?}")))
    } else {
        Err(parse_err(first_no, "expected `perm <degree>` or a builtin name"))
    }
}

/// Resolve a CLI group argument: a builtin name, or a path to a group file.
pub fn resolve_group(arg: &str) -> Result<PermGroup> {
    if let Some(g) = builtin(arg) {
        return Ok(g);
    }
    let text = fs::read_to_string(arg)?;
    parse_group_str(&text)
}

pub fn serialize_group(g: &PermGroup) -> String {
    let mut out = format!("perm {}\n", g.degree());
    for gen in g.generators() {
        out.push_str(&format_cycles(gen));
        out.push('\n');
    }
    out
}

#[derive(Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    #[serde(default = "one")]
    pub e: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u16>>,
}

fn one() -> u32 {
    1
}

impl FieldSpec {
    pub fn of(f: &Fq) -> FieldSpec {
        FieldSpec {
            p: f.p(),
            e: f.e(),
            modulus: if f.e() > 1 { Some(f.modulus().to_vec()) } else { None },
        }
    }

    pub fn build(&self) -> Result<Fq> {
        let q = self
            .p
            .checked_pow(self.e)
            .ok_or_else(|| ModRepError::NotPrime(self.p))?;
        let f = Fq::from_order(q)?;
        if let Some(m) = &self.modulus {
            if m != f.modulus() {
                return Err(ModRepError::Precondition(
                    "field modulus differs from the built-in Conway polynomial".into(),
                ));
            }
        }
        Ok(f)
    }
}

/// Algebra JSON: structure constants as sparse triples
/// [i, j, k, value] meaning (e_i e_j) has coefficient `value` at e_k.
#[derive(Serialize, Deserialize)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub dim: usize,
    pub sc: Vec<(usize, usize, usize, Elt)>,
    pub unit: Vec<Elt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sym_form: Option<Vec<Elt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl AlgebraFile {
    pub fn of(a: &FDAlgebra) -> AlgebraFile {
        let d = a.dim();
        let mut sc = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let prod = a.mul(&a.basis_elem(i), &a.basis_elem(j));
                for (k, &c) in prod.iter().enumerate() {
                    if c != 0 {
                        sc.push((i, j, k, c));
                    }
                }
            }
        }
        AlgebraFile {
            field: FieldSpec::of(a.field()),
            dim: d,
            sc,
            unit: a.unit().to_vec(),
            sym_form: a.sym_form().map(|s| s.to_vec()),
            labels: a.labels().map(|l| l.to_vec()),
        }
    }

    pub fn build(&self) -> Result<FDAlgebra> {
        let f = self.field.build()?;
        let mut sc = vec![Mat::zero(&f, self.dim, self.dim); self.dim];
        for &(i, j, k, v) in &self.sc {
            if i >= self.dim || j >= self.dim || k >= self.dim {
                return Err(ModRepError::Parse {
                    line: 0,
                    msg: format!("structure constant index ({i},{j},{k}) out of range"),
                });
            }
            sc[i].set(j, k, v);
        }
        if self.unit.len() != self.dim {
            return Err(ModRepError::DimMismatch("unit vector length".into()));
        }
        let mut a = FDAlgebra::new(f, sc, self.unit.clone())?;
        a.validate()?;
        if let Some(s) = &self.sym_form {
            a = a.with_sym_form(s.clone());
        }
        if let Some(l) = &self.labels {
            a = a.with_labels(l.clone());
        }
        Ok(a)
    }
}

pub fn read_algebra(path: &Path) -> Result<FDAlgebra> {
    let text = fs::read_to_string(path)?;
    let file: AlgebraFile = serde_json::from_str(&text)?;
    file.build()
}

pub fn write_algebra(path: &Path, a: &FDAlgebra) -> Result<()> {
    atomic_write(path, &(serde_json::to_string_pretty(&AlgebraFile::of(a))? + "\n"))
}

#[derive(Serialize, Deserialize)]
pub struct TermFile {
    pub dim: usize,
    /// row-major action matrices, one per basis element of the left algebra
    pub lact: Vec<Vec<Vec<Elt>>>,
    pub ract: Vec<Vec<Vec<Elt>>>,
}

/// Complex JSON. Terms are listed from `min_degree` upward; `diffs[t]`
/// maps term t+1 to term t. `convention` must be "chain" (differentials
/// lower the degree) or "cochain" (raise the degree; reindexed on load by
/// n -> -n, which needs no sign change).
#[derive(Serialize, Deserialize)]
pub struct ComplexFile {
    pub convention: String,
    pub min_degree: i64,
    pub terms: Vec<TermFile>,
    pub diffs: Vec<Vec<Vec<Elt>>>,
}

fn mat_to_rows(m: &Mat) -> Vec<Vec<Elt>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect()).collect()
}

fn rows_to_mat(f: &Fq, rows: &[Vec<Elt>], expect_rows: usize, expect_cols: usize) -> Result<Mat> {
    if rows.len() != expect_rows || rows.iter().any(|r| r.len() != expect_cols) {
        return Err(ModRepError::DimMismatch(format!(
            "matrix must be {expect_rows} x {expect_cols}"
        )));
    }
    Ok(Mat::from_fn(f, expect_rows, expect_cols, |i, j| rows[i][j]))
}

impl ComplexFile {
    pub fn of(c: &BimoduleComplex) -> ComplexFile {
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for n in c.min_deg()..=c.max_deg() {
            let t = c.term(n).expect("support");
            terms.push(TermFile {
                dim: t.dim(),
                lact: t.lact().iter().map(mat_to_rows).collect(),
                ract: t.ract().iter().map(mat_to_rows).collect(),
            });
            if n > c.min_deg() {
                diffs.push(mat_to_rows(&c.diff(n)));
            }
        }
        ComplexFile {
            convention: "chain".into(),
            min_degree: c.min_deg(),
            terms,
            diffs,
        }
    }

    /// Build the complex over the given algebras. Returns the complex and a
    /// note describing any reindexing applied to the input.
    pub fn build(&self, a: &FDAlgebra, b: &FDAlgebra) -> Result<(BimoduleComplex, String)> {
        let f = a.field();
        if self.diffs.len() + 1 != self.terms.len() && !self.terms.is_empty() {
            return Err(ModRepError::DimMismatch("one differential per adjacent pair".into()));
        }
        let (term_order, min, note): (Vec<usize>, i64, String) = match self.convention.as_str() {
            "chain" => ((0..self.terms.len()).collect(), self.min_degree, String::from("chain input: used as-is")),
            "cochain" => {
                // cochain degree n becomes chain degree -n; term list reverses
                let max = self.min_degree + self.terms.len() as i64 - 1;
                (
                    (0..self.terms.len()).rev().collect(),
                    -max,
                    String::from("cochain input: reindexed n -> -n (no sign change)"),
                )
            }
            other => {
                return Err(ModRepError::Parse {
                    line: 0,
                    msg: format!("unknown convention {other:?} (expected chain or cochain)"),
                })
            }
        };
        let mut terms = Vec::new();
        for &t in &term_order {
            let tf = &self.terms[t];
            if tf.lact.len() != a.dim() || tf.ract.len() != b.dim() {
                return Err(ModRepError::DimMismatch(
                    "one action matrix per algebra basis element".into(),
                ));
            }
            let lact = tf
                .lact
                .iter()
                .map(|m| rows_to_mat(f, m, tf.dim, tf.dim))
                .collect::<Result<Vec<_>>>()?;
            let ract = tf
                .ract
                .iter()
                .map(|m| rows_to_mat(f, m, tf.dim, tf.dim))
                .collect::<Result<Vec<_>>>()?;
            terms.push(Bimodule::new(a, b, lact, ract)?);
        }
        let mut diffs = Vec::new();
        for t in 0..terms.len().saturating_sub(1) {
            // diffs in file order; for cochain input the reversed term order
            // flips sources and targets, which is exactly the reindexing
            let (src, tgt, raw) = match self.convention.as_str() {
                "chain" => (t + 1, t, &self.diffs[t]),
                _ => (t + 1, t, &self.diffs[self.diffs.len() - 1 - t]),
            };
            diffs.push(rows_to_mat(f, raw, terms[tgt].dim(), terms[src].dim())?);
        }
        let c = BimoduleComplex::new(a, b, min, terms, diffs)?;
        Ok((c, note))
    }
}

pub fn read_complex(path: &Path, a: &FDAlgebra, b: &FDAlgebra) -> Result<(BimoduleComplex, String)> {
    let text = fs::read_to_string(path)?;
    let file: ComplexFile = serde_json::from_str(&text)?;
    file.build(a, b)
}

pub fn write_complex(path: &Path, c: &BimoduleComplex) -> Result<()> {
    atomic_write(path, &(serde_json::to_string(&ComplexFile::of(c))? + "\n"))
}

/// Write via a temp file in the same directory, then rename.
pub fn atomic_write(path: &Path, content: &str) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".tmp-{}-{}",
        std::process::id(),
        path.file_name().and_then(|s| s.to_str()).unwrap_or("out")
    ));
    fs::write(&tmp, content)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Cache of computed artifacts keyed by a content hash of operation,
/// parameters and inputs.
pub struct Workspace {
    pub root: PathBuf,
}

const MANIFEST_VERSION: &str = "1";

#[derive(Serialize, Deserialize)]
struct Manifest {
    version: String,
    tool: String,
}

impl Workspace {
    pub fn open(root: impl Into<PathBuf>) -> Result<Workspace> {
        let root = root.into();
        fs::create_dir_all(root.join("cache"))?;
        let manifest = root.join("manifest.json");
        if manifest.exists() {
            let m: Manifest = serde_json::from_str(&fs::read_to_string(&manifest)?)?;
            if m.version != MANIFEST_VERSION {
                return Err(ModRepError::Precondition(format!(
                    "workspace manifest version {} != {}",
                    m.version, MANIFEST_VERSION
                )));
            }
        } else {
            let m = Manifest {
                version: MANIFEST_VERSION.into(),
                tool: format!("modrep {}", env!("CARGO_PKG_VERSION")),
            };
            atomic_write(&manifest, &(serde_json::to_string_pretty(&m)? + "\n"))?;
        }
        Ok(Workspace { root })
    }

    pub fn key(op: &str, params: &BTreeMap<String, String>) -> String {
        let mut hasher = Sha256::new();
        hasher.update(op.as_bytes());
        hasher.update([0]);
        for (k, v) in params {
            hasher.update(k.as_bytes());
            hasher.update([1]);
            hasher.update(v.as_bytes());
            hasher.update([2]);
        }
        let digest = hasher.finalize();
        let mut out = String::with_capacity(64);
        for b in digest {
            out.push_str(&format!("{b:02x}"));
        }
        out
    }

    pub fn lookup(&self, key: &str) -> Option<String> {
        fs::read_to_string(self.root.join("cache").join(format!("{key}.txt"))).ok()
    }

    pub fn store(&self, key: &str, content: &str) -> Result<()> {
        atomic_write(&self.root.join("cache").join(format!("{key}.txt")), content)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tensor_complexes;

    #[test]
    fn cycle_parse_roundtrip() {
        let p = parse_cycles("(1 2 3)(4 5)", 6, 1).unwrap();
        assert_eq!(p, vec![1, 2, 0, 4, 3, 5]);
        assert_eq!(format_cycles(&p), "(1 2 3)(4 5)");
        assert_eq!(parse_cycles("()", 3, 1).unwrap(), vec![0, 1, 2]);
        assert!(parse_cycles("(1 1)", 3, 1).is_err());
        assert!(parse_cycles("(0 2)", 3, 1).is_err());
        assert!(parse_cycles("(1 4)", 3, 1).is_err());
    }

    #[test]
    fn group_file_roundtrip() {
        let g = parse_group_str("perm 3\n(1 2)\n(1 2 3)\n").unwrap();
        assert_eq!(g.order(), 6);
        let text = serialize_group(&g);
        let g2 = parse_group_str(&text).unwrap();
        assert_eq!(g2.order(), 6);
        // builtin by name
        let s3 = parse_group_str("S3\n").unwrap();
        assert_eq!(s3.order(), 6);
        assert!(parse_group_str("NoSuchGroup").is_err());
        assert!(parse_group_str("").is_err());
    }

    #[test]
    fn algebra_json_roundtrip() {
        let f = Fq::prime(2).unwrap();
        let a = FDAlgebra::group_algebra(&f, &builtin("S3").unwrap());
        let file = AlgebraFile::of(&a);
        let text = serde_json::to_string(&file).unwrap();
        let parsed: AlgebraFile = serde_json::from_str(&text).unwrap();
        let b = parsed.build().unwrap();
        assert_eq!(b.dim(), 6);
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(
                    a.mul(&a.basis_elem(i), &a.basis_elem(j)),
                    b.mul(&b.basis_elem(i), &b.basis_elem(j))
                );
            }
        }
        assert_eq!(a.sym_form(), b.sym_form());
    }

    #[test]
    fn complex_json_roundtrip_and_cochain() {
        let f = Fq::prime(2).unwrap();
        let a = FDAlgebra::group_algebra(&f, &builtin("C2").unwrap());
        let reg = Bimodule::regular(&a);
        let norm = Mat::from_rows(&f, vec![vec![1, 1], vec![1, 1]]);
        let c =
            BimoduleComplex::new(&a, &a, 0, vec![reg.clone(), reg.clone()], vec![norm]).unwrap();
        let file = ComplexFile::of(&c);
        let text = serde_json::to_string(&file).unwrap();
        let parsed: ComplexFile = serde_json::from_str(&text).unwrap();
        let (c2, note) = parsed.build(&a, &a).unwrap();
        assert!(note.contains("chain"));
        assert_eq!(c2.min_deg(), 0);
        assert_eq!(c2.diff(1).entries(), c.diff(1).entries());
        // cochain input: degrees 0,1 with d raising become chain degrees 0,-1
        let mut parsed: ComplexFile = serde_json::from_str(&text).unwrap();
        parsed.convention = "cochain".into();
        let (cc, note) = parsed.build(&a, &a).unwrap();
        assert!(note.contains("reindexed"));
        assert_eq!(cc.min_deg(), -1);
        assert_eq!(cc.max_deg(), 0);
        cc.validate().unwrap();
        // a degree-0 tensor square still works after the round trip
        let t = tensor_complexes(&c2, &c2).unwrap();
        assert_eq!(t.max_deg(), 2);
    }

    #[test]
    fn workspace_cache_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let ws = Workspace::open(dir.path()).unwrap();
        let mut params = BTreeMap::new();
        params.insert("group".into(), "S3".into());
        let key = Workspace::key("blocks", &params);
        assert!(ws.lookup(&key).is_none());
        ws.store(&key, "report body\n").unwrap();
        assert_eq!(ws.lookup(&key).as_deref(), Some("report body\n"));
        // reopening checks the manifest
        let ws2 = Workspace::open(dir.path()).unwrap();
        assert_eq!(ws2.lookup(&key).as_deref(), Some("report body\n"));
    }
}
