//! Python bindings: permutation groups, group algebras and their blocks,
//! Yoshida-style endomorphism algebras, complex verification, and the
//! finitistic-dimension probe.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use modrep_core::algebra::FDAlgebra;
use modrep_core::blocks::GroupAlgebra as CoreGroupAlgebra;
use modrep_core::findim::{findim_probe, FindimVerdict};
use modrep_core::io::{parse_group_str, serialize_group, AlgebraFile, ComplexFile};
use modrep_core::linalg::{Elt, Fq};
use modrep_core::perm::{builtin, PermGroup};
use modrep_core::rickard::verify_rickard;
use modrep_core::structure::MoritaVerdict;
use modrep_core::yoshida::{
    build_n, build_n_for_block, recollement_check, stable_yoshida, theorem1_check,
    yoshida_algebra, YoshidaAlgebra,
};
use modrep_core::ModRepError;

fn err(e: ModRepError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field_of(p: u64, e: u32) -> PyResult<Fq> {
    let q = p
        .checked_pow(e)
        .ok_or_else(|| PyValueError::new_err(format!("{p}^{e} overflows")))?;
    Fq::from_order(q).map_err(err)
}

/// A finite permutation group, from a builtin name or a group description
/// in the `perm <degree>` text format.
#[pyclass(frozen)]
struct Group {
    g: PermGroup,
}

#[pymethods]
impl Group {
    #[new]
    fn new(text: &str) -> PyResult<Group> {
        let g = if let Some(g) = builtin(text.trim()) {
            g
        } else {
            parse_group_str(text).map_err(err)?
        };
        Ok(Group { g })
    }

    fn order(&self) -> usize {
        self.g.order()
    }

    fn degree(&self) -> usize {
        self.g.degree()
    }

    fn is_p_group(&self, p: u64) -> bool {
        self.g.is_p_group(p)
    }

    fn sectional_rank(&self, p: u64) -> PyResult<u32> {
        self.g.sectional_rank(p).map_err(err)
    }

    fn serialize(&self) -> String {
        serialize_group(&self.g)
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.g)
    }
}

/// The group algebra kG over GF(p^e), with its block decomposition.
#[pyclass(frozen)]
struct GroupAlgebra {
    kg: CoreGroupAlgebra,
}

#[pymethods]
impl GroupAlgebra {
    #[new]
    #[pyo3(signature = (group, p, e = 1))]
    fn new(group: &Group, p: u64, e: u32) -> PyResult<GroupAlgebra> {
        let f = field_of(p, e)?;
        Ok(GroupAlgebra { kg: CoreGroupAlgebra::new(&f, &group.g) })
    }

    fn dim(&self) -> usize {
        self.kg.algebra().dim()
    }

    fn field_order(&self) -> u64 {
        self.kg.field().q()
    }

    /// One dict per block, principal block first: dim, principal,
    /// defect_order.
    fn blocks<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let blocks = self.kg.blocks().map_err(err)?;
        let mut out = Vec::new();
        for b in &blocks {
            let defs = self.kg.defect_groups(b).map_err(err)?;
            let d = PyDict::new(py);
            d.set_item("dim", self.kg.ideal_dim(b))?;
            d.set_item("principal", self.kg.augmentation(b) != 0)?;
            d.set_item("defect_order", defs.first().map_or(1, |s| s.order()))?;
            out.push(d);
        }
        Ok(out)
    }

    /// Defect group order and source algebra dimension of one block.
    fn source<'py>(&self, py: Python<'py>, block: usize) -> PyResult<Bound<'py, PyDict>> {
        let datum = self.datum(block)?;
        let d = PyDict::new(py);
        d.set_item("defect_order", datum.defect.order())?;
        d.set_item("source_algebra_dim", datum.source_algebra.dim())?;
        Ok(d)
    }

    /// Compare the group-side and source-side endomorphism algebras of the
    /// sum of trivial-source induced modules for one block.
    fn theorem1<'py>(&self, py: Python<'py>, block: usize) -> PyResult<Bound<'py, PyDict>> {
        let datum = self.datum(block)?;
        let rep = theorem1_check(&self.kg, &datum).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("dim_group_side", rep.dim_group_side)?;
        d.set_item("dim_source_side", rep.dim_source_side)?;
        d.set_item("group_summand_dims", rep.group_summand_dims)?;
        d.set_item("transported_dims", rep.transported_dims)?;
        d.set_item("correspondence_ok", rep.correspondence_ok)?;
        d.set_item("functor_iso_ok", rep.functor_iso_ok)?;
        d.set_item("verdict", verdict_str(&rep.verdict))?;
        Ok(d)
    }
}

impl GroupAlgebra {
    fn datum(&self, block: usize) -> PyResult<modrep_core::blocks::BlockDatum> {
        let blocks = self.kg.blocks().map_err(err)?;
        let b = blocks.get(block).ok_or_else(|| {
            PyValueError::new_err(format!(
                "block index {block} out of range (found {})",
                blocks.len()
            ))
        })?;
        self.kg.block_datum(b).map_err(err)
    }
}

fn verdict_str(v: &MoritaVerdict) -> &'static str {
    match v {
        MoritaVerdict::EquivalentEvidence => "equivalent-evidence",
        MoritaVerdict::Undecided => "undecided",
        MoritaVerdict::Distinguished => "distinguished",
    }
}

/// The endomorphism algebra E of N = sum over subgroups Q of A (x)_{kQ} k,
/// together with its recollement layers and the finitistic-dimension probe.
#[pyclass(frozen)]
struct Yoshida {
    y: YoshidaAlgebra,
}

fn p_group_yoshida(g: &PermGroup, f: &Fq) -> PyResult<YoshidaAlgebra> {
    if !g.is_p_group(f.p()) {
        return Err(PyValueError::new_err(format!(
            "group is not a {}-group",
            f.p()
        )));
    }
    let a = FDAlgebra::group_algebra(f, g);
    let images: Vec<Vec<Elt>> = (0..g.order()).map(|i| a.basis_elem(i)).collect();
    yoshida_algebra(build_n(&a, g, &images).map_err(err)?).map_err(err)
}

#[pymethods]
impl Yoshida {
    /// E for the group algebra of a p-group acting on itself.
    #[staticmethod]
    #[pyo3(signature = (group, p, e = 1))]
    fn for_p_group(group: &Group, p: u64, e: u32) -> PyResult<Yoshida> {
        let f = field_of(p, e)?;
        Ok(Yoshida { y: p_group_yoshida(&group.g, &f)? })
    }

    /// E for the source algebra of one block of a group algebra.
    #[staticmethod]
    #[pyo3(signature = (algebra, block = 0))]
    fn for_block(algebra: &GroupAlgebra, block: usize) -> PyResult<Yoshida> {
        let datum = algebra.datum(block)?;
        let tss = build_n_for_block(&algebra.kg, &datum).map_err(err)?;
        Ok(Yoshida { y: yoshida_algebra(tss).map_err(err)? })
    }

    fn dim_e(&self) -> usize {
        self.y.e.dim()
    }

    fn dim_n(&self) -> usize {
        self.y.n.n.dim()
    }

    fn summand_dims(&self) -> Vec<usize> {
        self.y.n.summands.iter().map(|m| m.dim()).collect()
    }

    fn subgroup_orders(&self) -> Vec<usize> {
        self.y.n.subgroup_orders.clone()
    }

    /// Dimensions of the layers tau-E-tau, E-tau-E, E-bar, plus the corner
    /// and bookkeeping checks.
    fn recollement<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let rep = recollement_check(&self.y).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("dim_e", rep.dim_e)?;
        d.set_item("dim_corner", rep.dim_corner)?;
        d.set_item("dim_ideal", rep.dim_ideal)?;
        d.set_item("dim_stable", rep.dim_stable)?;
        d.set_item("corner_iso_ok", rep.corner_iso_ok)?;
        d.set_item("cartan_ok", rep.cartan_ok)?;
        Ok(d)
    }

    /// (dim of the ideal E-tau-E, dim of the stable quotient E-bar).
    fn stable(&self) -> PyResult<(usize, usize)> {
        let (q, ideal_dim) = stable_yoshida(&self.y).map_err(err)?;
        Ok((ideal_dim, q.alg.dim()))
    }

    /// Scan small right E-modules for the largest finite projective
    /// dimension.
    #[pyo3(signature = (dim_cutoff = 12, syzygy_cutoff = 8, expect = None))]
    fn findim<'py>(
        &self,
        py: Python<'py>,
        dim_cutoff: usize,
        syzygy_cutoff: u32,
        expect: Option<u32>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let rep =
            findim_probe(&self.y.e.opposite(), dim_cutoff, syzygy_cutoff, expect).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("census_count", rep.census_count)?;
        d.set_item("max_finite_pdim", rep.max_finite_pdim)?;
        d.set_item("finite", rep.finite)?;
        d.set_item("undecided", rep.undecided)?;
        d.set_item(
            "verdict",
            rep.verdict.map(|v| match v {
                FindimVerdict::LowerBoundAttained => "lower-bound-attained",
                FindimVerdict::Consistent => "consistent",
                FindimVerdict::Violation => "violation",
            }),
        )?;
        Ok(d)
    }
}

/// JSON text of the group algebra of `group` over GF(p^e), in the algebra
/// file format.
#[pyfunction]
#[pyo3(signature = (group, p, e = 1))]
fn group_algebra_json(group: &Group, p: u64, e: u32) -> PyResult<String> {
    let f = field_of(p, e)?;
    let a = FDAlgebra::group_algebra(&f, &group.g);
    serde_json::to_string(&AlgebraFile::of(&a)).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Verify the Rickard conditions for a complex given as JSON text, over the
/// two algebras given as JSON text.
#[pyfunction]
fn rickard_verify<'py>(
    py: Python<'py>,
    complex_json: &str,
    left_json: &str,
    right_json: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let parse = |s: &str| -> PyResult<FDAlgebra> {
        let file: AlgebraFile =
            serde_json::from_str(s).map_err(|e| PyValueError::new_err(e.to_string()))?;
        file.build().map_err(err)
    };
    let a = parse(left_json)?;
    let b = parse(right_json)?;
    let file: ComplexFile =
        serde_json::from_str(complex_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let (x, note) = file.build(&a, &b).map_err(err)?;
    let rep = verify_rickard(&x).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("input", note)?;
    d.set_item("support", (x.min_deg(), x.max_deg()))?;
    d.set_item("left_projective_ok", rep.left_projective_ok)?;
    d.set_item("right_projective_ok", rep.right_projective_ok)?;
    d.set_item("left_identity_ok", rep.left_identity_ok)?;
    d.set_item("right_identity_ok", rep.right_identity_ok)?;
    d.set_item("pass", rep.pass)?;
    Ok(d)
}

#[pymodule(name = "_native")]
fn native(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_class::<GroupAlgebra>()?;
    m.add_class::<Yoshida>()?;
    m.add_function(wrap_pyfunction!(group_algebra_json, m)?)?;
    m.add_function(wrap_pyfunction!(rickard_verify, m)?)?;
    Ok(())
}
