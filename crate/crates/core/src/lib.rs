//! Exact computations in modular representation theory at desk scale:
//! permutation groups, group algebras and their blocks over small finite
//! fields, source algebras, the endomorphism algebras modelling cohomological
//! Mackey functors, bimodule complexes with fixed sign conventions, and
//! finitistic-dimension probes.

pub mod algebra;
pub mod bimodule;
pub mod blocks;
pub mod cli;
pub mod complex;
pub mod error;
pub mod findim;
pub mod io;
pub mod linalg;
pub mod module;
pub mod perm;
pub mod rickard;
pub mod structure;
pub mod yoshida;

pub use error::{ModRepError, Result};

/// Entry point used by the `modrep` binary; returns the process exit code.
pub fn cli_main() -> i32 {
    cli::run()
}
