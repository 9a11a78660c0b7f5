//! Exact dense linear algebra over GF(q).

pub mod field;
pub mod mat;
pub mod poly;

pub use field::{Elt, Fq};
pub use mat::{Mat, Rref, Span};
pub use poly::{charpoly, minpoly, Poly};
