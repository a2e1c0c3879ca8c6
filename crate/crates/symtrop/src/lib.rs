//! Exact computations around symmetric nonnegative forms and sums of squares
//! in the limit of infinitely many variables: the superdominance order on
//! partitions, tropicalized moment cones, Gram pencils from partial symmetry
//! reduction, and verification of explicit certificates.

pub mod acceptance;
pub mod certify;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod partitions;
pub mod polyhedra;
pub mod symfunc;
pub mod symreduce;
pub mod tropical;

pub use error::{Error, Result};
pub use exactnum::{QSqrt2, QSqrt3, QuadExt, Rational, UniPoly};
pub use partitions::Partition;
pub use polyhedra::Cone;
pub use symfunc::SymFn;
