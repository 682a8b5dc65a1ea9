//! Decorated 1-3 type hyperbolic tetrahedra, angle structures on ideal
//! triangulations with one hyperideal vertex, and the volume / co-volume
//! variational problems they support.

pub mod complex;
pub mod lobachevsky;
pub mod optimize;
pub mod structures;
pub mod tetra;
