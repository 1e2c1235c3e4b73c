//! Conformal symmetry of the two-dimensional Laplace equation: charts,
//! separable solutions, the conformal algebra in several realizations,
//! projective and bicomplex spin matrices, and a verification harness.

pub mod algebra;
pub mod bicomplex;
pub mod charts;
pub mod harness;
pub mod jet;
pub mod laplace;
pub mod projective;
pub mod sampling;
