//! Exact upper bounds on the number of zeros of prescribed multiplicity of
//! multivariate polynomials on finite grids, together with a prime-field
//! polynomial engine and a constructive lower-bound oracle.

pub mod bounds;
pub mod ffpoly;
pub mod oracle;
pub mod rational;
pub mod surface;
pub mod tables;
