//! Exact symbolic engine for colored solvable lattice models in type A.
//!
//! The crate computes partition functions of colored five/six-vertex models with
//! several Boltzmann weight systems, applies Demazure-type divided difference
//! operators, solves Yang-Baxter equations, and evaluates the resulting families
//! of special functions: double Whittaker polynomials, motivic Chern and
//! Segre-Schwartz-MacPherson classes, K-theoretic stable envelopes,
//! Kazhdan-Lusztig R-polynomial deformations, Grothendieck polynomials, and
//! factorial Schur polynomials. All arithmetic is exact over the integers.

pub mod classes;
pub mod demazure;
pub mod gkm;
pub mod lattice;
pub mod laurent;
pub mod weights;
pub mod weyl;
pub mod ybe;
