//! Computational group theory and automorphic-series numerics: exact finite
//! rings and fields, Todd-Coxeter coset enumeration, Burnside groups B(m, n),
//! PSL(2, q), Poincare series over Schottky groups, and Cayley-graph rendering.

pub mod algebra;
pub mod burnside;
pub mod cli;
pub mod fpgroup;
pub mod psl;
pub mod render;
pub mod schottky;
