//! Coadjoint-orbit toolkit: exact Lie-algebra kernel, matrix-group catalog,
//! Chevalley–Eilenberg cohomology, the Mackey obstruction pipeline, a
//! splitting verdict engine and a finite-difference verification harness.
//!
//! The algebraic layer works over arbitrary-precision rationals throughout;
//! floating point appears only in the matrix-group realizations and in the
//! numerical verification of the catalog fixtures.

pub mod catalog;
pub mod lie;
pub mod linalg;
pub mod rat;
