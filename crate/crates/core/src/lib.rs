//! Exact computation in Coxeter groups: small roots, Shi parts, cone types
//! and reduced-word automata, with self-checking against an independent
//! Cayley-ball oracle.
//!
//! Everything is exact: coordinates live in ℚ(2cos(π/N)) where N is the
//! l.c.m. of the finite bond labels, and every comparison is certified by
//! interval arithmetic refined until it is decisive.

pub mod automata;
pub mod cache;
pub mod conetype;
pub mod enumerate;
pub mod field;
pub mod group;
pub mod mat;
pub mod oracle;
pub mod render;
pub mod roots;
pub mod shi;
pub mod system;
pub mod verify;
