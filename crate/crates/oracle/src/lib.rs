//! Brute-force reference computations.
//!
//! Nothing here shares code with the main library. Every function works
//! from the raw definitions over tables, masks and closures, and favours
//! obviousness over speed.

pub mod boolean;
pub mod coherent;
pub mod equational;
pub mod propositional;
