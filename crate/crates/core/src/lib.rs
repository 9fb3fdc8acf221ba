//! Finite-scale syntax/semantics dualities.
//!
//! * [`syntax`]: signatures, terms, formulas-in-context, theories and the DSL.
//! * [`propositional`]: truth tables and Lindenbaum-Tarski algebras.
//! * [`stone`]: finite Boolean algebras, ultrafilters, Stone spaces and their
//!   duality.
//! * [`equational`]: Lawvere theories, their finite models, the syntactic
//!   category and models as product-preserving functors.
//! * [`coherent`]: finite structures of coherent theories, the groupoid of
//!   models and the sentence-indexed logical topology.

pub mod coherent;
pub mod equational;
pub mod error;
pub mod limits;
pub mod propositional;
pub mod stone;
pub mod syntax;

pub use error::{Error, Location, ParseError, Result};
pub use limits::Limits;
