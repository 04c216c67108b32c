//! Significance over finite relations.
//!
//! An element is *significant* for a relation when every step away from it
//! can be answered by a step back; the set of significant elements is the
//! *altiset*. This crate computes altisets of raw relations and of systems
//! of linearly induced orders, layers a universe by successive altisets,
//! and applies the machinery to dependence direction of point sets,
//! collective comparison of subsets, geometric skylines and the evolution
//! of measure-driven valuations.

pub mod collective;
pub mod dependence;
pub mod domains;
pub mod error;
pub mod geoalt;
pub mod induced;
pub mod io;
pub mod key;
pub mod layers;
pub mod relation;

pub use error::{Error, Result};
pub use key::Key;
pub use relation::{ElementSet, FiniteRelation, Universe};
