//! Reciprocally-weighted external difference families (RWEDFs) and the weak
//! algebraic manipulation detection (AMD) codes they characterize.
//!
//! The crate covers finite groups on dense indices ([`group`]), exact
//! difference statistics ([`analysis`]), classification ([`classify`]),
//! explicit constructions ([`construct`]), exhaustive search ([`search`]),
//! Monte Carlo simulation of the weak AMD game ([`sim`]) and the JSON/CSV
//! file formats used by the `rwedf` command-line tool ([`io`]).

pub mod analysis;
pub mod classify;
pub mod construct;
pub mod error;
pub mod field;
pub mod group;
pub mod io;
pub mod rational;
pub mod search;
pub mod sim;

pub use error::{Error, Result};
pub use group::{Element, ElementSet, FiniteGroup, GroupDescriptor, Subgroup};
pub use rational::Rational;
