//! Gauss-diagram calculus of virtual knots.
//!
//! The crate works purely at the level of Gauss diagrams: a circle (or a line)
//! carrying oriented, signed chords. On top of the data model it provides
//!
//! * chord indices, r-coverings and the writhe polynomial ([`invariants`]),
//! * Reidemeister moves, greedy simplification and bounded equivalence search
//!   ([`moves`]),
//! * the integer tables `f_n`, `g_n` and the Möbius function ([`arithmetic`]),
//! * constructions realizing prescribed covering spectra and writhe
//!   polynomials ([`construct`]),
//! * a text front end ([`cli`]).
//!
//! Batch work (table verification, frontier expansion in the equivalence
//! search, sweeps over diagram families) goes through [`exec`], which runs on
//! rayon when the `parallel` feature is enabled and sequentially otherwise.

pub mod arithmetic;
pub mod cli;
pub mod construct;
pub mod diagram;
pub mod error;
pub mod exec;
pub mod invariants;
pub mod moves;

pub use diagram::{Chord, ChordId, Endpoint, GaussDiagram, Kind, Role, Sign};
pub use error::{Error, ParseError, Result};
pub use exec::Execution;
pub use invariants::{LaurentPolynomial, WritheVector};
pub use moves::{EquivalenceVerdict, Move};
