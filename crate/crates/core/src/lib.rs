//! Exact arithmetic for weighted degrees, initial forms and multidegrees of
//! polynomial endomorphisms, together with the weight-approximation toolkit,
//! constructive realizers for multidegree targets, and the reduction
//! machinery for three-variable automorphism words.
//!
//! All coefficient arithmetic is exact (big rationals or modular residues);
//! there is no floating point anywhere in this crate.

pub mod autmap;
pub mod coeff;
pub mod harness;
pub mod parse;
pub mod poly;
pub mod sured;
pub mod tamecert;
pub mod wapprox;
pub mod worder;

pub use coeff::{Coeff, Ring, RingError};
pub use poly::{EndoTuple, PolyError, Polynomial};
pub use worder::{Deg, LexVec, Multidegree, Weight};
