//! Motivic classes of Nakajima quiver varieties.
//!
//! The class `[M(v, w)]` in the localized Grothendieck ring is a polynomial in
//! the Lefschetz class `L`, computed from a generating function indexed by
//! tuples of integer partitions ([`engine`]). Everything the formula is built
//! from can be checked against brute-force point counts over small prime
//! fields ([`fflab`]).

pub mod engine;
pub mod error;
pub mod fflab;
pub mod motivic;
pub mod partition;
pub mod quiver;
pub mod record;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
