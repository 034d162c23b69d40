//! Linear-programming decoding of linear codes over the integers mod q with
//! direct modulation mapping.

pub mod channel;
pub mod decoder;
pub mod flow;
pub mod pcw;
pub mod polytope;
pub mod ring;
pub mod sim;
pub mod solver;
