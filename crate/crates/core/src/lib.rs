//! Constructive solutions of Bezout equations `F V^T = h` inside subalgebras
//! of bounded analytic functions on the unit disk, in exact arithmetic.

pub mod blaschke;
pub mod koszul;
pub mod kset;
pub mod ring;
pub mod solve;
