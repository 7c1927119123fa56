//! Exact-arithmetic engine for Frobenius extensions, Jones towers, depth-two
//! centralizers, Hopf reconstruction from a duality pairing, and Galois /
//! smash-product checks.

pub mod algebra;
pub mod check;
pub mod depth_two;
pub mod exact;
pub mod frobenius;
pub mod galois;
pub mod hopf;
pub mod io;
pub mod models;
pub mod report;
pub mod tower;
