//! Exact computations with finite-dimensional coalgebras, their comodules
//! and dual algebras, and quiver-presented path subcoalgebras.
//!
//! * [`exactlin`]: field arithmetic and the subspace calculus.
//! * [`coalg`]: coalgebras, convolution duals, radicals, coradical
//!   filtrations, wedges.
//! * [`comod`]: comodules, socles, Loewy series, multiplicities, hom spaces.
//! * [`quiverlab`]: the quiver DSL, path enumeration, truncation compiler and
//!   the verdict engine.

pub mod exactlin;
pub mod coalg;
pub mod comod;
pub mod constants;
pub mod quiverlab;
