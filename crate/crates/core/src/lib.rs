//! b-colorings, b-chromatic numbers and b-spectra of graphs, with
//! constructive recoloring descents for lexicographic products `G[K_l]` and
//! `G[H]`.

pub mod bhom;
pub mod chordal_descent;
pub mod coloring;
pub mod error;
pub mod exact;
pub mod graph;
pub mod lexprod;
pub mod p4sparse;
pub mod reference;
pub mod reproduce;

pub use coloring::Coloring;
pub use graph::Graph;
