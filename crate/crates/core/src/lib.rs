//! Exact mod-p computations for the Lyndon-Hochschild-Serre spectral sequence
//! of a central extension `C_{p^m} -> E -> G` with `G` a finite abelian p-group.

pub mod checks;
pub mod config;
pub mod diagonal;
pub mod e0;
pub mod expr;
pub mod group;
pub mod linalg;
pub mod oracle;
pub mod resolution;
pub mod ring;
pub mod sseq;
