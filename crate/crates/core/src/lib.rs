pub mod exterior;
pub mod lie_core;
pub mod scalars;
pub mod torsion_ops;
pub mod phi_split;
pub mod recognize;
pub mod cli;
