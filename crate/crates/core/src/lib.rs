pub mod cli;
pub mod exact;
pub mod generators;
pub mod geom;
pub mod model;
pub mod render;
pub mod scoring;
pub mod selection;
pub mod solver;
pub mod streams;
pub mod valuation;
pub mod verifier;
