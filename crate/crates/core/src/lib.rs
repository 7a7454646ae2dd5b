pub mod activations;
pub mod bench;
pub mod data;
pub mod error;
pub mod model;
pub mod param_gen;
pub mod solver;
